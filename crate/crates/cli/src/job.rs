use std::fmt;

use monodromy::newton::{Mode, SparsePolynomial};
use monodromy::zeta::{ParseRootError, RootOfUnity};
use serde::{Deserialize, Serialize};

use crate::parse::{format_polynomial, parse_polynomial, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    ZetaLocal,
    ZetaInfinity,
    Multiplicity,
    Lefschetz,
    ELambda,
    Jordan,
    JordanExtremes,
    Spectrum,
    Ehrhart,
    Check,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ZetaLocal => "zeta-local",
            Command::ZetaInfinity => "zeta-infinity",
            Command::Multiplicity => "multiplicity",
            Command::Lefschetz => "lefschetz",
            Command::ELambda => "e-lambda",
            Command::Jordan => "jordan",
            Command::JordanExtremes => "jordan-extremes",
            Command::Spectrum => "spectrum",
            Command::Ehrhart => "ehrhart",
            Command::Check => "check",
        }
    }

    /// Commands that need the weighted region `(K, S_ν, ν)`.
    pub fn needs_region(self) -> bool {
        matches!(self, Command::ELambda | Command::Jordan | Command::JordanExtremes | Command::Spectrum | Command::Ehrhart)
    }

    /// Commands refused unless the three assumption flags are passed.
    pub fn needs_assumptions(self) -> bool {
        matches!(self, Command::ELambda | Command::Jordan | Command::JordanExtremes | Command::Spectrum)
    }

    /// Commands that take a list of eigenvalues.
    pub fn takes_lambdas(self) -> bool {
        matches!(self, Command::Multiplicity | Command::ELambda | Command::Jordan | Command::JordanExtremes | Command::Ehrhart)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Local,
    Infinity,
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Mode {
        match m {
            ModeName::Local => Mode::Local,
            ModeName::Infinity => Mode::Infinity,
        }
    }
}

impl From<Mode> for ModeName {
    fn from(m: Mode) -> ModeName {
        match m {
            Mode::Local => ModeName::Local,
            Mode::Infinity => ModeName::Infinity,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Machine,
}

/// User-asserted hypotheses that are not decided by the program.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumptions {
    #[serde(default)]
    pub nondegenerate: bool,
    #[serde(default)]
    pub isolated: bool,
    #[serde(default)]
    pub transversal: bool,
}

impl Assumptions {
    pub fn all() -> Self {
        Assumptions { nondegenerate: true, isolated: true, transversal: true }
    }

    pub fn flags(&self) -> [(&'static str, bool); 3] {
        [("nondegenerate", self.nondegenerate), ("isolated", self.isolated), ("transversal", self.transversal)]
    }
}

/// The `inputs` block of a machine report, also accepted by `--input`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    pub n: usize,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q", default = "one")]
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeName>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambdas: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub all_lambdas: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub m: Vec<u64>,
    #[serde(default)]
    pub assumptions: Assumptions,
}

fn one() -> String {
    "1".into()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JobError {
    #[error("cannot parse {which}: {source}")]
    Polynomial { which: &'static str, source: ParseError },
    #[error(transparent)]
    Lambda(#[from] ParseRootError),
    #[error("{command} runs in {fixed} mode, but --mode {given} was given")]
    ModeConflict { command: Command, fixed: Mode, given: Mode },
    #[error("input file is for {file}, not {command}")]
    CommandConflict { command: Command, file: Command },
    #[error("n must be at least 1")]
    NoVariables,
    #[error("{0} takes no eigenvalues")]
    LambdasNotTaken(Command),
    #[error("{0} needs --lambda k/d or --all-lambdas")]
    NoLambdas(Command),
    #[error("--lambda and --all-lambdas are exclusive")]
    BothLambdaForms,
    #[error("Lefschetz numbers are indexed by m >= 1")]
    ZeroM,
    #[error("cannot read input file: {0}")]
    Io(String),
    #[error("malformed input file: {0}")]
    Json(String),
}

/// A validated request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub n: usize,
    pub p: SparsePolynomial,
    pub q: SparsePolynomial,
    pub mode: Mode,
    /// Empty together with `all_lambdas` means every class of order
    /// dividing the period.
    pub lambdas: Vec<RootOfUnity>,
    pub all_lambdas: bool,
    pub m: Vec<u64>,
    pub assumptions: Assumptions,
    pub format: Format,
}

impl JobSpec {
    pub fn from_inputs(command: Command, inputs: &Inputs, format: Format) -> Result<Self, JobError> {
        if let Some(file) = inputs.command {
            if file != command {
                return Err(JobError::CommandConflict { command, file });
            }
        }
        let n = inputs.n;
        if n == 0 {
            return Err(JobError::NoVariables);
        }
        let p = parse_polynomial(&inputs.p, n).map_err(|source| JobError::Polynomial { which: "P", source })?;
        let q = parse_polynomial(&inputs.q, n).map_err(|source| JobError::Polynomial { which: "Q", source })?;
        let given = inputs.mode.map(Mode::from);
        let fixed = match command {
            Command::ZetaLocal => Some(Mode::Local),
            Command::ZetaInfinity => Some(Mode::Infinity),
            _ => None,
        };
        let mode = match (fixed, given) {
            (Some(fixed), Some(given)) if fixed != given => return Err(JobError::ModeConflict { command, fixed, given }),
            (Some(m), _) | (None, Some(m)) => m,
            (None, None) => Mode::Local,
        };
        let lambdas = inputs.lambdas.iter().map(|s| s.parse()).collect::<Result<Vec<RootOfUnity>, _>>()?;
        if command.takes_lambdas() {
            match (lambdas.is_empty(), inputs.all_lambdas) {
                (true, false) => return Err(JobError::NoLambdas(command)),
                (false, true) => return Err(JobError::BothLambdaForms),
                _ => {}
            }
        } else if !lambdas.is_empty() || inputs.all_lambdas {
            return Err(JobError::LambdasNotTaken(command));
        }
        if inputs.m.contains(&0) {
            return Err(JobError::ZeroM);
        }
        Ok(JobSpec {
            command,
            n,
            p,
            q,
            mode,
            lambdas,
            all_lambdas: inputs.all_lambdas,
            m: inputs.m.clone(),
            assumptions: inputs.assumptions,
            format,
        })
    }

    pub fn from_file(command: Command, path: &std::path::Path, format: Format) -> Result<Self, JobError> {
        let text = std::fs::read_to_string(path).map_err(|e| JobError::Io(format!("{}: {e}", path.display())))?;
        let inputs: Inputs = serde_json::from_str(&text).map_err(|e| JobError::Json(e.to_string()))?;
        Self::from_inputs(command, &inputs, format)
    }

    /// Canonical echo of the request; feeding it back reproduces the job.
    pub fn inputs(&self) -> Inputs {
        Inputs {
            command: Some(self.command),
            n: self.n,
            p: format_polynomial(&self.p),
            q: format_polynomial(&self.q),
            mode: Some(self.mode.into()),
            lambdas: self.lambdas.iter().map(|l| l.to_string()).collect(),
            all_lambdas: self.all_lambdas,
            m: self.m.clone(),
            assumptions: self.assumptions,
        }
    }
}
