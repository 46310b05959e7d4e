use std::fmt;

/// One oracle-versus-engine comparison, both sides rendered as text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub quantity: String,
    pub oracle: String,
    pub engine: String,
    pub agree: bool,
}

impl OracleReport {
    /// Compares two values of a common type; the rendering uses `Debug`.
    pub fn compare<T: PartialEq + fmt::Debug>(quantity: impl Into<String>, oracle: &T, engine: &T) -> Self {
        OracleReport {
            quantity: quantity.into(),
            oracle: format!("{oracle:?}"),
            engine: format!("{engine:?}"),
            agree: oracle == engine,
        }
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.agree { "agree" } else { "DISAGREE" };
        write!(f, "{tag} {}: oracle {} engine {}", self.quantity, self.oracle, self.engine)
    }
}
