use serde::{Deserialize, Serialize};

/// Three-valued verdict used by growth reports and the geometry classifier.
///
/// `Unknown` is a first-class outcome: a rule whose premise cannot be decided
/// from the given data must degrade to `Unknown` instead of guessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict3 {
    Holds,
    Fails,
    Unknown,
}

impl Verdict3 {
    pub fn holds(self) -> bool {
        self == Verdict3::Holds
    }
    pub fn fails(self) -> bool {
        self == Verdict3::Fails
    }
    pub fn is_unknown(self) -> bool {
        self == Verdict3::Unknown
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict3::Holds
        } else {
            Verdict3::Fails
        }
    }

    /// Kleene conjunction: fails dominates, then unknown.
    pub fn and(self, other: Verdict3) -> Verdict3 {
        use Verdict3::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Holds, Holds) => Holds,
            _ => Unknown,
        }
    }

    /// Kleene disjunction: holds dominates, then unknown.
    pub fn or(self, other: Verdict3) -> Verdict3 {
        use Verdict3::*;
        match (self, other) {
            (Holds, _) | (_, Holds) => Holds,
            (Fails, Fails) => Fails,
            _ => Unknown,
        }
    }

    pub fn negate(self) -> Verdict3 {
        use Verdict3::*;
        match self {
            Holds => Fails,
            Fails => Holds,
            Unknown => Unknown,
        }
    }
}

impl std::fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict3::Holds => "holds",
            Verdict3::Fails => "fails",
            Verdict3::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::Verdict3::*;

    #[test]
    fn kleene_tables() {
        assert_eq!(Holds.and(Unknown), Unknown);
        assert_eq!(Fails.and(Unknown), Fails);
        assert_eq!(Holds.or(Unknown), Holds);
        assert_eq!(Fails.or(Unknown), Unknown);
        assert_eq!(Unknown.negate(), Unknown);
    }
}
