use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

/// Bound on the size of the subsets a closure property quantifies over.
///
/// `Finite(k)` ranges over subsets of size `< k`; `All` over every subset.
/// On finite carriers `All` stands in for every infinite cardinal, since all
/// subsets are finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kappa {
    Finite(usize),
    All,
}

impl Kappa {
    pub fn finite(k: usize) -> Result<Self, Error> {
        if k == 0 {
            Err(Error::InvalidKappa(k.to_string()))
        } else {
            Ok(Kappa::Finite(k))
        }
    }

    /// Whether subsets of this size are quantified over.
    pub fn admits(self, size: usize) -> bool {
        match self {
            Kappa::Finite(k) => size < k,
            Kappa::All => true,
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::Finite(k) => write!(f, "{k}"),
            Kappa::All => f.write_str("all"),
        }
    }
}

impl FromStr for Kappa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Kappa::All);
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Kappa::Finite(k)),
            _ => Err(Error::InvalidKappa(s.to_string())),
        }
    }
}
