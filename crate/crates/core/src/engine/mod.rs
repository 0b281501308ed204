//! Case analysis for `x^p - y^q = 1` on concrete tuples.
//!
//! Eight hypotheses each force the equation's only solution to be
//! `3^2 - 2^3`. [`classify`] reports which hypotheses a tuple meets,
//! [`apply_rule`] turns one of them into a self-verifying [`Certificate`],
//! and the search functions sweep bounded grids with or without using the
//! cheap obstructions as pruning rules.

mod bounds;
mod certificate;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{is_perfect_power, is_prime, CatalanTuple, Integer};

pub use bounds::{case_viii_endgame_check, cassels_bound_check};
pub use certificate::{
    apply_rule, tuple_json, Certificate, CertificateParseError, Obstruction, Verdict, VerifyError,
    SCHEMA_VERSION,
};
pub use search::{
    candidates, search, search_pruned, search_pruned_detailed, search_with, PrunedSearch,
    SearchBounds,
};

/// One hypothesis under which `3^2 - 2^3 = 1` is the only solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    /// `q = 2`
    I,
    /// `p = 2`
    II,
    /// `x` is a power of 2
    III,
    /// `x` odd and `8 ∤ x - 1`
    IV,
    /// `x | q`
    V,
    /// `y | x - 1`
    VI,
    /// `y` is a prime power
    VII,
    /// `y <= 4^p` or `x <= 4^q`
    VIII,
}

impl CaseId {
    pub const ALL: [CaseId; 8] = [
        CaseId::I,
        CaseId::II,
        CaseId::III,
        CaseId::IV,
        CaseId::V,
        CaseId::VI,
        CaseId::VII,
        CaseId::VIII,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::III => "III",
            CaseId::IV => "IV",
            CaseId::V => "V",
            CaseId::VI => "VI",
            CaseId::VII => "VII",
            CaseId::VIII => "VIII",
        }
    }

    /// Whether `t` satisfies this case's hypothesis.
    pub fn holds_for(self, t: &CatalanTuple) -> bool {
        let (x, p, y, q) = (t.x(), t.p(), t.y(), t.q());
        match self {
            CaseId::I => q == 2,
            CaseId::II => p == 2,
            CaseId::III => is_power_of_two(x),
            CaseId::IV => x.is_odd() && !(x - 1u32).is_multiple_of(&Integer::from(8)),
            CaseId::V => Integer::from(q).is_multiple_of(x),
            CaseId::VI => (x - 1u32).is_multiple_of(y),
            CaseId::VII => is_prime_power(y),
            CaseId::VIII => {
                let four = Integer::from(4);
                *y <= Pow::pow(&four, p) || *x <= Pow::pow(&four, q)
            }
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = EngineError;

    /// Accepts roman numerals in either case.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.to_ascii_uppercase();
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == upper)
            .ok_or_else(|| EngineError::UnknownCase(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("tuple {0} does not have prime exponents")]
    NotNormalized(CatalanTuple),
    #[error("tuple {tuple} does not satisfy the hypothesis of case {case}")]
    HypothesisNotSatisfied { case: CaseId, tuple: CatalanTuple },
    #[error("unknown case {0:?}, expected one of i..viii")]
    UnknownCase(String),
    #[error("p = {0} is out of scope, expected 3 or 5")]
    OutOfScope(u32),
    #[error("invalid exponents p = {p}, q = {q}: {reason}")]
    InvalidExponents {
        p: u32,
        q: u32,
        reason: &'static str,
    },
    /// A tuple other than `(3, 2, 2, 3)` satisfied the equation.
    #[error("unexpected solution {0}")]
    UnexpectedSolution(CatalanTuple),
}

/// Every case whose hypothesis `t` satisfies. `t` needs prime exponents.
pub fn classify(t: &CatalanTuple) -> Result<BTreeSet<CaseId>, EngineError> {
    require_normalized(t)?;
    Ok(CaseId::ALL.into_iter().filter(|c| c.holds_for(t)).collect())
}

fn require_normalized(t: &CatalanTuple) -> Result<(), EngineError> {
    if t.has_prime_exponents() {
        Ok(())
    } else {
        Err(EngineError::NotNormalized(t.clone()))
    }
}

pub(crate) fn is_power_of_two(n: &Integer) -> bool {
    !n.is_zero() && (n & (n - Integer::one())).is_zero()
}

/// `Some((ell, c))` with `n = ell^c`, `ell` prime.
pub(crate) fn prime_power_decomposition(n: &Integer) -> Option<(Integer, u32)> {
    if is_prime(n) {
        return Some((n.clone(), 1));
    }
    is_perfect_power(n).filter(|(b, _)| is_prime(b))
}

fn is_prime_power(n: &Integer) -> bool {
    prime_power_decomposition(n).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cases(list: &[CaseId]) -> BTreeSet<CaseId> {
        list.iter().copied().collect()
    }

    #[test]
    fn classify_examples() {
        use CaseId::*;
        let t = CatalanTuple::catalan_solution();
        assert_eq!(classify(&t).unwrap(), cases(&[II, IV, V, VI, VII, VIII]));
        let t = CatalanTuple::from_u64(8, 3, 2, 3);
        assert_eq!(classify(&t).unwrap(), cases(&[III, VII, VIII]));
        let t = CatalanTuple::from_u64(6, 3, 5, 3);
        assert_eq!(classify(&t).unwrap(), cases(&[VI, VII, VIII]));
    }

    #[test]
    fn classify_requires_prime_exponents() {
        let t = CatalanTuple::from_u64(2, 9, 2, 3);
        assert_eq!(classify(&t), Err(EngineError::NotNormalized(t)));
    }

    #[test]
    fn case_names_round_trip() {
        for c in CaseId::ALL {
            assert_eq!(c.as_str().parse::<CaseId>().unwrap(), c);
            assert_eq!(c.as_str().to_lowercase().parse::<CaseId>().unwrap(), c);
        }
        assert!("ix".parse::<CaseId>().is_err());
    }

    #[test]
    fn prime_powers() {
        let pp = |n: u64| prime_power_decomposition(&Integer::from(n));
        assert_eq!(pp(2), Some((Integer::from(2), 1)));
        assert_eq!(pp(64), Some((Integer::from(2), 6)));
        assert_eq!(pp(243), Some((Integer::from(3), 5)));
        assert_eq!(pp(36), None);
        assert_eq!(pp(12), None);
        assert!(is_power_of_two(&Integer::from(1024)));
        assert!(!is_power_of_two(&Integer::from(1023)));
    }
}
