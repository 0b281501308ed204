//! Lifting-the-exponent valuations and the q-th power transfer built on them.
//!
//! [`lte_valuation`] evaluates `v_p(a^n - b^n)` by closed formula instead of
//! by expanding the power. [`lemma2_transfer`] turns "`a^p - b^p` is a
//! `q`-th power coprime to `p`" into an explicit `q`-th root of `a - b`.
//! Every hypothesis failure is reported by name so callers can cite it.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::numtheory::{exact_root, is_prime, is_prime_u64, v2, vp_unchecked, Integer};

/// Which of the three closed formulas was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LteBranch {
    /// `p >= 3`: `v_p(a - b) + v_p(n)`.
    OddPrime,
    /// `p = 2`, `v_2(a - b) >= 2`: `v_2(a - b) + v_2(n)`.
    TwoDeep,
    /// `p = 2`, `n` even: `v_2(a - b) + v_2(a + b) + v_2(n) - 1`.
    TwoEven,
}

impl fmt::Display for LteBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LteBranch::OddPrime => "OddPrime",
            LteBranch::TwoDeep => "TwoDeep",
            LteBranch::TwoEven => "TwoEven",
        })
    }
}

/// A named hypothesis of the valuation formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LteHypothesis {
    DistinctArguments,
    /// `a = -b` with `n` even makes `a^n - b^n` zero.
    DistinctPowers,
    PositiveExponent,
    PrimeModulus,
    PDoesNotDivideProduct,
    PDividesDifference,
    /// `p = 2` with `v_2(a - b) = 1` needs an even exponent.
    TwoAdicDepthOrEvenExponent,
}

impl fmt::Display for LteHypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LteHypothesis::DistinctArguments => "a != b",
            LteHypothesis::DistinctPowers => "a^n != b^n",
            LteHypothesis::PositiveExponent => "n >= 1",
            LteHypothesis::PrimeModulus => "p prime",
            LteHypothesis::PDoesNotDivideProduct => "p does not divide ab",
            LteHypothesis::PDividesDifference => "p divides a - b",
            LteHypothesis::TwoAdicDepthOrEvenExponent => "p = 2 requires v2(a - b) >= 2 or n even",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LteError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(LteHypothesis),
}

/// `v_p(a^n - b^n)` by the lifting-the-exponent formulas.
pub fn lte_valuation(
    a: &Integer,
    b: &Integer,
    n: u64,
    p: &Integer,
) -> Result<(u64, LteBranch), LteError> {
    use LteHypothesis::*;
    let violated = |h| Err(LteError::HypothesisViolated(h));

    if a == b {
        return violated(DistinctArguments);
    }
    if n == 0 {
        return violated(PositiveExponent);
    }
    if n.is_multiple_of(2) && *a == -b {
        return violated(DistinctPowers);
    }
    if !is_prime(p) {
        return violated(PrimeModulus);
    }
    if (a * b).is_multiple_of(p) {
        return violated(PDoesNotDivideProduct);
    }
    let diff = a - b;
    if !diff.is_multiple_of(p) {
        return violated(PDividesDifference);
    }

    let n_int = Integer::from(n);
    if *p != Integer::from(2) {
        let value = vp_unchecked(&diff, p) + vp_unchecked(&n_int, p);
        return Ok((value, LteBranch::OddPrime));
    }
    let v_diff = v2(&diff);
    if v_diff >= 2 {
        return Ok((v_diff + n.trailing_zeros() as u64, LteBranch::TwoDeep));
    }
    if n.is_multiple_of(2) {
        // a, b odd and a - b = 2 mod 4, so 4 | a + b, and a + b != 0 was checked
        let value = v_diff + v2(&(a + b)) + n.trailing_zeros() as u64 - 1;
        return Ok((value, LteBranch::TwoEven));
    }
    violated(TwoAdicDepthOrEvenExponent)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Lemma2Error {
    #[error("p and q are both 2")]
    BothTwo,
    #[error("{0} is not prime")]
    InvalidPrime(u32),
    #[error("a and b must be distinct")]
    EqualArguments,
    #[error("a and b are not coprime")]
    NotCoprime,
    #[error("a^p - b^p = {0} is not a q-th power")]
    NotAQthPower(Integer),
    #[error("the q-th root {0} of a^p - b^p is divisible by p")]
    DivisibleByP(Integer),
    /// All hypotheses held but `a - b` has no integral `q`-th root.
    #[error("conclusion failed: a - b = {0} is not a q-th power")]
    ConclusionFailed(Integer),
}

/// Returns `t` with `t^q = a - b`, given that `a^p - b^p = c^q` with `p ∤ c`.
///
/// For even `q` the non-negative root is returned.
pub fn lemma2_transfer(a: &Integer, b: &Integer, p: u32, q: u32) -> Result<Integer, Lemma2Error> {
    if p == 2 && q == 2 {
        return Err(Lemma2Error::BothTwo);
    }
    for e in [p, q] {
        if !is_prime_u64(e.into()) {
            return Err(Lemma2Error::InvalidPrime(e));
        }
    }
    if a == b {
        return Err(Lemma2Error::EqualArguments);
    }
    if !a.gcd(b).is_one() {
        return Err(Lemma2Error::NotCoprime);
    }
    let power_diff = Pow::pow(a, p) - Pow::pow(b, p);
    let c = exact_root(&power_diff, q).ok_or(Lemma2Error::NotAQthPower(power_diff))?;
    if (&c % p).is_zero() {
        return Err(Lemma2Error::DivisibleByP(c));
    }
    let diff = a - b;
    exact_root(&diff, q)
        .map(|t| if q.is_multiple_of(2) { t.abs() } else { t })
        .ok_or(Lemma2Error::ConclusionFailed(diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::vp;
    use proptest::prelude::*;

    fn int(n: i64) -> Integer {
        Integer::from(n)
    }

    /// Reference: expand the power and divide.
    fn direct(a: i64, b: i64, n: u32, p: i64) -> u64 {
        let d = Pow::pow(&int(a), n) - Pow::pow(&int(b), n);
        vp(&d, &int(p)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            lte_valuation(&int(5), &int(2), 6, &int(3)),
            Ok((2, LteBranch::OddPrime))
        );
        assert_eq!(
            lte_valuation(&int(3), &int(1), 2, &int(2)),
            Ok((3, LteBranch::TwoEven))
        );
        assert_eq!(
            lte_valuation(&int(5), &int(1), 3, &int(2)),
            Ok((2, LteBranch::TwoDeep))
        );
        assert_eq!(direct(5, 2, 6, 3), 2);
        assert_eq!(direct(3, 1, 2, 2), 3);
        assert_eq!(direct(5, 1, 3, 2), 2);
    }

    #[test]
    fn named_hypotheses() {
        use LteHypothesis::*;
        let err = |h| Err(LteError::HypothesisViolated(h));
        assert_eq!(
            lte_valuation(&int(4), &int(4), 3, &int(3)),
            err(DistinctArguments)
        );
        assert_eq!(
            lte_valuation(&int(4), &int(1), 0, &int(3)),
            err(PositiveExponent)
        );
        assert_eq!(
            lte_valuation(&int(5), &int(1), 3, &int(4)),
            err(PrimeModulus)
        );
        assert_eq!(
            lte_valuation(&int(6), &int(3), 3, &int(3)),
            err(PDoesNotDivideProduct)
        );
        assert_eq!(
            lte_valuation(&int(5), &int(4), 3, &int(3)),
            err(PDividesDifference)
        );
        assert_eq!(
            lte_valuation(&int(3), &int(-3), 2, &int(2)),
            err(DistinctPowers)
        );
        assert_eq!(
            lte_valuation(&int(3), &int(1), 3, &int(2)),
            err(TwoAdicDepthOrEvenExponent)
        );
    }

    #[test]
    fn negative_arguments() {
        // b = -1: v_3(2^3 + 1) = v_3(9)
        assert_eq!(
            lte_valuation(&int(2), &int(-1), 3, &int(3)),
            Ok((2, LteBranch::OddPrime))
        );
        assert_eq!(direct(2, -1, 3, 3), 2);
    }

    #[test]
    fn exhaustive_oracle_small_grid() {
        for p in [2i64, 3, 5, 7] {
            for a in -40i64..=40 {
                for b in -40i64..=40 {
                    for n in 1u32..=12 {
                        let applicable = a != b
                            && (a * b) % p != 0
                            && (a - b) % p == 0
                            && (p != 2 || (a - b) % 4 == 0 || n % 2 == 0)
                            && !(a == -b && n % 2 == 0);
                        let got = lte_valuation(&int(a), &int(b), n.into(), &int(p));
                        assert_eq!(got.is_ok(), applicable, "a={a} b={b} n={n} p={p}");
                        if let Ok((v, _)) = got {
                            assert_eq!(v, direct(a, b, n, p), "a={a} b={b} n={n} p={p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lemma2_examples() {
        assert_eq!(lemma2_transfer(&int(1), &int(0), 3, 5), Ok(int(1)));
        assert_eq!(
            lemma2_transfer(&int(3), &int(1), 3, 2),
            Err(Lemma2Error::NotAQthPower(int(26)))
        );
        assert_eq!(
            lemma2_transfer(&int(5), &int(3), 2, 2),
            Err(Lemma2Error::BothTwo)
        );
    }

    #[test]
    fn lemma2_errors() {
        assert_eq!(
            lemma2_transfer(&int(2), &int(2), 3, 5),
            Err(Lemma2Error::EqualArguments)
        );
        assert_eq!(
            lemma2_transfer(&int(4), &int(2), 3, 5),
            Err(Lemma2Error::NotCoprime)
        );
        assert_eq!(
            lemma2_transfer(&int(4), &int(1), 4, 5),
            Err(Lemma2Error::InvalidPrime(4))
        );
        // 3^2 - 1 = 8 = 2^3, root divisible by p = 2
        assert_eq!(
            lemma2_transfer(&int(3), &int(1), 2, 3),
            Err(Lemma2Error::DivisibleByP(int(2)))
        );
        // 1^2 - (-1)^2 = 0 = 0^3
        assert_eq!(
            lemma2_transfer(&int(1), &int(-1), 2, 3),
            Err(Lemma2Error::DivisibleByP(int(0)))
        );
    }

    #[test]
    fn lemma2_nontrivial_transfer() {
        // 14^2 - 13^2 = 27 = 3^3
        assert_eq!(lemma2_transfer(&int(14), &int(13), 2, 3), Ok(int(1)));
        // negative difference with odd q: 13^2 - 14^2 = -27 = (-3)^3
        assert_eq!(lemma2_transfer(&int(13), &int(14), 2, 3), Ok(int(-1)));
    }

    #[test]
    fn lemma2_sweep_has_no_counterexample() {
        for p in [2u32, 3, 5] {
            for q in [2u32, 3, 5] {
                if p == 2 && q == 2 {
                    continue;
                }
                for a in 1i64..=50 {
                    for b in 1..a {
                        match lemma2_transfer(&int(a), &int(b), p, q) {
                            Ok(t) => assert_eq!(Pow::pow(&t, q), int(a - b)),
                            Err(Lemma2Error::ConclusionFailed(d)) => {
                                panic!("counterexample a={a} b={b} p={p} q={q} d={d}")
                            }
                            Err(_) => {}
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn formula_matches_direct(a in -40i64..=40, b in -40i64..=40, n in 1u32..=12,
                                  p in prop::sample::select(vec![2i64, 3, 5, 7])) {
            if let Ok((v, _)) = lte_valuation(&int(a), &int(b), n.into(), &int(p)) {
                prop_assert_eq!(v, direct(a, b, n, p));
            }
        }
    }
}
