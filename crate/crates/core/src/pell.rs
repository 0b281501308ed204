//! Solutions of `alpha^2 - d·beta^2 = 1`.
//!
//! The fundamental solution comes from the continued-fraction expansion of
//! `sqrt(d)`, run entirely on exact integers; convergents outgrow 64 bits
//! quickly (`d = 61` already needs `alpha = 1766319049`).

use num_traits::{One, Zero};
use thiserror::Error;

use crate::numtheory::{integer_nth_root, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    #[error("d = {0} is a perfect square")]
    SquareDiscriminant(Integer),
    #[error("d = {0} must be at least 2")]
    InvalidDiscriminant(Integer),
    #[error("power must be at least 1")]
    ZeroPower,
}

/// `alpha + beta·sqrt(d)` with `alpha^2 - d·beta^2 = 1`, `alpha, beta >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellSolution {
    alpha: Integer,
    beta: Integer,
    d: Integer,
}

impl PellSolution {
    /// Validates the norm equation; `None` if it fails.
    pub fn new(alpha: Integer, beta: Integer, d: Integer) -> Option<Self> {
        let valid = alpha >= Integer::one()
            && beta >= Integer::one()
            && &alpha * &alpha - &d * &beta * &beta == Integer::one();
        valid.then_some(Self { alpha, beta, d })
    }

    pub fn alpha(&self) -> &Integer {
        &self.alpha
    }

    pub fn beta(&self) -> &Integer {
        &self.beta
    }

    pub fn d(&self) -> &Integer {
        &self.d
    }

    /// `(alpha_m, beta_m)` with `alpha_m + beta_m·sqrt(d) = (alpha + beta·sqrt(d))^m`.
    pub fn pow(&self, m: u64) -> Result<PellSolution, PellError> {
        if m == 0 {
            return Err(PellError::ZeroPower);
        }
        let (alpha, beta) = quadratic_pow(&self.alpha, &self.beta, &self.d, m);
        Ok(PellSolution {
            alpha,
            beta,
            d: self.d.clone(),
        })
    }
}

/// Fundamental solution: the one with the smallest `beta >= 1`.
pub fn pell_fundamental(d: &Integer) -> Result<PellSolution, PellError> {
    if d < &Integer::from(2) {
        return Err(PellError::InvalidDiscriminant(d.clone()));
    }
    let a0 = integer_nth_root(d, 2).expect("d is positive");
    if &a0 * &a0 == *d {
        return Err(PellError::SquareDiscriminant(d.clone()));
    }

    // sqrt(d) = [a0; a1, a2, ...] with (m_k + sqrt(d)) / den_k as complete quotients
    let mut m = Integer::zero();
    let mut den = Integer::one();
    let mut a = a0.clone();
    let (mut h_prev, mut h) = (Integer::one(), a0.clone());
    let (mut k_prev, mut k) = (Integer::zero(), Integer::one());
    loop {
        if &h * &h - d * &k * &k == Integer::one() {
            return Ok(PellSolution {
                alpha: h,
                beta: k,
                d: d.clone(),
            });
        }
        m = &den * &a - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Convenience wrapper over [`PellSolution::pow`].
pub fn pell_power(s: &PellSolution, m: u64) -> Result<PellSolution, PellError> {
    s.pow(m)
}

/// `(a + b·sqrt(d))^m` in `Z[sqrt(d)]`, by binary exponentiation under
/// `(a, b)·(c, e) = (ac + d·be, ae + bc)`.
pub fn quadratic_pow(a: &Integer, b: &Integer, d: &Integer, mut m: u64) -> (Integer, Integer) {
    let mul = |(x1, y1): &(Integer, Integer), (x2, y2): &(Integer, Integer)| {
        (x1 * x2 + d * y1 * y2, x1 * y2 + y1 * x2)
    };
    let mut acc = (Integer::one(), Integer::zero());
    let mut base = (a.clone(), b.clone());
    while m > 0 {
        if m & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        m >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::exact_sqrt_u128;
    use num_integer::Integer as _;
    use num_traits::{Pow, ToPrimitive};

    fn int(n: i64) -> Integer {
        Integer::from(n)
    }

    fn pair(s: &PellSolution) -> (i64, i64) {
        (s.alpha().to_i64().unwrap(), s.beta().to_i64().unwrap())
    }

    /// Smallest beta with d·beta^2 + 1 a square.
    fn brute_force(d: u128, beta_max: u128) -> Option<(u128, u128)> {
        (1..=beta_max).find_map(|beta| exact_sqrt_u128(d * beta * beta + 1).map(|a| (a, beta)))
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(pair(&pell_fundamental(&int(2)).unwrap()), (3, 2));
        assert_eq!(pair(&pell_fundamental(&int(3)).unwrap()), (2, 1));
        assert_eq!(pair(&pell_fundamental(&int(5)).unwrap()), (9, 4));
        assert_eq!(brute_force(2, 10), Some((3, 2)));
        assert_eq!(brute_force(3, 10), Some((2, 1)));
        assert_eq!(brute_force(5, 10), Some((9, 4)));
    }

    #[test]
    fn large_fundamental_solution() {
        let s = pell_fundamental(&int(61)).unwrap();
        assert_eq!(s.alpha(), &int(1_766_319_049));
        assert_eq!(s.beta(), &int(226_153_980));
        let s = pell_fundamental(&int(991)).unwrap();
        assert!(s.alpha().bits() > 64);
        assert!(PellSolution::new(s.alpha().clone(), s.beta().clone(), int(991)).is_some());
    }

    #[test]
    fn discriminant_errors() {
        assert_eq!(
            pell_fundamental(&int(4)),
            Err(PellError::SquareDiscriminant(int(4)))
        );
        assert_eq!(
            pell_fundamental(&int(1)),
            Err(PellError::InvalidDiscriminant(int(1)))
        );
        assert_eq!(
            pell_fundamental(&int(-3)),
            Err(PellError::InvalidDiscriminant(int(-3)))
        );
    }

    #[test]
    fn power_examples() {
        let s2 = pell_fundamental(&int(2)).unwrap();
        assert_eq!(pair(&pell_power(&s2, 2).unwrap()), (17, 12));
        let s3 = pell_fundamental(&int(3)).unwrap();
        assert_eq!(pair(&pell_power(&s3, 3).unwrap()), (26, 15));
        assert_eq!(pell_power(&s3, 1).unwrap(), s3);
        assert_eq!(pell_power(&s3, 0), Err(PellError::ZeroPower));
    }

    #[test]
    fn minimal_against_brute_force() {
        for d in 2u128..=30 {
            if exact_sqrt_u128(d).is_some() {
                continue;
            }
            let s = pell_fundamental(&Integer::from(d)).unwrap();
            let expected = brute_force(d, 100_000).expect("solution within range");
            assert_eq!(
                (s.alpha().to_u128().unwrap(), s.beta().to_u128().unwrap()),
                expected,
                "d = {d}"
            );
        }
    }

    #[test]
    fn norm_identity_for_powers() {
        for d in 2i64..=200 {
            let Ok(s) = pell_fundamental(&int(d)) else {
                continue;
            };
            for m in 1..=8 {
                let t = s.pow(m).unwrap();
                assert_eq!(t.alpha() * t.alpha() - int(d) * t.beta() * t.beta(), int(1));
            }
        }
    }

    #[test]
    fn binomial_congruence_mod_d() {
        // (zeta + sqrt(y))^m = zeta^m + m·zeta^(m-1)·sqrt(y) modulo y
        for y in 2i64..=50 {
            let Ok(s) = pell_fundamental(&int(y)) else {
                continue;
            };
            let zeta = s.alpha();
            let y = int(y);
            for m in 1u32..=6 {
                let (a, b) = quadratic_pow(zeta, &int(1), &y, m.into());
                assert_eq!(a.mod_floor(&y), Pow::pow(zeta, m).mod_floor(&y));
                assert_eq!(
                    b.mod_floor(&y),
                    (Pow::pow(zeta, m - 1) * m).mod_floor(&y),
                    "y = {y}, m = {m}"
                );
            }
        }
    }
}
