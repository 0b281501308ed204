//! Closed-form inequality checks: the endgame of case VIII and the bound
//! obtained when Cassels' divisibility result is assumed.

use std::collections::BTreeMap;

use num_integer::Integer as _;
use num_traits::Pow;

use super::EngineError;
use crate::numtheory::{is_prime_u64, Integer};

/// Endgame of case VIII for `p` in `{3, 5}`.
///
/// With `k = p + 1`, any surviving `q` divides `k^p - 2^p`; the only odd
/// prime divisor other than `p` is returned as `q`, and
/// `(p^(q-1) + 1)^p < (k^p - 1)^q` is confirmed exactly. The `p = 5`
/// branch is kept even though `5·1 + 1 = 6` exceeds the `k <= 4` bound the
/// surrounding argument uses to restrict `p`.
pub fn case_viii_endgame_check(p: u32) -> Result<BTreeMap<String, Integer>, EngineError> {
    if p != 3 && p != 5 {
        return Err(EngineError::OutOfScope(p));
    }
    let k = Integer::from(p + 1);
    let two = Integer::from(2);
    let divisor = Pow::pow(&k, p) - Pow::pow(&two, p);

    let q = odd_prime_factors(&divisor)
        .into_iter()
        .find(|&r| r != u64::from(p))
        .expect("k^p - 2^p has an odd prime factor other than p");
    let q32 = u32::try_from(q).expect("small prime");
    // Fermat: 2^p - (k^p - 1) = 1 (mod q)
    debug_assert!((Pow::pow(&two, p) - (Pow::pow(&k, p) - 1u32) - 1u32).is_multiple_of(&q.into()));

    let lhs = Pow::pow(&(Pow::pow(&Integer::from(p), q32 - 1) + 1u32), p);
    let rhs = Pow::pow(&(Pow::pow(&k, p) - 1u32), q32);
    let holds = lhs < rhs;

    Ok(BTreeMap::from([
        ("divisor".to_string(), divisor),
        ("q".to_string(), Integer::from(q)),
        (
            "inequality_holds".to_string(),
            Integer::from(u8::from(holds)),
        ),
    ]))
}

fn odd_prime_factors(n: &Integer) -> Vec<u64> {
    let mut m: u64 = n.try_into().expect("divisor fits in u64");
    let mut out = Vec::new();
    while m.is_multiple_of(2) {
        m /= 2;
    }
    let mut d = 3;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 2;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Checks `1 + p^(q-1)(2q-1)^q > (2q·sqrt(p))^q` by comparing squares,
/// `(1 + p^(q-1)(2q-1)^q)^2` against `(4q²p)^q`, together with
/// `2^q < p^(q-1)`. Both must hold for the result to be `true`.
pub fn cassels_bound_check(p: u32, q: u32) -> Result<bool, EngineError> {
    let invalid = |reason| Err(EngineError::InvalidExponents { p, q, reason });
    if p == q {
        return invalid("p and q must differ");
    }
    for e in [p, q] {
        if e % 2 == 0 || !is_prime_u64(e.into()) {
            return invalid("p and q must be odd primes");
        }
    }
    let pi = Integer::from(p);
    let qi = Integer::from(q);
    let lhs = Pow::pow(&pi, q - 1) * Pow::pow(&(&qi * 2u32 - 1u32), q) + 1u32;
    let rhs_squared = Pow::pow(&(&qi * &qi * 4u32 * &pi), q);
    let main = &lhs * &lhs > rhs_squared;
    let sub = Pow::pow(&Integer::from(2), q) < Pow::pow(&pi, q - 1);
    Ok(main && sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(m: &BTreeMap<String, Integer>, k: &str) -> i64 {
        i64::try_from(&m[k]).unwrap()
    }

    #[test]
    fn endgame_p3() {
        let m = case_viii_endgame_check(3).unwrap();
        assert_eq!(entry(&m, "divisor"), 56);
        assert_eq!(entry(&m, "q"), 7);
        assert_eq!(entry(&m, "inequality_holds"), 1);
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn endgame_p5() {
        let m = case_viii_endgame_check(5).unwrap();
        assert_eq!(entry(&m, "divisor"), 7744);
        assert_eq!(7744, 2i64.pow(6) * 11 * 11);
        assert_eq!(entry(&m, "q"), 11);
        assert_eq!(entry(&m, "inequality_holds"), 1);
    }

    #[test]
    fn endgame_out_of_scope() {
        for p in [2, 7, 11] {
            assert_eq!(case_viii_endgame_check(p), Err(EngineError::OutOfScope(p)));
        }
    }

    #[test]
    fn endgame_inequalities_exact() {
        let lhs = Pow::pow(&(Integer::from(3).pow(6u32) + 1u32), 3u32);
        let rhs = Pow::pow(&Integer::from(63), 7u32);
        assert!(lhs < rhs);
        let lhs = Pow::pow(&(Integer::from(5).pow(10u32) + 1u32), 5u32);
        let rhs = Pow::pow(&Integer::from(7775), 11u32);
        assert!(lhs < rhs);
    }

    #[test]
    fn cassels_examples() {
        assert_eq!(cassels_bound_check(3, 5), Ok(true));
        assert_eq!(cassels_bound_check(5, 3), Ok(true));
        assert!(cassels_bound_check(3, 3).is_err());
        assert!(cassels_bound_check(2, 3).is_err());
        assert!(cassels_bound_check(9, 5).is_err());
        // 4782970^2 against 300^5
        let lhs = Integer::from(4_782_970u64);
        assert!(&lhs * &lhs > Integer::from(300).pow(5u32));
        assert!(Integer::from(3126 * 3126) > Integer::from(180).pow(3u32));
    }

    #[test]
    fn cassels_all_small_pairs() {
        let primes: Vec<u32> = (3..=97).filter(|&n| is_prime_u64(n.into())).collect();
        for &p in &primes {
            for &q in &primes {
                if p != q {
                    assert_eq!(cassels_bound_check(p, q), Ok(true), "p={p} q={q}");
                }
            }
        }
    }
}
