//! Exact integer primitives shared by every other module.
//!
//! All arithmetic is carried out on [`Integer`] (an arbitrary-precision
//! signed integer), so nothing here rounds or overflows. Exponents are
//! `u32`: any exponent that does not fit would make the power itself
//! impossible to materialise.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer as _, Roots};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("valuation of zero is infinite")]
    InfiniteValuation,
    #[error("{0} is not prime")]
    InvalidPrime(Integer),
    #[error("negative radicand {0}")]
    NegativeRadicand(Integer),
    #[error("root index must be at least 1")]
    ZeroRootIndex,
    #[error("tuple entry {name} = {value} is below 2")]
    TupleEntryTooSmall { name: &'static str, value: Integer },
}

/// `p`-adic valuation of `n`: the largest `k` with `p^k | n`.
///
/// Negative `n` is handled through `|n|`.
pub fn vp(n: &Integer, p: &Integer) -> Result<u64, NumTheoryError> {
    if n.is_zero() {
        return Err(NumTheoryError::InfiniteValuation);
    }
    if !is_prime(p) {
        return Err(NumTheoryError::InvalidPrime(p.clone()));
    }
    Ok(vp_unchecked(n, p))
}

/// Valuation without the primality check. `n` must be nonzero and `p > 1`.
pub(crate) fn vp_unchecked(n: &Integer, p: &Integer) -> u64 {
    debug_assert!(!n.is_zero());
    if p == &Integer::from(2) {
        return n.trailing_zeros().unwrap_or(0);
    }
    let mut m = n.abs();
    let mut k = 0;
    loop {
        let (quot, rem) = m.div_rem(p);
        if !rem.is_zero() {
            return k;
        }
        m = quot;
        k += 1;
    }
}

/// 2-adic valuation of a nonzero integer.
pub(crate) fn v2(n: &Integer) -> u64 {
    n.trailing_zeros().expect("v2 of zero")
}

/// Floor of the `k`-th root: the `r` with `r^k <= n < (r+1)^k`.
pub fn integer_nth_root(n: &Integer, k: u32) -> Result<Integer, NumTheoryError> {
    if k == 0 {
        return Err(NumTheoryError::ZeroRootIndex);
    }
    if n.is_negative() {
        return Err(NumTheoryError::NegativeRadicand(n.clone()));
    }
    Ok(n.nth_root(k))
}

/// Exact `k`-th root of `n` if one exists; odd `k` admits negative `n`.
pub fn exact_root(n: &Integer, k: u32) -> Option<Integer> {
    if k == 0 {
        return None;
    }
    if n.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (Pow::pow(&r, k) == *n).then_some(r)
}

/// Returns `(b, e)` with `b^e = n`, `b, e >= 2` and `e` maximal, or `None`.
pub fn is_perfect_power(n: &Integer) -> Option<(Integer, u32)> {
    if n < &Integer::from(4) {
        return None;
    }
    let max_exp = u32::try_from(n.bits() - 1).ok()?;
    (2..=max_exp).rev().find_map(|e| {
        let r = n.nth_root(e);
        (r >= Integer::from(2) && Pow::pow(&r, e) == *n).then_some((r, e))
    })
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Primality test.
///
/// Exact for every `n < 3.3 * 10^24`: 64-bit inputs use Miller-Rabin with
/// the first twelve prime bases, wider ones the first thirteen. The CLI
/// limits primality inputs to 64-bit magnitude.
pub fn is_prime(n: &Integer) -> bool {
    if n.is_negative() {
        return false;
    }
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => is_prime_big(n),
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let (d, s) = odd_part(n - 1);
    MR_BASES[..12].iter().all(|&a| {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

fn odd_part(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_big(n: &Integer) -> bool {
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = Integer::one();
    let n_minus_1 = n - &one;
    let s = v2(&n_minus_1);
    let d = &n_minus_1 >> s;
    MR_BASES.iter().all(|&a| {
        let mut x = Integer::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                return true;
            }
        }
        false
    })
}

/// Smallest prime factor of `n >= 2`, by trial division.
pub fn smallest_prime_factor(n: u32) -> u32 {
    assert!(n >= 2, "smallest_prime_factor of {n}");
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// Exact binomial coefficient via the multiplicative recurrence.
pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A candidate `(x, p, y, q)` for `x^p - y^q = 1`; every entry is at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalanTuple {
    x: Integer,
    p: u32,
    y: Integer,
    q: u32,
}

impl CatalanTuple {
    pub fn new(x: Integer, p: u32, y: Integer, q: u32) -> Result<Self, NumTheoryError> {
        let two = Integer::from(2);
        if x < two {
            return Err(NumTheoryError::TupleEntryTooSmall {
                name: "x",
                value: x,
            });
        }
        if p < 2 {
            return Err(NumTheoryError::TupleEntryTooSmall {
                name: "p",
                value: p.into(),
            });
        }
        if y < two {
            return Err(NumTheoryError::TupleEntryTooSmall {
                name: "y",
                value: y,
            });
        }
        if q < 2 {
            return Err(NumTheoryError::TupleEntryTooSmall {
                name: "q",
                value: q.into(),
            });
        }
        Ok(Self { x, p, y, q })
    }

    /// Shorthand for small literal tuples; panics on invalid entries.
    pub fn from_u64(x: u64, p: u32, y: u64, q: u32) -> Self {
        Self::new(x.into(), p, y.into(), q).expect("invalid Catalan tuple")
    }

    /// The known solution `3^2 - 2^3 = 1`.
    pub fn catalan_solution() -> Self {
        Self::from_u64(3, 2, 2, 3)
    }

    pub fn x(&self) -> &Integer {
        &self.x
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn y(&self) -> &Integer {
        &self.y
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn x_pow(&self) -> Integer {
        Pow::pow(&self.x, self.p)
    }

    pub fn y_pow(&self) -> Integer {
        Pow::pow(&self.y, self.q)
    }

    /// `x^p - y^q`, evaluated exactly.
    pub fn difference(&self) -> Integer {
        self.x_pow() - self.y_pow()
    }

    pub fn is_solution(&self) -> bool {
        self.difference().is_one()
    }

    pub fn has_prime_exponents(&self) -> bool {
        is_prime_u64(self.p.into()) && is_prime_u64(self.q.into())
    }
}

impl fmt::Display for CatalanTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.x, self.p, self.y, self.q)
    }
}

/// Rewrites composite exponents to prime ones without changing `x^p` or `y^q`.
///
/// With `r` the smallest prime factor of `p`, `(x, p)` becomes
/// `(x^(p/r), r)`; likewise for `(y, q)`.
pub fn normalize_tuple(t: &CatalanTuple) -> CatalanTuple {
    let (x, p) = normalize_power(&t.x, t.p);
    let (y, q) = normalize_power(&t.y, t.q);
    CatalanTuple { x, p, y, q }
}

fn normalize_power(base: &Integer, exp: u32) -> (Integer, u32) {
    let r = smallest_prime_factor(exp);
    (Pow::pow(base, exp / r), r)
}

/// Integer square root test for native values.
pub(crate) fn exact_sqrt_u128(n: u128) -> Option<u128> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}
