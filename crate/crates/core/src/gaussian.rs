//! Exact arithmetic in the Gaussian integers and the two identities used to
//! rule out `y^2 + 1 = x^p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{Pow, Signed, Zero};
use thiserror::Error;

use crate::numtheory::{binomial, is_prime_u64, v2, Integer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussianError {
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("exponent {0} must be an odd prime")]
    InvalidExponent(u32),
    #[error("p = 3 leaves the sum from j = 2 empty")]
    EmptySum,
    #[error("the sum vanishes, its valuation is infinite")]
    InfiniteValuation,
    #[error("a = {0} must be even and nonzero")]
    InvalidArgument(Integer),
}

/// `re + im·i` in `Z[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: Integer,
    pub im: Integer,
}

impl GaussianInt {
    pub fn new(re: impl Into<Integer>, im: impl Into<Integer>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> Integer {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Multiplication by `i`.
    fn rotate(&self) -> Self {
        Self {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    /// The associate with `re > 0` and `im >= 0`. Zero maps to zero.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut z = self.clone();
        while !(z.re.is_positive() && !z.im.is_negative()) {
            z = z.rotate();
        }
        z
    }

    /// Euclidean division with the quotient rounded to the nearest lattice point.
    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        let n = other.norm();
        let num = self * &other.conj();
        let quot = Self {
            re: round_div(&num.re, &n),
            im: round_div(&num.im, &n),
        };
        let rem = self - &(&quot * other);
        (quot, rem)
    }

    /// Exact quotient if `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.checked_div(self).is_some()
    }
}

fn round_div(a: &Integer, n: &Integer) -> Integer {
    let num: Integer = a * 2u32 + n;
    num.div_floor(&(n * 2u32))
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// `z^n` by square-and-multiply.
pub fn gaussian_pow(z: &GaussianInt, mut n: u64) -> GaussianInt {
    let mut acc = GaussianInt::one();
    let mut base = z.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

/// Greatest common divisor, returned as its canonical associate.
pub fn gaussian_gcd(z1: &GaussianInt, z2: &GaussianInt) -> Result<GaussianInt, GaussianError> {
    if z1.is_zero() && z2.is_zero() {
        return Err(GaussianError::BothZero);
    }
    let (mut a, mut b) = (z1.clone(), z2.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    Ok(a.canonical())
}

fn require_odd_prime(p: u32) -> Result<(), GaussianError> {
    if p.is_multiple_of(2) || !is_prime_u64(p.into()) {
        return Err(GaussianError::InvalidExponent(p));
    }
    Ok(())
}

/// Imaginary part of `(a + bi)^p` from the binomial expansion:
/// `b · Σ_{j=0}^{(p-1)/2} C(p, 2j) a^{2j} b^{p-2j-1} (-1)^{(p-1)/2 - j}`.
pub fn imag_part_formula(p: u32, a: &Integer, b: &Integer) -> Result<Integer, GaussianError> {
    require_odd_prime(p)?;
    let half = (p - 1) / 2;
    let sum = (0..=half).fold(Integer::zero(), |acc, j| {
        let term = binomial(p, 2 * j) * Pow::pow(a, 2 * j) * Pow::pow(b, p - 2 * j - 1);
        if (half - j).is_multiple_of(2) {
            acc + term
        } else {
            acc - term
        }
    });
    Ok(b * sum)
}

/// Two-adic comparison of the two sides of
/// `Σ_{j=2}^{(p-1)/2} C(p, 2j)(-a^2)^j = a^2 C(p, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qeven4Check {
    pub v_lhs: u64,
    pub v_rhs: u64,
    pub strict: bool,
}

pub fn qeven4_valuation_check(p: u32, a: &Integer) -> Result<Qeven4Check, GaussianError> {
    require_odd_prime(p)?;
    if p == 3 {
        return Err(GaussianError::EmptySum);
    }
    if a.is_zero() || a.is_odd() {
        return Err(GaussianError::InvalidArgument(a.clone()));
    }
    let neg_a2 = -(a * a);
    let lhs = (2..=(p - 1) / 2).fold(Integer::zero(), |acc, j| {
        acc + binomial(p, 2 * j) * Pow::pow(&neg_a2, j)
    });
    if lhs.is_zero() {
        return Err(GaussianError::InfiniteValuation);
    }
    let rhs = a * a * binomial(p, 2);
    let v_lhs = v2(&lhs);
    let v_rhs = v2(&rhs);
    Ok(Qeven4Check {
        v_lhs,
        v_rhs,
        strict: v_lhs > v_rhs,
    })
}
