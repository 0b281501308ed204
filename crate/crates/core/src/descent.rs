//! The `p = 2, q = 3` apparatus: triangular cubes, `α³ + β³ = 2γ³`, the
//! quartic `a⁴ + 9a²b² + 27b⁴ = c²` and the descent step on it.
//!
//! The searches are bounded sweeps over native integers (the bounds keep
//! every intermediate value far below `i128::MAX`); their outputs are
//! converted to [`Integer`]. [`descent_step`] works on arbitrary precision.

use std::fmt;

use num_integer::{Integer as _, Roots};
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::numtheory::{exact_root, integer_nth_root, Integer};
use crate::par::{flat_map_range, Execution};

/// `(fa, fb, fc)`, a candidate for `fa⁴ + 9·fa²·fb² + 27·fb⁴ = fc²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarticTriple {
    pub fa: Integer,
    pub fb: Integer,
    pub fc: Integer,
}

impl QuarticTriple {
    pub fn new(fa: impl Into<Integer>, fb: impl Into<Integer>, fc: impl Into<Integer>) -> Self {
        Self {
            fa: fa.into(),
            fb: fb.into(),
            fc: fc.into(),
        }
    }

    /// Value of the quartic form at `(fa, fb)`.
    pub fn form_value(&self) -> Integer {
        quartic_form(&self.fa, &self.fb)
    }

    pub fn is_solution(&self) -> bool {
        self.form_value() == &self.fc * &self.fc
    }
}

impl fmt::Display for QuarticTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.fa, self.fb, self.fc)
    }
}

/// `(al, be, ga)`, a candidate for `al³ + be³ = 2·ga³`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EulerTriple {
    pub al: Integer,
    pub be: Integer,
    pub ga: Integer,
}

impl EulerTriple {
    pub fn new(al: impl Into<Integer>, be: impl Into<Integer>, ga: impl Into<Integer>) -> Self {
        Self {
            al: al.into(),
            be: be.into(),
            ga: ga.into(),
        }
    }

    pub fn is_solution(&self) -> bool {
        Pow::pow(&self.al, 3u32) + Pow::pow(&self.be, 3u32) == Pow::pow(&self.ga, 3u32) * 2
    }

    /// `al = be = ga`, or `al = -be` with `ga = 0`.
    pub fn is_trivial(&self) -> bool {
        (self.al == self.be && self.be == self.ga) || (self.al == -&self.be && self.ga.is_zero())
    }
}

impl fmt::Display for EulerTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.al, self.be, self.ga)
    }
}

pub fn quartic_form(fa: &Integer, fb: &Integer) -> Integer {
    let a2 = fa * fa;
    let b2 = fb * fb;
    &a2 * &a2 + &a2 * &b2 * 9 + &b2 * &b2 * 27
}

/// All `m` in `[1, bound]` whose triangular number `m(m+1)/2` is a cube.
pub fn triangular_cube_search(bound: u64) -> Vec<u64> {
    triangular_cube_search_with(bound, Execution::default())
}

pub fn triangular_cube_search_with(bound: u64, exec: Execution) -> Vec<u64> {
    if bound == 0 {
        return Vec::new();
    }
    let hi = i64::try_from(bound).expect("bound fits in i64");
    flat_map_range(exec, 1..=hi, |m| {
        let m = m as u128;
        let t = m * (m + 1) / 2;
        let r = t.cbrt();
        if r * r * r == t {
            vec![m as u64]
        } else {
            vec![]
        }
    })
}

/// Every integer solution of `al³ + be³ = 2·ga³` with all entries in
/// `[-bound, bound]`, sorted lexicographically.
pub fn euler_search(bound: u64) -> Vec<EulerTriple> {
    euler_search_with(bound, Execution::default())
}

pub fn euler_search_with(bound: u64, exec: Execution) -> Vec<EulerTriple> {
    let b = i64::try_from(bound).expect("bound fits in i64");
    flat_map_range(exec, -b..=b, |al| {
        let mut out = Vec::new();
        for be in -b..=b {
            let s = (al as i128).pow(3) + (be as i128).pow(3);
            if s % 2 != 0 {
                continue;
            }
            let half = s / 2;
            let ga = signed_cbrt(half);
            if ga.pow(3) == half && ga.abs() <= b as i128 {
                out.push(EulerTriple::new(al, be, ga as i64));
            }
        }
        out
    })
}

fn signed_cbrt(n: i128) -> i128 {
    if n < 0 {
        -(((-n) as u128).cbrt() as i128)
    } else {
        (n as u128).cbrt() as i128
    }
}

/// Solutions of the quartic with `|fa|, |fb| <= bound` and `fa·fb·fc != 0`,
/// taking `fc > 0`. Sorted by `(fa, fb)`.
pub fn form_search(bound: u64) -> Vec<QuarticTriple> {
    form_search_with(bound, Execution::default())
}

pub fn form_search_with(bound: u64, exec: Execution) -> Vec<QuarticTriple> {
    let b = i64::try_from(bound).expect("bound fits in i64");
    flat_map_range(exec, -b..=b, |fa| {
        if fa == 0 {
            return vec![];
        }
        let a2 = (fa as i128).pow(2);
        let mut out = Vec::new();
        for fb in -b..=b {
            if fb == 0 {
                continue;
            }
            let b2 = (fb as i128).pow(2);
            let s = a2 * a2 + 9 * a2 * b2 + 27 * b2 * b2;
            let c = (s as u128).sqrt() as i128;
            if c * c == s {
                out.push(QuarticTriple::new(fa, fb, c as i64));
            }
        }
        out
    })
}

/// Regression of the factorisation identity behind the descent: with
/// `fb = 2·fm`, `(fc² - (fa² + 18·fm²)²) / 4 = 27·fm⁴`.
pub fn xyz_identity_check(fa: &Integer, fm: &Integer) -> bool {
    let a2 = fa * fa;
    let m2 = fm * fm;
    let s = &a2 * &a2 + &a2 * &m2 * 36 + &m2 * &m2 * 432;
    let mid = &a2 + &m2 * 18;
    let diff: Integer = s - &mid * &mid;
    diff.is_multiple_of(&Integer::from(4)) && diff / 4 == &m2 * &m2 * 27
}

/// Constraint a solution must meet before the descent can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DescentPrecondition {
    FcPositive,
    FaNonZero,
    FbNonZero,
    Coprime,
    /// An even `fa` forces an even `fb` (mod 4).
    FaOdd,
    /// Odd `fa` and `fb` give `fc² ≡ 5 (mod 8)`.
    FbEven,
    /// `3 | fa` forces `3 | fb` (mod 81).
    FaNotDivisibleBy3,
}

impl fmt::Display for DescentPrecondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DescentPrecondition::FcPositive => "fc >= 1",
            DescentPrecondition::FaNonZero => "fa != 0",
            DescentPrecondition::FbNonZero => "fb != 0",
            DescentPrecondition::Coprime => "gcd(fa, fb) = 1",
            DescentPrecondition::FaOdd => "fa odd (mod 4)",
            DescentPrecondition::FbEven => "fb even (mod 8)",
            DescentPrecondition::FaNotDivisibleBy3 => "3 does not divide fa (mod 81)",
        })
    }
}

/// How `27·fm⁴` splits over the two coprime factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorBranch {
    /// First factor `27a⁴`, second `b⁴`.
    TwentySevenFirst,
    /// First factor `a⁴`, second `27b⁴`.
    TwentySevenSecond,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(DescentPrecondition),
    #[error("{0} is not a solution of the quartic form")]
    NotASolution(QuarticTriple),
    #[error("factors {0} and {1} do not split as 27·u⁴ and v⁴")]
    NoFourthPowerSplit(Integer, Integer),
    /// The first branch makes `b⁴ + fa² ≡ 0 (mod 3)`, impossible for `3 ∤ fa`.
    #[error("branch {0:?} is contradictory modulo 3")]
    BranchContradiction(FactorBranch),
    #[error("descended triple {0} is not a smaller solution")]
    NoDecrease(QuarticTriple),
}

/// A strictly smaller solution produced by one descent step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentOutcome {
    pub triple: QuarticTriple,
    pub branch: FactorBranch,
}

/// From a solution `(fa, fb, fc)` build another with `1 <= fc' < fc`.
///
/// No input satisfies every precondition, so every call returns an error;
/// each named precondition is checked before the solution test so it can be
/// exercised on its own.
pub fn descent_step(t: &QuarticTriple) -> Result<DescentOutcome, DescentError> {
    use DescentPrecondition::*;
    let fail = |c| Err(DescentError::PreconditionFailed(c));
    if t.fc < Integer::one() {
        return fail(FcPositive);
    }
    if t.fa.is_zero() {
        return fail(FaNonZero);
    }
    if t.fb.is_zero() {
        return fail(FbNonZero);
    }
    if !t.fa.gcd(&t.fb).is_one() {
        return fail(Coprime);
    }
    if t.fa.is_even() {
        return fail(FaOdd);
    }
    if t.fb.is_odd() {
        return fail(FbEven);
    }
    if t.fa.is_multiple_of(&Integer::from(3)) {
        return fail(FaNotDivisibleBy3);
    }
    if !t.is_solution() {
        return Err(DescentError::NotASolution(t.clone()));
    }

    let a2 = &t.fa * &t.fa;
    let fm: Integer = (&t.fb / 2u32).abs();
    let m2 = &fm * &fm;
    // 27·fm⁴ = first · second, both positive and coprime
    let first = (&t.fc + &a2) / 2 + &m2 * 9;
    let second = (&t.fc - &a2) / 2 - &m2 * 9;

    match split_27(&first, &second) {
        Some((FactorBranch::TwentySevenFirst, _, _)) => Err(DescentError::BranchContradiction(
            FactorBranch::TwentySevenFirst,
        )),
        Some((branch @ FactorBranch::TwentySevenSecond, b, a)) => {
            // 27b⁴ = ((a² + fa)/2 - 9b²/2)((a² - fa)/2 - 9b²/2)
            let a_sq = &a * &a;
            let nine_b2 = &b * &b * 9;
            let g1 = (&a_sq + &t.fa - &nine_b2) / 2;
            let g2 = (&a_sq - &t.fa - &nine_b2) / 2;
            let (_, c, d) = split_27(&g1, &g2).ok_or(DescentError::NoFourthPowerSplit(g1, g2))?;
            let triple = QuarticTriple {
                fa: d,
                fb: c,
                fc: a,
            };
            if !(triple.is_solution() && triple.fc >= Integer::one() && triple.fc < t.fc) {
                return Err(DescentError::NoDecrease(triple));
            }
            Ok(DescentOutcome { triple, branch })
        }
        None => Err(DescentError::NoFourthPowerSplit(first, second)),
    }
}

/// Writes `{first, second}` as `{27u⁴, v⁴}` in either order; returns the
/// branch together with `u` and `v`.
fn split_27(first: &Integer, second: &Integer) -> Option<(FactorBranch, Integer, Integer)> {
    let fourth = |n: &Integer| {
        if n.is_positive() {
            exact_root(n, 4)
        } else {
            None
        }
    };
    let twenty_seven = Integer::from(27);
    let by_27 = |n: &Integer| {
        n.is_multiple_of(&twenty_seven)
            .then(|| fourth(&(n / 27)))
            .flatten()
    };
    if let (Some(u), Some(v)) = (by_27(first), fourth(second)) {
        return Some((FactorBranch::TwentySevenFirst, u, v));
    }
    if let (Some(v), Some(u)) = (fourth(first), by_27(second)) {
        return Some((FactorBranch::TwentySevenSecond, u, v));
    }
    None
}

/// True when `n` is a perfect cube (non-negative `n`).
pub fn is_cube(n: &Integer) -> bool {
    integer_nth_root(n, 3)
        .map(|r| Pow::pow(&r, 3u32) == *n)
        .unwrap_or(false)
}
