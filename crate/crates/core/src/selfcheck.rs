//! The nine acceptance checks as library functions, so the command-line
//! `selfcheck` and the test suite run the same code. Each check compares
//! the module under test with a direct computation (full expansion, brute
//! force, or re-derivation) rather than with stored answers.

use std::fmt;
use std::time::{Duration, Instant};

use num_integer::Integer as _;
use num_traits::{Pow, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::descent::{euler_search, form_search, triangular_cube_search, xyz_identity_check};
use crate::engine::{
    apply_rule, candidates, case_viii_endgame_check, cassels_bound_check, classify,
    search_pruned_detailed, search_with, CaseId, Certificate, SearchBounds, Verdict,
};
use crate::gaussian::{gaussian_pow, imag_part_formula, qeven4_valuation_check, GaussianInt};
use crate::lte::lte_valuation;
use crate::numtheory::{exact_sqrt_u128, is_prime_u64, vp, CatalanTuple, Integer};
use crate::par::Execution;
use crate::pell::{pell_fundamental, quadratic_pow};

const SEED: u64 = 0x00C0_FFEE;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionReport {
    fn new(id: u8, name: &'static str, failures: Vec<String>, summary: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<_> = failures.iter().take(3).cloned().collect();
            format!("{} failure(s): {}", failures.len(), shown.join("; "))
        };
        Self {
            id,
            name,
            passed,
            detail,
        }
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

/// Grid used by the sweep, pruning and certificate checks.
pub fn desk_bounds() -> SearchBounds {
    SearchBounds::new(200, 13, 10u64.pow(18))
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Criterion 1: the sweep finds exactly `3^2 - 2^3`, single worker, under a minute.
pub fn uniqueness_sweep() -> CriterionReport {
    let start = Instant::now();
    let sols = search_with(&desk_bounds(), Execution::Sequential);
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    if sols != [CatalanTuple::catalan_solution()] {
        let shown: Vec<_> = sols.iter().map(ToString::to_string).collect();
        failures.push(format!("solutions [{}]", shown.join(", ")));
    }
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("took {}", secs(elapsed)));
    }
    CriterionReport::new(
        1,
        "uniqueness sweep",
        failures,
        "[(3, 2, 2, 3)] within 60s".to_string(),
    )
}

/// Criterion 2: pruning changes nothing and never discards a solution.
pub fn pruned_equivalence() -> CriterionReport {
    let bounds = desk_bounds();
    let plain = search_with(&bounds, Execution::default());
    let pruned = search_pruned_detailed(&bounds, Execution::default());
    let mut failures = Vec::new();
    if pruned.solutions != plain {
        failures.push("solution lists differ".to_string());
    }
    for (case, t) in &pruned.pruned {
        // full evaluation, independent of the residue shortcut that pruned it
        if Pow::pow(t.x(), t.p()) - Pow::pow(t.y(), t.q()) == Integer::from(1) {
            failures.push(format!("case {case} pruned solution {t}"));
        }
    }
    let summary = format!(
        "identical solutions; {} of {} candidates pruned, 0 soundness violations",
        pruned.total_pruned(),
        pruned.candidates
    );
    CriterionReport::new(2, "pruned equivalence", failures, summary)
}

fn lte_applicable(a: i64, b: i64, n: u32, p: i64) -> bool {
    a != b
        && (a * b) % p != 0
        && (a - b) % p == 0
        && (p != 2 || (a - b) % 4 == 0 || n.is_multiple_of(2))
        && !(a == -b && n.is_multiple_of(2))
}

/// Criterion 3: the closed formula matches the expanded valuation on random
/// admissible inputs.
pub fn lte_oracle(samples: usize) -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < samples {
        let p = *[2i64, 3, 5, 7].choose(&mut rng).expect("nonempty");
        let a = rng.gen_range(-40i64..=40);
        let b = rng.gen_range(-40i64..=40);
        let n = rng.gen_range(1u32..=12);
        if !lte_applicable(a, b, n, p) {
            continue;
        }
        done += 1;
        let diff = Pow::pow(&Integer::from(a), n) - Pow::pow(&Integer::from(b), n);
        let expected = vp(&diff, &Integer::from(p)).ok();
        let got = lte_valuation(
            &Integer::from(a),
            &Integer::from(b),
            n.into(),
            &Integer::from(p),
        )
        .ok()
        .map(|(v, _)| v);
        if got.is_none() || got != expected {
            failures.push(format!("a={a} b={b} n={n} p={p}: {got:?} vs {expected:?}"));
        }
    }
    CriterionReport::new(
        3,
        "LTE oracle",
        failures,
        format!("{samples}/{samples} samples agree"),
    )
}

/// Criterion 4: the binomial imaginary part and the two-adic comparison.
pub fn gaussian_identities() -> CriterionReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for p in [3u32, 5, 7, 11, 13] {
        for a in -10i64..=10 {
            for b in -10i64..=10 {
                let (ai, bi) = (Integer::from(a), Integer::from(b));
                let direct = gaussian_pow(&GaussianInt::new(a, b), p.into()).im;
                match imag_part_formula(p, &ai, &bi) {
                    Ok(v) if v == direct => checked += 1,
                    other => failures.push(format!("p={p} a={a} b={b}: {other:?} vs {direct}")),
                }
            }
        }
    }
    for p in (5u32..=23).filter(|&p| is_prime_u64(p.into())) {
        for mag in (2i64..=100).step_by(2) {
            for a in [mag, -mag] {
                match qeven4_valuation_check(p, &Integer::from(a)) {
                    Ok(c) if c.strict => checked += 1,
                    other => failures.push(format!("p={p} a={a}: {other:?}")),
                }
            }
        }
    }
    CriterionReport::new(
        4,
        "Gaussian identities",
        failures,
        format!("{checked} identities hold"),
    )
}

/// Smallest `(alpha, beta)` with `alpha^2 - d beta^2 = 1`, `1 <= beta <= limit`.
fn pell_brute_force(d: u128, limit: u128) -> Option<(u128, u128)> {
    (1..=limit).find_map(|beta| exact_sqrt_u128(1 + d * beta * beta).map(|alpha| (alpha, beta)))
}

/// Criterion 5: minimality, the norm identity, and the binomial congruence.
pub fn pell_checks() -> CriterionReport {
    let mut failures = Vec::new();
    for d in (2u128..=30).filter(|&d| exact_sqrt_u128(d).is_none()) {
        let got = pell_fundamental(&Integer::from(d))
            .ok()
            .and_then(|s| Some((s.alpha().to_u128()?, s.beta().to_u128()?)));
        let expected = pell_brute_force(d, 100_000);
        if got != expected {
            failures.push(format!("d={d}: {got:?} vs brute force {expected:?}"));
        }
    }
    for d in 2i64..=200 {
        let Ok(s) = pell_fundamental(&Integer::from(d)) else {
            continue;
        };
        for m in 1u64..=8 {
            let t = s.pow(m).expect("m >= 1");
            if t.alpha() * t.alpha() - t.beta() * t.beta() * d != Integer::from(1) {
                failures.push(format!("norm identity fails for d={d}, m={m}"));
            }
        }
    }
    for y in 2i64..=50 {
        let Ok(s) = pell_fundamental(&Integer::from(y)) else {
            continue;
        };
        let (zeta, yi) = (s.alpha(), Integer::from(y));
        for m in 1u32..=6 {
            let (re, sq) = quadratic_pow(zeta, &Integer::from(1), &yi, m.into());
            let want_re = Pow::pow(zeta, m).mod_floor(&yi);
            let want_sq = (Pow::pow(zeta, m - 1) * m).mod_floor(&yi);
            if re.mod_floor(&yi) != want_re || sq.mod_floor(&yi) != want_sq {
                failures.push(format!("congruence fails for y={y}, m={m}"));
            }
        }
    }
    CriterionReport::new(
        5,
        "Pell",
        failures,
        "minimal for d <= 30, norm exact for d <= 200, congruence for y <= 50".to_string(),
    )
}

/// Criterion 6: the three searches and random instances of the factorisation identity.
pub fn descent_suite(xyz_samples: usize) -> CriterionReport {
    let mut failures = Vec::new();
    let tri = triangular_cube_search(1_000_000);
    if tri != [1] {
        failures.push(format!("triangular cubes {tri:?}"));
    }
    let euler = euler_search(200);
    if let Some(t) = euler.iter().find(|t| !t.is_trivial()) {
        failures.push(format!("non-trivial Euler triple {t}"));
    }
    let form = form_search(300);
    if let Some(t) = form.first() {
        failures.push(format!("form solution {t}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for _ in 0..xyz_samples {
        let fa = Integer::from(rng.gen_range(-1_000_000i64..=1_000_000));
        let fm = Integer::from(rng.gen_range(-1_000_000i64..=1_000_000));
        if !xyz_identity_check(&fa, &fm) {
            failures.push(format!("identity fails at fa={fa}, fm={fm}"));
        }
    }
    let summary = format!(
        "triangular [1]; {} Euler triples all trivial; form empty; {xyz_samples} identities",
        euler.len()
    );
    CriterionReport::new(6, "descent suite", failures, summary)
}

/// Criterion 7: the two case VIII endgames.
pub fn endgame_constants() -> CriterionReport {
    let mut failures = Vec::new();
    for (p, divisor, q) in [(3u32, 56u64, 7u64), (5, 7744, 11)] {
        match case_viii_endgame_check(p) {
            Ok(m) => {
                let get = |k: &str| m.get(k).and_then(ToPrimitive::to_u64);
                if get("divisor") != Some(divisor) || get("q") != Some(q) {
                    failures.push(format!("p={p}: {m:?}"));
                }
                if get("inequality_holds") != Some(1) {
                    failures.push(format!("p={p}: inequality fails"));
                }
            }
            Err(e) => failures.push(format!("p={p}: {e}")),
        }
    }
    // the printed inequalities, evaluated here in full
    let i3 = Pow::pow(&Integer::from(730), 3u32) < Pow::pow(&Integer::from(63), 7u32);
    let i5 = Pow::pow(&Integer::from(9_765_626), 5u32) < Pow::pow(&Integer::from(7775), 11u32);
    if !(i3 && i5) {
        failures.push("printed inequalities fail".to_string());
    }
    CriterionReport::new(
        7,
        "endgame constants",
        failures,
        "56, q=7 and 7744, q=11; both strict".to_string(),
    )
}

/// Criterion 8: the inequality chain for all odd prime pairs up to 97.
pub fn cassels_chain() -> CriterionReport {
    let start = Instant::now();
    let primes: Vec<u32> = (3..=97).filter(|&n| is_prime_u64(n.into())).collect();
    let mut failures = Vec::new();
    let mut pairs = 0;
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q != p) {
            pairs += 1;
            if cassels_bound_check(p, q) != Ok(true) {
                failures.push(format!("p={p} q={q}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(5) {
        failures.push(format!("took {}", secs(elapsed)));
    }
    CriterionReport::new(
        8,
        "Cassels chain",
        failures,
        format!("{pairs} pairs within 5s"),
    )
}

/// Criterion 9: sampled certificates re-verify and survive a JSON round
/// trip, and the known solution is certified under each case it meets.
pub fn certificate_integrity(samples: usize) -> CriterionReport {
    let mut failures = Vec::new();
    let pool: Vec<(CaseId, CatalanTuple)> = candidates(&desk_bounds(), Execution::default())
        .into_iter()
        .flat_map(|t| {
            let cases = classify(&t).expect("grid tuples have prime exponents");
            cases.into_iter().map(move |c| (c, t.clone()))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for (case, t) in pool.choose_multiple(&mut rng, samples) {
        if let Err(e) = check_certificate(*case, t) {
            failures.push(format!("case {case} on {t}: {e}"));
        }
    }
    let sol = CatalanTuple::catalan_solution();
    let cases = classify(&sol).expect("prime exponents");
    for case in &cases {
        match apply_rule(*case, &sol) {
            Ok(c) if c.verdict == Verdict::CatalanSolution && c.verify().is_ok() => {}
            other => failures.push(format!("(3, 2, 2, 3) under {case}: {other:?}")),
        }
    }
    let summary = format!(
        "{} certificates from {} (tuple, case) pairs re-verify; (3, 2, 2, 3) certified under {} cases",
        samples.min(pool.len()),
        pool.len(),
        cases.len()
    );
    CriterionReport::new(9, "certificate integrity", failures, summary)
}

fn check_certificate(case: CaseId, t: &CatalanTuple) -> Result<(), String> {
    let cert = apply_rule(case, t).map_err(|e| e.to_string())?;
    cert.verify().map_err(|e| e.to_string())?;
    let back = Certificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
    if back != cert {
        return Err("JSON round trip changed the certificate".to_string());
    }
    let again = apply_rule(case, &back.tuple).map_err(|e| e.to_string())?;
    if again != back {
        return Err("re-derivation differs".to_string());
    }
    back.verify().map_err(|e| e.to_string())?;
    if back.witness.is_empty() {
        return Err("empty witness".to_string());
    }
    Ok(())
}

/// Runs all nine checks in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        uniqueness_sweep(),
        pruned_equivalence(),
        lte_oracle(10_000),
        gaussian_identities(),
        pell_checks(),
        descent_suite(10_000),
        endgame_constants(),
        cassels_chain(),
        certificate_integrity(1_000),
    ]
}
