//! Bounded exhaustive search, plain and rule-pruned.
//!
//! The grid is walked as `(x, p)` pairs with `x^p <= power_cap`; for each
//! prime `q` the only possible `y` is `floor((x^p - 1)^(1/q))`, so no `y`
//! axis is materialised. Work is partitioned by `x`; each worker emits its
//! candidates in grid order and the merge keeps that order.

use std::collections::BTreeMap;

use num_traits::{One, Pow};

use super::certificate::cheap_exclusion;
use super::CaseId;
use crate::numtheory::{is_prime_u64, CatalanTuple, Integer};
use crate::par::{flat_map_range, fold_range, Execution};

/// Rules with a cheap obstruction, in the order the pruner tries them.
const PRUNING_RULES: [CaseId; 4] = [CaseId::I, CaseId::III, CaseId::IV, CaseId::V];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub x_max: u64,
    pub exp_max: u32,
    pub power_cap: Integer,
}

impl SearchBounds {
    pub fn new(x_max: u64, exp_max: u32, power_cap: impl Into<Integer>) -> Self {
        Self {
            x_max,
            exp_max,
            power_cap: power_cap.into(),
        }
    }

    fn primes(&self) -> Vec<u32> {
        (2..=self.exp_max)
            .filter(|&e| is_prime_u64(e.into()))
            .collect()
    }

    fn x_range(&self) -> std::ops::RangeInclusive<i64> {
        let hi = i64::try_from(self.x_max).expect("x_max fits in i64");
        2..=hi
    }
}

/// Candidates for one `x`, in `(p, q)` order.
fn candidates_for_x(x: u64, primes: &[u32], cap: &Integer) -> Vec<CatalanTuple> {
    let x_int = Integer::from(x);
    let two = Integer::from(2);
    let mut out = Vec::new();
    for &p in primes {
        let x_pow = Pow::pow(&x_int, p);
        if x_pow > *cap {
            break;
        }
        let target = &x_pow - Integer::one();
        for &q in primes {
            let y = target.nth_root(q);
            if y < two {
                // larger q only shrinks the root
                break;
            }
            out.push(CatalanTuple::new(x_int.clone(), p, y, q).expect("entries are >= 2"));
        }
    }
    out
}

/// Every candidate tuple of the grid, in grid order.
pub fn candidates(bounds: &SearchBounds, exec: Execution) -> Vec<CatalanTuple> {
    let primes = bounds.primes();
    flat_map_range(exec, bounds.x_range(), |x| {
        candidates_for_x(x as u64, &primes, &bounds.power_cap)
    })
}

fn is_solution_direct(t: &CatalanTuple) -> bool {
    // y was taken as the floor root of x^p - 1, so equality is the only test
    t.y_pow() == t.x_pow() - 1u32
}

/// All solutions on the grid, sorted.
pub fn search(bounds: &SearchBounds) -> Vec<CatalanTuple> {
    search_with(bounds, Execution::default())
}

pub fn search_with(bounds: &SearchBounds, exec: Execution) -> Vec<CatalanTuple> {
    let primes = bounds.primes();
    let mut sols = flat_map_range(exec, bounds.x_range(), |x| {
        candidates_for_x(x as u64, &primes, &bounds.power_cap)
            .into_iter()
            .filter(is_solution_direct)
            .collect()
    });
    sols.sort();
    sols
}

/// Outcome of a pruned sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrunedSearch {
    pub solutions: Vec<CatalanTuple>,
    /// Tuples eliminated by each rule before direct evaluation. Every case
    /// appears, with zero for rules that never fired.
    pub stats: BTreeMap<CaseId, u64>,
    /// Number of candidate tuples examined.
    pub candidates: u64,
    /// The eliminated tuples with the rule that eliminated them; only
    /// filled by [`search_pruned_detailed`].
    pub pruned: Vec<(CaseId, CatalanTuple)>,
}

impl PrunedSearch {
    fn empty() -> Self {
        Self {
            stats: CaseId::ALL.into_iter().map(|c| (c, 0)).collect(),
            ..Self::default()
        }
    }

    fn merge(mut self, other: Self) -> Self {
        if self.stats.is_empty() {
            return other;
        }
        if other.stats.is_empty() {
            return self;
        }
        self.solutions.extend(other.solutions);
        for (case, n) in other.stats {
            *self.stats.entry(case).or_default() += n;
        }
        self.candidates += other.candidates;
        self.pruned.extend(other.pruned);
        self
    }

    pub fn total_pruned(&self) -> u64 {
        self.stats.values().sum()
    }
}

/// Solutions plus per-rule pruning counts.
pub fn search_pruned(
    bounds: &SearchBounds,
    exec: Execution,
) -> (Vec<CatalanTuple>, BTreeMap<CaseId, u64>) {
    let r = run_pruned(bounds, exec, false);
    (r.solutions, r.stats)
}

/// Like [`search_pruned`] but also records every eliminated tuple.
pub fn search_pruned_detailed(bounds: &SearchBounds, exec: Execution) -> PrunedSearch {
    run_pruned(bounds, exec, true)
}

fn run_pruned(bounds: &SearchBounds, exec: Execution, keep_pruned: bool) -> PrunedSearch {
    let primes = bounds.primes();
    let mut result = fold_range(
        exec,
        bounds.x_range(),
        |acc: &mut PrunedSearch, x| {
            if acc.stats.is_empty() {
                *acc = PrunedSearch::empty();
            }
            for t in candidates_for_x(x as u64, &primes, &bounds.power_cap) {
                acc.candidates += 1;
                let rule = PRUNING_RULES
                    .into_iter()
                    .find(|&c| c.holds_for(&t) && cheap_exclusion(c, &t));
                match rule {
                    Some(case) => {
                        *acc.stats.get_mut(&case).expect("all cases present") += 1;
                        if keep_pruned {
                            acc.pruned.push((case, t));
                        }
                    }
                    None if is_solution_direct(&t) => acc.solutions.push(t),
                    None => {}
                }
            }
        },
        PrunedSearch::merge,
    );
    if result.stats.is_empty() {
        result = PrunedSearch::empty();
    }
    result.solutions.sort();
    result.pruned.sort();
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solution() -> Vec<CatalanTuple> {
        vec![CatalanTuple::catalan_solution()]
    }

    #[test]
    fn search_examples() {
        let b = SearchBounds::new(100, 7, 1_000_000_000_000_000u64);
        assert_eq!(search(&b), solution());
        assert_eq!(search(&SearchBounds::new(2, 3, 1000)), vec![]);
        assert_eq!(search(&SearchBounds::new(3, 3, 1000)), solution());
    }

    #[test]
    fn search_against_brute_force() {
        // every (x, p, y, q) with x, y <= 60, prime exponents <= 7, x^p <= 10^9
        let primes = [2u32, 3, 5, 7];
        let cap = Integer::from(1_000_000_000u64);
        let mut oracle = Vec::new();
        for x in 2u64..=60 {
            for &p in &primes {
                let xp = Pow::pow(&Integer::from(x), p);
                if xp > cap {
                    continue;
                }
                for y in 2u64..=40_000 {
                    for &q in &primes {
                        if Pow::pow(&Integer::from(y), q) + 1u32 == xp {
                            oracle.push(CatalanTuple::from_u64(x, p, y, q));
                        }
                    }
                }
            }
        }
        oracle.sort();
        assert_eq!(oracle, solution());
        assert_eq!(search(&SearchBounds::new(60, 7, cap)), oracle);
    }

    #[test]
    fn pruned_matches_plain() {
        for (x, e, cap) in [
            (100u64, 7u32, 10u64.pow(15)),
            (2, 3, 1000),
            (3, 3, 1000),
            (50, 13, 10u64.pow(12)),
        ] {
            let b = SearchBounds::new(x, e, cap);
            let (sols, stats) = search_pruned(&b, Execution::Sequential);
            assert_eq!(sols, search(&b));
            let grid = candidates(&b, Execution::Sequential).len() as u64;
            assert!(stats.values().sum::<u64>() <= grid);
            assert_eq!(stats.len(), 8);
        }
    }

    #[test]
    fn pruned_tuples_are_sound() {
        let b = SearchBounds::new(120, 13, 10u64.pow(15));
        let r = search_pruned_detailed(&b, Execution::Parallel);
        assert!(r.total_pruned() > 0);
        assert_eq!(r.pruned.len() as u64, r.total_pruned());
        for (case, t) in &r.pruned {
            assert!(case.holds_for(t));
            assert!(!t.is_solution(), "{case} pruned solution {t}");
        }
        assert!(!r
            .pruned
            .iter()
            .any(|(_, t)| *t == CatalanTuple::catalan_solution()));
    }

    #[test]
    fn mod8_rule_fires() {
        // x = 11 = 3 mod 8; (11^3 - 1)^(1/3) = 10 is even
        let b = SearchBounds::new(11, 3, 10_000);
        let (_, stats) = search_pruned(&b, Execution::Sequential);
        assert!(stats[&CaseId::IV] > 0);
    }

    #[test]
    fn execution_modes_agree() {
        let b = SearchBounds::new(150, 11, 10u64.pow(14));
        assert_eq!(
            search_with(&b, Execution::Sequential),
            search_with(&b, Execution::Parallel)
        );
        let seq = search_pruned_detailed(&b, Execution::Sequential);
        let par = search_pruned_detailed(&b, Execution::Parallel);
        assert_eq!(seq, par);
    }
}
