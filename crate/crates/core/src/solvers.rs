//! Minimum-subsidy envy-free outcome solvers.
//!
//! Three exact algorithms plus an independent brute-force oracle:
//!
//! * [`solve_equal`] — `m = n`: one maximum-weight perfect matching followed
//!   by the minimal envy-eliminating subsidy for the matched allocation.
//! * [`solve_subset`] — `m = n + c`: runs the `m = n` algorithm on every
//!   `C(m, n)` subset of houses and keeps the cheapest outcome. Refuses to
//!   run when the surplus `c` exceeds a cap instead of degrading silently;
//!   the general problem is intractable, and the cap makes that explicit.
//! * [`solve_identical`] — identical utility rows: sort houses by utility and
//!   scan the `m - n + 1` consecutive windows; the window cost is
//!   `n * u(top) - sum(window)`.
//! * [`brute_force`] — enumerates every allocation and prices each one with a
//!   Floyd-Warshall longest-path pass over its envy graph, a deliberately
//!   different route from the relaxation used by the solvers above.
//!
//! [`solve`] dispatches between them and never silently falls back to the
//! oracle.

use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;

use crate::envy::{build_envy_graph, min_subsidy_for_allocation};
use crate::error::{Error, Result};
use crate::matching::{max_weight_perfect_matching, WeightMatrix};
use crate::model::{Allocation, Instance, Outcome, Rational, SubsidyVector};

/// Default cap on `m - n` for subset enumeration.
pub const DEFAULT_SURPLUS_CAP: usize = 6;
/// Default cap on `C(m, n) * n!` for the brute-force oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// Which algorithm produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Equal,
    Subset,
    Identical,
    Oracle,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Equal => "equal",
            Algorithm::Subset => "subset",
            Algorithm::Identical => "identical",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Solver selection for [`solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Identical rows -> identical; `m = n` -> equal; otherwise subset.
    Auto,
    Equal,
    Subset,
    Identical,
    Oracle,
}

/// Tunables for [`solve_with`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub surplus_cap: usize,
    pub oracle_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            surplus_cap: DEFAULT_SURPLUS_CAP,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
        }
    }
}

/// A solved instance: the outcome, its exact total subsidy, and how much
/// work finding it took.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub total: Rational,
    pub algorithm: Algorithm,
    /// Subsets (or, for the oracle, allocations) examined.
    pub explored: u64,
    pub elapsed: Duration,
}

fn report(outcome: Outcome, algorithm: Algorithm, explored: u64, start: Instant) -> SolveReport {
    let total = outcome.total_subsidy();
    SolveReport {
        outcome,
        total,
        algorithm,
        explored,
        elapsed: start.elapsed(),
    }
}

/// Solves the restriction of `inst` to the given houses (`houses.len() == n`)
/// and returns the outcome in terms of the original house indices.
fn solve_on_houses(inst: &Instance, houses: &[usize]) -> (Outcome, Rational) {
    let n = inst.agents();
    let weights = WeightMatrix::new(
        (0..n)
            .map(|i| houses.iter().map(|&h| inst.utility(i, h).clone()).collect())
            .collect(),
    )
    .expect("restricted matrix is square by construction");
    let matching = max_weight_perfect_matching(&weights);

    let assignment: Vec<usize> = matching.assignment.iter().map(|&t| houses[t]).collect();
    let alloc = Allocation::new(assignment).expect("matching yields distinct houses");
    let subsidy = min_subsidy_for_allocation(inst, &alloc)
        .expect("a maximum-weight matching is always envy-freeable");
    let outcome = Outcome::new(alloc, subsidy).expect("minimal subsidies are nonnegative");
    let total = outcome.total_subsidy();
    (outcome, total)
}

/// Minimum-subsidy envy-free outcome for `m = n`.
pub fn solve_equal(inst: &Instance) -> Result<SolveReport> {
    let start = Instant::now();
    let (n, m) = (inst.agents(), inst.houses());
    if n != m {
        return Err(Error::NotSquare {
            agents: n,
            houses: m,
        });
    }
    let houses: Vec<usize> = (0..m).collect();
    let (outcome, _) = solve_on_houses(inst, &houses);
    Ok(report(outcome, Algorithm::Equal, 1, start))
}

/// Minimum-subsidy envy-free outcome for `m >= n` by enumerating every
/// subset of `n` houses in lexicographic order and solving each `m = n`
/// restriction. Stops early once a zero-subsidy outcome appears, since zero
/// is a global lower bound.
///
/// `cap` bounds the surplus `m - n` (default [`DEFAULT_SURPLUS_CAP`]).
pub fn solve_subset(inst: &Instance, cap: Option<usize>) -> Result<SolveReport> {
    let start = Instant::now();
    let (n, m) = (inst.agents(), inst.houses());
    let cap = cap.unwrap_or(DEFAULT_SURPLUS_CAP);
    let surplus = m - n;
    if surplus > cap {
        return Err(Error::SurplusCapExceeded {
            surplus,
            cap,
            subsets: binomial(m, n),
        });
    }

    let mut explored = 0u64;
    let mut best: Option<(Outcome, Rational)> = None;
    for houses in (0..m).combinations(n) {
        explored += 1;
        let (outcome, total) = solve_on_houses(inst, &houses);
        let improved = match &best {
            None => true,
            Some((_, best_total)) => total < *best_total,
        };
        if improved {
            let done = total.is_zero();
            best = Some((outcome, total));
            if done {
                break;
            }
        }
    }
    let (outcome, _) = best.expect("at least one subset exists since m >= n");
    Ok(report(outcome, Algorithm::Subset, explored, start))
}

/// Minimum-subsidy envy-free outcome when all agents share one utility row.
///
/// Houses are sorted by utility (stable, so ties keep their original order);
/// among all n-subsets, a consecutive window of the sorted order minimizes
/// the cost `n * u(top) - sum(window)`, so only the `m - n + 1` windows are
/// scanned. Window houses go to agents `0..n` in ascending utility order and
/// each agent is topped up to the window maximum.
pub fn solve_identical(inst: &Instance) -> Result<SolveReport> {
    let start = Instant::now();
    if let Some(agent) = (1..inst.agents()).find(|&i| inst.utilities()[i] != inst.utilities()[0]) {
        return Err(Error::NotIdentical { agent });
    }
    let (n, m) = (inst.agents(), inst.houses());
    let utility = |house: usize| inst.utility(0, house);

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| utility(a).cmp(utility(b)));

    let mut prefix = Vec::with_capacity(m + 1);
    prefix.push(Rational::zero());
    for &h in &order {
        prefix.push(prefix.last().unwrap() + utility(h));
    }

    let agents = Rational::from_integer(n as i64);
    let mut best_start = 0usize;
    let mut best_cost: Option<Rational> = None;
    for window in 0..=(m - n) {
        let top = utility(order[window + n - 1]);
        let window_sum = &prefix[window + n] - &prefix[window];
        let cost = &agents * top - window_sum;
        if best_cost.as_ref().is_none_or(|b| cost < *b) {
            best_cost = Some(cost);
            best_start = window;
        }
    }

    let window = &order[best_start..best_start + n];
    let top = utility(window[n - 1]).clone();
    let alloc = Allocation::new(window.to_vec()).expect("sorted indices are distinct");
    let subsidy: SubsidyVector = window.iter().map(|&h| &top - utility(h)).collect();
    let outcome = Outcome::new(alloc, subsidy).expect("window top dominates its houses");
    Ok(report(
        outcome,
        Algorithm::Identical,
        (m - n + 1) as u64,
        start,
    ))
}

/// Independent oracle: enumerates every allocation (subsets in lexicographic
/// order, then permutations in lexicographic order) and keeps the first one
/// achieving the minimum total subsidy.
///
/// Each allocation is priced by an all-pairs longest-path computation on its
/// envy graph (Floyd-Warshall triple loop, positive cycle iff some diagonal
/// entry turns positive) rather than by the solvers' relaxation, so the two
/// routes check each other.
pub fn brute_force(inst: &Instance) -> Result<SolveReport> {
    brute_force_with_budget(inst, DEFAULT_ORACLE_BUDGET)
}

pub fn brute_force_with_budget(inst: &Instance, budget: u64) -> Result<SolveReport> {
    let start = Instant::now();
    let (n, m) = (inst.agents(), inst.houses());
    let required = binomial(m, n) * factorial(n);
    if required > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let mut explored = 0u64;
    let mut best: Option<(Outcome, Rational)> = None;
    for houses in (0..m).combinations(n) {
        for assignment in houses.iter().copied().permutations(n) {
            explored += 1;
            let alloc = Allocation::new(assignment).expect("permutations are distinct");
            if let Some(subsidy) = longest_path_subsidy(inst, &alloc) {
                let total: Rational = subsidy.iter().sum();
                let improved = match &best {
                    None => true,
                    Some((_, best_total)) => total < *best_total,
                };
                if improved {
                    let outcome =
                        Outcome::new(alloc, subsidy).expect("longest paths are floored at zero");
                    best = Some((outcome, total));
                }
            }
        }
    }
    let (outcome, _) = best.expect("every instance admits an envy-freeable allocation");
    Ok(report(outcome, Algorithm::Oracle, explored, start))
}

/// Floyd-Warshall longest paths over the envy graph of `alloc`; `None` when a
/// positive-weight cycle (positive diagonal entry) makes the allocation
/// unpriceable.
#[allow(clippy::needless_range_loop)] // index loops keep this textbook-shaped
fn longest_path_subsidy(inst: &Instance, alloc: &Allocation) -> Option<SubsidyVector> {
    let graph = build_envy_graph(inst, alloc).expect("enumerated allocations fit the instance");
    let n = inst.agents();
    let mut dist: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| graph.weight(i, j).clone()).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            let through = dist[i][k].clone();
            for j in 0..n {
                let candidate = &through + &dist[k][j];
                if candidate > dist[i][j] {
                    dist[i][j] = candidate;
                }
            }
        }
    }
    if (0..n).any(|i| dist[i][i].is_positive()) {
        return None;
    }
    Some(
        (0..n)
            .map(|i| {
                let mut best = Rational::zero();
                for j in 0..n {
                    if dist[i][j] > best {
                        best = dist[i][j].clone();
                    }
                }
                best
            })
            .collect(),
    )
}

/// Front door: dispatches to the matching strategy.
pub fn solve(inst: &Instance, strategy: Strategy) -> Result<SolveReport> {
    solve_with(inst, strategy, &SolveOptions::default())
}

pub fn solve_with(
    inst: &Instance,
    strategy: Strategy,
    options: &SolveOptions,
) -> Result<SolveReport> {
    match strategy {
        Strategy::Auto => {
            if inst.has_identical_rows() {
                solve_identical(inst)
            } else if inst.agents() == inst.houses() {
                solve_equal(inst)
            } else {
                solve_subset(inst, Some(options.surplus_cap))
            }
        }
        Strategy::Equal => solve_equal(inst),
        Strategy::Subset => solve_subset(inst, Some(options.surplus_cap)),
        Strategy::Identical => solve_identical(inst),
        Strategy::Oracle => brute_force_with_budget(inst, options.oracle_budget),
    }
}

fn binomial(m: usize, n: usize) -> BigUint {
    let mut result = BigUint::from(1u32);
    for i in 0..n.min(m - n) {
        result = result * BigUint::from(m - i) / BigUint::from(i + 1);
    }
    result
}

fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_envy_free;

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn instance(rows: &[&[i64]]) -> Instance {
        Instance::new(
            rows.iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn equal_solves_the_shared_values_instance() {
        let inst = instance(&[&[200, 100], &[200, 100]]);
        let report = solve_equal(&inst).unwrap();
        assert_eq!(report.total, rat(100));
        assert!(is_envy_free(&inst, &report.outcome).unwrap());
        // Whoever holds the cheaper house receives the whole subsidy.
        let holder = (0..2)
            .find(|&i| report.outcome.allocation().house_of(i) == 1)
            .unwrap();
        assert_eq!(report.outcome.subsidy()[holder], rat(100));
    }

    #[test]
    fn equal_finds_the_zero_subsidy_swap() {
        let inst = instance(&[&[200, 200], &[200, 100]]);
        let report = solve_equal(&inst).unwrap();
        assert_eq!(report.outcome.allocation().as_slice(), &[1, 0]);
        assert_eq!(report.total, rat(0));
        let oracle = brute_force(&inst).unwrap();
        assert_eq!(oracle.total, rat(0));
    }

    #[test]
    fn equal_matches_the_fifty_zero_example() {
        let inst = instance(&[&[25, 75], &[0, 100]]);
        let report = solve_equal(&inst).unwrap();
        assert_eq!(report.outcome.allocation().as_slice(), &[0, 1]);
        assert_eq!(report.outcome.subsidy(), &[rat(50), rat(0)]);
        assert_eq!(report.total, rat(50));
    }

    #[test]
    fn equal_rejects_rectangular_instances() {
        let inst = instance(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(
            solve_equal(&inst),
            Err(Error::NotSquare {
                agents: 2,
                houses: 3
            })
        ));
    }

    #[test]
    fn subset_on_square_instance_matches_equal() {
        let inst = instance(&[&[25, 75], &[0, 100]]);
        let equal = solve_equal(&inst).unwrap();
        let subset = solve_subset(&inst, None).unwrap();
        assert_eq!(subset.explored, 1);
        assert_eq!(subset.total, equal.total);
        assert_eq!(subset.outcome, equal.outcome);
    }

    #[test]
    fn subset_single_agent_reaches_zero() {
        let inst = instance(&[&[5, 7, 6]]);
        let report = solve_subset(&inst, None).unwrap();
        assert_eq!(report.total, rat(0));
        assert!(report.explored <= 3);
    }

    #[test]
    fn subset_two_agents_three_houses() {
        let inst = instance(&[&[10, 10, 0], &[10, 0, 10]]);
        let report = solve_subset(&inst, None).unwrap();
        assert_eq!(report.total, rat(0));
        let oracle = brute_force(&inst).unwrap();
        assert_eq!(oracle.total, rat(0));
        assert!(is_envy_free(&inst, &report.outcome).unwrap());
    }

    #[test]
    fn subset_refuses_past_the_cap() {
        let inst = instance(&[&[0; 12], &[0; 12]]);
        let err = solve_subset(&inst, None).unwrap_err();
        match err {
            Error::SurplusCapExceeded {
                surplus,
                cap,
                subsets,
            } => {
                assert_eq!(surplus, 10);
                assert_eq!(cap, DEFAULT_SURPLUS_CAP);
                assert_eq!(subsets, BigUint::from(66u32)); // C(12, 2)
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(solve_subset(&inst, Some(10)).is_ok());
    }

    #[test]
    fn identical_window_costs() {
        let inst = instance(&[&[1, 2, 3, 4], &[1, 2, 3, 4]]);
        let report = solve_identical(&inst).unwrap();
        assert_eq!(report.total, rat(1));
        assert_eq!(report.explored, 3);
        assert!(is_envy_free(&inst, &report.outcome).unwrap());

        let inst = instance(&[&[1, 5, 6], &[1, 5, 6]]);
        let report = solve_identical(&inst).unwrap();
        assert_eq!(report.total, rat(1));
        // The cheap window is {5, 6}: agent 0 takes the 5, agent 1 the 6.
        assert_eq!(report.outcome.allocation().as_slice(), &[1, 2]);
        assert_eq!(report.outcome.subsidy(), &[rat(1), rat(0)]);
    }

    #[test]
    fn identical_equal_utilities_cost_nothing() {
        let inst = instance(&[&[4, 4, 4], &[4, 4, 4], &[4, 4, 4]]);
        let report = solve_identical(&inst).unwrap();
        assert_eq!(report.total, rat(0));
    }

    #[test]
    fn identical_rejects_differing_rows() {
        let inst = instance(&[&[1, 2], &[2, 1]]);
        assert!(matches!(
            solve_identical(&inst),
            Err(Error::NotIdentical { agent: 1 })
        ));
    }

    #[test]
    fn oracle_agrees_with_the_worked_examples() {
        let intro = instance(&[&[200, 100], &[200, 100]]);
        assert_eq!(brute_force(&intro).unwrap().total, rat(100));

        let strategy = instance(&[&[25, 75], &[0, 100]]);
        let report = brute_force(&strategy).unwrap();
        assert_eq!(report.outcome.allocation().as_slice(), &[0, 1]);
        assert_eq!(report.total, rat(50));

        let free = instance(&[&[10, 0], &[0, 10]]);
        assert_eq!(brute_force(&free).unwrap().total, rat(0));
    }

    #[test]
    fn oracle_respects_its_budget() {
        let inst = instance(&[&[0; 12], &[0; 12], &[0; 12]]);
        assert!(matches!(
            brute_force_with_budget(&inst, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn auto_dispatch() {
        let identical = instance(&[&[1, 2, 3], &[1, 2, 3]]);
        assert_eq!(
            solve(&identical, Strategy::Auto).unwrap().algorithm,
            Algorithm::Identical
        );

        let square = instance(&[&[1, 2], &[2, 1]]);
        assert_eq!(
            solve(&square, Strategy::Auto).unwrap().algorithm,
            Algorithm::Equal
        );

        let wide = instance(&[&[0; 12], &[1; 12]]);
        assert!(matches!(
            solve(&wide, Strategy::Auto),
            Err(Error::SurplusCapExceeded { .. })
        ));
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(6, 4), BigUint::from(15u32));
        assert_eq!(binomial(4, 4), BigUint::from(1u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(factorial(4), BigUint::from(24u32));
        assert_eq!(factorial(0), BigUint::from(1u32));
    }
}
