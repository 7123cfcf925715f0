//! Envy graphs, envy-freeability, and minimal envy-eliminating subsidies.
//!
//! For a fixed allocation `a`, the envy graph is the complete weighted
//! digraph on agents with arc weight `w[i][j] = u_i(a_j) - u_i(a_i)`. The
//! allocation admits an envy-eliminating subsidy vector iff the graph has no
//! directed cycle of strictly positive total weight, and in that case the
//! pointwise-minimal such vector is `s_i = max(0, L_i)` where `L_i` is the
//! maximum total weight of any directed path starting at `i`.
//!
//! Both questions are answered by one exact relaxation
//! `s_i <- max(0, max_j (w[i][j] + s_j))` run from `s = 0`: it reaches its
//! fixpoint within `n` sweeps exactly when no positive cycle exists.

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Rational, SubsidyVector};

/// Complete weighted digraph on agents induced by an allocation;
/// `weight[i][j] = u_i(a_j) - u_i(a_i)`, so the diagonal is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvyGraph {
    weight: Vec<Vec<Rational>>,
}

impl EnvyGraph {
    pub fn agents(&self) -> usize {
        self.weight.len()
    }

    /// Arc weight from `envious` to `envied`.
    pub fn weight(&self, envious: usize, envied: usize) -> &Rational {
        &self.weight[envious][envied]
    }
}

/// Builds the envy graph of `alloc` under `inst`.
pub fn build_envy_graph(inst: &Instance, alloc: &Allocation) -> Result<EnvyGraph> {
    alloc.check_against(inst)?;
    let n = inst.agents();
    let weight = (0..n)
        .map(|i| {
            let own = inst.utility(i, alloc.house_of(i));
            (0..n)
                .map(|j| inst.utility(i, alloc.house_of(j)) - own)
                .collect()
        })
        .collect();
    Ok(EnvyGraph { weight })
}

/// Relaxes `s_i <- max(0, max_j (w[i][j] + s_j))` in ascending agent order
/// until a full sweep changes nothing. A sweep without change certifies a
/// fixpoint, which exists iff the graph has no positive-weight cycle; the
/// fixpoint is reached within `n` sweeps, so a change in sweep `n` proves a
/// positive cycle and `None` is returned.
fn relax_min_subsidy(graph: &EnvyGraph) -> Option<SubsidyVector> {
    let n = graph.agents();
    let mut subsidy = vec![Rational::zero(); n];
    for _ in 0..n {
        let mut changed = false;
        for i in 0..n {
            let mut best = Rational::zero();
            for (j, s) in subsidy.iter().enumerate() {
                if i == j {
                    continue;
                }
                let candidate = graph.weight(i, j) + s;
                if candidate > best {
                    best = candidate;
                }
            }
            if best != subsidy[i] {
                subsidy[i] = best;
                changed = true;
            }
        }
        if !changed {
            return Some(subsidy);
        }
    }
    None
}

/// True iff some nonnegative subsidy vector makes `alloc` envy-free,
/// i.e. the envy graph has no positive-weight cycle.
pub fn is_envy_freeable(inst: &Instance, alloc: &Allocation) -> Result<bool> {
    let graph = build_envy_graph(inst, alloc)?;
    Ok(relax_min_subsidy(&graph).is_some())
}

/// Computes the unique pointwise-minimal envy-eliminating subsidy vector
/// for `alloc`, or `NotEnvyFreeable` if none exists.
pub fn min_subsidy_for_allocation(inst: &Instance, alloc: &Allocation) -> Result<SubsidyVector> {
    let graph = build_envy_graph(inst, alloc)?;
    relax_min_subsidy(&graph).ok_or(Error::NotEnvyFreeable)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_envy_free, Outcome};

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

    fn alloc(assignment: &[usize]) -> Allocation {
        Allocation::new(assignment.to_vec()).unwrap()
    }

    // u1 = (200, 200), u2 = (200, 100): allocation (h1, h2) cannot be made
    // envy-free because s_1 >= s_2 >= 100 + s_1 has no solution.
    fn cyclic_instance() -> Instance {
        instance(&[&[200, 200], &[200, 100]])
    }

    #[test]
    fn envy_graph_weights() {
        let graph = build_envy_graph(&cyclic_instance(), &alloc(&[0, 1])).unwrap();
        assert_eq!(*graph.weight(0, 1), rat(0));
        assert_eq!(*graph.weight(1, 0), rat(100));
        assert_eq!(*graph.weight(0, 0), rat(0));
        assert_eq!(*graph.weight(1, 1), rat(0));
    }

    #[test]
    fn envy_graph_with_negative_weight() {
        let inst = instance(&[&[25, 75], &[0, 100]]);
        let graph = build_envy_graph(&inst, &alloc(&[0, 1])).unwrap();
        assert_eq!(*graph.weight(0, 1), rat(50));
        assert_eq!(*graph.weight(1, 0), rat(-100));
    }

    #[test]
    fn envy_graph_for_identical_utilities() {
        // With one shared utility row the two off-diagonal weights are
        // opposite differences of the same values.
        let inst = instance(&[&[200, 100], &[200, 100]]);
        let graph = build_envy_graph(&inst, &alloc(&[0, 1])).unwrap();
        assert_eq!(*graph.weight(0, 1), rat(-100));
        assert_eq!(*graph.weight(1, 0), rat(100));
    }

    #[test]
    fn positive_cycle_is_not_envy_freeable() {
        let inst = cyclic_instance();
        assert!(!is_envy_freeable(&inst, &alloc(&[0, 1])).unwrap());
        // Swapping the houses gives the welfare-maximizing allocation
        // (400 >= 300), which is envy-freeable.
        assert!(is_envy_freeable(&inst, &alloc(&[1, 0])).unwrap());
        assert!(matches!(
            min_subsidy_for_allocation(&inst, &alloc(&[0, 1])),
            Err(Error::NotEnvyFreeable)
        ));
    }

    #[test]
    fn single_agent_is_envy_freeable() {
        let inst = instance(&[&[3, 1]]);
        assert!(is_envy_freeable(&inst, &alloc(&[1])).unwrap());
        assert_eq!(
            min_subsidy_for_allocation(&inst, &alloc(&[1])).unwrap(),
            vec![rat(0)]
        );
    }

    #[test]
    fn minimal_subsidy_for_shared_values() {
        let inst = instance(&[&[200, 100], &[200, 100]]);
        let subsidy = min_subsidy_for_allocation(&inst, &alloc(&[0, 1])).unwrap();
        assert_eq!(subsidy, vec![rat(0), rat(100)]);
    }

    #[test]
    fn minimal_subsidy_fifty_zero() {
        let inst = instance(&[&[25, 75], &[0, 100]]);
        let subsidy = min_subsidy_for_allocation(&inst, &alloc(&[0, 1])).unwrap();
        assert_eq!(subsidy, vec![rat(50), rat(0)]);
    }

    #[test]
    fn returned_vector_is_envy_eliminating() {
        let inst = instance(&[&[25, 75], &[0, 100]]);
        let a = alloc(&[0, 1]);
        let subsidy = min_subsidy_for_allocation(&inst, &a).unwrap();
        let outcome = Outcome::new(a, subsidy).unwrap();
        assert!(is_envy_free(&inst, &outcome).unwrap());
    }

    #[test]
    fn zero_subsidy_when_already_envy_free() {
        let inst = instance(&[&[10, 0], &[0, 10]]);
        let subsidy = min_subsidy_for_allocation(&inst, &alloc(&[0, 1])).unwrap();
        assert_eq!(subsidy, vec![rat(0), rat(0)]);
    }

    #[test]
    fn rejects_mismatched_allocation() {
        let inst = instance(&[&[1, 2], &[3, 4]]);
        assert!(build_envy_graph(&inst, &alloc(&[0])).is_err());
        assert!(build_envy_graph(&inst, &alloc(&[0, 5])).is_err());
    }
}
