//! Problem instances, allocations, outcomes and the envy-freeness predicate.
//!
//! An instance assigns every agent a nonnegative utility for every house;
//! `n <= m` always holds. An outcome is an allocation of `n` distinct houses
//! together with a nonnegative subsidy vector. All checks are exact.

mod rational;

pub use rational::Rational;

use crate::error::{Error, Result};

/// One subsidy entry per agent, all nonnegative.
pub type SubsidyVector = Vec<Rational>;

/// A house allocation problem: `n` agents, `m >= n` houses, and an
/// `n x m` matrix of nonnegative utilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    utilities: Vec<Vec<Rational>>,
    agent_labels: Option<Vec<String>>,
    house_labels: Option<Vec<String>>,
}

impl Instance {
    /// Validates raw utility data and builds a canonical instance.
    pub fn new(utilities: Vec<Vec<Rational>>) -> Result<Self> {
        let n = utilities.len();
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        let m = utilities[0].len();
        for (agent, row) in utilities.iter().enumerate() {
            if row.len() != m {
                return Err(Error::RaggedMatrix {
                    row: agent,
                    expected: m,
                    got: row.len(),
                });
            }
            for (house, value) in row.iter().enumerate() {
                if value.is_negative() {
                    return Err(Error::NegativeUtility { agent, house });
                }
            }
        }
        if n > m {
            return Err(Error::AgentsExceedHouses {
                agents: n,
                houses: m,
            });
        }
        Ok(Instance {
            utilities,
            agent_labels: None,
            house_labels: None,
        })
    }

    /// Attaches optional display labels. Labels carry no semantics.
    pub fn with_labels(
        mut self,
        agent_labels: Option<Vec<String>>,
        house_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(labels) = &agent_labels {
            if labels.len() != self.agents() {
                return Err(Error::DimensionMismatch {
                    what: "agent labels",
                    expected: self.agents(),
                    got: labels.len(),
                });
            }
        }
        if let Some(labels) = &house_labels {
            if labels.len() != self.houses() {
                return Err(Error::DimensionMismatch {
                    what: "house labels",
                    expected: self.houses(),
                    got: labels.len(),
                });
            }
        }
        self.agent_labels = agent_labels;
        self.house_labels = house_labels;
        Ok(self)
    }

    /// Number of agents `n`.
    pub fn agents(&self) -> usize {
        self.utilities.len()
    }

    /// Number of houses `m`.
    pub fn houses(&self) -> usize {
        self.utilities[0].len()
    }

    pub fn utility(&self, agent: usize, house: usize) -> &Rational {
        &self.utilities[agent][house]
    }

    pub fn utilities(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    pub fn agent_label(&self, agent: usize) -> Option<&str> {
        self.agent_labels.as_ref().map(|l| l[agent].as_str())
    }

    pub fn house_label(&self, house: usize) -> Option<&str> {
        self.house_labels.as_ref().map(|l| l[house].as_str())
    }

    pub fn house_labels(&self) -> Option<&[String]> {
        self.house_labels.as_deref()
    }

    /// True iff every agent has the same utility row.
    pub fn has_identical_rows(&self) -> bool {
        self.utilities[1..]
            .iter()
            .all(|row| *row == self.utilities[0])
    }

    /// Shifts every utility of agent `i` by `shifts[i] >= 0`.
    ///
    /// Shifting rows by per-agent constants never changes which outcomes are
    /// envy-free, so it can be used to normalize utility sums across agents.
    pub fn normalize(&self, shifts: &[Rational]) -> Result<Instance> {
        if shifts.len() != self.agents() {
            return Err(Error::DimensionMismatch {
                what: "shift vector",
                expected: self.agents(),
                got: shifts.len(),
            });
        }
        if let Some(agent) = shifts.iter().position(Rational::is_negative) {
            return Err(Error::NegativeShift { agent });
        }
        let utilities = self
            .utilities
            .iter()
            .zip(shifts)
            .map(|(row, shift)| row.iter().map(|u| u + shift).collect())
            .collect();
        Ok(Instance {
            utilities,
            agent_labels: self.agent_labels.clone(),
            house_labels: self.house_labels.clone(),
        })
    }
}

/// A list of `n` pairwise-distinct house indices; agent `i` receives
/// house `assignment[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocation(Vec<usize>);

impl Allocation {
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(assignment.len());
        for &house in &assignment {
            if !seen.insert(house) {
                return Err(Error::DuplicateHouse { house });
            }
        }
        Ok(Allocation(assignment))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// House allocated to `agent`.
    pub fn house_of(&self, agent: usize) -> usize {
        self.0[agent]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Checks that this allocation fits `inst` (length `n`, indices `< m`).
    pub fn check_against(&self, inst: &Instance) -> Result<()> {
        if self.len() != inst.agents() {
            return Err(Error::DimensionMismatch {
                what: "allocation length",
                expected: inst.agents(),
                got: self.len(),
            });
        }
        for &house in &self.0 {
            if house >= inst.houses() {
                return Err(Error::HouseOutOfRange {
                    house,
                    houses: inst.houses(),
                });
            }
        }
        Ok(())
    }
}

/// An allocation together with a nonnegative subsidy vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    allocation: Allocation,
    subsidy: SubsidyVector,
}

impl Outcome {
    pub fn new(allocation: Allocation, subsidy: SubsidyVector) -> Result<Self> {
        if subsidy.len() != allocation.len() {
            return Err(Error::DimensionMismatch {
                what: "subsidy vector",
                expected: allocation.len(),
                got: subsidy.len(),
            });
        }
        if let Some(agent) = subsidy.iter().position(Rational::is_negative) {
            return Err(Error::NegativeSubsidy { agent });
        }
        Ok(Outcome {
            allocation,
            subsidy,
        })
    }

    pub fn allocation(&self) -> &Allocation {
        &self.allocation
    }

    pub fn subsidy(&self) -> &[Rational] {
        &self.subsidy
    }

    /// Exact sum of all subsidy entries.
    pub fn total_subsidy(&self) -> Rational {
        self.subsidy.iter().sum()
    }
}

/// The first envy inequality violated by an outcome, if any.
///
/// Agent `envious` strictly prefers `envied`'s bundle:
/// `own_value < other_value` where `own_value = u_i(a_i) + s_i` and
/// `other_value = u_i(a_j) + s_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvyViolation {
    pub envious: usize,
    pub envied: usize,
    pub own_value: Rational,
    pub other_value: Rational,
}

/// Scans agent pairs in ascending `(i, j)` order and reports the first
/// violated inequality `u_i(a_i) + s_i >= u_i(a_j) + s_j`, or `None` if the
/// outcome is envy-free.
pub fn first_envy_violation(inst: &Instance, outcome: &Outcome) -> Result<Option<EnvyViolation>> {
    outcome.allocation().check_against(inst)?;
    let n = inst.agents();
    let alloc = outcome.allocation();
    let subsidy = outcome.subsidy();
    for i in 0..n {
        let own_value = inst.utility(i, alloc.house_of(i)) + &subsidy[i];
        for (j, s) in subsidy.iter().enumerate() {
            if i == j {
                continue;
            }
            let other_value = inst.utility(i, alloc.house_of(j)) + s;
            if own_value < other_value {
                return Ok(Some(EnvyViolation {
                    envious: i,
                    envied: j,
                    own_value,
                    other_value,
                }));
            }
        }
    }
    Ok(None)
}

/// True iff `u_i(a_i) + s_i >= u_i(a_j) + s_j` for every ordered agent pair,
/// compared exactly.
pub fn is_envy_free(inst: &Instance, outcome: &Outcome) -> Result<bool> {
    Ok(first_envy_violation(inst, outcome)?.is_none())
}
