//! On-disk formats: JSON instance and outcome files, the DIMACS-like graph
//! format, and the role map written next to reduction instances.
//!
//! Rationals are serialized as strings `"p"` or `"p/q"` in lowest terms;
//! plain JSON integers are also accepted on input. JSON numbers cannot carry
//! exact rationals, strings can.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use fairhouse::model::{Allocation, Instance, Outcome, Rational};
use fairhouse::reduction::{AgentRole, Graph, HouseRole, ReductionInstance};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

impl From<fairhouse::Error> for FormatError {
    fn from(err: fairhouse::Error) -> Self {
        FormatError::Invalid(err.to_string())
    }
}

fn invalid(message: impl Into<String>) -> FormatError {
    FormatError::Invalid(message.into())
}

/// `{ "agents": n, "houses": [labels], "utilities": [[entries]] }` where each
/// entry is an integer or a string `"p/q"` with `q > 0`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub agents: usize,
    pub houses: Vec<String>,
    pub utilities: Vec<Vec<UtilityEntry>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UtilityEntry {
    Integer(i64),
    Literal(String),
}

impl UtilityEntry {
    fn to_rational(&self) -> Result<Rational, FormatError> {
        match self {
            UtilityEntry::Integer(v) => Ok(Rational::from_integer(*v)),
            UtilityEntry::Literal(s) => Ok(s.parse()?),
        }
    }
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let houses = match inst.house_labels() {
            Some(labels) => labels.to_vec(),
            None => (1..=inst.houses()).map(|j| format!("h{j}")).collect(),
        };
        InstanceFile {
            agents: inst.agents(),
            houses,
            utilities: inst
                .utilities()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|u| UtilityEntry::Literal(u.to_string()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn into_instance(self) -> Result<Instance, FormatError> {
        if self.utilities.len() != self.agents {
            return Err(invalid(format!(
                "\"agents\" is {} but {} utility rows are given",
                self.agents,
                self.utilities.len()
            )));
        }
        for (i, row) in self.utilities.iter().enumerate() {
            if row.len() != self.houses.len() {
                return Err(invalid(format!(
                    "utility row {i} has {} entries but {} houses are declared",
                    row.len(),
                    self.houses.len()
                )));
            }
        }
        let rows = self
            .utilities
            .iter()
            .map(|row| row.iter().map(UtilityEntry::to_rational).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        Ok(Instance::new(rows)?.with_labels(None, Some(self.houses))?)
    }
}

/// `{ "allocation": [...], "subsidy": ["p/q", ...], "total": "p/q",
/// "algorithm": tag }`. The file must be self-consistent: distinct
/// allocation entries and `total` equal to the subsidy sum.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeFile {
    pub allocation: Vec<usize>,
    pub subsidy: Vec<String>,
    pub total: String,
    pub algorithm: String,
}

impl OutcomeFile {
    pub fn from_outcome(outcome: &Outcome, algorithm: &str) -> Self {
        OutcomeFile {
            allocation: outcome.allocation().as_slice().to_vec(),
            subsidy: outcome.subsidy().iter().map(Rational::to_string).collect(),
            total: outcome.total_subsidy().to_string(),
            algorithm: algorithm.to_string(),
        }
    }

    pub fn into_outcome(self) -> Result<(Outcome, String), FormatError> {
        let subsidy = self
            .subsidy
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect::<Result<Vec<_>, _>>()?;
        let total: Rational = self.total.parse()?;
        let outcome = Outcome::new(Allocation::new(self.allocation)?, subsidy)?;
        let sum = outcome.total_subsidy();
        if sum != total {
            return Err(invalid(format!(
                "\"total\" is {total} but the subsidy entries sum to {sum}"
            )));
        }
        Ok((outcome, self.algorithm))
    }
}

/// Sidecar written next to reduction instances, mapping agents and houses
/// back to the source graph. Vertices are 1-indexed as in the graph file.
#[derive(Debug, Serialize, Deserialize)]
pub struct RoleMapFile {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
    pub k: usize,
    pub agent_roles: Vec<RoleEntry>,
    pub house_roles: Vec<RoleEntry>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum RoleEntry {
    Special { copy: usize },
    Vertex { vertex: usize, copy: usize },
    Edge { u: usize, v: usize },
    Good { vertex: usize, copy: usize },
    Bad { vertex: usize, copy: usize },
}

impl RoleMapFile {
    pub fn from_reduction(r: &ReductionInstance) -> Self {
        RoleMapFile {
            vertex_count: r.graph().vertex_count(),
            edges: r
                .graph()
                .edges()
                .iter()
                .map(|&(u, v)| [u + 1, v + 1])
                .collect(),
            k: r.k(),
            agent_roles: r
                .agent_roles()
                .iter()
                .map(|role| match *role {
                    AgentRole::Special { copy } => RoleEntry::Special { copy },
                    AgentRole::Vertex { vertex, copy } => RoleEntry::Vertex {
                        vertex: vertex + 1,
                        copy,
                    },
                    AgentRole::Edge { u, v } => RoleEntry::Edge { u: u + 1, v: v + 1 },
                })
                .collect(),
            house_roles: r
                .house_roles()
                .iter()
                .map(|role| match *role {
                    HouseRole::Special { copy } => RoleEntry::Special { copy },
                    HouseRole::Good { vertex, copy } => RoleEntry::Good {
                        vertex: vertex + 1,
                        copy,
                    },
                    HouseRole::Bad { vertex, copy } => RoleEntry::Bad {
                        vertex: vertex + 1,
                        copy,
                    },
                })
                .collect(),
        }
    }
}

/// Parses the graph format: a header `p [name] <vertices> <edges>`, one
/// `e <u> <v>` line per edge with 1-indexed endpoints, and `c` comment lines.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = BTreeSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let context = |msg: String| invalid(format!("line {}: {msg}", lineno + 1));
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(context("duplicate problem line".into()));
                }
                // Accept both `p V E` and the DIMACS-style `p edge V E`.
                let numbers: Vec<&str> = match tokens.len() {
                    3 => tokens[1..].to_vec(),
                    4 => tokens[2..].to_vec(),
                    _ => return Err(context("problem line needs vertex and edge counts".into())),
                };
                let vertices = numbers[0]
                    .parse()
                    .map_err(|_| context(format!("bad vertex count {:?}", numbers[0])))?;
                let edge_count = numbers[1]
                    .parse()
                    .map_err(|_| context(format!("bad edge count {:?}", numbers[1])))?;
                header = Some((vertices, edge_count));
            }
            "e" => {
                let (vertices, _) =
                    header.ok_or_else(|| context("edge before problem line".into()))?;
                if tokens.len() != 3 {
                    return Err(context("edge line needs two endpoints".into()));
                }
                let endpoint = |t: &str| -> Result<usize, FormatError> {
                    let v: usize = t
                        .parse()
                        .map_err(|_| context(format!("bad vertex {t:?}")))?;
                    if v == 0 || v > vertices {
                        return Err(context(format!("vertex {v} out of range 1..={vertices}")));
                    }
                    Ok(v - 1)
                };
                let u = endpoint(tokens[1])?;
                let v = endpoint(tokens[2])?;
                if u == v {
                    return Err(context(format!("self-loop at vertex {}", u + 1)));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(context(format!("duplicate edge ({}, {})", u + 1, v + 1)));
                }
                edges.push((u, v));
            }
            other => return Err(context(format!("unknown line type {other:?}"))),
        }
    }

    let (vertices, declared) = header.ok_or_else(|| invalid("missing problem line"))?;
    if edges.len() != declared {
        return Err(invalid(format!(
            "header declares {declared} edges but {} were given",
            edges.len()
        )));
    }
    Ok(Graph::new(vertices, edges)?)
}

/// Parses a cover specification: comma-separated 1-indexed vertex numbers.
pub fn parse_cover(spec: &str, vertex_count: usize) -> Result<BTreeSet<usize>, FormatError> {
    let mut cover = BTreeSet::new();
    for part in spec.split(',') {
        let token = part.trim();
        let vertex: usize = token
            .parse()
            .map_err(|_| invalid(format!("bad vertex {token:?} in cover spec")))?;
        if vertex == 0 || vertex > vertex_count {
            return Err(invalid(format!(
                "vertex {vertex} out of range 1..={vertex_count}"
            )));
        }
        cover.insert(vertex - 1);
    }
    Ok(cover)
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    text.push('\n');
    text
}

pub fn instance_to_json(inst: &Instance) -> String {
    to_pretty_json(&InstanceFile::from_instance(inst))
}

pub fn outcome_to_json(outcome: &Outcome, algorithm: &str) -> String {
    to_pretty_json(&OutcomeFile::from_outcome(outcome, algorithm))
}

pub fn load_instance(path: &Path) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.into_instance()
}

pub fn save_instance(path: &Path, inst: &Instance) -> Result<(), FormatError> {
    Ok(fs::write(path, instance_to_json(inst))?)
}

pub fn load_outcome(path: &Path) -> Result<(Outcome, String), FormatError> {
    let file: OutcomeFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.into_outcome()
}

pub fn save_outcome(path: &Path, outcome: &Outcome, algorithm: &str) -> Result<(), FormatError> {
    Ok(fs::write(path, outcome_to_json(outcome, algorithm))?)
}

pub fn load_graph(path: &Path) -> Result<Graph, FormatError> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn save_role_map(path: &Path, r: &ReductionInstance) -> Result<(), FormatError> {
    Ok(fs::write(
        path,
        to_pretty_json(&RoleMapFile::from_reduction(r)),
    )?)
}
