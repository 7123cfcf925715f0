//! Vertex-cover reduction: generates house allocation instances whose
//! minimum-subsidy envy-free outcomes encode vertex covers.
//!
//! For a graph `G = (V, E)` and a target cover size `k` (with
//! `1 <= k < |V| - 1`), the generated instance has
//! `n = |V|^4 + |V|^3 + |E|` agents and `m = |V|^4 + |V|^3 + |V|^2` houses:
//!
//! * `|V|^4` special agents value the `|V|^4` special houses at 1;
//! * for each vertex `w`, `|V|^2` vertex agents value the `|V|` good houses
//!   of `w` at `1 + |V|^-3` and the `|V|^2` bad houses of `w` at 1;
//! * for each edge `{x, y}`, one edge agent values every special house and
//!   every good house of `x` or `y` at 1.
//!
//! All other utilities are 0. `G` has a cover of size at most `k` iff the
//! instance has an envy-free outcome with total subsidy at most `k / |V|`.
//! [`witness_outcome`] builds such an outcome from a cover;
//! [`extract_cover`] recovers a cover from such an outcome.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Outcome, Rational};

/// Simple undirected graph: vertices `0..vertex_count`, edges stored as
/// ordered pairs `(u, v)` with `u < v`, deduplicated and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if vertex_count < 2 {
            return Err(Error::TooFewVertices(vertex_count));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::EdgeOutOfRange { u, v, vertex_count });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// True iff every edge of `g` has an endpoint in `cover`.
pub fn is_vertex_cover(g: &Graph, cover: &BTreeSet<usize>) -> bool {
    g.edges
        .iter()
        .all(|(u, v)| cover.contains(u) || cover.contains(v))
}

/// What an agent of the generated instance stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgentRole {
    Special { copy: usize },
    Vertex { vertex: usize, copy: usize },
    Edge { u: usize, v: usize },
}

/// What a house of the generated instance stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HouseRole {
    Special { copy: usize },
    Good { vertex: usize, copy: usize },
    Bad { vertex: usize, copy: usize },
}

/// A generated instance plus the bookkeeping needed to move between graph
/// language (vertices, covers) and allocation language (agents, houses).
#[derive(Clone, Debug)]
pub struct ReductionInstance {
    graph: Graph,
    k: usize,
    instance: Instance,
    agent_roles: Vec<AgentRole>,
    house_roles: Vec<HouseRole>,
}

impl ReductionInstance {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn agent_roles(&self) -> &[AgentRole] {
        &self.agent_roles
    }

    pub fn house_roles(&self) -> &[HouseRole] {
        &self.house_roles
    }

    fn vertex_count(&self) -> usize {
        self.graph.vertex_count
    }

    fn good_house(&self, vertex: usize, copy: usize) -> usize {
        let v = self.vertex_count();
        v.pow(4) + vertex * v + copy
    }

    fn bad_house(&self, vertex: usize, copy: usize) -> usize {
        let v = self.vertex_count();
        v.pow(4) + v.pow(2) + vertex * v.pow(2) + copy
    }
}

/// Builds the reduction instance for `(g, k)`.
pub fn reduce_vertex_cover(g: &Graph, k: usize) -> Result<ReductionInstance> {
    let v = g.vertex_count();
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if k == 0 || k >= v - 1 {
        return Err(Error::KTooLarge { k, vertex_count: v });
    }

    let specials = v.pow(4);
    let n = specials + v.pow(3) + g.edge_count();
    let m = specials + v.pow(3) + v.pow(2);

    let zero = Rational::zero();
    let one = Rational::one();
    let good_value = Rational::new(v.pow(3) as i64 + 1, v.pow(3) as i64); // 1 + |V|^-3

    let mut house_roles = Vec::with_capacity(m);
    let mut house_labels = Vec::with_capacity(m);
    for copy in 0..specials {
        house_roles.push(HouseRole::Special { copy });
        house_labels.push(format!("special_house_{copy}"));
    }
    for vertex in 0..v {
        for copy in 0..v {
            house_roles.push(HouseRole::Good { vertex, copy });
            house_labels.push(format!("good_v{}_{copy}", vertex + 1));
        }
    }
    for vertex in 0..v {
        for copy in 0..v.pow(2) {
            house_roles.push(HouseRole::Bad { vertex, copy });
            house_labels.push(format!("bad_v{}_{copy}", vertex + 1));
        }
    }

    let mut agent_roles = Vec::with_capacity(n);
    let mut agent_labels = Vec::with_capacity(n);
    let mut utilities = Vec::with_capacity(n);

    // Special agents share one row: 1 on the special block.
    let special_row: Vec<Rational> = (0..m)
        .map(|h| {
            if h < specials {
                one.clone()
            } else {
                zero.clone()
            }
        })
        .collect();
    for copy in 0..specials {
        agent_roles.push(AgentRole::Special { copy });
        agent_labels.push(format!("special_agent_{copy}"));
        utilities.push(special_row.clone());
    }

    // Vertex agents of one type share one row.
    for vertex in 0..v {
        let mut row = vec![zero.clone(); m];
        for copy in 0..v {
            row[specials + vertex * v + copy] = good_value.clone();
        }
        for copy in 0..v.pow(2) {
            row[specials + v.pow(2) + vertex * v.pow(2) + copy] = one.clone();
        }
        for copy in 0..v.pow(2) {
            agent_roles.push(AgentRole::Vertex { vertex, copy });
            agent_labels.push(format!("vertex_agent_v{}_{copy}", vertex + 1));
            utilities.push(row.clone());
        }
    }

    // Edge agents: special houses plus the good houses of both endpoints.
    for &(x, y) in g.edges() {
        let mut row = special_row.clone();
        for vertex in [x, y] {
            for copy in 0..v {
                row[specials + vertex * v + copy] = one.clone();
            }
        }
        agent_roles.push(AgentRole::Edge { u: x, v: y });
        agent_labels.push(format!("edge_agent_v{}_v{}", x + 1, y + 1));
        utilities.push(row);
    }

    let instance = Instance::new(utilities)
        .expect("reduction utilities are nonnegative and n < m")
        .with_labels(Some(agent_labels), Some(house_labels))
        .expect("labels match the construction");

    Ok(ReductionInstance {
        graph: g.clone(),
        k,
        instance,
        agent_roles,
        house_roles,
    })
}

/// Builds the envy-free outcome witnessing a vertex cover `cover` of size at
/// most `k`: special agents take special houses, each edge agent takes a good
/// house of a covering endpoint (the smaller endpoint when both are covered,
/// copies in ascending order), each vertex agent of type `v` takes a bad
/// house of `v`, and every vertex agent whose type lies in the cover receives
/// a subsidy of `|V|^-3`. The total subsidy is exactly `|cover| / |V|`.
pub fn witness_outcome(r: &ReductionInstance, cover: &BTreeSet<usize>) -> Result<Outcome> {
    let v = r.vertex_count();
    if let Some(&vertex) = cover.iter().find(|&&w| w >= v) {
        return Err(Error::VertexOutOfRange {
            vertex,
            vertex_count: v,
        });
    }
    if let Some(&(u, w)) = r
        .graph
        .edges()
        .iter()
        .find(|(u, w)| !cover.contains(u) && !cover.contains(w))
    {
        return Err(Error::NotACover { u, v: w });
    }
    if cover.len() > r.k {
        return Err(Error::CoverTooLarge {
            size: cover.len(),
            k: r.k,
        });
    }

    let n = r.instance.agents();
    let mut assignment = vec![0usize; n];
    let mut subsidy = vec![Rational::zero(); n];
    let per_agent = Rational::new(1, v.pow(3) as i64);
    let mut next_good_copy = vec![0usize; v];

    for (agent, role) in r.agent_roles.iter().enumerate() {
        match *role {
            AgentRole::Special { copy } => assignment[agent] = copy,
            AgentRole::Vertex { vertex, copy } => {
                assignment[agent] = r.bad_house(vertex, copy);
                if cover.contains(&vertex) {
                    subsidy[agent] = per_agent.clone();
                }
            }
            AgentRole::Edge { u, v: w } => {
                let chosen = if cover.contains(&u) { u } else { w };
                let copy = next_good_copy[chosen];
                next_good_copy[chosen] += 1;
                debug_assert!(copy < v, "a vertex has at most |V| - 1 incident edges");
                assignment[agent] = r.good_house(chosen, copy);
            }
        }
    }

    let alloc = Allocation::new(assignment).expect("witness assigns distinct houses");
    Ok(Outcome::new(alloc, subsidy).expect("witness subsidies are nonnegative"))
}

/// Recovers the cover encoded by an outcome: the set of vertices whose good
/// houses are held by edge agents.
pub fn extract_cover(r: &ReductionInstance, outcome: &Outcome) -> Result<BTreeSet<usize>> {
    outcome.allocation().check_against(&r.instance)?;
    let mut cover = BTreeSet::new();
    for (agent, role) in r.agent_roles.iter().enumerate() {
        if let AgentRole::Edge { .. } = role {
            if let HouseRole::Good { vertex, .. } =
                r.house_roles[outcome.allocation().house_of(agent)]
            {
                cover.insert(vertex);
            }
        }
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_envy_free;

    fn path3() -> Graph {
        // a - b - c with vertices 0, 1, 2.
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn cover(vertices: &[usize]) -> BTreeSet<usize> {
        vertices.iter().copied().collect()
    }

    #[test]
    fn graph_construction_normalizes_and_validates() {
        let g = Graph::new(3, [(1, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(matches!(Graph::new(1, []), Err(Error::TooFewVertices(1))));
        assert!(matches!(Graph::new(3, [(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::EdgeOutOfRange { .. })
        ));
    }

    #[test]
    fn vertex_cover_predicate() {
        let g = path3();
        assert!(is_vertex_cover(&g, &cover(&[1])));
        assert!(!is_vertex_cover(&g, &cover(&[0])));
        let triangle = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_vertex_cover(&triangle, &cover(&[0, 1])));
        assert!(is_vertex_cover(&triangle, &cover(&[1, 2])));
        assert!(!is_vertex_cover(&triangle, &cover(&[2])));
    }

    #[test]
    fn path3_sizes() {
        let r = reduce_vertex_cover(&path3(), 1).unwrap();
        assert_eq!(r.instance().agents(), 81 + 27 + 2);
        assert_eq!(r.instance().agents(), 110);
        assert_eq!(r.instance().houses(), 81 + 27 + 9);
        assert_eq!(r.instance().houses(), 117);
    }

    #[test]
    fn k_bounds_are_enforced() {
        assert!(matches!(
            reduce_vertex_cover(&path3(), 2),
            Err(Error::KTooLarge {
                k: 2,
                vertex_count: 3
            })
        ));
        assert!(matches!(
            reduce_vertex_cover(&path3(), 0),
            Err(Error::KTooLarge { .. })
        ));
        let edgeless = Graph::new(4, []).unwrap();
        assert!(matches!(
            reduce_vertex_cover(&edgeless, 1),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn utilities_match_the_role_table() {
        let r = reduce_vertex_cover(&path3(), 1).unwrap();
        let inst = r.instance();
        let one = Rational::one();
        let zero = Rational::zero();
        let good = Rational::new(28, 27);
        for (agent, agent_role) in r.agent_roles().iter().enumerate() {
            for (house, house_role) in r.house_roles().iter().enumerate() {
                let expected = match (agent_role, house_role) {
                    (AgentRole::Special { .. }, HouseRole::Special { .. }) => &one,
                    (AgentRole::Special { .. }, _) => &zero,
                    (AgentRole::Vertex { vertex: w, .. }, HouseRole::Good { vertex, .. }) => {
                        if vertex == w {
                            &good
                        } else {
                            &zero
                        }
                    }
                    (AgentRole::Vertex { vertex: w, .. }, HouseRole::Bad { vertex, .. }) => {
                        if vertex == w {
                            &one
                        } else {
                            &zero
                        }
                    }
                    (AgentRole::Vertex { .. }, HouseRole::Special { .. }) => &zero,
                    (AgentRole::Edge { .. }, HouseRole::Special { .. }) => &one,
                    (AgentRole::Edge { u, v }, HouseRole::Good { vertex, .. }) => {
                        if vertex == u || vertex == v {
                            &one
                        } else {
                            &zero
                        }
                    }
                    (AgentRole::Edge { .. }, HouseRole::Bad { .. }) => &zero,
                };
                assert_eq!(
                    inst.utility(agent, house),
                    expected,
                    "agent {agent_role:?} / house {house_role:?}"
                );
            }
        }
    }

    #[test]
    fn witness_for_the_middle_vertex() {
        let r = reduce_vertex_cover(&path3(), 1).unwrap();
        let outcome = witness_outcome(&r, &cover(&[1])).unwrap();
        assert_eq!(outcome.total_subsidy(), Rational::new(1, 3));
        assert!(is_envy_free(r.instance(), &outcome).unwrap());
    }

    #[test]
    fn witness_rejects_non_covers_and_oversized_covers() {
        let r = reduce_vertex_cover(&path3(), 1).unwrap();
        assert!(matches!(
            witness_outcome(&r, &cover(&[0])),
            Err(Error::NotACover { u: 1, v: 2 })
        ));
        assert!(matches!(
            witness_outcome(&r, &cover(&[0, 1])),
            Err(Error::CoverTooLarge { size: 2, k: 1 })
        ));
        assert!(matches!(
            witness_outcome(&r, &cover(&[9])),
            Err(Error::VertexOutOfRange { vertex: 9, .. })
        ));
    }

    #[test]
    fn extract_recovers_the_witness_cover() {
        let r = reduce_vertex_cover(&path3(), 1).unwrap();
        let outcome = witness_outcome(&r, &cover(&[1])).unwrap();
        let extracted = extract_cover(&r, &outcome).unwrap();
        assert_eq!(extracted, cover(&[1]));
        assert!(is_vertex_cover(r.graph(), &extracted));
    }

    #[test]
    fn extract_is_empty_without_edge_agents_on_good_houses() {
        let r = reduce_vertex_cover(&path3(), 1).unwrap();
        // Hand the edge agents special houses 0 and 1; special agents shift
        // up by two, the last two spilling onto good houses of vertex 0.
        let n = r.instance().agents();
        let mut assignment = vec![0usize; n];
        let subsidy = vec![Rational::zero(); n];
        let mut next_special = 0;
        for (agent, role) in r.agent_roles().iter().enumerate() {
            match *role {
                AgentRole::Special { copy } => assignment[agent] = copy + 2,
                AgentRole::Vertex { vertex, copy } => assignment[agent] = r.bad_house(vertex, copy),
                AgentRole::Edge { .. } => {
                    assignment[agent] = next_special;
                    next_special += 1;
                }
            }
        }
        let outcome = Outcome::new(Allocation::new(assignment).unwrap(), subsidy).unwrap();
        assert_eq!(extract_cover(&r, &outcome).unwrap(), BTreeSet::new());
    }
}
