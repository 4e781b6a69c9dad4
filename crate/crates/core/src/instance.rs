//! Multicut instances, demand graphs, and solutions.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::weight::Weight;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
}

/// Normalized unordered vertex pair `(min, max)`.
pub fn pair(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Demand graph: its vertex set is the terminal set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DemandGraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl DemandGraph {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> DemandGraph {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        let edges: BTreeSet<_> = edges.into_iter().map(|(u, v)| pair(u, v)).collect();
        for &(u, v) in &edges {
            debug_assert!(vertices.contains(&u) && vertices.contains(&v));
        }
        DemandGraph { vertices: vertices.into_iter().collect(), edges: edges.into_iter().collect() }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.binary_search(&pair(u, v)).is_ok()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// A multicut instance: weighted graph, terminal set, and demand pairs, plus the
/// optional file annotations (planarizing edges, crossing pairs, rotations).
///
/// Edges are kept sorted by endpoint pair, so an `EdgeId` order is the
/// lexicographic order of edges used for every tie-break.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    edges: Vec<Edge>,
    terminals: Vec<VertexId>,
    demands: Vec<(VertexId, VertexId)>,
    pi_edges: Vec<EdgeId>,
    crossings: Vec<(EdgeId, EdgeId)>,
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    graph: Graph,
}

impl Instance {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Weight)>,
        terminals: impl IntoIterator<Item = VertexId>,
        demands: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Instance> {
        let mut es: Vec<Edge> = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!("edge ({u},{v}) references a vertex outside 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at {u}")));
            }
            if w == Weight::ZERO {
                return Err(Error::InvalidInstance(format!("edge ({u},{v}) has zero weight")));
            }
            let (a, b) = pair(u, v);
            es.push(Edge { u: a, v: b, weight: w });
        }
        es.sort_by_key(|e| (e.u, e.v));
        for w in es.windows(2) {
            if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
                return Err(Error::InvalidInstance(format!("duplicate edge ({},{})", w[0].u, w[0].v)));
            }
        }
        let terminals: BTreeSet<VertexId> = terminals.into_iter().collect();
        if let Some(&t) = terminals.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidInstance(format!("terminal {t} outside 0..{n}")));
        }
        let mut ds = BTreeSet::new();
        for (u, v) in demands {
            if !terminals.contains(&u) || !terminals.contains(&v) {
                return Err(Error::InvalidInstance(format!("demand endpoint not terminal in ({u},{v})")));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("demand ({u},{v}) joins a terminal to itself")));
            }
            ds.insert(pair(u, v));
        }
        let graph = Graph::new(n, es.iter().map(|e| (e.u, e.v)).collect());
        Ok(Instance {
            n,
            edges: es,
            terminals: terminals.into_iter().collect(),
            demands: ds.into_iter().collect(),
            pi_edges: Vec::new(),
            crossings: Vec::new(),
            rotation: BTreeMap::new(),
            graph,
        })
    }

    /// Unit-weight instance.
    pub fn unweighted(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        terminals: impl IntoIterator<Item = VertexId>,
        demands: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Instance> {
        Instance::new(n, edges.into_iter().map(|(u, v)| (u, v, Weight::ONE)), terminals, demands)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    /// Number of terminals, `t = |T|`.
    pub fn t(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_terminal(&self, v: VertexId) -> bool {
        self.terminals.binary_search(&v).is_ok()
    }

    pub fn demands(&self) -> &[(VertexId, VertexId)] {
        &self.demands
    }

    pub fn demand_graph(&self) -> DemandGraph {
        DemandGraph { vertices: self.terminals.clone(), edges: self.demands.clone() }
    }

    pub fn edge_id(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let key = pair(u, v);
        self.edges.binary_search_by_key(&key, |e| (e.u, e.v)).ok()
    }

    pub fn weight(&self, e: EdgeId) -> Weight {
        self.edges[e].weight
    }

    pub fn weight_of(&self, set: &[EdgeId]) -> Weight {
        set.iter().map(|&e| self.edges[e].weight).sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight == Weight::ONE)
    }

    pub fn pi_edges(&self) -> &[EdgeId] {
        &self.pi_edges
    }

    pub fn crossings(&self) -> &[(EdgeId, EdgeId)] {
        &self.crossings
    }

    pub fn rotation(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.rotation
    }

    pub fn with_pi_edges(mut self, pi_edges: impl IntoIterator<Item = EdgeId>) -> Instance {
        let set: BTreeSet<EdgeId> = pi_edges.into_iter().collect();
        self.pi_edges = set.into_iter().collect();
        self
    }

    /// Attaches crossing pairs. Each pair must consist of two edges without a
    /// common endpoint.
    pub fn with_crossings(mut self, pairs: impl IntoIterator<Item = (EdgeId, EdgeId)>) -> Result<Instance> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            let (ea, eb) = (self.edges[a], self.edges[b]);
            if a == b || ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v {
                return Err(Error::InvalidInstance(format!(
                    "crossing edges ({},{}) and ({},{}) share an endpoint",
                    ea.u, ea.v, eb.u, eb.v
                )));
            }
            set.insert(pair(a, b));
        }
        self.crossings = set.into_iter().collect();
        Ok(self)
    }

    pub fn with_rotation(mut self, rotation: BTreeMap<VertexId, Vec<VertexId>>) -> Instance {
        self.rotation = rotation;
        self
    }

    /// Same instance with the given edge weights replaced.
    pub fn reweighted(&self, weight: impl Fn(EdgeId, Weight) -> Weight) -> Instance {
        let mut out = self.clone();
        for (id, e) in out.edges.iter_mut().enumerate() {
            e.weight = weight(id, e.weight);
        }
        out
    }

    /// `G \ S`: drops the given edges, keeps vertices, terminals and demands.
    /// Annotations that reference dropped edges are dropped with them.
    pub fn without_edges(&self, removed: &[EdgeId]) -> Instance {
        let mut gone = vec![false; self.m()];
        for &e in removed {
            gone[e] = true;
        }
        self.rebuild(|_| true, |e| !gone[e], |_, _| true)
    }

    /// `(G - Y, H - Y)`: drops all edges touching `removed` and the removed
    /// terminals with their demands. Vertex ids are preserved.
    pub fn without_vertices(&self, removed: &[VertexId]) -> Instance {
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        self.rebuild(|v| !gone[v], |e| !gone[self.edges[e].u] && !gone[self.edges[e].v], |u, v| !gone[u] && !gone[v])
    }

    /// `(G[V'], H[V'])` renumbered to `0..|V'|` in increasing order of the
    /// old ids; annotations are dropped. Returns the old id of each new vertex.
    pub fn compacted(&self, vertices: &[VertexId]) -> (Instance, Vec<VertexId>) {
        let mut old: Vec<VertexId> = vertices.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let inside = |v: VertexId| new_id[v] != usize::MAX;
        let edges = self.edges.iter().filter(|e| inside(e.u) && inside(e.v)).map(|e| (new_id[e.u], new_id[e.v], e.weight));
        let terminals = self.terminals.iter().filter(|&&t| inside(t)).map(|&t| new_id[t]);
        let demands = self.demands.iter().filter(|&&(a, b)| inside(a) && inside(b)).map(|&(a, b)| (new_id[a], new_id[b]));
        let inst = Instance::new(old.len(), edges, terminals, demands).expect("subinstance of a valid instance");
        (inst, old)
    }

    /// Drops terminals that appear in no demand.
    pub fn without_idle_terminals(&self) -> Instance {
        let h = self.demand_graph();
        self.rebuild(|t| h.degree(t) > 0, |_| true, |_, _| true)
    }

    /// The instance restricted to `vertices`: edges inside it, terminals in it,
    /// and demands with both ends in it (`H[V']`).
    pub fn restricted_to(&self, vertices: &[VertexId]) -> Instance {
        let keep = crate::graph::mask(self.n, vertices);
        self.rebuild(|v| keep[v], |e| keep[self.edges[e].u] && keep[self.edges[e].v], |u, v| keep[u] && keep[v])
    }

    fn rebuild(
        &self,
        keep_terminal: impl Fn(VertexId) -> bool,
        keep_edge: impl Fn(EdgeId) -> bool,
        keep_demand: impl Fn(VertexId, VertexId) -> bool,
    ) -> Instance {
        let edges: Vec<_> = (0..self.m()).filter(|&e| keep_edge(e)).map(|e| self.edges[e]).collect();
        let mut new_id = vec![usize::MAX; self.m()];
        let mut next = 0;
        for (e, id) in new_id.iter_mut().enumerate() {
            if keep_edge(e) {
                *id = next;
                next += 1;
            }
        }
        let graph = Graph::new(self.n, edges.iter().map(|e| (e.u, e.v)).collect());
        let pi_edges = self.pi_edges.iter().filter(|&&e| keep_edge(e)).map(|&e| new_id[e]).collect();
        let crossings =
            self.crossings.iter().filter(|&&(a, b)| keep_edge(a) && keep_edge(b)).map(|&(a, b)| (new_id[a], new_id[b])).collect();
        let rotation = self
            .rotation
            .iter()
            .map(|(&v, order)| {
                let kept: Vec<_> = order.iter().copied().filter(|&w| self.edge_id(v, w).is_some_and(&keep_edge)).collect();
                (v, kept)
            })
            .filter(|(_, order)| !order.is_empty())
            .collect();
        Instance {
            n: self.n,
            edges,
            terminals: self.terminals.iter().copied().filter(|&t| keep_terminal(t)).collect(),
            demands: self.demands.iter().copied().filter(|&(u, v)| keep_demand(u, v)).collect(),
            pi_edges,
            crossings,
            rotation,
            graph,
        }
    }

    /// Canonical key (edges with weights, terminals, demands) used for memoization.
    pub fn canonical_key(&self) -> CanonicalKey {
        (self.n, self.edges.iter().map(|e| (e.u, e.v, e.weight)).collect(), self.terminals.clone(), self.demands.clone())
    }
}

/// `(n, weighted edges, terminals, demands)`.
pub type CanonicalKey = (usize, Vec<(VertexId, VertexId, Weight)>, Vec<VertexId>, Vec<(VertexId, VertexId)>);

/// A multicut: edge list as sorted endpoint pairs, with its total weight.
///
/// Solutions are keyed by endpoint pairs rather than edge ids so they stay
/// meaningful across subinstances that share vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Solution {
    pub edges: Vec<(VertexId, VertexId)>,
    pub weight: Weight,
}

impl Solution {
    pub fn empty() -> Solution {
        Solution { edges: Vec::new(), weight: Weight::ZERO }
    }

    pub fn from_edge_ids(instance: &Instance, ids: &[EdgeId]) -> Solution {
        let mut edges: Vec<_> = ids.iter().map(|&e| (instance.edge(e).u, instance.edge(e).v)).collect();
        edges.sort_unstable();
        edges.dedup();
        let weight = edges.iter().map(|&(u, v)| instance.weight(instance.edge_id(u, v).unwrap())).sum();
        Solution { edges, weight }
    }

    /// Resolves the endpoint pairs against `instance`.
    pub fn edge_ids(&self, instance: &Instance) -> Result<Vec<EdgeId>> {
        self.edges.iter().map(|&(u, v)| instance.edge_id(u, v).ok_or(Error::UnknownEdge(u, v))).collect()
    }

    /// Union with another solution, reweighted against `instance`.
    pub fn union(&self, other: &Solution, instance: &Instance) -> Result<Solution> {
        let mut ids = self.edge_ids(instance)?;
        ids.extend(other.edge_ids(instance)?);
        Ok(Solution::from_edge_ids(instance, &ids))
    }

    /// Renames vertices through `old_id` (as returned by [`Instance::compacted`]).
    pub fn mapped(&self, old_id: &[VertexId]) -> Solution {
        let mut edges: Vec<_> = self.edges.iter().map(|&(u, v)| pair(old_id[u], old_id[v])).collect();
        edges.sort_unstable();
        Solution { edges, weight: self.weight }
    }

    /// Deterministic preference: lower weight first, then lexicographically
    /// smaller edge list.
    pub fn better_than(&self, other: &Solution) -> bool {
        (self.weight, &self.edges) < (other.weight, &other.edges)
    }
}

impl Default for Solution {
    fn default() -> Self {
        Solution::empty()
    }
}

/// Keeps the better of `best` and `candidate` under `Solution::better_than`.
pub fn keep_best(best: &mut Option<Solution>, candidate: Solution) {
    match best {
        Some(b) if !candidate.better_than(b) => {}
        _ => *best = Some(candidate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Instance {
        Instance::unweighted(3, [(0, 1), (1, 2)], [0, 2], [(0, 2)]).unwrap()
    }

    #[test]
    fn path_instance() {
        let inst = path3();
        assert_eq!(inst.t(), 2);
        assert_eq!(inst.m(), 2);
        assert_eq!(inst.edge_id(2, 1), Some(1));
        assert!(inst.is_unweighted());
    }

    #[test]
    fn rejects_invalid_instances() {
        let e = Instance::unweighted(3, [(0, 1)], [0], [(0, 2)]).unwrap_err();
        assert!(e.to_string().contains("demand endpoint not terminal"));
        let e = Instance::unweighted(3, [(0, 1), (1, 0)], [0], []).unwrap_err();
        assert!(e.to_string().contains("duplicate edge"));
        assert!(Instance::unweighted(3, [(1, 1)], [0], []).is_err());
    }

    #[test]
    fn edges_are_sorted() {
        let inst = Instance::unweighted(4, [(3, 2), (0, 3), (1, 0)], [], []).unwrap();
        let pairs: Vec<_> = inst.edges().iter().map(|e| (e.u, e.v)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (2, 3)]);
    }

    #[test]
    fn vertex_removal_drops_terminals_and_demands() {
        let inst = Instance::unweighted(3, [(0, 1), (1, 2)], [0, 1, 2], [(0, 2), (1, 2)]).unwrap();
        let sub = inst.without_vertices(&[2]);
        assert_eq!(sub.terminals(), &[0, 1]);
        assert!(sub.demands().is_empty());
        assert_eq!(sub.m(), 1);
        assert_eq!(sub.n(), 3);
    }

    #[test]
    fn solution_ordering() {
        let inst = path3();
        let a = Solution::from_edge_ids(&inst, &[0]);
        let b = Solution::from_edge_ids(&inst, &[1]);
        assert!(a.better_than(&b));
        let mut best = None;
        keep_best(&mut best, b.clone());
        keep_best(&mut best, a.clone());
        keep_best(&mut best, b);
        assert_eq!(best, Some(a));
    }
}
