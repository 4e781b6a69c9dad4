//! Exact multicut for the small planar subinstances that show up after
//! branching. Works for any graph; planarity is only what keeps inputs small.

use crate::cuts::verify_multicut;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::instance::{keep_best, Instance, Solution};
use crate::weight::Weight;
use petgraph::unionfind::UnionFind;

/// Largest number of demand-carrying terminals accepted.
pub const SUBSOLVER_MAX_TERMINALS: usize = 16;

/// Minimum multicut, ties broken by the sorted edge list.
///
/// Every multicut splits the terminals into groups with no demand inside a
/// group. Coarsening a grouping never makes it harder to separate, so only
/// groupings where every two groups share a demand are tried; each one is a
/// multiway cut problem solved by labelled search.
pub fn planar_multicut_exact(inst: &Instance) -> Result<Solution> {
    let h = inst.demand_graph();
    let terms: Vec<VertexId> = h.vertices.iter().copied().filter(|&t| h.degree(t) > 0).collect();
    if terms.is_empty() {
        return Ok(Solution::empty());
    }
    if terms.len() > SUBSOLVER_MAX_TERMINALS {
        return Err(Error::SizeBound(format!("{} demand terminals exceed {SUBSOLVER_MAX_TERMINALS}", terms.len())));
    }
    let ctx = Contracted::new(inst);
    if inst.demands().iter().any(|&(a, b)| ctx.node[a] == ctx.node[b]) {
        return Err(Error::NoFiniteMulticut);
    }
    let mut best: Option<Solution> = None;
    for groups in maximal_groupings(inst, &terms) {
        if let Some(sol) = ctx.multiway(inst, &groups, best.as_ref().map(|b| b.weight)) {
            keep_best(&mut best, sol);
        }
    }
    let best = best.ok_or(Error::NoFiniteMulticut)?;
    debug_assert!(verify_multicut(inst, &best.edge_ids(inst)?)?);
    Ok(best)
}

/// Groupings of `terms` into demand-free groups, every two groups joined by a
/// demand. Groups are listed by their smallest member.
pub fn maximal_groupings(inst: &Instance, terms: &[VertexId]) -> Vec<Vec<Vec<VertexId>>> {
    let h = inst.demand_graph();
    let mut out = Vec::new();
    let mut groups: Vec<Vec<VertexId>> = Vec::new();
    fn rec(
        i: usize,
        terms: &[VertexId],
        h: &crate::instance::DemandGraph,
        groups: &mut Vec<Vec<VertexId>>,
        out: &mut Vec<Vec<Vec<VertexId>>>,
    ) {
        if i == terms.len() {
            let joined = |a: &[VertexId], b: &[VertexId]| a.iter().any(|&x| b.iter().any(|&y| h.has_edge(x, y)));
            for x in 0..groups.len() {
                for y in x + 1..groups.len() {
                    if !joined(&groups[x], &groups[y]) {
                        return;
                    }
                }
            }
            out.push(groups.clone());
            return;
        }
        let t = terms[i];
        for g in 0..groups.len() {
            if groups[g].iter().all(|&s| !h.has_edge(s, t)) {
                groups[g].push(t);
                rec(i + 1, terms, h, groups, out);
                groups[g].pop();
            }
        }
        groups.push(vec![t]);
        rec(i + 1, terms, h, groups, out);
        groups.pop();
    }
    rec(0, terms, &h, &mut groups, &mut out);
    out
}

/// The graph with infinite-weight edges contracted.
struct Contracted {
    node: Vec<usize>,
    count: usize,
    /// Finite edges between distinct nodes: (a, b, weight, original id).
    edges: Vec<(usize, usize, Weight, EdgeId)>,
}

impl Contracted {
    fn new(inst: &Instance) -> Contracted {
        let mut uf = UnionFind::new(inst.n());
        for (e, edge) in inst.edges().iter().enumerate() {
            if inst.weight(e).is_inf() {
                uf.union(edge.u, edge.v);
            }
        }
        let node = crate::graph::relabel(&uf, inst.n());
        let count = node.iter().map(|&x| x + 1).max().unwrap_or(0);
        let edges = inst
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, edge)| node[edge.u] != node[edge.v])
            .map(|(e, edge)| (node[edge.u], node[edge.v], edge.weight, e))
            .collect();
        Contracted { node, count, edges }
    }

    /// Cheapest labelling of nodes with group labels where group members get
    /// their own label; `None` if groups collide or nothing beats `bound`.
    fn multiway(&self, inst: &Instance, groups: &[Vec<VertexId>], bound: Option<Weight>) -> Option<Solution> {
        let k = groups.len();
        let mut fixed = vec![usize::MAX; self.count];
        for (l, g) in groups.iter().enumerate() {
            for &t in g {
                let x = self.node[t];
                if fixed[x] != usize::MAX && fixed[x] != l {
                    return None;
                }
                fixed[x] = l;
            }
        }
        let mut adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.count];
        for &(a, b, w, _) in &self.edges {
            adj[a].push((b, w.value().expect("finite edge")));
            adj[b].push((a, w.value().expect("finite edge")));
        }
        // Nodes in components without a fixed node keep any label for free.
        let mut order: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.count];
        let mut queue: std::collections::VecDeque<usize> = (0..self.count).filter(|&x| fixed[x] != usize::MAX).collect();
        for &x in &queue {
            seen[x] = true;
        }
        while let Some(x) = queue.pop_front() {
            if fixed[x] == usize::MAX {
                order.push(x);
            }
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let mut label = fixed.clone();
        for x in 0..self.count {
            if !seen[x] {
                label[x] = 0;
            }
        }
        let mut s = Labeller { k, adj: &adj, order: &order, label, best: None, bound: bound.and_then(|b| b.value()), inst, ctx: self };
        let base = s.cost_fixed();
        s.run(0, base);
        s.best
    }
}

struct Labeller<'a> {
    k: usize,
    adj: &'a [Vec<(usize, u64)>],
    order: &'a [usize],
    label: Vec<usize>,
    best: Option<Solution>,
    bound: Option<u64>,
    inst: &'a Instance,
    ctx: &'a Contracted,
}

impl Labeller<'_> {
    fn cost_fixed(&self) -> u64 {
        let unset: Vec<bool> = self.label.iter().map(|&l| l == usize::MAX).collect();
        let mut c = 0u64;
        for &(a, b, w, _) in &self.ctx.edges {
            if !unset[a] && !unset[b] && self.label[a] != self.label[b] {
                c += w.value().expect("finite edge");
            }
        }
        c
    }

    fn limit(&self) -> Option<u64> {
        match (&self.best, self.bound) {
            (Some(b), Some(x)) => Some(b.weight.value().unwrap_or(u64::MAX).min(x)),
            (Some(b), None) => Some(b.weight.value().unwrap_or(u64::MAX)),
            (None, x) => x,
        }
    }

    /// Cost that an unset node must pay to its set neighbors, per label.
    fn costs(&self, x: usize) -> Vec<u64> {
        let mut by_label = vec![0u64; self.k];
        let mut total = 0;
        for &(y, w) in &self.adj[x] {
            let l = self.label[y];
            if l != usize::MAX {
                by_label[l] += w;
                total += w;
            }
        }
        by_label.iter().map(|&keep| total - keep).collect()
    }

    fn run(&mut self, i: usize, cost: u64) {
        let lower = cost + self.order[i..].iter().map(|&x| self.costs(x).into_iter().min().unwrap_or(0)).sum::<u64>();
        if self.limit().is_some_and(|l| lower > l) {
            return;
        }
        if i == self.order.len() {
            let cut: Vec<EdgeId> =
                self.ctx.edges.iter().filter(|&&(a, b, _, _)| self.label[a] != self.label[b]).map(|&(_, _, _, e)| e).collect();
            let sol = Solution::from_edge_ids(self.inst, &cut);
            keep_best(&mut self.best, sol);
            return;
        }
        let x = self.order[i];
        let costs = self.costs(x);
        let mut labels: Vec<usize> = (0..self.k).collect();
        labels.sort_by_key(|&l| (costs[l], l));
        for l in labels {
            self.label[x] = l;
            self.run(i + 1, cost + costs[l]);
        }
        self.label[x] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::oracle_min_multicut;
    use crate::format::parse_instance;

    #[test]
    fn grid_with_three_corners() {
        let text = "n 9\nt 0\nt 2\nt 6\ne 0 1 1\ne 1 2 1\ne 3 4 1\ne 4 5 1\ne 6 7 1\ne 7 8 1\ne 0 3 1\ne 3 6 1\ne 1 4 1\ne 4 7 1\ne 2 5 1\ne 5 8 1\nd 0 2\nd 0 6\nd 2 6\n";
        let inst = parse_instance(text).unwrap();
        let exact = planar_multicut_exact(&inst).unwrap();
        let oracle = oracle_min_multicut(&inst).unwrap();
        assert_eq!(exact, oracle);
        assert_eq!(exact.weight, Weight::finite(4));
    }

    #[test]
    fn groupings_of_a_path_demand() {
        // Demands 0-1 and 1-2: terminals 0 and 2 may share a group.
        let text = "n 3\nt 0\nt 1\nt 2\ne 0 1 1\ne 1 2 1\nd 0 1\nd 1 2\n";
        let inst = parse_instance(text).unwrap();
        let gs = maximal_groupings(&inst, &[0, 1, 2]);
        assert_eq!(gs, vec![vec![vec![0, 2], vec![1]]]);
    }

    #[test]
    fn infinite_edges_respected() {
        let text = "n 4\nt 0\nt 3\ne 0 1 inf\ne 1 2 5\ne 2 3 inf\ne 0 2 1\nd 0 3\n";
        let inst = parse_instance(text).unwrap();
        let s = planar_multicut_exact(&inst).unwrap();
        assert_eq!(s.weight, Weight::finite(6));
        let blocked = parse_instance("n 2\nt 0\nt 1\ne 0 1 inf\nd 0 1\n").unwrap();
        assert!(matches!(planar_multicut_exact(&blocked), Err(Error::NoFiniteMulticut)));
    }
}
