//! Brute-force minimum multicut, used as the reference every solver is checked
//! against.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::instance::{Instance, Solution};
use crate::weight::Weight;
use petgraph::unionfind::UnionFind;
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    /// Every subset of finite edges.
    Enumerate,
    /// Branch on the edges of an unseparated demand path.
    BranchAndBound,
    /// Enumeration for tiny edge counts, branch and bound otherwise.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub mode: OracleMode,
    /// Largest number of finite edges the oracle accepts.
    pub max_edges: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { mode: OracleMode::Auto, max_edges: 24 }
    }
}

const AUTO_ENUMERATE_LIMIT: usize = 10;

/// Fails with `NoFiniteMulticut` when some demand pair is joined by INF edges.
pub fn check_finite_feasible(inst: &Instance) -> Result<()> {
    let mut uf = UnionFind::new(inst.n());
    for e in inst.edges() {
        if e.weight.is_inf() {
            uf.union(e.u, e.v);
        }
    }
    if inst.demands().iter().any(|&(u, v)| uf.equiv(u, v)) {
        return Err(Error::NoFiniteMulticut);
    }
    Ok(())
}

pub fn oracle_min_multicut(inst: &Instance) -> Result<Solution> {
    oracle_with(inst, OracleConfig::default())
}

pub fn oracle_with(inst: &Instance, cfg: OracleConfig) -> Result<Solution> {
    check_finite_feasible(inst)?;
    let finite: Vec<EdgeId> = (0..inst.m()).filter(|&e| inst.weight(e).is_finite()).collect();
    if finite.len() > cfg.max_edges {
        return Err(Error::OracleBound { edges: finite.len(), bound: cfg.max_edges });
    }
    let ids = match cfg.mode {
        OracleMode::Enumerate => enumerate(inst, &finite),
        OracleMode::BranchAndBound => Search::new(inst, false).run(),
        OracleMode::Auto if finite.len() <= AUTO_ENUMERATE_LIMIT => enumerate(inst, &finite),
        OracleMode::Auto => Search::new(inst, false).run(),
    };
    Ok(Solution::from_edge_ids(inst, &ids))
}

/// Every minimum-weight multicut, each as a sorted edge id list, in
/// lexicographic order.
pub fn all_minimum_multicuts(inst: &Instance, max_edges: usize) -> Result<Vec<Vec<EdgeId>>> {
    check_finite_feasible(inst)?;
    let finite = (0..inst.m()).filter(|&e| inst.weight(e).is_finite()).count();
    if finite > max_edges {
        return Err(Error::OracleBound { edges: finite, bound: max_edges });
    }
    let mut search = Search::new(inst, true);
    search.run();
    let mut all = search.ties;
    all.sort();
    Ok(all)
}

fn enumerate(inst: &Instance, finite: &[EdgeId]) -> Vec<EdgeId> {
    let k = finite.len();
    let mut best: Option<(Weight, Vec<EdgeId>)> = None;
    let mut removed = vec![false; inst.m()];
    for bits in 0u64..(1u64 << k) {
        let mut w = Weight::ZERO;
        for (i, &e) in finite.iter().enumerate() {
            let on = bits >> i & 1 == 1;
            removed[e] = on;
            if on {
                w = w + inst.weight(e);
            }
        }
        if best.as_ref().is_some_and(|(bw, _)| w > *bw) {
            continue;
        }
        if !super::verify::separates(inst, &removed) {
            continue;
        }
        let set: Vec<EdgeId> = (0..k).filter(|&i| bits >> i & 1 == 1).map(|i| finite[i]).collect();
        if best.as_ref().is_none_or(|(bw, bs)| (w, &set) < (*bw, bs)) {
            best = Some((w, set));
        }
    }
    best.expect("feasibility checked").1
}

struct Search<'a> {
    inst: &'a Instance,
    removed: Vec<bool>,
    forced: Vec<bool>,
    best: Option<(Weight, Vec<EdgeId>)>,
    collect_ties: bool,
    ties: Vec<Vec<EdgeId>>,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, collect_ties: bool) -> Search<'a> {
        let forced = (0..inst.m()).map(|e| inst.weight(e).is_inf()).collect();
        Search { inst, removed: vec![false; inst.m()], forced, best: None, collect_ties, ties: Vec::new() }
    }

    fn run(&mut self) -> Vec<EdgeId> {
        self.go(Weight::ZERO);
        self.best.clone().expect("feasibility checked").1
    }

    /// Shortest path in `G \ removed` between some connected demand pair, as
    /// edge ids, or `None` when all demands are separated.
    fn unseparated_path(&self) -> Option<Vec<EdgeId>> {
        let inst = self.inst;
        let labels = inst.graph().component_labels_where(|e| !self.removed[e]);
        let &(s, t) = inst.demands().iter().find(|&&(u, v)| labels[u] == labels[v])?;
        let mut via: Vec<Option<(VertexId, EdgeId)>> = vec![None; inst.n()];
        let mut seen = vec![false; inst.n()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &(w, e) in inst.graph().adj(u) {
                if !self.removed[e] && !seen[w] {
                    seen[w] = true;
                    via[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
        let mut path = Vec::new();
        let mut v = t;
        while let Some((u, e)) = via[v] {
            path.push(e);
            v = u;
        }
        path.reverse();
        Some(path)
    }

    fn go(&mut self, w: Weight) {
        if let Some((bw, _)) = &self.best {
            if w > *bw {
                return;
            }
        }
        let Some(path) = self.unseparated_path() else {
            let set: Vec<EdgeId> = (0..self.inst.m()).filter(|&e| self.removed[e]).collect();
            match &self.best {
                Some((bw, _)) if w == *bw && self.collect_ties => self.ties.push(set.clone()),
                _ => {}
            }
            let better = self.best.as_ref().is_none_or(|(bw, bs)| (w, &set) < (*bw, bs));
            if better {
                if self.best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                    self.ties = vec![set.clone()];
                }
                self.best = Some((w, set));
            }
            return;
        };
        // Branch i cuts the i-th free edge of the path and keeps the earlier ones.
        let free: Vec<EdgeId> = path.into_iter().filter(|&e| !self.forced[e]).collect();
        for &e in &free {
            self.removed[e] = true;
            self.go(w + self.inst.weight(e));
            self.removed[e] = false;
            self.forced[e] = true;
        }
        for &e in &free {
            self.forced[e] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_modes(inst: &Instance) -> Vec<Solution> {
        [OracleMode::Enumerate, OracleMode::BranchAndBound, OracleMode::Auto]
            .iter()
            .map(|&mode| oracle_with(inst, OracleConfig { mode, max_edges: 24 }).unwrap())
            .collect()
    }

    #[test]
    fn star_multiway() {
        let inst = Instance::unweighted(4, [(0, 1), (0, 2), (0, 3)], [1, 2, 3], [(1, 2), (1, 3), (2, 3)]).unwrap();
        for sol in with_modes(&inst) {
            assert_eq!(sol.weight, Weight::finite(2));
            assert_eq!(sol.edges, vec![(0, 1), (0, 2)]);
        }
    }

    #[test]
    fn weighted_path() {
        let inst = Instance::new(3, [(0, 1, Weight::finite(5)), (1, 2, Weight::ONE)], [0, 2], [(0, 2)]).unwrap();
        for sol in with_modes(&inst) {
            assert_eq!(sol.edges, vec![(1, 2)]);
            assert_eq!(sol.weight, Weight::ONE);
        }
    }

    #[test]
    fn infinite_connection() {
        let inst = Instance::new(3, [(0, 1, Weight::INF), (1, 2, Weight::INF)], [0, 2], [(0, 2)]).unwrap();
        assert_eq!(oracle_min_multicut(&inst).unwrap_err(), Error::NoFiniteMulticut);
    }

    #[test]
    fn bound_is_enforced() {
        let edges: Vec<_> = (0..30).map(|i| (i, i + 1)).collect();
        let inst = Instance::unweighted(31, edges, [0, 30], [(0, 30)]).unwrap();
        assert_eq!(oracle_min_multicut(&inst).unwrap_err(), Error::OracleBound { edges: 30, bound: 24 });
    }

    #[test]
    fn no_demands_means_empty_cut() {
        let inst = Instance::unweighted(3, [(0, 1), (1, 2)], [0], []).unwrap();
        assert_eq!(oracle_min_multicut(&inst).unwrap(), Solution::empty());
    }

    #[test]
    fn ties_are_collected() {
        // 4-cycle, demand across: four minimum cuts of two edges.
        let inst = Instance::unweighted(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [0, 2], [(0, 2)]).unwrap();
        let all = all_minimum_multicuts(&inst, 24).unwrap();
        // Edge ids: 01=0, 03=1, 12=2, 23=3.
        assert_eq!(all, vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
    }
}
