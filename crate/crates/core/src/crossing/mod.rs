//! Weighted multicut on graphs drawn with few crossings.
//!
//! Every subset `Z` of the crossing edges is tried as part of the cut. The
//! rest of the crossing edges become infinite ("normalized" instance), and the
//! normalized instance is solved on the planar remainder `G' = G \ E_cr` with
//! a complete multipartite demand graph on the terminals and the crossing
//! endpoints.

mod witness;

pub use witness::{build_witness, certified_witness, check_claims, ClaimReport, Witness};

use crate::biclique::extended_biclique_distance;
use crate::cuts::{check_finite_feasible, verify_multicut};
use crate::dual::planar_multicut_exact;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::instance::{keep_best, pair, Instance, Solution};
use crate::planar::{crossed_faces, Drawing};
use crate::weight::Weight;
use petgraph::unionfind::UnionFind;
use std::collections::BTreeSet;

/// Largest ground set `V(H) ∪ V(E_cr)` for candidate enumeration.
pub const CANDIDATE_GROUND_MAX: usize = 10;
/// Largest number of crossing edges (the solver tries all their subsets).
pub const CROSSING_MAX_ECR: usize = 12;

/// `G_Z`: deletes `Z` and makes the remaining crossing edges infinite.
pub fn normalize(drawing: &Drawing, z: &[EdgeId]) -> Result<Instance> {
    let e_cr = drawing.e_cr();
    if let Some(&e) = z.iter().find(|e| e_cr.binary_search(e).is_err()) {
        let edge = drawing.instance().edge(e);
        return Err(Error::Precondition(format!("edge ({}, {}) is not a crossing edge", edge.u, edge.v)));
    }
    let inst = drawing.instance().reweighted(|e, w| if e_cr.binary_search(&e).is_ok() { Weight::INF } else { w });
    Ok(inst.without_edges(z))
}

/// A complete multipartite demand graph given by its parts. `b1` and `b2` may
/// be empty; every X̄-group is non-empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DemandCandidate {
    pub b1: Vec<VertexId>,
    pub b2: Vec<VertexId>,
    pub x_groups: Vec<Vec<VertexId>>,
}

impl DemandCandidate {
    /// Non-empty parts.
    pub fn groups(&self) -> Vec<Vec<VertexId>> {
        let mut out: Vec<Vec<VertexId>> = [&self.b1, &self.b2].into_iter().filter(|g| !g.is_empty()).cloned().collect();
        out.extend(self.x_groups.iter().cloned());
        out
    }

    /// Edges of `H'`: every pair from different parts.
    pub fn h_prime(&self) -> Vec<(VertexId, VertexId)> {
        let groups = self.groups();
        let mut out = Vec::new();
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                for &a in &groups[i] {
                    for &b in &groups[j] {
                        out.push(pair(a, b));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn ground(&self) -> Vec<VertexId> {
        let mut g: Vec<VertexId> = self.groups().concat();
        g.sort_unstable();
        g
    }

    /// Sorted parts, X̄-groups sorted, and `b1 <= b2` (the swap gives the same `H'`).
    pub fn canonical(mut self) -> DemandCandidate {
        self.b1.sort_unstable();
        self.b2.sort_unstable();
        for g in &mut self.x_groups {
            g.sort_unstable();
        }
        self.x_groups.retain(|g| !g.is_empty());
        self.x_groups.sort();
        if self.b2 < self.b1 {
            std::mem::swap(&mut self.b1, &mut self.b2);
        }
        self
    }

    /// `(G', H')` where `g_prime` supplies the edges.
    pub fn instance_on(&self, g_prime: &Instance) -> Result<Instance> {
        let edges = g_prime.edges().iter().map(|e| (e.u, e.v, e.weight));
        Instance::new(g_prime.n(), edges, self.ground(), self.h_prime())
    }
}

/// Every split of `V_H ∪ V_Ecr` into `B̄1`, `B̄2` and any number of X̄-groups,
/// up to swapping `B̄1` and `B̄2`, in canonical order.
pub fn enumerate_demand_candidates(v_h: &[VertexId], v_ecr: &[VertexId]) -> Result<Vec<DemandCandidate>> {
    let ground: BTreeSet<VertexId> = v_h.iter().chain(v_ecr).copied().collect();
    let ground: Vec<VertexId> = ground.into_iter().collect();
    if ground.len() > CANDIDATE_GROUND_MAX {
        return Err(Error::SizeBound(format!("{} ground vertices exceed {CANDIDATE_GROUND_MAX}", ground.len())));
    }
    let mut out = BTreeSet::new();
    let mut cur = DemandCandidate { b1: Vec::new(), b2: Vec::new(), x_groups: Vec::new() };
    fn rec(i: usize, ground: &[VertexId], cur: &mut DemandCandidate, out: &mut BTreeSet<DemandCandidate>) {
        if i == ground.len() {
            out.insert(cur.clone().canonical());
            return;
        }
        let v = ground[i];
        cur.b1.push(v);
        rec(i + 1, ground, cur, out);
        cur.b1.pop();
        cur.b2.push(v);
        rec(i + 1, ground, cur, out);
        cur.b2.pop();
        for g in 0..cur.x_groups.len() {
            cur.x_groups[g].push(v);
            rec(i + 1, ground, cur, out);
            cur.x_groups[g].pop();
        }
        cur.x_groups.push(vec![v]);
        rec(i + 1, ground, cur, out);
        cur.x_groups.pop();
    }
    rec(0, &ground, &mut cur, &mut out);
    Ok(out.into_iter().collect())
}

/// Candidates tried by [`solve_normalized`]: partitions of the ground set that
/// keep vertices joined by infinite edges together, put the two ends of every
/// demand in different parts, and have at most `mu + 2` parts.
pub fn pruned_candidates(inst: &Instance, ground: &[VertexId], mu: usize) -> Vec<DemandCandidate> {
    let mut uf = UnionFind::new(inst.n());
    for e in inst.edges() {
        if e.weight.is_inf() {
            uf.union(e.u, e.v);
        }
    }
    let mut atoms: Vec<Vec<VertexId>> = Vec::new();
    let mut root_atom: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for &v in ground {
        let r = uf.find(v);
        let a = *root_atom.entry(r).or_insert_with(|| {
            atoms.push(Vec::new());
            atoms.len() - 1
        });
        atoms[a].push(v);
    }
    let mut atom_of = vec![usize::MAX; inst.n()];
    for (a, members) in atoms.iter().enumerate() {
        for &v in members {
            atom_of[v] = a;
        }
    }
    let k = atoms.len();
    let mut conflict = vec![vec![false; k]; k];
    for &(a, b) in inst.demands() {
        let (x, y) = (atom_of[a], atom_of[b]);
        if x != usize::MAX && y != usize::MAX {
            conflict[x][y] = true;
            conflict[y][x] = true;
        }
    }
    let max_blocks = mu + 2;
    let mut out = Vec::new();
    let mut block = vec![0usize; k];
    fn rec(
        i: usize,
        used: usize,
        max_blocks: usize,
        conflict: &[Vec<bool>],
        block: &mut Vec<usize>,
        atoms: &[Vec<VertexId>],
        out: &mut Vec<DemandCandidate>,
    ) {
        if i == atoms.len() {
            let mut parts = vec![Vec::new(); used];
            for (a, &b) in block.iter().enumerate() {
                parts[b].extend_from_slice(&atoms[a]);
            }
            let mut parts = parts.into_iter();
            let b1 = parts.next().unwrap_or_default();
            let b2 = parts.next().unwrap_or_default();
            out.push(DemandCandidate { b1, b2, x_groups: parts.collect() }.canonical());
            return;
        }
        for b in 0..(used + 1).min(max_blocks) {
            if (0..i).any(|j| block[j] == b && conflict[i][j]) {
                continue;
            }
            block[i] = b;
            rec(i + 1, used.max(b + 1), max_blocks, conflict, block, atoms, out);
        }
    }
    rec(0, 0, max_blocks, &conflict, &mut block, &atoms, &mut out);
    out
}

/// Counters from a normalized solve.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalizedStats {
    pub candidates: usize,
    /// Candidates whose solution is a multicut of the input.
    pub verified: usize,
}

/// Minimum multicut of an instance whose crossing edges are all infinite.
pub fn solve_normalized(inst: &Instance) -> Result<Solution> {
    Ok(solve_normalized_with(inst)?.0)
}

pub fn solve_normalized_with(inst: &Instance) -> Result<(Solution, NormalizedStats)> {
    let drawing = Drawing::new(inst.clone());
    let e_cr = drawing.e_cr();
    if let Some(&e) = e_cr.iter().find(|&&e| inst.weight(e).is_finite()) {
        let edge = inst.edge(e);
        return Err(Error::Precondition(format!("crossing edge ({}, {}) has finite weight", edge.u, edge.v)));
    }
    check_finite_feasible(inst)?;
    crossed_faces(&drawing)?;
    let mut stats = NormalizedStats::default();
    let h = inst.without_idle_terminals().demand_graph();
    if h.is_edgeless() {
        return Ok((Solution::empty(), stats));
    }
    let mut ground: BTreeSet<VertexId> = h.vertices.iter().copied().collect();
    for &e in &e_cr {
        let edge = inst.edge(e);
        ground.insert(edge.u);
        ground.insert(edge.v);
    }
    let ground: Vec<VertexId> = ground.into_iter().collect();
    if ground.len() > CANDIDATE_GROUND_MAX {
        return Err(Error::SizeBound(format!("{} ground vertices exceed {CANDIDATE_GROUND_MAX}", ground.len())));
    }
    let mu = extended_biclique_distance(&h).mu();
    let g_prime = inst.without_edges(&e_cr);
    let mut best: Option<Solution> = None;
    for cand in pruned_candidates(inst, &ground, mu) {
        stats.candidates += 1;
        let sub = cand.instance_on(&g_prime)?;
        let sol = match planar_multicut_exact(&sub) {
            Ok(s) => s,
            Err(Error::NoFiniteMulticut) => continue,
            Err(e) => return Err(e),
        };
        if best.as_ref().is_some_and(|b| sol.weight > b.weight) {
            continue;
        }
        if verify_multicut(inst, &sol.edge_ids(inst)?)? {
            stats.verified += 1;
            keep_best(&mut best, sol);
        }
    }
    Ok((best.ok_or(Error::NoFiniteMulticut)?, stats))
}

/// Counters from a crossing solve.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingReport {
    pub solution: Solution,
    pub cr_bar: usize,
    /// Subsets `Z` that were solved (others were skipped by weight).
    pub z_solved: usize,
    pub candidates: usize,
}

/// Minimum multicut of an instance with a drawing (its `x` records). Without
/// crossing records the graph must be planar.
pub fn solve_crossing(inst: &Instance) -> Result<Solution> {
    Ok(solve_crossing_with(inst)?.solution)
}

pub fn solve_crossing_with(inst: &Instance) -> Result<CrossingReport> {
    check_finite_feasible(inst)?;
    let drawing = Drawing::new(inst.clone());
    crossed_faces(&drawing)?;
    let e_cr = drawing.e_cr();
    if e_cr.len() > CROSSING_MAX_ECR {
        return Err(Error::SizeBound(format!("{} crossing edges exceed {CROSSING_MAX_ECR}", e_cr.len())));
    }
    let mut report = CrossingReport { cr_bar: e_cr.len(), ..Default::default() };
    let mut best: Option<Solution> = None;
    for mask in 0u32..1 << e_cr.len() {
        let z: Vec<EdgeId> = (0..e_cr.len()).filter(|&i| mask >> i & 1 == 1).map(|i| e_cr[i]).collect();
        let wz = inst.weight_of(&z);
        if wz.is_inf() || best.as_ref().is_some_and(|b| wz > b.weight) {
            continue;
        }
        let g_z = normalize(&drawing, &z)?;
        report.z_solved += 1;
        let (s_z, stats) = match solve_normalized_with(&g_z) {
            Ok(r) => r,
            Err(Error::NoFiniteMulticut) => continue,
            Err(e) => return Err(e),
        };
        report.candidates += stats.candidates;
        let cand = s_z.union(&Solution::from_edge_ids(inst, &z), inst)?;
        if verify_multicut(inst, &cand.edge_ids(inst)?)? {
            keep_best(&mut best, cand);
        }
    }
    report.solution = best.ok_or(Error::NoFiniteMulticut)?;
    Ok(report)
}
