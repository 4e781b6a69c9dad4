//! Seeded generator of near-planar instances.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::instance::{pair, Instance};
use crate::planar::{embed, is_planar};
use crate::weight::Weight;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub const GEN_MAX_N: usize = 64;
pub const GEN_MAX_PI: usize = 4;
pub const GEN_MAX_CROSSINGS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub seed: u64,
    pub n: usize,
    /// Share of the edges a maximal planar graph could add beyond a spanning tree.
    pub density: f64,
    pub t: usize,
    /// Extra edges recorded as the planarizing set.
    pub pi: usize,
    /// Crossing pairs of chords drawn inside faces.
    pub crossings: usize,
    /// Weights are drawn from `1..=max_weight`.
    pub max_weight: u64,
    /// Chance that an edge is infinite (kept only while demands stay separable).
    pub inf_prob: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { seed: 1, n: 8, density: 0.3, t: 3, pi: 0, crossings: 0, max_weight: 1, inf_prob: 0.0 }
    }
}

impl GenParams {
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        if self.n < 2 || self.n > GEN_MAX_N {
            return bad(format!("n must be in 2..={GEN_MAX_N}"));
        }
        if self.pi > GEN_MAX_PI {
            return bad(format!("pi must be at most {GEN_MAX_PI}"));
        }
        if self.crossings > GEN_MAX_CROSSINGS {
            return bad(format!("crossings must be at most {GEN_MAX_CROSSINGS}"));
        }
        if self.pi > 0 && self.crossings > 0 {
            return bad("pi and crossings cannot both be set".into());
        }
        if self.t > self.n {
            return bad("more terminals than vertices".into());
        }
        if !(0.0..=1.0).contains(&self.density) || !(0.0..=1.0).contains(&self.inf_prob) {
            return bad("density and inf probability must lie in [0, 1]".into());
        }
        if self.max_weight == 0 || self.max_weight > Weight::MAX_FINITE {
            return bad("max weight must be positive".into());
        }
        Ok(())
    }
}

/// A connected instance: random spanning tree, random planar additions, then
/// either `pi` extra edges (listed as planarizing edges) or `crossings` pairs
/// of crossing chords. Identical parameters give identical instances.
pub fn generate(p: &GenParams) -> Result<Instance> {
    p.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.n;
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.insert(pair(order[i], parent));
    }
    let max_planar = if n >= 3 { 3 * n - 6 } else { 1 };
    let extra = ((max_planar - (n - 1)) as f64 * p.density).round() as usize;
    let mut candidates: Vec<(VertexId, VertexId)> = non_edges(n, &edges);
    candidates.shuffle(&mut rng);
    let mut added = 0;
    for c in candidates {
        if added == extra {
            break;
        }
        edges.insert(c);
        if is_planar(&graph_of(n, &edges)) {
            added += 1;
        } else {
            edges.remove(&c);
        }
    }

    let mut pi_pairs = Vec::new();
    if p.pi > 0 {
        let mut cands = non_edges(n, &edges);
        cands.shuffle(&mut rng);
        // Prefer edges that break planarity so the planarizing set matters.
        let (hard, easy): (Vec<_>, Vec<_>) = cands.into_iter().partition(|&c| {
            let mut e = edges.clone();
            e.insert(c);
            !is_planar(&graph_of(n, &e))
        });
        for c in hard.into_iter().chain(easy).take(p.pi) {
            edges.insert(c);
            pi_pairs.push(c);
        }
    }

    let mut crossing_pairs: Vec<((VertexId, VertexId), (VertexId, VertexId))> = Vec::new();
    if p.crossings > 0 {
        let emb = embed(&graph_of(n, &edges)).expect("base graph is planar");
        let mut walks: Vec<Vec<VertexId>> = emb.walks().into_iter().map(|w| w.into_iter().map(|(u, _)| u).collect()).collect();
        walks.shuffle(&mut rng);
        for walk in walks {
            if crossing_pairs.len() == p.crossings {
                break;
            }
            if let Some((a, b)) = chords_in(&walk, &edges, &mut rng) {
                edges.insert(a);
                edges.insert(b);
                crossing_pairs.push((a, b));
            }
        }
    }

    let mut verts: Vec<VertexId> = (0..n).collect();
    verts.shuffle(&mut rng);
    let mut terminals: Vec<VertexId> = verts[..p.t].to_vec();
    terminals.sort_unstable();
    let mut demands = Vec::new();
    for i in 0..terminals.len() {
        for j in i + 1..terminals.len() {
            if rng.random_bool(0.5) {
                demands.push((terminals[i], terminals[j]));
            }
        }
    }
    if demands.is_empty() && terminals.len() >= 2 {
        let i = rng.random_range(0..terminals.len() - 1);
        demands.push((terminals[i], terminals[i + 1]));
    }

    let edge_list: Vec<(VertexId, VertexId)> = edges.iter().copied().collect();
    let mut weights: Vec<Weight> = edge_list.iter().map(|_| Weight::finite(rng.random_range(1..=p.max_weight))).collect();
    if p.inf_prob > 0.0 {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
        for (i, &(u, v)) in edge_list.iter().enumerate() {
            if !rng.random_bool(p.inf_prob) {
                continue;
            }
            let mut trial = uf.clone();
            trial.union(u, v);
            if demands.iter().all(|&(a, b)| !trial.equiv(a, b)) {
                uf = trial;
                weights[i] = Weight::INF;
            }
        }
    }

    let inst = Instance::new(n, edge_list.iter().zip(&weights).map(|(&(u, v), &w)| (u, v, w)), terminals, demands)?;
    let id = |(u, v): (VertexId, VertexId)| inst.edge_id(u, v).expect("generated edge");
    let pi_ids: Vec<_> = pi_pairs.into_iter().map(id).collect();
    let cr_ids: Vec<_> = crossing_pairs.into_iter().map(|(a, b)| (id(a), id(b))).collect();
    inst.with_pi_edges(pi_ids).with_crossings(cr_ids)
}

fn graph_of(n: usize, edges: &BTreeSet<(VertexId, VertexId)>) -> Graph {
    Graph::new(n, edges.iter().copied().collect())
}

fn non_edges(n: usize, edges: &BTreeSet<(VertexId, VertexId)>) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Two new chords `a-c` and `b-d` between four distinct vertices met in the
/// order `a, b, c, d` along a face walk; such chords must cross.
fn chords_in(
    walk: &[VertexId],
    edges: &BTreeSet<(VertexId, VertexId)>,
    rng: &mut ChaCha8Rng,
) -> Option<((VertexId, VertexId), (VertexId, VertexId))> {
    let mut distinct: Vec<VertexId> = Vec::new();
    for &v in walk {
        if !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    // A vertex repeated on the walk is a cut vertex; only use simple walks.
    if distinct.len() != walk.len() || walk.len() < 4 {
        return None;
    }
    let k = walk.len();
    let mut options = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for m in l + 1..k {
                    let ac = pair(walk[i], walk[l]);
                    let bd = pair(walk[j], walk[m]);
                    if !edges.contains(&ac) && !edges.contains(&bd) {
                        options.push((ac, bd));
                    }
                }
            }
        }
    }
    if options.is_empty() {
        return None;
    }
    Some(options[rng.random_range(0..options.len())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_instance;
    use crate::planar::{crossed_faces, find_planarizing_edges, Drawing};

    #[test]
    fn deterministic() {
        let p = GenParams { seed: 7, n: 10, t: 4, pi: 2, ..Default::default() };
        assert_eq!(write_instance(&generate(&p).unwrap()), write_instance(&generate(&p).unwrap()));
        let q = GenParams { seed: 8, ..p.clone() };
        assert_ne!(write_instance(&generate(&p).unwrap()), write_instance(&generate(&q).unwrap()));
    }

    #[test]
    fn bounds() {
        assert!(generate(&GenParams { pi: 5, ..Default::default() }).is_err());
        assert!(generate(&GenParams { crossings: 4, ..Default::default() }).is_err());
        assert!(generate(&GenParams { n: 65, ..Default::default() }).is_err());
    }

    #[test]
    fn structure() {
        for seed in 0..20 {
            let p = GenParams { seed, n: 9, t: 3, pi: 2, ..Default::default() };
            let inst = generate(&p).unwrap();
            assert!(inst.graph().is_connected());
            assert_eq!(inst.pi_edges().len(), 2);
            let (rest, _) = inst.graph().filter_edges(|e| !inst.pi_edges().contains(&e));
            assert!(is_planar(&rest));
            assert!(find_planarizing_edges(inst.graph(), 2).unwrap().is_some());

            let c = GenParams { seed, n: 9, t: 3, crossings: 2, max_weight: 5, inf_prob: 0.2, ..Default::default() };
            let inst = generate(&c).unwrap();
            let cf = crossed_faces(&Drawing::new(inst.clone())).unwrap();
            assert!(cf.g_prime.is_connected());
            assert!(crate::cuts::check_finite_feasible(&inst).is_ok());
        }
    }
}
