//! Combinatorial drawings: a graph with a list of crossing edge pairs.

use super::dmp::embed;
use super::embedding::{Embedding, FaceId, Faces};
use crate::biclique::next_combination;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::instance::Instance;
use petgraph::unionfind::UnionFind;
use std::collections::BTreeMap;

/// Largest vertex count accepted by [`tiny_min_crossing_drawing`].
pub const TINY_DRAW_MAX_N: usize = 8;
/// Largest crossing budget accepted by [`tiny_min_crossing_drawing`].
pub const TINY_DRAW_MAX_CR: usize = 3;

/// An instance together with its crossing pairs (stored on the instance).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    instance: Instance,
}

impl Drawing {
    pub fn new(instance: Instance) -> Drawing {
        Drawing { instance }
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn crossing_pairs(&self) -> &[(EdgeId, EdgeId)] {
        self.instance.crossings()
    }

    /// Edges crossing at least one other edge, sorted.
    pub fn e_cr(&self) -> Vec<EdgeId> {
        crossing_edges(self.instance.crossings())
    }

    /// Number of crossing edges in this drawing.
    pub fn cr_bar(&self) -> usize {
        self.e_cr().len()
    }
}

pub fn crossing_edges(pairs: &[(EdgeId, EdgeId)]) -> Vec<EdgeId> {
    let mut e: Vec<EdgeId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    e.sort_unstable();
    e.dedup();
    e
}

/// The graph with every crossing replaced by a degree-4 vertex `n + i` for pair
/// `i`. `order[e]` lists the pairs crossing `e` in order from its lower endpoint.
fn planarization(g: &Graph, pairs: &[(EdgeId, EdgeId)], order: &BTreeMap<EdgeId, Vec<usize>>) -> Graph {
    let n = g.n();
    let mut edges = Vec::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match order.get(&e) {
            None => edges.push((u, v)),
            Some(seq) => {
                let mut prev = u;
                for &p in seq {
                    edges.push((prev, n + p));
                    prev = n + p;
                }
                edges.push((prev, v));
            }
        }
    }
    Graph::new(n + pairs.len(), edges)
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Canonical planar embedding of some planarization of the drawing, trying every
/// order of crossings along each edge. `None` when no order is planar.
pub fn realize(g: &Graph, pairs: &[(EdgeId, EdgeId)]) -> Option<(Graph, Embedding)> {
    let mut order: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        order.entry(a).or_default().push(i);
        order.entry(b).or_default().push(i);
    }
    let keys: Vec<EdgeId> = order.keys().copied().collect();
    loop {
        let p = planarization(g, pairs, &order);
        if let Some(emb) = embed(&p) {
            return Some((p, emb));
        }
        // Odometer over the permutations of each edge's crossing list.
        let mut advanced = false;
        for e in &keys {
            let seq = order.get_mut(e).unwrap();
            if next_permutation(seq) {
                advanced = true;
                break;
            }
            seq.sort_unstable();
        }
        if !advanced {
            return None;
        }
    }
}

/// The embedding of `G' = G \ E_cr` fixed by a drawing, with the faces that
/// contain crossings.
#[derive(Clone, Debug)]
pub struct CrossedFaces {
    /// `G'` on the vertex set of `G`.
    pub g_prime: Graph,
    /// Instance edge id of each `G'` edge.
    pub g_prime_edges: Vec<EdgeId>,
    pub embedding: Embedding,
    pub faces: Faces,
    /// Face of `G'` containing each crossing pair.
    pub pair_face: Vec<FaceId>,
    /// Sorted distinct faces containing a crossing.
    pub f_star: Vec<FaceId>,
}

/// Embedding of a planar instance: the `r` records when they form a complete
/// planar rotation system, the canonical embedding otherwise.
pub fn instance_embedding(inst: &Instance) -> Result<Embedding> {
    let g = inst.graph();
    let rot = inst.rotation();
    if (0..g.n()).all(|v| g.degree(v) == 0 || rot.contains_key(&v)) && g.m() > 0 {
        let rotation: Vec<Vec<VertexId>> = (0..g.n()).map(|v| rot.get(&v).cloned().unwrap_or_default()).collect();
        if let Ok(emb) = Embedding::new(g.clone(), rotation) {
            if emb.is_planar() {
                return Ok(emb);
            }
        }
    }
    embed(g).ok_or(Error::NonPlanar)
}

/// Fixes the embedding of `G'` and locates every crossing pair in one of its
/// faces.
///
/// Without crossings this is the instance embedding of `G`. Otherwise the
/// drawing is realized as a planar planarization (crossings become vertices),
/// `G'` inherits its rotation, and the faces of `G'` are the regions left after
/// erasing the crossing edges. Every crossing pair must then have all its
/// endpoints that lie on `G'` edges on the boundary of its face.
pub fn crossed_faces(drawing: &Drawing) -> Result<CrossedFaces> {
    let inst = drawing.instance();
    let g = inst.graph();
    let pairs = drawing.crossing_pairs();
    let e_cr = drawing.e_cr();
    let (g_prime, g_prime_edges) = g.filter_edges(|e| e_cr.binary_search(&e).is_err());
    if pairs.is_empty() {
        let embedding = instance_embedding(inst)?;
        let faces = embedding.faces();
        return Ok(CrossedFaces { g_prime, g_prime_edges, embedding, faces, pair_face: Vec::new(), f_star: Vec::new() });
    }
    let n = g.n();
    let (_, p_emb) = realize(g, pairs).ok_or_else(|| {
        let (a, b) = pairs[0];
        Error::InconsistentDrawing(format!("{:?} x {:?} has no planar realization", g.edge(a), g.edge(b)))
    })?;
    let rotation: Vec<Vec<VertexId>> =
        (0..n).map(|v| p_emb.rotation(v).iter().copied().filter(|&w| w < n && g_prime.has_edge(v, w)).collect()).collect();
    let embedding = Embedding::new(g_prime.clone(), rotation)?;

    // Regions of the planarization once crossing segments are erased.
    let p_faces = p_emb.faces();
    let p_walks = p_faces.walks();
    let mut uf = UnionFind::new(p_walks.len());
    for i in 0..p_walks.len() {
        for j in 0..i {
            if p_faces.face_of_walk(i) == p_faces.face_of_walk(j) {
                uf.union(i, j);
            }
        }
    }
    for &(u, v) in p_emb.graph().edges() {
        if u >= n || v >= n {
            uf.union(p_faces.walk_of_dart((u, v)), p_faces.walk_of_dart((v, u)));
        }
    }
    let region_of_walk = crate::graph::relabel(&uf, p_walks.len());

    let walks = embedding.walks();
    let mut face_of_region: BTreeMap<usize, FaceId> = BTreeMap::new();
    let mut group = Vec::with_capacity(walks.len());
    for walk in &walks {
        let region = region_of_walk[p_faces.walk_of_dart(walk[0])];
        if walk.iter().any(|&d| region_of_walk[p_faces.walk_of_dart(d)] != region) {
            return Err(Error::Internal("face walk of G' spans two regions".into()));
        }
        let next = face_of_region.len();
        group.push(*face_of_region.entry(region).or_insert(next));
    }
    let mut count = face_of_region.len();
    let mut pair_face = Vec::with_capacity(pairs.len());
    for i in 0..pairs.len() {
        let x = n + i;
        let region = region_of_walk[p_faces.walk_of_dart((x, p_emb.rotation(x)[0]))];
        let f = *face_of_region.entry(region).or_insert_with(|| {
            count += 1;
            count - 1
        });
        pair_face.push(f);
    }
    let faces = Faces::with_count(walks, group, count);

    for (i, &(a, b)) in pairs.iter().enumerate() {
        let boundary = faces.vertices(pair_face[i]);
        for v in [g.edge(a).0, g.edge(a).1, g.edge(b).0, g.edge(b).1] {
            if g_prime.degree(v) > 0 && boundary.binary_search(&v).is_err() {
                return Err(Error::InconsistentDrawing(format!("{:?} x {:?}: endpoint {v} not on the face", g.edge(a), g.edge(b))));
            }
        }
    }
    let mut f_star = pair_face.clone();
    f_star.sort_unstable();
    f_star.dedup();
    Ok(CrossedFaces { g_prime, g_prime_edges, embedding, faces, pair_face, f_star })
}

/// Pairs of edges without a common endpoint, in lexicographic order.
fn independent_pairs(g: &Graph) -> Vec<(EdgeId, EdgeId)> {
    let mut out = Vec::new();
    for a in 0..g.m() {
        for b in a + 1..g.m() {
            let ((p, q), (r, s)) = (g.edge(a), g.edge(b));
            if p != r && p != s && q != r && q != s {
                out.push((a, b));
            }
        }
    }
    out
}

/// A drawing with the fewest crossings, if that number is at most `max_cr`,
/// found by trying every set of crossing pairs and every order of crossings
/// along each edge.
pub fn tiny_min_crossing_drawing(inst: &Instance, max_cr: usize) -> Result<Option<Drawing>> {
    if inst.n() > TINY_DRAW_MAX_N {
        return Err(Error::SizeBound(format!("{} vertices exceed the tiny drawing bound {TINY_DRAW_MAX_N}", inst.n())));
    }
    if max_cr > TINY_DRAW_MAX_CR {
        return Err(Error::SizeBound(format!("crossing budget {max_cr} exceeds {TINY_DRAW_MAX_CR}")));
    }
    let g = inst.graph();
    let candidates = independent_pairs(g);
    for c in 0..=max_cr.min(candidates.len()) {
        let mut chosen: Vec<usize> = (0..c).collect();
        loop {
            let pairs: Vec<_> = chosen.iter().map(|&i| candidates[i]).collect();
            if realize(g, &pairs).is_some() {
                let with = inst.clone().with_crossings(pairs)?;
                return Ok(Some(Drawing::new(with)));
            }
            if !next_combination(&mut chosen, candidates.len()) {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;

    fn complete(n: usize) -> Instance {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Instance::unweighted(n, e, [], []).unwrap()
    }

    #[test]
    fn permutations() {
        let mut a = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut a) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(a, vec![2, 1, 0]);
    }

    #[test]
    fn no_crossings_no_crossed_faces() {
        let inst = Instance::unweighted(3, [(0, 1), (1, 2), (0, 2)], [], []).unwrap();
        let cf = crossed_faces(&Drawing::new(inst)).unwrap();
        assert!(cf.f_star.is_empty());
        assert_eq!(cf.faces.count(), 2);
    }

    #[test]
    fn k5_single_crossed_face() {
        let k5 = complete(5);
        let a = k5.edge_id(0, 2).unwrap();
        let b = k5.edge_id(1, 3).unwrap();
        let cf = crossed_faces(&Drawing::new(k5.with_crossings([(a, b)]).unwrap())).unwrap();
        assert_eq!(cf.f_star.len(), 1);
        assert_eq!(cf.g_prime.m(), 8);
        let boundary = cf.faces.vertices(cf.f_star[0]);
        for v in 0..4 {
            assert!(boundary.contains(&v));
        }
    }

    #[test]
    fn unrealizable_drawing_rejected() {
        // K5 needs a crossing; declaring one between two edges far from any
        // shared face of the rest still must realize, so use K3,3 plus a bogus pair.
        let mut e = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                e.push((u, v));
            }
        }
        e.push((0, 1));
        let inst = Instance::unweighted(6, e, [], []).unwrap();
        let a = inst.edge_id(0, 1).unwrap();
        let b = inst.edge_id(2, 3).unwrap();
        let err = crossed_faces(&Drawing::new(inst.with_crossings([(a, b)]).unwrap())).unwrap_err();
        assert!(err.to_string().contains("crossing pair not embeddable"), "{err}");
    }

    #[test]
    fn crossing_numbers() {
        let planar = Instance::unweighted(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [], []).unwrap();
        assert_eq!(tiny_min_crossing_drawing(&planar, 1).unwrap().unwrap().crossing_pairs().len(), 0);
        let k5 = tiny_min_crossing_drawing(&complete(5), 3).unwrap().unwrap();
        assert_eq!(k5.crossing_pairs().len(), 1);
        assert!(tiny_min_crossing_drawing(&complete(6), 1).unwrap().is_none());
        let k6 = tiny_min_crossing_drawing(&complete(6), 3).unwrap().unwrap();
        assert_eq!(k6.crossing_pairs().len(), 3);
        assert!(crossed_faces(&k6).is_ok());
    }
}
