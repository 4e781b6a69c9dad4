//! Multicut duals drawn over a connected plane graph.
//!
//! A dual vertex sits inside a face of `G` (its home). A crossing dual edge
//! crosses exactly one primal edge once; an artificial edge stays inside one
//! face and crosses nothing. Faces of a dual are found on the overlay map of
//! `G` and the dual (crossing points become degree-4 vertices), by merging
//! overlay faces across primal segments.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::planar::{Embedding, FaceId, Faces};
use petgraph::unionfind::UnionFind;
use std::collections::HashMap;

/// A connected graph with a fixed planar embedding.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    pub embedding: Embedding,
    pub faces: Faces,
}

impl PlaneGraph {
    pub fn new(embedding: Embedding) -> Result<PlaneGraph> {
        if !embedding.graph().is_connected() {
            return Err(Error::Precondition("multicut duals need a connected plane graph".into()));
        }
        if !embedding.is_planar() {
            return Err(Error::NonPlanar);
        }
        let faces = embedding.faces();
        Ok(PlaneGraph { embedding, faces })
    }

    pub fn graph(&self) -> &Graph {
        self.embedding.graph()
    }

    /// Side of dart `(u, v)` relative to the stored orientation of its edge.
    fn side(&self, e: EdgeId, u: VertexId) -> usize {
        usize::from(self.graph().edge(e).0 != u)
    }

    fn edge_between(&self, u: VertexId, v: VertexId) -> EdgeId {
        self.graph().adj(u).iter().find(|&&(w, _)| w == v).expect("dart of an edge").1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualEdgeKind {
    /// Crosses this primal edge once.
    Crossing(EdgeId),
    /// Crosses nothing.
    Artificial,
}

/// `ends[0]`, `ends[1]` are dual vertices. For `Crossing(e)` with `e = (u, v)`
/// as stored, `ends[0]` lies in the face of dart `(u, v)` and `ends[1]` in the
/// face of dart `(v, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub ends: [usize; 2],
    pub kind: DualEdgeKind,
}

/// One end of a dual edge: `(edge, side)`.
pub type End = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVertex {
    pub home: FaceId,
    /// Incident ends in rotation order.
    pub rotation: Vec<End>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MulticutDual {
    pub vertices: Vec<DualVertex>,
    pub edges: Vec<DualEdge>,
}

/// Faces of a dual (or of a dual with some parts removed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFaces {
    pub count: usize,
    /// Face containing each primal vertex.
    pub primal_face: Vec<usize>,
    /// Faces incident to each dual vertex, sorted; empty for removed vertices.
    pub vertex_faces: Vec<Vec<usize>>,
}

impl DualFaces {
    pub fn separates(&self, demands: &[(VertexId, VertexId)]) -> bool {
        demands.iter().all(|&(a, b)| self.primal_face[a] != self.primal_face[b])
    }
}

/// Live parts of a dual: used both for greedy deletion and for `C - F*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMask {
    pub vertex_alive: Vec<bool>,
    pub edge_alive: Vec<bool>,
}

impl DualMask {
    pub fn full(d: &MulticutDual) -> DualMask {
        DualMask { vertex_alive: vec![true; d.vertices.len()], edge_alive: vec![true; d.edges.len()] }
    }
}

impl MulticutDual {
    /// Primal edges crossed by the dual, sorted: `e_G(C)`.
    pub fn crossed(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .edges
            .iter()
            .filter_map(|e| match e.kind {
                DualEdgeKind::Crossing(p) => Some(p),
                DualEdgeKind::Artificial => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn degree(&self, v: usize, mask: &DualMask) -> usize {
        self.vertices[v].rotation.iter().filter(|&&(e, _)| mask.edge_alive[e]).count()
    }

    /// Checks homes and rotations against the plane graph.
    pub fn validate(&self, plane: &PlaneGraph) -> Result<()> {
        let mut seen = vec![[false; 2]; self.edges.len()];
        for (v, dv) in self.vertices.iter().enumerate() {
            if dv.home >= plane.faces.count() {
                return Err(Error::Precondition(format!("dual vertex {v} has unknown home face {}", dv.home)));
            }
            for &(e, s) in &dv.rotation {
                if e >= self.edges.len() || s > 1 || self.edges[e].ends[s] != v || seen[e][s] {
                    return Err(Error::Precondition(format!("dual vertex {v} has a bad rotation")));
                }
                seen[e][s] = true;
            }
        }
        if seen.iter().any(|s| !s[0] || !s[1]) {
            return Err(Error::Precondition("dual edge end missing from rotations".into()));
        }
        let mut crossed = HashMap::new();
        for (j, de) in self.edges.iter().enumerate() {
            let (h0, h1) = (self.vertices[de.ends[0]].home, self.vertices[de.ends[1]].home);
            match de.kind {
                DualEdgeKind::Artificial => {
                    if h0 != h1 {
                        return Err(Error::Precondition(format!("artificial dual edge {j} leaves its face")));
                    }
                }
                DualEdgeKind::Crossing(p) => {
                    let (u, v) = plane.graph().edge(p);
                    if h0 != plane.faces.face_of_dart((u, v)) || h1 != plane.faces.face_of_dart((v, u)) {
                        return Err(Error::Precondition(format!("dual edge {j} does not cross edge {p} between its faces")));
                    }
                    if crossed.insert(p, j).is_some() {
                        return Err(Error::Precondition(format!("primal edge {p} crossed twice")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Faces of the live part of the dual.
    pub fn faces(&self, plane: &PlaneGraph, mask: &DualMask) -> Result<DualFaces> {
        let overlay = Overlay::build(plane, self)?;
        let mut uf = UnionFind::new(overlay.face_count);
        for h in 0..overlay.half.len() {
            let merge = match overlay.half[h].owner {
                Owner::Primal => true,
                Owner::Dual(j) => !mask.edge_alive[j],
            };
            if merge {
                uf.union(overlay.face[h], overlay.face[h ^ 1]);
            }
        }
        let labels = crate::graph::relabel(&uf, overlay.face_count);
        let count = labels.iter().map(|&l| l + 1).max().unwrap_or(1).max(1);
        let n = plane.graph().n();
        let primal_face = (0..n).map(|v| overlay.rot[v].first().map_or(0, |&h| labels[overlay.face[h]])).collect();
        let vertex_faces = (0..self.vertices.len())
            .map(|c| {
                if !mask.vertex_alive[c] {
                    return Vec::new();
                }
                let mut fs: Vec<usize> = overlay.rot[n + c].iter().map(|&h| labels[overlay.face[h]]).collect();
                fs.sort_unstable();
                fs.dedup();
                fs
            })
            .collect();
        Ok(DualFaces { count, primal_face, vertex_faces })
    }

    /// The dual with dead edges and vertices dropped (and vertices left without
    /// edges), renumbered in order.
    pub fn compact(&self, mask: &DualMask) -> MulticutDual {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (j, e) in self.edges.iter().enumerate() {
            if mask.edge_alive[j] && mask.vertex_alive[e.ends[0]] && mask.vertex_alive[e.ends[1]] {
                emap[j] = edges.len();
                edges.push(*e);
            }
        }
        let mut vertices = Vec::new();
        for (v, dv) in self.vertices.iter().enumerate() {
            let rotation: Vec<End> = dv.rotation.iter().filter(|&&(e, _)| emap[e] != usize::MAX).map(|&(e, s)| (emap[e], s)).collect();
            if mask.vertex_alive[v] && !rotation.is_empty() {
                vmap[v] = vertices.len();
                vertices.push(DualVertex { home: dv.home, rotation });
            }
        }
        for e in &mut edges {
            e.ends = [vmap[e.ends[0]], vmap[e.ends[1]]];
        }
        MulticutDual { vertices, edges }
    }

    /// Weight of the crossed primal edges.
    pub fn weight(&self, weight_of: impl Fn(EdgeId) -> crate::weight::Weight) -> crate::weight::Weight {
        self.crossed().into_iter().map(weight_of).sum()
    }

    /// The live dual as an abstract graph (vertices renumbered in order).
    pub fn as_graph(&self, mask: &DualMask) -> (Graph, Vec<usize>) {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut keep = Vec::new();
        for v in 0..self.vertices.len() {
            if mask.vertex_alive[v] {
                vmap[v] = keep.len();
                keep.push(v);
            }
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, e)| mask.edge_alive[j] && mask.vertex_alive[e.ends[0]] && mask.vertex_alive[e.ends[1]])
            .map(|(_, e)| (vmap[e.ends[0]], vmap[e.ends[1]]))
            .collect();
        (Graph::new(keep.len(), edges), keep)
    }
}

#[derive(Clone, Copy, Debug)]
enum Owner {
    Primal,
    Dual(usize),
}

#[derive(Clone, Copy, Debug)]
struct Half {
    owner: Owner,
}

/// Overlay of the primal graph and a dual. Half-edges come in twin pairs
/// `(h, h ^ 1)`. Vertices: primal `0..n`, dual `n..n+k`, then crossing points.
struct Overlay {
    half: Vec<Half>,
    rot: Vec<Vec<usize>>,
    face: Vec<usize>,
    face_count: usize,
}

impl Overlay {
    fn build(plane: &PlaneGraph, dual: &MulticutDual) -> Result<Overlay> {
        dual.validate(plane)?;
        let g = plane.graph();
        let n = g.n();
        let k = dual.vertices.len();
        let mut crossing_of = vec![usize::MAX; g.m()];
        for (j, de) in dual.edges.iter().enumerate() {
            if let DualEdgeKind::Crossing(p) = de.kind {
                crossing_of[p] = j;
            }
        }
        let crossing_count = crossing_of.iter().filter(|&&j| j != usize::MAX).count();
        let total = n + k + crossing_count;
        let mut half: Vec<Half> = Vec::new();
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); total];
        // Endpoints are implied by where the half-edges sit in `rot`.
        let add_pair = |half: &mut Vec<Half>, _a: usize, _b: usize, owner: Owner| -> usize {
            let h = half.len();
            half.push(Half { owner });
            half.push(Half { owner });
            h
        };
        // Outgoing half-edge at primal vertex v toward neighbor w.
        let mut primal_out: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        let mut end_half: HashMap<End, usize> = HashMap::new();
        let mut next_x = n + k;
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let j = crossing_of[e];
            if j == usize::MAX {
                let h = add_pair(&mut half, u, v, Owner::Primal);
                primal_out.insert((u, v), h);
                primal_out.insert((v, u), h + 1);
                continue;
            }
            let x = next_x;
            next_x += 1;
            let [a, b] = dual.edges[j].ends;
            let hu = add_pair(&mut half, u, x, Owner::Primal);
            let hv = add_pair(&mut half, x, v, Owner::Primal);
            let ha = add_pair(&mut half, n + a, x, Owner::Dual(j));
            let hb = add_pair(&mut half, x, n + b, Owner::Dual(j));
            primal_out.insert((u, v), hu);
            primal_out.insert((v, u), hv + 1);
            end_half.insert((j, 0), ha);
            end_half.insert((j, 1), hb + 1);
            rot[x] = vec![hu + 1, ha + 1, hv, hb];
        }
        for (j, de) in dual.edges.iter().enumerate() {
            if de.kind == DualEdgeKind::Artificial {
                let [a, b] = de.ends;
                let h = add_pair(&mut half, n + a, n + b, Owner::Dual(j));
                end_half.insert((j, 0), h);
                end_half.insert((j, 1), h + 1);
            }
        }
        for v in 0..n {
            rot[v] = plane.embedding.rotation(v).iter().map(|&w| primal_out[&(v, w)]).collect();
        }
        for (c, dv) in dual.vertices.iter().enumerate() {
            rot[n + c] = dv.rotation.iter().map(|end| end_half[end]).collect();
        }

        // next_around[h]: the half-edge after h in the rotation at its origin.
        let mut next_around = vec![usize::MAX; half.len()];
        for r in &rot {
            for i in 0..r.len() {
                next_around[r[i]] = r[(i + 1) % r.len()];
            }
        }
        let mut face = vec![usize::MAX; half.len()];
        let mut face_count = 0;
        for start in 0..half.len() {
            if face[start] != usize::MAX {
                continue;
            }
            let mut h = start;
            while face[h] == usize::MAX {
                face[h] = face_count;
                h = next_around[h ^ 1];
            }
            face_count += 1;
        }

        let used_vertices = rot.iter().filter(|r| !r.is_empty()).count();
        let pairs = half.len() / 2;
        if used_vertices as i64 - pairs as i64 + face_count.max(1) as i64 != 2 && pairs > 0 {
            return Err(Error::Internal("overlay of graph and dual is not a connected plane map".into()));
        }
        Ok(Overlay { half, rot, face, face_count: face_count.max(1) })
    }
}

/// The dual of a multicut: one vertex per face of `G` incident to a cut edge,
/// one crossing dual edge per cut edge (in edge id order).
pub fn dual_from_solution(plane: &PlaneGraph, demands: &[(VertexId, VertexId)], cut: &[EdgeId]) -> Result<MulticutDual> {
    let g = plane.graph();
    let mut in_cut = vec![false; g.m()];
    for &e in cut {
        if e >= g.m() {
            return Err(Error::Precondition(format!("edge id {e} out of range")));
        }
        in_cut[e] = true;
    }
    let labels = g.component_labels_where(|e| !in_cut[e]);
    if demands.iter().any(|&(a, b)| labels[a] == labels[b]) {
        return Err(Error::NotAMulticut);
    }
    let faces = &plane.faces;
    let mut vertex_of_face = vec![usize::MAX; faces.count()];
    let mut vertices: Vec<DualVertex> = Vec::new();
    for f in 0..faces.count() {
        let walk = &faces.walks()[faces.walks_of_face(f)[0]];
        let mut rotation: Vec<End> = Vec::new();
        for &(u, v) in walk.iter().rev() {
            let e = plane.edge_between(u, v);
            if in_cut[e] {
                rotation.push((e, plane.side(e, u)));
            }
        }
        if !rotation.is_empty() {
            vertex_of_face[f] = vertices.len();
            vertices.push(DualVertex { home: f, rotation });
        }
    }
    // Ends currently hold primal edge ids; renumber to dual edge ids.
    let mut dual_id = vec![usize::MAX; g.m()];
    let mut edges = Vec::new();
    for e in 0..g.m() {
        if in_cut[e] {
            let (u, v) = g.edge(e);
            dual_id[e] = edges.len();
            edges.push(DualEdge {
                ends: [vertex_of_face[faces.face_of_dart((u, v))], vertex_of_face[faces.face_of_dart((v, u))]],
                kind: DualEdgeKind::Crossing(e),
            });
        }
    }
    for dv in &mut vertices {
        for end in &mut dv.rotation {
            end.0 = dual_id[end.0];
        }
    }
    let dual = MulticutDual { vertices, edges };
    dual.validate(plane)?;
    Ok(dual)
}

/// Makes a dual inclusion-wise minimal and subcubic.
///
/// Edges are dropped greedily in id order while all demands stay separated.
/// Every vertex of degree above three is then split into a chain of degree-3
/// vertices joined by artificial edges, and artificial edges are again dropped
/// greedily. Dropping edges only merges faces, so earlier decisions stay valid.
pub fn minimalize_dual(plane: &PlaneGraph, demands: &[(VertexId, VertexId)], dual: &MulticutDual) -> Result<MulticutDual> {
    let mut mask = DualMask::full(dual);
    if !dual.faces(plane, &mask)?.separates(demands) {
        return Err(Error::Precondition("dual does not separate the demands".into()));
    }
    for j in 0..dual.edges.len() {
        mask.edge_alive[j] = false;
        if !dual.faces(plane, &mask)?.separates(demands) {
            mask.edge_alive[j] = true;
        }
    }
    let mut d = dual.compact(&mask);

    while let Some(z) = d.vertices.iter().position(|v| v.rotation.len() > 3) {
        let art = d.edges.len();
        let z2 = d.vertices.len();
        let rot = d.vertices[z].rotation.clone();
        // z2 takes the first two ends; z keeps the rest with the new edge in their place.
        d.edges.push(DualEdge { ends: [z2, z], kind: DualEdgeKind::Artificial });
        for &(e, s) in &rot[..2] {
            d.edges[e].ends[s] = z2;
        }
        let home = d.vertices[z].home;
        d.vertices.push(DualVertex { home, rotation: vec![(art, 0), rot[0], rot[1]] });
        let mut rest = vec![(art, 1)];
        rest.extend_from_slice(&rot[2..]);
        d.vertices[z].rotation = rest;
    }

    let mut mask = DualMask::full(&d);
    for j in 0..d.edges.len() {
        if d.edges[j].kind != DualEdgeKind::Artificial {
            continue;
        }
        mask.edge_alive[j] = false;
        if !d.faces(plane, &mask)?.separates(demands) {
            mask.edge_alive[j] = true;
        }
    }
    Ok(d.compact(&mask))
}

/// `C - F*`: drops dual vertices whose home is in `f_star` and dual edges with a
/// part inside such a face.
pub fn remove_crossed_faces(plane: &PlaneGraph, dual: &MulticutDual, f_star: &[FaceId]) -> Result<DualMask> {
    if let Some(&f) = f_star.iter().find(|&&f| f >= plane.faces.count()) {
        return Err(Error::Precondition(format!("face {f} is not a face of this embedding")));
    }
    let crossed = |v: usize| f_star.contains(&dual.vertices[v].home);
    let vertex_alive: Vec<bool> = (0..dual.vertices.len()).map(|v| !crossed(v)).collect();
    let edge_alive = dual.edges.iter().map(|e| vertex_alive[e.ends[0]] && vertex_alive[e.ends[1]]).collect();
    Ok(DualMask { vertex_alive, edge_alive })
}
