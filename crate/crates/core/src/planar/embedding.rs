//! Rotation systems, face walks and the face/dual structure derived from them.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use std::collections::{HashMap, HashSet};

pub type FaceId = usize;
pub type Dart = (VertexId, VertexId);

/// A combinatorial embedding of a simple graph: the cyclic order of neighbors
/// around each vertex. Faces are always derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    graph: Graph,
    rotation: Vec<Vec<VertexId>>,
}

impl Embedding {
    /// Builds an embedding after checking that `rotation[v]` lists each neighbor
    /// of `v` exactly once. Planarity is not checked here; see [`Embedding::is_planar`].
    pub fn new(graph: Graph, rotation: Vec<Vec<VertexId>>) -> Result<Embedding> {
        if rotation.len() != graph.n() {
            return Err(Error::Precondition("rotation system has the wrong vertex count".into()));
        }
        for (v, order) in rotation.iter().enumerate() {
            let mut a = order.clone();
            a.sort_unstable();
            let mut b: Vec<_> = graph.adj(v).iter().map(|&(w, _)| w).collect();
            b.sort_unstable();
            if a != b {
                return Err(Error::Precondition(format!("rotation at {v} does not match its neighbors")));
            }
        }
        Ok(Embedding { graph, rotation })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    /// The neighbor after `u` in the rotation at `v`.
    pub fn succ(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rotation[v];
        let i = r.iter().position(|&w| w == u).expect("u is a neighbor of v");
        r[(i + 1) % r.len()]
    }

    /// Face walks: dart `(u, v)` is followed by `(v, succ_v(u))`. Walks are
    /// listed in order of their first dart, scanning vertices and rotations in
    /// index order.
    pub fn walks(&self) -> Vec<Vec<Dart>> {
        let mut seen: HashSet<Dart> = HashSet::new();
        let mut walks = Vec::new();
        for u in 0..self.graph.n() {
            for &v in &self.rotation[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b) = (u, v);
                loop {
                    seen.insert((a, b));
                    walk.push((a, b));
                    let c = self.succ(b, a);
                    (a, b) = (b, c);
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                walks.push(walk);
            }
        }
        walks
    }

    /// Plane faces under the default placement of components: every component
    /// sits in the outer face of the others, and the outer walk of a component
    /// is the walk through the first dart of its lowest vertex.
    pub fn faces(&self) -> Faces {
        let walks = self.walks();
        let labels = self.graph.component_labels();
        let mut outer_of_comp: HashMap<usize, Dart> = HashMap::new();
        for v in 0..self.graph.n() {
            if let Some(&w) = self.rotation[v].first() {
                outer_of_comp.entry(labels[v]).or_insert((v, w));
            }
        }
        let outer_darts: Vec<Dart> = {
            let mut d: Vec<_> = outer_of_comp.into_values().collect();
            d.sort_unstable();
            d
        };
        let is_outer: Vec<bool> = walks.iter().map(|w| w.iter().any(|d| outer_darts.contains(d))).collect();
        let mut group = vec![usize::MAX; walks.len()];
        let mut next = 0;
        let mut outer_id = None;
        for i in 0..walks.len() {
            if is_outer[i] {
                let id = *outer_id.get_or_insert_with(|| {
                    next += 1;
                    next - 1
                });
                group[i] = id;
            } else {
                group[i] = next;
                next += 1;
            }
        }
        Faces::from_grouping(walks, group)
    }

    /// Euler check `n - m + f = 1 + c` with the plane face count.
    pub fn is_planar(&self) -> bool {
        let g = &self.graph;
        let faces = self.faces();
        let f = faces.count().max(1);
        g.n() as i64 - g.m() as i64 + f as i64 == 1 + g.component_count() as i64
    }

    /// The embedding restricted to the edges with `keep(e)`.
    pub fn restrict(&self, keep: impl Fn(EdgeId) -> bool) -> Embedding {
        let (sub, _) = self.graph.filter_edges(&keep);
        let rotation = (0..sub.n()).map(|v| self.rotation[v].iter().copied().filter(|&w| sub.has_edge(v, w)).collect()).collect();
        Embedding { graph: sub, rotation }
    }
}

/// Face structure of an embedding. A face may be bounded by several walks when
/// the graph is disconnected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    walks: Vec<Vec<Dart>>,
    face_of_walk: Vec<FaceId>,
    count: usize,
    dart_walk: HashMap<Dart, usize>,
}

impl Faces {
    /// `group[i]` is the face of walk `i`; face ids must be dense.
    pub fn from_grouping(walks: Vec<Vec<Dart>>, group: Vec<FaceId>) -> Faces {
        let count = group.iter().map(|&g| g + 1).max().unwrap_or(0);
        Faces::with_count(walks, group, count)
    }

    /// Like [`Faces::from_grouping`], allowing faces without boundary walks
    /// (ids at or above the largest used one).
    pub fn with_count(walks: Vec<Vec<Dart>>, group: Vec<FaceId>, count: usize) -> Faces {
        let mut dart_walk = HashMap::new();
        for (i, w) in walks.iter().enumerate() {
            for &d in w {
                dart_walk.insert(d, i);
            }
        }
        Faces { walks, face_of_walk: group, count, dart_walk }
    }

    /// Number of faces (an edgeless graph has none listed here).
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn walks(&self) -> &[Vec<Dart>] {
        &self.walks
    }

    pub fn walk_of_dart(&self, d: Dart) -> usize {
        self.dart_walk[&d]
    }

    pub fn face_of_dart(&self, d: Dart) -> FaceId {
        self.face_of_walk[self.dart_walk[&d]]
    }

    pub fn face_of_walk(&self, w: usize) -> FaceId {
        self.face_of_walk[w]
    }

    /// Walk ids bounding face `f`.
    pub fn walks_of_face(&self, f: FaceId) -> Vec<usize> {
        (0..self.walks.len()).filter(|&w| self.face_of_walk[w] == f).collect()
    }

    /// Sorted distinct vertices on the boundary of face `f`.
    pub fn vertices(&self, f: FaceId) -> Vec<VertexId> {
        let mut vs: Vec<_> = self.walks_of_face(f).into_iter().flat_map(|w| self.walks[w].iter().map(|&(u, _)| u)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Faces incident to vertex `v`, sorted.
    pub fn faces_at(&self, emb: &Embedding, v: VertexId) -> Vec<FaceId> {
        let mut fs: Vec<_> = emb.rotation(v).iter().map(|&w| self.face_of_dart((v, w))).collect();
        fs.sort_unstable();
        fs.dedup();
        fs
    }
}

/// The dual graph: one vertex per face, and dual edge `i` between the faces on
/// the two sides of primal edge `i`.
pub fn faces_and_dual(emb: &Embedding) -> (Faces, Graph) {
    let faces = emb.faces();
    let edges = emb.graph().edges().iter().map(|&(u, v)| (faces.face_of_dart((u, v)), faces.face_of_dart((v, u)))).collect();
    let dual = Graph::new(faces.count().max(1), edges);
    (faces, dual)
}
