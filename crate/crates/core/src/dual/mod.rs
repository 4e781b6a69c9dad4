//! Multicut duals, their structure (treewidth, domination) and the exact
//! subsolver used on planar pieces.

mod domination;
mod multicut_dual;
mod subsolver;
mod treewidth;

pub use domination::{dominating_check, multi_source_distances};
pub use multicut_dual::{
    dual_from_solution, minimalize_dual, remove_crossed_faces, DualEdge, DualEdgeKind, DualFaces, DualMask, DualVertex, End, MulticutDual,
    PlaneGraph,
};
pub use subsolver::{maximal_groupings, planar_multicut_exact, SUBSOLVER_MAX_TERMINALS};
pub use treewidth::{treewidth_exact, TREEWIDTH_MAX_N};

use crate::graph::Graph;

/// The live dual plus one extra vertex per face, adjacent to the dual vertices
/// on that face. Returns the graph and, per face, its extra vertex.
pub fn face_augmented(dual: &MulticutDual, mask: &DualMask, faces: &DualFaces) -> (Graph, Vec<usize>) {
    let (g, keep) = dual.as_graph(mask);
    let base = g.n();
    let mut edges = g.edges().to_vec();
    for (i, &v) in keep.iter().enumerate() {
        for &f in &faces.vertex_faces[v] {
            edges.push((i, base + f));
        }
    }
    let face_vertex = (0..faces.count).map(|f| base + f).collect();
    (Graph::new(base + faces.count, edges), face_vertex)
}
