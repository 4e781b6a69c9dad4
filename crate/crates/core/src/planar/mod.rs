//! Planarity testing, embeddings and faces, planarizing edge sets and drawings.

pub mod dmp;
pub mod drawing;
pub mod embedding;
pub mod planarize;

pub use dmp::{embed, is_planar, planarity_check, Kuratowski, KuratowskiKind, Planarity};
pub use drawing::{crossed_faces, instance_embedding, tiny_min_crossing_drawing, CrossedFaces, Drawing, TINY_DRAW_MAX_CR, TINY_DRAW_MAX_N};
pub use embedding::{faces_and_dual, Dart, Embedding, FaceId, Faces};
pub use planarize::{find_planarizing_edges, PI_MAX_BOUND};
