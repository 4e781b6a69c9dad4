//! The demand candidate built from a known optimum, and the structural checks
//! on its multicut duals.

use super::DemandCandidate;
use crate::biclique::{extended_biclique_distance, BicliqueDecomposition};
use crate::cuts::{all_minimum_multicuts, verify_multicut};
use crate::dual::{
    dominating_check, dual_from_solution, face_augmented, minimalize_dual, planar_multicut_exact, remove_crossed_faces, treewidth_exact,
    PlaneGraph,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::instance::{Instance, Solution};
use crate::planar::{crossed_faces, Drawing};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The optimum `S*` the candidate was read from.
    pub cut: Vec<EdgeId>,
    pub decomposition: BicliqueDecomposition,
    pub candidate: DemandCandidate,
    /// Ground vertices in a component of `G \ S*` with a terminal of `X`.
    pub x_bar: Vec<VertexId>,
}

/// Reads `H'` off the components of `G \ cut`: one X̄-group per component
/// holding an `X` terminal; otherwise a component goes to `B̄1` if it holds a
/// `B1` terminal or only `I` terminals, and to `B̄2` else.
pub fn build_witness(inst: &Instance, cut: &[EdgeId], dec: &BicliqueDecomposition) -> Witness {
    let drawing = Drawing::new(inst.clone());
    let mut ground: Vec<VertexId> = dec.b1.iter().chain(&dec.b2).chain(&dec.i).chain(&dec.x).copied().collect();
    for e in drawing.e_cr() {
        let edge = inst.edge(e);
        ground.extend([edge.u, edge.v]);
    }
    ground.sort_unstable();
    ground.dedup();
    let removed: Vec<EdgeId> = cut.to_vec();
    let labels = inst.graph().component_labels_where(|e| !removed.contains(&e));
    let comp_has = |set: &[VertexId], c: usize| set.iter().any(|&v| labels[v] == c);
    let mut x_groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    let (mut b1, mut b2, mut x_bar) = (Vec::new(), Vec::new(), Vec::new());
    for &v in &ground {
        let c = labels[v];
        if comp_has(&dec.x, c) {
            x_groups.entry(c).or_default().push(v);
            x_bar.push(v);
        } else if comp_has(&dec.b1, c) || (!comp_has(&dec.b2, c) && comp_has(&dec.i, c)) {
            b1.push(v);
        } else {
            b2.push(v);
        }
    }
    let candidate = DemandCandidate { b1, b2, x_groups: x_groups.into_values().collect() }.canonical();
    Witness { cut: cut.to_vec(), decomposition: dec.clone(), candidate, x_bar }
}

/// The witness from the optimum with the fewest X̄ vertices (first in
/// lexicographic order among those).
pub fn certified_witness(inst: &Instance, max_edges: usize) -> Result<Witness> {
    let h = inst.without_idle_terminals().demand_graph();
    let dec = extended_biclique_distance(&h);
    let mut best: Option<Witness> = None;
    for cut in all_minimum_multicuts(inst, max_edges)? {
        let w = build_witness(inst, &cut, &dec);
        if best.as_ref().is_none_or(|b| w.x_bar.len() < b.x_bar.len()) {
            best = Some(w);
        }
    }
    best.ok_or(Error::NoFiniteMulticut)
}

/// Outcome of the structural checks on one normalized instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimReport {
    pub mu: usize,
    pub f_star: usize,
    /// `S*` separates `H'` inside `G'`.
    pub optimum_cuts_candidate: bool,
    /// The subsolver's optimum for `(G', H')` is a multicut of `(G, H')`.
    pub candidate_cut_lifts: bool,
    /// It is also a minimum multicut of `(G, H)`.
    pub candidate_cut_optimal: bool,
    pub duals_checked: usize,
    /// X̄ vertices whose face of `C - F*` has no `X` terminal.
    pub violations_face: usize,
    /// Degree-3 vertices of `C - F*` on no face with an X̄ vertex.
    pub violations_degree3: usize,
    /// Largest treewidth of `C - F*` over the checked duals.
    pub tw_max: Option<usize>,
    /// Size of the set of face vertices holding `X` terminals and whether it
    /// 5-dominates the face-augmented `C - F*`, for the first dual.
    pub dominating: Option<(usize, bool)>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.optimum_cuts_candidate
            && self.candidate_cut_lifts
            && self.candidate_cut_optimal
            && self.violations_face == 0
            && self.violations_degree3 == 0
    }
}

/// Checks the witness claims on a normalized instance whose `G'` is connected.
/// Every minimum multicut of `(G', H')` (at most `max_duals`) is turned into a
/// minimal subcubic dual `C` and `C - F*` is inspected.
pub fn check_claims(inst: &Instance, max_edges: usize, max_duals: usize) -> Result<ClaimReport> {
    let witness = certified_witness(inst, max_edges)?;
    let drawing = Drawing::new(inst.clone());
    let cf = crossed_faces(&drawing)?;
    let e_cr = drawing.e_cr();
    let g_prime = inst.without_edges(&e_cr);
    let sub = witness.candidate.instance_on(&g_prime)?;
    let h_prime = witness.candidate.h_prime();
    let optimum = Solution::from_edge_ids(inst, &witness.cut).weight;

    let mut report = ClaimReport { mu: witness.decomposition.mu(), f_star: cf.f_star.len(), ..Default::default() };
    let star = Solution::from_edge_ids(inst, &witness.cut);
    report.optimum_cuts_candidate = verify_multicut(&sub, &star.edge_ids(&sub)?)?;

    let s_prime = planar_multicut_exact(&sub)?;
    let lifted = Instance::new(inst.n(), inst.edges().iter().map(|e| (e.u, e.v, e.weight)), witness.candidate.ground(), h_prime.clone())?;
    report.candidate_cut_lifts = verify_multicut(&lifted, &s_prime.edge_ids(&lifted)?)?;
    report.candidate_cut_optimal = s_prime.weight == optimum && verify_multicut(inst, &s_prime.edge_ids(inst)?)?;

    let plane = PlaneGraph::new(cf.embedding.clone())?;
    let pg = plane.graph();
    let plane_id: BTreeMap<(VertexId, VertexId), EdgeId> = pg.edges().iter().enumerate().map(|(i, &(u, v))| ((u, v), i)).collect();
    let f_star: Vec<usize> =
        cf.f_star.iter().map(|&f| plane.faces.face_of_dart(cf.faces.walks()[cf.faces.walks_of_face(f)[0]][0])).collect();
    let x_terms = &witness.decomposition.x;
    for cut in all_minimum_multicuts(&sub, max_edges)?.into_iter().take(max_duals) {
        let ids: Vec<EdgeId> = cut
            .iter()
            .map(|&e| {
                let edge = sub.edge(e);
                plane_id.get(&(edge.u, edge.v)).copied().ok_or(Error::UnknownEdge(edge.u, edge.v))
            })
            .collect::<Result<_>>()?;
        let dual = minimalize_dual(&plane, &h_prime, &dual_from_solution(&plane, &h_prime, &ids)?)?;
        let mask = remove_crossed_faces(&plane, &dual, &f_star)?;
        let faces = dual.faces(&plane, &mask)?;
        report.duals_checked += 1;
        let x_faces: Vec<usize> = x_terms.iter().map(|&x| faces.primal_face[x]).collect();
        let xbar_faces: Vec<usize> = witness.x_bar.iter().map(|&v| faces.primal_face[v]).collect();
        report.violations_face += xbar_faces.iter().filter(|f| !x_faces.contains(f)).count();
        for c in 0..dual.vertices.len() {
            if mask.vertex_alive[c] && dual.degree(c, &mask) == 3 && !faces.vertex_faces[c].iter().any(|f| xbar_faces.contains(f)) {
                report.violations_degree3 += 1;
            }
        }
        let (g, _) = dual.as_graph(&mask);
        if let Ok(tw) = treewidth_exact(&g) {
            report.tw_max = Some(report.tw_max.map_or(tw, |t| t.max(tw)));
        }
        if report.dominating.is_none() {
            let (aug, face_vertex) = face_augmented(&dual, &mask, &faces);
            let mut z: Vec<usize> = x_faces.iter().map(|&f| face_vertex[f]).collect();
            z.sort_unstable();
            z.dedup();
            report.dominating = Some((z.len(), dominating_check(&aug, &z, 5)));
        }
    }
    Ok(report)
}
