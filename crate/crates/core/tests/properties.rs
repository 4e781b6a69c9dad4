mod common;

use common::{crossing_instance, kplanar_instance, planar_instance};
use multicut_core::biclique::{extended_biclique_distance, induced_demands};
use multicut_core::crossing::{check_claims, normalize};
use multicut_core::cuts::{check_finite_feasible, cut_distance, degree_of_set, lambda, oracle_min_multicut, relevant_set, verify_multicut};
use multicut_core::dual::{
    dominating_check, dual_from_solution, face_augmented, minimalize_dual, planar_multicut_exact, DualMask, PlaneGraph,
};
use multicut_core::format::{parse_instance, write_instance};
use multicut_core::gen::{generate, GenParams};
use multicut_core::planar::{embed, find_planarizing_edges, is_planar, Drawing, Embedding};
use multicut_core::states::{branch_incomplete, enumerate_initial_states, extends, is_complete, make_relevant, KPlanarContext, LawStats};
use multicut_core::{DemandGraph, Graph};
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |b| graph_from_bits(n, &b)))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Whether some rotation system satisfies Euler's formula.
fn planar_by_rotations(g: &Graph) -> bool {
    // Rotations are cyclic, so fix each list's first neighbor.
    let choices: Vec<Vec<Vec<usize>>> = (0..g.n())
        .map(|v| {
            let nb: Vec<usize> = g.adj(v).iter().map(|&(w, _)| w).collect();
            match nb.split_first() {
                None => vec![vec![]],
                Some((&h, rest)) => permutations(rest)
                    .into_iter()
                    .map(|mut p| {
                        p.insert(0, h);
                        p
                    })
                    .collect(),
            }
        })
        .collect();
    let mut idx = vec![0; g.n()];
    loop {
        let rot = (0..g.n()).map(|v| choices[v][idx[v]].clone()).collect();
        if Embedding::new(g.clone(), rot).unwrap().is_planar() {
            return true;
        }
        let mut v = 0;
        loop {
            if v == g.n() {
                return false;
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// `H` is a complete bipartite graph plus isolated vertices.
fn is_extended_biclique(h: &DemandGraph) -> bool {
    let active: Vec<usize> = h.vertices.iter().copied().filter(|&v| h.degree(v) > 0).collect();
    let Some(&a) = active.first() else { return true };
    let side_b: Vec<usize> = active.iter().copied().filter(|&v| h.has_edge(a, v)).collect();
    let side_a: Vec<usize> = active.iter().copied().filter(|v| !side_b.contains(v)).collect();
    side_a.iter().all(|&x| side_b.iter().all(|&y| h.has_edge(x, y))) && h.edges.len() == side_a.len() * side_b.len()
}

fn arb_demands(max_k: usize) -> impl Strategy<Value = DemandGraph> {
    (1..=max_k).prop_flat_map(|k| {
        prop::collection::vec(any::<bool>(), k * (k - 1) / 2).prop_map(move |b| {
            let g = graph_from_bits(k, &b);
            DemandGraph::new(0..k, g.edges().to_vec())
        })
    })
}

fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    (size - 1..m)
        .flat_map(|last| {
            subsets(last, size - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planarity_agrees_with_rotation_search(g in arb_graph(5)) {
        let planar = is_planar(&g);
        prop_assert_eq!(planar, planar_by_rotations(&g));
        prop_assert_eq!(embed(&g).is_some(), planar);
    }

    #[test]
    fn embeddings_satisfy_euler(g in arb_graph(8)) {
        if let Some(emb) = embed(&g) {
            let f = emb.faces().count().max(1) as i64;
            prop_assert_eq!(g.n() as i64 - g.m() as i64 + f, 1 + g.component_count() as i64);
        }
    }

    #[test]
    fn biclique_distance_properties(h in arb_demands(7), keep_bits in prop::collection::vec(any::<bool>(), 7)) {
        let dec = extended_biclique_distance(&h);
        prop_assert!(dec.mu() <= h.vertices.len());
        prop_assert_eq!(dec.mu() == 0, is_extended_biclique(&h));
        let rest: Vec<usize> = h.vertices.iter().copied().filter(|v| !dec.x.contains(v)).collect();
        prop_assert!(is_extended_biclique(&induced_demands(&h, &rest)));
        for &a in &dec.b1 {
            for &b in &dec.b2 {
                prop_assert!(h.has_edge(a, b));
            }
        }
        let keep: Vec<usize> = h.vertices.iter().copied().filter(|&v| keep_bits[v]).collect();
        prop_assert!(extended_biclique_distance(&induced_demands(&h, &keep)).mu() <= dec.mu());
    }

    #[test]
    fn instance_text_round_trips(seed in 0u64..5000, crossing in any::<bool>()) {
        let inst = if crossing { crossing_instance(seed) } else { kplanar_instance(seed) };
        if let Some(inst) = inst {
            let text = write_instance(&inst);
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(back.canonical_key(), inst.canonical_key());
            prop_assert_eq!(back.crossings(), inst.crossings());
            prop_assert_eq!(write_instance(&back), text);
        }
    }

    #[test]
    fn planarizing_sets_are_minimum(g in arb_graph(7)) {
        prop_assume!(g.m() <= 16);
        let found = find_planarizing_edges(&g, 2).unwrap();
        let works = |s: &[usize]| is_planar(&g.filter_edges(|e| !s.contains(&e)).0);
        match found {
            Some(s) => {
                prop_assert!(works(&s));
                for size in 0..s.len() {
                    prop_assert!(!subsets(g.m(), size).iter().any(|t| works(t)));
                }
                if g.is_connected() {
                    prop_assert!(g.filter_edges(|e| !s.contains(&e)).0.is_connected());
                }
            }
            None => {
                for size in 0..=2.min(g.m()) {
                    prop_assert!(!subsets(g.m(), size).iter().any(|t| works(t)));
                }
            }
        }
    }

    #[test]
    fn relevant_sets_are_minimum_cuts(g in arb_graph(8), y1_bits in 1u32..256, y2_bits in 0u32..256) {
        prop_assume!(g.is_connected());
        let n = g.n();
        let y1: Vec<usize> = (0..n).filter(|&v| y1_bits >> v & 1 == 1).collect();
        let y2: Vec<usize> = (0..n).filter(|&v| y2_bits >> v & 1 == 1 && !y1.contains(&v)).collect();
        prop_assume!(!y1.is_empty());
        let r = relevant_set(&g, &y1, &y2).unwrap();
        prop_assert!(y1.iter().all(|v| r.contains(v)));
        prop_assert!(y2.iter().all(|v| !r.contains(v)));
        prop_assert_eq!(degree_of_set(&g, &r), lambda(&g, &y1, &y2));
        // Growing the source side inside the relevant set changes nothing.
        prop_assert_eq!(relevant_set(&g, &r, &y2).unwrap(), r);
    }

    #[test]
    fn branching_raises_potential(seed in 0u64..2000) {
        let Some(inst) = kplanar_instance(seed) else { return Ok(()) };
        let pi = find_planarizing_edges(inst.graph(), 2).unwrap().unwrap();
        let ctx = KPlanarContext::new(inst, &pi).unwrap();
        let mut stats = LawStats::default();
        for p in enumerate_initial_states(&ctx).unwrap().into_iter().take(4) {
            let q = make_relevant(&ctx, &p, &mut stats).unwrap();
            prop_assert!(q.kappa() >= p.kappa());
            prop_assert!(extends(p.classes(), q.classes()));
            if !is_complete(&ctx, &q) {
                for child in branch_incomplete(&ctx, &q, &mut stats).unwrap() {
                    prop_assert!(child.kappa() > q.kappa());
                    prop_assert!(extends(q.classes(), child.classes()));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planar_subsolver_matches_oracle(seed in 0u64..5000) {
        let Some(inst) = planar_instance(seed) else { return Ok(()) };
        let want = oracle_min_multicut(&inst).unwrap();
        let got = planar_multicut_exact(&inst).unwrap();
        prop_assert_eq!(got.weight, want.weight);
        prop_assert!(verify_multicut(&inst, &got.edge_ids(&inst).unwrap()).unwrap());
    }

    #[test]
    fn minimum_cut_dual_round_trip(seed in 0u64..5000) {
        let Some(inst) = planar_instance(seed) else { return Ok(()) };
        let want = oracle_min_multicut(&inst).unwrap();
        let plane = PlaneGraph::new(embed(inst.graph()).unwrap()).unwrap();
        let dual = dual_from_solution(&plane, inst.demands(), &want.edge_ids(&inst).unwrap()).unwrap();
        let c = minimalize_dual(&plane, inst.demands(), &dual).unwrap();
        prop_assert_eq!(c.weight(|e| inst.weight(e)), want.weight);
        prop_assert!(verify_multicut(&inst, &c.crossed()).unwrap());
    }

    #[test]
    fn witness_duals_have_the_claimed_structure(seed in 0u64..5000) {
        let Some(inst) = crossing_instance(seed) else { return Ok(()) };
        let g = normalize(&Drawing::new(inst), &[]).unwrap();
        prop_assume!(check_finite_feasible(&g).is_ok());
        let r = check_claims(&g, 24, 2).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }
}

/// When every vertex is within cut distance 2 of `X` under a minimum cut, the
/// faces of its minimal dual that hold `X` terminals 5-dominate the
/// face-augmented dual.
#[test]
fn near_x_cuts_give_dominated_duals() {
    let mut premise = 0;
    for seed in 0..400u64 {
        let p =
            GenParams { seed, n: 5 + (seed % 4) as usize, t: 3 + (seed % 3) as usize, density: 0.5, max_weight: 3, ..GenParams::default() };
        let inst = generate(&p).unwrap();
        if inst.m() > common::MAX_EDGES || !inst.graph().is_connected() {
            continue;
        }
        let x = extended_biclique_distance(&inst.without_idle_terminals().demand_graph()).x;
        let s = oracle_min_multicut(&inst).unwrap().edge_ids(&inst).unwrap();
        if !(0..inst.n()).all(|v| cut_distance(inst.graph(), &s, &[v], &x).is_some_and(|d| d <= 2)) {
            continue;
        }
        premise += 1;
        let plane = PlaneGraph::new(embed(inst.graph()).unwrap()).unwrap();
        let c = minimalize_dual(&plane, inst.demands(), &dual_from_solution(&plane, inst.demands(), &s).unwrap()).unwrap();
        let mask = DualMask::full(&c);
        let faces = c.faces(&plane, &mask).unwrap();
        let (aug, face_vertex) = face_augmented(&c, &mask, &faces);
        let mut z: Vec<usize> = x.iter().map(|&v| face_vertex[faces.primal_face[v]]).collect();
        z.sort_unstable();
        z.dedup();
        assert!(z.len() <= x.len());
        assert!(dominating_check(&aug, &z, 5), "seed {seed}");
    }
    assert!(premise >= 20, "premise held only {premise} times");
}
