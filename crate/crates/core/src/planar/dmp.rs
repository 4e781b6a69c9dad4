//! Planarity testing by path addition on biconnected blocks.
//!
//! Each block with a cycle is embedded incrementally: start from a cycle, and
//! repeatedly pick a fragment (bridge) of the block relative to the embedded
//! part, route a path of it through an admissible face, and split that face.
//! A fragment with no admissible face certifies non-planarity. Fragments with a
//! single admissible face are placed first.

use super::embedding::Embedding;
use crate::graph::{EdgeId, Graph, VertexId};
use std::collections::VecDeque;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 inside the tested graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    pub edges: Vec<EdgeId>,
    pub branch_vertices: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub enum Planarity {
    Planar(Embedding),
    NonPlanar(Kuratowski),
}

/// Tests a simple graph for planarity, returning an embedding or a Kuratowski
/// subdivision.
pub fn planarity_check(g: &Graph) -> Planarity {
    match embed(g) {
        Some(emb) => Planarity::Planar(emb),
        None => Planarity::NonPlanar(kuratowski(g)),
    }
}

pub fn is_planar(g: &Graph) -> bool {
    embed(g).is_some()
}

/// Canonical embedding of a planar graph, or `None`.
pub fn embed(g: &Graph) -> Option<Embedding> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for block in blocks(g) {
        let block_rot = if block.len() == 1 {
            let (u, v) = g.edge(block[0]);
            vec![(u, vec![v]), (v, vec![u])]
        } else {
            embed_block(g, &block)?
        };
        for (v, order) in block_rot {
            rotation[v].extend(order);
        }
    }
    let emb = Embedding::new(g.clone(), rotation).expect("rotation lists every neighbor");
    assert!(emb.is_planar(), "path addition produced a non-planar rotation");
    Some(emb)
}

/// Edge sets of the biconnected components, each sorted, listed in order of
/// their smallest edge id.
pub fn blocks(g: &Graph) -> Vec<Vec<EdgeId>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent edge, next adjacency index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
            if *idx < g.adj(v).len() {
                let (w, e) = g.adj(v)[*idx];
                *idx += 1;
                if Some(e) == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(&(p, _, _)), Some(e)) = (stack.last(), pe) {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(f) = edge_stack.pop() {
                            block.push(f);
                            if f == e {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Embeds one biconnected block with at least one cycle. Returns the rotation
/// at each block vertex in global vertex ids.
fn embed_block(g: &Graph, block: &[EdgeId]) -> Option<Vec<(VertexId, Vec<VertexId>)>> {
    let mut verts: Vec<VertexId> = block.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
    verts.sort_unstable();
    verts.dedup();
    let k = verts.len();
    let local = |v: VertexId| verts.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> = block.iter().map(|&e| (local(g.edge(e).0), local(g.edge(e).1))).collect();
    if k >= 3 && edges.len() > 3 * k - 6 {
        return None;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    for a in &mut adj {
        a.sort_unstable();
    }

    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; k];
    let mut edge_in_h = vec![false; edges.len()];
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        let e = adj[a].iter().find(|&&(w, _)| w == b).unwrap().1;
        edge_in_h[e] = true;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut embedded = cycle.len();

    while embedded < edges.len() {
        let frags = fragments(&adj, &edges, &in_h, &edge_in_h);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len()).filter(|&f| frag.attach.iter().all(|a| faces[f].contains(a))).collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, f) = choice.expect("an unembedded edge leaves a fragment");
        let path = fragment_path(&adj, &frags[fi], &in_h);
        for w in path.windows(2) {
            let e = adj[w[0]].iter().find(|&&(x, _)| x == w[1]).unwrap().1;
            edge_in_h[e] = true;
            embedded += 1;
        }
        for &v in &path {
            in_h[v] = true;
        }
        let (f1, f2) = split_face(&faces[f], &path);
        faces[f] = f1;
        faces.push(f2);
    }

    // succ_v(u) = w for each consecutive (u, v, w) on a face.
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
    for face in &faces {
        let len = face.len();
        for i in 0..len {
            let (u, v, w) = (face[i], face[(i + 1) % len], face[(i + 2) % len]);
            succ[v].push((u, w));
        }
    }
    let mut out = Vec::with_capacity(k);
    for v in 0..k {
        let deg = adj[v].len();
        let start = adj[v][0].0;
        let mut order = vec![verts[start]];
        let mut cur = start;
        for _ in 1..deg {
            cur = succ[v].iter().find(|&&(u, _)| u == cur).expect("rotation successor").1;
            order.push(verts[cur]);
        }
        out.push((verts[v], order));
    }
    Some(out)
}

/// A cycle through the lowest vertex, found by DFS in index order.
fn find_cycle(adj: &[Vec<(usize, usize)>]) -> Vec<usize> {
    let k = adj.len();
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![usize::MAX; k];
    let mut stack = vec![(0usize, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx >= adj[v].len() {
            stack.pop();
            continue;
        }
        let w = adj[v][*idx].0;
        *idx += 1;
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, 0));
        } else if w != parent[v] && depth[w] < depth[v] {
            let mut cycle = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cycle.push(x);
            }
            cycle.reverse();
            return cycle;
        }
    }
    unreachable!("a block with two or more edges contains a cycle")
}

struct Fragment {
    /// Interior vertices (empty for a single chord edge).
    inner: Vec<usize>,
    /// Chord endpoints when `inner` is empty.
    chord: Option<(usize, usize)>,
    attach: Vec<usize>,
}

fn fragments(adj: &[Vec<(usize, usize)>], edges: &[(usize, usize)], in_h: &[bool], edge_in_h: &[bool]) -> Vec<Fragment> {
    let k = adj.len();
    let mut out = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        if !edge_in_h[i] && in_h[u] && in_h[v] {
            let mut attach = vec![u, v];
            attach.sort_unstable();
            out.push(Fragment { inner: Vec::new(), chord: Some((u, v)), attach });
        }
    }
    let mut seen = vec![false; k];
    for s in 0..k {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut attach = Vec::new();
        let mut i = 0;
        while i < inner.len() {
            let x = inner[i];
            i += 1;
            for &(w, _) in &adj[x] {
                if in_h[w] {
                    attach.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                }
            }
        }
        inner.sort_unstable();
        attach.sort_unstable();
        attach.dedup();
        out.push(Fragment { inner, chord: None, attach });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<(usize, usize)>], frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attach[0];
    let k = adj.len();
    let mut parent = vec![usize::MAX; k];
    let mut queue = VecDeque::new();
    for &(w, _) in &adj[a] {
        if !in_h[w] && frag.inner.binary_search(&w).is_ok() && parent[w] == usize::MAX {
            parent[w] = a;
            queue.push_back(w);
        }
    }
    while let Some(x) = queue.pop_front() {
        if let Some(&(b, _)) = adj[x].iter().find(|&&(w, _)| in_h[w] && w != a) {
            let mut path = vec![b, x];
            let mut y = x;
            while parent[y] != a {
                y = parent[y];
                path.push(y);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &(w, _) in &adj[x] {
            if !in_h[w] && parent[w] == usize::MAX {
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragments of a biconnected block have two attachments")
}

/// Splits cyclic face `f` along `path = [a, .., b]` with `a`, `b` on `f`.
fn split_face(f: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = (path[0], *path.last().unwrap());
    let len = f.len();
    let ia = f.iter().position(|&x| x == a).unwrap();
    let ib = f.iter().position(|&x| x == b).unwrap();
    let along = |from: usize, to: usize| -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(f[i]);
            if i == to {
                break;
            }
            i = (i + 1) % len;
        }
        out
    };
    let interior = &path[1..path.len() - 1];
    let mut f1 = along(ia, ib);
    f1.extend(interior.iter().rev());
    let mut f2 = along(ib, ia);
    f2.extend(interior.iter());
    (f1, f2)
}

/// Shrinks a non-planar graph to a minimal non-planar edge set and classifies it.
fn kuratowski(g: &Graph) -> Kuratowski {
    let mut keep = vec![true; g.m()];
    for e in 0..g.m() {
        keep[e] = false;
        let (sub, _) = g.filter_edges(|x| keep[x]);
        if embed(&sub).is_some() {
            keep[e] = true;
        }
    }
    let edges: Vec<EdgeId> = (0..g.m()).filter(|&e| keep[e]).collect();
    let mut deg = vec![0usize; g.n()];
    for &e in &edges {
        let (u, v) = g.edge(e);
        deg[u] += 1;
        deg[v] += 1;
    }
    let branch_vertices: Vec<VertexId> = (0..g.n()).filter(|&v| deg[v] >= 3).collect();
    let kind =
        if branch_vertices.iter().all(|&v| deg[v] == 4) && branch_vertices.len() == 5 { KuratowskiKind::K5 } else { KuratowskiKind::K33 };
    debug_assert!(kind == KuratowskiKind::K5 || (branch_vertices.len() == 6 && branch_vertices.iter().all(|&v| deg[v] == 3)));
    Kuratowski { kind, edges, branch_vertices }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e)
    }

    fn k33() -> Graph {
        let mut e = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                e.push((u, v));
            }
        }
        Graph::new(6, e)
    }

    #[test]
    fn small_planar_graphs() {
        let tri = Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]);
        let emb = embed(&tri).unwrap();
        assert_eq!(emb.faces().count(), 2);
        assert!(embed(&complete(4)).is_some());
        let (k33_minus, _) = k33().filter_edges(|e| e != 0);
        let emb = embed(&k33_minus).unwrap();
        assert!(emb.is_planar());
    }

    #[test]
    fn k5_and_k33_witnesses() {
        match planarity_check(&complete(5)) {
            Planarity::NonPlanar(w) => {
                assert_eq!(w.kind, KuratowskiKind::K5);
                assert_eq!(w.edges.len(), 10);
            }
            Planarity::Planar(_) => panic!("K5 is not planar"),
        }
        match planarity_check(&k33()) {
            Planarity::NonPlanar(w) => {
                assert_eq!(w.kind, KuratowskiKind::K33);
                assert_eq!(w.branch_vertices.len(), 6);
            }
            Planarity::Planar(_) => panic!("K3,3 is not planar"),
        }
    }

    #[test]
    fn petersen_is_not_planar() {
        let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<_> = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5)).collect();
        let g = Graph::new(10, [outer, spokes, inner].concat());
        match planarity_check(&g) {
            Planarity::NonPlanar(w) => assert_eq!(w.kind, KuratowskiKind::K33),
            Planarity::Planar(_) => panic!("Petersen graph is not planar"),
        }
    }

    #[test]
    fn blocks_of_bowtie_with_tail() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]);
        assert_eq!(blocks(&g), vec![vec![0, 1, 2], vec![3, 4, 5], vec![6]]);
        let emb = embed(&g).unwrap();
        assert!(emb.is_planar());
        assert_eq!(emb.faces().count(), 3);
    }

    #[test]
    fn grid_is_planar() {
        let mut e = Vec::new();
        for r in 0..4 {
            for c in 0..4 {
                let v = r * 4 + c;
                if c < 3 {
                    e.push((v, v + 1));
                }
                if r < 3 {
                    e.push((v, v + 4));
                }
            }
        }
        let emb = embed(&Graph::new(16, e)).unwrap();
        assert_eq!(emb.faces().count(), 10);
    }
}
