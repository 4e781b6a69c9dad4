//! States for the near-planar branching: subpartitions of `V(G)` that cover
//! `W ∪ T`, their potentials (`α`, `κ`, `τ`), and the moves on them.

use crate::cuts::{lambda, relevant_set, verify_multicut};
use crate::dual::planar_multicut_exact;
use crate::error::{Error, Result};
use crate::graph::{mask, EdgeId, Graph, VertexId};
use crate::instance::{keep_best, Instance, Solution};
use crate::planar::is_planar;
use crate::weight::Weight;
use std::collections::BTreeSet;
use std::fmt;

/// An instance with a planarizing edge set `E_π`.
#[derive(Clone, Debug)]
pub struct KPlanarContext {
    instance: Instance,
    pi_edges: Vec<EdgeId>,
    w: Vec<VertexId>,
    wt: Vec<VertexId>,
    g0: Graph,
    /// Instance edge id of each `G0` edge.
    g0_edges: Vec<EdgeId>,
}

impl KPlanarContext {
    pub fn new(instance: Instance, pi_edges: &[EdgeId]) -> Result<KPlanarContext> {
        let removed = mask(instance.m(), pi_edges);
        let (g0, g0_edges) = instance.graph().filter_edges(|e| !removed[e]);
        if !is_planar(&g0) {
            return Err(Error::NonPlanar);
        }
        let mut pi: Vec<EdgeId> = pi_edges.to_vec();
        pi.sort_unstable();
        pi.dedup();
        let w: BTreeSet<VertexId> = pi.iter().flat_map(|&e| [instance.edge(e).u, instance.edge(e).v]).collect();
        let mut wt = w.clone();
        wt.extend(instance.terminals().iter().copied());
        Ok(KPlanarContext { w: w.into_iter().collect(), wt: wt.into_iter().collect(), instance, pi_edges: pi, g0, g0_edges })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn pi(&self) -> usize {
        self.pi_edges.len()
    }

    pub fn pi_edges(&self) -> &[EdgeId] {
        &self.pi_edges
    }

    pub fn w(&self) -> &[VertexId] {
        &self.w
    }

    /// `W ∪ T`, sorted.
    pub fn wt(&self) -> &[VertexId] {
        &self.wt
    }

    pub fn g0(&self) -> &Graph {
        &self.g0
    }

    pub fn g0_edge_to_instance(&self, e: EdgeId) -> EdgeId {
        self.g0_edges[e]
    }

    /// `S0`: the `G0` ids of the instance edges in `s` outside `E_π`.
    pub fn s0(&self, s: &[EdgeId]) -> Vec<EdgeId> {
        let chosen = mask(self.instance.m(), s);
        (0..self.g0.m()).filter(|&e| chosen[self.g0_edges[e]]).collect()
    }

    /// Fatness threshold `π(t+1)+1`.
    pub fn threshold(&self) -> usize {
        self.pi() * (self.instance.t() + 1) + 1
    }

    /// Largest number of classes a state can have: `2π + t`.
    pub fn max_classes(&self) -> usize {
        2 * self.pi() + self.instance.t()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Fat,
    FatNeighboring,
    Thin,
}

/// A state with cached potentials. Classes are sorted, and listed by their
/// smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    classes: Vec<Vec<VertexId>>,
    alpha: Vec<usize>,
    kinds: Vec<ClassKind>,
    kappa: usize,
    tau: usize,
}

impl State {
    pub fn new(ctx: &KPlanarContext, classes: Vec<Vec<VertexId>>) -> Result<State> {
        let classes = canonical(classes);
        let n = ctx.instance.n();
        let mut owner = vec![usize::MAX; n];
        for (i, y) in classes.iter().enumerate() {
            for &v in y {
                if v >= n || owner[v] != usize::MAX {
                    return Err(Error::Precondition(format!("vertex {v} is in two classes or out of range")));
                }
                owner[v] = i;
            }
        }
        let wt_mask = mask(n, &ctx.wt);
        if let Some(&v) = ctx.wt.iter().find(|&&v| owner[v] == usize::MAX) {
            return Err(Error::Precondition(format!("vertex {v} of W ∪ T is uncovered")));
        }
        if classes.iter().any(|y| y.is_empty() || !y.iter().any(|&v| wt_mask[v])) {
            return Err(Error::Precondition("every class must meet W ∪ T".into()));
        }
        let alpha: Vec<usize> = (0..classes.len()).map(|i| alpha(ctx, &classes, i)).collect();
        let kinds = classify(ctx, &classes, &alpha);
        let kappa = kappa_of(ctx, &alpha, &kinds);
        let tau = tau(ctx, &classes);
        Ok(State { classes, alpha, kinds, kappa, tau })
    }

    pub fn classes(&self) -> &[Vec<VertexId>] {
        &self.classes
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn kinds(&self) -> &[ClassKind] {
        &self.kinds
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn has_thin(&self) -> bool {
        self.kinds.contains(&ClassKind::Thin)
    }

    fn covered(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for y in &self.classes {
            for &v in y {
                m[v] = true;
            }
        }
        m
    }

    /// Counts of fat, fat-neighboring and thin classes.
    pub fn kind_counts(&self) -> (usize, usize, usize) {
        let c = |k| self.kinds.iter().filter(|&&x| x == k).count();
        (c(ClassKind::Fat), c(ClassKind::FatNeighboring), c(ClassKind::Thin))
    }

    /// One trace line for a transition out of this state.
    pub fn trace_line(&self, action: &str) -> String {
        let (f, n, t) = self.kind_counts();
        format!("state κ={} τ={} kinds={f}/{n}/{t} action={action}", self.kappa, self.tau)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.classes.iter().map(|y| format!("{{{}}}", y.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn canonical(mut classes: Vec<Vec<VertexId>>) -> Vec<Vec<VertexId>> {
    for y in &mut classes {
        y.sort_unstable();
        y.dedup();
    }
    classes.sort();
    classes
}

fn rest_of(classes: &[Vec<VertexId>], i: usize) -> Vec<VertexId> {
    let mut rest: Vec<VertexId> = classes.iter().enumerate().filter(|&(j, _)| j != i).flat_map(|(_, y)| y.iter().copied()).collect();
    rest.sort_unstable();
    rest
}

/// `α(Y) = λ_G0(Y, ∪P \ Y) - λ_G0(Y ∩ (W ∪ T), (W ∪ T) \ Y)` for `Y = classes[i]`.
pub fn alpha(ctx: &KPlanarContext, classes: &[Vec<VertexId>], i: usize) -> usize {
    let y = &classes[i];
    let rest = rest_of(classes, i);
    let in_y = mask(ctx.instance.n(), y);
    let y_wt: Vec<VertexId> = ctx.wt.iter().copied().filter(|&v| in_y[v]).collect();
    let other_wt: Vec<VertexId> = ctx.wt.iter().copied().filter(|&v| !in_y[v]).collect();
    let full = lambda(&ctx.g0, y, &rest);
    let core = lambda(&ctx.g0, &y_wt, &other_wt);
    full.checked_sub(core).expect("separating a class costs at least separating its W ∪ T part")
}

pub fn classify(ctx: &KPlanarContext, classes: &[Vec<VertexId>], alpha: &[usize]) -> Vec<ClassKind> {
    let n = ctx.instance.n();
    let fat: Vec<bool> = alpha.iter().map(|&a| a >= ctx.threshold()).collect();
    let mut owner = vec![usize::MAX; n];
    for (i, y) in classes.iter().enumerate() {
        for &v in y {
            owner[v] = i;
        }
    }
    (0..classes.len())
        .map(|i| {
            if fat[i] {
                return ClassKind::Fat;
            }
            let touches_fat =
                classes[i].iter().any(|&u| ctx.g0.adj(u).iter().any(|&(v, _)| owner[v] != usize::MAX && owner[v] != i && fat[owner[v]]));
            if touches_fat {
                ClassKind::FatNeighboring
            } else {
                ClassKind::Thin
            }
        })
        .collect()
}

fn kappa_of(ctx: &KPlanarContext, alpha: &[usize], kinds: &[ClassKind]) -> usize {
    let th = ctx.threshold();
    alpha
        .iter()
        .zip(kinds)
        .map(|(&a, k)| match k {
            ClassKind::Fat => 2 * th,
            ClassKind::FatNeighboring => th + a,
            ClassKind::Thin => a,
        })
        .sum()
}

/// `κ(P)` recomputed from scratch.
pub fn kappa(ctx: &KPlanarContext, classes: &[Vec<VertexId>]) -> usize {
    let alpha: Vec<usize> = (0..classes.len()).map(|i| alpha(ctx, classes, i)).collect();
    let kinds = classify(ctx, classes, &alpha);
    kappa_of(ctx, &alpha, &kinds)
}

/// `τ(P)`: total number of components of `G0[Y]` over the classes.
pub fn tau(ctx: &KPlanarContext, classes: &[Vec<VertexId>]) -> usize {
    classes.iter().map(|y| ctx.g0.induced_component_count(&mask(ctx.instance.n(), y))).sum()
}

/// Whether `p2` extends `p1`: same size, and the classes of `p1` sit inside
/// pairwise distinct classes of `p2`.
pub fn extends(p1: &[Vec<VertexId>], p2: &[Vec<VertexId>]) -> bool {
    if p1.len() != p2.len() {
        return false;
    }
    let mut used = vec![false; p2.len()];
    for y in p1 {
        let Some(&first) = y.first() else { return false };
        let Some(j) = p2.iter().position(|z| z.contains(&first)) else { return false };
        if used[j] || !y.iter().all(|v| p2[j].contains(v)) {
            return false;
        }
        used[j] = true;
    }
    true
}

/// `K(G0 \ S0)`: the components of `G0` after deleting the instance edges `s`.
pub fn components_after(ctx: &KPlanarContext, s: &[EdgeId]) -> Vec<Vec<VertexId>> {
    let s0 = mask(ctx.g0.m(), &ctx.s0(s));
    let labels = ctx.g0.component_labels_where(|e| !s0[e]);
    let count = labels.iter().map(|&l| l + 1).max().unwrap_or(0);
    let mut comps = vec![Vec::new(); count];
    for (v, &l) in labels.iter().enumerate() {
        comps[l].push(v);
    }
    canonical(comps)
}

pub fn respects(ctx: &KPlanarContext, s: &[EdgeId], p: &State) -> bool {
    extends(&p.classes, &components_after(ctx, s))
}

/// No uncovered vertex has a `G0`-neighbor in a thin class.
pub fn is_complete(ctx: &KPlanarContext, p: &State) -> bool {
    first_open_vertex(ctx, p).is_none()
}

fn first_open_vertex(ctx: &KPlanarContext, p: &State) -> Option<VertexId> {
    let n = ctx.instance.n();
    let covered = p.covered(n);
    let mut thin = vec![false; n];
    for (y, &k) in p.classes.iter().zip(&p.kinds) {
        if k == ClassKind::Thin {
            for &v in y {
                thin[v] = true;
            }
        }
    }
    (0..n).find(|&u| !covered[u] && ctx.g0.adj(u).iter().any(|&(v, _)| thin[v]))
}

/// Every class is the relevant set of itself against the other classes.
pub fn is_relevant(ctx: &KPlanarContext, p: &State) -> Result<bool> {
    for (i, y) in p.classes.iter().enumerate() {
        if &relevant_set(&ctx.g0, y, &rest_of(&p.classes, i))? != y {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All partitions of `W ∪ T` in restricted-growth order.
pub fn enumerate_initial_states(ctx: &KPlanarContext) -> Result<Vec<State>> {
    let wt = &ctx.wt;
    let mut out = Vec::new();
    if wt.is_empty() {
        return Ok(vec![State::new(ctx, Vec::new())?]);
    }
    let k = wt.len();
    let mut rg = vec![0usize; k];
    loop {
        let blocks = rg.iter().max().unwrap() + 1;
        let mut classes = vec![Vec::new(); blocks];
        for (i, &b) in rg.iter().enumerate() {
            classes[b].push(wt[i]);
        }
        out.push(State::new(ctx, classes)?);
        // Next restricted-growth string.
        let mut i = k;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let prefix_max = rg[..i].iter().copied().max().unwrap();
            if rg[i] <= prefix_max {
                rg[i] += 1;
                for x in &mut rg[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Counters for the inline law checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawStats {
    pub relevant_checks: usize,
    pub branch_checks: usize,
    pub measure_checks: usize,
    pub invalid_complete: usize,
}

fn law(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(format!("state law violated: {}", what())))
    }
}

/// Replaces each class, in order, by its relevant set against the others.
pub fn make_relevant(ctx: &KPlanarContext, p: &State, stats: &mut LawStats) -> Result<State> {
    let mut classes = p.classes.clone();
    for i in 0..classes.len() {
        let rest = rest_of(&classes, i);
        classes[i] = relevant_set(&ctx.g0, &classes[i], &rest)?;
    }
    let q = State::new(ctx, classes)?;
    stats.relevant_checks += 1;
    law(q.len() == p.len(), || format!("make_relevant changed the class count of {p}"))?;
    law(q.tau <= p.tau, || format!("make_relevant raised τ on {p}"))?;
    law(q.kappa >= p.kappa, || format!("make_relevant lowered κ on {p}"))?;
    law(is_relevant(ctx, &q)?, || format!("make_relevant output {q} is not relevant"))?;
    law(extends(&p.classes, &q.classes), || format!("make_relevant output {q} does not extend {p}"))?;
    Ok(q)
}

/// Adds the lowest uncovered vertex next to a thin class to each class in turn.
pub fn branch_incomplete(ctx: &KPlanarContext, p: &State, stats: &mut LawStats) -> Result<Vec<State>> {
    let u0 = first_open_vertex(ctx, p).ok_or_else(|| Error::Precondition("state is complete".into()))?;
    if !is_relevant(ctx, p)? {
        return Err(Error::Precondition("state is not relevant".into()));
    }
    let mut out = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        let mut classes = p.classes.clone();
        classes[i].push(u0);
        let q = State::new(ctx, classes)?;
        stats.branch_checks += 1;
        law(q.kappa > p.kappa, || format!("adding {u0} to class {i} of {p} did not raise κ"))?;
        law(q.tau <= p.tau + 1, || format!("adding {u0} to class {i} of {p} raised τ by more than one"))?;
        law(q.kappa <= q.len() * 2 * ctx.threshold(), || format!("κ of {q} above its bound"))?;
        out.push(q);
    }
    law(out.len() <= ctx.max_classes(), || format!("{} branches exceed 2π+t", out.len()))?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThinCase {
    /// An `E_π` edge leaves the thin class: delete its boundary and keep `H`.
    LeavingPiEdge,
    /// The thin class holds a terminal: delete it from `G` and `H`.
    RemoveClass,
}

/// `(S', (G', H'))`: any minimum multicut of `sub` together with `s_prime` is
/// meant to be a minimum multicut of the parent.
#[derive(Clone, Debug)]
pub struct ExtendedSubinstance {
    pub s_prime: Solution,
    pub sub: Instance,
    pub case: ThinCase,
}

/// Deals with a complete state that has a thin class. `Err(InvalidState)`
/// when neither case applies, which certifies the state invalid.
pub fn handle_thin_complete(ctx: &KPlanarContext, p: &State) -> Result<ExtendedSubinstance> {
    let i = p.kinds.iter().position(|&k| k == ClassKind::Thin).ok_or_else(|| Error::Precondition("state has no thin class".into()))?;
    if !is_complete(ctx, p) {
        return Err(Error::Precondition("state is not complete".into()));
    }
    let y0 = &p.classes[i];
    let n = ctx.instance.n();
    let in_y0 = mask(n, y0);
    let side: Vec<bool> = in_y0.clone();
    let s_g0 = crate::cuts::boundary(&ctx.g0, &side);
    let s_ids: Vec<EdgeId> = s_g0.iter().map(|&e| ctx.g0_edges[e]).collect();
    let s_prime = Solution::from_edge_ids(&ctx.instance, &s_ids);
    let leaving = ctx.pi_edges.iter().any(|&e| {
        let edge = ctx.instance.edge(e);
        in_y0[edge.u] != in_y0[edge.v]
    });
    if leaving {
        return Ok(ExtendedSubinstance { sub: ctx.instance.without_edges(&s_ids), s_prime, case: ThinCase::LeavingPiEdge });
    }
    if y0.iter().any(|&v| ctx.instance.is_terminal(v)) {
        return Ok(ExtendedSubinstance { sub: ctx.instance.without_vertices(y0), s_prime, case: ThinCase::RemoveClass });
    }
    Err(Error::InvalidState(format!("thin class {{{}}} fits neither case", y0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))))
}

/// The planar instance `(G0', H')` for a complete state without thin classes:
/// edges inside a class are infinite, others cost 1, and `H'` is complete
/// multipartite over one representative per component of each class.
pub fn no_thin_instance(ctx: &KPlanarContext, p: &State) -> Result<Instance> {
    let n = ctx.instance.n();
    let mut owner = vec![usize::MAX; n];
    for (i, y) in p.classes.iter().enumerate() {
        for &v in y {
            owner[v] = i;
        }
    }
    let edges: Vec<(VertexId, VertexId, Weight)> = ctx
        .g0
        .edges()
        .iter()
        .map(|&(u, v)| {
            let inside = owner[u] != usize::MAX && owner[u] == owner[v];
            (u, v, if inside { Weight::INF } else { Weight::finite(1) })
        })
        .collect();
    let mut reps: Vec<(usize, VertexId)> = Vec::new();
    for (i, y) in p.classes.iter().enumerate() {
        for comp in ctx.g0.induced_components(&mask(n, y)) {
            reps.push((i, *comp.iter().min().unwrap()));
        }
    }
    let mut demands = Vec::new();
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            if reps[a].0 != reps[b].0 {
                demands.push((reps[a].1, reps[b].1));
            }
        }
    }
    Instance::new(n, edges, reps.iter().map(|&(_, v)| v), demands)
}

/// Candidate multicut for a complete state without thin classes: solve the
/// planar instance, then add every subset of `E_π` and keep the best that
/// separates `(G, H)`. `Ok(None)` if nothing works.
pub fn solve_no_thin_complete(ctx: &KPlanarContext, p: &State) -> Result<Option<Solution>> {
    if p.has_thin() {
        return Err(Error::Precondition("state has a thin class".into()));
    }
    let planar = no_thin_instance(ctx, p)?;
    let s0 = match planar_multicut_exact(&planar) {
        Ok(s) => s,
        Err(Error::NoFiniteMulticut) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut base = s0.edge_ids(&ctx.instance)?;
    base.sort_unstable();
    let pi = &ctx.pi_edges;
    let mut best = None;
    for bits in 0u32..(1 << pi.len()) {
        let mut s = base.clone();
        s.extend((0..pi.len()).filter(|&j| bits >> j & 1 == 1).map(|j| pi[j]));
        if verify_multicut(&ctx.instance, &s)? {
            keep_best(&mut best, Solution::from_edge_ids(&ctx.instance, &s));
        }
    }
    Ok(best)
}
