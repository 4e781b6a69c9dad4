//! Exact multicut for unweighted graphs that become planar after deleting a
//! few edges.

use crate::cuts::verify_multicut;
use crate::error::{Error, Result};
use crate::instance::{keep_best, Instance, Solution};
use crate::planar::find_planarizing_edges;
use crate::states::{
    branch_incomplete, enumerate_initial_states, handle_thin_complete, is_complete, make_relevant, solve_no_thin_complete,
    ExtendedSubinstance, KPlanarContext, LawStats, State, ThinCase,
};
use std::collections::{HashMap, HashSet};

type Key = (usize, Vec<(usize, usize, crate::Weight)>, Vec<usize>, Vec<(usize, usize)>);

#[derive(Clone, Debug)]
pub struct KPlanarConfig {
    pub pi_max: usize,
    /// Limit on states processed over the whole run.
    pub node_guard: usize,
    pub trace: bool,
}

impl Default for KPlanarConfig {
    fn default() -> Self {
        KPlanarConfig { pi_max: 2, node_guard: 2_000_000, trace: false }
    }
}

#[derive(Clone, Debug, Default)]
pub struct KPlanarReport {
    pub solution: Solution,
    pub laws: LawStats,
    /// States processed.
    pub states: usize,
    /// Search tree nodes (instances solved, memo hits excluded).
    pub instances: usize,
    pub trace: Vec<String>,
}

/// Minimum multicut of an unweighted instance. Among equal-weight optima the
/// result is deterministic but need not be the lexicographically first.
pub fn solve_kplanar(inst: &Instance, pi_max: usize) -> Result<Solution> {
    Ok(solve_kplanar_with(inst, &KPlanarConfig { pi_max, ..KPlanarConfig::default() })?.solution)
}

pub fn solve_kplanar_with(inst: &Instance, cfg: &KPlanarConfig) -> Result<KPlanarReport> {
    if !inst.is_unweighted() {
        return Err(Error::Unsupported("kplanar solver requires unit weights".into()));
    }
    let mut d = Driver { cfg, memo: HashMap::new(), report: KPlanarReport::default() };
    let sol = d.solve(inst, 0)?;
    if !verify_multicut(inst, &sol.edge_ids(inst)?)? {
        return Err(Error::Internal("kplanar result is not a multicut".into()));
    }
    d.report.solution = sol;
    Ok(d.report)
}

struct Driver<'a> {
    cfg: &'a KPlanarConfig,
    memo: HashMap<Key, Solution>,
    report: KPlanarReport,
}

impl Driver<'_> {
    fn trace(&mut self, depth: usize, line: impl FnOnce() -> String) {
        if self.cfg.trace {
            self.report.trace.push(format!("{}{}", "  ".repeat(depth), line()));
        }
    }

    fn solve(&mut self, inst: &Instance, depth: usize) -> Result<Solution> {
        let inst = inst.without_idle_terminals();
        if inst.demands().is_empty() {
            return Ok(Solution::empty());
        }
        let key = inst.canonical_key();
        if let Some(s) = self.memo.get(&key) {
            return Ok(s.clone());
        }
        self.report.instances += 1;
        let sol = if inst.graph().is_connected() { self.solve_connected(&inst, depth)? } else { self.solve_components(&inst, depth)? };
        if !verify_multicut(&inst, &sol.edge_ids(&inst)?)? {
            return Err(Error::Internal("recombined solution is not a multicut".into()));
        }
        self.memo.insert(key, sol.clone());
        Ok(sol)
    }

    fn solve_components(&mut self, inst: &Instance, depth: usize) -> Result<Solution> {
        let comps = inst.graph().induced_components(&vec![true; inst.n()]);
        let mut total = Solution::empty();
        for comp in comps {
            if !comp.iter().any(|&v| inst.is_terminal(v)) {
                continue;
            }
            self.trace(depth, || format!("component size={}", comp.len()));
            let (sub, old_id) = inst.compacted(&comp);
            let s = self.solve(&sub, depth + 1)?.mapped(&old_id);
            total = total.union(&s, inst)?;
        }
        Ok(total)
    }

    fn solve_connected(&mut self, inst: &Instance, depth: usize) -> Result<Solution> {
        let pi_edges = find_planarizing_edges(inst.graph(), self.cfg.pi_max)?.ok_or(Error::PlanarizationFailed(self.cfg.pi_max))?;
        let ctx = KPlanarContext::new(inst.clone(), &pi_edges)?;
        let measure = ctx.pi() + inst.t();
        self.trace(depth, || format!("instance n={} m={} t={} pi={}", inst.n(), inst.m(), inst.t(), ctx.pi()));
        let (candidate, subs) = self.branch_instance(&ctx, depth)?;
        let mut best = candidate;
        for ext in subs {
            let sub = ext.sub.without_idle_terminals();
            let sub_pi = find_planarizing_edges(sub.graph(), ctx.pi())?.map(|p| p.len()).unwrap_or(usize::MAX);
            let sub_measure = sub_pi.saturating_add(sub.t());
            self.report.laws.measure_checks += 1;
            if sub_measure >= measure {
                // Only reachable from an invalid state.
                if ext.case == ThinCase::RemoveClass {
                    return Err(Error::Internal("terminal removal did not shrink the instance".into()));
                }
                self.report.laws.invalid_complete += 1;
                continue;
            }
            self.trace(depth, || format!("sub case={:?} cut={} measure={sub_measure}<{measure}", ext.case, ext.s_prime.edges.len()));
            let rest = self.solve(&sub, depth + 1)?;
            let cand = ext.s_prime.union(&rest, inst)?;
            if verify_multicut(inst, &cand.edge_ids(inst)?)? {
                keep_best(&mut best, cand);
            }
        }
        best.ok_or_else(|| Error::Internal("no branch produced a multicut".into()))
    }

    /// Explores states from every initial partition of `W ∪ T`. Returns the
    /// best direct candidate and the extended subinstances of thin leaves.
    fn branch_instance(&mut self, ctx: &KPlanarContext, depth: usize) -> Result<(Option<Solution>, Vec<ExtendedSubinstance>)> {
        let inst = ctx.instance();
        if inst.demand_graph().is_edgeless() {
            return Ok((Some(Solution::empty()), Vec::new()));
        }
        if !inst.graph().is_connected() {
            return Err(Error::Precondition("branching needs a connected instance".into()));
        }
        let h = inst.demand_graph();
        let splits_demand = |p: &State| p.classes().iter().any(|y| y.iter().any(|&a| y.iter().any(|&b| a < b && h.has_edge(a, b))));
        let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
        let mut stack: Vec<State> = enumerate_initial_states(ctx)?.into_iter().filter(|p| !splits_demand(p)).collect();
        stack.reverse();
        let mut candidate = None;
        let mut subs: Vec<ExtendedSubinstance> = Vec::new();
        let mut sub_keys: HashSet<Key> = HashSet::new();
        let mut laws = std::mem::take(&mut self.report.laws);
        while let Some(p) = stack.pop() {
            self.report.states += 1;
            if self.report.states > self.cfg.node_guard {
                return Err(Error::SizeBound(format!("more than {} states explored", self.cfg.node_guard)));
            }
            let r = make_relevant(ctx, &p, &mut laws)?;
            if !seen.insert(r.classes().to_vec()) {
                continue;
            }
            self.trace(depth + 1, || p.trace_line("relevant"));
            if !is_complete(ctx, &r) {
                self.trace(depth + 1, || r.trace_line("branch"));
                let kids = branch_incomplete(ctx, &r, &mut laws)?;
                stack.extend(kids.into_iter().rev().filter(|q| !splits_demand(q)));
                continue;
            }
            if !r.has_thin() {
                self.trace(depth + 1, || r.trace_line("nothin"));
                if let Some(s) = solve_no_thin_complete(ctx, &r)? {
                    keep_best(&mut candidate, s);
                }
                continue;
            }
            self.trace(depth + 1, || r.trace_line("thin"));
            match handle_thin_complete(ctx, &r) {
                Ok(ext) => {
                    if sub_keys.insert(ext.sub.canonical_key()) {
                        subs.push(ext);
                    }
                }
                Err(Error::InvalidState(_)) => laws.invalid_complete += 1,
                Err(e) => return Err(e),
            }
        }
        self.report.laws = laws;
        Ok((candidate, subs))
    }
}
