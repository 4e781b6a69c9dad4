//! One entry point over all solvers, with the result re-verified.

use crate::crossing::solve_crossing_with;
use crate::cuts::{oracle_with, verify_multicut, OracleConfig};
use crate::dual::planar_multicut_exact;
use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::kplanar::{solve_kplanar_with, KPlanarConfig};
use crate::planar::{is_planar, tiny_min_crossing_drawing, TINY_DRAW_MAX_CR};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    KPlanar,
    Crossing,
    Planar,
    Oracle,
}

impl FromStr for SolverKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "kplanar" => Ok(SolverKind::KPlanar),
            "crossing" => Ok(SolverKind::Crossing),
            "planar" => Ok(SolverKind::Planar),
            "oracle" => Ok(SolverKind::Oracle),
            _ => Err(format!("unknown solver `{s}`")),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SolverKind::KPlanar => "kplanar",
            SolverKind::Crossing => "crossing",
            SolverKind::Planar => "planar",
            SolverKind::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub pi_max: usize,
    pub oracle_max_edges: usize,
    /// Compute a minimum-crossing drawing for small graphs given without one.
    pub draw_tiny: bool,
    pub trace: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { pi_max: 2, oracle_max_edges: OracleConfig::default().max_edges, draw_tiny: false, trace: false }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOutcome {
    pub solution: Solution,
    /// Human-readable progress lines (only with `trace`).
    pub trace: Vec<String>,
}

/// The crossing solver's view of `inst`: unchanged when it has crossing
/// records or is planar, otherwise drawn (if allowed and small enough).
pub fn with_drawing(inst: &Instance, draw_tiny: bool) -> Result<Instance> {
    if !inst.crossings().is_empty() || is_planar(inst.graph()) {
        return Ok(inst.clone());
    }
    if !draw_tiny {
        return Err(Error::Unsupported("instance has no drawing; pass --draw-tiny to compute one".into()));
    }
    match tiny_min_crossing_drawing(inst, TINY_DRAW_MAX_CR)? {
        Some(d) => Ok(d.instance().clone()),
        None => Err(Error::Unsupported(format!("no drawing with at most {TINY_DRAW_MAX_CR} crossings"))),
    }
}

pub fn solve_checked(kind: SolverKind, inst: &Instance, opts: &SolveOptions) -> Result<SolveOutcome> {
    let mut out = SolveOutcome::default();
    out.solution = match kind {
        SolverKind::KPlanar => {
            let cfg = KPlanarConfig { pi_max: opts.pi_max, trace: opts.trace, ..KPlanarConfig::default() };
            let r = solve_kplanar_with(inst, &cfg)?;
            out.trace = r.trace;
            if opts.trace {
                out.trace.push(format!(
                    "instances={} states={} relevant_checks={} branch_checks={} measure_checks={} invalid_complete={}",
                    r.instances, r.states, r.laws.relevant_checks, r.laws.branch_checks, r.laws.measure_checks, r.laws.invalid_complete
                ));
            }
            r.solution
        }
        SolverKind::Crossing => {
            let drawn = with_drawing(inst, opts.draw_tiny)?;
            let r = solve_crossing_with(&drawn)?;
            if opts.trace {
                out.trace.push(format!("cr_bar={} z_solved={} candidates={}", r.cr_bar, r.z_solved, r.candidates));
            }
            r.solution
        }
        SolverKind::Planar => {
            if !is_planar(inst.graph()) {
                return Err(Error::NonPlanar);
            }
            planar_multicut_exact(inst)?
        }
        SolverKind::Oracle => oracle_with(inst, OracleConfig { max_edges: opts.oracle_max_edges, ..OracleConfig::default() })?,
    };
    let ids = out.solution.edge_ids(inst)?;
    if !verify_multicut(inst, &ids)? || inst.weight_of(&ids) != out.solution.weight {
        return Err(Error::Internal(format!("{kind} solver returned an invalid multicut")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_instance;
    use crate::Weight;

    #[test]
    fn every_solver_on_a_path() {
        let inst = parse_instance("n 3\nt 0\nt 2\ne 0 1 1\ne 1 2 1\nd 0 2\n").unwrap();
        for kind in ["kplanar", "crossing", "planar", "oracle"] {
            let k: SolverKind = kind.parse().unwrap();
            let s = solve_checked(k, &inst, &SolveOptions::default()).unwrap().solution;
            assert_eq!(s.weight, Weight::ONE, "{kind}");
            assert_eq!(k.to_string(), kind);
        }
        assert!("dual".parse::<SolverKind>().is_err());
    }

    #[test]
    fn undrawn_nonplanar_needs_flag() {
        let mut text = String::from("n 5\nt 0\nt 1\n");
        for u in 0..5 {
            for v in u + 1..5 {
                text += &format!("e {u} {v} 2\n");
            }
        }
        text += "d 0 1\n";
        let inst = parse_instance(&text).unwrap();
        assert!(matches!(solve_checked(SolverKind::Crossing, &inst, &SolveOptions::default()), Err(Error::Unsupported(_))));
        let opts = SolveOptions { draw_tiny: true, ..Default::default() };
        assert_eq!(solve_checked(SolverKind::Crossing, &inst, &opts).unwrap().solution.weight, Weight::finite(8));
    }
}
