//! Per-instance comparison rows for a corpus, as `key=value` text.

use crate::biclique::extended_biclique_distance;
use crate::crossing::{check_claims, normalize};
use crate::cuts::{oracle_with, OracleConfig};
use crate::error::Result;
use crate::instance::Instance;
use crate::planar::{find_planarizing_edges, is_planar, Drawing, PI_MAX_BOUND};
use crate::solve::{solve_checked, with_drawing, SolveOptions, SolverKind};
use crate::weight::Weight;
use std::fmt::Write;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub solve: SolveOptions,
    /// Fixed solver; by default chosen per instance.
    pub solver: Option<SolverKind>,
    /// Adds wall-clock milliseconds to each row (makes output non-reproducible).
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { solve: SolveOptions { draw_tiny: true, ..SolveOptions::default() }, solver: None, timing: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome {
    Weight(Weight),
    Skipped,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    /// `("pi", π)` for unweighted runs, `("crbar", c̄r)` for drawings.
    pub param: Option<(&'static str, usize)>,
    pub mu: usize,
    pub solver: Option<SolverKind>,
    pub weight: std::result::Result<Weight, String>,
    pub oracle: OracleOutcome,
    pub tw: Option<usize>,
    pub millis: Option<f64>,
}

impl BenchRow {
    pub fn agree(&self) -> Option<bool> {
        match (&self.weight, &self.oracle) {
            (Ok(w), OracleOutcome::Weight(o)) => Some(w == o),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("name={} n={} m={} t={}", self.name, self.n, self.m, self.t);
        if let Some((k, v)) = self.param {
            write!(s, " {k}={v}").unwrap();
        }
        write!(s, " mu={}", self.mu).unwrap();
        if let Some(k) = self.solver {
            write!(s, " solver={k}").unwrap();
        }
        match &self.weight {
            Ok(w) => write!(s, " weight={w}").unwrap(),
            Err(e) => write!(s, " error={e:?}").unwrap(),
        }
        match &self.oracle {
            OracleOutcome::Weight(w) => write!(s, " oracle={w}").unwrap(),
            OracleOutcome::Skipped => s.push_str(" oracle=skipped"),
            OracleOutcome::Failed(e) => write!(s, " oracle_error={e:?}").unwrap(),
        }
        match self.agree() {
            Some(true) => s.push_str(" agree=yes"),
            Some(false) => s.push_str(" agree=no"),
            None => s.push_str(" agree=-"),
        }
        if let Some(tw) = self.tw {
            write!(s, " tw={tw}").unwrap();
        }
        if let Some(ms) = self.millis {
            write!(s, " ms={ms:.3}").unwrap();
        }
        s
    }
}

/// Solver used when none is fixed: the crossing solver for drawings and
/// weighted input, the unweighted solver otherwise.
pub fn default_solver(inst: &Instance) -> SolverKind {
    if inst.crossings().is_empty() && inst.is_unweighted() {
        SolverKind::KPlanar
    } else {
        SolverKind::Crossing
    }
}

pub fn bench_instance(name: &str, inst: &Instance, cfg: &BenchConfig) -> BenchRow {
    let kind = cfg.solver.unwrap_or_else(|| default_solver(inst));
    let mu = extended_biclique_distance(&inst.without_idle_terminals().demand_graph()).mu();
    let param = match kind {
        SolverKind::Crossing => with_drawing(inst, cfg.solve.draw_tiny).ok().map(|d| ("crbar", Drawing::new(d).cr_bar())),
        _ if is_planar(inst.graph()) => Some(("pi", 0)),
        _ => find_planarizing_edges(inst.graph(), PI_MAX_BOUND).ok().flatten().map(|p| ("pi", p.len())),
    };
    let start = Instant::now();
    let weight = solve_checked(kind, inst, &cfg.solve).map(|o| o.solution.weight).map_err(|e| e.to_string());
    let millis = cfg.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
    let finite = inst.edges().iter().filter(|e| e.weight.is_finite()).count();
    let oracle = if finite > cfg.solve.oracle_max_edges {
        OracleOutcome::Skipped
    } else {
        match oracle_with(inst, OracleConfig { max_edges: cfg.solve.oracle_max_edges, ..OracleConfig::default() }) {
            Ok(s) => OracleOutcome::Weight(s.weight),
            Err(e) => OracleOutcome::Failed(e.to_string()),
        }
    };
    let tw =
        if kind == SolverKind::Crossing && matches!(oracle, OracleOutcome::Weight(_)) { dual_tw(inst, cfg).ok().flatten() } else { None };
    BenchRow { name: name.to_string(), n: inst.n(), m: inst.m(), t: inst.t(), param, mu, solver: Some(kind), weight, oracle, tw, millis }
}

/// Largest `tw(C - F*)` over the witness duals of the fully normalized drawing.
fn dual_tw(inst: &Instance, cfg: &BenchConfig) -> Result<Option<usize>> {
    let drawn = with_drawing(inst, cfg.solve.draw_tiny)?;
    let g = normalize(&Drawing::new(drawn), &[])?;
    Ok(check_claims(&g, cfg.solve.oracle_max_edges, 4)?.tw_max)
}

/// A row for a file that failed to load.
pub fn failed_row(name: &str, err: &str) -> BenchRow {
    BenchRow {
        name: name.to_string(),
        n: 0,
        m: 0,
        t: 0,
        param: None,
        mu: 0,
        solver: None,
        weight: Err(err.to_string()),
        oracle: OracleOutcome::Skipped,
        tw: None,
        millis: None,
    }
}

/// Rows followed by a summary line.
pub fn render_report(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out += &r.render();
        out.push('\n');
    }
    let compared = rows.iter().filter(|r| r.agree().is_some()).count();
    let agree = rows.iter().filter(|r| r.agree() == Some(true)).count();
    let errors = rows.iter().filter(|r| r.weight.is_err()).count();
    let rate = if compared == 0 { "-".to_string() } else { format!("{:.2}%", 100.0 * agree as f64 / compared as f64) };
    writeln!(out, "summary instances={} compared={compared} agree={agree} rate={rate} errors={errors}", rows.len()).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, GenParams};

    #[test]
    fn rows_and_summary() {
        let cfg = BenchConfig::default();
        let mut rows = Vec::new();
        for seed in 0..6 {
            let p = GenParams { seed, n: 6, crossings: (seed % 2) as usize, max_weight: 1 + seed % 3, ..Default::default() };
            rows.push(bench_instance(&format!("g{seed}.mc"), &generate(&p).unwrap(), &cfg));
        }
        let text = render_report(&rows);
        assert!(text.ends_with("summary instances=6 compared=6 agree=6 rate=100.00% errors=0\n"), "{text}");
        assert_eq!(render_report(&[]), "summary instances=0 compared=0 agree=0 rate=- errors=0\n");
    }

    #[test]
    fn oversized_oracle_skipped() {
        let p = GenParams { seed: 3, n: 20, t: 2, density: 0.5, ..Default::default() };
        let inst = generate(&p).unwrap();
        let cfg = BenchConfig { solve: SolveOptions { oracle_max_edges: 10, ..Default::default() }, ..Default::default() };
        let row = bench_instance("big.mc", &inst, &cfg);
        assert_eq!(row.oracle, OracleOutcome::Skipped);
        assert!(row.render().contains("oracle=skipped agree=-"));
    }
}
