//! Line-based instance and solution files.
//!
//! ```text
//! # comment
//! n 3
//! t 0
//! t 2
//! e 0 1 1
//! e 1 2 inf pi
//! d 0 2
//! x 0 2 1 3
//! r 1 0 2
//! ```

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::instance::{pair, Instance, Solution};
use crate::weight::Weight;
use std::collections::BTreeMap;
use std::fmt::Write;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| perr(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut n: Option<usize> = None;
    let mut terminals = Vec::new();
    let mut edges = Vec::new();
    let mut pi = Vec::new();
    let mut demands = Vec::new();
    let mut crossings = Vec::new();
    let mut rotation = BTreeMap::new();
    let mut first_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind != "n" && n.is_none() {
            return Err(perr(line, "`n` must precede all other records"));
        }
        let bound = n.unwrap_or(0);
        let vertex = |tok: Option<&str>, what: &str| -> Result<VertexId> {
            let v = num(tok, line, what)?;
            if v >= bound {
                return Err(perr(line, format!("vertex {v} outside 0..{bound}")));
            }
            Ok(v)
        };
        match kind {
            "n" => {
                if n.is_some() {
                    return Err(perr(line, "duplicate `n` record"));
                }
                n = Some(num(toks.next(), line, "vertex count")?);
                first_line = line;
            }
            "t" => terminals.push(vertex(toks.next(), "terminal")?),
            "e" => {
                let u = vertex(toks.next(), "edge endpoint")?;
                let v = vertex(toks.next(), "edge endpoint")?;
                let w_tok = toks.next().ok_or_else(|| perr(line, "missing edge weight"))?;
                let w: Weight = w_tok.parse().map_err(|m: String| perr(line, m))?;
                match toks.next() {
                    None => {}
                    Some("pi") => pi.push(pair(u, v)),
                    Some(other) => return Err(perr(line, format!("unexpected token `{other}`"))),
                }
                edges.push((u, v, w));
            }
            "d" => {
                let u = vertex(toks.next(), "demand endpoint")?;
                let v = vertex(toks.next(), "demand endpoint")?;
                demands.push((u, v, line));
            }
            "x" => {
                let a = vertex(toks.next(), "crossing endpoint")?;
                let b = vertex(toks.next(), "crossing endpoint")?;
                let c = vertex(toks.next(), "crossing endpoint")?;
                let d = vertex(toks.next(), "crossing endpoint")?;
                crossings.push(((a, b), (c, d), line));
            }
            "r" => {
                let v = vertex(toks.next(), "rotation vertex")?;
                let mut order = Vec::new();
                for tok in toks.by_ref() {
                    order.push(vertex(Some(tok), "rotation neighbor")?);
                }
                if rotation.insert(v, order).is_some() {
                    return Err(perr(line, format!("duplicate rotation for vertex {v}")));
                }
                continue;
            }
            other => return Err(perr(line, format!("unknown record `{other}`"))),
        }
        if let Some(extra) = toks.next() {
            return Err(perr(line, format!("unexpected token `{extra}`")));
        }
    }

    let n = n.ok_or_else(|| perr(first_line.max(1), "missing `n` record"))?;
    for &(u, v, line) in &demands {
        if !terminals.contains(&u) || !terminals.contains(&v) {
            return Err(perr(line, format!("demand endpoint not terminal in ({u},{v})")));
        }
    }
    let inst = Instance::new(n, edges, terminals, demands.iter().map(|&(u, v, _)| (u, v)))?;
    let pi_ids: Vec<_> = pi.iter().map(|&(u, v)| inst.edge_id(u, v).unwrap()).collect();
    let mut cross_ids = Vec::new();
    for &((a, b), (c, d), line) in &crossings {
        let e1 = inst.edge_id(a, b).ok_or_else(|| perr(line, format!("crossing references unknown edge ({a},{b})")))?;
        let e2 = inst.edge_id(c, d).ok_or_else(|| perr(line, format!("crossing references unknown edge ({c},{d})")))?;
        cross_ids.push((e1, e2));
    }
    for (&v, order) in &rotation {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        let mut nbrs: Vec<_> = inst.graph().adj(v).iter().map(|&(w, _)| w).collect();
        nbrs.sort_unstable();
        if sorted != nbrs {
            return Err(Error::InvalidInstance(format!("rotation at {v} does not list exactly its neighbors")));
        }
    }
    Ok(inst.with_pi_edges(pi_ids).with_crossings(cross_ids)?.with_rotation(rotation))
}

/// Canonical text form: `parse_instance(&write_instance(i)) == i`.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", inst.n()).unwrap();
    for &t in inst.terminals() {
        writeln!(out, "t {t}").unwrap();
    }
    let pi = inst.pi_edges();
    for (id, e) in inst.edges().iter().enumerate() {
        let tag = if pi.binary_search(&id).is_ok() { " pi" } else { "" };
        writeln!(out, "e {} {} {}{tag}", e.u, e.v, e.weight).unwrap();
    }
    for &(u, v) in inst.demands() {
        writeln!(out, "d {u} {v}").unwrap();
    }
    for &(a, b) in inst.crossings() {
        let (ea, eb) = (inst.edge(a), inst.edge(b));
        writeln!(out, "x {} {} {} {}", ea.u, ea.v, eb.u, eb.v).unwrap();
    }
    for (v, order) in inst.rotation() {
        write!(out, "r {v}").unwrap();
        for w in order {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_solution(sol: &Solution) -> String {
    let mut out = format!("weight {}\n", sol.weight);
    for &(u, v) in &sol.edges {
        writeln!(out, "cut {u} {v}").unwrap();
    }
    out
}

/// Parses a solution file. The weight header is returned as written; checking
/// it against the instance is the caller's business.
pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut weight = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["weight", w] => {
                if weight.is_some() {
                    return Err(perr(line, "duplicate weight header"));
                }
                let w = if *w == "0" { Weight::ZERO } else { w.parse().map_err(|m: String| perr(line, m))? };
                weight = Some(w);
            }
            ["cut", u, v] => {
                let u = num(Some(u), line, "cut endpoint")?;
                let v = num(Some(v), line, "cut endpoint")?;
                edges.push(pair(u, v));
            }
            _ => return Err(perr(line, format!("unrecognized line `{}`", raw.trim()))),
        }
    }
    let weight = weight.ok_or_else(|| perr(1, "missing weight header"))?;
    edges.sort_unstable();
    edges.dedup();
    Ok(Solution { edges, weight })
}
