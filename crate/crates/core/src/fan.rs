//! Fans at a vertex and the shift that rotates each spoke onto its leaf's
//! missing color.
//!
//! A fan `(ux_0, ..., ux_p)` chains spokes through the missing assignment:
//! `m(x_i)` is the color of `ux_{i+1}`. It stops when `m(x_p)` is missing at
//! `u` (a path), equals the color of `ux_0` (a cycle), or re-enters at some
//! interior spoke `ux_q` (a comet).

use crate::coloring::{kempe_component, swap_in_place, Color, EdgeColoring, KempeStep, KempeTrace, MissingAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanKind {
    Path,
    Cycle,
    /// `m(x_p)` is the color of spoke `q`, with `1 <= q <= p - 1`.
    Comet {
        q: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub center: usize,
    /// Edge indices `ux_0, ..., ux_p`.
    pub spokes: Vec<usize>,
    /// Leaf vertices `x_0, ..., x_p`.
    pub leaves: Vec<usize>,
    pub kind: FanKind,
    /// The assignment the fan was built from.
    pub missing: MissingAssignment,
}

impl Fan {
    /// Index of the last spoke.
    pub fn p(&self) -> usize {
        self.spokes.len() - 1
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == FanKind::Cycle
    }

    pub fn is_path(&self) -> bool {
        self.kind == FanKind::Path
    }

    pub fn last_leaf(&self) -> usize {
        *self.leaves.last().unwrap()
    }
}

/// The unique fan at `u` whose first spoke is `uv`.
pub fn build_fan(g: &Graph, alpha: &EdgeColoring, m: &MissingAssignment, u: usize, v: usize) -> Result<Fan> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let first = g.edge_between(u, v).ok_or(Error::NotAnEdge(u, v))?;
    if !alpha.is_missing(g, u, m.get(u)) {
        return Err(Error::InvalidMissing(u));
    }
    let mut spoke_of_color = vec![None; alpha.palette() as usize + 1];
    for &(_, e) in g.incident(u) {
        spoke_of_color[alpha.color(e) as usize] = Some(e);
    }
    let mut spokes = vec![first];
    let mut leaves = vec![v];
    let kind = loop {
        let x = *leaves.last().unwrap();
        let c = m.get(x);
        if !alpha.is_missing(g, x, c) {
            return Err(Error::InvalidMissing(x));
        }
        match spoke_of_color[c as usize] {
            None => break FanKind::Path,
            Some(e) => match spokes.iter().position(|&s| s == e) {
                Some(0) => break FanKind::Cycle,
                Some(q) => break FanKind::Comet { q },
                None => {
                    spokes.push(e);
                    leaves.push(g.other(e, u));
                }
            },
        }
    };
    Ok(Fan { center: u, spokes, leaves, kind, missing: m.clone() })
}

/// `D_u`: nodes are the edges at `u`; `uw -> ux` when `m(w)` is the color of
/// `ux`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanDigraph {
    pub nodes: Vec<usize>,
    /// `successor[i]` indexes into `nodes`.
    pub successor: Vec<Option<usize>>,
}

impl FanDigraph {
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.successor.iter().enumerate().filter_map(|(i, s)| s.map(|j| (self.nodes[i], self.nodes[j]))).collect()
    }
}

pub fn fan_digraph(g: &Graph, alpha: &EdgeColoring, m: &MissingAssignment, u: usize) -> FanDigraph {
    let nodes: Vec<usize> = g.incident(u).iter().map(|&(_, e)| e).collect();
    let successor =
        g.incident(u).iter().map(|&(w, _)| nodes.iter().position(|&e| alpha.color(e) == m.get(w))).collect();
    FanDigraph { nodes, successor }
}

/// The shift of a path or cycle fan, computed directly: each spoke takes its
/// leaf's missing color. No Kempe changes are produced; this is the
/// reference the trace-producing procedures are checked against.
pub fn shift_target(g: &Graph, alpha: &EdgeColoring, fan: &Fan) -> Result<(EdgeColoring, MissingAssignment)> {
    if let FanKind::Comet { .. } = fan.kind {
        return Err(Error::Precondition("cannot shift a comet".into()));
    }
    let m = &fan.missing;
    let mut next = alpha.clone();
    let mut next_m = m.clone();
    for (&e, &x) in fan.spokes.iter().zip(&fan.leaves) {
        next.set(e, m.get(x));
        next_m.assign(x, alpha.color(e));
    }
    if fan.is_path() {
        next_m.assign(fan.center, alpha.color(fan.spokes[0]));
    }
    debug_assert!(next.check_proper(g).is_ok());
    Ok((next, next_m))
}

/// Realizes the shift of a path fan as `p + 1` single-edge Kempe changes,
/// last spoke first.
pub fn shift_path_fan(
    g: &Graph,
    alpha: &EdgeColoring,
    fan: &Fan,
) -> Result<(EdgeColoring, MissingAssignment, KempeTrace)> {
    if !fan.is_path() {
        return Err(Error::Precondition(format!("fan at {} is not a path", fan.center)));
    }
    let u = fan.center;
    let mut current = alpha.clone();
    let mut trace = KempeTrace::new();
    for i in (0..fan.spokes.len()).rev() {
        let e = fan.spokes[i];
        let step = KempeStep::new(current.color(e), fan.missing.get(fan.leaves[i]), u);
        let comp = swap_in_place(g, &mut current, step)?;
        if comp.edges != [e] {
            return Err(Error::Invariant(format!(
                "path-fan recolor of spoke {e} at {u} touched {} edges",
                comp.edges.len()
            )));
        }
        trace.push(step);
    }
    let (expected, next_m) = shift_target(g, alpha, fan)?;
    if expected != current {
        return Err(Error::Invariant("path-fan shift disagrees with direct shift".into()));
    }
    Ok((current, next_m, trace))
}

/// First index `i` at which the cycle fan fails saturation: the component of
/// `K(color(ux_i), m(u))` through `u` misses `x_{i-1}` (`x_p` for `i = 0`).
pub fn unsaturated_index(g: &Graph, alpha: &EdgeColoring, fan: &Fan) -> Result<Option<usize>> {
    if !fan.is_cycle() {
        return Err(Error::Precondition("saturation is defined for cycle fans".into()));
    }
    let u = fan.center;
    let mu: Color = fan.missing.get(u);
    let p = fan.p();
    for i in 0..=p {
        let prev = fan.leaves[if i == 0 { p } else { i - 1 }];
        let comp = kempe_component(g, alpha, alpha.color(fan.spokes[i]), mu, u)?;
        if !comp.contains_vertex(prev) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn is_saturated(g: &Graph, alpha: &EdgeColoring, fan: &Fan) -> Result<bool> {
    Ok(unsaturated_index(g, alpha, fan)?.is_none())
}
