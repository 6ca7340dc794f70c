//! The transformation driver: aligns color class 1 of a coloring with a
//! fixed matching by strict descent on `(bad, ugly)`, then recurses on the
//! graph with that matching removed. Class 2 inputs go through the doubled
//! graph and the resulting trace is projected back.

use crate::coloring::{
    apply_trace, choose_missing, swap_in_place, verify_trace, Color, EdgeColoring, KempeStep, KempeTrace,
    MissingAssignment, MissingPolicy,
};
use crate::error::{Error, Result};
use crate::factory::{double_graph, DoublingMap};
use crate::fan::build_fan;
use crate::graph::Graph;
use crate::procedures::{
    cycle_shift, drop_last_spoke_ugly, recolor_isolated_bad, resolve_chord_ugly, resolve_noncycle_ugly,
    ReductionOutcome, TargetClass,
};
use crate::solver::{find_coloring, find_delta_coloring, SolverResult};

/// Which reduction produced a descent step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    IsolatedBad,
    NoncycleUgly,
    ChordUgly,
    /// Shift the cycle fan at the ugly edge next to a bad edge, then give
    /// the bad edge color 1.
    ShiftAndRecolor,
    DropLastSpoke,
    BareShift,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentRecord {
    pub rule: Rule,
    pub before: (usize, usize),
    pub after: (usize, usize),
    /// Number of Kempe changes this step contributed.
    pub changes: usize,
}

/// State of one alignment run.
#[derive(Debug, Clone)]
pub struct AlignmentState {
    pub coloring: EdgeColoring,
    pub missing: MissingAssignment,
    pub target: TargetClass,
    pub counts: (usize, usize),
    pub log: Vec<DescentRecord>,
    pub trace: KempeTrace,
}

impl AlignmentState {
    /// `true` when every logged step strictly decreased `(bad, ugly)` and
    /// consecutive records chain.
    pub fn descent_is_strict(&self) -> bool {
        self.log.iter().all(|r| r.after < r.before) && self.log.windows(2).all(|w| w[0].after == w[1].before)
    }
}

struct Candidate {
    rule: Rule,
    coloring: EdgeColoring,
    trace: KempeTrace,
}

impl Candidate {
    fn from_outcome(rule: Rule, out: ReductionOutcome) -> Self {
        Candidate { rule, coloring: out.coloring, trace: out.trace }
    }
}

/// Kempe-changes `beta` until its color class 1 is exactly `target`.
///
/// `beta` must use palette `max_degree + 1` and `target` must be a matching
/// covering every vertex of maximum degree. Each accepted step strictly
/// decreases `(bad, ugly)`; if no reduction applies an [`Error::Stall`] is
/// returned with the current counts.
pub fn align_first_class(g: &Graph, beta: &EdgeColoring, target: &[usize]) -> Result<AlignmentState> {
    beta.check_proper(g)?;
    let delta = g.max_degree();
    if beta.palette() as usize != delta + 1 {
        return Err(Error::Precondition(format!("palette {} is not max degree + 1 = {}", beta.palette(), delta + 1)));
    }
    let target = TargetClass::new(g, target)?;
    for v in 0..g.vertex_count() {
        if g.degree(v) == delta && delta > 0 && !g.incident(v).iter().any(|&(_, e)| target.contains(e)) {
            return Err(Error::Precondition(format!("target misses max-degree vertex {v}")));
        }
    }
    let mut state = AlignmentState {
        coloring: beta.clone(),
        missing: choose_missing(g, beta, MissingPolicy::OneLast)?,
        counts: target.counts(beta),
        target,
        log: Vec::new(),
        trace: KempeTrace::new(),
    };
    let watchdog = (g.edge_count() + 1).pow(2);
    while state.counts != (0, 0) {
        if state.log.len() >= watchdog {
            return Err(stall(&state, "iteration watchdog exceeded"));
        }
        let Some(step) = next_step(g, &state) else {
            return Err(stall(&state, "no reduction decreases (bad, ugly)"));
        };
        let after = state.target.counts(&step.coloring);
        state.log.push(DescentRecord { rule: step.rule, before: state.counts, after, changes: step.trace.len() });
        state.trace.extend(&step.trace);
        state.coloring = step.coloring;
        state.counts = after;
        state.missing = choose_missing(g, &state.coloring, MissingPolicy::OneLast)?;
    }
    if state.coloring.class(1) != state.target.edges() {
        return Err(Error::Invariant("aligned class differs from target".into()));
    }
    Ok(state)
}

fn stall(state: &AlignmentState, detail: &str) -> Error {
    let (bad, ugly) = state.counts;
    let colors = state.coloring.colors();
    let first_bad = state.target.edges().iter().find(|&&e| colors[e] != 1);
    let first_ugly = (0..colors.len()).find(|&e| colors[e] == 1 && !state.target.contains(e));
    Error::Stall {
        bad,
        ugly,
        detail: format!(
            "{detail}; first bad edge {first_bad:?}, first ugly edge {first_ugly:?}, coloring {:?}",
            colors
        ),
    }
}

/// The first candidate, in rule priority order, that is valid and lowers
/// `(bad, ugly)`.
fn next_step(g: &Graph, state: &AlignmentState) -> Option<Candidate> {
    let alpha = &state.coloring;
    let m = &state.missing;
    let target = &state.target;
    let improves = |c: &Candidate| target.counts(&c.coloring) < state.counts;
    let bad: Vec<usize> = target.edges().iter().copied().filter(|&e| alpha.color(e) != 1).collect();
    let ugly: Vec<usize> = alpha.class(1).into_iter().filter(|&e| !target.contains(e)).collect();
    let sides = |e: usize| {
        let (a, b) = g.endpoints(e);
        [a.min(b), a.max(b)]
    };

    for &e in &bad {
        if let Ok(out) = recolor_isolated_bad(g, alpha, target, e) {
            let c = Candidate::from_outcome(Rule::IsolatedBad, out);
            if improves(&c) {
                return Some(c);
            }
        }
    }
    for &e in &ugly {
        for u in sides(e) {
            if let Ok(out) = resolve_noncycle_ugly(g, alpha, m, target, e, u) {
                let c = Candidate::from_outcome(Rule::NoncycleUgly, out);
                if improves(&c) {
                    return Some(c);
                }
            }
        }
    }
    for &e in &ugly {
        for u in sides(e) {
            if let Ok(out) = resolve_chord_ugly(g, alpha, m, target, e, u) {
                let c = Candidate::from_outcome(Rule::ChordUgly, out);
                if improves(&c) {
                    return Some(c);
                }
            }
        }
    }
    for &e in &bad {
        let (a, b) = g.endpoints(e);
        for (w, v) in [(a, b), (b, a)] {
            if let Some(c) = shift_and_recolor(g, alpha, m, e, w, v) {
                if improves(&c) {
                    return Some(c);
                }
            }
        }
    }
    for &e in &ugly {
        for u in sides(e) {
            if let Ok(out) = drop_last_spoke_ugly(g, alpha, m, target, e, u) {
                let c = Candidate::from_outcome(Rule::DropLastSpoke, out);
                if improves(&c) {
                    return Some(c);
                }
            }
        }
    }
    for &e in &ugly {
        for u in sides(e) {
            let v = g.other(e, u);
            let Ok(fan) = build_fan(g, alpha, m, u, v) else { continue };
            if !fan.is_cycle() {
                continue;
            }
            if let Ok(out) = cycle_shift(g, alpha, &fan) {
                let c = Candidate::from_outcome(Rule::BareShift, out);
                if improves(&c) {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Bad edge `wv` with color 1 missing at `w` and the color-1 edge `uv` at
/// `v`: shift the cycle fan `X_u(alpha, v)`, after which color 1 must be
/// missing at both `w` and `v`, and recolor `wv` with 1.
fn shift_and_recolor(
    g: &Graph,
    alpha: &EdgeColoring,
    m: &MissingAssignment,
    wv: usize,
    w: usize,
    v: usize,
) -> Option<Candidate> {
    if !alpha.is_missing(g, w, 1) {
        return None;
    }
    let uv = alpha.edge_with_color(g, v, 1)?;
    let u = g.other(uv, v);
    let fan = build_fan(g, alpha, m, u, v).ok()?;
    if !fan.is_cycle() {
        return None;
    }
    let shifted = cycle_shift(g, alpha, &fan).ok()?;
    let mut coloring = shifted.coloring;
    if !coloring.is_missing(g, w, 1) || !coloring.is_missing(g, v, 1) {
        return None;
    }
    let step = KempeStep::new(coloring.color(wv), 1, w);
    let comp = swap_in_place(g, &mut coloring, step).ok()?;
    debug_assert_eq!(comp.edges, [wv]);
    let mut trace = shifted.trace;
    trace.push(step);
    Some(Candidate { rule: Rule::ShiftAndRecolor, coloring, trace })
}

fn check_class(g: &Graph) -> Result<()> {
    if g.is_triangle_free() {
        return Ok(());
    }
    crate::graph::is_chordless(g).map_err(Error::ClassViolation)
}

fn check_pair(g: &Graph, b1: &EdgeColoring, b2: &EdgeColoring, t: u32) -> Result<()> {
    for b in [b1, b2] {
        if b.len() != g.edge_count() {
            return Err(Error::ColoringMismatch(format!("{} colors for {} edges", b.len(), g.edge_count())));
        }
        b.check_proper(g)?;
        if b.palette() != t {
            return Err(Error::Precondition(format!("palette {} where {t} is required", b.palette())));
        }
    }
    Ok(())
}

/// A Kempe trace from `b1` to `b2`, two `(max_degree + 1)`-colorings of a
/// Class 1 graph that is triangle-free or chordless.
pub fn transform(g: &Graph, b1: &EdgeColoring, b2: &EdgeColoring) -> Result<KempeTrace> {
    check_pair(g, b1, b2, g.max_degree() as u32 + 1)?;
    check_class(g)?;
    if b1 == b2 {
        return Ok(KempeTrace::new());
    }
    let gamma = match find_delta_coloring(g) {
        SolverResult::Coloring(c) => c,
        SolverResult::ClassTwo { palette } => {
            return Err(Error::Precondition(format!("graph has no {palette}-coloring; use the class 2 transformation")))
        }
    };
    let trace = transform_with(g, b1, b2, &gamma)?;
    if !verify_trace(g, b1, &trace, b2)? {
        return Err(Error::Invariant("transformation trace does not reach the target".into()));
    }
    Ok(trace)
}

/// The recursion behind [`transform`], with a `max_degree`-coloring `gamma`
/// supplied. Class checks are left to the caller.
pub fn transform_with(g: &Graph, b1: &EdgeColoring, b2: &EdgeColoring, gamma: &EdgeColoring) -> Result<KempeTrace> {
    let delta = g.max_degree();
    if delta <= 1 {
        // a matching: every edge is its own chain for any pair of colors
        let mut current = b1.clone();
        let mut trace = KempeTrace::new();
        for e in 0..g.edge_count() {
            if current.color(e) != b2.color(e) {
                let step = KempeStep::new(current.color(e), b2.color(e), g.endpoints(e).0);
                swap_in_place(g, &mut current, step)?;
                trace.push(step);
            }
        }
        return Ok(trace);
    }
    let target = gamma.class(1);
    let a1 = align_first_class(g, b1, &target)?;
    let a2 = align_first_class(g, b2, &target)?;

    let removed = crate::coloring::membership(g.edge_count(), &target);
    let (h, kept) = g.without_edges(&removed);
    let restrict = |c: &EdgeColoring, t: u32| EdgeColoring::new(t, kept.iter().map(|&e| c.color(e) - 1).collect());
    let t = delta as u32;
    let inner = transform_with(&h, &restrict(&a1.coloring, t)?, &restrict(&a2.coloring, t)?, &restrict(gamma, t - 1)?)?;
    let mut trace = a1.trace;
    trace.steps.extend(inner.steps.iter().map(|s| KempeStep::new(s.c + 1, s.d + 1, s.anchor)));
    trace.extend(&a2.trace.reversed());
    Ok(trace)
}

/// A Kempe trace between two `(chromatic index + 1)`-colorings of a graph
/// that is triangle-free or chordless. Class 1 inputs are handed to
/// [`transform`]; Class 2 inputs are transformed in the graph doubled at a
/// max-degree vertex and the trace is projected back.
pub fn class2_transform(g: &Graph, b1: &EdgeColoring, b2: &EdgeColoring) -> Result<KempeTrace> {
    check_class(g)?;
    let delta = g.max_degree();
    if let SolverResult::Coloring(gamma) = find_delta_coloring(g) {
        check_pair(g, b1, b2, delta as u32 + 1)?;
        if b1 == b2 {
            return Ok(KempeTrace::new());
        }
        let trace = transform_with(g, b1, b2, &gamma)?;
        if !verify_trace(g, b1, &trace, b2)? {
            return Err(Error::Invariant("transformation trace does not reach the target".into()));
        }
        return Ok(trace);
    }
    let t = delta as u32 + 2;
    check_pair(g, b1, b2, t)?;
    if b1 == b2 {
        return Ok(KempeTrace::new());
    }
    let u = (0..g.vertex_count()).find(|&v| g.degree(v) == delta).expect("graph has edges");
    let map = double_graph(g, u)?;
    let e1 = extend_to_double(g, &map, b1, t)?;
    let e2 = extend_to_double(g, &map, b2, t)?;
    let base = find_coloring(g, delta as u32 + 1)
        .ok_or_else(|| Error::Invariant("no (max degree + 1)-coloring found".into()))?;
    let gamma_h = extend_to_double(g, &map, &base, delta as u32 + 1)?;
    let trace_h = transform_with(&map.h, &e1, &e2, &gamma_h)?;
    let trace = project_trace(g, &map, &e1, &trace_h)?;
    if !verify_trace(g, b1, &trace, b2)? {
        return Err(Error::Invariant("projected trace does not reach the target".into()));
    }
    Ok(trace)
}

/// Copies `alpha` onto both halves of the doubled graph and colors the
/// bridge with the smallest color missing at the hub.
pub fn extend_to_double(g: &Graph, map: &DoublingMap, alpha: &EdgeColoring, t: u32) -> Result<EdgeColoring> {
    let bridge: Color =
        (1..=alpha.palette()).find(|&c| alpha.is_missing(g, map.hub, c)).ok_or(Error::NoMissingColor(map.hub))?;
    let mut colors = vec![0; map.h.edge_count()];
    for e in 0..g.edge_count() {
        colors[map.edges1[e]] = alpha.color(e);
        colors[map.edges2[e]] = alpha.color(e);
    }
    colors[map.bridge] = bridge;
    EdgeColoring::proper(&map.h, t, colors)
}

/// Replays `trace_h` on the doubled graph from `start_h` and keeps, for
/// every change that recolors an edge of the first copy, one change on `g`
/// anchored at an endpoint of the smallest such edge. The projected state is
/// compared with the first copy after every step.
pub fn project_trace(g: &Graph, map: &DoublingMap, start_h: &EdgeColoring, trace_h: &KempeTrace) -> Result<KempeTrace> {
    let restrict = |c: &EdgeColoring| -> Vec<Color> { map.edges1.iter().map(|&e| c.color(e)).collect() };
    let mut current_h = start_h.clone();
    let mut current_g = EdgeColoring::new(start_h.palette(), restrict(start_h))?;
    let mut trace = KempeTrace::new();
    for (i, &step) in trace_h.steps.iter().enumerate() {
        let comp_h = swap_in_place(&map.h, &mut current_h, step)
            .map_err(|e| Error::Replay { step: i, reason: e.to_string() })?;
        let inside: Vec<usize> = comp_h.edges.iter().filter_map(|&e| map.source_edge_in_copy1(e)).collect();
        if let Some(&first) = inside.first() {
            let step_g = KempeStep::new(step.c, step.d, g.endpoints(first).0);
            let comp_g = swap_in_place(g, &mut current_g, step_g)?;
            if comp_g.edges != inside {
                return Err(Error::Invariant(format!(
                    "step {i}: component in g is not the restriction of the doubled component"
                )));
            }
            trace.push(step_g);
        }
        if current_g.colors() != restrict(&current_h).as_slice() {
            return Err(Error::Invariant(format!("step {i}: projected state diverged")));
        }
    }
    debug_assert_eq!(apply_trace(g, &EdgeColoring::new(start_h.palette(), restrict(start_h))?, &trace)?, current_g);
    Ok(trace)
}
