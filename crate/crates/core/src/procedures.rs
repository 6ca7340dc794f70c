//! Trace-producing recoloring procedures.
//!
//! Each procedure starts from a proper coloring and a missing assignment,
//! performs explicit Kempe changes, and checks its end state: the cycle
//! shifts must land exactly on [`shift_target`], and the ugly-edge
//! reductions must shrink color class 1 by exactly the ugly edge.

use crate::coloring::{
    classify_with, kempe_component, swap_in_place, ChainComponent, Color, EdgeColoring, KempeStep, KempeTrace,
    MissingAssignment,
};
use crate::error::{Error, Result};
use crate::fan::{build_fan, is_saturated, shift_path_fan, shift_target, unsaturated_index, Fan, FanKind};
use crate::graph::Graph;

/// The edge set that color 1 is being aligned to. Must be a matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetClass {
    edges: Vec<usize>,
    mask: Vec<bool>,
}

impl TargetClass {
    pub fn new(g: &Graph, edges: &[usize]) -> Result<Self> {
        g.check_matching(edges)?;
        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        let mask = crate::coloring::membership(g.edge_count(), &sorted);
        Ok(TargetClass { edges: sorted, mask })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.mask[e]
    }

    /// `(bad, ugly)` of `alpha` relative to this class.
    pub fn counts(&self, alpha: &EdgeColoring) -> (usize, usize) {
        classify_with(alpha, &self.mask).counts()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Effect {
    UglyDecreased,
    BadDecreased,
    ShiftRealized,
}

#[derive(Debug, Clone)]
pub struct ReductionOutcome {
    pub coloring: EdgeColoring,
    pub missing: MissingAssignment,
    pub trace: KempeTrace,
    pub effect: Effect,
    /// `(bad, ugly)` before and after, when a target class was in scope.
    pub before: Option<(usize, usize)>,
    pub after: Option<(usize, usize)>,
}

/// Applies Kempe changes to a working copy while recording them.
struct Recorder<'g> {
    g: &'g Graph,
    current: EdgeColoring,
    trace: KempeTrace,
}

impl<'g> Recorder<'g> {
    fn new(g: &'g Graph, start: &EdgeColoring) -> Self {
        Recorder { g, current: start.clone(), trace: KempeTrace::new() }
    }

    fn swap(&mut self, c: Color, d: Color, anchor: usize) -> Result<ChainComponent> {
        let step = KempeStep::new(c, d, anchor);
        let comp = swap_in_place(self.g, &mut self.current, step)?;
        self.trace.push(step);
        Ok(comp)
    }

    fn touches(&self, v: usize, c: Color, d: Color) -> bool {
        !self.current.is_missing(self.g, v, c) || !self.current.is_missing(self.g, v, d)
    }

    fn absorb(&mut self, coloring: EdgeColoring, trace: &KempeTrace) {
        self.current = coloring;
        self.trace.extend(trace);
    }

    fn path_shift(&mut self, fan: &Fan) -> Result<MissingAssignment> {
        let (next, m, trace) = shift_path_fan(self.g, &self.current, fan)?;
        self.absorb(next, &trace);
        Ok(m)
    }
}

fn breach(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}

fn expect_fan(fan: &Fan, kind: FanKind, spokes: &[usize], what: &str) -> Result<()> {
    if fan.kind != kind || fan.spokes != spokes {
        return Err(breach(format!("{what}: expected {kind:?} fan {spokes:?}, found {:?} {:?}", fan.kind, fan.spokes)));
    }
    Ok(())
}

fn finish_shift(g: &Graph, alpha: &EdgeColoring, fan: &Fan, rec: Recorder<'_>, what: &str) -> Result<ReductionOutcome> {
    let (expected, missing) = shift_target(g, alpha, fan)?;
    if rec.current != expected {
        return Err(breach(format!("{what} did not reach the direct shift at {}", fan.center)));
    }
    Ok(ReductionOutcome {
        coloring: rec.current,
        missing,
        trace: rec.trace,
        effect: Effect::ShiftRealized,
        before: None,
        after: None,
    })
}

/// A cycle fan with two spokes is shifted by one Kempe change on the
/// two-edge path `x_0 - u - x_1`.
fn two_spoke_cycle_shift(g: &Graph, alpha: &EdgeColoring, fan: &Fan) -> Result<ReductionOutcome> {
    debug_assert!(fan.is_cycle() && fan.p() == 1);
    let mut rec = Recorder::new(g, alpha);
    let comp = rec.swap(alpha.color(fan.spokes[0]), alpha.color(fan.spokes[1]), fan.center)?;
    let mut expected = fan.spokes.clone();
    expected.sort_unstable();
    if comp.edges != expected {
        return Err(breach("two-spoke cycle component is not the two spokes"));
    }
    finish_shift(g, alpha, fan, rec, "two-spoke cycle shift")
}

/// Shift of a non-saturated cycle fan. After rotating so that index 0 is
/// unsaturated: swap the chain at `x_p`, shift the resulting path fan, then
/// swap the chain through `ux_p`.
pub fn unsaturated_cycle_shift(g: &Graph, alpha: &EdgeColoring, fan: &Fan) -> Result<ReductionOutcome> {
    if !fan.is_cycle() {
        return Err(Error::Precondition("expected a cycle fan".into()));
    }
    let idx = unsaturated_index(g, alpha, fan)?
        .ok_or_else(|| Error::Precondition(format!("cycle fan at {} is saturated", fan.center)))?;
    let u = fan.center;
    let m = &fan.missing;
    let rotated = if idx == 0 {
        fan.clone()
    } else {
        let r = build_fan(g, alpha, m, u, fan.leaves[idx])?;
        let mut spokes = fan.spokes.clone();
        spokes.rotate_left(idx);
        expect_fan(&r, FanKind::Cycle, &spokes, "rotation")?;
        r
    };
    let first = alpha.color(rotated.spokes[0]);
    let mu = m.get(u);
    let xp = rotated.last_leaf();

    let mut rec = Recorder::new(g, alpha);
    if rec.touches(xp, first, mu) {
        let c = rec.swap(first, mu, xp)?;
        if c.contains_vertex(u) {
            return Err(breach("chain at x_p reaches the center"));
        }
    }
    let mut m1 = m.clone();
    m1.set(g, &rec.current, xp, mu)?;
    let path = build_fan(g, &rec.current, &m1, u, rotated.leaves[0])?;
    expect_fan(&path, FanKind::Path, &rotated.spokes, "opened cycle")?;
    rec.path_shift(&path)?;
    let c2 = rec.swap(first, mu, u)?;
    if !c2.contains_vertex(xp) {
        return Err(breach("closing chain misses x_p"));
    }
    finish_shift(g, alpha, fan, rec, "unsaturated cycle shift")
}

/// Shift of a saturated cycle fan `X_u(alpha, v)` using the cycle fan
/// `X_v(alpha, u) = (vu, vy_1, ..., vy_q)`, `q >= 2`, at the other end of
/// the first spoke. Requires the leaf sets `{x_i}` and `{y_j}` to be
/// disjoint, which holds in triangle-free and chordless graphs.
pub fn saturated_cycle_shift(g: &Graph, alpha: &EdgeColoring, fan_u: &Fan, fan_v: &Fan) -> Result<ReductionOutcome> {
    let u = fan_u.center;
    let v = fan_u.leaves[0];
    if !fan_u.is_cycle() || !fan_v.is_cycle() {
        return Err(Error::Precondition("both fans must be cycles".into()));
    }
    if fan_v.center != v || fan_v.leaves[0] != u || fan_u.missing != fan_v.missing {
        return Err(Error::Precondition("fans must be X_u(alpha,v) and X_v(alpha,u) under one assignment".into()));
    }
    let m = &fan_u.missing;
    if m.get(u) == m.get(v) {
        return Err(Error::Precondition("m(u) = m(v)".into()));
    }
    if !is_saturated(g, alpha, fan_u)? {
        return Err(Error::Precondition(format!("cycle fan at {u} is not saturated")));
    }
    if fan_u.p() == 1 {
        return two_spoke_cycle_shift(g, alpha, fan_u);
    }
    let q = fan_v.p();
    if q < 2 {
        return Err(Error::Precondition(format!("fan at {v} has q = {q} < 2")));
    }
    if let Some(&x) = fan_u.leaves[1..].iter().find(|x| fan_v.leaves[1..].contains(x)) {
        return Err(Error::LeafOverlap(x));
    }

    let a = alpha.color(fan_u.spokes[0]);
    let b = m.get(u);
    let cv = m.get(v);
    let xp = fan_u.last_leaf();
    let y1 = fan_v.leaves[1];
    let yq = fan_v.last_leaf();
    let fan_edges: Vec<usize> = fan_u.spokes.iter().chain(&fan_v.spokes[1..]).copied().collect();

    let p_chain = kempe_component(g, alpha, a, b, u)?;
    if !p_chain.contains_vertex(xp) || !p_chain.contains_vertex(y1) || p_chain.contains_vertex(yq) {
        return Err(breach("chain P through u does not run from u via y_1 to x_p"));
    }

    let mut rec = Recorder::new(g, alpha);
    let c_present = rec.touches(yq, a, b);
    if c_present {
        let c = rec.swap(a, b, yq)?;
        if c.edges.iter().any(|e| fan_edges.contains(e)) || c.contains_vertex(u) || c.contains_vertex(v) {
            return Err(breach("chain C at y_q meets the fans"));
        }
    }
    let mut m1 = m.clone();
    m1.set(g, &rec.current, yq, b)?;
    let fan1 = build_fan(g, &rec.current, &m1, u, v)?;
    expect_fan(&fan1, FanKind::Cycle, &fan_u.spokes, "fan at u after swapping C")?;

    if !is_saturated(g, &rec.current, &fan1)? {
        let inner = unsaturated_cycle_shift(g, &rec.current, &fan1)?;
        rec.absorb(inner.coloring, &inner.trace);
    } else {
        if rec.touches(yq, b, cv) {
            let c2 = rec.swap(b, cv, yq)?;
            if c2.edges.iter().any(|e| fan_edges.contains(e)) || c2.contains_vertex(u) || c2.contains_vertex(v) {
                return Err(breach("chain C' at y_q meets the fans"));
            }
        }
        let mut m2 = m1;
        m2.set(g, &rec.current, yq, cv)?;
        let fan_v2 = build_fan(g, &rec.current, &m2, v, u)?;
        expect_fan(&fan_v2, FanKind::Path, &fan_v.spokes, "fan at v after swapping C'")?;
        let m3 = rec.path_shift(&fan_v2)?;

        let fan_u3 = build_fan(g, &rec.current, &m3, u, fan_u.leaves[1])?;
        expect_fan(&fan_u3, FanKind::Path, &fan_u.spokes[1..], "fan at u from x_1")?;
        let mut m5 = rec.path_shift(&fan_u3)?;

        let uv = fan_u.spokes[0];
        let vyq = *fan_v.spokes.last().unwrap();
        let joined = rec.swap(b, cv, v)?;
        if !joined.contains_edge(uv) || !joined.contains_edge(vyq) {
            return Err(breach("chain C' + {uv, vy_q} is not one component"));
        }
        m5.set(g, &rec.current, u, b).map_err(|_| breach("m(u) unavailable after the joined swap"))?;
        let mut order = vec![fan_v.spokes[1], vyq];
        order.extend(fan_v.spokes[2..q].iter().rev());
        let fan_v5 = build_fan(g, &rec.current, &m5, v, y1)?;
        expect_fan(&fan_v5, FanKind::Cycle, &order, "reversed fan at v")?;
        let inner = unsaturated_cycle_shift(g, &rec.current, &fan_v5)?;
        rec.absorb(inner.coloring, &inner.trace);
    }
    if c_present {
        rec.swap(a, b, yq)?;
    }
    finish_shift(g, alpha, fan_u, rec, "saturated cycle shift")
}

/// Shift of any cycle fan whose partner fan allows it: two spokes directly,
/// unsaturated via [`unsaturated_cycle_shift`], saturated via
/// [`saturated_cycle_shift`] with the fan at the first leaf.
pub fn cycle_shift(g: &Graph, alpha: &EdgeColoring, fan_u: &Fan) -> Result<ReductionOutcome> {
    if !fan_u.is_cycle() {
        return Err(Error::Precondition("expected a cycle fan".into()));
    }
    if fan_u.p() == 1 {
        return two_spoke_cycle_shift(g, alpha, fan_u);
    }
    if !is_saturated(g, alpha, fan_u)? {
        return unsaturated_cycle_shift(g, alpha, fan_u);
    }
    let fan_v = build_fan(g, alpha, &fan_u.missing, fan_u.leaves[0], fan_u.center)?;
    saturated_cycle_shift(g, alpha, fan_u, &fan_v)
}

fn check_ugly(g: &Graph, alpha: &EdgeColoring, target: &TargetClass, e: usize, u: usize) -> Result<usize> {
    if e >= g.edge_count() {
        return Err(Error::Precondition(format!("edge {e} out of range")));
    }
    let (a, b) = g.endpoints(e);
    if u != a && u != b {
        return Err(Error::Precondition(format!("{u} is not an endpoint of edge {e}")));
    }
    if alpha.color(e) != 1 || target.contains(e) {
        return Err(Error::Precondition(format!("edge {e} is not ugly")));
    }
    Ok(g.other(e, u))
}

fn finish_ugly(
    alpha: &EdgeColoring,
    target: &TargetClass,
    e: usize,
    rec: Recorder<'_>,
    missing: MissingAssignment,
) -> Result<ReductionOutcome> {
    let mut expected = alpha.class(1);
    expected.retain(|&f| f != e);
    if rec.current.class(1) != expected {
        return Err(breach(format!("color class 1 did not lose exactly edge {e}")));
    }
    let before = target.counts(alpha);
    let after = target.counts(&rec.current);
    if after.0 > before.0 || after.1 >= before.1 {
        return Err(breach(format!("ugly reduction went from {before:?} to {after:?}")));
    }
    Ok(ReductionOutcome {
        coloring: rec.current,
        missing,
        trace: rec.trace,
        effect: Effect::UglyDecreased,
        before: Some(before),
        after: Some(after),
    })
}

/// Removes color 1 from the ugly edge `uv` when `X_u(alpha, v)` is a path or
/// a comet. Color class 1 loses exactly `uv`.
pub fn resolve_noncycle_ugly(
    g: &Graph,
    alpha: &EdgeColoring,
    m: &MissingAssignment,
    target: &TargetClass,
    ugly: usize,
    u: usize,
) -> Result<ReductionOutcome> {
    let v = check_ugly(g, alpha, target, ugly, u)?;
    let fan = build_fan(g, alpha, m, u, v)?;
    let mut rec = Recorder::new(g, alpha);
    let missing = match fan.kind {
        FanKind::Cycle => {
            return Err(Error::Precondition(format!("fan at {u} from {v} is a cycle")));
        }
        FanKind::Path => rec.path_shift(&fan)?,
        FanKind::Comet { q } => {
            let mu = m.get(u);
            let reentry = alpha.color(fan.spokes[q]);
            let before_reentry = fan.leaves[q - 1];
            let c = rec.swap(mu, reentry, u)?;
            if !c.contains_edge(fan.spokes[q]) {
                return Err(breach("comet chain misses the re-entry spoke"));
            }
            let mut m1 = m.clone();
            let path = if !c.contains_vertex(before_reentry) {
                m1.set(g, &rec.current, u, reentry)?;
                let f = build_fan(g, &rec.current, &m1, u, v)?;
                expect_fan(&f, FanKind::Path, &fan.spokes[..q], "truncated comet")?;
                f
            } else {
                m1.set(g, &rec.current, u, m.get(fan.last_leaf()))?;
                m1.set(g, &rec.current, before_reentry, mu)?;
                let f = build_fan(g, &rec.current, &m1, u, v)?;
                expect_fan(&f, FanKind::Path, &fan.spokes, "straightened comet")?;
                f
            };
            rec.path_shift(&path)?
        }
    };
    finish_ugly(alpha, target, ugly, rec, missing)
}

/// Drops the last spoke of a cycle fan at an ugly edge by swapping the chain
/// of `K(m(u), color(ux_p))` through `ux_p`, then shifts the shortened path
/// fan. Needs that chain to avoid `x_{p-1}`.
fn drop_last_spoke(
    g: &Graph,
    alpha: &EdgeColoring,
    target: &TargetClass,
    ugly: usize,
    fan: &Fan,
) -> Result<ReductionOutcome> {
    let u = fan.center;
    let v = fan.leaves[0];
    let p = fan.p();
    let m = &fan.missing;
    let last = alpha.color(fan.spokes[p]);
    let prev = fan.leaves[p - 1];
    let chain = kempe_component(g, alpha, m.get(u), last, u)?;
    if chain.contains_vertex(prev) {
        return Err(Error::ClassBreach(format!("chain through spoke {} reaches x_(p-1) = {prev}", fan.spokes[p])));
    }
    let mut rec = Recorder::new(g, alpha);
    rec.swap(m.get(u), last, u)?;
    let mut m1 = m.clone();
    m1.set(g, &rec.current, u, m.get(prev))?;
    let path = build_fan(g, &rec.current, &m1, u, v)?;
    expect_fan(&path, FanKind::Path, &fan.spokes[..p], "fan without its last spoke")?;
    let missing = rec.path_shift(&path)?;
    finish_ugly(alpha, target, ugly, rec, missing)
}

/// Ugly edge `uv` whose cycle fan `X_u(alpha, v) = (ux_0, ..., ux_p)`,
/// `p >= 1`, closes a triangle through `vx_p`.
pub fn resolve_chord_ugly(
    g: &Graph,
    alpha: &EdgeColoring,
    m: &MissingAssignment,
    target: &TargetClass,
    ugly: usize,
    u: usize,
) -> Result<ReductionOutcome> {
    let v = check_ugly(g, alpha, target, ugly, u)?;
    let fan = build_fan(g, alpha, m, u, v)?;
    if !fan.is_cycle() || fan.p() < 1 {
        return Err(Error::Precondition(format!("fan at {u} from {v} is not a cycle")));
    }
    if !g.has_edge(v, fan.last_leaf()) {
        return Err(Error::Precondition(format!("{v} and x_p = {} are not adjacent", fan.last_leaf())));
    }
    drop_last_spoke(g, alpha, target, ugly, &fan)
}

/// Same reduction as [`resolve_chord_ugly`] without requiring `vx_p` to be
/// an edge; it applies whenever the chain through `ux_p` avoids `x_{p-1}`.
pub fn drop_last_spoke_ugly(
    g: &Graph,
    alpha: &EdgeColoring,
    m: &MissingAssignment,
    target: &TargetClass,
    ugly: usize,
    u: usize,
) -> Result<ReductionOutcome> {
    let v = check_ugly(g, alpha, target, ugly, u)?;
    let fan = build_fan(g, alpha, m, u, v)?;
    if !fan.is_cycle() {
        return Err(Error::Precondition(format!("fan at {u} from {v} is not a cycle")));
    }
    drop_last_spoke(g, alpha, target, ugly, &fan)
}

/// A bad edge with color 1 missing at both ends is recolored 1 by a single
/// edge Kempe change.
pub fn recolor_isolated_bad(
    g: &Graph,
    alpha: &EdgeColoring,
    target: &TargetClass,
    bad: usize,
) -> Result<ReductionOutcome> {
    if bad >= g.edge_count() || !target.contains(bad) || alpha.color(bad) == 1 {
        return Err(Error::Precondition(format!("edge {bad} is not bad")));
    }
    let (x, y) = g.endpoints(bad);
    for z in [x, y] {
        if !alpha.is_missing(g, z, 1) {
            return Err(Error::Precondition(format!("color 1 is present at {z}")));
        }
    }
    let before = target.counts(alpha);
    let mut rec = Recorder::new(g, alpha);
    let comp = rec.swap(alpha.color(bad), 1, x)?;
    if comp.edges != [bad] {
        return Err(breach("isolated bad edge is not its own chain"));
    }
    let after = target.counts(&rec.current);
    let missing = crate::coloring::choose_missing(g, &rec.current, crate::coloring::MissingPolicy::OneLast)?;
    Ok(ReductionOutcome {
        coloring: rec.current,
        missing,
        trace: rec.trace,
        effect: Effect::BadDecreased,
        before: Some(before),
        after: Some(after),
    })
}
