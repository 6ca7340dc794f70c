//! Proper edge colorings, missing colors, Kempe chains and replayable traces.
//!
//! Colors are `1..=t`. A Kempe change is recorded as a color pair plus an
//! anchor vertex; since the components of `K(c,d)` are vertex-disjoint, the
//! anchor names exactly one component, and it stays inside that component
//! after the swap, so records can be replayed in reverse.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Color = u32;

/// A total edge coloring with palette `1..=t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeColoring {
    t: u32,
    colors: Vec<Color>,
}

impl EdgeColoring {
    /// Wraps a color vector without checking properness; see
    /// [`EdgeColoring::proper`] for the checked constructor.
    pub fn new(t: u32, colors: Vec<Color>) -> Result<Self> {
        if let Some((e, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > t) {
            return Err(Error::ColoringMismatch(format!("edge {e} has color {c} outside 1..={t}")));
        }
        Ok(EdgeColoring { t, colors })
    }

    /// Checked constructor: palette range, edge count and properness.
    pub fn proper(g: &Graph, t: u32, colors: Vec<Color>) -> Result<Self> {
        let coloring = EdgeColoring::new(t, colors)?;
        coloring.check_proper(g)?;
        Ok(coloring)
    }

    pub fn palette(&self) -> u32 {
        self.t
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, e: usize) -> Color {
        self.colors[e]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// The color class `M(alpha, j)` as sorted edge indices.
    pub fn class(&self, j: Color) -> Vec<usize> {
        (0..self.colors.len()).filter(|&e| self.colors[e] == j).collect()
    }

    pub fn with_palette(&self, t: u32) -> Result<Self> {
        EdgeColoring::new(t, self.colors.clone())
    }

    pub(crate) fn set(&mut self, e: usize, c: Color) {
        self.colors[e] = c;
    }

    /// The edge at `v` colored `c`, if any.
    pub fn edge_with_color(&self, g: &Graph, v: usize, c: Color) -> Option<usize> {
        g.incident(v).iter().map(|&(_, e)| e).find(|&e| self.colors[e] == c)
    }

    pub fn is_missing(&self, g: &Graph, v: usize, c: Color) -> bool {
        self.edge_with_color(g, v, c).is_none()
    }

    pub fn check_proper(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.edge_count() {
            return Err(Error::ColoringMismatch(format!("{} colors for {} edges", self.colors.len(), g.edge_count())));
        }
        match validate_proper(g, self)?.first() {
            Some(&(e, f)) => Err(Error::NotProper(e, f)),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: EdgeColoring = serde_json::from_str(text)?;
        EdgeColoring::new(raw.t, raw.colors)
    }
}

/// All pairs of adjacent edges sharing a color, each pair listed once with
/// the smaller index first. Empty exactly when the coloring is proper.
pub fn validate_proper(g: &Graph, alpha: &EdgeColoring) -> Result<Vec<(usize, usize)>> {
    if alpha.len() != g.edge_count() {
        return Err(Error::ColoringMismatch(format!("{} colors for {} edges", alpha.len(), g.edge_count())));
    }
    let mut violations = Vec::new();
    for v in 0..g.vertex_count() {
        let inc = g.incident(v);
        for (i, &(_, e)) in inc.iter().enumerate() {
            for &(_, f) in &inc[i + 1..] {
                if alpha.color(e) == alpha.color(f) {
                    violations.push((e.min(f), e.max(f)));
                }
            }
        }
    }
    violations.sort_unstable();
    Ok(violations)
}

/// Colors of `1..=t` absent at `v`, ascending.
pub fn missing_colors(g: &Graph, alpha: &EdgeColoring, v: usize) -> Vec<Color> {
    let mut present = vec![false; alpha.palette() as usize + 1];
    for &(_, e) in g.incident(v) {
        present[alpha.color(e) as usize] = true;
    }
    (1..=alpha.palette()).filter(|&c| !present[c as usize]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MissingPolicy {
    /// Smallest missing color.
    Plain,
    /// Smallest missing color other than 1; 1 only when it is the sole one.
    OneLast,
}

/// One chosen missing color per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingAssignment {
    chosen: Vec<Color>,
    policy: MissingPolicy,
}

impl MissingAssignment {
    pub fn get(&self, v: usize) -> Color {
        self.chosen[v]
    }

    pub fn policy(&self) -> MissingPolicy {
        self.policy
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.chosen
    }

    /// Vertices whose chosen color is 1.
    pub fn is_free(&self, v: usize) -> bool {
        self.chosen[v] == 1
    }

    /// Re-points `v` at another missing color. Fails if `c` is present at `v`.
    pub fn set(&mut self, g: &Graph, alpha: &EdgeColoring, v: usize, c: Color) -> Result<()> {
        if c == 0 || c > alpha.palette() || !alpha.is_missing(g, v, c) {
            return Err(Error::InvalidMissing(v));
        }
        self.chosen[v] = c;
        Ok(())
    }

    /// Assigns without checking; callers re-validate with [`Self::check`].
    pub(crate) fn assign(&mut self, v: usize, c: Color) {
        self.chosen[v] = c;
    }

    /// Builds an assignment from explicit colors, validating each one.
    pub fn from_colors(g: &Graph, alpha: &EdgeColoring, chosen: Vec<Color>) -> Result<Self> {
        let m = MissingAssignment { chosen, policy: MissingPolicy::Plain };
        m.check(g, alpha)?;
        Ok(m)
    }

    /// Every chosen color is missing at its vertex.
    pub fn check(&self, g: &Graph, alpha: &EdgeColoring) -> Result<()> {
        if self.chosen.len() != g.vertex_count() {
            return Err(Error::ColoringMismatch("missing assignment length".into()));
        }
        for v in 0..g.vertex_count() {
            let c = self.chosen[v];
            if c == 0 || c > alpha.palette() || !alpha.is_missing(g, v, c) {
                return Err(Error::InvalidMissing(v));
            }
        }
        Ok(())
    }
}

/// Chooses one missing color per vertex by the given policy, taking the
/// smallest admissible color.
pub fn choose_missing(g: &Graph, alpha: &EdgeColoring, policy: MissingPolicy) -> Result<MissingAssignment> {
    let mut chosen = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let missing = missing_colors(g, alpha, v);
        let pick = match policy {
            MissingPolicy::Plain => missing.first().copied(),
            MissingPolicy::OneLast => missing.iter().copied().find(|&c| c != 1).or_else(|| missing.first().copied()),
        };
        chosen.push(pick.ok_or(Error::NoMissingColor(v))?);
    }
    Ok(MissingAssignment { chosen, policy })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainShape {
    Path,
    EvenCycle,
}

/// One connected component of `K(c,d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComponent {
    pub colors: (Color, Color),
    /// Sorted edge indices.
    pub edges: Vec<usize>,
    /// Sorted vertices.
    pub vertices: Vec<usize>,
    pub shape: ChainShape,
    /// The two degree-1 vertices of a path component.
    pub endpoints: Option<(usize, usize)>,
}

impl ChainComponent {
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// The component of `K(c,d)` containing `anchor`.
pub fn kempe_component(g: &Graph, alpha: &EdgeColoring, c: Color, d: Color, anchor: usize) -> Result<ChainComponent> {
    g.check_vertex(anchor)?;
    if c == d {
        return Err(Error::Precondition(format!("Kempe chain needs two distinct colors, got {c} twice")));
    }
    let in_pair = |e: usize| {
        let x = alpha.color(e);
        x == c || x == d
    };
    if !g.incident(anchor).iter().any(|&(_, e)| in_pair(e)) {
        return Err(Error::EmptyAnchor { c, d, anchor });
    }
    let mut seen_vertex = vec![false; g.vertex_count()];
    let mut seen_edge = vec![false; g.edge_count()];
    let mut vertices = vec![anchor];
    let mut edges = Vec::new();
    seen_vertex[anchor] = true;
    let mut queue = VecDeque::from([anchor]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in g.incident(x) {
            if in_pair(e) && !seen_edge[e] {
                seen_edge[e] = true;
                edges.push(e);
                if !seen_vertex[y] {
                    seen_vertex[y] = true;
                    vertices.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    vertices.sort_unstable();
    edges.sort_unstable();
    let ends: Vec<usize> =
        vertices.iter().copied().filter(|&x| g.incident(x).iter().filter(|&&(_, e)| in_pair(e)).count() == 1).collect();
    let (shape, endpoints) = match ends.as_slice() {
        [] => (ChainShape::EvenCycle, None),
        &[a, b] => (ChainShape::Path, Some((a, b))),
        _ => {
            return Err(Error::NotProper(edges[0], edges[edges.len() - 1]));
        }
    };
    Ok(ChainComponent { colors: (c, d), edges, vertices, shape, endpoints })
}

/// One Kempe change: swap `c` and `d` on the component of `K(c,d)` at `anchor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KempeStep {
    pub c: Color,
    pub d: Color,
    pub anchor: usize,
}

impl KempeStep {
    pub fn new(c: Color, d: Color, anchor: usize) -> Self {
        KempeStep { c, d, anchor }
    }
}

/// An ordered sequence of Kempe changes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeTrace {
    pub steps: Vec<KempeStep>,
}

impl KempeTrace {
    pub fn new() -> Self {
        KempeTrace::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: KempeStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: &KempeTrace) {
        self.steps.extend_from_slice(&other.steps);
    }

    /// The inverse trace: same records, reversed order.
    pub fn reversed(&self) -> KempeTrace {
        KempeTrace { steps: self.steps.iter().rev().copied().collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Swaps `c` and `d` on the component at `anchor`, returning the new
/// coloring, the step record and the component that was swapped.
pub fn kempe_swap(
    g: &Graph,
    alpha: &EdgeColoring,
    c: Color,
    d: Color,
    anchor: usize,
) -> Result<(EdgeColoring, KempeStep, ChainComponent)> {
    let mut next = alpha.clone();
    let comp = swap_in_place(g, &mut next, KempeStep::new(c, d, anchor))?;
    Ok((next, KempeStep::new(c, d, anchor), comp))
}

pub(crate) fn swap_in_place(g: &Graph, alpha: &mut EdgeColoring, step: KempeStep) -> Result<ChainComponent> {
    let (c, d) = (step.c, step.d);
    for x in [c, d] {
        if x == 0 || x > alpha.palette() {
            return Err(Error::Precondition(format!("color {x} outside 1..={}", alpha.palette())));
        }
    }
    let comp = kempe_component(g, alpha, c, d, step.anchor)?;
    for &e in &comp.edges {
        let x = alpha.color(e);
        alpha.set(e, if x == c { d } else { c });
    }
    Ok(comp)
}

/// Replays `trace` from `alpha`.
pub fn apply_trace(g: &Graph, alpha: &EdgeColoring, trace: &KempeTrace) -> Result<EdgeColoring> {
    let mut current = alpha.clone();
    for (i, &step) in trace.steps.iter().enumerate() {
        swap_in_place(g, &mut current, step).map_err(|e| Error::Replay { step: i, reason: e.to_string() })?;
    }
    Ok(current)
}

/// Replays `trace` and compares the result with `target` edge by edge.
pub fn verify_trace(g: &Graph, alpha: &EdgeColoring, trace: &KempeTrace, target: &EdgeColoring) -> Result<bool> {
    let end = apply_trace(g, alpha, trace)?;
    Ok(end.colors() == target.colors())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeStatus {
    Good,
    Bad,
    Ugly,
    Neutral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub statuses: Vec<EdgeStatus>,
    pub bad: usize,
    pub ugly: usize,
}

impl Classification {
    /// `(bad, ugly)`, compared lexicographically by the descent.
    pub fn counts(&self) -> (usize, usize) {
        (self.bad, self.ugly)
    }
}

/// Labels each edge relative to a target class for color 1.
pub fn classify_edges(g: &Graph, alpha: &EdgeColoring, target: &[usize]) -> Result<Classification> {
    g.check_matching(target)?;
    let in_target = membership(g.edge_count(), target);
    Ok(classify_with(alpha, &in_target))
}

pub(crate) fn membership(m: usize, set: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; m];
    for &e in set {
        mask[e] = true;
    }
    mask
}

pub(crate) fn classify_with(alpha: &EdgeColoring, in_target: &[bool]) -> Classification {
    let statuses: Vec<EdgeStatus> = (0..alpha.len())
        .map(|e| match (in_target[e], alpha.color(e) == 1) {
            (true, true) => EdgeStatus::Good,
            (true, false) => EdgeStatus::Bad,
            (false, true) => EdgeStatus::Ugly,
            (false, false) => EdgeStatus::Neutral,
        })
        .collect();
    let bad = statuses.iter().filter(|&&s| s == EdgeStatus::Bad).count();
    let ugly = statuses.iter().filter(|&&s| s == EdgeStatus::Ugly).count();
    Classification { statuses, bad, ugly }
}
