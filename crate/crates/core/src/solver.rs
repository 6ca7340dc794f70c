//! Exact backtracking edge colorer.
//!
//! Connected components are colored independently. A component with more
//! than `t * floor(n / 2)` edges is rejected outright, since each color class
//! is a matching. Otherwise the next edge is always the uncolored edge with
//! the fewest available colors (ties to the smaller index), and colors are
//! tried in ascending order. A color larger than every color used so far is
//! only tried once, since unused colors are interchangeable.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coloring::EdgeColoring;
use crate::graph::Graph;

/// Palettes are kept in a `u64` bitmask per vertex.
pub const MAX_PALETTE: u32 = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverResult {
    /// A proper coloring with palette exactly the maximum degree.
    Coloring(EdgeColoring),
    /// Counting or exhaustive search showed that this palette size is
    /// infeasible.
    ClassTwo { palette: u32 },
}

impl SolverResult {
    pub fn coloring(self) -> Option<EdgeColoring> {
        match self {
            SolverResult::Coloring(c) => Some(c),
            SolverResult::ClassTwo { .. } => None,
        }
    }
}

/// Looks for a coloring with palette `max_degree(g)`.
pub fn find_delta_coloring(g: &Graph) -> SolverResult {
    let delta = g.max_degree() as u32;
    match find_coloring(g, delta) {
        Some(c) => SolverResult::Coloring(c),
        None => SolverResult::ClassTwo { palette: delta },
    }
}

/// A proper `t`-coloring of `g`, or `None` if none exists.
pub fn find_coloring(g: &Graph, t: u32) -> Option<EdgeColoring> {
    by_component(g, t, |search| search.run(&mut Order::<rand_chacha::ChaCha8Rng>::Deterministic))
}

/// A proper `t`-coloring found with randomized value order, or `None` if
/// none exists. Different seeds give widely different colorings.
pub fn random_coloring<R: Rng>(g: &Graph, t: u32, rng: &mut R) -> Option<EdgeColoring> {
    by_component(g, t, |search| search.run(&mut Order::Random(&mut *rng)))
}

fn by_component(g: &Graph, t: u32, mut run: impl FnMut(&mut Search<'_>) -> bool) -> Option<EdgeColoring> {
    if t > MAX_PALETTE || g.max_degree() as u32 > t {
        return None;
    }
    let mut colors = vec![0; g.edge_count()];
    for (vertices, edges) in components(g) {
        if edges.is_empty() {
            continue;
        }
        if edges.len() > t as usize * (vertices.len() / 2) {
            return None;
        }
        let mut local = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let part = Graph::new(
            vertices.len(),
            edges
                .iter()
                .map(|&e| {
                    let (a, b) = g.endpoints(e);
                    (local[a], local[b])
                })
                .collect(),
        )
        .expect("component of a simple graph");
        let mut search = Search::new(&part, t);
        if !run(&mut search) {
            return None;
        }
        for (i, &e) in edges.iter().enumerate() {
            colors[e] = search.colors[i];
        }
    }
    Some(EdgeColoring::new(t, colors).expect("colors within palette"))
}

/// Vertex and edge lists of each connected component, in order of
/// smallest vertex.
fn components(g: &Graph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut vertices = vec![s];
        let mut i = 0;
        while i < vertices.len() {
            for w in g.neighbors(vertices[i]) {
                if !seen[w] {
                    seen[w] = true;
                    vertices.push(w);
                }
            }
            i += 1;
        }
        vertices.sort_unstable();
        let mut edges: Vec<usize> = vertices.iter().flat_map(|&v| g.incident(v).iter().map(|&(_, e)| e)).collect();
        edges.sort_unstable();
        edges.dedup();
        out.push((vertices, edges));
    }
    out
}

enum Order<'r, R> {
    Deterministic,
    Random(&'r mut R),
}

struct Search<'g> {
    g: &'g Graph,
    t: u32,
    full: u64,
    used: Vec<u64>,
    colors: Vec<u32>,
    /// Highest color assigned so far (for symmetry breaking).
    top: u32,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, t: u32) -> Self {
        Search {
            g,
            t,
            full: ((1u64 << t) - 1) << 1,
            used: vec![0; g.vertex_count()],
            colors: vec![0; g.edge_count()],
            top: 0,
        }
    }

    fn available(&self, e: usize) -> u64 {
        let (a, b) = self.g.endpoints(e);
        self.full & !(self.used[a] | self.used[b])
    }

    fn pick(&self) -> Option<(usize, u64)> {
        let mut best: Option<(usize, u64)> = None;
        for e in 0..self.colors.len() {
            if self.colors[e] != 0 {
                continue;
            }
            let avail = self.available(e);
            if best.is_none_or(|(_, b)| avail.count_ones() < b.count_ones()) {
                best = Some((e, avail));
                if avail == 0 {
                    break;
                }
            }
        }
        best
    }

    fn run<R: Rng>(&mut self, order: &mut Order<'_, R>) -> bool {
        let Some((e, avail)) = self.pick() else {
            return true;
        };
        let mut choices: Vec<u32> = (1..=self.t).filter(|&c| avail & (1 << c) != 0).collect();
        match order {
            Order::Deterministic => {
                // any color above `top` is equivalent to `top + 1`
                choices.retain(|&c| c <= self.top + 1);
            }
            Order::Random(rng) => choices.shuffle(*rng),
        }
        let (a, b) = self.g.endpoints(e);
        for c in choices {
            let bit = 1u64 << c;
            self.colors[e] = c;
            self.used[a] |= bit;
            self.used[b] |= bit;
            let saved_top = self.top;
            self.top = self.top.max(c);
            if self.run(order) {
                return true;
            }
            self.top = saved_top;
            self.colors[e] = 0;
            self.used[a] &= !bit;
            self.used[b] &= !bit;
        }
        false
    }
}
