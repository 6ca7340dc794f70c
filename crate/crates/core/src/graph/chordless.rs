//! Chordless recognition by a per-edge disjoint-paths test.
//!
//! Edge `uv` is a chord of some cycle exactly when `G - uv` holds two
//! internally vertex-disjoint `u`-`v` paths. Each edge is checked with two
//! rounds of augmenting-path search on the vertex-split network.

use std::collections::VecDeque;

use serde::Serialize;

use super::Graph;

/// A cycle together with an edge joining two of its nonconsecutive vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChordWitness {
    pub cycle: Vec<usize>,
    pub chord: usize,
}

impl ChordWitness {
    /// Checks the witness against `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let k = self.cycle.len();
        if k < 4 {
            return false;
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &self.cycle {
            if v >= g.vertex_count() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if !(0..k).all(|i| g.has_edge(self.cycle[i], self.cycle[(i + 1) % k])) {
            return false;
        }
        let (a, b) = g.endpoints(self.chord);
        let (Some(i), Some(j)) = (self.cycle.iter().position(|&v| v == a), self.cycle.iter().position(|&v| v == b))
        else {
            return false;
        };
        let gap = i.abs_diff(j);
        gap != 1 && gap != k - 1
    }
}

/// `Ok(())` when no edge of `g` is a chord of any cycle, otherwise a witness.
pub fn is_chordless(g: &Graph) -> Result<(), ChordWitness> {
    for e in 0..g.edge_count() {
        if let Some(cycle) = chord_cycle(g, e) {
            return Err(ChordWitness { cycle, chord: e });
        }
    }
    Ok(())
}

/// A cycle through both endpoints of `e` avoiding `e` itself, if any.
fn chord_cycle(g: &Graph, e: usize) -> Option<Vec<usize>> {
    let (u, v) = g.endpoints(e);
    if g.degree(u) < 3 || g.degree(v) < 3 {
        return None;
    }
    let mut net = SplitNetwork::new(g, e);
    let source = SplitNetwork::out_node(u);
    let sink = SplitNetwork::in_node(v);
    for _ in 0..2 {
        if !net.augment(source, sink) {
            return None;
        }
    }
    let first = net.take_path(source, sink);
    let second = net.take_path(source, sink);
    let mut cycle = first;
    cycle.extend(second.into_iter().rev().skip(1).take_while(|&w| w != u));
    Some(cycle)
}

struct Arc {
    to: usize,
    cap: i32,
}

/// Unit-capacity network where vertex `x` becomes `in(x) -> out(x)`.
struct SplitNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn in_node(x: usize) -> usize {
        2 * x
    }

    fn out_node(x: usize) -> usize {
        2 * x + 1
    }

    fn new(g: &Graph, skip: usize) -> Self {
        let mut net = SplitNetwork { arcs: Vec::new(), out: vec![Vec::new(); 2 * g.vertex_count()] };
        for x in 0..g.vertex_count() {
            net.add(Self::in_node(x), Self::out_node(x));
        }
        for (i, &(a, b)) in g.edges().iter().enumerate() {
            if i != skip {
                net.add(Self::out_node(a), Self::in_node(b));
                net.add(Self::out_node(b), Self::in_node(a));
            }
        }
        net
    }

    fn add(&mut self, from: usize, to: usize) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap: 1 });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut queue = VecDeque::from([source]);
        let mut reached = vec![false; self.out.len()];
        reached[source] = true;
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &a in &self.out[x] {
                let y = self.arcs[a].to;
                if self.arcs[a].cap > 0 && !reached[y] {
                    reached[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !reached[sink] {
            return false;
        }
        let mut x = sink;
        while x != source {
            let a = via[x];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            x = self.arcs[a ^ 1].to;
        }
        true
    }

    /// Peels one unit of flow from `source` to `sink` and returns the graph
    /// vertices it visits (loops removed).
    fn take_path(&mut self, source: usize, sink: usize) -> Vec<usize> {
        let mut nodes = vec![source];
        let mut x = source;
        while x != sink {
            // forward arcs sit at even indices; saturated forward arc = flow
            let a = self.out[x]
                .iter()
                .copied()
                .find(|&a| a % 2 == 0 && self.arcs[a].cap == 0 && self.arcs[a ^ 1].cap > 0)
                .expect("flow is conserved");
            self.arcs[a ^ 1].cap -= 1;
            x = self.arcs[a].to;
            if let Some(pos) = nodes.iter().position(|&y| y == x) {
                nodes.truncate(pos + 1);
            } else {
                nodes.push(x);
            }
        }
        let mut vertices: Vec<usize> = Vec::new();
        for node in nodes {
            let v = node / 2;
            if vertices.last() != Some(&v) {
                vertices.push(v);
            }
        }
        vertices
    }
}
