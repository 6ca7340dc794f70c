//! Simple undirected graphs with stable edge indices.
//!
//! Vertices are `0..n`; edge `i` is the `i`-th pair handed to [`Graph::new`].
//! Colorings and traces elsewhere in the crate are keyed on these indices.

mod chordless;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chordless::{is_chordless, ChordWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `adj[v]` lists `(neighbor, edge index)` in edge-index order.
    adj: Vec<Vec<(usize, usize)>>,
    lookup: HashMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a simple graph; loops, duplicate edges and out-of-range
    /// endpoints are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge {i} ({a},{b}) has an endpoint outside 0..{n}")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("edge {i} is a loop at {a}")));
            }
            if let Some(j) = lookup.insert(key(a, b), i) {
                return Err(Error::InvalidGraph(format!("edges {j} and {i} both join {a} and {b}")));
            }
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        Ok(Graph { n, edges, adj, lookup })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, Vec::new()).expect("edgeless graph is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// `(neighbor, edge index)` pairs at `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.lookup.get(&key(a, b)).copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.lookup.contains_key(&key(a, b))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// Maximum degree; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges.iter().all(|&(a, b)| {
            let (small, large) = if self.degree(a) <= self.degree(b) { (a, b) } else { (b, a) };
            self.neighbors(small).all(|w| w == large || !self.has_edge(w, large))
        })
    }

    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for &(a, b) in &self.edges {
            for w in self.neighbors(a) {
                if w > a.max(b) && self.has_edge(w, b) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_chordless(&self) -> bool {
        is_chordless(self).is_ok()
    }

    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for w in self.neighbors(v) {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest shortest-path distance, or `None` when the graph is
    /// disconnected. Graphs with at most one vertex have diameter 0.
    pub fn diameter(&self) -> Option<usize> {
        self.diameter_pair().map(|(_, _, d)| d)
    }

    /// A pair realizing the diameter, the lexicographically smallest among
    /// all such pairs.
    pub fn diameter_pair(&self) -> Option<(usize, usize, usize)> {
        let mut best = (0, 0, 0);
        for s in 0..self.n {
            let dist = self.bfs_distances(s);
            for (t, d) in dist.iter().enumerate() {
                let d = (*d)?;
                if d > best.2 {
                    best = (s, t, d);
                }
            }
        }
        Some(best)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// The graph without the given edges, plus the map from new edge
    /// indices to old ones. Vertex indices are unchanged.
    pub fn without_edges(&self, removed: &[bool]) -> (Graph, Vec<usize>) {
        let kept: Vec<usize> = (0..self.edges.len()).filter(|&e| !removed[e]).collect();
        let edges = kept.iter().map(|&e| self.edges[e]).collect();
        (Graph::new(self.n, edges).expect("subgraph of a simple graph"), kept)
    }

    /// `true` when no two edges in `set` share an endpoint.
    pub fn check_matching(&self, set: &[usize]) -> Result<()> {
        let mut owner = vec![None; self.n];
        for &e in set {
            if e >= self.edges.len() {
                return Err(Error::InvalidGraph(format!("edge index {e} out of range")));
            }
            let (a, b) = self.edges[e];
            for v in [a, b] {
                if let Some(f) = owner[v] {
                    return Err(Error::NotAMatching(f, e));
                }
                owner[v] = Some(e);
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let raw = GraphJson { n: self.n, edges: self.edges.iter().map(|&(a, b)| [a, b]).collect() };
        serde_json::to_string(&raw).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        Graph::new(raw.n, raw.edges.into_iter().map(|[a, b]| (a, b)).collect())
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

pub fn is_triangle_free(g: &Graph) -> bool {
    g.is_triangle_free()
}

pub fn diameter(g: &Graph) -> Option<usize> {
    g.diameter()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect()).unwrap()
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(Graph::empty(3).max_degree(), 0);
        assert_eq!(star(3).max_degree(), 3);
        assert_eq!(cycle(5).max_degree(), 2);
    }

    #[test]
    fn triangle_free_examples() {
        assert!(!cycle(3).is_triangle_free());
        assert!(cycle(5).is_triangle_free());
        // edge 0-1 with a triangle hung on 0
        let h0 = Graph::new(4, vec![(0, 1), (0, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!h0.is_triangle_free());
        assert_eq!(h0.triangle_count(), 1);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(Graph::new(2, vec![(0, 1)]).unwrap().diameter(), Some(1));
        let h0 = Graph::new(4, vec![(0, 1), (0, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(h0.diameter(), Some(2));
        let p4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.diameter(), Some(3));
        assert_eq!(Graph::empty(2).diameter(), None);
        assert_eq!(Graph::empty(1).diameter(), Some(0));
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(Graph::new(2, vec![(0, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(2, vec![(0, 1), (1, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(2, vec![(0, 2)]), Err(Error::InvalidGraph(_))));
        assert!(Graph::from_json(r#"{"n":3,"edges":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = cycle(4);
        let text = g.to_json();
        assert_eq!(text, r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#);
        assert_eq!(Graph::from_json(&text).unwrap(), g);
    }

    #[test]
    fn matching_check() {
        let g = cycle(4);
        assert!(g.check_matching(&[0, 2]).is_ok());
        assert_eq!(g.check_matching(&[0, 1]), Err(Error::NotAMatching(0, 1)));
    }
}
