//! Graph constructions: the doubling used for Class 2 inputs, the
//! triangle-rich chordless family, seeded corpus generators and an
//! exhaustive enumerator of small graphs up to isomorphism.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Two disjoint copies of a graph joined by one bridge edge.
#[derive(Debug, Clone)]
pub struct DoublingMap {
    pub h: Graph,
    /// Vertex `x` of the source graph is `copy1[x]` in the first copy.
    pub copy1: Vec<usize>,
    pub copy2: Vec<usize>,
    /// Edge `e` of the source graph is `edges1[e]` in the first copy.
    pub edges1: Vec<usize>,
    pub edges2: Vec<usize>,
    pub bridge: usize,
    pub hub: usize,
}

impl DoublingMap {
    /// Source edge of an edge of `h` lying in the first copy.
    pub fn source_edge_in_copy1(&self, h_edge: usize) -> Option<usize> {
        (h_edge < self.edges1.len()).then_some(h_edge)
    }
}

/// Doubles `g` at the max-degree vertex `u`: copy 1 keeps indices, copy 2
/// shifts vertices by `n` and edges by `m`, and the bridge is edge `2m`.
pub fn double_graph(g: &Graph, u: usize) -> Result<DoublingMap> {
    g.check_vertex(u)?;
    if g.degree(u) != g.max_degree() {
        return Err(Error::Precondition(format!("vertex {u} does not have maximum degree")));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut edges = g.edges().to_vec();
    edges.extend(g.edges().iter().map(|&(a, b)| (a + n, b + n)));
    edges.push((u, u + n));
    Ok(DoublingMap {
        h: Graph::new(2 * n, edges)?,
        copy1: (0..n).collect(),
        copy2: (n..2 * n).collect(),
        edges1: (0..m).collect(),
        edges2: (m..2 * m).collect(),
        bridge: 2 * m,
        hub: u,
    })
}

/// The chordless family with many triangles and large diameter. `H_0` is
/// `tree` plus a triangle hung on the first vertex of its diameter pair;
/// `H_{i+1}` is three copies of `H_i` joined by a triangle on the copies of
/// the first vertex of a diameter pair of `H_i`.
pub fn prop31_generate(k: u32, tree: &Graph) -> Result<Graph> {
    if !tree.is_tree() {
        return Err(Error::Precondition("input is not a tree".into()));
    }
    let (x, _, d) = tree.diameter_pair().expect("trees are connected");
    if d < 1 {
        return Err(Error::Precondition("tree needs diameter at least 1".into()));
    }
    let n = tree.vertex_count();
    let mut edges = tree.edges().to_vec();
    edges.extend([(x, n), (n, n + 1), (n + 1, x)]);
    let mut h = Graph::new(n + 2, edges)?;
    for level in 1..=k {
        let (u, _, _) = h.diameter_pair().expect("connected by construction");
        let size = h.vertex_count();
        let mut edges = Vec::with_capacity(3 * h.edge_count() + 3);
        for copy in 0..3 {
            edges.extend(h.edges().iter().map(|&(a, b)| (a + copy * size, b + copy * size)));
        }
        edges.extend([(u, u + size), (u + size, u + 2 * size), (u + 2 * size, u)]);
        h = Graph::new(3 * size, edges)?;
        let diam = h.diameter().expect("connected by construction");
        if diam <= (1usize << level) * d {
            return Err(Error::Invariant(format!(
                "level {level}: diameter {diam} is not above {}",
                (1usize << level) * d
            )));
        }
    }
    Ok(h)
}

/// The path on `d + 1` vertices, the default tree for [`prop31_generate`].
pub fn path_tree(d: usize) -> Graph {
    Graph::new(d + 1, (0..d).map(|i| (i, i + 1)).collect()).expect("path is simple")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Star {
        leaves: usize,
    },
    /// Random recursive tree.
    Tree {
        n: usize,
    },
    /// Two hubs joined by three internally disjoint paths of the given
    /// lengths, each at least 2.
    Theta {
        arms: [usize; 3],
    },
    /// Random tree plus random edges that close no triangle.
    RandomTriangleFree {
        n: usize,
        max_degree: Option<usize>,
    },
    /// Random tree plus random edges kept only when the graph stays chordless.
    RandomChordless {
        n: usize,
    },
}

/// Deterministic generator keyed by `seed`. Outputs are checked by the
/// recognizer for their family before being returned.
pub fn corpus(family: &Family, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match *family {
        Family::Path { n } => {
            if n == 0 {
                return Err(Error::Precondition("path needs a vertex".into()));
            }
            path_tree(n - 1)
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::Precondition("cycle needs at least 3 vertices".into()));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())?
        }
        Family::Star { leaves } => Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())?,
        Family::Tree { n } => random_tree(n, &mut rng)?,
        Family::Theta { arms } => theta(arms)?,
        Family::RandomTriangleFree { n, max_degree } => random_triangle_free(n, max_degree, &mut rng)?,
        Family::RandomChordless { n } => random_chordless(n, &mut rng)?,
    };
    let certified = match family {
        Family::Path { .. } | Family::Star { .. } | Family::Tree { .. } => g.is_triangle_free() && g.is_chordless(),
        Family::Cycle { n } => g.is_chordless() && (*n == 3 || g.is_triangle_free()),
        Family::Theta { .. } => g.is_triangle_free() && g.is_chordless(),
        Family::RandomTriangleFree { .. } => g.is_triangle_free(),
        Family::RandomChordless { .. } => g.is_chordless(),
    };
    if !certified {
        return Err(Error::Invariant(format!("{family:?} output failed recognition")));
    }
    Ok(g)
}

fn random_tree(n: usize, rng: &mut impl Rng) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Precondition("tree needs a vertex".into()));
    }
    let edges = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    Graph::new(n, edges)
}

fn theta(arms: [usize; 3]) -> Result<Graph> {
    // an arm of length 1 would be a chord of the cycle through the other two
    if arms.iter().any(|&a| a < 2) {
        return Err(Error::Precondition(format!("arm lengths {arms:?} must all be at least 2")));
    }
    let mut edges = Vec::new();
    let mut next = 2;
    for len in arms {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(next, edges)
}

fn shuffled_pairs(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    pairs
}

fn random_triangle_free(n: usize, cap: Option<usize>, rng: &mut impl Rng) -> Result<Graph> {
    let cap = cap.unwrap_or(usize::MAX);
    if cap == 0 && n > 1 {
        return Err(Error::Precondition("degree cap 0 leaves no edges".into()));
    }
    let mut adj = vec![HashSet::new(); n];
    let mut edges = Vec::new();
    let target = rng.gen_range(n.saturating_sub(1)..=(n * n / 4).max(n.saturating_sub(1)));
    for (a, b) in shuffled_pairs(n, rng) {
        if edges.len() >= target {
            break;
        }
        if adj[a].len() >= cap || adj[b].len() >= cap || adj[a].iter().any(|w| adj[b].contains(w)) {
            continue;
        }
        adj[a].insert(b);
        adj[b].insert(a);
        edges.push((a, b));
    }
    Graph::new(n, edges)
}

fn random_chordless(n: usize, rng: &mut impl Rng) -> Result<Graph> {
    let tree = random_tree(n, rng)?;
    let mut edges = tree.edges().to_vec();
    // one chordless check per attempt; attempts scale with n
    let attempts = 2 * n;
    for _ in 0..attempts {
        if n < 2 {
            break;
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)) {
            continue;
        }
        edges.push((a, b));
        let candidate = Graph::new(n, edges.clone())?;
        if !candidate.is_chordless() {
            edges.pop();
        }
    }
    Graph::new(n, edges)
}

/// All graphs with exactly `n` vertices satisfying `keep`, one per
/// isomorphism class, for `n <= 8`. `keep` must be closed under deleting a
/// vertex, since graphs are grown one vertex at a time from smaller ones
/// that passed it.
pub fn enumerate_graphs(n: usize, keep: &dyn Fn(&Graph) -> bool) -> Vec<Graph> {
    assert!(n <= 8, "canonical forms are computed by brute force");
    let mut level: Vec<Vec<u8>> = vec![vec![]];
    for size in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for subset in 0u16..(1 << (size - 1)) {
                let mut grown: Vec<u8> = adj.clone();
                for (v, row) in grown.iter_mut().enumerate() {
                    if subset & (1 << v) != 0 {
                        *row |= 1 << (size - 1);
                    }
                }
                grown.push(subset as u8);
                if !keep(&to_graph(&grown)) {
                    continue;
                }
                let code = canonical_code(&grown);
                if seen.insert(code) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level.iter().map(|adj| to_graph(adj)).collect()
}

fn to_graph(adj: &[u8]) -> Graph {
    let n = adj.len();
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| adj[a] & (1 << b) != 0).collect();
    Graph::new(n, edges).expect("adjacency rows describe a simple graph")
}

/// Largest upper-triangle bit string over relabelings that list vertices
/// by non-increasing degree.
fn canonical_code(adj: &[u8]) -> u64 {
    let n = adj.len();
    let deg: Vec<u32> = adj.iter().map(|r| r.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut best = 0u64;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(adj: &[u8], deg: &[u32], order: &[usize], perm: &mut Vec<usize>, used: &mut [bool], best: &mut u64) {
        let n = adj.len();
        if perm.len() == n {
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = (code << 1) | u64::from(adj[perm[i]] & (1 << perm[j]) != 0);
                }
            }
            *best = (*best).max(code);
            return;
        }
        let want = deg[order[perm.len()]];
        for v in 0..n {
            if !used[v] && deg[v] == want {
                used[v] = true;
                perm.push(v);
                rec(adj, deg, order, perm, used, best);
                perm.pop();
                used[v] = false;
            }
        }
    }
    rec(adj, &deg, &order, &mut perm, &mut used, &mut best);
    best
}
