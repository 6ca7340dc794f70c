//! Brute-force ground truth for Kempe equivalence.
//!
//! Enumerates every proper `t`-coloring, links colorings that differ by one
//! Kempe change, and labels the connected components. Only
//! [`kempe_swap`] and [`kempe_component`] are used from the rest of the
//! crate, so the answers are independent of the transformation engine.

use std::collections::{HashMap, VecDeque};

use crate::coloring::{kempe_component, kempe_swap, Color, EdgeColoring, KempeStep, KempeTrace};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_CAP: usize = 5_000_000;

/// All proper colorings of a graph with their Kempe-equivalence labels.
#[derive(Debug, Clone)]
pub struct ColoringSpace {
    pub t: u32,
    /// In the order produced by [`enumerate_colorings`].
    pub colorings: Vec<EdgeColoring>,
    /// Component label per coloring; labels are `0..class_count`, numbered
    /// by first appearance.
    pub labels: Vec<usize>,
    pub class_count: usize,
    index: HashMap<Vec<Color>, usize>,
}

impl ColoringSpace {
    pub fn index_of(&self, alpha: &EdgeColoring) -> Option<usize> {
        self.index.get(alpha.colors()).copied()
    }

    /// Sizes of the classes, indexed by label.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }
}

/// Every proper `t`-coloring of `g`, edges assigned in index order and
/// colors in ascending order. Fails once more than `cap` colorings exist.
pub fn enumerate_colorings(g: &Graph, t: u32, cap: usize) -> Result<Vec<EdgeColoring>> {
    let m = g.edge_count();
    let mut colors = vec![0 as Color; m];
    let mut out = Vec::new();
    fn rec(
        g: &Graph,
        t: u32,
        cap: usize,
        e: usize,
        colors: &mut Vec<Color>,
        out: &mut Vec<EdgeColoring>,
    ) -> Result<()> {
        if e == colors.len() {
            if out.len() == cap {
                return Err(Error::CapExceeded(cap));
            }
            out.push(EdgeColoring::new(t, colors.clone())?);
            return Ok(());
        }
        let (a, b) = g.endpoints(e);
        for c in 1..=t {
            let clash = [a, b].iter().any(|&v| g.incident(v).iter().any(|&(_, f)| f < e && colors[f] == c));
            if !clash {
                colors[e] = c;
                rec(g, t, cap, e + 1, colors, out)?;
            }
        }
        colors[e] = 0;
        Ok(())
    }
    rec(g, t, cap, 0, &mut colors, &mut out)?;
    Ok(out)
}

/// Every coloring one Kempe change away from `alpha`, once per component:
/// each component of each two-color subgraph is swapped, anchored at its
/// smallest vertex.
pub fn kempe_neighbors(g: &Graph, alpha: &EdgeColoring) -> Result<Vec<(KempeStep, EdgeColoring)>> {
    let t = alpha.palette();
    let mut out = Vec::new();
    for c in 1..=t {
        for d in c + 1..=t {
            let mut done = vec![false; g.edge_count()];
            for e in 0..g.edge_count() {
                let x = alpha.color(e);
                if done[e] || (x != c && x != d) {
                    continue;
                }
                let comp = kempe_component(g, alpha, c, d, g.endpoints(e).0)?;
                for &f in &comp.edges {
                    done[f] = true;
                }
                let (next, step, _) = kempe_swap(g, alpha, c, d, comp.vertices[0])?;
                out.push((step, next));
            }
        }
    }
    Ok(out)
}

/// Enumerates the colorings and labels their Kempe classes.
pub fn coloring_space(g: &Graph, t: u32, cap: usize) -> Result<ColoringSpace> {
    let colorings = enumerate_colorings(g, t, cap)?;
    let index: HashMap<Vec<Color>, usize> =
        colorings.iter().enumerate().map(|(i, c)| (c.colors().to_vec(), i)).collect();
    let mut labels = vec![usize::MAX; colorings.len()];
    let mut class_count = 0;
    for start in 0..colorings.len() {
        if labels[start] != usize::MAX {
            continue;
        }
        labels[start] = class_count;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (_, next) in kempe_neighbors(g, &colorings[i])? {
                let j = *index
                    .get(next.colors())
                    .ok_or_else(|| Error::Invariant("Kempe change left the enumerated space".into()))?;
                if labels[j] == usize::MAX {
                    labels[j] = class_count;
                    queue.push_back(j);
                }
            }
        }
        class_count += 1;
    }
    Ok(ColoringSpace { t, colorings, labels, class_count, index })
}

/// Kempe classes of the proper `t`-colorings, each a list of indices into
/// [`ColoringSpace::colorings`].
pub fn equivalence_classes(g: &Graph, t: u32, cap: usize) -> Result<ColoringSpace> {
    coloring_space(g, t, cap)
}

/// Breadth-first search from `alpha`. Returns a shortest trace to `beta`
/// when they are Kempe equivalent and `None` otherwise. At most `cap`
/// colorings are visited.
pub fn oracle_equivalent(
    g: &Graph,
    alpha: &EdgeColoring,
    beta: &EdgeColoring,
    cap: usize,
) -> Result<Option<KempeTrace>> {
    alpha.check_proper(g)?;
    beta.check_proper(g)?;
    if alpha.palette() != beta.palette() {
        return Err(Error::Precondition("colorings use different palettes".into()));
    }
    let mut parent: HashMap<Vec<Color>, Option<(usize, KempeStep)>> = HashMap::new();
    let mut seen: Vec<EdgeColoring> = vec![alpha.clone()];
    parent.insert(alpha.colors().to_vec(), None);
    let mut queue = VecDeque::from([0usize]);
    let mut found = alpha == beta;
    'search: while let Some(i) = queue.pop_front() {
        if found {
            break;
        }
        for (step, next) in kempe_neighbors(g, &seen[i])? {
            if parent.contains_key(next.colors()) {
                continue;
            }
            if seen.len() == cap {
                return Err(Error::CapExceeded(cap));
            }
            parent.insert(next.colors().to_vec(), Some((i, step)));
            let done = next == *beta;
            seen.push(next);
            queue.push_back(seen.len() - 1);
            if done {
                found = true;
                break 'search;
            }
        }
    }
    if !found {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut key = beta.colors().to_vec();
    while let Some(Some((i, step))) = parent.get(&key) {
        steps.push(*step);
        key = seen[*i].colors().to_vec();
    }
    steps.reverse();
    Ok(Some(KempeTrace { steps }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_trace;
    use crate::graph::tests::cycle;

    #[test]
    fn tiny_counts() {
        let edge = Graph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(enumerate_colorings(&edge, 2, DEFAULT_CAP).unwrap().len(), 2);
        let p3 = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(enumerate_colorings(&p3, 2, DEFAULT_CAP).unwrap().len(), 2);
        assert_eq!(equivalence_classes(&p3, 2, DEFAULT_CAP).unwrap().class_count, 1);
    }

    #[test]
    fn cycle_counts_match_closed_form() {
        // proper t-colorings of the edges of C_n: (t-1)^n + (-1)^n (t-1)
        for n in 3..=7usize {
            for t in 2..=4u32 {
                let expected = (t as i64 - 1).pow(n as u32) + (-1i64).pow(n as u32) * (t as i64 - 1);
                let got = enumerate_colorings(&cycle(n), t, DEFAULT_CAP).unwrap().len() as i64;
                assert_eq!(got, expected, "C{n}, t={t}");
            }
        }
    }

    #[test]
    fn single_class_examples() {
        assert_eq!(equivalence_classes(&cycle(5), 4, DEFAULT_CAP).unwrap().class_count, 1);
        let star = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(equivalence_classes(&star, 4, DEFAULT_CAP).unwrap().class_count, 1);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate_colorings(&cycle(6), 3, 10), Err(Error::CapExceeded(10)));
    }

    #[test]
    fn shortest_traces() {
        let g = cycle(4);
        let a = EdgeColoring::new(2, vec![1, 2, 1, 2]).unwrap();
        let b = EdgeColoring::new(2, vec![2, 1, 2, 1]).unwrap();
        assert!(oracle_equivalent(&g, &a, &a, DEFAULT_CAP).unwrap().unwrap().is_empty());
        let trace = oracle_equivalent(&g, &a, &b, DEFAULT_CAP).unwrap().unwrap();
        assert_eq!(trace.len(), 1);
        assert!(verify_trace(&g, &a, &trace, &b).unwrap());
    }

    #[test]
    fn neighbors_are_symmetric() {
        let g = cycle(6);
        for alpha in enumerate_colorings(&g, 3, DEFAULT_CAP).unwrap() {
            for (_, beta) in kempe_neighbors(&g, &alpha).unwrap() {
                let back = kempe_neighbors(&g, &beta).unwrap();
                assert!(back.iter().any(|(_, x)| *x == alpha));
            }
        }
    }
}
