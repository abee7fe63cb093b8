//! Graph families, random instances, and exhaustive orientation enumeration.

use std::ops::Range;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, Vertex};

/// The sun-like graph `G_2k`: a cycle `v_1 .. v_2k` plus one vertex `u_i`
/// adjacent to `v_i` and `v_{i+1}` for every `i`. The cycle is oriented
/// `v_1 -> v_2 -> .. -> v_2k -> v_1` and every edge at `u_i` points into
/// `u_i`.
///
/// Vertex ids: `v_i = i` and `u_i = 2k + i`.
pub fn sun(k: u32) -> Result<Orientation> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "sun needs k >= 2, got {k}"
        )));
    }
    let m = 2 * k;
    let next = |i: Vertex| if i == m { 1 } else { i + 1 };
    let mut arcs = Vec::with_capacity(3 * m as usize);
    for i in 1..=m {
        arcs.push((i, next(i)));
        arcs.push((i, m + i));
        arcs.push((next(i), m + i));
    }
    Orientation::new(2 * m, arcs)
}

pub fn cycle(n: u32) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    Graph::new(n, (1..=n).map(|i| (i, if i == n { 1 } else { i + 1 })))
}

/// Path on `n` vertices.
pub fn path(n: u32) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    Graph::new(n, (1..n).map(|i| (i, i + 1)))
}

pub fn complete(n: u32) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "complete graph needs n >= 1".into(),
        ));
    }
    Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
}

/// `K_{a,b}` with parts `1..=a` and `a+1..=a+b`.
pub fn complete_bipartite(a: u32, b: u32) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidParameter(format!(
            "complete bipartite needs a, b >= 1, got {a} {b}"
        )));
    }
    Graph::new(
        a + b,
        (1..=a).flat_map(|u| (a + 1..=a + b).map(move |v| (u, v))),
    )
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: u32, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are simple")
}

/// A uniformly random orientation of `g`.
pub fn random_orientation<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Orientation {
    let arcs: Vec<_> = g
        .edges()
        .map(|(u, v)| if rng.gen_bool(0.5) { (v, u) } else { (u, v) })
        .collect();
    Orientation::new(g.n(), arcs).expect("orientation of a simple graph")
}

/// All `2^|E|` orientations of a graph, addressed by index.
///
/// Edges are taken in lexicographic order; bit `i` of the index reverses
/// edge `i` from `u -> v` (with `u < v`) to `v -> u`.
#[derive(Debug, Clone)]
pub struct Orientations {
    n: Vertex,
    edges: Vec<(Vertex, Vertex)>,
    range: Range<u64>,
}

impl Orientations {
    pub fn total(&self) -> u64 {
        1u64 << self.edges.len()
    }

    pub fn at(&self, index: u64) -> Orientation {
        orientation_from_mask(self.n, &self.edges, index)
    }

    /// Restricts iteration to `range` (clamped to the valid indices).
    pub fn with_range(mut self, range: Range<u64>) -> Self {
        let total = self.total();
        self.range = range.start.min(total)..range.end.min(total);
        self
    }

    /// Remaining indices, for sharding.
    pub fn range(&self) -> Range<u64> {
        self.range.clone()
    }
}

impl Iterator for Orientations {
    type Item = Orientation;

    fn next(&mut self) -> Option<Orientation> {
        let index = self.range.next()?;
        Some(self.at(index))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let len = (self.range.end - self.range.start) as usize;
        (len, Some(len))
    }
}

fn orientation_from_mask(n: Vertex, edges: &[(Vertex, Vertex)], mask: u64) -> Orientation {
    let arcs = edges.iter().enumerate().map(
        |(i, &(u, v))| {
            if mask >> i & 1 == 1 {
                (v, u)
            } else {
                (u, v)
            }
        },
    );
    Orientation::new(n, arcs).expect("orientation of a simple graph")
}

/// Enumerates every orientation of `g`; fails when `|E(g)| > edge_bound`.
pub fn enumerate_orientations(g: &Graph, edge_bound: usize) -> Result<Orientations> {
    let m = g.edge_count();
    if m > edge_bound || m >= 64 {
        return Err(Error::BoundExceeded {
            what: "edge count",
            actual: m as u128,
            bound: edge_bound as u128,
        });
    }
    Ok(Orientations {
        n: g.n(),
        edges: g.edges().collect(),
        range: 0..1u64 << m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn sun_three_matches_example() {
        let d = sun(3).unwrap();
        assert_eq!(d.n(), 12);
        assert_eq!(d.arc_count(), 18);
        let mut degs = d.out_degrees();
        degs.sort();
        assert_eq!(degs, [0, 0, 0, 0, 0, 0, 3, 3, 3, 3, 3, 3]);
        for i in 1..=6 {
            assert_eq!(d.out_degree(i), 3);
            assert_eq!(d.out_degree(6 + i), 0);
        }
        assert!(d.has_arc(6, 1));
        assert!(d.has_arc(1, 12));
        assert!(d.has_arc(6, 12));
    }

    #[test]
    fn sun_two_size() {
        let d = sun(2).unwrap();
        assert_eq!((d.n(), d.arc_count()), (8, 12));
        assert!(sun(1).is_err());
    }

    #[test]
    fn family_sizes() {
        assert_eq!(cycle(4).unwrap().edge_count(), 4);
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        assert_eq!(complete_bipartite(2, 3).unwrap().edge_count(), 6);
        assert_eq!(path(5).unwrap().edge_count(), 4);
        assert!(cycle(2).is_err());
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn k3_orientations() {
        let all: Vec<_> = enumerate_orientations(&complete(3).unwrap(), 20)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 8);
        let acyclic = all.iter().filter(|d| d.is_acyclic()).count();
        assert_eq!((acyclic, all.len() - acyclic), (6, 2));
    }

    #[test]
    fn small_orientation_counts() {
        let edge = complete(2).unwrap();
        assert_eq!(enumerate_orientations(&edge, 20).unwrap().count(), 2);
        assert_eq!(
            enumerate_orientations(&path(3).unwrap(), 20)
                .unwrap()
                .count(),
            4
        );
    }

    #[test]
    fn orientation_order_is_bitmask() {
        let g = path(3).unwrap();
        let o = enumerate_orientations(&g, 20).unwrap();
        assert_eq!(o.at(0).arcs().collect::<Vec<_>>(), [(1, 2), (2, 3)]);
        assert_eq!(o.at(1).arcs().collect::<Vec<_>>(), [(2, 1), (2, 3)]);
        assert_eq!(o.at(2).arcs().collect::<Vec<_>>(), [(1, 2), (3, 2)]);
    }

    #[test]
    fn bound_is_enforced() {
        let k7 = complete(7).unwrap();
        let err = enumerate_orientations(&k7, 20).unwrap_err();
        assert!(matches!(
            err,
            Error::BoundExceeded {
                actual: 21,
                bound: 20,
                ..
            }
        ));
    }

    #[test]
    fn sharded_enumeration_matches_full() {
        let g = complete_bipartite(2, 2).unwrap();
        let full: Vec<_> = enumerate_orientations(&g, 20).unwrap().collect();
        let mut sharded = Vec::new();
        for start in (0..16).step_by(5) {
            sharded.extend(
                enumerate_orientations(&g, 20)
                    .unwrap()
                    .with_range(start..start + 5),
            );
        }
        assert_eq!(full, sharded);
        let distinct: BTreeSet<_> = full.iter().map(|d| d.arcs().collect::<Vec<_>>()).collect();
        assert_eq!(distinct.len(), 16);
        assert!(full.iter().all(|d| d.orients(&g)));
    }
}
