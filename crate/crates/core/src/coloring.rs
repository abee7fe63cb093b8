//! Additive colorings: verification, list search, the sufficient conditions
//! built on simplicial sinks, and the orientation sweep.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gen::enumerate_orientations;
use crate::graph::{Graph, Orientation, Vertex, VertexPartition};
use crate::poly::additive_coefficient;

/// Permitted labels per vertex. Lists are non-empty sets of positive
/// integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: BTreeMap<Vertex, BTreeSet<u64>>,
}

impl ListAssignment {
    pub fn new(lists: BTreeMap<Vertex, BTreeSet<u64>>) -> Result<Self> {
        for (v, list) in &lists {
            if list.is_empty() {
                return Err(Error::InvalidList(format!("list of vertex {v} is empty")));
            }
            if list.contains(&0) {
                return Err(Error::InvalidList(format!("list of vertex {v} contains 0")));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Random lists of `d+(v) + 1` distinct labels drawn from `1..=max_label`.
    pub fn random_for<R: Rng + ?Sized>(
        d: &Orientation,
        max_label: u64,
        rng: &mut R,
    ) -> Result<Self> {
        let mut lists = BTreeMap::new();
        for v in d.vertices() {
            let size = d.out_degree(v) + 1;
            if size as u64 > max_label {
                return Err(Error::InvalidParameter(format!(
                    "cannot draw {size} distinct labels from 1..={max_label}"
                )));
            }
            let picked = sample(rng, max_label as usize, size)
                .into_iter()
                .map(|i| i as u64 + 1)
                .collect();
            lists.insert(v, picked);
        }
        ListAssignment::new(lists)
    }

    pub fn get(&self, v: Vertex) -> Option<&BTreeSet<u64>> {
        self.lists.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vertex, &BTreeSet<u64>)> {
        self.lists.iter()
    }

    /// Whether `|L(v)| = d+(v) + 1` for every vertex of `d`.
    pub fn fits(&self, d: &Orientation) -> bool {
        d.vertices()
            .all(|v| self.get(v).is_some_and(|l| l.len() == d.out_degree(v) + 1))
    }
}

/// A labeling `ℓ`. Its induced coloring is `c(v) = Σ_{u ∈ N(v)} ℓ(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveLabeling {
    pub ell: BTreeMap<Vertex, u64>,
}

impl AdditiveLabeling {
    pub fn sums(&self, g: &Graph) -> Result<BTreeMap<Vertex, u128>> {
        g.vertices()
            .map(|v| {
                let mut c = 0u128;
                for u in g.neighbors(v) {
                    c += *self.ell.get(u).ok_or(Error::MissingValue(*u))? as u128;
                }
                Ok((v, c))
            })
            .collect()
    }
}

pub fn is_additive_coloring(g: &Graph, ell: &AdditiveLabeling) -> Result<bool> {
    if let Some(v) = g.vertices().find(|v| !ell.ell.contains_key(v)) {
        return Err(Error::MissingValue(v));
    }
    let c = ell.sums(g)?;
    Ok(g.edges().all(|(u, v)| c[&u] != c[&v]))
}

/// The lexicographically first labeling from the lists that is an additive
/// coloring, or `None` if there is none.
///
/// Vertices are assigned in id order, labels ascending. An edge is checked
/// as soon as the neighborhoods of both endpoints are fully labeled.
pub fn find_additive_coloring(
    g: &Graph,
    lists: &ListAssignment,
    space_bound: u128,
) -> Result<Option<AdditiveLabeling>> {
    let n = g.n() as usize;
    let mut options: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut space: u128 = 1;
    for v in g.vertices() {
        let list = lists.get(v).ok_or(Error::MissingValue(v))?;
        space = space.saturating_mul(list.len() as u128);
        options.push(list.iter().copied().collect());
    }
    if space > space_bound {
        return Err(Error::BoundExceeded {
            what: "labeling search space",
            actual: space,
            bound: space_bound,
        });
    }

    // c(v) is known once the largest neighbor of v is labeled.
    let ready = |v: Vertex| g.neighbors(v).iter().next_back().copied().unwrap_or(0);
    let mut checks: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n + 1];
    for (u, v) in g.edges() {
        checks[ready(u).max(ready(v)) as usize].push((u, v));
    }

    struct Search<'a> {
        g: &'a Graph,
        options: Vec<Vec<u64>>,
        checks: Vec<Vec<(Vertex, Vertex)>>,
        labels: Vec<u64>,
    }

    impl Search<'_> {
        fn sum(&self, v: Vertex) -> u128 {
            self.g
                .neighbors(v)
                .iter()
                .map(|&u| self.labels[u as usize - 1] as u128)
                .sum()
        }

        fn go(&mut self, k: usize) -> bool {
            if k == self.options.len() {
                return true;
            }
            for i in 0..self.options[k].len() {
                self.labels[k] = self.options[k][i];
                let ok = self.checks[k + 1]
                    .iter()
                    .all(|&(u, v)| self.sum(u) != self.sum(v));
                if ok && self.go(k + 1) {
                    return true;
                }
            }
            false
        }
    }

    // Edges are never ready at step 0: both endpoints have a neighbor.
    let mut search = Search {
        g,
        options,
        checks,
        labels: vec![0; n],
    };
    if search.go(0) {
        let ell = g.vertices().zip(search.labels.iter().copied()).collect();
        Ok(Some(AdditiveLabeling { ell }))
    } else {
        Ok(None)
    }
}

/// Simplicial vertices of `g` with out-degree 0 in `d`. Always independent:
/// an edge between two of them would leave one of its ends.
pub fn simplicial_sinks(g: &Graph, d: &Orientation) -> Result<BTreeSet<Vertex>> {
    if !d.orients(g) {
        return Err(Error::NotAnOrientationOf);
    }
    Ok(g.simplicial_vertices()
        .into_iter()
        .filter(|&v| d.out_degree(v) == 0)
        .collect())
}

/// Whether every odd cycle of `g` passes through a simplicial vertex of
/// out-degree 0, decided as bipartiteness of `g` minus those vertices.
pub fn check_simplicial_sink_hypothesis(g: &Graph, d: &Orientation) -> Result<bool> {
    let sinks = simplicial_sinks(g, d)?;
    Ok(g.bipartition_without(&sinks).is_some())
}

/// Largest graph for which proper 3-colorings are searched exhaustively.
pub const TRIPARTITE_SEARCH_LIMIT: Vertex = 12;

/// Whether a proper 3-coloring of `g` has a class made only of simplicial
/// vertices with out-degree 0. With `partition` given only that coloring is
/// examined; otherwise all proper 3-colorings are searched. Empty classes
/// count as qualifying.
pub fn check_tripartite_hypothesis(
    g: &Graph,
    d: &Orientation,
    partition: Option<&VertexPartition>,
) -> Result<bool> {
    let sinks = simplicial_sinks(g, d)?;
    match partition {
        Some(p) => {
            if p.classes.len() > 3 {
                return Err(Error::InvalidPartition(format!(
                    "{} classes, expected at most 3",
                    p.classes.len()
                )));
            }
            VertexPartition::new(g.n(), p.classes.clone())?;
            if !p.is_proper_coloring(g) {
                return Err(Error::InvalidPartition("not a proper coloring".into()));
            }
            Ok(p.classes.len() < 3 || p.classes.iter().any(|c| c.is_subset(&sinks)))
        }
        None => Ok(tripartite_witness(g, &sinks)?.is_some()),
    }
}

/// A proper 3-coloring whose first class lies inside `sinks`, found by
/// backtracking over all colorings.
pub fn tripartite_witness(g: &Graph, sinks: &BTreeSet<Vertex>) -> Result<Option<VertexPartition>> {
    if g.n() > TRIPARTITE_SEARCH_LIMIT {
        return Err(Error::BoundExceeded {
            what: "vertex count for the 3-coloring search",
            actual: g.n() as u128,
            bound: TRIPARTITE_SEARCH_LIMIT as u128,
        });
    }
    fn go(g: &Graph, sinks: &BTreeSet<Vertex>, v: Vertex, color: &mut Vec<u8>) -> bool {
        if v > g.n() {
            return true;
        }
        for c in 0..3u8 {
            // class 0 is the designated all-sink class
            if c == 0 && !sinks.contains(&v) {
                continue;
            }
            let clash = g
                .neighbors(v)
                .iter()
                .any(|&u| u < v && color[u as usize - 1] == c);
            if !clash {
                color[v as usize - 1] = c;
                if go(g, sinks, v + 1, color) {
                    return true;
                }
            }
        }
        false
    }
    let mut color = vec![u8::MAX; g.n() as usize];
    if !go(g, sinks, 1, &mut color) {
        return Ok(None);
    }
    let mut classes = vec![BTreeSet::new(); 3];
    for v in g.vertices() {
        classes[color[v as usize - 1] as usize].insert(v);
    }
    Ok(Some(VertexPartition { classes }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub index: u64,
    pub orientation: Orientation,
    pub coefficient: BigInt,
}

/// Outcome of sweeping the orientations of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub edge_count: usize,
    pub total_orientations: u64,
    pub examined: u64,
    /// Lowest-index orientation with a nonzero additive coefficient.
    pub witness: Option<Witness>,
    /// Coefficient value -> number of orientations.
    pub histogram: BTreeMap<BigInt, u64>,
    pub zero_count: u64,
}

impl SweepReport {
    fn empty(edge_count: usize, total: u64) -> Self {
        SweepReport {
            edge_count,
            total_orientations: total,
            examined: 0,
            witness: None,
            histogram: BTreeMap::new(),
            zero_count: 0,
        }
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.examined += other.examined;
        self.zero_count += other.zero_count;
        for (k, c) in other.histogram {
            *self.histogram.entry(k).or_default() += c;
        }
        self.witness = match (self.witness, other.witness) {
            (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

fn sweep_range(g: &Graph, edge_bound: usize, range: Range<u64>) -> Result<SweepReport> {
    let orientations = enumerate_orientations(g, edge_bound)?.with_range(range);
    let mut report = SweepReport::empty(g.edge_count(), orientations.total());
    for index in orientations.range() {
        let d = orientations.at(index);
        let coefficient = additive_coefficient(&d);
        report.examined += 1;
        if coefficient.is_zero() {
            report.zero_count += 1;
        } else if report.witness.is_none() {
            report.witness = Some(Witness {
                index,
                orientation: d,
                coefficient: coefficient.clone(),
            });
        }
        *report.histogram.entry(coefficient).or_default() += 1;
    }
    Ok(report)
}

/// Computes the additive coefficient of every orientation of `g` (or of
/// the first `limit` by index) on `threads` workers. The report does not
/// depend on `threads`.
pub fn conjecture_sweep(
    g: &Graph,
    edge_bound: usize,
    limit: Option<u64>,
    threads: usize,
) -> Result<SweepReport> {
    let total = enumerate_orientations(g, edge_bound)?.total();
    let end = limit.map_or(total, |l| l.min(total));
    let threads = threads.max(1) as u64;
    let chunk = end.div_ceil(threads).max(1);
    let ranges: Vec<Range<u64>> = (0..end)
        .step_by(chunk as usize)
        .map(|s| s..(s + chunk).min(end))
        .collect();

    let parts: Vec<Result<SweepReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|r| {
                let r = r.clone();
                scope.spawn(move || sweep_range(g, edge_bound, r))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });

    let mut report = SweepReport::empty(g.edge_count(), total);
    for part in parts {
        report = report.merge(part?);
    }
    Ok(report)
}
