//! Spanning Eulerian subdigraphs: enumeration, parity counts, and the
//! gamma-path counter for `W(D)`.
//!
//! Two independent routes produce `(EE, EO)` for `W(D)`:
//!
//! * [`count_ee_eo_bruteforce`] searches arc subsets of any digraph and
//!   knows nothing about sectors or stars;
//! * [`count_ee_eo_wd`] never builds `W(D)`. It picks, per arc of `D`, either
//!   nothing or one gamma-path target and keeps star in/out balances.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Orientation, Vertex};
use crate::wd::{gamma_path, gamma_targets, GammaPath, PathKind, WArc, WDigraph, WVertex};

/// A digraph on vertices `0..n` with an indexed arc list. Parallel arcs are
/// not expected but are handled as distinct arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        assert!(
            arcs.iter().all(|&(a, b)| a < n && b < n),
            "arc endpoint out of range"
        );
        Digraph { n, arcs }
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, _) in &self.arcs {
            deg[a] += 1;
        }
        deg
    }

    /// Whether the arcs with the given indices balance in- and out-degree
    /// at every vertex.
    pub fn is_eulerian_subset(&self, subset: &[usize]) -> bool {
        let mut bal = vec![0i64; self.n];
        for &i in subset {
            let (a, b) = self.arcs[i];
            bal[a] += 1;
            bal[b] -= 1;
        }
        bal.iter().all(|&b| b == 0)
    }
}

impl Orientation {
    /// Vertex `v` becomes index `v - 1`; arcs keep lexicographic order.
    pub fn to_digraph(&self) -> Digraph {
        Digraph::new(
            self.n() as usize,
            self.arcs()
                .map(|(v, w)| (v as usize - 1, w as usize - 1))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EulerianCount {
    pub ee: BigUint,
    pub eo: BigUint,
}

impl EulerianCount {
    pub fn difference(&self) -> BigInt {
        BigInt::from(self.ee.clone()) - BigInt::from(self.eo.clone())
    }

    pub fn total(&self) -> BigUint {
        &self.ee + &self.eo
    }

    fn tally(&mut self, len: usize) {
        if len.is_multiple_of(2) {
            self.ee += 1u32;
        } else {
            self.eo += 1u32;
        }
    }
}

fn check_bound(what: &'static str, actual: usize, bound: usize) -> Result<()> {
    if actual > bound {
        Err(Error::BoundExceeded {
            what,
            actual: actual as u128,
            bound: bound as u128,
        })
    } else {
        Ok(())
    }
}

/// Orders edges so that each vertex sees its last incident edge early:
/// vertices are ranked in BFS order and an edge is keyed by its later
/// endpoint.
fn closing_order(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in pairs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if rank[start] != usize::MAX {
            continue;
        }
        rank[start] = next;
        next += 1;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if rank[u] == usize::MAX {
                    rank[u] = next;
                    next += 1;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| {
        let (a, b) = pairs[i];
        (rank[a].max(rank[b]), rank[a].min(rank[b]), i)
    });
    order
}

struct SubsetSearch<'a, F> {
    h: &'a Digraph,
    order: Vec<usize>,
    balance: Vec<i64>,
    rem_out: Vec<i64>,
    rem_in: Vec<i64>,
    chosen: Vec<usize>,
    visit: F,
}

impl<F: FnMut(&[usize])> SubsetSearch<'_, F> {
    fn feasible(&self, v: usize) -> bool {
        self.balance[v] - self.rem_in[v] <= 0 && 0 <= self.balance[v] + self.rem_out[v]
    }

    fn run(&mut self, depth: usize) {
        if depth == self.order.len() {
            let mut subset = self.chosen.clone();
            subset.sort_unstable();
            (self.visit)(&subset);
            return;
        }
        let i = self.order[depth];
        let (a, b) = self.h.arcs[i];
        self.rem_out[a] -= 1;
        self.rem_in[b] -= 1;

        if self.feasible(a) && self.feasible(b) {
            self.run(depth + 1);
        }

        self.balance[a] += 1;
        self.balance[b] -= 1;
        if self.feasible(a) && self.feasible(b) {
            self.chosen.push(i);
            self.run(depth + 1);
            self.chosen.pop();
        }
        self.balance[a] -= 1;
        self.balance[b] += 1;

        self.rem_out[a] += 1;
        self.rem_in[b] += 1;
    }
}

/// Calls `visit` with the sorted arc indices of every spanning Eulerian
/// subdigraph of `h`, the empty one included.
///
/// Exhaustive over arc subsets, with branches cut as soon as some vertex can
/// no longer balance using its undecided arcs.
pub fn for_each_eulerian_spanning<F>(h: &Digraph, arc_bound: usize, visit: F) -> Result<()>
where
    F: FnMut(&[usize]),
{
    check_bound("arc count", h.arcs.len(), arc_bound)?;
    let mut rem_out = vec![0i64; h.n];
    let mut rem_in = vec![0i64; h.n];
    for &(a, b) in &h.arcs {
        rem_out[a] += 1;
        rem_in[b] += 1;
    }
    let mut search = SubsetSearch {
        h,
        order: closing_order(h.n, &h.arcs),
        balance: vec![0; h.n],
        rem_out,
        rem_in,
        chosen: Vec::new(),
        visit,
    };
    search.run(0);
    Ok(())
}

pub fn enumerate_eulerian_spanning(h: &Digraph, arc_bound: usize) -> Result<Vec<Vec<usize>>> {
    let mut all = Vec::new();
    for_each_eulerian_spanning(h, arc_bound, |s| all.push(s.to_vec()))?;
    all.sort();
    Ok(all)
}

pub fn count_ee_eo_bruteforce(h: &Digraph, arc_bound: usize) -> Result<EulerianCount> {
    let mut count = EulerianCount::default();
    for_each_eulerian_spanning(h, arc_bound, |s| count.tally(s.len()))?;
    Ok(count)
}

/// `(EE(D), EO(D))` of the orientation itself.
pub fn count_ee_eo_classic(d: &Orientation, arc_bound: usize) -> Result<EulerianCount> {
    count_ee_eo_bruteforce(&d.to_digraph(), arc_bound)
}

/// Number of orientations of the underlying graph of `h` sharing its
/// out-degree sequence. Each such orientation is obtained from `h` by
/// reversing exactly the arcs of a spanning Eulerian subdigraph, so this is
/// `EE(h) + EO(h)`.
pub fn count_orientations_same_outdeg(h: &Digraph, arc_bound: usize) -> Result<OrientationCount> {
    Ok(OrientationCount(
        count_ee_eo_bruteforce(h, arc_bound)?.total(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationCount(pub BigUint);

impl OrientationCount {
    /// An odd count rules out `EE = EO`.
    pub fn is_odd(&self) -> bool {
        self.0.bit(0)
    }
}

/// Counts orientations of the underlying graph of `h` with the same
/// out-degree sequence by assigning edge directions one at a time. Does not
/// go through Eulerian subdigraphs; a vertex prunes the branch once its
/// out-degree overshoots or can no longer reach its target.
pub fn count_orientations_with_outdegrees(h: &Digraph, edge_bound: usize) -> Result<BigUint> {
    check_bound("edge count", h.arcs.len(), edge_bound)?;
    let target: Vec<i64> = h.out_degrees().into_iter().map(|d| d as i64).collect();
    let mut remaining = vec![0i64; h.n];
    for &(a, b) in &h.arcs {
        remaining[a] += 1;
        remaining[b] += 1;
    }
    let order = closing_order(h.n, &h.arcs);
    let mut out = vec![0i64; h.n];

    fn ok(out: &[i64], rem: &[i64], target: &[i64], v: usize) -> bool {
        out[v] <= target[v] && out[v] + rem[v] >= target[v]
    }

    fn go(
        depth: usize,
        order: &[usize],
        edges: &[(usize, usize)],
        out: &mut [i64],
        rem: &mut [i64],
        target: &[i64],
        count: &mut BigUint,
    ) {
        if depth == order.len() {
            *count += 1u32;
            return;
        }
        let (a, b) = edges[order[depth]];
        rem[a] -= 1;
        rem[b] -= 1;
        for (tail, head) in [(a, b), (b, a)] {
            out[tail] += 1;
            if ok(out, rem, target, tail) && ok(out, rem, target, head) {
                go(depth + 1, order, edges, out, rem, target, count);
            }
            out[tail] -= 1;
        }
        rem[a] += 1;
        rem[b] += 1;
    }

    let mut count = BigUint::zero();
    go(
        0,
        &order,
        &h.arcs,
        &mut out,
        &mut remaining,
        &target,
        &mut count,
    );
    Ok(count)
}

/// Per-arc gamma-path choices prepared for the structured counter.
struct ChoiceTable {
    arcs: Vec<(Vertex, Vertex)>,
    targets: Vec<Vec<(Vertex, PathKind)>>,
    /// `rem_out[i][u]`: arcs after position `i` leaving `u`.
    rem_out: Vec<Vec<i32>>,
    /// `rem_in[i][u]`: arcs after position `i` that can target `u`.
    rem_in: Vec<Vec<i32>>,
}

impl ChoiceTable {
    fn new(d: &Orientation) -> Self {
        let arcs: Vec<_> = d.arcs().collect();
        let targets: Vec<_> = arcs
            .iter()
            .map(|&a| gamma_targets(d, a).expect("arc taken from the orientation"))
            .collect();
        let n = d.n() as usize + 1;
        let m = arcs.len();
        let mut rem_out = vec![vec![0; n]; m];
        let mut rem_in = vec![vec![0; n]; m];
        for i in (0..m.saturating_sub(1)).rev() {
            rem_out[i] = rem_out[i + 1].clone();
            rem_in[i] = rem_in[i + 1].clone();
            rem_out[i][arcs[i + 1].0 as usize] += 1;
            for &(x, _) in &targets[i + 1] {
                rem_in[i][x as usize] += 1;
            }
        }
        ChoiceTable {
            arcs,
            targets,
            rem_out,
            rem_in,
        }
    }

    fn feasible(&self, i: usize, balance: &[i32], u: Vertex) -> bool {
        let u = u as usize;
        balance[u] - self.rem_in[i][u] <= 0 && 0 <= balance[u] + self.rem_out[i][u]
    }
}

type Tallies = [BigUint; 2];

fn advance(
    table: &ChoiceTable,
    i: usize,
    balance: &[i32],
    tallies: &Tallies,
    out: &mut Vec<(Vec<i32>, Tallies)>,
) {
    let (v, _) = table.arcs[i];
    let targets = &table.targets[i];
    let stable = |b: &[i32]| {
        table.feasible(i, b, v) && targets.iter().all(|&(x, _)| table.feasible(i, b, x))
    };
    if stable(balance) {
        out.push((balance.to_vec(), tallies.clone()));
    }
    for &(x, kind) in targets {
        let mut next = balance.to_vec();
        next[v as usize] += 1;
        next[x as usize] -= 1;
        if stable(&next) {
            let t = match kind {
                // a length-3 path flips parity
                PathKind::Direct => [tallies[1].clone(), tallies[0].clone()],
                PathKind::Detour => tallies.clone(),
            };
            out.push((next, t));
        }
    }
}

fn merge_into(states: &mut HashMap<Vec<i32>, Tallies>, key: Vec<i32>, t: Tallies) {
    let entry = states
        .entry(key)
        .or_insert_with(|| [BigUint::zero(), BigUint::zero()]);
    entry[0] += &t[0];
    entry[1] += &t[1];
}

/// `(EE, EO)` of `W(D)` computed from balanced gamma-path selections.
///
/// Arcs of `D` are processed in lexicographic order. The search state is the
/// vector of star balances (gamma-paths leaving minus entering); states that
/// coincide are merged, and a branch is dropped once a star can no longer be
/// balanced by the arcs still to come.
pub fn count_ee_eo_wd(d: &Orientation) -> EulerianCount {
    count_ee_eo_wd_threads(d, 1)
}

/// [`count_ee_eo_wd`] with each layer of states expanded on `threads`
/// workers. The result does not depend on `threads`.
pub fn count_ee_eo_wd_threads(d: &Orientation, threads: usize) -> EulerianCount {
    let table = ChoiceTable::new(d);
    let n = d.n() as usize + 1;
    let mut states: HashMap<Vec<i32>, Tallies> = HashMap::new();
    states.insert(vec![0; n], [BigUint::one(), BigUint::zero()]);

    let pool = (threads > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
    });

    for i in 0..table.arcs.len() {
        let mut next = HashMap::with_capacity(states.len());
        match &pool {
            Some(pool) if states.len() > 64 => {
                let entries: Vec<_> = states.into_iter().collect();
                let expanded: Vec<Vec<(Vec<i32>, Tallies)>> = pool.install(|| {
                    entries
                        .par_iter()
                        .map(|(b, t)| {
                            let mut out = Vec::new();
                            advance(&table, i, b, t, &mut out);
                            out
                        })
                        .collect()
                });
                for (key, t) in expanded.into_iter().flatten() {
                    merge_into(&mut next, key, t);
                }
            }
            _ => {
                let mut out = Vec::new();
                for (b, t) in &states {
                    advance(&table, i, b, t, &mut out);
                }
                for (key, t) in out {
                    merge_into(&mut next, key, t);
                }
            }
        }
        states = next;
    }

    let [ee, eo] = states
        .remove(&vec![0; n])
        .unwrap_or_else(|| [BigUint::zero(), BigUint::zero()]);
    EulerianCount { ee, eo }
}

/// One gamma-path target (or none) per arc of `D`, arcs in lexicographic
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaSelection {
    pub choices: Vec<((Vertex, Vertex), Option<Vertex>)>,
}

impl GammaSelection {
    pub fn paths(&self, d: &Orientation) -> Vec<GammaPath> {
        self.choices
            .iter()
            .filter_map(|&(arc, t)| t.map(|x| gamma_path(d, arc, x).expect("selected target")))
            .collect()
    }

    /// Sorted indices into `w.arcs()` of the union of the selected paths.
    pub fn wd_arc_indices(&self, w: &WDigraph) -> Vec<usize> {
        let mut idx: Vec<usize> = self
            .paths(w.source())
            .iter()
            .flat_map(|p| p.edges())
            .map(|e| w.arc_index(&e).expect("gamma-path arc lies in W(D)"))
            .collect();
        idx.sort_unstable();
        idx
    }

    /// Total number of `W(D)` arcs covered by the selected paths.
    pub fn edge_count(&self, d: &Orientation) -> usize {
        self.paths(d).iter().map(GammaPath::len).sum()
    }
}

/// Lists every balanced gamma-path selection, depth-first over the arcs of
/// `D` with the same pruning as [`count_ee_eo_wd`]. Meant for small `D`.
pub fn enumerate_gamma_selections(d: &Orientation) -> Vec<GammaSelection> {
    fn go(
        table: &ChoiceTable,
        i: usize,
        balance: &mut Vec<i32>,
        picked: &mut Vec<Option<Vertex>>,
        out: &mut Vec<GammaSelection>,
    ) {
        if i == table.arcs.len() {
            if balance.iter().all(|&b| b == 0) {
                out.push(GammaSelection {
                    choices: table
                        .arcs
                        .iter()
                        .copied()
                        .zip(picked.iter().copied())
                        .collect(),
                });
            }
            return;
        }
        let (v, _) = table.arcs[i];
        let targets = &table.targets[i];
        let stable = |b: &[i32]| {
            table.feasible(i, b, v) && targets.iter().all(|&(x, _)| table.feasible(i, b, x))
        };
        if stable(balance) {
            picked.push(None);
            go(table, i + 1, balance, picked, out);
            picked.pop();
        }
        for &(x, _) in targets {
            balance[v as usize] += 1;
            balance[x as usize] -= 1;
            if stable(balance) {
                picked.push(Some(x));
                go(table, i + 1, balance, picked, out);
                picked.pop();
            }
            balance[v as usize] -= 1;
            balance[x as usize] += 1;
        }
    }

    let table = ChoiceTable::new(d);
    let mut out = Vec::new();
    let mut balance = vec![0; d.n() as usize + 1];
    go(&table, 0, &mut balance, &mut Vec::new(), &mut out);
    out
}

/// Splits an arc subset of `W(D)` into gamma-paths by peeling sector
/// sources: every entered sector must be left along exactly one gamma-path.
///
/// Returns `None` unless the subset is exactly a union of edge-disjoint
/// gamma-paths with `d+(x*) = d-(x*)` at every star.
pub fn decompose_into_gamma_paths(w: &WDigraph, subset: &[usize]) -> Option<Vec<GammaPath>> {
    let d = w.source();
    let arcs: BTreeSet<WArc> = subset.iter().map(|&i| w.arcs()[i]).collect();
    let mut paths = Vec::new();
    for (&arc, sector) in w.sectors() {
        let src = sector.source();
        let leaving: Vec<&WArc> = arcs.iter().filter(|(a, _)| *a == src).collect();
        if !arcs.contains(&(WVertex::Star(arc.0), src)) {
            if !leaving.is_empty() {
                return None;
            }
            continue;
        }
        let [(_, next)] = leaving.as_slice() else {
            return None;
        };
        let target = match *next {
            WVertex::SectorX { x, .. } | WVertex::SectorY { x, .. } => x,
            WVertex::Star(_) => return None,
        };
        let path = gamma_path(d, arc, target).ok()?;
        if !path.edges().iter().all(|e| arcs.contains(e)) {
            return None;
        }
        paths.push(path);
    }

    let covered: usize = paths.iter().map(GammaPath::len).sum();
    let union: BTreeSet<WArc> = paths.iter().flat_map(|p| p.edges()).collect();
    if covered != union.len() || union != arcs {
        return None;
    }
    let mut balance = vec![0i64; d.n() as usize + 1];
    for p in &paths {
        balance[p.arc.0 as usize] += 1;
        balance[p.target as usize] -= 1;
    }
    balance.iter().all(|&b| b == 0).then_some(paths)
}
