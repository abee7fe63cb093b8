//! The derived digraph `W(D)` and its gamma-paths.
//!
//! Every arc `v -> w` of `D` gets its own sector: a fan rooted at the copy
//! `v^{vw}` that reaches `x^{vw}` in one step when `x ∈ N(v) \ N(w)` and in
//! two steps, through `y^{vw}_x`, when `x ∈ N(w) \ N[v]`. Star vertices `x*`
//! glue the sectors together: `v* -> v^{vw}` enters a sector and
//! `x^{vw} -> x*` leaves it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::eulerian::Digraph;
use crate::graph::{Orientation, Vertex};

pub type Arc = (Vertex, Vertex);

/// A vertex of `W(D)`. Identity is structural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WVertex {
    /// `x*`
    Star(Vertex),
    /// `x^{vw}`
    SectorX { arc: Arc, x: Vertex },
    /// `y^{vw}_x`
    SectorY { arc: Arc, x: Vertex },
}

impl WVertex {
    pub fn sector(&self) -> Option<Arc> {
        match *self {
            WVertex::Star(_) => None,
            WVertex::SectorX { arc, .. } | WVertex::SectorY { arc, .. } => Some(arc),
        }
    }
}

impl fmt::Display for WVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WVertex::Star(x) => write!(f, "{x}*"),
            WVertex::SectorX { arc: (v, w), x } => write!(f, "{x}^{{{v}>{w}}}"),
            WVertex::SectorY { arc: (v, w), x } => write!(f, "y^{{{v}>{w}}}_{x}"),
        }
    }
}

pub type WArc = (WVertex, WVertex);

/// The copy of `H_vw` living inside `W(D)`: its vertices and internal arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub arc: Arc,
    pub vertices: Vec<WVertex>,
    pub arcs: Vec<WArc>,
}

impl Sector {
    pub fn source(&self) -> WVertex {
        WVertex::SectorX {
            arc: self.arc,
            x: self.arc.0,
        }
    }
}

pub fn build_sector(d: &Orientation, arc: Arc) -> Result<Sector> {
    let (v, w) = arc;
    let split = d.symmetric_difference_neighborhoods(v, w)?;
    let source = WVertex::SectorX { arc, x: v };
    let mut vertices = vec![source];
    let mut arcs = Vec::new();
    for &x in &split.direct {
        let xv = WVertex::SectorX { arc, x };
        vertices.push(xv);
        arcs.push((source, xv));
    }
    for &x in &split.detour {
        let xv = WVertex::SectorX { arc, x };
        let yv = WVertex::SectorY { arc, x };
        vertices.push(xv);
        vertices.push(yv);
        arcs.push((source, yv));
        arcs.push((yv, xv));
    }
    vertices.sort();
    arcs.sort();
    Ok(Sector {
        arc,
        vertices,
        arcs,
    })
}

/// `W(D)` with its vertex and arc lists in sorted order.
#[derive(Debug, Clone)]
pub struct WDigraph {
    source: Orientation,
    vertices: Vec<WVertex>,
    arcs: Vec<WArc>,
    sectors: BTreeMap<Arc, Sector>,
    index: HashMap<WVertex, usize>,
}

pub fn build_wd(d: &Orientation) -> WDigraph {
    let mut vertices: Vec<WVertex> = d.vertices().map(WVertex::Star).collect();
    let mut arcs = Vec::new();
    let mut sectors = BTreeMap::new();
    for arc in d.arcs() {
        let sector = build_sector(d, arc).expect("arc taken from the orientation");
        arcs.push((WVertex::Star(arc.0), sector.source()));
        for &u in &sector.vertices {
            if let WVertex::SectorX { x, .. } = u {
                if x != arc.0 {
                    arcs.push((u, WVertex::Star(x)));
                }
            }
        }
        vertices.extend(sector.vertices.iter().copied());
        arcs.extend(sector.arcs.iter().copied());
        sectors.insert(arc, sector);
    }
    vertices.sort();
    arcs.sort();
    let index = vertices.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    WDigraph {
        source: d.clone(),
        vertices,
        arcs,
        sectors,
        index,
    }
}

impl WDigraph {
    pub fn source(&self) -> &Orientation {
        &self.source
    }

    pub fn vertices(&self) -> &[WVertex] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[WArc] {
        &self.arcs
    }

    pub fn sectors(&self) -> &BTreeMap<Arc, Sector> {
        &self.sectors
    }

    /// Position of a vertex in [`WDigraph::vertices`].
    pub fn index_of(&self, u: &WVertex) -> Option<usize> {
        self.index.get(u).copied()
    }

    pub fn arc_index(&self, a: &WArc) -> Option<usize> {
        self.arcs.binary_search(a).ok()
    }

    pub fn out_degree(&self, u: &WVertex) -> usize {
        self.arcs.iter().filter(|(a, _)| a == u).count()
    }

    pub fn in_degree(&self, u: &WVertex) -> usize {
        self.arcs.iter().filter(|(_, b)| b == u).count()
    }

    /// The same digraph on vertices `0..|V|`, indexed as in
    /// [`WDigraph::vertices`], with arcs in [`WDigraph::arcs`] order.
    pub fn to_digraph(&self) -> Digraph {
        let arcs = self
            .arcs
            .iter()
            .map(|(a, b)| (self.index[a], self.index[b]))
            .collect();
        Digraph::new(self.vertices.len(), arcs)
    }

    /// Arc list in the `->` file format with canonical vertex names.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{}\n", self.vertices.len());
        for (a, b) in &self.arcs {
            out.push_str(&format!("{a} -> {b}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    /// Length 3: `v* -> v^{vw} -> x^{vw} -> x*`.
    Direct,
    /// Length 4: `v* -> v^{vw} -> y^{vw}_x -> x^{vw} -> x*`.
    Detour,
}

/// The unique path from `v*` through the `vw`-sector to `target*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaPath {
    pub arc: Arc,
    pub target: Vertex,
    pub kind: PathKind,
    pub vertices: Vec<WVertex>,
}

impl GammaPath {
    /// Number of arcs: 3 or 4.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> Vec<WArc> {
        self.vertices.windows(2).map(|p| (p[0], p[1])).collect()
    }
}

pub fn gamma_path(d: &Orientation, arc: Arc, x: Vertex) -> Result<GammaPath> {
    let (v, w) = arc;
    let split = d.symmetric_difference_neighborhoods(v, w)?;
    let invalid = Error::InvalidTarget {
        tail: v,
        head: w,
        target: x,
    };
    if x == v {
        return Err(invalid);
    }
    let star_v = WVertex::Star(v);
    let src = WVertex::SectorX { arc, x: v };
    let xv = WVertex::SectorX { arc, x };
    let star_x = WVertex::Star(x);
    let (kind, vertices) = if split.direct.contains(&x) {
        (PathKind::Direct, vec![star_v, src, xv, star_x])
    } else if split.detour.contains(&x) {
        let yv = WVertex::SectorY { arc, x };
        (PathKind::Detour, vec![star_v, src, yv, xv, star_x])
    } else {
        return Err(invalid);
    };
    Ok(GammaPath {
        arc,
        target: x,
        kind,
        vertices,
    })
}

/// Legal gamma-path targets of an arc, ascending, tagged with their kind.
pub fn gamma_targets(d: &Orientation, arc: Arc) -> Result<Vec<(Vertex, PathKind)>> {
    let split = d.symmetric_difference_neighborhoods(arc.0, arc.1)?;
    let mut targets: Vec<_> = split
        .direct
        .iter()
        .map(|&x| (x, PathKind::Direct))
        .chain(split.detour.iter().map(|&x| (x, PathKind::Detour)))
        .collect();
    targets.sort_by_key(|&(x, _)| x);
    Ok(targets)
}

pub fn gamma_paths_for_arc(d: &Orientation, arc: Arc) -> Result<Vec<GammaPath>> {
    gamma_targets(d, arc)?
        .into_iter()
        .map(|(x, _)| gamma_path(d, arc, x))
        .collect()
}

/// Every gamma-path of `W(D)`, grouped by arc in lexicographic order.
pub fn all_gamma_paths(d: &Orientation) -> Vec<GammaPath> {
    d.arcs()
        .flat_map(|arc| gamma_paths_for_arc(d, arc).expect("arc taken from the orientation"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{d1, d2, d3};
    use std::collections::BTreeSet;

    fn x(arc: Arc, x: Vertex) -> WVertex {
        WVertex::SectorX { arc, x }
    }

    fn y(arc: Arc, x: Vertex) -> WVertex {
        WVertex::SectorY { arc, x }
    }

    #[test]
    fn sector_12_of_d1() {
        let a = (1, 2);
        let s = build_sector(&d1(), a).unwrap();
        let verts: BTreeSet<_> = s.vertices.iter().copied().collect();
        assert_eq!(
            verts,
            [x(a, 1), x(a, 2), x(a, 4), y(a, 4)].into_iter().collect()
        );
        let arcs: BTreeSet<_> = s.arcs.iter().copied().collect();
        assert_eq!(
            arcs,
            [(x(a, 1), x(a, 2)), (x(a, 1), y(a, 4)), (y(a, 4), x(a, 4))]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn sector_24_of_d1() {
        let a = (2, 4);
        let s = build_sector(&d1(), a).unwrap();
        assert_eq!(s.vertices, vec![x(a, 1), x(a, 2), x(a, 3), x(a, 4)]);
        assert_eq!(
            s.arcs,
            vec![(x(a, 2), x(a, 1)), (x(a, 2), x(a, 3)), (x(a, 2), x(a, 4))]
        );
    }

    #[test]
    fn sector_of_single_arc() {
        let d = Orientation::new(2, [(1, 2)]).unwrap();
        let s = build_sector(&d, (1, 2)).unwrap();
        assert_eq!(s.vertices, vec![x((1, 2), 1), x((1, 2), 2)]);
        assert_eq!(s.arcs, vec![(x((1, 2), 1), x((1, 2), 2))]);
        assert_eq!(build_sector(&d, (2, 1)).unwrap_err(), Error::NotAnArc(2, 1));
    }

    #[test]
    fn figure_counts() {
        let w1 = build_wd(&d1());
        assert_eq!((w1.vertices().len(), w1.arcs().len()), (18, 22));
        let sizes: Vec<_> = w1.sectors().values().map(|s| s.vertices.len()).collect();
        // sectors 12, 13, 24, 32
        assert_eq!(sizes, [4, 2, 4, 4]);

        // D2: sectors 13, 21, 32, 34, 41 of sizes 2, 4, 3, 3, 4.
        let w2 = build_wd(&d2());
        let sizes: Vec<_> = w2
            .sectors()
            .iter()
            .map(|(a, s)| (*a, s.vertices.len()))
            .collect();
        assert_eq!(
            sizes,
            [
                ((1, 3), 2),
                ((2, 1), 4),
                ((3, 2), 3),
                ((3, 4), 3),
                ((4, 1), 4)
            ]
        );
        assert_eq!((w2.vertices().len(), w2.arcs().len()), (20, 25));

        let w3 = build_wd(&d3());
        for (arc, s) in w3.sectors() {
            assert_eq!(s.vertices.len(), 5, "sector {arc:?}");
            assert_eq!(
                s.vertices
                    .iter()
                    .filter(|u| matches!(u, WVertex::SectorY { .. }))
                    .count(),
                1
            );
        }
        assert!(w3.sectors().contains_key(&(2, 1)));
        assert!(w3.sectors().contains_key(&(4, 1)));
        assert!(w3.sectors().contains_key(&(3, 2)));
        assert!(w3.sectors().contains_key(&(3, 4)));
        assert_eq!((w3.vertices().len(), w3.arcs().len()), (24, 32));
        // y-vertices as drawn
        for (arc, t) in [((2, 1), 4), ((4, 1), 2), ((3, 2), 1), ((3, 4), 1)] {
            assert!(w3.index_of(&y(arc, t)).is_some());
        }
    }

    #[test]
    fn arcless_orientation_gives_isolated_stars() {
        let d = Orientation::new(3, []).unwrap();
        let w = build_wd(&d);
        assert_eq!(
            w.vertices(),
            &[WVertex::Star(1), WVertex::Star(2), WVertex::Star(3)]
        );
        assert!(w.arcs().is_empty());
    }

    #[test]
    fn gamma_path_cases() {
        let d = d1();
        let p = gamma_path(&d, (1, 2), 4).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.kind, PathKind::Detour);
        assert_eq!(
            p.vertices,
            vec![
                WVertex::Star(1),
                x((1, 2), 1),
                y((1, 2), 4),
                x((1, 2), 4),
                WVertex::Star(4)
            ]
        );
        let p = gamma_path(&d, (1, 2), 2).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(
            p.vertices,
            vec![
                WVertex::Star(1),
                x((1, 2), 1),
                x((1, 2), 2),
                WVertex::Star(2)
            ]
        );
        assert!(matches!(
            gamma_path(&d, (1, 3), 1),
            Err(Error::InvalidTarget { target: 1, .. })
        ));
        assert!(matches!(
            gamma_path(&d, (1, 3), 2),
            Err(Error::InvalidTarget { target: 2, .. })
        ));
    }

    #[test]
    fn gamma_paths_per_arc() {
        let d = d1();
        let paths = gamma_paths_for_arc(&d, (2, 4)).unwrap();
        assert_eq!(
            paths.iter().map(|p| p.target).collect::<Vec<_>>(),
            [1, 3, 4]
        );
        assert!(paths.iter().all(|p| p.len() == 3));
        let paths = gamma_paths_for_arc(&d, (1, 2)).unwrap();
        assert_eq!(
            paths
                .iter()
                .map(|p| (p.target, p.len()))
                .collect::<Vec<_>>(),
            [(2, 3), (4, 4)]
        );
        let single = Orientation::new(2, [(1, 2)]).unwrap();
        let paths = gamma_paths_for_arc(&single, (1, 2)).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].target, 2);
    }

    #[test]
    fn canonical_names() {
        assert_eq!(WVertex::Star(3).to_string(), "3*");
        assert_eq!(x((1, 2), 4).to_string(), "4^{1>2}");
        assert_eq!(y((1, 2), 4).to_string(), "y^{1>2}_4");
    }
}
