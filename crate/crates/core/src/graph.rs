//! Simple undirected graphs, their orientations, and the structural
//! predicates used by the coloring checks.
//!
//! Vertices are the contiguous ids `1..=n` fixed at construction. Nothing
//! downstream relabels them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = u32;

fn check_range(v: Vertex, n: Vertex) -> Result<()> {
    if v == 0 || v > n {
        Err(Error::VertexOutOfRange { vertex: v, n })
    } else {
        Ok(())
    }
}

/// A finite simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: Vertex,
    /// Edges stored as `(min, max)`.
    edges: BTreeSet<(Vertex, Vertex)>,
    adj: Vec<BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new<I>(n: Vertex, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: Vertex) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            adj: vec![BTreeSet::new(); n as usize],
        }
    }

    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        check_range(u, self.n)?;
        check_range(v, self.n)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge(u, v));
        }
        self.adj[u as usize - 1].insert(v);
        self.adj[v as usize - 1].insert(u);
        Ok(())
    }

    pub fn n(&self) -> Vertex {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v as usize - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n as usize];
        let mut stack = vec![1];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in self.neighbors(v) {
                if !seen[u as usize - 1] {
                    seen[u as usize - 1] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A proper 2-coloring as a two-class partition, or `None` if the graph
    /// has an odd cycle.
    pub fn is_bipartite(&self) -> Option<VertexPartition> {
        self.bipartition_without(&BTreeSet::new())
            .map(|(a, b)| VertexPartition {
                classes: vec![a, b],
            })
    }

    /// Bipartiteness of `G - removed`. The returned sides only contain
    /// surviving vertices.
    pub fn bipartition_without(
        &self,
        removed: &BTreeSet<Vertex>,
    ) -> Option<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
        let mut side: Vec<Option<bool>> = vec![None; self.n as usize];
        let mut queue = VecDeque::new();
        for start in self.vertices() {
            if removed.contains(&start) || side[start as usize - 1].is_some() {
                continue;
            }
            side[start as usize - 1] = Some(false);
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                let s = side[v as usize - 1].unwrap();
                for &u in self.neighbors(v) {
                    if removed.contains(&u) {
                        continue;
                    }
                    match side[u as usize - 1] {
                        None => {
                            side[u as usize - 1] = Some(!s);
                            queue.push_back(u);
                        }
                        Some(t) if t == s => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut a = BTreeSet::new();
        let mut b = BTreeSet::new();
        for v in self.vertices() {
            match side[v as usize - 1] {
                Some(false) => {
                    a.insert(v);
                }
                Some(true) => {
                    b.insert(v);
                }
                None => {}
            }
        }
        Some((a, b))
    }

    /// Whether the open neighborhood of `v` is a clique. Vertices of degree
    /// at most one qualify.
    pub fn is_simplicial(&self, v: Vertex) -> bool {
        self.non_adjacent_neighbor_pair(v).is_none()
    }

    /// Two neighbors of `v` that are not adjacent to each other, if any.
    pub fn non_adjacent_neighbor_pair(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let nbrs: Vec<Vertex> = self.neighbors(v).iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !self.has_edge(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn simplicial_vertices(&self) -> BTreeSet<Vertex> {
        self.vertices().filter(|&v| self.is_simplicial(v)).collect()
    }

    /// Renders the graph in the `--` edge-list file format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} -- {v}\n"));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}

/// An antisymmetric simple digraph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    n: Vertex,
    arcs: BTreeSet<(Vertex, Vertex)>,
    out: Vec<BTreeSet<Vertex>>,
    inc: Vec<BTreeSet<Vertex>>,
    adj: Vec<BTreeSet<Vertex>>,
}

/// `N_D(v) \ N_D(w)` and `N_D(w) \ N_D[v]` for an arc `v -> w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodSplit {
    /// Targets reached by a single step inside the sector.
    pub direct: BTreeSet<Vertex>,
    /// Targets reached through an intermediate `y` vertex.
    pub detour: BTreeSet<Vertex>,
}

impl Orientation {
    pub fn new<I>(n: Vertex, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut d = Orientation {
            n,
            arcs: BTreeSet::new(),
            out: vec![BTreeSet::new(); n as usize],
            inc: vec![BTreeSet::new(); n as usize],
            adj: vec![BTreeSet::new(); n as usize],
        };
        for (v, w) in arcs {
            d.insert_arc(v, w)?;
        }
        Ok(d)
    }

    fn insert_arc(&mut self, v: Vertex, w: Vertex) -> Result<()> {
        check_range(v, self.n)?;
        check_range(w, self.n)?;
        if v == w {
            return Err(Error::SelfLoop(v));
        }
        if self.arcs.contains(&(v, w)) {
            return Err(Error::DuplicateEdge(v, w));
        }
        if self.arcs.contains(&(w, v)) {
            return Err(Error::BothDirections(w, v));
        }
        self.arcs.insert((v, w));
        self.out[v as usize - 1].insert(w);
        self.inc[w as usize - 1].insert(v);
        self.adj[v as usize - 1].insert(w);
        self.adj[w as usize - 1].insert(v);
        Ok(())
    }

    pub fn n(&self) -> Vertex {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, v: Vertex, w: Vertex) -> bool {
        self.arcs.contains(&(v, w))
    }

    pub fn out_neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.out[v as usize - 1]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.inc[v as usize - 1]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v as usize - 1].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inc[v as usize - 1].len()
    }

    /// Out-degrees indexed by `v - 1`.
    pub fn out_degrees(&self) -> Vec<usize> {
        self.vertices().map(|v| self.out_degree(v)).collect()
    }

    /// Underlying undirected neighborhood `N_D(v)`.
    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v as usize - 1]
    }

    /// `N_D[v] = N_D(v) ∪ {v}`.
    pub fn closed_neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut set = self.neighbors(v).clone();
        set.insert(v);
        set
    }

    /// Splits `N_D(v) △ N_D(w) \ {v}` for the arc `v -> w` into the targets
    /// that are one step from the sector source (`N(v) \ N(w)`) and those
    /// that take a detour (`N(w) \ N[v]`). The excluded `v` is always in the
    /// symmetric difference since `v ∈ N(w) \ N(v)`.
    pub fn symmetric_difference_neighborhoods(
        &self,
        v: Vertex,
        w: Vertex,
    ) -> Result<NeighborhoodSplit> {
        if !self.has_arc(v, w) {
            return Err(Error::NotAnArc(v, w));
        }
        let nv = self.neighbors(v);
        let nw = self.neighbors(w);
        let direct = nv.difference(nw).copied().collect();
        let detour = nw
            .iter()
            .copied()
            .filter(|&x| x != v && !nv.contains(&x))
            .collect();
        Ok(NeighborhoodSplit { direct, detour })
    }

    pub fn underlying(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for (v, w) in self.arcs() {
            g.insert_edge(v, w)
                .expect("orientation arcs form a simple graph");
        }
        g
    }

    pub fn orients(&self, g: &Graph) -> bool {
        self.n == g.n()
            && self.arc_count() == g.edge_count()
            && self.arcs().all(|(v, w)| g.has_edge(v, w))
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let mut indeg: Vec<usize> = self.vertices().map(|v| self.in_degree(v)).collect();
        let mut stack: Vec<Vertex> = self
            .vertices()
            .filter(|&v| indeg[v as usize - 1] == 0)
            .collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for &w in self.out_neighbors(v) {
                indeg[w as usize - 1] -= 1;
                if indeg[w as usize - 1] == 0 {
                    stack.push(w);
                }
            }
        }
        removed == self.n as usize
    }

    /// Renders the orientation in the `->` arc-list file format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (v, w) in self.arcs() {
            out.push_str(&format!("{v} -> {w}\n"));
        }
        out
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}

/// Disjoint vertex classes covering `1..=n`. Empty classes are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    pub classes: Vec<BTreeSet<Vertex>>,
}

impl VertexPartition {
    pub fn new(n: Vertex, classes: Vec<BTreeSet<Vertex>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for class in &classes {
            for &v in class {
                if v == 0 || v > n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if !seen.insert(v) {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} in two classes"
                    )));
                }
            }
        }
        if seen.len() != n as usize {
            return Err(Error::InvalidPartition(
                "classes do not cover every vertex".into(),
            ));
        }
        Ok(VertexPartition { classes })
    }

    /// Every class is an independent set of `g`.
    pub fn is_proper_coloring(&self, g: &Graph) -> bool {
        self.classes
            .iter()
            .all(|c| g.edges().all(|(u, v)| !(c.contains(&u) && c.contains(&v))))
    }
}

/// Result of parsing a graph file: the edge style decides the variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Graph(Graph),
    Orientation(Orientation),
}

impl GraphFile {
    /// The orientation in the file. A file with no edge lines is read as
    /// the arcless orientation.
    pub fn into_orientation(self) -> Result<Orientation> {
        match self {
            GraphFile::Orientation(d) => Ok(d),
            GraphFile::Graph(g) if g.edge_count() == 0 => Orientation::new(g.n(), []),
            GraphFile::Graph(_) => Err(Error::ExpectedOrientation),
        }
    }

    /// The undirected graph, taking the underlying graph of an orientation.
    pub fn into_graph(self) -> Graph {
        match self {
            GraphFile::Graph(g) => g,
            GraphFile::Orientation(d) => d.underlying(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeStyle {
    Undirected,
    Directed,
}

fn parse_id(tok: &str, line: usize) -> Result<Vertex> {
    tok.parse::<Vertex>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a vertex id, found `{tok}`"),
    })
}

/// Parses the edge-list format: `#` comment lines, a header line holding
/// the vertex count, then one `u -- v` or `u -> v` line per edge.
pub fn parse(text: &str) -> Result<GraphFile> {
    let mut n: Option<Vertex> = None;
    let mut style: Option<EdgeStyle> = None;
    let mut pairs: Vec<(usize, Vertex, Vertex)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if n.is_none() {
            if tokens.len() != 1 {
                return Err(Error::Parse {
                    line,
                    message: "expected the vertex count on the first data line".into(),
                });
            }
            n = Some(tokens[0].parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid vertex count `{}`", tokens[0]),
            })?);
            continue;
        }
        let (u, op, v) = match tokens.as_slice() {
            [u, op, v] => (*u, *op, *v),
            _ => {
                return Err(Error::Parse {
                    line,
                    message: "expected `u -- v` or `u -> v`".into(),
                })
            }
        };
        let this = match op {
            "--" => EdgeStyle::Undirected,
            "->" => EdgeStyle::Directed,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown edge marker `{other}`"),
                })
            }
        };
        match style {
            None => style = Some(this),
            Some(s) if s != this => return Err(Error::MixedEdgeStyles { line }),
            Some(_) => {}
        }
        pairs.push((line, parse_id(u, line)?, parse_id(v, line)?));
    }

    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing vertex count".into(),
    })?;
    let at = |line: usize| {
        move |e: Error| Error::AtLine {
            line,
            source: Box::new(e),
        }
    };

    match style.unwrap_or(EdgeStyle::Undirected) {
        EdgeStyle::Undirected => {
            let mut g = Graph::empty(n);
            for (line, u, v) in pairs {
                g.insert_edge(u, v).map_err(at(line))?;
            }
            Ok(GraphFile::Graph(g))
        }
        EdgeStyle::Directed => {
            let mut d = Orientation::new(n, [])?;
            for (line, u, v) in pairs {
                d.insert_arc(u, v).map_err(at(line))?;
            }
            Ok(GraphFile::Orientation(d))
        }
    }
}
