//! Simple undirected graphs stored as per-vertex neighborhood bitsets.
//!
//! Vertices are labeled `0..n`. Graphs are immutable once built; every
//! operation that changes structure (vertex multiplication, duplication,
//! twin contraction, induced subgraphs) returns a new graph.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Largest distance between two vertices, or `Infinite` when some pair is
/// in different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("infinite"),
        }
    }
}

impl serde::Serialize for Diameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            Diameter::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Diameter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Finite(usize),
            Named(String),
        }
        match Repr::deserialize(d)? {
            Repr::Finite(v) => Ok(Diameter::Finite(v)),
            Repr::Named(s) if s == "infinite" => Ok(Diameter::Infinite),
            Repr::Named(s) => Err(serde::de::Error::custom(format!("invalid diameter {s:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a graph needs at least one vertex".into()));
        }
        Ok(Self {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Builds a graph from the rows of a 0/1 adjacency matrix written as
    /// strings, e.g. `["011", "101", "110"]` for K3.
    pub fn from_matrix_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::empty(n)?;
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref().as_bytes();
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    b'0' => {}
                    b'1' if i == j => return Err(Error::SelfLoop(i)),
                    b'1' => g.adj[i].insert(j),
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "matrix entry ({i},{j}) is not 0 or 1"
                        )))
                    }
                }
            }
        }
        for i in 0..n {
            for j in g.adj[i].ones() {
                if !g.adj[j].contains(i) {
                    return Err(Error::InvalidArgument(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<FixedBitSet>) -> Self {
        Self { n: adj.len(), adj }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.adj[i].ones().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].count_ones(..))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * (self.n - 1) / 2
    }

    pub fn is_dominating(&self, v: usize) -> Result<bool> {
        Ok(self.degree(v)? == self.n - 1)
    }

    pub fn dominating_vertices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.adj[v].count_ones(..) == self.n - 1)
            .collect()
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for w in self.adj[u].ones() {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let comp: Vec<usize> = self
                .distances_from(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances_from(s) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Diameter::Infinite,
                }
            }
        }
        Diameter::Finite(best)
    }

    /// A shortest path between the lexicographically smallest pair `(u, v)`
    /// at maximum distance. Among shortest `u`-`v` paths the one with the
    /// lexicographically smallest vertex sequence is returned.
    pub fn diametral_geodesic(&self) -> Result<PathWitnessContext> {
        let all: Vec<Vec<Option<usize>>> = (0..self.n).map(|s| self.distances_from(s)).collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for (u, row) in all.iter().enumerate() {
            for (v, d) in row.iter().enumerate().skip(u + 1) {
                let d = d.ok_or(Error::Disconnected)?;
                if best.is_none_or(|(b, _, _)| d > b) {
                    best = Some((d, u, v));
                }
            }
        }
        let (ell, u, v) = best.unwrap_or((0, 0, 0));
        let to_v = &all[v];
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            let step = to_v[cur].unwrap() - 1;
            // ones() is ascending, so the first closer neighbor is the smallest.
            cur = self.adj[cur]
                .ones()
                .find(|&w| to_v[w] == Some(step))
                .expect("BFS layers are contiguous");
            path.push(cur);
        }
        Ok(PathWitnessContext { path, ell })
    }

    /// The blow-up `Γ⊙m`: vertex `i` becomes an independent block of `m[i]`
    /// clones, blocks laid out contiguously in input order, and two blocks
    /// fully joined exactly when the original vertices are adjacent.
    pub fn multiply_vertices(&self, m: &MultiplicityVector) -> Result<Graph> {
        if m.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: m.len(),
            });
        }
        let origin = m.origin_map();
        Ok(self.lift_through(&origin))
    }

    /// Graph on `origin.len()` vertices where `x ~ y` iff
    /// `origin[x] ~ origin[y]` here.
    pub(crate) fn lift_through(&self, origin: &[usize]) -> Graph {
        let total = origin.len();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (x, &o) in origin.iter().enumerate() {
            members[o].push(x);
        }
        let adj = origin
            .iter()
            .map(|&o| {
                let mut set = FixedBitSet::with_capacity(total);
                for j in self.adj[o].ones() {
                    for &y in &members[j] {
                        set.insert(y);
                    }
                }
                set
            })
            .collect();
        Graph::from_adjacency_unchecked(adj)
    }

    /// Adds a new vertex `n` joined to every neighbor of `v`.
    pub fn duplicate_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut origin: Vec<usize> = (0..self.n).collect();
        origin.push(v);
        Ok(self.lift_through(&origin))
    }

    /// First edge `(i, j)`, `i < j` in lexicographic order, whose endpoints
    /// have no common neighbor.
    pub fn find_adjacent_disjoint_pair(&self) -> Option<(usize, usize)> {
        self.edges().find(|&(i, j)| self.adj[i].is_disjoint(&self.adj[j]))
    }

    /// True iff no two vertices share a neighborhood.
    pub fn is_reduced(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.n);
        self.adj.iter().all(|s| seen.insert(s))
    }

    /// Classes of vertices with identical neighborhoods, each sorted and
    /// ordered by smallest member.
    pub fn twin_classes(&self) -> Vec<Vec<usize>> {
        let mut index: HashMap<&FixedBitSet, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            let k = *index.entry(&self.adj[v]).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[k].push(v);
        }
        classes
    }

    /// Collapses every twin class to its smallest member. Returns the reduced
    /// graph together with the class index of each original vertex, so that
    /// `self` is the blow-up of the reduced graph along that map.
    pub fn contract_twins(&self) -> (Graph, Vec<usize>) {
        let classes = self.twin_classes();
        let mut class_of = vec![0; self.n];
        for (k, class) in classes.iter().enumerate() {
            for &v in class {
                class_of[v] = k;
            }
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        (self.induced_subgraph_unchecked(&reps), class_of)
    }

    /// Subgraph induced by `vertices`; vertex `k` of the result is
    /// `vertices[k]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if vertices.is_empty() {
            return Err(Error::InvalidArgument("empty vertex selection".into()));
        }
        let mut seen = FixedBitSet::with_capacity(self.n);
        for &v in vertices {
            self.check_vertex(v)?;
            if seen.put(v) {
                return Err(Error::InvalidArgument(format!("vertex {v} selected twice")));
            }
        }
        Ok(self.induced_subgraph_unchecked(vertices))
    }

    fn induced_subgraph_unchecked(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut set = FixedBitSet::with_capacity(k);
                for (b, &w) in vertices.iter().enumerate() {
                    if self.adj[v].contains(w) {
                        set.insert(b);
                    }
                }
                set
            })
            .collect();
        Graph::from_adjacency_unchecked(adj)
    }
}

/// Vertex multiplicities `m = (m_1, …, m_n)`, all at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityVector(Vec<usize>);

impl MultiplicityVector {
    pub fn new(m: Vec<usize>) -> Result<Self> {
        if let Some(i) = m.iter().position(|&x| x == 0) {
            return Err(Error::ZeroMultiplicity(i));
        }
        Ok(Self(m))
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// For each vertex of the blow-up, the original vertex it clones.
    pub fn origin_map(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k))
            .collect()
    }
}

/// A diametral geodesic `path[0] ~ path[1] ~ … ~ path[ell]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWitnessContext {
    pub path: Vec<usize>,
    pub ell: usize,
}
