//! Simple undirected graphs and directed graphs on vertices `0..n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Undirected simple graph. Vertices are `0..n`, edges stored as ordered
/// pairs `(u, v)` with `u < v`. Optional text labels tag vertex roles in
/// constructed families; labels never affect equality, hashing or ordering.
#[derive(Clone, Default)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}
impl Eq for Graph {}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Graph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.edges).cmp(&(other.n, &other.edges))
    }
}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, {:?})", self.n, self.edges.len(), self.edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: BTreeSet::new(), adj: vec![Vec::new(); n], labels: BTreeMap::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Panicking constructor for statically known edge lists.
    pub fn of(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::from_edges(n, edges).expect("invalid static edge list")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.adj.push(Vec::new());
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let e = (u.min(v), u.max(v));
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e.0, e.1));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.adj[u].sort_unstable();
        self.adj[v].sort_unstable();
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(|s| s.as_str())
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        ds.sort_unstable();
        ds
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `verts` (deduplicated, sorted). Returns the graph
    /// together with the map from new vertex ids to old ones.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let vs: Vec<usize> = {
            let set: BTreeSet<usize> = verts.iter().copied().collect();
            set.into_iter().collect()
        };
        let index: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(vs.len());
        for &(u, v) in &self.edges {
            if let (Some(&a), Some(&b)) = (index.get(&u), index.get(&v)) {
                g.add_edge(a, b).unwrap();
            }
        }
        for (&old, label) in &self.labels {
            if let Some(&new) = index.get(&old) {
                g.set_label(new, label.clone());
            }
        }
        (g, vs)
    }

    /// Subgraph consisting of exactly `keep` edges, on the vertices they touch.
    /// Returns the graph and the new-to-old vertex map.
    pub fn edge_subgraph(&self, keep: &[(usize, usize)]) -> (Graph, Vec<usize>) {
        let mut vs: BTreeSet<usize> = BTreeSet::new();
        for &(u, v) in keep {
            vs.insert(u);
            vs.insert(v);
        }
        let vs: Vec<usize> = vs.into_iter().collect();
        let index: BTreeMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Graph::new(vs.len());
        for &(u, v) in keep {
            g.add_edge(index[&u], index[&v]).unwrap();
        }
        (g, vs)
    }

    /// Copy without isolated vertices. Returns the graph and the new-to-old
    /// vertex map.
    pub fn without_isolated(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    // Named small families used throughout.

    pub fn empty(n: usize) -> Graph {
        Graph::new(n)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Path on `n` vertices (n - 1 edges).
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0).unwrap();
        g
    }

    /// Star K_{1,k}: vertex 0 is the center.
    pub fn star(k: usize) -> Graph {
        let mut g = Graph::new(k + 1);
        for v in 1..=k {
            g.add_edge(0, v).unwrap();
        }
        g
    }

    /// Complete bipartite K_{a,b}: side one is `0..a`, side two is `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// `k` disjoint copies of K2.
    pub fn matching(k: usize) -> Graph {
        let mut g = Graph::new(2 * k);
        for i in 0..k {
            g.add_edge(2 * i, 2 * i + 1).unwrap();
        }
        g
    }
}

/// Disjoint union of `parts`, vertices renumbered block by block.
/// `offsets[i]` is the id of part `i`'s vertex 0 in the union, so the
/// summands stay recoverable; a final sentinel holds the total size.
pub fn disjoint_union(parts: &[Graph]) -> (Graph, Vec<usize>) {
    let total = parts.iter().map(|g| g.n()).sum();
    let mut g = Graph::new(total);
    let mut offsets = Vec::with_capacity(parts.len() + 1);
    let mut off = 0;
    for part in parts {
        offsets.push(off);
        for (u, v) in part.edges() {
            g.add_edge(off + u, off + v).unwrap();
        }
        for (&v, label) in part.labels() {
            g.set_label(off + v, label.clone());
        }
        off += part.n();
    }
    offsets.push(off);
    (g, offsets)
}

/// Directed simple graph; arcs are ordered pairs, antiparallel pairs allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiGraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
}

impl DiGraph {
    pub fn new(n: usize) -> Self {
        DiGraph { n, arcs: BTreeSet::new() }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DiGraphError> {
        let mut d = DiGraph::new(n);
        for &(u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    pub fn of(n: usize, arcs: &[(usize, usize)]) -> Self {
        Self::from_arcs(n, arcs).expect("invalid static arc list")
    }

    /// Complete digraph: both arcs between every vertex pair.
    pub fn complete(n: usize) -> Self {
        let mut d = DiGraph::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    d.add_arc(u, v).unwrap();
                }
            }
        }
        d
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<(), DiGraphError> {
        if u >= self.n {
            return Err(DiGraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(DiGraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(DiGraphError::Loop(u));
        }
        if !self.arcs.insert((u, v)) {
            return Err(DiGraphError::DuplicateArc(u, v));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn in_arcs(&self, v: usize) -> Vec<(usize, usize)> {
        self.arcs.iter().copied().filter(|&(_, y)| y == v).collect()
    }

    pub fn out_arcs(&self, v: usize) -> Vec<(usize, usize)> {
        self.arcs.iter().copied().filter(|&(x, _)| x == v).collect()
    }

    /// Underlying undirected graph; antiparallel arcs collapse to one edge.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for &(u, v) in &self.arcs {
            if !g.has_edge(u, v) {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }
}
