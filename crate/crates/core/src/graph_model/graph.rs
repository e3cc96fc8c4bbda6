use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite directed graph. Loops are allowed, multiple arcs are not.
///
/// Vertices are dense indices `0..n` carrying string labels in input order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    arcs: BTreeSet<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("arcs", &self.arcs)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from labels and arcs. Duplicate arcs are rejected.
    pub fn new(labels: Vec<String>, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidGraph("duplicate vertex label".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("arc ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if !set.insert((u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate arc ({u}, {v})")));
            }
        }
        Ok(Self::from_set(labels, set))
    }

    /// Graph on `0..n` with labels `"0"`, `"1"`, ...
    pub fn with_order(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), arcs)
    }

    /// Symmetric directed graph from undirected edges; repeated edges are merged.
    pub fn undirected(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {{{u}, {v}}} has an endpoint outside 0..{n}")));
            }
            set.insert((u, v));
            set.insert((v, u));
        }
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        Ok(Self::from_set((0..n).map(|i| i.to_string()).collect(), set))
    }

    fn from_set(labels: Vec<String>, arcs: BTreeSet<(usize, usize)>) -> Self {
        let n = labels.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out[u].push(v);
            inc[v].push(u);
        }
        Graph { labels, arcs, out, inc }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn has_loop(&self, u: usize) -> bool {
        self.has_arc(u, u)
    }

    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &[usize] {
        &self.inc[u]
    }

    /// Out-degree, counting a loop once.
    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.inc[u].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `true` when every arc has its reverse.
    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| self.has_arc(v, u))
    }

    /// The symmetric directed view: `uv` and `vu` whenever either is an arc.
    pub fn symmetric_directed(&self) -> Graph {
        let mut set = self.arcs.clone();
        for &(u, v) in &self.arcs {
            set.insert((v, u));
        }
        Graph::from_set(self.labels.clone(), set)
    }

    /// Edges `{u, v}` of the undirected view, as pairs with `u <= v`.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self.arcs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        set.into_iter().collect()
    }

    /// Neighbours in the undirected view, excluding `u` itself.
    pub fn undirected_neighbors(&self, u: usize) -> Vec<usize> {
        let mut set: BTreeSet<usize> = self.out[u].iter().copied().collect();
        set.extend(self.inc[u].iter().copied());
        set.remove(&u);
        set.into_iter().collect()
    }

    /// Every vertex reaches every other along arcs.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        let reach = |adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(&self.out) && reach(&self.inc)
    }

    /// Same vertex set, relabelled arcs under `perm` (`perm[old] = new`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let set = self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let labels = (0..self.vertex_count()).map(|i| i.to_string()).collect();
        Graph::from_set(labels, set)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::Dimension { expected: self.vertex_count(), got: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    // ---- named families -------------------------------------------------

    /// Undirected cycle `C_n`, `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        Graph::undirected(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Graph {
        Graph::with_order(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// Undirected path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Graph {
        Graph::undirected(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Complete graph `K_n` without loops.
    pub fn complete(n: usize) -> Graph {
        Graph::with_order(n, (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))))
            .expect("valid complete graph")
    }

    /// Complete bipartite graph `K_{a,b}`; the first part is `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::undirected(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("valid bipartite graph")
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::undirected(10, edges).expect("valid Petersen graph")
    }

    /// Cayley graph of `Z_order` with connection set `±connections`.
    pub fn circulant(order: usize, connections: &[usize]) -> Result<Graph> {
        if order == 0 {
            return Err(Error::InvalidGraph("circulant of order 0".into()));
        }
        let mut edges = Vec::new();
        for &c in connections {
            let c = c % order;
            if c == 0 {
                return Err(Error::InvalidGraph("connection 0 would create loops".into()));
            }
            for i in 0..order {
                edges.push((i, (i + c) % order));
            }
        }
        Graph::undirected(order, edges)
    }

    /// Centre `y` (vertex 0) joined to one vertex of each of three disjoint
    /// `K_m` blocks. Block `b` occupies `1 + b*m .. 1 + (b+1)*m` and its first
    /// vertex is the attachment point.
    pub fn three_clique(m: usize) -> Graph {
        let mut edges = Vec::new();
        for b in 0..3 {
            let base = 1 + b * m;
            for i in 0..m {
                for j in i + 1..m {
                    edges.push((base + i, base + j));
                }
            }
            edges.push((0, base));
        }
        let mut labels = vec!["y".to_string()];
        for b in 0..3 {
            for i in 0..m {
                labels.push(format!("a{}_{}", b + 1, i));
            }
        }
        Graph::undirected(3 * m + 1, edges)
            .and_then(|g| g.with_labels(labels))
            .expect("valid three-clique graph")
    }
}

/// A set of vertex indices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, serde::Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = members.into_iter().collect();
        VertexSet(set.into_iter().collect())
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    /// Bitmask form; only valid when every member is below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Membership vector of length `n`.
    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut ind = vec![false; n];
        for &v in &self.0 {
            ind[v] = true;
        }
        ind
    }

    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|v| !self.contains(*v)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
