//! Simple undirected graphs on dense vertex ids `0..n`, with the basic
//! measures the rest of the crate builds on: edge density, degeneracy,
//! BFS trees and radius.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type Vertex = usize;

/// Undirected simple graph. Adjacency lists are sorted and symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list, rejecting self-loops, parallel
    /// edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(Error::VertexOutOfRange(v));
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Parameter(format!("parallel edge at vertex {v}")));
            }
        }
        Ok(Graph { adj, m })
    }

    /// Builds a graph from a set of edges; duplicates collapse and the
    /// orientation of each pair is irrelevant. Panics on self-loops or
    /// out-of-range ids, which indicate a construction bug.
    pub fn from_edge_set<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let set: BTreeSet<(Vertex, Vertex)> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Graph::from_edges(n, set).expect("well-formed edge set")
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edge_set(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edge_set(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edge_set(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn star(leaves: usize) -> Self {
        Graph::from_edge_set(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// `G[S]` relabelled to `0..|S|` in the order of `vertices`; the second
    /// component maps new ids back to old ones.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && i < index[w]).then_some((i, index[w])))
        });
        (Graph::from_edge_set(vertices.len(), edges.collect::<Vec<_>>()), vertices.to_vec())
    }

    /// True when `G[within]` is non-empty and connected.
    pub fn is_connected_within(&self, within: &[Vertex]) -> bool {
        match within.iter().min() {
            None => false,
            Some(&root) => bfs_distances(self, root, &membership(self.n(), within))
                .iter()
                .zip(membership(self.n(), within))
                .all(|(d, inside)| !inside || d.is_some()),
        }
    }

    /// Parses the line-oriented text format: `graph <n> <m>` followed by `m`
    /// lines `<u> <v>` with `u < v`.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let g = parse_graph_block(&mut lines)?;
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content after graph".into() });
        }
        Ok(g)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {} {}", self.n(), self.m())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Non-blank lines with 1-based line numbers; `#` starts a comment.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a number, found `{tok}`")))
}

/// Reads a `graph <n> <m>` header and its edge lines from `lines`.
pub(crate) fn parse_graph_block<'a, I>(lines: &mut I) -> Result<Graph>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (line, header) = lines.next().ok_or_else(|| parse_err(0, "missing `graph` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "graph" {
        return Err(parse_err(line, "expected `graph <n> <m>`"));
    }
    let n: usize = parse_num(line, toks[1])?;
    let m: usize = parse_num(line, toks[2])?;
    let mut seen = BTreeSet::new();
    for _ in 0..m {
        let (line, text) = lines.next().ok_or_else(|| parse_err(line, "fewer edge lines than declared"))?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(line, "expected `<u> <v>`"));
        }
        let u: usize = parse_num(line, toks[0])?;
        let v: usize = parse_num(line, toks[1])?;
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
        if u > v {
            return Err(parse_err(line, "edge endpoints must satisfy u < v"));
        }
        if v >= n {
            return Err(parse_err(line, format!("vertex {v} out of range for n = {n}")));
        }
        if !seen.insert((u, v)) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
    }
    Graph::from_edges(n, seen)
}

pub(crate) fn membership(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    inside
}

/// BFS distances from `root` inside the vertices flagged in `inside`.
pub(crate) fn bfs_distances(g: &Graph, root: Vertex, inside: &[bool]) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    if !inside[root] {
        return dist;
    }
    dist[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbours(u) {
            if inside[w] && dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// `|E(G)| / |V(G)|`, and 0 for the graph without vertices.
pub fn edge_density(g: &Graph) -> Rational {
    if g.n() == 0 {
        return Rational::from_integer(BigInt::from(0));
    }
    Rational::new(BigInt::from(g.m()), BigInt::from(g.n()))
}

/// Exact degeneracy `k` with an ordering `v_1..v_n` in which every `v_i` has
/// at most `k` neighbours among `v_{i+1}..v_n`. Vertices are peeled by
/// minimum remaining degree, smallest id first.
pub fn degeneracy_order(g: &Graph) -> (usize, Vec<Vertex>) {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("a vertex remains");
        k = k.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    (k, order)
}

/// Largest number of later neighbours over an ordering.
pub fn forward_degree(g: &Graph, order: &[Vertex]) -> usize {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    g.vertices()
        .map(|v| g.neighbours(v).iter().filter(|&&w| pos[w] > pos[v]).count())
        .max()
        .unwrap_or(0)
}

/// A rooted BFS spanning tree of an induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsTree {
    pub root: Vertex,
    pub parent: BTreeMap<Vertex, Vertex>,
    pub depth: BTreeMap<Vertex, usize>,
}

impl BfsTree {
    pub fn contains(&self, v: Vertex) -> bool {
        self.depth.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.depth.keys().copied()
    }

    pub fn height(&self) -> usize {
        self.depth.values().copied().max().unwrap_or(0)
    }

    /// Tree path from `v` up to the root, `v` first.
    pub fn path_to_root(&self, v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(&p) = self.parent.get(&cur) {
            path.push(p);
            cur = p;
        }
        path
    }

    /// The unique tree path from `a` to `b`, both included.
    pub fn path(&self, a: Vertex, b: Vertex) -> Vec<Vertex> {
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while self.depth[&x] > self.depth[&y] {
            x = self.parent[&x];
            left.push(x);
        }
        while self.depth[&y] > self.depth[&x] {
            y = self.parent[&y];
            right.push(y);
        }
        while x != y {
            x = self.parent[&x];
            y = self.parent[&y];
            left.push(x);
            right.push(y);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }

    pub fn distance(&self, a: Vertex, b: Vertex) -> usize {
        self.path(a, b).len() - 1
    }

    /// Edges `(child, parent)` of the tree.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.parent.iter().map(|(&c, &p)| (c, p))
    }
}

/// BFS tree of `G[within]` rooted at `root`. Each vertex's parent is its
/// smallest-id neighbour in the previous BFS layer.
pub fn bfs_tree(g: &Graph, root: Vertex, within: &[Vertex]) -> Result<BfsTree> {
    if let Some(&v) = within.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange(v));
    }
    let inside = membership(g.n(), within);
    if root >= g.n() || !inside[root] {
        return Err(Error::Disconnected(format!("root {root} is not in the vertex set")));
    }
    let dist = bfs_distances(g, root, &inside);
    let mut parent = BTreeMap::new();
    let mut depth = BTreeMap::new();
    for v in g.vertices().filter(|&v| inside[v]) {
        let dv = dist[v].ok_or_else(|| Error::Disconnected(format!("vertex {v} unreachable from {root}")))?;
        depth.insert(v, dv);
        if dv > 0 {
            let p = g
                .neighbours(v)
                .iter()
                .copied()
                .find(|&w| inside[w] && dist[w] == Some(dv - 1))
                .expect("BFS layer predecessor");
            parent.insert(v, p);
        }
    }
    Ok(BfsTree { root, parent, depth })
}

/// Eccentricity of `v` inside `G[within]`, or `None` if disconnected.
pub fn eccentricity(g: &Graph, v: Vertex, within: &[Vertex]) -> Option<usize> {
    let inside = membership(g.n(), within);
    let dist = bfs_distances(g, v, &inside);
    within.iter().map(|&w| dist[w]).try_fold(0, |acc, d| d.map(|d| acc.max(d)))
}

/// Radius of `G[within]` and its smallest-id centre.
pub fn radius_and_centre(g: &Graph, within: &[Vertex]) -> Result<(usize, Vertex)> {
    if within.is_empty() {
        return Err(Error::Disconnected("empty vertex set".into()));
    }
    if let Some(&v) = within.iter().find(|&&v| v >= g.n()) {
        return Err(Error::VertexOutOfRange(v));
    }
    let mut sorted = within.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut best: Option<(usize, Vertex)> = None;
    for &v in &sorted {
        let ecc = eccentricity(g, v, &sorted).ok_or_else(|| Error::Disconnected("vertex set is disconnected".into()))?;
        if best.is_none_or(|(b, _)| ecc < b) {
            best = Some((ecc, v));
        }
    }
    Ok(best.expect("non-empty set"))
}
