//! Maximum density by parametric min-cut, and bounded-indegree orientations
//! by max-flow.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;

/// True iff some non-empty `S` has `|E(G[S])| / |S| > num / den`.
///
/// Max-closure network: source -> edge node (capacity `den`), edge node ->
/// both endpoints (unbounded), vertex -> sink (capacity `num`). The best
/// closure value `den * m(S) - num * |S|` equals `den * m - mincut`.
fn denser_than(g: &Graph, num: i64, den: i64) -> bool {
    let n = g.n();
    let m = g.m();
    let source = n + m;
    let sink = source + 1;
    let mut net = FlowNetwork::new(n + m + 2);
    let inf = den * (m as i64 + 1) + num * (n as i64 + 1) + 1;
    for (e, (u, v)) in g.edges().enumerate() {
        net.add_arc(source, n + e, den);
        net.add_arc(n + e, u, inf);
        net.add_arc(n + e, v, inf);
    }
    for v in g.vertices() {
        net.add_arc(v, sink, num);
    }
    let cut = net.max_flow(source, sink);
    den * m as i64 - cut > 0
}

/// Exact maximum edge density over non-empty subgraphs.
///
/// The answer is one of the fractions `p/q` with `0 <= p <= m` and
/// `1 <= q <= n`; a binary search over those candidates finds the least one
/// that no subgraph exceeds.
pub fn max_density(g: &Graph) -> Result<Rational> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let m = g.m();
    let mut candidates: Vec<(i64, i64)> = Vec::new();
    for q in 1..=n as i64 {
        for p in 0..=m as i64 {
            if num_integer::gcd(p, q) == 1 {
                candidates.push((p, q));
            }
        }
    }
    candidates.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    // First candidate that is not strictly exceeded.
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let (p, q) = candidates[mid];
        if denser_than(g, p, q) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let (p, q) = candidates[lo];
    Ok(Rational::new(BigInt::from(p), BigInt::from(q)))
}

/// An orientation of every edge of a base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    base: Graph,
    /// `(tail, head)` per edge, in the base graph's edge order.
    arcs: Vec<(Vertex, Vertex)>,
    in_nbrs: Vec<Vec<Vertex>>,
}

impl Orientation {
    /// Checks that `arcs` orients each edge of `base` exactly once.
    pub fn new(base: Graph, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut by_edge: std::collections::BTreeMap<(Vertex, Vertex), (Vertex, Vertex)> = Default::default();
        for (a, b) in arcs {
            if !base.has_edge(a, b) {
                return Err(Error::Orientation(format!("arc ({a}, {b}) is not an edge")));
            }
            if by_edge.insert((a.min(b), a.max(b)), (a, b)).is_some() {
                return Err(Error::Orientation(format!("edge {{{a}, {b}}} oriented twice")));
            }
        }
        if by_edge.len() != base.m() {
            return Err(Error::Orientation("some edge has no direction".into()));
        }
        let arcs: Vec<_> = base.edges().map(|e| by_edge[&e]).collect();
        let mut in_nbrs = vec![Vec::new(); base.n()];
        for &(a, b) in &arcs {
            in_nbrs[b].push(a);
        }
        for list in &mut in_nbrs {
            list.sort_unstable();
        }
        Ok(Orientation { base, arcs, in_nbrs })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    /// `N^-(v)`, sorted.
    pub fn in_neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.in_nbrs[v]
    }

    pub fn indegree(&self, v: Vertex) -> usize {
        self.in_nbrs[v].len()
    }

    pub fn max_indegree(&self) -> usize {
        self.in_nbrs.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_arc(&self, a: Vertex, b: Vertex) -> bool {
        self.in_nbrs.get(b).is_some_and(|l| l.binary_search(&a).is_ok())
    }
}

/// An orientation with every indegree at most `d`, or `None` when the
/// maximum density exceeds `d`.
///
/// Flow network: source -> edge node (1), edge node -> each endpoint (1),
/// vertex -> sink (`d`). The edge's unit of flow enters its head.
pub fn hakimi_orient(g: &Graph, d: usize) -> Option<Orientation> {
    let n = g.n();
    let m = g.m();
    let source = n + m;
    let sink = source + 1;
    let mut net = FlowNetwork::new(n + m + 2);
    let mut choice = Vec::with_capacity(m);
    for (e, (u, v)) in g.edges().enumerate() {
        net.add_arc(source, n + e, 1);
        let to_u = net.add_arc(n + e, u, 1);
        let to_v = net.add_arc(n + e, v, 1);
        choice.push((u, v, to_u, to_v));
    }
    for v in g.vertices() {
        net.add_arc(v, sink, d as i64);
    }
    if net.max_flow(source, sink) != m as i64 {
        return None;
    }
    let arcs = choice.into_iter().map(|(u, v, to_u, _to_v)| if net.flow(to_u) == 1 { (v, u) } else { (u, v) });
    Some(Orientation::new(g.clone(), arcs).expect("flow routes each edge once"))
}
