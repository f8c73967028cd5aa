//! Integer segment arrangements, their string graphs, and the
//! degeneracy-based bearing/cover certificate.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{content_lines, degeneracy_order, parse_err, parse_num, Graph, Vertex};

pub type Point = (i64, i64);

/// A closed straight segment with distinct integer endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Self {
        Segment { p, q }
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        Segment::new((self.p.0 + dx, self.p.1 + dy), (self.q.0 + dx, self.q.1 + dy))
    }
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    let (cx, cy) = (c.0 as i128, c.1 as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

fn on_segment(s: &Segment, c: Point) -> bool {
    orient(s.p, s.q, c) == 0
        && s.p.0.min(s.q.0) <= c.0
        && c.0 <= s.p.0.max(s.q.0)
        && s.p.1.min(s.q.1) <= c.1
        && c.1 <= s.p.1.max(s.q.1)
}

/// True when an endpoint of one segment lies on the other; this covers
/// collinear overlaps and shared endpoints.
fn touches_endpoint(a: &Segment, b: &Segment) -> bool {
    on_segment(b, a.p) || on_segment(b, a.q) || on_segment(a, b.p) || on_segment(a, b.q)
}

/// Whether two closed segments share a point. Configurations where an
/// endpoint lies on the other segment are rejected.
pub fn segments_intersect(a: &Segment, b: &Segment) -> Result<bool> {
    if touches_endpoint(a, b) {
        return Err(Error::DegenerateArrangement(0, 1));
    }
    let d1 = orient(a.p, a.q, b.p).signum();
    let d2 = orient(a.p, a.q, b.q).signum();
    let d3 = orient(b.p, b.q, a.p).signum();
    let d4 = orient(b.p, b.q, a.q).signum();
    Ok(d1 * d2 < 0 && d3 * d4 < 0)
}

/// Segments in general position: no endpoint lies on another segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    segments: Vec<Segment>,
}

impl Arrangement {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        for (i, s) in segments.iter().enumerate() {
            if s.p == s.q {
                return Err(Error::ZeroLengthSegment(i));
            }
        }
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                if touches_endpoint(&segments[i], &segments[j]) {
                    return Err(Error::DegenerateArrangement(i, j));
                }
            }
        }
        Ok(Arrangement { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Arrangement {
        Arrangement { segments: self.segments.iter().map(|s| s.translate(dx, dy)).collect() }
    }

    /// Parses `segments <n>` followed by `n` lines `<x1> <y1> <x2> <y2>`.
    pub fn parse(text: &str) -> Result<Arrangement> {
        let mut lines = content_lines(text);
        let (line, header) = lines.next().ok_or_else(|| parse_err(0, "missing `segments` header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 2 || toks[0] != "segments" {
            return Err(parse_err(line, "expected `segments <n>`"));
        }
        let n: usize = parse_num(line, toks[1])?;
        let mut segments = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, text) = lines.next().ok_or_else(|| parse_err(line, "fewer segment lines than declared"))?;
            let c: Vec<i64> = text.split_whitespace().map(|t| parse_num(line, t)).collect::<Result<_>>()?;
            if c.len() != 4 {
                return Err(parse_err(line, "expected `<x1> <y1> <x2> <y2>`"));
            }
            segments.push(Segment::new((c[0], c[1]), (c[2], c[3])));
        }
        if let Some((line, _)) = lines.next() {
            return Err(parse_err(line, "trailing content after segments"));
        }
        Arrangement::new(segments)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "segments {}", self.segments.len())?;
        for s in &self.segments {
            writeln!(f, "{} {} {} {}", s.p.0, s.p.1, s.q.0, s.q.1)?;
        }
        Ok(())
    }
}

/// One vertex per segment, adjacent iff the segments intersect.
pub fn string_graph(arr: &Arrangement) -> Graph {
    let s = arr.segments();
    let mut edges = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if segments_intersect(&s[i], &s[j]).expect("arrangement invariant") {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_set(s.len(), edges)
}

pub type Edge = (Vertex, Vertex);

/// Bearing and covers derived from a degeneracy ordering.
///
/// Two independent edges may cross only if an endpoint of one is adjacent
/// to an endpoint of the other. Each such pair `{e, f}` is charged to the
/// edge whose endpoints have the smaller maximum position, i.e. `(e, f)` is
/// in the bearing. The cover of `v_i v_j` is `N_i ∪ N_j`, the later
/// neighbours of its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub k: usize,
    pub ordering: Vec<Vertex>,
    pub covers: BTreeMap<Edge, Vec<Vertex>>,
    /// Ordered pairs `(e, f)`: `f` is charged to `e` and covered by `cover(e)`.
    pub bearing: Vec<(Edge, Edge)>,
    /// Pairs where `cover(e)` for the max-position rule missed `f`; these are
    /// charged the other way, which always succeeds.
    pub reversed: Vec<(Edge, Edge)>,
    pub bound: usize,
}

impl CoverCertificate {
    pub fn max_cover(&self) -> usize {
        self.covers.values().map(Vec::len).max().unwrap_or(0)
    }

    /// Recheck every charged pair against the stored covers.
    pub fn verify(&self) -> bool {
        let covered = |e: &Edge, f: &Edge| {
            let c = &self.covers[e];
            c.binary_search(&f.0).is_ok() || c.binary_search(&f.1).is_ok()
        };
        self.bearing.iter().all(|(e, f)| covered(e, f))
            && self.covers.values().all(|c| c.len() <= self.bound)
    }
}

/// Every pair of independent edges that could cross when each edge is drawn
/// within the union of its endpoints' neighbourhoods.
pub fn potential_crossings(g: &Graph) -> Vec<(Edge, Edge)> {
    let edges: Vec<Edge> = g.edges().collect();
    let mut out = Vec::new();
    for (a, &e) in edges.iter().enumerate() {
        for &f in &edges[a + 1..] {
            let independent = e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1;
            if independent && [e.0, e.1].iter().any(|&x| g.has_edge(x, f.0) || g.has_edge(x, f.1)) {
                out.push((e, f));
            }
        }
    }
    out
}

/// Certifies the `2k` cover bound for a degeneracy ordering of `g`.
pub fn potential_bearing(g: &Graph, order: &[Vertex]) -> Result<CoverCertificate> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Ordering("not a permutation of the vertices".into()));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(Error::Ordering("not a permutation of the vertices".into()));
    }
    let (k, _) = degeneracy_order(g);
    let forward: Vec<Vec<Vertex>> = g
        .vertices()
        .map(|v| g.neighbours(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect())
        .collect();
    if let Some(v) = g.vertices().find(|&v| forward[v].len() > k) {
        return Err(Error::Ordering(format!(
            "vertex {v} has {} later neighbours, above the degeneracy {k}",
            forward[v].len()
        )));
    }
    let mut covers = BTreeMap::new();
    for (u, v) in g.edges() {
        let mut c: Vec<Vertex> = forward[u].iter().chain(&forward[v]).copied().collect();
        c.sort_unstable();
        c.dedup();
        covers.insert((u, v), c);
    }
    let covered = |e: &Edge, f: &Edge| {
        let c: &Vec<Vertex> = &covers[e];
        c.binary_search(&f.0).is_ok() || c.binary_search(&f.1).is_ok()
    };
    let top = |e: &Edge| pos[e.0].max(pos[e.1]);
    let mut bearing = Vec::new();
    let mut reversed = Vec::new();
    for (e, f) in potential_crossings(g) {
        let (lo, hi) = if top(&e) < top(&f) { (e, f) } else { (f, e) };
        if covered(&lo, &hi) {
            bearing.push((lo, hi));
        } else if covered(&hi, &lo) {
            reversed.push((lo, hi));
            bearing.push((hi, lo));
        } else {
            return Err(Error::Precondition(format!(
                "pair {lo:?}, {hi:?} is covered in neither direction"
            )));
        }
    }
    Ok(CoverCertificate { k, ordering: order.to_vec(), covers, bearing, reversed, bound: 2 * k })
}
