//! Strong colouring numbers and acyclic colourings of small graphs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::bounds::bound_scol;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::minor::{nabla_exact_with, NablaOptions, DEFAULT_NABLA_CAP};
use crate::rational::{fmt as rfmt, int, Rational};

pub const DEFAULT_SCOL_CAP: usize = 8;
pub const DEFAULT_ACYCLIC_CAP: usize = 10;

/// A total order on the vertices, first to last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    order: Vec<Vertex>,
    pos: Vec<usize>,
}

impl VertexOrder {
    pub fn new(order: Vec<Vertex>) -> Result<Self> {
        let pos = crate::representation::ranks(&order, order.len())?;
        Ok(VertexOrder { order, pos })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrder { order: (0..n).collect(), pos: (0..n).collect() }
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }
}

/// Vertices reached from `v` by a path of length at most `r` whose end is
/// not after `v` and whose internal vertices are all after `later`.
fn reach(g: &Graph, v: Vertex, r: usize, later: &dyn Fn(Vertex) -> bool) -> BTreeSet<Vertex> {
    let mut out = BTreeSet::from([v]);
    if r == 0 {
        return out;
    }
    let mut dist = vec![usize::MAX; g.n()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        if dist[x] >= r {
            continue;
        }
        for &w in g.neighbours(x) {
            if w == v {
                continue;
            }
            if later(w) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    queue.push_back(w);
                }
            } else {
                out.insert(w);
            }
        }
    }
    out
}

/// `sreach_r(v)` under `order`, including `v` itself.
pub fn sreach(g: &Graph, order: &VertexOrder, v: Vertex, r: usize) -> BTreeSet<Vertex> {
    let pv = order.position(v);
    reach(g, v, r, &|w| order.position(w) > pv)
}

/// `max_v |sreach_r(v)|`.
pub fn scol_of_order(g: &Graph, order: &VertexOrder, r: usize) -> usize {
    g.vertices().map(|v| sreach(g, order, v, r).len()).max().unwrap_or(0)
}

/// `|sreach_r(v)|` when exactly the vertices of `later` come after `v`.
fn cost(g: &Graph, v: Vertex, later: usize, r: usize) -> usize {
    reach(g, v, r, &|w| later >> w & 1 == 1).len()
}

/// Exact `scol_r` with the lexicographically least optimal order.
///
/// Dynamic programme over suffixes: the cost of a vertex depends only on
/// the set of vertices after it, so `best[U]` is the optimum over orders of
/// the suffix `U`.
pub fn scol_exact(g: &Graph, r: usize) -> Result<(usize, VertexOrder)> {
    scol_exact_with_cap(g, r, DEFAULT_SCOL_CAP)
}

pub fn scol_exact_with_cap(g: &Graph, r: usize, cap: usize) -> Result<(usize, VertexOrder)> {
    let n = g.n();
    if n > cap || n > 24 {
        return Err(Error::CapExceeded { n, cap: cap.min(24) });
    }
    let full: usize = (1 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for set in 1..=full {
        for v in (0..n).filter(|&v| set >> v & 1 == 1) {
            let rest = set & !(1 << v);
            let value = best[rest].max(cost(g, v, rest, r));
            best[set] = best[set].min(value);
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    while set != 0 {
        let v = (0..n)
            .filter(|&v| set >> v & 1 == 1)
            .find(|&v| {
                let rest = set & !(1 << v);
                best[rest].max(cost(g, v, rest, r)) <= best[full]
            })
            .expect("an optimal first vertex");
        order.push(v);
        set &= !(1 << v);
    }
    Ok((best[full], VertexOrder::new(order)?))
}

/// Upper bound on `scol_r`: fill the order from the back, each time placing
/// the vertex whose reach over the already placed suffix is smallest
/// (smallest id on ties).
pub fn scol_greedy(g: &Graph, r: usize) -> (usize, VertexOrder) {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut back = Vec::with_capacity(n);
    let mut value = 0;
    for _ in 0..n {
        let (c, v) = (0..n)
            .filter(|&v| !placed[v])
            .map(|v| (reach(g, v, r, &|w| placed[w]).len(), v))
            .min()
            .expect("an unplaced vertex");
        value = value.max(c);
        placed[v] = true;
        back.push(v);
    }
    back.reverse();
    (value, VertexOrder::new(back).expect("a permutation"))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    /// False if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

/// Proper, and every two colour classes induce a forest.
pub fn is_acyclic_colouring(g: &Graph, colour: &[usize]) -> bool {
    if colour.len() != g.n() || g.edges().any(|(u, v)| colour[u] == colour[v]) {
        return false;
    }
    let k = colour.iter().copied().max().map_or(0, |c| c + 1);
    for a in 0..k {
        for b in a + 1..k {
            let mut uf = UnionFind::new(g.n());
            let pair = |c: usize| c == a || c == b;
            for (u, v) in g.edges() {
                if pair(colour[u]) && pair(colour[v]) && !uf.union(u, v) {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether the coloured prefix `0..=v` has a bichromatic cycle through a
/// class of `v`'s colour.
fn has_bichromatic_cycle(g: &Graph, colour: &[Option<usize>], c: usize) -> bool {
    let used: BTreeSet<usize> = colour.iter().flatten().copied().collect();
    for &other in used.iter().filter(|&&o| o != c) {
        let mut uf = UnionFind::new(g.n());
        for (u, w) in g.edges() {
            let both = [colour[u], colour[w]].iter().all(|x| matches!(x, Some(x) if *x == c || *x == other));
            if both && !uf.union(u, w) {
                return true;
            }
        }
    }
    false
}

fn colour_from(g: &Graph, v: Vertex, k: usize, colour: &mut Vec<Option<usize>>) -> bool {
    if v == g.n() {
        return true;
    }
    // Colours beyond the largest used one are interchangeable; try only one.
    let limit = colour[..v].iter().flatten().max().map_or(0, |&m| m + 1).min(k - 1);
    for c in 0..=limit {
        if g.neighbours(v).iter().any(|&w| colour[w] == Some(c)) {
            continue;
        }
        colour[v] = Some(c);
        if !has_bichromatic_cycle(g, colour, c) && colour_from(g, v + 1, k, colour) {
            return true;
        }
        colour[v] = None;
    }
    false
}

/// Exact acyclic chromatic number with a witness colouring.
pub fn acyclic_chromatic_exact(g: &Graph) -> Result<(usize, Vec<usize>)> {
    acyclic_chromatic_with_cap(g, DEFAULT_ACYCLIC_CAP)
}

pub fn acyclic_chromatic_with_cap(g: &Graph, cap: usize) -> Result<(usize, Vec<usize>)> {
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    if g.n() == 0 {
        return Ok((0, Vec::new()));
    }
    for k in 1..=g.n() {
        let mut colour = vec![None; g.n()];
        if colour_from(g, 0, k, &mut colour) {
            let colour: Vec<usize> = colour.into_iter().map(|c| c.expect("all coloured")).collect();
            assert!(is_acyclic_colouring(g, &colour), "search returned an invalid colouring");
            return Ok((k, colour));
        }
    }
    unreachable!("n colours always suffice")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub r: usize,
    pub chi_a: usize,
    pub scol_2: usize,
    pub scol_r: usize,
    pub nabla_r_minus_1: Rational,
    pub scol_bound: Rational,
    pub eq1_pass: bool,
    pub eq2_pass: bool,
}

/// `χ_a <= scol_2` and `scol_r <= (6r)^r ∇_{r-1}^{3r}`.
pub fn check_inequalities(g: &Graph, r: usize) -> Result<InequalityReport> {
    if r < 1 {
        return Err(Error::Parameter("r must be at least 1".into()));
    }
    let (chi_a, _) = acyclic_chromatic_exact(g)?;
    let (scol_2, _) = scol_exact(g, 2)?;
    let (scol_r, _) = scol_exact(g, r)?;
    let (nabla, _) = nabla_exact_with(g, r - 1, NablaOptions { cap: DEFAULT_NABLA_CAP, jobs: 1 })?;
    let scol_bound = bound_scol(r, &nabla)?;
    Ok(InequalityReport {
        r,
        chi_a,
        scol_2,
        scol_r,
        eq1_pass: chi_a <= scol_2,
        eq2_pass: int(scol_r as i64) <= scol_bound,
        nabla_r_minus_1: nabla,
        scol_bound,
    })
}

impl fmt::Display for InequalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r = {}", self.r)?;
        writeln!(f, "chi_a = {}", self.chi_a)?;
        writeln!(f, "scol_2 = {}", self.scol_2)?;
        writeln!(f, "scol_r = {}", self.scol_r)?;
        writeln!(f, "nabla_{{r-1}} = {}", rfmt(&self.nabla_r_minus_1))?;
        writeln!(f, "scol_bound = {}", rfmt(&self.scol_bound))?;
        writeln!(f, "eq1_pass = {}", self.eq1_pass)?;
        writeln!(f, "eq2_pass = {}", self.eq2_pass)
    }
}
