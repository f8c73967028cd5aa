//! Instance generators and brute-force oracles shared by the integration
//! tests. The oracles avoid the library's search code on purpose.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rigx::geometry::{Arrangement, Segment};
use rigx::rational::{int, Rational};
use rigx::rig::RegionSystem;
use rigx::Graph;

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random labelled tree: each vertex after the first attaches to an
/// earlier one.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Connected host: a random tree plus extra random edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let mut edges: BTreeSet<(usize, usize)> = random_tree(rng, n).edges().collect();
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// A connected vertex set of size at most `size`, grown from a random
/// vertex.
pub fn random_region(rng: &mut impl Rng, host: &Graph, size: usize) -> Vec<usize> {
    let mut set = vec![rng.gen_range(0..host.n())];
    while set.len() < size {
        let frontier: Vec<usize> = set
            .iter()
            .flat_map(|&v| host.neighbours(v).iter().copied())
            .filter(|w| !set.contains(w))
            .collect();
        match frontier.choose(rng) {
            Some(&w) => set.push(w),
            None => break,
        }
    }
    set.sort_unstable();
    set
}

pub fn random_region_system(rng: &mut impl Rng, host: Graph, regions: usize, max_size: usize) -> RegionSystem {
    let list = (0..regions)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            random_region(rng, &host, size)
        })
        .collect();
    RegionSystem::new(host, list).unwrap()
}

/// Random arrangement without degeneracies, by rejection.
pub fn random_arrangement(rng: &mut impl Rng, count: usize, span: i64) -> Arrangement {
    loop {
        let segments = (0..count)
            .map(|_| {
                let p = (rng.gen_range(0..span), rng.gen_range(0..span));
                let q = (rng.gen_range(0..span), rng.gen_range(0..span));
                Segment::new(p, q)
            })
            .collect();
        if let Ok(arr) = Arrangement::new(segments) {
            return arr;
        }
    }
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

pub fn density(vertices: usize, edges: usize) -> Rational {
    if vertices == 0 {
        int(0)
    } else {
        Rational::new(edges.into(), vertices.into())
    }
}

/// Maximum edge density over all vertex subsets.
pub fn brute_max_density(g: &Graph) -> Rational {
    let n = g.n();
    let mut best = int(0);
    for mask in 1u32..1 << n {
        let m = g.edges().filter(|&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count();
        best = best.max(density(mask.count_ones() as usize, m));
    }
    best
}

/// Least possible maximum indegree over all `2^m` orientations.
pub fn brute_min_max_indegree(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = usize::MAX;
    for mask in 0u64..1 << edges.len() {
        let mut indeg = vec![0usize; g.n()];
        for (b, &(u, v)) in edges.iter().enumerate() {
            indeg[if mask >> b & 1 == 1 { u } else { v }] += 1;
        }
        best = best.min(indeg.into_iter().max().unwrap_or(0));
    }
    best
}

/// BFS distances from `src` inside `within` (a bitmask).
fn distances(g: &Graph, src: usize, within: u64) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbours(x) {
            if within >> y & 1 == 1 && dist[y].is_none() {
                dist[y] = Some(dist[x].unwrap() + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Radius of the subgraph induced by a non-empty mask; `None` if it is
/// disconnected.
pub fn mask_radius(g: &Graph, mask: u64) -> Option<usize> {
    let members: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
    members
        .iter()
        .map(|&c| {
            let d = distances(g, c, mask);
            members.iter().map(|&v| d[v]).collect::<Option<Vec<_>>>().map(|ds| ds.into_iter().max().unwrap())
        })
        .min()
        .flatten()
}

/// `∇_r` by labelling each vertex with a branch-set id or nothing, over all
/// `(n+1)^n` labellings.
pub fn brute_nabla(g: &Graph, r: usize) -> Rational {
    let n = g.n();
    let mut best = int(0);
    let mut label = vec![0usize; n];
    let total = (n + 1).pow(n as u32);
    for code in 0..total {
        let mut c = code;
        for l in label.iter_mut() {
            *l = c % (n + 1);
            c /= n + 1;
        }
        // Canonical labellings only: ids appear in order of first use.
        let mut next = 1;
        let mut canonical = true;
        for &l in &label {
            if l > next {
                canonical = false;
                break;
            }
            if l == next {
                next += 1;
            }
        }
        if !canonical || next == 1 {
            continue;
        }
        let sets = next - 1;
        let masks: Vec<u64> = (1..=sets)
            .map(|id| (0..n).filter(|&v| label[v] == id).fold(0, |m, v| m | 1 << v))
            .collect();
        if masks.iter().any(|&m| mask_radius(g, m).is_none_or(|rad| rad > r)) {
            continue;
        }
        let mut pattern = BTreeSet::new();
        for (u, v) in g.edges() {
            let (a, b) = (label[u], label[v]);
            if a != 0 && b != 0 && a != b {
                pattern.insert((a.min(b), a.max(b)));
            }
        }
        best = best.max(density(sets, pattern.len()));
    }
    best
}

/// Strong reach of `v` under `pos`, including `v`, by explicit path search.
fn brute_sreach(g: &Graph, pos: &[usize], v: usize, r: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::from([v]);
    // Depth-first over simple paths starting at v.
    fn walk(g: &Graph, pos: &[usize], v: usize, at: usize, left: usize, seen: &mut Vec<usize>, out: &mut BTreeSet<usize>) {
        if left == 0 {
            return;
        }
        for &w in g.neighbours(at) {
            if seen.contains(&w) {
                continue;
            }
            if pos[w] < pos[v] {
                out.insert(w);
            } else if pos[w] > pos[v] {
                seen.push(w);
                walk(g, pos, v, w, left - 1, seen, out);
                seen.pop();
            }
        }
    }
    let mut seen = vec![v];
    walk(g, pos, v, v, r, &mut seen, &mut out);
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else { return false };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `scol_r` by trying every ordering.
pub fn brute_scol(g: &Graph, r: usize) -> usize {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    loop {
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let value = (0..n).map(|v| brute_sreach(g, &pos, v, r).len()).max().unwrap_or(0);
        best = best.min(value);
        if !next_permutation(&mut order) {
            return if n == 0 { 0 } else { best };
        }
    }
}

/// Proper, and no two colour classes span a cycle.
pub fn brute_is_acyclic(g: &Graph, colour: &[usize]) -> bool {
    if g.edges().any(|(u, v)| colour[u] == colour[v]) {
        return false;
    }
    let k = colour.iter().max().map_or(0, |c| c + 1);
    for a in 0..k {
        for b in a + 1..k {
            let keep: Vec<usize> = (0..g.n()).filter(|&v| colour[v] == a || colour[v] == b).collect();
            let (h, _) = g.induced(&keep);
            // A forest has |E| = |V| - components.
            let mut seen = vec![false; h.n()];
            let mut components = 0;
            for s in 0..h.n() {
                if seen[s] {
                    continue;
                }
                components += 1;
                let mut stack = vec![s];
                seen[s] = true;
                while let Some(x) = stack.pop() {
                    for &y in h.neighbours(x) {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            if h.m() + components != h.n() {
                return false;
            }
        }
    }
    true
}

/// Acyclic chromatic number over canonical colourings with increasing
/// colour counts.
pub fn brute_acyclic_chromatic(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut colour = vec![0usize; n];
        loop {
            if brute_is_acyclic(g, &colour) {
                return k;
            }
            // Next colouring in base k.
            let mut i = 0;
            while i < n && colour[i] == k - 1 {
                colour[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            colour[i] += 1;
        }
    }
    unreachable!("n colours always suffice")
}
