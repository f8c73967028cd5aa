//! Minor models, shallow-minor densities, and brute-force minor search for
//! small graphs.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::graph::{content_lines, eccentricity, edge_density, parse_err, parse_num, radius_and_centre, Graph, Vertex};
use crate::rational::Rational;

/// Default largest graph accepted by the exhaustive searches.
pub const DEFAULT_NABLA_CAP: usize = 9;

/// A model of `pattern` in `ambient`: branch set `branch[i]` with root
/// `roots[i]` for each pattern vertex `i`. With a depth bound `r`, every
/// root must reach its whole branch set within distance `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub ambient: Graph,
    pub pattern: Graph,
    pub branch: Vec<Vec<Vertex>>,
    pub roots: Vec<Vertex>,
    pub depth_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelViolation {
    #[error("pattern has {pattern} vertices but {branches} branch sets and {roots} roots were given")]
    Arity { pattern: usize, branches: usize, roots: usize },
    #[error("branch set {0} is empty")]
    Empty(usize),
    #[error("branch set {branch} contains vertex {vertex}, out of range")]
    OutOfRange { branch: usize, vertex: Vertex },
    #[error("root {root} of branch set {branch} is not a member")]
    RootOutside { branch: usize, root: Vertex },
    #[error("not disjoint: branch sets {0} and {1} share vertex {2}")]
    NotDisjoint(usize, usize, Vertex),
    #[error("branch set {0} is not connected")]
    Disconnected(usize),
    #[error("pattern edge {0}-{1} has no ambient edge between the branch sets")]
    MissingEdge(usize, usize),
    #[error("radius exceeded: branch set {branch} has eccentricity {eccentricity} from root {root}, bound {bound}")]
    RadiusExceeded { branch: usize, root: Vertex, eccentricity: usize, bound: usize },
}

/// Checks the model conditions in order: shape, non-empty, disjoint,
/// connected, pattern edges realised, radius from the roots.
pub fn validate_model(m: &MinorModel) -> std::result::Result<(), ModelViolation> {
    let k = m.pattern.n();
    if m.branch.len() != k || m.roots.len() != k {
        return Err(ModelViolation::Arity { pattern: k, branches: m.branch.len(), roots: m.roots.len() });
    }
    let n = m.ambient.n();
    let mut owner = vec![usize::MAX; n];
    for (i, set) in m.branch.iter().enumerate() {
        if set.is_empty() {
            return Err(ModelViolation::Empty(i));
        }
        for &v in set {
            if v >= n {
                return Err(ModelViolation::OutOfRange { branch: i, vertex: v });
            }
        }
        if !set.contains(&m.roots[i]) {
            return Err(ModelViolation::RootOutside { branch: i, root: m.roots[i] });
        }
    }
    for (i, set) in m.branch.iter().enumerate() {
        for &v in set {
            if owner[v] != usize::MAX {
                return Err(ModelViolation::NotDisjoint(owner[v], i, v));
            }
            owner[v] = i;
        }
    }
    for (i, set) in m.branch.iter().enumerate() {
        if !m.ambient.is_connected_within(set) {
            return Err(ModelViolation::Disconnected(i));
        }
    }
    for (i, j) in m.pattern.edges() {
        let touches = m.branch[i].iter().any(|&v| m.ambient.neighbours(v).iter().any(|&w| owner[w] == j));
        if !touches {
            return Err(ModelViolation::MissingEdge(i, j));
        }
    }
    if let Some(bound) = m.depth_bound {
        for (i, set) in m.branch.iter().enumerate() {
            let ecc = eccentricity(&m.ambient, m.roots[i], set).expect("connected branch set");
            if ecc > bound {
                return Err(ModelViolation::RadiusExceeded { branch: i, root: m.roots[i], eccentricity: ecc, bound });
            }
        }
    }
    Ok(())
}

/// Edge density of the pattern of a valid model.
pub fn pattern_density(m: &MinorModel) -> Result<Rational> {
    validate_model(m)?;
    Ok(edge_density(&m.pattern))
}

/// Pattern of all pairs of branch sets joined by an ambient edge.
pub fn touching_pattern(g: &Graph, branch: &[Vec<Vertex>]) -> Graph {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, set) in branch.iter().enumerate() {
        for &v in set {
            owner[v] = i;
        }
    }
    let mut edges = BTreeSet::new();
    for (u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != usize::MAX && b != usize::MAX && a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Graph::from_edge_set(branch.len(), edges)
}

/// Model of the full touching pattern of `branch`, each root the
/// smallest-id centre of its branch set.
pub fn model_from_branch_sets(g: &Graph, branch: Vec<Vec<Vertex>>, depth_bound: Option<usize>) -> MinorModel {
    let roots = branch.iter().map(|s| radius_and_centre(g, s).expect("connected branch set").1).collect();
    MinorModel { ambient: g.clone(), pattern: touching_pattern(g, &branch), branch, roots, depth_bound }
}

fn mask_members(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|b| mask >> b & 1 == 1).collect()
}

/// Connected vertex subsets (as bitmasks) whose radius is at most `r`, with
/// their neighbourhood masks.
struct ShallowSets {
    n: usize,
    by_min: Vec<Vec<(u32, u32)>>,
}

impl ShallowSets {
    fn new(g: &Graph, r: usize) -> Self {
        let n = g.n();
        assert!(n <= 24, "bitmask enumeration supports at most 24 vertices");
        let adj: Vec<u32> = g.vertices().map(|v| g.neighbours(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
        let mut by_min = vec![Vec::new(); n];
        for mask in 1u32..(1u32 << n) {
            if !Self::shallow(&adj, mask, r) {
                continue;
            }
            let nbhd = mask_members(mask).iter().fold(0, |m, &v| m | adj[v]) & !mask;
            by_min[mask.trailing_zeros() as usize].push((mask, nbhd));
        }
        ShallowSets { n, by_min }
    }

    /// Connected with some vertex at eccentricity <= r.
    fn shallow(adj: &[u32], mask: u32, r: usize) -> bool {
        let mut connected = false;
        for c in mask_members(mask) {
            let mut seen = 1u32 << c;
            let mut frontier = seen;
            let mut depth = 0;
            while frontier != 0 && depth < r {
                let mut next = 0;
                for v in mask_members(frontier) {
                    next |= adj[v];
                }
                frontier = next & mask & !seen;
                seen |= frontier;
                depth += 1;
            }
            if seen == mask {
                return true;
            }
            if !connected {
                // Reachability without the depth limit decides connectivity once.
                let mut all = 1u32 << c;
                let mut fr = all;
                while fr != 0 {
                    let mut next = 0;
                    for v in mask_members(fr) {
                        next |= adj[v];
                    }
                    fr = next & mask & !all;
                    all |= fr;
                }
                if all != mask {
                    return false;
                }
                connected = true;
            }
        }
        false
    }

    fn all(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.by_min.iter().flatten().copied()
    }
}

/// Best family so far: edge and set counts of the touching pattern and the
/// branch masks in increasing order of their least vertex.
#[derive(Clone, Debug)]
struct Best {
    edges: u64,
    sets: u64,
    key: Vec<u32>,
}

impl Best {
    fn better_than(&self, other: &Option<Best>) -> bool {
        match other {
            None => true,
            Some(o) => {
                let lhs = self.edges * o.sets;
                let rhs = o.edges * self.sets;
                lhs > rhs || (lhs == rhs && self.key < o.key)
            }
        }
    }
}

fn merge(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match b {
        Some(b) if b.better_than(&a) => Some(b),
        _ => a,
    }
}

/// Visits every family of pairwise disjoint sets, each drawn from `sets`,
/// that extends `chosen` with sets whose least vertex is at least `start`.
fn grow(
    sets: &ShallowSets,
    start: usize,
    used: u32,
    chosen: &mut Vec<(u32, u32)>,
    edges: u64,
    visit: &mut dyn FnMut(&[(u32, u32)], u64),
) {
    for v in start..sets.n {
        if used >> v & 1 == 1 {
            continue;
        }
        for &(mask, nbhd) in &sets.by_min[v] {
            if mask & used != 0 {
                continue;
            }
            let added = chosen.iter().filter(|&&(t, _)| nbhd & t != 0).count() as u64;
            chosen.push((mask, nbhd));
            visit(chosen, edges + added);
            grow(sets, v + 1, used | mask, chosen, edges + added, visit);
            chosen.pop();
        }
    }
}

fn best_with_first(sets: &ShallowSets, first: (u32, u32)) -> Option<Best> {
    let mut best: Option<Best> = None;
    let mut chosen = vec![first];
    let mut visit = |family: &[(u32, u32)], edges: u64| {
        let cand = Best { edges, sets: family.len() as u64, key: family.iter().map(|f| f.0).collect() };
        if cand.better_than(&best) {
            best = Some(cand);
        }
    };
    visit(&chosen, 0);
    let start = first.0.trailing_zeros() as usize + 1;
    grow(sets, start, first.0, &mut chosen, 0, &mut visit);
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NablaOptions {
    pub cap: usize,
    pub jobs: usize,
}

impl Default for NablaOptions {
    fn default() -> Self {
        NablaOptions { cap: DEFAULT_NABLA_CAP, jobs: 1 }
    }
}

/// Exact `∇_r(g)` with a witness model, with default options.
pub fn nabla_exact(g: &Graph, r: usize) -> Result<(Rational, MinorModel)> {
    nabla_exact_with(g, r, NablaOptions::default())
}

/// Exact maximum edge density over all `r`-shallow minors of `g`.
///
/// Every family of disjoint connected branch sets of radius at most `r` is
/// visited with its full touching pattern. Among maximal families the one
/// with the lexicographically least mask sequence is returned, so the result
/// does not depend on `jobs`.
pub fn nabla_exact_with(g: &Graph, r: usize, opts: NablaOptions) -> Result<(Rational, MinorModel)> {
    if g.n() > opts.cap {
        return Err(Error::CapExceeded { n: g.n(), cap: opts.cap });
    }
    let sets = ShallowSets::new(g, r);
    let firsts: Vec<(u32, u32)> = sets.all().collect();
    let best = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Parameter(e.to_string()))?;
        pool.install(|| firsts.par_iter().map(|&f| best_with_first(&sets, f)).reduce(|| None, merge))
    } else {
        firsts.iter().map(|&f| best_with_first(&sets, f)).fold(None, merge)
    };
    let (value, branch) = match best {
        None => (Rational::from_integer(BigInt::from(0)), Vec::new()),
        Some(b) => (
            Rational::new(BigInt::from(b.edges), BigInt::from(b.sets)),
            b.key.iter().map(|&m| mask_members(m)).collect(),
        ),
    };
    Ok((value, model_from_branch_sets(g, branch, Some(r))))
}

/// All non-empty families of disjoint connected branch sets of radius at
/// most `r`, in enumeration order.
pub fn shallow_families(g: &Graph, r: usize, cap: usize) -> Result<Vec<Vec<Vec<Vertex>>>> {
    if g.n() > cap {
        return Err(Error::CapExceeded { n: g.n(), cap });
    }
    let sets = ShallowSets::new(g, r);
    let mut out = Vec::new();
    let mut visit = |family: &[(u32, u32)], _: u64| {
        out.push(family.iter().map(|&(m, _)| mask_members(m)).collect());
    };
    grow(&sets, 0, 0, &mut Vec::new(), 0, &mut visit);
    Ok(out)
}

/// Largest edge density of any minor of `h`.
pub fn minor_density(h: &Graph, cap: usize) -> Result<Rational> {
    let r = h.n().saturating_sub(1);
    nabla_exact_with(h, r, NablaOptions { cap, jobs: 1 }).map(|(v, _)| v)
}

/// Brute-force minor test for small hosts: branch sets for `pattern` in
/// `host`, if a model exists.
pub fn find_minor_model(host: &Graph, pattern: &Graph, cap: usize) -> Result<Option<Vec<Vec<Vertex>>>> {
    if host.n() > cap {
        return Err(Error::CapExceeded { n: host.n(), cap });
    }
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return Ok(None);
    }
    let connected: Vec<(u32, u32)> = ShallowSets::new(host, host.n()).all().collect();
    // Place high-degree pattern vertices first.
    let mut order: Vec<Vertex> = pattern.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
    let mut assigned: Vec<Option<(u32, u32)>> = vec![None; pattern.n()];

    fn place(
        idx: usize,
        order: &[Vertex],
        pattern: &Graph,
        connected: &[(u32, u32)],
        used: u32,
        free: u32,
        assigned: &mut Vec<Option<(u32, u32)>>,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        if (free.count_ones() as usize) < order.len() - idx {
            return false;
        }
        let v = order[idx];
        for &(mask, nbhd) in connected {
            if mask & used != 0 {
                continue;
            }
            let ok = pattern.neighbours(v).iter().all(|&w| assigned[w].is_none_or(|(t, _)| nbhd & t != 0));
            if !ok {
                continue;
            }
            assigned[v] = Some((mask, nbhd));
            if place(idx + 1, order, pattern, connected, used | mask, free & !mask, assigned) {
                return true;
            }
            assigned[v] = None;
        }
        false
    }

    let all = if host.n() == 32 { u32::MAX } else { (1u32 << host.n()) - 1 };
    if place(0, &order, pattern, &connected, 0, all, &mut assigned) {
        Ok(Some(assigned.into_iter().map(|a| mask_members(a.expect("placed").0)).collect()))
    } else {
        Ok(None)
    }
}

/// Seeded random `r`-shallow model: repeatedly grows a random BFS ball of
/// random depth at most `r` around a random free vertex, keeping each newly
/// discovered free vertex with probability 1/2. The pattern is the full
/// touching pattern. Returns fewer than `target` branch sets when the graph
/// runs out of free vertices.
pub fn random_shallow_model(g: &Graph, r: usize, target: usize, seed: u64) -> Result<MinorModel> {
    if target == 0 {
        return Err(Error::Parameter("target size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut free = vec![true; g.n()];
    let mut branch = Vec::new();
    let mut roots = Vec::new();
    while branch.len() < target {
        let candidates: Vec<Vertex> = g.vertices().filter(|&v| free[v]).collect();
        let Some(&root) = candidates.choose(&mut rng) else { break };
        let depth = rng.gen_range(0..=r);
        let mut seen = vec![false; g.n()];
        seen[root] = true;
        let mut set = vec![root];
        let mut frontier = vec![root];
        for _ in 0..depth {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in g.neighbours(u) {
                    if free[w] && !seen[w] {
                        seen[w] = true;
                        if rng.gen_bool(0.5) {
                            next.push(w);
                        }
                    }
                }
            }
            set.extend(&next);
            frontier = next;
        }
        set.sort_unstable();
        for &v in &set {
            free[v] = false;
        }
        branch.push(set);
        roots.push(root);
    }
    let pattern = touching_pattern(g, &branch);
    Ok(MinorModel { ambient: g.clone(), pattern, branch, roots, depth_bound: Some(r) })
}

impl MinorModel {
    /// Parses the model text format against a known ambient graph.
    pub fn parse(text: &str, ambient: &Graph) -> Result<MinorModel> {
        let mut lines = content_lines(text);
        let (line, header) = lines.next().ok_or_else(|| parse_err(0, "missing `model` header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "model" {
            return Err(parse_err(line, "expected `model <k> <r>`"));
        }
        let k: usize = parse_num(line, toks[1])?;
        let depth_bound = if toks[2] == "-" { None } else { Some(parse_num(line, toks[2])?) };
        let mut branch: Vec<Option<Vec<Vertex>>> = vec![None; k];
        let mut roots = vec![0; k];
        let mut edges = BTreeSet::new();
        for (line, text) in lines {
            if let Some(rest) = text.strip_prefix("branch ") {
                let (head, body) = rest.split_once(':').ok_or_else(|| parse_err(line, "expected `branch <i> root <c>: ...`"))?;
                let toks: Vec<&str> = head.split_whitespace().collect();
                if toks.len() != 3 || toks[1] != "root" {
                    return Err(parse_err(line, "expected `branch <i> root <c>: ...`"));
                }
                let i: usize = parse_num(line, toks[0])?;
                if i >= k || branch[i].is_some() {
                    return Err(parse_err(line, format!("bad or repeated branch index {i}")));
                }
                roots[i] = parse_num(line, toks[2])?;
                let mut set: Vec<Vertex> = body.split_whitespace().map(|t| parse_num(line, t)).collect::<Result<_>>()?;
                set.sort_unstable();
                branch[i] = Some(set);
            } else if let Some(rest) = text.strip_prefix("pattern-edge ") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(parse_err(line, "expected `pattern-edge <i> <j>`"));
                }
                let i: usize = parse_num(line, toks[0])?;
                let j: usize = parse_num(line, toks[1])?;
                if i == j || i >= k || j >= k || !edges.insert((i.min(j), i.max(j))) {
                    return Err(parse_err(line, format!("bad pattern edge {i} {j}")));
                }
            } else {
                return Err(parse_err(line, "unrecognised model line"));
            }
        }
        let branch = branch
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| parse_err(0, format!("branch {i} missing"))))
            .collect::<Result<_>>()?;
        Ok(MinorModel { ambient: ambient.clone(), pattern: Graph::from_edge_set(k, edges), branch, roots, depth_bound })
    }
}

impl fmt::Display for MinorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.depth_bound {
            Some(r) => writeln!(f, "model {} {}", self.pattern.n(), r)?,
            None => writeln!(f, "model {} -", self.pattern.n())?,
        }
        for (i, set) in self.branch.iter().enumerate() {
            write!(f, "branch {i} root {}:", self.roots[i])?;
            for v in set {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        for (i, j) in self.pattern.edges() {
            writeln!(f, "pattern-edge {i} {j}")?;
        }
        Ok(())
    }
}
