//! Paths `Q_ij` that properly represent a model in a region intersection
//! graph, and junction detection against an orientation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::density::Orientation;
use crate::error::{Error, Result};
use crate::graph::{bfs_tree, BfsTree, Graph, Vertex};
use crate::minor::{validate_model, MinorModel};
use crate::rig::{rig, RegionSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathCase {
    /// `c_i` has no neighbour in `S_j`.
    FarCentre,
    /// `c_i` has a neighbour in `S_j` but not `c_j`.
    NearCentre,
    /// `c_i c_j` is an edge.
    CentresAdjacent,
}

impl PathCase {
    pub fn tag(self) -> u8 {
        match self {
            PathCase::FarCentre => 1,
            PathCase::NearCentre => 2,
            PathCase::CentresAdjacent => 3,
        }
    }
}

/// The path for a pattern edge `ij` with `i` before `j` in the ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    pub i: Vertex,
    pub j: Vertex,
    /// `P_{i,j}`: tree path in `T_i` from `c_i` to `x`.
    pub forward: Vec<Vertex>,
    pub x: Vertex,
    pub y: Vertex,
    /// `P_{j,i}`: tree path in `T_j` from `y` to `c_j`.
    pub backward: Vec<Vertex>,
    pub case: PathCase,
}

impl PathRecord {
    /// `Q_ij` as a vertex sequence from `c_i` to `c_j`.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.forward.iter().chain(&self.backward).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.forward.len() + self.backward.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A subgraph `J'` of the pattern: a vertex set and an edge set on it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubPattern {
    pub vertices: BTreeSet<Vertex>,
    pub edges: BTreeSet<(Vertex, Vertex)>,
}

impl SubPattern {
    pub fn full(j: &Graph) -> Self {
        SubPattern { vertices: j.vertices().collect(), edges: j.edges().collect() }
    }

    /// Subgraph induced by `vertices`.
    pub fn induced(j: &Graph, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let vertices: BTreeSet<Vertex> = vertices.into_iter().collect();
        let edges = j.edges().filter(|(a, b)| vertices.contains(a) && vertices.contains(b)).collect();
        SubPattern { vertices, edges }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_subgraph_of(&self, other: &SubPattern) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Junction {
    /// Pattern edge `ij`, stored with `i < j`.
    pub pattern_edge: (Vertex, Vertex),
    /// Arc `(a, b)` with `b` on `Q_ij`.
    pub arc: (Vertex, Vertex),
    /// The third branch set containing `a`.
    pub block: Vertex,
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub model: MinorModel,
    pub regions: RegionSystem,
    /// `T_i`, rooted at `c_i`.
    pub trees: Vec<BfsTree>,
    pub ordering: Vec<Vertex>,
    /// Position of each pattern vertex in the ordering.
    pub rank: Vec<usize>,
    /// Keyed by the pattern edge with the smaller id first.
    pub paths: BTreeMap<(Vertex, Vertex), PathRecord>,
    /// Branch set index of each vertex of `G`.
    pub owner: Vec<Option<Vertex>>,
}

fn key(i: Vertex, j: Vertex) -> (Vertex, Vertex) {
    (i.min(j), i.max(j))
}

/// A uniformly random ordering of `0..n`.
pub fn shuffled_ordering(n: usize, seed: u64) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Checks that `ordering` is a permutation of `0..n` and returns ranks.
pub fn ranks(ordering: &[Vertex], n: usize) -> Result<Vec<usize>> {
    if ordering.len() != n {
        return Err(Error::Ordering(format!("ordering has {} entries, expected {n}", ordering.len())));
    }
    let mut rank = vec![usize::MAX; n];
    for (pos, &v) in ordering.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return Err(Error::Ordering(format!("entry {v} is out of range or repeated")));
        }
        rank[v] = pos;
    }
    Ok(rank)
}

/// Chooses `xy` and the paths for every pattern edge.
pub fn build_representation(model: &MinorModel, rs: &RegionSystem, ordering: &[Vertex]) -> Result<Representation> {
    validate_model(model)?;
    if model.ambient != rig(rs) {
        return Err(Error::Precondition("model ambient graph is not the region intersection graph".into()));
    }
    let rank = ranks(ordering, model.pattern.n())?;
    let g = &model.ambient;
    let trees: Vec<BfsTree> = model
        .branch
        .iter()
        .zip(&model.roots)
        .map(|(s, &c)| bfs_tree(g, c, s))
        .collect::<Result<_>>()?;
    let mut owner = vec![None; g.n()];
    for (i, s) in model.branch.iter().enumerate() {
        for &v in s {
            owner[v] = Some(i);
        }
    }

    // Tree distance inside A_v between its overlaps with A_a and A_b.
    let region_gap = |v: Vertex, a: Vertex, b: Vertex| {
        rs.tree_distance_between(v, &rs.overlap(v, a), &rs.overlap(v, b)).expect("adjacent regions overlap")
    };

    let mut paths = BTreeMap::new();
    for (u, w) in model.pattern.edges() {
        let (i, j) = if rank[u] < rank[w] { (u, w) } else { (w, u) };
        let (ci, cj) = (model.roots[i], model.roots[j]);
        let (ti, tj) = (&trees[i], &trees[j]);
        let in_j = |v: Vertex| owner[v] == Some(j);
        let (x, y, case) = if g.has_edge(ci, cj) {
            (ci, cj, PathCase::CentresAdjacent)
        } else if g.neighbours(ci).iter().any(|&v| in_j(v)) {
            let y = g
                .neighbours(ci)
                .iter()
                .copied()
                .filter(|&v| in_j(v))
                .min_by_key(|&v| (tj.depth[&v], region_gap(v, tj.parent[&v], ci), v))
                .expect("a neighbour in S_j");
            (ci, y, PathCase::NearCentre)
        } else {
            let pairs: Vec<(Vertex, Vertex)> = model.branch[i]
                .iter()
                .flat_map(|&a| g.neighbours(a).iter().filter(|&&b| in_j(b)).map(move |&b| (a, b)))
                .collect();
            let alpha = pairs.iter().map(|&(a, _)| ti.depth[&a]).min().expect("model edge between branch sets");
            let (x, y) = pairs
                .into_iter()
                .filter(|&(a, _)| ti.depth[&a] == alpha)
                .min_by_key(|&(a, b)| (region_gap(a, ti.parent[&a], b), a, b))
                .expect("a pair at distance alpha");
            (x, y, PathCase::FarCentre)
        };
        let mut forward = ti.path_to_root(x);
        forward.reverse();
        let backward = tj.path_to_root(y);
        paths.insert(key(i, j), PathRecord { i, j, forward, x, y, backward, case });
    }
    Ok(Representation {
        model: model.clone(),
        regions: rs.clone(),
        trees,
        ordering: ordering.to_vec(),
        rank,
        paths,
        owner,
    })
}

impl Representation {
    pub fn path(&self, i: Vertex, j: Vertex) -> Option<&PathRecord> {
        self.paths.get(&key(i, j))
    }

    pub fn centre(&self, i: Vertex) -> Vertex {
        self.model.roots[i]
    }

    /// Largest number of vertices on any `Q_ij`.
    pub fn max_path_len(&self) -> usize {
        self.paths.values().map(PathRecord::len).max().unwrap_or(0)
    }

    /// `S_i` intersected with the union of the paths of edges of `i`.
    pub fn covered_part(&self, i: Vertex) -> Vec<Vertex> {
        let mut part: BTreeSet<Vertex> = BTreeSet::from([self.centre(i)]);
        for rec in self.paths.values() {
            if rec.i == i {
                part.extend(&rec.forward);
            } else if rec.j == i {
                part.extend(&rec.backward);
            }
        }
        part.into_iter().collect()
    }

    /// Debug dump, one `path <i> <j> case <t>: ...` line per pattern edge.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rec in self.paths.values() {
            write!(f, "path {} {} case {}:", rec.i, rec.j, rec.case.tag())?;
            for v in rec.vertices() {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check_orientation(rep: &Representation, orient: &Orientation) -> Result<()> {
    if orient.base() != &rep.model.ambient {
        return Err(Error::Orientation("orientation base differs from the ambient graph".into()));
    }
    Ok(())
}

/// Junctions of `sub`, sorted by pattern edge then arc.
pub fn find_junctions(rep: &Representation, orient: &Orientation, sub: &SubPattern) -> Result<Vec<Junction>> {
    check_orientation(rep, orient)?;
    let mut out = Vec::new();
    for &(i, j) in &sub.edges {
        let rec = rep.path(i, j).ok_or_else(|| Error::Precondition(format!("{i}-{j} is not a pattern edge")))?;
        for b in rec.vertices() {
            for &a in orient.in_neighbours(b) {
                if let Some(l) = rep.owner[a] {
                    if l != i && l != j && sub.vertices.contains(&l) {
                        out.push(Junction { pattern_edge: (i, j), arc: (a, b), block: l });
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `R_ij` against the full pattern.
pub fn compute_r(rep: &Representation, orient: &Orientation, edge: (Vertex, Vertex)) -> Result<BTreeSet<Vertex>> {
    let (i, j) = key(edge.0, edge.1);
    let sub = SubPattern { vertices: rep.model.pattern.vertices().collect(), edges: BTreeSet::from([(i, j)]) };
    Ok(find_junctions(rep, orient, &sub)?.into_iter().map(|jn| jn.block).collect())
}

/// `R_ij` for every pattern edge.
pub fn all_r(rep: &Representation, orient: &Orientation) -> Result<BTreeMap<(Vertex, Vertex), BTreeSet<Vertex>>> {
    let mut out: BTreeMap<_, BTreeSet<Vertex>> = rep.paths.keys().map(|&e| (e, BTreeSet::new())).collect();
    for jn in find_junctions(rep, orient, &SubPattern::full(&rep.model.pattern))? {
        out.get_mut(&jn.pattern_edge).expect("pattern edge").insert(jn.block);
    }
    Ok(out)
}
