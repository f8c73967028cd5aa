//! Region systems over a host graph and the region intersection graphs
//! they induce.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::error::Result;
use crate::geometry::{segments_intersect, Arrangement, Segment};
use crate::graph::{bfs_tree, content_lines, parse_err, parse_graph_block, parse_num, BfsTree, Graph, Vertex};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RegionViolation {
    #[error("empty region {0}")]
    Empty(usize),
    #[error("region {region} uses host vertex {vertex}, out of range")]
    OutOfRange { region: usize, vertex: Vertex },
    #[error("disconnected region {0}")]
    Disconnected(usize),
    #[error("region {0} lists a host vertex twice")]
    Repeated(usize),
    #[error("stored tree of region {0} is not its canonical BFS spanning tree")]
    BadTree(usize),
}

/// Checks that every region is non-empty, in range, and connected in the host.
pub fn validate_regions(host: &Graph, regions: &[Vec<Vertex>]) -> std::result::Result<(), RegionViolation> {
    for (i, region) in regions.iter().enumerate() {
        if region.is_empty() {
            return Err(RegionViolation::Empty(i));
        }
        if let Some(&v) = region.iter().find(|&&v| v >= host.n()) {
            return Err(RegionViolation::OutOfRange { region: i, vertex: v });
        }
        let distinct: BTreeSet<_> = region.iter().collect();
        if distinct.len() != region.len() {
            return Err(RegionViolation::Repeated(i));
        }
        if !host.is_connected_within(region) {
            return Err(RegionViolation::Disconnected(i));
        }
    }
    Ok(())
}

/// A host graph `H` with one connected region `A_v` per vertex of the
/// intersection graph, each stored with its BFS spanning tree rooted at the
/// region's smallest host vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSystem {
    host: Graph,
    regions: Vec<Vec<Vertex>>,
    trees: Vec<BfsTree>,
}

impl RegionSystem {
    pub fn new(host: Graph, regions: Vec<Vec<Vertex>>) -> Result<Self> {
        let regions: Vec<Vec<Vertex>> = regions
            .into_iter()
            .map(|mut r| {
                r.sort_unstable();
                r
            })
            .collect();
        validate_regions(&host, &regions)?;
        let trees = regions
            .iter()
            .map(|r| bfs_tree(&host, r[0], r).expect("validated region"))
            .collect();
        Ok(RegionSystem { host, regions, trees })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// `V(A_v)`, sorted.
    pub fn region(&self, v: Vertex) -> &[Vertex] {
        &self.regions[v]
    }

    pub fn regions(&self) -> &[Vec<Vertex>] {
        &self.regions
    }

    pub fn tree(&self, v: Vertex) -> &BfsTree {
        &self.trees[v]
    }

    pub fn contains(&self, v: Vertex, h: Vertex) -> bool {
        self.regions[v].binary_search(&h).is_ok()
    }

    /// `V(A_u) ∩ V(A_v)`, sorted.
    pub fn overlap(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        self.regions[u].iter().copied().filter(|&h| self.contains(v, h)).collect()
    }

    /// Re-checks all invariants, including the stored trees.
    pub fn validate(&self) -> std::result::Result<(), RegionViolation> {
        validate_regions(&self.host, &self.regions)?;
        for (i, r) in self.regions.iter().enumerate() {
            let t = &self.trees[i];
            let spans = t.vertices().eq(r.iter().copied());
            let inside = t.edges().all(|(c, p)| self.host.has_edge(c, p));
            if !spans || !inside || t.parent.len() + 1 != r.len() || *t != bfs_tree(&self.host, r[0], r).unwrap() {
                return Err(RegionViolation::BadTree(i));
            }
        }
        Ok(())
    }

    /// Drops region `v`; the remaining regions keep their relative order.
    pub fn without_region(&self, v: Vertex) -> RegionSystem {
        let regions = self.regions.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, r)| r.clone()).collect();
        RegionSystem::new(self.host.clone(), regions).expect("sub-collection of a valid system")
    }

    /// Shortest path inside the stored tree of region `v` between the
    /// vertex sets `from` and `to` (both subsets of `A_v`). The closest pair
    /// is chosen, ties broken by smallest `from` vertex, then smallest `to`
    /// vertex. Returns the path from its `from` end to its `to` end.
    pub fn tree_path_between(&self, v: Vertex, from: &[Vertex], to: &[Vertex]) -> Option<Vec<Vertex>> {
        let tree = &self.trees[v];
        let mut best: Option<(usize, Vertex, Vertex)> = None;
        for &a in from {
            for &b in to {
                let d = tree.distance(a, b);
                if best.is_none_or(|(bd, ba, bb)| (d, a, b) < (bd, ba, bb)) {
                    best = Some((d, a, b));
                }
            }
        }
        best.map(|(_, a, b)| tree.path(a, b))
    }

    /// Tree distance in `A_v` between two vertex subsets, if both are non-empty.
    pub fn tree_distance_between(&self, v: Vertex, from: &[Vertex], to: &[Vertex]) -> Option<usize> {
        self.tree_path_between(v, from, to).map(|p| p.len() - 1)
    }

    /// Parses a host `graph` block followed by `region <v>: <h1> <h2> ...`
    /// lines, one per region with `v` running over `0..count`.
    pub fn parse(text: &str) -> Result<RegionSystem> {
        let mut lines = content_lines(text);
        let host = parse_graph_block(&mut lines)?;
        let mut regions: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for (line, text) in lines {
            let (head, body) = text.split_once(':').ok_or_else(|| parse_err(line, "expected `region <v>: ...`"))?;
            let toks: Vec<&str> = head.split_whitespace().collect();
            if toks.len() != 2 || toks[0] != "region" {
                return Err(parse_err(line, "expected `region <v>: ...`"));
            }
            let v: usize = parse_num(line, toks[1])?;
            let members: Vec<Vertex> = body.split_whitespace().map(|t| parse_num(line, t)).collect::<Result<_>>()?;
            if regions.insert(v, members).is_some() {
                return Err(parse_err(line, format!("region {v} listed twice")));
            }
        }
        if regions.keys().copied().ne(0..regions.len()) {
            return Err(parse_err(0, "region ids must be exactly 0..count"));
        }
        RegionSystem::new(host, regions.into_values().collect())
    }
}

impl fmt::Display for RegionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.host)?;
        for (v, r) in self.regions.iter().enumerate() {
            write!(f, "region {v}:")?;
            for h in r {
                write!(f, " {h}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The region intersection graph: `uv` is an edge iff `A_u` and `A_v` share
/// a host vertex.
pub fn rig(rs: &RegionSystem) -> Graph {
    let mut at: Vec<Vec<Vertex>> = vec![Vec::new(); rs.host().n()];
    for (v, r) in rs.regions().iter().enumerate() {
        for &h in r {
            at[h].push(v);
        }
    }
    let mut edges = BTreeSet::new();
    for list in &at {
        for (i, &u) in list.iter().enumerate() {
            for &v in &list[i + 1..] {
                edges.insert((u, v));
            }
        }
    }
    Graph::from_edge_set(rs.len(), edges)
}

type RationalPoint = (Rational, Rational);

fn cross(a: (i64, i64), b: (i64, i64)) -> BigInt {
    BigInt::from(a.0) * BigInt::from(b.1) - BigInt::from(a.1) * BigInt::from(b.0)
}

/// Parameter along `a` (0 at `a.p`, 1 at `a.q`) of its crossing with `b`.
fn crossing_parameter(a: &Segment, b: &Segment) -> Rational {
    let r = (a.q.0 - a.p.0, a.q.1 - a.p.1);
    let s = (b.q.0 - b.p.0, b.q.1 - b.p.1);
    let w = (b.p.0 - a.p.0, b.p.1 - a.p.1);
    Rational::new(cross(w, s), cross(r, s))
}

fn point_at(a: &Segment, t: &Rational) -> RationalPoint {
    let lerp = |p: i64, q: i64| Rational::from_integer(BigInt::from(p)) + t * Rational::from_integer(BigInt::from(q - p));
    (lerp(a.p.0, a.q.0), lerp(a.p.1, a.q.1))
}

/// Planar host for a segment arrangement: one host vertex per intersection
/// point, host edges between consecutive points along each segment, and
/// `A_v` the points on segment `v`. A segment without intersections gets a
/// private host vertex. Host ids follow (first segment, position along it).
pub fn arrangement_to_rig(arr: &Arrangement) -> RegionSystem {
    let segs = arr.segments();
    // Per segment: (parameter, point) of every crossing.
    let mut along: Vec<Vec<(Rational, RationalPoint)>> = vec![Vec::new(); segs.len()];
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if segments_intersect(&segs[i], &segs[j]).expect("arrangement invariant") {
                let ti = crossing_parameter(&segs[i], &segs[j]);
                let point = point_at(&segs[i], &ti);
                let tj = crossing_parameter(&segs[j], &segs[i]);
                along[i].push((ti, point.clone()));
                along[j].push((tj, point));
            }
        }
    }
    let mut ids: BTreeMap<RationalPoint, Vertex> = BTreeMap::new();
    let mut next = 0;
    let mut regions = Vec::with_capacity(segs.len());
    let mut edges = BTreeSet::new();
    for pts in &mut along {
        pts.sort();
        pts.dedup_by(|a, b| a.1 == b.1);
        if pts.is_empty() {
            regions.push(vec![next]);
            next += 1;
            continue;
        }
        let mut region = Vec::with_capacity(pts.len());
        for (_, p) in pts.iter() {
            let id = *ids.entry(p.clone()).or_insert_with(|| {
                next += 1;
                next - 1
            });
            if let Some(&prev) = region.last() {
                edges.insert((prev, id));
            }
            region.push(id);
        }
        regions.push(region);
    }
    let host = Graph::from_edge_set(next, edges);
    RegionSystem::new(host, regions).expect("segment regions are paths in the host")
}
