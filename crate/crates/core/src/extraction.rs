//! Branch sets in the host graph for the degree-≥2 core of a junction-free
//! pattern.
//!
//! The construction runs in two passes over the core vertices in the
//! representation's order. First each `i` gets `B_i^<`, the region of its
//! centre plus one forward set `B_ij` per later neighbour `j`. Then, for
//! `j = 2, 3, ...`, each earlier neighbour `i` contributes a backward set
//! `B_ji` that reaches from `c_j` towards `B_i`, and `B_j` is the union.
//! Every disjointness and adjacency fact the construction relies on is
//! re-checked on the instance; a failed check names the fact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::density::Orientation;
use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::minor::{validate_model, MinorModel};
use crate::representation::{find_junctions, Junction, PathCase, Representation, SubPattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Core centres pairwise non-adjacent in `G`.
    CentresIndependent,
    /// `B_ij` avoids the regions of `S_j` (far-centre case).
    ForwardSeparated,
    /// `B_ij` contains `A_{c_i}`, is connected, and touches `A_y`.
    ForwardShape,
    /// The sets `B_i^<` are connected and pairwise disjoint.
    LessDisjoint,
    /// `B_ji` is disjoint from `B_i` and joined to it by a host edge.
    BackwardSeparated,
    /// `B_ji` contains `A_{c_j}` and is connected.
    BackwardShape,
    /// `B_j` is disjoint from every earlier `B_i`.
    EarlierDisjoint,
    /// `B_j` is disjoint from every later `B_k^<`.
    LaterDisjoint,
    /// The finished sets form a model of the core.
    FinalModel,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Check::CentresIndependent => "centres independent",
            Check::ForwardSeparated => "forward set separated from S_j",
            Check::ForwardShape => "forward set shape",
            Check::LessDisjoint => "B^< sets disjoint",
            Check::BackwardSeparated => "backward set separated from and adjacent to B_i",
            Check::BackwardShape => "backward set shape",
            Check::EarlierDisjoint => "B_j disjoint from earlier sets",
            Check::LaterDisjoint => "B_j disjoint from later B^< sets",
            Check::FinalModel => "final model",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtractionFailure {
    #[error("pattern has {count} junction(s), first {first:?}")]
    NotJunctionFree { count: usize, first: Junction },
    #[error("check `{check}` failed: {detail}")]
    Violated { check: Check, detail: String },
}

fn violated(check: Check, detail: impl Into<String>) -> ExtractionFailure {
    ExtractionFailure::Violated { check, detail: detail.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForwardCase {
    FarCentre,
    NearCentre,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackwardCase {
    /// The whole path `P_ji` misses `B_i`.
    Clear,
    /// The path meets `B_i`; cut at the first region that does.
    Cut,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoreLedger {
    pub less: BTreeSet<Vertex>,
    pub greater: BTreeSet<Vertex>,
    /// `B_ij` for later neighbours `j`, with the least host edge into `A_y`
    /// in the far-centre case.
    pub forward: BTreeMap<Vertex, (BTreeSet<Vertex>, ForwardCase, Option<(Vertex, Vertex)>)>,
    /// `B_ji` for earlier neighbours `i`, with the least host edge into `B_i`.
    pub backward: BTreeMap<Vertex, (BTreeSet<Vertex>, BackwardCase, (Vertex, Vertex))>,
}

/// Branch sets of the core `J*` in the host, indexed by core position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostModel {
    pub host: Graph,
    pub core: Graph,
    /// Pattern vertex of each core position, in representation order.
    pub core_vertices: Vec<Vertex>,
    pub sets: Vec<BTreeSet<Vertex>>,
    pub ledger: Vec<CoreLedger>,
}

impl HostModel {
    /// As a minor model without a radius bound; roots are the least members.
    pub fn to_model(&self) -> MinorModel {
        let branch: Vec<Vec<Vertex>> = self.sets.iter().map(|s| s.iter().copied().collect()).collect();
        MinorModel {
            ambient: self.host.clone(),
            pattern: self.core.clone(),
            roots: branch.iter().map(|s| s[0]).collect(),
            branch,
            depth_bound: None,
        }
    }
}

impl fmt::Display for HostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_model())
    }
}

/// `J*` for a pattern graph, with the pattern id of each core vertex.
pub fn degree2_core(j: &Graph) -> (Graph, Vec<Vertex>) {
    let keep: Vec<Vertex> = j.vertices().filter(|&v| j.degree(v) >= 2).collect();
    j.induced(&keep)
}

fn connected(host: &Graph, set: &BTreeSet<Vertex>) -> bool {
    let v: Vec<Vertex> = set.iter().copied().collect();
    !v.is_empty() && host.is_connected_within(&v)
}

/// Least host edge `(a, b)` with `a` in `from` and `b` in `to`.
fn least_edge(host: &Graph, from: &BTreeSet<Vertex>, to: &BTreeSet<Vertex>) -> Option<(Vertex, Vertex)> {
    from.iter().find_map(|&a| host.neighbours(a).iter().find(|b| to.contains(b)).map(|&b| (a, b)))
}

fn show(set: &BTreeSet<Vertex>) -> String {
    format!("{:?}", set.iter().collect::<Vec<_>>())
}

/// Extraction for the full pattern.
pub fn extract_host_model(rep: &Representation, orient: &Orientation) -> Result<HostModel> {
    extract_host_model_for(rep, orient, &SubPattern::full(&rep.model.pattern))
}

/// Extraction for a subgraph `J'` of the pattern, represented by the
/// restriction of `rep`.
pub fn extract_host_model_for(rep: &Representation, orient: &Orientation, sub: &SubPattern) -> Result<HostModel> {
    let junctions = find_junctions(rep, orient, sub)?;
    if let Some(&first) = junctions.first() {
        return Err(ExtractionFailure::NotJunctionFree { count: junctions.len(), first }.into());
    }
    Ok(Extractor::new(rep, sub).run()?)
}

struct Extractor<'a> {
    rep: &'a Representation,
    host: &'a Graph,
    /// Core vertices (pattern ids) in order.
    order: Vec<Vertex>,
    pos: BTreeMap<Vertex, usize>,
    /// Core edges as position pairs `(a, b)` with `a < b`.
    edges: BTreeSet<(usize, usize)>,
}

impl<'a> Extractor<'a> {
    fn new(rep: &'a Representation, sub: &SubPattern) -> Self {
        let mut order: Vec<Vertex> = sub.vertices.iter().copied().filter(|&v| sub.degree(v) >= 2).collect();
        order.sort_by_key(|&v| rep.rank[v]);
        let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let edges = sub
            .edges
            .iter()
            .filter_map(|&(u, w)| Some((*pos.get(&u)?, *pos.get(&w)?)))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Extractor { rep, host: rep.regions.host(), order, pos, edges }
    }

    fn region(&self, t: Vertex) -> BTreeSet<Vertex> {
        self.rep.regions.region(t).iter().copied().collect()
    }

    fn union_of(&self, ts: &[Vertex]) -> BTreeSet<Vertex> {
        ts.iter().flat_map(|&t| self.rep.regions.region(t).iter().copied()).collect()
    }

    /// The region-tree path in `A_v` from `A_v ∩ A_u` to `target`, without
    /// its final vertex.
    fn cut_path(&self, v: Vertex, u: Vertex, target: &BTreeSet<Vertex>) -> Option<Vec<Vertex>> {
        let from = self.rep.regions.overlap(v, u);
        let to: Vec<Vertex> = self.rep.regions.region(v).iter().copied().filter(|h| target.contains(h)).collect();
        let mut path = self.rep.regions.tree_path_between(v, &from, &to)?;
        path.pop();
        Some(path)
    }

    fn run(&self) -> std::result::Result<HostModel, ExtractionFailure> {
        let rep = self.rep;
        let k = self.order.len();
        let core = Graph::from_edge_set(k, self.edges.iter().copied());
        if k == 0 {
            return Ok(HostModel { host: self.host.clone(), core, core_vertices: Vec::new(), sets: Vec::new(), ledger: Vec::new() });
        }
        let g = &rep.model.ambient;
        let centre = |p: usize| rep.centre(self.order[p]);

        for a in 0..k {
            for b in a + 1..k {
                if g.has_edge(centre(a), centre(b)) {
                    return Err(violated(Check::CentresIndependent, format!("centres {} and {} are adjacent", centre(a), centre(b))));
                }
            }
        }

        let mut ledger = vec![CoreLedger::default(); k];
        for &(a, b) in &self.edges {
            let (i, j) = (self.order[a], self.order[b]);
            let rec = rep.path(i, j).expect("core edge is a pattern edge");
            debug_assert_eq!((rec.i, rec.j), (i, j));
            let a_ci = self.region(centre(a));
            let (set, case, red) = match rec.case {
                PathCase::CentresAdjacent => {
                    return Err(violated(Check::CentresIndependent, format!("path {i}-{j} joins adjacent centres")));
                }
                PathCase::NearCentre => (a_ci.clone(), ForwardCase::NearCentre, None),
                PathCase::FarCentre => {
                    let before_x = &rec.forward[..rec.forward.len() - 1];
                    let x_up = *before_x.last().expect("far-centre path has x below c_i");
                    let mut set = self.union_of(before_x);
                    let a_y = self.region(rec.y);
                    let tail = self.cut_path(rec.x, x_up, &a_y).expect("A_x meets A_x↑ and A_y");
                    set.extend(tail);
                    let s_j_regions = self.union_of(&rep.model.branch[j]);
                    if let Some(h) = set.intersection(&s_j_regions).next() {
                        return Err(violated(Check::ForwardSeparated, format!("B_{i}{j} contains {h}, inside a region of S_{j}")));
                    }
                    let red = least_edge(self.host, &set, &a_y)
                        .ok_or_else(|| violated(Check::ForwardShape, format!("no host edge from B_{i}{j} into A_{}", rec.y)))?;
                    (set, ForwardCase::FarCentre, Some(red))
                }
            };
            if !a_ci.is_subset(&set) || !connected(self.host, &set) {
                return Err(violated(Check::ForwardShape, format!("B_{i}{j} = {} is not connected around A_c{i}", show(&set))));
            }
            ledger[a].forward.insert(j, (set, case, red));
        }

        for (a, entry) in ledger.iter_mut().enumerate() {
            let mut less = self.region(centre(a));
            for (set, _, _) in entry.forward.values() {
                less.extend(set);
            }
            if !connected(self.host, &less) {
                return Err(violated(Check::LessDisjoint, format!("B^<_{} is disconnected", self.order[a])));
            }
            entry.less = less;
        }
        for a in 0..k {
            for b in a + 1..k {
                if let Some(h) = ledger[a].less.intersection(&ledger[b].less).next() {
                    return Err(violated(
                        Check::LessDisjoint,
                        format!("B^<_{} and B^<_{} share {h}", self.order[a], self.order[b]),
                    ));
                }
            }
        }

        let mut sets: Vec<BTreeSet<Vertex>> = Vec::with_capacity(k);
        sets.push(ledger[0].less.clone());
        for b in 1..k {
            let j = self.order[b];
            let a_cj = self.region(centre(b));
            let earlier: Vec<usize> = self.edges.iter().filter(|&&(_, bb)| bb == b).map(|&(a, _)| a).collect();
            for a in earlier {
                let i = self.order[a];
                let b_i = &sets[a];
                let rec = rep.path(i, j).expect("core edge is a pattern edge");
                // P_ji walked from c_j towards y.
                let walk: Vec<Vertex> = rec.backward.iter().rev().copied().collect();
                let first_hit = walk.iter().position(|&t| rep.regions.region(t).iter().any(|h| b_i.contains(h)));
                let (set, case) = match first_hit {
                    None => (self.union_of(&walk), BackwardCase::Clear),
                    Some(0) => {
                        return Err(violated(Check::BackwardShape, format!("A_c{j} meets B_{i}")));
                    }
                    Some(idx) => {
                        let (z, z_up) = (walk[idx], walk[idx - 1]);
                        let mut set = self.union_of(&walk[..idx]);
                        let tail = self.cut_path(z, z_up, b_i).expect("A_z meets A_z↑ and B_i");
                        set.extend(tail);
                        (set, BackwardCase::Cut)
                    }
                };
                if let Some(h) = set.intersection(b_i).next() {
                    return Err(violated(Check::BackwardSeparated, format!("B_{j}{i} meets B_{i} at {h}")));
                }
                let link = least_edge(self.host, &set, b_i)
                    .ok_or_else(|| violated(Check::BackwardSeparated, format!("no host edge between B_{j}{i} and B_{i}")))?;
                if !a_cj.is_subset(&set) || !connected(self.host, &set) {
                    return Err(violated(Check::BackwardShape, format!("B_{j}{i} = {} is not connected around A_c{j}", show(&set))));
                }
                ledger[b].backward.insert(i, (set, case, link));
            }
            let greater: BTreeSet<Vertex> = ledger[b].backward.values().flat_map(|(s, _, _)| s.iter().copied()).collect();
            let b_j: BTreeSet<Vertex> = ledger[b].less.union(&greater).copied().collect();
            ledger[b].greater = greater;
            for (a, b_i) in sets.iter().enumerate() {
                if let Some(h) = b_j.intersection(b_i).next() {
                    return Err(violated(Check::EarlierDisjoint, format!("B_{j} meets B_{} at {h}", self.order[a])));
                }
            }
            for (c, later) in ledger.iter().enumerate().skip(b + 1) {
                if let Some(h) = b_j.intersection(&later.less).next() {
                    return Err(violated(Check::LaterDisjoint, format!("B_{j} meets B^<_{} at {h}", self.order[c])));
                }
            }
            sets.push(b_j);
        }

        let out = HostModel { host: self.host.clone(), core, core_vertices: self.order.clone(), sets, ledger };
        validate_model(&out.to_model()).map_err(|e| violated(Check::FinalModel, e.to_string()))?;
        debug_assert!(out.core_vertices.iter().enumerate().all(|(p, v)| self.pos[v] == p));
        Ok(out)
    }
}
