//! Segment arrangements whose string graphs have maximum density at most
//! `d` and contain a large clique as a shallow minor.
//!
//! With `d' = d-1` and `r' = 2r+1` there are `d'r'` columns of `r'` slanted
//! segments `α_{i,j}`, consecutive rows crossing once, and for each row `i`
//! there are `d'` horizontal segments `γ_{(i,k)}` crossing every `α_{i,j}`.
//! Coordinates are scaled by `s = d'+1` so the `γ`s of a row sit at distinct
//! integer heights strictly between the neighbouring rows.

use std::collections::BTreeSet;
use std::fmt;

use crate::bounds::{bound_lower, bound_rig};
use crate::density::{hakimi_orient, Orientation};
use crate::error::{Error, Result};
use crate::geometry::{string_graph, Arrangement, Segment};
use crate::graph::{eccentricity, edge_density, radius_and_centre, Graph, Vertex};
use crate::minor::{touching_pattern, validate_model, MinorModel};
use crate::rational::{fmt as rfmt, int, Rational};

#[derive(Clone, Debug)]
pub struct LowerBoundInstance {
    pub d: usize,
    pub r: usize,
    /// `d' = d - 1`.
    pub dp: usize,
    /// `r' = 2r + 1`.
    pub rp: usize,
    pub arrangement: Arrangement,
    pub graph: Graph,
}

impl LowerBoundInstance {
    /// Number of columns, `d'r'`.
    pub fn columns(&self) -> usize {
        self.dp * self.rp
    }

    /// Segment index of `α_{i,j}`, both 1-based.
    pub fn alpha(&self, i: usize, j: usize) -> Vertex {
        (j - 1) * self.rp + (i - 1)
    }

    /// Segment index of `γ_{(i,k)}`, both 1-based.
    pub fn gamma(&self, i: usize, k: usize) -> Vertex {
        self.columns() * self.rp + (i - 1) * self.dp + (k - 1)
    }

    /// The bijection from columns to `γ` labels: the row cycles fastest.
    pub fn f(&self, j: usize) -> (usize, usize) {
        ((j - 1) % self.rp + 1, (j - 1) / self.rp + 1)
    }

    fn intended_edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        let mut edges = BTreeSet::new();
        let mut add = |a: Vertex, b: Vertex| {
            edges.insert((a.min(b), a.max(b)));
        };
        for j in 1..=self.columns() {
            for i in 1..self.rp {
                add(self.alpha(i, j), self.alpha(i + 1, j));
            }
            for i in 1..=self.rp {
                for k in 1..=self.dp {
                    add(self.gamma(i, k), self.alpha(i, j));
                }
            }
        }
        edges
    }
}

/// Builds the arrangement and checks that its string graph is exactly the
/// intended one.
pub fn generate(d: usize, r: usize) -> Result<LowerBoundInstance> {
    if d < 2 || r < 1 {
        return Err(Error::Parameter(format!("need d >= 2 and r >= 1, got d = {d}, r = {r}")));
    }
    let (dp, rp) = (d - 1, 2 * r + 1);
    let s = (dp + 1) as i64;
    let cols = dp * rp;
    let mut segments = Vec::with_capacity(cols * rp + rp * dp);
    for j in 1..=cols as i64 {
        for i in 1..=rp as i64 {
            let (left, right) = (s * 10 * j, s * (10 * j + 2));
            let (low, high) = (s * 3 * i, s * (3 * i + 4));
            segments.push(if i % 2 == 1 {
                Segment::new((left, low), (right, high))
            } else {
                Segment::new((right, low), (left, high))
            });
        }
    }
    for i in 1..=rp as i64 {
        for k in 1..=dp as i64 {
            let y = s * (3 * i + 1) + 2 * k;
            segments.push(Segment::new((s * 9, y), (s * (10 * cols as i64 + 3), y)));
        }
    }
    let arrangement = Arrangement::new(segments)?;
    let graph = string_graph(&arrangement);
    let inst = LowerBoundInstance { d, r, dp, rp, arrangement, graph };
    let actual: BTreeSet<_> = inst.graph.edges().collect();
    if actual != inst.intended_edges() {
        return Err(Error::Precondition("generated arrangement does not realise the intended string graph".into()));
    }
    Ok(inst)
}

/// `γ → α` and `α_{i,j} → α_{i+1,j}`.
pub fn orient_instance(inst: &LowerBoundInstance) -> Orientation {
    let mut arcs = Vec::new();
    for j in 1..=inst.columns() {
        for i in 1..inst.rp {
            arcs.push((inst.alpha(i, j), inst.alpha(i + 1, j)));
        }
        for i in 1..=inst.rp {
            for k in 1..=inst.dp {
                arcs.push((inst.gamma(i, k), inst.alpha(i, j)));
            }
        }
    }
    let o = Orientation::new(inst.graph.clone(), arcs).expect("arcs cover the string graph");
    assert!(o.max_indegree() <= inst.d, "indegree above d");
    o
}

/// Model of `K_{d'r'}` with branch sets `S_j = {α_{1,j}, ..., α_{r',j}, γ_{f(j)}}`.
///
/// Each root is the middle segment `α_{r+1,j}` unless some other member has
/// smaller eccentricity, in which case the smallest-id centre is used. The
/// depth bound is `r`; whether the model meets it is for [`validate_model`]
/// to decide.
pub fn clique_model(inst: &LowerBoundInstance) -> MinorModel {
    let g = &inst.graph;
    let mut branch = Vec::with_capacity(inst.columns());
    let mut roots = Vec::with_capacity(inst.columns());
    for j in 1..=inst.columns() {
        let (row, k) = inst.f(j);
        let mut set: Vec<Vertex> = (1..=inst.rp).map(|i| inst.alpha(i, j)).collect();
        set.push(inst.gamma(row, k));
        set.sort_unstable();
        let middle = inst.alpha(inst.r + 1, j);
        let ecc = eccentricity(g, middle, &set).expect("column is connected");
        let (radius, centre) = radius_and_centre(g, &set).expect("column is connected");
        roots.push(if ecc > inst.r && radius < ecc { centre } else { middle });
        branch.push(set);
    }
    let pattern = touching_pattern(g, &branch);
    MinorModel { ambient: g.clone(), pattern, branch, roots, depth_bound: Some(inst.r) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundReport {
    pub d: usize,
    pub r: usize,
    pub segments: usize,
    pub edges: usize,
    /// An orientation with indegrees at most `d` exists.
    pub hakimi_feasible: bool,
    pub orientation_max_indegree: usize,
    pub clique_size: usize,
    pub pattern_is_complete: bool,
    /// The branch sets form a model, radius aside.
    pub model_valid: bool,
    /// Largest eccentricity of a root within its branch set.
    pub max_root_eccentricity: usize,
    pub shallow_valid: bool,
    pub pattern_density: Rational,
    pub lower_bound: Rational,
    pub closed_forms_equal: bool,
    pub density_meets_bound: bool,
    /// `3e((2r+2)d+1)` with `e` rounded up.
    pub plane_upper: Rational,
    pub below_plane_upper: bool,
}

impl LowerBoundReport {
    pub fn pass(&self) -> bool {
        self.hakimi_feasible
            && self.pattern_is_complete
            && self.model_valid
            && self.shallow_valid
            && self.closed_forms_equal
            && self.density_meets_bound
            && self.below_plane_upper
    }
}

pub fn verify_lower_bound(inst: &LowerBoundInstance) -> LowerBoundReport {
    let g = &inst.graph;
    let o = orient_instance(inst);
    let model = clique_model(inst);
    let clique_size = model.pattern.n();
    let unbounded = MinorModel { depth_bound: None, ..model.clone() };
    let max_root_eccentricity = model
        .branch
        .iter()
        .zip(&model.roots)
        .map(|(s, &c)| eccentricity(g, c, s).expect("connected"))
        .max()
        .unwrap_or(0);
    let pattern_density = edge_density(&model.pattern);
    let lower_bound = bound_lower(inst.d, inst.r).expect("parameters checked by generate");
    let closed = (int((inst.dp * inst.rp) as i64) - int(1)) / int(2);
    let plane_upper = bound_rig(inst.d, inst.r, &int(3)).upper;
    LowerBoundReport {
        d: inst.d,
        r: inst.r,
        segments: inst.arrangement.len(),
        edges: g.m(),
        hakimi_feasible: hakimi_orient(g, inst.d).is_some(),
        orientation_max_indegree: o.max_indegree(),
        clique_size,
        pattern_is_complete: model.pattern == Graph::complete(clique_size),
        model_valid: validate_model(&unbounded).is_ok(),
        max_root_eccentricity,
        shallow_valid: validate_model(&model).is_ok(),
        closed_forms_equal: closed == lower_bound && pattern_density == closed,
        density_meets_bound: pattern_density >= lower_bound,
        below_plane_upper: pattern_density <= plane_upper,
        pattern_density,
        lower_bound,
        plane_upper,
    }
}

impl fmt::Display for LowerBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}", self.d)?;
        writeln!(f, "r = {}", self.r)?;
        writeln!(f, "segments = {}", self.segments)?;
        writeln!(f, "edges = {}", self.edges)?;
        writeln!(f, "hakimi_feasible = {}", self.hakimi_feasible)?;
        writeln!(f, "orientation_max_indegree = {}", self.orientation_max_indegree)?;
        writeln!(f, "clique_size = {}", self.clique_size)?;
        writeln!(f, "pattern_complete = {}", self.pattern_is_complete)?;
        writeln!(f, "model_valid = {}", self.model_valid)?;
        writeln!(f, "max_root_eccentricity = {}", self.max_root_eccentricity)?;
        writeln!(f, "shallow_valid = {}", self.shallow_valid)?;
        writeln!(f, "pattern_density = {}", rfmt(&self.pattern_density))?;
        writeln!(f, "lower_bound = {}", rfmt(&self.lower_bound))?;
        writeln!(f, "closed_forms_equal = {}", self.closed_forms_equal)?;
        writeln!(f, "density_meets_bound = {}", self.density_meets_bound)?;
        writeln!(f, "plane_upper = {}", rfmt(&self.plane_upper))?;
        writeln!(f, "below_plane_upper = {}", self.below_plane_upper)?;
        writeln!(f, "pass = {}", self.pass())
    }
}
