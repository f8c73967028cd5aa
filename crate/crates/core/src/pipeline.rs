//! End-to-end run over a region system: orient, pick shallow models,
//! represent, sample junction-free subgraphs, extract host models from each,
//! and compare the pattern densities against the upper bound.

use crate::bounds::{bound_rig, EBound};
use crate::density::{hakimi_orient, max_density};
use crate::error::{Error, Result};
use crate::extraction::extract_host_model_for;
use crate::graph::{degeneracy_order, edge_density, Graph};
use crate::minor::{find_minor_model, minor_density, model_from_branch_sets, random_shallow_model, shallow_families, MinorModel};
use crate::rational::{ceil_to_u64, int, Rational};
use crate::report::Report;
use crate::representation::{build_representation, find_junctions};
use crate::rig::{rig, RegionSystem};
use crate::sampling::{Sampler, SamplingParams};

#[derive(Clone, Debug)]
pub enum ModelSource {
    /// Every family of disjoint `r`-shallow branch sets of `G`.
    Exhaustive,
    /// One seeded random model with at most this many branch sets.
    Random { target: usize },
    /// Models supplied by the caller, over `rig(rs)`.
    Given(Vec<MinorModel>),
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub r: usize,
    pub seed: u64,
    pub trials: usize,
    /// Density bound for every minor of the host; computed when absent.
    pub t: Option<Rational>,
    pub models: ModelSource,
    /// Largest host for which `t` is computed exactly.
    pub t_cap: usize,
    /// Largest host on which extracted cores are re-checked by brute force.
    pub minor_check_cap: usize,
    /// Largest `G` for exhaustive model enumeration.
    pub family_cap: usize,
}

impl PipelineConfig {
    pub fn new(r: usize, seed: u64, trials: usize) -> Self {
        PipelineConfig { r, seed, trials, t: None, models: ModelSource::Exhaustive, t_cap: 9, minor_check_cap: 9, family_cap: 9 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub n_host: usize,
    pub m_host: usize,
    pub n_g: usize,
    pub m_g: usize,
    pub d: usize,
    pub r: usize,
    pub t: Rational,
    pub k: usize,
    pub models: usize,
    pub samples: usize,
    pub nonempty_cores: usize,
    pub minor_checks: usize,
    pub max_pattern_density: Rational,
    pub bound: EBound,
    pub pass: bool,
}

impl PipelineOutcome {
    pub fn report(&self) -> Report {
        let mut rep = Report::new();
        rep.push("n_H", self.n_host)
            .push("m_H", self.m_host)
            .push("n_G", self.n_g)
            .push("m_G", self.m_g)
            .push("d", self.d)
            .push("r", self.r)
            .push_rational("t", &self.t)
            .push("k", self.k)
            .push("models", self.models)
            .push("samples", self.samples)
            .push("nonempty_cores", self.nonempty_cores)
            .push("minor_checks", self.minor_checks)
            .push_rational("max_density_J", &self.max_pattern_density)
            .push_rational("bound_coefficient", &self.bound.coefficient)
            .push_rational("bound_upper", &self.bound.upper)
            .push("verdict", if self.pass { "pass" } else { "fail" });
        rep
    }
}

fn stage(stage: &'static str) -> impl Fn(Error) -> Error {
    move |e| Error::Stage { stage, detail: e.to_string() }
}

fn fail(stage: &'static str, detail: String) -> Error {
    Error::Stage { stage, detail }
}

/// `t` for the host: 1 for forests, the exact maximum minor density (at
/// least 1) for small hosts, otherwise it must be supplied.
pub fn host_minor_density(host: &Graph, cap: usize) -> Result<Rational> {
    if degeneracy_order(host).0 <= 1 {
        return Ok(int(1));
    }
    if host.n() > cap {
        return Err(Error::Parameter(format!("host has {} vertices; supply t explicitly", host.n())));
    }
    Ok(minor_density(host, cap)?.max(int(1)))
}

pub fn pipeline(rs: &RegionSystem, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    let host = rs.host();
    let g = rig(rs);
    let t = match &cfg.t {
        Some(t) if *t < int(1) => return Err(Error::Parameter("t must be at least 1".into())),
        Some(t) => t.clone(),
        None => host_minor_density(host, cfg.t_cap)?,
    };
    let k = 2 * cfg.r + 2;
    let mut out = PipelineOutcome {
        n_host: host.n(),
        m_host: host.m(),
        n_g: g.n(),
        m_g: g.m(),
        d: 0,
        r: cfg.r,
        t: t.clone(),
        k,
        models: 0,
        samples: 0,
        nonempty_cores: 0,
        minor_checks: 0,
        max_pattern_density: int(0),
        bound: bound_rig(0, cfg.r, &t),
        pass: true,
    };
    if g.n() == 0 {
        return Ok(out);
    }
    let d = ceil_to_u64(&max_density(&g)?) as usize;
    out.d = d;
    out.bound = bound_rig(d, cfg.r, &t);
    let orient = hakimi_orient(&g, d).ok_or_else(|| fail("orient", format!("no orientation with indegree <= {d}")))?;

    let models: Vec<MinorModel> = match &cfg.models {
        ModelSource::Exhaustive => shallow_families(&g, cfg.r, cfg.family_cap)
            .map_err(stage("models"))?
            .into_iter()
            .map(|fam| model_from_branch_sets(&g, fam, Some(cfg.r)))
            .collect(),
        ModelSource::Random { target } => vec![random_shallow_model(&g, cfg.r, *target, cfg.seed).map_err(stage("models"))?],
        ModelSource::Given(ms) => ms.clone(),
    };

    for model in &models {
        let ordering: Vec<usize> = model.pattern.vertices().collect();
        let rep = build_representation(model, rs, &ordering).map_err(stage("represent"))?;
        if rep.max_path_len() > k {
            return Err(fail("represent", format!("a path has {} vertices, above 2r+2 = {k}", rep.max_path_len())));
        }
        let params = SamplingParams::new(k, d, cfg.seed, cfg.trials)?;
        let sampler = Sampler::new(&rep, &orient, params).map_err(stage("sample"))?;
        for trial in 0..cfg.trials as u64 {
            let sub = sampler.sample(trial);
            let junctions = find_junctions(&rep, &orient, &sub)?;
            if let Some(jn) = junctions.first() {
                return Err(fail("sample", format!("trial {trial} kept junction {jn:?}")));
            }
            let hm = extract_host_model_for(&rep, &orient, &sub).map_err(stage("extract"))?;
            if hm.core.n() > 0 {
                out.nonempty_cores += 1;
                if host.n() <= cfg.minor_check_cap {
                    out.minor_checks += 1;
                    if find_minor_model(host, &hm.core, cfg.minor_check_cap)?.is_none() {
                        return Err(fail("minor-check", format!("trial {trial}: core is not a minor of the host")));
                    }
                }
            }
            let (nv, me) = (sub.vertices.len(), sub.edges.len());
            if int(me as i64) > &t * int(nv as i64) {
                return Err(fail("junction-free-density", format!("trial {trial}: {me} edges on {nv} vertices exceeds t")));
            }
            out.samples += 1;
        }
        let density = sampler.density_report(&model.pattern, &t);
        if !density.pass {
            return Err(fail("density-bound", density.to_string().replace('\n', "; ")));
        }
        let dj = edge_density(&model.pattern);
        if dj > out.max_pattern_density {
            out.max_pattern_density = dj;
        }
        out.models += 1;
    }
    out.pass = out.max_pattern_density <= out.bound.upper;
    Ok(out)
}
