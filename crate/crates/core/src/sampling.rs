//! Junction-free random subgraphs of a pattern and the density accounting
//! built on them.
//!
//! Trial `t` with seed `s` draws from `ChaCha8Rng::seed_from_u64(s)` on
//! stream `t`; pattern vertex `v` is chosen when the `v`-th draw from
//! `0..kd+1` is zero, so each vertex is kept with probability exactly
//! `1/(kd+1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::density::Orientation;
use crate::error::{Error, Result};
use crate::graph::{edge_density, Graph, Vertex};
use crate::rational::{e_lower, e_upper, fmt as rfmt, int, pow, Rational};
use crate::representation::{all_r, Representation, SubPattern};

/// Largest pattern for which the exact expectation is enumerated.
pub const EXACT_EXPECTATION_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingParams {
    /// Upper bound on the number of vertices of each path.
    pub k: usize,
    /// Upper bound on indegrees.
    pub d: usize,
    pub seed: u64,
    pub trials: usize,
}

impl SamplingParams {
    pub fn new(k: usize, d: usize, seed: u64, trials: usize) -> Result<Self> {
        if k == 0 || trials == 0 {
            return Err(Error::Parameter("k and trials must be positive".into()));
        }
        Ok(SamplingParams { k, d, seed, trials })
    }

    /// `kd`.
    pub fn kd(&self) -> usize {
        self.k * self.d
    }

    /// `p = 1/(kd+1)`.
    pub fn p(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.kd() + 1))
    }
}

/// `η_a = (a+1)^{a+1} / a^a`, with `η_0 = 1`.
pub fn eta(a: u32) -> Rational {
    let value = pow(&int(a as i64 + 1), a + 1) / pow(&int(a as i64), a);
    let bound = e_lower() * int(a as i64 + 1);
    assert!(value < bound, "eta_{a} is not below e(a+1)");
    value
}

/// Vertices chosen in trial `trial`, as a membership vector over `0..n`.
pub fn chosen_vertices(n: usize, params: &SamplingParams, trial: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(trial);
    let range = params.kd() as u64 + 1;
    (0..n).map(|_| rng.gen_range(0..range) == 0).collect()
}

/// Samples junction-free subgraphs of a fixed representation.
#[derive(Clone, Debug)]
pub struct Sampler {
    pub params: SamplingParams,
    n: usize,
    r_sets: BTreeMap<(Vertex, Vertex), BTreeSet<Vertex>>,
}

impl Sampler {
    /// Checks the path-length and indegree bounds and computes every `R_ij`.
    pub fn new(rep: &Representation, orient: &Orientation, params: SamplingParams) -> Result<Self> {
        if rep.max_path_len() > params.k {
            return Err(Error::Precondition(format!("a path has {} vertices, above k = {}", rep.max_path_len(), params.k)));
        }
        if orient.max_indegree() > params.d {
            return Err(Error::Precondition(format!("indegree {} exceeds d = {}", orient.max_indegree(), params.d)));
        }
        let r_sets = all_r(rep, orient)?;
        let kd = params.kd();
        if let Some((e, r)) = r_sets.iter().find(|(_, r)| r.len() > kd) {
            return Err(Error::Precondition(format!("|R_{}{}| = {} exceeds kd = {kd}", e.0, e.1, r.len())));
        }
        Ok(Sampler { params, n: rep.model.pattern.n(), r_sets })
    }

    pub fn r_sets(&self) -> &BTreeMap<(Vertex, Vertex), BTreeSet<Vertex>> {
        &self.r_sets
    }

    /// `J'` for a given choice of vertices.
    pub fn subgraph_for(&self, chosen: &[bool]) -> SubPattern {
        let vertices = (0..self.n).filter(|&v| chosen[v]).collect();
        let edges = self
            .r_sets
            .iter()
            .filter(|(&(i, j), r)| chosen[i] && chosen[j] && r.iter().all(|&l| !chosen[l]))
            .map(|(&e, _)| e)
            .collect();
        SubPattern { vertices, edges }
    }

    pub fn sample(&self, trial: u64) -> SubPattern {
        self.subgraph_for(&chosen_vertices(self.n, &self.params, trial))
    }

    /// Closed forms `p|V(J)|` and `Σ p²(1−p)^{|R_ij|}`.
    pub fn closed_form_expectations(&self) -> (Rational, Rational) {
        let p = self.params.p();
        let q = Rational::one() - &p;
        let nv = &p * int(self.n as i64);
        let me = self.r_sets.values().fold(Rational::zero(), |acc, r| acc + &p * &p * pow(&q, r.len() as u32));
        (nv, me)
    }

    /// `E|V(J')|` and `E|E(J')|` by summing over all `2^{|V(J)|}` outcomes.
    pub fn exact_expectations(&self) -> Result<(Rational, Rational)> {
        if self.n > EXACT_EXPECTATION_CAP {
            return Err(Error::CapExceeded { n: self.n, cap: EXACT_EXPECTATION_CAP });
        }
        let p = self.params.p();
        let q = Rational::one() - &p;
        let p_pows: Vec<Rational> = (0..=self.n as u32).map(|e| pow(&p, e)).collect();
        let q_pows: Vec<Rational> = (0..=self.n as u32).map(|e| pow(&q, e)).collect();
        let mut nv = Rational::zero();
        let mut me = Rational::zero();
        for mask in 0u64..(1u64 << self.n) {
            let chosen: Vec<bool> = (0..self.n).map(|v| mask >> v & 1 == 1).collect();
            let ones = mask.count_ones() as usize;
            let weight = &p_pows[ones] * &q_pows[self.n - ones];
            let sub = self.subgraph_for(&chosen);
            nv += &weight * int(ones as i64);
            me += &weight * int(sub.edges.len() as i64);
        }
        Ok((nv, me))
    }
}

/// Convenience wrapper around [`Sampler`].
pub fn sample_subgraph(rep: &Representation, orient: &Orientation, params: SamplingParams, trial: u64) -> Result<SubPattern> {
    Ok(Sampler::new(rep, orient, params)?.sample(trial))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub n_j: usize,
    pub m_j: usize,
    pub density_j: Rational,
    pub beta: Rational,
    /// `β η_{kd}`.
    pub eta_bound: Rational,
    /// `β e (kd+1)` with `e` rounded up.
    pub e_bound: Rational,
    pub emp_mean_nv: Rational,
    pub emp_mean_me: Rational,
    /// Per pattern edge, the number of trials that kept it.
    pub retention: BTreeMap<(Vertex, Vertex), usize>,
    pub trials: usize,
    pub pass: bool,
}

/// Runs all trials and checks `|E(J)|/|V(J)| <= β η_{kd}`.
pub fn density_bound_check(rep: &Representation, orient: &Orientation, params: SamplingParams, beta: &Rational) -> Result<DensityReport> {
    Ok(Sampler::new(rep, orient, params)?.density_report(&rep.model.pattern, beta))
}

impl Sampler {
    /// Density accounting over trials `0..trials` for the pattern `j` this
    /// sampler was built from.
    pub fn density_report(&self, j: &Graph, beta: &Rational) -> DensityReport {
        let params = self.params;
        let mut total_v = 0usize;
        let mut total_e = 0usize;
        let mut retention: BTreeMap<(Vertex, Vertex), usize> = j.edges().map(|e| (e, 0)).collect();
        for trial in 0..params.trials as u64 {
            let sub = self.sample(trial);
            total_v += sub.vertices.len();
            total_e += sub.edges.len();
            for e in &sub.edges {
                *retention.get_mut(e).expect("pattern edge") += 1;
            }
        }
        let kd = params.kd();
        let density_j = edge_density(j);
        let eta_bound = beta * eta(kd as u32);
        let e_bound = beta * e_upper() * int(kd as i64 + 1);
        let trials = int(params.trials as i64);
        DensityReport {
            n_j: j.n(),
            m_j: j.m(),
            pass: density_j <= eta_bound,
            density_j,
            beta: beta.clone(),
            eta_bound,
            e_bound,
            emp_mean_nv: int(total_v as i64) / &trials,
            emp_mean_me: int(total_e as i64) / &trials,
            retention,
            trials: params.trials,
        }
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_J = {}", self.n_j)?;
        writeln!(f, "m_J = {}", self.m_j)?;
        writeln!(f, "density_J = {}", rfmt(&self.density_j))?;
        writeln!(f, "beta = {}", rfmt(&self.beta))?;
        writeln!(f, "eta_bound = {}", rfmt(&self.eta_bound))?;
        writeln!(f, "e_bound = {}", rfmt(&self.e_bound))?;
        writeln!(f, "emp_mean_nV = {}", rfmt(&self.emp_mean_nv))?;
        writeln!(f, "emp_mean_mE = {}", rfmt(&self.emp_mean_me))?;
        writeln!(f, "pass = {}", self.pass)
    }
}
