//! `rigx`: reproducible runs over graphs, segment arrangements and region
//! systems. Every subcommand prints `key = value` lines.
//!
//! Exit status is 0 when every check passes, 1 when a checked inequality or
//! construction step fails, and 2 on usage, I/O or parse errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rigx::bounds::{bound_lower, bound_rig, bound_scol, bound_surface, genus_density};
use rigx::colouring::{
    acyclic_chromatic_with_cap, scol_exact_with_cap, scol_greedy, DEFAULT_ACYCLIC_CAP, DEFAULT_SCOL_CAP,
};
use rigx::density::{hakimi_orient, max_density, Orientation};
use rigx::extraction::extract_host_model_for;
use rigx::geometry::{string_graph, Arrangement};
use rigx::graph::degeneracy_order;
use rigx::lowerbound::{clique_model, generate, verify_lower_bound};
use rigx::minor::{
    find_minor_model, nabla_exact_with, random_shallow_model, validate_model, MinorModel, NablaOptions, DEFAULT_NABLA_CAP,
};
use rigx::pipeline::{host_minor_density, pipeline, ModelSource, PipelineConfig};
use rigx::rational::{approx, ceil_to_u64, fmt as rfmt, int};
use rigx::report::Report;
use rigx::representation::{all_r, build_representation, find_junctions, shuffled_ordering, Representation, SubPattern};
use rigx::rig::{arrangement_to_rig, rig, RegionSystem};
use rigx::sampling::{Sampler, SamplingParams};
use rigx::{Error, Graph, Rational};

#[derive(Parser, Debug)]
#[command(name = "rigx", version, about = "Shallow minors of region intersection and string graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Maximum edge density and degeneracy.
    Density,
    /// Orientation with indegree at most `d`.
    Hakimi,
    /// Exact density of the densest `r`-shallow minor.
    Nabla,
    /// Representation paths for a model of `rig(rs)`.
    Represent,
    /// Junctions and `R_ij` sets of a model under a Hakimi orientation.
    Junctions,
    /// Junction-free sampling and the density accounting.
    Sample,
    /// Host models for the cores of sampled junction-free subgraphs.
    Extract,
    /// The segment family with a large shallow clique minor.
    Lowerbound,
    /// Strong `r`-colouring number and the inequality against `∇_{r-1}`.
    Scol,
    /// Acyclic chromatic number against `scol_2`.
    Acyclic,
    /// Closed-form bounds for a `(d, r, g, t)` query.
    Bounds,
    /// End-to-end run over a region system.
    Pipeline,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Graph, segment arrangement or region system file; `-` reads stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true)]
    r: Option<usize>,
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Density bound for the host class, e.g. `3` or `7/2`.
    #[arg(long, global = true)]
    t: Option<Rational>,
    /// Euler genus.
    #[arg(long, global = true)]
    g: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Largest instance handled by exact search.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for the parallel exact searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Minor model of the input's graph, in the model text format.
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Number of branch sets for a random model.
    #[arg(long, global = true)]
    target: Option<usize>,
    /// Order the pattern vertices randomly (needs `--seed`).
    #[arg(long, global = true)]
    shuffle: bool,
    /// What to print.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Report)]
    emit: Emit,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Emit {
    Report,
    Model,
    Arrangement,
    Dump,
}

enum Instance {
    Graph(Graph),
    Segments(Arrangement),
    Regions(RegionSystem),
}

impl Instance {
    fn parse(text: &str) -> rigx::Result<Instance> {
        let content = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
        let mut first = true;
        let mut regions = false;
        let mut segments = false;
        for line in content {
            if first && line.starts_with("segments") {
                segments = true;
            }
            regions |= line.starts_with("region");
            first = false;
        }
        Ok(if segments {
            Instance::Segments(Arrangement::parse(text)?)
        } else if regions {
            Instance::Regions(RegionSystem::parse(text)?)
        } else {
            Instance::Graph(Graph::parse(text)?)
        })
    }

    /// The graph under study: itself, the string graph, or the rig.
    fn graph(&self) -> Graph {
        match self {
            Instance::Graph(g) => g.clone(),
            Instance::Segments(a) => string_graph(a),
            Instance::Regions(rs) => rig(rs),
        }
    }

    fn regions(&self) -> anyhow::Result<RegionSystem> {
        match self {
            Instance::Graph(_) => bail!("this subcommand needs a region system or a segment arrangement"),
            Instance::Segments(a) => Ok(arrangement_to_rig(a)),
            Instance::Regions(rs) => Ok(rs.clone()),
        }
    }
}

/// Input and parameter problems; exit status 2.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl From<anyhow::Error> for Usage {
    fn from(e: anyhow::Error) -> Self {
        Usage(e)
    }
}

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.into())
    }
}

enum Failure {
    Usage(anyhow::Error),
    Check(anyhow::Error),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Stage { .. } | Error::Extraction(_) => Failure::Check(e.into()),
            other => Failure::Usage(other.into()),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn report(rep: &Report, pass: bool) -> Self {
        Output { text: rep.to_string(), pass }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(cli.command, &cli.opts).and_then(|out| {
        write_output(&cli.opts, &out.text).map_err(|e| Failure::Usage(e.0))?;
        Ok(out.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(e)) => {
            eprintln!("rigx: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("rigx: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn write_output(opts: &Opts, text: &str) -> Result<(), Usage> {
    match &opts.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout")?,
    }
    Ok(())
}

fn read_text(path: &PathBuf) -> Result<String, Usage> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return Ok(text);
    }
    Ok(fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

fn load(opts: &Opts) -> Result<Instance, Usage> {
    let path = opts.input.as_ref().ok_or_else(|| anyhow!("--input is required"))?;
    let text = read_text(path)?;
    Ok(Instance::parse(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn need<T: Copy>(value: Option<T>, flag: &str) -> Result<T, Usage> {
    value.ok_or_else(|| Usage(anyhow!("--{flag} is required")))
}

fn dispatch(cmd: Command, opts: &Opts) -> Run<Output> {
    if opts.jobs == 0 {
        return Err(Usage(anyhow!("--jobs must be positive")).into());
    }
    if opts.shuffle && opts.seed.is_none() {
        return Err(Usage(anyhow!("--shuffle needs --seed")).into());
    }
    match cmd {
        Command::Density => density(opts),
        Command::Hakimi => hakimi(opts),
        Command::Nabla => nabla(opts),
        Command::Represent => represent(opts),
        Command::Junctions => junctions(opts),
        Command::Sample => sample(opts),
        Command::Extract => extract(opts),
        Command::Lowerbound => lowerbound(opts),
        Command::Scol => scol(opts),
        Command::Acyclic => acyclic(opts),
        Command::Bounds => bounds(opts),
        Command::Pipeline => run_pipeline(opts),
    }
}

fn ceil_density(g: &Graph) -> rigx::Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    Ok(ceil_to_u64(&max_density(g)?) as usize)
}

fn density(opts: &Opts) -> Run<Output> {
    let g = load(opts)?.graph();
    let mut rep = Report::new();
    rep.push("n", g.n()).push("m", g.m());
    if g.n() > 0 {
        let md = max_density(&g)?;
        rep.push_rational("max_density", &md).push("d", ceil_to_u64(&md));
    }
    rep.push("degeneracy", degeneracy_order(&g).0);
    Ok(Output::report(&rep, true))
}

fn arcs_line(o: &Orientation) -> String {
    o.arcs().iter().map(|(a, b)| format!("{a}>{b}")).collect::<Vec<_>>().join(" ")
}

fn hakimi(opts: &Opts) -> Run<Output> {
    let g = load(opts)?.graph();
    let needed = ceil_density(&g)?;
    let d = opts.d.unwrap_or(needed);
    let orient = hakimi_orient(&g, d);
    // Feasible exactly when d reaches the ceiling of the maximum density.
    let consistent = orient.is_some() == (d >= needed);
    let mut rep = Report::new();
    rep.push("n", g.n()).push("m", g.m()).push("d", d).push("feasible", orient.is_some());
    if let Some(o) = &orient {
        rep.push("max_indegree", o.max_indegree()).push("arcs", arcs_line(o));
    }
    rep.push("consistent", consistent);
    Ok(Output::report(&rep, consistent))
}

fn branch_line(set: &[usize], root: usize) -> String {
    let members: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("root {root}: {}", members.join(" "))
}

fn nabla(opts: &Opts) -> Run<Output> {
    let g = load(opts)?.graph();
    let r = need(opts.r, "r")?;
    let cap = opts.cap.unwrap_or(DEFAULT_NABLA_CAP);
    let (value, witness) = nabla_exact_with(&g, r, NablaOptions { cap, jobs: opts.jobs })?;
    if opts.emit == Emit::Model {
        return Ok(Output { text: witness.to_string(), pass: true });
    }
    let mut rep = Report::new();
    rep.push("n", g.n()).push("m", g.m()).push("r", r).push_rational("nabla", &value);
    rep.push("witness_size", witness.pattern.n()).push("witness_edges", witness.pattern.m());
    for (i, set) in witness.branch.iter().enumerate() {
        rep.push(format!("branch_{i}"), branch_line(set, witness.roots[i]));
    }
    Ok(Output::report(&rep, true))
}

/// Model of `g`: from `--model`, or a seeded random `r`-shallow one.
fn model_for(opts: &Opts, g: &Graph) -> Result<MinorModel, Usage> {
    if let Some(path) = &opts.model {
        let text = read_text(path)?;
        return Ok(MinorModel::parse(&text, g).with_context(|| format!("parsing {}", path.display()))?);
    }
    let r = need(opts.r, "r")?;
    let seed = opts.seed.ok_or_else(|| anyhow!("--seed is required for a random model (or pass --model)"))?;
    let target = opts.target.unwrap_or(g.n().max(1));
    Ok(random_shallow_model(g, r, target, seed)?)
}

fn model_radius(opts: &Opts, model: &MinorModel) -> Result<usize, Usage> {
    match model.depth_bound.or(opts.r) {
        Some(r) => Ok(r),
        None => Err(Usage(anyhow!("the model has no radius bound; pass --r"))),
    }
}

struct Setup {
    rs: RegionSystem,
    g: Graph,
    rep: Representation,
    r: usize,
    d: usize,
    orient: Orientation,
}

fn setup(opts: &Opts) -> Run<Setup> {
    let rs = load(opts)?.regions()?;
    let g = rig(&rs);
    let model = model_for(opts, &g)?;
    let r = model_radius(opts, &model)?;
    let n = model.pattern.n();
    let ordering = match opts.seed {
        Some(seed) if opts.shuffle => shuffled_ordering(n, seed),
        _ => (0..n).collect(),
    };
    let rep = build_representation(&model, &rs, &ordering)?;
    let needed = ceil_density(&g)?;
    let d = opts.d.unwrap_or(needed);
    let orient = hakimi_orient(&g, d).ok_or_else(|| Usage(anyhow!("no orientation with indegree at most {d}")))?;
    Ok(Setup { rs, g, rep, r, d, orient })
}

fn represent(opts: &Opts) -> Run<Output> {
    let s = setup(opts)?;
    let k = 2 * s.r + 2;
    let within = s.rep.max_path_len() <= k;
    if opts.emit == Emit::Dump {
        return Ok(Output { text: s.rep.dump(), pass: within });
    }
    let mut cases = [0usize; 3];
    for rec in s.rep.paths.values() {
        cases[rec.case.tag() as usize - 1] += 1;
    }
    let mut rep = Report::new();
    rep.push("n_G", s.g.n())
        .push("m_G", s.g.m())
        .push("pattern_n", s.rep.model.pattern.n())
        .push("pattern_m", s.rep.model.pattern.m())
        .push("r", s.r)
        .push("k", k)
        .push("max_path_len", s.rep.max_path_len())
        .push("case1", cases[0])
        .push("case2", cases[1])
        .push("case3", cases[2])
        .push("within_bound", within);
    Ok(Output::report(&rep, within))
}

/// Space-separated ids, `-` when empty.
fn set_line<'a>(it: impl IntoIterator<Item = &'a usize>) -> String {
    let line = it.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    if line.is_empty() {
        "-".into()
    } else {
        line
    }
}

fn junctions(opts: &Opts) -> Run<Output> {
    let s = setup(opts)?;
    let found = find_junctions(&s.rep, &s.orient, &SubPattern::full(&s.rep.model.pattern))?;
    let r_sets = all_r(&s.rep, &s.orient)?;
    let kd = (2 * s.r + 2) * s.d;
    let largest = r_sets.values().map(|r| r.len()).max().unwrap_or(0);
    let mut rep = Report::new();
    rep.push("pattern_n", s.rep.model.pattern.n())
        .push("pattern_m", s.rep.model.pattern.m())
        .push("d", s.d)
        .push("kd", kd)
        .push("junctions", found.len());
    for jn in &found {
        let (i, j) = jn.pattern_edge;
        let (a, b) = jn.arc;
        rep.push(format!("junction_{i}_{j}"), format!("arc {a}>{b} block {}", jn.block));
    }
    for (&(i, j), set) in &r_sets {
        rep.push(format!("R_{i}_{j}"), set_line(set));
    }
    rep.push("max_R", largest).push("max_R_within_kd", largest <= kd);
    Ok(Output::report(&rep, largest <= kd))
}

fn host_t(opts: &Opts, host: &Graph) -> Result<Rational, Usage> {
    match &opts.t {
        Some(t) if *t < int(1) => Err(Usage(anyhow!("--t must be at least 1"))),
        Some(t) => Ok(t.clone()),
        None => Ok(host_minor_density(host, opts.cap.unwrap_or(DEFAULT_NABLA_CAP))?),
    }
}

fn sampler(opts: &Opts, s: &Setup) -> Run<Sampler> {
    let seed = need(opts.seed, "seed")?;
    let trials = opts.trials.unwrap_or(100);
    let params = SamplingParams::new(2 * s.r + 2, s.d, seed, trials)?;
    Ok(Sampler::new(&s.rep, &s.orient, params)?)
}

fn sample(opts: &Opts) -> Run<Output> {
    let s = setup(opts)?;
    let beta = host_t(opts, s.rs.host())?;
    let sampler = sampler(opts, &s)?;
    let params = sampler.params;
    let mut junction_free = true;
    for trial in 0..params.trials as u64 {
        let sub = sampler.sample(trial);
        junction_free &= find_junctions(&s.rep, &s.orient, &sub)?.is_empty();
    }
    let density = sampler.density_report(&s.rep.model.pattern, &beta);
    let mut rep = Report::new();
    rep.push("k", params.k)
        .push("d", params.d)
        .push("kd", params.kd())
        .push_rational("p", &params.p())
        .push("seed", params.seed)
        .push("trials", params.trials)
        .extend_from_text(&density.to_string());
    rep.push("junction_free", junction_free);
    Ok(Output::report(&rep, density.pass && junction_free))
}

fn extract(opts: &Opts) -> Run<Output> {
    let s = setup(opts)?;
    let sampler = sampler(opts, &s)?;
    let host = s.rs.host();
    let cap = opts.cap.unwrap_or(DEFAULT_NABLA_CAP);
    let mut nonempty = 0;
    let mut valid = 0;
    let mut minor_checks = 0;
    let mut minors_found = 0;
    let mut models = String::new();
    for trial in 0..sampler.params.trials as u64 {
        let sub = sampler.sample(trial);
        let hm = extract_host_model_for(&s.rep, &s.orient, &sub)?;
        if hm.core.n() == 0 {
            continue;
        }
        nonempty += 1;
        if validate_model(&hm.to_model()).is_ok() {
            valid += 1;
        }
        if host.n() <= cap {
            minor_checks += 1;
            if find_minor_model(host, &hm.core, cap)?.is_some() {
                minors_found += 1;
            }
        }
        models.push_str(&format!("# trial {trial}\n{hm}"));
    }
    let pass = valid == nonempty && minors_found == minor_checks;
    if opts.emit == Emit::Model {
        return Ok(Output { text: models, pass });
    }
    let mut rep = Report::new();
    rep.push("trials", sampler.params.trials)
        .push("nonempty_cores", nonempty)
        .push("valid_models", valid)
        .push("minor_checks", minor_checks)
        .push("minors_found", minors_found)
        .push("verdict", if pass { "pass" } else { "fail" });
    Ok(Output::report(&rep, pass))
}

fn lowerbound(opts: &Opts) -> Run<Output> {
    let d = need(opts.d, "d")?;
    let r = need(opts.r, "r")?;
    let inst = generate(d, r)?;
    let report = verify_lower_bound(&inst);
    let text = match opts.emit {
        Emit::Arrangement => inst.arrangement.to_string(),
        Emit::Model => clique_model(&inst).to_string(),
        Emit::Report | Emit::Dump => report.to_string(),
    };
    Ok(Output { text, pass: report.pass() })
}

fn scol(opts: &Opts) -> Run<Output> {
    let g = load(opts)?.graph();
    let r = need(opts.r, "r")?;
    let cap = opts.cap.unwrap_or(DEFAULT_SCOL_CAP);
    let exact = g.n() <= cap;
    let (value, order) = if exact { scol_exact_with_cap(&g, r, cap)? } else { scol_greedy(&g, r) };
    let mut rep = Report::new();
    rep.push("n", g.n())
        .push("m", g.m())
        .push("r", r)
        .push("method", if exact { "exact" } else { "greedy" })
        .push("scol_r", value)
        .push("order", set_line(order.order()));
    let mut pass = true;
    if exact && r >= 1 && g.n() <= DEFAULT_NABLA_CAP {
        let (nabla, _) = nabla_exact_with(&g, r - 1, NablaOptions { cap: DEFAULT_NABLA_CAP, jobs: opts.jobs })?;
        let bound = bound_scol(r, &nabla)?;
        pass = int(value as i64) <= bound;
        rep.push_rational("nabla_{r-1}", &nabla).push_rational("scol_bound", &bound).push("eq2_pass", pass);
    }
    Ok(Output::report(&rep, pass))
}

fn acyclic(opts: &Opts) -> Run<Output> {
    let g = load(opts)?.graph();
    let cap = opts.cap.unwrap_or(DEFAULT_ACYCLIC_CAP);
    let (chi, colouring) = acyclic_chromatic_with_cap(&g, cap)?;
    let mut rep = Report::new();
    rep.push("n", g.n()).push("m", g.m()).push("chi_a", chi).push("colouring", set_line(&colouring));
    let mut pass = true;
    if g.n() <= DEFAULT_SCOL_CAP {
        let (scol_2, _) = scol_exact_with_cap(&g, 2, DEFAULT_SCOL_CAP)?;
        pass = chi <= scol_2;
        rep.push("scol_2", scol_2).push("eq1_pass", pass);
    }
    Ok(Output::report(&rep, pass))
}

fn bounds(opts: &Opts) -> Run<Output> {
    let d = need(opts.d, "d")?;
    let r = need(opts.r, "r")?;
    let g = opts.g.unwrap_or(0);
    let t = match &opts.t {
        Some(t) if *t < int(1) => return Err(Usage(anyhow!("--t must be at least 1")).into()),
        Some(t) => t.clone(),
        None => genus_density(g),
    };
    let rig_bound = bound_rig(d, r, &t);
    let surface = bound_surface(d, r, g);
    let plane = bound_rig(d, r, &int(3));
    let mut rep = Report::new();
    rep.push("d", d)
        .push("r", r)
        .push("g", g)
        .push_rational("t", &t)
        .push_rational("rig_coefficient", &rig_bound.coefficient)
        .push_rational("rig_upper", &rig_bound.upper)
        .push("rig_approx", approx(&rig_bound.upper, 6))
        .push_rational("genus_density", &genus_density(g))
        .push_rational("surface_coefficient", &surface.coefficient)
        .push_rational("surface_upper", &surface.upper)
        .push_rational("plane_coefficient", &plane.coefficient)
        .push_rational("plane_upper", &plane.upper);
    let mut pass = true;
    if d >= 2 && r >= 1 {
        let lower = bound_lower(d, r)?;
        pass = lower <= plane.upper;
        rep.push_rational("lower_bound", &lower).push("lower_below_plane", pass);
    }
    if r >= 1 {
        // Strong colouring number through the density of (r-1)-shallow minors.
        let scol = bound_scol(r, &bound_rig(d, r - 1, &t).upper)?;
        rep.push("scol_r_bound", rfmt(&scol)).push("scol_r_bound_approx", approx(&scol, 3));
    }
    Ok(Output::report(&rep, pass))
}

fn run_pipeline(opts: &Opts) -> Run<Output> {
    let rs = load(opts)?.regions()?;
    let g = rig(&rs);
    let r = need(opts.r, "r")?;
    let seed = need(opts.seed, "seed")?;
    let mut cfg = PipelineConfig::new(r, seed, opts.trials.unwrap_or(100));
    cfg.t = opts.t.clone();
    if let Some(cap) = opts.cap {
        cfg.t_cap = cap;
        cfg.minor_check_cap = cap;
        cfg.family_cap = cap;
    }
    cfg.models = if opts.model.is_some() {
        ModelSource::Given(vec![model_for(opts, &g)?])
    } else if g.n() <= cfg.family_cap {
        ModelSource::Exhaustive
    } else {
        ModelSource::Random { target: opts.target.unwrap_or(g.n().max(1)) }
    };
    let outcome = pipeline(&rs, &cfg)?;
    Ok(Output::report(&outcome.report(), outcome.pass))
}
