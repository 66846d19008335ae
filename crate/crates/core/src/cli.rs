//! The `ramsey-qubo` command line: generate, build, reduce, precolor,
//! solve, verify and bench.
//!
//! Exit codes: 0 when the command's success predicate holds (energy 0,
//! no monochromatic clique, every benchmark row passing), 1 when it does
//! not, 2 on errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::encode::{
    build_mct, build_ramsey_pubo, ramsey_triangle_chains, reduce_r4, rosenberg_reduce,
    variable_count_paper, variable_count_rosenberg, ReductionMap, RosenbergOptions,
};
use crate::graph::{complete_graph, enumerate_cliques, random_graph, Graph};
use crate::math::goodman_min_triangles;
use crate::poly::text::{PolyFile, PolyFormat};
use crate::poly::{Assignment, VarRegistry};
use crate::precolor::{precolor_star, star_ramsey, PrecolorPlan};
use crate::solve::{
    anneal, brute_force_over, AnnealConfig, AnnealSchedule, BRUTE_FORCE_LIMIT, DEFAULT_RESTARTS,
};
use crate::verify::{count_monochromatic, Coloring};

/// Environment variable holding the default seed.
pub const SEED_ENV: &str = "RAMSEY_QUBO_SEED";

/// Minimum monochromatic triangle counts for K_5 ... K_20 (Table 1).
pub const TABLE1_REFERENCE: [u64; 16] = [0, 2, 4, 8, 12, 20, 28, 40, 52, 70, 88, 112, 136, 168, 200, 240];

#[derive(Parser, Debug)]
#[command(
    name = "ramsey-qubo",
    version,
    about = "Monochromatic-triangle and Ramsey coloring problems as PUBO/QUBO"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a graph file.
    #[command(subcommand)]
    Generate(Generate),
    /// Encode a coloring problem as a polynomial file.
    #[command(subcommand)]
    Build(Build),
    /// Quadratize a problem; writes a QUBO and a reduction-map sidecar.
    #[command(subcommand)]
    Reduce(Reduce),
    /// Fix a monochromatic star in a gadget-reduced R(4) problem.
    Precolor(PrecolorArgs),
    /// Minimize a polynomial file by annealing or exhaustive search.
    Solve(SolveArgs),
    /// Count monochromatic cliques of a coloring.
    Verify(VerifyArgs),
    /// Rerun the triangle benchmarks against their reference values.
    #[command(subcommand)]
    Bench(Bench),
}

#[derive(Subcommand, Debug)]
pub enum Generate {
    /// The complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A random graph keeping each pair with probability `saturation`.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        saturation: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Build {
    /// Monochromatic-triangle QUBO of a graph.
    Mct {
        /// Use K_n.
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        complete: Option<usize>,
        /// Read the graph from a file.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// PUBO counting monochromatic K_n in colorings of K_m.
    Ramsey {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Reduce {
    /// Gadget reduction of the R(4) objective on K_m.
    Gadget {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
        /// Sidecar path; defaults to `<out>.map`.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Rosenberg quadratization of a PUBO file, or of the R(4) objective on
    /// K_m with triangle-first pairing.
    Rosenberg {
        #[arg(long = "in", conflicts_with = "m", required_unless_present = "m")]
        input: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        /// Penalty weight; defaults to 1 + the total coefficient mass.
        #[arg(long)]
        weight: Option<f64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct PrecolorArgs {
    /// Gadget-reduced QUBO file.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Reduction-map sidecar; defaults to `<in>.map`.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Plan file `star <center> <leaf>... color <0|1>`.
    #[arg(long, conflicts_with_all = ["center", "leaves", "star"])]
    pub plan: Option<PathBuf>,
    /// Star center (with --leaves).
    #[arg(long, requires = "leaves")]
    pub center: Option<usize>,
    /// Comma-separated star leaves.
    #[arg(long, value_delimiter = ',', requires = "center")]
    pub leaves: Option<Vec<usize>>,
    /// Star with leaves 0..k at vertex m-1; default: the largest k with
    /// R(S_k) <= m.
    #[arg(long, conflicts_with = "center")]
    pub star: Option<usize>,
    /// 0 (red) or 1 (blue).
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub color: u8,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Polynomial file.
    pub file: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    pub restarts: usize,
    #[arg(long)]
    pub sweeps: Option<usize>,
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Keep launching restarts until the time limit or the known minimum.
    #[arg(long, requires = "time_limit")]
    pub repeat: bool,
    /// Exhaustive search instead of annealing.
    #[arg(long)]
    pub brute: bool,
    /// Assignment output file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Coloring output file (problems with edge variables only).
    #[arg(long)]
    pub coloring: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "complete", required_unless_present = "complete")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub complete: Option<usize>,
    #[arg(long)]
    pub coloring: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum Bench {
    /// Fewest monochromatic triangles in K_n.
    Table1 {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Seconds per trial.
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the rows as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Triangle-free colorings of random graphs.
    Table2 {
        #[arg(long, value_delimiter = ',', default_values_t = [10, 15, 20, 25, 30])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        saturation: f64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        #[arg(long)]
        seed: Option<u64>,
        /// Graph for size n, trial t uses seed `graph_seed + 1000 n + t`.
        #[arg(long, default_value_t = 0)]
        graph_seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

/// Runs one command; `Ok(false)` means it ran but its success predicate
/// failed.
pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Generate(g) => generate(g),
        Command::Build(b) => build(b),
        Command::Reduce(r) => reduce(r),
        Command::Precolor(p) => precolor(p),
        Command::Solve(s) => solve(s),
        Command::Verify(v) => verify(v),
        Command::Bench(b) => bench(b),
    }
}

/// `--seed`, else the environment default, else fresh entropy.
pub fn resolve_seed(flag: Option<u64>) -> Result<(u64, &'static str)> {
    if let Some(s) = flag {
        return Ok((s, "flag"));
    }
    if let Ok(v) = std::env::var(SEED_ENV) {
        let s = v
            .trim()
            .parse()
            .with_context(|| format!("{SEED_ENV}={v} is not an unsigned integer"))?;
        return Ok((s, "environment"));
    }
    Ok((rand::random(), "entropy"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sidecar(out: &Path, map: Option<PathBuf>) -> PathBuf {
    map.unwrap_or_else(|| {
        let mut s = out.as_os_str().to_owned();
        s.push(".map");
        PathBuf::from(s)
    })
}

fn seconds(s: f64) -> Result<Duration> {
    if !(s > 0.0) || !s.is_finite() {
        bail!("time limit must be a positive number of seconds, got {s}");
    }
    Ok(Duration::from_secs_f64(s))
}

fn generate(g: Generate) -> Result<bool> {
    let (graph, out) = match g {
        Generate::Complete { n, out } => (complete_graph(n)?, out),
        Generate::Random {
            n,
            saturation,
            seed,
            out,
        } => {
            let (seed, source) = resolve_seed(seed)?;
            eprintln!("seed: {seed} ({source})");
            (random_graph(n, saturation, seed)?, out)
        }
    };
    write(out.as_deref(), &graph.to_text())?;
    Ok(true)
}

fn build(b: Build) -> Result<bool> {
    let (file, out) = match b {
        Build::Mct {
            complete,
            graph,
            out,
        } => {
            let (g, source) = match (complete, graph) {
                (Some(n), _) => (complete_graph(n)?, format!("complete {n}")),
                (None, Some(path)) => (Graph::parse(&read(&path)?)?, format!("graph {}", path.display())),
                (None, None) => bail!("give --complete or --graph"),
            };
            let q = build_mct(&g);
            if q.poly().is_zero() {
                eprintln!("warning: the graph has no triangles; the objective is zero");
            }
            let file = PolyFile::from_qubo(&q)
                .comment("generator: build mct")
                .comment(format!("input: {source}"))
                .comment(format!("vertices {} edges {}", g.num_vertices(), g.num_edges()));
            (file, out)
        }
        Build::Ramsey { m, n, out } => {
            let p = build_ramsey_pubo(m, n)?;
            let file = PolyFile::new(PolyFormat::Pubo, p)
                .with_registry(VarRegistry::complete(m))
                .comment("generator: build ramsey")
                .comment(format!("m {m} n {n}"));
            (file, out)
        }
    };
    eprintln!(
        "{} variables, {} terms, degree {}",
        file.num_vars(),
        file.poly.num_terms(),
        file.poly.degree()
    );
    write(out.as_deref(), &file.to_text())?;
    Ok(true)
}

fn reduce(r: Reduce) -> Result<bool> {
    match r {
        Reduce::Gadget { m, out, map } => {
            let (q, rmap) = reduce_r4(m)?;
            let file = PolyFile::from_qubo(&q)
                .comment("generator: reduce gadget")
                .comment(format!("m {m}"));
            write(Some(&out), &file.to_text())?;
            write(Some(&sidecar(&out, map)), &rmap.to_text())?;
            println!("{} (formula {})", q.num_vars(), variable_count_paper(m));
        }
        Reduce::Rosenberg {
            input,
            m,
            weight,
            out,
            map,
        } => {
            let (source, registry, chains, mut comments, formula) = match (input, m) {
                (Some(path), _) => {
                    let file = PolyFile::parse(&read(&path)?)?;
                    let registry = file
                        .registry
                        .clone()
                        .unwrap_or_else(|| VarRegistry::plain(file.poly.num_vars()));
                    (file.poly, registry, Vec::new(), file.comments, None)
                }
                (None, Some(m)) => (
                    build_ramsey_pubo(m, 4)?,
                    VarRegistry::complete(m),
                    ramsey_triangle_chains(m),
                    vec![" generator: reduce rosenberg".to_string(), format!(" m {m}")],
                    Some(variable_count_rosenberg(m)),
                ),
                (None, None) => bail!("give --in or --m"),
            };
            let options = RosenbergOptions { weight, chains };
            let (q, rmap) = rosenberg_reduce(&source, &registry, &options)?;
            if !rmap.ancillas.is_empty() {
                comments.push(format!(" rosenberg ancillas {}", rmap.ancillas.len()));
            }
            let mut file = PolyFile::from_qubo(&q);
            file.comments = comments;
            write(Some(&out), &file.to_text())?;
            write(Some(&sidecar(&out, map)), &rmap.to_text())?;
            match formula {
                Some(f) => println!("{} (formula {f})", q.num_vars()),
                None => println!("{} ({} ancillas)", q.num_vars(), rmap.ancillas.len()),
            }
        }
    }
    Ok(true)
}

fn precolor(args: PrecolorArgs) -> Result<bool> {
    let file = PolyFile::parse(&read(&args.input)?)?;
    let q = file.to_qubo()?;
    let map_path = sidecar(&args.input, args.map);
    let rmap = ReductionMap::parse(&read(&map_path)?)?;
    let m = q
        .registry()
        .vertices()
        .ok_or_else(|| anyhow!("{} has no vertex count", args.input.display()))?;
    let plan = if let Some(path) = &args.plan {
        PrecolorPlan::parse(&read(path)?)?
    } else if let (Some(center), Some(leaves)) = (args.center, args.leaves) {
        PrecolorPlan {
            center,
            leaves,
            color: args.color == 1,
        }
    } else {
        let k = match args.star {
            Some(k) => k,
            None => (1..m).take_while(|&k| star_ramsey(k).is_ok_and(|r| r <= m)).last().unwrap_or(0),
        };
        PrecolorPlan {
            color: args.color == 1,
            ..PrecolorPlan::standard(m, k)?
        }
    };
    if !plan.leaves.is_empty() && star_ramsey(plan.leaves.len())? > m {
        eprintln!(
            "warning: K_{m} need not contain a monochromatic S_{}; the optimum may change",
            plan.leaves.len()
        );
    }
    let outcome = precolor_star(&q, &rmap, m, &plan)?;
    let mut out = PolyFile::from_qubo(&outcome.problem);
    out.comments = file.comments.clone();
    out.comments.push(format!(" precolor: {plan}"));
    write(Some(&args.out), &out.to_text())?;
    println!("plan: {plan}");
    println!("fixed edges: {}", outcome.fixed_edges.len());
    println!("forced ancillas: {}", outcome.fixed_ancillas.len());
    println!("eliminated: {}", outcome.eliminated);
    println!("free variables: {}", outcome.problem.num_free_vars());
    Ok(true)
}

/// Solver output: `assignment <num-vars>`, comments, `energy <e>`,
/// `bits <0/1 string>`.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentFile {
    pub comments: Vec<String>,
    pub energy: f64,
    pub assignment: Assignment,
}

impl AssignmentFile {
    pub fn to_text(&self) -> String {
        let mut s = format!("assignment {}\n", self.assignment.len());
        for c in &self.comments {
            let _ = writeln!(s, "#{c}");
        }
        let _ = writeln!(s, "energy {}", self.energy);
        let bits: String = self.assignment.bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
        let _ = writeln!(s, "bits {bits}");
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let n: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("assignment "))
            .ok_or_else(|| anyhow!("expected `assignment <n>` header"))?
            .trim()
            .parse()?;
        let mut comments = Vec::new();
        let mut energy = None;
        let mut bits = None;
        for line in lines {
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.to_string());
            } else if let Some(e) = line.strip_prefix("energy ") {
                energy = Some(e.trim().parse::<f64>()?);
            } else if let Some(b) = line.strip_prefix("bits") {
                let parsed = b
                    .trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(anyhow!("bad bit `{other}`")),
                    })
                    .collect::<Result<Vec<bool>>>()?;
                bits = Some(parsed);
            } else if !line.trim().is_empty() {
                bail!("unexpected line `{line}`");
            }
        }
        let bits = bits.ok_or_else(|| anyhow!("missing `bits` line"))?;
        if bits.len() != n {
            bail!("header declares {n} variables, found {} bits", bits.len());
        }
        Ok(AssignmentFile {
            comments,
            energy: energy.ok_or_else(|| anyhow!("missing `energy` line"))?,
            assignment: Assignment::from_bits(bits),
        })
    }
}

fn solve(args: SolveArgs) -> Result<bool> {
    let file = PolyFile::parse(&read(&args.file)?)?;
    let poly = &file.poly;
    let num_vars = file.num_vars();
    let free: Vec<usize> = (0..num_vars).filter(|v| !file.fixed.contains_key(v)).collect();
    let mut comments = vec![format!(" solve {}", args.file.display())];

    let (mut assignment, energy) = if poly.referenced_vars().is_empty() {
        comments.push(" method: constant".into());
        (Assignment::zeros(num_vars), poly.constant())
    } else if args.brute {
        if free.len() > BRUTE_FORCE_LIMIT {
            bail!(
                "--brute supports at most {BRUTE_FORCE_LIMIT} free variables, the problem has {}",
                free.len()
            );
        }
        comments.push(" method: brute force".into());
        let r = brute_force_over(poly, &free)?;
        println!("minimizers: {}", r.count);
        (r.argmin, r.min)
    } else {
        let (seed, source) = resolve_seed(args.seed)?;
        let schedule = match (args.t_start, args.t_end, args.sweeps) {
            (None, None, None) => None,
            (ts, te, sw) => {
                let d = AnnealSchedule::default_for(poly);
                Some(AnnealSchedule::new(
                    ts.unwrap_or(d.t_start),
                    te.unwrap_or(d.t_end),
                    sw.unwrap_or(d.sweeps),
                )?)
            }
        };
        let config = AnnealConfig {
            schedule,
            restarts: args.restarts,
            seed,
            time_limit: args.time_limit.map(seconds).transpose()?,
            repeat_until_time_limit: args.repeat,
        };
        let used = schedule.unwrap_or_else(|| AnnealSchedule::default_for(poly));
        comments.push(format!(" method: anneal seed {seed} ({source})"));
        comments.push(format!(
            " schedule: t-start {} t-end {} sweeps {} restarts {} time-limit {} repeat {}",
            used.t_start,
            used.t_end,
            used.sweeps,
            args.restarts,
            args.time_limit.map_or("none".to_string(), |t| t.to_string()),
            args.repeat
        ));
        let r = anneal(poly, &config)?;
        println!("seed: {seed} ({source})");
        println!("restarts: {}", r.restarts_used);
        println!("wall time: {:.3} s", r.wall_time.as_secs_f64());
        (r.best_assignment, r.best_energy)
    };
    if assignment.len() < num_vars {
        let mut bits = assignment.into_bits();
        bits.resize(num_vars, false);
        assignment = Assignment::from_bits(bits);
    }
    for (&v, &b) in &file.fixed {
        assignment.set(v, b);
    }
    println!("energy: {energy}");

    let out = AssignmentFile {
        comments: comments.clone(),
        energy,
        assignment: assignment.clone(),
    };
    if let Some(path) = &args.out {
        write(Some(path), &out.to_text())?;
    }
    if let Some(path) = &args.coloring {
        let registry = file
            .registry
            .as_ref()
            .filter(|r| r.vertices().is_some())
            .ok_or_else(|| anyhow!("the problem has no edge variables to color"))?;
        let mut coloring = Coloring::from_assignment(registry, &assignment)?;
        coloring.comments = comments;
        coloring.comments.push(format!(" energy {energy}"));
        write(Some(path), &coloring.to_text())?;
    }
    Ok(energy == 0.0)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let g = match (&args.graph, args.complete) {
        (Some(path), _) => Graph::parse(&read(path)?)?,
        (None, Some(n)) => complete_graph(n)?,
        (None, None) => bail!("give --graph or --complete"),
    };
    let coloring = Coloring::parse(&read(&args.coloring)?)?;
    let report = count_monochromatic(&g, &coloring, args.k)?;
    println!("{report}");
    Ok(report.monochromatic_count == 0)
}

#[derive(Debug, Serialize)]
struct BenchRow {
    suite: &'static str,
    n: usize,
    trial: usize,
    graph_seed: Option<u64>,
    seed: u64,
    edges: usize,
    k6: usize,
    energy: f64,
    reference: Option<u64>,
    pass: bool,
    seconds: f64,
}

fn bench(b: Bench) -> Result<bool> {
    let mut rows = Vec::new();
    let json;
    match b {
        Bench::Table1 {
            n_min,
            n_max,
            trials,
            time_limit,
            seed,
            json: j,
        } => {
            json = j;
            let (seed, source) = resolve_seed(seed)?;
            println!("# bench table1 n {n_min}..{n_max} trials {trials} time-limit {time_limit} s seed {seed} ({source})");
            let limit = seconds(time_limit)?;
            for n in n_min.max(3)..=n_max {
                let q = build_mct(&complete_graph(n)?);
                let reference = TABLE1_REFERENCE.get(n.wrapping_sub(5)).copied();
                for trial in 0..trials {
                    let config = AnnealConfig {
                        seed: seed.wrapping_add(trial as u64),
                        time_limit: Some(limit),
                        repeat_until_time_limit: true,
                        ..Default::default()
                    };
                    let start = Instant::now();
                    let r = anneal(q.poly(), &config)?;
                    rows.push(BenchRow {
                        suite: "table1",
                        n,
                        trial,
                        graph_seed: None,
                        seed: config.seed,
                        edges: q.registry().edge_vars().count(),
                        k6: 0,
                        energy: r.best_energy,
                        pass: reference.map_or(r.best_energy == goodman_min_triangles(n as u64) as f64, |v| {
                            r.best_energy == v as f64
                        }),
                        reference,
                        seconds: start.elapsed().as_secs_f64(),
                    });
                }
            }
        }
        Bench::Table2 {
            sizes,
            saturation,
            trials,
            time_limit,
            seed,
            graph_seed,
            json: j,
        } => {
            json = j;
            let (seed, source) = resolve_seed(seed)?;
            println!(
                "# bench table2 sizes {sizes:?} saturation {saturation} trials {trials} time-limit {time_limit} s seed {seed} ({source}) graph-seed {graph_seed}"
            );
            let limit = seconds(time_limit)?;
            for &n in &sizes {
                for trial in 0..trials {
                    let gs = graph_seed.wrapping_add(1000 * n as u64 + trial as u64);
                    let g = random_graph(n, saturation, gs)?;
                    let q = build_mct(&g);
                    let config = AnnealConfig {
                        seed: seed.wrapping_add(trial as u64),
                        time_limit: Some(limit),
                        repeat_until_time_limit: true,
                        ..Default::default()
                    };
                    let start = Instant::now();
                    let energy = if q.poly().referenced_vars().is_empty() {
                        q.poly().constant()
                    } else {
                        anneal(q.poly(), &config)?.best_energy
                    };
                    rows.push(BenchRow {
                        suite: "table2",
                        n,
                        trial,
                        graph_seed: Some(gs),
                        seed: config.seed,
                        edges: g.num_edges(),
                        k6: enumerate_cliques(&g, 6)?.len(),
                        energy,
                        reference: Some(0),
                        pass: energy == 0.0,
                        seconds: start.elapsed().as_secs_f64(),
                    });
                }
            }
        }
    }

    println!(
        "{:>4} {:>5} {:>6} {:>4} {:>8} {:>9} {:>6} {:>8}  result",
        "n", "trial", "edges", "K6", "found", "reference", "delta", "seconds"
    );
    for r in &rows {
        let (reference, delta) = match r.reference {
            Some(v) => (v.to_string(), format!("{:+}", r.energy - v as f64)),
            None => ("-".into(), "-".into()),
        };
        println!(
            "{:>4} {:>5} {:>6} {:>4} {:>8} {:>9} {:>6} {:>8.2}  {}",
            r.n,
            r.trial,
            r.edges,
            r.k6,
            r.energy,
            reference,
            delta,
            r.seconds,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    let mut by_n: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for r in &rows {
        let e = by_n.entry(r.n).or_default();
        e.0 += usize::from(r.pass);
        e.1 += 1;
    }
    for (n, (pass, total)) in &by_n {
        println!("# n {n}: {pass}/{total} trials at reference");
    }
    if let Some(path) = json {
        write(Some(&path), &(serde_json::to_string_pretty(&rows)? + "\n"))?;
    }
    Ok(rows.iter().all(|r| r.pass))
}
