//! Batch command line. [`run`] parses arguments, writes artifacts and
//! returns the process exit code: 0 ok, 2 usage, 3 input, 4 guard,
//! 5 numerical failure. Errors go to stderr as one JSON object.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{whisker_decomposition, Graph};
use crate::io::{fmt_float, parse_edge_list, parse_matrix_market, write_edge_list, EdgeList, RunManifest};
use crate::levselect::{
    best_rank_k_errors, column_leverage, cumulative_leverage, default_oversampling, exhaustive_cssp_oracle,
    flag_high_leverage, hybrid_cssp, row_leverage,
};
use crate::lsq::{exact_ls, sampled_ls, srht_ls, LsProblem};
use crate::matcore::{DenseMatrix, Norm};
use crate::ncp::{
    default_scales, generate, merge_profiles, ncp_bag_of_whiskers, ncp_bisect_mqi, ncp_exhaustive,
    ncp_local_spectral_with, GenModel, GenSpec, LocalNcpConfig, NcpProfile, SeedSelection, EXHAUSTIVE_NODE_LIMIT,
};
use crate::Exec;

#[derive(Parser)]
#[command(name = "probekit", version, about = "Leverage-score matrix sampling and graph community profiling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Primary artifact path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Manifest path; defaults to `<out>.manifest.json` when --out is given.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Leverage scores of the top-k singular subspace.
    Leverage {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 2.0)]
        flag_factor: f64,
        /// Score rows (left subspace) instead of columns.
        #[arg(long)]
        rows: bool,
        /// Cumulative-leverage CSV; defaults to `<out>.cumulative.csv`.
        #[arg(long)]
        cumulative: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Select exactly k columns.
    Cssp {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(short)]
        k: usize,
        /// Number of sampling draws.
        #[arg(short)]
        c: Option<usize>,
        #[arg(long)]
        seed: u64,
        /// Also report the exhaustive Frobenius optimum.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Overdetermined least squares.
    #[command(group(ArgGroup::new("solver").required(true).args(["r", "exact", "srht"])))]
    Lsq {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Rows drawn by leverage sampling.
        #[arg(short, requires = "seed")]
        r: Option<usize>,
        #[arg(long)]
        exact: bool,
        /// Rows kept after a randomized Hadamard transform.
        #[arg(long, requires = "seed")]
        srht: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also report the exact residual.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Network community profile.
    Ncp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = NcpMethod::All)]
        method: NcpMethod,
        #[arg(long, default_value_t = 10)]
        seeds_per_scale: usize,
        /// Target volumes, comma separated; doubling from 4 by default.
        #[arg(long, value_delimiter = ',')]
        scales: Option<Vec<f64>>,
        /// Pick local seeds at random with this seed instead of by degree.
        #[arg(long)]
        random_seeds: Option<u64>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// JSON dump of the sets behind every profile point.
        #[arg(long)]
        sets: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Whisker decomposition.
    Whiskers {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Synthetic graph as an edge list.
    Gen {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        average_degree: Option<f64>,
        #[arg(long, default_value_t = 0.37)]
        forward: f64,
        #[arg(long, default_value_t = 0.32)]
        backward: f64,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long)]
        core_nodes: Option<usize>,
        #[arg(long, default_value_t = 3)]
        core_degree: usize,
        #[arg(long, value_delimiter = ',')]
        whisker_sizes: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NcpMethod {
    LocalSpectral,
    BisectMqi,
    Bow,
    Exhaustive,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Er,
    ChungLu,
    ForestFire,
    Lattice,
    WhiskeredExpander,
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.into())
    }
}

struct Ctx {
    manifest: RunManifest,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        self.manifest.add_input(&path.display().to_string(), &bytes);
        String::from_utf8(bytes).map_err(|_| Error::InvalidInput(format!("{}: not UTF-8", path.display())))
    }

    fn matrix(&mut self, path: &Path) -> Result<DenseMatrix> {
        parse_matrix_market(&self.read(path)?)
    }

    fn graph(&mut self, path: &Path) -> Result<EdgeList> {
        parse_edge_list(&self.read(path)?)
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            return report(&Failure::Usage(e.to_string()));
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx { manifest: RunManifest::new(argv) };
    let result = match cli.command {
        Command::Leverage { matrix, k, flag_factor, rows, cumulative, output } => {
            leverage(&mut ctx, &matrix, k, flag_factor, rows, cumulative, &output).map(|()| output)
        }
        Command::Cssp { matrix, k, c, seed, exhaustive, output } => {
            cssp(&mut ctx, &matrix, k, c, seed, exhaustive, &output).map(|()| output)
        }
        Command::Lsq { matrix, rhs, r, exact, srht, seed, oracle, output } => {
            let solver = match (r, srht) {
                (Some(r), _) => Solver::Sampled(r, seed.expect("clap requires seed")),
                (_, Some(r)) => Solver::Srht(r, seed.expect("clap requires seed")),
                _ => {
                    debug_assert!(exact);
                    Solver::Exact
                }
            };
            lsq(&mut ctx, &matrix, &rhs, solver, oracle, &output).map(|()| output)
        }
        Command::Ncp { graph, method, seeds_per_scale, scales, random_seeds, depth, sets, output } => {
            let opts = NcpOptions { method, seeds_per_scale, scales, random_seeds, depth };
            ncp(&mut ctx, &graph, opts, sets.as_deref(), &output).map(|()| output)
        }
        Command::Whiskers { graph, output } => whiskers(&mut ctx, &graph, &output).map(|()| output),
        Command::Gen {
            model,
            seed,
            n,
            p,
            beta,
            average_degree,
            forward,
            backward,
            rows,
            cols,
            core_nodes,
            core_degree,
            whisker_sizes,
            output,
        } => {
            let params = GenParams {
                model,
                seed,
                n,
                p,
                beta,
                average_degree,
                forward,
                backward,
                rows,
                cols,
                core_nodes,
                core_degree,
                whisker_sizes,
            };
            gen(&mut ctx, params, &output).map(|()| output)
        }
    };
    match result {
        Ok(output) => {
            ctx.manifest.wall_time_seconds = start.elapsed().as_secs_f64();
            let path = output.manifest.clone().or_else(|| output.out.as_ref().map(|o| suffixed(o, ".manifest.json")));
            if let Some(path) = path {
                if let Err(e) = std::fs::write(&path, ctx.manifest.to_json()) {
                    return report(&Failure::Run(e.into()));
                }
            }
            0
        }
        Err(f) => report(&f),
    }
}

fn report(f: &Failure) -> i32 {
    let (kind, message, code) = match f {
        Failure::Usage(m) => ("usage", m.trim_end().to_string(), 2),
        Failure::Run(e) => (e.kind(), e.to_string(), e.exit_code()),
    };
    eprintln!("{}", json!({ "error": kind, "message": message, "exit_code": code }));
    code
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn emit(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn leverage(
    ctx: &mut Ctx,
    matrix: &Path,
    k: usize,
    factor: f64,
    rows: bool,
    cumulative: Option<PathBuf>,
    output: &Output,
) -> Result<(), Failure> {
    let a = ctx.matrix(matrix)?;
    let profile = if rows { row_leverage(&a, k)? } else { column_leverage(&a, k)? };
    let len = profile.scores.len();
    let flagged = flag_high_leverage(&profile, len, factor);
    let mut is_flagged = vec![false; len];
    flagged.iter().for_each(|&i| is_flagged[i] = true);
    let axis = if rows { "row" } else { "column" };
    ctx.manifest.parameters = json!({ "k": k, "flag_factor": factor, "axis": axis });

    let mut csv = format!("# index is the 0-based {axis} index; flagged means score > {factor}*{k}/{len}\n");
    csv.push_str("index,score,flagged\n");
    for (i, s) in profile.scores.iter().enumerate() {
        writeln!(csv, "{i},{},{}", fmt_float(*s), is_flagged[i]).unwrap();
    }
    emit(output.out.as_deref(), &csv)?;

    let cum_path = cumulative.or_else(|| output.out.as_ref().map(|o| suffixed(o, ".cumulative.csv")));
    if let Some(path) = cum_path {
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by(|&i, &j| profile.scores[j].total_cmp(&profile.scores[i]).then(i.cmp(&j)));
        let sums = cumulative_leverage(&profile);
        let mut c = String::from("# rank and index are 0-based; scores sorted descending, ties by index\n");
        c.push_str("rank,index,score,cumulative\n");
        for (r, (&i, s)) in order.iter().zip(&sums).enumerate() {
            writeln!(c, "{r},{i},{},{}", fmt_float(profile.scores[i]), fmt_float(*s)).unwrap();
        }
        std::fs::write(path, c)?;
    }
    Ok(())
}

fn cssp(
    ctx: &mut Ctx,
    matrix: &Path,
    k: usize,
    c: Option<usize>,
    seed: u64,
    exhaustive: bool,
    output: &Output,
) -> Result<(), Failure> {
    let a = ctx.matrix(matrix)?;
    let c = c.unwrap_or_else(|| default_oversampling(k));
    ctx.manifest.seed = Some(seed);
    ctx.manifest.parameters = json!({ "k": k, "c": c, "exhaustive": exhaustive });
    let sel = hybrid_cssp(&a, k, Some(c), seed)?;
    let (spectral, frobenius) = best_rank_k_errors(&a, k)?;
    let mut out = json!({
        "k": k,
        "c": c,
        "seed": seed,
        "indices": sel.indices,
        "scales": sel.scales,
        "error_spectral": sel.error_spectral,
        "error_frobenius": sel.error_frobenius,
        "best_rank_k_errors": { "spectral": spectral, "frobenius": frobenius },
    });
    if exhaustive {
        let best = exhaustive_cssp_oracle(&a, k, Norm::Frobenius, Exec::default())?;
        out["exhaustive"] = json!({
            "indices": best.indices,
            "error_spectral": best.error_spectral,
            "error_frobenius": best.error_frobenius,
        });
    }
    emit(output.out.as_deref(), &to_json(&out))?;
    Ok(())
}

enum Solver {
    Exact,
    Sampled(usize, u64),
    Srht(usize, u64),
}

fn lsq(ctx: &mut Ctx, matrix: &Path, rhs: &Path, solver: Solver, oracle: bool, output: &Output) -> Result<(), Failure> {
    let a = ctx.matrix(matrix)?;
    let b = ctx.matrix(rhs)?;
    if b.rows() != 1 && b.cols() != 1 {
        return Err(Error::DimensionMismatch(format!("rhs must be a vector, got {}x{}", b.rows(), b.cols())).into());
    }
    let problem = LsProblem::new(a, b.data().to_vec())?;
    let (name, sol) = match solver {
        Solver::Exact => ("exact", exact_ls(&problem)?),
        Solver::Sampled(r, seed) => {
            ctx.manifest.seed = Some(seed);
            ctx.manifest.parameters = json!({ "r": r });
            ("sampled", sampled_ls(&problem, r, seed)?)
        }
        Solver::Srht(r, seed) => {
            ctx.manifest.seed = Some(seed);
            ctx.manifest.parameters = json!({ "r": r });
            ("srht", srht_ls(&problem, r, seed)?)
        }
    };
    let mut out = json!({
        "method": name,
        "x": sol.x,
        "residual": sol.residual_norm,
        "sampled_rows": sol.sampled_rows,
        "seed": sol.seed,
    });
    if oracle {
        out["oracle_residual"] = json!(exact_ls(&problem)?.residual_norm);
    }
    emit(output.out.as_deref(), &to_json(&out))?;
    Ok(())
}

struct NcpOptions {
    method: NcpMethod,
    seeds_per_scale: usize,
    scales: Option<Vec<f64>>,
    random_seeds: Option<u64>,
    depth: usize,
}

fn ncp(ctx: &mut Ctx, path: &Path, opts: NcpOptions, sets: Option<&Path>, output: &Output) -> Result<(), Failure> {
    let el = ctx.graph(path)?;
    let g = &el.graph;
    let scales = opts.scales.clone().unwrap_or_else(|| default_scales(g));
    let config = LocalNcpConfig {
        seed_selection: opts.random_seeds.map_or(SeedSelection::Stratified, SeedSelection::Random),
        exec: Exec::default(),
    };
    ctx.manifest.seed = opts.random_seeds;
    ctx.manifest.parameters = json!({
        "method": opts.method.to_possible_value().map(|v| v.get_name().to_string()),
        "seeds_per_scale": opts.seeds_per_scale,
        "scales": scales,
        "depth": opts.depth,
        "epsilon_rule": "1/(10*scale)",
        "self_loops_dropped": el.self_loops_dropped,
        "parallel_merged": el.parallel_merged,
    });
    let local = || ncp_local_spectral_with(g, opts.seeds_per_scale, &scales, config);
    let profiles: Vec<NcpProfile> = match opts.method {
        NcpMethod::LocalSpectral => vec![local()?],
        NcpMethod::BisectMqi => vec![ncp_bisect_mqi(g, opts.depth)?],
        NcpMethod::Bow => vec![ncp_bag_of_whiskers(g)?],
        NcpMethod::Exhaustive => {
            let e = ncp_exhaustive(g)?;
            vec![e.any, e.connected]
        }
        NcpMethod::All => {
            let mut ps = vec![local()?, ncp_bisect_mqi(g, opts.depth)?, ncp_bag_of_whiskers(g)?];
            if g.node_count() <= EXHAUSTIVE_NODE_LIMIT {
                ps.push(ncp_exhaustive(g)?.any);
            }
            vec![merge_profiles(&ps)?]
        }
    };

    let mut rows: Vec<_> = profiles.iter().flat_map(|p| p.points.iter()).collect();
    rows.sort_by(|a, b| a.0.cmp(b.0).then(a.1.method.cmp(&b.1.method)));
    let mut csv = String::from("# k is the set size; node ids in the set dump are 0-based in first-appearance order\n");
    csv.push_str("k,conductance,method\n");
    for (k, p) in &rows {
        writeln!(csv, "{k},{},{}", fmt_float(p.conductance), p.method).unwrap();
    }
    emit(output.out.as_deref(), &csv)?;

    if let Some(path) = sets {
        let dump: Vec<_> = rows
            .iter()
            .map(|(k, p)| {
                json!({
                    "k": k,
                    "conductance": p.conductance,
                    "method": p.method,
                    "nodes": p.nodes,
                    "labels": p.nodes.as_slice().iter().map(|&v| &el.labels[v]).collect::<Vec<_>>(),
                })
            })
            .collect();
        std::fs::write(path, to_json(&dump))?;
    }
    Ok(())
}

fn whiskers(ctx: &mut Ctx, path: &Path, output: &Output) -> Result<(), Failure> {
    let el = ctx.graph(path)?;
    let g: &Graph = &el.graph;
    let d = whisker_decomposition(g)?;
    let mut in_whisker = vec![false; g.node_count()];
    for w in &d.whiskers {
        w.nodes.as_slice().iter().for_each(|&v| in_whisker[v] = true);
    }
    let whisker_nodes = in_whisker.iter().filter(|&&b| b).count();
    let whisker_edges = g.edges().filter(|&(u, v, _)| in_whisker[u] || in_whisker[v]).count();
    let list: Vec<_> = d
        .whiskers
        .iter()
        .map(|w| {
            json!({
                "size": w.nodes.len(),
                "volume": w.volume,
                "bridge": [w.bridge.0, w.bridge.1],
                "bridge_weight": w.bridge_weight,
                "nodes": w.nodes,
            })
        })
        .collect();
    let out = json!({
        "core_size": d.core.len(),
        "whiskers": list,
        "bridge_count": d.bridge_edges.len(),
        "node_fraction": whisker_nodes as f64 / g.node_count() as f64,
        "edge_fraction": if g.edge_count() == 0 { 0.0 } else { whisker_edges as f64 / g.edge_count() as f64 },
    });
    emit(output.out.as_deref(), &to_json(&out))?;
    Ok(())
}

struct GenParams {
    model: Model,
    seed: Option<u64>,
    n: Option<usize>,
    p: Option<f64>,
    beta: Option<f64>,
    average_degree: Option<f64>,
    forward: f64,
    backward: f64,
    rows: Option<usize>,
    cols: Option<usize>,
    core_nodes: Option<usize>,
    core_degree: usize,
    whisker_sizes: Vec<usize>,
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("error: this model requires --{flag}")))
}

fn gen(ctx: &mut Ctx, p: GenParams, output: &Output) -> Result<(), Failure> {
    let model = match p.model {
        Model::Er => GenModel::Er { n: need(p.n, "n")?, p: need(p.p, "p")? },
        Model::ChungLu => GenModel::ChungLu {
            n: need(p.n, "n")?,
            beta: need(p.beta, "beta")?,
            average_degree: need(p.average_degree, "average-degree")?,
        },
        Model::ForestFire => GenModel::ForestFire { n: need(p.n, "n")?, forward: p.forward, backward: p.backward },
        Model::Lattice => GenModel::Lattice { rows: need(p.rows, "rows")?, cols: need(p.cols, "cols")? },
        Model::WhiskeredExpander => GenModel::WhiskeredExpander {
            core_nodes: need(p.core_nodes, "core-nodes")?,
            core_degree: p.core_degree,
            whisker_sizes: p.whisker_sizes,
        },
    };
    let seed = match (p.model, p.seed) {
        (Model::Lattice, s) => s.unwrap_or(0),
        (_, s) => need(s, "seed")?,
    };
    let spec = GenSpec { model, seed };
    let out = generate(&spec)?;
    ctx.manifest.seed = Some(seed);
    ctx.manifest.parameters = json!({
        "spec": spec,
        "nodes": out.graph.node_count(),
        "edges": out.graph.edge_count(),
        "dropped_nodes": out.dropped_nodes,
        "planted_whiskers": out.planted_whiskers,
    });
    emit(output.out.as_deref(), &write_edge_list(&out.graph))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["probekit", "bogus"]), 2);
        assert_eq!(run(["probekit", "cssp", "--matrix", "x.mtx", "-k", "2"]), 2);
        assert_eq!(run(["probekit", "lsq", "--matrix", "a", "--rhs", "b", "-r", "5"]), 2);
        assert_eq!(run(["probekit", "gen", "--model", "er", "--n", "5", "--p", "0.5"]), 2);
    }

    #[test]
    fn missing_file_is_input_error() {
        assert_eq!(run(["probekit", "whiskers", "--graph", "/nonexistent/g.tsv"]), 3);
    }

    #[test]
    fn suffix_keeps_extension() {
        assert_eq!(suffixed(Path::new("a/b.csv"), ".manifest.json"), PathBuf::from("a/b.csv.manifest.json"));
    }
}
