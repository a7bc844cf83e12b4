use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use finehyp::experiments::{
    analyze, run_amenability, run_decay, sample_pairs, set_jobs, AmenabilityConfig, DecayConfig, LinConstant, ProxySpec,
};
use finehyp::generators::{generate, FamilySpec};
use finehyp::io::{read_action, read_graph, write_action, write_graph};
use finehyp::measure::Rational;
use finehyp::{Error, Graph, Result, VertexId};

/// Geodesics, circuits and shadow measures on fine hyperbolic graphs.
///
/// Exit status: 0 on success, 1 on bad usage or input, 2 when a
/// certification check or a tested bound fails, 3 on an invariant violation.
#[derive(Parser, Debug)]
#[command(name = "finehyp", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate a graph family, writing <out>.graph and, for group actions,
    /// <out>.action.
    Gen {
        /// tree:<deg>:<r>, tube:<deg>:<r>:<w>, farey:<Q>, ladder:<len>:<w>,
        /// bass-serre:<p>:<q>:<r>[:<branch>] or cycle:<len>.
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Thinness defect and fineness profile.
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        /// Circuit length bound.
        #[arg(long)]
        n: usize,
        /// Radius of the ball sampled for the thinness defect.
        #[arg(long, default_value_t = 2)]
        radius: u32,
        /// Centre of that ball.
        #[arg(long, default_value = "0")]
        base: String,
        /// Cap on circuits counted per edge.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        /// Write the per-edge profile CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shadow-measure decay against the averaged bound.
    Decay {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        proxy: ProxyArgs,
        /// Explicit pairs `x:x2,...`; otherwise pairs are sampled.
        #[arg(long)]
        pairs: Option<String>,
        /// Number of sampled pairs.
        #[arg(long, default_value_t = 8)]
        samples: usize,
        /// Sampled first points lie within this distance of the origin.
        #[arg(long, default_value_t = 1)]
        sample_radius: u32,
        /// Distances for sampled pairs.
        #[arg(long, default_value = "1,2")]
        dists: String,
        #[arg(long, default_value = "4,8,16")]
        n_grid: String,
        /// `analytic` or a positive rational.
        #[arg(long, default_value = "analytic")]
        lin_c: String,
        /// Thinness constant; computed from the graph when omitted.
        #[arg(long)]
        delta: Option<u32>,
        /// Ball radius used when computing the thinness constant.
        #[arg(long, default_value_t = 2)]
        delta_radius: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equivariance deficiency of the combined measures for a group action.
    Amenability {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        action: PathBuf,
        #[command(flatten)]
        proxy: ProxyArgs,
        /// Scale of the shadow measures.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Comma-separated words forming E.
        #[arg(long, default_value = "a,b")]
        e: String,
        /// `singleton` or `perm:<size>:<images>;<images>...`.
        #[arg(long, default_value = "singleton")]
        y: String,
        /// Target deficiency for stabilizer measures.
        #[arg(long, default_value = "1/10")]
        epsilon_nu: String,
        /// Word radius for stabilizer enumeration.
        #[arg(long, default_value_t = 4)]
        word_radius: u64,
        /// Vertex points sampled besides the boundary point.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = 2)]
        sample_radius: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const DEFAULT_LIMIT: &str = "20000";

#[derive(Args, Debug)]
struct GraphArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Cache distance rows for graphs up to this many vertices.
    #[arg(long, num_args = 0..=1, default_missing_value = DEFAULT_LIMIT)]
    cache_apsp: Option<usize>,
}

#[derive(Args, Debug)]
struct ProxyArgs {
    /// ray:<len>[:<vertex>] or far:<vertex>.
    #[arg(long)]
    proxy: String,
    /// Origin of the proxy and base point of the measures.
    #[arg(long, default_value = "0")]
    origin: String,
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(args: &GraphArgs) -> Result<Graph> {
    let g = read_graph(&read_text(&args.graph)?)?;
    Ok(match args.cache_apsp {
        Some(limit) => g.with_distance_cache(limit),
        None => g,
    })
}

fn graph_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| "graph".to_string(), |s| s.to_string_lossy().into_owned())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Error::Input(format!("bad {what} {t:?}"))))
        .collect()
}

fn parse_pairs(g: &Graph, s: &str) -> Result<Vec<(VertexId, VertexId)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Input(format!("pair {t:?} must be x:x2")))?;
            Ok((g.resolve(a)?, g.resolve(b)?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        set_jobs(j.max(1));
    }
    match cli.cmd {
        Cmd::Gen { family, out } => {
            let spec: FamilySpec = family.parse()?;
            let gen = generate(&spec)?;
            let with_ext = |ext: &str| {
                let mut p = out.clone().into_os_string();
                p.push(ext);
                PathBuf::from(p)
            };
            std::fs::write(with_ext(".graph"), write_graph(&gen.graph))?;
            if let Some(ad) = &gen.action {
                std::fs::write(with_ext(".action"), write_action(&gen.graph, ad))?;
            }
            println!("family {spec}");
            println!("vertices {}", gen.graph.num_vertices());
            println!("edges {}", gen.graph.num_edges());
            if let Some(sp) = &gen.spine {
                println!(
                    "spine {} {} length {}",
                    gen.graph.name(sp.start()),
                    gen.graph.name(sp.end()),
                    sp.len()
                );
            }
            Ok(true)
        }
        Cmd::Analyze { graph, n, radius, base, cap, out } => {
            let g = load_graph(&graph)?;
            let base = g.resolve(&base)?;
            let report = analyze(&g, n, radius, base, cap)?;
            print!("{}", report.text);
            if let Some(p) = &out {
                std::fs::write(p, &report.profile_csv)?;
            }
            if report.truncated {
                return Err(Error::Certification(format!("circuit enumeration hit the cap {cap}")));
            }
            Ok(true)
        }
        Cmd::Decay {
            graph,
            proxy,
            pairs,
            samples,
            sample_radius,
            dists,
            n_grid,
            lin_c,
            delta,
            delta_radius,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            let origin = g.resolve(&proxy.origin)?;
            let pairs = match pairs {
                Some(p) => parse_pairs(&g, &p)?,
                None => sample_pairs(&g, origin, sample_radius, &parse_list(&dists, "distance")?, samples, seed)?,
            };
            let cfg = DecayConfig {
                graph_name: graph_name(&graph.graph),
                proxy: proxy.proxy.parse::<ProxySpec>()?,
                origin,
                pairs,
                n_grid: parse_list(&n_grid, "n")?,
                lin_c: lin_c.parse::<LinConstant>()?,
                delta,
                delta_radius,
                seed,
            };
            let report = run_decay(&g, &cfg)?;
            emit(&out, &report.csv)?;
            Ok(report.all_pass)
        }
        Cmd::Amenability {
            graph,
            action,
            proxy,
            n,
            e,
            y,
            epsilon_nu,
            word_radius,
            samples,
            sample_radius,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            let ad = read_action(&g, &read_text(&action)?)?;
            let epsilon_nu: Rational = epsilon_nu
                .parse()
                .map_err(|_| Error::Input(format!("bad epsilon {epsilon_nu:?}")))?;
            let cfg = AmenabilityConfig {
                graph_name: graph_name(&graph.graph),
                proxy: proxy.proxy.parse::<ProxySpec>()?,
                origin: g.resolve(&proxy.origin)?,
                n,
                e: e.split(',').map(|w| w.trim().to_string()).filter(|w| !w.is_empty()).collect(),
                y,
                epsilon_nu,
                word_radius,
                vertex_samples: samples,
                sample_radius,
                seed,
            };
            let report = run_amenability(&g, &ad, &cfg)?;
            emit(&out, &report.csv)?;
            eprintln!(
                "eps_zeta {} eps_nu {} deficiency {} bound {}",
                report.eps_zeta, report.eps_nu, report.deficiency, report.bound
            );
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: a tested bound failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
