use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use degree_ramsey::algebraic::{build_hexagon, build_quadrangle, PointLineGraph, ShiftH, ShiftQ};
use degree_ramsey::bounds::{bounds_report, BoundQuery, Rational};
use degree_ramsey::field::PrimeField;
use degree_ramsey::graph::girth;
use degree_ramsey::io::{read_edge_list, write_edge_list, write_labels};
use degree_ramsey::manifest::{load_partition, write_partition};
use degree_ramsey::partition::{
    cover_complete, partition_bipartite_exact, EdgePartition, Host, Part, Target,
};
use degree_ramsey::rainbow::{decompose, DecompositionConfig};
use degree_ramsey::random_cover::{builtin_seed, cover_random, SeedGraph};
use degree_ramsey::verify::{verify_partition, VerificationReport};
use degree_ramsey::Error;

/// High-girth partitions of complete graphs and even-cycle-free
/// decompositions of bounded-degree graphs.
///
/// Exit status: 0 pass, 1 verified failure, 2 usage or input error.
#[derive(Parser, Debug)]
#[command(name = "degree-ramsey", version)]
struct Cli {
    /// Directory for manifests and edge lists.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the girth-8 quadrangle graph Q(q) or a shifted copy.
    BuildQ {
        #[arg(long)]
        q: u64,
        /// Shift `a2,a3`.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
    /// Build the girth-12 hexagon graph H(q) or a shifted copy.
    BuildH {
        #[arg(long)]
        q: u64,
        /// Shift `b2,b3,b4,b5`.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
    },
    /// Partition K_{q^k,q^k} into q^(k-1) shifted copies.
    PartitionBipartite {
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = ["3", "5"])]
        arity: String,
    },
    /// Partition K_n into parts of girth at least 8 or 12.
    CoverComplete {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = ["8", "12"])]
        girth: String,
    },
    /// Partition a graph into parts without a 6- or 10-cycle.
    Decompose(DecomposeArgs),
    /// Cover K_n by random copies of a seed of girth greater than 2k.
    RandomCover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        /// Edge-list file; defaults to the densest built-in seed.
        #[arg(long)]
        seed_graph: Option<PathBuf>,
        /// Safety constant in the copy count.
        #[arg(long = "C", default_value_t = 9.0)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-check a partition manifest from its edge lists.
    Verify {
        #[arg(long)]
        manifest: PathBuf,
        /// Require every part to have no cycle of this length.
        #[arg(long, conflicts_with = "girth")]
        cycle: Option<u32>,
        /// Require every part to have at least this girth.
        #[arg(long)]
        girth: Option<u32>,
    },
    /// Degree Ramsey exponents and bounds for C_2k.
    Bounds {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u64,
        /// Turán constant as an integer or fraction, e.g. `1/2`.
        #[arg(long)]
        ck: Option<String>,
    },
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = ["6", "10"])]
    cycle: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    multiplier: usize,
    #[arg(long, default_value_t = 0.1)]
    retention: f64,
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Algorithmic failures are results; everything else is bad input.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::RetentionFailed { .. }
        | Error::CertificateFailed(_)
        | Error::DecompositionAborted { .. } => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> degree_ramsey::Result<Outcome> {
    fs::create_dir_all(&cli.out).map_err(|e| Error::io(&cli.out, e))?;
    match &cli.command {
        Command::BuildQ { q, shift } => {
            let f = PrimeField::new(*q)?;
            let s = match shift
                .as_deref()
                .map(|t| parse_shift(t, 2))
                .transpose()?
                .as_deref()
            {
                Some(&[a2, a3]) => ShiftQ {
                    alpha2: f.elem_i64(a2),
                    alpha3: f.elem_i64(a3),
                },
                _ => ShiftQ::zero(&f),
            };
            emit_algebraic(&cli.out, "quadrangle", build_quadrangle(*q, s)?)
        }
        Command::BuildH { q, shift } => {
            let f = PrimeField::new(*q)?;
            let s = match shift
                .as_deref()
                .map(|t| parse_shift(t, 4))
                .transpose()?
                .as_deref()
            {
                Some(&[b2, b3, b4, b5]) => ShiftH {
                    beta2: f.elem_i64(b2),
                    beta3: f.elem_i64(b3),
                    beta4: f.elem_i64(b4),
                    beta5: f.elem_i64(b5),
                },
                _ => ShiftH::zero(&f),
            };
            emit_algebraic(&cli.out, "hexagon", build_hexagon(*q, s)?)
        }
        Command::PartitionBipartite { q, arity } => {
            let p = partition_bipartite_exact(*q, arity.parse().expect("validated by clap"))?;
            let report = verify_partition(&p, p.target)
                .with_config("q", q)
                .with_config("arity", arity);
            finish(&cli.out, &p, report, "")
        }
        Command::CoverComplete { n, girth } => {
            let (p, plan) = cover_complete(*n, girth.parse().expect("validated by clap"))?;
            let mut text = String::from("report: cover-complete\n");
            text.push_str(&format!(
                "n: {n}\ntarget_girth: {girth}\nlevels: {}\n",
                plan.levels.len()
            ));
            for l in &plan.levels {
                text.push_str(&format!(
                    "level {}: block={} prime={} parts={}\n",
                    l.level, l.block, l.prime, l.parts
                ));
            }
            let (rate, rate_text) = if girth == "8" {
                (2.0 / 3.0, "2/3")
            } else {
                (4.0 / 5.0, "4/5")
            };
            text.push_str(&format!(
                "total_parts: {}\nrate_exponent: {rate_text}\nparts_over_rate: {:.4}\n",
                plan.total_parts,
                plan.total_parts as f64 / (*n as f64).powf(rate)
            ));
            let report = verify_partition(&p, p.target)
                .with_config("n", n)
                .with_config("girth", girth);
            finish(&cli.out, &p, report, &text)
        }
        Command::Decompose(a) => {
            let g = read_edge_list(&a.input)?;
            let mut cfg = DecompositionConfig::new(a.cycle.parse().expect("validated by clap"))?
                .with_seed(a.seed);
            cfg.color_multiplier = a.multiplier;
            cfg.retention = a.retention;
            cfg.validate()?;
            let start = Instant::now();
            let r = decompose(&g, &cfg)?;
            let mut text = String::from("report: decompose\n");
            text.push_str(&format!(
                "input: {}\nvertices: {}\nedges: {}\nmax_degree: {}\nseed: {}\nrounds: {}\n",
                a.input.display(),
                g.vertex_count(),
                g.edge_count(),
                g.max_degree(),
                a.seed,
                r.rounds.len()
            ));
            text.push_str(&r.round_log_text());
            let delta = g.max_degree().max(1) as f64;
            let rate = if cfg.target_cycle == 6 {
                2.0 / 3.0
            } else {
                4.0 / 5.0
            };
            text.push_str(&format!(
                "closing_forests: {}\ntotal_parts: {}\nnonempty_parts: {}\nrate_exponent: {}\nparts_over_rate: {:.4}\ndecompose_ms: {}\n",
                r.closing_forests,
                r.total_parts,
                r.nonempty_parts(),
                if cfg.target_cycle == 6 { "2/3" } else { "4/5" },
                r.total_parts as f64 / delta.powf(rate),
                start.elapsed().as_millis()
            ));
            finish(&cli.out, &r.partition, r.report.clone(), &text)
        }
        Command::RandomCover {
            n,
            k,
            seed_graph,
            c,
            seed,
        } => {
            let sg = match seed_graph {
                Some(path) => {
                    SeedGraph::new(read_edge_list(path)?, 2 * k + 1, path.display().to_string())?
                }
                None => builtin_seed(*n, *k)?,
            };
            let out = cover_random(*n, &sg, *c, *seed)?;
            let summary = out.summary(Some(*k));
            if !out.success() {
                print!("{summary}");
                println!("result: fail");
                return Ok(Outcome::Fail);
            }
            let p = out.partition();
            let report = verify_partition(&p, p.target)
                .with_config("seed", seed)
                .with_config("C", c);
            finish(&cli.out, &p, report, &summary)
        }
        Command::Verify {
            manifest,
            cycle,
            girth,
        } => {
            let loaded = load_partition(manifest)?;
            let target = match (cycle, girth) {
                (Some(c), _) => Target::CycleFree(*c),
                (_, Some(g)) => Target::Girth(*g),
                _ => loaded.partition.target,
            };
            let report = verify_partition(&loaded.partition, target)
                .with_config("manifest", manifest.display());
            print!("{}", report.to_text(true));
            Ok(if report.passed() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Bounds { k, s, ck } => {
            let c_k = match ck {
                Some(t) => Some(t.parse::<Rational>().map_err(|_| {
                    Error::InvalidArgument(format!("bad --ck `{t}`, expected integer or fraction"))
                })?),
                None => None,
            };
            print!("{}", bounds_report(&BoundQuery { k: *k, s: *s, c_k })?);
            Ok(Outcome::Pass)
        }
    }
}

fn parse_shift(text: &str, len: usize) -> degree_ramsey::Result<Vec<i64>> {
    let values: Vec<i64> = text
        .split(',')
        .map(|v| v.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("bad shift `{text}`")))?;
    if values.len() != len {
        return Err(Error::InvalidArgument(format!(
            "shift needs {len} comma-separated values, got `{text}`"
        )));
    }
    Ok(values)
}

/// Writes the graph, its labels and a one-part manifest claiming the
/// construction's girth.
fn emit_algebraic(out: &Path, name: &str, plg: PointLineGraph) -> degree_ramsey::Result<Outcome> {
    let g = plg.graph();
    write_edge_list(g, out.join("graph.edges"))?;
    write_labels(g, out.join("labels.txt"))?;
    let claimed = plg.geometry().girth();
    let p = EdgePartition {
        host: Host::Explicit(g.clone()),
        target: Target::Girth(claimed),
        parts: vec![Part {
            id: 0,
            edges: g.edge_list(),
        }],
        declared_parts: 1,
    };
    let start = Instant::now();
    let found = girth(g);
    let mut text = format!("report: build\ngraph: {name}\nq: {}\n", plg.q());
    let offsets: Vec<String> = plg
        .shift()
        .offsets()
        .iter()
        .map(|o| o.value().to_string())
        .collect();
    text.push_str(&format!(
        "shift: {}\nvertices: {}\nedges: {}\nmin_degree: {}\nmax_degree: {}\nbipartite: {}\ngirth: {found}\ngirth_ms: {}\n",
        offsets.join(","),
        g.vertex_count(),
        g.edge_count(),
        g.min_degree(),
        g.max_degree(),
        g.contiguous_bipartition().is_some(),
        start.elapsed().as_millis()
    ));
    let report = verify_partition(&p, p.target).with_config("q", plg.q());
    finish(out, &p, report, &text)
}

fn finish(
    out: &Path,
    p: &EdgePartition,
    report: VerificationReport,
    preamble: &str,
) -> degree_ramsey::Result<Outcome> {
    let path = write_partition(out, p, Some(&report))?;
    print!("{preamble}");
    println!("manifest: {}", path.display());
    print!("{}", report.to_text(false));
    Ok(if report.passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}
