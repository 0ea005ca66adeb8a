use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hamcomp::autgroup::DEFAULT_CAP;
use hamcomp::compression::{Limits, Mode};
use hamcomp::hamlift::DEFAULT_ENUMERATION_LIMIT;
use hamcomp_cli::commands::{self, CommandError, FamilySpec};
use hamcomp_cli::verify::{self, Job, Options, VerificationRecord};

#[derive(Parser)]
#[command(name = "hamcomp", version, about = "Hamilton compression of vertex-transitive graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and write its edge list plus a `.json` sidecar.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hamilton compression of a graph.
    Kappa {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "lift")]
        mode: ModeArg,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Orders of semiregular automorphisms.
    Sem {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        group_cap: u64,
    },
    /// Compression factors over all Hamilton cycles.
    Ham {
        graph: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// LCF notation of a cubic graph along its best certified cycle.
    Lcf {
        graph: PathBuf,
        /// Space-separated vertex sequence to use instead.
        #[arg(long)]
        cycle: Option<String>,
    },
    /// Check stated compression values against computation.
    Verify(VerifyArgs),
    /// Record whether the twisted rotation of Y(q,p) acts on Z(q,p).
    ProbeZsigma {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        t: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Lift,
    Exhaustive,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, default_value_t = DEFAULT_CAP)]
    group_cap: u64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: u64,
}

impl From<&LimitArgs> for Limits {
    fn from(a: &LimitArgs) -> Limits {
        Limits { group_cap: a.group_cap, enumeration_limit: a.limit }
    }
}

#[derive(Args)]
struct FamilyArgs {
    /// xmnr, yqp, zqp, gp, petersen, circulant, triple, orbit or cayleyp3.
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    t: Option<u32>,
    /// Connection set, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    s_prime: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t_set: Vec<i64>,
    /// Neighbours of the origin as `row:col` pairs, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    neighbors: Vec<(u64, u64)>,
    #[arg(long)]
    variant: Option<String>,
    #[arg(long, value_delimiter = ',')]
    words: Vec<String>,
}

fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected row:col, got {s:?}"))?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    Thm22,
    Thm31,
    Thm43,
    Prop21,
    Prop42,
    Petersen,
    Circulant,
    ZsigmaProbe,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    claim: Claim,
    /// Symmetry orders for thm22.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 4, 5, 6])]
    k: Vec<u64>,
    #[arg(long, default_value_t = 50)]
    p_max: u64,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 2)]
    t: u32,
    #[arg(long, default_value_t = 300)]
    max_vertices: usize,
    /// Seconds allowed per instance.
    #[arg(long, default_value_t = 300)]
    time_budget: u64,
    /// Include instances beyond desk scale.
    #[arg(long)]
    large: bool,
    /// Suppress the per-record summary on standard error.
    #[arg(long)]
    quiet: bool,
}

fn verify_jobs(a: &VerifyArgs) -> Vec<Job> {
    let yz = |a: &VerifyArgs| match (a.q, a.p) {
        (Some(q), Some(p)) => vec![(q, p, a.t)],
        _ => verify::thm31_default_instances(a.large),
    };
    match a.claim {
        Claim::Thm22 => verify::thm22_jobs(&a.k, a.p_max),
        Claim::Thm31 => verify::thm31_jobs(&yz(a)),
        Claim::Thm43 => verify::thm43_jobs(),
        Claim::Prop21 => verify::prop21_jobs(),
        Claim::Prop42 => verify::prop42_jobs(a.p.unwrap_or(3)),
        Claim::Petersen => verify::petersen_jobs(),
        Claim::Circulant => verify::circulant_jobs(),
        Claim::ZsigmaProbe => verify::zsigma_jobs(&yz(a)),
    }
}

fn summarize(r: &VerificationRecord) -> String {
    format!(
        "{:<20} {} {} predicted={} {} computed={} ({} ms)",
        serde_json::to_value(r.status).unwrap().as_str().unwrap_or(""),
        r.claim,
        r.params,
        r.predicted,
        match r.relation {
            verify::Relation::Eq => "==",
            verify::Relation::Ge => "<=",
        },
        r.computed,
        r.wall_ms
    )
}

fn run(cli: Cli) -> Result<(serde_json::Value, i32), CommandError> {
    let parse_cycle = |s: &str| -> Result<Vec<usize>, CommandError> {
        s.split_whitespace()
            .map(|t| t.parse().map_err(|e| CommandError::input(format!("cycle entry {t:?}: {e}"))))
            .collect()
    };
    Ok(match cli.command {
        Command::Construct { family, out } => {
            let spec = FamilySpec {
                family: family.family,
                m: family.m,
                n: family.n,
                r: family.r,
                q: family.q,
                p: family.p,
                t: family.t,
                s: family.s,
                s_prime: family.s_prime,
                t_set: family.t_set,
                neighbors: family.neighbors,
                variant: family.variant,
                words: family.words,
            };
            (commands::construct(&spec, &out)?, 0)
        }
        Command::Kappa { graph, mode, limits } => {
            let mode = match mode {
                ModeArg::Lift => Mode::Lift,
                ModeArg::Exhaustive => Mode::Exhaustive,
            };
            (commands::kappa(&commands::load_graph(&graph)?, mode, (&limits).into())?, 0)
        }
        Command::Sem { graph, group_cap } => (commands::sem(&commands::load_graph(&graph)?, group_cap)?, 0),
        Command::Ham { graph, limits } => (commands::ham(&commands::load_graph(&graph)?, (&limits).into())?, 0),
        Command::Lcf { graph, cycle } => {
            let g = commands::load_graph(&graph)?;
            let cycle = cycle.as_deref().map(parse_cycle).transpose()?;
            (commands::lcf_report(&g, cycle)?, 0)
        }
        Command::Verify(a) => {
            let opts = Options {
                max_vertices: a.max_vertices,
                time_budget: Duration::from_secs(a.time_budget),
                large: a.large,
            };
            let records = verify::run_jobs(verify_jobs(&a), &opts);
            if !a.quiet {
                for r in &records {
                    eprintln!("{}", summarize(r));
                }
            }
            let code = verify::exit_code(&records);
            (json!({"schema": 1, "records": records}), code)
        }
        Command::ProbeZsigma { q, p, t } => {
            let probe = verify::probe_zsigma(q, p, t);
            let code = if probe.error.is_some() { 2 } else { 0 };
            (json!({"schema": 1, "probe": probe}), code)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((report, code)) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
