use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trl::analytic::{liminf_scan, point_count_bruteforce, point_count_stratified, CountBudget};
use trl::bounds::{chain_report, ChainConfig};
use trl::geometric::{gr_exact, gr_modular, gr_modular_matmul, DEFAULT_PRIMES};
use trl::groebner::BuchbergerConfig;
use trl::io::{read_tensor, serialize_tensor, write_tensor};
use trl::linalg::{primes_in, Prime};
use trl::report::{ArDoc, Budgets, ReportDoc, ScanDoc, ScanRowDoc};
use trl::tensor::{
    hypergraph_tensor, identity_tensor, matmul_shape, matmul_tensor, random_integer_tensor, w_tensor, Hypergraph3,
    Tensor3,
};
use trl::{Error, Result};

#[derive(Parser)]
#[command(name = "trl", version, about = "Geometric and analytic rank of small 3-tensors")]
struct Cli {
    /// Worker threads for the counting kernels (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Maximum S-pairs reduced by Buchberger's algorithm.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_pairs: u64,
    /// Wall-clock limit for a Groebner basis computation.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Vectors enumerated by the stratified counter.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_vectors: u64,
    /// Points enumerated by the brute-force counter.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_points: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a tensor file for one of the built-in families.
    Gen(GenArgs),
    /// Geometric rank.
    Gr(GrArgs),
    /// Point count and analytic rank at one prime.
    Ar(ArArgs),
    /// Analytic rank over a range of primes.
    Scan(ScanArgs),
    /// Full bound chain.
    Chain(ChainArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Identity,
    W,
    Matmul,
    Hypergraph,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// identity: r; matmul: e,h,l; hypergraph: n.
    #[arg(long)]
    params: Option<String>,
    /// random: n1,n2,n3.
    #[arg(long)]
    dims: Option<String>,
    /// random: inclusive coefficient range lo..hi.
    #[arg(long, allow_hyphen_values = true, default_value = "-2..2")]
    coeff_range: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// hypergraph: edges "i,j,k;..." closed under permutation.
    #[arg(long)]
    edges: Option<String>,
    /// Output path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GrMethodArg {
    Exact,
    Modular,
}

#[derive(Args)]
struct GrArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    method: GrMethodArg,
    /// Eliminated axis for the exact method.
    #[arg(long, default_value_t = 2)]
    axis: usize,
    /// Primes for the modular method: "p1,p2,..." or "a..b".
    #[arg(long)]
    primes: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArMethod {
    Stratified,
    Bruteforce,
}

#[derive(Args)]
struct ArArgs {
    input: PathBuf,
    #[arg(long)]
    prime: u64,
    #[arg(long, value_enum, default_value = "stratified")]
    method: ArMethod,
}

#[derive(Args)]
struct ScanArgs {
    input: PathBuf,
    /// "a..b" (inclusive) or "p1,p2,...".
    #[arg(long)]
    primes: String,
}

#[derive(Args)]
struct ChainArgs {
    input: PathBuf,
    /// Optional AR sample primes: "a..b" or "p1,p2,...".
    #[arg(long)]
    primes: Option<String>,
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad {what}: {s:?}")))
        })
        .collect()
}

fn parse_triple(s: Option<&str>, what: &str) -> Result<[usize; 3]> {
    let s = s.ok_or_else(|| Error::InvalidInput(format!("--{what} is required for this family")))?;
    parse_list(s, what)?
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("--{what} needs three values, got {s:?}")))
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidInput(format!("bad range {s:?}, expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_primes(s: &str) -> Result<Vec<Prime>> {
    let raw: Vec<u64> = if let Some((lo, hi)) = s.split_once("..") {
        let bad = || Error::InvalidInput(format!("bad prime range {s:?}"));
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if hi.saturating_sub(lo) > 10_000_000 {
            return Err(Error::InvalidInput(format!("prime range {s:?} too wide")));
        }
        primes_in(lo, hi)
    } else {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad prime list {s:?}")))
            })
            .collect::<Result<_>>()?
    };
    if raw.is_empty() {
        return Err(Error::InvalidInput(format!("no primes in {s:?}")));
    }
    raw.into_iter().map(Prime::new).collect()
}

fn parse_edges(s: &str) -> Result<Vec<[usize; 3]>> {
    s.split(';')
        .filter(|e| !e.trim().is_empty())
        .map(|e| {
            parse_list(e, "edge")?
                .try_into()
                .map_err(|_| Error::InvalidInput(format!("edge {e:?} needs three vertices")))
        })
        .collect()
}

fn generate(args: &GenArgs) -> Result<Tensor3> {
    let params = args.params.as_deref();
    match args.family {
        Family::Identity => {
            let r = parse_list(params.unwrap_or("1"), "params")?;
            match r[..] {
                [r] => identity_tensor(r),
                _ => Err(Error::InvalidInput("identity takes one parameter r".into())),
            }
        }
        Family::W => Ok(w_tensor()),
        Family::Matmul => {
            let [e, h, l] = parse_triple(params, "params")?;
            matmul_tensor(e, h, l)
        }
        Family::Hypergraph => {
            let n = match parse_list(
                params.ok_or_else(|| Error::InvalidInput("hypergraph needs --params n".into()))?,
                "params",
            )?[..]
            {
                [n] => n,
                _ => return Err(Error::InvalidInput("hypergraph takes one parameter n".into())),
            };
            let edges = parse_edges(args.edges.as_deref().unwrap_or(""))?;
            Ok(hypergraph_tensor(&Hypergraph3::symmetric_closure(n, edges)?))
        }
        Family::Random => {
            let dims = parse_triple(args.dims.as_deref(), "dims")?;
            let (lo, hi) = parse_range(&args.coeff_range)?;
            random_integer_tensor(dims, lo, hi, &mut ChaCha8Rng::seed_from_u64(args.seed))
        }
    }
}

struct Ctx {
    groebner: BuchbergerConfig,
    count: CountBudget,
}

impl Ctx {
    fn budgets(&self) -> Budgets {
        Budgets::new(&self.groebner, &self.count)
    }
}

fn input_name(p: &Path) -> Option<String> {
    Some(p.display().to_string())
}

fn run(cli: Cli) -> Result<()> {
    let mut groebner = BuchbergerConfig {
        max_pairs: cli.max_pairs,
        ..Default::default()
    };
    if let Some(s) = cli.budget_seconds {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidInput(format!(
                "--budget-seconds must be positive, got {s}"
            )));
        }
        groebner = groebner.with_time_limit(Duration::from_secs_f64(s));
    }
    let ctx = Ctx {
        groebner,
        count: CountBudget {
            max_vectors: cli.max_vectors,
            max_points: cli.max_points,
        },
    };
    let start = Instant::now();
    let elapsed = || start.elapsed().as_millis() as u64;

    let json = match cli.command {
        Command::Gen(args) => {
            let t = generate(&args)?;
            match &args.out {
                Some(path) => {
                    write_tensor(path, &t)?;
                    eprintln!("wrote {} ({:?}, {} nonzeros)", path.display(), t.dims(), t.nnz());
                }
                None => println!("{}", serialize_tensor(&t)),
            }
            return Ok(());
        }
        Command::Gr(args) => {
            let t = read_tensor(&args.input)?;
            let result = match args.method {
                GrMethodArg::Exact => gr_exact(&t, args.axis, &ctx.groebner)?,
                GrMethodArg::Modular => {
                    let primes = match &args.primes {
                        Some(s) => parse_primes(s)?,
                        None => DEFAULT_PRIMES.iter().map(|&p| Prime::new(p)).collect::<Result<_>>()?,
                    };
                    match matmul_shape(&t) {
                        Some((e, h, l)) => gr_modular_matmul(e, h, l, &primes)?,
                        None => gr_modular(&t, &primes, &ctx.count)?,
                    }
                }
            };
            if !result.consistent {
                eprintln!("warning: per-prime dimension estimates disagree");
            }
            ReportDoc::new("gr", input_name(&args.input), ctx.budgets(), elapsed(), result).to_json()
        }
        Command::Ar(args) => {
            let t = read_tensor(&args.input)?;
            let p = Prime::new(args.prime)?;
            let doc = match args.method {
                ArMethod::Stratified => ArDoc::new("stratified", point_count_stratified(&t, p, None, &ctx.count)?),
                ArMethod::Bruteforce => ArDoc::new("bruteforce", point_count_bruteforce(&t, p, &ctx.count)?),
            };
            ReportDoc::new("ar", input_name(&args.input), ctx.budgets(), elapsed(), doc).to_json()
        }
        Command::Scan(args) => {
            let t = read_tensor(&args.input)?;
            let primes = parse_primes(&args.primes)?;
            let rows: Vec<ScanRowDoc> = liminf_scan(&t, &primes, &ctx.count)
                .into_iter()
                .map(Into::into)
                .collect();
            let failed = rows.iter().filter(|r| r.error.is_some()).count();
            if failed > 0 {
                eprintln!("warning: {failed} of {} primes failed", rows.len());
            }
            let [n1, n2, _] = t.dims();
            let doc = ScanDoc { ambient: n1 + n2, rows };
            ReportDoc::new("scan", input_name(&args.input), ctx.budgets(), elapsed(), doc).to_json()
        }
        Command::Chain(args) => {
            let t = read_tensor(&args.input)?;
            let primes = args.primes.as_deref().map(parse_primes).transpose()?;
            let cfg = ChainConfig {
                groebner: ctx.groebner.clone(),
                budget: ctx.count,
            };
            let mut report = chain_report(&t, primes.as_deref(), &cfg)?;
            report.id = args.input.file_stem().map(|s| s.to_string_lossy().into_owned());
            for m in &report.missing {
                eprintln!("note: {m}");
            }
            ReportDoc::new("chain", input_name(&args.input), ctx.budgets(), elapsed(), report).to_json()
        }
    };
    println!("{json}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
