use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use ratball::lattice::{class_counts_by_ambient, linear_lattice, SearchLimits, DEFAULT_MAX_NODES};
use ratball::markov::{self, BallSpec, MarkovTriple};
use ratball::obstruction::{self, Strategy, Verdict};
use ratball::{contfrac, plumbing, Error};
use serde::Serialize;

use ratball_cli::output::*;

const EXIT_USAGE: u8 = 1;
const EXIT_LIMIT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Markov triples, rational balls in CP² and the lattice embedding obstruction.
#[derive(Debug, Parser)]
#[command(name = "ratball", version)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunConfig {
    /// Node budget for lattice searches.
    #[arg(long, global = true, env = "RATBALL_NODES", default_value_t = DEFAULT_MAX_NODES,
          value_parser = clap::value_parser!(u64).range(1..))]
    nodes: u64,
    /// Time budget for lattice searches, in seconds.
    #[arg(long, global = true, env = "RATBALL_TIME", value_name = "SECONDS",
          value_parser = clap::value_parser!(u64).range(1..))]
    time: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print timings and search statistics on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

impl RunConfig {
    fn limits(&self) -> SearchLimits {
        SearchLimits { max_nodes: self.nodes, max_time: self.time.map(Duration::from_secs) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Markov triples.
    #[command(subcommand)]
    Markov(MarkovCmd),
    /// The balls B(p,q).
    #[command(subcommand)]
    Ball(BallCmd),
    /// Hirzebruch–Jung continued fractions.
    #[command(subcommand)]
    Cf(CfCmd),
    /// Embeddings of linear lattices into Z^m.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Linear plumbing chains.
    #[command(subcommand)]
    Plumbing(PlumbingCmd),
    /// Runs the lattice obstruction on a disjoint union of balls, given as P,Q pairs.
    Obstruct {
        #[arg(required = true, value_name = "P,Q")]
        balls: Vec<List<u64>>,
        /// Enumerate the whole direct sum instead of using the complement.
        #[arg(long)]
        direct: bool,
    },
    /// Reproduces the worked cases.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
enum MarkovCmd {
    /// Every triple with maximum at most N.
    List {
        #[arg(long, value_name = "N")]
        max: BigUint,
    },
    /// The characteristic number of the triple with maximum P.
    Char { p: BigUint, a: BigUint, b: BigUint },
}

#[derive(Debug, Subcommand)]
enum BallCmd {
    /// Whether B(P,Q) embeds symplectically in CP².
    Classify { p: BigUint, q: BigUint },
    /// The boundary lens space L(P², PQ−1).
    Boundary { p: BigUint, q: BigUint },
    /// Weights of the positive-definite plumbing with the same boundary.
    Plumbing { p: BigUint, q: BigUint },
}

#[derive(Debug, Subcommand)]
enum CfCmd {
    /// Expansion of P/Q.
    Expand { p: BigUint, q: BigUint },
    /// Value of [A1,A2,...].
    Eval {
        #[arg(value_name = "A1,A2,...")]
        coefficients: List<u64>,
    },
    /// The two odd-Fibonacci expansions for N.
    FibIdentities { n: u64 },
}

#[derive(Debug, Subcommand)]
enum LatticeCmd {
    /// Embedding classes of Λ(W1,...) in Z^M.
    Classes {
        #[arg(long, value_name = "W1,W2,...", allow_hyphen_values = true)]
        weights: List<i64>,
        #[arg(long, value_name = "M")]
        ambient: usize,
        /// Also count classes in Z^(M+1) .. Z^(M+K).
        #[arg(long, value_name = "K", default_value_t = 0)]
        stabilize: usize,
    },
}

#[derive(Debug, Subcommand)]
enum PlumbingCmd {
    /// Blows down −1 vertices until none remain.
    Reduce {
        #[arg(value_name = "W1,W2,...", allow_hyphen_values = true)]
        weights: List<i64>,
    },
    /// Reduction certificate for the rational blow-up chain of B(F(2N+1),F(2N−1)).
    Certify { n: usize },
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// The ball B(3,1).
    ExampleB31,
    /// Classification of Λ(3^(N-1),2,2,3^(N-1),2) in Z^M.
    LemmaCemb { n: usize, m: usize },
    /// The union B(F(2K+1),F(2K−1)) ⊔ B(F(2N+1),F(2N−1)).
    Theorem2 { k: u64, n: u64 },
}

/// A comma-separated list, e.g. `-3,-2,-1`.
#[derive(Debug, Clone)]
struct List<T>(Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: std::fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<T>().map_err(|e| format!("'{x}': {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(List)
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => EXIT_USAGE,
            Error::LimitExceeded { .. } => EXIT_LIMIT,
            Error::Internal(_) => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ratball: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit<T: Serialize>(cfg: &RunConfig, value: &T, text: impl FnOnce() -> String) {
    let out = match cfg.format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize"),
        Format::Text => text(),
    };
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{}", out.trim_end());
}

fn note(cfg: &RunConfig, msg: impl FnOnce() -> String) {
    if cfg.verbose > 0 {
        eprintln!("{}", msg());
    }
}

fn run(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    match &cli.command {
        Command::Markov(MarkovCmd::List { max }) => {
            let triples = markov::enumerate_triples(max.clone())?;
            note(cfg, || format!("{} triples", triples.len()));
            emit(cfg, &triples, || lines(&triples));
        }
        Command::Markov(MarkovCmd::Char { p, a, b }) => {
            let triple = MarkovTriple::new(a.clone(), b.clone(), p.clone())?;
            if triple.largest() != p {
                return Err(usage(format!("{p} is not the maximum of {triple}")));
            }
            let u = markov::characteristic_number(&triple)?;
            let report = CharReport { triple, u };
            emit(cfg, &report, || report.u.to_string());
        }
        Command::Ball(BallCmd::Classify { p, q }) => {
            let ball = BallSpec::new(p.clone(), q.clone())?;
            let verdict = markov::classify_symplectic(&ball, p.clone())?;
            let report = ClassifyReport { ball, verdict };
            emit(cfg, &report, || classify_text(&report));
        }
        Command::Ball(BallCmd::Boundary { p, q }) => {
            let ball = BallSpec::new(p.clone(), q.clone())?;
            let (lp, lq) = obstruction::ball_boundary(&ball);
            let report = LensSpace { p: lp, q: lq };
            emit(cfg, &report, || format!("L({},{})", report.p, report.q));
        }
        Command::Ball(BallCmd::Plumbing { p, q }) => {
            let e = obstruction::ball_plumbing(&BallSpec::new(p.clone(), q.clone())?)?;
            emit(cfg, &e, || e.to_string());
        }
        Command::Cf(CfCmd::Expand { p, q }) => {
            let e = contfrac::hj_expand(p.clone(), q.clone())?;
            emit(cfg, &e, || e.to_string());
        }
        Command::Cf(CfCmd::Eval { coefficients }) => {
            let e = contfrac::HJExpansion::new(coefficients.0.clone())?;
            let f = contfrac::hj_eval(&e);
            emit(cfg, &f, || f.to_string());
        }
        Command::Cf(CfCmd::FibIdentities { n }) => {
            let (short, long) = contfrac::fibonacci_identities(*n)?;
            let report = FibReport {
                n: *n,
                short_value: contfrac::hj_eval(&short),
                short,
                long_value: contfrac::hj_eval(&long),
                long,
            };
            emit(cfg, &report, || fib_text(&report));
        }
        Command::Lattice(LatticeCmd::Classes { weights, ambient, stabilize }) => {
            let report = obstruction::classification_report(&weights.0, *ambient, cfg.limits())?;
            let counts = if *stabilize > 0 {
                Some(class_counts_by_ambient(&linear_lattice(&weights.0)?, *ambient, *stabilize, cfg.limits())?)
            } else {
                None
            };
            note(cfg, || stats_line(&report.stats));
            let report = LatticeReport { classification: report, counts };
            emit(cfg, &report, || lattice_text(&report));
        }
        Command::Plumbing(PlumbingCmd::Reduce { weights }) => {
            let start = plumbing::PlumbingChain::new(weights.0.clone());
            let (final_chain, blowdowns) = plumbing::reduce(&start);
            let report = ReduceReport { start, final_chain, blowdowns };
            emit(cfg, &report, || format!("{} after {} blowdowns", report.final_chain, report.blowdowns));
        }
        Command::Plumbing(PlumbingCmd::Certify { n }) => {
            let cert = plumbing::simple_embedding_certificate(*n)?;
            emit(cfg, &cert, || certificate_text(&cert));
        }
        Command::Obstruct { balls, direct } => {
            let balls = balls
                .iter()
                .map(|pq| match pq.0.as_slice() {
                    &[p, q] => BallSpec::new(p, q).map_err(Failure::from),
                    _ => Err(usage(format!("expected P,Q, got {} numbers", pq.0.len()))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let problem = obstruction::build_problem(&balls)?;
            let strategy = if *direct { Strategy::Direct } else { Strategy::Complement };
            let (report, elapsed) = obstruction::check_obstruction_timed(&problem, cfg.limits(), strategy)?;
            note(cfg, || format!("{}, {elapsed:.2?}", stats_line(&report.stats)));
            emit(cfg, &report, || obstruction_text(&report));
            return Ok(verdict_code(report.verdict));
        }
        Command::Verify(VerifyCmd::ExampleB31) => {
            let report = obstruction::example_b31(cfg.limits())?;
            emit(cfg, &report, || b31_text(&report));
            return Ok(verdict_code(report.obstruction.verdict));
        }
        Command::Verify(VerifyCmd::LemmaCemb { n, m }) => {
            let report = obstruction::lemma_cemb_report(*n, *m, cfg.limits())?;
            note(cfg, || stats_line(&report.stats));
            emit(cfg, &report, || classification_text(&report));
        }
        Command::Verify(VerifyCmd::Theorem2 { k, n }) => {
            let problem =
                obstruction::build_problem(&[obstruction::fibonacci_ball(*k)?, obstruction::fibonacci_ball(*n)?])?;
            let (report, elapsed) = obstruction::check_obstruction_timed(&problem, cfg.limits(), Strategy::Complement)?;
            note(cfg, || format!("{}, {elapsed:.2?}", stats_line(&report.stats)));
            emit(cfg, &report, || obstruction_text(&report));
            return Ok(verdict_code(report.verdict));
        }
    }
    Ok(0)
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Inconclusive(_) => EXIT_LIMIT,
        _ => 0,
    }
}
