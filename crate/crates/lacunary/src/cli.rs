//! Command-line front end. Every subcommand prints exactly one JSON
//! [`Report`] on stdout; progress goes to stderr and `--quiet` silences
//! it. Exit codes follow one contract: 0 when the operation succeeds and
//! every asserted property holds, 1 when a property fails, 2 on usage or
//! parse errors. Error paths never emit partial JSON.
//!
//! The `params` block of each report echoes every input after defaulting,
//! so a run can be replayed verbatim from its own output and will
//! reproduce the identical `result` block.

use std::str::FromStr;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::acceptance::{self, Scale};
use crate::construction::{
    build_f, build_f_with_audit, continuum_family, divisibility_witness, generator_sum,
    isolation_certificates, specker_padic,
};
use crate::error::{Error, Result};
use crate::homology::{ce_h2, h2hat_quotient_presentation, lambda2_coinvariants, WindowModel};
use crate::linalg::rational_dependence;
use crate::rank::{finite_rank_decomposition, observed_rank, recompose};
use crate::report::{biseries_json, series_json, Report};
use crate::ring::{Coeff, RingTag};
use crate::series::{BiSeries, LaurentTrunc, TruncSeries};
use crate::sieve::{
    find_sieve_bi, powers_independent, sieve_vs_rank_experiment, verify_sieve_bi,
    ExperimentConfig, ExperimentOutcome, SieveCertificate,
};

/// Buffered outcome of one invocation: at most one JSON document for
/// stdout, progress lines for stderr, and the exit code.
#[derive(Clone, Debug)]
pub struct Dispatch {
    pub stdout: Option<String>,
    pub log: Vec<String>,
    pub code: u8,
}

/// Parse `args` (without the program name), run the named subcommand, and
/// return everything the process should emit. Output is buffered so it can
/// be written once, at completion.
pub fn dispatch(args: &[String]) -> Dispatch {
    let argv = std::iter::once("lacunary".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Dispatch { stdout: Some(e.to_string()), log: Vec::new(), code: 0 }
                }
                _ => Dispatch { stdout: None, log: vec![e.to_string()], code: 2 },
            }
        }
    };
    let clock = Instant::now();
    let name = cli.command.name();
    let mut log = Vec::new();
    match cli.command.execute(&mut log) {
        Ok(output) => {
            let report = Report::new(name, output.params, output.result)
                .verified(output.verified)
                .elapsed_ms(clock.elapsed().as_millis());
            Dispatch {
                stdout: Some(report.to_json_string()),
                log: if cli.quiet { Vec::new() } else { log },
                code: if output.verified { 0 } else { 1 },
            }
        }
        Err(e) => {
            let mut log = if cli.quiet { Vec::new() } else { log };
            log.push(format!("error: {e}"));
            Dispatch { stdout: None, log, code: if e.is_usage() { 2 } else { 1 } }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "lacunary",
    version,
    about = "exact windowed series: sieves, ranks, and homology presentations"
)]
struct Cli {
    /// Suppress progress output on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse truncated series text and apply one arithmetic operation.
    SeriesEval(SeriesEvalArgs),
    /// Observed rank of a bivariate source series.
    Rank(RankArgs),
    /// Finite-rank decomposition of a source series over F_p.
    Decompose(DecomposeArgs),
    /// Scan the antisymmetrized explicit series mod p for a sieve.
    SieveFind(SieveFindArgs),
    /// Re-verify the certificate inside a saved sieve-find report.
    SieveVerify(SieveVerifyArgs),
    /// Assemble a rank-capped random series and scan it for a sieve.
    SieveExperiment(SieveExperimentArgs),
    /// Decide independence of the family U^j V^(n-j) mod p.
    PowersIndep(PowersIndepArgs),
    /// Emit the explicit central series on a window.
    BuildF(BuildFArgs),
    /// Divide the explicit series minus its separable prefix by p.
    Divisibility(DivisibilityArgs),
    /// The p-adic diagonal series with its divisibility report.
    Specker(SpeckerArgs),
    /// Build a continuum-family slice with isolation certificates.
    Continuum(ContinuumArgs),
    /// Coinvariants of the wedge square on a group or completion window.
    Coinvariants(CoinvariantsArgs),
    /// Presentation of the truncated quotient at window N.
    #[command(name = "h2hat-quotient")]
    H2hatQuotient(WindowArgs),
    /// The window complex slice: boundary maps and the H2 rank identity.
    CeH2(WindowArgs),
    /// Run the acceptance suite, or one numbered criterion.
    Acceptance(AcceptanceArgs),
}

struct Output {
    params: Value,
    result: Value,
    verified: bool,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::SeriesEval(_) => "series-eval",
            Command::Rank(_) => "rank",
            Command::Decompose(_) => "decompose",
            Command::SieveFind(_) => "sieve-find",
            Command::SieveVerify(_) => "sieve-verify",
            Command::SieveExperiment(_) => "sieve-experiment",
            Command::PowersIndep(_) => "powers-indep",
            Command::BuildF(_) => "build-f",
            Command::Divisibility(_) => "divisibility",
            Command::Specker(_) => "specker",
            Command::Continuum(_) => "continuum",
            Command::Coinvariants(_) => "coinvariants",
            Command::H2hatQuotient(_) => "h2hat-quotient",
            Command::CeH2(_) => "ce-h2",
            Command::Acceptance(_) => "acceptance",
        }
    }

    fn execute(self, log: &mut Vec<String>) -> Result<Output> {
        match self {
            Command::SeriesEval(a) => series_eval(a, log),
            Command::Rank(a) => rank(a, log),
            Command::Decompose(a) => decompose(a, log),
            Command::SieveFind(a) => sieve_find(a, log),
            Command::SieveVerify(a) => sieve_verify(a, log),
            Command::SieveExperiment(a) => sieve_experiment(a, log),
            Command::PowersIndep(a) => powers_indep(a, log),
            Command::BuildF(a) => build_f_cmd(a, log),
            Command::Divisibility(a) => divisibility(a, log),
            Command::Specker(a) => specker(a, log),
            Command::Continuum(a) => continuum(a, log),
            Command::Coinvariants(a) => coinvariants(a, log),
            Command::H2hatQuotient(a) => h2hat_quotient(a, log),
            Command::CeH2(a) => ce_h2_cmd(a, log),
            Command::Acceptance(a) => acceptance_cmd(a, log),
        }
    }
}

// ---------------------------------------------------------------------------
// Shared argument plumbing.

/// Ring tags in their display spelling: `Z`, `F<p>`, or `Z/<p>^<e>`.
fn parse_ring(text: &str) -> Result<RingTag> {
    let t = text.trim();
    if t == "Z" {
        return Ok(RingTag::IntZ);
    }
    if let Some(rest) = t.strip_prefix("Z/") {
        let (p, e) = rest
            .split_once('^')
            .ok_or_else(|| Error::Parse(format!("ring {t}, expected Z/<p>^<e>")))?;
        let p = p.parse().map_err(|_| Error::Parse(format!("modulus base {p}")))?;
        let e = e.parse().map_err(|_| Error::Parse(format!("modulus exponent {e}")))?;
        return RingTag::zmod_pe(p, e);
    }
    if let Some(rest) = t.strip_prefix('F') {
        if let Ok(p) = rest.parse() {
            return RingTag::fp(p);
        }
    }
    Err(Error::Parse(format!("unrecognized ring {t}, expected Z, F<p>, or Z/<p>^<e>")))
}

fn parse_int_list(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<BigInt>().map_err(|_| Error::Parse(format!("integer list entry {t}")))
        })
        .collect()
}

fn parse_rational_list(text: &str) -> Result<Vec<Ratio<i64>>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            Ratio::<i64>::from_str(t).map_err(|_| Error::Parse(format!("rational entry {t}")))
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    /// The explicit central series.
    #[value(name = "explicit-F", alias = "explicit-f")]
    ExplicitF,
    /// The p-adic diagonal series (square windows only).
    Specker,
}

impl SourceArg {
    fn label(self) -> &'static str {
        match self {
            SourceArg::ExplicitF => "explicit-F",
            SourceArg::Specker => "specker",
        }
    }

    fn build(self, p: Option<u64>, nx: usize, ny: usize) -> Result<BiSeries> {
        match self {
            SourceArg::ExplicitF => build_f(nx, ny),
            SourceArg::Specker => {
                let p = p.ok_or_else(|| Error::Parse("the specker source needs --p".into()))?;
                if nx != ny {
                    return Err(Error::Parse(format!(
                        "the specker source is square, got ({nx}, {ny})"
                    )));
                }
                Ok(specker_padic(p, 0, nx)?.0)
            }
        }
    }
}

fn reduce_opt(f: BiSeries, modulus: Option<u64>) -> Result<BiSeries> {
    match modulus {
        Some(m) => f.reduce_mod(RingTag::fp(m)?),
        None => Ok(f),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report fragments serialize")
}

fn param_u64(params: &Value, key: &str) -> Result<u64> {
    params
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse(format!("report params carry no number {key}")))
}

// ---------------------------------------------------------------------------
// series-eval

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalOp {
    /// Normalize and echo the left operand.
    Echo,
    Add,
    Sub,
    Mul,
    /// Invert the left operand (unit constant term required).
    Invert,
    /// Push the left operand into the --target ring.
    Reduce,
}

impl EvalOp {
    fn label(self) -> &'static str {
        match self {
            EvalOp::Echo => "echo",
            EvalOp::Add => "add",
            EvalOp::Sub => "sub",
            EvalOp::Mul => "mul",
            EvalOp::Invert => "invert",
            EvalOp::Reduce => "reduce",
        }
    }
}

#[derive(Args)]
struct SeriesEvalArgs {
    /// Coefficient ring: Z, F<p>, or Z/<p>^<e>.
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Truncation order; exponents live strictly below it.
    #[arg(long)]
    n: usize,
    /// Left operand, e.g. "1 + 2*x^3 - x^5".
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Right operand, needed by add, sub, and mul.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, value_enum, default_value_t = EvalOp::Echo)]
    op: EvalOp,
    /// Target ring for op = reduce.
    #[arg(long)]
    target: Option<String>,
}

fn series_eval(args: SeriesEvalArgs, log: &mut Vec<String>) -> Result<Output> {
    let ring = parse_ring(&args.ring)?;
    let a = TruncSeries::parse(ring, args.n, &args.a)?;
    let rhs = |text: &Option<String>| -> Result<TruncSeries> {
        let text = text
            .as_deref()
            .ok_or_else(|| Error::Parse(format!("op {} needs --b", args.op.label())))?;
        TruncSeries::parse(ring, args.n, text)
    };
    let out = match args.op {
        EvalOp::Echo => a,
        EvalOp::Add => a.add(&rhs(&args.b)?)?,
        EvalOp::Sub => a.sub(&rhs(&args.b)?)?,
        EvalOp::Mul => a.mul_trunc(&rhs(&args.b)?)?,
        EvalOp::Invert => a.invert_unit()?,
        EvalOp::Reduce => {
            let target = args
                .target
                .as_deref()
                .ok_or_else(|| Error::Parse("op reduce needs --target".into()))?;
            a.reduce_mod(parse_ring(target)?)?
        }
    };
    log.push(format!("{} over {} at order {}", args.op.label(), out.ring(), args.n));
    Ok(Output {
        params: json!({
            "ring": args.ring,
            "n": args.n,
            "a": args.a,
            "b": args.b,
            "op": args.op.label(),
            "target": args.target,
        }),
        result: json!({ "series": series_json(&out), "text": out.to_text() }),
        verified: true,
    })
}

// ---------------------------------------------------------------------------
// rank and decompose

#[derive(Args)]
struct RankArgs {
    /// Source series.
    #[arg(long, value_enum, default_value_t = SourceArg::ExplicitF)]
    source: SourceArg,
    /// Reduce the source mod this prime first; omit to rank over Z.
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Base prime for the specker source.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    nx: usize,
    #[arg(long)]
    ny: usize,
}

fn rank(args: RankArgs, log: &mut Vec<String>) -> Result<Output> {
    let f = reduce_opt(args.source.build(args.p, args.nx, args.ny)?, args.modulus)?;
    log.push(format!(
        "ranking {} over {} at ({}, {})",
        args.source.label(),
        f.ring(),
        args.nx,
        args.ny
    ));
    let report = observed_rank(&f)?;
    log.push(format!("rank {}, stabilized: {}", report.rank, report.stabilized));
    Ok(Output {
        params: json!({
            "source": args.source.label(),
            "mod": args.modulus,
            "p": args.p,
            "nx": args.nx,
            "ny": args.ny,
        }),
        verified: report.stabilized,
        result: to_value(&report),
    })
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long, value_enum, default_value_t = SourceArg::ExplicitF)]
    source: SourceArg,
    /// Prime modulus of the decomposition.
    #[arg(long = "mod")]
    modulus: u64,
    /// Base prime for the specker source.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    nx: usize,
    #[arg(long)]
    ny: usize,
    /// Requested rank; defaults to the observed rank.
    #[arg(long)]
    rank: Option<usize>,
}

fn decompose(args: DecomposeArgs, log: &mut Vec<String>) -> Result<Output> {
    let f = args.source.build(args.p, args.nx, args.ny)?.reduce_mod(RingTag::fp(args.modulus)?)?;
    let requested = match args.rank {
        Some(r) => r,
        None => observed_rank(&f)?.rank,
    };
    let pairs = finite_rank_decomposition(&f, requested)?;
    let exact = recompose(f.ring(), f.nx(), f.ny(), &pairs).eq_checked(&f)?;
    log.push(format!("{requested} outer products over {}, recomposed exactly: {exact}", f.ring()));
    Ok(Output {
        params: json!({
            "source": args.source.label(),
            "mod": args.modulus,
            "p": args.p,
            "nx": args.nx,
            "ny": args.ny,
            "rank": requested,
        }),
        result: json!({
            "rank": requested,
            "pairs": pairs
                .iter()
                .map(|(a, b)| json!({ "x": series_json(a), "y": series_json(b) }))
                .collect::<Vec<_>>(),
            "recomposed": exact,
        }),
        verified: exact,
    })
}

// ---------------------------------------------------------------------------
// The sieve family.

#[derive(Args)]
struct SieveFindArgs {
    /// Prime modulus; also the row count n of the sieve shape.
    #[arg(long)]
    p: u64,
    /// Pillar count of the sieve shape.
    #[arg(long)]
    n: usize,
    /// Gap width of the sieve shape.
    #[arg(long)]
    d: usize,
    #[arg(long)]
    nx: usize,
    #[arg(long)]
    ny: usize,
    /// Degree bound for the pillar dependence scan.
    #[arg(long, default_value_t = 6)]
    deg: usize,
    /// Top offset to scan; defaults to the window limit.
    #[arg(long)]
    m_max: Option<usize>,
}

fn sieve_find(args: SieveFindArgs, log: &mut Vec<String>) -> Result<Output> {
    let f = build_f(args.nx, args.ny)?.reduce_mod(RingTag::fp(args.p)?)?.antisymmetrize()?;
    let span = args.n * args.d + args.d;
    let m_max = match args.m_max {
        Some(m) => m,
        None => args.ny.checked_sub(span + 1).ok_or_else(|| {
            Error::BoundsTooSmall(format!(
                "ny = {} leaves no offset for shape ({}, {})",
                args.ny, args.n, args.d
            ))
        })?,
    };
    log.push(format!(
        "scanning offsets 0..={m_max} for a ({}, {})-sieve mod {}",
        args.n, args.d, args.p
    ));
    let certificate = find_sieve_bi(&f, args.n, args.d, m_max, args.deg)?;
    let verified = match &certificate {
        Some(cert) => {
            log.push(format!("certificate at offset m = {}", cert.m));
            verify_sieve_bi(&f, cert)?
        }
        None => {
            log.push("no sieve in the scanned range".into());
            false
        }
    };
    Ok(Output {
        params: json!({
            "p": args.p,
            "n": args.n,
            "d": args.d,
            "nx": args.nx,
            "ny": args.ny,
            "deg": args.deg,
            "mMax": m_max,
        }),
        result: json!({ "certificate": certificate }),
        verified,
    })
}

#[derive(Args)]
struct SieveVerifyArgs {
    /// Path to a report written by sieve-find.
    #[arg(long)]
    cert: String,
}

fn sieve_verify(args: SieveVerifyArgs, log: &mut Vec<String>) -> Result<Output> {
    let text = std::fs::read_to_string(&args.cert)
        .map_err(|e| Error::Parse(format!("reading {}: {e}", args.cert)))?;
    let doc: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", args.cert)))?;
    let params = doc
        .get("params")
        .ok_or_else(|| Error::Parse(format!("{} has no params block", args.cert)))?;
    let embedded = doc
        .get("result")
        .and_then(|r| r.get("certificate"))
        .filter(|c| !c.is_null())
        .ok_or_else(|| Error::Parse(format!("{} holds no certificate", args.cert)))?;
    let certificate: SieveCertificate = serde_json::from_value(embedded.clone())
        .map_err(|e| Error::Parse(format!("certificate in {}: {e}", args.cert)))?;
    let p = param_u64(params, "p")?;
    let nx = param_u64(params, "nx")? as usize;
    let ny = param_u64(params, "ny")? as usize;
    log.push(format!(
        "rebuilding the source at ({nx}, {ny}) mod {p} and re-checking offset {}",
        certificate.m
    ));
    let f = build_f(nx, ny)?.reduce_mod(RingTag::fp(p)?)?.antisymmetrize()?;
    let holds = verify_sieve_bi(&f, &certificate)?;
    log.push(format!("certificate holds: {holds}"));
    Ok(Output {
        params: json!({ "cert": args.cert }),
        result: json!({ "certificate": certificate, "holds": holds }),
        verified: holds,
    })
}

#[derive(Args)]
struct SieveExperimentArgs {
    #[arg(long, default_value_t = 5)]
    p: u64,
    /// Gap width of the scanned shape.
    #[arg(long, default_value_t = 5)]
    d: usize,
    /// Pillar count of the scanned shape.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Row-space rank cap of the H part.
    #[arg(long, default_value_t = 4)]
    rank_h: usize,
    /// Row-space rank cap of the G part.
    #[arg(long, default_value_t = 4)]
    rank_g: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 160)]
    nx: usize,
    #[arg(long, default_value_t = 120)]
    ny: usize,
    /// Degree bound for pillar dependence scans.
    #[arg(long, default_value_t = 6)]
    deg: usize,
}

fn sieve_experiment(args: SieveExperimentArgs, log: &mut Vec<String>) -> Result<Output> {
    let mut config =
        ExperimentConfig::lamplighter(args.p, args.d, args.n, args.rank_h, args.rank_g, args.seed)?;
    config.nx = args.nx;
    config.ny = args.ny;
    config.degree_bound = args.deg;
    log.push(format!(
        "assembling seed {} at ({}, {}) with rank caps ({}, {})",
        args.seed, args.nx, args.ny, args.rank_h, args.rank_g
    ));
    let trace = sieve_vs_rank_experiment(&config)?;
    let verified = trace.outcome == ExperimentOutcome::NoSieveConfirmed;
    log.push(format!("outcome: {}", if verified { "no sieve" } else { "contradiction" }));
    Ok(Output {
        params: json!({
            "p": args.p,
            "d": args.d,
            "n": args.n,
            "rankH": args.rank_h,
            "rankG": args.rank_g,
            "seed": args.seed,
            "nx": args.nx,
            "ny": args.ny,
            "deg": args.deg,
        }),
        result: json!({
            "outcome": to_value(&trace.outcome),
            "searchedMMax": trace.searched_m_max,
            "basisRows": trace.v_basis.len(),
            "lambdaBlocks": trace.lambda_block_offsets.len(),
            "certificate": trace.certificate,
        }),
        verified,
    })
}

// ---------------------------------------------------------------------------
// powers-indep

#[derive(Args)]
struct PowersIndepArgs {
    /// Coefficients of U, constant term first, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    /// Coefficients of V, constant term first, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long)]
    p: u64,
    /// Exponent of the power family.
    #[arg(long)]
    n: usize,
    /// Skip the proportionality and constant-term guards.
    #[arg(long)]
    raw: bool,
}

fn powers_indep(args: PowersIndepArgs, log: &mut Vec<String>) -> Result<Output> {
    let u = parse_int_list(&args.u)?;
    let v = parse_int_list(&args.v)?;
    let outcome = powers_independent(&u, &v, args.p, args.n, !args.raw)?;
    log.push(format!(
        "powers through exponent {} mod {}: independent = {}",
        args.n, args.p, outcome.independent
    ));
    Ok(Output {
        params: json!({
            "u": args.u,
            "v": args.v,
            "p": args.p,
            "n": args.n,
            "raw": args.raw,
        }),
        verified: outcome.independent,
        result: to_value(&outcome),
    })
}

// ---------------------------------------------------------------------------
// build-f and divisibility

#[derive(Args)]
struct BuildFArgs {
    #[arg(long)]
    nx: usize,
    #[arg(long)]
    ny: usize,
    /// Reduce the series mod this prime.
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Include the collision audit in the result.
    #[arg(long)]
    audit: bool,
}

fn build_f_cmd(args: BuildFArgs, log: &mut Vec<String>) -> Result<Output> {
    let (f, audit) = build_f_with_audit(args.nx, args.ny)?;
    let f = reduce_opt(f, args.modulus)?;
    log.push(format!(
        "{} terms at ({}, {}), {} exponent collisions",
        f.term_count(),
        args.nx,
        args.ny,
        audit.collisions.len()
    ));
    let verified = audit.collisions.is_empty();
    Ok(Output {
        params: json!({
            "nx": args.nx,
            "ny": args.ny,
            "mod": args.modulus,
            "audit": args.audit,
        }),
        result: json!({
            "series": biseries_json(&f),
            "termCount": f.term_count(),
            "audit": args.audit.then(|| to_value(&audit)),
        }),
        verified,
    })
}

#[derive(Args)]
struct DivisibilityArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    nx: usize,
    #[arg(long)]
    ny: usize,
}

fn divisibility(args: DivisibilityArgs, log: &mut Vec<String>) -> Result<Output> {
    let quotient = divisibility_witness(args.p, args.nx, args.ny)?;
    let residual =
        build_f(args.nx, args.ny)?.sub(&generator_sum(args.p as u32 - 1, args.nx, args.ny)?)?;
    let exact = residual.eq_checked(&quotient.scale(&Coeff::Int(BigInt::from(args.p))))?;
    log.push(format!(
        "residual divisible by {}, quotient carries {} terms",
        args.p,
        quotient.term_count()
    ));
    Ok(Output {
        params: json!({ "p": args.p, "nx": args.nx, "ny": args.ny }),
        result: json!({
            "quotient": biseries_json(&quotient),
            "termCount": quotient.term_count(),
            "recomposed": exact,
        }),
        verified: exact,
    })
}

// ---------------------------------------------------------------------------
// specker and continuum

#[derive(Args)]
struct SpeckerArgs {
    #[arg(long)]
    p: u64,
    /// Divisibility cut: the tail past it must be divisible by p^cut.
    #[arg(long)]
    k_cut: u32,
    /// Square truncation window.
    #[arg(long)]
    n: usize,
}

fn specker(args: SpeckerArgs, log: &mut Vec<String>) -> Result<Output> {
    let (f, report) = specker_padic(args.p, args.k_cut, args.n)?;
    log.push(format!(
        "diagonal series at ({0}, {0}): symmetric {1}, tail divisible {2}",
        args.n, report.symmetric, report.residual_divisible
    ));
    let verified = report.symmetric && report.residual_divisible;
    Ok(Output {
        params: json!({ "p": args.p, "kCut": args.k_cut, "n": args.n }),
        result: json!({ "series": biseries_json(&f), "report": to_value(&report) }),
        verified,
    })
}

#[derive(Args)]
struct ContinuumArgs {
    /// Comma-separated rationals, e.g. "-1,0,1/2,1".
    #[arg(long, allow_hyphen_values = true)]
    rationals: String,
    /// Truncation window.
    #[arg(long)]
    n: usize,
    /// Degree bound for the dependence scan.
    #[arg(long, default_value_t = 3)]
    deg: usize,
    /// Also check dependence-absence of the family mod this prime.
    #[arg(long = "mod")]
    modulus: Option<u64>,
}

fn continuum(args: ContinuumArgs, log: &mut Vec<String>) -> Result<Output> {
    let rationals = parse_rational_list(&args.rationals)?;
    let family = continuum_family(&rationals, args.n)?;
    let certificates = isolation_certificates(&family)?;
    log.push(format!(
        "{} members at window {}, every difference isolated",
        family.members.len(),
        args.n
    ));
    let mut verified = true;
    let dependence = match args.modulus {
        Some(p) => {
            let ring = RingTag::fp(p)?;
            let rows: Vec<LaurentTrunc> = family
                .members
                .iter()
                .map(|m| Ok(LaurentTrunc::new(p, 0, m.reduce_mod(ring)?.residues()?)))
                .collect::<Result<_>>()?;
            let witness = rational_dependence(&rows, args.deg, args.n as i64)?;
            verified = witness.certifies_absence();
            log.push(format!("dependence-absence mod {p}: {verified}"));
            Some(json!({ "mod": p, "witness": to_value(&witness) }))
        }
        None => None,
    };
    Ok(Output {
        params: json!({
            "rationals": args.rationals,
            "n": args.n,
            "deg": args.deg,
            "mod": args.modulus,
        }),
        result: json!({
            "rationals": family.rationals.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "members": family.members.iter().map(series_json).collect::<Vec<_>>(),
            "certificates": to_value(&certificates),
            "dependence": dependence,
        }),
        verified,
    })
}

// ---------------------------------------------------------------------------
// The homology windows.

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WindowArg {
    Group,
    Completion,
}

#[derive(Args)]
struct CoinvariantsArgs {
    /// Window kind.
    #[arg(long, value_enum)]
    window: WindowArg,
    /// Group-window width (window = group).
    #[arg(long)]
    width: Option<usize>,
    /// Completion-window truncation (window = completion).
    #[arg(long)]
    truncation: Option<usize>,
}

fn coinvariants(args: CoinvariantsArgs, log: &mut Vec<String>) -> Result<Output> {
    let model = match args.window {
        WindowArg::Group => WindowModel::Group {
            width: args.width.ok_or_else(|| Error::Parse("window group needs --width".into()))?,
        },
        WindowArg::Completion => WindowModel::Completion {
            truncation: args
                .truncation
                .ok_or_else(|| Error::Parse("window completion needs --truncation".into()))?,
        },
    };
    let presentation = lambda2_coinvariants(model)?;
    log.push(format!(
        "{}: free rank {}, torsion factors {}",
        presentation.window,
        presentation.free_rank,
        presentation.torsion_factors.len()
    ));
    Ok(Output {
        params: json!({
            "window": match args.window { WindowArg::Group => "group", WindowArg::Completion => "completion" },
            "width": args.width,
            "truncation": args.truncation,
        }),
        result: to_value(&presentation),
        verified: true,
    })
}

#[derive(Args)]
struct WindowArgs {
    /// Truncation window.
    #[arg(long)]
    n: usize,
}

fn h2hat_quotient(args: WindowArgs, log: &mut Vec<String>) -> Result<Output> {
    let presentation = h2hat_quotient_presentation(args.n)?;
    log.push(format!(
        "window {}: {} generators, free rank {}",
        args.n, presentation.generator_count, presentation.free_rank
    ));
    Ok(Output {
        params: json!({ "n": args.n }),
        result: to_value(&presentation),
        verified: true,
    })
}

fn ce_h2_cmd(args: WindowArgs, log: &mut Vec<String>) -> Result<Output> {
    let (_, report) = ce_h2(args.n)?;
    log.push(format!(
        "window {}: H2 rank {}, chain identity {}, rank identity {}",
        args.n, report.h2_rank, report.chain_identity, report.rank_identity
    ));
    let verified = report.chain_identity && report.rank_identity;
    Ok(Output {
        params: json!({ "n": args.n }),
        verified,
        result: to_value(&report),
    })
}

// ---------------------------------------------------------------------------
// acceptance

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScaleArg {
    Small,
    Full,
}

#[derive(Args)]
struct AcceptanceArgs {
    /// Run a single criterion, 1 through 13.
    #[arg(long)]
    criterion: Option<usize>,
    /// Workload preset; defaults to ACCEPTANCE_SCALE, then full.
    #[arg(long, value_enum)]
    scale: Option<ScaleArg>,
}

fn acceptance_cmd(args: AcceptanceArgs, log: &mut Vec<String>) -> Result<Output> {
    let scale = match args.scale {
        Some(ScaleArg::Small) => Scale::Small,
        Some(ScaleArg::Full) => Scale::Full,
        None => Scale::from_env(),
    };
    let results = match args.criterion {
        Some(index) => vec![acceptance::run(index, scale)?],
        None => acceptance::run_all(scale),
    };
    for r in &results {
        log.push(format!(
            "[{}] criterion {:2}: {} -- {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.index,
            r.name,
            r.detail
        ));
    }
    let all_passed = results.iter().all(|r| r.passed);
    Ok(Output {
        params: json!({ "criterion": args.criterion, "scale": scale.to_string() }),
        result: json!({ "results": to_value(&results), "allPassed": all_passed }),
        verified: all_passed,
    })
}
