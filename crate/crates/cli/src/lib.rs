//! `es-lab`: command-line frontend for `eslab-core`.
//!
//! Exit codes: 0 success, 1 when a search or series bound was not met (or the
//! run failed for an environmental reason), 2 on bad usage.

pub mod cache;
pub mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use eslab_core::asymptotics::{
    chebyshev_weighted_sum, constant_c, convergence_table, lemma64_pieces, log_spaced, mertens_product, EULER_GAMMA,
};
use eslab_core::estimator::{big_ln, decompose, ghat, ghat_log, ratio_certificate, EXACT_CUTOFF};
use eslab_core::fixtures;
use eslab_core::primes::{primes_up_to, PrimeTable};
use eslab_core::searcher::{build_wheel, default_scan_bound, search, Method, SearchConfig};
use eslab_core::Error;

use crate::cache::Cache;
use crate::record::{emit, Format, OutputRecord};

#[derive(Debug, Parser)]
#[command(name = "es-lab", version, about = "Erdős–Selfridge function g(k) and its estimate ĝ(k)")]
pub struct Cli {
    /// Emit JSON lines (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV with a header row.
    #[arg(long, global = true)]
    pub csv: bool,
    /// JSON-lines results cache (falls back to $ES_LAB_CACHE).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ĝ(k) = M_k/R_k, exactly and in log space.
    Ghat(GhatArgs),
    /// Search for g(k).
    Search(SearchArgs),
    /// Exact ĝ(k+1)/ĝ(k) checks at a prime k+1.
    Ratio(KArg),
    /// The series constant c with a guaranteed enclosure.
    Constant(ConstantArgs),
    /// The a_0p log-factor split into three pieces.
    Pieces(KArg),
    /// log ĝ(k)·ln k / k over log-spaced k.
    Converge(ConvergeArgs),
    /// Σ_{p≤x} ⌊log_p x⌋ ln p.
    Psi(XArg),
    /// ∏_{p≤x} p/(p−1).
    Mertens(XArg),
    /// Published g(376), g(377) beside the exact ĝ values.
    Fixtures,
}

#[derive(Debug, Args)]
pub struct GhatArgs {
    #[arg(long)]
    pub k: u64,
    /// Exact fraction (k ≤ 100000).
    #[arg(long, conflicts_with = "log")]
    pub exact: bool,
    /// Log-space value only.
    #[arg(long)]
    pub log: bool,
    /// Add the three log-factors of the split at √k.
    #[arg(long)]
    pub decompose: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value = "wheel", value_parser = ["naive", "wheel"])]
    pub method: String,
    /// Largest n to try; defaults to 10·⌈ĝ(k)⌉.
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
}

#[derive(Debug, Args)]
pub struct KArg {
    #[arg(long)]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct XArg {
    #[arg(long)]
    pub x: u64,
}

#[derive(Debug, Args)]
pub struct ConstantArgs {
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub kmin: u64,
    #[arg(long)]
    pub kmax: u64,
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_recoverable() => 1,
            Failure::Core(Error::ResourceLimit { .. }) => 1,
            Failure::Core(_) => 2,
            Failure::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

/// Parses `argv` (program name first) and runs one subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "es-lab: {f}");
            f.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let format = if cli.csv { Format::Csv } else { Format::Json };
    let (name, params) = describe(&cli.command);
    let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let probe = OutputRecord::new(name, params.clone(), &timestamp);

    let cache = Cache::from_flag_or_env(cli.cache.as_deref());
    if let Some(cache) = &cache {
        let hits = cache.lookup(&probe)?;
        if !hits.is_empty() {
            writeln!(err, "es-lab: {} cached record(s) from {}", hits.len(), cache.path().display())?;
            emit(&hits, format, out)?;
            return Ok(());
        }
    }

    let records = compute(&cli.command, &probe, err)?;
    if let Some(cache) = &cache {
        cache.append(&records)?;
    }
    emit(&records, format, out)?;
    Ok(())
}

/// Subcommand name and the parameters that determine its results.
fn describe(cmd: &Command) -> (&'static str, Map<String, Value>) {
    let mut p = Map::new();
    let name = match cmd {
        Command::Ghat(a) => {
            p.insert("k".into(), json!(a.k));
            let mode = if a.exact {
                "exact"
            } else if a.log {
                "log"
            } else {
                "auto"
            };
            p.insert("mode".into(), json!(mode));
            p.insert("decompose".into(), json!(a.decompose));
            "ghat"
        }
        Command::Search(a) => {
            p.insert("k".into(), json!(a.k));
            p.insert("method".into(), json!(a.method));
            p.insert("bound".into(), a.bound.map_or(Value::Null, |b| json!(b)));
            "search"
        }
        Command::Ratio(a) => {
            p.insert("k".into(), json!(a.k));
            "ratio"
        }
        Command::Constant(a) => {
            p.insert("tol".into(), json!(a.tol));
            "constant"
        }
        Command::Pieces(a) => {
            p.insert("k".into(), json!(a.k));
            "pieces"
        }
        Command::Converge(a) => {
            p.insert("kmin".into(), json!(a.kmin));
            p.insert("kmax".into(), json!(a.kmax));
            p.insert("points".into(), json!(a.points));
            "converge"
        }
        Command::Psi(a) => {
            p.insert("x".into(), json!(a.x));
            "psi"
        }
        Command::Mertens(a) => {
            p.insert("x".into(), json!(a.x));
            "mertens"
        }
        Command::Fixtures => "fixtures",
    };
    (name, p)
}

fn table(limit: u64) -> Result<PrimeTable, Error> {
    primes_up_to(limit)
}

fn compute(cmd: &Command, probe: &OutputRecord, err: &mut dyn Write) -> Result<Vec<OutputRecord>, Failure> {
    let mut rec = probe.clone();
    match cmd {
        Command::Ghat(a) => {
            let primes = table(a.k)?;
            let exact = a.exact || (!a.log && a.k <= EXACT_CUTOFF);
            if exact {
                let g = ghat(a.k, &primes)?;
                rec.put_big("numerator", g.numerator())
                    .put_big("denominator", g.denominator());
            }
            rec.put_real("log_ghat", ghat_log(a.k, &primes)?);
            if a.decompose {
                let b = decompose(a.k, &primes)?;
                rec.put_real("log_f_small", b.log_f_small)
                    .put_real("log_f1", b.log_f1)
                    .put_real("log_f0", b.log_f0);
            }
        }
        Command::Search(a) => {
            let primes = table(a.k.max(2))?;
            let method: Method = a.method.parse()?;
            let bound = match a.bound {
                Some(b) => b,
                None => default_scan_bound(a.k, &primes)?,
            };
            let mut cfg = SearchConfig::new(a.k, bound, method);
            cfg.workers = a.workers as usize;
            if method == Method::Wheel {
                let w = build_wheel(a.k, &primes, cfg.wheel_budget, cfg.residue_budget)?;
                writeln!(
                    err,
                    "es-lab: wheel modulus {} over primes {:?}, {} residues",
                    w.modulus,
                    w.primes,
                    w.residues.len()
                )?;
            }
            let res = search(&cfg, &primes)?;
            writeln!(err, "es-lab: g({}) found in {:.3?}", a.k, res.elapsed)?;
            let certificate = res
                .certificate
                .iter()
                .map(|w| {
                    let dots = |d: &eslab_core::DigitVector| d.to_string().replace(',', ".");
                    format!("{}:{}<={}", w.p, dots(&w.k_digits), dots(&w.g_digits))
                })
                .collect::<Vec<_>>()
                .join(";");
            rec.put("g", res.g)
                .put("scan_bound", bound)
                .put("candidates_tested", res.candidates_tested)
                .put("certificate_ok", res.verify())
                .put("certificate", certificate);
        }
        Command::Ratio(a) => {
            let primes = table(a.k.saturating_add(1))?;
            let c = ratio_certificate(a.k, &primes)?;
            rec.put("m_identity_ok", c.m_identity_ok)
                .put("r_identity_ok", c.r_identity_ok)
                .put("digit_increment_ok", c.digit_increment_ok)
                .put("bound_ok", c.bound_ok)
                .put_big("ratio_numerator", c.ratio.numerator())
                .put_big("ratio_denominator", c.ratio.denominator())
                .put_big("bound_numerator", c.mertens_lower_bound.numerator())
                .put_big("bound_denominator", c.mertens_lower_bound.denominator())
                .put_real("log_ratio", c.ratio.ln())
                .put_real("log_bound", c.mertens_lower_bound.ln());
        }
        Command::Constant(a) => {
            let c = constant_c(a.tol)?;
            rec.put("value", c.value_string(30))
                .put_real("value_f64", c.value_f64())
                .put_real("lower", c.lower)
                .put_real("upper", c.upper)
                .put("terms_used", c.terms_used);
        }
        Command::Pieces(a) => {
            let primes = table(a.k)?;
            let p = lemma64_pieces(a.k, &primes)?;
            let kf = a.k as f64;
            rec.put_real("piece_tail", p.piece_tail)
                .put_real("piece_logp", p.piece_logp)
                .put_real("piece_neg", p.piece_neg)
                .put_real("f0_direct", p.f0_direct)
                .put_real("pieces_total", p.total())
                .put_real("piece_logp_over_k", p.piece_logp / kf)
                .put_real("f0_normalized", p.f0_direct * kf.ln() / kf);
        }
        Command::Converge(a) => {
            let ks = log_spaced(a.kmin, a.kmax, a.points)?;
            let primes = table(a.kmax)?;
            let pool = rayon_pool(a.workers as usize)?;
            let rows = pool.install(|| convergence_table(&ks, &primes))?;
            return Ok(rows
                .into_iter()
                .map(|row| {
                    let mut r = probe.clone();
                    r.put("k", row.k)
                        .put_real("log_ghat", row.log_ghat)
                        .put_real("normalized", row.normalized);
                    r
                })
                .collect());
        }
        Command::Psi(a) => {
            let primes = table(a.x)?;
            let v = chebyshev_weighted_sum(a.x, &primes)?;
            rec.put_real("value", v).put_real("over_x", v / a.x as f64);
        }
        Command::Mertens(a) => {
            let primes = table(a.x)?;
            let v = mertens_product(a.x, &primes)?;
            rec.put_real("value", v)
                .put_real("over_log_x", v / (a.x as f64).ln())
                .put_real("e_gamma", EULER_GAMMA.exp());
        }
        Command::Fixtures => {
            let primes = table(377)?;
            return fixtures::published_values()
                .into_iter()
                .map(|(k, g_big)| {
                    let gh = ghat(k, &primes)?;
                    let mut r = probe.clone();
                    r.put("k", k)
                        .put_big("g", &g_big)
                        .put_big("ghat_numerator", gh.numerator())
                        .put_big("ghat_denominator", gh.denominator())
                        .put_real("log_ghat", gh.ln())
                        .put_real("log_g", big_ln(&g_big));
                    Ok(r)
                })
                .collect();
        }
    }
    Ok(vec![rec])
}

fn rayon_pool(workers: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::Core(Error::InvalidConfig(format!("thread pool: {e}"))))
}
