//! `extremal`: batch access to the constructions, matching and deletion tools,
//! and the exhaustive `e(n, s)` search.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use extremal_core::config::Config;
use extremal_core::deletion::deletion_number;
use extremal_core::io::{format_family, parse_family};
use extremal_core::matching::{nu, verify_construction_certificate, verify_weight_certificate};
use extremal_core::search::{conjecture_check, e_exact_with, main_theorem_check, Formulation};
use extremal_core::{Construction, ConstructionKind, ExtremalParams, SetFamily, WeightVector};

#[derive(Parser)]
#[command(name = "extremal", version, about = "Families of subsets of [n] without s pairwise disjoint members")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with keys dense_limit, ens_guard, unrestricted_guard, tie_cap, sample_seed, allow_large.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides `ens_guard`.
    #[arg(long, global = true)]
    ens_guard: Option<usize>,
    /// Overrides `tie_cap`.
    #[arg(long, global = true)]
    tie_cap: Option<usize>,
    /// Overrides `sample_seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Acknowledge an `ens_guard` above the default.
    #[arg(long, global = true)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(short = 'm')]
    m: u32,
    #[arg(short = 'c')]
    c: u32,
    #[arg(short = 's')]
    s: u32,
}

impl ParamArgs {
    fn params(self) -> Result<ExtremalParams> {
        Ok(ExtremalParams::new(self.m, self.c, self.s)?)
    }
}

#[derive(Args)]
struct KindArgs {
    /// P, Pprime (or P'), Q or W.
    #[arg(long)]
    kind: ConstructionKind,
    #[command(flatten)]
    params: ParamArgs,
}

impl KindArgs {
    fn construction(&self) -> Result<Construction> {
        Ok(Construction::new(self.kind, self.params.params()?))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum How {
    Hitting,
    Family,
    Unrestricted,
}

#[derive(Subcommand)]
enum Command {
    /// Write a construction as a family file.
    Construct(KindArgs),
    /// Size and complement size of a construction.
    Size(KindArgs),
    /// Matching number of a family file.
    Nu {
        #[arg(long)]
        family: PathBuf,
        /// Stop once a matching of this size is found.
        #[arg(long)]
        cap: Option<usize>,
        /// Also write the witness as a family file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Check a fractional cover: a construction's own weights by default.
    Certify {
        #[arg(long, conflicts_with = "family")]
        kind: Option<ConstructionKind>,
        #[arg(short = 'm')]
        m: Option<u32>,
        #[arg(short = 'c')]
        c: Option<u32>,
        #[arg(short = 's')]
        s: u32,
        /// Family file to check instead of a construction.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Weights such as "2/3,1/3,1/3"; required with --family.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Deletion number of a family file or a construction.
    DeletionNumber {
        #[arg(long, conflicts_with = "kind")]
        family: Option<PathBuf>,
        #[arg(long)]
        kind: Option<ConstructionKind>,
        #[arg(short = 'm')]
        m: u32,
        /// ℓ; with --kind it defaults to s - c.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(short = 'c')]
        c: Option<u32>,
        #[arg(short = 's')]
        s: Option<u32>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Exact e(n, s).
    Ens {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 's')]
        s: usize,
        /// Emit the whole search report.
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value_t = How::Hitting)]
        formulation: How,
    },
    /// e(ms + c, s) against the four construction sizes.
    VerifyConjecture(ParamArgs),
    /// Whether Q (and W when c = 1) are the only maximum shifted families.
    VerifyMain(ParamArgs),
    /// Sweep construction sizes (and e(n, s) within the guard) over ranges like 1..3.
    Table {
        #[arg(short = 'm')]
        m: String,
        #[arg(short = 'c')]
        c: String,
        #[arg(short = 's')]
        s: String,
        /// Skip the exhaustive search.
        #[arg(long)]
        sizes_only: bool,
    },
}

/// Distinguishes "the check said no" from usage and guard errors.
struct Verdict {
    report: Value,
    ok: bool,
}

fn accept(report: impl Serialize) -> Result<Verdict> {
    Ok(Verdict { report: serde_json::to_value(report)?, ok: true })
}

fn load_config(g: &Global) -> Result<Config> {
    let mut cfg = match &g.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => Config::default(),
    };
    if let Some(v) = g.ens_guard {
        cfg.ens_guard = v;
    }
    if let Some(v) = g.tie_cap {
        cfg.tie_cap = v;
    }
    if let Some(v) = g.seed {
        cfg.sample_seed = v;
    }
    cfg.allow_large |= g.allow_large;
    cfg.validate()?;
    Ok(cfg)
}

fn read_family(path: &Path) -> Result<SetFamily> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_family(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_range(text: &str) -> Result<Vec<u32>> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.trim().parse()?, hi.trim_start_matches('=').trim().parse()?),
        None => {
            let v = text.trim().parse()?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("empty range `{text}`");
    }
    Ok((lo..=hi).collect())
}

fn table(m: &str, c: &str, s: &str, sizes_only: bool, cfg: &Config) -> Result<Verdict> {
    let mut rows = Vec::new();
    for &m in &parse_range(m)? {
        for &s in &parse_range(s)? {
            for &c in &parse_range(c)? {
                if c == 0 || c > s || m == 0 {
                    continue;
                }
                let p = ExtremalParams::new(m, c, s)?;
                let sizes: Vec<_> = ConstructionKind::ALL.iter().map(|&k| Construction::new(k, p).size()).collect();
                let best = sizes.iter().max().unwrap();
                let argmax: Vec<&str> = ConstructionKind::ALL
                    .iter()
                    .zip(&sizes)
                    .filter(|(_, v)| *v == best)
                    .map(|(k, _)| k.name())
                    .collect();
                let (e, holds) = if !sizes_only && p.n() <= cfg.ens_guard {
                    let r = conjecture_check(m, c, s, cfg)?;
                    (Some(r.e_value.to_string()), r.conjecture_holds)
                } else {
                    (None, None)
                };
                rows.push(json!({
                    "m": m, "c": c, "s": s, "n": p.n(), "ell": p.ell(),
                    "P": sizes[0].to_string(), "Pprime": sizes[1].to_string(),
                    "Q": sizes[2].to_string(), "W": sizes[3].to_string(),
                    "max_kinds": argmax.join("+"),
                    "e": e, "conjecture_holds": holds,
                }));
            }
        }
    }
    accept(rows)
}

fn run(command: Command, cfg: &Config) -> Result<Verdict> {
    let cfg = cfg.clone();
    match command {
        Command::Construct(k) => {
            let f = k.construction()?.densify()?;
            Ok(Verdict { report: Value::String(format_family(&f)), ok: true })
        }
        Command::Size(k) => {
            let k = k.construction()?;
            accept(json!({ "family_size": k.size().to_string(), "complement_size": k.complement_size().to_string() }))
        }
        Command::Nu { family, cap, witness_out } => {
            let f = read_family(&family)?;
            let r = nu(&f, cap);
            if let Some(path) = witness_out {
                let w = SetFamily::new(f.n(), r.witness.iter().copied())?;
                fs::write(&path, format_family(&w)).with_context(|| format!("writing {}", path.display()))?;
            }
            accept(r)
        }
        Command::Certify { kind, m, c, s, family, weights } => {
            let parsed = weights.as_deref().map(str::parse::<WeightVector>).transpose()?;
            let r = match (family, kind) {
                (Some(path), _) => {
                    let f = read_family(&path)?;
                    let Some(w) = parsed else { bail!("--family needs --weights") };
                    verify_weight_certificate(&f, &w, s)?
                }
                (None, Some(kind)) => {
                    let (Some(m), Some(c)) = (m, c) else { bail!("--kind needs -m and -c") };
                    let k = Construction::new(kind, ExtremalParams::new(m, c, s)?);
                    let w = parsed.unwrap_or_else(|| k.canonical_weights());
                    verify_construction_certificate(&k, &w, s)?
                }
                (None, None) => bail!("give --kind or --family"),
            };
            let ok = r.accepted;
            Ok(Verdict { report: serde_json::to_value(r)?, ok })
        }
        Command::DeletionNumber { family, kind, m, ell, c, s, budget } => {
            let (f, ell) = match (family, kind) {
                (Some(path), _) => {
                    let Some(ell) = ell else { bail!("--family needs --ell") };
                    (read_family(&path)?, ell)
                }
                (None, Some(kind)) => {
                    let (Some(c), Some(s)) = (c, s) else { bail!("--kind needs -c and -s") };
                    let p = ExtremalParams::new(m, c, s)?;
                    (Construction::new(kind, p).densify()?, ell.unwrap_or(p.ell() as usize))
                }
                (None, None) => bail!("give --family or --kind"),
            };
            accept(deletion_number(&f, m as usize, ell, budget)?)
        }
        Command::Ens { n, s, full, formulation } => {
            let how = match formulation {
                How::Hitting => Formulation::HittingSet,
                How::Family => Formulation::FamilyBranch,
                How::Unrestricted => Formulation::Unrestricted,
            };
            let r = e_exact_with(n, s, &cfg, how)?;
            if full {
                accept(r)
            } else {
                accept(json!({ "e": r.e_value.to_string(), "extremal_kinds": r.extremal_kinds }))
            }
        }
        Command::VerifyConjecture(p) => {
            let r = conjecture_check(p.m, p.c, p.s, &cfg)?;
            let ok = r.conjecture_holds != Some(false);
            Ok(Verdict { report: serde_json::to_value(r)?, ok })
        }
        Command::VerifyMain(p) => accept(main_theorem_check(p.m, p.c, p.s, &cfg)?),
        Command::Table { m, c, s, sizes_only } => table(&m, &c, &s, sizes_only, &cfg),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn to_csv(report: &Value) -> Result<String> {
    let rows: Vec<&serde_json::Map<String, Value>> = match report {
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        Value::Object(obj) => vec![obj],
        _ => bail!("this report has no tabular form"),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        w.write_record(first.keys())?;
        for row in &rows {
            w.write_record(first.keys().map(|k| row.get(k).map(csv_cell).unwrap_or_default()))?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn render(g: &Global, report: &Value) -> Result<String> {
    if let Value::String(family_file) = report {
        return Ok(family_file.clone());
    }
    match g.format {
        Format::Json => Ok(serde_json::to_string(report)? + "\n"),
        Format::Csv => to_csv(report),
    }
}

fn execute(cli: Cli) -> Result<bool> {
    let cfg = load_config(&cli.global)?;
    let verdict = run(cli.command, &cfg)?;
    let text = render(&cli.global, &verdict.report)?;
    match &cli.global.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(verdict.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // --help and --version are not errors
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
