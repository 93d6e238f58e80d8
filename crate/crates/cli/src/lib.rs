//! `uniruled` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a usage or input error, 2 when a
//! verification step fails.

use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use uniruled::bundle::{self, BundleContext, BundleInvariants};
use uniruled::classify::{classify, delta_genus, Hypotheses, PolarizedPair, Verdict};
use uniruled::fano::{self, FanoRow, TableReport, CSV_HEADER};
use uniruled::rational::{int, serde_rational};
use uniruled::selftest::{self, SelftestReport};
use uniruled::veronese::{self, GenericDraw, SweepRow, DEFAULT_SEED};
use uniruled::{Error, Rational};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFY: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "uniruled", version, about = "Exact invariants and degree-one uniruledness verdicts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide degree-one uniruledness from (dim, d, n); H is assumed globally generated and big.
    Classify(ClassifyArgs),
    /// Show, verify or export the polarized Q-Fano table.
    FanoTable(FanoArgs),
    /// Intersection invariants of H = aV + 2G on a plane bundle over a genus-g curve.
    Bundle(BundleArgs),
    /// Count reducible fibers of a random hyperplane section of P^2 x P^1.
    Veronese(VeroneseArgs),
    /// Run every reproduction check.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub dim: i64,
    /// d = H^dim
    #[arg(long)]
    pub degree: i64,
    /// n = h^0(H) - 1
    #[arg(long)]
    pub sections: i64,
    #[arg(long)]
    pub smooth: bool,
    #[arg(long)]
    pub very_ample: bool,
    /// X is terminal and Q-factorial.
    #[arg(long)]
    pub terminal: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FanoArgs {
    #[arg(long)]
    pub verify: bool,
    /// Row letter a-t.
    #[arg(long)]
    pub row: Option<char>,
    /// Write the table as CSV to this path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BundleArgs {
    #[arg(long, default_value_t = 0)]
    pub genus: u32,
    /// b in K = bV - 3G (P^2 x P^1 has b = -2).
    #[arg(long, default_value_t = -2, allow_hyphen_values = true)]
    pub twist: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["a", "sweep"])))]
pub struct VeroneseArgs {
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Tabulate the family for a = 1..=A_MAX.
    #[arg(long, value_name = "A_MAX", conflicts_with = "a")]
    pub sweep: Option<u32>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long)]
    pub json: bool,
}

/// JSON view of a table row.
#[derive(Debug, Serialize, Deserialize)]
pub struct RowView {
    pub label: char,
    pub ambient: String,
    pub section: String,
    #[serde(with = "serde_rational")]
    pub rho: Rational,
    #[serde(with = "serde_rational")]
    pub ratio: Rational,
    #[serde(rename = "K2")]
    pub k_squared: u32,
    pub d: u32,
    pub n: u32,
    pub verified: bool,
}

impl RowView {
    fn new(r: &FanoRow) -> Self {
        RowView {
            label: r.label,
            ambient: r.ambient.to_string(),
            section: r.section.to_string(),
            rho: r.rho(),
            ratio: r.ratio(),
            k_squared: r.k_squared,
            d: r.d,
            n: r.n,
            verified: fano::verify_rows(std::slice::from_ref(r)).is_clean(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub dim: i64,
    pub d: i64,
    pub n: i64,
    #[serde(with = "serde_rational")]
    pub delta_genus: Rational,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BundleOutput {
    pub genus: u32,
    pub twist: i64,
    pub a: i64,
    #[serde(with = "serde_rational")]
    pub g_cubed: Rational,
    pub invariants: BundleInvariants,
    pub n_expected_note: String,
    pub chi_identity: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub all_equalities_hold: bool,
}

struct Styler {
    color: bool,
}

impl Styler {
    fn detect() -> Self {
        let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
        Styler {
            color: !no_color && std::io::stdout().is_terminal(),
        }
    }

    fn paint(&self, text: &str, ok: bool) -> String {
        if self.color {
            let code = if ok { 32 } else { 31 };
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::FormulaInconsistency { .. } => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn io_err(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(value).map_err(|e| Failure::Verify(e.to_string()))?;
    writeln!(out, "{s}").map_err(io_err)
}

/// Parse `argv` (including the program name) and run it.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let style = Styler::detect();
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(&a, out),
        Command::FanoTable(a) => cmd_fano(&a, out, &style),
        Command::Bundle(a) => cmd_bundle(&a, out),
        Command::Veronese(a) => cmd_veronese(&a, out, err),
        Command::Selftest(a) => cmd_selftest(&a, out, &style),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFY
        }
    }
}

fn cmd_classify(args: &ClassifyArgs, out: &mut dyn Write) -> CmdResult {
    let flags = Hypotheses {
        globally_generated: true,
        big: true,
        smooth: args.smooth,
        very_ample: args.very_ample,
        terminal_q_factorial: args.terminal,
    };
    let pair = PolarizedPair::new(args.dim, args.degree, args.sections, flags)?;
    let verdict = classify(&pair)?;
    let output = ClassifyOutput {
        dim: pair.dim,
        d: pair.d,
        n: pair.n,
        delta_genus: delta_genus(pair.dim, &int(pair.d), &int(pair.n)),
        verdict,
    };
    if args.json {
        emit_json(out, &output)?;
        return Ok(EXIT_OK);
    }
    let v = &output.verdict;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err);
    w(out, format!("{}", v.outcome))?;
    w(out, format!("  (dim, d, n) = ({}, {}, {}), Delta = {}", pair.dim, pair.d, pair.n, output.delta_genus))?;
    for f in &v.fired_rules {
        w(out, format!("  fired {}: {}", f.rule, f.inequality))?;
    }
    if let Some(b) = &v.clifford_bound {
        w(out, format!("  D.K_S <= d - 2n + 2 = {b}"))?;
    }
    w(out, format!("  {}", v.note))?;
    Ok(EXIT_OK)
}

fn write_csv(path: &PathBuf, rows: &[FanoRow]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Failure::Usage(e.to_string()))?;
    w.write_record(CSV_HEADER).map_err(|e| Failure::Usage(e.to_string()))?;
    for r in rows {
        w.write_record(r.csv_fields()).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    w.flush().map_err(io_err)
}

fn cmd_fano(args: &FanoArgs, out: &mut dyn Write, style: &Styler) -> CmdResult {
    let rows: Vec<&FanoRow> = match args.row {
        Some(l) => vec![fano::row(l)?],
        None => fano::table().iter().collect(),
    };
    if let Some(path) = &args.csv {
        let owned: Vec<FanoRow> = rows.iter().map(|r| (*r).clone()).collect();
        write_csv(path, &owned)?;
    }
    let owned: Vec<FanoRow> = rows.iter().map(|r| (*r).clone()).collect();
    let report: TableReport = fano::verify_rows(&owned);
    let code = if args.verify && !report.is_clean() {
        EXIT_VERIFY
    } else {
        EXIT_OK
    };

    if args.json {
        if args.verify && args.row.is_none() {
            emit_json(out, &report)?;
        } else if args.row.is_some() {
            emit_json(out, &RowView::new(rows[0]))?;
        } else {
            let views: Vec<RowView> = rows.iter().map(|r| RowView::new(r)).collect();
            emit_json(out, &serde_json::json!({ "rows": views }))?;
        }
        return Ok(code);
    }

    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err);
    if args.row.is_some() || !args.verify {
        w(out, format!("{:<5} {:<20} {:<26} {:>5} {:>6} {:>3} {:>3} {:>3}", "type", "T", "S", "rho", "ratio", "K2", "d", "n"))?;
        for r in &rows {
            w(
                out,
                format!(
                    "({})   {:<20} {:<26} {:>5} {:>6} {:>3} {:>3} {:>3}",
                    r.label,
                    r.ambient,
                    r.section,
                    r.rho().to_string(),
                    r.ratio().to_string(),
                    r.k_squared,
                    r.d,
                    r.n
                ),
            )?;
        }
    }
    if args.verify {
        for m in &report.mismatches {
            w(
                out,
                format!("mismatch in ({}): {} stored {} derived {}", m.label, m.field, m.stored, m.derived),
            )?;
        }
        let line = format!("{}/{} rows verified", report.rows_verified, report.rows_checked);
        w(out, style.paint(&line, report.is_clean()))?;
    }
    if let Some(path) = &args.csv {
        w(out, format!("wrote {} rows to {}", rows.len(), path.display()))?;
    }
    Ok(code)
}

fn cmd_bundle(args: &BundleArgs, out: &mut dyn Write) -> CmdResult {
    let ctx = BundleContext::new(args.genus, args.twist);
    let inv = bundle::invariants(&ctx, args.a)?;
    let output = BundleOutput {
        genus: args.genus,
        twist: args.twist,
        a: args.a,
        g_cubed: ctx.g_cubed(),
        chi_identity: bundle::check_identity_chi(&ctx, args.a),
        invariants: inv,
        n_expected_note: "expected, assumes vanishing of h^i(H) for i > 0".into(),
    };
    if !output.chi_identity {
        return Err(Failure::Verify("H^3 = 2 chi(H) - 12(1 - g) fails".into()));
    }
    if args.json {
        emit_json(out, &output)?;
        return Ok(EXIT_OK);
    }
    let i = &output.invariants;
    let lines = [
        format!("P(E) over a genus-{} curve, K = {}V - 3G, H = {}V + 2G", args.genus, args.twist, args.a),
        format!("  G^3              = {}", output.g_cubed),
        format!("  H^3              = {}", i.h_cubed),
        format!("  k (degenerate)   = {}", i.k_degenerate),
        format!("  K_S^2            = {}", i.k_s_squared),
        format!("  c2.H             = {}", i.c2_dot_h),
        format!("  chi(H)           = {}", i.chi_h),
        format!("  n                = {} ({})", i.n_expected, output.n_expected_note),
        format!("  H^3 = 2chi - 12(1-g): {}", output.chi_identity),
    ];
    for l in lines {
        writeln!(out, "{l}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_veronese(args: &VeroneseArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if let Some(a_max) = args.sweep {
        let rows = veronese::sharpness_sweep(a_max)?;
        let ok = rows.iter().all(|r| r.equalities_hold);
        let output = SweepOutput {
            all_equalities_hold: ok,
            rows,
        };
        if args.json {
            emit_json(out, &output)?;
        } else {
            writeln!(out, "{:>4} {:>6} {:>6} {:>7} {:>5} {:>8}", "a", "d", "n", "2n-10", "k", "(n-5)/2").map_err(io_err)?;
            for r in &output.rows {
                writeln!(out, "{:>4} {:>6} {:>6} {:>7} {:>5} {:>8}", r.a, r.d, r.n, r.two_n_minus_10, r.k, r.k_bound)
                    .map_err(io_err)?;
            }
            writeln!(out, "d = 2n - 10 and k = (n - 5)/2 for every row: {ok}").map_err(io_err)?;
        }
        return Ok(if ok { EXIT_OK } else { EXIT_VERIFY });
    }
    let a = args.a.expect("clap requires --a or --sweep");
    let draw: GenericDraw = veronese::generic_fibers(a, args.seed)?;
    if let Some(from) = draw.redrawn_from {
        let _ = writeln!(err, "seed {from} gave a non-squarefree determinant; redrew with seed {}", draw.seed);
    }
    if args.json {
        emit_json(out, &draw)?;
        return Ok(EXIT_OK);
    }
    let r = &draw.report;
    let lines = [
        format!("a = {}, seed = {}", r.a, draw.seed),
        format!("  det degree        = {}", r.det_degree),
        format!("  distinct roots    = {} (expected 3a = {})", r.distinct_roots, r.expected),
        format!("  squarefree        = {}", r.squarefree),
        format!("  k from invariants = {}", r.k_from_invariants),
        format!("  n                 = {}", r.n),
        format!("  k = (n - 5)/2     = {}", r.k_equality),
    ];
    for l in lines {
        writeln!(out, "{l}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_selftest(args: &SelftestArgs, out: &mut dyn Write, style: &Styler) -> CmdResult {
    let report: SelftestReport = selftest::run();
    let code = report.exit_code() as u8;
    if args.json {
        emit_json(out, &report)?;
        return Ok(code);
    }
    for c in &report.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "[{}] {}. {} ({:.3} ms): {}",
            style.paint(tag, c.passed),
            c.id,
            c.name,
            c.elapsed_us as f64 / 1000.0,
            c.detail
        )
        .map_err(io_err)?;
    }
    writeln!(
        out,
        "total {:.3} s (budget {} s)",
        report.total_us as f64 / 1e6,
        selftest::TOTAL_BUDGET.as_secs()
    )
    .map_err(io_err)?;
    Ok(code)
}
