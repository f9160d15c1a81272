//! Command-line front end. [`run`] is the whole program minus process exit.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::atlas::{Context, OrbitLabel, OrientedLinkPattern, TwoColumnTableau, DEFAULT_ENUMERATION_CAP};
use crate::error::Error;
use crate::exact::resolution_blueprint;
use crate::linalg::Rational;
use crate::perm::ReducedWord;
use crate::poset::{hasse, leq_witness};
use crate::suites::{run_all, SuiteResult};
use crate::tangent::{
    bk_span, t_k_table, tangent_dim_upper, tangent_lower_bound, verdict, weight_decomposition, TkRow,
    Verdict, VerdictReport, WeightBlock,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_IO: i32 = 4;

const DEFAULT_SAMPLES: &str = "1,-1,2,1/3";

#[derive(Parser, Debug)]
#[command(name = "nilbruhat", version, about = "Borel orbits in rank-k square-zero matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true)]
    pub n: Option<usize>,

    #[arg(long, global = true)]
    pub k: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Largest n for which full enumeration is allowed.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,

    /// Comma-separated rational sample points for curve checks.
    #[arg(long, global = true, default_value = DEFAULT_SAMPLES, allow_hyphen_values = true)]
    pub samples: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every orbit label with dimension, tableau and link pattern.
    Enumerate,
    /// Decide A ⪯ B and print a certificate.
    Order { a: String, b: String },
    /// Hasse diagram with singularity flags.
    Hasse,
    /// t_k set, tangent bounds, B_k span and weight blocks of one label.
    Tangent { label: String },
    /// Verdict for every label.
    Smooth,
    /// Run every self-check; nonzero exit on failure.
    Verify,
    /// Orbital varieties and Springer fiber bookkeeping.
    Springer,
    /// Incidence system of the resolution over a reduced word.
    Blueprint { label: String, word: String },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Lib(e) if e.is_cap() => EXIT_CAP,
            Failure::Lib(_) | Failure::Usage(_) => EXIT_BAD_INPUT,
            Failure::Io(..) => EXIT_IO,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_BAD_INPUT
                }
            };
        }
    };
    match execute(&cli) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| Failure::Io(path.clone(), e)),
                None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Io("<stdout>".into(), e)),
            };
            match written {
                Err(f) => {
                    let _ = writeln!(stderr, "error: {}", f.message());
                    f.code()
                }
                Ok(()) if ok => EXIT_OK,
                Ok(()) => EXIT_VERIFY_FAILED,
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn context(cli: &Cli) -> Result<Context, Failure> {
    let n = cli.n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
    let k = cli.k.ok_or_else(|| Failure::Usage("--k is required".into()))?;
    if cli.cap == 0 {
        return Err(Failure::Usage("--cap must be positive".into()));
    }
    Ok(Context::new(n, k)?)
}

fn parse_samples(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<Rational>()
                .map_err(|_| Failure::Usage(format!("bad sample {t:?}")))
        })
        .collect()
}

fn json_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.to_vec(), &mut out);
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn no_dot(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Format::Dot {
        return Err(Failure::Usage("--format dot is only available for hasse".into()));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<(String, bool), Failure> {
    let ctx = context(cli)?;
    match &cli.command {
        Command::Enumerate => enumerate(cli, &ctx).map(|t| (t, true)),
        Command::Order { a, b } => order(cli, &ctx, a, b).map(|t| (t, true)),
        Command::Hasse => hasse_cmd(cli, &ctx).map(|t| (t, true)),
        Command::Tangent { label } => tangent(cli, &ctx, label).map(|t| (t, true)),
        Command::Smooth => smooth(cli, &ctx).map(|t| (t, true)),
        Command::Verify => verify(cli, &ctx),
        Command::Springer => springer(cli, &ctx).map(|t| (t, true)),
        Command::Blueprint { label, word } => blueprint(cli, &ctx, label, word).map(|t| (t, true)),
    }
}

#[derive(Serialize)]
struct LabelRow {
    sigma: String,
    alpha: String,
    product: String,
    word: String,
    dim: usize,
    upper: bool,
    tableau: TwoColumnTableau,
    link: OrientedLinkPattern,
}

fn label_row(ctx: &Context, l: &OrbitLabel) -> LabelRow {
    LabelRow {
        sigma: l.sigma.to_string(),
        alpha: l.alpha.to_string(),
        product: l.product().to_string(),
        word: l.product().reduced_word().to_string(),
        dim: ctx.dimension(l),
        upper: ctx.is_upper(l),
        tableau: ctx.tableau(l),
        link: ctx.link_pattern(l),
    }
}

fn link_text(p: &OrientedLinkPattern) -> String {
    p.arcs.iter().map(|(a, b)| format!("{a}->{b}")).collect::<Vec<_>>().join(" ")
}

fn enumerate(cli: &Cli, ctx: &Context) -> Result<String, Failure> {
    no_dot(cli)?;
    let rows: Vec<LabelRow> = ctx.enumerate_labels(cli.cap)?.iter().map(|l| label_row(ctx, l)).collect();
    if cli.format == Format::Json {
        return Ok(json_text(&rows));
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.sigma.clone(),
                r.alpha.clone(),
                r.word.clone(),
                r.dim.to_string(),
                if r.upper { "yes" } else { "no" }.into(),
                r.tableau.to_string(),
                link_text(&r.link),
            ]
        })
        .collect();
    Ok(table(&["sigma", "alpha", "word", "dim", "upper", "tableau", "arcs"], &cells))
}

fn order(cli: &Cli, ctx: &Context, a: &str, b: &str) -> Result<String, Failure> {
    no_dot(cli)?;
    let (la, lb) = (ctx.parse_label(a)?, ctx.parse_label(b)?);
    let witness = leq_witness(ctx, &la, &lb);
    let converse = leq_witness(ctx, &lb, &la).is_some();
    if cli.format == Format::Json {
        return Ok(json_text(&json!({
            "a": ctx.label_record(&la),
            "b": ctx.label_record(&lb),
            "leq": witness.is_some(),
            "witness": witness.as_ref().map(|w| w.to_string()),
            "geq": converse,
        })));
    }
    let mut out = format!("a: {la} (dim {})\nb: {lb} (dim {})\n", ctx.dimension(&la), ctx.dimension(&lb));
    match witness {
        Some(w) => {
            let _ = writeln!(out, "a <= b: true");
            let _ = writeln!(out, "witness: {w} = {} <= {}", w.reduced_word(), lb.product());
        }
        None => {
            let _ = writeln!(out, "a <= b: false");
        }
    }
    let _ = writeln!(out, "b <= a: {converse}");
    Ok(out)
}

fn singular_flag(v: Verdict) -> Option<bool> {
    match v {
        Verdict::Singular => Some(true),
        Verdict::Smooth => Some(false),
        Verdict::Unknown => None,
    }
}

fn hasse_cmd(cli: &Cli, ctx: &Context) -> Result<String, Failure> {
    let mut g = hasse(ctx, cli.cap)?;
    let flags: Vec<Option<bool>> = g
        .labels()
        .par_iter()
        .map(|l| singular_flag(verdict(ctx, l).verdict))
        .collect();
    for (node, flag) in g.nodes.iter_mut().zip(flags) {
        node.singular = flag;
    }
    Ok(match cli.format {
        Format::Dot => g.export_dot(),
        Format::Json => {
            let mut s = g.export_json();
            s.push('\n');
            s
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = g
                .covers
                .iter()
                .map(|(a, b, attrs)| {
                    vec![
                        g.nodes[*a].label().product().to_string(),
                        g.nodes[*b].label().product().to_string(),
                        format!("{} -> {}", g.nodes[*a].dim, g.nodes[*b].dim),
                        if attrs.alpha_descent { "alpha-descent" } else { "" }.into(),
                    ]
                })
                .collect();
            format!(
                "{} nodes, {} covers, {} weak edges\n{}",
                g.nodes.len(),
                g.covers.len(),
                g.weak.len(),
                table(&["lower", "upper", "dims", "note"], &rows)
            )
        }
    })
}

fn tk_table_text(rows: &[TkRow]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let witness = match &r.witness {
                Some(w) => {
                    let p: crate::perm::Permutation = w.parse().expect("printed permutation");
                    format!("{} = {}", p.reduced_word(), w)
                }
                None => "-".into(),
            };
            vec![
                r.root.to_string(),
                r.root.family.to_string(),
                if r.in_phi_n { "yes" } else { "no" }.into(),
                if r.in_t_k { "in" } else { "out" }.into(),
                witness,
            ]
        })
        .collect();
    table(&["root", "family", "phi+_n", "t_k", "witness"], &cells)
}

#[derive(Serialize)]
struct TangentReport {
    label: crate::atlas::LabelRecord,
    dimension: usize,
    upper: bool,
    t_k: Vec<TkRow>,
    tangent_lower_bound: usize,
    tangent_dim_upper: Option<usize>,
    bk_span: usize,
    weights: Vec<WeightBlock>,
    verdict: VerdictReport,
}

fn tangent(cli: &Cli, ctx: &Context, label: &str) -> Result<String, Failure> {
    no_dot(cli)?;
    let lbl = ctx.parse_label(label)?;
    let report = TangentReport {
        label: ctx.label_record(&lbl),
        dimension: ctx.dimension(&lbl),
        upper: ctx.is_upper(&lbl),
        t_k: t_k_table(ctx, &lbl),
        tangent_lower_bound: tangent_lower_bound(ctx, &lbl),
        tangent_dim_upper: tangent_dim_upper(ctx, &lbl).ok(),
        bk_span: bk_span(ctx, &lbl),
        weights: weight_decomposition(ctx),
        verdict: verdict(ctx, &lbl),
    };
    if cli.format == Format::Json {
        return Ok(json_text(&report));
    }
    let in_tk = report.t_k.iter().filter(|r| r.in_t_k).count();
    let mut out = String::new();
    let _ = writeln!(out, "label: {lbl}");
    let _ = writeln!(out, "dimension: {}", report.dimension);
    let _ = writeln!(out, "upper: {}", report.upper);
    let _ = writeln!(out, "|t_k|: {in_tk} of {}", report.t_k.len());
    out.push_str(&tk_table_text(&report.t_k));
    let _ = writeln!(out, "tangent lower bound: {}", report.tangent_lower_bound);
    match report.tangent_dim_upper {
        Some(d) => {
            let _ = writeln!(out, "tangent dimension: {d}");
        }
        None => {
            let _ = writeln!(out, "tangent dimension: n/a (not upper)");
        }
    }
    let _ = writeln!(out, "B_k span: {}", report.bk_span);
    let _ = writeln!(out, "verdict: {}", verdict_text(&report.verdict));
    out.push_str("weights:\n");
    for b in &report.weights {
        let v: Vec<String> = b.vectors.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "  {}: {}", b.character, v.join(" "));
    }
    Ok(out)
}

fn verdict_text(r: &VerdictReport) -> String {
    match (&r.rule, &r.witness) {
        (Some(rule), Some(w)) => format!(
            "{} {} {}",
            r.verdict,
            rule,
            serde_json::to_string(w).expect("serializable")
        ),
        _ => r.verdict.to_string(),
    }
}

fn sweep(ctx: &Context, cap: usize) -> Result<Vec<(OrbitLabel, VerdictReport)>, Failure> {
    let labels = ctx.enumerate_labels(cap)?;
    Ok(labels
        .into_par_iter()
        .map(|l| {
            let r = verdict(ctx, &l);
            (l, r)
        })
        .collect())
}

fn smooth(cli: &Cli, ctx: &Context) -> Result<String, Failure> {
    no_dot(cli)?;
    let results = sweep(ctx, cli.cap)?;
    if cli.format == Format::Json {
        let reports: Vec<&VerdictReport> = results.iter().map(|r| &r.1).collect();
        return Ok(json_text(&reports));
    }
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|(l, r)| {
            vec![
                l.sigma.to_string(),
                l.alpha.to_string(),
                ctx.dimension(l).to_string(),
                r.verdict.to_string(),
                r.rule.map(|x| x.to_string()).unwrap_or_else(|| "-".into()),
                r.witness
                    .as_ref()
                    .map(|w| serde_json::to_string(w).expect("serializable"))
                    .unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    Ok(table(&["sigma", "alpha", "dim", "verdict", "rule", "witness"], &rows))
}

fn verify(cli: &Cli, ctx: &Context) -> Result<(String, bool), Failure> {
    no_dot(cli)?;
    let samples = parse_samples(&cli.samples)?;
    let suites: Vec<SuiteResult> = run_all(ctx, cli.cap, &samples)?;
    let singular_ov: Vec<OrbitLabel> = sweep(ctx, cli.cap)?
        .into_iter()
        .filter(|(l, r)| ctx.is_orbital_variety(l) && r.verdict == Verdict::Singular)
        .map(|(l, _)| l)
        .collect();
    let ok = suites.iter().all(|s| s.passed);
    if cli.format == Format::Json {
        let tables: Vec<_> = singular_ov
            .iter()
            .map(|l| json!({ "label": ctx.label_record(l), "t_k": t_k_table(ctx, l) }))
            .collect();
        return Ok((
            json_text(&json!({ "passed": ok, "suites": suites, "singular_orbital_varieties": tables })),
            ok,
        ));
    }
    let mut out = String::new();
    for s in &suites {
        let _ = writeln!(out, "{} {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.name, s.detail);
    }
    for l in &singular_ov {
        let rows = t_k_table(ctx, l);
        let in_tk = rows.iter().filter(|r| r.in_t_k).count();
        let _ = writeln!(
            out,
            "\nsingular orbital variety {l} ({}): |t_k| = {in_tk} > l = {}",
            l.sigma.reduced_word(),
            l.word_length()
        );
        out.push_str(&tk_table_text(&rows));
    }
    let _ = writeln!(out, "\n{}", if ok { "all suites passed" } else { "some suites FAILED" });
    Ok((out, ok))
}

#[derive(Serialize)]
struct SpringerRow {
    label: crate::atlas::LabelRecord,
    tableau: TwoColumnTableau,
    involution: String,
    verdict: Verdict,
}

fn springer(cli: &Cli, ctx: &Context) -> Result<String, Failure> {
    no_dot(cli)?;
    let rows: Vec<SpringerRow> = sweep(ctx, cli.cap)?
        .into_iter()
        .filter(|(l, _)| ctx.is_orbital_variety(l))
        .map(|(l, r)| SpringerRow {
            label: ctx.label_record(&l),
            tableau: ctx.tableau(&l),
            involution: ctx.involution_tau(&l).expect("upper").to_string(),
            verdict: r.verdict,
        })
        .collect();
    let syt = ctx.standard_tableaux();
    if cli.format == Format::Json {
        return Ok(json_text(&json!({
            "component_dim": ctx.springer_component_dim(),
            "standard_tableaux": syt,
            "orbital_varieties": rows,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "component dimension: {}", ctx.springer_component_dim());
    let _ = writeln!(out, "standard tableaux: {}", syt.len());
    let _ = writeln!(out, "orbital varieties: {}", rows.len());
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.label.sigma.clone(),
                r.label.alpha.clone(),
                r.tableau.to_string(),
                r.involution.clone(),
                r.verdict.to_string(),
            ]
        })
        .collect();
    out.push_str(&table(&["sigma", "alpha", "tableau", "involution", "verdict"], &cells));
    Ok(out)
}

fn blueprint(cli: &Cli, ctx: &Context, label: &str, word: &str) -> Result<String, Failure> {
    no_dot(cli)?;
    let lbl = ctx.parse_label(label)?;
    let word: ReducedWord = word.parse()?;
    let b = resolution_blueprint(ctx, &lbl, &word)?;
    Ok(match cli.format {
        Format::Json => json_text(&b),
        _ => b.to_text(),
    })
}
