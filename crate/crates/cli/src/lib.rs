//! Front end for `abelcodes`: argument parsing, one analysis run, and text
//! or JSON rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use abelian_codes::codes::{
    analyze_family, generator_matrix, AnalysisOptions, Expectation, GeneratorMatrixExport,
    IdealCode, MinWeight, Source, WeightClaim, WeightVerdict, DEFAULT_BUDGET,
};
use abelian_codes::cyclotomic::{cyclotomic_classes, ClassReport};
use abelian_codes::idempotents::IdempotentExport;
use abelian_codes::verify::{verify_family, CheckStatus, VerificationReport, VerifyOptions};
use abelian_codes::{
    parse_group_spec, Error, GroupShape, HypothesisFailure, HypothesisMode, IdempotentFamily,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Smallest accepted enumeration budget.
pub const MIN_BUDGET: u64 = 1 << 10;

#[derive(Debug, Parser)]
#[command(
    name = "abelcodes",
    version,
    about = "Minimal binary abelian codes from primitive idempotents"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the idempotent family of a group and analyse its codes.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Group: "15", "3x11", "9x25", "3^2x5" or "3x5x11".
    #[arg(
        value_name = "SPEC",
        required_unless_present = "group",
        conflicts_with = "group"
    )]
    pub spec: Option<String>,
    #[arg(short = 'g', long, value_name = "SPEC")]
    pub group: Option<String>,
    /// Print the primitive idempotents.
    #[arg(long)]
    pub idempotents: bool,
    /// Computed and predicted dimensions (the default analysis).
    #[arg(long)]
    pub dims: bool,
    /// Minimum weights, exact within the budget and bounded beyond it.
    #[arg(long)]
    pub weights: bool,
    /// Full weight distributions; refuses codes over the budget.
    #[arg(long)]
    pub distribution: bool,
    /// Run the invariant suite; exit 4 on any failed check.
    #[arg(long)]
    pub verify: bool,
    /// List the 2-cyclotomic classes.
    #[arg(long)]
    pub classes: bool,
    /// Print the generator matrix of one member.
    #[arg(long, value_name = "LABEL")]
    pub matrix: Option<String>,
    /// Write idempotents and generator matrices as JSON.
    #[arg(long, value_name = "PATH")]
    pub export: Option<PathBuf>,
    /// Write weight distributions as CSV (implies --distribution).
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Codeword budget for exhaustive scans: N or 2^k, at least 2^10.
    #[arg(long, value_parser = parse_budget, default_value = "2^24")]
    pub budget: u64,
    /// Worker threads; 0 or unset uses every core.
    #[arg(long, env = "ABELCODES_THREADS")]
    pub threads: Option<usize>,
    /// Build families even when the standing hypotheses fail.
    #[arg(long)]
    pub allow_unverified_hypotheses: bool,
}

pub fn parse_budget(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let value = match s.split_once('^') {
        Some(("2", k)) => {
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| format!("bad exponent in {s:?}"))?;
            1u64.checked_shl(k)
                .filter(|_| k < 64)
                .ok_or_else(|| format!("2^{k} is too large"))?
        }
        Some(_) => return Err(format!("budget must be N or 2^k, got {s:?}")),
        None => s
            .parse()
            .map_err(|_| format!("budget must be N or 2^k, got {s:?}"))?,
    };
    if value < MIN_BUDGET {
        return Err(format!("budget {value} is below the minimum 2^10"));
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Analyses {
    pub idempotents: bool,
    pub dims: bool,
    pub weights: bool,
    pub distribution: bool,
    pub verify: bool,
    pub classes: bool,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: String,
    pub analyses: Analyses,
    pub matrix: Option<String>,
    pub export: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub budget: u64,
    /// 0 means the machine default.
    pub threads: usize,
    pub format: Format,
    pub allow_unverified: bool,
}

impl RunConfig {
    pub fn new(spec: impl Into<String>) -> Self {
        RunConfig {
            spec: spec.into(),
            analyses: Analyses::default(),
            matrix: None,
            export: None,
            csv: None,
            budget: DEFAULT_BUDGET,
            threads: 0,
            format: Format::Text,
            allow_unverified: false,
        }
    }
}

impl From<AnalyzeArgs> for RunConfig {
    fn from(a: AnalyzeArgs) -> Self {
        let mut analyses = Analyses {
            idempotents: a.idempotents,
            dims: a.dims,
            weights: a.weights,
            distribution: a.distribution || a.csv.is_some(),
            verify: a.verify,
            classes: a.classes,
        };
        if analyses == Analyses::default() && a.matrix.is_none() && a.export.is_none() {
            analyses.dims = true;
        }
        RunConfig {
            spec: a.spec.or(a.group).unwrap_or_default(),
            analyses,
            matrix: a.matrix,
            export: a.export,
            csv: a.csv,
            budget: a.budget,
            threads: a.threads.unwrap_or(0),
            format: a.format,
            allow_unverified: a.allow_unverified_hypotheses,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    Usage = 1,
    Hypothesis = 2,
    Budget = 3,
    Falsified = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeEntry {
    pub label: String,
    pub dimension: usize,
    pub predicted_dimension: u64,
    pub dimension_source: Source,
    pub dimension_matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_weight: Option<MinWeight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_weight: Option<WeightClaim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_verdict: Option<WeightVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<BTreeMap<usize, u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Hypotheses {
    pub validated: bool,
    pub failures: Vec<HypothesisFailure>,
}

/// Everything one run produces, in output order.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub spec: String,
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<GroupShape>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub factor_orders: Vec<u64>,
    pub hypotheses: Hypotheses,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<BTreeMap<String, IdempotentExport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codes: Option<Vec<CodeEntry>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub budget_refusals: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<(String, GeneratorMatrixExport)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
struct ExportFile {
    factor_orders: Vec<u64>,
    idempotents: BTreeMap<String, IdempotentExport>,
    generator_matrices: BTreeMap<String, GeneratorMatrixExport>,
}

pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

fn empty_report(cfg: &RunConfig) -> RunReport {
    RunReport {
        spec: cfg.spec.clone(),
        group: String::new(),
        shape: None,
        factor_orders: Vec::new(),
        hypotheses: Hypotheses {
            validated: false,
            failures: Vec::new(),
        },
        classes: None,
        idempotents: None,
        codes: None,
        budget_refusals: Vec::new(),
        verification: None,
        matrix: None,
        error: None,
    }
}

fn status_of(err: &Error) -> ExitStatus {
    match err {
        Error::Hypothesis(_) => ExitStatus::Hypothesis,
        Error::BudgetExceeded { .. } => ExitStatus::Budget,
        Error::Consistency(_) => ExitStatus::Falsified,
        _ => ExitStatus::Usage,
    }
}

fn code_entries(
    family: &IdempotentFamily,
    cfg: &RunConfig,
    refusals: &mut Vec<String>,
) -> abelian_codes::Result<Vec<CodeEntry>> {
    let want_weights = cfg.analyses.weights || cfg.analyses.distribution;
    let expectations = abelian_codes::codes::theoretical_expectations(family);
    if !want_weights {
        return Ok(family
            .members
            .iter()
            .map(|m| {
                let dimension = IdealCode::new(&m.element).dimension();
                let Expectation {
                    dimension_source, ..
                } = expectations[&m.label];
                CodeEntry {
                    label: m.label.clone(),
                    dimension,
                    predicted_dimension: m.predicted_dim,
                    dimension_source,
                    dimension_matches: dimension as u64 == m.predicted_dim,
                    min_weight: None,
                    predicted_weight: None,
                    weight_verdict: None,
                    distribution: None,
                }
            })
            .collect());
    }
    let reports = analyze_family(
        family,
        &AnalysisOptions {
            budget: cfg.budget,
            threads: cfg.threads,
            distribution: cfg.analyses.distribution,
        },
    )?;
    Ok(reports
        .into_iter()
        .map(|r| {
            if cfg.analyses.distribution && r.distribution.is_none() {
                refusals.push(format!(
                    "{}: 2^{} codewords exceed the budget {}",
                    r.label, r.dimension, cfg.budget
                ));
            }
            CodeEntry {
                label: r.label,
                dimension: r.dimension,
                predicted_dimension: r.predicted_dimension,
                dimension_source: r.expectation.dimension_source,
                dimension_matches: r.dimension_matches,
                min_weight: Some(r.min_weight),
                predicted_weight: r.expectation.weight,
                weight_verdict: Some(r.weight_verdict),
                distribution: r.distribution,
            }
        })
        .collect())
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn csv_of(codes: &[CodeEntry]) -> String {
    let mut out = String::from("label,weight,count\n");
    for c in codes {
        for (w, n) in c.distribution.iter().flatten() {
            let _ = writeln!(out, "{},{w},{n}", c.label);
        }
    }
    out
}

/// Execute one configured run. Output never depends on `threads`.
pub fn run(cfg: &RunConfig) -> Outcome {
    let mut report = empty_report(cfg);
    let mut stderr = String::new();
    let status = execute(cfg, &mut report, &mut stderr);
    let stdout = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(&report),
    };
    if let Some(e) = &report.error {
        let _ = writeln!(stderr, "error: {e}");
    }
    Outcome {
        status,
        stdout,
        stderr,
    }
}

fn execute(cfg: &RunConfig, report: &mut RunReport, stderr: &mut String) -> ExitStatus {
    let mode = if cfg.allow_unverified {
        HypothesisMode::Override
    } else {
        HypothesisMode::Strict
    };
    let shape = match parse_group_spec(&cfg.spec, mode) {
        Ok(s) => s,
        Err(e) => {
            if let Error::Hypothesis(f) = &e {
                report.hypotheses.failures = f.clone();
            }
            report.error = Some(e.to_string());
            return status_of(&e);
        }
    };
    report.group = shape.to_string();
    report.hypotheses = Hypotheses {
        validated: shape.failures().is_empty(),
        failures: shape.failures().to_vec(),
    };
    if !report.hypotheses.validated {
        let _ = writeln!(
            stderr,
            "warning: standing hypotheses fail; results are unverified"
        );
    }
    report.shape = Some(shape.clone());

    let family = match shape.build_family() {
        Ok(f) => f,
        Err(e) => {
            report.error = Some(e.to_string());
            return status_of(&e);
        }
    };
    report.factor_orders = family.group.factor_orders().to_vec();

    let result = (|| -> abelian_codes::Result<ExitStatus> {
        let a = cfg.analyses;
        if a.classes {
            report.classes = Some(
                cyclotomic_classes(&family.group)?
                    .iter()
                    .map(|c| c.report())
                    .collect(),
            );
        }
        if a.idempotents {
            report.idempotents = Some(family.export());
        }
        if a.dims || a.weights || a.distribution {
            report.codes = Some(code_entries(&family, cfg, &mut report.budget_refusals)?);
        }
        if a.verify {
            report.verification = Some(verify_family(
                &family,
                &VerifyOptions {
                    budget: cfg.budget,
                    threads: cfg.threads,
                    ..Default::default()
                },
            )?);
        }
        if let Some(label) = &cfg.matrix {
            let m = family.get(label).ok_or_else(|| {
                Error::Parse(format!(
                    "no member labelled {label:?}; have {:?}",
                    family.labels()
                ))
            })?;
            report.matrix = Some((
                label.clone(),
                generator_matrix(&IdealCode::new(&m.element)).to_export(),
            ));
        }
        Ok(ExitStatus::Ok)
    })();
    if let Err(e) = result {
        report.error = Some(e.to_string());
        return status_of(&e);
    }

    if let Some(path) = &cfg.export {
        let file = ExportFile {
            factor_orders: report.factor_orders.clone(),
            idempotents: family.export(),
            generator_matrices: family
                .members
                .iter()
                .map(|m| {
                    (
                        m.label.clone(),
                        generator_matrix(&IdealCode::new(&m.element)).to_export(),
                    )
                })
                .collect(),
        };
        let json = serde_json::to_string_pretty(&file).expect("export serializes");
        if let Err(e) = write_file(path, &(json + "\n")) {
            report.error = Some(e);
            return ExitStatus::Usage;
        }
    }
    if let (Some(path), Some(codes)) = (&cfg.csv, &report.codes) {
        if let Err(e) = write_file(path, &csv_of(codes)) {
            report.error = Some(e);
            return ExitStatus::Usage;
        }
    }

    let falsified = report.verification.as_ref().is_some_and(|v| v.falsified())
        || report
            .codes
            .iter()
            .flatten()
            .any(|c| !c.dimension_matches || c.weight_verdict == Some(WeightVerdict::Fail));
    if falsified {
        ExitStatus::Falsified
    } else if !report.budget_refusals.is_empty() {
        ExitStatus::Budget
    } else {
        ExitStatus::Ok
    }
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Theorem => "theorem",
        Source::Table => "table",
        Source::Conjecture => "conjecture",
        Source::Formula => "formula",
    }
}

fn claim_text(c: &WeightClaim) -> String {
    match c {
        WeightClaim::Exact { value, source } => format!("{value} ({})", source_name(*source)),
        WeightClaim::Bounds {
            lower,
            upper,
            source,
        } => {
            format!("[{lower}, {upper}] ({})", source_name(*source))
        }
        WeightClaim::Conjecture { value, source, .. } => match value {
            Some(v) => format!("{v} ({})", source_name(*source)),
            None => format!("undefined ({})", source_name(*source)),
        },
    }
}

fn weight_text(w: &MinWeight) -> String {
    match w {
        MinWeight::Exact { weight } => weight.to_string(),
        MinWeight::Bounds { lower, upper } => format!("[{}, {}]", lower.value, upper.value),
    }
}

fn verdict_text(v: &WeightVerdict) -> String {
    match v {
        WeightVerdict::Pass => "pass".into(),
        WeightVerdict::Fail => "FAIL".into(),
        WeightVerdict::Unchecked => "-".into(),
        WeightVerdict::Recorded {
            matches: Some(true),
        } => "recorded: matches".into(),
        WeightVerdict::Recorded {
            matches: Some(false),
        } => "recorded: differs".into(),
        WeightVerdict::Recorded { matches: None } => "recorded".into(),
    }
}

pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    if r.group.is_empty() {
        let _ = writeln!(out, "group {}", r.spec);
    } else {
        let _ = writeln!(out, "group {} (spec {:?})", r.group, r.spec);
    }
    if !r.hypotheses.failures.is_empty() {
        out.push_str("standing hypotheses fail:\n");
        for f in &r.hypotheses.failures {
            let _ = writeln!(out, "  {f}");
        }
    }
    if let Some(classes) = &r.classes {
        let _ = writeln!(out, "\n2-cyclotomic classes: {}", classes.len());
        for c in classes {
            let _ = writeln!(
                out,
                "  rep {:?} size {}: {:?}",
                c.representative_exponents, c.size, c.members_as_ranks
            );
        }
    }
    if let Some(ids) = &r.idempotents {
        out.push_str("\nidempotents (support by rank)\n");
        for (label, e) in ids {
            let _ = writeln!(out, "  {label}: {:?}", e.support);
        }
    }
    if let Some(codes) = &r.codes {
        let weights = codes.iter().any(|c| c.min_weight.is_some());
        let _ = write!(
            out,
            "\n{:<8} {:>5} {:>5}  {:<8}",
            "label", "dim", "pred", "source"
        );
        if weights {
            let _ = write!(out, " {:<12} {:<22} verdict", "min weight", "predicted");
        }
        out.push('\n');
        for c in codes {
            let _ = write!(
                out,
                "{:<8} {:>5} {:>5}  {:<8}",
                c.label,
                c.dimension,
                c.predicted_dimension,
                source_name(c.dimension_source)
            );
            if let Some(w) = &c.min_weight {
                let _ = write!(
                    out,
                    " {:<12} {:<22} {}",
                    weight_text(w),
                    c.predicted_weight.as_ref().map_or("-".into(), claim_text),
                    c.weight_verdict.as_ref().map_or("-".into(), verdict_text)
                );
            }
            out.push('\n');
        }
        for c in codes {
            if let Some(d) = &c.distribution {
                let parts: Vec<String> = d.iter().map(|(w, n)| format!("{w}:{n}")).collect();
                let _ = writeln!(out, "distribution {}: {{{}}}", c.label, parts.join(", "));
            }
        }
    }
    for refusal in &r.budget_refusals {
        let _ = writeln!(out, "refused {refusal}");
    }
    if let Some(v) = &r.verification {
        out.push_str("\nverification\n");
        for c in &v.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
                CheckStatus::Recorded => "NOTE",
            };
            if c.detail.is_empty() {
                let _ = writeln!(out, "  {tag} {}", c.name);
            } else {
                let _ = writeln!(out, "  {tag} {}: {}", c.name, c.detail);
            }
        }
        let _ = writeln!(
            out,
            "  {} passed, {} failed, {} skipped, {} recorded",
            v.count(CheckStatus::Pass),
            v.count(CheckStatus::Fail),
            v.count(CheckStatus::Skipped),
            v.count(CheckStatus::Recorded)
        );
    }
    if let Some((label, m)) = &r.matrix {
        let _ = writeln!(
            out,
            "\ngenerator matrix {label} ({}x{})",
            m.dimension, m.length
        );
        for row in &m.rows_hex {
            let _ = writeln!(out, "{}", hex_row_to_binary(row, m.length));
        }
    }
    out
}

fn hex_row_to_binary(row: &str, length: usize) -> String {
    abelian_codes::bits::BitSet::from_hex(length, row)
        .map(|b| b.to_binary_string())
        .unwrap_or_else(|| row.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets() {
        assert_eq!(parse_budget("2^20"), Ok(1 << 20));
        assert_eq!(parse_budget("4096"), Ok(4096));
        assert!(parse_budget("2^9").is_err());
        assert!(parse_budget("1000").is_err());
        assert!(parse_budget("3^12").is_err());
        assert!(parse_budget("2^64").is_err());
    }

    #[test]
    fn default_analysis_is_dims() {
        let cli = Cli::try_parse_from(["abelcodes", "analyze", "15"]).unwrap();
        let Command::Analyze(a) = cli.command;
        let cfg = RunConfig::from(a);
        assert!(cfg.analyses.dims);
        assert!(!cfg.analyses.weights);
        assert_eq!(cfg.budget, DEFAULT_BUDGET);
    }

    #[test]
    fn spec_and_group_conflict() {
        assert!(Cli::try_parse_from(["abelcodes", "analyze", "15", "-g", "33"]).is_err());
        assert!(Cli::try_parse_from(["abelcodes", "analyze"]).is_err());
    }
}
