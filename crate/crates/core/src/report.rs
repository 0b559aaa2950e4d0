//! Analysis requests and deterministic reports: build a group from one of
//! the supported sources, run the terminality pipeline, and render the result
//! as text or JSON. Identical requests produce byte-identical output.

use std::fmt::Write as _;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::age::{
    age_report, age_via_spectrum, cycle_type_classes, lemma_shortcut, min_age, reid_tai_verdict,
    OracleError, Rational, Verdict,
};
pub use crate::age::Decision;
use crate::endo::{certificate, EndoCertificate, EndoError};
use crate::group::{
    close_generators, regular_representation, GroupError, GroupFamily, MultiplicationTable,
    PermutationGroup,
};
use crate::perm::{ParseError, Permutation};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_CAP: usize = 1_000_000;

/// Tolerance for the numeric cross-check of exact ages.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone)]
pub enum GroupSource {
    /// Subgroup of S_degree generated by explicit permutations.
    Generators {
        degree: usize,
        generators: Vec<Permutation>,
    },
    /// Regular representation of an abstract multiplication table.
    Table {
        table: MultiplicationTable,
        add_fixed_point: bool,
    },
    /// Regular representation of a named family.
    Family {
        family: GroupFamily,
        add_fixed_point: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub source: GroupSource,
    /// Exponent d of the power map to certify, if any.
    pub endo_exponent: Option<u64>,
    pub cap: usize,
    pub run_oracle: bool,
    pub format: OutputFormat,
    pub verbose: bool,
}

impl AnalysisRequest {
    pub fn new(source: GroupSource) -> Self {
        AnalysisRequest {
            source,
            endo_exponent: None,
            cap: DEFAULT_CAP,
            run_oracle: false,
            format: OutputFormat::Text,
            verbose: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid request: {0}")]
    BadRequest(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

impl RunError {
    /// Process exit code: 2 input error, 3 cap exceeded, 4 oracle trouble.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Group(GroupError::CapExceeded { .. }) => 3,
            RunError::Oracle(_) | RunError::OracleDisagreement(_) => 4,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub group: GroupSummary,
    pub lemma_shortcut: bool,
    pub verdict: VerdictReport,
    pub cycle_types: Vec<CycleTypeDigest>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub endo_certificate: Option<EndoCertReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleSummary>,
    /// Full per-element dump, only populated in verbose mode.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<ElementReport>>,
    /// Wall-clock analysis time. Never serialized: reports must be
    /// byte-identical across runs.
    #[serde(skip)]
    pub timing_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub decision: Decision,
    pub witnesses: Vec<WitnessReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub element: String,
    pub cycle_type: Vec<u32>,
    pub multiplicity: usize,
    pub min_age: String,
    pub quasi_reflection_charts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleTypeDigest {
    pub lengths: Vec<u32>,
    pub multiplicity: usize,
    pub representative: String,
    pub element_order: String,
    pub min_age: String,
    pub age_lower_bound: String,
    pub chart_ages: Vec<ChartAgeEntry>,
    pub quasi_reflection_charts: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartAgeEntry {
    pub weight: String,
    pub age: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndoCertReport {
    pub exponent: u64,
    pub ambient_dimension: usize,
    pub commutes: Vec<GeneratorCommutation>,
    /// Exact degree d^dim in decimal.
    pub degree: String,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorCommutation {
    pub generator: String,
    pub commutes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub charts_checked: usize,
    pub max_abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementReport {
    pub element: String,
    pub cycle_type: Vec<u32>,
    pub min_age: String,
}

fn rational_str(r: &Rational) -> String {
    r.to_string()
}

fn verdict_report(verdict: &Verdict) -> VerdictReport {
    VerdictReport {
        decision: verdict.decision,
        witnesses: verdict
            .witnesses
            .iter()
            .map(|w| WitnessReport {
                element: w.element.format_cycles(),
                cycle_type: w.cycle_type.lengths().to_vec(),
                multiplicity: w.multiplicity,
                min_age: rational_str(&w.min_age),
                quasi_reflection_charts: w
                    .quasi_reflection_charts
                    .iter()
                    .map(|c| c.to_string())
                    .collect(),
            })
            .collect(),
    }
}

fn endo_report(cert: &EndoCertificate) -> EndoCertReport {
    EndoCertReport {
        exponent: cert.exponent,
        ambient_dimension: cert.ambient_dimension,
        commutes: cert
            .generator_commutation
            .iter()
            .map(|(g, ok)| GeneratorCommutation {
                generator: g.format_cycles(),
                commutes: *ok,
            })
            .collect(),
        degree: cert.degree.to_string(),
        valid: cert.all_commute(),
    }
}

fn build_group(source: &GroupSource, cap: usize) -> Result<PermutationGroup, RunError> {
    match source {
        GroupSource::Generators { degree, generators } => {
            Ok(close_generators(*degree, generators, cap)?)
        }
        GroupSource::Table {
            table,
            add_fixed_point,
        } => {
            if table.size() > cap {
                return Err(GroupError::CapExceeded { cap }.into());
            }
            Ok(regular_representation(table, *add_fixed_point)?)
        }
        GroupSource::Family {
            family,
            add_fixed_point,
        } => {
            let table = family.multiplication_table()?;
            if table.size() > cap {
                return Err(GroupError::CapExceeded { cap }.into());
            }
            Ok(regular_representation(&table, *add_fixed_point)?)
        }
    }
}

/// Runs the full pipeline for a request. The report is deterministic: two
/// runs on the same request serialize to identical bytes (timing is kept out
/// of the serialized form).
pub fn run(request: &AnalysisRequest) -> Result<AnalysisReport, RunError> {
    let started = Instant::now();
    if request.cap == 0 {
        return Err(RunError::BadRequest("cap must be at least 1".into()));
    }

    let group = build_group(&request.source, request.cap)?;
    let shortcut = lemma_shortcut(&group);
    let verdict = reid_tai_verdict(&group);
    let classes = cycle_type_classes(&group);

    let mut digests = Vec::with_capacity(classes.len());
    let mut oracle_summary = OracleSummary {
        charts_checked: 0,
        max_abs_error: 0.0,
    };
    for (ty, rep, multiplicity) in &classes {
        let analysis = age_report(rep);
        if request.run_oracle {
            for (chart, exact) in &analysis.chart_ages {
                let numeric = age_via_spectrum(rep, chart)?;
                let exact_f = exact.to_f64().unwrap_or(f64::INFINITY);
                let error = (numeric - exact_f).abs();
                if error.is_nan() || error > ORACLE_TOLERANCE {
                    return Err(RunError::OracleDisagreement(format!(
                        "element {} chart {}: exact {} vs numeric {}",
                        rep.format_cycles(),
                        chart,
                        exact,
                        numeric
                    )));
                }
                oracle_summary.charts_checked += 1;
                if error > oracle_summary.max_abs_error {
                    oracle_summary.max_abs_error = error;
                }
            }
        }
        digests.push(CycleTypeDigest {
            lengths: ty.lengths().to_vec(),
            multiplicity: *multiplicity,
            representative: rep.format_cycles(),
            element_order: analysis.order.to_string(),
            min_age: rational_str(&analysis.min_age),
            age_lower_bound: rational_str(&analysis.lower_bound),
            chart_ages: analysis
                .chart_ages
                .iter()
                .map(|(w, a)| ChartAgeEntry {
                    weight: w.to_string(),
                    age: rational_str(a),
                })
                .collect(),
            quasi_reflection_charts: analysis
                .quasi_reflection_charts
                .iter()
                .map(|c| c.to_string())
                .collect(),
        });
    }

    let endo_certificate = request
        .endo_exponent
        .map(|d| certificate(&group, d, false))
        .transpose()?
        .as_ref()
        .map(endo_report);

    let elements = request.verbose.then(|| {
        group
            .iter()
            .map(|e| ElementReport {
                element: e.format_cycles(),
                cycle_type: e.cycle_type().lengths().to_vec(),
                min_age: rational_str(&min_age(e)),
            })
            .collect()
    });

    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        group: GroupSummary {
            degree: group.degree(),
            order: group.order(),
            generators: group.generators().iter().map(|g| g.format_cycles()).collect(),
        },
        lemma_shortcut: shortcut,
        verdict: verdict_report(&verdict),
        cycle_types: digests,
        endo_certificate,
        oracle: request.run_oracle.then_some(oracle_summary),
        elements,
        timing_ms: started.elapsed().as_millis() as u64,
    })
}

pub fn render_json(report: &AnalysisReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serialization is total");
    out.push('\n');
    out
}

pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        "group: degree {}, order {}",
        report.group.degree, report.group.order
    );
    if report.group.generators.is_empty() {
        let _ = writeln!(w, "generators: (none)");
    } else {
        let _ = writeln!(w, "generators: {}", report.group.generators.join(", "));
    }
    let _ = writeln!(w, "cycle types:");
    for d in &report.cycle_types {
        let lengths = d
            .lengths
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let _ = write!(
            w,
            "  [{lengths}] x{}  order {}  min age {}  bound {}",
            d.multiplicity, d.element_order, d.min_age, d.age_lower_bound
        );
        if !d.quasi_reflection_charts.is_empty() {
            let _ = write!(
                w,
                "  quasi-reflection at weight {}",
                d.quasi_reflection_charts.join(",")
            );
        }
        let _ = writeln!(w);
    }
    let _ = writeln!(
        w,
        "forbidden classes absent (shortcut applies): {}",
        if report.lemma_shortcut { "yes" } else { "no" }
    );
    let _ = writeln!(w, "verdict: {:?}", report.verdict.decision);
    for witness in &report.verdict.witnesses {
        let ty = witness
            .cycle_type
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let _ = write!(
            w,
            "  witness: {} type [{ty}] x{} min age {}",
            witness.element, witness.multiplicity, witness.min_age
        );
        if !witness.quasi_reflection_charts.is_empty() {
            let _ = write!(
                w,
                " (quasi-reflection at weight {})",
                witness.quasi_reflection_charts.join(",")
            );
        }
        let _ = writeln!(w);
    }
    if let Some(cert) = &report.endo_certificate {
        let _ = writeln!(
            w,
            "power map: d = {} on P^{}, commutes with all generators: {}, descent degree {}",
            cert.exponent,
            cert.ambient_dimension,
            if cert.valid { "yes" } else { "NO" },
            cert.degree
        );
    }
    if let Some(oracle) = &report.oracle {
        let _ = writeln!(
            w,
            "numeric oracle: {} chart ages checked, max |error| {:.3e}",
            oracle.charts_checked, oracle.max_abs_error
        );
    }
    if let Some(elements) = &report.elements {
        let _ = writeln!(w, "elements:");
        for e in elements {
            let ty = e
                .cycle_type
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(w, "  {} type [{ty}] min age {}", e.element, e.min_age);
        }
    }
    out
}

/// JSON shape for `--generators`: explicit degree plus cycle strings.
#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorsJson {
    pub degree: usize,
    pub generators: Vec<String>,
}

/// Parses the `--generators` argument: either the JSON form
/// `{"degree": n, "generators": ["(1 2 3)", ...]}` or a bare list of cycle
/// expressions separated by top-level commas/semicolons, with the degree
/// inferred from the largest point mentioned.
pub fn parse_generators_input(text: &str) -> Result<(usize, Vec<Permutation>), RunError> {
    if text.trim_start().starts_with('{') {
        let spec: GeneratorsJson = serde_json::from_str(text)?;
        let generators = spec
            .generators
            .iter()
            .map(|s| Permutation::parse_cycles(s, spec.degree))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok((spec.degree, generators));
    }

    let degree = text
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>().map_err(|_| {
                RunError::BadRequest(format!("point {s} is too large"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .ok_or_else(|| {
            RunError::BadRequest(
                "cannot infer a degree from generators without points; \
                 use the JSON form {\"degree\": n, \"generators\": [...]}"
                    .into(),
            )
        })?;

    let generators = split_top_level(text)
        .into_iter()
        .map(|part| Permutation::parse_cycles(part, degree))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((degree, generators))
}

/// Splits on ',' or ';' outside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' | ';' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Parses a family expression: atoms `name:k`, an optional `^r` repetition,
/// joined by `x` into direct products. Example: `dihedral:4 x cyclic:2^6`.
pub fn parse_family_spec(text: &str) -> Result<GroupFamily, RunError> {
    let mut factors: Vec<GroupFamily> = Vec::new();
    for atom in text.split('x') {
        let atom = atom.trim();
        if atom.is_empty() {
            return Err(RunError::BadRequest(format!(
                "empty factor in family expression {text:?}"
            )));
        }
        let (base, reps) = match atom.split_once('^') {
            Some((b, r)) => {
                let reps: u32 = r.trim().parse().map_err(|_| {
                    RunError::BadRequest(format!("invalid repetition {r:?} in {atom:?}"))
                })?;
                if reps == 0 {
                    return Err(RunError::BadRequest(format!(
                        "repetition must be positive in {atom:?}"
                    )));
                }
                (b.trim(), reps)
            }
            None => (atom, 1),
        };
        let (name, param) = base.split_once(':').ok_or_else(|| {
            RunError::BadRequest(format!(
                "family atom {base:?} must have the form name:parameter"
            ))
        })?;
        let param: u64 = param.trim().parse().map_err(|_| {
            RunError::BadRequest(format!("invalid parameter {param:?} in {base:?}"))
        })?;
        let family = match name.trim() {
            "cyclic" => GroupFamily::Cyclic(param),
            "dihedral" => GroupFamily::Dihedral(param),
            "heisenberg" => GroupFamily::HeisenbergModP(param),
            "symmetric" => GroupFamily::Symmetric(param),
            other => {
                return Err(RunError::BadRequest(format!(
                    "unknown family {other:?}; expected cyclic, dihedral, heisenberg or symmetric"
                )))
            }
        };
        for _ in 0..reps {
            factors.push(family.clone());
        }
    }
    let mut iter = factors.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| RunError::BadRequest("empty family expression".into()))?;
    Ok(iter.fold(first, |acc, f| {
        GroupFamily::DirectProduct(Box::new(acc), Box::new(f))
    }))
}
