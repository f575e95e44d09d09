//! Deterministic table / JSON / CSV renderings of engine results.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::action::ActionSpec;
use crate::constructions::{FrobeniusOutcome, InsertCheck, JairReport, ScalarClassification, Verdict};
use crate::error::Error;
use crate::exactfield::Scalar;
use crate::freealg::FreePoly;
use crate::invariants::{ProbeReport, ProbeRow};

pub fn scalar_as_string<S: Serializer>(s: &Scalar, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&s.to_string())
}

pub fn poly_as_string<S: Serializer>(f: &FreePoly, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&f.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidArgument(format!("unknown output format {other:?}"))),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>, preamble: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in preamble {
        writeln!(out, "# {k}: {v}").unwrap();
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8"));
    out
}

/// Left-aligned columns separated by two spaces.
fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let last = cells.len() - 1;
        for (k, cell) in cells.iter().enumerate() {
            if k == last {
                out.push_str(cell);
            } else {
                let pad = widths[k] - cell.chars().count();
                write!(out, "{cell}{}  ", " ".repeat(pad)).unwrap();
            }
        }
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

#[derive(Serialize)]
pub struct ClassificationView {
    pub verdict: &'static str,
    pub bases: std::collections::BTreeMap<String, String>,
}

impl From<&ScalarClassification> for ClassificationView {
    fn from(c: &ScalarClassification) -> Self {
        ClassificationView {
            verdict: match c.verdict {
                Verdict::Scalar => "scalar",
                Verdict::LinearNonScalar => "linear-non-scalar",
            },
            bases: c.bases.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        }
    }
}

impl ClassificationView {
    fn summary(&self) -> String {
        if self.bases.is_empty() {
            return self.verdict.to_string();
        }
        let bases = self
            .bases
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join(", ");
        format!("{} ({bases})", self.verdict)
    }
}

#[derive(Serialize)]
struct ProbeView<'a> {
    field: String,
    rank: usize,
    horizon: usize,
    classification: ClassificationView,
    minimal_degree: Option<usize>,
    rows: &'a [ProbeRow],
    verdict: &'a str,
}

pub fn render_probe(s: &ActionSpec, report: &ProbeReport, format: OutputFormat) -> String {
    let view = ProbeView {
        field: s.field.label(),
        rank: s.rank,
        horizon: report.horizon,
        classification: (&report.classification).into(),
        minimal_degree: report.minimal_degree,
        rows: &report.rows,
        verdict: &report.verdict,
    };
    let minimal = view
        .minimal_degree
        .map_or_else(|| "none".to_string(), |t| t.to_string());
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                r.words.to_string(),
                r.invariants.to_string(),
                r.decomposables.to_string(),
                r.new_generators.to_string(),
            ]
        })
        .collect();
    match format {
        OutputFormat::Json => to_json(&view),
        OutputFormat::Csv => csv_text(
            &["degree", "words", "invariants", "decomposables", "new_generators"],
            rows,
            &[
                ("field".into(), view.field.clone()),
                ("rank".into(), view.rank.to_string()),
                ("horizon".into(), view.horizon.to_string()),
                ("classification".into(), view.classification.summary()),
                ("minimal degree".into(), minimal),
                ("verdict".into(), view.verdict.to_string()),
            ],
        ),
        OutputFormat::Table => {
            let mut out = String::new();
            writeln!(out, "field: {}  rank: {}  horizon: {}", view.field, view.rank, view.horizon).unwrap();
            writeln!(out, "classification: {}", view.classification.summary()).unwrap();
            writeln!(out, "minimal degree: {minimal}").unwrap();
            out.push_str(&aligned(&["degree", "dim R_n", "dim R^H_n", "dim G_n", "new_gens"], &rows));
            writeln!(out, "verdict: {}", view.verdict).unwrap();
            out
        }
    }
}

#[derive(Serialize)]
pub struct DegreeBasis {
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Serialize)]
struct InvariantsView<'a> {
    field: String,
    rank: usize,
    degrees: &'a [DegreeBasis],
}

pub fn degree_basis(degree: usize, basis: &[FreePoly]) -> DegreeBasis {
    DegreeBasis {
        degree,
        dim: basis.len(),
        basis: basis.iter().map(FreePoly::to_string).collect(),
    }
}

pub fn render_invariants(s: &ActionSpec, degrees: &[DegreeBasis], format: OutputFormat) -> String {
    let rows: Vec<Vec<String>> = degrees
        .iter()
        .flat_map(|d| {
            d.basis
                .iter()
                .enumerate()
                .map(move |(k, b)| vec![d.degree.to_string(), (k + 1).to_string(), b.clone()])
        })
        .collect();
    let dims = degrees
        .iter()
        .map(|d| format!("{}:{}", d.degree, d.dim))
        .collect::<Vec<_>>()
        .join(" ");
    match format {
        OutputFormat::Json => to_json(&InvariantsView {
            field: s.field.label(),
            rank: s.rank,
            degrees,
        }),
        OutputFormat::Csv => csv_text(
            &["degree", "index", "element"],
            rows,
            &[
                ("field".into(), s.field.label()),
                ("rank".into(), s.rank.to_string()),
                ("dimensions".into(), dims),
            ],
        ),
        OutputFormat::Table => {
            let mut out = String::new();
            writeln!(out, "field: {}  rank: {}", s.field.label(), s.rank).unwrap();
            writeln!(out, "dimensions: {dims}").unwrap();
            out.push_str(&aligned(&["degree", "index", "element"], &rows));
            out
        }
    }
}

pub fn render_classification(c: &ScalarClassification, format: OutputFormat) -> String {
    let view = ClassificationView::from(c);
    match format {
        OutputFormat::Json => to_json(&view),
        OutputFormat::Csv => csv_text(
            &["generator", "base"],
            view.bases.iter().map(|(k, v)| vec![k.clone(), v.clone()]),
            &[("verdict".into(), view.verdict.to_string())],
        ),
        OutputFormat::Table => format!("{}\n", view.summary()),
    }
}

#[derive(Serialize)]
struct JairView {
    delta: String,
    i: usize,
    n: usize,
    block_end: usize,
    eta: String,
    mu: String,
    lambda: String,
    cn: String,
    f: String,
    image: String,
    prefix_ok: bool,
    witness_ok: bool,
    zero_branch: Option<bool>,
    residual_support_ok: Option<bool>,
    quotient: Option<String>,
    frobenius: Option<FrobeniusView>,
    holds: bool,
}

#[derive(Serialize)]
struct FrobeniusView {
    applicable: bool,
    p: Option<u64>,
    image: Option<String>,
    zero: Option<bool>,
    note: String,
}

pub const FROBENIUS_DISCREPANCY: &str =
    "delta(f^p) != 0: f^p is not delta-invariant; the commuting-power formula delta(f^k) = k n eta^(n+k-2) g^k fails since f and g = delta(f)/c_n do not commute";

fn frobenius_view(o: &FrobeniusOutcome) -> FrobeniusView {
    match o {
        FrobeniusOutcome::NotApplicable(why) => FrobeniusView {
            applicable: false,
            p: None,
            image: None,
            zero: None,
            note: format!("not applicable: {why}"),
        },
        FrobeniusOutcome::Computed { p, image, discrepancy } => FrobeniusView {
            applicable: true,
            p: Some(*p),
            image: Some(image.to_string()),
            zero: Some(image.is_zero()),
            note: if *discrepancy {
                FROBENIUS_DISCREPANCY.to_string()
            } else {
                "delta(f^p) = 0: f^p is delta-invariant".to_string()
            },
        },
    }
}

pub fn render_jair(r: &JairReport, verify: bool, format: OutputFormat) -> String {
    let view = JairView {
        delta: r.delta.clone(),
        i: r.i,
        n: r.n,
        block_end: r.block_end,
        eta: r.eta.to_string(),
        mu: r.mu.to_string(),
        lambda: r.lambda.to_string(),
        cn: r.cn.to_string(),
        f: r.f.to_string(),
        image: r.image.to_string(),
        prefix_ok: r.prefix_ok,
        witness_ok: r.witness_ok,
        zero_branch: r.zero_branch,
        residual_support_ok: r.residual_support_ok,
        quotient: r.quotient.as_ref().map(FreePoly::to_string),
        frobenius: r.frobenius.as_ref().map(frobenius_view),
        holds: r.holds(),
    };
    let opt = |b: Option<bool>| b.map_or_else(|| "n/a".to_string(), |b| b.to_string());
    let mut pairs: Vec<(String, String)> = vec![("f".into(), view.f.clone())];
    if verify {
        pairs.extend([
            ("index range [i, s]".into(), format!("[{}, {}]", view.i, view.block_end)),
            ("eigenvalue".into(), view.lambda.clone()),
            ("eta, mu".into(), format!("{}, {}", view.eta, view.mu)),
            ("c_n(eta, mu)".into(), view.cn.clone()),
            ("delta(f)".into(), view.image.clone()),
            ("x_i prefix in supp(f)".into(), view.prefix_ok.to_string()),
            ("x_i x_s^(n-1) in supp(f)".into(), view.witness_ok.to_string()),
            ("c_n = 0 and delta(f) = 0".into(), opt(view.zero_branch)),
            ("residual support bound".into(), opt(view.residual_support_ok)),
            (
                "f'' = (delta(f) - lambda c_n f)/c_n".into(),
                view.quotient.clone().unwrap_or_else(|| "n/a".into()),
            ),
            ("holds".into(), view.holds.to_string()),
        ]);
    }
    if let Some(fr) = &view.frobenius {
        pairs.push(("frobenius".into(), fr.note.clone()));
        if let Some(image) = &fr.image {
            pairs.push(("delta(f^p)".into(), image.clone()));
        }
    }
    match format {
        OutputFormat::Json => to_json(&view),
        OutputFormat::Csv => csv_text(&["key", "value"], pairs.into_iter().map(|(k, v)| vec![k, v]), &[]),
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = pairs.into_iter().map(|(k, v)| vec![k, v]).collect();
            aligned(&["key", "value"], &rows)
        }
    }
}

/// Flat `key → value` record: one JSON object, a `key,value` CSV, or an
/// aligned two-column table.
pub fn render_record(pairs: &[(&str, serde_json::Value)], format: OutputFormat) -> String {
    let text = |v: &serde_json::Value| match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => "none".to_string(),
        other => other.to_string(),
    };
    match format {
        OutputFormat::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            to_json(&map)
        }
        OutputFormat::Csv => csv_text(
            &["key", "value"],
            pairs.iter().map(|(k, v)| vec![k.to_string(), text(v)]),
            &[],
        ),
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = pairs.iter().map(|(k, v)| vec![k.to_string(), text(v)]).collect();
            aligned(&["key", "value"], &rows)
        }
    }
}

pub fn render_insert_check(c: &InsertCheck, format: OutputFormat) -> String {
    let header = ["i", "j", "k", "f", "g"];
    let rows: Vec<Vec<String>> = c
        .violations
        .iter()
        .map(|v| vec![v.i.to_string(), v.j.to_string(), v.k.to_string(), v.f.to_string(), v.g.to_string()])
        .collect();
    let preamble = [
        ("max_degree".to_string(), c.max_degree.to_string()),
        ("checked".to_string(), c.checked.to_string()),
        ("violations".to_string(), c.violations.len().to_string()),
    ];
    match format {
        OutputFormat::Json => to_json(c),
        OutputFormat::Csv => csv_text(&header, rows, &preamble),
        OutputFormat::Table => {
            let mut out = String::new();
            for (k, v) in &preamble {
                writeln!(out, "{k}: {v}").unwrap();
            }
            if !rows.is_empty() {
                out.push_str(&aligned(&header, &rows));
            }
            out
        }
    }
}
