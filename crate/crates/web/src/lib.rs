//! Browser bindings for the static demo page in `www/`.
//!
//! Every export takes and returns strings. The plain functions carry the
//! logic so they can be tested natively; the `#[wasm_bindgen]` wrappers only
//! convert errors.

use hopfinv::invariants::{invariant_basis, SizeCap};
use hopfinv::presets::{self, Block};
use hopfinv::report::{self, OutputFormat};
use hopfinv::{cn_eval, parse_spec_file, probe_generation, serialize_spec, ActionSpec, FieldSpec};
use wasm_bindgen::prelude::*;

/// Degree limit for the page, keeping `r^n` coordinates small enough for a tab.
pub const MAX_DEMO_DEGREE: usize = 10;
pub const MAX_CN: usize = 64;

pub const PRESETS: [&str; 4] = ["sweedler", "diagonal", "scalar-minus-one", "jordan-gf3"];

fn format(name: &str) -> Result<OutputFormat, String> {
    name.parse().map_err(|e: hopfinv::Error| e.to_string())
}

fn spec(text: &str) -> Result<ActionSpec, String> {
    parse_spec_file(text).map(|(s, _)| s).map_err(|e| match e {
        hopfinv::Error::Validation(findings) => findings
            .iter()
            .map(|f| f.message.clone())
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    })
}

fn degree(n: usize) -> Result<usize, String> {
    if (1..=MAX_DEMO_DEGREE).contains(&n) {
        Ok(n)
    } else {
        Err(format!("degree must be in 1..={MAX_DEMO_DEGREE}"))
    }
}

pub fn preset_text(name: &str) -> Result<String, String> {
    let s = match name {
        "sweedler" => presets::sweedler(),
        "diagonal" => presets::diagonal(FieldSpec::Rational, &[1, -1]),
        "scalar-minus-one" => presets::scalar(FieldSpec::Rational, 2, -1),
        "jordan-gf3" => presets::jordan(FieldSpec::Prime(3), &[Block { start: 1, end: 2, eigenvalue: 0 }], 1, 1),
        other => return Err(format!("unknown preset {other:?}")),
    };
    Ok(serialize_spec(&s))
}

pub fn probe_text(spec_json: &str, max_degree: usize, output: &str) -> Result<String, String> {
    let s = spec(spec_json)?;
    let r = probe_generation(&s, degree(max_degree)?, SizeCap::default()).map_err(|e| e.to_string())?;
    Ok(report::render_probe(&s, &r, format(output)?))
}

pub fn invariants_text(spec_json: &str, n: usize, output: &str) -> Result<String, String> {
    let s = spec(spec_json)?;
    let basis = invariant_basis(&s, degree(n)?, SizeCap::default()).map_err(|e| e.to_string())?;
    Ok(report::render_invariants(&s, &[report::degree_basis(n, &basis)], format(output)?))
}

/// `n, c_n(eta, mu)` for `n = 1..=n_max`, one line each.
pub fn cn_text(n_max: usize, eta: &str, mu: &str, field: &str) -> Result<String, String> {
    if !(1..=MAX_CN).contains(&n_max) {
        return Err(format!("n must be in 1..={MAX_CN}"));
    }
    let field: FieldSpec = field.parse().map_err(|e: hopfinv::Error| e.to_string())?;
    let eta = field.parse_scalar(eta).map_err(|e| e.to_string())?;
    let mu = field.parse_scalar(mu).map_err(|e| e.to_string())?;
    let mut out = String::from("n  c_n\n");
    for n in 1..=n_max {
        let c = cn_eval(n, &eta, &mu).map_err(|e| e.to_string())?;
        out.push_str(&format!("{n}  {c}\n"));
    }
    Ok(out)
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn preset(name: &str) -> Result<String, JsError> {
    js(preset_text(name))
}

#[wasm_bindgen]
pub fn probe(spec_json: &str, max_degree: usize, output: &str) -> Result<String, JsError> {
    js(probe_text(spec_json, max_degree, output))
}

#[wasm_bindgen]
pub fn invariants(spec_json: &str, n: usize, output: &str) -> Result<String, JsError> {
    js(invariants_text(spec_json, n, output))
}

#[wasm_bindgen]
pub fn cn_table(n_max: usize, eta: &str, mu: &str, field: &str) -> Result<String, JsError> {
    js(cn_text(n_max, eta, mu, field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse_back() {
        for name in PRESETS {
            assert!(spec(&preset_text(name).unwrap()).is_ok(), "{name}");
        }
        assert!(preset_text("nope").is_err());
    }

    #[test]
    fn probe_and_invariants() {
        let sweedler = preset_text("sweedler").unwrap();
        let basis = invariants_text(&sweedler, 3, "csv").unwrap();
        assert!(basis.ends_with("3,1,x1*x1*x1\n3,2,x1*x2*x2 - x2*x1*x2 + x2*x2*x1\n"), "{basis}");
        let table = probe_text(&preset_text("scalar-minus-one").unwrap(), 4, "table").unwrap();
        assert!(table.contains("no new generators in degrees (2, 4]"), "{table}");
        assert!(probe_text(&sweedler, MAX_DEMO_DEGREE + 1, "table").is_err());
        assert!(probe_text("{}", 2, "table").is_err());
        assert!(probe_text(&sweedler, 2, "yaml").is_err());
    }

    #[test]
    fn cn_rows() {
        assert_eq!(cn_text(4, "1", "2", "p:5").unwrap(), "n  c_n\n1  1\n2  3\n3  2\n4  0\n");
        assert!(cn_text(0, "1", "1", "q").is_err());
        assert!(cn_text(2, "x", "1", "q").is_err());
    }
}
