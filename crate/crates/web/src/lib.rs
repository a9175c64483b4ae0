//! Browser bindings for the `spinid` demo page.
//!
//! Each export has a plain Rust counterpart returning `Result<String, String>`
//! so the logic can be tested natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use spinid::charid::{build_identity, verify_identity, Normalization, VerifyMode};
use spinid::rewrite::{parse, reduce_degree, render_normal_form, Format};
use spinid::spinrep::SpinRep;

/// Largest dimension the page accepts; exhaustive checks beyond this take
/// too long for an interactive tab.
pub const MAX_DIM: usize = 8;

fn check_dim(dim: usize, min: usize) -> Result<(), String> {
    if (min..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(format!(
            "dimension must be between {min} and {MAX_DIM}, got {dim}"
        ))
    }
}

/// LaTeX source of the three spin matrices.
pub fn generators_latex(dim: usize) -> Result<String, String> {
    check_dim(dim, 1)?;
    let rep = SpinRep::new(dim).map_err(|e| e.to_string())?;
    Ok(rep.to_latex())
}

/// The reduction identity as JSON: LaTeX text plus the outcome of an
/// exhaustive check on the representation of dimension `rep_dim`.
pub fn identity_report(dim: usize, rep_dim: usize, integral: bool) -> Result<String, String> {
    check_dim(dim, 2)?;
    check_dim(rep_dim, 1)?;
    let ident = build_identity(dim).map_err(|e| e.to_string())?;
    let norm = if integral {
        Normalization::Integral
    } else {
        Normalization::Monic
    };
    let rep = SpinRep::new(rep_dim).map_err(|e| e.to_string())?;
    let report = verify_identity(&rep, &ident, VerifyMode::Exhaustive);
    let witness = report.failures.first().map(|f| {
        json!({
            "tuple": f.tuple,
            "row": f.row + 1,
            "col": f.col + 1,
            "entry": f.entry.to_string(),
        })
    });
    Ok(json!({
        "latex": ident.to_latex(norm, false),
        "tuples_checked": report.tuples_checked.to_string(),
        "failures": report.failures.len(),
        "witness": witness,
    })
    .to_string())
}

/// Normal form of `expr` in dimension `dim`, as `plain` or `latex` text.
pub fn reduce_text(expr: &str, dim: usize, format: &str) -> Result<String, String> {
    check_dim(dim, 2)?;
    let format = match format {
        "plain" => Format::Plain,
        "latex" => Format::Latex,
        other => return Err(format!("unknown format '{other}'")),
    };
    let poly = parse(expr).map_err(|e| format!("parse error: {e}"))?;
    let nf = reduce_degree(&poly, dim).map_err(|e| e.to_string())?;
    Ok(render_normal_form(&nf, format))
}

#[wasm_bindgen]
pub fn generators(dim: usize) -> Result<String, JsError> {
    generators_latex(dim).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn identity(dim: usize, rep_dim: usize, integral: bool) -> Result<String, JsError> {
    identity_report(dim, rep_dim, integral).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn reduce(expr: &str, dim: usize, format: &str) -> Result<String, JsError> {
    reduce_text(expr, dim, format).map_err(|e| JsError::new(&e))
}
