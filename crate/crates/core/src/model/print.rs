//! Canonical printing: forms as coefficient-times-wedge-monomial sums with
//! terms sorted lexicographically by multi-index, scalars as normalized
//! rational functions. Output is bit-exact across runs.

use crate::form::Form;
use crate::frame::CoframeAlgebra;
use crate::poly::Poly;
use crate::scalar::{fmt_poly, Scalar, SymbolTable};

pub fn format_scalar(s: &Scalar, table: &SymbolTable) -> String {
    crate::scalar::ScalarDisplay { scalar: s, table }.to_string()
}

/// Print a coefficient for use before `*monomial`; `1` and `-1` collapse onto
/// the sign.
fn coefficient_prefix(s: &Scalar, table: &SymbolTable, leading: bool) -> String {
    let one = Scalar::one();
    let minus_one = -&one;
    if *s == one {
        if leading {
            String::new()
        } else {
            "+ ".to_string()
        }
    } else if *s == minus_one {
        if leading {
            "-".to_string()
        } else {
            "- ".to_string()
        }
    } else {
        // try to print "- c" for a plainly negated coefficient
        let printed = format_scalar(s, table);
        if leading {
            format!("{printed}*")
        } else if let Some(stripped) = printed.strip_prefix('-') {
            format!("- {stripped}*")
        } else {
            format!("+ {printed}*")
        }
    }
}

pub fn format_form(f: &Form, frame: &CoframeAlgebra) -> String {
    format_form_with(f, frame.covector_names(), &frame.symbols)
}

pub fn format_form_with(f: &Form, covectors: &[String], table: &SymbolTable) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (idx, c)) in f.terms().enumerate() {
        let mono = idx
            .iter()
            .map(|&i| covectors[i as usize].clone())
            .collect::<Vec<_>>()
            .join("^");
        if idx.is_empty() {
            // degree-0 term
            let printed = format_scalar(c, table);
            if n == 0 {
                out.push_str(&printed);
            } else if let Some(stripped) = printed.strip_prefix('-') {
                out.push_str(&format!(" - {stripped}"));
            } else {
                out.push_str(&format!(" + {printed}"));
            }
            continue;
        }
        let prefix = coefficient_prefix(c, table, n == 0);
        if n > 0 {
            out.push(' ');
        }
        out.push_str(&format!("{prefix}{mono}"));
    }
    out
}

pub fn format_poly_str(p: &Poly, table: &SymbolTable) -> String {
    fmt_poly(p, table)
}

/// Canonical reprint of a bound model. Reparsing the output binds to an
/// identical model; the content hash is taken over this text, so whitespace
/// and comments in the source never affect model identity.
pub fn print_model(model: &crate::model::bind::Model) -> String {
    let frame = &model.frame;
    let mut out = String::new();
    out.push_str(&format!("frame {}\n", frame.covector_names().join(" ")));
    if let Some(i) = frame.dt_index {
        out.push_str(&format!("covector {} : dt\n", frame.covector_name(i)));
    }
    if let Some(i) = frame.theta_index {
        out.push_str(&format!("covector {} : theta\n", frame.covector_name(i)));
    }
    for (names, nonzero) in &model.param_groups {
        out.push_str(&format!("param {}", names.join(" ")));
        if *nonzero {
            out.push_str(" != 0");
        }
        out.push('\n');
    }
    for (id, decl) in frame.symbols.iter() {
        let in_params = model
            .param_groups
            .iter()
            .any(|(names, _)| names.contains(&decl.name));
        if in_params {
            continue;
        }
        out.push_str(&format!("scalar {}", decl.name));
        if let Some(rate) = &decl.dt_value {
            out.push_str(&format!(" ddt = {}", format_scalar(rate, &frame.symbols)));
        }
        if let Some(d) = &decl.d_value {
            out.push_str(&format!(" d = {}", format_form(&d.widen(frame.dim()), frame)));
        }
        out.push('\n');
        let _ = id;
    }
    for i in 0..frame.dim() {
        let d = frame.differential(i);
        if !d.is_zero() {
            out.push_str(&format!(
                "d {} = {}\n",
                frame.covector_name(i),
                format_form(d, frame)
            ));
        }
    }
    for (name, endo) in &model.endos {
        let mut rows = Vec::new();
        for i in 0..frame.dim() {
            let image = endo.covector_image(i);
            rows.push(format!(
                "{} -> {}",
                frame.covector_name(i),
                format_form(&image, frame)
            ));
        }
        out.push_str(&format!("endo {name} : {}\n", rows.join(", ")));
    }
    for (name, v) in &model.vectors {
        let mut f = Form::zero(frame.dim(), 1);
        for (i, c) in v.components.iter().enumerate() {
            f.add_term(vec![i as u8], c.clone());
        }
        out.push_str(&format!("vector {name} = {}\n", format_form(&f, frame)));
    }
    for (name, g) in &model.metrics {
        let diag: Vec<String> = (0..g.rows())
            .map(|i| format_scalar(g.get(i, i), &frame.symbols))
            .collect();
        out.push_str(&format!("metric {name} = diag({})\n", diag.join(", ")));
    }
    for (name, f) in &model.forms {
        out.push_str(&format!("form {name} = {}\n", format_form(f, frame)));
    }
    for decl in &model.structure_decls {
        let bindings: Vec<String> = decl
            .bindings
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        out.push_str(&format!(
            "{} {} : {}\n",
            decl.kind,
            decl.name,
            bindings.join(", ")
        ));
    }
    for (id, q) in &model.samples {
        let denom = q.denom();
        if denom == &num_bigint::BigInt::from(1) {
            out.push_str(&format!(
                "sample {} = {}\n",
                frame.symbols.name(*id),
                q.numer()
            ));
        } else {
            out.push_str(&format!(
                "sample {} = {}/{}\n",
                frame.symbols.name(*id),
                q.numer(),
                denom
            ));
        }
    }
    out
}

/// SHA-256 of the canonical reprint, hex-encoded.
pub fn content_hash(canonical: &str) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
