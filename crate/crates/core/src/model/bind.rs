//! Binder: resolves a parsed model into a coframe algebra plus named
//! geometric objects. Reference resolution, duplicate detection and the
//! `d^2 = 0` certificate all happen here.

use crate::form::Form;
use crate::frame::{CoframeAlgebra, Endo, VectorField};
use crate::hkt::ContactTriple;
use crate::linalg::Matrix;
use crate::model::parse::{CoeffExpr, FormExpr, ModelAst, ParseError, Span, Statement};
use crate::poly::{Q, SymId};
use crate::scalar::{Scalar, SymbolDecl, SymbolTable};
use crate::structures::{
    AlmostContactMetric, HermitianStructure, SU2Structure, SU3Structure,
};
use num_bigint::BigInt;

#[derive(Clone, Debug)]
pub struct BindError {
    pub span: Option<Span>,
    pub message: String,
}

impl std::fmt::Display for BindError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.span {
            Some(s) => write!(f, "{}:{}: {}", s.line, s.col, self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for BindError {}

impl From<ParseError> for BindError {
    fn from(e: ParseError) -> BindError {
        BindError {
            span: Some(e.span),
            message: e.message,
        }
    }
}

fn err<T>(span: Option<Span>, message: impl Into<String>) -> Result<T, BindError> {
    Err(BindError {
        span,
        message: message.into(),
    })
}

/// Structure declarations retained for canonical reprinting.
#[derive(Clone, Debug)]
pub struct StructureDecl {
    pub kind: String,
    pub name: String,
    pub bindings: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct Model {
    pub frame: CoframeAlgebra,
    pub forms: Vec<(String, Form)>,
    pub endos: Vec<(String, Endo)>,
    pub vectors: Vec<(String, VectorField)>,
    pub metrics: Vec<(String, Matrix)>,
    pub contacts: Vec<(String, AlmostContactMetric)>,
    pub hermitians: Vec<(String, HermitianStructure)>,
    pub su2s: Vec<(String, SU2Structure)>,
    pub su3s: Vec<(String, SU3Structure)>,
    pub triples: Vec<(String, ContactTriple)>,
    pub families: Vec<(String, SU2Structure)>,
    pub samples: Vec<(SymId, Q)>,
    pub structure_decls: Vec<StructureDecl>,
    pub param_groups: Vec<(Vec<String>, bool)>,
    pub hash: String,
}

impl Model {
    pub fn form(&self, name: &str) -> Option<&Form> {
        self.forms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn endo(&self, name: &str) -> Option<&Endo> {
        self.endos.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn vector(&self, name: &str) -> Option<&VectorField> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn metric(&self, name: &str) -> Option<&Matrix> {
        self.metrics.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn contact(&self, name: &str) -> Option<&AlmostContactMetric> {
        self.contacts.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn hermitian(&self, name: &str) -> Option<&HermitianStructure> {
        self.hermitians.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn su2(&self, name: &str) -> Option<&SU2Structure> {
        self.su2s.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn su3(&self, name: &str) -> Option<&SU3Structure> {
        self.su3s.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn triple(&self, name: &str) -> Option<&ContactTriple> {
        self.triples.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
    pub fn family(&self, name: &str) -> Option<&SU2Structure> {
        self.families.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    /// Sample lookup closure for the orientation and nonvanishing checks.
    pub fn sample_fn(&self) -> impl Fn(SymId) -> Option<Q> + '_ {
        move |id| {
            self.samples
                .iter()
                .find(|(s, _)| *s == id)
                .map(|(_, q)| q.clone())
        }
    }
}

struct Binder {
    covectors: Vec<String>,
    symbols: SymbolTable,
}

impl Binder {
    fn dim(&self) -> usize {
        self.covectors.len()
    }

    fn covector_index(&self, name: &str) -> Option<usize> {
        self.covectors.iter().position(|c| c == name)
    }

    fn coeff(&self, e: &CoeffExpr, span: &Span) -> Result<Scalar, BindError> {
        Ok(match e {
            CoeffExpr::Int(n) => Scalar::from_int(*n),
            CoeffExpr::Symbol(s) => match self.symbols.lookup(s) {
                Some(id) => Scalar::var(id),
                None => {
                    return err(
                        Some(span.clone()),
                        format!("unresolved symbol '{s}' in coefficient"),
                    )
                }
            },
            CoeffExpr::Neg(a) => -&self.coeff(a, span)?,
            CoeffExpr::Add(a, b) => &self.coeff(a, span)? + &self.coeff(b, span)?,
            CoeffExpr::Sub(a, b) => &self.coeff(a, span)? - &self.coeff(b, span)?,
            CoeffExpr::Mul(a, b) => &self.coeff(a, span)? * &self.coeff(b, span)?,
            CoeffExpr::Div(a, b) => {
                let d = self.coeff(b, span)?;
                if d.is_zero() {
                    return err(Some(span.clone()), "division by zero in coefficient");
                }
                &self.coeff(a, span)? / &d
            }
            CoeffExpr::Pow(a, n) => {
                let base = self.coeff(a, span)?;
                if *n < 0 && base.is_zero() {
                    return err(Some(span.clone()), "negative power of zero");
                }
                base.pow(*n)
            }
        })
    }

    fn form(&self, e: &FormExpr) -> Result<Form, BindError> {
        let dim = self.dim();
        let mut degree: Option<usize> = None;
        let mut out: Option<Form> = None;
        for term in &e.terms {
            let mut coeff = match &term.coeff {
                None => Scalar::one(),
                Some(c) => self.coeff(c, &term.span)?,
            };
            if term.sign < 0 {
                coeff = -&coeff;
            }
            let mut indices = Vec::new();
            for (pos, name) in term.covectors.iter().enumerate() {
                if let Some(i) = self.covector_index(name) {
                    indices.push(i);
                } else if let Some(id) = self.symbols.lookup(name) {
                    // a symbol in the leading position acts as a coefficient
                    if pos == indices.len() && indices.is_empty() {
                        coeff = &coeff * &Scalar::var(id);
                    } else {
                        return err(
                            Some(term.span.clone()),
                            format!("symbol '{name}' cannot appear inside a wedge product"),
                        );
                    }
                } else {
                    return err(
                        Some(term.span.clone()),
                        format!("unresolved reference '{name}'"),
                    );
                }
            }
            let f = Form::monomial(dim, &indices, coeff);
            match degree {
                None => degree = Some(indices.len()),
                Some(d) => {
                    if d != indices.len() && !f.is_zero() {
                        return err(
                            Some(term.span.clone()),
                            format!(
                                "mixed degrees in a form expression: {d} and {}",
                                indices.len()
                            ),
                        );
                    }
                }
            }
            out = Some(match out {
                None => f,
                Some(acc) => {
                    if acc.is_zero() && acc.degree() != f.degree() {
                        f
                    } else if f.is_zero() {
                        acc
                    } else {
                        acc.add(&f)
                    }
                }
            });
        }
        Ok(out.unwrap_or_else(|| Form::zero(dim, 2)))
    }
}

/// Bind a parsed model. `d^2 = 0` is verified; failure is a bind error with
/// the obstruction printed.
pub fn bind(ast: &ModelAst) -> Result<Model, BindError> {
    // pass 1: frame, symbol names
    let mut covectors: Vec<String> = Vec::new();
    for stmt in &ast.statements {
        if let Statement::Frame { covectors: c } = stmt {
            if !covectors.is_empty() {
                return err(None, "only one frame declaration is allowed");
            }
            covectors = c.clone();
        }
    }
    if covectors.is_empty() {
        return err(None, "model has no frame declaration");
    }
    {
        let mut seen = std::collections::BTreeSet::new();
        for c in &covectors {
            if !seen.insert(c.clone()) {
                return err(None, format!("duplicate covector name '{c}'"));
            }
        }
    }
    let mut symbols = SymbolTable::new();
    let mut param_groups = Vec::new();
    for stmt in &ast.statements {
        match stmt {
            Statement::Params { names, nonzero } => {
                for n in names {
                    if covectors.contains(n) {
                        return err(None, format!("name '{n}' is already a covector"));
                    }
                    if symbols.lookup(n).is_some() {
                        return err(None, format!("duplicate symbol name '{n}'"));
                    }
                    let mut decl = SymbolDecl::parameter(n);
                    if *nonzero {
                        decl.constraints.push(format!("{n} != 0"));
                    }
                    symbols.declare(decl);
                }
                param_groups.push((names.clone(), *nonzero));
            }
            Statement::Scalar { name, .. } => {
                if covectors.contains(name) {
                    return err(None, format!("name '{name}' is already a covector"));
                }
                if symbols.lookup(name).is_some() {
                    return err(None, format!("duplicate symbol name '{name}'"));
                }
                symbols.declare(SymbolDecl::parameter(name));
            }
            _ => {}
        }
    }
    let mut binder = Binder { covectors, symbols };
    // pass 2: scalar differentials and rates
    for stmt in &ast.statements {
        if let Statement::Scalar { name, ddt, d } = stmt {
            let id = binder.symbols.lookup(name).unwrap();
            if let Some(rate) = ddt {
                let span = Span { line: 0, col: 0 };
                let value = binder.coeff(rate, &span)?;
                check_symbol_order(&binder.symbols, id, &value.symbols(), name)?;
                binder.symbols.get_mut(id).dt_value = Some(value);
            }
            if let Some(dform) = d {
                let value = binder.form(dform)?;
                if value.degree() != 1 && !value.is_zero() {
                    return err(None, format!("d {name} must be a 1-form"));
                }
                let mut referenced = Vec::new();
                for (_, c) in value.terms() {
                    referenced.extend(c.symbols());
                }
                check_symbol_order(&binder.symbols, id, &referenced, name)?;
                binder.symbols.get_mut(id).d_value = Some(value);
            }
        }
    }
    // frame assembly
    let mut frame = CoframeAlgebra::new(binder.covectors.clone(), binder.symbols.clone());
    for stmt in &ast.statements {
        match stmt {
            Statement::CovectorMark { name, kind } => {
                let idx = match binder.covector_index(name) {
                    Some(i) => i,
                    None => return err(None, format!("unknown covector '{name}'")),
                };
                if kind == "dt" {
                    frame.dt_index = Some(idx);
                } else {
                    frame.theta_index = Some(idx);
                }
            }
            Statement::Differential {
                covector,
                value,
                span,
            } => {
                let idx = match binder.covector_index(covector) {
                    Some(i) => i,
                    None => {
                        return err(Some(span.clone()), format!("unknown covector '{covector}'"))
                    }
                };
                let f = binder.form(value)?;
                if !f.is_zero() && f.degree() != 2 {
                    return err(
                        Some(span.clone()),
                        format!("d {covector} must be a 2-form"),
                    );
                }
                frame.set_differential(idx, if f.is_zero() { Form::zero(frame.dim(), 2) } else { f });
            }
            _ => {}
        }
    }
    // d^2 = 0 certificate
    let dsq = frame.check_d_squared();
    if !dsq.holds() {
        let first = dsq
            .checks
            .iter()
            .find(|c| !c.holds)
            .map(|c| {
                format!(
                    "{} obstruction {}",
                    c.name,
                    c.obstruction.clone().unwrap_or_default()
                )
            })
            .unwrap_or_default();
        return err(None, format!("structure equations violate d^2 = 0: {first}"));
    }
    // named objects
    let mut model = Model {
        frame: frame.clone(),
        forms: Vec::new(),
        endos: Vec::new(),
        vectors: Vec::new(),
        metrics: Vec::new(),
        contacts: Vec::new(),
        hermitians: Vec::new(),
        su2s: Vec::new(),
        su3s: Vec::new(),
        triples: Vec::new(),
        families: Vec::new(),
        samples: Vec::new(),
        structure_decls: Vec::new(),
        param_groups,
        hash: String::new(),
    };
    for stmt in &ast.statements {
        match stmt {
            Statement::Endo { name, rows } => {
                if model.endo(name).is_some() {
                    return err(None, format!("duplicate endo name '{name}'"));
                }
                let mut endo = Endo::zero(frame.dim());
                for (cov, image, span) in rows {
                    let idx = match binder.covector_index(cov) {
                        Some(i) => i,
                        None => {
                            return err(Some(span.clone()), format!("unknown covector '{cov}'"))
                        }
                    };
                    let f = binder.form(image)?;
                    if !f.is_zero() && f.degree() != 1 {
                        return err(
                            Some(span.clone()),
                            "endo images must be 1-forms".to_string(),
                        );
                    }
                    if f.is_zero() {
                        endo.set(idx, &Form::zero(frame.dim(), 1));
                    } else {
                        endo.set(idx, &f);
                    }
                }
                model.endos.push((name.clone(), endo));
            }
            Statement::Vector { name, value, span } => {
                if model.vector(name).is_some() {
                    return err(None, format!("duplicate vector name '{name}'"));
                }
                let f = binder.form(value)?;
                if !f.is_zero() && f.degree() != 1 {
                    return err(Some(span.clone()), "vector components must pair covectors".to_string());
                }
                let mut v = VectorField::zero(frame.dim());
                for (idx, c) in f.terms() {
                    v.components[idx[0] as usize] = c.clone();
                }
                model.vectors.push((name.clone(), v));
            }
            Statement::MetricDiag { name, entries } => {
                if model.metric(name).is_some() {
                    return err(None, format!("duplicate metric name '{name}'"));
                }
                if entries.len() != frame.dim() {
                    return err(
                        None,
                        format!(
                            "metric '{name}' has {} entries for a {}-dimensional frame",
                            entries.len(),
                            frame.dim()
                        ),
                    );
                }
                let span = Span { line: 0, col: 0 };
                let diag: Result<Vec<Scalar>, BindError> =
                    entries.iter().map(|e| binder.coeff(e, &span)).collect();
                model.metrics.push((name.clone(), Matrix::diag(diag?)));
            }
            Statement::MetricOrthonormal { name } => {
                if model.metric(name).is_some() {
                    return err(None, format!("duplicate metric name '{name}'"));
                }
                model
                    .metrics
                    .push((name.clone(), Matrix::identity(frame.dim())));
            }
            Statement::Form { name, value, span } => {
                if model.form(name).is_some() {
                    return err(
                        Some(span.clone()),
                        format!("duplicate form name '{name}'"),
                    );
                }
                model.forms.push((name.clone(), binder.form(value)?));
            }
            Statement::Structure {
                kind,
                name,
                bindings,
            } => {
                bind_structure(&mut model, &frame, kind, name, bindings)?;
            }
            Statement::Sample {
                symbol,
                numer,
                denom,
            } => {
                let id = match binder.symbols.lookup(symbol) {
                    Some(id) => id,
                    None => return err(None, format!("unknown symbol '{symbol}' in sample")),
                };
                model
                    .samples
                    .push((id, Q::new(BigInt::from(*numer), BigInt::from(*denom))));
            }
            _ => {}
        }
    }
    let printed = crate::model::print::print_model(&model);
    model.hash = crate::model::print::content_hash(&printed);
    Ok(model)
}

fn check_symbol_order(
    table: &SymbolTable,
    id: SymId,
    referenced: &[SymId],
    name: &str,
) -> Result<(), BindError> {
    for r in referenced {
        if *r > id {
            return err(
                None,
                format!(
                    "declared differential of '{name}' references the later symbol '{}'",
                    table.name(*r)
                ),
            );
        }
    }
    Ok(())
}

fn bind_structure(
    model: &mut Model,
    frame: &CoframeAlgebra,
    kind: &str,
    name: &str,
    bindings: &[(String, String, Span)],
) -> Result<(), BindError> {
    let get = |key: &str| -> Option<(&String, &Span)> {
        bindings
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, s)| (v, s))
    };
    let require = |key: &str| -> Result<(&String, &Span), BindError> {
        get(key).ok_or_else(|| BindError {
            span: bindings.first().map(|(_, _, s)| s.clone()),
            message: format!("{kind} '{name}' is missing binding '{key}'"),
        })
    };
    let record = StructureDecl {
        kind: kind.to_string(),
        name: name.to_string(),
        bindings: bindings
            .iter()
            .map(|(k, v, _)| (k.clone(), v.clone()))
            .collect(),
    };
    match kind {
        "contact" => {
            let (iname, ispan) = require("I")?;
            let i = model
                .endo(iname)
                .cloned()
                .ok_or_else(|| BindError {
                    span: Some(ispan.clone()),
                    message: format!("unknown endo '{iname}'"),
                })?;
            let (xiname, xspan) = require("xi")?;
            let xi = model.vector(xiname).cloned().ok_or_else(|| BindError {
                span: Some(xspan.clone()),
                message: format!("unknown vector '{xiname}'"),
            })?;
            let (ename, espan) = require("eta")?;
            let eta = resolve_one_form(model, frame, ename).ok_or_else(|| BindError {
                span: Some(espan.clone()),
                message: format!("'{ename}' is neither a declared 1-form nor a covector"),
            })?;
            let (gname, gspan) = require("g")?;
            let g = model.metric(gname).cloned().ok_or_else(|| BindError {
                span: Some(gspan.clone()),
                message: format!("unknown metric '{gname}'"),
            })?;
            model
                .contacts
                .push((name.to_string(), AlmostContactMetric::new(i, xi, eta, g)));
        }
        "hermitian" => {
            let (jname, jspan) = require("J")?;
            let j = model.endo(jname).cloned().ok_or_else(|| BindError {
                span: Some(jspan.clone()),
                message: format!("unknown endo '{jname}'"),
            })?;
            let (hname, hspan) = require("h")?;
            let h = model.metric(hname).cloned().ok_or_else(|| BindError {
                span: Some(hspan.clone()),
                message: format!("unknown metric '{hname}'"),
            })?;
            model
                .hermitians
                .push((name.to_string(), HermitianStructure::new(j, h)));
        }
        "su2" | "family" => {
            let (ename, espan) = require("eta")?;
            let eta = resolve_one_form(model, frame, ename).ok_or_else(|| BindError {
                span: Some(espan.clone()),
                message: format!("'{ename}' is neither a declared 1-form nor a covector"),
            })?;
            let mut omegas = Vec::new();
            for key in ["omega1", "omega2", "omega3"] {
                let (fname, fspan) = require(key)?;
                let f = model.form(fname).cloned().ok_or_else(|| BindError {
                    span: Some(fspan.clone()),
                    message: format!("unknown form '{fname}'"),
                })?;
                omegas.push(f);
            }
            let g = match get("g") {
                None => None,
                Some((gname, gspan)) => Some(model.metric(gname).cloned().ok_or_else(|| {
                    BindError {
                        span: Some(gspan.clone()),
                        message: format!("unknown metric '{gname}'"),
                    }
                })?),
            };
            let s = SU2Structure {
                eta,
                omega1: omegas[0].clone(),
                omega2: omegas[1].clone(),
                omega3: omegas[2].clone(),
                g,
            };
            if kind == "su2" {
                model.su2s.push((name.to_string(), s));
            } else {
                model.families.push((name.to_string(), s));
            }
        }
        "su3" => {
            let (fname, fspan) = require("F")?;
            let f = model.form(fname).cloned().ok_or_else(|| BindError {
                span: Some(fspan.clone()),
                message: format!("unknown form '{fname}'"),
            })?;
            let mut psis = Vec::new();
            for key in ["psi_plus", "psi_minus"] {
                let (pname, pspan) = require(key)?;
                let p = model.form(pname).cloned().ok_or_else(|| BindError {
                    span: Some(pspan.clone()),
                    message: format!("unknown form '{pname}'"),
                })?;
                psis.push(p);
            }
            let (jname, jspan) = require("J")?;
            let j = model.endo(jname).cloned().ok_or_else(|| BindError {
                span: Some(jspan.clone()),
                message: format!("unknown endo '{jname}'"),
            })?;
            model.su3s.push((
                name.to_string(),
                SU3Structure {
                    f,
                    psi_plus: psis[0].clone(),
                    psi_minus: psis[1].clone(),
                    j,
                },
            ));
        }
        "triple" => {
            let mut structures = Vec::new();
            for key in ["c1", "c2", "c3"] {
                let (cname, cspan) = require(key)?;
                let c = model.contact(cname).cloned().ok_or_else(|| BindError {
                    span: Some(cspan.clone()),
                    message: format!("unknown contact structure '{cname}'"),
                })?;
                structures.push(c);
            }
            model.triples.push((
                name.to_string(),
                ContactTriple {
                    structures: [
                        structures[0].clone(),
                        structures[1].clone(),
                        structures[2].clone(),
                    ],
                },
            ));
        }
        other => {
            return err(None, format!("unknown structure kind '{other}'"));
        }
    }
    model.structure_decls.push(record);
    Ok(())
}

/// A 1-form reference: a declared form name or a bare covector name.
fn resolve_one_form(model: &Model, frame: &CoframeAlgebra, name: &str) -> Option<Form> {
    if let Some(f) = model.form(name) {
        if f.degree() == 1 {
            return Some(f.clone());
        }
        return None;
    }
    frame.covector_index(name).map(|i| frame.covector(i))
}

/// Parse and bind in one step.
pub fn parse_model(src: &str) -> Result<Model, BindError> {
    let ast = crate::model::parse::parse(src)?;
    bind(&ast)
}

/// Parse a standalone form expression against an existing model (used by the
/// command-line `--omega` and `--parallel` arguments).
pub fn parse_form_in_model(model: &Model, src: &str) -> Result<Form, BindError> {
    if let Some(f) = model.form(src.trim()) {
        return Ok(f.clone());
    }
    let tokens = crate::model::parse::Lexer::new(src).tokenize()?;
    let mut parser = crate::model::parse::Parser::new(tokens);
    let expr = parser.parse_form_expr()?;
    let binder = Binder {
        covectors: model.frame.covector_names().to_vec(),
        symbols: model.frame.symbols.clone(),
    };
    binder.form(&expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEISENBERG: &str = "
frame e1 e2 e3 e4 e5
d e5 = e1^e2 + e3^e4
endo I : e1 -> -e2, e2 -> e1, e3 -> -e4, e4 -> e3, e5 -> 0
vector xi = e5
metric g = orthonormal
contact S : I = I, xi = xi, eta = e5, g = g
";

    #[test]
    fn binds_the_heisenberg_model() {
        let model = parse_model(HEISENBERG).expect("bind");
        assert_eq!(model.frame.dim(), 5);
        let acs = model.contact("S").unwrap();
        assert_eq!(
            acs.omega,
            Form::monomial(5, &[0, 1], Scalar::from_int(-1))
                .add(&Form::monomial(5, &[2, 3], Scalar::from_int(-1)))
        );
        assert!(!model.hash.is_empty());
    }

    #[test]
    fn self_wedge_normalizes_to_zero_and_unresolved_names_error() {
        // e1^e1 normalizes to zero, so this is accepted with d e1 = 0
        let ok = parse_model("frame e1\nd e1 = e1^e1");
        assert!(ok.is_ok());
        // an undeclared covector is an unresolved reference
        let bad = parse_model("frame e1\nd e1 = 2*e1^e2");
        let msg = format!("{}", bad.unwrap_err());
        assert!(msg.contains("unresolved"), "{msg}");
    }

    #[test]
    fn jacobi_violation_is_a_bind_error() {
        let bad = parse_model("frame e1 e2 e3\nd e1 = e1^e2\nd e2 = e2^e3");
        let msg = format!("{}", bad.unwrap_err());
        assert!(msg.contains("d^2"), "{msg}");
    }

    #[test]
    fn parameterized_coefficients_resolve() {
        let src = "
frame e1 e2 e3 e4 e5
param a != 0
d e1 = a*e2^e3 + 3*e2^e5
d e2 = -a*e1^e3 - 3*e1^e5
d e3 = a*e3^e4
d e5 = -1/3*a^2*e3^e4
";
        let model = parse_model(src).expect("bind");
        assert_eq!(model.frame.symbols.len(), 1);
        assert!(model
            .frame
            .symbols
            .get(0)
            .constraints
            .contains(&"a != 0".to_string()));
    }

    #[test]
    fn scalar_with_rate_and_differential() {
        let src = "
frame e1 e2 dt
covector dt : dt
scalar w ddt = 1/(2*w^2) d = 1/(2*w^2)*dt
d e2 = w*e1^dt
";
        let model = parse_model(src).expect("bind");
        let w = model.frame.symbols.lookup("w").unwrap();
        assert!(model.frame.symbols.get(w).dt_value.is_some());
        assert!(model.frame.symbols.get(w).d_value.is_some());
        assert_eq!(model.frame.dt_index, Some(2));
    }
}
