//! Metric connections on orthonormal frames with parameter-constant
//! structure coefficients: Levi-Civita, Bismut, the characteristic contact
//! connection, their curvature, parallelism checks, and the curvature-span
//! holonomy estimate.
//!
//! Connection forms satisfy `om^i_j(e_k) = g(nabla_{e_k} e_j, e_i)`; the first
//! structure equation residual `d e^i + om^i_j ^ e^j` reproduces the torsion.

use crate::form::Form;
use crate::frame::{CoframeAlgebra, Endo};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::structures::{AlmostContactMetric, HermitianStructure};

#[derive(Clone)]
pub struct ConnectionForms {
    /// forms[i][j] = om^i_j, a 1-form; metric skew-symmetry om^i_j = -om^j_i.
    pub forms: Vec<Vec<Form>>,
}

impl ConnectionForms {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    /// Christoffel value `Gamma_{k j}^{i} = om^i_j(e_k)`.
    pub fn gamma(&self, k: usize, j: usize, i: usize) -> Scalar {
        self.forms[i][j].coefficient(&[k as u8])
    }

    pub fn is_skew(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.forms[i][j] == self.forms[j][i].neg()))
    }

    /// Residual of the first structure equation: `Theta^i = d e^i + om^i_j ^ e^j`.
    pub fn torsion_two_forms(&self, frame: &CoframeAlgebra) -> Vec<Form> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut t = frame.differential(i).clone();
                for j in 0..n {
                    t = t.add(&self.forms[i][j].wedge(&frame.covector(j)));
                }
                t
            })
            .collect()
    }

    /// The derivative matrix `A_k` acting on vectors: `(A_k)[i][j] = Gamma_{k j}^{i}`.
    pub fn derivative_matrix(&self, k: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| self.gamma(k, j, i))
    }

    /// Covariant derivative of a form along `e_k`.
    pub fn covariant_derivative_form(&self, frame: &CoframeAlgebra, k: usize, a: &Form) -> Form {
        let n = self.dim();
        let mut out = Form::zero(n, a.degree());
        for (idx, c) in a.terms() {
            // direction derivative of the coefficient
            let dc = frame.scalar_d(c);
            let dk = dc.coefficient(&[k as u8]);
            out.add_term(idx.clone(), dk);
            // slot corrections: -Gamma_{k, i_s, a} replaces slot s by a
            for (s, &is) in idx.iter().enumerate() {
                // nabla_k e^{is} = -sum_a Gamma_{k a}^{is} e^a
                for a_idx in 0..n {
                    let gamma = self.gamma(k, a_idx, is as usize);
                    if gamma.is_zero() {
                        continue;
                    }
                    let mut replaced: Vec<usize> = idx.iter().map(|&x| x as usize).collect();
                    replaced[s] = a_idx;
                    out = out.add(&Form::monomial(n, &replaced, -&gamma));
                }
            }
        }
        out
    }

    /// Covariant derivative of an endomorphism along `e_k`:
    /// `[A_k, T] + directional derivative of the entries`. The stored matrix
    /// is already the vector-action operator matrix.
    pub fn covariant_derivative_endo(&self, frame: &CoframeAlgebra, k: usize, t: &Endo) -> Endo {
        let n = self.dim();
        let ak = self.derivative_matrix(k);
        let bracket = ak.mul(&t.mat).sub(&t.mat.mul(&ak));
        let deriv = Matrix::from_fn(n, n, |i, j| {
            frame.scalar_d(t.mat.get(i, j)).coefficient(&[k as u8])
        });
        Endo {
            mat: deriv.add(&bracket),
        }
    }

    /// Covariant derivative of the metric along `e_k`:
    /// `e_k(g_ij) - Gamma_{k i}^{a} g_{aj} - Gamma_{k j}^{a} g_{ia}`.
    pub fn covariant_derivative_metric(
        &self,
        frame: &CoframeAlgebra,
        k: usize,
        g: &Matrix,
    ) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| {
            let mut v = frame.scalar_d(g.get(i, j)).coefficient(&[k as u8]);
            for a in 0..n {
                v = &v - &(&self.gamma(k, i, a) * g.get(a, j));
                v = &v - &(&self.gamma(k, j, a) * g.get(i, a));
            }
            v
        })
    }
}

#[derive(Clone)]
pub struct CurvatureForms {
    /// forms[i][j] = Om^i_j = d om^i_j + om^i_k ^ om^k_j.
    pub forms: Vec<Vec<Form>>,
}

impl CurvatureForms {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    /// Curvature endomorphism `R(e_a, e_b)` as the matrix `[Om^i_j(e_a, e_b)]`
    /// acting on vectors.
    pub fn endomorphism(&self, a: usize, b: usize) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n, n, |i, j| {
            two_form_value(&self.forms[i][j], a, b)
        })
    }
}

fn two_form_value(f: &Form, a: usize, b: usize) -> Scalar {
    if a == b {
        return Scalar::zero();
    }
    let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
    let c = f.coefficient(&[lo as u8, hi as u8]);
    if sign < 0 {
        -&c
    } else {
        c
    }
}

fn require_orthonormal(g: &Matrix) -> Result<(), String> {
    if !g.is_identity() {
        return Err("connection computations require a declared-orthonormal frame".into());
    }
    Ok(())
}

/// Structure constants `c_{ijk} = g([e_i, e_j], e_k)` (orthonormal g).
fn structure_constants(frame: &CoframeAlgebra) -> Vec<Vec<Vec<Scalar>>> {
    let n = frame.dim();
    let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let b = frame.bracket_frame(i, j);
            for (k, comp) in b.components.iter().enumerate() {
                c[i][j][k] = comp.clone();
            }
        }
    }
    c
}

/// Koszul formula on an orthonormal frame with parameter-constant structure
/// coefficients:
/// `2 Gamma_{ijk} = c_{ijk} - c_{jki} + c_{kij}`.
pub fn levi_civita(frame: &CoframeAlgebra, g: &Matrix) -> Result<ConnectionForms, String> {
    require_orthonormal(g)?;
    let n = frame.dim();
    let c = structure_constants(frame);
    let mut forms = vec![vec![Form::zero(n, 1); n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // Gamma_{ijk} = g(nabla_{e_i} e_j, e_k) -> om^k_j gains Gamma * e^i
                let two_gamma = &(&c[i][j][k] - &c[j][k][i]) + &c[k][i][j];
                let gamma = &two_gamma * &Scalar::from_ratio(1, 2);
                if !gamma.is_zero() {
                    forms[k][j] = forms[k][j].add(&Form::monomial(n, &[i], gamma));
                }
            }
        }
    }
    Ok(ConnectionForms { forms })
}

/// Add a totally skew torsion 3-form to a connection:
/// `Gamma'_{ijk} = Gamma_{ijk} + 1/2 T(e_i, e_j, e_k)`.
fn add_half_torsion(conn: &ConnectionForms, t: &Form) -> ConnectionForms {
    let n = conn.dim();
    let mut forms = conn.forms.clone();
    for (idx, coeff) in t.terms() {
        // distribute over the 6 permutations of (i, j, k)
        let (a, b, c) = (idx[0] as usize, idx[1] as usize, idx[2] as usize);
        let half = coeff * &Scalar::from_ratio(1, 2);
        let perms = [
            (a, b, c, 1i64),
            (b, c, a, 1),
            (c, a, b, 1),
            (b, a, c, -1),
            (a, c, b, -1),
            (c, b, a, -1),
        ];
        for (i, j, k, s) in perms {
            let val = &half * &Scalar::from_int(s);
            forms[k][j] = forms[k][j].add(&Form::monomial(n, &[i], val));
        }
    }
    ConnectionForms { forms }
}

/// The Hermitian connection with totally skew torsion. The torsion 3-form is
/// stored as `T = -dF(J., J., J.)`; the report notes the convention since the
/// opposite sign is also in circulation.
pub fn bismut(
    her: &HermitianStructure,
    frame: &CoframeAlgebra,
) -> Result<(ConnectionForms, Form, Report), String> {
    require_orthonormal(&her.h)?;
    let mut report = Report::new("connection.bismut");
    let valid = her.validate(frame);
    if !valid.holds() {
        return Err("bismut connection requires a valid Hermitian structure".into());
    }
    if !crate::structures::nijenhuis_vanishes(&her.j, frame) {
        return Err("bismut connection requires an integrable complex structure".into());
    }
    let df = frame.d(&her.f);
    let torsion = her.j.apply_form(&df).neg();
    let lc = levi_civita(frame, &her.h)?;
    let conn = add_half_torsion(&lc, &torsion);
    report.push(Check::new("connection.bismut.skew", conn.is_skew()));
    // residual torsion must reproduce T componentwise
    let residual = conn.torsion_two_forms(frame);
    let mut residual_ok = true;
    for (i, theta) in residual.iter().enumerate() {
        // Theta^i(X, Y) should equal T(X, Y, e_i)
        let expect = three_form_slice(&torsion, i);
        if theta != &expect {
            residual_ok = false;
        }
    }
    report.push(Check::new("connection.bismut.torsion_residual", residual_ok));
    // nabla J = 0 and nabla h = 0, exactly
    let n = frame.dim();
    let mut parallel_j = true;
    let mut parallel_h = true;
    for k in 0..n {
        if !conn.covariant_derivative_endo(frame, k, &her.j).is_zero() {
            parallel_j = false;
        }
        if !conn.covariant_derivative_metric(frame, k, &her.h).is_zero() {
            parallel_h = false;
        }
    }
    report.push(Check::new("connection.bismut.j_parallel", parallel_j));
    report.push(Check::new("connection.bismut.h_parallel", parallel_h));
    report.push(
        Check::new("connection.bismut.torsion_sign", true)
            .info()
            .noting("stored torsion is T = -dF(J., J., J.); the opposite sign convention appears in parts of the literature"),
    );
    Ok((conn, torsion, report))
}

/// `T(., ., e_i)` as a 2-form.
fn three_form_slice(t: &Form, i: usize) -> Form {
    let n = t.dim();
    let mut out = Form::zero(n, 2);
    for (idx, c) in t.terms() {
        if let Some(pos) = idx.iter().position(|&x| x == i as u8) {
            let mut rest = idx.clone();
            rest.remove(pos);
            // T(X, Y, e_i): moving e_i from its slot to the last costs
            // (len-1-pos) transpositions
            let sign = if (idx.len() - 1 - pos) % 2 == 0 {
                c.clone()
            } else {
                -c
            };
            out.add_term(rest, sign);
        }
    }
    out
}

/// The characteristic connection of a quasi-Sasakian structure:
/// `g(nabla^c_X Y, Z) = g(nabla^g_X Y, Z) + 1/2 (d eta ^ eta)(X, Y, Z)`,
/// with `I`, `g`, `eta` all parallel.
pub fn contact_connection(
    acs: &AlmostContactMetric,
    frame: &CoframeAlgebra,
) -> Result<(ConnectionForms, Form, Report), String> {
    require_orthonormal(&acs.g)?;
    let mut report = Report::new("connection.contact");
    let (class, _) = crate::structures::classify_contact(acs, frame);
    if !(class.normal && class.omega_closed) {
        report.push(
            Check::new("connection.contact.quasi_sasakian", false)
                .noting("characteristic connection hypothesis (normal, d omega = 0) fails"),
        );
    } else {
        report.push(Check::new("connection.contact.quasi_sasakian", true));
    }
    let torsion = frame.d(&acs.eta).wedge(&acs.eta);
    let lc = levi_civita(frame, &acs.g)?;
    let conn = add_half_torsion(&lc, &torsion);
    let n = frame.dim();
    let mut parallel_i = true;
    let mut parallel_g = true;
    let mut parallel_eta = true;
    for k in 0..n {
        if !conn.covariant_derivative_endo(frame, k, &acs.i).is_zero() {
            parallel_i = false;
        }
        if !conn.covariant_derivative_metric(frame, k, &acs.g).is_zero() {
            parallel_g = false;
        }
        if !conn.covariant_derivative_form(frame, k, &acs.eta).is_zero() {
            parallel_eta = false;
        }
    }
    report.push(Check::new("connection.contact.i_parallel", parallel_i));
    report.push(Check::new("connection.contact.g_parallel", parallel_g));
    report.push(Check::new("connection.contact.eta_parallel", parallel_eta));
    Ok((conn, torsion, report))
}

/// Curvature 2-forms `Om^i_j = d om^i_j + om^i_k ^ om^k_j`.
pub fn curvature(conn: &ConnectionForms, frame: &CoframeAlgebra) -> CurvatureForms {
    let n = conn.dim();
    let mut forms = vec![vec![Form::zero(n, 2); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut om = frame.d(&conn.forms[i][j]);
            for k in 0..n {
                om = om.add(&conn.forms[i][k].wedge(&conn.forms[k][j]));
            }
            forms[i][j] = om;
        }
    }
    CurvatureForms { forms }
}

/// Parallelism report for a list of named forms and endomorphisms.
pub fn covariant_derivative_report(
    conn: &ConnectionForms,
    frame: &CoframeAlgebra,
    items: &[(String, Form)],
) -> Report {
    let mut report = Report::new("connection.parallel");
    let n = conn.dim();
    for (name, form) in items {
        let mut parallel = true;
        let mut obstruction = None;
        for k in 0..n {
            let cd = conn.covariant_derivative_form(frame, k, form);
            if !cd.is_zero() {
                parallel = false;
                if obstruction.is_none() {
                    obstruction = Some(format!(
                        "nabla_{{e_{}}} {} = {}",
                        k + 1,
                        name,
                        crate::model::print::format_form(&cd, frame)
                    ));
                }
            }
        }
        let mut c = Check::new(format!("connection.parallel.{name}"), parallel);
        if let Some(ob) = obstruction {
            c.obstruction = Some(ob);
        }
        report.push(c);
    }
    report
}

#[derive(Clone, Debug)]
pub struct CurvatureSpan {
    pub dimension: usize,
    pub basis: Vec<Matrix>,
    pub commuting: bool,
    /// true when nabla R = 0 was verified, so the span is the full
    /// infinitesimal holonomy; otherwise it is only a lower bound.
    pub nabla_r_zero: bool,
}

/// Span of the curvature endomorphisms `{ R(e_a, e_b) }` as skew matrices.
pub fn curvature_span(
    curv: &CurvatureForms,
    conn: &ConnectionForms,
    frame: &CoframeAlgebra,
) -> (CurvatureSpan, Report) {
    let n = curv.dim();
    let mut endos: Vec<Matrix> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let m = curv.endomorphism(a, b);
            if !m.is_zero() {
                endos.push(m);
            }
        }
    }
    // rank of the span via row reduction on flattened matrices
    let mut flat = Matrix::zero(endos.len().max(1), n * n);
    for (r, m) in endos.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                flat.set(r, i * n + j, m.get(i, j).clone());
            }
        }
    }
    let (rref, pivots) = flat.rref();
    let dimension = pivots.len();
    let mut basis = Vec::new();
    for r in 0..dimension {
        let m = Matrix::from_fn(n, n, |i, j| rref.get(r, i * n + j).clone());
        basis.push(m);
    }
    let commuting = basis
        .iter()
        .enumerate()
        .all(|(i, a)| basis.iter().skip(i + 1).all(|b| a.commutes_with(b)));
    let nabla_r_zero = nabla_curvature_vanishes(curv, conn, frame);
    let mut report = Report::new("connection.holonomy_span");
    let kind = if nabla_r_zero {
        "infinitesimal holonomy (nabla R = 0 verified)"
    } else {
        "lower bound only (nabla R != 0)"
    };
    report.push(
        Check::new("connection.holonomy_span.computed", true)
            .info()
            .noting(format!("dimension {dimension}; {kind}"))
            .noting(format!(
                "generators {}",
                if commuting { "commute" } else { "do not commute" }
            )),
    );
    (
        CurvatureSpan {
            dimension,
            basis,
            commuting,
            nabla_r_zero,
        },
        report,
    )
}

fn nabla_curvature_vanishes(
    curv: &CurvatureForms,
    conn: &ConnectionForms,
    frame: &CoframeAlgebra,
) -> bool {
    let n = curv.dim();
    for m in 0..n {
        let am = conn.derivative_matrix(m);
        for a in 0..n {
            for b in (a + 1)..n {
                let r_ab = curv.endomorphism(a, b);
                // directional derivative of the entries
                let deriv = Matrix::from_fn(n, n, |i, j| {
                    frame.scalar_d(r_ab.get(i, j)).coefficient(&[m as u8])
                });
                let mut total = deriv.add(&am.mul(&r_ab).sub(&r_ab.mul(&am)));
                // argument-slot corrections: - R(nabla_m e_a, e_b) - R(e_a, nabla_m e_b)
                for c in 0..n {
                    let g_a = conn.gamma(m, a, c);
                    if !g_a.is_zero() {
                        total = total.sub(&curv.endomorphism(c, b).scale(&g_a));
                    }
                    let g_b = conn.gamma(m, b, c);
                    if !g_b.is_zero() {
                        total = total.sub(&curv.endomorphism(a, c).scale(&g_b));
                    }
                }
                if !total.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// First Bianchi identity for a torsion-free connection: `Om^i_j ^ e^j = 0`.
pub fn first_bianchi_residual(curv: &CurvatureForms, frame: &CoframeAlgebra) -> Vec<Form> {
    let n = curv.dim();
    (0..n)
        .map(|i| {
            let mut acc = Form::zero(n, 3);
            for j in 0..n {
                acc = acc.add(&curv.forms[i][j].wedge(&frame.covector(j)));
            }
            acc
        })
        .collect()
}
