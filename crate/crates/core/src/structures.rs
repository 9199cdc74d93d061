//! Geometric structures over a coframe algebra and their pointwise and
//! differential conditions: almost contact metric, Hermitian, SU(2), SU(3);
//! normality, SKT, balanced, quasi-/alpha-/Sasakian classification.
//!
//! Conventions, fixed once for the whole engine:
//! - fundamental forms pair as `omega(X, Y) = g(X, I Y)`;
//! - endomorphisms are stored by covector action (`I e^1 = -e^2` style);
//! - evaluation is the determinant convention, so the normality tensor is
//!   `[I, I](X, Y) + (d eta)(X, Y) xi` (the factor-2 variant belongs to the
//!   half-sum pairing convention and fails on the Heisenberg fixture).

use crate::form::Form;
use crate::frame::{eval_form_at, CoframeAlgebra, Endo, VectorField};
use crate::linalg::Matrix;
use crate::model::print::{format_form, format_scalar};
use crate::poly::Q;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// Sign conventions frozen from the flat model (the unit tests re-derive them
/// by brute-force expansion):
/// - `PSI_TYPE_SIGN`: slotwise `J` action on a model complex volume form
///   gives `J psi_+ = PSI_TYPE_SIGN * psi_-`;
/// - `SU3_VOLUME_COEFF`: `psi_+ ^ psi_- = SU3_VOLUME_COEFF * F^3/3!`.
pub const PSI_TYPE_SIGN: i64 = -1;
pub const SU3_VOLUME_COEFF: i64 = 4;

#[derive(Clone, Debug)]
pub struct AlmostContactMetric {
    pub i: Endo,
    pub xi: VectorField,
    pub eta: Form,
    pub g: Matrix,
    pub omega: Form,
}

/// Antisymmetric 2-form from a pairing matrix `w[i][j] = f(e_i, e_j)`.
pub fn two_form_from_matrix(dim: usize, w: &Matrix) -> Form {
    let mut f = Form::zero(dim, 2);
    for i in 0..dim {
        for j in (i + 1)..dim {
            f.add_term(vec![i as u8, j as u8], w.get(i, j).clone());
        }
    }
    f
}

/// Pairing matrix of a 2-form under the determinant convention.
pub fn matrix_from_two_form(f: &Form) -> Matrix {
    let n = f.dim();
    let mut m = Matrix::zero(n, n);
    for (idx, c) in f.terms() {
        let (i, j) = (idx[0] as usize, idx[1] as usize);
        m.set(i, j, c.clone());
        m.set(j, i, -c);
    }
    m
}

impl AlmostContactMetric {
    /// Assemble the structure; the fundamental form is derived from (g, I).
    pub fn new(i: Endo, xi: VectorField, eta: Form, g: Matrix) -> AlmostContactMetric {
        let dim = eta.dim();
        let w = g.mul(&i.mat);
        let omega = two_form_from_matrix(dim, &w);
        AlmostContactMetric {
            i,
            xi,
            eta,
            g,
            omega,
        }
    }

    pub fn dim(&self) -> usize {
        self.eta.dim()
    }

    /// Pointwise validity: `I^2 = -Id + eta (x) xi`, `eta(xi) = 1`, metric
    /// compatibility, antisymmetry of the derived pairing.
    pub fn validate(&self, frame: &CoframeAlgebra) -> Report {
        let mut report = Report::new("contact.valid");
        let n = self.dim();
        let i2 = self.i.compose(&self.i);
        let expected = Endo::identity(n)
            .neg()
            .add(&Endo::tensor(&self.eta, &self.xi));
        report.push(Check::new("contact.i_squared", i2 == expected));
        let pairing = self.xi.pair(&self.eta);
        let mut c = Check::new("contact.eta_xi_pairing", pairing.is_one());
        if !pairing.is_one() {
            c = c.noting(format!(
                "eta(xi) = {}",
                format_scalar(&pairing, &frame.symbols)
            ));
        }
        report.push(c);
        // g(IU, IV) = g(U, V) - eta(U) eta(V)
        let eta_row = eta_row_matrix(&self.eta, n);
        let compat = self.i.mat.transpose().mul(&self.g.mul(&self.i.mat));
        let target = self.g.sub(&eta_row.transpose().mul(&eta_row));
        report.push(Check::new("contact.metric_compatibility", compat == target));
        let w = self.g.mul(&self.i.mat);
        report.push(Check::new(
            "contact.omega_antisymmetric",
            w.is_antisymmetric(),
        ));
        report.push(Check::new("contact.metric_symmetric", self.g.is_symmetric()));
        report
    }
}

fn eta_row_matrix(eta: &Form, n: usize) -> Matrix {
    let mut m = Matrix::zero(1, n);
    for (idx, c) in eta.terms() {
        m.set(0, idx[0] as usize, c.clone());
    }
    m
}

/// omega(., .) = g(., I.) with antisymmetry verified; errors on an
/// incompatible pair.
pub fn fundamental_form(i: &Endo, g: &Matrix, dim: usize) -> Result<Form, String> {
    let w = g.mul(&i.mat);
    if !w.is_antisymmetric() {
        return Err(
            "metric and endomorphism are incompatible: g(., I.) is not antisymmetric".into(),
        );
    }
    Ok(two_form_from_matrix(dim, &w))
}

/// Normality: `[I, I](e_i, e_j) + (d eta)(e_i, e_j) xi = 0` on all frame
/// pairs, with the contraction and invariance consequences reported as
/// informational sub-checks.
pub fn check_normal(acs: &AlmostContactMetric, frame: &CoframeAlgebra) -> Report {
    let mut report = Report::new("contact.normal");
    let n = acs.dim();
    let nij = acs.i.nijenhuis(frame);
    let deta = frame.d(&acs.eta);
    let mut first_defect: Option<(usize, usize, VectorField)> = None;
    let mut all_zero = true;
    for i in 0..n {
        for j in (i + 1)..n {
            let pair = crate::frame::eval_form(
                &deta,
                &[&VectorField::frame(n, i), &VectorField::frame(n, j)],
            );
            let defect = nij[i][j].add(&acs.xi.scale(&pair));
            if !defect.is_zero() {
                all_zero = false;
                if first_defect.is_none() {
                    first_defect = Some((i, j, defect));
                }
            }
        }
    }
    let mut main = Check::new("contact.normal.tensor", all_zero)
        .noting("normality tensor: [I,I] + (d eta)(.,.) xi under the determinant pairing");
    if let Some((i, j, v)) = first_defect {
        main = main.noting(format!(
            "first nonzero defect at (e_{}, e_{}): {:?}",
            i + 1,
            j + 1,
            v
        ));
    }
    report.push(main);
    report.push(
        Check::obstruction(
            "contact.normal.xi_contraction_of_deta",
            &frame.contract(&acs.xi, &deta),
            frame,
        )
        .info(),
    );
    report.push(
        Check::obstruction(
            "contact.normal.i_invariance_of_deta",
            &acs.i.apply_form(&deta).sub(&deta),
            frame,
        )
        .info(),
    );
    report
}

#[derive(Clone, Debug)]
pub struct ContactClassification {
    pub normal: bool,
    pub omega_closed: bool,
    /// Exact proportionality factor when `d eta = alpha * omega`.
    pub alpha: Option<Scalar>,
    pub label: String,
}

/// Classification flags {normal, d omega = 0, d eta = alpha omega} with the
/// exact alpha when proportional.
pub fn classify_contact(
    acs: &AlmostContactMetric,
    frame: &CoframeAlgebra,
) -> (ContactClassification, Report) {
    let mut report = Report::new("contact.classify");
    let normal = check_normal(acs, frame);
    let normal_holds = normal.holds();
    report.extend(normal);
    let domega = frame.d(&acs.omega);
    report.push(Check::obstruction(
        "contact.classify.omega_closed",
        &domega,
        frame,
    ));
    let deta = frame.d(&acs.eta);
    let alpha = proportionality(&deta, &acs.omega);
    let label = if !normal_holds || !domega.is_zero() {
        "not quasi-Sasakian".to_string()
    } else {
        match &alpha {
            None => "quasi-Sasakian".to_string(),
            Some(a) => {
                if *a == Scalar::from_int(-2) {
                    "Sasakian".to_string()
                } else {
                    format!(
                        "alpha-Sasakian (alpha = {})",
                        format_scalar(a, &frame.symbols)
                    )
                }
            }
        }
    };
    let mut c = Check::new("contact.classify.label", true).info();
    c = c.noting(format!("classification: {label}"));
    if let Some(a) = &alpha {
        c = c.noting(format!(
            "d eta = alpha * omega with alpha = {}",
            format_scalar(a, &frame.symbols)
        ));
    } else {
        c = c.noting("d eta is not proportional to omega");
    }
    report.push(c);
    (
        ContactClassification {
            normal: normal_holds,
            omega_closed: domega.is_zero(),
            alpha,
            label,
        },
        report,
    )
}

/// Exact factor with `a = alpha * b`, if one exists.
pub fn proportionality(a: &Form, b: &Form) -> Option<Scalar> {
    if a.is_zero() {
        return Some(Scalar::zero());
    }
    if b.is_zero() {
        return None;
    }
    let (idx, cb) = b.terms().next().unwrap();
    let ca = a.coefficient(idx);
    if ca.is_zero() {
        return None;
    }
    let alpha = &ca / cb;
    if a == &b.scale(&alpha) {
        Some(alpha)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct HermitianStructure {
    pub j: Endo,
    pub h: Matrix,
    pub f: Form,
}

impl HermitianStructure {
    pub fn new(j: Endo, h: Matrix) -> HermitianStructure {
        let dim = h.rows();
        let w = h.mul(&j.mat);
        let f = two_form_from_matrix(dim, &w);
        HermitianStructure { j, h, f }
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn validate(&self, frame: &CoframeAlgebra) -> Report {
        let mut report = Report::new("hermitian.valid");
        let n = self.dim();
        let j2 = self.j.compose(&self.j);
        report.push(Check::new(
            "hermitian.j_squared",
            j2 == Endo::identity(n).neg(),
        ));
        let compat = self.j.mat.transpose().mul(&self.h.mul(&self.j.mat));
        report.push(Check::new(
            "hermitian.metric_compatibility",
            compat == self.h,
        ));
        report.push(Check::new(
            "hermitian.f_antisymmetric",
            self.h.mul(&self.j.mat).is_antisymmetric(),
        ));
        report.push(Check::new("hermitian.j_integrable", nijenhuis_vanishes(&self.j, frame)).info());
        report
    }
}

pub fn nijenhuis_vanishes(endo: &Endo, frame: &CoframeAlgebra) -> bool {
    endo.nijenhuis(frame)
        .iter()
        .all(|row| row.iter().all(|v| v.is_zero()))
}

/// SKT check for a Hermitian pair: verdict is `d(J dF) = 0`, with the
/// Nijenhuis tensor of `J` and Kaehlerness reported alongside.
pub fn check_skt(her: &HermitianStructure, frame: &CoframeAlgebra) -> Report {
    let mut report = Report::new("skt.direct");
    let n = her.dim();
    let j2 = her.j.compose(&her.j);
    if j2 != Endo::identity(n).neg() {
        report.push(Check::new("hermitian.j_squared", false));
        return report;
    }
    report.push(Check::new("hermitian.j_squared", true));
    report.push(Check::new("hermitian.j_integrable", nijenhuis_vanishes(&her.j, frame)).info());
    let df = frame.d(&her.f);
    report.push(Check::obstruction("kaehler.f_closed", &df, frame).info());
    let jdf = her.j.apply_form(&df);
    let djdf = frame.d(&jdf);
    let c = Check::obstruction("skt.djdf_closed", &djdf, frame)
        .noting(format!("J dF = {}", format_form(&jdf, frame)));
    report.push(c);
    report
}

/// Combined integrability + SKT verdict used by the construction
/// cross-checks: a genuine complex structure with closed `J dF`.
pub fn skt_verdict(her: &HermitianStructure, frame: &CoframeAlgebra) -> bool {
    let n = her.dim();
    if her.j.compose(&her.j) != Endo::identity(n).neg() {
        return false;
    }
    if !nijenhuis_vanishes(&her.j, frame) {
        return false;
    }
    let jdf = her.j.apply_form(&frame.d(&her.f));
    frame.d(&jdf).is_zero()
}

/// Balanced check: `d(F^{n-1}) = 0` on a 2n-dimensional frame.
pub fn check_balanced(f: &Form, frame: &CoframeAlgebra, complex_dim: usize) -> Report {
    let mut report = Report::new("balanced");
    let mut power = Form::scalar(frame.dim(), Scalar::one());
    for _ in 0..complex_dim.saturating_sub(1) {
        power = power.wedge(f);
    }
    let d = frame.d(&power);
    report.push(Check::obstruction("balanced.f_power_closed", &d, frame));
    report
}

#[derive(Clone, Debug)]
pub struct SU2Structure {
    pub eta: Form,
    pub omega1: Form,
    pub omega2: Form,
    pub omega3: Form,
    /// Optional metric (frame Gram matrix) used to derive `I` and `xi`.
    pub g: Option<Matrix>,
}

impl SU2Structure {
    pub fn dim(&self) -> usize {
        self.eta.dim()
    }

    /// Endomorphism with `omega1 = g(., I.)`, from the attached metric.
    pub fn derived_i(&self) -> Option<Endo> {
        let g = self.g.as_ref()?;
        let w = matrix_from_two_form(&self.omega1);
        let ginv = g.inverse()?;
        Some(Endo { mat: ginv.mul(&w) })
    }

    /// Metric dual of eta.
    pub fn derived_xi(&self) -> Option<VectorField> {
        let g = self.g.as_ref()?;
        let ginv = g.inverse()?;
        let n = self.dim();
        let mut eta_vec = vec![Scalar::zero(); n];
        for (idx, c) in self.eta.terms() {
            eta_vec[idx[0] as usize] = c.clone();
        }
        let mut xi = VectorField::zero(n);
        for i in 0..n {
            let mut acc = Scalar::zero();
            for j in 0..n {
                acc = &acc + &(ginv.get(i, j) * &eta_vec[j]);
            }
            xi.components[i] = acc;
        }
        Some(xi)
    }

    pub fn induced_contact(&self) -> Option<AlmostContactMetric> {
        let i = self.derived_i()?;
        let xi = self.derived_xi()?;
        Some(AlmostContactMetric::new(
            i,
            xi,
            self.eta.clone(),
            self.g.clone().unwrap(),
        ))
    }
}

/// Validate the defining identities; the orientation inequality is only
/// evaluated at the supplied rational samples and flagged as sampled.
pub fn validate_su2(
    s: &SU2Structure,
    frame: &CoframeAlgebra,
    samples: &dyn Fn(crate::poly::SymId) -> Option<Q>,
) -> Report {
    let mut report = Report::new("su2.valid");
    let v = s.omega1.wedge(&s.omega1);
    report.push(Check::obstruction(
        "su2.volume_match.omega2",
        &s.omega2.wedge(&s.omega2).sub(&v),
        frame,
    ));
    report.push(Check::obstruction(
        "su2.volume_match.omega3",
        &s.omega3.wedge(&s.omega3).sub(&v),
        frame,
    ));
    report.push(Check::obstruction(
        "su2.cross.12",
        &s.omega1.wedge(&s.omega2),
        frame,
    ));
    report.push(Check::obstruction(
        "su2.cross.13",
        &s.omega1.wedge(&s.omega3),
        frame,
    ));
    report.push(Check::obstruction(
        "su2.cross.23",
        &s.omega2.wedge(&s.omega3),
        frame,
    ));
    let veta = v.wedge(&s.eta);
    report.push(
        Check::new("su2.volume_eta_nonzero", !veta.is_zero())
            .noting("nonvanishing holds as a rational function; parameter loci not analyzed"),
    );
    let phi_sq_re = s.omega2.wedge(&s.omega2).sub(&s.omega3.wedge(&s.omega3));
    let phi_sq_im = s.omega2.wedge(&s.omega3).scale(&Scalar::from_int(2));
    report.push(Check::obstruction("su2.phi_squared.re", &phi_sq_re, frame).info());
    report.push(Check::obstruction("su2.phi_squared.im", &phi_sq_im, frame).info());
    report.push(orientation_sample_check(s, samples));
    report
}

/// `i_X omega3 = i_Y omega1 => omega2(X, Y) >= 0`, solved on frame vectors
/// and evaluated at the supplied samples.
fn orientation_sample_check(
    s: &SU2Structure,
    samples: &dyn Fn(crate::poly::SymId) -> Option<Q>,
) -> Check {
    let n = s.dim();
    let w3 = matrix_from_two_form(&s.omega3);
    let w1 = matrix_from_two_form(&s.omega1);
    let w2 = matrix_from_two_form(&s.omega2);
    let mut verdict = true;
    let mut evaluated = 0usize;
    for y in 0..n {
        // solve W3^T x = W1^T e_y, then test omega2(x, e_y)
        let rhs: Vec<Scalar> = (0..n).map(|j| w1.get(y, j).clone()).collect();
        let x = match w3.transpose().solve(&rhs) {
            Some(x) => x,
            None => continue,
        };
        let mut val = Scalar::zero();
        for i in 0..n {
            val = &val + &(&x[i] * w2.get(i, y));
        }
        if let Some(q) = val.eval(samples) {
            evaluated += 1;
            if q < Q::from_integer(0.into()) {
                verdict = false;
            }
        }
    }
    // informational: the inequality picks an orientation convention, and
    // worked examples legitimately appear in both orientations
    let mut c = Check::new("su2.orientation_sampled", verdict)
        .info()
        .noting("inequality checked at sampled rational parameter values only");
    if evaluated == 0 {
        c = c.noting("no sample points evaluated");
    }
    c
}

/// Balanced conditions at the SU(2) level: closedness of `omega1 ^ omega1`
/// together with the hypo-type forms.
pub fn su2_balanced(s: &SU2Structure, frame: &CoframeAlgebra) -> Report {
    let mut report = Report::new("su2.balanced");
    report.push(Check::obstruction(
        "su2.balanced.omega1_square_closed",
        &frame.d(&s.omega1.wedge(&s.omega1)),
        frame,
    ));
    report.push(Check::obstruction(
        "su2.balanced.omega2_eta_closed",
        &frame.d(&s.omega2.wedge(&s.eta)),
        frame,
    ));
    report.push(Check::obstruction(
        "su2.balanced.omega3_eta_closed",
        &frame.d(&s.omega3.wedge(&s.eta)),
        frame,
    ));
    report
}

#[derive(Clone, Debug)]
pub struct SU3Structure {
    pub f: Form,
    pub psi_plus: Form,
    pub psi_minus: Form,
    pub j: Endo,
}

impl SU3Structure {
    pub fn dim(&self) -> usize {
        self.f.dim()
    }
}

/// Validate the SU(3) compatibility identities. The type sub-check uses the
/// frozen slotwise-action sign, the volume normalization the frozen
/// coefficient; both derive from the flat model by direct expansion.
pub fn validate_su3(s: &SU3Structure, frame: &CoframeAlgebra) -> Report {
    let mut report = Report::new("su3.valid");
    let sign = Scalar::from_int(PSI_TYPE_SIGN);
    report.push(Check::obstruction(
        "su3.type.j_psi_plus",
        &s.j.apply_form(&s.psi_plus).sub(&s.psi_minus.scale(&sign)),
        frame,
    ));
    report.push(Check::obstruction(
        "su3.type.j_psi_minus",
        &s.j.apply_form(&s.psi_minus).add(&s.psi_plus.scale(&sign)),
        frame,
    ));
    report.push(Check::obstruction(
        "su3.f_wedge_psi_plus",
        &s.f.wedge(&s.psi_plus),
        frame,
    ));
    report.push(Check::obstruction(
        "su3.f_wedge_psi_minus",
        &s.f.wedge(&s.psi_minus),
        frame,
    ));
    let f3 = s.f.wedge(&s.f).wedge(&s.f);
    if f3.is_zero() {
        report
            .push(Check::new("su3.volume_normalization", false).noting("degenerate F: F^3 = 0"));
    } else {
        let expected = f3.scale(&Scalar::from_ratio(SU3_VOLUME_COEFF, 6));
        report.push(Check::obstruction(
            "su3.volume_normalization",
            &s.psi_plus.wedge(&s.psi_minus).sub(&expected),
            frame,
        ));
    }
    report
}

/// SKT conditions for an SU(3)-structure: `d psi = 0` and `d(J dF) = 0`,
/// with exact obstructions.
pub fn check_skt_su3(s: &SU3Structure, frame: &CoframeAlgebra) -> Report {
    let mut report = Report::new("su3.skt");
    report.push(Check::obstruction(
        "su3.skt.dpsi_plus",
        &frame.d(&s.psi_plus),
        frame,
    ));
    report.push(Check::obstruction(
        "su3.skt.dpsi_minus",
        &frame.d(&s.psi_minus),
        frame,
    ));
    let jdf = s.j.apply_form(&frame.d(&s.f));
    report.push(Check::obstruction(
        "su3.skt.djdf_closed",
        &frame.d(&jdf),
        frame,
    ));
    report
}

/// Nonvanishing of a form at sample values (used where nondegeneracy claims
/// carry parameters).
pub fn nonzero_at_samples(
    f: &Form,
    samples: &dyn Fn(crate::poly::SymId) -> Option<Q>,
) -> Option<bool> {
    eval_form_at(f, samples).map(|terms| !terms.is_empty())
}
