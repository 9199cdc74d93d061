//! Circle-bundle extension of an almost contact metric base: append a
//! connection covector `theta` with `d theta = Omega` and carry the Hermitian
//! pair `(J, h = g + theta (x) theta, F = omega + eta ^ theta)`.
//!
//! At the coframe level the bundle projection is the identity; the
//! integrality of the curvature class is assumed, not verified.

use crate::form::Form;
use crate::frame::CoframeAlgebra;
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::structures::{
    check_normal, check_skt, classify_contact, proportionality, skt_verdict, AlmostContactMetric,
    HermitianStructure,
};

pub struct BundleExtension {
    pub frame: CoframeAlgebra,
    pub base_dim: usize,
    pub theta_index: usize,
    pub hermitian: HermitianStructure,
    pub omega_curvature: Form,
}

/// Build the extension. `Omega` must be closed (construction error
/// otherwise); invariance failures are flagged in the report but the
/// extension is still returned so obstructions stay inspectable.
pub fn extend_s1_bundle(
    frame: &CoframeAlgebra,
    acs: &AlmostContactMetric,
    omega: &Form,
    theta_name: &str,
) -> Result<(BundleExtension, Report), String> {
    let mut report = Report::new("bundle.extend");
    if !frame.d(omega).is_zero() {
        return Err("bundle curvature form is not closed".into());
    }
    report.push(Check::new("bundle.omega_closed", true).noting("integral class assumed"));
    report.push(Check::obstruction(
        "bundle.omega_i_invariant",
        &acs.i.apply_form(omega).sub(omega),
        frame,
    ));
    report.push(Check::obstruction(
        "bundle.omega_xi_contraction",
        &frame.contract(&acs.xi, omega),
        frame,
    ));
    let base_dim = frame.dim();
    let mut ext = frame.clone();
    let theta_index = ext.extend_with_covector(theta_name);
    ext.theta_index = Some(theta_index);
    let dim = ext.dim();
    ext.set_differential(theta_index, omega.widen(dim));
    // re-check d^2 = 0 on the extension (equivalent to d Omega = 0 here)
    let dsq = ext.check_d_squared();
    report.push(Check::new("bundle.extension_d_squared", dsq.holds()));
    let j = super::extension_complex_structure(acs, dim, theta_index, &Scalar::one());
    let mut h = Matrix::zero(dim, dim);
    for i in 0..base_dim {
        for k in 0..base_dim {
            h.set(i, k, acs.g.get(i, k).clone());
        }
    }
    h.set(theta_index, theta_index, Scalar::one());
    let hermitian = HermitianStructure::new(j, h);
    // F must come out as omega + eta ^ theta
    let expected_f = acs
        .omega
        .widen(dim)
        .add(&acs.eta.widen(dim).wedge(&ext.covector(theta_index)));
    report.push(Check::new(
        "bundle.fundamental_form_assembly",
        hermitian.f == expected_f,
    ));
    Ok((
        BundleExtension {
            frame: ext,
            base_dim,
            theta_index,
            hermitian,
            omega_curvature: omega.clone(),
        },
        report,
    ))
}

/// SKT criterion for the circle bundle, evaluated on the base and
/// cross-validated against the direct total-space computation.
pub fn check_skt_bundle(
    frame: &CoframeAlgebra,
    acs: &AlmostContactMetric,
    omega: &Form,
) -> Result<Report, String> {
    let mut report = Report::new("skt.bundle");
    let (ext, build_report) = extend_s1_bundle(frame, acs, omega, "th")?;
    let i_invariant = build_report
        .get("bundle.omega_i_invariant")
        .map(|c| c.holds)
        .unwrap_or(false);
    let xi_contr = build_report
        .get("bundle.omega_xi_contraction")
        .map(|c| c.holds)
        .unwrap_or(false);
    report.extend(build_report);
    let (class, class_report) = classify_contact(acs, frame);
    let normal = class.normal;
    report.extend(class_report);
    let domega = frame.d(&acs.omega);
    let deta = frame.d(&acs.eta);
    // base equations: d(I(i_xi d omega)) = 0 and
    // d(I(d omega) - d eta ^ eta) = (-I(i_xi d omega) + Omega) ^ Omega
    let i_contr = acs.i.apply_form(&frame.contract(&acs.xi, &domega));
    let eq1 = frame.d(&i_contr);
    report.push(Check::obstruction("skt.bundle.contract_closure", &eq1, frame));
    let lhs = frame.d(&acs.i.apply_form(&domega).sub(&deta.wedge(&acs.eta)));
    let rhs = i_contr.neg().add(omega).wedge(omega);
    let eq2 = lhs.sub(&rhs);
    report.push(Check::obstruction("skt.bundle.curvature_balance", &eq2, frame));
    // quasi-Sasakian reduction: d eta ^ d eta = -Omega ^ Omega
    if class.normal && class.omega_closed {
        let identity = deta.wedge(&deta).add(&omega.wedge(omega));
        report.push(
            Check::obstruction("skt.bundle.deta_square_identity", &identity, frame)
                .assuming("base is quasi-Sasakian"),
        );
        if let Some(alpha) = &class.alpha {
            // alpha-Sasakian reading: Omega ^ Omega = -alpha^2 omega ^ omega
            let alt = omega
                .wedge(omega)
                .add(&acs.omega.wedge(&acs.omega).scale(&(alpha * alpha)));
            report.push(
                Check::obstruction("skt.bundle.alpha_square_identity", &alt, frame)
                    .assuming(format!(
                        "base is alpha-Sasakian with alpha = {}",
                        crate::model::print::format_scalar(alpha, &frame.symbols)
                    ))
                    .info(),
            );
        }
    }
    // direct computation on the total space
    let direct_report = check_skt(&ext.hermitian, &ext.frame);
    let structures_valid =
        acs.validate(frame).holds() && ext.hermitian.validate(&ext.frame).holds();
    let direct = structures_valid && skt_verdict(&ext.hermitian, &ext.frame);
    report.absorb("skt.bundle.direct", direct_report);
    let reduced =
        structures_valid && normal && i_invariant && xi_contr && eq1.is_zero() && eq2.is_zero();
    report.push(
        Check::new("skt.bundle.cross_check", reduced == direct)
            .noting(format!("reduced verdict {reduced}, direct verdict {direct}")),
    );
    report.push(Check::new("skt.bundle.skt", reduced).info().noting(
        "verdict of the reduced base-level criterion (equals the direct one when cross_check holds)",
    ));
    Ok(report)
}

/// Convenience used by tests: proportionality factor of `d eta` against omega.
pub fn deta_alpha(frame: &CoframeAlgebra, acs: &AlmostContactMetric) -> Option<Scalar> {
    proportionality(&frame.d(&acs.eta), &acs.omega)
}

/// Re-export for the HKT bundle checks: the reduced/direct agreement includes
/// normality of the base structure.
pub fn base_is_normal(frame: &CoframeAlgebra, acs: &AlmostContactMetric) -> bool {
    check_normal(acs, frame).holds()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Endo, VectorField};
    use crate::scalar::SymbolTable;

    fn heisenberg5() -> CoframeAlgebra {
        let mut fr = CoframeAlgebra::new(
            (1..=5).map(|i| format!("e{i}")).collect(),
            SymbolTable::new(),
        );
        fr.set_differential(
            4,
            Form::monomial(5, &[0, 1], Scalar::one()).add(&Form::monomial(5, &[2, 3], Scalar::one())),
        );
        fr
    }

    fn standard_contact(dim: usize) -> AlmostContactMetric {
        let mut i = Endo::zero(dim);
        i.set(0, &Form::covector(dim, 1).neg());
        i.set(1, &Form::covector(dim, 0));
        i.set(2, &Form::covector(dim, 3).neg());
        i.set(3, &Form::covector(dim, 2));
        AlmostContactMetric::new(
            i,
            VectorField::frame(dim, 4),
            Form::covector(dim, 4),
            Matrix::identity(dim),
        )
    }

    #[test]
    fn heisenberg_bundle_is_skt() {
        let fr = heisenberg5();
        let acs = standard_contact(5);
        let omega = Form::monomial(5, &[0, 2], Scalar::one())
            .add(&Form::monomial(5, &[1, 3], Scalar::one()));
        let report = check_skt_bundle(&fr, &acs, &omega).unwrap();
        assert!(report.get("skt.bundle.cross_check").unwrap().holds);
        assert!(report.get("skt.bundle.skt").unwrap().holds);
        assert!(report.get("skt.bundle.deta_square_identity").unwrap().holds);
        // d eta ^ d eta = 2 e1234 = -Omega ^ Omega
        let deta = fr.d(&acs.eta);
        assert_eq!(
            deta.wedge(&deta),
            Form::monomial(5, &[0, 1, 2, 3], Scalar::from_int(2))
        );
        assert_eq!(
            omega.wedge(&omega),
            Form::monomial(5, &[0, 1, 2, 3], Scalar::from_int(-2))
        );
    }

    #[test]
    fn trivial_curvature_gives_product_structure() {
        let fr = heisenberg5();
        let acs = standard_contact(5);
        let zero = Form::zero(5, 2);
        let (ext, rep) = extend_s1_bundle(&fr, &acs, &zero, "th").unwrap();
        assert!(rep.holds());
        assert!(ext.frame.differential(5).is_zero());
    }

    #[test]
    fn non_closed_curvature_is_a_construction_error() {
        let fr = heisenberg5();
        let acs = standard_contact(5);
        // e45 is not closed here: d(e45) = -e4 ^ de5 != 0
        let omega = Form::monomial(5, &[3, 4], Scalar::one());
        assert!(extend_s1_bundle(&fr, &acs, &omega, "th").is_err());
    }
}
