//! SU(3)-structures assembled from a 5-dimensional SU(2)-structure: the
//! product with a line and the Riemannian cone.
//!
//! On the product the complex volume form only closes after the conformal
//! weight `u` (encoding `exp(-3t)`, declared through `du/dt = -3u`) multiplies
//! `psi`; with that weight its closure is exactly equivalent to the displayed
//! rate equations `d omega2 = -3 omega3 ^ eta`, `d omega3 = 3 omega2 ^ eta`
//! together with the hypo-type conditions. On the cone the two sign
//! conventions for the rates pair with the two choices of `t eta -/+ i dt`;
//! both verdicts are computed and labeled, neither is preferred.

use crate::frame::CoframeAlgebra;
use crate::report::{Check, Report};
use crate::scalar::{Scalar, SymbolDecl};
use crate::structures::{
    check_normal, check_skt_su3, nijenhuis_vanishes, validate_su2, validate_su3, SU2Structure,
    SU3Structure,
};

/// The four product conditions: the almost-contact SKT pair plus the rate
/// equations; the report additionally carries the hypo-type conditions, the
/// weighted direct computation and the exact cross-checks.
pub fn su3_product_from_su2(
    frame: &CoframeAlgebra,
    s: &SU2Structure,
) -> Result<(CoframeAlgebra, SU3Structure, Report), String> {
    let mut report = Report::new("su3.product");
    report.absorb("su3.product", validate_su2(s, frame, &|_| None));
    let acs = s
        .induced_contact()
        .ok_or_else(|| "SU(2)-structure carries no metric".to_string())?;
    report.absorb("su3.product", acs.validate(frame));
    let normal_report = check_normal(&acs, frame);
    let normal = normal_report.holds();
    report.extend(normal_report);
    // rate equations
    let eta = &s.eta;
    let rate2 = frame
        .d(&s.omega2)
        .add(&s.omega3.wedge(eta).scale(&Scalar::from_int(3)));
    let rate3 = frame
        .d(&s.omega3)
        .sub(&s.omega2.wedge(eta).scale(&Scalar::from_int(3)));
    report.push(Check::obstruction("su3.product.rate.omega2", &rate2, frame));
    report.push(Check::obstruction("su3.product.rate.omega3", &rate3, frame));
    // hypo-type conditions (equivalent to Phi ^ d eta = 0 once the rates hold)
    let hypo2 = frame.d(&s.omega2.wedge(eta));
    let hypo3 = frame.d(&s.omega3.wedge(eta));
    report.push(Check::obstruction("su3.product.hypo.omega2_eta", &hypo2, frame));
    report.push(Check::obstruction("su3.product.hypo.omega3_eta", &hypo3, frame));
    // base SKT pair for the product
    let domega1 = frame.d(&s.omega1);
    let deta = frame.d(eta);
    let base1 = frame
        .d(&acs.i.apply_form(&domega1))
        .sub(&frame.d(&deta.wedge(eta)));
    let base2 = frame.d(&acs.i.apply_form(&frame.contract(&acs.xi, &domega1)));
    report.push(Check::obstruction("su3.product.torsion_closure", &base1, frame));
    report.push(Check::obstruction("su3.product.contract_closure", &base2, frame));
    // assemble the product structure
    let (mut ext, dt_idx) = super::extend_by_line(frame, "dt");
    let dim = ext.dim();
    let dt_form = ext.covector(dt_idx);
    let j = super::extension_complex_structure(&acs, dim, dt_idx, &Scalar::one());
    let f = s
        .omega1
        .widen(dim)
        .add(&s.eta.widen(dim).wedge(&dt_form));
    let psi_plus_unweighted = s
        .omega2
        .widen(dim)
        .wedge(&s.eta.widen(dim))
        .sub(&s.omega3.widen(dim).wedge(&dt_form));
    let psi_minus_unweighted = s
        .omega3
        .widen(dim)
        .wedge(&s.eta.widen(dim))
        .add(&s.omega2.widen(dim).wedge(&dt_form));
    // conformal weight symbol u with d u = -3 u dt
    let mut u_decl = SymbolDecl::parameter("u");
    u_decl.constraints.push("u != 0".into());
    let u_id = ext.symbols.declare(u_decl);
    let u = Scalar::var(u_id);
    let minus3u = &Scalar::from_int(-3) * &u;
    ext.symbols.get_mut(u_id).d_value = Some(dt_form.scale(&minus3u));
    ext.symbols.get_mut(u_id).dt_value = Some(minus3u);
    let su3 = SU3Structure {
        f: f.clone(),
        psi_plus: psi_plus_unweighted.scale(&u),
        psi_minus: psi_minus_unweighted.scale(&u),
        j: j.clone(),
    };
    // unweighted structure is the pointwise-unit-norm one; validate it
    let unweighted = SU3Structure {
        f,
        psi_plus: psi_plus_unweighted,
        psi_minus: psi_minus_unweighted,
        j,
    };
    report.absorb("su3.product.unweighted", validate_su3(&unweighted, &ext));
    // direct computation with the weighted volume form
    let direct = check_skt_su3(&su3, &ext);
    let dpsi_direct = direct.get("su3.skt.dpsi_plus").unwrap().holds
        && direct.get("su3.skt.dpsi_minus").unwrap().holds;
    let djdf_direct = direct.get("su3.skt.djdf_closed").unwrap().holds;
    report.absorb("su3.product.direct", direct);
    report.push(
        Check::new("su3.product.direct.weight", true)
            .info()
            .noting("dpsi is computed for u * psi with du = -3 u dt; the unweighted form closes only in the Kaehler-flat case"),
    );
    let nj = nijenhuis_vanishes(&su3.j, &ext);
    let rates = rate2.is_zero() && rate3.is_zero();
    let hypo = hypo2.is_zero() && hypo3.is_zero();
    let base = base1.is_zero() && base2.is_zero();
    report.push(
        Check::new(
            "su3.product.cross_check.dpsi",
            dpsi_direct == (rates && hypo),
        )
        .noting(format!(
            "direct d(u psi) = 0: {dpsi_direct}; rates and hypo-type: {}",
            rates && hypo
        )),
    );
    report.push(
        Check::new(
            "su3.product.cross_check.djdf",
            (nj && djdf_direct) == (normal && base),
        )
        .noting(format!(
            "direct integrable + d(JdF) = 0: {}; normal + base equations: {}",
            nj && djdf_direct,
            normal && base
        )),
    );
    report.push(
        Check::new("su3.product.skt", rates && base)
            .info()
            .noting("verdict of the four displayed product conditions"),
    );
    Ok((ext, su3, report))
}

/// The cone assembly. Returns the variant built with `t eta + i dt` (the one
/// matching the engine's frozen volume-form type sign); the report carries
/// the closure verdicts of both sign conventions.
pub fn su3_cone_from_su2(
    frame: &CoframeAlgebra,
    s: &SU2Structure,
) -> Result<(CoframeAlgebra, SU3Structure, Report), String> {
    let mut report = Report::new("su3.cone");
    report.absorb("su3.cone", validate_su2(s, frame, &|_| None));
    let acs = s
        .induced_contact()
        .ok_or_else(|| "SU(2)-structure carries no metric".to_string())?;
    report.absorb("su3.cone", acs.validate(frame));
    let normal = check_normal(&acs, frame).holds();
    let eta = &s.eta;
    // rate equations, both sign conventions
    let rate2_minus = frame
        .d(&s.omega2)
        .add(&s.omega3.wedge(eta).scale(&Scalar::from_int(3)));
    let rate3_minus = frame
        .d(&s.omega3)
        .sub(&s.omega2.wedge(eta).scale(&Scalar::from_int(3)));
    let rate2_plus = frame
        .d(&s.omega2)
        .sub(&s.omega3.wedge(eta).scale(&Scalar::from_int(3)));
    let rate3_plus = frame
        .d(&s.omega3)
        .add(&s.omega2.wedge(eta).scale(&Scalar::from_int(3)));
    report.push(Check::obstruction(
        "su3.cone.rate_minus.omega2",
        &rate2_minus,
        frame,
    ));
    report.push(Check::obstruction(
        "su3.cone.rate_minus.omega3",
        &rate3_minus,
        frame,
    ));
    report.push(Check::obstruction(
        "su3.cone.rate_plus.omega2",
        &rate2_plus,
        frame,
    ));
    report.push(Check::obstruction(
        "su3.cone.rate_plus.omega3",
        &rate3_plus,
        frame,
    ));
    // Phi ^ d eta = 0, the residual hypo-type condition on the cone
    let deta = frame.d(eta);
    let phi_deta_2 = s.omega2.wedge(&deta);
    let phi_deta_3 = s.omega3.wedge(&deta);
    report.push(Check::obstruction("su3.cone.omega2_deta", &phi_deta_2, frame));
    report.push(Check::obstruction("su3.cone.omega3_deta", &phi_deta_3, frame));
    // base cone equation
    let domega1 = frame.d(&s.omega1);
    let base_eq = s
        .eta
        .wedge(&s.omega1)
        .scale(&Scalar::from_int(-4))
        .add(&acs.i.apply_form(&domega1).scale(&Scalar::from_int(2)))
        .sub(&deta.wedge(eta).scale(&Scalar::from_int(2)))
        .sub(&frame.d(&acs.i.apply_form(&frame.contract(&acs.xi, &domega1))));
    report.push(Check::obstruction("su3.cone.base_equation", &base_eq, frame));
    // build the cone and both volume forms
    let cone = super::cone::riemannian_cone(frame, &acs);
    let ext = cone.frame;
    let dim = ext.dim();
    let dt_form = ext.covector(cone.dt_index);
    let t = cone.t.clone();
    let t2 = &t * &t;
    let t3 = &t2 * &t;
    let o2 = s.omega2.widen(dim);
    let o3 = s.omega3.widen(dim);
    let eta_w = s.eta.widen(dim);
    // variant with t eta + i dt
    let psi_plus = o2
        .wedge(&eta_w)
        .scale(&t3)
        .sub(&o3.wedge(&dt_form).scale(&t2));
    let psi_minus = o3
        .wedge(&eta_w)
        .scale(&t3)
        .add(&o2.wedge(&dt_form).scale(&t2));
    // variant with t eta - i dt
    let psi_plus_alt = o2
        .wedge(&eta_w)
        .scale(&t3)
        .add(&o3.wedge(&dt_form).scale(&t2));
    let psi_minus_alt = o3
        .wedge(&eta_w)
        .scale(&t3)
        .sub(&o2.wedge(&dt_form).scale(&t2));
    let su3 = SU3Structure {
        f: cone.hermitian.f.clone(),
        psi_plus,
        psi_minus,
        j: cone.hermitian.j.clone(),
    };
    report.absorb("su3.cone.structure", validate_su3(&su3, &ext));
    let direct = check_skt_su3(&su3, &ext);
    let dpsi_plus_variant = direct.get("su3.skt.dpsi_plus").unwrap().holds
        && direct.get("su3.skt.dpsi_minus").unwrap().holds;
    let djdf_direct = direct.get("su3.skt.djdf_closed").unwrap().holds;
    report.absorb("su3.cone.direct", direct);
    let dpsi_alt = ext.d(&psi_plus_alt).is_zero() && ext.d(&psi_minus_alt).is_zero();
    report.push(
        Check::new("su3.cone.dpsi_with_minus_idt", dpsi_alt)
            .info()
            .noting("closure of the volume form built with t eta - i dt"),
    );
    let phi_deta = phi_deta_2.is_zero() && phi_deta_3.is_zero();
    let minus_rates = rate2_minus.is_zero() && rate3_minus.is_zero();
    let plus_rates = rate2_plus.is_zero() && rate3_plus.is_zero();
    report.push(
        Check::new(
            "su3.cone.cross_check.dpsi_plus_idt",
            dpsi_plus_variant == (plus_rates && phi_deta),
        )
        .noting(format!(
            "direct {dpsi_plus_variant}; rate_plus and Phi^deta: {}",
            plus_rates && phi_deta
        )),
    );
    report.push(
        Check::new(
            "su3.cone.cross_check.dpsi_minus_idt",
            dpsi_alt == (minus_rates && phi_deta),
        )
        .noting(format!(
            "direct {dpsi_alt}; rate_minus and Phi^deta: {}",
            minus_rates && phi_deta
        )),
    );
    let nj = nijenhuis_vanishes(&su3.j, &ext);
    report.push(
        Check::new(
            "su3.cone.cross_check.djdf",
            (nj && djdf_direct) == (normal && base_eq.is_zero()),
        )
        .noting(format!(
            "direct integrable + d(JdF) = 0: {}; normal + base equation: {}",
            nj && djdf_direct,
            normal && base_eq.is_zero()
        )),
    );
    report.push(
        Check::new(
            "su3.cone.skt_rate_plus",
            base_eq.is_zero() && plus_rates && phi_deta,
        )
        .info()
        .noting("cone SU(3) SKT verdict with the +3 rate sign"),
    );
    report.push(
        Check::new(
            "su3.cone.skt_rate_minus",
            base_eq.is_zero() && minus_rates && phi_deta,
        )
        .info()
        .noting("cone SU(3) SKT verdict with the -3 rate sign; the two sign conventions are both reported, neither is preferred"),
    );
    Ok((ext, su3, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Form;
    use crate::frame::CoframeAlgebra;
    use crate::linalg::Matrix;
    fn su2_plus(dim5: &CoframeAlgebra) -> SU2Structure {
        let d = dim5.dim();
        SU2Structure {
            eta: Form::covector(d, 4),
            omega1: Form::monomial(d, &[0, 1], Scalar::one())
                .add(&Form::monomial(d, &[2, 3], Scalar::one())),
            omega2: Form::monomial(d, &[0, 2], Scalar::one())
                .add(&Form::monomial(d, &[1, 3], Scalar::from_int(-1))),
            omega3: Form::monomial(d, &[0, 3], Scalar::one())
                .add(&Form::monomial(d, &[1, 2], Scalar::one())),
            g: Some(Matrix::identity(d)),
        }
    }

    #[test]
    fn abelian_product_rates_fail_with_exact_obstruction() {
        let fr = CoframeAlgebra::new(
            (1..=5).map(|i| format!("e{i}")).collect(),
            crate::scalar::SymbolTable::new(),
        );
        let s = su2_plus(&fr);
        let (_, _, report) = su3_product_from_su2(&fr, &s).unwrap();
        // all-closed data: d omega2 = 0 but 3 omega3 ^ eta != 0
        let rate = report.get("su3.product.rate.omega2").unwrap();
        assert!(!rate.holds);
        assert!(report.get("su3.product.cross_check.dpsi").unwrap().holds);
        assert!(report.get("su3.product.cross_check.djdf").unwrap().holds);
        assert!(!report.get("su3.product.skt").unwrap().holds);
    }

    #[test]
    fn abelian_cone_base_equation_obstruction_is_minus_four_eta_omega() {
        let fr = CoframeAlgebra::new(
            (1..=5).map(|i| format!("e{i}")).collect(),
            crate::scalar::SymbolTable::new(),
        );
        let s = su2_plus(&fr);
        let (_, _, report) = su3_cone_from_su2(&fr, &s).unwrap();
        let base = report.get("su3.cone.base_equation").unwrap();
        assert!(!base.holds);
        // obstruction is exactly -4 eta ^ omega1 = 4 e145 + 4 e345 reordered
        let expected = s
            .eta
            .wedge(&s.omega1)
            .scale(&Scalar::from_int(-4));
        assert_eq!(
            base.obstruction.as_deref().unwrap(),
            crate::model::print::format_form(&expected, &fr)
        );
        assert!(report.get("su3.cone.cross_check.dpsi_plus_idt").unwrap().holds);
        assert!(report.get("su3.cone.cross_check.dpsi_minus_idt").unwrap().holds);
        assert!(report.get("su3.cone.cross_check.djdf").unwrap().holds);
    }
}
