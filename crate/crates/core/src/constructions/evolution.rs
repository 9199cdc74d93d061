//! Families of SU(2)-structures driven by evolution equations, and the
//! SU(3)-structure they assemble on the product with an interval.
//!
//! The family lives over a base coframe whose t-dependence is carried by
//! symbols with declared t-derivatives; `d` on the base never produces a `dt`
//! term, while the assembled product frame adds the `dt` covector and
//! promotes every declared rate to an exterior differential along it.

use crate::frame::CoframeAlgebra;
use crate::poly::Q;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::structures::{
    check_skt_su3, validate_su2, validate_su3, SU2Structure, SU3Structure,
};

/// A t-dependent SU(2)-structure; the metric is required (it derives the
/// endomorphism and the dual vector field at every t).
pub type SU2Family = SU2Structure;

/// All displayed evolution conditions, exactly over the t-symbol field:
/// hypo-type closedness, the volume-flow equations, and the two SKT torsion
/// equations.
pub fn check_evolution(
    frame: &CoframeAlgebra,
    family: &SU2Family,
    samples: &dyn Fn(crate::poly::SymId) -> Option<Q>,
) -> Report {
    let mut report = Report::new("evolution");
    report.absorb("evolution", validate_su2(family, frame, samples));
    let acs = match family.induced_contact() {
        Some(acs) => acs,
        None => {
            report.push(Check::new("evolution.metric_present", false));
            return report;
        }
    };
    report.absorb("evolution", acs.validate(frame));
    let eta = &family.eta;
    let hypo2 = frame.d(&family.omega2.wedge(eta));
    let hypo3 = frame.d(&family.omega3.wedge(eta));
    report.push(Check::obstruction("evolution.hypo.omega2_eta", &hypo2, frame));
    report.push(Check::obstruction("evolution.hypo.omega3_eta", &hypo3, frame));
    let flow2 = frame
        .partial_t(&family.omega2.wedge(eta))
        .add(&frame.d(&family.omega3));
    let flow3 = frame
        .partial_t(&family.omega3.wedge(eta))
        .sub(&frame.d(&family.omega2));
    report.push(Check::obstruction("evolution.flow.omega2_eta", &flow2, frame));
    report.push(Check::obstruction("evolution.flow.omega3_eta", &flow3, frame));
    // torsion form: I_t d omega1 - I_t(dt omega1 + d eta) ^ eta
    let domega1 = frame.d(&family.omega1);
    let dt_omega1 = frame.partial_t(&family.omega1);
    let deta = frame.d(eta);
    let torsion = acs
        .i
        .apply_form(&domega1)
        .sub(&acs.i.apply_form(&dt_omega1.add(&deta)).wedge(eta));
    let ev1 = frame.d(&torsion);
    report.push(Check::obstruction("evolution.torsion_closed", &ev1, frame));
    let contracted = acs
        .i
        .apply_form(&frame.contract(&acs.xi, &domega1))
        .sub(
            &acs.i
                .apply_form(&frame.contract(&acs.xi, &dt_omega1.add(&deta)))
                .wedge(eta),
        );
    let ev2 = frame.partial_t(&torsion).add(&frame.d(&contracted));
    report.push(Check::obstruction("evolution.torsion_flow", &ev2, frame));
    let all = hypo2.is_zero()
        && hypo3.is_zero()
        && flow2.is_zero()
        && flow3.is_zero()
        && ev1.is_zero()
        && ev2.is_zero();
    report.push(
        Check::new("evolution.all_equations", all)
            .info()
            .noting("conjunction of the hypo-type, flow and torsion equations"),
    );
    report
}

/// Assemble `(F, psi)` on the product frame and cross-validate against the
/// evolution equations: `d psi = 0` must match the hypo + flow equations and
/// `d(J dF) = 0` the two torsion equations, exactly.
pub fn assemble_su3_from_family(
    frame: &CoframeAlgebra,
    family: &SU2Family,
) -> Result<(CoframeAlgebra, SU3Structure, Report), String> {
    let mut report = Report::new("evolution.assemble");
    let acs = family
        .induced_contact()
        .ok_or_else(|| "family carries no metric".to_string())?;
    let evolution = check_evolution(frame, family, &|_| None);
    let hypo_flow = ["evolution.hypo.omega2_eta", "evolution.hypo.omega3_eta",
        "evolution.flow.omega2_eta", "evolution.flow.omega3_eta"]
        .iter()
        .all(|n| evolution.get(n).unwrap().holds);
    let torsion_eqs = ["evolution.torsion_closed", "evolution.torsion_flow"]
        .iter()
        .all(|n| evolution.get(n).unwrap().holds);
    report.extend(evolution);
    let (ext, dt_idx) = super::extend_by_line(frame, "dt");
    let dsq = ext.check_d_squared();
    report.push(Check::new("evolution.product_d_squared", dsq.holds()));
    let dim = ext.dim();
    let dt_form = ext.covector(dt_idx);
    let j = super::extension_complex_structure(&acs, dim, dt_idx, &Scalar::one());
    let f = family
        .omega1
        .widen(dim)
        .add(&family.eta.widen(dim).wedge(&dt_form));
    let psi_plus = family
        .omega2
        .widen(dim)
        .wedge(&family.eta.widen(dim))
        .sub(&family.omega3.widen(dim).wedge(&dt_form));
    let psi_minus = family
        .omega3
        .widen(dim)
        .wedge(&family.eta.widen(dim))
        .add(&family.omega2.widen(dim).wedge(&dt_form));
    let su3 = SU3Structure {
        f,
        psi_plus,
        psi_minus,
        j,
    };
    report.absorb("evolution.assemble", validate_su3(&su3, &ext));
    let direct = check_skt_su3(&su3, &ext);
    let dpsi = direct.get("su3.skt.dpsi_plus").unwrap().holds
        && direct.get("su3.skt.dpsi_minus").unwrap().holds;
    let djdf = direct.get("su3.skt.djdf_closed").unwrap().holds;
    report.absorb("evolution.assemble", direct);
    report.push(
        Check::new("evolution.cross_check.dpsi", dpsi == hypo_flow).noting(format!(
            "direct d psi = 0: {dpsi}; hypo + flow equations: {hypo_flow}"
        )),
    );
    report.push(
        Check::new("evolution.cross_check.djdf", djdf == torsion_eqs).noting(format!(
            "direct d(JdF) = 0: {djdf}; torsion equations: {torsion_eqs}"
        )),
    );
    Ok((ext, su3, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Form;
    use crate::linalg::Matrix;
    use crate::poly::{Poly, Q, q};
    use crate::scalar::{SymbolDecl, SymbolTable};
    /// The nilpotent base d e4 = e12, d e5 = e14 with the cube-root symbol
    /// w carrying dw/dt = 1/(2 w^2).
    fn family_fixture(rate_num: Q, rate_den: Poly) -> (CoframeAlgebra, SU2Family) {
        let mut table = SymbolTable::new();
        let w = table.declare(SymbolDecl::parameter("w"));
        let rate = Scalar::new(Poly::constant(rate_num), rate_den);
        table.get_mut(w).dt_value = Some(rate);
        let mut fr = CoframeAlgebra::new(
            (1..=5).map(|i| format!("e{i}")).collect(),
            table,
        );
        fr.set_differential(3, Form::monomial(5, &[0, 1], Scalar::one()));
        fr.set_differential(4, Form::monomial(5, &[0, 3], Scalar::one()));
        let ws = Scalar::var(w);
        let winv = ws.inverse().unwrap();
        let family = SU2Family {
            eta: Form::monomial(5, &[1], ws.clone()),
            omega1: Form::monomial(5, &[0, 3], Scalar::from_int(-1))
                .add(&Form::monomial(5, &[2, 4], Scalar::one())),
            omega2: Form::monomial(5, &[0, 4], -&ws)
                .add(&Form::monomial(5, &[2, 3], -&winv)),
            omega3: Form::monomial(5, &[0, 2], -&ws)
                .add(&Form::monomial(5, &[3, 4], -&winv)),
            g: Some(Matrix::diag(vec![
                &ws * &ws,
                &ws * &ws,
                Scalar::one(),
                &winv * &winv,
                Scalar::one(),
            ])),
        };
        (fr, family)
    }

    #[test]
    fn cube_root_family_satisfies_all_evolution_equations() {
        let (fr, family) = family_fixture(q(1, 2), Poly::var(0).mul(&Poly::var(0)));
        let report = check_evolution(&fr, &family, &|s| if s == 0 { Some(q(1, 1)) } else { None });
        assert!(
            report.get("evolution.all_equations").unwrap().holds,
            "{}",
            report.emit_text()
        );
        let (ext, su3, assemble) = assemble_su3_from_family(&fr, &family).unwrap();
        assert!(assemble.get("evolution.cross_check.dpsi").unwrap().holds);
        assert!(assemble.get("evolution.cross_check.djdf").unwrap().holds);
        assert!(assemble.get("evolution.assemble.su3.skt.dpsi_plus").unwrap().holds);
        assert!(assemble.get("evolution.assemble.su3.skt.djdf_closed").unwrap().holds);
        assert!(ext.check_d_squared().holds());
        assert!(validate_su3(&su3, &ext).holds());
    }

    #[test]
    fn square_root_exponent_breaks_the_evolution() {
        // w^2 = 1 + 3t/2 encoding: dw/dt = 3/(4w)
        let (fr, family) = family_fixture(q(3, 4), Poly::var(0));
        let report = check_evolution(&fr, &family, &|_| None);
        assert!(!report.get("evolution.all_equations").unwrap().holds);
        // the assembled product must fail in exactly the same places
        let (_, _, assemble) = assemble_su3_from_family(&fr, &family).unwrap();
        assert!(assemble.get("evolution.cross_check.dpsi").unwrap().holds);
        assert!(assemble.get("evolution.cross_check.djdf").unwrap().holds);
        assert!(!assemble.get("evolution.assemble.su3.skt.dpsi_plus").unwrap().holds
            || !assemble.get("evolution.assemble.su3.skt.dpsi_minus").unwrap().holds);
    }

    #[test]
    fn static_family_reduces_to_static_conditions() {
        // constant family on the same frame: partial_t terms vanish
        let (fr, mut family) = family_fixture(q(1, 2), Poly::var(0).mul(&Poly::var(0)));
        // freeze w out: use constant coefficients instead
        family.eta = Form::covector(5, 1);
        family.omega2 = Form::monomial(5, &[0, 4], Scalar::from_int(-1))
            .add(&Form::monomial(5, &[2, 3], Scalar::from_int(-1)));
        family.omega3 = Form::monomial(5, &[0, 2], Scalar::from_int(-1))
            .add(&Form::monomial(5, &[3, 4], Scalar::from_int(-1)));
        family.g = Some(Matrix::identity(5));
        let report = check_evolution(&fr, &family, &|_| None);
        // flow equations now read d omega_i = 0
        assert_eq!(
            report.get("evolution.flow.omega2_eta").unwrap().holds,
            fr.d(&family.omega3).is_zero()
        );
        assert_eq!(
            report.get("evolution.flow.omega3_eta").unwrap().holds,
            fr.d(&family.omega2).is_zero()
        );
    }
}
