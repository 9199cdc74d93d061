//! Riemannian cone over an almost contact metric base: `h = t^2 g + (dt)^2`,
//! `F = t^2 omega + t eta ^ dt`, with the cone coordinate carried as a genuine
//! symbol whose declared differential is the added covector.

use crate::frame::CoframeAlgebra;
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{Scalar, SymbolDecl};
use crate::structures::{
    check_skt, classify_contact, skt_verdict, AlmostContactMetric, HermitianStructure,
};

pub struct ConeExtension {
    pub frame: CoframeAlgebra,
    pub base_dim: usize,
    pub dt_index: usize,
    pub t: Scalar,
    pub hermitian: HermitianStructure,
}

pub fn riemannian_cone(frame: &CoframeAlgebra, acs: &AlmostContactMetric) -> ConeExtension {
    let base_dim = frame.dim();
    let mut ext = frame.clone();
    let dt_index = ext.extend_with_covector("dt");
    ext.dt_index = Some(dt_index);
    let dim = ext.dim();
    // widen pre-existing symbol differentials, then declare t with d t = dt
    let ids: Vec<_> = ext.symbols.iter().map(|(id, _)| id).collect();
    for id in ids {
        if let Some(dv) = ext.symbols.get(id).d_value.clone() {
            ext.symbols.get_mut(id).d_value = Some(dv.widen(dim));
        }
    }
    let mut t_decl = SymbolDecl::parameter("t");
    t_decl.d_value = Some(ext.covector(dt_index));
    t_decl.constraints.push("t != 0".into());
    let t_id = ext.symbols.declare(t_decl);
    let t = Scalar::var(t_id);
    // J: on the base I plus the xi-direction scaled by 1/t; J dt = -t eta
    let j = super::extension_complex_structure(acs, dim, dt_index, &t.inverse().unwrap());
    let mut h = Matrix::zero(dim, dim);
    let t2 = &t * &t;
    for i in 0..base_dim {
        for k in 0..base_dim {
            h.set(i, k, acs.g.get(i, k) * &t2);
        }
    }
    h.set(dt_index, dt_index, Scalar::one());
    let hermitian = HermitianStructure::new(j, h);
    debug_assert_eq!(
        hermitian.f,
        acs.omega.widen(dim).scale(&t2).add(
            &acs
                .eta
                .widen(dim)
                .scale(&t)
                .wedge(&ext.covector(dt_index))
        )
    );
    ConeExtension {
        frame: ext,
        base_dim,
        dt_index,
        t,
        hermitian,
    }
}

/// SKT criterion for the cone: normality together with the base equation
/// `-4 eta ^ omega + 2 I(d omega) - 2 d eta ^ eta = d(I(i_xi d omega))`,
/// cross-validated against the direct computation on the cone.
pub fn check_skt_cone(frame: &CoframeAlgebra, acs: &AlmostContactMetric) -> Report {
    let mut report = Report::new("skt.cone");
    let (class, class_report) = classify_contact(acs, frame);
    report.extend(class_report);
    let domega = frame.d(&acs.omega);
    let deta = frame.d(&acs.eta);
    let lhs = acs
        .eta
        .wedge(&acs.omega)
        .scale(&Scalar::from_int(-4))
        .add(&acs.i.apply_form(&domega).scale(&Scalar::from_int(2)))
        .sub(&deta.wedge(&acs.eta).scale(&Scalar::from_int(2)));
    let rhs = frame.d(&acs.i.apply_form(&frame.contract(&acs.xi, &domega)));
    let base_eq = lhs.sub(&rhs);
    report.push(Check::obstruction("skt.cone.base_equation", &base_eq, frame));
    let cone = riemannian_cone(frame, acs);
    let direct_report = check_skt(&cone.hermitian, &cone.frame);
    let structures_valid =
        acs.validate(frame).holds() && cone.hermitian.validate(&cone.frame).holds();
    let direct = structures_valid && skt_verdict(&cone.hermitian, &cone.frame);
    report.absorb("skt.cone.direct", direct_report);
    let reduced = structures_valid && class.normal && base_eq.is_zero();
    report.push(
        Check::new("skt.cone.cross_check", reduced == direct)
            .noting(format!("reduced verdict {reduced}, direct verdict {direct}")),
    );
    report.push(
        Check::new("skt.cone.skt", reduced)
            .info()
            .noting("verdict of the reduced base-level criterion"),
    );
    // dimension-3 case: the criterion must coincide with being Sasakian
    if frame.dim() == 3 {
        let sasakian = class.normal
            && class.omega_closed
            && class.alpha == Some(Scalar::from_int(-2));
        report.push(
            Check::new("skt.cone.dim3_sasakian_consistency", reduced == sasakian).noting(
                format!("cone criterion {reduced}, Sasakian classification {sasakian}"),
            ),
        );
    } else if class.normal && class.omega_closed {
        // quasi-Sasakian in higher dimension: criterion forces d eta = -2 omega
        let sasakian = class.alpha == Some(Scalar::from_int(-2));
        report.push(
            Check::new("skt.cone.quasi_sasakian_consistency", reduced == sasakian)
                .assuming("base is quasi-Sasakian")
                .noting(format!(
                    "cone criterion {reduced}, d eta = -2 omega verdict {sasakian}"
                )),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Form;
    use crate::frame::{CoframeAlgebra, Endo, VectorField};
    use crate::scalar::SymbolTable;
    fn standard_contact_scaled(dim: usize, g: Matrix) -> AlmostContactMetric {
        let mut i = Endo::zero(dim);
        i.set(0, &Form::covector(dim, 1).neg());
        i.set(1, &Form::covector(dim, 0));
        if dim >= 5 {
            i.set(2, &Form::covector(dim, 3).neg());
            i.set(3, &Form::covector(dim, 2));
        }
        AlmostContactMetric::new(
            i,
            VectorField::frame(dim, dim - 1),
            Form::covector(dim, dim - 1),
            g,
        )
    }

    #[test]
    fn sasakian_three_dim_base_gives_kaehler_cone() {
        // d e3 = e12 with omega = -1/2 e12: d eta = -2 omega, Sasakian
        let mut fr = CoframeAlgebra::new(
            (1..=3).map(|i| format!("e{i}")).collect(),
            SymbolTable::new(),
        );
        fr.set_differential(2, Form::monomial(3, &[0, 1], Scalar::one()));
        let g = Matrix::diag(vec![
            Scalar::from_ratio(1, 2),
            Scalar::from_ratio(1, 2),
            Scalar::one(),
        ]);
        let acs = standard_contact_scaled(3, g);
        assert!(acs.validate(&fr).holds());
        let (class, _) = classify_contact(&acs, &fr);
        assert_eq!(class.alpha, Some(Scalar::from_int(-2)));
        let report = check_skt_cone(&fr, &acs);
        assert!(report.get("skt.cone.cross_check").unwrap().holds);
        assert!(report.get("skt.cone.skt").unwrap().holds);
        assert!(report.get("skt.cone.dim3_sasakian_consistency").unwrap().holds);
        // the cone is in fact Kaehler: dF = 0
        let cone = riemannian_cone(&fr, &acs);
        assert!(cone.frame.check_d_squared().holds());
        assert!(cone.frame.d(&cone.hermitian.f).is_zero());
    }

    #[test]
    fn alpha_minus_one_three_dim_base_fails_cone_criterion() {
        // d e3 = e12 with omega = -e12: alpha = -1, not Sasakian
        let mut fr = CoframeAlgebra::new(
            (1..=3).map(|i| format!("e{i}")).collect(),
            SymbolTable::new(),
        );
        fr.set_differential(2, Form::monomial(3, &[0, 1], Scalar::one()));
        let acs = standard_contact_scaled(3, Matrix::identity(3));
        let report = check_skt_cone(&fr, &acs);
        assert!(report.get("skt.cone.cross_check").unwrap().holds);
        assert!(!report.get("skt.cone.skt").unwrap().holds);
        assert!(report.get("skt.cone.dim3_sasakian_consistency").unwrap().holds);
    }

    #[test]
    fn abelian_base_cone_is_not_kaehler_unless_omega_zero() {
        let fr = CoframeAlgebra::new(
            (1..=5).map(|i| format!("e{i}")).collect(),
            SymbolTable::new(),
        );
        let acs = standard_contact_scaled(5, Matrix::identity(5));
        let cone = riemannian_cone(&fr, &acs);
        // dF = 2t dt ^ omega when the base is abelian
        let df = cone.frame.d(&cone.hermitian.f);
        assert!(!df.is_zero());
        let report = check_skt_cone(&fr, &acs);
        assert!(report.get("skt.cone.cross_check").unwrap().holds);
        assert!(!report.get("skt.cone.skt").unwrap().holds);
    }
}
