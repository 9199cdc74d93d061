//! Triples of almost contact metric structures, their quaternionic
//! compatibility relations, and the HKT / strong HKT criteria for products
//! and circle bundles.

use crate::form::Form;
use crate::frame::CoframeAlgebra;
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::structures::{
    check_normal, nijenhuis_vanishes, AlmostContactMetric, HermitianStructure,
};

#[derive(Clone, Debug)]
pub struct ContactTriple {
    pub structures: [AlmostContactMetric; 3],
}

impl ContactTriple {
    pub fn dim(&self) -> usize {
        self.structures[0].dim()
    }
}

/// Quaternionic compatibility: for every cyclic permutation (i, j, k),
/// `I_k = I_i I_j - eta_j (x) xi_i = -I_j I_i + eta_i (x) xi_j`, together with
/// the vector and covector relations and normality of each structure.
pub fn validate_triple(t: &ContactTriple, frame: &CoframeAlgebra) -> Report {
    let mut report = Report::new("hkt.triple");
    let shared_metric = t.structures[0].g == t.structures[1].g
        && t.structures[1].g == t.structures[2].g;
    report.push(Check::new("hkt.triple.shared_metric", shared_metric));
    for (n, s) in t.structures.iter().enumerate() {
        report.absorb(&format!("hkt.triple.s{}", n + 1), s.validate(frame));
    }
    for (i, j, k) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
        let si = &t.structures[i];
        let sj = &t.structures[j];
        let sk = &t.structures[k];
        let composed = si.i.compose(&sj.i); // I_i I_j on vectors
        let correction = crate::frame::Endo::tensor(&sj.eta, &si.xi);
        let defect = composed.sub(&correction).sub(&sk.i);
        report.push(Check::new(
            format!("hkt.triple.compose.{}{}to{}", i + 1, j + 1, k + 1),
            defect.is_zero(),
        ));
        let anti = sj.i.compose(&si.i).neg().add(&crate::frame::Endo::tensor(&si.eta, &sj.xi));
        report.push(Check::new(
            format!("hkt.triple.anticompose.{}{}to{}", j + 1, i + 1, k + 1),
            anti.sub(&sk.i).is_zero(),
        ));
        // xi_k = I_i xi_j = -I_j xi_i
        let v1 = si.i.apply_vector(&sj.xi);
        let v2 = sj.i.apply_vector(&si.xi).neg();
        report.push(Check::new(
            format!("hkt.triple.xi.{}", k + 1),
            v1 == sk.xi && v2 == sk.xi,
        ));
        // eta_k = eta_i o I_j = -eta_j o I_i
        let c1 = sj.i.apply_form(&si.eta);
        let c2 = si.i.apply_form(&sj.eta).neg();
        report.push(Check::new(
            format!("hkt.triple.eta.{}", k + 1),
            c1 == sk.eta && c2 == sk.eta,
        ));
    }
    for (n, s) in t.structures.iter().enumerate() {
        let normal = check_normal(s, frame);
        report.push(Check::new(
            format!("hkt.triple.normal.{}", n + 1),
            normal.holds(),
        ));
    }
    report
}

struct HyperHermitianExtension {
    frame: CoframeAlgebra,
    hermitian: [HermitianStructure; 3],
}

/// Common extension builder: `scale = None` for the product (adds `dt`),
/// `Some(Omega)` for the circle bundle (adds `theta` with `d theta = Omega`).
fn build_extension(
    frame: &CoframeAlgebra,
    t: &ContactTriple,
    curvature: Option<&Form>,
) -> Result<HyperHermitianExtension, String> {
    let base_dim = frame.dim();
    let mut ext = frame.clone();
    let new_idx = match curvature {
        None => {
            let (e, idx) = crate::constructions::extend_by_line(frame, "dt");
            ext = e;
            idx
        }
        Some(omega) => {
            if !frame.d(omega).is_zero() {
                return Err("bundle curvature form is not closed".into());
            }
            let idx = ext.extend_with_covector("th");
            ext.theta_index = Some(idx);
            let dim = ext.dim();
            ext.set_differential(idx, omega.widen(dim));
            idx
        }
    };
    let dim = ext.dim();
    let mut h = Matrix::zero(dim, dim);
    for i in 0..base_dim {
        for k in 0..base_dim {
            h.set(i, k, t.structures[0].g.get(i, k).clone());
        }
    }
    h.set(new_idx, new_idx, Scalar::one());
    let hermitian = [0, 1, 2].map(|r| {
        let j = crate::constructions::extension_complex_structure(
            &t.structures[r],
            dim,
            new_idx,
            &Scalar::one(),
        );
        HermitianStructure::new(j, h.clone())
    });
    Ok(HyperHermitianExtension {
        frame: ext,
        hermitian,
    })
}

fn quaternion_relations(ext: &HyperHermitianExtension) -> bool {
    let [j1, j2, j3] = &ext.hermitian;
    let a = j1.j.compose(&j2.j);
    let b = j2.j.compose(&j1.j).neg();
    a == j3.j && b == j3.j
}

/// Reduced HKT data on the base: the common forms whose equality is the HKT
/// condition.
fn reduced_forms(frame: &CoframeAlgebra, t: &ContactTriple) -> (Vec<Form>, Vec<Form>) {
    let mut torsion_parts = Vec::new();
    let mut contract_parts = Vec::new();
    for s in &t.structures {
        let domega = frame.d(&s.omega);
        let deta = frame.d(&s.eta);
        torsion_parts.push(s.i.apply_form(&domega).sub(&deta.wedge(&s.eta)));
        contract_parts.push(s.i.apply_form(&frame.contract(&s.xi, &domega)));
    }
    (torsion_parts, contract_parts)
}

/// HKT criterion for the product with a line, reduced and direct, with the
/// sufficient-case diagnostics.
pub fn check_hkt_product(frame: &CoframeAlgebra, t: &ContactTriple) -> Report {
    let mut report = Report::new("hkt.product");
    let triple_report = validate_triple(t, frame);
    let triple_ok = triple_report.holds();
    report.extend(triple_report);
    let (torsion_parts, contract_parts) = reduced_forms(frame, t);
    let eq_t12 = torsion_parts[0].sub(&torsion_parts[1]);
    let eq_t13 = torsion_parts[0].sub(&torsion_parts[2]);
    let eq_c12 = contract_parts[0].sub(&contract_parts[1]);
    let eq_c13 = contract_parts[0].sub(&contract_parts[2]);
    report.push(Check::obstruction("hkt.product.torsion_match.12", &eq_t12, frame));
    report.push(Check::obstruction("hkt.product.torsion_match.13", &eq_t13, frame));
    report.push(Check::obstruction("hkt.product.contract_match.12", &eq_c12, frame));
    report.push(Check::obstruction("hkt.product.contract_match.13", &eq_c13, frame));
    let reduced_hkt = triple_ok
        && eq_t12.is_zero()
        && eq_t13.is_zero()
        && eq_c12.is_zero()
        && eq_c13.is_zero();
    // strongness: closedness of the common pieces
    let mut strong_reduced = true;
    for (r, s) in t.structures.iter().enumerate() {
        let d1 = frame.d(&contract_parts[r]);
        let d2 = frame.d(&torsion_parts[r]);
        report.push(Check::obstruction(
            format!("hkt.product.strong.contract_closure.{}", r + 1),
            &d1,
            frame,
        ));
        report.push(Check::obstruction(
            format!("hkt.product.strong.torsion_closure.{}", r + 1),
            &d2,
            frame,
        ));
        if !d1.is_zero() || !d2.is_zero() {
            strong_reduced = false;
        }
        let _ = s;
    }
    // sufficient cases
    let all_omega_closed = t
        .structures
        .iter()
        .all(|s| frame.d(&s.omega).is_zero());
    let deta_eta: Vec<Form> = t
        .structures
        .iter()
        .map(|s| frame.d(&s.eta).wedge(&s.eta))
        .collect();
    let deta_match = deta_eta[0] == deta_eta[1] && deta_eta[1] == deta_eta[2];
    report.push(
        Check::new("hkt.product.case_a", all_omega_closed && deta_match)
            .info()
            .noting("all fundamental forms closed and d eta_r ^ eta_r all equal (sufficient; implies strong)"),
    );
    let i_domega_match = {
        let items: Vec<Form> = t
            .structures
            .iter()
            .map(|s| s.i.apply_form(&frame.d(&s.omega)))
            .collect();
        items[0] == items[1] && items[1] == items[2]
    };
    let case_b_eqs = i_domega_match
        && contract_parts[0] == contract_parts[1]
        && contract_parts[1] == contract_parts[2];
    report.push(
        Check::new("hkt.product.case_b_equalities", deta_match && case_b_eqs)
            .info()
            .noting("the nondegeneracy d omega_i ^ eta_j ^ eta_k != 0 is a sampled side condition, reported separately"),
    );
    // direct computation
    let ext = build_extension(frame, t, None).expect("product extension");
    report.push(Check::new(
        "hkt.product.quaternion_relations",
        quaternion_relations(&ext),
    ));
    let jdf: Vec<Form> = ext
        .hermitian
        .iter()
        .map(|h| h.j.apply_form(&ext.frame.d(&h.f)))
        .collect();
    let hermitian_valid = ext
        .hermitian
        .iter()
        .all(|h| h.validate(&ext.frame).holds());
    report.push(Check::new("hkt.product.direct.hermitian_valid", hermitian_valid));
    let integrable = ext
        .hermitian
        .iter()
        .all(|h| nijenhuis_vanishes(&h.j, &ext.frame));
    let direct_equal = jdf[0] == jdf[1] && jdf[1] == jdf[2];
    let direct_hkt = hermitian_valid && integrable && direct_equal;
    report.push(Check::obstruction(
        "hkt.product.direct.torsion_match.12",
        &jdf[0].sub(&jdf[1]),
        &ext.frame,
    ));
    report.push(Check::obstruction(
        "hkt.product.direct.torsion_match.13",
        &jdf[0].sub(&jdf[2]),
        &ext.frame,
    ));
    let strong_direct = direct_hkt && ext.frame.d(&jdf[0]).is_zero();
    report.push(Check::obstruction(
        "hkt.product.direct.torsion_closed",
        &ext.frame.d(&jdf[0]),
        &ext.frame,
    ));
    report.push(
        Check::new("hkt.product.cross_check", reduced_hkt == direct_hkt).noting(format!(
            "reduced verdict {reduced_hkt}, direct verdict {direct_hkt}"
        )),
    );
    report.push(
        Check::new(
            "hkt.product.cross_check.strong",
            (reduced_hkt && strong_reduced) == strong_direct,
        )
        .noting(format!(
            "reduced strong {}, direct strong {strong_direct}",
            reduced_hkt && strong_reduced
        )),
    );
    report.push(Check::new("hkt.product.hkt", reduced_hkt).info());
    report.push(Check::new("hkt.product.strong", reduced_hkt && strong_reduced).info());
    report
}

/// HKT criterion for the circle bundle over the triple.
pub fn check_hkt_bundle(
    frame: &CoframeAlgebra,
    t: &ContactTriple,
    omega: &Form,
) -> Result<Report, String> {
    let mut report = Report::new("hkt.bundle");
    let triple_report = validate_triple(t, frame);
    let triple_ok = triple_report.holds();
    report.extend(triple_report);
    if !frame.d(omega).is_zero() {
        return Err("bundle curvature form is not closed".into());
    }
    let mut invariant = true;
    for (r, s) in t.structures.iter().enumerate() {
        let inv = s.i.apply_form(omega).sub(omega);
        report.push(Check::obstruction(
            format!("hkt.bundle.omega_invariant.{}", r + 1),
            &inv,
            frame,
        ));
        let contr = frame.contract(&s.xi, omega);
        report.push(Check::obstruction(
            format!("hkt.bundle.omega_xi_contraction.{}", r + 1),
            &contr,
            frame,
        ));
        if !inv.is_zero() || !contr.is_zero() {
            invariant = false;
        }
    }
    let (torsion_parts, contract_parts) = reduced_forms(frame, t);
    let eq_t12 = torsion_parts[0].sub(&torsion_parts[1]);
    let eq_t13 = torsion_parts[0].sub(&torsion_parts[2]);
    let eq_c12 = contract_parts[0].sub(&contract_parts[1]);
    let eq_c13 = contract_parts[0].sub(&contract_parts[2]);
    report.push(Check::obstruction("hkt.bundle.torsion_match.12", &eq_t12, frame));
    report.push(Check::obstruction("hkt.bundle.torsion_match.13", &eq_t13, frame));
    report.push(Check::obstruction("hkt.bundle.contract_match.12", &eq_c12, frame));
    report.push(Check::obstruction("hkt.bundle.contract_match.13", &eq_c13, frame));
    let reduced_hkt = triple_ok
        && invariant
        && eq_t12.is_zero()
        && eq_t13.is_zero()
        && eq_c12.is_zero()
        && eq_c13.is_zero();
    // strongness on the bundle
    let mut strong_reduced = true;
    for r in 0..3 {
        let d1 = frame.d(&contract_parts[r]);
        report.push(Check::obstruction(
            format!("hkt.bundle.strong.contract_closure.{}", r + 1),
            &d1,
            frame,
        ));
        let lhs = frame.d(&torsion_parts[r]);
        let rhs = contract_parts[r].neg().add(omega).wedge(omega);
        let balance = lhs.sub(&rhs);
        report.push(Check::obstruction(
            format!("hkt.bundle.strong.curvature_balance.{}", r + 1),
            &balance,
            frame,
        ));
        if !d1.is_zero() || !balance.is_zero() {
            strong_reduced = false;
        }
    }
    // direct computation on the extension
    let ext = build_extension(frame, t, Some(omega))?;
    report.push(Check::new(
        "hkt.bundle.quaternion_relations",
        quaternion_relations(&ext),
    ));
    let jdf: Vec<Form> = ext
        .hermitian
        .iter()
        .map(|h| h.j.apply_form(&ext.frame.d(&h.f)))
        .collect();
    let hermitian_valid = ext
        .hermitian
        .iter()
        .all(|h| h.validate(&ext.frame).holds());
    report.push(Check::new("hkt.bundle.direct.hermitian_valid", hermitian_valid));
    let integrable = ext
        .hermitian
        .iter()
        .all(|h| nijenhuis_vanishes(&h.j, &ext.frame));
    let direct_equal = jdf[0] == jdf[1] && jdf[1] == jdf[2];
    let direct_hkt = hermitian_valid && integrable && direct_equal;
    report.push(Check::obstruction(
        "hkt.bundle.direct.torsion_match.12",
        &jdf[0].sub(&jdf[1]),
        &ext.frame,
    ));
    report.push(Check::obstruction(
        "hkt.bundle.direct.torsion_match.13",
        &jdf[0].sub(&jdf[2]),
        &ext.frame,
    ));
    let strong_direct = direct_hkt && ext.frame.d(&jdf[0]).is_zero();
    report.push(
        Check::new("hkt.bundle.cross_check", reduced_hkt == direct_hkt).noting(format!(
            "reduced verdict {reduced_hkt}, direct verdict {direct_hkt}"
        )),
    );
    report.push(
        Check::new(
            "hkt.bundle.cross_check.strong",
            (reduced_hkt && strong_reduced) == strong_direct,
        )
        .noting(format!(
            "reduced strong {}, direct strong {strong_direct}",
            reduced_hkt && strong_reduced
        )),
    );
    report.push(Check::new("hkt.bundle.hkt", reduced_hkt).info());
    report.push(Check::new("hkt.bundle.strong", reduced_hkt && strong_reduced).info());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Endo, VectorField};
    use crate::scalar::SymbolTable;

    /// The standard flat quaternionic triple on R^7.
    pub fn flat_triple() -> (CoframeAlgebra, ContactTriple) {
        let fr = CoframeAlgebra::new(
            (1..=7).map(|i| format!("e{i}")).collect(),
            SymbolTable::new(),
        );
        (fr.clone(), standard_triple(7))
    }

    /// Quaternionic triple from left multiplication by i, j, k on the first
    /// four directions, coupled to the contact block (e5, e6, e7).
    pub fn standard_triple(dim: usize) -> ContactTriple {
        let e = |i: usize| Form::covector(dim, i);
        let mut i1 = Endo::zero(dim);
        i1.set(0, &e(1).neg());
        i1.set(1, &e(0));
        i1.set(2, &e(3).neg());
        i1.set(3, &e(2));
        i1.set(4, &e(5));
        i1.set(5, &e(4).neg());
        let s1 = AlmostContactMetric::new(
            i1,
            VectorField::frame(dim, 6),
            e(6),
            Matrix::identity(dim),
        );
        let mut i2 = Endo::zero(dim);
        i2.set(0, &e(2).neg());
        i2.set(1, &e(3));
        i2.set(2, &e(0));
        i2.set(3, &e(1).neg());
        i2.set(4, &e(6).neg());
        i2.set(6, &e(4));
        let s2 = AlmostContactMetric::new(
            i2,
            VectorField::frame(dim, 5),
            e(5),
            Matrix::identity(dim),
        );
        let mut i3 = Endo::zero(dim);
        i3.set(0, &e(3).neg());
        i3.set(1, &e(2).neg());
        i3.set(2, &e(1));
        i3.set(3, &e(0));
        i3.set(5, &e(6));
        i3.set(6, &e(5).neg());
        let s3 = AlmostContactMetric::new(
            i3,
            VectorField::frame(dim, 4),
            e(4),
            Matrix::identity(dim),
        );
        ContactTriple {
            structures: [s1, s2, s3],
        }
    }

    #[test]
    fn flat_triple_is_valid_and_strong_hkt() {
        let (fr, t) = flat_triple();
        let report = validate_triple(&t, &fr);
        assert!(report.holds(), "{}", report.emit_text());
        let hkt = check_hkt_product(&fr, &t);
        assert!(hkt.get("hkt.product.cross_check").unwrap().holds);
        assert!(hkt.get("hkt.product.cross_check.strong").unwrap().holds);
        assert!(hkt.get("hkt.product.hkt").unwrap().holds);
        assert!(hkt.get("hkt.product.strong").unwrap().holds);
        assert!(hkt.get("hkt.product.quaternion_relations").unwrap().holds);
    }

    #[test]
    fn flipped_plane_breaks_the_triple() {
        let (fr, mut t) = flat_triple();
        // flip I_2 on the (1,3)-plane
        let dim = 7;
        let e = |i: usize| Form::covector(dim, i);
        t.structures[1].i.set(0, &e(2));
        t.structures[1].i.set(2, &e(0).neg());
        let report = validate_triple(&t, &fr);
        assert!(!report.holds());
        assert!(!report.get("hkt.triple.compose.12to3").unwrap().holds);
    }

    #[test]
    fn flat_bundle_with_invariant_curvature_is_hkt_but_not_strong() {
        let (fr, t) = flat_triple();
        // Omega = e12 - e34 is closed and invariant under all three, but
        // Omega ^ Omega != 0 breaks the strongness balance
        let omega = Form::monomial(7, &[0, 1], Scalar::one())
            .add(&Form::monomial(7, &[2, 3], Scalar::from_int(-1)));
        let report = check_hkt_bundle(&fr, &t, &omega).unwrap();
        assert!(report.get("hkt.bundle.cross_check").unwrap().holds, "{}", report.emit_text());
        assert!(report.get("hkt.bundle.cross_check.strong").unwrap().holds);
        assert!(report.get("hkt.bundle.hkt").unwrap().holds);
        assert!(!report.get("hkt.bundle.strong").unwrap().holds);
        // the balance obstruction is exactly -Omega ^ Omega = 2 e1234
        let balance = report
            .get("hkt.bundle.strong.curvature_balance.1")
            .unwrap();
        assert_eq!(
            balance.obstruction.as_deref().unwrap(),
            crate::model::print::format_form(
                &Form::monomial(7, &[0, 1, 2, 3], Scalar::from_int(2)),
                &fr
            )
        );
    }

    #[test]
    fn non_invariant_curvature_is_flagged() {
        let (fr, t) = flat_triple();
        // e14 + e23 is I_1-anti-invariant
        let omega = Form::monomial(7, &[0, 3], Scalar::one())
            .add(&Form::monomial(7, &[1, 2], Scalar::one()));
        let report = check_hkt_bundle(&fr, &t, &omega).unwrap();
        assert!(!report.get("hkt.bundle.omega_invariant.1").unwrap().holds);
    }
}
