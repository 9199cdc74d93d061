//! Structures induced on a hypersurface: set one coframe covector to zero and
//! contract against the unit normal. `eta = -f*(i_U F)`, `omega = f* F`; in
//! the SU(3) case additionally `omega2 = -f*(i_U psi_-)`, `omega3 = f*(i_U psi_+)`.
//!
//! Both normal orientations occur in worked examples; `Orientation::Inward`
//! reverses the normal and conjugates the complex volume form, which flips
//! `eta` and `omega3` while leaving `omega1`, `omega2` unchanged.

use crate::form::Form;
use crate::frame::{CoframeAlgebra, VectorField};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::structures::{
    AlmostContactMetric, HermitianStructure, SU2Structure, SU3Structure,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Outward,
    Inward,
}

/// Sub-coframe after deleting the normal covector; the new differentials are
/// the pullbacks of the old ones. `d^2 = 0` is re-checked, and commutation of
/// the pullback with `d` is recorded (it requires `f*(d normal) = 0`).
pub fn hypersurface_frame(
    frame: &CoframeAlgebra,
    normal: usize,
) -> (CoframeAlgebra, Report) {
    let mut report = Report::new("hypersurface.frame");
    let n = frame.dim();
    let names: Vec<String> = (0..n)
        .filter(|&i| i != normal)
        .map(|i| frame.covector_name(i).to_string())
        .collect();
    let mut symbols = frame.symbols.clone();
    // symbol differentials transfer by pullback
    let ids: Vec<_> = symbols.iter().map(|(id, _)| id).collect();
    for id in ids {
        if let Some(dv) = symbols.get(id).d_value.clone() {
            let pulled = dv.widen(n).without_index(normal).restrict_delete(normal);
            symbols.get_mut(id).d_value = Some(pulled);
        }
    }
    let mut sub = CoframeAlgebra::new(names, symbols);
    sub.dt_index = frame.dt_index.and_then(|i| {
        if i == normal {
            None
        } else if i > normal {
            Some(i - 1)
        } else {
            Some(i)
        }
    });
    sub.theta_index = frame.theta_index.and_then(|i| {
        if i == normal {
            None
        } else if i > normal {
            Some(i - 1)
        } else {
            Some(i)
        }
    });
    let mut k = 0;
    for i in 0..n {
        if i == normal {
            continue;
        }
        let pulled = frame
            .differential(i)
            .without_index(normal)
            .restrict_delete(normal);
        sub.set_differential(k, pulled);
        k += 1;
    }
    let normal_closed = frame
        .differential(normal)
        .without_index(normal)
        .is_zero();
    report.push(
        Check::new("hypersurface.normal_closed_pullback", normal_closed).noting(
            "pullback of the normal's differential vanishes; needed for f* to intertwine d",
        ),
    );
    let dsq = sub.check_d_squared();
    report.push(Check::new("hypersurface.subframe_d_squared", dsq.holds()));
    (sub, report)
}

/// Pull a form over the ambient frame back to the sub-coframe.
pub fn pullback_to_subframe(a: &Form, normal: usize) -> Form {
    a.without_index(normal).restrict_delete(normal)
}

fn normal_vector(h: &Matrix, normal: usize, orientation: Orientation) -> Option<VectorField> {
    let hinv = h.inverse()?;
    let n = h.rows();
    let mut u = VectorField::zero(n);
    for i in 0..n {
        u.components[i] = hinv.get(i, normal).clone();
    }
    Some(match orientation {
        Orientation::Outward => u,
        Orientation::Inward => u.neg(),
    })
}

fn restrict_metric(h: &Matrix, normal: usize) -> Matrix {
    let n = h.rows();
    let mut g = Matrix::zero(n - 1, n - 1);
    let map = |i: usize| if i >= normal { i + 1 } else { i };
    for i in 0..(n - 1) {
        for j in 0..(n - 1) {
            g.set(i, j, h.get(map(i), map(j)).clone());
        }
    }
    g
}

/// Shared part of both branches: the induced almost contact data and the
/// hypersurface SKT condition with its contraction-free reformulation.
fn induced_contact_core(
    ambient: &CoframeAlgebra,
    h: &Matrix,
    f: &Form,
    normal: usize,
    orientation: Orientation,
) -> Result<(CoframeAlgebra, AlmostContactMetric, Report), String> {
    let mut report = Report::new("hypersurface.induce");
    let hinv = h
        .inverse()
        .ok_or_else(|| "ambient metric is singular".to_string())?;
    let unit = hinv.get(normal, normal).is_one();
    report.push(Check::new("hypersurface.normal_unit", unit));
    if !unit {
        return Err("normal covector does not have unit norm in the ambient metric".into());
    }
    let (sub, frame_report) = hypersurface_frame(ambient, normal);
    let normal_closed = frame_report
        .get("hypersurface.normal_closed_pullback")
        .map(|c| c.holds)
        .unwrap_or(false);
    report.extend(frame_report);
    let u = normal_vector(h, normal, orientation).unwrap();
    let eta = pullback_to_subframe(&ambient.contract(&u, f), normal).neg();
    let omega = pullback_to_subframe(f, normal);
    let g = restrict_metric(h, normal);
    // I from the pairing: omega = g(., I.)
    let ginv = g
        .inverse()
        .ok_or_else(|| "restricted metric is singular".to_string())?;
    let w = crate::structures::matrix_from_two_form(&omega);
    let i = crate::frame::Endo { mat: ginv.mul(&w) };
    // xi = metric dual of eta
    let nsub = sub.dim();
    let mut eta_vec = vec![Scalar::zero(); nsub];
    for (idx, c) in eta.terms() {
        eta_vec[idx[0] as usize] = c.clone();
    }
    let mut xi = VectorField::zero(nsub);
    for r in 0..nsub {
        let mut acc = Scalar::zero();
        for c in 0..nsub {
            acc = &acc + &(ginv.get(r, c) * &eta_vec[c]);
        }
        xi.components[r] = acc;
    }
    let acs = AlmostContactMetric::new(i, xi, eta, g);
    report.absorb("hypersurface", acs.validate(&sub));
    // SKT condition: d(I d omega - I(f*(i_U dF)) ^ eta) = 0
    let df = ambient.d(f);
    let pulled_contract = pullback_to_subframe(&ambient.contract(&u, &df), normal);
    let domega = sub.d(&acs.omega);
    let main = sub.d(
        &acs.i
            .apply_form(&domega)
            .sub(&acs.i.apply_form(&pulled_contract).wedge(&acs.eta)),
    );
    report.push(Check::obstruction("hypersurface.skt_condition", &main, &sub));
    // reformulation via the Lie derivative: i_U dF = L_U F - d(i_U F)
    let lie = pullback_to_subframe(&ambient.lie_derivative(&u, f), normal);
    let deta = sub.d(&acs.eta);
    let reformulated = sub.d(
        &acs.i
            .apply_form(&domega)
            .sub(&acs.i.apply_form(&lie.add(&deta)).wedge(&acs.eta)),
    );
    report.push(
        Check::obstruction(
            "hypersurface.skt_condition_reformulated",
            &reformulated,
            &sub,
        )
        .assuming("pullback intertwines d (normal closed after pullback)"),
    );
    let mut consistency = Check::new(
        "hypersurface.reformulation_consistency",
        main == reformulated,
    );
    if !normal_closed {
        consistency = consistency
            .noting("normal is not closed after pullback; the identities may legitimately differ")
            .info();
    }
    report.push(consistency);
    report.push(
        Check::obstruction("hypersurface.lie_pullback", &lie, &sub)
            .info()
            .noting("f*(L_U F); vanishes for product-type normals"),
    );
    Ok((sub, acs, report))
}

/// Induce an almost contact metric structure from a Hermitian ambient.
pub fn induce_contact(
    ambient: &CoframeAlgebra,
    her: &HermitianStructure,
    normal: usize,
    orientation: Orientation,
) -> Result<(CoframeAlgebra, AlmostContactMetric, Report), String> {
    induced_contact_core(ambient, &her.h, &her.f, normal, orientation)
}

/// Induce an SU(2)-structure from an SU(3) ambient. The ambient metric is
/// reconstructed from (F, J) via `h = -F(., J.)` pairing.
pub fn induce_su2(
    ambient: &CoframeAlgebra,
    s: &SU3Structure,
    normal: usize,
    orientation: Orientation,
) -> Result<(CoframeAlgebra, SU2Structure, Report), String> {
    let wf = crate::structures::matrix_from_two_form(&s.f);
    let h = wf.mul(&s.j.mat).neg();
    let (sub, acs, mut report) = induced_contact_core(ambient, &h, &s.f, normal, orientation)?;
    let (u, psi_minus_eff) = match orientation {
        Orientation::Outward => (
            normal_vector(&h, normal, Orientation::Outward).unwrap(),
            s.psi_minus.clone(),
        ),
        Orientation::Inward => (
            normal_vector(&h, normal, Orientation::Inward).unwrap(),
            s.psi_minus.neg(),
        ),
    };
    let omega2 = pullback_to_subframe(&ambient.contract(&u, &psi_minus_eff), normal).neg();
    let omega3 = pullback_to_subframe(&ambient.contract(&u, &s.psi_plus), normal);
    let su2 = SU2Structure {
        eta: acs.eta.clone(),
        omega1: acs.omega.clone(),
        omega2,
        omega3,
        g: Some(acs.g.clone()),
    };
    report.absorb(
        "hypersurface",
        crate::structures::validate_su2(&su2, &sub, &|_| None),
    );
    // the descent conditions: closedness of omega2 ^ eta and omega3 ^ eta
    report.push(Check::obstruction(
        "hypersurface.hypo.omega2_eta",
        &sub.d(&su2.omega2.wedge(&su2.eta)),
        &sub,
    ));
    report.push(Check::obstruction(
        "hypersurface.hypo.omega3_eta",
        &sub.d(&su2.omega3.wedge(&su2.eta)),
        &sub,
    ));
    report.absorb("hypersurface", crate::structures::su2_balanced(&su2, &sub));
    Ok((sub, su2, report))
}
