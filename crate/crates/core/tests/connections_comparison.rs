//! The connection comparison identities: on a circle bundle over a
//! quasi-Sasakian base whose curvature balances the contact form, horizontal
//! Bismut products equal the characteristic-connection products on the base;
//! on a product the two connections agree on all base directions.

use coframe_core::connections::{bismut, contact_connection};
use coframe_core::constructions::{extend_s1_bundle, hypersurface_frame, product_with_line};
use coframe_core::frame::Endo;
use coframe_core::form::Form;
use coframe_core::linalg::Matrix;
use coframe_core::model::fixtures;
use coframe_core::frame::VectorField;
use coframe_core::scalar::Scalar;
use coframe_core::structures::AlmostContactMetric;

#[test]
fn heisenberg_bundle_bismut_restricts_to_the_contact_connection() {
    let model = fixtures::load("heisenberg5").unwrap();
    let frame = &model.frame;
    let acs = model.contact("S").unwrap();
    let omega = model.form("Omega").unwrap();
    let (ext, _) = extend_s1_bundle(frame, acs, omega, "th").unwrap();
    let (bconn, _, breport) = bismut(&ext.hermitian, &ext.frame).unwrap();
    assert!(breport.holds(), "{}", breport.emit_text());
    let (cconn, _, creport) = contact_connection(acs, frame).unwrap();
    assert!(creport.holds(), "{}", creport.emit_text());
    // horizontal frame triples: all indices below the theta direction
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                assert_eq!(
                    bconn.gamma(i, j, k),
                    cconn.gamma(i, j, k),
                    "triple ({i},{j},{k})"
                );
            }
        }
    }
}

#[test]
fn k3_orthonormal_base_contact_connection_matches_bundle_bismut() {
    // the 5-dimensional base of the orthonormal total space, obtained by
    // deleting the connection covector
    let model = fixtures::load("sasakian_k3_bundle").unwrap();
    let aframe = &model.frame;
    let her = model.hermitian("H").unwrap();
    let theta = aframe.covector_index("a6").unwrap();
    let (base, frame_report) = hypersurface_frame(aframe, theta);
    assert!(frame_report
        .get("hypersurface.subframe_d_squared")
        .unwrap()
        .holds);
    // contact data on the base: I pairs (a1, a2) and (a3, a4), eta = a5
    let mut i = Endo::zero(5);
    i.set(0, &Form::covector(5, 1));
    i.set(1, &Form::covector(5, 0).neg());
    i.set(2, &Form::covector(5, 3));
    i.set(3, &Form::covector(5, 2).neg());
    let acs = AlmostContactMetric::new(
        i,
        VectorField::frame(5, 4),
        Form::covector(5, 4),
        Matrix::identity(5),
    );
    assert!(acs.validate(&base).holds());
    let (cconn, torsion, creport) = contact_connection(&acs, &base).unwrap();
    assert!(creport.holds(), "{}", creport.emit_text());
    // torsion 3-form equals d eta ^ eta
    assert_eq!(torsion, base.d(&acs.eta).wedge(&acs.eta));
    let (bconn, _, _) = bismut(her, aframe).unwrap();
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                assert_eq!(
                    bconn.gamma(i, j, k),
                    cconn.gamma(i, j, k),
                    "triple ({i},{j},{k})"
                );
            }
        }
    }
}

#[test]
fn product_bismut_coincides_with_the_contact_connection() {
    for name in ["solvable5", "solvable5_param"] {
        let model = fixtures::load(name).unwrap();
        let frame = &model.frame;
        let acs = model.contact("S").unwrap();
        let product = product_with_line(frame, acs);
        let (bconn, _, _) = bismut(&product.hermitian, &product.frame).unwrap();
        let (cconn, _, _) = contact_connection(acs, frame).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    assert_eq!(
                        bconn.gamma(i, j, k),
                        cconn.gamma(i, j, k),
                        "{name} triple ({i},{j},{k})"
                    );
                }
            }
        }
    }
}

#[test]
fn flat_torus_bismut_is_levi_civita_with_zero_torsion() {
    let model = fixtures::load("flat_torus6").unwrap();
    let her = model.hermitian("H").unwrap();
    let (conn, torsion, report) = bismut(her, &model.frame).unwrap();
    assert!(report.holds());
    assert!(torsion.is_zero());
    let lc = coframe_core::connections::levi_civita(&model.frame, &her.h).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(conn.forms[i][j], lc.forms[i][j]);
        }
    }
    let _ = Scalar::one();
}
