//! Model-language robustness: every rejection carries a source position
//! (checked by truncating real models at many offsets), and classification
//! is invariant under invertible coframe changes.

use coframe_core::frame::change_coframe;
use coframe_core::linalg::Matrix;
use coframe_core::model::fixtures;
use coframe_core::model::parse::parse;
use coframe_core::scalar::Scalar;
use coframe_core::structures::{classify_contact, AlmostContactMetric};

#[test]
fn truncated_models_fail_with_positions() {
    for fixture in fixtures::catalog() {
        let source = fixture.source;
        let step = (source.len() / 23).max(1);
        for cut in (1..source.len()).step_by(step) {
            if !source.is_char_boundary(cut) {
                continue;
            }
            let truncated = &source[..cut];
            match parse(truncated) {
                Ok(ast) => {
                    // a prefix can be syntactically complete; binding may
                    // still fail, which must come with a message
                    if let Err(e) = coframe_core::model::bind::bind(&ast) {
                        assert!(!e.message.is_empty());
                    }
                }
                Err(e) => {
                    assert!(e.span.line >= 1, "{}: missing line", fixture.name);
                    assert!(e.span.col >= 1, "{}: missing column", fixture.name);
                    assert!(!e.message.is_empty());
                }
            }
        }
    }
}

#[test]
fn classification_is_invariant_under_coframe_change() {
    let model = fixtures::load("heisenberg5").unwrap();
    let frame = &model.frame;
    let acs = model.contact("S").unwrap();
    let (before, _) = classify_contact(acs, frame);
    // a shear plus scaling, invertible over the rationals
    let mut m = Matrix::identity(5);
    m.set(0, 0, Scalar::from_int(2));
    m.set(0, 2, Scalar::from_int(1));
    m.set(1, 3, Scalar::from_int(-1));
    let names: Vec<String> = (1..=5).map(|i| format!("f{i}")).collect();
    let change = change_coframe(frame, names, m).unwrap();
    assert!(change.new_frame.check_d_squared().holds());
    let transported = AlmostContactMetric::new(
        change.transport_endo(&acs.i),
        change.transport_vector(&acs.xi),
        change.transport(&acs.eta),
        change.transport_metric(&acs.g),
    );
    assert!(transported.validate(&change.new_frame).holds());
    let (after, _) = classify_contact(&transported, &change.new_frame);
    assert_eq!(before.normal, after.normal);
    assert_eq!(before.omega_closed, after.omega_closed);
    assert_eq!(before.alpha, after.alpha);
    // transported omega agrees with substitution
    assert_eq!(change.transport(&acs.omega), transported.omega);
}

#[test]
fn json_report_schema_fields() {
    let model = fixtures::load("heis3").unwrap();
    let report = model.frame.check_d_squared();
    let json = report.emit_json();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(value.get("command").is_some());
    assert!(value.get("checks").unwrap().as_array().is_some());
    assert!(value.get("version").is_some());
    let first = &value["checks"][0];
    for key in ["name", "holds", "obstruction", "assumptions", "notes"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn content_hash_ignores_whitespace_and_comments() {
    let fixture = fixtures::find("heisenberg5").unwrap();
    let original = coframe_core::model::bind::parse_model(fixture.source).unwrap();
    let noisy = format!(
        "# a comment\n\n{}\n# trailing comment\n",
        fixture.source.replace(" = ", "   =   ")
    );
    let reparsed = coframe_core::model::bind::parse_model(&noisy).unwrap();
    assert_eq!(original.hash, reparsed.hash);
}
