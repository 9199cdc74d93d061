//! The fixture catalog: worked examples as model files, each with a battery
//! of checks and an expected-verdict manifest. The manifest is the ground
//! truth used by the acceptance suite and by `fixtures --run-all`.

use crate::model::bind::{parse_form_in_model, parse_model, Model};
use crate::report::Report;

#[derive(Clone, Copy, Debug)]
pub struct Expectation {
    /// Name of a check somewhere in the fixture's battery reports.
    pub check: &'static str,
    pub holds: bool,
    /// Why this value is expected (defining identity, direct expansion, ...).
    pub basis: &'static str,
}

#[derive(Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub expect: &'static [Expectation],
}

macro_rules! fixture {
    ($name:literal, $file:literal, $expect:expr) => {
        Fixture {
            name: $name,
            source: include_str!(concat!("../../fixtures/", $file)),
            expect: $expect,
        }
    };
}

/// Every fixture with its manifest.
pub fn catalog() -> Vec<Fixture> {
    const T: bool = true;
    const F: bool = false;
    vec![
        fixture!("solvable5", "solvable5.geo", &[
            Expectation { check: "contact.normal.tensor", holds: T, basis: "quasi-Sasakian by direct check" },
            Expectation { check: "contact.classify.omega_closed", holds: T, basis: "quasi-Sasakian by direct check" },
            Expectation { check: "skt.product.cross_check", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "skt.product.skt", holds: T, basis: "product carries an SKT structure" },
            Expectation { check: "su3.product.rate.omega2", holds: F, basis: "rate equations fail on this algebra" },
            Expectation { check: "su3.product.cross_check.dpsi", holds: T, basis: "reduced/direct agreement" },
        ]),
        fixture!("solvable5_param", "solvable5_param.geo", &[
            Expectation { check: "contact.normal.tensor", holds: T, basis: "quasi-Sasakian by direct check" },
            Expectation { check: "skt.product.deta_square", holds: T, basis: "d eta ^ d eta = 0" },
            Expectation { check: "skt.product.skt", holds: T, basis: "product carries an SKT structure" },
            Expectation { check: "skt.product.cross_check", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "su3.product.rate.omega2", holds: T, basis: "d omega2 = -3 omega3 ^ eta" },
            Expectation { check: "su3.product.rate.omega3", holds: T, basis: "d omega3 = 3 omega2 ^ eta" },
            Expectation { check: "su3.product.skt", holds: T, basis: "product SU(3)-structure is SKT" },
            Expectation { check: "skt.cone.skt", holds: F, basis: "quasi-Sasakian non-Sasakian base" },
            Expectation { check: "skt.cone.cross_check", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "skt.cone.quasi_sasakian_consistency", holds: T, basis: "criterion matches d eta = -2 omega test" },
        ]),
        fixture!("nonsolvable5_param", "nonsolvable5_param.geo", &[
            Expectation { check: "contact.normal.tensor", holds: T, basis: "quasi-Sasakian by direct check" },
            Expectation { check: "skt.product.deta_square", holds: T, basis: "d eta ^ d eta = 0" },
            Expectation { check: "skt.product.skt", holds: T, basis: "product carries an SKT structure" },
            Expectation { check: "skt.product.cross_check", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "su3.product.rate.omega2", holds: T, basis: "d omega2 = -3 omega3 ^ eta" },
            Expectation { check: "su3.product.skt", holds: T, basis: "product SU(3)-structure is SKT" },
        ]),
        fixture!("heisenberg5", "heisenberg5.geo", &[
            Expectation { check: "contact.normal.tensor", holds: T, basis: "Sasakian-type structure" },
            Expectation { check: "skt.bundle.deta_square_identity", holds: T, basis: "d eta ^ d eta = -Omega ^ Omega" },
            Expectation { check: "skt.bundle.skt", holds: T, basis: "total space is SKT" },
            Expectation { check: "skt.bundle.cross_check", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "skt.product.skt", holds: F, basis: "d eta ^ d eta != 0 blocks the trivial product" },
            Expectation { check: "skt.product.cross_check", holds: T, basis: "reduced/direct agreement" },
        ]),
        fixture!("sasakian_k3", "sasakian_k3.geo", &[
            Expectation { check: "contact.omega_antisymmetric", holds: F, basis: "mismatched metric variant is incompatible with the endomorphism" },
            Expectation { check: "contact.normal.tensor", holds: T, basis: "Sasakian structure on the corrected metric" },
            Expectation { check: "skt.bundle.deta_square_identity", holds: T, basis: "d eta ^ d eta = 2 l m e1234 = -Omega ^ Omega" },
            Expectation { check: "skt.bundle.skt", holds: T, basis: "total space is SKT" },
            Expectation { check: "skt.bundle.cross_check", holds: T, basis: "reduced/direct agreement" },
        ]),
        fixture!("sasakian_k3_bundle", "sasakian_k3_bundle.geo", &[
            Expectation { check: "skt.djdf_closed", holds: T, basis: "SKT on the orthonormal coframe" },
            Expectation { check: "kaehler.f_closed", holds: F, basis: "SKT but not Kaehler" },
            Expectation { check: "balanced.f_power_closed", holds: F, basis: "SKT and balanced exclude each other here" },
            Expectation { check: "connection.bismut.j_parallel", holds: T, basis: "Hermitian connection" },
            Expectation { check: "connection.bismut.h_parallel", holds: T, basis: "metric connection" },
        ]),
        fixture!("cone_family_abc", "cone_family_abc.geo", &[
            Expectation { check: "contact.normal.tensor", holds: T, basis: "normal for all parameters with a != 0" },
            Expectation { check: "skt.cone.base_equation", holds: T, basis: "cone criterion holds symbolically in (a, b, c)" },
            Expectation { check: "skt.cone.skt", holds: T, basis: "cones are SKT" },
            Expectation { check: "skt.cone.cross_check", holds: T, basis: "reduced/direct agreement" },
        ]),
        fixture!("nilpotent6_su3", "nilpotent6_su3.geo", &[
            Expectation { check: "su3.type.j_psi_plus", holds: T, basis: "volume form is compatible with J" },
            Expectation { check: "su3.volume_normalization", holds: T, basis: "unit-norm volume form" },
            Expectation { check: "su3.skt.dpsi_plus", holds: F, basis: "direct expansion: d psi_+ = e1256" },
            Expectation { check: "hypersurface.skt_condition", holds: T, basis: "induced structure satisfies the descent condition" },
            Expectation { check: "hypersurface.hypo.omega2_eta", holds: T, basis: "omega2 ^ eta closed" },
            Expectation { check: "hypersurface.hypo.omega3_eta", holds: T, basis: "omega3 ^ eta closed" },
            Expectation { check: "su2.balanced.omega1_square_closed", holds: T, basis: "balanced SU(2) data" },
        ]),
        fixture!("evolved_su2_family", "evolved_su2_family.geo", &[
            Expectation { check: "evolution.all_equations", holds: T, basis: "family satisfies every evolution equation" },
            Expectation { check: "evolution.cross_check.dpsi", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "evolution.cross_check.djdf", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "evolution.assemble.su3.skt.dpsi_plus", holds: T, basis: "assembled volume form closes" },
            Expectation { check: "evolution.assemble.su3.skt.djdf_closed", holds: T, basis: "assembled structure is SKT" },
        ]),
        fixture!("evolved_su2_family_sqrt", "evolved_su2_family_sqrt.geo", &[
            Expectation { check: "evolution.all_equations", holds: F, basis: "square-root scale breaks the flow equations" },
            Expectation { check: "evolution.cross_check.dpsi", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "evolution.cross_check.djdf", holds: T, basis: "reduced/direct agreement" },
        ]),
        fixture!("su2_r4_triple", "su2_r4_triple.geo", &[
            Expectation { check: "hkt.triple.compose.12to3", holds: T, basis: "quaternionic compatibility" },
            Expectation { check: "hkt.triple.normal.1", holds: T, basis: "all three structures normal" },
            Expectation { check: "hkt.product.case_a", holds: T, basis: "fundamental forms closed, d eta ^ eta all equal" },
            Expectation { check: "hkt.product.hkt", holds: T, basis: "product carries an HKT structure" },
            Expectation { check: "hkt.product.strong", holds: T, basis: "common torsion form is closed" },
            Expectation { check: "hkt.product.cross_check", holds: T, basis: "reduced/direct agreement" },
            Expectation { check: "hkt.product.cross_check.strong", holds: T, basis: "reduced/direct agreement" },
        ]),
        fixture!("flat_torus6", "flat_torus6.geo", &[
            Expectation { check: "skt.djdf_closed", holds: T, basis: "flat torus is Kaehler" },
            Expectation { check: "kaehler.f_closed", holds: T, basis: "flat torus is Kaehler" },
            Expectation { check: "su3.skt.dpsi_plus", holds: T, basis: "constant volume form" },
            Expectation { check: "balanced.f_power_closed", holds: T, basis: "flat torus is balanced" },
        ]),
        fixture!("abelian_r5", "abelian_r5.geo", &[
            Expectation { check: "contact.normal.tensor", holds: T, basis: "abelian frame" },
            Expectation { check: "su2.volume_match.omega2", holds: T, basis: "local model identities" },
            Expectation { check: "su3.product.rate.omega2", holds: F, basis: "all-closed data cannot satisfy the rate equations" },
        ]),
        fixture!("heis3", "heis3.geo", &[
            Expectation { check: "contact.normal.tensor", holds: T, basis: "Heisenberg contact structure" },
            Expectation { check: "skt.cone.skt", holds: F, basis: "d eta = -omega is not Sasakian scaling" },
            Expectation { check: "skt.cone.dim3_sasakian_consistency", holds: T, basis: "3-dimensional criterion equals the Sasakian classification" },
            Expectation { check: "skt.cone.cross_check", holds: T, basis: "reduced/direct agreement" },
        ]),
        fixture!("heis3_sasaki", "heis3_sasaki.geo", &[
            Expectation { check: "contact.normal.tensor", holds: T, basis: "Sasakian structure" },
            Expectation { check: "skt.cone.skt", holds: T, basis: "Kaehler cone over a Sasakian base" },
            Expectation { check: "skt.cone.dim3_sasakian_consistency", holds: T, basis: "3-dimensional criterion equals the Sasakian classification" },
        ]),
    ]
}

pub fn find(name: &str) -> Option<Fixture> {
    catalog().into_iter().find(|f| f.name == name)
}

pub fn load(name: &str) -> Result<Model, String> {
    let fixture = find(name).ok_or_else(|| format!("unknown fixture '{name}'"))?;
    parse_model(fixture.source).map_err(|e| format!("fixture '{name}' failed to bind: {e}"))
}

/// Run the fixture's battery of checks; returns every report produced.
pub fn run_battery(name: &str, model: &Model) -> Vec<Report> {
    let frame = &model.frame;
    let samples = model.sample_fn();
    let mut reports = vec![frame.check_d_squared()];
    // contact structures: validity and classification
    for (sname, acs) in &model.contacts {
        let mut r = acs.validate(frame);
        r.command = format!("validate contact {sname}");
        reports.push(r);
    }
    // batteries keyed by what the fixture declares
    if let Some(acs) = model.contact("S") {
        let (_, classify) = crate::structures::classify_contact(acs, frame);
        reports.push(classify);
    }
    match name {
        "solvable5" | "solvable5_param" | "nonsolvable5_param" => {
            let acs = model.contact("S").unwrap();
            reports.push(crate::constructions::check_skt_product(frame, acs));
            if name != "solvable5" {
                reports.push(crate::constructions::check_skt_cone(frame, acs));
            }
            let su2 = model.su2("Q").unwrap();
            if let Ok((_, _, r)) = crate::constructions::su3_product_from_su2(frame, su2) {
                reports.push(r);
            }
            if let Ok((_, r)) = crate::cohomology::cohomology(frame, 2) {
                reports.push(r);
            }
            let (_, props) = crate::cohomology::algebra_props(frame);
            reports.push(props);
        }
        "heisenberg5" => {
            let acs = model.contact("S").unwrap();
            let omega = model.form("Omega").unwrap();
            if let Ok(r) = crate::constructions::check_skt_bundle(frame, acs, omega) {
                reports.push(r);
            }
            reports.push(crate::constructions::check_skt_product(frame, acs));
        }
        "sasakian_k3" => {
            let acs = model.contact("S").unwrap();
            let omega = model.form("Omega").unwrap();
            if let Ok(r) = crate::constructions::check_skt_bundle(frame, acs, omega) {
                reports.push(r);
            }
        }
        "sasakian_k3_bundle" => {
            let her = model.hermitian("H").unwrap();
            reports.push(crate::structures::check_skt(her, frame));
            reports.push(crate::structures::check_balanced(&her.f, frame, 3));
            if let Ok((_, _, r)) = crate::connections::bismut(her, frame) {
                reports.push(r);
            }
        }
        "cone_family_abc" => {
            let acs = model.contact("S").unwrap();
            reports.push(crate::constructions::check_skt_cone(frame, acs));
        }
        "nilpotent6_su3" => {
            let su3 = model.su3("X").unwrap();
            reports.push(crate::structures::validate_su3(su3, frame));
            reports.push(crate::structures::check_skt_su3(su3, frame));
            let normal = frame.covector_index("e6").unwrap();
            if let Ok((sub, su2, r)) = crate::constructions::induce_su2(
                frame,
                su3,
                normal,
                crate::constructions::Orientation::Inward,
            ) {
                reports.push(r);
                reports.push(crate::structures::su2_balanced(&su2, &sub));
            }
        }
        "evolved_su2_family" | "evolved_su2_family_sqrt" => {
            let family = model.family("FAM").unwrap();
            reports.push(crate::constructions::check_evolution(frame, family, &samples));
            if let Ok((_, _, r)) = crate::constructions::assemble_su3_from_family(frame, family) {
                reports.push(r);
            }
        }
        "su2_r4_triple" => {
            let triple = model.triple("T").unwrap();
            reports.push(crate::hkt::validate_triple(triple, frame));
            reports.push(crate::hkt::check_hkt_product(frame, triple));
        }
        "flat_torus6" => {
            let her = model.hermitian("H").unwrap();
            reports.push(crate::structures::check_skt(her, frame));
            reports.push(crate::structures::check_balanced(&her.f, frame, 3));
            let su3 = model.su3("FLAT").unwrap();
            reports.push(crate::structures::validate_su3(su3, frame));
            reports.push(crate::structures::check_skt_su3(su3, frame));
        }
        "abelian_r5" => {
            let su2 = model.su2("Q").unwrap();
            reports.push(crate::structures::validate_su2(su2, frame, &samples));
            if let Ok((_, _, r)) = crate::constructions::su3_product_from_su2(frame, su2) {
                reports.push(r);
            }
        }
        "heis3" | "heis3_sasaki" => {
            let acs = model.contact("S").unwrap();
            reports.push(crate::constructions::check_skt_cone(frame, acs));
        }
        _ => {}
    }
    reports
}

#[derive(Clone, Debug)]
pub struct ManifestOutcome {
    pub check: String,
    pub expected: bool,
    pub actual: Option<bool>,
    pub basis: &'static str,
}

impl ManifestOutcome {
    pub fn passed(&self) -> bool {
        self.actual == Some(self.expected)
    }
}

/// Run a fixture against its manifest.
pub fn run_manifest(fixture: &Fixture) -> Result<(Vec<Report>, Vec<ManifestOutcome>), String> {
    let model = parse_model(fixture.source)
        .map_err(|e| format!("fixture '{}' failed to bind: {e}", fixture.name))?;
    let reports = run_battery(fixture.name, &model);
    let mut outcomes = Vec::new();
    for expectation in fixture.expect {
        let mut actual = None;
        for report in &reports {
            if let Some(check) = report.get(expectation.check) {
                actual = Some(check.holds);
                break;
            }
        }
        outcomes.push(ManifestOutcome {
            check: expectation.check.to_string(),
            expected: expectation.holds,
            actual,
            basis: expectation.basis,
        });
    }
    Ok((reports, outcomes))
}

/// Convenience wrapper used by tests: parse a form against a fixture model.
pub fn fixture_form(model: &Model, src: &str) -> crate::form::Form {
    parse_form_in_model(model, src).expect("form expression")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_at_least_twelve_entries_and_all_bind() {
        let cat = catalog();
        assert!(cat.len() >= 12, "only {} fixtures", cat.len());
        for fixture in &cat {
            let model = parse_model(fixture.source)
                .unwrap_or_else(|e| panic!("{} failed to bind: {e}", fixture.name));
            assert!(model.frame.check_d_squared().holds(), "{}", fixture.name);
        }
    }

    #[test]
    fn print_parse_roundtrip_preserves_content_hash() {
        for fixture in catalog() {
            let model = parse_model(fixture.source).unwrap();
            let printed = crate::model::print::print_model(&model);
            let reparsed = parse_model(&printed)
                .unwrap_or_else(|e| panic!("{} reprint failed to bind: {e}\n{printed}", fixture.name));
            assert_eq!(model.hash, reparsed.hash, "{}:\n{}", fixture.name, printed);
        }
    }

    #[test]
    fn manifests_pass() {
        for fixture in catalog() {
            let (_, outcomes) = run_manifest(&fixture).unwrap();
            for outcome in outcomes {
                assert!(
                    outcome.passed(),
                    "{}: check {} expected {} got {:?} ({})",
                    fixture.name,
                    outcome.check,
                    outcome.expected,
                    outcome.actual,
                    outcome.basis
                );
            }
        }
    }
}
