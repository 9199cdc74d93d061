//! Command-line front end: runs checks and constructions over `.geo` model
//! files or named fixtures, emitting machine-readable or tabular reports.
//!
//! Exit codes: 0 all requested checks hold; 1 some check fails (the report is
//! still emitted); 2 input or usage error; 3 internal reduced/direct
//! cross-validation mismatch.

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coframe_core::constructions::{
    assemble_su3_from_family, check_evolution, check_skt_bundle, check_skt_cone,
    check_skt_product, extend_s1_bundle, induce_contact, induce_su2, su3_cone_from_su2,
    Orientation,
};
use coframe_core::model::bind::{parse_form_in_model, parse_model, Model};
use coframe_core::model::fixtures;
use coframe_core::report::Report;
use coframe_core::structures;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "coframe",
    version,
    about = "Exact SKT/HKT structure verification on coframe algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Extra sample values NAME=P/Q for sign checks (repeatable).
    #[arg(long, global = true, value_name = "NAME=RAT")]
    sample: Vec<String>,
    /// Seed for the randomized cross-validation sweep.
    #[arg(long, global = true, default_value_t = 0x5eed_c0f7)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Input {
    /// Path to a .geo model file, or the name of a built-in fixture.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Pointwise and differential checks on a declared structure.
    Check {
        #[command(flatten)]
        input: Input,
        /// Which condition to check.
        #[arg(long, value_enum)]
        what: What,
        /// Structure name (defaults to the only structure of matching kind).
        #[arg(long)]
        structure: Option<String>,
    },
    /// Circle-bundle extension: SKT or HKT criteria over the base.
    Bundle {
        #[command(flatten)]
        input: Input,
        /// Curvature 2-form (name or expression, e.g. "e1^e3 + e2^e4").
        #[arg(long)]
        omega: String,
        #[arg(long, value_enum, default_value_t = BundleCheck::Skt)]
        check: BundleCheck,
        /// Print the extended model in model syntax after the report.
        #[arg(long)]
        emit_extension: bool,
        #[arg(long)]
        structure: Option<String>,
    },
    /// Product with a line: SKT or HKT criteria.
    Product {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = BundleCheck::Skt)]
        check: BundleCheck,
        #[arg(long)]
        structure: Option<String>,
    },
    /// Riemannian cone: SKT criterion or the SU(3) assembly.
    Cone {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = ConeCheck::Skt)]
        check: ConeCheck,
        #[arg(long)]
        structure: Option<String>,
    },
    /// Structure induced on the hypersurface transverse to a covector.
    Induce {
        #[command(flatten)]
        input: Input,
        /// The normal covector name.
        #[arg(long)]
        normal: String,
        /// Reverse the normal (conjugating the volume form).
        #[arg(long)]
        inward: bool,
        #[arg(long)]
        structure: Option<String>,
    },
    /// Evolution equations of a declared family.
    Evolve {
        #[command(flatten)]
        input: Input,
        /// Also assemble the product SU(3)-structure and verify it.
        #[arg(long)]
        assemble: bool,
        #[arg(long)]
        structure: Option<String>,
    },
    /// Metric connections on an orthonormal frame.
    Connection {
        #[command(flatten)]
        input: Input,
        #[arg(long = "type", value_enum)]
        kind: ConnectionKind,
        /// Also print curvature 2-forms.
        #[arg(long)]
        curvature: bool,
        /// Comma-separated forms (names or expressions) to test for parallelism.
        #[arg(long)]
        parallel: Option<String>,
        /// Compute the curvature span (holonomy estimate).
        #[arg(long)]
        holonomy_span: bool,
        #[arg(long)]
        structure: Option<String>,
    },
    /// Chevalley-Eilenberg cohomology in one degree.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'k')]
        degree: usize,
    },
    /// Lie algebra invariants: series, center, traces, unimodularity.
    Props {
        #[command(flatten)]
        input: Input,
    },
    /// List fixtures, or run every fixture against its manifest.
    Fixtures {
        #[arg(long)]
        run_all: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Normal,
    Skt,
    QuasiSasakian,
    Classify,
    Su2,
    Su3,
    Balanced,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum BundleCheck {
    Skt,
    Hkt,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ConeCheck {
    Skt,
    Su3,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnectionKind {
    LeviCivita,
    Bismut,
    Contact,
}

fn load_model(input: &str) -> Result<Model> {
    if let Ok(text) = std::fs::read_to_string(input) {
        return parse_model(&text).map_err(|e| anyhow!("{input}: {e}"));
    }
    if let Some(fixture) = fixtures::find(input) {
        return parse_model(fixture.source).map_err(|e| anyhow!("fixture {input}: {e}"));
    }
    Err(anyhow!(
        "input '{input}' is neither a readable file nor a known fixture"
    ))
}

fn apply_samples(model: &mut Model, samples: &[String]) -> Result<()> {
    for s in samples {
        let (name, value) = s
            .split_once('=')
            .ok_or_else(|| anyhow!("--sample expects NAME=RAT, got '{s}'"))?;
        let id = model
            .frame
            .symbols
            .lookup(name.trim())
            .ok_or_else(|| anyhow!("unknown symbol '{name}' in --sample"))?;
        let value = value.trim();
        let (n, d) = match value.split_once('/') {
            Some((n, d)) => (n.parse::<i64>()?, d.parse::<i64>()?),
            None => (value.parse::<i64>()?, 1),
        };
        model
            .samples
            .push((id, num_rational::BigRational::new(n.into(), d.into())));
    }
    Ok(())
}

fn pick<'a, T>(items: &'a [(String, T)], requested: &Option<String>, kind: &str) -> Result<&'a T> {
    match requested {
        Some(name) => items
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| anyhow!("no {kind} named '{name}' in the model")),
        None => match items.len() {
            0 => Err(anyhow!("model declares no {kind}")),
            1 => Ok(&items[0].1),
            _ => Err(anyhow!(
                "model declares several {kind}s; pick one with --structure"
            )),
        },
    }
}

fn finish(reports: Vec<Report>, model: Option<&Model>, format: Format) -> ExitCode {
    let mut all_hold = true;
    let mut cross_mismatch = false;
    for mut report in reports {
        if let Some(m) = model {
            report.model = m.hash.clone();
        }
        if !report.holds() {
            all_hold = false;
        }
        for check in &report.checks {
            if check.name.contains("cross_check") && !check.holds {
                cross_mismatch = true;
            }
        }
        match format {
            Format::Text => print!("{}", report.emit_text()),
            Format::Json => println!("{}", report.emit_json()),
        }
    }
    if cross_mismatch {
        ExitCode::from(3)
    } else if all_hold {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    let format = cli.format;
    match cli.command {
        Command::Check {
            input,
            what,
            structure,
        } => {
            let mut model = load_model(&input.input)?;
            apply_samples(&mut model, &cli.sample)?;
            let frame = model.frame.clone();
            let mut reports = vec![frame.check_d_squared()];
            match what {
                What::Normal => {
                    let acs = pick(&model.contacts, &structure, "contact structure")?;
                    reports.push(acs.validate(&frame));
                    reports.push(structures::check_normal(acs, &frame));
                }
                What::Classify | What::QuasiSasakian => {
                    let acs = pick(&model.contacts, &structure, "contact structure")?;
                    reports.push(acs.validate(&frame));
                    let (_, report) = structures::classify_contact(acs, &frame);
                    reports.push(report);
                }
                What::Skt => {
                    let her = pick(&model.hermitians, &structure, "hermitian structure")?;
                    reports.push(her.validate(&frame));
                    reports.push(structures::check_skt(her, &frame));
                }
                What::Su2 => {
                    let su2 = pick(&model.su2s, &structure, "su2 structure")?;
                    let samples = model.sample_fn();
                    reports.push(structures::validate_su2(su2, &frame, &samples));
                    reports.push(structures::su2_balanced(su2, &frame));
                }
                What::Su3 => {
                    let su3 = pick(&model.su3s, &structure, "su3 structure")?;
                    reports.push(structures::validate_su3(su3, &frame));
                    reports.push(structures::check_skt_su3(su3, &frame));
                }
                What::Balanced => {
                    let her = pick(&model.hermitians, &structure, "hermitian structure")?;
                    reports.push(structures::check_balanced(&her.f, &frame, frame.dim() / 2));
                }
            }
            Ok(finish(reports, Some(&model), format))
        }
        Command::Bundle {
            input,
            omega,
            check,
            emit_extension,
            structure,
        } => {
            let mut model = load_model(&input.input)?;
            apply_samples(&mut model, &cli.sample)?;
            let frame = model.frame.clone();
            let omega_form =
                parse_form_in_model(&model, &omega).map_err(|e| anyhow!("--omega: {e}"))?;
            let mut reports = Vec::new();
            let mut emitted_extension: Option<String> = None;
            match check {
                BundleCheck::Skt => {
                    let acs = pick(&model.contacts, &structure, "contact structure")?;
                    reports
                        .push(check_skt_bundle(&frame, acs, &omega_form).map_err(|e| anyhow!(e))?);
                    if emit_extension {
                        let (ext, _) = extend_s1_bundle(&frame, acs, &omega_form, "th")
                            .map_err(|e| anyhow!(e))?;
                        emitted_extension = Some(emit_extension_model(&model, &ext)?);
                    }
                }
                BundleCheck::Hkt => {
                    let triple = pick(&model.triples, &structure, "triple")?;
                    reports.push(
                        coframe_core::hkt::check_hkt_bundle(&frame, triple, &omega_form)
                            .map_err(|e| anyhow!(e))?,
                    );
                }
            }
            let code = finish(reports, Some(&model), format);
            if let Some(emitted) = emitted_extension {
                println!("{emitted}");
            }
            Ok(code)
        }
        Command::Product {
            input,
            check,
            structure,
        } => {
            let mut model = load_model(&input.input)?;
            apply_samples(&mut model, &cli.sample)?;
            let frame = model.frame.clone();
            let reports = match check {
                BundleCheck::Skt => {
                    let acs = pick(&model.contacts, &structure, "contact structure")?;
                    vec![check_skt_product(&frame, acs)]
                }
                BundleCheck::Hkt => {
                    let triple = pick(&model.triples, &structure, "triple")?;
                    vec![coframe_core::hkt::check_hkt_product(&frame, triple)]
                }
            };
            Ok(finish(reports, Some(&model), format))
        }
        Command::Cone {
            input,
            check,
            structure,
        } => {
            let mut model = load_model(&input.input)?;
            apply_samples(&mut model, &cli.sample)?;
            let frame = model.frame.clone();
            let reports = match check {
                ConeCheck::Skt => {
                    let acs = pick(&model.contacts, &structure, "contact structure")?;
                    vec![check_skt_cone(&frame, acs)]
                }
                ConeCheck::Su3 => {
                    let su2 = pick(&model.su2s, &structure, "su2 structure")?;
                    let (_, _, report) = su3_cone_from_su2(&frame, su2).map_err(|e| anyhow!(e))?;
                    vec![report]
                }
            };
            Ok(finish(reports, Some(&model), format))
        }
        Command::Induce {
            input,
            normal,
            inward,
            structure,
        } => {
            let mut model = load_model(&input.input)?;
            apply_samples(&mut model, &cli.sample)?;
            let frame = model.frame.clone();
            let idx = frame
                .covector_index(&normal)
                .ok_or_else(|| anyhow!("unknown covector '{normal}'"))?;
            let orientation = if inward {
                Orientation::Inward
            } else {
                Orientation::Outward
            };
            let report = if !model.su3s.is_empty() {
                let su3 = pick(&model.su3s, &structure, "su3 structure")?;
                let (_, _, report) =
                    induce_su2(&frame, su3, idx, orientation).map_err(|e| anyhow!(e))?;
                report
            } else {
                let her = pick(&model.hermitians, &structure, "hermitian structure")?;
                let (_, _, report) =
                    induce_contact(&frame, her, idx, orientation).map_err(|e| anyhow!(e))?;
                report
            };
            Ok(finish(vec![report], Some(&model), format))
        }
        Command::Evolve {
            input,
            assemble,
            structure,
        } => {
            let mut model = load_model(&input.input)?;
            apply_samples(&mut model, &cli.sample)?;
            let frame = model.frame.clone();
            let family = pick(&model.families, &structure, "family")?;
            let samples = model.sample_fn();
            let mut reports = vec![check_evolution(&frame, family, &samples)];
            if assemble {
                let (_, _, report) =
                    assemble_su3_from_family(&frame, family).map_err(|e| anyhow!(e))?;
                reports.push(report);
            }
            Ok(finish(reports, Some(&model), format))
        }
        Command::Connection {
            input,
            kind,
            curvature: want_curvature,
            parallel,
            holonomy_span,
            structure,
        } => {
            let mut model = load_model(&input.input)?;
            apply_samples(&mut model, &cli.sample)?;
            let frame = model.frame.clone();
            use coframe_core::connections as conn;
            let (forms, mut reports) = match kind {
                ConnectionKind::LeviCivita => {
                    let g = pick(&model.metrics, &structure, "metric")?;
                    let lc = conn::levi_civita(&frame, g).map_err(|e| anyhow!(e))?;
                    let mut report = Report::new("connection.levi_civita");
                    report.push(coframe_core::report::Check::new(
                        "connection.levi_civita.torsion_free",
                        lc.torsion_two_forms(&frame).iter().all(|t| t.is_zero()),
                    ));
                    (lc, vec![report])
                }
                ConnectionKind::Bismut => {
                    let her = pick(&model.hermitians, &structure, "hermitian structure")?;
                    let (forms, _, report) = conn::bismut(her, &frame).map_err(|e| anyhow!(e))?;
                    (forms, vec![report])
                }
                ConnectionKind::Contact => {
                    let acs = pick(&model.contacts, &structure, "contact structure")?;
                    let (forms, _, report) =
                        conn::contact_connection(acs, &frame).map_err(|e| anyhow!(e))?;
                    (forms, vec![report])
                }
            };
            let curv = conn::curvature(&forms, &frame);
            if want_curvature {
                let mut report = Report::new("connection.curvature");
                for i in 0..frame.dim() {
                    for j in (i + 1)..frame.dim() {
                        if !curv.forms[i][j].is_zero() {
                            report.push(
                                coframe_core::report::Check::new(
                                    format!("connection.curvature.{}_{}", i + 1, j + 1),
                                    true,
                                )
                                .info()
                                .noting(coframe_core::model::print::format_form(
                                    &curv.forms[i][j],
                                    &frame,
                                )),
                            );
                        }
                    }
                }
                reports.push(report);
            }
            if let Some(parallel) = parallel {
                let mut items = Vec::new();
                for part in parallel.split(',') {
                    let f = parse_form_in_model(&model, part.trim())
                        .map_err(|e| anyhow!("--parallel: {e}"))?;
                    items.push((part.trim().to_string(), f));
                }
                reports.push(conn::covariant_derivative_report(&forms, &frame, &items));
            }
            if holonomy_span {
                let (_, report) = conn::curvature_span(&curv, &forms, &frame);
                reports.push(report);
            }
            Ok(finish(reports, Some(&model), format))
        }
        Command::Cohomology { input, degree } => {
            let model = load_model(&input.input)?;
            let (_, report) = coframe_core::cohomology::cohomology(&model.frame, degree)
                .map_err(|e| anyhow!(e))?;
            Ok(finish(vec![report], Some(&model), format))
        }
        Command::Props { input } => {
            let model = load_model(&input.input)?;
            let (_, report) = coframe_core::cohomology::algebra_props(&model.frame);
            Ok(finish(vec![report], Some(&model), format))
        }
        Command::Fixtures { run_all } => {
            if !run_all {
                for fixture in fixtures::catalog() {
                    println!("{}", fixture.name);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let mut all_pass = true;
            for fixture in fixtures::catalog() {
                let (reports, outcomes) =
                    fixtures::run_manifest(&fixture).map_err(|e| anyhow!(e))?;
                let passed = outcomes.iter().filter(|o| o.passed()).count();
                let ok = passed == outcomes.len();
                if !ok {
                    all_pass = false;
                }
                println!(
                    "{:<22} {:>2}/{} manifest checks {}",
                    fixture.name,
                    passed,
                    outcomes.len(),
                    if ok { "pass" } else { "FAIL" }
                );
                if matches!(format, Format::Json) {
                    for report in reports {
                        println!("{}", report.emit_json());
                    }
                } else {
                    for outcome in outcomes.iter().filter(|o| !o.passed()) {
                        println!(
                            "    {} expected {} got {:?} ({})",
                            outcome.check, outcome.expected, outcome.actual, outcome.basis
                        );
                    }
                }
            }
            match coframe_core::testkit::cross_validation_sweep(cli.seed, 50) {
                Ok(summary) => println!("cross-validation sweep: {summary}"),
                Err(e) => {
                    println!("cross-validation sweep: MISMATCH: {e}");
                    return Ok(ExitCode::from(3));
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Print a bundle extension as a standalone model so it can be re-parsed and
/// re-verified.
fn emit_extension_model(
    base: &Model,
    ext: &coframe_core::constructions::BundleExtension,
) -> Result<String> {
    for i in 0..ext.hermitian.h.rows() {
        for j in 0..ext.hermitian.h.cols() {
            if i != j && !ext.hermitian.h.get(i, j).is_zero() {
                return Err(anyhow!(
                    "extension metric is not diagonal; cannot emit in model syntax"
                ));
            }
        }
    }
    let mut model = base.clone();
    model.frame = ext.frame.clone();
    model.forms = Vec::new();
    model.endos = vec![("J".to_string(), ext.hermitian.j.clone())];
    model.vectors = Vec::new();
    model.metrics = vec![("h".to_string(), ext.hermitian.h.clone())];
    model.contacts = Vec::new();
    model.hermitians = vec![("H".to_string(), ext.hermitian.clone())];
    model.su2s = Vec::new();
    model.su3s = Vec::new();
    model.triples = Vec::new();
    model.families = Vec::new();
    model.structure_decls = vec![coframe_core::model::bind::StructureDecl {
        kind: "hermitian".to_string(),
        name: "H".to_string(),
        bindings: vec![
            ("J".to_string(), "J".to_string()),
            ("h".to_string(), "h".to_string()),
        ],
    }];
    Ok(coframe_core::model::print::print_model(&model))
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
