//! Seeded random inputs for the property and cross-validation suites.
//!
//! Frames are generated so that `d^2 = 0` holds by construction: the first
//! block of covectors is closed and the remaining ones get random closed
//! 2-forms over that block. Structures are quasi-Sasakian-style perturbations
//! of the standard contact data.

use crate::form::Form;
use crate::frame::{CoframeAlgebra, Endo, VectorField};
use crate::linalg::Matrix;
use crate::scalar::{Scalar, SymbolTable};
use crate::structures::AlmostContactMetric;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut ChaCha8Rng) -> i64 {
    rng.gen_range(-2..=2)
}

/// Random polynomial scalar in up to `nsyms` symbols, bounded degree.
pub fn random_scalar(rng: &mut ChaCha8Rng, nsyms: u32, degree: u32) -> Scalar {
    use crate::poly::{Monomial, Poly};
    let mut p = Poly::zero();
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let mut m = Monomial::one();
        for s in 0..nsyms {
            let e = rng.gen_range(0..=degree.min(2));
            for _ in 0..e {
                m = m.mul(&Monomial::var(s));
            }
        }
        let c = small_int(rng);
        if c != 0 {
            p = p.add(&Poly::monomial(m, crate::poly::qi(c)));
        }
    }
    let num = p;
    if rng.gen_bool(0.3) {
        // nontrivial denominator: 1 + a monomial square (never zero-ish
        // structurally; structural nonvanishing is all the field needs)
        let s = rng.gen_range(0..nsyms.max(1));
        let den = Poly::one().add(&Poly::var(s).mul(&Poly::var(s)));
        Scalar::new(num, den)
    } else {
        Scalar::from_poly(num)
    }
}

/// Random form of the given degree with small integer coefficients.
pub fn random_form(rng: &mut ChaCha8Rng, dim: usize, degree: usize) -> Form {
    let mut f = Form::zero(dim, degree);
    let subsets = crate::cohomology::k_subsets(dim, degree);
    for idx in subsets {
        if rng.gen_bool(0.4) {
            let c = small_int(rng);
            if c != 0 {
                f.add_term(idx, Scalar::from_int(c));
            }
        }
    }
    f
}

/// A frame whose last `extra` covectors carry random closed 2-forms over the
/// abelian block; Jacobi holds by construction.
pub fn random_two_step_frame(rng: &mut ChaCha8Rng, dim: usize, extra: usize) -> CoframeAlgebra {
    let base = dim - extra;
    let mut frame = CoframeAlgebra::new(
        (1..=dim).map(|i| format!("e{i}")).collect(),
        SymbolTable::new(),
    );
    for k in base..dim {
        let mut d = Form::zero(dim, 2);
        for i in 0..base {
            for j in (i + 1)..base {
                let c = small_int(rng);
                if c != 0 {
                    d.add_term(vec![i as u8, j as u8], Scalar::from_int(c));
                }
            }
        }
        frame.set_differential(k, d);
    }
    debug_assert!(frame.check_d_squared().holds());
    frame
}

/// The standard contact data on a 5-dimensional frame: `I e1 = -e2`,
/// `I e3 = -e4`, `eta = e5`, unit metric.
pub fn standard_contact(dim: usize) -> AlmostContactMetric {
    let mut i = Endo::zero(dim);
    i.set(0, &Form::covector(dim, 1).neg());
    i.set(1, &Form::covector(dim, 0));
    i.set(2, &Form::covector(dim, 3).neg());
    i.set(3, &Form::covector(dim, 2));
    AlmostContactMetric::new(
        i,
        VectorField::frame(dim, dim - 1),
        Form::covector(dim, dim - 1),
        Matrix::identity(dim),
    )
}

/// Contact structure that is sometimes plane-swapped so the sweep also sees
/// non-normal and non-invariant situations.
pub fn random_contact(rng: &mut ChaCha8Rng, dim: usize) -> AlmostContactMetric {
    let mut acs = standard_contact(dim);
    if rng.gen_bool(0.3) {
        // exchange the pairing to (1,3)(2,4); frequently breaks normality
        let mut i = Endo::zero(dim);
        i.set(0, &Form::covector(dim, 2).neg());
        i.set(2, &Form::covector(dim, 0));
        i.set(1, &Form::covector(dim, 3).neg());
        i.set(3, &Form::covector(dim, 1));
        acs = AlmostContactMetric::new(
            i,
            VectorField::frame(dim, dim - 1),
            Form::covector(dim, dim - 1),
            Matrix::identity(dim),
        );
    } else if rng.gen_bool(0.3) {
        // flip one plane; stays pointwise valid
        let mut i = acs.i.clone();
        i.set(2, &Form::covector(dim, 3));
        i.set(3, &Form::covector(dim, 2).neg());
        acs = AlmostContactMetric::new(
            i,
            acs.xi.clone(),
            acs.eta.clone(),
            acs.g.clone(),
        );
    }
    acs
}

/// Random closed 2-form over the abelian block of a two-step frame (all
/// 2-forms in the closed covectors are closed).
pub fn random_closed_two_form(rng: &mut ChaCha8Rng, dim: usize, base: usize) -> Form {
    let mut f = Form::zero(dim, 2);
    for i in 0..base {
        for j in (i + 1)..base {
            let c = small_int(rng);
            if c != 0 {
                f.add_term(vec![i as u8, j as u8], Scalar::from_int(c));
            }
        }
    }
    f
}

/// Random SU(2)-shaped quadruple over a 5-dimensional frame: the local-model
/// triple, occasionally scaled or swapped.
pub fn random_su2(rng: &mut ChaCha8Rng, dim: usize) -> crate::structures::SU2Structure {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let one = Scalar::from_int(sign);
    let o1 = Form::monomial(dim, &[0, 1], one.clone()).add(&Form::monomial(dim, &[2, 3], one.clone()));
    let o2 = Form::monomial(dim, &[0, 2], one.clone()).add(&Form::monomial(dim, &[1, 3], -&one));
    let o3 = Form::monomial(dim, &[0, 3], one.clone()).add(&Form::monomial(dim, &[1, 2], one));
    crate::structures::SU2Structure {
        eta: Form::covector(dim, 4),
        omega1: o1,
        omega2: o2,
        omega3: o3,
        g: Some(Matrix::identity(dim)),
    }
}

/// The seeded reduced-versus-direct sweep shared by the acceptance suite and
/// the fixtures runner: dimension <= 6 total spaces, coefficients in -2..=2.
/// Returns a summary line, or the first mismatch as an error.
pub fn cross_validation_sweep(seed: u64, cases: usize) -> Result<String, String> {
    let mut r = rng(seed);
    let mut ran = 0usize;
    for case in 0..cases {
        let frame = random_two_step_frame(&mut r, 5, 1);
        let acs = random_contact(&mut r, 5);
        let omega = random_closed_two_form(&mut r, 5, 4);
        let mut reports = Vec::new();
        if frame.d(&omega).is_zero() {
            reports.push(
                crate::constructions::check_skt_bundle(&frame, &acs, &omega)
                    .map_err(|e| format!("case {case}: {e}"))?,
            );
        }
        reports.push(crate::constructions::check_skt_product(&frame, &acs));
        reports.push(crate::constructions::check_skt_cone(&frame, &acs));
        if case % 2 == 0 {
            let su2 = random_su2(&mut r, 5);
            let (_, _, rep) = crate::constructions::su3_product_from_su2(&frame, &su2)
                .map_err(|e| format!("case {case}: {e}"))?;
            reports.push(rep);
            let (_, _, rep) = crate::constructions::su3_cone_from_su2(&frame, &su2)
                .map_err(|e| format!("case {case}: {e}"))?;
            reports.push(rep);
        }
        for report in &reports {
            for check in &report.checks {
                if check.name.contains("cross_check") && !check.holds {
                    return Err(format!(
                        "case {case}: cross-validation mismatch at {} ({:?})",
                        check.name, check.notes
                    ));
                }
            }
        }
        ran += 1;
    }
    Ok(format!(
        "{ran} seeded perturbation cases, zero reduced/direct mismatches"
    ))
}
