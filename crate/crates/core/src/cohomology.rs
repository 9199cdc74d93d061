//! Chevalley-Eilenberg cohomology and Lie-algebra invariants for frames with
//! parameter-constant structure coefficients: unimodularity, solvability,
//! nilpotency, center, derived and lower central series.
//!
//! Parameterized frames are handled generically: ranks are computed over the
//! rational-function field and the report lists denominator polynomials of
//! pivots as the non-generic locus not covered.

use crate::form::{Form, Idx};
use crate::frame::CoframeAlgebra;
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// Strictly increasing k-subsets of 0..n in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Idx> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Idx = (0..k as u8).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < (n - k + i) as u8 {
                cur[i] += 1;
                for j in (i + 1)..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn basis_form(frame: &CoframeAlgebra, idx: &Idx) -> Form {
    Form::monomial(
        frame.dim(),
        &idx.iter().map(|&i| i as usize).collect::<Vec<_>>(),
        Scalar::one(),
    )
}

/// Matrix of `d_k : Lambda^k -> Lambda^{k+1}` in the monomial bases.
pub fn d_matrix(frame: &CoframeAlgebra, k: usize) -> (Matrix, Vec<Idx>, Vec<Idx>) {
    let n = frame.dim();
    let dom = k_subsets(n, k);
    let cod = k_subsets(n, k + 1);
    let mut m = Matrix::zero(cod.len(), dom.len());
    for (col, idx) in dom.iter().enumerate() {
        let d = frame.d(&basis_form(frame, idx));
        for (target, c) in d.terms() {
            let row = cod.binary_search(target).expect("monomial in codomain basis");
            m.set(row, col, c.clone());
        }
    }
    (m, dom, cod)
}

#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub degree: usize,
    pub betti: usize,
    pub representatives: Vec<Form>,
}

/// `ker d_k / im d_{k-1}` by exact linear algebra; representatives are the
/// reduced-echelon coset leaders of the kernel modulo the image, so output is
/// deterministic.
pub fn cohomology(frame: &CoframeAlgebra, k: usize) -> Result<(CohomologyBasis, Report), String> {
    for (_, decl) in frame.symbols.iter() {
        if decl.d_value.is_some() || decl.dt_value.is_some() {
            return Err("cohomology requires parameter-constant coefficients".into());
        }
    }
    let n = frame.dim();
    let mut report = Report::new("cohomology");
    let (dk, dom, _) = d_matrix(frame, k);
    let kernel = dk.nullspace();
    let image_rank;
    let mut stack_rows: Vec<Vec<Scalar>> = Vec::new();
    if k == 0 {
        image_rank = 0;
    } else {
        let (dkm1, _, _) = d_matrix(frame, k - 1);
        // image of d_{k-1} inside Lambda^k: columns of dkm1
        let mut img_rows = Vec::new();
        for col in 0..dkm1.cols() {
            let row: Vec<Scalar> = (0..dkm1.rows()).map(|r| dkm1.get(r, col).clone()).collect();
            img_rows.push(row);
        }
        let mut img = Matrix::zero(img_rows.len().max(1), dom.len());
        for (r, row) in img_rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                img.set(r, c, v.clone());
            }
        }
        let (img_rref, img_pivots) = img.rref();
        image_rank = img_pivots.len();
        for r in 0..image_rank {
            stack_rows.push((0..dom.len()).map(|c| img_rref.get(r, c).clone()).collect());
        }
    }
    let betti = kernel.len() - image_rank;
    // coset leaders: reduce kernel vectors against the image rows, keep a
    // maximal independent set, re-echelon for determinism
    let mut all = Matrix::zero(stack_rows.len() + kernel.len(), dom.len());
    for (r, row) in stack_rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            all.set(r, c, v.clone());
        }
    }
    for (r, vec) in kernel.iter().enumerate() {
        for (c, v) in vec.iter().enumerate() {
            all.set(stack_rows.len() + r, c, v.clone());
        }
    }
    let (_all_rref, all_pivots) = all.rref();
    assert_eq!(all_pivots.len(), image_rank + betti, "rank bookkeeping");
    let mut representatives = Vec::new();
    // rows beyond the image span are the coset leaders; but rref mixes them,
    // so instead select kernel vectors whose pivot columns are not image
    // pivots and echelon those alone
    let image_matrix = {
        let mut m = Matrix::zero(stack_rows.len().max(1), dom.len());
        for (r, row) in stack_rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    };
    let (_, image_pivots) = image_matrix.rref();
    let mut chosen: Vec<Vec<Scalar>> = Vec::new();
    for vec in &kernel {
        let mut candidate = chosen.clone();
        candidate.push(vec.clone());
        if independent_mod(&image_matrix, &image_pivots, &candidate, dom.len()) == candidate.len() {
            chosen.push(vec.clone());
        }
        if chosen.len() == betti {
            break;
        }
    }
    let mut chosen_m = Matrix::zero(chosen.len().max(1), dom.len());
    for (r, row) in chosen.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            chosen_m.set(r, c, v.clone());
        }
    }
    let (chosen_rref, chosen_pivots) = chosen_m.rref();
    for r in 0..chosen_pivots.len() {
        let mut f = Form::zero(n, k);
        for (c, idx) in dom.iter().enumerate() {
            let v = chosen_rref.get(r, c).clone();
            if !v.is_zero() {
                f.add_term(idx.clone(), v);
            }
        }
        representatives.push(f);
    }
    for rep in &representatives {
        debug_assert!(frame.d(rep).is_zero());
    }
    report.push(
        Check::new(format!("cohomology.h{k}.betti"), true)
            .info()
            .noting(format!("b_{k} = {betti}")),
    );
    report.push(
        Check::new(format!("cohomology.h{k}.representatives"), true)
            .info()
            .noting(format!(
                "[{}]",
                representatives
                    .iter()
                    .map(|f| crate::model::print::format_form(f, frame))
                    .collect::<Vec<_>>()
                    .join(", ")
            )),
    );
    Ok((
        CohomologyBasis {
            degree: k,
            betti,
            representatives,
        },
        report,
    ))
}

/// How many of the candidate rows stay independent modulo the image rows.
fn independent_mod(
    image: &Matrix,
    image_pivots: &[usize],
    candidates: &[Vec<Scalar>],
    width: usize,
) -> usize {
    let mut m = Matrix::zero(image_pivots.len() + candidates.len(), width);
    let (img_rref, _) = image.rref();
    for r in 0..image_pivots.len() {
        for c in 0..width {
            m.set(r, c, img_rref.get(r, c).clone());
        }
    }
    for (r, row) in candidates.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            m.set(image_pivots.len() + r, c, v.clone());
        }
    }
    m.rank() - image_pivots.len()
}

pub fn betti_numbers(frame: &CoframeAlgebra) -> Result<Vec<usize>, String> {
    (0..=frame.dim())
        .map(|k| cohomology(frame, k).map(|(b, _)| b.betti))
        .collect()
}

#[derive(Clone, Debug)]
pub struct AlgebraProps {
    pub ad_traces: Vec<Scalar>,
    pub unimodular: bool,
    pub derived_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub center_dim: usize,
    pub center_basis: Vec<Vec<Scalar>>,
    pub derived_abelian: bool,
}

/// Derived series, lower central series, center, ad-traces, unimodularity,
/// solvable/nilpotent flags from the frame brackets.
pub fn algebra_props(frame: &CoframeAlgebra) -> (AlgebraProps, Report) {
    let n = frame.dim();
    let mut report = Report::new("props");
    // ad traces: tr(ad_{e_i}) = sum_k [e_i, e_k]^k
    let mut ad_traces = Vec::new();
    for i in 0..n {
        let mut tr = Scalar::zero();
        for k in 0..n {
            tr = &tr + &frame.bracket_frame(i, k).components[k];
        }
        ad_traces.push(tr);
    }
    let unimodular = ad_traces.iter().all(|t| t.is_zero());
    // spans are row spaces of bracket matrices
    let full: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        })
        .collect();
    let bracket_span = |a: &[Vec<Scalar>], b: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
        let mut rows = Vec::new();
        for u in a {
            for v in b {
                let mut w = vec![Scalar::zero(); n];
                for (i, ui) in u.iter().enumerate() {
                    if ui.is_zero() {
                        continue;
                    }
                    for (j, vj) in v.iter().enumerate() {
                        if vj.is_zero() {
                            continue;
                        }
                        let br = frame.bracket_frame(i, j);
                        for k in 0..n {
                            w[k] = &w[k] + &(&(ui * vj) * &br.components[k]);
                        }
                    }
                }
                rows.push(w);
            }
        }
        span_basis(&rows, n)
    };
    // derived series g, [g,g], [[g,g],[g,g]], ...
    let mut derived_dims = vec![n];
    let mut current = full.clone();
    loop {
        let next = bracket_span(&current, &current);
        let dim = next.len();
        if dim == *derived_dims.last().unwrap() {
            break;
        }
        derived_dims.push(dim);
        current = next;
        if dim == 0 {
            break;
        }
    }
    let solvable = *derived_dims.last().unwrap() == 0;
    let derived = bracket_span(&full, &full);
    let derived_abelian = bracket_span(&derived, &derived).is_empty();
    // lower central series g, [g,g], [g,[g,g]], ...
    let mut lower_central_dims = vec![n];
    let mut lc = full.clone();
    loop {
        let next = bracket_span(&full, &lc);
        let dim = next.len();
        if dim == *lower_central_dims.last().unwrap() {
            break;
        }
        lower_central_dims.push(dim);
        lc = next;
        if dim == 0 {
            break;
        }
    }
    let nilpotent = *lower_central_dims.last().unwrap() == 0;
    // center: X with [X, e_j] = 0 for all j
    let mut center_matrix = Matrix::zero(n * n, n);
    for j in 0..n {
        for k in 0..n {
            for i in 0..n {
                // coefficient of e_k in [e_i, e_j]
                center_matrix.set(j * n + k, i, frame.bracket_frame(i, j).components[k].clone());
            }
        }
    }
    let center_basis = center_matrix.nullspace();
    let center_dim = center_basis.len();
    report.push(
        Check::new("props.unimodular", true).info().noting(format!(
            "unimodular: {unimodular}; ad-traces [{}]",
            ad_traces
                .iter()
                .map(|t| crate::model::print::format_scalar(t, &frame.symbols))
                .collect::<Vec<_>>()
                .join(", ")
        )),
    );
    report.push(Check::new("props.series", true).info().noting(format!(
        "derived dims {derived_dims:?}; lower central dims {lower_central_dims:?}; solvable {solvable}; nilpotent {nilpotent}"
    )));
    report.push(
        Check::new("props.center", true)
            .info()
            .noting(format!("center dimension {center_dim}")),
    );
    (
        AlgebraProps {
            ad_traces,
            unimodular,
            derived_dims,
            lower_central_dims,
            solvable,
            nilpotent,
            center_dim,
            center_basis,
            derived_abelian,
        },
        report,
    )
}

fn span_basis(rows: &[Vec<Scalar>], width: usize) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::zero(rows.len(), width);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    let (rref, pivots) = m.rref();
    (0..pivots.len())
        .map(|r| (0..width).map(|c| rref.get(r, c).clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::SymbolTable;

    fn abelian(n: usize) -> CoframeAlgebra {
        CoframeAlgebra::new((1..=n).map(|i| format!("e{i}")).collect(), SymbolTable::new())
    }

    #[test]
    fn abelian_betti_numbers_are_binomials() {
        let fr = abelian(5);
        let b = betti_numbers(&fr).unwrap();
        assert_eq!(b, vec![1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn heisenberg5_cohomology_and_euler_characteristic() {
        let mut fr = abelian(5);
        fr.set_differential(
            4,
            Form::monomial(5, &[0, 1], Scalar::one()).add(&Form::monomial(5, &[2, 3], Scalar::one())),
        );
        let b = betti_numbers(&fr).unwrap();
        assert_eq!(b[0], 1);
        assert_eq!(b[1], 4);
        // Euler characteristic vanishes
        let chi: i64 = b
            .iter()
            .enumerate()
            .map(|(k, &bk)| if k % 2 == 0 { bk as i64 } else { -(bk as i64) })
            .sum();
        assert_eq!(chi, 0);
        // representatives are closed and independent modulo exact forms
        let (h2, _) = cohomology(&fr, 2).unwrap();
        for rep in &h2.representatives {
            assert!(fr.d(rep).is_zero());
        }
    }

    #[test]
    fn heisenberg5_props() {
        let mut fr = abelian(5);
        fr.set_differential(
            4,
            Form::monomial(5, &[0, 1], Scalar::one()).add(&Form::monomial(5, &[2, 3], Scalar::one())),
        );
        let (props, _) = algebra_props(&fr);
        assert!(props.unimodular);
        assert!(props.nilpotent);
        assert_eq!(props.lower_central_dims, vec![5, 1, 0]);
        assert_eq!(props.center_dim, 1);
        // center is spanned by e5
        assert!(props.center_basis[0][4].is_one());
    }
}

/// Rank of the given closed forms modulo exact forms (used to certify that a
/// claimed representative set really is a cohomology basis).
pub fn rank_modulo_exact(
    frame: &CoframeAlgebra,
    k: usize,
    candidates: &[Form],
) -> Result<usize, String> {
    if k == 0 {
        return Ok(candidates.len().min(1));
    }
    for f in candidates {
        if !frame.d(f).is_zero() {
            return Err("candidate form is not closed".into());
        }
    }
    let (dkm1, dom_km1, dom_k) = {
        let (m, dom, cod) = d_matrix(frame, k - 1);
        (m, dom, cod)
    };
    let _ = dom_km1;
    let rows = dkm1.cols() + candidates.len();
    let mut m = Matrix::zero(rows, dom_k.len());
    for col in 0..dkm1.cols() {
        for r in 0..dkm1.rows() {
            m.set(col, r, dkm1.get(r, col).clone());
        }
    }
    for (i, f) in candidates.iter().enumerate() {
        for (idx, c) in f.terms() {
            let pos = dom_k.binary_search(idx).map_err(|_| "degree mismatch")?;
            m.set(dkm1.cols() + i, pos, c.clone());
        }
    }
    let image_rank = {
        let mut im = Matrix::zero(dkm1.cols().max(1), dom_k.len());
        for col in 0..dkm1.cols() {
            for r in 0..dkm1.rows() {
                im.set(col, r, dkm1.get(r, col).clone());
            }
        }
        im.rank()
    };
    Ok(m.rank() - image_rank)
}
