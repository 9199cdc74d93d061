//! Coframe algebras: a finite coframe with declared structure equations, plus
//! the exterior operations over it (differential, contraction, endomorphism
//! action, Lie derivative, Hodge star, pullback, coframe change, brackets).
//!
//! For constant coefficients this is a Lie algebra presented through its dual;
//! `check_d_squared` is then exactly the Jacobi identity.

use crate::form::{Form, Idx};
use crate::linalg::Matrix;
use crate::poly::{Q, SymId};
use crate::report::{Check, Report};
use crate::scalar::{Scalar, SymbolTable};
use std::fmt;

/// Distinguished covector marks used by the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Dt,
    Theta,
}

#[derive(Clone)]
pub struct CoframeAlgebra {
    covectors: Vec<String>,
    /// differentials[i] = d(e^i), a 2-form
    differentials: Vec<Form>,
    pub symbols: SymbolTable,
    pub dt_index: Option<usize>,
    pub theta_index: Option<usize>,
}

impl fmt::Debug for CoframeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoframeAlgebra{:?}", self.covectors)
    }
}

impl CoframeAlgebra {
    pub fn new(covectors: Vec<String>, symbols: SymbolTable) -> CoframeAlgebra {
        let n = covectors.len();
        CoframeAlgebra {
            covectors,
            differentials: (0..n).map(|_| Form::zero(n, 2)).collect(),
            symbols,
            dt_index: None,
            theta_index: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.covectors.len()
    }

    pub fn covector_name(&self, i: usize) -> &str {
        &self.covectors[i]
    }

    pub fn covector_names(&self) -> &[String] {
        &self.covectors
    }

    pub fn covector_index(&self, name: &str) -> Option<usize> {
        self.covectors.iter().position(|c| c == name)
    }

    pub fn set_differential(&mut self, i: usize, d: Form) {
        assert_eq!(d.dim(), self.dim());
        assert!(d.degree() == 2 || d.is_zero());
        self.differentials[i] = if d.is_zero() {
            Form::zero(self.dim(), 2)
        } else {
            d
        };
    }

    pub fn differential(&self, i: usize) -> &Form {
        &self.differentials[i]
    }

    pub fn covector(&self, i: usize) -> Form {
        Form::covector(self.dim(), i)
    }

    /// Append a covector (returns its index); its differential starts at zero
    /// and existing differentials are widened.
    pub fn extend_with_covector(&mut self, name: &str) -> usize {
        let n = self.dim() + 1;
        self.covectors.push(name.to_string());
        for d in self.differentials.iter_mut() {
            *d = d.widen(n);
        }
        self.differentials.push(Form::zero(n, 2));
        n - 1
    }

    /// d of a scalar: sum of partial derivatives against declared symbol
    /// differentials. Parameters are d-closed.
    pub fn scalar_d(&self, s: &Scalar) -> Form {
        let mut out = Form::zero(self.dim(), 1);
        for sym in s.symbols() {
            if let Some(dv) = &self.symbols.get(sym).d_value {
                out = out.add(&dv.widen(self.dim()).scale(&s.derivative(sym)));
            }
        }
        out
    }

    /// Exterior derivative: antiderivation honoring both the structure
    /// equations and declared symbol differentials.
    pub fn d(&self, a: &Form) -> Form {
        assert_eq!(a.dim(), self.dim(), "form over a different coframe");
        let n = self.dim();
        let mut out = Form::zero(n, a.degree() + 1);
        for (idx, c) in a.terms() {
            // d(coeff) ^ e^I
            let dc = self.scalar_d(c);
            if !dc.is_zero() {
                let mono = Form::monomial(n, &idx.iter().map(|&i| i as usize).collect::<Vec<_>>(), Scalar::one());
                out = out.add(&dc.wedge(&mono));
            }
            // coeff * sum_p (-1)^{p-1} e^{i1..} ^ d(e^{ip}) ^ e^{..ik}
            for (p, &ip) in idx.iter().enumerate() {
                let d_ip = &self.differentials[ip as usize];
                if d_ip.is_zero() {
                    continue;
                }
                let prefix: Vec<usize> = idx[..p].iter().map(|&i| i as usize).collect();
                let suffix: Vec<usize> = idx[p + 1..].iter().map(|&i| i as usize).collect();
                let mut piece = Form::monomial(n, &prefix, c.clone()).wedge(d_ip);
                piece = piece.wedge(&Form::monomial(n, &suffix, Scalar::one()));
                if p % 2 == 1 {
                    piece = piece.neg();
                }
                out = out.add(&piece);
            }
        }
        out
    }

    /// d(d e^i) for every covector and d(d s) for every symbol with a declared
    /// differential; holds iff all vanish. For constant coefficients this is
    /// the Jacobi identity.
    pub fn check_d_squared(&self) -> Report {
        let mut report = Report::new("frame.d_squared");
        for i in 0..self.dim() {
            let dd = self.d(&self.differentials[i]);
            report.push(Check::obstruction(
                format!("frame.d_squared.{}", self.covectors[i]),
                &dd,
                self,
            ));
        }
        for (id, decl) in self.symbols.iter() {
            if let Some(dv) = &decl.d_value {
                let dd = self.d(&dv.widen(self.dim()));
                report.push(Check::obstruction(
                    format!("frame.d_squared.symbol.{}", self.symbols.name(id)),
                    &dd,
                    self,
                ));
            }
        }
        report
    }

    /// Frame brackets from the structure equations:
    /// `[e_i, e_j] = -sum_k (d e^k)(e_i, e_j) e_k`.
    pub fn bracket_frame(&self, i: usize, j: usize) -> VectorField {
        let n = self.dim();
        let mut comps = vec![Scalar::zero(); n];
        for k in 0..n {
            let c = two_form_pair(&self.differentials[k], i, j);
            if !c.is_zero() {
                comps[k] = -&c;
            }
        }
        VectorField { components: comps }
    }

    /// Bracket of general vector fields, with the Leibniz correction
    /// `[fU, V] = f[U, V] - (df(V)) U` applied componentwise.
    pub fn bracket(&self, u: &VectorField, v: &VectorField) -> VectorField {
        let n = self.dim();
        let mut out = VectorField::zero(n);
        for i in 0..n {
            if u.components[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v.components[j].is_zero() {
                    continue;
                }
                let fb = self.bracket_frame(i, j);
                out = out.add(&fb.scale(&(&u.components[i] * &v.components[j])));
            }
        }
        // derivative terms: U(v_j) e_j - V(u_i) e_i
        for j in 0..n {
            let dv = self.scalar_d(&v.components[j]);
            let term = pair_one_form(&dv, u);
            out.components[j] = &out.components[j] + &term;
        }
        for i in 0..n {
            let du = self.scalar_d(&u.components[i]);
            let term = pair_one_form(&du, v);
            out.components[i] = &out.components[i] - &term;
        }
        out
    }

    /// Interior product (degree -1 antiderivation under the determinant
    /// convention).
    pub fn contract(&self, x: &VectorField, a: &Form) -> Form {
        assert_eq!(a.dim(), self.dim());
        let mut out = Form::zero(self.dim(), a.degree().saturating_sub(1));
        for (i, c) in x.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&a.contract_index(i).scale(c));
        }
        out
    }

    /// Cartan formula: `L_X = i_X d + d i_X`.
    pub fn lie_derivative(&self, x: &VectorField, a: &Form) -> Form {
        let da = self.d(a);
        let part1 = self.contract(x, &da);
        let part2 = self.d(&self.contract(x, a));
        part1.add(&part2)
    }

    /// Coefficientwise t-derivative, coframe held fixed.
    pub fn partial_t(&self, a: &Form) -> Form {
        a.map_coefficients(&|c| self.symbols.scalar_dt(c))
    }

    /// Hodge star in the declared-orthonormal case with the natural
    /// orientation `e^1 ^ ... ^ e^n`.
    pub fn hodge_star(&self, a: &Form) -> Form {
        let n = self.dim();
        let k = a.degree();
        let mut out = Form::zero(n, n - k);
        for (idx, c) in a.terms() {
            let complement: Idx = (0..n as u8).filter(|i| !idx.contains(i)).collect();
            // sign of the permutation (idx, complement) relative to (1..n)
            let mut inversions = 0usize;
            for (pos, &i) in idx.iter().enumerate() {
                // entries of the complement smaller than i appear after i
                let smaller_after = complement.iter().filter(|&&cj| cj < i).count();
                inversions += smaller_after;
                let _ = pos;
            }
            let c = if inversions % 2 == 0 { c.clone() } else { -c };
            out.add_term(complement, c);
        }
        out
    }

    /// Hypersurface pullback of a single form: set the named covector to zero.
    pub fn pullback_set_zero(&self, a: &Form, normal: usize) -> Form {
        a.without_index(normal)
    }
}

fn two_form_pair(f: &Form, i: usize, j: usize) -> Scalar {
    if i == j {
        return Scalar::zero();
    }
    let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
    let c = f.coefficient(&[a as u8, b as u8]);
    if sign < 0 {
        -&c
    } else {
        c
    }
}

fn pair_one_form(f: &Form, x: &VectorField) -> Scalar {
    let mut out = Scalar::zero();
    for (idx, c) in f.terms() {
        let i = idx[0] as usize;
        out = &out + &(c * &x.components[i]);
    }
    out
}

/// A vector field described by the values the coframe covectors take on it.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    pub components: Vec<Scalar>,
}

impl VectorField {
    pub fn zero(dim: usize) -> VectorField {
        VectorField {
            components: vec![Scalar::zero(); dim],
        }
    }

    pub fn frame(dim: usize, i: usize) -> VectorField {
        let mut v = VectorField::zero(dim);
        v.components[i] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> VectorField {
        VectorField {
            components: self.components.iter().map(|c| c * s).collect(),
        }
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            components: self.components.iter().map(|c| -c).collect(),
        }
    }

    /// Pair a 1-form with this field.
    pub fn pair(&self, f: &Form) -> Scalar {
        assert_eq!(f.degree(), 1);
        pair_one_form(f, self)
    }

    pub fn widen(&self, new_dim: usize) -> VectorField {
        let mut components = self.components.clone();
        components.resize(new_dim, Scalar::zero());
        VectorField { components }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{:?}*e_{}", c, i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An endomorphism stored by its action on covectors: row `i` expands
/// `T(e^i) = sum_j mat[i][j] e^j`, i.e. `(T e^i)(X) = e^i(T X)`.
/// The action on vectors is the transpose: `T e_j = sum_i mat[i][j] e_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Endo {
    pub mat: Matrix,
}

impl Endo {
    pub fn zero(dim: usize) -> Endo {
        Endo {
            mat: Matrix::zero(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Endo {
        Endo {
            mat: Matrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn set(&mut self, covector: usize, image: &Form) {
        assert_eq!(image.degree(), 1);
        for j in 0..self.dim() {
            self.mat.set(covector, j, Scalar::zero());
        }
        for (idx, c) in image.terms() {
            self.mat.set(covector, idx[0] as usize, c.clone());
        }
    }

    /// Image of a covector as a 1-form.
    pub fn covector_image(&self, i: usize) -> Form {
        let n = self.dim();
        let mut f = Form::zero(n, 1);
        for j in 0..n {
            f.add_term(vec![j as u8], self.mat.get(i, j).clone());
        }
        f
    }

    /// Image of a frame vector under the transpose action.
    pub fn vector_image(&self, j: usize) -> VectorField {
        let n = self.dim();
        let mut v = VectorField::zero(n);
        for i in 0..n {
            v.components[i] = self.mat.get(i, j).clone();
        }
        v
    }

    pub fn apply_vector(&self, x: &VectorField) -> VectorField {
        let n = self.dim();
        let mut out = VectorField::zero(n);
        for j in 0..n {
            if x.components[j].is_zero() {
                continue;
            }
            out = out.add(&self.vector_image(j).scale(&x.components[j]));
        }
        out
    }

    /// Slotwise action on forms: `(T a)(X_1, ..., X_r) = a(T X_1, ..., T X_r)`,
    /// implemented covector-by-covector on decomposable terms. Not invertible
    /// for an almost contact `I` (it kills the contact covector).
    pub fn apply_form(&self, a: &Form) -> Form {
        let n = self.dim();
        let mut out = Form::zero(n, a.degree());
        for (idx, c) in a.terms() {
            let mut piece = Form::scalar(n, c.clone());
            for &i in idx {
                piece = piece.wedge(&self.covector_image(i as usize));
                if piece.is_zero() {
                    break;
                }
            }
            out = out.add(&piece);
        }
        out
    }

    /// Composite acting on vectors as `self` after `other`. The stored
    /// covector-action matrix doubles as the vector-action operator matrix
    /// (column j holds the components of the image of `e_j`), so composition
    /// is the plain matrix product.
    pub fn compose(&self, other: &Endo) -> Endo {
        Endo {
            mat: self.mat.mul(&other.mat),
        }
    }

    pub fn add(&self, other: &Endo) -> Endo {
        Endo {
            mat: self.mat.add(&other.mat),
        }
    }

    pub fn sub(&self, other: &Endo) -> Endo {
        Endo {
            mat: self.mat.sub(&other.mat),
        }
    }

    pub fn neg(&self) -> Endo {
        Endo {
            mat: self.mat.neg(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// `eta (x) xi` as an endomorphism: `X -> eta(X) xi`.
    pub fn tensor(eta: &Form, xi: &VectorField) -> Endo {
        assert_eq!(eta.degree(), 1);
        let n = eta.dim();
        let mut mat = Matrix::zero(n, n);
        for r in 0..n {
            // (T e^r)(e_s) = eta(e_s) e^r(xi)
            let xr = xi.components[r].clone();
            if xr.is_zero() {
                continue;
            }
            for (idx, c) in eta.terms() {
                mat.set(r, idx[0] as usize, &xr * c);
            }
        }
        Endo { mat }
    }

    /// Nijenhuis torsion `[T, T](e_i, e_j)` as vector fields, Leibniz-corrected
    /// for non-constant components.
    pub fn nijenhuis(&self, frame: &CoframeAlgebra) -> Vec<Vec<VectorField>> {
        let n = self.dim();
        let mut out = vec![vec![VectorField::zero(n); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let ei = VectorField::frame(n, i);
                let ej = VectorField::frame(n, j);
                let ti = self.vector_image(i);
                let tj = self.vector_image(j);
                // T^2 [e_i, e_j] + [T e_i, T e_j] - T[T e_i, e_j] - T[e_i, T e_j]
                let b = frame.bracket_frame(i, j);
                let term1 = self.apply_vector(&self.apply_vector(&b));
                let term2 = frame.bracket(&ti, &tj);
                let term3 = self.apply_vector(&frame.bracket(&ti, &ej));
                let term4 = self.apply_vector(&frame.bracket(&ei, &tj));
                let nij = term1.add(&term2).sub(&term3).sub(&term4);
                out[j][i] = nij.neg();
                out[i][j] = nij;
            }
        }
        out
    }
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo{:?}", self.mat)
    }
}

/// Change of coframe: `alpha^i = sum_j m[i][j] e^j` with `m` invertible over
/// the scalar field. Returns the new algebra; `transport` re-expresses forms.
pub struct CoframeChange {
    pub new_frame: CoframeAlgebra,
    /// images of the OLD covectors in the new coframe: e^j = sum_k inv[j][k] alpha^k
    inverse: Matrix,
    matrix: Matrix,
}

impl CoframeChange {
    pub fn transport(&self, a: &Form) -> Form {
        let n = self.new_frame.dim();
        let mut out = Form::zero(n, a.degree());
        for (idx, c) in a.terms() {
            let mut piece = Form::scalar(n, c.clone());
            for &j in idx {
                let mut img = Form::zero(n, 1);
                for k in 0..n {
                    img.add_term(vec![k as u8], self.inverse.get(j as usize, k).clone());
                }
                piece = piece.wedge(&img);
                if piece.is_zero() {
                    break;
                }
            }
            out = out.add(&piece);
        }
        out
    }

    /// Transport an endomorphism (covector action conjugation).
    pub fn transport_endo(&self, t: &Endo) -> Endo {
        Endo {
            mat: self.matrix.mul(&t.mat).mul(&self.inverse),
        }
    }

    /// Transport a metric given by its frame-vector Gram matrix.
    pub fn transport_metric(&self, g: &Matrix) -> Matrix {
        // new frame vectors: X~_a = sum_j inv[j][a] e_j
        self.inverse.transpose().mul(&g.mul(&self.inverse))
    }

    pub fn transport_vector(&self, x: &VectorField) -> VectorField {
        let n = self.new_frame.dim();
        let mut out = VectorField::zero(n);
        for a in 0..n {
            let mut acc = Scalar::zero();
            for j in 0..n {
                acc = &acc + &(self.matrix.get(a, j) * &x.components[j]);
            }
            out.components[a] = acc;
        }
        out
    }
}

/// Build the coframe change; errors on a singular matrix.
pub fn change_coframe(
    frame: &CoframeAlgebra,
    names: Vec<String>,
    matrix: Matrix,
) -> Result<CoframeChange, String> {
    let n = frame.dim();
    assert_eq!(matrix.rows(), n);
    assert_eq!(matrix.cols(), n);
    let inverse = matrix
        .inverse()
        .ok_or_else(|| "coframe change matrix is singular".to_string())?;
    let mut new_frame = CoframeAlgebra::new(names, frame.symbols.clone());
    new_frame.dt_index = frame.dt_index;
    new_frame.theta_index = frame.theta_index;
    // transport symbol d-values as 1-forms
    let mut change = CoframeChange {
        new_frame,
        inverse,
        matrix: matrix.clone(),
    };
    for i in 0..n {
        // d(alpha^i) = sum_j d(m[i][j]) ^ e^j + m[i][j] de^j, transported
        let mut d_alpha = Form::zero(n, 2);
        for j in 0..n {
            let c = matrix.get(i, j);
            if c.is_zero() {
                continue;
            }
            let dc = frame.scalar_d(c);
            if !dc.is_zero() {
                d_alpha = d_alpha.add(&dc.wedge(&frame.covector(j)));
            }
            d_alpha = d_alpha.add(&frame.differential(j).scale(c));
        }
        let transported = change.transport(&d_alpha);
        change.new_frame.set_differential(i, transported);
    }
    let mut symbols = change.new_frame.symbols.clone();
    for (id, decl) in frame.symbols.iter() {
        if let Some(dv) = &decl.d_value {
            symbols.get_mut(id).d_value = Some(change.transport(&dv.widen(n)));
        }
    }
    change.new_frame.symbols = symbols;
    Ok(change)
}

/// Evaluate a k-form on k frame-vector arguments by determinant expansion;
/// used as an independent oracle in tests.
pub fn eval_form(f: &Form, args: &[&VectorField]) -> Scalar {
    assert_eq!(f.degree(), args.len());
    let k = args.len();
    let mut total = Scalar::zero();
    for (idx, c) in f.terms() {
        // det [ e^{idx_p}(args_q) ]
        let det = det_perm(idx, args, k);
        total = &total + &(c * &det);
    }
    total
}

fn det_perm(idx: &[u8], args: &[&VectorField], k: usize) -> Scalar {
    // permutation expansion; k stays small
    let mut total = Scalar::zero();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut sign = 0usize;
        for i in 0..k {
            for j in (i + 1)..k {
                if perm[i] > perm[j] {
                    sign += 1;
                }
            }
        }
        let mut prod = if sign % 2 == 0 {
            Scalar::one()
        } else {
            -&Scalar::one()
        };
        for (p, &q) in perm.iter().enumerate() {
            prod = &prod * &args[q].components[idx[p] as usize];
            if prod.is_zero() {
                break;
            }
        }
        total = &total + &prod;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Substitute rational sample values into every coefficient of a form.
pub fn eval_form_at(
    f: &Form,
    values: &dyn Fn(SymId) -> Option<Q>,
) -> Option<Vec<(Idx, Q)>> {
    let mut out = Vec::new();
    for (idx, c) in f.terms() {
        let v = c.eval(values)?;
        if !num_traits::Zero::is_zero(&v) {
            out.push((idx.clone(), v));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Scalar, SymbolDecl, SymbolTable};

    /// The 5-dimensional Heisenberg-type frame: d e5 = e12 + e34.
    fn heisenberg5() -> CoframeAlgebra {
        let mut fr = CoframeAlgebra::new(
            (1..=5).map(|i| format!("e{i}")).collect(),
            SymbolTable::new(),
        );
        let d5 = Form::monomial(5, &[0, 1], Scalar::one())
            .add(&Form::monomial(5, &[2, 3], Scalar::one()));
        fr.set_differential(4, d5);
        fr
    }

    #[test]
    fn d_squared_holds_on_heisenberg() {
        assert!(heisenberg5().check_d_squared().holds());
    }

    #[test]
    fn d_squared_detects_broken_jacobi() {
        let mut fr = CoframeAlgebra::new(
            (1..=3).map(|i| format!("e{i}")).collect(),
            SymbolTable::new(),
        );
        fr.set_differential(0, Form::monomial(3, &[1, 2], Scalar::one()));
        fr.set_differential(1, Form::monomial(3, &[0, 2], Scalar::one()));
        assert!(fr.check_d_squared().holds());
        // de1 = e12 together with de2 = e23 gives d(de1) = -e123
        fr.set_differential(0, Form::monomial(3, &[0, 1], Scalar::one()));
        fr.set_differential(1, Form::monomial(3, &[1, 2], Scalar::one()));
        fr.set_differential(2, Form::zero(3, 2));
        assert!(!fr.check_d_squared().holds());
    }

    #[test]
    fn brackets_from_structure_equations() {
        let fr = heisenberg5();
        let b = fr.bracket_frame(0, 1);
        let mut expect = VectorField::zero(5);
        expect.components[4] = Scalar::from_int(-1);
        assert_eq!(b, expect); // [e1, e2] = -e5
        assert!(fr.bracket_frame(0, 2).is_zero());
    }

    #[test]
    fn contraction_is_an_antiderivation() {
        let fr = heisenberg5();
        let x = VectorField::frame(5, 4);
        let a = Form::monomial(5, &[0, 1], Scalar::one())
            .add(&Form::monomial(5, &[2, 4], Scalar::from_int(3)));
        let b = Form::covector(5, 3).add(&Form::covector(5, 4));
        let lhs = fr.contract(&x, &a.wedge(&b));
        let rhs = fr
            .contract(&x, &a)
            .wedge(&b)
            .add(&a.wedge(&fr.contract(&x, &b))); // (-1)^{|a|} = +1
        assert_eq!(lhs, rhs);
        // i_{e5}(e125) = e12
        let e125 = Form::monomial(5, &[0, 1, 4], Scalar::one());
        assert_eq!(
            fr.contract(&VectorField::frame(5, 4), &e125),
            Form::monomial(5, &[0, 1], Scalar::one())
        );
    }

    #[test]
    fn lie_derivative_of_contact_covector_vanishes() {
        // L_{e5}(e^5) = i_{e5}(e12 + e34) = 0 on the Heisenberg frame
        let fr = heisenberg5();
        let l = fr.lie_derivative(&VectorField::frame(5, 4), &fr.covector(4));
        assert!(l.is_zero());
    }

    #[test]
    fn scalar_d_honors_declared_differentials() {
        // frame e1, dt with symbol t (d t = dt), w (d w = 1/(2w^2) dt)
        let mut table = SymbolTable::new();
        let t = table.declare(SymbolDecl::parameter("t"));
        let w = table.declare(SymbolDecl::parameter("w"));
        let mut fr = CoframeAlgebra::new(vec!["e1".into(), "dt".into()], table);
        fr.dt_index = Some(1);
        let dt_form = fr.covector(1);
        fr.symbols.get_mut(t).d_value = Some(dt_form.clone());
        let w_rate = Scalar::new(
            crate::poly::Poly::constant(crate::poly::q(1, 2)),
            crate::poly::Poly::var(w).mul(&crate::poly::Poly::var(w)),
        );
        fr.symbols.get_mut(w).d_value = Some(dt_form.scale(&w_rate));
        fr.symbols.get_mut(w).dt_value = Some(w_rate.clone());

        assert_eq!(fr.scalar_d(&Scalar::var(t)), fr.covector(1));
        assert_eq!(fr.scalar_d(&Scalar::var(w)), fr.covector(1).scale(&w_rate));
        // d(w e1) = 1/(2w^2) dt ^ e1
        let we1 = Form::monomial(2, &[0], Scalar::var(w));
        let expect = Form::monomial(2, &[1, 0], w_rate);
        assert_eq!(fr.d(&we1), expect);
        assert!(fr.check_d_squared().holds());
    }

    #[test]
    fn endo_form_action_matches_slotwise_evaluation() {
        // J e1 = -e2, J e2 = e1 => J(e12) = e12
        let mut j = Endo::zero(2);
        j.set(0, &Form::covector(2, 1).neg());
        j.set(1, &Form::covector(2, 0));
        let e12 = Form::monomial(2, &[0, 1], Scalar::one());
        assert_eq!(j.apply_form(&e12), e12);
        // oracle: (J e12)(X, Y) = e12(JX, JY) on frame pairs
        let jx = j.apply_vector(&VectorField::frame(2, 0));
        let jy = j.apply_vector(&VectorField::frame(2, 1));
        assert_eq!(eval_form(&e12, &[&jx, &jy]), Scalar::one());
    }

    #[test]
    fn hodge_star_permutation_signs() {
        let fr = CoframeAlgebra::new(
            (1..=6).map(|i| format!("a{i}")).collect(),
            SymbolTable::new(),
        );
        // *(a125) = a346 ; *(1) = a1..6
        let a125 = Form::monomial(6, &[0, 1, 4], Scalar::one());
        assert_eq!(
            fr.hodge_star(&a125),
            Form::monomial(6, &[2, 3, 5], Scalar::one())
        );
        let one = Form::scalar(6, Scalar::one());
        assert_eq!(
            fr.hodge_star(&one),
            Form::monomial(6, &[0, 1, 2, 3, 4, 5], Scalar::one())
        );
    }

    #[test]
    fn hodge_star_involution_sign() {
        let fr = CoframeAlgebra::new(
            (1..=6).map(|i| format!("a{i}")).collect(),
            SymbolTable::new(),
        );
        // ** = (-1)^{k(n-k)} on degree k
        for idx in [vec![0], vec![0, 1], vec![0, 2, 4], vec![1, 2, 3, 5]] {
            let f = Form::monomial(6, &idx.iter().map(|&i| i as usize).collect::<Vec<_>>(), Scalar::one());
            let k = idx.len();
            let expect = if (k * (6 - k)) % 2 == 0 { f.clone() } else { f.neg() };
            assert_eq!(fr.hodge_star(&fr.hodge_star(&f)), expect);
        }
    }

    #[test]
    fn coframe_change_roundtrip() {
        let fr = heisenberg5();
        let mut m = Matrix::identity(5);
        m.set(0, 0, Scalar::from_int(2)); // alpha1 = 2 e1
        m.set(0, 2, Scalar::from_int(1)); // + e3
        let names: Vec<String> = (1..=5).map(|i| format!("a{i}")).collect();
        let change = change_coframe(&fr, names, m.clone()).unwrap();
        assert!(change.new_frame.check_d_squared().holds());
        let back = change_coframe(
            &change.new_frame,
            fr.covector_names().to_vec(),
            m.inverse().unwrap(),
        )
        .unwrap();
        for i in 0..5 {
            assert_eq!(back.new_frame.differential(i), fr.differential(i));
        }
        // transported forms agree with substitution
        let f = Form::monomial(5, &[0, 4], Scalar::one());
        let there = change.transport(&f);
        let and_back = back.transport(&there);
        assert_eq!(and_back, f);
    }
}
