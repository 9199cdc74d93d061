//! Graded exterior algebra elements over a fixed coframe.
//!
//! A term is a strictly increasing multi-index of covector positions with a
//! [`Scalar`] coefficient. Evaluation follows the determinant convention:
//! `(e^i ^ e^j)(X, Y) = e^i(X) e^j(Y) - e^i(Y) e^j(X)`, so `e^{ij}(e_i, e_j) = 1`.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Strictly increasing list of covector indices.
pub type Idx = Vec<u8>;

#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Idx, Scalar>,
}

/// Sign of the permutation that merges two strictly increasing index lists,
/// `None` when they share an index.
pub fn merge_sign(a: &[u8], b: &[u8]) -> Option<(Idx, i8)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => {
                if x == y {
                    return None;
                } else if x < y {
                    out.push(x);
                    i += 1;
                } else {
                    // y jumps over the remaining entries of a
                    inversions += a.len() - i;
                    out.push(y);
                    j += 1;
                }
            }
            (Some(&x), None) => {
                out.push(x);
                i += 1;
            }
            (None, Some(&y)) => {
                out.push(y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some((out, if inversions % 2 == 0 { 1 } else { -1 }))
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Form {
        Form {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, s: Scalar) -> Form {
        let mut f = Form::zero(dim, 0);
        f.add_term(vec![], s);
        f
    }

    pub fn covector(dim: usize, i: usize) -> Form {
        assert!(i < dim);
        let mut f = Form::zero(dim, 1);
        f.add_term(vec![i as u8], Scalar::one());
        f
    }

    pub fn monomial(dim: usize, idx: &[usize], coeff: Scalar) -> Form {
        let mut f = Form::zero(dim, idx.len());
        let mut sorted: Vec<u8> = Vec::with_capacity(idx.len());
        let mut sign = 1i8;
        // insertion sort, tracking the permutation sign; repeated index kills the term
        for &i in idx {
            assert!(i < dim, "covector index out of range");
            let v = i as u8;
            match sorted.binary_search(&v) {
                Ok(_) => return f,
                Err(pos) => {
                    if (sorted.len() - pos) % 2 == 1 {
                        sign = -sign;
                    }
                    sorted.insert(pos, v);
                }
            }
        }
        let c = if sign < 0 { -&coeff } else { coeff };
        f.add_term(sorted, c);
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Idx, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[u8]) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, idx: Idx, c: Scalar) {
        debug_assert_eq!(idx.len(), self.degree);
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "mismatched coframes");
        assert!(
            self.degree == other.degree || self.is_zero() || other.is_zero(),
            "mismatched degrees {} vs {}",
            self.degree,
            other.degree
        );
        let mut out = if self.is_zero() && !other.is_zero() {
            Form::zero(self.dim, other.degree)
        } else {
            self.clone()
        };
        if self.is_zero() && !other.is_zero() {
            return other.clone();
        }
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Form {
        if s.is_zero() {
            return Form::zero(self.dim, self.degree);
        }
        Form {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), c * s)).collect(),
        }
    }

    /// Graded-commutative exact product: `a ^ b = (-1)^{|a||b|} b ^ a`.
    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "mismatched coframes");
        let mut out = Form::zero(self.dim, self.degree + other.degree);
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                if let Some((idx, sign)) = merge_sign(ia, ib) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -&c;
                    }
                    out.add_term(idx, c);
                }
            }
        }
        out
    }

    /// Reinterpret over a larger coframe that extends the current one by
    /// appending covectors.
    pub fn widen(&self, new_dim: usize) -> Form {
        assert!(new_dim >= self.dim);
        Form {
            dim: new_dim,
            degree: self.degree,
            terms: self.terms.clone(),
        }
    }

    /// Map the coefficients through `f`, dropping zero results.
    pub fn map_coefficients(&self, f: &dyn Fn(&Scalar) -> Scalar) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), f(c));
        }
        out
    }

    /// Interior product with a frame covector combination is in `frame.rs`;
    /// this is the raw index-level contraction used there: contract slot-`p`
    /// occurrences of index `i`.
    pub fn contract_index(&self, i: usize) -> Form {
        let mut out = Form::zero(self.dim, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (idx, c) in &self.terms {
            if let Some(pos) = idx.iter().position(|&x| x == i as u8) {
                let mut rest = idx.clone();
                rest.remove(pos);
                let c = if pos % 2 == 0 { c.clone() } else { -c };
                out.add_term(rest, c);
            }
        }
        out
    }

    /// Drop every term containing covector `i` (the hypersurface pullback at
    /// the level of a single form).
    pub fn without_index(&self, i: usize) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (idx, c) in &self.terms {
            if !idx.contains(&(i as u8)) {
                out.add_term(idx.clone(), c.clone());
            }
        }
        out
    }

    /// Re-express over a sub-coframe after deleting covector `i`; terms that
    /// still contain `i` are rejected.
    pub fn restrict_delete(&self, i: usize) -> Form {
        let mut out = Form::zero(self.dim - 1, self.degree);
        for (idx, c) in &self.terms {
            assert!(
                !idx.contains(&(i as u8)),
                "form still references the deleted covector"
            );
            let new_idx: Idx = idx
                .iter()
                .map(|&x| if x > i as u8 { x - 1 } else { x })
                .collect();
            out.add_term(new_idx, c.clone());
        }
        out
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let mono: Vec<String> = idx.iter().map(|i| format!("e{}", i + 1)).collect();
                if idx.is_empty() {
                    format!("{c:?}")
                } else {
                    format!("{:?}*{}", c, mono.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn e(dim: usize, idx: &[usize]) -> Form {
        Form::monomial(dim, idx, Scalar::one())
    }

    /// Brute-force wedge of two basis monomials by permutation-sign counting.
    fn wedge_oracle(dim: usize, a: &[usize], b: &[usize]) -> Form {
        let mut all: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
        // repeated index => zero
        let mut seen = vec![false; dim];
        for &i in &all {
            if seen[i] {
                return Form::zero(dim, a.len() + b.len());
            }
            seen[i] = true;
        }
        // bubble sort counting swaps
        let mut swaps = 0usize;
        for i in 0..all.len() {
            for j in 0..all.len() - 1 - i {
                if all[j] > all[j + 1] {
                    all.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        let c = if swaps % 2 == 0 {
            Scalar::one()
        } else {
            -&Scalar::one()
        };
        Form::monomial(dim, &all, c)
    }

    #[test]
    fn wedge_agrees_with_permutation_oracle_up_to_dim_7() {
        // all pairs of basis monomials of degree <= 2 in dimension 7, plus a
        // spread of degree-3 pairs
        let dim = 7;
        let mut monos: Vec<Vec<usize>> = vec![];
        for i in 0..dim {
            monos.push(vec![i]);
            for j in 0..dim {
                if i != j {
                    monos.push(vec![i, j]);
                }
            }
        }
        for a in &monos {
            for b in &monos {
                let lhs = e(dim, a).wedge(&e(dim, b));
                let rhs = wedge_oracle(dim, a, b);
                assert_eq!(lhs, rhs, "a={a:?} b={b:?}");
            }
        }
        let cubes = [[0, 1, 2], [2, 4, 6], [1, 3, 5], [5, 3, 0]];
        for a in &cubes {
            for b in &cubes {
                assert_eq!(
                    e(dim, a).wedge(&e(dim, b)),
                    wedge_oracle(dim, a, b),
                    "a={a:?} b={b:?}"
                );
            }
        }
    }

    #[test]
    fn squares_of_two_forms() {
        // (e12 + e34)^2 = 2 e1234 ; (e13 + e24)^2 = -2 e1234
        let dim = 4;
        let a = e(dim, &[0, 1]).add(&e(dim, &[2, 3]));
        assert_eq!(
            a.wedge(&a),
            Form::monomial(dim, &[0, 1, 2, 3], Scalar::from_int(2))
        );
        let b = e(dim, &[0, 2]).add(&e(dim, &[1, 3]));
        assert_eq!(
            b.wedge(&b),
            Form::monomial(dim, &[0, 1, 2, 3], Scalar::from_int(-2))
        );
    }

    #[test]
    fn parameter_square_identity() {
        // (l e14 + m e23)^2 = 2 l m e1234
        let dim = 4;
        let l = Scalar::var(0);
        let m = Scalar::var(1);
        let f = Form::monomial(dim, &[0, 3], l.clone()).add(&Form::monomial(dim, &[1, 2], m.clone()));
        let expect = Form::monomial(dim, &[0, 1, 2, 3], &(&l * &m) * &Scalar::from_int(2));
        assert_eq!(f.wedge(&f), expect);
    }

    #[test]
    fn graded_commutativity() {
        let dim = 5;
        let a = e(dim, &[0, 1]).add(&e(dim, &[2, 3]));
        let b = e(dim, &[4]);
        assert_eq!(a.wedge(&b), b.wedge(&a)); // (-1)^{2*1} = +1
        let c = e(dim, &[2]);
        assert_eq!(b.wedge(&c), c.wedge(&b).neg()); // odd*odd anti-commutes
    }

    #[test]
    fn unsorted_monomial_normalizes_with_sign() {
        let dim = 3;
        assert_eq!(e(dim, &[1, 0]), e(dim, &[0, 1]).neg());
        assert!(Form::monomial(dim, &[1, 1], Scalar::one()).is_zero());
    }
}
