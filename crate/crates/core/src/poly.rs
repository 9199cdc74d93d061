//! Multivariate polynomials over the rationals.
//!
//! Symbols are identified by their declaration index ([`SymId`]); the monomial
//! order is lexicographic in declaration order, which keeps printing and
//! canonical forms reproducible across runs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Index of a declared scalar symbol (position in the model's symbol table).
pub type SymId = u32;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A monomial: sorted `(symbol, exponent)` pairs, exponents > 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(SymId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: SymId) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: SymId) -> u32 {
        self.0
            .iter()
            .find(|(id, _)| *id == s)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn symbols(&self) -> impl Iterator<Item = SymId> + '_ {
        self.0.iter().map(|(id, _)| *id)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(SymId, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    Ordering::Less => {
                        out.push((a, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((b, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((a, ea + eb));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&(a, ea)), None) => {
                    out.push((a, ea));
                    i += 1;
                }
                (None, Some(&(b, eb))) => {
                    out.push((b, eb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Exact division; `None` when some exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.0.clone();
        for &(s, e) in &other.0 {
            let pos = out.iter().position(|&(id, _)| id == s)?;
            if out[pos].1 < e {
                return None;
            }
            out[pos].1 -= e;
        }
        out.retain(|&(_, e)| e > 0);
        Some(Monomial(out))
    }

    fn set_exponent(&mut self, s: SymId, e: u32) {
        self.0.retain(|&(id, _)| id != s);
        if e > 0 {
            self.0.push((s, e));
            self.0.sort_by_key(|&(id, _)| id);
        }
    }
}

/// Lexicographic order over declaration indices: compare exponents of the
/// earliest-declared symbol first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    // earlier symbol present only on one side: that side is larger
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| {
                if *e == 1 {
                    format!("x{s}")
                } else {
                    format!("x{s}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A multivariate polynomial over Q. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(s: SymId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(s), Q::one());
        Poly { terms }
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// Leading (largest) monomial under the lex order, with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add_assign_term(&mut self, m: Monomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_assign_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn max_symbol(&self) -> Option<SymId> {
        self.terms
            .keys()
            .flat_map(|m| m.symbols())
            .max()
    }

    pub fn symbols(&self) -> Vec<SymId> {
        let mut v: Vec<SymId> = self.terms.keys().flat_map(|m| m.symbols()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn degree_in(&self, s: SymId) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Partial derivative with respect to one symbol.
    pub fn derivative(&self, s: SymId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.set_exponent(s, e - 1);
            out.add_assign_term(m2, &(c * qi(e as i64)));
        }
        out
    }

    /// Substitute rational values for all symbols; `None` if a symbol lacks a value.
    pub fn eval(&self, values: &dyn Fn(SymId) -> Option<Q>) -> Option<Q> {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for (s, e) in &m.0 {
                let v = values(*s)?;
                for _ in 0..*e {
                    prod *= &v;
                }
            }
            total += prod;
        }
        Some(total)
    }

    /// Exact polynomial division; `None` when the division does not come out even.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        let (dm, dc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let t = Poly::monomial(qm, qc);
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// View the polynomial as univariate in `s`: coefficients by power of `s`.
    fn univariate_in(&self, s: SymId) -> Vec<Poly> {
        let deg = self.degree_in(s) as usize;
        let mut coeffs = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(s) as usize;
            let mut m2 = m.clone();
            m2.set_exponent(s, 0);
            coeffs[e].add_assign_term(m2, c);
        }
        coeffs
    }

    fn from_univariate(coeffs: &[Poly], s: SymId) -> Poly {
        let mut out = Poly::zero();
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.set_exponent(s, m2.exponent(s) + e as u32);
                out.add_assign_term(m2, c);
            }
        }
        out
    }

    /// Normalize so the leading coefficient is 1 (for gcd determinism).
    fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = Q::one() / c;
                self.scale(&inv)
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn content_wrt(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        g = gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            return Poly::one();
        }
    }
    if g.is_zero() {
        Poly::one()
    } else {
        g
    }
}

/// Pseudo-remainder of univariate(-in-`s`) polynomial `a` by `b`.
fn pseudo_rem(a: &[Poly], b: &[Poly], s: SymId) -> Vec<Poly> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<Poly> = a.to_vec();
    loop {
        while r.last().map(|p| p.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.is_empty() || r.len() - 1 < db {
            return r;
        }
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r := lb * r - lr * s^(dr-db) * b
        for p in r.iter_mut() {
            *p = p.mul(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[dr - db + i] = r[dr - db + i].sub(&t);
        }
        let _ = s;
    }
}

/// Polynomial gcd by primitive pseudo-remainder sequences, normalized monic.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let va = a.max_symbol();
    let vb = b.max_symbol();
    let v = match va.max(vb) {
        None => return Poly::one(),
        Some(v) => v,
    };
    let ua = a.univariate_in(v);
    let ub = b.univariate_in(v);
    let ca = content_wrt(&ua);
    let cb = content_wrt(&ub);
    let pa: Vec<Poly> = ua.iter().map(|p| p.div_exact(&ca).unwrap()).collect();
    let pb: Vec<Poly> = ub.iter().map(|p| p.div_exact(&cb).unwrap()).collect();
    let (mut p, mut q) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    while !q.is_empty() {
        let r = pseudo_rem(&p, &q, v);
        p = q;
        q = if r.is_empty() {
            r
        } else {
            let c = content_wrt(&r);
            r.iter().map(|x| x.div_exact(&c).unwrap()).collect()
        };
    }
    let cg = gcd(&ca, &cb);
    let pp = Poly::from_univariate(&p, v);
    cg.mul(&pp).monic()
}

/// Integer-content heuristic for pretty printing: pulls a positive rational out
/// so the remaining polynomial has coprime integer coefficients.
pub fn rational_content(p: &Poly) -> Q {
    if p.is_zero() {
        return Q::one();
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd_abs(c.numer());
        den_lcm = lcm(&den_lcm, c.denom());
    }
    if num_gcd.is_zero() {
        num_gcd = BigInt::one();
    }
    Q::new(num_gcd, den_lcm)
}

trait GcdAbs {
    fn gcd_abs(self, other: &BigInt) -> BigInt;
}

impl GcdAbs for BigInt {
    fn gcd_abs(self, other: &BigInt) -> BigInt {
        use num_bigint::BigUint;
        let a: BigUint = self.abs().to_biguint().unwrap();
        let b: BigUint = other.abs().to_biguint().unwrap();
        let mut a = a;
        let mut b = b;
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        BigInt::from(a)
    }
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::one();
    }
    let g = a.clone().gcd_abs(b);
    (a * b).abs() / g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }

    #[test]
    fn monomial_order_is_lex_in_declaration_order() {
        let x2 = Monomial::var(0).mul(&Monomial::var(0));
        let xy = Monomial::var(0).mul(&Monomial::var(1));
        let y3 = Monomial::var(1).mul(&Monomial::var(1)).mul(&Monomial::var(1));
        assert!(x2 > xy);
        assert!(xy > y3);
        assert!(y3 > Monomial::one());
    }

    #[test]
    fn div_exact_roundtrip() {
        let p = x().add(&y()).mul(&x().sub(&Poly::constant(qi(2))));
        let q = p.div_exact(&x().add(&y())).unwrap();
        assert_eq!(q, x().sub(&Poly::constant(qi(2))));
        assert!(p.div_exact(&x().add(&Poly::one())).is_none());
    }

    #[test]
    fn gcd_pulls_common_factor() {
        let f = x().add(&y());
        let a = f.mul(&x());
        let b = f.mul(&y()).mul(&f);
        let g = gcd(&a, &b);
        assert_eq!(g, f.monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = x().mul(&x()).add(&Poly::one());
        let b = y().add(&Poly::constant(qi(3)));
        assert_eq!(gcd(&a, &b), Poly::one());
    }

    #[test]
    fn derivative_product_rule() {
        let a = x().mul(&y()).add(&Poly::one());
        let b = x().add(&y());
        let lhs = a.mul(&b).derivative(0);
        let rhs = a.derivative(0).mul(&b).add(&a.mul(&b.derivative(0)));
        assert_eq!(lhs, rhs);
    }
}
