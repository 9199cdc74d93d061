//! Exact scalars: rational functions over Q in the declared symbols.
//!
//! A [`Scalar`] is a normalized fraction of [`Poly`]s: gcd removed, denominator
//! monic under the lex order, zero stored as `0/1`. Equality is therefore
//! structural and agrees with cross-multiplication. Symbols are algebraically
//! independent; relations such as `w^3 = 1 + 3t/2` are never imposed — models
//! express every coefficient in the generating symbol instead.

use crate::poly::{gcd, q, qi, Poly, Q, SymId};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn new(num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "scalar denominator must be nonzero");
        Scalar::normalized(num, den)
    }

    fn normalized(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        // denominator monic: divide both by its leading coefficient
        let lc = den.leading().unwrap().1.clone();
        if !lc.is_one() {
            let inv = Q::one() / &lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Scalar { num, den }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_q(c: Q) -> Scalar {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_q(qi(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_q(q(n, d))
    }

    pub fn var(s: SymId) -> Scalar {
        Scalar::from_poly(Poly::var(s))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    pub fn as_q(&self) -> Option<Q> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Scalar {
        if e < 0 {
            return self
                .inverse()
                .expect("negative power of zero scalar")
                .pow(-e);
        }
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn symbols(&self) -> Vec<SymId> {
        let mut v = self.num.symbols();
        v.extend(self.den.symbols());
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Partial derivative with respect to one symbol (quotient rule).
    pub fn derivative(&self, s: SymId) -> Scalar {
        let dn = self.num.derivative(s);
        let dd = self.den.derivative(s);
        // (n' d - n d') / d^2
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Scalar::normalized(num, den)
    }

    /// Evaluate at rational symbol values; `None` if a needed value is missing
    /// or the denominator vanishes there.
    pub fn eval(&self, values: &dyn Fn(SymId) -> Option<Q>) -> Option<Q> {
        let n = self.num.eval(values)?;
        let d = self.den.eval(values)?;
        if d.is_zero() {
            return None;
        }
        Some(n / d)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Scalar::normalized(num, self.den.mul(&rhs.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        Scalar::normalized(num, self.den.mul(&rhs.den))
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by the zero scalar");
        Scalar::normalized(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}

/// Declaration record for one scalar symbol.
///
/// Parameters have neither a `d_value` nor a `dt_value`; the cone coordinate
/// `t` carries `d t = dt`; evolution symbols carry both a `d` and a `ddt`.
#[derive(Clone, Debug)]
pub struct SymbolDecl {
    pub name: String,
    /// Declared exterior differential, as a 1-form over the bound coframe.
    pub d_value: Option<crate::form::Form>,
    /// Declared t-derivative.
    pub dt_value: Option<Scalar>,
    /// Recorded nonvanishing assumptions, e.g. `a != 0`. Metadata only.
    pub constraints: Vec<String>,
}

impl SymbolDecl {
    pub fn parameter(name: &str) -> SymbolDecl {
        SymbolDecl {
            name: name.to_string(),
            d_value: None,
            dt_value: None,
            constraints: Vec::new(),
        }
    }
}

/// The ordered symbol table of a model. Symbol ids are declaration indices.
#[derive(Clone, Debug, Default)]
pub struct SymbolTable {
    decls: Vec<SymbolDecl>,
}

impl SymbolTable {
    pub fn new() -> SymbolTable {
        SymbolTable { decls: Vec::new() }
    }

    pub fn declare(&mut self, decl: SymbolDecl) -> SymId {
        let id = self.decls.len() as SymId;
        self.decls.push(decl);
        id
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn get(&self, id: SymId) -> &SymbolDecl {
        &self.decls[id as usize]
    }

    pub fn get_mut(&mut self, id: SymId) -> &mut SymbolDecl {
        &mut self.decls[id as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<SymId> {
        self.decls
            .iter()
            .position(|d| d.name == name)
            .map(|i| i as SymId)
    }

    pub fn name(&self, id: SymId) -> &str {
        &self.decls[id as usize].name
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymId, &SymbolDecl)> {
        self.decls
            .iter()
            .enumerate()
            .map(|(i, d)| (i as SymId, d))
    }

    /// Coefficientwise t-derivative: quotient rule over the declared
    /// `dt` values; parameters differentiate to zero.
    pub fn scalar_dt(&self, s: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for sym in s.symbols() {
            if let Some(rate) = &self.decls[sym as usize].dt_value {
                out = &out + &(&s.derivative(sym) * rate);
            }
        }
        out
    }
}

/// Canonical printing of scalars: integers as-is, fractions as `p/q`,
/// polynomial fractions parenthesized. Printing is bit-exact across runs.
pub struct ScalarDisplay<'a> {
    pub scalar: &'a Scalar,
    pub table: &'a SymbolTable,
}

fn fmt_q(c: &Q) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(m: &crate::poly::Monomial, table: &SymbolTable) -> String {
    let parts: Vec<String> = m
        .symbols()
        .map(|s| {
            let e = m.exponent(s);
            if e == 1 {
                table.name(s).to_string()
            } else {
                format!("{}^{}", table.name(s), e)
            }
        })
        .collect();
    parts.join("*")
}

pub fn fmt_poly(p: &Poly, table: &SymbolTable) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    // largest monomial first
    for (i, (m, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let mag = c.abs();
        let sign = c.is_negative();
        if i == 0 {
            if sign {
                out.push('-');
            }
        } else {
            out.push_str(if sign { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&fmt_q(&mag));
        } else if mag.is_one() {
            out.push_str(&fmt_monomial(m, table));
        } else {
            out.push_str(&fmt_q(&mag));
            out.push('*');
            out.push_str(&fmt_monomial(m, table));
        }
    }
    out
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.scalar;
        if s.den() == &Poly::one() {
            let body = fmt_poly(s.num(), self.table);
            if s.num().terms().count() > 1 {
                write!(f, "({body})")
            } else {
                write!(f, "{body}")
            }
        } else {
            let n = fmt_poly(s.num(), self.table);
            let d = fmt_poly(s.den(), self.table);
            write!(f, "(({n})/({d}))")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_zero() {
        let a = Scalar::var(0);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z, Scalar::zero());
    }

    #[test]
    fn fraction_normalization() {
        // (x^2 - 1)/(x - 1) = x + 1
        let x = Scalar::var(0);
        let num = &(&x * &x) - &Scalar::one();
        let den = &x - &Scalar::one();
        let r = &num / &den;
        assert_eq!(r, &x + &Scalar::one());
    }

    #[test]
    fn denominator_made_monic() {
        // 1 / (2x) has monic denominator x with numerator 1/2
        let x = Scalar::var(0);
        let two_x = &Scalar::from_int(2) * &x;
        let r = &Scalar::one() / &two_x;
        assert_eq!(r.den(), &Poly::var(0));
        assert_eq!(r.num().as_constant().unwrap(), q(1, 2));
    }

    #[test]
    fn dt_is_a_derivation() {
        // symbol 0 = w with dt(w) = 1/(2 w^2)
        let mut table = SymbolTable::new();
        let w = table.declare(SymbolDecl::parameter("w"));
        let rate = Scalar::new(
            Poly::constant(q(1, 2)),
            Poly::var(w).mul(&Poly::var(w)),
        );
        table.get_mut(w).dt_value = Some(rate);

        let a = Scalar::var(w).pow(2);
        let b = &Scalar::var(w).pow(-1) + &Scalar::from_int(3);
        let lhs = table.scalar_dt(&(&a * &b));
        let rhs = &(&table.scalar_dt(&a) * &b) + &(&a * &table.scalar_dt(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dt_matches_closed_form() {
        // dt(w^-3) = -3 w^-4 * (1/2) w^-2 = -(3/2) w^-6
        let mut table = SymbolTable::new();
        let w = table.declare(SymbolDecl::parameter("w"));
        table.get_mut(w).dt_value = Some(Scalar::new(
            Poly::constant(q(1, 2)),
            Poly::var(w).mul(&Poly::var(w)),
        ));
        let lhs = table.scalar_dt(&Scalar::var(w).pow(-3));
        let rhs = &Scalar::from_ratio(-3, 2) * &Scalar::var(w).pow(-6);
        assert_eq!(lhs, rhs);
    }
}
