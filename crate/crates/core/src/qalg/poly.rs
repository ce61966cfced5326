//! Sparse multivariate polynomials over the integers in the fixed alphabet
//! `q, t, X, Y, Z, u`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Number of variables in the alphabet.
pub const NVARS: usize = 6;

/// A variable of the fixed alphabet, listed in increasing monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    T,
    X,
    Y,
    Z,
    U,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::T, Var::X, Var::Y, Var::Z, Var::U];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::T => "t",
            Var::X => "X",
            Var::Y => "Y",
            Var::Z => "Z",
            Var::U => "u",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector, ordered graded-lexicographically with `q < t < X < Y < Z < u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Monomial {
        let mut m = [0; NVARS];
        for &(v, e) in pairs {
            m[v.index()] += e;
        }
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0) {
            *a -= b;
        }
        Monomial(m)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = (*a).min(b);
        }
        Monomial(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial with arbitrary-precision integer coefficients. No stored
/// coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Poly {
        Poly::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(1, Monomial::var(v, 1))
    }

    pub fn term<C: Into<BigInt>>(c: C, m: Monomial) -> Poly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `1 - c * m`, the building block of every Pochhammer product.
    pub fn one_minus<C: Into<BigInt>>(c: C, m: Monomial) -> Poly {
        &Poly::one() - &Poly::term(c, m)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial `sum c_k v^k` from a coefficient list.
    pub fn univariate<C: Into<BigInt> + Clone>(v: Var, coeffs: &[C]) -> Poly {
        Poly::from_terms(coeffs.iter().enumerate().map(|(k, c)| (Monomial::var(v, k as u32), c.clone().into())))
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Greatest term in the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Smallest term in the monomial order; the first one printed.
    pub fn trailing(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::ONE)
    }

    /// Returns the integer value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.gcd(m)),
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Poly {
        let c = c.into();
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * &c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_integer(&self, c: &BigInt) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(*m, q);
        }
        Some(Poly { terms })
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if !m.divides(k) {
                return None;
            }
            terms.insert(m.quotient_of(k), c.clone());
        }
        Some(Poly { terms })
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact division over the integers. Returns `None` unless `divisor`
    /// divides `self` with an integral quotient.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return None;
            }
            let (c, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let m = lm.quotient_of(rm);
            rem = &rem - &divisor.mul_monomial(&m).scale(c.clone());
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Replace `v` by `v^k`.
    pub fn inflate(&self, v: Var, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0;
                    e[v.index()] *= k;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// `v^deg * p(1/v)` where `deg` is the degree of `p` in `v`.
    pub fn reverse_in(&self, v: Var) -> Poly {
        let d = self.degree_in(v);
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0;
                    e[v.index()] = d - e[v.index()];
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Rename variable `from` to `to`; `to` must not occur already.
    pub fn rename(&self, from: Var, to: Var) -> Poly {
        assert!(from == to || !self.uses(to), "rename target {to} already in use");
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0;
                    let x = e[from.index()];
                    e[from.index()] = 0;
                    e[to.index()] += x;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Substitute the integer `value` for `v`.
    pub fn eval_var(&self, v: Var, value: &BigInt) -> Poly {
        let d = self.degree_in(v) as usize;
        let mut powers = Vec::with_capacity(d + 1);
        powers.push(BigInt::one());
        for k in 1..=d {
            let next = &powers[k - 1] * value;
            powers.push(next);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut e = m.0;
            let k = e[v.index()] as usize;
            e[v.index()] = 0;
            out.add_term(Monomial(e), c * &powers[k]);
        }
        out
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| {
                    let mut e = m.0;
                    e[v.index()] = 0;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Evaluate with every variable specialised to an integer.
    pub fn eval_all(&self, values: &[BigInt; NVARS]) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut acc = c.clone();
                for (b, e) in values.iter().zip(m.0) {
                    if e > 0 {
                        acc *= num_traits::pow(b.clone(), e as usize);
                    }
                }
                acc
            })
            .sum()
    }

    /// Integer coefficient list of a polynomial in `v` alone.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<BigInt>> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![BigInt::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            if m.degree() != m.exp(v) {
                return None;
            }
            out[m.exp(v) as usize] = c.clone();
        }
        Some(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            for (m, c) in p.terms {
                acc.add_term(m, c);
            }
        }
        acc
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Var::X)
    }

    #[test]
    fn grlex_order_puts_q_before_t() {
        let q = Monomial::var(Var::Q, 1);
        let t = Monomial::var(Var::T, 1);
        assert!(q < t);
        assert!(Monomial::ONE < q);
        assert!(t < Monomial::var(Var::Q, 2));
    }

    #[test]
    fn display_ascending() {
        let p = Poly::one_minus(1, Monomial::from_pairs(&[(Var::Q, 1), (Var::T, 1)]));
        assert_eq!(p.to_string(), "1 - q*t");
        let p = &Poly::var(Var::T).scale(-3) + &Poly::term(2, Monomial::var(Var::Q, 2));
        assert_eq!(p.to_string(), "-3*t + 2*q^2");
    }

    #[test]
    fn exact_division() {
        let one_minus_x2 = Poly::one_minus(1, Monomial::var(Var::X, 2));
        let one_minus_x = Poly::one_minus(1, Monomial::var(Var::X, 1));
        let q = one_minus_x2.div_exact(&one_minus_x).unwrap();
        assert_eq!(q, &Poly::one() + &x());
        assert!(one_minus_x.div_exact(&one_minus_x2).is_none());
        assert!(Poly::constant(3).div_exact(&Poly::constant(2)).is_none());
    }

    #[test]
    fn reverse_and_eval() {
        let p = &Poly::one() + &x().scale(2);
        assert_eq!(p.reverse_in(Var::X), &x() + &Poly::constant(2));
        assert_eq!(p.eval_var(Var::X, &BigInt::from(5)), Poly::constant(11));
    }
}
