//! Rational functions as unreduced fractions of [`Poly`].
//!
//! There is no multivariate gcd here. A fraction is normalised only up to
//! integer content, common monomial content and sign, and two fractions are
//! equal when they cross-multiply to the same polynomial.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly, Var, NVARS};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFun::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> RatFun {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun::zero();
        }
        let mono = num.monomial_content().gcd(&den.monomial_content());
        let (mut num, mut den) = if mono.is_one() {
            (num, den)
        } else {
            (
                num.div_monomial(&mono).expect("monomial content divides"),
                den.div_monomial(&mono).expect("monomial content divides"),
            )
        };
        let mut g = num.content().gcd(&den.content());
        if den.trailing().is_some_and(|(_, c)| c.is_negative()) {
            g = -g;
        }
        if !g.is_one() {
            num = num.div_integer(&g).expect("content divides");
            den = den.div_integer(&g).expect("content divides");
        }
        // An exact quotient is cheap to detect and gives a much nicer form.
        if !den.as_constant().is_some_and(|c| c.is_one()) {
            if let Some(q) = num.div_exact(&den) {
                return RatFun { num: q, den: Poly::one() };
            }
        }
        RatFun { num, den }
    }

    pub fn zero() -> RatFun {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFun {
        RatFun::from(Poly::one())
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> RatFun {
        RatFun::from(Poly::constant(c))
    }

    pub fn var(v: Var) -> RatFun {
        RatFun::from(Poly::var(v))
    }

    /// `c * prod v^e` with possibly negative exponents.
    pub fn laurent<C: Into<BigInt>>(c: C, exps: &[(Var, i64)]) -> RatFun {
        let mut up = [0u32; NVARS];
        let mut down = [0u32; NVARS];
        for &(v, e) in exps {
            let slot = if e >= 0 { &mut up } else { &mut down };
            slot[v.index()] += e.unsigned_abs() as u32;
        }
        RatFun::normalized(Poly::term(c, Monomial(up)), Poly::term(1, Monomial(down)))
    }

    /// `(v^k; ..)`-style building block `1 - c`.
    pub fn one_minus(c: &RatFun) -> RatFun {
        &RatFun::one() - c
    }

    /// Geometric progression `x / (1 - x)`.
    pub fn gp(x: &RatFun) -> RatFun {
        RatFun::normalized(x.num.clone(), &x.den - &x.num)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some_and(|c| c.abs().is_one())
    }

    /// The polynomial this fraction equals, if it is one.
    pub fn try_into_poly(&self) -> Option<Poly> {
        if let Some(c) = self.den.as_constant() {
            return self.num.div_integer(&c);
        }
        self.num.div_exact(&self.den)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<RatFun> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFun::normalized(base.num.pow(k), base.den.pow(k)))
    }

    /// Replace `v` by `v^k` in numerator and denominator.
    pub fn inflate(&self, v: Var, k: u32) -> RatFun {
        RatFun::normalized(self.num.inflate(v, k), self.den.inflate(v, k))
    }

    /// Replace `v` by `1/v`.
    pub fn invert_var(&self, v: Var) -> RatFun {
        let dn = self.num.degree_in(v) as i64;
        let dd = self.den.degree_in(v) as i64;
        let shift = Monomial::var(v, (dd - dn).unsigned_abs() as u32);
        let (mut num, mut den) = (self.num.reverse_in(v), self.den.reverse_in(v));
        if dd >= dn {
            num = num.mul_monomial(&shift);
        } else {
            den = den.mul_monomial(&shift);
        }
        RatFun::normalized(num, den)
    }

    /// Simultaneous substitution `v -> value` for every binding.
    pub fn substitute(&self, bindings: &[(Var, RatFun)]) -> Result<RatFun> {
        // Homogenise each bound variable by its largest degree in the pair,
        // so the common denominator power cancels between num and den.
        let subs: Vec<(Var, u32, Vec<Poly>, Vec<Poly>)> = bindings
            .iter()
            .map(|(v, val)| {
                let e = self.num.degree_in(*v).max(self.den.degree_in(*v));
                let mut pn = vec![Poly::one()];
                let mut pd = vec![Poly::one()];
                for k in 1..=e as usize {
                    pn.push(&pn[k - 1] * &val.num);
                    pd.push(&pd[k - 1] * &val.den);
                }
                (*v, e, pn, pd)
            })
            .collect();
        let apply = |p: &Poly| -> Poly {
            p.terms()
                .map(|(m, c)| {
                    let mut rest = *m;
                    let mut acc = Poly::one();
                    for (v, e, pn, pd) in &subs {
                        let k = m.exp(*v);
                        rest.0[v.index()] = 0;
                        acc = &(&acc * &pn[k as usize]) * &pd[(*e - k) as usize];
                    }
                    acc.mul_monomial(&rest).scale(c.clone())
                })
                .sum()
        };
        let den = apply(&self.den);
        if den.is_zero() {
            return Err(Error::SubstitutionSingular);
        }
        Ok(RatFun::normalized(apply(&self.num), den))
    }

    /// Substitute an integer for `v`.
    pub fn eval_var(&self, v: Var, value: &BigInt) -> Result<RatFun> {
        let den = self.den.eval_var(v, value);
        if den.is_zero() {
            return Err(Error::SubstitutionSingular);
        }
        Ok(RatFun::normalized(self.num.eval_var(v, value), den))
    }

    /// Power series coefficients `c_0..=c_order` in `v`; each is a fraction in
    /// the remaining variables.
    pub fn series_coeffs(&self, v: Var, order: usize) -> Result<Vec<RatFun>> {
        let d0 = self.den.coeff_of(v, 0);
        if d0.is_zero() {
            return Err(Error::NotExpandable(v));
        }
        let dcoef: Vec<Poly> = (0..=order as u32).map(|k| self.den.coeff_of(v, k)).collect();
        let mut d0pow = vec![Poly::one()];
        for k in 1..=order + 1 {
            d0pow.push(&d0pow[k - 1] * &d0);
        }
        // c_k = N_k / d0^(k+1)
        let mut big_n: Vec<Poly> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut nk = &self.num.coeff_of(v, k as u32) * &d0pow[k];
            for j in 1..=k {
                if dcoef[j].is_zero() {
                    continue;
                }
                nk = &nk - &(&(&dcoef[j] * &big_n[k - j]) * &d0pow[j - 1]);
            }
            big_n.push(nk);
        }
        Ok(big_n.into_iter().enumerate().map(|(k, nk)| RatFun::normalized(nk, d0pow[k + 1].clone())).collect())
    }

    /// Sum of `terms` over a shared denominator `base * M`, where `M` is the
    /// least common multiple of the monomial parts of the term denominators.
    /// Fails if some term denominator does not divide it.
    pub fn sum_over(terms: &[RatFun], base: &Poly) -> Result<RatFun> {
        let mono = terms.iter().fold(Monomial::ONE, |acc, t| acc.lcm(&t.den.monomial_content()));
        let den = base.mul_monomial(&mono);
        let mut num = Poly::zero();
        for t in terms {
            let cof = den
                .div_exact(&t.den)
                .ok_or_else(|| Error::InexactDivision(format!("({}) does not divide ({})", t.den, den)))?;
            num = &num + &(&cof * &t.num);
        }
        RatFun::new(num, den)
    }

    /// Divide out each candidate factor from numerator and denominator as
    /// often as it divides both.
    pub fn cancel(&self, factors: &[Poly]) -> RatFun {
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        for f in factors {
            if f.as_constant().is_some() {
                continue;
            }
            while let (Some(a), Some(b)) = (num.div_exact(f), den.div_exact(f)) {
                num = a;
                den = b;
            }
        }
        RatFun::normalized(num, den)
    }

    /// Evaluate with every variable bound to an integer.
    pub fn eval_all(&self, values: &[BigInt; NVARS]) -> Result<num_rational::BigRational> {
        let d = self.den.eval_all(values);
        if d.is_zero() {
            return Err(Error::SubstitutionSingular);
        }
        Ok(num_rational::BigRational::new(self.num.eval_all(values), d))
    }
}

/// Exact equality by cross-multiplication.
pub fn rat_equal(a: &RatFun, b: &RatFun) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        rat_equal(self, other)
    }
}

impl Eq for RatFun {}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> RatFun {
        RatFun { num: p, den: Poly::one() }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RatFun::recip`] for a checked version.
impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFun::normalized(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: RatFun) -> RatFun {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        let (mut num, mut den) = (Poly::one(), Poly::one());
        for r in iter {
            num = &num * &r.num;
            den = &den * &r.den;
        }
        RatFun::normalized(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::parse::parse_ratfun;

    fn r(s: &str) -> RatFun {
        parse_ratfun(s).unwrap()
    }

    #[test]
    fn equality_by_cross_multiplication() {
        assert!(rat_equal(&r("(1-t)/(1-t)"), &RatFun::one()));
        assert!(rat_equal(&r("(1-t^2)/(1-t)"), &r("1+t")));
        assert!(!rat_equal(&r("(1-t)/(1-q*t)"), &r("(1-q*t)/(1-t)")));
    }

    #[test]
    fn normal_form_renders_like_the_heisenberg_factor() {
        assert_eq!(r("(t-1)/(q*t-1)").to_string(), "(1 - t)/(1 - q*t)");
        assert_eq!(r("(2*q - 2*q*t)/(2*q)").to_string(), "1 - t");
    }

    #[test]
    fn functional_equation_substitution() {
        let f = r("(1-t)/(1-q*t)");
        let g = f.substitute(&[(Var::Q, r("1/q")), (Var::T, r("1/t"))]).unwrap();
        assert_eq!(g, &r("q") * &f);
    }

    #[test]
    fn substitution_edge_cases() {
        let gp = RatFun::gp(&RatFun::var(Var::T));
        assert!(gp.substitute(&[(Var::T, RatFun::zero())]).unwrap().is_zero());
        let m = r("q^2*t");
        assert_eq!(m.substitute(&[(Var::T, r("q^2*t^2"))]).unwrap(), r("q^4*t^2"));
        let f = r("1/(1-t)");
        assert_eq!(f.substitute(&[(Var::T, RatFun::one())]), Err(Error::SubstitutionSingular));
    }

    #[test]
    fn series() {
        let c = r("(1-t)/(1-q*t)").series_coeffs(Var::T, 2).unwrap();
        assert_eq!(c, vec![r("1"), r("q-1"), r("q^2-q")]);
        let c = r("1/(1-t)").series_coeffs(Var::T, 3).unwrap();
        assert_eq!(c, vec![RatFun::one(); 4]);
        let c = r("1-t").series_coeffs(Var::T, 2).unwrap();
        assert_eq!(c, vec![r("1"), r("-1"), r("0")]);
        assert_eq!(r("1/t").series_coeffs(Var::T, 1), Err(Error::NotExpandable(Var::T)));
    }

    #[test]
    fn invert_var_matches_substitution() {
        let f = r("(1+2*X+X^3*Y)/(1-X^2)");
        let a = f.invert_var(Var::X);
        let b = f.substitute(&[(Var::X, r("1/X"))]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sum_over_common_denominator() {
        let a = r("1/(1-t)");
        let b = r("q/(t*(1-q*t))");
        let base = r("(1-t)*(1-q*t)").num().clone();
        let s = RatFun::sum_over(&[a.clone(), b.clone()], &base).unwrap();
        assert_eq!(s, &a + &b);
    }
}
