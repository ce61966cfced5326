//! Products of binomials `1 - q^a v^b`, the shape of every closed form here.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use super::{Monomial, Poly, RatFun, Var};

/// The factor `1 - q^a v^b`; `a` may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Binom {
    pub a: i64,
    pub b: u32,
}

impl Binom {
    pub fn new(a: i64, b: u32) -> Binom {
        Binom { a, b }
    }

    pub fn to_ratfun(self, v: Var) -> RatFun {
        RatFun::one_minus(&RatFun::laurent(1, &[(Var::Q, self.a), (v, self.b as i64)]))
    }

    /// The factor times `q^max(0, -a)`, which is a polynomial.
    pub fn cleared(self, v: Var) -> Poly {
        let vb = Monomial::var(v, self.b);
        if self.a >= 0 {
            Poly::one_minus(1, Monomial::var(Var::Q, self.a as u32).mul(&vb))
        } else {
            &Poly::term(1, Monomial::var(Var::Q, (-self.a) as u32)) - &Poly::term(1, vb)
        }
    }

    /// Real part of the zero of `1 - q^(a - b s)` in `s`, when `b > 0`.
    pub fn pole(self) -> Option<Rational64> {
        (self.b > 0).then(|| Rational64::new(self.a, self.b as i64))
    }
}

/// `prod num / prod den` over binomials in `q` and `var`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductForm {
    #[serde(skip)]
    pub var: Var,
    pub num: Vec<Binom>,
    pub den: Vec<Binom>,
}

impl ProductForm {
    pub fn new(var: Var) -> ProductForm {
        ProductForm { var, num: Vec::new(), den: Vec::new() }
    }

    pub fn to_ratfun(&self) -> RatFun {
        let v = self.var;
        let n: RatFun = self.num.iter().map(|b| b.to_ratfun(v)).product();
        let d: RatFun = self.den.iter().map(|b| b.to_ratfun(v)).product();
        &n / &d
    }

    /// Real parts read off the denominator factors.
    pub fn poles(&self) -> BTreeSet<Rational64> {
        self.den.iter().filter_map(|b| b.pole()).collect()
    }

    /// Cleared denominator factors, useful as cancellation candidates.
    pub fn den_polys(&self) -> Vec<Poly> {
        self.den.iter().map(|b| b.cleared(self.var)).collect()
    }
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |bs: &[Binom]| -> String {
            if bs.is_empty() {
                return "1".into();
            }
            bs.iter().map(|b| format!("({})", b.to_ratfun(self.var))).collect::<Vec<_>>().join("*")
        };
        match self.den.len() {
            0 => f.write_str(&side(&self.num)),
            1 => write!(f, "{}/{}", side(&self.num), side(&self.den)),
            _ => write!(f, "{}/({})", side(&self.num), side(&self.den)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::parse::parse_ratfun;

    #[test]
    fn heisenberg_product() {
        let mut p = ProductForm::new(Var::T);
        p.num.push(Binom::new(0, 1));
        p.den.push(Binom::new(1, 1));
        assert_eq!(p.to_ratfun().to_string(), "(1 - t)/(1 - q*t)");
        assert_eq!(p.poles().into_iter().collect::<Vec<_>>(), vec![Rational64::from(1)]);
    }

    #[test]
    fn display_parses_back() {
        let mut p = ProductForm::new(Var::U);
        p.num.push(Binom::new(0, 1));
        p.num.push(Binom::new(-1, 0));
        p.den.push(Binom::new(2, 1));
        p.den.push(Binom::new(-3, 2));
        assert_eq!(parse_ratfun(&p.to_string()).unwrap(), p.to_ratfun());
        p.den.clear();
        assert_eq!(parse_ratfun(&p.to_string()).unwrap(), p.to_ratfun());
    }

    #[test]
    fn negative_q_exponents() {
        let mut p = ProductForm::new(Var::U);
        p.num.push(Binom::new(-1, 0));
        p.den.push(Binom::new(-1, 1));
        assert_eq!(p.to_ratfun(), parse_ratfun("(q-1)/(q-u)").unwrap());
        assert_eq!(p.poles().into_iter().next(), Some(Rational64::from(-1)));
    }
}
