//! The group schemes `F_{n,delta}`, `G_n`, `H_n` and their local zeta
//! functions, written in `q` and `t = q^{-s}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::qalg::{
    pochhammer_poly, q_multinomial, rat_equal, Binom, Monomial, Poly, ProductForm, RatFun, SubsetIndex, Var,
};

/// A local zeta function as a rational function in `q` and `t`.
pub type LocalZeta = RatFun;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    F,
    G,
    H,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            "H" | "h" => Ok(Family::H),
            _ => Err(domain(format!("unknown family '{s}', expected F, G or H"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::F => "F",
            Family::G => "G",
            Family::H => "H",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupScheme {
    pub family: Family,
    pub n: usize,
    pub delta: usize,
}

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

impl GroupScheme {
    pub fn new(family: Family, n: usize, delta: usize) -> Result<GroupScheme> {
        if n == 0 {
            return Err(domain("n must be positive"));
        }
        if delta > 1 || (family != Family::F && delta != 0) {
            return Err(domain(format!("delta = {delta} is not allowed for family {family}")));
        }
        Ok(GroupScheme { family, n, delta })
    }

    pub fn f(n: usize, delta: usize) -> GroupScheme {
        GroupScheme::new(Family::F, n, delta).expect("valid F parameters")
    }

    pub fn g(n: usize) -> GroupScheme {
        GroupScheme::new(Family::G, n, 0).expect("valid G parameters")
    }

    pub fn h(n: usize) -> GroupScheme {
        GroupScheme::new(Family::H, n, 0).expect("valid H parameters")
    }

    /// Every scheme with `n <= max_n` in the given families, both deltas for F.
    pub fn all_up_to(max_n: usize) -> Vec<GroupScheme> {
        let mut out = Vec::new();
        for n in 1..=max_n {
            out.push(GroupScheme::f(n, 0));
            out.push(GroupScheme::f(n, 1));
            out.push(GroupScheme::g(n));
            out.push(GroupScheme::h(n));
        }
        out
    }

    pub fn m(&self) -> usize {
        self.n / 2
    }

    pub fn epsilon(&self) -> usize {
        self.n % 2
    }

    /// Rank of the derived lattice, the exponent in the functional equation.
    pub fn d_rank(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::F => choose2(2 * n + self.delta),
            Family::G => n * n,
            Family::H => choose2(n + 1),
        }
    }

    /// Abscissa of convergence.
    pub fn alpha(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::F => 2 * (2 * n + self.delta - 1),
            Family::G => 2 * n,
            Family::H => n + 1,
        }
    }

    pub fn a_exp(&self, i: usize) -> Result<usize> {
        let n = self.n;
        if i >= n {
            return Err(domain(format!("index {i} outside [0, {n})")));
        }
        let d = self.delta;
        Ok(match self.family {
            Family::F => choose2(2 * n + d) - choose2(2 * i + d),
            Family::G => n * n - i * i,
            Family::H => choose2(n + 1) - choose2(i + 1),
        })
    }

    /// Size of the commutator matrix.
    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::F => 2 * self.n + self.delta,
            Family::G | Family::H => 2 * self.n,
        }
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::F => format!("F_{{{},{}}}", self.n, self.delta),
            f => format!("{f}_{}", self.n),
        }
    }
}

impl fmt::Display for GroupScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn xmono(e: usize) -> Poly {
    Poly::term(1, Monomial::var(Var::X, e as u32))
}

/// `f_{G,I}(X)`. A polynomial for F and G; for H the quotient is formed as a
/// fraction and reduces whenever it divides exactly.
pub fn f_poly(g: &GroupScheme, idx: &SubsetIndex) -> Result<RatFun> {
    if idx.n() != g.n {
        return Err(domain(format!("subset of [0,{}) used with {}", idx.n(), g)));
    }
    let n = g.n;
    let i1 = idx.i1();
    Ok(match g.family {
        Family::F => {
            let b = q_multinomial(idx, Var::X).inflate(Var::X, 2);
            let p = pochhammer_poly(&xmono(2 * (i1 + g.delta) + 1), &xmono(2), n - i1);
            RatFun::from(&b * &p)
        }
        Family::G => {
            let b = q_multinomial(idx, Var::X);
            RatFun::from(&b * &pochhammer_poly(&xmono(i1 + 1), &Poly::var(Var::X), n - i1))
        }
        Family::H => {
            let den: Poly = idx.mus()[1..].iter().map(|mu| pochhammer_poly(&xmono(2), &xmono(2), mu / 2)).product();
            let num = pochhammer_poly(&xmono(i1 + 1), &Poly::var(Var::X), n - i1);
            RatFun::new(num, den)?
        }
    })
}

/// `1 - q^{a(g,i)} t^{n-i}` for each `i`.
fn additive_factors(g: &GroupScheme) -> Vec<Poly> {
    (0..g.n)
        .map(|i| {
            let a = g.a_exp(i).expect("i < n") as u32;
            Poly::one_minus(1, Monomial::from_pairs(&[(Var::Q, a), (Var::T, (g.n - i) as u32)]))
        })
        .collect()
}

/// Sum over all subsets of `f_{G,I}(q^{-1}) prod_{i in I} gp(q^{a_i} t^{n-i})`.
pub fn local_zeta_additive(g: &GroupScheme) -> Result<LocalZeta> {
    let n = g.n;
    let factors = additive_factors(g);
    let mut terms = Vec::with_capacity(1 << n);
    for idx in SubsetIndex::all(n) {
        let f = f_poly(g, &idx)?;
        let (num, den) = f.into_parts();
        let f = RatFun::new(num.rename(Var::X, Var::Q), den.rename(Var::X, Var::Q))?.invert_var(Var::Q);
        let mut t = f;
        for &i in idx.elems() {
            let one_minus = &factors[i];
            let m = &Poly::one() - one_minus;
            t = &t * &RatFun::new(m, one_minus.clone())?;
        }
        terms.push(t);
    }
    // The type H quotients all divide exactly, so every term denominator is a
    // monomial times a product of additive factors.
    let base: Poly = factors.iter().cloned().product();
    let sum = RatFun::sum_over(&terms, &base)?;
    // Cancellation candidates: the additive factors, the multiplicative
    // denominator factors and the cofactors of the latter in the former.
    let dens = product_form(g).den_polys();
    let mut cands = factors.clone();
    for f in &factors {
        cands.extend(dens.iter().filter_map(|d| f.div_exact(d)));
    }
    cands.extend(dens);
    Ok(sum.cancel(&cands))
}

fn f_product(n: usize, delta: usize) -> ProductForm {
    let mut p = ProductForm::new(Var::T);
    for i in 0..n as i64 {
        p.num.push(Binom::new(2 * i, 1));
        p.den.push(Binom::new(2 * (n + delta) as i64 - 1 + 2 * i, 1));
    }
    p
}

/// The multiplicative local formula as a product of binomials in `q`, `t`.
/// Numerator and denominator factors never coincide.
pub fn product_form(g: &GroupScheme) -> ProductForm {
    let n = g.n as i64;
    match g.family {
        Family::F => f_product(g.n, g.delta),
        Family::G => {
            let mut p = ProductForm::new(Var::T);
            for i in 0..n {
                p.num.push(Binom::new(i, 1));
                p.den.push(Binom::new(n + i, 1));
            }
            p
        }
        Family::H => {
            let (m, eps) = (g.m() as i64, g.epsilon() as i64);
            let mut p = ProductForm::new(Var::T);
            p.num.push(Binom::new(0, 1));
            p.den.push(Binom::new(n, 1));
            for i in 0..m {
                p.num.push(Binom::new(2 + 2 * i, 2));
                p.den.push(Binom::new(2 * (m + eps) + 1 + 2 * i, 2));
            }
            p
        }
    }
}

pub fn local_zeta_multiplicative(g: &GroupScheme) -> LocalZeta {
    product_form(g).to_ratfun()
}

/// `Z(1/q, 1/t) = q^d Z(q, t)`.
pub fn check_functional_equation(g: &GroupScheme) -> Result<bool> {
    let z = local_zeta_multiplicative(g);
    let flipped =
        z.substitute(&[(Var::Q, RatFun::laurent(1, &[(Var::Q, -1)])), (Var::T, RatFun::laurent(1, &[(Var::T, -1)]))])?;
    let scaled = &RatFun::laurent(1, &[(Var::Q, g.d_rank() as i64)]) * &z;
    Ok(rat_equal(&flipped, &scaled))
}

/// `Z_{H_n}(s) = (1-t)/(1-q^n t) * Z_{F_{m,eps}}(2s-2)`, where the argument
/// shift sends `t` to `q^2 t^2`.
pub fn check_h_reduction(n: usize) -> Result<bool> {
    let h = GroupScheme::new(Family::H, n, 0)?;
    let (m, eps) = (h.m(), h.epsilon());
    let f = f_product(m, eps).to_ratfun();
    let shifted = f.substitute(&[(Var::T, RatFun::laurent(1, &[(Var::Q, 2), (Var::T, 2)]))])?;
    let lead = &Binom::new(0, 1).to_ratfun(Var::T) / &Binom::new(n as i64, 1).to_ratfun(Var::T);
    Ok(rat_equal(&local_zeta_multiplicative(&h), &(&lead * &shifted)))
}

/// Real parts of the poles, from the closed description.
pub fn pole_set(g: &GroupScheme) -> BTreeSet<Rational64> {
    let n = g.n as i64;
    match g.family {
        Family::F => (0..n).map(|i| Rational64::from(2 * (n + i + g.delta as i64) - 1)).collect(),
        Family::G => (0..n).map(|i| Rational64::from(n + i)).collect(),
        Family::H => {
            let (m, eps) = (g.m() as i64, g.epsilon() as i64);
            let mut s: BTreeSet<_> = (0..m).map(|i| Rational64::new(2 * (m + i + eps) + 1, 2)).collect();
            s.insert(Rational64::from(n));
            s
        }
    }
}

/// Real parts read off the denominator factors of the multiplicative form.
pub fn pole_set_from_denominator(g: &GroupScheme) -> BTreeSet<Rational64> {
    product_form(g).poles()
}

/// Coefficients of `t^0..=t^order` at an integer value of `q`.
pub fn local_coefficients(g: &GroupScheme, q_value: u64, order: usize) -> Result<Vec<BigInt>> {
    if q_value < 2 {
        return Err(domain("q must be at least 2"));
    }
    product_series(&product_form(g), &BigInt::from(q_value), order)
}

/// Truncated power series of a binomial product with nonnegative `q`
/// exponents, at an integer `q`.
pub fn product_series(p: &ProductForm, q: &BigInt, order: usize) -> Result<Vec<BigInt>> {
    let mut s = vec![BigInt::zero(); order + 1];
    s[0] = BigInt::one();
    let coeff = |b: &Binom| -> Result<BigInt> {
        if b.a < 0 {
            return Err(domain("negative q exponent in an integral series"));
        }
        Ok(num_traits::pow(q.clone(), b.a as usize))
    };
    for b in &p.num {
        let c = coeff(b)?;
        let step = b.b as usize;
        for k in (step..=order).rev() {
            let prev = &s[k - step] * &c;
            s[k] -= prev;
        }
    }
    for b in &p.den {
        let c = coeff(b)?;
        let step = b.b as usize;
        if step == 0 {
            return Err(Error::NotExpandable(p.var));
        }
        // divide by (1 - c v^step): s_k += c * s_{k-step}, ascending
        for k in step..=order {
            let prev = &s[k - step] * &c;
            s[k] += prev;
        }
    }
    if s.iter().any(|c| c.is_negative()) {
        return Err(Error::NonIntegral(format!("negative coefficient in {p}")));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::parse_ratfun;

    fn r(s: &str) -> RatFun {
        parse_ratfun(s).unwrap()
    }

    fn sub(n: usize, e: &[usize]) -> SubsetIndex {
        SubsetIndex::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn f_polys() {
        assert_eq!(f_poly(&GroupScheme::g(1), &sub(1, &[0])).unwrap(), r("1-X"));
        assert_eq!(f_poly(&GroupScheme::h(1), &sub(1, &[0])).unwrap(), r("1-X"));
        for g in GroupScheme::all_up_to(3) {
            assert_eq!(f_poly(&g, &SubsetIndex::empty(g.n)).unwrap(), RatFun::one());
        }
        assert!(f_poly(&GroupScheme::g(2), &SubsetIndex::empty(3)).is_err());
    }

    #[test]
    fn type_h_f_polys_are_polynomials() {
        for n in 1..=6 {
            for idx in SubsetIndex::all(n) {
                let f = f_poly(&GroupScheme::h(n), &idx).unwrap();
                assert!(f.is_polynomial(), "H_{n} {idx}: {f}");
            }
        }
    }

    #[test]
    fn exponents() {
        assert_eq!(GroupScheme::g(1).a_exp(0).unwrap(), 1);
        assert_eq!(GroupScheme::f(2, 0).a_exp(0).unwrap(), 6);
        assert_eq!(GroupScheme::h(2).a_exp(1).unwrap(), 2);
        assert!(GroupScheme::h(2).a_exp(2).is_err());
        assert!(GroupScheme::new(Family::G, 2, 1).is_err());
    }

    #[test]
    fn heisenberg_three_ways() {
        let heis = r("(1-t)/(1-q*t)");
        for g in [GroupScheme::g(1), GroupScheme::f(1, 0), GroupScheme::h(1)] {
            assert_eq!(local_zeta_additive(&g).unwrap(), heis, "{g}");
            assert_eq!(local_zeta_multiplicative(&g), heis, "{g}");
        }
        assert_eq!(local_zeta_additive(&GroupScheme::g(1)).unwrap().to_string(), "(1 - t)/(1 - q*t)");
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(local_zeta_multiplicative(&GroupScheme::g(2)), r("(1-t)*(1-q*t)/((1-q^2*t)*(1-q^3*t))"));
        assert_eq!(local_zeta_multiplicative(&GroupScheme::h(2)), r("((1-t)/(1-q^2*t))*(1-q^2*t^2)/(1-q^3*t^2)"));
    }

    #[test]
    fn functional_equations_and_reduction() {
        for g in [GroupScheme::g(1), GroupScheme::f(2, 1), GroupScheme::h(3)] {
            assert!(check_functional_equation(&g).unwrap(), "{g}");
        }
        for n in [1, 2, 5] {
            assert!(check_h_reduction(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn poles() {
        let set =
            |v: &[(i64, i64)]| -> BTreeSet<Rational64> { v.iter().map(|&(a, b)| Rational64::new(a, b)).collect() };
        assert_eq!(pole_set(&GroupScheme::g(2)), set(&[(2, 1), (3, 1)]));
        assert_eq!(pole_set(&GroupScheme::h(2)), set(&[(2, 1), (3, 2)]));
        assert_eq!(pole_set(&GroupScheme::f(1, 0)), set(&[(1, 1)]));
        for g in GroupScheme::all_up_to(6) {
            assert_eq!(pole_set(&g), pole_set_from_denominator(&g), "{g}");
            let max = *pole_set(&g).iter().next_back().unwrap();
            assert_eq!(max + 1, Rational64::from(g.alpha() as i64), "{g}");
        }
    }

    #[test]
    fn coefficients() {
        let c = |g: GroupScheme, q, k| -> Vec<i64> {
            local_coefficients(&g, q, k).unwrap().iter().map(|x| i64::try_from(x).unwrap()).collect()
        };
        assert_eq!(c(GroupScheme::g(1), 2, 2), vec![1, 1, 2]);
        assert_eq!(c(GroupScheme::g(1), 3, 1), vec![1, 2]);
        assert_eq!(c(GroupScheme::h(3), 5, 0), vec![1]);
    }

    #[test]
    fn numeric_series_agrees_with_symbolic_expansion() {
        for g in GroupScheme::all_up_to(3) {
            let z = local_zeta_multiplicative(&g).eval_var(Var::Q, &BigInt::from(3)).unwrap();
            let sym = z.series_coeffs(Var::T, 5).unwrap();
            let num = local_coefficients(&g, 3, 5).unwrap();
            for (a, b) in sym.iter().zip(&num) {
                assert_eq!(a, &RatFun::constant(b.clone()), "{g}");
            }
        }
    }
}
