use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{Poly, RatFun, Var};
use crate::error::{domain, Result};

/// A subset `I = {i_1 < .. < i_l}` of `{0, .., n-1}` together with `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubsetIndex {
    n: usize,
    elems: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Result<SubsetIndex> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain(format!("repeated element in {elems:?}")));
        }
        if let Some(&top) = elems.last() {
            if top >= n {
                return Err(domain(format!("element {top} outside [0, {n})")));
            }
        }
        Ok(SubsetIndex { n, elems })
    }

    pub fn empty(n: usize) -> SubsetIndex {
        SubsetIndex { n, elems: Vec::new() }
    }

    /// Subset whose members are the set bits of `mask`.
    pub fn from_mask(n: usize, mask: u32) -> SubsetIndex {
        let elems = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        SubsetIndex { n, elems }
    }

    /// All `2^n` subsets of `{0, .., n-1}`.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetIndex> {
        (0u32..1 << n).map(move |m| SubsetIndex::from_mask(n, m))
    }

    /// All subsets of `{1, .., n-1}`.
    pub fn all_positive(n: usize) -> impl Iterator<Item = SubsetIndex> {
        SubsetIndex::all(n).filter(|s| !s.contains(0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn mask(&self) -> u32 {
        self.elems.iter().fold(0, |m, i| m | 1 << i)
    }

    /// Smallest element, or `n` for the empty set.
    pub fn i1(&self) -> usize {
        self.elems.first().copied().unwrap_or(self.n)
    }

    /// Block lengths `mu_0, .., mu_l` with `i_0 = 0` and `i_{l+1} = n`.
    pub fn mus(&self) -> Vec<usize> {
        let mut bounds = Vec::with_capacity(self.elems.len() + 2);
        bounds.push(0);
        bounds.extend(&self.elems);
        bounds.push(self.n);
        bounds.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Coefficients of the Gaussian binomial `(a choose b)_X` as a list.
pub fn gaussian_binomial_coeffs(a: usize, b: usize) -> Result<Vec<BigInt>> {
    if b > a {
        return Err(domain(format!("Gaussian binomial ({a} choose {b}) with b > a")));
    }
    // row[k] holds (j choose k) for the current j; q-Pascal:
    // (j choose k) = (j-1 choose k-1) + X^k (j-1 choose k)
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for j in 1..=a {
        let mut next = Vec::with_capacity(j + 1);
        for k in 0..=j.min(b) {
            let deg = k * (j - k);
            let mut c = vec![BigInt::zero(); deg + 1];
            if k >= 1 {
                for (e, x) in row[k - 1].iter().enumerate() {
                    c[e] += x;
                }
            }
            if k < j {
                for (e, x) in row[k].iter().enumerate() {
                    c[e + k] += x;
                }
            }
            next.push(c);
        }
        row = next;
    }
    Ok(row.swap_remove(b))
}

pub fn gaussian_binomial(a: usize, b: usize, var: Var) -> Result<Poly> {
    Ok(Poly::univariate(var, &gaussian_binomial_coeffs(a, b)?))
}

/// `(n choose i_l)(i_l choose i_{l-1}) .. (i_2 choose i_1)` in `var`.
pub fn q_multinomial(idx: &SubsetIndex, var: Var) -> Poly {
    let mut top = idx.n();
    let mut acc = Poly::one();
    for &i in idx.elems().iter().rev() {
        acc = &acc * &gaussian_binomial(top, i, var).expect("i < top");
        top = i;
    }
    acc
}

/// `prod_{i<k} (1 - base * step^i)`.
pub fn pochhammer(base: &RatFun, step: &RatFun, k: usize) -> RatFun {
    let mut factors = Vec::with_capacity(k);
    let mut x = base.clone();
    for i in 0..k {
        if i > 0 {
            x = &x * step;
        }
        factors.push(RatFun::one_minus(&x));
    }
    factors.into_iter().product()
}

/// Polynomial Pochhammer `prod_{i<k} (1 - base * step^i)` for polynomial
/// arguments; avoids all fraction bookkeeping.
pub fn pochhammer_poly(base: &Poly, step: &Poly, k: usize) -> Poly {
    let mut acc = Poly::one();
    let mut x = base.clone();
    for i in 0..k {
        if i > 0 {
            x = &x * step;
        }
        acc = &acc * &(&Poly::one() - &x);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::parse::{parse_poly, parse_ratfun};

    #[test]
    fn small_gaussian_binomials() {
        assert_eq!(gaussian_binomial(2, 1, Var::X).unwrap(), parse_poly("1+X").unwrap());
        assert_eq!(gaussian_binomial(5, 0, Var::X).unwrap(), Poly::one());
        assert_eq!(gaussian_binomial(4, 2, Var::X).unwrap(), parse_poly("1+X+2*X^2+X^3+X^4").unwrap());
        assert!(gaussian_binomial(1, 2, Var::X).is_err());
    }

    #[test]
    fn multinomials() {
        let x = Var::X;
        let idx = SubsetIndex::new(2, vec![1]).unwrap();
        assert_eq!(q_multinomial(&idx, x), parse_poly("1+X").unwrap());
        assert_eq!(q_multinomial(&SubsetIndex::empty(3), x), Poly::one());
        let idx = SubsetIndex::new(2, vec![0]).unwrap();
        assert_eq!(q_multinomial(&idx, x), Poly::one());
    }

    #[test]
    fn pochhammer_cases() {
        let x = RatFun::var(Var::X);
        let y = RatFun::var(Var::Y);
        assert_eq!(pochhammer(&x, &y, 0), RatFun::one());
        assert_eq!(pochhammer(&x, &y, 1), parse_ratfun("1-X").unwrap());
        let qi = parse_ratfun("1/q").unwrap();
        assert_eq!(pochhammer(&qi, &qi, 2), parse_ratfun("(1-1/q)*(1-1/q^2)").unwrap());
    }

    #[test]
    fn subset_conventions() {
        let e = SubsetIndex::empty(3);
        assert_eq!(e.i1(), 3);
        assert_eq!(e.mus(), vec![3]);
        let s = SubsetIndex::new(5, vec![1, 3]).unwrap();
        assert_eq!(s.mus(), vec![1, 2, 2]);
        assert_eq!(SubsetIndex::all(3).count(), 8);
        assert_eq!(SubsetIndex::all_positive(3).count(), 4);
        assert!(SubsetIndex::new(2, vec![2]).is_err());
    }
}
