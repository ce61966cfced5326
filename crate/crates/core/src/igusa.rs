//! Igusa local zeta functions of the Pfaffian on `Alt_{2n}` and the
//! determinant on `Mat_n` and `Sym_n`, written in `q` and `u = q^{-s}`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::ENUM_LIMIT;
use crate::error::{domain, Error, Result};
use crate::qalg::{rat_equal, Binom, ProductForm, RatFun, Var};
use crate::schemes::{pole_set, Family, GroupScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PvsKind {
    /// Pfaffian on antisymmetric matrices of the given even size.
    AltPfaffian(usize),
    MatDet(usize),
    SymDet(usize),
}

impl fmt::Display for PvsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PvsKind::AltPfaffian(s) => write!(f, "AltPfaffian({s})"),
            PvsKind::MatDet(n) => write!(f, "MatDet({n})"),
            PvsKind::SymDet(n) => write!(f, "SymDet({n})"),
        }
    }
}

impl PvsKind {
    pub fn new_alt(size: usize) -> Result<PvsKind> {
        if size == 0 || size % 2 == 1 {
            return Err(domain(format!("Pfaffian needs a positive even size, got {size}")));
        }
        Ok(PvsKind::AltPfaffian(size))
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match *self {
            PvsKind::AltPfaffian(s) => s * (s - 1) / 2,
            PvsKind::MatDet(n) => n * n,
            PvsKind::SymDet(n) => n * (n + 1) / 2,
        }
    }

    /// Matrix for a coordinate vector, laid out as in the counting module.
    pub fn matrix(&self, x: &[i64]) -> Vec<Vec<i64>> {
        match *self {
            PvsKind::AltPfaffian(s) => {
                let mut m = vec![vec![0; s]; s];
                let mut k = 0;
                for i in 0..s {
                    for j in i + 1..s {
                        m[i][j] = x[k];
                        m[j][i] = -x[k];
                        k += 1;
                    }
                }
                m
            }
            PvsKind::MatDet(n) => x.chunks(n).map(|r| r.to_vec()).collect(),
            PvsKind::SymDet(n) => {
                let mut m = vec![vec![0; n]; n];
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        m[i][j] = x[k];
                        m[j][i] = x[k];
                        k += 1;
                    }
                }
                m
            }
        }
    }

    /// The relative invariant at a coordinate vector.
    pub fn invariant(&self, x: &[i64]) -> i128 {
        let m = self.matrix(x);
        match self {
            PvsKind::AltPfaffian(_) => pfaffian(&m).expect("antisymmetric by construction"),
            _ => determinant(&m),
        }
    }
}

/// The closed form as a product of binomials in `q` and `u`.
pub fn igusa_product(kind: PvsKind) -> ProductForm {
    let mut p = ProductForm::new(Var::U);
    match kind {
        PvsKind::AltPfaffian(s) => {
            for i in 0..(s / 2) as i64 {
                p.num.push(Binom::new(-1 - 2 * i, 0));
                p.den.push(Binom::new(-1 - 2 * i, 1));
            }
        }
        PvsKind::MatDet(n) => {
            for i in 0..n as i64 {
                p.num.push(Binom::new(-1 - i, 0));
                p.den.push(Binom::new(-1 - i, 1));
            }
        }
        PvsKind::SymDet(n) => {
            let (m, eps) = (n / 2, n % 2);
            let n = n as i64;
            // 1 - q^{-(1-eps)(s+1) - n}
            p.num.push(if eps == 1 { Binom::new(-n, 0) } else { Binom::new(-n - 1, 1) });
            p.den.push(Binom::new(-1, 1));
            for i in 0..m as i64 {
                p.num.push(Binom::new(-1 - 2 * i, 0));
                p.den.push(Binom::new(-3 - 2 * i, 2));
            }
        }
    }
    p
}

pub fn igusa_closed(kind: PvsKind) -> RatFun {
    igusa_product(kind).to_ratfun()
}

/// Coefficients of `u^0..=u^order` of the closed form at an integer `q`.
pub fn closed_coeffs(kind: PvsKind, q: u64, order: usize) -> Vec<BigRational> {
    let p = igusa_product(kind);
    let qr = BigRational::from_integer(BigInt::from(q));
    let qpow = |a: i64| -> BigRational {
        if a >= 0 {
            num_traits::pow(qr.clone(), a as usize)
        } else {
            num_traits::pow(qr.recip(), (-a) as usize)
        }
    };
    let mut s = vec![BigRational::zero(); order + 1];
    s[0] = BigRational::one();
    for b in &p.num {
        let c = qpow(b.a);
        let step = b.b as usize;
        if step == 0 {
            let f = BigRational::one() - c;
            s.iter_mut().for_each(|x| *x *= &f);
            continue;
        }
        for k in (step..=order).rev() {
            let prev = &s[k - step] * &c;
            s[k] -= prev;
        }
    }
    for b in &p.den {
        let c = qpow(b.a);
        let step = b.b as usize;
        for k in step..=order {
            let prev = &s[k - step] * &c;
            s[k] += prev;
        }
    }
    s
}

/// Pfaffian by expansion along the first row; checks `Pf^2 = det`.
pub fn pfaffian(m: &[Vec<i64>]) -> Result<i128> {
    let s = m.len();
    if s % 2 == 1 || m.iter().any(|r| r.len() != s) {
        return Err(domain("Pfaffian needs a square matrix of even size"));
    }
    for i in 0..s {
        for j in 0..s {
            if m[i][j] != -m[j][i] {
                return Err(domain("Pfaffian needs an antisymmetric matrix"));
            }
        }
    }
    let idx: Vec<usize> = (0..s).collect();
    let pf = pf_rec(m, &idx);
    if s <= 6 {
        debug_assert_eq!(pf * pf, determinant(m));
    }
    Ok(pf)
}

fn pf_rec(m: &[Vec<i64>], idx: &[usize]) -> i128 {
    if idx.is_empty() {
        return 1;
    }
    let first = idx[0];
    let mut acc = 0i128;
    for k in 1..idx.len() {
        let a = m[first][idx[k]] as i128;
        if a == 0 {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&j| j != idx[k]).collect();
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc += sign * a * pf_rec(m, &rest);
    }
    acc
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

fn v_is(x: i128, p: i128, k: u32) -> bool {
    // valuation of x is exactly k, decided modulo p^(k+1)
    let pk = p.pow(k);
    x.rem_euclid(pk * p) != 0 && x.rem_euclid(pk) == 0
}

/// Measure of `{x : v_p(f(x)) = k}` by enumerating residues mod `p^(k+1)`.
pub fn igusa_coeff_oracle(kind: PvsKind, p: u64, k: u32) -> Result<BigRational> {
    let d = kind.dim();
    let modulus = p.pow(k + 1);
    let size = (modulus as u128).saturating_pow(d as u32);
    if size > ENUM_LIMIT {
        return match kind {
            PvsKind::AltPfaffian(4) | PvsKind::MatDet(2) => convolution_oracle(kind, p, k),
            _ => Err(Error::Resource { size, limit: ENUM_LIMIT }),
        };
    }
    let total = modulus.pow(d as u32);
    let pi = p as i128;
    let hits: u64 = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let x: Vec<i64> = (0..d).map(|j| (idx / modulus.pow(j as u32) % modulus) as i64).collect();
            v_is(kind.invariant(&x), pi, k)
        })
        .count() as u64;
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Exact count for invariants that are sums of products of disjoint
/// coordinate pairs: `y12 y34 - y13 y24 + y14 y23` and `ad - bc`. The
/// residue distribution of each product is convolved mod `p^(k+1)`.
pub fn convolution_oracle(kind: PvsKind, p: u64, k: u32) -> Result<BigRational> {
    let signs: &[i64] = match kind {
        PvsKind::AltPfaffian(4) => &[1, -1, 1],
        PvsKind::MatDet(2) => &[1, -1],
        _ => return Err(domain(format!("no product decomposition for {kind}"))),
    };
    let m = p.pow(k + 1) as usize;
    let mut prod = vec![0u128; m];
    for a in 0..m {
        for b in 0..m {
            prod[a * b % m] += 1;
        }
    }
    let mut dist = vec![0u128; m];
    dist[0] = 1;
    for &s in signs {
        let mut next = vec![0u128; m];
        for (x, &cx) in dist.iter().enumerate() {
            if cx == 0 {
                continue;
            }
            for (y, &cy) in prod.iter().enumerate() {
                let z = (x as i64 + s * y as i64).rem_euclid(m as i64) as usize;
                next[z] += cx * cy;
            }
        }
        dist = next;
    }
    let pi = p as i128;
    let hits: u128 = dist.iter().enumerate().filter(|(c, _)| v_is(*c as i128, pi, k)).map(|(_, &n)| n).sum();
    let total = BigInt::from(m).pow(kind.dim() as u32);
    Ok(BigRational::new(BigInt::from(hits), total))
}

/// `Z_Sym(2n) = (1 - q^{-2n-1} u)/(1 - q^{-1} u) * Z_Alt(2n)(2s + 2)`, where
/// the shift sends `u` to `q^{-2} u^2`.
pub fn verify_sym_alt_relation(n: usize) -> Result<bool> {
    let alt = igusa_closed(PvsKind::new_alt(2 * n)?);
    let shifted = alt.substitute(&[(Var::U, RatFun::laurent(1, &[(Var::Q, -2), (Var::U, 2)]))])?;
    let lead = &Binom::new(-2 * n as i64 - 1, 1).to_ratfun(Var::U) / &Binom::new(-1, 1).to_ratfun(Var::U);
    Ok(rat_equal(&igusa_closed(PvsKind::SymDet(2 * n)), &(&lead * &shifted)))
}

pub fn pvs_pole_set(kind: PvsKind) -> BTreeSet<Rational64> {
    igusa_product(kind).poles()
}

/// The invariant matched with each family.
pub fn matched_kind(g: &GroupScheme) -> PvsKind {
    match g.family {
        Family::F => PvsKind::AltPfaffian(2 * g.n),
        Family::G => PvsKind::MatDet(g.n),
        Family::H => PvsKind::SymDet(g.n),
    }
}

/// Poles of the local zeta function shifted by the abscissa equal the poles
/// of the matched Igusa zeta function.
pub fn verify_pole_translation(g: &GroupScheme) -> bool {
    let shift = Rational64::from(g.alpha() as i64);
    let moved: BTreeSet<Rational64> = pole_set(g).into_iter().map(|x| x - shift).collect();
    moved == pvs_pole_set(matched_kind(g))
}

/// `{a(H_n,i)/(n-i)} - alpha(H_n) = {-(i+2)/2}`.
pub fn verify_bs_candidates(n: usize) -> Result<bool> {
    let h = GroupScheme::new(Family::H, n, 0)?;
    let alpha = Rational64::from(h.alpha() as i64);
    let mut lhs = BTreeSet::new();
    for i in 0..n {
        lhs.insert(Rational64::new(h.a_exp(i)? as i64, (n - i) as i64) - alpha);
    }
    let rhs: BTreeSet<_> = (0..n as i64).map(|i| Rational64::new(-(i + 2), 2)).collect();
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{rank_count_closed, MatrixSpaceKind};
    use crate::qalg::parse_ratfun;

    fn rset(v: &[(i64, i64)]) -> BTreeSet<Rational64> {
        v.iter().map(|&(a, b)| Rational64::new(a, b)).collect()
    }

    #[test]
    fn closed_examples() {
        let base = parse_ratfun("(q-1)/(q-u)").unwrap();
        assert_eq!(igusa_closed(PvsKind::MatDet(1)), base);
        assert_eq!(igusa_closed(PvsKind::SymDet(1)), base);
        assert_eq!(igusa_closed(PvsKind::AltPfaffian(2)), base);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(igusa_coeff_oracle(PvsKind::MatDet(1), 2, 0).unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(igusa_coeff_oracle(PvsKind::MatDet(2), 2, 0).unwrap(), BigRational::new(6.into(), 16.into()));
        assert_eq!(igusa_coeff_oracle(PvsKind::SymDet(2), 3, 0).unwrap(), BigRational::new(2.into(), 3.into()));
    }

    #[test]
    fn convolution_agrees_with_enumeration() {
        for (kind, p, k) in [
            (PvsKind::AltPfaffian(4), 2, 0),
            (PvsKind::AltPfaffian(4), 2, 2),
            (PvsKind::AltPfaffian(4), 3, 1),
            (PvsKind::MatDet(2), 3, 2),
        ] {
            assert_eq!(
                convolution_oracle(kind, p, k).unwrap(),
                igusa_coeff_oracle(kind, p, k).unwrap(),
                "{kind} p={p} k={k}"
            );
        }
    }

    #[test]
    fn pfaffians() {
        assert_eq!(pfaffian(&[vec![0, 3], vec![-3, 0]]).unwrap(), 3);
        assert_eq!(pfaffian(&vec![vec![0; 4]; 4]).unwrap(), 0);
        // y12 y34 - y13 y24 + y14 y23 with y = 2, 3, 5, 7, 11, 13
        let m = PvsKind::AltPfaffian(4).matrix(&[2, 3, 5, 7, 11, 13]);
        assert_eq!(pfaffian(&m).unwrap(), 2 * 13 - 3 * 11 + 5 * 7);
        assert!(pfaffian(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(pfaffian(&[vec![0]]).is_err());
    }

    #[test]
    fn poles_and_relations() {
        assert_eq!(pvs_pole_set(PvsKind::MatDet(2)), rset(&[(-1, 1), (-2, 1)]));
        assert_eq!(pvs_pole_set(PvsKind::AltPfaffian(4)), rset(&[(-1, 1), (-3, 1)]));
        assert_eq!(pvs_pole_set(PvsKind::SymDet(2)), rset(&[(-1, 1), (-3, 2)]));
        for n in 1..=4 {
            assert!(verify_sym_alt_relation(n).unwrap());
            assert!(verify_bs_candidates(n).unwrap());
        }
        for g in GroupScheme::all_up_to(4) {
            assert!(verify_pole_translation(&g), "{g}");
        }
    }

    #[test]
    fn constant_term_is_full_rank_density() {
        let cases = [
            (PvsKind::AltPfaffian(2), MatrixSpaceKind::Alt(2)),
            (PvsKind::AltPfaffian(4), MatrixSpaceKind::Alt(4)),
            (PvsKind::MatDet(2), MatrixSpaceKind::Mat(2)),
            (PvsKind::SymDet(2), MatrixSpaceKind::Sym(2)),
            (PvsKind::SymDet(3), MatrixSpaceKind::Sym(3)),
        ];
        for q in [2u64, 3, 5] {
            for (kind, space) in cases {
                let top = rank_count_closed(space, 0, q).unwrap();
                let density = BigRational::new(top, BigInt::from(q).pow(space.dim() as u32));
                assert_eq!(closed_coeffs(kind, q, 0)[0], density, "{kind} q={q}");
            }
        }
    }
}
