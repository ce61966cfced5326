//! Rank counts over finite fields and elementary-divisor counts over Z/p^N
//! for the commutator matrices of the three lattices.

pub mod field;
pub mod snf;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::qalg::{SubsetIndex, Var, NVARS};
use crate::schemes::{f_poly, Family, GroupScheme};
use field::Gf;

/// Upper bound on the number of points any enumeration may visit.
pub const ENUM_LIMIT: u128 = 10_000_000;

fn check_size(size: u128) -> Result<()> {
    if size > ENUM_LIMIT {
        return Err(Error::Resource { size, limit: ENUM_LIMIT });
    }
    Ok(())
}

/// Run `f` on a rayon pool with `jobs` workers.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MatrixSpaceKind {
    /// Antisymmetric matrices of the given size; in characteristic 2 these are
    /// the symmetric ones with zero diagonal.
    Alt(usize),
    Mat(usize),
    Sym(usize),
}

impl fmt::Display for MatrixSpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSpaceKind::Alt(s) => write!(f, "Alt({s})"),
            MatrixSpaceKind::Mat(n) => write!(f, "Mat({n})"),
            MatrixSpaceKind::Sym(n) => write!(f, "Sym({n})"),
        }
    }
}

impl MatrixSpaceKind {
    pub fn dim(&self) -> usize {
        match *self {
            MatrixSpaceKind::Alt(s) => s * s.saturating_sub(1) / 2,
            MatrixSpaceKind::Mat(n) => n * n,
            MatrixSpaceKind::Sym(n) => n * (n + 1) / 2,
        }
    }

    /// `n` such that ranks are indexed by `i in 0..=n`.
    pub fn half(&self) -> usize {
        match *self {
            MatrixSpaceKind::Alt(s) => s / 2,
            MatrixSpaceKind::Mat(n) | MatrixSpaceKind::Sym(n) => n,
        }
    }

    /// Rank attached to corank index `i`.
    pub fn rank_of_index(&self, i: usize) -> usize {
        match self {
            MatrixSpaceKind::Alt(_) => 2 * (self.half() - i),
            _ => self.half() - i,
        }
    }

    /// The lattice whose commutator matrix specialises into this space.
    pub fn scheme(&self) -> Result<GroupScheme> {
        match *self {
            MatrixSpaceKind::Alt(s) => GroupScheme::new(Family::F, s / 2, s % 2),
            MatrixSpaceKind::Mat(n) => GroupScheme::new(Family::G, n, 0),
            MatrixSpaceKind::Sym(n) => GroupScheme::new(Family::H, n, 0),
        }
    }

    /// Fill a matrix from a coordinate vector (upper triangle row by row for
    /// Alt and Sym).
    fn build<T: Copy>(&self, coords: &[T], zero: T, neg: impl Fn(T) -> T) -> Vec<Vec<T>> {
        match *self {
            MatrixSpaceKind::Alt(s) => {
                let mut m = vec![vec![zero; s]; s];
                let mut k = 0;
                for i in 0..s {
                    for j in i + 1..s {
                        m[i][j] = coords[k];
                        m[j][i] = neg(coords[k]);
                        k += 1;
                    }
                }
                m
            }
            MatrixSpaceKind::Mat(n) => coords.chunks(n).map(|r| r.to_vec()).collect(),
            MatrixSpaceKind::Sym(n) => {
                let mut m = vec![vec![zero; n]; n];
                let mut k = 0;
                for i in 0..n {
                    for j in i..n {
                        m[i][j] = coords[k];
                        m[j][i] = coords[k];
                        k += 1;
                    }
                }
                m
            }
        }
    }
}

fn qpow(q: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// `(x; y)_k` over the rationals.
fn poch(x: &BigRational, y: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut cur = x.clone();
    for _ in 0..k {
        acc *= BigRational::one() - &cur;
        cur *= y;
    }
    acc
}

fn gauss(a: usize, b: usize, x: &BigRational) -> BigRational {
    let mut num = BigRational::one();
    let mut den = BigRational::one();
    // prod_{j<b} (1 - x^(a-j)) / (1 - x^(j+1))
    for j in 0..b {
        num *= BigRational::one() - qpow(x, (a - j) as i64);
        den *= BigRational::one() - qpow(x, (j + 1) as i64);
    }
    num / den
}

fn to_integer(r: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral(what()))
    }
}

fn choose2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Number of matrices of rank `rank_of_index(i)` in the space over `F_q`,
/// from the closed formulas.
pub fn rank_count_closed(space: MatrixSpaceKind, i: usize, q: u64) -> Result<BigInt> {
    let n = space.half();
    if i > n {
        return Err(domain(format!("corank index {i} exceeds {n}")));
    }
    let qr = BigRational::from_integer(BigInt::from(q));
    let qi = qr.recip();
    let q2i = &qi * &qi;
    let (ni, ii) = (n as i64, i as i64);
    let v = match space {
        MatrixSpaceKind::Alt(s) => {
            let d = (s % 2) as i64;
            gauss(n, i, &q2i)
                * poch(&qpow(&qr, -2 * (ii + d) - 1), &q2i, n - i)
                * qpow(&qr, choose2(2 * ni + d) - choose2(2 * ii + d))
        }
        MatrixSpaceKind::Mat(_) => {
            gauss(n, i, &qi) * poch(&qpow(&qr, -ii - 1), &qi, n - i) * qpow(&qr, ni * ni - ii * ii)
        }
        MatrixSpaceKind::Sym(_) => {
            poch(&qpow(&qr, -ii - 1), &qi, n - i) / poch(&q2i, &q2i, (n - i) / 2)
                * qpow(&qr, choose2(ni + 1) - choose2(ii + 1))
        }
    };
    to_integer(v, || format!("{space} index {i} at q={q}"))
}

/// Exhaustive rank histogram over `F_q`.
pub fn rank_count_enumerate(space: MatrixSpaceKind, q: usize) -> Result<BTreeMap<usize, u64>> {
    let f = Gf::new(q)?;
    let d = space.dim();
    check_size((q as u128).saturating_pow(d as u32))?;
    let total = q.pow(d as u32);
    let counts = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, k| {
            let coords: Vec<u8> = (0..d).map(|j| (k / q.pow(j as u32) % q) as u8).collect();
            let m = space.build(&coords, 0u8, |x| f.neg(x));
            *acc.entry(f.rank(m)).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(counts)
}

/// Commutator matrix of `g` specialised at the coordinate vector `w`.
pub fn commutator_matrix(g: &GroupScheme, w: &[i64]) -> Result<Vec<Vec<i64>>> {
    if w.len() != g.d_rank() {
        return Err(domain(format!("{} needs {} coordinates, got {}", g, g.d_rank(), w.len())));
    }
    let n = g.n;
    Ok(match g.family {
        Family::F => MatrixSpaceKind::Alt(g.matrix_size()).build(w, 0, |x| -x),
        Family::G | Family::H => {
            let block = if g.family == Family::G {
                MatrixSpaceKind::Mat(n).build(w, 0, |x| -x)
            } else {
                MatrixSpaceKind::Sym(n).build(w, 0, |x| -x)
            };
            let mut m = vec![vec![0; 2 * n]; 2 * n];
            for i in 0..n {
                for j in 0..n {
                    m[i][n + j] = block[i][j];
                    m[n + i][j] = -block[j][i];
                }
            }
            m
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ElemDivType {
    /// Sorted valuations of all elementary divisors, capped at `cap`.
    pub caps: Vec<u32>,
    pub cap: u32,
}

impl ElemDivType {
    /// The type of an antisymmetric matrix: one entry per pair of divisors,
    /// dropping the unpaired capped entry of odd size.
    pub fn paired(&self) -> Vec<u32> {
        self.caps[..self.caps.len() / 2 * 2].iter().step_by(2).copied().collect()
    }
}

pub fn elem_div_type(mat: &[Vec<i64>], p: u64, cap: u32) -> Result<ElemDivType> {
    Ok(ElemDivType { caps: snf::capped_valuations(mat, p, cap)?, cap })
}

/// Target type `nu` for `(I, r_I)`: ascending, block `j` (of length `mu_j`)
/// carries `sum_{k>j} r_{i_k}`, blocks listed from `j = l` down to `0`.
pub fn target_profile(idx: &SubsetIndex, r: &[u32]) -> Vec<u32> {
    let mus = idx.mus();
    let mut out = Vec::with_capacity(idx.n());
    for j in (0..mus.len()).rev() {
        let s: u32 = r[j..].iter().sum();
        out.extend(std::iter::repeat_n(s, mus[j]));
    }
    out
}

fn check_r(idx: &SubsetIndex, r: &[u32]) -> Result<()> {
    if r.len() != idx.len() || r.contains(&0) {
        return Err(domain(format!("r must be a positive vector of length {}", idx.len())));
    }
    Ok(())
}

/// `f_{G,I}(1/p) * p^(sum r_i a(G,i))`.
pub fn count_type_closed(g: &GroupScheme, idx: &SubsetIndex, r: &[u32], p: u64) -> Result<BigInt> {
    check_r(idx, r)?;
    let f = f_poly(g, idx)?;
    // evaluate f at X = 1/p through X -> 1/X followed by X = p
    let f = f.invert_var(Var::X);
    let mut vals: [BigInt; NVARS] = Default::default();
    vals[Var::X.index()] = BigInt::from(p);
    let mut v = f.eval_all(&vals)?;
    let mut e = 0usize;
    for (k, &i) in idx.elems().iter().enumerate() {
        e += r[k] as usize * g.a_exp(i)?;
    }
    v *= BigRational::from_integer(num_traits::pow(BigInt::from(p), e));
    to_integer(v, || format!("{g} I={idx} r={r:?} p={p}"))
}

/// Histogram of types over the primitive vectors of `(Z/p^N)^d`.
pub fn profile_histogram(g: &GroupScheme, p: u64, cap: u32) -> Result<BTreeMap<Vec<u32>, u64>> {
    let d = g.d_rank();
    if cap == 0 {
        return Ok(BTreeMap::from([(vec![0; g.n], 1)]));
    }
    let pn = p.checked_pow(cap).ok_or(Error::Overflow("p^N"))?;
    check_size((pn as u128).saturating_pow(d as u32))?;
    let total = pn.pow(d as u32);
    let p_i = p as i64;
    let hist = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Vec<u32>, u64>, k| {
            let w: Vec<i64> = (0..d).map(|j| (k / pn.pow(j as u32) % pn) as i64).collect();
            if w.iter().all(|x| x % p_i == 0) {
                return acc;
            }
            let mut m = commutator_matrix(g, &w).expect("length checked");
            let caps = snf::capped_valuations_local(&mut m, p_i, cap);
            let t = ElemDivType { caps, cap };
            *acc.entry(t.paired()).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(hist)
}

pub fn count_type_enumerate(g: &GroupScheme, idx: &SubsetIndex, r: &[u32], p: u64) -> Result<u64> {
    check_r(idx, r)?;
    let cap: u32 = r.iter().sum();
    let hist = profile_histogram(g, p, cap)?;
    Ok(hist.get(&target_profile(idx, r)).copied().unwrap_or(0))
}

/// Every `(I, r_I)` with `sum r = cap`, `r` positive.
pub fn admissible_types(n: usize, cap: u32) -> Vec<(SubsetIndex, Vec<u32>)> {
    let mut out = Vec::new();
    for idx in SubsetIndex::all(n) {
        let l = idx.len();
        if (l == 0) != (cap == 0) || (l as u32) > cap {
            continue;
        }
        // compositions of cap into l positive parts
        let mut stack = vec![(Vec::<u32>::new(), cap)];
        while let Some((parts, left)) = stack.pop() {
            if parts.len() == l {
                if left == 0 {
                    out.push((idx.clone(), parts));
                }
                continue;
            }
            let room = left.saturating_sub((l - parts.len() - 1) as u32);
            for x in 1..=room {
                let mut next = parts.clone();
                next.push(x);
                stack.push((next, left - x));
            }
        }
    }
    out.sort();
    out
}

/// Coefficients of `t^0..=t^order` of the local zeta function assembled from
/// enumerated type counts.
pub fn local_zeta_truncation_oracle(g: &GroupScheme, p: u64, order: usize) -> Result<Vec<BigInt>> {
    let mut coeffs = vec![BigInt::zero(); order + 1];
    let n = g.n;
    for cap in 0..=order as u32 {
        let types: Vec<_> = admissible_types(n, cap).into_iter().filter(|(idx, r)| texp(idx, r, n) <= order).collect();
        if types.is_empty() {
            continue;
        }
        let hist = profile_histogram(g, p, cap)?;
        for (idx, r) in types {
            let c = hist.get(&target_profile(&idx, &r)).copied().unwrap_or(0);
            coeffs[texp(&idx, &r, n)] += c;
        }
    }
    Ok(coeffs)
}

fn texp(idx: &SubsetIndex, r: &[u32], n: usize) -> usize {
    idx.elems().iter().zip(r).map(|(&i, &ri)| ri as usize * (n - i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(n: usize, e: &[usize]) -> SubsetIndex {
        SubsetIndex::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn closed_rank_examples() {
        assert_eq!(rank_count_closed(MatrixSpaceKind::Mat(2), 1, 2).unwrap(), BigInt::from(9));
        assert_eq!(rank_count_closed(MatrixSpaceKind::Sym(2), 0, 2).unwrap(), BigInt::from(4));
        assert_eq!(rank_count_closed(MatrixSpaceKind::Alt(4), 1, 2).unwrap(), BigInt::from(35));
    }

    #[test]
    fn enumerated_rank_examples() {
        let h = rank_count_enumerate(MatrixSpaceKind::Sym(2), 2).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1), (1, 3), (2, 4)]));
        let h = rank_count_enumerate(MatrixSpaceKind::Mat(1), 3).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1), (1, 2)]));
        let h = rank_count_enumerate(MatrixSpaceKind::Alt(2), 2).unwrap();
        assert_eq!(h, BTreeMap::from([(0, 1), (2, 1)]));
    }

    #[test]
    fn closed_counts_sum_to_space_size() {
        for q in [2u64, 3] {
            for space in [
                MatrixSpaceKind::Alt(2),
                MatrixSpaceKind::Alt(3),
                MatrixSpaceKind::Alt(4),
                MatrixSpaceKind::Mat(3),
                MatrixSpaceKind::Sym(3),
            ] {
                let s: BigInt = (0..=space.half()).map(|i| rank_count_closed(space, i, q).unwrap()).sum();
                assert_eq!(s, num_traits::pow(BigInt::from(q), space.dim()), "{space} q={q}");
            }
        }
    }

    #[test]
    fn commutator_matrices_of_heisenberg() {
        let expect = vec![vec![0, 5], vec![-5, 0]];
        for g in [GroupScheme::g(1), GroupScheme::f(1, 0), GroupScheme::h(1)] {
            assert_eq!(commutator_matrix(&g, &[5]).unwrap(), expect);
        }
        assert!(commutator_matrix(&GroupScheme::g(2), &[1, 2]).is_err());
    }

    #[test]
    fn profiles() {
        assert_eq!(target_profile(&sub(1, &[0]), &[1]), vec![0]);
        assert_eq!(target_profile(&SubsetIndex::empty(2), &[]), vec![0, 0]);
        assert_eq!(target_profile(&sub(2, &[1]), &[2]), vec![0, 2]);
        assert_eq!(target_profile(&sub(3, &[0, 2]), &[1, 2]), vec![0, 2, 2]);
        assert_eq!(target_profile(&sub(3, &[1, 2]), &[1, 2]), vec![0, 2, 3]);
    }

    #[test]
    fn heisenberg_counts() {
        let g = GroupScheme::g(1);
        assert_eq!(count_type_closed(&g, &sub(1, &[0]), &[1], 2).unwrap(), BigInt::from(1));
        assert_eq!(count_type_enumerate(&g, &sub(1, &[0]), &[1], 2).unwrap(), 1);
        let h = profile_histogram(&GroupScheme::h(1), 2, 0).unwrap();
        assert_eq!(h.values().sum::<u64>(), 1);
    }

    #[test]
    fn closed_equals_enumerated_small() {
        for g in [GroupScheme::f(2, 0), GroupScheme::g(2), GroupScheme::h(2)] {
            for cap in 1..=2 {
                let hist = profile_histogram(&g, 2, cap).unwrap();
                for (idx, r) in admissible_types(2, cap) {
                    let closed = count_type_closed(&g, &idx, &r, 2).unwrap();
                    let seen = hist.get(&target_profile(&idx, &r)).copied().unwrap_or(0);
                    assert_eq!(closed, BigInt::from(seen), "{g} I={idx} r={r:?}");
                }
            }
        }
    }

    #[test]
    fn truncation_matches_heisenberg_series() {
        let c = local_zeta_truncation_oracle(&GroupScheme::g(1), 2, 1).unwrap();
        assert_eq!(c, vec![BigInt::from(1), BigInt::from(1)]);
    }
}
