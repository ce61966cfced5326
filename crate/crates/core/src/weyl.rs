//! Signed permutations (type B) and permutations (type A): statistics and
//! descent-class generating functions.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::qalg::{
    gaussian_binomial, pochhammer_poly, q_multinomial, rat_equal, Monomial, Poly, RatFun, SubsetIndex, Var,
};
use crate::schemes::{f_poly, GroupScheme};

pub const MAX_ENUM_N: usize = 7;

/// Window `[a_1, .., a_n]` of a signed permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SignedPerm(Vec<i32>);

impl SignedPerm {
    pub fn new(window: Vec<i32>) -> Result<SignedPerm> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &a in &window {
            let k = a.unsigned_abs() as usize;
            if k == 0 || k > n || seen[k] {
                return Err(domain(format!("{window:?} is not a signed permutation")));
            }
            seen[k] = true;
        }
        Ok(SignedPerm(window))
    }

    pub fn identity(n: usize) -> SignedPerm {
        SignedPerm((1..=n as i32).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn window(&self) -> &[i32] {
        &self.0
    }

    /// `w(x)` for `x` in `[-n, n]`, extended by `w(-x) = -w(x)`, `w(0) = 0`.
    pub fn apply(&self, x: i32) -> i32 {
        match x {
            0 => 0,
            x if x > 0 => self.0[x as usize - 1],
            x => -self.0[(-x) as usize - 1],
        }
    }

    /// Right multiplication by the Coxeter generator `s_i`.
    pub fn times_generator(&self, i: usize) -> SignedPerm {
        let mut w = self.0.clone();
        if i == 0 {
            w[0] = -w[0];
        } else {
            w.swap(i - 1, i);
        }
        SignedPerm(w)
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatRecord {
    pub window: SignedPerm,
    #[serde(rename = "l")]
    pub length: u32,
    pub neg: u32,
    #[serde(rename = "D")]
    pub descents: Vec<usize>,
    pub sigma: u32,
    pub rmaj: u32,
    #[serde(rename = "L")]
    pub l_stat: u32,
}

impl StatRecord {
    pub fn descent_mask(&self) -> u32 {
        self.descents.iter().fold(0, |m, i| m | 1 << i)
    }
}

fn inversions(w: &[i32]) -> u32 {
    let mut c = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                c += 1;
            }
        }
    }
    c
}

pub fn stats(w: &SignedPerm) -> StatRecord {
    let a = w.window();
    let n = a.len();
    let length = inversions(a) + a.iter().filter(|&&x| x < 0).map(|x| x.unsigned_abs()).sum::<u32>();
    let neg = a.iter().filter(|&&x| x < 0).count() as u32;
    let mut descents = Vec::new();
    if a[0] < 0 {
        descents.push(0);
    }
    for i in 1..n {
        if a[i - 1] > a[i] {
            descents.push(i);
        }
    }
    let nn = n as u32;
    let sigma = descents.iter().map(|&i| nn * nn - (i * i) as u32).sum();
    let rmaj = descents.iter().map(|&i| nn - i as u32).sum();
    let ni = n as i32;
    let mut twice_l = 0u32;
    for x in -ni..=ni {
        for y in x + 1..=ni {
            if (y - x) % 2 != 0 && w.apply(x) > w.apply(y) {
                twice_l += 1;
            }
        }
    }
    assert!(twice_l.is_multiple_of(2), "odd pair count {twice_l} for {w}");
    StatRecord { window: w.clone(), length, neg, descents, sigma, rmaj, l_stat: twice_l / 2 }
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<i32>> {
    let mut cur: Vec<i32> = (1..=n as i32).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

pub fn enumerate_signed_perms(n: usize) -> Result<Vec<SignedPerm>> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(Error::Resource {
            size: (1u128 << n) * (1..=n as u128).product::<u128>(),
            limit: (1u128 << MAX_ENUM_N) * 5040,
        });
    }
    let mut out = Vec::with_capacity((1 << n) * (1..=n).product::<usize>());
    for p in permutations(n) {
        for signs in 0u32..1 << n {
            let w = p.iter().enumerate().map(|(k, &a)| if signs >> k & 1 == 1 { -a } else { a }).collect();
            out.push(SignedPerm(w));
        }
    }
    Ok(out)
}

pub fn all_stats(n: usize) -> Result<Vec<StatRecord>> {
    Ok(enumerate_signed_perms(n)?.iter().map(stats).collect())
}

/// Monomial weight attached to each group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Weight {
    /// `X^l Y^neg`
    LengthNeg,
    /// `(-1)^neg X^l`
    SignedNegLength,
    /// `(-1)^neg X^(2l + (2 delta - 1) neg)`
    SignedNegF { delta: usize },
    /// `(-1)^l X^L`
    SignedLengthL,
}

fn weight_term(r: &StatRecord, weight: Weight) -> (i32, Monomial) {
    let sign = |k: u32| if k.is_multiple_of(2) { 1 } else { -1 };
    match weight {
        Weight::LengthNeg => (1, Monomial::from_pairs(&[(Var::X, r.length), (Var::Y, r.neg)])),
        Weight::SignedNegLength => (sign(r.neg), Monomial::var(Var::X, r.length)),
        Weight::SignedNegF { delta } => {
            let e = 2 * r.length + 2 * delta as u32 * r.neg - r.neg;
            (sign(r.neg), Monomial::var(Var::X, e))
        }
        Weight::SignedLengthL => (sign(r.length), Monomial::var(Var::X, r.l_stat)),
    }
}

/// Sum of the weight over the elements whose descent set lies in `idx`.
pub fn descent_class_gf_from(records: &[StatRecord], idx: &SubsetIndex, weight: Weight) -> Poly {
    let mask = idx.mask();
    Poly::from_terms(records.iter().filter(|r| r.descent_mask() & !mask == 0).map(|r| {
        let (c, m) = weight_term(r, weight);
        (m, BigInt::from(c))
    }))
}

pub fn descent_class_gf(n: usize, idx: &SubsetIndex, weight: Weight) -> Result<Poly> {
    if idx.n() != n {
        return Err(domain("subset size does not match n"));
    }
    Ok(descent_class_gf_from(&all_stats(n)?, idx, weight))
}

fn xpow(e: usize) -> Poly {
    Poly::term(1, Monomial::var(Var::X, e as u32))
}

/// Descent classes against `(n choose I)_X (-Y X^(i_1+1); X)_(n-i_1)`.
pub fn verify_reiner_from(records: &[StatRecord], idx: &SubsetIndex) -> bool {
    let n = idx.n();
    let i1 = idx.i1();
    let base = Poly::term(-1, Monomial::from_pairs(&[(Var::Y, 1), (Var::X, i1 as u32 + 1)]));
    let rhs = &q_multinomial(idx, Var::X) * &pochhammer_poly(&base, &Poly::var(Var::X), n - i1);
    descent_class_gf_from(records, idx, Weight::LengthNeg) == rhs
}

pub fn verify_reiner(n: usize, idx: &SubsetIndex) -> Result<bool> {
    Ok(verify_reiner_from(&all_stats(n)?, idx))
}

/// The F and G f-polynomials as signed descent-class sums.
pub fn verify_f_formulas_from(records: &[StatRecord], delta: usize, idx: &SubsetIndex) -> Result<bool> {
    let n = idx.n();
    let f = f_poly(&GroupScheme::f(n, delta), idx)?;
    let g = f_poly(&GroupScheme::g(n), idx)?;
    let fs = RatFun::from(descent_class_gf_from(records, idx, Weight::SignedNegF { delta }));
    let gs = RatFun::from(descent_class_gf_from(records, idx, Weight::SignedNegLength));
    Ok(rat_equal(&f, &fs) && rat_equal(&g, &gs))
}

pub fn verify_f_formulas(n: usize, delta: usize, idx: &SubsetIndex) -> Result<bool> {
    verify_f_formulas_from(&all_stats(n)?, delta, idx)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub subset: Vec<usize>,
    /// Whether this subset is one of the cases known to hold.
    pub proved: bool,
    pub matches: bool,
    pub descent_sum: String,
    pub f_poly: String,
}

pub fn is_proved_case(idx: &SubsetIndex) -> bool {
    let n = idx.n();
    let full = idx.len() == n;
    let zero_only = idx.elems() == [0];
    let even = n.is_multiple_of(2) && idx.elems().iter().all(|i| i % 2 == 0);
    full || zero_only || even
}

/// Compare `sum (-1)^l X^L` over each descent class with `f_{H_n,I}`.
pub fn conjecture_l_report(n: usize) -> Result<Vec<ConjectureRow>> {
    let records = all_stats(n)?;
    let h = GroupScheme::h(n);
    SubsetIndex::all(n)
        .map(|idx| {
            let sum = descent_class_gf_from(&records, &idx, Weight::SignedLengthL);
            let f = f_poly(&h, &idx)?;
            Ok(ConjectureRow {
                subset: idx.elems().to_vec(),
                proved: is_proved_case(&idx),
                matches: rat_equal(&RatFun::from(sum.clone()), &f),
                descent_sum: sum.to_string(),
                f_poly: f.to_string(),
            })
        })
        .collect()
}

/// Accumulates `sum c X^e * rest` with possibly negative `e`.
#[derive(Default)]
struct LaurentX {
    terms: Vec<(i64, Monomial, i32)>,
}

impl LaurentX {
    fn push(&mut self, e: i64, rest: Monomial, c: i32) {
        self.terms.push((e, rest, c));
    }

    fn finish(self) -> RatFun {
        let low = self.terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
        let p = Poly::from_terms(
            self.terms
                .into_iter()
                .map(|(e, rest, c)| (rest.mul(&Monomial::var(Var::X, (e - low) as u32)), BigInt::from(c))),
        );
        RatFun::new(p, xpow((-low) as usize)).expect("monomial denominator")
    }
}

/// `sum_{i<k} x^i`
fn geometric(x: &Poly, k: usize) -> Poly {
    let mut acc = Poly::zero();
    let mut p = Poly::one();
    for _ in 0..k {
        acc = &acc + &p;
        p = &p * x;
    }
    acc
}

/// `sum X^(sigma - l) Y^neg Z^rmaj` over `B_n` against the product formula.
pub fn verify_joint_distribution_b(n: usize) -> Result<bool> {
    let mut acc = LaurentX::default();
    for r in all_stats(n)? {
        let rest = Monomial::from_pairs(&[(Var::Y, r.neg), (Var::Z, r.rmaj)]);
        acc.push(r.sigma as i64 - r.length as i64, rest, 1);
    }
    let lhs = acc.finish();
    if lhs.try_into_poly().is_none() {
        return Ok(false);
    }
    let rhs: Poly = (0..n)
        .map(|i| {
            let yz = Poly::term(1, Monomial::from_pairs(&[(Var::X, i as u32), (Var::Y, 1), (Var::Z, 1)]));
            let x = Poly::term(1, Monomial::from_pairs(&[(Var::X, (n + i) as u32), (Var::Z, 1)]));
            &(&Poly::one() + &yz) * &geometric(&x, n - i)
        })
        .product();
    Ok(rat_equal(&lhs, &RatFun::from(rhs)))
}

/// Type A statistics: `(length, descents in 1..n-1)`.
fn sn_stats(w: &[i32]) -> (u32, Vec<usize>) {
    let d = (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect();
    (inversions(w), d)
}

/// Both `sum X^(sigma-l) Z^maj` and `sum X^(sigma-l) Z^rmaj` over `S_n`.
pub fn verify_sn_distribution(n: usize) -> Result<bool> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(domain(format!("n = {n} outside 1..={MAX_ENUM_N}")));
    }
    let mut by_maj = LaurentX::default();
    let mut by_rmaj = LaurentX::default();
    for w in permutations(n) {
        let (l, d) = sn_stats(&w);
        let sigma: u32 = d.iter().map(|&i| (i * (n - i)) as u32).sum();
        let maj: u32 = d.iter().map(|&i| i as u32).sum();
        let rmaj: u32 = d.iter().map(|&i| (n - i) as u32).sum();
        let e = sigma as i64 - l as i64;
        by_maj.push(e, Monomial::var(Var::Z, maj), 1);
        by_rmaj.push(e, Monomial::var(Var::Z, rmaj), 1);
    }
    let rhs: Poly = (0..n)
        .map(|i| geometric(&Poly::term(1, Monomial::from_pairs(&[(Var::X, i as u32), (Var::Z, 1)])), n - i))
        .product();
    let rhs = RatFun::from(rhs);
    Ok(rat_equal(&by_maj.finish(), &rhs) && rat_equal(&by_rmaj.finish(), &rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionOutcome {
    Match,
    Mismatch,
    /// `sigma + rmaj` was odd for some element.
    ParityViolation,
}

/// `sum (-1)^l X^((sigma+rmaj)/2 - L) Z^rmaj` over `B_n` against the product
/// that would follow from the conjecture. Half-integral powers of `X` are
/// handled by working in `V = X^(1/2)`, stored in the `X` slot.
pub fn verify_distribution_l(n: usize) -> Result<DistributionOutcome> {
    let mut acc = LaurentX::default();
    for r in all_stats(n)? {
        if (r.sigma + r.rmaj) % 2 != 0 {
            return Ok(DistributionOutcome::ParityViolation);
        }
        let e = r.sigma as i64 + r.rmaj as i64 - 2 * r.l_stat as i64;
        let sign = if r.length % 2 == 0 { 1 } else { -1 };
        acc.push(e, Monomial::var(Var::Z, r.rmaj), sign);
    }
    let lhs = acc.finish();

    let (m, eps) = (n / 2, n % 2);
    let vz2 = |e: usize| Poly::term(1, Monomial::from_pairs(&[(Var::X, e as u32), (Var::Z, 2)]));
    let top = pochhammer_poly(&vz2(4), &xpow(4), m);
    let bot = pochhammer_poly(&vz2(2 * (2 * (m + eps) + 1)), &xpow(4), m);
    let mut num = &Poly::one_minus(1, Monomial::var(Var::Z, 1)) * &top;
    for i in 0..n.saturating_sub(1) {
        let e = ((n + i + 1) * (n - i)) as u32;
        num = &num * &Poly::one_minus(1, Monomial::from_pairs(&[(Var::X, e), (Var::Z, (n - i) as u32)]));
    }
    let rhs = RatFun::new(num, bot)?;
    Ok(if rat_equal(&lhs, &rhs) { DistributionOutcome::Match } else { DistributionOutcome::Mismatch })
}

/// Breadth-first distances from the identity under right multiplication by
/// the generators `s_0, .., s_(n-1)`.
pub fn length_oracle_bfs(n: usize) -> Result<HashMap<SignedPerm, u32>> {
    if n == 0 || n > 5 {
        return Err(domain(format!("breadth-first search limited to 1 <= n <= 5, got {n}")));
    }
    let start = SignedPerm::identity(n);
    let mut dist = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for i in 0..n {
            let v = w.times_generator(i);
            if !dist.contains_key(&v) {
                dist.insert(v.clone(), d + 1);
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// Poincare polynomial `prod_{i=1}^n (1 - X^(2i)) / (1 - X)`.
pub fn poincare_b(n: usize) -> Poly {
    (1..=n).map(|i| geometric(&Poly::var(Var::X), 2 * i)).product()
}

/// `sum_{w in S_n} X^l` equals `(n choose 1, .., 1)_X`, kept for the text
/// report of the type A counts.
pub fn poincare_a(n: usize) -> Poly {
    (1..=n).map(|k| gaussian_binomial(k, 1, Var::X).expect("k >= 1")).product()
}
