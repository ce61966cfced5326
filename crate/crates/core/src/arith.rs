//! Global Dirichlet coefficients over `Q`, from Jordan totient convolutions
//! and from local Euler factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{domain, Result};
use crate::schemes::{local_coefficients, Family, GroupScheme};

pub const MAX_BOUND: usize = 100_000;

/// Coefficients `r_1..=r_B`; index 0 holds `r_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCoeffs {
    pub coeffs: Vec<BigInt>,
}

impl DirichletCoeffs {
    pub fn bound(&self) -> usize {
        self.coeffs.len()
    }

    /// `r_n` for `1 <= n <= bound`.
    pub fn get(&self, n: usize) -> &BigInt {
        &self.coeffs[n - 1]
    }

    /// Checks `r_1 = 1` and `r_{ab} = r_a r_b` for coprime `a, b` with `ab <= bound`.
    pub fn is_multiplicative(&self) -> bool {
        let b = self.bound();
        if b == 0 {
            return true;
        }
        if !self.get(1).is_one() {
            return false;
        }
        for x in 2..=b {
            for y in 2..=b / x {
                if x.gcd(&y) == 1 && *self.get(x * y) != self.get(x) * self.get(y) {
                    return false;
                }
            }
        }
        true
    }

    fn convolve(&self, other: &DirichletCoeffs) -> DirichletCoeffs {
        let b = self.bound();
        let mut out = vec![BigInt::zero(); b];
        for x in 1..=b {
            let cx = self.get(x);
            if cx.is_zero() {
                continue;
            }
            for y in 1..=b / x {
                let cy = other.get(y);
                if !cy.is_zero() {
                    out[x * y - 1] += cx * cy;
                }
            }
        }
        DirichletCoeffs { coeffs: out }
    }

    fn unit(bound: usize) -> DirichletCoeffs {
        let mut coeffs = vec![BigInt::zero(); bound];
        if bound > 0 {
            coeffs[0] = BigInt::one();
        }
        DirichletCoeffs { coeffs }
    }
}

/// Smallest prime factor for every `n <= bound`.
fn spf_sieve(bound: usize) -> Vec<usize> {
    let mut spf = vec![0; bound + 1];
    for i in 2..=bound {
        if spf[i] == 0 {
            for j in (i..=bound).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i;
                }
            }
        }
    }
    spf
}

fn factor(mut n: usize, spf: &[usize]) -> Vec<(usize, u32)> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    while n > 1 {
        let p = spf[n];
        n /= p;
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// `J_b(n) = n^b prod_{p | n} (1 - p^{-b})`.
pub fn jordan_totient(b: u32, n: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            let pb = BigInt::from(p).pow(b);
            acc *= pb.pow(e - 1) * (&pb - 1u32);
        }
        p += 1;
    }
    if rest > 1 {
        acc *= BigInt::from(rest).pow(b) - 1u32;
    }
    acc
}

fn jordan_series(a: u32, b: u32, bound: usize, stride: u32) -> DirichletCoeffs {
    // n^a J_b(n) placed at n^stride
    let mut out = DirichletCoeffs::unit(bound);
    let mut n = 2usize;
    while (n as u128).pow(stride) <= bound as u128 {
        let idx = n.pow(stride);
        out.coeffs[idx - 1] = BigInt::from(n).pow(a) * jordan_totient(b, n as u64);
        n += 1;
    }
    out
}

/// Convolution of `n -> n^a J_b(n)` over the pairs; each pair is the series
/// of `zeta(s-a-b)/zeta(s-a)`.
pub fn dirichlet_from_quotients(pairs: &[(u32, u32)], bound: usize) -> DirichletCoeffs {
    pairs.iter().fold(DirichletCoeffs::unit(bound), |acc, &(a, b)| acc.convolve(&jordan_series(a, b, bound, 1)))
}

/// Quotient factors of the global zeta function. `doubled` pairs stand for
/// `zeta(2s-a-b)/zeta(2s-a)` and live on squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientPairs {
    pub single: Vec<(u32, u32)>,
    pub doubled: Vec<(u32, u32)>,
}

pub fn quotient_pairs(g: &GroupScheme) -> QuotientPairs {
    let n = g.n as u32;
    match g.family {
        Family::F => {
            QuotientPairs { single: (0..n).map(|i| (2 * i, 2 * (n + g.delta as u32) - 1)).collect(), doubled: vec![] }
        }
        Family::G => QuotientPairs { single: (0..n).map(|i| (i, n)).collect(), doubled: vec![] },
        Family::H => {
            let (m, eps) = (g.m() as u32, g.epsilon() as u32);
            // zeta(2s - 2m - 2eps - 1 - 2i) / zeta(2s - 2 - 2i)
            QuotientPairs { single: vec![(0, n)], doubled: (0..m).map(|i| (2 + 2 * i, 2 * m + 2 * eps - 1)).collect() }
        }
    }
}

pub fn dirichlet_from_pairs(pairs: &QuotientPairs, bound: usize) -> DirichletCoeffs {
    let single = dirichlet_from_quotients(&pairs.single, bound);
    pairs.doubled.iter().fold(single, |acc, &(a, b)| acc.convolve(&jordan_series(a, b, bound, 2)))
}

/// Euler product assembly from the local factors at every prime up to `bound`.
pub fn global_coeffs_from_local(g: &GroupScheme, bound: usize) -> Result<DirichletCoeffs> {
    if bound == 0 || bound > MAX_BOUND {
        return Err(domain(format!("bound must lie in 1..={MAX_BOUND}, got {bound}")));
    }
    let spf = spf_sieve(bound);
    let mut local: Vec<Vec<BigInt>> = vec![Vec::new(); bound + 1];
    for p in 2..=bound {
        if spf[p] == p {
            let mut order = 0;
            let mut pk = p;
            while pk <= bound {
                order += 1;
                pk = pk.saturating_mul(p);
            }
            local[p] = local_coefficients(g, p as u64, order)?;
        }
    }
    let coeffs =
        (1..=bound).map(|n| factor(n, &spf).into_iter().map(|(p, e)| local[p][e as usize].clone()).product()).collect();
    Ok(DirichletCoeffs { coeffs })
}
