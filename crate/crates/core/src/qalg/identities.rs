//! Symbolic checks of the q-series identities behind the multiplicative
//! formulas. Both sides are expanded exactly and compared by
//! cross-multiplication.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::qseries::{pochhammer, pochhammer_poly, q_multinomial, SubsetIndex};
use super::{gaussian_binomial, rat_equal, Monomial, Poly, RatFun, Var};
use crate::error::{domain, Error, Result};

pub const MAX_IDENTITY_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// `(ZY;X)_n = sum_j (n choose j)_X Z^j (Z;X)_{n-j} (Y;X)_j`
    QBinomial,
    /// Both equalities for the sum over subsets of `{1..n-1}`.
    BinomialA,
    /// The multinomial-type identity over subsets of `{0..n-1}`.
    MultinomialB,
    /// The type H analogue of the multinomial-type identity.
    TypeH,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 4] =
        [IdentityKind::QBinomial, IdentityKind::BinomialA, IdentityKind::MultinomialB, IdentityKind::TypeH];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::QBinomial => "q_binomial",
            IdentityKind::BinomialA => "binomial_A",
            IdentityKind::MultinomialB => "multinomial_B",
            IdentityKind::TypeH => "typeH",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| domain(format!("unknown identity kind '{s}'")))
    }
}

pub fn verify_identity(kind: IdentityKind, n: usize) -> Result<bool> {
    if n == 0 || n > MAX_IDENTITY_N {
        return Err(domain(format!("identity checks need 1 <= n <= {MAX_IDENTITY_N}, got {n}")));
    }
    match kind {
        IdentityKind::QBinomial => Ok(q_binomial(n)),
        IdentityKind::BinomialA => binomial_a(n),
        IdentityKind::MultinomialB => multinomial_b(n),
        IdentityKind::TypeH => type_h(n),
    }
}

fn mono(pairs: &[(Var, u32)]) -> Monomial {
    Monomial::from_pairs(pairs)
}

fn gp_mono(m: Monomial) -> RatFun {
    RatFun::gp(&RatFun::from(Poly::term(1, m)))
}

fn xinv_multinomial(idx: &SubsetIndex) -> RatFun {
    RatFun::from(q_multinomial(idx, Var::X)).invert_var(Var::X)
}

fn q_binomial(n: usize) -> bool {
    let x = Poly::var(Var::X);
    let y = Poly::var(Var::Y);
    let z = Poly::var(Var::Z);
    let lhs = pochhammer_poly(&(&z * &y), &x, n);
    let rhs: Poly = (0..=n)
        .map(|j| {
            let b = gaussian_binomial(n, j, Var::X).expect("j <= n");
            &(&(&b * &z.pow(j as u32)) * &pochhammer_poly(&z, &x, n - j)) * &pochhammer_poly(&y, &x, j)
        })
        .sum();
    lhs == rhs
}

/// `prod_{i in range} (1 - X^{e(i)} Z^{f(i)})`
fn binom_product(range: impl Iterator<Item = usize>, e: impl Fn(usize) -> u32, f: impl Fn(usize) -> u32) -> Poly {
    range.map(|i| Poly::one_minus(1, mono(&[(Var::X, e(i)), (Var::Z, f(i))]))).product()
}

fn binomial_a(n: usize) -> Result<bool> {
    let nn = n as u32;
    let lhs1: Vec<RatFun> = SubsetIndex::all_positive(n)
        .map(|idx| {
            let mut t = xinv_multinomial(&idx);
            for &i in idx.elems() {
                let i = i as u32;
                t = &t * &gp_mono(mono(&[(Var::X, i * (nn - i)), (Var::Z, nn - i)]));
            }
            t
        })
        .collect();
    let base1 = binom_product(1..n, |i| (i * (n - i)) as u32, |i| (n - i) as u32);
    let lhs1 = RatFun::sum_over(&lhs1, &base1)?;

    let lhs2: Vec<RatFun> = SubsetIndex::all_positive(n)
        .map(|idx| {
            let mut t = xinv_multinomial(&idx);
            for &i in idx.elems() {
                let i = i as u32;
                t = &t * &gp_mono(mono(&[(Var::X, (nn - i) * i), (Var::Z, i)]));
            }
            t
        })
        .collect();
    let base2 = binom_product(1..n, |i| (i * (n - i)) as u32, |i| i as u32);
    let lhs2 = RatFun::sum_over(&lhs2, &base2)?;

    let z = Poly::var(Var::Z);
    let rhs = RatFun::new(Poly::one_minus(1, Monomial::var(Var::Z, nn)), pochhammer_poly(&z, &Poly::var(Var::X), n))?;
    Ok(rat_equal(&lhs1, &rhs) && rat_equal(&lhs2, &rhs))
}

fn multinomial_b(n: usize) -> Result<bool> {
    let nn = n as u32;
    let xinv = RatFun::laurent(1, &[(Var::X, -1)]);
    let terms: Vec<RatFun> = SubsetIndex::all(n)
        .map(|idx| {
            let i1 = idx.i1();
            let base = RatFun::laurent(1, &[(Var::Y, 1), (Var::X, -(i1 as i64) - 1)]);
            let mut t = &xinv_multinomial(&idx) * &pochhammer(&base, &xinv, n - i1);
            for &i in idx.elems() {
                let i = i as u32;
                t = &t * &gp_mono(mono(&[(Var::X, i * (nn - i)), (Var::Z, nn - i)]));
            }
            t
        })
        .collect();
    let base = binom_product(0..n, |i| (i * (n - i)) as u32, |i| (n - i) as u32);
    let lhs = RatFun::sum_over(&terms, &base)?;

    let yz = RatFun::laurent(1, &[(Var::X, -(n as i64)), (Var::Y, 1), (Var::Z, 1)]);
    let x = RatFun::var(Var::X);
    let rhs = &pochhammer(&yz, &x, n) / &pochhammer(&RatFun::var(Var::Z), &x, n);
    Ok(rat_equal(&lhs, &rhs))
}

fn type_h(n: usize) -> Result<bool> {
    let nn = n as u32;
    let (m, eps) = (n / 2, n % 2);
    let x4inv = RatFun::laurent(1, &[(Var::X, -4)]);
    let x2inv = RatFun::laurent(1, &[(Var::X, -2)]);
    let terms: Vec<RatFun> = SubsetIndex::all(n)
        .map(|idx| {
            let i1 = idx.i1();
            let mut t = RatFun::one();
            for mu in &idx.mus()[1..] {
                t = &t / &pochhammer(&x4inv, &x4inv, mu / 2);
            }
            let base = RatFun::laurent(1, &[(Var::X, -2 * (i1 as i64 + 1))]);
            t = &t * &pochhammer(&base, &x2inv, n - i1);
            for &i in idx.elems() {
                let i = i as u32;
                t = &t * &gp_mono(mono(&[(Var::X, i * (nn - i)), (Var::Z, nn - i)]));
            }
            t
        })
        .collect();
    let mut base = binom_product(0..n, |i| (i * (n - i)) as u32, |i| (n - i) as u32);
    for k in 1..=m {
        let f = &Poly::term(1, Monomial::var(Var::X, 4 * k as u32)) - &Poly::one();
        base = &base * &f.pow((n / (2 * k)) as u32);
    }
    let lhs = RatFun::sum_over(&terms, &base)?;

    let n_i = n as i64;
    let lead = &RatFun::one_minus(&RatFun::laurent(1, &[(Var::X, -n_i - 1), (Var::Z, 1)]))
        / &RatFun::one_minus(&RatFun::laurent(1, &[(Var::X, n_i - 1), (Var::Z, 1)]));
    let x4 = RatFun::laurent(1, &[(Var::X, 4)]);
    let top = pochhammer(&RatFun::laurent(1, &[(Var::X, 2 * (1 - n_i)), (Var::Z, 2)]), &x4, m);
    // The base is X^(2 eps) Z^2; it follows from the local type H factor under
    // X = q^(1/2), Z = q^((n+1)/2) t.
    let bot = pochhammer(&RatFun::laurent(1, &[(Var::X, 2 * eps as i64), (Var::Z, 2)]), &x4, m);
    let rhs = &lead * &(&top / &bot);
    Ok(rat_equal(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_small_cases() {
        assert!(verify_identity(IdentityKind::MultinomialB, 1).unwrap());
        assert!(verify_identity(IdentityKind::QBinomial, 2).unwrap());
        assert!(verify_identity(IdentityKind::TypeH, 2).unwrap());
    }

    #[test]
    fn all_kinds_up_to_four() {
        for kind in IdentityKind::ALL {
            for n in 1..=4 {
                assert!(verify_identity(kind, n).unwrap(), "{kind} n={n}");
            }
        }
    }

    #[test]
    fn range_is_checked() {
        assert!(verify_identity(IdentityKind::QBinomial, 0).is_err());
        assert!(verify_identity(IdentityKind::QBinomial, 9).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in IdentityKind::ALL {
            assert_eq!(kind.name().parse::<IdentityKind>().unwrap(), kind);
        }
    }
}
