//! Finite fields GF(p^k), k <= 3, by lookup tables.

use crate::error::{domain, Result};

#[derive(Clone, Debug)]
pub struct Gf {
    p: usize,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn prime_power(q: usize) -> Option<(usize, usize)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl Gf {
    pub fn new(q: usize) -> Result<Gf> {
        let (p, k) = prime_power(q).ok_or_else(|| domain(format!("{q} is not a prime power")))?;
        if k > 3 || q > 64 {
            return Err(domain(format!("GF({q}) is not supported")));
        }
        // Elements are digit vectors c_0 + c_1 x + .. in base p.
        let digits = |a: usize| -> Vec<usize> { (0..k).map(|i| a / p.pow(i as u32) % p).collect() };
        let pack = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        // A monic polynomial of degree k <= 3 without roots is irreducible.
        let modulus: Vec<usize> = (0..p.pow(k as u32))
            .map(|low| {
                let mut m = digits(low);
                m.push(1);
                m
            })
            .find(|m| k == 1 || (0..p).all(|x| m.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) != 0))
            .expect("an irreducible polynomial exists");
        let mulpoly = |a: &[usize], b: &[usize]| -> Vec<usize> {
            let mut prod = vec![0; 2 * k];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for d in (k..2 * k).rev() {
                let c = prod[d];
                if c != 0 {
                    for (i, m) in modulus.iter().enumerate() {
                        let slot = d - k + i;
                        prod[slot] = (prod[slot] + (p - c) * m) % p;
                    }
                }
            }
            prod.truncate(k);
            prod
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&s) as u8;
                mul[a * q + b] = pack(&mulpoly(&da, &db)) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        let inv =
            (0..q).map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8 }).collect();
        Ok(Gf { p, q, add, mul, neg, inv })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Rank by Gaussian elimination; consumes the matrix.
    pub fn rank(&self, mut m: Vec<Vec<u8>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let iv = self.inv(m[rank][c]);
            for r in 0..rows {
                if r != rank && m[r][c] != 0 {
                    let f = self.neg(self.mul(m[r][c], iv));
                    for j in c..cols {
                        let v = self.mul(f, m[rank][j]);
                        m[r][j] = self.add(m[r][j], v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Gf::new(q).unwrap();
            for a in 0..q as u8 {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in 0..q as u8 {
                    for c in 0..q as u8 {
                        let l = f.mul(a, f.add(b, c));
                        let r = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(l, r);
                    }
                }
            }
        }
        assert!(Gf::new(6).is_err());
    }

    #[test]
    fn ranks() {
        let f = Gf::new(4).unwrap();
        assert_eq!(f.rank(vec![vec![1, 2], vec![2, f.mul(2, 2)]]), 1);
        assert_eq!(f.rank(vec![vec![0, 1], vec![1, 0]]), 2);
    }
}
