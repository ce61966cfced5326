//! Capped p-adic elementary divisors of integer matrices.

use crate::error::{Error, Result};

pub fn valuation(mut x: i128, p: i128) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

/// Integer diagonalisation by row and column operations over Z. Returns the
/// nonzero diagonal entries.
pub fn diagonalize(mut a: Vec<Vec<i128>>) -> Result<Vec<i128>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let ovf = || Error::Overflow("integer Smith reduction");
    for t in 0..rows.min(cols) {
        loop {
            // pivot: nonzero entry of least absolute value
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Ok(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let piv = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = a[i][t] / piv;
                if f != 0 {
                    for j in t..cols {
                        a[i][j] = a[i][j].checked_sub(f.checked_mul(a[t][j]).ok_or_else(ovf)?).ok_or_else(ovf)?;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = a[t][j] / piv;
                if f != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = row[j].checked_sub(f.checked_mul(row[t]).ok_or_else(ovf)?).ok_or_else(ovf)?;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                diag.push(a[t][t]);
                break;
            }
        }
    }
    Ok(diag)
}

/// Sorted p-adic valuations, capped at `cap`, of the elementary divisors of
/// `mat` over Z/p^cap. Computed from the integer matrix stacked on
/// `p^cap * identity`. A rectangular matrix is padded with zeros to a square.
pub fn capped_valuations(mat: &[Vec<i64>], p: u64, cap: u32) -> Result<Vec<u32>> {
    let size = mat.len().max(mat.iter().map(Vec::len).max().unwrap_or(0));
    let pn = (p as i128).pow(cap);
    let mut stack: Vec<Vec<i128>> = (0..size)
        .map(|i| {
            let row = mat.get(i).map_or(&[][..], |r| &r[..]);
            (0..size).map(|j| row.get(j).map_or(0, |&x| x as i128)).collect()
        })
        .collect();
    for i in 0..size {
        let mut row = vec![0i128; size];
        row[i] = pn;
        stack.push(row);
    }
    let diag = diagonalize(stack)?;
    // The stack has full column rank, so there are exactly `size` divisors.
    let mut v: Vec<u32> = diag.iter().map(|&d| valuation(d, p as i128).expect("nonzero").min(cap)).collect();
    v.sort_unstable();
    Ok(v)
}

/// Same valuations by elimination in the local ring Z/p^cap: pivot on an
/// entry of least valuation, which divides every other entry there.
pub fn capped_valuations_local(mat: &mut [Vec<i64>], p: i64, cap: u32) -> Vec<u32> {
    let r = mat.len();
    let pn = p.pow(cap);
    let val = |x: i64| -> u32 {
        if x == 0 {
            return cap;
        }
        let (mut x, mut v) = (x, 0);
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    for row in mat.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(pn);
        }
    }
    let mut out = Vec::with_capacity(r);
    let mut live_r: Vec<usize> = (0..r).collect();
    let mut live_c: Vec<usize> = (0..r).collect();
    while !live_r.is_empty() {
        let mut best = (cap, 0, 0);
        'search: for (a, &i) in live_r.iter().enumerate() {
            for (b, &j) in live_c.iter().enumerate() {
                let v = val(mat[i][j]);
                if v < best.0 {
                    best = (v, a, b);
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let (v, a, b) = best;
        if v == cap {
            out.extend(std::iter::repeat_n(cap, live_r.len()));
            break;
        }
        let (pi, pj) = (live_r.swap_remove(a), live_c.swap_remove(b));
        let piv = mat[pi][pj];
        let pv = p.pow(v);
        // unit part of the pivot and its inverse mod p^cap
        let u = (piv / pv).rem_euclid(pn);
        let uinv = inverse_mod(u, pn);
        for &i in &live_r {
            let x = mat[i][pj];
            if x == 0 {
                continue;
            }
            let f = ((x / pv) % pn * uinv).rem_euclid(pn);
            for &j in &live_c {
                mat[i][j] = (mat[i][j] - f * mat[pi][j]).rem_euclid(pn);
            }
        }
        out.push(v);
    }
    out.sort_unstable();
    out
}

fn inverse_mod(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1, mut s0, mut s1) = (a, m, 1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "{a} is not a unit mod {m}");
    s0.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let z = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(capped_valuations(&z, 2, 3).unwrap(), vec![3, 3]);
        let u = vec![vec![0, 1], vec![-1, 0]];
        assert_eq!(capped_valuations(&u, 2, 2).unwrap(), vec![0, 0]);
        let t = vec![vec![0, 2], vec![-2, 0]];
        assert_eq!(capped_valuations(&t, 2, 2).unwrap(), vec![1, 1]);
        assert_eq!(capped_valuations_local(&mut t.clone(), 2, 2), vec![1, 1]);
    }

    #[test]
    fn mixed_primes_do_not_interfere() {
        let m = vec![vec![6, 0], vec![0, 4]];
        assert_eq!(capped_valuations(&m, 2, 5).unwrap(), vec![1, 2]);
        assert_eq!(capped_valuations(&m, 3, 5).unwrap(), vec![0, 1]);
        assert_eq!(capped_valuations_local(&mut m.clone(), 3, 5), vec![0, 1]);
    }
}
