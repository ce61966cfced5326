#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;

use repzeta::counting::elem_div_type;
use repzeta::igusa::{determinant, pfaffian};
use repzeta::qalg::{gaussian_binomial, Monomial, Poly, RatFun, Var};
use repzeta::schemes::{local_coefficients, pole_set, GroupScheme};

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..2), 0..5).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(c, q, t, x)| (Monomial::from_pairs(&[(Var::Q, q), (Var::T, t), (Var::X, x)]), BigInt::from(c))),
        )
    })
}

fn arb_nonzero_poly() -> impl Strategy<Value = Poly> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normalization_idempotent(n in arb_poly(), d in arb_nonzero_poly(), k in arb_nonzero_poly()) {
        let r = RatFun::new(&n * &k, &d * &k).unwrap();
        let (num, den) = r.clone().into_parts();
        let again = RatFun::new(num.clone(), den.clone()).unwrap();
        prop_assert_eq!(again.num(), &num);
        prop_assert_eq!(again.den(), &den);
        prop_assert_eq!(r, RatFun::new(n, d).unwrap());
    }

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..=3, entries in prop::collection::vec(-9i64..=9, 15)) {
        let s = 2 * half;
        let mut m = vec![vec![0i64; s]; s];
        let mut k = 0;
        for i in 0..s {
            for j in i + 1..s {
                m[i][j] = entries[k];
                m[j][i] = -entries[k];
                k += 1;
            }
        }
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(pf * pf, determinant(&m));
    }

    #[test]
    fn elem_div_type_unimodular_invariance(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-6i64..=6, 16),
        ops in prop::collection::vec((any::<bool>(), 0usize..4, 0usize..4, -3i64..=3), 10),
        p in prop::sample::select(vec![2u64, 3]),
    ) {
        let mut m: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * 4..i * 4 + cols].to_vec()).collect();
        let before = elem_div_type(&m, p, 3).unwrap();
        for (left, a, b, c) in ops {
            // elementary row or column addition
            if left {
                let (a, b) = (a % rows, b % rows);
                if a != b {
                    for j in 0..cols {
                        m[a][j] += c * m[b][j];
                    }
                }
            } else {
                let (a, b) = (a % cols, b % cols);
                if a != b {
                    for row in m.iter_mut() {
                        row[a] += c * row[b];
                    }
                }
            }
        }
        prop_assert_eq!(elem_div_type(&m, p, 3).unwrap(), before);
    }
}

#[test]
fn gaussian_symmetry_and_specialisation() {
    for a in 0..=8usize {
        for b in 0..=a {
            let g = gaussian_binomial(a, b, Var::X).unwrap();
            assert_eq!(g, gaussian_binomial(a, a - b, Var::X).unwrap());
            let ones: [BigInt; 6] = std::array::from_fn(|_| BigInt::from(1));
            assert_eq!(g.eval_all(&ones), num_integer::binomial(BigInt::from(a), BigInt::from(b)));
        }
    }
}

#[test]
fn gaussian_reciprocity() {
    // binom(n,j)_X = X^{j(n-j)} binom(n,j)_{X^-1}
    for n in 0..=8usize {
        for j in 0..=n {
            let g = RatFun::from(gaussian_binomial(n, j, Var::X).unwrap());
            let flipped = g.invert_var(Var::X);
            let shift = RatFun::laurent(1, &[(Var::X, (j * (n - j)) as i64)]);
            assert_eq!(g, &flipped * &shift, "n={n} j={j}");
        }
    }
}

#[test]
fn abscissa_is_one_past_largest_pole() {
    for g in GroupScheme::all_up_to(6) {
        let max = *pole_set(&g).iter().next_back().unwrap();
        assert_eq!(max + 1, Rational64::from(g.alpha() as i64), "{g}");
    }
}

#[test]
fn local_coefficients_are_nonnegative() {
    for g in GroupScheme::all_up_to(4) {
        for q in [2u64, 3, 4, 5] {
            let c = local_coefficients(&g, q, 6).unwrap();
            assert!(c.iter().all(|x| x.sign() != num_bigint::Sign::Minus), "{g} q={q}");
        }
    }
}
