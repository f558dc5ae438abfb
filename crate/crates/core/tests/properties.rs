mod common;

use hopfinv::comodule::{cobar_complex, invariants, rho, Comodule};
use std::sync::OnceLock;
use hopfinv::detinv::{hilbert_dim, monomial_count, Poly};
use hopfinv::exactlin::{
    cokernel, kernel_basis, kernel_lattice, rank, smith_normal_form, tor1, BaseScalar, IntMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

fn int(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

/// Rank modulo a prime by Gaussian elimination on `i64`.
fn rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let (n, m) = (a.len(), a[0].len());
    let mut rank = 0;
    for col in 0..m {
        let Some(piv) = (rank..n).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..n {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..m {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as i128 * b as i128) % p as i128) as i64;
        }
        b = ((b as i128 * b as i128) % p as i128) as i64;
        e >>= 1;
    }
    r
}

fn count_divisible(factors: &[BigInt], p: i64) -> usize {
    factors.iter().filter(|d| (*d % p).is_zero()).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_form_is_a_diagonal_divisibility_chain(rows in matrix(6, 6, 50)) {
        let a = int(&rows);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|d| d.is_positive()));
        prop_assert!(f.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        for (i, j, _) in s.d.iter() {
            prop_assert!(i == j && i < f.len());
        }
    }

    #[test]
    fn smith_rank_matches_ranks_mod_large_primes(rows in matrix(5, 5, 20)) {
        // Hadamard: every minor is below (sqrt(5)·20)^5 < 10^9 + 7
        let r = rank(&int(&rows));
        prop_assert_eq!(rank_mod(&rows, 1_000_000_007), r);
        prop_assert_eq!(smith_normal_form(&int(&rows)).rank(), r);
    }

    #[test]
    fn integer_kernel_is_saturated(rows in matrix(4, 6, 5)) {
        let a = int(&rows);
        let k = kernel_lattice(&a, 0);
        prop_assert!(a.mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.cols(), a.cols() - rank(&a));
        // saturated: the basis extends to a basis of Z^n, i.e. all its
        // invariant factors are 1
        let s = smith_normal_form(&k);
        prop_assert!(s.invariant_factors().iter().all(|d| d == &BigInt::from(1)));
    }

    #[test]
    fn cokernel_mod_p_matches_elimination(rows in matrix(4, 4, 6), p in prop::sample::select(vec![2i64, 3, 5, 7])) {
        // dim_Fp (coker A ⊗ F_p) = rows − rank_p(A)
        let c = cokernel(&int(&rows));
        let expected = rows.len() - rank_mod(&rows, p);
        prop_assert_eq!(c.free_rank() + count_divisible(c.torsion(), p), expected);
    }

    #[test]
    fn tor_matches_resolution(rows in matrix(4, 4, 6), p in prop::sample::select(vec![2i64, 3, 5])) {
        // for injective A: 0 → Z^a → Z^b → coker → 0, so Tor1(F_p, coker) = ker(A mod p)
        let a = int(&rows);
        prop_assume!(rank(&a) == a.cols());
        let t = tor1(BaseScalar::Fp(p as u64), &cokernel(&a));
        prop_assert_eq!(t.dimension(), Some(a.cols() - rank_mod(&rows, p)));
    }

    #[test]
    fn kernels_over_prime_fields(rows in matrix(4, 5, 6), p in prop::sample::select(vec![2u64, 3, 5])) {
        let a = int(&rows);
        let s = BaseScalar::Fp(p);
        let k = kernel_basis(&a, s);
        prop_assert_eq!(k.len(), a.cols() - rank_mod(&rows, p as i64));
        prop_assert!(a.mul(&k.basis).unwrap().is_zero_in(s));
    }

    #[test]
    fn poly_ring_laws(a in prop::collection::vec((0u32..3, 0u32..3, -5i64..=5), 0..5),
                      b in prop::collection::vec((0u32..3, 0u32..3, -5i64..=5), 0..5)) {
        let mk = |t: &[(u32, u32, i64)]| {
            t.iter().fold(Poly::zero(2), |acc, &(i, j, c)| {
                acc.add(&Poly::var(2, 0).pow(i).mul(&Poly::var(2, 1).pow(j)).scale(&BigInt::from(c).into()))
            })
        };
        let (f, g) = (mk(&a), mk(&b));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        // Leibniz rule
        let lhs = f.mul(&g).derivative(0);
        let rhs = f.derivative(0).mul(&g).add(&f.mul(&g.derivative(0)));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn corpus_invariants_and_base_change(k in 0usize..263, s in prop::sample::select(vec![
        BaseScalar::Rat, BaseScalar::Fp(2), BaseScalar::Fp(3), BaseScalar::IntMod(4), BaseScalar::IntMod(6)])) {
        static CORPUS: OnceLock<Vec<common::Rep>> = OnceLock::new();
        let reps = CORPUS.get_or_init(|| common::corpus(common::CORPUS_SEED, 4));
        let rep = &reps[k % reps.len()];
        let m: Comodule = rep.comodule();
        // H^0 of the cobar complex is the invariant module
        let cx = cobar_complex(&m, 2).unwrap();
        let h0 = cx.integral_cohomology(0).unwrap();
        prop_assert!(h0.torsion().is_empty());
        prop_assert_eq!(h0.free_rank(), invariants(&m).kernel.len());
        let r = rho(s, &m).unwrap();
        prop_assert!(r.injective);
        if s == BaseScalar::Rat {
            prop_assert!(r.is_isomorphism());
        }
    }

    #[test]
    fn hilbert_dims_are_monotone_in_rank(f in 1usize..=3, g in 1usize..=3, d in 0u32..=3) {
        let dims: Vec<usize> = (0..=f.min(g)).map(|v| hilbert_dim(f, g, v, d, 0).dim).collect();
        prop_assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(*dims.last().unwrap(), monomial_count(f * g, d));
    }
}

#[test]
fn gcd_oracle_for_first_invariant_factor() {
    let a = int(&[vec![12, 18, 30], vec![42, 66, 6]]);
    let g = a.iter().fold(BigInt::zero(), |acc, (_, _, v)| acc.gcd(v));
    assert_eq!(smith_normal_form(&a).invariant_factors()[0], g);
}
