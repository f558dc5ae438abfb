//! Finite-group representations as comodules over the constant group scheme,
//! and classical group cohomology as an independent check on the cobar side.

use num_bigint::BigInt;
use num_traits::One;

use super::Comodule;
use crate::error::{Error, Result};
use crate::exactlin::{complex_cohomology, FpModule, IntMatrix};
use crate::hopf::{constant_group, GroupTable};

/// Checks that `reps[g]` are square matrices of one size with
/// `ρ(e) = 1` and `ρ(g)ρ(h) = ρ(gh)`. Returns the common size.
pub fn validate_representation(group: &GroupTable, reps: &[IntMatrix]) -> Result<usize> {
    let n = group.order();
    if reps.len() != n {
        return Err(Error::NotARepresentation(format!(
            "expected {n} matrices, one per group element, found {}",
            reps.len()
        )));
    }
    let m = reps[0].rows();
    if let Some(g) = reps.iter().position(|r| r.shape() != (m, m)) {
        return Err(Error::NotARepresentation(format!(
            "matrix for element {g} is {}x{}, expected {m}x{m}",
            reps[g].rows(),
            reps[g].cols()
        )));
    }
    if reps[group.identity()] != IntMatrix::identity(m) {
        return Err(Error::NotARepresentation("identity element does not act as the identity".into()));
    }
    for g in 0..n {
        for h in 0..n {
            if reps[g].mul(&reps[h])? != reps[group.mul(g, h)] {
                return Err(Error::NotARepresentation(format!(
                    "rho({g}) rho({h}) != rho({})",
                    group.mul(g, h)
                )));
            }
        }
    }
    Ok(m)
}

/// `ω(v) = Σ_g (g·v) ⊗ δ_g` for a left action `g·v = ρ(g)v`.
pub fn action_to_coaction(group: &GroupTable, reps: &[IntMatrix]) -> Result<Comodule> {
    let m = validate_representation(group, reps)?;
    let c = group.order();
    let mut omega = IntMatrix::zeros(m * c, m);
    for (g, r) in reps.iter().enumerate() {
        for (i, k, v) in r.iter() {
            omega.set(i * c + g, k, v.clone());
        }
    }
    Comodule::new(constant_group(group), omega)
}

fn tuple_product(group: &GroupTable, k: usize) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

fn tuple_index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &g| acc * n + g)
}

/// Inhomogeneous cochain differential `C^k → C^{k+1}` on functions
/// `G^k → ℤ^m`, with `C^k` indexed by `tuple · m + coordinate`:
/// `(df)(g₁…g_{k+1}) = g₁·f(g₂…) + Σ_j (−1)^j f(…g_j g_{j+1}…) + (−1)^{k+1} f(g₁…g_k)`.
fn bar_differential(group: &GroupTable, reps: &[IntMatrix], m: usize, k: usize) -> IntMatrix {
    let n = group.order();
    let targets = tuple_product(group, k + 1);
    let mut d = IntMatrix::zeros(n.pow(k as u32 + 1) * m, n.pow(k as u32) * m);
    let mut add = |row: usize, col: usize, v: BigInt| {
        let cur = d.get(row, col);
        d.set(row, col, cur + v);
    };
    for t in &targets {
        let row0 = tuple_index(t, n) * m;
        let first = tuple_index(&t[1..], n) * m;
        for (i, j, v) in reps[t[0]].iter() {
            add(row0 + i, first + j, v.clone());
        }
        for j in 1..=k {
            let mut merged = t[..j - 1].to_vec();
            merged.push(group.mul(t[j - 1], t[j]));
            merged.extend_from_slice(&t[j + 1..]);
            let col0 = tuple_index(&merged, n) * m;
            let s = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            for a in 0..m {
                add(row0 + a, col0 + a, s.clone());
            }
        }
        let col0 = tuple_index(&t[..k], n) * m;
        let s = if (k + 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for a in 0..m {
            add(row0 + a, col0 + a, s.clone());
        }
    }
    d
}

/// `Hⁱ(G, M)` for `i ≤ 2` from the standard bar resolution.
pub fn group_cohomology_oracle(group: &GroupTable, reps: &[IntMatrix], i: usize) -> Result<FpModule> {
    if i > 2 {
        return Err(Error::BadInput(format!("oracle covers degrees 0..=2, got {i}")));
    }
    let m = validate_representation(group, reps)?;
    let n = group.order();
    let d_out = bar_differential(group, reps, m, i);
    let d_in = if i == 0 {
        IntMatrix::zeros(m, 0)
    } else {
        bar_differential(group, reps, m, i - 1)
    };
    debug_assert_eq!(d_in.rows(), n.pow(i as u32) * m);
    complex_cohomology(&d_in, &d_out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::{invariants, validate_comodule};
    use crate::exactlin::BaseScalar;

    fn swap() -> Vec<IntMatrix> {
        vec![IntMatrix::identity(2), IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])]
    }

    fn sign() -> Vec<IntMatrix> {
        vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![-1]])]
    }

    #[test]
    fn swap_invariants() {
        let g = GroupTable::cyclic(2);
        let m = action_to_coaction(&g, &swap()).unwrap();
        assert!(validate_comodule(&m).passed());
        let inv = invariants(&m);
        assert_eq!(inv.inclusion().cols(), 1);
        let col = inv.inclusion().column(0);
        assert_eq!(col[0], col[1]);
        assert!(col[0] == BigInt::one() || col[0] == -BigInt::one());
    }

    #[test]
    fn trivial_rep_gives_trivial_coaction() {
        let g = GroupTable::cyclic(3);
        let reps = vec![IntMatrix::identity(2); 3];
        let m = action_to_coaction(&g, &reps).unwrap();
        assert_eq!(m, Comodule::trivial(constant_group(&g), 2));
    }

    #[test]
    fn sign_has_no_integral_invariants() {
        let m = action_to_coaction(&GroupTable::cyclic(2), &sign()).unwrap();
        assert!(invariants(&m).module().is_zero());
        assert_eq!(m.scalar(), BaseScalar::Int);
    }

    #[test]
    fn non_representations_rejected() {
        let g = GroupTable::cyclic(2);
        let bad = vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![2]])];
        assert!(matches!(action_to_coaction(&g, &bad), Err(Error::NotARepresentation(_))));
        assert!(action_to_coaction(&g, &sign()[..1]).is_err());
        let g3 = GroupTable::cyclic(3);
        let wrong = vec![IntMatrix::identity(1), IntMatrix::from_rows(&[vec![-1]]), IntMatrix::from_rows(&[vec![-1]])];
        assert!(action_to_coaction(&g3, &wrong).is_err());
    }

    #[test]
    fn oracle_examples() {
        let g = GroupTable::cyclic(2);
        let h1 = group_cohomology_oracle(&g, &sign(), 1).unwrap();
        assert_eq!(h1.torsion(), &[BigInt::from(2)]);
        assert!(group_cohomology_oracle(&g, &swap(), 1).unwrap().is_zero());
        let triv = vec![IntMatrix::identity(2); 2];
        assert_eq!(group_cohomology_oracle(&g, &triv, 0).unwrap(), FpModule::free(2));
        // H²(ℤ/2, ℤ) = ℤ/2, H¹(ℤ/2, ℤ) = 0
        let one = vec![IntMatrix::identity(1); 2];
        assert!(group_cohomology_oracle(&g, &one, 1).unwrap().is_zero());
        assert_eq!(group_cohomology_oracle(&g, &one, 2).unwrap().torsion(), &[BigInt::from(2)]);
        assert!(group_cohomology_oracle(&g, &one, 3).is_err());
    }
}
