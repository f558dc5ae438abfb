use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::group::GroupTable;
use super::HopfAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{is_prime, BaseScalar, IntMatrix};

fn unit_vector(c: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); c];
    v[k] = BigInt::one();
    v
}

/// `μ_n = Spec ℤ[x]/(xⁿ − 1)` with basis `1, x, …, x^{n−1}`, all grouplike.
pub fn mu_n(n: usize) -> HopfAlgebra {
    assert!(n >= 1, "mu_n needs n >= 1");
    let mult = (0..n)
        .map(|i| (0..n).map(|j| unit_vector(n, (i + j) % n)).collect())
        .collect();
    let mut comult = IntMatrix::zeros(n * n, n);
    let mut antipode = IntMatrix::zeros(n, n);
    for k in 0..n {
        comult.set(k * n + k, k, BigInt::one());
        antipode.set((n - k) % n, k, BigInt::one());
    }
    let counit = IntMatrix::from_rows(&[vec![1; n]]);
    HopfAlgebra::from_parts(
        format!("mu_{n}"),
        BaseScalar::Int,
        mult,
        unit_vector(n, 0),
        comult,
        counit,
        antipode,
    )
    .expect("mu_n structure constants")
}

/// Functions on a finite group: basis `δ_g`, pointwise product,
/// `Δδ_g = Σ_{hk=g} δ_h ⊗ δ_k`, `ε(δ_g) = [g = e]`, `S(δ_g) = δ_{g⁻¹}`.
pub fn constant_group(group: &GroupTable) -> HopfAlgebra {
    let n = group.order();
    let mult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { unit_vector(n, i) } else { vec![BigInt::zero(); n] })
                .collect()
        })
        .collect();
    let mut comult = IntMatrix::zeros(n * n, n);
    for h in 0..n {
        for k in 0..n {
            comult.set(h * n + k, group.mul(h, k), BigInt::one());
        }
    }
    let mut counit = IntMatrix::zeros(1, n);
    counit.set(0, group.identity(), BigInt::one());
    let mut antipode = IntMatrix::zeros(n, n);
    for g in 0..n {
        antipode.set(group.inverse(g), g, BigInt::one());
    }
    HopfAlgebra::from_parts(
        format!("const_{}", group.name()),
        BaseScalar::Int,
        mult,
        vec![BigInt::one(); n],
        comult,
        counit,
        antipode,
    )
    .expect("constant group structure constants")
}

/// `α_p = Spec F_p[x]/(x^p)` with `x` primitive.
pub fn alpha_p(p: u64) -> Result<HopfAlgebra> {
    if !is_prime(p) {
        return Err(Error::InvalidScalar(format!("alpha_p needs a prime, got {p}")));
    }
    let c = p as usize;
    let scalar = BaseScalar::Fp(p);
    let mult = (0..c)
        .map(|i| {
            (0..c)
                .map(|j| if i + j < c { unit_vector(c, i + j) } else { vec![BigInt::zero(); c] })
                .collect()
        })
        .collect();
    // Δ(x^k) = Σ_i C(k, i) x^i ⊗ x^{k−i}
    let mut comult = IntMatrix::zeros(c * c, c);
    let mut antipode = IntMatrix::zeros(c, c);
    for k in 0..c {
        let mut binom = BigInt::one();
        for i in 0..=k {
            comult.set(i * c + (k - i), k, scalar.reduce(&binom));
            binom = binom * (k - i) / (i + 1);
        }
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        antipode.set(k, k, scalar.reduce(&sign));
    }
    let mut counit = IntMatrix::zeros(1, c);
    counit.set(0, 0, BigInt::one());
    HopfAlgebra::from_parts(format!("alpha_{p}"), scalar, mult, unit_vector(c, 0), comult, counit, antipode)
}

/// Built-in algebras by name: `mu_<n>`, `const_<group>` (e.g. `const_Z2`,
/// `const_Z2xZ2`) and `alpha_<p>`.
pub fn builtin(name: &str) -> Result<HopfAlgebra> {
    let unknown = || Error::BadInput(format!("unknown built-in Hopf algebra `{name}`"));
    if let Some(n) = name.strip_prefix("mu_") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if n == 0 {
            return Err(unknown());
        }
        return Ok(mu_n(n));
    }
    if let Some(g) = name.strip_prefix("const_") {
        let group = GroupTable::by_name(g).ok_or_else(unknown)?;
        return Ok(constant_group(&group));
    }
    if let Some(p) = name.strip_prefix("alpha_") {
        return alpha_p(p.parse().map_err(|_| unknown())?);
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::validate_axioms;

    #[test]
    fn mu_examples() {
        let one = mu_n(1);
        assert_eq!(one.rank(), 1);
        let two = mu_n(2);
        // x² = 1 and Δx = x ⊗ x
        assert_eq!(two.mult_tensor()[1][1], unit_vector(2, 0));
        assert_eq!(two.comult().column(1), unit_vector(4, 3));
        let three = mu_n(3);
        assert_eq!(three.antipode().column(1), unit_vector(3, 2));
    }

    #[test]
    fn constant_group_examples() {
        let z2 = constant_group(&GroupTable::cyclic(2));
        assert_eq!(z2.rank(), 2);
        // Δδ₁ = δ₀ ⊗ δ₁ + δ₁ ⊗ δ₀
        let col: Vec<BigInt> = z2.comult().column(1);
        assert_eq!(col, vec![0, 1, 1, 0].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert!(validate_axioms(&constant_group(&GroupTable::cyclic(3))).passed());
    }

    #[test]
    fn alpha_examples() {
        let a2 = alpha_p(2).unwrap();
        assert_eq!(a2.mult_tensor()[1][1], vec![BigInt::zero(); 2]);
        assert_eq!(a2.comult().column(1), vec![0, 1, 1, 0].into_iter().map(BigInt::from).collect::<Vec<_>>());
        let a3 = alpha_p(3).unwrap();
        // Δ(x²) = x² ⊗ 1 + 2 x ⊗ x + 1 ⊗ x²
        let col = a3.comult().column(2);
        assert_eq!(col[2 * 3], BigInt::one());
        assert_eq!(col[3 + 1], BigInt::from(2));
        assert_eq!(col[2], BigInt::one());
        assert_eq!(col.iter().filter(|x| !x.is_zero()).count(), 3);
        assert!(alpha_p(4).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(builtin("mu_2").unwrap().name(), "mu_2");
        assert_eq!(builtin("const_Z2xZ2").unwrap().rank(), 4);
        assert_eq!(builtin("alpha_3").unwrap().scalar(), BaseScalar::Fp(3));
        assert!(builtin("beta_2").is_err());
        assert!(builtin("mu_0").is_err());
    }
}
