//! Finite rank free commutative Hopf algebras given by structure constants.
//!
//! A Hopf algebra `C` of rank `c` has basis `b₀, …, b_{c−1}`. Tensor powers use
//! the row-major convention `bᵢ ⊗ bⱼ ↦ i·c + j`, and all structure maps are
//! integer matrices whose entries are read in the scalar ring (reduced modulo
//! `n` over ℤ/n and `F_p`).

mod builtins;
mod group;
mod json;

pub use builtins::{alpha_p, builtin, constant_group, mu_n};
pub use group::GroupTable;
pub use json::{HopfJson, HopfRef};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{BaseScalar, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    name: String,
    scalar: BaseScalar,
    rank: usize,
    /// `mult[i][j]` holds the coordinates of `bᵢ·bⱼ`.
    mult: Vec<Vec<Vec<BigInt>>>,
    unit: Vec<BigInt>,
    comult: IntMatrix,
    counit: IntMatrix,
    antipode: IntMatrix,
}

impl HopfAlgebra {
    /// Assembles a Hopf algebra from its structure constants, checking shapes
    /// (the axioms are checked separately by [`validate_axioms`]).
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: impl Into<String>,
        scalar: BaseScalar,
        mult: Vec<Vec<Vec<BigInt>>>,
        unit: Vec<BigInt>,
        comult: IntMatrix,
        counit: IntMatrix,
        antipode: IntMatrix,
    ) -> Result<Self> {
        let scalar = scalar.validate()?;
        let c = unit.len();
        if c == 0 {
            return Err(Error::BadInput("Hopf algebra must have positive rank".into()));
        }
        if mult.len() != c || mult.iter().any(|r| r.len() != c || r.iter().any(|v| v.len() != c)) {
            return Err(Error::mismatch("multiplication tensor", format!("{c}x{c}x{c}"), "ragged or wrong size"));
        }
        let shapes = [
            ("comultiplication", comult.shape(), (c * c, c)),
            ("counit", counit.shape(), (1, c)),
            ("antipode", antipode.shape(), (c, c)),
        ];
        for (what, got, want) in shapes {
            if got != want {
                return Err(Error::mismatch(what, format!("{}x{}", want.0, want.1), format!("{}x{}", got.0, got.1)));
            }
        }
        let reduce_vec = |v: Vec<BigInt>| v.iter().map(|x| scalar.reduce(x)).collect::<Vec<_>>();
        Ok(HopfAlgebra {
            name: name.into(),
            scalar,
            rank: c,
            mult: mult
                .into_iter()
                .map(|row| row.into_iter().map(reduce_vec).collect())
                .collect(),
            unit: reduce_vec(unit),
            comult: comult.reduce(scalar),
            counit: counit.reduce(scalar),
            antipode: antipode.reduce(scalar),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scalar(&self) -> BaseScalar {
        self.scalar
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mult_tensor(&self) -> &[Vec<Vec<BigInt>>] {
        &self.mult
    }

    /// Coordinates of `1 ∈ C`.
    pub fn unit(&self) -> &[BigInt] {
        &self.unit
    }

    /// The unit map `R → C` as a `c × 1` matrix.
    pub fn unit_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rank, &[self.unit.clone()])
    }

    /// `Δ` as a `c² × c` matrix (column `k` = `Δ(b_k)`).
    pub fn comult(&self) -> &IntMatrix {
        &self.comult
    }

    /// `ε` as a `1 × c` matrix.
    pub fn counit(&self) -> &IntMatrix {
        &self.counit
    }

    pub fn antipode(&self) -> &IntMatrix {
        &self.antipode
    }

    /// Multiplication `μ: C ⊗ C → C` as a `c × c²` matrix.
    pub fn mult_matrix(&self) -> IntMatrix {
        let c = self.rank;
        let mut m = IntMatrix::zeros(c, c * c);
        for i in 0..c {
            for j in 0..c {
                for (k, v) in self.mult[i][j].iter().enumerate() {
                    m.set(k, i * c + j, v.clone());
                }
            }
        }
        m
    }

    /// Renames the algebra (used by built-ins and base change).
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Reduces all structure constants of an integral Hopf algebra into
/// `scalar`. Over ℚ the constants are unchanged.
pub fn base_change_hopf(h: &HopfAlgebra, scalar: BaseScalar) -> Result<HopfAlgebra> {
    let scalar = scalar.validate()?;
    if h.scalar != BaseScalar::Int && h.scalar != scalar {
        return Err(Error::InvalidScalar(format!(
            "cannot base change a Hopf algebra over {} to {scalar}",
            h.scalar
        )));
    }
    let name = if scalar == h.scalar {
        h.name.clone()
    } else {
        format!("{}@{scalar}", h.name)
    };
    HopfAlgebra::from_parts(
        name,
        scalar,
        h.mult.clone(),
        h.unit.clone(),
        h.comult.clone(),
        h.counit.clone(),
        h.antipode.clone(),
    )
}

/// Outcome of one axiom check. `witness` lists the basis indices of the
/// first failing input (e.g. `[i, j, k]` for associativity on `bᵢ, bⱼ, b_k`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub scalar: BaseScalar,
    pub rank: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

/// Splits a flat tensor index into base-`c` digits, most significant first.
pub(crate) fn tensor_digits(mut index: usize, c: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = index % c;
        index /= c;
    }
    d
}

fn compare(
    scalar: BaseScalar,
    axiom: &str,
    lhs: &IntMatrix,
    rhs: &IntMatrix,
    digits: impl Fn(usize) -> Vec<usize>,
) -> AxiomCheck {
    let diff = lhs.sub(rhs).expect("axiom sides have equal shapes").reduce(scalar);
    let witness = diff.iter().map(|(_, j, _)| j).min().map(digits);
    AxiomCheck {
        axiom: axiom.to_string(),
        passed: witness.is_none(),
        witness,
    }
}

/// Checks every Hopf algebra axiom as an exact identity of structure
/// matrices over the scalar ring.
pub fn validate_axioms(h: &HopfAlgebra) -> AxiomReport {
    let c = h.rank;
    let s = h.scalar;
    let id = IntMatrix::identity(c);
    let mu = h.mult_matrix();
    let delta = &h.comult;
    let eps = &h.counit;
    let unit = h.unit_matrix();
    let antipode = &h.antipode;
    let two = |k| tensor_digits(k, c, 2);
    let three = |k| tensor_digits(k, c, 3);
    let one = |k| vec![k];

    let mut checks = Vec::new();

    let assoc_l = mu.mul(&mu.kron(&id)).unwrap();
    let assoc_r = mu.mul(&id.kron(&mu)).unwrap();
    checks.push(compare(s, "associativity", &assoc_l, &assoc_r, three));

    let swap = {
        let mut t = IntMatrix::zeros(c * c, c * c);
        for i in 0..c {
            for j in 0..c {
                t.set(j * c + i, i * c + j, BigInt::one());
            }
        }
        t
    };
    checks.push(compare(s, "commutativity", &mu.mul(&swap).unwrap(), &mu, two));

    checks.push(compare(s, "left unit", &mu.mul(&unit.kron(&id)).unwrap(), &id, one));
    checks.push(compare(s, "right unit", &mu.mul(&id.kron(&unit)).unwrap(), &id, one));

    let coassoc_l = delta.kron(&id).mul(delta).unwrap();
    let coassoc_r = id.kron(delta).mul(delta).unwrap();
    checks.push(compare(s, "coassociativity", &coassoc_l, &coassoc_r, one));

    checks.push(compare(s, "left counit", &eps.kron(&id).mul(delta).unwrap(), &id, one));
    checks.push(compare(s, "right counit", &id.kron(eps).mul(delta).unwrap(), &id, one));

    // Δ(bᵢbⱼ) = Δ(bᵢ)Δ(bⱼ) with the product of C ⊗ C computed factorwise
    let mu_cc = mu.kron(&mu).mul(&id.kron(&swap).kron(&id)).unwrap();
    let delta_mult_l = delta.mul(&mu).unwrap();
    let delta_mult_r = mu_cc.mul(&delta.kron(delta)).unwrap();
    checks.push(compare(s, "comultiplication is multiplicative", &delta_mult_l, &delta_mult_r, two));
    checks.push(compare(
        s,
        "comultiplication is unital",
        &delta.mul(&unit).unwrap(),
        &unit.kron(&unit),
        one,
    ));

    checks.push(compare(
        s,
        "counit is multiplicative",
        &eps.mul(&mu).unwrap(),
        &eps.kron(eps),
        two,
    ));
    checks.push(compare(
        s,
        "counit is unital",
        &eps.mul(&unit).unwrap(),
        &IntMatrix::identity(1),
        one,
    ));

    let u_eps = unit.mul(eps).unwrap();
    let left = mu.mul(&antipode.kron(&id)).unwrap().mul(delta).unwrap();
    let right = mu.mul(&id.kron(antipode)).unwrap().mul(delta).unwrap();
    checks.push(compare(s, "left antipode", &left, &u_eps, one));
    checks.push(compare(s, "right antipode", &right, &u_eps, one));

    AxiomReport {
        algebra: h.name.clone(),
        scalar: s,
        rank: c,
        checks,
    }
}

/// Evaluates `ε` on a coordinate vector.
pub fn counit_of(h: &HopfAlgebra, v: &[BigInt]) -> BigInt {
    let e = h.counit.mul_vec(v);
    h.scalar.reduce(e.first().unwrap_or(&BigInt::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_pass_over_every_scalar() {
        let scalars = [
            BaseScalar::Int,
            BaseScalar::Rat,
            BaseScalar::Fp(2),
            BaseScalar::Fp(3),
            BaseScalar::Fp(5),
            BaseScalar::IntMod(4),
            BaseScalar::IntMod(6),
        ];
        for name in ["mu_1", "mu_2", "mu_3", "const_Z2", "const_Z3", "const_Z2xZ2"] {
            let h = builtin(name).unwrap();
            for s in scalars {
                let r = validate_axioms(&base_change_hopf(&h, s).unwrap());
                assert!(r.passed(), "{name} over {s}: {:?}", r.first_failure());
            }
        }
        for p in [2, 3, 5] {
            let r = validate_axioms(&alpha_p(p).unwrap());
            assert!(r.passed(), "alpha_{p}: {:?}", r.first_failure());
        }
    }

    #[test]
    fn mu_2_with_broken_comultiplication() {
        let h = mu_n(2);
        // Δx = x ⊗ 1: column 1 has a single entry at index 1·2 + 0
        let mut comult = h.comult().clone();
        comult.set(3, 1, BigInt::zero());
        comult.set(2, 1, BigInt::one());
        let broken = HopfAlgebra::from_parts(
            "mu_2 broken",
            BaseScalar::Int,
            h.mult_tensor().to_vec(),
            h.unit().to_vec(),
            comult,
            h.counit().clone(),
            h.antipode().clone(),
        )
        .unwrap();
        let r = validate_axioms(&broken);
        assert!(r.check("coassociativity").unwrap().passed);
        let counit = r.check("left counit").unwrap();
        assert!(!counit.passed);
        // (ε ⊗ id)Δx = 1 ≠ x: witness is the basis element x
        assert_eq!(counit.witness, Some(vec![1]));
        assert_eq!(r.first_failure().unwrap().axiom, "left counit");
    }

    #[test]
    fn base_change_rejects_incompatible_scalars() {
        let a = alpha_p(2).unwrap();
        assert!(base_change_hopf(&a, BaseScalar::Fp(3)).is_err());
        assert!(base_change_hopf(&a, BaseScalar::Fp(2)).is_ok());
    }

    #[test]
    fn constant_group_counit_antipode() {
        for name in ["const_Z2", "const_Z3", "const_Z2xZ2"] {
            let h = base_change_hopf(&builtin(name).unwrap(), BaseScalar::Rat).unwrap();
            // ε ∘ S = ε
            assert_eq!(h.counit().mul(h.antipode()).unwrap(), *h.counit());
        }
    }
}
