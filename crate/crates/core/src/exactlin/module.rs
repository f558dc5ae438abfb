use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{IntMatrix, IntText};
use super::scalar::BaseScalar;
use super::smith::{smith_normal_form, SmithForm};

/// Isomorphism type `ℤ^free_rank ⊕ ⊕ᵢ ℤ/dᵢ` with `2 ≤ d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Decomposition {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Decomposition {
    pub fn free(rank: usize) -> Self {
        Decomposition {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Canonical decomposition of `⊕ ℤ/cᵢ` for arbitrary cyclic orders
    /// (order 0 meaning ℤ, order 1 meaning the zero module).
    pub fn from_cyclic_orders<'a>(orders: impl IntoIterator<Item = &'a BigInt>) -> Self {
        let mut free_rank = 0;
        let mut finite = Vec::new();
        for o in orders {
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                finite.push(o.clone());
            }
        }
        let diag = IntMatrix::diagonal(finite.len(), finite.len(), &finite);
        let torsion = smith_normal_form(&diag)
            .invariant_factors()
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        Decomposition { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Finitely presented ℤ-module `coker(P: ℤ^a → ℤ^b)`.
#[derive(Clone, Debug)]
pub struct FpModule {
    presentation: IntMatrix,
    smith: SmithForm,
    decomposition: Decomposition,
}

impl PartialEq for FpModule {
    /// Modules compare by isomorphism type.
    fn eq(&self, other: &Self) -> bool {
        self.decomposition == other.decomposition
    }
}

impl FpModule {
    pub fn new(presentation: IntMatrix) -> Self {
        let smith = smith_normal_form(&presentation);
        let free_rank = presentation.rows() - smith.rank();
        let torsion = smith
            .invariant_factors()
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        FpModule {
            presentation,
            smith,
            decomposition: Decomposition { free_rank, torsion },
        }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(IntMatrix::zeros(rank, 0))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// `⊕ ℤ/dᵢ`, with `dᵢ = 0` giving a free summand.
    pub fn cyclic_sum(orders: &[BigInt]) -> Self {
        let n = orders.len();
        Self::new(IntMatrix::diagonal(n, n, orders))
    }

    pub fn from_decomposition(d: &Decomposition) -> Self {
        let orders: Vec<BigInt> = d
            .torsion
            .iter()
            .cloned()
            .chain(std::iter::repeat(BigInt::zero()).take(d.free_rank))
            .collect();
        Self::cyclic_sum(&orders)
    }

    pub fn presentation(&self) -> &IntMatrix {
        &self.presentation
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn free_rank(&self) -> usize {
        self.decomposition.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.decomposition.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.decomposition.is_zero()
    }

    /// Orders of the cyclic summands in SNF coordinates, one per generator
    /// of the presentation (1 for trivial summands, 0 for free ones).
    pub fn cyclic_orders(&self) -> Vec<BigInt> {
        (0..self.presentation.rows())
            .map(|i| self.smith.diagonal_entry(i))
            .collect()
    }

    /// A generator of the first torsion summand together with its order,
    /// expressed in the presentation's generators.
    pub fn torsion_witness(&self) -> Option<(Vec<BigInt>, BigInt)> {
        let orders = self.cyclic_orders();
        let i = orders.iter().position(|d| !d.is_zero() && !d.is_one())?;
        // the i-th SNF generator is column i of U⁻¹
        Some((self.smith.u_inv.column(i), orders[i].clone()))
    }
}

impl fmt::Display for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.decomposition.fmt(f)
    }
}

/// Module over a scalar ring, described through its isomorphism type as an
/// abelian group (for ℚ: `free_rank` is the dimension and `torsion` is empty).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarModule {
    pub scalar: BaseScalar,
    pub decomposition: Decomposition,
}

impl ScalarModule {
    pub fn zero(scalar: BaseScalar) -> Self {
        ScalarModule {
            scalar,
            decomposition: Decomposition::default(),
        }
    }

    /// The free module `S^rank`.
    pub fn free(scalar: BaseScalar, rank: usize) -> Self {
        let decomposition = match scalar.modulus() {
            Some(n) if n > 0 => Decomposition::from_cyclic_orders(&vec![BigInt::from(n); rank]),
            _ => Decomposition::free(rank),
        };
        ScalarModule {
            scalar,
            decomposition,
        }
    }

    /// Dimension when the scalar ring is a field.
    pub fn dimension(&self) -> Option<usize> {
        match self.scalar {
            BaseScalar::Rat => Some(self.decomposition.free_rank),
            BaseScalar::Fp(_) => Some(self.decomposition.torsion.len()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.decomposition.is_zero()
    }
}

impl fmt::Display for ScalarModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.scalar, self.dimension()) {
            (BaseScalar::Rat, Some(d)) => write!(f, "Q^{d}"),
            (BaseScalar::Fp(p), Some(d)) => write!(f, "F{p}^{d}"),
            _ => self.decomposition.fmt(f),
        }
    }
}

/// Serialized summary of a module, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub scalar: BaseScalar,
    pub free_rank: usize,
    pub torsion: Vec<IntText>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub text: String,
}

impl From<&ScalarModule> for ModuleReport {
    fn from(m: &ScalarModule) -> Self {
        ModuleReport {
            scalar: m.scalar,
            free_rank: m.decomposition.free_rank,
            torsion: m.decomposition.torsion.iter().cloned().map(IntText).collect(),
            dimension: m.dimension(),
            text: m.to_string(),
        }
    }
}

impl From<&FpModule> for ModuleReport {
    fn from(m: &FpModule) -> Self {
        (&m.over_int()).into()
    }
}

impl Serialize for ScalarModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModuleReport::from(self).serialize(s)
    }
}

impl Serialize for FpModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ModuleReport::from(self).serialize(s)
    }
}

impl FpModule {
    pub fn over_int(&self) -> ScalarModule {
        ScalarModule {
            scalar: BaseScalar::Int,
            decomposition: self.decomposition.clone(),
        }
    }
}

/// `coker(A)` as a finitely presented module.
pub fn cokernel(a: &IntMatrix) -> FpModule {
    FpModule::new(a.clone())
}

/// `S ⊗ M` for a finitely presented ℤ-module `M`.
pub fn tensor_module(m: &FpModule, scalar: BaseScalar) -> ScalarModule {
    let decomposition = match scalar.modulus() {
        None => Decomposition::free(m.free_rank()),
        Some(0) => m.decomposition.clone(),
        Some(n) => {
            let n = BigInt::from(n);
            let orders: Vec<BigInt> = std::iter::repeat(n.clone())
                .take(m.free_rank())
                .chain(m.torsion().iter().map(|d| d.gcd(&n)))
                .collect();
            Decomposition::from_cyclic_orders(&orders)
        }
    };
    ScalarModule {
        scalar,
        decomposition,
    }
}

/// `Tor₁^ℤ(S, M)` from the invariant factors of `M`:
/// `Tor₁(ℤ/n, ℤ/d) = ℤ/gcd(n, d)`, while ℚ, ℤ and free summands contribute nothing.
pub fn tor1(scalar: BaseScalar, m: &FpModule) -> ScalarModule {
    let decomposition = match scalar.modulus() {
        None | Some(0) => Decomposition::default(),
        Some(n) => {
            let n = BigInt::from(n);
            let orders: Vec<BigInt> = m.torsion().iter().map(|d| d.gcd(&n)).collect();
            Decomposition::from_cyclic_orders(&orders)
        }
    };
    ScalarModule {
        scalar,
        decomposition,
    }
}
