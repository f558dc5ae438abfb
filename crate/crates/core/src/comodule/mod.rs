//! Right comodules over finite Hopf algebras, their invariants and cobar
//! cohomology, and the behaviour of invariants under base change.
//!
//! A comodule of rank `m` over `C` (rank `c`) is stored as its coaction
//! matrix `Ω` of shape `(m·c) × m`: column `k` holds `ω(e_k)` in the basis
//! `eᵢ ⊗ bⱼ ↦ i·c + j`.

mod cobar;
mod group;
mod rho;

pub use cobar::{cobar_complex, CobarComplex, DEFAULT_MAX_DEGREE, TERM_LIMIT};
pub use group::{action_to_coaction, group_cohomology_oracle, validate_representation};
pub use rho::{rho, universal_coefficient_check, RhoReport, UcsReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, BaseScalar, IntMatrix, Kernel, ScalarModule};
use crate::hopf::{base_change_hopf, AxiomCheck, HopfAlgebra, HopfRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    hopf: HopfAlgebra,
    rank: usize,
    coaction: IntMatrix,
}

impl Comodule {
    /// Wraps a coaction matrix, checking its shape. Entries are reduced into
    /// the Hopf algebra's scalar ring.
    pub fn new(hopf: HopfAlgebra, coaction: IntMatrix) -> Result<Self> {
        let c = hopf.rank();
        let m = coaction.cols();
        if coaction.rows() != m * c {
            return Err(Error::mismatch(
                "coaction",
                format!("{}x{m}", m * c),
                format!("{}x{}", coaction.rows(), coaction.cols()),
            ));
        }
        let coaction = coaction.reduce(hopf.scalar());
        Ok(Comodule {
            hopf,
            rank: m,
            coaction,
        })
    }

    /// The trivial comodule `ω(e) = e ⊗ 1` on a free module of rank `m`.
    pub fn trivial(hopf: HopfAlgebra, m: usize) -> Self {
        let coaction = IntMatrix::identity(m).kron(&hopf.unit_matrix());
        Comodule::new(hopf, coaction).expect("trivial coaction has the right shape")
    }

    /// Rank-one comodule `ω(e) = e ⊗ g` for a coordinate vector `g ∈ C`.
    pub fn rank_one(hopf: HopfAlgebra, g: &[num_bigint::BigInt]) -> Result<Self> {
        let coaction = IntMatrix::from_columns(hopf.rank(), &[g.to_vec()]);
        Comodule::new(hopf, coaction)
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn scalar(&self) -> BaseScalar {
        self.hopf.scalar()
    }

    pub fn coaction(&self) -> &IntMatrix {
        &self.coaction
    }

    /// `ι: M → M ⊗ C`, `m ↦ m ⊗ 1`.
    pub fn unit_inclusion(&self) -> IntMatrix {
        IntMatrix::identity(self.rank).kron(&self.hopf.unit_matrix())
    }

    /// `Ω − ι`, whose kernel is `M^G`.
    pub fn invariant_equations(&self) -> IntMatrix {
        self.coaction
            .sub(&self.unit_inclusion())
            .expect("same shape")
            .reduce(self.scalar())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComoduleReport {
    pub rank: usize,
    pub hopf: String,
    pub scalar: BaseScalar,
    pub checks: Vec<AxiomCheck>,
}

impl ComoduleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn first_bad_column(diff: &IntMatrix, scalar: BaseScalar) -> Option<usize> {
    diff.reduce(scalar).iter().map(|(_, j, _)| j).min()
}

/// Checks `(ω ⊗ id)∘ω = (id ⊗ Δ)∘ω` and `(id ⊗ ε)∘ω = id`; a failing
/// check names the first basis vector `e_k` on which it fails.
pub fn validate_comodule(m: &Comodule) -> ComoduleReport {
    let c = m.hopf.rank();
    let s = m.scalar();
    let omega = &m.coaction;
    let lhs = omega.kron(&IntMatrix::identity(c)).mul(omega).unwrap();
    let rhs = IntMatrix::identity(m.rank).kron(m.hopf.comult()).mul(omega).unwrap();
    let coassoc = first_bad_column(&lhs.sub(&rhs).unwrap(), s);
    let counit_map = IntMatrix::identity(m.rank).kron(m.hopf.counit()).mul(omega).unwrap();
    let counit = first_bad_column(&counit_map.sub(&IntMatrix::identity(m.rank)).unwrap(), s);
    let check = |axiom: &str, bad: Option<usize>| AxiomCheck {
        axiom: axiom.to_string(),
        passed: bad.is_none(),
        witness: bad.map(|k| vec![k]),
    };
    ComoduleReport {
        rank: m.rank,
        hopf: m.hopf.name().to_string(),
        scalar: s,
        checks: vec![check("coassociativity", coassoc), check("counit", counit)],
    }
}

/// `M^G = {m : ω(m) = m ⊗ 1}` with an inclusion into `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    /// Generators as columns of an `m × k` matrix (the inclusion into `M`).
    pub kernel: Kernel,
}

impl Invariants {
    pub fn inclusion(&self) -> &IntMatrix {
        &self.kernel.basis
    }

    pub fn module(&self) -> ScalarModule {
        self.kernel.module()
    }
}

/// Kernel of `Ω − ι` over the comodule's scalar ring. Over ℤ this is a
/// saturated lattice basis, over fields a basis, over ℤ/n independent cyclic
/// generators.
pub fn invariants(m: &Comodule) -> Invariants {
    Invariants {
        kernel: kernel_basis(&m.invariant_equations(), m.scalar()),
    }
}

/// `S ⊗ M` as a comodule over `S ⊗ C`.
pub fn base_change_comodule(m: &Comodule, scalar: BaseScalar) -> Result<Comodule> {
    let hopf = base_change_hopf(&m.hopf, scalar)?;
    Comodule::new(hopf, m.coaction.clone())
}

/// JSON form: `{"hopf": <name or inline>, "rank": m, "coaction": <matrix>}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hopf: Option<HopfRef>,
    pub rank: usize,
    pub coaction: IntMatrix,
}

impl ComoduleJson {
    pub fn from_comodule(m: &Comodule) -> Self {
        ComoduleJson {
            hopf: Some(HopfRef::Name(m.hopf.name().to_string())),
            rank: m.rank,
            coaction: m.coaction.clone(),
        }
    }

    /// Resolves the Hopf algebra, using `fallback` when the document does not
    /// name one. Naming two different algebras is an error.
    pub fn into_comodule(self, fallback: Option<&HopfRef>) -> Result<Comodule> {
        let hopf = match (&self.hopf, fallback) {
            (Some(HopfRef::Name(a)), Some(HopfRef::Name(b))) if a != b => {
                return Err(Error::BadInput(format!(
                    "comodule is over `{a}` but `{b}` was requested"
                )))
            }
            (Some(h), _) => h.resolve()?,
            (None, Some(h)) => h.resolve()?,
            (None, None) => {
                return Err(Error::BadInput("missing field `hopf` (no Hopf algebra given)".into()))
            }
        };
        if self.coaction.cols() != self.rank {
            return Err(Error::BadInput(format!(
                "field `rank` is {} but the coaction has {} columns",
                self.rank,
                self.coaction.cols()
            )));
        }
        Comodule::new(hopf, self.coaction)
    }
}
