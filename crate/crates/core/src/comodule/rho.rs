use num_bigint::BigInt;
use serde::Serialize;

use super::{base_change_comodule, cobar_complex, Comodule};
use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_basis, kernel_coordinates, kernel_lattice, lattice_quotient, rank, tensor_module, tor1, BaseScalar,
    FpModule, IntMatrix, ScalarModule,
};

/// The natural map `ρ_S: S ⊗ M^G → (S ⊗ M)^G`.
#[derive(Clone, Debug, Serialize)]
pub struct RhoReport {
    pub scalar: BaseScalar,
    /// `S ⊗ M^G`.
    pub source: ScalarModule,
    /// `(S ⊗ M)^G`.
    pub target: ScalarModule,
    /// Columns: images of the integral invariant basis, in the target's
    /// generators (entries reduced modulo the generator orders).
    pub matrix: IntMatrix,
    pub injective: bool,
    pub surjective: bool,
    pub cokernel: ScalarModule,
}

impl RhoReport {
    pub fn is_isomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

fn require_int(m: &Comodule) -> Result<()> {
    if m.scalar() != BaseScalar::Int {
        return Err(Error::InvalidScalar(format!(
            "base change starts from a comodule over Z, got {}",
            m.scalar()
        )));
    }
    Ok(())
}

pub fn rho(scalar: BaseScalar, m: &Comodule) -> Result<RhoReport> {
    require_int(m)?;
    scalar.validate()?;
    let eqs = m.invariant_equations();
    let j = kernel_basis(&eqs, BaseScalar::Int).basis;
    let k = j.cols();
    let source = tensor_module(&FpModule::free(k), scalar);
    let sm = base_change_comodule(m, scalar)?;
    let target_kernel = kernel_basis(&sm.invariant_equations(), scalar);
    let target = target_kernel.module();
    let matrix = kernel_coordinates(&sm.invariant_equations(), scalar, &j)?;
    let (injective, cokernel) = match scalar.modulus() {
        None => {
            let r = rank(&j);
            let dim = target_kernel.len() - r;
            (r == k, ScalarModule::free(BaseScalar::Rat, dim))
        }
        Some(0) => (true, ScalarModule::zero(scalar)),
        Some(n) => {
            let injective = kernel_basis(&j, scalar).is_empty();
            let mm = m.rank();
            let image = j.hstack(&IntMatrix::identity(mm).scale(&BigInt::from(n)))?;
            let q = lattice_quotient(&kernel_lattice(&eqs, n), &image)?;
            let cokernel = ScalarModule {
                scalar,
                decomposition: q.decomposition().clone(),
            };
            (injective, cokernel)
        }
    };
    Ok(RhoReport {
        scalar,
        source,
        target,
        matrix,
        injective,
        surjective: cokernel.is_zero(),
        cokernel,
    })
}

/// The three terms of `0 → S⊗M^G → (S⊗M)^G → Tor₁(S, H¹(G, M)) → 0`,
/// each computed on its own.
#[derive(Clone, Debug, Serialize)]
pub struct UcsReport {
    pub scalar: BaseScalar,
    pub rho: RhoReport,
    /// `H¹(G, M)` over ℤ from the cobar complex.
    pub h1: FpModule,
    pub tor1: ScalarModule,
    pub exact: bool,
}

/// Checks that `ρ_S` is injective and `coker ρ_S ≅ Tor₁(S, H¹)`.
pub fn universal_coefficient_check(m: &Comodule, scalar: BaseScalar) -> Result<UcsReport> {
    let r = rho(scalar, m)?;
    let h1 = cobar_complex(m, 2)?.integral_cohomology(1)?;
    let t = tor1(scalar, &h1);
    let exact = r.injective && r.cokernel.decomposition == t.decomposition;
    if !exact {
        return Err(Error::ExactnessFailure(format!(
            "over {scalar}: S (x) M^G = {}, (S (x) M)^G = {}, rho injective = {}, coker rho = {}, H^1 = {}, Tor_1 = {}",
            r.source, r.target, r.injective, r.cokernel, h1, t
        )));
    }
    Ok(UcsReport {
        scalar,
        rho: r,
        h1,
        tor1: t,
        exact,
    })
}
