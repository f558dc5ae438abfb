//! Base change of invariants along `ℤ → S` for a map `φ: V → M^G`.
//!
//! Everything lives over `R = A = ℤ`: `V` is a finitely generated abelian
//! group given by a presentation, `M` a comodule on a free ℤ-module. The
//! condition "for every algebraically closed field `K`" is checked at
//! characteristic 0 and at each prime where some relevant matrix changes
//! rank; at every other prime the field computations coincide with those
//! over ℚ, and invariants of a finite flat group scheme commute with field
//! extensions, so the prime field decides the algebraically closed case.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::comodule::{
    base_change_comodule, cobar_complex, invariants, validate_comodule, Comodule, ComoduleJson,
};
use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_lattice, lattice_quotient, prime_divisors, rank, smith_normal_form, tensor_module, tor1, BaseScalar,
    FpModule, IntMatrix, IntText, ScalarModule,
};
use crate::hopf::HopfRef;

/// Printed by the command line front end next to every pipeline report.
pub const FIELD_REDUCTION_NOTE: &str = "Invariants of a finite flat group scheme commute with field \
extension, so bijectivity of phi_K for an algebraically closed K is decided over its prime field. Away \
from the listed primes every matrix involved has the same rank mod p as over Q, so only characteristic \
0 and the listed primes need checking.";

/// Default sample algebras for the conclusion checks.
pub fn default_algebras() -> Vec<BaseScalar> {
    vec![
        BaseScalar::Rat,
        BaseScalar::Fp(2),
        BaseScalar::Fp(3),
        BaseScalar::Fp(5),
        BaseScalar::IntMod(4),
        BaseScalar::IntMod(6),
    ]
}

/// `φ: V → M^G` with `V = coker(P)` and `φ` given by the images of the
/// generators of `V`, as columns in the coordinates of `M`.
#[derive(Clone, Debug)]
pub struct TheoremInstance {
    pub comodule: Comodule,
    pub v: FpModule,
    pub phi: IntMatrix,
    pub sample_algebras: Vec<BaseScalar>,
}

impl TheoremInstance {
    /// Checks that `M` is a valid comodule over ℤ and that `φ` is a well
    /// defined map into `M^G`.
    pub fn new(
        comodule: Comodule,
        v: FpModule,
        phi: IntMatrix,
        sample_algebras: Vec<BaseScalar>,
    ) -> Result<Self> {
        if comodule.scalar() != BaseScalar::Int {
            return Err(Error::InvalidScalar(format!("instance comodule must be over Z, got {}", comodule.scalar())));
        }
        let report = validate_comodule(&comodule);
        if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
            return Err(Error::ConstraintViolation(format!("comodule fails the {} axiom", bad.axiom)));
        }
        if sample_algebras.is_empty() {
            return Err(Error::BadInput("sample_algebras must not be empty".into()));
        }
        for s in &sample_algebras {
            s.validate()?;
        }
        let b = v.presentation().rows();
        if phi.shape() != (comodule.rank(), b) {
            return Err(Error::mismatch(
                "phi",
                format!("{}x{b}", comodule.rank()),
                format!("{}x{}", phi.rows(), phi.cols()),
            ));
        }
        if !comodule.invariant_equations().mul(&phi)?.is_zero() {
            return Err(Error::ConstraintViolation("phi does not land in M^G".into()));
        }
        if !phi.mul(v.presentation())?.is_zero() {
            return Err(Error::ConstraintViolation("phi does not kill the relations of V".into()));
        }
        Ok(TheoremInstance {
            comodule,
            v,
            phi,
            sample_algebras,
        })
    }

    /// `V = M^G` with `φ` the inclusion of the saturated invariant lattice.
    pub fn invariant_inclusion(comodule: Comodule, sample_algebras: Vec<BaseScalar>) -> Result<Self> {
        let j = invariants(&comodule).inclusion().clone();
        let v = FpModule::free(j.cols());
        Self::new(comodule, v, j, sample_algebras)
    }
}

/// JSON form of an instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremInstanceJson {
    pub comodule: ComoduleJson,
    /// Relations of `V` as columns (`V = coker`); `b × a`.
    pub v_presentation: IntMatrix,
    /// `rank(M) × b`.
    pub phi: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_algebras: Option<Vec<BaseScalar>>,
}

impl TheoremInstanceJson {
    pub fn from_instance(inst: &TheoremInstance) -> Self {
        TheoremInstanceJson {
            comodule: ComoduleJson::from_comodule(&inst.comodule),
            v_presentation: inst.v.presentation().clone(),
            phi: inst.phi.clone(),
            sample_algebras: Some(inst.sample_algebras.clone()),
        }
    }

    /// `algebras` overrides the document's list; without either the defaults
    /// are used.
    pub fn into_instance(self, hopf: Option<&HopfRef>, algebras: Option<Vec<BaseScalar>>) -> Result<TheoremInstance> {
        let m = self.comodule.into_comodule(hopf)?;
        let algebras = algebras.or(self.sample_algebras).unwrap_or_else(default_algebras);
        TheoremInstance::new(m, FpModule::new(self.v_presentation), self.phi, algebras)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadPrimes {
    pub primes: Vec<u64>,
    /// For each prime, the matrices with an invariant factor it divides.
    pub justification: Vec<(u64, Vec<String>)>,
}

/// Primes dividing a nonzero invariant factor of `δ⁰`, `δ¹`, `φ` or the
/// presentation of `V`.
pub fn candidate_bad_primes(inst: &TheoremInstance) -> Result<BadPrimes> {
    let cx = cobar_complex(&inst.comodule, 2)?;
    let named = [
        ("delta0", cx.differential(0)),
        ("delta1", cx.differential(1)),
        ("phi", &inst.phi),
        ("v_presentation", inst.v.presentation()),
    ];
    let mut by_prime: std::collections::BTreeMap<u64, Vec<String>> = Default::default();
    for (name, a) in named {
        let mut seen = BTreeSet::new();
        for d in smith_normal_form(a).invariant_factors() {
            seen.extend(prime_divisors(d));
        }
        for p in seen {
            by_prime.entry(p).or_default().push(name.to_string());
        }
    }
    Ok(BadPrimes {
        primes: by_prime.keys().copied().collect(),
        justification: by_prime.into_iter().collect(),
    })
}

/// Bijectivity of `φ_S: S ⊗ V → (S ⊗ M)^G`.
#[derive(Clone, Debug, Serialize)]
pub struct MapVerdict {
    pub scalar: BaseScalar,
    pub source: ScalarModule,
    pub target: ScalarModule,
    pub injective: bool,
    pub surjective: bool,
    pub pass: bool,
}

/// Decides bijectivity of `φ_S` through lattices: with `n` the modulus of `S`,
/// `φ_S` is injective iff `{x : φx ∈ nℤ^m} = im P + nℤ^b` and surjective iff
/// `im φ + nℤ^m` is the full lattice `{y : (Ω − ι)y ∈ nℤ^{mc}}`.
pub fn phi_verdict(inst: &TheoremInstance, scalar: BaseScalar) -> Result<MapVerdict> {
    let m = &inst.comodule;
    let source = tensor_module(&inst.v, scalar);
    let target = invariants(&base_change_comodule(m, scalar)?).module();
    let eqs = m.invariant_equations();
    let p = inst.v.presentation();
    let (injective, surjective) = match scalar.modulus() {
        None => {
            let r = rank(&inst.phi);
            (r == p.rows() - rank(p), r == m.rank() - rank(&eqs))
        }
        Some(n) => {
            let scale = |k: usize| IntMatrix::identity(k).scale(&BigInt::from(n));
            let (b, mm) = (p.rows(), m.rank());
            let inj = lattice_quotient(&kernel_lattice(&inst.phi, n), &p.hstack(&scale(b))?)?.is_zero();
            let surj = lattice_quotient(&kernel_lattice(&eqs, n), &inst.phi.hstack(&scale(mm))?)?.is_zero();
            (inj, surj)
        }
    };
    Ok(MapVerdict {
        scalar,
        source,
        target,
        injective,
        surjective,
        pass: injective && surjective,
    })
}

/// The hypothesis at characteristic `p` (0 for ℚ).
pub fn check_hypothesis_over_field(inst: &TheoremInstance, p: u64) -> Result<MapVerdict> {
    let field = if p == 0 { BaseScalar::Rat } else { BaseScalar::fp(p)? };
    phi_verdict(inst, field)
}

#[derive(Clone, Debug, Serialize)]
pub struct H1Flatness {
    pub h1: FpModule,
    pub flat: bool,
    /// `Tor₁(F_p, H¹)` for the requested primes and every prime dividing the
    /// torsion of `H¹`.
    pub tor_certificates: Vec<(u64, ScalarModule)>,
}

pub fn check_h1_flat(m: &Comodule, primes: &[u64]) -> Result<H1Flatness> {
    let h1 = cobar_complex(m, 2)?.integral_cohomology(1)?;
    let mut all: BTreeSet<u64> = primes.iter().copied().collect();
    for d in h1.torsion() {
        all.extend(prime_divisors(d));
    }
    let mut tor_certificates = Vec::new();
    for p in all {
        tor_certificates.push((p, tor1(BaseScalar::fp(p)?, &h1)));
    }
    let flat = h1.torsion().is_empty();
    let certified = tor_certificates.iter().all(|(_, t)| t.is_zero());
    if flat != certified {
        return Err(Error::OracleDisagreement(format!(
            "H^1 = {h1} but the Tor_1 certificates say flat = {certified}"
        )));
    }
    Ok(H1Flatness {
        h1,
        flat,
        tor_certificates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCheck {
    pub torsion_free: bool,
    /// A torsion element in the generators of `V`, with its order.
    pub witness: Option<(Vec<IntText>, IntText)>,
}

pub fn check_v_torsion_free(v: &FpModule) -> TorsionCheck {
    let witness = v
        .torsion_witness()
        .map(|(w, o)| (w.into_iter().map(IntText).collect(), IntText(o)));
    TorsionCheck {
        torsion_free: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub bad_primes: BadPrimes,
    /// Characteristic 0 first, then the bad primes in increasing order.
    pub hypothesis: Vec<(u64, MapVerdict)>,
    pub hypothesis_holds: bool,
    pub h1: H1Flatness,
    pub v_torsion: TorsionCheck,
    pub conclusions: Vec<MapVerdict>,
    pub conclusion_holds: bool,
    pub note: &'static str,
}

/// Hypothesis checks, flatness of `H¹`, torsion of `V` and the conclusion
/// over every sample algebra. Fails with `TheoremViolation` when the
/// hypothesis holds everywhere but one of its consequences does not.
pub fn run_pipeline(inst: &TheoremInstance) -> Result<PipelineReport> {
    let bad_primes = candidate_bad_primes(inst)?;
    let mut hypothesis = Vec::new();
    for p in std::iter::once(0).chain(bad_primes.primes.iter().copied()) {
        hypothesis.push((p, check_hypothesis_over_field(inst, p)?));
    }
    let hypothesis_holds = hypothesis.iter().all(|(_, v)| v.pass);
    let h1 = check_h1_flat(&inst.comodule, &bad_primes.primes)?;
    let v_torsion = check_v_torsion_free(&inst.v);
    let conclusions = inst
        .sample_algebras
        .iter()
        .map(|&s| phi_verdict(inst, s))
        .collect::<Result<Vec<_>>>()?;
    let conclusion_holds = conclusions.iter().all(|v| v.pass);
    if hypothesis_holds {
        let mut broken = Vec::new();
        if !h1.flat {
            broken.push(format!("H^1 = {} is not flat", h1.h1));
        }
        if !v_torsion.torsion_free {
            broken.push(format!("V = {} has torsion", inst.v));
        }
        for c in conclusions.iter().filter(|c| !c.pass) {
            broken.push(format!(
                "phi over {} is not bijective (injective {}, surjective {})",
                c.scalar, c.injective, c.surjective
            ));
        }
        if !broken.is_empty() {
            return Err(Error::TheoremViolation(format!(
                "hypothesis holds at 0 and {:?} but {}",
                bad_primes.primes,
                broken.join("; ")
            )));
        }
    }
    Ok(PipelineReport {
        bad_primes,
        hypothesis,
        hypothesis_holds,
        h1,
        v_torsion,
        conclusions,
        conclusion_holds,
        note: FIELD_REDUCTION_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comodule::action_to_coaction;
    use crate::hopf::{mu_n, GroupTable};

    fn z2(rep: &[Vec<i64>]) -> Comodule {
        let m = rep.len();
        let mats = vec![IntMatrix::identity(m), IntMatrix::from_rows(rep)];
        action_to_coaction(&GroupTable::cyclic(2), &mats).unwrap()
    }

    fn sign() -> Comodule {
        z2(&[vec![-1]])
    }

    fn swap() -> Comodule {
        z2(&[vec![0, 1], vec![1, 0]])
    }

    fn swap_instance(algebras: Vec<BaseScalar>) -> TheoremInstance {
        let phi = IntMatrix::from_rows(&[vec![1], vec![1]]);
        TheoremInstance::new(swap(), FpModule::free(1), phi, algebras).unwrap()
    }

    fn sign_instance() -> TheoremInstance {
        TheoremInstance::new(sign(), FpModule::zero(), IntMatrix::zeros(1, 0), default_algebras()).unwrap()
    }

    #[test]
    fn bad_prime_examples() {
        assert_eq!(candidate_bad_primes(&sign_instance()).unwrap().primes, vec![2]);
        let t = Comodule::trivial(mu_n(2), 2);
        let triv = TheoremInstance::new(t, FpModule::free(2), IntMatrix::identity(2), default_algebras()).unwrap();
        assert!(candidate_bad_primes(&triv).unwrap().primes.is_empty());
        // μ₃ is diagonalizable: the weight-one comodule has unimodular δ⁰ and δ¹
        let w = Comodule::rank_one(mu_n(3), &[0, 1, 0].map(BigInt::from)).unwrap();
        let inst = TheoremInstance::new(w, FpModule::zero(), IntMatrix::zeros(1, 0), default_algebras()).unwrap();
        assert!(candidate_bad_primes(&inst).unwrap().primes.is_empty());
    }

    #[test]
    fn torsion_in_v_is_a_bad_prime() {
        let t = Comodule::trivial(mu_n(2), 1);
        let v = FpModule::cyclic_sum(&[BigInt::from(5)]);
        let inst = TheoremInstance::new(t, v, IntMatrix::zeros(1, 1), default_algebras()).unwrap();
        let bad = candidate_bad_primes(&inst).unwrap();
        assert_eq!(bad.primes, vec![5]);
        assert!(!check_hypothesis_over_field(&inst, 5).unwrap().pass);
    }

    #[test]
    fn hypothesis_examples() {
        assert!(check_hypothesis_over_field(&swap_instance(default_algebras()), 2).unwrap().pass);
        let s = sign_instance();
        let v2 = check_hypothesis_over_field(&s, 2).unwrap();
        assert!(!v2.pass);
        assert_eq!(v2.target.dimension(), Some(1));
        assert!(check_hypothesis_over_field(&s, 0).unwrap().pass);
        assert!(check_hypothesis_over_field(&s, 4).is_err());
    }

    #[test]
    fn h1_flat_examples() {
        let r = check_h1_flat(&swap(), &[2, 3]).unwrap();
        assert!(r.flat && r.h1.is_zero());
        let s = check_h1_flat(&sign(), &[]).unwrap();
        assert!(!s.flat);
        assert_eq!(s.tor_certificates.len(), 1);
        assert_eq!(s.tor_certificates[0].1.dimension(), Some(1));
        assert!(check_h1_flat(&Comodule::trivial(mu_n(2), 1), &[2]).unwrap().flat);
    }

    #[test]
    fn torsion_free_examples() {
        assert!(check_v_torsion_free(&FpModule::free(2)).torsion_free);
        let t = check_v_torsion_free(&FpModule::cyclic_sum(&[BigInt::from(0), BigInt::from(4)]));
        assert!(!t.torsion_free);
        assert_eq!(t.witness.unwrap().1 .0, BigInt::from(4));
        assert!(check_v_torsion_free(&FpModule::zero()).torsion_free);
    }

    #[test]
    fn pipeline_examples() {
        let algebras = vec![BaseScalar::Fp(2), BaseScalar::Fp(3), BaseScalar::IntMod(4), BaseScalar::Rat];
        let r = run_pipeline(&swap_instance(algebras)).unwrap();
        assert!(r.hypothesis_holds && r.conclusion_holds);

        let s = run_pipeline(&sign_instance()).unwrap();
        assert!(!s.hypothesis_holds);
        let failing: Vec<u64> = s.hypothesis.iter().filter(|(_, v)| !v.pass).map(|(p, _)| *p).collect();
        assert_eq!(failing, vec![2]);
        let f2 = s.conclusions.iter().find(|c| c.scalar == BaseScalar::Fp(2)).unwrap();
        assert!(!f2.pass);

        let t = Comodule::trivial(mu_n(2), 3);
        let inst = TheoremInstance::new(t, FpModule::free(3), IntMatrix::identity(3), default_algebras()).unwrap();
        let r = run_pipeline(&inst).unwrap();
        assert!(r.hypothesis_holds && r.conclusion_holds);
    }

    #[test]
    fn instance_validation() {
        let not_invariant = IntMatrix::from_rows(&[vec![1], vec![0]]);
        assert!(matches!(
            TheoremInstance::new(swap(), FpModule::free(1), not_invariant, default_algebras()),
            Err(Error::ConstraintViolation(_))
        ));
        let phi = IntMatrix::from_rows(&[vec![1], vec![1]]);
        assert!(TheoremInstance::new(swap(), FpModule::free(1), phi, vec![]).is_err());
    }

    #[test]
    fn instance_json_round_trip() {
        let inst = swap_instance(default_algebras());
        let text = serde_json::to_string(&TheoremInstanceJson::from_instance(&inst)).unwrap();
        let back: TheoremInstanceJson = serde_json::from_str(&text).unwrap();
        let inst2 = back.into_instance(None, None).unwrap();
        assert_eq!(inst2.phi, inst.phi);
        assert_eq!(inst2.sample_algebras, inst.sample_algebras);
    }
}
