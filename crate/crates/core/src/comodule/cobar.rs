use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Comodule;
use crate::error::{Error, Result};
use crate::exactlin::{complex_cohomology, complex_cohomology_over, BaseScalar, FpModule, IntMatrix, ScalarModule};

/// Largest term rank `m·c^n_max` the complex will assemble.
pub const TERM_LIMIT: usize = 10_000;

/// Degree up to which terms are built when nothing else is requested; enough
/// for `H⁰` and `H¹`.
pub const DEFAULT_MAX_DEGREE: usize = 2;

/// `M → M⊗C → M⊗C⊗C → …` truncated at degree `max_degree`.
///
/// The differential is
/// `δⁿ = (−1)^{n+1} ω⊗1 + Σ_{i<n} (−1)^{n−i} 1_M⊗1^{⊗i}⊗Δ⊗1^{⊗n−i−1} + 1_M⊗1^{⊗n}⊗u`,
/// which is `(−1)^{n+1}` times the usual alternating coface sum, so
/// `δδ = 0` holds without adjusting signs.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    comodule: Comodule,
    max_degree: usize,
    terms: Vec<usize>,
    differentials: Vec<IntMatrix>,
}

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn differential(m: &Comodule, n: usize) -> IntMatrix {
    let h = m.hopf();
    let c = h.rank();
    let rank = m.rank();
    let mut d = m
        .coaction()
        .kron(&IntMatrix::identity(c.pow(n as u32)))
        .scale(&sign(n + 1));
    for i in 0..n {
        let inner = IntMatrix::identity(rank * c.pow(i as u32))
            .kron(h.comult())
            .kron(&IntMatrix::identity(c.pow((n - i - 1) as u32)));
        d = d.add(&inner.scale(&sign(n - i))).expect("cobar term shapes");
    }
    let last = IntMatrix::identity(rank * c.pow(n as u32)).kron(&h.unit_matrix());
    d.add(&last).expect("cobar term shapes").reduce(m.scalar())
}

fn nonzero_count(a: &IntMatrix, scalar: BaseScalar) -> usize {
    a.iter().filter(|(_, _, v)| !scalar.reduce(v).is_zero()).count()
}

/// Builds terms of degree `0..=max_degree` and the differentials between
/// them, checking `δ^{n+1}·δⁿ = 0` exactly.
pub fn cobar_complex(m: &Comodule, max_degree: usize) -> Result<CobarComplex> {
    if max_degree == 0 {
        return Err(Error::BadInput("cobar complex needs max_degree >= 1".into()));
    }
    let c = m.hopf().rank();
    let mut terms = Vec::with_capacity(max_degree + 1);
    let mut size = m.rank();
    for _ in 0..=max_degree {
        terms.push(size);
        size = size.saturating_mul(c);
    }
    let top = terms[max_degree];
    if top > TERM_LIMIT {
        return Err(Error::TooLarge {
            what: "cobar term",
            size: top,
            limit: TERM_LIMIT,
        });
    }
    let differentials: Vec<IntMatrix> = (0..max_degree).map(|n| differential(m, n)).collect();
    for pair in differentials.windows(2) {
        let nonzero = nonzero_count(&pair[1].mul(&pair[0])?, m.scalar());
        if nonzero > 0 {
            return Err(Error::NotAComplex { nonzero });
        }
    }
    Ok(CobarComplex {
        comodule: m.clone(),
        max_degree,
        terms,
        differentials,
    })
}

impl CobarComplex {
    pub fn comodule(&self) -> &Comodule {
        &self.comodule
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Ranks `m·cⁿ` of the terms, `n = 0..=max_degree`.
    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    /// `δⁿ` for `n < max_degree`.
    pub fn differential(&self, n: usize) -> &IntMatrix {
        &self.differentials[n]
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    fn boundary_pair(&self, i: usize) -> Result<(IntMatrix, &IntMatrix)> {
        if i >= self.max_degree {
            return Err(Error::BadInput(format!(
                "H^{i} needs a complex built to degree > {i}, this one stops at {}",
                self.max_degree
            )));
        }
        let d_in = if i == 0 {
            IntMatrix::zeros(self.terms[0], 0)
        } else {
            self.differentials[i - 1].clone()
        };
        Ok((d_in, &self.differentials[i]))
    }

    /// `Hⁱ = ker δⁱ / im δ^{i−1}` over the comodule's scalar ring.
    pub fn cohomology(&self, i: usize) -> Result<ScalarModule> {
        let (d_in, d_out) = self.boundary_pair(i)?;
        complex_cohomology_over(&d_in, d_out, self.comodule.scalar())
    }

    /// `Hⁱ` as a finitely presented abelian group; needs a comodule over ℤ.
    pub fn integral_cohomology(&self, i: usize) -> Result<FpModule> {
        if self.comodule.scalar() != BaseScalar::Int {
            return Err(Error::InvalidScalar(format!(
                "integral cohomology of a comodule over {}",
                self.comodule.scalar()
            )));
        }
        let (d_in, d_out) = self.boundary_pair(i)?;
        complex_cohomology(&d_in, d_out)
    }
}
