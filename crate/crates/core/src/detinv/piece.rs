use std::collections::HashMap;
use std::ops::Range;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{monomials, Mono, Poly};
use crate::error::{Error, Result};
use crate::exactlin::echelon::QEchelon;

/// Variables split into consecutive blocks, each carrying its own degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub nvars: usize,
    pub blocks: Vec<Range<usize>>,
}

impl Grading {
    /// Ordinary total degree.
    pub fn standard(nvars: usize) -> Self {
        Grading {
            nvars,
            blocks: vec![0..nvars],
        }
    }

    /// Two blocks `0..k` and `k..nvars`.
    pub fn split(nvars: usize, k: usize) -> Self {
        Grading {
            nvars,
            blocks: vec![0..k, k..nvars],
        }
    }

    pub fn degree_of(&self, m: &Mono) -> Vec<u32> {
        self.blocks.iter().map(|b| m.partial_degree(b.clone())).collect()
    }

    /// Multidegree of a polynomial all of whose terms share one.
    pub fn degree_of_poly(&self, p: &Poly) -> Option<Vec<u32>> {
        let mut it = p.terms().map(|(m, _)| self.degree_of(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Monomials of a multidegree in decreasing term order.
    pub fn monomials(&self, degrees: &[u32]) -> Vec<Mono> {
        assert_eq!(degrees.len(), self.blocks.len());
        let mut out = vec![Vec::new()];
        for (b, &d) in self.blocks.iter().zip(degrees) {
            let part = monomials(b.len(), d);
            let mut next = Vec::with_capacity(out.len() * part.len());
            for prefix in &out {
                for m in &part {
                    let mut e: Vec<u32> = prefix.clone();
                    e.extend_from_slice(&m.0);
                    next.push(e);
                }
            }
            out = next;
        }
        out.into_iter().map(Mono).collect()
    }

    pub fn monomial_count(&self, degrees: &[u32]) -> usize {
        self.blocks
            .iter()
            .zip(degrees)
            .map(|(b, &d)| super::poly::monomial_count(b.len(), d))
            .fold(1usize, |a, c| a.saturating_mul(c))
    }
}

/// One graded piece of a polynomial ring together with the slice of an
/// ideal in it.
///
/// Columns are the piece's monomials in decreasing term order, so the ideal
/// slice's echelon pivots are leading monomials and the non-pivot monomials
/// form a basis of the quotient.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    grading: Grading,
    degrees: Vec<u32>,
    monomials: Vec<Mono>,
    index: HashMap<Mono, usize>,
    ideal: QEchelon,
    complement: Vec<usize>,
}

impl GradedPiece {
    /// Spans `{μ·g}` for generators `g` and monomials `μ` of the
    /// complementary multidegree.
    pub fn new(grading: Grading, degrees: Vec<u32>, generators: &[Poly]) -> Result<Self> {
        let monomials = grading.monomials(&degrees);
        let index: HashMap<Mono, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ideal = QEchelon::new(monomials.len());
        for g in generators {
            if g.nvars() != grading.nvars {
                return Err(Error::mismatch("ideal generator", grading.nvars, g.nvars()));
            }
            let Some(gd) = grading.degree_of_poly(g) else {
                if g.is_zero() {
                    continue;
                }
                return Err(Error::BadInput("ideal generator is not homogeneous".into()));
            };
            if gd.iter().zip(&degrees).any(|(e, d)| e > d) {
                continue;
            }
            let rest: Vec<u32> = degrees.iter().zip(&gd).map(|(d, e)| d - e).collect();
            for mu in grading.monomials(&rest) {
                let mut v = vec![BigRational::zero(); monomials.len()];
                for (m, c) in g.terms() {
                    v[index[&m.mul(&mu)]] = c.clone();
                }
                ideal.insert_dense(v);
            }
        }
        let complement = ideal.free_columns();
        Ok(GradedPiece {
            grading,
            degrees,
            monomials,
            index,
            ideal,
            complement,
        })
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn monomials(&self) -> &[Mono] {
        &self.monomials
    }

    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Dimension of the full piece.
    pub fn full_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ideal(&self) -> &QEchelon {
        &self.ideal
    }

    /// Column positions of the standard monomials.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn complement_monomials(&self) -> Vec<Mono> {
        self.complement.iter().map(|&i| self.monomials[i].clone()).collect()
    }

    /// Coefficient vector in the monomial basis of the piece.
    pub fn coordinates(&self, p: &Poly) -> Result<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.monomials.len()];
        for (m, c) in p.terms() {
            let i = self.index_of(m).ok_or_else(|| {
                Error::BadInput(format!("polynomial has a term outside degree {:?}", self.degrees))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Normal form of a full coordinate vector, in complement coordinates.
    pub fn reduce_coordinates(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        self.ideal.reduce_dense(&mut v);
        self.complement.iter().map(|&i| std::mem::take(&mut v[i])).collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Vec<BigRational>> {
        Ok(self.reduce_coordinates(self.coordinates(p)?))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.iter().all(Zero::is_zero))
    }

    /// Polynomial with the given complement coordinates.
    pub fn lift(&self, coords: &[BigRational]) -> Poly {
        let terms = self
            .complement
            .iter()
            .zip(coords)
            .map(|(&i, c)| (self.monomials[i].clone(), c.clone()));
        Poly::from_terms(self.grading.nvars, terms).expect("monomials match the grading")
    }
}
