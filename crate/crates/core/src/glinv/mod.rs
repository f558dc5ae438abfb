//! `GL_r`-invariants of `ℚ[Y_s(E, W) × Y_t(V, E)]` by infinitesimal methods.
//!
//! `g ∈ GL_r` acts by `(A, B) ↦ (A g⁻¹, g B)` with `A` of size `m × r` and
//! `B` of size `r × n`. Its Lie algebra acts through the polarization
//! operators
//! `D_{ab} f = −Σ_i a_{ia} ∂f/∂a_{ib} + Σ_j b_{bj} ∂f/∂b_{aj}`,
//! and over ℚ the joint kernel of all `D_{ab}` on a bidegree piece is the
//! space of invariants of the connected group `GL_r` in that piece.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::detinv::{
    hilbert_dim, ideal_degree_span, minors, minors_of, monomial_count, pair_vars, pi_sharp, GradedPiece, Grading,
    MatrixVars, Poly,
};
use crate::error::{Error, Result};
use crate::exactlin::echelon::QEchelon;

/// Largest number of monomials allowed in one (bi)graded piece.
pub const PIECE_LIMIT: usize = 5000;

/// `m, n, r, s, t` with `s ≤ m, r` and `t ≤ n, r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ActionSpec {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl ActionSpec {
    pub fn new(m: usize, n: usize, r: usize, s: usize, t: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::ConstraintViolation("r must be at least 1".into()));
        }
        if s > m.min(r) || t > n.min(r) {
            return Err(Error::ConstraintViolation(format!(
                "need s <= m, r and t <= n, r; got m={m} n={n} r={r} s={s} t={t}"
            )));
        }
        Ok(ActionSpec { m, n, r, s, t })
    }

    pub fn u(&self) -> usize {
        self.s.min(self.t)
    }

    pub fn vars(&self) -> (MatrixVars, MatrixVars) {
        pair_vars(self.m, self.n, self.r)
    }

    pub fn nvars(&self) -> usize {
        self.m * self.r + self.r * self.n
    }

    /// Generators of `I_{s+1}(A) + I_{t+1}(B)`.
    pub fn ideal_generators(&self) -> Vec<Poly> {
        let (a, b) = self.vars();
        let mut g = minors_of(&a, self.s + 1);
        g.extend(minors_of(&b, self.t + 1));
        g
    }
}

type SparseColumn = Vec<(usize, BigRational)>;

/// A bidegree piece `ℚ[X]_{(d₁, d₂)}` of the coordinate ring of
/// `X = Y_s(E, W) × Y_t(V, E)`, with `d₁` the degree in `a`.
#[derive(Clone, Debug)]
pub struct Bipiece {
    pub spec: ActionSpec,
    pub piece: GradedPiece,
    a: MatrixVars,
    b: MatrixVars,
}

impl Bipiece {
    pub fn new(spec: ActionSpec, d1: u32, d2: u32) -> Result<Self> {
        let (a, b) = spec.vars();
        let grading = Grading::split(spec.nvars(), a.rows * a.cols);
        let size = grading.monomial_count(&[d1, d2]);
        if size > PIECE_LIMIT {
            return Err(Error::TooLarge {
                what: "bidegree piece",
                size,
                limit: PIECE_LIMIT,
            });
        }
        let piece = GradedPiece::new(grading, vec![d1, d2], &spec.ideal_generators())?;
        Ok(Bipiece { spec, piece, a, b })
    }

    pub fn dim(&self) -> usize {
        self.piece.dim()
    }

    /// `D_{ab}` on the monomial basis of the full piece, as image columns.
    pub fn operator_columns(&self, a_idx: usize, b_idx: usize) -> Vec<SparseColumn> {
        let (av, bv) = (&self.a, &self.b);
        self.piece
            .monomials()
            .iter()
            .map(|mono| {
                let mut out: HashMap<usize, BigInt> = HashMap::new();
                let mut push = |from: usize, to: usize, coef: i64| {
                    let mut e = mono.clone();
                    e.0[from] -= 1;
                    e.0[to] += 1;
                    let k = self.piece.index_of(&e).expect("polarization preserves bidegree");
                    *out.entry(k).or_default() += coef;
                };
                for i in 0..av.rows {
                    let e = mono.0[av.index(i, b_idx)];
                    if e > 0 {
                        push(av.index(i, b_idx), av.index(i, a_idx), -(e as i64));
                    }
                }
                for j in 0..bv.cols {
                    let e = mono.0[bv.index(a_idx, j)];
                    if e > 0 {
                        push(bv.index(a_idx, j), bv.index(b_idx, j), e as i64);
                    }
                }
                let mut col: SparseColumn = out
                    .into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, BigRational::from_integer(c)))
                    .collect();
                col.sort_by_key(|(k, _)| *k);
                col
            })
            .collect()
    }

    fn apply_columns(cols: &[SparseColumn], v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); v.len()];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in &cols[k] {
                out[*i] += x * c;
            }
        }
        out
    }

    /// `D_{ab}` on the quotient, in the complement basis (column `k` is the
    /// image of the `k`-th standard monomial). Checks first that the ideal
    /// slice is mapped into itself.
    pub fn quotient_operator(&self, a_idx: usize, b_idx: usize) -> Result<Vec<Vec<BigRational>>> {
        let cols = self.operator_columns(a_idx, b_idx);
        let n = self.piece.full_dim();
        for row in self.piece.ideal().rows() {
            let mut v = vec![BigRational::zero(); n];
            for (i, x) in row {
                v[*i] = x.clone();
            }
            let image = Self::apply_columns(&cols, &v);
            if self.piece.reduce_coordinates(image).iter().any(|x| !x.is_zero()) {
                return Err(Error::IdealNotStable(format!("D_{}{}", a_idx + 1, b_idx + 1)));
            }
        }
        Ok(self
            .piece
            .complement()
            .iter()
            .map(|&k| {
                let mut image = vec![BigRational::zero(); n];
                for (i, c) in &cols[k] {
                    image[*i] = c.clone();
                }
                self.piece.reduce_coordinates(image)
            })
            .collect())
    }

    /// All `r²` quotient operators, indexed `a·r + b`.
    pub fn quotient_operators(&self) -> Result<Vec<Vec<Vec<BigRational>>>> {
        let r = self.spec.r;
        (0..r * r).map(|k| self.quotient_operator(k / r, k % r)).collect()
    }
}

/// Applies an operator given by columns to a coordinate vector.
pub fn apply_dense(op: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    let n = op.first().map_or(0, Vec::len);
    let mut out = vec![BigRational::zero(); n];
    for (col, x) in op.iter().zip(v) {
        if x.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(col) {
            if !c.is_zero() {
                *o += x * c;
            }
        }
    }
    out
}

/// Matrix of `D_{ab}` (1-based `a, b` as in the formula) on the quotient
/// piece of bidegree `(d₁, d₂)`.
pub fn polarization_matrix(spec: ActionSpec, ab: (usize, usize), degrees: (u32, u32)) -> Result<Vec<Vec<BigRational>>> {
    let (a, b) = ab;
    if a == 0 || b == 0 || a > spec.r || b > spec.r {
        return Err(Error::BadInput(format!("operator indices must lie in 1..={}", spec.r)));
    }
    Bipiece::new(spec, degrees.0, degrees.1)?.quotient_operator(a - 1, b - 1)
}

/// Joint kernel of the `D_{ab}` on a quotient bidegree piece.
#[derive(Clone, Debug)]
pub struct InvariantSpace {
    pub degrees: (u32, u32),
    pub piece_dim: usize,
    /// Basis vectors in the complement coordinates of the piece.
    pub coordinates: Vec<Vec<BigRational>>,
    /// The same basis as polynomials in standard monomials.
    pub basis: Vec<Poly>,
}

impl InvariantSpace {
    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }
}

fn joint_kernel(ops: &[Vec<Vec<BigRational>>], dim: usize) -> Vec<Vec<BigRational>> {
    let mut ech = QEchelon::new(dim);
    for op in ops {
        for row in 0..dim {
            let v: Vec<(usize, BigRational)> = op
                .iter()
                .enumerate()
                .filter(|(_, col)| !col[row].is_zero())
                .map(|(k, col)| (k, col[row].clone()))
                .collect();
            if !v.is_empty() {
                ech.insert(&v);
            }
            if ech.rank() == dim {
                return Vec::new();
            }
        }
    }
    ech.kernel()
}

pub fn invariant_space_of(bp: &Bipiece) -> Result<InvariantSpace> {
    let ops = bp.quotient_operators()?;
    let coordinates = joint_kernel(&ops, bp.dim());
    let basis = coordinates.iter().map(|c| bp.piece.lift(c)).collect();
    let d = bp.piece.degrees();
    Ok(InvariantSpace {
        degrees: (d[0], d[1]),
        piece_dim: bp.dim(),
        coordinates,
        basis,
    })
}

pub fn invariant_space(spec: ActionSpec, degrees: (u32, u32)) -> Result<InvariantSpace> {
    invariant_space_of(&Bipiece::new(spec, degrees.0, degrees.1)?)
}

/// Inverse of a square rational matrix by Gauss–Jordan elimination.
pub fn invert(g: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = g.len();
    let mut aug: Vec<Vec<BigRational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !aug[i][c].is_zero())
            .ok_or_else(|| Error::BadInput("matrix is singular".into()))?;
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                let pivot_row = aug[c].clone();
                for (x, y) in aug[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// The sampled group elements: `I + E_{ab}` for `a ≠ b` and `diag(…, 2, …)`.
pub fn default_group_elements(r: usize) -> Vec<Vec<Vec<BigRational>>> {
    let id = |r: usize| -> Vec<Vec<BigRational>> {
        (0..r)
            .map(|i| (0..r).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect()
    };
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            if a != b {
                let mut g = id(r);
                g[a][b] = BigRational::one();
                out.push(g);
            }
        }
    }
    for a in 0..r {
        let mut g = id(r);
        g[a][a] = BigRational::from_integer(BigInt::from(2));
        out.push(g);
    }
    out
}

/// `f(A g⁻¹, g B)`.
pub fn act(spec: ActionSpec, g: &[Vec<BigRational>], f: &Poly) -> Result<Poly> {
    let (a, b) = spec.vars();
    let ginv = invert(g)?;
    let nv = spec.nvars();
    let mut images = vec![Poly::zero(nv); nv];
    for i in 0..a.rows {
        for c in 0..a.cols {
            let mut s = Poly::zero(nv);
            for k in 0..spec.r {
                s = s.add(&a.entry(i, k).scale(&ginv[k][c]));
            }
            images[a.index(i, c)] = s;
        }
    }
    for c in 0..b.rows {
        for j in 0..b.cols {
            let mut s = Poly::zero(nv);
            for k in 0..spec.r {
                s = s.add(&b.entry(k, j).scale(&g[c][k]));
            }
            images[b.index(c, j)] = s;
        }
    }
    Ok(f.substitute(&images))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub passed: bool,
    /// `(basis index, group element index)` pairs where `g·f − f` is not in
    /// the ideal.
    pub failures: Vec<(usize, usize)>,
}

/// Checks `f(A g⁻¹, g B) ≡ f` modulo the ideal for each basis element and
/// each `g`.
pub fn finite_group_cross_check(
    spec: ActionSpec,
    degrees: (u32, u32),
    basis: &[Poly],
    group_elements: &[Vec<Vec<BigRational>>],
) -> Result<CrossCheck> {
    let bp = Bipiece::new(spec, degrees.0, degrees.1)?;
    let mut failures = Vec::new();
    for (k, f) in basis.iter().enumerate() {
        for (l, g) in group_elements.iter().enumerate() {
            let diff = act(spec, g, f)?.sub(f);
            if !bp.piece.contains(&diff)? {
                failures.push((k, l));
            }
        }
    }
    Ok(CrossCheck {
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub d: u32,
    /// `dim ℚ[Y_u(V, W)]_d` by evaluation.
    pub dim_y: usize,
    /// The same dimension from the exact quotient.
    pub dim_y_exact: usize,
    pub dim_inv: usize,
    pub injective: bool,
    /// Every image of `π#` is killed by all `D_{ab}`.
    pub image_invariant: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OffDiagonal {
    pub d1: u32,
    pub d2: u32,
    pub dim_inv: usize,
    /// `Σ_a D_{aa} = (d₂ − d₁)·id` on the quotient piece.
    pub trace_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FftReport {
    pub spec: ActionSpec,
    pub u: usize,
    pub d_max: u32,
    pub seed: u64,
    pub per_degree: Vec<DegreeReport>,
    pub off_diagonal: Vec<OffDiagonal>,
    pub overall: bool,
}

fn degree_report(spec: ActionSpec, d: u32, seed: u64) -> Result<DegreeReport> {
    let u = spec.u();
    let (m, n) = (spec.m, spec.n);
    let y_size = monomial_count(m * n, d);
    if y_size > PIECE_LIMIT {
        return Err(Error::TooLarge {
            what: "graded piece of K[Y]",
            size: y_size,
            limit: PIECE_LIMIT,
        });
    }
    let dim_y = hilbert_dim(m, n, u, d, seed).dim;
    let y_piece = ideal_degree_span(&minors(m, n, u + 1)?, d)?;
    let bp = Bipiece::new(spec, d, d)?;
    let ops = bp.quotient_operators()?;
    let dim_inv = joint_kernel(&ops, bp.dim()).len();
    let pi = pi_sharp(m, n, spec.r);
    let mut images = QEchelon::new(bp.dim());
    let mut injective = true;
    let mut image_invariant = true;
    for mono in y_piece.complement_monomials() {
        let p = Poly::term(mono, BigRational::one());
        let nf = bp.piece.normal_form(&pi.apply(&p)?)?;
        if image_invariant && ops.iter().any(|op| apply_dense(op, &nf).iter().any(|x| !x.is_zero())) {
            image_invariant = false;
        }
        if !images.insert_dense(nf) {
            injective = false;
        }
    }
    let dim_y_exact = y_piece.dim();
    Ok(DegreeReport {
        d,
        dim_y,
        dim_y_exact,
        dim_inv,
        injective,
        image_invariant,
        pass: dim_y == dim_y_exact && dim_y == dim_inv && injective && image_invariant,
    })
}

fn off_diagonal(spec: ActionSpec, d1: u32, d2: u32) -> Result<OffDiagonal> {
    let bp = Bipiece::new(spec, d1, d2)?;
    let ops = bp.quotient_operators()?;
    let dim = bp.dim();
    let r = spec.r;
    let shift = BigRational::from_integer(BigInt::from(d2 as i64 - d1 as i64));
    let mut trace_identity = true;
    'cols: for k in 0..dim {
        for i in 0..dim {
            let mut s = BigRational::zero();
            for a in 0..r {
                s += &ops[a * r + a][k][i];
            }
            let expected = if i == k { shift.clone() } else { BigRational::zero() };
            if s != expected {
                trace_identity = false;
                break 'cols;
            }
        }
    }
    Ok(OffDiagonal {
        d1,
        d2,
        dim_inv: joint_kernel(&ops, dim).len(),
        trace_identity,
    })
}

/// Degree-by-degree check that `π#: ℚ[Y_u(V, W)] → ℚ[X]^G` is an
/// isomorphism for `d ≤ d_max`, plus vanishing of invariants off the
/// diagonal bidegrees `(d₁, d₂)`, `d₁ ≠ d₂ ≤ d_max`. Degrees run in parallel;
/// the report does not depend on the number of threads.
pub fn fft_check(spec: ActionSpec, d_max: u32, seed: u64) -> Result<FftReport> {
    if d_max == 0 {
        return Err(Error::BadInput("d_max must be at least 1".into()));
    }
    let per_degree = (0..=d_max)
        .into_par_iter()
        .map(|d| degree_report(spec, d, seed))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(u32, u32)> = (0..=d_max)
        .flat_map(|a| (0..=d_max).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let off = pairs
        .into_par_iter()
        .map(|(a, b)| off_diagonal(spec, a, b))
        .collect::<Result<Vec<_>>>()?;
    let overall = per_degree.iter().all(|d| d.pass) && off.iter().all(|o| o.dim_inv == 0 && o.trace_identity);
    Ok(FftReport {
        spec,
        u: spec.u(),
        d_max,
        seed,
        per_degree,
        off_diagonal: off,
        overall,
    })
}
