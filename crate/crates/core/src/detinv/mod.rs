//! Determinantal varieties `Y_v = {x : rank x ≤ v}` over ℚ.
//!
//! Coordinate rings are studied one degree at a time: exactly, through the
//! slice of the minor ideal `I_{v+1}` in a graded piece, and by evaluation at
//! random rank-factored points `x = P·Q`.

mod piece;
mod poly;

pub use piece::{GradedPiece, Grading};
pub use poly::{monomial_count, monomials, rational_residue, Mono, Poly, PolyJson};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::echelon::{mul_mod, residue, ModpEchelon};
use crate::exactlin::{rank, IntMatrix};

/// Range of the random integer entries of `P` and `Q`.
pub const POINT_ENTRY_BOUND: i64 = 5;

/// A `rows × cols` matrix of distinct variables `x[i][j] = x_{offset + i·cols + j}`
/// inside a ring of `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixVars {
    pub name: &'static str,
    pub rows: usize,
    pub cols: usize,
    pub offset: usize,
    pub nvars: usize,
}

impl MatrixVars {
    /// The generic `rows × cols` matrix as the whole ring.
    pub fn standalone(rows: usize, cols: usize) -> Self {
        MatrixVars {
            name: "x",
            rows,
            cols,
            offset: 0,
            nvars: rows * cols,
        }
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        self.offset + i * self.cols + j
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.rows * self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        Poly::var(self.nvars, self.index(i, j))
    }

    pub fn entries(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// Name of variable `k` if it belongs to this matrix (1-based indices).
    pub fn var_name(&self, k: usize) -> Option<String> {
        if !self.range().contains(&k) {
            return None;
        }
        let l = k - self.offset;
        Some(format!("{}{}{}", self.name, l / self.cols + 1, l % self.cols + 1))
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][j].mul(&determinant(&minor, nvars));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All `k × k` minors of a matrix of variables, rows and columns chosen by
/// sorted index subsets.
pub fn minors_of(x: &MatrixVars, k: usize) -> Vec<Poly> {
    let e = x.entries();
    let mut out = Vec::new();
    for rs in subsets(x.rows, k) {
        for cs in subsets(x.cols, k) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&i| cs.iter().map(|&j| e[i][j].clone()).collect()).collect();
            out.push(determinant(&sub, x.nvars));
        }
    }
    out
}

/// `I_k` of the generic `rows × cols` matrix; its zero set is `Y_{k−1}`.
#[derive(Clone, Debug)]
pub struct MinorIdeal {
    pub matrix: MatrixVars,
    pub size: usize,
    pub generators: Vec<Poly>,
}

impl MinorIdeal {
    /// Largest rank of the points the ideal vanishes on.
    pub fn rank_bound(&self) -> usize {
        self.size - 1
    }
}

pub fn minors(rows: usize, cols: usize, size: usize) -> Result<MinorIdeal> {
    if size == 0 {
        return Err(Error::BadInput("minor size must be at least 1".into()));
    }
    let matrix = MatrixVars::standalone(rows, cols);
    let generators = minors_of(&matrix, size);
    Ok(MinorIdeal {
        matrix,
        size,
        generators,
    })
}

/// Degree-`d` piece of `ℚ[x]` with the slice of the ideal.
pub fn ideal_degree_span(ideal: &MinorIdeal, d: u32) -> Result<GradedPiece> {
    GradedPiece::new(Grading::standard(ideal.matrix.nvars), vec![d], &ideal.generators)
}

/// A point of `Y_v` with its rank factorization `x = P·Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPoint {
    pub p: Vec<Vec<BigRational>>,
    pub q: Vec<Vec<BigRational>>,
    pub x: Vec<Vec<BigRational>>,
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(BigRational::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

impl RankPoint {
    pub fn from_factors(p: Vec<Vec<BigRational>>, q: Vec<Vec<BigRational>>, cols: usize) -> Self {
        let x = mat_mul(&p, &q, cols);
        RankPoint { p, q, x }
    }

    /// Integer factors with entries in `[−5, 5]`.
    pub fn random(rows: usize, cols: usize, v: usize, rng: &mut impl Rng) -> Self {
        let mut draw = |r: usize, c: usize| -> Vec<Vec<BigRational>> {
            (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-POINT_ENTRY_BOUND..=POINT_ENTRY_BOUND))))
                        .collect()
                })
                .collect()
        };
        let p = draw(rows, v);
        let q = draw(v, cols);
        Self::from_factors(p, q, cols)
    }

    /// `x = P·Q` exactly.
    pub fn verify(&self) -> bool {
        let cols = self.x.first().map_or(0, Vec::len);
        mat_mul(&self.p, &self.q, cols) == self.x
    }

    /// Entries of `x` in row-major order.
    pub fn coordinates(&self) -> Vec<BigRational> {
        self.x.iter().flatten().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertResult {
    pub dim: usize,
    pub monomials: usize,
    pub samples_used: usize,
    pub method: &'static str,
}

/// `dim ℚ[Y_v]_d` for `rows × cols` matrices as the rank of the evaluation
/// matrix of degree-`d` monomials at random points of `Y_v`.
///
/// Points come in batches of `max(2·#monomials, 50)`; sampling stops once
/// the rank equals the number of monomials or three consecutive batches end
/// at the same rank. Ranks are computed modulo `2^61 − 1`: a nonzero minor
/// modulo the prime is nonzero over ℚ, so the result never exceeds the true
/// rank of the rational evaluation matrix.
pub fn hilbert_dim(rows: usize, cols: usize, v: usize, d: u32, seed: u64) -> HilbertResult {
    let nvars = rows * cols;
    let mons = monomials(nvars, d);
    let n = mons.len();
    let batch = (2 * n).max(50);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ech = ModpEchelon::new(n);
    let mut ranks: Vec<usize> = Vec::new();
    let mut used = 0;
    loop {
        let points: Vec<Vec<i64>> = (0..batch).map(|_| random_rank_point(rows, cols, v, &mut rng)).collect();
        let rows_mod: Vec<Vec<u64>> = points.par_iter().map(|x| evaluate_monomials(&mons, x, d)).collect();
        for r in rows_mod {
            if ech.is_full() {
                break;
            }
            ech.insert(r);
        }
        used += batch;
        ranks.push(ech.rank());
        let k = ranks.len();
        if ech.is_full() || (k >= 3 && ranks[k - 1] == ranks[k - 2] && ranks[k - 2] == ranks[k - 3]) {
            break;
        }
    }
    HilbertResult {
        dim: ech.rank(),
        monomials: n,
        samples_used: used,
        method: "evaluation",
    }
}

/// `dim ℚ[Y_v]_d` as `#monomials − dim (I_{v+1})_d`.
pub fn hilbert_dim_exact(rows: usize, cols: usize, v: usize, d: u32) -> Result<HilbertResult> {
    let ideal = minors(rows, cols, v + 1)?;
    let piece = ideal_degree_span(&ideal, d)?;
    Ok(HilbertResult {
        dim: piece.dim(),
        monomials: piece.full_dim(),
        samples_used: 0,
        method: "exact",
    })
}

fn random_rank_point(rows: usize, cols: usize, v: usize, rng: &mut impl Rng) -> Vec<i64> {
    let p: Vec<i64> = (0..rows * v).map(|_| rng.gen_range(-POINT_ENTRY_BOUND..=POINT_ENTRY_BOUND)).collect();
    let q: Vec<i64> = (0..v * cols).map(|_| rng.gen_range(-POINT_ENTRY_BOUND..=POINT_ENTRY_BOUND)).collect();
    let mut x = vec![0i64; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            x[i * cols + j] = (0..v).map(|c| p[i * v + c] * q[c * cols + j]).sum();
        }
    }
    x
}

fn evaluate_monomials(mons: &[Mono], x: &[i64], d: u32) -> Vec<u64> {
    let powers: Vec<Vec<u64>> = x
        .iter()
        .map(|&xi| {
            let r = residue(xi);
            let mut pw = Vec::with_capacity(d as usize + 1);
            pw.push(1u64);
            for k in 0..d as usize {
                pw.push(mul_mod(pw[k], r));
            }
            pw
        })
        .collect();
    mons.iter()
        .map(|m| {
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(1u64, |acc, (i, &e)| mul_mod(acc, powers[i][e as usize]))
        })
        .collect()
}

/// The comorphism of `(A, B) ↦ A·B`: `x_{ij} ↦ Σ_c a_{ic} b_{cj}`, from
/// `ℚ[x]` (`m × n`) to `ℚ[a, b]` (`a` is `m × r`, `b` is `r × n`).
#[derive(Clone, Debug)]
pub struct PiSharp {
    pub x: MatrixVars,
    pub a: MatrixVars,
    pub b: MatrixVars,
    images: Vec<Poly>,
}

/// Variables of `ℚ[a, b]`: `a[i][c]` first, then `b[c][j]`.
pub fn pair_vars(m: usize, n: usize, r: usize) -> (MatrixVars, MatrixVars) {
    let nvars = m * r + r * n;
    let a = MatrixVars {
        name: "a",
        rows: m,
        cols: r,
        offset: 0,
        nvars,
    };
    let b = MatrixVars {
        name: "b",
        rows: r,
        cols: n,
        offset: m * r,
        nvars,
    };
    (a, b)
}

pub fn pi_sharp(m: usize, n: usize, r: usize) -> PiSharp {
    let (a, b) = pair_vars(m, n, r);
    let x = MatrixVars::standalone(m, n);
    let mut images = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut s = Poly::zero(a.nvars);
            for c in 0..r {
                s = s.add(&a.entry(i, c).mul(&b.entry(c, j)));
            }
            images.push(s);
        }
    }
    PiSharp { x, a, b, images }
}

impl PiSharp {
    pub fn image_of_variable(&self, i: usize, j: usize) -> &Poly {
        &self.images[self.x.index(i, j)]
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if p.nvars() != self.x.nvars {
            return Err(Error::mismatch("pi_sharp input", self.x.nvars, p.nvars()));
        }
        if self.a.nvars == 0 {
            return Ok(Poly::zero(0));
        }
        Ok(p.substitute(&self.images))
    }

    pub fn var_name(&self, k: usize) -> String {
        self.a.var_name(k).or_else(|| self.b.var_name(k)).unwrap_or_else(|| format!("v{k}"))
    }
}

/// Block-identity matrices `A` (`m × r`, rank `s`) and `B` (`r × n`, rank `t`)
/// whose product has rank `min(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankWitness {
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub product: IntMatrix,
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_product: usize,
    pub u: usize,
}

pub fn rank_witness(m: usize, n: usize, r: usize, s: usize, t: usize) -> Result<RankWitness> {
    if s > m.min(r) || t > n.min(r) {
        return Err(Error::ConstraintViolation(format!(
            "need s <= m, r and t <= n, r; got m={m} n={n} r={r} s={s} t={t}"
        )));
    }
    let ones = |k: usize| vec![BigInt::from(1); k];
    let a = IntMatrix::diagonal(m, r, &ones(s));
    let b = IntMatrix::diagonal(r, n, &ones(t));
    let product = a.mul(&b)?;
    let w = RankWitness {
        rank_a: rank(&a),
        rank_b: rank(&b),
        rank_product: rank(&product),
        u: s.min(t),
        a,
        b,
        product,
    };
    if w.rank_a != s || w.rank_b != t || w.rank_product != w.u {
        return Err(Error::OracleDisagreement(format!("rank witness has ranks {} {} {}", w.rank_a, w.rank_b, w.rank_product)));
    }
    Ok(w)
}

/// Number of random points used by the vanishing test.
pub const MEMBERSHIP_POINTS: usize = 8;

/// Whether a homogeneous `p` of degree `d` lies in the ideal, decided by
/// the degree-`d` slice and by vanishing at random points of `Y_{k−1}`.
pub fn membership_modulo_ideal(p: &Poly, ideal: &MinorIdeal, d: u32, seed: u64) -> Result<bool> {
    if p.nvars() != ideal.matrix.nvars {
        return Err(Error::mismatch("polynomial", ideal.matrix.nvars, p.nvars()));
    }
    if !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(d)) {
        return Err(Error::BadInput(format!("polynomial is not homogeneous of degree {d}")));
    }
    let by_span = ideal_degree_span(ideal, d)?.contains(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = &ideal.matrix;
    let by_points = (0..MEMBERSHIP_POINTS).all(|_| {
        let pt = RankPoint::random(m.rows, m.cols, ideal.rank_bound(), &mut rng);
        p.eval(&pt.coordinates()).is_zero()
    });
    if by_span != by_points {
        return Err(Error::OracleDisagreement(format!(
            "ideal slice says {by_span}, vanishing at points says {by_points}"
        )));
    }
    Ok(by_span)
}
