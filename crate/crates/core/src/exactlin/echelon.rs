//! Incremental row echelon forms over ℚ and over a large prime field.
//!
//! Rows are inserted one at a time; each stored row has leading coefficient
//! one and a distinct pivot column. Rows are not back-reduced, so reduction
//! of a vector walks the pivots in increasing column order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseVec = Vec<(usize, BigRational)>;

/// Row echelon basis of a subspace of `ℚ^ncols`.
#[derive(Clone, Debug, Default)]
pub struct QEchelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl QEchelon {
    pub fn new(ncols: usize) -> Self {
        QEchelon {
            ncols,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Non-pivot columns, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.is_pivot(*c)).collect()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the stored rows; the result is supported on
    /// non-pivot columns and differs from `v` by an element of the span.
    pub fn reduce_dense(&self, v: &mut [BigRational]) {
        debug_assert_eq!(v.len(), self.ncols);
        for (&col, &r) in &self.pivots {
            if v[col].is_zero() {
                continue;
            }
            let factor = v[col].clone();
            for (j, x) in &self.rows[r] {
                v[*j] -= &factor * x;
            }
        }
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut dense = to_dense(v, self.ncols);
        self.reduce_dense(&mut dense);
        to_sparse(dense)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` when the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let reduced = self.reduce(v);
        self.insert_reduced(reduced)
    }

    pub fn insert_dense(&mut self, mut v: Vec<BigRational>) -> bool {
        self.reduce_dense(&mut v);
        self.insert_reduced(to_sparse(v))
    }

    fn insert_reduced(&mut self, mut reduced: SparseVec) -> bool {
        let Some((col, lead)) = reduced.first().cloned() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, x) in reduced.iter_mut() {
                *x *= &inv;
            }
        }
        self.pivots.insert(col, self.rows.len());
        self.rows.push(reduced);
        true
    }

    /// Basis of `{x : r·x = 0 for every stored row r}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let free = self.free_columns();
        let pivots_desc: Vec<(usize, usize)> =
            self.pivots.iter().rev().map(|(&c, &r)| (c, r)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for &(c, r) in &pivots_desc {
                    let mut acc = BigRational::zero();
                    for (j, a) in &self.rows[r] {
                        if *j != c && !x[*j].is_zero() {
                            acc -= a * &x[*j];
                        }
                    }
                    x[c] = acc;
                }
                x
            })
            .collect()
    }
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<BigRational> {
    let mut d = vec![BigRational::zero(); n];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

pub fn to_sparse(v: Vec<BigRational>) -> SparseVec {
    v.into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

/// Rank over ℚ of a list of vectors.
pub fn rational_rank(ncols: usize, vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = QEchelon::new(ncols);
    for v in vectors {
        e.insert(&v);
    }
    e.rank()
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The Mersenne prime `2^61 − 1`.
pub const LARGE_PRIME: u64 = (1 << 61) - 1;

#[inline]
pub fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % LARGE_PRIME as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64) -> u64 {
    pow_mod(a, LARGE_PRIME - 2)
}

/// Residue of a signed integer modulo [`LARGE_PRIME`].
pub fn residue(x: i64) -> u64 {
    x.rem_euclid(LARGE_PRIME as i64) as u64
}

/// Row echelon basis modulo [`LARGE_PRIME`], dense rows.
///
/// A rank `r` found here certifies rank ≥ `r` over ℚ for integer input: the
/// corresponding `r × r` minor is nonzero modulo the prime, hence nonzero.
#[derive(Clone, Debug)]
pub struct ModpEchelon {
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl ModpEchelon {
    pub fn new(ncols: usize) -> Self {
        ModpEchelon {
            ncols,
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Inserts a vector of residues; returns `true` when the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let mut lead = None;
        for col in 0..self.ncols {
            if v[col] == 0 {
                continue;
            }
            match self.pivot_row[col] {
                Some(r) => {
                    let f = v[col];
                    let row = &self.rows[r];
                    for j in col..self.ncols {
                        if row[j] != 0 {
                            let sub = mul_mod(f, row[j]);
                            v[j] = if v[j] >= sub { v[j] - sub } else { v[j] + LARGE_PRIME - sub };
                        }
                    }
                }
                None => {
                    lead = Some(col);
                    break;
                }
            }
        }
        let Some(col) = lead else { return false };
        let inv = inv_mod(v[col]);
        for x in v.iter_mut().skip(col) {
            *x = mul_mod(*x, inv);
        }
        self.pivot_row[col] = Some(self.rows.len());
        self.pivot_cols.push(col);
        self.rows.push(v);
        true
    }
}
