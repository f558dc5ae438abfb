use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Dense, IntMatrix};

/// Smith normal form `U · A · V = D` of an integer matrix.
///
/// `U` and `V` are unimodular; their inverses are kept as well because the
/// lattice routines need both directions. The diagonal of `D` starts with the
/// nonzero invariant factors `d₁ | d₂ | … | d_rank`, all positive, followed by
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub d: IntMatrix,
    diag: Vec<BigInt>,
}

impl SmithForm {
    /// Positive invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Diagonal entry `i` of `D` (zero past the rank).
    pub fn diagonal_entry(&self, i: usize) -> BigInt {
        self.diag.get(i).cloned().unwrap_or_default()
    }
}

struct Work {
    a: Dense,
    u: Dense,
    u_inv: Dense,
    v: Dense,
    v_inv: Dense,
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn axpy_row(m: &mut Dense, target: usize, src: usize, q: &BigInt) {
    // row[target] += q * row[src]
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += q * y;
        }
    }
}

fn axpy_col(m: &mut Dense, target: usize, src: usize, q: &BigInt) {
    // col[target] += q * col[src]
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let add = q * &row[src];
            row[target] += add;
        }
    }
}

fn swap_cols(m: &mut Dense, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

impl Work {
    // row_i += q * row_j on A; keeps U·A·V invariant.
    fn row_add(&mut self, i: usize, j: usize, q: &BigInt) {
        axpy_row(&mut self.a, i, j, q);
        axpy_row(&mut self.u, i, j, q);
        axpy_col(&mut self.u_inv, j, i, &-q);
    }

    fn col_add(&mut self, i: usize, j: usize, q: &BigInt) {
        axpy_col(&mut self.a, i, j, q);
        axpy_col(&mut self.v, i, j, q);
        axpy_row(&mut self.v_inv, j, i, &-q);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            swap_cols(&mut self.u_inv, i, j);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i != j {
            swap_cols(&mut self.a, i, j);
            swap_cols(&mut self.v, i, j);
            self.v_inv.swap(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix starting at `t`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.len() {
            for j in t..self.a[i].len() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if ax.is_one() {
                    return Some((i, j));
                }
                if best.as_ref().map_or(true, |b| ax < b.2) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` using the pivot at `(t, t)`. Returns the
    /// position of a smaller nonzero remainder if one appeared.
    fn clear_cross(&mut self, t: usize) -> Option<(usize, usize)> {
        let rows = self.a.len();
        let cols = self.a[0].len();
        let mut smaller: Option<(usize, usize, BigInt)> = None;
        let p = self.a[t][t].clone();
        for i in t + 1..rows {
            if self.a[i][t].is_zero() {
                continue;
            }
            let q = nearest_quotient(&self.a[i][t], &p);
            self.row_add(i, t, &-q);
            let r = self.a[i][t].abs();
            if !r.is_zero() && smaller.as_ref().map_or(true, |s| r < s.2) {
                smaller = Some((i, t, r));
            }
        }
        for j in t + 1..cols {
            if self.a[t][j].is_zero() {
                continue;
            }
            let q = nearest_quotient(&self.a[t][j], &p);
            self.col_add(j, t, &-q);
            let r = self.a[t][j].abs();
            if !r.is_zero() && smaller.as_ref().map_or(true, |s| r < s.2) {
                smaller = Some((t, j, r));
            }
        }
        smaller.map(|(i, j, _)| (i, j))
    }
}

/// Quotient rounded to the nearest integer, so remainders satisfy |r| ≤ |p|/2.
fn nearest_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    // floor division leaves r with the sign of p; stepping q up moves r to r − p
    let (q, r) = a.div_mod_floor(p);
    let twice: BigInt = &r * 2;
    if twice.abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

/// Computes the Smith normal form, choosing minimal-absolute-value pivots.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = a.shape();
    let mut w = Work {
        a: a.to_dense(),
        u: identity(rows),
        u_inv: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.min_pivot(t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            if let Some((i, j)) = w.clear_cross(t) {
                // a remainder smaller than the pivot: move it into place and retry
                w.row_swap(t, i);
                w.col_swap(t, j);
                continue;
            }
            // cross is clear; enforce divisibility of the trailing block
            let p = w.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| {
                w.a[i][t + 1..].iter().any(|x| !x.is_zero() && !x.is_multiple_of(&p))
            });
            match bad {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.row_negate(t);
        }
        diag.push(w.a[t][t].clone());
        t += 1;
    }
    SmithForm {
        u: IntMatrix::from_dense(rows, rows, &w.u),
        u_inv: IntMatrix::from_dense(rows, rows, &w.u_inv),
        v: IntMatrix::from_dense(cols, cols, &w.v),
        v_inv: IntMatrix::from_dense(cols, cols, &w.v_inv),
        d: IntMatrix::from_dense(rows, cols, &w.a),
        diag,
    }
}

/// Rank over ℚ.
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_quotient_halves_remainders() {
        for a in -20i64..=20 {
            for p in [-7i64, -4, -2, -1, 1, 2, 3, 6] {
                let (a, p) = (BigInt::from(a), BigInt::from(p));
                let r = &a - nearest_quotient(&a, &p) * &p;
                assert!(r.abs() * 2 <= p.abs(), "a={a} p={p} r={r}");
            }
        }
    }

    #[test]
    fn negative_pivots_terminate() {
        let a = IntMatrix::from_rows(&[vec![0, 1, 4], vec![0, 2, 0], vec![0, 1, 1], vec![0, 4, 1], vec![0, 3, 0], vec![0, 0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.invariant_factors(), &[BigInt::from(1), BigInt::from(1)]);
    }

    fn check(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        let uav = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(uav, s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        for w in s.invariant_factors().windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for (i, j, x) in s.d.iter() {
            assert_eq!(i, j);
            assert!(x.is_positive());
        }
        s
    }

    #[test]
    fn identity_and_zero() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let z = check(&IntMatrix::zeros(2, 3));
        assert_eq!(z.d, IntMatrix::zeros(2, 3));
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = check(&a);
        assert_eq!(s.invariant_factors(), &[BigInt::from(2), BigInt::from(4)]);
        // |det| is preserved: 2·4 = |2·8 − 4·6|
        assert_eq!(a.determinant().unwrap().abs(), BigInt::from(8));
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let s = check(&IntMatrix::zeros(r, c));
            assert_eq!(s.rank(), 0);
        }
    }

    #[test]
    fn divisibility_repair() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check(&a);
        assert_eq!(s.invariant_factors(), &[BigInt::from(1), BigInt::from(6)]);
    }
}
