use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::BaseScalar;

/// Dense row-major integer matrix used inside the algorithms.
pub type Dense = Vec<Vec<BigInt>>;

/// Sparse arbitrary-precision integer matrix.
///
/// Entries are kept in a `(row, col)`-keyed ordered map, so the storage order
/// is row-major and two matrices are equal exactly when their shapes and
/// nonzero entries agree. Zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triplets. Zero values are
    /// dropped; out-of-range indices and duplicates are rejected.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::BadInput(format!(
                    "entry ({i}, {j}) out of range for a {rows}x{cols} matrix"
                )));
            }
            if m.entries.contains_key(&(i, j)) {
                return Err(Error::BadInput(format!("duplicate entry ({i}, {j})")));
            }
            if !v.is_zero() {
                m.entries.insert((i, j), v);
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in dense.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Convenience constructor from small integers, mainly for tests.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let dense: Dense = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().cloned().map(Into::into).collect()
            })
            .collect();
        Self::from_dense(r, c, &dense)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    fn add_at(&mut self, i: usize, j: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_default();
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn to_dense(&self) -> Dense {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.iter() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        let mut cols = vec![vec![BigInt::zero(); self.rows]; self.cols];
        for (i, j, v) in self.iter() {
            cols[j][i] = v.clone();
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.iter().map(|(i, j, v)| ((j, i), v.clone())).collect(),
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::mismatch(
                "matrix product",
                format!("{} rows on the right", self.cols),
                rhs.rows,
            ));
        }
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); rhs.rows];
        for (i, j, v) in rhs.iter() {
            by_row[i].push((j, v));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for (i, k, a) in self.iter() {
            for &(j, b) in &by_row[k] {
                out.add_at(i, j, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (i, j, a) in self.iter() {
            out[i] += a * &v[j];
        }
        out
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_shape(rhs, "matrix sum")?;
        let mut out = self.clone();
        for (i, j, v) in rhs.iter() {
            out.add_at(i, j, v);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_shape(rhs, "matrix difference")?;
        let mut out = self.clone();
        for (i, j, v) in rhs.iter() {
            out.add_at(i, j, &-v);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        if k.is_zero() {
            return out;
        }
        for (i, j, v) in self.iter() {
            out.entries.insert((i, j), v * k);
        }
        out
    }

    fn check_same_shape(&self, rhs: &IntMatrix, op: &'static str) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::mismatch(
                op,
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        Ok(())
    }

    /// Kronecker product with row-major index convention:
    /// `(A ⊗ B)[i·p + k, j·q + l] = A[i, j] · B[k, l]` for `B` of shape `p × q`.
    pub fn kron(&self, rhs: &IntMatrix) -> IntMatrix {
        let (p, q) = rhs.shape();
        let mut out = IntMatrix::zeros(self.rows * p, self.cols * q);
        for (i, j, a) in self.iter() {
            for (k, l, b) in rhs.iter() {
                out.entries.insert((i * p + k, j * q + l), a * b);
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::mismatch("hstack", self.rows, rhs.rows));
        }
        let mut out = self.clone();
        out.cols += rhs.cols;
        for (i, j, v) in rhs.iter() {
            out.entries.insert((i, j + self.cols), v.clone());
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::mismatch("vstack", self.cols, rhs.cols));
        }
        let mut out = self.clone();
        out.rows += rhs.rows;
        for (i, j, v) in rhs.iter() {
            out.entries.insert((i + self.rows, j), v.clone());
        }
        Ok(out)
    }

    /// The listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, cols.len());
        for (new_j, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, new_j, self.get(i, j));
            }
        }
        out
    }

    /// Entrywise reduction into the canonical representatives of `scalar`.
    pub fn reduce(&self, scalar: BaseScalar) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            out.set(i, j, scalar.reduce(v));
        }
        out
    }

    /// Whether every entry vanishes in `scalar`.
    pub fn is_zero_in(&self, scalar: BaseScalar) -> bool {
        self.iter().all(|(_, _, v)| scalar.reduce(v).is_zero())
    }

    /// Exact determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::mismatch("determinant", "square matrix", format!("{}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, IntText)>,
}

/// Input form: `rows`, `cols` and sparse `entries` triplets, or `dense` rows
/// (shape fields optional but checked when present).
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixInput {
    rows: Option<usize>,
    cols: Option<usize>,
    entries: Option<Vec<(usize, usize, IntText)>>,
    dense: Option<Vec<Vec<IntText>>>,
}

/// An integer serialized as a decimal string; plain JSON integers are also
/// accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntText(pub BigInt);

impl Serialize for IntText {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for IntText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => s
                .trim()
                .parse::<BigInt>()
                .map(IntText)
                .map_err(|_| D::Error::custom(format!("`{s}` is not a decimal integer"))),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n
                .to_string()
                .parse::<BigInt>()
                .map(IntText)
                .map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected an integer, found {other}"))),
        }
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.iter().map(|(i, j, v)| (i, j, IntText(v.clone()))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixInput::deserialize(d)?;
        match (raw.entries, raw.dense) {
            (Some(entries), None) => {
                let (Some(rows), Some(cols)) = (raw.rows, raw.cols) else {
                    return Err(D::Error::custom("sparse matrix needs `rows` and `cols`"));
                };
                IntMatrix::from_triplets(rows, cols, entries.into_iter().map(|(i, j, v)| (i, j, v.0)))
                    .map_err(D::Error::custom)
            }
            (None, Some(dense)) => {
                let rows = raw.rows.unwrap_or(dense.len());
                let cols = raw.cols.or_else(|| dense.first().map(Vec::len)).unwrap_or(0);
                if dense.len() != rows || dense.iter().any(|r| r.len() != cols) {
                    return Err(D::Error::custom(format!("dense matrix is not {rows} x {cols}")));
                }
                let triplets = dense
                    .into_iter()
                    .enumerate()
                    .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, v)| (i, j, v.0)));
                IntMatrix::from_triplets(rows, cols, triplets).map_err(D::Error::custom)
            }
            _ => Err(D::Error::custom("matrix needs exactly one of `entries` and `dense`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_big_entry() {
        let big: BigInt = BigInt::from(1u8) << 70;
        let text = format!(
            r#"{{"rows": 2, "cols": 2, "entries": [[0, 1, "{big}"], [1, 0, -3]]}}"#
        );
        let m: IntMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(m.get(0, 1), big);
        assert_eq!(m.get(1, 0), BigInt::from(-3));
        let back: IntMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn dense_input() {
        let m: IntMatrix = serde_json::from_str(r#"{"dense": [["1", 0], [0, "-2"]]}"#).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![1, 0], vec![0, -2]]));
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows": 3, "dense": [["1"]]}"#).is_err());
        assert!(serde_json::from_str::<IntMatrix>(r#"{"dense": [["1"], ["1", "2"]]}"#).is_err());
        assert!(serde_json::from_str::<IntMatrix>(r#"{"rows": 1, "cols": 1, "entries": [], "dense": []}"#).is_err());
    }

    #[test]
    fn rejects_duplicates_and_range() {
        let dup = r#"{"rows": 1, "cols": 1, "entries": [[0, 0, "1"], [0, 0, "2"]]}"#;
        assert!(serde_json::from_str::<IntMatrix>(dup).is_err());
        let oob = r#"{"rows": 1, "cols": 1, "entries": [[1, 0, "1"]]}"#;
        assert!(serde_json::from_str::<IntMatrix>(oob).is_err());
        let extra = r#"{"rows": 1, "cols": 1, "entries": [], "rank": 3}"#;
        assert!(serde_json::from_str::<IntMatrix>(extra).is_err());
    }

    #[test]
    fn explicit_zeros_are_not_stored() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m, IntMatrix::from_triplets(2, 2, [(0, 1, BigInt::one()), (1, 1, BigInt::zero())]).unwrap());
    }

    #[test]
    fn kron_and_products() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let i2 = IntMatrix::identity(2);
        let k = a.kron(&i2);
        assert_eq!(k.get(2, 0), BigInt::from(3));
        assert_eq!(k.get(3, 1), BigInt::from(3));
        assert_eq!(k.get(1, 3), BigInt::from(2));
        assert_eq!(a.mul(&i2).unwrap(), a);
        assert_eq!(a.determinant().unwrap(), BigInt::from(-2));
        assert!(a.mul(&IntMatrix::zeros(3, 1)).is_err());
    }
}
