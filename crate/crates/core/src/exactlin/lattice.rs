//! Kernels, lattice coordinates and cohomology of complexes of free modules.
//!
//! Everything over ℤ/n is handled through lattices `nℤ^b ⊆ L ⊆ ℤ^b`: a
//! submodule of `(ℤ/n)^b` is the image of such an `L`, and quotients of
//! submodules become quotients of lattices. The same code with `n = 0`
//! covers ℤ itself.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::module::{Decomposition, FpModule, ScalarModule};
use super::scalar::BaseScalar;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Generators of a kernel together with the additive order of each
/// generator (0 = infinite order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub scalar: BaseScalar,
    /// Columns are the generators.
    pub basis: IntMatrix,
    pub orders: Vec<BigInt>,
}

impl Kernel {
    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols() == 0
    }

    /// The kernel as an abstract module over its scalar ring.
    pub fn module(&self) -> ScalarModule {
        let decomposition = match self.scalar {
            BaseScalar::Rat => Decomposition::free(self.len()),
            _ => Decomposition::from_cyclic_orders(&self.orders),
        };
        ScalarModule {
            scalar: self.scalar,
            decomposition,
        }
    }
}

/// ℤ-basis of the lattice `{x ∈ ℤ^c : A·x ∈ nℤ^r}`.
///
/// With `U·A·V = D` the condition reads `dᵢ zᵢ ≡ 0 (mod n)` for `z = V⁻¹x`,
/// so the lattice is spanned by the columns `V·eᵢ · n/gcd(n, dᵢ)`.
/// For `n = 0` only the columns past the rank survive; for `n > 0` the
/// lattice has full rank `c`.
pub fn kernel_lattice(a: &IntMatrix, modulus: u64) -> IntMatrix {
    let s = smith_normal_form(a);
    let c = a.cols();
    let v_cols = s.v.columns();
    if modulus == 0 {
        return IntMatrix::from_columns(c, &v_cols[s.rank()..]);
    }
    let n = BigInt::from(modulus);
    let cols: Vec<Vec<BigInt>> = v_cols
        .into_iter()
        .enumerate()
        .map(|(i, col)| {
            let g = s.diagonal_entry(i).gcd(&n);
            let k = &n / g;
            col.into_iter().map(|x| x * &k).collect()
        })
        .collect();
    IntMatrix::from_columns(c, &cols)
}

/// Generators of `ker(A)` over `scalar`.
///
/// Over ℤ the columns are a basis of the saturated kernel lattice; over ℚ
/// they are a ℚ-basis; over ℤ/n (including prime fields) they are
/// independent cyclic generators with the orders recorded in
/// [`Kernel::orders`] (all equal to `p` over `F_p`, hence a basis).
pub fn kernel_basis(a: &IntMatrix, scalar: BaseScalar) -> Kernel {
    let s = smith_normal_form(a);
    let c = a.cols();
    let v_cols = s.v.columns();
    match scalar.modulus() {
        None | Some(0) => {
            let basis = IntMatrix::from_columns(c, &v_cols[s.rank()..]);
            let orders = vec![BigInt::zero(); basis.cols()];
            Kernel {
                scalar,
                basis,
                orders,
            }
        }
        Some(modulus) => {
            let n = BigInt::from(modulus);
            let mut cols = Vec::new();
            let mut orders = Vec::new();
            for (i, col) in v_cols.into_iter().enumerate() {
                let g = s.diagonal_entry(i).gcd(&n);
                if g.is_one() {
                    continue;
                }
                let k = &n / &g;
                cols.push(col.into_iter().map(|x| scalar.reduce(&(x * &k))).collect());
                orders.push(g);
            }
            Kernel {
                scalar,
                basis: IntMatrix::from_columns(c, &cols),
                orders,
            }
        }
    }
}

/// Coordinates of kernel elements `y` (columns) with respect to the
/// generators returned by [`kernel_basis`] for the same `a` and `scalar`.
/// Over ℤ/n the coordinate of generator `i` is only defined modulo its order
/// and is returned reduced.
pub fn kernel_coordinates(a: &IntMatrix, scalar: BaseScalar, y: &IntMatrix) -> Result<IntMatrix> {
    if y.rows() != a.cols() {
        return Err(Error::mismatch("kernel coordinates", a.cols(), y.rows()));
    }
    let s = smith_normal_form(a);
    let z = s.v_inv.mul(y)?;
    let outside = || Error::BadInput("vector is not in the kernel".into());
    match scalar.modulus() {
        None | Some(0) => {
            let r = s.rank();
            if z.iter().any(|(i, _, _)| i < r) {
                return Err(outside());
            }
            let mut out = IntMatrix::zeros(a.cols() - r, y.cols());
            for (i, j, v) in z.iter() {
                out.set(i - r, j, v.clone());
            }
            Ok(out)
        }
        Some(modulus) => {
            let n = BigInt::from(modulus);
            let mut rows = Vec::new();
            for i in 0..a.cols() {
                let g = s.diagonal_entry(i).gcd(&n);
                let step = &n / &g;
                let mut row = Vec::with_capacity(y.cols());
                for j in 0..y.cols() {
                    let (q, r) = z.get(i, j).div_mod_floor(&step);
                    if !r.is_zero() {
                        return Err(outside());
                    }
                    row.push(q.mod_floor(&g));
                }
                if !g.is_one() {
                    rows.push(row);
                }
            }
            Ok(IntMatrix::from_dense(rows.len(), y.cols(), &rows))
        }
    }
}

/// Solves `B·X = Y` over ℤ for a basis `B` (full column rank) of a lattice
/// containing the columns of `Y`.
pub fn lattice_coordinates(basis: &IntMatrix, y: &IntMatrix) -> Result<IntMatrix> {
    if basis.rows() != y.rows() {
        return Err(Error::mismatch("lattice coordinates", basis.rows(), y.rows()));
    }
    let s = smith_normal_form(basis);
    let k = basis.cols();
    if s.rank() != k {
        return Err(Error::BadInput("lattice basis is not linearly independent".into()));
    }
    // B = U⁻¹ D V⁻¹, so X = V · D⁺ · U · Y
    let uy = s.u.mul(y)?;
    let mut z = IntMatrix::zeros(k, y.cols());
    for (i, j, val) in uy.iter() {
        if i >= k {
            return Err(Error::BadInput("vector outside the lattice's span".into()));
        }
        let (q, r) = val.div_rem(&s.diagonal_entry(i));
        if !r.is_zero() {
            return Err(Error::BadInput("vector outside the lattice".into()));
        }
        z.set(i, j, q);
    }
    s.v.mul(&z)
}

/// `L / L'` for a lattice basis `L` and generators of a sublattice `L' ⊆ L`.
pub fn lattice_quotient(big_basis: &IntMatrix, small_generators: &IntMatrix) -> Result<FpModule> {
    let coords = lattice_coordinates(big_basis, small_generators)?;
    Ok(FpModule::new(coords))
}

fn check_complex(d_in: &IntMatrix, d_out: &IntMatrix, modulus: u64) -> Result<()> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::mismatch(
            "complex",
            format!("d_out with {} columns", d_in.rows()),
            d_out.cols(),
        ));
    }
    let comp = d_out.mul(d_in)?;
    let scalar = if modulus == 0 {
        BaseScalar::Int
    } else {
        BaseScalar::IntMod(modulus)
    };
    let nonzero = comp.iter().filter(|(_, _, v)| !scalar.reduce(v).is_zero()).count();
    if nonzero > 0 {
        return Err(Error::NotAComplex { nonzero });
    }
    Ok(())
}

/// `ker(d_out) / im(d_in)` for a complex of free ℤ-modules
/// `ℤ^a --d_in--> ℤ^b --d_out--> ℤ^c`.
pub fn complex_cohomology(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<FpModule> {
    check_complex(d_in, d_out, 0)?;
    let kernel = kernel_lattice(d_out, 0);
    lattice_quotient(&kernel, d_in)
}

/// Cohomology of `S ⊗ (ℤ^a → ℤ^b → ℤ^c)` as a module over `S`.
pub fn complex_cohomology_over(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
    scalar: BaseScalar,
) -> Result<ScalarModule> {
    match scalar.modulus() {
        None => {
            check_complex(d_in, d_out, 0)?;
            let s_out = smith_normal_form(d_out);
            let s_in = smith_normal_form(d_in);
            let dim = d_in.rows() - s_out.rank() - s_in.rank();
            Ok(ScalarModule::free(BaseScalar::Rat, dim))
        }
        Some(0) => Ok(complex_cohomology(d_in, d_out)?.over_int()),
        Some(n) => {
            check_complex(d_in, d_out, n)?;
            let kernel = kernel_lattice(d_out, n);
            let b = d_in.rows();
            let image = d_in.hstack(&IntMatrix::identity(b).scale(&BigInt::from(n)))?;
            let q = lattice_quotient(&kernel, &image)?;
            Ok(ScalarModule {
                scalar,
                decomposition: q.decomposition().clone(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::zeros(2, 2), BaseScalar::Rat);
        assert_eq!(k.len(), 2);
        assert!(kernel_basis(&m(&[vec![2]]), BaseScalar::Int).is_empty());
        let k4 = kernel_basis(&m(&[vec![2]]), BaseScalar::IntMod(4));
        assert_eq!(k4.basis, m(&[vec![2]]));
        assert_eq!(k4.orders, vec![BigInt::from(2)]);
    }

    #[test]
    fn kernel_mod_n_matches_enumeration() {
        // brute force over (ℤ/4)^2 for A = [[2, 2]]
        let a = m(&[vec![2, 2]]);
        let brute = (0..4)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .filter(|&(x, y)| (2 * x + 2 * y) % 4 == 0)
            .count();
        let k = kernel_basis(&a, BaseScalar::IntMod(4));
        let order: BigInt = k.orders.iter().product();
        assert_eq!(order, BigInt::from(brute));
    }

    #[test]
    fn cohomology_examples() {
        let z = complex_cohomology(&IntMatrix::zeros(2, 0), &IntMatrix::zeros(0, 2)).unwrap();
        assert_eq!(z.free_rank(), 2);
        let h = complex_cohomology(&m(&[vec![2]]), &IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(h.torsion(), &[BigInt::from(2)]);
        assert_eq!(h.free_rank(), 0);
        let e = complex_cohomology(&IntMatrix::identity(3), &IntMatrix::zeros(1, 3)).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn cohomology_errors() {
        let not_complex = complex_cohomology(&m(&[vec![1]]), &m(&[vec![1]]));
        assert!(matches!(not_complex, Err(Error::NotAComplex { .. })));
        let mismatch = complex_cohomology(&m(&[vec![1], vec![0]]), &m(&[vec![1]]));
        assert!(matches!(mismatch, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn cohomology_mod_n() {
        // ℤ --2--> ℤ tensored with ℤ/4: H at the middle is ℤ/2
        let h = complex_cohomology_over(&m(&[vec![2]]), &IntMatrix::zeros(0, 1), BaseScalar::IntMod(4))
            .unwrap();
        assert_eq!(h.decomposition.torsion, vec![BigInt::from(2)]);
        let q = complex_cohomology_over(&m(&[vec![2]]), &IntMatrix::zeros(0, 1), BaseScalar::Rat)
            .unwrap();
        assert!(q.is_zero());
    }
}
