//! Exact linear algebra over ℤ, ℚ, ℤ/n and prime fields.

pub mod echelon;
pub mod lattice;
pub mod matrix;
pub mod module;
pub mod scalar;
pub mod smith;

pub use lattice::{
    complex_cohomology, complex_cohomology_over, kernel_basis, kernel_coordinates, kernel_lattice,
    lattice_coordinates,
    lattice_quotient, Kernel,
};
pub use matrix::{IntMatrix, IntText};
pub use module::{cokernel, tensor_module, tor1, Decomposition, FpModule, ModuleReport, ScalarModule};
pub use scalar::{is_prime, parse_scalar_list, prime_divisors, BaseScalar};
pub use smith::{rank, smith_normal_form, SmithForm};
