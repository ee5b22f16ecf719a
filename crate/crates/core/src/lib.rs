//! Finite-dimensional representations of U_q(su(2)) in the one-parameter
//! family of quantum bases `g_{z'}`.
//!
//! The algebra itself is fixed by `z = log q`. A second, independent parameter
//! `z'` selects the basic set: `z' = z` is the analytical basis, `z' = 0` the
//! Lie basis, and `z' -> infinity` (after renormalization) the crystal basis.
//! Every basis shares the weight operator `X3`; they differ in the ladder
//! operators and, through them, in the form of the coproduct.
//!
//! Module map:
//!
//! * [`scalar`]: deformation parameters, half-integers and q-numbers.
//! * [`repmod`]: spin-j matrices in every basis kind, Casimir operators.
//! * [`basis_map`]: change of basis at fixed algebra, crystal renormalization.
//! * [`coalgebra`]: primitive, analytical and quantum-basis coproducts and
//!   their homomorphism / co-associativity verifiers.
//! * [`ncpoly`]: noncommutative polynomials, the symmetrizer, and the
//!   perturbative order fits.
//! * [`verify`]: grid-driven invariant suite producing [`verify::CheckReport`]s.
//!
//! Matrices are dense `nalgebra` complex matrices. Weight bases are ordered
//! highest weight first (row `k` carries `m = j - k`), and tensor products use
//! the Kronecker convention with the left factor varying slowest.

pub mod basis_map;
pub mod coalgebra;
pub mod convergence;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod ncpoly;
pub mod repmod;
pub mod scalar;
pub mod tolerances;
pub mod verify;

pub use basis_map::{change_basis, crystal_limit_defect, map_to_crystal, renormalized_crystal_ops, BasisChangeSpec};
pub use coalgebra::{
    bialgebra_limit_defect, coassociativity_defect, cocommutator, coproduct_analytical, coproduct_primitive,
    coproduct_quantum, homomorphism_defect, TensorRep,
};
pub use convergence::SlopeFit;
pub use error::{Error, Result};
pub use generators::{Generator, GeneratorTriple};
pub use linalg::CMatrix;
pub use ncpoly::{evaluate, symmetrize, NcPolynomial, NcWord, SeriesCase};
pub use repmod::{build, build_crystal_irrep, build_irrep, BasisKind, IrrepMatrices};
pub use scalar::{q_number, q_number_sq_diff, q_ratio, DeformParam, HalfInt};
pub use verify::{run_suite, CheckName, CheckReport, Grid, SuiteOptions};

pub use num_complex::Complex64;
