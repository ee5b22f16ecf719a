//! Pass/fail thresholds shared by the library checks, the verification suite
//! and the acceptance tests. No check hard-codes its own magic number.

/// Commutator, Casimir, basis-change and homomorphism residuals.
pub const IDENTITY: f64 = 1e-10;

/// Round trips through two basis changes; nested coproducts.
pub const COMPOSED: f64 = 1e-9;

/// Structural identities whose only error is a handful of roundings
/// (`[X3, X±] = ±X±`, `z' -> -z'` parity of the ladder entries).
pub const STRUCTURAL: f64 = 1e-13;

/// Flip / `z -> -z` covariance of the analytical coproduct.
pub const FLIP: f64 = 1e-12;

/// Crystal Casimir series; entries are small integers and halves.
pub const CRYSTAL_EXACT: f64 = 1e-13;

/// Distance between the renormalized ladder operators and the crystal 0/1
/// pattern at `z' = 40`.
pub const CRYSTAL_LIMIT: f64 = 1e-6;

/// Fitted log-log slope for `||Δ_z - Δ_0 - δ_z||`.
pub const BIALGEBRA_SLOPE: f64 = 1.9;

/// Fitted slope for truncations whose remainder is `o(4)`.
pub const ORDER4_SLOPE: f64 = 3.7;

/// Fitted slope for truncations whose remainder is `o(3)`.
pub const ORDER3_SLOPE: f64 = 2.7;

/// Residual sequences entirely below this floor are treated as identically
/// zero (the truncation is exact), so no slope is fitted.
pub const EXACT_FLOOR: f64 = 1e-13;

/// Singular values below this fraction of the largest span the null space
/// during highest-weight extraction.
pub const NULL_SPACE_REL: f64 = 1e-8;

/// A q-number (or difference of squares) with modulus below this, relative to
/// its undeformed scale, is treated as a vanishing denominator.
pub const DEGENERATE: f64 = 1e-12;
