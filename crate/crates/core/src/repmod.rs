//! Spin-j matrices in every basis kind, and the Casimir operators that
//! recover `j` from them.
//!
//! The weight basis is ordered highest weight first: index `k` carries
//! `m = j - k`, so `X+` is strictly upper triangular (superdiagonal) and `X-`
//! strictly lower triangular (subdiagonal).

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::GeneratorTriple;
use crate::linalg::{anticommutator, c, commutator, identity, max_norm, weight_function, CMatrix};
use crate::scalar::{is_degenerate, q_number, q_number_sq_diff, DeformParam, HalfInt};

/// Which basic set of U_q(su(2)) a set of matrices realizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BasisKind {
    /// `z' = 0`.
    Lie,
    /// `z' = z`.
    Analytical,
    /// Generic `z'`.
    Quantum(DeformParam),
    /// The `z' -> infinity` limit of the renormalized ladder operators.
    Crystal,
    /// Ladder operators rescaled by `√[1]_{q'} / [j+½]_{q'}` at finite `z'`.
    Renormalized(DeformParam),
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKind::Lie => f.write_str("lie"),
            BasisKind::Analytical => f.write_str("analytical"),
            BasisKind::Quantum(zp) => write!(f, "quantum(z'={zp})"),
            BasisKind::Crystal => f.write_str("crystal"),
            BasisKind::Renormalized(zp) => write!(f, "renormalized(z'={zp})"),
        }
    }
}

/// The matrices `(X3, X+, X-)` of a spin-`j` module.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepMatrices {
    j: HalfInt,
    kind: BasisKind,
    /// Parameter of the deformed bracket `[X+, X-] = [2 X3]_{q'}`; `None` for
    /// crystal-type matrices.
    zprime: Option<DeformParam>,
    ops: GeneratorTriple,
}

impl IrrepMatrices {
    pub(crate) fn from_parts(j: HalfInt, kind: BasisKind, zprime: Option<DeformParam>, ops: GeneratorTriple) -> Self {
        IrrepMatrices { j, kind, zprime, ops }
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    /// The parameter the bracket is deformed with, if any.
    pub fn zprime(&self) -> Option<DeformParam> {
        self.zprime
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn x3(&self) -> &CMatrix {
        self.ops.x3()
    }

    pub fn xplus(&self) -> &CMatrix {
        self.ops.xplus()
    }

    pub fn xminus(&self) -> &CMatrix {
        self.ops.xminus()
    }

    pub fn triple(&self) -> &GeneratorTriple {
        &self.ops
    }

    pub fn into_triple(self) -> GeneratorTriple {
        self.ops
    }

    /// Lie-basis matrices: either built as such or at `z' = 0`.
    pub fn is_lie(&self) -> bool {
        matches!(self.zprime, Some(zp) if zp.is_zero())
            && !matches!(self.kind, BasisKind::Crystal | BasisKind::Renormalized(_))
    }

    /// `⟨j, m+1| X+ |j, m⟩`.
    pub fn raising_entry(&self, m: HalfInt) -> Complex64 {
        let k = index_of(self.j, m);
        if k == 0 {
            return c(0.0);
        }
        self.xplus()[(k - 1, k)]
    }

    /// `⟨j, m-1| X- |j, m⟩`.
    pub fn lowering_entry(&self, m: HalfInt) -> Complex64 {
        let k = index_of(self.j, m);
        if k + 1 == self.dim() {
            return c(0.0);
        }
        self.xminus()[(k + 1, k)]
    }
}

/// Basis index of weight `m` in the spin-`j` module.
pub(crate) fn index_of(j: HalfInt, m: HalfInt) -> usize {
    debug_assert!(j.has_weight(m), "{m} is not a weight of spin {j}");
    ((j.twice() - m.twice()) / 2) as usize
}

fn weight_matrix(j: HalfInt) -> CMatrix {
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(j.dim(), j.weights().map(|m| c(m.value()))))
}

/// Ladder matrices from per-weight coefficients: `up(m)` is the `X+` entry out
/// of `|j, m⟩`, `down(m)` the `X-` entry.
pub(crate) fn ladder_matrices(
    j: HalfInt,
    mut up: impl FnMut(HalfInt) -> Result<Complex64>,
    mut down: impl FnMut(HalfInt) -> Result<Complex64>,
) -> Result<(CMatrix, CMatrix)> {
    let d = j.dim();
    let mut xp = CMatrix::zeros(d, d);
    let mut xm = CMatrix::zeros(d, d);
    for (k, m) in j.weights().enumerate() {
        if k > 0 {
            xp[(k - 1, k)] = up(m)?;
        }
        if k + 1 < d {
            xm[(k + 1, k)] = down(m)?;
        }
    }
    Ok((xp, xm))
}

/// The spin-`j` module of the quantum basis `g_{z'}`:
/// `X± |j,m⟩ = |j,m±1⟩ √([j+½]² - [m±½]²) / √[1]` with q-numbers at `z'`.
///
/// Square roots take the principal branch; for real `z'` every entry is real
/// and non-negative. At `z' = 0` these are the usual angular momentum matrices.
pub fn build_irrep(j: HalfInt, zprime: DeformParam) -> Result<IrrepMatrices> {
    build_quantum(j, zprime, BasisKind::Quantum(zprime))
}

/// Resolve a [`BasisKind`] to its parameter and build. `z` is only consulted
/// for [`BasisKind::Analytical`]. Lie and analytical matrices go through the
/// same code path as [`build_irrep`] with the substituted parameter.
pub fn build(j: HalfInt, kind: BasisKind, z: DeformParam) -> Result<IrrepMatrices> {
    match kind {
        BasisKind::Lie => build_quantum(j, DeformParam::ZERO, kind),
        BasisKind::Analytical => build_quantum(j, z, kind),
        BasisKind::Quantum(zp) => build_quantum(j, zp, kind),
        BasisKind::Crystal => build_crystal_irrep(j),
        BasisKind::Renormalized(zp) => crate::basis_map::renormalized_crystal_ops(j, zp),
    }
}

fn build_quantum(j: HalfInt, zprime: DeformParam, kind: BasisKind) -> Result<IrrepMatrices> {
    if j.twice() < 0 {
        return Err(Error::InvalidSpin(j.to_string()));
    }
    let one = q_number(1.0, zprime);
    if is_degenerate(one, 1.0) {
        return Err(Error::DegenerateDenominator(format!("[1]_q' = {one} at z' = {zprime}")));
    }
    let sqrt_one = one.sqrt();
    let top = j.value() + 0.5;
    let coeff = |b: f64| q_number_sq_diff(top, b, zprime).sqrt() / sqrt_one;
    let (xp, xm) = ladder_matrices(j, |m| Ok(coeff(m.value() + 0.5)), |m| Ok(coeff(m.value() - 0.5)))?;
    let ops = GeneratorTriple::from_parts(weight_matrix(j), xp, xm);
    Ok(IrrepMatrices::from_parts(j, kind, Some(zprime), ops))
}

/// Crystal-basis matrices: `C± |j,m⟩ = |j,m±1⟩ (1 - δ_{j,±m})`.
pub fn build_crystal_irrep(j: HalfInt) -> Result<IrrepMatrices> {
    if j.twice() < 0 {
        return Err(Error::InvalidSpin(j.to_string()));
    }
    let (xp, xm) = ladder_matrices(j, |_| Ok(c(1.0)), |_| Ok(c(1.0)))?;
    let ops = GeneratorTriple::from_parts(weight_matrix(j), xp, xm);
    Ok(IrrepMatrices::from_parts(j, BasisKind::Crystal, None, ops))
}

/// `max |[X+, X-] - [2 X3]_{q'}|`.
pub fn commutator_defect(rep: &IrrepMatrices, zprime: DeformParam) -> f64 {
    let lhs = commutator(rep.xplus(), rep.xminus());
    let rhs = weight_function(rep.x3(), |n| q_number(2.0 * n, zprime)).expect("diagonal weight operator");
    max_norm(&(lhs - rhs))
}

/// `[1]_{q'} X+ X- + [X3 - ½]_{q'}²`, which equals `[j+½]_{q'}²` times the
/// identity on the spin-`j` module of `g_{z'}`.
pub fn q_casimir_operator(rep: &IrrepMatrices, zprime: DeformParam) -> CMatrix {
    q_casimir_of(rep.triple(), zprime)
}

pub(crate) fn q_casimir_of(t: &GeneratorTriple, zprime: DeformParam) -> CMatrix {
    let one = q_number(1.0, zprime);
    let g = weight_function(t.x3(), |n| q_number(n - 0.5, zprime).powi(2)).expect("graded weight operator");
    t.xplus() * t.xminus() * one + g
}

/// Recover `j` from a q-Casimir eigenvalue `[j+½]_{q'}²`, for real `z'`.
pub fn spin_from_casimir(eigenvalue: Complex64, zprime: DeformParam) -> Option<f64> {
    if !zprime.is_real() || eigenvalue.re < 0.0 {
        return None;
    }
    let root = eigenvalue.re.sqrt();
    let x = if zprime.is_zero() { root } else { (zprime.re() * root).asinh() / zprime.re() };
    Some(x - 0.5)
}

/// `√(¼ + ½{X+, X-} + X3²) - ½`, equal to `j` times the identity on a
/// Lie-basis module. The argument of the root is diagonal in the weight basis,
/// so the root is taken entrywise.
pub fn lie_casimir_j(rep: &IrrepMatrices) -> Result<CMatrix> {
    if !rep.is_lie() {
        return Err(Error::NonLieBasis(rep.kind().to_string()));
    }
    let n = rep.dim();
    let eye = identity(n);
    let arg = &eye * c(0.25) + anticommutator(rep.xplus(), rep.xminus()) * c(0.5) + rep.x3() * rep.x3();
    let root = CMatrix::from_diagonal(&arg.diagonal().map(|x| x.sqrt()));
    Ok(root - eye * c(0.5))
}

/// `Σ_{k=0}^{2j} (C-)^k C3 (1 - C- C+) (C+)^k`, equal to `j` times the identity.
///
/// `(1 - C- C+)` projects onto the highest weight and `C+` is nilpotent of
/// order `2j + 1`, so stopping at `k = 2j` is exact.
pub fn crystal_casimir_j(rep: &IrrepMatrices) -> Result<CMatrix> {
    if rep.kind() != BasisKind::Crystal {
        return Err(Error::NonCrystalBasis(rep.kind().to_string()));
    }
    let n = rep.dim();
    let (cp, cm) = (rep.xplus(), rep.xminus());
    let core = rep.x3() * (identity(n) - cm * cp);
    let mut up = identity(n);
    let mut down = identity(n);
    let mut sum = CMatrix::zeros(n, n);
    for _ in 0..=rep.j().twice() {
        sum += &down * &core * &up;
        up = cp * up;
        down *= cm;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_diff;

    fn spin(twice: i32) -> HalfInt {
        HalfInt::spin(twice).unwrap()
    }

    /// Angular momentum matrices from `√(j(j+1) - m(m±1))`.
    fn lie_oracle(j: HalfInt) -> (CMatrix, CMatrix) {
        let jj = j.value();
        ladder_matrices(
            j,
            |m| Ok(c((jj * (jj + 1.0) - m.value() * (m.value() + 1.0)).sqrt())),
            |m| Ok(c((jj * (jj + 1.0) - m.value() * (m.value() - 1.0)).sqrt())),
        )
        .unwrap()
    }

    #[test]
    fn spin_half_lie() {
        let rep = build_irrep(spin(1), DeformParam::ZERO).unwrap();
        assert_eq!(rep.xplus(), &CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]));
        assert_eq!(rep.x3(), &CMatrix::from_row_slice(2, 2, &[c(0.5), c(0.0), c(0.0), c(-0.5)]));
    }

    #[test]
    fn spin_half_deformed_entry() {
        let zp = DeformParam::real(0.4);
        let one = 0.4f64.sinh() / 0.4;
        let rep = build_irrep(spin(1), zp).unwrap();
        let e = rep.raising_entry(HalfInt::from_twice(-1));
        assert!((e.re - one.sqrt()).abs() < 1e-15 && e.im == 0.0);
    }

    #[test]
    fn spin_one_lie_entries() {
        let rep = build_irrep(spin(2), DeformParam::ZERO).unwrap();
        let s2 = 2f64.sqrt();
        assert!((rep.xplus()[(0, 1)].re - s2).abs() < 1e-15);
        assert!((rep.xplus()[(1, 2)].re - s2).abs() < 1e-15);
        assert_eq!(rep.xplus().iter().filter(|x| x.norm() > 0.0).count(), 2);
    }

    #[test]
    fn lie_build_matches_angular_momentum_oracle() {
        for twice in 0..=12 {
            let j = spin(twice);
            let rep = build_irrep(j, DeformParam::ZERO).unwrap();
            let (xp, xm) = lie_oracle(j);
            assert!(max_diff(rep.xplus(), &xp) < 1e-13);
            assert!(max_diff(rep.xminus(), &xm) < 1e-13);
        }
    }

    #[test]
    fn lie_and_analytical_share_the_quantum_path() {
        let z = DeformParam::new(0.3, 0.4).unwrap();
        for twice in 0..=6 {
            let j = spin(twice);
            assert_eq!(build(j, BasisKind::Lie, z).unwrap().triple(), build_irrep(j, DeformParam::ZERO).unwrap().triple());
            assert_eq!(build(j, BasisKind::Analytical, z).unwrap().triple(), build_irrep(j, z).unwrap().triple());
        }
    }

    #[test]
    fn degenerate_unit_q_number() {
        let zp = DeformParam::imag(std::f64::consts::PI);
        match build_irrep(spin(2), zp) {
            Err(Error::DegenerateDenominator(msg)) => assert!(msg.contains("z'")),
            other => panic!("expected DegenerateDenominator, got {other:?}"),
        }
    }

    #[test]
    fn crystal_examples() {
        let rep = build_crystal_irrep(spin(2)).unwrap();
        // |1,0> -> |1,1>, |1,-1> -> |1,0>, |1,1> killed.
        assert_eq!(rep.xplus()[(0, 1)], c(1.0));
        assert_eq!(rep.xplus()[(1, 2)], c(1.0));
        assert_eq!(rep.raising_entry(HalfInt::ONE), c(0.0));
        assert_eq!(rep.lowering_entry(-HalfInt::ONE), c(0.0));
        let singlet = build_crystal_irrep(spin(0)).unwrap();
        assert_eq!(singlet.dim(), 1);
        assert_eq!(singlet.x3()[(0, 0)], c(0.0));
        assert_eq!(singlet.xplus()[(0, 0)], c(0.0));
        let half = build_crystal_irrep(spin(1)).unwrap();
        assert_eq!(half.xplus(), build_irrep(spin(1), DeformParam::ZERO).unwrap().xplus());
    }

    #[test]
    fn commutator_defect_examples() {
        let rep = build_irrep(spin(1), DeformParam::ZERO).unwrap();
        assert!(commutator_defect(&rep, DeformParam::ZERO) < 1e-13);

        let zp = DeformParam::real(0.9);
        let rep = build_irrep(spin(1), zp).unwrap();
        assert!(commutator_defect(&rep, zp) < 1e-12);
        let one = 0.9f64.sinh() / 0.9;
        let br = commutator(rep.xplus(), rep.xminus());
        assert!((br[(0, 0)].re - one).abs() < 1e-12 && (br[(1, 1)].re + one).abs() < 1e-12);

        let zp = DeformParam::new(0.5, 0.5).unwrap();
        let rep = build_irrep(spin(6), zp).unwrap();
        assert!(commutator_defect(&rep, zp) < 1e-10);
    }

    #[test]
    fn q_casimir_examples() {
        let rep = build_irrep(spin(1), DeformParam::ZERO).unwrap();
        assert!(max_diff(&q_casimir_operator(&rep, DeformParam::ZERO), &identity(2)) < 1e-14);

        let zp = DeformParam::real(0.3);
        let rep = build_irrep(spin(2), zp).unwrap();
        // [3/2]² from the ladder coefficients: [1]·|c(m-1 -> m)|² + [m-½]² at every m.
        let lam = (0.45f64.sinh() / 0.3).powi(2);
        assert!(max_diff(&q_casimir_operator(&rep, zp), &(identity(3) * c(lam))) < 1e-12);
        assert!((spin_from_casimir(c(lam), zp).unwrap() - 1.0).abs() < 1e-12);

        let rep = build_irrep(spin(4), DeformParam::ZERO).unwrap();
        assert!(max_diff(&q_casimir_operator(&rep, DeformParam::ZERO), &(identity(5) * c(6.25))) < 1e-13);
    }

    #[test]
    fn lie_casimir_examples() {
        let rep = build_irrep(spin(0), DeformParam::ZERO).unwrap();
        assert!(max_norm(&lie_casimir_j(&rep).unwrap()) < 1e-15);
        for twice in [1, 3] {
            let rep = build(spin(twice), BasisKind::Lie, DeformParam::ZERO).unwrap();
            let want = identity(twice as usize + 1) * c(f64::from(twice) / 2.0);
            assert!(max_diff(&lie_casimir_j(&rep).unwrap(), &want) < 1e-14);
        }
        let deformed = build_irrep(spin(1), DeformParam::real(0.2)).unwrap();
        assert!(matches!(lie_casimir_j(&deformed), Err(Error::NonLieBasis(_))));
    }

    #[test]
    fn crystal_casimir_examples() {
        for twice in 0..=8 {
            let rep = build_crystal_irrep(spin(twice)).unwrap();
            let want = identity(twice as usize + 1) * c(f64::from(twice) / 2.0);
            assert!(max_diff(&crystal_casimir_j(&rep).unwrap(), &want) < 1e-13);
        }
        let lie = build_irrep(spin(2), DeformParam::ZERO).unwrap();
        assert!(matches!(crystal_casimir_j(&lie), Err(Error::NonCrystalBasis(_))));
    }
}
