//! Change of basic set inside a fixed U_q(su(2)).
//!
//! All maps here rescale the ladder operators by a function of the Casimir
//! and of `X3` standing to their left. Such a left factor is evaluated on the
//! weight reached *after* the ladder step: for the entry out of `|j,m⟩` the
//! factor `f(X3 ∓ ½)` becomes `f(m ± ½)`. With this convention the closed-form
//! maps reproduce the target matrices entry for entry. The other reading
//! (`f(m ∓ ½)`) does not, and is a common source of off-by-one errors.
//!
//! The maps are entrywise rescalings, not similarity transformations: they
//! change which elements of the enveloping algebra are called `X±`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::GeneratorTriple;
use crate::linalg::c;
use crate::repmod::{build_crystal_irrep, ladder_matrices, BasisKind, IrrepMatrices};
use crate::scalar::{is_degenerate, q_number, q_number_sq_diff, q_ratio, DeformParam, HalfInt};

/// Map from the quantum basis at `z` to the one at `z_target`, for spin `j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisChangeSpec {
    j: HalfInt,
    z: DeformParam,
    z_target: DeformParam,
}

impl BasisChangeSpec {
    pub fn new(j: HalfInt, z: DeformParam, z_target: DeformParam) -> Result<Self> {
        if j.twice() < 0 {
            return Err(Error::InvalidSpin(j.to_string()));
        }
        for p in [z, z_target] {
            if is_degenerate(q_number(1.0, p), 1.0) {
                return Err(Error::DegenerateDenominator(format!("[1] vanishes at z' = {p}")));
            }
        }
        Ok(BasisChangeSpec { j, z, z_target })
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn z(&self) -> DeformParam {
        self.z
    }

    pub fn z_target(&self) -> DeformParam {
        self.z_target
    }

    pub fn inverse(&self) -> BasisChangeSpec {
        BasisChangeSpec { j: self.j, z: self.z_target, z_target: self.z }
    }

    /// Ladder rescaling for the entry whose post-action weight sits at `b ± ½`,
    /// i.e. `√[1]_z √([j+½]²_{z'} - [b]²_{z'}) / (√[1]_{z'} √([j+½]²_z - [b]²_z))`.
    ///
    /// Each root is taken separately so that the product with the source
    /// entry telescopes to the target entry on the principal branch.
    fn factor(&self, b: f64) -> Result<Complex64> {
        let top = self.j.value() + 0.5;
        let src = q_number_sq_diff(top, b, self.z);
        if is_degenerate(src, top * top) {
            return Err(Error::DegenerateDenominator(format!(
                "[{top}]² - [{b}]² vanishes at z = {} (spin {})",
                self.z, self.j
            )));
        }
        let dst = q_number_sq_diff(top, b, self.z_target);
        let num = q_number(1.0, self.z).sqrt() * dst.sqrt();
        let den = q_number(1.0, self.z_target).sqrt() * src.sqrt();
        Ok(num / den)
    }
}

/// `K3 = J3`, `K± = √([1]_q/[1]_{q'}) √(([j+½]²_{q'} - [J3∓½]²_{q'}) / ([j+½]²_q - [J3∓½]²_q)) J±`.
///
/// `rep` must be the spin-`spec.j()` module of the quantum basis at `spec.z()`.
/// The result is the module at `spec.z_target()`.
pub fn change_basis(rep: &IrrepMatrices, spec: &BasisChangeSpec) -> Result<IrrepMatrices> {
    check_source(rep, spec.j, spec.z)?;
    let (xp, xm) = ladder_matrices(
        spec.j,
        |m| Ok(spec.factor(m.value() + 0.5)? * rep.raising_entry(m)),
        |m| Ok(spec.factor(m.value() - 0.5)? * rep.lowering_entry(m)),
    )?;
    let ops = GeneratorTriple::from_parts(rep.x3().clone(), xp, xm);
    Ok(IrrepMatrices::from_parts(spec.j, BasisKind::Quantum(spec.z_target), Some(spec.z_target), ops))
}

fn check_source(rep: &IrrepMatrices, j: HalfInt, z: DeformParam) -> Result<()> {
    if rep.j() != j {
        return Err(Error::BasisMismatch(format!("matrices have spin {}, map expects {j}", rep.j())));
    }
    match rep.zprime() {
        Some(p) if p == z => Ok(()),
        _ => Err(Error::BasisMismatch(format!("matrices are in basis {}, map expects z' = {z}", rep.kind()))),
    }
}

/// `C± = √[1]_q / √([j+½]²_q - [J3∓½]²_q) J±` applied to the quantum-basis
/// module at `z`. A vanishing `0/0` at the highest-weight edge is defined as 0.
pub fn map_to_crystal(rep: &IrrepMatrices) -> Result<IrrepMatrices> {
    let z = match rep.zprime() {
        Some(z) if !matches!(rep.kind(), BasisKind::Crystal | BasisKind::Renormalized(_)) => z,
        _ => return Err(Error::BasisMismatch(format!("cannot map {} matrices to the crystal basis", rep.kind()))),
    };
    let j = rep.j();
    let top = j.value() + 0.5;
    let sqrt_one = q_number(1.0, z).sqrt();
    let factor = |b: f64, entry: Complex64| {
        let d = q_number_sq_diff(top, b, z);
        if is_degenerate(d, top * top) {
            c(0.0)
        } else {
            sqrt_one / d.sqrt() * entry
        }
    };
    let (xp, xm) = ladder_matrices(
        j,
        |m| Ok(factor(m.value() + 0.5, rep.raising_entry(m))),
        |m| Ok(factor(m.value() - 0.5, rep.lowering_entry(m))),
    )?;
    let ops = GeneratorTriple::from_parts(rep.x3().clone(), xp, xm);
    Ok(IrrepMatrices::from_parts(j, BasisKind::Crystal, None, ops))
}

/// `C3 = K3`, `C± = √[1]_{q'} / [j+½]_{q'} K±` on the spin-`j` module, with
/// entries `√(1 - ([m±½]_{q'} / [j+½]_{q'})²)`. The ratio goes through
/// [`q_ratio`], so large real `z'` is safe.
pub fn renormalized_crystal_ops(j: HalfInt, zprime: DeformParam) -> Result<IrrepMatrices> {
    if j.twice() < 0 {
        return Err(Error::InvalidSpin(j.to_string()));
    }
    let top = j.value() + 0.5;
    let entry = |b: f64| -> Result<Complex64> {
        let r = q_ratio(b, top, zprime)?;
        Ok((c(1.0) - r * r).sqrt())
    };
    let (xp, xm) = ladder_matrices(j, |m| entry(m.value() + 0.5), |m| entry(m.value() - 0.5))?;
    let ops = GeneratorTriple::from_parts(build_crystal_irrep(j)?.x3().clone(), xp, xm);
    Ok(IrrepMatrices::from_parts(j, BasisKind::Renormalized(zprime), None, ops))
}

/// Max-norm distance between [`renormalized_crystal_ops`] at real `z'` and
/// the crystal matrices.
///
/// Every nonzero ladder entry differs from its crystal value 1 by
/// `1 - √(1 - r²) = r² / (1 + √(1 - r²))`, with `r = [m±½]_{q'}/[j+½]_{q'}`.
/// The right-hand form is used so that the decay stays resolved after `r²`
/// drops below machine epsilon.
pub fn crystal_limit_defect(j: HalfInt, zprime_real: f64) -> Result<f64> {
    if !zprime_real.is_finite() || zprime_real <= 0.0 {
        return Err(Error::InvalidParameter(format!("crystal limit needs a finite z' > 0, got {zprime_real}")));
    }
    let zp = DeformParam::real(zprime_real);
    let top = j.value() + 0.5;
    let mut worst = 0.0f64;
    for (k, m) in j.weights().enumerate() {
        let mut targets = Vec::with_capacity(2);
        if k > 0 {
            targets.push(m.value() + 0.5);
        }
        if k + 1 < j.dim() {
            targets.push(m.value() - 0.5);
        }
        for b in targets {
            let r = q_ratio(b, top, zp)?.re;
            let r2 = r * r;
            worst = worst.max(r2 / (1.0 + (1.0 - r2).sqrt()));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_diff, CMatrix};
    use crate::repmod::{build_irrep, commutator_defect};

    fn spin(twice: i32) -> HalfInt {
        HalfInt::spin(twice).unwrap()
    }

    #[test]
    fn same_parameter_is_identity() {
        let z = DeformParam::new(0.3, 0.4).unwrap();
        for twice in 0..=8 {
            let rep = build_irrep(spin(twice), z).unwrap();
            let spec = BasisChangeSpec::new(spin(twice), z, z).unwrap();
            let out = change_basis(&rep, &spec).unwrap();
            assert_eq!(out.triple(), rep.triple());
        }
    }

    #[test]
    fn spin_half_to_lie() {
        let z = DeformParam::real(0.4);
        let rep = build_irrep(spin(1), z).unwrap();
        let spec = BasisChangeSpec::new(spin(1), z, DeformParam::ZERO).unwrap();
        let out = change_basis(&rep, &spec).unwrap();
        let lie = build_irrep(spin(1), DeformParam::ZERO).unwrap();
        assert!(out.triple().max_diff(lie.triple()) < 1e-15);
    }

    #[test]
    fn spin_two_round_trip() {
        let (a, b) = (DeformParam::real(0.2), DeformParam::real(0.7));
        let rep = build_irrep(spin(4), a).unwrap();
        let fwd = BasisChangeSpec::new(spin(4), a, b).unwrap();
        let there = change_basis(&rep, &fwd).unwrap();
        let back = change_basis(&there, &fwd.inverse()).unwrap();
        assert!(back.triple().max_diff(rep.triple()) < 1e-10);
        assert!(commutator_defect(&there, b) < 1e-10);
    }

    #[test]
    fn rejects_wrong_source() {
        let rep = build_irrep(spin(2), DeformParam::real(0.1)).unwrap();
        let spec = BasisChangeSpec::new(spin(2), DeformParam::real(0.2), DeformParam::ZERO).unwrap();
        assert!(matches!(change_basis(&rep, &spec), Err(Error::BasisMismatch(_))));
        let spec = BasisChangeSpec::new(spin(4), DeformParam::real(0.1), DeformParam::ZERO).unwrap();
        assert!(matches!(change_basis(&rep, &spec), Err(Error::BasisMismatch(_))));
    }

    #[test]
    fn singular_target_is_reported() {
        let err = BasisChangeSpec::new(spin(2), DeformParam::real(0.4), DeformParam::imag(std::f64::consts::PI));
        assert!(matches!(err, Err(Error::DegenerateDenominator(_))));
    }

    #[test]
    fn source_denominator_vanishing_is_reported() {
        // [3/2]² - [1/2]² = [2][1] vanishes when 2z = iπ.
        let z = DeformParam::imag(std::f64::consts::FRAC_PI_2);
        let rep = build_irrep(spin(2), z).unwrap();
        let spec = BasisChangeSpec::new(spin(2), z, DeformParam::ZERO).unwrap();
        assert!(matches!(change_basis(&rep, &spec), Err(Error::DegenerateDenominator(_))));
    }

    #[test]
    fn crystal_map_from_quantum_modules() {
        for z in [DeformParam::ZERO, DeformParam::real(0.9), DeformParam::new(0.3, 0.4).unwrap()] {
            for twice in 0..=8 {
                let rep = build_irrep(spin(twice), z).unwrap();
                let mapped = map_to_crystal(&rep).unwrap();
                let crystal = build_crystal_irrep(spin(twice)).unwrap();
                assert!(mapped.triple().max_diff(crystal.triple()) < 1e-15, "{z} {twice}");
            }
        }
    }

    #[test]
    fn renormalized_examples() {
        let half = renormalized_crystal_ops(spin(1), DeformParam::ZERO).unwrap();
        assert_eq!(half.raising_entry(HalfInt::from_twice(-1)), c(1.0));

        let one = renormalized_crystal_ops(spin(2), DeformParam::ZERO).unwrap();
        let want = (8.0f64 / 9.0).sqrt();
        for e in [one.xplus()[(0, 1)], one.xplus()[(1, 2)], one.xminus()[(1, 0)], one.xminus()[(2, 1)]] {
            assert!((e.re - want).abs() < 1e-15);
        }

        let far = renormalized_crystal_ops(spin(2), DeformParam::real(40.0)).unwrap();
        let crystal = build_crystal_irrep(spin(2)).unwrap();
        assert!(far.triple().max_diff(crystal.triple()) < 1e-6);
    }

    #[test]
    fn renormalized_is_rescaled_quantum_module() {
        let zp = DeformParam::new(0.6, 0.2).unwrap();
        let j = spin(3);
        let k = build_irrep(j, zp).unwrap();
        let scale = q_number(1.0, zp).sqrt() / q_number(j.value() + 0.5, zp);
        let renorm = renormalized_crystal_ops(j, zp).unwrap();
        let scaled: CMatrix = k.xplus() * scale;
        assert!(max_diff(renorm.xplus(), &scaled) < 1e-13);
    }

    #[test]
    fn crystal_limit_defect_examples() {
        for zp in [0.5, 5.0, 40.0] {
            assert!(crystal_limit_defect(spin(1), zp).unwrap() < 1e-13);
        }
        assert!(crystal_limit_defect(spin(2), 40.0).unwrap() <= 1e-6);
        assert!(crystal_limit_defect(spin(4), 10.0).unwrap() < crystal_limit_defect(spin(4), 5.0).unwrap());
        assert!(crystal_limit_defect(spin(2), 0.0).is_err());
    }

    #[test]
    fn crystal_limit_defect_matches_naive_distance() {
        for zp in [0.3, 1.0, 2.5, 5.0] {
            for twice in 0..=6 {
                let renorm = renormalized_crystal_ops(spin(twice), DeformParam::real(zp)).unwrap();
                let naive = renorm.triple().max_diff(build_crystal_irrep(spin(twice)).unwrap().triple());
                let stable = crystal_limit_defect(spin(twice), zp).unwrap();
                assert!((naive - stable).abs() < 1e-15, "{zp} {twice}: {naive} vs {stable}");
            }
        }
    }
}
