//! Residuals of the truncated perturbative expansions against the exact
//! constructions, and their convergence order under `z = t z₀, z' = t z₀'`.
//!
//! Every correction below is built from the cubic
//! `X(g) = ⅓ S(X3² Xg) + ⅙ S(Xg² X_{-g})`, `g ∈ {+, -}`, weighted by
//! `ε = z'² - z²`.

use num_complex::Complex64;

use super::{evaluate, symmetrize, NcPolynomial, NcWord};
use crate::basis_map::{change_basis, BasisChangeSpec};
use crate::coalgebra::{cocommutator, coproduct_analytical, coproduct_primitive, coproduct_quantum, lift_left, lift_right};
use crate::convergence::{fit_order, SlopeFit};
use crate::error::Result;
use crate::generators::{Generator, GeneratorTriple};
use crate::linalg::{c, max_norm, CMatrix};
use crate::repmod::build_irrep;
use crate::scalar::{DeformParam, HalfInt};
use crate::tolerances;

const LADDERS: [Generator; 2] = [Generator::Plus, Generator::Minus];

/// A truncated expansion together with its base parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SeriesCase {
    /// `K± ≈ J± + ε/3 S(J3² J±) + ε/6 S(J±² J∓)` on spin `j`.
    KSeries { j: HalfInt, z0: DeformParam, zp0: DeformParam },
    /// Lie generators from analytical ones: the K-series at `z' = 0`.
    ISeries { j: HalfInt, z0: DeformParam },
    /// The inverse expansion `J± ≈ I± + z²/3 S(I3² I±) + z²/6 S(I±² I∓)`.
    JOfISeries { j: HalfInt, z0: DeformParam },
    /// `Δ(K±) ≈ q^{K3} ⊗ K± + K± ⊗ q^{-K3} + ε [Δ₀(X) - 1 ⊗ X - X ⊗ 1]`.
    DkSeries { j1: HalfInt, j2: HalfInt, z0: DeformParam, zp0: DeformParam },
    /// `Δ(K±) ≈ Δ₀(K±) + z (K3 ⊗ K± - K± ⊗ K3)`.
    Dk3Truncation { j1: HalfInt, j2: HalfInt, z0: DeformParam, zp0: DeformParam },
    /// The same truncation in the Lie basis, `z' = 0`.
    DiTruncation { j1: HalfInt, j2: HalfInt, z0: DeformParam },
}

impl SeriesCase {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesCase::KSeries { .. } => "K-series",
            SeriesCase::ISeries { .. } => "I-series",
            SeriesCase::JOfISeries { .. } => "J-of-I-series",
            SeriesCase::DkSeries { .. } => "DK-series",
            SeriesCase::Dk3Truncation { .. } => "DK3-truncation",
            SeriesCase::DiTruncation { .. } => "DI-truncation",
        }
    }

    /// Order of the neglected remainder in the generators.
    pub fn remainder_order(&self) -> u32 {
        match self {
            SeriesCase::Dk3Truncation { .. } | SeriesCase::DiTruncation { .. } => 3,
            _ => 4,
        }
    }

    /// Minimum fitted slope for the case to pass.
    pub fn required_slope(&self) -> f64 {
        match self.remainder_order() {
            3 => tolerances::ORDER3_SLOPE,
            _ => tolerances::ORDER4_SLOPE,
        }
    }
}

/// `⅓ S(X3² Xg) + ⅙ S(Xg² X_{-g})`.
fn cubic_correction(g: Generator) -> NcPolynomial {
    let sym = |w: Vec<Generator>| symmetrize(&NcWord::new(w)).expect("cubic words are short");
    let t = Generator::Three;
    sym(vec![t, t, g]).scale(c(1.0 / 3.0)) + sym(vec![g, g, g.opposite()]).scale(c(1.0 / 6.0))
}

fn epsilon(z: DeformParam, zp: DeformParam) -> Complex64 {
    zp.value() * zp.value() - z.value() * z.value()
}

/// Max over `±` of `|exact_g - (base_g + eps · X(g)(base))|`.
fn single_module_residual(exact: &GeneratorTriple, base: &GeneratorTriple, eps: Complex64) -> f64 {
    LADDERS
        .iter()
        .map(|&g| {
            let series = base.get(g) + evaluate(&cubic_correction(g), base) * eps;
            max_norm(&(exact.get(g) - series))
        })
        .fold(0.0, f64::max)
}

fn mapped(j: HalfInt, from: DeformParam, to: DeformParam) -> Result<(GeneratorTriple, GeneratorTriple)> {
    let source = build_irrep(j, from)?;
    let target = change_basis(&source, &BasisChangeSpec::new(j, from, to)?)?;
    Ok((source.into_triple(), target.into_triple()))
}

/// Residual of `case` at scale `t`.
pub fn series_residual(case: &SeriesCase, t: f64) -> Result<f64> {
    match *case {
        SeriesCase::KSeries { j, z0, zp0 } => {
            let (z, zp) = (z0.scale(t), zp0.scale(t));
            let (analytic, quantum) = mapped(j, z, zp)?;
            Ok(single_module_residual(&quantum, &analytic, epsilon(z, zp)))
        }
        SeriesCase::ISeries { j, z0 } => {
            let z = z0.scale(t);
            let (analytic, lie) = mapped(j, z, DeformParam::ZERO)?;
            Ok(single_module_residual(&lie, &analytic, epsilon(z, DeformParam::ZERO)))
        }
        SeriesCase::JOfISeries { j, z0 } => {
            let z = z0.scale(t);
            let (lie, analytic) = mapped(j, DeformParam::ZERO, z)?;
            Ok(single_module_residual(&analytic, &lie, epsilon(DeformParam::ZERO, z)))
        }
        SeriesCase::DkSeries { j1, j2, z0, zp0 } => {
            let (z, zp) = (z0.scale(t), zp0.scale(t));
            let exact = coproduct_quantum(j1, j2, z, zp)?;
            let (a, b) = (exact.left(), exact.right());
            let twisted = coproduct_analytical(a, b, z)?;
            let prim = coproduct_primitive(a, b);
            let eps = epsilon(z, zp);
            let r = LADDERS.iter().map(|&g| {
                let x = cubic_correction(g);
                let corr: CMatrix = evaluate(&x, prim.triple())
                    - lift_right(a.dim(), &evaluate(&x, b))
                    - lift_left(&evaluate(&x, a), b.dim());
                max_norm(&(exact.triple().get(g) - twisted.triple().get(g) - corr * eps))
            });
            Ok(r.fold(0.0, f64::max))
        }
        SeriesCase::Dk3Truncation { j1, j2, z0, zp0 } => truncation_residual(j1, j2, z0.scale(t), zp0.scale(t)),
        SeriesCase::DiTruncation { j1, j2, z0 } => truncation_residual(j1, j2, z0.scale(t), DeformParam::ZERO),
    }
}

fn truncation_residual(j1: HalfInt, j2: HalfInt, z: DeformParam, zp: DeformParam) -> Result<f64> {
    let exact = coproduct_quantum(j1, j2, z, zp)?;
    let (a, b) = (exact.left(), exact.right());
    let prim = coproduct_primitive(a, b);
    let delta = cocommutator(a, b, z);
    let r = LADDERS
        .iter()
        .map(|&g| max_norm(&(exact.triple().get(g) - prim.triple().get(g) - delta.get(g))));
    Ok(r.fold(0.0, f64::max))
}

/// Fit the slope of `ln r(t)` against `ln t` for `case`.
pub fn series_order_fit(case: &SeriesCase, t_sequence: &[f64]) -> Result<SlopeFit> {
    fit_order(t_sequence, |t| series_residual(case, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const T: [f64; 5] = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];

    fn spin(twice: i32) -> HalfInt {
        HalfInt::spin(twice).unwrap()
    }

    #[test]
    fn k_series_is_fourth_order() {
        let case = SeriesCase::KSeries { j: spin(2), z0: DeformParam::real(1.0), zp0: DeformParam::real(0.5) };
        let fit = series_order_fit(&case, &T).unwrap();
        assert!(fit.slope.unwrap() >= 3.7, "{fit:?}");
    }

    #[test]
    fn k_series_collapses_when_parameters_coincide() {
        let z0 = DeformParam::real(1.0);
        let case = SeriesCase::KSeries { j: spin(1), z0, zp0: z0 };
        let fit = series_order_fit(&case, &T).unwrap();
        assert!(fit.is_exact(), "{fit:?}");
    }

    #[test]
    fn lie_and_inverse_series_are_fourth_order() {
        for case in [
            SeriesCase::ISeries { j: spin(3), z0: DeformParam::new(0.6, 0.8).unwrap() },
            SeriesCase::JOfISeries { j: spin(3), z0: DeformParam::real(1.0) },
        ] {
            let fit = series_order_fit(&case, &T).unwrap();
            assert!(fit.slope.unwrap() >= 3.7, "{}: {fit:?}", case.name());
        }
    }

    #[test]
    fn forward_then_inverse_truncation_is_fourth_order() {
        // Compose the truncated J -> K map with the truncated K -> J map; the
        // ε and -ε corrections cancel through third order.
        let j = spin(2);
        let residual = |t: f64| -> Result<f64> {
            let (z, zp) = (DeformParam::real(t), DeformParam::real(0.5 * t));
            let analytic = build_irrep(j, z)?.into_triple();
            let eps = epsilon(z, zp);
            let fwd = |g: Generator| analytic.get(g) + evaluate(&cubic_correction(g), &analytic) * eps;
            let k = GeneratorTriple::new(analytic.x3().clone(), fwd(Generator::Plus), fwd(Generator::Minus))?;
            Ok(single_module_residual(&analytic, &k, -eps))
        };
        let fit = fit_order(&T, residual).unwrap();
        assert!(fit.slope.unwrap() >= 3.7, "{fit:?}");
    }

    // The coproduct expansions below keep every term through the stated
    // generator order, but a remainder term of generator order n carries only
    // n - 1 powers of (z, z'). At fixed spin the fitted slopes are therefore
    // n - 1: three for the o(4) coproduct series, two for the o(3) truncations.
    #[test]
    fn coproduct_series_remainder_is_third_order_in_the_parameters() {
        let case = SeriesCase::DkSeries {
            j1: spin(1),
            j2: spin(2),
            z0: DeformParam::real(1.0),
            zp0: DeformParam::real(0.5),
        };
        let s = series_order_fit(&case, &T).unwrap().slope.unwrap();
        assert!((s - 3.0).abs() < 0.1, "{s}");
    }

    #[test]
    fn coproduct_truncations_are_second_order_in_the_parameters() {
        for case in [
            SeriesCase::Dk3Truncation { j1: spin(1), j2: spin(1), z0: DeformParam::real(1.0), zp0: DeformParam::real(0.5) },
            SeriesCase::DiTruncation { j1: spin(2), j2: spin(1), z0: DeformParam::real(1.0) },
        ] {
            let s = series_order_fit(&case, &T).unwrap().slope.unwrap();
            assert!((s - 2.0).abs() < 0.1, "{}: {s}", case.name());
        }
    }

    #[test]
    fn trivial_leg_makes_coproduct_series_exact() {
        let case = SeriesCase::DkSeries { j1: spin(0), j2: spin(2), z0: DeformParam::real(1.0), zp0: DeformParam::real(0.5) };
        assert!(series_order_fit(&case, &T).unwrap().is_exact());
    }

    #[test]
    fn invalid_sequence() {
        let case = SeriesCase::KSeries { j: spin(2), z0: DeformParam::real(1.0), zp0: DeformParam::real(0.5) };
        assert!(matches!(series_order_fit(&case, &[0.1]), Err(Error::InvalidSequence(_))));
    }
}
