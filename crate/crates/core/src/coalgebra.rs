//! Coproducts on tensor products of modules, and the checks that they are
//! algebra maps and co-associative.
//!
//! Tensor products follow the Kronecker convention with the left factor
//! varying slowest. `Δ(X3) = X3 ⊗ 1 + 1 ⊗ X3` in every basis and is always
//! built by the same expression, so it is bitwise identical across all
//! coproduct constructors.

use num_complex::Complex64;

use crate::basis_map::{change_basis, BasisChangeSpec};
use crate::convergence::{fit_order, SlopeFit};
use crate::error::{Error, Result};
pub use crate::generators::{Generator, GeneratorTriple};
use crate::linalg::{c, commutator, flip_permutation, identity, is_diagonal, kron, max_diff, max_norm, weight_function, CMatrix};
use crate::repmod::{build_irrep, q_casimir_of};
use crate::scalar::{is_degenerate, q_number, DeformParam, HalfInt};
use crate::tolerances;

/// Coproduct images `Δ(X3), Δ(X+), Δ(X-)` on `left ⊗ right`.
#[derive(Clone, Debug)]
pub struct TensorRep {
    left: GeneratorTriple,
    right: GeneratorTriple,
    z: DeformParam,
    bracket: DeformParam,
    delta: GeneratorTriple,
}

impl TensorRep {
    /// Legs `{X_m ⊗ 1}` are built from this triple.
    pub fn left(&self) -> &GeneratorTriple {
        &self.left
    }

    pub fn right(&self) -> &GeneratorTriple {
        &self.right
    }

    /// Parameter of the Hopf algebra, `z = log q`.
    pub fn z(&self) -> DeformParam {
        self.z
    }

    /// Parameter of the bracket the images close: `[Δ+, Δ-] = [2Δ3]` at this
    /// value. `0` for the primitive coproduct, `z` for the analytical one and
    /// `z'` for a quantum basis.
    pub fn bracket_param(&self) -> DeformParam {
        self.bracket
    }

    pub fn dim(&self) -> usize {
        self.delta.dim()
    }

    pub fn d3(&self) -> &CMatrix {
        self.delta.x3()
    }

    pub fn dplus(&self) -> &CMatrix {
        self.delta.xplus()
    }

    pub fn dminus(&self) -> &CMatrix {
        self.delta.xminus()
    }

    /// The images as a triple, ready to be fed into another coproduct.
    pub fn triple(&self) -> &GeneratorTriple {
        &self.delta
    }

    pub fn into_triple(self) -> GeneratorTriple {
        self.delta
    }
}

fn primitive_weight(a: &GeneratorTriple, b: &GeneratorTriple) -> CMatrix {
    kron(a.x3(), &b.identity()) + kron(&a.identity(), b.x3())
}

/// `Δ₀(X) = X ⊗ 1 + 1 ⊗ X`.
pub fn coproduct_primitive(a: &GeneratorTriple, b: &GeneratorTriple) -> TensorRep {
    let (ia, ib) = (a.identity(), b.identity());
    let prim = |x: &CMatrix, y: &CMatrix| kron(x, &ib) + kron(&ia, y);
    let delta = GeneratorTriple::from_parts(
        primitive_weight(a, b),
        prim(a.xplus(), b.xplus()),
        prim(a.xminus(), b.xminus()),
    );
    TensorRep { left: a.clone(), right: b.clone(), z: DeformParam::ZERO, bracket: DeformParam::ZERO, delta }
}

/// `δ(X3) = 0`, `δ(X±) = z (X3 ⊗ X± - X± ⊗ X3)`.
pub fn cocommutator(a: &GeneratorTriple, b: &GeneratorTriple, z: DeformParam) -> GeneratorTriple {
    let n = a.dim() * b.dim();
    let skew = |x: &CMatrix, y: &CMatrix| (kron(a.x3(), y) - kron(x, b.x3())) * z.value();
    GeneratorTriple::from_parts(CMatrix::zeros(n, n), skew(a.xplus(), b.xplus()), skew(a.xminus(), b.xminus()))
}

/// `Δ(X3) = X3 ⊗ 1 + 1 ⊗ X3`, `Δ(X±) = q^{X3} ⊗ X± + X± ⊗ q^{-X3}`.
///
/// The legs may themselves be coproduct images; `q^{±X3}` is a function of a
/// graded weight operator either way.
pub fn coproduct_analytical(a: &GeneratorTriple, b: &GeneratorTriple, z: DeformParam) -> Result<TensorRep> {
    let zv = z.value();
    let qa = weight_function(a.x3(), |w| (zv * w).exp())?;
    let qb_inv = weight_function(b.x3(), |w| (-zv * w).exp())?;
    let twist = |x: &CMatrix, y: &CMatrix| kron(&qa, y) + kron(x, &qb_inv);
    let delta = GeneratorTriple::from_parts(
        primitive_weight(a, b),
        twist(a.xplus(), b.xplus()),
        twist(a.xminus(), b.xminus()),
    );
    Ok(TensorRep { left: a.clone(), right: b.clone(), z, bracket: z, delta })
}

/// `max(|[Δ+, Δ-] - [2Δ3]|, |[Δ3, Δ±] ∓ Δ±|)`, with the q-number taken at the
/// bracket parameter of `t`.
pub fn homomorphism_defect(t: &TensorRep) -> f64 {
    let zp = t.bracket_param();
    let lhs = commutator(t.dplus(), t.dminus());
    let rhs = match weight_function(t.d3(), |n| q_number(2.0 * n, zp)) {
        Ok(m) => m,
        Err(_) => return f64::INFINITY,
    };
    max_norm(&(lhs - rhs)).max(t.triple().grading_defect())
}

/// `|(Δ ⊗ 1)Δ - (1 ⊗ Δ)Δ|` for the analytical coproduct, built literally as
/// nested coproducts of the three legs.
pub fn coassociativity_defect(
    a: &GeneratorTriple,
    b: &GeneratorTriple,
    c3: &GeneratorTriple,
    z: DeformParam,
) -> Result<f64> {
    let left = coproduct_analytical(coproduct_analytical(a, b, z)?.triple(), c3, z)?;
    let right = coproduct_analytical(a, coproduct_analytical(b, c3, z)?.triple(), z)?;
    Ok(left.triple().max_diff(right.triple()))
}

/// Distance between `Δ_{-z}(a, b)` and the flip-conjugate of `Δ_z(b, a)`.
pub fn flip_symmetry_defect(a: &GeneratorTriple, b: &GeneratorTriple, z: DeformParam) -> Result<f64> {
    let direct = coproduct_analytical(a, b, -z)?;
    let swapped = coproduct_analytical(b, a, z)?;
    let p = flip_permutation(a.dim(), b.dim());
    Ok(direct.triple().max_diff(&swapped.triple().conjugate_by_permutation(&p)))
}

/// One irreducible summand of a decomposed tensor product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Block {
    pub spin: HalfInt,
    pub offset: usize,
}

/// `basis` has the weight vectors `v_{J,M}` as columns, blocks ordered by
/// decreasing `J` and weights highest first within a block. In this basis
/// the analytical images act as `⊕_J build_irrep(J, z)`.
#[derive(Clone, Debug)]
pub(crate) struct Decomposition {
    pub blocks: Vec<Block>,
    pub basis: CMatrix,
    pub inverse: CMatrix,
}

/// Highest-weight decomposition of `V_{j1} ⊗ V_{j2}` under the analytical
/// coproduct at `z`.
///
/// The highest-weight vector of spin `J` spans the null space of `Δ+`
/// restricted to the weight-`J` space (singular values below
/// [`tolerances::NULL_SPACE_REL`] of the largest). The rest of the block is
/// generated by `Δ-`, normalized with the spin-`J` lowering coefficients so
/// that the block matrices are exactly those of [`build_irrep`].
pub(crate) fn decompose(t: &TensorRep, j1: HalfInt, j2: HalfInt, z: DeformParam) -> Result<Decomposition> {
    if !is_diagonal(t.d3()) {
        return Err(Error::DecompositionFailure("weight operator is not diagonal".into()));
    }
    let n = t.dim();
    if n != j1.dim() * j2.dim() {
        return Err(Error::DimensionMismatch(format!("tensor space has dimension {n}, spins {j1} and {j2}")));
    }
    let weights: Vec<i32> = t.d3().diagonal().iter().map(|w| (2.0 * w.re).round() as i32).collect();
    let (dp, dm) = (t.dplus(), t.dminus());

    let mut basis = CMatrix::zeros(n, n);
    let mut blocks = Vec::new();
    let mut col = 0;
    let lowest = (j1.twice() - j2.twice()).abs();
    for twice in (lowest..=j1.twice() + j2.twice()).rev().step_by(2) {
        let spin = HalfInt::from_twice(twice);
        let here: Vec<usize> = (0..n).filter(|&i| weights[i] == twice).collect();
        let above: Vec<usize> = (0..n).filter(|&i| weights[i] == twice + 2).collect();
        let mut v = highest_weight_vector(dp, &here, &above, n, spin)?;

        let irrep = build_irrep(spin, z)?;
        blocks.push(Block { spin, offset: col });
        for (k, m) in spin.weights().enumerate() {
            basis.set_column(col, &v);
            col += 1;
            if k + 1 < spin.dim() {
                let coef = irrep.lowering_entry(m);
                if is_degenerate(coef, 1.0) {
                    return Err(Error::DecompositionFailure(format!(
                        "lowering coefficient out of weight {m} in spin {spin} vanishes at z = {z}"
                    )));
                }
                v = dm * v / coef;
            }
        }
    }
    debug_assert_eq!(col, n);

    let inverse = basis
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::DecompositionFailure("weight vectors are linearly dependent".into()))?;
    let dec = Decomposition { blocks, basis, inverse };

    // The blocks must reproduce the spin-J matrices; anything else means the
    // extracted vectors were numerically off.
    let scale = max_norm(dp).max(1.0);
    let (bp, _) = dec.block_diagonal(|spin| Ok(build_irrep(spin, z)?.into_triple()))?;
    let residual = max_diff(&(&dec.inverse * dp * &dec.basis), &bp);
    if residual.is_nan() || residual > 1e-8 * scale {
        return Err(Error::DecompositionFailure(format!("block residual {residual:e} after change of basis")));
    }
    Ok(dec)
}

fn highest_weight_vector(
    dp: &CMatrix,
    here: &[usize],
    above: &[usize],
    n: usize,
    spin: HalfInt,
) -> Result<nalgebra::DVector<Complex64>> {
    let mut v = nalgebra::DVector::zeros(n);
    if above.is_empty() {
        if here.len() != 1 {
            return Err(Error::DecompositionFailure(format!(
                "top weight {spin} has multiplicity {}, expected 1",
                here.len()
            )));
        }
        v[here[0]] = c(1.0);
        return Ok(v);
    }
    // Pad the restriction of Δ+ to a square matrix so the SVD yields a full
    // set of right singular vectors.
    let k = here.len();
    let mut m = CMatrix::zeros(k.max(above.len()), k);
    for (r, &i) in above.iter().enumerate() {
        for (col, &jdx) in here.iter().enumerate() {
            m[(r, col)] = dp[(i, jdx)];
        }
    }
    let svd = nalgebra::SVD::new(m, false, true);
    let v_t = svd.v_t.ok_or_else(|| Error::DecompositionFailure("SVD did not converge".into()))?;
    let sv = &svd.singular_values;
    let largest = sv.iter().copied().fold(0.0, f64::max);
    let null: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] <= tolerances::NULL_SPACE_REL * largest).collect();
    if null.len() != 1 {
        return Err(Error::DecompositionFailure(format!(
            "highest-weight space of spin {spin} has dimension {}, expected 1",
            null.len()
        )));
    }
    for (col, &jdx) in here.iter().enumerate() {
        v[jdx] = v_t[(null[0], col)].conj();
    }
    Ok(v)
}

impl Decomposition {
    /// Block-diagonal `(X+, X-)` with `block(J)` placed on each summand.
    fn block_diagonal(&self, mut block: impl FnMut(HalfInt) -> Result<GeneratorTriple>) -> Result<(CMatrix, CMatrix)> {
        let n = self.basis.nrows();
        let mut bp = CMatrix::zeros(n, n);
        let mut bm = CMatrix::zeros(n, n);
        for b in &self.blocks {
            let t = block(b.spin)?;
            let d = b.spin.dim();
            bp.view_mut((b.offset, b.offset), (d, d)).copy_from(t.xplus());
            bm.view_mut((b.offset, b.offset), (d, d)).copy_from(t.xminus());
        }
        Ok((bp, bm))
    }
}

/// `Δ(K3), Δ(K±)` for the quantum basis `g_{z'}` of U_q(su(2)), on
/// `V_{j1} ⊗ V_{j2}`.
///
/// `Δ(K±)` is `Δ(J±)` times a function of `Δ(j)` and `Δ(J3)`, and `Δ(j)` acts
/// as the total spin on each irreducible summand. The construction therefore
/// decomposes the analytical coproduct at `z`, applies the spin-`J` change of
/// basis `z -> z'` on every summand, and transforms back. `Δ(K3) = Δ(J3)`.
///
/// The legs of the returned [`TensorRep`] are the `g_{z'}` modules, so
/// `{K_m ⊗ 1}` and `{1 ⊗ K_m}` can be formed from it directly.
pub fn coproduct_quantum(j1: HalfInt, j2: HalfInt, z: DeformParam, zprime: DeformParam) -> Result<TensorRep> {
    let analytic = coproduct_analytical(build_irrep(j1, z)?.triple(), build_irrep(j2, z)?.triple(), z)?;
    let dec = decompose(&analytic, j1, j2, z)?;
    let (bp, bm) = dec.block_diagonal(|spin| {
        let spec = BasisChangeSpec::new(spin, z, zprime)?;
        Ok(change_basis(&build_irrep(spin, z)?, &spec)?.into_triple())
    })?;
    let left = build_irrep(j1, zprime)?.into_triple();
    let right = build_irrep(j2, zprime)?.into_triple();
    let delta = GeneratorTriple::from_parts(
        primitive_weight(&left, &right),
        &dec.basis * bp * &dec.inverse,
        &dec.basis * bm * &dec.inverse,
    );
    Ok(TensorRep { left, right, z, bracket: zprime, delta })
}

/// Largest distance between the spectrum of the q-Casimir of `t` and the
/// expected multiset `{[J+½]²_{q'} with multiplicity 2J+1}`, `J = |j1-j2| ..= j1+j2`.
pub fn casimir_spectrum_defect(t: &TensorRep, j1: HalfInt, j2: HalfInt) -> Result<f64> {
    let zp = t.bracket_param();
    let cas = q_casimir_of(t.triple(), zp);
    let got = nalgebra::Schur::new(cas)
        .eigenvalues()
        .ok_or_else(|| Error::DecompositionFailure("Schur form of the Casimir".into()))?;
    let mut expected = Vec::new();
    let lowest = (j1.twice() - j2.twice()).abs();
    for twice in (lowest..=j1.twice() + j2.twice()).step_by(2) {
        let lam = q_number(f64::from(twice) / 2.0 + 0.5, zp).powi(2);
        expected.extend(std::iter::repeat_n(lam, twice as usize + 1));
    }
    if expected.len() != got.len() {
        return Err(Error::DimensionMismatch(format!("{} eigenvalues for {} expected", got.len(), expected.len())));
    }
    let mut used = vec![false; got.len()];
    let mut worst = 0.0f64;
    for lam in expected {
        let (idx, dist) = got
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, g)| (i, (g - lam).norm()))
            .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        used[idx] = true;
        worst = worst.max(dist);
    }
    Ok(worst)
}

/// Slope of `r(z) = |Δ_z(X±) - Δ₀(X±) - δ_z(X±)|` against `z` for Lie legs;
/// the residual is second order, so the slope approaches 2.
pub fn bialgebra_limit_defect(j1: HalfInt, j2: HalfInt, z_sequence: &[f64]) -> Result<SlopeFit> {
    let a = build_irrep(j1, DeformParam::ZERO)?.into_triple();
    let b = build_irrep(j2, DeformParam::ZERO)?.into_triple();
    let prim = coproduct_primitive(&a, &b);
    fit_order(z_sequence, |t| {
        let z = DeformParam::real(t);
        let full = coproduct_analytical(&a, &b, z)?;
        let delta = cocommutator(&a, &b, z);
        let r = |g: Generator| max_norm(&(full.triple().get(g) - prim.triple().get(g) - delta.get(g)));
        Ok(r(Generator::Plus).max(r(Generator::Minus)))
    })
}

/// `Δ(X) ⊗ 1`-style lift: `X ⊗ 1_b`. Handy when building series on legs.
pub fn lift_left(x: &CMatrix, right_dim: usize) -> CMatrix {
    kron(x, &identity(right_dim))
}

/// `1_a ⊗ X`.
pub fn lift_right(left_dim: usize, x: &CMatrix) -> CMatrix {
    kron(&identity(left_dim), x)
}
