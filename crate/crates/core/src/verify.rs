//! Grid-driven invariant suite.
//!
//! Each registered check is expanded over the grid points it depends on and
//! evaluated independently. Reports come back sorted by check name and then
//! by parameters, so the output does not depend on scheduling.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis_map::{change_basis, crystal_limit_defect, BasisChangeSpec};
use crate::coalgebra::{
    bialgebra_limit_defect, coassociativity_defect, coproduct_analytical, coproduct_quantum, flip_symmetry_defect,
    homomorphism_defect,
};
use crate::convergence::SlopeFit;
use crate::error::{Error, Result};
use crate::linalg::{c, identity, max_diff};
use crate::ncpoly::{series_order_fit, SeriesCase};
use crate::repmod::{build_crystal_irrep, build_irrep, commutator_defect, crystal_casimir_j, lie_casimir_j, q_casimir_operator};
use crate::scalar::{q_number, DeformParam, HalfInt};
use crate::tolerances;

/// Registered check names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum CheckName {
    Commutator,
    CasimirLie,
    CasimirQ,
    CasimirCrystal,
    ChangeBasisRoundtrip,
    CrystalLimit,
    Homomorphism,
    Coassociativity,
    BialgebraLimit,
    SeriesK,
    SeriesI,
    SeriesDk,
    SeriesDk3,
    SeriesDi,
    ZprimeParity,
    FlipSymmetry,
}

impl CheckName {
    pub const ALL: [CheckName; 16] = [
        CheckName::Commutator,
        CheckName::CasimirLie,
        CheckName::CasimirQ,
        CheckName::CasimirCrystal,
        CheckName::ChangeBasisRoundtrip,
        CheckName::CrystalLimit,
        CheckName::Homomorphism,
        CheckName::Coassociativity,
        CheckName::BialgebraLimit,
        CheckName::SeriesK,
        CheckName::SeriesI,
        CheckName::SeriesDk,
        CheckName::SeriesDk3,
        CheckName::SeriesDi,
        CheckName::ZprimeParity,
        CheckName::FlipSymmetry,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Commutator => "commutator",
            CheckName::CasimirLie => "casimir_lie",
            CheckName::CasimirQ => "casimir_q",
            CheckName::CasimirCrystal => "casimir_crystal",
            CheckName::ChangeBasisRoundtrip => "change_basis_roundtrip",
            CheckName::CrystalLimit => "crystal_limit",
            CheckName::Homomorphism => "homomorphism",
            CheckName::Coassociativity => "coassociativity",
            CheckName::BialgebraLimit => "bialgebra_limit",
            CheckName::SeriesK => "series:K",
            CheckName::SeriesI => "series:I",
            CheckName::SeriesDk => "series:DK",
            CheckName::SeriesDk3 => "series:DK3",
            CheckName::SeriesDi => "series:DI",
            CheckName::ZprimeParity => "zprime_parity",
            CheckName::FlipSymmetry => "flip_symmetry",
        }
    }

    /// Parse `"all"` or a comma-separated list. Duplicates are dropped; blank
    /// input selects nothing.
    pub fn parse_selection(s: &str) -> Result<Vec<CheckName>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let name: CheckName = part.parse()?;
            if !out.contains(&name) {
                out.push(name);
            }
        }
        Ok(out)
    }
}

impl From<CheckName> for &'static str {
    fn from(n: CheckName) -> Self {
        n.as_str()
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Base parameters `(z₀, z₀')` of a perturbative series; the series runs
/// along `(t z₀, t z₀')`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub z0: DeformParam,
    pub zp0: DeformParam,
}

/// Parameter grid for [`run_suite`]. Missing fields in a grid file take the
/// default values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    /// Spins used for `j`, `j1` and `j2`.
    pub spins: Vec<HalfInt>,
    pub z: Vec<DeformParam>,
    pub zprime: Vec<DeformParam>,
    /// Scale sequence for every slope fit.
    pub t: Vec<f64>,
    /// Base directions for the series checks. Kept at unit size so that the
    /// residuals at the smallest `t` stay well above rounding.
    pub series: Vec<SeriesPoint>,
    /// Real `z'` values for the crystal limit; the defect must decrease
    /// along them and the last one is compared with the threshold.
    pub crystal_zprime: Vec<f64>,
    /// Largest leg spin in the triple tensor products.
    pub coassociativity_max_spin: HalfInt,
}

impl Default for Grid {
    fn default() -> Self {
        let p = |re: f64, im: f64| DeformParam::new(re, im).expect("finite");
        let params = vec![p(0.0, 0.0), p(0.3, 0.0), p(0.9, 0.0), p(0.0, 0.4), p(0.3, 0.4), p(-0.3, 0.0)];
        Grid {
            spins: (0..=4).map(HalfInt::from_twice).collect(),
            z: params.clone(),
            zprime: params,
            t: vec![1e-1, 3e-2, 1e-2, 3e-3, 1e-3],
            series: vec![
                SeriesPoint { z0: p(1.0, 0.0), zp0: p(0.5, 0.0) },
                SeriesPoint { z0: p(0.6, 0.8), zp0: p(0.0, 0.5) },
                SeriesPoint { z0: p(-1.0, 0.0), zp0: p(0.8, 0.6) },
            ],
            crystal_zprime: vec![5.0, 10.0, 20.0, 40.0],
            coassociativity_max_spin: HalfInt::ONE,
        }
    }
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        if self.spins.is_empty() || self.z.is_empty() || self.zprime.is_empty() {
            return Err(Error::InvalidParameter("grid needs at least one spin, z and z'".into()));
        }
        if let Some(j) = self.spins.iter().find(|j| j.twice() < 0) {
            return Err(Error::InvalidSpin(j.to_string()));
        }
        if self.crystal_zprime.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::InvalidParameter("crystal z' values must be finite and positive".into()));
        }
        Ok(())
    }

    fn spin_pairs(&self) -> Vec<(HalfInt, HalfInt)> {
        self.spins.iter().flat_map(|&a| self.spins.iter().map(move |&b| (a, b))).collect()
    }
}

/// A parameter value in a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Spin(HalfInt),
    Complex(DeformParam),
    Reals(Vec<f64>),
}

impl ParamValue {
    fn cmp_key(&self, other: &ParamValue) -> Ordering {
        match (self, other) {
            (ParamValue::Spin(a), ParamValue::Spin(b)) => a.cmp(b),
            (ParamValue::Complex(a), ParamValue::Complex(b)) => {
                a.re().total_cmp(&b.re()).then(a.im().total_cmp(&b.im()))
            }
            (ParamValue::Reals(a), ParamValue::Reals(b)) => {
                a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(a.len().cmp(&b.len()))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            ParamValue::Spin(_) => 0,
            ParamValue::Complex(_) => 1,
            ParamValue::Reals(_) => 2,
        }
    }
}

pub type Parameters = BTreeMap<String, ParamValue>;

fn cmp_params(a: &Parameters, b: &Parameters) -> Ordering {
    for ((ka, va), (kb, vb)) in a.iter().zip(b) {
        let o = ka.cmp(kb).then_with(|| va.cmp_key(vb));
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

/// Outcome of one check at one grid point.
///
/// `passed` holds exactly when `residual <= threshold` and, for slope checks,
/// the fitted slope is absent (exact identity) or at least `slope_threshold`.
/// Non-finite residuals serialize as `null`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: CheckName,
    pub parameters: Parameters,
    pub residual: f64,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_threshold: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteOptions {
    /// Multiplies every residual threshold; slope thresholds are fixed.
    pub tol_scale: f64,
    pub parallel: bool,
    /// Record wall time per entry. Off by default so that reports are
    /// reproducible byte for byte.
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { tol_scale: 1.0, parallel: true, timings: false }
    }
}

struct Outcome {
    residual: f64,
    threshold: f64,
    slope: Option<(Option<f64>, f64)>,
    note: Option<String>,
}

impl Outcome {
    fn plain(residual: f64, threshold: f64) -> Self {
        Outcome { residual, threshold, slope: None, note: None }
    }

    /// Residual at the smallest scale against the residual at the largest:
    /// a converging sequence must not grow.
    fn from_fit(fit: &SlopeFit, min_slope: f64) -> Self {
        let at = |pick: fn(f64, f64) -> bool| {
            fit.t
                .iter()
                .zip(&fit.residuals)
                .fold((f64::NAN, 0.0), |(bt, br), (&t, &r)| if bt.is_nan() || pick(t, bt) { (t, r) } else { (bt, br) })
                .1
        };
        let (small, large) = (at(|a, b| a < b), at(|a, b| a > b));
        let threshold = if fit.is_exact() { tolerances::EXACT_FLOOR.max(large) } else { large };
        Outcome { residual: small, threshold, slope: Some((fit.slope, min_slope)), note: None }
    }
}

type Job = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Task {
    name: CheckName,
    parameters: Parameters,
    job: Job,
}

fn spin_param(k: &str, j: HalfInt) -> (String, ParamValue) {
    (k.to_string(), ParamValue::Spin(j))
}

fn complex_param(k: &str, z: DeformParam) -> (String, ParamValue) {
    (k.to_string(), ParamValue::Complex(z))
}

fn task(name: CheckName, params: impl IntoIterator<Item = (String, ParamValue)>, job: Job) -> Task {
    Task { name, parameters: params.into_iter().collect(), job }
}

fn expand(name: CheckName, grid: &Grid) -> Vec<Task> {
    use CheckName::*;
    let mut out = Vec::new();
    match name {
        Commutator => {
            for &j in &grid.spins {
                for &zp in &grid.zprime {
                    out.push(task(name, [spin_param("j", j), complex_param("z_prime", zp)], Box::new(move || {
                        let rep = build_irrep(j, zp)?;
                        Ok(Outcome::plain(commutator_defect(&rep, zp), tolerances::IDENTITY))
                    })));
                }
            }
        }
        CasimirLie => {
            for &j in &grid.spins {
                out.push(task(name, [spin_param("j", j)], Box::new(move || {
                    let cas = lie_casimir_j(&build_irrep(j, DeformParam::ZERO)?)?;
                    Ok(Outcome::plain(max_diff(&cas, &(identity(j.dim()) * c(j.value()))), tolerances::IDENTITY))
                })));
            }
        }
        CasimirQ => {
            for &j in &grid.spins {
                for &zp in &grid.zprime {
                    out.push(task(name, [spin_param("j", j), complex_param("z_prime", zp)], Box::new(move || {
                        let cas = q_casimir_operator(&build_irrep(j, zp)?, zp);
                        let lam = q_number(j.value() + 0.5, zp).powi(2);
                        Ok(Outcome::plain(max_diff(&cas, &(identity(j.dim()) * lam)), tolerances::IDENTITY))
                    })));
                }
            }
        }
        CasimirCrystal => {
            for &j in &grid.spins {
                out.push(task(name, [spin_param("j", j)], Box::new(move || {
                    let cas = crystal_casimir_j(&build_crystal_irrep(j)?)?;
                    let r = max_diff(&cas, &(identity(j.dim()) * c(j.value())));
                    Ok(Outcome::plain(r, tolerances::CRYSTAL_EXACT))
                })));
            }
        }
        ChangeBasisRoundtrip => {
            for &j in &grid.spins {
                for &z in &grid.z {
                    for &zp in &grid.zprime {
                        let params = [spin_param("j", j), complex_param("z", z), complex_param("z_prime", zp)];
                        out.push(task(name, params, Box::new(move || {
                            let source = build_irrep(j, z)?;
                            let spec = BasisChangeSpec::new(j, z, zp)?;
                            let mapped = change_basis(&source, &spec)?;
                            let direct = build_irrep(j, zp)?;
                            let back = change_basis(&mapped, &spec.inverse())?;
                            // Both parts must meet the tighter single-map tolerance.
                            let r = mapped.triple().max_diff(direct.triple()).max(back.triple().max_diff(source.triple()));
                            Ok(Outcome::plain(r, tolerances::IDENTITY))
                        })));
                    }
                }
            }
        }
        CrystalLimit => {
            let zs = grid.crystal_zprime.clone();
            for &j in &grid.spins {
                let zs = zs.clone();
                let params = [spin_param("j", j), ("z_prime".to_string(), ParamValue::Reals(zs.clone()))];
                out.push(task(name, params, Box::new(move || crystal_outcome(j, &zs))));
            }
        }
        Homomorphism => {
            for (j1, j2) in grid.spin_pairs() {
                for &z in &grid.z {
                    for &zp in &grid.zprime {
                        let params = [
                            spin_param("j1", j1),
                            spin_param("j2", j2),
                            complex_param("z", z),
                            complex_param("z_prime", zp),
                        ];
                        out.push(task(name, params, Box::new(move || {
                            if zp == z {
                                let a = build_irrep(j1, z)?;
                                let t = coproduct_analytical(a.triple(), build_irrep(j2, z)?.triple(), z)?;
                                return Ok(Outcome::plain(homomorphism_defect(&t), tolerances::IDENTITY));
                            }
                            // The decomposition divides by lowering coefficients that
                            // can be small (z near a root of unity), so this branch is
                            // measured relative to the size of [2Δ3]_{z'}.
                            let t = coproduct_quantum(j1, j2, z, zp)?;
                            let top = q_number(f64::from(j1.twice() + j2.twice()), zp).norm().max(1.0);
                            let mut o = Outcome::plain(homomorphism_defect(&t) / top, tolerances::IDENTITY);
                            o.note = Some("relative to max |[2 D3]_q'|".into());
                            Ok(o)
                        })));
                    }
                }
            }
        }
        Coassociativity => {
            let legs: Vec<HalfInt> =
                grid.spins.iter().copied().filter(|j| *j <= grid.coassociativity_max_spin).collect();
            for &a in &legs {
                for &b in &legs {
                    for &c3 in &legs {
                        for &z in &grid.z {
                            let params =
                                [spin_param("j1", a), spin_param("j2", b), spin_param("j3", c3), complex_param("z", z)];
                            out.push(task(name, params, Box::new(move || {
                                let leg = |j| build_irrep(j, z).map(|r| r.into_triple());
                                let r = coassociativity_defect(&leg(a)?, &leg(b)?, &leg(c3)?, z)?;
                                Ok(Outcome::plain(r, tolerances::COMPOSED))
                            })));
                        }
                    }
                }
            }
        }
        BialgebraLimit => {
            for (j1, j2) in grid.spin_pairs() {
                let ts = grid.t.clone();
                out.push(task(name, [spin_param("j1", j1), spin_param("j2", j2)], Box::new(move || {
                    let fit = bialgebra_limit_defect(j1, j2, &ts)?;
                    Ok(Outcome::from_fit(&fit, tolerances::BIALGEBRA_SLOPE))
                })));
            }
        }
        SeriesK | SeriesI => {
            for &j in &grid.spins {
                for sp in &grid.series {
                    let case = if name == SeriesK {
                        SeriesCase::KSeries { j, z0: sp.z0, zp0: sp.zp0 }
                    } else {
                        SeriesCase::ISeries { j, z0: sp.z0 }
                    };
                    let mut params = vec![spin_param("j", j), complex_param("z0", sp.z0)];
                    if name == SeriesK {
                        params.push(complex_param("z_prime0", sp.zp0));
                    }
                    out.push(series_task(name, params, case, grid.t.clone()));
                }
            }
        }
        SeriesDk | SeriesDk3 | SeriesDi => {
            for (j1, j2) in grid.spin_pairs() {
                for sp in &grid.series {
                    let (z0, zp0) = (sp.z0, sp.zp0);
                    let case = match name {
                        SeriesDk => SeriesCase::DkSeries { j1, j2, z0, zp0 },
                        SeriesDk3 => SeriesCase::Dk3Truncation { j1, j2, z0, zp0 },
                        _ => SeriesCase::DiTruncation { j1, j2, z0 },
                    };
                    let mut params = vec![spin_param("j1", j1), spin_param("j2", j2), complex_param("z0", z0)];
                    if name != SeriesDi {
                        params.push(complex_param("z_prime0", zp0));
                    }
                    out.push(series_task(name, params, case, grid.t.clone()));
                }
            }
        }
        ZprimeParity => {
            for &j in &grid.spins {
                for &zp in &grid.zprime {
                    out.push(task(name, [spin_param("j", j), complex_param("z_prime", zp)], Box::new(move || {
                        let r = build_irrep(j, zp)?.triple().max_diff(build_irrep(j, -zp)?.triple());
                        Ok(Outcome::plain(r, tolerances::STRUCTURAL))
                    })));
                }
            }
        }
        FlipSymmetry => {
            for (j1, j2) in grid.spin_pairs() {
                for &z in &grid.z {
                    let params = [spin_param("j1", j1), spin_param("j2", j2), complex_param("z", z)];
                    out.push(task(name, params, Box::new(move || {
                        let a = build_irrep(j1, z)?.into_triple();
                        let b = build_irrep(j2, z)?.into_triple();
                        Ok(Outcome::plain(flip_symmetry_defect(&a, &b, z)?, tolerances::FLIP))
                    })));
                }
            }
        }
    }
    out
}

fn series_task(name: CheckName, params: Vec<(String, ParamValue)>, case: SeriesCase, ts: Vec<f64>) -> Task {
    task(name, params, Box::new(move || {
        let fit = series_order_fit(&case, &ts)?;
        Ok(Outcome::from_fit(&fit, case.required_slope()))
    }))
}

/// Defect at the last `z'` of `zs`; a sequence that fails to decrease is
/// reported with an infinite residual. A trivial module (all defects zero)
/// passes.
fn crystal_outcome(j: HalfInt, zs: &[f64]) -> Result<Outcome> {
    let defects = zs.iter().map(|&z| crystal_limit_defect(j, z)).collect::<Result<Vec<_>>>()?;
    let Some(&last) = defects.last() else {
        return Err(Error::InvalidParameter("empty crystal z' list".into()));
    };
    let all_zero = defects.iter().all(|&d| d == 0.0);
    let decreasing = all_zero || defects.windows(2).all(|w| w[1] < w[0]);
    if decreasing {
        Ok(Outcome::plain(last, tolerances::CRYSTAL_LIMIT))
    } else {
        Ok(Outcome {
            residual: f64::INFINITY,
            threshold: tolerances::CRYSTAL_LIMIT,
            slope: None,
            note: Some(format!("defect not strictly decreasing: {defects:?}")),
        })
    }
}

fn evaluate_task(t: &Task, opts: &SuiteOptions) -> CheckReport {
    let start = opts.timings.then(Instant::now);
    let outcome = (t.job)();
    let runtime_ms = start.map(|s| s.elapsed().as_secs_f64() * 1e3);
    match outcome {
        Ok(o) => {
            let threshold = o.threshold * opts.tol_scale;
            let slope_ok = o.slope.is_none_or(|(s, min)| s.is_none_or(|s| s >= min));
            let passed = o.residual <= threshold && slope_ok;
            CheckReport {
                name: t.name,
                parameters: t.parameters.clone(),
                residual: o.residual,
                threshold,
                slope: o.slope.and_then(|(s, _)| s),
                slope_threshold: o.slope.map(|(_, min)| min),
                passed,
                runtime_ms,
                note: o.note.or_else(|| o.slope.and_then(|(s, _)| s.is_none().then(|| "exact".to_string()))),
            }
        }
        Err(e) => CheckReport {
            name: t.name,
            parameters: t.parameters.clone(),
            residual: f64::INFINITY,
            threshold: f64::NAN,
            slope: None,
            slope_threshold: None,
            passed: false,
            runtime_ms,
            note: Some(e.to_string()),
        },
    }
}

/// Run `selection` over `grid`: one report per check and grid point, sorted
/// by check name and then parameters. Failures of the underlying operations
/// (for example a degenerate `[1]_{q'}`) become failed entries with a note.
pub fn run_suite(grid: &Grid, selection: &[CheckName], opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    grid.validate()?;
    if !(opts.tol_scale.is_finite() && opts.tol_scale > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance scale {} must be positive", opts.tol_scale)));
    }
    let mut names = selection.to_vec();
    names.sort_by_key(|n| n.as_str());
    names.dedup();
    let tasks: Vec<Task> = names.iter().flat_map(|&n| expand(n, grid)).collect();
    let mut reports: Vec<CheckReport> = if opts.parallel {
        tasks.par_iter().map(|t| evaluate_task(t, opts)).collect()
    } else {
        tasks.iter().map(|t| evaluate_task(t, opts)).collect()
    };
    reports.sort_by(|a, b| a.name.as_str().cmp(b.name.as_str()).then_with(|| cmp_params(&a.parameters, &b.parameters)));
    Ok(reports)
}

/// True when every report passed; an empty list counts as passing.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

/// The worst residual-to-threshold ratio among `reports`, for summaries.
pub fn worst_ratio(reports: &[CheckReport]) -> f64 {
    reports.iter().map(|r| r.residual / r.threshold).filter(|x| !x.is_nan()).fold(0.0, f64::max)
}
