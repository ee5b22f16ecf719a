use std::fmt;
use std::io;

use qbases_core::linalg::max_diff;
use qbases_core::verify::{run_suite, CheckName, Grid, SuiteOptions};
use qbases_core::{
    build, build_crystal_irrep, change_basis as map_basis, coproduct_analytical, coproduct_quantum, BasisChangeSpec,
    BasisKind, DeformParam, Error, GeneratorTriple, HalfInt,
};
use serde_json::{json, Map, Value};

use crate::output::{NamedMatrix, OutputDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BasisArg {
    Lie,
    Analytical,
    Quantum,
    Crystal,
}

impl fmt::Display for BasisArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisArg::Lie => "lie",
            BasisArg::Analytical => "analytical",
            BasisArg::Quantum => "quantum",
            BasisArg::Crystal => "crystal",
        })
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core { error: Error, parameters: Map<String, Value> },
    Io(io::Error),
}

impl CliError {
    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(msg) => json!({"error": {"kind": "Usage", "message": msg}}),
            CliError::Core { error, parameters } => json!({"error": {
                "kind": error.kind(),
                "message": error.to_string(),
                "parameters": parameters,
            }}),
            CliError::Io(e) => json!({"error": {"kind": "Io", "message": e.to_string()}}),
        }
    }
}

fn core(parameters: &Map<String, Value>) -> impl Fn(Error) -> CliError + '_ {
    move |error| CliError::Core { error, parameters: parameters.clone() }
}

fn spin_json(j: HalfInt) -> Value {
    json!({"label": j.to_string(), "two_j": j.twice()})
}

fn param_json(z: DeformParam) -> Value {
    json!([z.re(), z.im()])
}

fn check_spin(name: &str, j: HalfInt) -> Result<(), CliError> {
    if j.twice() < 0 {
        return Err(CliError::Usage(format!("--{name} must be a non-negative half-integer, got {j}")));
    }
    Ok(())
}

fn triple_matrices(prefix: &str, t: &GeneratorTriple, names: [&str; 3]) -> Vec<NamedMatrix> {
    [t.x3(), t.xplus(), t.xminus()]
        .into_iter()
        .zip(names)
        .map(|(m, n)| NamedMatrix::new(format!("{prefix}{n}"), m))
        .collect()
}

const X: [&str; 3] = ["X3", "X+", "X-"];
const D: [&str; 3] = ["D3", "D+", "D-"];

pub fn irrep(
    j: HalfInt,
    basis: BasisArg,
    z: Option<DeformParam>,
    z_prime: Option<DeformParam>,
) -> Result<OutputDocument, CliError> {
    check_spin("j", j)?;
    let mut params = Map::new();
    params.insert("j".into(), spin_json(j));
    params.insert("basis".into(), json!(basis.to_string()));
    let kind = match (basis, z, z_prime) {
        (BasisArg::Crystal, None, None) => None,
        (BasisArg::Crystal, _, _) => return Err(CliError::Usage("the crystal basis takes no --z or --z-prime".into())),
        (BasisArg::Quantum, _, None) => return Err(CliError::Usage("--basis quantum requires --z-prime".into())),
        (BasisArg::Quantum, _, Some(zp)) => Some((BasisKind::Quantum(zp), zp)),
        (_, _, Some(_)) => return Err(CliError::Usage(format!("--z-prime only applies to --basis quantum, not {basis}"))),
        (BasisArg::Analytical, Some(z), None) => Some((BasisKind::Analytical, z)),
        (BasisArg::Analytical, None, None) => return Err(CliError::Usage("--basis analytical requires --z".into())),
        (BasisArg::Lie, None, None) => Some((BasisKind::Lie, DeformParam::ZERO)),
        (BasisArg::Lie, Some(_), None) => {
            return Err(CliError::Usage("the Lie basis matrices do not depend on --z; omit it".into()))
        }
    };
    if let Some(z) = z {
        params.insert("z".into(), param_json(z));
    }
    if let Some(zp) = z_prime {
        params.insert("z_prime".into(), param_json(zp));
    }
    let rep = match kind {
        None => build_crystal_irrep(j),
        Some((kind, p)) => build(j, kind, p),
    }
    .map_err(core(&params))?;
    let mut doc = OutputDocument::new("irrep", params);
    doc.matrices = Some(triple_matrices("", rep.triple(), X));
    Ok(doc)
}

pub fn coproduct(
    j1: HalfInt,
    j2: HalfInt,
    z: DeformParam,
    z_prime: Option<DeformParam>,
) -> Result<OutputDocument, CliError> {
    check_spin("j1", j1)?;
    check_spin("j2", j2)?;
    let mut params = Map::new();
    params.insert("j1".into(), spin_json(j1));
    params.insert("j2".into(), spin_json(j2));
    params.insert("z".into(), param_json(z));
    let t = match z_prime {
        None => {
            params.insert("basis".into(), json!("analytical"));
            let a = build(j1, BasisKind::Analytical, z).map_err(core(&params))?;
            let b = build(j2, BasisKind::Analytical, z).map_err(core(&params))?;
            coproduct_analytical(a.triple(), b.triple(), z).map_err(core(&params))?
        }
        Some(zp) => {
            params.insert("basis".into(), json!("quantum"));
            params.insert("z_prime".into(), param_json(zp));
            coproduct_quantum(j1, j2, z, zp).map_err(core(&params))?
        }
    };
    let mut doc = OutputDocument::new("coproduct", params);
    doc.matrices = Some(triple_matrices("", t.triple(), D));
    Ok(doc)
}

pub fn change_basis(j: HalfInt, z: DeformParam, z_target: DeformParam) -> Result<OutputDocument, CliError> {
    check_spin("j", j)?;
    let mut params = Map::new();
    params.insert("j".into(), spin_json(j));
    params.insert("z".into(), param_json(z));
    params.insert("z_target".into(), param_json(z_target));
    let (source, target, mapped) = (|| {
        let spec = BasisChangeSpec::new(j, z, z_target)?;
        let source = qbases_core::build_irrep(j, z)?;
        let target = qbases_core::build_irrep(j, z_target)?;
        let mapped = map_basis(&source, &spec)?;
        Ok((source, target, mapped))
    })()
    .map_err(core(&params))?;
    let residual = [mapped.x3(), mapped.xplus(), mapped.xminus()]
        .iter()
        .zip([target.x3(), target.xplus(), target.xminus()])
        .map(|(a, b)| max_diff(a, b))
        .fold(0.0, f64::max);
    let mut matrices = triple_matrices("source.", source.triple(), X);
    matrices.extend(triple_matrices("target.", target.triple(), X));
    matrices.extend(triple_matrices("mapped.", mapped.triple(), X));
    let mut doc = OutputDocument::new("change-basis", params);
    doc.matrices = Some(matrices);
    doc.residual = Some(residual);
    Ok(doc)
}

pub fn verify(
    checks: &str,
    grid_arg: &str,
    tol_scale: f64,
    jobs: Option<usize>,
    timings: bool,
) -> Result<OutputDocument, CliError> {
    let selection = CheckName::parse_selection(checks).map_err(|e| CliError::Usage(e.to_string()))?;
    let grid = if grid_arg == "default" {
        Grid::default()
    } else {
        let text = std::fs::read_to_string(grid_arg)
            .map_err(|e| CliError::Usage(format!("cannot read grid file {grid_arg}: {e}")))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid grid file {grid_arg}: {e}")))?
    };
    if !(tol_scale.is_finite() && tol_scale > 0.0) {
        return Err(CliError::Usage(format!("--tol-scale must be a positive number, got {tol_scale}")));
    }
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let mut params = Map::new();
    params.insert("checks".into(), json!(selection.iter().map(|c| c.as_str()).collect::<Vec<_>>()));
    params.insert("grid".into(), json!(grid_arg));
    params.insert("tol_scale".into(), json!(tol_scale));
    let opts = SuiteOptions { tol_scale, parallel: jobs != Some(1), timings };
    let run = || run_suite(&grid, &selection, &opts);
    let reports = match jobs {
        Some(n) if n > 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))?
            .install(run),
        _ => run(),
    }
    .map_err(core(&params))?;
    let passed = reports.iter().all(|r| r.passed);
    let mut doc = OutputDocument::new("verify", params);
    doc.reports = Some(reports);
    doc.passed = Some(passed);
    Ok(doc)
}
