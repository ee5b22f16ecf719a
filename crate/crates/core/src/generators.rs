use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{commutator, identity, max_norm, CMatrix};

/// One of the three basic elements `X3`, `X+`, `X-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    Three,
    Plus,
    Minus,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::Three, Generator::Plus, Generator::Minus];

    /// The ladder operator of opposite weight; `X3` maps to itself.
    pub fn opposite(self) -> Generator {
        match self {
            Generator::Three => Generator::Three,
            Generator::Plus => Generator::Minus,
            Generator::Minus => Generator::Plus,
        }
    }

    pub fn weight(self) -> i32 {
        match self {
            Generator::Three => 0,
            Generator::Plus => 1,
            Generator::Minus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Three => "X3",
            Generator::Plus => "X+",
            Generator::Minus => "X-",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Matrices `(X3, X+, X-)` acting on a common space.
///
/// Not necessarily irreducible: coproduct images are triples as well, which is
/// what lets coproducts nest.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorTriple {
    x3: CMatrix,
    xplus: CMatrix,
    xminus: CMatrix,
}

impl GeneratorTriple {
    pub fn new(x3: CMatrix, xplus: CMatrix, xminus: CMatrix) -> Result<Self> {
        let n = x3.nrows();
        for (name, m) in [("X3", &x3), ("X+", &xplus), ("X-", &xminus)] {
            if m.shape() != (n, n) {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, expected {n}x{n}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(GeneratorTriple { x3, xplus, xminus })
    }

    pub(crate) fn from_parts(x3: CMatrix, xplus: CMatrix, xminus: CMatrix) -> Self {
        debug_assert!(x3.is_square() && x3.shape() == xplus.shape() && x3.shape() == xminus.shape());
        GeneratorTriple { x3, xplus, xminus }
    }

    pub fn dim(&self) -> usize {
        self.x3.nrows()
    }

    pub fn x3(&self) -> &CMatrix {
        &self.x3
    }

    pub fn xplus(&self) -> &CMatrix {
        &self.xplus
    }

    pub fn xminus(&self) -> &CMatrix {
        &self.xminus
    }

    pub fn get(&self, g: Generator) -> &CMatrix {
        match g {
            Generator::Three => &self.x3,
            Generator::Plus => &self.xplus,
            Generator::Minus => &self.xminus,
        }
    }

    pub fn identity(&self) -> CMatrix {
        identity(self.dim())
    }

    pub fn into_parts(self) -> (CMatrix, CMatrix, CMatrix) {
        (self.x3, self.xplus, self.xminus)
    }

    /// `max(|[X3, X+] - X+|, |[X3, X-] + X-|)`.
    pub fn grading_defect(&self) -> f64 {
        let up = commutator(&self.x3, &self.xplus) - &self.xplus;
        let down = commutator(&self.x3, &self.xminus) + &self.xminus;
        max_norm(&up).max(max_norm(&down))
    }

    /// Entrywise maximum distance over all three generators.
    pub fn max_diff(&self, other: &GeneratorTriple) -> f64 {
        Generator::ALL
            .iter()
            .map(|&g| crate::linalg::max_diff(self.get(g), other.get(g)))
            .fold(0.0, f64::max)
    }

    /// `P M P^T` applied to each generator.
    pub fn conjugate_by_permutation(&self, p: &CMatrix) -> GeneratorTriple {
        let pt = p.transpose();
        let f = |m: &CMatrix| p * m * &pt;
        GeneratorTriple::from_parts(f(&self.x3), f(&self.xplus), f(&self.xminus))
    }
}
