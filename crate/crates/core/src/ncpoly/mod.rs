//! Noncommutative polynomials in `X3, X+, X-`, the symmetrizer, and their
//! evaluation on matrix triples.

mod series;

pub use series::{series_order_fit, series_residual, SeriesCase};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generators::{Generator, GeneratorTriple};
use crate::linalg::{c, CMatrix};

/// Longest word [`symmetrize`] accepts (`8! = 40320` terms).
pub const MAX_SYMMETRIZE_LEN: usize = 8;

/// An ordered product of generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NcWord(Vec<Generator>);

impl NcWord {
    pub fn new(letters: impl Into<Vec<Generator>>) -> Self {
        NcWord(letters.into())
    }

    pub fn empty() -> Self {
        NcWord(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &NcWord) -> NcWord {
        NcWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for NcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for g in &self.0 {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A finite sum of words with complex coefficients. Zero coefficients are
/// never stored, so equal polynomials compare equal.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NcPolynomial {
    terms: BTreeMap<NcWord, Complex64>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(c(1.0), NcWord::empty())
    }

    pub fn monomial(coeff: Complex64, word: NcWord) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn word(letters: impl Into<Vec<Generator>>) -> Self {
        Self::monomial(c(1.0), NcWord::new(letters))
    }

    pub fn generator(g: Generator) -> Self {
        Self::word(vec![g])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NcWord, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &NcWord) -> Complex64 {
        self.terms.get(word).copied().unwrap_or(c(0.0))
    }

    /// Highest word length present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(NcWord::len).max()
    }

    pub fn add_term(&mut self, word: NcWord, coeff: Complex64) {
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                if coeff != c(0.0) {
                    e.insert(coeff);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == c(0.0) {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: Complex64) -> Self {
        if k == c(0.0) {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * k);
        }
        out
    }

    /// Extend [`symmetrize`] linearly.
    pub fn symmetrized(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out = out + symmetrize(w)?.scale(*v);
        }
        Ok(out)
    }
}

impl Add for NcPolynomial {
    type Output = NcPolynomial;
    fn add(mut self, rhs: NcPolynomial) -> NcPolynomial {
        for (w, v) in rhs.terms {
            self.add_term(w, v);
        }
        self
    }
}

impl Neg for NcPolynomial {
    type Output = NcPolynomial;
    fn neg(self) -> NcPolynomial {
        self.scale(c(-1.0))
    }
}

impl Sub for NcPolynomial {
    type Output = NcPolynomial;
    fn sub(self, rhs: NcPolynomial) -> NcPolynomial {
        self + (-rhs)
    }
}

impl Mul for &NcPolynomial {
    type Output = NcPolynomial;
    fn mul(self, rhs: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for ((a, x), (b, y)) in self.terms.iter().cartesian_product(rhs.terms.iter()) {
            out.add_term(a.concat(b), x * y);
        }
        out
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, v)| format!("({v}){w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `S(O1 … On) = (1/n!) Σ_{σ ∈ S_n} O_{σ(1)} … O_{σ(n)}`.
///
/// Words with repeated letters merge, so the coefficients always sum to 1.
pub fn symmetrize(word: &NcWord) -> Result<NcPolynomial> {
    let n = word.len();
    if n > MAX_SYMMETRIZE_LEN {
        return Err(Error::WordTooLong(n));
    }
    if n == 0 {
        return Ok(NcPolynomial::one());
    }
    let weight = c(1.0 / (1..=n).product::<usize>() as f64);
    let mut out = NcPolynomial::zero();
    for perm in word.letters().iter().copied().permutations(n) {
        out.add_term(NcWord(perm), weight);
    }
    Ok(out)
}

/// Realize `p` on a triple: words become ordered matrix products, the empty
/// word the identity.
pub fn evaluate(p: &NcPolynomial, rep: &GeneratorTriple) -> CMatrix {
    let n = rep.dim();
    let mut out = CMatrix::zeros(n, n);
    for (w, v) in p.terms() {
        let prod = w.letters().iter().fold(rep.identity(), |acc, &g| acc * rep.get(g));
        out += prod * *v;
    }
    out
}
