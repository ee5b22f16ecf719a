//! Deformation parameters, exact half-integers and the q-number kernels.
//!
//! The q-number used throughout is `[n]_q = sinh(z n) / z`, an entire function
//! of `z` which reduces to `n` at the Lie point `z = 0`. Every ladder
//! coefficient in the crate is built from the three kernels here.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tolerances;

/// `|z n|` below which `sinh(z n) / z` is evaluated by its Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-3;

/// Real `|z| * (|a| + |b|)` above which products of hyperbolic sines are
/// assembled in log space.
const LOG_SCALE_THRESHOLD: f64 = 600.0;

/// A finite complex deformation parameter (`z = log q` or `z' = log q'`).
///
/// The crystal limit `z' -> infinity` is never stored here; it is a separate
/// [`crate::BasisKind::Crystal`].
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct DeformParam(Complex64);

impl DeformParam {
    pub const ZERO: DeformParam = DeformParam(Complex64::new(0.0, 0.0));

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(DeformParam(Complex64::new(re, im)))
        } else {
            Err(Error::NonFinite { re, im })
        }
    }

    /// Real parameter.
    ///
    /// # Panics
    ///
    /// Panics if `x` is not finite.
    pub fn real(x: f64) -> Self {
        Self::new(x, 0.0).expect("finite real deformation parameter")
    }

    /// Purely imaginary parameter. Panics if `y` is not finite.
    pub fn imag(y: f64) -> Self {
        Self::new(0.0, y).expect("finite imaginary deformation parameter")
    }

    pub fn from_complex(c: Complex64) -> Result<Self> {
        Self::new(c.re, c.im)
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.0.re
    }

    #[inline]
    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn is_zero(self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    pub fn is_real(self) -> bool {
        self.0.im == 0.0
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    /// `t * z`, used by the convergence studies.
    pub fn scale(self, t: f64) -> Self {
        DeformParam(self.0 * t)
    }

    /// `q = e^z`.
    pub fn q(self) -> Complex64 {
        self.0.exp()
    }
}

impl std::ops::Neg for DeformParam {
    type Output = DeformParam;

    fn neg(self) -> DeformParam {
        DeformParam(-self.0)
    }
}

impl fmt::Display for DeformParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else if self.0.re == 0.0 {
            write!(f, "{}i", self.0.im)
        } else if self.0.im < 0.0 {
            write!(f, "{}-{}i", self.0.re, -self.0.im)
        } else {
            write!(f, "{}+{}i", self.0.re, self.0.im)
        }
    }
}

impl FromStr for DeformParam {
    type Err = Error;

    /// Accepts `re` or `re,im`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse `{s}` as re[,im]"));
        let mut parts = s.split(',').map(str::trim);
        let re = parts.next().ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?;
        let im = match parts.next() {
            Some(p) => p.parse::<f64>().map_err(|_| bad())?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Self::new(re, im)
    }
}

impl Serialize for DeformParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for DeformParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([f64; 2]),
            Real(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Pair([re, im]) => DeformParam::new(re, im).map_err(serde::de::Error::custom),
            Repr::Real(re) => DeformParam::new(re, 0.0).map_err(serde::de::Error::custom),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// An exact half-integer, stored as twice its value.
///
/// Used for spins `j` (non-negative) and weights `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    /// A spin label; rejects negative values.
    pub fn spin(twice: i32) -> Result<Self> {
        if twice < 0 {
            return Err(Error::InvalidSpin(HalfInt { twice }.to_string()));
        }
        Ok(HalfInt { twice })
    }

    #[inline]
    pub fn twice(self) -> i32 {
        self.twice
    }

    #[inline]
    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// `2j + 1` for a spin.
    pub fn dim(self) -> usize {
        debug_assert!(self.twice >= 0);
        (self.twice + 1) as usize
    }

    /// Weights `j, j-1, ..., -j` in basis order.
    pub fn weights(self) -> impl DoubleEndedIterator<Item = HalfInt> + ExactSizeIterator {
        let j = self.twice;
        (0..self.dim()).map(move |k| HalfInt { twice: j - 2 * k as i32 })
    }

    /// Whether `m` is a weight of the spin-`self` module.
    pub fn has_weight(self, m: HalfInt) -> bool {
        m.twice.abs() <= self.twice && (self.twice - m.twice) % 2 == 0
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + o.twice }
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - o.twice }
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3/2"`, `"1.5"`, `"2"` and negative forms.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidHalfInt(s.to_string());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            let den: i32 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(HalfInt { twice: 2 * num }),
                2 => Ok(HalfInt { twice: num }),
                _ => Err(bad()),
            };
        }
        if let Ok(n) = s.parse::<i32>() {
            return Ok(HalfInt { twice: 2 * n });
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * x;
        if !twice.is_finite() || twice.fract() != 0.0 || twice.abs() > f64::from(i32::MAX) {
            return Err(bad());
        }
        Ok(HalfInt { twice: twice as i32 })
    }
}

/// Serialized with both the text label and the doubled integer.
impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HalfInt", 2)?;
        st.serialize_field("label", &self.to_string())?;
        st.serialize_field("two_j", &self.twice)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Number(f64),
            Full { two_j: i32 },
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Number(x) => x.to_string().parse().map_err(serde::de::Error::custom),
            Repr::Full { two_j } => Ok(HalfInt::from_twice(two_j)),
        }
    }
}

/// `[n]_q = sinh(z n) / z`, equal to `n` at `z = 0`.
///
/// For `|z n| < SERIES_THRESHOLD` the removable singularity is handled by the
/// Taylor series `n (1 + w²/3! + w⁴/5! + w⁶/7! + w⁸/9!)`, `w = z n`.
pub fn q_number(n: f64, z: DeformParam) -> Complex64 {
    let w = z.value() * n;
    if w.norm() < SERIES_THRESHOLD {
        let w2 = w * w;
        let series = 1.0 + w2 / 6.0 * (1.0 + w2 / 20.0 * (1.0 + w2 / 42.0 * (1.0 + w2 / 72.0)));
        series * n
    } else {
        w.sinh() / z.value()
    }
}

/// `[a]_q² - [b]_q²`.
///
/// Evaluated as `[a+b]_q [a-b]_q`, which is exact algebraically and free of
/// the cancellation in the naive difference. For real `z` with large
/// `|z| (|a+b| + |a-b|)` the product is formed in log space so that it only
/// overflows when the result itself does.
pub fn q_number_sq_diff(a: f64, b: f64, z: DeformParam) -> Complex64 {
    let (s, d) = (a + b, a - b);
    if s == 0.0 || d == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.is_real() && z.re().abs() * (s.abs() + d.abs()) > LOG_SCALE_THRESHOLD {
        let x = z.re().abs();
        let log_mag = ln_abs_sinh(x * s) + ln_abs_sinh(x * d) - 2.0 * x.ln();
        let sign = s.signum() * d.signum();
        return Complex64::new(sign * log_mag.exp(), 0.0);
    }
    q_number(s, z) * q_number(d, z)
}

/// `ln |sinh y|` for `y != 0`, without overflow.
fn ln_abs_sinh(y: f64) -> f64 {
    let y = y.abs();
    if y < 1.0 {
        y.sinh().ln()
    } else {
        y - std::f64::consts::LN_2 + (-(-2.0 * y).exp()).ln_1p()
    }
}

/// `[a]_{q'} / [b]_{q'}`.
///
/// For real `z'` the ratio is assembled from exponent differences,
/// `sign · e^{|z'|(|a|-|b|)} (1 - e^{-2|z'||a|}) / (1 - e^{-2|z'||b|})`, so that
/// `|a| < |b|` underflows to zero instead of producing `inf / inf`.
pub fn q_ratio(a: f64, b: f64, zp: DeformParam) -> Result<Complex64> {
    if b == 0.0 {
        return Err(Error::DegenerateDenominator(format!("[0]_q' vanishes at z' = {zp}")));
    }
    if a == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // Real sinh has no zeros off the origin, so this branch needs no check.
    if zp.is_real() && !zp.is_zero() && zp.re().abs() * a.abs().max(b.abs()) > 1.0 {
        let x = zp.re().abs();
        let sign = a.signum() * b.signum();
        let growth = (x * (a.abs() - b.abs())).exp();
        let shape = (-2.0 * x * a.abs()).exp_m1() / (-2.0 * x * b.abs()).exp_m1();
        return Ok(Complex64::new(sign * growth * shape, 0.0));
    }
    let den = q_number(b, zp);
    if is_degenerate(den, b.abs().max(1.0)) {
        return Err(Error::DegenerateDenominator(format!("[{b}]_q' vanishes at z' = {zp}")));
    }
    Ok(q_number(a, zp) / den)
}

/// Whether `x` should be treated as a vanishing denominator, relative to the
/// magnitude `scale` it would have in the undeformed limit.
pub fn is_degenerate(x: Complex64, scale: f64) -> bool {
    let n = x.norm();
    n.is_nan() || n <= tolerances::DEGENERATE * scale
}
