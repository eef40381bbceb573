//! Working precision and the few complex helpers every module shares.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Complex, Float};

use crate::error::{Error, Result};

/// Guard bits added on top of the requested decimal digits.
const GUARD_BITS: u32 = 32;

/// Working precision, threaded explicitly through every evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionConfig {
    /// Working decimal digits.
    pub digits: u32,
    /// Hard cap on the number of terms in any single series.
    pub series_cap: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig { digits: 64, series_cap: 1_000_000 }
    }
}

impl PrecisionConfig {
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_cap(digits, 1_000_000)
    }

    pub fn with_cap(digits: u32, series_cap: usize) -> Result<Self> {
        if digits < 16 {
            return Err(Error::InvalidPrecision(format!("digits = {digits} < 16")));
        }
        if series_cap < 1000 {
            return Err(Error::InvalidPrecision(format!("series_cap = {series_cap} < 1000")));
        }
        Ok(PrecisionConfig { digits, series_cap })
    }

    /// MPFR precision in bits.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    pub fn complex<T>(&self, v: T) -> Complex
    where
        Complex: Assign<T>,
    {
        Complex::with_val(self.bits(), v)
    }

    /// `10^(-e)` at working precision.
    pub fn pow10_neg(&self, e: f64) -> Float {
        let ten = self.float(10);
        let ex = self.float(-e);
        ten.pow(&ex)
    }

    /// `10^(-digits - extra)`.
    pub fn eps(&self, extra: i32) -> Float {
        self.pow10_neg(self.digits as f64 + extra as f64)
    }

    /// `10^(-digits/2)`, the default root and pole tolerance.
    pub fn tol_half(&self) -> Float {
        self.pow10_neg(self.digits as f64 / 2.0)
    }

    pub fn pi(&self) -> Float {
        self.float(Constant::Pi)
    }

    pub fn euler_gamma(&self) -> Float {
        self.float(Constant::Euler)
    }

    pub fn ln2pi(&self) -> Float {
        let tp = self.pi() * 2u32;
        tp.ln()
    }

    /// Same digits, more of them.
    pub fn widened(&self, extra_digits: u32) -> PrecisionConfig {
        PrecisionConfig { digits: self.digits + extra_digits, series_cap: self.series_cap }
    }
}

/// |z| as a real.
pub fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Principal logarithm, `-pi < arg <= pi`. A signed zero imaginary part is
/// treated as +0 so negative reals land on `+i pi`.
pub fn cln(z: &Complex) -> Complex {
    let mut w = z.clone();
    if w.imag().is_zero() {
        w.mut_imag().abs_mut();
    }
    w.ln()
}

/// Principal power `z^w = exp(w log z)`; `0^w = 0` for `Re w > 0`.
pub fn cpow(z: &Complex, w: &Complex) -> Complex {
    if z.real().is_zero() && z.imag().is_zero() {
        return Complex::with_val(z.prec(), 0);
    }
    let l = cln(z);
    let e = Complex::with_val(z.prec(), &l * w);
    e.exp()
}

/// Principal `z^p` for a real exponent.
pub fn cpow_real(z: &Complex, p: &Float) -> Complex {
    let w = Complex::with_val(z.prec(), (p, 0));
    cpow(z, &w)
}

/// True when `z` is within `tol` of a real integer; returns that integer.
pub fn near_integer(z: &Complex, tol: &Float) -> Option<i64> {
    if z.imag().clone().abs() > *tol {
        return None;
    }
    let r = z.real().clone().round();
    let diff = Float::with_val(z.prec().0, z.real() - &r).abs();
    if diff <= *tol {
        r.to_f64().is_finite().then(|| r.to_f64() as i64)
    } else {
        None
    }
}

/// Decimal string with `sig` significant digits, for reports.
pub fn fmt_float(x: &Float, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(sig))
}

pub fn fmt_complex(z: &Complex, sig: usize) -> String {
    format!("{} + {}i", fmt_float(z.real(), sig), fmt_float(z.imag(), sig))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_precision() {
        assert!(PrecisionConfig::new(8).is_err());
        assert!(PrecisionConfig::with_cap(32, 10).is_err());
        assert_eq!(PrecisionConfig::default().digits, 64);
    }

    #[test]
    fn bits_cover_digits() {
        let pc = PrecisionConfig::default();
        assert!(pc.bits() >= 213 + 32);
    }

    #[test]
    fn log_branch_on_negative_axis() {
        let pc = PrecisionConfig::default();
        let mut z = pc.complex((-2, 0));
        *z.mut_imag() = -z.imag().clone();
        let l = cln(&z);
        assert!((l.imag().to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn real_power() {
        let pc = PrecisionConfig::default();
        let z = pc.complex((4, 0));
        let p = pc.float(0.5);
        let r = cpow_real(&z, &p);
        assert!((r.real().to_f64() - 2.0).abs() < 1e-15);
        assert!(r.imag().to_f64().abs() < 1e-30);
    }

    #[test]
    fn integer_detection() {
        let pc = PrecisionConfig::default();
        let tol = pc.tol_half();
        assert_eq!(near_integer(&pc.complex((-3, 0)), &tol), Some(-3));
        assert_eq!(near_integer(&pc.complex((-2.5, 0)), &tol), None);
    }
}
