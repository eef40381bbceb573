//! Numerical check of the Cahen-Mellin integral for `e^{-x}`.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::{cabs, cpow, PrecisionConfig};
use crate::specfun::gamma::gamma;
use crate::specfun::quad::{adaptive, gauss_legendre};

/// Integrates `(1/2 pi i) int_{c-iT}^{c+iT} Gamma(s) x^{-s} ds` and returns
/// `|result - e^{-x}|`.
pub fn cahen_mellin_check(x: &Complex, c: &Float, t_max: &Float, pc: &PrecisionConfig) -> Result<Float> {
    let bits = pc.bits();
    if *x.real() <= 0 || *c <= 0 {
        return Err(Error::DomainError("need Re(x) > 0 and c > 0".into()));
    }
    if *t_max < 50 {
        return Err(Error::DomainError("truncation height below 50".into()));
    }
    let rule = gauss_legendre(24, bits);
    let tol = pc.pow10_neg((pc.digits as f64 / 2.0).max(24.0));
    let mut f = |t: &Float| -> Result<Complex> {
        let s = Complex::with_val(bits, (c, t));
        let g = gamma(&s, pc)?;
        let neg = Complex::with_val(bits, -&s);
        Ok(g * cpow(x, &neg))
    };
    // coarse panels, each refined adaptively
    let width = 4.0;
    let tm = t_max.to_f64();
    let panels = (2.0 * tm / width).ceil() as usize;
    let mut total = pc.complex(0);
    let mut budget = 200 * panels;
    let step = Float::with_val(bits, t_max * 2u32) / panels as u32;
    let per = Float::with_val(bits, &tol / panels as u32);
    for i in 0..panels {
        let a = Float::with_val(bits, &step * i as u32) - t_max;
        let b = if i + 1 == panels { t_max.clone() } else { Float::with_val(bits, &a + &step) };
        let (v, _) = adaptive(&mut f, &a, &b, &per, &rule, &mut budget)?;
        total += v;
    }
    let two_pi = pc.pi() * 2u32;
    total /= &two_pi;
    let want = Complex::with_val(bits, -x).exp();
    Ok(cabs(&Complex::with_val(bits, &total - &want)))
}
