//! Complex Gamma via Stirling's series with upward shift and reflection.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::{cabs, near_integer, PrecisionConfig};
use crate::specfun::bernoulli::bernoulli_even;

/// Gamma function at working precision.
pub fn gamma(z: &Complex, pc: &PrecisionConfig) -> Result<Complex> {
    let bits = pc.bits();
    let z = Complex::with_val(bits, z);
    if let Some(k) = near_integer(&z, &pc.tol_half()) {
        if k <= 0 {
            return Err(Error::PoleAtNonpositiveInteger(k));
        }
    }
    if *z.real() < 0.5 {
        // reflection: pi / (sin(pi z) Gamma(1 - z))
        let pi = pc.pi();
        let one_minus = Complex::with_val(bits, 1 - &z);
        let g = gamma(&one_minus, pc)?;
        let s = Complex::with_val(bits, &z * &pi).sin();
        let den = Complex::with_val(bits, &s * &g);
        return Ok(Complex::with_val(bits, &pi / &den));
    }
    let (lg, prod) = stirling_shifted(&z, pc)?;
    Ok(Complex::with_val(bits, lg.exp() / &prod))
}

/// Real Gamma, rejecting poles. Goes through the complex routine so both
/// share one code path.
pub fn gamma_real(x: &Float, pc: &PrecisionConfig) -> Result<Float> {
    let z = pc.complex((x, 0));
    Ok(gamma(&z, pc)?.real().clone())
}

/// psi(n) = H_{n-1} - gamma for integer n >= 1.
pub fn digamma_positive_integer(n: u64, pc: &PrecisionConfig) -> Float {
    let mut h = pc.float(0);
    for k in 1..n {
        h += Float::with_val(pc.bits(), 1) / k;
    }
    h - pc.euler_gamma()
}

// Returns (log Gamma(z + m), z (z+1) ... (z+m-1)), with m picked so the
// Stirling series reaches working precision.
fn stirling_shifted(z: &Complex, pc: &PrecisionConfig) -> Result<(Complex, Complex)> {
    let bits = pc.bits();
    let r0 = 0.12 * bits as f64 + 5.0;
    let mut w = z.clone();
    let mut prod = Complex::with_val(bits, 1);
    let mut guard = 0usize;
    while cabs(&w).to_f64() < r0 {
        prod *= &w;
        w += 1;
        guard += 1;
        if guard > 100_000 {
            return Err(Error::NonConvergence(guard));
        }
    }
    let half = Float::with_val(bits, 0.5);
    let lw = w.clone().ln();
    let mut s = Complex::with_val(bits, &w - &half) * &lw;
    s -= &w;
    s += pc.ln2pi() / 2u32;
    let eps = pc.eps(8);
    let w2 = Complex::with_val(bits, &w * &w);
    let mut wpow = w.clone(); // w^{2k-1}
    let max_k = bits as usize;
    let bern = bernoulli_even(max_k);
    let mut small = 0;
    for k in 1..=max_k {
        let b = Float::with_val(bits, &bern[k]);
        let den = (2 * k * (2 * k - 1)) as u64;
        let c = b / den;
        let term = Complex::with_val(bits, &c / &wpow);
        let mag = cabs(&term);
        s += &term;
        if mag < eps {
            small += 1;
            if small >= 2 {
                return Ok((s, prod));
            }
        } else {
            small = 0;
        }
        wpow *= &w2;
    }
    Err(Error::NonConvergence(max_k))
}
