//! Riemann zeta by Euler-Maclaurin, with the functional equation on the left
//! half-plane.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::{cabs, cpow, PrecisionConfig};
use crate::specfun::bernoulli::bernoulli_even;
use crate::specfun::gamma::gamma;

/// `sum_{k >= n} k^{-s}` continued to all `s != 1`, with its `s`-derivative.
///
/// Terms `n..m` are summed directly and Euler-Maclaurin takes over at `m`,
/// which is pushed past `|s|` so the asymptotic series reaches working
/// precision.
pub fn hurwitz_tail(s: &Complex, n: u64, pc: &PrecisionConfig) -> Result<(Complex, Complex)> {
    assert!(n >= 1, "tail must start at 1 or later");
    let bits = pc.bits();
    let s = Complex::with_val(bits, s);
    let sm1 = Complex::with_val(bits, &s - 1);
    if cabs(&sm1) < pc.tol_half() {
        return Err(Error::PoleAtOne);
    }
    let sabs = cabs(&s).to_f64();
    let m = n.max((0.5 * pc.digits as f64 + sabs + 10.0).ceil() as u64);
    if let Some(stop) = direct_cutoff(s.real().to_f64(), n, pc.digits) {
        if stop <= m {
            return Ok(direct_sum(&s, n, stop, bits));
        }
    }

    let mut v = Complex::with_val(bits, 0);
    let mut dv = Complex::with_val(bits, 0);
    for k in n..m {
        let lk = Float::with_val(bits, k).ln();
        let t = (-Complex::with_val(bits, &s * &lk)).exp();
        dv -= Complex::with_val(bits, &t * &lk);
        v += t;
    }

    let ln_m = Float::with_val(bits, m).ln();
    let m_s = (-Complex::with_val(bits, &s * &ln_m)).exp(); // m^{-s}
    let m_f = Float::with_val(bits, m);

    // m^{1-s}/(s-1)
    let a = Complex::with_val(bits, &m_s * &m_f) / &sm1;
    let da = (-Complex::with_val(bits, &a * &ln_m)) - Complex::with_val(bits, &a / &sm1);
    v += &a;
    dv += da;
    // m^{-s}/2
    let b = Complex::with_val(bits, &m_s / 2u32);
    dv -= Complex::with_val(bits, &b * &ln_m);
    v += b;

    let eps = Float::with_val(bits, cabs(&m_s) * pc.eps(8));
    let max_k = (4 * pc.digits as usize).max(64);
    let bern = bernoulli_even(max_k);
    // Pochhammer (s)_{2k-1} as a jet
    let mut p = s.clone();
    let mut dp = Complex::with_val(bits, 1);
    let m2 = Float::with_val(bits, &m_f * &m_f);
    let mut mpow = Float::with_val(bits, 1) / &m_f; // m^{1-2k}
    let mut fact = Float::with_val(bits, 2); // (2k)!
    let mut small = 0;
    for k in 1..=max_k {
        let c = Float::with_val(bits, &bern[k]) / &fact;
        let base = Complex::with_val(bits, &m_s * &mpow) * &c; // c m^{-s-2k+1}
        let term = Complex::with_val(bits, &base * &p);
        let dterm = Complex::with_val(bits, &base * &dp) - Complex::with_val(bits, &term * &ln_m);
        let mag = cabs(&term);
        v += &term;
        dv += &dterm;
        if mag < eps && cabs(&dterm) < eps {
            small += 1;
            if small >= 2 {
                return Ok((v, dv));
            }
        } else {
            small = 0;
        }
        // (s)_{2k+1} = (s)_{2k-1} (s+2k-1)(s+2k)
        let f1 = Complex::with_val(bits, &s + (2 * k - 1) as u64);
        let f2 = Complex::with_val(bits, &s + (2 * k) as u64);
        let q = Complex::with_val(bits, &f1 * &f2);
        let dq = Complex::with_val(bits, &f1 + &f2);
        dp = Complex::with_val(bits, &dp * &q) + Complex::with_val(bits, &p * &dq);
        p *= &q;
        mpow /= &m2;
        fact *= ((2 * k + 1) * (2 * k + 2)) as u64;
    }
    Err(Error::NonConvergence(max_k))
}

// For Re(s) well above 1 the plain sum is often shorter than the
// Euler-Maclaurin head. Returns the last index needed, if that is finite.
fn direct_cutoff(sigma: f64, n: u64, digits: u32) -> Option<u64> {
    if sigma < 2.0 {
        return None;
    }
    let target = -(digits as f64 + 8.0) * std::f64::consts::LN_10;
    let nf = n as f64;
    // tail past M relative to the first term: (M/n)^{-sigma} M / (sigma - 1)
    let bound = |m: f64| -sigma * (m / nf).ln() + m.ln() - (sigma - 1.0).ln();
    let mut m = nf + 1.0;
    while bound(m) > target {
        m *= 1.25;
        if m > 1e7 {
            return None;
        }
    }
    Some(m.ceil() as u64)
}

fn direct_sum(s: &Complex, n: u64, stop: u64, bits: u32) -> (Complex, Complex) {
    let mut v = Complex::with_val(bits, 0);
    let mut dv = Complex::with_val(bits, 0);
    for k in n..=stop {
        let lk = Float::with_val(bits, k).ln();
        let t = (-Complex::with_val(bits, s * &lk)).exp();
        dv -= Complex::with_val(bits, &t * &lk);
        v += t;
    }
    (v, dv)
}

/// Riemann zeta at working precision.
pub fn riemann_zeta(s: &Complex, pc: &PrecisionConfig) -> Result<Complex> {
    let bits = pc.bits();
    let sm1 = Complex::with_val(bits, s - 1);
    if cabs(&sm1) < pc.tol_half() {
        return Err(Error::PoleAtOne);
    }
    if *s.real() < 0 {
        // 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
        let pi = pc.pi();
        let one_minus = Complex::with_val(bits, 1 - s);
        let z1 = hurwitz_tail(&one_minus, 1, pc)?.0;
        let g = gamma(&one_minus, pc)?;
        let two_s = cpow(&pc.complex((2, 0)), s);
        let pi_s = cpow(&pc.complex((&pi, 0)), &sm1);
        let sn = (Complex::with_val(bits, s * &pi) / 2u32).sin();
        let mut out = two_s * pi_s;
        out *= sn;
        out *= g;
        out *= z1;
        return Ok(out);
    }
    Ok(hurwitz_tail(s, 1, pc)?.0)
}

/// `(zeta(s), zeta'(s))` straight from Euler-Maclaurin.
pub fn riemann_zeta_jet(s: &Complex, pc: &PrecisionConfig) -> Result<(Complex, Complex)> {
    hurwitz_tail(s, 1, pc)
}

pub fn riemann_zeta_real(x: &Float, pc: &PrecisionConfig) -> Result<Float> {
    let z = pc.complex((x, 0));
    Ok(riemann_zeta(&z, pc)?.real().clone())
}
