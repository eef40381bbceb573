//! Polylogarithm: direct series inside the unit disc, and the expansion of
//! `Li_s(e^mu)` around `mu = 0`.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::{cabs, cpow, near_integer, PrecisionConfig};
use crate::specfun::gamma::gamma;
use crate::specfun::zeta::riemann_zeta;

/// `Li_s(z) = sum_{k>=1} z^k / k^s` for `|z| < 1`.
pub fn polylog(s: &Complex, z: &Complex, pc: &PrecisionConfig) -> Result<Complex> {
    let bits = pc.bits();
    if z.is_zero() {
        return Ok(pc.complex(0));
    }
    if cabs(z) >= 1 {
        return Err(Error::DomainError("|z| >= 1 outside the direct series".into()));
    }
    let eps = pc.eps(2);
    let mut zk = Complex::with_val(bits, z);
    let mut sum = Complex::with_val(bits, 0);
    let mut prev = pc.float(f64::INFINITY);
    let mut small = 0;
    for k in 1..=pc.series_cap as u64 {
        let lk = Float::with_val(bits, k).ln();
        let ks = (-Complex::with_val(bits, s * &lk)).exp();
        let term = Complex::with_val(bits, &zk * &ks);
        let mag = cabs(&term);
        sum += &term;
        // only count tiny terms once past the peak
        if mag < eps && mag <= prev {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        prev = mag;
        zk *= z;
    }
    Err(Error::NonConvergence(pc.series_cap))
}

/// `Gamma(1-s) (-mu)^{s-1} + sum_{k=0}^{K} zeta(s-k) mu^k / k!`, which equals
/// `Li_s(e^mu)` for `|mu| < 2 pi`. The sum stops early once three
/// consecutive terms drop below `10^(-digits-4)`.
pub fn polylog_via_identity(s: &Complex, mu: &Complex, k_max: usize, pc: &PrecisionConfig) -> Result<Complex> {
    let bits = pc.bits();
    let tol = pc.tol_half();
    if let Some(k) = near_integer(s, &tol) {
        if k >= 1 {
            return Err(Error::IntegerS(k));
        }
    }
    let two_pi = pc.pi() * 2u32;
    if cabs(mu) >= two_pi {
        return Err(Error::DomainError("|mu| >= 2 pi".into()));
    }
    let sm1 = Complex::with_val(bits, s - 1);
    let singular = if mu.is_zero() {
        if *s.real() <= 1 {
            return Err(Error::DomainError("mu = 0 with Re(s) <= 1".into()));
        }
        pc.complex(0)
    } else {
        if mu.imag().clone().abs() <= tol && *mu.real() > 0 {
            return Err(Error::BranchError("(-mu)^(s-1) with mu on the positive real axis".into()));
        }
        let one_minus = Complex::with_val(bits, 1 - s);
        let g = gamma(&one_minus, pc)?;
        let neg_mu = Complex::with_val(bits, -mu);
        g * cpow(&neg_mu, &sm1)
    };
    let eps = pc.eps(4);
    let mut sum = singular;
    let mut mu_k = pc.complex(1);
    let mut small = 0;
    for k in 0..=k_max {
        let sk = Complex::with_val(bits, s - k as u32);
        let z = riemann_zeta(&sk, pc)?;
        let term = Complex::with_val(bits, &z * &mu_k);
        let mag = cabs(&term);
        sum += term;
        if mag < eps {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        mu_k *= mu;
        mu_k /= (k + 1) as u32;
    }
    Ok(sum)
}
