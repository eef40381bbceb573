//! Gauss-Legendre quadrature at arbitrary precision, fixed and adaptive.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::cabs;

type Rule = Arc<Vec<(Float, Float)>>;

static RULES: Mutex<Option<HashMap<(usize, u32), Rule>>> = Mutex::new(None);

/// Nodes and weights of the `n`-point rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize, bits: u32) -> Rule {
    let mut guard = RULES.lock().unwrap_or_else(|e| e.into_inner());
    let map = guard.get_or_insert_with(HashMap::new);
    map.entry((n, bits)).or_insert_with(|| Arc::new(build_rule(n, bits))).clone()
}

fn build_rule(n: usize, bits: u32) -> Vec<(Float, Float)> {
    let wbits = bits + 32;
    let mut out = Vec::with_capacity(n);
    let tol = Float::with_val(wbits, Float::i_exp(1, -(bits as i32) - 8));
    for i in 0..n {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(wbits, guess);
        let mut dp = Float::with_val(wbits, 1);
        for _ in 0..100 {
            let (p, d) = legendre(n, &x);
            dp = d;
            let dx = Float::with_val(wbits, &p / &dp);
            x -= &dx;
            if dx.abs() < tol {
                let (_, d) = legendre(n, &x);
                dp = d;
                break;
            }
        }
        let one_m = Float::with_val(wbits, 1 - Float::with_val(wbits, &x * &x));
        let w = Float::with_val(wbits, 2) / (one_m * Float::with_val(wbits, &dp * &dp));
        out.push((Float::with_val(bits, &x), Float::with_val(bits, &w)));
    }
    out
}

// P_n(x) and P_n'(x) by the three-term recurrence
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let a = Float::with_val(prec, x * &p1) * (2 * k - 1) as u32;
        let b = Float::with_val(prec, &p0 * (k - 1) as u32);
        let p2 = (a - b) / k as u32;
        p0 = p1;
        p1 = p2;
    }
    let num = Float::with_val(prec, x * &p1) - &p0;
    let den = Float::with_val(prec, x * x) - 1u32;
    let d = num * n as u32 / den;
    (p1, d)
}

/// One fixed rule on `[a, b]`.
pub fn gl_panel<F>(f: &mut F, a: &Float, b: &Float, rule: &[(Float, Float)]) -> Result<Complex>
where
    F: FnMut(&Float) -> Result<Complex>,
{
    let prec = a.prec();
    let half = Float::with_val(prec, b - a) / 2u32;
    let mid = Float::with_val(prec, a + b) / 2u32;
    let mut acc = Complex::with_val(prec, 0);
    for (x, w) in rule {
        let t = Float::with_val(prec, &half * x) + &mid;
        let v = f(&t)?;
        acc += v * w;
    }
    Ok(acc * half)
}

/// Adaptive bisection on `[a, b]` comparing one panel against its two
/// halves. Returns the integral and the summed error estimate; fails once
/// `budget` panels have been spent.
pub fn adaptive<F>(f: &mut F, a: &Float, b: &Float, tol: &Float, rule: &[(Float, Float)], budget: &mut usize) -> Result<(Complex, Float)>
where
    F: FnMut(&Float) -> Result<Complex>,
{
    let whole = gl_panel(f, a, b, rule)?;
    adapt_rec(f, a, b, whole, tol, rule, budget, 0)
}

#[allow(clippy::too_many_arguments)]
fn adapt_rec<F>(
    f: &mut F,
    a: &Float,
    b: &Float,
    whole: Complex,
    tol: &Float,
    rule: &[(Float, Float)],
    budget: &mut usize,
    depth: usize,
) -> Result<(Complex, Float)>
where
    F: FnMut(&Float) -> Result<Complex>,
{
    if *budget == 0 {
        return Err(Error::QuadratureFailure("panel budget exhausted".into()));
    }
    *budget -= 1;
    let prec = a.prec();
    let mid = Float::with_val(prec, a + b) / 2u32;
    let left = gl_panel(f, a, &mid, rule)?;
    let right = gl_panel(f, &mid, b, rule)?;
    let both = Complex::with_val(prec, &left + &right);
    let err = cabs(&Complex::with_val(prec, &both - &whole));
    if err <= *tol || depth > 60 {
        if depth > 60 {
            return Err(Error::QuadratureFailure("bisection depth exceeded".into()));
        }
        return Ok((both, err));
    }
    let half_tol = Float::with_val(prec, tol / 2u32);
    let (l, el) = adapt_rec(f, a, &mid, left, &half_tol, rule, budget, depth + 1)?;
    let (r, er) = adapt_rec(f, &mid, b, right, &half_tol, rule, budget, depth + 1)?;
    Ok((l + r, el + er))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::PrecisionConfig;
    use rug::ops::Pow;

    #[test]
    fn weights_sum_to_two() {
        let pc = PrecisionConfig::default();
        let rule = gauss_legendre(20, pc.bits());
        let s: Float = rule.iter().fold(pc.float(0), |acc, (_, w)| acc + w);
        assert!(Float::with_val(pc.bits(), &s - 2u32).abs() < pc.eps(-4));
    }

    #[test]
    fn exact_for_polynomials() {
        let pc = PrecisionConfig::default();
        let rule = gauss_legendre(10, pc.bits());
        // int_0^2 x^19 dx = 2^20 / 20
        let mut f = |x: &Float| Ok(pc.complex((Float::with_val(pc.bits(), x.clone().pow(19u32)), 0)));
        let v = gl_panel(&mut f, &pc.float(0), &pc.float(2), &rule).unwrap();
        let want = pc.float(1u64 << 20) / 20u32;
        assert!(Float::with_val(pc.bits(), v.real() - &want).abs() < pc.eps(-8));
    }

    #[test]
    fn adaptive_exponential() {
        let pc = PrecisionConfig::default();
        let rule = gauss_legendre(30, pc.bits());
        let mut f = |x: &Float| Ok(pc.complex((x.clone().exp(), 0)));
        let mut budget = 1000;
        let (v, _) = adaptive(&mut f, &pc.float(0), &pc.float(10), &pc.eps(0), &rule, &mut budget).unwrap();
        let want = pc.float(10).exp() - 1u32;
        let rel = (Float::with_val(pc.bits(), v.real() - &want) / &want).abs();
        assert!(rel < pc.eps(-6));
    }
}
