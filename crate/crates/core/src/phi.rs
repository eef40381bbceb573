//! `Phi_f(rho e(Theta)) = sum_n -log(1 - e^{-f(n) x})`, `x = (1 - 2 pi i Theta X)/X`,
//! evaluated directly and through its Mellin expansion
//! `A x^{-1/d} + zeta(0,alpha) log(1/(a_d x)) + W(x)`.
//!
//! `W` is a constant plus a finite list of power terms `C x^p` with real
//! `C` and `p`, so it and its derivatives are cheap once built.

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::mwzeta::{mw_zeta, mw_zeta_deriv_zero, mw_zeta_direct, mw_zeta_residue, mw_zeta_zero, MWZetaContext};
use crate::poly::PolynomialSpec;
use crate::precision::{cabs, cln, cpow_real, fmt_float, PrecisionConfig};
use crate::specfun::gamma::gamma_real;
use crate::specfun::zeta::riemann_zeta_real;

pub const DEFAULT_R: f64 = 0.9;
pub const DEFAULT_L: f64 = 0.5;

/// Derived quantities of one point on the circle `|z| = rho`.
#[derive(Debug, Clone)]
pub struct PhiPoint {
    pub big_x: Float,
    pub theta: Float,
    pub rho: Float,
    pub x: Complex,
    pub delta: Float,
}

impl PhiPoint {
    pub fn new(big_x: &Float, theta: &Float, pc: &PrecisionConfig) -> Self {
        let bits = pc.bits();
        let rho = (-(Float::with_val(bits, 1) / big_x)).exp();
        let x = x_of(big_x, theta, pc);
        let t = Float::with_val(bits, pc.pi() * 2u32) * big_x * theta;
        let delta = Float::with_val(bits, t.square() + 1u32).sqrt().recip();
        PhiPoint { big_x: big_x.clone(), theta: theta.clone(), rho, x, delta }
    }
}

/// `x = 1/X - 2 pi i Theta`.
pub fn x_of(big_x: &Float, theta: &Float, pc: &PrecisionConfig) -> Complex {
    let bits = pc.bits();
    let re = Float::with_val(bits, 1) / big_x;
    let im = -Float::with_val(bits, pc.pi() * 2u32) * theta;
    Complex::with_val(bits, (re, im))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WVariant {
    /// `a_0 = 0`
    W0,
    /// `a_0 != 0`
    W1,
}

#[derive(Debug, Clone)]
pub struct WTerm {
    pub coeff: Float,
    pub exponent: Float,
    pub source: &'static str,
}

/// `W(x) = constant + sum_j coeff_j x^{exponent_j}`.
#[derive(Debug, Clone)]
pub struct WModel {
    pub variant: WVariant,
    pub d: usize,
    pub a0: i64,
    pub ad: i64,
    pub r: f64,
    pub constant: Float,
    pub terms: Vec<WTerm>,
    /// number of terms kept in each series
    pub truncation: Vec<(&'static str, usize)>,
    pub est_error: Float,
    pub zeta0: Float,
    pub zeta0_prime: Float,
    /// `(a_d^{-1/d}/d) Gamma(1/d) zeta(1 + 1/d)`
    pub main_coeff: Float,
    /// largest `|x|` the truncations were sized for
    pub x_abs_max: Float,
}

/// Value of `W` at one point.
#[derive(Debug, Clone)]
pub struct WValue {
    pub variant: WVariant,
    pub value: Complex,
    pub truncation_orders: Vec<(&'static str, usize)>,
    pub est_error: Float,
}

// Appends c_k x^{p0 + k} for k = k0, k0+1, ... until three consecutive terms
// are negligible at |x| = x_abs. Returns the count kept.
fn push_k_series<F>(
    terms: &mut Vec<WTerm>,
    source: &'static str,
    k0: u64,
    p0: &Float,
    x_abs: &Float,
    pc: &PrecisionConfig,
    mut coeff: F,
) -> Result<usize>
where
    F: FnMut(u64) -> Result<Float>,
{
    let bits = pc.bits();
    let eps = pc.eps(4);
    let mut small = 0;
    let mut kept = 0;
    let mut k = k0;
    while small < 3 {
        if k as usize > pc.series_cap {
            return Err(Error::NonConvergentSeries(format!("{source} k-sum past {}", pc.series_cap)));
        }
        let c = coeff(k)?;
        let p = Float::with_val(bits, p0 + k);
        let mag = Float::with_val(bits, c.abs_ref()) * x_abs.clone().pow(&p);
        if mag < eps {
            small += 1;
        } else {
            small = 0;
        }
        if !c.is_zero() {
            terms.push(WTerm { coeff: c, exponent: p, source });
            kept += 1;
        }
        k += 1;
    }
    Ok(kept)
}

/// Builds `W` for `f`; series are cut for `|x| <= x_abs_max`.
pub fn build_w_model(spec: &PolynomialSpec, ctx: &MWZetaContext, x_abs_max: &Float, r: f64, pc: &PrecisionConfig) -> Result<WModel> {
    let bits = pc.bits();
    let d = spec.degree();
    let a0 = spec.a(0);
    let ad = spec.leading();
    if !(r > 0.0) {
        return Err(Error::OutOfRange(format!("R = {r}")));
    }
    let ratio = Float::with_val(bits, a0) / ad;
    if ratio >= 1 {
        return Err(Error::RatioNotLessThanOne(fmt_float(&ratio, 10)));
    }
    let adf = pc.float(ad);
    let a0f = pc.float(a0);
    let inv_d = Float::with_val(bits, 1) / d as u32;
    let zeta0 = mw_zeta_zero(ctx)?;
    let zeta0_prime = mw_zeta_deriv_zero(ctx)?;
    let gamma_1d = gamma_real(&inv_d, pc)?;
    let ad_pow = Float::with_val(bits, adf.ln_ref()) * &inv_d;
    let ad_m1d = (-ad_pow).exp();
    let zeta_1p = riemann_zeta_real(&Float::with_val(bits, &inv_d + 1u32), pc)?;
    let main_coeff = Float::with_val(bits, &ad_m1d * &gamma_1d) * &zeta_1p / d as u32;

    let mut terms = Vec::new();
    let mut truncation = Vec::new();
    let mut constant = zeta0_prime.clone();
    let mut est_error = pc.eps(4) * 3u32;

    // factorials grow alongside; a0^k (-1)^k / k!
    let a0_pow = |k: u64| -> Float {
        let mut v = Float::with_val(bits, 1);
        for i in 1..=k {
            v *= &a0f;
            v /= i as u32;
        }
        if k % 2 == 1 {
            -v
        } else {
            v
        }
    };

    if a0 != 0 {
        // pole of zeta(s + k, alpha) at s = 1/d - k
        let pref = Float::with_val(bits, &ad_m1d * &gamma_1d) / d as u32;
        let p0 = -inv_d.clone();
        let n = push_k_series(&mut terms, "res1", 1, &p0, x_abs_max, pc, |k| {
            let z = riemann_zeta_real(&Float::with_val(bits, Float::with_val(bits, &inv_d + 1u32) - k), pc)?;
            Ok(Float::with_val(bits, &pref * &z) * a0_pow(k))
        })?;
        truncation.push(("res1", n));

        // Gamma poles at s = -k against D(-k)'s alpha-free part
        let n = push_k_series(&mut terms, "res3", 1, &pc.float(0), x_abs_max, pc, |k| {
            let z = riemann_zeta_real(&pc.float(1 - k as i64), pc)?;
            Ok(Float::with_val(bits, &zeta0 * &z) * a0_pow(k))
        })?;
        truncation.push(("res3", n));

        // sum_m (-1)^m/m (a0/ad)^m zeta(m, alpha)
        let eps = pc.eps(4);
        let mut small = 0;
        let mut m = 1u32;
        let mut rp = Float::with_val(bits, 1);
        while small < 3 {
            if m as usize > pc.series_cap {
                return Err(Error::NonConvergentSeries("m-series".into()));
            }
            rp *= &ratio;
            let (z, err) = mw_zeta_direct(&ctx.alphas, &pc.complex(m), 30, pc)?;
            let mut t = Float::with_val(bits, &rp * z.real()) / m;
            if m % 2 == 1 {
                t = -t;
            }
            est_error += Float::with_val(bits, &rp * &err) / m;
            if Float::with_val(bits, t.abs_ref()) < eps {
                small += 1;
            } else {
                small = 0;
            }
            constant += t;
            m += 1;
        }
        truncation.push(("m-series", m as usize - 1));
    }

    // poles of zeta(s + k, alpha) at s = (1 - m)/d - k
    let m_max = (d as f64 * r).floor() as usize;
    let mut kept = 0;
    for m in 2..=m_max.min(ctx.depth) {
        if (m - 1) % d == 0 {
            continue;
        }
        let cm = mw_zeta_residue(ctx, m);
        if cm.is_zero() {
            continue;
        }
        let p = Float::with_val(bits, 1 - m as i64) / d as u32;
        let gp = gamma_real(&p, pc)?;
        let adp = (-Float::with_val(bits, adf.ln_ref()) * &p).exp();
        let pref = Float::with_val(bits, &cm * &gp) * &adp;
        let p0 = -p.clone();
        let shift = Float::with_val(bits, &p + 1u32);
        let n = if a0 == 0 {
            let z = riemann_zeta_real(&shift, pc)?;
            terms.push(WTerm { coeff: pref * z, exponent: p0, source: "res4" });
            1
        } else {
            push_k_series(&mut terms, "res4", 0, &p0, x_abs_max, pc, |k| {
                let z = riemann_zeta_real(&Float::with_val(bits, &shift - k), pc)?;
                Ok(Float::with_val(bits, &pref * &z) * a0_pow(k))
            })?
        };
        kept += n;
    }
    truncation.push(("res4", kept));

    // Gamma poles against zeta(-m, alpha), m >= 1; only present for R >= 1
    let r_int = r.floor() as u64;
    let mut kept = 0;
    for m in 1..=r_int {
        let zm = mw_zeta(ctx, &pc.complex(-(m as i64)))?;
        let mut mf = Float::with_val(bits, 1);
        for i in 1..=m {
            mf *= i as u32;
        }
        let adm = adf.clone().pow(m as u32);
        let base = Float::with_val(bits, zm.real() * &adm) / &mf;
        let sign_m = if m % 2 == 1 { -1 } else { 1 };
        let n = if a0 == 0 {
            let z = riemann_zeta_real(&pc.float(1 - m as i64), pc)?;
            if !z.is_zero() {
                terms.push(WTerm { coeff: Float::with_val(bits, &base * &z) * sign_m, exponent: pc.float(m), source: "res5" });
            }
            1
        } else {
            push_k_series(&mut terms, "res5", 0, &pc.float(m), x_abs_max, pc, |k| {
                let z = riemann_zeta_real(&pc.float(1 - m as i64 - k as i64), pc)?;
                Ok(Float::with_val(bits, &base * &z) * a0_pow(k) * sign_m)
            })?
        };
        kept += n;
    }
    truncation.push(("res5", kept));

    Ok(WModel {
        variant: if a0 == 0 { WVariant::W0 } else { WVariant::W1 },
        d,
        a0,
        ad,
        r,
        constant,
        terms,
        truncation,
        est_error,
        zeta0,
        zeta0_prime,
        main_coeff,
        x_abs_max: x_abs_max.clone(),
    })
}

impl WModel {
    /// `W(x)`.
    pub fn eval(&self, x: &Complex) -> Complex {
        let bits = self.constant.prec();
        let mut v = Complex::with_val(bits, (&self.constant, 0));
        for t in &self.terms {
            v += cpow_real(x, &t.exponent) * &t.coeff;
        }
        v
    }

    /// `d^order W / dx^order`.
    pub fn eval_dx(&self, x: &Complex, order: u32) -> Complex {
        if order == 0 {
            return self.eval(x);
        }
        let bits = self.constant.prec();
        let mut v = Complex::with_val(bits, 0);
        for t in &self.terms {
            let mut c = t.coeff.clone();
            for i in 0..order {
                c *= Float::with_val(bits, &t.exponent - i);
            }
            let p = Float::with_val(bits, &t.exponent - order);
            v += cpow_real(x, &p) * &c;
        }
        v
    }

    /// `A x^{-1/d} + zeta(0,alpha) log(1/(a_d x)) + W(x)`.
    pub fn phi(&self, x: &Complex) -> Complex {
        let bits = self.constant.prec();
        let p = -(Float::with_val(bits, 1) / self.d as u32);
        let mut v = cpow_real(x, &p) * &self.main_coeff;
        let adx = Complex::with_val(bits, x * self.ad);
        v -= cln(&adx) * &self.zeta0;
        v + self.eval(x)
    }

    pub fn value(&self, x: &Complex) -> WValue {
        WValue {
            variant: self.variant,
            value: self.eval(x),
            truncation_orders: self.truncation.clone(),
            est_error: self.est_error.clone(),
        }
    }
}

/// Largest `|x|` over the admissible range `|Theta| <= X^{L/d - 1}`.
pub fn x_abs_bound(big_x: &Float, d: usize, l: f64, pc: &PrecisionConfig) -> Float {
    let t = big_x.clone().pow(pc.float(l / d as f64 - 1.0));
    cabs(&x_of(big_x, &t, pc))
}

/// `W` at `(X, Theta)`, building the model on the spot.
pub fn eval_w(
    spec: &PolynomialSpec,
    ctx: &MWZetaContext,
    big_x: &Float,
    theta: &Float,
    r: f64,
    pc: &PrecisionConfig,
) -> Result<WValue> {
    let x = x_of(big_x, theta, pc);
    let model = build_w_model(spec, ctx, &cabs(&x), r, pc)?;
    Ok(model.value(&x))
}

pub fn phi_asymptotic(
    spec: &PolynomialSpec,
    ctx: &MWZetaContext,
    big_x: &Float,
    theta: &Float,
    r: f64,
    pc: &PrecisionConfig,
) -> Result<Complex> {
    let x = x_of(big_x, theta, pc);
    let model = build_w_model(spec, ctx, &cabs(&x), r, pc)?;
    Ok(model.phi(&x))
}

/// `Phi` by summing `-log(1 - e^{-f(n) x})` over `n <= n_max`; the `j`-sum
/// is done in closed form. Returns the value and a bound on the dropped tail.
pub fn phi_direct(spec: &PolynomialSpec, big_x: &Float, theta: &Float, n_max: u64, pc: &PrecisionConfig) -> Result<(Complex, Float)> {
    let bits = pc.bits();
    if *big_x <= 0 {
        return Err(Error::OutOfRange("X must be positive".into()));
    }
    let x = x_of(big_x, theta, pc);
    let inv_x = Float::with_val(bits, 1) / big_x;
    // f(n+1) - f(n) >= 1 once f is increasing on the integers, so the tail
    // past N is below 2 e^{-f(N)/X} / (1 - e^{-1/X})
    let geo = Float::with_val(bits, 1) - (-inv_x.clone()).exp();
    let target = pc.eps(5);
    let mut v = Complex::with_val(bits, 0);
    let mut prev = Float::with_val(bits, 0);
    let mut tail = Float::with_val(bits, f64::INFINITY);
    for n in 1..=n_max {
        let f = Float::with_val(bits, spec.eval_integer(n as i64));
        if f < 1 || f <= prev {
            return Err(Error::DomainError(format!("f({n}) = {} is not an increasing positive value", fmt_float(&f, 20))));
        }
        let z = (-Complex::with_val(bits, &x * &f)).exp();
        let one_minus = Complex::with_val(bits, 1u32 - &z);
        v -= cln(&one_minus);
        let f_next = Float::with_val(bits, spec.eval_integer(n as i64 + 1));
        tail = Float::with_val(bits, -(Float::with_val(bits, &f_next * &inv_x))).exp() * 2u32 / &geo;
        prev = f;
        if tail < target {
            break;
        }
    }
    if tail > pc.tol_half() {
        return Err(Error::TailTooLarge(fmt_float(&tail, 6)));
    }
    Ok((v, tail))
}

/// Default term cap for [`phi_direct`]: enough for the tail to die at `X`.
pub fn default_n_max(spec: &PolynomialSpec, big_x: f64, pc: &PrecisionConfig) -> u64 {
    let t = (pc.digits as f64 + 10.0) * std::f64::consts::LN_10 + (2.0 * big_x).ln().max(0.0);
    let target = t * big_x;
    let ad = spec.leading() as f64;
    ((target / ad).powf(1.0 / spec.degree() as f64).ceil() as u64 + 10).max(10)
}

/// `d^order W / dTheta^order` at `Theta = 0`, from the term-wise derivative
/// in `x` (`dx/dTheta = -2 pi i`), checked against a central difference.
pub fn w_derivatives_at_zero(model: &WModel, big_x: &Float, order: u32, pc: &PrecisionConfig) -> Result<Complex> {
    let (an, _) = w_derivative_pair(model, big_x, order, pc)?;
    Ok(an)
}

/// Analytic and finite-difference derivative at `Theta = 0`.
pub fn w_derivative_pair(model: &WModel, big_x: &Float, order: u32, pc: &PrecisionConfig) -> Result<(Complex, Complex)> {
    let bits = pc.bits();
    if !(1..=2).contains(&order) {
        return Err(Error::OutOfRange(format!("derivative order {order}")));
    }
    let zero = pc.float(0);
    let x0 = x_of(big_x, &zero, pc);
    let two_pi = Float::with_val(bits, pc.pi() * 2u32);
    let m2pii = Complex::with_val(bits, (0, -two_pi.clone()));
    let mut chain = Complex::with_val(bits, 1);
    for _ in 0..order {
        chain *= &m2pii;
    }
    let an = model.eval_dx(&x0, order) * &chain;

    // step gives a relative move of 10^{-digits/4} in x
    let h = Float::with_val(bits, pc.pow10_neg(pc.digits as f64 / 4.0) / &two_pi) / big_x;
    let wp = model.eval(&x_of(big_x, &h, pc));
    let wm = model.eval(&x_of(big_x, &(-h.clone()), pc));
    let fd = if order == 1 {
        Complex::with_val(bits, &wp - &wm) / Float::with_val(bits, &h * 2u32)
    } else {
        let w0 = model.eval(&x0);
        let num = Complex::with_val(bits, &wp + &wm) - Complex::with_val(bits, &w0 * 2u32);
        num / Float::with_val(bits, h.square_ref())
    };
    let mut scale = Float::with_val(bits, 1);
    for t in &model.terms {
        let p = Float::with_val(bits, &t.exponent - order);
        let mut c = Float::with_val(bits, t.coeff.abs_ref()) * cabs(&cpow_real(&x0, &p));
        for i in 0..order {
            c *= Float::with_val(bits, &t.exponent - i).abs();
            c *= &two_pi;
        }
        scale += c;
    }
    let diff = cabs(&Complex::with_val(bits, &an - &fd));
    if diff > Float::with_val(bits, pc.pow10_neg(pc.digits as f64 / 4.0) * &scale) {
        return Err(Error::DerivativeMismatch(fmt_float(&diff, 10)));
    }
    Ok((an, fd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mwzeta::{build_context, DEFAULT_DEPTH};
    use crate::poly::{compute_roots, parse_polynomial};

    fn setup(c: &[i64], pc: &PrecisionConfig) -> (PolynomialSpec, MWZetaContext) {
        let spec = parse_polynomial(c).unwrap();
        let roots = compute_roots(&spec, pc).unwrap();
        let ctx = build_context(&roots.alphas, spec.degree(), DEFAULT_DEPTH, pc).unwrap();
        (spec, ctx)
    }

    #[test]
    fn point_quantities() {
        let pc = PrecisionConfig::new(30).unwrap();
        let p = PhiPoint::new(&pc.float(100), &pc.float(0.001), &pc);
        assert!((cabs(&(-p.x.clone()).exp()).to_f64() - p.rho.to_f64()).abs() < 1e-25);
        assert!(p.delta > 0 && p.delta <= 1);
        assert_eq!(p.x.real().to_f64(), 0.01);
    }

    #[test]
    fn direct_matches_product_log() {
        let pc = PrecisionConfig::new(30).unwrap();
        let spec = parse_polynomial(&[0, 0, 1]).unwrap();
        let big_x = pc.float(100);
        let (v, tail) = phi_direct(&spec, &big_x, &pc.float(0), 1000, &pc).unwrap();
        assert!(tail < pc.eps(0));
        // -log of the truncated product
        let mut prod = pc.float(1);
        for n in 1..200i64 {
            prod *= Float::with_val(pc.bits(), 1u32 - (-pc.float(n * n) / &big_x).exp());
        }
        let want = -prod.ln();
        assert!((v.real().to_f64() - want.to_f64()).abs() < 1e-12);
        assert!(Float::with_val(pc.bits(), v.real() - &want).abs() < pc.pow10_neg(20.0));
    }

    #[test]
    fn direct_matches_double_sum() {
        let pc = PrecisionConfig::new(30).unwrap();
        let bits = pc.bits();
        let spec = parse_polynomial(&[0, 0, 1, 2]).unwrap();
        let big_x = pc.float(20);
        let theta = pc.float(0.013);
        let (v, _) = phi_direct(&spec, &big_x, &theta, 1000, &pc).unwrap();
        let x = x_of(&big_x, &theta, &pc);
        let mut w = pc.complex(0);
        for j in 1..3000u32 {
            let mut n = 1i64;
            loop {
                let f = Float::with_val(bits, spec.eval_integer(n)) * j;
                if f.to_f64() / 20.0 > 80.0 {
                    break;
                }
                w += (-Complex::with_val(bits, &x * &f)).exp() / j;
                n += 1;
            }
        }
        assert!(cabs(&Complex::with_val(bits, &v - &w)) < pc.pow10_neg(25.0));
    }

    #[test]
    fn direct_conjugate_symmetry() {
        let pc = PrecisionConfig::new(30).unwrap();
        let spec = parse_polynomial(&[0, 0, 1]).unwrap();
        let x = pc.float(100);
        let (a, _) = phi_direct(&spec, &x, &pc.float(0.5), 1000, &pc).unwrap();
        let (b, _) = phi_direct(&spec, &x, &pc.float(-0.5), 1000, &pc).unwrap();
        assert!(cabs(&Complex::with_val(pc.bits(), a - b.conj())) < pc.eps(-4));
    }

    #[test]
    fn direct_tail_too_large() {
        let pc = PrecisionConfig::new(30).unwrap();
        let spec = parse_polynomial(&[0, 0, 1]).unwrap();
        assert!(matches!(phi_direct(&spec, &pc.float(1000), &pc.float(0), 5, &pc), Err(Error::TailTooLarge(_))));
    }

    #[test]
    fn squares_w_is_log_two_pi() {
        let pc = PrecisionConfig::default();
        let (spec, ctx) = setup(&[0, 0, 1], &pc);
        let w = eval_w(&spec, &ctx, &pc.float(1000), &pc.float(0), DEFAULT_R, &pc).unwrap();
        assert_eq!(w.variant, WVariant::W0);
        let want = -pc.ln2pi();
        assert!(cabs(&Complex::with_val(pc.bits(), &w.value - &want)) < pc.tol_half());
    }

    #[test]
    fn shifted_square_m_series() {
        // f = 5y^2 + 3: the m-series is -sum_n log(1 + 3/(5 n^2))
        let pc = PrecisionConfig::new(30).unwrap();
        let bits = pc.bits();
        let (spec, ctx) = setup(&[3, 0, 5], &pc);
        let model = build_w_model(&spec, &ctx, &pc.float(0.01), DEFAULT_R, &pc).unwrap();
        assert_eq!(model.variant, WVariant::W1);
        let c = Float::with_val(bits, 3) / 5u32;
        let t = pc.pi() * c.clone().sqrt();
        let want_m = -(Float::with_val(bits, t.sinh_ref()) / &t).ln();
        let got_m = Float::with_val(bits, &model.constant - &model.zeta0_prime);
        assert!(Float::with_val(bits, got_m - want_m).abs() < pc.pow10_neg(20.0));
    }

    #[test]
    fn shifted_square_against_direct() {
        let pc = PrecisionConfig::new(40).unwrap();
        let bits = pc.bits();
        let (spec, ctx) = setup(&[3, 0, 5], &pc);
        let big_x = pc.float(1000);
        let a = phi_asymptotic(&spec, &ctx, &big_x, &pc.float(0), DEFAULT_R, &pc).unwrap();
        let n_max = default_n_max(&spec, 1000.0, &pc);
        let (b, _) = phi_direct(&spec, &big_x, &pc.float(0), n_max, &pc).unwrap();
        let err = cabs(&Complex::with_val(bits, &a - &b)).to_f64();
        assert!(err < 1e-3, "err {err}");
    }

    #[test]
    fn w_real_at_zero_and_derivative_imaginary() {
        let pc = PrecisionConfig::new(40).unwrap();
        for c in [vec![0, 0, 1], vec![3, 0, 5], vec![0, 0, 1, 2]] {
            let (spec, ctx) = setup(&c, &pc);
            let big_x = pc.float(500);
            let model = build_w_model(&spec, &ctx, &pc.float(0.01), DEFAULT_R, &pc).unwrap();
            let w = model.eval(&x_of(&big_x, &pc.float(0), &pc));
            assert!(w.imag().is_zero());
            let (an, fd) = w_derivative_pair(&model, &big_x, 1, &pc).unwrap();
            assert!(an.real().is_zero());
            assert!(fd.real().clone().abs() < pc.pow10_neg(15.0));
            w_derivative_pair(&model, &big_x, 2, &pc).unwrap();
        }
    }

    #[test]
    fn constant_w_has_zero_derivatives() {
        let pc = PrecisionConfig::new(40).unwrap();
        let (spec, ctx) = setup(&[0, 0, 1], &pc);
        let model = build_w_model(&spec, &ctx, &pc.float(0.01), DEFAULT_R, &pc).unwrap();
        assert!(model.terms.is_empty());
        let d1 = w_derivatives_at_zero(&model, &pc.float(100), 1, &pc).unwrap();
        let d2 = w_derivatives_at_zero(&model, &pc.float(100), 2, &pc).unwrap();
        assert!(d1.is_zero() && d2.is_zero());
    }

    #[test]
    fn cubic_asymptotic_close() {
        let pc = PrecisionConfig::new(40).unwrap();
        let (spec, ctx) = setup(&[0, 0, 1, 2], &pc);
        let mut prev = f64::INFINITY;
        for xv in [1000.0, 10000.0] {
            let big_x = pc.float(xv);
            let a = phi_asymptotic(&spec, &ctx, &big_x, &pc.float(0), DEFAULT_R, &pc).unwrap();
            let (b, _) = phi_direct(&spec, &big_x, &pc.float(0), default_n_max(&spec, xv, &pc), &pc).unwrap();
            let err = cabs(&Complex::with_val(pc.bits(), &a - &b)).to_f64();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 1e-2);
    }

    #[test]
    fn ratio_check() {
        let pc = PrecisionConfig::new(30).unwrap();
        let spec = parse_polynomial(&[7, 0, 5]).unwrap();
        let roots = compute_roots(&spec, &pc).unwrap();
        let ctx = build_context(&roots.alphas, 2, DEFAULT_DEPTH, &pc).unwrap();
        assert!(matches!(
            build_w_model(&spec, &ctx, &pc.float(0.01), DEFAULT_R, &pc),
            Err(Error::RatioNotLessThanOne(_))
        ));
    }

    #[test]
    fn truncation_stability() {
        let pc = PrecisionConfig::new(40).unwrap();
        let (spec, ctx) = setup(&[3, 0, 5], &pc);
        let x = x_of(&pc.float(100), &pc.float(0), &pc);
        let a = build_w_model(&spec, &ctx, &pc.float(0.01), DEFAULT_R, &pc).unwrap();
        let b = build_w_model(&spec, &ctx, &pc.float(1), DEFAULT_R, &pc).unwrap();
        assert!(b.terms.len() > a.terms.len());
        let d = cabs(&Complex::with_val(pc.bits(), a.eval(&x) - b.eval(&x)));
        assert!(d < pc.tol_half());
    }
}
