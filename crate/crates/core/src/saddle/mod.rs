//! Saddle point `(X, Y)` and the resulting asymptotic for `p_f(n)`.
//!
//! `X` solves `n = B X^{1+1/d} + zeta(0,alpha) X + Re(W'(0)/(2 pi i))`,
//! the stationarity of `K(Theta) = Phi(rho e(Theta)) - 2 pi i n Theta`.

pub mod expansion;

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::mwzeta::MWZetaContext;
use crate::phi::{build_w_model, phi_direct, default_n_max, w_derivatives_at_zero, x_of, WModel};
use crate::poly::PolynomialSpec;
use crate::precision::{cabs, fmt_float, PrecisionConfig};
use crate::specfun::gamma::gamma_real;
use crate::specfun::zeta::riemann_zeta_real;

pub use expansion::{default_j, expansion_coeffs, u_coeff, v_coeff, AsymptoticExpansion};

pub const MAX_ITERATIONS: usize = 200;

#[derive(Debug, Clone)]
pub struct SaddlePoint {
    pub n: u64,
    pub big_x: Float,
    pub big_y: Float,
    /// `(1/d) zeta(1+1/d) Gamma(1/d) (X/a_d)^{1/d} + Re W(0)`
    pub c_main: Float,
    pub w_prime: Complex,
    pub w_dprime: Complex,
    pub solver_residual: Float,
    pub iterations: usize,
}

/// Everything the solver needs that does not depend on `n`.
#[derive(Debug, Clone)]
pub struct SaddleModel {
    pub spec: PolynomialSpec,
    pub w: WModel,
    pub pc: PrecisionConfig,
    /// `zeta(1+1/d) Gamma(1/d)`
    zg: Float,
    /// `zg a_d^{-1/d} / d^2`
    b: Float,
}

impl SaddleModel {
    /// `x_abs_max` bounds `1/X` over the saddles to be solved.
    pub fn new(spec: &PolynomialSpec, ctx: &MWZetaContext, r: f64, x_abs_max: &Float, pc: &PrecisionConfig) -> Result<Self> {
        let bits = pc.bits();
        let d = spec.degree();
        let w = build_w_model(spec, ctx, x_abs_max, r, pc)?;
        let inv_d = Float::with_val(bits, 1) / d as u32;
        let zg = riemann_zeta_real(&Float::with_val(bits, &inv_d + 1u32), pc)? * gamma_real(&inv_d, pc)?;
        let ad = pc.float(spec.leading());
        let b = Float::with_val(bits, &zg * ad.pow(-inv_d)) / (d * d) as u32;
        Ok(SaddleModel { spec: spec.clone(), w, pc: *pc, zg, b })
    }

    /// Model sized for every `n >= n_min`.
    pub fn for_n(spec: &PolynomialSpec, ctx: &MWZetaContext, r: f64, n_min: u64, pc: &PrecisionConfig) -> Result<Self> {
        let d = spec.degree() as f64;
        let rough = (n_min.max(2) as f64 / 2.0).powf(d / (d + 1.0)).max(1.0);
        Self::new(spec, ctx, r, &pc.float((4.0 / rough).min(1.0)), pc)
    }

    fn d(&self) -> usize {
        self.spec.degree()
    }

    /// `-W'_x(1/X)`, which equals `W'(0)/(2 pi i)` as a function of `Theta`.
    fn w_shift(&self, big_x: &Float) -> Float {
        let x0 = x_of(big_x, &self.pc.float(0), &self.pc);
        -Float::with_val(self.pc.bits(), self.w.eval_dx(&x0, 1).real())
    }

    // right side minus n, and its X-derivative
    fn residual(&self, big_x: &Float, n: &Float) -> (Float, Float) {
        let bits = self.pc.bits();
        let d = self.d() as u32;
        let x0 = x_of(big_x, &self.pc.float(0), &self.pc);
        let xp = big_x.clone().pow(Float::with_val(bits, 1) / d);
        let main = Float::with_val(bits, &self.b * &xp) * big_x;
        let z0x = Float::with_val(bits, &self.w.zeta0 * big_x);
        let f = main + z0x + self.w_shift(big_x) - n;
        // d/dX of -W'_x(1/X) is W''_x(1/X) / X^2
        let wpp = Float::with_val(bits, self.w.eval_dx(&x0, 2).real()) / Float::with_val(bits, big_x.square_ref());
        let df = Float::with_val(bits, &self.b * &xp) * (d + 1) / d + &self.w.zeta0 + wpp;
        (f, df)
    }

    pub fn solve(&self, n: u64) -> Result<SaddlePoint> {
        let pc = &self.pc;
        let bits = pc.bits();
        let d = self.d() as f64;
        let nf = pc.float(n);
        let mut lo = pc.float(1);
        let mut hi = Float::with_val(bits, &nf * &nf).max(&pc.float(2));
        let (flo, _) = self.residual(&lo, &nf);
        let (fhi, _) = self.residual(&hi, &nf);
        if flo >= 0 || fhi <= 0 {
            return Err(Error::NoBracket(n));
        }
        let rough = (n as f64 / self.b.to_f64()).powf(d / (d + 1.0));
        let mut x = pc.float(rough).clamp(&lo, &hi);
        let tol = Float::with_val(bits, pc.eps(-8) * &nf);
        let mut iterations = 0;
        loop {
            iterations += 1;
            if iterations > MAX_ITERATIONS {
                return Err(Error::SaddleNonConvergence(MAX_ITERATIONS));
            }
            let (f, df) = self.residual(&x, &nf);
            if Float::with_val(bits, f.abs_ref()) <= tol {
                break;
            }
            if f < 0 {
                lo = x.clone();
            } else {
                hi = x.clone();
            }
            let step = Float::with_val(bits, &f / &df);
            let mut next = Float::with_val(bits, &x - &step);
            if !(next > lo && next < hi) || df <= 0 {
                next = Float::with_val(bits, &lo + &hi) / 2u32;
            }
            if next == x {
                break;
            }
            x = next;
        }
        let (res, _) = self.residual(&x, &nf);
        let solver_residual = Float::with_val(bits, res.abs_ref()) / &nf;

        let w_prime = w_derivatives_at_zero(&self.w, &x, 1, pc)?;
        let w_dprime = w_derivatives_at_zero(&self.w, &x, 2, pc)?;
        let inv_d = Float::with_val(bits, 1) / self.d() as u32;
        let ad = pc.float(self.spec.leading());
        let xa = Float::with_val(bits, &x / &ad).pow(&inv_d);
        let dd = self.d() as u32;
        let pi = pc.pi();
        let y_main = Float::with_val(bits, &xa * &self.zg) * (dd + 1) / (2 * dd * dd * dd);
        let corr = Float::with_val(bits, w_dprime.real() / (pi.square() * 8u32)) / Float::with_val(bits, x.square_ref());
        let big_y = y_main + Float::with_val(bits, &self.w.zeta0 / 2u32) - corr;
        let x0 = x_of(&x, &pc.float(0), pc);
        let c_main = Float::with_val(bits, &xa * &self.zg) / dd + Float::with_val(bits, self.w.eval(&x0).real());
        Ok(SaddlePoint { n, big_x: x, big_y, c_main, w_prime, w_dprime, solver_residual, iterations })
    }

    /// `exp(C + n/X) / (2 pi a_d^{zeta0} X^{1-zeta0} Y^{1/2}) (sqrt(pi) + sum w_q Y^{-q})`.
    pub fn estimate(&self, sp: &SaddlePoint, exp: &AsymptoticExpansion) -> Float {
        let pc = &self.pc;
        let bits = pc.bits();
        let z0 = &self.w.zeta0;
        let ad = pc.float(self.spec.leading());
        let lead = Float::with_val(bits, pc.float(sp.n) / &sp.big_x) + &sp.c_main;
        let mut den_log = Float::with_val(bits, pc.pi() * 2u32).ln();
        den_log += Float::with_val(bits, ad.ln_ref()) * z0;
        den_log += Float::with_val(bits, sp.big_x.ln_ref()) * Float::with_val(bits, 1 - z0);
        den_log += Float::with_val(bits, sp.big_y.ln_ref()) / 2u32;
        let pref = Float::with_val(bits, lead - den_log).exp();
        let mut bracket = pc.pi().sqrt();
        let mut ypow = Float::with_val(bits, 1);
        for wq in &exp.w {
            ypow /= &sp.big_y;
            bracket += Float::with_val(bits, wq * &ypow);
        }
        pref * bracket
    }

    /// Relative mismatch `|K''(0) + 2Y(2 pi X)^2| / (Y (2 pi X)^2)` and
    /// `|K'(0)|/n`, with `K` built from the direct sum.
    pub fn k_expansion_check(&self, sp: &SaddlePoint) -> Result<(Float, Float)> {
        let pc = &self.pc;
        let bits = pc.bits();
        let two_pi_x = Float::with_val(bits, pc.pi() * 2u32) * &sp.big_x;
        let h = pc.pow10_neg(pc.digits as f64 / 4.0) / &two_pi_x;
        let n_max = default_n_max(&self.spec, sp.big_x.to_f64(), pc);
        let (p0, _) = phi_direct(&self.spec, &sp.big_x, &pc.float(0), n_max, pc)?;
        let (pp, _) = phi_direct(&self.spec, &sp.big_x, &h, n_max, pc)?;
        let (pm, _) = phi_direct(&self.spec, &sp.big_x, &(-h.clone()), n_max, pc)?;
        let h2 = Float::with_val(bits, &h * 2u32);
        let (pp2, _) = phi_direct(&self.spec, &sp.big_x, &h2, n_max, pc)?;
        let (pm2, _) = phi_direct(&self.spec, &sp.big_x, &(-h2.clone()), n_max, pc)?;
        // the -2 pi i n Theta part is linear: it drops out of K''
        let k2 = (Complex::with_val(bits, &pp + &pm) - Complex::with_val(bits, &p0 * 2u32)) / Float::with_val(bits, h.square_ref());
        let scale = Float::with_val(bits, two_pi_x.square_ref()) * &sp.big_y;
        let target = Complex::with_val(bits, (Float::with_val(bits, &scale * 2u32), 0));
        let mismatch = cabs(&Complex::with_val(bits, &k2 + &target)) / &scale;
        // five-point stencil; the three-point one stalls at h^2
        let d1 = Complex::with_val(bits, &pp - &pm) * 8u32;
        let d2 = Complex::with_val(bits, &pp2 - &pm2);
        let k1 = (d1 - d2) / Float::with_val(bits, &h * 12u32);
        let two_pi_n = Float::with_val(bits, pc.pi() * 2u32) * sp.n;
        let k1 = k1 - Complex::with_val(bits, (0, two_pi_n));
        let k1_rel = cabs(&k1) / sp.n;
        Ok((mismatch, k1_rel))
    }
}

/// One-shot asymptotic for `p_f(n)`.
pub fn asymptotic_count(
    spec: &PolynomialSpec,
    ctx: &MWZetaContext,
    n: u64,
    j: usize,
    r: f64,
    pc: &PrecisionConfig,
) -> Result<(Float, SaddlePoint)> {
    let model = SaddleModel::for_n(spec, ctx, r, n, pc)?;
    let sp = model.solve(n)?;
    let e = expansion_coeffs(ctx, j, r, pc)?;
    Ok((model.estimate(&sp, &e), sp))
}

pub fn describe(sp: &SaddlePoint) -> String {
    format!("n={} X={} Y={} residual={}", sp.n, fmt_float(&sp.big_x, 15), fmt_float(&sp.big_y, 15), fmt_float(&sp.solver_residual, 3))
}
