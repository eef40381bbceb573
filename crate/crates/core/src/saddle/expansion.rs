//! Correction coefficients `w_q` of the saddle-point expansion.
//!
//! Around the peak the exponent is `-phi + H_J` with
//! `H_J = sum_{j=3}^{2J+2} (u_j eta^{j-2} + v_j eta^j) tau^j`,
//! `tau = i phi^{1/2}`, `eta = Y^{-1/2}`. Writing `exp(H_J) = sum_h p_h(eta) tau^h`
//! and integrating against the Gaussian gives
//! `I = sum_g (-1)^g Gamma(g + 1/2) p_{2g}(eta)`; `w_q` is its `eta^{2q}`
//! coefficient.

use rug::Float;

use crate::error::{Error, Result};
use crate::mwzeta::MWZetaContext;
use crate::precision::PrecisionConfig;
use crate::specfun::gamma::gamma_real;
use crate::specfun::series::gen_binom;

/// Polynomial in `(tau, eta)`: `c[h][e]` multiplies `tau^h eta^e`.
pub type Biv = Vec<Vec<Float>>;

#[derive(Debug, Clone)]
pub struct AsymptoticExpansion {
    pub d: usize,
    pub j: usize,
    /// `w_1 .. w_{J-1}`
    pub w: Vec<Float>,
    /// `u_3 .. u_{2J+2}`
    pub u: Vec<Float>,
    /// `v_3 .. v_{2J+2}`
    pub v: Vec<Float>,
    /// `p_h(eta)` for `h <= tau_order`
    pub p: Biv,
    pub tau_order: usize,
    /// false when `J >= dR`
    pub admissible: bool,
}

/// `u_j = binom(j - 1 + 1/d, j) / binom(1 + 1/d, 2)`.
pub fn u_coeff(d: usize, j: usize, pc: &PrecisionConfig) -> Float {
    let bits = pc.bits();
    let inv_d = Float::with_val(bits, 1) / d as u32;
    let num = gen_binom(&Float::with_val(bits, &inv_d + (j - 1) as u32), j as u64);
    let den = gen_binom(&Float::with_val(bits, &inv_d + 1u32), 2);
    num / den
}

/// `v_j = zeta(0, alpha) (1/j - u_j/2)`.
pub fn v_coeff(zeta0: &Float, d: usize, j: usize, pc: &PrecisionConfig) -> Float {
    let bits = pc.bits();
    let t = Float::with_val(bits, 1) / j as u32 - u_coeff(d, j, pc) / 2u32;
    t * zeta0
}

/// Largest integer strictly below `dR`, at least 1.
pub fn default_j(d: usize, r: f64) -> usize {
    let dr = d as f64 * r;
    ((dr.ceil() as i64 - 1).max(1)) as usize
}

fn biv_zero(order: usize, pc: &PrecisionConfig) -> Biv {
    vec![vec![pc.float(0); order + 1]; order + 1]
}

fn biv_mul(a: &Biv, b: &Biv, order: usize, pc: &PrecisionConfig) -> Biv {
    let bits = pc.bits();
    let mut out = biv_zero(order, pc);
    for (h1, row1) in a.iter().enumerate() {
        for (e1, c1) in row1.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (h2, row2) in b.iter().enumerate().take(order + 1 - h1) {
                for (e2, c2) in row2.iter().enumerate().take(order + 1 - e1) {
                    if c2.is_zero() {
                        continue;
                    }
                    out[h1 + h2][e1 + e2] += Float::with_val(bits, c1 * c2);
                }
            }
        }
    }
    out
}

pub fn expansion_coeffs(ctx: &MWZetaContext, j: usize, r: f64, pc: &PrecisionConfig) -> Result<AsymptoticExpansion> {
    let bits = pc.bits();
    let d = ctx.d;
    if j == 0 {
        return Err(Error::OutOfRange("J must be at least 1".into()));
    }
    let zeta0 = Float::with_val(bits, -0.5) - ctx.sum_alpha() / d as u32;
    // eta^{2q} needs tau up to 6q; keep a few more for inspection
    let order = (6 * j).max(12);
    let top = 2 * j + 2;
    let mut u = Vec::new();
    let mut v = Vec::new();
    let mut h = biv_zero(order, pc);
    for jj in 3..=top {
        let uj = u_coeff(d, jj, pc);
        let vj = v_coeff(&zeta0, d, jj, pc);
        if jj <= order {
            h[jj][jj - 2] += &uj;
            h[jj][jj] += &vj;
        }
        u.push(uj);
        v.push(vj);
    }

    // exp(H) = sum_k H^k / k!; H^k starts at tau^{3k}
    let mut p = biv_zero(order, pc);
    p[0][0] = pc.float(1);
    let mut pow = p.clone();
    let mut k = 1usize;
    while 3 * k <= order {
        pow = biv_mul(&pow, &h, order, pc);
        for row in pow.iter_mut() {
            for c in row.iter_mut() {
                *c /= k as u32;
            }
        }
        for (hh, row) in pow.iter().enumerate() {
            for (e, c) in row.iter().enumerate() {
                p[hh][e] += c;
            }
        }
        k += 1;
    }

    // I(eta) up to eta^{2(J-1)}
    let mut w = Vec::new();
    for q in 1..j {
        let mut wq = pc.float(0);
        for g in 0..=(order / 2) {
            let c = &p[2 * g][2 * q];
            if c.is_zero() {
                continue;
            }
            let gm = gamma_real(&Float::with_val(bits, Float::with_val(bits, 0.5) + g as u32), pc)?;
            let t = Float::with_val(bits, c * &gm);
            if g % 2 == 1 {
                wq -= t;
            } else {
                wq += t;
            }
        }
        w.push(wq);
    }
    let admissible = (j as f64) < d as f64 * r;
    Ok(AsymptoticExpansion { d, j, w, u, v, p, tau_order: order, admissible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mwzeta::{build_context, DEFAULT_DEPTH};

    fn ctx(al: &[f64], pc: &PrecisionConfig) -> MWZetaContext {
        let a: Vec<Float> = al.iter().map(|&x| pc.float(x)).collect();
        build_context(&a, al.len() + 1, DEFAULT_DEPTH, pc).unwrap()
    }

    #[test]
    fn u_and_v_values() {
        let pc = PrecisionConfig::default();
        let u3 = u_coeff(2, 3, &pc);
        assert!((u3.to_f64() - 5.0 / 6.0).abs() < 1e-18);
        let u4 = u_coeff(2, 4, &pc);
        assert!((u4.to_f64() - 35.0 / 48.0).abs() < 1e-18);
        let v3 = v_coeff(&pc.float(-0.5), 2, 3, &pc);
        assert!((v3.to_f64() - 1.0 / 24.0).abs() < 1e-18);
    }

    #[test]
    fn default_j_values() {
        assert_eq!(default_j(2, 0.9), 1);
        assert_eq!(default_j(3, 0.9), 2);
        assert_eq!(default_j(4, 0.9), 3);
        assert_eq!(default_j(2, 1.0), 1);
    }

    #[test]
    fn p_structure() {
        let pc = PrecisionConfig::default();
        let e = expansion_coeffs(&ctx(&[0.0, 0.5], &pc), 3, 0.9, &pc).unwrap();
        assert_eq!(e.p[0][0].to_f64(), 1.0);
        assert!(e.p[0].iter().skip(1).all(|c| c.is_zero()));
        assert!(e.p[1].iter().all(|c| c.is_zero()));
        assert!(e.p[2].iter().all(|c| c.is_zero()));
        for (h, row) in e.p.iter().enumerate().skip(3) {
            assert!(row[0].is_zero(), "p_{h}(0)");
            for (k, c) in row.iter().enumerate() {
                if (h + k) % 2 == 1 {
                    assert!(c.is_zero(), "parity p_{h} eta^{k}");
                }
            }
        }
        assert!(!e.admissible);
    }

    #[test]
    fn w1_closed_form() {
        let pc = PrecisionConfig::default();
        let bits = pc.bits();
        let e = expansion_coeffs(&ctx(&[0.0], &pc), 2, 0.9, &pc).unwrap();
        assert_eq!(e.w.len(), 1);
        let u3 = u_coeff(2, 3, &pc);
        let u4 = u_coeff(2, 4, &pc);
        let g52 = gamma_real(&pc.float(2.5), &pc).unwrap();
        let g72 = gamma_real(&pc.float(3.5), &pc).unwrap();
        let want = Float::with_val(bits, &u4 * &g52) - Float::with_val(bits, u3.square_ref()) / 2u32 * g72;
        assert!(Float::with_val(bits, &e.w[0] - &want).abs() < pc.eps(-4));
        let e1 = expansion_coeffs(&ctx(&[0.0], &pc), 1, 0.9, &pc).unwrap();
        assert!(e1.w.is_empty() && e1.admissible);
    }

    #[test]
    fn w2_by_enumeration() {
        let pc = PrecisionConfig::default();
        let bits = pc.bits();
        let c = ctx(&[0.0], &pc);
        let e = expansion_coeffs(&c, 3, 0.9, &pc).unwrap();
        let u = |j| u_coeff(2, j, &pc);
        let v = |j| v_coeff(&pc.float(-0.5), 2, j, &pc);
        let g = |k: u32| gamma_real(&Float::with_val(bits, Float::with_val(bits, 0.5) + k), &pc).unwrap();
        // eta^4 contributions to p_{2g}:
        //   g=2: v4; g=3: u6 + u3 v3; g=4: u3 u5 + u4^2/2; g=5: u3^2 u4/2; g=6: u3^4/24
        let t2 = v(4);
        let t3 = u(6) + Float::with_val(bits, u(3) * v(3));
        let t4 = Float::with_val(bits, u(3) * u(5)) + Float::with_val(bits, u(4).square_ref()) / 2u32;
        let t5 = Float::with_val(bits, u(3).square_ref()) * u(4) / 2u32;
        let t6 = Float::with_val(bits, u(3).pow_ref_u(4)) / 24u32;
        let want = t2 * g(2) - t3 * g(3) + t4 * g(4) - t5 * g(5) + t6 * g(6);
        assert!(Float::with_val(bits, &e.w[1] - &want).abs() < pc.eps(-4));
    }

    trait PowU {
        fn pow_ref_u(&self, k: u32) -> Float;
    }
    impl PowU for Float {
        fn pow_ref_u(&self, k: u32) -> Float {
            let mut v = Float::with_val(self.prec(), 1);
            for _ in 0..k {
                v *= self;
            }
            v
        }
    }

    #[test]
    fn independent_of_roots_only_through_zeta0() {
        let pc = PrecisionConfig::default();
        let a = expansion_coeffs(&ctx(&[0.0, 0.5], &pc), 3, 0.9, &pc).unwrap();
        let b = expansion_coeffs(&ctx(&[0.25, 0.25], &pc), 3, 0.9, &pc).unwrap();
        assert_eq!(a.w, b.w);
    }
}
