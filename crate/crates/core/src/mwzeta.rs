//! The one-variable Matsumoto-Weng zeta
//! `zeta(s, alpha) = sum_n n^{-s} prod_j (n + alpha_j)^{-s}`,
//! its continuation, residues and behaviour at `s = 0`.
//!
//! For `n >= N0 > max alpha` the product expands as
//! `prod_j (1 + alpha_j/n)^{-s} = sum_k e_k(s) n^{-k}`, so
//! `zeta(s, alpha) = sum_{n<N0} (...) + sum_k e_k(s) Z(ds + k; N0)` with
//! `Z(w; N) = sum_{n>=N} n^{-w}`. Each `e_k` is a polynomial in `s`, kept as
//! its coefficient list: `e_k(s) = [t^k] exp(-s L(t))`,
//! `L(t) = sum_j log(1 + alpha_j t)`.

use rug::ops::Pow;
use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::{cabs, fmt_complex, fmt_float, PrecisionConfig};
use crate::specfun::bernoulli::bernoulli_even;
use crate::specfun::quad::{adaptive, gauss_legendre};
use crate::specfun::series::{series_exp, TruncatedSeries};
use crate::specfun::zeta::hurwitz_tail;

/// Largest supported continuation depth.
pub const MAX_DEPTH: usize = 64;

/// Default continuation depth.
pub const DEFAULT_DEPTH: usize = 40;

/// Precomputed expansion data for one root vector.
#[derive(Debug, Clone)]
pub struct MWZetaContext {
    pub alphas: Vec<Float>,
    pub d: usize,
    /// continuation depth K
    pub depth: usize,
    pub pc: PrecisionConfig,
    // e[k][i] = coefficient of s^i in e_k(s), k = 0..=depth+1
    e: Vec<Vec<Float>>,
}

/// Builds the context. `alphas` must have `d - 1` nonnegative entries.
pub fn build_context(alphas: &[Float], d: usize, depth: usize, pc: &PrecisionConfig) -> Result<MWZetaContext> {
    let bits = pc.bits();
    if alphas.len() + 1 != d {
        return Err(Error::DomainError(format!("{} roots given for degree {d}", alphas.len())));
    }
    if !(10..=MAX_DEPTH).contains(&depth) {
        return Err(Error::InsufficientDepth(format!("depth {depth} outside 10..={MAX_DEPTH}")));
    }
    let tol = pc.tol_half();
    let mut al = Vec::with_capacity(alphas.len());
    for a in alphas {
        if *a < 0 {
            if Float::with_val(bits, a.abs_ref()) <= tol {
                al.push(Float::with_val(bits, 0));
                continue;
            }
            return Err(Error::NegativeAlpha(fmt_float(a, 20)));
        }
        al.push(Float::with_val(bits, a));
    }

    let n = depth + 1;
    // L(t) coefficients: (-1)^{k-1} p_k / k
    let mut l = vec![Float::with_val(bits, 0); n + 1];
    for (k, lk) in l.iter_mut().enumerate().skip(1) {
        let mut pk = Float::with_val(bits, 0);
        for a in &al {
            pk += a.clone().pow(k as u32);
        }
        pk /= k as u32;
        *lk = if k % 2 == 1 { pk } else { -pk };
    }
    let mut e = vec![vec![Float::with_val(bits, 0); n + 1]; n + 1];
    // running power L^i / i!, with sign (-1)^i folded in
    let mut pow = vec![Float::with_val(bits, 0); n + 1];
    pow[0] = Float::with_val(bits, 1);
    e[0][0] = Float::with_val(bits, 1);
    for i in 1..=n {
        let mut next = vec![Float::with_val(bits, 0); n + 1];
        for (a, pa) in pow.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for b in 1..=(n - a) {
                next[a + b] += Float::with_val(bits, pa * &l[b]);
            }
        }
        for c in next.iter_mut() {
            *c /= i as u32;
            *c = -c.clone();
        }
        pow = next;
        for k in i..=n {
            e[k][i] = pow[k].clone();
        }
    }
    Ok(MWZetaContext { alphas: al, d, depth, pc: *pc, e })
}

impl MWZetaContext {
    /// Coefficients of `e_k` as a polynomial in `s`.
    pub fn e_coeffs(&self, k: usize) -> &[Float] {
        &self.e[k][..=k]
    }

    /// `(e_k(s), e_k'(s))`.
    pub fn e_k(&self, k: usize, s: &Complex) -> (Complex, Complex) {
        let bits = self.pc.bits();
        let c = &self.e[k];
        let mut v = Complex::with_val(bits, 0);
        let mut dv = Complex::with_val(bits, 0);
        for i in (0..=k).rev() {
            dv *= s;
            dv += &v;
            v *= s;
            v += &c[i];
        }
        (v, dv)
    }

    fn is_identically_zero(&self, k: usize) -> bool {
        self.e[k].iter().all(|c| c.is_zero())
    }

    // [t^k] prod (1 - alpha t)^{-sigma}, dominating |e_k(s)| for |s| <= sigma
    fn majorant(&self, k: usize, sigma: f64) -> Float {
        let bits = self.pc.bits();
        let mut v = Float::with_val(bits, 0);
        let sg = Float::with_val(bits, sigma);
        for i in (0..=k).rev() {
            v *= &sg;
            v += Float::with_val(bits, self.e[k][i].abs_ref());
        }
        v
    }

    pub fn max_alpha(&self) -> Float {
        self.alphas.iter().fold(Float::with_val(self.pc.bits(), 0), |m, a| m.max(a))
    }

    pub fn sum_alpha(&self) -> Float {
        self.alphas.iter().fold(Float::with_val(self.pc.bits(), 0), |m, a| m + a)
    }

    // log(n prod (n + alpha_j))
    fn log_weight(&self, n: u64) -> Float {
        let bits = self.pc.bits();
        let mut acc = Float::with_val(bits, n).ln();
        for a in &self.alphas {
            acc += Float::with_val(bits, a + n).ln();
        }
        acc
    }

    // Head length so the dropped part of the expansion stays below
    // 10^(-digits-5).
    fn choose_n0(&self, s: &Complex) -> u64 {
        let amax = self.max_alpha().to_f64();
        if amax == 0.0 {
            return 1;
        }
        let k = self.depth;
        let re = self.d as f64 * s.real().to_f64() + k as f64 + 1.0;
        let mk = self.majorant(k + 1, cabs(s).to_f64()).to_f64();
        let target = -(self.pc.digits as f64 + 5.0) * std::f64::consts::LN_10;
        let mut n = (2.0 * amax).ceil() + 2.0;
        loop {
            let b = (2.0 * mk).ln() - re * n.ln() + (1.0 + n / (re - 1.0)).ln();
            if mk == 0.0 || b < target || n > 1e7 {
                return n as u64;
            }
            n = (n * 1.5).ceil();
        }
    }
}

/// Continued value `zeta(s, alpha)`.
pub fn mw_zeta(ctx: &MWZetaContext, s: &Complex) -> Result<Complex> {
    let pc = &ctx.pc;
    let bits = pc.bits();
    let d = ctx.d as u32;
    let ds = Complex::with_val(bits, s * d);
    let k_max = ctx.depth;
    if ds.real().to_f64() + k_max as f64 <= 1.05 {
        return Err(Error::InsufficientDepth(format!("Re(ds) + K <= 1.05 at s = {}", fmt_complex(s, 12))));
    }
    let tol = pc.tol_half();
    let n0 = ctx.choose_n0(s);
    let mut total = Complex::with_val(bits, 0);
    for n in 1..n0 {
        let lw = ctx.log_weight(n);
        total += (-Complex::with_val(bits, s * &lw)).exp();
    }
    for k in 0..=k_max {
        if ctx.is_identically_zero(k) {
            continue;
        }
        let w = Complex::with_val(bits, &ds + k as u32);
        let (ek, dek) = ctx.e_k(k, s);
        let wm1 = Complex::with_val(bits, &w - 1u32);
        if cabs(&wm1) < tol {
            if cabs(&ek) < tol {
                // removable: e_k vanishes at the pole of Z
                total += dek / d;
                continue;
            }
            return Err(Error::NearPole(fmt_complex(s, 20)));
        }
        if ek.is_zero() {
            continue;
        }
        let (z, _) = hurwitz_tail(&w, n0, pc)?;
        total += ek * z;
    }
    Ok(total)
}

/// Residue at the candidate pole `(1 - m)/d`; `m = 0` is the pole at `1/d`.
pub fn mw_zeta_residue(ctx: &MWZetaContext, m: usize) -> Float {
    let pc = &ctx.pc;
    let bits = pc.bits();
    let d = ctx.d;
    if m == 0 {
        return Float::with_val(bits, 1) / d as u32;
    }
    assert!(m <= ctx.depth, "residue index beyond continuation depth");
    // analytic at the non-positive integers
    if (m - 1) % d == 0 {
        return Float::with_val(bits, 0);
    }
    let p = Float::with_val(bits, 1 - m as i64) / d as u32;
    let (e, _) = ctx.e_k(m, &pc.complex((&p, 0)));
    if cabs(&e) < pc.tol_half() {
        return Float::with_val(bits, 0);
    }
    Float::with_val(bits, e.real() / d as u32)
}

/// `zeta(0, alpha) = zeta(0) - (1/d) sum alpha_j`, checked against the
/// continuation.
pub fn mw_zeta_zero(ctx: &MWZetaContext) -> Result<Float> {
    let pc = &ctx.pc;
    let bits = pc.bits();
    let closed = Float::with_val(bits, -0.5) - ctx.sum_alpha() / ctx.d as u32;
    let v = mw_zeta(ctx, &pc.complex(0))?;
    let diff = cabs(&Complex::with_val(bits, &v - &closed));
    if diff > pc.tol_half() {
        return Err(Error::ClosedFormMismatch(fmt_float(&diff, 10)));
    }
    Ok(closed)
}

/// `zeta'(0, alpha)` by differentiating the continuation term by term,
/// checked against a central difference of [`mw_zeta`].
pub fn mw_zeta_deriv_zero(ctx: &MWZetaContext) -> Result<Float> {
    let pc = &ctx.pc;
    let bits = pc.bits();
    let analytic = deriv_zero_analytic(ctx)?;
    let h = pc.pow10_neg(pc.digits as f64 / 4.0);
    let zp = mw_zeta(ctx, &pc.complex((&h, 0)))?;
    let zm = mw_zeta(ctx, &pc.complex((-h.clone(), 0)))?;
    let fd = Float::with_val(bits, zp.real() - zm.real()) / (h * 2u32);
    let diff = Float::with_val(bits, &fd - &analytic).abs();
    if diff > pc.pow10_neg(pc.digits as f64 / 4.0) {
        return Err(Error::DerivativeMismatch(fmt_float(&diff, 10)));
    }
    Ok(analytic)
}

fn deriv_zero_analytic(ctx: &MWZetaContext) -> Result<Float> {
    let pc = &ctx.pc;
    let bits = pc.bits();
    let amax = ctx.max_alpha().to_f64();
    // the k-sum below drops terms of size (amax/N0)^K
    let n0 = if amax == 0.0 {
        1
    } else {
        let r = 10f64.powf((pc.digits as f64 + 5.0) / ctx.depth as f64);
        (amax * r).ceil() as u64 + 1
    };
    let mut v = Float::with_val(bits, 0);
    for n in 1..n0 {
        v -= ctx.log_weight(n);
    }
    let (_, dz0) = hurwitz_tail(&pc.complex(0), n0, pc)?;
    v += Float::with_val(bits, dz0.real() * ctx.d as u32);
    // e_1(s) Z(ds+1; N0): the pole of Z cancels against e_1(0) = 0 and leaves
    // e_1'(0) times the constant term -psi(N0)
    let psi = crate::specfun::gamma::digamma_positive_integer(n0, pc);
    v -= Float::with_val(bits, &ctx.e[1][1] * &psi);
    for k in 2..=ctx.depth {
        if ctx.e[k][1].is_zero() {
            continue;
        }
        let (z, _) = hurwitz_tail(&pc.complex(k as u32), n0, pc)?;
        v += Float::with_val(bits, &ctx.e[k][1] * z.real());
    }
    Ok(v)
}

/// `zeta(s, alpha)` from the defining series, independent of the expansion
/// above. Sums `n < N` directly and closes the tail with Euler-Maclaurin;
/// the integral part is a quadrature. Returns the value and an error
/// estimate.
pub fn mw_zeta_direct(alphas: &[Float], s: &Complex, n_terms: u64, pc: &PrecisionConfig) -> Result<(Complex, Float)> {
    let bits = pc.bits();
    let d = alphas.len() + 1;
    let sigma_s = s.real().to_f64();
    if sigma_s <= 1.0 / d as f64 + 0.05 {
        return Err(Error::DomainError(format!("Re(s) = {sigma_s} too close to 1/d")));
    }
    if alphas.iter().any(|a| *a < 0) {
        return Err(Error::NegativeAlpha("direct series needs alpha >= 0".into()));
    }
    let ds = Complex::with_val(bits, s * d as u32);
    let sigma = ds.real().to_f64();
    let target = -(pc.digits as f64 + 5.0) * std::f64::consts::LN_10;

    let g_at = |n: &Float| -> Complex {
        let mut lw = Float::with_val(bits, n.ln_ref());
        for a in alphas {
            lw += Float::with_val(bits, a + n).ln();
        }
        (-Complex::with_val(bits, s * &lw)).exp()
    };

    // plain sum when the tail bound sum_{n>M} n^{-sigma} dies fast enough
    let bound = |m: f64| (1.0 - sigma) * m.ln() - (sigma - 1.0).ln();
    let n_em = n_terms.max((0.5 * pc.digits as f64 + cabs(&ds).to_f64() + 10.0).ceil() as u64);
    let mut m_plain = 2.0f64;
    while bound(m_plain) > target && m_plain < 2.0 * n_em as f64 {
        m_plain *= 1.2;
    }
    if bound(m_plain) <= target {
        let m = m_plain.ceil() as u64;
        let mut v = Complex::with_val(bits, 0);
        for n in 1..=m {
            v += g_at(&Float::with_val(bits, n));
        }
        let err = Float::with_val(bits, bound(m_plain)).exp();
        return Ok((v, err));
    }

    let mut v = Complex::with_val(bits, 0);
    for n in 1..n_em {
        v += g_at(&Float::with_val(bits, n));
    }
    let nf = Float::with_val(bits, n_em);
    let g_n = g_at(&nf);

    // Taylor coefficients of g(N + t) / g(N)
    let kmax = pc.digits as usize;
    let order = 2 * kmax;
    let mut h = vec![Complex::with_val(bits, 0); order + 1];
    let mut betas = vec![Float::with_val(bits, 0)];
    betas.extend(alphas.iter().cloned());
    for b in &betas {
        let inv = Float::with_val(bits, 1) / Float::with_val(bits, &nf + b);
        let mut p = inv.clone();
        for (j, hj) in h.iter_mut().enumerate().skip(1) {
            // -s (-1)^{j-1} / (j (N+b)^j)
            let c = Float::with_val(bits, &p / j as u32);
            let t = Complex::with_val(bits, s * &c);
            if j % 2 == 1 {
                *hj -= t;
            } else {
                *hj += t;
            }
            p *= &inv;
        }
    }
    let taylor = series_exp(&TruncatedSeries::new("t", h))?;

    // Euler-Maclaurin correction
    let bern = bernoulli_even(kmax);
    let eps = Float::with_val(bits, cabs(&g_n) * pc.eps(5));
    v += Complex::with_val(bits, &g_n / 2u32);
    let mut last = Float::with_val(bits, 0);
    let mut converged = false;
    for k in 1..kmax {
        // B_{2k}/(2k)! g^{(2k-1)}(N) = B_{2k}/(2k) g(N) c_{2k-1}
        let c = Float::with_val(bits, &bern[k]) / (2 * k) as u32;
        let term = Complex::with_val(bits, &taylor.coeffs[2 * k - 1] * &g_n) * &c;
        last = cabs(&term);
        v -= term;
        if last < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(kmax));
    }

    // int_N^inf g = N^{1-ds} [1/(ds-1) + int_0^inf e^{-(ds-1)u} (P(u) - 1) du]
    // with P(u) = prod (1 + alpha e^{-u}/N)^{-s}
    let dsm1 = Complex::with_val(bits, &ds - 1u32);
    let mut inner = Complex::with_val(bits, 1) / &dsm1;
    let mut qerr = Float::with_val(bits, 0);
    if alphas.iter().any(|a| !a.is_zero()) {
        let rule = gauss_legendre(30, bits);
        let width = (2.0 / sigma).min(1.0);
        let u_end = (-target + 10.0) / sigma + 1.0;
        let panels = (u_end / width).ceil() as usize;
        let tol = Float::with_val(bits, pc.eps(5) / panels as u32);
        let mut budget = 50 * panels;
        let mut f = |u: &Float| -> Result<Complex> {
            let x = Float::with_val(bits, -u).exp() / &nf;
            let mut lp = Float::with_val(bits, 0);
            for a in alphas {
                lp += Float::with_val(bits, Float::with_val(bits, a * &x) + 1u32).ln();
            }
            let p = (-Complex::with_val(bits, s * &lp)).exp();
            let damp = (-Complex::with_val(bits, &dsm1 * u)).exp();
            Ok(Complex::with_val(bits, p - 1u32) * damp)
        };
        let w = Float::with_val(bits, width);
        for i in 0..panels {
            let a = Float::with_val(bits, &w * i as u32);
            let b = Float::with_val(bits, &a + &w);
            let (val, e) = adaptive(&mut f, &a, &b, &tol, &rule, &mut budget)?;
            inner += val;
            qerr += e;
        }
    }
    let lnn = Float::with_val(bits, nf.ln_ref());
    let scale = (-Complex::with_val(bits, &dsm1 * &lnn)).exp();
    qerr *= cabs(&scale);
    v += inner * scale;
    Ok((v, last + qerr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::series::gen_binom;

    fn pc() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn ctx(al: &[f64], pc: &PrecisionConfig) -> MWZetaContext {
        let a: Vec<Float> = al.iter().map(|&x| pc.float(x)).collect();
        build_context(&a, al.len() + 1, DEFAULT_DEPTH, pc).unwrap()
    }

    fn close(a: &Complex, b: &Complex, tol: &Float) -> bool {
        cabs(&Complex::with_val(a.prec(), a - b)) < *tol
    }

    // e_k(s) by summing over compositions k_1 + ... + k_{d-1} = k
    fn e_k_compositions(al: &[Float], k: usize, s: &Complex, pc: &PrecisionConfig) -> Complex {
        fn rec(al: &[Float], k: usize, s: &Complex, pc: &PrecisionConfig) -> Complex {
            let bits = pc.bits();
            if al.is_empty() {
                return if k == 0 { pc.complex(1) } else { pc.complex(0) };
            }
            let mut acc = pc.complex(0);
            for kj in 0..=k {
                // binom(-s, kj) alpha^kj as a complex generalized binomial
                let mut b = pc.complex(1);
                for i in 0..kj {
                    let f = Complex::with_val(bits, -Complex::with_val(bits, s + i as u32));
                    b *= f;
                    b /= (i + 1) as u32;
                }
                b *= al[0].clone().pow(kj as u32);
                acc += b * rec(&al[1..], k - kj, s, pc);
            }
            acc
        }
        rec(al, k, s, pc)
    }

    #[test]
    fn zero_roots_give_riemann_zeta() {
        let pc = pc();
        let c = ctx(&[0.0], &pc);
        assert_eq!(c.e_coeffs(0).len(), 1);
        for k in 1..=10 {
            assert!(c.e_coeffs(k).iter().all(|x| x.is_zero()));
        }
        let v = mw_zeta(&c, &pc.complex(1)).unwrap();
        let want = pc.pi().square() / 6u32;
        assert!(close(&v, &pc.complex((&want, 0)), &pc.eps(-5)));
        let v = mw_zeta(&c, &pc.complex(-1)).unwrap();
        assert!(cabs(&v) < pc.eps(-5));
    }

    #[test]
    fn first_coefficients() {
        let pc = pc();
        let c = ctx(&[0.5], &pc);
        // e_1(s) = -s/2
        assert!(c.e_coeffs(1)[0].is_zero());
        assert_eq!(c.e_coeffs(1)[1].to_f64(), -0.5);
        let c = ctx(&[0.0, 0.5], &pc);
        assert_eq!(c.e_coeffs(1)[1].to_f64(), -0.5);
    }

    #[test]
    fn coefficients_match_compositions() {
        let pc = PrecisionConfig::new(40).unwrap();
        let al: Vec<Float> = [0.5, 1.25, 0.0].iter().map(|&x| pc.float(x)).collect();
        let c = build_context(&al, 4, 12, &pc).unwrap();
        for (re, im) in [(0.3, 0.0), (-1.7, 2.2), (2.0, -0.5)] {
            let s = pc.complex((re, im));
            for k in 0..=12 {
                let (a, _) = c.e_k(k, &s);
                let b = e_k_compositions(&al, k, &s, &pc);
                assert!(close(&a, &b, &pc.eps(-8)), "k={k}");
            }
        }
    }

    #[test]
    fn coefficient_degree_bound() {
        let pc = pc();
        let c = ctx(&[0.5, 2.0], &pc);
        for k in 0..=20 {
            assert_eq!(c.e_coeffs(k).len(), k + 1);
        }
        // e_0 is the constant 1
        assert_eq!(c.e_coeffs(0)[0].to_f64(), 1.0);
    }

    #[test]
    fn build_errors() {
        let pc = pc();
        let bad = [pc.float(-0.5)];
        assert!(matches!(build_context(&bad, 2, 40, &pc), Err(Error::NegativeAlpha(_))));
        let ok = [pc.float(0.5)];
        assert!(matches!(build_context(&ok, 2, 80, &pc), Err(Error::InsufficientDepth(_))));
    }

    #[test]
    fn direct_examples() {
        let pc = pc();
        let one = pc.complex(1);
        let (v, _) = mw_zeta_direct(&[pc.float(0)], &one, 30, &pc).unwrap();
        let want = pc.pi().square() / 6u32;
        assert!(close(&v, &pc.complex((&want, 0)), &pc.eps(-6)));
        // sum 1/(n (n + 1/2)) = 4 - 4 ln 2
        let (v, _) = mw_zeta_direct(&[pc.float(0.5)], &one, 30, &pc).unwrap();
        let want = Float::with_val(pc.bits(), 4 - pc.float(2).ln() * 4u32);
        assert!(close(&v, &pc.complex((&want, 0)), &pc.eps(-6)));
        // sum 1/(n (n+1)^2) = 2 - zeta(2)
        let (v, _) = mw_zeta_direct(&[pc.float(1), pc.float(1)], &one, 30, &pc).unwrap();
        let want = Float::with_val(pc.bits(), 2 - pc.pi().square() / 6u32);
        assert!(close(&v, &pc.complex((&want, 0)), &pc.eps(-6)));
    }

    #[test]
    fn direct_rejects_strip() {
        let pc = pc();
        assert!(matches!(
            mw_zeta_direct(&[pc.float(0.5)], &pc.complex(0.52), 30, &pc),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn continuation_matches_direct() {
        let pc = pc();
        let c = ctx(&[0.5], &pc);
        for (re, im) in [(0.7, 0.0), (1.3, 4.0), (0.65, -2.5)] {
            let s = pc.complex((re, im));
            let a = mw_zeta(&c, &s).unwrap();
            let (b, _) = mw_zeta_direct(&c.alphas, &s, 30, &pc).unwrap();
            assert!(close(&a, &b, &pc.pow10_neg(pc.digits as f64 / 2.0)), "s=({re},{im})");
        }
    }

    #[test]
    fn closed_form_at_zero() {
        let pc = pc();
        assert_eq!(mw_zeta_zero(&ctx(&[0.0], &pc)).unwrap().to_f64(), -0.5);
        assert_eq!(mw_zeta_zero(&ctx(&[0.5], &pc)).unwrap().to_f64(), -0.75);
        let z = mw_zeta_zero(&ctx(&[0.0, 0.5], &pc)).unwrap();
        assert!((z.to_f64() + 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn residues() {
        let pc = pc();
        let c = ctx(&[0.5], &pc);
        assert_eq!(mw_zeta_residue(&c, 0).to_f64(), 0.5);
        // e_2(-1/2) = binom(1/2, 2)/4 = -1/32, so c_2 = -1/64
        let b = gen_binom(&pc.float(0.5), 2) / 4u32;
        assert_eq!(b.to_f64(), -1.0 / 32.0);
        assert_eq!(mw_zeta_residue(&c, 2).to_f64(), -1.0 / 64.0);
        assert!(mw_zeta_residue(&c, 3).is_zero());
        assert!(mw_zeta_residue(&ctx(&[0.0], &pc), 2).is_zero());
        // cubic example: c_2 = -1/108
        let c = ctx(&[0.0, 0.5], &pc);
        assert!((mw_zeta_residue(&c, 2).to_f64() + 1.0 / 108.0).abs() < 1e-16);
    }

    #[test]
    fn residue_as_limit() {
        let pc = pc();
        let c = ctx(&[0.5], &pc);
        let delta = pc.pow10_neg(18.0);
        for m in [0usize, 2, 4] {
            let p = Float::with_val(pc.bits(), 1 - m as i64) / 2u32;
            let s = pc.complex((Float::with_val(pc.bits(), &p + &delta), 0));
            let v = mw_zeta(&c, &s).unwrap() * &delta;
            let r = mw_zeta_residue(&c, m);
            assert!((v.real().to_f64() - r.to_f64()).abs() < 1e-15, "m={m}");
        }
    }

    #[test]
    fn near_pole_rejected() {
        let pc = pc();
        let c = ctx(&[0.5], &pc);
        assert!(matches!(mw_zeta(&c, &pc.complex(0.5)), Err(Error::NearPole(_))));
    }

    #[test]
    fn derivative_at_zero() {
        let pc = pc();
        let v = mw_zeta_deriv_zero(&ctx(&[0.0], &pc)).unwrap();
        let want = -pc.ln2pi();
        assert!(Float::with_val(pc.bits(), &v - &want).abs() < pc.eps(-6));
        let v = mw_zeta_deriv_zero(&ctx(&[0.0, 0.0], &pc)).unwrap();
        let want = -pc.ln2pi() * 3u32 / 2u32;
        assert!(Float::with_val(pc.bits(), &v - &want).abs() < pc.eps(-6));
        mw_zeta_deriv_zero(&ctx(&[0.5], &pc)).unwrap();
        let v = mw_zeta_deriv_zero(&ctx(&[0.0, 0.5], &pc)).unwrap();
        assert!((v.to_f64() + 2.877_597_837_249_263).abs() < 1e-13);
    }

    #[test]
    fn depth_stability() {
        let pc = pc();
        let al = [pc.float(0.5), pc.float(1.5)];
        let a = build_context(&al, 3, 40, &pc).unwrap();
        let b = build_context(&al, 3, 60, &pc).unwrap();
        for (re, im) in [(0.2, 0.0), (-0.7, 1.0), (1.1, -3.0)] {
            let s = pc.complex((re, im));
            let va = mw_zeta(&a, &s).unwrap();
            let vb = mw_zeta(&b, &s).unwrap();
            assert!(close(&va, &vb, &pc.tol_half()));
        }
    }
}
