//! Input polynomial: parsing, hypothesis checks and the roots `alpha_j` of
//! `f(y) - a_0 = a_d y prod_j (y + alpha_j)`.

use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::precision::{fmt_float, PrecisionConfig};

/// Validated integer polynomial, coefficients low to high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialSpec {
    coeffs: Vec<i64>,
}

/// Outcome of every hypothesis check, individually.
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub a1_zero: bool,
    pub a0_nonneg: bool,
    /// a_{d-1}/a_d, which equals the sum of the alphas.
    pub ratio_ad1_ad: Float,
    pub ratio_lt_half_d: bool,
    pub a0_over_ad_lt_1: bool,
    pub roots_real_nonneg: bool,
    pub nonconstant_mod_small_primes: bool,
    pub overall: bool,
    /// Roots when they were all found real.
    pub roots: Option<RootData>,
}

/// The `d - 1` values `alpha_j`, ascending, with repeats for multiple roots.
#[derive(Debug, Clone)]
pub struct RootData {
    pub alphas: Vec<Float>,
    /// max |f(-alpha_j) - a_0|
    pub residual: Float,
}

impl PolynomialSpec {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `y^i` (0 past the degree).
    pub fn a(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs[self.degree()]
    }

    /// Exact value at an integer.
    pub fn eval_integer(&self, y: i64) -> Integer {
        let mut acc = Integer::new();
        for &c in self.coeffs.iter().rev() {
            acc *= y;
            acc += c;
        }
        acc
    }

    /// Value at an integer if it fits in i128.
    pub fn eval_i128(&self, y: i64) -> Option<i128> {
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(y as i128)?.checked_add(c as i128)?;
        }
        Some(acc)
    }

    /// `f(y) mod q` in `0..q`.
    pub fn eval_mod(&self, y: u64, q: u64) -> u64 {
        let q = q as i128;
        let y = (y as i128) % q;
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * y + (c as i128).rem_euclid(q)) % q;
        }
        acc as u64
    }

    pub fn eval_float(&self, x: &Float) -> Float {
        let mut acc = Float::with_val(x.prec(), 0);
        for &c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_deriv_float(&self, x: &Float) -> Float {
        let mut acc = Float::with_val(x.prec(), 0);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc *= x;
            acc += c * i as i64;
        }
        acc
    }

    /// Coefficients as a comma-separated string, the CLI input format.
    pub fn to_csv(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl std::fmt::Display for PolynomialSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match i {
                0 => format!("{c}"),
                1 if c == 1 => "y".to_string(),
                1 => format!("{c}y"),
                _ if c == 1 => format!("y^{i}"),
                _ => format!("{c}y^{i}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

/// Builds a spec from coefficients `a_0..a_d`, trimming trailing zeros.
pub fn parse_polynomial(coeffs: &[i64]) -> Result<PolynomialSpec> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0 {
        c.pop();
    }
    let d = c.len().saturating_sub(1);
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    if c[d] < 1 {
        return Err(Error::NonPositiveLeading(c[d]));
    }
    let g = c.iter().fold(0i64, |g, &x| gcd(g, x.abs()));
    if g != 1 {
        return Err(Error::GcdViolation(g));
    }
    Ok(PolynomialSpec { coeffs: c })
}

/// Parses `"0,0,1"` style input.
pub fn parse_poly_str(s: &str) -> Result<PolynomialSpec> {
    let coeffs = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    parse_polynomial(&coeffs)
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)).collect()
}

/// Checks every hypothesis on f independently.
pub fn validate_hypotheses(spec: &PolynomialSpec, pc: &PrecisionConfig) -> Result<HypothesisReport> {
    let d = spec.degree();
    let ad = spec.leading();
    let ad1 = spec.a(d - 1);
    let a1_zero = spec.a(1) == 0;
    let a0_nonneg = spec.a(0) >= 0;
    let ratio_ad1_ad = pc.float(ad1) / ad;
    // a_{d-1}/a_d < d/2, exactly
    let ratio_lt_half_d = 2 * (ad1 as i128) < d as i128 * ad as i128;
    let a0_over_ad_lt_1 = spec.a(0) < ad;
    let nonconstant_mod_small_primes = primes_up_to(d as u64).into_iter().all(|p| {
        let v0 = spec.eval_mod(0, p);
        (1..p).any(|y| spec.eval_mod(y, p) != v0)
    });
    let (roots_real_nonneg, roots) = match compute_roots(spec, pc) {
        Ok(r) => {
            let neg_tol = -pc.tol_half();
            (r.alphas.iter().all(|a| *a >= neg_tol), Some(r))
        }
        Err(Error::ComplexRoot { .. }) | Err(Error::NegativeRootBelowMinusOne(_)) => (false, None),
        Err(e) => return Err(e),
    };
    let overall = a1_zero
        && a0_nonneg
        && ratio_lt_half_d
        && a0_over_ad_lt_1
        && roots_real_nonneg
        && nonconstant_mod_small_primes;
    Ok(HypothesisReport {
        a1_zero,
        a0_nonneg,
        ratio_ad1_ad,
        ratio_lt_half_d,
        a0_over_ad_lt_1,
        roots_real_nonneg,
        nonconstant_mod_small_primes,
        overall,
        roots,
    })
}

/// Roots of the cofactor `(f(y) - a_0) / (a_d y)`, negated.
pub fn compute_roots(spec: &PolynomialSpec, pc: &PrecisionConfig) -> Result<RootData> {
    let bits = pc.bits();
    let d = spec.degree();
    let tol = pc.tol_half();
    // exact cofactor a_1 + a_2 y + ... + a_d y^{d-1}
    let cof: Vec<i64> = spec.coeffs[1..].to_vec();
    let zeros = cof.iter().take_while(|&&c| c == 0).count();
    let rest: Vec<Float> = cof[zeros..].iter().map(|&c| Float::with_val(bits, c)).collect();
    let mut roots = real_roots(&rest, pc);
    let expected = d - 1 - zeros;
    if roots.len() < expected {
        return Err(Error::ComplexRoot { found: roots.len() + zeros, expected: d - 1 });
    }
    roots.truncate(expected);
    let mut alphas: Vec<Float> = roots.into_iter().map(|r| -r).collect();
    alphas.extend((0..zeros).map(|_| Float::with_val(bits, 0)));
    alphas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if let Some(bad) = alphas.iter().find(|a| **a <= -1) {
        return Err(Error::NegativeRootBelowMinusOne(fmt_float(bad, 20)));
    }
    let a0 = spec.a(0);
    let mut residual = Float::with_val(bits, 0);
    let mut scale = Float::with_val(bits, 1);
    for a in &alphas {
        let x = Float::with_val(bits, -a);
        let r = Float::with_val(bits, spec.eval_float(&x) - a0).abs();
        let mut s = Float::with_val(bits, 0);
        let ax = Float::with_val(bits, x.abs_ref());
        for &c in spec.coeffs.iter().rev() {
            s *= &ax;
            s += c.abs();
        }
        scale = scale.max(&s);
        residual = residual.max(&r);
    }
    if residual > Float::with_val(bits, &tol * &scale) {
        return Err(Error::RootFindingFailed(fmt_float(&residual, 10)));
    }
    Ok(RootData { alphas, residual })
}

/// Real roots of a real polynomial (low to high), with multiplicity,
/// ascending. Rolle recursion: the roots of `p'` split the line into
/// monotone pieces; a critical point where `p` vanishes is a multiple root.
pub(crate) fn real_roots(p: &[Float], pc: &PrecisionConfig) -> Vec<Float> {
    let bits = pc.bits();
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-(Float::with_val(bits, &p[0] / &p[1]))];
    }
    let dp: Vec<Float> = p.iter().enumerate().skip(1).map(|(i, c)| Float::with_val(bits, c * i as u32)).collect();
    let crit = real_roots(&dp, pc);
    let tol = pc.tol_half();

    // distinct critical points with their multiplicity in p'
    let mut distinct: Vec<(Float, usize)> = Vec::new();
    for c in crit {
        match distinct.last_mut() {
            Some((last, m)) if Float::with_val(bits, &c - &*last).abs() <= tol => *m += 1,
            _ => distinct.push((c, 1)),
        }
    }

    let lead = p[deg].clone().abs();
    let mut bound = Float::with_val(bits, 0);
    for c in &p[..deg] {
        bound = bound.max(&(Float::with_val(bits, c.abs_ref()) / &lead));
    }
    bound += 1;

    let eval = |x: &Float| -> Float {
        let mut acc = Float::with_val(bits, 0);
        for c in p.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    };
    let abs_scale = |x: &Float| -> Float {
        let ax = Float::with_val(bits, x.abs_ref());
        let mut acc = Float::with_val(bits, 0);
        for c in p.iter().rev() {
            acc *= &ax;
            acc += Float::with_val(bits, c.abs_ref());
        }
        acc
    };
    let vanishes = |x: &Float| eval(x).abs() <= Float::with_val(bits, &tol * &abs_scale(x));

    let mut out = Vec::new();
    let mut pts: Vec<Float> = vec![-bound.clone()];
    for (c, m) in &distinct {
        if vanishes(c) {
            for _ in 0..=*m {
                out.push(c.clone());
            }
        }
        pts.push(c.clone());
    }
    pts.push(bound);
    for w in pts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if vanishes(a) || vanishes(b) {
            continue;
        }
        let fa = eval(a);
        let fb = eval(b);
        if fa.is_sign_negative() == fb.is_sign_negative() {
            continue;
        }
        out.push(bisect(&eval, a.clone(), b.clone(), fa.is_sign_negative(), bits));
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

fn bisect<F: Fn(&Float) -> Float>(eval: &F, mut lo: Float, mut hi: Float, lo_neg: bool, bits: u32) -> Float {
    for _ in 0..(bits + 8) {
        let mid = Float::with_val(bits, &lo + &hi) / 2u32;
        if mid == lo || mid == hi {
            break;
        }
        let v = eval(&mid);
        if v.is_zero() {
            return mid;
        }
        if v.is_sign_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Float::with_val(bits, &lo + &hi) / 2u32
}

/// The inverse of `f` on `[0, inf)`: returns `x >= 0` with `f(x) = u`.
pub fn inverse_psi(spec: &PolynomialSpec, u: &Float, pc: &PrecisionConfig) -> Result<Float> {
    let bits = pc.bits();
    let f0 = spec.a(0);
    if *u < f0 {
        return Err(Error::OutOfRange(format!("u = {} below f(0) = {f0}", fmt_float(u, 12))));
    }
    let mut hi = Float::with_val(bits, 1);
    while spec.eval_float(&hi) < *u {
        hi *= 2u32;
    }
    let mut lo = Float::with_val(bits, 0);
    // bisection to about half precision, Newton for the rest
    for _ in 0..(bits / 2) {
        let mid = Float::with_val(bits, &lo + &hi) / 2u32;
        if spec.eval_float(&mid) < *u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = Float::with_val(bits, &lo + &hi) / 2u32;
    for _ in 0..8 {
        let fx = Float::with_val(bits, spec.eval_float(&x) - u);
        let dfx = spec.eval_deriv_float(&x);
        if dfx.is_zero() {
            break;
        }
        let step = fx / dfx;
        let next = Float::with_val(bits, &x - &step);
        if next < lo || next > hi {
            break;
        }
        x = next;
    }
    Ok(x)
}
