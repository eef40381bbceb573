//! Complete exponential sums, the oscillatory integral `v_f`, major-arc
//! approximation and the arc layout on `[-X^{1/d-1}, 1 - X^{1/d-1}]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use crate::error::{Error, Result};
use crate::phi::{default_n_max, phi_direct};
use crate::poly::{gcd, inverse_psi, primes_up_to, PolynomialSpec};
use crate::precision::{cabs, fmt_float, PrecisionConfig};
use crate::specfun::quad::{adaptive, gauss_legendre};

/// `e(k/q)` for `k = 0..q`.
fn unit_roots(q: u64, pc: &PrecisionConfig) -> Vec<Complex> {
    let bits = pc.bits();
    let two_pi = Float::with_val(bits, pc.pi() * 2u32);
    (0..q)
        .map(|k| {
            let t = Float::with_val(bits, &two_pi * k) / q;
            let (s, c) = t.sin_cos(Float::new(bits));
            Complex::with_val(bits, (c, s))
        })
        .collect()
}

fn reduce(v: i128, q: u64) -> u64 {
    v.rem_euclid(q as i128) as u64
}

// phase histogram of a f(y) + b y mod q, then one pass over the roots
fn sum_with_roots(spec: &PolynomialSpec, q: u64, a: i64, b: i64, roots: &[Complex], pc: &PrecisionConfig) -> Complex {
    let mut count = vec![0u64; q as usize];
    let a = reduce(a as i128, q) as u128;
    let b = reduce(b as i128, q) as u128;
    for y in 1..=q {
        let fy = spec.eval_mod(y, q) as u128;
        let k = (a * fy + b * (y as u128 % q as u128)) % q as u128;
        count[k as usize] += 1;
    }
    let mut s = Complex::with_val(pc.bits(), 0);
    for (k, c) in count.iter().enumerate() {
        if *c != 0 {
            s += Complex::with_val(pc.bits(), &roots[k] * *c);
        }
    }
    s
}

/// `S(q, a, b) = sum_{y=1}^{q} e((a f(y) + b y)/q)`.
pub fn exp_sum(spec: &PolynomialSpec, q: u64, a: i64, b: i64, pc: &PrecisionConfig) -> Complex {
    assert!(q >= 1);
    let roots = unit_roots(q, pc);
    sum_with_roots(spec, q, a, b, &roots, pc)
}

#[derive(Debug, Clone)]
pub struct CfEstimate {
    pub value: Float,
    pub q: u64,
    pub a: u64,
}

/// `max |S(q, a, 0)|/q` over `2 <= q <= q_max`, `gcd(a, q) = 1`.
pub fn estimate_cf(spec: &PolynomialSpec, q_max: u64, pc: &PrecisionConfig) -> CfEstimate {
    assert!(q_max >= 2);
    let mut best = CfEstimate { value: pc.float(-1), q: 0, a: 0 };
    for q in 2..=q_max {
        let roots = unit_roots(q, pc);
        for a in 1..q {
            if gcd(a as i64, q as i64) != 1 {
                continue;
            }
            let v = cabs(&sum_with_roots(spec, q, a as i64, 0, &roots, pc)) / q;
            if v > best.value {
                best = CfEstimate { value: v, q, a };
            }
        }
    }
    best
}

#[derive(Debug, Clone)]
pub struct WeylFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(q, max |S|)` per prime
    pub points: Vec<(u64, f64)>,
}

/// Least-squares slope of `log max_{a,b} |S(q,a,b)|` against `log q` over odd
/// primes `q <= q_max`, with `samples` random `b` per prime (plus `b = 0`).
pub fn weyl_exponent_fit(spec: &PolynomialSpec, q_max: u64, samples: usize, seed: u64, pc: &PrecisionConfig) -> Result<WeylFit> {
    if q_max < 10 {
        return Err(Error::OutOfRange(format!("q_max = {q_max} below 10")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::new();
    for q in primes_up_to(q_max) {
        if q < 3 {
            continue;
        }
        let roots = unit_roots(q, pc);
        let mut bs = vec![0i64];
        for _ in 0..samples {
            bs.push(rng.gen_range(0..q) as i64);
        }
        let mut m = 0f64;
        for a in 1..q {
            for &b in &bs {
                m = m.max(cabs(&sum_with_roots(spec, q, a as i64, b, &roots, pc)).to_f64());
            }
        }
        points.push((q, m));
    }
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.max(1e-300).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(WeylFit { slope, intercept: my - slope * mx, points })
}

/// `v_f(beta) = int_0^{psi(U)} e(beta f(g)) dg` with an error estimate.
pub fn v_integral(spec: &PolynomialSpec, u: &Float, beta: &Float, pc: &PrecisionConfig) -> Result<(Complex, Float)> {
    let bits = pc.bits();
    let f1 = pc.float(spec.eval_integer(1));
    if *u <= f1 {
        return Err(Error::OutOfRange(format!("U = {} not above f(1)", fmt_float(u, 12))));
    }
    let psi = inverse_psi(spec, u, pc)?;
    if beta.is_zero() {
        return Ok((Complex::with_val(bits, (&psi, 0)), pc.float(0)));
    }
    // panels no wider than about one oscillation at the top end
    let fp = spec.eval_deriv_float(&psi).abs();
    let osc = Float::with_val(bits, beta.abs_ref()) * &fp;
    let panels = (osc.to_f64() * psi.to_f64()).ceil().max(1.0) as usize;
    if panels > 1 << 22 {
        return Err(Error::QuadratureBudgetExceeded(panels));
    }
    let rule = gauss_legendre(30, bits);
    let two_pi_beta = Float::with_val(bits, pc.pi() * 2u32) * beta;
    let mut f = |g: &Float| -> Result<Complex> {
        let t = Float::with_val(bits, &two_pi_beta * spec.eval_float(g));
        let (s, c) = t.sin_cos(Float::new(bits));
        Ok(Complex::with_val(bits, (c, s)))
    };
    let tol = Float::with_val(bits, pc.eps(4) / panels as u32);
    let mut budget = 40 * panels + 1000;
    let width = Float::with_val(bits, &psi / panels as u32);
    let mut total = Complex::with_val(bits, 0);
    let mut err = Float::with_val(bits, 0);
    for i in 0..panels {
        let a = Float::with_val(bits, &width * i as u32);
        let b = if i + 1 == panels { psi.clone() } else { Float::with_val(bits, &a + &width) };
        let (v, e) = adaptive(&mut f, &a, &b, &tol, &rule, &mut budget).map_err(|e| match e {
            Error::QuadratureFailure(_) => Error::QuadratureBudgetExceeded(panels),
            other => other,
        })?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

/// `sum_{1 <= y <= psi(U)} e(Theta f(y))` at `Theta = a/q + beta`, with the
/// rational part reduced exactly.
pub fn weyl_sum(spec: &PolynomialSpec, u: &Float, q: u64, a: i64, beta: &Float, pc: &PrecisionConfig) -> Result<Complex> {
    let bits = pc.bits();
    let psi = inverse_psi(spec, u, pc)?;
    let y_max = psi.to_f64().floor() as i64;
    let two_pi = Float::with_val(bits, pc.pi() * 2u32);
    let mut s = Complex::with_val(bits, 0);
    for y in 1..=y_max {
        let fy = spec.eval_integer(y);
        let k = Integer::from(&fy * a).div_rem_euc(Integer::from(q)).1;
        let r = Float::with_val(bits, &k) / q;
        let t = Float::with_val(bits, Float::with_val(bits, &fy * beta) + r) * &two_pi;
        let (sn, c) = t.sin_cos(Float::new(bits));
        s += Complex::with_val(bits, (c, sn));
    }
    Ok(s)
}

/// `|F - V| / (q^{1 - 2^{1-d}} (1 + U |beta|)^{1/2})` with
/// `V = q^{-1} S(q, a, 0) v_f(beta)`.
pub fn major_arc_residual(spec: &PolynomialSpec, u: &Float, q: u64, a: i64, beta: &Float, pc: &PrecisionConfig) -> Result<Float> {
    let bits = pc.bits();
    if gcd(a, q as i64) != 1 {
        return Err(Error::OutOfRange(format!("gcd({a}, {q}) != 1")));
    }
    if Float::with_val(bits, beta.abs_ref()) * q > 1 {
        return Err(Error::OutOfRange("|beta| > 1/q".into()));
    }
    let f = weyl_sum(spec, u, q, a, beta, pc)?;
    let (v, _) = v_integral(spec, u, beta, pc)?;
    let big_v = exp_sum(spec, q, a, 0, pc) * v / q;
    let diff = cabs(&Complex::with_val(bits, &f - &big_v));
    let d = spec.degree() as i32;
    let qe = pc.float(q).pow(pc.float(1.0 - 2f64.powi(1 - d)));
    let ub = Float::with_val(bits, Float::with_val(bits, u * beta).abs() + 1u32).sqrt();
    Ok(diff / qe / ub)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub q: u64,
    pub a: u64,
    /// `a/q` reduced into `[0, 1)`
    pub center: (u64, u64),
    pub half_width: Float,
}

impl Arc {
    fn center_f(&self, bits: u32) -> Float {
        Float::with_val(bits, self.center.0) / self.center.1
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.a, self.q)
    }
}

/// All arcs `a/q`, `1 <= a <= q <= X^{1/d}`, `gcd(a, q) = 1`, without the
/// disjointness check.
pub fn arcs_unchecked(big_x: &Float, d: usize, pc: &PrecisionConfig) -> Result<Vec<Arc>> {
    let bits = pc.bits();
    if *big_x < 2u32.pow(d as u32) {
        return Err(Error::OutOfRange(format!("X = {} below 2^d", fmt_float(big_x, 10))));
    }
    let inv_d = Float::with_val(bits, 1) / d as u32;
    let q_max = big_x.clone().pow(&inv_d);
    // the float root of a perfect power can land just under the integer
    let mut qm = q_max.to_f64().floor() as u64;
    if pc.float(qm + 1).pow(d as u32) <= *big_x {
        qm += 1;
    }
    let w = big_x.clone().pow(Float::with_val(bits, &inv_d - 1u32));
    let mut out = Vec::new();
    for q in 1..=qm {
        for a in 1..=q {
            if gcd(a as i64, q as i64) != 1 {
                continue;
            }
            let center = if a == q { (0, 1) } else { (a, q) };
            out.push(Arc { q, a, center, half_width: Float::with_val(bits, &w / q) });
        }
    }
    Ok(out)
}

/// Overlapping pairs among `arcs`, as points on the circle `R/Z`.
pub fn find_overlaps(arcs: &[Arc], pc: &PrecisionConfig) -> Vec<(Arc, Arc)> {
    let bits = pc.bits();
    let mut sorted: Vec<&Arc> = arcs.iter().collect();
    sorted.sort_by(|x, y| (x.center.0 as u128 * y.center.1 as u128).cmp(&(y.center.0 as u128 * x.center.1 as u128)));
    let mut out = Vec::new();
    let n = sorted.len();
    if n < 2 {
        return out;
    }
    // disjoint intervals can only meet their neighbours; scan forward until
    // the gap alone exceeds the widest possible pair
    let w_max = sorted.iter().map(|a| a.half_width.clone()).fold(pc.float(0), |m, w| m.max(&w));
    for i in 0..n {
        let ci = sorted[i].center_f(bits);
        for step in 1..n {
            let j = (i + step) % n;
            let mut gap = Float::with_val(bits, sorted[j].center_f(bits) - &ci);
            if j <= i {
                gap += 1u32;
            }
            if gap > Float::with_val(bits, &w_max * 2u32) {
                break;
            }
            let reach = Float::with_val(bits, &sorted[i].half_width + &sorted[j].half_width);
            if gap < reach {
                out.push((sorted[i].clone(), sorted[j].clone()));
            }
        }
    }
    out
}

/// Major arcs for `X`, refusing any overlap.
pub fn arc_decomposition(big_x: &Float, d: usize, pc: &PrecisionConfig) -> Result<Vec<Arc>> {
    let arcs = arcs_unchecked(big_x, d, pc)?;
    if let Some((a, b)) = find_overlaps(&arcs, pc).into_iter().next() {
        return Err(Error::OverlapDetected(a.label(), b.label()));
    }
    Ok(arcs)
}

/// Summed length of the arcs (overlaps counted twice).
pub fn major_measure(arcs: &[Arc], pc: &PrecisionConfig) -> Float {
    arcs.iter().fold(pc.float(0), |m, a| m + Float::with_val(pc.bits(), &a.half_width * 2u32))
}

/// The bound `sum_q phi(q) 2 q^{-1} X^{1/d - 1}`, which equals the summed measure.
pub fn measure_bound(big_x: &Float, d: usize, pc: &PrecisionConfig) -> Result<Float> {
    Ok(major_measure(&arcs_unchecked(big_x, d, pc)?, pc))
}

fn in_any_arc(theta: &Float, arcs: &[Arc], bits: u32) -> bool {
    arcs.iter().any(|a| {
        let mut g = Float::with_val(bits, theta - a.center_f(bits));
        g -= Float::with_val(bits, g.round_ref());
        g.abs() < a.half_width
    })
}

#[derive(Debug, Clone)]
pub struct MinorArcReport {
    pub samples: usize,
    pub attempts: usize,
    pub max_abs_phi: Float,
    /// `max |Phi| / X^{1/d - 1/(d 2^{d-1})}`
    pub normalized: Float,
    pub phi_at_zero: Float,
    /// `max |Phi| / |Phi(rho)|`
    pub ratio: Float,
}

/// Samples `Theta` uniformly off the major arcs and records `|Phi|`.
pub fn minor_arc_probe(spec: &PolynomialSpec, big_x: &Float, samples: usize, seed: u64, pc: &PrecisionConfig) -> Result<MinorArcReport> {
    let bits = pc.bits();
    let d = spec.degree();
    let arcs = arcs_unchecked(big_x, d, pc)?;
    let lo = -big_x.clone().pow(Float::with_val(bits, Float::with_val(bits, 1) / d as u32) - 1u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_max = default_n_max(spec, big_x.to_f64(), pc);
    let mut best = pc.float(0);
    let mut taken = 0;
    let mut attempts = 0;
    let cap = 100 * samples.max(1);
    while taken < samples && attempts < cap {
        attempts += 1;
        let theta = Float::with_val(bits, &lo + rng.gen::<f64>());
        if in_any_arc(&theta, &arcs, bits) {
            continue;
        }
        let (v, _) = phi_direct(spec, big_x, &theta, n_max, pc)?;
        best.max_mut(&cabs(&v));
        taken += 1;
    }
    let (p0, _) = phi_direct(spec, big_x, &pc.float(0), n_max, pc)?;
    let p0 = cabs(&p0);
    let e = 1.0 / d as f64 - 1.0 / (d as f64 * 2f64.powi(d as i32 - 1));
    let normalized = Float::with_val(bits, &best / big_x.clone().pow(pc.float(e)));
    let ratio = Float::with_val(bits, &best / &p0);
    Ok(MinorArcReport { samples: taken, attempts, max_abs_phi: best, normalized, phi_at_zero: p0, ratio })
}
