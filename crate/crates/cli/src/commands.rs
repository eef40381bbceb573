//! One function per subcommand. Each returns a report; `validate` also
//! reports whether every hypothesis held.

use anyhow::{bail, Result};
use rug::{Complex, Float};

use polypart::arcs::{arcs_unchecked, estimate_cf, exp_sum, find_overlaps, major_measure, weyl_exponent_fit};
use polypart::exact::count_partitions;
use polypart::mwzeta::{build_context, mw_zeta, mw_zeta_deriv_zero, mw_zeta_residue, mw_zeta_zero, MWZetaContext, DEFAULT_DEPTH};
use polypart::phi::{default_n_max, phi_asymptotic, phi_direct};
use polypart::poly::{compute_roots, parse_polynomial, validate_hypotheses, PolynomialSpec};
use polypart::precision::{cabs, fmt_float};
use polypart::saddle::{default_j, expansion_coeffs, SaddleModel};
use polypart::{Error, PrecisionConfig};

use crate::config::RunConfig;
use crate::report::{Cell, Report};

struct Setup {
    spec: PolynomialSpec,
    pc: PrecisionConfig,
    sig: usize,
}

fn setup(cfg: &RunConfig) -> Result<Setup> {
    let spec = parse_polynomial(&cfg.poly)?;
    let pc = PrecisionConfig::new(cfg.digits)?;
    Ok(Setup { spec, pc, sig: (cfg.digits as usize).min(40) })
}

// asymptotic commands need every hypothesis
fn checked_context(s: &Setup) -> Result<MWZetaContext> {
    let rep = validate_hypotheses(&s.spec, &s.pc)?;
    if !rep.overall {
        return Err(Error::HypothesisViolation(format!("{} fails the hypotheses; run validate for details", s.spec)).into());
    }
    context(s)
}

fn context(s: &Setup) -> Result<MWZetaContext> {
    let roots = compute_roots(&s.spec, &s.pc)?;
    Ok(build_context(&roots.alphas, s.spec.degree(), DEFAULT_DEPTH, &s.pc)?)
}

fn need_n(cfg: &RunConfig) -> Result<Vec<u64>> {
    let n = cfg.n_values()?;
    if n.is_empty() {
        bail!("no n given; use --n or --n-range");
    }
    Ok(n)
}

pub fn validate(cfg: &RunConfig) -> Result<(Report, bool)> {
    let s = setup(cfg)?;
    let h = validate_hypotheses(&s.spec, &s.pc)?;
    let mut r = Report::default();
    r.put("polynomial", s.spec.to_string());
    r.put("degree", s.spec.degree());
    r.put("a1_zero", h.a1_zero);
    r.put("a0_nonneg", h.a0_nonneg);
    r.put("ratio_ad1_ad", Cell::real(&h.ratio_ad1_ad, s.sig));
    r.put("ratio_lt_half_d", h.ratio_lt_half_d);
    r.put("a0_over_ad_lt_1", h.a0_over_ad_lt_1);
    r.put("roots_real_nonneg", h.roots_real_nonneg);
    r.put("nonconstant_mod_small_primes", h.nonconstant_mod_small_primes);
    if let Some(roots) = &h.roots {
        let a: Vec<String> = roots.alphas.iter().map(|a| fmt_float(a, s.sig)).collect();
        r.put("alphas", a.join(";"));
        r.put("root_residual", Cell::real(&roots.residual, 6));
    }
    r.put("overall", h.overall);
    Ok((r, h.overall))
}

pub fn exact(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let n = *need_n(cfg)?.last().unwrap();
    let t = count_partitions(&s.spec, n)?;
    let mut r = Report::table(vec!["n", "count"]);
    for (i, c) in t.counts.iter().enumerate() {
        r.row(vec![Cell::from(i), Cell::Int(c.clone())]);
    }
    Ok(r)
}

fn resolve_j(cfg: &RunConfig, d: usize) -> usize {
    cfg.j.unwrap_or_else(|| default_j(d, cfg.r))
}

pub fn asym(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let ns = need_n(cfg)?;
    if ns[0] == 0 {
        bail!("asymptotic estimates need n >= 1");
    }
    let ctx = checked_context(&s)?;
    let j = resolve_j(cfg, s.spec.degree());
    let e = expansion_coeffs(&ctx, j, cfg.r, &s.pc)?;
    let model = SaddleModel::for_n(&s.spec, &ctx, cfg.r, ns[0], &s.pc)?;
    let mut r = Report::table(vec!["n", "X", "Y", "c_main", "estimate", "iterations", "solver_residual"]);
    for &n in &ns {
        let sp = model.solve(n)?;
        let est = model.estimate(&sp, &e);
        r.row(vec![
            Cell::from(n),
            Cell::real(&sp.big_x, s.sig),
            Cell::real(&sp.big_y, s.sig),
            Cell::real(&sp.c_main, s.sig),
            Cell::real(&est, s.sig),
            Cell::from(sp.iterations),
            Cell::real(&sp.solver_residual, 3),
        ]);
    }
    r.put("J", j);
    r.put("admissible", e.admissible);
    for (q, w) in e.w.iter().enumerate() {
        r.put(format!("w{}", q + 1), Cell::real(w, s.sig));
    }
    Ok(r)
}

pub fn compare(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let ns = need_n(cfg)?;
    if ns[0] == 0 {
        bail!("asymptotic estimates need n >= 1");
    }
    let ctx = checked_context(&s)?;
    let j = resolve_j(cfg, s.spec.degree());
    let e = expansion_coeffs(&ctx, j, cfg.r, &s.pc)?;
    let model = SaddleModel::for_n(&s.spec, &ctx, cfg.r, ns[0], &s.pc)?;
    let table = count_partitions(&s.spec, *ns.last().unwrap())?;
    let bits = s.pc.bits();
    let mut r = Report::table(vec!["n", "exact", "asymptotic", "ratio"]);
    let mut worst = s.pc.float(0);
    let mut last = s.pc.float(0);
    for &n in &ns {
        let sp = model.solve(n)?;
        let est = model.estimate(&sp, &e);
        let exact = &table.counts[n as usize];
        let ratio = if *exact == 0 { Float::with_val(bits, f64::NAN) } else { Float::with_val(bits, &est / Float::with_val(bits, exact)) };
        if ratio.is_finite() {
            let dev = Float::with_val(bits, &ratio - 1u32).abs();
            if dev > worst {
                worst = dev;
            }
        }
        last = ratio.clone();
        r.row(vec![Cell::from(n), Cell::Int(exact.clone()), Cell::real(&est, s.sig), Cell::real(&ratio, 12)]);
    }
    r.put("J", j);
    r.put("admissible", e.admissible);
    r.put("max_abs_ratio_minus_1", Cell::real(&worst, 6));
    r.put("last_ratio", Cell::real(&last, 12));
    Ok(r)
}

pub fn zeta(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let ctx = context(&s)?;
    let mut r = Report::default();
    r.put("polynomial", s.spec.to_string());
    r.put("d", ctx.d);
    r.put("depth", ctx.depth);
    let a: Vec<String> = ctx.alphas.iter().map(|a| fmt_float(a, s.sig)).collect();
    r.put("alphas", a.join(";"));
    r.put("zeta0", Cell::real(&mw_zeta_zero(&ctx)?, s.sig));
    r.put("zeta0_prime", Cell::real(&mw_zeta_deriv_zero(&ctx)?, s.sig));
    for m in 0..=2 * ctx.d + 1 {
        let p = if m == 0 { "1".to_string() } else { format!("{}", 1 - m as i64) };
        r.put(format!("residue_at_({p})/{}", ctx.d), Cell::real(&mw_zeta_residue(&ctx, m), s.sig));
    }
    for k in 2..=4u32 {
        let v = mw_zeta(&ctx, &s.pc.complex(k))?;
        r.put(format!("zeta_at_{k}"), Cell::real(v.real(), s.sig));
    }
    Ok(r)
}

pub fn phicheck(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let ctx = checked_context(&s)?;
    let bits = s.pc.bits();
    let mut r = Report::table(vec!["X", "Theta", "direct_re", "direct_im", "asymptotic_re", "asymptotic_im", "abs_error", "tail_bound"]);
    let mut worst = s.pc.float(0);
    for &x in &cfg.x_grid {
        for &t in &cfg.theta_grid {
            let bx = s.pc.float(x);
            let th = s.pc.float(t);
            let (dv, tail) = phi_direct(&s.spec, &bx, &th, default_n_max(&s.spec, x, &s.pc), &s.pc)?;
            let av = phi_asymptotic(&s.spec, &ctx, &bx, &th, cfg.r, &s.pc)?;
            let err = cabs(&Complex::with_val(bits, &av - &dv));
            if err > worst {
                worst = err.clone();
            }
            r.row(vec![
                Cell::from(x),
                Cell::from(t),
                Cell::real(dv.real(), s.sig),
                Cell::real(dv.imag(), s.sig),
                Cell::real(av.real(), s.sig),
                Cell::real(av.imag(), s.sig),
                Cell::real(&err, 6),
                Cell::real(&tail, 3),
            ]);
        }
    }
    r.put("max_abs_error", Cell::real(&worst, 6));
    Ok(r)
}

pub fn expsum(cfg: &RunConfig) -> Result<Report> {
    let s = setup(cfg)?;
    let d = s.spec.degree();
    let mut r = Report::table(vec!["q", "a", "re", "im", "abs", "abs_over_q"]);
    for q in 2..=cfg.q_max {
        for a in 1..q {
            if num_gcd(a, q) != 1 {
                continue;
            }
            let v = exp_sum(&s.spec, q, a as i64, 0, &s.pc);
            let m = cabs(&v);
            let mq = Float::with_val(s.pc.bits(), &m / q);
            r.row(vec![
                Cell::from(q),
                Cell::from(a),
                Cell::real(v.real(), s.sig),
                Cell::real(v.imag(), s.sig),
                Cell::real(&m, s.sig),
                Cell::real(&mq, 12),
            ]);
        }
    }
    let cf = estimate_cf(&s.spec, cfg.q_max, &s.pc);
    r.put("cf", Cell::real(&cf.value, 12));
    r.put("cf_at", format!("{}/{}", cf.a, cf.q));
    if cfg.q_max >= 10 {
        let fit = weyl_exponent_fit(&s.spec, cfg.q_max, 4, cfg.seed, &s.pc)?;
        r.put("weyl_slope", fit.slope);
        r.put("weyl_intercept", fit.intercept);
        r.put("weyl_exponent", 1.0 - 2f64.powi(1 - d as i32));
    }
    let bx = s.pc.float(cfg.arc_x);
    let arcs = arcs_unchecked(&bx, d, &s.pc)?;
    r.put("arc_x", cfg.arc_x);
    r.put("arc_count", arcs.len());
    r.put("arc_overlaps", find_overlaps(&arcs, &s.pc).len());
    r.put("major_measure", Cell::real(&major_measure(&arcs, &s.pc), 12));
    Ok(r)
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}
