//! Truncated power series over high-precision complex numbers.

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::precision::PrecisionConfig;

/// `sum_{i <= order} coeffs[i] var^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    pub var: String,
    pub coeffs: Vec<Complex>,
}

impl TruncatedSeries {
    pub fn new(var: &str, coeffs: Vec<Complex>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        TruncatedSeries { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str, order: usize, pc: &PrecisionConfig) -> Self {
        Self::new(var, vec![pc.complex(0); order + 1])
    }

    /// The series `c * var`.
    pub fn monomial(var: &str, order: usize, c: &Complex, pc: &PrecisionConfig) -> Self {
        let mut s = Self::zero(var, order, pc);
        if order >= 1 {
            s.coeffs[1] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c.clone()).collect();
        TruncatedSeries { var: self.var.clone(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_compatible(self, other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Complex::with_val(a.prec(), a + b))
            .collect();
        Ok(TruncatedSeries { var: self.var.clone(), coeffs })
    }
}

fn check_compatible(x: &TruncatedSeries, y: &TruncatedSeries) -> Result<()> {
    if x.order() != y.order() {
        return Err(Error::OrderMismatch(x.order(), y.order()));
    }
    if x.var != y.var {
        return Err(Error::DomainError(format!("series in {} and {}", x.var, y.var)));
    }
    Ok(())
}

/// Cauchy product truncated at the common order.
pub fn series_mul(x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_compatible(x, y)?;
    let n = x.order();
    let prec = x.coeffs[0].prec();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = Complex::with_val(prec, 0);
        for i in 0..=k {
            if x.coeffs[i].is_zero() || y.coeffs[k - i].is_zero() {
                continue;
            }
            acc += Complex::with_val(prec, &x.coeffs[i] * &y.coeffs[k - i]);
        }
        out.push(acc);
    }
    Ok(TruncatedSeries { var: x.var.clone(), coeffs: out })
}

/// `exp(x)` for a series with zero constant term, via `e' = x' e`.
pub fn series_exp(x: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !x.coeffs[0].is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let n = x.order();
    let prec = x.coeffs[0].prec();
    let mut e: Vec<Complex> = Vec::with_capacity(n + 1);
    e.push(Complex::with_val(prec, 1));
    for m in 1..=n {
        let mut acc = Complex::with_val(prec, 0);
        for k in 1..=m {
            if x.coeffs[k].is_zero() {
                continue;
            }
            acc += Complex::with_val(prec, &x.coeffs[k] * &e[m - k]) * (k as u32);
        }
        e.push(acc / (m as u32));
    }
    Ok(TruncatedSeries { var: x.var.clone(), coeffs: e })
}

/// Generalized binomial coefficient `a (a-1) ... (a-k+1) / k!`.
pub fn gen_binom(a: &Float, k: u64) -> Float {
    let prec = a.prec();
    let mut out = Float::with_val(prec, 1);
    for i in 0..k {
        out *= Float::with_val(prec, a - i);
        out /= i + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::cabs;

    fn pc() -> PrecisionConfig {
        PrecisionConfig::default()
    }

    fn ser(pc: &PrecisionConfig, v: &[f64]) -> TruncatedSeries {
        TruncatedSeries::new("t", v.iter().map(|&c| pc.complex((c, 0))).collect())
    }

    fn approx(s: &TruncatedSeries, want: &[f64]) {
        for (c, w) in s.coeffs.iter().zip(want) {
            assert!((c.real().to_f64() - w).abs() < 1e-15 && c.imag().to_f64().abs() < 1e-15);
        }
    }

    #[test]
    fn exp_of_t() {
        let pc = pc();
        let e = series_exp(&ser(&pc, &[0.0, 1.0, 0.0, 0.0])).unwrap();
        approx(&e, &[1.0, 1.0, 0.5, 1.0 / 6.0]);
    }

    #[test]
    fn exp_of_2t() {
        let pc = pc();
        let e = series_exp(&ser(&pc, &[0.0, 2.0, 0.0])).unwrap();
        approx(&e, &[1.0, 2.0, 2.0]);
    }

    #[test]
    fn difference_of_squares() {
        let pc = pc();
        let p = series_mul(&ser(&pc, &[1.0, 1.0, 0.0]), &ser(&pc, &[1.0, -1.0, 0.0])).unwrap();
        approx(&p, &[1.0, 0.0, -1.0]);
    }

    #[test]
    fn errors() {
        let pc = pc();
        assert_eq!(
            series_mul(&ser(&pc, &[1.0, 1.0]), &ser(&pc, &[1.0, 1.0, 1.0])),
            Err(Error::OrderMismatch(1, 2))
        );
        assert_eq!(series_exp(&ser(&pc, &[1.0, 1.0])), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn exp_times_exp_neg_is_one() {
        let pc = pc();
        let x = TruncatedSeries::new(
            "t",
            (0..12).map(|i| if i == 0 { pc.complex(0) } else { pc.complex((0.3 * i as f64, -0.1)) }).collect(),
        );
        let p = series_mul(&series_exp(&x).unwrap(), &series_exp(&x.neg()).unwrap()).unwrap();
        assert!(cabs(&(p.coeffs[0].clone() - 1u32)) < pc.eps(-4));
        for c in &p.coeffs[1..] {
            assert!(cabs(c) < pc.eps(-8));
        }
    }

    #[test]
    fn binomials() {
        let pc = pc();
        assert_eq!(gen_binom(&pc.float(0.5), 2).to_f64(), -0.125);
        assert_eq!(gen_binom(&pc.float(2.5), 3).to_f64(), 0.3125);
        assert_eq!(gen_binom(&pc.float(7.3), 0).to_f64(), 1.0);
    }
}
