//! Exact partition counts from the generating product, by big-integer
//! knapsack, plus an independent memoized recursion used as an oracle.

use std::collections::HashMap;
use std::fmt::Write as _;

use rug::Integer;

use crate::error::{Error, Result};
use crate::poly::PolynomialSpec;

/// Default refusal threshold for the DP table.
pub const DEFAULT_MEMORY_CAP: u64 = 8 << 30;

/// Inputs above this are refused by the naive counter.
pub const NAIVE_GUARD: u64 = 10_000;

/// `counts[n] = p_f(n)` for `n = 0..=limit`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    pub spec: PolynomialSpec,
    pub limit: u64,
    pub counts: Vec<Integer>,
}

impl CountTable {
    /// `"n,count"` header then one row per n.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{n},{c}");
        }
        out
    }

    /// Smallest `n0` such that every `n` in `n0..=limit` has a positive count.
    pub fn positive_from(&self) -> Option<u64> {
        let last_zero = self.counts.iter().rposition(|c| *c == 0);
        match last_zero {
            None => Some(0),
            Some(i) if (i as u64) < self.limit => Some(i as u64 + 1),
            _ => None,
        }
    }
}

/// Distinct values `f(1), f(2), ...` lying in `[1, n]`, sorted.
pub fn parts_up_to(spec: &PolynomialSpec, n: u64) -> Vec<u64> {
    // past y0 the polynomial is positive and increasing
    let ad = spec.leading() as f64;
    let y0 = 1 + spec.coeffs().iter().map(|c| c.unsigned_abs()).sum::<u64>() / ad.max(1.0) as u64;
    let mut out = Vec::new();
    let mut y: i64 = 1;
    loop {
        match spec.eval_i128(y) {
            Some(v) if v >= 1 && v <= n as i128 => out.push(v as u64),
            Some(v) if v > n as i128 && y as u64 >= y0 => break,
            None => break,
            _ => {}
        }
        y += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Rough byte count of the rolling table, from the unrestricted partition
/// growth `log2 p(N) ~ pi sqrt(2N/3) / ln 2`.
pub fn estimate_memory(n: u64) -> u64 {
    let bits = std::f64::consts::PI * (2.0 * n as f64 / 3.0).sqrt() / std::f64::consts::LN_2;
    let limb_bytes = 8.0 * ((bits / 64.0).ceil() + 1.0);
    // Integer header plus heap limbs
    ((n + 1) as f64 * (16.0 + limb_bytes)) as u64
}

/// Exact table `p_f(0..=n)` with the default memory cap.
pub fn count_partitions(spec: &PolynomialSpec, n: u64) -> Result<CountTable> {
    count_partitions_with_cap(spec, n, DEFAULT_MEMORY_CAP)
}

pub fn count_partitions_with_cap(spec: &PolynomialSpec, n: u64, cap: u64) -> Result<CountTable> {
    let estimate = estimate_memory(n);
    if estimate > cap {
        return Err(Error::MemoryCapExceeded { estimate, cap });
    }
    let len = n as usize + 1;
    let mut counts = vec![Integer::new(); len];
    counts[0] = Integer::from(1);
    for p in parts_up_to(spec, n) {
        let p = p as usize;
        for i in p..len {
            let (lo, hi) = counts.split_at_mut(i);
            hi[0] += &lo[i - p];
        }
    }
    Ok(CountTable { spec: spec.clone(), limit: n, counts })
}

/// Single count by memoized recursion over (remaining, largest part index).
/// Independent of the table code; refused above [`NAIVE_GUARD`].
pub fn count_partitions_naive(spec: &PolynomialSpec, n: u64) -> Result<Integer> {
    if n > NAIVE_GUARD {
        return Err(Error::GuardExceeded { n, cap: NAIVE_GUARD });
    }
    let parts = parts_up_to(spec, n);
    // deep recursion for n near the guard, so give it room
    let handle = std::thread::Builder::new()
        .stack_size(256 << 20)
        .spawn(move || {
            let mut memo = HashMap::new();
            ways(n, parts.len(), &parts, &mut memo)
        })
        .expect("spawn counting thread");
    Ok(handle.join().expect("counting thread panicked"))
}

// partitions of r using only parts[..k]
fn ways(r: u64, k: usize, parts: &[u64], memo: &mut HashMap<(u64, usize), Integer>) -> Integer {
    if r == 0 {
        return Integer::from(1);
    }
    if k == 0 {
        return Integer::new();
    }
    if let Some(v) = memo.get(&(r, k)) {
        return v.clone();
    }
    let p = parts[k - 1];
    let mut total = ways(r, k - 1, parts, memo);
    if p <= r {
        total += ways(r - p, k, parts, memo);
    }
    memo.insert((r, k), total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn sq() -> PolynomialSpec {
        parse_polynomial(&[0, 0, 1]).unwrap()
    }

    #[test]
    fn parts_examples() {
        assert_eq!(parts_up_to(&sq(), 10), vec![1, 4, 9]);
        assert_eq!(parts_up_to(&parse_polynomial(&[0, 0, 1, 2]).unwrap(), 100), vec![3, 20, 63]);
        assert!(parts_up_to(&sq(), 0).is_empty());
    }

    #[test]
    fn parts_of_non_monotone_poly() {
        // y^2 - 3y + 3: 1, 1, 3, 7, 13, ...
        let f = parse_polynomial(&[3, -3, 1]).unwrap();
        assert_eq!(parts_up_to(&f, 14), vec![1, 3, 7, 13]);
    }

    #[test]
    fn small_counts() {
        let t = count_partitions(&sq(), 10).unwrap();
        assert_eq!(t.counts[4], 2);
        assert_eq!(t.counts[10], 4);
        assert_eq!(t.counts[0], 1);
        let f = parse_polynomial(&[0, 0, 1, 2]).unwrap();
        let t = count_partitions(&f, 6).unwrap();
        assert_eq!(t.counts[1], 0);
        assert_eq!(t.counts[6], 1);
    }

    #[test]
    fn known_square_counts() {
        let t = count_partitions(&sq(), 1000).unwrap();
        assert_eq!(t.counts[100], 1116);
        assert_eq!(t.counts[1000], Integer::from(3_998_468_431u64));
    }

    #[test]
    fn naive_agrees() {
        for c in [vec![0, 0, 1], vec![0, 0, 1, 2], vec![3, 0, 5]] {
            let f = parse_polynomial(&c).unwrap();
            let t = count_partitions(&f, 120).unwrap();
            for n in 0..=120u64 {
                assert_eq!(count_partitions_naive(&f, n).unwrap(), t.counts[n as usize], "{c:?} n={n}");
            }
        }
    }

    #[test]
    fn naive_edge_cases() {
        assert_eq!(count_partitions_naive(&sq(), 0).unwrap(), 1);
        assert_eq!(count_partitions_naive(&sq(), 4).unwrap(), 2);
        assert_eq!(
            count_partitions_naive(&sq(), 10_001),
            Err(Error::GuardExceeded { n: 10_001, cap: 10_000 })
        );
    }

    #[test]
    fn generating_function_product() {
        // multiply out prod (1 + z^a + z^{2a} + ...) truncated at N
        let f = parse_polynomial(&[0, 0, 1, 2]).unwrap();
        let n = 200usize;
        let mut poly = vec![Integer::new(); n + 1];
        poly[0] = Integer::from(1);
        for a in parts_up_to(&f, n as u64) {
            let a = a as usize;
            let mut next = vec![Integer::new(); n + 1];
            for (i, c) in poly.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                let mut j = i;
                while j <= n {
                    next[j] += c;
                    j += a;
                }
            }
            poly = next;
        }
        assert_eq!(poly, count_partitions(&f, n as u64).unwrap().counts);
    }

    #[test]
    fn memory_cap() {
        assert!(matches!(
            count_partitions_with_cap(&sq(), 1000, 10),
            Err(Error::MemoryCapExceeded { .. })
        ));
        assert!(estimate_memory(100_000) < DEFAULT_MEMORY_CAP);
    }

    #[test]
    fn csv_and_positivity() {
        let t = count_partitions(&sq(), 0).unwrap();
        assert_eq!(t.to_csv(), "n,count\n0,1\n");
        let t = count_partitions(&parse_polynomial(&[0, 0, 1, 2]).unwrap(), 400).unwrap();
        let n0 = t.positive_from();
        assert!(n0.is_some());
    }
}
