//! Exact even-index Bernoulli numbers from tangent numbers.

use std::sync::Mutex;

use rug::{Integer, Rational};

static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Returns `[B_0, B_2, B_4, ..., B_{2n}]` exactly.
pub fn bernoulli_even(n: usize) -> Vec<Rational> {
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() <= n {
        // grow geometrically so repeated requests stay cheap
        let want = (n + 1).max(2 * cache.len()).max(16);
        *cache = compute(want - 1);
    }
    cache[..=n].to_vec()
}

fn compute(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::from(1));
    if n == 0 {
        return out;
    }
    // tangent numbers T_1..T_n, in place
    let mut t = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j as u64 - k as u64));
            let b = Integer::from(&t[j] * (j as u64 - k as u64 + 2));
            t[j] = a + b;
        }
    }
    for k in 1..=n {
        let p = Integer::from(1) << (2 * k as u32);
        let den = Integer::from(&p * (Integer::from(&p - 1)));
        let num = Integer::from(&t[k] * (2 * k as u64));
        let mut b = Rational::from((num, den));
        if k % 2 == 0 {
            b = -b;
        }
        out.push(b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let b = bernoulli_even(6);
        assert_eq!(b[0], Rational::from(1));
        assert_eq!(b[1], Rational::from((1, 6)));
        assert_eq!(b[2], Rational::from((-1, 30)));
        assert_eq!(b[3], Rational::from((1, 42)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[5], Rational::from((5, 66)));
        assert_eq!(b[6], Rational::from((-691, 2730)));
    }

    #[test]
    fn cache_grows_consistently() {
        let a = bernoulli_even(3);
        let b = bernoulli_even(40);
        assert_eq!(a[..], b[..4]);
        // B_30 = 8615841276005/14322
        assert_eq!(b[15], Rational::from((Integer::from(8615841276005u64), 14322)));
    }
}
