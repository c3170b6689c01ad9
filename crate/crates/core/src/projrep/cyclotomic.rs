//! Exact zero tests for integer combinations of `N`-th roots of unity.

use std::collections::HashMap;

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: usize) -> Vec<i128> {
    fn build(n: usize, memo: &mut HashMap<usize, Vec<i128>>) -> Vec<i128> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        // x^n − 1 divided by Φ_d for every proper divisor d
        let mut p = vec![0i128; n + 1];
        p[0] = -1;
        p[n] = 1;
        for d in 1..n {
            if n % d == 0 {
                let f = build(d, memo);
                p = exact_div(&p, &f);
            }
        }
        memo.insert(n, p.clone());
        p
    }
    assert!(n >= 1, "cyclotomic order must be positive");
    build(n, &mut HashMap::new())
}

fn exact_div(p: &[i128], f: &[i128]) -> Vec<i128> {
    let df = f.len() - 1;
    let mut r = p.to_vec();
    let mut out = vec![0i128; p.len() - df];
    for i in (0..out.len()).rev() {
        let c = r[i + df];
        out[i] = c;
        for (j, fj) in f.iter().enumerate() {
            r[i + j] -= c * fj;
        }
    }
    debug_assert!(r.iter().all(|&v| v == 0));
    out
}

/// Is `Σ_k coeffs[k]·e(k/n)` zero?
pub fn is_zero(coeffs: &[i64], n: usize) -> bool {
    reduce(coeffs, n).iter().all(|&c| c == 0)
}

/// Canonical coordinates in the power basis of `ℚ(e(1/n))`.
pub fn reduce(coeffs: &[i64], n: usize) -> Vec<i128> {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut r: Vec<i128> = vec![0; n.max(deg)];
    for (k, &c) in coeffs.iter().enumerate() {
        r[k % n] += c as i128;
    }
    for i in (deg..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            for (j, pj) in phi.iter().enumerate() {
                r[i - deg + j] -= c * pj;
            }
        }
    }
    r.truncate(deg);
    r
}
