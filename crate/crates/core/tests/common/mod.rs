//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use toribundle::linalg::{IntMatrix, RatMatrix, SkewRatForm};

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Skew form with entries `k/d`, `d` drawn per entry from `1..=max_den`.
pub fn random_skew<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> SkewRatForm {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.random_range(1..=max_den);
            let k = rng.random_range(-2 * d..=2 * d);
            m[(i, j)] = rat(k, d);
            m[(j, i)] = rat(-k, d);
        }
    }
    SkewRatForm::new(m).unwrap()
}

/// Skew form whose entries all have denominator dividing `l`.
pub fn random_skew_mod<R: Rng>(rng: &mut R, n: usize, l: i64) -> SkewRatForm {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let k = rng.random_range(-l..2 * l);
            m[(i, j)] = rat(k, l);
            m[(j, i)] = rat(-k, l);
        }
    }
    SkewRatForm::new(m).unwrap()
}

pub fn random_integral_skew<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut k = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.random_range(-3..=3i64);
            k[(i, j)] = BigInt::from(v);
            k[(j, i)] = BigInt::from(-v);
        }
    }
    k
}

/// `|(ℤⁿ + θℤⁿ)/ℤⁿ|` by enumerating `θx mod 1` over `x ∈ (ℤ/ℓ)ⁿ`.
pub fn brute_image_index(theta: &SkewRatForm) -> usize {
    let n = theta.n();
    let l = theta.matrix().common_denominator();
    let lu: i64 = l.clone().try_into().unwrap();
    let m = theta.matrix().scaled_to_int(&l).unwrap();
    let mi: Vec<i64> = m.entries().map(|v| v.clone().try_into().unwrap()).collect();
    let mut seen = HashSet::new();
    let total = (lu as usize).pow(n as u32);
    for idx in 0..total {
        let mut k = idx;
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let v = (k % lu as usize) as i64;
                k /= lu as usize;
                v
            })
            .collect();
        let img: Vec<i64> = (0..n).map(|i| (0..n).map(|j| mi[i * n + j] * x[j]).sum::<i64>().rem_euclid(lu)).collect();
        seen.insert(img);
    }
    seen.len()
}

fn det_mod(g: &[u64], n: usize, l: u64) -> u64 {
    let v = |i: usize, j: usize| g[i * n + j] as i64;
    let d = match n {
        1 => v(0, 0),
        2 => v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0),
        3 => {
            v(0, 0) * (v(1, 1) * v(2, 2) - v(1, 2) * v(2, 1)) - v(0, 1) * (v(1, 0) * v(2, 2) - v(1, 2) * v(2, 0))
                + v(0, 2) * (v(1, 0) * v(2, 1) - v(1, 1) * v(2, 0))
        }
        _ => unimplemented!("oracle supports n ≤ 3"),
    };
    d.rem_euclid(l as i64) as u64
}

/// All `g ∈ Mₙ(ℤ/ℓ)` with `det g ≡ ±1`, row-major.
pub fn all_pm_one(n: usize, l: u64) -> Vec<Vec<u64>> {
    let cells = n * n;
    let total = (l as usize).pow(cells as u32);
    let mut out = Vec::new();
    let mut g = vec![0u64; cells];
    for idx in 0..total {
        let mut k = idx;
        for c in g.iter_mut() {
            *c = (k % l as usize) as u64;
            k /= l as usize;
        }
        let d = det_mod(&g, n, l);
        if d == 1 % l || d == (l - 1) % l {
            out.push(g.clone());
        }
    }
    out
}

fn act(g: &[u64], a: &[u64], n: usize, l: u64) -> Vec<u64> {
    let mut ga = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            ga[i * n + j] = (0..n).map(|k| g[i * n + k] * a[k * n + j]).sum::<u64>() % l;
        }
    }
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|k| ga[i * n + k] * g[j * n + k]).sum::<u64>() % l;
        }
    }
    out
}

/// Orbit labels of every skew matrix over `ℤ/ℓ` under `A ↦ gAgᵀ`, `det g ≡ ±1`.
pub struct ExhaustiveOracle {
    cache: HashMap<(usize, u64), HashMap<Vec<u64>, usize>>,
}

impl ExhaustiveOracle {
    pub fn new() -> Self {
        Self { cache: HashMap::new() }
    }

    fn labels(&mut self, n: usize, l: u64) -> &HashMap<Vec<u64>, usize> {
        self.cache.entry((n, l)).or_insert_with(|| {
            let group = all_pm_one(n, l);
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
            let total = (l as usize).pow(pairs.len() as u32);
            let mut labels = HashMap::new();
            let mut next = 0;
            for idx in 0..total {
                let mut k = idx;
                let mut a = vec![0u64; n * n];
                for &(i, j) in &pairs {
                    let v = (k % l as usize) as u64;
                    k /= l as usize;
                    a[i * n + j] = v;
                    a[j * n + i] = (l - v) % l;
                }
                if labels.contains_key(&a) {
                    continue;
                }
                for g in &group {
                    labels.insert(act(g, &a, n, l), next);
                }
                next += 1;
            }
            labels
        })
    }

    /// Does some `g` with `det g ≡ ±1 (mod ℓ)` carry `ℓθ` to `ℓθ'` modulo `ℓ`?
    pub fn equivalent(&mut self, theta: &SkewRatForm, theta2: &SkewRatForm) -> bool {
        if theta.n() != theta2.n() {
            return false;
        }
        let n = theta.n();
        let l = num_integer::Integer::lcm(&theta.matrix().common_denominator(), &theta2.matrix().common_denominator());
        let lu: u64 = l.clone().try_into().unwrap();
        let reduce = |t: &SkewRatForm| -> Vec<u64> {
            let m = t.matrix().scaled_to_int(&l).unwrap();
            m.entries().map(|v| num_integer::Integer::mod_floor(v, &l).try_into().unwrap()).collect()
        };
        let (a, b) = (reduce(theta), reduce(theta2));
        let labels = self.labels(n, lu);
        labels[&a] == labels[&b]
    }
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                for k in c..cols {
                    let sub = &f * &rows[rank][k];
                    rows[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Companion matrix of the `N`-th cyclotomic polynomial: multiplication by `e(1/N)`.
pub fn cyclotomic_companion(n: usize) -> Vec<Vec<BigRational>> {
    let phi = toribundle::projrep::cyclotomic::cyclotomic_poly(n);
    let d = phi.len() - 1;
    let mut c = vec![vec![BigRational::zero(); d]; d];
    for i in 1..d {
        c[i][i - 1] = BigRational::one();
    }
    for i in 0..d {
        c[i][d - 1] = BigRational::from_integer(BigInt::from(-phi[i]));
    }
    c
}

pub fn mat_pow(m: &[Vec<BigRational>], k: usize) -> Vec<Vec<BigRational>> {
    let d = m.len();
    let mut acc: Vec<Vec<BigRational>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    for _ in 0..k {
        acc = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|t| &acc[i][t] * &m[t][j]).sum()).collect())
            .collect();
    }
    acc
}
