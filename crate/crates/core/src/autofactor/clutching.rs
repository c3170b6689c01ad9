//! Numerical invariants of clutching loops: determinant winding and the projective defect.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::factor::FactorOfAutomorphy;
use crate::cohomology::RootOfUnity;
use crate::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Smallest admissible sample count for the loop of `N(s)` with parameters `(q, a)`.
pub fn min_samples(q: usize, a: &BigInt) -> usize {
    let a = a.abs().to_usize().unwrap_or(usize::MAX / 8);
    4 * (1 + a.saturating_mul(q))
}

pub fn default_samples(q: usize, a: &BigInt) -> usize {
    let a = a.abs().to_usize().unwrap_or(usize::MAX / 128);
    64 * q * (a + 1)
}

/// Winding number of a closed loop in `ℂ*` sampled at `t_k = k/samples`, `k = 0..=samples`.
pub fn winding_number(f: impl Fn(f64) -> Complex64, samples: usize, tolerance: f64) -> Result<i64> {
    if samples == 0 {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    let mut prev = f(0.0);
    let mut total = 0.0;
    for k in 1..=samples {
        let z = f(k as f64 / samples as f64);
        let step = (z / prev).arg();
        if step.abs() >= PI / 2.0 {
            return Err(Error::UnwrapFailure { index: k, step });
        }
        total += step;
        prev = z;
    }
    let turns = total / TAU;
    let w = turns.round();
    if (turns - w).abs() > tolerance {
        return Err(Error::SnapFailure { value: turns, distance: (turns - w).abs() });
    }
    Ok(w as i64)
}

/// Winding of `det ℓ(t)` for a loop of unitary matrices.
pub fn det_winding(l: impl Fn(f64) -> DMatrix<Complex64>, samples: usize, tolerance: f64) -> Result<i64> {
    winding_number(|t| l(t).determinant(), samples, tolerance)
}

/// Lifts a loop of `U(q)` matrices to a path in `SU(q)` by continuity and returns
/// `W(0)·W(1)⁻¹`, snapped to a `q`-th root of unity.
pub fn projective_defect(
    l: impl Fn(f64) -> DMatrix<Complex64>,
    q: usize,
    samples: usize,
    tolerance: f64,
) -> Result<RootOfUnity> {
    if samples == 0 || q == 0 {
        return Err(Error::InsufficientSamples { needed: 1, got: samples });
    }
    let qf = q as f64;
    let normalize = |m: DMatrix<Complex64>| -> (DMatrix<Complex64>, Complex64) {
        let d = m.determinant();
        let lambda = Complex64::from_polar(1.0, -d.arg() / qf);
        (m, lambda)
    };
    let (m0, l0) = normalize(l(0.0));
    let w0 = m0 * l0;
    let mut prev = w0.clone();
    for k in 1..=samples {
        let (m, base) = normalize(l(k as f64 / samples as f64));
        let overlap = (prev.adjoint() * &m).trace();
        let mut best = (f64::NEG_INFINITY, base);
        for j in 0..q {
            let cand = base * Complex64::from_polar(1.0, TAU * j as f64 / qf);
            let score = (cand * overlap).re;
            if score > best.0 {
                best = (score, cand);
            }
        }
        let step = (best.1 * overlap).arg();
        if step.abs() >= PI / (2.0 * qf) {
            return Err(Error::UnwrapFailure { index: k, step });
        }
        prev = m * best.1;
    }
    let z = &w0 * prev.adjoint();
    let zeta = z.trace() / qf;
    let off = (&z - DMatrix::<Complex64>::identity(q, q) * zeta).iter().map(|v| v.norm()).fold(0.0, f64::max);
    if off > 1e-6 * qf {
        return Err(Error::SnapFailure { value: off, distance: off });
    }
    let turns = zeta.arg() / TAU;
    let c = (turns * qf).round();
    let distance = (turns - c / qf).abs();
    if distance > tolerance {
        return Err(Error::SnapFailure { value: turns, distance });
    }
    Ok(RootOfUnity::from_phase(BigRational::new(BigInt::from(c as i64), BigInt::from(q))))
}

fn check_samples(f: &FactorOfAutomorphy, samples: usize) -> Result<()> {
    let needed = min_samples(f.q(), f.a());
    if samples < needed {
        return Err(Error::InsufficientSamples { needed, got: samples });
    }
    Ok(())
}

/// Winding of `det N(s)` over `s ∈ [0, 1]`.
pub fn clutching_twist(f: &FactorOfAutomorphy, samples: usize, tolerance: f64) -> Result<BigInt> {
    check_samples(f, samples)?;
    det_winding(|s| f.clutching_loop(s), samples, tolerance).map(BigInt::from)
}

/// Projective defect of the loop `s ↦ N(s)` lifted to `SU(q)`.
pub fn clutching_omega(f: &FactorOfAutomorphy, samples: usize, tolerance: f64) -> Result<RootOfUnity> {
    check_samples(f, samples)?;
    projective_defect(|s| f.clutching_loop(s), f.q(), samples, tolerance)
}

/// CSV dump of the sampled loop: `t` followed by real and imaginary parts, row-major.
pub fn loop_samples_csv(f: &FactorOfAutomorphy, samples: usize) -> String {
    let q = f.q();
    let mut out = String::from("t");
    for i in 0..q {
        for j in 0..q {
            out.push_str(&format!(",re_{i}_{j},im_{i}_{j}"));
        }
    }
    out.push('\n');
    for k in 0..=samples {
        let t = k as f64 / samples.max(1) as f64;
        let m = f.clutching_loop(t);
        out.push_str(&format!("{t}"));
        for i in 0..q {
            for j in 0..q {
                let z = m[(i, j)];
                out.push_str(&format!(",{},{}", z.re, z.im));
            }
        }
        out.push('\n');
    }
    out
}
