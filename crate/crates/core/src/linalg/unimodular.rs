//! `GL(n, ℤ)` and `GL(n, ℤ/ℓ)` utilities: seeded random unimodular words and
//! lifting of mod-ℓ matrices with determinant ±1 to integral unimodular ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Product of `word_length` random generators of `GL(n, ℤ)`: elementary
/// transvections `I ± E_ij` and single sign flips. Deterministic per seed.
pub fn unimodular_sample(n: usize, seed: u64, word_length: usize) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    unimodular_sample_with(n, &mut rng, word_length)
}

pub fn unimodular_sample_with<R: Rng>(n: usize, rng: &mut R, word_length: usize) -> IntMatrix {
    let mut t = IntMatrix::identity(n);
    let transvections = if n >= 2 { 2 * n * (n - 1) } else { 0 };
    for _ in 0..word_length {
        let g = rng.random_range(0..transvections + n);
        if g < transvections {
            let sign = if g % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let pair = g / 2;
            let dst = pair / (n - 1);
            let mut src = pair % (n - 1);
            if src >= dst {
                src += 1;
            }
            t.add_row_multiple(dst, src, &sign);
        } else {
            t.negate_row(g - transvections);
        }
    }
    t
}

/// Multiplicative inverse modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Lifts `g` with `det g ≡ 1 (mod ℓ)` to an integral matrix of determinant 1
/// congruent to `g` entrywise.
///
/// `g` is reduced to the identity over ℤ/ℓ using transvections only; the
/// inverse word, read over ℤ, is the lift.
pub fn lift_special_linear(g: &IntMatrix, modulus: &BigInt) -> Result<IntMatrix> {
    if !modulus.is_positive() {
        return Err(Error::NonPositiveModulus(modulus.to_string()));
    }
    let n = g.rows();
    if !g.is_square() {
        return Err(Error::Shape("lift of a non-square matrix".into()));
    }
    if modulus.is_one() {
        return Ok(IntMatrix::identity(n));
    }
    let not_sl = || Error::InvalidArgument("matrix is not special linear modulo ℓ".into());
    let mut a = g.reduce_mod(modulus);
    let mut ops: Vec<(usize, usize, BigInt)> = Vec::new();
    let mut apply = |a: &mut IntMatrix, dst: usize, src: usize, k: BigInt| {
        let k = k.mod_floor(modulus);
        if k.is_zero() {
            return;
        }
        a.add_row_multiple(dst, src, &k);
        for j in 0..n {
            a[(dst, j)] = a[(dst, j)].mod_floor(modulus);
        }
        ops.push((dst, src, k));
    };

    for j in 0..n {
        loop {
            let nonzero: Vec<usize> = (j..n).filter(|&i| !a[(i, j)].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| a[(i, j)].clone()).unwrap();
            let pv = a[(p, j)].clone();
            for &i in nonzero.iter().filter(|&&i| i != p) {
                let k = -(a[(i, j)].div_floor(&pv));
                apply(&mut a, i, p, k);
            }
        }
        let r = (j..n).find(|&i| !a[(i, j)].is_zero()).ok_or_else(not_sl)?;
        if r != j {
            apply(&mut a, j, r, BigInt::one());
            apply(&mut a, r, j, -BigInt::one());
        }
        let u = a[(j, j)].clone();
        if !u.is_one() {
            let uinv = mod_inverse(&u, modulus).ok_or_else(not_sl)?;
            if j + 1 == n {
                return Err(not_sl());
            }
            let t = j + 1;
            let one_minus_u = BigInt::one() - &u;
            apply(&mut a, t, j, &uinv * &one_minus_u);
            apply(&mut a, j, t, BigInt::one());
            apply(&mut a, t, j, -one_minus_u);
        }
        for i in 0..n {
            if i != j && !a[(i, j)].is_zero() {
                let k = -a[(i, j)].clone();
                apply(&mut a, i, j, k);
            }
        }
    }
    if a != IntMatrix::identity(n) {
        return Err(Error::Internal("mod-ℓ reduction did not reach the identity".into()));
    }
    let mut lift = IntMatrix::identity(n);
    for (dst, src, k) in ops.into_iter().rev() {
        lift.add_row_multiple(dst, src, &-k);
    }
    Ok(lift)
}

/// Lifts `g` with `det g ≡ ±1 (mod ℓ)` to an integral unimodular matrix congruent to it.
pub fn lift_unimodular(g: &IntMatrix, modulus: &BigInt) -> Result<IntMatrix> {
    if !modulus.is_positive() {
        return Err(Error::NonPositiveModulus(modulus.to_string()));
    }
    let d = g.det().mod_floor(modulus);
    if d == BigInt::one().mod_floor(modulus) {
        return lift_special_linear(g, modulus);
    }
    if d == (-BigInt::one()).mod_floor(modulus) {
        let mut flip = IntMatrix::identity(g.rows());
        flip.negate_row(0);
        let lifted = lift_special_linear(&(g * &flip), modulus)?;
        return Ok(&lifted * &flip);
    }
    Err(Error::InvalidArgument(format!("determinant {d} is not ±1 modulo {modulus}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int;

    #[test]
    fn empty_word_is_identity() {
        for seed in 0..5 {
            assert_eq!(unimodular_sample(2, seed, 0), IntMatrix::identity(2));
        }
    }

    #[test]
    fn single_generator() {
        let t = unimodular_sample(2, 1, 1);
        let candidates = [
            IntMatrix::from_i64(&[&[1, 1], &[0, 1]]),
            IntMatrix::from_i64(&[&[1, -1], &[0, 1]]),
            IntMatrix::from_i64(&[&[1, 0], &[1, 1]]),
            IntMatrix::from_i64(&[&[1, 0], &[-1, 1]]),
            IntMatrix::from_i64(&[&[-1, 0], &[0, 1]]),
            IntMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        ];
        assert!(candidates.contains(&t));
    }

    #[test]
    fn samples_are_unimodular_and_deterministic() {
        for seed in 0..100 {
            let t = unimodular_sample(4, seed, 12);
            assert!(t.det().abs().is_one());
            assert_eq!(t, unimodular_sample(4, seed, 12));
        }
    }

    #[test]
    fn lift_of_unit_diagonal() {
        // diag(2, 3) has determinant 6 ≡ 1 mod 5
        let g = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let l = lift_special_linear(&g, &int(5)).unwrap();
        assert_eq!(l.det(), int(1));
        assert_eq!(l.reduce_mod(&int(5)), g);
    }

    #[test]
    fn lift_with_sign() {
        // det = 6 ≡ −1 mod 7
        let g = IntMatrix::from_i64(&[&[3, 0], &[0, 2]]);
        let l = lift_unimodular(&g, &int(7)).unwrap();
        assert_eq!(l.det(), int(-1));
        assert_eq!(l.reduce_mod(&int(7)), g);
    }

    #[test]
    fn lift_rejects_non_units() {
        let g = IntMatrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(lift_unimodular(&g, &int(4)).is_err());
    }

    #[test]
    fn lifts_all_of_sl2_mod_6() {
        let m = int(6);
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    for d in 0..6 {
                        let g = IntMatrix::from_i64(&[&[a, b], &[c, d]]);
                        let det = g.det().mod_floor(&m);
                        if det == int(1) || det == int(5) {
                            let l = lift_unimodular(&g, &m).unwrap();
                            assert!(l.det().abs().is_one());
                            assert_eq!(l.reduce_mod(&m), g);
                        }
                    }
                }
            }
        }
    }
}
