//! Bilinear phase cocycles on `ℤⁿ`, their bicharacters and radicals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{frac, int, lattice_kernel_mod, rat, LatticeBasis, RatMatrix, SkewRatForm};
use crate::{Error, Result};

/// `z(γ, γ') = e(γᵀ B γ')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearCocycle {
    b: RatMatrix,
}

impl BilinearCocycle {
    pub fn new(b: RatMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::Shape("cocycle matrix must be square".into()));
        }
        Ok(Self { b })
    }

    /// The upper-triangular splitting of a skew form.
    pub fn upper(theta: &SkewRatForm) -> Self {
        let m = theta.matrix();
        let n = theta.n();
        Self { b: RatMatrix::from_fn(n, n, |i, j| if i < j { m[(i, j)].clone() } else { BigRational::zero() }) }
    }

    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.b
    }

    /// `γᵀ B γ'` mod 1.
    pub fn eval(&self, g: &[BigInt], h: &[BigInt]) -> BigRational {
        frac(&bilinear(&self.b, g, h))
    }
}

pub(crate) fn bilinear(m: &RatMatrix, g: &[BigInt], h: &[BigInt]) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            acc += &m[(i, j)] * BigRational::from_integer(&g[i] * &h[j]);
        }
    }
    acc
}

/// `χ(γ, γ') = e(γᵀ S γ')` with `S` skew modulo 1; entries are stored in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    s: RatMatrix,
}

impl Bicharacter {
    pub fn from_skew(theta: &SkewRatForm) -> Self {
        Self { s: theta.matrix().frac() }
    }

    pub fn n(&self) -> usize {
        self.s.rows()
    }

    /// Entries reduced into `[0, 1)`.
    pub fn reduced(&self) -> &RatMatrix {
        &self.s
    }

    /// Skew representative: upper entries in `[0, 1)`, lower entries their negatives.
    pub fn skew_form(&self) -> SkewRatForm {
        let n = self.n();
        let m = RatMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => self.s[(i, j)].clone(),
            std::cmp::Ordering::Greater => -self.s[(j, i)].clone(),
            std::cmp::Ordering::Equal => BigRational::zero(),
        });
        SkewRatForm::new(m).expect("skew by construction")
    }

    pub fn is_trivial(&self) -> bool {
        self.s.is_zero()
    }

    pub fn eval(&self, g: &[BigInt], h: &[BigInt]) -> BigRational {
        frac(&bilinear(&self.s, g, h))
    }

    pub fn inverse(&self) -> Self {
        Self { s: self.s.map(|v| frac(&-v.clone())) }
    }
}

pub fn bicharacter_of(z: &BilinearCocycle) -> Bicharacter {
    Bicharacter { s: (&z.b - &z.b.transpose()).frac() }
}

/// `H = {h : χ(h, γ) = 1 for all γ}` with its index in `ℤⁿ`.
pub fn radical(chi: &Bicharacter) -> LatticeBasis {
    let l = chi.s.common_denominator();
    let m = chi.s.transpose().scaled_to_int(&l).expect("denominator cleared");
    lattice_kernel_mod(&m, &l).expect("positive modulus")
}

/// `f(γ) = e(γᵀ Q γ + ℓᵀγ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPhase {
    pub q: RatMatrix,
    pub l: Vec<BigRational>,
}

impl QuadraticPhase {
    pub fn eval(&self, g: &[BigInt]) -> BigRational {
        let mut v = bilinear(&self.q, g, g);
        for (li, gi) in self.l.iter().zip(g) {
            v += li * BigRational::from_integer(gi.clone());
        }
        frac(&v)
    }

    pub fn is_trivial(&self) -> bool {
        self.q.frac().is_zero() && self.l.iter().all(|v| frac(v).is_zero())
    }
}

/// `z₁/z₂ = f(γ) f(γ') / f(γ+γ')` at `(γ, γ')`?
pub fn witness_holds(z1: &BilinearCocycle, z2: &BilinearCocycle, f: &QuadraticPhase, g: &[BigInt], h: &[BigInt]) -> bool {
    let sum: Vec<BigInt> = g.iter().zip(h).map(|(a, b)| a + b).collect();
    let lhs = frac(&(z1.eval(g, h) - z2.eval(g, h)));
    let rhs = frac(&(f.eval(g) + f.eval(h) - f.eval(&sum)));
    lhs == rhs
}

/// A coboundary witness relating `z₁` and `z₂`, present iff their bicharacters agree.
pub fn cohomologous(z1: &BilinearCocycle, z2: &BilinearCocycle) -> Result<Option<QuadraticPhase>> {
    if z1.n() != z2.n() {
        return Err(Error::Shape(format!("cocycles on ℤ^{} and ℤ^{}", z1.n(), z2.n())));
    }
    if bicharacter_of(z1) != bicharacter_of(z2) {
        return Ok(None);
    }
    let n = z1.n();
    let d = &z1.b - &z2.b;
    let half = rat(1, 2);
    // f(γ)f(γ')/f(γ+γ') = e(−γᵀ(Q+Qᵀ)γ'), so Q splits −D
    let q = RatMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => -d[(i, j)].clone(),
        std::cmp::Ordering::Equal => -(&d[(i, i)] * &half),
        std::cmp::Ordering::Greater => BigRational::zero(),
    });
    let f = QuadraticPhase { q, l: vec![BigRational::zero(); n] };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let g: Vec<BigInt> = (0..n).map(|_| int(rng.random_range(-9..=9))).collect();
        let h: Vec<BigInt> = (0..n).map(|_| int(rng.random_range(-9..=9))).collect();
        if !witness_holds(z1, z2, &f, &g, &h) {
            return Err(Error::Internal("coboundary witness failed substitution".into()));
        }
    }
    Ok(Some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn rm(rows: &[&[(i64, i64)]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect()).collect()).unwrap()
    }

    #[test]
    fn symmetric_is_trivial() {
        let z = BilinearCocycle::new(rm(&[&[(1, 3), (2, 5)], &[(2, 5), (7, 2)]])).unwrap();
        assert!(bicharacter_of(&z).is_trivial());
    }

    #[test]
    fn upper_splitting_recovers_theta() {
        let theta = SkewRatForm::new(rm(&[
            &[(0, 1), (1, 3), (-5, 4)],
            &[(-1, 3), (0, 1), (2, 7)],
            &[(5, 4), (-2, 7), (0, 1)],
        ]))
        .unwrap();
        let chi = bicharacter_of(&BilinearCocycle::upper(&theta));
        assert_eq!(chi, Bicharacter::from_skew(&theta));
        let g = [int(2), int(-1), int(3)];
        assert!(chi.eval(&g, &g).is_zero());
    }

    #[test]
    fn radical_of_planar() {
        for q in 1..8i64 {
            for p in 1..q {
                if num_integer::Integer::gcd(&p, &q) != 1 {
                    continue;
                }
                let chi = Bicharacter::from_skew(&SkewRatForm::planar(rat(p, q)));
                let h = radical(&chi);
                assert_eq!(h.index, int(q * q));
                assert_eq!(h.basis, IntMatrix::from_i64(&[&[q, 0], &[0, q]]));
            }
        }
        let h = radical(&Bicharacter::from_skew(&SkewRatForm::zero(3)));
        assert_eq!(h.index, int(1));
    }

    #[test]
    fn cohomology_decisions() {
        let b = rm(&[&[(1, 5), (2, 3)], &[(1, 7), (0, 1)]]);
        let z = BilinearCocycle::new(b.clone()).unwrap();
        let w = cohomologous(&z, &z).unwrap().unwrap();
        assert!(w.is_trivial());
        let s0 = rm(&[&[(3, 4), (1, 6)], &[(1, 6), (2, 9)]]);
        let z2 = BilinearCocycle::new(&b + &s0).unwrap();
        assert!(cohomologous(&z, &z2).unwrap().is_some());
        let inc = rm(&[&[(0, 1), (1, 4)], &[(0, 1), (0, 1)]]);
        let z3 = BilinearCocycle::new(&b + &inc).unwrap();
        assert!(cohomologous(&z, &z3).unwrap().is_none());
        let z4 = BilinearCocycle::new(RatMatrix::zeros(3, 3)).unwrap();
        assert!(cohomologous(&z, &z4).is_err());
    }
}
