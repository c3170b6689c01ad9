//! Generalized permutation matrices whose nonzero entries are affine phases.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::phase::{AffinePhase, PhaseText};
use crate::linalg::rat;
use crate::{Error, Result};

/// Column `j` carries the single nonzero entry `e(phases[j])` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenPermPhaseMatrix {
    perm: Vec<usize>,
    phases: Vec<AffinePhase>,
    vars: usize,
}

impl GenPermPhaseMatrix {
    pub fn new(perm: Vec<usize>, phases: Vec<AffinePhase>, vars: usize) -> Result<Self> {
        let q = perm.len();
        if phases.len() != q {
            return Err(Error::Shape(format!("{} phases for {} columns", phases.len(), q)));
        }
        let mut seen = vec![false; q];
        for &p in &perm {
            if p >= q || seen[p] {
                return Err(Error::InvalidArgument(format!("not a permutation: {:?}", perm)));
            }
            seen[p] = true;
        }
        if phases.iter().any(|ph| ph.vars() != vars) {
            return Err(Error::Shape("phase variable count mismatch".into()));
        }
        Ok(Self { perm, phases, vars })
    }

    pub fn identity(q: usize, vars: usize) -> Self {
        Self { perm: (0..q).collect(), phases: vec![AffinePhase::zero(vars); q], vars }
    }

    /// `e(φ)·I`.
    pub fn scalar(q: usize, phase: AffinePhase) -> Self {
        let vars = phase.vars();
        Self { perm: (0..q).collect(), phases: vec![phase; q], vars }
    }

    /// Diagonal matrix `diag(e(φ_0), …)`.
    pub fn diagonal(phases: Vec<AffinePhase>, vars: usize) -> Result<Self> {
        Self::new((0..phases.len()).collect(), phases, vars)
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[AffinePhase] {
        &self.phases
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.size(), rhs.size(), "size mismatch");
        let perm = rhs.perm.iter().map(|&p| self.perm[p]).collect();
        let phases = rhs
            .perm
            .iter()
            .zip(&rhs.phases)
            .map(|(&p, ph)| ph + &self.phases[p])
            .collect();
        Self { perm, phases, vars: self.vars }
    }

    pub fn inverse(&self) -> Self {
        let q = self.size();
        let mut perm = vec![0; q];
        let mut phases = vec![AffinePhase::zero(self.vars); q];
        for j in 0..q {
            perm[self.perm[j]] = j;
            phases[self.perm[j]] = -&self.phases[j];
        }
        Self { perm, phases, vars: self.vars }
    }

    pub fn pow(&self, k: &BigInt) -> Self {
        let mut base = if k.is_negative() { self.inverse() } else { self.clone() };
        let mut e = k.abs();
        let mut acc = Self::identity(self.size(), self.vars);
        let two = BigInt::from(2);
        while !e.is_zero() {
            if (&e % &two) == BigInt::from(1) {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e /= &two;
        }
        acc
    }

    /// `x ↦ M(x + shift)`.
    pub fn translate(&self, shift: &[BigInt]) -> Self {
        Self {
            perm: self.perm.clone(),
            phases: self.phases.iter().map(|p| p.translate(shift)).collect(),
            vars: self.vars,
        }
    }

    pub fn scale(&self, phase: &AffinePhase) -> Self {
        Self {
            perm: self.perm.clone(),
            phases: self.phases.iter().map(|p| p + phase).collect(),
            vars: self.vars,
        }
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (p, q) = (self.size(), rhs.size());
        let mut perm = vec![0; p * q];
        let mut phases = vec![AffinePhase::zero(self.vars); p * q];
        for a in 0..p {
            for b in 0..q {
                perm[a * q + b] = self.perm[a] * q + rhs.perm[b];
                phases[a * q + b] = &self.phases[a] + &rhs.phases[b];
            }
        }
        Self { perm, phases, vars: self.vars }
    }

    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let p = self.size();
        let mut perm = self.perm.clone();
        perm.extend(rhs.perm.iter().map(|&j| j + p));
        let mut phases = self.phases.clone();
        phases.extend(rhs.phases.iter().cloned());
        Self { perm, phases, vars: self.vars }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.phases.iter().all(AffinePhase::is_zero)
    }

    /// `Some(φ)` when the matrix is `e(φ)·I`.
    pub fn as_scalar(&self) -> Option<AffinePhase> {
        if !self.perm.iter().enumerate().all(|(i, &p)| i == p) {
            return None;
        }
        let first = self.phases.first()?.clone();
        self.phases.iter().all(|p| *p == first).then_some(first)
    }

    pub fn perm_sign(&self) -> i64 {
        let q = self.size();
        let mut seen = vec![false; q];
        let mut cycles = 0;
        for s in 0..q {
            if !seen[s] {
                cycles += 1;
                let mut j = s;
                while !seen[j] {
                    seen[j] = true;
                    j = self.perm[j];
                }
            }
        }
        if (q - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Symbolic determinant; the permutation sign enters as the constant `1/2`.
    pub fn det(&self) -> AffinePhase {
        let mut d = AffinePhase::zero(self.vars);
        for p in &self.phases {
            d = &d + p;
        }
        if self.perm_sign() < 0 {
            d = &d + &AffinePhase::constant(self.vars, rat(1, 2));
        }
        d
    }

    /// Numerical matrix at a point of the base.
    pub fn to_dense(&self, x: &[f64]) -> DMatrix<Complex64> {
        let q = self.size();
        let mut m = DMatrix::from_element(q, q, Complex64::new(0.0, 0.0));
        for j in 0..q {
            let t = self.phases[j].turns_at(x);
            m[(self.perm[j], j)] = Complex64::from_polar(1.0, std::f64::consts::TAU * t);
        }
        m
    }

    /// Entry phase at `(row, col)` if nonzero.
    pub fn entry(&self, row: usize, col: usize) -> Option<&AffinePhase> {
        (self.perm[col] == row).then(|| &self.phases[col])
    }

    /// Entries with rational constants and no variables, as phases in turns.
    pub fn constant_phases(&self) -> Option<Vec<BigRational>> {
        self.phases
            .iter()
            .map(|p| p.is_constant().then(|| p.constant_part().clone()))
            .collect()
    }

    pub fn to_text(&self) -> GenPermText {
        GenPermText { perm: self.perm.clone(), phases: self.phases.iter().map(AffinePhase::to_text).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenPermText {
    pub perm: Vec<usize>,
    pub phases: Vec<PhaseText>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn ph(l: &[i64], c: (i64, i64)) -> AffinePhase {
        AffinePhase::new(l.iter().map(|&v| rat(v, 1)).collect(), rat(c.0, c.1))
    }

    fn sample() -> GenPermPhaseMatrix {
        GenPermPhaseMatrix::new(vec![2, 0, 1], vec![ph(&[1], (1, 3)), ph(&[0], (1, 2)), ph(&[-2], (0, 1))], 1).unwrap()
    }

    fn close(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-9)
    }

    #[test]
    fn product_matches_dense() {
        let a = sample();
        let b = GenPermPhaseMatrix::new(vec![1, 2, 0], vec![ph(&[0], (1, 5)), ph(&[3], (0, 1)), ph(&[0], (2, 3))], 1).unwrap();
        let x = [0.37];
        assert!(close(&a.mul(&b).to_dense(&x), &(a.to_dense(&x) * b.to_dense(&x))));
        assert!(close(&a.kron(&b).to_dense(&x), &a.to_dense(&x).kronecker(&b.to_dense(&x))));
    }

    #[test]
    fn inverse_and_powers() {
        let a = sample();
        assert!(a.mul(&a.inverse()).is_identity());
        assert_eq!(a.pow(&int(3)), a.mul(&a).mul(&a));
        assert_eq!(a.pow(&int(-2)), a.inverse().mul(&a.inverse()));
        assert!(a.pow(&int(0)).is_identity());
    }

    #[test]
    fn determinant_matches_dense() {
        let a = sample();
        let x = [0.81];
        let d = a.to_dense(&x).determinant();
        let t = a.det().turns_at(&x);
        let e = Complex64::from_polar(1.0, std::f64::consts::TAU * t);
        assert!((d - e).norm() < 1e-9);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(GenPermPhaseMatrix::new(vec![0, 0], vec![ph(&[], (0, 1)); 2], 0).is_err());
        assert!(GenPermPhaseMatrix::new(vec![0, 1], vec![ph(&[], (0, 1))], 0).is_err());
    }

    #[test]
    fn scalar_detection() {
        let s = GenPermPhaseMatrix::scalar(3, ph(&[], (1, 3)));
        assert_eq!(s.as_scalar(), Some(ph(&[], (1, 3))));
        assert_eq!(sample().as_scalar(), None);
    }
}
