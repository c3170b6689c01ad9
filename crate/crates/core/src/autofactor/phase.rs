//! Affine phases `x ↦ e(ℓ·x + c)` over the base coordinates of ℝⁿ.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::io::format_rational;
use crate::linalg::frac;

/// Real-valued affine function `ℓ·x + c`, not reduced; the lift of a phase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineFunction {
    pub linear: Vec<BigRational>,
    pub constant: BigRational,
}

impl AffineFunction {
    pub fn zero(vars: usize) -> Self {
        Self { linear: vec![BigRational::zero(); vars], constant: BigRational::zero() }
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        Self { linear: vec![BigRational::zero(); vars], constant: c }
    }

    pub fn vars(&self) -> usize {
        self.linear.len()
    }

    pub fn is_constant(&self) -> bool {
        self.linear.iter().all(Zero::is_zero)
    }

    /// `x ↦ f(x + shift)`.
    pub fn translate(&self, shift: &[BigInt]) -> Self {
        let mut c = self.constant.clone();
        for (l, s) in self.linear.iter().zip(shift) {
            c += l * BigRational::from_integer(s.clone());
        }
        Self { linear: self.linear.clone(), constant: c }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { linear: self.linear.iter().map(|l| l * k).collect(), constant: &self.constant * k }
    }

    pub fn reduce(&self) -> AffinePhase {
        AffinePhase::new(self.linear.clone(), self.constant.clone())
    }
}

impl Add for &AffineFunction {
    type Output = AffineFunction;
    fn add(self, rhs: Self) -> AffineFunction {
        assert_eq!(self.vars(), rhs.vars(), "variable count mismatch");
        AffineFunction {
            linear: self.linear.iter().zip(&rhs.linear).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &rhs.constant,
        }
    }
}

impl Sub for &AffineFunction {
    type Output = AffineFunction;
    fn sub(self, rhs: Self) -> AffineFunction {
        self + &(-rhs)
    }
}

impl Neg for &AffineFunction {
    type Output = AffineFunction;
    fn neg(self) -> AffineFunction {
        AffineFunction { linear: self.linear.iter().map(|a| -a).collect(), constant: -self.constant.clone() }
    }
}

/// Phase `e(ℓ·x + c)`; the linear part is exact, the constant lives in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePhase {
    linear: Vec<BigRational>,
    constant: BigRational,
}

impl AffinePhase {
    pub fn new(linear: Vec<BigRational>, constant: BigRational) -> Self {
        Self { linear, constant: frac(&constant) }
    }

    pub fn zero(vars: usize) -> Self {
        Self::new(vec![BigRational::zero(); vars], BigRational::zero())
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        Self::new(vec![BigRational::zero(); vars], c)
    }

    pub fn vars(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[BigRational] {
        &self.linear
    }

    pub fn constant_part(&self) -> &BigRational {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.linear.iter().all(Zero::is_zero)
    }

    /// The representative with constant in `[0, 1)`.
    pub fn lift(&self) -> AffineFunction {
        AffineFunction { linear: self.linear.clone(), constant: self.constant.clone() }
    }

    pub fn translate(&self, shift: &[BigInt]) -> Self {
        self.lift().translate(shift).reduce()
    }

    /// The phase in turns at a numerical point.
    pub fn turns_at(&self, x: &[f64]) -> f64 {
        let mut t = self.constant.to_f64().unwrap_or(0.0);
        for (l, xi) in self.linear.iter().zip(x) {
            t += l.to_f64().unwrap_or(0.0) * xi;
        }
        t
    }

    pub fn to_text(&self) -> PhaseText {
        PhaseText {
            linear: self.linear.iter().map(format_rational).collect(),
            constant: format_rational(&self.constant),
        }
    }
}

impl Add for &AffinePhase {
    type Output = AffinePhase;
    fn add(self, rhs: Self) -> AffinePhase {
        (&self.lift() + &rhs.lift()).reduce()
    }
}

impl Sub for &AffinePhase {
    type Output = AffinePhase;
    fn sub(self, rhs: Self) -> AffinePhase {
        (&self.lift() - &rhs.lift()).reduce()
    }
}

impl Neg for &AffinePhase {
    type Output = AffinePhase;
    fn neg(self) -> AffinePhase {
        (-&self.lift()).reduce()
    }
}

impl fmt::Display for AffinePhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .linear
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_zero())
            .map(|(i, l)| format!("{}*x{}", format_rational(l), i))
            .collect();
        if !self.constant.is_zero() || terms.is_empty() {
            terms.push(format_rational(&self.constant));
        }
        write!(f, "e({})", terms.join(" + "))
    }
}

/// Serialized phase: exact linear coefficients and constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseText {
    pub linear: Vec<String>,
    pub constant: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn constants_reduce_mod_one() {
        let p = AffinePhase::new(vec![rat(-3, 1)], rat(7, 2));
        assert_eq!(p.constant_part(), &rat(1, 2));
        assert_eq!(p.linear(), &[rat(-3, 1)]);
    }

    #[test]
    fn translation_by_lattice_vectors() {
        let p = AffinePhase::new(vec![rat(-2, 1), rat(1, 3)], rat(0, 1));
        // integer linear coefficient: translating in x0 is invisible mod 1
        assert_eq!(p.translate(&[int(1), int(0)]), p);
        assert_eq!(p.translate(&[int(0), int(1)]).constant_part(), &rat(1, 3));
    }

    #[test]
    fn lift_keeps_integer_parts() {
        let f = AffineFunction { linear: vec![rat(-5, 1)], constant: rat(0, 1) };
        let d = &f.translate(&[int(2)]) - &f;
        assert!(d.is_constant());
        assert_eq!(d.constant, rat(-10, 1));
    }

    #[test]
    fn display() {
        let p = AffinePhase::new(vec![rat(-1, 1), rat(0, 1)], rat(1, 2));
        assert_eq!(p.to_string(), "e(-1*x0 + 1/2)");
        assert_eq!(AffinePhase::zero(2).to_string(), "e(0)");
    }
}
