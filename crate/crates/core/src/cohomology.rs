//! Integral and μ_q-valued degree-2 cohomology of tori, as alternating forms
//! on the lattice.
//!
//! Degree-1 classes are integer vectors; degree-2 classes are skew-symmetric
//! integer matrices. The orientation convention lives in
//! [`fundamental_pairing`] and nowhere else: for the standard orientation,
//! `c[T²] = −c(e₁, e₂)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{frac, IntMatrix};

/// Alternating integer 2-form on ℤⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltFormZ {
    mat: IntMatrix,
}

impl AltFormZ {
    pub fn new(mat: IntMatrix) -> Result<Self> {
        if !mat.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(Self { mat })
    }

    pub fn zero(n: usize) -> Self {
        Self { mat: IntMatrix::zeros(n, n) }
    }

    /// The form on ℤ² with `c(e₁, e₂) = k`.
    pub fn planar(k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut mat = IntMatrix::zeros(2, 2);
        mat[(0, 1)] = k.clone();
        mat[(1, 0)] = -k;
        Self { mat }
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    /// `c(eᵢ, eⱼ)`.
    pub fn value(&self, i: usize, j: usize) -> &BigInt {
        &self.mat[(i, j)]
    }

    /// `c(u, v) = uᵗ·M·v`.
    pub fn eval(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let n = self.n();
        let mut acc = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &u[i] * &self.mat[(i, j)] * &v[j];
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn checked_add(&self, other: &AltFormZ) -> Result<AltFormZ> {
        Ok(Self { mat: self.mat.checked_add(&other.mat)? })
    }

    pub fn checked_sub(&self, other: &AltFormZ) -> Result<AltFormZ> {
        Ok(Self { mat: self.mat.checked_sub(&other.mat)? })
    }

    pub fn scale(&self, k: &BigInt) -> AltFormZ {
        Self { mat: self.mat.scale(k) }
    }

    /// Exact quotient by `q` when every entry is divisible, else `None`.
    pub fn divide(&self, q: &BigInt) -> Option<AltFormZ> {
        if q.is_zero() || !self.mat.all_divisible_by(q) {
            return None;
        }
        Some(Self { mat: self.mat.map(|x| x / q) })
    }
}

/// Alternating form with values in ℤ/q, entries kept in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltFormModQ {
    modulus: BigInt,
    mat: IntMatrix,
}

impl AltFormModQ {
    pub fn new(mat: IntMatrix, modulus: BigInt) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::NonPositiveModulus(modulus.to_string()));
        }
        if !mat.is_square() {
            return Err(Error::Shape("form must be square".into()));
        }
        let mat = mat.reduce_mod(&modulus);
        let sum = &mat + &mat.transpose();
        if !sum.all_divisible_by(&modulus) || (0..mat.rows()).any(|i| !mat[(i, i)].is_zero()) {
            return Err(Error::NotSkew);
        }
        Ok(Self { modulus, mat })
    }

    pub fn n(&self) -> usize {
        self.mat.rows()
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn value(&self, i: usize, j: usize) -> &BigInt {
        &self.mat[(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn pullback(&self, p: &IntMatrix) -> Result<AltFormModQ> {
        if p.rows() != self.n() {
            return Err(Error::Shape(format!("lattice map has {} rows, form is on ℤ^{}", p.rows(), self.n())));
        }
        let m = p.transpose().checked_mul(&self.mat)?.checked_mul(p)?;
        AltFormModQ::new(m, self.modulus.clone())
    }
}

/// An element of μ_q, stored as its exact phase `c/d ∈ [0, 1)` in lowest terms;
/// the value is `e(c/d) = exp(2πi·c/d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    phase: BigRational,
}

impl RootOfUnity {
    pub fn one() -> Self {
        Self { phase: BigRational::zero() }
    }

    pub fn from_phase(phase: BigRational) -> Self {
        Self { phase: frac(&phase) }
    }

    pub fn phase(&self) -> &BigRational {
        &self.phase
    }

    pub fn is_one(&self) -> bool {
        self.phase.is_zero()
    }

    /// Group law: phases add modulo 1.
    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        Self::from_phase(&self.phase + &other.phase)
    }

    pub fn inverse(&self) -> RootOfUnity {
        Self::from_phase(-self.phase.clone())
    }

    pub fn pow(&self, k: &BigInt) -> RootOfUnity {
        Self::from_phase(&self.phase * BigRational::from_integer(k.clone()))
    }

    /// Multiplicative order (the reduced denominator).
    pub fn order(&self) -> BigInt {
        self.phase.denom().clone()
    }

    /// Numerator of the phase written over `q`, if the element lies in μ_q.
    pub fn residue_in(&self, q: &BigInt) -> Option<BigInt> {
        let c = &self.phase * BigRational::from_integer(q.clone());
        c.is_integer().then(|| c.to_integer())
    }

    /// Display as `c/q` over the ambient order `q` (I/O only).
    pub fn display_in(&self, q: &BigInt) -> String {
        match self.residue_in(q) {
            Some(c) => format!("{c}/{q}"),
            None => self.to_string(),
        }
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let n: f64 = self.phase.numer().to_string().parse().unwrap_or(0.0);
        let d: f64 = self.phase.denom().to_string().parse().unwrap_or(1.0);
        num_complex::Complex64::from_polar(1.0, std::f64::consts::TAU * n / d)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.phase.numer(), self.phase.denom())
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let x = crate::io::parse_rational(s)?;
        Ok(Self::from_phase(x))
    }
}

/// Orientation of T², relative to the one induced by `ds ∧ dt`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Orientation2 {
    #[default]
    Standard,
    Reversed,
}

impl Orientation2 {
    pub fn sign(self) -> i64 {
        match self {
            Orientation2::Standard => 1,
            Orientation2::Reversed => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation2::Standard => Orientation2::Reversed,
            Orientation2::Reversed => Orientation2::Standard,
        }
    }
}

/// `u ∧ v = u·vᵗ − v·uᵗ`.
pub fn wedge(u: &[BigInt], v: &[BigInt]) -> Result<AltFormZ> {
    if u.len() != v.len() {
        return Err(Error::Shape(format!("wedge of vectors of length {} and {}", u.len(), v.len())));
    }
    let n = u.len();
    let mat = IntMatrix::from_fn(n, n, |i, j| &u[i] * &v[j] - &v[i] * &u[j]);
    Ok(AltFormZ { mat })
}

/// `c[T²]` for the given orientation: `sign · (−c(e₁, e₂))`.
pub fn fundamental_pairing(c: &AltFormZ, o: Orientation2) -> Result<BigInt> {
    if c.n() != 2 {
        return Err(Error::Shape(format!("pairing with [T²] needs n = 2, got {}", c.n())));
    }
    Ok(-c.value(0, 1) * BigInt::from(o.sign()))
}

/// Coefficient reduction ℤ → ℤ/q, the map `c₁(E) ↦ β(End E)`.
pub fn beta_reduce(c: &AltFormZ, q: &BigInt) -> Result<AltFormModQ> {
    AltFormModQ::new(c.matrix().clone(), q.clone())
}

/// Pullback along the lattice map `P: ℤⁿ → ℤᵐ`: `Pᵗ·c·P`.
pub fn pullback(c: &AltFormZ, p: &IntMatrix) -> Result<AltFormZ> {
    if p.rows() != c.n() {
        return Err(Error::Shape(format!("lattice map has {} rows, form is on ℤ^{}", p.rows(), c.n())));
    }
    let mat = p.transpose().checked_mul(c.matrix())?.checked_mul(p)?;
    Ok(AltFormZ { mat })
}

/// `k ↦ e(k/q)`, the map π₁(U(q)) ≅ ℤ → π₁(PU(q)) ≅ μ_q under the fixed convention.
pub fn mu_q_image(k: &BigInt, q: &BigInt) -> Result<RootOfUnity> {
    if !q.is_positive() {
        return Err(Error::NonPositiveModulus(q.to_string()));
    }
    Ok(RootOfUnity::from_phase(BigRational::new(k.mod_floor(q), q.clone())))
}

/// `c(e₁, e₂)` reduced mod q, as a residue in `[0, q)`.
pub fn planar_residue(beta: &AltFormModQ) -> BigInt {
    beta.value(0, 1).clone()
}
