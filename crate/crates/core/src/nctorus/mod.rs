//! Rational noncommutative tori: `q_θ`, the block normal form, the bundle `E_θ`,
//! and the decision of `θ' ∈ {TθTᵀ : T ∈ GL(n,ℤ)} + Mₙ(ℤ)`.

mod iso;
mod orbit;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::bundles::{endo, MatrixBundleClass, VectorBundleClass};
use crate::cohomology::AltFormZ;
use crate::linalg::{smith_normal_form, symplectic_normal_form, IntMatrix, RatMatrix, SkewRatForm};
use crate::projrep::{heisenberg_rep, radical, Bicharacter, ProjectiveRep};
use crate::{Error, Result};

pub use iso::{
    iso_decide, iso_decide_with, iso_via_bundles, iso_via_bundles_with, IsoCertificate, IsoDecision, NonIsoReason,
    DEFAULT_ORBIT_CAP,
};
pub use orbit::{ModSkew, OrbitWalker};

/// `C(Tⁿ_θ) ⊗ M_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCTorusParams {
    theta: SkewRatForm,
    m: BigInt,
}

impl NCTorusParams {
    pub fn new(theta: SkewRatForm, m: BigInt) -> Result<Self> {
        if !m.is_positive() {
            return Err(Error::InvalidArgument(format!("amplification must be positive, got {m}")));
        }
        Ok(Self { theta, m })
    }

    pub fn n(&self) -> usize {
        self.theta.n()
    }

    pub fn theta(&self) -> &SkewRatForm {
        &self.theta
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }
}

/// Common denominator of the entries.
pub fn denominator(theta: &SkewRatForm) -> BigInt {
    theta.matrix().common_denominator()
}

fn scaled(theta: &SkewRatForm, l: &BigInt) -> IntMatrix {
    theta.matrix().scaled_to_int(l).expect("ℓ clears denominators")
}

/// `[(ℤⁿ + im θ) : ℤⁿ]` from the Smith form of `ℓθ`.
pub fn image_index(theta: &SkewRatForm) -> BigInt {
    let l = denominator(theta);
    let d = smith_normal_form(&scaled(theta, &l)).diagonal();
    let mut idx = BigInt::one();
    for di in d {
        idx *= &l / di.gcd(&l);
    }
    idx
}

/// `[ℤⁿ : H]` for the radical of `e(θ)`.
pub fn radical_index(theta: &SkewRatForm) -> BigInt {
    radical(&Bicharacter::from_skew(theta)).index
}

/// Square root of the common value of the two index formulas.
///
/// Panics if the formulas disagree or the index is not a square.
pub fn q_theta(theta: &SkewRatForm) -> BigInt {
    let a = image_index(theta);
    let b = radical_index(theta);
    assert_eq!(a, b, "image index and radical index disagree for {}", theta.matrix());
    let r = a.sqrt();
    assert_eq!(&r * &r, a, "index {a} is not a perfect square");
    r
}

/// `T·θ·Tᵀ = [[0, D, 0], [−D, 0, 0], [0, 0, 0]]` with `D = diag(blocks)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    pub t: IntMatrix,
    /// `pᵢ/qᵢ` in lowest terms, denominators ascending along the divisor chain.
    pub blocks: Vec<BigRational>,
    pub free_rank: usize,
}

impl NormalFormResult {
    pub fn n(&self) -> usize {
        self.t.rows()
    }

    pub fn block_form(&self) -> SkewRatForm {
        block_form(self.n(), &self.blocks)
    }

    pub fn denominators(&self) -> Vec<BigInt> {
        self.blocks.iter().map(|b| b.denom().clone()).collect()
    }
}

/// `[[0, D, 0], [−D, 0, 0], [0, 0, 0]]` of size `n`.
pub fn block_form(n: usize, blocks: &[BigRational]) -> SkewRatForm {
    let k = blocks.len();
    let mut m = RatMatrix::zeros(n, n);
    for (i, b) in blocks.iter().enumerate() {
        m[(i, k + i)] = b.clone();
        m[(k + i, i)] = -b.clone();
    }
    SkewRatForm::new(m).expect("skew")
}

pub fn normal_form(theta: &SkewRatForm) -> NormalFormResult {
    let n = theta.n();
    let l = denominator(theta);
    let nf = symplectic_normal_form(&scaled(theta, &l)).expect("skew input");
    let k = nf.divisors.len();
    // reverse the blocks so denominators divide upward, then interleave into the standard layout
    let mut p = IntMatrix::zeros(n, n);
    for j in 0..k {
        p[(j, 2 * (k - 1 - j))] = BigInt::one();
        p[(k + j, 2 * (k - 1 - j) + 1)] = BigInt::one();
    }
    for i in 2 * k..n {
        p[(i, i)] = BigInt::one();
    }
    let t = &p * &nf.t;
    let blocks = nf.divisors.iter().rev().map(|e| BigRational::new(e.clone(), l.clone())).collect();
    let out = NormalFormResult { t, blocks, free_rank: n - 2 * k };
    debug_assert_eq!(theta.transform(&out.t).unwrap(), out.block_form());
    out
}

/// Symplectic divisors of `ℓθ` reduced to `gcd(eᵢ, ℓ)`, padded with `ℓ` to `⌊n/2⌋` entries and sorted.
pub fn divisor_chain(theta: &SkewRatForm, l: &BigInt) -> Vec<BigInt> {
    let m = scaled(theta, l);
    let nf = symplectic_normal_form(&m).expect("skew input");
    let mut chain: Vec<BigInt> = nf.divisors.iter().map(|e| e.gcd(l)).collect();
    chain.resize(theta.n() / 2, l.clone());
    chain.sort();
    chain
}

/// `c₁(E_θ) := q_θ·θ`.
pub fn c1_of_e_theta(theta: &SkewRatForm) -> AltFormZ {
    let q = q_theta(theta);
    let m = theta.matrix().scaled_to_int(&q).expect("q_θ·θ is integral");
    AltFormZ::new(m).expect("skew")
}

pub fn vector_bundle_of(theta: &SkewRatForm) -> VectorBundleClass {
    VectorBundleClass::new(q_theta(theta), c1_of_e_theta(theta)).expect("positive rank")
}

/// `E_θ`, `End(E_θ)` and the projective representation that realizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaBundle {
    pub vector: VectorBundleClass,
    pub matrix: MatrixBundleClass,
    pub rep: ProjectiveRep,
}

pub fn bundle_of(theta: &SkewRatForm) -> ThetaBundle {
    let vector = vector_bundle_of(theta);
    let matrix = endo(&vector);
    let nf = normal_form(theta);
    let rho = heisenberg_rep(&nf.block_form()).expect("normal form");
    // ρ(γ) = ρ_nf(T⁻ᵀγ)
    let s = nf.t.inverse_unimodular().expect("unimodular").transpose();
    let gens = (0..theta.n()).map(|i| rho.eval(&s.column(i))).collect();
    let rep = if theta.n() == 0 { rho } else { ProjectiveRep::new(gens).expect("scalar commutators") };
    ThetaBundle { vector, matrix, rep }
}
