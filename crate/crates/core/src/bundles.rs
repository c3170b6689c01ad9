//! Classification layer for projectively flat vector bundles and flat matrix
//! bundles on Tⁿ.
//!
//! Classes are held only through their classifying invariants: a rank `q`
//! projectively flat bundle is determined by `c₁ ∈ H²(Tⁿ, ℤ)`, and a flat
//! `q × q` matrix bundle by `β ∈ H²(Tⁿ, μ_q)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cohomology::{
    beta_reduce, fundamental_pairing, mu_q_image, AltFormModQ, AltFormZ, Orientation2, RootOfUnity,
};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorBundleClass {
    rank: BigInt,
    c1: AltFormZ,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixBundleClass {
    size: BigInt,
    beta: AltFormModQ,
}

fn positive(q: &BigInt, what: &str) -> Result<()> {
    if !q.is_positive() {
        return Err(Error::InvalidArgument(format!("{what} must be positive, got {q}")));
    }
    Ok(())
}

impl VectorBundleClass {
    pub fn new(rank: BigInt, c1: AltFormZ) -> Result<Self> {
        positive(&rank, "rank")?;
        Ok(Self { rank, c1 })
    }

    pub fn trivial(n: usize, rank: BigInt) -> Result<Self> {
        Self::new(rank, AltFormZ::zero(n))
    }

    pub fn n(&self) -> usize {
        self.c1.n()
    }

    pub fn rank(&self) -> &BigInt {
        &self.rank
    }

    pub fn c1(&self) -> &AltFormZ {
        &self.c1
    }
}

impl MatrixBundleClass {
    /// Matrix bundle classes may be given directly by β; every class on a
    /// torus arises as `End(E)` for some projectively flat `E`.
    pub fn new(size: BigInt, beta: AltFormModQ) -> Result<Self> {
        positive(&size, "size")?;
        if beta.modulus() != &size {
            return Err(Error::InvalidArgument(format!(
                "β has modulus {} but the bundle has size {}",
                beta.modulus(),
                size
            )));
        }
        Ok(Self { size, beta })
    }

    pub fn n(&self) -> usize {
        self.beta.n()
    }

    pub fn size(&self) -> &BigInt {
        &self.size
    }

    pub fn beta(&self) -> &AltFormModQ {
        &self.beta
    }
}

/// The projectively flat class of rank `q` with first Chern class `c`.
pub fn classify_projflat(n: usize, q: &BigInt, c: &AltFormZ) -> Result<VectorBundleClass> {
    if c.n() != n {
        return Err(Error::Shape(format!("form on ℤ^{} for base T^{}", c.n(), n)));
    }
    VectorBundleClass::new(q.clone(), c.clone())
}

/// Isomorphism of projectively flat classes of equal rank. Comparing
/// classes of different rank is rejected rather than answered.
pub fn iso_vector(e: &VectorBundleClass, f: &VectorBundleClass) -> Result<bool> {
    if e.rank != f.rank {
        return Err(rank_mismatch(&e.rank, &f.rank));
    }
    Ok(e.n() == f.n() && e.c1 == f.c1)
}

fn rank_mismatch(a: &BigInt, b: &BigInt) -> Error {
    let small = |x: &BigInt| usize::try_from(x).unwrap_or(usize::MAX);
    Error::RankMismatch(small(a), small(b))
}

/// `E ↦ End(E) = E ⊗ E*`, sending `c₁(E)` to its reduction mod `q`.
pub fn endo(e: &VectorBundleClass) -> MatrixBundleClass {
    let beta = beta_reduce(&e.c1, &e.rank).expect("rank is positive");
    MatrixBundleClass { size: e.rank.clone(), beta }
}

pub fn iso_matrix(a: &MatrixBundleClass, b: &MatrixBundleClass) -> bool {
    a.size == b.size && a.n() == b.n() && a.beta == b.beta
}

/// `E ⊗ L` for a line bundle with Chern class `c_L`: `c₁ ↦ c₁ + q·c_L`.
pub fn tensor_line(e: &VectorBundleClass, c_l: &AltFormZ) -> Result<VectorBundleClass> {
    if c_l.n() != e.n() {
        return Err(Error::Shape(format!("line bundle on T^{} for base T^{}", c_l.n(), e.n())));
    }
    let c1 = e.c1.checked_add(&c_l.scale(&e.rank))?;
    Ok(VectorBundleClass { rank: e.rank.clone(), c1 })
}

/// The line bundle `L` with `E ⊗ L ≅ E'`, if any: `c_L = (c₁' − c₁)/q`.
pub fn line_twist_exists(e: &VectorBundleClass, f: &VectorBundleClass) -> Result<Option<AltFormZ>> {
    if e.rank != f.rank {
        return Err(rank_mismatch(&e.rank, &f.rank));
    }
    if e.n() != f.n() {
        return Err(Error::Shape(format!("bases T^{} and T^{}", e.n(), f.n())));
    }
    Ok(f.c1.checked_sub(&e.c1)?.divide(&e.rank))
}

/// `E^{⊕m}`: rank `m·q`, first Chern class `m·c₁`.
pub fn direct_sum_power(e: &VectorBundleClass, m: &BigInt) -> Result<VectorBundleClass> {
    positive(m, "multiplicity")?;
    Ok(VectorBundleClass { rank: &e.rank * m, c1: e.c1.scale(m) })
}

/// The rank-`q` bundle `X(q, a)` on T² built from the cyclic factor of
/// automorphy; `c₁(e₁, e₂) = −a`.
pub fn x_bundle(q: &BigInt, a: &BigInt) -> Result<VectorBundleClass> {
    positive(q, "rank")?;
    Ok(VectorBundleClass { rank: q.clone(), c1: AltFormZ::planar(-a) })
}

/// `tw(E) = −c₁(E)[T²]`.
pub fn twist(e: &VectorBundleClass, o: Orientation2) -> Result<BigInt> {
    Ok(-fundamental_pairing(&e.c1, o)?)
}

/// `ω(A) = β(A)[T²]⁻¹`.
pub fn omega(a: &MatrixBundleClass, o: Orientation2) -> Result<RootOfUnity> {
    // antisymmetric integral lift of the mod-q form
    let m = a.beta.matrix();
    let lifted = AltFormZ::new(IntMatrix::from_fn(m.rows(), m.cols(), |i, j| match i.cmp(&j) {
        Ordering::Less => m[(i, j)].clone(),
        Ordering::Greater => -m[(j, i)].clone(),
        Ordering::Equal => BigInt::zero(),
    }))?;
    let pairing = fundamental_pairing(&lifted, o)?;
    Ok(RootOfUnity::from_phase(BigRational::new(-pairing, a.size.clone())))
}

/// Image of the twist under π₁(U(q)) → π₁(PU(q)) ≅ μ_q.
pub fn tw_to_omega(tw: &BigInt, q: &BigInt) -> Result<RootOfUnity> {
    mu_q_image(tw, q)
}

/// The trivial line bundle on Tⁿ.
pub fn trivial_line(n: usize) -> VectorBundleClass {
    VectorBundleClass { rank: BigInt::one(), c1: AltFormZ::zero(n) }
}
