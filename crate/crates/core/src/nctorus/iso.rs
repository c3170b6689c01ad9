//! Deciding isomorphism of `C(Tⁿ_θ) ⊗ M_m` and `C(Tⁿ_θ') ⊗ M_m'`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::orbit::{Meeting, ModSkew, OrbitWalker};
use super::{denominator, divisor_chain, q_theta, vector_bundle_of, NCTorusParams};
use crate::bundles::{direct_sum_power, line_twist_exists};
use crate::linalg::{lift_unimodular, IntMatrix, SkewRatForm};
use crate::{Error, Result};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// `θ' = T·θ·Tᵀ + K` with `T` unimodular and `K` integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub t: IntMatrix,
    pub shift: IntMatrix,
}

impl IsoCertificate {
    pub fn verify(&self, theta: &SkewRatForm, theta2: &SkewRatForm) -> bool {
        self.t.is_unimodular()
            && theta
                .transform(&self.t)
                .and_then(|x| x.shift(&self.shift))
                .is_ok_and(|x| x == *theta2)
            && self.shift.is_skew()
    }

    /// Certificate for the reverse direction.
    pub fn inverse(&self) -> Result<IsoCertificate> {
        // θ = T⁻¹θ'T⁻ᵀ − T⁻¹KT⁻ᵀ
        let ti = self.t.inverse_unimodular()?;
        let k = -&self.shift.congruence_by(&ti);
        Ok(IsoCertificate { t: ti, shift: k })
    }

    /// If `self: θ → θ'` and `next: θ' → θ''`, the composite `θ → θ''`.
    pub fn compose(&self, next: &IsoCertificate) -> IsoCertificate {
        let t = &next.t * &self.t;
        let shift = &self.shift.congruence_by(&next.t) + &next.shift;
        IsoCertificate { t, shift }
    }
}

trait Congruence {
    fn congruence_by(&self, t: &IntMatrix) -> IntMatrix;
}

impl Congruence for IntMatrix {
    fn congruence_by(&self, t: &IntMatrix) -> IntMatrix {
        &(t * self) * &t.transpose()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonIsoReason {
    Dimension,
    Amplification,
    QTheta,
    DivisorChain,
    Orbit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoDecision {
    Isomorphic(IsoCertificate),
    NotIsomorphic(NonIsoReason),
    /// The orbit walk visited this many states before hitting the cap.
    Undecided(usize),
}

impl IsoDecision {
    pub fn is_isomorphic(&self) -> Option<bool> {
        match self {
            IsoDecision::Isomorphic(_) => Some(true),
            IsoDecision::NotIsomorphic(_) => Some(false),
            IsoDecision::Undecided(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&IsoCertificate> {
        match self {
            IsoDecision::Isomorphic(c) => Some(c),
            _ => None,
        }
    }
}

struct Prepared {
    l: BigInt,
    walker: OrbitWalker,
    a: ModSkew,
    b: ModSkew,
}

/// Steps shared by both decision paths: the cheap invariants and the reduction mod ℓ.
fn prepare(p: &NCTorusParams, p2: &NCTorusParams) -> Result<std::result::Result<Prepared, IsoDecision>> {
    if p.n() != p2.n() {
        return Ok(Err(IsoDecision::NotIsomorphic(NonIsoReason::Dimension)));
    }
    if p.m() != p2.m() {
        return Ok(Err(IsoDecision::NotIsomorphic(NonIsoReason::Amplification)));
    }
    let (theta, theta2) = (p.theta(), p2.theta());
    if q_theta(theta) != q_theta(theta2) {
        return Ok(Err(IsoDecision::NotIsomorphic(NonIsoReason::QTheta)));
    }
    let l = denominator(theta).lcm(&denominator(theta2));
    if l.is_one() {
        let shift = theta2.matrix() - theta.matrix();
        let shift = shift.to_int().expect("integral");
        return Ok(Err(IsoDecision::Isomorphic(IsoCertificate { t: IntMatrix::identity(p.n()), shift })));
    }
    if divisor_chain(theta, &l) != divisor_chain(theta2, &l) {
        return Ok(Err(IsoDecision::NotIsomorphic(NonIsoReason::DivisorChain)));
    }
    let lu = l
        .to_u64()
        .filter(|&v| v < (1 << 31))
        .ok_or_else(|| Error::InvalidArgument(format!("denominator {l} too large for the orbit walk")))?;
    let walker = OrbitWalker::new(p.n(), lu);
    let a = ModSkew::reduce(theta, lu)?;
    let b = ModSkew::reduce(theta2, lu)?;
    Ok(Ok(Prepared { l, walker, a, b }))
}

fn certify(theta: &SkewRatForm, theta2: &SkewRatForm, g: &IntMatrix, l: &BigInt) -> Result<IsoCertificate> {
    let centered = g.map(|v| {
        let r = v.mod_floor(l);
        if &r * 2 > *l {
            r - l
        } else {
            r
        }
    });
    let t = if centered.is_unimodular() { centered } else { lift_unimodular(g, l)? };
    let moved = theta.transform(&t)?;
    let shift = (theta2.matrix() - moved.matrix())
        .to_int()
        .ok_or_else(|| Error::Internal("lifted certificate leaves a non-integral difference".into()))?;
    let cert = IsoCertificate { t, shift };
    if !cert.verify(theta, theta2) {
        return Err(Error::Internal("certificate failed verification".into()));
    }
    Ok(cert)
}

pub fn iso_decide(p: &NCTorusParams, p2: &NCTorusParams) -> Result<IsoDecision> {
    iso_decide_with(p, p2, DEFAULT_ORBIT_CAP)
}

/// Orbit search over `ℤ/ℓ` from both ends; `cap` bounds the visited states.
pub fn iso_decide_with(p: &NCTorusParams, p2: &NCTorusParams, cap: usize) -> Result<IsoDecision> {
    let prep = match prepare(p, p2)? {
        Ok(prep) => prep,
        Err(done) => return Ok(done),
    };
    match prep.walker.connect(prep.a, prep.b, cap) {
        Meeting::Found(g) => {
            let g = prep.walker.to_int_matrix(&g);
            Ok(IsoDecision::Isomorphic(certify(p.theta(), p2.theta(), &g, &prep.l)?))
        }
        Meeting::Disjoint => Ok(IsoDecision::NotIsomorphic(NonIsoReason::Orbit)),
        Meeting::Cap(visited) => Ok(IsoDecision::Undecided(visited)),
    }
}

pub fn iso_via_bundles(p: &NCTorusParams, p2: &NCTorusParams) -> Result<IsoDecision> {
    iso_via_bundles_with(p, p2, DEFAULT_ORBIT_CAP)
}

/// Walks the orbit of `θ` and asks, at each aligned `θ₁ ≡ TθTᵀ`, whether `E_θ₁^{⊕m}` and
/// `E_θ'^{⊕m}` differ by a line bundle twist.
pub fn iso_via_bundles_with(p: &NCTorusParams, p2: &NCTorusParams, cap: usize) -> Result<IsoDecision> {
    let prep = match prepare(p, p2)? {
        Ok(prep) => prep,
        Err(done) => return Ok(done),
    };
    let n = p.n();
    let lu = prep.l.to_u64().expect("checked in prepare");
    let target = direct_sum_power(&vector_bundle_of(p2.theta()), p2.m())?;
    let tree = match prep.walker.orbit(prep.a, cap) {
        Ok(tree) => tree,
        Err(visited) => return Ok(IsoDecision::Undecided(visited)),
    };
    for state in tree.states() {
        let aligned = state.to_theta(n, lu);
        let e = direct_sum_power(&vector_bundle_of(&aligned), p.m())?;
        if line_twist_exists(&e, &target)?.is_some() {
            let g = prep.walker.to_int_matrix(&prep.walker.path_matrix(&tree, state));
            let cert = certify(p.theta(), p2.theta(), &g, &prep.l)?;
            let moved = direct_sum_power(&vector_bundle_of(&p.theta().transform(&cert.t)?), p.m())?;
            if line_twist_exists(&moved, &target)?.is_none() {
                return Err(Error::Internal("lifted alignment lost the line twist".into()));
            }
            return Ok(IsoDecision::Isomorphic(cert));
        }
    }
    Ok(IsoDecision::NotIsomorphic(NonIsoReason::Orbit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat, unimodular_sample, RatMatrix};

    fn params(theta: SkewRatForm) -> NCTorusParams {
        NCTorusParams::new(theta, int(1)).unwrap()
    }

    #[test]
    fn one_third_vs_two_thirds() {
        let p = params(SkewRatForm::planar(rat(1, 3)));
        let p2 = params(SkewRatForm::planar(rat(2, 3)));
        for d in [iso_decide(&p, &p2).unwrap(), iso_via_bundles(&p, &p2).unwrap()] {
            let c = d.certificate().expect("isomorphic");
            assert!(c.verify(p.theta(), p2.theta()));
            assert_eq!(c.t.det(), int(-1));
        }
        let c = iso_decide(&p, &p2).unwrap().certificate().unwrap().clone();
        assert_eq!(c.t, IntMatrix::from_i64(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn one_fifth_vs_two_fifths() {
        let p = params(SkewRatForm::planar(rat(1, 5)));
        let p2 = params(SkewRatForm::planar(rat(2, 5)));
        assert_eq!(iso_decide(&p, &p2).unwrap().is_isomorphic(), Some(false));
        assert_eq!(iso_via_bundles(&p, &p2).unwrap().is_isomorphic(), Some(false));
    }

    #[test]
    fn integer_shift() {
        let theta = SkewRatForm::new(
            RatMatrix::from_rows(vec![
                vec![rat(0, 1), rat(1, 4), rat(1, 6)],
                vec![rat(-1, 4), rat(0, 1), rat(2, 3)],
                vec![rat(-1, 6), rat(-2, 3), rat(0, 1)],
            ])
            .unwrap(),
        )
        .unwrap();
        let k = IntMatrix::from_i64(&[&[0, 2, -1], &[-2, 0, 5], &[1, -5, 0]]);
        let shifted = theta.shift(&k).unwrap();
        let d = iso_decide(&params(theta.clone()), &params(shifted.clone())).unwrap();
        let c = d.certificate().unwrap();
        assert_eq!(c.t, IntMatrix::identity(3));
        assert_eq!(c.shift, k);
    }

    #[test]
    fn mismatches() {
        let a = params(SkewRatForm::planar(rat(1, 3)));
        let b = params(SkewRatForm::zero(3));
        assert_eq!(iso_decide(&a, &b).unwrap(), IsoDecision::NotIsomorphic(NonIsoReason::Dimension));
        let c = NCTorusParams::new(SkewRatForm::planar(rat(1, 3)), int(2)).unwrap();
        assert_eq!(iso_decide(&a, &c).unwrap(), IsoDecision::NotIsomorphic(NonIsoReason::Amplification));
        let d = params(SkewRatForm::planar(rat(1, 4)));
        assert_eq!(iso_decide(&a, &d).unwrap(), IsoDecision::NotIsomorphic(NonIsoReason::QTheta));
        assert!(NCTorusParams::new(SkewRatForm::zero(2), int(0)).is_err());
    }

    #[test]
    fn cap_gives_undecided() {
        let theta = crate::nctorus::block_form(4, &[rat(1, 6), rat(1, 6)]);
        let t = unimodular_sample(4, 5, 20);
        let other = theta.transform(&t).unwrap();
        let d = iso_decide_with(&params(theta), &params(other), 5).unwrap();
        assert!(matches!(d, IsoDecision::Undecided(_)));
    }

    #[test]
    fn certificate_algebra() {
        let theta = crate::nctorus::block_form(4, &[rat(1, 2), rat(1, 6)]);
        let t1 = unimodular_sample(4, 1, 10);
        let t2 = unimodular_sample(4, 2, 10);
        let k = IntMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 3], &[0, 0, 0, 0], &[0, -3, 0, 0]]);
        let th1 = theta.transform(&t1).unwrap().shift(&k).unwrap();
        let th2 = th1.transform(&t2).unwrap();
        let c1 = iso_decide(&params(theta.clone()), &params(th1.clone())).unwrap().certificate().unwrap().clone();
        let c2 = iso_decide(&params(th1.clone()), &params(th2.clone())).unwrap().certificate().unwrap().clone();
        assert!(c1.inverse().unwrap().verify(&th1, &theta));
        assert!(c1.compose(&c2).verify(&theta, &th2));
    }
}
