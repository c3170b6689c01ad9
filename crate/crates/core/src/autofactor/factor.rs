//! Factors of automorphy over `ℝⁿ/ℤⁿ` and their scalar determinants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::genperm::{GenPermPhaseMatrix, GenPermText};
use super::phase::{AffineFunction, AffinePhase};
use crate::cohomology::AltFormZ;
use crate::linalg::{int, IntMatrix, RatMatrix};
use crate::{Error, Result};

/// `γ ↦ f_γ(x)` with values in generalized permutation matrices.
///
/// The cocycle condition checked here is `f_{γ+γ'}(x) = f_γ(x+γ')·f_{γ'}(x)`.
pub trait AutomorphyFactor {
    /// Rank of the base lattice.
    fn n(&self) -> usize;
    /// Matrix size.
    fn size(&self) -> usize;
    fn at(&self, gamma: &[BigInt]) -> GenPermPhaseMatrix;
}

/// Does `f` satisfy the cocycle identity at the pair `(γ, γ')`?
pub fn cocycle_holds<F: AutomorphyFactor + ?Sized>(f: &F, g: &[BigInt], h: &[BigInt]) -> bool {
    let sum: Vec<BigInt> = g.iter().zip(h).map(|(a, b)| a + b).collect();
    f.at(&sum) == f.at(g).translate(h).mul(&f.at(h))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub trials: usize,
    pub failures: Vec<(Vec<BigInt>, Vec<BigInt>)>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact check of the cocycle identity on `trials` seeded random pairs.
pub fn check_cocycle<F: AutomorphyFactor + ?Sized>(f: &F, trials: usize, seed: u64) -> CocycleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.n();
    let mut failures = Vec::new();
    for _ in 0..trials {
        let g: Vec<BigInt> = (0..n).map(|_| int(rng.random_range(-6..=6))).collect();
        let h: Vec<BigInt> = (0..n).map(|_| int(rng.random_range(-6..=6))).collect();
        if !cocycle_holds(f, &g, &h) {
            failures.push((g, h));
        }
    }
    CocycleReport { trials, failures }
}

/// `N(s)`: the `q×q` matrix sending `e_j ↦ e_{j-1}` for `j ≥ 1` and `e_0 ↦ e(-a·s)·e_{q-1}`.
pub fn rieffel_n(q: usize, a: &BigInt) -> Result<GenPermPhaseMatrix> {
    if q == 0 {
        return Err(Error::NonPositiveModulus("q must be positive".into()));
    }
    let vars = 2;
    let mut perm = Vec::with_capacity(q);
    let mut phases = Vec::with_capacity(q);
    for j in 0..q {
        perm.push(if j == 0 { q - 1 } else { j - 1 });
        phases.push(if j == 0 {
            AffinePhase::new(vec![BigRational::from_integer(-a), BigRational::zero()], BigRational::zero())
        } else {
            AffinePhase::zero(vars)
        });
    }
    GenPermPhaseMatrix::new(perm, phases, vars)
}

/// The factor `N_{(u,v)}(s,t) = N(s)^v` on the 2-torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorOfAutomorphy {
    q: usize,
    a: BigInt,
    n_s: GenPermPhaseMatrix,
}

pub fn factor_from(q: usize, a: &BigInt) -> Result<FactorOfAutomorphy> {
    let n_s = rieffel_n(q, a)?;
    let f = FactorOfAutomorphy { q, a: a.clone(), n_s };
    let gens: Vec<Vec<BigInt>> = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)]
        .iter()
        .map(|&(u, v)| vec![int(u), int(v)])
        .collect();
    for g in &gens {
        for h in &gens {
            if !cocycle_holds(&f, g, h) {
                return Err(Error::Internal(format!("cocycle identity fails at {:?}, {:?}", g, h)));
            }
        }
    }
    Ok(f)
}

impl FactorOfAutomorphy {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn n_matrix(&self) -> &GenPermPhaseMatrix {
        &self.n_s
    }

    /// The clutching loop `s ↦ N(s)` at the sample point.
    pub fn clutching_loop(&self, s: f64) -> nalgebra::DMatrix<num_complex::Complex64> {
        self.n_s.to_dense(&[s, 0.0])
    }
}

impl AutomorphyFactor for FactorOfAutomorphy {
    fn n(&self) -> usize {
        2
    }

    fn size(&self) -> usize {
        self.q
    }

    fn at(&self, gamma: &[BigInt]) -> GenPermPhaseMatrix {
        self.n_s.pow(&gamma[1])
    }
}

/// Scalar factor `f_γ(x) = γᵀLx + γᵀQγ + cᵀγ`, real-valued (the phase is `e(f)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarFactor {
    l: RatMatrix,
    q: RatMatrix,
    c: Vec<BigRational>,
}

impl ScalarFactor {
    /// Requires `Q + Qᵀ − L` to be integral.
    pub fn new(l: RatMatrix, q: RatMatrix, c: Vec<BigRational>) -> Result<Self> {
        let n = l.rows();
        if l.cols() != n || q.rows() != n || q.cols() != n || c.len() != n {
            return Err(Error::Shape("scalar factor data must be n×n, n×n, n".into()));
        }
        let defect = &(&q + &q.transpose()) - &l;
        if !defect.is_integral() {
            return Err(Error::InvalidArgument("Q + Qᵀ − L is not integral".into()));
        }
        Ok(Self { l, q, c })
    }

    pub fn n(&self) -> usize {
        self.l.rows()
    }

    pub fn linear(&self) -> &RatMatrix {
        &self.l
    }

    pub fn quadratic(&self) -> &RatMatrix {
        &self.q
    }

    pub fn character(&self) -> &[BigRational] {
        &self.c
    }

    /// The real-valued lift of `f_γ`.
    pub fn value(&self, gamma: &[BigInt]) -> AffineFunction {
        let n = self.n();
        let g: Vec<BigRational> = gamma.iter().map(|v| BigRational::from_integer(v.clone())).collect();
        let linear = (0..n).map(|j| (0..n).map(|i| &g[i] * &self.l[(i, j)]).sum()).collect();
        let mut constant = BigRational::zero();
        for i in 0..n {
            constant += &g[i] * &self.c[i];
            for j in 0..n {
                constant += &g[i] * &self.q[(i, j)] * &g[j];
            }
        }
        AffineFunction { linear, constant }
    }
}

impl AutomorphyFactor for ScalarFactor {
    fn n(&self) -> usize {
        self.l.rows()
    }

    fn size(&self) -> usize {
        1
    }

    fn at(&self, gamma: &[BigInt]) -> GenPermPhaseMatrix {
        let p = self.value(gamma).reduce();
        let vars = p.vars();
        GenPermPhaseMatrix::diagonal(vec![p], vars).expect("1×1")
    }
}

/// The scalar factor `det ∘ f`, assembled from the determinants at the basis vectors.
pub fn det_cocycle<F: AutomorphyFactor + ?Sized>(f: &F) -> Result<ScalarFactor> {
    let n = f.n();
    let mut rows = Vec::with_capacity(n);
    let mut consts = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[i] = BigInt::one();
        let d = f.at(&e).det();
        if d.vars() != n {
            return Err(Error::Shape("factor phases must be functions on ℝⁿ".into()));
        }
        rows.push(d.linear().to_vec());
        consts.push(d.constant_part().clone());
    }
    let l = RatMatrix::from_rows(rows)?;
    let q = if l.is_integral() {
        RatMatrix::zeros(n, n)
    } else {
        let half = BigRational::new(int(1), int(2));
        RatMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => l[(i, j)].clone(),
            std::cmp::Ordering::Equal => &l[(i, i)] * &half,
            std::cmp::Ordering::Less => BigRational::zero(),
        })
    };
    let c = (0..n).map(|i| &consts[i] - &q[(i, i)]).collect();
    ScalarFactor::new(l, q, c).map_err(|_| Error::CocycleMismatch)
}

/// `f_{γ₂}(x+γ₁) − f_{γ₂}(x) − f_{γ₁}(x+γ₂) + f_{γ₁}(x)` as an affine function of `x`.
pub fn mumford_expression(f: &ScalarFactor, g1: &[BigInt], g2: &[BigInt]) -> AffineFunction {
    let f1 = f.value(g1);
    let f2 = f.value(g2);
    let d2 = &f2.translate(g1) - &f2;
    let d1 = &f1.translate(g2) - &f1;
    &d2 - &d1
}

/// First Chern class of the line bundle defined by a scalar factor.
pub fn mumford_c1(f: &ScalarFactor) -> Result<AltFormZ> {
    let n = f.n();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut ei = vec![BigInt::zero(); n];
            let mut ej = vec![BigInt::zero(); n];
            ei[i] = BigInt::one();
            ej[j] = BigInt::one();
            let e = mumford_expression(f, &ei, &ej);
            if !e.is_constant() {
                return Err(Error::Internal("pairing depends on x".into()));
            }
            if !e.constant.is_integer() {
                return Err(Error::CocycleMismatch);
            }
            let v = e.constant.to_integer();
            m[(j, i)] = -v.clone();
            m[(i, j)] = v;
        }
    }
    AltFormZ::new(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub gamma: Vec<String>,
    pub matrix: GenPermText,
}

/// Records for every `γ` with `|γ_i| ≤ radius`.
pub fn factor_records<F: AutomorphyFactor + ?Sized>(f: &F, radius: i64) -> Vec<FactorRecord> {
    let n = f.n();
    let mut out = Vec::new();
    let span = (2 * radius + 1) as usize;
    let total = span.pow(n as u32);
    for idx in 0..total {
        let mut k = idx;
        let gamma: Vec<BigInt> = (0..n)
            .map(|_| {
                let v = (k % span) as i64 - radius;
                k /= span;
                int(v)
            })
            .collect();
        out.push(FactorRecord { gamma: gamma.iter().map(|g| g.to_string()).collect(), matrix: f.at(&gamma).to_text() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    struct Corrupted(FactorOfAutomorphy);

    impl AutomorphyFactor for Corrupted {
        fn n(&self) -> usize {
            2
        }
        fn size(&self) -> usize {
            self.0.size()
        }
        fn at(&self, gamma: &[BigInt]) -> GenPermPhaseMatrix {
            let m = self.0.at(gamma);
            if gamma[0] == int(1) {
                m.scale(&AffinePhase::constant(2, rat(1, 7)))
            } else {
                m
            }
        }
    }

    #[test]
    fn n_matrix_shape() {
        let n = rieffel_n(3, &int(2)).unwrap();
        assert_eq!(n.perm(), &[2, 0, 1]);
        assert_eq!(n.phases()[0].linear(), &[rat(-2, 1), rat(0, 1)]);
        assert!(n.phases()[1].is_zero());
        assert!(rieffel_n(0, &int(1)).is_err());
    }

    #[test]
    fn n_to_the_q_is_scalar() {
        for q in 1..6usize {
            for a in -3..4 {
                let n = rieffel_n(q, &int(a)).unwrap();
                let s = n.pow(&int(q as i64)).as_scalar().expect("scalar");
                assert_eq!(s.linear(), &[rat(-a, 1), rat(0, 1)]);
            }
        }
    }

    #[test]
    fn factor_cocycle_over_grid() {
        for q in 1..=6usize {
            for a in -4..=4 {
                let f = factor_from(q, &int(a)).unwrap();
                assert!(check_cocycle(&f, 40, (q as u64) * 100 + (a + 10) as u64).passed());
            }
        }
    }

    #[test]
    fn corrupted_factor_is_caught() {
        let f = Corrupted(factor_from(3, &int(1)).unwrap());
        assert!(!check_cocycle(&f, 200, 1).passed());
    }

    #[test]
    fn det_cocycle_closed_form() {
        for q in 1..=5usize {
            for a in -3..=3 {
                let f = factor_from(q, &int(a)).unwrap();
                let d = det_cocycle(&f).unwrap();
                // det N_{(u,v)}(s) = (−1)^{v(q−1)} e(−a·v·s)
                for u in -3..=3 {
                    for v in -3..=3 {
                        let g = [int(u), int(v)];
                        let expect = AffinePhase::new(
                            vec![rat(-a * v, 1), rat(0, 1)],
                            rat(v * (q as i64 - 1), 2),
                        );
                        assert_eq!(d.value(&g).reduce(), expect);
                        assert_eq!(f.at(&g).det(), expect);
                    }
                }
                assert!(check_cocycle(&d, 30, 9).passed());
            }
        }
    }

    #[test]
    fn mumford_on_det() {
        for q in 1..=4usize {
            for a in -5..=5 {
                let d = det_cocycle(&factor_from(q, &int(a)).unwrap()).unwrap();
                let c = mumford_c1(&d).unwrap();
                assert_eq!(c.value(0, 1), &int(-a));
            }
        }
    }

    #[test]
    fn mumford_general_scalar() {
        let l = RatMatrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 2), rat(0, 1)],
            vec![rat(1, 2), rat(0, 1), rat(0, 1)],
            vec![rat(3, 1), rat(0, 1), rat(0, 1)],
        ])
        .unwrap();
        let q = RatMatrix::from_fn(3, 3, |i, j| if i > j { l[(i, j)].clone() } else { rat(0, 1) });
        let f = ScalarFactor::new(l, q, vec![rat(0, 1); 3]).unwrap();
        assert!(check_cocycle(&f, 50, 3).passed());
        let c = mumford_c1(&f).unwrap();
        assert_eq!(c.value(0, 1), &int(0));
        assert_eq!(c.value(0, 2), &int(3));
        assert_eq!(c.value(1, 2), &int(0));
    }

    #[test]
    fn non_cocycle_scalar_rejected() {
        let l = RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 3)], vec![rat(0, 1), rat(0, 1)]]).unwrap();
        assert!(ScalarFactor::new(l, RatMatrix::zeros(2, 2), vec![rat(0, 1); 2]).is_err());
    }

    #[test]
    fn records_cover_the_box() {
        let f = factor_from(2, &int(1)).unwrap();
        let r = factor_records(&f, 1);
        assert_eq!(r.len(), 9);
        assert_eq!(r[0].gamma, vec!["-1", "-1"]);
    }
}
