//! Finite-dimensional projective representations of `ℤⁿ` by constant phase-permutation matrices.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cocycle::{bicharacter_of, BilinearCocycle, Bicharacter};
use super::cyclotomic;
use crate::autofactor::{AffinePhase, GenPermPhaseMatrix, PhaseText};
use crate::linalg::{frac, RatMatrix, SkewRatForm};
use crate::{Error, Result};

/// Clock `U = diag(e(p·j/q))` and shift `V e_j = e_{j−1}`, so that `VU = e(p/q)·UV`.
pub fn clock_shift(q: usize, p: &BigInt) -> Result<(GenPermPhaseMatrix, GenPermPhaseMatrix)> {
    if q == 0 {
        return Err(Error::NonPositiveModulus("q must be positive".into()));
    }
    let qb = BigInt::from(q);
    let clock = GenPermPhaseMatrix::diagonal(
        (0..q).map(|j| AffinePhase::constant(0, BigRational::new(p * BigInt::from(j), qb.clone()))).collect(),
        0,
    )?;
    let shift = GenPermPhaseMatrix::new((0..q).map(|j| (j + q - 1) % q).collect(), vec![AffinePhase::zero(0); q], 0)?;
    Ok((clock, shift))
}

/// `ρ(γ) = U_n^{γ_n} ⋯ U_1^{γ_1}`; the associated cocycle is read off the generator commutators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveRep {
    gens: Vec<GenPermPhaseMatrix>,
    cocycle: BilinearCocycle,
}

impl ProjectiveRep {
    pub fn new(gens: Vec<GenPermPhaseMatrix>) -> Result<Self> {
        let n = gens.len();
        let d = gens.first().map(|g| g.size()).unwrap_or(1);
        for g in &gens {
            if g.size() != d {
                return Err(Error::Shape("generators of different sizes".into()));
            }
            if g.vars() != 0 || g.constant_phases().is_none() {
                return Err(Error::InvalidArgument("generators must have constant phases".into()));
            }
        }
        let mut b = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let c = gens[i].mul(&gens[j]).mul(&gens[i].inverse()).mul(&gens[j].inverse());
                let s = c
                    .as_scalar()
                    .ok_or_else(|| Error::InvalidArgument(format!("generators {i} and {j} do not commute up to a scalar")))?;
                b[(i, j)] = s.constant_part().clone();
            }
        }
        Ok(Self { gens, cocycle: BilinearCocycle::new(b)? })
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn dim(&self) -> usize {
        self.gens.first().map(|g| g.size()).unwrap_or(1)
    }

    pub fn generators(&self) -> &[GenPermPhaseMatrix] {
        &self.gens
    }

    pub fn cocycle(&self) -> &BilinearCocycle {
        &self.cocycle
    }

    pub fn bicharacter(&self) -> Bicharacter {
        bicharacter_of(&self.cocycle)
    }

    pub fn eval(&self, gamma: &[BigInt]) -> GenPermPhaseMatrix {
        let mut acc = GenPermPhaseMatrix::identity(self.dim(), 0);
        for (g, k) in self.gens.iter().zip(gamma).rev() {
            acc = acc.mul(&g.pow(k));
        }
        acc
    }

    /// `P ρ P⁻¹`.
    pub fn conjugate(&self, p: &GenPermPhaseMatrix) -> Result<Self> {
        if p.size() != self.dim() {
            return Err(Error::Shape("conjugating matrix has the wrong size".into()));
        }
        let pi = p.inverse();
        Self::new(self.gens.iter().map(|g| p.mul(g).mul(&pi)).collect())
    }

    pub fn records(&self) -> Vec<RepRecord> {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, g)| RepRecord {
                generator: i,
                perm: g.perm().to_vec(),
                phases: g.phases().iter().map(|p| p.to_text()).collect(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepRecord {
    pub generator: usize,
    pub perm: Vec<usize>,
    pub phases: Vec<PhaseText>,
}

pub fn direct_sum(a: &ProjectiveRep, b: &ProjectiveRep) -> Result<ProjectiveRep> {
    if a.n() != b.n() {
        return Err(Error::Shape("representations of different rank".into()));
    }
    let r = ProjectiveRep::new(a.gens.iter().zip(&b.gens).map(|(x, y)| x.direct_sum(y)).collect())?;
    if r.cocycle != a.cocycle {
        return Err(Error::CocycleMismatch);
    }
    Ok(r)
}

/// Diagonal fractions of `θ = [[0, D, 0], [−D, 0, 0], [0, 0, 0]]`, taking the largest block count that fits.
pub fn normal_form_blocks(theta: &SkewRatForm) -> Option<Vec<BigRational>> {
    let n = theta.n();
    let m = theta.matrix();
    (0..=n / 2).rev().find_map(|k| {
        let expected = |i: usize, j: usize| -> Option<BigRational> {
            if i < k && j == i + k {
                Some(m[(i, j)].clone())
            } else if j < k && i == j + k {
                Some(-m[(j, i)].clone())
            } else {
                None
            }
        };
        for i in 0..n {
            for j in 0..n {
                let want = expected(i, j).unwrap_or_else(BigRational::zero);
                if m[(i, j)] != want {
                    return None;
                }
            }
        }
        Some((0..k).map(|i| m[(i, i + k)].clone()).collect())
    })
}

/// Tensor product of clock/shift pairs, one per block; radical directions act trivially.
pub fn heisenberg_rep(theta: &SkewRatForm) -> Result<ProjectiveRep> {
    let blocks = normal_form_blocks(theta).ok_or(Error::NotNormalForm)?;
    let n = theta.n();
    let k = blocks.len();
    let sizes: Vec<usize> = blocks
        .iter()
        .map(|x| x.denom().to_usize().ok_or_else(|| Error::InvalidArgument("denominator too large".into())))
        .collect::<Result<_>>()?;
    let dim: usize = sizes.iter().product();
    let mut gens = vec![GenPermPhaseMatrix::identity(dim, 0); n];
    for (b, x) in blocks.iter().enumerate() {
        let (clock, shift) = clock_shift(sizes[b], x.numer())?;
        let embed = |m: &GenPermPhaseMatrix| {
            let mut acc = GenPermPhaseMatrix::identity(1, 0);
            for (c, &s) in sizes.iter().enumerate() {
                let f = if c == b { m.clone() } else { GenPermPhaseMatrix::identity(s, 0) };
                acc = acc.kron(&f);
            }
            acc
        };
        gens[b] = embed(&shift);
        gens[k + b] = embed(&clock);
    }
    ProjectiveRep::new(gens)
}

fn phase_order(gens: &[&GenPermPhaseMatrix]) -> usize {
    let mut n = BigInt::one();
    for g in gens {
        for p in g.phases() {
            n = n.lcm(p.constant_part().denom());
        }
    }
    n.to_usize().expect("cyclotomic order fits in usize")
}

/// Solution components of `X·A_i = B_i·X`: each entry of `X` is tied to others by unit phases.
/// Returns, per consistent component, the entry phases (`None` off the component).
fn intertwiner_components(a: &[GenPermPhaseMatrix], b: &[GenPermPhaseMatrix]) -> Vec<Vec<Option<BigRational>>> {
    let d1 = a.first().map(|g| g.size()).unwrap_or(1);
    let d2 = b.first().map(|g| g.size()).unwrap_or(1);
    let idx = |r: usize, j: usize| r * d1 + j;
    let mut potential: Vec<Option<BigRational>> = vec![None; d1 * d2];
    let mut comps = Vec::new();
    for start in 0..d1 * d2 {
        if potential[start].is_some() {
            continue;
        }
        potential[start] = Some(BigRational::zero());
        let mut members = vec![start];
        let mut consistent = true;
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            let (r, j) = (node / d1, node % d1);
            let p = potential[node].clone().expect("visited");
            for (ga, gb) in a.iter().zip(b) {
                // X[r, j] = e(φa_j − φb_r)·X[πb(r), πa(j)]
                let w = ga.phases()[j].constant_part() - gb.phases()[r].constant_part();
                let fwd = (idx(gb.perm()[r], ga.perm()[j]), frac(&(&p - &w)));
                // and the reverse edge from the preimages
                let ra = gb.perm().iter().position(|&x| x == r).expect("permutation");
                let ja = ga.perm().iter().position(|&x| x == j).expect("permutation");
                let w2 = ga.phases()[ja].constant_part() - gb.phases()[ra].constant_part();
                let bwd = (idx(ra, ja), frac(&(&p + &w2)));
                for (m, val) in [fwd, bwd] {
                    match &potential[m] {
                        Some(v) => {
                            if *v != val {
                                consistent = false;
                            }
                        }
                        None => {
                            potential[m] = Some(val);
                            members.push(m);
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        if consistent {
            let mut entries = vec![None; d1 * d2];
            for m in members {
                entries[m] = potential[m].clone();
            }
            comps.push(entries);
        }
    }
    comps
}

/// Dimension of `{X : X U_i = U_i X}`.
pub fn commutant_dim(rho: &ProjectiveRep) -> usize {
    if rho.n() == 0 {
        return rho.dim() * rho.dim();
    }
    intertwiner_components(&rho.gens, &rho.gens).len()
}

/// `X = M / √k`, where the entries of `M` are roots of unity or zero and `M M* = k·I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    /// Phases of `M`, row-major, `d × d`.
    pub entries: Vec<Vec<Option<BigRational>>>,
    pub norm_sq: usize,
}

impl Intertwiner {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `Some` when `M` is monomial.
    pub fn as_genperm(&self) -> Option<GenPermPhaseMatrix> {
        if self.norm_sq != 1 {
            return None;
        }
        let d = self.dim();
        let mut perm = vec![0; d];
        let mut phases = vec![AffinePhase::zero(0); d];
        for j in 0..d {
            let (r, p) = (0..d).find_map(|r| self.entries[r][j].as_ref().map(|p| (r, p)))?;
            perm[j] = r;
            phases[j] = AffinePhase::constant(0, p.clone());
        }
        GenPermPhaseMatrix::new(perm, phases, 0).ok()
    }

    /// Exact check of `M ρ₁(e_i) = ρ₂(e_i) M` on generators.
    pub fn intertwines(&self, r1: &ProjectiveRep, r2: &ProjectiveRep) -> bool {
        let d = self.dim();
        r1.gens.iter().zip(&r2.gens).all(|(a, b)| {
            (0..d).all(|r| {
                (0..d).all(|j| {
                    let lhs = self.entries[r][a.perm()[j]].as_ref().map(|m| frac(&(m + a.phases()[j].constant_part())));
                    let rb = b.perm().iter().position(|&x| x == r).expect("permutation");
                    let rhs = self.entries[rb][j].as_ref().map(|m| frac(&(m + b.phases()[rb].constant_part())));
                    lhs == rhs
                })
            })
        })
    }

    /// Exact check of `M M* = k·I`.
    pub fn is_unitary(&self) -> bool {
        let d = self.dim();
        let order = self
            .entries
            .iter()
            .flatten()
            .flatten()
            .fold(BigInt::one(), |acc, p| acc.lcm(p.denom()))
            .to_usize()
            .expect("order fits");
        let index = |p: &BigRational| (frac(p) * BigRational::from_integer(BigInt::from(order))).to_integer().to_usize().unwrap();
        for r in 0..d {
            for s in 0..d {
                let mut coeffs = vec![0i64; order];
                for j in 0..d {
                    if let (Some(x), Some(y)) = (&self.entries[r][j], &self.entries[s][j]) {
                        coeffs[index(&(x - y))] += 1;
                    }
                }
                if r == s {
                    if coeffs[0] as usize != self.norm_sq || coeffs.iter().skip(1).any(|&c| c != 0) {
                        return false;
                    }
                } else if !cyclotomic::is_zero(&coeffs, order) {
                    return false;
                }
            }
        }
        true
    }
}

/// Largest exponent needed so that every generator power cycles back to the identity.
fn generator_exponent(gens: &[&GenPermPhaseMatrix]) -> usize {
    let mut m = BigInt::one();
    for g in gens {
        let d = g.size();
        let mut seen = vec![false; d];
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let (mut j, mut len, mut phase) = (s, 0usize, BigRational::zero());
            while !seen[j] {
                seen[j] = true;
                phase += g.phases()[j].constant_part();
                j = g.perm()[j];
                len += 1;
            }
            m = m.lcm(&(BigInt::from(len) * frac(&phase).denom()));
        }
    }
    m.to_usize().expect("exponent fits")
}

/// Generator with phases as indices into `ℤ/order`.
struct IndexedGen {
    perm: Vec<usize>,
    phase: Vec<usize>,
}

impl IndexedGen {
    fn new(g: &GenPermPhaseMatrix, order: usize) -> Self {
        let phase = g
            .phases()
            .iter()
            .map(|p| {
                (frac(p.constant_part()) * BigRational::from_integer(BigInt::from(order)))
                    .to_integer()
                    .to_usize()
                    .expect("phase index")
            })
            .collect();
        Self { perm: g.perm().to_vec(), phase }
    }

    fn identity(d: usize) -> Self {
        Self { perm: (0..d).collect(), phase: vec![0; d] }
    }

    /// `self · rhs`.
    fn mul(&self, rhs: &Self, order: usize) -> Self {
        let perm = rhs.perm.iter().map(|&p| self.perm[p]).collect();
        let phase = rhs.perm.iter().zip(&rhs.phase).map(|(&p, &ph)| (ph + self.phase[p]) % order).collect();
        Self { perm, phase }
    }

    fn trace(&self, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order];
        for (j, &p) in self.perm.iter().enumerate() {
            if p == j {
                c[self.phase[j]] += 1;
            }
        }
        c
    }
}

/// Characters `γ ↦ tr ρ(γ)` over the box `[0, m)ⁿ`, in enumeration order.
fn characters(rho: &ProjectiveRep, order: usize, m: usize, total: usize) -> Vec<Vec<i64>> {
    let d = rho.dim();
    let n = rho.n();
    let powers: Vec<Vec<IndexedGen>> = rho
        .gens
        .iter()
        .map(|g| {
            let base = IndexedGen::new(g, order);
            let mut out = vec![IndexedGen::identity(d)];
            for k in 1..m {
                let next = out[k - 1].mul(&base, order);
                out.push(next);
            }
            out
        })
        .collect();
    (0..total)
        .map(|idx| {
            let mut k = idx;
            let exps: Vec<usize> = (0..n)
                .map(|_| {
                    let v = k % m;
                    k /= m;
                    v
                })
                .collect();
            let mut acc = IndexedGen::identity(d);
            for i in (0..n).rev() {
                acc = acc.mul(&powers[i][exps[i]], order);
            }
            acc.trace(order)
        })
        .collect()
}

const CHARACTER_CAP: usize = 2_000_000;

/// Do the characters of two reps with a common bicharacter agree on the finite image group?
pub fn equivalent(r1: &ProjectiveRep, r2: &ProjectiveRep) -> Result<bool> {
    if r1.n() != r2.n() {
        return Err(Error::Shape("representations of different rank".into()));
    }
    if r1.bicharacter() != r2.bicharacter() {
        return Err(Error::CocycleMismatch);
    }
    if r1.dim() != r2.dim() {
        return Ok(false);
    }
    let all: Vec<&GenPermPhaseMatrix> = r1.gens.iter().chain(&r2.gens).collect();
    let order = phase_order(&all);
    let m = generator_exponent(&all);
    let n = r1.n();
    let total = m.checked_pow(n as u32).filter(|&t| t <= CHARACTER_CAP).ok_or(Error::CapExceeded(CHARACTER_CAP))?;
    let c1 = characters(r1, order, m, total);
    let c2 = characters(r2, order, m, total);
    for (t1, t2) in c1.iter().zip(&c2) {
        if t1 != t2 {
            let diff: Vec<i64> = t1.iter().zip(t2).map(|(a, b)| a - b).collect();
            if !cyclotomic::is_zero(&diff, order) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const WITNESS_COMPONENT_CAP: usize = 20;

/// A unitary `X` with `X ρ₁(γ) = ρ₂(γ) X`, present iff the reps are equivalent.
pub fn intertwiner(r1: &ProjectiveRep, r2: &ProjectiveRep) -> Result<Option<Intertwiner>> {
    if !equivalent(r1, r2)? {
        return Ok(None);
    }
    let d = r1.dim();
    let comps = if r1.n() == 0 {
        return Ok(Some(identity_intertwiner(d)));
    } else {
        intertwiner_components(&r1.gens, &r2.gens)
    };
    let build = |mask: u64| -> Option<Intertwiner> {
        let mut entries = vec![vec![None; d]; d];
        for (c, comp) in comps.iter().enumerate() {
            if mask >> c & 1 == 1 {
                for (pos, p) in comp.iter().enumerate() {
                    if let Some(p) = p {
                        entries[pos / d][pos % d] = Some(p.clone());
                    }
                }
            }
        }
        let norm_sq = entries[0].iter().filter(|e| e.is_some()).count();
        let x = Intertwiner { entries, norm_sq };
        (norm_sq > 0 && x.is_unitary()).then_some(x)
    };
    for c in 0..comps.len() {
        if let Some(x) = build(1 << c) {
            return Ok(Some(x));
        }
    }
    if comps.len() > WITNESS_COMPONENT_CAP {
        return Err(Error::CapExceeded(WITNESS_COMPONENT_CAP));
    }
    for mask in 1u64..(1u64 << comps.len()) {
        if mask.count_ones() > 1 {
            if let Some(x) = build(mask) {
                return Ok(Some(x));
            }
        }
    }
    Err(Error::Internal("equivalent representations without a phase-unitary witness".into()))
}

fn identity_intertwiner(d: usize) -> Intertwiner {
    let entries = (0..d).map(|r| (0..d).map(|j| (r == j).then(BigRational::zero)).collect()).collect();
    Intertwiner { entries, norm_sq: 1 }
}
