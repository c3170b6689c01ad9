//! Orbits of skew matrices over `ℤ/ℓ` under `A ↦ g·A·gᵀ`, `det g ≡ ±1`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::linalg::{IntMatrix, SkewRatForm};
use crate::{Error, Result};

/// A skew matrix over `ℤ/ℓ`, row-major with entries in `[0, ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModSkew {
    pub entries: Vec<u64>,
}

impl ModSkew {
    /// `ℓθ mod ℓ`; `ℓ` must clear the denominators of `θ`.
    pub fn reduce(theta: &SkewRatForm, l: u64) -> Result<Self> {
        let lb = BigInt::from(l);
        let m = theta
            .matrix()
            .scaled_to_int(&lb)
            .ok_or_else(|| Error::InvalidArgument(format!("{l} does not clear the denominators")))?;
        Ok(Self { entries: m.entries().map(|v| v.mod_floor(&lb).to_u64().expect("reduced")).collect() })
    }

    /// The skew form with upper entries `a_ij/ℓ`.
    pub fn to_theta(&self, n: usize, l: u64) -> SkewRatForm {
        let m = crate::linalg::RatMatrix::from_fn(n, n, |i, j| {
            let v = match i.cmp(&j) {
                std::cmp::Ordering::Less => self.entries[i * n + j] as i64,
                std::cmp::Ordering::Greater => -(self.entries[j * n + i] as i64),
                std::cmp::Ordering::Equal => 0,
            };
            num_rational::BigRational::new(BigInt::from(v), BigInt::from(l))
        });
        SkewRatForm::new(m).expect("skew")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gen {
    /// `I + s·E_ij`.
    Transvection { i: usize, j: usize, neg: bool },
    /// `diag(1, …, 1, −1)`.
    Flip,
}

/// Breadth-first walks over the orbit with parent pointers for certificate reconstruction.
pub struct OrbitWalker {
    n: usize,
    l: u64,
    gens: Vec<Gen>,
}

pub(crate) struct Tree {
    parent: HashMap<ModSkew, Option<(ModSkew, usize)>>,
    frontier: Vec<ModSkew>,
    order: Vec<ModSkew>,
}

impl Tree {
    fn new(root: ModSkew) -> Self {
        let mut parent = HashMap::new();
        parent.insert(root.clone(), None);
        Self { parent, frontier: vec![root.clone()], order: vec![root] }
    }

    pub(crate) fn states(&self) -> &[ModSkew] {
        &self.order
    }

    pub(crate) fn len(&self) -> usize {
        self.parent.len()
    }
}

pub(crate) enum Meeting {
    /// `g` with `g·A·gᵀ = B`, row-major over `ℤ/ℓ`.
    Found(Vec<u64>),
    Disjoint,
    Cap(usize),
}

impl OrbitWalker {
    pub fn new(n: usize, l: u64) -> Self {
        let mut gens = Vec::new();
        if n > 0 {
            gens.push(Gen::Flip);
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    gens.push(Gen::Transvection { i, j, neg: false });
                    gens.push(Gen::Transvection { i, j, neg: true });
                }
            }
        }
        Self { n, l, gens }
    }

    fn apply(&self, a: &ModSkew, g: Gen) -> ModSkew {
        let (n, l) = (self.n, self.l);
        let mut e = a.entries.clone();
        match g {
            Gen::Transvection { i, j, neg } => {
                let s = if neg { l - 1 } else { 1 % l };
                for c in 0..n {
                    e[i * n + c] = (e[i * n + c] + s * e[j * n + c]) % l;
                }
                for r in 0..n {
                    e[r * n + i] = (e[r * n + i] + s * e[r * n + j]) % l;
                }
            }
            Gen::Flip => {
                let last = n - 1;
                for c in 0..n {
                    e[last * n + c] = (l - e[last * n + c]) % l;
                    e[c * n + last] = (l - e[c * n + last]) % l;
                }
            }
        }
        ModSkew { entries: e }
    }

    fn gen_matrix(&self, g: Gen, inverse: bool) -> Vec<u64> {
        let (n, l) = (self.n, self.l);
        let mut m = identity(n, l);
        match g {
            Gen::Transvection { i, j, neg } => {
                let s = if neg != inverse { l - 1 } else { 1 % l };
                m[i * n + j] = s;
            }
            Gen::Flip => m[n * n - 1] = (l - 1) % l,
        }
        m
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (n, l) = (self.n, self.l as u128);
        let mut c = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u128;
                for k in 0..n {
                    acc = (acc + a[i * n + k] as u128 * b[k * n + j] as u128) % l;
                }
                c[i * n + j] = acc as u64;
            }
        }
        c
    }

    /// Generators along the path from the root, first applied first.
    fn word(&self, tree: &Tree, state: &ModSkew) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = state.clone();
        while let Some(Some((p, g))) = tree.parent.get(&cur) {
            w.push(*g);
            cur = p.clone();
        }
        w.reverse();
        w
    }

    /// `g` with `state = g·root·gᵀ`.
    pub(crate) fn path_matrix(&self, tree: &Tree, state: &ModSkew) -> Vec<u64> {
        let mut g = identity(self.n, self.l);
        for idx in self.word(tree, state) {
            g = self.mul(&self.gen_matrix(self.gens[idx], false), &g);
        }
        g
    }

    fn path_matrix_inverse(&self, tree: &Tree, state: &ModSkew) -> Vec<u64> {
        let mut g = identity(self.n, self.l);
        for idx in self.word(tree, state) {
            g = self.mul(&g, &self.gen_matrix(self.gens[idx], true));
        }
        g
    }

    /// Expands one BFS layer; returns a state already in `other` if one is reached.
    fn expand(&self, tree: &mut Tree, other: Option<&Tree>, budget: &mut usize) -> std::result::Result<Option<ModSkew>, ()> {
        let frontier = std::mem::take(&mut tree.frontier);
        let mut next = Vec::new();
        for s in &frontier {
            for (gi, &g) in self.gens.iter().enumerate() {
                let t = self.apply(s, g);
                if tree.parent.contains_key(&t) {
                    continue;
                }
                if *budget == 0 {
                    return Err(());
                }
                *budget -= 1;
                tree.parent.insert(t.clone(), Some((s.clone(), gi)));
                tree.order.push(t.clone());
                if other.is_some_and(|o| o.parent.contains_key(&t)) {
                    return Ok(Some(t));
                }
                next.push(t);
            }
        }
        tree.frontier = next;
        Ok(None)
    }

    /// Full orbit of `root`, capped at `cap` states.
    pub(crate) fn orbit(&self, root: ModSkew, cap: usize) -> std::result::Result<Tree, usize> {
        let mut tree = Tree::new(root);
        let mut budget = cap.saturating_sub(1);
        while !tree.frontier.is_empty() {
            if self.expand(&mut tree, None, &mut budget).is_err() {
                return Err(tree.len());
            }
        }
        Ok(tree)
    }

    /// Bidirectional search for `g` with `g·a·gᵀ = b`.
    pub(crate) fn connect(&self, a: ModSkew, b: ModSkew, cap: usize) -> Meeting {
        let mut ta = Tree::new(a.clone());
        let mut tb = Tree::new(b.clone());
        if a == b {
            return Meeting::Found(identity(self.n, self.l));
        }
        let mut budget = cap.saturating_sub(2);
        loop {
            if ta.frontier.is_empty() || tb.frontier.is_empty() {
                return Meeting::Disjoint;
            }
            let grow_a = ta.len() <= tb.len();
            let res = if grow_a {
                self.expand(&mut ta, Some(&tb), &mut budget)
            } else {
                self.expand(&mut tb, Some(&ta), &mut budget)
            };
            match res {
                Err(()) => return Meeting::Cap(ta.len() + tb.len()),
                Ok(None) => {}
                Ok(Some(x)) => {
                    // x = g1·a·g1ᵀ = g2·b·g2ᵀ, so b = (g2⁻¹g1)·a·(g2⁻¹g1)ᵀ
                    let g1 = self.path_matrix(&ta, &x);
                    let g2inv = self.path_matrix_inverse(&tb, &x);
                    return Meeting::Found(self.mul(&g2inv, &g1));
                }
            }
        }
    }

    pub(crate) fn to_int_matrix(&self, g: &[u64]) -> IntMatrix {
        IntMatrix::from_fn(self.n, self.n, |i, j| BigInt::from(g[i * self.n + j]))
    }
}

fn identity(n: usize, l: u64) -> Vec<u64> {
    let mut m = vec![0u64; n * n];
    for i in 0..n {
        m[i * n + i] = 1 % l;
    }
    m
}
