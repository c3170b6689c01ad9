//! Normal form of alternating integer forms under `M ↦ T·M·Tᵗ`.
//!
//! Every skew-symmetric integer matrix is congruent over `GL(n, ℤ)` to
//! `⊕ᵢ (0 eᵢ; −eᵢ 0) ⊕ 0` with `e₁ | e₂ | … | e_k` positive. The divisors are
//! invariants; the certificate `T` depends on the pivoting strategy, which
//! always takes the nonzero entry of least absolute value (ties broken by
//! lowest row, then column).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticNF {
    /// Unimodular certificate.
    pub t: IntMatrix,
    /// Positive divisors with `eᵢ | eᵢ₊₁`.
    pub divisors: Vec<BigInt>,
    /// Number of rows/columns occupied by the hyperbolic blocks (`2k`).
    pub rank2k: usize,
}

impl SymplecticNF {
    /// The block matrix `⊕ᵢ (0 eᵢ; −eᵢ 0) ⊕ 0` of size `n`.
    pub fn block_matrix(&self) -> IntMatrix {
        block_matrix(self.t.rows(), &self.divisors)
    }
}

pub fn block_matrix(n: usize, divisors: &[BigInt]) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for (i, e) in divisors.iter().enumerate() {
        m[(2 * i, 2 * i + 1)] = e.clone();
        m[(2 * i + 1, 2 * i)] = -e.clone();
    }
    m
}

struct Reducer {
    a: IntMatrix,
    t: IntMatrix,
}

impl Reducer {
    /// Congruence by the elementary matrix `I + k·E[dst][src]`.
    fn add_index(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.a.add_col_multiple(dst, src, k);
        self.t.add_row_multiple(dst, src, k);
    }

    fn swap_index(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.a.swap_cols(i, j);
        self.t.swap_rows(i, j);
    }

    fn min_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let n = self.a.rows();
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in from..n {
            for j in from..n {
                let x = self.a[(i, j)].abs();
                if !x.is_zero() && best.as_ref().is_none_or(|(_, b)| x < *b) {
                    best = Some(((i, j), x));
                }
            }
        }
        best.map(|(p, _)| p)
    }
}

pub fn symplectic_normal_form(m: &IntMatrix) -> Result<SymplecticNF> {
    if !m.is_skew() {
        return Err(Error::NotSkew);
    }
    let n = m.rows();
    let mut r = Reducer { a: m.clone(), t: IntMatrix::identity(n) };
    let mut divisors = Vec::new();
    let mut k = 0;
    while 2 * k + 1 < n {
        let (b0, b1) = (2 * k, 2 * k + 1);
        loop {
            let Some((i, mut j)) = r.min_pivot(b0) else {
                break;
            };
            r.swap_index(b0, i);
            if j == b0 {
                j = i;
            }
            r.swap_index(b1, j);
            if r.a[(b0, b1)].is_negative() {
                r.swap_index(b0, b1);
            }
            let p = r.a[(b0, b1)].clone();

            let mut dirty = false;
            for c in b1 + 1..n {
                let q0 = r.a[(b0, c)].div_floor(&p);
                r.add_index(c, b1, &-q0);
                let q1 = r.a[(b1, c)].div_floor(&p);
                r.add_index(c, b0, &q1);
                dirty |= !r.a[(b0, c)].is_zero() || !r.a[(b1, c)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (b1 + 1..n)
                .flat_map(|x| (b1 + 1..n).map(move |y| (x, y)))
                .find(|&(x, y)| !r.a[(x, y)].is_multiple_of(&p));
            match offender {
                Some((x, _)) => r.add_index(b0, x, &BigInt::one()),
                None => break,
            }
        }
        if r.a[(b0, b1)].is_zero() {
            break;
        }
        divisors.push(r.a[(b0, b1)].clone());
        k += 1;
    }
    let nf = SymplecticNF { t: r.t, rank2k: 2 * divisors.len(), divisors };
    debug_assert_eq!(nf.t.congruence(m).unwrap(), nf.block_matrix());
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int;
    use crate::linalg::smith::smith_normal_form;

    fn verify(m: &IntMatrix) -> SymplecticNF {
        let nf = symplectic_normal_form(m).unwrap();
        assert!(nf.t.is_unimodular());
        assert_eq!(nf.t.congruence(m).unwrap(), nf.block_matrix());
        for w in nf.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        nf
    }

    #[test]
    fn planar_block_untouched() {
        let nf = verify(&IntMatrix::from_i64(&[&[0, 6], &[-6, 0]]));
        assert_eq!(nf.divisors, vec![int(6)]);
        assert_eq!(nf.t, IntMatrix::identity(2));
    }

    #[test]
    fn zero_form_has_no_divisors() {
        let nf = verify(&IntMatrix::zeros(3, 3));
        assert!(nf.divisors.is_empty());
        assert_eq!(nf.rank2k, 0);
    }

    #[test]
    fn coprime_blocks_merge_into_gcd_chain() {
        let m = IntMatrix::from_i64(&[&[0, 2, 0, 0], &[-2, 0, 0, 0], &[0, 0, 0, 3], &[0, 0, -3, 0]]);
        let nf = verify(&m);
        assert_eq!(nf.divisors, vec![int(1), int(6)]);
        // cross-check against the Smith diagonal (1, 1, 6, 6)
        assert_eq!(smith_normal_form(&m).diagonal(), vec![int(1), int(1), int(6), int(6)]);
    }

    #[test]
    fn negative_pivot_is_flipped() {
        let nf = verify(&IntMatrix::from_i64(&[&[0, -4], &[4, 0]]));
        assert_eq!(nf.divisors, vec![int(4)]);
    }

    #[test]
    fn odd_dimension_with_kernel() {
        let m = IntMatrix::from_i64(&[&[0, 2, 4], &[-2, 0, 6], &[-4, -6, 0]]);
        let nf = verify(&m);
        assert_eq!(nf.divisors, vec![int(2)]);
    }

    #[test]
    fn rejects_non_skew() {
        assert_eq!(symplectic_normal_form(&IntMatrix::from_i64(&[&[1, 0], &[0, 0]])), Err(Error::NotSkew));
    }
}
