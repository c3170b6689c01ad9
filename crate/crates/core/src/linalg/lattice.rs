//! Sublattices of ℤⁿ: column Hermite form and congruence kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A full-rank sublattice of ℤⁿ given by the columns of `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub basis: IntMatrix,
    /// `[ℤⁿ : H] = |det basis|`.
    pub index: BigInt,
}

impl LatticeBasis {
    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.basis.cols()).map(|j| self.basis.column(j)).collect()
    }

    /// Membership test by exact back-substitution against the lower-triangular basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        let n = self.basis.rows();
        let mut rest = v.to_vec();
        for i in 0..n {
            let p = &self.basis[(i, i)];
            if p.is_zero() {
                if !rest[i].is_zero() {
                    return false;
                }
                continue;
            }
            let (q, r) = rest[i].div_rem(p);
            if !r.is_zero() {
                return false;
            }
            for (k, x) in rest.iter_mut().enumerate().skip(i) {
                *x -= &q * &self.basis[(k, i)];
            }
        }
        true
    }
}

/// Column operations bringing `a` to column echelon form. Returns the
/// transformed matrix, the unimodular `v` with `a·v` = result, and the
/// number of nonzero (pivot) columns.
pub(crate) fn column_echelon(a: &IntMatrix) -> (IntMatrix, IntMatrix, usize) {
    let (r, c) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut v = IntMatrix::identity(c);
    let mut pc = 0;
    for i in 0..r {
        if pc == c {
            break;
        }
        loop {
            let Some(j) = (pc..c)
                .filter(|&j| !h[(i, j)].is_zero())
                .min_by(|&x, &y| h[(i, x)].abs().cmp(&h[(i, y)].abs()).then(x.cmp(&y)))
            else {
                break;
            };
            h.swap_cols(pc, j);
            v.swap_cols(pc, j);
            let p = h[(i, pc)].clone();
            let mut done = true;
            for j in pc + 1..c {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = -h[(i, j)].div_floor(&p);
                h.add_col_multiple(j, pc, &q);
                v.add_col_multiple(j, pc, &q);
                done &= h[(i, j)].is_zero();
            }
            if done {
                break;
            }
        }
        if !h[(i, pc)].is_zero() {
            if h[(i, pc)].is_negative() {
                h.negate_col(pc);
                v.negate_col(pc);
            }
            let p = h[(i, pc)].clone();
            for j in 0..pc {
                let q = -h[(i, j)].div_floor(&p);
                h.add_col_multiple(j, pc, &q);
                v.add_col_multiple(j, pc, &q);
            }
            pc += 1;
        }
    }
    (h, v, pc)
}

/// Canonical lower-triangular column Hermite form of the lattice spanned by
/// the columns of `b`, restricted to its nonzero columns.
pub fn hermite_column_form(b: &IntMatrix) -> IntMatrix {
    let (h, _, rank) = column_echelon(b);
    IntMatrix::from_fn(h.rows(), rank, |i, j| h[(i, j)].clone())
}

/// Basis and index of `{h ∈ ℤⁿ : M·h ≡ 0 (mod ℓ)}`.
pub fn lattice_kernel_mod(m: &IntMatrix, modulus: &BigInt) -> Result<LatticeBasis> {
    if !modulus.is_positive() {
        return Err(Error::NonPositiveModulus(modulus.to_string()));
    }
    let (rows, n) = (m.rows(), m.cols());
    // Solve M·h + ℓ·k = 0 over ℤ and keep the h-part of the kernel.
    let aug = IntMatrix::from_fn(rows, n + rows, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            modulus.clone()
        } else {
            BigInt::zero()
        }
    });
    let (_, v, rank) = column_echelon(&aug);
    let gens = IntMatrix::from_fn(n, n + rows - rank, |i, j| v[(i, rank + j)].clone());
    let basis = hermite_column_form(&gens);
    if basis.cols() != n {
        return Err(Error::Internal("congruence kernel is not full rank".into()));
    }
    let index = basis.det().abs();
    Ok(LatticeBasis { basis, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int;

    #[test]
    fn standard_symplectic_mod_two() {
        let m = IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let h = lattice_kernel_mod(&m, &int(2)).unwrap();
        assert_eq!(h.index, int(4));
        assert_eq!(h.basis, IntMatrix::from_i64(&[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn zero_matrix_gives_everything() {
        let h = lattice_kernel_mod(&IntMatrix::zeros(3, 3), &int(5)).unwrap();
        assert_eq!(h.index, int(1));
        assert_eq!(h.basis, IntMatrix::identity(3));
    }

    #[test]
    fn modulus_one_is_trivial() {
        let m = IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
        assert_eq!(lattice_kernel_mod(&m, &int(1)).unwrap().index, int(1));
    }

    #[test]
    fn rejects_nonpositive_modulus() {
        assert!(lattice_kernel_mod(&IntMatrix::zeros(2, 2), &int(0)).is_err());
        assert!(lattice_kernel_mod(&IntMatrix::zeros(2, 2), &int(-3)).is_err());
    }

    #[test]
    fn membership() {
        let m = IntMatrix::from_i64(&[&[0, 2], &[-2, 0]]);
        let h = lattice_kernel_mod(&m, &int(6)).unwrap();
        assert_eq!(h.index, int(9));
        assert!(h.contains(&[int(3), int(-6)]));
        assert!(!h.contains(&[int(1), int(0)]));
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[0, 3]]);
        let b = &a * &IntMatrix::from_i64(&[&[1, 1], &[1, 2]]);
        assert_eq!(hermite_column_form(&a), hermite_column_form(&b));
    }
}
