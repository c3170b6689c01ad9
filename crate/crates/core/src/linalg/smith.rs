//! Smith normal form with explicit unimodular certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal,
/// nonnegative, and satisfying `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `d`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    'outer: for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_abs_entry(&a, t) else {
                break 'outer;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let p = a[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&p);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&p);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility fixup: pull an offending row into row t.
            let offender = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d: a, v }
}

/// Nonzero entry of least absolute value in the trailing block starting at
/// `(t, t)`; ties go to the lexicographically smallest position.
fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(pos, _)| pos)
}
