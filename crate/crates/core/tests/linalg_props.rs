mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use toribundle::linalg::{
    lattice_kernel_mod, lift_special_linear, lift_unimodular, smith_normal_form, symplectic_normal_form,
    unimodular_sample, IntMatrix,
};

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-9i64..=9, rows * cols)
        .prop_map(move |v| IntMatrix::from_fn(rows, cols, |i, j| BigInt::from(v[i * cols + j])))
}

fn small_skew(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-12i64..=12, n * n).prop_map(move |v| {
        IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => BigInt::from(v[i * n + j]),
            std::cmp::Ordering::Greater => -BigInt::from(v[j * n + i]),
            std::cmp::Ordering::Equal => BigInt::from(0),
        })
    })
}

#[test]
fn smith_diagonal_is_invariant_under_unimodular_change() {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let base = smith_normal_form(&m).diagonal();
    for seed in 0..200 {
        let u = unimodular_sample(3, seed, 12);
        let v = unimodular_sample(3, seed + 10_000, 12);
        let moved = &(&u * &m) * &v;
        let s = smith_normal_form(&moved);
        assert_eq!(s.diagonal(), base);
        assert_eq!(&(&s.u * &moved) * &s.v, s.d);
    }
}

#[test]
fn symplectic_divisors_are_congruence_invariant() {
    let m = IntMatrix::from_i64(&[
        &[0, 2, 4, 0],
        &[-2, 0, 6, 8],
        &[-4, -6, 0, 10],
        &[0, -8, -10, 0],
    ]);
    let base = symplectic_normal_form(&m).unwrap();
    for seed in 0..200 {
        let t = unimodular_sample(4, seed, 14);
        let moved = t.congruence(&m).unwrap();
        let nf = symplectic_normal_form(&moved).unwrap();
        assert_eq!(nf.divisors, base.divisors);
        assert_eq!(nf.t.congruence(&moved).unwrap(), nf.block_matrix());
    }
}

fn brute_kernel_count(m: &IntMatrix, l: i64) -> i64 {
    let n = m.cols();
    let total = l.pow(n as u32);
    let mut count = 0;
    for idx in 0..total {
        let mut k = idx;
        let h: Vec<i64> = (0..n)
            .map(|_| {
                let v = k % l;
                k /= l;
                v
            })
            .collect();
        let ok = (0..m.rows()).all(|i| {
            let s: BigInt = (0..n).map(|j| &m[(i, j)] * h[j]).sum();
            num_integer::Integer::mod_floor(&s, &BigInt::from(l)) == BigInt::from(0)
        });
        if ok {
            count += 1;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn kernel_index_matches_brute_force(n in 1usize..=3, l in 1i64..=6, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = IntMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-6i64..=6)));
        let k = lattice_kernel_mod(&m, &BigInt::from(l)).unwrap();
        // [ℤⁿ : H] = ℓⁿ / |H/ℓℤⁿ|
        let expect = l.pow(n as u32) / brute_kernel_count(&m, l);
        prop_assert_eq!(k.index.clone(), BigInt::from(expect));
        for c in k.columns() {
            let img: Vec<BigInt> = (0..n).map(|i| (0..n).map(|j| &m[(i, j)] * &c[j]).sum()).collect();
            prop_assert!(img.iter().all(|v| num_integer::Integer::mod_floor(v, &BigInt::from(l)) == BigInt::from(0)));
        }
    }

    #[test]
    fn smith_certificates(m in small_matrix(3, 4)) {
        let s = smith_normal_form(&m);
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        let d = s.diagonal();
        for w in d.windows(2) {
            if w[1] != BigInt::from(0) {
                prop_assert!(num_integer::Integer::is_multiple_of(&w[1], &w[0]));
            }
        }
    }

    #[test]
    fn symplectic_certificates(m in small_skew(5)) {
        let nf = symplectic_normal_form(&m).unwrap();
        prop_assert!(nf.t.is_unimodular());
        prop_assert_eq!(nf.t.congruence(&m).unwrap(), nf.block_matrix());
        let sm = smith_normal_form(&m).diagonal();
        let mut doubled: Vec<BigInt> = nf.divisors.iter().flat_map(|e| [e.clone(), e.clone()]).collect();
        doubled.resize(5, BigInt::from(0));
        prop_assert_eq!(sm, doubled);
    }

    #[test]
    fn lifts_are_congruent(n in 2usize..=4, l in 2i64..=12, seed in any::<u64>()) {
        let t = unimodular_sample(n, seed, 10);
        let lb = BigInt::from(l);
        let g = t.reduce_mod(&lb);
        let lifted = lift_unimodular(&g, &lb).unwrap();
        prop_assert!(lifted.is_unimodular());
        prop_assert_eq!(lifted.reduce_mod(&lb), g.clone());
        if t.det() == BigInt::from(1) {
            let s = lift_special_linear(&g, &lb).unwrap();
            prop_assert_eq!(s.det(), BigInt::from(1));
            prop_assert_eq!(s.reduce_mod(&lb), g);
        }
    }
}
