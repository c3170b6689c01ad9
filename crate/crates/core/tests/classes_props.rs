use num_bigint::BigInt;
use proptest::prelude::*;
use toribundle::bundles::{endo, iso_matrix, iso_vector, line_twist_exists, tensor_line, VectorBundleClass};
use toribundle::cohomology::{beta_reduce, pullback, wedge, AltFormZ};
use toribundle::linalg::{unimodular_sample, IntMatrix};

fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-20i64..=20, n).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

fn alt_strategy(n: usize) -> impl Strategy<Value = AltFormZ> {
    prop::collection::vec(-15i64..=15, n * n).prop_map(move |v| {
        let m = IntMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => BigInt::from(v[i * n + j]),
            std::cmp::Ordering::Greater => -BigInt::from(v[j * n + i]),
            std::cmp::Ordering::Equal => BigInt::from(0),
        });
        AltFormZ::new(m).unwrap()
    })
}

fn add(u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wedge_is_bilinear_and_alternating(u in vec_strategy(4), v in vec_strategy(4), w in vec_strategy(4), k in -5i64..=5) {
        let uv = wedge(&u, &v).unwrap();
        prop_assert_eq!(wedge(&add(&u, &w), &v).unwrap(), uv.checked_add(&wedge(&w, &v).unwrap()).unwrap());
        let ku: Vec<BigInt> = u.iter().map(|x| x * k).collect();
        prop_assert_eq!(wedge(&ku, &v).unwrap(), uv.scale(&BigInt::from(k)));
        prop_assert!(wedge(&u, &u).unwrap().is_zero());
        prop_assert_eq!(wedge(&v, &u).unwrap(), uv.scale(&BigInt::from(-1)));
    }

    #[test]
    fn pullback_is_functorial(c in alt_strategy(3), s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = unimodular_sample(3, s1, 6);
        let q = unimodular_sample(3, s2, 6);
        let lhs = pullback(&pullback(&c, &p).unwrap(), &q).unwrap();
        prop_assert_eq!(lhs, pullback(&c, &(&p * &q)).unwrap());
        prop_assert_eq!(pullback(&c, &IntMatrix::identity(3)).unwrap(), c);
    }

    #[test]
    fn reduction_commutes_with_pullback(c in alt_strategy(4), seed in any::<u64>(), q in 1i64..=9) {
        let p = unimodular_sample(4, seed, 8);
        let qb = BigInt::from(q);
        let a = beta_reduce(&pullback(&c, &p).unwrap(), &qb).unwrap();
        let b = beta_reduce(&c, &qb).unwrap().pullback(&p).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn twist_existence_matches_matrix_iso(c in alt_strategy(3), d in alt_strategy(3), q in 1i64..=7) {
        let qb = BigInt::from(q);
        let e = VectorBundleClass::new(qb.clone(), c).unwrap();
        let f = VectorBundleClass::new(qb, d).unwrap();
        let twist = line_twist_exists(&e, &f).unwrap();
        prop_assert_eq!(twist.is_some(), iso_matrix(&endo(&e), &endo(&f)));
        if let Some(l) = twist {
            prop_assert!(iso_vector(&tensor_line(&e, &l).unwrap(), &f).unwrap());
        }
    }

    #[test]
    fn vector_iso_is_an_equivalence(a in alt_strategy(2), b in alt_strategy(2), c in alt_strategy(2)) {
        let q = BigInt::from(3);
        let cls = |x: AltFormZ| VectorBundleClass::new(q.clone(), x).unwrap();
        let (x, y, z) = (cls(a), cls(b), cls(c));
        prop_assert!(iso_vector(&x, &x).unwrap());
        prop_assert_eq!(iso_vector(&x, &y).unwrap(), iso_vector(&y, &x).unwrap());
        if iso_vector(&x, &y).unwrap() && iso_vector(&y, &z).unwrap() {
            prop_assert!(iso_vector(&x, &z).unwrap());
        }
        let (ex, ey, ez) = (endo(&x), endo(&y), endo(&z));
        prop_assert!(iso_matrix(&ex, &ex));
        prop_assert_eq!(iso_matrix(&ex, &ey), iso_matrix(&ey, &ex));
        if iso_matrix(&ex, &ey) && iso_matrix(&ey, &ez) {
            prop_assert!(iso_matrix(&ex, &ez));
        }
    }
}
