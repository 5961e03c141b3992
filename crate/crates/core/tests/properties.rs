use hypfree_core::{det_poly, ExactMatrix, HomPoly, Rat, Scalar};
use proptest::prelude::*;

fn q5(a: (i64, i64), b: (i64, i64)) -> Scalar {
    Scalar::quadratic(Rat::new(a.0, a.1), Rat::new(b.0, b.1), 5)
}

fn frac() -> impl Strategy<Value = (i64, i64)> {
    (-20i64..=20, 1i64..=9)
}

fn poly(nvars: usize, degree: u32) -> impl Strategy<Value = HomPoly> {
    let n = hypfree_core::dim_graded(nvars, degree as i64);
    proptest::collection::vec(-3i64..=3, n)
        .prop_map(move |c| HomPoly::from_coords(nvars, degree, &c.into_iter().map(Scalar::from_int).collect::<Vec<_>>()))
}

fn linear_row() -> impl Strategy<Value = Vec<HomPoly>> {
    proptest::collection::vec(poly(3, 1), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_multiplicative(a in frac(), b in frac(), c in frac(), d in frac()) {
        let x = q5(a, b);
        let y = q5(c, d);
        prop_assert_eq!((&x * &y).norm(), &x.norm() * &y.norm());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn exact_division_inverts_products(p in poly(3, 2), q in poly(3, 1)) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).exact_divide(&q).unwrap(), p);
    }

    #[test]
    fn determinant_is_alternating_and_multilinear(r0 in linear_row(), r1 in linear_row(), r2 in linear_row(), s in linear_row()) {
        let m = vec![r0.clone(), r1.clone(), r2.clone()];
        let d = det_poly(&m).unwrap();
        let swapped = vec![r1.clone(), r0.clone(), r2.clone()];
        prop_assert_eq!(det_poly(&swapped).unwrap(), d.neg());
        let repeated = vec![r0.clone(), r0.clone(), r2.clone()];
        prop_assert!(det_poly(&repeated).unwrap().is_zero());
        let summed: Vec<HomPoly> = r0.iter().zip(&s).map(|(x, y)| x.add(y)).collect();
        let lhs = det_poly(&[summed, r1.clone(), r2.clone()]).unwrap();
        let rhs = d.add(&det_poly(&[s, r1, r2]).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 1..5)) {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = ExactMatrix::from_ints(&refs);
        let (rank, kernel) = m.kernel_basis();
        prop_assert_eq!(rank + kernel.len(), 5);
        for v in kernel {
            prop_assert!(m.mul_vec(&v).iter().all(Scalar::is_zero));
        }
    }
}
