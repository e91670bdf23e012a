use dgar::ar::tau;
use dgar::catalog;
use dgar::linalg::{Field, Matrix};
use dgar::resolution::{derived_tensor, phi, resolve, ResolutionBudget};
use dgar::sample::random_compact;
use proptest::prelude::*;

fn budget() -> ResolutionBudget {
    ResolutionBudget::default()
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::prime(7).unwrap()), Just(Field::prime(2).unwrap())]
}

fn matrix_strategy() -> impl Strategy<Value = (Field, Vec<Vec<i64>>)> {
    (field_strategy(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| {
        (Just(f), prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
    })
}

fn build(f: Field, rows: &[Vec<i64>]) -> Matrix {
    Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect())
}

const ALGEBRAS: [&str; 2] = ["sphere-3", "cp2-like"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity_and_solving((f, rows) in matrix_strategy(), x in prop::collection::vec(-3i64..=3, 6)) {
        let a = build(f, &rows);
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.dim(), a.cols());
        for v in &kernel.basis {
            prop_assert!(a.mul_vec(v).iter().all(|s| s.is_zero()));
        }
        let x: Vec<_> = x[..a.cols()].iter().map(|&v| f.from_i64(v)).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b).unwrap().expect("b lies in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn suspension_and_duality_on_random_modules(seed in any::<u64>(), which in 0usize..2, n in -4i32..=4) {
        let a = catalog::by_name(ALGEBRAS[which]).unwrap();
        let x = random_compact(&a, 3, seed, &budget()).unwrap().realize();
        x.ensure_valid().unwrap();
        let s = x.suspend(n);
        s.ensure_valid().unwrap();
        prop_assert_eq!(s.cohomology_dims(), x.cohomology_dims().suspended(n));
        prop_assert_eq!(x.dual().dual().cohomology_dims(), x.cohomology_dims());
    }

    #[test]
    fn resolutions_are_minimal_and_phi_adds(seed in any::<u64>(), which in 0usize..2) {
        let a = catalog::by_name(ALGEBRAS[which]).unwrap();
        let x = random_compact(&a, 3, seed, &budget()).unwrap().realize();
        let y = random_compact(&a, 2, seed ^ 0x9e37, &budget()).unwrap().realize();
        let res = resolve(&x, &budget()).unwrap();
        prop_assert!(res.semifree.is_minimal());
        prop_assert!(res.morphism(&x).is_quasi_isomorphism());
        let sum = phi(&x.direct_sum(&y).unwrap(), &budget()).unwrap();
        prop_assert_eq!(sum, res.phi() + phi(&y, &budget()).unwrap());
    }

    #[test]
    fn infima_add_under_derived_tensor(seed in any::<u64>(), which in 0usize..2) {
        let a = catalog::by_name(ALGEBRAS[which]).unwrap();
        let m = random_compact(&a, 3, seed, &budget()).unwrap().realize();
        let n = random_compact(&a, 3, seed.wrapping_add(1), &budget()).unwrap().realize();
        let t = derived_tensor(&m.commutative_flip().unwrap(), &n, &budget()).unwrap();
        let inf = |d: dgar::dg::GradedDims| d.inf().unwrap();
        prop_assert_eq!(inf(t.cohomology().dims()), inf(m.cohomology_dims()) + inf(n.cohomology_dims()));
    }

    #[test]
    fn tau_shifts_cohomology(seed in any::<u64>(), which in 0usize..2) {
        let a = catalog::by_name(ALGEBRAS[which]).unwrap();
        let m = random_compact(&a, 2, seed, &budget()).unwrap().realize();
        let t = tau(&m, &budget()).unwrap();
        prop_assert_eq!(t.cohomology_dims(), m.cohomology_dims().suspended(a.top - 1));
    }
}
