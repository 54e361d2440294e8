mod common;

use common::*;
use lonesieve::divisor::{class_match_direct, sym2_enumerate, EffectiveDivisor, TorsionModel, TorsionTable};
use lonesieve::geometry::{is_smooth, Mat3, PlaneCurve};
use lonesieve::Error;

fn setup(p: u32, n: u32) -> (PlaneCurve, Mat3, TorsionModel) {
    let c = PlaneCurve::new(toy(p)).unwrap();
    let w = Mat3::new(p, [[1, 0, 0], [0, 1, 0], [0, 0, -1]]);
    let model = TorsionModel { n, c0: rational_place(&c, [0, 1, 1]), cinf: rational_place(&c, [0, 1, -1]) };
    (c, w, model)
}

#[test]
fn toy_is_smooth_at_small_primes() {
    for p in [3, 5, 7, 11, 13] {
        assert!(is_smooth(&toy(p)), "p = {p}");
    }
}

#[test]
fn cusp_plus_fixed_point() {
    for p in [5, 7, 11] {
        let (c, w, model) = setup(p, 3);
        let table = TorsionTable::build(&c, &model).unwrap();
        let t = rational_place(&c, [1, 0, 0]);
        let mut q = EffectiveDivisor::place(model.c0, 1);
        q.add_place(t, 1);
        assert_eq!(table.class_match(&c, &q, &w).unwrap(), Some(1));
        let mut q = EffectiveDivisor::place(model.cinf, 1);
        q.add_place(t, 1);
        assert_eq!(table.class_match(&c, &q, &w).unwrap(), Some(2));
        let fixed = EffectiveDivisor::place(t, 2);
        assert_eq!(table.class_match(&c, &fixed, &w).unwrap(), Some(0));
    }
}

#[test]
fn table_agrees_with_direct_tests_on_all_of_sym2() {
    for p in [3, 5, 7] {
        let (c, w, model) = setup(p, 3);
        let table = TorsionTable::build(&c, &model).unwrap();
        for q in sym2_enumerate(&c).unwrap() {
            let fast = table.class_match(&c, &q, &w).unwrap();
            assert_eq!(fast, table.class_match_exhaustive(&c, &q, &w).unwrap());
            assert_eq!(fast, class_match_direct(&c, &q, &w, &model).unwrap(), "p = {p}, Q = {q:?}");
            let wq = q.image(&c, &w).unwrap();
            let back = table.class_match(&c, &wq, &w).unwrap();
            assert_eq!(back, fast.map(|m| (3 - m) % 3));
        }
    }
}

#[test]
fn wrong_orders_are_detected() {
    let (c, _, model) = setup(7, 2);
    assert!(matches!(TorsionTable::build(&c, &model), Err(Error::TorsionOrderMismatch(2))));
    let (c, _, model) = setup(7, 6);
    assert!(matches!(TorsionTable::build(&c, &model), Err(Error::MultipleMatches(_))));
    let (c, _, mut model) = setup(7, 3);
    model.cinf = model.c0;
    assert!(matches!(TorsionTable::build(&c, &model), Err(Error::CuspsCollide)));
}
