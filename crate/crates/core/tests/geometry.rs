use lonesieve::geometry::{intersection_divisor, is_smooth, local_expansion, Form, PlaneCurve, ProjectivePoint};
use lonesieve::fields::FieldTower;
use proptest::prelude::*;

fn klein(p: u32) -> Form {
    Form::from_terms(p, 4, &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)])
}

fn fermat(p: u32) -> Form {
    Form::from_terms(p, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)])
}

#[test]
fn smoothness_examples() {
    assert!(is_smooth(&klein(3)));
    assert!(is_smooth(&klein(5)));
    assert!(!is_smooth(&klein(7)));
    assert!(is_smooth(&fermat(3)));
    assert!(is_smooth(&fermat(5)));
    assert!(!is_smooth(&fermat(2)));
    // nodal cubic y^2 z = x^3 + x^2 z
    let nodal = Form::from_terms(11, 3, &[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]);
    assert!(!is_smooth(&nodal));
    // line
    assert!(is_smooth(&Form::from_terms(5, 1, &[([1, 0, 0], 1)])));
}

/// Singular points by brute force over small extensions, as an oracle.
fn has_singular_point_over(f: &Form, k: usize) -> bool {
    let tower = FieldTower::get(f.p() as u64).unwrap();
    let fld = tower.field(k).unwrap();
    let parts: Vec<Form> = (0..3).map(|i| f.partial(i)).collect();
    let els: Vec<_> = fld.elements().collect();
    let zero = fld.zero();
    let one = fld.one();
    let mut cands = vec![];
    for a in &els {
        for b in &els {
            cands.push([one, *a, *b]);
        }
        cands.push([zero, one, *a]);
    }
    cands.push([zero, zero, one]);
    cands.iter().any(|v| f.eval(fld, v).is_zero() && parts.iter().all(|g| g.eval(fld, v).is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn smoothness_agrees_with_search(cs in proptest::collection::vec(0i64..5, 10)) {
        let monos = lonesieve::geometry::form::monomials(3);
        let terms: Vec<_> = monos.iter().cloned().zip(cs.iter().cloned()).collect();
        let f = Form::from_terms(5, 3, &terms);
        prop_assume!(!f.is_zero());
        let singular = has_singular_point_over(&f, 1) || has_singular_point_over(&f, 2);
        if singular {
            prop_assert!(!is_smooth(&f));
        }
    }
}

#[test]
fn klein_tangent_at_infinity() {
    let c = PlaneCurve::new(klein(5)).unwrap();
    let z = Form::from_terms(5, 1, &[([0, 0, 1], 1)]);
    let d = intersection_divisor(&c, &z).unwrap();
    let pts: Vec<(Vec<u32>, u32)> =
        d.iter().map(|(pl, m)| (pl.point().coords().iter().map(|c| c.constant()).collect(), *m)).collect();
    assert_eq!(pts, vec![(vec![0, 1, 0], 3), (vec![1, 0, 0], 1)]);
}

#[test]
fn klein_branch_at_origin_of_chart() {
    let c = PlaneCurve::new(klein(5)).unwrap();
    let pt = ProjectivePoint::rational(5, [1, 0, 0]).unwrap();
    let br = local_expansion(&c, &pt, 6).unwrap();
    assert_eq!(br.param, 2);
    assert_eq!(br.dependent, 1);
    let y: Vec<u32> = br.coords[1].iter().map(|c| c.constant()).collect();
    assert_eq!(y[..4], [0, 0, 0, 4]);
}

fn rational_points_on_both(f: &Form, g: &Form) -> usize {
    let p = f.p() as i64;
    let tower = FieldTower::get(p as u64).unwrap();
    let fp = tower.prime_field();
    let mut cands = vec![];
    for a in 0..p {
        for b in 0..p {
            cands.push([1, a, b]);
        }
        cands.push([0, 1, a]);
    }
    cands.push([0, 0, 1]);
    cands
        .iter()
        .filter(|v| {
            let v = v.map(|c| fp.from_i64(c));
            f.eval(fp, &v).is_zero() && g.eval(fp, &v).is_zero()
        })
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn bezout_and_rational_support(p in prop::sample::select(vec![3u32, 5, 11, 13]), m in 1u32..4, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let monos = lonesieve::geometry::form::monomials(m);
        let terms: Vec<_> = monos.iter().map(|mo| (*mo, rng.gen_range(0..p as i64))).collect();
        let g = Form::from_terms(p, m, &terms);
        prop_assume!(!g.is_zero());
        let f = if p == 3 { fermat(p) } else { klein(p) };
        let c = PlaneCurve::new(f.clone()).unwrap();
        let d = intersection_divisor(&c, &g).unwrap();
        let total: usize = d.iter().map(|(pl, k)| pl.degree() * *k as usize).sum();
        prop_assert_eq!(total, 4 * m as usize);
        let rational = d.keys().filter(|pl| pl.degree() == 1).count();
        prop_assert_eq!(rational, rational_points_on_both(&f, &g));
        for pl in d.keys() {
            prop_assert!(c.contains(pl.point()).unwrap());
        }
    }
}

use lonesieve::geometry::{enumerate_points, place_image, places_up_to_degree, reduce_mod_p, validate_involution};
use lonesieve::geometry::{Mat3, QForm, QMat3};
use lonesieve::Error;

fn coords(pt: &ProjectivePoint) -> Vec<u32> {
    pt.coords().iter().map(|c| c.constant()).collect()
}

fn qform(json: &str, d: u32) -> QForm {
    QForm::from_json(d, &serde_json::from_str(json).unwrap()).unwrap()
}

#[test]
fn reduction_examples() {
    let fermat_q = qform("[[4,0,0,1],[0,4,0,1],[0,0,4,1]]", 4);
    assert_eq!(reduce_mod_p(&fermat_q, 3).unwrap().genus(), 3);
    assert!(matches!(reduce_mod_p(&fermat_q, 2), Err(Error::BadReduction { .. })));
    let klein_q = qform("[[3,1,0,1],[0,3,1,1],[1,0,3,1]]", 4);
    assert!(reduce_mod_p(&klein_q, 2).is_ok());
    let halves = qform("[[4,0,0,\"1/2\"],[0,4,0,\"1/2\"],[0,0,4,\"1/2\"]]", 4);
    assert_eq!(reduce_mod_p(&halves, 5).unwrap().form(), &fermat(5));
    let third = qform("[[4,0,0,\"1/3\"],[0,4,0,1],[0,0,4,1]]", 4);
    assert!(matches!(reduce_mod_p(&third, 3), Err(Error::DenominatorClash(3))));
    let fives = qform("[[4,0,0,5],[0,4,0,5],[0,0,4,5]]", 4);
    assert_eq!(reduce_mod_p(&fives, 5).unwrap().form(), &fermat(5));
}

#[test]
fn point_enumeration_examples() {
    let k2 = PlaneCurve::new(klein(2)).unwrap();
    let pts: Vec<Vec<u32>> = enumerate_points(&k2, 1).unwrap().iter().map(coords).collect();
    assert_eq!(pts, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    let f3 = PlaneCurve::new(fermat(3)).unwrap();
    let pts: Vec<Vec<u32>> = enumerate_points(&f3, 1).unwrap().iter().map(coords).collect();
    assert_eq!(pts, vec![vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 1], vec![1, 2, 2]]);
    assert!(matches!(enumerate_points(&f3, 8), Err(Error::EnumerationTooLarge(_))));
    assert!(matches!(places_up_to_degree(&f3, 4), Err(Error::DegreeOutOfRange(4))));
}

/// Direct scan of P^2(F_q) as an oracle for point counts.
fn brute_count(f: &Form, k: usize) -> usize {
    let tower = FieldTower::get(f.p() as u64).unwrap();
    let fld = tower.field(k).unwrap();
    let els: Vec<_> = fld.elements().collect();
    let (zero, one) = (fld.zero(), fld.one());
    let mut n = 0;
    for a in &els {
        for b in &els {
            n += f.eval(fld, &[one, *a, *b]).is_zero() as usize;
        }
        n += f.eval(fld, &[zero, one, *a]).is_zero() as usize;
    }
    n + f.eval(fld, &[zero, zero, one]).is_zero() as usize
}

#[test]
fn counts_match_scan_and_weil_bound() {
    for (f, ks) in [(klein(2), vec![1, 2, 3]), (fermat(3), vec![1, 2]), (klein(3), vec![1, 2]), (klein(5), vec![1, 2])] {
        let c = PlaneCurve::new(f.clone()).unwrap();
        for k in ks {
            let n = enumerate_points(&c, k).unwrap().len();
            assert_eq!(n, brute_count(&f, k));
            let q = (f.p() as f64).powi(k as i32);
            assert!(((n as f64) - (q + 1.0)).abs() <= 6.0 * q.sqrt());
        }
        let places = places_up_to_degree(&c, 2).unwrap();
        let n1 = places.iter().filter(|p| p.degree() == 1).count();
        let n2 = places.iter().filter(|p| p.degree() == 2).count();
        let m = enumerate_points(&c, 2).unwrap().len();
        assert_eq!(n1, enumerate_points(&c, 1).unwrap().len());
        assert_eq!(n2, (m - n1) / 2);
    }
}

#[test]
fn degree_three_places_on_klein() {
    let c = PlaneCurve::new(klein(2)).unwrap();
    let places = places_up_to_degree(&c, 3).unwrap();
    let n3 = places.iter().filter(|p| p.degree() == 3).count();
    let m3 = enumerate_points(&c, 3).unwrap().len();
    assert_eq!(3 * n3, m3 - 3);
    for pl in &places {
        assert!(c.contains(pl.point()).unwrap());
    }
}

#[test]
fn involution_examples() {
    let swap = Mat3::new(3, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    let f3 = PlaneCurve::new(fermat(3)).unwrap();
    let s = validate_involution(&swap, &f3).unwrap();
    assert_eq!((s.lambda, s.mu, s.trivial), (1, 1, false));
    assert!(validate_involution(&Mat3::identity(3), &f3).unwrap().trivial);
    let k3 = PlaneCurve::new(klein(3)).unwrap();
    assert_eq!(validate_involution(&swap, &k3), Err(Error::NotAnAutomorphism));
    let q = QMat3::from_json(&serde_json::json!([[0, 1, 0], [1, 0, 0], [0, 0, 1]])).unwrap();
    let fq = qform("[[4,0,0,1],[0,4,0,1],[0,0,4,1]]", 4);
    let s = lonesieve::geometry::rational::validate_involution_q(&q, &fq).unwrap();
    assert!(!s.trivial);
    // order-3 automorphism of the Klein quartic is not an involution
    let cyc = Mat3::new(3, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
    assert_eq!(validate_involution(&cyc, &k3), Err(Error::NotAnInvolution));
}

#[test]
fn klein_divisors_of_coordinates_over_f2() {
    let c = PlaneCurve::new(klein(2)).unwrap();
    let z = Form::from_terms(2, 1, &[([0, 0, 1], 1)]);
    let y = Form::from_terms(2, 1, &[([0, 1, 0], 1)]);
    let show = |g: &Form| -> Vec<(Vec<u32>, u32)> {
        intersection_divisor(&c, g).unwrap().iter().map(|(pl, m)| (coords(pl.point()), *m)).collect()
    };
    assert_eq!(show(&z), vec![(vec![0, 1, 0], 3), (vec![1, 0, 0], 1)]);
    assert_eq!(show(&y), vec![(vec![0, 0, 1], 1), (vec![1, 0, 0], 3)]);
    assert_eq!(intersection_divisor(&c, &klein(2)), Err(Error::FormDivisibleByCurve));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]
    #[test]
    fn involution_equivariance(m in 1u32..3, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let p = 5u32;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let terms: Vec<_> = lonesieve::geometry::form::monomials(m).iter().map(|mo| (*mo, rng.gen_range(0..5i64))).collect();
        let g = Form::from_terms(p, m, &terms);
        prop_assume!(!g.is_zero());
        let c = PlaneCurve::new(fermat(p)).unwrap();
        let swap = Mat3::new(p, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let d = intersection_divisor(&c, &g).unwrap();
        let moved = g.compose(&swap.inverse().unwrap());
        let dm = intersection_divisor(&c, &moved).unwrap();
        let image: std::collections::BTreeMap<_, _> =
            d.iter().map(|(pl, k)| (place_image(&c, &swap, pl).unwrap(), *k)).collect();
        prop_assert_eq!(image, dm);
        // Galois stability: every listed place is a full Frobenius orbit on the curve
        for pl in d.keys() {
            for conj in pl.conjugates(c.tower()).unwrap() {
                prop_assert!(c.contains(&conj).unwrap());
            }
        }
    }
}
