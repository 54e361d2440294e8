mod common;

use common::*;
use lonesieve::divisor::{
    brute_force_equiv, lin_equiv, sym2_enumerate, EffectiveDivisor, FormCatalog, OracleAnswer,
};
use lonesieve::geometry::{Form, Mat3, PlaneCurve};
use lonesieve::Error;

#[test]
fn klein_z_over_y() {
    let c = PlaneCurve::new(klein(2)).unwrap();
    let a = EffectiveDivisor::parse(&c, "3(0:1:0)").unwrap();
    let b = EffectiveDivisor::parse(&c, "2*(1:0:0)+(0:0:1)").unwrap();
    let (ok, cert) = lin_equiv(&c, &a, &b).unwrap();
    assert!(ok);
    let cert = cert.unwrap();
    assert_eq!(cert.m, 1);
    assert_eq!(cert.f, Form::from_terms(2, 1, &[([0, 1, 0], 1)]));
    assert_eq!(cert.g, Form::from_terms(2, 1, &[([0, 0, 1], 1)]));
    assert!(cert.verify(&c, &a, &b).unwrap());
    assert_eq!(brute_force_equiv(&c, &a, &b, 1).unwrap(), OracleAnswer::True);
}

#[test]
fn klein_no_pencil() {
    let c = PlaneCurve::new(klein(2)).unwrap();
    let a = EffectiveDivisor::parse(&c, "(1:0:0)+(0:1:0)").unwrap();
    let b = EffectiveDivisor::parse(&c, "2(0:0:1)").unwrap();
    assert_eq!(lin_equiv(&c, &a, &b).unwrap(), (false, None));
    assert_eq!(brute_force_equiv(&c, &a, &b, 2).unwrap(), OracleAnswer::False);
}

#[test]
fn reflexive_certificate_uses_one_form() {
    let c = PlaneCurve::new(klein(2)).unwrap();
    let a = EffectiveDivisor::parse(&c, "(1:0:0)+(0:1:0)").unwrap();
    let (ok, cert) = lin_equiv(&c, &a, &a).unwrap();
    let cert = cert.unwrap();
    assert!(ok);
    assert_eq!(cert.f, cert.g);
    assert!(cert.verify(&c, &a, &a).unwrap());
    assert_eq!(brute_force_equiv(&c, &a, &a, 3).unwrap(), OracleAnswer::True);
}

#[test]
fn degree_mismatch() {
    let c = PlaneCurve::new(klein(2)).unwrap();
    let a = EffectiveDivisor::parse(&c, "(1:0:0)").unwrap();
    let b = EffectiveDivisor::parse(&c, "2(0:0:1)").unwrap();
    assert_eq!(lin_equiv(&c, &a, &b), Err(Error::DegreeMismatch(1, 2)));
}

#[test]
fn oracle_guards() {
    let c = PlaneCurve::new(klein(5)).unwrap();
    let a = EffectiveDivisor::parse(&c, "(1:0:0)").unwrap();
    let b = EffectiveDivisor::parse(&c, "(0:0:1)").unwrap();
    assert_eq!(brute_force_equiv(&c, &a, &b, 1), Err(Error::SearchSpaceTooLarge));
    let c2 = PlaneCurve::new(klein(2)).unwrap();
    let a = EffectiveDivisor::parse(&c2, "(1:0:0)").unwrap();
    let b = EffectiveDivisor::parse(&c2, "(0:0:1)").unwrap();
    assert_eq!(brute_force_equiv(&c2, &a, &b, 4), Err(Error::SearchSpaceTooLarge));
}

#[test]
fn unknown_when_search_is_not_conclusive() {
    // degree-3 divisors: no theorem rules out an equivalence, and lines alone find none
    let c = PlaneCurve::new(klein(2)).unwrap();
    let a = EffectiveDivisor::parse(&c, "3(1:0:0)").unwrap();
    let b = EffectiveDivisor::parse(&c, "3(0:0:1)").unwrap();
    let ans = FormCatalog::build(&c, 1).unwrap().equiv(&a, &b).unwrap();
    assert_eq!(ans, OracleAnswer::Unknown);
}

#[test]
fn sym2_sizes() {
    for (f, n_expected) in [(fermat(3), 4), (klein(2), 3), (klein(3), 0), (toy(5), 0)] {
        let c = PlaneCurve::new(f.clone()).unwrap();
        let n = brute_count(&f, 1);
        let m = brute_count(&f, 2);
        if n_expected > 0 {
            assert_eq!(n, n_expected);
        }
        let s = sym2_enumerate(&c).unwrap();
        assert_eq!(s.len(), (n * n + m) / 2);
        assert_eq!(s.iter().filter(|d| d.iter().count() == 1 && d.iter().next().unwrap().0.degree() == 2).count(), (m - n) / 2);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(s.iter().all(|d| d.degree() == 2));
    }
}

fn equivalence_matrix(c: &PlaneCurve, divs: &[EffectiveDivisor]) -> Vec<Vec<bool>> {
    divs.iter()
        .map(|a| {
            divs.iter()
                .map(|b| {
                    let (ok, cert) = lin_equiv(c, a, b).unwrap();
                    if let Some(cert) = cert {
                        assert!(cert.verify(c, a, b).unwrap());
                    }
                    ok
                })
                .collect()
        })
        .collect()
}

fn assert_equivalence_relation(m: &[Vec<bool>]) {
    let n = m.len();
    for i in 0..n {
        assert!(m[i][i]);
        for j in 0..n {
            assert_eq!(m[i][j], m[j][i]);
            for k in 0..n {
                if m[i][j] && m[j][k] {
                    assert!(m[i][k]);
                }
            }
        }
    }
}

#[test]
fn klein_degree_three_relation_and_oracle() {
    let c = PlaneCurve::new(klein(2)).unwrap();
    let cat = FormCatalog::build(&c, 3).unwrap();
    for deg in 1..=3 {
        let divs = effective_divisors(&c, deg);
        let m = equivalence_matrix(&c, &divs);
        assert_equivalence_relation(&m);
        for (i, a) in divs.iter().enumerate() {
            for (j, b) in divs.iter().enumerate() {
                match cat.equiv(a, b).unwrap() {
                    OracleAnswer::True => assert!(m[i][j], "{a:?} {b:?}"),
                    OracleAnswer::False => assert!(!m[i][j], "{a:?} {b:?}"),
                    OracleAnswer::Unknown => {}
                }
            }
        }
        if deg == 2 {
            for i in 0..divs.len() {
                for j in 0..divs.len() {
                    assert_eq!(m[i][j], i == j);
                }
            }
        }
    }
}

#[test]
fn no_pencil_on_fermat_and_swap_compatibility() {
    let c = PlaneCurve::new(fermat(3)).unwrap();
    let s = sym2_enumerate(&c).unwrap();
    let swap = Mat3::new(3, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    let m = equivalence_matrix(&c, &s);
    for i in 0..s.len() {
        for j in 0..s.len() {
            assert_eq!(m[i][j], i == j);
        }
    }
    let d3 = effective_divisors(&c, 3);
    let m3 = equivalence_matrix(&c, &d3);
    assert_equivalence_relation(&m3);
    let images: Vec<EffectiveDivisor> = d3.iter().map(|d| d.image(&c, &swap).unwrap()).collect();
    for (i, a) in images.iter().enumerate() {
        assert_eq!(a.image(&c, &swap).unwrap(), d3[i]);
        for (j, b) in images.iter().enumerate() {
            assert_eq!(lin_equiv(&c, a, b).unwrap().0, m3[i][j]);
        }
    }
}

#[test]
fn divisor_literals() {
    let c = PlaneCurve::new(klein(2)).unwrap();
    let a = EffectiveDivisor::parse(&c, "3(0:1:0) + 2*(1:0:0)").unwrap();
    assert_eq!(a.degree(), 5);
    let round = EffectiveDivisor::from_json(&c, &a.to_json()).unwrap();
    assert_eq!(round, a);
    let b = EffectiveDivisor::parse(&c, &a.to_json().to_string()).unwrap();
    assert_eq!(b, a);
    assert!(EffectiveDivisor::parse(&c, "(1:1:1)").is_err());
    assert!(EffectiveDivisor::parse(&c, "x(1:0:0)").is_err());
}
