#![allow(dead_code)]

use lonesieve::divisor::EffectiveDivisor;
use lonesieve::fields::FieldTower;
use lonesieve::geometry::{enumerate_points, places_up_to_degree, Form, Place, PlaneCurve, ProjectivePoint};

pub fn klein(p: u32) -> Form {
    Form::from_terms(p, 4, &[([3, 1, 0], 1), ([0, 3, 1], 1), ([1, 0, 3], 1)])
}

pub fn fermat(p: u32) -> Form {
    Form::from_terms(p, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)])
}

/// x^3 y - 2 x^2 (y^2 - z^2) - 2 x y (y^2 - z^2) - 2 y^4 + 2 z^4: even in z, and
/// F(s, t, t) = s^3 t, so the lines y = ±z meet it in 3(0:1:±1) + (1:0:0).
pub fn toy(p: u32) -> Form {
    Form::from_terms(
        p,
        4,
        &[
            ([3, 1, 0], 1),
            ([2, 2, 0], -2),
            ([2, 0, 2], 2),
            ([1, 3, 0], -2),
            ([1, 1, 2], 2),
            ([0, 4, 0], -2),
            ([0, 0, 4], 2),
        ],
    )
}

pub fn rational_place(c: &PlaneCurve, xyz: [i64; 3]) -> Place {
    let pt = ProjectivePoint::rational(c.p(), xyz).unwrap();
    assert!(c.contains(&pt).unwrap(), "{xyz:?} not on curve");
    Place::from_point(c.tower(), &pt).unwrap()
}

/// All effective divisors of degree exactly `deg`, built from places of degree ≤ deg.
pub fn effective_divisors(c: &PlaneCurve, deg: usize) -> Vec<EffectiveDivisor> {
    let places = places_up_to_degree(c, deg.min(3)).unwrap();
    let mut out = vec![];
    fn rec(places: &[Place], start: usize, left: usize, cur: EffectiveDivisor, out: &mut Vec<EffectiveDivisor>) {
        if left == 0 {
            out.push(cur);
            return;
        }
        for i in start..places.len() {
            let pl = places[i];
            if pl.degree() <= left {
                let mut next = cur.clone();
                next.add_place(pl, 1);
                rec(places, i, left - pl.degree(), next, out);
            }
        }
    }
    rec(&places, 0, deg, EffectiveDivisor::zero(), &mut out);
    out
}

/// Scan of P^2(F_{p^k}).
pub fn brute_count(f: &Form, k: usize) -> usize {
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

pub fn count(c: &PlaneCurve, k: usize) -> usize {
    enumerate_points(c, k).unwrap().len()
}
