//! Searches even-in-z plane quartics through (0:1:±1) whose class (0:1:1) - (0:1:-1) has a given order mod p.
//!
//! cargo run --release --example search_torsion_fixture -- 41 27 [seed] [tries]

use lonesieve::divisor::lineq::{equiv_with_residual, reduce, residual};
use lonesieve::divisor::EffectiveDivisor;
use lonesieve::geometry::{is_smooth, Form, Place, PlaneCurve, ProjectivePoint};
use rand::{Rng, SeedableRng};

const EVEN: [[u32; 3]; 8] = [[4, 0, 0], [3, 1, 0], [2, 2, 0], [1, 3, 0], [0, 4, 0], [2, 0, 2], [1, 1, 2], [0, 2, 2]];

fn place(c: &PlaneCurve, xyz: [i64; 3]) -> Place {
    Place::from_point(c.tower(), &ProjectivePoint::rational(c.p(), xyz).unwrap()).unwrap()
}

/// Class arithmetic on reduced representatives E_m ~ g*cinf + m(c0 - cinf).
struct Chain<'a> {
    c: &'a PlaneCurve,
    d0: EffectiveDivisor,
}

impl Chain<'_> {
    fn add(&self, a: &EffectiveDivisor, b: &EffectiveDivisor) -> EffectiveDivisor {
        reduce(self.c, &a.add(b), &self.d0).unwrap()
    }

    fn mul(&self, a: &EffectiveDivisor, k: u32) -> EffectiveDivisor {
        let mut acc = self.d0.clone();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn is_zero(&self, a: &EffectiveDivisor) -> bool {
        let r = residual(self.c, &self.d0, 20).unwrap();
        equiv_with_residual(self.c, a, &r).unwrap().is_some()
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = vec![];
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let p: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(41);
    let n: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(27);
    let seed: u64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1);
    let tries: usize = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let half = (p / 2) as i64;
    for t in 0..tries {
        let cs: Vec<i64> = (0..9).map(|_| rng.gen_range(-3..=3)).collect();
        let mut terms: Vec<([u32; 3], i64)> = EVEN.iter().cloned().zip(cs.iter().cloned()).collect();
        terms.push(([0, 0, 4], cs[8]));
        let f = Form::from_terms(p, 4, &terms);
        if !is_smooth(&f) {
            continue;
        }
        let c = PlaneCurve::new(f).unwrap();
        for pt in lonesieve::geometry::enumerate_points(&c, 1).unwrap() {
            let v = pt.coords().map(|x| x.constant() as i64);
            if v[2] == 0 {
                continue;
            }
            // normalize to z = 1 and center the lifts
            let zi = lonesieve::fields::build_extension(p as u64, 1).unwrap();
            let inv = zi.inv(&zi.from_i64(v[2]));
            let a = zi.mul(&zi.from_i64(v[0]), &inv).constant() as i64;
            let b = zi.mul(&zi.from_i64(v[1]), &inv).constant() as i64;
            let (a, b) = (if a > half { a - p as i64 } else { a }, if b > half { b - p as i64 } else { b });
            let c0 = place(&c, [a, b, 1]);
            let cinf = place(&c, [a, b, -1]);
            let d0 = EffectiveDivisor::place(cinf, c.genus());
            let chain = Chain { c: &c, d0: d0.clone() };
            let e1 = reduce(&c, &d0.add(&EffectiveDivisor::place(c0, 1)), &EffectiveDivisor::place(cinf, 1)).unwrap();
            if !chain.is_zero(&chain.mul(&e1, n)) {
                continue;
            }
            if prime_factors(n).iter().any(|q| chain.is_zero(&chain.mul(&e1, n / q))) {
                continue;
            }
            // lift to Q: adjust the z^4 coefficient by a multiple of p so (a:b:1) lies on the curve
            let val: i64 = terms.iter().map(|(m, k)| k * a.pow(m[0]) * b.pow(m[1])).sum();
            assert_eq!(val.rem_euclid(p as i64), 0);
            let mut lifted = terms.clone();
            lifted.last_mut().unwrap().1 -= val;
            println!("try {t}: order {n} mod {p}, c0 = ({a}:{b}:1), cinf = ({a}:{b}:-1)");
            println!("{:?}", lifted);
            return;
        }
    }
    println!("none found");
}
