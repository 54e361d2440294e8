//! Dense univariate polynomials over an `ExtensionField`, ascending coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fq::{ExtensionField, Fe};

pub type Poly = Vec<Fe>;

pub fn trim(a: &mut Poly) {
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
}

pub fn trimmed(mut a: Poly) -> Poly {
    trim(&mut a);
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree(a: &[Fe]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn x_poly(f: &ExtensionField) -> Poly {
    vec![f.zero(), f.one()]
}


pub fn add(f: &ExtensionField, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trimmed(out)
}

pub fn sub(f: &ExtensionField, a: &[Fe], b: &[Fe]) -> Poly {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trimmed(out)
}

pub fn scale(f: &ExtensionField, a: &[Fe], c: &Fe) -> Poly {
    trimmed(a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul(f: &ExtensionField, a: &[Fe], b: &[Fe]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trimmed(out)
}

pub fn eval(f: &ExtensionField, a: &[Fe], x: &Fe) -> Fe {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(f: &ExtensionField, a: &[Fe], b: &[Fe]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: Poly = trimmed(a.to_vec());
    if r.len() <= db {
        return (vec![], r);
    }
    let inv = f.inv(&b[db]);
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = f.mul(&r[top], &inv);
        q[top - db] = c;
        for j in 0..=db {
            let idx = top - db + j;
            r[idx] = f.sub(&r[idx], &f.mul(&c, &b[j]));
        }
        r.pop();
        trim(&mut r);
    }
    (trimmed(q), r)
}

pub fn rem(f: &ExtensionField, a: &[Fe], b: &[Fe]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &ExtensionField, a: &[Fe]) -> Poly {
    match degree(a) {
        None => vec![],
        Some(d) => {
            let inv = f.inv(&a[d]);
            a[..=d].iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &ExtensionField, a: &[Fe], b: &[Fe]) -> Poly {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: &ExtensionField, a: &[Fe]) -> Poly {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale(c, (i as u64 % f.p() as u64) as u32))
            .collect(),
    )
}

pub fn mulmod(f: &ExtensionField, a: &[Fe], b: &[Fe], m: &[Fe]) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &ExtensionField, a: &[Fe], mut e: u64, m: &[Fe]) -> Poly {
    let mut r = rem(f, &[f.one()], m);
    let mut b = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(f, &r, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(f, &b, &b, m);
        }
    }
    r
}

/// a^(q^j) mod m with q the field order, computed through p-th powers.
pub fn qpow_mod(f: &ExtensionField, a: &[Fe], j: usize, m: &[Fe]) -> Poly {
    let mut r = rem(f, a, m);
    for _ in 0..j * f.degree() {
        r = powmod(f, &r, f.p() as u64, m);
    }
    r
}

/// p-th root of a polynomial whose exponents are all multiples of p.
fn pth_root(f: &ExtensionField, a: &[Fe]) -> Poly {
    let p = f.p() as usize;
    let k = f.degree();
    let root = |c: &Fe| {
        // c^(1/p) = c^(p^(k-1))
        let mut r = *c;
        for _ in 1..k {
            r = f.frobenius(&r);
        }
        r
    };
    trimmed(a.iter().step_by(p).map(root).collect())
}

/// Squarefree decomposition: pairs (squarefree part, multiplicity), parts pairwise coprime.
pub fn squarefree_factorization(f: &ExtensionField, a: &[Fe]) -> Vec<(Poly, usize)> {
    let mut out = vec![];
    sff_rec(f, &monic(f, a), 1, &mut out);
    out.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| cmp_poly(&x.0, &y.0)));
    out
}

fn sff_rec(f: &ExtensionField, a: &[Fe], mult: usize, out: &mut Vec<(Poly, usize)>) {
    if degree(a).unwrap_or(0) == 0 {
        return;
    }
    let da = derivative(f, a);
    if da.is_empty() {
        sff_rec(f, &pth_root(f, a), mult * f.p() as usize, out);
        return;
    }
    let mut c = gcd(f, a, &da);
    let mut w = divrem(f, a, &c).0;
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(f, &w, &c);
        let z = divrem(f, &w, &y).0;
        if degree(&z).unwrap_or(0) > 0 {
            push_factor(out, monic(f, &z), i * mult);
        }
        w = y;
        c = divrem(f, &c, &w).0;
        i += 1;
    }
    if degree(&c).unwrap_or(0) > 0 {
        sff_rec(f, &pth_root(f, &c), mult * f.p() as usize, out);
    }
}

fn push_factor(out: &mut Vec<(Poly, usize)>, g: Poly, m: usize) {
    if let Some(e) = out.iter_mut().find(|(h, _)| *h == g) {
        e.1 += m;
    } else {
        out.push((g, m));
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial: (product of degree-d irreducibles, d).
pub fn distinct_degree_factorization(f: &ExtensionField, a: &[Fe]) -> Vec<(Poly, usize)> {
    let mut out = vec![];
    let mut rest = monic(f, a);
    let x = x_poly(f);
    let mut h = rem(f, &x, &rest);
    let mut d = 1;
    while degree(&rest).unwrap_or(0) >= 2 * d {
        h = qpow_mod(f, &h, 1, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(dr) = degree(&rest) {
        if dr > 0 {
            out.push((rest, dr));
        }
    }
    out
}

/// Split a monic squarefree product of degree-d irreducibles into its factors.
pub fn equal_degree_factorization(f: &ExtensionField, a: &[Fe], d: usize) -> Vec<Poly> {
    let n = degree(a).unwrap_or(0);
    if n == 0 {
        return vec![];
    }
    let a = monic(f, a);
    if n == d {
        return vec![a];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + (n * 31 + d) as u64);
    loop {
        let r: Poly = trimmed(
            (0..n)
                .map(|_| {
                    let mut c = [0u32; super::fq::MAX_EXT_DEGREE];
                    for slot in c.iter_mut().take(f.degree()) {
                        *slot = rng.gen_range(0..f.p());
                    }
                    Fe(c)
                })
                .collect(),
        );
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        let b = splitting_element(f, &r, d, &a);
        let g = gcd(f, &a, &b);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(f, &a, &g).0;
            let mut out = equal_degree_factorization(f, &g, d);
            out.extend(equal_degree_factorization(f, &h, d));
            return out;
        }
    }
}

/// For odd p: r^((q^d - 1)/2) - 1; for p = 2: the absolute trace of r over F_{q^d}.
fn splitting_element(f: &ExtensionField, r: &[Fe], d: usize, m: &[Fe]) -> Poly {
    let steps = f.degree() * d;
    if f.p() == 2 {
        let mut t = rem(f, r, m);
        let mut acc = t.clone();
        for _ in 1..steps {
            t = mulmod(f, &t, &t, m);
            acc = add(f, &acc, &t);
        }
        acc
    } else {
        // r^(1 + p + ... + p^(steps-1)) then ^((p-1)/2)
        let mut t = rem(f, r, m);
        let mut norm = t.clone();
        for _ in 1..steps {
            t = powmod(f, &t, f.p() as u64, m);
            norm = mulmod(f, &norm, &t, m);
        }
        let s = powmod(f, &norm, (f.p() as u64 - 1) / 2, m);
        sub(f, &s, &[f.one()])
    }
}

/// Total order on polynomials: degree, then coefficients from the top.
pub fn cmp_poly(a: &[Fe], b: &[Fe]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Complete factorization into monic irreducibles with multiplicity, canonically sorted.
pub fn factor(f: &ExtensionField, a: &[Fe]) -> Vec<(Poly, usize)> {
    let mut out = vec![];
    for (part, m) in squarefree_factorization(f, a) {
        for (prod, d) in distinct_degree_factorization(f, &part) {
            for g in equal_degree_factorization(f, &prod, d) {
                out.push((g, m));
            }
        }
    }
    out.sort_by(|x, y| cmp_poly(&x.0, &y.0).then(x.1.cmp(&y.1)));
    out
}

/// Distinct roots in the field, sorted.
pub fn roots(f: &ExtensionField, a: &[Fe]) -> Vec<Fe> {
    let a = trimmed(a.to_vec());
    let Some(n) = degree(&a) else { return vec![] };
    if n == 0 {
        return vec![];
    }
    let x = x_poly(f);
    let xq = qpow_mod(f, &x, 1, &a);
    let g = gcd(f, &a, &sub(f, &xq, &x));
    let mut out: Vec<Fe> = equal_degree_factorization(f, &g, 1)
        .into_iter()
        .map(|lin| f.neg(&lin[0]))
        .collect();
    out.sort();
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &ExtensionField, a: &[Fe]) -> bool {
    let Some(n) = degree(a) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let a = monic(f, a);
    let x = x_poly(f);
    if qpow_mod(f, &x, n, &a) != rem(f, &x, &a) {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    let mut prime_divisors = vec![];
    while m > 1 {
        if m % r == 0 {
            prime_divisors.push(r);
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    prime_divisors.into_iter().all(|r| {
        let h = qpow_mod(f, &x, n / r, &a);
        degree(&gcd(f, &a, &sub(f, &h, &x))) == Some(0)
    })
}

/// Resultant of two polynomials of their actual degrees.
pub fn resultant(f: &ExtensionField, a: &[Fe], b: &[Fe]) -> Fe {
    let mut a = trimmed(a.to_vec());
    let mut b = trimmed(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return f.zero();
    }
    let mut acc = f.one();
    loop {
        let da = degree(&a).unwrap();
        let Some(db) = degree(&b) else { return f.zero() };
        if db == 0 {
            return f.mul(&acc, &f.pow(&b[0], da as u128));
        }
        if da == 0 {
            return f.mul(&acc, &f.pow(&a[0], db as u128));
        }
        // Res(a, b) = (-1)^(da db) Res(b, a) ; Res(b, a) = lc(b)^(da - deg r) Res(b, r), r = a mod b
        let r = rem(f, &a, &b);
        let Some(dr) = degree(&r) else { return f.zero() };
        if (da * db) % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &f.pow(&b[db], (da - dr) as u128));
        a = b;
        b = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::fq::FieldTower;

    fn fp(p: u64) -> ExtensionField {
        FieldTower::get(p).unwrap().prime_field().clone()
    }

    fn from_ints(f: &ExtensionField, c: &[i64]) -> Poly {
        trimmed(c.iter().map(|&v| f.from_i64(v)).collect())
    }

    #[test]
    fn factor_small() {
        let f = fp(3);
        // x^3 + x + 1 = (x - 1)(x^2 + x + 2) over F_3
        let g = from_ints(&f, &[1, 1, 0, 1]);
        let fs = factor(&f, &g);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].0, from_ints(&f, &[2, 1]));
        assert_eq!(fs[1].0, from_ints(&f, &[2, 1, 1]));
    }

    #[test]
    fn squarefree_with_pth_powers() {
        let f = fp(2);
        // (x+1)^2 * x^3 over F_2
        let a = mul(&f, &mul(&f, &from_ints(&f, &[1, 1]), &from_ints(&f, &[1, 1])), &from_ints(&f, &[0, 0, 0, 1]));
        let fs = factor(&f, &a);
        assert_eq!(fs, vec![(from_ints(&f, &[0, 1]), 3), (from_ints(&f, &[1, 1]), 2)]);
    }

    #[test]
    fn roots_in_extension() {
        let tower = FieldTower::get(41).unwrap();
        let f2 = tower.field(2).unwrap();
        // x^2 + 163 has roots in F_41^2 since -163 is a square mod 41 anyway
        let g = from_ints(f2, &[163, 0, 1]);
        let rs = roots(f2, &g);
        assert_eq!(rs.len(), 2);
        for r in rs {
            assert!(eval(f2, &g, &r).is_zero());
        }
    }

    #[test]
    fn factor_reconstructs_product() {
        for p in [2u64, 3, 5, 41] {
            let tower = FieldTower::get(p).unwrap();
            for k in [1usize, 2] {
                let f = tower.field(k).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(p * 10 + k as u64);
                for _ in 0..20 {
                    let n = rng.gen_range(1..9);
                    let a: Poly = (0..=n)
                        .map(|i| if i == n { f.one() } else { f.element_at(rng.gen_range(0..f.order().unwrap())) })
                        .collect();
                    let fs = factor(f, &a);
                    let mut prod = vec![f.one()];
                    for (g, m) in &fs {
                        assert!(is_irreducible(f, g));
                        for _ in 0..*m {
                            prod = mul(f, &prod, g);
                        }
                    }
                    assert_eq!(prod, a);
                }
            }
        }
    }

    #[test]
    fn resultant_matches_root_product() {
        let f = fp(7);
        // a = (x-1)(x-2), b = x + 3 ; Res = b(1) b(2) = 4 * 5 = 20 = 6 mod 7
        let a = from_ints(&f, &[2, -3, 1]);
        let b = from_ints(&f, &[3, 1]);
        assert_eq!(resultant(&f, &a, &b), f.from_u32(6));
    }
}
