use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex, OnceLock};


use super::poly::{self, Poly};
use super::prime::{inv_mod, is_prime, MAX_PRIME};
use crate::error::{Error, Result};

/// Degree cap for extensions requested through the public constructor.
pub const MAX_PUBLIC_DEGREE: usize = 6;
/// Degree cap for residue fields of places created internally (intersection points).
pub const MAX_EXT_DEGREE: usize = 16;

/// An element of F_{p^k}: residue coefficients in ascending degree, unused slots zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe(pub(crate) [u32; MAX_EXT_DEGREE]);

impl Fe {
    pub const ZERO: Fe = Fe([0; MAX_EXT_DEGREE]);

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[u32; MAX_EXT_DEGREE] {
        &self.0
    }

    /// Constant coefficient; the whole value for prime-field elements.
    pub fn constant(&self) -> u32 {
        self.0[0]
    }

    /// True when the element lies in the prime field.
    pub fn is_prime_field(&self) -> bool {
        self.0[1..].iter().all(|&c| c == 0)
    }
}

impl Ord for Fe {
    /// Lexicographic on coefficients, highest degree first.
    fn cmp(&self, other: &Self) -> Ordering {
        for i in (0..MAX_EXT_DEGREE).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = (0..MAX_EXT_DEGREE).rev().find(|&i| self.0[i] != 0).unwrap_or(0);
        if top == 0 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", &self.0[..=top])
        }
    }
}

/// F_{p^k} presented as F_p[t]/(modulus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField {
    p: u32,
    k: usize,
    /// Monic, ascending, length k + 1.
    modulus: Vec<u32>,
}

impl ExtensionField {
    pub fn prime(p: u32) -> Self {
        ExtensionField { p, k: 1, modulus: vec![0, 1] }
    }

    fn with_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let k = modulus.len() - 1;
        ExtensionField { p, k, modulus }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// q = p^k when it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.k as u32)
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    #[inline]
    pub fn one(&self) -> Fe {
        self.from_u32(1)
    }

    #[inline]
    pub fn from_u32(&self, v: u32) -> Fe {
        let mut c = [0; MAX_EXT_DEGREE];
        c[0] = v % self.p;
        Fe(c)
    }

    pub fn from_i64(&self, v: i64) -> Fe {
        self.from_u32(v.rem_euclid(self.p as i64) as u32)
    }

    /// Element with the given ascending coefficients (reduced mod p); at most k of them.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.k {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.k
            )));
        }
        let mut c = [0; MAX_EXT_DEGREE];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.p;
        }
        Ok(Fe(c))
    }

    /// The class of t, a root of the modulus.
    pub fn generator(&self) -> Fe {
        if self.k == 1 {
            // t = -modulus[0] in the prime field presentation x
            return self.zero();
        }
        let mut c = [0; MAX_EXT_DEGREE];
        c[1] = 1;
        Fe(c)
    }

    /// Element with index `i` in base-p digit order (`i < q`).
    pub fn element_at(&self, mut i: u128) -> Fe {
        let mut c = [0; MAX_EXT_DEGREE];
        for slot in c.iter_mut().take(self.k) {
            *slot = (i % self.p as u128) as u32;
            i /= self.p as u128;
        }
        Fe(c)
    }

    pub fn index_of(&self, a: &Fe) -> u128 {
        let mut i = 0u128;
        for j in (0..self.k).rev() {
            i = i * self.p as u128 + a.0[j] as u128;
        }
        i
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let q = self.order().expect("field too large to enumerate");
        (0..q).map(move |i| self.element_at(i))
    }

    #[inline]
    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.k {
            let s = a.0[i] + b.0[i];
            c[i] = if s >= self.p { s - self.p } else { s };
        }
        Fe(c)
    }

    #[inline]
    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..self.k {
            c[i] = if a.0[i] >= b.0[i] { a.0[i] - b.0[i] } else { a.0[i] + self.p - b.0[i] };
        }
        Fe(c)
    }

    #[inline]
    pub fn neg(&self, a: &Fe) -> Fe {
        self.sub(&Fe::ZERO, a)
    }

    #[inline]
    pub fn scale(&self, a: &Fe, s: u32) -> Fe {
        let mut c = [0; MAX_EXT_DEGREE];
        let p = self.p as u64;
        for i in 0..self.k {
            c[i] = (a.0[i] as u64 * s as u64 % p) as u32;
        }
        Fe(c)
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p as u64;
        if self.k == 1 {
            let mut c = [0; MAX_EXT_DEGREE];
            c[0] = (a.0[0] as u64 * b.0[0] as u64 % p) as u32;
            return Fe(c);
        }
        let k = self.k;
        let mut t = [0u64; 2 * MAX_EXT_DEGREE];
        for i in 0..k {
            let ai = a.0[i] as u64;
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] += ai * b.0[j] as u64;
            }
            // keep partial sums bounded: k * p^2 < 2^64 for p < 2^20, k <= 16
        }
        for v in t.iter_mut().take(2 * k - 1) {
            *v %= p;
        }
        for i in (k..2 * k - 1).rev() {
            let lead = t[i];
            if lead == 0 {
                continue;
            }
            t[i] = 0;
            for j in 0..k {
                let m = self.modulus[j] as u64;
                if m != 0 {
                    t[i - k + j] = (t[i - k + j] + (p - m) * lead) % p;
                }
            }
        }
        let mut c = [0; MAX_EXT_DEGREE];
        for i in 0..k {
            c[i] = t[i] as u32;
        }
        Fe(c)
    }

    #[inline]
    pub fn square(&self, a: &Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Fe, mut e: u128) -> Fe {
        let mut r = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn frobenius(&self, a: &Fe) -> Fe {
        if self.k == 1 {
            return *a;
        }
        self.pow(a, self.p as u128)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero");
        if self.k == 1 {
            return self.from_u32(inv_mod(a.0[0], self.p));
        }
        // extended Euclid in F_p[t] between a and the modulus
        let p = self.p;
        let trim = |v: &mut Vec<u32>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        let mut r0: Vec<u32> = self.modulus.clone();
        let mut r1: Vec<u32> = a.0[..self.k].to_vec();
        trim(&mut r1);
        let mut s0: Vec<u32> = vec![];
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            // (q, r) = divrem(r0, r1)
            let mut r = r0.clone();
            let lead_inv = inv_mod(*r1.last().unwrap(), p);
            let dl = r1.len() - 1;
            let mut q = vec![0u32; r.len().saturating_sub(dl)];
            while r.len() > dl {
                let top = r.len() - 1;
                let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
                q[top - dl] = c;
                for (j, &b) in r1.iter().enumerate() {
                    let idx = top - dl + j;
                    r[idx] = ((r[idx] as u64 + (p - b) as u64 * c as u64) % p as u64) as u32;
                }
                trim(&mut r);
                if r.len() > top {
                    r.truncate(top);
                    trim(&mut r);
                }
            }
            // s2 = s0 - q * s1
            let mut qs = vec![0u64; q.len() + s1.len()];
            for (i, &qi) in q.iter().enumerate() {
                for (j, &sj) in s1.iter().enumerate() {
                    qs[i + j] = (qs[i + j] + qi as u64 * sj as u64) % p as u64;
                }
            }
            let mut s2 = vec![0u32; qs.len().max(s0.len())];
            for (i, slot) in s2.iter_mut().enumerate() {
                let a0 = *s0.get(i).unwrap_or(&0) as u64;
                let b0 = *qs.get(i).unwrap_or(&0);
                *slot = ((a0 + p as u64 - b0) % p as u64) as u32;
            }
            trim(&mut s2);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant
        let c = inv_mod(r0[0], p);
        let mut out = [0; MAX_EXT_DEGREE];
        for (i, &v) in s0.iter().enumerate() {
            out[i] = (v as u64 * c as u64 % p as u64) as u32;
        }
        Fe(out)
    }

    #[inline]
    pub fn div(&self, a: &Fe, b: &Fe) -> Fe {
        self.mul(a, &self.inv(b))
    }

    /// Absolute trace down to F_p.
    pub fn trace(&self, a: &Fe) -> u32 {
        let mut s = *a;
        let mut t = *a;
        for _ in 1..self.k {
            t = self.frobenius(&t);
            s = self.add(&s, &t);
        }
        s.0[0]
    }

    /// Square root if one exists.
    pub fn sqrt(&self, a: &Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(*a);
        }
        let f = vec![self.neg(a), self.zero(), self.one()];
        poly::roots(self, &f).into_iter().next()
    }
}

/// Lexicographically smallest monic irreducible of degree k over F_p (high-degree coefficient first).
fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let base = ExtensionField::prime(p);
    let mut low = vec![0u32; k];
    loop {
        let mut m = low.clone();
        m.push(1);
        let f: Poly = m.iter().map(|&c| base.from_u32(c)).collect();
        if poly::is_irreducible(&base, &f) {
            return m;
        }
        // increment with c_0 fastest
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial found");
        }
    }
}

/// All canonical extensions of one prime field, built lazily and shared.
pub struct FieldTower {
    p: u32,
    levels: Vec<OnceLock<Arc<ExtensionField>>>,
    embeddings: Vec<OnceLock<Fe>>,
}

static TOWERS: LazyLock<Mutex<HashMap<u32, Arc<FieldTower>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

impl FieldTower {
    pub fn get(p: u64) -> Result<Arc<FieldTower>> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if p >= MAX_PRIME {
            return Err(Error::FieldTooLarge { p, k: 1 });
        }
        let mut map = TOWERS.lock().unwrap();
        Ok(map
            .entry(p as u32)
            .or_insert_with(|| {
                Arc::new(FieldTower {
                    p: p as u32,
                    levels: (0..=MAX_EXT_DEGREE).map(|_| OnceLock::new()).collect(),
                    embeddings: (0..(MAX_EXT_DEGREE + 1) * (MAX_EXT_DEGREE + 1))
                        .map(|_| OnceLock::new())
                        .collect(),
                })
            })
            .clone())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn field(&self, k: usize) -> Result<&ExtensionField> {
        if k == 0 || k > MAX_EXT_DEGREE {
            return Err(Error::FieldTooLarge { p: self.p as u64, k });
        }
        Ok(self.levels[k].get_or_init(|| {
            if k == 1 {
                Arc::new(ExtensionField::prime(self.p))
            } else {
                Arc::new(ExtensionField::with_modulus(self.p, smallest_irreducible(self.p, k)))
            }
        }))
    }

    pub fn prime_field(&self) -> &ExtensionField {
        self.field(1).expect("prime field")
    }

    /// Image of the generator of F_{p^from} inside F_{p^to}; the smallest root of its modulus.
    fn generator_image(&self, from: usize, to: usize) -> Result<Fe> {
        let slot = &self.embeddings[from * (MAX_EXT_DEGREE + 1) + to];
        if let Some(v) = slot.get() {
            return Ok(*v);
        }
        let small = self.field(from)?;
        let big = self.field(to)?;
        let m: Poly = small.modulus().iter().map(|&c| big.from_u32(c)).collect();
        let mut rs = poly::roots(big, &m);
        rs.sort();
        let g = *rs.first().ok_or(Error::DegreeOutOfRange(to))?;
        Ok(*slot.get_or_init(|| g))
    }

    /// Embed an element of F_{p^from} into F_{p^to}; requires from | to.
    pub fn embed(&self, a: &Fe, from: usize, to: usize) -> Result<Fe> {
        if from == to || a.is_prime_field() {
            return Ok(*a);
        }
        if to % from != 0 {
            return Err(Error::DegreeOutOfRange(to));
        }
        let big = self.field(to)?;
        let g = self.generator_image(from, to)?;
        let mut acc = big.zero();
        for i in (0..from).rev() {
            acc = big.mul(&acc, &g);
            acc = big.add(&acc, &big.from_u32(a.0[i]));
        }
        Ok(acc)
    }

    /// Preimage of `a` under the embedding F_{p^to} -> F_{p^from}, if it lies in the subfield.
    pub fn descend(&self, a: &Fe, from: usize, to: usize) -> Result<Option<Fe>> {
        if a.is_prime_field() {
            return Ok(Some(*a));
        }
        if from == to {
            return Ok(Some(*a));
        }
        let big = self.field(from)?;
        let p = self.p;
        // columns: images of t^i, i < to
        let small = self.field(to)?;
        let mut cols = vec![];
        let mut pw = small.one();
        for _ in 0..to {
            cols.push(self.embed(&pw, to, from)?);
            pw = small.mul(&pw, &small.generator());
        }
        // solve sum x_i cols[i] = a over F_p by elimination on the augmented k x (to+1) system
        let rows = big.degree();
        let mut m: Vec<Vec<u32>> = (0..rows)
            .map(|r| {
                let mut row: Vec<u32> = cols.iter().map(|c| c.0[r]).collect();
                row.push(a.0[r]);
                row
            })
            .collect();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..to {
            let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, piv);
            let inv = inv_mod(m[r][c], p);
            for v in m[r].iter_mut() {
                *v = (*v as u64 * inv as u64 % p as u64) as u32;
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let fct = m[i][c] as u64;
                    for j in 0..=to {
                        m[i][j] = ((m[i][j] as u64 + (p as u64 - fct) * m[r][j] as u64) % p as u64) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if m[r..].iter().any(|row| row[to] != 0) {
            return Ok(None);
        }
        let mut out = [0u32; MAX_EXT_DEGREE];
        for (i, &c) in pivots.iter().enumerate() {
            out[c] = m[i][to];
        }
        Ok(Some(Fe(out)))
    }

    /// Smallest k such that the element (given in F_{p^k0}) lies in the copy of F_{p^k} inside it.
    pub fn minimal_degree(&self, a: &Fe, k0: usize) -> Result<usize> {
        let f = self.field(k0)?;
        let mut b = *a;
        for j in 1..=k0 {
            b = f.frobenius(&b);
            if b == *a {
                return Ok(j);
            }
        }
        Ok(k0)
    }
}

/// F_{p^k} with the canonical (lexicographically smallest) modulus.
pub fn build_extension(p: u64, k: usize) -> Result<Arc<ExtensionField>> {
    if !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    if k == 0 || k > MAX_PUBLIC_DEGREE {
        return Err(Error::DegreeOutOfRange(k));
    }
    let tower = FieldTower::get(p)?;
    let f = tower.field(k)?;
    Ok(Arc::new(f.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(build_extension(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(build_extension(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(build_extension(4, 2).unwrap_err(), Error::NonPrimeModulus(4));
        assert_eq!(build_extension(3, 7).unwrap_err(), Error::DegreeOutOfRange(7));
    }

    #[test]
    fn frobenius_on_f4() {
        let f = build_extension(2, 2).unwrap();
        let t = f.generator();
        let expected = f.add(&t, &f.one());
        assert_eq!(f.frobenius(&t), expected);
        let c = f.from_u32(1);
        assert_eq!(f.frobenius(&c), c);
    }

    #[test]
    fn inverse_and_order() {
        for (p, k) in [(2u64, 3usize), (3, 4), (41, 2), (7, 6)] {
            let f = build_extension(p, k).unwrap();
            let q = f.order().unwrap();
            for i in 1..q.min(400) {
                let a = f.element_at(i);
                assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
                assert_eq!(f.pow(&a, q - 1), f.one());
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let tower = FieldTower::get(3).unwrap();
        let small = tower.field(2).unwrap().clone();
        let big = tower.field(4).unwrap().clone();
        for i in 0..9 {
            for j in 0..9 {
                let a = small.element_at(i);
                let b = small.element_at(j);
                let ab = tower.embed(&small.mul(&a, &b), 2, 4).unwrap();
                let ea = tower.embed(&a, 2, 4).unwrap();
                let eb = tower.embed(&b, 2, 4).unwrap();
                assert_eq!(ab, big.mul(&ea, &eb));
                assert_eq!(
                    tower.embed(&small.add(&a, &b), 2, 4).unwrap(),
                    big.add(&ea, &eb)
                );
            }
        }
    }

    fn arb_field() -> impl Strategy<Value = (u64, usize)> {
        prop_oneof![Just((2u64, 2usize)), Just((2, 5)), Just((3, 3)), Just((41, 2)), Just((5, 6)), Just((1048573, 2))]
    }

    proptest! {
        #[test]
        fn ring_axioms((p, k) in arb_field(), xs in proptest::collection::vec(0u32..1_048_576, 18)) {
            let f = build_extension(p, k).unwrap();
            let a = f.from_coeffs(&xs[0..k]).unwrap();
            let b = f.from_coeffs(&xs[6..6 + k]).unwrap();
            let c = f.from_coeffs(&xs[12..12 + k]).unwrap();
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
            let mut x = a;
            for _ in 0..k { x = f.frobenius(&x); }
            prop_assert_eq!(x, a);
        }
    }
}
