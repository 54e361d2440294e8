use crate::fields::{ExtensionField, Fe};

/// Truncated power series, exact modulo t^len.
pub fn mul(f: &ExtensionField, a: &[Fe], b: &[Fe], len: usize) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
    }
    out
}

/// Powers s^0..=s^n truncated to `len`.
pub fn powers(f: &ExtensionField, s: &[Fe], n: usize, len: usize) -> Vec<Vec<Fe>> {
    let mut one = vec![Fe::ZERO; len];
    if len > 0 {
        one[0] = f.one();
    }
    let mut out = vec![one];
    for i in 0..n {
        let next = mul(f, &out[i], s, len);
        out.push(next);
    }
    out
}

/// Index of the first nonzero coefficient.
pub fn order(s: &[Fe]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}
