use crate::fields::prime::{inv_mod, mul_mod};

/// Row-reduces in place; returns pivot columns.
pub fn row_reduce(p: u32, m: &mut Vec<Vec<u32>>, ncols: usize) -> Vec<usize> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for v in m[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = p - row[c];
                for j in c..ncols {
                    if pivot_row[j] != 0 {
                        row[j] = ((row[j] as u64 + f as u64 * pivot_row[j] as u64) % p as u64) as u32;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel, one vector per free column in increasing order.
pub fn kernel(p: u32, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(p, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][fc]) % p;
            }
            v
        })
        .collect()
}

pub fn rank(p: u32, rows: &[Vec<u32>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(p, &mut m, ncols).len()
}
