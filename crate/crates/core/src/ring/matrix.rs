//! Dense matrices over a commutative base ring, stored as row-major
//! vectors of base indices. Entry `k` is digit `k` (least significant
//! first) of the matrix's element index.

use super::Ring;

pub fn decode(mut x: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(x % radix);
        x /= radix;
    }
    d
}

pub fn encode(digits: &[usize], radix: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

pub fn mat_mul(base: &Ring, n: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let y = b[k * n + j];
                if y != 0 {
                    out[i * n + j] = base.add_idx(out[i * n + j], base.mul_idx(x, y));
                }
            }
        }
    }
    out
}

pub fn expand_triangular(digits: &[usize], n: usize, slots: &[(usize, usize)]) -> Vec<usize> {
    let mut m = vec![0usize; n * n];
    for (&d, &(i, j)) in digits.iter().zip(slots) {
        m[i * n + j] = d;
    }
    m
}

pub fn compress_triangular(m: &[usize], n: usize, slots: &[(usize, usize)]) -> Vec<usize> {
    slots.iter().map(|&(i, j)| m[i * n + j]).collect()
}

/// Determinant of the submatrix on rows `row..n` and the columns in
/// `cols`, by cofactor expansion memoized over column subsets. Division
/// free, so valid over any commutative ring.
fn det_rows(base: &Ring, n: usize, a: &[usize], rows: &[usize], memo: &mut Vec<Option<usize>>, cols: u32) -> usize {
    let depth = n - cols.count_ones() as usize;
    if depth == rows.len() {
        return base.one_idx();
    }
    if let Some(v) = memo[cols as usize] {
        return v;
    }
    let r = rows[depth];
    let mut acc = 0usize;
    let mut sign_neg = false;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = a[r * n + c];
        if entry != 0 {
            let minor = det_rows(base, n, a, rows, memo, cols & !(1 << c));
            let term = base.mul_idx(entry, minor);
            acc = if sign_neg { base.sub_idx(acc, term) } else { base.add_idx(acc, term) };
        }
        sign_neg = !sign_neg;
    }
    memo[cols as usize] = Some(acc);
    acc
}

pub fn determinant(base: &Ring, n: usize, a: &[usize]) -> usize {
    let rows: Vec<usize> = (0..n).collect();
    let mut memo = vec![None; 1 << n];
    det_rows(base, n, a, &rows, &mut memo, (1u32 << n) - 1)
}

fn minor(n: usize, a: &[usize], skip_r: usize, skip_c: usize) -> Vec<usize> {
    let mut m = Vec::with_capacity((n - 1) * (n - 1));
    for i in (0..n).filter(|&i| i != skip_r) {
        for j in (0..n).filter(|&j| j != skip_c) {
            m.push(a[i * n + j]);
        }
    }
    m
}

pub fn adjugate(base: &Ring, n: usize, a: &[usize]) -> Vec<usize> {
    if n == 1 {
        return vec![base.one_idx()];
    }
    let mut adj = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            let d = determinant(base, n - 1, &minor(n, a, i, j));
            // adj[j][i] = (-1)^{i+j} det(minor_ij)
            adj[j * n + i] = if (i + j) % 2 == 1 { base.neg_idx(d) } else { d };
        }
    }
    adj
}

/// Inverse via `det⁻¹ · adj`, defined exactly when the determinant is a
/// unit of the commutative base.
pub fn inverse_by_determinant(base: &Ring, n: usize, a: &[usize]) -> Option<Vec<usize>> {
    let det = determinant(base, n, a);
    let dinv = base.inverse_idx(det)?;
    Some(adjugate(base, n, a).into_iter().map(|x| base.mul_idx(dinv, x)).collect())
}

/// Gauss–Jordan inverse; `base` must be a field.
pub fn inverse_by_row_reduction(base: &Ring, n: usize, a: &[usize]) -> Option<Vec<usize>> {
    let w = 2 * n;
    let mut m = vec![0usize; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..i * n + n]);
        m[i * w + n + i] = base.one_idx();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r * w + col] != 0)?;
        if pivot != col {
            for k in 0..w {
                m.swap(pivot * w + k, col * w + k);
            }
        }
        let inv = base.inverse_idx(m[col * w + col])?;
        for k in 0..w {
            m[col * w + k] = base.mul_idx(inv, m[col * w + k]);
        }
        for r in 0..n {
            let f = m[r * w + col];
            if r == col || f == 0 {
                continue;
            }
            for k in 0..w {
                let t = base.mul_idx(f, m[col * w + k]);
                m[r * w + k] = base.sub_idx(m[r * w + k], t);
            }
        }
    }
    Some((0..n).flat_map(|i| m[i * w + n..i * w + w].to_vec()).collect())
}

/// Rank over a field base.
pub fn rank_over_field(base: &Ring, rows: usize, cols: usize, a: &[usize]) -> usize {
    let mut m = a.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for k in 0..cols {
            m.swap(pivot * cols + k, rank * cols + k);
        }
        let inv = base.inverse_idx(m[rank * cols + col]).expect("nonzero field element");
        for r in (rank + 1)..rows {
            let f = base.mul_idx(m[r * cols + col], inv);
            if f == 0 {
                continue;
            }
            for k in 0..cols {
                let t = base.mul_idx(f, m[rank * cols + k]);
                m[r * cols + k] = base.sub_idx(m[r * cols + k], t);
            }
        }
        rank += 1;
    }
    rank
}

pub fn pretty(base: &Ring, n: usize, a: &[usize]) -> String {
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let cells: Vec<String> = (0..n).map(|j| base.pretty_idx(a[i * n + j])).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}
