//! Dense helpers for the small normal systems (l x l with l <= 10):
//! Gaussian elimination with partial pivoting, an explicit inverse for
//! the 1-norm condition estimate, and a numerical rank count.

/// Solves a x = b. Returns None when elimination meets a zero pivot.
pub(crate) fn solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut x: Vec<f64> = b.to_vec();
    for col in 0..n {
        let pivot = (col..n).max_by(|&p, &q| m[p][col].abs().total_cmp(&m[q][col].abs()))?;
        if m[pivot][col] == 0.0 {
            return None;
        }
        m.swap(col, pivot);
        x.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                let upper = m[col][k];
                m[row][k] -= factor * upper;
            }
            x[row] -= factor * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for k in col + 1..n {
            acc -= m[col][k] * x[k];
        }
        x[col] = acc / m[col][col];
    }
    Some(x)
}

pub(crate) fn inverse(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        cols.push(solve(a, &e)?);
    }
    // cols holds columns of the inverse; transpose into rows.
    let mut inv = vec![vec![0.0; n]; n];
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            inv[i][j] = v;
        }
    }
    Some(inv)
}

fn norm1(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|j| a.iter().map(|row| row[j].abs()).sum())
        .fold(0.0, f64::max)
}

/// Reciprocal 1-norm condition number; 0 when the matrix is singular or
/// contains non-finite entries.
pub(crate) fn rcond(a: &[Vec<f64>]) -> f64 {
    if a.iter().flatten().any(|v| !v.is_finite()) {
        return 0.0;
    }
    match inverse(a) {
        Some(inv) => {
            let product = norm1(a) * norm1(&inv);
            if product.is_finite() && product > 0.0 {
                1.0 / product
            } else {
                0.0
            }
        }
        None => 0.0,
    }
}

/// Numerical rank of a rectangular matrix by elimination with full
/// pivoting; entries below tol_rel times the largest initial entry count
/// as zero.
pub(crate) fn rank(rows: &[&[f64]], tol_rel: f64) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    let nrows = m.len();
    let ncols = m[0].len();
    let scale = m
        .iter()
        .flatten()
        .map(|v| v.abs())
        .fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return 0;
    }
    let threshold = tol_rel * scale;
    let mut rank = 0;
    for _ in 0..ncols.min(nrows) {
        let mut best = (rank, rank, 0.0);
        for r in rank..nrows {
            for c in 0..ncols {
                if m[r][c].abs() > best.2 {
                    best = (r, c, m[r][c].abs());
                }
            }
        }
        if best.2 <= threshold {
            break;
        }
        m.swap(rank, best.0);
        let (pr, pc) = (rank, best.1);
        for r in 0..nrows {
            if r == pr {
                continue;
            }
            let factor = m[r][pc] / m[pr][pc];
            if factor == 0.0 {
                continue;
            }
            for c in 0..ncols {
                let upper = m[pr][c];
                m[r][c] -= factor * upper;
            }
            m[r][pc] = 0.0;
        }
        rank += 1;
    }
    rank
}
