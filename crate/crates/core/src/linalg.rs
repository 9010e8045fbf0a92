//! Dense exact linear algebra over the rationals.

use num_traits::Zero;

use crate::rational::Rational;

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
pub fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in 0..rows[i].len() {
                    let d = f * rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Rank of a list of vectors of length `cols`.
pub fn rank(vectors: &[Vec<Rational>], cols: usize) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m, cols).len()
}

/// A basis of `{x : M x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); cols];
            x[f] = Rational::from_integer(1);
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f];
            }
            x
        })
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}
