use num_traits::{One, Zero};

use crate::exact::Rat;

/// Solves Σ_j x_j · cols[j] = b over Q. Returns `None` when b is outside
/// the column span; free variables are set to zero.
pub(crate) fn solve_columns(cols: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = b.len();
    let k = cols.len();
    let mut m: Vec<Vec<Rat>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r][c..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for j in c..=k {
                    let t = &f * &pivot_row[j];
                    row[j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][k].clone();
    }
    Some(x)
}

/// Rank of a set of vectors over Q.
#[allow(dead_code)]
pub(crate) fn rank(vectors: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = vectors.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = Rat::one() / &m[r][c];
        let pivot_row: Vec<Rat> = m[r].iter().map(|x| x * &inv).collect();
        for row in m.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = row[c].clone();
                for j in c..cols {
                    let t = &f * &pivot_row[j];
                    row[j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn solves_and_detects_inconsistency() {
        let cols = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(2), rat(2)]];
        let x = solve_columns(&cols, &[rat(3), rat(4), rat(7)]).unwrap();
        assert_eq!(x, vec![rat(3), rat(2)]);
        assert!(solve_columns(&cols, &[rat(1), rat(1), rat(1)]).is_none());
        assert_eq!(rank(&cols), 2);
    }
}
