//! Hermite normal form of integer row lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form: returns the nonzero rows of the HNF of the
/// lattice spanned by `rows`. Pivots are positive, strictly increasing in
/// column, and entries above a pivot are reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(ncols) = rows.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        loop {
            // Row with the smallest nonzero |entry| in column c moves to r.
            let best = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(best) = best else { break };
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pivot_row = m[r].clone();
            for i in 0..r {
                let q = m[i][c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * p;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// Integer coordinates of `v` in an HNF basis, or `None` if `v` is not in
/// the lattice.
pub fn lattice_coordinates(hnf: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(hnf.len());
    for row in hnf {
        let c = row.iter().position(|x| !x.is_zero())?;
        let (q, rem) = rest[c].div_rem(&row[c]);
        if !rem.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &q * b;
        }
        coords.push(q);
    }
    rest.iter().all(|x| x.is_zero()).then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn c2_root_lattice() {
        // ±e1±e2, ±2e1, ±2e2 span the lattice {(a,b): a+b even}.
        let roots = rows(&[&[1, 1], &[1, -1], &[2, 0], &[0, 2], &[-1, -1]]);
        let h = hermite_normal_form(&roots);
        assert_eq!(h, rows(&[&[1, 1], &[0, 2]]));
        let c = lattice_coordinates(&h, &rows(&[&[2, 0]])[0]).unwrap();
        assert_eq!(c, vec![BigInt::from(2), BigInt::from(-1)]);
        assert!(lattice_coordinates(&h, &rows(&[&[1, 0]])[0]).is_none());
    }

    #[test]
    fn rank_deficient_input() {
        let h = hermite_normal_form(&rows(&[&[2, 4], &[3, 6], &[0, 0]]));
        assert_eq!(h, rows(&[&[1, 2]]));
    }
}
