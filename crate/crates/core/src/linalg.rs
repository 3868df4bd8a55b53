//! Exact dense linear algebra over the rationals and the integers.

use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<Rational>>;
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose(m: &[Vec<Rational>], cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>], b_cols: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| {
                    let mut s = Rational::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() {
                            s += x * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(m: &[Vec<Rational>], cols: usize) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(m: &[Vec<Rational>], cols: usize) -> usize {
    rref(m, cols).1.len()
}

pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    d
}

/// Some solution of `a x = b`, if one exists.
pub fn solve(a: &[Vec<Rational>], cols: usize, b: &[Rational]) -> Option<Vec<Rational>> {
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, piv) = rref(&aug, cols + 1);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in r.iter().zip(&piv) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Basis of `{x : a x = 0}`.
pub fn nullspace(a: &[Vec<Rational>], cols: usize) -> Matrix {
    let (r, piv) = rref(a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<Matrix> {
    let n = m.len();
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (r, piv) = rref(&aug, 2 * n);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn to_rational(m: &[Vec<BigInt>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect()
}

/// Converts a matrix whose entries are all integers.
pub fn to_integer(m: &[Vec<Rational>]) -> Option<IntMatrix> {
    m.iter()
        .map(|r| r.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect())
        .collect()
}

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn int_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], b_cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| row.iter().enumerate().fold(BigInt::zero(), |s, (k, x)| s + x * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Inverse of a unimodular integer matrix.
pub fn int_inverse(m: &[Vec<BigInt>]) -> Option<IntMatrix> {
    inverse(&to_rational(m)).and_then(|r| to_integer(&r))
}

fn row_combine(a: &mut [Vec<BigInt>], i: usize, j: usize, f: &BigInt) {
    // row_i -= f * row_j
    if f.is_zero() {
        return;
    }
    let rj = a[j].clone();
    for (x, y) in a[i].iter_mut().zip(&rj) {
        *x -= f * y;
    }
}

fn col_combine(a: &mut [Vec<BigInt>], i: usize, j: usize, f: &BigInt) {
    // col_i -= f * col_j
    if f.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let t = f * &row[j];
        row[i] -= t;
    }
}

fn col_swap(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal with positive entries `d[0] | d[1] | ...` followed by zeros.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// The nonzero diagonal entries.
    pub diagonal: Vec<BigInt>,
}

pub fn smith(a: &[Vec<BigInt>], cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut d: IntMatrix = a.to_vec();
    let mut u = int_identity(m);
    let mut v = int_identity(n);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // pick the smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        col_swap(&mut d, t, pj);
        col_swap(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_combine(&mut d, i, t, &q);
                    row_combine(&mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        d.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_combine(&mut d, j, t, &q);
                    col_combine(&mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        col_swap(&mut d, t, j);
                        col_swap(&mut v, t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block
            let mut fix = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !d[i][j].is_multiple_of(&d[t][t]) {
                        fix = Some(i);
                        break 'scan;
                    }
                }
            }
            match fix {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_combine(&mut d, t, i, &one);
                    row_combine(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diagonal.push(d[t][t].clone());
        t += 1;
    }
    Smith { u, v, diagonal }
}

/// Row-style Hermite normal form `u * a = h`: pivots strictly increase to the
/// right, are positive, and entries above each pivot lie in `[0, pivot)`.
/// Returns `(h, u, pivot_columns)`; zero rows of `h` are kept at the bottom.
pub fn hermite_rows(a: &[Vec<BigInt>], cols: usize) -> (IntMatrix, IntMatrix, Vec<usize>) {
    let m = a.len();
    let mut h: IntMatrix = a.to_vec();
    let mut u = int_identity(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h[i][c].is_zero() && best.map_or(true, |b| h[i][c].abs() < h[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(r, b);
            u.swap(r, b);
            let mut done = true;
            for i in r + 1..m {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[r][c]);
                    row_combine(&mut h, i, r, &q);
                    row_combine(&mut u, i, r, &q);
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(r).map_or(true, |row| row[c].is_zero()) {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
            for x in u[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_combine(&mut h, i, r, &q);
            row_combine(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    (h, u, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn bi(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinant_of_permutation_and_scaling() {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(det(&m), int(-1));
        let m = vec![vec![int(2), int(1)], vec![frac(1, 2), int(3)]];
        assert_eq!(det(&m), frac(11, 2));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(7)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(is_zero_vec(&mat_vec(&a, v)));
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(solve(&a, 2, &[int(1), int(3)]).is_none());
        let x = solve(&a, 2, &[int(1), int(2)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![int(1), int(2)]);
    }

    #[test]
    fn smith_form_reconstructs() {
        let a = bi(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a, 3);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = int_mul(&int_mul(&s.u, &a, 3), &s.v, 3);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], want);
            }
        }
    }

    #[test]
    fn smith_of_rank_deficient_row() {
        let a = bi(&[&[2, -4]]);
        let s = smith(&a, 2);
        assert_eq!(s.diagonal, vec![BigInt::from(2)]);
        let d = int_mul(&int_mul(&s.u, &a, 2), &s.v, 2);
        assert_eq!(d, bi(&[&[2, 0]]));
    }

    #[test]
    fn hermite_is_canonical_for_the_lattice() {
        let a = bi(&[&[2, 3], &[4, 5]]);
        let b = bi(&[&[6, 8], &[2, 3]]); // same row lattice
        let (ha, ua, _) = hermite_rows(&a, 2);
        let (hb, _, _) = hermite_rows(&b, 2);
        assert_eq!(ha, hb);
        assert_eq!(int_mul(&ua, &a, 2), ha);
    }
}
