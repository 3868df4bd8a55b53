//! Double description method: extreme rays of a pointed polyhedral cone
//! `{y : r_i · y >= 0}`.

use crate::linalg::{dot, inverse, rank};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct Ray {
    pub dir: Vec<Rational>,
    /// Indices of the constraints that vanish on the ray.
    pub tight: Vec<usize>,
}

/// Scales a vector to the primitive integer vector on the same ray.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Extreme rays of `{y in Q^dim : rows[i] · y >= 0}`. The rows must have rank
/// `dim` (the cone is pointed); otherwise `None`.
pub fn extreme_rays(rows: &[Vec<Rational>], dim: usize) -> Option<Vec<Ray>> {
    if rank(rows, dim) < dim {
        return None;
    }
    if dim == 0 {
        return Some(Vec::new());
    }
    // greedy choice of an initial basis of constraints
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut cand: Vec<Vec<Rational>> = basis.iter().map(|&b| rows[b].clone()).collect();
        cand.push(rows[i].clone());
        if rank(&cand, dim) == cand.len() {
            basis.push(i);
            if basis.len() == dim {
                break;
            }
        }
    }
    let b: Vec<Vec<Rational>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let inv = inverse(&b)?;
    // columns of the inverse are the initial rays
    let mut rays: Vec<(Vec<Rational>, Vec<bool>)> = (0..dim)
        .map(|j| {
            let dir: Vec<Rational> = (0..dim).map(|i| inv[i][j].clone()).collect();
            (primitive(&dir), Vec::new())
        })
        .collect();
    let mut processed: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = basis.clone();
    order.extend((0..rows.len()).filter(|i| !basis.contains(i)));
    for (step, &ci) in order.iter().enumerate() {
        if step < dim {
            for (dir, tight) in rays.iter_mut() {
                tight.push(dot(&rows[ci], dir).is_zero());
            }
            processed.push(ci);
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|(d, _)| dot(&rows[ci], d)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut next: Vec<(Vec<Rational>, Vec<bool>)> = Vec::new();
        for k in 0..rays.len() {
            if !vals[k].is_negative() {
                let (d, mut t) = rays[k].clone();
                t.push(vals[k].is_zero());
                next.push((d, t));
            }
        }
        let need = dim.saturating_sub(2);
        for &p in &pos {
            for &n in &neg {
                let common: Vec<usize> = (0..processed.len())
                    .filter(|&c| rays[p].1[c] && rays[n].1[c])
                    .collect();
                if common.len() < need {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|k| {
                    k == p || k == n || !common.iter().all(|&c| rays[k].1[c])
                });
                if !adjacent {
                    continue;
                }
                let sp = &vals[p];
                let sn = &vals[n];
                let dir: Vec<Rational> = rays[n]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(yn, yp)| sp * yn - sn * yp)
                    .collect();
                let mut t: Vec<bool> = (0..processed.len()).map(|c| common.contains(&c)).collect();
                t.push(true);
                next.push((primitive(&dir), t));
            }
        }
        rays = next;
        processed.push(ci);
    }
    let mut out: Vec<Ray> = rays
        .into_iter()
        .map(|(dir, t)| {
            let mut tight: Vec<usize> =
                processed.iter().zip(&t).filter(|(_, &b)| b).map(|(&i, _)| i).collect();
            tight.sort_unstable();
            Ray { dir, tight }
        })
        .collect();
    out.sort_by(|a, b| a.dir.cmp(&b.dir));
    out.dedup_by(|a, b| a.dir == b.dir);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn square_cone_has_four_rays() {
        // cone over the square [0,1]^2: rows (t, 1) for the four vertices
        let pts = [(0, 0), (1, 0), (0, 1), (1, 1)];
        let rows: Vec<Vec<Rational>> =
            pts.iter().map(|&(x, y)| vec![int(x), int(y), int(1)]).collect();
        let rays = extreme_rays(&rows, 3).unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert_eq!(r.tight.len(), 2);
        }
    }

    #[test]
    fn interior_point_is_never_tight_alone() {
        let pts = [(0, 0), (2, 0), (0, 2), (1, 0), (1, 1), (0, 1)];
        let rows: Vec<Vec<Rational>> =
            pts.iter().map(|&(x, y)| vec![int(x), int(y), int(1)]).collect();
        let rays = extreme_rays(&rows, 3).unwrap();
        assert_eq!(rays.len(), 3);
        for r in &rays {
            assert_eq!(r.tight.len(), 3);
        }
    }
}
