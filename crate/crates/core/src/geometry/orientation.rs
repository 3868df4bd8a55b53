use super::polytope::Polytope;
use crate::error::{Error, Result};
use crate::linalg::{det, rank, Matrix};
use crate::rational::Rational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::ops::{Mul, MulAssign, Neg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    /// `(-1)^n`.
    pub fn parity(n: usize) -> Sign {
        if n % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn of(q: &Rational) -> Option<Sign> {
        if q.is_positive() {
            Some(Sign::Plus)
        } else if q.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn from_int(i: i64) -> Option<Sign> {
        match i {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_rational(self) -> Rational {
        crate::rational::int(self.to_int())
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Orientation of a direction space given by an ordered basis, compared with
/// the canonical echelon frame of `p`.
pub fn frame_sign(p: &Polytope, frame: &[Vec<Rational>]) -> Result<Sign> {
    let d = p.dim();
    if frame.len() != d {
        return Err(Error::Precondition(format!("frame has {} vectors, dimension is {d}", frame.len())));
    }
    if frame.iter().any(|v| v.len() != p.ambient_dim() || !p.hull().contains_direction(v)) {
        return Err(Error::Precondition("frame vector outside the direction space".into()));
    }
    let coords: Matrix = frame.iter().map(|v| p.hull().coords(v)).collect();
    if rank(&coords, d) < d {
        return Err(Error::Precondition("frame vectors are linearly dependent".into()));
    }
    Ok(Sign::of(&det(&coords)).expect("independent frame"))
}

/// A polytope with an orientation, stored as a sign against its canonical
/// echelon frame.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrientedPolytope {
    pub polytope: Polytope,
    pub sign: Sign,
}

impl OrientedPolytope {
    pub fn new(polytope: Polytope, sign: Sign) -> Self {
        OrientedPolytope { polytope, sign }
    }

    /// Orientation given by `sign` times the orientation of `frame`.
    pub fn from_frame(polytope: Polytope, frame: &[Vec<Rational>], sign: Sign) -> Result<Self> {
        let s = frame_sign(&polytope, frame)?;
        Ok(OrientedPolytope { polytope, sign: s * sign })
    }

    pub fn reversed(&self) -> Self {
        OrientedPolytope { polytope: self.polytope.clone(), sign: -self.sign }
    }

    /// A positively oriented frame.
    pub fn frame(&self) -> Matrix {
        let mut f = self.polytope.hull().frame.clone();
        if self.sign == Sign::Minus {
            if let Some(first) = f.first_mut() {
                for x in first.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }
}

/// `+1` when both carry the same orientation of the same polytope.
pub fn orientation_equal(a: &OrientedPolytope, b: &OrientedPolytope) -> Result<Sign> {
    if a.polytope != b.polytope {
        return Err(Error::Precondition("orientations of different polytopes".into()));
    }
    Ok(a.sign * b.sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn square() -> Polytope {
        Polytope::new(2, vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)], vec![int(1), int(1)]])
            .unwrap()
    }

    #[test]
    fn swapped_and_scaled_frames() {
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        let a = OrientedPolytope::from_frame(square(), &[e1.clone(), e2.clone()], Sign::Plus).unwrap();
        let b = OrientedPolytope::from_frame(square(), &[e2.clone(), e1.clone()], Sign::Plus).unwrap();
        let c = OrientedPolytope::from_frame(square(), &[vec![int(2), int(0)], e2], Sign::Plus).unwrap();
        assert_eq!(orientation_equal(&a, &a).unwrap(), Sign::Plus);
        assert_eq!(orientation_equal(&a, &b).unwrap(), Sign::Minus);
        assert_eq!(orientation_equal(&a, &c).unwrap(), Sign::Plus);
    }

    #[test]
    fn positive_frame_round_trips() {
        let a = OrientedPolytope::new(square(), Sign::Minus);
        let f = a.frame();
        let b = OrientedPolytope::from_frame(square(), &f, Sign::Plus).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parity() {
        assert_eq!(Sign::parity(0), Sign::Plus);
        assert_eq!(Sign::parity(3), Sign::Minus);
        assert_eq!(-Sign::Plus, Sign::Minus);
    }
}
