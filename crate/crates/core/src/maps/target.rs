use crate::error::{Error, Result};
use crate::linalg::{add, mat_mul, mat_vec, rank, Matrix};
use crate::rational::{fract, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// One coordinate of a target: a real line or a circle `ℝ/ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    Line,
    Circle,
}

/// A boundaryless flat target, a product of lines and circles in a fixed
/// coordinate order, oriented by that order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Target {
    pub axes: Vec<Axis>,
}

impl Target {
    pub fn point() -> Target {
        Target { axes: Vec::new() }
    }

    pub fn euclid(m: usize) -> Target {
        Target { axes: vec![Axis::Line; m] }
    }

    pub fn torus(m: usize) -> Target {
        Target { axes: vec![Axis::Circle; m] }
    }

    pub fn product(&self, other: &Target) -> Target {
        let mut axes = self.axes.clone();
        axes.extend(other.axes.iter().copied());
        Target { axes }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn is_compact(&self) -> bool {
        self.axes.iter().all(|a| *a == Axis::Circle)
    }

    pub fn lines(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.axes[i] == Axis::Line).collect()
    }

    pub fn circles(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.axes[i] == Axis::Circle).collect()
    }

    /// Representative of a point: circle coordinates reduced into `[0, 1)`.
    pub fn normalize(&self, y: &[Rational]) -> Vec<Rational> {
        y.iter()
            .zip(&self.axes)
            .map(|(v, a)| if *a == Axis::Circle { fract(v) } else { v.clone() })
            .collect()
    }

    /// Whether two lifts name the same point.
    pub fn same_point(&self, a: &[Rational], b: &[Rational]) -> bool {
        self.normalize(a) == self.normalize(b)
    }

    pub fn kind_name(&self) -> &'static str {
        if self.axes.is_empty() {
            "point"
        } else if self.axes.iter().all(|a| *a == Axis::Line) {
            "euclid"
        } else if self.axes.iter().all(|a| *a == Axis::Circle) {
            "torus"
        } else {
            "product"
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind_name() {
            "point" => write!(f, "Point"),
            "euclid" => write!(f, "Euclid({})", self.dim()),
            "torus" => write!(f, "Torus({})", self.dim()),
            _ => {
                let s: String = self.axes.iter().map(|a| if *a == Axis::Line { 'R' } else { 'S' }).collect();
                write!(f, "Product({s})")
            }
        }
    }
}

/// An affine map between targets, given on lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetMap {
    pub source: Target,
    pub target: Target,
    pub matrix: Matrix,
    pub offset: Vec<Rational>,
}

impl TargetMap {
    pub fn new(source: Target, target: Target, matrix: Matrix, offset: Vec<Rational>) -> Result<TargetMap> {
        let h = TargetMap { source, target, matrix, offset };
        h.validate()?;
        Ok(h)
    }

    pub fn identity(y: &Target) -> TargetMap {
        TargetMap {
            source: y.clone(),
            target: y.clone(),
            matrix: crate::linalg::identity(y.dim()),
            offset: vec![Rational::zero(); y.dim()],
        }
    }

    /// The map to the point.
    pub fn collapse(y: &Target) -> TargetMap {
        TargetMap { source: y.clone(), target: Target::point(), matrix: Vec::new(), offset: Vec::new() }
    }

    fn validate(&self) -> Result<()> {
        let (m, n) = (self.target.dim(), self.source.dim());
        if self.matrix.len() != m || self.matrix.iter().any(|r| r.len() != n) || self.offset.len() != m {
            return Err(Error::Schema(format!("target map must be {m}x{n} with offset of length {m}")));
        }
        for i in 0..m {
            for &j in &self.source.circles() {
                let x = &self.matrix[i][j];
                match self.target.axes[i] {
                    Axis::Line if !x.is_zero() => {
                        return Err(Error::InvalidMap("a circle cannot map non-constantly to a line".into()))
                    }
                    Axis::Circle if !x.is_integer() => {
                        return Err(Error::InvalidMap("circle-to-circle entries must be integers".into()))
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        add(&mat_vec(&self.matrix, y), &self.offset)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &TargetMap) -> Result<TargetMap> {
        if inner.target != self.source {
            return Err(Error::TargetMismatch(format!("{} vs {}", inner.target, self.source)));
        }
        let matrix = mat_mul(&self.matrix, &inner.matrix, inner.source.dim());
        let offset = self.apply(&inner.offset);
        TargetMap::new(inner.source.clone(), self.target.clone(), matrix, offset)
    }

    /// Preimages of compact sets are compact.
    pub fn is_proper(&self) -> bool {
        let lines = self.source.lines();
        if lines.is_empty() {
            return true;
        }
        // the line directions must inject into the line axes of the target
        let cols: Matrix = self
            .target
            .lines()
            .iter()
            .map(|&i| lines.iter().map(|&j| self.matrix[i][j].clone()).collect())
            .collect();
        rank(&cols, lines.len()) == lines.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn torus_points_compare_mod_one() {
        let t = Target::torus(2);
        assert!(t.same_point(&[frac(1, 3), int(2)], &[frac(-2, 3), int(0)]));
        assert!(!Target::euclid(1).same_point(&[int(1)], &[int(0)]));
    }

    #[test]
    fn invalid_circle_maps_rejected() {
        let bad = TargetMap::new(Target::torus(1), Target::euclid(1), vec![vec![int(1)]], vec![int(0)]);
        assert!(bad.is_err());
        let bad = TargetMap::new(Target::torus(1), Target::torus(1), vec![vec![frac(1, 2)]], vec![int(0)]);
        assert!(bad.is_err());
        let ok = TargetMap::new(Target::torus(1), Target::torus(1), vec![vec![int(2)]], vec![int(0)]);
        assert!(ok.is_ok());
    }

    #[test]
    fn properness() {
        assert!(TargetMap::collapse(&Target::torus(1)).is_proper());
        assert!(!TargetMap::collapse(&Target::euclid(1)).is_proper());
        let wrap = TargetMap::new(Target::euclid(1), Target::torus(1), vec![vec![int(1)]], vec![int(0)]).unwrap();
        assert!(!wrap.is_proper());
    }
}
