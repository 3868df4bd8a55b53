use crate::error::{Error, Result};
use crate::geometry::Polytope;
use std::collections::BTreeSet;

/// A face label: a sorted tuple of natural numbers. Products of tags merge
/// tuples, so symmetry and associativity hold on the nose.
pub type Label = Vec<u64>;

/// Reserved for the interior faces of cylinders.
pub const CYLINDER_MARK: u64 = u64::MAX;

/// Gauge (or co-gauge) tag of one component: a label for every face of its
/// polytope, indexed like the face lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag {
    pub labels: Vec<Label>,
}

impl Tag {
    pub fn new(labels: Vec<Label>) -> Tag {
        Tag { labels: labels.into_iter().map(sorted).collect() }
    }

    /// Labels `1, 2, …` in face-lattice order.
    pub fn enumerate(p: &Polytope) -> Tag {
        Tag { labels: (0..p.lattice().len()).map(|i| vec![i as u64 + 1]).collect() }
    }

    /// The empty label on every face.
    pub fn blank(p: &Polytope) -> Tag {
        Tag { labels: vec![Vec::new(); p.lattice().len()] }
    }

    /// Faces labelled by their dimension, the same on every face of a given
    /// dimension.
    pub fn by_dimension(p: &Polytope) -> Tag {
        Tag { labels: p.lattice().faces().iter().map(|f| vec![f.dim as u64]).collect() }
    }

    /// Shifts every label entry by `offset`.
    pub fn shifted(&self, offset: u64) -> Tag {
        Tag { labels: self.labels.iter().map(|l| l.iter().map(|x| x + offset).collect()).collect() }
    }

    pub fn check_shape(&self, p: &Polytope) -> Result<()> {
        if self.labels.len() != p.lattice().len() {
            return Err(Error::Schema(format!(
                "tag has {} labels but the polytope has {} faces",
                self.labels.len(),
                p.lattice().len()
            )));
        }
        if self.labels.iter().flatten().any(|&x| x == CYLINDER_MARK) {
            return Err(Error::Schema("label value 18446744073709551615 is reserved".into()));
        }
        Ok(())
    }

    /// Distinct faces must carry distinct labels.
    pub fn check_injective(&self, p: &Polytope) -> Result<()> {
        self.check_shape(p)?;
        let mut seen = BTreeSet::new();
        for (i, l) in self.labels.iter().enumerate() {
            if !seen.insert(l) {
                let j = self.labels.iter().position(|m| m == l).unwrap();
                return Err(Error::NonInjectiveTag(format!(
                    "faces {j} and {i} both carry label {l:?}"
                )));
            }
        }
        Ok(())
    }

    /// Restriction to face `face` of `p`.
    pub fn restrict(&self, p: &Polytope, face: usize) -> Tag {
        let (_, map) = p.face_polytope(face);
        Tag { labels: map.iter().map(|&g| self.labels[g].clone()).collect() }
    }

    pub fn label(&self, face: usize) -> &Label {
        &self.labels[face]
    }
}

pub fn sorted(mut l: Label) -> Label {
    l.sort();
    l
}

/// The multiset union of labels.
pub fn merge(a: &Label, b: &Label) -> Label {
    let mut l = a.clone();
    l.extend(b.iter().copied());
    sorted(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn restriction_and_injectivity() {
        let sq = Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))]).unwrap();
        let t = Tag::enumerate(&sq);
        t.check_injective(&sq).unwrap();
        let edge = sq.lattice().of_dim(1)[0];
        let r = t.restrict(&sq, edge);
        assert_eq!(r.labels.len(), 3);
        assert_eq!(r.labels[2], t.labels[edge]);
        let mut bad = t.clone();
        bad.labels[1] = bad.labels[0].clone();
        assert!(matches!(bad.check_injective(&sq), Err(Error::NonInjectiveTag(_))));
        assert_eq!(merge(&vec![3, 1], &vec![2]), vec![1, 2, 3]);
    }
}
