use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::geometry::{frame_sign, Point, Polytope, Sign};
use crate::linalg::{add, mat_vec, Matrix};
use crate::rational::{self, Rational};

/// The affine map by which one group element carries one component onto
/// another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementMap {
    pub target: usize,
    pub matrix: Matrix,
    pub offset: Vec<Rational>,
}

impl ElementMap {
    pub fn apply(&self, p: &[Rational]) -> Point {
        add(&mat_vec(&self.matrix, p), &self.offset)
    }

    pub fn linear(&self, v: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.matrix, v)
    }
}

/// A finite group acting affinely on a disjoint union of polytopes,
/// permuting vertices.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub group: FiniteGroup,
    pub spaces: Vec<Polytope>,
    /// `maps[g][i]` moves component `i`.
    pub maps: Vec<Vec<ElementMap>>,
    /// `perms[g][i][v]` is the image of vertex `v` of component `i`, a vertex
    /// of component `maps[g][i].target`.
    pub perms: Vec<Vec<Vec<usize>>>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, spaces: Vec<Polytope>, maps: Vec<Vec<ElementMap>>) -> Result<GroupAction> {
        let n = group.order();
        let k = spaces.len();
        if maps.len() != n || maps.iter().any(|m| m.len() != k) {
            return Err(Error::InvalidAction(format!("need one map per element ({n}) and component ({k})")));
        }
        let mut perms = Vec::with_capacity(n);
        for (g, row) in maps.iter().enumerate() {
            let mut per = Vec::with_capacity(k);
            for (i, em) in row.iter().enumerate() {
                let src = &spaces[i];
                let Some(dst) = spaces.get(em.target) else {
                    return Err(Error::InvalidAction(format!("component {} out of range", em.target)));
                };
                if em.matrix.len() != dst.ambient_dim()
                    || em.matrix.iter().any(|r| r.len() != src.ambient_dim())
                    || em.offset.len() != dst.ambient_dim()
                {
                    return Err(Error::Schema(format!("element {} has a map of the wrong shape", group.names[g])));
                }
                let mut p = Vec::with_capacity(src.vertices().len());
                for v in src.vertices() {
                    let w = em.apply(v);
                    let j = dst.vertices().binary_search(&w).map_err(|_| {
                        Error::InvalidAction(format!(
                            "element {} sends vertex {:?} to {:?}, which is not a vertex",
                            group.names[g],
                            rational::format_vec(v),
                            rational::format_vec(&w)
                        ))
                    })?;
                    p.push(j);
                }
                let mut sorted = p.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != dst.vertices().len() || src.vertices().len() != dst.vertices().len() {
                    return Err(Error::InvalidAction(format!("element {} does not permute vertices", group.names[g])));
                }
                per.push(p);
            }
            perms.push(per);
        }
        let act = GroupAction { group, spaces, maps, perms };
        act.check_homomorphism()?;
        Ok(act)
    }

    fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        for i in 0..self.spaces.len() {
            if self.maps[g.identity][i].target != i || self.perms[g.identity][i].iter().enumerate().any(|(a, &b)| a != b) {
                return Err(Error::InvalidAction("identity does not act trivially".into()));
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                for i in 0..self.spaces.len() {
                    let j = self.maps[b][i].target;
                    let k = self.maps[a][j].target;
                    let direct = &self.perms[ab][i];
                    if self.maps[ab][i].target != k
                        || direct.iter().zip(&self.perms[b][i]).any(|(&d, &v)| self.perms[a][j][v] != d)
                    {
                        return Err(Error::InvalidAction(format!(
                            "action is not a homomorphism at ({}, {})",
                            g.names[a], g.names[b]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A single polytope with a linear or affine action.
    pub fn on_polytope(group: FiniteGroup, space: Polytope, maps: Vec<(Matrix, Vec<Rational>)>) -> Result<GroupAction> {
        let maps = maps.into_iter().map(|(matrix, offset)| vec![ElementMap { target: 0, matrix, offset }]).collect();
        GroupAction::new(group, vec![space], maps)
    }

    /// Image of face `face` of component `i` under element `g`, as
    /// (component, face index).
    pub fn face_image(&self, g: usize, i: usize, face: usize) -> (usize, usize) {
        let j = self.maps[g][i].target;
        let mut vs: Vec<usize> =
            self.spaces[i].lattice().face(face).vertices.iter().map(|&v| self.perms[g][i][v]).collect();
        vs.sort();
        (j, self.spaces[j].lattice().index_of(&vs).expect("vertex permutations preserve faces"))
    }

    /// Whether `g` carries the orientation `si` of component `i` to the
    /// orientation `sj` of its image.
    pub fn preserves_orientation(&self, g: usize, i: usize, si: Sign, sj: Sign) -> bool {
        let em = &self.maps[g][i];
        let src = &self.spaces[i];
        let dst = &self.spaces[em.target];
        let pushed: Matrix = src.hull().frame.iter().map(|v| em.linear(v)).collect();
        match frame_sign(dst, &pushed) {
            Ok(s) => s * si == sj,
            Err(_) => false,
        }
    }

    /// Elements fixing point `p` of component `i`.
    pub fn stabilizer(&self, i: usize, p: &[Rational]) -> Result<Vec<usize>> {
        if !self.spaces[i].contains(p) {
            return Err(Error::Precondition("point lies outside the polytope".into()));
        }
        Ok((0..self.group.order())
            .filter(|&g| self.maps[g][i].target == i && self.maps[g][i].apply(p) == p)
            .collect())
    }

    /// Matrix of the linear part of `g` on the direction space of component
    /// `i` (assumed mapped to itself), in the canonical frame.
    pub fn tangent_matrix(&self, g: usize, i: usize) -> Matrix {
        let p = &self.spaces[i];
        let em = &self.maps[g][i];
        let cols: Matrix = p.hull().frame.iter().map(|v| p.hull().coords(&em.linear(v))).collect();
        let d = cols.len();
        (0..d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn reflect_interval() -> Result<GroupAction> {
        let p = Polytope::cuboid(&[(int(-1), int(1))]).unwrap();
        GroupAction::on_polytope(
            FiniteGroup::cyclic(2),
            p,
            vec![(vec![vec![int(1)]], vec![int(0)]), (vec![vec![int(-1)]], vec![int(0)])],
        )
    }

    #[test]
    fn reflection_stabilizers() {
        let a = reflect_interval().unwrap();
        assert_eq!(a.stabilizer(0, &[int(0)]).unwrap(), vec![0, 1]);
        assert_eq!(a.stabilizer(0, &[rational::frac(1, 2)]).unwrap(), vec![0]);
        assert!(!a.preserves_orientation(1, 0, Sign::Plus, Sign::Plus));
        assert!(a.preserves_orientation(0, 0, Sign::Plus, Sign::Plus));
    }

    #[test]
    fn non_vertex_permuting_rejected() {
        let p = Polytope::cuboid(&[(int(0), int(1))]).unwrap();
        let r = GroupAction::on_polytope(
            FiniteGroup::cyclic(2),
            p,
            vec![(vec![vec![int(1)]], vec![int(0)]), (vec![vec![int(-1)]], vec![int(0)])],
        );
        assert!(matches!(r, Err(Error::InvalidAction(_))));
    }
}
