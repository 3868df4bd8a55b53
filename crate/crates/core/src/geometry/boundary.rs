use super::orientation::{OrientedPolytope, Sign};
use super::polytope::Polytope;
use crate::error::{Error, Result};
use crate::linalg::{det, sub, Matrix};

/// Sign, against the facet's canonical frame, of the orientation induced on
/// facet `facet` of `p` (oriented by `sign`) by an outward normal first.
pub fn facet_sign(p: &Polytope, sign: Sign, facet: usize) -> Sign {
    let (f, _) = p.face_polytope(facet);
    let normal = sub(&p.centroid_of(facet), &p.centroid());
    let hull = p.hull();
    let mut m: Matrix = vec![hull.coords(&normal)];
    m.extend(f.hull().frame.iter().map(|v| hull.coords(v)));
    sign * Sign::of(&det(&m)).expect("outward normal is transverse to the facet")
}

/// A facet with its induced orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub parent: OrientedPolytope,
    /// Face index of the facet in the parent's lattice.
    pub face: usize,
    pub facet: OrientedPolytope,
}

impl BoundaryComponent {
    /// A frame of the facet which, preceded by the outward normal, is
    /// positive in the parent.
    pub fn induced_frame(&self) -> Matrix {
        self.facet.frame()
    }
}

pub fn boundary(x: &OrientedPolytope) -> Vec<BoundaryComponent> {
    let p = &x.polytope;
    if p.dim() == 0 {
        return Vec::new();
    }
    p.lattice()
        .of_dim(p.dim() - 1)
        .into_iter()
        .map(|fi| BoundaryComponent {
            parent: x.clone(),
            face: fi,
            facet: OrientedPolytope::new(p.face_polytope(fi).0.clone(), facet_sign(p, x.sign, fi)),
        })
        .collect()
}

/// A codimension-two face together with an ordered pair of facets containing
/// it; oriented as a boundary component of the first facet, which is itself
/// oriented as a boundary component of the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerComponent {
    pub parent: OrientedPolytope,
    pub face: usize,
    pub flag: (usize, usize),
    pub corner: OrientedPolytope,
}

fn corner(x: &OrientedPolytope, face: usize, flag: (usize, usize)) -> CornerComponent {
    let p = &x.polytope;
    let b1_sign = facet_sign(p, x.sign, flag.0);
    let (b1, map) = p.face_polytope(flag.0);
    let local = map.iter().position(|&g| g == face).expect("corner lies in the facet");
    let s = facet_sign(b1, b1_sign, local);
    CornerComponent {
        parent: x.clone(),
        face,
        flag,
        corner: OrientedPolytope::new(p.face_polytope(face).0.clone(), s),
    }
}

pub fn second_boundary(x: &OrientedPolytope) -> Result<Vec<CornerComponent>> {
    let p = &x.polytope;
    if p.dim() < 2 {
        return Err(Error::Precondition("second boundary needs dimension at least 2".into()));
    }
    let lat = p.lattice();
    let mut out = Vec::new();
    for f in lat.of_dim(p.dim() - 2) {
        let fs = lat.facets_containing(f);
        debug_assert_eq!(fs.len(), 2);
        out.push(corner(x, f, (fs[0], fs[1])));
        out.push(corner(x, f, (fs[1], fs[0])));
    }
    Ok(out)
}

pub fn sigma(c: &CornerComponent) -> CornerComponent {
    corner(&c.parent, c.face, (c.flag.1, c.flag.0))
}

/// Corner or g-corner type of a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerType {
    Corner,
    GCorner,
}

pub fn corner_type(p: &Polytope, face: usize) -> Result<CornerType> {
    if face >= p.lattice().len() {
        return Err(Error::NotAFace(format!("face index {face}")));
    }
    Ok(if p.is_corner(face) { CornerType::Corner } else { CornerType::GCorner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn interval() -> OrientedPolytope {
        OrientedPolytope::new(Polytope::new(1, vec![vec![int(0)], vec![int(1)]]).unwrap(), Sign::Plus)
    }

    #[test]
    fn interval_boundary_signs() {
        let b = boundary(&interval());
        assert_eq!(b.len(), 2);
        let find = |x: i64| b.iter().find(|c| c.facet.polytope.vertices()[0] == vec![int(x)]).unwrap();
        assert_eq!(find(1).facet.sign, Sign::Plus);
        assert_eq!(find(0).facet.sign, Sign::Minus);
        assert!(boundary(&OrientedPolytope::new(Polytope::point(vec![int(0)]), Sign::Plus)).is_empty());
    }

    #[test]
    fn simplex_corners_pair_off() {
        let t = Polytope::new(2, vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        let x = OrientedPolytope::new(t, Sign::Plus);
        let cs = second_boundary(&x).unwrap();
        assert_eq!(cs.len(), 6);
        for c in &cs {
            let s = sigma(c);
            assert_eq!(sigma(&s), *c);
            assert_ne!(s.flag, c.flag);
            assert_eq!(s.corner.sign, -c.corner.sign);
        }
        assert!(second_boundary(&interval()).is_err());
    }
}
