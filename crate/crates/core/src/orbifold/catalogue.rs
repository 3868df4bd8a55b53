use super::action::GroupAction;
use super::group::FiniteGroup;
use super::rep::VirtualRep;
use crate::error::Result;
use crate::geometry::{Point, Polytope};
use crate::linalg::Matrix;
use crate::rational::{int, Rational};

/// A linear action with a subgroup type and normal type to stratify by.
#[derive(Debug, Clone)]
pub struct StrataCase {
    pub name: String,
    pub action: GroupAction,
    pub sub: FiniteGroup,
    pub rho: VirtualRep,
}

fn m(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn linear(group: FiniteGroup, space: Polytope, mats: Vec<Matrix>) -> GroupAction {
    let a = space.ambient_dim();
    let maps = mats.into_iter().map(|x| (x, vec![Rational::from_integer(0.into()); a])).collect();
    GroupAction::on_polytope(group, space, maps).expect("catalogue actions are valid")
}

fn chars(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn rho(group: &FiniteGroup, chi: &[i64]) -> VirtualRep {
    VirtualRep::new(group.clone(), chars(chi), vec![int(0); group.order()]).expect("nontrivial character")
}

fn cube(d: usize) -> Polytope {
    Polytope::cuboid(&vec![(int(-1), int(1)); d]).expect("cube")
}

/// `[−1, 1]` with `x ↦ −x`.
pub fn reflected_interval() -> GroupAction {
    linear(FiniteGroup::cyclic(2), cube(1), vec![m(&[&[1]]), m(&[&[-1]])])
}

/// An affinely regular hexagon in lattice coordinates with rotation by a
/// third of a turn.
pub fn hexagon() -> GroupAction {
    let vs: Vec<Point> = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)].iter().map(|&(x, y)| vec![int(x), int(y)]).collect();
    let p = Polytope::new(2, vs).expect("hexagon");
    let r = m(&[&[0, -1], &[1, -1]]);
    let r2 = crate::linalg::mat_mul(&r, &r, 2);
    linear(FiniteGroup::cyclic(3), p, vec![m(&[&[1, 0], &[0, 1]]), r, r2])
}

/// The two-dimensional rotation character of `ℤ₃`.
pub fn rotation_rho() -> VirtualRep {
    rho(&FiniteGroup::cyclic(3), &[2, -1, -1])
}

fn s3_on_simplex() -> GroupAction {
    let g = FiniteGroup::s3();
    let simplex = Polytope::new(3, (0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect()).expect("simplex");
    let mats = (0..6)
        .map(|e| {
            let p: Vec<usize> = g.names[e].chars().map(|c| c.to_digit(10).expect("digit") as usize).collect();
            (0..3).map(|i| (0..3).map(|j| int((p[j] == i) as i64)).collect()).collect()
        })
        .collect();
    linear(g, simplex, mats)
}

fn flips() -> GroupAction {
    linear(
        FiniteGroup::klein_four(),
        cube(2),
        vec![m(&[&[1, 0], &[0, 1]]), m(&[&[-1, 0], &[0, 1]]), m(&[&[1, 0], &[0, -1]]), m(&[&[-1, 0], &[0, -1]])],
    )
}

fn three_cycle_on_cube() -> GroupAction {
    let c = m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let c2 = crate::linalg::mat_mul(&c, &c, 3);
    linear(FiniteGroup::cyclic(3), cube(3), vec![crate::linalg::identity(3), c, c2])
}

/// Actions of `ℤ₂`, `ℤ₃`, `S₃` and `(ℤ₂)²` with subgroup and normal types.
pub fn strata_suite() -> Result<Vec<StrataCase>> {
    let z1 = FiniteGroup::trivial();
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let k4 = FiniteGroup::klein_four();
    let s3 = FiniteGroup::s3();
    let sign = rho(&z2, &[1, -1]);
    let case = |name: &str, action: GroupAction, sub: &FiniteGroup, rho: VirtualRep| StrataCase {
        name: name.to_string(),
        action,
        sub: sub.clone(),
        rho,
    };
    let swap = linear(z2.clone(), cube(2), vec![m(&[&[1, 0], &[0, 1]]), m(&[&[0, 1], &[1, 0]])]);
    let half_flip = linear(
        z2.clone(),
        Polytope::cuboid(&[(int(-1), int(1)), (int(0), int(1))])?,
        vec![m(&[&[1, 0], &[0, 1]]), m(&[&[-1, 0], &[0, 1]])],
    );
    let point_reflection = linear(z2.clone(), cube(3), vec![crate::linalg::identity(3), m(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]])]);
    Ok(vec![
        case("Z2 reflecting [-1,1], sign", reflected_interval(), &z2, sign.clone()),
        case("Z2 reflecting [-1,1], trivial subgroup", reflected_interval(), &z1, VirtualRep::zero(z1.clone())),
        case("Z2 swapping square coordinates, sign", swap, &z2, sign.clone()),
        case("Z2 reflecting a strip, sign", half_flip, &z2, sign.clone()),
        case("Z2 point reflection of the cube, three signs", point_reflection, &z2, rho(&z2, &[3, -3])),
        case("Z3 rotating the hexagon, rotation", hexagon(), &z3, rotation_rho()),
        case("Z3 cycling cube axes, rotation", three_cycle_on_cube(), &z3, rotation_rho()),
        case("S3 permuting simplex vertices, standard", s3_on_simplex(), &s3, rho(&s3, &[2, 0, 0, -1, -1, 0])),
        case("S3 permuting simplex vertices, Z2 sign", s3_on_simplex(), &z2, sign.clone()),
        case("S3 permuting simplex vertices, Z3 rotation", s3_on_simplex(), &z3, rotation_rho()),
        case("(Z2)^2 flipping square signs, Z2 sign", flips(), &z2, sign.clone()),
        case("(Z2)^2 flipping square signs, Z2 two signs", flips(), &z2, rho(&z2, &[2, -2])),
        case("(Z2)^2 flipping square signs, whole group", flips(), &k4, rho(&k4, &[2, 0, 0, -2])),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::geometry::Sign;
    use crate::orbifold::{iota_check, iota_fibre, orbifold_stratum};

    #[test]
    fn suite_dimensions_and_fibres() {
        for c in strata_suite().unwrap() {
            let s = orbifold_stratum(&c.action, &c.sub, &c.rho).unwrap();
            assert!(!s.pieces.is_empty(), "{}", c.name);
            for p in &s.pieces {
                assert_eq!(p.polytope.dim() as i64, s.dim, "{}", c.name);
            }
            let r = iota_check(&c.action, &c.sub, &c.rho, &s).unwrap();
            assert!(r.pass, "{}: {:?}", c.name, r);
        }
    }

    #[test]
    fn documented_examples() {
        let z2 = FiniteGroup::cyclic(2);
        let sign = rho(&z2, &[1, -1]);
        let s = orbifold_stratum(&reflected_interval(), &z2, &sign).unwrap();
        assert_eq!(s.dim, 0);
        assert_eq!(s.pieces.len(), 1);
        assert_eq!(s.pieces[0].polytope.vertices(), &[vec![int(0)]]);
        assert_eq!(iota_fibre(&reflected_interval(), &z2, &sign, &[int(0)]).unwrap().cardinality, 1);
        let z1 = FiniteGroup::trivial();
        let whole = orbifold_stratum(&reflected_interval(), &z1, &VirtualRep::zero(z1.clone())).unwrap();
        assert_eq!(whole.dim, 1);
        assert_eq!(whole.pieces[0].polytope, cube(1));
        // the hexagon centre, once for each generator image
        let h = orbifold_stratum(&hexagon(), &FiniteGroup::cyclic(3), &rotation_rho()).unwrap();
        assert_eq!(h.dim, 0);
        assert_eq!(h.pieces.len(), 2);
        let signs: Vec<Sign> = h.pieces.iter().map(|p| p.orientation.unwrap()).collect();
        assert_eq!(signs, vec![Sign::Plus, Sign::Minus]);
        // sign flips: two reflections and the rotation by a half turn at the origin
        let o = [int(0), int(0)];
        assert_eq!(iota_fibre(&flips(), &z2, &sign, &o).unwrap().cardinality, 2);
        assert_eq!(iota_fibre(&flips(), &z2, &rho(&z2, &[2, -2]), &o).unwrap().cardinality, 1);
        assert!(matches!(
            crate::orbifold::piece_orientation(&reflected_interval(), &z2, &[0, 1], &s.pieces[0].polytope),
            Err(Error::EvenOrder(_))
        ));
    }
}
