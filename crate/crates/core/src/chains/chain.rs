use super::generator::{Component, Generator};
use super::key::{canonical, Key};
use crate::error::{Error, Result};
use crate::maps::{MappedCell, TargetMap};
use crate::rational::Rational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ring {
    Q,
    Z,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Q => "Q",
            Ring::Z => "Z",
        })
    }
}

/// A canonical chain: coefficients on canonical single-component generators,
/// with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub ring: Ring,
    pub terms: BTreeMap<Key, Rational>,
}

impl Chain {
    pub fn zero(ring: Ring) -> Chain {
        Chain { ring, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_key(&mut self, key: Key, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `coeff` times a component, folding orientation into the
    /// coefficient; a component isomorphic to its own reverse is zero.
    pub fn add_component(&mut self, coeff: &Rational, c: &Component) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        let can = canonical(c)?;
        match can.sign {
            Some(s) => self.add_key(can.key, coeff * s.to_rational()),
            None if self.ring == Ring::Q => {}
            None => {
                return Err(Error::RequiresRationals(
                    "a generator with an orientation-reversing automorphism is 2-torsion over Z".into(),
                ))
            }
        }
        Ok(())
    }

    /// Adds `coeff` times a generator, splitting components and expanding a
    /// quotient into `1/|Γ|` times its cover.
    pub fn add_generator(&mut self, coeff: &Rational, g: &Generator) -> Result<()> {
        let mut c = coeff.clone();
        if let Some(act) = &g.quotient {
            if self.ring == Ring::Z {
                return Err(Error::RequiresRationals("quotient generators need 1/|Γ|".into()));
            }
            g.check_quotient()?;
            c /= Rational::from_integer(act.group.order().into());
        }
        for comp in &g.components {
            self.add_component(&c, comp)?;
        }
        Ok(())
    }

    pub fn from_generators(ring: Ring, terms: &[(Rational, Generator)]) -> Result<Chain> {
        let mut out = Chain::zero(ring);
        for (c, g) in terms {
            if ring == Ring::Z && !c.is_integer() {
                return Err(Error::Schema(format!("coefficient {c} is not an integer")));
            }
            out.add_generator(c, g)?;
        }
        Ok(out)
    }

    pub fn from_components(ring: Ring, terms: &[(Rational, Component)]) -> Result<Chain> {
        let mut out = Chain::zero(ring);
        for (c, comp) in terms {
            out.add_component(c, comp)?;
        }
        Ok(out)
    }

    pub fn single(ring: Ring, c: &Component) -> Result<Chain> {
        Chain::from_components(ring, &[(Rational::one(), c.clone())])
    }

    /// Positively oriented components with their coefficients.
    pub fn components(&self) -> Vec<(Rational, Component)> {
        self.terms.iter().map(|(k, v)| (v.clone(), k.component())).collect()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_key(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Chain {
        let mut out = Chain::zero(self.ring);
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        out
    }

    pub fn neg(&self) -> Chain {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.neg())
    }

    /// Dimensions occurring in the chain.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|k| k.dim()).collect();
        g.dedup();
        g.sort();
        g.dedup();
        g
    }

    pub fn boundary(&self) -> Result<Chain> {
        let mut out = Chain::zero(self.ring);
        for (k, v) in &self.terms {
            for f in k.component().boundary() {
                out.add_component(v, &f)?;
            }
        }
        Ok(out)
    }

    /// `h_*`: composes maps with `h`, keeping spaces and tags.
    pub fn pushforward(&self, h: &TargetMap) -> Result<Chain> {
        let mut out = Chain::zero(self.ring);
        for (k, v) in &self.terms {
            let c = k.component();
            let piece = MappedCell::new(c.piece.cell.clone(), c.piece.map.then(h)?)?;
            out.add_component(v, &Component { piece, tag: c.tag })?;
        }
        Ok(out)
    }
}

/// Automorphism group order of a component, or `Undecided` past the search
/// cap.
pub fn aut_finite(c: &Component) -> Result<usize> {
    Ok(canonical(c)?.automorphisms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Tag;
    use crate::geometry::{OrientedPolytope, Polytope, Sign};
    use crate::maps::{AffineMap, Cell, Target};
    use crate::orbifold::{ElementMap, FiniteGroup, GroupAction};
    use crate::rational::{frac, int};

    fn over_point(p: Polytope, sign: Sign) -> Component {
        let n = p.ambient_dim();
        let tag = Tag::enumerate(&p);
        Component::new(
            MappedCell::new(Cell::new(OrientedPolytope::new(p, sign), 0), AffineMap::constant(Target::point(), n, vec![]))
                .unwrap(),
            tag,
        )
        .unwrap()
    }

    fn seg(lo: i64, hi: i64) -> Polytope {
        Polytope::cuboid(&[(int(lo), int(hi))]).unwrap()
    }

    #[test]
    fn relation_one_cancels() {
        let a = over_point(seg(0, 1), Sign::Plus);
        let c = Chain::from_components(Ring::Q, &[(int(1), a.clone()), (int(1), a.reversed())]).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn relation_two_splits() {
        let a = over_point(seg(0, 1), Sign::Plus);
        let b = over_point(Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))]).unwrap(), Sign::Plus);
        let g = Generator::new(vec![a.clone(), b.clone()], None).unwrap();
        let c = Chain::from_generators(Ring::Q, &[(int(1), g)]).unwrap();
        let d = Chain::from_components(Ring::Q, &[(int(1), a), (int(1), b)]).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn interval_boundary() {
        let a = over_point(seg(0, 1), Sign::Plus);
        let c = Chain::single(Ring::Q, &a).unwrap();
        let b = c.boundary().unwrap();
        assert_eq!(b.len(), 2);
        let mut coeffs: Vec<Rational> = b.terms.values().cloned().collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![int(-1), int(1)]);
        assert!(b.boundary().unwrap().is_zero());
        assert!(Chain::zero(Ring::Q).boundary().unwrap().is_zero());
    }

    #[test]
    fn free_swap_quotient_is_one_interval() {
        let i1 = over_point(seg(0, 1), Sign::Plus);
        let i2 = over_point(seg(3, 4), Sign::Plus);
        let em = |target: usize, shift: i64| ElementMap { target, matrix: vec![vec![int(1)]], offset: vec![int(shift)] };
        let act = GroupAction::new(
            FiniteGroup::cyclic(2),
            vec![seg(0, 1), seg(3, 4)],
            vec![vec![em(0, 0), em(1, 0)], vec![em(1, 3), em(0, -3)]],
        )
        .unwrap();
        let g = Generator::new(vec![i1.clone(), i2], Some(act)).unwrap();
        let q = Chain::from_generators(Ring::Q, &[(int(1), g.clone())]).unwrap();
        assert_eq!(q, Chain::single(Ring::Q, &i1).unwrap());
        assert!(matches!(Chain::from_generators(Ring::Z, &[(int(1), g)]), Err(Error::RequiresRationals(_))));
        let half = Chain::single(Ring::Q, &i1).unwrap().scale(&frac(1, 2));
        assert_eq!(half.terms.values().next().unwrap(), &frac(1, 2));
    }

    #[test]
    fn automorphisms() {
        let a = over_point(seg(0, 1), Sign::Plus);
        assert_eq!(aut_finite(&a).unwrap(), 1);
        let sym = Component { piece: a.piece.clone(), tag: Tag::by_dimension(&seg(0, 1)) };
        assert_eq!(aut_finite(&sym).unwrap(), 2);
    }
}
