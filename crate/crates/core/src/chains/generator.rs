use super::tag::Tag;
use crate::error::{Error, Result};
use crate::geometry::boundary;
use crate::maps::{Cell, MappedCell};
use crate::orbifold::{ElementMap, GroupAction};
use crate::rational::Rational;
use crate::linalg::sub;

/// One connected piece of a generator: a mapped cell with a tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub piece: MappedCell,
    pub tag: Tag,
}

impl Component {
    /// Validated constructor: the tag must label every face injectively.
    pub fn new(piece: MappedCell, tag: Tag) -> Result<Component> {
        tag.check_injective(&piece.cell.body.polytope)?;
        Ok(Component { piece, tag })
    }

    pub fn dim(&self) -> usize {
        self.piece.cell.dim()
    }

    pub fn reversed(&self) -> Component {
        Component { piece: self.piece.reversed(), tag: self.tag.clone() }
    }

    /// Oriented facets with restricted maps and tags.
    pub fn boundary(&self) -> Vec<Component> {
        let p = &self.piece.cell.body.polytope;
        boundary(&self.piece.cell.body)
            .into_iter()
            .map(|bc| Component {
                piece: MappedCell { cell: Cell::new(bc.facet, self.piece.cell.circles), map: self.piece.map.clone() },
                tag: self.tag.restrict(p, bc.face),
            })
            .collect()
    }
}

/// A generator as supplied: several components, optionally with a finite
/// group acting on them (standing for the quotient).
#[derive(Debug, Clone)]
pub struct Generator {
    pub components: Vec<Component>,
    pub quotient: Option<GroupAction>,
}

impl Generator {
    pub fn single(c: Component) -> Generator {
        Generator { components: vec![c], quotient: None }
    }

    /// Validated constructor for user-supplied data.
    pub fn new(components: Vec<Component>, quotient: Option<GroupAction>) -> Result<Generator> {
        let g = Generator { components, quotient };
        g.check_tags()?;
        g.check_quotient()?;
        Ok(g)
    }

    /// Tags must be injective on each component, except that faces exchanged
    /// by the stabilizer of the component may share a label.
    pub fn check_tags(&self) -> Result<()> {
        for (i, c) in self.components.iter().enumerate() {
            let p = &c.piece.cell.body.polytope;
            c.tag.check_shape(p)?;
            let n = c.tag.labels.len();
            for f1 in 0..n {
                for f2 in f1 + 1..n {
                    if c.tag.labels[f1] != c.tag.labels[f2] {
                        continue;
                    }
                    let related = self.quotient.as_ref().is_some_and(|act| {
                        act.spaces.len() == self.components.len()
                            && (0..act.group.order())
                                .any(|g| act.maps[g][i].target == i && act.face_image(g, i, f1) == (i, f2))
                    });
                    if !related {
                        return Err(Error::NonInjectiveTag(format!(
                            "component {i}: faces {f1} and {f2} both carry label {:?}",
                            c.tag.labels[f1]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Validates the data of a quotient: the action must preserve the
    /// polytopes, orientations, maps and tags.
    pub fn check_quotient(&self) -> Result<()> {
        let Some(act) = &self.quotient else { return Ok(()) };
        if act.spaces.len() != self.components.len() {
            return Err(Error::InvalidAction("action and generator have different components".into()));
        }
        for (i, c) in self.components.iter().enumerate() {
            if act.spaces[i] != c.piece.cell.body.polytope {
                return Err(Error::InvalidAction(format!("action acts on a different polytope for component {i}")));
            }
            if c.piece.cell.circles > 0 {
                return Err(Error::Unsupported("group actions on components with circle factors".into()));
            }
        }
        for g in 0..act.group.order() {
            for (i, c) in self.components.iter().enumerate() {
                let em = &act.maps[g][i];
                let j = em.target;
                let d = &self.components[j];
                let name = &act.group.names[g];
                if !act.preserves_orientation(g, i, c.piece.cell.sign(), d.piece.cell.sign()) {
                    return Err(Error::NotInvariant(format!(
                        "element {name} reverses orientation, so the quotient is not an oriented generator"
                    )));
                }
                let tgt = &c.piece.map.target;
                for v in c.piece.cell.body.polytope.vertices() {
                    let a = c.piece.map.apply(v);
                    let b = d.piece.map.apply(&em.apply(v));
                    if !tgt.same_point(&a, &b) {
                        return Err(Error::NotInvariant(format!("element {name} does not preserve the map")));
                    }
                }
                // the lift difference must be constant, not only integral at vertices
                let p = &c.piece.cell.body.polytope;
                let base = sub(&d.piece.map.apply(&em.apply(&p.vertices()[0])), &c.piece.map.apply(&p.vertices()[0]));
                for v in p.vertices() {
                    let diff: Vec<Rational> = sub(&d.piece.map.apply(&em.apply(v)), &c.piece.map.apply(v));
                    if diff != base {
                        return Err(Error::NotInvariant(format!("element {name} does not preserve the map")));
                    }
                }
                for f in 0..p.lattice().len() {
                    let (_, gf) = act.face_image(g, i, f);
                    if c.tag.labels[f] != d.tag.labels[gf] {
                        return Err(Error::NotInvariant(format!("element {name} does not preserve the tag")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `∂` of the generator, with the induced action on the facets.
    pub fn boundary(&self) -> Result<Generator> {
        let faces: Vec<Vec<Component>> = self.components.iter().map(|c| c.boundary()).collect();
        let mut index = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            for bc in boundary(&c.piece.cell.body) {
                index.push((i, bc.face));
            }
        }
        let components: Vec<Component> = faces.into_iter().flatten().collect();
        let quotient = match &self.quotient {
            None => None,
            Some(act) => {
                let spaces = components.iter().map(|c| c.piece.cell.body.polytope.clone()).collect();
                let maps = (0..act.group.order())
                    .map(|g| {
                        index
                            .iter()
                            .map(|&(i, f)| {
                                let img = act.face_image(g, i, f);
                                let em = &act.maps[g][i];
                                ElementMap {
                                    target: index.iter().position(|x| *x == img).expect("facets go to facets"),
                                    matrix: em.matrix.clone(),
                                    offset: em.offset.clone(),
                                }
                            })
                            .collect()
                    })
                    .collect();
                Some(GroupAction::new(act.group.clone(), spaces, maps)?)
            }
        };
        Ok(Generator { components, quotient })
    }
}
