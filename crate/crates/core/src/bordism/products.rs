use super::class::{BordismClass, Gluing, Kind};
use crate::error::{Error, Result};
use crate::maps::{fibre_product, FibreComponent, MappedCell};
use crate::rational::{fract, Rational};
use num_traits::Zero;

/// `[X, f] ∪ [X̃, f̃] = [X ×_Y X̃, π_Y]` on cobordism classes.
pub fn cup(a: &BordismClass, b: &BordismClass) -> Result<BordismClass> {
    if a.kind != Kind::Cobordism || b.kind != Kind::Cobordism {
        return Err(Error::Precondition("cup takes two cobordism classes".into()));
    }
    product(a, b, Kind::Cobordism)
}

/// `[X, f] ∩ [X̃, f̃] = [X ×_Y X̃, π_Y]`, a bordism class capped with a
/// cobordism class.
pub fn cap(a: &BordismClass, b: &BordismClass) -> Result<BordismClass> {
    if a.kind != Kind::Bordism || b.kind != Kind::Cobordism {
        return Err(Error::Precondition("cap takes a bordism class and a cobordism class".into()));
    }
    product(a, b, Kind::Bordism)
}

struct Piece {
    i: usize,
    j: usize,
    fc: FibreComponent,
}

fn embedded_vertices(fc: &FibreComponent, face: usize) -> Vec<Vec<Rational>> {
    let p = &fc.piece.cell.body.polytope;
    let r = fc.piece.cell.circles;
    p.lattice()
        .face(face)
        .vertices
        .iter()
        .map(|&v| {
            let mut q = p.vertices()[v].clone();
            q.extend(std::iter::repeat(Rational::zero()).take(r));
            fc.embedding.apply(&q)
        })
        .collect()
}

/// Exact agreement on polytope coordinates, agreement modulo one on circle
/// coordinates.
fn same(x: &[Rational], y: &[Rational], circle: &[bool]) -> bool {
    x.iter().zip(y).zip(circle).all(|((a, b), &c)| if c { fract(&(a - b)).is_zero() } else { a == b })
}

fn product(a: &BordismClass, b: &BordismClass, kind: Kind) -> Result<BordismClass> {
    a.require_closed()?;
    b.require_closed()?;
    if let (Some(s), Some(t)) = (a.target(), b.target()) {
        if s != t {
            return Err(Error::TargetMismatch(format!("{s} vs {t}")));
        }
    }
    let mut pieces = Vec::new();
    for (i, x) in a.components.iter().enumerate() {
        for (j, y) in b.components.iter().enumerate() {
            for fc in fibre_product(x, y)? {
                pieces.push(Piece { i, j, fc });
            }
        }
    }
    let mut gluings = Vec::new();
    for (ci, pc) in pieces.iter().enumerate() {
        let (x, y) = (&a.components[pc.i], &b.components[pc.j]);
        let (n1, r1) = (x.cell.ambient(), x.cell.circles);
        let (n2, r2) = (y.cell.ambient(), y.cell.circles);
        let mut circle = vec![false; n1];
        circle.extend(vec![true; r1]);
        circle.extend(vec![false; n2]);
        circle.extend(vec![true; r2]);
        let (top1, top2) = (x.cell.body.polytope.lattice().top(), y.cell.body.polytope.lattice().top());
        let p = &pc.fc.piece.cell.body.polytope;
        if p.dim() == 0 {
            continue;
        }
        for f in p.lattice().of_dim(p.dim() - 1) {
            let (f1, f2) = pc.fc.provenance[f];
            let (first, g) = if f2 == top2 && f1 != top1 {
                (true, a.gluing_of((pc.i, f1)))
            } else if f1 == top1 && f2 != top2 {
                (false, b.gluing_of((pc.j, f2)))
            } else {
                return Err(Error::Unsupported("a facet of the fibre product meets facets of both factors".into()));
            };
            let g = g.expect("closed classes glue every facet");
            let (id, range) = if first {
                (a.identification(&g)?, 0..n1)
            } else {
                (b.identification(&g)?, n1 + r1..n1 + r1 + n2)
            };
            let moved: Vec<Vec<Rational>> = embedded_vertices(&pc.fc, f)
                .into_iter()
                .map(|mut e| {
                    let img = id.apply(&e[range.clone()]);
                    e.splice(range.clone(), img);
                    e
                })
                .collect();
            let (oi, oj) = if first { (g.b.0, pc.j) } else { (pc.i, g.b.0) };
            let want = if first { (g.b.1, top2) } else { (top1, g.b.1) };
            let mut found = None;
            'search: for (cj, other) in pieces.iter().enumerate() {
                if (other.i, other.j) != (oi, oj) {
                    continue;
                }
                let q = &other.fc.piece.cell.body.polytope;
                for f2 in q.lattice().of_dim(q.dim() - 1) {
                    if other.fc.provenance[f2] != want {
                        continue;
                    }
                    let there = embedded_vertices(&other.fc, f2);
                    let image: Option<Vec<usize>> = moved
                        .iter()
                        .map(|m| there.iter().position(|t| same(m, t, &circle)).map(|k| q.lattice().face(f2).vertices[k]))
                        .collect();
                    if let Some(image) = image {
                        found = Some(Gluing { a: (ci, f), b: (cj, f2), image });
                        break 'search;
                    }
                }
            }
            let g = found.ok_or_else(|| {
                Error::Unsupported("could not match a facet of the fibre product with its partner".into())
            })?;
            if (g.a.0, g.a.1) < (g.b.0, g.b.1) {
                gluings.push(g);
            }
        }
    }
    let components: Vec<MappedCell> = pieces.into_iter().map(|p| p.fc.piece).collect();
    let out = BordismClass { kind, components, gluings };
    if let Some(w) = out.check_closed()?.witness {
        return Err(Error::Precondition(format!("the product of closed classes failed to close up: {w}")));
    }
    Ok(out)
}
