//! Seeded samplers for the randomized identity suites.

use crate::chains::{Chain, Component, Ring, SingularChain, SingularSimplex, Tag};
use crate::error::Result;
use crate::geometry::{OrientedPolytope, Point, Polytope, Sign};
use crate::maps::{AffineMap, Cell, MappedCell, Target};
use crate::products::Cochain;
use crate::rational::{frac, int, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Size caps for sampled data.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub max_dim: usize,
    pub max_vertices: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { max_dim: 4, max_vertices: 10 }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
    pub caps: Caps,
    next_label: u64,
}

impl Sampler {
    pub fn new(seed: u64, caps: Caps) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), caps, next_label: 0 }
    }

    /// A sampler for instance `index` of a suite, independent of the others.
    pub fn for_instance(seed: u64, index: usize, caps: Caps) -> Sampler {
        Sampler::new(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index as u64), caps)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A small rational `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
    pub fn rational(&mut self) -> Rational {
        frac(self.rng.gen_range(-4..=4), self.rng.gen_range(1..=3))
    }

    pub fn nonzero(&mut self) -> Rational {
        loop {
            let q = self.rational();
            if q != int(0) {
                return q;
            }
        }
    }

    fn small_int(&mut self, lo: i64, hi: i64) -> Rational {
        int(self.rng.gen_range(lo..=hi))
    }

    /// A full-dimensional polytope in `ℝ^dim` with at most the vertex cap.
    pub fn polytope(&mut self, dim: usize) -> Polytope {
        if dim == 0 {
            return Polytope::point(vec![]);
        }
        loop {
            let kind = self.below(3);
            let p = match kind {
                0 if (1usize << dim) <= self.caps.max_vertices => {
                    let bounds: Vec<(Rational, Rational)> = (0..dim)
                        .map(|_| {
                            let lo = self.rng.gen_range(-2..=1);
                            (int(lo), int(lo + self.rng.gen_range(1..=2)))
                        })
                        .collect();
                    Polytope::cuboid(&bounds)
                }
                1 => {
                    let base: Point = (0..dim).map(|_| self.small_int(-2, 2)).collect();
                    let mut pts = vec![base.clone()];
                    for i in 0..dim {
                        let mut v = base.clone();
                        v[i] += self.small_int(1, 2);
                        if i + 1 < dim && self.coin() {
                            v[i + 1] += self.small_int(-1, 1);
                        }
                        pts.push(v);
                    }
                    Polytope::convex_hull(dim, pts)
                }
                _ => {
                    let n = self.rng.gen_range(dim + 1..=self.caps.max_vertices.max(dim + 1));
                    let pts: Vec<Point> = (0..n).map(|_| (0..dim).map(|_| self.small_int(0, 3)).collect()).collect();
                    Polytope::convex_hull(dim, pts)
                }
            };
            if let Ok(p) = p {
                if p.dim() == dim && p.vertices().len() <= self.caps.max_vertices {
                    return p;
                }
            }
        }
    }

    /// A polytope of dimension `dim`, sometimes placed in a larger ambient
    /// space, within the dimension cap.
    pub fn placed_polytope(&mut self, dim: usize) -> Polytope {
        let p = self.polytope(dim);
        if dim < self.caps.max_dim && self.coin() {
            let n = dim + 1;
            // (x, c·x) for an integer row c
            let row: Vec<Rational> = (0..dim).map(|_| self.small_int(-1, 1)).collect();
            let mut m: Vec<Vec<Rational>> = (0..dim).map(|i| (0..dim).map(|j| int((i == j) as i64)).collect()).collect();
            m.push(row);
            let c: Vec<Rational> = (0..n).map(|_| self.small_int(-1, 1)).collect();
            return p.affine_image(&m, &c);
        }
        p
    }

    pub fn sign(&mut self) -> Sign {
        if self.coin() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// An integer circle block of full column rank `r` in `m` rows.
    fn circle_block(&mut self, m: usize, r: usize) -> Vec<Vec<Rational>> {
        loop {
            let b: Vec<Vec<Rational>> = (0..m).map(|_| (0..r).map(|_| self.small_int(-2, 2)).collect()).collect();
            if crate::linalg::rank(&b, r) == r {
                return b;
            }
        }
    }

    /// A cell `P × T^r` with a random affine map to `y`; `r` is at most the
    /// number of circle axes.
    pub fn mapped_cell(&mut self, y: &Target, dim: usize, circles: usize) -> MappedCell {
        let p = self.placed_polytope(dim);
        let a = p.ambient_dim();
        let circ = y.circles();
        let block = self.circle_block(circ.len(), circles);
        let mut matrix = Vec::new();
        let mut offset = Vec::new();
        for i in 0..y.dim() {
            let mut row: Vec<Rational> = (0..a).map(|_| self.rational()).collect();
            match circ.iter().position(|&c| c == i) {
                Some(k) => row.extend(block[k].iter().cloned()),
                None => row.extend(std::iter::repeat(int(0)).take(circles)),
            }
            matrix.push(row);
            offset.push(self.rational());
        }
        let cell = Cell::new(OrientedPolytope::new(p, self.sign()), circles);
        MappedCell::new(cell, AffineMap::new(y.clone(), matrix, offset)).expect("sampled maps are valid")
    }

    /// A cell of random dimension at most `max_dim` and random circles.
    pub fn any_cell(&mut self, y: &Target, max_dim: usize) -> MappedCell {
        let dim = self.rng.gen_range(0..=max_dim.min(self.caps.max_dim));
        let circles = if y.circles().is_empty() || dim + 1 > self.caps.max_dim { 0 } else { self.below(2) };
        self.mapped_cell(y, dim, circles)
    }

    /// Tag with fresh labels.
    pub fn tag(&mut self, p: &Polytope) -> Tag {
        let t = Tag::enumerate(p).shifted(self.next_label);
        self.next_label += p.lattice().len() as u64;
        t
    }

    pub fn component(&mut self, mc: MappedCell) -> Component {
        let tag = self.tag(&mc.cell.body.polytope);
        Component::new(mc, tag).expect("fresh labels are injective")
    }

    /// A chain with up to `terms` terms of dimension at most `max_dim`.
    pub fn chain(&mut self, y: &Target, terms: usize, max_dim: usize) -> Result<Chain> {
        let n = self.rng.gen_range(1..=terms);
        let mut out = Chain::zero(Ring::Q);
        for _ in 0..n {
            let mc = self.any_cell(y, max_dim);
            let c = self.component(mc);
            let q = self.nonzero();
            out.add_component(&q, &c)?;
        }
        Ok(out)
    }

    /// A homogeneous chain of dimension `dim`.
    pub fn graded_chain(&mut self, y: &Target, terms: usize, dim: usize) -> Result<Chain> {
        let mut out = Chain::zero(Ring::Q);
        for _ in 0..self.rng.gen_range(1..=terms) {
            let circles = if y.circles().is_empty() || dim == 0 { 0 } else { self.below(2) };
            let mc = self.mapped_cell(y, dim - circles, circles);
            let c = self.component(mc);
            let q = self.nonzero();
            out.add_component(&q, &c)?;
        }
        Ok(out)
    }

    /// A homogeneous cochain of degree `−pdim` over a torus, built from
    /// cells `P × T^m` mapping submersively.
    pub fn cochain(&mut self, y: &Target, terms: usize, pdim: usize) -> Result<Cochain> {
        let mut chain = Chain::zero(Ring::Q);
        for _ in 0..self.rng.gen_range(1..=terms) {
            let mc = self.mapped_cell(y, pdim, y.dim());
            let c = self.component(mc);
            let q = self.nonzero();
            chain.add_component(&q, &c)?;
        }
        Cochain::new(y.clone(), chain)
    }

    /// A target among the point, the line and the circle.
    pub fn small_target(&mut self) -> Target {
        [Target::point(), Target::euclid(1), Target::torus(1)].choose(&mut self.rng).expect("nonempty").clone()
    }

    /// An affine singular chain of simplices of dimension at most `max_k`.
    pub fn singular_chain(&mut self, y: &Target, terms: usize, max_k: usize) -> SingularChain {
        (0..self.rng.gen_range(1..=terms))
            .map(|_| {
                let k = self.rng.gen_range(0..=max_k);
                let vertices = (0..=k).map(|_| (0..y.dim()).map(|_| self.rational()).collect()).collect();
                (self.nonzero(), SingularSimplex::new(y.clone(), vertices).expect("vertices in the target"))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_capped() {
        let caps = Caps::default();
        let mut a = Sampler::new(7, caps);
        let mut b = Sampler::new(7, caps);
        for d in 0..=4 {
            let p = a.placed_polytope(d.min(3));
            assert_eq!(p, b.placed_polytope(d.min(3)));
            assert!(p.vertices().len() <= 10 && p.ambient_dim() <= 4);
        }
        let y = Target::torus(1);
        let c = a.chain(&y, 5, 2).unwrap();
        assert_eq!(c, b.chain(&y, 5, 2).unwrap());
    }
}
