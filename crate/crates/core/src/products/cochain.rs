use crate::chains::{Chain, Component, Ring};
use crate::error::{Error, Result};
use crate::maps::Target;
use crate::rational::Rational;

/// A chain of generators whose maps are strong submersions, graded by
/// `dim Y − dim X`. The stored orientation of each term is the one induced by
/// its coorientation and the standard orientation of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub target: Target,
    pub chain: Chain,
}

impl Cochain {
    pub fn new(target: Target, chain: Chain) -> Result<Cochain> {
        for k in chain.terms.keys() {
            if k.target != target {
                return Err(Error::TargetMismatch(format!("{} vs {}", k.target, target)));
            }
            if !k.component().piece.is_submersion() {
                return Err(Error::NotSubmersion("every cochain term must map by a strong submersion".into()));
            }
        }
        Ok(Cochain { target, chain })
    }

    pub fn zero(target: Target) -> Cochain {
        Cochain { target, chain: Chain::zero(Ring::Q) }
    }

    pub fn from_components(target: Target, terms: &[(Rational, Component)]) -> Result<Cochain> {
        Cochain::new(target, Chain::from_components(Ring::Q, terms)?)
    }

    pub fn is_zero(&self) -> bool {
        self.chain.is_zero()
    }

    /// Degrees `dim Y − dim X` occurring.
    pub fn degrees(&self) -> Vec<i64> {
        let m = self.target.dim() as i64;
        let mut d: Vec<i64> = self.chain.grades().iter().map(|&g| m - g as i64).collect();
        d.sort();
        d
    }

    /// `d`: restriction to the oriented boundary.
    pub fn d(&self) -> Result<Cochain> {
        Ok(Cochain { target: self.target.clone(), chain: self.chain.boundary()? })
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain { target: self.target.clone(), chain: self.chain.add(&other.chain) }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        Cochain { target: self.target.clone(), chain: self.chain.sub(&other.chain) }
    }

    pub fn scale(&self, s: &Rational) -> Cochain {
        Cochain { target: self.target.clone(), chain: self.chain.scale(s) }
    }
}
