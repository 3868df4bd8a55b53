use super::cochain::Cochain;
use super::ops::{cap, cup, duality, identity_cochain, pullback};
use crate::chains::Chain;
use crate::error::{Error, Result};
use crate::geometry::Sign;
use crate::maps::{Check, TargetMap};
use crate::rational::Rational;
use num_traits::One;

/// A named identity with its outcome.
pub type Named = (String, Check);

fn compare(lhs: &Chain, rhs: &Chain) -> Check {
    let diff = lhs.sub(rhs);
    if diff.is_zero() {
        Check::ok()
    } else {
        Check::fail(format!(
            "sides differ in {} generators (left has {}, right has {})",
            diff.len(),
            lhs.len(),
            rhs.len()
        ))
    }
}

fn sign_power(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn degree(c: &Cochain) -> Result<i64> {
    match c.degrees().as_slice() {
        [] => Ok(0),
        [k] => Ok(*k),
        _ => Err(Error::Precondition("identities need homogeneous cochains".into())),
    }
}

/// Supercommutativity, Leibniz rule, associativity, `d∘d = 0` and the unit
/// laws (compact targets) for a triple of cochains.
pub fn check_dga(g: &Cochain, d: &Cochain, e: &Cochain) -> Result<Vec<Named>> {
    let k = degree(g)?;
    let l = degree(d)?;
    let gd = cup(g, d)?;
    let mut out = Vec::new();
    let dg = cup(d, g)?.scale(&sign_power(k * l));
    out.push(("supercommutativity γ∪δ = (−1)^{kl} δ∪γ".to_string(), compare(&gd.chain, &dg.chain)));
    let lhs = gd.d()?;
    let rhs = cup(&g.d()?, d)?.add(&cup(g, &d.d()?)?.scale(&sign_power(k)));
    out.push(("Leibniz d(γ∪δ) = dγ∪δ + (−1)^k γ∪dδ".to_string(), compare(&lhs.chain, &rhs.chain)));
    let left = cup(&gd, e)?;
    let right = cup(g, &cup(d, e)?)?;
    out.push(("associativity (γ∪δ)∪ε = γ∪(δ∪ε)".to_string(), compare(&left.chain, &right.chain)));
    out.push(("d∘d = 0".to_string(), compare(&g.d()?.d()?.chain, &Chain::zero(g.chain.ring))));
    if g.target.is_compact() {
        let one = identity_cochain(&g.target)?;
        out.push(("identity 1∪γ = γ".to_string(), compare(&cup(&one, g)?.chain, &g.chain)));
        out.push(("identity γ∪1 = γ".to_string(), compare(&cup(g, &one)?.chain, &g.chain)));
        out.push(("d of the identity cochain is 0".to_string(), compare(&one.d()?.chain, &Chain::zero(g.chain.ring))));
    }
    Ok(out)
}

/// Module law, Leibniz rule and identity law for the cap product of a chain
/// with two cochains.
pub fn check_cap(a: &Chain, d: &Cochain, e: &Cochain) -> Result<Vec<Named>> {
    let k = match a.grades().as_slice() {
        [] => 0,
        [k] => *k as i64,
        _ => return Err(Error::Precondition("identities need a homogeneous chain".into())),
    };
    let m = d.target.dim() as i64;
    let mut out = Vec::new();
    let left = cap(&cap(a, d)?, e)?;
    let right = cap(a, &cup(d, e)?)?;
    out.push(("module law (γ∩δ)∩ε = γ∩(δ∪ε)".to_string(), compare(&left, &right)));
    let lhs = cap(a, d)?.boundary()?;
    let rhs = cap(&a.boundary()?, d)?.add(&cap(a, &d.d()?)?.scale(&sign_power(m - k)));
    out.push(("Leibniz ∂(γ∩δ) = ∂γ∩δ + (−1)^{dim Y−k} γ∩dδ".to_string(), compare(&lhs, &rhs)));
    if d.target.is_compact() {
        let one = identity_cochain(&d.target)?;
        out.push(("identity γ∩1 = γ".to_string(), compare(&cap(a, &one)?, a)));
    }
    Ok(out)
}

/// `h_*(α ∩ h^*β) = h_*(α) ∩ β`.
pub fn check_projection_formula(a: &Chain, b: &Cochain, h: &TargetMap) -> Result<Named> {
    let lhs = cap(a, &pullback(h, b)?)?.pushforward(h)?;
    let rhs = cap(&a.pushforward(h)?, b)?;
    Ok(("projection formula h_*(α∩h^*β) = h_*(α)∩β".to_string(), compare(&lhs, &rhs)))
}

/// `h^*(β∪γ) = h^*β ∪ h^*γ` and `h^* d = d h^*`.
pub fn check_pullback(b: &Cochain, g: &Cochain, h: &TargetMap) -> Result<Vec<Named>> {
    let lhs = pullback(h, &cup(b, g)?)?;
    let rhs = cup(&pullback(h, b)?, &pullback(h, g)?)?;
    let dl = pullback(h, &b.d()?)?;
    let dr = pullback(h, b)?.d()?;
    Ok(vec![
        ("pullback of cup h^*(β∪γ) = h^*β∪h^*γ".to_string(), compare(&lhs.chain, &rhs.chain)),
        ("pullback commutes with d".to_string(), compare(&dl.chain, &dr.chain)),
    ])
}

/// `∂∘Π = Π∘d` and the sign change under reversing the target orientation.
pub fn check_duality(d: &Cochain) -> Result<Vec<Named>> {
    let lhs = duality(d, Sign::Plus).boundary()?;
    let rhs = duality(&d.d()?, Sign::Plus);
    let flipped = duality(d, Sign::Minus);
    Ok(vec![
        ("duality is a chain map ∂∘Π = Π∘d".to_string(), compare(&lhs, &rhs)),
        ("reversing Y negates the image".to_string(), compare(&flipped, &duality(d, Sign::Plus).neg())),
    ])
}
