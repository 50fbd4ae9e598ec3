use std::sync::Arc;

use crate::action::{semidirect_product, AutAction, SemidirectProduct};
use crate::error::TorsorError;
use crate::group::FiniteGroup;
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::torsor::{validate_torsor, BaseDatum, EtaleGroup, PointedTorsor, TorsorData};

/// `ℤ/n ⋊ ℤ/2` with conjugation acting by `z ↦ z⁻¹`, `b ↦ ab`.
///
/// Ids follow [`semidirect_product`]: `a = (1, 0)` and `b = (0, 1)`.
pub fn dihedral_with_twist(n: usize) -> Result<(SemidirectProduct, EtaleGroup), TorsorError> {
    let gamma = Arc::new(FiniteGroup::cyclic(2));
    let rot = Arc::new(FiniteGroup::cyclic(n));
    let sd = semidirect_product(&AutAction::inversion(gamma.clone(), rot)?)?;
    let (a, b) = (sd.pair(1, 0), sd.pair(0, 1));
    let sigma = crate::action::automorphism_from_images(&sd.group, &[(a, sd.group.inv(a)), (b, sd.group.mul(a, b))])?;
    let action = AutAction::from_generator_images(gamma, sd.group.clone(), &[(1, sigma)])?;
    Ok((sd, EtaleGroup::new(action)))
}

/// Dihedral torsor over a base whose structure map factors through the algebraic
/// closure: `Π = ℤ/2` maps trivially to `Γ = ℤ/2`, the deck involution acting as
/// left multiplication by `b`.
pub fn build_abelian_cover(n: usize) -> Result<PointedTorsor, TorsorError> {
    assert!(n >= 3, "n must be at least 3");
    let gamma = Arc::new(FiniteGroup::cyclic(2));
    let base = Arc::new(BaseDatum::new(GroupHom::trivial(Arc::new(FiniteGroup::cyclic(2)), gamma)));
    let (sd, structure) = dihedral_with_twist(n)?;
    let g = sd.group.clone();
    let b = sd.pair(0, 1);
    let deck = Perm::from_images(g.elements().map(|x| g.mul(b, x)).collect())?;
    let right = g
        .elements()
        .map(|y| Perm::from_images(g.elements().map(|x| g.mul(x, y)).collect()))
        .collect::<Result<_, _>>()?;
    validate_torsor(TorsorData {
        base,
        structure: Arc::new(structure),
        size: g.order(),
        left: vec![Perm::identity(g.order()), deck],
        right,
        basepoint: g.identity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torsor::{geometric_image, is_saturated, saturation_subgroup};

    #[test]
    fn saturation_is_whole_dihedral_group() {
        for n in [3usize, 4, 5] {
            let t = build_abelian_cover(n).unwrap();
            assert!(!t.base().is_geometrically_connected());
            assert_eq!(saturation_subgroup(&t).order(), 2 * n);
            assert!(is_saturated(&t));
            assert!(!t.group().is_abelian());
            assert!(geometric_image(&t).image.is_full());
        }
    }

    #[test]
    fn twist_sends_b_to_ab() {
        let (sd, g) = dihedral_with_twist(4).unwrap();
        let (a, b) = (sd.pair(1, 0), sd.pair(0, 1));
        assert_eq!(g.act(1, b), sd.group.mul(a, b));
        assert_eq!(g.act(1, a), sd.group.inv(a));
    }
}
