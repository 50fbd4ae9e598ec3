use std::sync::Arc;

use crate::action::AutAction;
use crate::error::TorsorError;
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::torsor::{validate_torsor, BaseDatum, EtaleGroup, PointedTorsor, TorsorData};

/// `Γ = Π = (ℤ/p)ˣ`, the Galois group of the `p`-th cyclotomic field.
pub fn cyclotomic_base(p: usize) -> Arc<BaseDatum> {
    Arc::new(BaseDatum::over_field(Arc::new(FiniteGroup::units_mod(p))))
}

/// `μₚ` as a torsor under itself pointed at `ζ`.
pub fn build_cyclotomic(p: usize) -> Result<PointedTorsor, TorsorError> {
    build_cyclotomic_at(p, 1)
}

/// `μₚ` as a torsor under itself pointed at `ζ^point`; the unit `m` acts by `x ↦ mx`.
pub fn build_cyclotomic_at(p: usize, point: usize) -> Result<PointedTorsor, TorsorError> {
    assert!(p >= 3 && (2..p).all(|d| !p.is_multiple_of(d)), "p must be an odd prime");
    let base = cyclotomic_base(p);
    let gamma = base.gamma().clone();
    let mu = Arc::new(FiniteGroup::cyclic(p));
    // unit with id i is i + 1
    let scale = |m: usize| Perm::from_images((0..p).map(|x| m * x % p).collect());
    let maps = gamma.elements().map(|i| scale(i + 1)).collect::<Result<Vec<_>, _>>()?;
    let structure = Arc::new(EtaleGroup::new(AutAction::new(gamma.clone(), mu, maps.clone())?));
    let right = (0..p).map(|k| Perm::from_images((0..p).map(|x| (x + k) % p).collect())).collect::<Result<_, _>>()?;
    validate_torsor(TorsorData { base, structure, size: p, left: maps, right, basepoint: point })
}
