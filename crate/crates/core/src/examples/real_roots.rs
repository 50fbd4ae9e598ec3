use std::sync::Arc;

use crate::action::AutAction;
use crate::error::{SystemError, TorsorError};
use crate::group::FiniteGroup;
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::systems::{InverseSystem, TorsorCatalog};
use crate::torsor::{validate_torsor, BaseDatum, EtaleGroup, PointedTorsor, TorsorData};

/// `Γ = Π = ℤ/2`, complex conjugation over the reals.
pub fn real_base() -> Arc<BaseDatum> {
    Arc::new(BaseDatum::over_field(Arc::new(FiniteGroup::cyclic(2))))
}

/// Character `Γ → ℤ/2` under which conjugation inverts roots of unity.
pub fn real_sign() -> GroupHom {
    GroupHom::identity(Arc::new(FiniteGroup::cyclic(2)))
}

/// The `n`-th roots of `-1` as a torsor under `μₙ`.
///
/// Point `j` is the root `exp((2j+1)πi/n)`; `ζᵏ` shifts `j` by `k`, conjugation sends
/// `j` to `n-1-j`. The basepoint is `j = n-1`, the root `exp((2n-1)πi/n)`.
pub fn build_real_roots(n: usize) -> Result<PointedTorsor, TorsorError> {
    assert!(n >= 1, "n must be positive");
    let base = real_base();
    let gamma = base.gamma().clone();
    let mu = Arc::new(FiniteGroup::cyclic(n));
    let structure = Arc::new(EtaleGroup::new(AutAction::inversion(gamma, mu)?));
    let conj = Perm::from_images((0..n).map(|j| n - 1 - j).collect())?;
    let left = vec![Perm::identity(n), conj];
    let right = (0..n).map(|k| Perm::from_images((0..n).map(|j| (j + k) % n).collect())).collect::<Result<_, _>>()?;
    validate_torsor(TorsorData { base, structure, size: n, left, right, basepoint: n - 1 })
}

pub fn real_catalog(bound: usize) -> Result<TorsorCatalog, SystemError> {
    TorsorCatalog::cyclic_with_inversion(real_base(), bound, &real_sign())
}

pub fn real_system(bound: usize) -> Result<InverseSystem, SystemError> {
    InverseSystem::from_catalog(&real_catalog(bound)?)
}
