use std::sync::Arc;

use crate::action::{semidirect_product, AutAction, SemidirectProduct};
use crate::error::{TorsorError, TwistWitness};
use crate::group::FiniteGroup;
use crate::perm::Perm;
use crate::torsor::{BaseDatum, EtaleGroup, PointedTorsor, TorsorGenerators};

/// `(ℤ/l)² ⋊ ⟨b⟩` with `b` acting by `(x, y) ↦ (x + y, y)`.
///
/// The vector `(x, y)` has id `(x·l + y)·l` and `b` has id `1`.
pub fn unipotent_group(l: usize) -> SemidirectProduct {
    let z = FiniteGroup::cyclic(l);
    let v = Arc::new(FiniteGroup::direct_product(&z, &z).expect("l² within bounds"));
    let shear = Perm::from_images((0..l * l).map(|id| ((id / l + id % l) % l) * l + id % l).collect()).unwrap();
    let act = AutAction::from_generator_images(Arc::new(z), v, &[(1, shear)]).expect("shear has order l");
    semidirect_product(&act).expect("order l³ within bounds")
}

/// `Σ_{j=1}^{l-1} j(j-1) mod l`.
pub fn heisenberg_sum(l: usize) -> usize {
    (1..l).map(|j| j * (j - 1)).sum::<usize>() % l
}

/// Torsor `G` over `Γ = Π = ℤ/l` with `σ` acting on the set by `i ↦ b·σ(i)`, where
/// `σ` fixes the vectors and sends `b` to `(0, 1)·b`.
///
/// The set-level action is checked first: `σ` acts with order `l` only when
/// `b·σ(b)⋯σ^{l-1}(b)` is trivial.
pub fn build_heisenberg(l: usize) -> Result<PointedTorsor, TorsorError> {
    assert!(l >= 2 && (2..l).all(|d| !l.is_multiple_of(d)), "l must be prime");
    let sd = unipotent_group(l);
    let g = sd.group.clone();
    let b = sd.pair(0, 1);
    let w = sd.pair(1, 0);
    let wb = g.mul(w, b);
    // σ on normal forms v·bᵏ
    let sigma = Perm::from_images(
        g.elements()
            .map(|x| {
                let (v, k) = (x / l, x % l);
                g.mul(sd.pair(v, 0), g.pow(wb, k as i64))
            })
            .collect(),
    )?;
    let left = Perm::from_images(g.elements().map(|x| g.mul(b, sigma.apply(x))).collect())?;
    let power = left.pow(l);
    if let Some(point) = (0..g.order()).find(|&p| power.apply(p) != p) {
        return Err(TorsorError::IncompatibleTwist(TwistWitness::Relation { gamma: 0, point }));
    }
    let gamma = Arc::new(FiniteGroup::cyclic(l));
    let action = AutAction::from_generator_images(gamma.clone(), g.clone(), &[(1, sigma)])?;
    let right = g
        .generators()
        .iter()
        .map(|&s| Ok((s, Perm::from_images(g.elements().map(|x| g.mul(x, s)).collect())?)))
        .collect::<Result<Vec<_>, TorsorError>>()?;
    PointedTorsor::from_generators(TorsorGenerators {
        base: Arc::new(BaseDatum::over_field(gamma)),
        structure: Arc::new(EtaleGroup::new(action)),
        size: g.order(),
        left: vec![(1, left)],
        right,
        basepoint: g.identity(),
    })
}
