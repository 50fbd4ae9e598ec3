use std::sync::Arc;

use crate::action::AutAction;
use crate::error::{GroupError, TorsorError};
use crate::group::{FiniteGroup, MAX_ORDER};
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::subgroup::Subgroup;
use crate::Elem;

use super::{EtaleGroup, GaloisContext};

/// `Ind_{Γ′}^{Γ} G`: maps `f: Γ → G` with `f(δγ) = δ·f(γ)` for `δ ∈ Γ′`.
#[derive(Clone, Debug)]
pub struct InducedGroup {
    pub group: Arc<EtaleGroup>,
    /// Evaluation at the identity, onto `G`.
    pub counit: GroupHom,
    /// Minimal element of each right coset `Γ′γ`; an element is the tuple of values there.
    pub coset_representatives: Vec<Elem>,
}

/// Induction of an étale group along `Γ′ ≤ Γ`, whose `Γ′` is `sub.to_group()`.
pub fn induce_group(context: &GaloisContext, sub: &Subgroup, g: &EtaleGroup) -> Result<InducedGroup, TorsorError> {
    let gamma = context.gamma();
    if **sub.parent() != **gamma {
        return Err(TorsorError::Group(GroupError::NotSubgroup("not a subgroup of the Galois group".into())));
    }
    let (local, _) = sub.to_group();
    if **g.gamma() != *local {
        return Err(TorsorError::Group(GroupError::NotSubgroup("group is acted on by another group".into())));
    }
    let base = g.group();
    // γ = δ·r with δ ∈ Γ′ local, r a coset representative
    let mut coset = vec![usize::MAX; gamma.order()];
    let mut factor = vec![0usize; gamma.order()];
    let mut reps = Vec::new();
    for r in gamma.elements() {
        if coset[r] != usize::MAX {
            continue;
        }
        for (i, &d) in sub.elements().iter().enumerate() {
            let x = gamma.mul(d, r);
            coset[x] = reps.len();
            factor[x] = i;
        }
        reps.push(r);
    }
    let k = reps.len();
    let m = base.order();
    let order = (0..k).try_fold(1usize, |acc, _| acc.checked_mul(m).filter(|&n| n <= MAX_ORDER));
    let Some(order) = order else {
        return Err(TorsorError::Group(GroupError::TooLarge { order: m.saturating_pow(k as u32), limit: MAX_ORDER }));
    };
    let digits = |mut id: usize| -> Vec<Elem> {
        let mut out = vec![0; k];
        for slot in out.iter_mut().rev() {
            *slot = id % m;
            id /= m;
        }
        out
    };
    let encode = |values: &[Elem]| values.iter().fold(0usize, |acc, &v| acc * m + v);
    let value = |values: &[Elem], x: Elem| g.act(factor[x], values[coset[x]]);

    let tuples: Vec<Vec<Elem>> = (0..order).map(digits).collect();
    let mut table = Vec::with_capacity(order * order);
    let mut buf = vec![0; k];
    for a in &tuples {
        for b in &tuples {
            for i in 0..k {
                buf[i] = base.mul(a[i], b[i]);
            }
            table.push(encode(&buf) as u32);
        }
    }
    let identity = encode(&vec![base.identity(); k]);
    let group = Arc::new(FiniteGroup::from_flat_table_unchecked(order, table, identity));
    let maps = gamma
        .elements()
        .map(|c| {
            Perm::from_raw(
                tuples
                    .iter()
                    .map(|f| {
                        let shifted: Vec<Elem> = reps.iter().map(|&r| value(f, gamma.mul(r, c))).collect();
                        encode(&shifted) as u32
                    })
                    .collect(),
            )
        })
        .collect();
    let action = AutAction::new(gamma.clone(), group.clone(), maps)?;
    let e = gamma.identity();
    let counit = GroupHom::new(group.clone(), base.clone(), tuples.iter().map(|f| value(f, e)).collect())?;
    Ok(InducedGroup { group: Arc::new(EtaleGroup::new(action)), counit, coset_representatives: reps })
}
