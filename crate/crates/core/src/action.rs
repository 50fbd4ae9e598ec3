//! Actions by automorphisms, semidirect products and permutation-generated groups.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::GroupError;
use crate::group::{FiniteGroup, MAX_ORDER};
use crate::hom::{extend_assignments, GroupHom};
use crate::perm::Perm;
use crate::Elem;

/// An action of `actor` on `target` by group automorphisms, one permutation of the
/// target's ids per actor element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutAction {
    actor: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    maps: Vec<Perm>,
}

/// Checks that a permutation of `g`'s ids is a group automorphism.
pub fn is_automorphism(g: &FiniteGroup, p: &Perm) -> bool {
    p.len() == g.order()
        && p.apply(g.identity()) == g.identity()
        && g.generators().iter().all(|&s| {
            let ps = p.apply(s);
            g.elements().all(|x| p.apply(g.mul(x, s)) == g.mul(p.apply(x), ps))
        })
}

/// The automorphism of `g` sending each listed element to its image, if it exists.
pub fn automorphism_from_images(g: &Arc<FiniteGroup>, assignments: &[(Elem, Elem)]) -> Result<Perm, GroupError> {
    let images = extend_assignments(g, g, assignments)?;
    let perm = Perm::from_images(images.iter().map(|&x| x as usize).collect())?;
    Ok(perm)
}

impl AutAction {
    /// Validates: every map is an automorphism and `γ ↦ map(γ)` is a homomorphism.
    pub fn new(actor: Arc<FiniteGroup>, target: Arc<FiniteGroup>, maps: Vec<Perm>) -> Result<Self, GroupError> {
        if maps.len() != actor.order() {
            return Err(GroupError::Mismatch(format!("{} maps for an actor of order {}", maps.len(), actor.order())));
        }
        let mut checked: HashMap<&Perm, bool> = HashMap::new();
        for (a, m) in maps.iter().enumerate() {
            let ok = *checked.entry(m).or_insert_with(|| is_automorphism(&target, m));
            if !ok {
                return Err(GroupError::InvalidAction { actor: a, reason: "not an automorphism".into() });
            }
        }
        if !maps[actor.identity()].is_identity() {
            return Err(GroupError::InvalidAction {
                actor: actor.identity(),
                reason: "identity acts nontrivially".into(),
            });
        }
        for &s in actor.generators() {
            for a in actor.elements() {
                if maps[actor.mul(a, s)] != maps[a].compose(&maps[s]) {
                    return Err(GroupError::InvalidAction {
                        actor: actor.mul(a, s),
                        reason: format!("map({a}*{s}) != map({a})∘map({s})"),
                    });
                }
            }
        }
        Ok(AutAction { actor, target, maps })
    }

    pub fn trivial(actor: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let id = Perm::identity(target.order());
        let maps = vec![id; actor.order()];
        AutAction { actor, target, maps }
    }

    /// Extends automorphisms given on generators of the actor.
    pub fn from_generator_images(
        actor: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        generator_maps: &[(Elem, Perm)],
    ) -> Result<Self, GroupError> {
        for (a, p) in generator_maps {
            if !is_automorphism(&target, p) {
                return Err(GroupError::InvalidAction { actor: *a, reason: "not an automorphism".into() });
            }
        }
        let n = target.order();
        let mut maps: Vec<Option<Perm>> = vec![None; actor.order()];
        maps[actor.identity()] = Some(Perm::identity(n));
        let mut queue = vec![actor.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (s, p) in generator_maps {
                let y = actor.mul(x, *s);
                let v = maps[x].as_ref().unwrap().compose(p);
                match &maps[y] {
                    None => {
                        maps[y] = Some(v);
                        queue.push(y);
                    }
                    Some(old) if *old != v => {
                        return Err(GroupError::InvalidAction {
                            actor: y,
                            reason: "generator images violate a relation of the actor".into(),
                        })
                    }
                    Some(_) => {}
                }
            }
            i += 1;
        }
        if queue.len() != actor.order() {
            return Err(GroupError::NotGenerating);
        }
        let maps = maps.into_iter().map(Option::unwrap).collect();
        Ok(AutAction { actor, target, maps })
    }

    /// `ℤ/2` (or any group with a distinguished involution at id 1) acting on an abelian
    /// group by inversion.
    pub fn inversion(actor: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Result<Self, GroupError> {
        let inv = Perm::from_images(target.elements().map(|x| target.inv(x)).collect())?;
        let gens: Vec<(Elem, Perm)> = actor.generators().iter().map(|&s| (s, inv.clone())).collect();
        Self::from_generator_images(actor, target, &gens)
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: Elem, x: Elem) -> Elem {
        self.maps[a].apply(x)
    }

    pub fn map(&self, a: Elem) -> &Perm {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Perm] {
        &self.maps
    }

    pub fn is_trivial(&self) -> bool {
        self.maps.iter().all(Perm::is_identity)
    }

    /// The distinct automorphisms occurring in the action.
    pub fn distinct_maps(&self) -> Vec<Perm> {
        let mut v: Vec<Perm> = self.maps.clone();
        v.sort();
        v.dedup();
        v
    }

    /// Pull back along `f: actor' → actor`.
    pub fn pull_back(&self, f: &GroupHom) -> Result<AutAction, GroupError> {
        if **f.target() != *self.actor {
            return Err(GroupError::Mismatch("pull-back along a map into another group".into()));
        }
        let maps = f.source().elements().map(|a| self.maps[f.apply(a)].clone()).collect();
        Ok(AutAction { actor: f.source().clone(), target: self.target.clone(), maps })
    }
}

/// `N ⋊ H` with its structure maps.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: Arc<FiniteGroup>,
    pub embed_normal: GroupHom,
    pub embed_complement: GroupHom,
    pub projection: GroupHom,
}

impl SemidirectProduct {
    /// Id of the pair `(n, h)`.
    pub fn pair(&self, n: Elem, h: Elem) -> Elem {
        self.group.mul(self.embed_normal.apply(n), self.embed_complement.apply(h))
    }
}

/// `N ⋊ H` for an action of `H` on `N`, with `(n₁,h₁)(n₂,h₂) = (n₁·h₁(n₂), h₁h₂)`.
/// The pair `(n, h)` has id `n·|H| + h`.
pub fn semidirect_product(act: &AutAction) -> Result<SemidirectProduct, GroupError> {
    let n = act.target();
    let h = act.actor();
    let (nn, nh) = (n.order(), h.order());
    let order = nn * nh;
    if order > MAX_ORDER {
        return Err(GroupError::TooLarge { order, limit: MAX_ORDER });
    }
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (n1, h1) = (x / nh, x % nh);
        let m = act.map(h1);
        for y in 0..order {
            let (n2, h2) = (y / nh, y % nh);
            let prod_n = n.mul(n1, m.apply(n2));
            let prod_h = h.mul(h1, h2);
            table.push((prod_n * nh + prod_h) as u32);
        }
    }
    let identity = n.identity() * nh + h.identity();
    let group = Arc::new(FiniteGroup::from_flat_table_unchecked(order, table, identity));
    let embed_normal =
        GroupHom::from_parts_unchecked(n.clone(), group.clone(), n.elements().map(|a| a * nh + h.identity()).collect());
    let embed_complement =
        GroupHom::from_parts_unchecked(h.clone(), group.clone(), h.elements().map(|b| n.identity() * nh + b).collect());
    let projection = GroupHom::from_parts_unchecked(group.clone(), h.clone(), (0..order).map(|x| x % nh).collect());
    Ok(SemidirectProduct { group, embed_normal, embed_complement, projection })
}

/// The group generated by permutations of a common set, acting faithfully on it.
#[derive(Clone, Debug)]
pub struct TransformationGroup {
    pub group: Arc<FiniteGroup>,
    /// Permutation of each element; the product `xy` acts as `x ∘ y`.
    pub perms: Vec<Perm>,
    /// Ids of the input generators, in input order.
    pub generators: Vec<Elem>,
}

impl TransformationGroup {
    /// Element id of a permutation, if it lies in the group.
    pub fn element_of(&self, p: &Perm) -> Option<Elem> {
        self.perms.iter().position(|q| q == p)
    }
}

/// Closes `perms` under composition. Ids follow BFS discovery order from the identity.
pub fn generated_transformation_group(perms: &[Perm], max_order: usize) -> Result<TransformationGroup, GroupError> {
    let degree = perms.first().map_or(0, Perm::len);
    if let Some((i, _)) = perms.iter().enumerate().find(|(_, p)| p.len() != degree) {
        return Err(GroupError::Mismatch(format!("generator {i} acts on a different set")));
    }
    let limit = max_order.min(MAX_ORDER);
    let mut elems: Vec<Perm> = vec![Perm::identity(degree)];
    let mut index: HashMap<Perm, usize> = HashMap::new();
    index.insert(elems[0].clone(), 0);
    // right multiplication by generators: rgen[x][k] = id of x ∘ perms[k]
    let mut rgen: Vec<Vec<usize>> = Vec::new();
    let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
    let mut i = 0;
    while i < elems.len() {
        let mut row = Vec::with_capacity(perms.len());
        for (k, s) in perms.iter().enumerate() {
            let y = elems[i].compose(s);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    let id = elems.len();
                    if id >= limit {
                        return Err(GroupError::TooLarge { order: id + 1, limit });
                    }
                    index.insert(y.clone(), id);
                    elems.push(y);
                    parent.push((i, k));
                    id
                }
            };
            row.push(id);
        }
        rgen.push(row);
        i += 1;
    }
    let n = elems.len();
    // x·y = (x·parent(y))·s where y = parent(y)·s
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        table[x * n] = x as u32;
        for y in 1..n {
            let (p, k) = parent[y];
            table[x * n + y] = rgen[table[x * n + p] as usize][k] as u32;
        }
    }
    let group = Arc::new(FiniteGroup::from_flat_table_unchecked(n, table, 0));
    let generators = (0..perms.len()).map(|k| rgen[0][k]).collect();
    Ok(TransformationGroup { group, perms: elems, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::are_isomorphic;

    #[test]
    fn dihedral_from_inversion() {
        for n in 2..9 {
            let act = AutAction::inversion(Arc::new(FiniteGroup::cyclic(2)), Arc::new(FiniteGroup::cyclic(n))).unwrap();
            let sd = semidirect_product(&act).unwrap();
            assert_eq!(sd.group.order(), 2 * n);
            assert_eq!(sd.group.is_abelian(), n <= 2);
            assert!(sd.group.is_associative_exhaustive());
            let (_, ker) = sd.projection.image_kernel();
            assert!(ker.is_normal());
            assert_eq!(ker.order(), n);
        }
    }

    #[test]
    fn unipotent_action_gives_order_l_cubed() {
        for l in [2usize, 3, 5] {
            let v = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(l), &FiniteGroup::cyclic(l)).unwrap());
            // (x, y) -> (x + y, y); ids are x*l + y
            let m = Perm::from_images((0..l * l).map(|id| ((id / l + id % l) % l) * l + id % l).collect()).unwrap();
            let act = AutAction::from_generator_images(Arc::new(FiniteGroup::cyclic(l)), v, &[(1, m)]).unwrap();
            let sd = semidirect_product(&act).unwrap();
            assert_eq!(sd.group.order(), l * l * l);
            assert!(!sd.group.is_abelian());
        }
    }

    #[test]
    fn trivial_action_is_direct_product_and_swaps() {
        let a = Arc::new(FiniteGroup::cyclic(2));
        let b = Arc::new(FiniteGroup::cyclic(3));
        let ab = semidirect_product(&AutAction::trivial(b.clone(), a.clone())).unwrap().group;
        let ba = semidirect_product(&AutAction::trivial(a.clone(), b.clone())).unwrap().group;
        assert!(ab.is_abelian());
        assert!(are_isomorphic(&ab, &ba));
        let s3 = Arc::new(FiniteGroup::cyclic(3));
        let d3 = semidirect_product(&AutAction::inversion(a.clone(), s3).unwrap()).unwrap().group;
        let d3_times = semidirect_product(&AutAction::trivial(a.clone(), d3.clone())).unwrap().group;
        assert!(!d3_times.is_abelian());
    }

    #[test]
    fn invalid_actions_rejected() {
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        // x -> x + 1 is not an automorphism
        let shift = Perm::from_images(vec![1, 2, 0]).unwrap();
        assert!(matches!(
            AutAction::from_generator_images(z2.clone(), z3.clone(), &[(1, shift)]),
            Err(GroupError::InvalidAction { .. })
        ));
        // Z/3 cannot act on Z/3 by inversion (order 2 automorphism)
        assert!(matches!(AutAction::inversion(z3.clone(), z3.clone()), Err(GroupError::InvalidAction { .. })));
        let inv = Perm::from_images(vec![0, 2, 1]).unwrap();
        let maps = vec![Perm::identity(3), inv.clone(), inv];
        assert!(AutAction::new(z3.clone(), z3, maps).is_err());
    }

    #[test]
    fn transformation_groups() {
        let t = Perm::from_images(vec![1, 0, 2]).unwrap();
        let g = generated_transformation_group(&[t], 100).unwrap();
        assert_eq!(g.group.order(), 2);
        let c = Perm::from_images(vec![1, 2, 0]).unwrap();
        let t = Perm::from_images(vec![1, 0, 2]).unwrap();
        let s3 = generated_transformation_group(&[c.clone(), t.clone()], 100).unwrap();
        assert_eq!(s3.group.order(), 6);
        assert!(!s3.group.is_abelian());
        assert!(s3.group.is_associative_exhaustive());
        for x in s3.group.elements() {
            for y in s3.group.elements() {
                let xy = s3.group.mul(x, y);
                assert_eq!(s3.perms[xy], s3.perms[x].compose(&s3.perms[y]));
            }
        }
        assert_eq!(s3.perms[s3.generators[0]], c);
        assert!(generated_transformation_group(&[c, t], 3).is_err());
    }
}
