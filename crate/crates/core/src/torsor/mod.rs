//! Pointed torsors under finite étale groups over a base with Galois datum.
//!
//! Everything lives at a fixed finite level: a Galois group `Γ`, a monodromy group `Π`
//! with a homomorphism `π: Π → Γ`, and finite groups with `Γ` acting by automorphisms.
//! A pointed torsor is a finite set with a left `Π`-action, a simply transitive right
//! action of the structure group `G`, and a basepoint, subject to the twist law
//!
//! ```text
//! γ·(p·g) = (γ·p)·(π(γ)(g))
//! ```
//!
//! The basepoint cocycle is defined by `γ·p₀ = p₀·t_γ`.

mod induce;
mod ops;

pub use induce::{induce_group, InducedGroup};
pub use ops::*;

use std::sync::Arc;

use crate::action::AutAction;
use crate::error::{GroupError, Side, TorsorError, TwistWitness};
use crate::group::FiniteGroup;
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::subgroup::Subgroup;
use crate::Elem;

/// The finite Galois group at which a model is split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisContext {
    gamma: Arc<FiniteGroup>,
}

impl GaloisContext {
    pub fn new(gamma: Arc<FiniteGroup>) -> Self {
        GaloisContext { gamma }
    }

    pub fn trivial() -> Self {
        GaloisContext { gamma: Arc::new(FiniteGroup::trivial()) }
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        &self.gamma
    }
}

/// Monodromy group `Π` with its map to `Γ`.
#[derive(Clone, Debug)]
pub struct BaseDatum {
    context: GaloisContext,
    projection: GroupHom,
    geometric: Subgroup,
    geometrically_connected: bool,
}

impl PartialEq for BaseDatum {
    fn eq(&self, other: &Self) -> bool {
        self.projection == other.projection
    }
}

impl Eq for BaseDatum {}

impl BaseDatum {
    pub fn new(projection: GroupHom) -> Self {
        let context = GaloisContext::new(projection.target().clone());
        let (_, geometric) = projection.image_kernel();
        let geometrically_connected = projection.is_surjective();
        BaseDatum { context, projection, geometric, geometrically_connected }
    }

    /// The base `Spec(k)`: `Π = Γ` with the identity map.
    pub fn over_field(gamma: Arc<FiniteGroup>) -> Self {
        BaseDatum::new(GroupHom::identity(gamma))
    }

    pub fn trivial() -> Self {
        BaseDatum::over_field(Arc::new(FiniteGroup::trivial()))
    }

    pub fn context(&self) -> &GaloisContext {
        &self.context
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        self.context.gamma()
    }

    pub fn pi(&self) -> &Arc<FiniteGroup> {
        self.projection.source()
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    #[inline]
    pub fn project(&self, gamma: Elem) -> Elem {
        self.projection.apply(gamma)
    }

    /// `Π̄ = ker π`, the geometric part of the monodromy.
    pub fn geometric_subgroup(&self) -> &Subgroup {
        &self.geometric
    }

    pub fn is_geometrically_connected(&self) -> bool {
        self.geometrically_connected
    }

    /// True when `Π = Γ` via the identity.
    pub fn is_field(&self) -> bool {
        **self.pi() == **self.gamma() && self.pi().elements().all(|g| self.project(g) == g)
    }
}

pub(crate) fn same_base(a: &Arc<BaseDatum>, b: &Arc<BaseDatum>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A finite group with a `Γ`-action by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleGroup {
    action: AutAction,
}

impl EtaleGroup {
    pub fn new(action: AutAction) -> Self {
        EtaleGroup { action }
    }

    /// Trivial `Γ`-action.
    pub fn constant(gamma: Arc<FiniteGroup>, group: Arc<FiniteGroup>) -> Self {
        EtaleGroup { action: AutAction::trivial(gamma, group) }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.action.target()
    }

    pub fn gamma(&self) -> &Arc<FiniteGroup> {
        self.action.actor()
    }

    pub fn action(&self) -> &AutAction {
        &self.action
    }

    #[inline]
    pub fn act(&self, gamma: Elem, g: Elem) -> Elem {
        self.action.apply(gamma, g)
    }

    pub fn is_constant(&self) -> bool {
        self.action.is_trivial()
    }

    /// The distinct automorphisms by which `Γ` acts.
    pub fn automorphisms(&self) -> Vec<Perm> {
        self.action.distinct_maps()
    }

    pub fn is_stable(&self, h: &Subgroup) -> bool {
        self.automorphisms().iter().all(|a| h.is_stable_under(a))
    }

    /// Restriction to a `Γ`-stable subgroup, with the inclusion.
    pub fn restrict(&self, h: &Subgroup) -> Result<(Arc<EtaleGroup>, GroupHom), TorsorError> {
        for gamma in self.gamma().elements() {
            if let Some(&x) = h.elements().iter().find(|&&x| !h.contains(self.act(gamma, x))) {
                return Err(TorsorError::NotStable { gamma, h: x });
            }
        }
        let (sub, embed) = h.to_group();
        let maps = self
            .gamma()
            .elements()
            .map(|gamma| {
                Perm::from_raw(h.elements().iter().map(|&x| h.local_id(self.act(gamma, x)).unwrap() as u32).collect())
            })
            .collect();
        let action = AutAction::new(self.gamma().clone(), sub, maps)?;
        Ok((Arc::new(EtaleGroup { action }), embed))
    }

    /// Checks `f(γ·g) = γ·f(g)` for a homomorphism into another étale group.
    pub fn equivariance_failure(&self, f: &GroupHom, other: &EtaleGroup) -> Option<(Elem, Elem)> {
        for gamma in self.gamma().elements() {
            for &g in self.group().generators() {
                if f.apply(self.act(gamma, g)) != other.act(gamma, f.apply(g)) {
                    return Some((gamma, g));
                }
            }
        }
        None
    }
}

/// Raw torsor data, checked by [`validate_torsor`].
#[derive(Clone, Debug)]
pub struct TorsorData {
    pub base: Arc<BaseDatum>,
    pub structure: Arc<EtaleGroup>,
    pub size: usize,
    /// One permutation per element of `Π`.
    pub left: Vec<Perm>,
    /// One permutation per element of `G`, `right[g](p) = p·g`.
    pub right: Vec<Perm>,
    pub basepoint: usize,
}

/// Torsor data given only on generators of `Π` and `G`.
#[derive(Clone, Debug)]
pub struct TorsorGenerators {
    pub base: Arc<BaseDatum>,
    pub structure: Arc<EtaleGroup>,
    pub size: usize,
    pub left: Vec<(Elem, Perm)>,
    pub right: Vec<(Elem, Perm)>,
    pub basepoint: usize,
}

/// A validated pointed torsor.
#[derive(Clone, Debug)]
pub struct PointedTorsor {
    base: Arc<BaseDatum>,
    structure: Arc<EtaleGroup>,
    size: usize,
    left: Vec<u32>,
    right: Vec<u32>,
    basepoint: usize,
    coords: Vec<u32>,
}

impl PartialEq for PointedTorsor {
    fn eq(&self, other: &Self) -> bool {
        same_base(&self.base, &other.base)
            && self.structure == other.structure
            && self.left == other.left
            && self.right == other.right
            && self.basepoint == other.basepoint
    }
}

/// Exhaustive validation of raw torsor data.
///
/// Action and twist laws are verified on generators: a map agreeing with a (anti-)
/// homomorphism on generators is one, and the twist law is multiplicative in both `γ`
/// and `g`, so the generator checks are equivalent to checking every triple.
pub fn validate_torsor(data: TorsorData) -> Result<PointedTorsor, TorsorError> {
    let TorsorData { base, structure, size, left, right, basepoint } = data;
    if **structure.gamma() != **base.gamma() {
        return Err(TorsorError::BaseMismatch("structure group is acted on by another Galois group".into()));
    }
    let pi = base.pi().clone();
    let g = structure.group().clone();
    if left.len() != pi.order() {
        return Err(TorsorError::Dimensions(format!("{} left maps for |Π| = {}", left.len(), pi.order())));
    }
    if right.len() != g.order() {
        return Err(TorsorError::Dimensions(format!("{} right maps for |G| = {}", right.len(), g.order())));
    }
    if let Some(p) = left.iter().chain(&right).find(|p| p.len() != size) {
        return Err(TorsorError::Dimensions(format!("permutation on {} points, set has {size}", p.len())));
    }
    if basepoint >= size {
        return Err(TorsorError::Dimensions(format!("basepoint {basepoint} outside 0..{size}")));
    }
    // right action: p·e = p and (p·x)·s = p·(xs)
    if let Some(p) = (0..size).find(|&p| right[g.identity()].apply(p) != p) {
        return Err(TorsorError::NotAnAction { side: Side::Right, element: g.identity(), point: p });
    }
    for &s in g.generators() {
        for x in g.elements() {
            let xs = g.mul(x, s);
            if let Some(p) = (0..size).find(|&p| right[s].apply(right[x].apply(p)) != right[xs].apply(p)) {
                return Err(TorsorError::NotAnAction { side: Side::Right, element: xs, point: p });
            }
        }
    }
    // left action: e·p = p and (γs)·p = γ·(s·p)
    if let Some(p) = (0..size).find(|&p| left[pi.identity()].apply(p) != p) {
        return Err(TorsorError::NotAnAction { side: Side::Left, element: pi.identity(), point: p });
    }
    for &s in pi.generators() {
        for x in pi.elements() {
            let xs = pi.mul(x, s);
            if let Some(p) = (0..size).find(|&p| left[x].apply(left[s].apply(p)) != left[xs].apply(p)) {
                return Err(TorsorError::NotAnAction { side: Side::Left, element: xs, point: p });
            }
        }
    }
    // simple transitivity: g ↦ p₀·g is a bijection onto the set
    if size != g.order() {
        return Err(TorsorError::NotSimplyTransitive(format!(
            "set of size {size} under a group of order {}",
            g.order()
        )));
    }
    let mut coords = vec![u32::MAX; size];
    for x in g.elements() {
        let q = right[x].apply(basepoint);
        if coords[q] != u32::MAX {
            return Err(TorsorError::NotSimplyTransitive(format!("p0·{} = p0·{x} = {q}", coords[q])));
        }
        coords[q] = x as u32;
    }
    for &gamma in pi.generators() {
        let image = base.project(gamma);
        for &x in g.generators() {
            let twisted = structure.act(image, x);
            for p in 0..size {
                if left[gamma].apply(right[x].apply(p)) != right[twisted].apply(left[gamma].apply(p)) {
                    return Err(TorsorError::IncompatibleTwist(TwistWitness::Law { gamma, point: p, g: x }));
                }
            }
        }
    }
    let flatten = |perms: &[Perm]| -> Vec<u32> { perms.iter().flat_map(|p| p.images().iter().copied()).collect() };
    let left_flat = flatten(&left);
    // right stored point-major for cache-friendly `p·g` scans
    let mut right_flat = vec![0u32; size * g.order()];
    for x in g.elements() {
        for p in 0..size {
            right_flat[p * g.order() + x] = right[x].apply(p) as u32;
        }
    }
    Ok(PointedTorsor { base, structure, size, left: left_flat, right: right_flat, basepoint, coords })
}

impl PointedTorsor {
    /// Extends generator data to full tables and validates.
    ///
    /// Left generator images that violate a relation of `Π` are reported as
    /// [`TorsorError::IncompatibleTwist`] with a [`TwistWitness::Relation`].
    pub fn from_generators(data: TorsorGenerators) -> Result<PointedTorsor, TorsorError> {
        let TorsorGenerators { base, structure, size, left, right, basepoint } = data;
        if let Some((_, p)) = left.iter().chain(&right).find(|(_, p)| p.len() != size) {
            return Err(TorsorError::Dimensions(format!("permutation on {} points, set has {size}", p.len())));
        }
        let pi = base.pi().clone();
        let g = structure.group().clone();
        let left_full = extend_perms(&pi, size, &left, false).map_err(|e| match e {
            Extension::Conflict { element, point } => {
                TorsorError::IncompatibleTwist(TwistWitness::Relation { gamma: element, point })
            }
            Extension::NotGenerating => TorsorError::Group(GroupError::NotGenerating),
            Extension::OutOfRange(x) => TorsorError::Dimensions(format!("element {x} not in Π")),
        })?;
        let right_full = extend_perms(&g, size, &right, true).map_err(|e| match e {
            Extension::Conflict { element, point } => TorsorError::NotAnAction { side: Side::Right, element, point },
            Extension::NotGenerating => TorsorError::Group(GroupError::NotGenerating),
            Extension::OutOfRange(x) => TorsorError::Dimensions(format!("element {x} not in G")),
        })?;
        validate_torsor(TorsorData { base, structure, size, left: left_full, right: right_full, basepoint })
    }

    /// The torsor `G` with `p₀ = e`, right translation and `γ·g = t_γ·(π(γ)(g))` for a
    /// map `t: Π → G` given on every element.
    pub fn from_crossed_hom(
        base: Arc<BaseDatum>,
        structure: Arc<EtaleGroup>,
        values: &[Elem],
    ) -> Result<PointedTorsor, TorsorError> {
        let g = structure.group().clone();
        let n = g.order();
        if values.len() != base.pi().order() {
            return Err(TorsorError::Dimensions("one cocycle value per element of Π required".into()));
        }
        let left = base
            .pi()
            .elements()
            .map(|gamma| {
                let image = base.project(gamma);
                Perm::from_images((0..n).map(|x| g.mul(values[gamma], structure.act(image, x))).collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        let right = g.elements().map(|x| Perm::from_raw((0..n).map(|p| g.mul(p, x) as u32).collect())).collect();
        validate_torsor(TorsorData { base, structure, size: n, left, right, basepoint: g.identity() })
    }

    pub fn base(&self) -> &Arc<BaseDatum> {
        &self.base
    }

    pub fn structure(&self) -> &Arc<EtaleGroup> {
        &self.structure
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.structure.group()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// `γ·p`.
    #[inline]
    pub fn left(&self, gamma: Elem, p: usize) -> usize {
        self.left[gamma * self.size + p] as usize
    }

    /// `p·g`.
    #[inline]
    pub fn right(&self, p: usize, g: Elem) -> usize {
        self.right[p * self.group().order() + g] as usize
    }

    /// The unique `g` with `p₀·g = p`.
    #[inline]
    pub fn coord(&self, p: usize) -> Elem {
        self.coords[p] as usize
    }

    pub fn left_perm(&self, gamma: Elem) -> Perm {
        Perm::from_raw(self.left[gamma * self.size..(gamma + 1) * self.size].to_vec())
    }

    pub fn right_perm(&self, g: Elem) -> Perm {
        Perm::from_raw((0..self.size).map(|p| self.right(p, g) as u32).collect())
    }

    pub fn data(&self) -> TorsorData {
        TorsorData {
            base: self.base.clone(),
            structure: self.structure.clone(),
            size: self.size,
            left: self.base.pi().elements().map(|x| self.left_perm(x)).collect(),
            right: self.group().elements().map(|x| self.right_perm(x)).collect(),
            basepoint: self.basepoint,
        }
    }

    /// Same data pointed at another point.
    pub fn repointed(&self, point: usize) -> Result<PointedTorsor, TorsorError> {
        let mut data = self.data();
        data.basepoint = point;
        validate_torsor(data)
    }

    /// Same data with the points renamed by `relabel` (old id → new id).
    pub fn relabeled(&self, relabel: &Perm) -> Result<PointedTorsor, TorsorError> {
        let inv = relabel.inverse();
        let conj = |p: &Perm| relabel.compose(p).compose(&inv);
        let mut data = self.data();
        data.left = data.left.iter().map(conj).collect();
        data.right = data.right.iter().map(conj).collect();
        data.basepoint = relabel.apply(self.basepoint);
        validate_torsor(data)
    }
}

enum Extension {
    Conflict { element: Elem, point: usize },
    NotGenerating,
    OutOfRange(Elem),
}

/// Extends generator permutations to the whole group: as a left action when
/// `right == false` (`xs ↦ x∘s`), as a right action otherwise (`xs ↦ s∘x`).
fn extend_perms(group: &FiniteGroup, size: usize, gens: &[(Elem, Perm)], right: bool) -> Result<Vec<Perm>, Extension> {
    if let Some((x, _)) = gens.iter().find(|(x, _)| *x >= group.order()) {
        return Err(Extension::OutOfRange(*x));
    }
    let mut table: Vec<Option<Perm>> = vec![None; group.order()];
    table[group.identity()] = Some(Perm::identity(size));
    let mut queue = vec![group.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (s, p) in gens {
            let y = group.mul(x, *s);
            let current = table[x].as_ref().unwrap();
            let v = if right { p.compose(current) } else { current.compose(p) };
            match &table[y] {
                None => {
                    table[y] = Some(v);
                    queue.push(y);
                }
                Some(old) if *old != v => {
                    let point = (0..size).find(|&q| old.apply(q) != v.apply(q)).unwrap_or(0);
                    return Err(Extension::Conflict { element: y, point });
                }
                Some(_) => {}
            }
        }
        i += 1;
    }
    if queue.len() != group.order() {
        return Err(Extension::NotGenerating);
    }
    Ok(table.into_iter().map(Option::unwrap).collect())
}

/// `t_γ` for every `γ ∈ Π`, defined by `γ·p₀ = p₀·t_γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationCocycle {
    values: Vec<Elem>,
}

impl TranslationCocycle {
    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    #[inline]
    pub fn at(&self, gamma: Elem) -> Elem {
        self.values[gamma]
    }

    /// First pair `(γ, δ)` violating `t_{γδ} = t_γ · π(γ)(t_δ)`, if any.
    pub fn law_violation(&self, torsor: &PointedTorsor) -> Option<(Elem, Elem)> {
        let pi = torsor.base().pi();
        let g = torsor.group();
        let s = torsor.structure();
        for a in pi.elements() {
            for b in pi.elements() {
                let lhs = self.values[pi.mul(a, b)];
                let rhs = g.mul(self.values[a], s.act(torsor.base().project(a), self.values[b]));
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        if self.values[pi.identity()] != g.identity() {
            return Some((pi.identity(), pi.identity()));
        }
        None
    }
}

pub fn translation_cocycle(t: &PointedTorsor) -> TranslationCocycle {
    let values = t.base().pi().elements().map(|gamma| t.coord(t.left(gamma, t.basepoint()))).collect();
    TranslationCocycle { values }
}

/// A morphism of pointed torsors `(s, t)`.
#[derive(Clone, Debug)]
pub struct TorsorMorphism {
    source: Arc<PointedTorsor>,
    target: Arc<PointedTorsor>,
    set_map: Vec<u32>,
    group_map: GroupHom,
}

impl TorsorMorphism {
    pub fn new(
        source: Arc<PointedTorsor>,
        target: Arc<PointedTorsor>,
        set_map: Vec<usize>,
        group_map: GroupHom,
    ) -> Result<Self, TorsorError> {
        if !same_base(source.base(), target.base()) {
            return Err(TorsorError::BaseMismatch("morphism between torsors over different bases".into()));
        }
        if **group_map.source() != **source.group() || **group_map.target() != **target.group() {
            return Err(TorsorError::NotAMorphism("group map between the wrong groups".into()));
        }
        if set_map.len() != source.size() || set_map.iter().any(|&q| q >= target.size()) {
            return Err(TorsorError::NotAMorphism("set map has wrong shape".into()));
        }
        if set_map[source.basepoint()] != target.basepoint() {
            return Err(TorsorError::NotAMorphism("basepoint not preserved".into()));
        }
        if let Some((gamma, g)) = source.structure().equivariance_failure(&group_map, target.structure()) {
            return Err(TorsorError::NotEquivariant { gamma, g });
        }
        let pi = source.base().pi();
        for &gamma in pi.generators() {
            if let Some(p) =
                (0..source.size()).find(|&p| set_map[source.left(gamma, p)] != target.left(gamma, set_map[p]))
            {
                return Err(TorsorError::NotAMorphism(format!("not Π-equivariant at γ={gamma}, p={p}")));
            }
        }
        for &g in source.group().generators() {
            let tg = group_map.apply(g);
            if let Some(p) = (0..source.size()).find(|&p| set_map[source.right(p, g)] != target.right(set_map[p], tg)) {
                return Err(TorsorError::NotAMorphism(format!("does not intertwine g={g} at p={p}")));
            }
        }
        Ok(TorsorMorphism { source, target, set_map: set_map.into_iter().map(|q| q as u32).collect(), group_map })
    }

    /// The morphism with group part `group_map`, its set part forced by the basepoints.
    pub fn from_group_map(
        source: Arc<PointedTorsor>,
        target: Arc<PointedTorsor>,
        group_map: GroupHom,
    ) -> Result<Self, TorsorError> {
        if **group_map.source() != **source.group() {
            return Err(TorsorError::NotAMorphism("group map from the wrong group".into()));
        }
        let set_map =
            (0..source.size()).map(|p| target.right(target.basepoint(), group_map.apply(source.coord(p)))).collect();
        Self::new(source, target, set_map, group_map)
    }

    pub fn identity(t: Arc<PointedTorsor>) -> Self {
        let set_map = (0..t.size() as u32).collect();
        let group_map = GroupHom::identity(t.group().clone());
        TorsorMorphism { source: t.clone(), target: t, set_map, group_map }
    }

    pub fn source(&self) -> &Arc<PointedTorsor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PointedTorsor> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.set_map[p] as usize
    }

    pub fn group_map(&self) -> &GroupHom {
        &self.group_map
    }

    pub fn is_isomorphism(&self) -> bool {
        self.group_map.is_isomorphism()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TorsorMorphism) -> Result<TorsorMorphism, TorsorError> {
        if *self.target != *other.source {
            return Err(TorsorError::NotAMorphism("composition of non-adjacent morphisms".into()));
        }
        let set_map = self.set_map.iter().map(|&p| other.apply(p as usize) as u32).collect();
        let group_map = self.group_map.then(&other.group_map)?;
        Ok(TorsorMorphism { source: self.source.clone(), target: other.target.clone(), set_map, group_map })
    }

    /// Equal as maps (same underlying set and group maps).
    pub fn same_maps(&self, other: &TorsorMorphism) -> bool {
        self.set_map == other.set_map && self.group_map.images() == other.group_map.images()
    }
}
