use std::collections::HashMap;
use std::sync::Arc;

use crate::action::AutAction;
use crate::error::{GroupError, TorsorError};
use crate::group::FiniteGroup;
use crate::hom::{enumerate_homs, find_isomorphism, GroupHom};
use crate::perm::Perm;
use crate::subgroup::{quotient_by_normal, Conjugation, Subgroup};
use crate::Elem;

use super::{
    same_base, translation_cocycle, validate_torsor, BaseDatum, EtaleGroup, PointedTorsor, TorsorData, TorsorMorphism,
};

/// Restricts a torsor to the points `points` (sorted, `Π`-stable and a single
/// `H`-orbit) under the `Γ`-stable subgroup `h`.
fn restrict_to(t: &PointedTorsor, points: &[usize], h: &Subgroup) -> Result<(PointedTorsor, GroupHom), TorsorError> {
    let (structure, embed) = t.structure().restrict(h)?;
    let mut index = vec![usize::MAX; t.size()];
    for (i, &p) in points.iter().enumerate() {
        index[p] = i;
    }
    let relabel = |p: usize| -> Result<usize, TorsorError> {
        match index[p] {
            usize::MAX => Err(TorsorError::NotAMorphism(format!("point {p} leaves the sub-triple"))),
            i => Ok(i),
        }
    };
    let mut left = Vec::with_capacity(t.base().pi().order());
    for gamma in t.base().pi().elements() {
        let images = points.iter().map(|&p| relabel(t.left(gamma, p))).collect::<Result<Vec<_>, _>>()?;
        left.push(Perm::from_images(images)?);
    }
    let mut right = Vec::with_capacity(h.order());
    for &x in h.elements() {
        let images = points.iter().map(|&p| relabel(t.right(p, x))).collect::<Result<Vec<_>, _>>()?;
        right.push(Perm::from_images(images)?);
    }
    let torsor = validate_torsor(TorsorData {
        base: t.base().clone(),
        structure,
        size: points.len(),
        left,
        right,
        basepoint: relabel(t.basepoint())?,
    })?;
    Ok((torsor, embed))
}

/// The structure subgroup of the saturation: the `Γ`-stable closure of the cocycle values.
pub fn saturation_subgroup(t: &PointedTorsor) -> Subgroup {
    let cocycle = translation_cocycle(t);
    let mut seed = cocycle.values().to_vec();
    seed.sort_unstable();
    seed.dedup();
    Subgroup::closure(t.group().clone(), &seed, &t.structure().automorphisms())
        .expect("automorphisms of a validated étale group")
}

/// The minimal sub-triple containing the basepoint, with its inclusion.
pub fn saturate(t: &Arc<PointedTorsor>) -> Result<(Arc<PointedTorsor>, TorsorMorphism), TorsorError> {
    let h = saturation_subgroup(t);
    let mut points: Vec<usize> = h.elements().iter().map(|&x| t.right(t.basepoint(), x)).collect();
    points.sort_unstable();
    let (sub, embed) = restrict_to(t, &points, &h)?;
    let sub = Arc::new(sub);
    let inclusion = TorsorMorphism::new(sub.clone(), t.clone(), points, embed)?;
    Ok((sub, inclusion))
}

pub fn is_saturated(t: &PointedTorsor) -> bool {
    saturation_subgroup(t).is_full()
}

/// `T₁ ×_Q T₂` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub torsor: Arc<PointedTorsor>,
    pub first: TorsorMorphism,
    pub second: TorsorMorphism,
}

pub fn fiber_product(m1: &TorsorMorphism, m2: &TorsorMorphism) -> Result<FiberProduct, TorsorError> {
    if **m1.target() != **m2.target() {
        return Err(TorsorError::BaseMismatch("fibre product over different targets".into()));
    }
    let (t1, t2) = (m1.source().clone(), m2.source().clone());
    let (g1, g2) = (t1.group().clone(), t2.group().clone());
    let (f1, f2) = (m1.group_map(), m2.group_map());

    let pairs: Vec<(Elem, Elem)> = g1
        .elements()
        .flat_map(|x| g2.elements().filter(move |&y| f1.apply(x) == f2.apply(y)).map(move |y| (x, y)))
        .collect();
    let mut pair_id = vec![u32::MAX; g1.order() * g2.order()];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        pair_id[x * g2.order() + y] = i as u32;
    }
    let k = pairs.len();
    let mut table = Vec::with_capacity(k * k);
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            table.push(pair_id[g1.mul(a, c) * g2.order() + g2.mul(b, d)]);
        }
    }
    let identity = pair_id[g1.identity() * g2.order() + g2.identity()] as usize;
    let group = Arc::new(FiniteGroup::from_flat_table_unchecked(k, table, identity));
    let gamma = t1.structure().gamma().clone();
    let maps = gamma
        .elements()
        .map(|c| {
            Perm::from_raw(
                pairs
                    .iter()
                    .map(|&(x, y)| pair_id[t1.structure().act(c, x) * g2.order() + t2.structure().act(c, y)])
                    .collect(),
            )
        })
        .collect();
    let structure = Arc::new(EtaleGroup::new(AutAction::new(gamma, group.clone(), maps)?));

    let points: Vec<(usize, usize)> = (0..t1.size())
        .flat_map(|p| {
            let m2 = &m2;
            let q = m1.apply(p);
            (0..t2.size()).filter(move |&r| m2.apply(r) == q).map(move |r| (p, r))
        })
        .collect();
    let mut point_id: HashMap<(usize, usize), usize> = HashMap::with_capacity(points.len());
    for (i, &pr) in points.iter().enumerate() {
        point_id.insert(pr, i);
    }
    let lookup = |pr: (usize, usize)| point_id[&pr];
    let left = t1
        .base()
        .pi()
        .elements()
        .map(|c| Perm::from_raw(points.iter().map(|&(p, r)| lookup((t1.left(c, p), t2.left(c, r))) as u32).collect()))
        .collect();
    let right = pairs
        .iter()
        .map(|&(x, y)| {
            Perm::from_raw(points.iter().map(|&(p, r)| lookup((t1.right(p, x), t2.right(r, y))) as u32).collect())
        })
        .collect();
    let torsor = Arc::new(validate_torsor(TorsorData {
        base: t1.base().clone(),
        structure,
        size: points.len(),
        left,
        right,
        basepoint: lookup((t1.basepoint(), t2.basepoint())),
    })?);
    let pr1 = GroupHom::from_parts_unchecked(group.clone(), g1.clone(), pairs.iter().map(|&(x, _)| x).collect());
    let pr2 = GroupHom::from_parts_unchecked(group, g2.clone(), pairs.iter().map(|&(_, y)| y).collect());
    let first = TorsorMorphism::new(torsor.clone(), t1, points.iter().map(|&(p, _)| p).collect(), pr1)?;
    let second = TorsorMorphism::new(torsor.clone(), t2, points.iter().map(|&(_, r)| r).collect(), pr2)?;
    Ok(FiberProduct { torsor, first, second })
}

fn find(parent: &mut [u32], mut x: usize) -> usize {
    while parent[x] as usize != x {
        let next = parent[x] as usize;
        parent[x] = parent[next];
        x = next;
    }
    x
}

/// `P ×^G G′` along a `Γ`-equivariant `f: G → G′`, with the induced morphism.
pub fn contracted_product(
    t: &Arc<PointedTorsor>,
    f: &GroupHom,
    target: &Arc<EtaleGroup>,
) -> Result<(Arc<PointedTorsor>, TorsorMorphism), TorsorError> {
    if **f.source() != **t.group() || **f.target() != **target.group() {
        return Err(TorsorError::NotAMorphism("homomorphism between the wrong groups".into()));
    }
    if **target.gamma() != **t.base().gamma() {
        return Err(TorsorError::BaseMismatch("target group acted on by another Galois group".into()));
    }
    if let Some((gamma, g)) = t.structure().equivariance_failure(f, target) {
        return Err(TorsorError::NotEquivariant { gamma, g });
    }
    let h = target.group();
    let m = h.order();
    let id = |p: usize, y: Elem| p * m + y;
    let mut parent: Vec<u32> = (0..(t.size() * m) as u32).collect();
    for &g in t.group().generators() {
        let fg = f.apply(g);
        for p in 0..t.size() {
            for y in h.elements() {
                let a = find(&mut parent, id(t.right(p, g), y));
                let b = find(&mut parent, id(p, h.mul(fg, y)));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo as u32;
                }
            }
        }
    }
    let total = t.size() * m;
    let roots: Vec<usize> = (0..total).map(|x| find(&mut parent, x)).collect();
    let mut class = vec![usize::MAX; total];
    let mut reps = Vec::new();
    // roots are class minima, so scanning in order numbers classes by their minimal id
    for x in 0..total {
        if roots[x] == x {
            class[x] = reps.len();
            reps.push(x);
        }
    }
    let class_of = |x: usize| class[roots[x]];
    let left = t
        .base()
        .pi()
        .elements()
        .map(|c| {
            let image = t.base().project(c);
            let images =
                reps.iter().map(|&r| class_of(id(t.left(c, r / m), target.act(image, r % m)))).collect::<Vec<_>>();
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let right = h
        .elements()
        .map(|y| Perm::from_images(reps.iter().map(|&r| class_of(id(r / m, h.mul(r % m, y)))).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let torsor = Arc::new(validate_torsor(TorsorData {
        base: t.base().clone(),
        structure: target.clone(),
        size: reps.len(),
        left,
        right,
        basepoint: class_of(id(t.basepoint(), h.identity())),
    })?);
    let set_map = (0..t.size()).map(|p| class_of(id(p, h.identity()))).collect();
    let morphism = TorsorMorphism::new(t.clone(), torsor.clone(), set_map, f.clone())?;
    Ok((torsor, morphism))
}

/// `(P/H, G/H, [p₀])` with the projection morphism.
#[derive(Clone, Debug)]
pub struct QuotientTorsor {
    pub torsor: Arc<PointedTorsor>,
    pub projection: TorsorMorphism,
}

pub fn quotient_torsor(t: &Arc<PointedTorsor>, h: &Subgroup) -> Result<QuotientTorsor, TorsorError> {
    if **h.parent() != **t.group() {
        return Err(TorsorError::Group(GroupError::Mismatch("subgroup of another group".into())));
    }
    if let Some(Conjugation { g, h, conjugate }) = h.normality_witness() {
        return Err(TorsorError::NotNormal { g, h, conjugate });
    }
    let s = t.structure();
    for gamma in s.gamma().elements() {
        if let Some(&x) = h.elements().iter().find(|&&x| !h.contains(s.act(gamma, x))) {
            return Err(TorsorError::NotStable { gamma, h: x });
        }
    }
    let q = quotient_by_normal(h)?;
    let qg = q.group.clone();
    let maps = s
        .gamma()
        .elements()
        .map(|gamma| {
            Perm::from_raw(q.representatives.iter().map(|&r| q.projection.apply(s.act(gamma, r)) as u32).collect())
        })
        .collect();
    let structure = Arc::new(EtaleGroup::new(AutAction::new(s.gamma().clone(), qg.clone(), maps)?));
    let mut orbit = vec![usize::MAX; t.size()];
    let mut reps = Vec::new();
    for p in 0..t.size() {
        if orbit[p] == usize::MAX {
            for &x in h.elements() {
                orbit[t.right(p, x)] = reps.len();
            }
            reps.push(p);
        }
    }
    let left = t
        .base()
        .pi()
        .elements()
        .map(|c| Perm::from_images(reps.iter().map(|&p| orbit[t.left(c, p)]).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let right = q
        .representatives
        .iter()
        .map(|&r| Perm::from_images(reps.iter().map(|&p| orbit[t.right(p, r)]).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    let torsor = Arc::new(validate_torsor(TorsorData {
        base: t.base().clone(),
        structure,
        size: reps.len(),
        left,
        right,
        basepoint: orbit[t.basepoint()],
    })?);
    let projection = TorsorMorphism::new(t.clone(), torsor.clone(), orbit, q.projection.clone())?;
    Ok(QuotientTorsor { torsor, projection })
}

/// Base `(Γ′ = 1, Π̄)` of the geometric fibre.
pub fn geometric_base(base: &BaseDatum) -> (Arc<BaseDatum>, GroupHom) {
    let (pibar, embed) = base.geometric_subgroup().to_group();
    let trivial = Arc::new(FiniteGroup::trivial());
    let projection = GroupHom::trivial(pibar, trivial);
    (Arc::new(BaseDatum::new(projection)), embed)
}

/// Pull-back to the geometric fibre: left action restricted to `Π̄`, Galois action forgotten.
pub fn geometric_restriction(t: &PointedTorsor) -> Result<PointedTorsor, TorsorError> {
    let (base, embed) = geometric_base(t.base());
    let structure = Arc::new(EtaleGroup::constant(base.gamma().clone(), t.group().clone()));
    validate_torsor(TorsorData {
        base: base.clone(),
        structure,
        size: t.size(),
        left: base.pi().elements().map(|k| t.left_perm(embed.apply(k))).collect(),
        right: t.group().elements().map(|g| t.right_perm(g)).collect(),
        basepoint: t.basepoint(),
    })
}

#[derive(Clone, Debug)]
pub struct GeometricImage {
    /// `H̄ = {g : p₀·g ∈ Π̄·p₀}`.
    pub component_stabilizer: Subgroup,
    /// `Γ`-stable closure of `H̄`.
    pub image: Subgroup,
}

pub fn geometric_image(t: &PointedTorsor) -> GeometricImage {
    let mut hbar: Vec<Elem> =
        t.base().geometric_subgroup().elements().iter().map(|&k| t.coord(t.left(k, t.basepoint()))).collect();
    hbar.sort_unstable();
    hbar.dedup();
    let component_stabilizer =
        Subgroup::from_elements(t.group().clone(), hbar).expect("component stabilizer is the image of a homomorphism");
    let image = Subgroup::closure(t.group().clone(), component_stabilizer.elements(), &t.structure().automorphisms())
        .expect("automorphisms of a validated étale group");
    GeometricImage { component_stabilizer, image }
}

/// `Π`-orbits on the set, each sorted, ordered by minimal point.
pub fn components(t: &PointedTorsor) -> Vec<Vec<usize>> {
    let gens = t.base().pi().generators();
    let mut seen = vec![false; t.size()];
    let mut out = Vec::new();
    for start in 0..t.size() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for &s in gens {
                let q = t.left(s, p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

pub fn component_count(t: &PointedTorsor) -> usize {
    components(t).len()
}

pub fn is_connected(t: &PointedTorsor) -> bool {
    component_count(t) == 1
}

/// Why a torsor does not descend to the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentObstruction {
    /// `π` is not surjective, so there is no section level to descend to.
    BaseNotSurjective,
    /// A geometric monodromy element moves a point.
    Moves { gamma: Elem, point: usize },
}

#[derive(Clone, Debug)]
pub struct Descent {
    /// Triple over `Π = Γ`.
    pub torsor: Arc<PointedTorsor>,
    /// Its inflation back to the original base.
    pub inflated: Arc<PointedTorsor>,
    /// Isomorphism from the inflation to the input.
    pub witness: TorsorMorphism,
}

pub fn descend_if_geometrically_trivial(
    t: &Arc<PointedTorsor>,
) -> Result<Result<Descent, DescentObstruction>, TorsorError> {
    let base = t.base();
    if !base.is_geometrically_connected() {
        return Ok(Err(DescentObstruction::BaseNotSurjective));
    }
    for &k in base.geometric_subgroup().elements() {
        if let Some(point) = (0..t.size()).find(|&p| t.left(k, p) != p) {
            return Ok(Err(DescentObstruction::Moves { gamma: k, point }));
        }
    }
    let gamma = base.gamma().clone();
    let mut lift = vec![usize::MAX; gamma.order()];
    for x in base.pi().elements() {
        let c = base.project(x);
        if lift[c] == usize::MAX {
            lift[c] = x;
        }
    }
    let field = Arc::new(BaseDatum::over_field(gamma.clone()));
    let mut data = t.data();
    data.base = field.clone();
    data.left = gamma.elements().map(|c| t.left_perm(lift[c])).collect();
    let descended = Arc::new(validate_torsor(data)?);
    let inflated = Arc::new(inflate(base, &descended)?);
    let witness = TorsorMorphism::new(
        inflated.clone(),
        t.clone(),
        (0..t.size()).collect(),
        GroupHom::identity(t.group().clone()),
    )?;
    Ok(Ok(Descent { torsor: descended, inflated, witness }))
}

/// Pull-back of a field-level triple along the structure map of `base`.
pub fn inflate(base: &Arc<BaseDatum>, t: &PointedTorsor) -> Result<PointedTorsor, TorsorError> {
    if !t.base().is_field() {
        return Err(TorsorError::BaseMismatch("inflation needs a triple over the base field".into()));
    }
    if **t.base().gamma() != **base.gamma() {
        return Err(TorsorError::BaseMismatch("different Galois groups".into()));
    }
    let mut data = t.data();
    data.base = base.clone();
    data.left = base.pi().elements().map(|x| t.left_perm(base.project(x))).collect();
    validate_torsor(data)
}

/// All morphisms `t1 → t2`.
///
/// A morphism is determined by its group part `f`, which must be a `Γ`-equivariant
/// homomorphism with `f(t¹_γ) = t²_γ` for every `γ ∈ Π`.
pub fn hom_set(t1: &Arc<PointedTorsor>, t2: &Arc<PointedTorsor>) -> Result<Vec<TorsorMorphism>, TorsorError> {
    if !same_base(t1.base(), t2.base()) {
        return Err(TorsorError::BaseMismatch("hom set between torsors over different bases".into()));
    }
    let (c1, c2) = (translation_cocycle(t1), translation_cocycle(t2));
    let (s1, s2) = (t1.structure(), t2.structure());
    let mut fixed: Vec<(Elem, Elem)> = Vec::new();
    let mut forced: HashMap<Elem, Elem> = HashMap::new();
    for gamma in s1.gamma().elements() {
        for x in t1.base().pi().elements() {
            let (a, b) = (s1.act(gamma, c1.at(x)), s2.act(gamma, c2.at(x)));
            match forced.insert(a, b) {
                Some(old) if old != b => return Ok(Vec::new()),
                Some(_) => {}
                None => fixed.push((a, b)),
            }
        }
    }
    let homs = enumerate_homs(t1.group(), t2.group(), &fixed, |f| s1.equivariance_failure(f, s2).is_none());
    homs.into_iter().map(|f| TorsorMorphism::from_group_map(t1.clone(), t2.clone(), f)).collect()
}

/// An isomorphism `t1 → t2`, if one exists.
pub fn torsor_isomorphism(
    t1: &Arc<PointedTorsor>,
    t2: &Arc<PointedTorsor>,
) -> Result<Option<TorsorMorphism>, TorsorError> {
    if !same_base(t1.base(), t2.base()) || t1.size() != t2.size() {
        return Ok(None);
    }
    if find_isomorphism(t1.group(), t2.group()).is_none() {
        return Ok(None);
    }
    Ok(hom_set(t1, t2)?.into_iter().find(TorsorMorphism::is_isomorphism))
}

#[derive(Clone, Debug)]
pub enum DescentCheck {
    Descends,
    Obstructed(DescentObstruction),
    /// The quotient needs a normal image.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub image: GeometricImage,
    /// `None` when the geometric image is normal.
    pub normality_witness: Option<Conjugation>,
    pub descent: DescentCheck,
}

impl ExactnessReport {
    pub fn normality_ok(&self) -> bool {
        self.normality_witness.is_none()
    }

    pub fn descent_ok(&self) -> bool {
        matches!(self.descent, DescentCheck::Descends)
    }
}

/// Conditions (i) and (ii) for middle exactness on a saturated triple.
pub fn check_exactness_conditions(t: &Arc<PointedTorsor>) -> Result<ExactnessReport, TorsorError> {
    if !is_saturated(t) {
        return Err(TorsorError::NotSaturated);
    }
    let image = geometric_image(t);
    let normality_witness = image.image.normality_witness();
    let descent = if normality_witness.is_some() {
        DescentCheck::Skipped
    } else {
        let q = quotient_torsor(t, &image.image)?;
        match descend_if_geometrically_trivial(&q.torsor)? {
            Ok(_) => DescentCheck::Descends,
            Err(o) => DescentCheck::Obstructed(o),
        }
    };
    Ok(ExactnessReport { image, normality_witness, descent })
}

/// The final object `({e}, {1}, e)` over a base.
pub fn trivial_torsor(base: &Arc<BaseDatum>) -> PointedTorsor {
    let structure = Arc::new(EtaleGroup::constant(base.gamma().clone(), Arc::new(FiniteGroup::trivial())));
    PointedTorsor::from_crossed_hom(base.clone(), structure, &vec![0; base.pi().order()])
        .expect("the trivial triple is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::semidirect_product;
    use crate::torsor::{PointedTorsor, TorsorGenerators};

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    /// `Γ = Π = ℤ/2`, `G = ℤ/n` with inversion, `t_σ = 1`.
    fn real(n: usize) -> Arc<PointedTorsor> {
        let gamma = z(2);
        let base = Arc::new(BaseDatum::over_field(gamma.clone()));
        let s = Arc::new(EtaleGroup::new(AutAction::inversion(gamma, z(n)).unwrap()));
        Arc::new(PointedTorsor::from_crossed_hom(base, s, &[0, 1 % n]).unwrap())
    }

    fn constant(base: &Arc<BaseDatum>, g: Arc<FiniteGroup>, values: &[Elem]) -> Arc<PointedTorsor> {
        let s = Arc::new(EtaleGroup::constant(base.gamma().clone(), g));
        Arc::new(PointedTorsor::from_crossed_hom(base.clone(), s, values).unwrap())
    }

    #[test]
    fn trivial_cocycle_and_saturation() {
        let base = Arc::new(BaseDatum::over_field(z(2)));
        let t = constant(&base, z(3), &[0, 0]);
        assert!(translation_cocycle(&t).values().iter().all(|&v| v == 0));
        let (sat, inc) = saturate(&t).unwrap();
        assert_eq!(sat.size(), 1);
        assert_eq!(sat.group().order(), 1);
        assert_eq!(inc.apply(0), t.basepoint());
        assert!(!is_saturated(&t));
        assert!(!is_connected(&t));
        assert_eq!(component_count(&t), 3);
    }

    #[test]
    fn real_torsors_are_saturated() {
        for n in 1..=8 {
            let t = real(n);
            assert!(is_saturated(&t));
            let c = translation_cocycle(&t);
            assert!(c.law_violation(&t).is_none());
            let a = c.at(1);
            assert_eq!(t.group().mul(a, t.structure().act(1, a)), 0);
        }
    }

    #[test]
    fn saturate_is_idempotent() {
        let base = Arc::new(BaseDatum::over_field(z(2)));
        let t = constant(&base, z(4), &[0, 2]);
        let (s1, _) = saturate(&t).unwrap();
        assert_eq!(s1.group().order(), 2);
        let (s2, _) = saturate(&s1).unwrap();
        assert_eq!(*s1, *s2);
    }

    #[test]
    fn fiber_product_over_final_object() {
        let a = real(2);
        let b = real(3);
        let fin = Arc::new(trivial_torsor(a.base()));
        let m1 = hom_set(&a, &fin).unwrap();
        let m2 = hom_set(&b, &fin).unwrap();
        assert_eq!((m1.len(), m2.len()), (1, 1));
        let fp = fiber_product(&m1[0], &m2[0]).unwrap();
        assert_eq!(fp.torsor.size(), 6);
        assert_eq!(fp.torsor.group().order(), 6);
    }

    #[test]
    fn diagonal_fiber_product() {
        let t = real(4);
        let id = TorsorMorphism::identity(t.clone());
        let fp = fiber_product(&id, &id).unwrap();
        assert!(torsor_isomorphism(&fp.torsor, &t).unwrap().is_some());
    }

    #[test]
    fn contracted_product_along_identity_and_collapse() {
        let t = real(5);
        let (same, _) = contracted_product(&t, &GroupHom::identity(t.group().clone()), t.structure()).unwrap();
        assert!(torsor_isomorphism(&same, &t).unwrap().is_some());
        let one = Arc::new(EtaleGroup::constant(z(2), z(1)));
        let (triv, m) = contracted_product(&t, &GroupHom::trivial(t.group().clone(), z(1)), &one).unwrap();
        assert_eq!(triv.size(), 1);
        assert_eq!(m.apply(3), 0);
    }

    #[test]
    fn contracted_rejects_non_equivariant() {
        // ℤ/3 with inversion → constant ℤ/3 by the identity is not equivariant
        let t = real(3);
        let target = Arc::new(EtaleGroup::constant(z(2), z(3)));
        let err = contracted_product(&t, &GroupHom::identity(z(3)), &target).unwrap_err();
        assert!(matches!(err, TorsorError::NotEquivariant { .. }));
    }

    #[test]
    fn quotient_matches_contracted_product() {
        let t = real(6);
        let h = Subgroup::generated(t.group().clone(), &[3]);
        let q = quotient_torsor(&t, &h).unwrap();
        assert_eq!(q.torsor.size(), 3);
        let (c, _) = contracted_product(&t, q.projection.group_map(), q.torsor.structure()).unwrap();
        assert_eq!(*c, *q.torsor);
        let full = quotient_torsor(&t, &Subgroup::full(t.group().clone())).unwrap();
        assert_eq!(full.torsor.size(), 1);
        let same = quotient_torsor(&t, &Subgroup::trivial(t.group().clone())).unwrap();
        assert!(torsor_isomorphism(&same.torsor, &t).unwrap().is_some());
    }

    #[test]
    fn real_hom_sets_follow_divisibility() {
        for n in 1..=6 {
            for m in 1..=6 {
                let homs = hom_set(&real(n), &real(m)).unwrap();
                assert_eq!(!homs.is_empty(), n % m == 0, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn final_object() {
        let t = real(4);
        let fin = Arc::new(trivial_torsor(t.base()));
        assert_eq!(hom_set(&t, &fin).unwrap().len(), 1);
        assert_eq!(hom_set(&fin, &t).unwrap().len(), 0);
        let base = t.base().clone();
        let fixed = constant(&base, z(3), &[0, 0]);
        let from_final = hom_set(&fin, &fixed).unwrap();
        assert_eq!(from_final.len(), 1);
    }

    #[test]
    fn geometric_operations_over_field() {
        let t = real(4);
        let g = geometric_restriction(&t).unwrap();
        assert_eq!(g.base().pi().order(), 1);
        assert_eq!(component_count(&g), 4);
        assert!(geometric_image(&t).image.is_trivial());
        let d = descend_if_geometrically_trivial(&t).unwrap().unwrap();
        assert_eq!(*d.torsor, *t);
        let report = check_exactness_conditions(&t).unwrap();
        assert!(report.normality_ok() && report.descent_ok());
    }

    #[test]
    fn inflate_and_descend_round_trip() {
        // Π = ℤ/4 ↠ Γ = ℤ/2
        let pi = z(4);
        let proj = GroupHom::new(pi.clone(), z(2), vec![0, 1, 0, 1]).unwrap();
        let base = Arc::new(BaseDatum::new(proj));
        let t = real(3);
        let inflated = Arc::new(inflate(&base, &t).unwrap());
        assert!(is_saturated(&inflated));
        assert!(geometric_image(&inflated).image.is_trivial());
        let d = descend_if_geometrically_trivial(&inflated).unwrap().unwrap();
        assert_eq!(*d.torsor, *t);
        assert!(d.witness.is_isomorphism());
    }

    #[test]
    fn non_trivial_geometric_monodromy_blocks_descent() {
        // Π = ℤ/2 × ℤ/2 → Γ = ℤ/2 second factor, G = ℤ/2 constant, first factor flips
        let pi = Arc::new(FiniteGroup::direct_product(&z(2), &z(2)).unwrap());
        let proj = GroupHom::new(pi.clone(), z(2), vec![0, 1, 0, 1]).unwrap();
        let base = Arc::new(BaseDatum::new(proj));
        let t = constant(&base, z(2), &[0, 0, 1, 1]);
        assert!(is_connected(&t));
        match descend_if_geometrically_trivial(&t).unwrap() {
            Err(DescentObstruction::Moves { gamma, .. }) => assert_eq!(gamma, 2),
            other => panic!("{other:?}"),
        }
        let gi = geometric_image(&t);
        assert!(gi.image.is_full());
        assert_eq!(component_count(&geometric_restriction(&t).unwrap()), 1);
    }

    #[test]
    fn from_generators_reports_relation_failures() {
        let gamma = z(3);
        let base = Arc::new(BaseDatum::over_field(gamma.clone()));
        let s = Arc::new(EtaleGroup::constant(gamma, z(2)));
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let err = PointedTorsor::from_generators(TorsorGenerators {
            base,
            structure: s,
            size: 2,
            left: vec![(1, swap.clone())],
            right: vec![(1, swap)],
            basepoint: 0,
        })
        .unwrap_err();
        assert!(matches!(err, TorsorError::IncompatibleTwist(crate::error::TwistWitness::Relation { .. })));
    }

    #[test]
    fn validation_rejections() {
        let base = Arc::new(BaseDatum::over_field(z(2)));
        let s = Arc::new(EtaleGroup::constant(z(2), z(2)));
        let id3 = Perm::identity(3);
        let err = validate_torsor(TorsorData {
            base: base.clone(),
            structure: s.clone(),
            size: 3,
            left: vec![id3.clone(), id3.clone()],
            right: vec![id3.clone(), Perm::from_images(vec![1, 0, 2]).unwrap()],
            basepoint: 0,
        })
        .unwrap_err();
        assert!(matches!(err, TorsorError::NotSimplyTransitive(_)));
        // left action that does not commute with the constant right action
        let d = semidirect_product(&AutAction::inversion(z(2), z(3)).unwrap()).unwrap().group;
        let s6 = Arc::new(EtaleGroup::constant(z(2), d.clone()));
        let right: Vec<Perm> =
            d.elements().map(|x| Perm::from_images(d.elements().map(|p| d.mul(p, x)).collect()).unwrap()).collect();
        let r = d.generators()[0];
        let left_map = Perm::from_images(d.elements().map(|p| d.mul(p, r)).collect()).unwrap();
        let err = validate_torsor(TorsorData {
            base,
            structure: s6,
            size: 6,
            left: vec![Perm::identity(6), left_map],
            right,
            basepoint: 0,
        });
        assert!(matches!(err, Err(TorsorError::IncompatibleTwist(_)) | Err(TorsorError::NotAnAction { .. })));
    }
}
