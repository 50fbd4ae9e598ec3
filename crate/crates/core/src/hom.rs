//! Group homomorphisms between [`FiniteGroup`]s.

use std::sync::Arc;

use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::subgroup::Subgroup;
use crate::Elem;

const UNSET: u32 = u32::MAX;

/// A validated homomorphism `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<u32>,
}

impl GroupHom {
    /// Validates a full image table.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<Elem>) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::Mismatch(format!(
                "image table has {} entries for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(pos) = images.iter().position(|&y| y >= target.order()) {
            return Err(GroupError::OutOfRange { row: pos, col: 0, value: images[pos] });
        }
        // f(xs) = f(x) f(s) for all x and generators s implies f is a homomorphism
        for &s in source.generators() {
            for x in source.elements() {
                if images[source.mul(x, s)] != target.mul(images[x], images[s]) {
                    return Err(GroupError::NotAHomomorphism { x, y: s });
                }
            }
        }
        if images[source.identity()] != target.identity() {
            return Err(GroupError::NotAHomomorphism { x: source.identity(), y: source.identity() });
        }
        Ok(Self::from_parts_unchecked(source, target, images))
    }

    pub(crate) fn from_parts_unchecked(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, images: Vec<Elem>) -> Self {
        GroupHom { source, target, images: images.into_iter().map(|x| x as u32).collect() }
    }

    /// Extends `(element, image)` pairs to a homomorphism. The elements must generate
    /// the source; conflicts mean the images violate a relation.
    pub fn from_generator_images(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        assignments: &[(Elem, Elem)],
    ) -> Result<Self, GroupError> {
        let images = extend_assignments(&source, &target, assignments)?;
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let images = group.elements().collect();
        Self::from_parts_unchecked(group.clone(), group, images)
    }

    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let e = target.identity();
        let images = vec![e; source.order()];
        Self::from_parts_unchecked(source, target, images)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<Elem> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if *self.target != *other.source {
            return Err(GroupError::Mismatch("composition of non-adjacent homomorphisms".into()));
        }
        let images = self.images.iter().map(|&x| other.apply(x as usize)).collect();
        Ok(Self::from_parts_unchecked(self.source.clone(), other.target.clone(), images))
    }

    pub fn is_injective(&self) -> bool {
        let e = self.target.identity() as u32;
        self.images.iter().filter(|&&y| y == e).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.images {
            hit[y as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// `(image in target, kernel in source)`.
    pub fn image_kernel(&self) -> (Subgroup, Subgroup) {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.images {
            hit[y as usize] = true;
        }
        let image: Vec<Elem> = (0..hit.len()).filter(|&y| hit[y]).collect();
        let e = self.target.identity();
        let kernel: Vec<Elem> = self.source.elements().filter(|&x| self.apply(x) == e).collect();
        (
            Subgroup::from_sorted_unchecked(self.target.clone(), image),
            Subgroup::from_sorted_unchecked(self.source.clone(), kernel),
        )
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0usize; self.target.order()];
        for x in self.source.elements() {
            inv[self.apply(x)] = x;
        }
        Some(Self::from_parts_unchecked(self.target.clone(), self.source.clone(), inv))
    }
}

/// Picks extra generators so that `fixed` together with them generates `group`.
fn complete_generating_set(group: &FiniteGroup, fixed: &[Elem]) -> Vec<Elem> {
    let mut extra = Vec::new();
    let mut seed: Vec<Elem> = fixed.to_vec();
    let mut reached = group.generated_by(&seed);
    if reached.len() == group.order() {
        return extra;
    }
    // prefer the canonical generators, then anything missing
    for &g in group.generators().iter().chain(group.elements().collect::<Vec<_>>().iter()) {
        if reached.binary_search(&g).is_ok() {
            continue;
        }
        extra.push(g);
        seed.push(g);
        reached = group.generated_by(&seed);
        if reached.len() == group.order() {
            break;
        }
    }
    extra
}

/// BFS extension of generator images over the Cayley graph of `source`.
pub(crate) fn extend_assignments(
    source: &FiniteGroup,
    target: &FiniteGroup,
    assignments: &[(Elem, Elem)],
) -> Result<Vec<u32>, GroupError> {
    for &(x, y) in assignments {
        if x >= source.order() || y >= target.order() {
            return Err(GroupError::OutOfRange { row: x, col: 0, value: y });
        }
    }
    let mut map = vec![UNSET; source.order()];
    map[source.identity()] = target.identity() as u32;
    let mut queue = vec![source.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[x] as usize;
        for &(s, img) in assignments {
            let y = source.mul(x, s);
            let v = target.mul(fx, img) as u32;
            if map[y] == UNSET {
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return Err(GroupError::InconsistentImages { element: y });
            }
        }
        i += 1;
    }
    if queue.len() != source.order() {
        return Err(GroupError::NotGenerating);
    }
    Ok(map)
}

/// All homomorphisms `source → target` extending the `fixed` assignments and accepted
/// by `keep`, in lexicographic order of the free generator images.
pub fn enumerate_homs(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    fixed: &[(Elem, Elem)],
    mut keep: impl FnMut(&GroupHom) -> bool,
) -> Vec<GroupHom> {
    let fixed_elems: Vec<Elem> = fixed.iter().map(|&(x, _)| x).collect();
    let free = complete_generating_set(source, &fixed_elems);
    let candidates: Vec<Vec<Elem>> = free
        .iter()
        .map(|&s| {
            let ord = source.element_order(s);
            target.elements().filter(|&y| ord.is_multiple_of(target.element_order(y))).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; free.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut assignments: Vec<(Elem, Elem)> = fixed.to_vec();
    loop {
        assignments.truncate(fixed.len());
        assignments.extend(free.iter().zip(&choice).enumerate().map(|(k, (&s, &c))| (s, candidates[k][c])));
        if let Ok(images) = extend_assignments(source, target, &assignments) {
            let hom = GroupHom { source: source.clone(), target: target.clone(), images };
            if keep(&hom) {
                out.push(hom);
            }
        }
        // odometer
        let mut k = free.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Some isomorphism `a → b`, searched over generator images with order pruning.
pub fn find_isomorphism(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Option<GroupHom> {
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() || a.center().len() != b.center().len() {
        return None;
    }
    let mut ord_a = vec![0usize; a.order() + 1];
    let mut ord_b = vec![0usize; b.order() + 1];
    for x in a.elements() {
        ord_a[a.element_order(x)] += 1;
    }
    for y in b.elements() {
        ord_b[b.element_order(y)] += 1;
    }
    if ord_a != ord_b {
        return None;
    }
    let mut found = None;
    enumerate_homs(a, b, &[], |h| {
        if found.is_none() && h.is_isomorphism() {
            found = Some(h.clone());
        }
        false
    });
    found
}

pub fn are_isomorphic(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    find_isomorphism(a, b).is_some()
}
