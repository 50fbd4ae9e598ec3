//! Subgroups, stable closures, normality and quotients.

use std::sync::Arc;

use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::Elem;

/// A subgroup of `parent`, stored as a sorted id list with a membership mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<Elem>,
    member: Vec<bool>,
}

/// A conjugation `g h g⁻¹ = conjugate` leaving a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conjugation {
    pub g: Elem,
    pub h: Elem,
    pub conjugate: Elem,
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(parent: Arc<FiniteGroup>, elements: Vec<Elem>) -> Self {
        let mut member = vec![false; parent.order()];
        for &x in &elements {
            member[x] = true;
        }
        Subgroup { parent, elements, member }
    }

    /// Checks closure under products and inverses.
    pub fn from_elements(parent: Arc<FiniteGroup>, mut elements: Vec<Elem>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&x) = elements.iter().find(|&&x| x >= parent.order()) {
            return Err(GroupError::NotSubgroup(format!("element {x} out of range")));
        }
        let s = Self::from_sorted_unchecked(parent, elements);
        let g = &s.parent;
        if !s.member[g.identity()] {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        for &a in &s.elements {
            if !s.member[g.inv(a)] {
                return Err(GroupError::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &s.elements {
                if !s.member[g.mul(a, b)] {
                    return Err(GroupError::NotSubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        Ok(s)
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let e = parent.identity();
        Self::from_sorted_unchecked(parent, vec![e])
    }

    pub fn full(parent: Arc<FiniteGroup>) -> Self {
        let all = parent.elements().collect();
        Self::from_sorted_unchecked(parent, all)
    }

    pub fn generated(parent: Arc<FiniteGroup>, seed: &[Elem]) -> Self {
        let elems = parent.generated_by(seed);
        Self::from_sorted_unchecked(parent, elems)
    }

    /// The smallest subgroup containing `seed` and stable under every automorphism in
    /// `stabilizers` (each given as a permutation of the parent's ids).
    ///
    /// Fixpoint: generate, push the generators through the automorphisms, repeat until
    /// no new generator appears. Applying an automorphism to a generating set generates
    /// the image subgroup, so this reaches the stable closure.
    pub fn closure(parent: Arc<FiniteGroup>, seed: &[Elem], stabilizers: &[Perm]) -> Result<Self, GroupError> {
        if let Some(&x) = seed.iter().find(|&&x| x >= parent.order()) {
            return Err(GroupError::OutOfRange { row: x, col: 0, value: x });
        }
        if let Some(p) = stabilizers.iter().find(|p| p.len() != parent.order()) {
            return Err(GroupError::Mismatch(format!(
                "automorphism on {} points for a group of order {}",
                p.len(),
                parent.order()
            )));
        }
        let mut gens: Vec<Elem> = seed.to_vec();
        gens.sort_unstable();
        gens.dedup();
        loop {
            let current = Self::generated(parent.clone(), &gens);
            let mut fresh: Vec<Elem> = Vec::new();
            for &g in &gens {
                for a in stabilizers {
                    let y = a.apply(g);
                    if !current.contains(y) && !fresh.contains(&y) {
                        fresh.push(y);
                    }
                }
            }
            if fresh.is_empty() {
                return Ok(current);
            }
            gens.extend(fresh);
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.member[x]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_stable_under(&self, automorphism: &Perm) -> bool {
        self.elements.iter().all(|&x| self.member[automorphism.apply(x)])
    }

    /// The first conjugator among `candidates` that moves some element out of `self`.
    pub fn normality_witness_among(&self, candidates: impl IntoIterator<Item = Elem>) -> Option<Conjugation> {
        for g in candidates {
            for &h in &self.elements {
                let c = self.parent.conjugate(g, h);
                if !self.member[c] {
                    return Some(Conjugation { g, h, conjugate: c });
                }
            }
        }
        None
    }

    /// `None` iff normal. Conjugating by a generating set suffices for a finite subgroup.
    pub fn normality_witness(&self) -> Option<Conjugation> {
        self.normality_witness_among(self.parent.generators().to_vec())
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// The subgroup as a group in its own right; its id `i` is the `i`-th smallest
    /// parent id. Returns the embedding into the parent.
    pub fn to_group(&self) -> (Arc<FiniteGroup>, GroupHom) {
        let k = self.order();
        let mut local = vec![u32::MAX; self.parent.order()];
        for (i, &x) in self.elements.iter().enumerate() {
            local[x] = i as u32;
        }
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.elements {
            for &b in &self.elements {
                table.push(local[self.parent.mul(a, b)]);
            }
        }
        let identity = local[self.parent.identity()] as usize;
        let group = Arc::new(FiniteGroup::from_flat_table_unchecked(k, table, identity));
        let embed = GroupHom::from_parts_unchecked(group.clone(), self.parent.clone(), self.elements.clone());
        (group, embed)
    }

    /// Position of a parent id inside [`Subgroup::to_group`]'s numbering.
    pub fn local_id(&self, x: Elem) -> Option<Elem> {
        self.elements.binary_search(&x).ok()
    }
}

/// `G/N` with the canonical surjection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    pub projection: GroupHom,
    /// Minimal parent id of each coset, indexed by quotient id.
    pub representatives: Vec<Elem>,
}

/// Quotient by a normal subgroup; cosets are numbered by their minimal element.
pub fn quotient_by_normal(normal: &Subgroup) -> Result<Quotient, GroupError> {
    if let Some(w) = normal.normality_witness() {
        return Err(GroupError::NotNormal { g: w.g, h: w.h, conjugate: w.conjugate });
    }
    let g = normal.parent();
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &n in normal.elements() {
            coset[g.mul(x, n)] = id;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[g.mul(a, b)] as u32);
        }
    }
    let group = Arc::new(FiniteGroup::from_flat_table_unchecked(k, table, coset[g.identity()]));
    let projection = GroupHom::from_parts_unchecked(g.clone(), group.clone(), coset);
    Ok(Quotient { group, projection, representatives: reps })
}
