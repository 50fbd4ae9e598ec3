//! Saturated triples up to isomorphism, the inverse system they form, and its limit.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::action::{semidirect_product, AutAction};
use crate::error::{GroupError, SystemError};
use crate::group::{lcm, FiniteGroup, MAX_ORDER};
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::subgroup::Subgroup;
use crate::torsor::{hom_set, torsor_isomorphism, BaseDatum, EtaleGroup, PointedTorsor, TorsorMorphism};
use crate::Elem;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Arc<EtaleGroup>,
}

/// A finite window of candidate structure groups over a base.
#[derive(Clone, Debug)]
pub struct TorsorCatalog {
    base: Arc<BaseDatum>,
    entries: Vec<CatalogEntry>,
    max_order: usize,
}

impl TorsorCatalog {
    pub fn new(base: Arc<BaseDatum>, max_order: usize) -> Self {
        TorsorCatalog { base, entries: Vec::new(), max_order }
    }

    pub fn register(&mut self, name: impl Into<String>, group: Arc<EtaleGroup>) -> Result<(), SystemError> {
        let order = group.group().order();
        if order > self.max_order {
            return Err(SystemError::BoundExceeded { order, bound: self.max_order });
        }
        if **group.gamma() != **self.base.gamma() {
            return Err(SystemError::ContextMismatch("group is acted on by another Galois group".into()));
        }
        self.entries.push(CatalogEntry { name: name.into(), group });
        Ok(())
    }

    /// Constant groups: cyclic, products `ℤ/a × ℤ/b` with `a | b`, dihedral.
    pub fn constant_groups(base: Arc<BaseDatum>, max_order: usize) -> Self {
        let gamma = base.gamma().clone();
        let mut cat = TorsorCatalog::new(base, max_order);
        let constant = |g: FiniteGroup| Arc::new(EtaleGroup::constant(gamma.clone(), Arc::new(g)));
        for n in 1..=max_order {
            cat.entries.push(CatalogEntry { name: format!("Z/{n}"), group: constant(FiniteGroup::cyclic(n)) });
        }
        for a in 2..=max_order {
            for b in (a..=max_order / a).filter(|b| b % a == 0) {
                let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(a), &FiniteGroup::cyclic(b)).unwrap();
                cat.entries.push(CatalogEntry { name: format!("Z/{a}xZ/{b}"), group: constant(g) });
            }
        }
        for n in (3..).take_while(|n| 2 * n <= max_order) {
            let d = dihedral(n);
            cat.entries.push(CatalogEntry { name: format!("D{n}"), group: constant((*d).clone()) });
        }
        cat
    }

    /// `ℤ/n` for `n ≤ max_order`, with `γ` acting by inversion when `sign(γ)` is nontrivial.
    pub fn cyclic_with_inversion(base: Arc<BaseDatum>, max_order: usize, sign: &GroupHom) -> Result<Self, SystemError> {
        if **sign.source() != **base.gamma() || sign.target().order() != 2 {
            return Err(SystemError::ContextMismatch("sign must be a map Γ → ℤ/2".into()));
        }
        let gamma = base.gamma().clone();
        let mut cat = TorsorCatalog::new(base, max_order);
        for n in 1..=max_order {
            let g = Arc::new(FiniteGroup::cyclic(n));
            let inv = Perm::from_images(g.elements().map(|x| g.inv(x)).collect())?;
            let id = Perm::identity(n);
            let maps = gamma
                .elements()
                .map(|c| if sign.apply(c) == sign.target().identity() { id.clone() } else { inv.clone() })
                .collect();
            let action = AutAction::new(gamma.clone(), g, maps)?;
            cat.entries.push(CatalogEntry { name: format!("mu{n}"), group: Arc::new(EtaleGroup::new(action)) });
        }
        Ok(cat)
    }

    pub fn base(&self) -> &Arc<BaseDatum> {
        &self.base
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }
}

pub(crate) fn dihedral(n: usize) -> Arc<FiniteGroup> {
    let act = AutAction::inversion(Arc::new(FiniteGroup::cyclic(2)), Arc::new(FiniteGroup::cyclic(n))).unwrap();
    semidirect_product(&act).unwrap().group
}

/// All crossed homomorphisms `Π → G`, each given on every element of `Π`.
pub fn crossed_homs(base: &BaseDatum, g: &EtaleGroup) -> Vec<Vec<Elem>> {
    let pi = base.pi();
    let gens = pi.generators().to_vec();
    let grp = g.group();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(values) = extend_crossed(base, g, &gens, &choice) {
            out.push(values);
        }
        let mut k = gens.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < grp.order() {
                break;
            }
            choice[k] = 0;
        }
    }
}

fn extend_crossed(base: &BaseDatum, g: &EtaleGroup, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let pi = base.pi();
    let grp = g.group();
    let mut values = vec![usize::MAX; pi.order()];
    values[pi.identity()] = grp.identity();
    let mut queue = vec![pi.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &ts) in gens.iter().zip(images) {
            let y = pi.mul(x, s);
            let v = grp.mul(values[x], g.act(base.project(x), ts));
            if values[y] == usize::MAX {
                values[y] = v;
                queue.push(y);
            } else if values[y] != v {
                return None;
            }
        }
        i += 1;
    }
    Some(values)
}

#[derive(Clone, Debug)]
pub struct SaturatedTriple {
    /// Catalog entry the structure group came from.
    pub entry: String,
    pub torsor: Arc<PointedTorsor>,
}

/// Saturated triples with structure group in the catalog, up to isomorphism.
pub fn enumerate_saturated(catalog: &TorsorCatalog) -> Result<Vec<SaturatedTriple>, SystemError> {
    let base = catalog.base().clone();
    let per_entry: Vec<Result<Vec<SaturatedTriple>, SystemError>> = catalog
        .entries()
        .par_iter()
        .map(|entry| {
            let mut found: Vec<SaturatedTriple> = Vec::new();
            for values in crossed_homs(&base, &entry.group) {
                let closure = Subgroup::closure(entry.group.group().clone(), &values, &entry.group.automorphisms())?;
                if !closure.is_full() {
                    continue;
                }
                let t = Arc::new(PointedTorsor::from_crossed_hom(base.clone(), entry.group.clone(), &values)?);
                if !is_new(&found, &t)? {
                    continue;
                }
                found.push(SaturatedTriple { entry: entry.name.clone(), torsor: t });
            }
            Ok(found)
        })
        .collect();
    let mut out: Vec<SaturatedTriple> = Vec::new();
    for batch in per_entry {
        for triple in batch? {
            if is_new(&out, &triple.torsor)? {
                out.push(triple);
            }
        }
    }
    Ok(out)
}

fn is_new(found: &[SaturatedTriple], t: &Arc<PointedTorsor>) -> Result<bool, SystemError> {
    for other in found {
        if torsor_isomorphism(&other.torsor, t)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct SystemNode {
    pub name: String,
    pub torsor: Arc<PointedTorsor>,
}

#[derive(Clone, Debug)]
pub struct SystemEdge {
    pub source: usize,
    pub target: usize,
    pub morphism: TorsorMorphism,
}

/// Nodes with every morphism between distinct nodes.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    base: Arc<BaseDatum>,
    nodes: Vec<SystemNode>,
    edges: Vec<SystemEdge>,
    bound: usize,
}

impl InverseSystem {
    pub fn new(base: Arc<BaseDatum>, nodes: Vec<SystemNode>, bound: usize) -> Result<Self, SystemError> {
        for n in &nodes {
            if **n.torsor.base() != *base {
                return Err(SystemError::ContextMismatch(format!("node {} is over another base", n.name)));
            }
        }
        let pairs: Vec<(usize, usize)> =
            (0..nodes.len()).flat_map(|i| (0..nodes.len()).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let found: Vec<Result<Vec<SystemEdge>, SystemError>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                Ok(hom_set(&nodes[i].torsor, &nodes[j].torsor)?
                    .into_iter()
                    .map(|morphism| SystemEdge { source: i, target: j, morphism })
                    .collect())
            })
            .collect();
        let mut edges = Vec::new();
        for batch in found {
            edges.extend(batch?);
        }
        Ok(InverseSystem { base, nodes, edges, bound })
    }

    pub fn from_catalog(catalog: &TorsorCatalog) -> Result<Self, SystemError> {
        let nodes =
            enumerate_saturated(catalog)?.into_iter().map(|t| SystemNode { name: t.entry, torsor: t.torsor }).collect();
        Self::new(catalog.base().clone(), nodes, catalog.max_order())
    }

    pub fn base(&self) -> &Arc<BaseDatum> {
        &self.base
    }

    pub fn nodes(&self) -> &[SystemNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[SystemEdge] {
        &self.edges
    }

    /// Order bound at which the system was truncated.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn edge(&self, source: usize, target: usize) -> Option<&SystemEdge> {
        self.edges.iter().find(|e| e.source == source && e.target == target)
    }

    /// Subsystem on the listed nodes, keeping their edges.
    pub fn restrict(&self, keep: &[usize]) -> InverseSystem {
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        for (k, &i) in keep.iter().enumerate() {
            new_id[i] = k;
        }
        let nodes = keep.iter().map(|&i| self.nodes[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| new_id[e.source] != usize::MAX && new_id[e.target] != usize::MAX)
            .map(|e| SystemEdge { source: new_id[e.source], target: new_id[e.target], morphism: e.morphism.clone() })
            .collect();
        InverseSystem { base: self.base.clone(), nodes, edges, bound: self.bound }
    }

    /// First pair of composable edges whose composite is not an edge of the system.
    pub fn composition_failure(&self) -> Option<(usize, usize, usize)> {
        for a in &self.edges {
            for b in self.edges.iter().filter(|b| b.source == a.target && b.target != a.source) {
                let Ok(c) = a.morphism.then(&b.morphism) else {
                    return Some((a.source, a.target, b.target));
                };
                let present =
                    self.edges.iter().any(|e| e.source == a.source && e.target == b.target && e.morphism.same_maps(&c));
                if !present {
                    return Some((a.source, a.target, b.target));
                }
            }
        }
        None
    }
}

/// The limit of an inverse system as the group of compatible tuples.
///
/// Elements are stored as tuples, never as a dense table, so orders beyond
/// [`MAX_ORDER`] are fine.
#[derive(Clone, Debug)]
pub struct LimitGroup {
    groups: Vec<Arc<EtaleGroup>>,
    tuples: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    identity: usize,
}

pub fn inverse_limit(system: &InverseSystem) -> Result<LimitGroup, SystemError> {
    let n = system.nodes.len();
    if n == 0 {
        return Err(SystemError::EmptySystem);
    }
    let groups: Vec<Arc<EtaleGroup>> = system.nodes.iter().map(|s| s.torsor.structure().clone()).collect();
    // process nodes greedily: most edges into the processed set first, larger groups break ties
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&j| !done[j])
            .max_by_key(|&j| {
                let links = system
                    .edges
                    .iter()
                    .filter(|e| (e.target == j && done[e.source]) || (e.source == j && done[e.target]))
                    .count();
                (links, groups[j].group().order(), std::cmp::Reverse(j))
            })
            .unwrap();
        done[next] = true;
        order.push(next);
    }
    let mut position = vec![usize::MAX; n];
    let mut partial: Vec<Vec<u32>> = vec![Vec::new()];
    for (k, &j) in order.iter().enumerate() {
        let incoming: Vec<&SystemEdge> =
            system.edges.iter().filter(|e| e.target == j && position[e.source] != usize::MAX).collect();
        let outgoing: Vec<&SystemEdge> =
            system.edges.iter().filter(|e| e.source == j && position[e.target] != usize::MAX).collect();
        let g = groups[j].group();
        let mut next = Vec::new();
        for tuple in &partial {
            let fits = |x: Elem| {
                incoming.iter().all(|e| e.morphism.group_map().apply(tuple[position[e.source]] as usize) == x)
                    && outgoing.iter().all(|e| e.morphism.group_map().apply(x) == tuple[position[e.target]] as usize)
            };
            let mut push = |x: Elem| {
                let mut t = tuple.clone();
                t.push(x as u32);
                next.push(t);
            };
            if let Some(e) = incoming.first() {
                let x = e.morphism.group_map().apply(tuple[position[e.source]] as usize);
                if fits(x) {
                    push(x);
                }
            } else {
                for x in g.elements().filter(|&x| fits(x)) {
                    push(x);
                }
            }
        }
        partial = next;
        position[j] = k;
    }
    // reorder components to node order and sort
    let mut tuples: Vec<Vec<u32>> = partial.into_iter().map(|t| (0..n).map(|j| t[position[j]]).collect()).collect();
    tuples.sort_unstable();
    let index: HashMap<Vec<u32>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let e: Vec<u32> = groups.iter().map(|g| g.group().identity() as u32).collect();
    let identity = index[&e];
    Ok(LimitGroup { groups, tuples, index, identity })
}

impl LimitGroup {
    pub fn order(&self) -> usize {
        self.tuples.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn components(&self, a: usize) -> &[u32] {
        &self.tuples[a]
    }

    fn lookup(&self, t: Vec<u32>) -> usize {
        self.index[&t]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let t = self.tuples[a]
            .iter()
            .zip(&self.tuples[b])
            .zip(&self.groups)
            .map(|((&x, &y), g)| g.group().mul(x as usize, y as usize) as u32)
            .collect();
        self.lookup(t)
    }

    pub fn inv(&self, a: usize) -> usize {
        let t = self.tuples[a].iter().zip(&self.groups).map(|(&x, g)| g.group().inv(x as usize) as u32).collect();
        self.lookup(t)
    }

    /// `γ·a`, componentwise.
    pub fn act(&self, gamma: Elem, a: usize) -> usize {
        let t = self.tuples[a].iter().zip(&self.groups).map(|(&x, g)| g.act(gamma, x as usize) as u32).collect();
        self.lookup(t)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.tuples[a].iter().zip(&self.groups).fold(1, |acc, (&x, g)| lcm(acc, g.group().element_order(x as usize)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|a| self.element_order(a) == self.order())
    }

    pub fn is_abelian(&self) -> bool {
        if self.groups.iter().all(|g| g.group().is_abelian()) {
            return true;
        }
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True when every `γ` acts by the identity or by inversion, according to `sign`.
    pub fn acts_by_inversion(&self, sign: &GroupHom) -> bool {
        sign.source().elements().all(|c| {
            let invert = sign.apply(c) != sign.target().identity();
            (0..self.order()).all(|a| self.act(c, a) == if invert { self.inv(a) } else { a })
        })
    }

    /// Projection onto node `j`'s structure group.
    pub fn project(&self, j: usize, a: usize) -> Elem {
        self.tuples[a][j] as usize
    }

    pub fn projection_is_surjective(&self, j: usize) -> bool {
        let mut hit = vec![false; self.groups[j].group().order()];
        for t in &self.tuples {
            hit[t[j] as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Dense table with the `Γ`-action, when small enough.
    pub fn to_etale_group(&self) -> Result<EtaleGroup, SystemError> {
        let n = self.order();
        if n > MAX_ORDER {
            return Err(SystemError::Group(GroupError::TooLarge { order: n, limit: MAX_ORDER }));
        }
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.mul(a, b) as u32);
            }
        }
        let group = Arc::new(FiniteGroup::from_flat_table_unchecked(n, table, self.identity));
        let gamma = self.groups[0].gamma().clone();
        let maps = gamma.elements().map(|c| Perm::from_raw((0..n).map(|a| self.act(c, a) as u32).collect())).collect();
        Ok(EtaleGroup::new(AutAction::new(gamma, group, maps)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofinality {
    /// First node receiving no morphism from a candidate.
    pub uncovered: Option<usize>,
}

impl Cofinality {
    pub fn is_cofinal(&self) -> bool {
        self.uncovered.is_none()
    }
}

/// Whether every node receives a morphism from one of `candidates` (node indices).
pub fn cofinality_check(candidates: &[usize], system: &InverseSystem) -> Cofinality {
    let uncovered =
        (0..system.nodes.len()).find(|&j| !candidates.iter().any(|&i| i == j || system.edge(i, j).is_some()));
    Cofinality { uncovered }
}

/// The system as a Trivial Graph Format document.
///
/// One `id label` line per node, a `#` separator, then one `source target label` line
/// per edge; edge labels list the kernel of the group map.
pub fn export_system_graph(system: &InverseSystem) -> Result<String, SystemError> {
    if system.nodes.is_empty() {
        return Err(SystemError::EmptySystem);
    }
    let mut out = String::new();
    for (i, n) in system.nodes.iter().enumerate() {
        writeln!(out, "{} {} |G|={}", i + 1, n.name, n.torsor.group().order()).unwrap();
    }
    out.push_str("#\n");
    let mut edges: Vec<&SystemEdge> = system.edges.iter().collect();
    edges.sort_by_key(|e| (e.source, e.target));
    for e in edges {
        let (_, ker) = e.morphism.group_map().image_kernel();
        let list: Vec<String> = ker.elements().iter().map(|x| x.to_string()).collect();
        writeln!(out, "{} {} ker={{{}}}", e.source + 1, e.target + 1, list.join(",")).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn real_base() -> Arc<BaseDatum> {
        Arc::new(BaseDatum::over_field(z(2)))
    }

    fn real_system(bound: usize) -> InverseSystem {
        let base = real_base();
        let sign = GroupHom::identity(z(2));
        let cat = TorsorCatalog::cyclic_with_inversion(base, bound, &sign).unwrap();
        InverseSystem::from_catalog(&cat).unwrap()
    }

    /// Constant cyclic triples over `Γ = Π = ℤ/m`.
    fn constant_cyclic_node(n: usize, m: usize) -> SystemNode {
        let base = Arc::new(BaseDatum::over_field(z(m)));
        let g = Arc::new(EtaleGroup::constant(z(m), z(n)));
        let values: Vec<Elem> = (0..m).map(|x| x % n).collect();
        SystemNode {
            name: format!("Z/{n}"),
            torsor: Arc::new(PointedTorsor::from_crossed_hom(base, g, &values).unwrap()),
        }
    }

    #[test]
    fn constant_catalog_gives_surjections() {
        let cat = TorsorCatalog::constant_groups(real_base(), 4);
        let found = enumerate_saturated(&cat).unwrap();
        let orders: Vec<usize> = found.iter().map(|t| t.torsor.group().order()).collect();
        assert_eq!(orders, vec![1, 2]);
    }

    #[test]
    fn trivial_base_has_only_trivial_triple() {
        let base = Arc::new(BaseDatum::trivial());
        let cat = TorsorCatalog::constant_groups(base, 6);
        let found = enumerate_saturated(&cat).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].torsor.size(), 1);
    }

    #[test]
    fn register_checks_bound_and_context() {
        let mut cat = TorsorCatalog::new(real_base(), 3);
        let big = Arc::new(EtaleGroup::constant(z(2), z(4)));
        assert_eq!(cat.register("Z/4", big), Err(SystemError::BoundExceeded { order: 4, bound: 3 }));
        let other = Arc::new(EtaleGroup::constant(z(3), z(2)));
        assert!(matches!(cat.register("x", other), Err(SystemError::ContextMismatch(_))));
    }

    #[test]
    fn real_system_limit() {
        for (bound, order) in [(4usize, 12usize), (6, 60), (8, 840)] {
            let sys = real_system(bound);
            assert_eq!(sys.nodes().len(), bound);
            assert!(sys.composition_failure().is_none());
            let lim = inverse_limit(&sys).unwrap();
            assert_eq!(lim.order(), order);
            assert!(lim.is_cyclic());
            assert!(lim.acts_by_inversion(&GroupHom::identity(z(2))));
            assert!((0..sys.nodes().len()).all(|j| lim.projection_is_surjective(j)));
        }
    }

    #[test]
    fn chain_limit_is_top() {
        let m = 8;
        let nodes = vec![constant_cyclic_node(2, m), constant_cyclic_node(4, m), constant_cyclic_node(8, m)];
        let base = nodes[0].torsor.base().clone();
        let sys = InverseSystem::new(base, nodes, 8).unwrap();
        assert_eq!(sys.edges().len(), 3);
        let lim = inverse_limit(&sys).unwrap();
        assert_eq!(lim.order(), 8);
        assert!(lim.is_cyclic());
    }

    #[test]
    fn two_quotients_of_z6() {
        let m = 6;
        let nodes = vec![constant_cyclic_node(2, m), constant_cyclic_node(3, m), constant_cyclic_node(6, m)];
        let base = nodes[0].torsor.base().clone();
        let sys = InverseSystem::new(base, nodes, 6).unwrap();
        let lim = inverse_limit(&sys).unwrap();
        assert_eq!(lim.order(), 6);
        assert!(lim.is_cyclic());
        // dropping the top still leaves ℤ/2 × ℤ/3
        let low = inverse_limit(&sys.restrict(&[0, 1])).unwrap();
        assert_eq!(low.order(), 6);
    }

    #[test]
    fn cofinality_and_witness() {
        let sys = real_system(8);
        let all: Vec<usize> = (0..8).collect();
        assert!(cofinality_check(&all, &sys).is_cofinal());
        let without_8: Vec<usize> = (0..8).filter(|&i| sys.nodes()[i].torsor.group().order() != 8).collect();
        let c = cofinality_check(&without_8, &sys);
        assert_eq!(c.uncovered.map(|i| sys.nodes()[i].torsor.group().order()), Some(8));
    }

    #[test]
    fn graph_export() {
        let sys = real_system(6);
        let doc = export_system_graph(&sys).unwrap();
        let (nodes, edges) = doc.split_once("#\n").unwrap();
        assert_eq!(nodes.lines().count(), 6);
        // divisibility pairs d | n with d < n among 1..6
        let expected = (1..=6usize).flat_map(|n| (1..n).filter(move |d| n % d == 0)).count();
        assert_eq!(edges.lines().count(), expected);
        assert_eq!(doc, export_system_graph(&sys).unwrap());
        let single = sys.restrict(&[0]);
        assert_eq!(export_system_graph(&single).unwrap().lines().count(), 2);
        assert_eq!(export_system_graph(&sys.restrict(&[])), Err(SystemError::EmptySystem));
        assert!(matches!(inverse_limit(&sys.restrict(&[])), Err(SystemError::EmptySystem)));
    }
}
