//! Exhaustive desk-scale instance generation and the property checks run over it.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use nori_core::small::{actions_up_to_conjugacy, automorphisms, small_groups};
use nori_core::systems::crossed_homs;
use nori_core::torsor::{
    check_exactness_conditions, descend_if_geometrically_trivial, fiber_product, geometric_image, hom_set,
    induce_group, inflate, is_connected, is_saturated, saturate, saturation_subgroup, torsor_isomorphism,
    translation_cocycle, validate_torsor,
};
use nori_core::{
    enumerate_homs, BaseDatum, EtaleGroup, FiniteGroup, GaloisContext, GroupHom, PointedTorsor, Subgroup,
    TorsorMorphism,
};

/// Outcome of one property over all generated instances.
#[derive(Debug)]
pub struct Tally {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, checked: 0, violations: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.violations.len() < 5 {
            self.violations.push(describe());
        }
        if !ok && self.violations.len() == 5 {
            self.violations.push("...".into());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.checked > 0
    }

    pub fn line(&self) -> String {
        format!("{} ({} cases, {} violations)", self.name, self.checked, self.violations.len())
    }
}

pub fn groups(max_order: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    small_groups(max_order)
}

/// Maps `Π → Γ` for every `Π`, `Γ` in range, one per orbit of `Aut(Π)`.
pub fn bases(max_gamma: usize, max_pi: usize) -> Vec<Arc<BaseDatum>> {
    let mut out = Vec::new();
    for (_, gamma) in groups(max_gamma) {
        for (_, pi) in groups(max_pi) {
            let auts = automorphisms(&pi);
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for f in enumerate_homs(&pi, &gamma, &[], |_| true) {
                let images = f.images();
                let key =
                    auts.iter().map(|a| (0..pi.order()).map(|x| images[a.apply(x)]).collect::<Vec<_>>()).min().unwrap();
                if seen.insert(key) {
                    out.push(Arc::new(BaseDatum::new(f)));
                }
            }
        }
    }
    out
}

pub fn field_bases(max_gamma: usize) -> Vec<Arc<BaseDatum>> {
    groups(max_gamma).into_iter().map(|(_, g)| Arc::new(BaseDatum::over_field(g))).collect()
}

/// Étale groups over `gamma`: every small group with every action up to conjugacy.
pub fn etale_groups(gamma: &Arc<FiniteGroup>, max_order: usize) -> Vec<Arc<EtaleGroup>> {
    groups(max_order)
        .into_iter()
        .flat_map(|(_, g)| actions_up_to_conjugacy(gamma, &g))
        .map(|a| Arc::new(EtaleGroup::new(a)))
        .collect()
}

/// Every pointed torsor over `base` with structure group among `groups`.
pub fn torsors(base: &Arc<BaseDatum>, structures: &[Arc<EtaleGroup>]) -> Vec<Arc<PointedTorsor>> {
    structures
        .iter()
        .flat_map(|s| {
            crossed_homs(base, s)
                .into_iter()
                .map(|v| Arc::new(PointedTorsor::from_crossed_hom(base.clone(), s.clone(), &v).expect("crossed hom")))
        })
        .collect()
}

/// All torsors with `|Γ| ≤ 4`, `|Π| ≤ 8`, `|G| ≤ max_g`.
pub fn desk_instances(max_g: usize) -> Vec<Arc<PointedTorsor>> {
    let mut out = Vec::new();
    for base in bases(4, 8) {
        let structures = etale_groups(base.gamma(), max_g);
        out.extend(torsors(&base, &structures));
    }
    out
}

fn describe(t: &PointedTorsor) -> String {
    format!(
        "|Γ|={} |Π|={} |G|={} t={:?}",
        t.base().gamma().order(),
        t.base().pi().order(),
        t.group().order(),
        translation_cocycle(t).values()
    )
}

/// Torsor axioms re-checked on full tables and the cocycle law on every pair.
pub fn cocycle_law(instances: &[Arc<PointedTorsor>]) -> Tally {
    let mut tally = Tally::new("cocycle law and torsor axioms");
    for t in instances {
        let g = t.group();
        let pi = t.base().pi();
        let c = translation_cocycle(t);
        let mut ok = validate_torsor(t.data()).is_ok();
        for x in pi.elements() {
            ok &= t.left(x, t.basepoint()) == t.right(t.basepoint(), c.at(x));
            for y in pi.elements() {
                let rhs = g.mul(c.at(x), t.structure().act(t.base().project(x), c.at(y)));
                ok &= c.at(pi.mul(x, y)) == rhs;
            }
            for h in g.elements() {
                for p in 0..t.size() {
                    let twisted = t.structure().act(t.base().project(x), h);
                    ok &= t.left(x, t.right(p, h)) == t.right(t.left(x, p), twisted);
                }
            }
        }
        tally.record(ok, || describe(t));
    }
    tally
}

pub fn saturation_idempotent(instances: &[Arc<PointedTorsor>]) -> Tally {
    let mut tally = Tally::new("saturation idempotent");
    for t in instances {
        let (s, inclusion) = saturate(t).expect("saturation");
        let (s2, inclusion2) = saturate(&s).expect("saturation");
        let ok = is_saturated(&s)
            && inclusion2.is_isomorphism()
            && s2.group().order() == s.group().order()
            && inclusion.group_map().is_injective();
        tally.record(ok, || describe(t));
    }
    tally
}

/// All subgroups of `g` by closing under joins with cyclic subgroups.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![vec![g.identity()]];
    found.insert(vec![g.identity()]);
    while let Some(h) = queue.pop() {
        for x in g.elements() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut seed = h.clone();
            seed.push(x);
            let joined = Subgroup::generated(g.clone(), &seed).elements().to_vec();
            if found.insert(joined.clone()) {
                queue.push(joined);
            }
        }
    }
    found.into_iter().map(|e| Subgroup::from_elements(g.clone(), e).unwrap()).collect()
}

/// The saturation is the unique minimum among `Γ`-stable `H` with `p₀·H` stable under `Π`.
pub fn saturation_oracle(instances: &[Arc<PointedTorsor>]) -> Tally {
    let mut tally = Tally::new("saturation is the brute-force minimal subgroup");
    let mut cache: Vec<(Arc<FiniteGroup>, Vec<Subgroup>)> = Vec::new();
    for t in instances {
        let g = t.group();
        let subs = match cache.iter().position(|(h, _)| Arc::ptr_eq(h, g)) {
            Some(i) => &cache[i].1,
            None => {
                cache.push((g.clone(), all_subgroups(g)));
                &cache.last().unwrap().1
            }
        };
        let auts = t.structure().automorphisms();
        let p0 = t.basepoint();
        let candidates: Vec<&Subgroup> = subs
            .iter()
            .filter(|h| auts.iter().all(|a| h.is_stable_under(a)))
            .filter(|h| {
                let orbit: BTreeSet<usize> = h.elements().iter().map(|&x| t.right(p0, x)).collect();
                orbit.iter().all(|&p| t.base().pi().elements().all(|c| orbit.contains(&t.left(c, p))))
            })
            .collect();
        let minima: Vec<&&Subgroup> =
            candidates.iter().filter(|h| candidates.iter().all(|k| h.is_subset_of(k))).collect();
        let sat = saturation_subgroup(t);
        let ok = minima.len() == 1 && minima[0].elements() == sat.elements();
        tally.record(ok, || describe(t));
    }
    tally
}

/// With trivial `Γ`-action on `G`: saturated exactly when connected.
pub fn constant_fact(instances: &[Arc<PointedTorsor>]) -> Tally {
    let mut tally = Tally::new("constant group: saturated iff connected");
    for t in instances.iter().filter(|t| t.structure().is_constant()) {
        let c = translation_cocycle(t);
        let mut image: Vec<usize> = c.values().to_vec();
        image.sort_unstable();
        image.dedup();
        let image_is_subgroup = Subgroup::from_elements(t.group().clone(), image).is_ok();
        tally.record(image_is_subgroup && is_saturated(t) == is_connected(t), || describe(t));
    }
    tally
}

/// Over `Π = Γ` with trivial action, saturated triples up to isomorphism match
/// surjections `Γ ↠ G` up to `Aut(G)`, the classes being the kernels.
pub fn constant_classification(max_gamma: usize) -> Tally {
    let mut tally = Tally::new("saturated constant triples match surjections");
    for base in field_bases(max_gamma) {
        let gamma = base.gamma().clone();
        for (_, g) in groups(gamma.order()) {
            let structure = Arc::new(EtaleGroup::constant(gamma.clone(), g.clone()));
            let surjections = enumerate_homs(&gamma, &g, &[], GroupHom::is_surjective);
            let saturated: Vec<Arc<PointedTorsor>> =
                torsors(&base, &[structure]).into_iter().filter(|t| is_saturated(t)).collect();
            let mut ok = saturated.len() == surjections.len();
            for (s, t) in surjections.iter().zip(&saturated) {
                ok &= translation_cocycle(t).values() == s.images().as_slice();
            }
            let kernel = |t: &PointedTorsor| -> Vec<usize> {
                let c = translation_cocycle(t);
                gamma.elements().filter(|&x| c.at(x) == g.identity()).collect()
            };
            let mut classes: Vec<Arc<PointedTorsor>> = Vec::new();
            for t in &saturated {
                if classes.iter().all(|u| torsor_isomorphism(u, t).unwrap().is_none()) {
                    classes.push(t.clone());
                }
                for u in &saturated {
                    ok &= torsor_isomorphism(u, t).unwrap().is_some() == (kernel(u) == kernel(t));
                }
            }
            let aut = automorphisms(&g).len();
            ok &= classes.len() * aut == surjections.len();
            tally.record(ok, || format!("|Γ|={} G of order {}", gamma.order(), g.order()));
        }
    }
    tally
}

pub fn connected_image_normal(instances: &[Arc<PointedTorsor>]) -> Tally {
    let mut tally = Tally::new("connected implies normal geometric image");
    for t in instances.iter().filter(|t| is_connected(t)) {
        let image = geometric_image(t).image;
        let report = check_exactness_conditions(t);
        let ok = is_saturated(t) && image.is_normal() && report.is_ok_and(|r| r.normality_ok());
        tally.record(ok, || describe(t));
    }
    tally
}

pub fn inflation_complex(max_g: usize) -> Tally {
    let mut tally = Tally::new("inflated triples have trivial geometric image");
    for field in field_bases(4) {
        let structures = etale_groups(field.gamma(), max_g);
        let down = torsors(&field, &structures);
        for base in bases(4, 8).into_iter().filter(|b| **b.gamma() == **field.gamma()) {
            for t in &down {
                let up = inflate(&base, t).expect("inflation");
                tally.record(geometric_image(&up).image.is_trivial(), || describe(&up));
            }
        }
    }
    tally
}

/// When `Π̄` fixes every point over a geometrically connected base, descent succeeds
/// and its inflation is isomorphic to the input; otherwise it is refused.
pub fn descent_round_trip(instances: &[Arc<PointedTorsor>]) -> Tally {
    let mut tally = Tally::new("descend then inflate is isomorphic");
    for t in instances.iter().filter(|t| t.base().is_geometrically_connected()) {
        let trivial_monodromy =
            t.base().geometric_subgroup().elements().iter().all(|&k| (0..t.size()).all(|p| t.left(k, p) == p));
        let ok = match descend_if_geometrically_trivial(t).expect("descent") {
            Ok(d) => {
                trivial_monodromy
                    && d.torsor.base().is_field()
                    && d.witness.is_isomorphism()
                    && torsor_isomorphism(&d.inflated, t).unwrap().is_some()
            }
            Err(_) => !trivial_monodromy,
        };
        tally.record(ok, || describe(t));
    }
    tally
}

/// Morphisms into `T₁ ×_Q T₂` correspond to compatible pairs.
pub fn fiber_product_universal(max_g: usize) -> Tally {
    let mut tally = Tally::new("fibre product universal property");
    for base in bases(2, 2) {
        let structures = etale_groups(base.gamma(), max_g);
        let mut pool: Vec<Arc<PointedTorsor>> = Vec::new();
        for t in torsors(&base, &structures) {
            if pool.iter().all(|u| torsor_isomorphism(u, &t).unwrap().is_none()) {
                pool.push(t);
            }
        }
        let homs: Vec<Vec<Vec<TorsorMorphism>>> =
            pool.iter().map(|a| pool.iter().map(|b| hom_set(a, b).unwrap()).collect()).collect();
        for q in 0..pool.len() {
            let into_q: Vec<(usize, &TorsorMorphism)> =
                (0..pool.len()).flat_map(|i| homs[i][q].iter().map(move |m| (i, m))).collect();
            for (a, &(i1, m1)) in into_q.iter().enumerate() {
                for &(i2, m2) in &into_q[a..] {
                    if pool[i1].group().order() * pool[i2].group().order() > 36 {
                        continue;
                    }
                    let fp = fiber_product(m1, m2).expect("fibre product");
                    for (k, test) in pool.iter().enumerate() {
                        let left: Vec<TorsorMorphism> = homs[k][i1].iter().map(|a| a.then(m1).unwrap()).collect();
                        let right: Vec<TorsorMorphism> = homs[k][i2].iter().map(|b| b.then(m2).unwrap()).collect();
                        let pairs = left.iter().map(|a| right.iter().filter(|b| a.same_maps(b)).count()).sum::<usize>();
                        let into_fp = hom_set(test, &fp.torsor).unwrap();
                        let mut images: Vec<(Vec<usize>, Vec<usize>)> = into_fp
                            .iter()
                            .map(|h| {
                                (
                                    h.then(&fp.first).unwrap().group_map().images(),
                                    h.then(&fp.second).unwrap().group_map().images(),
                                )
                            })
                            .collect();
                        images.sort();
                        images.dedup();
                        let ok = into_fp.len() == pairs && images.len() == pairs;
                        tally.record(ok, || format!("{} over {}", describe(test), describe(&pool[q])));
                    }
                }
            }
        }
    }
    tally
}

pub fn induced_counit(max_g: usize) -> Tally {
    let mut tally = Tally::new("induced group counit surjective");
    for (_, gamma) in groups(4) {
        let ctx = GaloisContext::new(gamma.clone());
        for sub in all_subgroups(&gamma) {
            let (local, _) = sub.to_group();
            for g in etale_groups(&local, max_g) {
                let index = sub.index() as u32;
                if g.group().order().pow(index) > 4096 {
                    continue;
                }
                let ind = induce_group(&ctx, &sub, &g).expect("induction");
                let ok = ind.counit.is_surjective() && ind.group.group().order() == g.group().order().pow(index);
                tally.record(ok, || format!("|Γ|={} |Γ'|={} |G|={}", gamma.order(), sub.order(), g.group().order()));
            }
        }
    }
    tally
}

/// Every property, in reporting order.
pub fn property_suite() -> Vec<Tally> {
    let desk = desk_instances(8);
    let oracle_pool: Vec<Arc<PointedTorsor>> = bases(4, 4)
        .into_iter()
        .flat_map(|b| {
            let s = etale_groups(b.gamma(), 12);
            torsors(&b, &s)
        })
        .collect();
    vec![
        cocycle_law(&desk),
        saturation_idempotent(&desk),
        saturation_oracle(&oracle_pool),
        constant_fact(&desk),
        constant_classification(4),
        connected_image_normal(&desk),
        inflation_complex(8),
        descent_round_trip(&desk),
        fiber_product_universal(6),
        induced_counit(8),
    ]
}
