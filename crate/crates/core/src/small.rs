//! Every group of order at most 15 up to isomorphism, with automorphisms and actions.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::action::{generated_transformation_group, semidirect_product, AutAction};
use crate::group::FiniteGroup;
use crate::hom::enumerate_homs;
use crate::perm::Perm;

pub const SMALL_ORDER_LIMIT: usize = 15;

fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n))
}

fn product(a: &FiniteGroup, b: &FiniteGroup) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::direct_product(a, b).expect("small product"))
}

/// `ℤ/m ⋊ ℤ/k` with the generator acting by inversion.
fn inverted(m: usize, k: usize) -> Arc<FiniteGroup> {
    let act = AutAction::inversion(cyclic(k), cyclic(m)).expect("inversion has order 2");
    semidirect_product(&act).expect("small semidirect product").group
}

fn from_perms(cycles: &[&str], degree: usize) -> Arc<FiniteGroup> {
    let gens: Vec<Perm> = cycles.iter().map(|c| Perm::parse_cycles(c, degree).expect("valid cycles")).collect();
    generated_transformation_group(&gens, 64).expect("small permutation group").group
}

/// Named representatives of each isomorphism type of order `≤ max_order`, by order.
pub fn small_groups(max_order: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    assert!(max_order <= SMALL_ORDER_LIMIT, "catalogued only up to order {SMALL_ORDER_LIMIT}");
    let z = |n: usize| FiniteGroup::cyclic(n);
    let mut out: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    for n in 1..=max_order {
        out.push((format!("Z/{n}"), cyclic(n)));
        match n {
            4 => out.push(("Z/2xZ/2".into(), product(&z(2), &z(2)))),
            6 => out.push(("D3".into(), inverted(3, 2))),
            8 => {
                out.push(("Z/2xZ/4".into(), product(&z(2), &z(4))));
                out.push(("Z/2xZ/2xZ/2".into(), product(&product(&z(2), &z(2)), &z(2))));
                out.push(("D4".into(), inverted(4, 2)));
                out.push(("Q8".into(), from_perms(&["(0 1 3 6)(2 5 7 4)", "(0 2 3 7)(1 4 6 5)"], 8)));
            }
            9 => out.push(("Z/3xZ/3".into(), product(&z(3), &z(3)))),
            10 => out.push(("D5".into(), inverted(5, 2))),
            12 => {
                out.push(("Z/2xZ/6".into(), product(&z(2), &z(6))));
                out.push(("A4".into(), from_perms(&["(0 1 2)", "(0 1)(2 3)"], 4)));
                out.push(("D6".into(), inverted(6, 2)));
                out.push(("Dic3".into(), inverted(3, 4)));
            }
            14 => out.push(("D7".into(), inverted(7, 2))),
            _ => {}
        }
    }
    out
}

/// All automorphisms of `g`, identity first.
pub fn automorphisms(g: &Arc<FiniteGroup>) -> Vec<Perm> {
    let mut out: Vec<Perm> = enumerate_homs(g, g, &[], |h| h.is_isomorphism())
        .into_iter()
        .map(|h| Perm::from_images(h.images()).expect("bijective"))
        .collect();
    out.sort_by_key(|p| !p.is_identity());
    out
}

/// One action of `gamma` on `g` from each conjugacy class under `Aut(g)`.
pub fn actions_up_to_conjugacy(gamma: &Arc<FiniteGroup>, g: &Arc<FiniteGroup>) -> Vec<AutAction> {
    let auts = automorphisms(g);
    let inverses: Vec<Perm> = auts.iter().map(Perm::inverse).collect();
    let gens = gamma.generators().to_vec();
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<(usize, Perm)> = gens.iter().zip(&choice).map(|(&s, &c)| (s, auts[c].clone())).collect();
        if let Ok(action) = AutAction::from_generator_images(gamma.clone(), g.clone(), &images) {
            let key = auts
                .iter()
                .zip(&inverses)
                .map(|(f, fi)| images.iter().map(|(_, p)| f.compose(p).compose(fi).images().to_vec()).collect())
                .min()
                .unwrap_or_default();
            if seen.insert(key) {
                out.push(action);
            }
        }
        let mut k = gens.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < auts.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}
