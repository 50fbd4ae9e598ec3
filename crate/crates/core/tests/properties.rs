mod support;

use std::sync::{Arc, OnceLock};

use nori_core::torsor::{torsor_isomorphism, translation_cocycle};
use nori_core::{Perm, PointedTorsor};
use proptest::prelude::*;
use support::*;

fn desk() -> &'static [Arc<PointedTorsor>] {
    static DESK: OnceLock<Vec<Arc<PointedTorsor>>> = OnceLock::new();
    DESK.get_or_init(|| desk_instances(8))
}

fn assert_tally(t: Tally) {
    assert!(t.passed(), "{}: {:?}", t.line(), t.violations);
}

#[test]
fn cocycle_law_on_every_torsor() {
    assert_tally(cocycle_law(desk()));
}

#[test]
fn saturation_is_idempotent() {
    assert_tally(saturation_idempotent(desk()));
}

#[test]
fn saturation_matches_oracle_up_to_twelve() {
    let pool: Vec<_> = bases(4, 4)
        .into_iter()
        .flat_map(|b| {
            let s = etale_groups(b.gamma(), 12);
            torsors(&b, &s)
        })
        .collect();
    assert_tally(saturation_oracle(&pool));
}

#[test]
fn constant_groups_saturated_iff_connected() {
    assert_tally(constant_fact(desk()));
}

#[test]
fn constant_triples_classified_by_surjections() {
    assert_tally(constant_classification(4));
}

#[test]
fn connected_triples_have_normal_image() {
    assert_tally(connected_image_normal(desk()));
}

#[test]
fn inflation_kills_geometric_image() {
    assert_tally(inflation_complex(8));
}

#[test]
fn descent_round_trip() {
    assert_tally(support::descent_round_trip(desk()));
}

#[test]
fn fibre_products_are_universal() {
    assert_tally(fiber_product_universal(6));
}

#[test]
fn induction_counit_is_surjective() {
    assert_tally(induced_counit(8));
}

fn any_torsor() -> impl Strategy<Value = Arc<PointedTorsor>> {
    (0..desk().len()).prop_map(|i| desk()[i].clone())
}

fn relabeled_torsor() -> impl Strategy<Value = (Arc<PointedTorsor>, Vec<usize>)> {
    any_torsor().prop_flat_map(|t| {
        let n = t.size();
        (Just(t), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn repointing_twists_the_cocycle(t in any_torsor(), seed in any::<usize>()) {
        let g = t.group();
        let h = seed % g.order();
        let moved = t.repointed(t.right(t.basepoint(), h)).unwrap();
        let (c, d) = (translation_cocycle(&t), translation_cocycle(&moved));
        for x in t.base().pi().elements() {
            let twisted = t.structure().act(t.base().project(x), h);
            prop_assert_eq!(d.at(x), g.mul(g.mul(g.inv(h), c.at(x)), twisted));
        }
    }

    #[test]
    fn relabeling_gives_an_isomorphic_triple((t, images) in relabeled_torsor()) {
        let u = Arc::new(t.relabeled(&Perm::from_images(images).unwrap()).unwrap());
        prop_assert!(torsor_isomorphism(&t, &u).unwrap().is_some());
    }
}
