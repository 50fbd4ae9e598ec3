use std::sync::Arc;

use nori_core::examples::{build_cyclotomic, build_heisenberg, build_real_roots, cyclotomic_base, heisenberg_sum};
use nori_core::systems::{enumerate_saturated, TorsorCatalog};
use nori_core::torsor::{hom_set, is_saturated};

#[test]
fn real_roots_morphisms_are_power_maps() {
    let p: Vec<_> = (1..=8).map(|n| Arc::new(build_real_roots(n).unwrap())).collect();
    for n in 1..=8 {
        for m in 1..=8 {
            let homs = hom_set(&p[n - 1], &p[m - 1]).unwrap();
            assert_eq!(!homs.is_empty(), n % m == 0, "P{n} -> P{m}");
            for h in &homs {
                // the group part is reduction mod m
                assert!((0..n).all(|x| h.group_map().apply(x) == x % m));
            }
        }
    }
}

#[test]
fn constant_triples_do_not_cover_mu_p() {
    for p in [3, 5] {
        let mu = Arc::new(build_cyclotomic(p).unwrap());
        let catalog = TorsorCatalog::constant_groups(cyclotomic_base(p), p);
        let triples = enumerate_saturated(&catalog).unwrap();
        assert!(!triples.is_empty());
        for t in triples {
            assert!(is_saturated(&t.torsor));
            for m in hom_set(&t.torsor, &mu).unwrap() {
                assert!(!m.group_map().is_surjective(), "{} covers mu{p}", t.entry);
            }
        }
    }
}

#[test]
fn heisenberg_validity_by_prime() {
    for l in [2usize, 3, 5, 7, 11, 13] {
        assert_eq!(build_heisenberg(l).is_ok(), l > 3, "l = {l}");
        if l > 3 {
            assert_eq!(heisenberg_sum(l), 0);
        }
    }
    assert_eq!(heisenberg_sum(3), 2);
    // the sum vanishes at l = 2 although the construction fails there
    assert_eq!(heisenberg_sum(2), 0);
}
