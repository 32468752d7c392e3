mod common;

use common::qi;
use l1hom::complex::{l1_norm, Chain, SimplicialMap};
use l1hom::homology::{fundamental_cycle, homology_basis, is_homologous, HomologyClass};
use l1hom::seminorm::{
    certificate_from, dual_certificate, l1_seminorm, simplicial_volume_upper, solve_seminorm, verify_certificate,
    Cochain,
};
use l1hom::{corpus, random};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_strong_duality(class: &HomologyClass<'_>) {
    let x = class.complex();
    let sol = solve_seminorm(class).unwrap();
    assert_eq!(sol.value, sol.dual_value);
    assert_eq!(sol.dual.evaluate(class.cycle()).unwrap(), sol.value);
    assert!(sol.dual.sup_norm() <= qi(1));
    assert_eq!(sol.dual.cocycle_violation(x).unwrap(), None);
    assert_eq!(l1_norm(&sol.chain), sol.value);
    assert!(is_homologous(x, &sol.chain, class.cycle()).unwrap().is_some());
    assert!(sol.value <= l1_norm(class.cycle()));
    match certificate_from(&sol).unwrap() {
        Some(cert) => {
            assert_eq!(cert.bound(), sol.value);
            assert_eq!(verify_certificate(&cert.cochain, class).unwrap(), sol.value);
        }
        None => assert!(sol.value.is_zero()),
    }
}

#[test]
fn strong_duality_on_bundled_and_random_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (_, x) in corpus::complexes() {
        for k in 0..=x.dim() {
            for class in homology_basis(&x, k) {
                assert_strong_duality(&class);
            }
            for _ in 0..5 {
                assert_strong_duality(&random::cycle(&mut rng, &x, k));
            }
        }
    }
}

#[test]
fn genus_two_fundamental_class_is_at_least_four() {
    let x = corpus::genus_two();
    let class = HomologyClass::new(&x, fundamental_cycle(&x).unwrap()).unwrap();
    let (value, _) = l1_seminorm(&class).unwrap();
    assert!(value >= qi(4));
    let cert = dual_certificate(&class).unwrap().unwrap();
    assert_eq!(cert.bound(), value);
}

#[test]
fn weak_duality_for_arbitrary_normalised_cocycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = corpus::torus();
    let mut checked = 0;
    for class in homology_basis(&x, 1) {
        let value = l1_seminorm(&class).unwrap().0;
        for _ in 0..30 {
            let f = random::cocycle(&mut rng, &x, 1);
            let phi = Cochain::from_values(1, f.values().clone()).unwrap();
            let pairing = phi.evaluate(class.cycle()).unwrap();
            if pairing.is_zero() {
                continue;
            }
            let bound = verify_certificate(&phi.scaled(&pairing.recip()), &class).unwrap();
            assert!(bound <= value);
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn scale_equivariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (_, x) in [("torus", corpus::torus()), ("genus_two", corpus::genus_two())] {
        for _ in 0..10 {
            let class = random::cycle(&mut rng, &x, 1);
            let q = common::Q::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into());
            let base = l1_seminorm(&class).unwrap().0;
            assert_eq!(l1_seminorm(&class.scaled(&q)).unwrap().0, q.abs() * base);
        }
    }
}

#[test]
fn seminorm_vanishes_exactly_on_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (_, x) in corpus::complexes() {
        for k in 0..=x.dim() {
            for _ in 0..6 {
                let class = random::cycle(&mut rng, &x, k);
                let (value, _) = l1_seminorm(&class).unwrap();
                let bounds = is_homologous(&x, class.cycle(), &Chain::zero(k)).unwrap().is_some();
                assert_eq!(value.is_zero(), bounds);
                if bounds {
                    // every cocycle pairs to zero with a boundary
                    let f = random::cocycle(&mut rng, &x, k);
                    let phi = Cochain::from_values(k, f.values().clone()).unwrap();
                    assert!(phi.evaluate(class.cycle()).unwrap().is_zero());
                    assert_eq!(dual_certificate(&class).unwrap(), None);
                }
            }
        }
    }
}

/// Pinches the second torus summand of the genus-two surface onto vertex 0.
fn pinch_map() -> SimplicialMap {
    SimplicialMap::new((0..11).map(|v| (v, if v < 7 { v } else { 0 })).collect())
}

#[test]
fn induced_maps_do_not_increase_the_seminorm() {
    let source = corpus::genus_two();
    let target = corpus::torus();
    let g = pinch_map();
    assert!(g.is_simplicial(&source, &target));
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut classes: Vec<HomologyClass<'_>> = homology_basis(&source, 1);
    classes.push(HomologyClass::new(&source, fundamental_cycle(&source).unwrap()).unwrap());
    for _ in 0..10 {
        classes.push(random::cycle(&mut rng, &source, 1));
    }
    for class in classes {
        let pushed = HomologyClass::new(&target, g.push_chain(class.cycle())).unwrap();
        assert!(l1_seminorm(&pushed).unwrap().0 <= l1_seminorm(&class).unwrap().0);
    }
}

#[test]
fn rotations_of_the_torus_preserve_the_seminorm() {
    let x = corpus::torus();
    for class in homology_basis(&x, 1) {
        let value = l1_seminorm(&class).unwrap().0;
        for shift in 1..7 {
            let g = SimplicialMap::new((0..7).map(|v| (v, (v + shift) % 7)).collect());
            let pushed = HomologyClass::new(&x, g.push_chain(class.cycle())).unwrap();
            assert_eq!(l1_seminorm(&pushed).unwrap().0, value);
        }
    }
}

#[test]
fn volume_bounds_after_subdivision() {
    let torus = simplicial_volume_upper(&corpus::torus(), 1).unwrap();
    assert_eq!(torus.len(), 2);
    assert!(torus.iter().all(|v| !v.is_negative()));
    let sphere = simplicial_volume_upper(&corpus::tetrahedron_boundary(), 1).unwrap();
    assert_eq!(sphere, vec![qi(4), qi(24)]);
}

#[test]
fn tampered_certificate_fails() {
    let x = corpus::tetrahedron_boundary();
    let class = HomologyClass::new(&x, fundamental_cycle(&x).unwrap()).unwrap();
    let cert = dual_certificate(&class).unwrap().unwrap();
    let mut values = cert.cochain.values().clone();
    let first = values.keys().next().unwrap().clone();
    values.insert(first, qi(0));
    let tampered = Cochain::from_values(2, values).unwrap();
    assert!(verify_certificate(&tampered, &class).is_err());
}
