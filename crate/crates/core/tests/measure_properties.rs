mod common;

use common::qi;
use l1hom::complex::{boundary, l1_norm, SimplicialMap};
use l1hom::homology::{fundamental_cycle, homology_basis};
use l1hom::measure::{
    boundary_measure, duality_bound, include_chain, kronecker, measure_seminorm, pushforward, total_variation,
    v2_extend, MeasureChain,
};
use l1hom::seminorm::l1_seminorm;
use l1hom::{corpus, random};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn inclusion_commutes_with_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (_, x) in corpus::complexes() {
        for _ in 0..100 {
            let k = 1 + (rand::Rng::gen_range(&mut rng, 0..x.dim()));
            let c = random::chain(&mut rng, &x, k, 8);
            assert_eq!(boundary_measure(&include_chain(&c)).unwrap(), include_chain(&boundary(&c).unwrap()));
        }
    }
}

#[test]
fn isometry_on_bundled_cycles() {
    for (_, x) in corpus::complexes() {
        for k in 0..=x.dim() {
            for class in homology_basis(&x, k) {
                let mu = include_chain(class.cycle());
                assert_eq!(measure_seminorm(&mu, &x).unwrap().value, l1_seminorm(&class).unwrap().0);
            }
        }
    }
    let s2 = corpus::tetrahedron_boundary();
    let mu = include_chain(&fundamental_cycle(&s2).unwrap());
    assert_eq!(measure_seminorm(&mu, &s2).unwrap().value, qi(4));
}

#[test]
fn duality_inequality_for_random_cocycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = corpus::torus();
    let mut checked = 0;
    while checked < 40 {
        let class = random::cycle(&mut rng, &x, 1);
        let mu = include_chain(class.cycle());
        let f = random::cocycle(&mut rng, &x, 1);
        let pairing = kronecker(&f, &mu).unwrap();
        if pairing.is_zero() {
            continue;
        }
        let f = f.scaled(&pairing.recip());
        let bound = duality_bound(&f, &mu, &x).unwrap();
        assert!(measure_seminorm(&mu, &x).unwrap().value >= bound);
        checked += 1;
    }
}

#[test]
fn pushforward_never_increases_total_variation() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let x = corpus::genus_two();
    let g = SimplicialMap::new((0..11).map(|v| (v, if v < 7 { v } else { 0 })).collect());
    for k in 0..=2 {
        for _ in 0..50 {
            let mu = include_chain(&random::chain(&mut rng, &x, k, 10));
            let pushed = pushforward(&mu, &g);
            assert!(total_variation(&pushed) <= total_variation(&mu));
            // pushforward is the simplicial chain map on atoms
            let c = random::chain(&mut rng, &x, k, 10);
            assert_eq!(pushforward(&include_chain(&c), &g), include_chain(&g.push_chain(&c)));
        }
    }
}

proptest! {
    #[test]
    fn norm_preservation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = corpus::torus();
        let k = (seed % 3) as usize;
        let c = random::chain(&mut rng, &x, k, 12);
        prop_assert_eq!(total_variation(&include_chain(&c)), l1_norm(&c));
    }

    #[test]
    fn measure_boundary_squared_vanishes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = corpus::genus_two();
        let mu = include_chain(&random::chain(&mut rng, &x, 2, 12));
        prop_assert!(boundary_measure(&boundary_measure(&mu).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn kronecker_bilinear_and_bounded(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = corpus::torus();
        let k = (seed % 3) as usize;
        let f = random::function(&mut rng, &x, k);
        let g = random::function(&mut rng, &x, k);
        let mu = include_chain(&random::chain(&mut rng, &x, k, 8));
        let nu = include_chain(&random::chain(&mut rng, &x, k, 8));
        let a = random::small_rational(&mut rng);
        let lhs = kronecker(&f, &mu.scaled(&a).plus(&nu)).unwrap();
        prop_assert_eq!(lhs, &a * kronecker(&f, &mu).unwrap() + kronecker(&f, &nu).unwrap());
        let sum_fg = l1hom::measure::BoundedFunction::on_complex(
            &x, k, f.values().iter().map(|(s, v)| (s.clone(), v + g.value(s).unwrap()))).unwrap();
        prop_assert_eq!(kronecker(&sum_fg, &mu).unwrap(), kronecker(&f, &mu).unwrap() + kronecker(&g, &mu).unwrap());
        prop_assert!(kronecker(&f, &mu).unwrap().abs() <= f.sup_norm() * total_variation(&mu));
    }

    #[test]
    fn v2_is_compatible_with_integration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = corpus::genus_two();
        let k = (seed % 3) as usize;
        let f = random::function(&mut rng, &x, k);
        let c = random::chain(&mut rng, &x, k, 10);
        prop_assert_eq!(v2_extend(&f).evaluate(&c).unwrap(), kronecker(&f, &include_chain(&c)).unwrap());
    }

    #[test]
    fn v2_commutes_with_coboundary(seed in any::<u64>()) {
        // v₂(δf)(b) = (-1)^{k+1} v₂(f)(∂b)
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = corpus::torus();
        let k = (seed % 2) as usize;
        let f = random::function(&mut rng, &x, k);
        let b = random::chain(&mut rng, &x, k + 1, 8);
        let sign = if (k + 1) % 2 == 0 { qi(1) } else { qi(-1) };
        let lhs = v2_extend(&f.coboundary(&x).unwrap()).evaluate(&b).unwrap();
        let rhs = sign * v2_extend(&f).evaluate(&boundary(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn zero_measure_has_zero_seminorm() {
    let x = corpus::torus();
    let s = measure_seminorm(&MeasureChain::zero(1), &x).unwrap();
    assert_eq!(s.value, qi(0));
}
