mod common;

use std::collections::BTreeMap;

use comass::chain::{boundary, coboundary, pair, Chain};
use comass::comass::{linf_min_representative_with, simplicial_comass_with, Engine};
use comass::homology::homology_all;
use comass::map::pushforward;
use comass::normalize::{is_integral_coboundary, round_cocycle};
use comass::{io, models, Cochain, SimplicialComplex, SimplicialMap};
use common::{q, random_cochain, random_complex, rng};
use num::{BigRational, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn complex_from(seed: u64, d: usize) -> SimplicialComplex {
    let mut r = rng(seed);
    let nv = d + 5;
    let count = r.gen_range(4..=14);
    random_complex(&mut r, d, nv, count)
}

fn chain_on(seed: u64, x: &SimplicialComplex, k: usize) -> Chain {
    random_cochain(&mut rng(seed ^ 0x5eed), x, k, 3).cast()
}

fn lp(x: &SimplicialComplex, b: &Cochain) -> BigRational {
    simplicial_comass_with(x, b, Engine::Exact).unwrap().lp_value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>(), d in 2usize..=3) {
        let x = complex_from(seed, d);
        let c = chain_on(seed, &x, d);
        prop_assert!(boundary(&boundary(&c)).is_zero());
    }

    #[test]
    fn coboundary_is_adjoint(seed in any::<u64>(), d in 2usize..=3) {
        let x = complex_from(seed, d);
        let c = chain_on(seed, &x, d);
        let b = random_cochain(&mut rng(seed.wrapping_add(7)), &x, d - 1, 4);
        prop_assert_eq!(pair(&coboundary(&x, &b), &c), pair(&b, &boundary(&c)));
    }

    #[test]
    fn pushforward_commutes_with_boundary(seed in any::<u64>(), m in 1usize..=4) {
        let x = complex_from(seed, 2);
        let target = models::simplex(m, 0);
        let mut r = rng(seed.wrapping_mul(3));
        let vm: BTreeMap<usize, usize> = x.vertices().map(|v| (v, r.gen_range(0..=m))).collect();
        let f = SimplicialMap::new(x.clone(), target, vm).unwrap();
        let c = chain_on(seed, &x, 2);
        prop_assert_eq!(boundary(&pushforward(&f, &c)), pushforward(&f, &boundary(&c)));
    }

    #[test]
    fn comass_depends_only_on_the_class(seed in any::<u64>()) {
        let x = complex_from(seed, 2);
        let b = random_cochain(&mut rng(seed), &x, 2, 3);
        let a = random_cochain(&mut rng(seed.wrapping_add(1)), &x, 1, 2);
        prop_assert_eq!(lp(&x, &b.add(&coboundary(&x, &a))), lp(&x, &b));
    }

    #[test]
    fn comass_is_a_seminorm(seed in any::<u64>(), k in -3i64..=3) {
        let x = complex_from(seed, 2);
        let a = random_cochain(&mut rng(seed), &x, 2, 3);
        let b = random_cochain(&mut rng(seed.wrapping_add(11)), &x, 2, 3);
        let (la, lb) = (lp(&x, &a), lp(&x, &b));
        prop_assert_eq!(lp(&x, &a.scale(&q(k, 1))), la.clone() * q(k, 1).abs());
        prop_assert!(lp(&x, &a.add(&b)) <= la + lb);
    }

    #[test]
    fn primal_and_dual_values_agree(seed in any::<u64>(), d in 2usize..=3) {
        let x = complex_from(seed, d);
        let b = random_cochain(&mut rng(seed), &x, d, 3);
        let c = simplicial_comass_with(&x, &b, Engine::Auto).unwrap();
        let rep = linf_min_representative_with(&x, &b, Engine::Auto).unwrap();
        prop_assert_eq!(&c.lp_value, &rep.value);
        prop_assert_eq!(rep.zhat.linf_norm(), rep.value);
        prop_assert!(c.lp_value.is_zero() || c.witness.l1_norm() == q(1, 1));
        prop_assert!(boundary(&c.witness).is_zero());
    }

    #[test]
    fn rounding_stays_in_class_and_bound(seed in any::<u64>(), d in 2usize..=3) {
        let x = complex_from(seed, d);
        let z = random_cochain(&mut rng(seed), &x, d, 4);
        let rep = linf_min_representative_with(&x, &z, Engine::Auto).unwrap();
        let out = round_cocycle(&x, &z, &rep.zhat, d).unwrap();
        prop_assert!(out.zprime.is_integral());
        prop_assert!(out.zprime.linf_norm() <= rep.zhat.linf_norm() + q(d as i64 + 1, 2));
        prop_assert!(is_integral_coboundary(&x, &out.zprime.sub(&z)));
    }

    #[test]
    fn betti_numbers_match_euler_characteristic(seed in any::<u64>(), d in 2usize..=3) {
        let x = complex_from(seed, d);
        let chi: i64 = homology_all(&x).iter().enumerate().map(|(k, h)| if k % 2 == 0 { h.betti as i64 } else { -(h.betti as i64) }).sum();
        prop_assert_eq!(chi, x.euler_characteristic());
    }

    #[test]
    fn text_formats_round_trip(seed in any::<u64>(), d in 1usize..=3) {
        let x = complex_from(seed, d).with_edge_scale(q((seed % 7) as i64 + 1, 3));
        prop_assert_eq!(io::parse_complex(&io::write_complex(&x)).unwrap(), x.clone());
        let c = chain_on(seed, &x, d).scale(&q(1, 6));
        prop_assert_eq!(io::parse_cells::<comass::chain::Primal>(&io::write_cells(&c)).unwrap(), c);
        let vm: BTreeMap<usize, usize> = x.vertices().map(|v| (v, (v * 7 + seed as usize) % 5)).collect();
        prop_assert_eq!(io::parse_vertex_map(&io::write_vertex_map(&vm)).unwrap(), vm);
    }
}
