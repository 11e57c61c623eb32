mod common;

use common::*;
use currents::current::{RationalCurrent, Weight};
use currents::dt::ArcSystem;
use currents::intersection::{current_pairing, intersection_number, self_intersection};
use currents::mcg::twist_generators;
use currents::measures::{homogeneous_ball_volume, ml_ball_volume};
use currents::surface::CurveClass;
use currents::word::{inverse, rotate, Letter, Word};
use proptest::prelude::*;

const SIGS: [(u32, u32); 5] = [(1, 1), (0, 3), (0, 4), (1, 2), (2, 1)];

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..2 * rank, 1..=max_len).prop_filter_map("reducible", |idx| {
        let w: Word = idx.into_iter().map(Letter::from_index).collect();
        let n = w.len();
        let reduced = w.windows(2).all(|p| p[0] != p[1].inverse()) && (n == 1 || w[0] != w[n - 1].inverse());
        reduced.then_some(w)
    })
}

fn class_on(rank: usize, max_len: usize) -> impl Strategy<Value = CurveClass> {
    word(rank, max_len).prop_map(|w| CurveClass::from_word(&w).unwrap().0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_symmetric(sig in 0..SIGS.len(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let (g, n) = SIGS[sig];
        let s = spine(g, n);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (c1, c2) = (random_class(&mut rng, s.rank(), 9), random_class(&mut rng, s.rank(), 9));
        prop_assert_eq!(intersection_number(&s, &c1, &c2), intersection_number(&s, &c2, &c1));
        prop_assert_eq!(intersection_number(&s, &c1, &c1), 2 * self_intersection(&s, &c1));
    }

    #[test]
    fn class_ignores_rotation_and_orientation(w in word(2, 10), k in 0usize..10) {
        let s = spine(1, 1);
        let c = CurveClass::from_word(&w).unwrap();
        prop_assert_eq!(&CurveClass::from_word(&rotate(&w, k % w.len())).unwrap(), &c);
        let back = CurveClass::from_word(&inverse(&w)).unwrap().0;
        prop_assert_eq!(self_intersection(&s, &back), self_intersection(&s, &c.0));
    }

    #[test]
    fn boundary_pairs_to_zero(c in class_on(3, 10)) {
        for (g, n) in [(1, 2), (2, 1), (0, 4)] {
            let s = spine(g, n);
            for b in s.boundary_classes() {
                prop_assert_eq!(intersection_number(&s, b, &c), 0);
            }
        }
    }

    #[test]
    fn genus_two_twists_preserve_intersections(c1 in class_on(4, 7), c2 in class_on(4, 7), k in 0usize..5) {
        let s = spine(2, 1);
        let phi = &twist_generators(&s).unwrap()[k];
        let (d1, d2) = (phi.apply_class(&c1), phi.apply_class(&c2));
        prop_assert_eq!(intersection_number(&s, &c1, &c2), intersection_number(&s, &d1, &d2));
        prop_assert_eq!(self_intersection(&s, &c1), self_intersection(&s, &d1));
        prop_assert_eq!(phi.inverse().apply_class(&d1), c1);
    }

    #[test]
    fn pairing_is_bilinear(seed in any::<u64>(), p in 1i64..5, q in 1i64..4) {
        use rand::SeedableRng;
        let s = spine(1, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (
            random_current(&mut rng, &s, 2, 6),
            random_current(&mut rng, &s, 2, 6),
            random_current(&mut rng, &s, 1, 6),
        );
        let t = Weight::new(p, q);
        prop_assert_eq!(
            current_pairing(&s, &x.scaled(t).plus(&y), &z),
            t * current_pairing(&s, &x, &z) + current_pairing(&s, &y, &z)
        );
    }

    #[test]
    fn current_text_round_trips(seed in any::<u64>()) {
        use rand::SeedableRng;
        let s = spine(2, 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let c = random_current(&mut rng, &s, 3, 8);
        prop_assert_eq!(RationalCurrent::parse(&c.to_string(), &s).unwrap(), c);
    }

    #[test]
    fn arc_length_is_additive_on_disjoint_unions(i in 0usize..200, j in 0usize..200) {
        let s = spine(1, 2);
        let arcs = ArcSystem::uniform(&s).unwrap();
        let mut vs = Vec::new();
        arcs.enumerate(6.0, None, |m, _, _| { vs.push(m.to_vec()); vs.len() < 200 }).unwrap();
        let (m1, m2) = (&vs[i % vs.len()], &vs[j % vs.len()]);
        let sum: Vec<u64> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
        prop_assert!((arcs.ell_p(&sum) - arcs.ell_p(m1) - arcs.ell_p(m2)).abs() < 1e-9);
        prop_assert!(arcs.is_admissible(&sum).unwrap());
    }

    #[test]
    fn homogeneous_volume_scales_with_degree(n_r in 0u32..5, k in 1u32..13, l in 0.1f64..10.0, t in 0.1f64..10.0, ell in 0.1f64..5.0) {
        let d = n_r as f64 + 0.5 * k as f64;
        let v1 = homogeneous_ball_volume(d, n_r, l, ell, 1.0).unwrap().value;
        let v2 = homogeneous_ball_volume(d, n_r, t * l, ell, 1.0).unwrap().value;
        prop_assert!((v2 / (t.powf(d) * v1) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ml_volume_scales_with_full_dimension(big_n in 0u32..8, l in 0.1f64..10.0, t in 0.1f64..4.0, lens in prop::collection::vec(0.1f64..5.0, 1..4)) {
        let v1 = ml_ball_volume(l, 1.0, &lens, big_n).unwrap();
        let v2 = ml_ball_volume(t * l, 1.0, &lens, big_n).unwrap();
        let e = (big_n as usize + lens.len()) as i32;
        prop_assert!((v2 / (t.powi(e) * v1) - 1.0).abs() < 1e-12);
    }
}
