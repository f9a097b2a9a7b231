use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use origami_core::families::{self, Family};
use origami_core::kz::{self, HomologyModel};
use origami_core::linalg;
use origami_core::sl2z::{Letter, SL2ZWord};
use origami_core::{spin, Origami, Permutation};

fn members(f: Family, g: usize) -> Vec<Origami> {
    families::enumerate(f, g).unwrap().into_iter().map(|m| m.origami).collect()
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|img| Permutation::from_images0(img).unwrap())
}

fn letter() -> impl Strategy<Value = Letter> {
    prop::sample::select(Letter::ALL.to_vec())
}

proptest! {
    #[test]
    fn inverse_and_composition(p in perm(9), q in perm(9)) {
        prop_assert_eq!(p.mul(&p.inverse()), Permutation::identity(9));
        prop_assert_eq!(p.mul(&q).inverse(), q.inverse().mul(&p.inverse()));
        for i in 1..=9 {
            prop_assert_eq!(p.mul(&q).apply(i), p.apply(q.apply(i)));
        }
    }

    #[test]
    fn conjugation_keeps_cycle_type(p in perm(8), r in perm(8)) {
        prop_assert_eq!(p.conjugate(&r).unwrap().cycle_type(), p.cycle_type());
    }

    #[test]
    fn cycles_round_trip(p in perm(10)) {
        prop_assert_eq!(Permutation::parse_cycles(&p.render_cycles(), 10).unwrap(), p);
    }

    #[test]
    fn arf_ignores_basis_order(idx in 0usize..120, seed in any::<u64>()) {
        let all = members(Family::AmnOdd, 7);
        let o = &all[idx % all.len()];
        let space = spin::side_curve_space(o).unwrap();
        let base = spin::arf(&space, Some(7)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(spin::arf_shuffled(&space, Some(7), &mut rng).unwrap(), base);
    }

    #[test]
    fn canonical_key_is_a_class_invariant(idx in 0usize..30, r in perm(11)) {
        let all = members(Family::AmnEven, 6);
        let o = &all[idx % all.len()];
        let c = o.conjugate(&r).unwrap();
        prop_assert_eq!(c.canonical_key().unwrap(), o.canonical_key().unwrap());
        prop_assert!(c.equivalent(o).unwrap());
    }

    #[test]
    fn spin_parity_is_a_class_invariant(idx in 0usize..30, r in perm(11)) {
        let all = members(Family::GenEvenOdd, 6);
        let o = &all[idx % all.len()];
        prop_assert_eq!(spin::spin_parity(&o.conjugate(&r).unwrap()).unwrap(), spin::spin_parity(o).unwrap());
    }

    #[test]
    fn letters_round_trip(idx in 0usize..24, l in letter()) {
        let all = members(Family::AmnOdd, 5);
        let o = &all[idx % all.len()];
        prop_assert_eq!(&l.inverse().apply(&l.apply(o)), o);
        prop_assert_eq!(&l.apply(&l.inverse().apply(o)), o);
    }

    #[test]
    fn word_matrix_is_a_homomorphism(a in prop::collection::vec(letter(), 0..8), b in prop::collection::vec(letter(), 0..8)) {
        let (wa, wb) = (SL2ZWord::new(a), SL2ZWord::new(b));
        let ab = wa.then_after(&wb);
        let m = ab.matrix();
        prop_assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
        prop_assert_eq!(ab.inverse().then_after(&ab).matrix(), [[1, 0], [0, 1]]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn homology_actions_are_symplectic(idx in 0usize..40, seed in any::<u64>()) {
        let o = Origami::new(
            Permutation::standard_cycle(7),
            Permutation::cycle(7, &[1, 3, 7, 6, 4, 2, 5]).unwrap(),
        )
        .unwrap();
        let stab = origami_core::sl2z::veech_stabilizer(&o, Some(40), None).unwrap();
        let e = &stab[idx % stab.len()];
        let m = HomologyModel::with_seed(&o, seed).unwrap();
        let act = kz::action(&m, &e.word, &e.relabelling).unwrap();
        let f = linalg::from_int(&act.matrix_full);
        let q = m.intersection_q();
        prop_assert_eq!(linalg::mul(&linalg::mul(&linalg::transpose(&f), &q), &f), q);
    }
}
