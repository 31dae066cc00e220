use b3lab::garside::{self, GarsideTuple};
use b3lab::sl2::{self, LUWord, Lu};
use b3lab::traintrack::{self, TrackGraph};
use b3lab::words::{self, BraidWord};
use num_bigint::BigUint;
use proptest::prelude::*;

fn braid(max: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(prop::sample::select(vec![1i8, -1, 2, -2]), 0..max).prop_map(BraidWord::from_letters)
}

fn lu_word() -> impl Strategy<Value = LUWord> {
    prop::collection::vec(prop::bool::ANY, 1..30).prop_map(|v| LUWord::from_letters(v.into_iter().map(|u| if u { Lu::U } else { Lu::L })))
}

proptest! {
    #[test]
    fn normal_form_is_the_same_braid(w in braid(30)) {
        let nf = garside::normalize(&w);
        prop_assert!(words::words_equal(&w, &nf.to_word()));
        prop_assert_eq!(garside::normalize(&nf.to_word()), nf);
    }

    #[test]
    fn tuple_text_round_trips(w in braid(30)) {
        let t = garside::tuple_of(&garside::normalize(&w));
        let back: GarsideTuple = t.to_string().parse().unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(garside::tuple_of(&garside::decode_tuple(&t)), t);
    }

    #[test]
    fn conjugates_are_detected(w in braid(16), g in braid(8)) {
        let c = words::conjugate(&w, &g);
        prop_assert!(garside::is_conjugate(&w, &c, None).unwrap());
        prop_assert_eq!(words::exponent_sum(&w), words::exponent_sum(&c));
    }

    #[test]
    fn word_times_inverse_is_trivial(w in braid(30)) {
        let id = words::concat(&w, &words::invert(&w));
        prop_assert!(garside::normalize(&id).to_word().is_empty());
    }

    #[test]
    fn decompose_inverts_matrix_of_lu(w in lu_word()) {
        let m = sl2::matrix_of_lu(&w);
        prop_assert_eq!(sl2::lu_decompose(&m).unwrap(), w.clone());
        prop_assert_eq!(sl2::lu_length(&w), w.len());
    }

    #[test]
    fn class_is_invariant_under_rotation_and_j(w in lu_word(), k in 0usize..30) {
        let mut letters = w.letters();
        let k = k % letters.len();
        letters.rotate_left(k);
        let rotated = LUWord::from_letters(letters);
        prop_assert_eq!(sl2::cyclic_j_class(&rotated), sl2::cyclic_j_class(&w));
        prop_assert_eq!(sl2::cyclic_j_class(&sl2::j_conjugate(&w)), sl2::cyclic_j_class(&w));
    }

    #[test]
    fn graph_maps_respect_word_equality(w in braid(12)) {
        let nf = garside::normalize(&w).to_word();
        for graph in [TrackGraph::Gamma1, TrackGraph::Gamma2] {
            let a = traintrack::map_of_word(&w, graph);
            let b = traintrack::map_of_word(&nf, graph);
            prop_assert_eq!(a.render(), b.render());
        }
    }
}

fn rigid_pa_tuple() -> impl Strategy<Value = GarsideTuple> {
    (-2i64..=2, 1u8..=2, prop::collection::vec((0u64..4, 0u64..4), 1..5)).prop_filter_map("rigid pA", |(s, i, runs)| {
        let t = GarsideTuple::new(s, i, runs).ok()?;
        let lu = sl2::lu_of_tuple(&t).ok()?;
        (garside::is_rigid(&t) && lu.has_both_letters()).then_some(t)
    })
}

proptest! {
    #[test]
    fn free_reduction(w in braid(40)) {
        let r = words::free_reduce(&w);
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(words::free_reduce(&r), r.clone());
        prop_assert!(words::words_equal(&w, &r));
        prop_assert!(words::words_equal(&words::concat(&w, &words::invert(&w)), &BraidWord::new()));
    }

    #[test]
    fn words_equal_is_an_equivalence(a in braid(10), b in braid(10)) {
        let nf_a = garside::normalize(&a).to_word();
        prop_assert!(words::words_equal(&a, &a));
        prop_assert_eq!(words::words_equal(&a, &b), words::words_equal(&b, &a));
        if words::words_equal(&a, &b) {
            prop_assert!(words::words_equal(&nf_a, &b));
        }
    }

    #[test]
    fn mirror_transposes_the_matrix(t in rigid_pa_tuple()) {
        let w = garside::decode_tuple(&t).to_word();
        let m = garside::classify(&w, None).unwrap().matrix().unwrap().clone();
        let mirrored = garside::classify(&words::mirror_epsilon(&w), None).unwrap();
        let mm = mirrored.matrix().unwrap();
        prop_assert_eq!(mm.trace(), m.trace());
        let a = sl2::lu_decompose(mm).unwrap();
        let b = sl2::lu_decompose(&m.j_conjugate()).unwrap();
        prop_assert!(sl2::cyclic_equivalent(&a, &b), "{} vs {}", mm, m.j_conjugate());
    }

    #[test]
    fn preimages_are_conjugate(w in lu_word()) {
        let [p, q] = sl2::braid_preimages(&w);
        let (a, b) = (garside::decode_tuple(&p).to_word(), garside::decode_tuple(&q).to_word());
        prop_assert!(garside::is_conjugate(&a, &b, None).unwrap());
    }

    #[test]
    fn cyclic_rotation_preserves_trace(w in lu_word(), k in 0usize..30) {
        let mut letters = w.letters();
        let k = k % letters.len();
        letters.rotate_left(k);
        let r = LUWord::from_letters(letters);
        prop_assert!(sl2::cyclic_equivalent(&w, &r));
        prop_assert_eq!(sl2::matrix_of_lu(&w).trace(), sl2::matrix_of_lu(&r).trace());
        if w.has_both_letters() {
            prop_assert!(BigUint::from(sl2::lu_length(&w)) < sl2::matrix_of_lu(&w).trace());
        }
    }
}
