use num_traits::{One, Signed};
use proptest::prelude::*;

use slicegenus::braid::{subsurface_split, BraidWord, MoveTrace};
use slicegenus::linalg::{det_int, IntMatrix};
use slicegenus::search::{find_alexander_trivial, genus_upper_bound, search, DefectCertificate, SearchBudget};
use slicegenus::seifert::seifert_matrix;
use slicegenus::signatures::{lt_signature, slice_lower_bound, Theta};

fn small_budget() -> SearchBudget {
    SearchBudget {
        vector_draws: 400,
        w_draws: 10,
        v_candidates: 8,
        climb_steps: 40,
        restarts: 1,
        target_rank: None,
    }
}

fn positive_word() -> impl Strategy<Value = BraidWord> {
    (3usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(1..n, n..=11)
            .prop_map(move |l| BraidWord::new(n, l).unwrap())
            .prop_filter("non-split", |w| w.closure_stats().nonsplit)
    })
}

fn small_form() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5).prop_flat_map(|d| {
        proptest::collection::vec(-2i64..=2, d * d).prop_map(move |e| {
            let rows: Vec<Vec<i64>> = e.chunks(d).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(&rows)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_on_words_is_sound(w in positive_word(), seed in any::<u64>()) {
        let cert = search(&w, seed, &small_budget()).unwrap();
        prop_assert!(cert.verify().passed());
        let r = &cert.restriction;
        prop_assert!(det_int(&r.sub(&r.transpose()).unwrap()).unwrap().is_one());
        let up = genus_upper_bound(&w, &cert).unwrap() as u64;
        prop_assert!(up >= slice_lower_bound(&w).unwrap());
    }

    #[test]
    fn search_on_forms_is_sound(s in small_form(), seed in any::<u64>()) {
        let basis = find_alexander_trivial(&s, seed, &small_budget()).unwrap();
        if basis.cols() > 0 {
            let cert = DefectCertificate::for_form(&s, basis).unwrap();
            prop_assert!(cert.verify().passed());
        }
    }

    #[test]
    fn signature_parity(w in positive_word(), k in 1u64..24) {
        let d = seifert_matrix(&w).unwrap();
        let s = lt_signature(&d.matrix, Theta::new(2 * k - 1, 48).unwrap()).unwrap();
        let b1 = d.size() as i64;
        prop_assert!(s.sigma.abs() + s.nullity as i64 <= b1);
        prop_assert_eq!((s.sigma + s.nullity as i64 - b1).rem_euclid(2), 0);
    }

    #[test]
    fn alexander_is_symmetric(w in positive_word()) {
        let a = seifert_matrix(&w).unwrap().alexander();
        if w.closure_stats().components == 1 {
            prop_assert!(a.normalized.is_symmetric());
            prop_assert!(a.normalized.eval_i64(1).abs().is_one());
        }
    }

    #[test]
    fn theta_roundtrip(num in 1u64..500, den in 1u64..500) {
        prop_assume!(num <= den);
        let t = Theta::new(num, den).unwrap();
        prop_assert_eq!(t.to_string().parse::<Theta>().unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn split_traces_verify(l in 2usize..=7, n in 4usize..=14) {
        prop_assume!(2 * l <= n);
        let s = subsurface_split(n, l).unwrap();
        prop_assert!(s.trace.verify());
        let back = MoveTrace::from_text(&s.trace.to_text()).unwrap();
        prop_assert_eq!(&back, &s.trace);
        let gam: usize = (2..=l).map(|j| 2 * j - 3).sum();
        prop_assert_eq!(s.part1.len(), 2 * gam + (2 * l - 2) * (n - 2 * l + 1));
        let m = n - 2 * l + 1;
        prop_assert_eq!(s.part2.len(), m * (m - 1) / 2);
    }
}
