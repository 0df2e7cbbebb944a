use std::collections::BTreeSet;

use num_rational::BigRational;
use proptest::prelude::*;

use slicegenus::bounds::{
    self, asymptotic_defect, defect_lower, defect_upper, lemma345_bound, prop1_verify, torus_stats, BaseDefects,
    CertifiedDefects, DefectClosure, LemmaCase, Prop1Method, Provenance, Variant,
};
use slicegenus::search::{default_store_path, CertStore};

fn store() -> CertStore {
    CertStore::open(default_store_path())
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn stats_examples() {
    let s = torus_stats(3, 7).unwrap();
    assert_eq!((s.components, s.betti, s.genus), (1, 12, 6));
    let s = torus_stats(4, 6).unwrap();
    assert_eq!((s.components, s.betti, s.genus), (2, 15, 7));
    let s = torus_stats(2, 2).unwrap();
    assert_eq!((s.components, s.betti, s.genus), (2, 1, 0));
}

#[test]
fn lower_examples() {
    let st = store();
    let (d, why) = defect_lower(5, 6, &st).unwrap();
    assert_eq!(d, 2);
    assert!(matches!(why.first(), Some(Provenance::Abc { .. })), "{why:?}");
    let (d, why) = defect_lower(3, 30, &st).unwrap();
    assert!(d >= 7);
    assert!(matches!(why.first(), Some(Provenance::SplitAdditivity { .. })), "{why:?}");
    for n in 2..12 {
        assert_eq!(defect_lower(2, n, &st).unwrap().0, 0);
    }
}

#[test]
fn lower_without_store_is_zero() {
    let empty = tempfile::tempdir().unwrap();
    let st = CertStore::open(empty.path());
    assert_eq!(defect_lower(5, 8, &st).unwrap().0, 0);
}

#[test]
fn upper_examples() {
    assert_eq!(defect_upper(3, 8).unwrap(), 1);
    assert_eq!(defect_upper(4, 5).unwrap(), 1);
    assert_eq!(defect_upper(6, 6).unwrap(), 2);
    assert!(matches!(defect_upper(11, 23), Err(bounds::BoundsError::SizeLimit { .. })));
}

#[test]
fn table_rows() {
    let rows = bounds::table(30, &store()).unwrap();
    let get = |p, q| rows.iter().find(|r| (r.p, r.q) == (p, q)).unwrap();
    assert_eq!((get(3, 7).defect_lower, get(3, 7).defect_upper), (1, 1));
    assert_eq!((get(5, 8).defect_lower, get(5, 8).defect_upper), (4, 4));
    assert!(get(4, 10).defect_lower >= 3);
    assert_eq!(get(4, 10).defect_upper, 4);
    assert!(rows.windows(2).all(|w| (w[0].betti, w[0].p) <= (w[1].betti, w[1].p)));
    assert!(rows.iter().all(|r| r.is_consistent()));
    let csv = bounds::table_csv(&rows);
    assert!(csv.starts_with("b1,p,q,components,genus,defect_lo,defect_hi,provenance\n"));
    assert_eq!(csv.lines().count(), rows.len() + 1);
}

#[test]
fn lemma_examples() {
    let base = BaseDefects::pinned();
    let (c, r) = lemma345_bound(6, 12, &base).unwrap();
    assert_eq!(c, LemmaCase::Three);
    assert!(r >= q(8, 51));
    assert!(lemma345_bound(8, 7, &base).unwrap().1 >= q(2, 11));
    assert!(lemma345_bound(5, 6, &base).unwrap().1 >= q(1, 5));
    assert!(lemma345_bound(7, 12, &base).is_err());
    assert!(lemma345_bound(3, 9, &base).is_err());
}

#[test]
fn stored_bases_reach_pinned_values() {
    let base = BaseDefects::from_store(&store()).unwrap();
    assert!(base.entries.iter().all(|e| !matches!(e.source, Provenance::TableFixture { .. })));
    let pinned = BaseDefects::pinned();
    for (a, b) in base.entries.iter().zip(&pinned.entries) {
        assert_eq!((a.case, a.q, a.defect), (b.case, b.q, b.defect));
    }
}

#[test]
fn asymptotic_examples() {
    assert_eq!(asymptotic_defect(1, Variant::Fifth).unwrap().defect, 0.into());
    let r = asymptotic_defect(10, Variant::Fifth).unwrap();
    assert_eq!(r.ratio, q(450, 2352));
    assert_eq!(asymptotic_defect(5, Variant::Theorem2).unwrap().limit, q(47, 63));
    assert!(asymptotic_defect(0, Variant::Fifth).is_err());
}

#[test]
fn fifth_ratio_formula() {
    for n in 1..40i64 {
        let r = asymptotic_defect(n as usize, Variant::Fifth).unwrap();
        assert_eq!(r.ratio, q(5 * n * n - 5 * n, 25 * n * n - 15 * n + 2));
    }
}

#[test]
fn proposition_rows() {
    let rep = prop1_verify(12, 12, &store()).unwrap();
    assert!(rep.passed(), "{:?}", rep.gaps());
    let row = |p, q| rep.rows.iter().find(|r| (r.p, r.q) == (p, q)).unwrap();
    assert_eq!(row(3, 8).ratio.as_deref(), Some("1/7"));
    assert_eq!(row(2, 9).method, Prop1Method::Exceptional);
    assert!(matches!(row(7, 11).method, Prop1Method::Split { a: 1, b: 1 }));
    assert!(prop1_verify(9, 12, &store()).is_err());
}

fn closure_keys(n: usize) -> BTreeSet<(usize, usize)> {
    (2..=n).flat_map(|p| (p..=3 * n).map(move |q| (p, q))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_monotone(seeds in proptest::collection::vec((3usize..8, 3usize..20, 0usize..5), 0..8)) {
        let mut certs = CertifiedDefects::default();
        for &(p, q, d) in &seeds {
            let (p, q) = (p.min(q), p.max(q));
            if certs.get(p, q).is_none_or(|(old, _)| *old < d) {
                certs.insert(p, q, d, Provenance::TableFixture { p, q, defect: d });
            }
        }
        let keys = closure_keys(8);
        let cl = DefectClosure::compute(&keys, &certs);
        for &(p, q) in &keys {
            let v = cl.get(p, q).unwrap().0;
            if let Some((v2, _)) = cl.get(p + 1, q) {
                prop_assert!(v2 >= v);
            }
            if let Some((v2, _)) = cl.get(p, q + 1) {
                prop_assert!(v2 >= v);
            }
        }
        for &(p, q, d) in &seeds {
            prop_assert!(cl.get(p, q).unwrap().0 >= d);
        }
    }
}
