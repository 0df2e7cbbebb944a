use slicegenus::braid::{l_n, torus, w_omega, w_omega_rev, BraidWord};
use slicegenus::linalg::IntMatrix;
use slicegenus::search::{
    compose_plumb, compose_product, default_store_path, find_alexander_trivial, first_occurrences,
    genus_upper_bound, search, search_with_support, transport, CertStore, SearchBudget,
};
use slicegenus::seifert::seifert_matrix;

fn tilde_x() -> BraidWord {
    BraidWord::parse("a1 a3 a2^2 a1 a3 a2^3", 4).unwrap()
}

#[test]
fn tilde_x_search_and_genus() {
    let w = tilde_x();
    let cert = search(&w, 0, &SearchBudget::default()).unwrap();
    assert_eq!(cert.rank(), 2);
    assert_eq!(genus_upper_bound(&w, &cert).unwrap(), 1);
    let empty = search(&BraidWord::parse("a1 a1 a1", 2).unwrap(), 0, &SearchBudget::default()).unwrap();
    assert_eq!(empty.rank(), 0);
    assert_eq!(genus_upper_bound(&BraidWord::parse("a1 a1 a1", 2).unwrap(), &empty).unwrap(), 1);
}

#[test]
fn no_isotropic_vector_gives_empty_basis() {
    let b = find_alexander_trivial(&IntMatrix::from_rows(&[vec![1]]), 0, &SearchBudget::default()).unwrap();
    assert_eq!(b.cols(), 0);
}

#[test]
fn search_is_deterministic() {
    let w = torus(3, 7).unwrap();
    let b = SearchBudget {
        restarts: 2,
        ..SearchBudget::default()
    };
    assert_eq!(search(&w, 5, &b).unwrap(), search(&w, 5, &b).unwrap());
}

#[test]
fn t45_through_subword() {
    let sub = BraidWord::parse("a1 a2^2 a3 a1 a2^3 a3", 4).unwrap();
    let cert = search(&sub, 0, &SearchBudget::default()).unwrap();
    assert_eq!(cert.rank(), 2);
    let w = torus(4, 5).unwrap();
    let moved = transport(&cert, &w).unwrap();
    assert!(moved.verify().passed());
    assert_eq!(genus_upper_bound(&w, &moved).unwrap(), 5);
}

#[test]
fn plumbing_iterates() {
    let mut m = IntMatrix::zeros(0, 0);
    for n in 1..=4 {
        m = compose_plumb(&m).unwrap();
        assert_eq!(m.rows(), 2 * n);
        let genus = l_n(n).unwrap().closure_stats().genus.unwrap();
        assert!(genus >= n);
    }
}

#[test]
fn composing_with_empty_keeps_rank() {
    let beta = BraidWord::parse("a1 a2^2 a1^2 a2^2 a1^2", 3).unwrap();
    let alpha = beta.prefix(beta.len() - 1);
    let cb = search_with_support(&beta, 0, &SearchBudget::default(), Some(alpha.len())).unwrap();
    let (_, bp) = first_occurrences(&beta);
    let mut ca = transport(&cb, &alpha.concat(&bp)).unwrap();
    ca.support_prefix = Some(alpha.len());
    let hopf = BraidWord::parse("a1 a2", 3).unwrap();
    let empty = search(&hopf, 0, &SearchBudget::default()).unwrap();
    assert_eq!(empty.rank(), 0);
    let out = compose_product(&alpha, &ca, &empty).unwrap();
    assert_eq!(out.rank(), ca.rank());
    assert!(out.verify().passed());
}

#[test]
fn composition_rejects_wrong_support() {
    let beta = BraidWord::parse("a1 a2^2 a1^2 a2^2 a1^2", 3).unwrap();
    let alpha = BraidWord::parse("a1 a2^2 a1^2 a2^2 a1", 3).unwrap();
    let (_, bp) = first_occurrences(&beta);
    let target = alpha.concat(&bp);
    let cb = search(&beta, 0, &SearchBudget::default()).unwrap();
    let ca = search(&target, 0, &SearchBudget::default()).unwrap();
    assert_eq!(ca.rank(), 2);
    let d = seifert_matrix(&target).unwrap();
    let pre = d.prefix_bricks(alpha.len());
    let v = &ca.basis_matrix(d.size()).columns()[0];
    assert!(v.iter().enumerate().any(|(i, x)| !pre.contains(&i) && *x != 0.into()));
    assert!(matches!(
        compose_product(&alpha, &ca, &cb),
        Err(slicegenus::search::SearchError::Support(8))
    ));
}

#[test]
fn bundled_store_certificates_verify() {
    let st = CertStore::open(default_store_path());
    let listed = st.list().unwrap();
    assert!(listed.len() >= 13);
    for (hash, rank) in listed {
        let c = CertStore::load(&st.root().join(format!("{hash}-r{rank}.json"))).unwrap();
        assert_eq!(c.rank(), rank);
        assert!(c.verify().passed(), "{hash}");
        assert_eq!(CertStore::word_hash(c.word.as_ref().unwrap()), hash);
    }
    let o = w_omega().concat(&w_omega_rev()).pow(4);
    let c = st.best(&o).unwrap().expect("(ωω̃)^4 certificate");
    assert_eq!(c.rank(), 8);
    assert_eq!(c.support_prefix, Some(28));
}

#[test]
fn store_roundtrip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let st = CertStore::open(dir.path());
    let w = tilde_x();
    let cert = search(&w, 0, &SearchBudget::default()).unwrap();
    let path = st.save(&cert).unwrap();
    assert_eq!(st.best(&w).unwrap(), Some(cert.clone()));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut bad = cert.clone();
    bad.restriction = seifert_matrix(&w).unwrap().matrix;
    std::fs::write(&path, serde_json::to_string(&bad).unwrap()).unwrap();
    assert_eq!(st.best(&w).unwrap(), None);
    std::fs::write(&path, text).unwrap();
    assert!(st.best(&w).unwrap().is_some());
}
