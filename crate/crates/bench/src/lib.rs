//! Benchmark inputs shared by the criterion targets.

use slicegenus::braid::{torus, BraidWord};

/// Torus words of growing size, labelled `T(p,q)`.
pub fn torus_inputs() -> Vec<(String, BraidWord)> {
    [(3, 7), (4, 9), (5, 11), (7, 10)]
        .into_iter()
        .map(|(p, q)| (format!("T({p},{q})"), torus(p, q).expect("p, q >= 2")))
        .collect()
}
