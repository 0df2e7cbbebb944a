use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::certificate::half_block_unit;
use super::{DefectCertificate, Origin, SearchError};
use crate::braid::BraidWord;
use crate::linalg::{alexander_of_form, IntMatrix};
use crate::seifert::{embed_subword, seifert_matrix};

/// `M′` for a plumbing with the two-generator block: `M` bordered by a zero
/// column and row for the first new vector and `[row, 1, 1]` last.
///
/// `col` is the last column above the new block, `row` the last row left of it.
pub fn compose_plumb_with(m: &IntMatrix, col: &[BigInt], row: &[BigInt]) -> Result<IntMatrix, SearchError> {
    let k = m.size()?;
    assert_eq!(col.len(), k);
    assert_eq!(row.len(), k);
    let mut out = IntMatrix::zeros(k + 2, k + 2);
    for i in 0..k {
        for j in 0..k {
            out[(i, j)] = m[(i, j)].clone();
        }
        out[(i, k + 1)] = col[i].clone();
        out[(k + 1, i)] = row[i].clone();
    }
    out[(k + 1, k)] = BigInt::one();
    out[(k + 1, k + 1)] = BigInt::one();
    if !alexander_of_form(&out)?.is_trivial() {
        return Err(SearchError::NotAlexanderTrivial);
    }
    Ok(out)
}

/// [`compose_plumb_with`] with zero wildcard entries.
pub fn compose_plumb(m: &IntMatrix) -> Result<IntMatrix, SearchError> {
    let k = m.size()?;
    let z = vec![BigInt::zero(); k];
    compose_plumb_with(m, &z, &z)
}

/// Positions (0-based) of the first occurrence of each generator, and the
/// subword they form.
pub fn first_occurrences(w: &BraidWord) -> (Vec<usize>, BraidWord) {
    let mut seen = BTreeSet::new();
    let pos: Vec<usize> = (0..w.len()).filter(|&p| seen.insert(w.letters()[p])).collect();
    let letters = pos.iter().map(|&p| w.letters()[p]).collect();
    let sub = BraidWord::new(w.strands(), letters).expect("subword of a valid word");
    (pos, sub)
}

fn check_word(cert: &DefectCertificate, expected: &BraidWord) -> Result<(), SearchError> {
    if cert.word.as_ref() != Some(expected) {
        return Err(SearchError::WrongWord {
            expected: expected.to_string(),
            found: cert.word.as_ref().map_or("a raw form".into(), ToString::to_string),
        });
    }
    let rep = cert.verify();
    if !rep.passed() {
        return Err(SearchError::Unverified(rep.failures().join(", ")));
    }
    Ok(())
}

/// Combine a certificate on `αβ′` whose first half lives on `α` with a
/// certificate on `β` into one on `αβ` of the summed rank.
///
/// `β′` keeps only the first occurrence of each generator of `β`. The
/// output basis is ordered `(v_B, v_A, w_B, w_A)`, so it has the same block
/// form and its first half lives on `α` followed by the support of the
/// second certificate.
pub fn compose_product(
    alpha: &BraidWord,
    cert_a: &DefectCertificate,
    cert_b: &DefectCertificate,
) -> Result<DefectCertificate, SearchError> {
    let beta = cert_b
        .word
        .as_ref()
        .ok_or_else(|| SearchError::BlockForm("second certificate has no word".into()))?;
    let (first_pos, beta_prime) = first_occurrences(beta);
    check_word(cert_a, &alpha.concat(&beta_prime))?;
    check_word(cert_b, beta)?;
    if !half_block_unit(&cert_a.restriction) {
        return Err(SearchError::BlockForm("det(t·B − Cᵀ) is not a unit".into()));
    }
    let ab_prime = alpha.concat(&beta_prime);
    let data_a = seifert_matrix(&ab_prime)?;
    let pre = data_a.prefix_bricks(alpha.len());
    let ka = cert_a.rank() / 2;
    let ba = cert_a.basis_matrix(data_a.size());
    let supported = (0..ka).all(|j| (0..data_a.size()).all(|i| pre.contains(&i) || ba[(i, j)].is_zero()));
    if !supported {
        return Err(SearchError::Support(alpha.len()));
    }
    let target = alpha.concat(beta);
    let off = alpha.len();
    let del_a: BTreeSet<usize> = (0..beta.len())
        .filter(|p| !first_pos.contains(p))
        .map(|p| p + off)
        .collect();
    let e_a = embed_subword(&target, &del_a)?;
    let del_b: BTreeSet<usize> = (0..off).collect();
    let e_b = embed_subword(&target, &del_b)?;
    let ta = e_a.mul(&ba)?.columns();
    let kb = cert_b.rank() / 2;
    let tb = e_b.mul(&cert_b.basis_matrix(e_b.cols()))?.columns();
    let mut cols = Vec::with_capacity(ta.len() + tb.len());
    cols.extend_from_slice(&tb[..kb]);
    cols.extend_from_slice(&ta[..ka]);
    cols.extend_from_slice(&tb[kb..]);
    cols.extend_from_slice(&ta[ka..]);
    let basis = IntMatrix::from_columns(e_a.rows(), &cols);
    let origin = Origin::Composed {
        left: ab_prime.to_string(),
        right: beta.to_string(),
    };
    let mut cert = DefectCertificate::for_word(&target, basis, origin)?;
    cert.support_prefix = cert_b.support_prefix.map(|p| p + off);
    let rep = cert.verify();
    if !rep.passed() || !half_block_unit(&cert.restriction) {
        return Err(SearchError::Unverified(rep.failures().join(", ")));
    }
    Ok(cert)
}
