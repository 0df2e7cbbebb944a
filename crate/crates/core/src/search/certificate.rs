use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{SearchBudget, SearchError};
use crate::braid::BraidWord;
use crate::linalg::{alexander_det, det_int, rank, IntMatrix, IntPoly};
use crate::seifert::{embed_subword, seifert_matrix, subword_deletions, BRICK_ORDER_VERSION};

/// How a certificate came about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Search { seed: u64, budget: SearchBudget },
    Composed { left: String, right: String },
    Transported { from: String },
    Raw,
}

/// Basis of an Alexander-trivial subgroup of a Seifert form.
///
/// The form is the Seifert matrix of `word` in the brick basis or, for raw
/// certificates, the explicit `form`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectCertificate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<BraidWord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strands: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<IntMatrix>,
    pub brick_order_version: u32,
    /// Column vectors.
    pub basis: Vec<Vec<crate::linalg::DecInt>>,
    pub restriction: IntMatrix,
    pub alexander: IntPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<SearchBudget>,
    /// The first half of the basis lives on the prefix of this many letters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support_prefix: Option<usize>,
    pub origin: Origin,
}

/// One named invariant of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rank: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: if passed { String::new() } else { detail.into() },
        });
    }
}

/// `det(t·B − Cᵀ)` for a form `[[0, B], [C, D]]` is a unit monomial.
pub(crate) fn half_block_unit(r: &IntMatrix) -> bool {
    let k = r.rows() / 2;
    let top: Vec<usize> = (0..k).collect();
    let bottom: Vec<usize> = (k..2 * k).collect();
    let b = r.select(&top, &bottom);
    let c = r.select(&bottom, &top);
    let rows: Vec<Vec<IntPoly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| IntPoly::new(vec![-c[(j, i)].clone(), b[(i, j)].clone()]))
                .collect()
        })
        .collect();
    let det = crate::linalg::determinant(rows);
    det.coeffs().iter().filter(|x| !x.is_zero()).count() == 1
        && det.leading().is_some_and(|x| x.magnitude().is_one())
}

impl DefectCertificate {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrix(&self, rows: usize) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|c| c.iter().map(|x| x.0.clone()).collect())
            .collect();
        IntMatrix::from_columns(rows, &cols)
    }

    fn build(
        word: Option<&BraidWord>,
        form: Option<IntMatrix>,
        s: &IntMatrix,
        basis: IntMatrix,
        origin: Origin,
    ) -> Result<DefectCertificate, SearchError> {
        let restriction = s.congruence(&basis)?;
        let alexander = alexander_det(&restriction)?;
        let (seed, budget) = match &origin {
            Origin::Search { seed, budget } => (Some(*seed), Some(*budget)),
            _ => (None, None),
        };
        let cert = DefectCertificate {
            word: word.cloned(),
            strands: word.map(BraidWord::strands),
            form,
            brick_order_version: BRICK_ORDER_VERSION,
            basis: basis
                .columns()
                .into_iter()
                .map(|c| c.into_iter().map(crate::linalg::DecInt).collect())
                .collect(),
            restriction,
            alexander,
            seed,
            budget,
            support_prefix: None,
            origin,
        };
        let report = cert.verify();
        if !report.passed() {
            return Err(SearchError::Unverified(report.failures().join(", ")));
        }
        Ok(cert)
    }

    /// Certificate for basis columns in the brick basis of `w`.
    pub fn for_word(w: &BraidWord, basis: IntMatrix, origin: Origin) -> Result<DefectCertificate, SearchError> {
        let s = seifert_matrix(w)?.matrix;
        Self::build(Some(w), None, &s, basis, origin)
    }

    /// Certificate against an explicit form.
    pub fn for_form(form: &IntMatrix, basis: IntMatrix) -> Result<DefectCertificate, SearchError> {
        Self::build(None, Some(form.clone()), form, basis, Origin::Raw)
    }

    /// Recompute every invariant from scratch.
    pub fn verify(&self) -> VerificationReport {
        let mut rep = VerificationReport {
            rank: self.rank(),
            checks: Vec::new(),
        };
        let s = match (&self.word, &self.form) {
            (Some(w), None) => {
                let strands_ok = self.strands.is_none_or(|n| n == w.strands());
                rep.push("strands", strands_ok, "strand count disagrees with the word");
                rep.push(
                    "brick_order_version",
                    self.brick_order_version == BRICK_ORDER_VERSION,
                    format!("expected {BRICK_ORDER_VERSION}"),
                );
                match seifert_matrix(w) {
                    Ok(d) => d.matrix,
                    Err(e) => {
                        rep.push("seifert_form", false, e.to_string());
                        return rep;
                    }
                }
            }
            (None, Some(f)) if f.is_square() => f.clone(),
            _ => {
                rep.push("seifert_form", false, "need exactly one of word and square form");
                return rep;
            }
        };
        let n = s.rows();
        let k = self.rank();
        let shape_ok = self.basis.iter().all(|c| c.len() == n) && k.is_multiple_of(2);
        rep.push("shape", shape_ok, format!("need an even number of columns of length {n}"));
        if !shape_ok {
            return rep;
        }
        let b = self.basis_matrix(n);
        let r = s.congruence(&b).expect("shapes checked");
        rep.push("restriction", r == self.restriction, "stored restriction differs from basisᵀ·S·basis");
        rep.push("independence", rank(&b) == k, "basis columns are dependent");
        let half: Vec<usize> = (0..k / 2).collect();
        rep.push(
            "isotropic_half",
            r.select(&half, &half).is_zero(),
            "first half of the basis is not isotropic",
        );
        let alex = alexander_det(&r).expect("square");
        rep.push("alexander", alex == self.alexander, "stored Alexander polynomial differs");
        let unit = alex.coeffs().iter().filter(|x| !x.is_zero()).count() == 1
            && alex.leading().is_some_and(|x| x.magnitude().is_one());
        rep.push("alexander_unit", unit, format!("det(tR − Rᵀ) = {alex} is not a unit"));
        let det = det_int(&r.sub(&r.transpose()).expect("square")).expect("square");
        rep.push("det_one", det == BigInt::one(), format!("det(R − Rᵀ) = {det}"));
        if let (Some(p), Some(w)) = (self.support_prefix, &self.word) {
            let ok = seifert_matrix(w).is_ok_and(|d| {
                let pre = d.prefix_bricks(p);
                (0..k / 2).all(|j| (0..n).all(|i| pre.contains(&i) || b[(i, j)].is_zero()))
            });
            rep.push("support", ok, format!("first half leaves the first {p} letters"));
        }
        rep
    }
}

/// `genus(w) − rank/2` for a certificate on `w`.
pub fn genus_upper_bound(w: &BraidWord, cert: &DefectCertificate) -> Result<usize, SearchError> {
    if cert.word.as_ref() != Some(w) {
        return Err(SearchError::WrongWord {
            expected: w.to_string(),
            found: cert.word.as_ref().map_or("a raw form".into(), ToString::to_string),
        });
    }
    let rep = cert.verify();
    if !rep.passed() {
        return Err(SearchError::Unverified(rep.failures().join(", ")));
    }
    let genus = w
        .closure_stats()
        .genus
        .ok_or_else(|| SearchError::Unverified("split word".into()))?;
    Ok(genus - cert.rank() / 2)
}

/// Carry a certificate on a subword of `target` over to `target`.
pub fn transport(cert: &DefectCertificate, target: &BraidWord) -> Result<DefectCertificate, SearchError> {
    let sub = cert
        .word
        .as_ref()
        .ok_or_else(|| SearchError::NotSubword("a raw form".into()))?;
    let deleted = subword_deletions(target, sub).ok_or_else(|| SearchError::NotSubword(sub.to_string()))?;
    let e = embed_subword(target, &deleted)?;
    let basis = e.mul(&cert.basis_matrix(e.cols()))?;
    DefectCertificate::for_word(
        target,
        basis,
        Origin::Transported {
            from: sub.to_string(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_tilde_x() {
        let a = tilde_x_form();
        let basis = IntMatrix::from_columns(
            6,
            &[
                [0, 1, -2, 1, 1, 1].map(BigInt::from).to_vec(),
                [1, 0, 0, 0, 0, 0].map(BigInt::from).to_vec(),
            ],
        );
        let cert = DefectCertificate::for_form(&a, basis).unwrap();
        assert_eq!(cert.restriction, IntMatrix::from_rows(&[vec![0, 0], vec![1, 1]]));
        assert_eq!(cert.alexander, IntPoly::from_i64(&[0, 1]));
        assert!(half_block_unit(&cert.restriction));
    }

    #[test]
    fn non_isotropic_first_vector_fails() {
        let a = tilde_x_form();
        let mut cert = DefectCertificate::for_form(
            &a,
            IntMatrix::from_columns(
                6,
                &[
                    [0, 1, -2, 1, 1, 1].map(BigInt::from).to_vec(),
                    [1, 0, 0, 0, 0, 0].map(BigInt::from).to_vec(),
                ],
            ),
        )
        .unwrap();
        cert.basis.swap(0, 1);
        let rep = cert.verify();
        assert!(!rep.passed());
        assert!(rep.failures().contains(&"isotropic_half"));
    }

    fn tilde_x_form() -> IntMatrix {
        let mut a = IntMatrix::identity(6);
        for (i, j) in [(0, 1), (1, 2), (3, 2), (4, 2), (5, 2)] {
            a[(i, j)] = BigInt::one();
        }
        a
    }
}
