//! Slice-genus bounds for positive braid links.

pub mod braid;
pub mod linalg;
pub mod seifert;
pub mod signatures;
pub mod search;
pub mod bounds;

pub use braid::{BraidError, BraidWord, ClosureStats, Move, MoveTrace};
pub use linalg::{AlexanderPolynomial, IntMatrix, IntPoly, LinalgError};
pub use seifert::SeifertData;
pub use signatures::{SignatureSample, Theta};
pub use search::{CertStore, DefectCertificate, SearchBudget, SearchError, VerificationReport};
pub use bounds::{BoundsError, Provenance, TorusRecord};
