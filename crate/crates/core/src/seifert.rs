//! Seifert matrices of canonical surfaces of positive braid closures.
//!
//! The first homology of the canonical surface has one generator per brick:
//! a pair of consecutive occurrences of the same generator.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidWord, ClosureStats};
use crate::linalg::{alexander_of_form, AlexanderPolynomial, IntMatrix, IntPoly, LinalgError};

/// Version tag of the brick ordering, stored in certificates.
pub const BRICK_ORDER_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("word {0} is split; its canonical surface is disconnected")]
    Split(String),
    #[error("deleting positions {0:?} leaves a split word")]
    SplitSubword(Vec<usize>),
    #[error("position {pos} out of range for a word of length {len}")]
    BadPosition { pos: usize, len: usize },
    #[error("subword embedding does not pull back the Seifert form")]
    EmbeddingMismatch,
    #[error("torus_alexander({p},{q}) needs coprime p, q >= 1")]
    NotCoprime { p: usize, q: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Two consecutive occurrences (0-based positions) of generator `column`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Brick {
    pub column: usize,
    pub start: usize,
    pub end: usize,
}

/// Where an off-diagonal entry goes and with which sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    pub sign: i8,
    /// Put the entry at `(earlier, later)` rather than `(later, earlier)`.
    pub forward: bool,
}

/// Linking convention for off-diagonal brick pairs.
///
/// For adjacent columns, `x` is the brick in the lower column and `y` the one
/// in the next column; `upper_first` covers `x.start < y.start < x.end < y.end`
/// and `lower_first` covers `y.start < x.start < y.end < x.end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Convention {
    pub same_column: Placement,
    pub upper_first: Placement,
    pub lower_first: Placement,
}

/// The convention fixed by calibration against the torus knot Alexander
/// polynomials, the `tildeX` form and the known signatures.
pub const CONVENTION: Convention = Convention {
    same_column: Placement {
        sign: -1,
        forward: true,
    },
    upper_first: Placement {
        sign: 1,
        forward: true,
    },
    lower_first: Placement {
        sign: -1,
        forward: true,
    },
};

impl Convention {
    /// All 64 sign/placement variants.
    pub fn all() -> Vec<Convention> {
        let ps: Vec<Placement> = [1i8, -1]
            .iter()
            .flat_map(|&sign| [true, false].map(|forward| Placement { sign, forward }))
            .collect();
        let mut out = Vec::new();
        for &a in &ps {
            for &b in &ps {
                for &c in &ps {
                    out.push(Convention {
                        same_column: a,
                        upper_first: b,
                        lower_first: c,
                    });
                }
            }
        }
        out
    }
}

/// Bricks of a word, column-major then by position.
pub fn bricks(w: &BraidWord) -> Vec<Brick> {
    let mut out = Vec::new();
    for column in 1..w.strands() {
        let occ: Vec<usize> = (0..w.len()).filter(|&p| w.letters()[p] == column).collect();
        out.extend(occ.windows(2).map(|p| Brick {
            column,
            start: p[0],
            end: p[1],
        }));
    }
    out
}

/// Seifert matrix in the brick basis under an arbitrary convention.
pub fn matrix_with(bricks: &[Brick], c: &Convention) -> IntMatrix {
    let n = bricks.len();
    let mut m = IntMatrix::zeros(n, n);
    let mut put = |i: usize, j: usize, pl: Placement| {
        let (r, s) = if pl.forward { (i, j) } else { (j, i) };
        m[(r, s)] = BigInt::from(pl.sign);
    };
    for (i, x) in bricks.iter().enumerate() {
        for (j, y) in bricks.iter().enumerate().skip(i + 1) {
            if y.column == x.column && y.start == x.end {
                put(i, j, c.same_column);
            } else if y.column == x.column + 1 {
                if x.start < y.start && y.start < x.end && x.end < y.end {
                    put(i, j, c.upper_first);
                } else if y.start < x.start && x.start < y.end && y.end < x.end {
                    put(i, j, c.lower_first);
                }
            }
        }
    }
    for i in 0..n {
        m[(i, i)] = BigInt::one();
    }
    m
}

/// A canonical surface: word, brick basis and Seifert matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub word: BraidWord,
    pub bricks: Vec<Brick>,
    pub matrix: IntMatrix,
    pub stats: ClosureStats,
}

impl SeifertData {
    pub fn size(&self) -> usize {
        self.bricks.len()
    }

    /// Indices of the bricks lying in the first `k` letters; these span the
    /// homology of the prefix surface.
    pub fn prefix_bricks(&self, k: usize) -> Vec<usize> {
        (0..self.bricks.len())
            .filter(|&i| self.bricks[i].end < k)
            .collect()
    }

    pub fn alexander(&self) -> AlexanderPolynomial {
        alexander_of_form(&self.matrix).expect("Seifert matrices are square")
    }
}

pub fn seifert_matrix(w: &BraidWord) -> Result<SeifertData, SeifertError> {
    let stats = w.closure_stats();
    if !stats.nonsplit {
        return Err(SeifertError::Split(w.to_string()));
    }
    let bricks = bricks(w);
    let matrix = matrix_with(&bricks, &CONVENTION);
    debug_assert_eq!(Some(bricks.len()), stats.betti);
    Ok(SeifertData {
        word: w.clone(),
        bricks,
        matrix,
        stats,
    })
}

/// Embedding of the brick basis of `w` with `deleted` (0-based positions)
/// removed into the brick basis of `w`; rows index bricks of `w`.
///
/// The pull-back identity `S_{w'} = Eᵀ S_w E` is checked before returning.
pub fn embed_subword(w: &BraidWord, deleted: &BTreeSet<usize>) -> Result<IntMatrix, SeifertError> {
    if let Some(&p) = deleted.iter().find(|&&p| p >= w.len()) {
        return Err(SeifertError::BadPosition { pos: p, len: w.len() });
    }
    let positions: Vec<usize> = deleted.iter().copied().collect();
    let sub = w.delete_positions(&positions);
    if !sub.closure_stats().nonsplit {
        return Err(SeifertError::SplitSubword(positions));
    }
    let big = seifert_matrix(w)?;
    let small = seifert_matrix(&sub)?;
    let kept: Vec<usize> = (0..w.len()).filter(|p| !deleted.contains(p)).collect();
    let mut e = IntMatrix::zeros(big.size(), small.size());
    for (j, b) in small.bricks.iter().enumerate() {
        let (s, t) = (kept[b.start], kept[b.end]);
        for (i, x) in big.bricks.iter().enumerate() {
            if x.column == b.column && x.start >= s && x.end <= t {
                e[(i, j)] = BigInt::one();
            }
        }
    }
    if big.matrix.congruence(&e)? != small.matrix {
        return Err(SeifertError::EmbeddingMismatch);
    }
    Ok(e)
}

/// Positions (0-based) to delete from `w` to obtain `sub`, choosing the
/// leftmost matching of letters, if `sub` is a subword of `w`.
pub fn subword_deletions(w: &BraidWord, sub: &BraidWord) -> Option<BTreeSet<usize>> {
    let mut keep = Vec::with_capacity(sub.len());
    let mut p = 0;
    for &x in sub.letters() {
        while p < w.len() && w.letters()[p] != x {
            p += 1;
        }
        if p == w.len() {
            return None;
        }
        keep.push(p);
        p += 1;
    }
    let keep: BTreeSet<usize> = keep.into_iter().collect();
    Some((0..w.len()).filter(|p| !keep.contains(p)).collect())
}

/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))` for coprime `p, q`.
pub fn torus_alexander(p: usize, q: usize) -> Result<AlexanderPolynomial, SeifertError> {
    if p == 0 || q == 0 || num_integer::gcd(p, q) != 1 {
        return Err(SeifertError::NotCoprime { p, q });
    }
    let num = &IntPoly::t_pow_minus_one(p * q) * &IntPoly::t_pow_minus_one(1);
    let den = &IntPoly::t_pow_minus_one(p) * &IntPoly::t_pow_minus_one(q);
    let quot = num.div_exact(&den).expect("cyclotomic quotient is exact");
    Ok(AlexanderPolynomial::from_raw(quot))
}
