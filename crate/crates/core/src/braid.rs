//! Positive braid words, named families and a checked rewriting engine.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("generator index {index} out of range 1..{max} for {strands} strands")]
    IndexOutOfRange {
        index: usize,
        strands: usize,
        max: usize,
    },
    #[error("exponent must be positive in token {0:?}")]
    BadExponent(String),
    #[error("malformed token {0:?}")]
    MalformedToken(String),
    #[error("need at least {min} strands, got {got}")]
    TooFewStrands { min: usize, got: usize },
    #[error("missing strand count (expected `n=<strands>; ...`)")]
    MissingStrands,
    #[error("illegal move {mv} on {word}: {reason}")]
    IllegalMove {
        mv: Move,
        word: String,
        reason: String,
    },
    #[error("bad family parameters: {0}")]
    BadParameter(String),
    #[error("trace line {line}: {reason}")]
    BadTrace { line: usize, reason: String },
}

/// A positive braid word on `strands` strands; letters are generator indices `1..strands`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::TooFewStrands { min: 1, got: 0 });
        }
        if let Some(&bad) = letters.iter().find(|&&x| x == 0 || x >= strands) {
            return Err(BraidError::IndexOutOfRange {
                index: bad,
                strands,
                max: strands.saturating_sub(1),
            });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace separated tokens `a<k>` or `k`, each optionally `^m`.
    pub fn parse(text: &str, strands: usize) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands {
                min: 2,
                got: strands,
            });
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| BraidError::MalformedToken(tok.to_string()))?;
                    if e <= 0 {
                        return Err(BraidError::BadExponent(tok.to_string()));
                    }
                    (b, e as usize)
                }
                None => (tok, 1),
            };
            let digits = base.strip_prefix('a').unwrap_or(base);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(BraidError::MalformedToken(tok.to_string()));
            }
            let k: usize = digits
                .parse()
                .map_err(|_| BraidError::MalformedToken(tok.to_string()))?;
            letters.extend(std::iter::repeat_n(k, exp));
        }
        BraidWord::new(strands, letters)
    }

    /// Parses the canonical form `n=<strands>; a1 a2^2 ...`.
    pub fn parse_canonical(text: &str) -> Result<Self, BraidError> {
        let text = text.trim();
        let rest = text.strip_prefix("n=").ok_or(BraidError::MissingStrands)?;
        let (n, body) = rest.split_once(';').unwrap_or((rest, ""));
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| BraidError::MalformedToken(n.to_string()))?;
        if n == 1 && body.trim().is_empty() {
            return BraidWord::new(1, Vec::new());
        }
        BraidWord::parse(body, n)
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord::new(strands, Vec::new()).expect("at least one strand")
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; strand counts must agree.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.repeat(k),
        }
    }

    /// The same letters viewed on more strands.
    pub fn with_strands(&self, strands: usize) -> Result<BraidWord, BraidError> {
        BraidWord::new(strands, self.letters.clone())
    }

    /// Adds `k` to every generator index and `k` strands on the left.
    pub fn shifted(&self, k: usize) -> BraidWord {
        BraidWord {
            strands: self.strands + k,
            letters: self.letters.iter().map(|x| x + k).collect(),
        }
    }

    /// Removes the letters at the given 0-based positions.
    pub fn delete_positions(&self, positions: &[usize]) -> BraidWord {
        let mut drop = vec![false; self.len()];
        for &p in positions {
            drop[p] = true;
        }
        BraidWord {
            strands: self.strands,
            letters: self
                .letters
                .iter()
                .zip(drop)
                .filter(|(_, d)| !d)
                .map(|(x, _)| *x)
                .collect(),
        }
    }

    /// The first `k` letters.
    pub fn prefix(&self, k: usize) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters[..k].to_vec(),
        }
    }

    /// True when `other` is obtained from `self` by deleting letters.
    pub fn contains_subword(&self, other: &BraidWord) -> bool {
        let mut it = self.letters.iter();
        other.letters.iter().all(|x| it.any(|y| y == x))
    }

    /// The underlying permutation: `perm[i]` is where strand `i` ends (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        // pos[s] = current position of strand s
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let (a, b) = (at[g - 1], at[g]);
            at.swap(g - 1, g);
            pos[a] = g;
            pos[b] = g - 1;
        }
        pos
    }

    pub fn closure_stats(&self) -> ClosureStats {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut components = 0;
        for s in 0..self.strands {
            if !seen[s] {
                components += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        let mut present = vec![false; self.strands];
        for &g in &self.letters {
            present[g] = true;
        }
        let nonsplit = (1..self.strands).all(|g| present[g]);
        let (betti, genus) = if nonsplit {
            let betti = self.len() + 1 - self.strands;
            debug_assert!((betti + 1 - components).is_multiple_of(2));
            (Some(betti), Some((betti + 1 - components) / 2))
        } else {
            (None, None)
        };
        ClosureStats {
            components,
            betti,
            genus,
            nonsplit,
        }
    }

    /// Applies a move, checking its legality.
    pub fn apply_move(&self, mv: Move) -> Result<BraidWord, BraidError> {
        let illegal = |reason: &str| BraidError::IllegalMove {
            mv,
            word: self.to_string(),
            reason: reason.to_string(),
        };
        let p = mv.position();
        if p == 0 {
            return Err(illegal("positions are 1-based"));
        }
        let i = p - 1;
        let w = &self.letters;
        let mut out = w.clone();
        match mv {
            Move::Commute(_) => {
                if i + 1 >= w.len() {
                    return Err(illegal("window runs past the end"));
                }
                if w[i].abs_diff(w[i + 1]) < 2 {
                    return Err(illegal("letters do not commute"));
                }
                out.swap(i, i + 1);
            }
            Move::Relation(_) => {
                if i + 2 >= w.len() {
                    return Err(illegal("window runs past the end"));
                }
                let (a, b, c) = (w[i], w[i + 1], w[i + 2]);
                if a != c || a.abs_diff(b) != 1 {
                    return Err(illegal("window is not of the form a_k a_(k±1) a_k"));
                }
                out[i] = b;
                out[i + 1] = a;
                out[i + 2] = b;
            }
            Move::Delete(_) => {
                if i >= w.len() {
                    return Err(illegal("position past the end"));
                }
                out.remove(i);
            }
        }
        Ok(BraidWord {
            strands: self.strands,
            letters: out,
        })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.strands)?;
        let mut i = 0;
        while i < self.letters.len() {
            let g = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == g {
                j += 1;
            }
            if j - i == 1 {
                write!(f, " a{g}")?;
            } else {
                write!(f, " a{g}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord({self})")
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse_canonical(s)
    }
}

impl TryFrom<String> for BraidWord {
    type Error = BraidError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<BraidWord> for String {
    fn from(w: BraidWord) -> String {
        w.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureStats {
    pub components: usize,
    /// First Betti number of the canonical surface; withheld for split words.
    pub betti: Option<usize>,
    pub genus: Option<usize>,
    pub nonsplit: bool,
}

// ---------------------------------------------------------------------------
// families

fn need(cond: bool, msg: impl Into<String>) -> Result<(), BraidError> {
    if cond {
        Ok(())
    } else {
        Err(BraidError::BadParameter(msg.into()))
    }
}

/// `(a1 a2 ... a_{p-1})^q` on `p` strands.
pub fn torus(p: usize, q: usize) -> Result<BraidWord, BraidError> {
    need(p >= 2 && q >= 1, format!("torus({p},{q}) needs p >= 2, q >= 1"))?;
    let row: Vec<usize> = (1..p).collect();
    BraidWord::new(p, row.repeat(q))
}

fn half_twist_letters(n: usize) -> Vec<usize> {
    (1..n).rev().flat_map(|top| 1..=top).collect()
}

/// `Δ_n = (a1...a_{n-1})(a1...a_{n-2})...(a1)`.
pub fn half_twist(n: usize) -> Result<BraidWord, BraidError> {
    need(n >= 2, format!("half_twist({n}) needs n >= 2"))?;
    BraidWord::new(n, half_twist_letters(n))
}

fn omega_letters(l: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..l).collect();
    v.extend((1..l).rev());
    v
}

/// `Ω_ℓ = a1...a_{ℓ-2} a_{ℓ-1}^2 a_{ℓ-2}...a1` on `ℓ` strands.
pub fn omega(l: usize) -> Result<BraidWord, BraidError> {
    need(l >= 2, format!("omega({l}) needs l >= 2"))?;
    BraidWord::new(l, omega_letters(l))
}

fn gamma_letters(j: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (1..j).collect();
    v.extend((1..j - 1).rev());
    v
}

/// `Γ_j = a1...a_{j-2} a_{j-1} a_{j-2}...a1` on `j` strands.
pub fn gamma(j: usize) -> Result<BraidWord, BraidError> {
    need(j >= 2, format!("gamma({j}) needs j >= 2"))?;
    BraidWord::new(j, gamma_letters(j))
}

/// The `(3n+1)`-strand braid whose closure is the plumbing of `n` copies of the
/// `tildeX` tree.
pub fn l_n(n: usize) -> Result<BraidWord, BraidError> {
    need(n >= 1, format!("l_n({n}) needs n >= 1"))?;
    let mut v = vec![1];
    for k in 1..=n {
        let (a, b, c) = (3 * k - 2, 3 * k - 1, 3 * k);
        v.extend([a, c, b, b]);
        if k < n {
            v.push(3 * k + 1);
        }
        v.extend([a, c, b, b]);
    }
    BraidWord::new(3 * n + 1, v)
}

/// `ω = a1 a2 a3 a4` on five strands.
pub fn w_omega() -> BraidWord {
    BraidWord::new(5, vec![1, 2, 3, 4]).unwrap()
}

/// `ω̃ = a4 a3 a2 a1` on five strands.
pub fn w_omega_rev() -> BraidWord {
    BraidWord::new(5, vec![4, 3, 2, 1]).unwrap()
}

/// Named family lookup used by the command line.
pub fn family(name: &str, params: &[usize]) -> Result<BraidWord, BraidError> {
    let arity = |k: usize| need(params.len() == k, format!("{name} takes {k} parameter(s)"));
    match name {
        "torus" => {
            arity(2)?;
            torus(params[0], params[1])
        }
        "half_twist" => {
            arity(1)?;
            half_twist(params[0])
        }
        "omega" => {
            arity(1)?;
            omega(params[0])
        }
        "gamma" => {
            arity(1)?;
            gamma(params[0])
        }
        "l_n" => {
            arity(1)?;
            l_n(params[0])
        }
        "w_omega" => {
            arity(0)?;
            Ok(w_omega())
        }
        "w_omega_rev" => {
            arity(0)?;
            Ok(w_omega_rev())
        }
        _ => Err(BraidError::BadParameter(format!("unknown family {name:?}"))),
    }
}

// ---------------------------------------------------------------------------
// moves and traces

/// An elementary rewriting step. Positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// Swap the far-apart letters at `p, p+1`.
    Commute(usize),
    /// `a_k a_{k±1} a_k → a_{k±1} a_k a_{k±1}` on the window starting at `p`.
    Relation(usize),
    /// Delete the letter at `p`.
    Delete(usize),
}

impl Move {
    pub fn position(self) -> usize {
        match self {
            Move::Commute(p) | Move::Relation(p) | Move::Delete(p) => p,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Commute(p) => write!(f, "C {p}"),
            Move::Relation(p) => write!(f, "R {p}"),
            Move::Delete(p) => write!(f, "D {p}"),
        }
    }
}

/// A labelled stretch `moves[from..to]` of a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub initial: BraidWord,
    pub moves: Vec<Move>,
    pub annotations: Vec<Annotation>,
    pub final_word: BraidWord,
}

impl MoveTrace {
    /// Replays every move from the initial word and returns the result.
    pub fn replay(&self) -> Result<BraidWord, BraidError> {
        self.moves
            .iter()
            .try_fold(self.initial.clone(), |w, &m| w.apply_move(m))
    }

    /// True when the moves are all legal and end at `final_word`.
    pub fn verify(&self) -> bool {
        self.replay().is_ok_and(|w| w == self.final_word)
    }

    pub fn deletions(&self) -> usize {
        self.moves
            .iter()
            .filter(|m| matches!(m, Move::Delete(_)))
            .count()
    }

    /// Line-oriented text form: `I <word>`, one move per line, `M` annotations, `F <word>`.
    pub fn to_text(&self) -> String {
        let mut s = format!("I {}\n", self.initial);
        for m in &self.moves {
            s.push_str(&format!("{m}\n"));
        }
        for a in &self.annotations {
            s.push_str(&format!("M {} {} {}\n", a.from, a.to, a.label));
        }
        s.push_str(&format!("F {}\n", self.final_word));
        s
    }

    pub fn from_text(text: &str) -> Result<MoveTrace, BraidError> {
        let mut initial = None;
        let mut final_word = None;
        let mut moves = Vec::new();
        let mut annotations = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let bad = |reason: &str| BraidError::BadTrace {
                line: n + 1,
                reason: reason.to_string(),
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (tag, rest) = line.split_once(' ').ok_or_else(|| bad("missing field"))?;
            let pos = || rest.trim().parse::<usize>().map_err(|_| bad("bad position"));
            match tag {
                "I" => initial = Some(rest.parse()?),
                "F" => final_word = Some(rest.parse()?),
                "C" => moves.push(Move::Commute(pos()?)),
                "R" => moves.push(Move::Relation(pos()?)),
                "D" => moves.push(Move::Delete(pos()?)),
                "M" => {
                    let mut it = rest.splitn(3, ' ');
                    let from = it.next().and_then(|x| x.parse().ok());
                    let to = it.next().and_then(|x| x.parse().ok());
                    let (Some(from), Some(to)) = (from, to) else {
                        return Err(bad("bad annotation range"));
                    };
                    let label = it.next().unwrap_or("").to_string();
                    annotations.push(Annotation { from, to, label });
                }
                _ => return Err(bad("unknown record")),
            }
        }
        let missing = |what: &str| BraidError::BadTrace {
            line: 0,
            reason: format!("missing {what} record"),
        };
        Ok(MoveTrace {
            initial: initial.ok_or_else(|| missing("I"))?,
            moves,
            annotations,
            final_word: final_word.ok_or_else(|| missing("F"))?,
        })
    }
}

/// Builds a trace one checked move at a time.
struct Rewriter {
    initial: BraidWord,
    word: BraidWord,
    moves: Vec<Move>,
    annotations: Vec<Annotation>,
}

impl Rewriter {
    fn new(word: BraidWord) -> Self {
        Rewriter {
            initial: word.clone(),
            word,
            moves: Vec::new(),
            annotations: Vec::new(),
        }
    }

    fn apply(&mut self, mv: Move) -> Result<(), BraidError> {
        self.word = self.word.apply_move(mv)?;
        self.moves.push(mv);
        Ok(())
    }

    /// 0-based helpers.
    fn relation(&mut self, i: usize) -> Result<(), BraidError> {
        self.apply(Move::Relation(i + 1))
    }

    fn delete(&mut self, i: usize) -> Result<(), BraidError> {
        self.apply(Move::Delete(i + 1))
    }

    fn annotate(&mut self, from: usize, label: String) {
        self.annotations.push(Annotation {
            from,
            to: self.moves.len(),
            label,
        });
    }

    /// Rewrites the window at `start` into `target` using commutations only.
    ///
    /// Equal letters keep their relative order; every swap of the resulting
    /// bubble sort is checked as a commutation.
    fn rearrange(&mut self, start: usize, target: &[usize]) -> Result<(), BraidError> {
        let window = &self.word.letters()[start..start + target.len()];
        let mut used = vec![false; target.len()];
        let mut labels = Vec::with_capacity(window.len());
        for &x in window {
            let k = (0..target.len())
                .find(|&k| !used[k] && target[k] == x)
                .ok_or_else(|| BraidError::IllegalMove {
                    mv: Move::Commute(start + 1),
                    word: self.word.to_string(),
                    reason: "window is not a rearrangement of the target".to_string(),
                })?;
            used[k] = true;
            labels.push(k);
        }
        let mut sorted = false;
        while !sorted {
            sorted = true;
            for p in 0..labels.len().saturating_sub(1) {
                if labels[p] > labels[p + 1] {
                    self.apply(Move::Commute(start + p + 1))?;
                    labels.swap(p, p + 1);
                    sorted = false;
                }
            }
        }
        debug_assert_eq!(&self.word.letters()[start..start + target.len()], target);
        Ok(())
    }

    fn finish(self) -> MoveTrace {
        MoveTrace {
            initial: self.initial,
            moves: self.moves,
            annotations: self.annotations,
            final_word: self.word,
        }
    }
}

/// `(a_i...a_j) Γ_i (a_i...a_j) → Γ_{i+1} (a_{i+1}...a_j) (a_i...a_{j-1})` on the window at `start`.
fn substitute(rw: &mut Rewriter, start: usize, i: usize, j: usize) -> Result<(), BraidError> {
    let from = rw.moves.len();
    let block: Vec<usize> = (i..=j).collect();
    let g = gamma_letters(i);
    debug_assert_eq!(
        &rw.word.letters()[start..start + 2 * block.len() + g.len()],
        [block.clone(), g.clone(), block.clone()].concat()
    );
    // interleaved middle part: a_{i+1} a_i a_{i+2} a_{i+1} ... a_j a_{j-1} a_j
    let mut mid = Vec::new();
    for m in i + 1..=j {
        mid.push(m);
        mid.push(m - 1);
    }
    mid.push(j);
    let mut target = vec![i];
    target.extend(&g);
    target.extend(&mid);
    rw.rearrange(start, &target)?;

    // braid relations on a_k a_{k-1} a_k for k = j down to i+1
    let mid_start = start + 1 + g.len();
    let mut at = mid_start + mid.len() - 3;
    for _k in (i + 1..=j).rev() {
        rw.relation(at)?;
        at = at.saturating_sub(2);
    }

    // k = i: a_i Γ_i a_i → Γ_{i+1}
    let u: Vec<usize> = (1..i.saturating_sub(1)).collect();
    let mut local = u.clone();
    local.extend([i, i - 1, i]);
    local.extend(u.iter().rev());
    rw.rearrange(start, &local)?;
    rw.relation(start + u.len())?;

    let mut fin = gamma_letters(i + 1);
    fin.extend(i + 1..=j);
    fin.extend(i..j);
    rw.rearrange(start, &fin)?;
    rw.annotate(from, format!("substitute i={i} j={j}"));
    Ok(())
}

/// Output of [`subsurface_split`].
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub trace: MoveTrace,
    /// `Γ_2...Γ_ℓ Ω_ℓ^{n-2ℓ+1} Γ_ℓ...Γ_2` on `ℓ` strands.
    pub part1: BraidWord,
    /// `Δ_{n-2ℓ+1}`; in the final word its generators are shifted by `ℓ`.
    pub part2: BraidWord,
}

/// Rewrites `Δ_n` by deletions, commutations and braid relations into the split
/// union of `Γ_2...Γ_ℓ Ω_ℓ^{n-2ℓ+1} Γ_ℓ...Γ_2` and `Δ_{n-2ℓ+1}`.
pub fn subsurface_split(n: usize, l: usize) -> Result<SplitResult, BraidError> {
    need(
        l >= 2 && n >= 2 * l,
        format!("subsurface_split({n},{l}) needs n >= 2l >= 4"),
    )?;
    let mut rw = Rewriter::new(half_twist(n)?);
    for s in 2..=l {
        // word: Γ_2..Γ_s [B_{n-2s+2} Γ_s B_{n-2s+1} Γ_s ... B_1 Γ_s] Γ_{s-1}..Γ_2,
        // blocks B_m = a_s ... a_{s+m-1}
        let prefix: usize = (2..=s).map(|j| 2 * j - 3).sum();
        let first = n + 2 - 2 * s;
        let from = rw.moves.len();
        rw.delete(prefix + first - 1)?;
        rw.annotate(from, format!("delete a{}", n + 1 - s));
        let mut pos = prefix;
        for m in (1..first).rev() {
            substitute(&mut rw, pos, s, s + m - 1)?;
            pos += (2 * s - 1) + (m - 1);
        }
    }
    // delete every a_ℓ, turning each Γ_{ℓ+1} into Ω_ℓ
    let from = rw.moves.len();
    while let Some(p) = rw.word.letters().iter().position(|&x| x == l) {
        rw.delete(p)?;
    }
    rw.annotate(from, format!("delete all a{l}"));

    let mut p1: Vec<usize> = (2..=l).flat_map(gamma_letters).collect();
    for _ in 0..n + 1 - 2 * l {
        p1.extend(omega_letters(l));
    }
    p1.extend((2..=l).rev().flat_map(gamma_letters));
    let p2 = half_twist_letters(n + 1 - 2 * l);
    let mut target = p1.clone();
    target.extend(p2.iter().map(|x| x + l));
    let from = rw.moves.len();
    rw.rearrange(0, &target)?;
    rw.annotate(from, "separate summands".to_string());

    let trace = rw.finish();
    debug_assert!(trace.verify());
    Ok(SplitResult {
        trace,
        part1: BraidWord::new(l, p1)?,
        part2: BraidWord::new(n + 1 - 2 * l, p2)?,
    })
}
