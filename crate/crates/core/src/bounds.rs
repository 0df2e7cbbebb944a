//! Genus defect bounds for torus links: inherited lower bounds, signature
//! upper bounds, the assembled table and the counting behind the asymptotic
//! results.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{torus, BraidError};
use crate::search::{CertStore, StoreError};
use crate::signatures::{slice_lower_bound_at, BoundMode, SignatureError, Theta};

/// Largest Betti number for which [`defect_upper`] computes signatures.
pub const BETTI_CAP: usize = 200;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("torus link parameters need p, q >= 2, got ({0}, {1})")]
    OutOfRange(usize, usize),
    #[error("b1 = {betti} exceeds the cap of {cap} for signature bounds")]
    SizeLimit { betti: usize, cap: usize },
    #[error("hypotheses not met: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Components, first Betti number and genus of `T(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusStats {
    pub components: usize,
    pub betti: usize,
    pub genus: usize,
}

pub fn torus_stats(p: usize, q: usize) -> Result<TorusStats, BoundsError> {
    if p < 2 || q < 2 {
        return Err(BoundsError::OutOfRange(p, q));
    }
    let components = p.gcd(&q);
    let betti = (p - 1) * (q - 1);
    Ok(TorusStats {
        components,
        betti,
        genus: (betti + 1 - components) / 2,
    })
}

/// One step of a bound's justification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// A stored certificate on the torus word, by file name.
    Certificate { id: String, rank: usize, seed: Option<u64> },
    /// `Σ(p, q)` is a subsurface.
    Subword { p: usize, q: usize },
    /// A split union of two torus link surfaces is a subsurface.
    SplitAdditivity { first: (usize, usize), second: (usize, usize) },
    /// `Σ(T(pq, r))` contains `Σ(T(p, qr))`.
    Abc { p: usize, q: usize, r: usize },
    /// A pinned table value, used when no certificate is stored.
    TableFixture { p: usize, q: usize, defect: usize },
    /// Upper bound from a signature sample.
    Signature { theta: Theta, mode: BoundMode },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Certificate { id, rank, .. } => write!(f, "certificate {id} (rank {rank})"),
            Provenance::Subword { p, q } => write!(f, "subword ({p},{q})"),
            Provenance::SplitAdditivity { first, second } => {
                write!(f, "split ({},{}) + ({},{})", first.0, first.1, second.0, second.1)
            }
            Provenance::Abc { p, q, r } => write!(f, "abc ({},{}) in ({},{})", p, q * r, p * q, r),
            Provenance::TableFixture { p, q, defect } => write!(f, "table ({p},{q}) = {defect}"),
            Provenance::Signature { theta, mode } => match mode {
                BoundMode::Knot => write!(f, "signature at {theta}"),
                BoundMode::TableReproduction => write!(f, "signature at {theta} (link mode)"),
            },
        }
    }
}

/// Normalized key `(min, max)`.
fn key(p: usize, q: usize) -> (usize, usize) {
    (p.min(q), p.max(q))
}

/// Certified defects read from a store: `rank / 2` of the best verifying
/// certificate on either torus word.
#[derive(Clone, Debug, Default)]
pub struct CertifiedDefects {
    found: HashMap<(usize, usize), (usize, Provenance)>,
}

impl CertifiedDefects {
    /// Look up certificates for every key in `keys`.
    pub fn load(store: &CertStore, keys: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, BoundsError> {
        let listed: BTreeMap<String, Vec<usize>> = store.list()?.into_iter().fold(BTreeMap::new(), |mut m, (h, r)| {
            m.entry(h).or_insert_with(Vec::new).push(r);
            m
        });
        let mut found = HashMap::new();
        if listed.is_empty() {
            return Ok(CertifiedDefects { found });
        }
        for (p, q) in keys {
            let mut best: Option<(usize, Provenance)> = None;
            for (a, b) in [(p, q), (q, p)] {
                let w = torus(a, b)?;
                let hash = CertStore::word_hash(&w);
                if !listed.contains_key(&hash) {
                    continue;
                }
                if let Some(cert) = store.best(&w)? {
                    let d = cert.rank() / 2;
                    if best.as_ref().is_none_or(|(v, _)| d > *v) {
                        let path = store.path_for(&w, cert.rank());
                        let id = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                        best = Some((
                            d,
                            Provenance::Certificate {
                                id,
                                rank: cert.rank(),
                                seed: cert.seed,
                            },
                        ));
                    }
                }
            }
            if let Some(b) = best {
                found.insert(key(p, q), b);
            }
        }
        Ok(CertifiedDefects { found })
    }

    pub fn get(&self, p: usize, q: usize) -> Option<&(usize, Provenance)> {
        self.found.get(&key(p, q))
    }

    pub fn insert(&mut self, p: usize, q: usize, defect: usize, why: Provenance) {
        self.found.insert(key(p, q), (defect, why));
    }
}

/// Keys that one rule application at `(p, q)` reads.
fn references(p: usize, q: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (a, b) in [(p, q), (q, p)] {
        if a > 2 {
            out.push(key(a - 1, b));
        }
        for a1 in 2..=a / 2 {
            out.push(key(a1, b));
            out.push(key(a - a1, b));
        }
        for d in 3..a {
            if a % d == 0 && d <= b {
                out.push(key(d, a / d * b));
            }
        }
    }
    out
}

/// Every key reachable from `targets` through the inheritance rules.
fn domain(targets: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut keys = BTreeSet::new();
    let mut todo: Vec<(usize, usize)> = targets.iter().map(|&(p, q)| key(p, q)).collect();
    while let Some(k) = todo.pop() {
        if k.0 < 2 || !keys.insert(k) {
            continue;
        }
        todo.extend(references(k.0, k.1).into_iter().filter(|r| !keys.contains(r)));
    }
    keys
}

/// Lower bounds on the genus defect closed under the inheritance rules.
#[derive(Clone, Debug)]
pub struct DefectClosure {
    values: BTreeMap<(usize, usize), (usize, Option<Provenance>)>,
}

impl DefectClosure {
    /// Fixed point over `keys` (normalized, `p <= q`), seeded by `certs`.
    pub fn compute(keys: &BTreeSet<(usize, usize)>, certs: &CertifiedDefects) -> DefectClosure {
        let mut values: BTreeMap<(usize, usize), (usize, Option<Provenance>)> = keys
            .iter()
            .map(|&(p, q)| {
                let v = certs.get(p, q).map_or((0, None), |(d, why)| (*d, Some(why.clone())));
                ((p, q), v)
            })
            .collect();
        let mut order: Vec<(usize, usize)> = keys.iter().copied().collect();
        order.sort_by_key(|&(p, q)| ((p - 1) * (q - 1), p));
        loop {
            let mut changed = false;
            for &(p, q) in &order {
                let get = |a: usize, b: usize| -> usize {
                    if a < 2 || b < 2 {
                        return 0;
                    }
                    values.get(&key(a, b)).map_or(0, |v| v.0)
                };
                let mut best = values[&(p, q)].0;
                let mut why: Option<Provenance> = None;
                let mut offer = |v: usize, w: Provenance| {
                    if v > best {
                        best = v;
                        why = Some(w);
                    }
                };
                for (a, b) in [(p - 1, q), (p, q - 1)] {
                    let (a, b) = key(a, b);
                    offer(get(a, b), Provenance::Subword { p: a, q: b });
                }
                for (a, b) in [(p, q), (q, p)] {
                    for a1 in 2..=a / 2 {
                        let v = get(a1, b) + get(a - a1, b);
                        offer(v, Provenance::SplitAdditivity {
                            first: key(a1, b),
                            second: key(a - a1, b),
                        });
                    }
                    for d in 3..a {
                        if a % d == 0 && d <= b {
                            let v = get(d, a / d * b);
                            offer(v, Provenance::Abc { p: d, q: a / d, r: b });
                        }
                    }
                }
                if let Some(w) = why {
                    values.insert((p, q), (best, Some(w)));
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        DefectClosure { values }
    }

    /// For a set of target links, with certificates from `store`.
    pub fn for_targets(targets: &[(usize, usize)], store: &CertStore) -> Result<DefectClosure, BoundsError> {
        let keys = domain(targets);
        let certs = CertifiedDefects::load(store, certificate_keys(&keys))?;
        Ok(Self::compute(&keys, &certs))
    }

    pub fn get(&self, p: usize, q: usize) -> Option<(usize, Option<&Provenance>)> {
        self.values.get(&key(p, q)).map(|(v, w)| (*v, w.as_ref()))
    }

    /// Full derivation of `(p, q)`, outermost step first.
    pub fn derivation(&self, p: usize, q: usize) -> Vec<Provenance> {
        let mut out = Vec::new();
        let mut todo = vec![key(p, q)];
        while let Some(k) = todo.pop() {
            let Some((v, Some(w))) = self.values.get(&k) else {
                continue;
            };
            if *v == 0 {
                continue;
            }
            match w {
                Provenance::Subword { p, q } => todo.push((*p, *q)),
                Provenance::SplitAdditivity { first, second } => {
                    todo.push(*second);
                    todo.push(*first);
                }
                Provenance::Abc { p, q, r } => todo.push(key(*p, q * r)),
                _ => {}
            }
            out.push(w.clone());
        }
        out
    }
}

/// Keys small enough to plausibly carry a stored certificate.
fn certificate_keys(keys: &BTreeSet<(usize, usize)>) -> Vec<(usize, usize)> {
    keys.iter()
        .copied()
        .filter(|&(p, q)| p >= 3 && (p - 1) * (q - 1) <= BETTI_CAP)
        .collect()
}

/// Lower bound on `Δg(T(p, q))` and the step that achieves it.
pub fn defect_lower(p: usize, q: usize, store: &CertStore) -> Result<(usize, Vec<Provenance>), BoundsError> {
    torus_stats(p, q)?;
    let closure = DefectClosure::for_targets(&[(p, q)], store)?;
    let (v, _) = closure.get(p, q).expect("target is in its own domain");
    Ok((v, closure.derivation(p, q)))
}

/// Upper bound `genus − slice_lower_bound` at resolution `2pq`, with the
/// sample it comes from.
pub fn defect_upper_with(p: usize, q: usize) -> Result<(usize, Option<Provenance>), BoundsError> {
    let st = torus_stats(p, q)?;
    if st.betti > BETTI_CAP {
        return Err(BoundsError::SizeLimit {
            betti: st.betti,
            cap: BETTI_CAP,
        });
    }
    let b = slice_lower_bound_at(&torus(p, q)?, (2 * p * q) as u64)?;
    let why = b.witness.map(|s| Provenance::Signature {
        theta: s.theta,
        mode: b.mode,
    });
    Ok((st.genus.saturating_sub(b.value as usize), why))
}

pub fn defect_upper(p: usize, q: usize) -> Result<usize, BoundsError> {
    Ok(defect_upper_with(p, q)?.0)
}

/// One row of the torus link table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusRecord {
    pub p: usize,
    pub q: usize,
    pub components: usize,
    pub betti: usize,
    pub genus: usize,
    pub defect_lower: usize,
    pub defect_upper: usize,
    /// Lower-bound derivation, outermost step first, then the upper bound's
    /// signature sample.
    pub provenance: Vec<Provenance>,
}

impl TorusRecord {
    pub fn is_exact(&self) -> bool {
        self.defect_lower == self.defect_upper
    }

    pub fn is_consistent(&self) -> bool {
        self.defect_lower <= self.defect_upper && self.defect_upper <= self.genus
    }
}

/// All `T(p, q)` with `3 <= p <= q` and `b1 <= b1_max`, sorted by Betti
/// number and then `p`.
pub fn table(b1_max: usize, store: &CertStore) -> Result<Vec<TorusRecord>, BoundsError> {
    if b1_max < 4 {
        return Err(BoundsError::Hypothesis(format!("b1_max = {b1_max} < 4")));
    }
    let mut rows: Vec<(usize, usize)> = Vec::new();
    for p in 3.. {
        if (p - 1) * (p - 1) > b1_max {
            break;
        }
        for q in p.. {
            if (p - 1) * (q - 1) > b1_max {
                break;
            }
            rows.push((p, q));
        }
    }
    rows.sort_by_key(|&(p, q)| ((p - 1) * (q - 1), p));
    let closure = DefectClosure::for_targets(&rows, store)?;
    rows.par_iter()
        .map(|&(p, q)| {
            let st = torus_stats(p, q)?;
            let (hi, sig) = defect_upper_with(p, q)?;
            let (lo, _) = closure.get(p, q).expect("row is in the domain");
            let mut provenance = closure.derivation(p, q);
            provenance.extend(sig);
            Ok(TorusRecord {
                p,
                q,
                components: st.components,
                betti: st.betti,
                genus: st.genus,
                defect_lower: lo,
                defect_upper: hi,
                provenance,
            })
        })
        .collect()
}

/// CSV with a header row; provenance steps are joined by `; `.
pub fn table_csv(rows: &[TorusRecord]) -> String {
    let mut out = String::from("b1,p,q,components,genus,defect_lo,defect_hi,provenance\n");
    for r in rows {
        let prov: Vec<String> = r.provenance.iter().map(ToString::to_string).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},\"{}\"\n",
            r.betti,
            r.p,
            r.q,
            r.components,
            r.genus,
            r.defect_lower,
            r.defect_upper,
            prov.join("; ")
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// the 3/4/5 lemma and the 6/7 proposition

/// Which divisor case of the lemma applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LemmaCase {
    Three,
    Four,
    Five,
}

impl LemmaCase {
    pub fn divisor(self) -> usize {
        match self {
            LemmaCase::Three => 3,
            LemmaCase::Four => 4,
            LemmaCase::Five => 5,
        }
    }

    /// Least `q` the case covers.
    pub fn min_q(self) -> usize {
        match self {
            LemmaCase::Three => 10,
            LemmaCase::Four => 7,
            LemmaCase::Five => 6,
        }
    }

    /// The claimed lower bound on `2Δg/b1`.
    pub fn constant(self) -> BigRational {
        let (n, d) = match self {
            LemmaCase::Three => (8, 51),
            LemmaCase::Four => (2, 11),
            LemmaCase::Five => (1, 5),
        };
        BigRational::new(n.into(), d.into())
    }

    /// Second parameters of the base links, in increasing order.
    pub fn base_qs(self) -> [usize; 4] {
        match self {
            LemmaCase::Three => [7, 10, 13, 17],
            LemmaCase::Four => [5, 7, 9, 11],
            LemmaCase::Five => [4, 6, 7, 8],
        }
    }

    fn pinned(self) -> [usize; 4] {
        [1, 2, 3, 4]
    }

    pub fn for_p(p: usize) -> Option<LemmaCase> {
        [LemmaCase::Three, LemmaCase::Four, LemmaCase::Five]
            .into_iter()
            .find(|c| p.is_multiple_of(c.divisor()))
    }
}

/// Defects of the base links of each case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDefects {
    pub entries: Vec<BaseDefect>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDefect {
    pub case: LemmaCase,
    pub q: usize,
    pub defect: usize,
    pub source: Provenance,
}

impl BaseDefects {
    /// From stored certificates through the inheritance rules, falling back
    /// to the pinned values where the store does not reach them.
    pub fn from_store(store: &CertStore) -> Result<BaseDefects, BoundsError> {
        let cases = [LemmaCase::Three, LemmaCase::Four, LemmaCase::Five];
        let keys: Vec<(usize, usize)> = cases
            .iter()
            .flat_map(|c| c.base_qs().map(|q| (c.divisor(), q)))
            .collect();
        let closure = DefectClosure::for_targets(&keys, store)?;
        let mut entries = Vec::new();
        for c in cases {
            for (q, pinned) in c.base_qs().into_iter().zip(c.pinned()) {
                let p = c.divisor();
                let derived = closure.get(p, q).and_then(|(d, why)| Some((d, why?.clone())));
                let (defect, source) = match derived {
                    Some((d, why)) if d >= pinned => (d, why),
                    _ => (pinned, Provenance::TableFixture { p, q, defect: pinned }),
                };
                entries.push(BaseDefect {
                    case: c,
                    q,
                    defect,
                    source,
                });
            }
        }
        Ok(BaseDefects { entries })
    }

    /// The pinned values alone.
    pub fn pinned() -> BaseDefects {
        let mut entries = Vec::new();
        for c in [LemmaCase::Three, LemmaCase::Four, LemmaCase::Five] {
            for (q, d) in c.base_qs().into_iter().zip(c.pinned()) {
                entries.push(BaseDefect {
                    case: c,
                    q,
                    defect: d,
                    source: Provenance::TableFixture {
                        p: c.divisor(),
                        q,
                        defect: d,
                    },
                });
            }
        }
        BaseDefects { entries }
    }

    fn of(&self, case: LemmaCase) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|e| e.case == case)
            .map(|e| (e.q, e.defect))
            .collect()
    }
}

/// Defect of `T(d, n)` from the decomposition `n = m·k + r`, with `m`
/// the largest base: `k` copies of the largest base and the best base that
/// fits in `r`.
pub fn lemma345_defect(case: LemmaCase, n: usize, base: &BaseDefects) -> usize {
    let b = base.of(case);
    let (m, dm) = *b.last().expect("four bases");
    let (k, r) = n.div_rem(&m);
    let s = b.iter().filter(|(q, _)| *q <= r).map(|(_, d)| *d).max().unwrap_or(0);
    k * dm + s
}

/// Certified lower bound on `2Δg/b1` for `T(p, q)` from the decomposition:
/// `Δg(T(da, q)) >= Δg(T(d, aq))`.
pub fn lemma345_bound(p: usize, q: usize, base: &BaseDefects) -> Result<(LemmaCase, BigRational), BoundsError> {
    let case = LemmaCase::for_p(p).ok_or_else(|| BoundsError::Hypothesis(format!("{p} is not divisible by 3, 4 or 5")))?;
    lemma345_bound_case(case, p, q, base).map(|r| (case, r))
}

/// [`lemma345_bound`] for a given case.
pub fn lemma345_bound_case(case: LemmaCase, p: usize, q: usize, base: &BaseDefects) -> Result<BigRational, BoundsError> {
    let d = case.divisor();
    if !p.is_multiple_of(d) || q < case.min_q() {
        return Err(BoundsError::Hypothesis(format!(
            "case {d} needs {d} | p and q >= {}, got ({p}, {q})",
            case.min_q()
        )));
    }
    let st = torus_stats(p, q)?;
    let defect = lemma345_defect(case, p / d * q, base);
    Ok(BigRational::new((2 * defect).into(), st.betti.into()))
}

/// `165a + 612b >= 769` for all `1 <= a, b <= n`, checked directly and
/// against the rational identity it comes from.
pub fn prop1_inequality(n: usize) -> bool {
    (1..=n).all(|a| {
        (1..=n).all(|b| {
            let direct = 165 * a + 612 * b >= 769;
            // 8(3a−1)/51 + 2(4b−1)/11 >= (3a+4b−1)/7
            let lhs = BigRational::new((8 * (3 * a - 1)).into(), 51.into())
                + BigRational::new((2 * (4 * b - 1)).into(), 11.into());
            let rhs = BigRational::new((3 * a + 4 * b - 1).into(), 7.into());
            direct && lhs >= rhs
        })
    })
}

/// `T(2, n)`, `T(3, 3..=6)` and `T(4, 4)`.
pub fn prop1_exceptional(p: usize, q: usize) -> bool {
    let (p, q) = key(p, q);
    p == 2 || (p == 3 && q <= 6) || (p == 4 && q == 4)
}

/// How a row of the proposition check was settled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prop1Method {
    Exceptional,
    /// `3 | p`, `4 | p` or `5 | p`.
    Lemma { case: LemmaCase },
    /// `p = 3a + 4b`.
    Split { a: usize, b: usize },
    /// Both parameters below 10: the table's lower bound.
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop1Row {
    pub p: usize,
    pub q: usize,
    pub method: Prop1Method,
    /// Certified lower bound on `2Δg/b1` (for table rows, on `Δg/g`).
    pub ratio: Option<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop1Report {
    pub inequality_holds: bool,
    pub rows: Vec<Prop1Row>,
}

impl Prop1Report {
    pub fn passed(&self) -> bool {
        self.inequality_holds && self.rows.iter().all(|r| r.passed)
    }

    pub fn gaps(&self) -> Vec<&Prop1Row> {
        self.rows.iter().filter(|r| !r.passed).collect()
    }
}

/// The proposition's case analysis for all `T(p, q)` with `p <= p_max`,
/// `q <= q_max`.
pub fn prop1_verify(p_max: usize, q_max: usize, store: &CertStore) -> Result<Prop1Report, BoundsError> {
    if p_max < 10 || q_max < 10 {
        return Err(BoundsError::Hypothesis("ranges must reach 10".into()));
    }
    let base = BaseDefects::from_store(store)?;
    let small: Vec<(usize, usize)> = (2..10).flat_map(|p| (p..10).map(move |q| (p, q))).collect();
    let closure = DefectClosure::for_targets(&small, store)?;
    let seventh = BigRational::new(1.into(), 7.into());
    let mut rows = Vec::new();
    for p in 2..=p_max {
        for q in 2..=q_max {
            // with both below 10 the table decides; otherwise q >= 10 after swapping
            let (p1, q1) = if q >= 10 { (p, q) } else { (q, p) };
            let row = if prop1_exceptional(p, q) {
                Prop1Row {
                    p,
                    q,
                    method: Prop1Method::Exceptional,
                    ratio: None,
                    passed: true,
                }
            } else if q1 < 10 {
                let st = torus_stats(p, q)?;
                let (d, _) = closure.get(p, q).expect("small rows are in the domain");
                let r = BigRational::new(d.into(), st.genus.into());
                Prop1Row {
                    p,
                    q,
                    method: Prop1Method::Table,
                    passed: r >= seventh,
                    ratio: Some(r.to_string()),
                }
            } else if let Some(case) = LemmaCase::for_p(p1) {
                let r = lemma345_bound_case(case, p1, q1, &base)?;
                // below b1 = 64 the lemma defers to the table
                let r = if r >= case.constant() {
                    r
                } else {
                    table_ratio(&closure, store, p1, q1)?.max(r)
                };
                Prop1Row {
                    p,
                    q,
                    method: Prop1Method::Lemma { case },
                    passed: r >= seventh,
                    ratio: Some(r.to_string()),
                }
            } else {
                let (a, b) = three_four(p1).expect("p not divisible by 3, 4, 5 and at least 7");
                let st = torus_stats(p1, q1)?;
                let d = lemma345_defect(LemmaCase::Three, a * q1, &base)
                    + lemma345_defect(LemmaCase::Four, b * q1, &base);
                let r = BigRational::new((2 * d).into(), st.betti.into());
                Prop1Row {
                    p,
                    q,
                    method: Prop1Method::Split { a, b },
                    passed: r >= seventh,
                    ratio: Some(r.to_string()),
                }
            };
            rows.push(row);
        }
    }
    Ok(Prop1Report {
        inequality_holds: prop1_inequality(50),
        rows,
    })
}

fn table_ratio(closure: &DefectClosure, store: &CertStore, p: usize, q: usize) -> Result<BigRational, BoundsError> {
    let st = torus_stats(p, q)?;
    let d = match closure.get(p, q) {
        Some((d, _)) => d,
        None => defect_lower(p, q, store)?.0,
    };
    Ok(BigRational::new((2 * d).into(), st.betti.into()))
}

/// `p = 3a + 4b` with `a, b >= 1`, smallest `b` first.
pub fn three_four(p: usize) -> Option<(usize, usize)> {
    (1..=p / 4).find(|b| p > 4 * b && (p - 4 * b).is_multiple_of(3)).map(|b| ((p - 4 * b) / 3, b))
}

// ---------------------------------------------------------------------------
// asymptotics

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Split unions in `Σ(Δ_{5n}²)`, the `4/5` bound.
    Fifth,
    /// Split unions of `Ω_5` powers in `Σ(Δ_{9n})`.
    Theorem2,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fifth" => Ok(Variant::Fifth),
            "theorem2" => Ok(Variant::Theorem2),
            _ => Err(format!("unknown variant {s:?}; use fifth or theorem2")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub n: usize,
    pub variant: Variant,
    pub defect: BigInt,
    pub genus: BigInt,
    /// `defect / genus`.
    pub ratio: BigRational,
    /// `1 − ratio`, the resulting bound on `g4 / g`.
    pub slice_ratio: BigRational,
    /// Limit of `slice_ratio` as `n → ∞`.
    pub limit: BigRational,
}

/// Genus of the closure of the half twist `Δ_m`.
pub fn half_twist_genus(m: usize) -> BigInt {
    let m = BigInt::from(m);
    let letters = &m * (&m - 1u32) / 2u32;
    let betti = letters - &m + 1u32;
    let components = (&m + 1u32) / 2u32;
    (betti - components + 1u32) / 2u32
}

/// Genus of `T(m, m)`.
pub fn torus_diagonal_genus(m: usize) -> BigInt {
    let m = BigInt::from(m);
    let betti = (&m - 1u32) * (&m - 1u32);
    (betti - &m + 1u32) / 2u32
}

/// Exact limit of the `Theorem2` bound: `1 − (72/14)/(81/4)`.
pub fn theorem2_limit() -> BigRational {
    BigRational::one() - BigRational::new(72.into(), 14.into()) / BigRational::new(81.into(), 4.into())
}

pub fn asymptotic_defect(n: usize, variant: Variant) -> Result<AsymptoticReport, BoundsError> {
    if n == 0 {
        return Err(BoundsError::Hypothesis("n >= 1".into()));
    }
    let (defect, genus, limit) = match variant {
        Variant::Fifth => {
            let d: BigInt = (1..n).map(|i| BigInt::from(5 * i)).sum();
            (d, torus_diagonal_genus(5 * n), BigRational::new(4.into(), 5.into()))
        }
        Variant::Theorem2 => {
            let d: BigInt = (1..n).map(|i| BigInt::from(4 + 8 * ((9 * i - 4) / 7))).sum();
            (d, half_twist_genus(9 * n), theorem2_limit())
        }
    };
    let ratio = if genus.is_zero() {
        BigRational::zero()
    } else {
        BigRational::new(defect.clone(), genus.clone())
    };
    Ok(AsymptoticReport {
        n,
        variant,
        slice_ratio: BigRational::one() - &ratio,
        defect,
        genus,
        ratio,
        limit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats() {
        assert_eq!(torus_stats(3, 7).unwrap(), TorusStats { components: 1, betti: 12, genus: 6 });
        assert_eq!(torus_stats(4, 6).unwrap(), TorusStats { components: 2, betti: 15, genus: 7 });
        assert_eq!(torus_stats(2, 2).unwrap(), TorusStats { components: 2, betti: 1, genus: 0 });
        assert!(torus_stats(1, 5).is_err());
    }

    #[test]
    fn genus_formulas_match_braids() {
        for m in 2..12 {
            let st = crate::braid::half_twist(m).unwrap().closure_stats();
            assert_eq!(half_twist_genus(m), BigInt::from(st.genus.unwrap()), "m = {m}");
            let st = torus(m, m).unwrap().closure_stats();
            assert_eq!(torus_diagonal_genus(m), BigInt::from(st.genus.unwrap()));
        }
    }

    #[test]
    fn closure_rules() {
        let mut certs = CertifiedDefects::default();
        let c = |d| Provenance::TableFixture { p: 0, q: 0, defect: d };
        certs.insert(3, 10, 2, c(2));
        certs.insert(3, 13, 3, c(3));
        certs.insert(3, 17, 4, c(4));
        let keys = domain(&[(5, 6), (3, 30), (2, 9)]);
        let cl = DefectClosure::compute(&keys, &certs);
        assert_eq!(cl.get(5, 6).unwrap().0, 2);
        assert!(matches!(cl.get(5, 6).unwrap().1, Some(Provenance::Abc { p: 3, q: 2, r: 5 })));
        assert_eq!(cl.get(3, 30).unwrap().0, 7);
        assert_eq!(cl.get(2, 9).unwrap().0, 0);
    }

    #[test]
    fn lemma_examples() {
        let base = BaseDefects::pinned();
        let (case, r) = lemma345_bound(6, 12, &base).unwrap();
        assert_eq!(case, LemmaCase::Three);
        assert!(r >= case.constant());
        let r = lemma345_bound_case(LemmaCase::Four, 8, 7, &base).unwrap();
        assert!(r >= LemmaCase::Four.constant());
        let r = lemma345_bound_case(LemmaCase::Five, 5, 6, &base).unwrap();
        assert_eq!(r, BigRational::new(1.into(), 5.into()));
    }

    #[test]
    fn proposition_arithmetic() {
        assert!(prop1_inequality(50));
        assert_eq!(165 + 612, 777);
        assert_eq!(three_four(7), Some((1, 1)));
        assert_eq!(three_four(11), Some((1, 2)));
        assert_eq!(three_four(13), Some((3, 1)));
        assert!(prop1_exceptional(9, 2));
    }

    #[test]
    fn asymptotics() {
        let r = asymptotic_defect(1, Variant::Fifth).unwrap();
        assert!(r.defect.is_zero());
        let r = asymptotic_defect(10, Variant::Fifth).unwrap();
        assert_eq!(r.ratio, BigRational::new(450.into(), 2352.into()));
        assert_eq!(theorem2_limit(), BigRational::new(47.into(), 63.into()));
        assert!(theorem2_limit() < BigRational::new(3.into(), 4.into()));
    }
}
