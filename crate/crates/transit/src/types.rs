//! Foundational value types shared by all modules: alphabets, words,
//! cylinders, eventually periodic subsets of the positive integers,
//! property identifiers, verdicts and witness scales.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("empty word not allowed here")]
    EmptyWord,
    #[error("witness scale components must all be >= 1 and H+K <= 255")]
    BadScale,
    #[error("sample guarantee inconsistent with bits: {0}")]
    BadSamples(String),
}

/// Ordered finite list of distinct symbol names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, TypeError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(TypeError::EmptyAlphabet);
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(TypeError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// Alphabet `{"0", "1", ..}` with `n` numeric symbols.
    pub fn numeric(n: usize) -> Self {
        Alphabet::new((0..n).map(|i| i.to_string())).expect("n >= 1")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    /// Parses a word. When every symbol is a single character the text is
    /// read character by character; otherwise symbols are comma-separated.
    pub fn parse_word(&self, text: &str) -> Result<Word, TypeError> {
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let mut out = Vec::new();
        if single && !text.contains(',') {
            for ch in text.chars() {
                let s = ch.to_string();
                let i = self
                    .index_of(&s)
                    .ok_or(TypeError::UnknownSymbol(s.clone()))?;
                out.push(i);
            }
        } else {
            for part in text.split(',').filter(|p| !p.is_empty()) {
                let i = self
                    .index_of(part.trim())
                    .ok_or_else(|| TypeError::UnknownSymbol(part.trim().to_string()))?;
                out.push(i);
            }
        }
        Ok(Word::new(out))
    }

    pub fn format_word(&self, w: &Word) -> String {
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let sep = if single { "" } else { "," };
        w.symbols()
            .iter()
            .map(|&i| self.symbols[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// Finite sequence of symbol indices over some alphabet. Validity against a
/// particular alphabet is established at parse/construction boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(symbols: Vec<usize>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * times);
        for _ in 0..times {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// True when the word is not a repetition of a strictly shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.0.len();
        if n == 0 {
            return false;
        }
        for d in 1..n {
            if n % d == 0 && (0..n).all(|i| self.0[i] == self.0[i % d]) {
                return false;
            }
        }
        true
    }
}

/// 1 iff `v` is a contiguous factor of `w`.
pub fn word_occurs_in(v: &Word, w: &Word) -> bool {
    let (nv, nw) = (v.len(), w.len());
    if nv == 0 {
        return true;
    }
    if nv > nw {
        return false;
    }
    w.symbols().windows(nv).any(|win| win == v.symbols())
}

/// Basic open set of a subshift, named by the word anchored at position 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cylinder {
    word: Word,
}

impl Cylinder {
    pub fn new(word: Word) -> Result<Self, TypeError> {
        if word.is_empty() {
            return Err(TypeError::EmptyWord);
        }
        Ok(Cylinder { word })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }
}

/// The ten transitivity-hierarchy properties plus exactness, dense periodic
/// sets and iterated almost openness.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub enum PropertyId {
    #[serde(rename = "TT")]
    Tt,
    #[serde(rename = "ST")]
    St,
    #[serde(rename = "VST")]
    Vst,
    #[serde(rename = "M")]
    M,
    #[serde(rename = "WM")]
    Wm,
    #[serde(rename = "ET")]
    Et,
    #[serde(rename = "SET")]
    Set,
    #[serde(rename = "SPT")]
    Spt,
    #[serde(rename = "TM")]
    Tm,
    #[serde(rename = "LEO")]
    Leo,
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "FULLY_EXACT")]
    FullyExact,
    #[serde(rename = "DENSE_PERIODIC")]
    DensePeriodic,
    #[serde(rename = "ITER_ALMOST_OPEN")]
    IterAlmostOpen,
}

impl PropertyId {
    pub const ALL: [PropertyId; 14] = [
        PropertyId::Tt,
        PropertyId::St,
        PropertyId::Vst,
        PropertyId::M,
        PropertyId::Wm,
        PropertyId::Et,
        PropertyId::Set,
        PropertyId::Spt,
        PropertyId::Tm,
        PropertyId::Leo,
        PropertyId::Exact,
        PropertyId::FullyExact,
        PropertyId::DensePeriodic,
        PropertyId::IterAlmostOpen,
    ];

    /// The ten core hierarchy properties, in definition order.
    pub const TEN: [PropertyId; 10] = [
        PropertyId::Tt,
        PropertyId::St,
        PropertyId::Vst,
        PropertyId::M,
        PropertyId::Wm,
        PropertyId::Et,
        PropertyId::Set,
        PropertyId::Spt,
        PropertyId::Tm,
        PropertyId::Leo,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PropertyId::Tt => "TT",
            PropertyId::St => "ST",
            PropertyId::Vst => "VST",
            PropertyId::M => "M",
            PropertyId::Wm => "WM",
            PropertyId::Et => "ET",
            PropertyId::Set => "SET",
            PropertyId::Spt => "SPT",
            PropertyId::Tm => "TM",
            PropertyId::Leo => "LEO",
            PropertyId::Exact => "EXACT",
            PropertyId::FullyExact => "FULLY_EXACT",
            PropertyId::DensePeriodic => "DENSE_PERIODIC",
            PropertyId::IterAlmostOpen => "ITER_ALMOST_OPEN",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyId::ALL
            .iter()
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// Canonical representation of an eventually periodic subset of
/// `{1, 2, 3, ...}`: membership of `n >= m` is `pattern[(n - m) mod p]`,
/// membership of `n < m` is `transient[n - 1]`. The period `p` is minimal
/// and `m` is minimal given `p`; this is enforced by every constructor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventuallyPeriodicSet {
    threshold: u64,
    transient: Vec<bool>,
    period: u64,
    pattern: Vec<bool>,
}

/// Mutually exclusive classes of eventually periodic sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetClass {
    #[serde(rename = "EMPTY")]
    Empty,
    #[serde(rename = "FINITE_NONEMPTY")]
    FiniteNonempty,
    #[serde(rename = "INFINITE_NOT_SYNDETIC")]
    InfiniteNotSyndetic,
    #[serde(rename = "SYNDETIC_NOT_COFINITE")]
    SyndeticNotCofinite,
    #[serde(rename = "COFINITE")]
    Cofinite,
}

impl fmt::Display for SetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SetClass::Empty => "EMPTY",
            SetClass::FiniteNonempty => "FINITE_NONEMPTY",
            SetClass::InfiniteNotSyndetic => "INFINITE_NOT_SYNDETIC",
            SetClass::SyndeticNotCofinite => "SYNDETIC_NOT_COFINITE",
            SetClass::Cofinite => "COFINITE",
        };
        f.write_str(s)
    }
}

impl EventuallyPeriodicSet {
    /// Builds the canonical set from membership bits for `n = 1..=bits.len()`
    /// together with the detected eventual-periodicity guarantee: membership
    /// is `period`-periodic from `index` on. Requires
    /// `bits.len() >= index + 2 * period` and rejects inconsistent guarantees.
    pub fn from_samples(
        bits: &[bool],
        index: usize,
        period: usize,
    ) -> Result<Self, TypeError> {
        if index < 1 || period < 1 {
            return Err(TypeError::BadSamples(
                "index and period must be >= 1".into(),
            ));
        }
        let b = bits.len();
        if b < index + 2 * period {
            return Err(TypeError::BadSamples(format!(
                "need at least index + 2*period = {} bits, got {b}",
                index + 2 * period
            )));
        }
        // bit for n is bits[n-1]
        for n in index..=b - period {
            if bits[n - 1] != bits[n + period - 1] {
                return Err(TypeError::BadSamples(format!(
                    "bit at n={n} differs from bit at n={}",
                    n + period
                )));
            }
        }

        // Minimal eventual period divides the supplied one; find the smallest
        // divisor that reproduces the window starting at `index`.
        let window: Vec<bool> = (index..index + period).map(|n| bits[n - 1]).collect();
        let mut p = period;
        for d in 1..period {
            if period % d == 0 && (0..period).all(|i| window[i] == window[i % d]) {
                p = d;
                break;
            }
        }

        // Minimal threshold: smallest t such that anchoring the pattern at t
        // replays every supplied bit from t on.
        let mut m = index;
        for t in 1..=index {
            let anchored: Vec<bool> = (t..t + p).map(|n| bits[n - 1]).collect();
            if (t..=b).all(|n| bits[n - 1] == anchored[(n - t) % p]) {
                m = t;
                break;
            }
        }
        let pattern: Vec<bool> = (m..m + p).map(|n| bits[n - 1]).collect();
        let transient: Vec<bool> = (1..m).map(|n| bits[n - 1]).collect();
        Ok(EventuallyPeriodicSet {
            threshold: m as u64,
            transient,
            period: p as u64,
            pattern,
        })
    }

    /// Builds from arbitrary (possibly non-minimal) components.
    pub fn from_parts(
        transient: Vec<bool>,
        pattern: Vec<bool>,
    ) -> Result<Self, TypeError> {
        if pattern.is_empty() {
            return Err(TypeError::BadSamples("empty pattern".into()));
        }
        let index = transient.len() + 1;
        let period = pattern.len();
        let total = index + 2 * period;
        let mut bits = Vec::with_capacity(total);
        bits.extend_from_slice(&transient);
        while bits.len() < total {
            let k = bits.len() - transient.len();
            bits.push(pattern[k % period]);
        }
        Self::from_samples(&bits, index, period)
    }

    /// The whole of the positive integers.
    pub fn full() -> Self {
        EventuallyPeriodicSet {
            threshold: 1,
            transient: vec![],
            period: 1,
            pattern: vec![true],
        }
    }

    pub fn empty() -> Self {
        EventuallyPeriodicSet {
            threshold: 1,
            transient: vec![],
            period: 1,
            pattern: vec![false],
        }
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn pattern(&self) -> &[bool] {
        &self.pattern
    }

    pub fn transient(&self) -> &[bool] {
        &self.transient
    }

    /// Membership of `n >= 1`.
    pub fn member(&self, n: u64) -> bool {
        assert!(n >= 1, "hitting sets index from 1");
        if n < self.threshold {
            self.transient[(n - 1) as usize]
        } else {
            self.pattern[((n - self.threshold) % self.period) as usize]
        }
    }

    pub fn is_empty_set(&self) -> bool {
        self.classify() == SetClass::Empty
    }

    /// Classifies the set. `INFINITE_NOT_SYNDETIC` is unreachable here:
    /// an eventually periodic set with an infinite tail has gaps bounded
    /// by its period.
    pub fn classify(&self) -> SetClass {
        let tail_has_one = self.pattern.iter().any(|&b| b);
        let tail_has_zero = self.pattern.iter().any(|&b| !b);
        if tail_has_one && tail_has_zero {
            SetClass::SyndeticNotCofinite
        } else if tail_has_one {
            SetClass::Cofinite
        } else if self.transient.iter().any(|&b| b) {
            SetClass::FiniteNonempty
        } else {
            SetClass::Empty
        }
    }

    /// Pointwise union; the result is canonical.
    pub fn union(&self, other: &Self) -> Self {
        let m = self.threshold.max(other.threshold) as usize;
        let p = lcm(self.period, other.period) as usize;
        let total = m + 2 * p;
        let bits: Vec<bool> = (1..=total as u64)
            .map(|n| self.member(n) || other.member(n))
            .collect();
        Self::from_samples(&bits, m, p).expect("union of eventually periodic sets")
    }

    /// Short human description, e.g. `{n >= 2}` or `{n : pattern 10 from 1}`.
    pub fn describe(&self) -> String {
        match self.classify() {
            SetClass::Empty => "{}".to_string(),
            SetClass::Cofinite if self.threshold == 1 => "all n >= 1".to_string(),
            SetClass::Cofinite if self.transient.iter().all(|&b| !b) => {
                format!("{{n >= {}}}", self.threshold)
            }
            _ => {
                let pat: String = self
                    .pattern
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                let tr: String = self
                    .transient
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                if tr.is_empty() {
                    format!("{{pattern {pat} from n=1}}")
                } else {
                    format!("{{transient {tr}, pattern {pat} from n={}}}", self.threshold)
                }
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Finite bounds at which subshift quantifiers are checked: `ell` caps tested
/// cylinder words, `tail_len` (L) is the truncation length standing in for
/// points, `horizon` (H) caps connector searches and `run_len` (K) is the
/// consecutive-length run demanded by mixing checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessScale {
    pub ell: usize,
    #[serde(rename = "L")]
    pub tail_len: usize,
    #[serde(rename = "H")]
    pub horizon: usize,
    #[serde(rename = "K")]
    pub run_len: usize,
}

impl WitnessScale {
    pub fn new(
        ell: usize,
        tail_len: usize,
        horizon: usize,
        run_len: usize,
    ) -> Result<Self, TypeError> {
        if ell < 1 || tail_len < 1 || horizon < 1 || run_len < 1 || horizon + run_len > 255 {
            return Err(TypeError::BadScale);
        }
        Ok(WitnessScale {
            ell,
            tail_len,
            horizon,
            run_len,
        })
    }
}

impl Default for WitnessScale {
    fn default() -> Self {
        WitnessScale {
            ell: 2,
            tail_len: 24,
            horizon: 32,
            run_len: 8,
        }
    }
}

impl fmt::Display for WitnessScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ell={},L={},H={},K={}",
            self.ell, self.tail_len, self.horizon, self.run_len
        )
    }
}

/// Scale attached to a finite-horizon verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Scale {
    Witness { scale: WitnessScale },
    Bound { bound: u64 },
    Grid { eps: String, horizon: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    #[serde(rename = "PROVED")]
    Proved,
    #[serde(rename = "REFUTED")]
    Refuted,
    #[serde(rename = "WITNESS")]
    Witness,
    #[serde(rename = "NO_WITNESS")]
    NoWitness,
    #[serde(rename = "REFUTED_BOUNDED")]
    RefutedBounded,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl VerdictStatus {
    /// Exact verdicts carry checkable certificates and may propagate.
    pub fn is_certificate(&self) -> bool {
        matches!(self, VerdictStatus::Proved | VerdictStatus::Refuted)
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, VerdictStatus::Proved | VerdictStatus::Witness)
    }

    pub fn is_negative(&self) -> bool {
        matches!(
            self,
            VerdictStatus::Refuted | VerdictStatus::NoWitness | VerdictStatus::RefutedBounded
        )
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictStatus::Proved => "PROVED",
            VerdictStatus::Refuted => "REFUTED",
            VerdictStatus::Witness => "WITNESS",
            VerdictStatus::NoWitness => "NO_WITNESS",
            VerdictStatus::RefutedBounded => "REFUTED_BOUNDED",
            VerdictStatus::Unknown => "UNKNOWN",
        };
        f.write_str(s)
    }
}

/// Structured justification attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Evidence {
    /// Certificate read off the presenting graph.
    GraphCertificate { summary: String, detail: Vec<String> },
    /// Words realizing a bounded obligation.
    WitnessWords { summary: String, words: Vec<String> },
    /// First bounded obligation that failed.
    FailingObligation { summary: String, words: Vec<String> },
    /// Pair of opene sets refuting the property.
    RefutingPair { u: String, v: String, reason: String },
    /// Finite backward orbit certificate.
    BackwardOrbit { point: String, orbit: Vec<String> },
    /// Proper closed forward-invariant unions with interior.
    InvariantSet { sets: Vec<String> },
    /// Chain of lattice rules that produced a propagated verdict.
    Derived { chain: Vec<String> },
    /// Classical fact imported without a machine check.
    TrustedFact { statement: String },
    Note { text: String },
}

impl Evidence {
    pub fn note(text: impl Into<String>) -> Self {
        Evidence::Note { text: text.into() }
    }

    pub fn summary(&self) -> String {
        match self {
            Evidence::GraphCertificate { summary, .. } => summary.clone(),
            Evidence::WitnessWords { summary, .. } => summary.clone(),
            Evidence::FailingObligation { summary, .. } => summary.clone(),
            Evidence::RefutingPair { u, v, reason } => {
                format!("pair ([{u}],[{v}]): {reason}")
            }
            Evidence::BackwardOrbit { point, orbit } => {
                format!("backward orbit of {point} is {{{}}}", orbit.join(", "))
            }
            Evidence::InvariantSet { sets } => {
                format!("proper invariant unions: {}", sets.join(" and "))
            }
            Evidence::Derived { chain } => chain.join(" ; "),
            Evidence::TrustedFact { statement } => format!("trusted fact: {statement}"),
            Evidence::Note { text } => text.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    Direct,
    Propagated { source: PropertyId, rule: String },
}

/// Property conclusion with evidence. `PROVED`/`REFUTED` carry checkable
/// certificates; `WITNESS`/`NO_WITNESS`/`REFUTED_BOUNDED` always carry a
/// scale; propagated verdicts name their source and lattice rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub scale: Option<Scale>,
    pub evidence: Evidence,
    pub provenance: Provenance,
}

impl Verdict {
    pub fn proved(evidence: Evidence) -> Self {
        Verdict {
            status: VerdictStatus::Proved,
            scale: None,
            evidence,
            provenance: Provenance::Direct,
        }
    }

    pub fn refuted(evidence: Evidence) -> Self {
        Verdict {
            status: VerdictStatus::Refuted,
            scale: None,
            evidence,
            provenance: Provenance::Direct,
        }
    }

    pub fn witness(scale: Scale, evidence: Evidence) -> Self {
        Verdict {
            status: VerdictStatus::Witness,
            scale: Some(scale),
            evidence,
            provenance: Provenance::Direct,
        }
    }

    pub fn no_witness(scale: Scale, evidence: Evidence) -> Self {
        Verdict {
            status: VerdictStatus::NoWitness,
            scale: Some(scale),
            evidence,
            provenance: Provenance::Direct,
        }
    }

    pub fn refuted_bounded(bound: u64, evidence: Evidence) -> Self {
        Verdict {
            status: VerdictStatus::RefutedBounded,
            scale: Some(Scale::Bound { bound }),
            evidence,
            provenance: Provenance::Direct,
        }
    }

    pub fn unknown(evidence: Evidence) -> Self {
        Verdict {
            status: VerdictStatus::Unknown,
            scale: None,
            evidence,
            provenance: Provenance::Direct,
        }
    }
}
