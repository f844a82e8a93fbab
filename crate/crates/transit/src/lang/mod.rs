//! Oracle-presented subshifts — substitution systems, the power-gap shift,
//! the zero-insertion lift of a minimal base, products — together with
//! finite-horizon witness and refutation checkers for the hierarchy
//! properties on subshift languages.

mod scan;
pub(crate) mod witness;

pub use scan::{periodic_word_scan, refute_vst_bound};
pub use witness::{sft_agreement_scale, witness_check};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sft::SftGraph;
use crate::types::{Alphabet, TypeError, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("property {0} has no bounded checker")]
    UnsupportedProperty(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<TypeError> for LangError {
    fn from(e: TypeError) -> Self {
        LangError::Invalid(e.to_string())
    }
}

/// Map sending each symbol to a nonempty word over the same alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    alphabet: Alphabet,
    rules: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, rules: Vec<Word>) -> Result<Self, LangError> {
        if rules.len() != alphabet.len() {
            return Err(LangError::Invalid(format!(
                "{} rules for {} symbols",
                rules.len(),
                alphabet.len()
            )));
        }
        for (i, r) in rules.iter().enumerate() {
            if r.is_empty() {
                return Err(LangError::Invalid(format!(
                    "rule for `{}` is empty",
                    alphabet.symbol(i)
                )));
            }
            if r.symbols().iter().any(|&s| s >= alphabet.len()) {
                return Err(LangError::Invalid(format!(
                    "rule for `{}` leaves the alphabet",
                    alphabet.symbol(i)
                )));
            }
        }
        Ok(Substitution { alphabet, rules })
    }

    /// a -> ab, b -> a
    pub fn fibonacci() -> Self {
        let a = Alphabet::new(["a", "b"]).unwrap();
        Substitution::new(
            a,
            vec![Word::new(vec![0, 1]), Word::new(vec![0])],
        )
        .unwrap()
    }

    /// 1 -> 12, 2 -> 21
    pub fn thue_morse() -> Self {
        let a = Alphabet::new(["1", "2"]).unwrap();
        Substitution::new(
            a,
            vec![Word::new(vec![0, 1]), Word::new(vec![1, 0])],
        )
        .unwrap()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Word] {
        &self.rules
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::new();
        for &s in w.symbols() {
            out.extend_from_slice(self.rules[s].symbols());
        }
        Word::new(out)
    }

    /// Counts of each symbol in each rule image.
    pub fn incidence(&self) -> Vec<Vec<u64>> {
        let n = self.alphabet.len();
        let mut m = vec![vec![0u64; n]; n];
        for (a, rule) in self.rules.iter().enumerate() {
            for &b in rule.symbols() {
                m[a][b] += 1;
            }
        }
        m
    }

    /// Some boolean power of the incidence matrix is entrywise positive.
    pub fn is_primitive(&self) -> bool {
        let n = self.alphabet.len();
        let inc = self.incidence();
        let mut cur: Vec<Vec<bool>> = inc
            .iter()
            .map(|row| row.iter().map(|&c| c > 0).collect())
            .collect();
        let base = cur.clone();
        for _ in 0..n * n {
            if cur.iter().all(|row| row.iter().all(|&b| b)) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if cur[i][k] {
                        for j in 0..n {
                            if base[k][j] {
                                next[i][j] = true;
                            }
                        }
                    }
                }
            }
            next[..].clone_into(&mut cur);
        }
        cur.iter().all(|row| row.iter().all(|&b| b))
    }

    /// A prefix of a one-sided fixed point of some power of the substitution,
    /// at least `min_len` symbols long. Exists for primitive substitutions:
    /// the first-letter map has a cycle, so some power sends a letter to a
    /// word starting with itself.
    pub fn reference_prefix(&self, min_len: usize) -> Result<Vec<usize>, LangError> {
        let n = self.alphabet.len();
        let mut found = None;
        'outer: for power in 1..=n {
            for a in 0..n {
                let mut w = Word::new(vec![a]);
                for _ in 0..power {
                    w = self.apply(&w);
                }
                if w.symbols()[0] == a {
                    found = Some((a, power));
                    break 'outer;
                }
            }
        }
        let (a, power) = found.ok_or_else(|| {
            LangError::Invalid("no letter starts its own image under any small power".into())
        })?;
        let mut w = Word::new(vec![a]);
        let mut guard = 0;
        while w.len() < min_len {
            let prev = w.len();
            for _ in 0..power {
                w = self.apply(&w);
            }
            if w.len() == prev {
                // non-growing fixed letter: the point is a^infinity
                let reps = vec![a; min_len];
                return Ok(reps);
            }
            guard += 1;
            if guard > 64 {
                return Err(LangError::CapExceeded(
                    "substitution prefix did not reach the requested length".into(),
                ));
            }
        }
        let mut out = w.symbols().to_vec();
        out.truncate(min_len.max(out.len().min(out.len())));
        Ok(out)
    }
}

/// Default length of generated reference prefixes. Long enough that every
/// factor of the lengths used here occurs within the prefix, for the linearly
/// recurrent substitutions in the corpus.
pub const REFERENCE_PREFIX_LEN: usize = 8192;

#[derive(Debug, Clone)]
enum OracleKind {
    Full,
    Vertex(SftGraph),
    /// Legal words are the factors of a fixed reference word.
    Factor { reference: Vec<usize> },
    Gap { powers: Vec<u64> },
    /// No two adjacent zeros, and the zero-deleted image must be a factor of
    /// the base reference (symbols shifted up by one).
    Lind { base_reference: Vec<usize> },
    Product(Box<LanguageOracle>, Box<LanguageOracle>),
}

/// Total decidable factor-language membership plus a construction tag.
/// Languages are factor-closed and extendable; legality of a prefix is
/// tracked by a deterministic state, which is what the witness machinery
/// walks over.
#[derive(Debug, Clone)]
pub struct LanguageOracle {
    alphabet: Alphabet,
    descriptor: String,
    kind: OracleKind,
}

/// Deterministic legality state after reading a legal prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OracleState {
    Unit,
    Vertex(Option<usize>),
    /// End offsets of the occurrences of the prefix in the reference word.
    Positions(Vec<u32>),
    Gap { seen_one: bool, run: u32 },
    Lind { positions: Vec<u32>, last_zero: bool },
    Pair(Box<OracleState>, Box<OracleState>),
}

impl LanguageOracle {
    pub fn full_shift(alphabet: Alphabet) -> Self {
        LanguageOracle {
            descriptor: format!("full shift on {} symbols", alphabet.len()),
            alphabet,
            kind: OracleKind::Full,
        }
    }

    pub fn from_sft(g: SftGraph) -> Self {
        LanguageOracle {
            alphabet: g.alphabet().clone(),
            descriptor: format!("vertex shift on {} vertices", g.vertex_count()),
            kind: OracleKind::Vertex(g),
        }
    }

    pub fn substitution(s: &Substitution) -> Result<Self, LangError> {
        if !s.is_primitive() {
            return Err(LangError::Invalid(
                "substitution oracle requires a primitive substitution".into(),
            ));
        }
        let reference = s.reference_prefix(REFERENCE_PREFIX_LEN)?;
        Ok(LanguageOracle {
            alphabet: s.alphabet().clone(),
            descriptor: format!(
                "substitution subshift ({})",
                (0..s.alphabet().len())
                    .map(|i| format!(
                        "{}->{}",
                        s.alphabet().symbol(i),
                        s.alphabet().format_word(&s.rules()[i])
                    ))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            kind: OracleKind::Factor { reference },
        })
    }

    /// Every maximal zero-run flanked by ones on both sides must have length
    /// a positive power of `base`; leading and trailing runs are free.
    pub fn gap_shift(base: u64) -> Result<Self, LangError> {
        if base < 2 {
            return Err(LangError::Invalid("gap shift base must be >= 2".into()));
        }
        let mut powers = Vec::new();
        let mut p = base;
        while p <= 1_000_000 {
            powers.push(p);
            p = p.saturating_mul(base);
        }
        Ok(LanguageOracle {
            alphabet: Alphabet::numeric(2),
            descriptor: format!("gap shift with runs in powers of {base}"),
            kind: OracleKind::Gap { powers },
        })
    }

    /// Zero-insertion lift: words over `{0} + base alphabet` with no "00"
    /// whose zero-deleted image is a factor of the base subshift.
    pub fn lindenstrauss(base: &Substitution) -> Result<Self, LangError> {
        if !base.is_primitive() {
            return Err(LangError::Invalid(
                "lift base must be a primitive substitution".into(),
            ));
        }
        if base.alphabet().index_of("0").is_some() {
            return Err(LangError::Invalid(
                "lift base alphabet must not contain the symbol 0".into(),
            ));
        }
        let base_reference = base.reference_prefix(REFERENCE_PREFIX_LEN)?;
        let mut symbols = vec!["0".to_string()];
        symbols.extend(base.alphabet().symbols().iter().cloned());
        Ok(LanguageOracle {
            alphabet: Alphabet::new(symbols)?,
            descriptor: "zero-insertion lift of a minimal substitution subshift".into(),
            kind: OracleKind::Lind { base_reference },
        })
    }

    /// Pair alphabet; a word is legal iff both coordinate projections are.
    pub fn product(o1: LanguageOracle, o2: LanguageOracle) -> Result<Self, LangError> {
        let (a1, a2) = (o1.alphabet.clone(), o2.alphabet.clone());
        let symbols: Vec<String> = a1
            .symbols()
            .iter()
            .flat_map(|x| a2.symbols().iter().map(move |y| format!("({x},{y})")))
            .collect();
        Ok(LanguageOracle {
            alphabet: Alphabet::new(symbols)?,
            descriptor: format!("product of [{}] and [{}]", o1.descriptor, o2.descriptor),
            kind: OracleKind::Product(Box::new(o1), Box::new(o2)),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn start_state(&self) -> OracleState {
        match &self.kind {
            OracleKind::Full => OracleState::Unit,
            OracleKind::Vertex(_) => OracleState::Vertex(None),
            OracleKind::Factor { reference } => {
                OracleState::Positions((0..=reference.len() as u32).collect())
            }
            OracleKind::Gap { .. } => OracleState::Gap {
                seen_one: false,
                run: 0,
            },
            OracleKind::Lind { base_reference } => OracleState::Lind {
                positions: (0..=base_reference.len() as u32).collect(),
                last_zero: false,
            },
            OracleKind::Product(o1, o2) => OracleState::Pair(
                Box::new(o1.start_state()),
                Box::new(o2.start_state()),
            ),
        }
    }

    pub fn step(&self, state: &OracleState, sym: usize) -> Option<OracleState> {
        if sym >= self.alphabet.len() {
            return None;
        }
        match (&self.kind, state) {
            (OracleKind::Full, OracleState::Unit) => Some(OracleState::Unit),
            (OracleKind::Vertex(g), OracleState::Vertex(prev)) => match prev {
                None => Some(OracleState::Vertex(Some(sym))),
                Some(p) => {
                    if g.has_edge(*p, sym) {
                        Some(OracleState::Vertex(Some(sym)))
                    } else {
                        None
                    }
                }
            },
            (OracleKind::Factor { reference }, OracleState::Positions(pos)) => {
                let next = step_positions(reference, pos, sym);
                if next.is_empty() {
                    None
                } else {
                    Some(OracleState::Positions(next))
                }
            }
            (OracleKind::Gap { powers }, OracleState::Gap { seen_one, run }) => {
                if sym == 0 {
                    Some(OracleState::Gap {
                        seen_one: *seen_one,
                        run: run + 1,
                    })
                } else {
                    if *seen_one && *run > 0 && !powers.contains(&(*run as u64)) {
                        return None;
                    }
                    Some(OracleState::Gap {
                        seen_one: true,
                        run: 0,
                    })
                }
            }
            (
                OracleKind::Lind { base_reference },
                OracleState::Lind {
                    positions,
                    last_zero,
                },
            ) => {
                if sym == 0 {
                    if *last_zero {
                        None
                    } else {
                        Some(OracleState::Lind {
                            positions: positions.clone(),
                            last_zero: true,
                        })
                    }
                } else {
                    let next = step_positions(base_reference, positions, sym - 1);
                    if next.is_empty() {
                        None
                    } else {
                        Some(OracleState::Lind {
                            positions: next,
                            last_zero: false,
                        })
                    }
                }
            }
            (OracleKind::Product(o1, o2), OracleState::Pair(s1, s2)) => {
                let n2 = o2.alphabet.len();
                let (x, y) = (sym / n2, sym % n2);
                let t1 = o1.step(s1, x)?;
                let t2 = o2.step(s2, y)?;
                Some(OracleState::Pair(Box::new(t1), Box::new(t2)))
            }
            _ => None,
        }
    }

    pub fn state_after(&self, w: &Word) -> Option<OracleState> {
        let mut st = self.start_state();
        for &s in w.symbols() {
            st = self.step(&st, s)?;
        }
        Some(st)
    }

    pub fn is_legal(&self, w: &Word) -> bool {
        self.state_after(w).is_some()
    }

    /// All legal words of exactly `length`, in lexicographic symbol order.
    /// Errors when more than `cap` words exist.
    pub fn enumerate_words(&self, length: usize, cap: usize) -> Result<Vec<Word>, LangError> {
        let mut out = Vec::new();
        let mut stack: Vec<(OracleState, Vec<usize>)> =
            vec![(self.start_state(), Vec::new())];
        // depth-first in descending symbol order so pops come out ascending
        while let Some((st, prefix)) = stack.pop() {
            if prefix.len() == length {
                if out.len() >= cap {
                    return Err(LangError::CapExceeded(format!(
                        "more than {cap} legal words of length {length}"
                    )));
                }
                out.push(Word::new(prefix));
                continue;
            }
            for sym in (0..self.alphabet.len()).rev() {
                if let Some(next) = self.step(&st, sym) {
                    let mut p = prefix.clone();
                    p.push(sym);
                    stack.push((next, p));
                }
            }
        }
        Ok(out)
    }

    /// Legal words of every length `1..=max_len`.
    pub fn words_up_to(&self, max_len: usize, cap: usize) -> Result<Vec<Word>, LangError> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            out.extend(self.enumerate_words(len, cap)?);
            if out.len() > cap {
                return Err(LangError::CapExceeded(format!(
                    "more than {cap} legal words up to length {max_len}"
                )));
            }
        }
        Ok(out)
    }

    /// Extends a legal state to a legal word of the given extra length.
    pub fn extend_from(&self, state: &OracleState, extra: usize) -> Option<Word> {
        let mut suffix = Vec::new();
        if self.extend_rec(state, extra, &mut suffix) {
            Some(Word::new(suffix))
        } else {
            None
        }
    }

    fn extend_rec(&self, state: &OracleState, extra: usize, acc: &mut Vec<usize>) -> bool {
        if extra == 0 {
            return true;
        }
        for sym in 0..self.alphabet.len() {
            if let Some(next) = self.step(state, sym) {
                acc.push(sym);
                if self.extend_rec(&next, extra - 1, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }
}

fn step_positions(reference: &[usize], pos: &[u32], sym: usize) -> Vec<u32> {
    pos.iter()
        .filter(|&&p| (p as usize) < reference.len() && reference[p as usize] == sym)
        .map(|&p| p + 1)
        .collect()
}

/// 1 iff some power of the incidence matrix is entrywise positive.
pub fn substitution_primitive(s: &Substitution) -> bool {
    s.is_primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::Sidedness;

    #[test]
    fn fibonacci_and_thue_morse_are_primitive() {
        assert!(substitution_primitive(&Substitution::fibonacci()));
        assert!(substitution_primitive(&Substitution::thue_morse()));
    }

    #[test]
    fn block_diagonal_substitution_is_not_primitive() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let s = Substitution::new(
            a,
            vec![Word::new(vec![0, 0]), Word::new(vec![1, 1])],
        )
        .unwrap();
        assert!(!substitution_primitive(&s));
    }

    #[test]
    fn thue_morse_reference_prefix_matches_expansion() {
        let s = Substitution::thue_morse();
        let r = s.reference_prefix(32).unwrap();
        // 1 -> 12 -> 1221 -> 12212112 ...
        let expect: Vec<usize> = "1221211221121221"
            .chars()
            .map(|c| if c == '1' { 0 } else { 1 })
            .collect();
        assert_eq!(&r[..16], &expect[..]);
    }

    #[test]
    fn gap_shift_length_three_words() {
        let o = LanguageOracle::gap_shift(3).unwrap();
        let words = o.enumerate_words(3, 100).unwrap();
        // only the flanked singleton run in 101 is illegal
        assert_eq!(words.len(), 7);
        let bad = o.alphabet().parse_word("101").unwrap();
        assert!(!o.is_legal(&bad));
    }

    #[test]
    fn gap_shift_run_legality() {
        let o = LanguageOracle::gap_shift(3).unwrap();
        let a = o.alphabet().clone();
        assert!(o.is_legal(&a.parse_word("10001").unwrap()));
        assert!(!o.is_legal(&a.parse_word("101").unwrap()));
        assert!(o.is_legal(&a.parse_word("10000000001").unwrap())); // run of 9
        // leading and trailing runs of any length are fine
        assert!(o.is_legal(&a.parse_word("0000001").unwrap()));
        assert!(o.is_legal(&a.parse_word("1000000").unwrap()));
        assert!(o.is_legal(&a.parse_word("0000000").unwrap()));
    }

    #[test]
    fn thue_morse_factors_of_length_two() {
        let s = Substitution::thue_morse();
        let o = LanguageOracle::substitution(&s).unwrap();
        let words = o.enumerate_words(2, 100).unwrap();
        assert_eq!(words.len(), 4);
    }

    #[test]
    fn thue_morse_is_cube_free() {
        let s = Substitution::thue_morse();
        let o = LanguageOracle::substitution(&s).unwrap();
        let a = o.alphabet().clone();
        assert!(!o.is_legal(&a.parse_word("111").unwrap()));
        assert!(!o.is_legal(&a.parse_word("121212").unwrap()));
        assert!(o.is_legal(&a.parse_word("1221").unwrap()));
    }

    #[test]
    fn fibonacci_factor_counts_are_sturmian() {
        let o = LanguageOracle::substitution(&Substitution::fibonacci()).unwrap();
        for len in 1..=8 {
            let words = o.enumerate_words(len, 100).unwrap();
            assert_eq!(words.len(), len + 1, "length {len}");
        }
    }

    #[test]
    fn lind_words_of_length_two() {
        let o = LanguageOracle::lindenstrauss(&Substitution::thue_morse()).unwrap();
        let words = o.enumerate_words(2, 100).unwrap();
        // all pairs over {0,1,2} except 00
        assert_eq!(words.len(), 8);
        let a = o.alphabet().clone();
        assert!(!o.is_legal(&a.parse_word("00").unwrap()));
        assert!(o.is_legal(&a.parse_word("011").unwrap()));
        // zero-deleted image 111 is not a base factor
        assert!(!o.is_legal(&a.parse_word("10101").unwrap()));
    }

    #[test]
    fn product_legality_is_coordinatewise() {
        let full = LanguageOracle::full_shift(Alphabet::numeric(2));
        let gap = LanguageOracle::gap_shift(3).unwrap();
        let p = LanguageOracle::product(gap, full).unwrap();
        assert_eq!(p.alphabet().len(), 4);
        // (1,x)(0,y)(1,z) projects to the illegal 101 in the first coordinate
        let w = Word::new(vec![2, 0, 2]); // symbols (1,0),(0,0),(1,0)
        assert!(!p.is_legal(&w));
        let w = Word::new(vec![2, 2]); // (1,0)(1,0) -> 11 legal, 00 legal
        assert!(p.is_legal(&w));
    }

    #[test]
    fn sft_wrapped_oracle_agrees_with_graph_legality() {
        let g = SftGraph::new(
            Alphabet::numeric(2),
            &[(0, 0), (0, 1), (1, 0)],
            Sidedness::One,
        )
        .unwrap();
        let o = LanguageOracle::from_sft(g.clone());
        for len in 1..=6 {
            for w in o.enumerate_words(len, 1000).unwrap() {
                assert!(g.word_is_legal(&w));
            }
        }
        assert!(!o.is_legal(&Word::new(vec![1, 1])));
    }

    #[test]
    fn enumerate_cap_is_enforced() {
        let o = LanguageOracle::full_shift(Alphabet::numeric(2));
        assert!(matches!(
            o.enumerate_words(10, 5),
            Err(LangError::CapExceeded(_))
        ));
    }

    #[test]
    fn factor_closure_sampled() {
        // every factor of a legal word is legal
        for o in [
            LanguageOracle::gap_shift(3).unwrap(),
            LanguageOracle::substitution(&Substitution::thue_morse()).unwrap(),
            LanguageOracle::lindenstrauss(&Substitution::thue_morse()).unwrap(),
        ] {
            for w in o.enumerate_words(6, 100_000).unwrap() {
                for i in 0..w.len() {
                    for j in i + 1..=w.len() {
                        let f = Word::new(w.symbols()[i..j].to_vec());
                        assert!(o.is_legal(&f), "factor of legal word must be legal");
                    }
                }
            }
        }
    }

    #[test]
    fn extendability_sampled() {
        for o in [
            LanguageOracle::gap_shift(3).unwrap(),
            LanguageOracle::substitution(&Substitution::fibonacci()).unwrap(),
            LanguageOracle::lindenstrauss(&Substitution::thue_morse()).unwrap(),
        ] {
            for w in o.enumerate_words(5, 100_000).unwrap() {
                let st = o.state_after(&w).unwrap();
                assert!(o.extend_from(&st, 8).is_some(), "legal words must extend");
            }
        }
    }
}
