//! Finite-horizon witness and refutation machinery for subshift languages.
//!
//! Universal word quantifiers range over legal words of length at most
//! `ell`; points are approximated by legal words of length `tail_len`;
//! connector searches are bounded by `horizon` (connector length 0 means
//! direct concatenation, matching hitting time `|v|`). All checks reduce to
//! one primitive: the set of connector lengths `m <= horizon` at which a
//! word `v` can be continued into a given target. Those length-sets are
//! computed by breadth-first search over deterministic oracle states, with
//! targets explored once and deduplicated by their effect on the state sets,
//! never enumerated one by one.

use std::collections::HashMap;

use crate::types::{
    Evidence, PropertyId, Scale, Verdict, WitnessScale, Word,
};

use super::{LangError, LanguageOracle, OracleState};

pub(crate) const WORD_CAP: usize = 4096;
const NODE_CAP: usize = 500_000;
const COVER_WORD_CAP: usize = 256;

/// Bitset of connector lengths 0..=255.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub(crate) struct LenMask(pub [u64; 4]);

impl LenMask {
    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn any(&self) -> bool {
        self.0.iter().any(|&w| w != 0)
    }

    pub fn and(&self, other: &LenMask) -> LenMask {
        let mut out = [0u64; 4];
        for i in 0..4 {
            out[i] = self.0[i] & other.0[i];
        }
        LenMask(out)
    }

    pub fn or(&self, other: &LenMask) -> LenMask {
        let mut out = [0u64; 4];
        for i in 0..4 {
            out[i] = self.0[i] | other.0[i];
        }
        LenMask(out)
    }

    pub fn lowest(&self) -> Option<usize> {
        for (i, &w) in self.0.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn full_up_to(h: usize) -> LenMask {
        let mut m = LenMask::default();
        for i in 0..=h {
            m.set(i);
        }
        m
    }
}

/// State interner with memoized transitions.
pub(crate) struct Ctx<'a> {
    pub o: &'a LanguageOracle,
    states: Vec<OracleState>,
    ids: HashMap<OracleState, u32>,
    steps: HashMap<(u32, usize), Option<u32>>,
}

impl<'a> Ctx<'a> {
    pub fn new(o: &'a LanguageOracle) -> Self {
        Ctx {
            o,
            states: Vec::new(),
            ids: HashMap::new(),
            steps: HashMap::new(),
        }
    }

    pub fn intern(&mut self, st: OracleState) -> u32 {
        if let Some(&id) = self.ids.get(&st) {
            return id;
        }
        let id = self.states.len() as u32;
        self.states.push(st.clone());
        self.ids.insert(st, id);
        id
    }

    pub fn step_id(&mut self, id: u32, sym: usize) -> Option<u32> {
        if let Some(&r) = self.steps.get(&(id, sym)) {
            return r;
        }
        let next = self.o.step(&self.states[id as usize].clone(), sym);
        let r = next.map(|st| self.intern(st));
        self.steps.insert((id, sym), r);
        r
    }

    pub fn state_id_after(&mut self, w: &Word) -> Option<u32> {
        let mut id = {
            let st = self.o.start_state();
            self.intern(st)
        };
        for &s in w.symbols() {
            id = self.step_id(id, s)?;
        }
        Some(id)
    }

    pub fn accepts(&mut self, mut id: u32, w: &Word) -> bool {
        for &s in w.symbols() {
            match self.step_id(id, s) {
                Some(next) => id = next,
                None => return false,
            }
        }
        true
    }
}

/// States reachable from the end of `v` by connectors of length 0..=hmax,
/// with the set of lengths at which each state is reached.
pub(crate) type Frontier = Vec<(u32, LenMask)>;

pub(crate) fn connector_frontier(
    ctx: &mut Ctx,
    v: &Word,
    hmax: usize,
) -> Option<Frontier> {
    let start = ctx.state_id_after(v)?;
    let mut masks: HashMap<u32, LenMask> = HashMap::new();
    let mut level: Vec<u32> = vec![start];
    masks.entry(start).or_default().set(0);
    let nsym = ctx.o.alphabet().len();
    for m in 1..=hmax {
        let mut next: Vec<u32> = Vec::new();
        for &id in &level {
            for sym in 0..nsym {
                if let Some(t) = ctx.step_id(id, sym) {
                    let e = masks.entry(t).or_default();
                    if !e.get(m) {
                        e.set(m);
                        if !next.contains(&t) {
                            next.push(t);
                        }
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        level = next;
        if level.is_empty() {
            break;
        }
    }
    let mut out: Frontier = masks.into_iter().collect();
    out.sort_unstable_by_key(|&(id, _)| id);
    Some(out)
}

/// Union of the length sets over frontier states that can read `w`.
fn accept_mask(ctx: &mut Ctx, frontier: &Frontier, w: &Word) -> LenMask {
    let mut acc = LenMask::default();
    for &(id, mask) in frontier {
        if ctx.accepts(id, w) {
            acc = acc.or(&mask);
        }
    }
    acc
}

/// Explicit connector of length `m` continuing `v` into `target`, for
/// witness evidence. Depth-first with failure memoization.
fn find_connector(ctx: &mut Ctx, v: &Word, m: usize, target: &Word) -> Option<Word> {
    let start = ctx.state_id_after(v)?;
    let mut dead: std::collections::HashSet<(u32, usize)> = Default::default();
    let mut acc = Vec::new();
    fn rec(
        ctx: &mut Ctx,
        id: u32,
        remaining: usize,
        target: &Word,
        dead: &mut std::collections::HashSet<(u32, usize)>,
        acc: &mut Vec<usize>,
    ) -> bool {
        if remaining == 0 {
            return ctx.accepts(id, target);
        }
        if dead.contains(&(id, remaining)) {
            return false;
        }
        for sym in 0..ctx.o.alphabet().len() {
            if let Some(next) = ctx.step_id(id, sym) {
                acc.push(sym);
                if rec(ctx, next, remaining - 1, target, dead, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        dead.insert((id, remaining));
        false
    }
    if rec(ctx, start, m, target, &mut dead, &mut acc) {
        Some(Word::new(acc))
    } else {
        None
    }
}

/// Per-coordinate set of surviving frontier states with accumulated length
/// masks; states that merge while reading a target pool their masks.
type AliveSet = Vec<(u32, LenMask)>;

fn step_alive(ctx: &mut Ctx, alive: &AliveSet, sym: usize) -> AliveSet {
    let mut merged: HashMap<u32, LenMask> = HashMap::new();
    for &(id, mask) in alive {
        if let Some(next) = ctx.step_id(id, sym) {
            let e = merged.entry(next).or_default();
            *e = e.or(&mask);
        }
    }
    let mut out: AliveSet = merged.into_iter().collect();
    out.sort_unstable_by_key(|&(id, _)| id);
    out
}

fn alive_mask(alive: &AliveSet) -> LenMask {
    let mut acc = LenMask::default();
    for (_, m) in alive {
        acc = acc.or(m);
    }
    acc
}

/// Bitset over the registered short words covered by some path into a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct CoverSet([u64; 4]);

impl CoverSet {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn or_assign(&mut self, other: &CoverSet) {
        for i in 0..4 {
            self.0[i] |= other.0[i];
        }
    }
}

/// Short-word index used to track which tested words are prefixes of walked
/// targets: id lookup plus the (id, symbol) -> id extension table.
struct CoverIndex {
    len_of: Vec<usize>,
    by_first: HashMap<usize, usize>,
    extend: HashMap<(usize, usize), usize>,
}

impl CoverIndex {
    fn new(words: &[Word]) -> Option<CoverIndex> {
        if words.len() > COVER_WORD_CAP {
            return None;
        }
        let mut ids: HashMap<&[usize], usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            ids.insert(w.symbols(), i);
        }
        let mut by_first = HashMap::new();
        let mut extend = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            if w.len() == 1 {
                by_first.insert(w.symbols()[0], i);
            }
            if let Some(&j) = ids.get(&w.symbols()[..w.len() - 1]) {
                extend.insert((j, *w.symbols().last().unwrap()), i);
            }
        }
        Some(CoverIndex {
            len_of: words.iter().map(Word::len).collect(),
            by_first,
            extend,
        })
    }

    fn child_cover(&self, parent: &CoverSet, depth: usize, sym: usize) -> CoverSet {
        let mut out = *parent;
        if depth == 0 {
            if let Some(&i) = self.by_first.get(&sym) {
                out.set(i);
            }
        } else {
            for i in 0..self.len_of.len() {
                if self.len_of[i] == depth && parent.get(i) {
                    if let Some(&j) = self.extend.get(&(i, sym)) {
                        out.set(j);
                    }
                }
            }
        }
        out
    }
}

struct WalkNode {
    lang: u32,
    alive: Vec<AliveSet>,
    cover: CoverSet,
    parent: usize,
    sym: usize,
}

struct WalkOutcome {
    nodes: Vec<WalkNode>,
    finals: Vec<usize>,
}

impl WalkOutcome {
    fn path(&self, idx: usize) -> Word {
        let mut syms = Vec::new();
        let mut cur = idx;
        while cur != usize::MAX {
            let n = &self.nodes[cur];
            if n.parent == usize::MAX {
                break;
            }
            syms.push(n.sym);
            cur = n.parent;
        }
        syms.reverse();
        Word::new(syms)
    }

    fn masks(&self, idx: usize) -> Vec<LenMask> {
        self.nodes[idx].alive.iter().map(alive_mask).collect()
    }
}

/// Walks every legal target of length `depth` once, carrying per-coordinate
/// surviving frontier states. Nodes are deduplicated on (language state,
/// alive sets); covered-prefix sets merge on deduplication.
fn target_walk(
    ctx: &mut Ctx,
    coords: &[Frontier],
    depth: usize,
    cover: Option<&CoverIndex>,
) -> Result<WalkOutcome, LangError> {
    let start_lang = {
        let st = ctx.o.start_state();
        ctx.intern(st)
    };
    let root = WalkNode {
        lang: start_lang,
        alive: coords.to_vec(),
        cover: CoverSet::default(),
        parent: usize::MAX,
        sym: 0,
    };
    let mut nodes = vec![root];
    let mut level: Vec<usize> = vec![0];
    let nsym = ctx.o.alphabet().len();
    for d in 0..depth {
        let mut dedup: HashMap<(u32, Vec<AliveSet>), usize> = HashMap::new();
        let mut next_level = Vec::new();
        for &ni in &level {
            for sym in 0..nsym {
                let lang_next = match ctx.step_id(nodes[ni].lang, sym) {
                    Some(t) => t,
                    None => continue,
                };
                let alive_next: Vec<AliveSet> = {
                    let alive = nodes[ni].alive.clone();
                    alive.iter().map(|a| step_alive(ctx, a, sym)).collect()
                };
                let cover_next = match cover {
                    Some(ix) => ix.child_cover(&nodes[ni].cover, d, sym),
                    None => CoverSet::default(),
                };
                let key = (lang_next, alive_next.clone());
                match dedup.get(&key) {
                    Some(&existing) => {
                        let c = cover_next;
                        nodes[existing].cover.or_assign(&c);
                    }
                    None => {
                        let idx = nodes.len();
                        nodes.push(WalkNode {
                            lang: lang_next,
                            alive: alive_next,
                            cover: cover_next,
                            parent: ni,
                            sym,
                        });
                        dedup.insert(key, idx);
                        next_level.push(idx);
                        if nodes.len() > NODE_CAP {
                            return Err(LangError::CapExceeded(
                                "target walk exceeded the node cap".into(),
                            ));
                        }
                    }
                }
            }
        }
        level = next_level;
        if level.is_empty() {
            break;
        }
    }
    Ok(WalkOutcome {
        nodes,
        finals: level,
    })
}

fn scale_of(s: WitnessScale) -> Scale {
    Scale::Witness { scale: s }
}

/// Shared word-class bookkeeping: words with equal connector frontiers
/// behave identically in every check, so obligations are run per class.
struct Classes {
    /// canonical frontier per class
    frontiers: Vec<Frontier>,
    /// (class, representative word) per available length per class
    reps: Vec<HashMap<usize, Word>>,
}

fn classify_words(
    ctx: &mut Ctx,
    words: &[Word],
    hmax: usize,
) -> Result<Classes, LangError> {
    let mut key_to_class: HashMap<Frontier, usize> = HashMap::new();
    let mut classes = Classes {
        frontiers: Vec::new(),
        reps: Vec::new(),
    };
    for w in words {
        let f = connector_frontier(ctx, w, hmax)
            .ok_or_else(|| LangError::Invalid("enumerated word became illegal".into()))?;
        let class = *key_to_class.entry(f.clone()).or_insert_with(|| {
            classes.frontiers.push(f.clone());
            classes.reps.push(HashMap::new());
            classes.frontiers.len() - 1
        });
        classes.reps[class].entry(w.len()).or_insert_with(|| w.clone());
    }
    Ok(classes)
}

impl Classes {
    fn count(&self) -> usize {
        self.frontiers.len()
    }

    /// Common lengths of two classes, smallest first.
    fn common_lengths(&self, a: usize, b: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.reps[a]
            .keys()
            .filter(|l| self.reps[b].contains_key(l))
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}

/// Bounded check of the subshift characterization of `p`. Returns
/// `WITNESS(scale)` when every bounded obligation is satisfied and
/// `NO_WITNESS(scale)` with the first failing obligation otherwise; finite
/// scales never prove or refute.
pub fn witness_check(
    o: &LanguageOracle,
    p: PropertyId,
    s: WitnessScale,
) -> Result<Verdict, LangError> {
    let supported = PropertyId::TEN.contains(&p) || p == PropertyId::Exact;
    if !supported {
        return Err(LangError::UnsupportedProperty(p.name().into()));
    }
    let mut ctx = Ctx::new(o);
    let words = o.words_up_to(s.ell, WORD_CAP)?;
    if words.is_empty() {
        return Err(LangError::Invalid("language has no words".into()));
    }

    match p {
        PropertyId::Tt => check_tt(&mut ctx, &words, s),
        PropertyId::St | PropertyId::Vst => check_st(&mut ctx, &words, s, p),
        PropertyId::M => check_minimal(&mut ctx, &words, s),
        PropertyId::Wm => check_wm(&mut ctx, &words, s),
        PropertyId::Tm => check_tm(&mut ctx, &words, s),
        PropertyId::Leo => check_leo(&mut ctx, &words, s),
        PropertyId::Exact => check_exact(&mut ctx, &words, s),
        PropertyId::Set => check_set(&mut ctx, &words, s),
        PropertyId::Et => check_et(&mut ctx, &words, s),
        PropertyId::Spt => check_spt(&mut ctx, &words, s),
        _ => unreachable!(),
    }
}

fn fmt(ctx: &Ctx, w: &Word) -> String {
    ctx.o.alphabet().format_word(w)
}

fn check_tt(ctx: &mut Ctx, words: &[Word], s: WitnessScale) -> Result<Verdict, LangError> {
    let mut first: Option<(Word, Word, usize)> = None;
    for v in words {
        let fr = connector_frontier(ctx, v, s.horizon).unwrap();
        for w in words {
            let acc = accept_mask(ctx, &fr, w);
            match acc.lowest() {
                None => {
                    return Ok(Verdict::no_witness(
                        scale_of(s),
                        Evidence::FailingObligation {
                            summary: format!(
                                "no connector of length <= {} joins {} to {}",
                                s.horizon,
                                fmt(ctx, v),
                                fmt(ctx, w)
                            ),
                            words: vec![fmt(ctx, v), fmt(ctx, w)],
                        },
                    ))
                }
                Some(m) => {
                    if first.is_none() {
                        first = Some((v.clone(), w.clone(), m));
                    }
                }
            }
        }
    }
    let (v, w, m) = first.unwrap();
    let a = find_connector(ctx, &v, m, &w);
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!(
                "every tested pair connects; first: {}·a·{} with |a| = {m}",
                fmt(ctx, &v),
                fmt(ctx, &w)
            ),
            words: vec![
                fmt(ctx, &v),
                a.map(|a| fmt(ctx, &a)).unwrap_or_default(),
                fmt(ctx, &w),
            ],
        },
    ))
}

fn check_st(
    ctx: &mut Ctx,
    words: &[Word],
    s: WitnessScale,
    p: PropertyId,
) -> Result<Verdict, LangError> {
    let label = if p == PropertyId::Vst {
        "a bounded connector set serves every tail"
    } else {
        "every tail is reachable within the horizon"
    };
    let classes = classify_words(ctx, words, s.horizon)?;
    let mut first: Option<(Word, Word, usize)> = None;
    for c in 0..classes.count() {
        let rep = classes.reps[c].values().next().unwrap().clone();
        let walk = target_walk(ctx, &[classes.frontiers[c].clone()], s.tail_len, None)?;
        for &f in &walk.finals {
            let mask = &walk.masks(f)[0];
            match mask.lowest() {
                None => {
                    let x = walk.path(f);
                    return Ok(Verdict::no_witness(
                        scale_of(s),
                        Evidence::FailingObligation {
                            summary: format!(
                                "{}·a·x is illegal for every |a| <= {}",
                                fmt(ctx, &rep),
                                s.horizon
                            ),
                            words: vec![fmt(ctx, &rep), fmt(ctx, &x)],
                        },
                    ));
                }
                Some(m) => {
                    if first.is_none() {
                        first = Some((rep.clone(), walk.path(f), m));
                    }
                }
            }
        }
    }
    let (v, x, m) = first.unwrap();
    let a = find_connector(ctx, &v, m, &x);
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!("{label}; first: {}·a·x with |a| = {m}", fmt(ctx, &v)),
            words: vec![
                fmt(ctx, &v),
                a.map(|a| fmt(ctx, &a)).unwrap_or_default(),
                fmt(ctx, &x),
            ],
        },
    ))
}

fn check_minimal(
    ctx: &mut Ctx,
    words: &[Word],
    s: WitnessScale,
) -> Result<Verdict, LangError> {
    // walk all tails once per tested word, tracking a sliding window and
    // whether the word has occurred
    for v in words {
        let vlen = v.len();
        let start_lang = {
            let st = ctx.o.start_state();
            ctx.intern(st)
        };
        #[derive(Clone, PartialEq, Eq, Hash)]
        struct MNode {
            lang: u32,
            window: Vec<usize>,
            seen: bool,
        }
        let mut level: Vec<(MNode, Vec<usize>)> = vec![(
            MNode {
                lang: start_lang,
                window: Vec::new(),
                seen: false,
            },
            Vec::new(),
        )];
        for _ in 0..s.tail_len {
            let mut dedup: HashMap<MNode, usize> = HashMap::new();
            let mut next = Vec::new();
            for (node, path) in &level {
                for sym in 0..ctx.o.alphabet().len() {
                    if let Some(lang) = ctx.step_id(node.lang, sym) {
                        let mut window = node.window.clone();
                        window.push(sym);
                        if window.len() > vlen {
                            window.remove(0);
                        }
                        let seen = node.seen || window[..] == *v.symbols();
                        let m = MNode { lang, window, seen };
                        if !dedup.contains_key(&m) {
                            dedup.insert(m.clone(), next.len());
                            let mut p = path.clone();
                            p.push(sym);
                            next.push((m, p));
                        }
                    }
                }
            }
            level = next;
            if level.len() > NODE_CAP {
                return Err(LangError::CapExceeded("occurrence walk".into()));
            }
        }
        if let Some((_, path)) = level.iter().find(|(n, _)| !n.seen) {
            let x = Word::new(path.clone());
            return Ok(Verdict::no_witness(
                scale_of(s),
                Evidence::FailingObligation {
                    summary: format!(
                        "{} does not occur in the legal tail {}",
                        fmt(ctx, v),
                        fmt(ctx, &x)
                    ),
                    words: vec![fmt(ctx, v), fmt(ctx, &x)],
                },
            ));
        }
    }
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!(
                "every tested word occurs in every legal tail of length {}",
                s.tail_len
            ),
            words: vec![],
        },
    ))
}

fn check_wm(ctx: &mut Ctx, words: &[Word], s: WitnessScale) -> Result<Verdict, LangError> {
    let classes = classify_words(ctx, words, s.horizon)?;
    let mut first: Option<(Word, Word, Word, usize)> = None;
    for c1 in 0..classes.count() {
        for c2 in c1..classes.count() {
            let lens = classes.common_lengths(c1, c2);
            let Some(&len) = lens.first() else { continue };
            let v1 = classes.reps[c1][&len].clone();
            let v2 = classes.reps[c2][&len].clone();
            for w in words {
                let a1 = accept_mask(ctx, &classes.frontiers[c1].clone(), w);
                let a2 = accept_mask(ctx, &classes.frontiers[c2].clone(), w);
                match a1.and(&a2).lowest() {
                    None => {
                        return Ok(Verdict::no_witness(
                            scale_of(s),
                            Evidence::FailingObligation {
                                summary: format!(
                                    "no common connector length <= {} joins {} and {} to {}",
                                    s.horizon,
                                    fmt(ctx, &v1),
                                    fmt(ctx, &v2),
                                    fmt(ctx, w)
                                ),
                                words: vec![fmt(ctx, &v1), fmt(ctx, &v2), fmt(ctx, w)],
                            },
                        ))
                    }
                    Some(m) => {
                        if first.is_none() {
                            first = Some((v1.clone(), v2.clone(), w.clone(), m));
                        }
                    }
                }
            }
        }
    }
    let (v1, v2, w, m) = first.unwrap();
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!(
                "equal-length connectors exist for every pair; first: {} and {} reach {} at |a| = {m}",
                fmt(ctx, &v1),
                fmt(ctx, &v2),
                fmt(ctx, &w)
            ),
            words: vec![fmt(ctx, &v1), fmt(ctx, &v2), fmt(ctx, &w)],
        },
    ))
}

fn check_tm(ctx: &mut Ctx, words: &[Word], s: WitnessScale) -> Result<Verdict, LangError> {
    let hmax = s.horizon + s.run_len;
    let mut first: Option<(Word, Word, usize)> = None;
    for v in words {
        let fr = connector_frontier(ctx, v, hmax).unwrap();
        for w in words {
            let acc = accept_mask(ctx, &fr, w);
            let found = (0..=s.horizon)
                .find(|&n| (1..=s.run_len).all(|k| acc.get(n + k)));
            match found {
                None => {
                    return Ok(Verdict::no_witness(
                        scale_of(s),
                        Evidence::FailingObligation {
                            summary: format!(
                                "no N <= {} gives connectors from {} to {} at every length N+1..N+{}",
                                s.horizon,
                                fmt(ctx, v),
                                fmt(ctx, w),
                                s.run_len
                            ),
                            words: vec![fmt(ctx, v), fmt(ctx, w)],
                        },
                    ))
                }
                Some(n) => {
                    if first.is_none() {
                        first = Some((v.clone(), w.clone(), n));
                    }
                }
            }
        }
    }
    let (v, w, n) = first.unwrap();
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!(
                "connectors exist at {} consecutive lengths past N for every pair; first pair {} -> {} with N = {n}",
                s.run_len,
                fmt(ctx, &v),
                fmt(ctx, &w)
            ),
            words: vec![fmt(ctx, &v), fmt(ctx, &w)],
        },
    ))
}

fn check_leo(ctx: &mut Ctx, words: &[Word], s: WitnessScale) -> Result<Verdict, LangError> {
    let classes = classify_words(ctx, words, s.horizon)?;
    let mut first: Option<(Word, usize)> = None;
    for c in 0..classes.count() {
        let rep = classes.reps[c].values().next().unwrap().clone();
        let walk = target_walk(ctx, &[classes.frontiers[c].clone()], s.tail_len, None)?;
        let mut common = LenMask::full_up_to(s.horizon);
        for &f in &walk.finals {
            common = common.and(&walk.masks(f)[0]);
        }
        match common.lowest() {
            None => {
                return Ok(Verdict::no_witness(
                    scale_of(s),
                    Evidence::FailingObligation {
                        summary: format!(
                            "no single connector length <= {} serves every tail after {}",
                            s.horizon,
                            fmt(ctx, &rep)
                        ),
                        words: vec![fmt(ctx, &rep)],
                    },
                ))
            }
            Some(n) => {
                if first.is_none() {
                    first = Some((rep, n));
                }
            }
        }
    }
    let (v, n) = first.unwrap();
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!(
                "uniform connector length exists for every tested word; first: {} at N = {n}",
                fmt(ctx, &v)
            ),
            words: vec![fmt(ctx, &v)],
        },
    ))
}

fn check_exact(ctx: &mut Ctx, words: &[Word], s: WitnessScale) -> Result<Verdict, LangError> {
    let classes = classify_words(ctx, words, s.horizon)?;
    let mut first: Option<(Word, Word, Word, usize)> = None;
    for c1 in 0..classes.count() {
        for c2 in c1..classes.count() {
            let lens = classes.common_lengths(c1, c2);
            let Some(&len) = lens.first() else { continue };
            let v1 = classes.reps[c1][&len].clone();
            let v2 = classes.reps[c2][&len].clone();
            let walk = target_walk(
                ctx,
                &[classes.frontiers[c1].clone(), classes.frontiers[c2].clone()],
                s.tail_len,
                None,
            )?;
            let hit = walk.finals.iter().find_map(|&f| {
                let ms = walk.masks(f);
                ms[0].and(&ms[1]).lowest().map(|m| (f, m))
            });
            match hit {
                None => {
                    return Ok(Verdict::no_witness(
                        scale_of(s),
                        Evidence::FailingObligation {
                            summary: format!(
                                "no common tail x with equal-length connectors from {} and {} within {}",
                                fmt(ctx, &v1),
                                fmt(ctx, &v2),
                                s.horizon
                            ),
                            words: vec![fmt(ctx, &v1), fmt(ctx, &v2)],
                        },
                    ))
                }
                Some((f, m)) => {
                    if first.is_none() {
                        first = Some((v1.clone(), v2.clone(), walk.path(f), m));
                    }
                }
            }
        }
    }
    let (v1, v2, x, m) = first.unwrap();
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!(
                "forward images meet; first: {} and {} reach the common tail at |a| = {m}",
                fmt(ctx, &v1),
                fmt(ctx, &v2)
            ),
            words: vec![fmt(ctx, &v1), fmt(ctx, &v2), fmt(ctx, &x)],
        },
    ))
}

fn check_set(ctx: &mut Ctx, words: &[Word], s: WitnessScale) -> Result<Verdict, LangError> {
    let classes = classify_words(ctx, words, s.horizon)?;
    let mut first: Option<(Word, Word, usize)> = None;
    for c1 in 0..classes.count() {
        for c2 in c1..classes.count() {
            let lens = classes.common_lengths(c1, c2);
            let Some(&len) = lens.first() else { continue };
            let v1 = classes.reps[c1][&len].clone();
            let v2 = classes.reps[c2][&len].clone();
            let walk = target_walk(
                ctx,
                &[classes.frontiers[c1].clone(), classes.frontiers[c2].clone()],
                s.tail_len,
                None,
            )?;
            for &f in &walk.finals {
                let ms = walk.masks(f);
                match ms[0].and(&ms[1]).lowest() {
                    None => {
                        let x = walk.path(f);
                        return Ok(Verdict::no_witness(
                            scale_of(s),
                            Evidence::FailingObligation {
                                summary: format!(
                                    "tail {} admits no equal-length connectors from {} and {} within {}",
                                    fmt(ctx, &x),
                                    fmt(ctx, &v1),
                                    fmt(ctx, &v2),
                                    s.horizon
                                ),
                                words: vec![fmt(ctx, &v1), fmt(ctx, &v2), fmt(ctx, &x)],
                            },
                        ));
                    }
                    Some(m) => {
                        if first.is_none() {
                            first = Some((v1.clone(), v2.clone(), m));
                        }
                    }
                }
            }
        }
    }
    let (v1, v2, m) = first.unwrap();
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!(
                "every tail is jointly reachable; first: {} and {} at |a| = {m}",
                fmt(ctx, &v1),
                fmt(ctx, &v2)
            ),
            words: vec![fmt(ctx, &v1), fmt(ctx, &v2)],
        },
    ))
}

fn check_et(ctx: &mut Ctx, words: &[Word], s: WitnessScale) -> Result<Verdict, LangError> {
    let cover = CoverIndex::new(words).ok_or_else(|| {
        LangError::CapExceeded(format!("more than {COVER_WORD_CAP} tested words"))
    })?;
    let classes = classify_words(ctx, words, s.horizon)?;
    let mut first: Option<(Word, Word)> = None;
    for c1 in 0..classes.count() {
        for c2 in c1..classes.count() {
            let lens = classes.common_lengths(c1, c2);
            let Some(&len) = lens.first() else { continue };
            let v1 = classes.reps[c1][&len].clone();
            let v2 = classes.reps[c2][&len].clone();
            let walk = target_walk(
                ctx,
                &[classes.frontiers[c1].clone(), classes.frontiers[c2].clone()],
                s.tail_len,
                Some(&cover),
            )?;
            // union of words covered by some jointly reachable tail
            let mut good = CoverSet::default();
            for &f in &walk.finals {
                let ms = walk.masks(f);
                if ms[0].and(&ms[1]).any() {
                    good.or_assign(&walk.nodes[f].cover);
                }
            }
            if let Some((i, w)) = words.iter().enumerate().find(|(i, _)| !good.get(*i)) {
                let _ = i;
                return Ok(Verdict::no_witness(
                    scale_of(s),
                    Evidence::FailingObligation {
                        summary: format!(
                            "no tail starting with {} is jointly reachable from {} and {} within {}",
                            fmt(ctx, w),
                            fmt(ctx, &v1),
                            fmt(ctx, &v2),
                            s.horizon
                        ),
                        words: vec![fmt(ctx, &v1), fmt(ctx, &v2), fmt(ctx, w)],
                    },
                ));
            }
            if first.is_none() {
                first = Some((v1, v2));
            }
        }
    }
    let (v1, v2) = first.unwrap();
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: format!(
                "jointly reached tails are dense among tested words; first pair {} and {}",
                fmt(ctx, &v1),
                fmt(ctx, &v2)
            ),
            words: vec![fmt(ctx, &v1), fmt(ctx, &v2)],
        },
    ))
}

fn check_spt(ctx: &mut Ctx, words: &[Word], s: WitnessScale) -> Result<Verdict, LangError> {
    let classes = classify_words(ctx, words, s.horizon)?;
    // distinct per-tail length masks per class
    let mut families: Vec<Vec<LenMask>> = Vec::new();
    for c in 0..classes.count() {
        let walk = target_walk(ctx, &[classes.frontiers[c].clone()], s.tail_len, None)?;
        let mut fam: Vec<LenMask> = walk.finals.iter().map(|&f| walk.masks(f)[0]).collect();
        fam.sort_unstable_by_key(|m| m.0);
        fam.dedup();
        families.push(fam);
    }
    for tuple_size in [2usize, 3] {
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(tuple) = stack.pop() {
            if tuple.len() == tuple_size {
                // tuple of classes must share at least one word length
                let lens = (1..=s.ell).find(|l| {
                    tuple.iter().all(|&c| classes.reps[c].contains_key(l))
                });
                let Some(len) = lens else { continue };
                if !combos_intersect(&families, &tuple, &mut Vec::new()) {
                    let names: Vec<String> = tuple
                        .iter()
                        .map(|&c| fmt(ctx, &classes.reps[c][&len]))
                        .collect();
                    return Ok(Verdict::no_witness(
                        scale_of(s),
                        Evidence::FailingObligation {
                            summary: format!(
                                "some {}-tuple of tails has no common connector length for ({})",
                                tuple_size,
                                names.join(", ")
                            ),
                            words: names,
                        },
                    ));
                }
                continue;
            }
            let lo = tuple.last().copied().unwrap_or(0);
            for c in lo..classes.count() {
                let mut t = tuple.clone();
                t.push(c);
                stack.push(t);
            }
        }
    }
    Ok(Verdict::witness(
        scale_of(s),
        Evidence::WitnessWords {
            summary: "all tested 2- and 3-tuples of words and tails admit a common connector length"
                .into(),
            words: vec![],
        },
    ))
}

fn combos_intersect(
    families: &[Vec<LenMask>],
    tuple: &[usize],
    chosen: &mut Vec<LenMask>,
) -> bool {
    if chosen.len() == tuple.len() {
        let mut acc = chosen[0];
        for m in &chosen[1..] {
            acc = acc.and(m);
        }
        return acc.any();
    }
    let c = tuple[chosen.len()];
    for m in &families[c] {
        chosen.push(*m);
        if !combos_intersect(families, tuple, chosen) {
            chosen.pop();
            return false;
        }
        chosen.pop();
    }
    true
}

/// Scale at which the bounded checks decide exactly on vertex shifts with at
/// most `n` vertices: connector budgets dominate both the primitivity index
/// bound `(n-1)^2 + 1` and diagonal reachability in the pair graph.
pub fn sft_agreement_scale(n: usize) -> WitnessScale {
    let h = (2 * n + 4).max(n * n.saturating_sub(1));
    WitnessScale::new(3, 2 * n + 4, h, n + 2).expect("valid scale")
}
