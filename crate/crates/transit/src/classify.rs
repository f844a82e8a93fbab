//! Classification pipeline: route a built system to its deciders, propagate
//! through the implication lattice, check consistency and emit reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descriptor::{build_system, BuiltSystem, DescriptorError, OracleSystemKind, SystemDescriptor};
use crate::interval::{
    backward_orbit, check_interval_property, eventually_fixed_dense, markov_extract,
    min_abs_slope, GridScale, PLMap, Rat, INTERVAL_PROPS,
};
use crate::lang::{
    periodic_word_scan, refute_vst_bound, witness_check, LangError, LanguageOracle,
};
use crate::lattice::{check_consistency, propagate, ConsistencyReport, LatticeError, SystemFlags};
use crate::sft::decide_property;
use crate::types::{
    Evidence, PropertyId, Scale, Verdict, VerdictStatus, WitnessScale,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{0}")]
    Descriptor(#[from] DescriptorError),
    #[error("lattice contradiction: {0}")]
    Contradiction(LatticeError),
    #[error("{0}")]
    Module(String),
}

impl From<LatticeError> for ClassifyError {
    fn from(e: LatticeError) -> Self {
        ClassifyError::Contradiction(e)
    }
}

impl From<LangError> for ClassifyError {
    fn from(e: LangError) -> Self {
        ClassifyError::Module(e.to_string())
    }
}

impl From<crate::interval::IntervalError> for ClassifyError {
    fn from(e: crate::interval::IntervalError) -> Self {
        ClassifyError::Module(e.to_string())
    }
}

impl From<crate::sft::SftError> for ClassifyError {
    fn from(e: crate::sft::SftError) -> Self {
        ClassifyError::Module(e.to_string())
    }
}

/// Bounded-check budgets for one classification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scales {
    pub witness: WitnessScale,
    pub grid: GridScale,
    pub horizon: usize,
}

impl Default for Scales {
    fn default() -> Self {
        Scales {
            witness: WitnessScale::default(),
            grid: GridScale::new(crate::interval::rat(1, 64)).expect("positive"),
            horizon: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraFinding {
    pub name: String,
    pub verdict: Verdict,
}

/// Full classification outcome for one system. The machine (JSON) form
/// round-trips exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub system: String,
    pub descriptor: SystemDescriptor,
    pub flags: SystemFlags,
    pub verdicts: BTreeMap<PropertyId, Verdict>,
    pub consistency: ConsistencyReport,
    pub extras: Vec<ExtraFinding>,
}

fn system_label(b: &BuiltSystem) -> String {
    match b {
        BuiltSystem::Sft(g) => format!(
            "vertex shift on {} vertices ({}-sided)",
            g.vertex_count(),
            match g.sided() {
                crate::sft::Sidedness::One => "one",
                crate::sft::Sidedness::Two => "two",
            }
        ),
        BuiltSystem::Oracle { oracle, .. } => oracle.descriptor().to_string(),
        BuiltSystem::Interval(PLMap::Ladder) => "ladder interval map on [0, 1]".to_string(),
        BuiltSystem::Interval(f) => {
            let d = f.domain();
            format!("piecewise-linear map on {}", d.describe())
        }
    }
}

/// Classifies a descriptor: exact decisions for vertex-shift presentations,
/// certificates plus bounded witness checks otherwise, followed by lattice
/// propagation and a consistency pass. Deterministic for fixed inputs.
pub fn run_classify(
    d: &SystemDescriptor,
    props: &[PropertyId],
    scales: &Scales,
) -> Result<ClassificationReport, ClassifyError> {
    let built = build_system(d)?;
    let mut table;
    let mut extras: Vec<ExtraFinding> = Vec::new();

    match &built {
        BuiltSystem::Sft(g) => {
            table = crate::lattice::VerdictTable::new(SystemFlags {
                open_map: g.open_map(),
                invertible: g.invertible(),
                trivial: g.is_trivial(),
            });
            for p in PropertyId::ALL {
                table.insert(p, decide_property(g, p)?);
            }
        }
        BuiltSystem::Oracle { oracle, kind } => {
            table = crate::lattice::VerdictTable::new(SystemFlags::default());
            classify_oracle(oracle, kind, props, scales, &mut table, &mut extras)?;
        }
        BuiltSystem::Interval(f) => {
            table = crate::lattice::VerdictTable::new(SystemFlags::default());
            classify_interval(f, props, scales, &mut table, &mut extras)?;
        }
    }

    let table = propagate(&table)?;
    let consistency = check_consistency(&table);

    let mut verdicts = BTreeMap::new();
    for p in props {
        let v = table
            .verdicts
            .get(p)
            .cloned()
            .unwrap_or_else(|| Verdict::unknown(Evidence::note("no procedure applies")));
        verdicts.insert(*p, v);
    }

    Ok(ClassificationReport {
        system: system_label(&built),
        descriptor: d.clone(),
        flags: table.flags,
        verdicts,
        consistency,
        extras,
    })
}

fn classify_oracle(
    oracle: &LanguageOracle,
    kind: &OracleSystemKind,
    props: &[PropertyId],
    scales: &Scales,
    table: &mut crate::lattice::VerdictTable,
    extras: &mut Vec<ExtraFinding>,
) -> Result<(), ClassifyError> {
    // certificates first
    if *kind == OracleSystemKind::Substitution {
        table.insert(
            PropertyId::M,
            Verdict::proved(Evidence::TrustedFact {
                statement: "a primitive substitution generates a minimal subshift".into(),
            }),
        );
    }
    if let OracleSystemKind::GapShift { .. } = kind {
        let v = oracle
            .alphabet()
            .parse_word("1")
            .expect("gap alphabet has symbol 1");
        let bound = scales.witness.horizon.min(30);
        let tail = scales.witness.tail_len.max(bound + 10);
        let verdict = refute_vst_bound(oracle, &v, bound, tail)?;
        if verdict.status == VerdictStatus::RefutedBounded {
            table.insert(PropertyId::Vst, verdict);
        }
    }
    if *kind == OracleSystemKind::Lindenstrauss {
        let scan = periodic_word_scan(oracle, 6, 12)?;
        extras.push(ExtraFinding {
            name: "periodic word scan (period <= 6, 12 repetitions)".into(),
            verdict: scan,
        });
    }

    // propagate the certificates before spending on witness searches
    *table = propagate(table)?;

    for &p in props {
        if table.status(p) != VerdictStatus::Unknown {
            continue;
        }
        if PropertyId::TEN.contains(&p) || p == PropertyId::Exact {
            table.insert(p, witness_check(oracle, p, scales.witness)?);
        }
    }
    Ok(())
}

fn classify_interval(
    f: &PLMap,
    props: &[PropertyId],
    scales: &Scales,
    table: &mut crate::lattice::VerdictTable,
    extras: &mut Vec<ExtraFinding>,
) -> Result<(), ClassifyError> {
    // a Markov partition with expanding pieces transfers TT/TM/LEO verdicts
    // faithfully to the vertex shift it extracts
    let markov = markov_extract(f).filter(|_| {
        min_abs_slope(f)
            .map(|s| s > Rat::from_integer(1.into()))
            .unwrap_or(false)
    });
    if let Some(g) = &markov {
        for p in [PropertyId::Tt, PropertyId::Tm, PropertyId::Leo] {
            let mut v = decide_property(g, p)?;
            v.evidence = Evidence::GraphCertificate {
                summary: format!(
                    "via the expanding Markov partition on {} cells: {}",
                    g.vertex_count(),
                    v.evidence.summary()
                ),
                detail: vec![],
            };
            table.insert(p, v);
        }
    }

    // backward orbits of fixed points can refute strong transitivity
    for q in f.fixed_points() {
        let orbit = backward_orbit(f, &q, 12)?;
        if orbit.stabilized && orbit.density_eps > scales.grid.eps {
            table.insert(
                PropertyId::St,
                Verdict::refuted(Evidence::BackwardOrbit {
                    point: q.to_string(),
                    orbit: orbit.points.iter().map(Rat::to_string).collect(),
                }),
            );
            break;
        }
    }

    // piecewise-linear maps without flat pieces send opene sets to sets with
    // interior at every step
    let flat_free = match f {
        PLMap::Ladder => true,
        PLMap::Explicit { .. } => min_abs_slope(f)
            .map(|s| s > Rat::from_integer(0.into()))
            .unwrap_or(false),
    };
    if flat_free {
        table.insert(
            PropertyId::IterAlmostOpen,
            Verdict::proved(Evidence::note(
                "piecewise linear with nonzero slopes: images of opene sets contain intervals",
            )),
        );
    }

    *table = propagate(table)?;

    for &p in props {
        if table.status(p) != VerdictStatus::Unknown {
            continue;
        }
        if INTERVAL_PROPS.contains(&p) {
            table.insert(
                p,
                check_interval_property(f, p, &scales.grid, scales.horizon)?,
            );
        }
    }

    *table = propagate(table)?;

    for q in f.fixed_points().into_iter().take(2) {
        let v = eventually_fixed_dense(f, &q, &scales.grid, 10)?;
        extras.push(ExtraFinding {
            name: format!("eventually-fixed points of {q} dense"),
            verdict: v,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Renders a report. The JSON form is stable-keyed and parses back equal;
/// the text form is a fixed-width table with consistency notes.
pub fn emit_report(r: &ClassificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(r).expect("report serializes"),
        ReportFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!("system: {}\n", r.system));
            out.push_str(&format!(
                "flags: open_map={} invertible={} trivial={}\n\n",
                r.flags.open_map, r.flags.invertible, r.flags.trivial
            ));
            out.push_str(&format!(
                "{:<17} {:<16} {:<26} {}\n",
                "PROPERTY", "VERDICT", "SCALE", "EVIDENCE"
            ));
            out.push_str(&format!("{}\n", "-".repeat(100)));
            for (p, v) in &r.verdicts {
                let scale = match &v.scale {
                    None => "-".to_string(),
                    Some(Scale::Witness { scale }) => scale.to_string(),
                    Some(Scale::Bound { bound }) => format!("bound={bound}"),
                    Some(Scale::Grid { eps, horizon }) => {
                        format!("eps={eps},horizon={horizon}")
                    }
                };
                let via = match &v.provenance {
                    crate::types::Provenance::Direct => String::new(),
                    crate::types::Provenance::Propagated { source, rule } => {
                        format!(" [from {source}: {rule}]")
                    }
                };
                out.push_str(&format!(
                    "{:<17} {:<16} {:<26} {}{}\n",
                    p.name(),
                    v.status.to_string(),
                    scale,
                    v.evidence.summary(),
                    via
                ));
            }
            if !r.extras.is_empty() {
                out.push_str("\nadditional findings:\n");
                for e in &r.extras {
                    out.push_str(&format!(
                        "  {}: {} ({})\n",
                        e.name,
                        e.verdict.status,
                        e.verdict.evidence.summary()
                    ));
                }
            }
            out.push_str("\nconsistency:\n");
            if r.consistency.contradictions.is_empty() {
                out.push_str("  no contradictions\n");
            }
            for c in &r.consistency.contradictions {
                out.push_str(&format!("  CONTRADICTION: {c}\n"));
            }
            if !r.consistency.unknown.is_empty() {
                let names: Vec<&str> =
                    r.consistency.unknown.iter().map(|p| p.name()).collect();
                out.push_str(&format!("  undecided: {}\n", names.join(", ")));
            }
            for n in &r.consistency.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
            for h in &r.consistency.non_implications {
                out.push_str(&format!(
                    "  exhibits non-implication {}: {}{}\n",
                    h.statement,
                    h.description,
                    if h.certificate_grade {
                        " (certificate grade)"
                    } else {
                        " (bounded scale)"
                    }
                ));
            }
            out
        }
    }
}

/// Hitting-set answer for the CLI: exact eventually periodic set for vertex
/// shifts, a finite membership prefix for oracle languages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HittingSetReport {
    Exact {
        description: String,
        threshold: u64,
        period: u64,
        class: String,
        members_up_to_60: Vec<u64>,
    },
    FinitePrefix {
        max_n: u64,
        members: Vec<u64>,
        note: String,
    },
}

pub fn hitting_set_report(
    d: &SystemDescriptor,
    u_text: &str,
    v_text: &str,
    max_n: u64,
) -> Result<HittingSetReport, ClassifyError> {
    // forbidden-word systems take words over their own alphabet; the block
    // recoding preserves hitting times, so translate before dispatching
    if let SystemDescriptor::ForbiddenWords { alphabet, words } = d {
        return forbidden_words_hitting(alphabet, words, d, u_text, v_text);
    }
    let built = build_system(d)?;
    // cylinders insist on nonempty anchor words
    let u = crate::types::Cylinder::new(crate::descriptor::parse_word_for(&built, u_text)?)
        .map_err(|e| ClassifyError::Module(e.to_string()))?;
    let v = crate::types::Cylinder::new(crate::descriptor::parse_word_for(&built, v_text)?)
        .map_err(|e| ClassifyError::Module(e.to_string()))?;
    let (u, v) = (u.word().clone(), v.word().clone());
    match &built {
        BuiltSystem::Sft(g) => {
            let s = crate::sft::hitting_set(g, &u, &v)?;
            Ok(exact_report(&s))
        }
        BuiltSystem::Oracle { oracle, .. } => {
            let members = oracle_hitting_prefix(oracle, &u, &v, max_n as usize)?;
            Ok(HittingSetReport::FinitePrefix {
                max_n,
                members,
                note: "oracle language: eventual periodicity is not certified".into(),
            })
        }
        BuiltSystem::Interval(_) => Err(ClassifyError::Module(
            "hitting sets are defined for shift systems only".into(),
        )),
    }
}

fn exact_report(s: &crate::types::EventuallyPeriodicSet) -> HittingSetReport {
    HittingSetReport::Exact {
        description: s.describe(),
        threshold: s.threshold(),
        period: s.period(),
        class: s.classify().to_string(),
        members_up_to_60: (1..=60).filter(|&n| s.member(n)).collect(),
    }
}

/// Hitting set of a forbidden-word system for cylinders over the original
/// alphabet. The (k-1)-block recoding commutes with the shift, so a word of
/// length at least k-1 maps to one block word; shorter words become unions
/// over their legal block extensions.
fn forbidden_words_hitting(
    alphabet: &[String],
    words: &[String],
    d: &SystemDescriptor,
    u_text: &str,
    v_text: &str,
) -> Result<HittingSetReport, ClassifyError> {
    use crate::types::{Alphabet, EventuallyPeriodicSet, Word};
    let built = build_system(d)?;
    let BuiltSystem::Sft(g) = &built else {
        return Err(ClassifyError::Module("forbidden words build a graph".into()));
    };
    let original = Alphabet::new(alphabet.to_vec())
        .map_err(|e| ClassifyError::Module(e.to_string()))?;
    let k = words
        .iter()
        .map(|w| original.parse_word(w).map(|w| w.len()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| ClassifyError::Module(e.to_string()))?
        .into_iter()
        .max()
        .unwrap_or(2)
        .max(2);
    let block_len = k - 1;

    let single = original.symbols().iter().all(|s| s.chars().count() == 1);
    let sep = if single { "" } else { "\u{b7}" };
    let block_name = |w: &[usize]| -> String {
        w.iter()
            .map(|&s| original.symbol(s))
            .collect::<Vec<_>>()
            .join(sep)
    };
    // block words of all legal (k-1)-extensions of a short word, or the
    // single block word of a long one
    let block_words = |w: &Word| -> Result<Vec<Word>, ClassifyError> {
        let mut out = Vec::new();
        if w.len() >= block_len {
            let mut blocks = Vec::new();
            for win in w.symbols().windows(block_len) {
                let name = block_name(win);
                let idx = g.alphabet().index_of(&name).ok_or_else(|| {
                    ClassifyError::Module(format!("block {name} is not legal"))
                })?;
                blocks.push(idx);
            }
            let bw = Word::new(blocks);
            if !g.word_is_legal(&bw) {
                return Err(ClassifyError::Module("word is not legal".into()));
            }
            out.push(bw);
        } else {
            // extend to all legal (k-1)-blocks beginning with w
            for (idx, name) in g.alphabet().symbols().iter().enumerate() {
                let block = original
                    .parse_word(name)
                    .map_err(|e| ClassifyError::Module(e.to_string()))?;
                if block.symbols().starts_with(w.symbols()) {
                    out.push(Word::new(vec![idx]));
                }
            }
            if out.is_empty() {
                return Err(ClassifyError::Module("word is not legal".into()));
            }
        }
        Ok(out)
    };

    let us = block_words(
        &original
            .parse_word(u_text)
            .map_err(|e| ClassifyError::Module(e.to_string()))?,
    )?;
    let vs = block_words(
        &original
            .parse_word(v_text)
            .map_err(|e| ClassifyError::Module(e.to_string()))?,
    )?;
    let mut acc: Option<EventuallyPeriodicSet> = None;
    for bu in &us {
        for bv in &vs {
            let s = crate::sft::hitting_set(g, bu, bv)?;
            acc = Some(match acc {
                None => s,
                Some(prev) => prev.union(&s),
            });
        }
    }
    Ok(exact_report(&acc.expect("at least one block pair")))
}

/// Membership of n in N([u],[v]) for an oracle subshift, n = 1..=max_n:
/// the shifted cylinder meets [v] iff some legal word carries u at position
/// one and v at position n+1.
fn oracle_hitting_prefix(
    o: &LanguageOracle,
    u: &crate::types::Word,
    v: &crate::types::Word,
    max_n: usize,
) -> Result<Vec<u64>, ClassifyError> {
    if !o.is_legal(u) || !o.is_legal(v) {
        return Err(ClassifyError::Module("word is not legal".into()));
    }
    let mut ctx_frontier = {
        let mut ctx = crate::lang::witness::Ctx::new(o);
        crate::lang::witness::connector_frontier(&mut ctx, u, max_n.saturating_sub(u.len()))
            .map(|f| (ctx, f))
    };
    let mut out = Vec::new();
    for n in 1..=max_n {
        let member = if n < u.len() {
            overlap_legal(o, u, v, n)
        } else if let Some((ctx, frontier)) = ctx_frontier.as_mut() {
            let m = n - u.len();
            frontier
                .iter()
                .filter(|(_, mask)| mask.get(m))
                .any(|&(id, _)| ctx.accepts(id, v))
        } else {
            false
        };
        if member {
            out.push(n as u64);
        }
    }
    Ok(out)
}

fn overlap_legal(
    o: &LanguageOracle,
    u: &crate::types::Word,
    v: &crate::types::Word,
    n: usize,
) -> bool {
    let total = u.len().max(n + v.len());
    let mut combined: Vec<Option<usize>> = vec![None; total];
    for (i, &s) in u.symbols().iter().enumerate() {
        combined[i] = Some(s);
    }
    for (i, &s) in v.symbols().iter().enumerate() {
        match combined[n + i] {
            Some(e) if e != s => return false,
            _ => combined[n + i] = Some(s),
        }
    }
    let word: Vec<usize> = combined.into_iter().map(|x| x.unwrap()).collect();
    o.is_legal(&crate::types::Word::new(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(d: &SystemDescriptor) -> ClassificationReport {
        run_classify(d, &PropertyId::ALL, &Scales::default()).unwrap()
    }

    fn golden_mean_descriptor() -> SystemDescriptor {
        SystemDescriptor::Sft {
            vertices: vec!["0".into(), "1".into()],
            edges: vec![
                ("0".into(), "0".into()),
                ("0".into(), "1".into()),
                ("1".into(), "0".into()),
            ],
            sided: crate::sft::Sidedness::One,
        }
    }

    #[test]
    fn golden_mean_classification_is_fully_decided() {
        let r = classify(&golden_mean_descriptor());
        assert_eq!(r.verdicts.len(), 14);
        for (p, v) in &r.verdicts {
            assert!(
                v.status.is_certificate(),
                "{p} should be decided exactly, got {}",
                v.status
            );
        }
        assert_eq!(r.verdicts[&PropertyId::M].status, VerdictStatus::Refuted);
        assert_eq!(r.verdicts[&PropertyId::Leo].status, VerdictStatus::Proved);
        assert!(r.consistency.contradictions.is_empty());
    }

    #[test]
    fn report_json_round_trips() {
        let r = classify(&golden_mean_descriptor());
        let json = emit_report(&r, ReportFormat::Json);
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn report_json_is_deterministic() {
        let a = emit_report(&classify(&golden_mean_descriptor()), ReportFormat::Json);
        let b = emit_report(&classify(&golden_mean_descriptor()), ReportFormat::Json);
        assert_eq!(a, b);
    }

    #[test]
    fn hitting_set_exact_on_golden_mean() {
        let d = golden_mean_descriptor();
        let r = hitting_set_report(&d, "1", "1", 60).unwrap();
        match r {
            HittingSetReport::Exact {
                threshold,
                period,
                members_up_to_60,
                ..
            } => {
                assert_eq!(threshold, 2);
                assert_eq!(period, 1);
                assert_eq!(members_up_to_60, (2..=60).collect::<Vec<u64>>());
            }
            _ => panic!("expected an exact set"),
        }
    }

    #[test]
    fn hitting_set_prefix_on_gap_shift() {
        let d = SystemDescriptor::GapShift { base: 3 };
        // all-ones connectors make N([1],[1]) everything
        let r = hitting_set_report(&d, "1", "1", 12).unwrap();
        match r {
            HittingSetReport::FinitePrefix { members, .. } => {
                assert_eq!(members, (1..=12).collect::<Vec<u64>>());
            }
            _ => panic!("expected a finite prefix"),
        }
        // overlaps of 10001 with 1 admit only n = 4 before the word ends
        let r = hitting_set_report(&d, "10001", "1", 12).unwrap();
        match r {
            HittingSetReport::FinitePrefix { members, .. } => {
                assert_eq!(members, vec![4, 5, 6, 7, 8, 9, 10, 11, 12]);
            }
            _ => panic!("expected a finite prefix"),
        }
    }

    #[test]
    fn forbidden_words_hitting_uses_the_original_alphabet() {
        // no adjacent repeats: the alternating two-point shift
        let d = SystemDescriptor::ForbiddenWords {
            alphabet: vec!["0".into(), "1".into()],
            words: vec!["00".into(), "11".into()],
        };
        let r = hitting_set_report(&d, "0", "1", 60).unwrap();
        match r {
            HittingSetReport::Exact { members_up_to_60, .. } => {
                assert_eq!(
                    members_up_to_60,
                    (1..=60).filter(|n| n % 2 == 1).collect::<Vec<u64>>()
                );
            }
            _ => panic!("expected an exact set"),
        }

        // length-3 forbidden word forces the 2-block recoding
        let d = SystemDescriptor::ForbiddenWords {
            alphabet: vec!["0".into(), "1".into()],
            words: vec!["101".into()],
        };
        let r = hitting_set_report(&d, "10", "01", 60).unwrap();
        match r {
            HittingSetReport::Exact { members_up_to_60, .. } => {
                // n = 1 would spell the forbidden 101; every n >= 2 pads with zeros
                assert_eq!(members_up_to_60, (2..=60).collect::<Vec<u64>>());
            }
            _ => panic!("expected an exact set"),
        }
    }

    #[test]
    fn tent_map_inherits_markov_certificates() {
        let d = SystemDescriptor::PlMap {
            domain: ("0".into(), "1".into()),
            breakpoints: vec!["0".into(), "1/2".into(), "1".into()],
            values: vec!["0".into(), "1".into(), "0".into()],
        };
        let r = classify(&d);
        assert_eq!(r.verdicts[&PropertyId::Leo].status, VerdictStatus::Proved);
        assert_eq!(r.verdicts[&PropertyId::Tm].status, VerdictStatus::Proved);
        // minimality is refuted through the lattice: fully exact and nontrivial
        assert_eq!(r.verdicts[&PropertyId::M].status, VerdictStatus::Refuted);
        assert_eq!(r.verdicts[&PropertyId::St].status, VerdictStatus::Proved);
    }
}
