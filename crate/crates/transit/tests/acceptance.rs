//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured scope. The criteria pin every tolerance in code.

mod common;

use std::time::Instant;

use transit::classify::run_classify;
use transit::corpus::{corpus_entries, run_corpus};
use transit::descriptor::{build_system, BuiltSystem};
use transit::interval::{
    backward_orbit, check_interval_property, markov_extract, rat, GridScale, PLMap,
    RationalInterval,
};
use transit::lang::{
    periodic_word_scan, refute_vst_bound, sft_agreement_scale, witness_check, LanguageOracle,
    Substitution,
};
use transit::lattice::{propagate, SystemFlags, VerdictTable};
use transit::sft::{decide_property, hitting_set, reach_profile};
use transit::types::{Evidence, PropertyId, Verdict, VerdictStatus};

use common::{brute_hitting_members, random_essential_sft, random_legal_words, rng};

/// Criterion 1: hitting-set membership for n <= 60 matches the independent
/// layered oracle on at least 100 random essential graphs, with zero
/// mismatches, in under a minute.
#[test]
fn acceptance_1_sft_oracle_equivalence() {
    let start = Instant::now();
    let mut r = rng(0xA11CE);
    let mut graphs = 0usize;
    let mut pairs = 0usize;
    while graphs < 100 {
        let g = random_essential_sft(&mut r, 5);
        graphs += 1;
        let profile = reach_profile(&g).unwrap();
        let _ = &profile;
        let n = g.vertex_count();
        // all single-symbol pairs plus sampled longer words
        let mut words: Vec<transit::types::Word> =
            (0..n).map(|i| transit::types::Word::new(vec![i])).collect();
        words.extend(random_legal_words(&mut r, &g, &[2, 2, 3, 3]));
        for u in &words {
            for v in &words {
                let exact = hitting_set(&g, u, v).unwrap();
                let brute = brute_hitting_members(&g, u, v, 60);
                for n in 1..=60u64 {
                    assert_eq!(
                        exact.member(n),
                        brute[(n - 1) as usize],
                        "mismatch at n={n} for |V|={}",
                        g.vertex_count()
                    );
                }
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "criterion 1 exceeded 60 s: {elapsed:?}"
    );
    println!(
        "ACCEPTANCE 1 PASS: {pairs} cylinder pairs over {graphs} random graphs, 0 mismatches, {elapsed:?}"
    );
}

/// Criterion 2: exact decisions and bounded witness checks agree on all ten
/// hierarchy properties over the same kind of sample, at the prescribed
/// per-size scale.
#[test]
fn acceptance_2_decision_witness_agreement() {
    let start = Instant::now();
    let mut r = rng(0xBEEF);
    let mut checked = 0usize;
    for _ in 0..100 {
        let g = random_essential_sft(&mut r, 5);
        let scale = sft_agreement_scale(g.vertex_count());
        let oracle = LanguageOracle::from_sft(g.clone());
        for p in PropertyId::TEN {
            let decided = decide_property(&g, p).unwrap().status;
            let witnessed = witness_check(&oracle, p, scale).unwrap().status;
            let agree = matches!(
                (decided, witnessed),
                (VerdictStatus::Proved, VerdictStatus::Witness)
                    | (VerdictStatus::Refuted, VerdictStatus::NoWitness)
            );
            assert!(
                agree,
                "{p}: decided {decided} but witnessed {witnessed} on {:?} ({} vertices)",
                g.edges(),
                g.vertex_count()
            );
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 2 PASS: {checked} property decisions agree with bounded checks, 0 disagreements, {elapsed:?}"
    );
}

/// Criterion 3: propagation is idempotent, never rewrites direct verdicts,
/// raises no contradiction over the corpus, and the LEO-only table closes to
/// exactly the documented twelve properties.
#[test]
fn acceptance_3_lattice_soundness() {
    let start = Instant::now();

    // LEO-only closure
    let mut t = VerdictTable::new(SystemFlags::default());
    t.insert(
        PropertyId::Leo,
        Verdict::proved(Evidence::note("assumed")),
    );
    let closed = propagate(&t).unwrap();
    use PropertyId::*;
    let expect = [
        Tm, Spt, Vst, Wm, Set, St, Et, Tt, Exact, FullyExact, DensePeriodic, IterAlmostOpen,
    ];
    let proved: Vec<PropertyId> = PropertyId::ALL
        .iter()
        .copied()
        .filter(|&p| p != Leo && closed.status(p) == VerdictStatus::Proved)
        .collect();
    assert_eq!(proved.len(), 12, "LEO closure size");
    for p in expect {
        assert_eq!(closed.status(p), VerdictStatus::Proved, "{p}");
    }

    // corpus-wide: no contradictions, idempotence, direct verdicts untouched
    let corpus = run_corpus(None).unwrap();
    for e in &corpus.entries {
        assert!(
            e.report.consistency.contradictions.is_empty(),
            "{}: contradiction",
            e.id
        );
        let mut table = VerdictTable::new(e.report.flags);
        for (p, v) in &e.report.verdicts {
            table.insert(*p, v.clone());
        }
        let once = propagate(&table).unwrap();
        let twice = propagate(&once).unwrap();
        assert_eq!(once, twice, "{}: propagation not idempotent", e.id);
        for (p, v) in &table.verdicts {
            assert_eq!(&once.verdicts[p], v, "{}: direct verdict rewritten", e.id);
        }
    }
    println!(
        "ACCEPTANCE 3 PASS: LEO closes to the 12-property set; corpus propagation idempotent with 0 contradictions, {:?}",
        start.elapsed()
    );
}

fn classify_corpus_entry(id: &str) -> transit::classify::ClassificationReport {
    let e = corpus_entries()
        .into_iter()
        .find(|e| e.id == id)
        .unwrap_or_else(|| panic!("corpus entry {id}"));
    run_classify(&e.descriptor, &PropertyId::ALL, &e.scales).unwrap()
}

fn status_of(r: &transit::classify::ClassificationReport, p: PropertyId) -> VerdictStatus {
    r.verdicts[&p].status
}

/// Criterion 4: the six reproduction items, each within its stated scale and
/// under a minute.
#[test]
fn acceptance_4_example_reproduction() {
    // (i) glued tents: exact but not fully exact, not transitive
    let t0 = Instant::now();
    let r = classify_corpus_entry("double_tent");
    assert_eq!(status_of(&r, PropertyId::Exact), VerdictStatus::Witness);
    assert_eq!(status_of(&r, PropertyId::FullyExact), VerdictStatus::NoWitness);
    assert_eq!(status_of(&r, PropertyId::Tt), VerdictStatus::Refuted);
    let d1 = t0.elapsed();
    assert!(d1.as_secs() < 60);

    // (ii) skewed variant: fully exact, still not transitive
    let t0 = Instant::now();
    let r = classify_corpus_entry("double_tent_skew");
    assert_eq!(status_of(&r, PropertyId::FullyExact), VerdictStatus::Witness);
    assert_eq!(status_of(&r, PropertyId::Tt), VerdictStatus::Refuted);
    let d2 = t0.elapsed();
    assert!(d2.as_secs() < 60);

    // (iii) ladder map at eps=1/64, horizon 40
    let t0 = Instant::now();
    let r = classify_corpus_entry("ladder");
    assert_eq!(status_of(&r, PropertyId::Tm), VerdictStatus::Witness);
    assert_eq!(status_of(&r, PropertyId::Et), VerdictStatus::Witness);
    assert_eq!(status_of(&r, PropertyId::St), VerdictStatus::Refuted);
    match &r.verdicts[&PropertyId::St].evidence {
        Evidence::BackwardOrbit { point, orbit } => {
            assert_eq!(point, "0");
            assert_eq!(orbit, &vec!["0".to_string()]);
        }
        other => panic!("expected a backward-orbit certificate, got {other:?}"),
    }
    let f = PLMap::Ladder;
    for i in -10i64..=10 {
        let jm = RationalInterval::new(
            transit::interval::s_point(2 * i + 1),
            transit::interval::s_point(2 * i + 2),
        )
        .unwrap();
        let jp = RationalInterval::new(
            transit::interval::s_point(2 * i),
            transit::interval::s_point(2 * i + 1),
        )
        .unwrap();
        assert!(f.image(&jm).unwrap().covers(&jp), "covering fails at i={i}");
    }
    let d3 = t0.elapsed();
    assert!(d3.as_secs() < 60);

    // (iv) gap shift: SPT and TM witnesses; VST refuted at every bound <= 30
    let t0 = Instant::now();
    let r = classify_corpus_entry("gap3");
    assert_eq!(status_of(&r, PropertyId::Spt), VerdictStatus::Witness);
    assert_eq!(status_of(&r, PropertyId::Tm), VerdictStatus::Witness);
    assert_eq!(status_of(&r, PropertyId::Vst), VerdictStatus::RefutedBounded);
    let o = LanguageOracle::gap_shift(3).unwrap();
    let one = o.alphabet().parse_word("1").unwrap();
    for bound in 1..=30usize {
        let v = refute_vst_bound(&o, &one, bound, bound + 12).unwrap();
        assert_eq!(
            v.status,
            VerdictStatus::RefutedBounded,
            "VST must be refuted at bound {bound}"
        );
    }
    let d4 = t0.elapsed();
    assert!(d4.as_secs() < 60);

    // (v) zero-insertion lift: locally eventually onto with no short periodic words
    let t0 = Instant::now();
    let r = classify_corpus_entry("lindenstrauss");
    assert_eq!(status_of(&r, PropertyId::Leo), VerdictStatus::Witness);
    let o = LanguageOracle::lindenstrauss(&Substitution::thue_morse()).unwrap();
    let scan = periodic_word_scan(&o, 6, 12).unwrap();
    assert_eq!(scan.status, VerdictStatus::RefutedBounded);
    let d5 = t0.elapsed();
    assert!(d5.as_secs() < 60);

    // (vi) two-sided full shift
    let t0 = Instant::now();
    let r = classify_corpus_entry("full_shift_two_sided");
    assert_eq!(status_of(&r, PropertyId::Tm), VerdictStatus::Proved);
    assert_eq!(status_of(&r, PropertyId::Exact), VerdictStatus::Refuted);
    assert_eq!(status_of(&r, PropertyId::St), VerdictStatus::Refuted);
    assert_eq!(status_of(&r, PropertyId::M), VerdictStatus::Refuted);
    let d6 = t0.elapsed();
    assert!(d6.as_secs() < 60);

    println!(
        "ACCEPTANCE 4 PASS: all six reproduction items ({d1:?}, {d2:?}, {d3:?}, {d4:?}, {d5:?}, {d6:?})"
    );
}

/// Criterion 5: the corpus instantiates non-implications 1 through 5, and
/// statement 6 is surfaced as having no constructive example.
#[test]
fn acceptance_5_proposition_coverage() {
    let corpus = run_corpus(None).unwrap();
    let mut seen = [false; 6];
    for e in &corpus.entries {
        for hit in &e.report.consistency.non_implications {
            seen[(hit.statement - 1) as usize] = true;
        }
    }
    for s in 1..=5usize {
        assert!(seen[s - 1], "non-implication {s} not instantiated by any corpus entry");
    }
    assert!(
        corpus.statement_six.contains("no constructive example"),
        "statement 6 note missing"
    );
    println!(
        "ACCEPTANCE 5 PASS: non-implications 1-5 instantiated; statement 6 reported as lacking a constructive example"
    );
}

/// Criterion 6: on every invertible corpus presentation the ST, VST and M
/// verdicts coincide.
#[test]
fn acceptance_6_homeomorphism_collapse() {
    let mut checked = 0;
    for e in corpus_entries() {
        let built = build_system(&e.descriptor).unwrap();
        let BuiltSystem::Sft(g) = built else { continue };
        if !g.invertible() {
            continue;
        }
        let report = run_classify(&e.descriptor, &PropertyId::ALL, &e.scales).unwrap();
        let st = report.verdicts[&PropertyId::St].status;
        let vst = report.verdicts[&PropertyId::Vst].status;
        let m = report.verdicts[&PropertyId::M].status;
        assert_eq!(st, vst, "{}: ST and VST differ", e.id);
        assert_eq!(st, m, "{}: ST and M differ", e.id);
        checked += 1;
    }
    assert!(checked > 0, "no invertible corpus systems found");
    println!("ACCEPTANCE 6 PASS: ST = VST = M on {checked} invertible corpus presentation(s)");
}

/// Criterion 7: exact arithmetic laws on 1000 random maps, and agreement of
/// Markov-extracted verdicts with the grid checks at eps = 1/128.
#[test]
fn acceptance_7_interval_arithmetic() {
    let start = Instant::now();
    let mut r = rng(0xF00D);

    // 1000 random maps: image of a union is the union of images, and
    // monotone pieces scale lengths by exactly the slope
    for _ in 0..1000 {
        let f = common::random_pl_map(&mut r);
        let i1 = common::random_subinterval(&mut r, &f);
        let i2 = common::random_subinterval(&mut r, &f);
        let u1 = transit::interval::IntervalUnion::single(i1);
        let u2 = transit::interval::IntervalUnion::single(i2);
        let joint = f.image_union(&u1.union(&u2)).unwrap();
        let split = f.image_union(&u1).unwrap().union(&f.image_union(&u2).unwrap());
        assert_eq!(joint, split, "image must distribute over unions");

        // clip a random interval into a single piece and compare lengths
        let PLMap::Explicit { xs, ys } = &f else { unreachable!() };
        for k in 0..xs.len() - 1 {
            let piece = RationalInterval::new(xs[k].clone(), xs[k + 1].clone()).unwrap();
            let probe = common::random_subinterval(&mut r, &f);
            if let Some(clip) = piece.intersect(&probe) {
                if clip.is_degenerate() {
                    continue;
                }
                let img = f.image(&clip).unwrap();
                assert_eq!(img.parts().len(), 1);
                let slope =
                    ((&ys[k + 1] - &ys[k]) / (&xs[k + 1] - &xs[k])).clone();
                let expected = abs(&slope) * clip.length();
                assert_eq!(img.parts()[0].length(), expected, "length scaling");
            }
        }
    }

    // expanding Markov maps: graph decisions match grid checks at 1/128
    let grid = GridScale::new(rat(1, 128)).unwrap();
    let mut agreements = 0;
    for _ in 0..40 {
        let f = common::random_expanding_markov_map(&mut r);
        let Some(g) = markov_extract(&f) else {
            panic!("expanding uniform-grid map must be Markov");
        };
        for p in [PropertyId::Tt, PropertyId::Tm, PropertyId::Leo] {
            let decided = decide_property(&g, p).unwrap().status;
            let checked = check_interval_property(&f, p, &grid, 30).unwrap().status;
            let agree = match decided {
                VerdictStatus::Proved => checked == VerdictStatus::Witness,
                VerdictStatus::Refuted => {
                    checked == VerdictStatus::NoWitness || checked == VerdictStatus::Refuted
                }
                _ => false,
            };
            assert!(agree, "{p}: graph {decided} but grid {checked} on {f:?}");
            agreements += 1;
        }
    }

    // sanity anchor: the ladder backward orbit stays put while the tent's
    // spreads, as the corpus expects
    assert!(backward_orbit(&PLMap::Ladder, &rat(0, 1), 8).unwrap().stabilized);

    let elapsed = start.elapsed();
    println!(
        "ACCEPTANCE 7 PASS: 1000 random maps obey exact arithmetic laws; {agreements} Markov verdicts agree at eps=1/128, {elapsed:?}"
    );
}

fn abs(x: &transit::interval::Rat) -> transit::interval::Rat {
    if x < &rat(0, 1) {
        -x.clone()
    } else {
        x.clone()
    }
}
