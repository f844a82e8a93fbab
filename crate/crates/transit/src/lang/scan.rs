//! Bounded refutation scans: unbounded-connector evidence against very
//! strong transitivity, and periodic-word scans.

use std::collections::HashMap;

use crate::types::{Evidence, Scale, Verdict, Word};

use super::{LangError, LanguageOracle};

const NODE_CAP: usize = 500_000;

/// Searches for a legal word `y` of length `tail_len` such that `v·a·y` is
/// illegal for every connector with `|a| <= bound`. An illegal finite prefix
/// kills every extension, so a hit soundly refutes very strong transitivity
/// at that connector bound; absence of a hit decides nothing.
pub fn refute_vst_bound(
    o: &LanguageOracle,
    v: &Word,
    bound: usize,
    tail_len: usize,
) -> Result<Verdict, LangError> {
    let mut ctx = super::witness::Ctx::new(o);
    let frontier = super::witness::connector_frontier(&mut ctx, v, bound)
        .ok_or_else(|| LangError::Invalid("word is not legal".into()))?;
    let start_alive: Vec<u32> = frontier.iter().map(|&(id, _)| id).collect();
    let start_lang = {
        let st = o.start_state();
        ctx.intern(st)
    };

    // walk targets, keeping the set of frontier states that still accept the
    // prefix read so far; an empty set is the refutation
    let mut nodes: Vec<(u32, Vec<u32>, usize, usize)> = vec![(start_lang, start_alive, usize::MAX, 0)];
    let mut level: Vec<usize> = vec![0];
    for _depth in 0..tail_len {
        let mut dedup: HashMap<(u32, Vec<u32>), usize> = HashMap::new();
        let mut next = Vec::new();
        for &ni in &level {
            for sym in 0..o.alphabet().len() {
                let Some(lang) = ctx.step_id(nodes[ni].0, sym) else {
                    continue;
                };
                let mut alive: Vec<u32> = nodes[ni]
                    .1
                    .iter()
                    .filter_map(|&id| ctx.step_id(id, sym))
                    .collect();
                alive.sort_unstable();
                alive.dedup();
                let key = (lang, alive.clone());
                if dedup.contains_key(&key) {
                    continue;
                }
                let idx = nodes.len();
                nodes.push((lang, alive.clone(), ni, sym));
                dedup.insert(key, idx);
                if alive.is_empty() {
                    // reconstruct the prefix and extend it to a full tail
                    let mut syms = Vec::new();
                    let mut cur = idx;
                    while nodes[cur].2 != usize::MAX {
                        syms.push(nodes[cur].3);
                        cur = nodes[cur].2;
                    }
                    syms.reverse();
                    let prefix = Word::new(syms);
                    let st = o.state_after(&prefix).expect("walked prefix is legal");
                    let rest = o
                        .extend_from(&st, tail_len - prefix.len())
                        .ok_or_else(|| {
                            LangError::Invalid("legal word failed to extend".into())
                        })?;
                    let y = prefix.concat(&rest);
                    return Ok(Verdict::refuted_bounded(
                        bound as u64,
                        Evidence::FailingObligation {
                            summary: format!(
                                "{}·a·{} is illegal for every |a| <= {bound}",
                                o.alphabet().format_word(v),
                                o.alphabet().format_word(&y)
                            ),
                            words: vec![
                                o.alphabet().format_word(v),
                                o.alphabet().format_word(&y),
                            ],
                        },
                    ));
                }
                next.push(idx);
                if nodes.len() > NODE_CAP {
                    return Err(LangError::CapExceeded("refutation walk".into()));
                }
            }
        }
        level = next;
        if level.is_empty() {
            break;
        }
    }
    Ok(Verdict::unknown(Evidence::note(format!(
        "every tail of length {tail_len} is reachable from {} within {bound} steps",
        o.alphabet().format_word(v)
    ))))
}

/// Tests `w^reps` for every primitive word with `|w| <= max_period`. A legal
/// power is a periodic-structure witness; if every power dies the subshift
/// has no periodic point of period <= max_period, provided word legality is
/// faithful to the language (a periodic point makes every power of its word
/// legal).
pub fn periodic_word_scan(
    o: &LanguageOracle,
    max_period: usize,
    reps: usize,
) -> Result<Verdict, LangError> {
    let nsym = o.alphabet().len();
    let mut total = 0usize;
    for len in 1..=max_period {
        let count = nsym.checked_pow(len as u32).unwrap_or(usize::MAX);
        total = total.saturating_add(count);
    }
    if total > 2_000_000 {
        return Err(LangError::CapExceeded(format!(
            "{total} candidate words at period <= {max_period}"
        )));
    }

    for len in 1..=max_period {
        let mut word = vec![0usize; len];
        loop {
            let w = Word::new(word.clone());
            if w.is_primitive() && o.is_legal(&w) {
                let power = w.repeat(reps);
                if o.is_legal(&power) {
                    return Ok(Verdict {
                        status: crate::types::VerdictStatus::Witness,
                        scale: Some(Scale::Bound { bound: reps as u64 }),
                        evidence: Evidence::WitnessWords {
                            summary: format!(
                                "{} repeated {reps} times stays legal",
                                o.alphabet().format_word(&w)
                            ),
                            words: vec![o.alphabet().format_word(&w)],
                        },
                        provenance: crate::types::Provenance::Direct,
                    });
                }
            }
            // next candidate in lexicographic order
            let mut i = len;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                word[i] += 1;
                if word[i] < nsym {
                    break;
                }
                word[i] = 0;
            }
            if word.iter().all(|&s| s == 0) {
                break;
            }
        }
    }
    Ok(Verdict::refuted_bounded(
        max_period as u64,
        Evidence::note(format!(
            "no primitive word of length <= {max_period} stays legal through {reps} repetitions"
        )),
    ))
}
