//! Shared generators and independent oracles for the integration suites.
#![allow(dead_code)] // each suite uses its own subset

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use transit::interval::{rat, PLMap, Rat};
use transit::sft::{Sidedness, SftGraph};
use transit::types::{Alphabet, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random essential one-sided vertex shift with up to `max_n` vertices.
pub fn random_essential_sft(r: &mut ChaCha8Rng, max_n: usize) -> SftGraph {
    loop {
        let n = r.gen_range(1..=max_n);
        let density = r.gen_range(0.25..0.85);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if r.gen_bool(density) {
                    edges.push((i, j));
                }
            }
        }
        let g = SftGraph::new(Alphabet::numeric(n), &edges, Sidedness::One).unwrap();
        if let Ok(e) = g.essentialize() {
            return e;
        }
    }
}

/// Independent layered-reachability oracle for hitting sets: never touches
/// matrix powers, cycle detection or canonicalization.
pub fn brute_hitting_members(g: &SftGraph, u: &Word, v: &Word, max_n: usize) -> Vec<bool> {
    let layers = g.reach_layers(u.last().unwrap(), max_n + 1);
    (1..=max_n)
        .map(|n| {
            if n < u.len() {
                brute_overlap(g, u, v, n)
            } else {
                layers[n - u.len()][v.first().unwrap()]
            }
        })
        .collect()
}

fn brute_overlap(g: &SftGraph, u: &Word, v: &Word, n: usize) -> bool {
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
    g.word_is_legal(&Word::new(combined.into_iter().map(|x| x.unwrap()).collect()))
}

/// Random legal words of a graph, one per requested length where possible.
pub fn random_legal_words(
    r: &mut ChaCha8Rng,
    g: &SftGraph,
    lengths: &[usize],
) -> Vec<Word> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    'next: for &len in lengths {
        for _ in 0..64 {
            let mut w = vec![r.gen_range(0..n)];
            while w.len() < len {
                let last = *w.last().unwrap();
                let succs: Vec<usize> = g.successors(last).collect();
                if succs.is_empty() {
                    break;
                }
                w.push(succs[r.gen_range(0..succs.len())]);
            }
            if w.len() == len {
                out.push(Word::new(w));
                continue 'next;
            }
        }
    }
    out
}

/// Random continuous piecewise-linear self-map of [0, 1] with small rational
/// breakpoints, for arithmetic property tests.
pub fn random_pl_map(r: &mut ChaCha8Rng) -> PLMap {
    loop {
        let pieces = r.gen_range(2..=5usize);
        let mut xs: Vec<Rat> = vec![rat(0, 1), rat(1, 1)];
        while xs.len() < pieces + 1 {
            let q = r.gen_range(2..=16i64);
            let p = r.gen_range(1..q);
            let x = rat(p, q);
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        xs.sort();
        let ys: Vec<Rat> = (0..xs.len())
            .map(|_| {
                let q = r.gen_range(1..=16i64);
                let p = r.gen_range(0..=q);
                rat(p, q)
            })
            .collect();
        if let Ok(f) = PLMap::explicit(xs, ys) {
            return f;
        }
    }
}

/// Random uniform-grid Markov map of [0, 1] whose pieces expand by at least
/// a factor of two and whose covering relation uses every cell. Values sit
/// on the grid, so the breakpoint orbit closes immediately.
pub fn random_expanding_markov_map(r: &mut ChaCha8Rng) -> PLMap {
    loop {
        let k = r.gen_range(2..=4usize) as i64;
        let mut units: Vec<i64> = vec![r.gen_range(0..=k)];
        let mut ok = true;
        for _ in 0..k {
            let prev = *units.last().unwrap();
            let choices: Vec<i64> = (0..=k)
                .filter(|&u| (u - prev).abs() >= 2)
                .collect();
            if choices.is_empty() {
                ok = false;
                break;
            }
            units.push(choices[r.gen_range(0..choices.len())]);
        }
        if !ok {
            continue;
        }
        // surjectivity onto the grid: every cell covered by some piece image
        let covered = |cell: i64| {
            units
                .windows(2)
                .any(|w| w[0].min(w[1]) <= cell && cell + 1 <= w[0].max(w[1]))
        };
        if !(0..k).all(covered) {
            continue;
        }
        let xs: Vec<Rat> = (0..=k).map(|i| rat(i, k)).collect();
        let ys: Vec<Rat> = units.iter().map(|&u| rat(u, k)).collect();
        if let Ok(f) = PLMap::explicit(xs, ys) {
            return f;
        }
    }
}

/// Random subinterval of the map's domain with small rational endpoints.
pub fn random_subinterval(
    r: &mut ChaCha8Rng,
    f: &PLMap,
) -> transit::interval::RationalInterval {
    let d = f.domain();
    let span = d.length();
    loop {
        let q = r.gen_range(4..=32i64);
        let a = r.gen_range(0..q);
        let b = r.gen_range(0..=q);
        if a < b {
            let lo = &d.lo + &span * rat(a, q);
            let hi = &d.lo + &span * rat(b, q);
            return transit::interval::RationalInterval::new(lo, hi).unwrap();
        }
    }
}
