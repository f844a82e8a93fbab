//! Exact piecewise-linear interval dynamics over the rationals: images,
//! iterated unions, preimages, and the bi-infinite ladder map whose pieces
//! accumulate at the fixed endpoints.

mod check;

pub use check::{
    backward_orbit, check_interval_property, eventually_fixed_dense, markov_extract,
    min_abs_slope, BackwardOrbit, GridScale, INTERVAL_PROPS,
};

use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval lies outside the map domain")]
    OutOfDomain,
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rat(s: &str) -> Result<Rat, IntervalError> {
    BigRational::from_str(s.trim())
        .map_err(|e| IntervalError::Invalid(format!("bad rational `{s}`: {e}")))
}

pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Closed interval with exact rational endpoints. Degenerate intervals are
/// allowed; they show up in point-set results.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RationalInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Invalid(format!(
                "interval [{lo}, {hi}] is reversed"
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn of(lo: i64, lod: i64, hi: i64, hid: i64) -> Self {
        RationalInterval::new(rat(lo, lod), rat(hi, hid)).unwrap()
    }

    pub fn point(x: Rat) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn length(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn meets(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(RationalInterval { lo, hi })
        } else {
            None
        }
    }

    pub fn describe(&self) -> String {
        format!("[{}, {}]", self.lo, self.hi)
    }
}

/// Finite union of pairwise-disjoint, sorted closed intervals; touching
/// intervals are merged on normalization. The empty union is a value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalUnion {
    parts: Vec<RationalInterval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: vec![] }
    }

    pub fn from_parts(mut parts: Vec<RationalInterval>) -> Self {
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut out: Vec<RationalInterval> = Vec::new();
        for p in parts {
            match out.last_mut() {
                Some(last) if p.lo <= last.hi => {
                    if p.hi > last.hi {
                        last.hi = p.hi;
                    }
                }
                _ => out.push(p),
            }
        }
        IntervalUnion { parts: out }
    }

    pub fn single(i: RationalInterval) -> Self {
        IntervalUnion { parts: vec![i] }
    }

    pub fn parts(&self) -> &[RationalInterval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        IntervalUnion::from_parts(parts)
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                if let Some(c) = a.intersect(b) {
                    parts.push(c);
                }
            }
        }
        IntervalUnion::from_parts(parts)
    }

    pub fn meets(&self, i: &RationalInterval) -> bool {
        self.parts.iter().any(|p| p.meets(i))
    }

    pub fn covers(&self, i: &RationalInterval) -> bool {
        // normalized parts are disjoint and non-touching, so a cover must be
        // a single part
        self.parts.iter().any(|p| p.contains_interval(i))
    }

    /// Some part is a nondegenerate interval.
    pub fn has_interior(&self) -> bool {
        self.parts.iter().any(|p| !p.is_degenerate())
    }

    pub fn describe(&self) -> String {
        if self.parts.is_empty() {
            "{}".to_string()
        } else {
            self.parts
                .iter()
                .map(RationalInterval::describe)
                .collect::<Vec<_>>()
                .join(" u ")
        }
    }
}

/// Piecewise-linear self-map of an interval, either with finitely many
/// explicit breakpoints (linear interpolation between them) or the ladder
/// map on [0,1]: breakpoints s(j) = 2^j/(1+2^j) for all integers j, with
/// even-index points stepping down two indices and odd-index points
/// stepping up two, linear in between, 0 and 1 fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PLMap {
    Explicit { xs: Vec<Rat>, ys: Vec<Rat> },
    Ladder,
}

impl PLMap {
    pub fn explicit(xs: Vec<Rat>, ys: Vec<Rat>) -> Result<Self, IntervalError> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(IntervalError::Invalid(
                "need matching breakpoint and value lists with at least two entries".into(),
            ));
        }
        for w in xs.windows(2) {
            if w[0] >= w[1] {
                return Err(IntervalError::Invalid(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        let lo = xs.first().unwrap();
        let hi = xs.last().unwrap();
        for y in &ys {
            if y < lo || y > hi {
                return Err(IntervalError::Invalid(format!(
                    "value {y} leaves the domain [{lo}, {hi}]"
                )));
            }
        }
        Ok(PLMap::Explicit { xs, ys })
    }

    pub fn tent() -> Self {
        PLMap::explicit(
            vec![rat(0, 1), rat(1, 2), rat(1, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
        )
        .unwrap()
    }

    /// Two tents glued at 0 on [-1,1]; each half is forward invariant.
    pub fn double_tent() -> Self {
        PLMap::explicit(
            vec![rat(-1, 1), rat(-1, 2), rat(1, 2), rat(1, 1)],
            vec![rat(0, 1), rat(-1, 1), rat(1, 1), rat(0, 1)],
        )
        .unwrap()
    }

    /// Variant whose right half spills onto the whole of [-1,1].
    pub fn double_tent_skew() -> Self {
        PLMap::explicit(
            vec![rat(-1, 1), rat(-1, 2), rat(1, 2), rat(1, 1)],
            vec![rat(0, 1), rat(-1, 1), rat(1, 1), rat(-1, 1)],
        )
        .unwrap()
    }

    pub fn domain(&self) -> RationalInterval {
        match self {
            PLMap::Explicit { xs, .. } => RationalInterval {
                lo: xs.first().unwrap().clone(),
                hi: xs.last().unwrap().clone(),
            },
            PLMap::Ladder => RationalInterval {
                lo: rat(0, 1),
                hi: rat(1, 1),
            },
        }
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat, IntervalError> {
        if !self.domain().contains(x) {
            return Err(IntervalError::OutOfDomain);
        }
        match self {
            PLMap::Explicit { xs, ys } => {
                let i = match xs.binary_search(x) {
                    Ok(i) => return Ok(ys[i].clone()),
                    Err(i) => i - 1,
                };
                Ok(interp(&xs[i], &ys[i], &xs[i + 1], &ys[i + 1], x))
            }
            PLMap::Ladder => {
                if x.is_zero() {
                    return Ok(rat(0, 1));
                }
                if x.is_one() {
                    return Ok(rat(1, 1));
                }
                let j = ladder_piece(x);
                let (e0, e1) = (s_point(j), s_point(j + 1));
                let (v0, v1) = (ladder_value(j), ladder_value(j + 1));
                Ok(interp(&e0, &v0, &e1, &v1, x))
            }
        }
    }

    /// Exact image of a subinterval of the domain as a normalized union.
    pub fn image(&self, i: &RationalInterval) -> Result<IntervalUnion, IntervalError> {
        let dom = self.domain();
        if !dom.contains_interval(i) {
            return Err(IntervalError::OutOfDomain);
        }
        match self {
            PLMap::Explicit { xs, ys } => {
                let mut parts = Vec::new();
                for k in 0..xs.len() - 1 {
                    let piece = RationalInterval {
                        lo: xs[k].clone(),
                        hi: xs[k + 1].clone(),
                    };
                    if let Some(clip) = piece.intersect(i) {
                        let a = interp(&xs[k], &ys[k], &xs[k + 1], &ys[k + 1], &clip.lo);
                        let b = interp(&xs[k], &ys[k], &xs[k + 1], &ys[k + 1], &clip.hi);
                        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                        parts.push(RationalInterval { lo, hi });
                    }
                }
                Ok(IntervalUnion::from_parts(parts))
            }
            PLMap::Ladder => Ok(IntervalUnion::single(self.ladder_image(i)?)),
        }
    }

    /// Ladder images are single intervals: continuity joins the per-piece
    /// images, and intervals touching an endpoint adjoin the fixed value.
    fn ladder_image(&self, i: &RationalInterval) -> Result<RationalInterval, IntervalError> {
        let zero = rat(0, 1);
        let one = rat(1, 1);
        if i.is_degenerate() {
            let v = self.eval(&i.lo)?;
            return Ok(RationalInterval::point(v));
        }
        let touches_zero = i.lo.is_zero();
        let touches_one = i.hi.is_one();
        if touches_zero && touches_one {
            return Ok(RationalInterval { lo: zero, hi: one });
        }
        if touches_zero {
            // sup over [0, hi]: the last odd breakpoint at or below hi steps
            // up; compare with the value at hi itself
            let j = ladder_piece(&i.hi);
            let k_odd = if j.rem_euclid(2) == 1 { j } else { j - 1 };
            let m = self.eval(&i.hi)?.max(s_point(k_odd + 2));
            return Ok(RationalInterval { lo: zero, hi: m });
        }
        if touches_one {
            let j = ladder_piece(&i.lo);
            // smallest even breakpoint index at or above lo
            let k_start = if s_point(j) == i.lo { j } else { j + 1 };
            let k_even = if k_start.rem_euclid(2) == 0 {
                k_start
            } else {
                k_start + 1
            };
            let m = self.eval(&i.lo)?.min(s_point(k_even - 2));
            return Ok(RationalInterval { lo: m, hi: one });
        }
        // interior interval: finitely many pieces
        let jl = ladder_piece(&i.lo);
        let jh = ladder_piece(&i.hi);
        let mut vals = vec![self.eval(&i.lo)?, self.eval(&i.hi)?];
        let mut k = if s_point(jl) == i.lo { jl } else { jl + 1 };
        while k <= jh {
            let b = s_point(k);
            if b >= i.lo && b <= i.hi {
                vals.push(ladder_value(k));
            }
            k += 1;
        }
        let lo = vals.iter().min().unwrap().clone();
        let hi = vals.iter().max().unwrap().clone();
        Ok(RationalInterval { lo, hi })
    }

    pub fn image_union(&self, u: &IntervalUnion) -> Result<IntervalUnion, IntervalError> {
        let mut acc = IntervalUnion::empty();
        for p in u.parts() {
            acc = acc.union(&self.image(p)?);
        }
        Ok(acc)
    }

    /// Successive exact images f(U), f^2(U), ..., f^n(U), each normalized.
    pub fn iterate_images(
        &self,
        u: &IntervalUnion,
        n: usize,
        part_cap: usize,
    ) -> Result<Vec<IntervalUnion>, IntervalError> {
        let mut out = Vec::with_capacity(n);
        let mut cur = u.clone();
        for _ in 0..n {
            cur = self.image_union(&cur)?;
            if cur.parts().len() > part_cap {
                return Err(IntervalError::CapExceeded(format!(
                    "image union grew past {part_cap} parts"
                )));
            }
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Exact solutions of f(x) = y, one per piece where attained; a constant
    /// piece at level y contributes its endpoints.
    pub fn preimage_point(&self, y: &Rat) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::new();
        match self {
            PLMap::Explicit { xs, ys } => {
                for k in 0..xs.len() - 1 {
                    let (y0, y1) = (&ys[k], &ys[k + 1]);
                    if y0 == y1 {
                        if y0 == y {
                            out.push(xs[k].clone());
                            out.push(xs[k + 1].clone());
                        }
                        continue;
                    }
                    let (lo, hi) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
                    if y < lo || y > hi {
                        continue;
                    }
                    // x = x0 + (y - y0) / slope
                    let slope = (y1 - y0) / (&xs[k + 1] - &xs[k]);
                    let x = &xs[k] + (y - y0) / slope;
                    out.push(x);
                }
            }
            PLMap::Ladder => {
                if y.is_zero() {
                    return vec![rat(0, 1)];
                }
                if y.is_one() {
                    return vec![rat(1, 1)];
                }
                let jy = ladder_piece(y);
                for j in jy - 5..=jy + 5 {
                    let (e0, e1) = (s_point(j), s_point(j + 1));
                    let (v0, v1) = (ladder_value(j), ladder_value(j + 1));
                    let (lo, hi) = if v0 <= v1 {
                        (v0.clone(), v1.clone())
                    } else {
                        (v1.clone(), v0.clone())
                    };
                    if *y < lo || *y > hi {
                        continue;
                    }
                    let slope = (&v1 - &v0) / (&e1 - &e0);
                    let x = &e0 + (y - &v0) / slope;
                    if x >= e0 && x <= e1 {
                        out.push(x);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Rational fixed points, one per piece where the graph crosses the
    /// diagonal. The ladder map reports only its endpoint fixed points; it
    /// also crosses the diagonal inside every rising piece, but those form
    /// an infinite family.
    pub fn fixed_points(&self) -> Vec<Rat> {
        match self {
            PLMap::Explicit { xs, ys } => {
                let mut out: Vec<Rat> = Vec::new();
                for k in 0..xs.len() - 1 {
                    let slope = (&ys[k + 1] - &ys[k]) / (&xs[k + 1] - &xs[k]);
                    if slope.is_one() {
                        if ys[k] == xs[k] {
                            out.push(xs[k].clone());
                            out.push(xs[k + 1].clone());
                        }
                        continue;
                    }
                    let x = (&ys[k] - &slope * &xs[k]) / (Rat::one() - &slope);
                    if x >= xs[k] && x <= xs[k + 1] {
                        out.push(x);
                    }
                }
                out.sort();
                out.dedup();
                out
            }
            PLMap::Ladder => vec![rat(0, 1), rat(1, 1)],
        }
    }
}

fn interp(x0: &Rat, y0: &Rat, x1: &Rat, y1: &Rat, x: &Rat) -> Rat {
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// s(j) = 2^j / (1 + 2^j), exactly.
pub fn s_point(j: i64) -> Rat {
    if j >= 0 {
        let p = BigInt::one() << (j as usize);
        BigRational::new(p.clone(), p + BigInt::one())
    } else {
        let q = BigInt::one() << ((-j) as usize);
        BigRational::new(BigInt::one(), q + BigInt::one())
    }
}

/// Ladder endpoint image: even indices (the a-points) step down two, odd
/// indices (the b-points) step up two.
fn ladder_value(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        s_point(k - 2)
    } else {
        s_point(k + 2)
    }
}

/// The piece index j with s(j) <= x < s(j+1), for x strictly inside (0,1).
fn ladder_piece(x: &Rat) -> i64 {
    debug_assert!(*x > rat(0, 1) && *x < rat(1, 1));
    // s(j) <= x  iff  2^j <= x / (1-x) = a/b
    let r = x / (Rat::one() - x);
    let (a, b) = (r.numer().clone(), r.denom().clone());
    let guess = a.bits() as i64 - b.bits() as i64;
    let le = |j: i64| -> bool {
        // 2^j <= a/b
        if j >= 0 {
            (b.clone() << (j as usize)) <= a
        } else {
            b <= (a.clone() << ((-j) as usize))
        }
    };
    let mut j = guess;
    while !le(j) {
        j -= 1;
    }
    while le(j + 1) {
        j += 1;
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;

    #[test]
    fn tent_image_of_straddling_interval() {
        let t = PLMap::tent();
        let i = RationalInterval::of(3, 8, 5, 8);
        let img = t.image(&i).unwrap();
        assert_eq!(img.parts().len(), 1);
        assert_eq!(img.parts()[0], RationalInterval::of(3, 4, 1, 1));
    }

    #[test]
    fn double_tent_left_edge_image() {
        let f = PLMap::double_tent();
        let i = RationalInterval::new(rat(-1, 1), rat(-1, 2)).unwrap();
        let img = f.image(&i).unwrap();
        assert_eq!(img.parts().len(), 1);
        assert_eq!(
            img.parts()[0],
            RationalInterval::new(rat(-1, 1), rat(0, 1)).unwrap()
        );
    }

    #[test]
    fn iterate_tent_doubles() {
        let t = PLMap::tent();
        let u = IntervalUnion::single(RationalInterval::of(0, 1, 1, 4));
        let imgs = t.iterate_images(&u, 2, 1000).unwrap();
        assert_eq!(imgs[0].parts()[0], RationalInterval::of(0, 1, 1, 2));
        assert_eq!(imgs[1].parts()[0], RationalInterval::of(0, 1, 1, 1));
    }

    #[test]
    fn double_tent_halves_stay_invariant() {
        let f = PLMap::double_tent();
        let left = IntervalUnion::single(RationalInterval::new(rat(-1, 1), rat(0, 1)).unwrap());
        let imgs = f.iterate_images(&left, 8, 1000).unwrap();
        for img in imgs {
            for p in img.parts() {
                assert!(p.lo >= rat(-1, 1) && p.hi <= rat(0, 1));
            }
        }
    }

    #[test]
    fn tent_preimages_of_half() {
        let t = PLMap::tent();
        let pre = t.preimage_point(&rat(1, 2));
        assert_eq!(pre, vec![rat(1, 4), rat(3, 4)]);
    }

    #[test]
    fn ladder_endpoints_have_singleton_preimages() {
        let f = PLMap::Ladder;
        assert_eq!(f.preimage_point(&rat(0, 1)), vec![rat(0, 1)]);
        assert_eq!(f.preimage_point(&rat(1, 1)), vec![rat(1, 1)]);
    }

    #[test]
    fn ladder_ordering_holds() {
        // b_{i-1} < a_i < b_i < a_{i+1} for |i| <= 20
        for i in -20i64..=20 {
            let b_prev = s_point(2 * (i - 1) + 1);
            let a = s_point(2 * i);
            let b = s_point(2 * i + 1);
            let a_next = s_point(2 * (i + 1));
            assert!(b_prev < a && a < b && b < a_next, "i = {i}");
        }
    }

    #[test]
    fn ladder_endpoint_images() {
        let f = PLMap::Ladder;
        for i in -10i64..=10 {
            let a = s_point(2 * i);
            let b = s_point(2 * i + 1);
            assert_eq!(f.eval(&a).unwrap(), s_point(2 * (i - 1)));
            assert_eq!(f.eval(&b).unwrap(), s_point(2 * (i + 1) + 1));
        }
        assert_eq!(f.eval(&rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(f.eval(&rat(1, 1)).unwrap(), rat(1, 1));
    }

    #[test]
    fn ladder_covering_relations() {
        let f = PLMap::Ladder;
        // f(J-_i) contains J+_i
        for i in -10i64..=10 {
            let jm = RationalInterval::new(s_point(2 * i + 1), s_point(2 * i + 2)).unwrap();
            let jp = RationalInterval::new(s_point(2 * i), s_point(2 * i + 1)).unwrap();
            let img = f.image(&jm).unwrap();
            assert!(img.covers(&jp), "i = {i}");
        }
        // f([a_{i-k}, b_{i+k}]) contains [a_{i-(k+1)}, b_{i+(k+1)}]
        for i in -10i64..=10 {
            for k in 0i64..=5 {
                let big = RationalInterval::new(
                    s_point(2 * (i - k)),
                    s_point(2 * (i + k) + 1),
                )
                .unwrap();
                let bigger = RationalInterval::new(
                    s_point(2 * (i - k - 1)),
                    s_point(2 * (i + k + 1) + 1),
                )
                .unwrap();
                assert!(f.image(&big).unwrap().covers(&bigger), "i = {i}, k = {k}");
            }
        }
    }

    #[test]
    fn ladder_slopes_expand() {
        for i in -20i64..=20 {
            for (e0, e1) in [
                (s_point(2 * i), s_point(2 * i + 1)),
                (s_point(2 * i + 1), s_point(2 * i + 2)),
            ] {
                let f = PLMap::Ladder;
                let v0 = f.eval(&e0).unwrap();
                let v1 = f.eval(&e1).unwrap();
                let slope = ((v1 - v0) / (&e1 - &e0)).abs();
                assert!(slope > Rat::one(), "piece at i = {i}");
            }
        }
    }

    #[test]
    fn image_distributes_over_union() {
        let f = PLMap::double_tent_skew();
        let u1 = IntervalUnion::single(RationalInterval::new(rat(-3, 4), rat(-1, 4)).unwrap());
        let u2 = IntervalUnion::single(RationalInterval::of(1, 8, 7, 8));
        let joint = f.image_union(&u1.union(&u2)).unwrap();
        let split = f.image_union(&u1).unwrap().union(&f.image_union(&u2).unwrap());
        assert_eq!(joint, split);
    }

    #[test]
    fn monotone_piece_scales_length_by_slope() {
        let t = PLMap::tent();
        let i = RationalInterval::of(1, 16, 3, 16);
        let img = t.image(&i).unwrap();
        assert_eq!(img.parts().len(), 1);
        assert_eq!(img.parts()[0].length(), rat(2, 1) * i.length());
    }

    #[test]
    fn fixed_points_of_corpus_maps() {
        assert_eq!(PLMap::tent().fixed_points(), vec![rat(0, 1), rat(2, 3)]);
        let f = PLMap::double_tent();
        let fps = f.fixed_points();
        assert!(fps.contains(&rat(0, 1)));
        for p in &fps {
            assert_eq!(f.eval(p).unwrap(), *p);
        }
    }

    #[test]
    fn union_normalization_merges_touching_parts() {
        let u = IntervalUnion::from_parts(vec![
            RationalInterval::of(0, 1, 1, 2),
            RationalInterval::of(1, 2, 3, 4),
            RationalInterval::of(7, 8, 1, 1),
        ]);
        assert_eq!(u.parts().len(), 2);
        assert_eq!(u.parts()[0], RationalInterval::of(0, 1, 3, 4));
    }

    #[test]
    fn explicit_map_rejects_values_outside_domain() {
        assert!(PLMap::explicit(
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(0, 1), rat(2, 1)]
        )
        .is_err());
    }

    #[test]
    fn out_of_domain_image_is_an_error() {
        let t = PLMap::tent();
        let i = RationalInterval::new(rat(-1, 2), rat(1, 2)).unwrap();
        assert_eq!(t.image(&i), Err(IntervalError::OutOfDomain));
    }
}
