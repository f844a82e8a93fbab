//! Grid-based bounded property checks for interval maps, backward orbits,
//! and Markov-partition extraction to vertex shifts.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::sft::{Sidedness, SftGraph};
use crate::types::{Alphabet, Evidence, PropertyId, Scale, Verdict};

use super::{IntervalError, IntervalUnion, PLMap, Rat, RationalInterval};

const PART_CAP: usize = 100_000;
const ORBIT_POINT_CAP: usize = 100_000;
const MARKOV_POINT_CAP: usize = 64;

/// Cover of the domain by closed cells of length eps. Exact rational
/// endpoints; the last cell is clipped to the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridScale {
    pub eps: Rat,
}

impl GridScale {
    pub fn new(eps: Rat) -> Result<Self, IntervalError> {
        if eps <= Rat::zero() {
            return Err(IntervalError::Invalid("grid eps must be positive".into()));
        }
        Ok(GridScale { eps })
    }

    pub fn cells(&self, domain: &RationalInterval) -> Vec<RationalInterval> {
        let mut cells = Vec::new();
        let mut lo = domain.lo.clone();
        while lo < domain.hi {
            let hi = (&lo + &self.eps).min(domain.hi.clone());
            cells.push(RationalInterval {
                lo: lo.clone(),
                hi: hi.clone(),
            });
            lo = hi;
        }
        if cells.is_empty() {
            cells.push(domain.clone());
        }
        cells
    }
}

fn eps_dense(u: &IntervalUnion, cells: &[RationalInterval]) -> bool {
    cells.iter().all(|c| u.meets(c))
}

/// Properties the grid checker can test on interval maps.
pub const INTERVAL_PROPS: [PropertyId; 6] = [
    PropertyId::Tt,
    PropertyId::Tm,
    PropertyId::Leo,
    PropertyId::Exact,
    PropertyId::FullyExact,
    PropertyId::Et,
];

/// Bounded grid check. Cells of the eps-cover stand in for opene sets; the
/// condition of the property is demanded for every cell (or cell pair)
/// within `horizon` iterates. Transitivity is additionally refuted outright
/// when forward iteration of some cell stabilizes on a proper invariant
/// union with interior.
pub fn check_interval_property(
    f: &PLMap,
    p: PropertyId,
    grid: &GridScale,
    horizon: usize,
) -> Result<Verdict, IntervalError> {
    if !INTERVAL_PROPS.contains(&p) {
        return Err(IntervalError::Invalid(format!(
            "no grid checker for {p}"
        )));
    }
    let domain = f.domain();
    let cells = grid.cells(&domain);
    let scale = Scale::Grid {
        eps: grid.eps.to_string(),
        horizon: horizon as u64,
    };

    if p == PropertyId::Tt {
        if let Some(unions) = invariant_union_search(f, &cells, horizon)? {
            return Ok(Verdict::refuted(Evidence::InvariantSet {
                sets: unions.iter().map(IntervalUnion::describe).collect(),
            }));
        }
    }

    // iterate every cell once; pair properties reuse the table
    let mut iterates: Vec<Vec<IntervalUnion>> = Vec::with_capacity(cells.len());
    for c in &cells {
        iterates.push(f.iterate_images(&IntervalUnion::single(c.clone()), horizon, PART_CAP)?);
    }

    match p {
        PropertyId::Tt => {
            for (ci, c) in cells.iter().enumerate() {
                let mut acc = IntervalUnion::empty();
                let mut ok = false;
                for img in &iterates[ci] {
                    acc = acc.union(img);
                    if eps_dense(&acc, &cells) {
                        ok = true;
                        break;
                    }
                }
                if !ok {
                    return Ok(Verdict::no_witness(
                        scale,
                        Evidence::FailingObligation {
                            summary: format!(
                                "iterates of {} never become eps-dense within {horizon} steps",
                                c.describe()
                            ),
                            words: vec![c.describe()],
                        },
                    ));
                }
            }
            Ok(Verdict::witness(
                scale,
                Evidence::note(format!(
                    "cumulative images of every cell are eps-dense within {horizon} steps"
                )),
            ))
        }
        PropertyId::Tm => {
            let mut worst = 0usize;
            for (ci, c) in cells.iter().enumerate() {
                let dense: Vec<bool> = iterates[ci]
                    .iter()
                    .map(|img| eps_dense(img, &cells))
                    .collect();
                let start = (0..horizon).find(|&n| dense[n..].iter().all(|&d| d));
                match start {
                    None => {
                        return Ok(Verdict::no_witness(
                            scale,
                            Evidence::FailingObligation {
                                summary: format!(
                                    "no tail of eps-dense images for {} within {horizon} steps",
                                    c.describe()
                                ),
                                words: vec![c.describe()],
                            },
                        ))
                    }
                    Some(n) => worst = worst.max(n + 1),
                }
            }
            Ok(Verdict::witness(
                scale,
                Evidence::note(format!(
                    "every cell's images stay eps-dense from step {worst} on"
                )),
            ))
        }
        PropertyId::Leo => {
            let mut worst = 0usize;
            for (ci, c) in cells.iter().enumerate() {
                let hit = iterates[ci].iter().position(|img| img.covers(&domain));
                match hit {
                    None => {
                        return Ok(Verdict::no_witness(
                            scale,
                            Evidence::FailingObligation {
                                summary: format!(
                                    "no iterate of {} covers the domain within {horizon} steps",
                                    c.describe()
                                ),
                                words: vec![c.describe()],
                            },
                        ))
                    }
                    Some(n) => worst = worst.max(n + 1),
                }
            }
            Ok(Verdict::witness(
                scale,
                Evidence::note(format!(
                    "every cell covers the whole domain by step {worst}"
                )),
            ))
        }
        PropertyId::Exact | PropertyId::FullyExact => {
            let need_interior = p == PropertyId::FullyExact;
            for i in 0..cells.len() {
                for j in i..cells.len() {
                    let hit = (0..horizon).find(|&n| {
                        let meet = iterates[i][n].intersect(&iterates[j][n]);
                        if need_interior {
                            meet.has_interior()
                        } else {
                            !meet.is_empty()
                        }
                    });
                    if hit.is_none() {
                        return Ok(Verdict::no_witness(
                            scale,
                            Evidence::RefutingPair {
                                u: cells[i].describe(),
                                v: cells[j].describe(),
                                reason: if need_interior {
                                    format!(
                                        "image intersections have empty interior through step {horizon}"
                                    )
                                } else {
                                    format!("images stay disjoint through step {horizon}")
                                },
                            },
                        ));
                    }
                }
            }
            Ok(Verdict::witness(
                scale,
                Evidence::note(if need_interior {
                    "image intersections of every cell pair gain interior".to_string()
                } else {
                    "images of every cell pair meet".to_string()
                }),
            ))
        }
        PropertyId::Et => {
            for i in 0..cells.len() {
                for j in i..cells.len() {
                    let mut acc = IntervalUnion::empty();
                    let mut ok = false;
                    for n in 0..horizon {
                        acc = acc.union(&iterates[i][n].intersect(&iterates[j][n]));
                        if eps_dense(&acc, &cells) {
                            ok = true;
                            break;
                        }
                    }
                    if !ok {
                        return Ok(Verdict::no_witness(
                            scale,
                            Evidence::RefutingPair {
                                u: cells[i].describe(),
                                v: cells[j].describe(),
                                reason: format!(
                                    "accumulated image intersections are not eps-dense within {horizon} steps"
                                ),
                            },
                        ));
                    }
                }
            }
            Ok(Verdict::witness(
                scale,
                Evidence::note(
                    "accumulated image intersections of every cell pair are eps-dense"
                        .to_string(),
                ),
            ))
        }
        _ => unreachable!(),
    }
}

/// Forward closures of grid cells that stabilize on a proper union: each is
/// closed, has interior and is forward invariant, so transitivity fails.
fn invariant_union_search(
    f: &PLMap,
    cells: &[RationalInterval],
    horizon: usize,
) -> Result<Option<Vec<IntervalUnion>>, IntervalError> {
    let domain = f.domain();
    let mut found: Vec<IntervalUnion> = Vec::new();
    for c in cells {
        let mut u = IntervalUnion::single(c.clone());
        for _ in 0..horizon.max(64) {
            let next = u.union(&f.image_union(&u)?);
            if next.parts().len() > PART_CAP {
                return Err(IntervalError::CapExceeded(
                    "invariant union search".into(),
                ));
            }
            if next == u {
                if !u.covers(&domain) && !found.contains(&u) {
                    found.push(u.clone());
                }
                break;
            }
            u = next;
        }
        if found.len() >= 2 {
            break;
        }
    }
    Ok(if found.is_empty() { None } else { Some(found) })
}

/// Iterated exact preimages of a point.
#[derive(Debug, Clone)]
pub struct BackwardOrbit {
    pub points: Vec<Rat>,
    /// no preimage of any collected point falls outside the set
    pub stabilized: bool,
    /// coarsest grid length at which the set meets every cell (largest gap)
    pub density_eps: Rat,
}

pub fn backward_orbit(
    f: &PLMap,
    x: &Rat,
    depth: usize,
) -> Result<BackwardOrbit, IntervalError> {
    let domain = f.domain();
    if !domain.contains(x) {
        return Err(IntervalError::OutOfDomain);
    }
    let mut all: BTreeSet<Rat> = BTreeSet::new();
    all.insert(x.clone());
    let mut frontier: Vec<Rat> = vec![x.clone()];
    let mut stabilized = false;
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for q in f.preimage_point(p) {
                if all.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        if all.len() > ORBIT_POINT_CAP {
            return Err(IntervalError::CapExceeded("backward orbit".into()));
        }
        if next.is_empty() {
            stabilized = true;
            break;
        }
        frontier = next;
    }
    // confirm stabilization: every preimage of every point is collected
    if stabilized {
        stabilized = all
            .iter()
            .all(|p| f.preimage_point(p).iter().all(|q| all.contains(q)));
    }
    let pts: Vec<Rat> = all.into_iter().collect();
    let mut gap = (&pts[0] - &domain.lo).max(&domain.hi - pts.last().unwrap());
    for w in pts.windows(2) {
        gap = gap.max(&w[1] - &w[0]);
    }
    Ok(BackwardOrbit {
        points: pts,
        stabilized,
        density_eps: gap,
    })
}

/// Non-recurrent density check around a fixed point: every grid cell must
/// contain a backward-orbit point of `q` other than `q` itself. Such points
/// are eventually fixed, hence non-recurrent.
pub fn eventually_fixed_dense(
    f: &PLMap,
    q: &Rat,
    grid: &GridScale,
    depth: usize,
) -> Result<Verdict, IntervalError> {
    if f.eval(q)? != *q {
        return Err(IntervalError::Invalid(format!("{q} is not a fixed point")));
    }
    let orbit = backward_orbit(f, q, depth)?;
    let cells = grid.cells(&f.domain());
    let scale = Scale::Grid {
        eps: grid.eps.to_string(),
        horizon: depth as u64,
    };
    let missing = cells.iter().find(|c| {
        !orbit
            .points
            .iter()
            .any(|p| p != q && c.contains(p))
    });
    match missing {
        None => Ok(Verdict::witness(
            scale,
            Evidence::note(format!(
                "every cell holds a point that falls onto the fixed point {q}"
            )),
        )),
        Some(c) => Ok(Verdict::no_witness(
            scale,
            Evidence::FailingObligation {
                summary: format!(
                    "no eventually-fixed point of {q} in {} at depth {depth}",
                    c.describe()
                ),
                words: vec![c.describe()],
            },
        )),
    }
}

/// Markov extraction: closes the breakpoint set under the map (bounded),
/// then reads off the cell-covering relation as a vertex shift. `None` when
/// the orbit of the breakpoints does not close up, or when some cell is
/// covered by no image — the vertex shift would then describe only part of
/// the interval dynamics.
pub fn markov_extract(f: &PLMap) -> Option<SftGraph> {
    let PLMap::Explicit { xs, .. } = f else {
        return None;
    };
    let mut points: BTreeSet<Rat> = xs.iter().cloned().collect();
    loop {
        let mut new_points = Vec::new();
        for p in &points {
            let v = f.eval(p).expect("breakpoints are in the domain");
            if !points.contains(&v) {
                new_points.push(v);
            }
        }
        if new_points.is_empty() {
            break;
        }
        points.extend(new_points);
        if points.len() > MARKOV_POINT_CAP {
            return None;
        }
    }
    let pts: Vec<Rat> = points.into_iter().collect();
    let cells: Vec<RationalInterval> = pts
        .windows(2)
        .map(|w| RationalInterval {
            lo: w[0].clone(),
            hi: w[1].clone(),
        })
        .collect();
    let names = Alphabet::new((0..cells.len()).map(|i| format!("I{i}"))).ok()?;
    let mut edges = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        let a = f.eval(&c.lo).unwrap();
        let b = f.eval(&c.hi).unwrap();
        let img = RationalInterval {
            lo: a.clone().min(b.clone()),
            hi: a.max(b),
        };
        for (j, d) in cells.iter().enumerate() {
            if img.contains_interval(d) {
                edges.push((i, j));
            }
        }
    }
    let g = SftGraph::new(names, &edges, Sidedness::One).ok()?;
    if g.is_essential() {
        Some(g)
    } else {
        None
    }
}

/// Smallest absolute slope over all pieces; `None` for the ladder map, whose
/// slopes are computed piecewise but exceed one everywhere.
pub fn min_abs_slope(f: &PLMap) -> Option<Rat> {
    match f {
        PLMap::Explicit { xs, ys } => {
            let mut best: Option<Rat> = None;
            for k in 0..xs.len() - 1 {
                let s = ((&ys[k + 1] - &ys[k]) / (&xs[k + 1] - &xs[k])).abs();
                best = Some(match best {
                    None => s,
                    Some(b) => b.min(s),
                });
            }
            best
        }
        PLMap::Ladder => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;
    use crate::types::VerdictStatus;

    fn grid(p: i64, q: i64) -> GridScale {
        GridScale::new(rat(p, q)).unwrap()
    }

    #[test]
    fn tent_is_leo_on_a_fine_grid() {
        let v = check_interval_property(&PLMap::tent(), PropertyId::Leo, &grid(1, 64), 10)
            .unwrap();
        assert_eq!(v.status, VerdictStatus::Witness);
    }

    #[test]
    fn double_tent_is_exact_not_fully_not_transitive() {
        let f = PLMap::double_tent();
        let g = grid(1, 16);
        let v = check_interval_property(&f, PropertyId::Exact, &g, 12).unwrap();
        assert_eq!(v.status, VerdictStatus::Witness);
        let v = check_interval_property(&f, PropertyId::FullyExact, &g, 12).unwrap();
        assert_eq!(v.status, VerdictStatus::NoWitness);
        let v = check_interval_property(&f, PropertyId::Tt, &g, 12).unwrap();
        assert_eq!(v.status, VerdictStatus::Refuted);
        if let Evidence::InvariantSet { sets } = &v.evidence {
            assert!(sets.iter().any(|s| s.contains("[-1, 0]")));
            assert!(sets.iter().any(|s| s.contains("[0, 1]")));
        } else {
            panic!("expected invariant-set evidence");
        }
    }

    #[test]
    fn skew_variant_is_fully_exact_but_not_transitive() {
        let f = PLMap::double_tent_skew();
        let g = grid(1, 16);
        let v = check_interval_property(&f, PropertyId::FullyExact, &g, 12).unwrap();
        assert_eq!(v.status, VerdictStatus::Witness);
        let v = check_interval_property(&f, PropertyId::Tt, &g, 12).unwrap();
        assert_eq!(v.status, VerdictStatus::Refuted);
    }

    #[test]
    fn ladder_is_mixing_and_exact_transitive_at_scale() {
        let f = PLMap::Ladder;
        let g = grid(1, 64);
        let v = check_interval_property(&f, PropertyId::Tm, &g, 40).unwrap();
        assert_eq!(v.status, VerdictStatus::Witness);
        let v = check_interval_property(&f, PropertyId::Et, &g, 40).unwrap();
        assert_eq!(v.status, VerdictStatus::Witness);
        // images never reach the endpoints, so exact covering fails
        let v = check_interval_property(&f, PropertyId::Leo, &g, 40).unwrap();
        assert_eq!(v.status, VerdictStatus::NoWitness);
    }

    #[test]
    fn ladder_backward_orbit_of_zero_is_trivial() {
        let orbit = backward_orbit(&PLMap::Ladder, &rat(0, 1), 10).unwrap();
        assert_eq!(orbit.points, vec![rat(0, 1)]);
        assert!(orbit.stabilized);
    }

    #[test]
    fn tent_backward_orbit_of_half_becomes_dense() {
        let orbit = backward_orbit(&PLMap::tent(), &rat(1, 2), 8).unwrap();
        assert!(!orbit.stabilized);
        assert!(orbit.points.len() > 100);
        assert!(orbit.density_eps <= rat(1, 32));
    }

    #[test]
    fn eventually_fixed_points_dense_for_tent_not_ladder() {
        let v = eventually_fixed_dense(&PLMap::tent(), &rat(0, 1), &grid(1, 32), 8).unwrap();
        assert_eq!(v.status, VerdictStatus::Witness);
        let v = eventually_fixed_dense(&PLMap::Ladder, &rat(0, 1), &grid(1, 32), 8).unwrap();
        assert_eq!(v.status, VerdictStatus::NoWitness);
    }

    #[test]
    fn double_tent_restricted_right_half_has_dense_prefixed_points() {
        // tent-like dynamics on [0,1]
        let f = PLMap::explicit(
            vec![rat(0, 1), rat(1, 2), rat(1, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
        )
        .unwrap();
        let v = eventually_fixed_dense(&f, &rat(0, 1), &grid(1, 16), 8).unwrap();
        assert_eq!(v.status, VerdictStatus::Witness);
    }

    #[test]
    fn markov_extraction_of_corpus_maps() {
        let g = markov_extract(&PLMap::tent()).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(g.is_primitive());

        let g = markov_extract(&PLMap::double_tent()).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.sccs().len(), 2);
        assert!(!g.is_strongly_connected());

        let g = markov_extract(&PLMap::double_tent_skew()).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(!g.is_strongly_connected());
    }

    #[test]
    fn non_markov_breakpoint_orbit_is_rejected() {
        // peak value 1/3 wanders under the contracting left branch
        let f = PLMap::explicit(
            vec![rat(0, 1), rat(1, 2), rat(1, 1)],
            vec![rat(0, 1), rat(1, 3), rat(0, 1)],
        )
        .unwrap();
        assert!(markov_extract(&f).is_none());
    }

    #[test]
    fn ladder_not_markov() {
        assert!(markov_extract(&PLMap::Ladder).is_none());
    }
}
