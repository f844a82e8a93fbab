//! Exact property decisions for vertex shifts, with graph certificates.

use crate::types::{Evidence, PropertyId, Verdict};

use super::{SftError, SftGraph, Sidedness};

/// Decides any of the fourteen properties on an essential graph. Always
/// returns `PROVED` or `REFUTED` with a graph certificate.
///
/// One-sided table: TT/ST/VST are strong connectivity (the shift map is
/// open); M is being a single simple cycle; TM/LEO/SPT and the ET/SET chain
/// are primitivity; WM is strong connectivity of the essentialized tensor
/// square; EXACT (and FULLY_EXACT, the map being open) is diagonal
/// reachability in the raw pair graph; DENSE_PERIODIC is every edge lying
/// inside one strongly connected component. Two-sided presentations are
/// homeomorphisms: ST and VST collapse to the M verdict, and a nontrivial
/// injective system is never exact, which refutes the whole exactness chain.
pub fn decide_property(g: &SftGraph, p: PropertyId) -> Result<Verdict, SftError> {
    if g.vertex_count() == 0 {
        return Err(SftError::EmptySystem);
    }
    if !g.is_essential() {
        return Err(SftError::Invalid(
            "decide_property requires an essential graph".into(),
        ));
    }
    let two_sided = matches!(g.sided(), Sidedness::Two);
    let nontrivial = !g.is_trivial();

    if two_sided && nontrivial {
        match p {
            PropertyId::St | PropertyId::Vst => {
                let m = decide_minimal(g);
                return Ok(retag(
                    m,
                    "on an invertible system ST, VST and M coincide",
                ));
            }
            PropertyId::Exact | PropertyId::FullyExact => {
                return Ok(Verdict::refuted(Evidence::GraphCertificate {
                    summary: "invertible and nontrivial, hence not exact".into(),
                    detail: vec![
                        "an exact system with an injective map has a single point".into(),
                        format!("this presentation has {} vertices", g.vertex_count()),
                    ],
                }));
            }
            PropertyId::Et | PropertyId::Set | PropertyId::Spt | PropertyId::Leo => {
                return Ok(Verdict::refuted(Evidence::Derived {
                    chain: vec![
                        "invertible and nontrivial, hence not exact".into(),
                        "not exact refutes ET; not ET refutes SET; not SET refutes SPT and LEO"
                            .into(),
                    ],
                }));
            }
            _ => {}
        }
    }

    let v = match p {
        PropertyId::Tt => decide_strongly_connected(g, "TT"),
        PropertyId::St => decide_strongly_connected(g, "ST"),
        PropertyId::Vst => decide_strongly_connected(g, "VST"),
        PropertyId::M => decide_minimal(g),
        PropertyId::Tm => decide_primitive(g, "mixing needs a primitive graph"),
        PropertyId::Leo => decide_primitive(g, "locally eventually onto needs a primitive graph"),
        PropertyId::Spt => decide_primitive(g, "strong product transitivity needs a primitive graph"),
        PropertyId::Wm => decide_weak_mixing(g),
        PropertyId::Et | PropertyId::Set => decide_exact_transitive_chain(g, p),
        PropertyId::Exact | PropertyId::FullyExact => decide_exact(g, p),
        PropertyId::DensePeriodic => decide_dense_periodic(g),
        PropertyId::IterAlmostOpen => Verdict::proved(Evidence::GraphCertificate {
            summary: "shift maps of vertex shifts are open".into(),
            detail: vec![
                "the image of a cylinder is a finite union of cylinders".into(),
            ],
        }),
    };
    Ok(v)
}

fn retag(mut v: Verdict, note: &str) -> Verdict {
    let extra = format!("{note}; {}", v.evidence.summary());
    v.evidence = Evidence::GraphCertificate {
        summary: extra,
        detail: vec![],
    };
    v
}

fn decide_strongly_connected(g: &SftGraph, label: &str) -> Verdict {
    if g.is_strongly_connected() {
        Verdict::proved(Evidence::GraphCertificate {
            summary: format!("strongly connected ({} vertices)", g.vertex_count()),
            detail: vec![format!("{label} holds for strongly connected vertex shifts")],
        })
    } else {
        let (i, j) = unreachable_pair(g).expect("not strongly connected");
        Verdict::refuted(Evidence::RefutingPair {
            u: g.alphabet().symbol(i).to_string(),
            v: g.alphabet().symbol(j).to_string(),
            reason: "no connecting path".into(),
        })
    }
}

fn decide_minimal(g: &SftGraph) -> Verdict {
    if g.is_single_cycle() {
        Verdict::proved(Evidence::GraphCertificate {
            summary: format!("single cycle of length {}", g.vertex_count()),
            detail: vec!["the subshift is one periodic orbit".into()],
        })
    } else if !g.is_strongly_connected() {
        let (i, j) = unreachable_pair(g).expect("not strongly connected");
        Verdict::refuted(Evidence::RefutingPair {
            u: g.alphabet().symbol(i).to_string(),
            v: g.alphabet().symbol(j).to_string(),
            reason: "not even transitive: no connecting path".into(),
        })
    } else {
        let v = (0..g.vertex_count())
            .find(|&v| g.successors(v).count() >= 2)
            .expect("strongly connected non-cycle has a branching vertex");
        Verdict::refuted(Evidence::GraphCertificate {
            summary: format!(
                "vertex {} branches, so a proper subshift avoids one branch",
                g.alphabet().symbol(v)
            ),
            detail: vec!["a minimal vertex shift is a single cycle".into()],
        })
    }
}

fn decide_primitive(g: &SftGraph, why: &str) -> Verdict {
    if g.is_primitive() {
        Verdict::proved(Evidence::GraphCertificate {
            summary: "primitive (strongly connected, period 1)".into(),
            detail: vec![],
        })
    } else if !g.is_strongly_connected() {
        let (i, j) = unreachable_pair(g).expect("not strongly connected");
        Verdict::refuted(Evidence::RefutingPair {
            u: g.alphabet().symbol(i).to_string(),
            v: g.alphabet().symbol(j).to_string(),
            reason: format!("{why}: graph not strongly connected"),
        })
    } else {
        let d = g.period().expect("strongly connected");
        Verdict::refuted(Evidence::GraphCertificate {
            summary: format!("period {d} > 1"),
            detail: vec![why.into()],
        })
    }
}

fn decide_weak_mixing(g: &SftGraph) -> Verdict {
    let prod = g.product(g).expect("tensor square of an essential graph");
    if prod.is_strongly_connected() {
        Verdict::proved(Evidence::GraphCertificate {
            summary: "tensor square strongly connected".into(),
            detail: vec![format!("product graph has {} vertices", prod.vertex_count())],
        })
    } else {
        let comps = prod.sccs().len();
        Verdict::refuted(Evidence::GraphCertificate {
            summary: format!("tensor square splits into {comps} components"),
            detail: vec!["the product system is not transitive".into()],
        })
    }
}

fn decide_exact_transitive_chain(g: &SftGraph, p: PropertyId) -> Verdict {
    if g.is_primitive() {
        Verdict {
            evidence: Evidence::Derived {
                chain: vec![
                    "primitive".into(),
                    "primitive graphs are locally eventually onto".into(),
                    "LEO gives SPT, SPT gives SET, SET gives ET".into(),
                ],
            },
            ..Verdict::proved(Evidence::note(""))
        }
    } else {
        let first = if p == PropertyId::Set {
            "not ET refutes SET"
        } else {
            "not weak mixing refutes ET"
        };
        Verdict {
            evidence: Evidence::Derived {
                chain: vec![
                    "not primitive, so the tensor square is not transitive".into(),
                    "the system is not weak mixing".into(),
                    first.into(),
                ],
            },
            ..Verdict::refuted(Evidence::note(""))
        }
    }
}

/// EXACT holds iff from every ordered vertex pair the raw pair graph reaches
/// the diagonal: two legal equal-length words can then be continued to a
/// common point.
fn decide_exact(g: &SftGraph, p: PropertyId) -> Verdict {
    let n = g.vertex_count();
    // backward reachability from the diagonal in the raw tensor square
    let mut hits_diag = vec![false; n * n];
    for d in 0..n {
        hits_diag[d * n + d] = true;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if hits_diag[i * n + j] {
                    continue;
                }
                let reach = (0..n).any(|i2| {
                    g.has_edge(i, i2)
                        && (0..n).any(|j2| g.has_edge(j, j2) && hits_diag[i2 * n + j2])
                });
                if reach {
                    hits_diag[i * n + j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let bad = (0..n * n).find(|&k| !hits_diag[k]);
    match bad {
        None => {
            let label = if p == PropertyId::FullyExact {
                "every vertex pair reaches the diagonal; the shift is open, so intersections have interior"
            } else {
                "every vertex pair reaches the diagonal in the pair graph"
            };
            Verdict::proved(Evidence::GraphCertificate {
                summary: label.into(),
                detail: vec![],
            })
        }
        Some(k) => {
            let (i, j) = (k / n, k % n);
            Verdict::refuted(Evidence::RefutingPair {
                u: g.alphabet().symbol(i).to_string(),
                v: g.alphabet().symbol(j).to_string(),
                reason: "forward images of these cylinders never meet".into(),
            })
        }
    }
}

/// Dense periodic sets hold iff every edge stays inside one strongly
/// connected component; every legal word then closes up into a cycle.
fn decide_dense_periodic(g: &SftGraph) -> Verdict {
    let sccs = g.sccs();
    let n = g.vertex_count();
    let mut comp = vec![0usize; n];
    for (c, scc) in sccs.iter().enumerate() {
        for &v in scc {
            comp[v] = c;
        }
    }
    let crossing = g.edges().into_iter().find(|&(i, j)| comp[i] != comp[j]);
    match crossing {
        None => Verdict::proved(Evidence::GraphCertificate {
            summary: "every edge lies inside a strongly connected component".into(),
            detail: vec!["every legal word extends to a periodic point".into()],
        }),
        Some((i, j)) => Verdict::refuted(Evidence::GraphCertificate {
            summary: format!(
                "edge {}->{} crosses components; the cylinder of that word contains no periodic set",
                g.alphabet().symbol(i),
                g.alphabet().symbol(j)
            ),
            detail: vec![],
        }),
    }
}

fn unreachable_pair(g: &SftGraph) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    for i in 0..n {
        let mut reach = vec![false; n];
        let mut stack = vec![i];
        while let Some(v) = stack.pop() {
            for w in g.successors(v) {
                if !reach[w] {
                    reach[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(j) = (0..n).find(|&j| !reach[j]) {
            return Some((i, j));
        }
    }
    None
}
