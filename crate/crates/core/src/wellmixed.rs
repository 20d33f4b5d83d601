//! Separating families and the well-mixed condition.
//!
//! For gaps `δ_i`, `δ_j` and a hemisphere `ε`, the family `A(i,j,ε)` holds
//! the excursions of the upper arcs in `H_ε` that cut `δ_i` off from `δ_j`.
//! `H_ε` is a disk bounded by `l`, so an excursion separates exactly when
//! the two gaps lie in different components of `l` minus its endpoints. An
//! excursion with an endpoint inside either gap does not separate them.
//! Members are disjoint and all separate the same pair, hence are nested,
//! and are listed from the `δ_i` side towards `δ_j`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arcs::{Anchor, ArcSystem, Hemisphere};
use crate::diagram::BridgeDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyKey {
    pub i: usize,
    pub j: usize,
    pub hemisphere: Hemisphere,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub label: usize,
    /// Chord endpoints as positions in the point list of `l`.
    pub chord: (usize, usize),
    pub ends: (Anchor, Anchor),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingFamily {
    pub key: FamilyKey,
    pub members: Vec<Member>,
}

impl SeparatingFamily {
    pub fn labels(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.label).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairResult {
    pub i: usize,
    pub j: usize,
    pub hemisphere: Hemisphere,
    pub family_size: usize,
    pub satisfied: bool,
    pub missing: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellMixedReport {
    pub n: usize,
    pub results: Vec<PairResult>,
    pub overall: bool,
}

/// Position of a gap relative to a chord of a hemisphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    /// Within the positions strictly between the chord endpoints.
    Inside,
    /// Within the complementary arc of `l`.
    Outside,
    /// An endpoint of the chord lies inside the gap.
    Straddle,
}

/// Positions bounding each gap `δ_1..δ_n`: `(p_{2g}, p_{2g+1})`, with the
/// end of the list standing in for `p_1` on the gap through infinity.
pub(crate) fn gap_bounds(arcs: &ArcSystem) -> Vec<(usize, usize)> {
    let pos = arcs.puncture_positions();
    let n = arcs.n();
    (1..=n)
        .map(|g| {
            let lo = pos[2 * g - 1];
            let hi = if g == n {
                arcs.point_count()
            } else {
                pos[2 * g]
            };
            (lo, hi)
        })
        .collect()
}

pub(crate) fn gap_side(chord: (usize, usize), gap: (usize, usize)) -> Side {
    let (a, b) = chord;
    let (lo, hi) = gap;
    if a <= lo && hi <= b {
        Side::Inside
    } else if b <= lo || a >= hi {
        Side::Outside
    } else {
        Side::Straddle
    }
}

fn check_keys(n: usize, i: usize, j: usize) -> Result<()> {
    for g in [i, j] {
        if g == 0 || g > n {
            return Err(Error::GapOutOfRange { index: g, n });
        }
    }
    if i == j {
        return Err(Error::SameGap(i));
    }
    Ok(())
}

pub fn separating_family(
    d: &BridgeDiagram,
    i: usize,
    j: usize,
    hemisphere: Hemisphere,
) -> Result<SeparatingFamily> {
    let arcs = d.upper();
    check_keys(arcs.n(), i, j)?;
    let labels = arcs.point_labels();
    let anchors = arcs.anchors();
    let bounds = gap_bounds(arcs);
    Ok(family_from_parts(
        arcs, &labels, &anchors, &bounds, i, j, hemisphere,
    ))
}

fn family_from_parts(
    arcs: &ArcSystem,
    labels: &[usize],
    anchors: &[Anchor],
    bounds: &[(usize, usize)],
    i: usize,
    j: usize,
    hemisphere: Hemisphere,
) -> SeparatingFamily {
    let len = arcs.point_count();
    let (gi, gj) = (bounds[i - 1], bounds[j - 1]);
    let mut members: Vec<(usize, Member)> = arcs
        .chords(hemisphere)
        .into_iter()
        .filter_map(|chord| {
            let si = gap_side(chord, gi);
            let sj = gap_side(chord, gj);
            let separates = si != Side::Straddle && sj != Side::Straddle && si != sj;
            separates.then(|| {
                let (a, b) = chord;
                let span = b - a - 1;
                let near_side = if si == Side::Inside {
                    span
                } else {
                    len - span - 2
                };
                (
                    near_side,
                    Member {
                        label: labels[a],
                        chord,
                        ends: (anchors[a], anchors[b]),
                    },
                )
            })
        })
        .collect();
    members.sort_by_key(|(near, _)| *near);
    SeparatingFamily {
        key: FamilyKey { i, j, hemisphere },
        members: members.into_iter().map(|(_, m)| m).collect(),
    }
}

/// Whether every member lies on the `δ_i` side of the next one.
pub fn is_totally_ordered(d: &BridgeDiagram, family: &SeparatingFamily) -> bool {
    let bounds = gap_bounds(d.upper());
    let gi = bounds[family.key.i - 1];
    family.members.windows(2).all(|w| {
        let (inner, outer) = (w[0].chord, w[1].chord);
        let on_near_side = |pos: usize| {
            let inside = pos > outer.0 && pos < outer.1;
            match gap_side(outer, gi) {
                Side::Inside => inside,
                _ => !inside && pos != outer.0 && pos != outer.1,
            }
        };
        on_near_side(inner.0) && on_near_side(inner.1)
    })
}

/// Unordered label pairs carried by consecutive members.
///
/// Adjacency is consecutiveness within the family; excursions that do not
/// separate the two gaps are ignored even when they lie in between.
pub fn adjacent_label_pairs(labels: &[usize]) -> BTreeSet<(usize, usize)> {
    labels
        .windows(2)
        .filter(|w| w[0] != w[1])
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect()
}

/// Label pairs `{r, s}` of `1..=n` never adjacent in `labels`.
pub fn missing_pairs(n: usize, labels: &[usize]) -> Vec<(usize, usize)> {
    let seen = adjacent_label_pairs(labels);
    (1..=n)
        .flat_map(|r| (r + 1..=n).map(move |s| (r, s)))
        .filter(|p| !seen.contains(p))
        .collect()
}

pub fn check_pair(
    d: &BridgeDiagram,
    i: usize,
    j: usize,
    hemisphere: Hemisphere,
) -> Result<(bool, Vec<(usize, usize)>)> {
    let family = separating_family(d, i, j, hemisphere)?;
    let missing = missing_pairs(d.n(), &family.labels());
    Ok((missing.is_empty(), missing))
}

/// All families `i < j`, both hemispheres.
pub fn all_families(d: &BridgeDiagram) -> Vec<SeparatingFamily> {
    let arcs = d.upper();
    let n = arcs.n();
    let labels = arcs.point_labels();
    let anchors = arcs.anchors();
    let bounds = gap_bounds(arcs);
    let mut out = Vec::with_capacity(n * (n - 1));
    for i in 1..=n {
        for j in i + 1..=n {
            for h in Hemisphere::BOTH {
                out.push(family_from_parts(arcs, &labels, &anchors, &bounds, i, j, h));
            }
        }
    }
    out
}

pub fn check_all(d: &BridgeDiagram) -> WellMixedReport {
    let n = d.n();
    let results: Vec<PairResult> = all_families(d)
        .into_iter()
        .map(|family| {
            let missing = missing_pairs(n, &family.labels());
            PairResult {
                i: family.key.i,
                j: family.key.j,
                hemisphere: family.key.hemisphere,
                family_size: family.len(),
                satisfied: missing.is_empty(),
                missing,
            }
        })
        .collect();
    let overall = results.iter().all(|r| r.satisfied);
    WellMixedReport {
        n,
        results,
        overall,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::Point;
    use crate::diagram::build_bridge_diagram;
    use crate::plat::PlatWord;

    fn trivial(n: usize) -> BridgeDiagram {
        build_bridge_diagram(&PlatWord::from_signed(n, &[]).unwrap()).unwrap()
    }

    /// n = 3 with arcs p1 -H+- p6 (spanning δ1 and δ2), p2 -H+- p3 and
    /// p4 -H+- p5.
    fn long_cap() -> BridgeDiagram {
        let mut pts: Vec<Point> = (0..6).map(Point::puncture).collect();
        for (a, b) in [(0, 5), (1, 2), (3, 4)] {
            pts[a].set_partner(Hemisphere::Upper, b);
            pts[b].set_partner(Hemisphere::Upper, a);
        }
        let arcs = ArcSystem::from_parts(3, pts, vec![1, 2, 2, 3, 3, 1]).unwrap();
        BridgeDiagram::from_upper(arcs)
    }

    #[test]
    fn trivial_families_are_empty() {
        let d = trivial(3);
        for family in all_families(&d) {
            assert!(family.is_empty());
        }
        let report = check_all(&d);
        assert!(!report.overall);
        assert_eq!(report.results.len(), 6);
        assert_eq!(report.results[0].missing, vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn long_cap_membership() {
        let d = long_cap();
        let labels = |i, j| {
            separating_family(&d, i, j, Hemisphere::Upper)
                .unwrap()
                .labels()
        };
        // (p1,p6) has δ1 and δ2 inside, δ3 outside; the short caps over
        // δ1 and δ2 isolate their own gap
        assert_eq!(labels(1, 3), vec![2, 1]);
        assert_eq!(labels(2, 3), vec![3, 1]);
        assert_eq!(labels(1, 2), vec![2, 3]);
        assert!(separating_family(&d, 1, 2, Hemisphere::Lower)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn symmetric_in_gaps() {
        let d = long_cap();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let a = separating_family(&d, i, j, Hemisphere::Upper).unwrap();
            let mut b = separating_family(&d, j, i, Hemisphere::Upper).unwrap();
            b.members.reverse();
            assert_eq!(a.members, b.members);
            assert!(is_totally_ordered(&d, &a));
        }
    }

    #[test]
    fn rejects_equal_or_bad_gaps() {
        let d = trivial(3);
        assert!(matches!(
            separating_family(&d, 2, 2, Hemisphere::Upper),
            Err(Error::SameGap(2))
        ));
        assert!(separating_family(&d, 1, 4, Hemisphere::Upper).is_err());
    }

    #[test]
    fn adjacency_predicate() {
        assert_eq!(missing_pairs(3, &[]), vec![(1, 2), (1, 3), (2, 3)]);
        assert!(missing_pairs(3, &[1, 2, 3, 1, 3, 2]).is_empty());
        assert_eq!(missing_pairs(3, &[1, 1, 2, 2]), vec![(1, 3), (2, 3)]);
        assert_eq!(missing_pairs(2, &[2, 1]), Vec::<(usize, usize)>::new());
    }
}
