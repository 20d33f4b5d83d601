//! Certificates: well-mixed, hence Hempel distance greater than one, hence
//! locally minimal; plus a witness that the distance is at most two.
//!
//! The witness curve is the boundary of a regular neighbourhood of the
//! closure of a gap `δ_k`. It bounds a disk on each side as soon as some
//! upper arc and some lower arc both miss that closure.

use serde::{Deserialize, Serialize};

use crate::arcs::{Anchor, ArcSystem};
use crate::diagram::BridgeDiagram;
use crate::error::{Error, Result};
use crate::plat::Interval;
use crate::wellmixed::{check_all, PairResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// The well-mixed condition fails; nothing is claimed.
    NotCertified,
    /// Distance greater than one, but too few bridges for local minimality.
    DistanceGreaterThanOne,
    LocallyMinimal,
    /// Locally minimal, and a witness bounds the distance by two.
    LocallyMinimalDistanceTwo,
}

impl Status {
    pub fn describe(self) -> &'static str {
        match self {
            Status::NotCertified => "not certified: the well-mixed condition fails",
            Status::DistanceGreaterThanOne => {
                "Hempel distance > 1 (n < 3, local minimality not claimed)"
            }
            Status::LocallyMinimal => "Hempel distance > 1, locally minimal",
            Status::LocallyMinimalDistanceTwo => "Hempel distance exactly 2, locally minimal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance2Witness {
    /// The gap `δ_k` whose closure the curve surrounds.
    pub gap: usize,
    /// An upper arc disjoint from the closure of the gap.
    pub upper: usize,
    /// A lower arc disjoint from the closure of the gap.
    pub lower: usize,
    /// The two punctures inside the curve.
    pub encircled: [usize; 2],
    pub curve: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: Option<String>,
    pub n: usize,
    pub level: usize,
    pub well_mixed: bool,
    pub distance_gt_1: bool,
    pub locally_minimal: bool,
    pub witness: Option<Distance2Witness>,
    pub status: Status,
    /// Keys whose well-mixed condition fails.
    pub failures: Vec<PairResult>,
}

/// Punctures bounding the closure of `δ_k`: `p_{2k}` and `p_{2k+1}`.
fn gap_punctures(n: usize, k: usize) -> [usize; 2] {
    [2 * k, if k == n { 1 } else { 2 * k + 1 }]
}

/// Whether upper arc `r` misses the closure of `δ_k`.
fn upper_misses_gap(arcs: &ArcSystem, r: usize, k: usize) -> bool {
    let [a, b] = gap_punctures(arcs.n(), k);
    if arcs.label_at(a) == r || arcs.label_at(b) == r {
        return false;
    }
    let gap = Some(Interval(2 * k));
    !arcs
        .point_intervals()
        .iter()
        .zip(arcs.point_labels())
        .any(|(interval, label)| label == r && *interval == gap)
}

pub fn find_witness(d: &BridgeDiagram) -> Result<Option<Distance2Witness>> {
    let n = d.n();
    if n < 3 {
        return Err(Error::TooFewBridges { n, required: 3 });
    }
    for k in 1..=n {
        let Some(r) = (1..=n).find(|&r| upper_misses_gap(d.upper(), r, k)) else {
            continue;
        };
        let next = k % n + 1;
        let s = (1..=n)
            .find(|&s| s != k && s != next)
            .expect("n >= 3 leaves a lower arc off the gap");
        return Ok(Some(Distance2Witness {
            gap: k,
            upper: r,
            lower: s,
            encircled: gap_punctures(n, k),
            curve: format!("boundary of a regular neighbourhood of the closure of δ_{k}"),
        }));
    }
    Ok(None)
}

/// Re-checks a witness from normal-form data alone.
pub fn validate_witness(
    d: &BridgeDiagram,
    w: &Distance2Witness,
) -> std::result::Result<(), String> {
    let n = d.n();
    let punctures = 2 * n;
    if w.gap == 0 || w.gap > n || w.upper == 0 || w.upper > n || w.lower == 0 || w.lower > n {
        return Err("index out of range".into());
    }
    let inside: Vec<usize> = (1..=punctures)
        .filter(|p| w.encircled.contains(p))
        .collect();
    if inside.len() != 2 || punctures - inside.len() < 2 {
        return Err("curve is not essential".into());
    }
    let lo = 2 * w.gap;
    let hi = lo % punctures + 1;
    if w.encircled != [lo, hi] {
        return Err(format!("curve should surround p{lo} and p{hi}"));
    }
    let form = d.upper().to_normal_form();
    let arc = &form.arcs[w.upper - 1];
    if arc.endpoints.iter().any(|e| *e == lo || *e == hi) {
        return Err(format!("upper arc {} ends on the gap", w.upper));
    }
    let gap_interval = 2 * w.gap;
    for ex in &arc.excursions {
        for anchor in [ex.start, ex.end] {
            if let Anchor::Crossing { interval, .. } = anchor {
                if interval == gap_interval {
                    return Err(format!("upper arc {} crosses δ_{}", w.upper, w.gap));
                }
            }
        }
    }
    let (a, b) = (2 * w.lower - 1, 2 * w.lower);
    if [a, b].iter().any(|e| *e == lo || *e == hi) {
        return Err(format!("lower arc {} touches the gap", w.lower));
    }
    Ok(())
}

pub fn certify(d: &BridgeDiagram) -> Certificate {
    let n = d.n();
    let report = check_all(d);
    let well_mixed = report.overall;
    let distance_gt_1 = well_mixed;
    let locally_minimal = distance_gt_1 && n >= 3;
    let witness = if n >= 3 {
        find_witness(d).expect("n >= 3")
    } else {
        None
    };
    let status = match (distance_gt_1, locally_minimal, &witness) {
        (false, _, _) => Status::NotCertified,
        (true, false, _) => Status::DistanceGreaterThanOne,
        (true, true, None) => Status::LocallyMinimal,
        (true, true, Some(_)) => Status::LocallyMinimalDistanceTwo,
    };
    Certificate {
        name: d.plat().name().map(str::to_owned),
        n,
        level: d.level(),
        well_mixed,
        distance_gt_1,
        locally_minimal,
        witness,
        status,
        failures: report
            .results
            .into_iter()
            .filter(|r| !r.satisfied)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_bridge_diagram;
    use crate::plat::PlatWord;

    fn diagram(n: usize, word: &[i64]) -> BridgeDiagram {
        build_bridge_diagram(&PlatWord::from_signed(n, word).unwrap()).unwrap()
    }

    #[test]
    fn trivial_diagram_has_first_free_arc_as_witness() {
        let d = diagram(3, &[]);
        let w = find_witness(&d).unwrap().unwrap();
        // caps 1 and 2 end at p2 and p3, so cap 3 is the first to miss δ_1
        assert_eq!((w.gap, w.upper, w.lower), (1, 3, 3));
        assert_eq!(w.encircled, [2, 3]);
        validate_witness(&d, &w).unwrap();
    }

    #[test]
    fn trivial_diagram_is_not_certified() {
        let cert = certify(&diagram(3, &[]));
        assert!(!cert.well_mixed);
        assert!(!cert.distance_gt_1);
        assert!(!cert.locally_minimal);
        assert_eq!(cert.status, Status::NotCertified);
        assert_eq!(cert.failures.len(), 6);
    }

    #[test]
    fn witness_needs_three_bridges() {
        assert!(matches!(
            find_witness(&diagram(2, &[])),
            Err(Error::TooFewBridges { n: 2, required: 3 })
        ));
        let cert = certify(&diagram(2, &[]));
        assert!(cert.witness.is_none());
    }

    #[test]
    fn gap_through_infinity() {
        let d = diagram(3, &[]);
        let w = Distance2Witness {
            gap: 3,
            upper: 2,
            lower: 2,
            encircled: [6, 1],
            curve: String::new(),
        };
        validate_witness(&d, &w).unwrap();
        let bad = Distance2Witness {
            upper: 1,
            ..w.clone()
        };
        assert!(validate_witness(&d, &bad).is_err());
        let bad = Distance2Witness { lower: 1, ..w };
        assert!(validate_witness(&d, &bad).is_err());
    }

    #[test]
    fn no_witness_when_every_arc_meets_every_gap() {
        let d = diagram(3, &[-4, 2, -1, 3]);
        assert_eq!(find_witness(&d).unwrap(), None);
        for gap in 1..=3 {
            for upper in 1..=3 {
                for lower in 1..=3 {
                    let w = Distance2Witness {
                        gap,
                        upper,
                        lower,
                        encircled: gap_punctures(3, gap),
                        curve: String::new(),
                    };
                    assert!(validate_witness(&d, &w).is_err());
                }
            }
        }
    }
}
