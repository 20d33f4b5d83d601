//! Systems of disjoint arcs on the `2n`-punctured sphere, in normal
//! coordinates relative to the reference circle `l`.
//!
//! Internally a system is a chord diagram: the punctures and the
//! `l`-crossings listed in the cyclic order of `l` (starting at `p_1`), and
//! for each hemisphere a non-crossing matching among them. A crossing has
//! exactly one partner in each hemisphere; a puncture has exactly one
//! partner overall. Every arc is recovered by walking the chords from one
//! endpoint puncture to the other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plat::{Interval, SphereModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hemisphere {
    #[serde(rename = "+")]
    Upper,
    #[serde(rename = "-")]
    Lower,
}

impl Hemisphere {
    pub fn opposite(self) -> Hemisphere {
        match self {
            Hemisphere::Upper => Hemisphere::Lower,
            Hemisphere::Lower => Hemisphere::Upper,
        }
    }

    pub const BOTH: [Hemisphere; 2] = [Hemisphere::Upper, Hemisphere::Lower];

    pub fn symbol(self) -> char {
        match self {
            Hemisphere::Upper => '+',
            Hemisphere::Lower => '-',
        }
    }
}

pub(crate) const NONE: u32 = u32::MAX;

/// A point of `l` that some arc touches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Point {
    /// 0-based puncture number, or `NONE` for an `l`-crossing.
    pub puncture: u32,
    pub upper: u32,
    pub lower: u32,
}

impl Point {
    pub fn crossing() -> Self {
        Point {
            puncture: NONE,
            upper: NONE,
            lower: NONE,
        }
    }

    pub fn puncture(k: usize) -> Self {
        Point {
            puncture: k as u32,
            upper: NONE,
            lower: NONE,
        }
    }

    pub fn is_puncture(&self) -> bool {
        self.puncture != NONE
    }

    pub fn partner(&self, h: Hemisphere) -> Option<usize> {
        let p = match h {
            Hemisphere::Upper => self.upper,
            Hemisphere::Lower => self.lower,
        };
        (p != NONE).then_some(p as usize)
    }

    pub fn set_partner(&mut self, h: Hemisphere, to: usize) {
        match h {
            Hemisphere::Upper => self.upper = to as u32,
            Hemisphere::Lower => self.lower = to as u32,
        }
    }

    pub fn clear_partner(&mut self, h: Hemisphere) {
        match h {
            Hemisphere::Upper => self.upper = NONE,
            Hemisphere::Lower => self.lower = NONE,
        }
    }
}

/// Where an excursion starts or ends on `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Anchor {
    Puncture { puncture: usize },
    Crossing { interval: usize, rank: usize },
}

/// One component of an arc minus `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Excursion {
    pub hemisphere: Hemisphere,
    pub start: Anchor,
    pub end: Anchor,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcRecord {
    pub label: usize,
    pub endpoints: [usize; 2],
    pub excursions: Vec<Excursion>,
}

/// Canonical serialized form of an [`ArcSystem`]: arcs sorted by label,
/// each traversed from its smaller endpoint puncture.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub n: usize,
    /// Crossing count of each interval `1..=2n`.
    pub crossings: Vec<usize>,
    pub arcs: Vec<ArcRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArcSystem {
    n: usize,
    pub(crate) points: Vec<Point>,
    /// Arc label (1-based) of the arc ending at each puncture.
    pub(crate) labels: Vec<u32>,
}

impl ArcSystem {
    /// The `n` caps `(p_{2r-1}, p_{2r})` in the upper hemisphere, labelled `r`.
    pub fn canonical_top_arcs(n: usize) -> Result<Self> {
        SphereModel::new(n)?;
        let mut points = Vec::with_capacity(2 * n);
        let mut labels = Vec::with_capacity(2 * n);
        for r in 0..n {
            let mut a = Point::puncture(2 * r);
            let mut b = Point::puncture(2 * r + 1);
            a.upper = (2 * r + 1) as u32;
            b.upper = (2 * r) as u32;
            points.push(a);
            points.push(b);
            labels.push(r as u32 + 1);
            labels.push(r as u32 + 1);
        }
        Ok(ArcSystem { n, points, labels })
    }

    /// Builds a system from raw parts and checks every structural invariant.
    pub(crate) fn from_parts(n: usize, points: Vec<Point>, labels: Vec<u32>) -> Result<Self> {
        let sys = ArcSystem { n, points, labels };
        sys.validate()?;
        Ok(sys)
    }

    /// Builds a system from its chords, given as position pairs in the
    /// point list. `crossings[k]` is the number of crossings in interval
    /// `k + 1`. Arcs are labelled `1..=n` by their smallest endpoint.
    pub fn from_matchings(
        n: usize,
        crossings: &[usize],
        upper: &[(usize, usize)],
        lower: &[(usize, usize)],
    ) -> Result<Self> {
        SphereModel::new(n)?;
        if crossings.len() != 2 * n {
            return Err(Error::InvalidArcs(format!(
                "{} interval counts for n = {n}",
                crossings.len()
            )));
        }
        let mut points = Vec::new();
        for (k, &c) in crossings.iter().enumerate() {
            points.push(Point::puncture(k));
            points.extend(std::iter::repeat_n(Point::crossing(), c));
        }
        let len = points.len();
        for (h, chords) in [(Hemisphere::Upper, upper), (Hemisphere::Lower, lower)] {
            for &(a, b) in chords {
                if a >= len || b >= len || a == b {
                    return Err(Error::InvalidArcs(format!("bad chord ({a}, {b})")));
                }
                if points[a].partner(h).is_some() || points[b].partner(h).is_some() {
                    return Err(Error::InvalidArcs(format!("point reused by ({a}, {b})")));
                }
                points[a].set_partner(h, b);
                points[b].set_partner(h, a);
            }
        }
        let mut sys = ArcSystem {
            n,
            points,
            labels: vec![0; 2 * n],
        };
        let mut next = 1;
        for start in sys.puncture_positions() {
            if sys.labels[sys.points[start].puncture as usize] != 0 {
                continue;
            }
            let path = sys.walk(start);
            let end = sys.points[*path.last().unwrap()];
            if !end.is_puncture() || path.len() > len {
                return Err(Error::InvalidArcs("arc does not end at a puncture".into()));
            }
            sys.labels[sys.points[start].puncture as usize] = next;
            sys.labels[end.puncture as usize] = next;
            next += 1;
        }
        sys.validate()?;
        Ok(sys)
    }

    pub(crate) fn from_parts_unchecked(n: usize, points: Vec<Point>, labels: Vec<u32>) -> Self {
        ArcSystem { n, points, labels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> SphereModel {
        SphereModel::new(self.n).expect("arc systems always have n >= 2")
    }

    /// Number of points (punctures and crossings) on `l`.
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Total number of `l`-crossings over all arcs.
    pub fn intersection_number(&self) -> usize {
        self.points.len() - 2 * self.n
    }

    /// Crossing count of each interval, indexed `0..2n` for `Interval(1..=2n)`.
    pub fn crossing_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; 2 * self.n];
        let mut current = 0;
        for p in &self.points {
            if p.is_puncture() {
                current = p.puncture as usize;
            } else {
                counts[current] += 1;
            }
        }
        counts
    }

    /// Position of puncture `k` (1-based) in the point list.
    pub(crate) fn puncture_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; 2 * self.n];
        for (i, p) in self.points.iter().enumerate() {
            if p.is_puncture() {
                pos[p.puncture as usize] = i;
            }
        }
        pos
    }

    /// Anchor of every point, in list order.
    pub fn anchors(&self) -> Vec<Anchor> {
        let mut out = Vec::with_capacity(self.points.len());
        let mut interval = 0;
        let mut rank = 0;
        for p in &self.points {
            if p.is_puncture() {
                interval = p.puncture as usize + 1;
                rank = 0;
                out.push(Anchor::Puncture { puncture: interval });
            } else {
                rank += 1;
                out.push(Anchor::Crossing { interval, rank });
            }
        }
        out
    }

    /// Interval containing each crossing; punctures map to `None`.
    pub(crate) fn point_intervals(&self) -> Vec<Option<Interval>> {
        let mut current = 0;
        self.points
            .iter()
            .map(|p| {
                if p.is_puncture() {
                    current = p.puncture as usize + 1;
                    None
                } else {
                    Some(Interval(current))
                }
            })
            .collect()
    }

    /// Chords of one hemisphere as position pairs `(a, b)` with `a < b`,
    /// sorted by `a`.
    pub fn chords(&self, h: Hemisphere) -> Vec<(usize, usize)> {
        self.points
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.partner(h).filter(|&q| q > i).map(|q| (i, q)))
            .collect()
    }

    /// The label of the arc each point lies on.
    pub fn point_labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.points.len()];
        for (start, p) in self.points.iter().enumerate() {
            if !p.is_puncture() || out[start] != 0 {
                continue;
            }
            let label = self.labels[p.puncture as usize] as usize;
            for pos in self.walk(start) {
                out[pos] = label;
            }
        }
        out
    }

    /// Positions visited walking the arc that starts at puncture position `start`.
    pub(crate) fn walk(&self, start: usize) -> Vec<usize> {
        let mut path = vec![start];
        let first = &self.points[start];
        let mut h = if first.upper != NONE {
            Hemisphere::Upper
        } else {
            Hemisphere::Lower
        };
        let mut at = start;
        while let Some(next) = self.points[at].partner(h) {
            path.push(next);
            if self.points[next].is_puncture() || path.len() > self.points.len() {
                break;
            }
            at = next;
            h = h.opposite();
        }
        path
    }

    /// Hemisphere of the first excursion leaving puncture position `pos`.
    pub(crate) fn leaving_hemisphere(&self, pos: usize) -> Hemisphere {
        if self.points[pos].upper != NONE {
            Hemisphere::Upper
        } else {
            Hemisphere::Lower
        }
    }

    /// Endpoint punctures `(a, b)`, `a < b`, of each label `1..=n`.
    pub fn endpoint_matching(&self) -> Vec<(usize, usize)> {
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (k, &label) in self.labels.iter().enumerate() {
            ends[label as usize - 1].push(k + 1);
        }
        ends.into_iter().map(|e| (e[0], e[1])).collect()
    }

    /// The label of the arc ending at puncture `k` (1-based).
    pub fn label_at(&self, k: usize) -> usize {
        self.labels[k - 1] as usize
    }

    /// Checks alternation, rank, planarity and matching invariants.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArcs(msg));
        let n = self.n;
        if n < 2 {
            return bad(format!("n = {n} < 2"));
        }
        if self.labels.len() != 2 * n {
            return bad(format!("{} puncture labels for n = {n}", self.labels.len()));
        }
        let len = self.points.len();
        let mut expected_puncture = 0;
        for (i, p) in self.points.iter().enumerate() {
            if p.is_puncture() {
                if p.puncture as usize != expected_puncture {
                    return bad(format!("puncture {} out of order", p.puncture + 1));
                }
                expected_puncture += 1;
                let count = p.partner(Hemisphere::Upper).is_some() as usize
                    + p.partner(Hemisphere::Lower).is_some() as usize;
                if count != 1 {
                    return bad(format!("puncture {} has {count} chords", p.puncture + 1));
                }
            } else if i == 0 {
                return bad("list must start at p_1".into());
            } else if p.upper == NONE || p.lower == NONE {
                return bad(format!("crossing at position {i} lacks a chord"));
            }
            for h in Hemisphere::BOTH {
                if let Some(q) = p.partner(h) {
                    if q >= len || q == i || self.points[q].partner(h) != Some(i) {
                        return bad(format!("asymmetric {} chord at position {i}", h.symbol()));
                    }
                }
            }
        }
        if expected_puncture != 2 * n {
            return bad(format!("{expected_puncture} punctures, expected {}", 2 * n));
        }
        for h in Hemisphere::BOTH {
            let mut stack: Vec<usize> = Vec::new();
            for (i, p) in self.points.iter().enumerate() {
                if let Some(q) = p.partner(h) {
                    if q > i {
                        stack.push(i);
                    } else if stack.pop() != Some(q) {
                        return bad(format!("{} chords cross at position {i}", h.symbol()));
                    }
                }
            }
        }
        let mut label_count = vec![0; n];
        let mut visited = vec![false; len];
        for (i, p) in self.points.iter().enumerate() {
            if !p.is_puncture() {
                continue;
            }
            let label = self.labels[p.puncture as usize] as usize;
            if label == 0 || label > n {
                return bad(format!("label {label} out of range"));
            }
            label_count[label - 1] += 1;
            let path = self.walk(i);
            let end = *path.last().unwrap();
            if !self.points[end].is_puncture() || end == i {
                return bad(format!(
                    "arc from puncture {} does not end at a puncture",
                    p.puncture + 1
                ));
            }
            if self.labels[self.points[end].puncture as usize] as usize != label {
                return bad(format!(
                    "arc labelled {label} has mismatched endpoint labels"
                ));
            }
            for pos in path {
                visited[pos] = true;
            }
        }
        if label_count.iter().any(|&c| c != 2) {
            return bad("each label must own exactly two punctures".into());
        }
        if visited.iter().any(|v| !v) {
            return bad("closed component present".into());
        }
        Ok(())
    }

    /// Whether the system has no bigon or half-bigon with `l`.
    pub fn is_reduced(&self) -> bool {
        let len = self.points.len();
        (0..len).all(|i| {
            let j = (i + 1) % len;
            let (a, b) = (&self.points[i], &self.points[j]);
            if a.is_puncture() && b.is_puncture() {
                // a short arc between adjacent punctures sits in the upper hemisphere
                return a.lower != j as u32;
            }
            a.upper != j as u32 && a.lower != j as u32
        })
    }

    pub fn to_normal_form(&self) -> NormalForm {
        let anchors = self.anchors();
        let positions = self.puncture_positions();
        let mut arcs = Vec::with_capacity(self.n);
        for label in 1..=self.n {
            let start_puncture = self
                .labels
                .iter()
                .position(|&l| l as usize == label)
                .expect("every label owns two punctures");
            let start = positions[start_puncture];
            let path = self.walk(start);
            let mut h = self.leaving_hemisphere(start);
            let mut excursions = Vec::with_capacity(path.len() - 1);
            for w in path.windows(2) {
                excursions.push(Excursion {
                    hemisphere: h,
                    start: anchors[w[0]],
                    end: anchors[w[1]],
                });
                h = h.opposite();
            }
            let end_puncture = self.points[*path.last().unwrap()].puncture as usize;
            arcs.push(ArcRecord {
                label,
                endpoints: [start_puncture + 1, end_puncture + 1],
                excursions,
            });
        }
        NormalForm {
            n: self.n,
            crossings: self.crossing_counts(),
            arcs,
        }
    }

    /// Rebuilds a system from its normal form, rejecting anything that is not
    /// exactly the canonical serialization of a valid system.
    pub fn from_normal_form(form: &NormalForm) -> Result<Self> {
        let n = form.n;
        SphereModel::new(n)?;
        if form.crossings.len() != 2 * n {
            return Err(Error::InvalidArcs(format!(
                "{} crossing counts for {} intervals",
                form.crossings.len(),
                2 * n
            )));
        }
        let mut points = Vec::new();
        let mut base = Vec::with_capacity(2 * n);
        for (k, &count) in form.crossings.iter().enumerate() {
            base.push(points.len());
            points.push(Point::puncture(k));
            points.extend(std::iter::repeat_n(Point::crossing(), count));
        }
        let locate = |a: &Anchor| -> Result<usize> {
            match *a {
                Anchor::Puncture { puncture } if (1..=2 * n).contains(&puncture) => {
                    Ok(base[puncture - 1])
                }
                Anchor::Crossing { interval, rank }
                    if (1..=2 * n).contains(&interval)
                        && (1..=form.crossings[interval - 1]).contains(&rank) =>
                {
                    Ok(base[interval - 1] + rank)
                }
                other => Err(Error::InvalidArcs(format!("anchor {other:?} out of range"))),
            }
        };
        let mut labels = vec![0u32; 2 * n];
        for arc in &form.arcs {
            for &e in &arc.endpoints {
                if !(1..=2 * n).contains(&e) {
                    return Err(Error::InvalidArcs(format!("endpoint {e} out of range")));
                }
                labels[e - 1] = arc.label as u32;
            }
            for ex in &arc.excursions {
                let a = locate(&ex.start)?;
                let b = locate(&ex.end)?;
                if points[a].partner(ex.hemisphere).is_some()
                    || points[b].partner(ex.hemisphere).is_some()
                {
                    return Err(Error::InvalidArcs(format!(
                        "two {} excursions share an anchor",
                        ex.hemisphere.symbol()
                    )));
                }
                points[a].set_partner(ex.hemisphere, b);
                points[b].set_partner(ex.hemisphere, a);
            }
        }
        let sys = ArcSystem::from_parts(n, points, labels)?;
        if &sys.to_normal_form() != form {
            return Err(Error::InvalidArcs("not in canonical normal form".into()));
        }
        Ok(sys)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_normal_form()).expect("normal forms always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let form: NormalForm = serde_json::from_str(text)?;
        ArcSystem::from_normal_form(&form)
    }
}
