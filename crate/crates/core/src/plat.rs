//! Plat presentations and the marked sphere they live on.
//!
//! A plat on `2n` strands is closed by `n` caps on top joining positions
//! `(2r-1, 2r)` and `n` caps at the bottom joining the same pairs. The
//! bridge sphere is modelled as the plane plus a point at infinity, with
//! the reference circle `l` realized as the horizontal axis and punctures
//! at the integer positions `1..=2n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// A braid generator: the half-twist of punctures `index` and `index + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(index: usize, sign: Sign) -> Self {
        Letter { index, sign }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.index, self.sign.flip())
    }

    fn encode(self) -> i64 {
        self.index as i64 * self.sign.as_i64()
    }
}

#[derive(Deserialize, Serialize)]
struct RawPlat {
    n: i64,
    word: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

/// A braid word on `2n` strands read top to bottom, plus the standard caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlatWord {
    n: usize,
    letters: Vec<Letter>,
    name: Option<String>,
}

impl PlatWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositiveBridges(0));
        }
        for letter in &letters {
            if letter.index == 0 || letter.index >= 2 * n {
                return Err(Error::IndexOutOfRange {
                    index: letter.index as i64,
                    max: 2 * n - 1,
                });
            }
        }
        Ok(PlatWord {
            n,
            letters,
            name: None,
        })
    }

    /// Builds a word from signed generator indices, `+j` / `-j`.
    pub fn from_signed(n: usize, word: &[i64]) -> Result<Self> {
        let letters = word
            .iter()
            .map(|&code| decode_letter(code, n))
            .collect::<Result<Vec<_>>>()?;
        PlatWord::new(n, letters)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.encode()).collect()
    }

    /// The inverse braid: letters reversed with signs flipped.
    pub fn inverse(&self) -> PlatWord {
        PlatWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            name: None,
        }
    }

    /// Every sign flipped, order kept: the other handedness convention.
    pub fn mirror(&self) -> PlatWord {
        PlatWord {
            n: self.n,
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
            name: self.name.clone(),
        }
    }

    pub fn concat(&self, other: &PlatWord) -> Result<PlatWord> {
        if self.n != other.n {
            return Err(Error::BridgeMismatch {
                word: other.n,
                arcs: self.n,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(PlatWord {
            n: self.n,
            letters,
            name: None,
        })
    }

    pub fn split_at(&self, at: usize) -> (PlatWord, PlatWord) {
        let (a, b) = self.letters.split_at(at);
        (
            PlatWord {
                n: self.n,
                letters: a.to_vec(),
                name: None,
            },
            PlatWord {
                n: self.n,
                letters: b.to_vec(),
                name: None,
            },
        )
    }

    /// Position permutation of the braid: `result[top - 1]` is the bottom
    /// position (1-based) reached by the strand starting at `top`.
    pub fn permutation(&self) -> Vec<usize> {
        let strands = 2 * self.n;
        // at[pos] = top position of the strand currently at pos
        let mut at: Vec<usize> = (1..=strands).collect();
        for letter in &self.letters {
            at.swap(letter.index - 1, letter.index);
        }
        let mut result = vec![0; strands];
        for (pos, &top) in at.iter().enumerate() {
            result[top - 1] = pos + 1;
        }
        result
    }

    /// Number of components of the plat closure.
    pub fn closure_components(&self) -> usize {
        let strands = 2 * self.n;
        let perm = self.permutation();
        let mut bottom_to_top = vec![0; strands];
        for (top, &bottom) in perm.iter().enumerate() {
            bottom_to_top[bottom - 1] = top;
        }
        let partner = |p: usize| p ^ 1;
        let mut seen = vec![false; strands];
        let mut components = 0;
        for start in 0..strands {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut top = start;
            loop {
                seen[top] = true;
                // follow the strand down, across the bottom cap, and back up
                let bottom = perm[top] - 1;
                let other_top = bottom_to_top[partner(bottom)];
                seen[other_top] = true;
                top = partner(other_top);
                if seen[top] {
                    break;
                }
            }
        }
        components
    }

    pub fn is_knot(&self) -> bool {
        self.closure_components() == 1
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawPlat = serde_json::from_str(text)?;
        if raw.n <= 0 {
            return Err(Error::NonPositiveBridges(raw.n));
        }
        let n = raw.n as usize;
        let mut plat = PlatWord::from_signed(n, &raw.word)?;
        plat.name = raw.name;
        Ok(plat)
    }

    pub fn to_json(&self) -> String {
        let raw = RawPlat {
            n: self.n as i64,
            word: self.signed(),
            name: self.name.clone(),
        };
        serde_json::to_string(&raw).expect("plat serialization cannot fail")
    }
}

fn decode_letter(code: i64, n: usize) -> Result<Letter> {
    let index = code.unsigned_abs() as usize;
    if code == 0 || index >= 2 * n {
        return Err(Error::IndexOutOfRange {
            index: code,
            max: 2 * n - 1,
        });
    }
    let sign = if code > 0 {
        Sign::Positive
    } else {
        Sign::Negative
    };
    Ok(Letter::new(index, sign))
}

/// One of the `2n` open intervals of `l` between consecutive punctures.
///
/// `Interval(k)` runs from `p_k` to `p_{k+1}`; `Interval(2n)` passes through
/// infinity from `p_{2n}` back to `p_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval(pub usize);

/// The marked sphere: `2n` punctures on the reference circle `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SphereModel {
    n: usize,
}

impl SphereModel {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewBridges { n, required: 2 });
        }
        Ok(SphereModel { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn punctures(&self) -> usize {
        2 * self.n
    }

    /// x-coordinate of puncture `k` on the horizontal axis.
    pub fn puncture_position(&self, k: usize) -> usize {
        assert!(k >= 1 && k <= 2 * self.n);
        k
    }

    /// Endpoints of the lower segment `L_i`.
    pub fn lower_segment(&self, i: usize) -> (usize, usize) {
        assert!(i >= 1 && i <= self.n);
        (2 * i - 1, 2 * i)
    }

    /// The interval of `l` covered by the lower segment `L_i`.
    pub fn lower_interval(&self, i: usize) -> Interval {
        Interval(2 * i - 1)
    }

    /// The gap `δ_i`, cyclic in `i`.
    pub fn gap(&self, i: usize) -> Interval {
        let i = (i + self.n - 1) % self.n + 1;
        Interval(2 * i)
    }

    /// The punctures bounding the gap `δ_i`, in the order `l` runs through them.
    pub fn gap_ends(&self, i: usize) -> (usize, usize) {
        let Interval(k) = self.gap(i);
        (k, k % (2 * self.n) + 1)
    }

    /// Interval ends `(p_k, p_{k+1})`, cyclic.
    pub fn interval_ends(&self, interval: Interval) -> (usize, usize) {
        (interval.0, interval.0 % (2 * self.n) + 1)
    }

    pub fn is_gap(&self, interval: Interval) -> bool {
        interval.0.is_multiple_of(2)
    }

    /// All intervals in the cyclic order of `l`: `L_1, δ_1, ..., L_n, δ_n`.
    pub fn intervals(&self) -> impl Iterator<Item = Interval> {
        (1..=2 * self.n).map(Interval)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_empty_word() {
        let plat = PlatWord::from_json(r#"{"n":4,"word":[]}"#).unwrap();
        assert_eq!(plat.n(), 4);
        assert!(plat.is_empty());
    }

    #[test]
    fn parses_signed_letters() {
        let plat = PlatWord::from_json(r#"{"n":2,"word":[1,-3]}"#).unwrap();
        assert_eq!(
            plat.letters(),
            &[
                Letter::new(1, Sign::Positive),
                Letter::new(3, Sign::Negative)
            ]
        );
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = PlatWord::from_json(r#"{"n":2,"word":[4]}"#).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { index: 4, max: 3 }));
        let err = PlatWord::from_json(r#"{"n":2,"word":[0]}"#).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { .. }));
    }

    #[test]
    fn rejects_bad_n_and_syntax() {
        assert!(matches!(
            PlatWord::from_json(r#"{"n":0,"word":[]}"#),
            Err(Error::NonPositiveBridges(0))
        ));
        assert!(matches!(
            PlatWord::from_json(r#"{"n":-2,"word":[]}"#),
            Err(Error::NonPositiveBridges(-2))
        ));
        assert!(matches!(
            PlatWord::from_json(r#"{"n":2,"word":[1,"#),
            Err(Error::Syntax(_))
        ));
    }

    #[test]
    fn name_survives_round_trip() {
        let text = r#"{"n":3,"word":[2,-5,1],"name":"demo"}"#;
        let plat = PlatWord::from_json(text).unwrap();
        assert_eq!(plat.name(), Some("demo"));
        assert_eq!(PlatWord::from_json(&plat.to_json()).unwrap(), plat);
    }

    #[test]
    fn sphere_model_layout() {
        let model = SphereModel::new(4).unwrap();
        assert_eq!(model.punctures(), 8);
        assert_eq!(model.lower_segment(1), (1, 2));
        assert_eq!(model.gap_ends(1), (2, 3));
        assert_eq!(model.gap_ends(4), (8, 1));
        assert_eq!(model.gap(0), model.gap(4));
        assert_eq!(model.gap(5), model.gap(1));
        let kinds: Vec<bool> = model.intervals().map(|i| model.is_gap(i)).collect();
        assert_eq!(kinds, [false, true, false, true, false, true, false, true]);

        let model = SphereModel::new(2).unwrap();
        assert_eq!(model.gap_ends(1), (2, 3));
        assert_eq!(model.gap_ends(2), (4, 1));
        assert!(SphereModel::new(1).is_err());
    }

    #[test]
    fn closure_components() {
        assert_eq!(
            PlatWord::from_signed(3, &[]).unwrap().closure_components(),
            3
        );
        // σ2 joins the first two caps into one unknot
        assert_eq!(
            PlatWord::from_signed(2, &[2]).unwrap().closure_components(),
            1
        );
        assert_eq!(
            PlatWord::from_signed(2, &[2, 2])
                .unwrap()
                .closure_components(),
            2
        );
        assert_eq!(
            PlatWord::from_signed(2, &[1]).unwrap().closure_components(),
            2
        );
    }

    #[test]
    fn permutation_follows_letters() {
        let plat = PlatWord::from_signed(2, &[1, 2]).unwrap();
        // strand at 1 goes to 2 then to 3
        assert_eq!(plat.permutation(), vec![3, 1, 2, 4]);
    }
}
