//! Widths and thick/thin levels of abstract Morse positions.
//!
//! A Morse word lists the critical points of the height function from the
//! lowest to the highest. Reading upwards, a minimum adds two strands and a
//! maximum removes two.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Event {
    #[serde(rename = "v")]
    Min,
    #[serde(rename = "^")]
    Max,
}

impl Event {
    pub fn symbol(self) -> char {
        match self {
            Event::Min => 'v',
            Event::Max => '^',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Level {
    Thick,
    Thin,
    Neither,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Thick => "THICK",
            Level::Thin => "THIN",
            Level::Neither => "NEITHER",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorseWord {
    events: Vec<Event>,
}

impl MorseWord {
    pub fn new(events: Vec<Event>) -> Result<Self> {
        if events.is_empty() {
            return Err(Error::InvalidMorse(
                "a knot has at least one maximum and one minimum".into(),
            ));
        }
        let m = events.len();
        let mut count: i64 = 0;
        for (i, e) in events.iter().enumerate() {
            count += match e {
                Event::Min => 2,
                Event::Max => -2,
            };
            if i + 1 < m && count < 2 {
                return Err(Error::InvalidMorse(format!(
                    "strand count {count} after event {} (a single circle needs at least 2)",
                    i + 1
                )));
            }
        }
        if count != 0 {
            return Err(Error::InvalidMorse(format!(
                "strand count ends at {count} instead of 0"
            )));
        }
        Ok(MorseWord { events })
    }

    /// The canonical `n`-bridge word: `n` minima, then `n` maxima.
    pub fn bridge(n: usize) -> Result<Self> {
        let mut events = vec![Event::Min; n];
        events.extend(vec![Event::Max; n]);
        MorseWord::new(events)
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn maxima(&self) -> usize {
        self.events.iter().filter(|e| **e == Event::Max).count()
    }

    /// Strand counts of the `m - 1` regular levels, bottom up.
    pub fn strand_counts(&self) -> Vec<usize> {
        let mut count = 0usize;
        let mut out = Vec::with_capacity(self.events.len() - 1);
        for e in &self.events[..self.events.len() - 1] {
            match e {
                Event::Min => count += 2,
                Event::Max => count -= 2,
            }
            out.push(count);
        }
        out
    }

    pub fn width(&self) -> usize {
        self.strand_counts().iter().sum()
    }

    pub fn classify_levels(&self) -> Vec<Level> {
        self.events
            .windows(2)
            .map(|w| match (w[0], w[1]) {
                (Event::Min, Event::Max) => Level::Thick,
                (Event::Max, Event::Min) => Level::Thin,
                _ => Level::Neither,
            })
            .collect()
    }

    pub fn is_bridge_position(&self) -> bool {
        let first_max = self
            .events
            .iter()
            .position(|e| *e == Event::Max)
            .unwrap_or(self.events.len());
        self.events[first_max..].iter().all(|e| *e == Event::Max)
    }
}

impl FromStr for MorseWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let events = s
            .chars()
            .map(|c| match c {
                'v' => Ok(Event::Min),
                '^' => Ok(Event::Max),
                other => Err(Error::InvalidMorse(format!(
                    "unexpected {other:?}; use 'v' for a minimum and '^' for a maximum"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        MorseWord::new(events)
    }
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.events
            .iter()
            .try_for_each(|e| write!(f, "{}", e.symbol()))
    }
}

/// Every valid word with exactly `maxima` maxima.
pub fn all_words(maxima: usize) -> Vec<MorseWord> {
    fn extend(
        prefix: &mut Vec<Event>,
        mins: usize,
        maxs: usize,
        total: usize,
        out: &mut Vec<MorseWord>,
    ) {
        if mins == total && maxs == total {
            out.push(MorseWord {
                events: prefix.clone(),
            });
            return;
        }
        let count = 2 * (mins - maxs);
        let last = mins + maxs + 1 == 2 * total;
        if mins < total {
            prefix.push(Event::Min);
            extend(prefix, mins + 1, maxs, total, out);
            prefix.pop();
        }
        if maxs < mins && (count >= 4 || last) {
            prefix.push(Event::Max);
            extend(prefix, mins, maxs + 1, total, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if maxima > 0 {
        extend(&mut Vec::new(), 0, 0, maxima, &mut out);
    }
    out
}
