//! The braid group action on arc systems by half-twists.
//!
//! The half-twist of `p_j, p_{j+1}` is supported on a disk `D` meeting `l`
//! in a segment that contains `p_j`, the interval `(p_j, p_{j+1})` and
//! `p_{j+1}`, and no other crossing. Inside an inner disk it rotates by a
//! half turn; in the collar it shears. Every chord reaching into `D` (a
//! spoke) is dragged half way around the collar and so crosses `l` once
//! more, just outside one of the two punctures:
//!
//! * positive (counterclockwise seen from `H+`): upper spokes cross to the
//!   left of `p_j`, lower spokes to the right of `p_{j+1}`;
//! * negative: the other way round.
//!
//! New crossings keep the left-to-right order of their spokes. The segment
//! `[p_j, p_{j+1}]` itself comes back reversed with the hemispheres swapped.

use crate::arcs::{ArcSystem, Hemisphere, Point, NONE};
use crate::error::{Error, Result};
use crate::plat::{Letter, PlatWord, Sign};
use crate::reduce::reduce_in_place;

/// Image of a reduced system under one half-twist, in reduced normal form.
pub fn apply_generator(arcs: &ArcSystem, j: usize, sign: Sign) -> Result<ArcSystem> {
    let mut out = apply_generator_unreduced(arcs, j, sign)?;
    reduce_in_place(&mut out);
    Ok(out)
}

/// Left-to-right composition of [`apply_generator`] over the letters of `word`.
pub fn apply_word(arcs: &ArcSystem, word: &PlatWord) -> Result<ArcSystem> {
    if word.n() != arcs.n() {
        return Err(Error::BridgeMismatch {
            word: word.n(),
            arcs: arcs.n(),
        });
    }
    let mut current = arcs.clone();
    for &Letter { index, sign } in word.letters() {
        current = apply_generator(&current, index, sign)?;
    }
    Ok(current)
}

/// The half-twist image before bigons are removed.
pub fn apply_generator_unreduced(arcs: &ArcSystem, j: usize, sign: Sign) -> Result<ArcSystem> {
    let n = arcs.n();
    if j == 0 || j >= 2 * n {
        return Err(Error::IndexOutOfRange {
            index: j as i64,
            max: 2 * n - 1,
        });
    }
    let old = &arcs.points;
    let len = old.len();
    let positions = arcs.puncture_positions();
    let (pa, pb) = (positions[j - 1], positions[j]);
    let is_target = |q: usize| (pa..=pb).contains(&q);

    struct Spoke {
        target: usize,
        outer: usize,
        side: Hemisphere,
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for t in pa..=pb {
        for h in Hemisphere::BOTH {
            let Some(o) = old[t].partner(h) else { continue };
            if is_target(o) {
                continue;
            }
            let spoke = Spoke {
                target: t,
                outer: o,
                side: h,
            };
            let goes_left = matches!(
                (h, sign),
                (Hemisphere::Upper, Sign::Positive) | (Hemisphere::Lower, Sign::Negative)
            );
            if goes_left {
                left.push(spoke);
            } else {
                right.push(spoke);
            }
        }
    }

    let total = len + left.len() + right.len();
    let mut points: Vec<Point> = Vec::with_capacity(total);
    let mut index = vec![NONE; len];
    let mut rot = vec![NONE; pb - pa + 1];
    let mut left_at = 0;

    let keep = |points: &mut Vec<Point>, index: &mut [u32], q: usize| {
        index[q] = points.len() as u32;
        points.push(Point {
            puncture: old[q].puncture,
            upper: NONE,
            lower: NONE,
        });
    };
    let fresh = |points: &mut Vec<Point>, count: usize| -> usize {
        let at = points.len();
        points.extend(std::iter::repeat_n(Point::crossing(), count));
        at
    };

    for q in 0..pa {
        keep(&mut points, &mut index, q);
    }
    if j != 1 {
        left_at = fresh(&mut points, left.len());
    }
    #[allow(clippy::needless_range_loop)]
    for t in pa..=pb {
        // slot t receives the image of the mirrored target
        rot[pa + pb - t - pa] = points.len() as u32;
        points.push(Point {
            puncture: old[t].puncture,
            upper: NONE,
            lower: NONE,
        });
    }
    let right_at = fresh(&mut points, right.len());
    for q in pb + 1..len {
        keep(&mut points, &mut index, q);
    }
    if j == 1 {
        left_at = fresh(&mut points, left.len());
    }

    let mut link = |a: usize, b: usize, h: Hemisphere| {
        points[a].set_partner(h, b);
        points[b].set_partner(h, a);
    };
    for q in 0..len {
        if is_target(q) {
            continue;
        }
        for h in Hemisphere::BOTH {
            if let Some(o) = old[q].partner(h) {
                if o > q && !is_target(o) {
                    link(index[q] as usize, index[o] as usize, h);
                }
            }
        }
    }
    #[allow(clippy::needless_range_loop)]
    for t in pa..=pb {
        for h in Hemisphere::BOTH {
            if let Some(o) = old[t].partner(h) {
                if is_target(o) && o > t {
                    link(rot[t - pa] as usize, rot[o - pa] as usize, h.opposite());
                }
            }
        }
    }
    for (group, base) in [(&left, left_at), (&right, right_at)] {
        for (k, spoke) in group.iter().enumerate() {
            let c = base + k;
            link(index[spoke.outer] as usize, c, spoke.side);
            link(c, rot[spoke.target - pa] as usize, spoke.side.opposite());
        }
    }

    let mut labels = arcs.labels.clone();
    labels.swap(j - 1, j);
    let out = ArcSystem::from_parts_unchecked(n, points, labels);
    debug_assert!(out.validate().is_ok(), "{:?}", out.validate());
    Ok(out)
}
