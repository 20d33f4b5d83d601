//! Minimal position with respect to `l`.
//!
//! Innermost bigons are removed until none remain. A bigon is a chord
//! between two crossings that are adjacent on `l`; a half-bigon is a chord
//! from a puncture to an adjacent crossing. Both can be pushed across `l`.
//! Afterwards every short arc (a single chord between adjacent punctures) is
//! placed in the upper hemisphere, which makes the result canonical.

use crate::arcs::{ArcSystem, Hemisphere, Point, NONE};

pub fn reduce(arcs: &ArcSystem) -> ArcSystem {
    let mut out = arcs.clone();
    reduce_in_place(&mut out);
    out
}

pub(crate) fn reduce_in_place(sys: &mut ArcSystem) {
    let len = sys.points.len();
    let points = &mut sys.points;
    let mut next: Vec<u32> = (0..len).map(|i| ((i + 1) % len) as u32).collect();
    let mut prev: Vec<u32> = (0..len).map(|i| ((i + len - 1) % len) as u32).collect();
    let mut alive = vec![true; len];
    let mut removed = 0usize;
    let mut work: Vec<u32> = (0..len as u32).rev().collect();

    while let Some(i) = work.pop() {
        let i = i as usize;
        if !alive[i] {
            continue;
        }
        let j = next[i] as usize;
        if j == i {
            continue;
        }
        let (a, b) = (points[i], points[j]);
        let chord = Hemisphere::BOTH
            .into_iter()
            .find(|&h| a.partner(h) == Some(j));
        let Some(h) = chord else { continue };
        let other = h.opposite();
        match (a.is_puncture(), b.is_puncture()) {
            (false, false) => {
                let ai = a.partner(other).unwrap();
                let bj = b.partner(other).unwrap();
                assert!(ai != j, "closed curve component met during reduction");
                points[ai].set_partner(other, bj);
                points[bj].set_partner(other, ai);
                unlink(&mut next, &mut prev, &mut alive, i);
                unlink(&mut next, &mut prev, &mut alive, j);
                removed += 2;
                for q in [ai, bj] {
                    work.push(q as u32);
                    work.push(prev[q]);
                }
                work.push(prev[i]);
            }
            (true, true) => {}
            (pi, _) => {
                let (p, x) = if pi { (i, j) } else { (j, i) };
                let y = points[x].partner(other).unwrap();
                assert!(y != p, "arc folds back onto its own endpoint");
                points[p].clear_partner(h);
                points[p].set_partner(other, y);
                points[y].set_partner(other, p);
                let before = prev[x];
                unlink(&mut next, &mut prev, &mut alive, x);
                removed += 1;
                work.push(before);
                work.push(next[before as usize]);
                work.push(y as u32);
                work.push(prev[y]);
            }
        }
    }

    if removed > 0 {
        let mut new_index = vec![NONE; len];
        let mut count = 0u32;
        for i in 0..len {
            if alive[i] {
                new_index[i] = count;
                count += 1;
            }
        }
        let remap = |q: u32| {
            if q == NONE {
                NONE
            } else {
                new_index[q as usize]
            }
        };
        let compacted: Vec<Point> = (0..len)
            .filter(|&i| alive[i])
            .map(|i| {
                let p = points[i];
                Point {
                    puncture: p.puncture,
                    upper: remap(p.upper),
                    lower: remap(p.lower),
                }
            })
            .collect();
        *points = compacted;
    }

    let len = points.len();
    for i in 0..len {
        let j = (i + 1) % len;
        if points[i].is_puncture() && points[j].is_puncture() && points[i].lower == j as u32 {
            points[i].lower = NONE;
            points[j].lower = NONE;
            points[i].upper = j as u32;
            points[j].upper = i as u32;
        }
    }
}

fn unlink(next: &mut [u32], prev: &mut [u32], alive: &mut [bool], i: usize) {
    let (p, n) = (prev[i], next[i]);
    next[p as usize] = n;
    prev[n as usize] = p;
    alive[i] = false;
}
