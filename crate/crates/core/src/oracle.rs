//! An independent half-twist engine that works on explicit geometry.
//!
//! Every arc is drawn as a polyline with exact rational coordinates. Points
//! of `l` sit on the x-axis: punctures at `1..=2n`, crossings spread evenly
//! inside their interval, and crossings of the interval through infinity to
//! the right of `p_{2n}`. Each chord becomes a rectangular bracket whose
//! height is its nesting depth. A piecewise-linear homeomorphism supported
//! on a box around `[p_j, p_{j+1}]` is then applied. The innermost box turns
//! by a half turn, and four triangulated collars shear between it and the
//! identity outside. Crossings are read off the image from sign changes of
//! `y`, and the resulting system is reduced.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arcs::{ArcSystem, Hemisphere, Point};
use crate::error::{Error, Result};
use crate::plat::Sign;
use crate::reduce::reduce_in_place;

type Q = BigRational;

const LAYERS: usize = 4;
const RING: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pt {
    x: Q,
    y: Q,
}

impl Pt {
    fn new(x: Q, y: Q) -> Self {
        Pt { x, y }
    }

    fn sub(&self, o: &Pt) -> Pt {
        Pt::new(&self.x - &o.x, &self.y - &o.y)
    }

    fn lerp(&self, to: &Pt, u: &Q) -> Pt {
        Pt::new(
            &self.x + (&to.x - &self.x) * u,
            &self.y + (&to.y - &self.y) * u,
        )
    }
}

fn cross(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

fn dot(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

fn int(k: usize) -> Q {
    Q::from_integer(BigInt::from(k))
}

/// Twice the signed area of a triangle.
fn orientation(t: &[Pt; 3]) -> Q {
    cross(&t[1].sub(&t[0]), &t[2].sub(&t[0]))
}

/// The piecewise-linear half-twist about one pair of adjacent punctures.
struct Twist {
    center: Q,
    outer: (Q, Q),
    inner: (Q, Q),
    /// Half extents of every box, outermost first.
    halves: Vec<(Q, Q)>,
    /// Domain and image of every collar triangle, layer by layer.
    triangles: Vec<([Pt; 3], [Pt; 3])>,
    edges: Vec<(Pt, Pt)>,
}

impl Twist {
    /// `margin` is the free room on `l` on both sides of `[p_j, p_{j+1}]`.
    fn new(j: usize, sign: Sign, margin: Q) -> Self {
        let center = int(j) + q(1, 2);
        let half = |t: usize| {
            let shrink = q((LAYERS + 1 - t) as i64, (LAYERS + 1) as i64);
            (q(1, 2) + &margin * &shrink, shrink / int(2))
        };
        let boxes: Vec<Vec<Pt>> = (0..=LAYERS)
            .map(|t| {
                let (w, h) = half(t);
                let zero = Q::zero();
                [
                    (w.clone(), zero.clone()),
                    (w.clone(), h.clone()),
                    (zero.clone(), h.clone()),
                    (-w.clone(), h.clone()),
                    (-w.clone(), zero.clone()),
                    (-w.clone(), -h.clone()),
                    (zero.clone(), -h.clone()),
                    (w, -h),
                ]
                .into_iter()
                .map(|(dx, dy)| Pt::new(&center + dx, dy))
                .collect()
            })
            .collect();

        let s: i64 = sign.as_i64();
        let turned = |t: usize, k: usize| {
            let k = (k as i64 + s * t as i64).rem_euclid(RING as i64) as usize;
            boxes[t][k].clone()
        };
        let mut triangles = Vec::with_capacity(2 * RING * LAYERS);
        for t in 0..LAYERS {
            for i in 0..RING {
                let i1 = (i + 1) % RING;
                // the diagonals lean against the turn so that every image
                // triangle stays inside its collar
                let corners: [[(usize, usize); 3]; 2] = if s > 0 {
                    [
                        [(t, i), (t, i1), (t + 1, i)],
                        [(t, i1), (t + 1, i1), (t + 1, i)],
                    ]
                } else {
                    [
                        [(t, i), (t, i1), (t + 1, i1)],
                        [(t, i), (t + 1, i1), (t + 1, i)],
                    ]
                };
                for tri in corners {
                    let domain = tri.map(|(b, k)| boxes[b][k].clone());
                    let image = tri.map(|(b, k)| turned(b, k));
                    triangles.push((domain, image));
                }
            }
        }
        let mut edges: Vec<(Pt, Pt)> = Vec::new();
        for (domain, _) in &triangles {
            for e in 0..3 {
                let (a, b) = (&domain[e], &domain[(e + 1) % 3]);
                if !edges
                    .iter()
                    .any(|(c, d)| (c == a && d == b) || (c == b && d == a))
                {
                    edges.push((a.clone(), b.clone()));
                }
            }
        }
        Twist {
            center,
            outer: half(0),
            inner: half(LAYERS),
            halves: (0..=LAYERS).map(half).collect(),
            triangles,
            edges,
        }
    }

    fn within(&self, p: &Pt, (w, h): &(Q, Q)) -> bool {
        (&p.x - &self.center).abs() <= *w && p.y.abs() <= *h
    }

    fn strictly_within(&self, p: &Pt, (w, h): &(Q, Q)) -> bool {
        (&p.x - &self.center).abs() < *w && p.y.abs() < *h
    }

    /// The affine piece containing `p`, applied to `target`.
    fn map_by_piece_of(&self, p: &Pt, target: &Pt) -> Pt {
        if !self.strictly_within(p, &self.outer) {
            return target.clone();
        }
        if self.within(p, &self.inner) {
            return Pt::new(&self.center * int(2) - &target.x, -target.y.clone());
        }
        let layer = (0..LAYERS)
            .find(|&t| !self.strictly_within(p, &self.halves[t + 1]))
            .expect("point lies in some collar");
        for (domain, image) in &self.triangles[2 * RING * layer..2 * RING * (layer + 1)] {
            let contains = (0..3).all(|e| {
                let (a, b) = (&domain[e], &domain[(e + 1) % 3]);
                !cross(&b.sub(a), &p.sub(a)).is_negative()
            });
            if contains {
                let weights = barycentric(domain, target).expect("triangle is not degenerate");
                let mut x = Q::zero();
                let mut y = Q::zero();
                for (wt, v) in weights.iter().zip(image) {
                    x += wt * &v.x;
                    y += wt * &v.y;
                }
                return Pt::new(x, y);
            }
        }
        unreachable!("collar triangles cover the annulus")
    }

    /// Image of a segment, as a polyline without its first vertex.
    fn map_segment(&self, a: &Pt, b: &Pt, out: &mut Vec<Pt>) {
        let lo = &self.center - &self.outer.0;
        let hi = &self.center + &self.outer.0;
        let h = &self.outer.1;
        let misses = (a.x < lo && b.x < lo)
            || (a.x > hi && b.x > hi)
            || (a.y > *h && b.y > *h)
            || (a.y < -h.clone() && b.y < -h.clone());
        if misses {
            out.push(b.clone());
            return;
        }
        let d = b.sub(a);
        let mut cuts: Vec<Q> = vec![Q::zero(), Q::one()];
        let inside = |u: &Q| u.is_positive() && *u < Q::one();
        let (xmin, xmax) = if a.x <= b.x {
            (&a.x, &b.x)
        } else {
            (&b.x, &a.x)
        };
        let (ymin, ymax) = if a.y <= b.y {
            (&a.y, &b.y)
        } else {
            (&b.y, &a.y)
        };
        for (e0, e1) in &self.edges {
            let apart = (e0.x < *xmin && e1.x < *xmin)
                || (e0.x > *xmax && e1.x > *xmax)
                || (e0.y < *ymin && e1.y < *ymin)
                || (e0.y > *ymax && e1.y > *ymax);
            if apart {
                continue;
            }
            let e = e1.sub(e0);
            let denom = cross(&d, &e);
            let rel = e0.sub(a);
            if !denom.is_zero() {
                let u = cross(&rel, &e) / &denom;
                let v = cross(&rel, &d) / &denom;
                if inside(&u) && !v.is_negative() && v <= Q::one() {
                    cuts.push(u);
                }
            } else if cross(&rel, &d).is_zero() {
                let len = dot(&d, &d);
                for end in [e0, e1] {
                    let u = dot(&end.sub(a), &d) / &len;
                    if inside(&u) {
                        cuts.push(u);
                    }
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        for w in cuts.windows(2) {
            let mid = a.lerp(b, &((&w[0] + &w[1]) / int(2)));
            out.push(self.map_by_piece_of(&mid, &a.lerp(b, &w[1])));
        }
    }
}

/// Barycentric coordinates of `p` in a triangle.
fn barycentric(t: &[Pt; 3], p: &Pt) -> Option<[Q; 3]> {
    let area = orientation(t);
    if area.is_zero() {
        return None;
    }
    let l1 = cross(&p.sub(&t[0]), &t[2].sub(&t[0])) / &area;
    let l2 = cross(&t[1].sub(&t[0]), &p.sub(&t[0])) / &area;
    let l0 = Q::one() - &l1 - &l2;
    Some([l0, l1, l2])
}

/// Rational x-coordinate of every point of the list.
fn layout(arcs: &ArcSystem) -> Vec<Q> {
    let counts = arcs.crossing_counts();
    let mut xs = Vec::with_capacity(arcs.points.len());
    let mut interval = 0;
    let mut rank = 0;
    for p in &arcs.points {
        if p.is_puncture() {
            interval = p.puncture as usize + 1;
            rank = 0;
            xs.push(int(interval));
        } else {
            rank += 1;
            let step = Q::new(BigInt::from(rank), BigInt::from(counts[interval - 1] + 1));
            xs.push(int(interval) + step);
        }
    }
    xs
}

/// Nesting depth of the chord at each point, per hemisphere.
fn depths(arcs: &ArcSystem, h: Hemisphere) -> Vec<usize> {
    let len = arcs.points.len();
    let mut depth = vec![0; len];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for i in 0..len {
        let Some(o) = arcs.points[i].partner(h) else {
            continue;
        };
        if o > i {
            stack.push((i, 0));
        } else {
            let (open, inner) = stack.pop().expect("chords are nested");
            debug_assert_eq!(open, o);
            let d = inner + 1;
            depth[i] = d;
            depth[o] = d;
            if let Some(parent) = stack.last_mut() {
                parent.1 = parent.1.max(d);
            }
        }
    }
    depth
}

/// Where a crossing sits in the cyclic order of `l` read from `p_1`.
fn cyclic_key(x: &Q) -> (bool, Q) {
    (*x < Q::one(), x.clone())
}

struct Traced {
    label: u32,
    /// Anchors along the arc and the hemisphere entered after each.
    anchors: Vec<Q>,
    sides: Vec<Hemisphere>,
}

/// Reads anchors and hemispheres off an image polyline.
fn trace(label: u32, poly: &[Pt]) -> Traced {
    let mut anchors = vec![poly[0].x.clone()];
    let mut sides = Vec::new();
    let side_of = |y: &Q| {
        if y.is_positive() {
            Hemisphere::Upper
        } else {
            Hemisphere::Lower
        }
    };
    let last = poly.len() - 1;
    let mut prev = 0;
    let mut current: Option<Hemisphere> = None;
    for (i, p) in poly.iter().enumerate().take(last).skip(1) {
        if p.y.is_zero() {
            continue;
        }
        let side = side_of(&p.y);
        match current {
            None => {
                assert!(i == 1, "image runs along l from a puncture");
                current = Some(side);
            }
            Some(c) if c != side => {
                let x = match i - prev {
                    1 => {
                        let (a, b) = (&poly[prev], p);
                        &a.x + (&b.x - &a.x) * (&a.y / (&a.y - &b.y))
                    }
                    2 => poly[prev + 1].x.clone(),
                    _ => panic!("image runs along l"),
                };
                sides.push(c);
                anchors.push(x);
                current = Some(side);
            }
            Some(_) => {}
        }
        prev = i;
    }
    assert!(poly[last].y.is_zero());
    assert!(last - prev == 1, "image runs along l into a puncture");
    sides.push(current.expect("arcs leave their punctures"));
    anchors.push(poly[last].x.clone());
    Traced {
        label,
        anchors,
        sides,
    }
}

/// The same contract as [`crate::apply_generator`], computed geometrically.
pub fn oracle_apply(arcs: &ArcSystem, j: usize, sign: Sign) -> Result<ArcSystem> {
    let n = arcs.n();
    if j == 0 || j >= 2 * n {
        return Err(Error::IndexOutOfRange {
            index: j as i64,
            max: 2 * n - 1,
        });
    }
    let counts = arcs.crossing_counts();
    let left = counts[(j + 2 * n - 2) % (2 * n)];
    let right = counts[j % (2 * n)];
    let margin = Q::new(BigInt::one(), BigInt::from(2 * (left.max(right) + 1)));
    let twist = Twist::new(j, sign, margin);

    let xs = layout(arcs);
    let up = depths(arcs, Hemisphere::Upper);
    let down = depths(arcs, Hemisphere::Lower);
    let positions = arcs.puncture_positions();
    let mut traced = Vec::with_capacity(n);
    for (k, &start) in positions.iter().enumerate() {
        let path = arcs.walk(start);
        let end = *path.last().unwrap();
        if (arcs.points[end].puncture as usize) < k {
            continue;
        }
        let mut source = vec![Pt::new(xs[start].clone(), Q::zero())];
        let mut h = arcs.leaving_hemisphere(start);
        for w in path.windows(2) {
            let height = match h {
                Hemisphere::Upper => up[w[0]] as i64,
                Hemisphere::Lower => -(down[w[0]] as i64),
            };
            let y = Q::from_integer(BigInt::from(height));
            source.push(Pt::new(xs[w[0]].clone(), y.clone()));
            source.push(Pt::new(xs[w[1]].clone(), y));
            source.push(Pt::new(xs[w[1]].clone(), Q::zero()));
            h = h.opposite();
        }
        let mut image = vec![twist.map_by_piece_of(&source[0], &source[0])];
        for seg in source.windows(2) {
            twist.map_segment(&seg[0], &seg[1], &mut image);
        }
        traced.push(trace(arcs.labels[k], &image));
    }
    assemble(n, &traced)
}

/// Builds the point list from traced arcs and reduces it.
fn assemble(n: usize, traced: &[Traced]) -> Result<ArcSystem> {
    let mut order: Vec<(usize, usize)> = traced
        .iter()
        .enumerate()
        .flat_map(|(a, t)| (0..t.anchors.len()).map(move |i| (a, i)))
        .collect();
    order.sort_by(|&(a, i), &(b, k)| {
        cyclic_key(&traced[a].anchors[i]).cmp(&cyclic_key(&traced[b].anchors[k]))
    });
    for w in order.windows(2) {
        let (a, i) = w[0];
        let (b, k) = w[1];
        assert!(
            traced[a].anchors[i].cmp(&traced[b].anchors[k]) != Ordering::Equal,
            "image arcs meet on l"
        );
    }
    let mut slot: Vec<Vec<usize>> = traced.iter().map(|t| vec![0; t.anchors.len()]).collect();
    let mut points = Vec::with_capacity(order.len());
    let mut labels = vec![0u32; 2 * n];
    for (pos, &(a, i)) in order.iter().enumerate() {
        slot[a][i] = pos;
        let x = &traced[a].anchors[i];
        let last = traced[a].anchors.len() - 1;
        if i == 0 || i == last {
            assert!(x.is_integer(), "arc ends off a puncture");
            let k: usize = x.to_integer().try_into().expect("puncture index");
            labels[k - 1] = traced[a].label;
            points.push(Point::puncture(k - 1));
        } else {
            points.push(Point::crossing());
        }
    }
    for (a, t) in traced.iter().enumerate() {
        for (i, &h) in t.sides.iter().enumerate() {
            let (u, v) = (slot[a][i], slot[a][i + 1]);
            points[u].set_partner(h, v);
            points[v].set_partner(h, u);
        }
    }
    let mut out = ArcSystem::from_parts(n, points, labels)?;
    reduce_in_place(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plat::PlatWord;
    use crate::twist::{apply_generator, apply_word};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn caps(n: usize) -> ArcSystem {
        ArcSystem::canonical_top_arcs(n).unwrap()
    }

    #[test]
    fn collar_triangles_keep_orientation() {
        for sign in [Sign::Positive, Sign::Negative] {
            let twist = Twist::new(3, sign, q(1, 7));
            assert_eq!(twist.triangles.len(), 2 * RING * LAYERS);
            for (domain, image) in &twist.triangles {
                assert!(orientation(domain).is_positive());
                assert!(orientation(image).is_positive());
            }
        }
    }

    #[test]
    fn half_turn_inside_identity_outside() {
        let twist = Twist::new(2, Sign::Positive, q(1, 4));
        let p = Pt::new(int(2), Q::zero());
        assert_eq!(twist.map_by_piece_of(&p, &p), Pt::new(int(3), Q::zero()));
        let far = Pt::new(int(5), q(1, 3));
        assert_eq!(twist.map_by_piece_of(&far, &far), far);
    }

    #[test]
    fn agrees_on_canonical_arcs() {
        for n in 2..=4 {
            for j in 1..2 * n {
                for sign in [Sign::Positive, Sign::Negative] {
                    let start = caps(n);
                    assert_eq!(
                        oracle_apply(&start, j, sign).unwrap(),
                        apply_generator(&start, j, sign).unwrap(),
                        "n={n} j={j} {sign:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn agrees_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(2..=4);
            let len = rng.gen_range(0..=6);
            let word: Vec<i64> = (0..len)
                .map(|_| {
                    let j = rng.gen_range(1..2 * n as i64);
                    if rng.gen() {
                        j
                    } else {
                        -j
                    }
                })
                .collect();
            let plat = PlatWord::from_signed(n, &word).unwrap();
            let mut geometric = caps(n);
            for letter in plat.letters() {
                geometric = oracle_apply(&geometric, letter.index, letter.sign).unwrap();
            }
            assert_eq!(geometric, apply_word(&caps(n), &plat).unwrap(), "{word:?}");
        }
    }

    #[test]
    fn cap_outside_the_disk_is_untouched() {
        let out = oracle_apply(&caps(3), 2, Sign::Positive).unwrap();
        let form = out.to_normal_form();
        assert_eq!(form.arcs[2], caps(3).to_normal_form().arcs[2]);
    }

    #[test]
    fn rejects_bad_generator() {
        assert!(oracle_apply(&caps(2), 4, Sign::Negative).is_err());
    }
}
