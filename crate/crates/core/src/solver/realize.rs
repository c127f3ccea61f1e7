//! Turning a relaxed slot pattern into an exact polyline.
//!
//! Turn points between consecutive rich slots are forced. Every other
//! vertex is chosen from a small candidate set just beyond the points the
//! adjacent segment has to cover; the assembled path is then re-verified.

use num_traits::{One, Zero};

use super::instance::{Instance, Mask};
use super::path::{decode, Cover, SlotRef};
use crate::geometry::{on_segment, rat, segments_properly_cross};
use crate::verify::{count_path_segments, is_covering_path, is_noncrossing_path};
use crate::{Line, Point, Polyline, Rational, Segment};

const MAX_STEPS: usize = 5_000;

pub(crate) fn realize(
    inst: &Instance,
    slots: &[u32],
    covers: &[Mask],
    kinds: &[Cover],
    crossing: bool,
    gap: &Rational,
) -> Option<Polyline> {
    for reverse in [false, true] {
        let needed = assign(inst, slots, covers, kinds, reverse);
        let mut r = Realizer {
            inst,
            slots,
            needed,
            crossing,
            gap,
            steps: 0,
        };
        let mut verts = Vec::with_capacity(slots.len() + 1);
        if let Some(p) = r.place(&mut verts) {
            return Some(p);
        }
    }
    None
}

/// Points each free-ended rich slot must cover itself.
fn assign(inst: &Instance, slots: &[u32], covers: &[Mask], kinds: &[Cover], reverse: bool) -> Vec<Mask> {
    let k = slots.len();
    let mut needed = vec![0; k];
    let automatic = (0..k)
        .filter(|&i| matches!(kinds[i], Cover::Fixed | Cover::Connector))
        .fold(0, |acc, i| acc | covers[i]);
    let order: Vec<usize> = if reverse { (0..k).rev().collect() } else { (0..k).collect() };
    for p in 0..inst.points.len() {
        let bit = 1 << p;
        if automatic & bit != 0 {
            continue;
        }
        if let Some(&i) = order.iter().find(|&&i| covers[i] & bit != 0) {
            needed[i] |= bit;
        }
    }
    needed
}

struct Realizer<'a> {
    inst: &'a Instance,
    slots: &'a [u32],
    needed: Vec<Mask>,
    crossing: bool,
    gap: &'a Rational,
    steps: usize,
}

fn add(p: &Point, d: &Point, t: &Rational) -> Point {
    Point::new(&p.x + &d.x * t, &p.y + &d.y * t)
}

fn sub(p: &Point, q: &Point) -> Point {
    Point::new(&p.x - &q.x, &p.y - &q.y)
}

fn ts() -> [Rational; 4] {
    [Rational::zero(), rat(1, 2), Rational::one(), rat(2, 1)]
}

impl Realizer<'_> {
    fn place(&mut self, verts: &mut Vec<Point>) -> Option<Polyline> {
        self.steps += 1;
        if self.steps > MAX_STEPS {
            return None;
        }
        let i = verts.len();
        if i == self.slots.len() + 1 {
            return self.check(verts);
        }
        for v in self.candidates(i, verts) {
            if verts.last() == Some(&v) || !self.edge_ok(verts, &v) {
                continue;
            }
            verts.push(v);
            if let Some(p) = self.place(verts) {
                return Some(p);
            }
            verts.pop();
            if self.steps > MAX_STEPS {
                return None;
            }
        }
        None
    }

    /// In noncrossing mode, the edge ending at `v` must not cross earlier ones.
    fn edge_ok(&self, verts: &[Point], v: &Point) -> bool {
        if self.crossing || verts.is_empty() {
            return true;
        }
        let Ok(e) = Segment::new(verts[verts.len() - 1].clone(), v.clone()) else {
            return false;
        };
        verts.windows(2).all(|w| match Segment::new(w[0].clone(), w[1].clone()) {
            Ok(old) => !segments_properly_cross(&e, &old),
            Err(_) => true,
        })
    }

    fn check(&self, verts: &[Point]) -> Option<Polyline> {
        let path = Polyline::new(verts.to_vec()).ok()?;
        if count_path_segments(&path) != self.slots.len() {
            return None;
        }
        if !is_covering_path(&path, &self.inst.grid).covered {
            return None;
        }
        if !self.crossing && !is_noncrossing_path(&path) {
            return None;
        }
        Some(path)
    }

    fn slot(&self, i: usize) -> Option<SlotRef> {
        self.slots.get(i).map(|&id| decode(self.inst, id))
    }

    fn meet(&self, a: usize, b: usize) -> Point {
        let m = self.inst.inter[a][b].expect("adjacent rich lines meet");
        self.inst.meet_points[m.id as usize].clone()
    }

    fn step(&self, l: usize) -> Point {
        let pts = &self.inst.lines[l].pts;
        sub(&self.inst.points[pts[1]], &self.inst.points[pts[0]])
    }

    fn offsets(&self, p: &Point) -> Vec<Point> {
        [(1, 2, 1, 3), (-1, 3, 1, 2), (2, 7, -3, 5), (-3, 5, -2, 7)]
            .iter()
            .map(|&(a, b, c, d)| Point::new(&p.x + rat(a, b) * self.gap, &p.y + rat(c, d) * self.gap))
            .collect()
    }

    /// Positions beyond the hull `[lo, hi]` along line `l`.
    fn beyond(&self, l: usize, lo: &Point, hi: &Point, low_side: bool, high_side: bool) -> Vec<Point> {
        let d = self.step(l);
        let mut out = Vec::new();
        for t in ts() {
            if high_side {
                out.push(add(hi, &d, &t));
            }
            if low_side {
                out.push(add(lo, &d, &-t.clone()));
            }
        }
        out
    }

    fn hull(&self, mask: Mask, extra: &[Point]) -> Option<(Point, Point)> {
        let mut pts: Vec<Point> = self.inst.mask_points(mask).cloned().collect();
        pts.extend(extra.iter().cloned());
        Some((pts.iter().min()?.clone(), pts.iter().max()?.clone()))
    }

    /// Start of slot `j` on rich line `b`.
    fn start_on_line(&self, b: usize, j: usize) -> Vec<Point> {
        match self.slot(j + 1) {
            Some(SlotRef::Rich(c)) => {
                let m = self.meet(b, c);
                let (lo, hi) = self.hull(self.needed[j], std::slice::from_ref(&m)).unwrap();
                let single = lo == hi;
                self.beyond(b, &lo, &hi, single || m == hi, single || m == lo)
            }
            _ => {
                let first = self.inst.points[self.inst.lines[b].pts[0]].clone();
                let (lo, hi) = self.hull(self.needed[j], &[]).unwrap_or((first.clone(), first));
                self.beyond(b, &lo, &hi, true, true)
            }
        }
    }

    /// End of slot `j` on rich line `a`, which starts at `u`.
    fn end_on_line(&self, a: usize, j: usize, u: &Point) -> Vec<Point> {
        let (lo, hi) = self.hull(self.needed[j], std::slice::from_ref(u)).unwrap();
        if lo == hi {
            self.beyond(a, &lo, &hi, true, true)
        } else if *u == lo {
            self.beyond(a, &lo, &hi, false, true)
        } else if *u == hi {
            self.beyond(a, &lo, &hi, true, false)
        } else {
            Vec::new()
        }
    }

    fn candidates(&self, i: usize, verts: &[Point]) -> Vec<Point> {
        let left = if i > 0 { self.slot(i - 1) } else { None };
        let right = self.slot(i);
        let u = verts.last();
        match (left, right) {
            (Some(SlotRef::Rich(a)), Some(SlotRef::Rich(b))) => vec![self.meet(a, b)],
            (None, Some(SlotRef::Rich(b))) | (Some(SlotRef::Free), Some(SlotRef::Rich(b))) => self.start_on_line(b, i),
            (Some(SlotRef::Point(p)), Some(SlotRef::Rich(b))) => {
                let p = &self.inst.points[p];
                let u = u.expect("connector has a start");
                if u == p {
                    return self.start_on_line(b, i);
                }
                let Ok(through) = Line::through(u, p) else {
                    return Vec::new();
                };
                match through.intersection(&self.inst.lines[b].line) {
                    Ok(Some(w)) => match Segment::new(u.clone(), w.clone()) {
                        Ok(s) if on_segment(p, &s) => vec![w],
                        _ => Vec::new(),
                    },
                    _ => Vec::new(),
                }
            }
            (Some(SlotRef::Rich(a)), _) => self.end_on_line(a, i - 1, u.expect("rich slot has a start")),
            (Some(SlotRef::Point(p)), _) => {
                let p = &self.inst.points[p];
                let u = u.expect("connector has a start");
                if u == p {
                    self.offsets(p)
                } else {
                    let d = sub(p, u);
                    ts().iter().map(|t| add(p, &d, t)).collect()
                }
            }
            (Some(SlotRef::Free), Some(SlotRef::Point(_))) => self.offsets(u.expect("connector has a start")),
            (None, Some(SlotRef::Point(p))) => {
                let p = &self.inst.points[p];
                let mut out = vec![p.clone()];
                out.extend(self.offsets(p));
                out
            }
            _ => Vec::new(),
        }
    }
}
