//! Exact planar primitives.
//!
//! Points and segments are generic over any exact [`Scalar`]; lines carry
//! canonical integer coefficients and are therefore tied to [`Rational`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// A point in the plane. The derived order is lexicographic on `(x, y)`,
/// which is a total order along any line.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Self, t: &T) -> Self {
        Point {
            x: self.x.clone() + t.clone() * (other.x.clone() - self.x.clone()),
            y: self.y.clone() + t.clone() * (other.y.clone() - self.y.clone()),
        }
    }

    pub fn transposed(&self) -> Self {
        Point {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed segment with distinct endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment<T> {
    p: Point<T>,
    q: Point<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn new(p: Point<T>, q: Point<T>) -> Result<Self> {
        if p == q {
            return Err(Error::DegenerateSegment);
        }
        Ok(Segment { p, q })
    }

    pub fn p(&self) -> &Point<T> {
        &self.p
    }

    pub fn q(&self) -> &Point<T> {
        &self.q
    }

    /// Endpoints in lexicographic order.
    pub fn sorted_endpoints(&self) -> (&Point<T>, &Point<T>) {
        if self.p <= self.q {
            (&self.p, &self.q)
        } else {
            (&self.q, &self.p)
        }
    }

    pub fn has_endpoint(&self, r: &Point<T>) -> bool {
        &self.p == r || &self.q == r
    }

    pub fn contains(&self, r: &Point<T>) -> bool {
        on_segment(r, self)
    }

    pub fn is_collinear_with(&self, other: &Segment<T>) -> bool {
        orientation(&self.p, &self.q, &other.p) == Orientation::Collinear
            && orientation(&self.p, &self.q, &other.q) == Orientation::Collinear
    }
}

/// `(q - p) x (r - p)`.
pub fn cross<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> T {
    let ux = q.x.clone() - p.x.clone();
    let uy = q.y.clone() - p.y.clone();
    let vx = r.x.clone() - p.x.clone();
    let vy = r.y.clone() - p.y.clone();
    ux * vy - uy * vx
}

pub fn orientation<T: Scalar>(p: &Point<T>, q: &Point<T>, r: &Point<T>) -> Orientation {
    let d = cross(p, q, r);
    if d.is_positive() {
        Orientation::CounterClockwise
    } else if d.is_negative() {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

// Whether r lies in the axis-parallel box spanned by a and b.
fn in_box<T: Scalar>(a: &Point<T>, b: &Point<T>, r: &Point<T>) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    xlo <= &r.x && &r.x <= xhi && ylo <= &r.y && &r.y <= yhi
}

/// True iff `r` lies on the closed segment `s`.
pub fn on_segment<T: Scalar>(r: &Point<T>, s: &Segment<T>) -> bool {
    in_box(&s.p, &s.q, r) && orientation(&s.p, &s.q, r) == Orientation::Collinear
}

fn boxes_overlap<T: Scalar>(s1: &Segment<T>, s2: &Segment<T>) -> bool {
    fn span<'a, T: Ord>(a: &'a T, b: &'a T) -> (&'a T, &'a T) {
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
    let (ax0, ax1) = span(&s1.p.x, &s1.q.x);
    let (bx0, bx1) = span(&s2.p.x, &s2.q.x);
    let (ay0, ay1) = span(&s1.p.y, &s1.q.y);
    let (by0, by1) = span(&s2.p.y, &s2.q.y);
    ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1
}

/// True iff the closed segments share at least one point.
pub fn segments_intersect<T: Scalar>(s1: &Segment<T>, s2: &Segment<T>) -> bool {
    if !boxes_overlap(s1, s2) {
        return false;
    }
    let d1 = orientation(&s2.p, &s2.q, &s1.p);
    let d2 = orientation(&s2.p, &s2.q, &s1.q);
    let d3 = orientation(&s1.p, &s1.q, &s2.p);
    let d4 = orientation(&s1.p, &s1.q, &s2.q);
    use Orientation::*;
    let opposite = |a: Orientation, b: Orientation| {
        matches!((a, b), (Clockwise, CounterClockwise) | (CounterClockwise, Clockwise))
    };
    if opposite(d1, d2) && opposite(d3, d4) {
        return true;
    }
    (d1 == Collinear && in_box(&s2.p, &s2.q, &s1.p))
        || (d2 == Collinear && in_box(&s2.p, &s2.q, &s1.q))
        || (d3 == Collinear && in_box(&s1.p, &s1.q, &s2.p))
        || (d4 == Collinear && in_box(&s1.p, &s1.q, &s2.q))
}

/// True iff the segments share a point that is not a common endpoint of both.
///
/// Touching at a shared endpoint is allowed; an endpoint of one segment in the
/// interior of the other is a crossing, as is any collinear overlap of
/// positive length.
pub fn segments_properly_cross<T: Scalar>(s1: &Segment<T>, s2: &Segment<T>) -> bool {
    if !boxes_overlap(s1, s2) {
        return false;
    }
    if s1.is_collinear_with(s2) {
        let (a0, a1) = s1.sorted_endpoints();
        let (b0, b1) = s2.sorted_endpoints();
        let lo = if a0 >= b0 { a0 } else { b0 };
        let hi = if a1 <= b1 { a1 } else { b1 };
        return match lo.cmp(hi) {
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => !(s1.has_endpoint(lo) && s2.has_endpoint(lo)),
            std::cmp::Ordering::Less => true,
        };
    }
    if !segments_intersect(s1, s2) {
        return false;
    }
    // Non-collinear segments meet in exactly one point; it is a common
    // endpoint iff the two segments share an endpoint.
    !(s1.has_endpoint(&s2.p) || s1.has_endpoint(&s2.q))
}

/// A line `a*x + b*y = c` with coprime integer coefficients and the first
/// nonzero of `(a, b)` positive. Equal values denote equal lines.
///
/// The derived order (lexicographic on `(a, b, c)`) is the canonical line order.
///
/// JSON form: `{"a": "1", "b": "-1", "c": "0"}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LineRepr", into = "LineRepr")]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

#[derive(Serialize, Deserialize)]
struct LineRepr {
    a: String,
    b: String,
    c: String,
}

impl TryFrom<LineRepr> for Line {
    type Error = Error;

    fn try_from(r: LineRepr) -> Result<Self> {
        let int = |s: &str| s.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")));
        Line::from_coefficients(int(&r.a)?, int(&r.b)?, int(&r.c)?)
    }
}

impl From<Line> for LineRepr {
    fn from(l: Line) -> Self {
        LineRepr {
            a: l.a.to_string(),
            b: l.b.to_string(),
            c: l.c.to_string(),
        }
    }
}

impl Line {
    pub fn from_coefficients(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateLine);
        }
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        let first = if a.is_zero() { &b } else { &a };
        if first.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line { a, b, c })
    }

    pub fn through(p: &Point<BigRational>, q: &Point<BigRational>) -> Result<Self> {
        if p == q {
            return Err(Error::DegenerateLine);
        }
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |r: &BigRational| r.numer() * (&lcm / r.denom());
        Line::from_coefficients(scale(&a), scale(&b), scale(&c))
    }

    /// Horizontal line `y = value`.
    pub fn horizontal(value: &BigRational) -> Self {
        Line::from_coefficients(
            BigInt::zero(),
            value.denom().clone(),
            value.numer().clone(),
        )
        .expect("nonzero coefficient")
    }

    /// Vertical line `x = value`.
    pub fn vertical(value: &BigRational) -> Self {
        Line::from_coefficients(
            value.denom().clone(),
            BigInt::zero(),
            value.numer().clone(),
        )
        .expect("nonzero coefficient")
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn coefficients(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.is_zero()
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    pub fn contains(&self, p: &Point<BigRational>) -> bool {
        let a = BigRational::from_integer(self.a.clone());
        let b = BigRational::from_integer(self.b.clone());
        a * &p.x + b * &p.y == BigRational::from_integer(self.c.clone())
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        (&self.a * &other.b - &other.a * &self.b).is_zero()
    }

    /// Direction vector `(b, -a)`.
    pub fn direction(&self) -> Point<BigRational> {
        Point::new(
            BigRational::from_integer(self.b.clone()),
            BigRational::from_integer(-self.a.clone()),
        )
    }

    /// Unique intersection point, `None` for distinct parallel lines, and
    /// [`Error::SameLine`] when both describe the same line.
    pub fn intersection(&self, other: &Line) -> Result<Option<Point<BigRational>>> {
        if self == other {
            return Err(Error::SameLine);
        }
        let det = &self.a * &other.b - &other.a * &self.b;
        if det.is_zero() {
            return Ok(None);
        }
        let x = &self.c * &other.b - &other.c * &self.b;
        let y = &self.a * &other.c - &other.a * &self.c;
        Ok(Some(Point::new(
            BigRational::new(x, det.clone()),
            BigRational::new(y, det),
        )))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

pub fn line_through(p: &Point<BigRational>, q: &Point<BigRational>) -> Result<Line> {
    Line::through(p, q)
}

pub fn line_intersection(l1: &Line, l2: &Line) -> Result<Option<Point<BigRational>>> {
    l1.intersection(l2)
}

/// Rational from a pair of machine integers; convenience for fixtures.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer point as exact rationals.
pub fn ipt(x: i64, y: i64) -> Point<BigRational> {
    Point::new(rat(x, 1), rat(y, 1))
}
