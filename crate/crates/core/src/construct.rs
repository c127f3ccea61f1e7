//! Explicit covering paths and trees achieving the known minima.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::on_segment;
use crate::{Grid, Line, Point, Segment};

/// A polygonal path given by its turn points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolylineRepr", into = "PolylineRepr")]
pub struct Polyline {
    vertices: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct PolylineRepr {
    #[serde(with = "crate::io::point_vec")]
    vertices: Vec<Point>,
}

impl TryFrom<PolylineRepr> for Polyline {
    type Error = Error;

    fn try_from(r: PolylineRepr) -> Result<Self> {
        Polyline::new(r.vertices)
    }
}

impl From<Polyline> for PolylineRepr {
    fn from(p: Polyline) -> Self {
        PolylineRepr { vertices: p.vertices }
    }
}

impl Polyline {
    /// At least two vertices, consecutive vertices distinct. Collinear
    /// consecutive edges are accepted here; segment counting merges them.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Precondition("a polyline needs at least two vertices".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DegenerateSegment);
        }
        Ok(Polyline { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<Segment> {
        self.vertices
            .windows(2)
            .map(|w| Segment::new(w[0].clone(), w[1].clone()).expect("distinct consecutive vertices"))
            .collect()
    }

    pub fn transposed(&self) -> Polyline {
        Polyline {
            vertices: self.vertices.iter().map(Point::transposed).collect(),
        }
    }

    pub fn to_segment_set(&self) -> SegmentSet {
        SegmentSet {
            segments: self.edges(),
            kind: SetKind::PathRealized,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SetKind {
    PathRealized,
    Tree,
    General,
}

/// Unordered segments; `Tree` promises a connected union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SegmentSetRepr", into = "SegmentSetRepr")]
pub struct SegmentSet {
    pub segments: Vec<Segment>,
    pub kind: SetKind,
}

#[derive(Serialize, Deserialize)]
struct SegmentSetRepr {
    segments: Vec<[[String; 2]; 2]>,
    kind: SetKind,
}

impl TryFrom<SegmentSetRepr> for SegmentSet {
    type Error = Error;

    fn try_from(r: SegmentSetRepr) -> Result<Self> {
        let segments = r
            .segments
            .iter()
            .map(|[p, q]| {
                Segment::new(crate::io::point_from_strings(p)?, crate::io::point_from_strings(q)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SegmentSet { segments, kind: r.kind })
    }
}

impl From<SegmentSet> for SegmentSetRepr {
    fn from(s: SegmentSet) -> Self {
        SegmentSetRepr {
            segments: s
                .segments
                .iter()
                .map(|seg| [crate::io::point_to_strings(seg.p()), crate::io::point_to_strings(seg.q())])
                .collect(),
            kind: s.kind,
        }
    }
}

impl SegmentSet {
    pub fn new(segments: Vec<Segment>, kind: SetKind) -> Self {
        SegmentSet { segments, kind }
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

fn seg(p: Point, q: Point) -> Segment {
    Segment::new(p, q).expect("construction produced a zero-length segment")
}

/// Row-by-row snake with `2 min(n, m) - 1` segments and no crossings.
///
/// Runs along the longer dimension; consecutive rows are joined alternately
/// at the last and the first column.
pub fn boustrophedon_path(g: &Grid) -> Result<Polyline> {
    if g.len() == 1 {
        return Err(Error::DegenerateGrid("a 1x1 grid needs no segment".into()));
    }
    if g.n() < g.m() {
        return Ok(boustrophedon_path(&g.transposed())?.transposed());
    }
    let last = g.n() - 1;
    let mut vertices = Vec::with_capacity(2 * g.m());
    for j in 0..g.m() {
        let (a, b) = if j % 2 == 0 { (0, last) } else { (last, 0) };
        vertices.push(g.point(a, j));
        vertices.push(g.point(b, j));
    }
    Polyline::new(vertices)
}

#[derive(Debug, Clone, Copy)]
enum Carrier {
    Col(i64),
    Row(i64),
    Through((i64, i64), (i64, i64)),
}

#[derive(Debug, Clone, Copy)]
enum Vertex {
    At(i64, i64),
    Meet(Carrier, Carrier),
}

/// Axis-aligned spiral around the nine-dots core, `2n - 2` segments on an
/// `n x n` grid with `n >= 3`. The path crosses itself.
///
/// The core occupies a 3x3 block and ends with a diagonal leg that is
/// extended to the next row line; from there every leg covers one full row
/// or column of the growing rectangle and overshoots to the corner where the
/// next leg starts. On non-uniform grids the diagonal legs are recomputed
/// from the actual coordinates and the result is rejected unless it still
/// covers the grid with `2n - 2` segments.
pub fn spiral_path(g: &Grid) -> Result<Polyline> {
    let n = g.n();
    if n != g.m() || n < 3 {
        return Err(Error::Precondition("spiral requires n=m>=3".into()));
    }
    let peel_legs = 2 * n - 6;
    let diag_up = Carrier::Through((1, 0), (2, 1));
    let diag_down = Carrier::Through((0, 2), (2, 0));
    let mut plan = vec![
        Vertex::At(0, 1),
        Vertex::Meet(Carrier::Col(0), diag_up),
        Vertex::Meet(diag_up, Carrier::Row(2)),
        Vertex::At(0, 2),
    ];
    plan.push(if peel_legs == 0 {
        Vertex::At(2, 0)
    } else {
        Vertex::Meet(diag_down, Carrier::Row(-1))
    });
    let (mut xl, mut xr, mut yb, mut yt) = (0i64, 2i64, 0i64, 2i64);
    for t in 0..peel_legs {
        match t % 4 {
            0 => {
                yb -= 1;
                plan.push(Vertex::At(xl - 1, yb));
            }
            1 => {
                xl -= 1;
                plan.push(Vertex::At(xl, yt + 1));
            }
            2 => {
                yt += 1;
                plan.push(Vertex::At(xr + 1, yt));
            }
            _ => {
                xr += 1;
                plan.push(Vertex::At(xr, yb - 1));
            }
        }
    }
    debug_assert_eq!((xr - xl + 1, yt - yb + 1), (n as i64, n as i64));

    let at = |i: i64, j: i64| Point::new(g.x_ext(i - xl), g.y_ext(j - yb));
    let carrier = |c: Carrier| -> Result<Line> {
        Ok(match c {
            Carrier::Col(i) => Line::vertical(&g.x_ext(i - xl)),
            Carrier::Row(j) => Line::horizontal(&g.y_ext(j - yb)),
            Carrier::Through(a, b) => Line::through(&at(a.0, a.1), &at(b.0, b.1))?,
        })
    };
    let unsupported = || Error::Unsupported("spiral diagonals do not survive this grid's spacing".into());
    let mut vertices = Vec::with_capacity(plan.len());
    for v in plan {
        vertices.push(match v {
            Vertex::At(i, j) => at(i, j),
            Vertex::Meet(a, b) => carrier(a)?
                .intersection(&carrier(b)?)
                .map_err(|_| unsupported())?
                .ok_or_else(unsupported)?,
        });
    }
    if peel_legs > 0 {
        trim_last_leg(g, &mut vertices);
    }
    let path = Polyline::new(vertices).map_err(|_| unsupported())?;
    let report = crate::verify::is_covering_path(&path, g);
    if !report.covered || report.segment_count != 2 * n - 2 {
        return Err(unsupported());
    }
    Ok(path)
}

// The last leg ends at the farthest grid point it still has to cover.
fn trim_last_leg(g: &Grid, vertices: &mut [Point]) {
    let k = vertices.len();
    let start = vertices[k - 2].clone();
    let end = vertices[k - 1].clone();
    let earlier: Vec<Segment> = vertices[..k - 1]
        .windows(2)
        .filter_map(|w| Segment::new(w[0].clone(), w[1].clone()).ok())
        .collect();
    let leg = seg(start.clone(), end);
    let mut needed: Vec<Point> = g
        .points()
        .into_iter()
        .filter(|p| on_segment(p, &leg) && !earlier.iter().any(|s| on_segment(p, s)))
        .collect();
    needed.sort();
    let far = if leg.p() < leg.q() { needed.last() } else { needed.first() };
    if let Some(p) = far {
        if *p != start {
            vertices[k - 1] = p.clone();
        }
    }
}

/// Covering tree with `min(n, m) + 1` segments: one full line per row (or
/// per column, whichever are fewer) plus a spine along the first
/// perpendicular line. The spine is stored as abutting pieces that end at
/// the teeth, so the drawing is also a tree graph.
pub fn comb_tree(g: &Grid) -> Result<SegmentSet> {
    let (n, m) = (g.n(), g.m());
    if n < 2 || m < 2 || (n == 2 && m == 2) {
        return Err(Error::Precondition(format!(
            "comb tree needs n, m >= 2 and not 2x2 (got {n}x{m})"
        )));
    }
    if n < m {
        let t = comb_tree(&g.transposed())?;
        return Ok(SegmentSet::new(
            t.segments
                .iter()
                .map(|s| seg(s.p().transposed(), s.q().transposed()))
                .collect(),
            t.kind,
        ));
    }
    let mut segments: Vec<Segment> = (0..m - 1).map(|j| seg(g.point(0, j), g.point(0, j + 1))).collect();
    segments.extend((0..m).map(|j| seg(g.point(0, j), g.point(n - 1, j))));
    Ok(SegmentSet::new(segments, SetKind::Tree))
}

/// Covering trees for the exceptional shapes: a single segment for `1 x k`
/// and `k x 1`, the two main diagonals for `2 x 2`.
pub fn small_tree(g: &Grid) -> Result<SegmentSet> {
    let (n, m) = (g.n(), g.m());
    if n == 1 && m == 1 {
        return Err(Error::DegenerateGrid("a 1x1 grid cannot be covered by a positive-length segment set minimally".into()));
    }
    if n == 1 || m == 1 {
        return Ok(SegmentSet::new(vec![seg(g.point(0, 0), g.point(n - 1, m - 1))], SetKind::Tree));
    }
    if n == 2 && m == 2 {
        return Ok(SegmentSet::new(
            vec![seg(g.point(0, 0), g.point(1, 1)), seg(g.point(1, 0), g.point(0, 1))],
            SetKind::Tree,
        ));
    }
    Err(Error::Precondition(format!("small tree needs n=1, m=1 or 2x2 (got {n}x{m})")))
}

/// [`small_tree`] where it applies, otherwise [`comb_tree`].
pub fn covering_tree(g: &Grid) -> Result<SegmentSet> {
    let (n, m) = (g.n(), g.m());
    if n == 1 || m == 1 || (n == 2 && m == 2) {
        small_tree(g)
    } else {
        comb_tree(g)
    }
}
