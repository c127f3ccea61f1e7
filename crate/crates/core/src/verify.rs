//! Machine checks for witnesses and the closed-form lower bounds.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{on_segment, segments_intersect, segments_properly_cross};
use crate::grid::{is_axis_aligned, Alignment};
use crate::{Grid, Point, Polyline, Segment, SegmentSet, SetKind};

/// Either kind of drawing a witness can be.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Path(Polyline),
    Set(SegmentSet),
}

impl Witness {
    pub fn segments(&self) -> Vec<Segment> {
        match self {
            Witness::Path(p) => p.edges(),
            Witness::Set(s) => s.segments.clone(),
        }
    }

    /// Segment count in the sense of maximal straight pieces.
    pub fn segment_count(&self) -> usize {
        match self {
            Witness::Path(p) => count_path_segments(p),
            Witness::Set(s) => merged_segment_count(&s.segments),
        }
    }

    /// The drawing as a segment set (paths keep their edge list).
    pub fn as_set(&self) -> SegmentSet {
        match self {
            Witness::Path(p) => p.to_segment_set(),
            Witness::Set(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub covered: bool,
    #[serde(with = "crate::io::point_vec")]
    pub uncovered_points: Vec<Point>,
    pub segment_count: usize,
    pub edge_count: usize,
    pub noncrossing: bool,
    pub connected: bool,
}

pub fn uncovered_points(segments: &[Segment], g: &Grid) -> Vec<Point> {
    g.points()
        .into_iter()
        .filter(|p| !segments.iter().any(|s| on_segment(p, s)))
        .collect()
}

pub fn is_covering(w: &Witness, g: &Grid) -> CoverReport {
    match w {
        Witness::Path(p) => is_covering_path(p, g),
        Witness::Set(s) => is_covering_set(s, g),
    }
}

pub fn is_covering_path(p: &Polyline, g: &Grid) -> CoverReport {
    let edges = p.edges();
    let uncovered = uncovered_points(&edges, g);
    CoverReport {
        covered: uncovered.is_empty(),
        uncovered_points: uncovered,
        segment_count: count_path_segments(p),
        edge_count: edges.len(),
        noncrossing: no_proper_crossings(&edges),
        connected: true,
    }
}

pub fn is_covering_set(s: &SegmentSet, g: &Grid) -> CoverReport {
    let uncovered = uncovered_points(&s.segments, g);
    CoverReport {
        covered: uncovered.is_empty(),
        uncovered_points: uncovered,
        segment_count: merged_segment_count(&s.segments),
        edge_count: s.segments.len(),
        noncrossing: no_proper_crossings(&s.segments),
        connected: union_connected(&s.segments),
    }
}

/// Edges after merging maximal runs of consecutive collinear edges.
pub fn count_path_segments(p: &Polyline) -> usize {
    let edges = p.edges();
    1 + edges.windows(2).filter(|w| !w[0].is_collinear_with(&w[1])).count()
}

fn no_proper_crossings(segments: &[Segment]) -> bool {
    segments
        .iter()
        .enumerate()
        .all(|(i, a)| segments[i + 1..].iter().all(|b| !segments_properly_cross(a, b)))
}

pub fn is_noncrossing(w: &Witness) -> bool {
    no_proper_crossings(&w.segments())
}

pub fn is_noncrossing_path(p: &Polyline) -> bool {
    no_proper_crossings(&p.edges())
}

pub fn is_noncrossing_set(s: &SegmentSet) -> bool {
    no_proper_crossings(&s.segments)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }

    fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Whether the union of the segments is a connected point set.
pub fn union_connected(segments: &[Segment]) -> bool {
    let mut dsu = Dsu::new(segments.len());
    for (i, a) in segments.iter().enumerate() {
        for (j, b) in segments.iter().enumerate().skip(i + 1) {
            if segments_intersect(a, b) {
                dsu.union(i, j);
            }
        }
    }
    dsu.components() <= 1
}

/// Number of maximal straight pieces: collinear segments sharing a point
/// are merged, transitively.
pub fn merged_segment_count(segments: &[Segment]) -> usize {
    let mut dsu = Dsu::new(segments.len());
    for (i, a) in segments.iter().enumerate() {
        for (j, b) in segments.iter().enumerate().skip(i + 1) {
            if a.is_collinear_with(b) && segments_intersect(a, b) {
                dsu.union(i, j);
            }
        }
    }
    dsu.components()
}

pub fn count_tree_segments(s: &SegmentSet) -> Result<usize> {
    if !union_connected(&s.segments) {
        return Err(Error::NotATree("segment union is disconnected".into()));
    }
    Ok(merged_segment_count(&s.segments))
}

/// Edge count of the graph on segment endpoints with one edge per segment;
/// the graph must be connected and acyclic.
pub fn count_tree_edges(s: &SegmentSet) -> Result<usize> {
    let mut ids: BTreeMap<&Point, usize> = BTreeMap::new();
    for seg in &s.segments {
        for p in [seg.p(), seg.q()] {
            let next = ids.len();
            ids.entry(p).or_insert(next);
        }
    }
    let mut dsu = Dsu::new(ids.len());
    for seg in &s.segments {
        if !dsu.union(ids[seg.p()], ids[seg.q()]) {
            return Err(Error::NotATree("endpoint graph has a cycle".into()));
        }
    }
    if dsu.components() > 1 {
        return Err(Error::NotATree("endpoint graph is disconnected".into()));
    }
    Ok(s.segments.len())
}

/// Minimum segments of a covering path of the `n x m` grid.
pub fn lb_path(n: usize, m: usize, allow_crossing: bool) -> usize {
    let k = n.min(m);
    if allow_crossing && n == m && n >= 3 {
        2 * k - 2
    } else {
        2 * k - 1
    }
}

/// Minimum edges of a covering tree; numerically the same as [`lb_path`].
pub fn lb_tree_edges(n: usize, m: usize, allow_crossing: bool) -> usize {
    lb_path(n, m, allow_crossing)
}

/// Minimum segments of a covering tree, crossing or not.
pub fn lb_tree_segments(n: usize, m: usize) -> usize {
    let k = n.min(m);
    if n == 1 || m == 1 || (n == 2 && m == 2) {
        k
    } else {
        k + 1
    }
}

/// Minimum size of a cover of a `k x l` grid by segments that are neither
/// horizontal nor vertical.
pub fn nonaligned_bound(k: usize, l: usize, noncrossing: bool) -> usize {
    if k == 1 || l == 1 || noncrossing {
        k + l - 1
    } else {
        k + l - 2
    }
}

/// Row/column accounting behind the tree edge lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Accounting {
    /// Rows with no point on a horizontal segment.
    pub r1: Vec<usize>,
    /// Columns with no point on a vertical segment.
    pub c1: Vec<usize>,
    pub k: usize,
    pub l: usize,
    pub horiz_count: usize,
    pub vert_count: usize,
    pub noncrossing: bool,
    pub residual_bound: usize,
    pub total_bound: usize,
}

pub fn accounting_certificate(s: &SegmentSet, g: &Grid) -> Result<Accounting> {
    if s.kind == SetKind::General {
        return Err(Error::Precondition("accounting needs a tree or a realized path".into()));
    }
    let missing = uncovered_points(&s.segments, g).len();
    if missing > 0 {
        return Err(Error::NotCovering(missing));
    }
    let (n, m) = (g.n(), g.m());
    let mut rows_h = BTreeSet::new();
    let mut cols_v = BTreeSet::new();
    for seg in &s.segments {
        let dir = is_axis_aligned(seg);
        if dir == Alignment::Neither {
            continue;
        }
        for j in 0..m {
            for i in 0..n {
                if on_segment(&g.point(i, j), seg) {
                    match dir {
                        Alignment::Horizontal => rows_h.insert(j),
                        _ => cols_v.insert(i),
                    };
                }
            }
        }
    }
    let r1: Vec<usize> = (0..m).filter(|j| !rows_h.contains(j)).collect();
    let c1: Vec<usize> = (0..n).filter(|i| !cols_v.contains(i)).collect();
    let (k, l) = (c1.len(), r1.len());
    let noncrossing = is_noncrossing_set(s);
    let (residual_bound, total_bound) = if r1.is_empty() || c1.is_empty() {
        let by_rows = if r1.is_empty() { 2 * m - 1 } else { 0 };
        let by_cols = if c1.is_empty() { 2 * n - 1 } else { 0 };
        (0, by_rows.max(by_cols))
    } else {
        let residual = nonaligned_bound(k, l, noncrossing);
        (residual, residual + (m - l) + (n - k))
    };
    Ok(Accounting {
        r1,
        c1,
        k,
        l,
        horiz_count: m - l,
        vert_count: n - k,
        noncrossing,
        residual_bound,
        total_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{boustrophedon_path, comb_tree, small_tree, spiral_path};
    use crate::geometry::ipt;

    fn unit(n: usize, m: usize) -> Grid {
        Grid::unit(n, m).unwrap()
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(ipt(a.0, a.1), ipt(b.0, b.1)).unwrap()
    }

    fn path(v: &[(i64, i64)]) -> Polyline {
        Polyline::new(v.iter().map(|&(x, y)| ipt(x, y)).collect()).unwrap()
    }

    #[test]
    fn covering_examples() {
        let r = is_covering_path(&boustrophedon_path(&unit(3, 3)).unwrap(), &unit(3, 3));
        assert!(r.covered && r.uncovered_points.is_empty());
        let s = SegmentSet::new(vec![seg((0, 0), (1, 1))], SetKind::General);
        let r = is_covering_set(&s, &unit(2, 2));
        assert!(!r.covered);
        assert_eq!(r.uncovered_points, vec![ipt(1, 0), ipt(0, 1)]);
        let r = is_covering_set(&SegmentSet::new(vec![], SetKind::General), &unit(1, 1));
        assert!(!r.covered);
        assert_eq!(r.uncovered_points, vec![ipt(0, 0)]);
    }

    #[test]
    fn path_segment_counts() {
        assert_eq!(count_path_segments(&path(&[(0, 0), (1, 0), (2, 0)])), 1);
        assert_eq!(count_path_segments(&path(&[(0, 0), (1, 0), (1, 1)])), 2);
        let nine = path(&[(0, 1), (0, -1), (3, 2), (0, 2), (2, 0)]);
        assert_eq!(count_path_segments(&nine), 4);
        assert!(is_covering_path(&nine, &unit(3, 3)).covered);
        // reversal along the same line is still one straight piece
        assert_eq!(count_path_segments(&path(&[(0, 0), (2, 0), (1, 0)])), 1);
    }

    #[test]
    fn crossing_examples() {
        assert!(is_noncrossing_path(&boustrophedon_path(&unit(4, 4)).unwrap()));
        assert!(!is_noncrossing_path(&spiral_path(&unit(3, 3)).unwrap()));
        let s = SegmentSet::new(vec![seg((0, 0), (1, 0)), seg((0, 1), (1, 1))], SetKind::General);
        assert!(is_noncrossing_set(&s));
        // a path that backtracks over itself overlaps
        assert!(!is_noncrossing_path(&path(&[(0, 0), (2, 0), (1, 0)])));
    }

    #[test]
    fn tree_segment_counts() {
        assert_eq!(count_tree_segments(&comb_tree(&unit(3, 3)).unwrap()).unwrap(), 4);
        let s = SegmentSet::new(
            vec![seg((0, 0), (1, 0)), seg((1, 0), (2, 0)), seg((1, 0), (1, 1))],
            SetKind::Tree,
        );
        assert_eq!(count_tree_segments(&s).unwrap(), 2);
        assert_eq!(count_tree_segments(&small_tree(&unit(2, 2)).unwrap()).unwrap(), 2);
        let apart = SegmentSet::new(vec![seg((0, 0), (1, 0)), seg((0, 1), (1, 1))], SetKind::Tree);
        assert!(matches!(count_tree_segments(&apart), Err(Error::NotATree(_))));
        // overlapping collinear pieces merge
        let s = SegmentSet::new(vec![seg((0, 0), (2, 0)), seg((1, 0), (3, 0))], SetKind::Tree);
        assert_eq!(count_tree_segments(&s).unwrap(), 1);
        // collinear but separated pieces do not
        let s = SegmentSet::new(
            vec![seg((0, 0), (1, 0)), seg((2, 0), (3, 0)), seg((0, 0), (3, 3)), seg((3, 3), (3, 0))],
            SetKind::Tree,
        );
        assert_eq!(count_tree_segments(&s).unwrap(), 4);
    }

    #[test]
    fn tree_edge_counts() {
        let b = boustrophedon_path(&unit(3, 3)).unwrap().to_segment_set();
        assert_eq!(count_tree_edges(&b).unwrap(), 5);
        let s = spiral_path(&unit(3, 3)).unwrap().to_segment_set();
        assert_eq!(count_tree_edges(&s).unwrap(), 4);
        let one = SegmentSet::new(vec![seg((0, 0), (1, 0))], SetKind::Tree);
        assert_eq!(count_tree_edges(&one).unwrap(), 1);
        let cycle = path(&[(0, 0), (1, 0), (1, 1), (0, 0)]).to_segment_set();
        assert!(matches!(count_tree_edges(&cycle), Err(Error::NotATree(_))));
        let apart = SegmentSet::new(vec![seg((0, 0), (1, 0)), seg((0, 1), (1, 1))], SetKind::Tree);
        assert!(matches!(count_tree_edges(&apart), Err(Error::NotATree(_))));
        // comb spine pieces end at the teeth
        assert_eq!(count_tree_edges(&comb_tree(&unit(5, 3)).unwrap()).unwrap(), 5);
    }

    #[test]
    fn closed_form_bounds() {
        assert_eq!(lb_path(3, 3, true), 4);
        assert_eq!(lb_path(3, 3, false), 5);
        assert_eq!(lb_path(4, 7, true), 7);
        assert_eq!(lb_tree_edges(5, 5, true), 8);
        assert_eq!(lb_tree_edges(5, 5, false), 9);
        assert_eq!(lb_tree_edges(2, 2, true), 3);
        assert_eq!(lb_tree_segments(3, 3), 4);
        assert_eq!(lb_tree_segments(2, 2), 2);
        assert_eq!(lb_tree_segments(1, 9), 1);
        assert_eq!(nonaligned_bound(3, 3, false), 4);
        assert_eq!(nonaligned_bound(3, 3, true), 5);
        assert_eq!(nonaligned_bound(1, 5, false), 5);
    }

    #[test]
    fn crossing_saves_at_most_one() {
        for n in 1..15 {
            for m in 1..15 {
                let d = lb_path(n, m, false) - lb_path(n, m, true);
                assert_eq!(d, usize::from(n == m && n >= 3));
                assert_eq!(lb_path(n, m, true), lb_path(m, n, true));
                assert_eq!(lb_tree_segments(n, m), lb_tree_segments(m, n));
            }
        }
    }

    #[test]
    fn accounting_examples() {
        let g = unit(3, 3);
        let b = boustrophedon_path(&g).unwrap().to_segment_set();
        let a = accounting_certificate(&b, &g).unwrap();
        assert!(a.r1.is_empty());
        assert_eq!(a.c1, vec![1]);
        assert_eq!(a.total_bound, 5);
        assert!(a.total_bound <= count_tree_edges(&b).unwrap());

        let s = spiral_path(&g).unwrap().to_segment_set();
        let a = accounting_certificate(&s, &g).unwrap();
        assert_eq!((a.k, a.l), (2, 2));
        assert_eq!(a.residual_bound, 2);
        assert_eq!(a.total_bound, 4);
        assert_eq!(count_tree_edges(&s).unwrap(), 4);

        let g = unit(5, 3);
        let c = comb_tree(&g).unwrap();
        let a = accounting_certificate(&c, &g).unwrap();
        assert!(a.total_bound <= count_tree_edges(&c).unwrap());
        assert_eq!(a.total_bound, 5);
    }

    #[test]
    fn accounting_rejects_non_covers() {
        let g = unit(2, 2);
        let s = SegmentSet::new(vec![seg((0, 0), (1, 1))], SetKind::Tree);
        assert_eq!(accounting_certificate(&s, &g), Err(Error::NotCovering(2)));
        let s = SegmentSet::new(vec![seg((0, 0), (1, 1))], SetKind::General);
        assert!(matches!(accounting_certificate(&s, &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn report_json_has_every_field() {
        let r = is_covering_set(&SegmentSet::new(vec![seg((0, 0), (1, 1))], SetKind::General), &unit(2, 2));
        let v = serde_json::to_value(&r).unwrap();
        for k in ["covered", "uncovered_points", "segment_count", "edge_count", "noncrossing", "connected"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["uncovered_points"], serde_json::json!([["1", "0"], ["0", "1"]]));
    }
}
