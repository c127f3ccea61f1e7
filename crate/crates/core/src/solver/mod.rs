//! Exhaustive search for exact minima on small grids.
//!
//! Path segments that cover two or more grid points lie on rich lines; the
//! others are connectors that cover one point or none. The path search
//! enumerates slot patterns over these choices with a relaxed coverage
//! model, then realizes surviving patterns as exact polylines and
//! re-verifies them. A level counts as exhausted only when every relaxed
//! candidate was either realized or ruled out.

mod instance;
mod nonaligned;
mod path;
mod realize;
mod symmetry;
mod tree;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verify::{lb_path, lb_tree_edges, lb_tree_segments, Witness};
use crate::{Grid, Line, Point};

pub use nonaligned::nonaligned_covers;

/// A line through at least two grid points together with those points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RichLine {
    pub line: Line,
    #[serde(with = "crate::io::point_vec")]
    pub covered: Vec<Point>,
}

/// One segment of a slot pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Slot {
    Rich(Line),
    PointConnector(#[serde(with = "crate::io::point")] Point),
    FreeConnector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotPattern {
    pub slots: Vec<Slot>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveStatus {
    Exact,
    UpperBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    /// Smallest segment count realized by a verified witness, if any.
    pub minimum: Option<usize>,
    pub witness: Option<Witness>,
    /// Slot pattern of the witness (path searches only).
    pub pattern: Option<SlotPattern>,
    pub nodes_explored: u64,
    /// Relaxed candidates below `minimum` that could be neither realized nor
    /// refuted; nonzero forces `UpperBoundOnly`.
    pub unresolved: u64,
    pub budget_exhausted: bool,
    pub status: SolveStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest segment count to try; defaults to `2 * min(n, m) - 1`.
    pub k_max: Option<usize>,
    /// Abort after this many search nodes.
    pub budget: Option<u64>,
    /// Worker threads; `0` and `1` both mean sequential.
    pub jobs: usize,
    /// Covering-capacity pruning (disable only to cross-check it).
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            k_max: None,
            budget: None,
            jobs: 1,
            prune: true,
        }
    }
}

impl SolveOptions {
    fn k_max_for(&self, g: &Grid) -> usize {
        self.k_max.unwrap_or(2 * g.n().min(g.m()) - 1).max(1)
    }
}

pub fn rich_lines(g: &Grid) -> Result<Vec<RichLine>> {
    if g.len() < 2 {
        return Err(Error::DegenerateGrid("a single point lies on no rich line".into()));
    }
    let inst = instance::Instance::new(g)?;
    Ok(inst
        .lines
        .iter()
        .map(|l| RichLine {
            line: l.line.clone(),
            covered: l.pts.iter().map(|&p| inst.points[p].clone()).collect(),
        })
        .collect())
}

/// Minimum number of segments of a covering path.
pub fn min_path_segments(g: &Grid, allow_crossing: bool, opts: &SolveOptions) -> Result<SolveResult> {
    if opts.k_max == Some(0) {
        return Err(Error::Precondition("k_max must be at least 1".into()));
    }
    if g.len() == 1 {
        return Ok(trivial_single_point(g));
    }
    path::solve(g, allow_crossing, opts)
}

/// Minimum number of segments whose union is connected and covers `g`.
pub fn min_connected_cover_segments(g: &Grid, opts: &SolveOptions) -> Result<SolveResult> {
    if opts.k_max == Some(0) {
        return Err(Error::Precondition("k_max must be at least 1".into()));
    }
    tree::solve(g, opts)
}

// Any drawing has a segment, and one short segment covers a lone point.
fn trivial_single_point(g: &Grid) -> SolveResult {
    let p = g.point(0, 0);
    let q = Point::new(&p.x + crate::geometry::rat(1, 1), p.y.clone());
    SolveResult {
        minimum: Some(1),
        witness: Some(Witness::Path(crate::Polyline::new(vec![p, q]).expect("distinct vertices"))),
        pattern: None,
        nodes_explored: 0,
        unresolved: 0,
        budget_exhausted: false,
        status: SolveStatus::Exact,
    }
}

/// One row of [`solve_report`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub quantity: String,
    pub solved: Option<usize>,
    pub formula: usize,
    pub status: SolveStatus,
    pub matches: bool,
}

/// Largest grid [`solve_report`] accepts without `force`.
pub const REPORT_MAX_POINTS: usize = 25;

/// All exact minima next to the closed-form values.
///
/// The tree-edge row has no search of its own: it reports the crossing path
/// minimum, which is a tree with that many edges.
pub fn solve_report(g: &Grid, opts: &SolveOptions, force: bool) -> Result<Vec<ReportRow>> {
    if g.len() > REPORT_MAX_POINTS && !force {
        return Err(Error::Precondition(format!(
            "grid has {} points; the report is limited to {REPORT_MAX_POINTS} without force",
            g.len()
        )));
    }
    let (n, m) = (g.n(), g.m());
    let row = |quantity: &str, res: &SolveResult, formula: usize| ReportRow {
        quantity: quantity.into(),
        solved: res.minimum,
        formula,
        status: res.status,
        matches: res.minimum == Some(formula) && res.status == SolveStatus::Exact,
    };
    let mut rows = Vec::new();
    let crossing = min_path_segments(g, true, opts)?;
    let noncrossing = min_path_segments(g, false, opts)?;
    let tree = min_connected_cover_segments(g, opts)?;
    rows.push(row("path_crossing", &crossing, lb_path(n, m, true)));
    rows.push(row("path_noncrossing", &noncrossing, lb_path(n, m, false)));
    rows.push(row("tree_segments", &tree, lb_tree_segments(n, m)));
    rows.push(row("tree_edges_crossing", &crossing, lb_tree_edges(n, m, true)));
    Ok(rows)
}

/// Smallest positive gap between consecutive coordinates on either axis.
pub(crate) fn min_gap(g: &Grid) -> crate::Rational {
    let gaps = |v: &[crate::Rational]| v.windows(2).map(|w| &w[1] - &w[0]).collect::<Vec<_>>();
    let mut all = gaps(g.xs());
    all.extend(gaps(g.ys()));
    all.into_iter().min().unwrap_or_else(|| crate::geometry::rat(1, 1))
}
