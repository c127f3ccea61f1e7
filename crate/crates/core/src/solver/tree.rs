//! Search for the fewest segments with a connected covering union.
//!
//! Segments on rich lines may be as long as needed, so a choice of lines
//! and connector points is feasible iff it covers the grid and can be made
//! connected: always with a connector (a hub through its point can cross
//! every chosen line), otherwise iff the chosen lines form a connected
//! graph under "not parallel".

use num_bigint::BigInt;

use super::instance::{Instance, Mask};
use super::{min_gap, SolveOptions, SolveResult, SolveStatus};
use crate::error::Result;
use crate::geometry::rat;
use crate::verify::{count_tree_edges, is_covering_set, merged_segment_count, union_connected, Witness};
use crate::{Grid, Line, Point, Rational, Segment, SegmentSet, SetKind};

const DIRECTIONS: [(i64, i64); 12] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (1, 2),
    (2, 1),
    (1, -2),
    (2, -1),
    (1, 3),
    (3, 1),
    (2, 5),
    (5, -3),
];

struct Search<'a> {
    inst: &'a Instance,
    caps: Vec<Mask>,
    max_cap: u32,
    prune: bool,
    budget: u64,
    nodes: u64,
    chosen: Vec<usize>,
    found: Option<SegmentSet>,
    unresolved: u64,
    aborted: bool,
}

impl Search<'_> {
    fn dfs(&mut self, from: usize, left: usize, covered: Mask) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
        }
        if self.aborted || self.found.is_some() {
            return;
        }
        let uncovered = self.inst.full & !covered;
        if left == 0 {
            if uncovered == 0 {
                self.leaf();
            }
            return;
        }
        if self.prune && uncovered.count_ones() > left as u32 * self.max_cap {
            return;
        }
        for id in from..self.caps.len() {
            self.chosen.push(id);
            self.dfs(id + 1, left - 1, covered | self.caps[id]);
            self.chosen.pop();
            if self.aborted || self.found.is_some() {
                return;
            }
        }
    }

    fn leaf(&mut self) {
        let nl = self.inst.lines.len();
        let lines: Vec<usize> = self.chosen.iter().copied().filter(|&c| c < nl).collect();
        let points: Vec<usize> = self.chosen.iter().filter(|&&c| c >= nl).map(|&c| c - nl).collect();
        if points.is_empty() && !self.parallel_graph_connected(&lines) {
            return;
        }
        match build(self.inst, &lines, &points) {
            Some(set) => self.found = Some(set),
            None => self.unresolved += 1,
        }
    }

    fn parallel_graph_connected(&self, lines: &[usize]) -> bool {
        spanning_tree(self.inst, lines).is_some()
    }
}

/// BFS tree over "not parallel" among `lines`, as index pairs into `lines`.
fn spanning_tree(inst: &Instance, lines: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut seen = vec![false; lines.len()];
    let mut edges = Vec::new();
    let mut queue = vec![0];
    seen[0] = true;
    while let Some(u) = queue.pop() {
        for v in 0..lines.len() {
            if !seen[v] && inst.inter[lines[u]][lines[v]].is_some() {
                seen[v] = true;
                edges.push((u, v));
                queue.push(v);
            }
        }
    }
    seen.iter().all(|&s| s).then_some(edges)
}

fn hull_segment(pts: &[Point]) -> Option<Segment> {
    let lo = pts.iter().min()?;
    let hi = pts.iter().max()?;
    Segment::new(lo.clone(), hi.clone()).ok()
}

fn direction_line(p: &Point, d: (i64, i64)) -> Line {
    let q = Point::new(&p.x + rat(d.0, 1), &p.y + rat(d.1, 1));
    Line::through(p, &q).expect("distinct points")
}

fn build(inst: &Instance, lines: &[usize], points: &[usize]) -> Option<SegmentSet> {
    let mut extra: Vec<Vec<Point>> = vec![Vec::new(); lines.len()];
    let mut segments = Vec::new();
    if let Some((&hub_point, others)) = points.split_first() {
        let p = inst.points[hub_point].clone();
        let gap = min_gap(&inst.grid);
        let mut used: Vec<Line> = lines.iter().map(|&l| inst.lines[l].line.clone()).collect();
        let pick = |used: &mut Vec<Line>, at: &Point| -> Option<((i64, i64), Line)> {
            let (d, l) = DIRECTIONS
                .iter()
                .map(|&d| (d, direction_line(at, d)))
                .find(|(_, l)| used.iter().all(|u| !u.is_parallel(l)))?;
            used.push(l.clone());
            Some((d, l))
        };
        let (d, hub) = pick(&mut used, &p)?;
        let mut hub_pts = vec![p.clone()];
        for (i, &l) in lines.iter().enumerate() {
            let x = hub.intersection(&inst.lines[l].line).ok()??;
            extra[i].push(x.clone());
            hub_pts.push(x);
        }
        for &q in others {
            let q = inst.points[q].clone();
            let (e, spoke) = pick(&mut used, &q)?;
            let end = if hub.contains(&q) {
                Point::new(&q.x + rat(e.0, 3) * &gap, &q.y + rat(e.1, 3) * &gap)
            } else {
                let h = hub.intersection(&spoke).ok()??;
                hub_pts.push(h.clone());
                h
            };
            segments.push(Segment::new(q, end).ok()?);
        }
        if hub_pts.iter().all(|h| *h == p) {
            let half: Rational = &gap / Rational::from_integer(BigInt::from(2));
            hub_pts.push(Point::new(&p.x + &half * rat(d.0, 1), &p.y + &half * rat(d.1, 1)));
        }
        segments.push(hull_segment(&hub_pts)?);
    } else if lines.len() > 1 {
        for (u, v) in spanning_tree(inst, lines)? {
            let id = inst.inter[lines[u]][lines[v]]?.id as usize;
            extra[u].push(inst.meet_points[id].clone());
            extra[v].push(inst.meet_points[id].clone());
        }
    }
    for (i, &l) in lines.iter().enumerate() {
        let mut pts: Vec<Point> = inst.lines[l].pts.iter().map(|&p| inst.points[p].clone()).collect();
        pts.extend(extra[i].iter().cloned());
        segments.push(hull_segment(&pts)?);
    }
    let mut set = SegmentSet::new(segments, SetKind::General);
    if count_tree_edges(&SegmentSet::new(set.segments.clone(), SetKind::Tree)).is_ok() {
        set.kind = SetKind::Tree;
    }
    let ok = is_covering_set(&set, &inst.grid).covered
        && union_connected(&set.segments)
        && merged_segment_count(&set.segments) == lines.len() + points.len();
    ok.then_some(set)
}

fn single_point(g: &Grid) -> SolveResult {
    let p = g.point(0, 0);
    let q = Point::new(&p.x + Rational::from_integer(1.into()), p.y.clone());
    let seg = Segment::new(p, q).expect("distinct points");
    SolveResult {
        minimum: Some(1),
        witness: Some(Witness::Set(SegmentSet::new(vec![seg], SetKind::Tree))),
        pattern: None,
        nodes_explored: 1,
        unresolved: 0,
        budget_exhausted: false,
        status: SolveStatus::Exact,
    }
}

pub(crate) fn solve(g: &Grid, opts: &SolveOptions) -> Result<SolveResult> {
    if g.len() == 1 {
        return Ok(single_point(g));
    }
    let inst = Instance::new(g)?;
    let mut caps: Vec<Mask> = inst.lines.iter().map(|l| l.mask).collect();
    caps.extend((0..inst.points.len()).map(|p| 1 << p));
    let max_cap = inst.lines.iter().map(|l| l.len() as u32).max().unwrap_or(1);
    let mut search = Search {
        inst: &inst,
        caps,
        max_cap,
        prune: opts.prune,
        budget: opts.budget.unwrap_or(u64::MAX),
        nodes: 0,
        chosen: Vec::new(),
        found: None,
        unresolved: 0,
        aborted: false,
    };
    let mut unresolved_below = 0;
    for s in 1..=opts.k_max_for(g) {
        let before = search.unresolved;
        search.dfs(0, s, 0);
        if let Some(set) = search.found.take() {
            let exact = unresolved_below == 0 && !search.aborted;
            return Ok(SolveResult {
                minimum: Some(s),
                witness: Some(Witness::Set(set)),
                pattern: None,
                nodes_explored: search.nodes,
                unresolved: unresolved_below,
                budget_exhausted: search.aborted,
                status: if exact { SolveStatus::Exact } else { SolveStatus::UpperBoundOnly },
            });
        }
        unresolved_below += search.unresolved - before;
        if search.aborted {
            break;
        }
    }
    Ok(SolveResult {
        minimum: None,
        witness: None,
        pattern: None,
        nodes_explored: search.nodes,
        unresolved: unresolved_below,
        budget_exhausted: search.aborted,
        status: SolveStatus::UpperBoundOnly,
    })
}
