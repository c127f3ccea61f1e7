//! Iterative-deepening search over slot patterns for covering paths.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use log::{debug, info};

use super::instance::{Instance, Mask};
use super::realize::realize;
use super::symmetry::{first_slot_representatives, point_symmetries};
use super::{min_gap, Slot, SlotPattern, SolveOptions, SolveResult, SolveStatus};
use crate::error::Result;
use crate::geometry::segments_properly_cross;
use crate::verify::Witness;
use crate::{Grid, Point, Polyline, Rational, Segment};

/// How a slot's relaxed coverage was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Cover {
    /// Both ends are turn points on neighbouring rich lines.
    Fixed,
    /// One end fixed; covers the points at or before it along the line.
    Below,
    /// One end fixed; covers the points at or after it.
    Above,
    /// Both ends free.
    Whole,
    Connector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SlotRef {
    Rich(usize),
    Point(usize),
    Free,
}

pub(crate) fn decode(inst: &Instance, id: u32) -> SlotRef {
    let id = id as usize;
    let nl = inst.lines.len();
    if id < nl {
        SlotRef::Rich(id)
    } else if id < nl + inst.points.len() {
        SlotRef::Point(id - nl)
    } else {
        SlotRef::Free
    }
}

struct Shared {
    nodes: AtomicU64,
    budget: u64,
    aborted: AtomicBool,
    best_task: AtomicUsize,
}

struct Found {
    path: Polyline,
    slots: Vec<u32>,
}

struct TaskOutcome {
    found: Option<Found>,
    unresolved: u64,
}

struct Dfs<'a> {
    inst: &'a Instance,
    shared: &'a Shared,
    task: usize,
    k: usize,
    crossing: bool,
    prune: bool,
    gap: &'a Rational,
    slot_count: u32,
    slots: Vec<u32>,
    covers: Vec<Mask>,
    kinds: Vec<Cover>,
    pending_nodes: u64,
    found: Option<Found>,
    unresolved: u64,
    stop: bool,
}

const FLUSH: u64 = 1024;

impl<'a> Dfs<'a> {
    fn node(&mut self) -> bool {
        self.pending_nodes += 1;
        if self.pending_nodes >= FLUSH {
            self.flush();
        }
        if self.shared.aborted.load(Ordering::Relaxed) || self.shared.best_task.load(Ordering::Relaxed) < self.task {
            self.stop = true;
        }
        !self.stop
    }

    fn flush(&mut self) {
        let total = self.shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed) + self.pending_nodes;
        self.pending_nodes = 0;
        if total > self.shared.budget {
            self.shared.aborted.store(true, Ordering::Relaxed);
        }
    }

    fn capacity(&self, id: u32) -> Mask {
        match decode(self.inst, id) {
            SlotRef::Rich(l) => self.inst.lines[l].mask,
            SlotRef::Point(p) => 1 << p,
            SlotRef::Free => 0,
        }
    }

    fn adjacent_ok(&self, prev: u32, next: u32) -> bool {
        match (decode(self.inst, prev), decode(self.inst, next)) {
            (SlotRef::Rich(a), SlotRef::Rich(b)) => a != b && self.inst.inter[a][b].is_some(),
            (SlotRef::Free, SlotRef::Free) => false,
            (SlotRef::Point(p), SlotRef::Point(q)) => p != q,
            _ => true,
        }
    }

    /// Coverage options of slot `i` once both neighbours are known.
    fn finalize(&self, i: usize, right: Option<u32>) -> Vec<(Mask, Cover)> {
        let rich = |id: u32| match decode(self.inst, id) {
            SlotRef::Rich(l) => Some(l),
            _ => None,
        };
        let a = match decode(self.inst, self.slots[i]) {
            SlotRef::Rich(a) => a,
            SlotRef::Point(p) => return vec![(1 << p, Cover::Connector)],
            SlotRef::Free => return vec![(0, Cover::Connector)],
        };
        let line = &self.inst.lines[a];
        let meet = |other: Option<usize>| other.map(|b| self.inst.inter[a][b].expect("adjacent rich lines meet"));
        let left = meet(if i > 0 { rich(self.slots[i - 1]) } else { None });
        let right = meet(right.and_then(rich));
        let enough = |m: Mask| m.count_ones() >= 2;
        match (left, right) {
            (Some(x), Some(y)) => {
                if x.id == y.id {
                    return vec![];
                }
                let m = line.range(x.pos.min(y.pos), x.pos.max(y.pos));
                if enough(m) {
                    vec![(m, Cover::Fixed)]
                } else {
                    vec![]
                }
            }
            (Some(x), None) | (None, Some(x)) => [(line.below(x.pos), Cover::Below), (line.above(x.pos), Cover::Above)]
                .into_iter()
                .filter(|&(m, _)| enough(m))
                .collect(),
            (None, None) => vec![(line.mask, Cover::Whole)],
        }
    }

    fn capacity_ok(&self, uncovered: Mask, remaining: usize) -> bool {
        let need = uncovered.count_ones() as usize;
        if need == 0 {
            return true;
        }
        if remaining == 0 {
            return false;
        }
        let mut top = [0usize; 16];
        let r = remaining.min(top.len());
        for l in &self.inst.lines {
            let c = (l.mask & uncovered).count_ones() as usize;
            if c > top[r - 1] {
                let mut j = r - 1;
                while j > 0 && top[j - 1] < c {
                    top[j] = top[j - 1];
                    j -= 1;
                }
                top[j] = c;
            }
        }
        let cap: usize = top[..r].iter().map(|&c| c.max(1)).sum::<usize>() + remaining.saturating_sub(r);
        need <= cap
    }

    /// `slots[..i]` are chosen, `slots[..i - 1]` have coverage in `covered`.
    fn extend(&mut self, i: usize, covered: Mask) {
        if !self.node() {
            return;
        }
        let full = self.inst.full;
        if i == self.k {
            for (m, c) in self.finalize(i - 1, None) {
                if covered | m == full {
                    self.covers.push(m);
                    self.kinds.push(c);
                    self.leaf();
                    self.covers.pop();
                    self.kinds.pop();
                    if self.stop {
                        return;
                    }
                }
            }
            return;
        }
        let prev = self.slots[i - 1];
        for s in 0..self.slot_count {
            if !self.adjacent_ok(prev, s) {
                continue;
            }
            if i == self.k - 1 && matches!(decode(self.inst, s), SlotRef::Free) {
                continue;
            }
            let cap = self.capacity(s);
            for (m, c) in self.finalize(i - 1, Some(s)) {
                let cov = covered | m;
                if self.prune && !self.capacity_ok(full & !cov & !cap, self.k - 1 - i) {
                    continue;
                }
                self.slots.push(s);
                self.covers.push(m);
                self.kinds.push(c);
                self.extend(i + 1, cov);
                self.slots.pop();
                self.covers.pop();
                self.kinds.pop();
                if self.stop {
                    return;
                }
            }
        }
    }

    fn leaf(&mut self) {
        if !self.crossing && !self.noncrossing_possible() {
            return;
        }
        match realize(self.inst, &self.slots, &self.covers, &self.kinds, self.crossing, self.gap) {
            Some(path) => {
                self.found = Some(Found {
                    path,
                    slots: self.slots.clone(),
                });
                self.stop = true;
            }
            None => {
                debug!("unrealized candidate {:?}", self.slots);
                self.unresolved += 1;
            }
        }
    }

    /// Rejects patterns whose unavoidable parts already cross.
    fn noncrossing_possible(&self) -> bool {
        let inst = self.inst;
        let k = self.slots.len();
        let mut extents: Vec<Segment> = Vec::new();
        for i in 0..k {
            let SlotRef::Rich(a) = decode(inst, self.slots[i]) else {
                continue;
            };
            let others = (0..k).filter(|&j| j != i).fold(0, |acc, j| acc | self.covers[j]);
            let required = self.covers[i] & !others;
            let mut pts: Vec<Point> = inst.mask_points(required).cloned().collect();
            for j in [i.wrapping_sub(1), i + 1] {
                if j < k {
                    if let SlotRef::Rich(b) = decode(inst, self.slots[j]) {
                        let id = inst.inter[a][b].expect("adjacent rich lines meet").id;
                        pts.push(inst.meet_points[id as usize].clone());
                    }
                }
            }
            let (Some(lo), Some(hi)) = (pts.iter().min(), pts.iter().max()) else {
                continue;
            };
            if let Ok(s) = Segment::new(lo.clone(), hi.clone()) {
                extents.push(s);
            }
        }
        extents
            .iter()
            .enumerate()
            .all(|(i, a)| extents[i + 1..].iter().all(|b| !segments_properly_cross(a, b)))
    }
}

fn run_level(
    inst: &Instance,
    tasks: &[u32],
    k: usize,
    crossing: bool,
    opts: &SolveOptions,
    shared: &Shared,
    gap: &Rational,
) -> Vec<Option<TaskOutcome>> {
    let slot_count = (inst.lines.len() + inst.points.len() + 1) as u32;
    let results: Mutex<Vec<Option<TaskOutcome>>> = Mutex::new((0..tasks.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    shared.best_task.store(usize::MAX, Ordering::Relaxed);
    let worker = || loop {
        let t = next.fetch_add(1, Ordering::Relaxed);
        if t >= tasks.len() {
            break;
        }
        if shared.best_task.load(Ordering::Relaxed) < t || shared.aborted.load(Ordering::Relaxed) {
            continue;
        }
        let mut dfs = Dfs {
            inst,
            shared,
            task: t,
            k,
            crossing,
            prune: opts.prune,
            gap,
            slot_count,
            slots: vec![tasks[t]],
            covers: Vec::new(),
            kinds: Vec::new(),
            pending_nodes: 0,
            found: None,
            unresolved: 0,
            stop: false,
        };
        if k == 1 {
            dfs.node();
            for (m, c) in dfs.finalize(0, None) {
                if m == inst.full {
                    dfs.covers.push(m);
                    dfs.kinds.push(c);
                    dfs.leaf();
                }
            }
        } else {
            let cap = dfs.capacity(tasks[t]);
            if !opts.prune || dfs.capacity_ok(inst.full & !cap, k - 1) {
                dfs.extend(1, 0);
            }
        }
        dfs.flush();
        if dfs.found.is_some() {
            shared.best_task.fetch_min(t, Ordering::Relaxed);
        }
        let interrupted = dfs.stop && dfs.found.is_none();
        if !interrupted || shared.aborted.load(Ordering::Relaxed) {
            results.lock().unwrap()[t] = Some(TaskOutcome {
                found: dfs.found,
                unresolved: dfs.unresolved,
            });
        }
    };
    let jobs = opts.jobs.max(1);
    if jobs == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(worker);
            }
        });
    }
    results.into_inner().unwrap()
}

pub(crate) fn pattern_of(inst: &Instance, slots: &[u32]) -> SlotPattern {
    SlotPattern {
        slots: slots
            .iter()
            .map(|&id| match decode(inst, id) {
                SlotRef::Rich(l) => Slot::Rich(inst.lines[l].line.clone()),
                SlotRef::Point(p) => Slot::PointConnector(inst.points[p].clone()),
                SlotRef::Free => Slot::FreeConnector,
            })
            .collect(),
    }
}

pub(crate) fn solve(g: &Grid, crossing: bool, opts: &SolveOptions) -> Result<SolveResult> {
    let inst = Instance::new(g)?;
    let perms = point_symmetries(g);
    let keep = first_slot_representatives(&inst, &perms);
    let free = (inst.lines.len() + inst.points.len()) as u32;
    let tasks: Vec<u32> = (0..free).filter(|&s| keep[s as usize]).collect();
    let gap = min_gap(g);
    let shared = Shared {
        nodes: AtomicU64::new(0),
        budget: opts.budget.unwrap_or(u64::MAX),
        aborted: AtomicBool::new(false),
        best_task: AtomicUsize::new(usize::MAX),
    };
    let mut unresolved = 0;
    let k_max = opts.k_max_for(g);
    for k in 1..=k_max {
        let outcomes = run_level(&inst, &tasks, k, crossing, opts, &shared, &gap);
        let aborted = shared.aborted.load(Ordering::Relaxed);
        let best = outcomes.into_iter().flatten().map(|o| {
            (o.unresolved, o.found)
        });
        let mut level_unresolved = 0;
        let mut witness = None;
        for (u, f) in best {
            level_unresolved += u;
            if witness.is_none() {
                witness = f;
            }
        }
        info!(
            "k={k}: {} nodes so far, {level_unresolved} unresolved, witness {}",
            shared.nodes.load(Ordering::Relaxed),
            witness.is_some()
        );
        if let Some(found) = witness {
            let exact = unresolved == 0 && !aborted;
            return Ok(SolveResult {
                minimum: Some(k),
                pattern: Some(pattern_of(&inst, &found.slots)),
                witness: Some(Witness::Path(found.path)),
                nodes_explored: shared.nodes.load(Ordering::Relaxed),
                unresolved,
                budget_exhausted: aborted,
                status: if exact { SolveStatus::Exact } else { SolveStatus::UpperBoundOnly },
            });
        }
        unresolved += level_unresolved;
        if aborted {
            break;
        }
    }
    Ok(SolveResult {
        minimum: None,
        witness: None,
        pattern: None,
        nodes_explored: shared.nodes.load(Ordering::Relaxed),
        unresolved,
        budget_exhausted: shared.aborted.load(Ordering::Relaxed),
        status: SolveStatus::UpperBoundOnly,
    })
}
