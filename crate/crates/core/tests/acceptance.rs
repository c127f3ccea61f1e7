use std::sync::{Mutex, MutexGuard};
use std::time::{Duration, Instant};

use clap::Parser;
use proptest::prelude::*;

use gridcover::cli::{run, Cli};
use gridcover::construct::{boustrophedon_path, covering_tree, spiral_path};
use gridcover::geometry::{ipt, orientation, rat};
use gridcover::solver::{min_connected_cover_segments, min_path_segments, nonaligned_covers, SolveOptions, SolveStatus};
use gridcover::verify::{
    accounting_certificate, count_path_segments, count_tree_edges, count_tree_segments, is_covering, is_covering_path,
    is_covering_set, is_noncrossing_path, is_noncrossing_set, lb_path, lb_tree_edges, lb_tree_segments,
    nonaligned_bound, Witness,
};
use gridcover::{Error, Grid, Point, Polyline, Rational, SegmentSet};

/// Collects failures so each check prints one PASS/FAIL line.
struct Check {
    name: &'static str,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("PASS {}", self.name);
        } else {
            println!("FAIL {}", self.name);
            for f in &self.failures {
                println!("  {f}");
            }
            panic!("{} failed with {} problem(s)", self.name, self.failures.len());
        }
    }
}

// Timed checks must not share the CPU with the solver checks.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn unit(n: usize, m: usize) -> Grid {
    Grid::unit(n, m).unwrap()
}

#[test]
fn boustrophedon_counts_up_to_20() {
    let _guard = serial();
    let mut c = Check::new("boustrophedon counts, 1 <= m <= n <= 20");
    let start = Instant::now();
    for n in 1..=20 {
        for m in 1..=n {
            let g = unit(n, m);
            if n == 1 {
                c.expect(matches!(boustrophedon_path(&g), Err(Error::DegenerateGrid(_))), || {
                    "1x1 should be reported as degenerate".into()
                });
                continue;
            }
            let p = boustrophedon_path(&g).unwrap();
            c.expect(is_covering_path(&p, &g).covered, || format!("{n}x{m} not covered"));
            c.expect(is_noncrossing_path(&p), || format!("{n}x{m} crosses"));
            c.expect(count_path_segments(&p) == 2 * m - 1, || {
                format!("{n}x{m}: {} segments", count_path_segments(&p))
            });
        }
    }
    let spent = start.elapsed();
    println!("elapsed {spent:?}");
    c.expect(spent < Duration::from_secs(1), || format!("took {spent:?}"));
    c.finish();
}

#[test]
fn spiral_counts_up_to_20() {
    let _guard = serial();
    let mut c = Check::new("spiral counts, 3 <= n <= 20");
    let start = Instant::now();
    for n in 3..=20 {
        let g = unit(n, n);
        let p = spiral_path(&g).unwrap();
        c.expect(is_covering_path(&p, &g).covered, || format!("{n}: not covered"));
        c.expect(count_path_segments(&p) == 2 * n - 2, || {
            format!("{n}: {} segments", count_path_segments(&p))
        });
        c.expect(!is_noncrossing_path(&p), || format!("{n}: unexpectedly noncrossing"));
    }
    let spent = start.elapsed();
    println!("elapsed {spent:?}");
    c.expect(spent < Duration::from_secs(1), || format!("took {spent:?}"));
    c.finish();
}

#[test]
fn tree_constructions_up_to_20() {
    let _guard = serial();
    let mut c = Check::new("covering trees, n, m <= 20");
    for n in 1..=20 {
        for m in 1..=20 {
            let g = unit(n, m);
            let t = match covering_tree(&g) {
                Ok(t) => t,
                Err(e) => {
                    c.expect(n == 1 && m == 1, || format!("{n}x{m}: {e}"));
                    continue;
                }
            };
            c.expect(is_covering_set(&t, &g).covered, || format!("{n}x{m} not covered"));
            match count_tree_segments(&t) {
                Ok(k) => c.expect(k == lb_tree_segments(n, m), || format!("{n}x{m}: {k} segments")),
                Err(e) => c.expect(false, || format!("{n}x{m}: {e}")),
            }
        }
    }
    c.finish();
}

fn certificate_check(c: &mut Check, label: &str, s: &SegmentSet, g: &Grid, exact: Option<usize>) {
    let Ok(edges) = count_tree_edges(s) else {
        return;
    };
    match accounting_certificate(s, g) {
        Ok(a) => {
            c.expect(a.total_bound <= edges, || format!("{label}: bound {} > {edges} edges", a.total_bound));
            if let Some(want) = exact {
                c.expect(a.total_bound == want, || format!("{label}: bound {} != {want}", a.total_bound));
            }
        }
        Err(e) => c.expect(false, || format!("{label}: {e}")),
    }
}

#[test]
fn certificate_bounds_constructions() {
    let _guard = serial();
    let mut c = Check::new("accounting certificate on constructed trees");
    for n in 2..=20 {
        for m in 1..=n {
            let g = unit(n, m);
            let p = boustrophedon_path(&g).unwrap().to_segment_set();
            certificate_check(&mut c, &format!("snake {n}x{m}"), &p, &g, Some(lb_tree_edges(n, m, false)));
        }
    }
    for n in 3..=20 {
        let g = unit(n, n);
        let p = spiral_path(&g).unwrap().to_segment_set();
        certificate_check(&mut c, &format!("spiral {n}"), &p, &g, Some(lb_tree_edges(n, n, true)));
    }
    for n in 1..=20 {
        for m in 1..=20 {
            let g = unit(n, m);
            if let Ok(t) = covering_tree(&g) {
                certificate_check(&mut c, &format!("tree {n}x{m}"), &t, &g, None);
            }
        }
    }
    c.finish();
}

fn solver_case(c: &mut Check, label: &str, res: gridcover::Result<gridcover::solver::SolveResult>, want: usize, g: &Grid) {
    let res = match res {
        Ok(r) => r,
        Err(e) => return c.expect(false, || format!("{label}: {e}")),
    };
    c.expect(res.status == SolveStatus::Exact, || format!("{label}: status {:?}", res.status));
    c.expect(res.minimum == Some(want), || format!("{label}: minimum {:?}, want {want}", res.minimum));
    match &res.witness {
        Some(w) => {
            let report = is_covering(w, g);
            c.expect(report.covered, || format!("{label}: witness does not cover"));
            c.expect(w.segment_count() == want, || format!("{label}: witness has {} segments", w.segment_count()));
        }
        None => c.expect(false, || format!("{label}: no witness")),
    }
}

#[test]
fn solver_reproduces_minima() {
    let _guard = serial();
    let mut c = Check::new("exact solver minima");
    let opts = SolveOptions::default();
    let limit = Duration::from_secs(120);
    for (n, m, k) in [(1, 4, 1), (2, 2, 3), (2, 3, 3), (3, 3, 4), (3, 4, 5), (4, 4, 6)] {
        let g = unit(n, m);
        let t = Instant::now();
        solver_case(&mut c, &format!("path {n}x{m}"), min_path_segments(&g, true, &opts), k, &g);
        c.expect(t.elapsed() < limit, || format!("path {n}x{m} took {:?}", t.elapsed()));
    }
    for (n, m, k) in [(3, 3, 5), (4, 4, 7)] {
        let g = unit(n, m);
        let t = Instant::now();
        let res = min_path_segments(&g, false, &opts);
        if let Ok(r) = &res {
            if let Some(Witness::Path(p)) = &r.witness {
                c.expect(is_noncrossing_path(p), || format!("noncrossing {n}x{m}: witness crosses"));
            }
        }
        solver_case(&mut c, &format!("noncrossing path {n}x{m}"), res, k, &g);
        c.expect(t.elapsed() < limit, || format!("noncrossing {n}x{m} took {:?}", t.elapsed()));
    }
    for (n, m, k) in [(2, 2, 2), (2, 3, 3), (3, 3, 4)] {
        let g = unit(n, m);
        let t = Instant::now();
        let res = min_connected_cover_segments(&g, &opts);
        if let Ok(r) = &res {
            if let Some(w) = &r.witness {
                c.expect(is_covering(w, &g).connected, || format!("tree {n}x{m}: witness disconnected"));
            }
        }
        solver_case(&mut c, &format!("tree segments {n}x{m}"), res, k, &g);
        c.expect(t.elapsed() < limit, || format!("tree {n}x{m} took {:?}", t.elapsed()));
    }
    c.finish();
}

fn small_grids() -> Vec<Grid> {
    let r = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| rat(a, b)).collect::<Vec<Rational>>();
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 1..=3 {
            out.push(unit(n, m));
        }
    }
    out.push(Grid::new(r(&[(0, 1), (1, 1), (3, 1)]), r(&[(0, 1), (2, 1), (3, 1)])).unwrap());
    out.push(Grid::new(r(&[(0, 1), (1, 2), (2, 1)]), r(&[(0, 1), (1, 1), (2, 1)])).unwrap());
    out.push(Grid::new(r(&[(0, 1), (1, 1), (5, 2)]), r(&[(-1, 1), (1, 3)])).unwrap());
    out
}

#[test]
fn nonaligned_covers_respect_bound() {
    let _guard = serial();
    let mut c = Check::new("non-aligned covers are never below the bound");
    let mut total = 0;
    for g in small_grids() {
        let (k, l) = (g.n(), g.m());
        let sets = nonaligned_covers(&g, k + l - 1).unwrap();
        total += sets.len();
        for s in sets {
            let nc = is_noncrossing_set(&s);
            let bound = nonaligned_bound(k, l, nc);
            c.expect(s.len() >= bound, || {
                format!("{k}x{l}: {} segments, noncrossing={nc}, bound {bound}", s.len())
            });
        }
    }
    c.expect(total > 0, || "no covers generated".into());
    c.finish();
}

fn gen_svg(args: &str) -> String {
    let out = run(Cli::try_parse_from(format!("gridcover gen {args} --svg").split_whitespace()).unwrap());
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout
}

#[test]
fn figures_render_deterministically() {
    let _guard = serial();
    let mut c = Check::new("figure drawings");
    for (args, segments, noncrossing) in [
        ("boustrophedon 4 4", 7, true),
        ("spiral 3 3", 4, false),
        ("spiral 5 5", 8, false),
        ("comb 5 3", 4, true),
    ] {
        let a = gen_svg(args);
        let b = gen_svg(args);
        c.expect(a == b, || format!("{args}: output differs between runs"));
        let desc = format!("<desc>segments={segments} noncrossing={noncrossing}</desc>");
        c.expect(a.contains(&desc), || format!("{args}: missing {desc}"));
        c.expect(a.starts_with("<svg"), || format!("{args}: not an svg document"));
    }
    c.finish();
}

// Random small grids: unit spacing or integer gaps in 1..=3.
fn grid_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = Grid> {
    (1..=max_n, 1..=max_m, any::<bool>(), proptest::collection::vec(1i64..=3, 8)).prop_map(|(n, m, uniform, gaps)| {
        if uniform {
            return Grid::unit(n, m).unwrap();
        }
        let coords = |len: usize, offset: usize| {
            let mut acc = 0;
            (0..len)
                .map(|i| {
                    if i > 0 {
                        acc += gaps[(i + offset) % gaps.len()];
                    }
                    rat(acc, 1)
                })
                .collect()
        };
        Grid::new(coords(n, 0), coords(m, 4)).unwrap()
    })
}

fn small_point() -> impl Strategy<Value = Point> {
    (-20i64..=20, 1i64..=4, -20i64..=20, 1i64..=4).prop_map(|(a, b, c, d)| Point::new(rat(a, b), rat(c, d)))
}

fn solve_min(g: &Grid, mode: u8, prune: bool) -> Option<usize> {
    let opts = SolveOptions {
        prune,
        ..SolveOptions::default()
    };
    let res = match mode {
        0 => min_path_segments(g, true, &opts),
        1 => min_path_segments(g, false, &opts),
        _ => min_connected_cover_segments(g, &opts),
    }
    .unwrap();
    assert_eq!(res.status, SolveStatus::Exact);
    res.minimum
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn orientation_is_antisymmetric(p in small_point(), q in small_point(), r in small_point()) {
        prop_assert_eq!(orientation(&p, &q, &r), orientation(&q, &p, &r).reversed());
        prop_assert_eq!(orientation(&p, &q, &r), orientation(&q, &r, &p));
    }

    #[test]
    fn subdividing_edges_keeps_segment_count(
        pts in proptest::collection::vec((-6i64..=6, -6i64..=6), 2..8),
        which in 0usize..8,
        t in 1i64..=4,
    ) {
        let mut verts: Vec<Point> = Vec::new();
        for (x, y) in pts {
            let p = ipt(x, y);
            if verts.last() != Some(&p) {
                verts.push(p);
            }
        }
        prop_assume!(verts.len() >= 2);
        let path = Polyline::new(verts.clone()).unwrap();
        let e = which % (verts.len() - 1);
        let mid = verts[e].lerp(&verts[e + 1], &rat(t, 5));
        let mut split = verts.clone();
        split.insert(e + 1, mid);
        let split = Polyline::new(split).unwrap();
        prop_assert_eq!(count_path_segments(&path), count_path_segments(&split));
    }

    #[test]
    fn bounds_are_transpose_symmetric(n in 1usize..=40, m in 1usize..=40, crossing in any::<bool>()) {
        prop_assert_eq!(lb_path(n, m, crossing), lb_path(m, n, crossing));
        prop_assert_eq!(lb_tree_edges(n, m, crossing), lb_tree_edges(m, n, crossing));
        prop_assert_eq!(lb_tree_segments(n, m), lb_tree_segments(m, n));
        prop_assert_eq!(nonaligned_bound(n, m, crossing), nonaligned_bound(m, n, crossing));
    }

    #[test]
    fn solver_minima_are_transpose_symmetric(g in grid_strategy(3, 3), mode in 0u8..3) {
        let _guard = serial();
        prop_assert_eq!(solve_min(&g, mode, true), solve_min(&g.transposed(), mode, true));
    }

    #[test]
    fn pruning_never_changes_the_minimum(g in grid_strategy(3, 3), mode in 0u8..3) {
        let _guard = serial();
        prop_assume!(!(mode == 1 && g.len() == 9));
        prop_assert_eq!(solve_min(&g, mode, true), solve_min(&g, mode, false));
    }
}
