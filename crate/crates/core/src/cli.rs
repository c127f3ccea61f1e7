//! Command-line front end. Argument parsing lives here so the commands can
//! be driven from tests; `main` only forwards the outcome to the process.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::construct::{boustrophedon_path, comb_tree, small_tree, spiral_path};
use crate::error::{Error, Result};
use crate::solver::{self, SolveOptions, SolveResult, SolveStatus};
use crate::verify::{
    accounting_certificate, count_tree_edges, is_covering, lb_path, lb_tree_edges, lb_tree_segments, Witness,
};
use crate::{Grid, Polyline, SegmentSet, SetKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gridcover", version, about = "Minimum-link covering paths and trees for grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a construction and write it as JSON or SVG.
    Gen(GenArgs),
    /// Check a witness file.
    Verify(VerifyArgs),
    /// Run the exact solver.
    Solve(SolveArgs),
    /// Print the closed-form minima.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Columns.
    #[arg(value_name = "N")]
    pub n_pos: Option<usize>,
    /// Rows.
    #[arg(value_name = "M")]
    pub m_pos: Option<usize>,
    #[arg(short = 'n', value_name = "N")]
    pub n: Option<usize>,
    #[arg(short = 'm', value_name = "M")]
    pub m: Option<usize>,
    /// Grid JSON (`{"xs": [...], "ys": [...]}`) instead of a unit grid.
    #[arg(long)]
    pub grid_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Boustrophedon,
    Spiral,
    Comb,
    SmallTree,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, conflicts_with = "json")]
    pub svg: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Path,
    PathNoncrossing,
    TreeSegments,
    /// All minima side by side.
    Report,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, value_enum, default_value = "path")]
    pub mode: SolveMode,
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Node budget; exceeding it reports UPPER_BOUND_ONLY.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Disable capacity pruning.
    #[arg(long)]
    pub no_prune: bool,
    /// Lift the small-grid guard.
    #[arg(long)]
    pub force: bool,
    /// Write the witness here (JSON, or SVG with --svg).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub json: bool,
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, reason: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {reason}\n"),
            code,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    Path,
    Tree,
    General,
}

/// A grid together with a path or segment set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub grid: Grid,
    pub kind: WitnessKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polyline: Option<Polyline>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segment_set: Option<SegmentSet>,
}

impl WitnessFile {
    pub fn new(grid: Grid, w: Witness) -> Self {
        match w {
            Witness::Path(p) => WitnessFile {
                grid,
                kind: WitnessKind::Path,
                polyline: Some(p),
                segment_set: None,
            },
            Witness::Set(s) => WitnessFile {
                grid,
                kind: if s.kind == SetKind::Tree {
                    WitnessKind::Tree
                } else {
                    WitnessKind::General
                },
                polyline: None,
                segment_set: Some(s),
            },
        }
    }

    pub fn witness(&self) -> Result<Witness> {
        match (self.kind, &self.polyline, &self.segment_set) {
            (WitnessKind::Path, Some(p), None) => Ok(Witness::Path(p.clone())),
            (WitnessKind::Tree | WitnessKind::General, None, Some(s)) => Ok(Witness::Set(s.clone())),
            _ => Err(Error::Parse("kind must match exactly one of polyline / segment_set".into())),
        }
    }
}

impl GridArgs {
    pub fn resolve(&self) -> Result<Grid> {
        if let Some(path) = &self.grid_file {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            return serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()));
        }
        let n = self.n.or(self.n_pos).ok_or_else(|| Error::Parse("missing n".into()))?;
        let m = self.m.or(self.m_pos).ok_or_else(|| Error::Parse("missing m".into()))?;
        Grid::unit(n, m)
    }
}

fn write_or_print(out: &Option<PathBuf>, text: String) -> Outcome {
    match out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Outcome::ok(String::new()),
            Err(e) => Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display())),
        },
        None => Outcome::ok(text),
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Solve(a) => cmd_solve(&a),
        Command::Bounds(a) => cmd_bounds(&a),
    }
}

pub fn generate(kind: GenKind, g: &Grid) -> Result<Witness> {
    Ok(match kind {
        GenKind::Boustrophedon => Witness::Path(boustrophedon_path(g)?),
        GenKind::Spiral => Witness::Path(spiral_path(g)?),
        GenKind::Comb => Witness::Set(comb_tree(g)?),
        GenKind::SmallTree => Witness::Set(small_tree(g)?),
    })
}

pub fn cmd_gen(a: &GenArgs) -> Outcome {
    let g = match a.grid.resolve() {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let w = match generate(a.kind, &g) {
        Ok(w) => w,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let text = if a.svg {
        let title = format!("{:?} {}x{}", a.kind, g.n(), g.m()).to_lowercase();
        crate::svg::render(&g, &w, &title)
    } else {
        pretty(&WitnessFile::new(g, w))
    };
    write_or_print(&a.out, text)
}

pub fn verify_file(text: &str) -> Outcome {
    let file: WitnessFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("cannot parse witness: {e}")),
    };
    let w = match file.witness() {
        Ok(w) => w,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let report = is_covering(&w, &file.grid);
    let mut problems = Vec::new();
    if !report.covered {
        let pts: Vec<String> = report.uncovered_points.iter().map(|p| p.to_string()).collect();
        problems.push(format!("uncovered points: {}", pts.join(" ")));
    }
    let as_set = w.as_set();
    let tree_edges = count_tree_edges(&as_set).ok();
    let accounting = match &w {
        Witness::Path(_) => accounting_certificate(&as_set, &file.grid).ok(),
        Witness::Set(s) if s.kind == SetKind::Tree => {
            if !report.connected {
                problems.push("segment union is disconnected".into());
            }
            accounting_certificate(s, &file.grid).ok()
        }
        Witness::Set(_) => None,
    };
    let valid = problems.is_empty();
    let body = json!({
        "valid": valid,
        "kind": file.kind,
        "report": report,
        "tree_edges": tree_edges,
        "accounting": accounting,
        "problems": problems,
    });
    Outcome {
        stdout: pretty(&body),
        stderr: problems.iter().map(|p| format!("{p}\n")).collect(),
        code: if valid { EXIT_OK } else { EXIT_INVALID },
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Outcome {
    match fs::read_to_string(&a.file) {
        Ok(text) => verify_file(&text),
        Err(e) => Outcome::fail(EXIT_INPUT, format!("{}: {e}", a.file.display())),
    }
}

fn verdict(res: &SolveResult, formula: usize) -> &'static str {
    if res.minimum == Some(formula) && res.status == SolveStatus::Exact {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

pub fn cmd_solve(a: &SolveArgs) -> Outcome {
    let g = match a.grid.resolve() {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let opts = SolveOptions {
        k_max: a.k_max,
        budget: a.budget,
        jobs: a.jobs,
        prune: !a.no_prune,
    };
    if a.mode == SolveMode::Report {
        return match solver::solve_report(&g, &opts, a.force) {
            Ok(rows) => {
                let all = rows.iter().all(|r| r.matches);
                let mut out = pretty(&rows);
                out.push_str(if all { "ALL MATCH\n" } else { "MISMATCH\n" });
                Outcome {
                    stdout: out,
                    stderr: String::new(),
                    code: if all { EXIT_OK } else { EXIT_BUDGET },
                }
            }
            Err(e) => Outcome::fail(EXIT_INPUT, e),
        };
    }
    if g.len() > solver::REPORT_MAX_POINTS && !a.force {
        return Outcome::fail(
            EXIT_INPUT,
            format!("{}x{} exceeds the small-grid guard; pass --force", g.n(), g.m()),
        );
    }
    let (n, m) = (g.n(), g.m());
    let (res, formula) = match a.mode {
        SolveMode::Path => (solver::min_path_segments(&g, true, &opts), lb_path(n, m, true)),
        SolveMode::PathNoncrossing => (solver::min_path_segments(&g, false, &opts), lb_path(n, m, false)),
        _ => (solver::min_connected_cover_segments(&g, &opts), lb_tree_segments(n, m)),
    };
    let res = match res {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    if let (Some(path), Some(w)) = (&a.out, &res.witness) {
        let text = if a.svg {
            crate::svg::render(&g, w, &format!("solver {n}x{m}"))
        } else {
            pretty(&WitnessFile::new(g.clone(), w.clone()))
        };
        if let Err(e) = fs::write(path, text) {
            return Outcome::fail(EXIT_INPUT, format!("{}: {e}", path.display()));
        }
    }
    let v = verdict(&res, formula);
    let body = json!({ "n": n, "m": m, "mode": format!("{:?}", a.mode), "formula": formula, "verdict": v, "result": res });
    let mut stdout = pretty(&body);
    stdout.push_str(&format!(
        "{} {}\n",
        res.minimum.map_or("none".to_string(), |k| k.to_string()),
        v
    ));
    Outcome {
        stdout,
        stderr: String::new(),
        code: if res.status == SolveStatus::Exact { EXIT_OK } else { EXIT_BUDGET },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub n: usize,
    pub m: usize,
    pub path_crossing: usize,
    pub path_noncrossing: usize,
    pub tree_edges_crossing: usize,
    pub tree_edges_noncrossing: usize,
    pub tree_segments: usize,
    pub degenerate: bool,
}

pub fn bounds(n: usize, m: usize) -> Bounds {
    Bounds {
        n,
        m,
        path_crossing: lb_path(n, m, true),
        path_noncrossing: lb_path(n, m, false),
        tree_edges_crossing: lb_tree_edges(n, m, true),
        tree_edges_noncrossing: lb_tree_edges(n, m, false),
        tree_segments: lb_tree_segments(n, m),
        degenerate: n == 1 && m == 1,
    }
}

pub fn cmd_bounds(a: &BoundsArgs) -> Outcome {
    let g = match a.grid.resolve() {
        Ok(g) => g,
        Err(e) => return Outcome::fail(EXIT_INPUT, e),
    };
    let b = bounds(g.n(), g.m());
    if a.json {
        return Outcome::ok(pretty(&b));
    }
    let mut s = format!("{}x{}\n", b.n, b.m);
    s.push_str(&format!("path_crossing          {}\n", b.path_crossing));
    s.push_str(&format!("path_noncrossing       {}\n", b.path_noncrossing));
    s.push_str(&format!("tree_edges_crossing    {}\n", b.tree_edges_crossing));
    s.push_str(&format!("tree_edges_noncrossing {}\n", b.tree_edges_noncrossing));
    s.push_str(&format!("tree_segments          {}\n", b.tree_segments));
    if b.degenerate {
        s.push_str("note: 1x1 is degenerate; a single point needs no segment but any drawing has at least one\n");
    }
    Outcome::ok(s)
}
