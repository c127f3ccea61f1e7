//! Precomputed incidence data shared by the searches.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::{Grid, Line, Point};

pub(crate) type Mask = u128;
pub(crate) const MAX_POINTS: usize = 128;

/// A rich line with its grid points in lexicographic order.
#[derive(Debug, Clone)]
pub(crate) struct LineData {
    pub line: Line,
    pub pts: Vec<usize>,
    pub mask: Mask,
    /// `prefix[j]` is the mask of the first `j` points.
    pub prefix: Vec<Mask>,
}

/// Intersection of line `i` with line `j`, seen from line `i`.
///
/// `pos` locates the point among the sorted points of line `i`: `2c + 1`
/// if it is the `c`-th point, `2c` if it falls strictly between points
/// `c - 1` and `c` (or outside them).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Meet {
    pub id: u32,
    pub pos: u32,
}

pub(crate) struct Instance {
    pub grid: Grid,
    pub points: Vec<Point>,
    pub full: Mask,
    pub lines: Vec<LineData>,
    pub inter: Vec<Vec<Option<Meet>>>,
    pub meet_points: Vec<Point>,
    pub line_by_mask: HashMap<Mask, usize>,
}

impl LineData {
    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn range(&self, lo_pos: u32, hi_pos: u32) -> Mask {
        let jlo = (lo_pos / 2) as usize;
        let jhi = (hi_pos.div_ceil(2)) as usize;
        if jhi <= jlo {
            0
        } else {
            self.prefix[jhi] & !self.prefix[jlo]
        }
    }

    /// Points at or after `pos`.
    pub fn above(&self, pos: u32) -> Mask {
        self.range(pos, 2 * self.len() as u32)
    }

    /// Points at or before `pos`.
    pub fn below(&self, pos: u32) -> Mask {
        self.range(0, pos)
    }
}

impl Instance {
    pub fn new(grid: &Grid) -> Result<Self> {
        let points = grid.points();
        if points.len() > MAX_POINTS {
            return Err(Error::Precondition(format!(
                "the exact solver handles at most {MAX_POINTS} points (got {})",
                points.len()
            )));
        }
        let mut by_line: HashMap<Line, Vec<usize>> = HashMap::new();
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                let l = Line::through(&points[a], &points[b])?;
                let e = by_line.entry(l).or_default();
                for p in [a, b] {
                    if !e.contains(&p) {
                        e.push(p);
                    }
                }
            }
        }
        let mut lines: Vec<LineData> = by_line
            .into_iter()
            .map(|(line, mut pts)| {
                pts.sort_by(|&a, &b| points[a].cmp(&points[b]));
                let mut prefix = vec![0 as Mask];
                for &p in &pts {
                    let last = *prefix.last().unwrap();
                    prefix.push(last | (1 << p));
                }
                let mask = *prefix.last().unwrap();
                LineData { line, pts, mask, prefix }
            })
            .collect();
        lines.sort_by(|a, b| a.line.cmp(&b.line));

        let mut ids: HashMap<Point, u32> = HashMap::new();
        let mut meet_points = Vec::new();
        let mut inter = vec![vec![None; lines.len()]; lines.len()];
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let Some(x) = lines[i].line.intersection(&lines[j].line)? else {
                    continue;
                };
                let id = *ids.entry(x.clone()).or_insert_with(|| {
                    meet_points.push(x.clone());
                    (meet_points.len() - 1) as u32
                });
                inter[i][j] = Some(Meet { id, pos: position(&lines[i], &points, &x) });
                inter[j][i] = Some(Meet { id, pos: position(&lines[j], &points, &x) });
            }
        }
        let line_by_mask = lines.iter().enumerate().map(|(i, l)| (l.mask, i)).collect();
        let full = if points.len() == MAX_POINTS {
            Mask::MAX
        } else {
            (1 << points.len()) - 1
        };
        Ok(Instance {
            grid: grid.clone(),
            points,
            full,
            lines,
            inter,
            meet_points,
            line_by_mask,
        })
    }

    pub fn mask_points(&self, mask: Mask) -> impl Iterator<Item = &Point> + '_ {
        (0..self.points.len())
            .filter(move |&p| mask >> p & 1 == 1)
            .map(move |p| &self.points[p])
    }
}

fn position(line: &LineData, points: &[Point], x: &Point) -> u32 {
    let before = line.pts.iter().filter(|&&p| &points[p] < x).count() as u32;
    let on = line.pts.iter().any(|&p| &points[p] == x);
    2 * before + u32::from(on)
}
