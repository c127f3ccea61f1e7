//! Orthogonal grids, unit or with arbitrary strictly increasing spacing.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Point, Segment};

/// `n` columns at `xs`, `m` rows at `ys`. Points are enumerated row-major:
/// index `j * n + i` is column `i` of row `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct Grid {
    xs: Vec<BigRational>,
    ys: Vec<BigRational>,
    unit: bool,
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    #[serde(with = "crate::io::rational_vec")]
    xs: Vec<BigRational>,
    #[serde(with = "crate::io::rational_vec")]
    ys: Vec<BigRational>,
}

impl TryFrom<GridRepr> for Grid {
    type Error = Error;

    fn try_from(r: GridRepr) -> Result<Self> {
        Grid::new(r.xs, r.ys)
    }
}

impl From<Grid> for GridRepr {
    fn from(g: Grid) -> Self {
        GridRepr { xs: g.xs, ys: g.ys }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Alignment {
    Horizontal,
    Vertical,
    Neither,
}

pub fn is_axis_aligned(s: &Segment) -> Alignment {
    if s.p().y == s.q().y {
        Alignment::Horizontal
    } else if s.p().x == s.q().x {
        Alignment::Vertical
    } else {
        Alignment::Neither
    }
}

fn unit_spaced(v: &[BigRational]) -> bool {
    v.windows(2).all(|w| &w[1] - &w[0] == BigRational::one())
}

fn check_increasing(v: &[BigRational], what: &str) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidGrid(format!("{what} is empty")));
    }
    if v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(format!("{what} is not strictly increasing")));
    }
    Ok(())
}

impl Grid {
    pub fn new(xs: Vec<BigRational>, ys: Vec<BigRational>) -> Result<Self> {
        check_increasing(&xs, "xs")?;
        check_increasing(&ys, "ys")?;
        let unit = unit_spaced(&xs) && unit_spaced(&ys);
        Ok(Grid { xs, ys, unit })
    }

    /// `V(n, m)`: columns `0..n`, rows `0..m`.
    pub fn unit(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidGrid(format!("{n}x{m} grid has no points")));
        }
        let seq = |k: usize| (0..k).map(|i| BigRational::from_integer(i.into())).collect();
        Ok(Grid {
            xs: seq(n),
            ys: seq(m),
            unit: true,
        })
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn m(&self) -> usize {
        self.ys.len()
    }

    pub fn xs(&self) -> &[BigRational] {
        &self.xs
    }

    pub fn ys(&self) -> &[BigRational] {
        &self.ys
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.n() * self.m()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize, j: usize) -> Point {
        Point::new(self.xs[i].clone(), self.ys[j].clone())
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n() + i
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.m())
            .flat_map(|j| (0..self.n()).map(move |i| (i, j)))
            .map(|(i, j)| self.point(i, j))
            .collect()
    }

    /// Column and row index of a grid point, if `p` is one.
    pub fn locate(&self, p: &Point) -> Option<(usize, usize)> {
        let i = self.xs.binary_search(&p.x).ok()?;
        let j = self.ys.binary_search(&p.y).ok()?;
        Some((i, j))
    }

    pub fn transposed(&self) -> Grid {
        Grid {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
            unit: self.unit,
        }
    }

    fn require_two_by_two(&self, what: &str) -> Result<()> {
        if self.n() < 2 || self.m() < 2 {
            return Err(Error::DegenerateGrid(format!(
                "{what} needs n, m >= 2 (got {}x{})",
                self.n(),
                self.m()
            )));
        }
        Ok(())
    }

    /// Points of the first and last row and column, each once, row-major.
    pub fn border_points(&self) -> Result<Vec<Point>> {
        self.require_two_by_two("border")?;
        let (n, m) = (self.n(), self.m());
        Ok((0..m)
            .flat_map(|j| (0..n).map(move |i| (i, j)))
            .filter(|&(i, j)| i == 0 || j == 0 || i == n - 1 || j == m - 1)
            .map(|(i, j)| self.point(i, j))
            .collect())
    }

    /// Bottom-left, bottom-right, top-left, top-right.
    pub fn corners(&self) -> Result<[Point; 4]> {
        self.require_two_by_two("corners")?;
        let (n, m) = (self.n() - 1, self.m() - 1);
        Ok([self.point(0, 0), self.point(n, 0), self.point(0, m), self.point(n, m)])
    }

    /// Column coordinate for any integer index; indices outside the grid
    /// continue with the gap of the nearest pair of columns (unit gap for a
    /// single column).
    pub fn x_ext(&self, i: i64) -> BigRational {
        extend(&self.xs, i)
    }

    pub fn y_ext(&self, j: i64) -> BigRational {
        extend(&self.ys, j)
    }

    /// Subgrid on the given column and row indices (each sorted, nonempty).
    pub fn subgrid(&self, cols: &[usize], rows: &[usize]) -> Result<Grid> {
        Grid::new(
            cols.iter().map(|&i| self.xs[i].clone()).collect(),
            rows.iter().map(|&j| self.ys[j].clone()).collect(),
        )
    }
}

fn extend(v: &[BigRational], i: i64) -> BigRational {
    let len = v.len() as i64;
    if (0..len).contains(&i) {
        return v[i as usize].clone();
    }
    let gap = |a: usize, b: usize| {
        if v.len() >= 2 {
            &v[b] - &v[a]
        } else {
            BigRational::one()
        }
    };
    if i < 0 {
        let g = gap(0, 1.min(v.len() - 1));
        &v[0] - g * BigRational::from_integer((-i).into())
    } else {
        let last = v.len() - 1;
        let g = gap(last.saturating_sub(1), last);
        let steps = BigRational::from_integer((i - len + 1).into());
        &v[last] + g * steps
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            xs: vec![BigRational::zero()],
            ys: vec![BigRational::zero()],
            unit: true,
        }
    }
}
