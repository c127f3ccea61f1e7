//! Dihedral symmetries of a grid that are induced by affine maps.
//!
//! An index map `(i, j) -> (i', j')` built from a transpose and axis flips
//! is kept only if it comes from an affine transformation of the actual
//! coordinates, so collinearity and betweenness are preserved exactly.

use num_rational::BigRational;

use super::instance::{Instance, Mask};
use crate::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Element {
    transpose: bool,
    flip_x: bool,
    flip_y: bool,
}

impl Element {
    fn apply(&self, n: usize, m: usize, i: usize, j: usize) -> (usize, usize) {
        let (mut a, mut b) = if self.transpose { (j, i) } else { (i, j) };
        if self.flip_x {
            a = n - 1 - a;
        }
        if self.flip_y {
            b = m - 1 - b;
        }
        (a, b)
    }
}

// Does u[k] -> v[k] extend to x -> alpha * x + beta?
fn affine_related(u: &[BigRational], v: &[BigRational]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.len() < 2 {
        return true;
    }
    let du = &u[1] - &u[0];
    let dv = &v[1] - &v[0];
    u.iter()
        .zip(v)
        .all(|(a, b)| (b - &v[0]) * &du == (a - &u[0]) * &dv)
}

fn is_affine(g: &Grid, e: Element) -> bool {
    let (n, m) = (g.n(), g.m());
    if e.transpose && n != m {
        return false;
    }
    // new column coordinate as a function of the source axis index
    let (src_for_x, src_for_y) = if e.transpose { (g.ys(), g.xs()) } else { (g.xs(), g.ys()) };
    let image = |coords: &[BigRational], flip: bool| -> Vec<BigRational> {
        let len = coords.len();
        (0..len).map(|k| coords[if flip { len - 1 - k } else { k }].clone()).collect()
    };
    affine_related(src_for_x, &image(g.xs(), e.flip_x)) && affine_related(src_for_y, &image(g.ys(), e.flip_y))
}

/// Point permutations (by row-major index) of all valid symmetries,
/// identity included.
pub(crate) fn point_symmetries(g: &Grid) -> Vec<Vec<usize>> {
    let (n, m) = (g.n(), g.m());
    let mut out = Vec::new();
    for bits in 0..8u8 {
        let e = Element {
            transpose: bits & 1 == 1,
            flip_x: bits & 2 == 2,
            flip_y: bits & 4 == 4,
        };
        if !is_affine(g, e) {
            continue;
        }
        let mut perm = vec![0; n * m];
        for j in 0..m {
            for i in 0..n {
                let (a, b) = e.apply(n, m, i, j);
                perm[g.index(i, j)] = g.index(a, b);
            }
        }
        out.push(perm);
    }
    out
}

pub(crate) fn map_mask(perm: &[usize], mask: Mask) -> Mask {
    let mut out = 0;
    for (p, &q) in perm.iter().enumerate() {
        if mask >> p & 1 == 1 {
            out |= 1 << q;
        }
    }
    out
}

/// Slot-id filter for the first slot: keep only orbit minima.
pub(crate) fn first_slot_representatives(inst: &Instance, perms: &[Vec<usize>]) -> Vec<bool> {
    let nl = inst.lines.len();
    let np = inst.points.len();
    let mut keep = vec![true; nl + np + 1];
    for (li, l) in inst.lines.iter().enumerate() {
        for perm in perms {
            let image = map_mask(perm, l.mask);
            match inst.line_by_mask.get(&image) {
                Some(&other) if other < li => keep[li] = false,
                _ => {}
            }
        }
    }
    for p in 0..np {
        if perms.iter().any(|perm| perm[p] < p) {
            keep[nl + p] = false;
        }
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    #[test]
    fn group_orders() {
        assert_eq!(point_symmetries(&Grid::unit(3, 3).unwrap()).len(), 8);
        assert_eq!(point_symmetries(&Grid::unit(4, 3).unwrap()).len(), 4);
        assert_eq!(point_symmetries(&Grid::unit(1, 1).unwrap()).len(), 8);
        let g = Grid::new(vec![rat(0, 1), rat(1, 1), rat(3, 1)], vec![rat(0, 1), rat(1, 1), rat(3, 1)]).unwrap();
        // only the transpose survives
        assert_eq!(point_symmetries(&g).len(), 2);
        let g = Grid::new(vec![rat(0, 1), rat(2, 1), rat(4, 1)], vec![rat(0, 1), rat(1, 1), rat(2, 1)]).unwrap();
        // scaled axes are affine images of each other
        assert_eq!(point_symmetries(&g).len(), 8);
    }

    #[test]
    fn representatives_for_3x3() {
        let g = Grid::unit(3, 3).unwrap();
        let inst = Instance::new(&g).unwrap();
        let keep = first_slot_representatives(&inst, &point_symmetries(&g));
        let lines = keep[..inst.lines.len()].iter().filter(|&&k| k).count();
        // classes: outer row/col, middle row/col, main diagonal, short diagonal, knight line
        assert_eq!(lines, 5);
        let points = keep[inst.lines.len()..inst.lines.len() + 9].iter().filter(|&&k| k).count();
        assert_eq!(points, 3);
    }
}
