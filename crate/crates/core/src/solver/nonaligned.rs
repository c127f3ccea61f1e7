//! Exhaustive generation of covers made only of non-axis-aligned segments.

use super::instance::{Instance, Mask};
use super::min_gap;
use crate::error::Result;
use crate::geometry::rat;
use crate::{Grid, Point, Segment, SegmentSet, SetKind};

/// Covers of `g` by at most `max_size` pieces, where a piece is either a
/// sub-segment between two grid points of a non-axis rich line or a short
/// sloped segment covering a single point. Sets are listed once each, in
/// index order, and stop growing as soon as they cover; every piece adds a
/// point not covered by the pieces before it.
pub fn nonaligned_covers(g: &Grid, max_size: usize) -> Result<Vec<SegmentSet>> {
    let inst = Instance::new(g)?;
    let gap = min_gap(g);
    let mut pieces: Vec<(Segment, Mask)> = Vec::new();
    for l in inst.lines.iter().filter(|l| !l.line.is_horizontal() && !l.line.is_vertical()) {
        for a in 0..l.len() {
            for b in a + 1..l.len() {
                let seg = Segment::new(inst.points[l.pts[a]].clone(), inst.points[l.pts[b]].clone())?;
                pieces.push((seg, l.prefix[b + 1] & !l.prefix[a]));
            }
        }
    }
    for (i, p) in inst.points.iter().enumerate() {
        let q = Point::new(&p.x + rat(1, 5) * &gap, &p.y + rat(3, 7) * &gap);
        pieces.push((Segment::new(p.clone(), q)?, 1 << i));
    }
    let max_cap = pieces.iter().map(|(_, m)| m.count_ones()).max().unwrap_or(1);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect(&pieces, inst.full, max_cap, 0, max_size, 0, &mut chosen, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn collect(
    pieces: &[(Segment, Mask)],
    full: Mask,
    max_cap: u32,
    from: usize,
    left: usize,
    covered: Mask,
    chosen: &mut Vec<usize>,
    out: &mut Vec<SegmentSet>,
) {
    if covered == full {
        let segments = chosen.iter().map(|&i| pieces[i].0.clone()).collect();
        out.push(SegmentSet::new(segments, SetKind::General));
        return;
    }
    if (full & !covered).count_ones() > left as u32 * max_cap {
        return;
    }
    for i in from..pieces.len() {
        if pieces[i].1 & !covered == 0 {
            continue;
        }
        chosen.push(i);
        collect(pieces, full, max_cap, i + 1, left - 1, covered | pieces[i].1, chosen, out);
        chosen.pop();
    }
}
