//! Brute-force reference implementations.
//!
//! Each function here is written directly from the definitions it checks and
//! shares nothing with the fast paths beyond the primitives in [`crate::geom`].
//! They are slow on purpose and exist to cross-check the library.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::combinations::for_each_with_first;
use crate::geom::{
    convex_hull, hull_location, orientation, point_in_open_segment, Location, Orientation, Point,
    PointSet,
};

/// Largest collinear subset size by scanning every pair and counting the
/// points on its line.
pub fn max_collinear_brute(set: &PointSet) -> usize {
    let pts = set.points();
    if pts.len() <= 2 {
        return pts.len();
    }
    let mut best = 2;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let on_line = pts
                .iter()
                .filter(|q| orientation(&pts[i], &pts[j], q) == Orientation::Collinear)
                .count();
            best = best.max(on_line);
        }
    }
    best
}

/// Visibility matrix from the definition: `i` and `j` see each other iff no
/// third point lies in the open segment between them.
pub fn visibility_matrix_brute(set: &PointSet) -> Vec<Vec<bool>> {
    let pts = set.points();
    let n = pts.len();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let blocked = (0..n)
                .any(|k| k != i && k != j && point_in_open_segment(&pts[k], &pts[i], &pts[j]));
            m[i][j] = !blocked;
            m[j][i] = !blocked;
        }
    }
    m
}

/// Direct check of mutual separation: every line through two points of
/// `upper` passes strictly above each point of `lower`, and every line through
/// two points of `lower` passes strictly below each point of `upper`.
pub fn above_below_direct(upper: &[Point], lower: &[Point]) -> bool {
    lines_strictly_above(upper, lower) && lines_strictly_below(lower, upper)
}

fn lines_strictly_above(line_pts: &[Point], others: &[Point]) -> bool {
    for (i, a) in line_pts.iter().enumerate() {
        for b in &line_pts[i + 1..] {
            if a.x == b.x {
                if !others.is_empty() {
                    return false;
                }
                continue;
            }
            let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
            // Below a left-to-right line means clockwise.
            if others
                .iter()
                .any(|q| orientation(l, r, q) != Orientation::Clockwise)
            {
                return false;
            }
        }
    }
    true
}

fn lines_strictly_below(line_pts: &[Point], others: &[Point]) -> bool {
    for (i, a) in line_pts.iter().enumerate() {
        for b in &line_pts[i + 1..] {
            if a.x == b.x {
                if !others.is_empty() {
                    return false;
                }
                continue;
            }
            let (l, r) = if a.x < b.x { (a, b) } else { (b, a) };
            if others
                .iter()
                .any(|q| orientation(l, r, q) != Orientation::CounterClockwise)
            {
                return false;
            }
        }
    }
    true
}

/// `conv(S) ∩ P = S`, with the closed hull.
pub fn is_island_direct(set: &PointSet, subset: &[usize]) -> bool {
    let hull = convex_hull(&set.select(subset));
    (0..set.len())
        .filter(|i| !subset.contains(i))
        .all(|i| hull_location(set.get(i), &hull) == Location::Outside)
}

pub fn is_pairwise_visible_direct(set: &PointSet, subset: &[usize]) -> bool {
    let pts = set.points();
    subset.iter().enumerate().all(|(a, &i)| {
        subset[a + 1..].iter().all(|&j| {
            (0..pts.len())
                .all(|k| k == i || k == j || !point_in_open_segment(&pts[k], &pts[i], &pts[j]))
        })
    })
}

pub fn is_visible_island_direct(set: &PointSet, subset: &[usize]) -> bool {
    is_pairwise_visible_direct(set, subset) && is_island_direct(set, subset)
}

/// Every point of `subset` is a strict vertex of its hull.
pub fn in_convex_position(set: &PointSet, subset: &[usize]) -> bool {
    convex_hull(&set.select(subset)).vertices.len() == subset.len()
}

/// Lexicographically smallest `k`-subset that is a visible island, by
/// enumerating every `k`-subset. Limited to 32 points.
pub fn visible_island_of_size(set: &PointSet, k: usize) -> Option<Vec<usize>> {
    let n = set.len();
    assert!(n <= 32, "exhaustive oracle is limited to 32 points");
    if k == 0 || k > n {
        return None;
    }
    let vis = visibility_matrix_brute(set);
    let masks: Vec<u32> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| vis[i][j])
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();
    let found: Vec<Option<Vec<usize>>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let res = for_each_with_first(n, k, first, |combo| {
                let mask = combo.iter().fold(0u32, |m, &i| m | (1 << i));
                let clique = combo.iter().all(|&i| masks[i] & mask == mask & !(1 << i));
                if clique && is_island_direct(set, combo) {
                    ControlFlow::Break(combo.to_vec())
                } else {
                    ControlFlow::Continue(())
                }
            });
            match res {
                ControlFlow::Break(w) => Some(w),
                ControlFlow::Continue(()) => None,
            }
        })
        .collect();
    found.into_iter().flatten().next()
}

/// Maximum visible island by trying sizes from `|P|` downward.
pub fn max_visible_island_exhaustive(set: &PointSet) -> (usize, Vec<usize>) {
    assert!(set.len() <= 26, "exhaustive oracle is limited to 26 points");
    for k in (1..=set.len()).rev() {
        if let Some(w) = visible_island_of_size(set, k) {
            return (k, w);
        }
    }
    (0, Vec::new())
}

/// Every island (not necessarily visible) of a small set, as sorted index
/// lists.
pub fn all_islands(set: &PointSet) -> Vec<Vec<usize>> {
    let n = set.len();
    assert!(n <= 20, "exhaustive island listing is limited to 20 points");
    (1u32..(1 << n))
        .into_par_iter()
        .filter_map(|mask| {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            is_island_direct(set, &subset).then_some(subset)
        })
        .collect()
}

/// Lemma check by plain enumeration of every 7-subset: returns the first
/// subset whose hull interior contains no point of `set`.
pub fn lemma7_brute(set: &PointSet) -> Option<Vec<usize>> {
    let n = set.len();
    for first in 0..n {
        let res = for_each_with_first(n, 7, first, |combo| {
            let hull = convex_hull(&set.select(combo));
            if set
                .iter()
                .any(|p| hull_location(p, &hull) == Location::Interior)
            {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(combo.to_vec())
            }
        });
        if let ControlFlow::Break(w) = res {
            return Some(w);
        }
    }
    None
}

/// First `k`-hole in lexicographic order, by plain enumeration.
pub fn k_hole_brute(set: &PointSet, k: usize) -> Option<Vec<usize>> {
    let n = set.len();
    for first in 0..n {
        let res = for_each_with_first(n, k, first, |combo| {
            if in_convex_position(set, combo) && is_island_direct(set, combo) {
                ControlFlow::Break(combo.to_vec())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let ControlFlow::Break(w) = res {
            return Some(w);
        }
    }
    None
}
