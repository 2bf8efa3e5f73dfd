//! Horton sets and their collinear-triplet blowups.
//!
//! `H_n` is built from two copies of `H_{n-1}`: the lower copy maps
//! `(x, y) -> (2x, y)` and the upper copy maps `(x, y) -> (2x + 1, y + K)`.
//! Doubling x interleaves the copies in x-order, and `K` is the smallest power
//! of two for which the upper copy lies high above the lower one.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::combinations::for_each_with_first;
use crate::geom::{
    hull_indices, locate_idx, max_collinear, with_coords, GeomError, Location, Orientation, Planar,
    Point, PointSet,
};

pub const MAX_HORTON_LEVEL: usize = 20;

/// Highest level for which [`blowup_triplets`] runs the soundness check by
/// default. The check costs `C(2^n, 7) * 3^7` hull evaluations.
pub const DEFAULT_SOUNDNESS_MAX_LEVEL: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("level {0} is outside the supported range 0..={MAX_HORTON_LEVEL}")]
    LevelOutOfRange(usize),
    #[error("not a Horton set: {0}")]
    NotHorton(String),
    #[error("not a triplet blowup: {0}")]
    NotBlowup(String),
    #[error("no scale/direction schedule within budget satisfies the blowup invariants (last scale tried {last_scale})")]
    BlowupSearchExhausted { last_scale: BigInt },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Exact slope `num / den` with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Slope {
    num: BigInt,
    den: BigInt,
}

impl Slope {
    fn between(a: &Point, b: &Point) -> Slope {
        let mut num = &b.y - &a.y;
        let mut den = &b.x - &a.x;
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Slope { num, den }
    }

    fn neg(self) -> Slope {
        Slope {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn reflect(points: &[Point], flip_x: bool, flip_y: bool) -> Vec<Point> {
    points
        .iter()
        .map(|p| Point {
            x: if flip_x { -&p.x } else { p.x.clone() },
            y: if flip_y { -&p.y } else { p.y.clone() },
        })
        .collect()
}

/// For each query `a`, the largest slope from `a` to a point of `targets`
/// with strictly larger x, or `None` if there is no such point.
///
/// Sweeps right to left keeping the upper hull of the targets already passed;
/// the slope from a point left of a concave chain is unimodal along it, so
/// each query is a binary search.
fn max_slope_to_right(targets: &[Point], queries: &[Point]) -> Vec<Option<Slope>> {
    let mut t_order: Vec<usize> = (0..targets.len()).collect();
    t_order.sort_by(|&a, &b| targets[b].cmp(&targets[a]));
    let mut q_order: Vec<usize> = (0..queries.len()).collect();
    q_order.sort_by(|&a, &b| queries[b].x.cmp(&queries[a].x));

    let mut answers = vec![None; queries.len()];
    // hull[0] is the rightmost vertex, hull.last() the leftmost.
    let mut hull: Vec<&Point> = Vec::new();
    let mut next = 0;
    for qi in q_order {
        let a = &queries[qi];
        while next < t_order.len() && targets[t_order[next]].x > a.x {
            let p = &targets[t_order[next]];
            next += 1;
            if hull.last().is_some_and(|h| h.x == p.x) {
                // Sorted by (x, y) descending: the higher point came first.
                continue;
            }
            while hull.len() >= 2
                && Point::orient(hull[hull.len() - 2], hull[hull.len() - 1], p)
                    != Orientation::CounterClockwise
            {
                hull.pop();
            }
            hull.push(p);
        }
        if hull.is_empty() {
            continue;
        }
        // Moving from hull[i] to hull[i - 1] raises the slope iff it turns
        // counterclockwise around `a`; that holds on a suffix of 1..=last.
        let improves =
            |i: usize| Point::orient(a, hull[i], hull[i - 1]) == Orientation::CounterClockwise;
        let (mut lo, mut hi) = (1, hull.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if improves(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        answers[qi] = Some(Slope::between(a, hull[lo - 1]));
    }
    answers
}

/// Every line through two points of `line_pts` passes strictly above every
/// point of `others`.
fn lines_pass_above(line_pts: &[Point], others: &[Point]) -> bool {
    if line_pts.len() < 2 || others.is_empty() {
        return true;
    }
    let mut xs: Vec<&BigInt> = line_pts.iter().map(|p| &p.x).collect();
    xs.sort();
    if xs.windows(2).any(|w| w[0] == w[1]) {
        // A vertical line is above nothing.
        return false;
    }

    let max_right = max_slope_to_right(line_pts, line_pts);
    let max_left = max_slope_to_right(
        &reflect(line_pts, true, true),
        &reflect(line_pts, true, true),
    );
    let min_right: Vec<Option<Slope>> = max_slope_to_right(
        &reflect(line_pts, false, true),
        &reflect(line_pts, false, true),
    )
    .into_iter()
    .map(|s| s.map(Slope::neg))
    .collect();
    let min_left: Vec<Option<Slope>> = max_slope_to_right(
        &reflect(line_pts, true, false),
        &reflect(line_pts, true, false),
    )
    .into_iter()
    .map(|s| s.map(Slope::neg))
    .collect();

    let others_right = max_slope_to_right(others, line_pts);
    let others_left: Vec<Option<Slope>> = max_slope_to_right(
        &reflect(others, true, false),
        &reflect(line_pts, true, false),
    )
    .into_iter()
    .map(|s| s.map(Slope::neg))
    .collect();

    let mut highest_at_x: HashMap<&BigInt, &BigInt> = HashMap::new();
    for q in others {
        highest_at_x
            .entry(&q.x)
            .and_modify(|y| {
                if &q.y > *y {
                    *y = &q.y;
                }
            })
            .or_insert(&q.y);
    }

    for (i, a) in line_pts.iter().enumerate() {
        let steepest = [&max_right[i], &max_left[i]].into_iter().flatten().max();
        let flattest = [&min_right[i], &min_left[i]].into_iter().flatten().min();
        let (Some(steepest), Some(flattest)) = (steepest, flattest) else {
            unreachable!("at least two points with distinct x");
        };
        if let Some(r) = &others_right[i] {
            if r >= flattest {
                return false;
            }
        }
        if let Some(l) = &others_left[i] {
            if l <= steepest {
                return false;
            }
        }
        if let Some(y) = highest_at_x.get(&a.x) {
            if *y >= &a.y {
                return false;
            }
        }
    }
    true
}

/// True iff `upper` lies high above `lower`: every line through two points of
/// `upper` passes strictly above all of `lower`, and every line through two
/// points of `lower` passes strictly below all of `upper`. Singletons
/// determine no lines, so their side of the condition holds vacuously.
pub fn verify_above_below(upper: &[Point], lower: &[Point]) -> bool {
    lines_pass_above(upper, lower)
        && lines_pass_above(&reflect(lower, false, true), &reflect(upper, false, true))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HortonSet {
    level: usize,
    points: PointSet,
    separation_constants: Vec<BigInt>,
}

impl HortonSet {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    /// `K` chosen at each recursion level, from level 1 to level n.
    pub fn separation_constants(&self) -> &[BigInt] {
        &self.separation_constants
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Recognizes an x-interleaved Horton set: the odd x-ranks must be a copy
    /// of the even x-ranks shifted by a fixed vector, recursively, and every
    /// split must pass [`verify_above_below`].
    pub fn from_points(points: Vec<Point>) -> Result<HortonSet, ConstructionError> {
        let set = PointSet::new(points)?;
        let n = set.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(ConstructionError::NotHorton(format!(
                "size {n} is not a power of two"
            )));
        }
        if !set.is_sorted_by_x() {
            return Err(ConstructionError::NotHorton(
                "points must have strictly increasing x".into(),
            ));
        }
        let level = n.trailing_zeros() as usize;
        if level > MAX_HORTON_LEVEL {
            return Err(ConstructionError::LevelOutOfRange(level));
        }
        let mut constants = Vec::with_capacity(level);
        let mut block: Vec<Point> = set.points().to_vec();
        while block.len() > 1 {
            let (lower, upper) = split_by_rank(&block);
            let dx = &upper[0].x - &lower[0].x;
            let k = &upper[0].y - &lower[0].y;
            let is_copy = lower
                .iter()
                .zip(&upper)
                .all(|(l, u)| u.x == &l.x + &dx && u.y == &l.y + &k);
            if !is_copy {
                return Err(ConstructionError::NotHorton(format!(
                    "odd ranks of the {}-point block are not a translate of the even ranks",
                    block.len()
                )));
            }
            if !verify_above_below(&upper, &lower) {
                return Err(ConstructionError::NotHorton(format!(
                    "split of the {}-point block is not separated",
                    block.len()
                )));
            }
            constants.push(k);
            block = lower;
        }
        constants.reverse();
        Ok(HortonSet {
            level,
            points: set,
            separation_constants: constants,
        })
    }

    /// Re-runs [`verify_above_below`] on every split of the recursion.
    pub fn verify_separation(&self) -> bool {
        separation_checks(self.points.points())
            .map(|checks| checks.iter().all(|c| c.passed))
            .unwrap_or(false)
    }
}

/// Splits x-sorted points into even and odd x-ranks.
pub fn split_by_rank(points: &[Point]) -> (Vec<Point>, Vec<Point>) {
    let even = points.iter().step_by(2).cloned().collect();
    let odd = points.iter().skip(1).step_by(2).cloned().collect();
    (even, odd)
}

/// Result of checking one recursion split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCheck {
    /// Size of the block being split (2^m for the level-m split).
    pub block_size: usize,
    /// Position of the block among the blocks of that size, in recursion order.
    pub block: usize,
    pub passed: bool,
}

/// Checks the separation at every recursion level of a point set laid out
/// like a Horton set: sorted by x, odd ranks above even ranks, recursively
/// within both halves.
pub fn separation_checks(points: &[Point]) -> Result<Vec<SplitCheck>, ConstructionError> {
    let n = points.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(ConstructionError::NotHorton(format!(
            "size {n} is not a power of two"
        )));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.x.cmp(&b.x));
    if sorted.windows(2).any(|w| w[0].x == w[1].x) {
        return Err(ConstructionError::NotHorton(
            "x-coordinates are not distinct".into(),
        ));
    }
    let mut checks = Vec::new();
    let mut blocks = vec![sorted];
    while blocks[0].len() > 1 {
        let mut next = Vec::with_capacity(blocks.len() * 2);
        for (i, block) in blocks.iter().enumerate() {
            let (lower, upper) = split_by_rank(block);
            checks.push(SplitCheck {
                block_size: block.len(),
                block: i,
                passed: verify_above_below(&upper, &lower),
            });
            next.push(lower);
            next.push(upper);
        }
        blocks = next;
    }
    Ok(checks)
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

/// Smallest `K = 2^e` with `upper_base + (0, K)` high above `lower`.
fn smallest_separating_power(upper_base: &[Point], lower: &[Point]) -> BigInt {
    let passes = |e: u32| {
        let k = pow2(e);
        let upper: Vec<Point> = upper_base
            .iter()
            .map(|p| Point {
                x: p.x.clone(),
                y: &p.y + &k,
            })
            .collect();
        verify_above_below(&upper, lower)
    };
    if passes(0) {
        return BigInt::one();
    }
    // Validity is monotone in K, so gallop then bisect on the exponent.
    let (mut lo, mut hi) = (0u32, 1u32);
    while !passes(hi) {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if passes(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    pow2(hi)
}

pub fn horton_generate(n: usize) -> Result<HortonSet, ConstructionError> {
    if n > MAX_HORTON_LEVEL {
        return Err(ConstructionError::LevelOutOfRange(n));
    }
    let mut points = vec![Point::new(0, 0)];
    let mut constants = Vec::with_capacity(n);
    for _ in 0..n {
        let lower: Vec<Point> = points
            .iter()
            .map(|p| Point {
                x: &p.x * 2,
                y: p.y.clone(),
            })
            .collect();
        let upper_base: Vec<Point> = points
            .iter()
            .map(|p| Point {
                x: &p.x * 2 + 1,
                y: p.y.clone(),
            })
            .collect();
        let k = smallest_separating_power(&upper_base, &lower);
        let mut merged = Vec::with_capacity(points.len() * 2);
        for (l, u) in lower.into_iter().zip(upper_base) {
            merged.push(l);
            merged.push(Point {
                x: u.x,
                y: u.y + &k,
            });
        }
        constants.push(k);
        points = merged;
    }
    Ok(HortonSet {
        level: n,
        points: PointSet::new(points)?,
        separation_constants: constants,
    })
}

/// The `count` first primitive direction vectors with positive components,
/// ordered by their larger component, then their smaller one, with `(a, b)`
/// before `(b, a)` when `a < b`: (1,1), (1,2), (2,1), (1,3), (3,1), (2,3), ...
pub fn direction_schedule(count: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::with_capacity(count);
    let mut big = 1i64;
    while out.len() < count {
        for small in 1..=big {
            if small.gcd(&big) != 1 {
                continue;
            }
            out.push((small, big));
            if small != big {
                out.push((big, small));
            }
        }
        big += 1;
    }
    out.truncate(count);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupRecord {
    pub parent_set: HortonSet,
    /// Triplet of parent `i` sits at indices `3i, 3i + 1, 3i + 2`, ordered
    /// `M·p_i - d_i, M·p_i, M·p_i + d_i`.
    pub blown: PointSet,
    pub parent_of: Vec<usize>,
    pub triplet_of: Vec<[usize; 3]>,
    pub scale: BigInt,
    pub directions: Vec<(i64, i64)>,
    /// Offset into [`direction_schedule`], when the directions follow it.
    pub schedule_offset: Option<usize>,
    /// Whether the record was certified by [`blowup_soundness_check`] when it
    /// was built.
    pub soundness_certified: bool,
}

impl BlowupRecord {
    /// Replaces each parent by its triplet with an explicit scale and
    /// direction schedule offset. Does not check any invariant beyond the
    /// absence of duplicate points.
    pub fn with_scale(
        parent_set: &HortonSet,
        scale: BigInt,
        schedule_offset: usize,
    ) -> Result<BlowupRecord, ConstructionError> {
        let n = parent_set.len();
        let directions: Vec<(i64, i64)> = direction_schedule(n + schedule_offset)
            .into_iter()
            .skip(schedule_offset)
            .collect();
        let mut blown = Vec::with_capacity(3 * n);
        for (p, &(dx, dy)) in parent_set.points().iter().zip(&directions) {
            let cx = &p.x * &scale;
            let cy = &p.y * &scale;
            blown.push(Point {
                x: &cx - dx,
                y: &cy - dy,
            });
            blown.push(Point {
                x: cx.clone(),
                y: cy.clone(),
            });
            blown.push(Point {
                x: cx + dx,
                y: cy + dy,
            });
        }
        Ok(BlowupRecord {
            parent_set: parent_set.clone(),
            blown: PointSet::new(blown)?,
            parent_of: (0..3 * n).map(|i| i / 3).collect(),
            triplet_of: (0..n).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect(),
            scale,
            directions,
            schedule_offset: Some(schedule_offset),
            soundness_certified: false,
        })
    }

    /// Rebuilds a record from blown points laid out as [`BlowupRecord::with_scale`]
    /// emits them, given the scale.
    pub fn from_blown(
        points: Vec<Point>,
        scale: BigInt,
    ) -> Result<BlowupRecord, ConstructionError> {
        if points.is_empty() || !points.len().is_multiple_of(3) {
            return Err(ConstructionError::NotBlowup(format!(
                "{} points is not a positive multiple of three",
                points.len()
            )));
        }
        if !scale.is_positive() {
            return Err(ConstructionError::NotBlowup(
                "scale must be positive".into(),
            ));
        }
        let mut parents = Vec::with_capacity(points.len() / 3);
        let mut directions = Vec::with_capacity(points.len() / 3);
        for (i, t) in points.chunks(3).enumerate() {
            let (qx, qr) = t[1].x.div_rem(&scale);
            let (py, pr) = t[1].y.div_rem(&scale);
            if !qr.is_zero() || !pr.is_zero() {
                return Err(ConstructionError::NotBlowup(format!(
                    "middle point of triplet {i} is not a multiple of the scale"
                )));
            }
            let dx = &t[2].x - &t[1].x;
            let dy = &t[2].y - &t[1].y;
            if &t[1].x - &t[0].x != dx || &t[1].y - &t[0].y != dy {
                return Err(ConstructionError::NotBlowup(format!(
                    "triplet {i} is not symmetric about its middle point"
                )));
            }
            let (Ok(dx), Ok(dy)) = (i64::try_from(&dx), i64::try_from(&dy)) else {
                return Err(ConstructionError::NotBlowup(format!(
                    "direction of triplet {i} does not fit in 64 bits"
                )));
            };
            parents.push(Point { x: qx, y: py });
            directions.push((dx, dy));
        }
        let parent_set = HortonSet::from_points(parents)?;
        let n = parent_set.len();
        let schedule_offset =
            (0..=points.len()).find(|&off| direction_schedule(n + off)[off..] == directions[..]);
        Ok(BlowupRecord {
            parent_set,
            blown: PointSet::new(points)?,
            parent_of: (0..3 * n).map(|i| i / 3).collect(),
            triplet_of: (0..n).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect(),
            scale,
            directions,
            schedule_offset,
            soundness_certified: false,
        })
    }

    /// Structural invariants that do not need a search: sizes, index maps,
    /// collinear triplets, and offsets of at most `‖d_i‖∞` from `M·p_i`.
    pub fn check_structure(&self) -> bool {
        let n = self.parent_set.len();
        if self.blown.len() != 3 * n
            || self.triplet_of.len() != n
            || self.parent_of.len() != 3 * n
            || self.directions.len() != n
        {
            return false;
        }
        let pts = self.blown.points();
        self.triplet_of.iter().enumerate().all(|(parent, t)| {
            let centre = self.parent_set.points().get(parent);
            let (cx, cy) = (&centre.x * &self.scale, &centre.y * &self.scale);
            let (dx, dy) = self.directions[parent];
            let radius = BigInt::from(dx.abs().max(dy.abs()));
            t.iter().all(|&b| self.parent_of[b] == parent)
                && Point::orient(&pts[t[0]], &pts[t[1]], &pts[t[2]]) == Orientation::Collinear
                && t.iter().all(|&b| {
                    (&pts[b].x - &cx).abs() <= radius && (&pts[b].y - &cy).abs() <= radius
                })
        })
    }
}

/// Outcome of [`soundness_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub subsets_checked: u64,
    /// Lexicographically smallest parent subset with no certifying parent.
    pub witness: Option<Vec<usize>>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// For every `subset_size`-subset S of parents, looks for a parent `p_j`
/// strictly inside conv(S) whose whole triplet lies in conv(Ĉ) for every way
/// Ĉ of picking one blown point per parent of S.
pub fn soundness_certificate(record: &BlowupRecord, subset_size: usize) -> SoundnessReport {
    let parents = record.parent_set.points();
    with_coords!(parents, |pp| with_coords!(&record.blown, |bp| {
        soundness_inner(pp, bp, &record.triplet_of, subset_size)
    }))
}

pub fn blowup_soundness_check(record: &BlowupRecord, subset_size: usize) -> bool {
    soundness_certificate(record, subset_size).passed()
}

fn soundness_inner<P: Planar, Q: Planar>(
    parents: &[P],
    blown: &[Q],
    triplets: &[[usize; 3]],
    k: usize,
) -> SoundnessReport {
    let n = parents.len();
    if k == 0 || k > n {
        return SoundnessReport {
            subsets_checked: 0,
            witness: None,
        };
    }
    let per_first: Vec<(u64, Option<Vec<usize>>)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut checked = 0u64;
            let mut choice = vec![0usize; k];
            let mut picked = vec![0usize; k];
            let res = for_each_with_first(n, k, first, |subset| {
                checked += 1;
                let hull = hull_indices(parents, subset);
                let certified = (0..n)
                    .filter(|&j| locate_idx(parents, j, &hull) == Location::Interior)
                    .any(|j| {
                        triplet_in_every_choice(
                            blown,
                            triplets,
                            subset,
                            j,
                            &mut choice,
                            &mut picked,
                        )
                    });
                if certified {
                    ControlFlow::Continue(())
                } else {
                    ControlFlow::Break(subset.to_vec())
                }
            });
            match res {
                ControlFlow::Break(w) => (checked, Some(w)),
                ControlFlow::Continue(()) => (checked, None),
            }
        })
        .collect();
    let mut subsets_checked = 0;
    for (checked, witness) in per_first {
        subsets_checked += checked;
        if witness.is_some() {
            return SoundnessReport {
                subsets_checked,
                witness,
            };
        }
    }
    SoundnessReport {
        subsets_checked,
        witness: None,
    }
}

fn triplet_in_every_choice<Q: Planar>(
    blown: &[Q],
    triplets: &[[usize; 3]],
    subset: &[usize],
    inner: usize,
    choice: &mut [usize],
    picked: &mut [usize],
) -> bool {
    choice.iter_mut().for_each(|c| *c = 0);
    loop {
        for (slot, (&parent, &c)) in subset.iter().zip(choice.iter()).enumerate() {
            picked[slot] = triplets[parent][c];
        }
        let hull = hull_indices(blown, picked);
        if triplets[inner]
            .iter()
            .any(|&t| locate_idx(blown, t, &hull) == Location::Outside)
        {
            return false;
        }
        // Odometer over 3^k choices.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return true;
            }
            choice[i] += 1;
            if choice[i] < 3 {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct BlowupConfig {
    /// Levels above this skip the soundness check and yield an uncertified
    /// record.
    pub soundness_max_level: usize,
    pub max_scale_doublings: u32,
    pub max_schedule_advances: usize,
}

impl Default for BlowupConfig {
    fn default() -> Self {
        BlowupConfig {
            soundness_max_level: DEFAULT_SOUNDNESS_MAX_LEVEL,
            max_scale_doublings: 16,
            max_schedule_advances: 64,
        }
    }
}

pub fn blowup_triplets(parent_set: &HortonSet) -> Result<BlowupRecord, ConstructionError> {
    blowup_triplets_with(parent_set, &BlowupConfig::default())
}

/// Searches scales `M = 2^(n+3), 2^(n+4), ...` and, for each, schedule
/// offsets `0, 1, ...` until the blown set has no four collinear points and
/// (up to `soundness_max_level`) passes the soundness check.
pub fn blowup_triplets_with(
    parent_set: &HortonSet,
    config: &BlowupConfig,
) -> Result<BlowupRecord, ConstructionError> {
    let certify = parent_set.level() <= config.soundness_max_level;
    let mut scale = pow2(parent_set.level() as u32 + 3);
    for _ in 0..=config.max_scale_doublings {
        for offset in 0..config.max_schedule_advances {
            let Ok(mut record) = BlowupRecord::with_scale(parent_set, scale.clone(), offset) else {
                continue;
            };
            if max_collinear(&record.blown).0 != 3 {
                continue;
            }
            if certify {
                if !blowup_soundness_check(&record, 7) {
                    break;
                }
                record.soundness_certified = true;
            }
            return Ok(record);
        }
        scale <<= 1;
    }
    Err(ConstructionError::BlowupSearchExhausted {
        last_scale: scale >> 1,
    })
}
