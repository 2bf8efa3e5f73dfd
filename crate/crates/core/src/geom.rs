//! Exact planar predicates and convex hulls.
//!
//! Coordinates are arbitrary-precision integers. When every coordinate of a
//! [`PointSet`] fits in [`SMALL_LIMIT`], a compact `i64` copy is kept so that
//! the enumeration-heavy searches can run orientation tests in `i128` without
//! leaving exact arithmetic.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Coordinates with absolute value below this bound are mirrored into
/// [`SmallPoint`]. Differences stay below 2^62 and cross products below 2^125,
/// so `i128` evaluation of the orientation determinant cannot overflow.
pub const SMALL_LIMIT: i64 = 1 << 61;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("duplicate point ({x}, {y}) at indices {first} and {second}")]
    DuplicatePoint {
        x: BigInt,
        y: BigInt,
        first: usize,
        second: usize,
    },
    #[error("rational coordinate with zero denominator")]
    ZeroDenominator,
}

/// Exact 2-D point. The derived ordering is lexicographic by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigInt,
    pub y: BigInt,
}

impl Point {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Point {
            x: x.into(),
            y: y.into(),
        }
    }

    fn to_small(&self) -> Option<SmallPoint> {
        let x = self.x.to_i64()?;
        let y = self.y.to_i64()?;
        if x.abs() < SMALL_LIMIT && y.abs() < SMALL_LIMIT {
            Some(SmallPoint { x, y })
        } else {
            None
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Compact mirror of a [`Point`] whose coordinates are below [`SMALL_LIMIT`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallPoint {
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    fn from_sign(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

/// A point type the exact predicates can run on. `Ord` must be the
/// lexicographic `(x, y)` order.
pub trait Planar: Ord + Clone + Send + Sync {
    /// Sign of `cross(b - a, c - a)`.
    fn orient(a: &Self, b: &Self, c: &Self) -> Orientation;
}

impl Planar for Point {
    fn orient(a: &Self, b: &Self, c: &Self) -> Orientation {
        let lhs = (&b.x - &a.x) * (&c.y - &a.y);
        let rhs = (&b.y - &a.y) * (&c.x - &a.x);
        Orientation::from_sign(lhs.cmp(&rhs))
    }
}

impl Planar for SmallPoint {
    #[inline]
    fn orient(a: &Self, b: &Self, c: &Self) -> Orientation {
        let lhs = (b.x - a.x) as i128 * (c.y - a.y) as i128;
        let rhs = (b.y - a.y) as i128 * (c.x - a.x) as i128;
        Orientation::from_sign(lhs.cmp(&rhs))
    }
}

pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    Point::orient(a, b, c)
}

/// True iff `p` lies strictly inside the segment `ab`.
///
/// Panics if `a == b`.
pub fn point_in_open_segment<P: Planar>(p: &P, a: &P, b: &P) -> bool {
    assert!(a != b, "segment endpoints must differ");
    if P::orient(a, b, p) != Orientation::Collinear {
        return false;
    }
    // Lexicographic order is monotone along any line.
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    lo < p && p < hi
}

/// Ordered, duplicate-free collection of points with index identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    small: Option<Vec<SmallPoint>>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        let mut seen = std::collections::HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(GeomError::DuplicatePoint {
                    x: p.x.clone(),
                    y: p.y.clone(),
                    first,
                    second: i,
                });
            }
            seen.insert(p, i);
        }
        let small = points.iter().map(Point::to_small).collect();
        Ok(PointSet { points, small })
    }

    /// Builds a set from rational coordinates by scaling every coordinate by
    /// the LCM of all denominators.
    pub fn from_rationals(coords: &[(BigRational, BigRational)]) -> Result<Self, GeomError> {
        let mut lcm = BigInt::one();
        for (x, y) in coords {
            if x.denom().is_zero() || y.denom().is_zero() {
                return Err(GeomError::ZeroDenominator);
            }
            lcm = lcm.lcm(x.denom()).lcm(y.denom());
        }
        let scale = |r: &BigRational| (r.numer() * &lcm) / r.denom();
        let points = coords
            .iter()
            .map(|(x, y)| Point {
                x: scale(x),
                y: scale(y),
            })
            .collect();
        PointSet::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// The compact copy, present iff every coordinate is below [`SMALL_LIMIT`].
    pub fn small(&self) -> Option<&[SmallPoint]> {
        self.small.as_deref()
    }

    pub fn has_distinct_x(&self) -> bool {
        let mut xs = HashSet::with_capacity(self.points.len());
        self.points.iter().all(|p| xs.insert(&p.x))
    }

    pub fn is_sorted_by_x(&self) -> bool {
        self.points.windows(2).all(|w| w[0].x < w[1].x)
    }

    pub fn select(&self, indices: &[usize]) -> Vec<Point> {
        indices.iter().map(|&i| self.points[i].clone()).collect()
    }
}

/// Runs `$body` with `$pts` bound to the fastest exact coordinate slice of
/// `$set`. The body is instantiated once per coordinate type.
macro_rules! with_coords {
    ($set:expr, |$pts:ident| $body:expr) => {
        match $set.small() {
            Some($pts) => $body,
            None => {
                let $pts = $set.points();
                $body
            }
        }
    };
}
pub(crate) use with_coords;

/// Convex hull as strict extreme points in counterclockwise order, starting
/// from the lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull<P> {
    pub vertices: Vec<P>,
    /// Set when the hull has fewer than three vertices (empty interior).
    pub degenerate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

pub fn convex_hull<P: Planar>(points: &[P]) -> Hull<P> {
    let idx: Vec<usize> = (0..points.len()).collect();
    let vertices: Vec<P> = hull_indices(points, &idx)
        .into_iter()
        .map(|i| points[i].clone())
        .collect();
    let degenerate = vertices.len() < 3;
    Hull {
        vertices,
        degenerate,
    }
}

pub fn hull_location<P: Planar>(p: &P, hull: &Hull<P>) -> Location {
    locate(p, &hull.vertices)
}

/// Monotone chain over a subset of indices. Returns hull vertex indices in
/// counterclockwise order; boundary points that are not extreme are dropped.
pub(crate) fn hull_indices<P: Planar>(points: &[P], subset: &[usize]) -> Vec<usize> {
    let mut idx = subset.to_vec();
    idx.sort_unstable_by(|&a, &b| points[a].cmp(&points[b]));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return if idx.len() == 2 {
            idx
        } else {
            idx.into_iter().take(1).collect()
        };
    }
    let mut hull: Vec<usize> = Vec::with_capacity(idx.len() + 1);
    for &i in &idx {
        while hull.len() >= 2
            && P::orient(
                &points[hull[hull.len() - 2]],
                &points[hull[hull.len() - 1]],
                &points[i],
            ) != Orientation::CounterClockwise
        {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in idx.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && P::orient(
                &points[hull[hull.len() - 2]],
                &points[hull[hull.len() - 1]],
                &points[i],
            ) != Orientation::CounterClockwise
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// Classifies `p` against a counterclockwise strictly convex vertex list.
pub(crate) fn locate<P: Planar>(p: &P, vertices: &[P]) -> Location {
    match vertices.len() {
        0 => Location::Outside,
        1 => {
            if *p == vertices[0] {
                Location::Boundary
            } else {
                Location::Outside
            }
        }
        2 => {
            let (a, b) = (&vertices[0], &vertices[1]);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if P::orient(a, b, p) == Orientation::Collinear && lo <= p && p <= hi {
                Location::Boundary
            } else {
                Location::Outside
            }
        }
        n => {
            let mut on_edge = false;
            for i in 0..n {
                let j = if i + 1 == n { 0 } else { i + 1 };
                match P::orient(&vertices[i], &vertices[j], p) {
                    Orientation::Clockwise => return Location::Outside,
                    Orientation::Collinear => on_edge = true,
                    Orientation::CounterClockwise => {}
                }
            }
            if on_edge {
                Location::Boundary
            } else {
                Location::Interior
            }
        }
    }
}

/// Index-based variant of [`locate`] against a hull given as indices.
#[inline]
pub(crate) fn locate_idx<P: Planar>(points: &[P], p: usize, hull: &[usize]) -> Location {
    let q = &points[p];
    match hull.len() {
        0 => Location::Outside,
        1 | 2 => {
            let verts: Vec<P> = hull.iter().map(|&i| points[i].clone()).collect();
            locate(q, &verts)
        }
        n => {
            let mut on_edge = false;
            for i in 0..n {
                let j = if i + 1 == n { 0 } else { i + 1 };
                match P::orient(&points[hull[i]], &points[hull[j]], q) {
                    Orientation::Clockwise => return Location::Outside,
                    Orientation::Collinear => on_edge = true,
                    Orientation::CounterClockwise => {}
                }
            }
            if on_edge {
                Location::Boundary
            } else {
                Location::Interior
            }
        }
    }
}

/// Direction from `a` to `b` divided by the gcd of its components, together
/// with that gcd (the lattice distance along the ray).
pub(crate) fn reduced_ray(a: &Point, b: &Point) -> ((BigInt, BigInt), BigInt) {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let g = dx.gcd(&dy);
    ((dx / &g, dy / &g), g)
}

/// Reduced direction of the line through `a` and `b`, sign-normalized so that
/// opposite rays share a key.
fn line_key(a: &Point, b: &Point) -> (BigInt, BigInt) {
    let ((dx, dy), _) = reduced_ray(a, b);
    if dx.is_negative() || (dx.is_zero() && dy.is_negative()) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

/// Size of the largest collinear subset and a witness achieving it.
///
/// Buckets the other points around each anchor by exact reduced slope. The
/// witness is the first maximal bucket found scanning anchors in index order.
pub fn max_collinear(set: &PointSet) -> (usize, Vec<usize>) {
    let pts = set.points();
    match pts.len() {
        0 => return (0, Vec::new()),
        1 => return (1, vec![0]),
        _ => {}
    }
    let mut best = (2, vec![0, 1]);
    for i in 0..pts.len() {
        if pts.len() - i <= best.0 {
            break;
        }
        let mut keyed: Vec<((BigInt, BigInt), usize)> = (i + 1..pts.len())
            .map(|j| (line_key(&pts[i], &pts[j]), j))
            .collect();
        keyed.sort();
        for group in keyed.chunk_by(|a, b| a.0 == b.0) {
            if group.len() + 1 > best.0 {
                let mut witness = vec![i];
                witness.extend(group.iter().map(|(_, j)| *j));
                best = (witness.len(), witness);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn set(coords: &[(i64, i64)]) -> PointSet {
        PointSet::new(coords.iter().map(|&(x, y)| p(x, y)).collect()).unwrap()
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(
            orientation(&p(0, 0), &p(1, 0), &p(0, 1)),
            Orientation::CounterClockwise
        );
        assert_eq!(
            orientation(&p(0, 0), &p(1, 1), &p(2, 2)),
            Orientation::Collinear
        );
        assert_eq!(
            orientation(&p(0, 0), &p(0, 1), &p(1, 0)),
            Orientation::Clockwise
        );
    }

    #[test]
    fn open_segment_examples() {
        assert!(point_in_open_segment(&p(1, 1), &p(0, 0), &p(2, 2)));
        assert!(!point_in_open_segment(&p(0, 0), &p(0, 0), &p(2, 2)));
        assert!(!point_in_open_segment(&p(1, 2), &p(0, 0), &p(2, 2)));
        assert!(!point_in_open_segment(&p(3, 3), &p(0, 0), &p(2, 2)));
        assert!(point_in_open_segment(&p(0, 1), &p(0, 2), &p(0, 0)));
    }

    #[test]
    #[should_panic]
    fn open_segment_rejects_degenerate_segment() {
        point_in_open_segment(&p(1, 1), &p(0, 0), &p(0, 0));
    }

    #[test]
    fn hull_examples() {
        let h = convex_hull(&[p(0, 0), p(2, 0), p(1, 1), p(1, 0)]);
        assert_eq!(h.vertices, vec![p(0, 0), p(2, 0), p(1, 1)]);
        assert!(!h.degenerate);

        let h = convex_hull(&[p(0, 0)]);
        assert_eq!(h.vertices, vec![p(0, 0)]);
        assert!(h.degenerate);

        let h = convex_hull(&[p(0, 0), p(4, 0), p(0, 4), p(1, 1)]);
        assert_eq!(h.vertices, vec![p(0, 0), p(4, 0), p(0, 4)]);
    }

    #[test]
    fn collinear_hull_is_a_segment() {
        let h = convex_hull(&[p(2, 2), p(0, 0), p(1, 1), p(3, 3)]);
        assert_eq!(h.vertices, vec![p(0, 0), p(3, 3)]);
        assert!(h.degenerate);
        assert_eq!(hull_location(&p(1, 1), &h), Location::Boundary);
        assert_eq!(hull_location(&p(4, 4), &h), Location::Outside);
        assert_eq!(hull_location(&p(1, 0), &h), Location::Outside);
    }

    #[test]
    fn location_examples() {
        let h = convex_hull(&[p(0, 0), p(4, 0), p(0, 4)]);
        assert_eq!(hull_location(&p(1, 1), &h), Location::Interior);
        assert_eq!(hull_location(&p(2, 0), &h), Location::Boundary);
        assert_eq!(hull_location(&p(0, 0), &h), Location::Boundary);
        assert_eq!(hull_location(&p(5, 5), &h), Location::Outside);
        assert_eq!(hull_location(&p(2, 2), &h), Location::Boundary);
    }

    #[test]
    fn singleton_hull_location() {
        let h = convex_hull(&[p(3, 4)]);
        assert_eq!(hull_location(&p(3, 4), &h), Location::Boundary);
        assert_eq!(hull_location(&p(3, 5), &h), Location::Outside);
    }

    #[test]
    fn max_collinear_examples() {
        assert_eq!(
            max_collinear(&set(&[(0, 0), (1, 0), (2, 0), (3, 1)])),
            (3, vec![0, 1, 2])
        );
        assert_eq!(max_collinear(&set(&[(5, 5)])), (1, vec![0]));
        assert_eq!(max_collinear(&set(&[(5, 5), (1, 2)])).0, 2);
        let (count, witness) =
            max_collinear(&set(&[(0, 0), (1, 3), (1, 1), (9, 9), (2, 2), (0, 5)]));
        assert_eq!(count, 4);
        assert_eq!(witness, vec![0, 2, 3, 4]);
    }

    #[test]
    fn duplicates_are_rejected() {
        let err = PointSet::new(vec![p(1, 1), p(2, 2), p(1, 1)]).unwrap_err();
        assert!(matches!(
            err,
            GeomError::DuplicatePoint {
                first: 0,
                second: 2,
                ..
            }
        ));
    }

    #[test]
    fn rationals_scale_by_lcm() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let s = PointSet::from_rationals(&[(r(1, 2), r(1, 3)), (r(1, 1), r(0, 1))]).unwrap();
        assert_eq!(s.points(), &[p(3, 2), p(6, 0)]);
    }

    #[test]
    fn small_mirror_only_when_in_range() {
        assert!(set(&[(0, 0), (1 << 40, -(1 << 40))]).small().is_some());
        let big = PointSet::new(vec![p(0, 0), p(SMALL_LIMIT, 0)]).unwrap();
        assert!(big.small().is_none());
    }

    fn coord() -> impl Strategy<Value = i128> {
        -(1i128 << 64)..(1i128 << 64)
    }

    fn big_point() -> impl Strategy<Value = Point> {
        (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
    }

    fn small_coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((0i64..7, 0i64..7), 1..40)
    }

    fn dedup(coords: Vec<(i64, i64)>) -> PointSet {
        let mut seen = HashSet::new();
        let pts = coords
            .into_iter()
            .filter(|c| seen.insert(*c))
            .map(|(x, y)| p(x, y))
            .collect();
        PointSet::new(pts).unwrap()
    }

    proptest! {
        #[test]
        fn orientation_is_antisymmetric(a in big_point(), b in big_point(), c in big_point()) {
            prop_assert_eq!(orientation(&a, &b, &c), orientation(&a, &c, &b).reversed());
        }

        #[test]
        fn small_and_big_orientation_agree(coords in prop::collection::vec(-(1i64 << 60)..(1i64 << 60), 6)) {
            let s: Vec<SmallPoint> = coords.chunks(2).map(|c| SmallPoint { x: c[0], y: c[1] }).collect();
            let b: Vec<Point> = coords.chunks(2).map(|c| p(c[0], c[1])).collect();
            prop_assert_eq!(SmallPoint::orient(&s[0], &s[1], &s[2]), Point::orient(&b[0], &b[1], &b[2]));
        }

        #[test]
        fn hull_is_idempotent_and_covers_input(coords in small_coords()) {
            let s = dedup(coords);
            let h = convex_hull(s.points());
            prop_assert_eq!(convex_hull(&h.vertices), h.clone());
            for q in s.iter() {
                prop_assert_ne!(hull_location(q, &h), Location::Outside);
            }
            let small = convex_hull(s.small().unwrap());
            prop_assert_eq!(small.vertices.len(), h.vertices.len());
        }

        #[test]
        fn max_collinear_matches_triple_scan(coords in prop::collection::vec((0i64..6, 0i64..6), 1..60)) {
            let s = dedup(coords);
            prop_assert_eq!(max_collinear(&s).0, crate::oracle::max_collinear_brute(&s));
            let (count, witness) = max_collinear(&s);
            prop_assert_eq!(witness.len(), count);
            if count >= 3 {
                let pts = s.select(&witness);
                for q in &pts[2..] {
                    prop_assert_eq!(orientation(&pts[0], &pts[1], q), Orientation::Collinear);
                }
            }
        }
    }
}
