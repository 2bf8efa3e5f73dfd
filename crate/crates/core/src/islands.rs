//! Visibility, islands, and the searches over them.
//!
//! An island is a subset `S` with `conv(S) ∩ P = S` (closed hull), a visible
//! island is an island whose points see each other pairwise, and a k-hole is
//! a k-point island in convex position.

use std::fmt;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::combinations::{binomial, for_each_with_first};
use crate::geom::{
    convex_hull, hull_indices, hull_location, locate_idx, point_in_open_segment, reduced_ray,
    with_coords, Location, Planar, PointSet,
};

/// Symmetric visibility relation over point indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityGraph {
    rows: Vec<FixedBitSet>,
}

impl VisibilityGraph {
    /// Groups the other points around each anchor by exact reduced ray
    /// direction; only the nearest point on each ray is visible.
    pub fn new(set: &PointSet) -> Self {
        let n = set.len();
        let pts = set.points();
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            let mut rays: Vec<_> = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let (dir, dist) = reduced_ray(&pts[i], &pts[j]);
                    (dir, dist, j)
                })
                .collect();
            rays.sort();
            for group in rays.chunk_by(|a, b| a.0 == b.0) {
                rows[i].insert(group[0].2);
            }
        }
        VisibilityGraph { rows }
    }

    pub fn from_matrix(matrix: &[Vec<bool>]) -> Self {
        let n = matrix.len();
        let rows = matrix
            .iter()
            .map(|r| {
                let mut row = FixedBitSet::with_capacity(n);
                row.extend(r.iter().enumerate().filter(|(_, &v)| v).map(|(j, _)| j));
                row
            })
            .collect();
        VisibilityGraph { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .enumerate()
            .all(|(a, &i)| subset[a + 1..].iter().all(|&j| self.adjacent(i, j)))
    }

    fn clique_bits(&self, members: &FixedBitSet) -> bool {
        let size = members.count_ones(..);
        members
            .ones()
            .all(|u| members.intersection_count(&self.rows[u]) == size - 1)
    }
}

pub fn visibility_graph(set: &PointSet) -> VisibilityGraph {
    VisibilityGraph::new(set)
}

fn bits(n: usize, subset: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    b.extend(subset.iter().copied());
    b
}

/// `S ∪ (conv(S) ∩ P)`. Since `conv` of that set is `conv(S)` again, one
/// round already reaches the fixpoint.
fn close<P: Planar>(pts: &[P], members: &FixedBitSet) -> FixedBitSet {
    let idx: Vec<usize> = members.ones().collect();
    let mut out = members.clone();
    if idx.len() < 2 {
        return out;
    }
    let hull = hull_indices(pts, &idx);
    for k in 0..pts.len() {
        if !members.contains(k) && locate_idx(pts, k, &hull) != Location::Outside {
            out.insert(k);
        }
    }
    out
}

pub fn is_island(set: &PointSet, subset: &[usize]) -> bool {
    let members = bits(set.len(), subset);
    with_coords!(set, |pts| close(pts, &members)) == members
}

/// Smallest island containing `subset`, as sorted indices.
pub fn island_closure(set: &PointSet, subset: &[usize]) -> Vec<usize> {
    let members = bits(set.len(), subset);
    with_coords!(set, |pts| close(pts, &members))
        .ones()
        .collect()
}

pub fn is_visible_island(set: &PointSet, vis: &VisibilityGraph, subset: &[usize]) -> bool {
    vis.is_clique(subset) && is_island(set, subset)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    MaxVisibleIsland,
    MaxVisibleClique,
    KHole,
    Lemma7,
    NeighborhoodIsland,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::MaxVisibleIsland => "max_visible_island",
            Quantity::MaxVisibleClique => "max_visible_clique",
            Quantity::KHole => "k_hole",
            Quantity::Lemma7 => "lemma7",
            Quantity::NeighborhoodIsland => "neighborhood_island",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// The search finished; `value` is exact.
    Complete,
    /// A witness of size at least the cutoff was found; `value >= cutoff`.
    CutoffReached,
    /// The node budget ran out; `value` is only a lower bound.
    BudgetExceeded,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Complete => "complete",
            Outcome::CutoffReached => "cutoff_reached",
            Outcome::BudgetExceeded => "budget_exceeded",
        }
    }
}

/// Verdict of a search.
///
/// `value` depends on the quantity: the best size found for the maximization
/// searches, `k` or 0 for [`Quantity::KHole`], and the number of 7-subsets
/// verified for [`Quantity::Lemma7`]. For `Lemma7` a non-empty witness is a
/// violating subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub quantity: Quantity,
    pub value: u64,
    pub witness: Vec<usize>,
    /// The point whose neighborhood holds the witness (neighborhood search only).
    pub anchor: Option<usize>,
    pub outcome: Outcome,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl SearchReport {
    /// Line-oriented `key: value` rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("quantity: {}\n", self.quantity.name()));
        out.push_str(&format!("value: {}\n", self.value));
        out.push_str(&format!("outcome: {}\n", self.outcome.name()));
        let witness: Vec<String> = self.witness.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("witness: {}\n", witness.join(" ")));
        if let Some(a) = self.anchor {
            out.push_str(&format!("anchor: {a}\n"));
        }
        out.push_str(&format!("nodes_explored: {}\n", self.nodes_explored));
        out.push_str(&format!("elapsed_ms: {}\n", self.elapsed.as_millis()));
        out
    }

    /// Re-checks the witness against the point set from the definitions,
    /// using only the predicates in [`crate::geom`].
    pub fn reverify(&self, set: &PointSet) -> bool {
        let w = &self.witness;
        if w.iter().any(|&i| i >= set.len()) || w.windows(2).any(|p| p[0] >= p[1]) {
            return false;
        }
        let pts = set.points();
        let pairwise_visible = |subset: &[usize]| {
            subset.iter().enumerate().all(|(a, &i)| {
                subset[a + 1..].iter().all(|&j| {
                    (0..pts.len()).all(|k| {
                        k == i || k == j || !point_in_open_segment(&pts[k], &pts[i], &pts[j])
                    })
                })
            })
        };
        let island = |subset: &[usize]| {
            let hull = convex_hull(&set.select(subset));
            (0..pts.len())
                .filter(|k| !subset.contains(k))
                .all(|k| hull_location(&pts[k], &hull) == Location::Outside)
        };
        match self.quantity {
            Quantity::MaxVisibleIsland => {
                w.len() as u64 == self.value && pairwise_visible(w) && island(w)
            }
            Quantity::MaxVisibleClique => w.len() as u64 == self.value && pairwise_visible(w),
            Quantity::KHole => {
                w.is_empty()
                    || (w.len() as u64 == self.value
                        && convex_hull(&set.select(w)).vertices.len() == w.len()
                        && island(w))
            }
            Quantity::Lemma7 => {
                if w.is_empty() {
                    return true;
                }
                let hull = convex_hull(&set.select(w));
                w.len() == 7
                    && pts
                        .iter()
                        .all(|p| hull_location(p, &hull) != Location::Interior)
            }
            Quantity::NeighborhoodIsland => {
                let Some(anchor) = self.anchor else {
                    return w.is_empty();
                };
                w.len() as u64 == self.value
                    && island(w)
                    && w.iter().all(|&i| {
                        i == anchor
                            || (0..pts.len()).all(|k| {
                                k == i
                                    || k == anchor
                                    || !point_in_open_segment(&pts[k], &pts[i], &pts[anchor])
                            })
                    })
            }
        }
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Cutoff and node budget for the branch-and-bound searches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchLimits {
    /// Stop as soon as a witness of this size is found.
    pub cutoff: Option<usize>,
    /// Maximum number of search nodes per independent search task.
    pub budget_nodes: Option<u64>,
}

impl SearchLimits {
    pub fn with_cutoff(cutoff: usize) -> Self {
        SearchLimits {
            cutoff: Some(cutoff),
            budget_nodes: None,
        }
    }
}

struct BranchOutcome {
    best: Vec<usize>,
    nodes: u64,
    exhausted: bool,
}

/// Branch and bound over closed sets. Each child extends the current set by
/// one candidate and (when `closed`) re-closes it; a child is dropped when
/// the closed set leaves `allowed`, breaks pairwise visibility (when
/// `visible`), or swallows a point excluded by an earlier sibling.
struct ClosureSearch<'a, P> {
    pts: &'a [P],
    vis: &'a VisibilityGraph,
    allowed: FixedBitSet,
    visible: bool,
    closed: bool,
    cutoff: usize,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    exhausted: bool,
}

impl<'a, P: Planar> ClosureSearch<'a, P> {
    fn new(
        pts: &'a [P],
        vis: &'a VisibilityGraph,
        allowed: FixedBitSet,
        visible: bool,
        closed: bool,
        limits: SearchLimits,
    ) -> Self {
        ClosureSearch {
            pts,
            vis,
            allowed,
            visible,
            closed,
            cutoff: limits.cutoff.unwrap_or(usize::MAX),
            budget: limits.budget_nodes.unwrap_or(u64::MAX),
            nodes: 0,
            best: Vec::new(),
            exhausted: false,
        }
    }

    fn run(mut self) -> BranchOutcome {
        let n = self.pts.len();
        let root = FixedBitSet::with_capacity(n);
        let cand = self.allowed.clone();
        self.expand(&root, cand, FixedBitSet::with_capacity(n));
        BranchOutcome {
            best: self.best,
            nodes: self.nodes,
            exhausted: self.exhausted,
        }
    }

    fn done(&self) -> bool {
        self.exhausted || self.best.len() >= self.cutoff
    }

    fn extend(&self, base: &FixedBitSet, v: usize) -> FixedBitSet {
        let mut t = base.clone();
        t.insert(v);
        if self.closed {
            close(self.pts, &t)
        } else {
            t
        }
    }

    fn admissible(&self, t: &FixedBitSet, excluded: &FixedBitSet) -> bool {
        t.is_subset(&self.allowed)
            && t.is_disjoint(excluded)
            && (!self.visible || self.vis.clique_bits(t))
    }

    /// Greedy colouring of the candidates in the visibility graph. Any
    /// pairwise-visible subset takes at most one vertex per colour class.
    fn colour_bound(&self, cand: &FixedBitSet) -> usize {
        let mut classes: Vec<FixedBitSet> = Vec::new();
        for v in cand.ones() {
            match classes
                .iter_mut()
                .find(|c| c.is_disjoint(self.vis.neighbors(v)))
            {
                Some(c) => c.insert(v),
                None => {
                    let mut c = FixedBitSet::with_capacity(cand.len());
                    c.insert(v);
                    classes.push(c);
                }
            }
        }
        classes.len()
    }

    fn expand(&mut self, s: &FixedBitSet, cand: FixedBitSet, excluded: FixedBitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let size = s.count_ones(..);
        if size > self.best.len() {
            self.best = s.ones().collect();
        }
        if self.done() {
            return;
        }
        let bound = if self.visible {
            self.colour_bound(&cand)
        } else {
            cand.count_ones(..)
        };
        if size + bound <= self.best.len() {
            return;
        }

        let mut order: Vec<(usize, usize)> = cand
            .ones()
            .map(|v| (self.vis.neighbors(v).intersection_count(&cand), v))
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        let mut remaining = cand;
        let mut excluded = excluded;
        for (_, v) in order {
            if self.done() || size + remaining.count_ones(..) <= self.best.len() {
                return;
            }
            remaining.set(v, false);
            let t = self.extend(s, v);
            if self.admissible(&t, &excluded) {
                let mut child = remaining.clone();
                child.difference_with(&t);
                if self.visible {
                    for u in t.ones() {
                        child.intersect_with(self.vis.neighbors(u));
                    }
                }
                // Drop candidates whose own closure with `t` is already dead.
                let dead: Vec<usize> = child
                    .ones()
                    .filter(|&c| !self.admissible(&self.extend(&t, c), &excluded))
                    .collect();
                for c in dead {
                    child.set(c, false);
                }
                self.expand(&t, child, excluded.clone());
            }
            excluded.insert(v);
        }
    }
}

fn elapsed_since(start: Instant) -> Duration {
    start.elapsed()
}

fn maximize(
    set: &PointSet,
    vis: &VisibilityGraph,
    allowed: FixedBitSet,
    closed: bool,
    limits: SearchLimits,
) -> BranchOutcome {
    with_coords!(set, |pts| {
        ClosureSearch::new(pts, vis, allowed, true, closed, limits).run()
    })
}

fn max_report(
    quantity: Quantity,
    out: BranchOutcome,
    limits: SearchLimits,
    start: Instant,
) -> SearchReport {
    let outcome = if out.best.len() >= limits.cutoff.unwrap_or(usize::MAX) {
        Outcome::CutoffReached
    } else if out.exhausted {
        Outcome::BudgetExceeded
    } else {
        Outcome::Complete
    };
    SearchReport {
        quantity,
        value: out.best.len() as u64,
        witness: out.best,
        anchor: None,
        outcome,
        nodes_explored: out.nodes,
        elapsed: elapsed_since(start),
    }
}

/// Largest visible island, by branch and bound over island closures. With a
/// cutoff the search stops at the first visible island of that size.
pub fn max_visible_island(set: &PointSet, limits: SearchLimits) -> SearchReport {
    max_visible_island_with(set, &VisibilityGraph::new(set), limits)
}

pub fn max_visible_island_with(
    set: &PointSet,
    vis: &VisibilityGraph,
    limits: SearchLimits,
) -> SearchReport {
    let start = Instant::now();
    let mut allowed = FixedBitSet::with_capacity(set.len());
    allowed.insert_range(..);
    let out = maximize(set, vis, allowed, true, limits);
    max_report(Quantity::MaxVisibleIsland, out, limits, start)
}

/// Largest pairwise-visible subset, with no island requirement.
pub fn max_visible_clique(set: &PointSet, limits: SearchLimits) -> SearchReport {
    let start = Instant::now();
    let vis = VisibilityGraph::new(set);
    let mut allowed = FixedBitSet::with_capacity(set.len());
    allowed.insert_range(..);
    let out = maximize(set, &vis, allowed, false, limits);
    max_report(Quantity::MaxVisibleClique, out, limits, start)
}

/// For each point `p`, the largest island of the whole set contained in the
/// closed neighborhood of `p` (`p` plus every point it sees). Reports the
/// maximum over `p`, ties going to the smallest anchor. The node budget
/// applies to each anchor separately.
pub fn neighborhood_island_measure(set: &PointSet, limits: SearchLimits) -> SearchReport {
    let start = Instant::now();
    let vis = VisibilityGraph::new(set);
    let n = set.len();
    let per_anchor: Vec<BranchOutcome> = (0..n)
        .into_par_iter()
        .map(|p| {
            let mut allowed = vis.neighbors(p).clone();
            allowed.insert(p);
            with_coords!(set, |pts| {
                ClosureSearch::new(pts, &vis, allowed, false, true, limits).run()
            })
        })
        .collect();
    let mut best: Option<(usize, &BranchOutcome)> = None;
    let mut nodes = 0;
    let mut exhausted = false;
    for (p, out) in per_anchor.iter().enumerate() {
        nodes += out.nodes;
        exhausted |= out.exhausted;
        if best.is_none_or(|(_, b)| out.best.len() > b.best.len()) {
            best = Some((p, out));
        }
    }
    let (anchor, witness) = match best {
        Some((p, out)) => (Some(p), out.best.clone()),
        None => (None, Vec::new()),
    };
    let cutoff = limits.cutoff.unwrap_or(usize::MAX);
    let outcome = if witness.len() >= cutoff {
        Outcome::CutoffReached
    } else if exhausted {
        Outcome::BudgetExceeded
    } else {
        Outcome::Complete
    };
    SearchReport {
        quantity: Quantity::NeighborhoodIsland,
        value: witness.len() as u64,
        witness,
        anchor,
        outcome,
        nodes_explored: nodes,
        elapsed: elapsed_since(start),
    }
}

struct HoleSearch<'a, P> {
    pts: &'a [P],
    k: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
}

impl<P: Planar> HoleSearch<'_, P> {
    /// Convex position and empty closed hull. Both properties pass to
    /// subsets, so a failing prefix prunes its whole subtree.
    fn is_hole(&self, subset: &[usize]) -> bool {
        let hull = hull_indices(self.pts, subset);
        if hull.len() != subset.len() {
            return false;
        }
        (0..self.pts.len())
            .filter(|i| !subset.contains(i))
            .all(|i| locate_idx(self.pts, i, &hull) == Location::Outside)
    }

    fn dfs(&mut self, current: &mut Vec<usize>, start: usize) -> Option<Vec<usize>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return None;
        }
        if current.len() == self.k {
            return Some(current.clone());
        }
        let n = self.pts.len();
        for v in start..n {
            if current.len() + (n - v) < self.k {
                break;
            }
            current.push(v);
            if self.is_hole(current) {
                if let Some(w) = self.dfs(current, v + 1) {
                    return Some(w);
                }
                if self.exhausted {
                    return None;
                }
            }
            current.pop();
        }
        None
    }
}

/// Finds the lexicographically first `k`-hole, or certifies there is none.
///
/// The search is split by smallest index and run in parallel; the node
/// budget caps each split, and node counts are summed in index order up to
/// the split that produced the witness.
pub fn find_k_hole(set: &PointSet, k: usize, limits: SearchLimits) -> SearchReport {
    assert!(k >= 3, "k-hole search needs k >= 3");
    let start = Instant::now();
    let n = set.len();
    let budget = limits.budget_nodes.unwrap_or(u64::MAX);
    let per_first: Vec<(Option<Vec<usize>>, u64, bool)> = (0..n)
        .into_par_iter()
        .map(|first| {
            with_coords!(set, |pts| {
                let mut search = HoleSearch {
                    pts,
                    k,
                    budget,
                    nodes: 0,
                    exhausted: false,
                };
                let mut current = vec![first];
                let found = if n - first >= k {
                    search.dfs(&mut current, first + 1)
                } else {
                    None
                };
                (found, search.nodes, search.exhausted)
            })
        })
        .collect();
    let mut nodes = 0u64;
    let mut exhausted = false;
    let mut witness = Vec::new();
    for (found, count, ex) in per_first {
        nodes += count;
        exhausted |= ex || nodes > budget;
        if exhausted {
            break;
        }
        if let Some(w) = found {
            witness = w;
            break;
        }
    }
    let (value, outcome) = if !witness.is_empty() {
        (k as u64, Outcome::Complete)
    } else if exhausted {
        (0, Outcome::BudgetExceeded)
    } else {
        (0, Outcome::Complete)
    };
    SearchReport {
        quantity: Quantity::KHole,
        value,
        witness,
        anchor: None,
        outcome,
        nodes_explored: nodes,
        elapsed: elapsed_since(start),
    }
}

const LEMMA_SUBSET: usize = 7;

struct LemmaSearch<'a, P> {
    pts: &'a [P],
    nodes: u64,
    verified: u64,
}

impl<P: Planar> LemmaSearch<'_, P> {
    fn has_interior_point(&self, subset: &[usize]) -> bool {
        let hull = hull_indices(self.pts, subset);
        hull.len() >= 3
            && (0..self.pts.len()).any(|i| locate_idx(self.pts, i, &hull) == Location::Interior)
    }

    /// Once a prefix has a point strictly inside its hull, every completion
    /// does too, so the whole subtree is counted as verified at once.
    fn dfs(&mut self, current: &mut Vec<usize>, start: usize) -> Option<Vec<usize>> {
        self.nodes += 1;
        let n = self.pts.len();
        let need = LEMMA_SUBSET - current.len();
        if current.len() >= 3 && self.has_interior_point(current) {
            self.verified += binomial(n - start, need);
            return None;
        }
        if need == 0 {
            return Some(current.clone());
        }
        for v in start..n {
            if n - v < need {
                break;
            }
            current.push(v);
            let found = self.dfs(current, v + 1);
            current.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Checks that every 7-subset of the set has some point of the set strictly
/// inside its convex hull. Reports the lexicographically first violation.
pub fn verify_lemma7(set: &PointSet) -> SearchReport {
    let start = Instant::now();
    let n = set.len();
    let per_first: Vec<(Option<Vec<usize>>, u64, u64)> = (0..n)
        .into_par_iter()
        .map(|first| {
            with_coords!(set, |pts| {
                let mut search = LemmaSearch {
                    pts,
                    nodes: 0,
                    verified: 0,
                };
                let found = if n - first >= LEMMA_SUBSET {
                    search.dfs(&mut vec![first], first + 1)
                } else {
                    None
                };
                (found, search.nodes, search.verified)
            })
        })
        .collect();
    let mut nodes = 0;
    let mut verified = 0;
    let mut witness = Vec::new();
    for (found, count, ok) in per_first {
        nodes += count;
        verified += ok;
        if let Some(w) = found {
            witness = w;
            break;
        }
    }
    SearchReport {
        quantity: Quantity::Lemma7,
        value: verified,
        witness,
        anchor: None,
        outcome: Outcome::Complete,
        nodes_explored: nodes,
        elapsed: elapsed_since(start),
    }
}

/// Whether some `k`-subset is a visible island, by enumerating all
/// `k`-subsets with a pairwise-visibility filter. Returns the first witness in
/// lexicographic order and the number of subsets enumerated.
pub fn exhaustive_visible_island_of_size(
    set: &PointSet,
    vis: &VisibilityGraph,
    k: usize,
) -> (Option<Vec<usize>>, u64) {
    let n = set.len();
    if k == 0 || k > n {
        return (None, 0);
    }
    let per_first: Vec<(Option<Vec<usize>>, u64)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            let res = with_coords!(set, |pts| {
                for_each_with_first(n, k, first, |combo| {
                    count += 1;
                    if !vis.is_clique(combo) {
                        return ControlFlow::Continue(());
                    }
                    let hull = hull_indices(pts, combo);
                    let island = (0..n)
                        .filter(|i| combo.binary_search(i).is_err())
                        .all(|i| locate_idx(pts, i, &hull) == Location::Outside);
                    if island {
                        ControlFlow::Break(combo.to_vec())
                    } else {
                        ControlFlow::Continue(())
                    }
                })
            });
            match res {
                ControlFlow::Break(w) => (Some(w), count),
                ControlFlow::Continue(()) => (None, count),
            }
        })
        .collect();
    let mut total = 0;
    for (found, count) in per_first {
        total += count;
        if found.is_some() {
            return (found, total);
        }
    }
    (None, total)
}

/// Exhaustive maximum visible island for small sets (at most 26 points).
pub fn max_visible_island_exhaustive(set: &PointSet) -> SearchReport {
    assert!(set.len() <= 26, "exhaustive search is limited to 26 points");
    let start = Instant::now();
    let vis = VisibilityGraph::new(set);
    let mut nodes = 0;
    for k in (1..=set.len()).rev() {
        let (found, count) = exhaustive_visible_island_of_size(set, &vis, k);
        nodes += count;
        if let Some(w) = found {
            return SearchReport {
                quantity: Quantity::MaxVisibleIsland,
                value: k as u64,
                witness: w,
                anchor: None,
                outcome: Outcome::Complete,
                nodes_explored: nodes,
                elapsed: elapsed_since(start),
            };
        }
    }
    SearchReport {
        quantity: Quantity::MaxVisibleIsland,
        value: 0,
        witness: Vec::new(),
        anchor: None,
        outcome: Outcome::Complete,
        nodes_explored: nodes,
        elapsed: elapsed_since(start),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::oracle;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn set(coords: &[(i64, i64)]) -> PointSet {
        PointSet::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn general_position_hexagon() -> PointSet {
        set(&[(0, 0), (4, -1), (7, 2), (6, 6), (2, 7), (-1, 3)])
    }

    #[test]
    fn collinear_blocking() {
        let s = set(&[(0, 0), (1, 0), (2, 0)]);
        let vis = visibility_graph(&s);
        assert!(!vis.adjacent(0, 2));
        assert!(vis.adjacent(0, 1) && vis.adjacent(1, 2));
        assert_eq!(vis.edge_count(), 2);
    }

    #[test]
    fn general_position_is_complete() {
        let s = general_position_hexagon();
        let vis = visibility_graph(&s);
        assert_eq!(vis.edge_count(), 15);
        for i in 0..6 {
            assert!(!vis.adjacent(i, i));
        }
    }

    #[test]
    fn island_examples() {
        let s = set(&[(0, 0), (1, 1), (2, 2), (5, 0)]);
        assert!(is_island(&s, &[0, 1, 2, 3]));
        assert!(!is_island(&s, &[0, 2]));
        assert!(is_island(&s, &[2]));
        assert!(is_island(&s, &[0, 1]));
        // (1, 1) sits on the edge from (0, 0) to (2, 2) of the triangle.
        assert!(!is_island(&s, &[0, 2, 3]));
    }

    #[test]
    fn closure_examples() {
        let s = set(&[(0, 0), (1, 1), (2, 2), (5, 0), (9, 9)]);
        assert_eq!(island_closure(&s, &[0, 2]), vec![0, 1, 2]);
        assert_eq!(island_closure(&s, &[0, 1, 2]), vec![0, 1, 2]);
        assert_eq!(island_closure(&s, &[3]), vec![3]);
        assert_eq!(island_closure(&s, &[0, 4]), vec![0, 1, 2, 4]);
    }

    #[test]
    fn visible_island_examples() {
        let s = set(&[(0, 0), (1, 0), (2, 0), (1, 5)]);
        let vis = visibility_graph(&s);
        assert!(is_visible_island(&s, &vis, &[3]));
        assert!(!is_visible_island(&s, &vis, &[0, 1, 2]));
        assert!(is_visible_island(&s, &vis, &[0, 1, 3]));
        let hex = general_position_hexagon();
        let vis = visibility_graph(&hex);
        assert!(is_visible_island(&hex, &vis, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn max_visible_island_general_position() {
        let s = general_position_hexagon();
        let r = max_visible_island(&s, SearchLimits::default());
        assert_eq!(r.value, 6);
        assert_eq!(r.outcome, Outcome::Complete);
        assert!(r.reverify(&s));
        let r = max_visible_island(&s, SearchLimits::with_cutoff(4));
        assert_eq!(r.outcome, Outcome::CutoffReached);
        assert!(r.value >= 4);
        assert!(r.reverify(&s));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let s = general_position_hexagon();
        let r = max_visible_island(
            &s,
            SearchLimits {
                cutoff: None,
                budget_nodes: Some(2),
            },
        );
        assert_eq!(r.outcome, Outcome::BudgetExceeded);
        assert!(r.value <= 6);
        assert!(r.reverify(&s));
    }

    #[test]
    fn k_hole_examples() {
        let pentagon = set(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]);
        let r = find_k_hole(&pentagon, 5, SearchLimits::default());
        assert_eq!(r.witness, vec![0, 1, 2, 3, 4]);
        assert!(r.reverify(&pentagon));
        let vis = visibility_graph(&pentagon);
        assert!(is_visible_island(&pentagon, &vis, &r.witness));

        let with_centre = set(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3), (2, 2)]);
        let r = find_k_hole(&with_centre, 5, SearchLimits::default());
        assert!(r.witness.is_empty());
        assert_eq!(r.outcome, Outcome::Complete);
        assert_eq!(oracle::k_hole_brute(&with_centre, 5), None);
    }

    #[test]
    fn lemma7_fails_on_convex_heptagon() {
        let hept = set(&[(0, 0), (4, -1), (8, 1), (9, 5), (6, 9), (1, 8), (-2, 4)]);
        let r = verify_lemma7(&hept);
        assert_eq!(r.witness, vec![0, 1, 2, 3, 4, 5, 6]);
        assert!(r.reverify(&hept));
    }

    #[test]
    fn neighborhood_examples() {
        let s = general_position_hexagon();
        let r = neighborhood_island_measure(&s, SearchLimits::default());
        assert_eq!(r.value, 6);
        assert!(r.reverify(&s));

        // The midpoint sees both ends, and the whole line is an island.
        let line = set(&[(0, 0), (1, 0), (2, 0)]);
        let r = neighborhood_island_measure(&line, SearchLimits::default());
        assert_eq!(r.value, 3);
        assert_eq!(r.anchor, Some(1));
        assert!(r.reverify(&line));

        let line = set(&[(0, 0), (1, 0), (2, 0), (3, 0)]);
        let r = neighborhood_island_measure(&line, SearchLimits::default());
        assert_eq!(r.value, 3);
        assert_eq!(r.witness, vec![0, 1, 2]);
    }

    #[test]
    fn report_text_block() {
        let r = SearchReport {
            quantity: Quantity::KHole,
            value: 0,
            witness: vec![],
            anchor: None,
            outcome: Outcome::Complete,
            nodes_explored: 12,
            elapsed: Duration::from_millis(3),
        };
        assert_eq!(
            r.to_text(),
            "quantity: k_hole\nvalue: 0\noutcome: complete\nwitness: \nnodes_explored: 12\nelapsed_ms: 3\n"
        );
    }

    fn random_set() -> impl Strategy<Value = PointSet> {
        prop::collection::vec((0i64..6, 0i64..6), 1..14).prop_map(|coords| {
            let mut seen = HashSet::new();
            set(&coords
                .into_iter()
                .filter(|c| seen.insert(*c))
                .collect::<Vec<_>>())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn visibility_matches_brute(s in random_set()) {
            let fast = visibility_graph(&s);
            let brute = VisibilityGraph::from_matrix(&oracle::visibility_matrix_brute(&s));
            prop_assert_eq!(fast, brute);
        }

        #[test]
        fn closure_is_extensive_idempotent_monotone(s in random_set(), a in any::<u64>(), b in any::<u64>()) {
            let n = s.len();
            let pick = |mask: u64| -> Vec<usize> { (0..n).filter(|i| mask >> i & 1 == 1).collect() };
            let small = pick(a & b);
            let big = pick(a);
            prop_assume!(!small.is_empty());
            let cs = island_closure(&s, &small);
            let cb = island_closure(&s, &big);
            prop_assert!(small.iter().all(|i| cs.contains(i)));
            prop_assert_eq!(island_closure(&s, &cs), cs.clone());
            prop_assert!(cs.iter().all(|i| cb.contains(i)));
            prop_assert!(is_island(&s, &cs));
            prop_assert_eq!(is_island(&s, &small), oracle::is_island_direct(&s, &small));
        }

        #[test]
        fn search_matches_exhaustive(s in random_set()) {
            let fast = max_visible_island(&s, SearchLimits::default());
            let (value, _) = oracle::max_visible_island_exhaustive(&s);
            prop_assert_eq!(fast.value, value as u64);
            prop_assert!(fast.reverify(&s));
            let lib = max_visible_island_exhaustive(&s);
            prop_assert_eq!(lib.value, value as u64);
        }

        #[test]
        fn holes_are_visible_islands(s in random_set(), k in 3usize..6) {
            let r = find_k_hole(&s, k, SearchLimits::default());
            prop_assert_eq!(r.witness.clone(), oracle::k_hole_brute(&s, k).unwrap_or_default());
            if !r.witness.is_empty() {
                let vis = visibility_graph(&s);
                prop_assert!(is_visible_island(&s, &vis, &r.witness));
            }
        }
    }
}
