//! Shared left-to-right sweep over x-monotone boundary curves.
//!
//! Each inverse contributes a lower and an upper boundary curve meeting at
//! its leftmost and rightmost vertices. The status holds the curves crossing
//! the sweep line in y-order; every gap between consecutive curves points to
//! a region — the swept part of an arrangement face — carrying the covered
//! point set and a convexity flag. Regions that close while still convex are
//! exactly the canonical faces and get reported.

use crate::covset::CovSet;
use crate::error::{Error, Result};
use crate::geom::{Point, Tolerance};
use crate::CanonicalTranslate;
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

pub(crate) trait SweepCurve {
    /// Index of the inverse this curve bounds.
    fn owner(&self) -> usize;
    /// Upper curves have the inverse's interior below them, lower curves
    /// above them.
    fn is_upper(&self) -> bool;
    fn y_at(&self, x: f64) -> f64;
}

pub(crate) struct InverseEntry<C> {
    pub left: Point,
    pub right: Point,
    pub lower: C,
    pub upper: C,
}

pub(crate) trait SweepGeometry {
    type Curve: SweepCurve;
    fn inverses(&self) -> Vec<InverseEntry<Self::Curve>>;
    /// Earliest boundary crossing of the two curves strictly right of
    /// `after_x`, if any.
    fn next_crossing(&self, a: &Self::Curve, b: &Self::Curve, after_x: f64) -> Option<Point>;
}

/// Convexity bookkeeping at a crossing of two boundary curves, keyed by the
/// curve kinds just before the swap. The region opening to the right is a
/// corner of the intersection of both inverses exactly when the lower curve
/// was an upper one and vice versa; only that corner starts convex. When the
/// kinds differ the regions above and below the crossing acquire a boundary
/// bulging into them and turn non-convex; same-kind crossings leave their
/// neighbors' flags unchanged.
pub(crate) fn crossing_flags(below_is_upper: bool, above_is_upper: bool) -> (bool, bool) {
    let new_region_convex = below_is_upper && !above_is_upper;
    let neighbors_become_nonconvex = below_is_upper != above_is_upper;
    (new_region_convex, neighbors_become_nonconvex)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EventKind {
    /// Rightmost vertex of an inverse: its curves leave the status.
    Right(usize),
    /// Two adjacent curves swap.
    Cross { below: usize, above: usize },
    /// Leftmost vertex of an inverse: its curves enter the status.
    Left(usize),
}

impl EventKind {
    fn rank(&self) -> u8 {
        match self {
            EventKind::Right(_) => 0,
            EventKind::Cross { .. } => 1,
            EventKind::Left(_) => 2,
        }
    }

    fn tie(&self) -> (usize, usize) {
        match *self {
            EventKind::Right(i) => (i, 0),
            EventKind::Cross { below, above } => (below, above),
            EventKind::Left(i) => (i, 0),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Event {
    x: f64,
    y: f64,
    kind: EventKind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Event {}
impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then(self.y.total_cmp(&other.y))
            .then(self.kind.rank().cmp(&other.kind.rank()))
            .then(self.kind.tie().cmp(&other.kind.tie()))
    }
}

struct Region {
    covered: CovSet,
    convex: bool,
    intervals: usize,
    samples: Vec<Point>,
    closed: bool,
}

struct Arena {
    parent: Vec<usize>,
    regions: Vec<Region>,
}

impl Arena {
    fn new() -> Self {
        Arena {
            parent: Vec::new(),
            regions: Vec::new(),
        }
    }

    fn create(&mut self, covered: CovSet, convex: bool, sample: Point) -> usize {
        let id = self.regions.len();
        self.parent.push(id);
        self.regions.push(Region {
            covered,
            convex,
            intervals: 1,
            samples: vec![sample],
            closed: false,
        });
        id
    }

    fn find(&mut self, id: usize) -> usize {
        let mut root = id;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = id;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges two distinct regions that turn out to be swept parts of one
    /// face. The face wraps around the inverse that just ended, so it is
    /// not convex. The smaller id survives.
    fn merge(&mut self, a: usize, b: usize) -> usize {
        debug_assert_ne!(a, b);
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        assert!(
            self.regions[keep].covered == self.regions[drop].covered,
            "merged regions must hold equal covered sets"
        );
        let moved = std::mem::take(&mut self.regions[drop].samples);
        let drop_count = self.regions[drop].intervals;
        self.parent[drop] = keep;
        let r = &mut self.regions[keep];
        r.samples.extend(moved);
        r.intervals += drop_count;
        r.convex = false;
        keep
    }
}

pub(crate) struct SweepOutcome {
    pub translates: Vec<CanonicalTranslate>,
    pub events_processed: usize,
    /// Distinct covered sets over all regions ever created, including the
    /// unbounded one.
    pub distinct_face_sets: usize,
    pub regions_created: usize,
}

pub(crate) fn run_sweep<G: SweepGeometry>(
    geometry: &G,
    n_points: usize,
    tol: &Tolerance,
) -> Result<SweepOutcome> {
    let entries = geometry.inverses();
    let mut curves: Vec<G::Curve> = Vec::with_capacity(entries.len() * 2);
    let mut queue: BinaryHeap<std::cmp::Reverse<Event>> = BinaryHeap::new();
    let mut lefts = Vec::with_capacity(entries.len());
    let mut rights = Vec::with_capacity(entries.len());
    for (i, e) in entries.into_iter().enumerate() {
        debug_assert_eq!(e.lower.owner(), i);
        curves.push(e.lower);
        curves.push(e.upper);
        queue.push(std::cmp::Reverse(Event {
            x: e.left.x,
            y: e.left.y,
            kind: EventKind::Left(i),
        }));
        queue.push(std::cmp::Reverse(Event {
            x: e.right.x,
            y: e.right.y,
            kind: EventKind::Right(i),
        }));
        lefts.push(e.left);
        rights.push(e.right);
    }
    let lower_of = |i: usize| 2 * i;
    let upper_of = |i: usize| 2 * i + 1;

    let mut arena = Arena::new();
    let outer = arena.create(CovSet::empty(n_points), false, Point::new(0.0, 0.0));
    arena.regions[outer].samples.clear();

    let mut status: Vec<usize> = Vec::new();
    let mut intervals: Vec<usize> = vec![outer];
    let mut scheduled: HashSet<(usize, usize, u64, u64)> = HashSet::new();
    let mut face_sets: HashSet<CovSet> = HashSet::new();
    face_sets.insert(arena.regions[outer].covered.clone());

    let mut translates = Vec::new();
    let mut events_processed = 0usize;

    // Schedules the next crossing of the currently adjacent status slots
    // (i, i+1), skipping pairs from the same inverse.
    macro_rules! schedule_adjacent {
        ($i:expr, $cur_x:expr) => {{
            let i = $i;
            if i + 1 < status.len() {
                let a = status[i];
                let b = status[i + 1];
                if curves[a].owner() != curves[b].owner() {
                    if let Some(q) = geometry.next_crossing(&curves[a], &curves[b], $cur_x) {
                        let key = (a.min(b), a.max(b), q.x.to_bits(), q.y.to_bits());
                        if scheduled.insert(key) {
                            queue.push(std::cmp::Reverse(Event {
                                x: q.x,
                                y: q.y,
                                kind: EventKind::Cross { below: a, above: b },
                            }));
                        }
                    }
                }
            }
        }};
    }

    while let Some(std::cmp::Reverse(ev)) = queue.pop() {
        match ev.kind {
            EventKind::Left(inv) => {
                events_processed += 1;
                let q = lefts[inv];
                let idx = locate(&status, &curves, q.x, q.y, tol)?;
                let old = arena.find(intervals[idx]);
                let mut covered = arena.regions[old].covered.clone();
                covered.insert(inv);
                face_sets.insert(covered.clone());
                let fresh = arena.create(covered, true, q);
                {
                    let r = &mut arena.regions[old];
                    r.convex = false;
                    r.samples.push(q);
                    r.intervals += 1;
                }
                status.insert(idx, lower_of(inv));
                status.insert(idx + 1, upper_of(inv));
                intervals.insert(idx + 1, fresh);
                intervals.insert(idx + 2, old);
                if idx > 0 {
                    schedule_adjacent!(idx - 1, ev.x);
                }
                schedule_adjacent!(idx + 1, ev.x);
            }
            EventKind::Right(inv) => {
                events_processed += 1;
                let q = rights[inv];
                let lo = lower_of(inv);
                let hi = upper_of(inv);
                let idx = status
                    .iter()
                    .position(|&c| c == lo || c == hi)
                    .ok_or_else(|| degenerate("curve missing at its rightmost vertex"))?;
                if !(idx + 1 < status.len()
                    && (status[idx + 1] == lo || status[idx + 1] == hi)
                    && status[idx] != status[idx + 1])
                {
                    return Err(degenerate("boundary curves not adjacent at rightmost vertex"));
                }
                let mid = arena.find(intervals[idx + 1]);
                let closes = {
                    let r = &mut arena.regions[mid];
                    r.intervals -= 1;
                    r.samples.push(q);
                    r.intervals == 0
                };
                if closes {
                    close_region(&mut arena, &mut translates, mid);
                }
                let below = arena.find(intervals[idx]);
                let above = arena.find(intervals[idx + 2]);
                let survivor = if below == above {
                    let r = &mut arena.regions[below];
                    r.intervals -= 1;
                    r.samples.push(q);
                    below
                } else {
                    let s = arena.merge(below, above);
                    let r = &mut arena.regions[s];
                    r.intervals -= 1;
                    r.samples.push(q);
                    s
                };
                status.drain(idx..idx + 2);
                intervals.drain(idx + 1..idx + 3);
                intervals[idx] = survivor;
                if idx > 0 {
                    schedule_adjacent!(idx - 1, ev.x);
                }
            }
            EventKind::Cross { below, above } => {
                let q = Point::new(ev.x, ev.y);
                let key = (below.min(above), below.max(above), ev.x.to_bits(), ev.y.to_bits());
                scheduled.remove(&key);
                // Stale entries are skipped: the pair must still be adjacent
                // in the stored orientation.
                let Some(i) = status.iter().position(|&c| c == below) else {
                    continue;
                };
                if i + 1 >= status.len() || status[i + 1] != above {
                    continue;
                }
                events_processed += 1;

                let dying = arena.find(intervals[i + 1]);
                let closes = {
                    let r = &mut arena.regions[dying];
                    r.intervals -= 1;
                    r.samples.push(q);
                    r.intervals == 0
                };
                if closes {
                    close_region(&mut arena, &mut translates, dying);
                }
                let mut covered = arena.regions[dying].covered.clone();
                covered.toggle(curves[below].owner());
                covered.toggle(curves[above].owner());
                face_sets.insert(covered.clone());
                let (new_convex, mark_neighbors) =
                    crossing_flags(curves[below].is_upper(), curves[above].is_upper());
                debug_assert!(
                    !new_convex || !arena.regions[dying].convex,
                    "an opening corner implies the dying region was already non-convex"
                );
                let fresh = arena.create(covered, new_convex, q);
                let under = arena.find(intervals[i]);
                let over = arena.find(intervals[i + 2]);
                arena.regions[under].samples.push(q);
                arena.regions[over].samples.push(q);
                if mark_neighbors {
                    arena.regions[under].convex = false;
                    arena.regions[over].convex = false;
                }
                status.swap(i, i + 1);
                intervals[i + 1] = fresh;
                if i > 0 {
                    schedule_adjacent!(i - 1, ev.x);
                }
                // The swapped pair stays adjacent and may cross again: two
                // curved boundaries meet up to twice.
                schedule_adjacent!(i, ev.x);
                schedule_adjacent!(i + 1, ev.x);
            }
        }
    }

    if !status.is_empty() {
        return Err(degenerate("status not empty after final event"));
    }
    let regions_created = arena.regions.len();
    Ok(SweepOutcome {
        translates: crate::finalize_translates(translates),
        events_processed,
        distinct_face_sets: face_sets.len(),
        regions_created,
    })
}

fn degenerate(msg: &str) -> Error {
    Error::DegeneracyUnresolved(msg.into())
}

fn close_region(arena: &mut Arena, translates: &mut Vec<CanonicalTranslate>, root: usize) {
    let r = &mut arena.regions[root];
    debug_assert!(!r.closed);
    r.closed = true;
    if r.convex && !r.covered.is_empty() {
        let cx = r.samples.iter().map(|p| p.x).sum::<f64>() / r.samples.len() as f64;
        let cy = r.samples.iter().map(|p| p.y).sum::<f64>() / r.samples.len() as f64;
        translates.push(CanonicalTranslate::new(Point::new(cx, cy), r.covered.clone()));
    }
}

/// Index of the interval containing `(x, y)`: the number of status curves
/// strictly below `y`. A curve passing within epsilon of the point is a
/// degeneracy the perturbation stage should have removed.
fn locate<C: SweepCurve>(
    status: &[usize],
    curves: &[C],
    x: f64,
    y: f64,
    tol: &Tolerance,
) -> Result<usize> {
    let idx = status.partition_point(|&c| curves[c].y_at(x) < y);
    if idx > 0 && (y - curves[status[idx - 1]].y_at(x)).abs() <= tol.epsilon {
        return Err(degenerate("event point lies on another boundary curve"));
    }
    if idx < status.len() && (curves[status[idx]].y_at(x) - y).abs() <= tol.epsilon {
        return Err(degenerate("event point lies on another boundary curve"));
    }
    Ok(idx)
}
