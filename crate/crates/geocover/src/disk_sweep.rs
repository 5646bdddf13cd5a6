//! Plane sweep over the arrangement of equal-radius circles centered on the
//! input points (the point inverses of a disk prototype). Reports one
//! canonical disk per convex arrangement face.

use crate::error::Result;
use crate::geom::{circle_circle_intersections, Point, PrototypeShape, Tolerance};
use crate::inverse::{build_inverses, intersection_stats, IntersectionStats};
use crate::sweep::{self, InverseEntry, SweepCurve, SweepGeometry};
use crate::CanonicalTranslate;

/// Which half of a circle's boundary a status curve is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcKind {
    Upper,
    Lower,
}

/// Local context of an intersection event: the kinds of the two crossing
/// semicircles in bottom-to-top order before the swap, and the flag of the
/// region ending at the crossing.
#[derive(Clone, Copy, Debug)]
pub struct CrossingContext {
    pub below: ArcKind,
    pub above: ArcKind,
    pub old_region_convex: bool,
}

/// Flag updates produced by an intersection event.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingFlags {
    /// Whether the region opening to the right of the crossing starts convex.
    pub new_region_convex: bool,
    /// Whether the regions directly above and below the crossing turn
    /// non-convex. Same-kind crossings leave them as they are.
    pub neighbors_become_nonconvex: bool,
}

/// Convexity bookkeeping for an intersection event. A new region starts
/// convex only at an opening corner of the intersection of the two disks,
/// which happens exactly when an upper semicircle crosses a lower one from
/// below; such a corner also forces the ending region to have been
/// non-convex already.
pub fn convexity_update(ctx: &CrossingContext) -> CrossingFlags {
    let (new_region_convex, neighbors_become_nonconvex) = sweep::crossing_flags(
        ctx.below == ArcKind::Upper,
        ctx.above == ArcKind::Upper,
    );
    debug_assert!(!(new_region_convex && ctx.old_region_convex));
    CrossingFlags {
        new_region_convex,
        neighbors_become_nonconvex,
    }
}

struct Semicircle {
    center: Point,
    radius: f64,
    owner: usize,
    upper: bool,
}

impl SweepCurve for Semicircle {
    fn owner(&self) -> usize {
        self.owner
    }

    fn is_upper(&self) -> bool {
        self.upper
    }

    fn y_at(&self, x: f64) -> f64 {
        let dx = x - self.center.x;
        let h = (self.radius * self.radius - dx * dx).max(0.0).sqrt();
        if self.upper {
            self.center.y + h
        } else {
            self.center.y - h
        }
    }
}

struct DiskGeometry<'a> {
    centers: &'a [Point],
    radius: f64,
    tol: Tolerance,
}

impl SweepGeometry for DiskGeometry<'_> {
    type Curve = Semicircle;

    fn inverses(&self) -> Vec<InverseEntry<Semicircle>> {
        self.centers
            .iter()
            .enumerate()
            .map(|(i, c)| InverseEntry {
                left: Point::new(c.x - self.radius, c.y),
                right: Point::new(c.x + self.radius, c.y),
                lower: Semicircle {
                    center: *c,
                    radius: self.radius,
                    owner: i,
                    upper: false,
                },
                upper: Semicircle {
                    center: *c,
                    radius: self.radius,
                    owner: i,
                    upper: true,
                },
            })
            .collect()
    }

    fn next_crossing(&self, a: &Semicircle, b: &Semicircle, after_x: f64) -> Option<Point> {
        circle_circle_intersections(a.center, b.center, self.radius, &self.tol)
            .into_iter()
            .filter(|q| {
                q.x > after_x
                    && on_semicircle(a, *q)
                    && on_semicircle(b, *q)
            })
            .min_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)))
    }
}

fn on_semicircle(arc: &Semicircle, q: Point) -> bool {
    if arc.upper {
        q.y >= arc.center.y
    } else {
        q.y <= arc.center.y
    }
}

/// Output of the disk sweep: the canonical disks plus the counters the
/// complexity bounds are stated in.
#[derive(Debug)]
pub struct DiskReport {
    pub translates: Vec<CanonicalTranslate>,
    pub stats: IntersectionStats,
    pub events_processed: usize,
    /// Distinct covered sets over all sweep regions ever created.
    pub face_count: usize,
}

/// Reports all distinct canonical disks of radius `radius` for `points`.
///
/// Points must already be deduplicated and perturbed (see
/// [`crate::geom::perturb`]); the sweep fails with `DegeneracyUnresolved`
/// when events still coincide.
pub fn report_canonical_disks(
    points: &[Point],
    radius: f64,
    tol: &Tolerance,
) -> Result<DiskReport> {
    let prototype = PrototypeShape::disk(radius, Point::new(0.0, 0.0))?;
    let inverses = build_inverses(points, &prototype);
    let stats = intersection_stats(&inverses, tol);
    let geometry = DiskGeometry {
        centers: points,
        radius,
        tol: *tol,
    };
    let outcome = sweep::run_sweep(&geometry, points.len(), tol)?;
    Ok(DiskReport {
        translates: outcome.translates,
        stats,
        events_processed: outcome.events_processed,
        face_count: outcome.distinct_face_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::contains;
    use crate::geom::perturb::{disk_degenerate, prepare_points};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn run(points: &[Point], radius: f64) -> DiskReport {
        let t = tol();
        let prep = prepare_points(points, &t, 1, |pts| disk_degenerate(pts, radius, &t)).unwrap();
        report_canonical_disks(&prep.points, radius, &t).unwrap()
    }

    fn families(report: &DiskReport) -> Vec<Vec<usize>> {
        report.translates.iter().map(|t| t.covered.to_vec()).collect()
    }

    #[test]
    fn single_point_is_one_singleton() {
        let rep = run(&[Point::new(0.0, 0.0)], 1.0);
        assert_eq!(families(&rep), vec![vec![0]]);
        assert!(rep.translates[0].reference.dist(Point::new(0.0, 0.0)) < 1e-6);
    }

    #[test]
    fn two_far_points_stay_separate() {
        let rep = run(&[Point::new(0.0, 0.0), Point::new(3.0, 0.0)], 1.0);
        assert_eq!(families(&rep), vec![vec![0], vec![1]]);
        assert_eq!((rep.stats.k, rep.stats.e0), (0, 2));
    }

    #[test]
    fn two_close_points_share_one_canonical_disk() {
        let rep = run(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0)], 1.0);
        assert_eq!(families(&rep), vec![vec![0, 1]]);
    }

    #[test]
    fn chain_of_three_yields_two_overlapping_pairs() {
        let rep = run(
            &[Point::new(0.0, 0.0), Point::new(1.9, 0.0), Point::new(3.8, 0.0)],
            1.0,
        );
        assert_eq!(families(&rep), vec![vec![0, 1], vec![1, 2]]);
        assert!(rep.translates.len() <= rep.stats.k + rep.stats.e0);
    }

    #[test]
    fn triangle_within_circumradius_is_covered_together() {
        // Circumradius of this triangle is about 0.834 < 1.
        let rep = run(
            &[Point::new(0.0, 0.0), Point::new(1.5, 0.0), Point::new(0.75, 1.2)],
            1.0,
        );
        assert_eq!(families(&rep), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn witnesses_reproduce_their_covered_sets() {
        let t = tol();
        let points = [
            Point::new(0.13, 0.21),
            Point::new(1.07, 0.58),
            Point::new(0.62, 1.44),
            Point::new(2.53, 1.02),
            Point::new(3.9, 3.7),
        ];
        let prep = prepare_points(&points, &t, 5, |pts| disk_degenerate(pts, 1.0, &t)).unwrap();
        let rep = report_canonical_disks(&prep.points, 1.0, &t).unwrap();
        let proto = PrototypeShape::disk(1.0, Point::new(0.0, 0.0)).unwrap();
        assert!(!rep.translates.is_empty());
        for tr in &rep.translates {
            for (i, p) in prep.points.iter().enumerate() {
                assert_eq!(
                    contains(&proto, tr.reference, *p, &t),
                    tr.covered.contains(i),
                    "witness {:?} disagrees at point {i}",
                    tr.reference
                );
            }
        }
    }

    #[test]
    fn event_count_stays_within_bound() {
        let rep = run(
            &[Point::new(0.0, 0.0), Point::new(1.9, 0.0), Point::new(3.8, 0.0)],
            1.0,
        );
        let n = 3;
        assert!(rep.events_processed <= 2 * n + 2 * rep.stats.k);
        assert!(rep.face_count <= 2 * rep.stats.k + 2 + rep.stats.e0);
    }

    #[test]
    fn convexity_update_paper_cases() {
        // Two upper semicircles crossing: the new region is non-convex.
        let f = convexity_update(&CrossingContext {
            below: ArcKind::Upper,
            above: ArcKind::Upper,
            old_region_convex: false,
        });
        assert!(!f.new_region_convex);
        assert!(!f.neighbors_become_nonconvex);

        // Upper-lower crossing with a non-convex old region: the new region
        // (the opening corner of the two disks' intersection) is convex.
        let f = convexity_update(&CrossingContext {
            below: ArcKind::Upper,
            above: ArcKind::Lower,
            old_region_convex: false,
        });
        assert!(f.new_region_convex);
        assert!(f.neighbors_become_nonconvex);

        // Two lower semicircles: neighbors keep their flags.
        let f = convexity_update(&CrossingContext {
            below: ArcKind::Lower,
            above: ArcKind::Lower,
            old_region_convex: false,
        });
        assert!(!f.new_region_convex);
        assert!(!f.neighbors_become_nonconvex);
    }
}
