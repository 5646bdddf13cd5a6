//! Brute-force computation of the distinct canonical covered sets for small
//! instances. Candidate placements are enumerated exhaustively and checked
//! with closed containment only, independent of the sweep and traversal
//! paths, so the two routes validate each other.

use crate::covset::CovSet;
use crate::error::{Error, Result};
use crate::geom::{
    circle_circle_intersections, ring_edges, segment_intersection, Point, PrototypeShape,
    Tolerance,
};
use crate::inverse::{build_inverses, covered_set_at};
use crate::CanonicalTranslate;

pub const DISK_ORACLE_CAP: usize = 30;
pub const POLYGON_ORACLE_POINT_CAP: usize = 20;
pub const POLYGON_ORACLE_VERTEX_CAP: usize = 12;

/// Every distinct covered set seen among a candidate placement family, with
/// one witness each and a maximality flag.
#[derive(Clone, Debug)]
pub struct CandidateFamily {
    pub sets: Vec<(CovSet, Point)>,
    pub maximal: Vec<bool>,
}

impl CandidateFamily {
    fn from_candidates(
        prototype: &PrototypeShape,
        points: &[Point],
        candidates: impl IntoIterator<Item = Point>,
        tol: &Tolerance,
    ) -> Self {
        let mut sets: Vec<(CovSet, Point)> = Vec::new();
        for c in candidates {
            let covered = covered_set_at(prototype, c, points, tol);
            if covered.is_empty() {
                continue;
            }
            if !sets.iter().any(|(s, _)| *s == covered) {
                sets.push((covered, c));
            }
        }
        sets.sort_by(|a, b| a.0.cmp(&b.0));
        let maximal = sets
            .iter()
            .map(|(s, _)| !sets.iter().any(|(t, _)| s.is_proper_subset(t)))
            .collect();
        CandidateFamily { sets, maximal }
    }

    /// The maximal sets as canonical translates.
    pub fn maximal_translates(&self) -> Vec<CanonicalTranslate> {
        crate::finalize_translates(
            self.sets
                .iter()
                .zip(&self.maximal)
                .filter(|(_, m)| **m)
                .map(|((s, w), _)| CanonicalTranslate::new(*w, s.clone()))
                .collect(),
        )
    }

    /// All distinct nonempty covered sets, maximal or not.
    pub fn all_sets(&self) -> Vec<CovSet> {
        self.sets.iter().map(|(s, _)| s.clone()).collect()
    }
}

/// Candidate placements witnessing every maximal covered set of a disk
/// instance: the points themselves plus, for every pair within diameter
/// distance, both centers of the radius-`r` circles through the pair, each
/// nudged toward the pair midpoint so boundary incidences become interior.
pub fn disk_candidate_family(
    points: &[Point],
    radius: f64,
    tol: &Tolerance,
    nudge: f64,
) -> CandidateFamily {
    let mut candidates: Vec<Point> = points.to_vec();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].dist(points[j]) > 2.0 * radius + tol.epsilon {
                continue;
            }
            let mid = points[i].midpoint(points[j]);
            for c in circle_circle_intersections(points[i], points[j], radius, tol) {
                let d = c.dist(mid);
                let nudged = if d > tol.epsilon {
                    Point::new(
                        c.x + (mid.x - c.x) / d * nudge,
                        c.y + (mid.y - c.y) / d * nudge,
                    )
                } else {
                    c
                };
                candidates.push(nudged);
            }
        }
    }
    let prototype = PrototypeShape::Disk {
        radius,
        reference: Point::new(0.0, 0.0),
    };
    CandidateFamily::from_candidates(&prototype, points, candidates, tol)
}

/// The antichain of maximal covered sets for a disk instance, with witnesses.
pub fn oracle_canonical_disks(
    points: &[Point],
    radius: f64,
    tol: &Tolerance,
    cap: Option<usize>,
) -> Result<Vec<CanonicalTranslate>> {
    let cap = cap.unwrap_or(DISK_ORACLE_CAP);
    if points.len() > cap {
        return Err(Error::CapExceeded(format!(
            "{} points exceed the disk oracle cap {cap}",
            points.len()
        )));
    }
    Ok(disk_candidate_family(points, radius, tol, tol.epsilon).maximal_translates())
}

/// Secondary oracle: covered sets sampled on a dense square grid over the
/// instance's bounding box (padded by the radius), plus the points of `P`
/// themselves. Returns every distinct set found.
pub fn grid_family_disks(
    points: &[Point],
    radius: f64,
    step: f64,
    tol: &Tolerance,
) -> CandidateFamily {
    let (lo_x, hi_x, lo_y, hi_y) = padded_bounds(points, radius);
    let mut candidates = points.to_vec();
    let nx = ((hi_x - lo_x) / step).ceil() as usize + 1;
    let ny = ((hi_y - lo_y) / step).ceil() as usize + 1;
    for ix in 0..=nx {
        for iy in 0..=ny {
            candidates.push(Point::new(lo_x + ix as f64 * step, lo_y + iy as f64 * step));
        }
    }
    let prototype = PrototypeShape::Disk {
        radius,
        reference: Point::new(0.0, 0.0),
    };
    CandidateFamily::from_candidates(&prototype, points, candidates, tol)
}

fn padded_bounds(points: &[Point], pad: f64) -> (f64, f64, f64, f64) {
    let mut lo_x = f64::INFINITY;
    let mut hi_x = f64::NEG_INFINITY;
    let mut lo_y = f64::INFINITY;
    let mut hi_y = f64::NEG_INFINITY;
    for p in points {
        lo_x = lo_x.min(p.x);
        hi_x = hi_x.max(p.x);
        lo_y = lo_y.min(p.y);
        hi_y = hi_y.max(p.y);
    }
    (lo_x - pad, hi_x + pad, lo_y - pad, hi_y + pad)
}

/// The antichain of maximal covered sets for a polygon instance, computed by
/// building the naive arrangement of all inverse boundary segments and
/// sampling one interior point per vertical trapezoid of every face.
pub fn oracle_canonical_polygons(
    points: &[Point],
    prototype: &PrototypeShape,
    tol: &Tolerance,
    point_cap: Option<usize>,
    vertex_cap: Option<usize>,
) -> Result<Vec<CanonicalTranslate>> {
    Ok(polygon_candidate_family(points, prototype, tol, point_cap, vertex_cap)?
        .maximal_translates())
}

/// Full distinct-set family for a polygon instance (see
/// [`oracle_canonical_polygons`] for the sampling scheme).
pub fn polygon_candidate_family(
    points: &[Point],
    prototype: &PrototypeShape,
    tol: &Tolerance,
    point_cap: Option<usize>,
    vertex_cap: Option<usize>,
) -> Result<CandidateFamily> {
    let poly = prototype
        .as_polygon()
        .ok_or_else(|| Error::InvalidInput("polygon oracle needs a polygon prototype".into()))?;
    let point_cap = point_cap.unwrap_or(POLYGON_ORACLE_POINT_CAP);
    let vertex_cap = vertex_cap.unwrap_or(POLYGON_ORACLE_VERTEX_CAP);
    if points.len() > point_cap {
        return Err(Error::CapExceeded(format!(
            "{} points exceed the polygon oracle cap {point_cap}",
            points.len()
        )));
    }
    if poly.vertex_count() > vertex_cap {
        return Err(Error::CapExceeded(format!(
            "{} vertices exceed the polygon oracle cap {vertex_cap}",
            poly.vertex_count()
        )));
    }

    let inverses = build_inverses(points, prototype);
    let mut segments: Vec<(Point, Point)> = Vec::new();
    for shape in &inverses.inverses {
        let p = shape.as_polygon().expect("polygon inverse");
        for ring in p.rings() {
            for (a, b) in ring_edges(ring) {
                segments.push((a, b));
            }
        }
    }

    // Critical x-coordinates: all endpoints and all pairwise crossings.
    let mut xs: Vec<f64> = segments.iter().flat_map(|(a, b)| [a.x, b.x]).collect();
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            let (a1, a2) = segments[i];
            let (b1, b2) = segments[j];
            if let Some(q) = segment_intersection(a1, a2, b1, b2, tol)? {
                xs.push(q.x);
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() <= tol.epsilon);

    // One sample per vertical trapezoid: midpoints between consecutive
    // segments at each strip's mid-x.
    let mut candidates: Vec<Point> = Vec::new();
    for w in xs.windows(2) {
        if w[1] - w[0] <= 2.0 * tol.epsilon {
            continue;
        }
        let xm = (w[0] + w[1]) / 2.0;
        let mut ys: Vec<f64> = segments
            .iter()
            .filter(|(a, b)| (a.x.min(b.x) < xm) && (a.x.max(b.x) > xm))
            .map(|(a, b)| a.y + (xm - a.x) * (b.y - a.y) / (b.x - a.x))
            .collect();
        ys.sort_by(f64::total_cmp);
        for pair in ys.windows(2) {
            if pair[1] - pair[0] > 2.0 * tol.epsilon {
                candidates.push(Point::new(xm, (pair[0] + pair[1]) / 2.0));
            }
        }
    }
    Ok(CandidateFamily::from_candidates(prototype, points, candidates, tol))
}

/// Dense-grid secondary oracle for polygon instances.
pub fn grid_family_polygons(
    points: &[Point],
    prototype: &PrototypeShape,
    step: f64,
    tol: &Tolerance,
) -> CandidateFamily {
    let poly = prototype.as_polygon().expect("polygon prototype");
    let radius = poly
        .outer
        .iter()
        .map(|v| v.dist(poly.reference))
        .fold(0.0f64, f64::max);
    let (lo_x, hi_x, lo_y, hi_y) = padded_bounds(points, radius);
    let mut candidates = points.to_vec();
    let nx = ((hi_x - lo_x) / step).ceil() as usize;
    let ny = ((hi_y - lo_y) / step).ceil() as usize;
    for ix in 0..=nx {
        for iy in 0..=ny {
            candidates.push(Point::new(lo_x + ix as f64 * step, lo_y + iy as f64 * step));
        }
    }
    CandidateFamily::from_candidates(prototype, points, candidates, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn sets(translates: &[CanonicalTranslate]) -> Vec<Vec<usize>> {
        translates.iter().map(|t| t.covered.to_vec()).collect()
    }

    #[test]
    fn disk_pair_merges() {
        let out =
            oracle_canonical_disks(&[Point::new(0.0, 0.0), Point::new(1.0, 0.0)], 1.0, &tol(), None)
                .unwrap();
        assert_eq!(sets(&out), vec![vec![0, 1]]);
    }

    #[test]
    fn disk_far_pair_stays_split() {
        let out =
            oracle_canonical_disks(&[Point::new(0.0, 0.0), Point::new(3.0, 0.0)], 1.0, &tol(), None)
                .unwrap();
        assert_eq!(sets(&out), vec![vec![0], vec![1]]);
    }

    #[test]
    fn disk_chain_and_grid_cross_check() {
        let t = tol();
        let pts = [Point::new(0.0, 0.0), Point::new(1.9, 0.0), Point::new(3.8, 0.0)];
        let out = oracle_canonical_disks(&pts, 1.0, &t, None).unwrap();
        assert_eq!(sets(&out), vec![vec![0, 1], vec![1, 2]]);

        let grid = grid_family_disks(&pts, 1.0, 1.0 / 200.0, &t);
        let grid_maximal = grid.maximal_translates();
        assert_eq!(sets(&grid_maximal), sets(&out));
    }

    #[test]
    fn disk_family_invariant_under_nudge_sign() {
        let t = tol();
        let pts = [Point::new(0.1, 0.2), Point::new(1.3, 0.7), Point::new(0.8, 1.9)];
        let plus = disk_candidate_family(&pts, 1.0, &t, t.epsilon);
        let minus = disk_candidate_family(&pts, 1.0, &t, -t.epsilon);
        let as_sets = |f: &CandidateFamily| {
            f.maximal_translates()
                .iter()
                .map(|tr| tr.covered.to_vec())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_sets(&plus), as_sets(&minus));
    }

    #[test]
    fn cap_is_enforced() {
        let pts: Vec<Point> = (0..31).map(|i| Point::new(i as f64 * 3.0, 0.0)).collect();
        assert!(matches!(
            oracle_canonical_disks(&pts, 1.0, &tol(), None),
            Err(Error::CapExceeded(_))
        ));
    }

    fn unit_square() -> PrototypeShape {
        PrototypeShape::polygon(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            vec![],
            None,
        )
        .unwrap()
    }

    #[test]
    fn polygon_overlapping_squares() {
        let t = tol();
        let out = oracle_canonical_polygons(
            &[Point::new(0.0, 0.0), Point::new(0.5, 0.5)],
            &unit_square(),
            &t,
            None,
            None,
        )
        .unwrap();
        assert_eq!(sets(&out), vec![vec![0, 1]]);
    }

    #[test]
    fn polygon_far_squares() {
        let t = tol();
        let out = oracle_canonical_polygons(
            &[Point::new(0.0, 0.0), Point::new(5.0, 5.0)],
            &unit_square(),
            &t,
            None,
            None,
        )
        .unwrap();
        assert_eq!(sets(&out), vec![vec![0], vec![1]]);
    }

    #[test]
    fn polygon_family_matches_dense_grid() {
        let t = tol();
        let pts = [Point::new(0.05, 0.1), Point::new(0.7, 0.45), Point::new(1.9, 1.3)];
        let proto = unit_square();
        let exact = oracle_canonical_polygons(&pts, &proto, &t, None, None).unwrap();
        let diameter = 2.0f64.sqrt();
        let grid = grid_family_polygons(&pts, &proto, diameter / 500.0, &t).maximal_translates();
        assert_eq!(sets(&exact), sets(&grid));
        // Completeness probe: the grid finds nothing outside the trapezoid
        // family.
        let family = polygon_candidate_family(&pts, &proto, &t, None, None).unwrap();
        let all = family.all_sets();
        for s in grid_family_polygons(&pts, &proto, diameter / 500.0, &t).all_sets() {
            assert!(all.contains(&s), "grid found {s:?} missing from the family");
        }
    }
}
