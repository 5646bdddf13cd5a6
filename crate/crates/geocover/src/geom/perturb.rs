//! Degeneracy policy: detect configurations that break the general-position
//! assumption and jitter the input points deterministically to remove them.
//!
//! Only the points of `P` are ever moved; the prototype stays fixed, so all
//! downstream structures (inverses, arrangements, covered sets) are built
//! from one consistent point set.

use super::{circle_circle_intersections, Point, Tolerance};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// What happened to the raw input before the algorithms ran.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PreparedPoints {
    /// Deduplicated (and possibly perturbed) points, in first-seen order.
    pub points: Vec<Point>,
    /// For each kept point, its index in the raw input.
    pub source_indices: Vec<usize>,
    pub duplicates_removed: usize,
    pub perturbed: bool,
    pub seed: u64,
    pub magnitude: f64,
}

/// Removes points that coincide within epsilon, keeping first occurrences.
pub fn dedup_points(raw: &[Point], tol: &Tolerance) -> (Vec<Point>, Vec<usize>) {
    let mut kept: Vec<Point> = Vec::new();
    let mut sources = Vec::new();
    for (i, p) in raw.iter().enumerate() {
        if kept.iter().all(|q| q.dist(*p) > tol.epsilon) {
            kept.push(*p);
            sources.push(i);
        }
    }
    (kept, sources)
}

/// Offsets in `[-magnitude, magnitude]^2`, one per point, drawn from a
/// seeded stream so identical inputs perturb identically.
fn offsets(n: usize, seed: u64, magnitude: f64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            (
                rng.gen_range(-magnitude..=magnitude),
                rng.gen_range(-magnitude..=magnitude),
            )
        })
        .collect()
}

/// Dedups, then perturbs the points if `degenerate` reports a violation of
/// general position. A configuration still degenerate after one jitter pass
/// means the perturbation magnitude is too small for the instance.
pub fn prepare_points<F>(
    raw: &[Point],
    tol: &Tolerance,
    seed: u64,
    mut degenerate: F,
) -> Result<PreparedPoints>
where
    F: FnMut(&[Point]) -> bool,
{
    if raw.is_empty() {
        return Err(Error::InvalidInput("point set is empty".into()));
    }
    let (mut points, source_indices) = dedup_points(raw, tol);
    let duplicates_removed = raw.len() - points.len();
    let mut perturbed = false;
    if degenerate(&points) {
        for (p, (dx, dy)) in points.iter_mut().zip(offsets(source_indices.len(), seed, tol.perturbation)) {
            *p = p.translate(dx, dy);
        }
        perturbed = true;
        if degenerate(&points) {
            return Err(Error::DegeneracyUnresolved(
                "input still degenerate after perturbation".into(),
            ));
        }
    }
    Ok(PreparedPoints {
        points,
        source_indices,
        duplicates_removed,
        perturbed,
        seed,
        magnitude: tol.perturbation,
    })
}

/// Degeneracy test for the disk pipelines: tangent circle pairs, circle
/// triples meeting at a point, circle vertices lying on other boundaries,
/// and any two distinct event points coinciding.
///
/// Distinct events merely sharing an x-coordinate are not flagged: the sweep
/// orders events by `(x, y, kind)`, and such ties cannot be separated by
/// perturbing `P` anyway (the two crossings of a near-tangent pair share x
/// to first order).
pub fn disk_degenerate(points: &[Point], radius: f64, tol: &Tolerance) -> bool {
    let eps = tol.epsilon;
    let n = points.len();
    let mut events: Vec<Point> = Vec::with_capacity(2 * n);
    for p in points {
        // Circle vertices resting on another circle break status location.
        for v in [
            Point::new(p.x - radius, p.y),
            Point::new(p.x + radius, p.y),
        ] {
            for q in points {
                if q != p && (v.dist(*q) - radius).abs() <= eps {
                    return true;
                }
            }
            events.push(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = points[i].dist(points[j]);
            if (d - 2.0 * radius).abs() <= eps {
                return true; // tangent boundaries
            }
            if d < 2.0 * radius {
                for q in circle_circle_intersections(points[i], points[j], radius, tol) {
                    // A crossing on a third circle means three concurrent
                    // boundaries.
                    for (m, c) in points.iter().enumerate() {
                        if m != i && m != j && (q.dist(*c) - radius).abs() <= eps {
                            return true;
                        }
                    }
                    events.push(q);
                }
            }
        }
    }
    coincident_points_exist(&mut events, eps)
}

/// Whether any two of the given points lie within `eps` of each other,
/// by an x-sorted window scan.
pub(crate) fn coincident_points_exist(events: &mut [Point], eps: f64) -> bool {
    events.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    for i in 0..events.len() {
        for j in i + 1..events.len() {
            if events[j].x - events[i].x > eps {
                break;
            }
            if events[i].dist(events[j]) <= eps {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_reports_duplicates() {
        let tol = Tolerance::default();
        let raw = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 0.0),
        ];
        let prep = prepare_points(&raw, &tol, 7, |_| false).unwrap();
        assert_eq!(prep.points.len(), 2);
        assert_eq!(prep.duplicates_removed, 1);
        assert_eq!(prep.source_indices, vec![0, 1]);
        assert!(!prep.perturbed);
    }

    #[test]
    fn tangent_circles_are_degenerate_and_fixed_by_jitter() {
        let tol = Tolerance::default();
        let raw = vec![Point::new(0.0, 0.0), Point::new(2.0, 0.0)];
        assert!(disk_degenerate(&raw, 1.0, &tol));
        let prep = prepare_points(&raw, &tol, 42, |pts| disk_degenerate(pts, 1.0, &tol)).unwrap();
        assert!(prep.perturbed);
        assert!(!disk_degenerate(&prep.points, 1.0, &tol));
        // Deterministic for a fixed seed.
        let again = prepare_points(&raw, &tol, 42, |pts| disk_degenerate(pts, 1.0, &tol)).unwrap();
        assert_eq!(prep.points, again.points);
    }

    #[test]
    fn vertex_on_other_boundary_is_degenerate() {
        let tol = Tolerance::default();
        // The leftmost vertex of the second circle lies exactly on the first
        // circle's boundary.
        let raw = vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0)];
        assert!(disk_degenerate(&raw, 1.0, &tol));
    }

    #[test]
    fn x_ties_at_distinct_points_are_tolerated() {
        let tol = Tolerance::default();
        // Crossings of a horizontal pair share an x-coordinate but are
        // distinct points; the sweep's (x, y, kind) order copes.
        let raw = vec![Point::new(0.0, 0.0), Point::new(1.9, 0.0), Point::new(3.8, 0.0)];
        assert!(!disk_degenerate(&raw, 1.0, &tol));
    }

    #[test]
    fn generic_instance_is_not_degenerate() {
        let tol = Tolerance::default();
        let raw = vec![
            Point::new(0.113, 0.207),
            Point::new(1.391, 0.645),
            Point::new(0.731, 1.529),
        ];
        assert!(!disk_degenerate(&raw, 1.0, &tol));
    }
}
