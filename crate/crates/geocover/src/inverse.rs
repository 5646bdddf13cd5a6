//! Construction of the point inverses through `P` and their pairwise
//! intersection statistics `k` and `e0`.
//!
//! The inverse through a point `p` is the prototype reflected through its
//! reference point and translated so the reference lands on `p`; it is the
//! locus of reference positions whose translate covers `p`.

use crate::covset::CovSet;
use crate::error::{Error, Result};
use crate::geom::{
    contains, point_inversion, polygon_boundary_crossings, Point, PrototypeShape, Tolerance,
};
use serde::{Deserialize, Serialize};

/// One inverse per deduplicated input point; inverse `i` has its reference
/// point at `P[i]`.
#[derive(Clone, Debug)]
pub struct PointInverseSet {
    pub inverses: Vec<PrototypeShape>,
    pub source: Vec<usize>,
    pub prototype: PrototypeShape,
}

impl PointInverseSet {
    pub fn len(&self) -> usize {
        self.inverses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inverses.is_empty()
    }
}

/// `k` intersecting inverse pairs, `e0` isolated inverses.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntersectionStats {
    pub k: usize,
    pub e0: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// A 2x2 linear map plus offset, used to normalize affine images of disks.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Transform2 {
    pub m: [[f64; 2]; 2],
    pub offset: [f64; 2],
}

impl Transform2 {
    pub fn identity() -> Self {
        Transform2 {
            m: [[1.0, 0.0], [0.0, 1.0]],
            offset: [0.0, 0.0],
        }
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.m[0][0] * p.x + self.m[0][1] * p.y + self.offset[0],
            self.m[1][0] * p.x + self.m[1][1] * p.y + self.offset[1],
        )
    }

    /// Applies the linear part only (offsets cancel between a translate and
    /// its reference point).
    pub fn apply_linear(&self, p: Point) -> Point {
        Point::new(
            self.m[0][0] * p.x + self.m[0][1] * p.y,
            self.m[1][0] * p.x + self.m[1][1] * p.y,
        )
    }

    pub fn inverse(&self, tol: &Tolerance) -> Result<Transform2> {
        let det = self.det();
        if det.abs() <= tol.epsilon {
            return Err(Error::SingularTransform);
        }
        let inv = [
            [self.m[1][1] / det, -self.m[0][1] / det],
            [-self.m[1][0] / det, self.m[0][0] / det],
        ];
        Ok(Transform2 {
            m: inv,
            offset: [0.0, 0.0],
        })
    }
}

/// Converts a cover instance whose prototype is an affine image of a disk
/// into a plain disk instance by mapping `P` through the inverse transform.
/// Covered point sets of corresponding translates are preserved, so results
/// computed on the normalized instance transfer back verbatim.
pub fn normalize_affine_disk(
    points: &[Point],
    transform: &Transform2,
    radius: f64,
    tol: &Tolerance,
) -> Result<(Vec<Point>, PrototypeShape)> {
    if !(radius > 0.0) {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    let inv = transform.inverse(tol)?;
    let mapped = points.iter().map(|p| inv.apply_linear(*p)).collect();
    let disk = PrototypeShape::disk(radius, Point::new(0.0, 0.0))?;
    Ok((mapped, disk))
}

/// Builds the collection of point inverses through `points`.
///
/// The construction guarantees the containment duality: the translate at `c`
/// covers `points[i]` exactly when inverse `i` contains `c`.
pub fn build_inverses(points: &[Point], prototype: &PrototypeShape) -> PointInverseSet {
    let inverted = point_inversion(prototype);
    let inverses = points.iter().map(|p| inverted.translated_to(*p)).collect();
    PointInverseSet {
        inverses,
        source: (0..points.len()).collect(),
        prototype: prototype.clone(),
    }
}

/// Counts intersecting inverse pairs (`k`) and isolated inverses (`e0`).
/// Pair tests are closed-region tests; the pair list comes back sorted.
pub fn intersection_stats(inv: &PointInverseSet, tol: &Tolerance) -> IntersectionStats {
    let n = inv.len();
    let mut pairs = Vec::new();
    let mut touched = vec![false; n];
    for i in 0..n {
        for j in i + 1..n {
            if regions_intersect(&inv.inverses[i], &inv.inverses[j], tol) {
                pairs.push((i, j));
                touched[i] = true;
                touched[j] = true;
            }
        }
    }
    let e0 = touched.iter().filter(|t| !**t).count();
    IntersectionStats {
        k: pairs.len(),
        e0,
        pairs,
    }
}

fn regions_intersect(a: &PrototypeShape, b: &PrototypeShape, tol: &Tolerance) -> bool {
    match (a, b) {
        (
            PrototypeShape::Disk { radius, reference: ra },
            PrototypeShape::Disk { reference: rb, .. },
        ) => ra.dist(*rb) <= 2.0 * radius,
        _ => {
            let pa = a.as_polygon().expect("polygon inverse");
            let pb = b.as_polygon().expect("polygon inverse");
            if !polygon_boundary_crossings(pa, pb, tol).is_empty() {
                return true;
            }
            // No boundary crossings: either disjoint or one inside the other
            // (possibly inside a hole, which `contains` excludes).
            contains(b, pb.reference, pa.outer[0], tol) || contains(a, pa.reference, pb.outer[0], tol)
        }
    }
}

/// Derives the covered set of a reference placement directly from closed
/// containment; used by oracles and verification passes.
pub fn covered_set_at(
    prototype: &PrototypeShape,
    at: Point,
    points: &[Point],
    tol: &Tolerance,
) -> CovSet {
    let mut s = CovSet::empty(points.len());
    for (i, p) in points.iter().enumerate() {
        if contains(prototype, at, *p, tol) {
            s.insert(i);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn identity_transform_keeps_points() {
        let pts = vec![Point::new(1.0, 2.0), Point::new(-0.5, 0.25)];
        let (mapped, disk) =
            normalize_affine_disk(&pts, &Transform2::identity(), 1.0, &tol()).unwrap();
        assert_eq!(mapped, pts);
        assert!(matches!(disk, PrototypeShape::Disk { radius, .. } if radius == 1.0));
    }

    #[test]
    fn axis_scale_maps_points_through_inverse() {
        let t = Transform2 {
            m: [[2.0, 0.0], [0.0, 1.0]],
            offset: [0.0, 0.0],
        };
        let (mapped, _) = normalize_affine_disk(&[Point::new(2.0, 0.0)], &t, 1.0, &tol()).unwrap();
        assert!(mapped[0].dist(Point::new(1.0, 0.0)) < 1e-12);
    }

    #[test]
    fn ellipse_cover_matches_disk_cover_after_normalization() {
        // Ellipse with semi-axes (2, 1) centered at a reference covers p iff
        // the unit disk covers the inversely mapped p.
        let t = Transform2 {
            m: [[2.0, 0.0], [0.0, 1.0]],
            offset: [0.0, 0.0],
        };
        let pts = vec![Point::new(2.0, 0.0), Point::new(-2.0, 0.0)];
        let (mapped, disk) = normalize_affine_disk(&pts, &t, 1.0, &tol()).unwrap();
        // Ellipse at the origin covers both boundary points; so must the
        // normalized disk at the mapped origin.
        for (orig, m) in pts.iter().zip(&mapped) {
            let on_ellipse = {
                let q = Point::new(orig.x / 2.0, orig.y);
                q.dist(Point::new(0.0, 0.0)) <= 1.0 + 1e-9
            };
            let on_disk = contains(&disk, Point::new(0.0, 0.0), *m, &tol());
            assert_eq!(on_ellipse, on_disk);
            assert!(on_disk);
        }
    }

    #[test]
    fn singular_transform_rejected() {
        let t = Transform2 {
            m: [[1.0, 2.0], [2.0, 4.0]],
            offset: [0.0, 0.0],
        };
        assert!(matches!(
            normalize_affine_disk(&[Point::new(0.0, 0.0)], &t, 1.0, &tol()),
            Err(Error::SingularTransform)
        ));
    }

    #[test]
    fn disk_inverses_sit_on_their_points() {
        let pts = vec![Point::new(0.0, 0.0), Point::new(3.0, 1.0)];
        let proto = PrototypeShape::disk(1.0, Point::new(0.0, 0.0)).unwrap();
        let inv = build_inverses(&pts, &proto);
        assert_eq!(inv.len(), 2);
        for (i, shape) in inv.inverses.iter().enumerate() {
            assert!(shape.reference().dist(pts[i]) < 1e-12);
        }
    }

    #[test]
    fn square_inverse_translated_to_point() {
        let square = PrototypeShape::polygon(
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ],
            vec![],
            None,
        )
        .unwrap();
        let inv = build_inverses(&[Point::new(5.0, 5.0)], &square);
        let poly = inv.inverses[0].as_polygon().unwrap();
        assert!(poly.reference.dist(Point::new(5.0, 5.0)) < 1e-12);
        let want = [
            Point::new(5.0, 5.0),
            Point::new(4.0, 5.0),
            Point::new(4.0, 4.0),
            Point::new(5.0, 4.0),
        ];
        for w in want {
            assert!(
                poly.outer.iter().any(|v| v.dist(w) < 1e-12),
                "missing corner {w:?} in {:?}",
                poly.outer
            );
        }
    }

    #[test]
    fn containment_duality_holds_for_random_probes() {
        // The translate at c covers points[i] iff inverse i contains c.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pentagon = PrototypeShape::polygon(
            (0..5)
                .map(|i| {
                    let a = i as f64 / 5.0 * std::f64::consts::TAU;
                    Point::new(1.3 * a.cos(), 0.9 * a.sin())
                })
                .collect(),
            vec![],
            None,
        )
        .unwrap();
        let points: Vec<Point> = (0..20)
            .map(|_| Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let inv = build_inverses(&points, &pentagon);
        let t = tol();
        for _ in 0..200 {
            let c = Point::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            for (i, p) in points.iter().enumerate() {
                let direct = contains(&pentagon, c, *p, &t);
                let dual = contains(
                    &inv.inverses[i],
                    inv.inverses[i].reference(),
                    c,
                    &t,
                );
                assert_eq!(direct, dual, "duality failed at probe {c:?} point {i}");
            }
        }
    }

    #[test]
    fn stats_for_disk_chains() {
        let t = tol();
        let proto = PrototypeShape::disk(1.0, Point::new(0.0, 0.0)).unwrap();

        let far = build_inverses(&[Point::new(0.0, 0.0), Point::new(3.0, 0.0)], &proto);
        let s = intersection_stats(&far, &t);
        assert_eq!((s.k, s.e0), (0, 2));

        let chain = build_inverses(
            &[Point::new(0.0, 0.0), Point::new(1.9, 0.0), Point::new(3.8, 0.0)],
            &proto,
        );
        let s = intersection_stats(&chain, &t);
        assert_eq!((s.k, s.e0), (2, 0));
        assert_eq!(s.pairs, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn stats_polygon_pair_containment_counts() {
        // Small square inverse entirely inside a big one: no boundary
        // crossings but the regions intersect.
        let t = tol();
        let big = PrototypeShape::polygon(
            vec![
                Point::new(-3.0, -3.0),
                Point::new(3.0, -3.0),
                Point::new(3.0, 3.0),
                Point::new(-3.0, 3.0),
            ],
            vec![],
            Some(Point::new(0.0, 0.0)),
        )
        .unwrap();
        let small = big.as_polygon().unwrap();
        let shrunk = PrototypeShape::polygon(
            small.outer.iter().map(|v| Point::new(v.x * 0.1, v.y * 0.1)).collect(),
            vec![],
            Some(Point::new(0.0, 0.0)),
        )
        .unwrap();
        let set = PointInverseSet {
            inverses: vec![big, shrunk],
            source: vec![0, 1],
            prototype: PrototypeShape::disk(1.0, Point::new(0.0, 0.0)).unwrap(),
        };
        let s = intersection_stats(&set, &t);
        assert_eq!((s.k, s.e0), (1, 0));
    }
}
