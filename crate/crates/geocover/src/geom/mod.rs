//! Planar primitives shared by every stage: points, prototype shapes,
//! orientation and intersection predicates, closed containment, and point
//! inversion. All comparisons go through a single [`Tolerance`] policy.

pub mod perturb;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A point in the plane. Coordinates must be finite.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new((self.x + other.x) / 2.0, (self.y + other.y) / 2.0)
    }

    /// Reflection of `self` through `center`.
    pub fn reflect_through(self, center: Point) -> Point {
        Point::new(2.0 * center.x - self.x, 2.0 * center.y - self.y)
    }

    pub fn translate(self, dx: f64, dy: f64) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Comparison policy shared by all modules: `epsilon` is the equality
/// threshold for coordinates and predicates, `perturbation` the magnitude
/// used to break detected degeneracies by jittering the input points.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tolerance {
    pub epsilon: f64,
    pub perturbation: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            epsilon: 1e-9,
            perturbation: 1e-7,
        }
    }
}

impl Tolerance {
    pub fn new(epsilon: f64, perturbation: f64) -> Result<Self> {
        if !(epsilon > 0.0 && perturbation > 0.0 && epsilon < perturbation) {
            return Err(Error::InvalidInput(format!(
                "tolerance requires 0 < epsilon < perturbation, got {epsilon} and {perturbation}"
            )));
        }
        Ok(Tolerance {
            epsilon,
            perturbation,
        })
    }

    /// Checks `epsilon < perturbation < minimum feature scale` of an instance.
    /// The feature scale is the smallest of: pairwise point distances (after
    /// dedup), disk radius, and polygon edge lengths.
    pub fn validate_for(&self, points: &[Point], shape: &PrototypeShape) -> Result<()> {
        let mut scale = f64::INFINITY;
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                let d = a.dist(*b);
                if d > self.epsilon {
                    scale = scale.min(d);
                }
            }
        }
        match shape {
            PrototypeShape::Disk { radius, .. } => scale = scale.min(*radius),
            PrototypeShape::ConvexPolygon(p) | PrototypeShape::SimplePolygon(p) => {
                for ring in p.rings() {
                    for (a, b) in ring_edges(ring) {
                        scale = scale.min(a.dist(b));
                    }
                }
            }
        }
        if self.perturbation >= scale {
            return Err(Error::InvalidInput(format!(
                "perturbation magnitude {} is not below the minimum feature scale {}",
                self.perturbation, scale
            )));
        }
        Ok(())
    }
}

/// Polygon payload: outer boundary counter-clockwise, holes clockwise,
/// plus the reference point that placements anchor to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonShape {
    pub outer: Vec<Point>,
    pub holes: Vec<Vec<Point>>,
    pub reference: Point,
}

impl PolygonShape {
    pub fn rings(&self) -> impl Iterator<Item = &[Point]> {
        std::iter::once(self.outer.as_slice()).chain(self.holes.iter().map(|h| h.as_slice()))
    }

    pub fn vertex_count(&self) -> usize {
        self.outer.len() + self.holes.iter().map(Vec::len).sum::<usize>()
    }
}

/// The translatable object of a cover instance. Containment is closed:
/// boundary points count as covered.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PrototypeShape {
    /// Disk of the given radius centered at its reference point.
    Disk { radius: f64, reference: Point },
    ConvexPolygon(PolygonShape),
    SimplePolygon(PolygonShape),
}

impl PrototypeShape {
    pub fn disk(radius: f64, reference: Point) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("disk radius must be positive, got {radius}")));
        }
        Ok(PrototypeShape::Disk { radius, reference })
    }

    /// Builds a polygon prototype, normalizing ring orientations and
    /// routing to the convex variant when the outer boundary is convex and
    /// there are no holes. The reference point defaults to the first outer
    /// vertex when `reference` is `None`.
    pub fn polygon(
        mut outer: Vec<Point>,
        mut holes: Vec<Vec<Point>>,
        reference: Option<Point>,
    ) -> Result<Self> {
        let tol = Tolerance::default();
        if outer.len() < 3 {
            return Err(Error::InvalidPolygon("outer boundary needs at least 3 vertices".into()));
        }
        if signed_area(&outer) < 0.0 {
            outer.reverse();
        }
        check_ring_simple(&outer, &tol)?;
        for hole in &mut holes {
            if hole.len() < 3 {
                return Err(Error::InvalidPolygon("hole needs at least 3 vertices".into()));
            }
            if signed_area(hole) > 0.0 {
                hole.reverse();
            }
            check_ring_simple(hole, &tol)?;
        }
        check_holes_inside(&outer, &holes, &tol)?;
        let reference = reference.unwrap_or(outer[0]);
        let poly = PolygonShape { outer, holes, reference };
        if poly.holes.is_empty() && is_convex_ring(&poly.outer, tol.epsilon) {
            Ok(PrototypeShape::ConvexPolygon(poly))
        } else {
            Ok(PrototypeShape::SimplePolygon(poly))
        }
    }

    pub fn reference(&self) -> Point {
        match self {
            PrototypeShape::Disk { reference, .. } => *reference,
            PrototypeShape::ConvexPolygon(p) | PrototypeShape::SimplePolygon(p) => p.reference,
        }
    }

    pub fn is_disk(&self) -> bool {
        matches!(self, PrototypeShape::Disk { .. })
    }

    pub fn is_convex(&self) -> bool {
        matches!(self, PrototypeShape::Disk { .. } | PrototypeShape::ConvexPolygon(_))
    }

    pub fn as_polygon(&self) -> Option<&PolygonShape> {
        match self {
            PrototypeShape::ConvexPolygon(p) | PrototypeShape::SimplePolygon(p) => Some(p),
            PrototypeShape::Disk { .. } => None,
        }
    }

    /// Moves the shape so its reference point lands on `target`.
    pub fn translated_to(&self, target: Point) -> PrototypeShape {
        let r = self.reference();
        let (dx, dy) = (target.x - r.x, target.y - r.y);
        match self {
            PrototypeShape::Disk { radius, .. } => PrototypeShape::Disk {
                radius: *radius,
                reference: target,
            },
            PrototypeShape::ConvexPolygon(p) => {
                PrototypeShape::ConvexPolygon(translate_polygon(p, dx, dy))
            }
            PrototypeShape::SimplePolygon(p) => {
                PrototypeShape::SimplePolygon(translate_polygon(p, dx, dy))
            }
        }
    }
}

fn translate_polygon(p: &PolygonShape, dx: f64, dy: f64) -> PolygonShape {
    PolygonShape {
        outer: p.outer.iter().map(|v| v.translate(dx, dy)).collect(),
        holes: p
            .holes
            .iter()
            .map(|h| h.iter().map(|v| v.translate(dx, dy)).collect())
            .collect(),
        reference: p.reference.translate(dx, dy),
    }
}

/// Edges of a closed ring, including the wrap-around edge.
pub fn ring_edges(ring: &[Point]) -> impl Iterator<Item = (Point, Point)> + '_ {
    (0..ring.len()).map(move |i| (ring[i], ring[(i + 1) % ring.len()]))
}

/// Twice the signed area; positive for counter-clockwise rings.
pub fn signed_area(ring: &[Point]) -> f64 {
    let mut acc = 0.0;
    for (a, b) in ring_edges(ring) {
        acc += a.x * b.y - b.x * a.y;
    }
    acc
}

fn is_convex_ring(ring: &[Point], eps: f64) -> bool {
    let n = ring.len();
    let mut sign = 0i32;
    for i in 0..n {
        let cross = cross3(ring[i], ring[(i + 1) % n], ring[(i + 2) % n]);
        if cross.abs() <= eps {
            continue;
        }
        let s = if cross > 0.0 { 1 } else { -1 };
        if sign == 0 {
            sign = s;
        } else if sign != s {
            return false;
        }
    }
    true
}

fn check_ring_simple(ring: &[Point], tol: &Tolerance) -> Result<()> {
    let n = ring.len();
    for i in 0..n {
        let (a1, a2) = (ring[i], ring[(i + 1) % n]);
        if a1.dist(a2) <= tol.epsilon {
            return Err(Error::InvalidPolygon("zero-length edge".into()));
        }
        for j in i + 1..n {
            // Adjacent edges share exactly their common vertex.
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (b1, b2) = (ring[j], ring[(j + 1) % n]);
            if segments_touch(a1, a2, b1, b2, tol.epsilon) {
                return Err(Error::InvalidPolygon(format!(
                    "boundary self-intersects between edges {i} and {j}"
                )));
            }
        }
    }
    Ok(())
}

fn check_holes_inside(outer: &[Point], holes: &[Vec<Point>], tol: &Tolerance) -> Result<()> {
    for (hi, hole) in holes.iter().enumerate() {
        for v in hole {
            if !point_in_ring(*v, outer) || dist_to_ring(*v, outer) <= tol.epsilon {
                return Err(Error::InvalidPolygon(format!(
                    "hole {hi} is not strictly inside the outer boundary"
                )));
            }
        }
        for (a1, a2) in ring_edges(hole) {
            for (b1, b2) in ring_edges(outer) {
                if segments_touch(a1, a2, b1, b2, tol.epsilon) {
                    return Err(Error::InvalidPolygon(format!("hole {hi} crosses the outer boundary")));
                }
            }
        }
        for other in &holes[hi + 1..] {
            for (a1, a2) in ring_edges(hole) {
                for (b1, b2) in ring_edges(other) {
                    if segments_touch(a1, a2, b1, b2, tol.epsilon) {
                        return Err(Error::InvalidPolygon("holes intersect each other".into()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn cross3(p: Point, q: Point, r: Point) -> f64 {
    (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
}

/// Sign of the turn p -> q -> r: `+1` if `r` is left of the directed line
/// through `p` and `q`, `-1` if right, `0` within `epsilon` of collinear.
pub fn orientation(p: Point, q: Point, r: Point, tol: &Tolerance) -> i32 {
    let c = cross3(p, q, r);
    if c.abs() <= tol.epsilon {
        0
    } else if c > 0.0 {
        1
    } else {
        -1
    }
}

/// Intersection points of two circles of common radius `r`, ordered
/// lexicographically by `(x, y)`. Returns zero points for coincident or
/// far-apart centers and a single point at tangency.
pub fn circle_circle_intersections(c1: Point, c2: Point, r: f64, tol: &Tolerance) -> Vec<Point> {
    debug_assert!(r > 0.0);
    let d = c1.dist(c2);
    if d <= tol.epsilon || d > 2.0 * r + tol.epsilon {
        return vec![];
    }
    let mid = c1.midpoint(c2);
    if (d - 2.0 * r).abs() <= tol.epsilon {
        return vec![mid];
    }
    let h = (r * r - d * d / 4.0).max(0.0).sqrt();
    let ux = (c2.x - c1.x) / d;
    let uy = (c2.y - c1.y) / d;
    // Perpendicular offsets from the chord midpoint.
    let p1 = Point::new(mid.x - uy * h, mid.y + ux * h);
    let p2 = Point::new(mid.x + uy * h, mid.y - ux * h);
    let mut out = vec![p1, p2];
    out.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    out
}

/// Crossing point of two segments, `None` if they do not meet.
///
/// Segments that overlap along a shared sub-segment signal that the
/// perturbation stage failed and are reported as `DegenerateOverlap`.
pub fn segment_intersection(
    a1: Point,
    a2: Point,
    b1: Point,
    b2: Point,
    tol: &Tolerance,
) -> Result<Option<Point>> {
    let d1 = orientation(b1, b2, a1, tol);
    let d2 = orientation(b1, b2, a2, tol);
    let d3 = orientation(a1, a2, b1, tol);
    let d4 = orientation(a1, a2, b2, tol);
    if d1 != d2 && d3 != d4 && (d1 != 0 || d2 != 0) && (d3 != 0 || d4 != 0) {
        // Proper or endpoint-touching crossing; solve the 2x2 system.
        let rx = a2.x - a1.x;
        let ry = a2.y - a1.y;
        let sx = b2.x - b1.x;
        let sy = b2.y - b1.y;
        let denom = rx * sy - ry * sx;
        if denom.abs() <= tol.epsilon * tol.epsilon {
            return Ok(None);
        }
        let t = ((b1.x - a1.x) * sy - (b1.y - a1.y) * sx) / denom;
        return Ok(Some(Point::new(a1.x + t * rx, a1.y + t * ry)));
    }
    if d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0 {
        // Collinear: overlap in more than a point is a degeneracy.
        let (lo, hi) = project_collinear(a1, a2, b1, b2);
        if hi - lo > tol.epsilon {
            return Err(Error::DegenerateOverlap);
        }
        if hi - lo >= -tol.epsilon {
            // Touching at a single shared point.
            let p = if a1.dist(b1).min(a1.dist(b2)) <= tol.epsilon { a1 } else { a2 };
            return Ok(Some(p));
        }
        return Ok(None);
    }
    // One endpoint collinear with the other segment: touching counts as an
    // intersection when the endpoint lies within the other segment's span.
    if d1 == 0 && on_segment(b1, b2, a1, tol) {
        return Ok(Some(a1));
    }
    if d2 == 0 && on_segment(b1, b2, a2, tol) {
        return Ok(Some(a2));
    }
    if d3 == 0 && on_segment(a1, a2, b1, tol) {
        return Ok(Some(b1));
    }
    if d4 == 0 && on_segment(a1, a2, b2, tol) {
        return Ok(Some(b2));
    }
    Ok(None)
}

fn project_collinear(a1: Point, a2: Point, b1: Point, b2: Point) -> (f64, f64) {
    // Overlap extent measured along the dominant axis.
    let horizontal = (a2.x - a1.x).abs() >= (a2.y - a1.y).abs();
    let get = |p: Point| if horizontal { p.x } else { p.y };
    let (a_lo, a_hi) = minmax(get(a1), get(a2));
    let (b_lo, b_hi) = minmax(get(b1), get(b2));
    (a_lo.max(b_lo), a_hi.min(b_hi))
}

fn minmax(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn on_segment(a: Point, b: Point, p: Point, tol: &Tolerance) -> bool {
    p.x >= a.x.min(b.x) - tol.epsilon
        && p.x <= a.x.max(b.x) + tol.epsilon
        && p.y >= a.y.min(b.y) - tol.epsilon
        && p.y <= a.y.max(b.y) + tol.epsilon
}

/// Whether two segments share any point (used for validity checks, not for
/// arrangement construction).
fn segments_touch(a1: Point, a2: Point, b1: Point, b2: Point, eps: f64) -> bool {
    let tol = Tolerance {
        epsilon: eps,
        perturbation: eps * 10.0,
    };
    match segment_intersection(a1, a2, b1, b2, &tol) {
        Ok(opt) => opt.is_some(),
        Err(_) => true,
    }
}

/// Distance from `p` to segment `ab`.
pub fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let len_sq = a.dist_sq(b);
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len_sq;
    let t = t.clamp(0.0, 1.0);
    p.dist(Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)))
}

fn dist_to_ring(p: Point, ring: &[Point]) -> f64 {
    ring_edges(ring)
        .map(|(a, b)| dist_point_segment(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Even-odd ray test, boundary not handled (callers check that separately).
fn point_in_ring(p: Point, ring: &[Point]) -> bool {
    let mut inside = false;
    for (a, b) in ring_edges(ring) {
        if (a.y > p.y) != (b.y > p.y) {
            let x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if x_int > p.x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Closed containment: is `p` inside the translate of `shape` whose
/// reference point sits at `at`? Boundary incidence within epsilon counts;
/// hole interiors do not (their boundaries still belong to the shape).
pub fn contains(shape: &PrototypeShape, at: Point, p: Point, tol: &Tolerance) -> bool {
    match shape {
        // The disk's center coincides with its reference point.
        PrototypeShape::Disk { radius, .. } => p.dist(at) <= radius + tol.epsilon,
        PrototypeShape::ConvexPolygon(poly) | PrototypeShape::SimplePolygon(poly) => {
            let dx = p.x - (at.x - poly.reference.x);
            let dy = p.y - (at.y - poly.reference.y);
            let q = Point::new(dx, dy);
            for ring in poly.rings() {
                if dist_to_ring(q, ring) <= tol.epsilon {
                    return true;
                }
            }
            if !point_in_ring(q, &poly.outer) {
                return false;
            }
            !poly.holes.iter().any(|h| point_in_ring(q, h))
        }
    }
}

/// The shape reflected through its own reference point. Ring orientations
/// are re-normalized (reflection reverses them); the reference is unchanged.
pub fn point_inversion(shape: &PrototypeShape) -> PrototypeShape {
    match shape {
        PrototypeShape::Disk { .. } => shape.clone(),
        PrototypeShape::ConvexPolygon(p) => PrototypeShape::ConvexPolygon(invert_polygon(p)),
        PrototypeShape::SimplePolygon(p) => PrototypeShape::SimplePolygon(invert_polygon(p)),
    }
}

fn invert_polygon(p: &PolygonShape) -> PolygonShape {
    // Point reflection is a half-turn rotation, so ring orientations are
    // already preserved.
    let c = p.reference;
    let flip = |ring: &[Point]| -> Vec<Point> { ring.iter().map(|v| v.reflect_through(c)).collect() };
    let out = PolygonShape {
        outer: flip(&p.outer),
        holes: p.holes.iter().map(|h| flip(h)).collect(),
        reference: c,
    };
    debug_assert!(signed_area(&out.outer) > 0.0);
    out
}

/// All boundary crossing points between two placed polygon shapes,
/// by brute-force segment pairing.
pub fn polygon_boundary_crossings(a: &PolygonShape, b: &PolygonShape, tol: &Tolerance) -> Vec<Point> {
    let mut out = Vec::new();
    for ring_a in a.rings() {
        for (a1, a2) in ring_edges(ring_a) {
            for ring_b in b.rings() {
                for (b1, b2) in ring_edges(ring_b) {
                    if let Ok(Some(p)) = segment_intersection(a1, a2, b1, b2, tol) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
