//! Alternative canonical-disk reporter: fixed-radius near neighbors feed a
//! DCEL of the circle arrangement, which is traversed clockwise so that the
//! face to the right of every walk is enclosed. Walks whose arcs all keep
//! their circle's interior on the right enclose convex faces — exactly the
//! canonical disks, one more per isolated circle.

use crate::covset::CovSet;
use crate::error::{Error, Result};
use crate::geom::{circle_circle_intersections, Point, Tolerance};
use crate::CanonicalTranslate;
use std::collections::HashMap;

/// All unordered index pairs closer than twice the radius, found through a
/// uniform grid with cell size `2r` probing each 3x3 neighborhood.
pub fn fixed_radius_neighbors(points: &[Point], radius: f64) -> Vec<(usize, usize)> {
    let cell = 2.0 * radius;
    let key = |p: Point| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        grid.entry(key(*p)).or_default().push(i);
    }
    let mut pairs = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let (cx, cy) = key(*p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = grid.get(&(cx + dx, cy + dy)) {
                    for &j in bucket {
                        if j > i && points[j].dist(*p) < cell {
                            pairs.push((i, j));
                        }
                    }
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

#[derive(Debug)]
pub struct DcelVertex {
    pub at: Point,
    /// The two circles crossing here.
    pub circles: (usize, usize),
}

#[derive(Debug)]
pub struct HalfEdge {
    pub origin: usize,
    pub target: usize,
    pub circle: usize,
    /// Clockwise travel keeps the circle's interior on the right.
    pub cw: bool,
    pub twin: usize,
    /// Successor when walking with the enclosed face on the right.
    pub next: usize,
}

/// DCEL of the arrangement of equal-radius circles; isolated circles are
/// kept aside since they contribute no vertices.
#[derive(Debug)]
pub struct CircleDcel {
    pub vertices: Vec<DcelVertex>,
    pub half_edges: Vec<HalfEdge>,
    pub isolated: Vec<usize>,
}

pub fn build_inversion_graph(
    points: &[Point],
    radius: f64,
    pairs: &[(usize, usize)],
    tol: &Tolerance,
) -> Result<CircleDcel> {
    let mut vertices: Vec<DcelVertex> = Vec::new();
    // Crossing vertices per circle, as (angle, vertex id).
    let mut on_circle: Vec<Vec<(f64, usize)>> = vec![Vec::new(); points.len()];
    for &(i, j) in pairs {
        let crossings = circle_circle_intersections(points[i], points[j], radius, tol);
        if crossings.len() != 2 {
            return Err(Error::DegeneracyUnresolved(format!(
                "circle pair ({i}, {j}) does not cross transversally"
            )));
        }
        for q in crossings {
            let v = vertices.len();
            vertices.push(DcelVertex { at: q, circles: (i, j) });
            for &c in [i, j].iter() {
                let angle = (q.y - points[c].y).atan2(q.x - points[c].x);
                on_circle[c].push((angle, v));
            }
        }
    }
    for list in on_circle.iter_mut() {
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
        if list
            .windows(2)
            .any(|w| (w[1].0 - w[0].0).abs() <= tol.epsilon)
        {
            return Err(Error::DegeneracyUnresolved(
                "coincident crossing points on one circle".into(),
            ));
        }
    }

    let mut half_edges: Vec<HalfEdge> = Vec::new();
    for (c, list) in on_circle.iter().enumerate() {
        for k in 0..list.len() {
            let (_, va) = list[k];
            let (_, vb) = list[(k + 1) % list.len()];
            // Arc va -> vb counter-clockwise plus its clockwise twin.
            let ccw = half_edges.len();
            half_edges.push(HalfEdge {
                origin: va,
                target: vb,
                circle: c,
                cw: false,
                twin: ccw + 1,
                next: usize::MAX,
            });
            half_edges.push(HalfEdge {
                origin: vb,
                target: va,
                circle: c,
                cw: true,
                twin: ccw,
                next: usize::MAX,
            });
        }
    }

    // Rotational order of departures at each vertex: next(h) is the first
    // outgoing edge counter-clockwise after h's twin, which is the sharpest
    // clockwise turn the walk can take.
    let mut outgoing: Vec<Vec<(f64, usize)>> = vec![Vec::new(); vertices.len()];
    for (h, he) in half_edges.iter().enumerate() {
        let c = points[he.circle];
        let q = vertices[he.origin].at;
        let ux = (q.x - c.x) / radius;
        let uy = (q.y - c.y) / radius;
        let dir = if he.cw { (uy, -ux) } else { (-uy, ux) };
        outgoing[he.origin].push((dir.1.atan2(dir.0), h));
    }
    let mut rot_next: Vec<usize> = vec![usize::MAX; half_edges.len()];
    for list in outgoing.iter_mut() {
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
        let m = list.len();
        for k in 0..m {
            rot_next[list[k].1] = list[(k + 1) % m].1;
        }
    }
    for h in 0..half_edges.len() {
        half_edges[h].next = rot_next[half_edges[h].twin];
    }

    let paired: std::collections::HashSet<usize> =
        pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
    let isolated = (0..points.len()).filter(|i| !paired.contains(i)).collect();
    Ok(CircleDcel {
        vertices,
        half_edges,
        isolated,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    New,
    Old,
    Obsolete,
}

/// Walks every face cycle of the DCEL, reporting the convex ones plus one
/// canonical disk per isolated circle. A walk is rejected the moment it
/// traverses an arc with the enclosed side outside the arc's circle; the
/// rest of that cycle is consumed by later walks and rejected the same way.
pub fn traverse_report_canonical(
    dcel: &CircleDcel,
    points: &[Point],
    radius: f64,
    tol: &Tolerance,
) -> Vec<CanonicalTranslate> {
    let mut marks = vec![Mark::New; dcel.half_edges.len()];
    let mut out = Vec::new();

    for start in 0..dcel.half_edges.len() {
        if marks[start] != Mark::New {
            continue;
        }
        let mut walk: Vec<usize> = Vec::new();
        let mut cur = start;
        let report = loop {
            marks[cur] = Mark::Old;
            walk.push(cur);
            if !dcel.half_edges[cur].cw {
                break false; // concave side: not a convex face
            }
            let nxt = dcel.half_edges[cur].next;
            if nxt == start {
                break true; // closed a cycle of interior-side arcs
            }
            match marks[nxt] {
                Mark::New => cur = nxt,
                // Continuation of a previously rejected cycle.
                Mark::Obsolete => break false,
                Mark::Old => unreachable!("walks close only at their start"),
            }
        };
        for &h in &walk {
            marks[h] = Mark::Obsolete;
        }
        if report {
            out.push(face_translate(dcel, &walk, points, radius, tol));
        }
    }

    for &c in &dcel.isolated {
        out.push(CanonicalTranslate::new(
            points[c],
            covered_by_disk(points[c], points, radius, tol),
        ));
    }
    crate::finalize_translates(out)
}

fn face_translate(
    dcel: &CircleDcel,
    walk: &[usize],
    points: &[Point],
    radius: f64,
    tol: &Tolerance,
) -> CanonicalTranslate {
    let verts: Vec<Point> = walk
        .iter()
        .map(|&h| dcel.vertices[dcel.half_edges[h].origin].at)
        .collect();
    let mut sample = Point::new(
        verts.iter().map(|p| p.x).sum::<f64>() / verts.len() as f64,
        verts.iter().map(|p| p.y).sum::<f64>() / verts.len() as f64,
    );
    let inside_all = |p: Point| {
        walk.iter()
            .all(|&h| p.dist(points[dcel.half_edges[h].circle]) <= radius + tol.epsilon)
    };
    if !inside_all(sample) {
        // Cannot happen for a convex face; fall back to an interior chord.
        debug_assert!(false, "vertex average escaped a convex face");
        sample = verts[0].midpoint(verts[verts.len() / 2]);
    }
    CanonicalTranslate::new(sample, covered_by_disk(sample, points, radius, tol))
}

fn covered_by_disk(at: Point, points: &[Point], radius: f64, tol: &Tolerance) -> CovSet {
    let mut s = CovSet::empty(points.len());
    for (i, p) in points.iter().enumerate() {
        if at.dist(*p) <= radius + tol.epsilon {
            s.insert(i);
        }
    }
    s
}

/// Counters alongside the traversal output.
#[derive(Debug)]
pub struct TraverseReport {
    pub translates: Vec<CanonicalTranslate>,
    pub vertex_count: usize,
    pub half_edge_count: usize,
}

/// Full traversal pipeline: neighbors, DCEL, clockwise walk.
pub fn report_canonical_disks_traverse(
    points: &[Point],
    radius: f64,
    tol: &Tolerance,
) -> Result<TraverseReport> {
    let pairs = fixed_radius_neighbors(points, radius);
    let dcel = build_inversion_graph(points, radius, &pairs, tol)?;
    let translates = traverse_report_canonical(&dcel, points, radius, tol);
    Ok(TraverseReport {
        translates,
        vertex_count: dcel.vertices.len(),
        half_edge_count: dcel.half_edges.len(),
    })
}
