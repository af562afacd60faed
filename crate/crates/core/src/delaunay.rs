//! Delaunay triangulation of embedded lattice points, exact throughout.
//!
//! Incremental convex-hull sweep over halfedge arrays. Points are inserted
//! by increasing exact distance from an input point chosen near the middle
//! of the set, so every new point lies outside the hull built so far (the
//! previous points sit inside the circle the new one is on) and attaches
//! along its visible arc; freshly created triangles are then legalized by
//! Lawson flips. Inserting radially keeps points close to their final
//! neighbourhood, so flip cascades stay short where a coordinate sweep
//! would degenerate on lattice inputs. The visible arc is located through
//! a pseudo-angle hash of the hull, floating point but only advisory: every
//! geometric decision goes through the integer predicates in
//! [`crate::predicates`], with exact cocircular ties broken by global point
//! index, so the result is the Delaunay triangulation of symbolically
//! perturbed points: unique, deterministic, and independent of input order.
//!
//! Storage follows the usual compact scheme: `triangles` holds vertex ids in
//! counterclockwise triples, halfedge `e` runs from `triangles[e]` to
//! `triangles[next_halfedge(e)]`, and `halfedges[e]` is its twin in the
//! adjacent triangle (`EMPTY` on the outer boundary).

use crate::field::QuadField;
use crate::predicates::{in_circle_tiebreak, orient};
use crate::sector::{dist_sq, ScaledPoint};

/// Marks halfedges on the outer boundary and absent links.
pub const EMPTY: u32 = u32::MAX;

/// Next halfedge within the same triangle.
pub fn next_halfedge(e: u32) -> u32 {
    if e % 3 == 2 {
        e - 2
    } else {
        e + 1
    }
}

/// Previous halfedge within the same triangle.
pub fn prev_halfedge(e: u32) -> u32 {
    if e.is_multiple_of(3) {
        e + 2
    } else {
        e - 1
    }
}

/// An undirected edge of the triangulation with its exact squared length.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct WeightedEdge {
    pub i: u32,
    pub j: u32,
    pub w: u64,
}

/// Triangulation of a point set, plus its edge list sorted by weight.
#[derive(Clone, Debug)]
pub struct Triangulation {
    /// Vertex indices, counterclockwise triples.
    pub triangles: Vec<u32>,
    /// Twin halfedge of each halfedge, `EMPTY` on the boundary.
    pub halfedges: Vec<u32>,
    /// Convex hull vertices, counterclockwise. For collinear input this is
    /// the whole chain in order; then there are no triangles and the edge
    /// list is the path between neighbours.
    pub hull: Vec<u32>,
    /// Each undirected edge once, `i < j`, sorted by (w, i, j).
    pub edges: Vec<WeightedEdge>,
}

impl Triangulation {
    pub fn triangle_count(&self) -> usize {
        self.triangles.len() / 3
    }
}

struct Builder<'a> {
    field: QuadField,
    points: &'a [ScaledPoint],
    triangles: Vec<u32>,
    halfedges: Vec<u32>,
    hull_prev: Vec<u32>,
    hull_next: Vec<u32>,
    /// For hull vertex x: the halfedge running x -> hull_next[x].
    hull_tri: Vec<u32>,
    hull_start: u32,
    hash: Vec<u32>,
    hash_cx: f64,
    hash_cy: f64,
    stack: Vec<u32>,
}

impl<'a> Builder<'a> {
    fn new(field: QuadField, points: &'a [ScaledPoint], center: ScaledPoint) -> Self {
        let n = points.len();
        let max_tri = 2 * n.saturating_sub(2);
        let hash_size = (n as f64).sqrt().ceil() as usize;
        Builder {
            field,
            points,
            triangles: Vec::with_capacity(3 * max_tri),
            halfedges: Vec::with_capacity(3 * max_tri),
            hull_prev: vec![0; n],
            hull_next: vec![0; n],
            hull_tri: vec![0; n],
            hull_start: 0,
            hash: vec![EMPTY; hash_size.max(1)],
            // offset by a half step so no lattice point lands exactly on the
            // hash centre (which would make the pseudo-angle 0/0)
            hash_cx: center.u as f64 - 0.5,
            hash_cy: center.v as f64 - 0.5,
            stack: Vec::new(),
        }
    }

    fn pt(&self, i: u32) -> ScaledPoint {
        self.points[i as usize]
    }

    /// Bucket index for the direction centre -> p. Pseudo-angle is a cheap
    /// monotone surrogate for atan2; floating point is fine here because
    /// only the quality of the starting guess depends on it, never the
    /// triangulation itself.
    fn hash_key(&self, p: ScaledPoint) -> usize {
        let dx = p.u as f64 - self.hash_cx;
        let dy = p.v as f64 - self.hash_cy;
        let q = dx / (dx.abs() + dy.abs());
        let a = (if dy > 0.0 { 3.0 - q } else { 1.0 + q }) / 4.0; // [0, 1)
        (self.hash.len() as f64 * a) as usize % self.hash.len()
    }

    fn hash_vertex(&mut self, i: u32) {
        let key = self.hash_key(self.pt(i));
        self.hash[key] = i;
    }

    /// Append triangle (i0, i1, i2) and link its halfedges to the given
    /// twins (edge a: i0->i1, b: i1->i2, c: i2->i0). Returns the base
    /// halfedge index.
    fn add_triangle(&mut self, i0: u32, i1: u32, i2: u32, a: u32, b: u32, c: u32) -> u32 {
        let t = self.triangles.len() as u32;
        self.triangles.extend_from_slice(&[i0, i1, i2]);
        self.halfedges.extend_from_slice(&[a, b, c]);
        if a != EMPTY {
            self.halfedges[a as usize] = t;
        }
        if b != EMPTY {
            self.halfedges[b as usize] = t + 1;
        }
        if c != EMPTY {
            self.halfedges[c as usize] = t + 2;
        }
        t
    }

    fn link(&mut self, a: u32, b: u32) {
        self.halfedges[a as usize] = b;
        if b != EMPTY {
            self.halfedges[b as usize] = a;
        }
    }

    /// Flip edges around halfedge `a` until every affected pair satisfies
    /// the (perturbed) empty-circumcircle condition. Returns the halfedge
    /// that ends up preceding `a`'s final position, which the caller uses to
    /// track the hull-adjacent triangle of the newly inserted vertex.
    fn legalize(&mut self, mut a: u32) -> u32 {
        let mut ar;
        loop {
            let b = self.halfedges[a as usize];
            ar = prev_halfedge(a);

            let illegal = b != EMPTY && {
                let al = next_halfedge(a);
                let bl = prev_halfedge(b);
                let p0 = self.triangles[ar as usize];
                let pr = self.triangles[a as usize];
                let pl = self.triangles[al as usize];
                let p1 = self.triangles[bl as usize];
                in_circle_tiebreak(self.field, self.points, p0, pr, pl, p1)
            };

            if !illegal {
                match self.stack.pop() {
                    Some(next) => a = next,
                    None => return ar,
                }
                continue;
            }

            let bl = prev_halfedge(b);
            let p1 = self.triangles[bl as usize];
            let p0 = self.triangles[ar as usize];

            self.triangles[a as usize] = p1;
            self.triangles[b as usize] = p0;

            let hbl = self.halfedges[bl as usize];
            let har = self.halfedges[ar as usize];

            // the flipped edge sat on the hull: repoint that hull entry.
            // hull_tri[v] references an edge starting at v, so the owner of
            // bl is its start vertex; the scan remains as a safety net.
            if hbl == EMPTY {
                let v = self.triangles[bl as usize] as usize;
                if self.hull_tri[v] == bl {
                    self.hull_tri[v] = a;
                } else {
                    let mut e = self.hull_start;
                    loop {
                        if self.hull_tri[e as usize] == bl {
                            self.hull_tri[e as usize] = a;
                            break;
                        }
                        e = self.hull_prev[e as usize];
                        if e == self.hull_start {
                            break;
                        }
                    }
                }
            }

            self.link(a, hbl);
            self.link(b, har);
            self.link(ar, bl);

            self.stack.push(next_halfedge(b));
            // re-examine `a`, which now borders a different triangle
        }
    }

    /// Seed the structure from the collinear prefix order[..m] and the first
    /// off-line point order[m]: a fan of triangles over the chain. The fan
    /// is automatically Delaunay, since a circle through two points of a
    /// line excludes every other point of that line.
    fn seed_fan(&mut self, order: &[u32], m: usize) {
        let apex = order[m];
        let s = orient(self.pt(order[0]), self.pt(order[1]), self.pt(apex));
        debug_assert!(s != 0 && m >= 2);
        let mut first_t = EMPTY;
        let mut prev_t = EMPTY;
        if s > 0 {
            // apex left of the chain; triangles (g_i, g_{i+1}, apex)
            for i in 0..m - 1 {
                let (gi, gj) = (order[i], order[i + 1]);
                let c = if prev_t == EMPTY { EMPTY } else { prev_t + 1 };
                let t = self.add_triangle(gi, gj, apex, EMPTY, EMPTY, c);
                if first_t == EMPTY {
                    first_t = t;
                }
                self.hull_tri[gi as usize] = t;
                prev_t = t;
            }
            self.hull_tri[order[m - 1] as usize] = prev_t + 1;
            self.hull_tri[apex as usize] = first_t + 2;
            for i in 0..m - 1 {
                self.hull_next[order[i] as usize] = order[i + 1];
                self.hull_prev[order[i + 1] as usize] = order[i];
            }
            self.hull_next[order[m - 1] as usize] = apex;
            self.hull_prev[apex as usize] = order[m - 1];
            self.hull_next[apex as usize] = order[0];
            self.hull_prev[order[0] as usize] = apex;
        } else {
            // apex right of the chain; triangles (g_{i+1}, g_i, apex)
            for i in 0..m - 1 {
                let (gi, gj) = (order[i], order[i + 1]);
                let b = if prev_t == EMPTY { EMPTY } else { prev_t + 2 };
                let t = self.add_triangle(gj, gi, apex, EMPTY, b, EMPTY);
                if first_t == EMPTY {
                    first_t = t;
                }
                self.hull_tri[gj as usize] = t;
                prev_t = t;
            }
            self.hull_tri[order[0] as usize] = first_t + 1;
            self.hull_tri[apex as usize] = prev_t + 2;
            self.hull_next[apex as usize] = order[m - 1];
            self.hull_prev[order[m - 1] as usize] = apex;
            for i in 0..m - 1 {
                self.hull_next[order[i + 1] as usize] = order[i];
                self.hull_prev[order[i] as usize] = order[i + 1];
            }
            self.hull_next[order[0] as usize] = apex;
            self.hull_prev[apex as usize] = order[0];
        }
        self.hull_start = order[0];
        let mut e = self.hull_start;
        loop {
            self.hash_vertex(e);
            e = self.hull_next[e as usize];
            if e == self.hull_start {
                break;
            }
        }
    }

    /// Insert point i, which lies outside the current hull: the radial
    /// insertion order keeps every earlier point inside the circle through
    /// i about the centre, and a point of a circle is never a convex
    /// combination of other points of the closed disc.
    fn insert(&mut self, i: u32) {
        let p = self.pt(i);
        // locate a hull vertex in roughly p's direction from the centre,
        // step one back, and walk forward to the first visible hull edge
        let key = self.hash_key(p);
        let mut cand = EMPTY;
        for j in 0..self.hash.len() {
            let c = self.hash[(key + j) % self.hash.len()];
            if c != EMPTY && self.hull_next[c as usize] != EMPTY {
                cand = c;
                break;
            }
        }
        assert!(cand != EMPTY, "hull hash holds no live vertex");
        let start = self.hull_prev[cand as usize];
        let mut e = start;
        let mut steps = 0usize;
        while orient(self.pt(e), self.pt(self.hull_next[e as usize]), p) >= 0 {
            e = self.hull_next[e as usize];
            steps += 1;
            assert!(
                e != start && steps <= self.points.len(),
                "no hull edge visible from inserted point"
            );
        }
        let walk_back = e == start;

        let t = self.add_triangle(
            e,
            i,
            self.hull_next[e as usize],
            EMPTY,
            EMPTY,
            self.hull_tri[e as usize],
        );
        self.hull_tri[i as usize] = self.legalize(t + 2);
        self.hull_tri[e as usize] = t;

        // walk forward along the hull while its edges stay visible
        let mut n = self.hull_next[e as usize];
        loop {
            let q = self.hull_next[n as usize];
            if orient(self.pt(n), self.pt(q), p) >= 0 {
                break;
            }
            let t = self.add_triangle(n, i, q, self.hull_tri[i as usize], EMPTY, self.hull_tri[n as usize]);
            self.hull_tri[i as usize] = self.legalize(t + 2);
            self.hull_next[n as usize] = EMPTY; // vertex left the hull
            n = q;
        }

        // and backward from the start edge, if that one was visible itself
        if walk_back {
            loop {
                let q = self.hull_prev[e as usize];
                if orient(self.pt(q), self.pt(e), p) >= 0 {
                    break;
                }
                let t = self.add_triangle(q, i, e, EMPTY, self.hull_tri[e as usize], self.hull_tri[q as usize]);
                self.legalize(t + 2);
                self.hull_tri[q as usize] = t;
                self.hull_next[e as usize] = EMPTY;
                e = q;
            }
        }

        self.hull_prev[i as usize] = e;
        self.hull_next[i as usize] = n;
        self.hull_prev[n as usize] = i;
        self.hull_next[e as usize] = i;
        self.hull_start = e;
        self.hash_vertex(i);
        self.hash_vertex(e);
    }
}

/// Triangulate `points` under the metric of `field`.
///
/// Points must be pairwise distinct. Fewer than three points, or an entirely
/// collinear set, yields no triangles: the hull is the ordered chain and the
/// edge list connects lexicographic neighbours along it.
pub fn triangulate(field: QuadField, points: &[ScaledPoint]) -> Triangulation {
    let n = points.len();
    assert!(n < u32::MAX as usize, "too many points");

    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by_key(|&i| (points[i as usize].u, points[i as usize].v));
    for w in order.windows(2) {
        assert!(
            points[w[0] as usize] != points[w[1] as usize],
            "duplicate input point {:?}",
            points[w[0] as usize]
        );
    }

    // detect a fully collinear set (a property of the set, checked on any
    // convenient order)
    let mut m = n;
    if n >= 3 {
        let (a, b) = (points[order[0] as usize], points[order[1] as usize]);
        for (j, &oj) in order.iter().enumerate().skip(2) {
            if orient(a, b, points[oj as usize]) != 0 {
                m = j;
                break;
            }
        }
    }

    if m == n {
        // no triangle exists; emit the chain
        let mut edges: Vec<WeightedEdge> = order
            .windows(2)
            .map(|w| {
                let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
                WeightedEdge {
                    i,
                    j,
                    w: dist_sq(field, points[i as usize], points[j as usize]),
                }
            })
            .collect();
        edges.sort_unstable_by_key(|e| (e.w, e.i, e.j));
        return Triangulation {
            triangles: Vec::new(),
            halfedges: Vec::new(),
            hull: order,
            edges,
        };
    }

    // radial insertion order: sort by exact squared distance from the input
    // point nearest the bounding-box midpoint. The quadrance deliberately
    // skips dist_sq's division by four, which is only exact for scaled
    // points of matching parity; undivided it is an exact integer for any
    // input, so the outside-the-hull invariant of `insert` holds
    // unconditionally and no point is skipped.
    let (mut min_u, mut max_u) = (i64::MAX, i64::MIN);
    let (mut min_v, mut max_v) = (i64::MAX, i64::MIN);
    for p in points {
        min_u = min_u.min(p.u);
        max_u = max_u.max(p.u);
        min_v = min_v.min(p.v);
        max_v = max_v.max(p.v);
    }
    let (su, sv) = (min_u as i128 + max_u as i128, min_v as i128 + max_v as i128);
    let dd = field.abs_d() as i128;
    let midpoint_score = |p: ScaledPoint| {
        let du = 2 * p.u as i128 - su;
        let dv = 2 * p.v as i128 - sv;
        du * du + dd * dv * dv
    };
    let quadrance = |p: ScaledPoint, q: ScaledPoint| {
        let du = (p.u - q.u) as i128;
        let dv = (p.v - q.v) as i128;
        du * du + dd * dv * dv
    };
    let c0 = *points
        .iter()
        .min_by_key(|p| (midpoint_score(**p), p.u, p.v))
        .unwrap();
    order.sort_unstable_by_key(|&i| {
        let p = points[i as usize];
        (quadrance(p, c0), p.u, p.v)
    });

    // the radial order may start with collinear points (it always starts
    // with at least two); seed from that prefix re-sorted along its line,
    // with the first off-line point as the fan apex
    let mut m = 2;
    {
        let (a, b) = (points[order[0] as usize], points[order[1] as usize]);
        while m < n && orient(a, b, points[order[m] as usize]) == 0 {
            m += 1;
        }
    }
    let mut seed: Vec<u32> = order[..m].to_vec();
    seed.sort_unstable_by_key(|&i| (points[i as usize].u, points[i as usize].v));
    seed.push(order[m]);

    let mut b = Builder::new(field, points, c0);
    b.seed_fan(&seed, m);
    for &i in &order[m + 1..] {
        b.insert(i);
    }

    let mut hull = Vec::new();
    let mut e = b.hull_start;
    loop {
        hull.push(e);
        e = b.hull_next[e as usize];
        if e == b.hull_start {
            break;
        }
    }

    let mut edges = Vec::with_capacity(b.triangles.len() / 2 + 4);
    for e in 0..b.halfedges.len() {
        let twin = b.halfedges[e];
        if twin == EMPTY || (e as u32) < twin {
            let (x, y) = (b.triangles[e], b.triangles[next_halfedge(e as u32) as usize]);
            let (i, j) = (x.min(y), x.max(y));
            edges.push(WeightedEdge {
                i,
                j,
                w: dist_sq(field, points[i as usize], points[j as usize]),
            });
        }
    }
    edges.sort_unstable_by_key(|e| (e.w, e.i, e.j));

    Triangulation {
        triangles: b.triangles,
        halfedges: b.halfedges,
        hull,
        edges,
    }
}
