//! Independent oracles shared by the integration tests. Each reimplements
//! a contract from first principles (trial factorization, Prim on the
//! complete graph, threshold reachability) so agreement with the library
//! is meaningful.

#![allow(dead_code)]

use std::collections::BTreeMap;

use quadmoat::{dist_sq, PrimePoint, QuadField, RingElement, ScaledPoint};

/// All ring elements with 2 <= norm <= `bound`, grouped by norm.
pub fn elements_by_norm(field: QuadField, bound: u64) -> BTreeMap<u64, Vec<RingElement>> {
    let mut map: BTreeMap<u64, Vec<RingElement>> = BTreeMap::new();
    for e in all_elements_up_to_norm(field, bound) {
        let n = field.norm(e) as u64;
        if n >= 2 {
            map.entry(n).or_default().push(e);
        }
    }
    map
}

/// Every lattice element of norm <= `bound` (including 0, units, mirrors).
pub fn all_elements_up_to_norm(field: QuadField, bound: u64) -> Vec<RingElement> {
    let s = isqrt(bound) as i64;
    let bb = isqrt(4 * bound / field.abs_d() as u64) as i64 + 1;
    let mut out = Vec::new();
    for b in -bb..=bb {
        for a in (-2 * s - 2)..=(2 * s + 2) {
            let e = RingElement::new(a, b);
            if field.norm(e) as u64 <= bound {
                out.push(e);
            }
        }
    }
    out
}

/// Irreducibility by trial division: `e` is irreducible iff its norm is at
/// least 2 and no element of norm in [2, sqrt(N(e))] dividing N(e) also
/// divides `e`. Norms are multiplicative, so any proper factorization has
/// a factor in that window.
pub fn irreducible_brute_force(
    field: QuadField,
    e: RingElement,
    small: &BTreeMap<u64, Vec<RingElement>>,
) -> bool {
    let n = field.norm(e);
    if n <= 1 {
        return false;
    }
    let n = n as u64;
    let lim = isqrt(n);
    if lim < 2 {
        // norm 2 or 3: any factorization would need a norm-2 factor and a
        // unit, so the element is irreducible outright
        return true;
    }
    for (&m, candidates) in small.range(2..=lim) {
        if !n.is_multiple_of(m) {
            continue;
        }
        for &f in candidates {
            if divides(field, f, e) {
                return false;
            }
        }
    }
    true
}

/// Does `f` divide `e` in the ring? e / f = e * conj(f) / N(f); the ring is
/// exactly the integer pairs in its basis, so divisibility means both
/// coordinates of e * conj(f) are multiples of N(f).
pub fn divides(field: QuadField, f: RingElement, e: RingElement) -> bool {
    let nf = field.norm(f);
    if nf == 0 {
        return false;
    }
    let p = field.mul(e, field.conjugate(f));
    (p.a as i128) % nf == 0 && (p.b as i128) % nf == 0
}

/// Total MST weight of the complete graph by Prim's algorithm, O(n^2).
pub fn prim_mst_total(field: QuadField, points: &[ScaledPoint]) -> u128 {
    let n = points.len();
    if n < 2 {
        return 0;
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![u64::MAX; n];
    best[0] = 0;
    let mut total = 0u128;
    for _ in 0..n {
        let mut u = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (u == usize::MAX || best[v] < best[u]) {
                u = v;
            }
        }
        in_tree[u] = true;
        total += best[u] as u128;
        for v in 0..n {
            if !in_tree[v] {
                let w = dist_sq(field, points[u], points[v]);
                if w < best[v] {
                    best[v] = w;
                }
            }
        }
    }
    total
}

/// One frozen reachability record from the oracle sweep.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleRecord {
    pub k_squared: u64,
    pub farthest: RingElement,
    pub distinct_primes: u64,
}

/// Threshold reachability on the complete graph, no triangulation involved.
///
/// Processes distinct squared distances in increasing order; a record is
/// frozen for growth weight g when a later batch first adds another prime
/// class to the start component, and carries the component state just
/// before that batch. Returns the records plus the last unfrozen growth
/// weight.
pub fn oracle_moat_records(
    field: QuadField,
    pts: &[PrimePoint],
) -> (Vec<OracleRecord>, Option<u64>) {
    let n = pts.len();
    let start = pts
        .iter()
        .enumerate()
        .filter(|(_, p)| p.primary)
        .min_by_key(|(_, p)| (p.norm, p.point.v, p.point.u))
        .map(|(i, _)| i)
        .expect("sector holds at least one prime");

    let mut edges: Vec<(u64, u32, u32)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((dist_sq(field, pts[i].point, pts[j].point), i as u32, j as u32));
        }
    }
    edges.sort_unstable();

    let mut parent: Vec<usize> = (0..n).collect();
    let mut records = Vec::new();
    let mut pending: Option<u64> = None;
    let mut i = 0;
    while i < edges.len() {
        let w = edges[i].0;
        let (far_before, distinct_before) = component_stats(pts, &mut parent, start);
        while i < edges.len() && edges[i].0 == w {
            let (a, b) = (
                find(&mut parent, edges[i].1 as usize),
                find(&mut parent, edges[i].2 as usize),
            );
            parent[a] = b;
            i += 1;
        }
        let (_, distinct_after) = component_stats(pts, &mut parent, start);
        if distinct_after > distinct_before {
            if let Some(g) = pending {
                records.push(OracleRecord {
                    k_squared: g,
                    farthest: far_before,
                    distinct_primes: distinct_before,
                });
            }
            pending = Some(w);
        }
    }
    (records, pending)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Farthest member (max norm, ties toward smaller (v, u)) and prime-class
/// count of the start component, by full scan.
fn component_stats(pts: &[PrimePoint], parent: &mut [usize], start: usize) -> (RingElement, u64) {
    let root = find(parent, start);
    let mut distinct = 0u64;
    let mut far: Option<&PrimePoint> = None;
    for (i, p) in pts.iter().enumerate() {
        if find(parent, i) != root {
            continue;
        }
        if p.primary {
            distinct += 1;
        }
        let beats = match far {
            None => true,
            Some(f) => {
                (p.norm, std::cmp::Reverse((p.point.v, p.point.u)))
                    > (f.norm, std::cmp::Reverse((f.point.v, f.point.u)))
            }
        };
        if beats {
            far = Some(p);
        }
    }
    (far.expect("component contains start").element, distinct)
}

fn isqrt(n: u64) -> u64 {
    quadmoat::primality::isqrt_u64(n)
}
