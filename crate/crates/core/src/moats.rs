//! Moat detection: Kruskal sweep over the Delaunay edges of the sector
//! primes, tracking when the component of the smallest prime gains new
//! prime classes.
//!
//! A walker limited to hops of length at most k reaches exactly the
//! threshold-k connected component of its start, and since the minimum
//! spanning tree is a subgraph of the Delaunay triangulation, sweeping the
//! Delaunay edges by weight reproduces those components without ever
//! touching the complete graph.
//!
//! Two conventions matter for correct output:
//!
//! * Growth is counted in prime *classes*, not raw points. The padded
//!   sector contains mirror images of primes across the symmetry lines
//!   (needed so walks may cross them), and a mirror joining the component
//!   is not progress -- reflecting any walk across a symmetry line never
//!   shortens it, so the true first-passage distances are between classes.
//!   Concretely: each point knows whether it is the canonical orbit
//!   representative (`primary`), and a batch "grows" the component only if
//!   it adds a primary point.
//!
//! * A moat record for step bound k can only be frozen once some later
//!   growth happens at weight w > k^2: the frontier at bound k is the
//!   component state just before that growth. The weight of the last
//!   growth is therefore returned as `pending`, and a search is complete
//!   only when the pending growth already exceeds the requested bound.
//!
//! Truncating the sector at x = C could fake a moat by hiding primes
//! beyond the cut, so every reported record is validated: the component's
//! extremes must clear the truncation sides by strictly more than k
//! (checked exactly). If validation fails the boundary doubles, up to a
//! configured ceiling.

use std::str::FromStr;

use crate::delaunay::{triangulate, WeightedEdge};
use crate::field::{QuadField, RingElement};
use crate::primality::{isqrt_u64, PrimeContext, Sieve};
use crate::sector::{canonical_rep, generate_sector_primes, max_norm_in, PrimePoint, Sector};
use crate::Error;

/// Union-find over sector prime points, maintaining per-component
/// aggregates: point count, primary (class) count, the farthest member by
/// norm, and coordinate maxima for boundary validation.
struct ComponentTracker<'a> {
    pts: &'a [PrimePoint],
    parent: Vec<u32>,
    size: Vec<u32>,
    primaries: Vec<u32>,
    farthest: Vec<u32>,
    max_u: Vec<i64>,
    max_v: Vec<i64>,
}

impl<'a> ComponentTracker<'a> {
    fn new(pts: &'a [PrimePoint]) -> Self {
        let n = pts.len();
        ComponentTracker {
            pts,
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            primaries: pts.iter().map(|p| p.primary as u32).collect(),
            farthest: (0..n as u32).collect(),
            max_u: pts.iter().map(|p| p.point.u).collect(),
            max_v: pts.iter().map(|p| p.point.v).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let g = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = g;
            x = g;
        }
        x
    }

    /// Farther by norm; among equals the smaller (v, u) point. Equal-norm
    /// members are always the same prime class, so the choice cannot leak
    /// into reported results once canonicalized.
    fn farther(&self, a: u32, b: u32) -> u32 {
        let (pa, pb) = (&self.pts[a as usize], &self.pts[b as usize]);
        let ka = (pa.norm, std::cmp::Reverse((pa.point.v, pa.point.u)));
        let kb = (pb.norm, std::cmp::Reverse((pb.point.v, pb.point.u)));
        if ka >= kb {
            a
        } else {
            b
        }
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        let (big_i, small_i) = (big as usize, small as usize);
        self.parent[small_i] = big;
        self.size[big_i] += self.size[small_i];
        self.primaries[big_i] += self.primaries[small_i];
        self.farthest[big_i] = self.farther(self.farthest[big_i], self.farthest[small_i]);
        self.max_u[big_i] = self.max_u[big_i].max(self.max_u[small_i]);
        self.max_v[big_i] = self.max_v[big_i].max(self.max_v[small_i]);
        true
    }
}

/// Raw sweep output: the component state frozen at threshold `k_squared`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    pub k_squared: u64,
    /// Index into the point set of the farthest component member.
    pub frontier: u32,
    /// Distinct prime classes in the component.
    pub distinct_primes: u64,
    pub max_u: i64,
    pub max_v: i64,
}

/// Result of one sweep at a fixed sector.
#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    /// Weight of the last class growth; its own record is not yet frozen.
    pub pending: Option<u64>,
}

/// Index of the starting prime: smallest (norm, b, a) among canonical
/// in-sector primes. Points must be sorted as produced by
/// [`generate_sector_primes`]; that order coincides with (norm, b, a).
pub fn start_index(pts: &[PrimePoint]) -> Option<u32> {
    pts.iter().position(|p| p.primary).map(|i| i as u32)
}

/// Sweep the sorted edges, freezing a record each time the start component
/// gains prime classes. Equal-weight batches merge atomically.
pub fn moat_scan(pts: &[PrimePoint], edges: &[WeightedEdge], start: u32) -> ScanOutcome {
    let mut uf = ComponentTracker::new(pts);
    let mut records = Vec::new();
    let mut pending: Option<u64> = None;
    let mut i = 0;
    while i < edges.len() {
        let w = edges[i].w;
        let root = uf.find(start);
        let snapshot = ScanRecord {
            k_squared: pending.unwrap_or(0),
            frontier: uf.farthest[root as usize],
            distinct_primes: uf.primaries[root as usize] as u64,
            max_u: uf.max_u[root as usize],
            max_v: uf.max_v[root as usize],
        };
        while i < edges.len() && edges[i].w == w {
            uf.union(edges[i].i, edges[i].j);
            i += 1;
        }
        let root = uf.find(start);
        if uf.primaries[root as usize] as u64 > snapshot.distinct_primes {
            if let Some(g) = pending {
                records.push(ScanRecord {
                    k_squared: g,
                    ..snapshot
                });
            }
            pending = Some(w);
        }
    }
    ScanOutcome { records, pending }
}

/// Kruskal over pre-sorted edges; returns the spanning forest edges in the
/// order taken.
pub fn minimum_spanning_edges(n: usize, edges: &[WeightedEdge]) -> Vec<WeightedEdge> {
    debug_assert!(edges.windows(2).all(|w| w[0].w <= w[1].w));
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let g = parent[parent[x as usize] as usize];
            parent[x as usize] = g;
            x = g;
        }
        x
    }
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for e in edges {
        let (ra, rb) = (find(&mut parent, e.i), find(&mut parent, e.j));
        if ra != rb {
            parent[ra as usize] = rb;
            out.push(*e);
            if out.len() + 1 == n {
                break;
            }
        }
    }
    out
}

/// Step bound for the walker: either exactly sqrt(n) or a decimal value.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum KBound {
    /// k = sqrt(n), compared exactly against squared distances.
    ExactSqrt(u64),
    /// Arbitrary k >= 0.
    Value(f64),
}

impl KBound {
    /// May the walker take a hop of squared length w?
    pub fn admits(&self, w: u64) -> bool {
        match *self {
            KBound::ExactSqrt(n) => w <= n,
            KBound::Value(k) => (w as f64) <= k * k,
        }
    }

    pub fn k(&self) -> f64 {
        match *self {
            KBound::ExactSqrt(n) => (n as f64).sqrt(),
            KBound::Value(k) => k,
        }
    }

    /// ceil(k): the sector pad that keeps every admissible hop inside.
    pub fn pad(&self) -> i64 {
        match *self {
            KBound::ExactSqrt(n) => {
                let s = isqrt_u64(n);
                (s + u64::from(s * s < n)) as i64
            }
            KBound::Value(k) => k.ceil() as i64,
        }
    }
}

impl FromStr for KBound {
    type Err = Error;

    /// "sqrt:N" for exact radicands, otherwise a decimal k.
    fn from_str(s: &str) -> Result<Self, Error> {
        if let Some(radicand) = s.strip_prefix("sqrt:") {
            let n: u64 = radicand.parse().map_err(|_| Error::InvalidStepBound)?;
            return Ok(KBound::ExactSqrt(n));
        }
        let k: f64 = s.parse().map_err(|_| Error::InvalidStepBound)?;
        if !k.is_finite() || k < 0.0 {
            return Err(Error::InvalidStepBound);
        }
        Ok(KBound::Value(k))
    }
}

/// One reported moat: the farthest reachable prime at step bound k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoatRecord {
    pub k_squared: u64,
    /// Canonical representative of the farthest prime class.
    pub farthest: RingElement,
    pub farthest_norm: u64,
    /// Prime classes reachable at this bound.
    pub distinct_primes: u64,
    /// Component coordinate maxima (scaled), for reporting clearances.
    pub max_u: i64,
    pub max_v: i64,
    /// Did the component clear the truncation sides by more than k?
    pub validated: bool,
}

impl MoatRecord {
    pub fn k(&self) -> f64 {
        (self.k_squared as f64).sqrt()
    }

    /// Distance of the farthest prime from the origin.
    pub fn distance(&self) -> f64 {
        (self.farthest_norm as f64).sqrt()
    }
}

/// Search configuration: the truncation starts at `initial_boundary` and
/// doubles until every record validates or `max_boundary` is exceeded.
#[derive(Copy, Clone, Debug)]
pub struct SearchConfig {
    pub initial_boundary: i64,
    pub max_boundary: i64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            initial_boundary: 64,
            max_boundary: 1 << 20,
        }
    }
}

/// Outcome of a moat search.
#[derive(Clone, Debug)]
pub struct MoatSearch {
    pub d: i64,
    /// Starting prime (canonical), if the sector contained any.
    pub start: Option<RingElement>,
    pub records: Vec<MoatRecord>,
    /// Truncation bound of the final attempt.
    pub boundary: i64,
    /// Configured ceiling for the bound.
    pub ceiling: i64,
    pub pad: i64,
    /// True when every record up to the requested bound validated and a
    /// growth beyond the bound was witnessed.
    pub complete: bool,
}

impl MoatSearch {
    pub fn ensure_complete(&self) -> Result<(), Error> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::BoundaryCeiling {
                ceiling: self.ceiling,
                reached: self.boundary,
            })
        }
    }
}

fn scan_at(field: QuadField, sector: &Sector) -> (Vec<PrimePoint>, ScanOutcome, Option<u32>) {
    let sieve_limit = (max_norm_in(sector) + 1).clamp(1 << 16, Sieve::DEFAULT_LIMIT);
    let ctx = PrimeContext::with_sieve_limit(field, sieve_limit);
    let pts = generate_sector_primes(sector, &ctx);
    let Some(start) = start_index(&pts) else {
        return (pts, ScanOutcome { records: Vec::new(), pending: None }, None);
    };
    let points: Vec<_> = pts.iter().map(|p| p.point).collect();
    let tri = triangulate(field, &points);
    let outcome = moat_scan(&pts, &tri.edges, start);
    (pts, outcome, Some(start))
}

/// Find every moat with step bound up to `bound`, growing the sector until
/// the results are provably unaffected by truncation. An incomplete result
/// (ceiling hit) is returned with `complete: false` rather than an error;
/// see [`MoatSearch::ensure_complete`].
pub fn find_moats_up_to(
    field: QuadField,
    bound: KBound,
    config: SearchConfig,
) -> Result<MoatSearch, Error> {
    if config.initial_boundary <= 0 {
        return Err(Error::InvalidBoundary(config.initial_boundary));
    }
    if config.max_boundary < config.initial_boundary {
        return Err(Error::InvalidBoundary(config.max_boundary));
    }
    let pad = bound.pad();
    let mut c = config.initial_boundary;
    loop {
        let sector = Sector::new(field, c, pad)?;
        let (pts, outcome, start) = scan_at(field, &sector);

        let mut all_valid = true;
        let records: Vec<MoatRecord> = outcome
            .records
            .iter()
            .filter(|r| bound.admits(r.k_squared))
            .map(|r| {
                let validated = sector.clearance_exceeds(r.max_u, r.max_v, r.k_squared);
                all_valid &= validated;
                let fp = &pts[r.frontier as usize];
                MoatRecord {
                    k_squared: r.k_squared,
                    farthest: canonical_rep(field, fp.element),
                    farthest_norm: fp.norm,
                    distinct_primes: r.distinct_primes,
                    max_u: r.max_u,
                    max_v: r.max_v,
                    validated,
                }
            })
            .collect();
        // every admissible record is frozen only if growth continued past
        // the bound
        let concluded = outcome.pending.is_some_and(|w| !bound.admits(w));

        let search = MoatSearch {
            d: field.d(),
            start: start.map(|s| pts[s as usize].element),
            records,
            boundary: c,
            ceiling: config.max_boundary,
            pad,
            complete: concluded && all_valid,
        };
        if search.complete || c >= config.max_boundary {
            return Ok(search);
        }
        c = (c * 2).min(config.max_boundary);
    }
}

/// Component of the start prime at a fixed step bound and sector size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier {
    pub farthest: RingElement,
    pub farthest_norm: u64,
    pub distinct_primes: u64,
}

/// Where does a walker with squared step bound `k_sq` stall, inside the
/// sector truncated at `boundary`? No truncation validation is applied;
/// this reports the component as-is.
pub fn reachable_frontier(field: QuadField, k_sq: u64, boundary: i64) -> Result<Frontier, Error> {
    let s = isqrt_u64(k_sq);
    let pad = (s + u64::from(s * s < k_sq)) as i64;
    let sector = Sector::new(field, boundary, pad)?;
    let sieve_limit = (max_norm_in(&sector) + 1).clamp(1 << 16, Sieve::DEFAULT_LIMIT);
    let ctx = PrimeContext::with_sieve_limit(field, sieve_limit);
    let pts = generate_sector_primes(&sector, &ctx);
    let Some(start) = start_index(&pts) else {
        return Err(Error::EmptySector);
    };
    let points: Vec<_> = pts.iter().map(|p| p.point).collect();
    let tri = triangulate(field, &points);
    let mut uf = ComponentTracker::new(&pts);
    for e in &tri.edges {
        if e.w > k_sq {
            break;
        }
        uf.union(e.i, e.j);
    }
    let root = uf.find(start);
    let fp = &pts[uf.farthest[root as usize] as usize];
    Ok(Frontier {
        farthest: canonical_rep(field, fp.element),
        farthest_norm: fp.norm,
        distinct_primes: uf.primaries[root as usize] as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sector::ScaledPoint;

    fn f(d: i64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    fn synth(u: i64, v: i64, norm: u64, primary: bool) -> PrimePoint {
        PrimePoint {
            element: RingElement::new(u, v), // placeholder; scan never reads it
            point: ScaledPoint::new(u, v),
            norm,
            primary,
        }
    }

    #[test]
    fn kbound_parsing_and_admission() {
        assert_eq!("sqrt:10".parse::<KBound>().unwrap(), KBound::ExactSqrt(10));
        assert_eq!("2.5".parse::<KBound>().unwrap(), KBound::Value(2.5));
        assert!("sqrt:x".parse::<KBound>().is_err());
        assert!("-1".parse::<KBound>().is_err());
        assert!("inf".parse::<KBound>().is_err());

        let b = KBound::ExactSqrt(10);
        assert!(b.admits(10) && !b.admits(11));
        assert_eq!(b.pad(), 4);
        let v = KBound::Value(2.5);
        assert!(v.admits(6) && !v.admits(7));
        assert_eq!(v.pad(), 3);
        assert_eq!(KBound::ExactSqrt(9).pad(), 3);
        assert_eq!(KBound::Value(3.0).pad(), 3);
    }

    #[test]
    fn scan_counts_classes_not_points() {
        // P0 -(1)- P1, then a mirror pair P2/P3 joins elsewhere at w=2,
        // and only at w=4 does the start component truly grow
        let pts = vec![
            synth(0, 0, 2, true),
            synth(2, 0, 5, true),
            synth(8, 0, 13, true),
            synth(8, -2, 13, false),
        ];
        let edges = vec![
            WeightedEdge { i: 0, j: 1, w: 1 },
            WeightedEdge { i: 2, j: 3, w: 2 },
            WeightedEdge { i: 1, j: 2, w: 4 },
        ];
        let out = moat_scan(&pts, &edges, 0);
        assert_eq!(out.pending, Some(4));
        assert_eq!(out.records.len(), 1);
        let r = out.records[0];
        assert_eq!(r.k_squared, 1);
        assert_eq!(r.frontier, 1);
        assert_eq!(r.distinct_primes, 2);
        assert_eq!((r.max_u, r.max_v), (2, 0));
    }

    #[test]
    fn scan_mirror_join_is_not_growth() {
        // the mirror of an already-reached class attaches at w=1; no record
        // may be emitted for it
        let pts = vec![
            synth(0, 0, 2, true),
            synth(2, 0, 5, true),
            synth(2, -1, 5, false),
            synth(9, 0, 11, true),
        ];
        let edges = vec![
            WeightedEdge { i: 0, j: 1, w: 1 },
            WeightedEdge { i: 1, j: 2, w: 1 },
            WeightedEdge { i: 2, j: 3, w: 9 },
        ];
        let out = moat_scan(&pts, &edges, 0);
        assert_eq!(out.pending, Some(9));
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].k_squared, 1);
        // the mirror is in the component but adds no class
        assert_eq!(out.records[0].distinct_primes, 2);
    }

    #[test]
    fn gaussian_first_record() {
        let sector = Sector::new(f(-1), 8, 2).unwrap();
        let (pts, outcome, start) = scan_at(f(-1), &sector);
        let start = start.unwrap();
        assert_eq!(pts[start as usize].element, RingElement::new(1, 1));
        let first = outcome.records[0];
        assert_eq!(first.k_squared, 1);
        assert_eq!(pts[first.frontier as usize].element, RingElement::new(2, 1));
        assert_eq!(first.distinct_primes, 2);
    }

    #[test]
    fn gaussian_search_to_sqrt2() {
        let search =
            find_moats_up_to(f(-1), "sqrt:2".parse().unwrap(), SearchConfig::default()).unwrap();
        assert!(search.complete);
        assert_eq!(search.boundary, 64);
        assert_eq!(search.start, Some(RingElement::new(1, 1)));
        let brief: Vec<_> = search
            .records
            .iter()
            .map(|r| (r.k_squared, (r.farthest.a, r.farthest.b), r.farthest_norm))
            .collect();
        assert_eq!(brief, vec![(1, (2, 1), 5), (2, (11, 4), 137)]);
        assert!(search.records.iter().all(|r| r.validated));
        assert!(search.ensure_complete().is_ok());
    }

    #[test]
    fn search_doubles_until_frontier_fits() {
        let cfg = SearchConfig {
            initial_boundary: 16,
            max_boundary: 1 << 12,
        };
        let search = find_moats_up_to(f(-1), "sqrt:4".parse().unwrap(), cfg).unwrap();
        assert!(search.complete);
        // frontier at k^2=4 sits at 42+17i, so C=16 and C=32 must fail
        assert_eq!(search.boundary, 64);
        let last = search.records.last().unwrap();
        assert_eq!((last.farthest.a, last.farthest.b), (42, 17));
        assert_eq!(last.farthest_norm, 2053);
    }

    #[test]
    fn search_reports_ceiling() {
        let cfg = SearchConfig {
            initial_boundary: 16,
            max_boundary: 32,
        };
        let search = find_moats_up_to(f(-1), "sqrt:4".parse().unwrap(), cfg).unwrap();
        assert!(!search.complete);
        assert_eq!(search.boundary, 32);
        assert!(matches!(
            search.ensure_complete(),
            Err(Error::BoundaryCeiling { ceiling: 32, reached: 32 })
        ));
    }

    #[test]
    fn invalid_configs_rejected() {
        let cfg = SearchConfig {
            initial_boundary: 0,
            max_boundary: 64,
        };
        assert!(matches!(
            find_moats_up_to(f(-1), KBound::ExactSqrt(1), cfg),
            Err(Error::InvalidBoundary(0))
        ));
        let cfg = SearchConfig {
            initial_boundary: 64,
            max_boundary: 32,
        };
        assert!(matches!(
            find_moats_up_to(f(-1), KBound::ExactSqrt(1), cfg),
            Err(Error::InvalidBoundary(32))
        ));
    }

    #[test]
    fn frontier_queries() {
        let fr = reachable_frontier(f(-2), 1, 64).unwrap();
        assert_eq!(fr.farthest, RingElement::new(1, 1));
        assert_eq!(fr.farthest_norm, 3);
        let fr = reachable_frontier(f(-2), 4, 64).unwrap();
        assert_eq!(fr.farthest, RingElement::new(3, 2));
        assert_eq!(fr.farthest_norm, 17);
    }

    #[test]
    fn spanning_forest_matches_complete_graph() {
        // the Delaunay edge set must carry a minimum spanning tree of the
        // complete graph: identical weight sequences under Kruskal
        for d in [-1i64, -2, -3, -7, -43] {
            let fd = f(d);
            let mut s = 0xfeedu64 ^ d.unsigned_abs();
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 40) as i64
            };
            let mut pts: Vec<ScaledPoint> = (0..50)
                .map(|_| ScaledPoint::new(next() % 30, next() % 30))
                .collect();
            pts.sort_unstable();
            pts.dedup();
            let n = pts.len();

            let tri = triangulate(fd, &pts);
            let delaunay_mst = minimum_spanning_edges(n, &tri.edges);

            let mut complete: Vec<WeightedEdge> = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    complete.push(WeightedEdge {
                        i: i as u32,
                        j: j as u32,
                        w: crate::sector::dist_sq(fd, pts[i], pts[j]),
                    });
                }
            }
            complete.sort_unstable_by_key(|e| (e.w, e.i, e.j));
            let complete_mst = minimum_spanning_edges(n, &complete);

            let wa: Vec<u64> = delaunay_mst.iter().map(|e| e.w).collect();
            let wb: Vec<u64> = complete_mst.iter().map(|e| e.w).collect();
            assert_eq!(wa, wb, "d={d}");
            assert_eq!(wa.len(), n - 1, "spanning, d={d}");
        }
    }
}
