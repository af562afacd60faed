//! Prime moats in imaginary quadratic rings.
//!
//! For each of the nine imaginary quadratic fields Q(sqrt(d)) whose ring of
//! integers has unique factorization, this crate:
//!
//! - generates the ring primes inside a symmetry sector of the complex plane,
//! - embeds them exactly on a half-integer grid scaled by sqrt(|d|),
//! - builds a Delaunay triangulation with exact integer predicates,
//! - sweeps the edges Kruskal-style to find "moats": step bounds k such that
//!   a walker limited to hops of length at most k gets stuck at a finite set
//!   of primes, together with the farthest prime reached,
//! - estimates prime densities against the asymptotic count R^2 / (4 ln R).
//!
//! ```
//! use quadmoat::{QuadField, PrimeContext, RingElement};
//!
//! let field = QuadField::new(-1).unwrap();
//! let ctx = PrimeContext::with_sieve_limit(field, 1 << 16);
//! assert!(ctx.is_ring_prime(RingElement::new(2, 1)));
//! ```

pub mod delaunay;
pub mod density;
pub mod field;
pub mod moats;
pub mod predicates;
pub mod primality;
pub mod sector;
pub mod svg;

pub use delaunay::{triangulate, Triangulation, WeightedEdge};
pub use density::{density_report, split_residue_classes, DensityReport, SectorCounts};
pub use field::{Basis, QuadField, RingElement, UFD_D};
pub use moats::{
    find_moats_up_to, minimum_spanning_edges, reachable_frontier, KBound, MoatRecord, MoatSearch,
    SearchConfig,
};
pub use primality::{miller_rabin, PrimeContext, Sieve};
pub use sector::{
    canonical_rep, dist_sq, generate_sector_primes, max_norm_in, PrimePoint, ScaledPoint, Sector,
    SectorKind,
};
pub use svg::{moat_chart, prime_scatter, triangulation_figure, ChartSeries};

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("d={0} is not one of the nine UFD discriminants -1,-2,-3,-7,-11,-19,-43,-67,-163")]
    UnsupportedField(i64),
    #[error("boundary must be non-negative, got {0}")]
    InvalidBoundary(i64),
    #[error("step bound must be positive and finite")]
    InvalidStepBound,
    #[error("no primes inside the sector")]
    EmptySector,
    #[error("boundary ceiling {ceiling} reached with unvalidated moats (last boundary {reached})")]
    BoundaryCeiling { ceiling: i64, reached: i64 },
}
