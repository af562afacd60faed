//! Prime counting in the fundamental sector and comparison against the
//! Landau-type asymptotic count R^2 / (4 ln R) per sector copy.
//!
//! The empirical count walks the half-open fundamental domain x > 0 with
//! the natural angular bounds (octant, twelfth or quadrant), so that the
//! symmetry copies tile the punctured plane without double counting. The
//! sector area follows from the covolume of the embedded lattice: a full
//! disc of radius R holds ~ 2 pi R^2 / sqrt(|disc|) lattice points' worth
//! of area units, and one sector is a fold-th of it.

use std::f64::consts::PI;

use crate::field::{Basis, QuadField};
use crate::primality::PrimeContext;
use crate::sector::{Sector, SectorKind};
use crate::Error;

/// Prime counts in the fundamental domain, split by degree.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct SectorCounts {
    pub total: u64,
    /// Norm is a rational prime (split or ramified primes).
    pub degree_one: u64,
    /// Norm is the square of an inert rational prime.
    pub inert: u64,
}

/// Count ring primes of norm <= `norm_bound` in the half-open fundamental
/// domain: x > 0, y >= 0, and the field's angular bound.
pub fn sector_prime_count(ctx: &PrimeContext, norm_bound: u64) -> SectorCounts {
    let field = ctx.field();
    let kind = SectorKind::natural(field);
    let mut counts = SectorCounts::default();
    // a closed sector with x <= C, C^2 >= norm_bound, covers the domain
    let c = crate::primality::isqrt_u64(norm_bound) as i64 + 1;
    let sector = Sector::new(field, c, 0).expect("boundary is positive");
    sector.for_each_lattice_point(|e, p| {
        if p.u <= 0 || !kind.contains_angular(p) {
            return;
        }
        let n = field.norm(e) as u64;
        if n > norm_bound || !ctx.is_ring_prime(e) {
            return;
        }
        counts.total += 1;
        if ctx.is_rational_prime(n) {
            counts.degree_one += 1;
        } else {
            counts.inert += 1;
        }
    });
    counts
}

/// Area of the fundamental sector of radius R.
pub fn sector_area(field: QuadField, radius: f64) -> f64 {
    let full_disc = PI * radius * radius;
    let per_lattice = match field.basis() {
        // covolume sqrt(|d|): the disc holds area/sqrt(|d|) cells
        Basis::SqrtD => full_disc / (field.abs_d() as f64).sqrt(),
        // covolume sqrt(|d|)/2
        Basis::HalfInteger => 2.0 * full_disc / (field.abs_d() as f64).sqrt(),
    };
    per_lattice / SectorKind::natural(field).fold() as f64
}

/// Empirical versus asymptotic prime density at radius R.
#[derive(Copy, Clone, Debug)]
pub struct DensityReport {
    pub d: i64,
    pub radius: f64,
    pub counts: SectorCounts,
    pub sector_area: f64,
    /// counts.total / sector_area
    pub empirical_density: f64,
    /// (R^2 / (4 ln R)) / sector_area
    pub asymptotic_density: f64,
    /// |empirical - asymptotic| / asymptotic
    pub relative_error: f64,
}

impl DensityReport {
    /// density * pi * ln R. The asymptotic value of this product is a
    /// constant of the field: 2 for d=-1, sqrt(2) for d=-2, 3 sqrt(3)/2
    /// for d=-3.
    pub fn normalized(&self) -> f64 {
        self.empirical_density * PI * self.radius.ln()
    }
}

/// Count primes to radius R (norm R^2) and compare with the asymptotic.
pub fn density_report(field: QuadField, radius: f64) -> Result<DensityReport, Error> {
    if !radius.is_finite() || radius < 2.0 {
        return Err(Error::InvalidBoundary(radius as i64));
    }
    let norm_bound = (radius * radius).floor() as u64;
    // the counting loop only tests norms <= norm_bound, so a sieve that far
    // avoids Miller-Rabin entirely up to R = 2^14 (the cap costs 16 MB)
    let sieve_limit = (norm_bound + 1).clamp(1 << 16, 1 << 28);
    let ctx = PrimeContext::with_sieve_limit(field, sieve_limit);
    let counts = sector_prime_count(&ctx, norm_bound);
    let area = sector_area(field, radius);
    let empirical = counts.total as f64 / area;
    let asymptotic = radius * radius / (4.0 * radius.ln()) / area;
    Ok(DensityReport {
        d: field.d(),
        radius,
        counts,
        sector_area: area,
        empirical_density: empirical,
        asymptotic_density: asymptotic,
        relative_error: (empirical - asymptotic).abs() / asymptotic,
    })
}

/// Degree-one prime norms <= limit bucketed by residue class mod `modulus`.
/// Useful for eyeballing which rational primes split.
pub fn split_residue_classes(
    ctx: &PrimeContext,
    norm_bound: u64,
    modulus: u64,
) -> std::collections::BTreeMap<u64, u64> {
    let mut map = std::collections::BTreeMap::new();
    let kind = SectorKind::natural(ctx.field());
    let c = crate::primality::isqrt_u64(norm_bound) as i64 + 1;
    let sector = Sector::new(ctx.field(), c, 0).expect("boundary is positive");
    sector.for_each_lattice_point(|e, p| {
        if p.u <= 0 || !kind.contains_angular(p) {
            return;
        }
        let n = ctx.field().norm(e) as u64;
        if n <= norm_bound && ctx.is_ring_prime(e) && ctx.is_rational_prime(n) {
            *map.entry(n % modulus).or_insert(0) += 1;
        }
    });
    map
}
