//! Planar embedding and symmetry sectors.
//!
//! A ring element a + b*tau sits at (a, b*sqrt(|d|)) or
//! (a - b/2, (b/2)*sqrt(|d|)) in the complex plane. Doubling both axes
//! clears the halves: we store `ScaledPoint { u, v }` for the true point
//! (u/2, (v/2)*sqrt(|d|)), which keeps every coordinate an integer and makes
//! squared distances exact:
//!
//!   dist^2 = (du^2 + |d| * dv^2) / 4 = N(e1 - e2)
//!
//! The prime set of each ring is invariant under multiplication by units and
//! under conjugation, a dihedral symmetry of order 8 (d = -1), 12 (d = -3)
//! or 4 (the rest). Searches therefore run in one fundamental sector,
//! truncated at x <= C and widened by `pad` across the symmetry lines so
//! that walks may briefly cross them.

use crate::field::{Basis, QuadField, RingElement};
use crate::primality::PrimeContext;
use crate::Error;

/// Scaled integer coordinates of an embedded ring element.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaledPoint {
    pub u: i64,
    pub v: i64,
}

impl ScaledPoint {
    pub const fn new(u: i64, v: i64) -> Self {
        ScaledPoint { u, v }
    }

    /// True planar coordinates.
    pub fn xy(&self, field: QuadField) -> (f64, f64) {
        let root = (field.abs_d() as f64).sqrt();
        (self.u as f64 / 2.0, self.v as f64 * root / 2.0)
    }
}

impl QuadField {
    pub fn embed(&self, e: RingElement) -> ScaledPoint {
        match self.basis() {
            Basis::SqrtD => ScaledPoint::new(2 * e.a, 2 * e.b),
            Basis::HalfInteger => ScaledPoint::new(2 * e.a - e.b, e.b),
        }
    }

    pub fn unembed(&self, p: ScaledPoint) -> RingElement {
        match self.basis() {
            Basis::SqrtD => RingElement::new(p.u / 2, p.v / 2),
            Basis::HalfInteger => RingElement::new((p.u + p.v) / 2, p.v),
        }
    }
}

/// Exact squared Euclidean distance between two embedded points; equals the
/// norm of the element difference.
pub fn dist_sq(field: QuadField, p: ScaledPoint, q: ScaledPoint) -> u64 {
    let du = (p.u - q.u) as i128;
    let dv = (p.v - q.v) as i128;
    let s = (du * du + field.abs_d() as i128 * dv * dv) / 4;
    u64::try_from(s).expect("squared distance exceeds u64")
}

/// Shape of the fundamental sector.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SectorKind {
    /// d = -1: 0 <= y <= x <= C, one eighth of the plane.
    Octant,
    /// d = -3: 0 <= y <= x/sqrt(3), x <= C, one twelfth.
    Twelfth,
    /// everything else: 0 <= x <= C, 0 <= y <= C, one quarter.
    Quadrant,
}

impl SectorKind {
    pub fn natural(field: QuadField) -> SectorKind {
        match field.d() {
            -1 => SectorKind::Octant,
            -3 => SectorKind::Twelfth,
            _ => SectorKind::Quadrant,
        }
    }

    /// How many copies of the sector tile the plane.
    pub fn fold(&self) -> u32 {
        match self {
            SectorKind::Octant => 8,
            SectorKind::Twelfth => 12,
            SectorKind::Quadrant => 4,
        }
    }

    /// Membership in the unbounded closed sector (no x <= C truncation).
    /// Exactly one point of each prime's symmetry orbit lands here.
    pub fn contains_angular(&self, p: ScaledPoint) -> bool {
        match self {
            SectorKind::Octant => 0 <= p.v && p.v <= p.u,
            SectorKind::Twelfth => 0 <= p.v && p.u >= 3 * p.v,
            SectorKind::Quadrant => p.u >= 0 && p.v >= 0,
        }
    }
}

/// A truncated fundamental sector, optionally widened across its symmetry
/// lines by an integer margin `pad`. The truncation sides (x = C, and y = C
/// for quadrants) are never padded; walks that stall near them are what
/// boundary validation checks for.
#[derive(Copy, Clone, Debug)]
pub struct Sector {
    field: QuadField,
    kind: SectorKind,
    boundary: i64,
    pad: i64,
}

impl Sector {
    pub fn new(field: QuadField, boundary: i64, pad: i64) -> Result<Self, Error> {
        if boundary < 0 || pad < 0 {
            return Err(Error::InvalidBoundary(boundary.min(pad)));
        }
        Ok(Sector {
            field,
            kind: SectorKind::natural(field),
            boundary,
            pad,
        })
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn kind(&self) -> SectorKind {
        self.kind
    }

    pub fn boundary(&self) -> i64 {
        self.boundary
    }

    pub fn pad(&self) -> i64 {
        self.pad
    }

    /// Membership in the padded, truncated sector. All comparisons are exact:
    /// each sqrt in the geometry appears squared with a known sign.
    pub fn contains_padded(&self, p: ScaledPoint) -> bool {
        let dd = self.field.abs_d() as i128;
        let (u, v) = (p.u as i128, p.v as i128);
        let c2 = 2 * self.boundary as i128;
        let pad = self.pad as i128;
        if u > c2 {
            return false;
        }
        // y >= -pad  <=>  v >= 0 or |d| v^2 <= 4 pad^2
        if v < 0 && dd * v * v > 4 * pad * pad {
            return false;
        }
        match self.kind {
            // distance to the line y = x is |y-x|/sqrt(2); here |d| = 1
            SectorKind::Octant => v <= u || (v - u) * (v - u) <= 8 * pad * pad,
            // signed distance to y = x/sqrt(3) is (x - sqrt(3) y)/2 = (u - 3v)/4 * ... ; |d| = 3
            SectorKind::Twelfth => u - 3 * v >= -4 * pad,
            SectorKind::Quadrant => {
                u >= -2 * pad && (v <= 0 || dd * v * v <= 4 * (self.boundary as i128).pow(2))
            }
        }
    }

    /// Membership in the unpadded closed sector.
    pub fn contains_closed(&self, p: ScaledPoint) -> bool {
        if !self.kind.contains_angular(p) || p.u as i128 > 2 * self.boundary as i128 {
            return false;
        }
        match self.kind {
            SectorKind::Quadrant => {
                let dd = self.field.abs_d() as i128;
                dd * (p.v as i128).pow(2) <= 4 * (self.boundary as i128).pow(2)
            }
            _ => true,
        }
    }

    /// Visit every lattice element whose embedding lies in the padded sector,
    /// row-major in b then a.
    pub fn for_each_lattice_point(&self, mut visit: impl FnMut(RingElement, ScaledPoint)) {
        let dd = self.field.abs_d();
        let c = self.boundary;
        let pad = self.pad;
        let y_hi = c + 2 * pad; // loose: exact membership re-checked per point
        match self.field.basis() {
            Basis::SqrtD => {
                let b_lo = -(crate::primality::isqrt_u64((pad * pad / dd) as u64) as i64 + 1);
                let b_hi = crate::primality::isqrt_u64((y_hi * y_hi / dd) as u64) as i64 + 1;
                for b in b_lo..=b_hi {
                    for a in -pad..=c {
                        let e = RingElement::new(a, b);
                        let p = self.field.embed(e);
                        if self.contains_padded(p) {
                            visit(e, p);
                        }
                    }
                }
            }
            Basis::HalfInteger => {
                let b_lo = -(crate::primality::isqrt_u64((4 * pad * pad / dd) as u64) as i64 + 1);
                let b_hi = crate::primality::isqrt_u64((4 * y_hi * y_hi / dd) as u64) as i64 + 1;
                for b in b_lo..=b_hi {
                    // u = 2a - b in [-2 pad, 2 C], widened by one for safety
                    let a_lo = (b - 2 * pad).div_euclid(2) - 1;
                    let a_hi = (b + 2 * c).div_euclid(2) + 1;
                    for a in a_lo..=a_hi {
                        let e = RingElement::new(a, b);
                        let p = self.field.embed(e);
                        if self.contains_padded(p) {
                            visit(e, p);
                        }
                    }
                }
            }
        }
    }

    /// Distances from the component extremes to the truncation sides:
    /// (C - max x, and for quadrants C - max y).
    pub fn boundary_clearance(&self, max_u: i64, max_v: i64) -> (f64, Option<f64>) {
        let d1 = self.boundary as f64 - max_u as f64 / 2.0;
        let d2 = match self.kind {
            SectorKind::Quadrant => {
                let root = (self.field.abs_d() as f64).sqrt();
                Some(self.boundary as f64 - max_v as f64 * root / 2.0)
            }
            _ => None,
        };
        (d1, d2)
    }

    /// Exact test that every truncation-side clearance strictly exceeds
    /// sqrt(k_sq). Rearranged so each irrational is squared away in turn.
    pub fn clearance_exceeds(&self, max_u: i64, max_v: i64, k_sq: u64) -> bool {
        let k_sq = k_sq as i128;
        // D1 > k  <=>  2C - max_u > 2 sqrt(k_sq)
        let l = 2 * self.boundary as i128 - max_u as i128;
        if l <= 0 || l * l <= 4 * k_sq {
            return false;
        }
        if self.kind != SectorKind::Quadrant {
            return true;
        }
        // D2 > k  <=>  2C - max_v sqrt(|d|) > 2 sqrt(k_sq)
        let a = 2 * self.boundary as i128;
        let t = max_v as i128;
        let dd = self.field.abs_d() as i128;
        if t <= 0 {
            // clearance is at least C; settle for the sufficient test C > k
            return a * a > 4 * k_sq;
        }
        let m = a * a - t * t * dd - 4 * k_sq;
        m > 0 && m * m > 16 * t * t * dd * k_sq
    }
}

/// A generated sector prime: the element, its embedding, its norm, and
/// whether it is the canonical representative of its symmetry orbit (padding
/// admits mirror copies, which carry `primary: false`).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PrimePoint {
    pub element: RingElement,
    pub point: ScaledPoint,
    pub norm: u64,
    pub primary: bool,
}

/// All ring primes in the padded sector, sorted by norm, ties by (v, u).
pub fn generate_sector_primes(sector: &Sector, ctx: &PrimeContext) -> Vec<PrimePoint> {
    let field = sector.field();
    let kind = sector.kind();
    let mut out = Vec::new();
    sector.for_each_lattice_point(|e, p| {
        if ctx.is_ring_prime(e) {
            out.push(PrimePoint {
                element: e,
                point: p,
                norm: u64::try_from(field.norm(e)).expect("norm exceeds u64"),
                primary: kind.contains_angular(p),
            });
        }
    });
    out.sort_by_key(|p| (p.norm, p.point.v, p.point.u));
    out
}

/// The orbit member of e (under units and conjugation) lying in the closed
/// fundamental sector. Exactly one exists for nonzero e.
pub fn canonical_rep(field: QuadField, e: RingElement) -> RingElement {
    let kind = SectorKind::natural(field);
    let mut best: Option<RingElement> = None;
    for &unit in field.units() {
        for cand in [field.mul(unit, e), field.mul(unit, field.conjugate(e))] {
            if kind.contains_angular(field.embed(cand))
                && best.is_none_or(|b| (cand.b, cand.a) < (b.b, b.a))
            {
                best = Some(cand);
            }
        }
    }
    best.expect("nonzero element must have an orbit member in the closed sector")
}

/// Largest norm that can occur among lattice points of the padded sector;
/// used to size sieves.
pub fn max_norm_in(sector: &Sector) -> u64 {
    // x in [-pad, C], y in [-pad, C + 2 pad] generously covers every kind
    let xm = sector.boundary().max(sector.pad()) as u64;
    let ym = (sector.boundary() + 2 * sector.pad()) as u64;
    xm * xm + ym * ym + 4 * (xm + ym) + 8
}
