//! C ABI over the quadmoat core.
//!
//! Everything that owns memory travels as an opaque handle created and
//! released by a matching `_new`/`_free` pair; results that are plain data
//! come back through `#[repr(C)]` out-parameters. Every fallible entry
//! point returns a [`QmStatus`]; panics are caught at the boundary and
//! reported as [`QmStatus::Panic`] instead of unwinding into C.
//!
//! The C header is generated into `include/quadmoat.h` by the build script.

use quadmoat::{
    canonical_rep, density_report, find_moats_up_to, KBound, MoatSearch, PrimeContext, QuadField,
    RingElement, SearchConfig,
};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result code of every fallible call.
#[repr(i32)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QmStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// `d` is not one of the nine UFD discriminants.
    UnsupportedField = 2,
    /// An argument was out of range (boundary, index, overflowing input).
    InvalidArgument = 3,
    /// The call panicked; the library state is unchanged.
    Panic = 4,
}

fn status_of(err: &quadmoat::Error) -> QmStatus {
    match err {
        quadmoat::Error::UnsupportedField(_) => QmStatus::UnsupportedField,
        _ => QmStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> QmStatus) -> QmStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QmStatus::Panic)
}

/// Coordinate bound accepted over the ABI; keeps every norm within i128
/// and every embedding within i64.
const COORD_LIMIT: i64 = 1 << 31;

fn coords_in_range(a: i64, b: i64) -> bool {
    (-COORD_LIMIT..=COORD_LIMIT).contains(&a) && (-COORD_LIMIT..=COORD_LIMIT).contains(&b)
}

/// Field handle bundling the ring constants with a reusable primality
/// context (opaque).
pub struct QmField {
    field: QuadField,
    ctx: PrimeContext,
}

/// Finished moat search (opaque); interrogate it through the accessors.
pub struct QmMoats {
    search: MoatSearch,
}

/// One moat row, mirroring the library record.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct QmMoatRecord {
    /// Squared step bound at which the frontier froze.
    pub k_squared: u64,
    /// Canonical coordinates of the farthest reachable prime.
    pub farthest_a: i64,
    pub farthest_b: i64,
    pub farthest_norm: u64,
    pub distinct_primes: u64,
    /// True when the truncation clearance proves the row exact.
    pub validated: bool,
}

/// Prime-count comparison against the asymptotic density at one radius.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QmDensityReport {
    pub radius: f64,
    pub primes: u64,
    pub degree_one: u64,
    pub inert: u64,
    pub empirical_density: f64,
    pub asymptotic_density: f64,
    pub relative_error: f64,
    /// empirical_density * pi * ln(radius).
    pub normalized: f64,
}

/// Create a field handle for discriminant `d` and store it in `*out`.
/// The handle must be released with [`qm_field_free`].
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qm_field_new(d: i64, out: *mut *mut QmField) -> QmStatus {
    if out.is_null() {
        return QmStatus::NullArgument;
    }
    guarded(|| match QuadField::new(d) {
        Ok(field) => {
            let ctx = PrimeContext::with_sieve_limit(field, 1 << 20);
            unsafe { *out = Box::into_raw(Box::new(QmField { field, ctx })) };
            QmStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Release a handle from [`qm_field_new`]. Null is ignored.
///
/// # Safety
/// `f` must be null or a pointer returned by `qm_field_new` that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn qm_field_free(f: *mut QmField) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Norm of a + b tau in the ring of `f`, written to `*out`.
/// Fails with `InvalidArgument` when a coordinate exceeds 2^31 in
/// magnitude or the norm overflows 64 bits.
///
/// # Safety
/// `f` must be a live handle from `qm_field_new`; `out` must be valid for
/// one u64 write.
#[no_mangle]
pub unsafe extern "C" fn qm_norm(f: *const QmField, a: i64, b: i64, out: *mut u64) -> QmStatus {
    if f.is_null() || out.is_null() {
        return QmStatus::NullArgument;
    }
    if !coords_in_range(a, b) {
        return QmStatus::InvalidArgument;
    }
    guarded(|| {
        let h = unsafe { &*f };
        match u64::try_from(h.field.norm(RingElement::new(a, b))) {
            Ok(n) => {
                unsafe { *out = n };
                QmStatus::Ok
            }
            Err(_) => QmStatus::InvalidArgument,
        }
    })
}

/// Whether a + b tau is prime in the ring of `f`, written to `*out`.
/// Coordinates beyond 2^31 in magnitude fail with `InvalidArgument`.
///
/// # Safety
/// `f` must be a live handle from `qm_field_new`; `out` must be valid for
/// one bool write.
#[no_mangle]
pub unsafe extern "C" fn qm_is_ring_prime(
    f: *const QmField,
    a: i64,
    b: i64,
    out: *mut bool,
) -> QmStatus {
    if f.is_null() || out.is_null() {
        return QmStatus::NullArgument;
    }
    if !coords_in_range(a, b) {
        return QmStatus::InvalidArgument;
    }
    guarded(|| {
        let h = unsafe { &*f };
        unsafe { *out = h.ctx.is_ring_prime(RingElement::new(a, b)) };
        QmStatus::Ok
    })
}

/// Canonical sector representative of the associate/conjugate orbit of
/// a + b tau, written to `*out_a`, `*out_b`. Coordinates beyond 2^31 in
/// magnitude fail with `InvalidArgument`.
///
/// # Safety
/// `f` must be a live handle; both out-pointers must be valid for i64
/// writes.
#[no_mangle]
pub unsafe extern "C" fn qm_canonical_rep(
    f: *const QmField,
    a: i64,
    b: i64,
    out_a: *mut i64,
    out_b: *mut i64,
) -> QmStatus {
    if f.is_null() || out_a.is_null() || out_b.is_null() {
        return QmStatus::NullArgument;
    }
    if !coords_in_range(a, b) {
        return QmStatus::InvalidArgument;
    }
    guarded(|| {
        let h = unsafe { &*f };
        let r = canonical_rep(h.field, RingElement::new(a, b));
        unsafe {
            *out_a = r.a;
            *out_b = r.b;
        }
        QmStatus::Ok
    })
}

/// Run the moat search for every squared step bound up to `k_sq_max`,
/// growing the truncation from `initial_boundary` to at most
/// `max_boundary` (pass 0 for either to take the defaults). On success
/// `*out` owns the result; release it with [`qm_moats_free`]. A search
/// that hit the ceiling still succeeds: check [`qm_moats_complete`].
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qm_moats_find(
    d: i64,
    k_sq_max: u64,
    initial_boundary: i64,
    max_boundary: i64,
    out: *mut *mut QmMoats,
) -> QmStatus {
    if out.is_null() {
        return QmStatus::NullArgument;
    }
    guarded(|| {
        let field = match QuadField::new(d) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        };
        let defaults = SearchConfig::default();
        let initial = if initial_boundary == 0 { defaults.initial_boundary } else { initial_boundary };
        let max = if max_boundary == 0 { defaults.max_boundary } else { max_boundary };
        let config = SearchConfig {
            initial_boundary: initial.min(max),
            max_boundary: max,
        };
        match find_moats_up_to(field, KBound::ExactSqrt(k_sq_max), config) {
            Ok(search) => {
                unsafe { *out = Box::into_raw(Box::new(QmMoats { search })) };
                QmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a handle from [`qm_moats_find`]. Null is ignored.
///
/// # Safety
/// `m` must be null or an unfreed pointer returned by `qm_moats_find`.
#[no_mangle]
pub unsafe extern "C" fn qm_moats_free(m: *mut QmMoats) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Number of moat rows in the result; 0 for null.
///
/// # Safety
/// `m` must be null or a live handle from `qm_moats_find`.
#[no_mangle]
pub unsafe extern "C" fn qm_moats_len(m: *const QmMoats) -> usize {
    if m.is_null() {
        return 0;
    }
    unsafe { &*m }.search.records.len()
}

/// Whether every requested row was validated against truncation; false
/// for null.
///
/// # Safety
/// `m` must be null or a live handle from `qm_moats_find`.
#[no_mangle]
pub unsafe extern "C" fn qm_moats_complete(m: *const QmMoats) -> bool {
    !m.is_null() && unsafe { &*m }.search.complete
}

/// Final truncation bound the search settled on; 0 for null.
///
/// # Safety
/// `m` must be null or a live handle from `qm_moats_find`.
#[no_mangle]
pub unsafe extern "C" fn qm_moats_boundary(m: *const QmMoats) -> i64 {
    if m.is_null() {
        return 0;
    }
    unsafe { &*m }.search.boundary
}

/// Copy row `index` into `*out`; `InvalidArgument` when out of range.
///
/// # Safety
/// `m` must be a live handle from `qm_moats_find`; `out` must be valid
/// for one record write.
#[no_mangle]
pub unsafe extern "C" fn qm_moats_record(
    m: *const QmMoats,
    index: usize,
    out: *mut QmMoatRecord,
) -> QmStatus {
    if m.is_null() || out.is_null() {
        return QmStatus::NullArgument;
    }
    guarded(|| {
        let search = &unsafe { &*m }.search;
        let Some(r) = search.records.get(index) else {
            return QmStatus::InvalidArgument;
        };
        unsafe {
            *out = QmMoatRecord {
                k_squared: r.k_squared,
                farthest_a: r.farthest.a,
                farthest_b: r.farthest.b,
                farthest_norm: r.farthest_norm,
                distinct_primes: r.distinct_primes,
                validated: r.validated,
            };
        }
        QmStatus::Ok
    })
}

/// Count ring primes to `radius` and compare with the asymptotic density,
/// writing the report to `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one report.
#[no_mangle]
pub unsafe extern "C" fn qm_density(d: i64, radius: f64, out: *mut QmDensityReport) -> QmStatus {
    if out.is_null() {
        return QmStatus::NullArgument;
    }
    guarded(|| {
        let field = match QuadField::new(d) {
            Ok(f) => f,
            Err(e) => return status_of(&e),
        };
        match density_report(field, radius) {
            Ok(rep) => {
                unsafe {
                    *out = QmDensityReport {
                        radius: rep.radius,
                        primes: rep.counts.total,
                        degree_one: rep.counts.degree_one,
                        inert: rep.counts.inert,
                        empirical_density: rep.empirical_density,
                        asymptotic_density: rep.asymptotic_density,
                        relative_error: rep.relative_error,
                        normalized: rep.normalized(),
                    };
                }
                QmStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}
