/* C interface to the quadmoat library. Generated; do not edit. */

#ifndef QUADMOAT_H
#define QUADMOAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
enum QmStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  QM_STATUS_OK = 0,
  // A required pointer argument was null.
  QM_STATUS_NULL_ARGUMENT = 1,
  // `d` is not one of the nine UFD discriminants.
  QM_STATUS_UNSUPPORTED_FIELD = 2,
  // An argument was out of range (boundary, index, overflowing input).
  QM_STATUS_INVALID_ARGUMENT = 3,
  // The call panicked; the library state is unchanged.
  QM_STATUS_PANIC = 4,
};
#ifndef __cplusplus
typedef int32_t QmStatus;
#endif // __cplusplus

// Field handle bundling the ring constants with a reusable primality
// context (opaque).
typedef struct QmField QmField;

// Finished moat search (opaque); interrogate it through the accessors.
typedef struct QmMoats QmMoats;

// One moat row, mirroring the library record.
typedef struct QmMoatRecord {
  // Squared step bound at which the frontier froze.
  uint64_t k_squared;
  // Canonical coordinates of the farthest reachable prime.
  int64_t farthest_a;
  int64_t farthest_b;
  uint64_t farthest_norm;
  uint64_t distinct_primes;
  // True when the truncation clearance proves the row exact.
  bool validated;
} QmMoatRecord;

// Prime-count comparison against the asymptotic density at one radius.
typedef struct QmDensityReport {
  double radius;
  uint64_t primes;
  uint64_t degree_one;
  uint64_t inert;
  double empirical_density;
  double asymptotic_density;
  double relative_error;
  // empirical_density * pi * ln(radius).
  double normalized;
} QmDensityReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a field handle for discriminant `d` and store it in `*out`.
// The handle must be released with [`qm_field_free`].
//
// # Safety
// `out` must be a valid pointer to writable memory for one pointer.
QmStatus qm_field_new(int64_t d, struct QmField **out);

// Release a handle from [`qm_field_new`]. Null is ignored.
//
// # Safety
// `f` must be null or a pointer returned by `qm_field_new` that has not
// been freed already.
void qm_field_free(struct QmField *f);

// Norm of a + b tau in the ring of `f`, written to `*out`.
// Fails with `InvalidArgument` when a coordinate exceeds 2^31 in
// magnitude or the norm overflows 64 bits.
//
// # Safety
// `f` must be a live handle from `qm_field_new`; `out` must be valid for
// one u64 write.
QmStatus qm_norm(const struct QmField *f, int64_t a, int64_t b, uint64_t *out);

// Whether a + b tau is prime in the ring of `f`, written to `*out`.
// Coordinates beyond 2^31 in magnitude fail with `InvalidArgument`.
//
// # Safety
// `f` must be a live handle from `qm_field_new`; `out` must be valid for
// one bool write.
QmStatus qm_is_ring_prime(const struct QmField *f, int64_t a, int64_t b, bool *out);

// Canonical sector representative of the associate/conjugate orbit of
// a + b tau, written to `*out_a`, `*out_b`. Coordinates beyond 2^31 in
// magnitude fail with `InvalidArgument`.
//
// # Safety
// `f` must be a live handle; both out-pointers must be valid for i64
// writes.
QmStatus qm_canonical_rep(const struct QmField *f,
                          int64_t a,
                          int64_t b,
                          int64_t *out_a,
                          int64_t *out_b);

// Run the moat search for every squared step bound up to `k_sq_max`,
// growing the truncation from `initial_boundary` to at most
// `max_boundary` (pass 0 for either to take the defaults). On success
// `*out` owns the result; release it with [`qm_moats_free`]. A search
// that hit the ceiling still succeeds: check [`qm_moats_complete`].
//
// # Safety
// `out` must be a valid pointer to writable memory for one pointer.
QmStatus qm_moats_find(int64_t d,
                       uint64_t k_sq_max,
                       int64_t initial_boundary,
                       int64_t max_boundary,
                       struct QmMoats **out);

// Release a handle from [`qm_moats_find`]. Null is ignored.
//
// # Safety
// `m` must be null or an unfreed pointer returned by `qm_moats_find`.
void qm_moats_free(struct QmMoats *m);

// Number of moat rows in the result; 0 for null.
//
// # Safety
// `m` must be null or a live handle from `qm_moats_find`.
uintptr_t qm_moats_len(const struct QmMoats *m);

// Whether every requested row was validated against truncation; false
// for null.
//
// # Safety
// `m` must be null or a live handle from `qm_moats_find`.
bool qm_moats_complete(const struct QmMoats *m);

// Final truncation bound the search settled on; 0 for null.
//
// # Safety
// `m` must be null or a live handle from `qm_moats_find`.
int64_t qm_moats_boundary(const struct QmMoats *m);

// Copy row `index` into `*out`; `InvalidArgument` when out of range.
//
// # Safety
// `m` must be a live handle from `qm_moats_find`; `out` must be valid
// for one record write.
QmStatus qm_moats_record(const struct QmMoats *m, uintptr_t index, struct QmMoatRecord *out);

// Count ring primes to `radius` and compare with the asymptotic density,
// writing the report to `*out`.
//
// # Safety
// `out` must be a valid pointer to writable memory for one report.
QmStatus qm_density(int64_t d, double radius, struct QmDensityReport *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QUADMOAT_H */
