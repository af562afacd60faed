//! Exercises the C ABI from Rust: lifecycle, error codes, and agreement
//! with the underlying library.

use quadmoat_ffi::*;
use std::ptr;

fn field(d: i64) -> *mut QmField {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qm_field_new(d, &mut f) }, QmStatus::Ok);
    assert!(!f.is_null());
    f
}

#[test]
fn field_lifecycle_and_bad_discriminants() {
    let f = field(-163);
    unsafe { qm_field_free(f) };
    unsafe { qm_field_free(ptr::null_mut()) }; // tolerated

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qm_field_new(-5, &mut out) }, QmStatus::UnsupportedField);
    assert!(out.is_null());
    assert_eq!(unsafe { qm_field_new(0, &mut out) }, QmStatus::UnsupportedField);
    assert_eq!(unsafe { qm_field_new(-1, ptr::null_mut()) }, QmStatus::NullArgument);
}

#[test]
fn norm_and_primality_match_the_library() {
    for d in [-1i64, -7, -43] {
        let f = field(d);
        let core = quadmoat::QuadField::new(d).unwrap();
        let ctx = quadmoat::PrimeContext::with_sieve_limit(core, 1 << 16);
        for a in -12..=12 {
            for b in -12..=12 {
                let e = quadmoat::RingElement::new(a, b);
                let mut n = 0u64;
                assert_eq!(unsafe { qm_norm(f, a, b, &mut n) }, QmStatus::Ok);
                assert_eq!(n as i128, core.norm(e));
                let mut p = false;
                assert_eq!(unsafe { qm_is_ring_prime(f, a, b, &mut p) }, QmStatus::Ok);
                assert_eq!(p, ctx.is_ring_prime(e), "d={d} {e:?}");
            }
        }
        unsafe { qm_field_free(f) };
    }
}

#[test]
fn norm_overflow_is_rejected() {
    let f = field(-163);
    let mut n = 0u64;
    assert_eq!(
        unsafe { qm_norm(f, i64::MAX, i64::MAX, &mut n) },
        QmStatus::InvalidArgument
    );
    unsafe { qm_field_free(f) };
}

#[test]
fn canonical_rep_round_trips() {
    let f = field(-3);
    let core = quadmoat::QuadField::new(-3).unwrap();
    let (mut a, mut b) = (0i64, 0i64);
    assert_eq!(unsafe { qm_canonical_rep(f, -5, -2, &mut a, &mut b) }, QmStatus::Ok);
    let expect = quadmoat::canonical_rep(core, quadmoat::RingElement::new(-5, -2));
    assert_eq!((a, b), (expect.a, expect.b));
    // canonical output is a fixed point
    let (mut a2, mut b2) = (0i64, 0i64);
    assert_eq!(unsafe { qm_canonical_rep(f, a, b, &mut a2, &mut b2) }, QmStatus::Ok);
    assert_eq!((a2, b2), (a, b));
    unsafe { qm_field_free(f) };
}

#[test]
fn moat_search_matches_the_library() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qm_moats_find(-1, 2, 0, 0, &mut m) }, QmStatus::Ok);
    assert!(unsafe { qm_moats_complete(m) });
    assert_eq!(unsafe { qm_moats_boundary(m) }, 64);
    assert_eq!(unsafe { qm_moats_len(m) }, 2);

    let mut r = QmMoatRecord {
        k_squared: 0,
        farthest_a: 0,
        farthest_b: 0,
        farthest_norm: 0,
        distinct_primes: 0,
        validated: false,
    };
    assert_eq!(unsafe { qm_moats_record(m, 0, &mut r) }, QmStatus::Ok);
    assert_eq!((r.k_squared, r.farthest_a, r.farthest_b, r.farthest_norm), (1, 2, 1, 5));
    assert!(r.validated);
    assert_eq!(unsafe { qm_moats_record(m, 1, &mut r) }, QmStatus::Ok);
    assert_eq!((r.k_squared, r.farthest_a, r.farthest_b, r.farthest_norm), (2, 11, 4, 137));

    let search = quadmoat::find_moats_up_to(
        quadmoat::QuadField::new(-1).unwrap(),
        quadmoat::KBound::ExactSqrt(2),
        quadmoat::SearchConfig::default(),
    )
    .unwrap();
    assert_eq!(search.records.len(), 2);
    assert_eq!(search.records[1].farthest, quadmoat::RingElement::new(11, 4));

    assert_eq!(unsafe { qm_moats_record(m, 2, &mut r) }, QmStatus::InvalidArgument);
    assert_eq!(
        unsafe { qm_moats_record(m, 0, ptr::null_mut()) },
        QmStatus::NullArgument
    );
    unsafe { qm_moats_free(m) };
    unsafe { qm_moats_free(ptr::null_mut()) };
}

#[test]
fn capped_search_reports_incompleteness() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { qm_moats_find(-1, 16, 0, 32, &mut m) }, QmStatus::Ok);
    assert!(!unsafe { qm_moats_complete(m) });
    assert_eq!(unsafe { qm_moats_boundary(m) }, 32);
    assert!(unsafe { qm_moats_len(m) } >= 1);
    unsafe { qm_moats_free(m) };

    assert_eq!(unsafe { qm_moats_find(-4, 2, 0, 0, &mut m) }, QmStatus::UnsupportedField);
    assert_eq!(unsafe { qm_moats_find(-1, 2, -3, 0, &mut m) }, QmStatus::InvalidArgument);
    assert_eq!(
        unsafe { qm_moats_find(-1, 2, 0, 0, ptr::null_mut()) },
        QmStatus::NullArgument
    );
}

#[test]
fn density_report_matches_the_library() {
    let mut rep = QmDensityReport {
        radius: 0.0,
        primes: 0,
        degree_one: 0,
        inert: 0,
        empirical_density: 0.0,
        asymptotic_density: 0.0,
        relative_error: 0.0,
        normalized: 0.0,
    };
    assert_eq!(unsafe { qm_density(-2, 100.0, &mut rep) }, QmStatus::Ok);
    let core = quadmoat::density_report(quadmoat::QuadField::new(-2).unwrap(), 100.0).unwrap();
    assert_eq!(rep.primes, core.counts.total);
    assert_eq!(rep.degree_one, core.counts.degree_one);
    assert_eq!(rep.inert, core.counts.inert);
    assert_eq!(rep.empirical_density, core.empirical_density);
    assert_eq!(rep.normalized, core.normalized());

    assert_eq!(unsafe { qm_density(7, 100.0, &mut rep) }, QmStatus::UnsupportedField);
    assert_eq!(unsafe { qm_density(-2, -1.0, &mut rep) }, QmStatus::InvalidArgument);
    assert_eq!(unsafe { qm_density(-2, 100.0, ptr::null_mut()) }, QmStatus::NullArgument);
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/quadmoat.h"),
    )
    .expect("build script wrote include/quadmoat.h");
    assert!(header.contains("#ifndef QUADMOAT_H"));
    for symbol in [
        "qm_field_new",
        "qm_field_free",
        "qm_norm",
        "qm_is_ring_prime",
        "qm_canonical_rep",
        "qm_moats_find",
        "qm_moats_free",
        "qm_moats_len",
        "qm_moats_complete",
        "qm_moats_boundary",
        "qm_moats_record",
        "qm_density",
    ] {
        assert!(header.contains(symbol), "header is missing {symbol}");
    }
    assert!(header.contains("QM_STATUS_OK = 0"));
    assert!(header.contains("typedef struct QmField QmField;"), "opaque handle decl");
}
