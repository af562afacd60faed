//! Exact orientation and in-circumcircle tests on scaled coordinates.
//!
//! Both predicates are integer determinant signs, so they never misclassify.
//! The circumcircle test carries the metric weight |d| on the v axis: points
//! (u/2, (v/2)sqrt(|d|)) are lifted by u^2 + |d| v^2 (the scale factors
//! cancel in the sign). Inputs within +-2^28 stay in i128; anything larger
//! falls back to arbitrary precision.

use num_bigint::BigInt;

use crate::field::QuadField;
use crate::sector::ScaledPoint;

const FAST_LIMIT: i64 = 1 << 28;

/// Sign of the cross product (b - a) x (c - a): +1 if a,b,c wind
/// counterclockwise, -1 clockwise, 0 collinear. Independent of |d|.
pub fn orient(a: ScaledPoint, b: ScaledPoint, c: ScaledPoint) -> i32 {
    let det = (b.u - a.u) as i128 * (c.v - a.v) as i128
        - (b.v - a.v) as i128 * (c.u - a.u) as i128;
    sign_i128(det)
}

/// Is p strictly inside the circumcircle of the counterclockwise triangle
/// (a, b, c)? Returns +1 inside, -1 outside, 0 exactly on the circle.
pub fn in_circumcircle(
    field: QuadField,
    a: ScaledPoint,
    b: ScaledPoint,
    c: ScaledPoint,
    p: ScaledPoint,
) -> i32 {
    debug_assert!(orient(a, b, c) > 0, "triangle must be counterclockwise");
    let small = [a, b, c, p].iter().all(|q| {
        q.u.abs() <= FAST_LIMIT && q.v.abs() <= FAST_LIMIT
    });
    if small {
        incircle_i128(field.abs_d() as i128, a, b, c, p)
    } else {
        incircle_big(field.abs_d(), a, b, c, p)
    }
}

fn sign_i128(x: i128) -> i32 {
    match x.cmp(&0) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

// Determinant of rows [du_i, dv_i, du_i^2 + D dv_i^2] for i in {a,b,c},
// differences taken against p. With |coords| <= 2^28 each term is below
// 2^(28*4 + 8) = 2^120, and three terms stay clear of i128 overflow.
fn incircle_i128(dd: i128, a: ScaledPoint, b: ScaledPoint, c: ScaledPoint, p: ScaledPoint) -> i32 {
    let (au, av) = ((a.u - p.u) as i128, (a.v - p.v) as i128);
    let (bu, bv) = ((b.u - p.u) as i128, (b.v - p.v) as i128);
    let (cu, cv) = ((c.u - p.u) as i128, (c.v - p.v) as i128);
    let aw = au * au + dd * av * av;
    let bw = bu * bu + dd * bv * bv;
    let cw = cu * cu + dd * cv * cv;
    let det = au * (bv * cw - bw * cv) - av * (bu * cw - bw * cu) + aw * (bu * cv - bv * cu);
    sign_i128(det)
}

fn incircle_big(dd: i64, a: ScaledPoint, b: ScaledPoint, c: ScaledPoint, p: ScaledPoint) -> i32 {
    let dd = BigInt::from(dd);
    let row = |q: ScaledPoint| {
        let du = BigInt::from(q.u) - BigInt::from(p.u);
        let dv = BigInt::from(q.v) - BigInt::from(p.v);
        let w = &du * &du + &dd * &dv * &dv;
        (du, dv, w)
    };
    let (au, av, aw) = row(a);
    let (bu, bv, bw) = row(b);
    let (cu, cv, cw) = row(c);
    let det = &au * (&bv * &cw - &bw * &cv) - &av * (&bu * &cw - &bw * &cu)
        + &aw * (&bu * &cv - &bv * &cu);
    match det.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Circumcircle test that never answers "on the circle": exact ties are
/// broken by a symbolic perturbation in which the point with the lower
/// global index is pushed infinitesimally outward. Points enter by index
/// into `points`; (ia, ib, ic) must be counterclockwise. Returns true if
/// `id` is inside the (perturbed) circumcircle.
///
/// The perturbation lifts point i by eps_i on the paraboloid, with
/// eps monotonically decreasing in global index, so the first index (in
/// ascending order) whose lifted-matrix cofactor is nonzero decides. The
/// cofactors are plain orientation tests of the remaining three points.
pub(crate) fn in_circle_tiebreak(
    field: QuadField,
    points: &[ScaledPoint],
    ia: u32,
    ib: u32,
    ic: u32,
    id: u32,
) -> bool {
    let (a, b, c, p) = (
        points[ia as usize],
        points[ib as usize],
        points[ic as usize],
        points[id as usize],
    );
    let s = in_circumcircle(field, a, b, c, p);
    if s != 0 {
        return s > 0;
    }
    let mut order = [(ia, 0u8), (ib, 1), (ic, 2), (id, 3)];
    order.sort_unstable_by_key(|&(i, _)| i);
    for (_, role) in order {
        let cof = match role {
            0 => orient(b, c, p),
            1 => -orient(a, c, p),
            2 => orient(a, b, p),
            _ => -orient(a, b, c),
        };
        if cof != 0 {
            return cof > 0;
        }
    }
    unreachable!("cocircular quadruple with all faces collinear");
}
