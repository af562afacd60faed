//! Arithmetic in the rings of integers of the nine imaginary quadratic
//! fields Q(sqrt(d)) with class number one.
//!
//! Elements are written a + b*tau over the integral basis {1, tau}, where
//! tau = sqrt(d) for d = -1, -2 and tau = (-1 + sqrt(d))/2 for the seven
//! d = 1 (mod 4) fields. All arithmetic is exact; intermediates go through
//! i128 so any |a|, |b| <= 2^31 is safe.

use crate::Error;
use std::fmt;

/// The nine values of d for which the ring of integers of Q(sqrt(d)) has
/// unique factorization.
pub const UFD_D: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

/// Which integral basis the ring uses.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Basis {
    /// tau = sqrt(d); norm(a + b*tau) = a^2 - d*b^2. Only d = -1, -2.
    SqrtD,
    /// tau = (-1 + sqrt(d))/2; norm(a + b*tau) = a^2 - a*b + (1-d)/4 * b^2.
    HalfInteger,
}

/// Coordinates of a ring element over the integral basis: a + b*tau.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub a: i64,
    pub b: i64,
}

impl RingElement {
    pub const fn new(a: i64, b: i64) -> Self {
        RingElement { a, b }
    }

    pub const ZERO: RingElement = RingElement::new(0, 0);
    pub const ONE: RingElement = RingElement::new(1, 0);
}

impl From<(i64, i64)> for RingElement {
    fn from((a, b): (i64, i64)) -> Self {
        RingElement { a, b }
    }
}

const UNITS_GENERIC: [RingElement; 2] = [RingElement::new(1, 0), RingElement::new(-1, 0)];
// +-1, +-i
const UNITS_GAUSSIAN: [RingElement; 4] = [
    RingElement::new(1, 0),
    RingElement::new(-1, 0),
    RingElement::new(0, 1),
    RingElement::new(0, -1),
];
// +-1, +-w, +-w^2 with w^2 = -1 - w
const UNITS_EISENSTEIN: [RingElement; 6] = [
    RingElement::new(1, 0),
    RingElement::new(-1, 0),
    RingElement::new(0, 1),
    RingElement::new(0, -1),
    RingElement::new(1, 1),
    RingElement::new(-1, -1),
];

/// One of the nine class-number-one imaginary quadratic fields.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct QuadField {
    d: i64,
    basis: Basis,
    /// Field discriminant: d when d = 1 (mod 4), else 4d.
    delta: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self, Error> {
        if !UFD_D.contains(&d) {
            return Err(Error::UnsupportedField(d));
        }
        // d is negative; d mod 4 == 1 in the mathematical sense means
        // d.rem_euclid(4) == 1.
        let (basis, delta) = if d.rem_euclid(4) == 1 {
            (Basis::HalfInteger, d)
        } else {
            (Basis::SqrtD, 4 * d)
        };
        Ok(QuadField { d, basis, delta })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn abs_d(&self) -> i64 {
        -self.d
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn discriminant(&self) -> i64 {
        self.delta
    }

    /// (1 - d)/4, the constant term of the minimal polynomial of tau for
    /// half-integer fields (tau^2 + tau + (1-d)/4 = 0).
    pub(crate) fn half_q(&self) -> i64 {
        debug_assert_eq!(self.basis, Basis::HalfInteger);
        (1 - self.d) / 4
    }

    /// The unit group, +-1 except for the Gaussian and Eisenstein cases.
    pub fn units(&self) -> &'static [RingElement] {
        match self.d {
            -1 => &UNITS_GAUSSIAN,
            -3 => &UNITS_EISENSTEIN,
            _ => &UNITS_GENERIC,
        }
    }

    /// N(a + b*tau), always a non-negative integer.
    pub fn norm(&self, e: RingElement) -> i128 {
        let a = e.a as i128;
        let b = e.b as i128;
        match self.basis {
            Basis::SqrtD => a * a - (self.d as i128) * b * b,
            Basis::HalfInteger => a * a - a * b + (self.half_q() as i128) * b * b,
        }
    }

    /// Complex conjugation, which fixes the ring.
    pub fn conjugate(&self, e: RingElement) -> RingElement {
        match self.basis {
            Basis::SqrtD => RingElement::new(e.a, -e.b),
            // conj(tau) = -1 - tau
            Basis::HalfInteger => RingElement::new(e.a - e.b, -e.b),
        }
    }

    pub fn add(&self, x: RingElement, y: RingElement) -> RingElement {
        RingElement::new(x.a + y.a, x.b + y.b)
    }

    pub fn sub(&self, x: RingElement, y: RingElement) -> RingElement {
        RingElement::new(x.a - y.a, x.b - y.b)
    }

    /// Ring product. Used by the unit action and by tests; inputs are
    /// expected to stay well inside i64.
    pub fn mul(&self, x: RingElement, y: RingElement) -> RingElement {
        let (a1, b1) = (x.a as i128, x.b as i128);
        let (a2, b2) = (y.a as i128, y.b as i128);
        let (a, b) = match self.basis {
            // (a1 + b1 s)(a2 + b2 s) with s^2 = d
            Basis::SqrtD => (a1 * a2 + (self.d as i128) * b1 * b2, a1 * b2 + a2 * b1),
            // tau^2 = (d-1)/4 - tau
            Basis::HalfInteger => {
                let t = ((self.d - 1) / 4) as i128;
                (a1 * a2 + t * b1 * b2, a1 * b2 + a2 * b1 - b1 * b2)
            }
        };
        RingElement::new(
            i64::try_from(a).expect("product coordinate overflows i64"),
            i64::try_from(b).expect("product coordinate overflows i64"),
        )
    }

    /// Display symbol for tau.
    pub fn tau_symbol(&self) -> &'static str {
        match self.d {
            -1 => "i",
            -2 => "sqrt(-2)",
            -3 => "w",
            _ => "t",
        }
    }

    /// Human-readable form, e.g. "11+4i", "3-2w", "1+sqrt(-2)", "7".
    pub fn format_element(&self, e: RingElement) -> String {
        let sym = self.tau_symbol();
        if e.b == 0 {
            return format!("{}", e.a);
        }
        let sign = if e.b < 0 { "-" } else { "+" };
        let mag = e.b.unsigned_abs();
        let tau_part = if mag == 1 {
            sym.to_string()
        } else if self.d == -2 {
            format!("{mag}*{sym}")
        } else {
            format!("{mag}{sym}")
        };
        if e.a == 0 {
            if e.b < 0 {
                format!("-{tau_part}")
            } else {
                tau_part
            }
        } else {
            format!("{}{}{}", e.a, sign, tau_part)
        }
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.d)
    }
}
