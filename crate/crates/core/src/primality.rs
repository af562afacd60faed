//! Rational and ring primality.
//!
//! Ring primality in a class-number-one ring reduces to rational primality
//! of the norm: an element is prime iff its norm is a rational prime, or the
//! square of an inert rational prime of which it is an associate. Inertness
//! of an odd p not dividing the discriminant is a pure residue condition,
//! precomputed per field.

use crate::field::{Basis, QuadField, RingElement};

/// Bit-packed odd-only sieve of Eratosthenes.
pub struct Sieve {
    limit: u64,
    /// bit i set => 2i+1 is composite (bit 0 unused: 1 handled explicitly)
    composite: Vec<u64>,
}

impl Sieve {
    /// Cap on automatic sieve sizing: costs ~70 MB and a few seconds to
    /// build, and covers every norm for moat boundaries up to ~23000.
    /// Beyond it Miller-Rabin takes over per query.
    pub const DEFAULT_LIMIT: u64 = 1 << 30;

    pub fn new(limit: u64) -> Self {
        let n_odd = (limit / 2 + 1) as usize;
        let mut composite = vec![0u64; n_odd / 64 + 1];
        let mut i: u64 = 3;
        while i * i <= limit {
            if composite[(i / 2) as usize / 64] & (1 << ((i / 2) % 64)) == 0 {
                let mut j = i * i;
                while j <= limit {
                    composite[(j / 2) as usize / 64] |= 1 << ((j / 2) % 64);
                    j += 2 * i;
                }
            }
            i += 2;
        }
        Sieve { limit, composite }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Only valid for n <= limit.
    pub fn is_prime(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit);
        if n < 2 {
            return false;
        }
        if n.is_multiple_of(2) {
            return n == 2;
        }
        let i = n / 2;
        self.composite[i as usize / 64] & (1 << (i % 64)) == 0
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for all u64 inputs with this witness set.
pub fn miller_rabin(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let r = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn isqrt_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    // float sqrt can be off by one in either direction near perfect squares
    while x > 0 && x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

enum OddInertRule {
    /// d = -1: p = 3 (mod 4)
    Mod4Is3,
    /// d = -2: p = 5 or 7 (mod 8)
    Mod8Is5Or7,
    /// d = 1 (mod 4): p mod |d| is a quadratic non-residue mod the prime |d|
    NonResidue(Vec<bool>),
}

/// Per-field primality engine: a sieve, the MR fallback, and the inert
/// residue tables.
pub struct PrimeContext {
    field: QuadField,
    sieve: Sieve,
    two_inert: bool,
    odd_rule: OddInertRule,
}

impl PrimeContext {
    pub fn new(field: QuadField) -> Self {
        Self::with_sieve_limit(field, Sieve::DEFAULT_LIMIT)
    }

    pub fn with_sieve_limit(field: QuadField, sieve_limit: u64) -> Self {
        let odd_rule = match field.d() {
            -1 => OddInertRule::Mod4Is3,
            -2 => OddInertRule::Mod8Is5Or7,
            _ => {
                let m = field.abs_d() as usize;
                let mut residue = vec![false; m];
                for r in 1..m as u64 {
                    residue[(r * r % m as u64) as usize] = true;
                }
                let non = (1..m).map(|r| !residue[r]).collect::<Vec<_>>();
                let mut table = vec![false; m];
                table[0] = false; // p | d is the ramified case, never inert
                for (r, &is_non) in non.iter().enumerate() {
                    table[r + 1] = is_non;
                }
                OddInertRule::NonResidue(table)
            }
        };
        // 2 is inert exactly when the discriminant is odd and d = 5 (mod 8)
        let two_inert = field.discriminant() % 2 != 0 && field.d().rem_euclid(8) == 5;
        PrimeContext {
            field,
            sieve: Sieve::new(sieve_limit),
            two_inert,
            odd_rule,
        }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn sieve(&self) -> &Sieve {
        &self.sieve
    }

    /// Rational primality: sieve below its limit, Miller-Rabin above.
    pub fn is_rational_prime(&self, n: u64) -> bool {
        if n <= self.sieve.limit() {
            self.sieve.is_prime(n)
        } else {
            miller_rabin(n)
        }
    }

    /// Whether the rational prime p stays prime in the ring.
    /// The argument must be a rational prime.
    pub fn is_inert(&self, p: u64) -> bool {
        debug_assert!(self.is_rational_prime(p), "is_inert wants a prime, got {p}");
        if p == 2 {
            return self.two_inert;
        }
        if self.field.discriminant().unsigned_abs().is_multiple_of(p) {
            return false; // ramified
        }
        match &self.odd_rule {
            OddInertRule::Mod4Is3 => p % 4 == 3,
            OddInertRule::Mod8Is5Or7 => matches!(p % 8, 5 | 7),
            OddInertRule::NonResidue(table) => table[(p % table.len() as u64) as usize],
        }
    }

    /// Ring primality of a + b*tau. Zero and units are not prime.
    pub fn is_ring_prime(&self, e: RingElement) -> bool {
        let n = self.field.norm(e);
        if n <= 1 {
            return false;
        }
        let n = u64::try_from(n).expect("norm exceeds u64 range");
        if self.is_rational_prime(n) {
            return true;
        }
        let q = isqrt_u64(n);
        if q * q != n || !self.is_rational_prime(q) || !self.is_inert(q) {
            return false;
        }
        // e must be an associate of the rational prime q
        let q = q as i64;
        self.field
            .units()
            .iter()
            .any(|u| e.a == u.a * q && e.b == u.b * q)
    }
}

/// All ring elements with 0 < norm <= bound, in no particular order.
/// Exhaustive by construction: the norm form bounds |b| first, then a.
pub fn elements_with_norm_up_to(field: QuadField, bound: u64) -> Vec<RingElement> {
    let mut out = Vec::new();
    let abs_d = field.abs_d();
    match field.basis() {
        Basis::SqrtD => {
            // a^2 + |d| b^2 <= bound
            let bmax = isqrt_u64(bound / abs_d as u64) as i64;
            for b in -bmax..=bmax {
                let rest = bound - (abs_d as u64) * (b * b) as u64;
                let amax = isqrt_u64(rest) as i64;
                for a in -amax..=amax {
                    if (a, b) != (0, 0) {
                        out.push(RingElement::new(a, b));
                    }
                }
            }
        }
        Basis::HalfInteger => {
            // 4*norm = (2a - b)^2 + |d| b^2
            let bmax = isqrt_u64(4 * bound / abs_d as u64) as i64;
            for b in -bmax..=bmax {
                let rest = 4 * bound - (abs_d as u64) * (b * b) as u64;
                let smax = isqrt_u64(rest) as i64; // |2a - b| <= smax
                let alo = (b - smax).div_euclid(2);
                let ahi = (b + smax).div_euclid(2);
                for a in alo..=ahi {
                    let e = RingElement::new(a, b);
                    let n = field.norm(e);
                    if n > 0 && n <= bound as i128 {
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::UFD_D;

    fn ctx(d: i64) -> PrimeContext {
        PrimeContext::with_sieve_limit(QuadField::new(d).unwrap(), 1 << 16)
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let s = Sieve::new(10_000);
        let trial = |n: u64| n >= 2 && (2..=isqrt_u64(n)).all(|k| !n.is_multiple_of(k));
        for n in 0..=10_000 {
            assert_eq!(s.is_prime(n), trial(n), "n={n}");
        }
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let s = Sieve::new(100_000);
        for n in 0..=100_000 {
            assert_eq!(miller_rabin(n), s.is_prime(n), "n={n}");
        }
    }

    #[test]
    fn miller_rabin_large_values() {
        assert!(miller_rabin((1 << 61) - 1)); // Mersenne prime
        assert!(!miller_rabin(1_000_000_000_001)); // 73 * 137 * 99990001
        assert!(miller_rabin(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!miller_rabin(u64::MAX));
        // Carmichael numbers
        assert!(!miller_rabin(561));
        assert!(!miller_rabin(41041));
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..2000u64 {
            let r = isqrt_u64(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n={n} r={r}");
        }
        assert_eq!(isqrt_u64(u64::MAX), (1 << 32) - 1);
        assert_eq!(isqrt_u64((1 << 31) * (1 << 31)), 1 << 31);
    }

    #[test]
    fn inert_examples() {
        let g = ctx(-1);
        for p in [3u64, 7, 11, 19, 23] {
            assert!(g.is_inert(p), "p={p}");
        }
        for p in [2u64, 5, 13, 17] {
            assert!(!g.is_inert(p), "p={p}");
        }

        let f2 = ctx(-2);
        for p in [5u64, 7, 13, 23, 29, 31] {
            assert!(f2.is_inert(p), "p={p}");
        }
        for p in [2u64, 3, 11, 17, 19] {
            assert!(!f2.is_inert(p), "p={p}");
        }

        let f3 = ctx(-3);
        assert!(f3.is_inert(2));
        for p in [5u64, 11, 17, 23] {
            assert!(f3.is_inert(p), "p={p}");
        }
        for p in [3u64, 7, 13, 19] {
            assert!(!f3.is_inert(p), "p={p}");
        }

        let f7 = ctx(-7);
        assert!(!f7.is_inert(2)); // 2 splits: norm(t) = 2
        for p in [3u64, 5, 13, 17, 19] {
            assert!(f7.is_inert(p), "p={p}");
        }
        for p in [7u64, 11, 23, 29, 37] {
            assert!(!f7.is_inert(p), "p={p}");
        }

        // 2 is inert in every d = 5 (mod 8) field
        for d in [-3i64, -11, -19, -43, -67, -163] {
            assert!(ctx(d).is_inert(2), "d={d}");
        }
        for d in [-1i64, -2, -7] {
            assert!(!ctx(d).is_inert(2), "d={d}");
        }
    }

    #[test]
    fn inert_matches_euler_criterion() {
        // For odd p not dividing delta: inert iff delta^((p-1)/2) = -1 (mod p)
        let s = Sieve::new(10_000);
        for d in UFD_D {
            let c = ctx(d);
            let delta = c.field.discriminant();
            for p in (3..10_000u64).filter(|&p| s.is_prime(p)) {
                if delta.unsigned_abs().is_multiple_of(p) {
                    assert!(!c.is_inert(p), "ramified p={p} d={d}");
                    continue;
                }
                let sym = powmod((delta as i128).rem_euclid(p as i128) as u64, (p - 1) / 2, p);
                assert_eq!(c.is_inert(p), sym == p - 1, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn ring_prime_examples() {
        let g = ctx(-1);
        assert!(g.is_ring_prime(RingElement::new(1, 1))); // norm 2
        assert!(g.is_ring_prime(RingElement::new(2, 1))); // norm 5
        assert!(g.is_ring_prime(RingElement::new(3, 0))); // inert 3
        assert!(g.is_ring_prime(RingElement::new(0, 3))); // associate 3i
        assert!(!g.is_ring_prime(RingElement::new(2, 0))); // 2 ramifies: 4 = N, 2 not inert
        assert!(!g.is_ring_prime(RingElement::new(1, 0))); // unit
        assert!(!g.is_ring_prime(RingElement::new(0, 0)));
        assert!(!g.is_ring_prime(RingElement::new(3, 3))); // norm 18

        let f2 = ctx(-2);
        assert!(f2.is_ring_prime(RingElement::new(0, 1))); // sqrt(-2), norm 2
        assert!(f2.is_ring_prime(RingElement::new(1, 1))); // norm 3
        assert!(f2.is_ring_prime(RingElement::new(5, 0))); // inert
        assert!(!f2.is_ring_prime(RingElement::new(0, 5))); // norm 50

        let f3 = ctx(-3);
        assert!(f3.is_ring_prime(RingElement::new(2, 1))); // norm 3, ramified prime
        assert!(f3.is_ring_prime(RingElement::new(2, 0))); // 2 inert
        assert!(f3.is_ring_prime(RingElement::new(2, 2))); // 2 * unit (1,1): norm 4
        assert!(!f3.is_ring_prime(RingElement::new(2, 4))); // norm 12

        let f19 = ctx(-19);
        assert!(f19.is_ring_prime(RingElement::new(2, 0))); // 2 inert, the smallest prime
        assert!(f19.is_ring_prime(RingElement::new(1, 1))); // norm 5
    }

    /// Independent irreducibility check: e is reducible iff some proper
    /// divisor-by-norm actually divides it in the ring.
    fn brute_force_irreducible(f: QuadField, e: RingElement) -> bool {
        let n = f.norm(e);
        if n <= 1 {
            return false;
        }
        let n = n as u64;
        let candidates = elements_with_norm_up_to(f, n / 2);
        for x in candidates {
            let m = f.norm(x);
            if m <= 1 || n as i128 % m != 0 {
                continue;
            }
            // x | e iff e * conj(x) has both coordinates divisible by N(x)
            let p = f.mul(e, f.conjugate(x));
            let m = m as i64;
            if p.a % m == 0 && p.b % m == 0 {
                return false;
            }
        }
        true
    }

    #[test]
    fn ring_prime_matches_brute_force_small() {
        for d in UFD_D {
            let c = ctx(d);
            for e in elements_with_norm_up_to(c.field, 600) {
                assert_eq!(
                    c.is_ring_prime(e),
                    brute_force_irreducible(c.field, e),
                    "d={d} e={e:?} norm={}",
                    c.field.norm(e)
                );
            }
        }
    }

    #[test]
    fn enumeration_is_exhaustive() {
        // cross-check elements_with_norm_up_to against a plain box scan
        for d in [-1i64, -3, -7] {
            let f = QuadField::new(d).unwrap();
            let bound = 200u64;
            let mut expect = Vec::new();
            for a in -40..=40i64 {
                for b in -40..=40i64 {
                    let e = RingElement::new(a, b);
                    let n = f.norm(e);
                    if n > 0 && n <= bound as i128 {
                        expect.push(e);
                    }
                }
            }
            let mut got = elements_with_norm_up_to(f, bound);
            expect.sort();
            got.sort();
            assert_eq!(got, expect, "d={d}");
        }
    }
}
