//! Group parameters: the prime power modulus and derived constants.
//!
//! Every operation in this crate is relative to a `GroupParams`, which fixes
//! the ring Z/p^n and therefore the Heisenberg group H(p^n) of upper
//! unitriangular 3x3 matrices over that ring.  Elements are stored as
//! coordinate triples, so the group order is p^(3n).

use crate::element::Element;
use crate::error::{Error, Result};
use serde::Serialize;

/// Largest supported modulus p^n.  Component arithmetic stays inside u64
/// (with 128-bit intermediates) for any modulus up to this bound.
pub const MAX_MODULUS: u64 = 1 << 20;

/// A residue written as `r * p^k` with `p` not dividing `r`.
///
/// The zero residue gets the conventional factorization `r = 0`, `k = n`,
/// which makes the valuation `k` total and monotone: `k(x) >= k(y)` exactly
/// when `y` divides `x` in Z/p^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactoredComponent {
    /// Unit part, coprime to p (zero for the zero residue).
    pub r: u64,
    /// Exponent of p; the p-adic valuation truncated at n.
    pub k: u32,
}

/// Fixed parameters of one Heisenberg group H(p^n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupParams {
    p: u32,
    n: u32,
    modulus: u64,
    order: u64,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl GroupParams {
    /// Validates `p` prime, `n >= 1` and `p^n <= 2^20`.
    pub fn new(p: u32, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if n < 1 {
            return Err(Error::BadExponent(n));
        }
        let mut modulus: u64 = 1;
        for _ in 0..n {
            modulus = modulus.saturating_mul(p as u64);
            if modulus > MAX_MODULUS {
                return Err(Error::Overflow { p, n });
            }
        }
        Ok(GroupParams {
            p,
            n,
            modulus,
            order: modulus * modulus * modulus,
        })
    }

    /// The one-element group that serves as quotient codomain when n = 1.
    /// Not constructible through [`GroupParams::new`]; only quotient plumbing
    /// should ever need it.
    pub(crate) fn degenerate(p: u32) -> Self {
        GroupParams {
            p,
            n: 0,
            modulus: 1,
            order: 1,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The ring modulus p^n.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The group order p^(3n).
    pub fn order(&self) -> u64 {
        self.order
    }

    /// p^k for 0 <= k <= n, exact.
    pub fn p_pow(&self, k: u32) -> u64 {
        debug_assert!(k <= self.n);
        (self.p as u64).pow(k)
    }

    /// Reduces `p^k` into the ring: zero whenever `k >= n`.
    pub fn p_pow_mod(&self, k: u32) -> u64 {
        if k >= self.n {
            0
        } else {
            (self.p as u64).pow(k) % self.modulus
        }
    }

    /// Canonical residue in [0, p^n) of a possibly negative value.
    pub fn reduce(&self, v: i128) -> u64 {
        let m = self.modulus as i128;
        (((v % m) + m) % m) as u64
    }

    /// Dense index of an element: `c1 * p^2n + c2 * p^n + c3`.
    /// Bijective onto [0, p^3n).
    pub fn index_of(&self, a: Element) -> u64 {
        debug_assert!(a.c1 < self.modulus && a.c2 < self.modulus && a.c3 < self.modulus);
        (a.c1 * self.modulus + a.c2) * self.modulus + a.c3
    }

    /// Inverse of [`GroupParams::index_of`].
    pub fn element_at(&self, idx: u64) -> Element {
        debug_assert!(idx < self.order);
        let c3 = idx % self.modulus;
        let rest = idx / self.modulus;
        Element {
            c1: rest / self.modulus,
            c2: rest % self.modulus,
            c3,
        }
    }

    /// All group elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// Writes `x = r * p^k` with `p` not dividing `r`; `x = 0` maps to
    /// `(r, k) = (0, n)`.
    pub fn factor_component(&self, x: u64) -> FactoredComponent {
        debug_assert!(x < self.modulus);
        if x == 0 {
            return FactoredComponent { r: 0, k: self.n };
        }
        let p = self.p as u64;
        let mut r = x;
        let mut k = 0u32;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        FactoredComponent { r, k }
    }

    /// Truncated p-adic valuation of a residue: `factor_component(x).k`.
    pub fn valuation(&self, x: u64) -> u32 {
        self.factor_component(x).k
    }

    /// Multiplicative inverse of a unit residue.  Panics if `x` is not a
    /// unit; callers must factor first.
    pub fn unit_inverse(&self, x: u64) -> u64 {
        debug_assert!(
            !x.is_multiple_of(self.p as u64),
            "unit_inverse of non-unit {x}"
        );
        // Extended Euclid over i128; modulus fits comfortably.
        let (mut r0, mut r1) = (self.modulus as i128, (x % self.modulus) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        self.reduce(s0)
    }
}
