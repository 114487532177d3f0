//! Elements of H(p^n) and the exact group operations on them.
//!
//! An element is the coordinate triple (c1, c2, c3) of the unitriangular
//! matrix with c1 and c3 on the superdiagonal and c2 in the corner.  All
//! operations reduce into canonical residues [0, p^n) immediately; there is
//! no lazy form.  Closed formulas are used throughout:
//!
//! * product:     (a1+b1, a2+b2+a1*b3, a3+b3)
//! * inverse:     (-a1, a1*a3-a2, -a3)
//! * m-th power:  (m*a1, m*a2 + binom(m,2)*a1*a3, m*a3)
//! * commutator:  (0, a1*b3 - a3*b1, 0)
//!
//! Intermediates go through i128, which cannot overflow for any modulus
//! admitted by [`GroupParams::new`].

use crate::error::{Error, Result};
use crate::params::GroupParams;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// One group element, stored as canonical residues modulo p^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Element {
    pub c1: u64,
    pub c2: u64,
    pub c3: u64,
}

impl Element {
    pub const IDENTITY: Element = Element {
        c1: 0,
        c2: 0,
        c3: 0,
    };

    pub fn new(c1: u64, c2: u64, c3: u64) -> Self {
        Element { c1, c2, c3 }
    }
}

/// Elements render as a bare coordinate triple, the same shape the CLI and
/// the JSON reports use.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.c1, self.c2, self.c3)
    }
}

impl FromStr for Element {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!(
                "expected three comma-separated coordinates, got {s:?}"
            ));
        }
        let coord = |t: &str| {
            t.parse::<u64>()
                .map_err(|e| format!("bad coordinate {t:?}: {e}"))
        };
        Ok(Element {
            c1: coord(parts[0])?,
            c2: coord(parts[1])?,
            c3: coord(parts[2])?,
        })
    }
}

impl GroupParams {
    /// Canonicalizes a triple given in arbitrary residues.
    pub fn element(&self, c1: u64, c2: u64, c3: u64) -> Element {
        let m = self.modulus();
        Element {
            c1: c1 % m,
            c2: c2 % m,
            c3: c3 % m,
        }
    }

    /// Checks that an element is already in canonical form for this group.
    pub fn check_element(&self, a: Element) -> Result<Element> {
        let m = self.modulus();
        if a.c1 < m && a.c2 < m && a.c3 < m {
            Ok(a)
        } else {
            Err(Error::CoordinateOutOfRange {
                value: a.c1.max(a.c2).max(a.c3),
                bound: m,
            })
        }
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    /// Group product.
    pub fn mul(&self, a: Element, b: Element) -> Element {
        let m = self.modulus();
        let c1 = a.c1 + b.c1;
        let c3 = a.c3 + b.c3;
        Element {
            c1: if c1 >= m { c1 - m } else { c1 },
            // a1*b3 < 2^40 for the largest admissible modulus, so u64 holds.
            c2: (a.c2 + b.c2 + a.c1 * b.c3 % m) % m,
            c3: if c3 >= m { c3 - m } else { c3 },
        }
    }

    /// Group inverse.
    pub fn inv(&self, a: Element) -> Element {
        let m = self.modulus() as i128;
        let (a1, a2, a3) = (a.c1 as i128, a.c2 as i128, a.c3 as i128);
        Element {
            c1: self.reduce(-a1),
            c2: self.reduce(a1 * a3 % m - a2),
            c3: self.reduce(-a3),
        }
    }

    /// `a^m` for any integer exponent, via the closed power formula.  The
    /// binomial coefficient only matters modulo p^n, which is determined by
    /// the exponent modulo 2*p^n, so arbitrary i64 exponents are exact.
    pub fn pow(&self, a: Element, m: i64) -> Element {
        if m < 0 {
            // (a^-1)^(-m); -m never overflows because i64::MIN maps into i128.
            return self.pow_u(self.inv(a), (-(m as i128)) as u64);
        }
        self.pow_u(a, m as u64)
    }

    fn pow_u(&self, a: Element, m: u64) -> Element {
        let md = self.modulus();
        let mm = (m % (2 * md)) as u128; // enough to pin binom(m,2) mod p^n
        let binom = mm * mm.wrapping_sub(1) / 2 % md as u128;
        let mr = m % md;
        Element {
            c1: mr * a.c1 % md,
            c2: ((mr as u128 * a.c2 as u128 + binom * (a.c1 * a.c3 % md) as u128) % md as u128)
                as u64,
            c3: mr * a.c3 % md,
        }
    }

    /// Commutator `a^-1 b^-1 a b`, always central: `(0, a1*b3 - a3*b1, 0)`.
    pub fn commutator(&self, a: Element, b: Element) -> Element {
        let m = self.modulus() as i128;
        let slot2 = (a.c1 as i128) * (b.c3 as i128) % m - (a.c3 as i128) * (b.c1 as i128) % m;
        Element {
            c1: 0,
            c2: self.reduce(slot2),
            c3: 0,
        }
    }

    /// Middle coordinate of the commutator, the only one that can be nonzero.
    pub fn commutator_slot2(&self, a: Element, b: Element) -> u64 {
        self.commutator(a, b).c2
    }

    /// `z^-1 a z`.
    pub fn conjugate(&self, a: Element, z: Element) -> Element {
        self.mul(self.mul(self.inv(z), a), z)
    }

    /// Central elements are exactly those with both outer coordinates zero.
    pub fn is_central(&self, a: Element) -> bool {
        a.c1 == 0 && a.c3 == 0
    }

    /// Congruence modulo the center: equality of the outer coordinates.
    pub fn equiv_mod_center(&self, x: Element, y: Element) -> bool {
        x.c1 == y.c1 && x.c3 == y.c3
    }

    /// An element is non-degenerate when p divides neither outer coordinate,
    /// i.e. at least one of c1, c3 is a unit.
    pub fn is_nondegenerate(&self, a: Element) -> bool {
        let p = self.p() as u64;
        !a.c1.is_multiple_of(p) || !a.c3.is_multiple_of(p)
    }

    /// Multiplicative order, by repeated multiplication.  For odd p it
    /// divides p^n; for p = 2 it can reach 2^(n+1) (the corner coordinate of
    /// a square picks up the extra factor binom(2,2) = 1).
    pub fn element_order(&self, a: Element) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != Element::IDENTITY {
            x = self.mul(x, a);
            k += 1;
            debug_assert!(k <= 2 * self.modulus());
        }
        k
    }
}
