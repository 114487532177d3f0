//! The reduction short exact sequence connecting H(p^n) to H(p^(n-1)).
//!
//! Componentwise reduction mod p^(n-1) is a surjective homomorphism
//! q: H(p^n) -> H(p^(n-1)).  Its kernel consists of the elements all of
//! whose coordinates are divisible by p^(n-1); scaling a coordinate triple
//! over Z/p by p^(n-1) parameterizes that kernel.  For n = 1 the codomain is
//! the one-element group, so the kernel is everything and every
//! pseudocentralizer computed against this sequence degenerates to the whole
//! group.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::params::GroupParams;
use crate::sets::ElementSet;
use crate::subgroup::Subgroup;

/// The pair (H(p^n), H(p^(n-1))) together with the reduction map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactSequence {
    big: GroupParams,
    small: GroupParams,
    /// p^(n-1), the scale of the kernel embedding.
    kernel_scale: u64,
}

/// How a subgroup's order splits across the sequence: the part inside the
/// kernel times the size of the projected image recovers the whole order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderFactorization {
    pub kernel_part: u64,
    pub image_part: u64,
    pub order: u64,
}

impl ExactSequence {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        let big = GroupParams::new(p, n)?;
        let small = if n == 1 {
            GroupParams::degenerate(p)
        } else {
            GroupParams::new(p, n - 1)?
        };
        Ok(ExactSequence {
            big,
            small,
            kernel_scale: big.p_pow(n - 1),
        })
    }

    pub fn big(&self) -> GroupParams {
        self.big
    }

    pub fn small(&self) -> GroupParams {
        self.small
    }

    /// p^(n-1).
    pub fn kernel_scale(&self) -> u64 {
        self.kernel_scale
    }

    /// Embeds a coordinate triple over Z/p as the kernel element with each
    /// coordinate scaled by p^(n-1).  Injective; a homomorphism from the
    /// componentwise addition for n >= 2 (the cross term picks up p^(2n-2)).
    pub fn f_embed(&self, t: Element) -> Result<Element> {
        let p = self.big.p() as u64;
        for value in [t.c1, t.c2, t.c3] {
            if value >= p {
                return Err(Error::CoordinateOutOfRange { value, bound: p });
            }
        }
        Ok(Element::new(
            t.c1 * self.kernel_scale,
            t.c2 * self.kernel_scale,
            t.c3 * self.kernel_scale,
        ))
    }

    /// Componentwise reduction into H(p^(n-1)).
    pub fn q_project(&self, a: Element) -> Element {
        let m = self.small.modulus();
        Element::new(a.c1 % m, a.c2 % m, a.c3 % m)
    }

    /// Membership in ker q: every coordinate divisible by p^(n-1).
    pub fn in_kernel(&self, a: Element) -> bool {
        a.c1.is_multiple_of(self.kernel_scale)
            && a.c2.is_multiple_of(self.kernel_scale)
            && a.c3.is_multiple_of(self.kernel_scale)
    }

    /// The kernel as a subgroup of the big group; order p^3.
    pub fn kernel_subgroup(&self) -> Result<Subgroup> {
        let mut bits = ElementSet::empty(self.big)?;
        let p = self.big.p() as u64;
        for c1 in 0..p {
            for c2 in 0..p {
                for c3 in 0..p {
                    bits.insert_element(self.f_embed(Element::new(c1, c2, c3))?);
                }
            }
        }
        Subgroup::from_element_set(self.big, bits)
    }

    /// Full preimage of a subgroup of the small group, by scanning the big
    /// group.  Its order is always p^3 times the order downstairs.
    pub fn preimage_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.params() != self.small {
            return Err(Error::ParamsMismatch(
                "preimage expects a subgroup of the quotient group".into(),
            ));
        }
        let mut bits = ElementSet::empty(self.big)?;
        for a in self.big.elements() {
            if h.contains(self.q_project(a)) {
                bits.insert_element(a);
            }
        }
        Subgroup::from_element_set(self.big, bits)
    }

    /// Image of a subgroup of the big group under q.
    pub fn image_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if h.params() != self.big {
            return Err(Error::ParamsMismatch(
                "image expects a subgroup of the big group".into(),
            ));
        }
        let mut bits = ElementSet::empty(self.small)?;
        for a in h.elements() {
            bits.insert_element(self.q_project(a));
        }
        Subgroup::from_element_set(self.small, bits)
    }

    /// Splits |H| as |H inter ker q| * |q(H)|.
    pub fn order_factorization(&self, h: &Subgroup) -> Result<OrderFactorization> {
        if h.params() != self.big {
            return Err(Error::ParamsMismatch(
                "expected a subgroup of the big group".into(),
            ));
        }
        let kernel_part = h.elements().filter(|&a| self.in_kernel(a)).count() as u64;
        let image_part = self.image_subgroup(h)?.order();
        Ok(OrderFactorization {
            kernel_part,
            image_part,
            order: h.order(),
        })
    }
}
