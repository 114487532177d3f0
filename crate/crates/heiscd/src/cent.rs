//! Centralizers, pseudocentralizers and slice decompositions.
//!
//! Everything here is computed by exhaustive scan over the ambient group;
//! the closed formulas from the structure machinery are used only as test
//! oracles against these scans, never as the implementation.  A scan tests
//! the middle commutator coordinate: `x` centralizes `a` when
//! `[a,x]|2 = 0`, and pseudo-centralizes it when `[a,x]` lies in the kernel
//! of the reduction map, i.e. `p^(n-1)` divides `[a,x]|2`.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::params::GroupParams;
use crate::seq::ExactSequence;
use crate::sets::ElementSet;
use crate::subgroup::Subgroup;

/// Elements commuting with everything in `s`.  Scan form, no subgroup
/// validation.
pub fn centralizer_set(s: &[Element], g: GroupParams) -> Result<ElementSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    for &a in s {
        g.check_element(a)?;
    }
    let mut out = ElementSet::empty(g)?;
    for x in g.elements() {
        if s.iter().all(|&a| g.commutator_slot2(a, x) == 0) {
            out.insert_element(x);
        }
    }
    Ok(out)
}

/// The centralizer C(s) as a validated subgroup.
pub fn centralizer(s: &[Element], g: GroupParams) -> Result<Subgroup> {
    Subgroup::from_element_set(g, centralizer_set(s, g)?)
}

/// Elements whose commutator with everything in `s` lands in ker q.
pub fn pseudocentralizer_set(s: &[Element], seq: &ExactSequence) -> Result<ElementSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let g = seq.big();
    for &a in s {
        g.check_element(a)?;
    }
    let scale = seq.kernel_scale();
    let mut out = ElementSet::empty(g)?;
    for x in g.elements() {
        if s.iter()
            .all(|&a| g.commutator_slot2(a, x).is_multiple_of(scale))
        {
            out.insert_element(x);
        }
    }
    Ok(out)
}

/// The pseudocentralizer P(s) as a validated subgroup.
pub fn pseudocentralizer(s: &[Element], seq: &ExactSequence) -> Result<Subgroup> {
    Subgroup::from_element_set(seq.big(), pseudocentralizer_set(s, seq)?)
}

/// The slice of P(h) whose commutator with `h` equals exactly
/// `ell * p^(n-1)`.  Slice 0 is the centralizer of `h`; the slices
/// partition P(h) into p classes of equal size.
pub fn p_ell_slice(h: Element, ell: u64, seq: &ExactSequence) -> Result<ElementSet> {
    let g = seq.big();
    g.check_element(h)?;
    if g.is_central(h) {
        return Err(Error::CentralElement(format!(
            "{h} has no slice decomposition"
        )));
    }
    if ell >= g.p() as u64 {
        return Err(Error::EllOutOfRange { ell, p: g.p() });
    }
    let target = ell * seq.kernel_scale() % g.modulus();
    let mut out = ElementSet::empty(g)?;
    for x in g.elements() {
        if g.commutator_slot2(h, x) == target {
            out.insert_element(x);
        }
    }
    Ok(out)
}

/// log_p of |P(H)| / |C(H)| for a subgroup H; always 0, 1 or 2, and 0
/// exactly when H is central.
pub fn quotient_rank(h: &Subgroup, seq: &ExactSequence) -> Result<u32> {
    if h.params() != seq.big() {
        return Err(Error::ParamsMismatch(
            "subgroup belongs to a different group".into(),
        ));
    }
    let gens = subgroup_probe_set(h);
    let c = centralizer_set(&gens, seq.big())?;
    let p_set = pseudocentralizer_set(&gens, seq)?;
    let (c_len, p_len) = (c.len(), p_set.len());
    debug_assert_eq!(p_len % c_len, 0);
    let mut ratio = p_len / c_len;
    let mut rank = 0u32;
    let p = seq.big().p() as u64;
    while ratio > 1 {
        debug_assert_eq!(ratio % p, 0);
        ratio /= p;
        rank += 1;
    }
    Ok(rank)
}

/// Constraint set standing in for a subgroup in a scan: its generators, or
/// the identity alone for the trivial subgroup.  Centralizing the
/// generators is the same as centralizing every member.
pub(crate) fn subgroup_probe_set(h: &Subgroup) -> Vec<Element> {
    if h.generators().is_empty() {
        vec![Element::IDENTITY]
    } else {
        h.generators().to_vec()
    }
}

/// C(H) for a subgroup, via its generator list.
pub fn subgroup_centralizer(h: &Subgroup) -> Result<Subgroup> {
    centralizer(&subgroup_probe_set(h), h.params())
}

/// P(H) for a subgroup, via its generator list.
pub fn subgroup_pseudocentralizer(h: &Subgroup, seq: &ExactSequence) -> Result<Subgroup> {
    if h.params() != seq.big() {
        return Err(Error::ParamsMismatch(
            "subgroup belongs to a different group".into(),
        ));
    }
    pseudocentralizer(&subgroup_probe_set(h), seq)
}
