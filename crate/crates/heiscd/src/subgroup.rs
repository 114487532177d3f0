//! Subgroups: validated element sets with a canonical generator list.
//!
//! The element bitset is the identity of a subgroup; two subgroups are equal
//! exactly when their element sets coincide.  Each subgroup also carries a
//! deterministic generator list, extracted greedily by repeatedly taking the
//! smallest-index element not yet generated.  That list is what the
//! structure machinery (special generating sets, delta) starts from, and
//! what reports print.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::params::GroupParams;
use crate::sets::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    params: GroupParams,
    bits: ElementSet,
    generators: Vec<Element>,
    order: u64,
}

/// Closure of a generating list under the group product, as index BFS.
/// In a finite group the sub-semigroup generated by a set already contains
/// all inverses, so multiplying by generators on the right is enough.
pub(crate) fn closure_indices(
    params: &GroupParams,
    gens: &[Element],
    mul: &dyn Fn(u64, u64) -> u64,
) -> Result<ElementSet> {
    let mut bits = ElementSet::empty(*params)?;
    let identity = params.index_of(Element::IDENTITY);
    bits.insert(identity);
    let gen_idx: Vec<u64> = gens.iter().map(|&g| params.index_of(g)).collect();
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for &g in &gen_idx {
            let y = mul(x, g);
            if !bits.contains(y) {
                bits.insert(y);
                frontier.push(y);
            }
        }
    }
    Ok(bits)
}

/// Greedy canonical generator list for a closed element set.
fn greedy_generators(params: &GroupParams, bits: &ElementSet) -> Result<Vec<Element>> {
    let mul =
        |a: u64, b: u64| params.index_of(params.mul(params.element_at(a), params.element_at(b)));
    let mut gens: Vec<Element> = Vec::new();
    let mut generated = closure_indices(params, &gens, &mul)?;
    for idx in bits.iter() {
        if !generated.contains(idx) {
            gens.push(params.element_at(idx));
            generated = closure_indices(params, &gens, &mul)?;
            if generated == *bits {
                break;
            }
        }
    }
    Ok(gens)
}

impl Subgroup {
    /// Subgroup generated by a list of elements.
    pub fn closure(params: GroupParams, gens: &[Element]) -> Result<Subgroup> {
        for &g in gens {
            params.check_element(g)?;
        }
        let mul = |a: u64, b: u64| {
            params.index_of(params.mul(params.element_at(a), params.element_at(b)))
        };
        let bits = closure_indices(&params, gens, &mul)?;
        Subgroup::from_element_set(params, bits)
    }

    /// Wraps a set that is promised to be a subgroup, validating the promise:
    /// the closure of the greedy generator list must reproduce the set.
    pub fn from_element_set(params: GroupParams, bits: ElementSet) -> Result<Subgroup> {
        if bits.params() != params {
            return Err(Error::ParamsMismatch(
                "element set built for different parameters".into(),
            ));
        }
        if !bits.contains_element(Element::IDENTITY) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let generators = greedy_generators(&params, &bits)?;
        let mul = |a: u64, b: u64| {
            params.index_of(params.mul(params.element_at(a), params.element_at(b)))
        };
        let regenerated = closure_indices(&params, &generators, &mul)?;
        if regenerated != bits {
            return Err(Error::NotASubgroup(format!(
                "set of size {} is not closed under the product",
                bits.len()
            )));
        }
        let order = bits.len();
        Ok(Subgroup {
            params,
            bits,
            generators,
            order,
        })
    }

    /// Fast-path constructor for sets already known to be closed, with a
    /// known generator list.  Only enumeration-internal code uses this; it
    /// still recomputes the canonical greedy generators.
    pub(crate) fn from_closed_set(params: GroupParams, bits: ElementSet) -> Result<Subgroup> {
        let generators = greedy_generators(&params, &bits)?;
        let order = bits.len();
        Ok(Subgroup {
            params,
            bits,
            generators,
            order,
        })
    }

    pub fn trivial(params: GroupParams) -> Result<Subgroup> {
        Subgroup::closure(params, &[])
    }

    pub fn whole_group(params: GroupParams) -> Result<Subgroup> {
        let bits = ElementSet::full(params)?;
        Subgroup::from_closed_set(params, bits)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn bits(&self) -> &ElementSet {
        &self.bits
    }

    /// Canonical greedy generator list.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn contains(&self, e: Element) -> bool {
        self.bits.contains_element(e)
    }

    /// Member elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.elements()
    }

    pub fn element_indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset_of(&other.bits)
    }

    /// Intersection of two subgroups, always again a subgroup.
    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        Subgroup::from_element_set(self.params, self.bits.intersect(&other.bits))
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Subgroup::closure(self.params, &gens)
    }

    /// The product set {h k}, which need not be a subgroup.
    pub fn product_set(&self, other: &Subgroup) -> ElementSet {
        let mut out = ElementSet::empty(self.params).expect("params already admitted a dense set");
        for h in self.elements() {
            for k in other.elements() {
                out.insert_element(self.params.mul(h, k));
            }
        }
        out
    }

    /// Whether the image of the subgroup modulo the center is a cyclic group,
    /// i.e. some member reaches every other member by powers up to center.
    pub fn is_cyclic_mod_center(&self) -> bool {
        let g = &self.params;
        self.elements().any(|h| {
            self.elements()
                .all(|x| (0..g.modulus()).any(|k| g.equiv_mod_center(x, g.pow(h, k as i64))))
        })
    }

    /// Canonical sort key: order first, then the element bitset words.
    pub fn sort_key(&self) -> (u64, Vec<u64>) {
        (self.order, self.bits.words().to_vec())
    }
}

/// The center {(0, x, 0)} as a subgroup; equals the centralizer of the whole
/// group and has order p^n.
pub fn center_subgroup(params: GroupParams) -> Result<Subgroup> {
    let mut bits = ElementSet::empty(params)?;
    for x in 0..params.modulus() {
        bits.insert_element(Element::new(0, x, 0));
    }
    Subgroup::from_element_set(params, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_worked_examples() {
        let g = GroupParams::new(2, 2).unwrap();
        let h = Subgroup::closure(g, &[Element::new(0, 1, 0)]).unwrap();
        assert_eq!(h.order(), 4);
        let whole = Subgroup::closure(g, &[Element::new(1, 0, 0), Element::new(0, 0, 1)]).unwrap();
        assert_eq!(whole.order(), 64);
        let trivial = Subgroup::trivial(g).unwrap();
        assert_eq!(trivial.order(), 1);
        assert!(trivial.is_subgroup_of(&h));
        assert!(h.is_subgroup_of(&whole));
    }

    #[test]
    fn closure_contains_inverses_and_products() {
        let g = GroupParams::new(3, 2).unwrap();
        let h = Subgroup::closure(g, &[Element::new(1, 2, 3), Element::new(0, 1, 1)]).unwrap();
        for a in h.elements() {
            assert!(h.contains(g.inv(a)));
            for b in h.elements() {
                assert!(h.contains(g.mul(a, b)));
            }
        }
        assert_eq!(g.order() % h.order(), 0, "Lagrange");
    }

    #[test]
    fn from_element_set_rejects_non_subgroups() {
        let g = GroupParams::new(2, 2).unwrap();
        let mut bits = ElementSet::empty(g).unwrap();
        bits.insert_element(Element::IDENTITY);
        bits.insert_element(Element::new(1, 0, 0));
        // (1,0,0)^2 = (2,0,0) is missing.
        assert!(matches!(
            Subgroup::from_element_set(g, bits),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn greedy_generators_are_canonical() {
        let g = GroupParams::new(2, 2).unwrap();
        let whole = Subgroup::whole_group(g).unwrap();
        // Smallest non-identity index is (0,0,1), then (0,1,0), then (1,0,0).
        assert_eq!(
            whole.generators(),
            &[
                Element::new(0, 0, 1),
                Element::new(0, 1, 0),
                Element::new(1, 0, 0)
            ]
        );
        let h = Subgroup::closure(g, &[Element::new(1, 0, 0)]).unwrap();
        assert_eq!(h.generators(), &[Element::new(1, 0, 0)]);
    }

    #[test]
    fn center_subgroup_is_center() {
        for (p, n) in [(2, 1), (2, 2), (3, 2)] {
            let g = GroupParams::new(p, n).unwrap();
            let z = center_subgroup(g).unwrap();
            assert_eq!(z.order(), g.modulus());
            for e in g.elements() {
                let central = g.is_central(e);
                assert_eq!(z.contains(e), central);
            }
        }
    }

    #[test]
    fn join_and_intersection() {
        let g = GroupParams::new(2, 2).unwrap();
        let a = Subgroup::closure(g, &[Element::new(1, 0, 0)]).unwrap();
        let b = Subgroup::closure(g, &[Element::new(0, 0, 1)]).unwrap();
        let j = a.join(&b).unwrap();
        assert_eq!(j.order(), 64);
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.order(), 1);
    }

    #[test]
    fn cyclic_mod_center_detection() {
        let g = GroupParams::new(2, 2).unwrap();
        assert!(center_subgroup(g).unwrap().is_cyclic_mod_center());
        assert!(Subgroup::closure(g, &[Element::new(1, 0, 0)])
            .unwrap()
            .is_cyclic_mod_center());
        assert!(!Subgroup::whole_group(g).unwrap().is_cyclic_mod_center());
    }
}
