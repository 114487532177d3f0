//! Valuation profiles, special generating sets, injective sets, witness
//! pairs and representation decompositions.
//!
//! This is the structural layer that explains the scan results of [`cent`]:
//! the p-adic valuations of an element's outer coordinates control how its
//! centralizer sits inside its pseudocentralizer.  All searches here are
//! bounded and deterministic (lexicographic, smallest index first), so equal
//! inputs always produce identical certificates.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::params::{FactoredComponent, GroupParams};
use crate::seq::ExactSequence;
use crate::subgroup::Subgroup;

/// Valuation profile of one element: both outer coordinates factored, the
/// minimum `nu` of the two valuations, and the element divided down by
/// p^nu (outer coordinates only, corner dropped).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NuProfile {
    pub comp1: FactoredComponent,
    pub comp3: FactoredComponent,
    pub nu: u32,
    pub nu_form: Element,
}

/// Joint profile of an ordered pair: the four outer valuations, the minimum
/// cross sum `lambda`, the joint minimum valuation, and their difference
/// `mu`, the quantity that measures how far the pair is from commuting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairProfile {
    pub k_s1: u32,
    pub k_s3: u32,
    pub k_t1: u32,
    pub k_t3: u32,
    pub lambda: u32,
    pub nu_pair: u32,
    pub mu: u32,
}

/// Certificate that h2 is congruent mod center to `(r1, 0, r3)^exponent`
/// with `exponent = p^(n - nu(h1))` and both digits below `p^nu(h1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupercommutingForm {
    pub r1: u64,
    pub r3: u64,
    /// Valuation of r1 (n when r1 = 0).
    pub s1: u32,
    /// Valuation of r3 (n when r3 = 0).
    pub s3: u32,
    /// The power p^(n - nu(h1)) the base pair is raised to.
    pub exponent: u64,
}

/// A generating set normalized so that no non-central member is a power of
/// the valuation witness mod center, central generators are consolidated
/// into at most one, and every member commuting with the witness does so in
/// supercommuting form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialGenSet {
    params: GroupParams,
    /// At most one central generator, canonical shape (0, p^k, 0).
    pub central: Option<Element>,
    /// The non-central members, ascending by element index.
    pub noncentral: Vec<Element>,
    /// Position in `noncentral` of the member realizing the minimal nu that
    /// the whole construction was normalized against.
    pub nu_witness: Option<usize>,
}

/// The distinguished subset (size 0, 1 or 2) of a special generating set
/// that controls the pseudocentralizer-to-centralizer index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectiveSet {
    pub members: Vec<Element>,
}

/// Parameters of the canonical factorization of a pseudocentralizer member:
/// `z ~ nu_form(h)^w * shift(ell) * (r1, 0, r3)^(p^(n-nu))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepresentationForm {
    pub w: u64,
    pub ell: u64,
    pub r1: u64,
    pub r3: u64,
}

/// Which construction produced a witness pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessCase {
    /// Closed form for a non-commuting pair.
    NonCommuting,
    /// Closed form for a properly commuting pair.
    ProperlyCommuting,
    /// The membership gate rejected the closed form and an exhaustive scan
    /// supplied the witnesses instead.
    SearchFallback,
}

/// Two elements certifying that P strictly exceeds C on both generators of
/// a special pair: z1 pseudo-centralizes h1 without centralizing it while
/// centralizing h2, and z2 plays the mirror role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessPair {
    pub z1: Element,
    pub z2: Element,
    /// Exponents applied to the reduced form of h1 when the closed form
    /// produced the witnesses; absent when the exhaustive fallback did.
    pub w1: Option<u64>,
    pub w2: Option<u64>,
    pub case: WitnessCase,
    /// True when the construction ran on the third-coordinate branch
    /// (valuation minimum attained there and not on the first coordinate).
    pub mirrored: bool,
}

/// `r * p^e mod p^n`, with the usual truncation for e >= n.
fn scaled(g: &GroupParams, r: u64, e: u32) -> u64 {
    if e >= g.n() {
        0
    } else {
        r % g.modulus() * g.p_pow(e) % g.modulus()
    }
}

/// Valuation profile of an element.  Total: central elements get nu = n and
/// the identity as reduced form.
pub fn nu_profile(h: Element, g: &GroupParams) -> NuProfile {
    let comp1 = g.factor_component(h.c1);
    let comp3 = g.factor_component(h.c3);
    let nu = comp1.k.min(comp3.k);
    let nu_form = Element::new(
        scaled(g, comp1.r, comp1.k - nu),
        0,
        scaled(g, comp3.r, comp3.k - nu),
    );
    NuProfile {
        comp1,
        comp3,
        nu,
        nu_form,
    }
}

/// Minimal nu over the non-central members of a set.
pub fn nu_of_set(s: &[Element], g: &GroupParams) -> Result<u32> {
    s.iter()
        .filter(|&&h| !g.is_central(h))
        .map(|&h| nu_profile(h, g).nu)
        .min()
        .ok_or_else(|| Error::CentralElement("set has no non-central member".into()))
}

/// Componentwise reduction of `a` into H(p^(n - nu(h))), the group where the
/// reduced form of `h` becomes non-degenerate.
pub fn brace_map(a: Element, h: Element, g: &GroupParams) -> Result<(GroupParams, Element)> {
    if g.is_central(h) {
        return Err(Error::CentralElement(format!(
            "{h} has no reduction target"
        )));
    }
    let nu = nu_profile(h, g).nu;
    let target = if nu == 0 {
        *g
    } else {
        GroupParams::new(g.p(), g.n() - nu)?
    };
    let m = target.modulus();
    Ok((target, Element::new(a.c1 % m, a.c2 % m, a.c3 % m)))
}

/// Joint valuation profile of an ordered pair of distinct non-central
/// elements.
pub fn mu(hs: Element, ht: Element, g: &GroupParams) -> Result<PairProfile> {
    if g.is_central(hs) || g.is_central(ht) {
        return Err(Error::CentralElement(
            "pair profile needs non-central elements".into(),
        ));
    }
    if hs == ht {
        return Err(Error::EqualElements);
    }
    let ps = nu_profile(hs, g);
    let pt = nu_profile(ht, g);
    let lambda = (ps.comp1.k + pt.comp3.k).min(ps.comp3.k + pt.comp1.k);
    let nu_pair = ps.nu.min(pt.nu);
    Ok(PairProfile {
        k_s1: ps.comp1.k,
        k_s3: ps.comp3.k,
        k_t1: pt.comp1.k,
        k_t3: pt.comp3.k,
        lambda,
        nu_pair,
        mu: lambda - nu_pair,
    })
}

/// Smallest exponent w with `h2 ~ h1^w` mod center, if any.  Outer
/// coordinates of powers are linear in w, so scanning one period suffices.
pub fn power_relation(h2: Element, h1: Element, g: &GroupParams) -> Option<u64> {
    (0..g.modulus()).find(|&w| g.equiv_mod_center(h2, g.pow(h1, w as i64)))
}

/// Searches for the supercommuting certificate of h2 against h1.  The digit
/// space is [0, p^nu(h1))^2 minus the zero pair, scanned lexicographically.
pub fn supercommuting_form(
    h2: Element,
    h1: Element,
    g: &GroupParams,
) -> Result<Option<SupercommutingForm>> {
    if g.is_central(h1) || g.is_central(h2) {
        return Err(Error::CentralElement(
            "supercommuting form needs non-central elements".into(),
        ));
    }
    let nu = nu_profile(h1, g).nu;
    let bound = g.p_pow(nu);
    let exponent = g.p_pow(g.n() - nu);
    for r1 in 0..bound {
        for r3 in 0..bound {
            if r1 == 0 && r3 == 0 {
                continue;
            }
            let u = g.pow(Element::new(r1, 0, r3), exponent as i64);
            if g.equiv_mod_center(h2, u) {
                return Ok(Some(SupercommutingForm {
                    r1,
                    r3,
                    s1: g.valuation(r1),
                    s3: g.valuation(r3),
                    exponent,
                }));
            }
        }
    }
    Ok(None)
}

/// Whether a supercommuting h2 commutes *properly* with h1: the base pair of
/// its certificate must fail to commute with the reduced form of h1 at a
/// valuation strictly below nu(h1).
pub fn commutes_properly(h2: Element, h1: Element, g: &GroupParams) -> Result<bool> {
    let form = supercommuting_form(h2, h1, g)?.ok_or(Error::NotSupercommuting)?;
    let profile = nu_profile(h1, g);
    let base = Element::new(form.r1, 0, form.r3);
    let slot2 = g.commutator_slot2(base, profile.nu_form);
    Ok(g.valuation(slot2) < profile.nu)
}

/// Consolidates a list of central corner values into the canonical single
/// generator (0, p^k, 0) of the subgroup of the center they generate.
fn consolidate_central(pool: &[u64], g: &GroupParams) -> Option<Element> {
    let min_val = pool
        .iter()
        .filter(|&&x| x != 0)
        .map(|&x| g.valuation(x))
        .min()?;
    Some(Element::new(0, g.p_pow(min_val), 0))
}

/// Normalizes a generating list into a special generating set.
///
/// Three phases, all generation-preserving:
/// 1. while some non-central member is congruent mod center to a power of
///    the valuation witness h1, trade it for the central quotient;
/// 2. every remaining member that commutes with h1 without a supercommuting
///    certificate is split into a supercommuting part and a central part;
/// 3. central generators collapse to at most one canonical one.
pub fn special_generating_set(gens: &[Element], g: &GroupParams) -> Result<SpecialGenSet> {
    let mut central_pool: Vec<u64> = Vec::new();
    let mut noncentral: Vec<Element> = Vec::new();
    for &e in gens {
        g.check_element(e)?;
        if g.is_central(e) {
            if e != Element::IDENTITY {
                central_pool.push(e.c2);
            }
        } else if !noncentral.contains(&e) {
            noncentral.push(e);
        }
    }
    noncentral.sort_by_key(|&e| g.index_of(e));

    if noncentral.is_empty() {
        return Ok(SpecialGenSet {
            params: *g,
            central: consolidate_central(&central_pool, g),
            noncentral,
            nu_witness: None,
        });
    }

    // The witness: minimal nu, ties to the smallest element index.  Removals
    // below never touch it and never change the minimal nu.
    let h1 = *noncentral
        .iter()
        .min_by_key(|&&e| (nu_profile(e, g).nu, g.index_of(e)))
        .expect("nonempty");
    let nu1 = nu_profile(h1, g).nu;

    // Phase 1: strip members that are powers of h1 mod center.
    let cap = (gens.len() as u64 + 1) * g.modulus();
    let mut steps = 0u64;
    loop {
        let offender = noncentral
            .iter()
            .position(|&e| e != h1 && power_relation(e, h1, g).is_some());
        let Some(pos) = offender else { break };
        steps += 1;
        if steps > cap {
            return Err(Error::CapExceeded(format!(
                "special set replacement loop exceeded {cap} iterations"
            )));
        }
        let h2 = noncentral.remove(pos);
        let w = power_relation(h2, h1, g).expect("position was found by this predicate");
        let c = g.mul(g.pow(h1, w as i64), g.inv(h2));
        debug_assert!(g.is_central(c));
        if c != Element::IDENTITY {
            central_pool.push(c.c2);
        }
    }

    // Phase 2: members commuting with h1 must do so in supercommuting form.
    let snapshot = noncentral.clone();
    for hj in snapshot {
        if hj == h1 || g.commutator_slot2(h1, hj) != 0 {
            continue;
        }
        if supercommuting_form(hj, h1, g)?.is_some() {
            continue;
        }
        let bound = g.p_pow(nu1);
        let exponent = g.p_pow(g.n() - nu1) as i64;
        let mut replacement: Option<(Element, Element)> = None;
        'search: for w in 0..g.modulus() {
            let head = g.pow(h1, w as i64);
            for r1 in 0..bound {
                for r3 in 0..bound {
                    if r1 == 0 && r3 == 0 {
                        continue;
                    }
                    let u = g.pow(Element::new(r1, 0, r3), exponent);
                    if g.equiv_mod_center(hj, g.mul(head, u)) {
                        let z = g.mul(g.inv(g.mul(head, u)), hj);
                        replacement = Some((u, z));
                        break 'search;
                    }
                }
            }
        }
        let Some((u, z)) = replacement else {
            return Err(Error::SpecializationFailed(format!(
                "{hj} commutes with {h1} but admits no supercommuting split"
            )));
        };
        debug_assert!(g.is_central(z));
        noncentral.retain(|&e| e != hj);
        if !noncentral.contains(&u) {
            noncentral.push(u);
        }
        if z != Element::IDENTITY {
            central_pool.push(z.c2);
        }
    }

    noncentral.sort_by_key(|&e| g.index_of(e));
    let witness_pos = noncentral
        .iter()
        .position(|&e| e == h1)
        .expect("witness never removed");
    debug_assert!(noncentral.iter().all(|&e| nu_profile(e, g).nu >= nu1));
    Ok(SpecialGenSet {
        params: *g,
        central: consolidate_central(&central_pool, g),
        noncentral,
        nu_witness: Some(witness_pos),
    })
}

impl SpecialGenSet {
    pub fn params(&self) -> GroupParams {
        self.params
    }

    /// All generators: the central one (if any) followed by the non-central
    /// members.
    pub fn generators(&self) -> Vec<Element> {
        self.central
            .iter()
            .copied()
            .chain(self.noncentral.iter().copied())
            .collect()
    }

    pub fn nu_witness_element(&self) -> Option<Element> {
        self.nu_witness.map(|i| self.noncentral[i])
    }

    /// Defining property, re-checked from scratch; used by the invariant
    /// suites.
    pub fn is_special(&self) -> bool {
        let g = &self.params;
        let Some(h1) = self.nu_witness_element() else {
            return self.noncentral.is_empty();
        };
        let nu1 = nu_profile(h1, g).nu;
        let nu_min = self
            .noncentral
            .iter()
            .map(|&e| nu_profile(e, g).nu)
            .min()
            .unwrap();
        nu1 == nu_min
            && self
                .noncentral
                .iter()
                .all(|&e| e == h1 || power_relation(e, h1, g).is_none())
    }
}

/// The injective subset of a special generating set: empty for central
/// sets, the witness alone when it is the only non-central member, else the
/// witness together with the member of minimal mu against it.
pub fn injective_set(s: &SpecialGenSet) -> Result<InjectiveSet> {
    let g = s.params();
    let Some(h1) = s.nu_witness_element() else {
        return Ok(InjectiveSet { members: vec![] });
    };
    if s.noncentral.len() == 1 {
        return Ok(InjectiveSet { members: vec![h1] });
    }
    let mut best: Option<(u32, u64, Element)> = None;
    for &hj in &s.noncentral {
        if hj == h1 {
            continue;
        }
        let profile = mu(h1, hj, &g)?;
        let key = (profile.mu, g.index_of(hj));
        if best.is_none_or(|(bm, bi, _)| key < (bm, bi)) {
            best = Some((key.0, key.1, hj));
        }
    }
    let (_, _, h2) = best.expect("at least two non-central members");
    Ok(InjectiveSet {
        members: vec![h1, h2],
    })
}

/// 3 minus the injective set size of the subgroup's canonical generators.
/// Takes values 1, 2, 3 and measures how far the subgroup is from central.
pub fn delta(h: &Subgroup) -> Result<u32> {
    let g = h.params();
    let special = special_generating_set(h.generators(), &g)?;
    let inj = injective_set(&special)?;
    Ok(3 - inj.members.len() as u32)
}

/// Decomposes a member of P(h) as `nu_form(h)^w * shift(ell) * base^(p^(n-nu))`.
///
/// The slice index ell is forced by the commutator of h and z; the remaining
/// parameters come from a bounded lexicographic search, so the result is
/// deterministic.  Errors if z is not in P(h).
pub fn representation_decompose(
    z: Element,
    h: Element,
    seq: &ExactSequence,
) -> Result<RepresentationForm> {
    let g = seq.big();
    g.check_element(z)?;
    g.check_element(h)?;
    if g.is_central(h) {
        return Err(Error::CentralElement(format!(
            "{h} admits no slice decomposition"
        )));
    }
    let scale = seq.kernel_scale();
    let slot2 = g.commutator_slot2(h, z);
    if !slot2.is_multiple_of(scale) {
        return Err(Error::NotInPseudocentralizer);
    }
    let ell = slot2 / scale;

    let profile = nu_profile(h, &g);
    let shift = slice_shift(&profile, ell, &g);
    let bound = g.p_pow(profile.nu);
    let exponent = g.p_pow(g.n() - profile.nu) as i64;
    for w in 0..g.modulus() {
        let head = g.mul(g.pow(profile.nu_form, w as i64), shift);
        for r1 in 0..bound {
            for r3 in 0..bound {
                let u = g.pow(Element::new(r1, 0, r3), exponent);
                if g.equiv_mod_center(z, g.mul(head, u)) {
                    return Ok(RepresentationForm { w, ell, r1, r3 });
                }
            }
        }
    }
    Err(Error::SpecializationFailed(format!(
        "no representation found for {z} against {h}"
    )))
}

/// The element shifting slice 0 to slice ell of P(h): a pure third-coordinate
/// (or, on the mirrored branch, negated first-coordinate) bump of size
/// `r^-1 * ell * p^(n-k-1)` against the branch coordinate `r * p^k` of h.
fn slice_shift(profile: &NuProfile, ell: u64, g: &GroupParams) -> Element {
    if profile.comp1.r != 0 {
        let inv = g.unit_inverse(profile.comp1.r);
        Element::new(
            0,
            0,
            scaled(g, inv * ell % g.modulus(), g.n() - profile.comp1.k - 1),
        )
    } else {
        let inv = g.unit_inverse(profile.comp3.r);
        let bump = scaled(g, inv * ell % g.modulus(), g.n() - profile.comp3.k - 1);
        Element::new(g.reduce(-(bump as i128)), 0, 0)
    }
}

/// Rebuilds an element of the target slice from its representation
/// parameters; inverse direction of [`representation_decompose`] up to
/// central factors.
pub fn representation_compose(
    form: &RepresentationForm,
    h: Element,
    seq: &ExactSequence,
) -> Element {
    let g = seq.big();
    let profile = nu_profile(h, &g);
    let shift = slice_shift(&profile, form.ell, &g);
    let exponent = g.p_pow(g.n() - profile.nu) as i64;
    let u = g.pow(Element::new(form.r1, 0, form.r3), exponent);
    g.mul(g.mul(g.pow(profile.nu_form, form.w as i64), shift), u)
}

/// Whether the ordered pair qualifies for the witness construction: both
/// non-central, the valuation minimum attained by h1, no power relation,
/// and the pair either fails to commute or commutes properly.
pub fn is_witness_pair_input(h1: Element, h2: Element, seq: &ExactSequence) -> bool {
    let g = seq.big();
    if g.is_central(h1) || g.is_central(h2) {
        return false;
    }
    if nu_profile(h2, &g).nu < nu_profile(h1, &g).nu {
        return false;
    }
    if power_relation(h2, h1, &g).is_some() {
        return false;
    }
    if g.commutator_slot2(h1, h2) != 0 {
        return true;
    }
    matches!(commutes_properly(h2, h1, &g), Ok(true))
}

/// Builds the witness pair (z1, z2) for a qualifying ordered pair.
///
/// z1 lies in P(h1) outside C(h1) while centralizing h2; z2 centralizes h1
/// while lying in P(h2) outside C(h2).  The closed form solves
/// `w * A = target (mod p^n)` with `A` the commutator of h2 against the
/// reduced form of h1; a membership gate re-checks all four memberships and
/// falls back to an exhaustive scan if the closed form ever failed.
pub fn witness_pair(h1: Element, h2: Element, seq: &ExactSequence) -> Result<WitnessPair> {
    let g = seq.big();
    g.check_element(h1)?;
    g.check_element(h2)?;
    if g.is_central(h1) || g.is_central(h2) {
        return Err(Error::CentralElement(
            "witness construction needs non-central elements".into(),
        ));
    }
    let p1 = nu_profile(h1, &g);
    let p2 = nu_profile(h2, &g);
    if p2.nu < p1.nu {
        return Err(Error::NotSpecialPair(format!(
            "valuation minimum {} of {h2} undercuts {} of {h1}",
            p2.nu, p1.nu
        )));
    }
    if let Some(w) = power_relation(h2, h1, &g) {
        return Err(Error::NotSpecialPair(format!(
            "{h2} is congruent to {h1}^{w} mod center"
        )));
    }

    let commuting = g.commutator_slot2(h1, h2) == 0;
    if commuting
        && !commutes_properly(h2, h1, &g).map_err(|e| match e {
            Error::NotSupercommuting => Error::ImproperlyCommuting,
            other => other,
        })?
    {
        return Err(Error::ImproperlyCommuting);
    }

    // Branch on where h1 attains its valuation minimum: first coordinate if
    // possible, else the mirrored third-coordinate construction.
    let mirrored = p1.comp1.k != p1.nu;
    let (ka, ra, rb2, kb2) = if mirrored {
        (p1.comp3.k, p1.comp3.r, p2.comp3.r, p2.comp3.k)
    } else {
        (p1.comp1.k, p1.comp1.r, p2.comp1.r, p2.comp1.k)
    };
    let ra_inv = g.unit_inverse(ra);
    let shift_of = |amount: u64| -> Element {
        let bump = scaled(&g, ra_inv * amount % g.modulus(), g.n() - ka - 1);
        if mirrored {
            Element::new(g.reduce(-(bump as i128)), 0, 0)
        } else {
            Element::new(0, 0, bump)
        }
    };

    // mu of the pair, and the unit-candidate factor r2 with A = r2 * p^mu2
    // where A is the commutator of h2 against the reduced form of h1.
    let mu2_num = (p1.comp3.k + p2.comp1.k).min(p1.comp1.k + p2.comp3.k);
    let mu2 = mu2_num - p1.nu;
    let m = g.modulus() as i128;
    let term1 = scaled(
        &g,
        p1.comp3.r * p2.comp1.r % g.modulus(),
        p1.comp3.k + p2.comp1.k - p1.nu - mu2,
    );
    let term2 = scaled(
        &g,
        p1.comp1.r * p2.comp3.r % g.modulus(),
        p1.comp1.k + p2.comp3.k - p1.nu - mu2,
    );
    let r2 = g.reduce(term1 as i128 - term2 as i128);

    let a_slot = g.commutator_slot2(h2, p1.nu_form);
    debug_assert_eq!(
        scaled(&g, r2, mu2),
        a_slot,
        "factorized commutator mismatch"
    );

    let w_pair: Option<(u64, u64)> = if !r2.is_multiple_of(g.p() as u64) && mu2 < g.n() {
        // Literal closed form: w_i = r2^-1 * inner_i * p^(n-1-mu2).
        let r2_inv = g.unit_inverse(r2);
        let tail = scaled(&g, rb2 % g.modulus(), kb2 - p1.nu);
        let inner =
            |i: i128| -> u64 { g.reduce((i - 1) - (2 - i) * (ra_inv as i128 * tail as i128 % m)) };
        let w_of = |i: i128| scaled(&g, r2_inv * inner(i) % g.modulus(), g.n() - 1 - mu2);
        Some((w_of(1), w_of(2)))
    } else {
        // Solve w * A = target directly from the exact valuation of A.
        solve_witness_exponents(
            &g,
            a_slot,
            g.commutator_slot2(h2, shift_of(1)),
            seq.kernel_scale(),
        )
    };

    if let Some((w1, w2)) = w_pair {
        let z1 = g.mul(g.pow(p1.nu_form, w1 as i64), shift_of(1));
        let z2 = g.pow(p1.nu_form, w2 as i64);
        if witness_gate(&g, seq, h1, h2, z1, z2) {
            let case = if commuting {
                WitnessCase::ProperlyCommuting
            } else {
                WitnessCase::NonCommuting
            };
            return Ok(WitnessPair {
                z1,
                z2,
                w1: Some(w1),
                w2: Some(w2),
                case,
                mirrored,
            });
        }
    }

    // Exhaustive fallback: scan for each witness independently.
    let scale = seq.kernel_scale();
    let find = |pseudo_of: Element, cent_of: Element| -> Option<Element> {
        g.elements().find(|&z| {
            let s = g.commutator_slot2(pseudo_of, z);
            s.is_multiple_of(scale) && s != 0 && g.commutator_slot2(cent_of, z) == 0
        })
    };
    let z1 = find(h1, h2);
    let z2 = find(h2, h1);
    match (z1, z2) {
        (Some(z1), Some(z2)) => Ok(WitnessPair {
            z1,
            z2,
            w1: None,
            w2: None,
            case: WitnessCase::SearchFallback,
            mirrored,
        }),
        _ => Err(Error::SpecializationFailed(format!(
            "no witness elements exist for the pair ({h1}), ({h2})"
        ))),
    }
}

/// Particular solutions of `w * A = -B` and `w * A = p^(n-1)` over Z/p^n,
/// from the exact factorization of A.  Returns None when A vanishes or the
/// targets are not reachable (the gate then rejects and the caller falls
/// back to scanning).
fn solve_witness_exponents(
    g: &GroupParams,
    a_slot: u64,
    b_slot: u64,
    kernel_scale: u64,
) -> Option<(u64, u64)> {
    if a_slot == 0 {
        return None;
    }
    let fa = g.factor_component(a_slot);
    let ra_inv = g.unit_inverse(fa.r);
    if !kernel_scale.is_multiple_of(g.p_pow(fa.k)) {
        return None;
    }
    let w2 = ra_inv * (kernel_scale / g.p_pow(fa.k)) % g.modulus();
    let w1 = if b_slot == 0 {
        0
    } else {
        let fb = g.factor_component(b_slot);
        if fb.k < fa.k {
            return None;
        }
        let quotient = scaled(g, fb.r, fb.k - fa.k);
        g.reduce(-((ra_inv * quotient % g.modulus()) as i128))
    };
    Some((w1, w2))
}

/// All four membership conditions of a witness pair.
fn witness_gate(
    g: &GroupParams,
    seq: &ExactSequence,
    h1: Element,
    h2: Element,
    z1: Element,
    z2: Element,
) -> bool {
    let scale = seq.kernel_scale();
    let s11 = g.commutator_slot2(h1, z1);
    let s21 = g.commutator_slot2(h2, z1);
    let s12 = g.commutator_slot2(h1, z2);
    let s22 = g.commutator_slot2(h2, z2);
    s11.is_multiple_of(scale)
        && s11 != 0
        && s21 == 0
        && s12 == 0
        && s22.is_multiple_of(scale)
        && s22 != 0
}
