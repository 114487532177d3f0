//! Randomized invariants over a spread of group parameters, including
//! moduli far beyond what the exhaustive suites enumerate.  The closed
//! formulas never scan the group, so these run at p^n up to the engine's
//! 2^20 cap.

use proptest::prelude::*;

use heiscd::measure::{cd_measure, pseudo_cd_measure};
use heiscd::structure::{
    delta, is_witness_pair_input, mu, nu_profile, representation_compose, representation_decompose,
    witness_pair,
};
use heiscd::{Element, ExactSequence, GroupParams, Subgroup};

/// Mix of tiny groups and ones close to the modulus cap.
const WIDE: [(u32, u32); 11] = [
    (2, 1),
    (2, 4),
    (2, 20),
    (3, 2),
    (3, 12),
    (5, 8),
    (7, 7),
    (11, 5),
    (101, 2),
    (1021, 2),
    (65521, 1),
];

/// Parameter sets where scans are affordable (fallback paths, subgroup
/// closures).
const SCAN: [(u32, u32); 3] = [(2, 2), (3, 2), (5, 2)];

fn params_from(cases: &'static [(u32, u32)]) -> impl Strategy<Value = GroupParams> {
    proptest::sample::select(cases).prop_map(|(p, n)| GroupParams::new(p, n).expect("valid case"))
}

fn group_and_elements(
    cases: &'static [(u32, u32)],
    k: usize,
) -> impl Strategy<Value = (GroupParams, Vec<Element>)> {
    params_from(cases).prop_flat_map(move |g| {
        let m = g.modulus();
        let elem = (0..m, 0..m, 0..m).prop_map(|(c1, c2, c3)| Element::new(c1, c2, c3));
        (Just(g), proptest::collection::vec(elem, k))
    })
}

proptest! {
    #[test]
    fn group_laws_hold((g, v) in group_and_elements(&WIDE, 3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.identity()), a);
        prop_assert_eq!(g.mul(g.identity(), a), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.mul(g.inv(a), a), g.identity());
        prop_assert_eq!(g.inv(g.inv(a)), a);
    }

    #[test]
    fn power_formula_matches_iteration(
        (g, v) in group_and_elements(&WIDE, 1),
        e in -40i64..=80,
        f in -40i64..=80,
    ) {
        let h = v[0];
        let step = if e >= 0 { h } else { g.inv(h) };
        let mut naive = g.identity();
        for _ in 0..e.unsigned_abs() {
            naive = g.mul(naive, step);
        }
        prop_assert_eq!(g.pow(h, e), naive);
        prop_assert_eq!(g.pow(h, e + f), g.mul(g.pow(h, e), g.pow(h, f)));
    }

    #[test]
    fn element_order_is_minimal((g, v) in group_and_elements(&WIDE, 1)) {
        let h = v[0];
        let ord = g.element_order(h);
        prop_assert_eq!(g.pow(h, ord as i64), g.identity());
        if ord > 1 {
            // Orders are p-powers except for a possible single factor of 2
            // when p = 2, so p is the only prime divisor either way.
            prop_assert_eq!(ord % g.p() as u64, 0);
            prop_assert_ne!(g.pow(h, (ord / g.p() as u64) as i64), g.identity());
        }
    }

    #[test]
    fn commutators_are_central_and_bilinear((g, v) in group_and_elements(&WIDE, 3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        let com = g.commutator(a, b);
        prop_assert_eq!((com.c1, com.c3), (0, 0));
        prop_assert_eq!(com.c2, g.commutator_slot2(a, b));
        let m = g.modulus();
        prop_assert_eq!(
            g.commutator_slot2(a, g.mul(b, c)),
            (g.commutator_slot2(a, b) + g.commutator_slot2(a, c)) % m
        );
        prop_assert_eq!(
            g.commutator_slot2(b, a),
            g.reduce(-(g.commutator_slot2(a, b) as i128))
        );
    }

    #[test]
    fn pair_profile_bounds_the_commutator((g, v) in group_and_elements(&WIDE, 2)) {
        let (a, b) = (v[0], v[1]);
        prop_assume!(!g.is_central(a) && !g.is_central(b) && a != b);
        let pair = mu(a, b, &g).expect("non-central distinct pair");
        let slot = g.commutator_slot2(a, b);
        // lambda = mu + nu caps the valuation from below (valuations
        // truncate at n, hence the min).
        prop_assert!(g.valuation(slot) >= pair.lambda.min(g.n()));
        if pair.mu >= g.n() {
            prop_assert_eq!(slot, 0);
        }
    }

    #[test]
    fn reduction_is_a_homomorphism(
        (g, v) in group_and_elements(&WIDE, 2).prop_filter("needs n >= 2", |(g, _)| g.n() >= 2)
    ) {
        let seq = ExactSequence::new(g.p(), g.n()).expect("params already validated");
        let (a, b) = (v[0], v[1]);
        let small = seq.small();
        prop_assert_eq!(seq.q_project(g.mul(a, b)), small.mul(seq.q_project(a), seq.q_project(b)));
        prop_assert_eq!(seq.q_project(g.inv(a)), small.inv(seq.q_project(a)));
        // Kernel description: exactly the triples with every component
        // divisible by p^(n-1).
        let scale = seq.kernel_scale();
        let in_kernel = a.c1 % scale == 0 && a.c2 % scale == 0 && a.c3 % scale == 0;
        prop_assert_eq!(seq.q_project(a) == small.identity(), in_kernel);
    }

    #[test]
    fn nu_form_reconstructs_the_element((g, v) in group_and_elements(&WIDE, 1)) {
        let h = v[0];
        prop_assume!(!g.is_central(h));
        let prof = nu_profile(h, &g);
        prop_assert_eq!(prof.nu, g.valuation(h.c1).min(g.valuation(h.c3)));
        prop_assert_eq!(prof.nu_form.c2, 0);
        let back = g.pow(prof.nu_form, g.p_pow(prof.nu) as i64);
        prop_assert_eq!((back.c1, back.c3), (h.c1, h.c3));
    }

    #[test]
    fn witness_memberships_hold((g, v) in group_and_elements(&SCAN, 2)) {
        let seq = ExactSequence::new(g.p(), g.n()).expect("params already validated");
        let (h1, h2) = (v[0], v[1]);
        prop_assume!(is_witness_pair_input(h1, h2, &seq));
        let w = witness_pair(h1, h2, &seq).expect("qualifying pair");
        let scale = seq.kernel_scale();
        let s1 = g.commutator_slot2(h1, w.z1);
        prop_assert!(s1 % scale == 0 && s1 != 0, "z1 outside P(h1) - C(h1)");
        prop_assert_eq!(g.commutator_slot2(h2, w.z1), 0, "z1 must centralize h2");
        let s2 = g.commutator_slot2(h2, w.z2);
        prop_assert!(s2 % scale == 0 && s2 != 0, "z2 outside P(h2) - C(h2)");
        prop_assert_eq!(g.commutator_slot2(h1, w.z2), 0, "z2 must centralize h1");
    }

    #[test]
    fn measure_scaling_follows_delta((g, v) in group_and_elements(&SCAN, 2)) {
        let seq = ExactSequence::new(g.p(), g.n()).expect("params already validated");
        let h = Subgroup::closure(g, &v).expect("closure");
        prop_assert_eq!(g.order() % h.order(), 0);
        let d = delta(&h).expect("delta");
        let scale = (g.p() as u128).pow(3 - d);
        prop_assert_eq!(
            pseudo_cd_measure(&h, &seq).expect("pseudo measure"),
            scale * cd_measure(&h).expect("plain measure")
        );
    }

    #[test]
    fn decomposition_identifies_the_slice((g, v) in group_and_elements(&SCAN, 2)) {
        let seq = ExactSequence::new(g.p(), g.n()).expect("params already validated");
        let (h, z) = (v[0], v[1]);
        prop_assume!(!g.is_central(h));
        let slot = g.commutator_slot2(h, z);
        prop_assume!(slot % seq.kernel_scale() == 0);
        let form = representation_decompose(z, h, &seq).expect("member of P(h)");
        prop_assert_eq!(form.ell == 0, slot == 0);
        let back = representation_compose(&form, h, &seq);
        // Composition returns the same class mod center, hence the same
        // slice.
        prop_assert_eq!((back.c1, back.c3), (z.c1, z.c3));
    }
}
