//! Named invariant suites over a chosen group, reported check by check.
//!
//! Every check is deterministic: exhaustive below fixed size thresholds,
//! seeded sampling above them.  A failing check never panics the suite —
//! it is reported with its details so a caller can render all outcomes.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{heisenberg_quotient, s3_fixture, CayleyGroup};
use crate::cent::{
    centralizer_set, p_ell_slice, pseudocentralizer_set, subgroup_centralizer,
    subgroup_pseudocentralizer,
};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::lattice::{all_subgroups, EnumerationCaps};
use crate::measure::{
    build_report, cd_measure, cd_star, cd_star_law, pcd_star, pcd_star_law, pseudo_cd_measure,
    MeasureReport,
};
use crate::params::GroupParams;
use crate::seq::ExactSequence;
use crate::structure::{
    injective_set, is_witness_pair_input, mu, nu_profile, power_relation, representation_compose,
    representation_decompose, special_generating_set, supercommuting_form, witness_pair,
    WitnessCase,
};
use crate::subgroup::{center_subgroup, Subgroup};

/// Exhaustive pair/triple loops below this order, sampling above.
const EXHAUSTIVE_PAIR_ORDER: u64 = 64;
/// Full element pool below this order, sampled pool above.
const POOL_ORDER: u64 = 4096;
/// Cross-check against full multiplication tables below this order.
const ORACLE_TABLE_ORDER: u64 = 1024;
/// Cross-check the whole subgroup lattice against the table oracle below
/// this order.
const ORACLE_LATTICE_ORDER: u64 = 64;
/// Exhaustive ordered-pair witness sweeps below this order.
const WITNESS_SWEEP_ORDER: u64 = 1000;

/// Which family of checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Pseudo,
    Structure,
    Lattice,
    Oracle,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "core" => Ok(Suite::Core),
            "pseudo" => Ok(Suite::Pseudo),
            "structure" => Ok(Suite::Structure),
            "lattice" => Ok(Suite::Lattice),
            "oracle" => Ok(Suite::Oracle),
            "all" => Ok(Suite::All),
            other => Err(Error::ParamsMismatch(format!(
                "unknown suite {other:?}; expected core, pseudo, structure, lattice, oracle or all"
            ))),
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Suite::Core => "core",
            Suite::Pseudo => "pseudo",
            Suite::Structure => "structure",
            Suite::Lattice => "lattice",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// Tuning knobs for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub caps: EnumerationCaps,
    /// Sample count for loops that cannot be exhaustive at this order.
    pub sample_budget: u32,
    /// Seed for all sampled checks; each check derives its own stream.
    pub seed: u64,
    /// Lattice-wide checks are skipped above this group order.
    pub lattice_order_limit: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            caps: EnumerationCaps::default(),
            sample_budget: 1500,
            seed: 0xC0FF_EE00,
            lattice_order_limit: 1024,
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub elapsed_ms: u128,
}

struct Ctx<'a> {
    seq: &'a ExactSequence,
    g: GroupParams,
    opts: &'a VerifyOptions,
    lattice: Option<Vec<Subgroup>>,
    small_lattice: Option<Vec<Subgroup>>,
    report: Option<MeasureReport>,
}

impl<'a> Ctx<'a> {
    fn new(seq: &'a ExactSequence, opts: &'a VerifyOptions) -> Self {
        Ctx {
            seq,
            g: seq.big(),
            opts,
            lattice: None,
            small_lattice: None,
            report: None,
        }
    }

    /// Independent deterministic stream per check name.
    fn rng(&self, label: &str) -> ChaCha8Rng {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ h)
    }

    /// All elements below [`POOL_ORDER`], a seeded sample above.
    fn pool(&self, label: &str) -> Vec<Element> {
        if self.g.order() <= POOL_ORDER {
            self.g.elements().collect()
        } else {
            let mut rng = self.rng(label);
            (0..self.opts.sample_budget)
                .map(|_| self.g.element_at(rng.gen_range(0..self.g.order())))
                .collect()
        }
    }

    fn exhaustive_pairs(&self) -> bool {
        self.g.order() <= EXHAUSTIVE_PAIR_ORDER
    }

    fn lattice(&mut self) -> Result<&[Subgroup]> {
        if self.lattice.is_none() {
            self.lattice = Some(all_subgroups(self.g, &self.opts.caps)?);
        }
        Ok(self.lattice.as_deref().unwrap())
    }

    fn small_lattice(&mut self) -> Result<&[Subgroup]> {
        if self.small_lattice.is_none() {
            self.small_lattice = Some(all_subgroups(self.seq.small(), &self.opts.caps)?);
        }
        Ok(self.small_lattice.as_deref().unwrap())
    }

    fn report(&mut self) -> Result<&MeasureReport> {
        if self.report.is_none() {
            self.report = Some(build_report(self.seq, &self.opts.caps)?);
        }
        Ok(self.report.as_ref().unwrap())
    }
}

/// Element indices of a subgroup as a comparable key.
fn indices(h: &Subgroup) -> Vec<u64> {
    h.element_indices().collect()
}

fn run_check(
    reports: &mut Vec<CheckReport>,
    suite: &str,
    name: &str,
    ctx: &mut Ctx<'_>,
    body: impl FnOnce(&mut Ctx<'_>) -> Result<(bool, String)>,
) {
    let start = Instant::now();
    let (passed, details) = match body(ctx) {
        Ok((passed, details)) => (passed, details),
        Err(e) => (false, format!("errored: {e}")),
    };
    reports.push(CheckReport {
        suite: suite.to_string(),
        name: name.to_string(),
        passed,
        details,
        elapsed_ms: start.elapsed().as_millis(),
    });
}

/// Runs one suite (or all of them) against the group of the sequence.
/// Checks that do not apply at the given parameters are omitted, not faked.
pub fn run_suite(seq: &ExactSequence, suite: Suite, opts: &VerifyOptions) -> Vec<CheckReport> {
    let mut ctx = Ctx::new(seq, opts);
    let mut out = Vec::new();
    if matches!(suite, Suite::Core | Suite::All) {
        core_suite(&mut ctx, &mut out);
    }
    if matches!(suite, Suite::Pseudo | Suite::All) {
        pseudo_suite(&mut ctx, &mut out);
    }
    if matches!(suite, Suite::Structure | Suite::All) {
        structure_suite(&mut ctx, &mut out);
    }
    if matches!(suite, Suite::Lattice | Suite::All) {
        lattice_suite(&mut ctx, &mut out);
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        oracle_suite(&mut ctx, &mut out);
    }
    out
}

fn core_suite(ctx: &mut Ctx<'_>, out: &mut Vec<CheckReport>) {
    run_check(out, "core", "associativity", ctx, |ctx| {
        let g = ctx.g;
        let mut checked = 0u64;
        if ctx.exhaustive_pairs() {
            for a in g.elements() {
                for b in g.elements() {
                    for c in g.elements() {
                        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                            return Ok((false, format!("fails at {a}, {b}, {c}")));
                        }
                        checked += 1;
                    }
                }
            }
            Ok((true, format!("{checked} triples, exhaustive")))
        } else {
            let mut rng = ctx.rng("associativity");
            for _ in 0..ctx.opts.sample_budget {
                let a = g.element_at(rng.gen_range(0..g.order()));
                let b = g.element_at(rng.gen_range(0..g.order()));
                let c = g.element_at(rng.gen_range(0..g.order()));
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    return Ok((false, format!("fails at {a}, {b}, {c}")));
                }
                checked += 1;
            }
            Ok((true, format!("{checked} triples, sampled")))
        }
    });

    run_check(out, "core", "identity-inverse", ctx, |ctx| {
        let g = ctx.g;
        let e = g.identity();
        for a in ctx.pool("identity-inverse") {
            if g.mul(a, e) != a || g.mul(e, a) != a {
                return Ok((false, format!("identity fails at {a}")));
            }
            if g.mul(a, g.inv(a)) != e || g.mul(g.inv(a), a) != e {
                return Ok((false, format!("inverse fails at {a}")));
            }
        }
        Ok((true, "two-sided identity and inverses".into()))
    });

    run_check(out, "core", "power-law", ctx, |ctx| {
        let g = ctx.g;
        let mut rng = ctx.rng("power-law");
        let exponents: Vec<i64> = vec![
            0,
            1,
            2,
            3,
            g.p() as i64,
            g.modulus() as i64,
            g.modulus() as i64 + 1,
            -1,
            -(g.p() as i64),
            rng.gen_range(0..2 * g.modulus() as i64),
        ];
        for a in ctx.pool("power-law").into_iter().take(200) {
            let mut acc = g.identity();
            let top = *exponents.iter().max().unwrap();
            let mut by_iteration = std::collections::HashMap::new();
            by_iteration.insert(0i64, acc);
            for m in 1..=top {
                acc = g.mul(acc, a);
                by_iteration.insert(m, acc);
            }
            for &m in &exponents {
                let direct = g.pow(a, m);
                let expected = if m >= 0 {
                    by_iteration[&m]
                } else {
                    g.inv(by_iteration[&(-m)])
                };
                if direct != expected {
                    return Ok((false, format!("pow({a}, {m}) disagrees with iteration")));
                }
            }
            // Additivity in the exponent.
            let (x, y) = (rng.gen_range(-8..8i64), rng.gen_range(-8..8i64));
            if g.mul(g.pow(a, x), g.pow(a, y)) != g.pow(a, x + y) {
                return Ok((false, format!("pow({a}, {x}+{y}) is not multiplicative")));
            }
        }
        Ok((true, "closed-form powers match iteration".into()))
    });

    run_check(out, "core", "commutator-formula", ctx, |ctx| {
        let g = ctx.g;
        let m = g.modulus();
        let pairs: Vec<(Element, Element)> = if ctx.exhaustive_pairs() {
            g.elements()
                .flat_map(|a| g.elements().map(move |b| (a, b)))
                .collect()
        } else {
            let mut rng = ctx.rng("commutator-formula");
            (0..ctx.opts.sample_budget)
                .map(|_| {
                    (
                        g.element_at(rng.gen_range(0..g.order())),
                        g.element_at(rng.gen_range(0..g.order())),
                    )
                })
                .collect()
        };
        let count = pairs.len();
        for (a, b) in pairs {
            let c = g.commutator(a, b);
            let slot = g.commutator_slot2(a, b);
            let direct = (a.c1 * b.c3 % m + m - a.c3 * b.c1 % m) % m;
            if !g.is_central(c) || c != Element::new(0, slot, 0) || slot != direct {
                return Ok((false, format!("commutator shape fails at {a}, {b}")));
            }
        }
        Ok((
            true,
            format!("{count} pairs: central, slot-2 bilinear form"),
        ))
    });

    run_check(out, "core", "center-size", ctx, |ctx| {
        let g = ctx.g;
        if g.order() <= POOL_ORDER {
            let scan: Vec<Element> = g.elements().filter(|&x| g.is_central(x)).collect();
            let shape_ok = scan.iter().all(|z| z.c1 == 0 && z.c3 == 0);
            let ok = scan.len() as u64 == g.modulus() && shape_ok;
            Ok((ok, format!("center has {} elements", scan.len())))
        } else {
            let ok = (0..g.modulus()).all(|x| g.is_central(Element::new(0, x, 0)));
            Ok((ok, "middle-coordinate axis is central".into()))
        }
    });

    run_check(out, "core", "element-order", ctx, |ctx| {
        let g = ctx.g;
        let cap = if g.p() == 2 {
            2 * g.modulus()
        } else {
            g.modulus()
        };
        let mut top_seen = 1u64;
        for a in ctx.pool("element-order").into_iter().take(400) {
            let ord = g.element_order(a);
            top_seen = top_seen.max(ord);
            if cap % ord != 0 {
                return Ok((false, format!("order {ord} of {a} does not divide {cap}")));
            }
            if g.pow(a, ord as i64) != g.identity() {
                return Ok((false, format!("pow({a}, {ord}) is not the identity")));
            }
        }
        // For p = 2 the doubled bound is genuinely attained.
        if g.p() == 2 {
            let witness = g.element_order(Element::new(1, 0, 1));
            if witness != 2 * g.modulus() {
                return Ok((false, format!("expected doubled order, found {witness}")));
            }
        }
        Ok((
            true,
            format!("orders divide {cap}; largest seen {top_seen}"),
        ))
    });
}

fn pseudo_suite(ctx: &mut Ctx<'_>, out: &mut Vec<CheckReport>) {
    run_check(out, "pseudo", "exactness", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        let p = g.p() as u64;
        // Image of the scaled embedding.
        let mut image = std::collections::HashSet::new();
        for c1 in 0..p {
            for c2 in 0..p {
                for c3 in 0..p {
                    image.insert(seq.f_embed(Element::new(c1, c2, c3))?);
                }
            }
        }
        if image.len() as u64 != p * p * p {
            return Ok((false, "scaled embedding is not injective".into()));
        }
        // Kernel of the projection, against the pool.
        for x in ctx.pool("exactness") {
            let in_image = image.contains(&x);
            if seq.in_kernel(x) != in_image {
                return Ok((false, format!("kernel/image mismatch at {x}")));
            }
        }
        Ok((
            true,
            format!("image of size {} equals projection kernel", image.len()),
        ))
    });

    run_check(out, "pseudo", "homomorphisms", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        let small = seq.small();
        // Projection respects products.
        let pairs: Vec<(Element, Element)> = if ctx.exhaustive_pairs() {
            g.elements()
                .flat_map(|a| g.elements().map(move |b| (a, b)))
                .collect()
        } else {
            let mut rng = ctx.rng("homomorphisms");
            (0..ctx.opts.sample_budget)
                .map(|_| {
                    (
                        g.element_at(rng.gen_range(0..g.order())),
                        g.element_at(rng.gen_range(0..g.order())),
                    )
                })
                .collect()
        };
        for &(a, b) in &pairs {
            if seq.q_project(g.mul(a, b)) != small.mul(seq.q_project(a), seq.q_project(b)) {
                return Ok((false, format!("projection breaks at {a}, {b}")));
            }
        }
        // The embedding respects products once the scale square vanishes.
        if g.n() >= 2 {
            let p = g.p() as u64;
            let dom: Vec<Element> = (0..p)
                .flat_map(|a| (0..p).flat_map(move |b| (0..p).map(move |c| Element::new(a, b, c))))
                .collect();
            for &x in &dom {
                for &y in &dom {
                    let lhs = seq.f_embed(Element::new(
                        (x.c1 + y.c1) % p,
                        (x.c2 + y.c2) % p,
                        (x.c3 + y.c3) % p,
                    ))?;
                    if g.mul(seq.f_embed(x)?, seq.f_embed(y)?) != lhs {
                        return Ok((false, format!("embedding breaks at {x}, {y}")));
                    }
                }
            }
        }
        Ok((true, format!("projection checked on {} pairs", pairs.len())))
    });

    run_check(out, "pseudo", "pseudo-vs-quotient", ctx, |ctx| {
        let seq = ctx.seq;
        let small = seq.small();
        let hs: Vec<Element> = ctx
            .pool("pseudo-vs-quotient")
            .into_iter()
            .take(40)
            .collect();
        for h in hs {
            let pseudo = pseudocentralizer_set(&[h], seq)?;
            for x in ctx.pool("pseudo-vs-quotient-inner") {
                let via_quotient = small.commutator_slot2(seq.q_project(h), seq.q_project(x)) == 0;
                if pseudo.contains_element(x) != via_quotient {
                    return Ok((false, format!("membership mismatch at h={h}, x={x}")));
                }
            }
        }
        Ok((true, "membership equals commuting after projection".into()))
    });

    run_check(out, "pseudo", "pseudo-index", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        for h in ctx.pool("pseudo-index").into_iter().take(80) {
            let cent = centralizer_set(&[h], g)?;
            let pseudo = pseudocentralizer_set(&[h], seq)?;
            if !cent.is_subset_of(&pseudo) {
                return Ok((
                    false,
                    format!("centralizer escapes pseudocentralizer at {h}"),
                ));
            }
            if g.is_central(h) || g.n() == 1 {
                if pseudo.len() != g.order() {
                    return Ok((false, format!("pseudocentralizer of {h} is not everything")));
                }
                continue;
            }
            let nu = nu_profile(h, &g).nu;
            let expect_c = (g.p() as u64).pow(2 * g.n() + nu);
            if cent.len() != expect_c {
                return Ok((false, format!("centralizer of {h} has size {}", cent.len())));
            }
            if pseudo.len() != g.p() as u64 * cent.len() {
                return Ok((false, format!("index of centralizer at {h} is not p")));
            }
        }
        Ok((true, "sizes p^(2n+nu) and index p".into()))
    });

    run_check(out, "pseudo", "slices-partition", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        if g.n() == 1 {
            return Ok((true, "no proper slices at n = 1".into()));
        }
        let hs: Vec<Element> = ctx
            .pool("slices-partition")
            .into_iter()
            .filter(|&h| !g.is_central(h))
            .take(30)
            .collect();
        for h in hs {
            let cent = centralizer_set(&[h], g)?;
            let pseudo = pseudocentralizer_set(&[h], seq)?;
            let mut seen = 0u64;
            for ell in 0..g.p() as u64 {
                let slice = p_ell_slice(h, ell, seq)?;
                if slice.len() != cent.len() {
                    return Ok((
                        false,
                        format!("slice {ell} of {h} has odd size {}", slice.len()),
                    ));
                }
                if !slice.is_subset_of(&pseudo) {
                    return Ok((false, format!("slice {ell} of {h} escapes")));
                }
                if ell == 0 && slice.words() != cent.words() {
                    return Ok((false, format!("slice 0 of {h} is not the centralizer")));
                }
                seen += slice.len();
            }
            if seen != pseudo.len() {
                return Ok((false, format!("slices of {h} do not cover")));
            }
        }
        Ok((true, "p slices of equal size cover, slice 0 central".into()))
    });

    run_check(out, "pseudo", "set-intersection", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        let mut rng = ctx.rng("set-intersection");
        for _ in 0..12 {
            let k = rng.gen_range(2..4usize);
            let set: Vec<Element> = (0..k)
                .map(|_| g.element_at(rng.gen_range(0..g.order())))
                .collect();
            let joint_c = centralizer_set(&set, g)?;
            let joint_p = pseudocentralizer_set(&set, seq)?;
            let mut meet_c = centralizer_set(&set[..1], g)?;
            let mut meet_p = pseudocentralizer_set(&set[..1], seq)?;
            for s in &set[1..] {
                meet_c = meet_c.intersect(&centralizer_set(std::slice::from_ref(s), g)?);
                meet_p = meet_p.intersect(&pseudocentralizer_set(std::slice::from_ref(s), seq)?);
            }
            if joint_c.words() != meet_c.words() || joint_p.words() != meet_p.words() {
                return Ok((false, format!("intersection law fails for {set:?}")));
            }
        }
        Ok((true, "joint constraints equal member intersections".into()))
    });

    run_check(out, "pseudo", "order-factorization", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        let subs: Vec<Subgroup> = if g.order() <= ctx.opts.lattice_order_limit {
            ctx.lattice()?.to_vec()
        } else {
            ctx.pool("order-factorization")
                .into_iter()
                .take(25)
                .map(|a| Subgroup::closure(g, &[a]))
                .collect::<Result<_>>()?
        };
        for h in &subs {
            let f = seq.order_factorization(h)?;
            let image = seq.image_subgroup(h)?;
            if f.kernel_part * f.image_part != f.order || f.order != h.order() {
                return Ok((
                    false,
                    format!("factorization breaks on order {}", h.order()),
                ));
            }
            if f.image_part != image.order() {
                return Ok((
                    false,
                    format!("image part is not the image order ({})", f.image_part),
                ));
            }
        }
        Ok((
            true,
            format!("{} subgroups factor multiplicatively", subs.len()),
        ))
    });
}

fn structure_suite(ctx: &mut Ctx<'_>, out: &mut Vec<CheckReport>) {
    run_check(out, "structure", "nu-consistency", ctx, |ctx| {
        let g = ctx.g;
        let e1 = Element::new(1, 0, 0);
        let e3 = Element::new(0, 0, 1);
        for h in ctx.pool("nu-consistency") {
            if g.is_central(h) {
                continue;
            }
            let prof = nu_profile(h, &g);
            let commutator_min = g
                .valuation(g.commutator_slot2(h, e1))
                .min(g.valuation(g.commutator_slot2(h, e3)));
            if prof.nu != commutator_min {
                return Ok((false, format!("nu of {h} disagrees with commutators")));
            }
            if !g.is_nondegenerate(prof.nu_form) {
                return Ok((false, format!("reduced form of {h} is degenerate")));
            }
            let rebuilt = g.pow(prof.nu_form, g.p_pow(prof.nu) as i64);
            if !g.equiv_mod_center(h, rebuilt) {
                return Ok((false, format!("p^nu-th power of reduced form misses {h}")));
            }
        }
        Ok((true, "nu equals minimal commutator valuation".into()))
    });

    run_check(out, "structure", "mu-lambda-bound", ctx, |ctx| {
        let g = ctx.g;
        let mut rng = ctx.rng("mu-lambda-bound");
        let noncentral: Vec<Element> = ctx
            .pool("mu-lambda-bound")
            .into_iter()
            .filter(|&h| !g.is_central(h))
            .collect();
        let mut checked = 0;
        while checked < ctx.opts.sample_budget.min(4000) {
            let a = noncentral[rng.gen_range(0..noncentral.len())];
            let b = noncentral[rng.gen_range(0..noncentral.len())];
            if a == b {
                continue;
            }
            checked += 1;
            let ab = mu(a, b, &g)?;
            let ba = mu(b, a, &g)?;
            if ab.mu != ba.mu {
                return Ok((false, format!("mu is not symmetric on {a}, {b}")));
            }
            let slot = g.commutator_slot2(a, b);
            // Valuations are truncated at n, so the bound is too.
            if g.valuation(slot) < ab.lambda.min(g.n()) {
                return Ok((
                    false,
                    format!("commutator valuation undercuts lambda on {a}, {b}"),
                ));
            }
            if ab.mu >= g.n() && slot != 0 {
                return Ok((false, format!("mu >= n but {a}, {b} do not commute")));
            }
        }
        Ok((true, format!("{checked} pairs bounded and symmetric")))
    });

    run_check(out, "structure", "supercommuting-soundness", ctx, |ctx| {
        let g = ctx.g;
        let mut rng = ctx.rng("supercommuting-soundness");
        let noncentral: Vec<Element> = ctx
            .pool("supercommuting-soundness")
            .into_iter()
            .filter(|&h| !g.is_central(h))
            .collect();
        let mut hits = 0;
        for _ in 0..600 {
            let h1 = noncentral[rng.gen_range(0..noncentral.len())];
            let h2 = noncentral[rng.gen_range(0..noncentral.len())];
            let form = supercommuting_form(h2, h1, &g)?;
            if let Some(f) = form {
                hits += 1;
                let base = Element::new(f.r1, 0, f.r3);
                if !g.equiv_mod_center(h2, g.pow(base, f.exponent as i64)) {
                    return Ok((false, format!("certificate of {h2} against {h1} is wrong")));
                }
                if g.commutator_slot2(h1, h2) != 0 {
                    return Ok((
                        false,
                        format!("supercommuting pair {h1}, {h2} fails to commute"),
                    ));
                }
                if f.s1 != g.valuation(f.r1) || f.s3 != g.valuation(f.r3) {
                    return Ok((false, "certificate valuations mislabelled".into()));
                }
            }
        }
        Ok((true, format!("{hits} certificates rechecked")))
    });

    run_check(out, "structure", "special-set-normalization", ctx, |ctx| {
        let g = ctx.g;
        let mut rng = ctx.rng("special-set-normalization");
        let mut cases = 0;
        for _ in 0..40 {
            let k = rng.gen_range(1..4usize);
            let gens: Vec<Element> = (0..k)
                .map(|_| g.element_at(rng.gen_range(0..g.order())))
                .collect();
            let s = special_generating_set(&gens, &g)?;
            cases += 1;
            if !s.is_special() {
                return Ok((false, format!("normalization of {gens:?} is not special")));
            }
            let before = Subgroup::closure(g, &gens)?;
            let after = Subgroup::closure(g, &s.generators())?;
            if before != after {
                return Ok((
                    false,
                    format!("normalization of {gens:?} changed the subgroup"),
                ));
            }
            if let Some(h1) = s.nu_witness_element() {
                let nu_min = s
                    .noncentral
                    .iter()
                    .map(|&e| nu_profile(e, &g).nu)
                    .min()
                    .unwrap();
                if nu_profile(h1, &g).nu != nu_min {
                    return Ok((false, format!("witness of {gens:?} lost minimality")));
                }
            }
        }
        Ok((
            true,
            format!("{cases} generator lists normalized and rechecked"),
        ))
    });

    run_check(out, "structure", "injective-set-law", ctx, |ctx| {
        let g = ctx.g;
        let mut rng = ctx.rng("injective-set-law");
        for _ in 0..40 {
            let k = rng.gen_range(1..4usize);
            let gens: Vec<Element> = (0..k)
                .map(|_| g.element_at(rng.gen_range(0..g.order())))
                .collect();
            let s = special_generating_set(&gens, &g)?;
            let inj = injective_set(&s)?;
            if inj.members.len() != s.noncentral.len().min(2) {
                return Ok((false, format!("injective size wrong for {gens:?}")));
            }
            for m in &inj.members {
                if !s.noncentral.contains(m) {
                    return Ok((
                        false,
                        format!("injective member outside the set for {gens:?}"),
                    ));
                }
            }
            if let [h1, h2] = inj.members[..] {
                if power_relation(h2, h1, &g).is_some() || power_relation(h1, h2, &g).is_some() {
                    return Ok((false, format!("injective pair power-related for {gens:?}")));
                }
            }
        }
        Ok((
            true,
            "sizes min(2, non-central count), power-free pairs".into(),
        ))
    });

    run_check(
        out,
        "structure",
        "pseudo-centralizer-index-law",
        ctx,
        |ctx| {
            let seq = ctx.seq;
            let g = ctx.g;
            if g.n() == 1 {
                return Ok((
                    true,
                    "degenerate at n = 1: pseudocentralizer is everything".into(),
                ));
            }
            let subs: Vec<Subgroup> = if g.order() <= ctx.opts.lattice_order_limit {
                ctx.lattice()?.to_vec()
            } else {
                let mut rng = ctx.rng("pseudo-centralizer-index-law");
                (0..20)
                    .map(|_| {
                        let a = g.element_at(rng.gen_range(0..g.order()));
                        let b = g.element_at(rng.gen_range(0..g.order()));
                        Subgroup::closure(g, &[a, b])
                    })
                    .collect::<Result<_>>()?
            };
            for h in &subs {
                let special = special_generating_set(h.generators(), &g)?;
                let inj = injective_set(&special)?;
                let c = subgroup_centralizer(h)?;
                let p = subgroup_pseudocentralizer(h, seq)?;
                let expect = g.p_pow(inj.members.len() as u32) * c.order();
                if p.order() != expect {
                    return Ok((
                        false,
                        format!(
                            "order {}: |P| = {} but p^|I| |C| = {expect}",
                            h.order(),
                            p.order()
                        ),
                    ));
                }
            }
            Ok((true, format!("index p^|I| on {} subgroups", subs.len())))
        },
    );

    run_check(out, "structure", "quotient-centralizer-drop", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        if g.n() == 1 || g.order() > ctx.opts.lattice_order_limit {
            return Ok((
                true,
                "needs n >= 2 and an enumerable lattice; nothing to do".into(),
            ));
        }
        for h in ctx.lattice()?.to_vec() {
            let special = special_generating_set(h.generators(), &g)?;
            let inj = injective_set(&special)?;
            let delta = 3 - inj.members.len() as u64;
            let c_big = subgroup_centralizer(&h)?;
            let image = seq.image_subgroup(&h)?;
            let c_small = subgroup_centralizer(&image)?;
            if c_big.order() != (g.p() as u64).pow(delta as u32) * c_small.order() {
                return Ok((
                    false,
                    format!(
                        "centralizer drop fails on a subgroup of order {}",
                        h.order()
                    ),
                ));
            }
        }
        Ok((true, "centralizer orders drop by exactly p^delta".into()))
    });

    run_check(out, "structure", "measure-scaling", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        if g.n() == 1 || g.order() > ctx.opts.lattice_order_limit {
            return Ok((
                true,
                "needs n >= 2 and an enumerable lattice; nothing to do".into(),
            ));
        }
        for h in ctx.lattice()?.to_vec() {
            let special = special_generating_set(h.generators(), &g)?;
            let inj = injective_set(&special)?;
            let delta = 3 - inj.members.len() as u32;
            let m = cd_measure(&h)?;
            let ms = pseudo_cd_measure(&h, seq)?;
            if ms != (g.p() as u128).pow(3 - delta) * m {
                return Ok((
                    false,
                    format!("measure scaling fails at order {}", h.order()),
                ));
            }
        }
        Ok((
            true,
            "pseudo measure is p^(3-delta) times the plain one".into(),
        ))
    });

    run_check(out, "structure", "witness-sweep", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        if g.n() == 1 {
            return Ok((true, "no proper pseudocentralizers at n = 1".into()));
        }
        let exhaustive = g.order() <= WITNESS_SWEEP_ORDER;
        let pairs: Vec<(Element, Element)> = if exhaustive {
            g.elements()
                .flat_map(|a| g.elements().map(move |b| (a, b)))
                .collect()
        } else {
            let mut rng = ctx.rng("witness-sweep");
            (0..ctx.opts.sample_budget)
                .map(|_| {
                    (
                        g.element_at(rng.gen_range(0..g.order())),
                        g.element_at(rng.gen_range(0..g.order())),
                    )
                })
                .collect()
        };
        let scale = seq.kernel_scale();
        let mut qualifying = 0u64;
        let mut mirrored = 0u64;
        for (h1, h2) in pairs {
            if !is_witness_pair_input(h1, h2, seq) {
                continue;
            }
            qualifying += 1;
            let w = witness_pair(h1, h2, seq)?;
            if w.case == WitnessCase::SearchFallback {
                return Ok((false, format!("closed form failed on {h1}, {h2}")));
            }
            if w.mirrored {
                mirrored += 1;
            }
            let s11 = g.commutator_slot2(h1, w.z1);
            let s22 = g.commutator_slot2(h2, w.z2);
            let ok = s11 % scale == 0
                && s11 != 0
                && g.commutator_slot2(h2, w.z1) == 0
                && g.commutator_slot2(h1, w.z2) == 0
                && s22 % scale == 0
                && s22 != 0;
            if !ok {
                return Ok((false, format!("witness memberships fail on {h1}, {h2}")));
            }
        }
        if qualifying == 0 || (exhaustive && mirrored == 0) {
            return Ok((
                false,
                format!("sweep degenerate: {qualifying} qualifying pairs"),
            ));
        }
        Ok((
            true,
            format!("{qualifying} qualifying pairs, {mirrored} mirrored, no fallback"),
        ))
    });

    run_check(out, "structure", "representation-coverage", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        if g.n() == 1 {
            return Ok((true, "no proper pseudocentralizers at n = 1".into()));
        }
        let hs: Vec<Element> = if g.order() <= EXHAUSTIVE_PAIR_ORDER {
            g.elements().filter(|&h| !g.is_central(h)).collect()
        } else {
            ctx.pool("representation-coverage")
                .into_iter()
                .filter(|&h| !g.is_central(h))
                .take(10)
                .collect()
        };
        let mut decomposed = 0u64;
        for h in hs {
            let cent = centralizer_set(&[h], g)?;
            let pseudo = pseudocentralizer_set(&[h], seq)?;
            for z in pseudo.elements() {
                let form = representation_decompose(z, h, seq)?;
                decomposed += 1;
                let rebuilt = representation_compose(&form, h, seq);
                if !g.equiv_mod_center(z, rebuilt) {
                    return Ok((false, format!("reconstruction of {z} against {h} drifts")));
                }
                if (form.ell == 0) != cent.contains_element(z) {
                    return Ok((false, format!("slice label of {z} against {h} is wrong")));
                }
            }
        }
        Ok((true, format!("{decomposed} members decomposed and rebuilt")))
    });
}

fn lattice_suite(ctx: &mut Ctx<'_>, out: &mut Vec<CheckReport>) {
    if ctx.g.order() > ctx.opts.lattice_order_limit {
        run_check(out, "lattice", "skipped", ctx, |ctx| {
            Ok((
                true,
                format!(
                    "order {} above lattice limit {}; raise the limit to enumerate",
                    ctx.g.order(),
                    ctx.opts.lattice_order_limit
                ),
            ))
        });
        return;
    }

    run_check(out, "lattice", "enumeration-valid", ctx, |ctx| {
        let g = ctx.g;
        let subs = ctx.lattice()?.to_vec();
        let mut rng = ctx.rng("enumeration-valid");
        for h in &subs {
            if g.order() % h.order() != 0 {
                return Ok((false, format!("order {} violates divisibility", h.order())));
            }
            let members: Vec<Element> = h.elements().collect();
            if !h.contains(g.identity()) {
                return Ok((false, "a listed subgroup misses the identity".into()));
            }
            let plan: Vec<(usize, usize)> = if members.len() <= 64 {
                (0..members.len())
                    .flat_map(|i| (0..members.len()).map(move |j| (i, j)))
                    .collect()
            } else {
                (0..4096)
                    .map(|_| {
                        (
                            rng.gen_range(0..members.len()),
                            rng.gen_range(0..members.len()),
                        )
                    })
                    .collect()
            };
            for (i, j) in plan {
                if !h.contains(g.mul(members[i], members[j])) {
                    return Ok((
                        false,
                        format!("a listed set of order {} is not closed", h.order()),
                    ));
                }
            }
        }
        let distinct: std::collections::HashSet<Vec<u64>> = subs.iter().map(indices).collect();
        if distinct.len() != subs.len() {
            return Ok((false, "duplicate subgroups listed".into()));
        }
        Ok((
            true,
            format!("{} subgroups closed, distinct, Lagrange", subs.len()),
        ))
    });

    run_check(out, "lattice", "lattice-closure", ctx, |ctx| {
        let g = ctx.g;
        let subs = ctx.lattice()?.to_vec();
        let index: std::collections::HashSet<Vec<u64>> = subs.iter().map(indices).collect();
        if !index.contains(&indices(&center_subgroup(g)?))
            || !index.contains(&indices(&Subgroup::whole_group(g)?))
            || !index.contains(&indices(&Subgroup::trivial(g)?))
        {
            return Ok((
                false,
                "center, whole group or trivial subgroup missing".into(),
            ));
        }
        let mut rng = ctx.rng("lattice-closure");
        for _ in 0..60 {
            let a = &subs[rng.gen_range(0..subs.len())];
            let b = &subs[rng.gen_range(0..subs.len())];
            let join = a.join(b)?;
            let meet = a.intersection(b)?;
            if !index.contains(&indices(&join)) || !index.contains(&indices(&meet)) {
                return Ok((false, "a join or meet escapes the enumeration".into()));
            }
        }
        Ok((
            true,
            "closed under sampled joins and meets; extremes present".into(),
        ))
    });

    run_check(out, "lattice", "measure-maxima", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        let report = ctx.report()?.clone();
        if report.m_star != cd_star_law(g).to_string() {
            return Ok((
                false,
                format!("centralizer maximum {} off closed form", report.m_star),
            ));
        }
        if report.ms_star != pcd_star_law(g).to_string() {
            return Ok((
                false,
                format!("pseudo maximum {} off closed form", report.ms_star),
            ));
        }
        let caps = crate::lattice::EnumerationCaps::default();
        let (m_star, cd_family) = cd_star(g, &caps)?;
        let (ms_star, pcd_family) = pcd_star(seq, &caps)?;
        if m_star.to_string() != report.m_star || ms_star.to_string() != report.ms_star {
            return Ok((false, "standalone maxima disagree with the report".into()));
        }
        if cd_family.len() != report.cd.len() || pcd_family.len() != report.pcd.len() {
            return Ok((
                false,
                "attaining families differ between report and standalone scan".into(),
            ));
        }
        let whole_attains = report
            .cd
            .iter()
            .any(|&i| report.table[i].order == g.order());
        let center_attains = report
            .cd
            .iter()
            .any(|&i| report.table[i].order == g.modulus());
        if !whole_attains || !center_attains {
            return Ok((
                false,
                "whole group or center misses the centralizer maximum".into(),
            ));
        }
        if g.n() == 1 && report.pcd.len() != 1 {
            return Ok((false, "pseudo maximum not unique at n = 1".into()));
        }
        Ok((
            true,
            format!("maxima {} and {}", report.m_star, report.ms_star),
        ))
    });

    run_check(out, "lattice", "pcd-is-cd-preimage", ctx, |ctx| {
        let seq = ctx.seq;
        if ctx.g.n() == 1 {
            return Ok((true, "projection is degenerate at n = 1".into()));
        }
        let small_subs = ctx.small_lattice()?.to_vec();
        let mut small_measured: Vec<(u128, &Subgroup)> = Vec::new();
        for h in &small_subs {
            small_measured.push((cd_measure(h)?, h));
        }
        let best = small_measured.iter().map(|m| m.0).max().unwrap();
        let mut expected: Vec<Vec<u64>> = Vec::new();
        for (m, h) in small_measured {
            if m == best {
                expected.push(indices(&seq.preimage_subgroup(h)?));
            }
        }
        expected.sort();
        let report = ctx.report()?.clone();
        let lattice = ctx.lattice()?.to_vec();
        let mut actual: Vec<Vec<u64>> = report.pcd.iter().map(|&i| indices(&lattice[i])).collect();
        actual.sort();
        let ok = actual == expected;
        Ok((
            ok,
            format!(
                "{} pseudo-maximal subgroups, preimages of {} below",
                actual.len(),
                expected.len()
            ),
        ))
    });

    run_check(out, "lattice", "pcd-inside-cd", ctx, |ctx| {
        let report = ctx.report()?;
        let cd: std::collections::HashSet<usize> = report.cd.iter().copied().collect();
        let ok = report.pcd.iter().all(|i| cd.contains(i));
        Ok((
            ok,
            format!(
                "{} of {} pseudo maximizers also maximize the plain measure",
                report.pcd.iter().filter(|i| cd.contains(i)).count(),
                report.pcd.len()
            ),
        ))
    });

    run_check(out, "lattice", "preimage-measure-identities", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        if g.n() == 1 {
            return Ok((true, "no proper quotient at n = 1".into()));
        }
        let p = g.p() as u128;
        for h in ctx.small_lattice()?.to_vec() {
            let pre = seq.preimage_subgroup(&h)?;
            let m_small = cd_measure(&h)?;
            if cd_measure(&pre)? != p.pow(4) * m_small {
                return Ok((
                    false,
                    format!("plain measure identity fails at order {}", h.order()),
                ));
            }
            if pseudo_cd_measure(&pre, seq)? != p.pow(6) * m_small {
                return Ok((
                    false,
                    format!("pseudo measure identity fails at order {}", h.order()),
                ));
            }
        }
        Ok((true, "preimages scale measures by p^4 and p^6".into()))
    });
}

fn oracle_suite(ctx: &mut Ctx<'_>, out: &mut Vec<CheckReport>) {
    run_check(out, "oracle", "table-mul-agrees", ctx, |ctx| {
        let g = ctx.g;
        if g.order() > ORACLE_TABLE_ORDER {
            return Ok((
                true,
                format!("order {} above table limit; nothing to tabulate", g.order()),
            ));
        }
        let t = CayleyGroup::from_heisenberg(&g)?;
        for a in g.elements() {
            for b in g.elements() {
                let via = t.mul(g.index_of(a) as u32, g.index_of(b) as u32) as u64;
                if via != g.index_of(g.mul(a, b)) {
                    return Ok((false, format!("table disagrees at {a}, {b}")));
                }
            }
        }
        let pairs = g.order() * g.order();
        Ok((true, format!("{pairs} products agree with the table")))
    });

    run_check(out, "oracle", "table-centralizer-agrees", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        if g.order() > ORACLE_TABLE_ORDER {
            return Ok((
                true,
                format!("order {} above table limit; nothing to tabulate", g.order()),
            ));
        }
        let (big, q) = heisenberg_quotient(seq)?;
        for h in ctx.pool("table-centralizer-agrees").into_iter().take(30) {
            let idx = g.index_of(h) as u32;
            let via_table: Vec<u64> = big
                .centralizer_of(&[idx])
                .into_iter()
                .map(|x| x as u64)
                .collect();
            let direct: Vec<u64> = centralizer_set(&[h], g)?.iter().collect();
            if via_table != direct {
                return Ok((false, format!("centralizers of {h} disagree")));
            }
            let via_table: Vec<u64> = big
                .pseudocentralizer_of(&[idx], &q)
                .into_iter()
                .map(|x| x as u64)
                .collect();
            let direct: Vec<u64> = pseudocentralizer_set(&[h], seq)?.iter().collect();
            if via_table != direct {
                return Ok((false, format!("pseudocentralizers of {h} disagree")));
            }
        }
        Ok((true, "scanned centralizers match the table oracle".into()))
    });

    run_check(out, "oracle", "table-lattice-agrees", ctx, |ctx| {
        let seq = ctx.seq;
        let g = ctx.g;
        if g.order() > ORACLE_LATTICE_ORDER {
            return Ok((
                true,
                format!(
                    "order {} above the table-lattice limit; nothing to compare",
                    g.order()
                ),
            ));
        }
        let (big, q) = heisenberg_quotient(seq)?;
        let budget = ctx.opts.caps.max_candidates;
        let table_subs = big.all_subgroups(budget)?;
        let subs = ctx.lattice()?.to_vec();
        let mut ours: Vec<Vec<u64>> = subs
            .iter()
            .map(|h| {
                let mut v: Vec<u64> = h.elements().map(|e| g.index_of(e)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        ours.sort();
        let mut theirs: Vec<Vec<u64>> = table_subs
            .iter()
            .map(|s| s.iter().map(|&x| x as u64).collect())
            .collect();
        theirs.sort();
        if ours != theirs {
            return Ok((
                false,
                format!("{} vs {} subgroups", ours.len(), theirs.len()),
            ));
        }
        // Measures and maximizing families.
        let report = ctx.report()?.clone();
        let (cd_max, cd_sets) = big.oracle_cd(budget)?;
        let (pcd_max, pcd_sets) = big.oracle_pcd(&q, budget)?;
        if cd_max.to_string() != report.m_star || pcd_max.to_string() != report.ms_star {
            return Ok((false, "maxima disagree with the table oracle".into()));
        }
        let family = |sets: Vec<Vec<u32>>| -> Vec<Vec<u64>> {
            let mut v: Vec<Vec<u64>> = sets
                .into_iter()
                .map(|s| s.into_iter().map(|x| x as u64).collect())
                .collect();
            v.sort();
            v
        };
        let report_family = |idxs: &[usize]| -> Vec<Vec<u64>> {
            let mut v: Vec<Vec<u64>> = idxs
                .iter()
                .map(|&i| {
                    let mut e: Vec<u64> = subs[i].elements().map(|e| g.index_of(e)).collect();
                    e.sort_unstable();
                    e
                })
                .collect();
            v.sort();
            v
        };
        if family(cd_sets) != report_family(&report.cd)
            || family(pcd_sets) != report_family(&report.pcd)
        {
            return Ok((
                false,
                "maximizing families disagree with the table oracle".into(),
            ));
        }
        Ok((
            true,
            format!(
                "{} subgroups and both maximizing families agree",
                ours.len()
            ),
        ))
    });

    run_check(out, "oracle", "s3-contrast", ctx, |_ctx| {
        let (s3, q) = s3_fixture();
        if !q.is_homomorphism(&s3) {
            return Ok((false, "parity map is not a homomorphism".into()));
        }
        let (cd_max, cd_sets) = s3.oracle_cd(10_000)?;
        let (pcd_max, pcd_sets) = s3.oracle_pcd(&q, 10_000)?;
        let ok = cd_max == 9
            && cd_sets.len() == 1
            && cd_sets[0].len() == 3
            && pcd_max == 36
            && pcd_sets.len() == 1
            && pcd_sets[0].len() == 6;
        Ok((ok, format!(
            "plain maximum {cd_max} on the 3-element subgroup, pseudo maximum {pcd_max} on the whole group"
        )))
    });
}
