//! Complete subgroup lattice enumeration at desk scale.
//!
//! Strategy: every subgroup is a join of cyclic subgroups, so enumerate the
//! distinct cyclic subgroups first and then saturate under joins with those
//! seeds.  Joins run as index-level closure BFS over a dense multiplication
//! table when the group is small enough for one, which keeps the inner loop
//! at array lookups.  Enumeration order is deterministic and the result is
//! sorted by the canonical (order, bitset) key.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::params::GroupParams;
use crate::subgroup::{closure_indices, Subgroup};
use std::collections::HashMap;
use std::time::{Duration, Instant};

/// Budgets protecting the enumeration from runaway instances.  A candidate
/// is one attempted closure; the default budget comfortably covers every
/// group up to order 729 and needs raising for order 512 and beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    pub max_candidates: u64,
    pub wall_limit: Duration,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_candidates: 2_000_000,
            wall_limit: Duration::from_secs(30 * 60),
        }
    }
}

impl EnumerationCaps {
    pub fn with_max_candidates(max_candidates: u64) -> Self {
        EnumerationCaps {
            max_candidates,
            ..Default::default()
        }
    }
}

/// Largest group order that gets a dense index multiplication table; above
/// this, closures fall back to coordinate arithmetic.
const TABLE_LIMIT: u64 = 2048;

/// Index-level multiplication, table-backed when affordable.
pub(crate) struct IndexMul {
    params: GroupParams,
    table: Option<Vec<u32>>,
    order: u64,
}

impl IndexMul {
    pub(crate) fn new(params: GroupParams) -> IndexMul {
        let order = params.order();
        let table = (order <= TABLE_LIMIT).then(|| {
            let n = order as usize;
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                let a = params.element_at(i as u64);
                for j in 0..n {
                    let b = params.element_at(j as u64);
                    t[i * n + j] = params.index_of(params.mul(a, b)) as u32;
                }
            }
            t
        });
        IndexMul {
            params,
            table,
            order,
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.table {
            Some(t) => t[(a * self.order + b) as usize] as u64,
            None => {
                let x = self.params.element_at(a);
                let y = self.params.element_at(b);
                self.params.index_of(self.params.mul(x, y))
            }
        }
    }
}

struct Budget {
    caps: EnumerationCaps,
    started: Instant,
    candidates: u64,
}

impl Budget {
    fn new(caps: EnumerationCaps) -> Budget {
        Budget {
            caps,
            started: Instant::now(),
            candidates: 0,
        }
    }

    fn spend(&mut self) -> Result<()> {
        self.candidates += 1;
        if self.candidates > self.caps.max_candidates {
            return Err(Error::CapExceeded(format!(
                "candidate budget {} exhausted",
                self.caps.max_candidates
            )));
        }
        // Checking the clock every candidate would be wasteful.
        if self.candidates.is_multiple_of(1024) && self.started.elapsed() > self.caps.wall_limit {
            return Err(Error::CapExceeded(format!(
                "wall budget {:?} exhausted after {} candidates",
                self.caps.wall_limit, self.candidates
            )));
        }
        Ok(())
    }
}

/// Every subgroup of H(p^n), sorted canonically.
pub fn all_subgroups(g: GroupParams, caps: &EnumerationCaps) -> Result<Vec<Subgroup>> {
    let mul_backend = IndexMul::new(g);
    let mul = |a: u64, b: u64| mul_backend.mul(a, b);
    let mut budget = Budget::new(*caps);

    let mut by_words: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut subs: Vec<Subgroup> = Vec::new();
    // (bitset index, witness generator) per distinct cyclic subgroup.
    let mut seeds: Vec<(usize, Element)> = Vec::new();

    for e in g.elements() {
        budget.spend()?;
        let gens = if e == Element::IDENTITY {
            vec![]
        } else {
            vec![e]
        };
        let bits = closure_indices(&g, &gens, &mul)?;
        let key = bits.words().to_vec();
        if let std::collections::hash_map::Entry::Vacant(slot) = by_words.entry(key) {
            let sub = Subgroup::from_closed_set(g, bits)?;
            slot.insert(subs.len());
            seeds.push((subs.len(), e));
            subs.push(sub);
        }
    }

    let mut frontier: Vec<usize> = (0..subs.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &si in &frontier {
            for &(seed_idx, seed_gen) in &seeds {
                if subs[seed_idx].bits().is_subset_of(subs[si].bits()) {
                    continue;
                }
                budget.spend()?;
                let mut gens = subs[si].generators().to_vec();
                gens.push(seed_gen);
                let bits = closure_indices(&g, &gens, &mul)?;
                let key = bits.words().to_vec();
                if let std::collections::hash_map::Entry::Vacant(slot) = by_words.entry(key) {
                    let sub = Subgroup::from_closed_set(g, bits)?;
                    slot.insert(subs.len());
                    next.push(subs.len());
                    subs.push(sub);
                }
            }
        }
        frontier = next;
    }

    subs.sort_by_key(|a| a.sort_key());
    Ok(subs)
}
