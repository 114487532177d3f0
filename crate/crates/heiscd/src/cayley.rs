//! Table-based finite group oracle, independent of the modular arithmetic
//! layer.
//!
//! Everything here works from an explicit multiplication table: subgroup
//! enumeration by repeated one-element extensions, centralizers by direct
//! scan, and quotient-pulled-back centralizers through an explicit
//! homomorphism table.  The point is cross-validation — results ported from
//! tables must match the arithmetic implementations bit for bit on every
//! group small enough to tabulate.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::params::GroupParams;
use crate::seq::ExactSequence;

/// Largest group order we are willing to tabulate (the table is quadratic).
pub const MAX_TABLE_ORDER: u64 = 4096;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    size: u32,
    /// Row-major: `table[a * size + b]` is the product ab.
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: u32,
}

/// A surjective homomorphism onto another table group, stored pointwise.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub map: Vec<u32>,
    pub target: CayleyGroup,
}

impl CayleyGroup {
    /// Builds a group from an untrusted table, checking every axiom:
    /// squareness, closure, two-sided identity, inverses, associativity.
    pub fn from_table(rows: &[Vec<u32>]) -> Result<CayleyGroup> {
        let size = rows.len() as u32;
        if size == 0 {
            return Err(Error::NotASubgroup("empty multiplication table".into()));
        }
        if size as u64 > MAX_TABLE_ORDER {
            return Err(Error::TooLarge {
                order: size as u64,
                limit: MAX_TABLE_ORDER,
            });
        }
        let mut table = Vec::with_capacity((size * size) as usize);
        for row in rows {
            if row.len() as u32 != size {
                return Err(Error::NotASubgroup(
                    "multiplication table is not square".into(),
                ));
            }
            for &v in row {
                if v >= size {
                    return Err(Error::NotASubgroup(format!("table entry {v} out of range")));
                }
                table.push(v);
            }
        }
        let at = |a: u32, b: u32| table[(a * size + b) as usize];
        let identity = (0..size)
            .find(|&e| (0..size).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::NotASubgroup("table has no identity".into()))?;
        let mut inv = vec![0u32; size as usize];
        for a in 0..size {
            inv[a as usize] = (0..size)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::NotASubgroup(format!("no inverse for {a}")))?;
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotASubgroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(CayleyGroup {
            size,
            table,
            inv,
            identity,
        })
    }

    /// Tabulates a Heisenberg group.  The arithmetic layer supplies the
    /// products; the group laws themselves are its responsibility.
    pub fn from_heisenberg(g: &GroupParams) -> Result<CayleyGroup> {
        if g.order() > MAX_TABLE_ORDER {
            return Err(Error::TooLarge {
                order: g.order(),
                limit: MAX_TABLE_ORDER,
            });
        }
        let size = g.order() as u32;
        let elements: Vec<Element> = g.elements().collect();
        let mut table = Vec::with_capacity((size * size) as usize);
        for &a in &elements {
            for &b in &elements {
                table.push(g.index_of(g.mul(a, b)) as u32);
            }
        }
        let inv = elements
            .iter()
            .map(|&a| g.index_of(g.inv(a)) as u32)
            .collect();
        let identity = g.index_of(g.identity()) as u32;
        Ok(CayleyGroup {
            size,
            table,
            inv,
            identity,
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[(a * self.size + b) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// a^-1 b^-1 a b, straight off the table.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Closure of a generating set, as a sorted element list.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let words = (self.size as usize).div_ceil(64);
        let mut seen = vec![0u64; words];
        let mark = |seen: &mut Vec<u64>, x: u32| {
            let (w, b) = (x as usize / 64, x as usize % 64);
            let fresh = seen[w] & (1 << b) == 0;
            seen[w] |= 1 << b;
            fresh
        };
        let mut frontier = vec![self.identity];
        mark(&mut seen, self.identity);
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if mark(&mut seen, y) {
                    frontier.push(y);
                }
            }
        }
        (0..self.size)
            .filter(|&x| seen[x as usize / 64] >> (x % 64) & 1 == 1)
            .collect()
    }

    /// Every subgroup, by saturating one-element extensions starting from
    /// the trivial subgroup.  Complete because any subgroup is reached by
    /// adding its generators one at a time.  `cap` bounds the closure count.
    pub fn all_subgroups(&self, cap: u64) -> Result<Vec<Vec<u32>>> {
        let mut seen: std::collections::HashSet<Vec<u32>> = std::collections::HashSet::new();
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut frontier = vec![vec![self.identity]];
        seen.insert(frontier[0].clone());
        out.push(frontier[0].clone());
        let mut spent = 0u64;
        while let Some(sub) = frontier.pop() {
            for x in 0..self.size {
                if sub.binary_search(&x).is_ok() {
                    continue;
                }
                spent += 1;
                if spent > cap {
                    return Err(Error::CapExceeded(format!(
                        "table subgroup enumeration exceeded {cap} closures"
                    )));
                }
                let mut gens = sub.clone();
                gens.push(x);
                let ext = self.closure(&gens);
                if seen.insert(ext.clone()) {
                    out.push(ext.clone());
                    frontier.push(ext);
                }
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(out)
    }

    /// Elements commuting with everything in the subset.
    pub fn centralizer_of(&self, subset: &[u32]) -> Vec<u32> {
        (0..self.size)
            .filter(|&x| subset.iter().all(|&s| self.mul(s, x) == self.mul(x, s)))
            .collect()
    }

    /// Elements whose image commutes with the subset's image: the preimage
    /// of the target-side centralizer.
    pub fn pseudocentralizer_of(&self, subset: &[u32], q: &QuotientMap) -> Vec<u32> {
        let image: Vec<u32> = subset.iter().map(|&s| q.map[s as usize]).collect();
        let target_cent = q.target.centralizer_of(&image);
        (0..self.size)
            .filter(|&x| target_cent.binary_search(&q.map[x as usize]).is_ok())
            .collect()
    }

    /// Maximum of |H| * |C(H)| over all subgroups, with the attaining
    /// subgroups.
    pub fn oracle_cd(&self, cap: u64) -> Result<(u128, Vec<Vec<u32>>)> {
        self.argmax(cap, |sub| self.centralizer_of(sub).len())
    }

    /// Maximum of |H| * |P(H)| over all subgroups, with the attaining
    /// subgroups.
    pub fn oracle_pcd(&self, q: &QuotientMap, cap: u64) -> Result<(u128, Vec<Vec<u32>>)> {
        self.argmax(cap, |sub| self.pseudocentralizer_of(sub, q).len())
    }

    fn argmax(&self, cap: u64, weight: impl Fn(&[u32]) -> usize) -> Result<(u128, Vec<Vec<u32>>)> {
        let subs = self.all_subgroups(cap)?;
        let measured: Vec<(u128, Vec<u32>)> = subs
            .into_iter()
            .map(|s| ((s.len() * weight(&s)) as u128, s))
            .collect();
        let best = measured
            .iter()
            .map(|m| m.0)
            .max()
            .expect("at least the trivial subgroup");
        let attaining = measured
            .into_iter()
            .filter(|m| m.0 == best)
            .map(|m| m.1)
            .collect();
        Ok((best, attaining))
    }
}

impl QuotientMap {
    /// Checks the defining property pointwise against a source table.
    pub fn is_homomorphism(&self, source: &CayleyGroup) -> bool {
        if self.map.len() != source.size() as usize {
            return false;
        }
        for a in 0..source.size() {
            for b in 0..source.size() {
                let lhs = self.map[source.mul(a, b) as usize];
                let rhs = self.target.mul(self.map[a as usize], self.map[b as usize]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Tabulates a Heisenberg group together with its componentwise reduction
/// map — the table-side mirror of the exact sequence.
pub fn heisenberg_quotient(seq: &ExactSequence) -> Result<(CayleyGroup, QuotientMap)> {
    let big = CayleyGroup::from_heisenberg(&seq.big())?;
    let small = seq.small();
    let target = CayleyGroup::from_heisenberg(&small)?;
    let map = seq
        .big()
        .elements()
        .map(|e| small.index_of(seq.q_project(e)) as u32)
        .collect();
    Ok((big, QuotientMap { map, target }))
}

/// The symmetric group on three letters with its sign quotient, as a fixed
/// fixture for measure comparisons outside the Heisenberg family.
///
/// Elements are the six permutations of (0, 1, 2) in lexicographic order of
/// their one-line notation; the quotient is onto Z/2 by parity.
pub fn s3_fixture() -> (CayleyGroup, QuotientMap) {
    let perms: [[u8; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index_of = |p: &[u8; 3]| perms.iter().position(|q| q == p).unwrap() as u32;
    let compose = |a: &[u8; 3], b: &[u8; 3]| {
        // (a then b) acting on points: x -> b[a[x]].
        [b[a[0] as usize], b[a[1] as usize], b[a[2] as usize]]
    };
    let rows: Vec<Vec<u32>> = perms
        .iter()
        .map(|a| perms.iter().map(|b| index_of(&compose(a, b))).collect())
        .collect();
    let group = CayleyGroup::from_table(&rows).expect("fixed table satisfies the axioms");
    let parity = |p: &[u8; 3]| {
        let mut inversions = 0u32;
        for i in 0..3 {
            for j in i + 1..3 {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2
    };
    let z2 = CayleyGroup::from_table(&[vec![0, 1], vec![1, 0]]).expect("Z/2 table");
    let map = perms.iter().map(parity).collect();
    (group, QuotientMap { map, target: z2 })
}
