//! Centralizer and pseudocentralizer measures, their maxima over the
//! subgroup lattice, and the serializable report tying everything together.

use std::time::Instant;

use serde::Serialize;

use crate::cent::{subgroup_centralizer, subgroup_pseudocentralizer};
use crate::error::Result;
use crate::lattice::{all_subgroups, EnumerationCaps};
use crate::params::GroupParams;
use crate::seq::ExactSequence;
use crate::subgroup::Subgroup;

/// |H| * |C(H)|.  Fits u128 comfortably: both factors are at most 2^60.
pub fn cd_measure(h: &Subgroup) -> Result<u128> {
    let c = subgroup_centralizer(h)?;
    Ok(h.order() as u128 * c.order() as u128)
}

/// |H| * |P(H)|, the pseudocentralizer analogue of [`cd_measure`].
pub fn pseudo_cd_measure(h: &Subgroup, seq: &ExactSequence) -> Result<u128> {
    let p = subgroup_pseudocentralizer(h, seq)?;
    Ok(h.order() as u128 * p.order() as u128)
}

/// Maximum of the centralizer measure over the whole lattice, together with
/// every subgroup attaining it (the CD family).  Enumerates under `caps`, so
/// it fails like [`all_subgroups`] does when the lattice is out of reach.
pub fn cd_star(g: GroupParams, caps: &EnumerationCaps) -> Result<(u128, Vec<Subgroup>)> {
    let subgroups = all_subgroups(g, caps)?;
    let mut scored = Vec::with_capacity(subgroups.len());
    for h in subgroups {
        let m = cd_measure(&h)?;
        scored.push((m, h));
    }
    let best = scored.iter().map(|t| t.0).max().expect("lattice nonempty");
    let family = scored
        .into_iter()
        .filter(|t| t.0 == best)
        .map(|t| t.1)
        .collect();
    Ok((best, family))
}

/// Maximum of the pseudocentralizer measure over the whole lattice plus the
/// attaining family (the PCD family), the analogue of [`cd_star`].
pub fn pcd_star(seq: &ExactSequence, caps: &EnumerationCaps) -> Result<(u128, Vec<Subgroup>)> {
    let subgroups = all_subgroups(seq.big(), caps)?;
    let mut scored = Vec::with_capacity(subgroups.len());
    for h in subgroups {
        let m = pseudo_cd_measure(&h, seq)?;
        scored.push((m, h));
    }
    let best = scored.iter().map(|t| t.0).max().expect("lattice nonempty");
    let family = scored
        .into_iter()
        .filter(|t| t.0 == best)
        .map(|t| t.1)
        .collect();
    Ok((best, family))
}

/// Closed form the centralizer maximum always lands on: p^(4n).  Kept apart
/// from [`cd_star`] so the verification suites can pit the enumerated value
/// against an independent prediction.
pub fn cd_star_law(g: GroupParams) -> u128 {
    (g.p() as u128).pow(4 * g.n())
}

/// Closed form for the pseudocentralizer maximum: p^(4n+2) for n >= 2, and
/// p^6 (realized by the whole group against itself) at n = 1 where the
/// pseudocentralizer of anything is everything.
pub fn pcd_star_law(g: GroupParams) -> u128 {
    if g.n() == 1 {
        (g.p() as u128).pow(6)
    } else {
        (g.p() as u128).pow(4 * g.n() + 2)
    }
}

/// One lattice row of a [`MeasureReport`].
#[derive(Debug, Clone, Serialize)]
pub struct MeasureRow {
    /// Position in the sorted subgroup enumeration.
    pub index: usize,
    pub order: u64,
    /// Canonical generators, rendered "c1,c2,c3".
    pub generators: Vec<String>,
    pub centralizer_order: u64,
    pub pseudocentralizer_order: u64,
    /// |H| * |C(H)| as a decimal string (u128 is lossy in JSON numbers).
    pub cd_measure: String,
    pub pcd_measure: String,
}

/// Full measure survey of one group: both maxima, the subgroups attaining
/// them, and one row per subgroup.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub p: u32,
    pub n: u32,
    pub order: u64,
    /// Maximum centralizer measure over the lattice, decimal string.
    pub m_star: String,
    /// Maximum pseudocentralizer measure over the lattice, decimal string.
    pub ms_star: String,
    /// Indices of subgroups attaining m_star.
    pub cd: Vec<usize>,
    /// Indices of subgroups attaining ms_star.
    pub pcd: Vec<usize>,
    pub table: Vec<MeasureRow>,
    pub elapsed_ms: u128,
}

/// Enumerates the lattice and measures every subgroup.  The returned maxima
/// are computed from the table, then cross-checked against the closed forms
/// by the verification suites rather than assumed here.
pub fn build_report(seq: &ExactSequence, caps: &EnumerationCaps) -> Result<MeasureReport> {
    let start = Instant::now();
    let g = seq.big();
    let subgroups = all_subgroups(g, caps)?;

    let mut table = Vec::with_capacity(subgroups.len());
    for (index, h) in subgroups.iter().enumerate() {
        let c = subgroup_centralizer(h)?;
        let p = subgroup_pseudocentralizer(h, seq)?;
        let cd = h.order() as u128 * c.order() as u128;
        let pcd = h.order() as u128 * p.order() as u128;
        table.push((index, h, c.order(), p.order(), cd, pcd));
    }
    let m_star = table
        .iter()
        .map(|t| t.4)
        .max()
        .expect("lattice is never empty");
    let ms_star = table
        .iter()
        .map(|t| t.5)
        .max()
        .expect("lattice is never empty");
    let cd: Vec<usize> = table
        .iter()
        .filter(|t| t.4 == m_star)
        .map(|t| t.0)
        .collect();
    let pcd: Vec<usize> = table
        .iter()
        .filter(|t| t.5 == ms_star)
        .map(|t| t.0)
        .collect();

    let rows = table
        .into_iter()
        .map(|(index, h, c_ord, p_ord, cd, pcd)| MeasureRow {
            index,
            order: h.order(),
            generators: h.generators().iter().map(|e| e.to_string()).collect(),
            centralizer_order: c_ord,
            pseudocentralizer_order: p_ord,
            cd_measure: cd.to_string(),
            pcd_measure: pcd.to_string(),
        })
        .collect();

    Ok(MeasureReport {
        p: g.p(),
        n: g.n(),
        order: g.order(),
        m_star: m_star.to_string(),
        ms_star: ms_star.to_string(),
        cd,
        pcd,
        table: rows,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
