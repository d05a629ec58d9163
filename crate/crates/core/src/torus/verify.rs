use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::CheckReport;
use crate::complex::{braid_jones, expected_lee_degrees, graded_euler, khovanov_homology_with, Config, LeeTable};
use crate::error::Result;
use crate::link::{torus_braid, LinkDiagram};

use super::lee::{lee_pairing, lee_survivors};
use super::recursion::{diagonal_count, expected_tables, RecursionDelta, Step, TorusFamilyIndex};

/// Upper end of the cheap checks (diagonals, Lee pairing, Euler
/// characteristic, growth).
pub const LARGE_BOUND: usize = 200;

/// Largest `q` whose mirror is also brute-forced.
const MIRROR_MAX: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub q: usize,
    pub index: TorusFamilyIndex,
    pub total_dim: usize,
    /// Agreement with the cube engine, when computed.
    pub brute: Option<bool>,
    pub mirror: Option<bool>,
    pub diagonals: usize,
    pub lee: bool,
    pub euler: bool,
}

impl FamilyRow {
    pub fn passed(&self) -> bool {
        self.brute != Some(false)
            && self.mirror != Some(false)
            && self.diagonals == self.index.expected_diagonals()
            && self.lee
            && self.euler
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub q_max: usize,
    pub q_large: usize,
    pub rows: Vec<FamilyRow>,
    pub checks: CheckReport,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.passed
    }
}

pub fn verify_family(q_max: usize) -> Result<FamilyReport> {
    verify_family_with(q_max, LARGE_BOUND, &Config::default())
}

/// Compares the recursion tables with the cube engine for `q ≤ q_max`, and
/// for `q ≤ q_large` checks the diagonal count, the Lee pairing, the Euler
/// characteristic against the braid Jones polynomial and the growth of the
/// total dimension.
pub fn verify_family_with(q_max: usize, q_large: usize, config: &Config) -> Result<FamilyReport> {
    TorusFamilyIndex::new(q_max)?;
    let q_large = q_large.max(q_max);
    let tables = expected_tables(q_large)?;
    let mut checks = CheckReport::new(format!("T(3,q) family, q ≤ {q_max} / {q_large}"));

    let mut brute = Vec::new();
    for q in 2..=q_max {
        let d = LinkDiagram::from_braid(&torus_braid(q as i64)?);
        let kh = khovanov_homology_with(&d, config)?;
        let mirror = if q <= MIRROR_MAX {
            Some(khovanov_homology_with(&d.mirror(), config)? == tables[q - 2].mirror())
        } else {
            None
        };
        let idx = TorusFamilyIndex::new(q)?;
        let lee = LeeTable::from_degrees(&expected_lee_degrees(&d));
        checks.expect(lee == lee_survivors(&idx), || format!("q={q}: linking numbers give Lee degrees {lee}"));
        log::info!("T(3,{q}): cube engine done");
        brute.push((kh == tables[q - 2], mirror));
    }

    let rows: Vec<FamilyRow> = (2..=q_large)
        .into_par_iter()
        .map(|q| {
            let idx = TorusFamilyIndex::new(q)?;
            let t = &tables[q - 2];
            let euler = graded_euler(t) == braid_jones(&torus_braid(q as i64)?);
            let (b, m) = brute.get(q - 2).copied().map_or((None, None), |(b, m)| (Some(b), m));
            Ok(FamilyRow {
                q,
                index: idx,
                total_dim: t.total_dim(),
                brute: b,
                mirror: m,
                diagonals: diagonal_count(t)?,
                lee: lee_pairing(t, &lee_survivors(&idx)),
                euler,
            })
        })
        .collect::<Result<_>>()?;

    for r in &rows {
        let q = r.q;
        checks.expect(r.brute != Some(false), || format!("q={q}: differs from the cube engine"));
        checks.expect(r.mirror != Some(false), || format!("q={q}: mirror differs from the cube engine"));
        let want = r.index.expected_diagonals();
        checks.expect(r.diagonals == want, || format!("q={q}: {} diagonals, expected {want}", r.diagonals));
        checks.expect(r.lee, || format!("q={q}: no Lee pairing"));
        checks.expect(r.euler, || format!("q={q}: Euler characteristic differs from the Jones polynomial"));
    }

    // total dimension changes by the same amount at repetition of a step
    for c in Step::ALL {
        let steps: BTreeSet<i64> = rows
            .windows(2)
            .filter(|w| w[1].q % 3 == c.residue())
            .map(|w| w[1].total_dim as i64 - w[0].total_dim as i64)
            .collect();
        let want = RecursionDelta::of(c).dim_change();
        checks.expect(steps.iter().all(|&s| s == want), || {
            format!("{c}: total dimension steps {steps:?}, expected {want}")
        });
    }
    Ok(FamilyReport { q_max, q_large, rows, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_family() {
        let rep = verify_family_with(4, 60, &Config::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks.failures);
        assert_eq!(rep.rows.len(), 59);
        assert!(rep.rows.iter().all(FamilyRow::passed));
        assert_eq!(rep.rows[2].brute, Some(true));
        assert_eq!(rep.rows[3].brute, None);
    }
}
