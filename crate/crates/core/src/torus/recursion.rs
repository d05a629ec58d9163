use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::KhTable;
use crate::error::{Error, Result};

// Kh of the negative T(3,2)..T(3,5), computed once by the cube engine
// (re-checked in the tests), as (i, j, dim).
const BASE: [&[(i32, i32, usize)]; 4] = [
    // T(3,2)
    &[(-3, -9, 1), (-2, -5, 1), (0, -3, 1), (0, -1, 1)],
    // T(3,3)
    &[(-4, -13, 2), (-4, -11, 3), (-3, -11, 1), (-4, -9, 1), (-2, -7, 1), (0, -5, 1), (0, -3, 1)],
    // T(3,4)
    &[(-5, -17, 1), (-5, -15, 1), (-4, -13, 1), (-3, -13, 1), (-4, -11, 1), (-2, -9, 1), (0, -7, 1), (0, -5, 1)],
    // T(3,5)
    &[
        (-7, -21, 1),
        (-5, -19, 1),
        (-6, -17, 1),
        (-5, -17, 1),
        (-4, -15, 1),
        (-3, -15, 1),
        (-4, -13, 1),
        (-2, -11, 1),
        (0, -9, 1),
        (0, -7, 1),
    ],
];

pub const BASE_RANGE: std::ops::RangeInclusive<usize> = 2..=5;

/// `q mod 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TorusClass {
    /// `q = 3N`
    Multiple,
    /// `q = 3N + 1`
    Plus,
    /// `q = 3N - 1`
    Minus,
}

/// `q` together with its class and `N`, so that `q` is one of `3N`, `3N+1`
/// or `3N-1` with `N ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusFamilyIndex {
    pub q: usize,
    pub class: TorusClass,
    pub n: usize,
}

impl TorusFamilyIndex {
    pub fn new(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::TorusParam { q: q as i64, min: 2 });
        }
        let (class, n) = match q % 3 {
            0 => (TorusClass::Multiple, q / 3),
            1 => (TorusClass::Plus, q / 3),
            _ => (TorusClass::Minus, q / 3 + 1),
        };
        Ok(TorusFamilyIndex { q, class, n })
    }

    pub fn components(&self) -> usize {
        if self.class == TorusClass::Multiple {
            3
        } else {
            1
        }
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// `⌊q/3⌋`: the `N` with `q ∈ {3N, 3N+1, 3N+2}`. The recursion deltas
    /// and the diagonal count are expressed in it.
    pub fn floor_n(&self) -> i32 {
        (self.q / 3) as i32
    }

    pub fn expected_diagonals(&self) -> usize {
        self.q / 3 + 2
    }

    /// The step producing this table from the previous one, or `None` for
    /// base cases.
    pub fn step(&self) -> Option<Step> {
        if BASE_RANGE.contains(&self.q) {
            return None;
        }
        Some(match self.class {
            TorusClass::Multiple => Step::One,
            TorusClass::Plus => Step::Two,
            TorusClass::Minus => Step::Three,
        })
    }
}

/// `T(3,3N-1) → T(3,3N)`, `T(3,3N) → T(3,3N+1)`, `T(3,3N+1) → T(3,3N+2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    One,
    Two,
    Three,
}

impl Step {
    pub const ALL: [Step; 3] = [Step::One, Step::Two, Step::Three];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    /// Residue of the target `q` modulo 3.
    pub fn residue(self) -> usize {
        match self {
            Step::One => 0,
            Step::Two => 1,
            Step::Three => 2,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "step {}", self.number())
    }
}

/// A generator correction at `(-4N + di, -12N + dj)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaEntry {
    pub di: i32,
    pub dj: i32,
    pub dim: i64,
}

/// `Kh^{i,j}(new) = Kh^{i,j+shift}(previous) + Σ corrections`, with the
/// corrections supported in `j ≤ -12N + threshold`, `N = ⌊q/3⌋` of the new
/// table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionDelta {
    pub step: Step,
    pub shift: i32,
    pub threshold: i32,
    pub entries: Vec<DeltaEntry>,
}

const fn e(di: i32, dj: i32, dim: i64) -> DeltaEntry {
    DeltaEntry { di, dj, dim }
}

// Differences of the cube-engine tables at N = 1 and N = 2; identical
// relative to (-4N, -12N) at both.
const STEP_ONE: [DeltaEntry; 3] = [e(0, -1, 2), e(0, 1, 3), e(0, 3, 1)];
const STEP_TWO: [DeltaEntry; 4] = [e(-1, -5, 1), e(-1, -3, 1), e(0, -3, -2), e(0, -1, -2)];
const STEP_THREE: [DeltaEntry; 2] = [e(-3, -9, 1), e(-2, -5, 1)];

impl RecursionDelta {
    pub fn of(step: Step) -> Self {
        let (threshold, entries): (i32, &[DeltaEntry]) = match step {
            Step::One => (3, &STEP_ONE),
            Step::Two => (-1, &STEP_TWO),
            Step::Three => (-5, &STEP_THREE),
        };
        RecursionDelta { step, shift: 2, threshold, entries: entries.to_vec() }
    }

    /// The corrections at a given `N`, in absolute bidegrees.
    pub fn at(&self, n: i32) -> Vec<((i32, i32), i64)> {
        self.entries.iter().map(|c| ((-4 * n + c.di, -12 * n + c.dj), c.dim)).collect()
    }

    pub fn threshold_at(&self, n: i32) -> i32 {
        -12 * n + self.threshold
    }

    /// Change of total dimension.
    pub fn dim_change(&self) -> i64 {
        self.entries.iter().map(|c| c.dim).sum()
    }

    pub fn supported_below_threshold(&self) -> bool {
        self.entries.iter().all(|c| c.dj <= self.threshold)
    }

    pub fn apply(&self, prev: &KhTable, n: i32) -> Result<KhTable> {
        let mut dims: BTreeMap<(i32, i32), i64> =
            prev.iter().map(|((i, j), d)| ((i, j - self.shift), d as i64)).collect();
        for (k, d) in self.at(n) {
            *dims.entry(k).or_default() += d;
        }
        if let Some(((i, j), d)) = dims.iter().find(|(_, &d)| d < 0) {
            return Err(Error::Check(format!("{}: dimension {d} at ({i}, {j})", self.step)));
        }
        Ok(KhTable::from_entries(dims.into_iter().map(|(k, d)| (k, d as usize))))
    }

    /// The corrections taking `prev` to `new`, relative to `(-4N, -12N)`.
    pub fn fit(step: Step, prev: &KhTable, new: &KhTable, n: i32) -> Self {
        let shift = 2;
        let mut dims: BTreeMap<(i32, i32), i64> = new.iter().map(|(k, d)| (k, d as i64)).collect();
        for ((i, j), d) in prev.iter() {
            *dims.entry((i, j - shift)).or_default() -= d as i64;
        }
        let entries: Vec<DeltaEntry> =
            dims.into_iter().filter(|&(_, d)| d != 0).map(|((i, j), d)| e(i + 4 * n, j + 12 * n, d)).collect();
        let threshold = entries.iter().map(|c| c.dj).max().unwrap_or(i32::MIN);
        let mut out = RecursionDelta { step, shift, threshold, entries };
        out.entries.sort();
        out
    }

    /// Same corrections, ignoring the recorded threshold.
    pub fn same_corrections(&self, other: &RecursionDelta) -> bool {
        let mut a = self.entries.clone();
        let mut b = other.entries.clone();
        a.sort();
        b.sort();
        self.shift == other.shift && a == b
    }
}

pub fn base_table(q: usize) -> Option<KhTable> {
    if !BASE_RANGE.contains(&q) {
        return None;
    }
    Some(KhTable::from_entries(BASE[q - 2].iter().map(|&(i, j, d)| ((i, j), d))))
}

/// Rational Kh of the negative `T(3, q)` from the base tables and the
/// three recursion steps.
pub fn expected_kh_3q(q: usize) -> Result<KhTable> {
    Ok(expected_tables(q)?.pop().unwrap())
}

/// The positive `T(3, q)`, by mirroring.
pub fn expected_kh_3q_positive(q: usize) -> Result<KhTable> {
    Ok(expected_kh_3q(q)?.mirror())
}

/// `expected_kh_3q(q)` for `q = 2..=q_max`, in order.
pub fn expected_tables(q_max: usize) -> Result<Vec<KhTable>> {
    TorusFamilyIndex::new(q_max)?;
    let mut out: Vec<KhTable> = Vec::with_capacity(q_max - 1);
    for q in 2..=q_max {
        let idx = TorusFamilyIndex::new(q)?;
        let t = match idx.step() {
            None => base_table(q).unwrap(),
            Some(c) => RecursionDelta::of(c).apply(out.last().unwrap(), idx.floor_n())?,
        };
        out.push(t);
    }
    Ok(out)
}

/// Number of distinct `j - 2i` over the nonzero entries.
pub fn diagonal_count(t: &KhTable) -> Result<usize> {
    if t.is_empty() {
        return Err(Error::EmptyTable);
    }
    let mut d: Vec<i32> = t.iter().map(|((i, j), _)| j - 2 * i).collect();
    d.sort_unstable();
    d.dedup();
    Ok(d.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_index() {
        let t = |q| TorusFamilyIndex::new(q).unwrap();
        assert_eq!((t(2).class, t(2).n), (TorusClass::Minus, 1));
        assert_eq!((t(6).class, t(6).n), (TorusClass::Multiple, 2));
        assert_eq!((t(100).class, t(100).n), (TorusClass::Plus, 33));
        assert_eq!(t(8).step(), Some(Step::Three));
        assert_eq!(t(5).step(), None);
        assert!(t(9).components() == 3 && t(10).is_knot());
        assert!(TorusFamilyIndex::new(1).is_err());
    }

    #[test]
    fn trefoil_base() {
        let t = expected_kh_3q(2).unwrap();
        let want = KhTable::from_entries([((0, -1), 1), ((0, -3), 1), ((-2, -5), 1), ((-3, -9), 1)]);
        assert_eq!(t, want);
        assert!(expected_kh_3q(1).is_err());
    }

    #[test]
    fn named_bidegrees() {
        for n in 1..=4 {
            let t = expected_kh_3q(3 * n).unwrap();
            let n = n as i32;
            assert_eq!(t.get(-4 * n, -12 * n + 1), 3);
            assert_eq!(t.get(-4 * n, -12 * n - 1), 2);
        }
        for n in 1..=4 {
            let t = expected_kh_3q(3 * n + 1).unwrap();
            let n = n as i32;
            assert_eq!(t.get(-4 * n, -12 * n - 1), 1);
            assert_eq!(t.get(-4 * n, -12 * n - 3), 0);
            assert_eq!(t.get(-4 * n - 1, -12 * n - 1), 0);
            assert_eq!(t.get(-4 * n - 1, -12 * n - 3), 1);
        }
        for n in 1..=4 {
            let t = expected_kh_3q(3 * n + 2).unwrap();
            let n = n as i32;
            assert_eq!(t.get(-4 * n - 3, -12 * n - 7), 0);
            assert_eq!(t.get(-4 * n - 1, -12 * n - 7), 1);
            assert_eq!(t.get(-4 * n - 2, -12 * n - 5) + t.get(-4 * n - 1, -12 * n - 5), 2);
            assert_eq!(t.get(-4 * n - 3, -12 * n - 9), 1);
            assert_eq!(t.get(-4 * n, -12 * n - 1), 1);
        }
    }

    #[test]
    fn deltas_from_base_tables() {
        for (q, c) in [(3, Step::One), (4, Step::Two), (5, Step::Three)] {
            let fit = RecursionDelta::fit(c, &base_table(q - 1).unwrap(), &base_table(q).unwrap(), 1);
            let frozen = RecursionDelta::of(c);
            assert!(frozen.same_corrections(&fit), "{c}: {fit:?}");
            assert!(frozen.supported_below_threshold());
            assert_eq!(fit.threshold, frozen.threshold, "{c} threshold is attained");
        }
    }

    #[test]
    fn pure_shift_above_threshold() {
        let tables = expected_tables(40).unwrap();
        for q in 3..=40 {
            let idx = TorusFamilyIndex::new(q).unwrap();
            let c = match idx.step() {
                Some(c) => c,
                None => Step::ALL[q % 3],
            };
            let th = RecursionDelta::of(c).threshold_at(idx.floor_n());
            let (prev, new) = (&tables[q - 3], &tables[q - 2]);
            for ((i, j), d) in new.iter().filter(|((_, j), _)| *j > th) {
                assert_eq!(prev.get(i, j + 2), d, "q={q} ({i},{j})");
            }
            for ((i, j), d) in prev.iter().filter(|((_, j), _)| j - 2 > th) {
                assert_eq!(new.get(i, j - 2), d, "q={q} ({i},{j})");
            }
        }
    }

    #[test]
    fn diagonals() {
        assert_eq!(diagonal_count(&expected_kh_3q(2).unwrap()).unwrap(), 2);
        assert_eq!(diagonal_count(&expected_kh_3q(3).unwrap()).unwrap(), 3);
        assert_eq!(diagonal_count(&expected_kh_3q(100).unwrap()).unwrap(), 35);
        let unknot = KhTable::from_entries([((0, 1), 1), ((0, -1), 1)]);
        assert_eq!(diagonal_count(&unknot).unwrap(), 2);
        assert_eq!(diagonal_count(&KhTable::new()), Err(Error::EmptyTable));
    }

    #[test]
    fn negative_correction_is_an_error() {
        let d = RecursionDelta::of(Step::Two);
        assert!(matches!(d.apply(&KhTable::new(), 1), Err(Error::Check(_))));
    }
}
