use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::algebra::FrobeniusAlgebra;
use super::cube::ChainComplex;
use super::Config;
use crate::error::Result;
use crate::link::LinkDiagram;

/// One nonzero entry of a bigraded table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KhEntry {
    pub i: i32,
    pub j: i32,
    pub dim: usize,
}

/// Bigraded dimensions `(i, j) -> dim`, zero entries omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<KhEntry>", from = "Vec<KhEntry>")]
pub struct KhTable {
    dims: BTreeMap<(i32, i32), usize>,
}

impl KhTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((i32, i32), usize)>) -> Self {
        let mut t = Self::new();
        for ((i, j), d) in entries {
            t.add(i, j, d as i64);
        }
        t
    }

    pub fn get(&self, i: i32, j: i32) -> usize {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Adds `delta` at `(i, j)`, panicking if the result is negative.
    pub fn add(&mut self, i: i32, j: i32, delta: i64) {
        let v = self.get(i, j) as i64 + delta;
        assert!(v >= 0, "negative dimension at ({i}, {j})");
        if v == 0 {
            self.dims.remove(&(i, j));
        } else {
            self.dims.insert((i, j), v as usize);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    /// Entries ordered by `(i, j)`.
    pub fn iter(&self) -> impl Iterator<Item = ((i32, i32), usize)> + '_ {
        self.dims.iter().map(|(&k, &v)| (k, v))
    }

    /// Entries ordered by `(j, i)`.
    pub fn entries(&self) -> Vec<KhEntry> {
        let mut out: Vec<KhEntry> = self.iter().map(|((i, j), dim)| KhEntry { i, j, dim }).collect();
        out.sort_by_key(|e| (e.j, e.i));
        out
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// `Σ_j dim Kh^{i,j}`.
    pub fn column(&self, i: i32) -> usize {
        self.iter().filter(|((a, _), _)| *a == i).map(|(_, d)| d).sum()
    }

    pub fn quantum_degrees(&self) -> Vec<i32> {
        let mut js: Vec<i32> = self.dims.keys().map(|k| k.1).collect();
        js.sort_unstable();
        js.dedup();
        js
    }

    /// `(i, j) -> (-i, -j)`.
    pub fn mirror(&self) -> Self {
        Self::from_entries(self.iter().map(|((i, j), d)| ((-i, -j), d)))
    }

    /// `(i, j) -> (i + di, j + dj)`.
    pub fn shifted(&self, di: i32, dj: i32) -> Self {
        Self::from_entries(self.iter().map(|((i, j), d)| ((i + di, j + dj), d)))
    }
}

impl From<KhTable> for Vec<KhEntry> {
    fn from(t: KhTable) -> Self {
        t.entries()
    }
}

impl From<Vec<KhEntry>> for KhTable {
    fn from(v: Vec<KhEntry>) -> Self {
        KhTable::from_entries(v.into_iter().map(|e| ((e.i, e.j), e.dim)))
    }
}

impl fmt::Display for KhTable {
    /// Rows are quantum degrees (descending), columns homological degrees.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "(zero)");
        }
        let is: Vec<i32> = self.dims.keys().map(|k| k.0).collect();
        let (lo, hi) = (*is.iter().min().unwrap(), *is.iter().max().unwrap());
        let w = (lo..=hi)
            .map(|i| i.to_string().len())
            .chain(self.dims.values().map(|d| d.to_string().len()))
            .max()
            .unwrap()
            .max(3)
            + 1;
        write!(f, "{:>6} |", "j\\i")?;
        for i in lo..=hi {
            write!(f, "{i:>w$}")?;
        }
        writeln!(f)?;
        for j in self.quantum_degrees().into_iter().rev() {
            write!(f, "{j:>6} |")?;
            for i in lo..=hi {
                match self.get(i, j) {
                    0 => write!(f, "{:>w$}", ".")?,
                    d => write!(f, "{d:>w$}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Singly graded dimensions `i -> dim`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeeTable {
    pub dims: BTreeMap<i32, usize>,
}

impl LeeTable {
    pub fn from_degrees(degrees: &[i32]) -> Self {
        let mut dims = BTreeMap::new();
        for &d in degrees {
            *dims.entry(d).or_insert(0) += 1;
        }
        LeeTable { dims }
    }

    pub fn get(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees with multiplicity, increasing.
    pub fn degrees(&self) -> Vec<i32> {
        self.dims.iter().flat_map(|(&i, &d)| std::iter::repeat_n(i, d)).collect()
    }
}

impl fmt::Display for LeeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|(i, d)| format!("{i}: {d}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl ChainComplex {
    /// Bigraded homology of a graded complex, one rank per quantum block.
    pub fn homology(&self) -> KhTable {
        assert!(self.is_graded(), "bigraded homology needs a graded complex");
        let n = self.crossing_count();
        let tasks: Vec<(usize, i32)> =
            (0..n).flat_map(|r| self.space(r).blocks().iter().map(move |b| (r, b.0))).collect();
        let ranks: BTreeMap<(usize, i32), usize> = tasks
            .par_iter()
            .map(|&(r, j)| {
                let (src, dst) = (self.space(r).block(j), self.space(r + 1).block(j));
                let rank = if dst.is_empty() { 0 } else { self.differential(r).block(dst, src).rank() };
                ((r, j), rank)
            })
            .collect();
        let rank = |r: i64, j: i32| if r < 0 { 0 } else { ranks.get(&(r as usize, j)).copied().unwrap_or(0) };
        let mut table = KhTable::new();
        for r in 0..=n {
            for (j, range) in self.space(r).blocks() {
                let h = range.len() - rank(r as i64, *j) - rank(r as i64 - 1, *j);
                table.add(r as i32 + self.homological_shift(), j + self.quantum_shift(), h as i64);
            }
        }
        table
    }

    /// Singly graded homology, from ranks of the full differentials.
    pub fn homology_ungraded(&self) -> LeeTable {
        let n = self.crossing_count();
        let ranks: Vec<usize> = (0..n).into_par_iter().map(|r| self.differential(r).rank()).collect();
        let mut dims = BTreeMap::new();
        for r in 0..=n {
            let h = self.space(r).dim() - if r < n { ranks[r] } else { 0 } - if r > 0 { ranks[r - 1] } else { 0 };
            if h > 0 {
                dims.insert(r as i32 + self.homological_shift(), h);
            }
        }
        LeeTable { dims }
    }
}

pub fn khovanov_homology(d: &LinkDiagram) -> Result<KhTable> {
    khovanov_homology_with(d, &Config::default())
}

pub fn khovanov_homology_with(d: &LinkDiagram, config: &Config) -> Result<KhTable> {
    Ok(ChainComplex::build(d, &FrobeniusAlgebra::khovanov(), config)?.homology())
}

pub fn lee_homology(d: &LinkDiagram) -> Result<LeeTable> {
    lee_homology_with(d, &Config::default())
}

/// Computed in the idempotent basis, which gives the same ranks as the
/// `(1, x)` basis with far less fill-in.
pub fn lee_homology_with(d: &LinkDiagram, config: &Config) -> Result<LeeTable> {
    Ok(ChainComplex::build(d, &FrobeniusAlgebra::lee_idempotent(), config)?.homology_ungraded())
}

/// One degree per subset `E` of the components:
/// `2 Σ_{l ∈ E, m ∉ E} lk(L_l, L_m)`, sorted.
pub fn expected_lee_degrees(d: &LinkDiagram) -> Vec<i32> {
    let (comps, lk) = d.components_and_linking();
    let k = comps.len();
    let mut out: Vec<i32> = (0..1u64 << k)
        .map(|e| {
            let mut s = 0;
            for l in (0..k).filter(|&l| e >> l & 1 == 1) {
                for m in (0..k).filter(|&m| e >> m & 1 == 0) {
                    s += lk[l][m];
                }
            }
            2 * s
        })
        .collect();
    out.sort_unstable();
    out
}
