use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::constants::{ss_constants, SSConstants};
use crate::check::CheckReport;
use crate::complex::{khovanov_homology_with, ChainComplex, Config, FrobeniusAlgebra, KhTable};
use crate::error::{Error, Result};
use crate::link::{partial_diagrams, LinkDiagram, PartialResolutions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub s: i32,
    pub t: i32,
    pub dim: usize,
}

/// Dimensions of one page at fixed quantum degree, `(s, t) -> dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSPage {
    pub r: usize,
    pub j: i32,
    #[serde(with = "entries")]
    pub dims: BTreeMap<(i32, i32), usize>,
}

mod entries {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(dims: &BTreeMap<(i32, i32), usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<PageEntry> = dims.iter().map(|(&(s, t), &dim)| PageEntry { s, t, dim }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<(i32, i32), usize>, D::Error> {
        let v = Vec::<PageEntry>::deserialize(d)?;
        Ok(v.into_iter().map(|e| ((e.s, e.t), e.dim)).collect())
    }
}

impl SSPage {
    pub fn new(r: usize, j: i32) -> Self {
        SSPage { r, j, dims: BTreeMap::new() }
    }

    pub fn get(&self, s: i32, t: i32) -> usize {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    fn add(&mut self, s: i32, t: i32, dim: usize) {
        if dim > 0 {
            *self.dims.entry((s, t)).or_insert(0) += dim;
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// `Σ_s dim E^{s, i-s}`.
    pub fn diagonal(&self, i: i32) -> usize {
        self.dims.iter().filter(|(&(s, t), _)| s + t == i).map(|(_, &d)| d).sum()
    }

    /// `Σ (-1)^{s+t} dim E^{s,t}`.
    pub fn euler(&self) -> i64 {
        self.dims.iter().map(|(&(s, t), &d)| if (s + t) % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn same_dims(&self, other: &SSPage) -> bool {
        self.dims == other.dims
    }
}

/// Pages of one quantum degree with the convergence checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSReport {
    pub j: i32,
    pub selected: Vec<usize>,
    /// `E_1, E_2, ...`, at least up to `E_{m+1}`.
    pub pages: Vec<SSPage>,
    /// First page equal to the limit page.
    pub collapse_page: usize,
    /// `i -> dim Kh^{i,j}(D)`.
    pub kh_column: BTreeMap<i32, usize>,
    pub converges: bool,
    pub checks: Vec<CheckReport>,
}

impl SSReport {
    pub fn stable(&self) -> &SSPage {
        self.pages.last().expect("at least one page")
    }

    pub fn page(&self, r: usize) -> Option<&SSPage> {
        self.pages.get(r.checked_sub(1)?)
    }

    pub fn passed(&self) -> bool {
        self.converges && self.checks.iter().all(|c| c.passed)
    }

    pub fn verdict(&self) -> String {
        format!("collapsed at E{}", self.collapse_page)
    }
}

/// The Khovanov complex of `D` with the filtration by partial resolutions
/// of the selected crossings: a state has level `k` when the first `k`
/// selected crossings, and not the `k+1`-st, are 1-smoothed.
pub struct FilteredComplex {
    complex: ChainComplex,
    selected: Vec<usize>,
}

impl FilteredComplex {
    pub fn new(d: &LinkDiagram, selected: &[usize], config: &Config) -> Result<Self> {
        let complex = ChainComplex::build(d, &FrobeniusAlgebra::khovanov(), config)?;
        Ok(FilteredComplex { complex, selected: selected.to_vec() })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn m(&self) -> usize {
        self.selected.len()
    }

    fn level(&self, alpha: u64) -> usize {
        self.selected.iter().take_while(|&&c| alpha >> c & 1 == 1).count()
    }

    /// `E_1` through `E_{r_last}` at normalized quantum degree `j`, from
    /// ranks of the filtered differential.
    pub fn pages(&self, j: i32, r_last: usize) -> Vec<SSPage> {
        let cx = &self.complex;
        let n = cx.crossing_count();
        let m = self.m();
        let jb = j - cx.quantum_shift();
        let levels: Vec<Vec<usize>> = (0..=n)
            .map(|u| {
                let sp = cx.space(u);
                sp.block(jb).map(|s| self.level(sp.states()[s].smoothing)).collect()
            })
            .collect();
        let blocks: Vec<_> =
            (0..n).map(|u| cx.differential(u).block(cx.space(u + 1).block(jb), cx.space(u).block(jb))).collect();

        let mut cache: HashMap<(usize, usize, usize), usize> = HashMap::new();
        // rank of d_u restricted to rows of level < b and columns of level >= a
        let mut rank = |u: i64, b: i64, a: i64| -> usize {
            if u < 0 || u as usize >= n || b <= 0 {
                return 0;
            }
            let (u, b, a) = (u as usize, b.min(m as i64 + 1) as usize, a.max(0) as usize);
            *cache.entry((u, b, a)).or_insert_with(|| {
                let (rows, cols) = (&levels[u + 1], &levels[u]);
                blocks[u].submatrix(|r| rows[r] < b, |c| cols[c] >= a).rank()
            })
        };
        let count = |u: usize, p: usize| levels[u].iter().filter(|&&l| l >= p).count();

        let mut pages = Vec::with_capacity(r_last);
        for r in 1..=r_last as i64 {
            let mut page = SSPage::new(r as usize, j);
            for u in 0..=n {
                for p in 0..=m {
                    let (ui, pi) = (u as i64, p as i64);
                    // Z_r^p / (Z_{r-1}^{p+1} + F^p ∩ d F^{p-r+1})
                    let z = (count(u, p) - rank(ui, pi + r, pi)) as i64;
                    let z_next = (count(u, p + 1) - rank(ui, pi + r, pi + 1)) as i64;
                    let b = rank(ui - 1, pi + 1, pi - r + 1) as i64 - rank(ui - 1, pi, pi - r + 1) as i64;
                    let dim = z - z_next - b;
                    assert!(dim >= 0, "negative page dimension");
                    let i = u as i32 + cx.homological_shift();
                    page.add(p as i32, i - p as i32, dim as usize);
                }
            }
            pages.push(page);
        }
        pages
    }
}

/// Partial resolutions with their constants and Khovanov homologies, from
/// which `E_1` is assembled.
pub struct PartialHomology {
    pub parts: PartialResolutions,
    pub constants: SSConstants,
    /// `Kh(D̄_1), ..., Kh(D̄_m)`.
    pub open: Vec<KhTable>,
    /// `Kh(D_m)`.
    pub last: KhTable,
}

impl PartialHomology {
    pub fn new(parts: PartialResolutions, config: &Config) -> Result<Self> {
        let constants = ss_constants(&parts)?;
        let open =
            (1..=parts.m()).map(|k| khovanov_homology_with(&parts.open(k).diagram, config)).collect::<Result<_>>()?;
        let last = khovanov_homology_with(&parts.closed(parts.m()).diagram, config)?;
        Ok(PartialHomology { parts, constants, open, last })
    }

    /// `E_1^{s,t} = Kh^{s+t+A_s+ã_{s+1}, j+B_s+b̃_{s+1}}(D̄_{s+1})` for `s < m`,
    /// and `Kh^{m+t+A_m, j+B_m}(D_m)` for `s = m`.
    pub fn e1(&self, j: i32) -> SSPage {
        let c = &self.constants;
        let m = self.parts.m();
        let mut page = SSPage::new(1, j);
        for s in 0..=m {
            let (table, di, dj) = if s < m {
                (&self.open[s], c.A(s) + c.a_tilde(s + 1), c.B(s) + c.b_tilde(s + 1))
            } else {
                (&self.last, c.A(m), c.B(m))
            };
            let s = s as i32;
            for ((i, jj), d) in table.iter() {
                if jj == j + dj {
                    page.add(s, i - s - di, d);
                }
            }
        }
        page
    }
}

pub fn e1_page(d: &LinkDiagram, selected: &[usize], j: i32) -> Result<SSPage> {
    Ok(PartialHomology::new(partial_diagrams(d, selected)?, &Config::default())?.e1(j))
}

/// Pages, `E_1` comparison and convergence for one diagram and selection,
/// reusable across quantum degrees.
pub struct SpectralSequence {
    filtered: FilteredComplex,
    partial: PartialHomology,
    kh: KhTable,
}

impl SpectralSequence {
    pub fn new(d: &LinkDiagram, selected: &[usize], config: &Config) -> Result<Self> {
        let partial = PartialHomology::new(partial_diagrams(d, selected)?, config)?;
        let filtered = FilteredComplex::new(d, selected, config)?;
        let kh = filtered.complex().homology();
        Ok(SpectralSequence { filtered, partial, kh })
    }

    pub fn khovanov(&self) -> &KhTable {
        &self.kh
    }

    pub fn partial(&self) -> &PartialHomology {
        &self.partial
    }

    /// Quantum degrees where the complex is nonzero.
    pub fn quantum_degrees(&self) -> Vec<i32> {
        let cx = self.filtered.complex();
        let mut js: Vec<i32> = (0..=cx.crossing_count())
            .flat_map(|u| cx.space(u).blocks().iter().map(|b| b.0 + cx.quantum_shift()))
            .collect();
        js.sort_unstable();
        js.dedup();
        js
    }

    /// Pages `E_1 ..= E_max(r_max, m+1)`. Fails if `E_{m+1} != E_{m+2}`.
    pub fn report(&self, j: i32, r_max: usize) -> Result<SSReport> {
        let m = self.filtered.m();
        let mut pages = self.filtered.pages(j, r_max.max(m + 2));
        let limit = pages[m + 1].clone();
        if !pages[m].same_dims(&limit) {
            return Err(Error::Check(format!("pages at j={j} still change after E{}", m + 1)));
        }
        let collapse_page = pages.iter().position(|p| p.same_dims(&limit)).unwrap() + 1;
        pages.truncate(r_max.max(m + 1));

        let mut kh_column = BTreeMap::new();
        for ((i, jj), d) in self.kh.iter() {
            if jj == j {
                kh_column.insert(i, d);
            }
        }
        let stable = pages.last().unwrap();
        let mut is: Vec<i32> = kh_column.keys().copied().chain(stable.dims.keys().map(|&(s, t)| s + t)).collect();
        is.sort_unstable();
        is.dedup();
        let converges = is.iter().all(|&i| stable.diagonal(i) == kh_column.get(&i).copied().unwrap_or(0));

        let mut e1 = CheckReport::new("E1 equals partial-diagram homology");
        let expected = self.partial.e1(j);
        e1.expect(pages[0].same_dims(&expected), || format!("j={j}: {:?} != {:?}", pages[0].dims, expected.dims));

        let mut mono = CheckReport::new("pages shrink");
        let mut euler = CheckReport::new("Euler characteristic constant across pages");
        for w in pages.windows(2) {
            for (&(s, t), &d) in &w[1].dims {
                mono.expect(d <= w[0].get(s, t), || format!("E{}^({s},{t}) grew", w[1].r));
            }
            euler.expect(w[0].euler() == w[1].euler(), || format!("E{} vs E{}", w[0].r, w[1].r));
        }
        let mut checks = vec![e1, mono, euler];
        if m == 1 {
            let mut c = CheckReport::new("single crossing collapses at E2");
            c.expect(collapse_page <= 2, || format!("collapsed at E{collapse_page}"));
            checks.push(c);
        }
        Ok(SSReport { j, selected: self.filtered.selected.clone(), pages, collapse_page, kh_column, converges, checks })
    }
}

pub fn compute_pages(d: &LinkDiagram, selected: &[usize], j: i32, r_max: usize) -> Result<SSReport> {
    SpectralSequence::new(d, selected, &Config::default())?.report(j, r_max)
}
