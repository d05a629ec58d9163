use std::ops::Range;

use rayon::prelude::*;

use super::algebra::{FrobeniusAlgebra, X};
use super::Config;
use crate::error::{Error, Result};
use crate::linalg::SparseMat;
use crate::link::resolve::IndexedDiagram;
use crate::link::LinkDiagram;

/// A generator of the cube complex: a smoothing together with a label per
/// circle. Bit `i` of `labels` is set when circle `i` carries `x`; circles are
/// numbered by their smallest edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub smoothing: u64,
    pub labels: u64,
}

/// The generators in one homological degree, sorted by quantum degree, then
/// smoothing, then labels.
#[derive(Clone, Debug, Default)]
pub struct DegreeSpace {
    states: Vec<EnhancedState>,
    /// Unnormalized quantum degree of each state.
    qdeg: Vec<i32>,
    /// `(unnormalized j, index range)` in increasing `j`.
    blocks: Vec<(i32, Range<usize>)>,
}

impl DegreeSpace {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[EnhancedState] {
        &self.states
    }

    pub fn qdeg(&self, idx: usize) -> i32 {
        self.qdeg[idx]
    }

    /// Unnormalized quantum-degree blocks.
    pub fn blocks(&self) -> &[(i32, Range<usize>)] {
        &self.blocks
    }

    pub fn block(&self, j: i32) -> Range<usize> {
        match self.blocks.binary_search_by_key(&j, |b| b.0) {
            Ok(k) => self.blocks[k].1.clone(),
            Err(_) => 0..0,
        }
    }
}

/// Cube-of-resolutions complex. Degrees are stored unnormalized (`r` = number
/// of 1-smoothings); the normalized bigrading is `(r - n⁻, j + n⁺ - 2n⁻)`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    n: usize,
    n_plus: usize,
    n_minus: usize,
    graded: bool,
    spaces: Vec<DegreeSpace>,
    /// `diffs[r]` maps degree `r` to `r + 1`; rows index the target.
    diffs: Vec<SparseMat>,
}

fn binomials() -> Vec<[u64; 64]> {
    let mut c = vec![[0u64; 64]; 64];
    for n in 0..64 {
        c[n][0] = 1;
        for k in 1..=n {
            c[n][k] = c[n - 1][k - 1].saturating_add(if k < n { c[n - 1][k] } else { 0 });
        }
    }
    c
}

// Position of `mask` among masks of the same popcount in increasing order.
fn combinadic(mask: u64, binom: &[[u64; 64]]) -> u64 {
    let mut rank = 0;
    let mut m = mask;
    let mut t = 1;
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        rank += binom[b][t];
        t += 1;
        m &= m - 1;
    }
    rank
}

// Masks of `k` bits with popcount `p`, increasing.
fn masks_with_popcount(k: usize, p: usize) -> impl Iterator<Item = u64> {
    let first = if p == 0 { 0 } else { u64::MAX >> (64 - p) };
    let limit = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt <= limit && nxt > cur).then_some(nxt)
            }
        };
        Some(cur)
    })
    .take_while(move |&m| m <= limit)
}

struct Cube {
    edge_count: usize,
    /// `assignment[α * edge_count + e]`: circle of edge `e` in smoothing `α`.
    assignment: Vec<u8>,
    circles: Vec<u8>,
    /// `offsets[offset_start[α] + p]`: index in degree `|α|` of the first
    /// state of `α` with `p` circles labelled `x`.
    offset_start: Vec<usize>,
    offsets: Vec<u32>,
}

impl Cube {
    fn circle_of(&self, alpha: u64, e: usize) -> usize {
        self.assignment[alpha as usize * self.edge_count + e] as usize
    }

    fn index(&self, alpha: u64, labels: u64, binom: &[[u64; 64]]) -> u32 {
        let p = labels.count_ones() as usize;
        self.offsets[self.offset_start[alpha as usize] + p] + combinadic(labels, binom) as u32
    }
}

impl ChainComplex {
    pub fn build(d: &LinkDiagram, alg: &FrobeniusAlgebra, config: &Config) -> Result<Self> {
        let n = d.crossing_count();
        if n > config.cube_limit || n > 30 {
            return Err(Error::CubeLimit { crossings: n, limit: config.cube_limit.min(30) });
        }
        let (n_plus, n_minus) = d.crossing_signs();
        let idx = IndexedDiagram::new(d);
        let size = 1usize << n;
        let edge_count = idx.edge_count;

        let parts: Vec<(u8, Vec<u8>)> = (0..size as u64)
            .into_par_iter()
            .map(|alpha| {
                let p = idx.resolve_mask(alpha);
                (p.circle_count as u8, p.assignment.iter().map(|&c| c as u8).collect())
            })
            .collect();
        if edge_count > 255 || parts.iter().any(|(k, _)| *k > 62) {
            return Err(Error::Check("too many circles in a smoothing".into()));
        }
        let mut circles = Vec::with_capacity(size);
        let mut assignment = Vec::with_capacity(size * edge_count);
        for (k, a) in parts {
            circles.push(k);
            assignment.extend(a);
        }

        let binom = binomials();
        let mut offset_start = vec![0usize; size];
        let mut total = 0;
        for alpha in 0..size {
            offset_start[alpha] = total;
            total += circles[alpha] as usize + 1;
        }
        let mut offsets = vec![0u32; total];
        let mut spaces = Vec::with_capacity(n + 1);
        let mut by_weight: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        for alpha in 0..size as u64 {
            by_weight[alpha.count_ones() as usize].push(alpha);
        }
        for (r, alphas) in by_weight.iter().enumerate() {
            // (j, α, p), sorted by j then α
            let mut groups: Vec<(i32, u64, usize)> = Vec::new();
            for &alpha in alphas {
                let k = circles[alpha as usize] as usize;
                for p in 0..=k {
                    groups.push((k as i32 - 2 * p as i32 + r as i32, alpha, p));
                }
            }
            groups.sort_unstable();
            let mut space = DegreeSpace::default();
            for (j, alpha, p) in groups {
                let k = circles[alpha as usize] as usize;
                let start = space.states.len();
                if u32::try_from(start).is_err() {
                    return Err(Error::Check("degree space too large".into()));
                }
                offsets[offset_start[alpha as usize] + p] = start as u32;
                for labels in masks_with_popcount(k, p) {
                    space.states.push(EnhancedState { smoothing: alpha, labels });
                    space.qdeg.push(j);
                }
                match space.blocks.last_mut() {
                    Some((bj, range)) if *bj == j => range.end = space.states.len(),
                    _ => space.blocks.push((j, start..space.states.len())),
                }
            }
            spaces.push(space);
        }

        let cube = Cube { edge_count, assignment, circles, offset_start, offsets };
        let diffs = (0..n).map(|r| differential(&idx, &cube, &spaces[r], spaces[r + 1].dim(), alg, &binom)).collect();

        let complex = ChainComplex { n, n_plus, n_minus, graded: alg.is_graded(), spaces, diffs };
        debug_assert!(complex.d_squared_is_zero(), "d∘d ≠ 0");
        Ok(complex)
    }

    pub fn crossing_count(&self) -> usize {
        self.n
    }

    pub fn crossing_signs(&self) -> (usize, usize) {
        (self.n_plus, self.n_minus)
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Normalized homological degree minus unnormalized degree.
    pub fn homological_shift(&self) -> i32 {
        -(self.n_minus as i32)
    }

    /// Normalized quantum degree minus unnormalized degree.
    pub fn quantum_shift(&self) -> i32 {
        self.n_plus as i32 - 2 * self.n_minus as i32
    }

    /// Space in unnormalized degree `r`, for `0 <= r <= n`.
    pub fn space(&self, r: usize) -> &DegreeSpace {
        &self.spaces[r]
    }

    /// Differential from unnormalized degree `r` to `r + 1`.
    pub fn differential(&self, r: usize) -> &SparseMat {
        &self.diffs[r]
    }

    /// Dimension of the unnormalized chain group `C̄^{r,j}`.
    pub fn dim_unnormalized(&self, r: i32, j: i32) -> usize {
        if r < 0 || r as usize > self.n {
            return 0;
        }
        self.spaces[r as usize].block(j).len()
    }

    /// Dimension of the normalized chain group `C^{i,j}`.
    pub fn dim(&self, i: i32, j: i32) -> usize {
        self.dim_unnormalized(i - self.homological_shift(), j - self.quantum_shift())
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(DegreeSpace::dim).sum()
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.diffs.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// For a graded complex, whether every differential maps each quantum
    /// block into the block of the same degree.
    pub fn preserves_quantum_degree(&self) -> bool {
        (0..self.n).all(|r| {
            let (src, dst) = (&self.spaces[r], &self.spaces[r + 1]);
            self.diffs[r].iter().all(|(row, col, _)| src.qdeg[col] == dst.qdeg[row])
        })
    }
}

fn differential(
    idx: &IndexedDiagram,
    cube: &Cube,
    source: &DegreeSpace,
    target_dim: usize,
    alg: &FrobeniusAlgebra,
    binom: &[[u64; 64]],
) -> SparseMat {
    let n = idx.crossings.len();
    let columns: Vec<Vec<(u32, i64)>> = source
        .states
        .par_iter()
        .map(|st| {
            let alpha = st.smoothing;
            let k = cube.circles[alpha as usize] as usize;
            let mut reps = [usize::MAX; 64];
            let mut found = 0;
            for e in 0..cube.edge_count {
                let c = cube.circle_of(alpha, e);
                if reps[c] == usize::MAX {
                    reps[c] = e;
                    found += 1;
                    if found == k {
                        break;
                    }
                }
            }
            let mut col: Vec<(u32, i64)> = Vec::new();
            for c in (0..n).filter(|&c| alpha >> c & 1 == 0) {
                let beta = alpha | 1 << c;
                let sign = if (alpha & ((1 << c) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                let x = idx.crossings[c];
                let (a, b) = (cube.circle_of(alpha, x[0]), cube.circle_of(alpha, x[2]));
                // labels of the untouched circles carried to their new positions
                let mut rest = 0u64;
                for i in (0..k).filter(|&i| i != a && i != b) {
                    if st.labels >> i & 1 == 1 {
                        rest |= 1 << cube.circle_of(beta, reps[i]);
                    }
                }
                let la = (st.labels >> a & 1) as usize;
                if a != b {
                    let lb = (st.labels >> b & 1) as usize;
                    let merged = cube.circle_of(beta, x[0]);
                    for (out, &coef) in alg.mult(la, lb).iter().enumerate() {
                        if coef != 0 {
                            let labels = rest | ((out == X) as u64) << merged;
                            col.push((cube.index(beta, labels, binom), sign * coef));
                        }
                    }
                } else {
                    let (c1, c2) = (cube.circle_of(beta, x[0]), cube.circle_of(beta, x[1]));
                    debug_assert_ne!(c1, c2);
                    for (l1, row) in alg.comult(la).iter().enumerate() {
                        for (l2, &coef) in row.iter().enumerate() {
                            if coef != 0 {
                                let labels = rest | ((l1 == X) as u64) << c1 | ((l2 == X) as u64) << c2;
                                col.push((cube.index(beta, labels, binom), sign * coef));
                            }
                        }
                    }
                }
            }
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    SparseMat::from_columns(target_dim, columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::{torus_braid, LinkDiagram};

    #[test]
    fn combinadic_ranks_are_consecutive() {
        let binom = binomials();
        for k in 0..8 {
            for p in 0..=k {
                let masks: Vec<u64> = masks_with_popcount(k, p).collect();
                assert_eq!(masks.len() as u64, binom[k][p]);
                for (i, &m) in masks.iter().enumerate() {
                    assert_eq!(m.count_ones() as usize, p);
                    assert_eq!(combinadic(m, &binom), i as u64);
                }
            }
        }
    }

    #[test]
    fn unknot_complex() {
        let c = ChainComplex::build(&LinkDiagram::unknot(), &FrobeniusAlgebra::khovanov(), &Config::default()).unwrap();
        assert_eq!(c.total_dim(), 2);
        assert_eq!(c.dim(0, 1), 1);
        assert_eq!(c.dim(0, -1), 1);
    }

    #[test]
    fn trefoil_total_dimension() {
        let d = LinkDiagram::from_braid(&torus_braid(2).unwrap());
        let expected: usize = (0..16u64)
            .map(|m| 1usize << d.resolve(&crate::link::Smoothing::from_mask(m, 4)).unwrap().circle_count)
            .sum();
        for alg in [FrobeniusAlgebra::khovanov(), FrobeniusAlgebra::lee()] {
            let c = ChainComplex::build(&d, &alg, &Config::default()).unwrap();
            assert_eq!(c.total_dim(), expected);
            assert!(c.d_squared_is_zero());
        }
    }

    #[test]
    fn d_squared_vanishes_on_torus_links() {
        for q in 1..=4 {
            let d = LinkDiagram::from_braid(&torus_braid(q).unwrap());
            for alg in [FrobeniusAlgebra::khovanov(), FrobeniusAlgebra::lee()] {
                let c = ChainComplex::build(&d, &alg, &Config::default()).unwrap();
                assert!(c.d_squared_is_zero());
                assert_eq!(c.preserves_quantum_degree(), alg.is_graded() || c.crossing_count() == 0);
            }
        }
    }

    #[test]
    fn cube_limit() {
        let d = LinkDiagram::from_braid(&torus_braid(3).unwrap());
        let e = ChainComplex::build(&d, &FrobeniusAlgebra::khovanov(), &Config { cube_limit: 5 }).unwrap_err();
        assert_eq!(e, Error::CubeLimit { crossings: 6, limit: 5 });
    }
}
