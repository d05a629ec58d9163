use std::collections::BTreeMap;
use std::ops::{AddAssign, Mul};

use num_traits::Zero;

use super::elim;
use super::Rational;

/// Sparse matrix stored as sorted rows of `(column, value)` pairs with no
/// stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<T = i64> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(u32, T)>>,
}

impl<T> SparseMat<T>
where
    T: Clone + Zero + AddAssign + PartialEq,
{
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, T)>,
    {
        let mut acc: Vec<BTreeMap<u32, T>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) out of range for {rows}x{cols}");
            *acc[r].entry(c as u32).or_insert_with(T::zero) += v;
        }
        let data = acc.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMat { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let entries =
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())));
        Self::from_triplets(rows.len(), cols, entries)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(u32, T)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.data[r].binary_search_by_key(&(c as u32), |(k, _)| *k) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(u32, T)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            data[c].push((r as u32, v.clone()));
        }
        SparseMat { rows: self.cols, cols: self.rows, data }
    }

    /// The submatrix on the rows and columns accepted by the filters,
    /// reindexed in order.
    pub fn submatrix(&self, keep_row: impl Fn(usize) -> bool, keep_col: impl Fn(usize) -> bool) -> Self {
        let mut col_index = vec![u32::MAX; self.cols];
        let mut cols = 0;
        for (c, slot) in col_index.iter_mut().enumerate() {
            if keep_col(c) {
                *slot = cols;
                cols += 1;
            }
        }
        let data: Vec<Vec<(u32, T)>> = (0..self.rows)
            .filter(|&r| keep_row(r))
            .map(|r| {
                self.data[r]
                    .iter()
                    .filter(|(c, _)| col_index[*c as usize] != u32::MAX)
                    .map(|(c, v)| (col_index[*c as usize], v.clone()))
                    .collect()
            })
            .collect();
        SparseMat { rows: data.len(), cols: cols as usize, data }
    }

    /// Builds from columns given as `(row, value)` lists; each column must
    /// have strictly increasing rows and no zeros.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, T)>>) -> Self {
        let cols = columns.len();
        let mut data: Vec<Vec<(u32, T)>> = vec![Vec::new(); rows];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, v) in col {
                debug_assert!(!v.is_zero());
                data[r as usize].push((c as u32, v));
            }
        }
        SparseMat { rows, cols, data }
    }

    /// The contiguous block on `rows` x `cols`, reindexed from zero.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (lo, hi) = (cols.start as u32, cols.end as u32);
        let data = self.data[rows.clone()]
            .iter()
            .map(|row| {
                let a = row.partition_point(|(c, _)| *c < lo);
                let b = row.partition_point(|(c, _)| *c < hi);
                row[a..b].iter().map(|(c, v)| (c - lo, v.clone())).collect()
            })
            .collect();
        SparseMat { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let entries = self.iter().map(|(r, c, v)| (row_perm[r], col_perm[c], v.clone()));
        Self::from_triplets(self.rows, self.cols, entries)
    }
}

impl<T> SparseMat<T>
where
    T: Clone + Zero + AddAssign + PartialEq + Mul<Output = T>,
{
    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMat<T>) -> SparseMat<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: Vec<(u32, T)> = Vec::new();
                for (k, a) in row {
                    for (c, b) in &rhs.data[*k as usize] {
                        acc.push((*c, a.clone() * b.clone()));
                    }
                }
                acc.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, T)> = Vec::with_capacity(acc.len());
                for (c, v) in acc {
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => {
                            if out.last().is_some_and(|l| l.1.is_zero()) {
                                out.pop();
                            }
                            out.push((c, v));
                        }
                    }
                }
                if out.last().is_some_and(|l| l.1.is_zero()) {
                    out.pop();
                }
                out
            })
            .collect();
        SparseMat { rows: self.rows, cols: rhs.cols, data }
    }
}

impl SparseMat<i64> {
    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        elim::rank_i64(self.data.clone(), self.cols)
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn to_rational(&self) -> SparseMat<Rational> {
        SparseMat::from_triplets(
            self.rows,
            self.cols,
            self.iter().map(|(r, c, &v)| (r, c, Rational::from_integer(v.into()))),
        )
    }
}

impl SparseMat<Rational> {
    /// Rank over the rationals. Each row is scaled to a primitive integer
    /// row before fraction-free elimination.
    pub fn rank(&self) -> usize {
        use num_integer::Integer;
        let rows = self
            .data
            .iter()
            .map(|row| {
                let lcm = row.iter().fold(num_bigint::BigInt::from(1), |l, (_, v)| l.lcm(v.denom()));
                row.iter().map(|(c, v)| (*c, (v * Rational::from_integer(lcm.clone())).to_integer())).collect()
            })
            .collect();
        elim::eliminate(rows, self.cols).expect("big integers do not overflow")
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }
}
