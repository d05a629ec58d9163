//! Fraction-free sparse elimination for rank computation.
//!
//! Rows are integer vectors. At each step the pivot column is the active
//! column with the fewest nonzeros, and within it the pivot row is the
//! shortest one, ties broken by smallest magnitude. Every other row `r`
//! meeting the pivot column becomes `p * r - v * pivot_row` and, when the
//! pivot is not a unit, is divided by the gcd of its entries. Both steps keep
//! the row span over the rationals unchanged, so the number of pivots is the
//! rank.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait Coeff: Clone + Debug + PartialEq {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `p * a - v * b`, or `None` on overflow.
    fn mul_sub(p: &Self, a: &Self, v: &Self, b: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn magnitude(&self) -> u64;
    fn zero() -> Self;
}

impl Coeff for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul_sub(p: &i64, a: &i64, v: &i64, b: &i64) -> Option<i64> {
        p.checked_mul(*a)?.checked_sub(v.checked_mul(*b)?)
    }
    fn gcd(&self, other: &i64) -> i64 {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &i64) -> i64 {
        self / d
    }
    fn magnitude(&self) -> u64 {
        self.unsigned_abs()
    }
    fn zero() -> i64 {
        0
    }
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        Coeff::magnitude(self) == 1
    }
    fn mul_sub(p: &BigInt, a: &BigInt, v: &BigInt, b: &BigInt) -> Option<BigInt> {
        Some(p * a - v * b)
    }
    fn gcd(&self, other: &BigInt) -> BigInt {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &BigInt) -> BigInt {
        self / d
    }
    fn magnitude(&self) -> u64 {
        self.abs().to_u64().unwrap_or(u64::MAX)
    }
    fn zero() -> BigInt {
        Zero::zero()
    }
}

/// Rank of an `i64` matrix, retrying with big integers if intermediate
/// entries overflow.
pub(crate) fn rank_i64(rows: Vec<Vec<(u32, i64)>>, ncols: usize) -> usize {
    if let Some(r) = eliminate(rows.clone(), ncols) {
        return r;
    }
    log::debug!("i64 overflow in elimination, retrying with big integers");
    let big = rows.into_iter().map(|row| row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect()).collect();
    eliminate(big, ncols).expect("big integers do not overflow")
}

/// Number of pivots found by sparse elimination, or `None` on overflow.
pub(crate) fn eliminate<T: Coeff>(mut rows: Vec<Vec<(u32, T)>>, ncols: usize) -> Option<usize> {
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0u32; ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c as usize].push(r as u32);
            col_count[*c as usize] += 1;
        }
    }
    let mut alive = vec![true; rows.len()];
    let mut col_done = vec![false; ncols];
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> =
        (0..ncols).filter(|&c| col_count[c] > 0).map(|c| Reverse((col_count[c], c as u32))).collect();

    let mut rank = 0;
    let mut candidates: Vec<u32> = Vec::new();
    let mut scratch: Vec<(u32, T)> = Vec::new();

    while let Some(Reverse((count, c))) = heap.pop() {
        let c = c as usize;
        if col_done[c] || col_count[c] != count {
            continue;
        }
        if count == 0 {
            col_done[c] = true;
            continue;
        }

        candidates.clear();
        for &r in &col_rows[c] {
            if alive[r as usize] && entry(&rows[r as usize], c).is_some() {
                candidates.push(r);
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        debug_assert_eq!(candidates.len(), count as usize);
        col_rows[c].clear();

        let &pivot = candidates
            .iter()
            .min_by_key(|&&r| {
                let row = &rows[r as usize];
                (row.len(), row[entry(row, c).unwrap()].1.magnitude(), r)
            })
            .unwrap();
        let pivot_row = std::mem::take(&mut rows[pivot as usize]);
        let p = pivot_row[entry(&pivot_row, c).unwrap()].1.clone();

        for &r in &candidates {
            if r == pivot {
                continue;
            }
            let row = std::mem::take(&mut rows[r as usize]);
            let v = row[entry(&row, c).unwrap()].1.clone();
            scratch.clear();
            combine(&p, &row, &v, &pivot_row, &mut scratch, |col, delta| {
                let col = col as usize;
                if delta > 0 {
                    col_count[col] += 1;
                    col_rows[col].push(r);
                } else {
                    col_count[col] -= 1;
                }
                if col != c {
                    heap.push(Reverse((col_count[col], col as u32)));
                }
            })?;
            if !p.is_unit() {
                make_primitive(&mut scratch);
            }
            rows[r as usize] = std::mem::take(&mut scratch);
            scratch = row;
        }

        alive[pivot as usize] = false;
        for (col, _) in &pivot_row {
            let col = *col as usize;
            col_count[col] -= 1;
            if col != c {
                heap.push(Reverse((col_count[col], col as u32)));
            }
        }
        col_done[c] = true;
        rank += 1;
    }
    Some(rank)
}

fn entry<T>(row: &[(u32, T)], c: usize) -> Option<usize> {
    row.binary_search_by_key(&(c as u32), |(k, _)| *k).ok()
}

/// Writes `p * a - v * b` into `out`, reporting columns that appear (+1) or
/// vanish (-1) relative to `a`.
fn combine<T: Coeff>(
    p: &T,
    a: &[(u32, T)],
    v: &T,
    b: &[(u32, T)],
    out: &mut Vec<(u32, T)>,
    mut changed: impl FnMut(u32, i32),
) -> Option<()> {
    let zero = T::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            let x = T::mul_sub(p, &a[i].1, v, &zero)?;
            out.push((ca, x));
            i += 1;
        } else if cb < ca {
            let x = T::mul_sub(p, &zero, v, &b[j].1)?;
            out.push((cb, x));
            changed(cb, 1);
            j += 1;
        } else {
            let x = T::mul_sub(p, &a[i].1, v, &b[j].1)?;
            if x.is_zero() {
                changed(ca, -1);
            } else {
                out.push((ca, x));
            }
            i += 1;
            j += 1;
        }
    }
    Some(())
}

fn make_primitive<T: Coeff>(row: &mut [(u32, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.gcd(&first.1);
    for (_, x) in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(x);
    }
    if !g.is_unit() && !g.is_zero() {
        for (_, x) in row.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}
