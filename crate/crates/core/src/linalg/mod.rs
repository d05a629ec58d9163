//! Exact linear algebra over the rationals.

mod elim;
mod laurent;
mod sparse;

pub use laurent::{LaurentPoly, Term};
pub use sparse::SparseMat;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

#[cfg(test)]
mod tests {
    use num_traits::Zero;
    use proptest::prelude::*;

    use super::*;

    // Dense Gaussian elimination over the rationals; independent of the
    // sparse fraction-free path.
    #[allow(clippy::needless_range_loop)]
    fn dense_rank(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
        let mut m = vec![vec![Rational::zero(); cols]; rows];
        for &(r, c, v) in entries {
            m[r][c] += Rational::from_integer(v.into());
        }
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..rows {
                if r != rank && !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[rank][c];
                    for k in c..cols {
                        let t = &f * &m[rank][k];
                        m[r][k] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn sparse_matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, i64)>)> {
        (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
            let entry = (0..r, 0..c, prop_oneof![Just(1i64), Just(-1), -4i64..=4]);
            (Just(r), Just(c), prop::collection::vec(entry, 0..(r * c)))
        })
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle((r, c, e) in sparse_matrix()) {
            let m = SparseMat::from_triplets(r, c, e.iter().copied());
            prop_assert_eq!(m.rank(), dense_rank(r, c, &e));
            prop_assert_eq!(m.to_rational().rank(), m.rank());
        }

        #[test]
        fn rank_of_transpose((r, c, e) in sparse_matrix()) {
            let m = SparseMat::from_triplets(r, c, e.iter().copied());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= r.min(c));
        }

        #[test]
        fn rank_under_permutation((r, c, e) in sparse_matrix(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut rp: Vec<usize> = (0..r).collect();
            let mut cp: Vec<usize> = (0..c).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            let m = SparseMat::from_triplets(r, c, e.iter().copied());
            prop_assert_eq!(m.permute(&rp, &cp).rank(), m.rank());
        }
    }
}
