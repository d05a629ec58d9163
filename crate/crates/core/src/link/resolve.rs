use crate::error::{Error, Result};

use super::{Crossing, LinkDiagram};

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// A vertex of the cube of resolutions: one bit per crossing, in the
/// diagram's crossing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Smoothing {
    bits: Vec<bool>,
}

impl Smoothing {
    pub fn new(bits: Vec<bool>) -> Self {
        Smoothing { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Smoothing { bits: vec![false; n] }
    }

    pub fn ones(n: usize) -> Self {
        Smoothing { bits: vec![true; n] }
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        Smoothing { bits: (0..n).map(|i| mask >> i & 1 == 1).collect() }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of 1-smoothings.
    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Circles of a full smoothing. Circles are numbered by their smallest edge;
/// `assignment[e]` is the circle through the `e`-th edge of
/// [`LinkDiagram::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirclePartition {
    pub circle_count: usize,
    pub assignment: Vec<usize>,
}

/// Crossings with their edges replaced by positions in the sorted edge list.
#[derive(Clone, Debug)]
pub(crate) struct IndexedDiagram {
    pub crossings: Vec<[usize; 4]>,
    pub edge_count: usize,
}

impl IndexedDiagram {
    pub fn new(d: &LinkDiagram) -> Self {
        let edges = d.edges();
        let index = |e| edges.binary_search(&e).expect("edge listed");
        let crossings = d
            .crossings()
            .iter()
            .map(|x| [index(x.edges[0]), index(x.edges[1]), index(x.edges[2]), index(x.edges[3])])
            .collect();
        IndexedDiagram { crossings, edge_count: edges.len() }
    }

    /// Circle partition of the smoothing whose bit `i` is `mask >> i & 1`.
    pub fn resolve_mask(&self, mask: u64) -> CirclePartition {
        let mut uf = UnionFind::new(self.edge_count);
        for (i, x) in self.crossings.iter().enumerate() {
            for (a, b) in Crossing::smoothing_pairs(mask >> i & 1 == 1) {
                uf.union(x[a], x[b]);
            }
        }
        let mut label = vec![usize::MAX; self.edge_count];
        let mut assignment = vec![0; self.edge_count];
        let mut count = 0;
        for (e, slot) in assignment.iter_mut().enumerate() {
            let r = uf.find(e);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            *slot = label[r];
        }
        CirclePartition { circle_count: count, assignment }
    }
}

impl LinkDiagram {
    pub fn resolve(&self, s: &Smoothing) -> Result<CirclePartition> {
        if s.len() != self.crossing_count() {
            return Err(Error::SmoothingLength { expected: self.crossing_count(), got: s.len() });
        }
        if s.len() > 64 {
            return Err(Error::CubeLimit { crossings: s.len(), limit: 64 });
        }
        let mask = s.bits().iter().enumerate().fold(0u64, |m, (i, &b)| m | (b as u64) << i);
        Ok(IndexedDiagram::new(self).resolve_mask(mask))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::{torus_braid, BraidWord, LinkDiagram};

    // Circle count of a smoothed braid closure by tracing points between
    // braid levels: a vertical smoothing passes both strands straight down,
    // a horizontal one joins the two top points and the two bottom points.
    fn braid_circles(b: &BraidWord, vertical: &[bool]) -> usize {
        let w = b.width();
        let levels = b.letters().len();
        let point = |level: usize, pos: usize| (level % (levels + 1).max(1)) * w + pos;
        let mut uf = UnionFind::new((levels + 1) * w);
        for (l, &letter) in b.letters().iter().enumerate() {
            let p = letter.unsigned_abs() as usize - 1;
            for r in 0..w {
                if r != p && r != p + 1 {
                    uf.union(point(l, r), point(l + 1, r));
                }
            }
            if vertical[l] {
                uf.union(point(l, p), point(l + 1, p));
                uf.union(point(l, p + 1), point(l + 1, p + 1));
            } else {
                uf.union(point(l, p), point(l, p + 1));
                uf.union(point(l + 1, p), point(l + 1, p + 1));
            }
        }
        for r in 0..w {
            uf.union(point(levels, r), point(0, r));
        }
        let mut roots: Vec<usize> = (0..(levels + 1) * w).map(|x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    #[test]
    fn trefoil_smoothings() {
        let d = LinkDiagram::from_braid(&torus_braid(2).unwrap());
        // all negative: the 1-smoothing is the vertical, oriented one
        assert_eq!(d.resolve(&Smoothing::ones(4)).unwrap().circle_count, 3);
        assert_eq!(d.resolve(&Smoothing::zeros(4)).unwrap().circle_count, 1);
    }

    #[test]
    fn braid_closures_match_point_tracing() {
        let words = [
            BraidWord::new(3, vec![-1, -2, -1, -2, -1, -2]).unwrap(),
            BraidWord::new(3, vec![1, -2, 1, -2]).unwrap(),
            BraidWord::new(4, vec![1, 2, -3, 2, -1, 3, 3]).unwrap(),
            BraidWord::new(2, vec![1, 1, 1]).unwrap(),
        ];
        for b in &words {
            let d = LinkDiagram::from_braid(b);
            let n = d.crossing_count();
            for mask in 0..1u64 << n {
                let s = Smoothing::from_mask(mask, n);
                // vertical = oriented resolution: 0 for positive, 1 for negative
                let vertical: Vec<bool> = b.letters().iter().zip(s.bits()).map(|(&l, &bit)| (l < 0) == bit).collect();
                assert_eq!(d.resolve(&s).unwrap().circle_count, braid_circles(b, &vertical), "{b:?} {mask:b}");
            }
        }
    }

    #[test]
    fn unknot_has_one_circle() {
        let d = LinkDiagram::unknot();
        assert_eq!(d.resolve(&Smoothing::zeros(0)).unwrap().circle_count, 1);
    }

    #[test]
    fn length_mismatch() {
        let d = LinkDiagram::unknot();
        assert!(matches!(d.resolve(&Smoothing::zeros(2)), Err(Error::SmoothingLength { .. })));
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
    }
}
