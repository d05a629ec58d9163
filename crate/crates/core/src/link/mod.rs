//! Oriented link diagrams in planar-diagram (PD) form.
//!
//! A crossing lists its four edges counterclockwise, starting from the
//! incoming under-strand. Slots 0 and 2 carry the under-strand (0 in, 2 out);
//! slots 1 and 3 carry the over-strand, which enters at slot 3 for a positive
//! crossing and at slot 1 for a negative one.

mod braid;
mod partial;
mod pd;
pub(crate) mod resolve;
mod skeleton;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use braid::{torus_braid, BraidWord};
pub use partial::{partial_diagrams, partial_diagrams_with, PartialKind, PartialResolution, PartialResolutions};
pub use pd::parse_pd;
pub use resolve::{CirclePartition, Smoothing, UnionFind};

pub(crate) use skeleton::Skeleton;

pub type Edge = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [Edge; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(edges: [Edge; 4], sign: Sign) -> Self {
        Crossing { edges, sign }
    }

    /// Whether the strand through `slot` enters the crossing there.
    pub fn is_entry(&self, slot: usize) -> bool {
        match (slot, self.sign) {
            (0, _) => true,
            (2, _) => false,
            (1, Sign::Neg) | (3, Sign::Pos) => true,
            _ => false,
        }
    }

    /// Slot pairs joined by the 0- or 1-smoothing.
    pub fn smoothing_pairs(bit: bool) -> [(usize, usize); 2] {
        if bit {
            [(0, 3), (1, 2)]
        } else {
            [(0, 1), (2, 3)]
        }
    }

    /// Swap over and under. The new incoming under-strand is the old
    /// incoming over-strand, so the record rotates and the sign flips.
    pub fn mirror(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        let edges = match self.sign {
            Sign::Pos => [d, a, b, c],
            Sign::Neg => [b, c, d, a],
        };
        Crossing { edges, sign: self.sign.flip() }
    }
}

/// An oriented link diagram: crossings plus crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    circles: Vec<Edge>,
    edges: Vec<Edge>,
}

/// A link component, as the cyclic sequence of edges it runs along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub edges: Vec<Edge>,
}

impl LinkDiagram {
    /// Builds a diagram from explicitly signed crossings, checking that
    /// every edge occurs twice and has exactly one head and one tail.
    pub fn new(crossings: Vec<Crossing>, circles: Vec<Edge>) -> Result<Self> {
        if crossings.is_empty() && circles.is_empty() {
            return Err(Error::Empty);
        }
        let mut ends: HashMap<Edge, (usize, usize)> = HashMap::new();
        for x in &crossings {
            for (s, &e) in x.edges.iter().enumerate() {
                let entry = ends.entry(e).or_default();
                if x.is_entry(s) {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
            }
        }
        for &c in &circles {
            if ends.insert(c, (1, 1)).is_some() {
                return Err(Error::EdgeMultiplicity { edge: c, count: 3 });
            }
        }
        for (&e, &(heads, tails)) in &ends {
            if heads + tails != 2 {
                return Err(Error::EdgeMultiplicity { edge: e, count: heads + tails });
            }
            if heads != 1 {
                return Err(Error::InconsistentOrientation { edge: e });
            }
        }
        let mut edges: Vec<Edge> = ends.into_keys().collect();
        edges.sort_unstable();
        Ok(LinkDiagram { crossings, circles, edges })
    }

    /// Builds a diagram from unsigned PD records, inferring the orientation
    /// from the under-strands.
    pub fn from_pd(records: Vec<[Edge; 4]>, circles: Vec<Edge>) -> Result<Self> {
        if records.is_empty() && circles.is_empty() {
            return Err(Error::Empty);
        }
        let sk = Skeleton::new(records, circles)?;
        let forward = sk.infer_directions()?;
        sk.orient(&forward)
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(k: usize) -> Self {
        assert!(k > 0);
        Self::new(vec![], (0..k as Edge).collect()).unwrap()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn circles(&self) -> &[Edge] {
        &self.circles
    }

    /// All edge identifiers, sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// `(n_plus, n_minus)`.
    pub fn crossing_signs(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|x| x.sign == Sign::Pos).count();
        (pos, self.crossings.len() - pos)
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|x| x.sign.value()).sum()
    }

    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram {
            crossings: self.crossings.iter().map(Crossing::mirror).collect(),
            circles: self.circles.clone(),
            edges: self.edges.clone(),
        }
    }

    pub(crate) fn skeleton(&self) -> Skeleton {
        Skeleton::new(self.crossings.iter().map(|x| x.edges).collect(), self.circles.clone())
            .expect("valid diagram has a valid skeleton")
    }

    /// Directions of the skeleton components that reproduce this diagram's
    /// orientation.
    pub(crate) fn skeleton_directions(&self, sk: &Skeleton) -> Vec<bool> {
        sk.components()
            .iter()
            .map(|comp| match comp.exits.first() {
                Some(&(c, s)) => !self.crossings[c].is_entry(s),
                None => true,
            })
            .collect()
    }

    /// Components in canonical order (by smallest edge identifier), each
    /// listed along its orientation.
    pub fn components(&self) -> Vec<Component> {
        let sk = self.skeleton();
        let dirs = self.skeleton_directions(&sk);
        sk.components()
            .into_iter()
            .zip(dirs)
            .map(|(comp, fwd)| {
                let mut edges = comp.edges;
                if !fwd {
                    edges.reverse();
                }
                Component { edges }
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.skeleton().components().len()
    }

    /// Components together with the pairwise linking matrix. Diagonal
    /// entries are zero.
    pub fn components_and_linking(&self) -> (Vec<Component>, Vec<Vec<i32>>) {
        let comps = self.components();
        let mut owner: HashMap<Edge, usize> = HashMap::new();
        for (i, c) in comps.iter().enumerate() {
            for &e in &c.edges {
                owner.insert(e, i);
            }
        }
        let k = comps.len();
        let mut twice = vec![vec![0i32; k]; k];
        for x in &self.crossings {
            let under = owner[&x.edges[0]];
            let over = owner[&x.edges[1]];
            if under != over {
                twice[under][over] += x.sign.value();
                twice[over][under] += x.sign.value();
            }
        }
        let lk = twice
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        debug_assert!(v % 2 == 0);
                        v / 2
                    })
                    .collect()
            })
            .collect();
        (comps, lk)
    }

    /// Reverses the orientation of every component `c` with `flip[c]`,
    /// components indexed as in [`LinkDiagram::components`].
    pub fn reverse_components(&self, flip: &[bool]) -> LinkDiagram {
        let sk = self.skeleton();
        let dirs: Vec<bool> = self
            .skeleton_directions(&sk)
            .into_iter()
            .zip(flip.iter().copied().chain(std::iter::repeat(false)))
            .map(|(d, f)| d ^ f)
            .collect();
        sk.orient(&dirs).expect("reorienting a valid diagram")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> LinkDiagram {
        LinkDiagram::from_pd(vec![[1, 4, 2, 3], [3, 2, 4, 1]], vec![]).unwrap()
    }

    #[test]
    fn hopf_link_signs_and_linking() {
        let d = hopf();
        assert_eq!(d.crossing_signs(), (0, 2));
        let (comps, lk) = d.components_and_linking();
        assert_eq!(comps.len(), 2);
        assert_eq!(lk, vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn kinks() {
        let pos = LinkDiagram::from_pd(vec![[0, 0, 1, 1]], vec![]).unwrap();
        assert_eq!(pos.crossing_signs(), (1, 0));
        let neg = LinkDiagram::from_pd(vec![[0, 1, 1, 0]], vec![]).unwrap();
        assert_eq!(neg.crossing_signs(), (0, 1));
        assert_eq!(pos.component_count(), 1);
    }

    #[test]
    fn mirror_is_involution() {
        let d = hopf();
        let m = d.mirror();
        assert_eq!(m.crossing_signs(), (2, 0));
        assert_eq!(m.mirror(), d);
        assert!(LinkDiagram::new(m.crossings().to_vec(), vec![]).is_ok());
    }

    #[test]
    fn reversing_one_component_flips_mixed_crossings() {
        let d = hopf();
        let r = d.reverse_components(&[true, false]);
        assert_eq!(r.crossing_signs(), (2, 0));
        let both = d.reverse_components(&[true, true]);
        assert_eq!(both.crossing_signs(), (0, 2));
    }

    #[test]
    fn rejects_bad_orientation() {
        // edge 1 enters under-strands at both of its ends
        let err = LinkDiagram::new(
            vec![Crossing::new([1, 2, 3, 4], Sign::Pos), Crossing::new([1, 4, 3, 2], Sign::Pos)],
            vec![],
        );
        assert!(err.is_err());
    }
}
