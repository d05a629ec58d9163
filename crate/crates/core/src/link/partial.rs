//! Partial resolutions along a chosen sequence of crossings.
//!
//! For a selection `c_1, ..., c_m`, the closed diagram `D_k` has `c_1..c_k`
//! replaced by their 1-smoothings and the open diagram `D̄_k` has
//! `c_1..c_{k-1}` 1-smoothed and `c_k` 0-smoothed. Each is derived from
//! `D_{k-1}`; when the applied smoothing is the oriented resolution of `c_k`
//! (0 for positive, 1 for negative crossings) the orientation is inherited,
//! otherwise every component of the result is oriented to agree with
//! `D_{k-1}` where it leaves its smallest edge.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::{Crossing, Edge, LinkDiagram, Sign, Skeleton};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartialKind {
    /// `D_k`: the first `k` selected crossings 1-smoothed.
    Closed,
    /// `D̄_k`: the first `k - 1` selected crossings 1-smoothed, the `k`-th 0-smoothed.
    Open,
}

#[derive(Clone, Debug)]
pub struct PartialResolution {
    pub k: usize,
    pub kind: PartialKind,
    pub diagram: LinkDiagram,
    /// Crossing `i` of `diagram` is crossing `crossing_map[i]` of the base diagram.
    pub crossing_map: Vec<usize>,
    /// Whether the orientation was inherited from `D_{k-1}`.
    pub inherited: bool,
    pub n_plus: usize,
    pub n_minus: usize,
}

#[derive(Clone, Debug)]
pub struct PartialResolutions {
    pub selected: Vec<usize>,
    /// `D_0, ..., D_m`.
    pub closed: Vec<PartialResolution>,
    /// `D̄_1, ..., D̄_m` (index `k - 1`).
    pub open: Vec<PartialResolution>,
    /// Sign of the `k`-th selected crossing in `D_{k-1}` (index `k - 1`).
    pub signs: Vec<Sign>,
}

impl PartialResolutions {
    pub fn m(&self) -> usize {
        self.selected.len()
    }

    pub fn closed(&self, k: usize) -> &PartialResolution {
        &self.closed[k]
    }

    /// `D̄_k` for `k >= 1`; `D̄_0` is `D_0`.
    pub fn open(&self, k: usize) -> &PartialResolution {
        if k == 0 {
            &self.closed[0]
        } else {
            &self.open[k - 1]
        }
    }
}

/// Partial resolutions with the default orientation choice.
pub fn partial_diagrams(d: &LinkDiagram, selected: &[usize]) -> Result<PartialResolutions> {
    partial_diagrams_with(d, selected, |_, _, n| vec![false; n])
}

/// Like [`partial_diagrams`], but `choose(k, kind, components)` returns a
/// mask of components (in [`LinkDiagram::components`] order) to reverse in
/// each diagram that does not inherit its orientation.
pub fn partial_diagrams_with<F>(d: &LinkDiagram, selected: &[usize], mut choose: F) -> Result<PartialResolutions>
where
    F: FnMut(usize, PartialKind, usize) -> Vec<bool>,
{
    let n = d.crossing_count();
    let mut seen = vec![false; n];
    for &c in selected {
        if c >= n {
            return Err(Error::Selection(format!("crossing {c} out of range (n = {n})")));
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::Selection(format!("crossing {c} selected twice")));
        }
    }

    let (p0, m0) = d.crossing_signs();
    let base = PartialResolution {
        k: 0,
        kind: PartialKind::Closed,
        diagram: d.clone(),
        crossing_map: (0..n).collect(),
        inherited: true,
        n_plus: p0,
        n_minus: m0,
    };
    let mut closed = vec![base];
    let mut open = Vec::with_capacity(selected.len());
    let mut signs = Vec::with_capacity(selected.len());

    for (i, &c) in selected.iter().enumerate() {
        let k = i + 1;
        let prev = &closed[i];
        let local = prev.crossing_map.iter().position(|&x| x == c).expect("selected crossing still present");
        let sign = prev.diagram.crossings()[local].sign;
        signs.push(sign);

        let mut make = |bit: bool, kind: PartialKind| {
            let (mut diagram, crossing_map) = smooth_one(&prev.diagram, &prev.crossing_map, local, bit);
            let inherited = (sign == Sign::Neg) == bit;
            if !inherited {
                let flip = choose(k, kind, diagram.component_count());
                if flip.iter().any(|&f| f) {
                    diagram = diagram.reverse_components(&flip);
                }
            }
            let (n_plus, n_minus) = diagram.crossing_signs();
            PartialResolution { k, kind, diagram, crossing_map, inherited, n_plus, n_minus }
        };
        let o = make(false, PartialKind::Open);
        let cl = make(true, PartialKind::Closed);
        open.push(o);
        closed.push(cl);
    }

    Ok(PartialResolutions { selected: selected.to_vec(), closed, open, signs })
}

/// Smooths crossing `local` of `d` and orients the result to agree with `d`
/// at the start of each component's smallest edge.
fn smooth_one(d: &LinkDiagram, map: &[usize], local: usize, bit: bool) -> (LinkDiagram, Vec<usize>) {
    let x = d.crossings()[local];
    let mut rename: HashMap<Edge, Edge> = HashMap::new();
    fn find(rename: &HashMap<Edge, Edge>, mut e: Edge) -> Edge {
        while let Some(&t) = rename.get(&e) {
            e = t;
        }
        e
    }
    let mut circles = d.circles().to_vec();
    for (a, b) in Crossing::smoothing_pairs(bit) {
        let (ea, eb) = (find(&rename, x.edges[a]), find(&rename, x.edges[b]));
        if ea == eb {
            circles.push(ea);
        } else {
            let (lo, hi) = (ea.min(eb), ea.max(eb));
            rename.insert(hi, lo);
        }
    }

    let mut records = Vec::with_capacity(d.crossing_count() - 1);
    let mut parent_entry = Vec::with_capacity(d.crossing_count() - 1);
    let mut new_map = Vec::with_capacity(d.crossing_count() - 1);
    for (i, y) in d.crossings().iter().enumerate() {
        if i == local {
            continue;
        }
        records.push(y.edges.map(|e| find(&rename, e)));
        parent_entry.push(*y);
        new_map.push(map[i]);
    }

    let sk = Skeleton::new(records, circles).expect("smoothing preserves edge multiplicities");
    let forward: Vec<bool> = sk
        .components()
        .iter()
        .map(|comp| match comp.exits.first() {
            Some(&(c, s)) => !parent_entry[c].is_entry(s),
            None => true,
        })
        .collect();
    let diagram = sk.orient(&forward).expect("orientation choice is consistent");
    (diagram, new_map)
}
