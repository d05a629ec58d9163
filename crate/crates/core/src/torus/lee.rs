use std::collections::BTreeMap;

use petgraph::algo::dinics;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::complex::{KhTable, LeeTable};

use super::recursion::TorusFamilyIndex;

/// Lee homology of the negative `T(3, q)`: two generators in degree 0 for
/// knots; for the three-component links two in degree 0 and six in `-4N`.
pub fn lee_survivors(idx: &TorusFamilyIndex) -> LeeTable {
    if idx.is_knot() {
        LeeTable::from_degrees(&[0, 0])
    } else {
        let n = -4 * idx.n as i32;
        LeeTable::from_degrees(&[0, 0, n, n, n, n, n, n])
    }
}

/// Whether all generators of `t` except `survivors.get(i)` in each
/// homological degree `i` can be cancelled in pairs `(i, j)`, `(i+1, j+4r)`
/// with `r ≥ 1`, as the higher Lee differentials would.
pub fn lee_pairing(t: &KhTable, survivors: &LeeTable) -> bool {
    let even = |i: i32| i.rem_euclid(2) == 0;
    let mut g: DiGraph<(), u64> = DiGraph::new();
    let (s, sink) = (g.add_node(()), g.add_node(()));
    let total = (t.total_dim() + survivors.total_dim()) as u64;
    let nodes: Vec<((i32, i32), usize, NodeIndex)> = t.iter().map(|(k, d)| (k, d, g.add_node(()))).collect();
    let (mut need_even, mut need_odd) = (0u64, 0u64);
    for &((i, _), d, v) in &nodes {
        if even(i) {
            g.add_edge(s, v, d as u64);
            need_even += d as u64;
        } else {
            g.add_edge(v, sink, d as u64);
            need_odd += d as u64;
        }
    }
    // pairing edges run from the even to the odd end
    let by_degree: BTreeMap<i32, Vec<(i32, NodeIndex)>> =
        nodes.iter().fold(BTreeMap::new(), |mut m, &((i, j), _, v)| {
            m.entry(i).or_insert_with(Vec::new).push((j, v));
            m
        });
    for (&i, lower) in &by_degree {
        let Some(upper) = by_degree.get(&(i + 1)) else { continue };
        for &(j, a) in lower {
            for &(_, b) in upper.iter().filter(|&&(j2, _)| j2 > j && (j2 - j) % 4 == 0) {
                if even(i) {
                    g.add_edge(a, b, total);
                } else {
                    g.add_edge(b, a, total);
                }
            }
        }
    }
    for (&i, &c) in &survivors.dims {
        let x = g.add_node(());
        if even(i) {
            g.add_edge(x, sink, c as u64);
            need_odd += c as u64;
        } else {
            g.add_edge(s, x, c as u64);
            need_even += c as u64;
        }
        for &(_, v) in by_degree.get(&i).into_iter().flatten() {
            if even(i) {
                g.add_edge(v, x, total);
            } else {
                g.add_edge(x, v, total);
            }
        }
    }
    if need_even != need_odd {
        return false;
    }
    dinics(&g, s, sink).0 == need_even
}
