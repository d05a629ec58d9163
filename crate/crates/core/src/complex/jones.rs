use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::homology::KhTable;
use super::Config;
use crate::error::{Error, Result};
use crate::linalg::LaurentPoly;
use crate::link::resolve::IndexedDiagram;
use crate::link::{BraidWord, LinkDiagram, UnionFind};

/// Unnormalized Jones polynomial by the state sum over all smoothings,
/// `Σ_α (-1)^r q^r (q + q^-1)^k`, then multiplied by `(-1)^{n⁻} q^{n⁺-2n⁻}`.
pub fn kauffman_jones(d: &LinkDiagram) -> Result<LaurentPoly> {
    kauffman_jones_with(d, &Config::default())
}

pub fn kauffman_jones_with(d: &LinkDiagram, config: &Config) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    if n > config.cube_limit || n > 30 {
        return Err(Error::CubeLimit { crossings: n, limit: config.cube_limit.min(30) });
    }
    let idx = IndexedDiagram::new(d);
    // number of states with r ones and k circles
    let counts: BTreeMap<(u32, usize), i64> = (0..1u64 << n)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc, alpha| {
            *acc.entry((alpha.count_ones(), idx.resolve_mask(alpha).circle_count)).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (key, v) in b {
                *a.entry(key).or_insert(0) += v;
            }
            a
        });
    let circle = LaurentPoly::circle();
    let mut sum = LaurentPoly::zero();
    for ((r, k), count) in counts {
        let sign = if r % 2 == 0 { count } else { -count };
        sum = &sum + &(&circle.pow(k as u32) * &LaurentPoly::monomial(r as i32, sign));
    }
    let (np, nm) = d.crossing_signs();
    let norm = LaurentPoly::monomial(np as i32 - 2 * nm as i32, if nm % 2 == 0 { 1 } else { -1 });
    Ok(&sum * &norm)
}

// A Temperley-Lieb diagram on `w` strands: an involution on points
// `0..w` (top) and `w..2w` (bottom).
type Matching = Vec<u8>;

fn identity(w: usize) -> Matching {
    (0..2 * w).map(|p| ((p + w) % (2 * w)) as u8).collect()
}

fn cup_cap(w: usize, i: usize) -> Matching {
    let mut m = identity(w);
    m[i] = i as u8 + 1;
    m[i + 1] = i as u8;
    m[w + i] = (w + i + 1) as u8;
    m[w + i + 1] = (w + i) as u8;
    m
}

/// `a` stacked above `b`, with the number of closed loops formed.
fn compose(a: &Matching, b: &Matching, w: usize) -> (Matching, usize) {
    let mut out = vec![0u8; 2 * w];
    let mut seen = vec![false; w];
    // follow from an outer point until reaching another outer point
    let walk = |start: usize, seen: &mut Vec<bool>| -> usize {
        let (mut in_a, mut p) = if start < w { (true, start) } else { (false, start) };
        loop {
            let q = if in_a { a[p] as usize } else { b[p] as usize };
            match (in_a, q < w) {
                (true, true) => return q,
                (false, false) => return q,
                (true, false) => {
                    seen[q - w] = true;
                    in_a = false;
                    p = q - w;
                }
                (false, true) => {
                    seen[q] = true;
                    in_a = true;
                    p = q + w;
                }
            }
        }
    };
    for (p, o) in out.iter_mut().enumerate() {
        *o = walk(p, &mut seen) as u8;
    }
    // middle points not on a through-path lie on closed loops
    let mut loops = 0;
    for s in 0..w {
        if seen[s] {
            continue;
        }
        loops += 1;
        let mut p = s;
        loop {
            seen[p] = true;
            let q = a[p + w] as usize - w;
            seen[q] = true;
            p = b[q] as usize;
            if p == s {
                break;
            }
        }
    }
    (out, loops)
}

fn closure_loops(m: &Matching, w: usize) -> usize {
    let mut uf = UnionFind::new(2 * w);
    for p in 0..w {
        uf.union(p, p + w);
    }
    for (p, &q) in m.iter().enumerate() {
        uf.union(p, q as usize);
    }
    let mut roots: Vec<usize> = (0..2 * w).map(|p| uf.find(p)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Jones polynomial of a braid closure, normalized as [`kauffman_jones`],
/// by expanding each crossing in the Temperley-Lieb algebra. Linear in the
/// braid length, so usable far beyond the cube limit.
pub fn braid_jones(b: &BraidWord) -> LaurentPoly {
    let w = b.width();
    let circle = LaurentPoly::circle();
    let mut state: HashMap<Matching, LaurentPoly> = HashMap::from([(identity(w), LaurentPoly::one())]);
    let (mut np, mut nm) = (0i32, 0i32);
    for &l in b.letters() {
        let e = cup_cap(w, l.unsigned_abs() as usize - 1);
        // oriented (vertical) smoothing is the 0-smoothing of a positive
        // crossing and the 1-smoothing of a negative one
        let (vertical, horizontal) = if l > 0 {
            np += 1;
            (LaurentPoly::one(), LaurentPoly::monomial(1, -1))
        } else {
            nm += 1;
            (LaurentPoly::monomial(1, -1), LaurentPoly::one())
        };
        let mut next: HashMap<Matching, LaurentPoly> = HashMap::new();
        for (m, c) in &state {
            let slot = next.entry(m.clone()).or_default();
            *slot = &*slot + &(c * &vertical);
            let (prod, loops) = compose(m, &e, w);
            let term = &(c * &horizontal) * &circle.pow(loops as u32);
            let slot = next.entry(prod).or_default();
            *slot = &*slot + &term;
        }
        next.retain(|_, c| !c.is_zero());
        state = next;
    }
    let mut sum = LaurentPoly::zero();
    for (m, c) in &state {
        sum = &sum + &(c * &circle.pow(closure_loops(m, w) as u32));
    }
    &sum * &LaurentPoly::monomial(np - 2 * nm, if nm % 2 == 0 { 1 } else { -1 })
}

/// `Σ (-1)^i q^j dim Kh^{i,j}`.
pub fn graded_euler(t: &KhTable) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for ((i, j), d) in t.iter() {
        p.add_term(j, if i % 2 == 0 { d as i64 } else { -(d as i64) });
    }
    p
}
