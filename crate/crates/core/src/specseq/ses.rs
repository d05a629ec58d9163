use std::collections::BTreeSet;

use crate::check::CheckReport;
use crate::complex::{ChainComplex, Config, FrobeniusAlgebra};
use crate::error::{Error, Result};
use crate::link::{partial_diagrams, LinkDiagram, PartialResolutions};

use super::constants::ss_constants;

/// Checks the splitting `C̄(D_{k-1}) = C̄(D̄_k) ⊕ C̄(D_k)[1]{1}` dimension-wise,
/// that the second summand is a subcomplex, and the normalized form with
/// the shifts `[-a_k]{-b_k}` and `[-ã_k]{-b̃_k}`.
pub fn verify_ses(d: &LinkDiagram, selected: &[usize], k: usize) -> Result<CheckReport> {
    verify_ses_with(d, selected, k, &Config::default())
}

pub fn verify_ses_with(d: &LinkDiagram, selected: &[usize], k: usize, config: &Config) -> Result<CheckReport> {
    let parts = partial_diagrams(d, selected)?;
    verify_ses_parts(&parts, k, config)
}

pub(crate) fn verify_ses_parts(parts: &PartialResolutions, k: usize, config: &Config) -> Result<CheckReport> {
    if k == 0 || k > parts.m() {
        return Err(Error::Selection(format!("k = {k} outside 1..={}", parts.m())));
    }
    let c = ss_constants(parts)?;
    let kh = FrobeniusAlgebra::khovanov();
    let parent = ChainComplex::build(&parts.closed(k - 1).diagram, &kh, config)?;
    let closed = ChainComplex::build(&parts.closed(k).diagram, &kh, config)?;
    let open = ChainComplex::build(&parts.open(k).diagram, &kh, config)?;
    let local = parts.closed(k - 1).crossing_map.iter().position(|&x| x == parts.selected[k - 1]).unwrap();

    let mut rep = CheckReport::new(format!("short exact sequence, k={k}"));
    let mut coords: BTreeSet<(i32, i32)> = support(&parent).collect();
    coords.extend(support(&open));
    coords.extend(support(&closed).map(|(r, j)| (r + 1, j + 1)));
    for &(r, j) in &coords {
        let whole = parent.dim_unnormalized(r, j);
        let split = open.dim_unnormalized(r, j) + closed.dim_unnormalized(r - 1, j - 1);
        rep.expect(whole == split, || format!("C̄^({r},{j}): {whole} != {split}"));
        if r < 0 || r as usize > parent.crossing_count() {
            continue;
        }
        // the states with the k-th crossing 1-smoothed are exactly the sub-object
        let space = parent.space(r as usize);
        let sub = space.block(j).filter(|&s| space.states()[s].smoothing >> local & 1 == 1).count();
        let expected = closed.dim_unnormalized(r - 1, j - 1);
        rep.expect(sub == expected, || format!("sub-object at ({r},{j}): {sub} != {expected}"));
    }
    for r in 0..parent.crossing_count() {
        let (src, dst) = (parent.space(r), parent.space(r + 1));
        let leaks = parent
            .differential(r)
            .iter()
            .filter(|&(row, col, _)| {
                src.states()[col].smoothing >> local & 1 == 1 && dst.states()[row].smoothing >> local & 1 == 0
            })
            .count();
        rep.expect(leaks == 0, || format!("d_{r} maps {leaks} entries out of the sub-object"));
    }

    let normalized = |cx: &ChainComplex| {
        let (di, dj) = (cx.homological_shift(), cx.quantum_shift());
        support(cx).map(move |(r, j)| (r + di, j + dj)).collect::<Vec<_>>()
    };
    let mut coords: BTreeSet<(i32, i32)> = normalized(&parent).into_iter().collect();
    coords.extend(normalized(&open).into_iter().map(|(i, j)| (i - c.a_tilde(k), j - c.b_tilde(k))));
    coords.extend(normalized(&closed).into_iter().map(|(i, j)| (i - c.a(k), j - c.b(k))));
    for (i, j) in coords {
        let whole = parent.dim(i, j);
        let split = open.dim(i + c.a_tilde(k), j + c.b_tilde(k)) + closed.dim(i + c.a(k), j + c.b(k));
        rep.expect(whole == split, || format!("C^({i},{j}): {whole} != {split}"));
    }
    Ok(rep)
}

/// Unnormalized bidegrees `(r, j)` with nonzero chain groups.
fn support(c: &ChainComplex) -> impl Iterator<Item = (i32, i32)> + '_ {
    (0..=c.crossing_count()).flat_map(move |r| c.space(r).blocks().iter().map(move |b| (r as i32, b.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::torus_braid;

    #[test]
    fn trefoil_each_crossing() {
        let d = LinkDiagram::from_braid(&torus_braid(2).unwrap());
        for c in 0..4 {
            let rep = verify_ses(&d, &[c], 1).unwrap();
            assert!(rep.passed, "{:?}", rep.failures);
        }
    }

    #[test]
    fn torus_top_two_second_step() {
        let d = LinkDiagram::from_braid(&torus_braid(3).unwrap());
        for k in 1..=2 {
            assert!(verify_ses(&d, &[0, 1], k).unwrap().passed);
        }
        assert!(verify_ses(&d, &[0, 1], 3).is_err());
    }
}
