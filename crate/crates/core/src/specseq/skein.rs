use std::collections::BTreeSet;

use super::pages::SpectralSequence;
use crate::check::CheckReport;
use crate::complex::{kauffman_jones_with, khovanov_homology_with, Config};
use crate::error::Result;
use crate::linalg::LaurentPoly;
use crate::link::{partial_diagrams, LinkDiagram};

use super::constants::ss_constants;

/// Checks the long exact sequence of a single crossing `c`: with
/// `D' = D_1` and `D'' = D̄_1`,
/// `dim Kh^{i,j}(D) <= dim Kh^{i+a,j+b}(D') + dim Kh^{i+ã,j+b̃}(D'')`,
/// `χ(D) = (-1)^a q^-b χ(D') + (-1)^ã q^-b̃ χ(D'')` on Kauffman-bracket
/// polynomials, and that the one-crossing spectral sequence collapses at
/// `E_2` onto `Kh(D)`.
pub fn skein_les_check(d: &LinkDiagram, c: usize) -> Result<CheckReport> {
    skein_les_check_with(d, c, &Config::default())
}

pub fn skein_les_check_with(d: &LinkDiagram, c: usize, config: &Config) -> Result<CheckReport> {
    let parts = partial_diagrams(d, &[c])?;
    let k = ss_constants(&parts)?;
    let (a, b, at, bt) = (k.a(1), k.b(1), k.a_tilde(1), k.b_tilde(1));
    let (closed, open) = (&parts.closed(1).diagram, &parts.open(1).diagram);
    let mut rep = CheckReport::new(format!("skein sequence at crossing {c}"));

    let kh = khovanov_homology_with(d, config)?;
    let kh1 = khovanov_homology_with(closed, config)?;
    let kh0 = khovanov_homology_with(open, config)?;
    let mut coords: BTreeSet<(i32, i32)> = kh.iter().map(|e| e.0).collect();
    coords.extend(kh1.iter().map(|((i, j), _)| (i - a, j - b)));
    coords.extend(kh0.iter().map(|((i, j), _)| (i - at, j - bt)));
    for (i, j) in coords {
        let (lhs, rhs) = (kh.get(i, j), kh1.get(i + a, j + b) + kh0.get(i + at, j + bt));
        rep.expect(lhs <= rhs, || format!("Kh^({i},{j}) = {lhs} exceeds {rhs}"));
    }

    let sign = |e: i32| if e % 2 == 0 { 1 } else { -1 };
    let chi = kauffman_jones_with(d, config)?;
    let chi1 = kauffman_jones_with(closed, config)?;
    let chi0 = kauffman_jones_with(open, config)?;
    let sum = &(&chi1 * &LaurentPoly::monomial(-b, sign(a))) + &(&chi0 * &LaurentPoly::monomial(-bt, sign(at)));
    rep.expect(chi == sum, || format!("Euler characteristic {chi} != {sum}"));

    let ss = SpectralSequence::new(d, &[c], config)?;
    for j in ss.quantum_degrees() {
        let r = ss.report(j, 2)?;
        rep.expect(r.passed(), || format!("spectral sequence at j={j}: {:?}", r.checks));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::{torus_braid, BraidWord};

    #[test]
    fn kinked_unknot() {
        let d = LinkDiagram::from_braid(&BraidWord::new(2, vec![1]).unwrap());
        assert_eq!(d.crossing_count(), 1);
        assert!(skein_les_check(&d, 0).unwrap().passed);
        let d = LinkDiagram::from_braid(&BraidWord::new(2, vec![-1]).unwrap());
        assert!(skein_les_check(&d, 0).unwrap().passed);
    }

    #[test]
    fn trefoil_every_crossing() {
        let d = LinkDiagram::from_braid(&torus_braid(2).unwrap());
        for c in 0..4 {
            let rep = skein_les_check(&d, c).unwrap();
            assert!(rep.passed, "{:?}", rep.failures);
        }
    }
}
