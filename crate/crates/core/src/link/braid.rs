use crate::error::{Error, Result};

use super::{Crossing, Edge, LinkDiagram, Sign};

/// A braid word on `width` strands. Letter `l` is the generator
/// `sigma_{|l|}` with the sign of `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    width: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(width: usize, letters: Vec<i32>) -> Result<Self> {
        if width == 0 {
            return Err(Error::BraidWidth);
        }
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= width) {
            return Err(Error::BraidLetter { letter, width });
        }
        Ok(BraidWord { width, letters })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// The permutation of strand positions induced by the word:
    /// `perm[p]` is where the strand starting at position `p` ends.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.width).collect(); // at[pos] = starting strand
        for &l in &self.letters {
            let p = l.unsigned_abs() as usize - 1;
            at.swap(p, p + 1);
        }
        let mut perm = vec![0; self.width];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }
}

/// The braid word of the negative torus link `T(3, q)`: `(s1^-1 s2^-1)^q`.
pub fn torus_braid(q: i64) -> Result<BraidWord> {
    if q < 1 {
        return Err(Error::TorusParam { q, min: 1 });
    }
    let letters = (0..q).flat_map(|_| [-1, -2]).collect();
    BraidWord::new(3, letters)
}

impl LinkDiagram {
    /// Closure of a braid, strands running downward. Edges are numbered from
    /// the top, so the top of position `p` carries edge `p`. Positions no
    /// letter touches close up into crossingless circles.
    pub fn from_braid(b: &BraidWord) -> LinkDiagram {
        let w = b.width();
        let mut current: Vec<Edge> = (0..w as Edge).collect();
        let mut next_id = w as Edge;
        let mut crossings = Vec::with_capacity(b.letters().len());
        for &l in b.letters() {
            let p = l.unsigned_abs() as usize - 1;
            let (a, bb) = (current[p], current[p + 1]);
            let (c, d) = (next_id, next_id + 1);
            next_id += 2;
            // a, b enter at the top (left, right); c, d leave at the bottom.
            let x = if l > 0 {
                // over-strand runs b -> c
                Crossing::new([a, c, d, bb], Sign::Pos)
            } else {
                // over-strand runs a -> d
                Crossing::new([bb, a, c, d], Sign::Neg)
            };
            crossings.push(x);
            current[p] = c;
            current[p + 1] = d;
        }
        // identify the bottom edge of each position with its top edge
        let rename: Vec<(Edge, Edge)> =
            current.iter().enumerate().filter(|&(p, &e)| e != p as Edge).map(|(p, &e)| (e, p as Edge)).collect();
        for x in &mut crossings {
            for e in &mut x.edges {
                if let Some(&(_, to)) = rename.iter().find(|(from, _)| from == e) {
                    *e = to;
                }
            }
        }
        let circles = (0..w).filter(|&p| current[p] == p as Edge).map(|p| p as Edge).collect();
        LinkDiagram::new(crossings, circles).expect("braid closure is a valid diagram")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_letters() {
        assert!(BraidWord::new(3, vec![1, -2]).is_ok());
        assert!(matches!(BraidWord::new(3, vec![3]), Err(Error::BraidLetter { letter: 3, .. })));
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
    }

    #[test]
    fn torus_words() {
        assert_eq!(torus_braid(1).unwrap().letters(), &[-1, -2]);
        assert_eq!(torus_braid(2).unwrap().letters(), &[-1, -2, -1, -2]);
        assert!(torus_braid(0).is_err());
    }

    #[test]
    fn empty_braid_is_unlink() {
        let d = LinkDiagram::from_braid(&BraidWord::new(2, vec![]).unwrap());
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn signs_follow_letters() {
        let b = BraidWord::new(4, vec![1, -2, 3, 3, -1]).unwrap();
        let d = LinkDiagram::from_braid(&b);
        let signs: Vec<i32> = d.crossings().iter().map(|x| x.sign.value()).collect();
        assert_eq!(signs, vec![1, -1, 1, 1, -1]);
    }

    #[test]
    fn closure_matches_parsed_orientation() {
        // re-inferring the orientation from the bare PD records must agree
        let b = BraidWord::new(3, vec![1, -2, 1, 2, -1, -2, 2]).unwrap();
        let d = LinkDiagram::from_braid(&b);
        let recs = d.crossings().iter().map(|x| x.edges).collect();
        let p = LinkDiagram::from_pd(recs, d.circles().to_vec()).unwrap();
        assert_eq!(p, d);
    }
}
