//! Text format for diagrams.
//!
//! ```text
//! # trefoil
//! X 1 5 2 4
//! X 3 1 4 6
//! X 5 3 6 2
//! ```
//!
//! `X a b c d` is a crossing in PD order, `O e` a crossingless circle and
//! `B w l1 l2 ...` a braid closure on `w` strands. A braid line cannot be
//! mixed with crossing or circle lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{BraidWord, Edge, LinkDiagram};

pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut records: Vec<[Edge; 4]> = Vec::new();
    let mut circles: Vec<Edge> = Vec::new();
    let mut braid: Option<(usize, BraidWord)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let tag = tokens.next().unwrap();
        let err = |msg: String| Error::Parse { line, msg };
        let edge = |t: &str| t.parse::<Edge>().map_err(|_| err(format!("bad edge identifier '{t}'")));
        match tag {
            "X" => {
                let ids = tokens.map(edge).collect::<Result<Vec<_>>>()?;
                let rec: [Edge; 4] =
                    ids.try_into().map_err(|v: Vec<Edge>| err(format!("crossing needs 4 edges, got {}", v.len())))?;
                records.push(rec);
            }
            "O" => {
                let ids = tokens.map(edge).collect::<Result<Vec<_>>>()?;
                match ids.as_slice() {
                    [e] => circles.push(*e),
                    _ => return Err(err(format!("circle needs 1 edge, got {}", ids.len()))),
                }
            }
            "B" => {
                if braid.is_some() {
                    return Err(err("more than one braid line".into()));
                }
                let width = tokens
                    .next()
                    .ok_or_else(|| err("braid line needs a width".into()))?
                    .parse::<usize>()
                    .map_err(|_| err("bad braid width".into()))?;
                let letters = tokens
                    .map(|t| t.parse::<i32>().map_err(|_| err(format!("bad braid letter '{t}'"))))
                    .collect::<Result<Vec<_>>>()?;
                braid = Some((line, BraidWord::new(width, letters)?));
            }
            other => return Err(err(format!("unknown record '{other}'"))),
        }
    }

    match braid {
        Some((line, _)) if !records.is_empty() || !circles.is_empty() => {
            Err(Error::Parse { line, msg: "braid line mixed with crossing records".into() })
        }
        Some((_, b)) => Ok(LinkDiagram::from_braid(&b)),
        None => LinkDiagram::from_pd(records, circles),
    }
}

impl LinkDiagram {
    /// Serializes to the text format; [`parse_pd`] reads it back to the same
    /// diagram.
    pub fn to_pd_text(&self) -> String {
        let mut out = String::new();
        for x in self.crossings() {
            let [a, b, c, d] = x.edges;
            writeln!(out, "X {a} {b} {c} {d}").unwrap();
        }
        for c in self.circles() {
            writeln!(out, "O {c}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf() {
        let d = parse_pd("X 1 4 2 3\nX 3 2 4 1\n").unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(d.component_count(), 2);
    }

    #[test]
    fn comments_and_blank_lines() {
        let d = parse_pd("# trefoil\n\nX 1 5 2 4  # first\nX 3 1 4 6\nX 5 3 6 2\n").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_pd(""), Err(Error::Empty));
        assert_eq!(parse_pd("# nothing\n"), Err(Error::Empty));
    }

    #[test]
    fn triple_edge() {
        let e = parse_pd("X 1 1 1 2\nX 2 3 3 4\n").unwrap_err();
        assert!(matches!(e, Error::EdgeMultiplicity { edge: 1, count: 3 }), "{e:?}");
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_pd("X 1 2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_pd("O\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pd("X 1 a 2 3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pd("Y 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pd("B 3 -1 -2\nO 7\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn inconsistent_orientation() {
        // edge 1 is the incoming under-strand at both of its crossings
        let e = parse_pd("X 1 2 3 4\nX 1 4 3 2\n").unwrap_err();
        assert!(matches!(e, Error::InconsistentOrientation { .. }), "{e:?}");
    }

    #[test]
    fn circles_and_braids() {
        let d = parse_pd("O 0\nO 5\n").unwrap();
        assert_eq!(d.component_count(), 2);
        let b = parse_pd("B 3 -1 -2 -1 -2\n").unwrap();
        assert_eq!(b.crossing_signs(), (0, 4));
    }

    #[test]
    fn text_round_trip() {
        let d = parse_pd("B 4 1 -2 3 -1 2 2 -3\n").unwrap();
        assert_eq!(parse_pd(&d.to_pd_text()).unwrap(), d);
    }
}
