use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

use super::{Crossing, Edge, LinkDiagram, Sign};

/// Unoriented PD data: crossing records with the slot convention (0/2 under,
/// 1/3 over, counterclockwise) but no direction on the strands.
#[derive(Clone, Debug)]
pub(crate) struct Skeleton {
    pub records: Vec<[Edge; 4]>,
    pub circles: Vec<Edge>,
    occ: HashMap<Edge, [(usize, usize); 2]>,
}

/// One component, traversed in its canonical direction: leave the first
/// occurrence of the smallest edge and follow the strand.
#[derive(Clone, Debug)]
pub(crate) struct SkeletonComponent {
    /// Edges in traversal order, starting with the smallest.
    pub edges: Vec<Edge>,
    /// Slots through which the traversal leaves a crossing, in order.
    pub exits: Vec<(usize, usize)>,
    /// Slots through which the traversal enters a crossing, in order.
    pub entries: Vec<(usize, usize)>,
}

impl Skeleton {
    pub fn new(records: Vec<[Edge; 4]>, circles: Vec<Edge>) -> Result<Self> {
        let mut seen: HashMap<Edge, Vec<(usize, usize)>> = HashMap::new();
        for (c, rec) in records.iter().enumerate() {
            for (s, &e) in rec.iter().enumerate() {
                seen.entry(e).or_default().push((c, s));
            }
        }
        let mut seen: Vec<_> = seen.into_iter().collect();
        seen.sort_unstable_by_key(|(e, _)| *e);
        let mut occ = HashMap::with_capacity(seen.len());
        for (e, v) in seen {
            if v.len() != 2 {
                return Err(Error::EdgeMultiplicity { edge: e, count: v.len() });
            }
            occ.insert(e, [v[0], v[1]]);
        }
        let mut circle_set = BTreeSet::new();
        for &c in &circles {
            if occ.contains_key(&c) || !circle_set.insert(c) {
                return Err(Error::EdgeMultiplicity { edge: c, count: 3 });
            }
        }
        Ok(Skeleton { records, circles, occ })
    }

    fn other(&self, e: Edge, here: (usize, usize)) -> (usize, usize) {
        let [a, b] = self.occ[&e];
        if a == here {
            b
        } else {
            a
        }
    }

    /// Components with crossings first (ordered by smallest edge), then the
    /// crossingless circles (ordered by identifier), all interleaved by
    /// smallest edge.
    pub fn components(&self) -> Vec<SkeletonComponent> {
        let mut starts: Vec<Edge> = self.occ.keys().copied().collect();
        starts.sort_unstable();
        let mut done: BTreeSet<Edge> = BTreeSet::new();
        let mut comps = Vec::new();
        for e0 in starts {
            if done.contains(&e0) {
                continue;
            }
            let start = self.occ[&e0][0].min(self.occ[&e0][1]);
            let mut comp = SkeletonComponent { edges: vec![], exits: vec![], entries: vec![] };
            let mut exit = start;
            loop {
                let (c, s) = exit;
                let e = self.records[c][s];
                done.insert(e);
                comp.edges.push(e);
                comp.exits.push(exit);
                let entry = self.other(e, exit);
                comp.entries.push(entry);
                exit = (entry.0, (entry.1 + 2) % 4);
                if exit == start {
                    break;
                }
            }
            comps.push(comp);
        }
        for &c in &self.circles {
            comps.push(SkeletonComponent { edges: vec![c], exits: vec![], entries: vec![] });
        }
        comps.sort_by_key(|c| c.edges[0]);
        comps
    }

    /// Direction of each component implied by its under-strand passages.
    pub fn infer_directions(&self) -> Result<Vec<bool>> {
        self.components()
            .iter()
            .map(|comp| {
                let mut fwd = 0usize;
                let mut rev = 0usize;
                for &(_, s) in &comp.exits {
                    match s {
                        2 => fwd += 1,
                        0 => rev += 1,
                        _ => {}
                    }
                }
                for &(_, s) in &comp.entries {
                    match s {
                        0 => fwd += 1,
                        2 => rev += 1,
                        _ => {}
                    }
                }
                match (fwd, rev) {
                    (_, 0) if fwd > 0 => Ok(true),
                    (0, _) if rev > 0 => Ok(false),
                    (0, 0) => Ok(self.over_only_direction(comp)),
                    _ => Err(Error::InconsistentOrientation { edge: comp.edges[0] }),
                }
            })
            .collect()
    }

    // A component that only passes over is oriented by the usual
    // consecutive-labelling rule at its first crossing: the over-strand runs
    // from slot 3 to slot 1 when edges[1] == edges[3] + 1 or edges[3] > edges[1] + 1.
    fn over_only_direction(&self, comp: &SkeletonComponent) -> bool {
        let Some(&(c, s)) = comp.exits.first() else {
            return true;
        };
        let r = self.records[c];
        let three_to_one = r[1] == r[3].wrapping_add(1) || r[3] > r[1].saturating_add(1);
        (s == 1) == three_to_one
    }

    /// Produces the oriented diagram in which component `i` runs in its
    /// canonical direction iff `forward[i]`.
    pub fn orient(&self, forward: &[bool]) -> Result<LinkDiagram> {
        let comps = self.components();
        assert_eq!(comps.len(), forward.len());
        let mut entry = vec![[false; 4]; self.records.len()];
        for (comp, &fwd) in comps.iter().zip(forward) {
            let slots = if fwd { &comp.entries } else { &comp.exits };
            for &(c, s) in slots {
                entry[c][s] = true;
            }
        }
        let crossings = self
            .records
            .iter()
            .zip(&entry)
            .map(|(rec, ent)| {
                let [a, b, c, d] = *rec;
                let (edges, over_in) = if ent[0] {
                    (*rec, if ent[3] { 3 } else { 1 })
                } else {
                    ([c, d, a, b], if ent[1] { 3 } else { 1 })
                };
                let sign = if over_in == 3 { Sign::Pos } else { Sign::Neg };
                Crossing { edges, sign }
            })
            .collect();
        LinkDiagram::new(crossings, self.circles.clone())
    }
}
