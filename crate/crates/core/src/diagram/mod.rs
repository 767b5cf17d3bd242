//! Knot diagrams: PD-code and braid-word input, Wirtinger presentations
//! and Seifert-circle genus bounds.
//!
//! PD convention: `X[a,b,c,d]` lists the four edges at a crossing
//! counterclockwise, starting from the incoming under-strand `a`; `c` is
//! the outgoing under-strand. Edge orientation is recovered by tracing the
//! single knot component, so input labels need not be consecutive. A
//! crossing is positive when the over-strand runs from `d` to `b`.

mod braid;
mod pd;
mod presentation;
mod seifert;

pub use braid::parse_braid;
pub use pd::parse_pd;
pub use presentation::{AbelianGroup, ConjugationRelation, GroupPresentation, Letter, Word};
pub use seifert::{seifert_circles, seifert_genus_upper, GenusEstimate};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("malformed input at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("arc {label} appears {count} times (expected exactly 2)")]
    ArcMultiplicity { label: i64, count: usize },
    #[error("diagram has {components} components; only knots are accepted")]
    MultiComponent { components: usize },
    #[error("under-strand orientation at crossing {crossing} contradicts the traced knot")]
    InconsistentOrientation { crossing: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// A crossing with its sign and incident edges `[a, b, c, d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub sign: Sign,
    pub arcs: [u32; 4],
}

impl Crossing {
    pub fn incoming_under(&self) -> u32 {
        self.arcs[0]
    }

    pub fn outgoing_under(&self) -> u32 {
        self.arcs[2]
    }

    pub fn incoming_over(&self) -> u32 {
        match self.sign {
            Sign::Positive => self.arcs[3],
            Sign::Negative => self.arcs[1],
        }
    }

    pub fn outgoing_over(&self) -> u32 {
        match self.sign {
            Sign::Positive => self.arcs[1],
            Sign::Negative => self.arcs[3],
        }
    }
}

/// A validated single-component knot diagram with edges labelled
/// `1..=2c` in orientation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    arcs: usize,
    source: String,
}

impl KnotDiagram {
    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
            arcs: 1,
            source: String::new(),
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Number of edge labels; `2c`, or 1 for the crossingless unknot.
    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|x| x.sign.as_i8() as i64).sum()
    }

    /// Successor of an edge label along the orientation.
    pub fn next_arc(&self, label: u32) -> u32 {
        if label as usize >= self.arcs {
            1
        } else {
            label + 1
        }
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&CanonicalDiagram::from(self)).expect("diagram serializes")
    }

    /// Builds a diagram from crossing tuples, tracing the knot to fix the
    /// orientation, relabelling edges `1..=2c` and inferring signs.
    ///
    /// `signs`, when given, must agree with the inferred signs; braid
    /// closure passes them through as a consistency check.
    pub(crate) fn from_tuples(
        tuples: &[[i64; 4]],
        source: String,
        signs: Option<&[Sign]>,
    ) -> Result<Self, DiagramError> {
        if tuples.is_empty() {
            return Ok(Self {
                source,
                ..Self::unknot()
            });
        }

        // Each label must occupy exactly two slots.
        let mut slots: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (x, t) in tuples.iter().enumerate() {
            for (p, &label) in t.iter().enumerate() {
                slots.entry(label).or_default().push((x, p));
            }
        }
        if let Some((&label, s)) = slots.iter().find(|(_, s)| s.len() != 2) {
            return Err(DiagramError::ArcMultiplicity {
                label,
                count: s.len(),
            });
        }
        let other_slot = |label: i64, here: (usize, usize)| -> (usize, usize) {
            let s = &slots[&label];
            if s[0] == here {
                s[1]
            } else {
                s[0]
            }
        };

        // Walk straight through each crossing. `path` records, per step,
        // the crossing entered, the slot entered by, and the label used.
        let components = count_components(tuples, &slots);
        if components != 1 {
            return Err(DiagramError::MultiComponent { components });
        }
        let start_label = *slots.keys().next().expect("nonempty");
        let start = slots[&start_label][0];
        let mut path: Vec<(usize, usize, i64)> = Vec::with_capacity(2 * tuples.len());
        let mut at = start;
        loop {
            let label = tuples[at.0][at.1];
            path.push((at.0, at.1, label));
            let exit = (at.0, (at.1 + 2) % 4);
            let exit_label = tuples[exit.0][exit.1];
            at = other_slot(exit_label, exit);
            if at == start {
                break;
            }
        }
        debug_assert_eq!(path.len(), 2 * tuples.len());

        // Forward direction: under-strands are entered through slot 0.
        let forward = match path.iter().find(|(_, p, _)| p % 2 == 0) {
            Some(&(_, p, _)) => p == 0,
            None => unreachable!("every crossing has an under-strand"),
        };
        // Incoming edges in traversal order, as (crossing, entry slot).
        let mut visits: Vec<(usize, usize, i64)> = if forward {
            path.clone()
        } else {
            path.iter()
                .rev()
                .map(|&(x, p, _)| (x, (p + 2) % 4, tuples[x][(p + 2) % 4]))
                .collect()
        };
        for &(x, p, _) in &visits {
            if p == 2 {
                return Err(DiagramError::InconsistentOrientation { crossing: x });
            }
        }
        // Edge k is the one entering visit k. Rotate so the smallest
        // original label becomes edge 1.
        let pos_min = visits
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| v.2)
            .map(|(i, _)| i)
            .expect("nonempty");
        visits.rotate_left(pos_min);

        let n_edges = visits.len();
        let mut relabel: BTreeMap<i64, u32> = BTreeMap::new();
        for (k, &(_, _, label)) in visits.iter().enumerate() {
            relabel.insert(label, k as u32 + 1);
        }
        let mut over_entry = vec![None; tuples.len()];
        for &(x, p, _) in &visits {
            if p % 2 == 1 {
                over_entry[x] = Some(p);
            }
        }
        let mut crossings = Vec::with_capacity(tuples.len());
        for (x, t) in tuples.iter().enumerate() {
            let sign = match over_entry[x] {
                Some(3) => Sign::Positive,
                Some(1) => Sign::Negative,
                _ => unreachable!("over-strand traversed once per crossing"),
            };
            if let Some(given) = signs {
                debug_assert_eq!(given[x], sign, "braid sign disagrees with geometry");
            }
            crossings.push(Crossing {
                sign,
                arcs: t.map(|l| relabel[&l]),
            });
        }
        Ok(Self {
            crossings,
            arcs: n_edges,
            source,
        })
    }
}

fn count_components(tuples: &[[i64; 4]], slots: &BTreeMap<i64, Vec<(usize, usize)>>) -> usize {
    // Union edges that pass straight through a crossing.
    let labels: Vec<i64> = slots.keys().copied().collect();
    let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for t in tuples {
        for (a, b) in [(t[0], t[2]), (t[1], t[3])] {
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            parent[ra] = rb;
        }
    }
    (0..labels.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

#[derive(Serialize, Deserialize)]
struct CanonicalDiagram {
    crossings: Vec<[i64; 5]>,
}

impl From<&KnotDiagram> for CanonicalDiagram {
    fn from(d: &KnotDiagram) -> Self {
        Self {
            crossings: d
                .crossings
                .iter()
                .map(|x| {
                    let [a, b, c, e] = x.arcs.map(i64::from);
                    [x.sign.as_i8() as i64, a, b, c, e]
                })
                .collect(),
        }
    }
}

impl Serialize for KnotDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CanonicalDiagram::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KnotDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CanonicalDiagram::deserialize(deserializer)?;
        let tuples: Vec<[i64; 4]> = raw.crossings.iter().map(|c| [c[1], c[2], c[3], c[4]]).collect();
        let d = KnotDiagram::from_tuples(&tuples, String::new(), None)
            .map_err(serde::de::Error::custom)?;
        for (x, c) in d.crossings.iter().zip(&raw.crossings) {
            if x.sign.as_i8() as i64 != c[0] {
                return Err(serde::de::Error::custom("crossing sign disagrees with orientation"));
            }
        }
        Ok(d)
    }
}
