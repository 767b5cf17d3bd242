use serde::{Deserialize, Serialize};

use super::KnotDiagram;

/// Genus bound from Seifert's algorithm on one diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusEstimate {
    pub seifert_circles: usize,
    pub crossings: usize,
    pub genus_upper: u32,
    /// Set when a certified genus from the knot table equals the bound.
    pub is_exact_hint: bool,
}

/// Number of circles after the oriented smoothing of every crossing.
pub fn seifert_circles(d: &KnotDiagram) -> usize {
    if d.crossings().is_empty() {
        return 1;
    }
    let n = d.arc_count();
    // next[e]: the edge followed after e's head is smoothed.
    let mut next = vec![0usize; n + 1];
    for x in d.crossings() {
        next[x.incoming_under() as usize] = x.outgoing_over() as usize;
        next[x.incoming_over() as usize] = x.outgoing_under() as usize;
    }
    let mut seen = vec![false; n + 1];
    let mut circles = 0;
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        circles += 1;
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            e = next[e];
        }
    }
    circles
}

/// `(c - s + 1) / 2` for a diagram with `c` crossings and `s` Seifert
/// circles.
pub fn seifert_genus_upper(d: &KnotDiagram) -> GenusEstimate {
    let s = seifert_circles(d);
    let c = d.crossing_count();
    debug_assert_eq!((c + 1 - s) % 2, 0, "knot diagrams have c - s odd");
    GenusEstimate {
        seifert_circles: s,
        crossings: c,
        genus_upper: ((c + 1 - s) / 2) as u32,
        is_exact_hint: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_braid, parse_pd};

    #[test]
    fn trefoil_from_braid() {
        let g = seifert_genus_upper(&parse_braid("s1 s1 s1").unwrap());
        assert_eq!((g.seifert_circles, g.crossings, g.genus_upper), (2, 3, 1));
        assert!(!g.is_exact_hint);
    }

    #[test]
    fn unknot() {
        let g = seifert_genus_upper(&KnotDiagram::unknot());
        assert_eq!((g.seifert_circles, g.genus_upper), (1, 0));
        assert_eq!(seifert_genus_upper(&parse_braid("s1 s2").unwrap()).genus_upper, 0);
    }

    #[test]
    fn figure_eight() {
        let d = parse_pd("X[4,2,5,1];X[8,6,1,5];X[6,3,7,4];X[2,7,3,8]").unwrap();
        let g = seifert_genus_upper(&d);
        assert_eq!((g.seifert_circles, g.genus_upper), (3, 1));
    }

    #[test]
    fn braid_closure_has_one_circle_per_strand() {
        let d = parse_braid("s1 s2^-1 s1 s2^-1").unwrap();
        assert_eq!(seifert_circles(&d), 3);
    }
}
