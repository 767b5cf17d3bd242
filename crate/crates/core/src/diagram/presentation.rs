use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{KnotDiagram, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    /// +1 or -1.
    pub power: i8,
}

impl Letter {
    pub fn new(generator: usize, power: i8) -> Self {
        debug_assert!(power == 1 || power == -1);
        Self { generator, power }
    }

    pub fn inverse(self) -> Self {
        Self::new(self.generator, -self.power)
    }
}

pub type Word = Vec<Letter>;

/// `out = over^e · inn · over^-e` with `e = +1` at positive crossings and
/// `e = -1` at negative ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugationRelation {
    pub out: usize,
    pub over: usize,
    pub inn: usize,
    pub sign: Sign,
}

impl ConjugationRelation {
    /// The relator `x_out · (x_over^e x_in x_over^-e)^-1`.
    pub fn relator(&self) -> Word {
        let e: i8 = self.sign.as_i8();
        vec![
            Letter::new(self.out, 1),
            Letter::new(self.over, e),
            Letter::new(self.inn, -1),
            Letter::new(self.over, -e),
        ]
    }
}

/// Wirtinger presentation of a knot group: one generator per over-arc,
/// one conjugation relation per crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    n_generators: usize,
    relations: Vec<ConjugationRelation>,
    meridian: usize,
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/torsion_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

impl GroupPresentation {
    /// Builds the Wirtinger presentation of `d`.
    ///
    /// Over-arcs are the classes of edges joined through over-crossings.
    /// Generators are numbered by the smallest edge label on each arc, so
    /// the arc containing edge 1 is generator 0, the meridian.
    pub fn wirtinger(d: &KnotDiagram) -> Self {
        if d.crossings().is_empty() {
            return Self {
                n_generators: 1,
                relations: Vec::new(),
                meridian: 0,
            };
        }
        let n_edges = d.arc_count();
        let mut parent: Vec<usize> = (0..=n_edges).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for x in d.crossings() {
            let (a, b) = (
                find(&mut parent, x.arcs[1] as usize),
                find(&mut parent, x.arcs[3] as usize),
            );
            // Keep the smaller label as root so roots order the arcs.
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
        let mut gen_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        for e in 1..=n_edges {
            let r = find(&mut parent, e);
            let next = gen_of_root.len();
            gen_of_root.entry(r).or_insert(next);
        }
        let mut gen = |e: u32| gen_of_root[&find(&mut parent, e as usize)];
        let relations = d
            .crossings()
            .iter()
            .map(|x| ConjugationRelation {
                out: gen(x.outgoing_under()),
                over: gen(x.incoming_over()),
                inn: gen(x.incoming_under()),
                sign: x.sign,
            })
            .collect();
        Self {
            n_generators: gen_of_root.len(),
            relations,
            meridian: 0,
        }
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relations(&self) -> &[ConjugationRelation] {
        &self.relations
    }

    pub fn relators(&self) -> Vec<Word> {
        self.relations.iter().map(ConjugationRelation::relator).collect()
    }

    pub fn meridian(&self) -> usize {
        self.meridian
    }

    /// Exponent-sum matrix of the relators (rows) against generators.
    pub fn exponent_sums(&self) -> Vec<Vec<i64>> {
        self.relators()
            .iter()
            .map(|w| {
                let mut row = vec![0i64; self.n_generators];
                for l in w {
                    row[l.generator] += l.power as i64;
                }
                row
            })
            .collect()
    }

    /// Abelianization via the Smith normal form of the exponent-sum matrix.
    pub fn abelianization(&self) -> AbelianGroup {
        let diag = smith_diagonal(self.exponent_sums(), self.n_generators);
        let rank = diag.len();
        AbelianGroup {
            free_rank: self.n_generators - rank,
            torsion: diag.into_iter().filter(|&d| d > 1).collect(),
        }
    }
}

/// Nonzero invariant factors of an integer matrix with `cols` columns.
fn smith_diagonal(mut m: Vec<Vec<i64>>, cols: usize) -> Vec<u64> {
    let rows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: the smallest nonzero magnitude in the trailing block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = m[t][t];
            let mut clean = true;
            for r in t + 1..rows {
                let q = m[r][t] / p;
                if q != 0 {
                    for c in t..cols {
                        m[r][c] -= q * m[t][c];
                    }
                }
                clean &= m[r][t] == 0;
            }
            for c in t + 1..cols {
                let q = m[t][c] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[c] -= q * row[t];
                    }
                }
                clean &= m[t][c] == 0;
            }
            if clean {
                // Divisibility: fold any entry not divisible by p into row t.
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| m[r][c] % p != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        for c in t..cols {
                            m[t][c] += m[r][c];
                        }
                    }
                }
                continue;
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let (br, bc) = (t..rows)
                .map(|r| (r, t))
                .chain((t..cols).map(|c| (t, c)))
                .filter(|&(r, c)| m[r][c] != 0)
                .min_by_key(|&(r, c)| m[r][c].abs())
                .expect("pivot row/column is nonzero");
            m.swap(t, br);
            for row in m.iter_mut() {
                row.swap(t, bc);
            }
        }
        out.push(m[t][t].unsigned_abs());
        t += 1;
    }
    out
}
