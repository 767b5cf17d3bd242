//! Alexander polynomial by Fox calculus on a Wirtinger presentation.
//!
//! The Fox Jacobian is abelianized (every generator maps to `t`), one
//! generator column and one relation row are deleted, and the remaining
//! square minor is evaluated exactly by fraction-free elimination over
//! `Z[t, t^-1]`. The result is normalized to the representative with
//! `Δ(t) = Δ(t^-1)` and `Δ(1) = 1`.

use serde::{Deserialize, Serialize};

use crate::diagram::{AbelianGroup, GroupPresentation, Word};
use crate::laurent::LaurentPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlexanderError {
    #[error("abelianization is not infinite cyclic: {0:?}")]
    NonCyclicAbelianization(AbelianGroup),
    #[error("cannot symmetrize the zero polynomial")]
    Zero,
    #[error("polynomial is not palindromic up to units: {0}")]
    NonPalindromic(LaurentPolynomial),
    #[error("minor index out of range")]
    MinorOutOfRange,
}

/// Output of [`symmetrize`]. `unit_at_one` is false when no unit multiple
/// evaluates to `+1` at `t = 1`; the sign is then chosen so the value is
/// positive (or, at zero, so the top coefficient is).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Symmetrized {
    pub poly: LaurentPolynomial,
    pub unit_at_one: bool,
}

/// Abelianized Fox derivative `∂w/∂x_gen`.
pub fn fox_derivative(word: &Word, gen: usize) -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::zero();
    let mut prefix_exp = 0i32;
    for letter in word {
        if letter.generator == gen {
            if letter.power > 0 {
                acc = acc + LaurentPolynomial::t_pow(prefix_exp);
            } else {
                acc = acc - LaurentPolynomial::t_pow(prefix_exp - 1);
            }
        }
        prefix_exp += letter.power as i32;
    }
    acc
}

/// Abelianized Fox Jacobian: one row per relator, one column per generator.
pub fn fox_matrix(p: &GroupPresentation) -> Vec<Vec<LaurentPolynomial>> {
    p.relators()
        .iter()
        .map(|w| (0..p.n_generators()).map(|g| fox_derivative(w, g)).collect())
        .collect()
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<LaurentPolynomial>>) -> LaurentPolynomial {
    let n = m.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let mut negate = false;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return LaurentPolynomial::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss quotients are exact over an integral domain");
            }
            m[i][k] = LaurentPolynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Unnormalized determinant of the Fox matrix with `row` and `col`
/// deleted.
pub fn fox_minor(
    p: &GroupPresentation,
    row: usize,
    col: usize,
) -> Result<LaurentPolynomial, AlexanderError> {
    let m = fox_matrix(p);
    if m.is_empty() {
        return Ok(LaurentPolynomial::one());
    }
    if row >= m.len() || col >= p.n_generators() {
        return Err(AlexanderError::MinorOutOfRange);
    }
    let minor: Vec<Vec<LaurentPolynomial>> = m
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| {
            r.into_iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, e)| e)
                .collect()
        })
        .collect();
    Ok(bareiss_determinant(minor))
}

/// Symmetrized Alexander polynomial, deleting the last relation and the
/// meridian column.
pub fn alexander_fox(p: &GroupPresentation) -> Result<LaurentPolynomial, AlexanderError> {
    let ab = p.abelianization();
    if !ab.is_infinite_cyclic() {
        return Err(AlexanderError::NonCyclicAbelianization(ab));
    }
    let rows = p.relations().len();
    let raw = fox_minor(p, rows.saturating_sub(1), p.meridian())?;
    Ok(symmetrize(&raw)?.poly)
}

/// Multiplies `p` by the unit `±t^m` that makes it symmetric with value
/// `+1` at `t = 1`.
pub fn symmetrize(p: &LaurentPolynomial) -> Result<Symmetrized, AlexanderError> {
    let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
        return Err(AlexanderError::Zero);
    };
    if (lo + hi) % 2 != 0 {
        return Err(AlexanderError::NonPalindromic(p.clone()));
    }
    let q = p.shift(-(lo + hi) / 2);
    if q.reflect() != q {
        return Err(AlexanderError::NonPalindromic(p.clone()));
    }
    let at_one = q.eval_at_one();
    let flip = match at_one {
        v if v < 0 => true,
        0 => q.leading_coeff().is_some_and(|c| c < 0),
        _ => false,
    };
    let poly = if flip { -q } else { q };
    Ok(Symmetrized {
        poly,
        unit_at_one: at_one.abs() == 1,
    })
}

/// Top coefficient is ±1 and the highest power of `t` equals `g`.
pub fn is_monic_of_degree(p: &LaurentPolynomial, g: i32) -> bool {
    matches!(p.leading_coeff(), Some(1) | Some(-1)) && p.max_exp() == Some(g)
}

pub fn coefficient_mass(p: &LaurentPolynomial) -> i64 {
    p.coefficient_mass()
}
