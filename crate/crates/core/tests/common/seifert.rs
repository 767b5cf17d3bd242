//! Alexander polynomials of 2-bridge knots from a Seifert matrix.
//!
//! `b(p, q)` with `q` even has an even continued fraction
//! `p/q = [2c₁, 2c₂, …]`; its Seifert matrix is tridiagonal with diagonal
//! `cᵢ` and superdiagonal 1. `Δ = det(Vᵀ - tV)` is expanded over all
//! permutations with plain polynomial arithmetic, independent of the
//! library's Laurent type and elimination.

#![allow(dead_code)]

/// Coefficients of `p/q` as even entries `2cᵢ`, returned as `cᵢ`.
pub fn even_continued_fraction(p: u64, q: u64) -> Vec<i64> {
    let q = if q % 2 == 1 { p - q } else { q };
    let (mut p, mut q) = (p as i64, q as i64);
    let mut out = Vec::new();
    while q != 0 {
        let a = (-2 * p.abs()..=2 * p.abs())
            .filter(|a| a % 2 == 0 && *a != 0)
            .filter(|a| (a * q - p).abs() < q.abs())
            .min_by_key(|a| (a * q - p).abs())
            .expect("an even partial quotient exists");
        out.push(a / 2);
        let r = a * q - p;
        p = q;
        q = r;
    }
    out
}

type Poly = Vec<i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_into(acc: &mut Poly, p: &Poly, sign: i64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i] += sign * c;
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

/// `det(Vᵀ - tV)` as ascending coefficients in `t`.
pub fn seifert_determinant(c: &[i64]) -> Poly {
    let n = c.len();
    let v = |i: usize, j: usize| -> i64 {
        if i == j {
            c[i]
        } else if j == i + 1 {
            1
        } else {
            0
        }
    };
    // Entry (i, j) of Vᵀ - tV is V[j][i] - t V[i][j].
    let entry = |i: usize, j: usize| -> Poly { vec![v(j, i), -v(i, j)] };
    let mut det: Poly = vec![0];
    if n == 0 {
        return vec![1];
    }
    for (perm, sign) in permutations(n) {
        let mut term: Poly = vec![1];
        for (i, &j) in perm.iter().enumerate() {
            term = mul(&term, &entry(i, j));
        }
        add_into(&mut det, &term, sign);
    }
    det
}

/// Symmetric representative with value 1 at `t = 1`, as
/// `(lowest exponent, coefficients)`.
pub fn symmetric_form(p: &Poly) -> (i32, Vec<i64>) {
    let lo = p.iter().position(|&c| c != 0).expect("nonzero determinant");
    let hi = p.iter().rposition(|&c| c != 0).unwrap();
    let mut coeffs = p[lo..=hi].to_vec();
    assert_eq!((hi - lo) % 2, 0, "Alexander polynomials have even span");
    let at_one: i64 = coeffs.iter().sum();
    assert_eq!(at_one.abs(), 1, "Δ(1) = ±1");
    if at_one < 0 {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    (-(((hi - lo) / 2) as i32), coeffs)
}

/// Symmetrized Alexander polynomial of `b(p, q)` as `(exponent, coefficient)`
/// pairs with nonzero coefficients.
pub fn alexander_two_bridge(p: u64, q: u64) -> Vec<(i32, i64)> {
    let (lo, coeffs) = symmetric_form(&seifert_determinant(&even_continued_fraction(p, q)));
    coeffs
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(i, c)| (lo + i as i32, c))
        .collect()
}
