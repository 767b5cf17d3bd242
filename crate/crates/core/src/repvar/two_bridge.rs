//! One-variable count of irreducible classes for 2-bridge knots.
//!
//! The 2-bridge knot `b(p, q)` has the two-generator presentation
//! `⟨a, b | a w = w b⟩` with `w = b^{ε₁} a^{ε₂} b^{ε₃} ⋯` and
//! `ε_k = (-1)^⌊kq/p⌋`. Up to conjugation fixing `ρ(a) = i`, a
//! trace-zero `ρ(b)` is `cos φ · i + sin φ · j` with `φ ∈ [0, π]`, and the
//! relation reduces to one real equation in `φ`. Roots in `(0, π)` are
//! the irreducible classes.
//!
//! Arithmetic uses explicit 2×2 complex matrices so the count does not
//! share code with the quaternion solver.

use num_complex::Complex64;

type M2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("2-bridge parameters need odd p ≥ 1 and gcd(p, q) = 1, got ({p}, {q})")]
    BadParameters { p: u64, q: u64 },
    #[error("bracketed root at φ = {phi} leaves matrix residual {residual}")]
    SpuriousRoot { phi: f64, residual: f64 },
}

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Inverse of an SU(2) matrix: its conjugate transpose.
fn adjoint(a: &M2) -> M2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn exponents(p: u64, q: u64) -> Vec<bool> {
    (1..p).map(|k| (k * q / p).is_multiple_of(2)).collect()
}

struct Relation {
    a: M2,
    j: M2,
    exps: Vec<bool>,
}

impl Relation {
    fn new(p: u64, q: u64) -> Self {
        let i = Complex64::i();
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        Self {
            a: [[i, z], [z, -i]],
            j: [[z, -one], [one, z]],
            exps: exponents(p, q),
        }
    }

    /// `ρ(a) w - w ρ(b)` at angle `φ`.
    fn matrix(&self, phi: f64) -> M2 {
        let (s, c) = phi.sin_cos();
        let mut b = [[Complex64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for k in 0..2 {
                b[r][k] = self.a[r][k] * c + self.j[r][k] * s;
            }
        }
        let b_inv = adjoint(&b);
        let a_inv = adjoint(&self.a);
        let id = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let mut w: M2 = [[id, z], [z, id]];
        for (k, &positive) in self.exps.iter().enumerate() {
            let letter = match (k % 2 == 0, positive) {
                (true, true) => &b,
                (true, false) => &b_inv,
                (false, true) => &self.a,
                (false, false) => &a_inv,
            };
            w = mul(&w, letter);
        }
        let left = mul(&self.a, &w);
        let right = mul(&w, &b);
        let mut d = left;
        for r in 0..2 {
            for k in 0..2 {
                d[r][k] -= right[r][k];
            }
        }
        d
    }

    fn scalar(&self, phi: f64) -> f64 {
        self.matrix(phi)[0][1].re
    }

    fn norm(&self, phi: f64) -> f64 {
        self.matrix(phi)
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Angles `φ ∈ (0, π)` of the irreducible classes of `b(p, q)`, found by a
/// sign scan on `grid` points followed by bisection. Every root is checked
/// against the full matrix relation.
pub fn irreducible_angles(p: u64, q: u64, grid: usize) -> Result<Vec<f64>, OracleError> {
    if p.is_multiple_of(2) || (p > 1 && gcd(p, q % p) != 1) {
        return Err(OracleError::BadParameters { p, q });
    }
    if p == 1 {
        return Ok(Vec::new());
    }
    let rel = Relation::new(p, q);
    let grid = grid.max(16);
    let at = |k: usize| std::f64::consts::PI * (k as f64 + 0.5) / grid as f64;
    let mut roots = Vec::new();
    let mut prev = rel.scalar(at(0));
    for k in 1..grid {
        let cur = rel.scalar(at(k));
        if prev == 0.0 || prev.signum() != cur.signum() {
            let (mut lo, mut hi) = (at(k - 1), at(k));
            let mut flo = prev;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let fm = rel.scalar(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            let phi = 0.5 * (lo + hi);
            let residual = rel.norm(phi);
            if residual > 1e-8 {
                return Err(OracleError::SpuriousRoot { phi, residual });
            }
            roots.push(phi);
        }
        prev = cur;
    }
    Ok(roots)
}

/// Number of irreducible classes of `b(p, q)`.
pub fn irreducible_count(p: u64, q: u64) -> Result<usize, OracleError> {
    Ok(irreducible_angles(p, q, 20_000)?.len())
}
