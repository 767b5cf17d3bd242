//! Simultaneous generalized eigenspaces of commuting complex operators.
//!
//! Operator 0 plays the role of `μ(R)` and operator 1 of `μ(y)`. The
//! splitting recurses operator by operator: eigenvalues of the current
//! restriction are clustered, each cluster's generalized eigenspace is
//! extracted as the null space of `(A - λ)^m`, and the remaining operators
//! are restricted to it.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EigenError {
    #[error("operator family is empty")]
    Empty,
    #[error("operator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    Shape { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("operators {a} and {b} do not commute (max |[A, B]| = {magnitude:e})")]
    NonCommuting { a: usize, b: usize, magnitude: f64 },
    #[error("eigenvalues {a} and {b} of operator {operator} are too close to separate")]
    IllConditioned { operator: usize, a: Complex64, b: Complex64 },
    #[error("generalized eigenspace extraction failed for operator {operator} at {lambda}")]
    Extraction { operator: usize, lambda: Complex64 },
    #[error("genus must be at least 1")]
    BadGenus,
    #[error("family needs at least two operators (μ(R), μ(y)), has {0}")]
    TooFewOperators(usize),
    #[error("top eigenspace is not simple: generalized dimension {generalized}, plain {plain}")]
    TopNotSimple { generalized: usize, plain: usize },
    #[error("Jordan block requested at the top pair or at a pair outside the spectrum")]
    BadJordanPosition,
    #[error("block bases are linearly dependent")]
    DependentBlocks,
}

/// A Gaussian integer, used for exact lattice eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    /// Nearest point of `2Z[i]`.
    pub fn snap_even(z: Complex64) -> Self {
        Self::new(2 * (z.re / 2.0).round() as i64, 2 * (z.im / 2.0).round() as i64)
    }

    fn times_i(self) -> Self {
        Self::new(-self.im, self.re)
    }
}

/// A joint eigenvalue of `(μ(R), μ(y))`.
pub type SpectrumPair = (Gaussian, Gaussian);

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFamily {
    pub dim: usize,
    pub operators: Vec<CMatrix>,
    /// Surface genus attached to an operator index, e.g. `{0: g}` for `μ(R)`.
    pub genus_tags: BTreeMap<usize, u32>,
    /// Eigenvalues are expected on `2Z[i]` and get snapped.
    pub geometric: bool,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    dim: usize,
    operators: Vec<Vec<Vec<Complex64>>>,
    #[serde(default)]
    genus_tags: BTreeMap<usize, u32>,
    #[serde(default)]
    geometric: bool,
}

fn to_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

impl Serialize for OperatorFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FamilyJson {
            dim: self.dim,
            operators: self.operators.iter().map(to_rows).collect(),
            genus_tags: self.genus_tags.clone(),
            geometric: self.geometric,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = FamilyJson::deserialize(d)?;
        let mut operators = Vec::with_capacity(raw.operators.len());
        for (k, rows) in raw.operators.into_iter().enumerate() {
            if rows.len() != raw.dim || rows.iter().any(|r| r.len() != raw.dim) {
                return Err(D::Error::custom(format!("operator {k} is not {0}x{0}", raw.dim)));
            }
            operators.push(CMatrix::from_fn(raw.dim, raw.dim, |i, j| rows[i][j]));
        }
        Ok(Self {
            dim: raw.dim,
            operators,
            genus_tags: raw.genus_tags,
            geometric: raw.geometric,
        })
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl OperatorFamily {
    pub fn new(operators: Vec<CMatrix>) -> Result<Self, EigenError> {
        let dim = operators.first().ok_or(EigenError::Empty)?.nrows();
        let f = Self { dim, operators, genus_tags: BTreeMap::new(), geometric: false };
        f.check_shapes()?;
        Ok(f)
    }

    fn check_shapes(&self) -> Result<(), EigenError> {
        if self.operators.is_empty() {
            return Err(EigenError::Empty);
        }
        for (index, m) in self.operators.iter().enumerate() {
            if m.nrows() != self.dim || m.ncols() != self.dim {
                return Err(EigenError::Shape {
                    index,
                    rows: m.nrows(),
                    cols: m.ncols(),
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }

    /// Fails on the first pair whose commutator exceeds `1e-9 · scale`.
    pub fn check_commuting(&self) -> Result<(), EigenError> {
        for a in 0..self.operators.len() {
            for b in a + 1..self.operators.len() {
                let (x, y) = (&self.operators[a], &self.operators[b]);
                let c = x * y - y * x;
                let scale = (max_abs(x) * max_abs(y)).max(1.0);
                let magnitude = max_abs(&c);
                if magnitude > 1e-9 * scale {
                    return Err(EigenError::NonCommuting { a, b, magnitude });
                }
            }
        }
        Ok(())
    }

    /// Restriction to the span of `basis`, which must be invariant under
    /// every operator.
    pub fn restrict(&self, basis: &CMatrix) -> Self {
        let q = orthonormalize(basis);
        let operators = self
            .operators
            .iter()
            .map(|a| q.adjoint() * a * &q)
            .collect();
        Self {
            dim: q.ncols(),
            operators,
            genus_tags: self.genus_tags.clone(),
            geometric: self.geometric,
        }
    }
}

/// Orthonormal basis of the column span (columns assumed independent).
fn orthonormalize(basis: &CMatrix) -> CMatrix {
    let k = basis.ncols();
    let qr = basis.clone().qr();
    qr.q().columns(0, k).into_owned()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenBlock {
    /// One eigenvalue per operator, snapped when the family is geometric.
    pub eigenvalues: Vec<Complex64>,
    pub dimension: usize,
    /// `dim × dimension` orthonormal columns.
    #[serde(skip)]
    pub basis: CMatrix,
    /// Largest distance from a cluster centroid to its snapped value.
    pub snap_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenDecomposition {
    pub dim: usize,
    pub blocks: Vec<EigenBlock>,
    pub max_snap_distance: f64,
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Single-linkage clustering of `values` at `radius`, returned as index
/// groups in lexicographic order of their first member.
fn cluster(values: &[Complex64], radius: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| cmp_complex(&values[a], &values[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        let hits: Vec<usize> = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.iter().any(|&j| (values[i] - values[j]).norm() <= radius))
            .map(|(k, _)| k)
            .collect();
        match hits.split_first() {
            None => groups.push(vec![i]),
            Some((&first, rest)) => {
                for &k in rest.iter().rev() {
                    let moved = groups.remove(k);
                    groups[first].extend(moved);
                }
                groups[first].push(i);
            }
        }
    }
    groups
}

fn centroid(values: &[Complex64], idx: &[usize]) -> Complex64 {
    idx.iter().map(|&i| values[i]).sum::<Complex64>() / idx.len() as f64
}

/// Orthonormal basis of the `m`-dimensional null space of `n`, with the
/// residual `‖n · basis‖`.
fn null_space(n: &CMatrix, m: usize) -> (CMatrix, f64) {
    let k = n.ncols();
    let svd = n.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let cols: Vec<_> = order[..m].iter().map(|&r| v_t.row(r).adjoint()).collect();
    let basis = CMatrix::from_columns(&cols);
    let residual = max_abs(&(n * &basis));
    (basis, residual)
}

struct RawBlock {
    values: Vec<Complex64>,
    basis: CMatrix,
}

fn split(
    ops: &[CMatrix],
    basis: CMatrix,
    level: usize,
    tol: f64,
    values: Vec<Complex64>,
    out: &mut Vec<RawBlock>,
) -> Result<(), EigenError> {
    if level == ops.len() {
        out.push(RawBlock { values, basis });
        return Ok(());
    }
    let a = &ops[level];
    let k = a.nrows();
    let scale = a.norm().max(1.0);
    let radius = tol * scale;
    let eig: Vec<Complex64> = a
        .clone()
        .schur()
        .eigenvalues()
        .ok_or(EigenError::Extraction { operator: level, lambda: Complex64::new(f64::NAN, 0.0) })?
        .iter()
        .copied()
        .collect();
    let groups = cluster(&eig, radius);
    for x in 0..groups.len() {
        for y in x + 1..groups.len() {
            for &i in &groups[x] {
                for &j in &groups[y] {
                    if (eig[i] - eig[j]).norm() < 10.0 * radius {
                        return Err(EigenError::IllConditioned { operator: level, a: eig[i], b: eig[j] });
                    }
                }
            }
        }
    }
    for g in groups {
        let lambda = centroid(&eig, &g);
        let m = g.len();
        let shifted = a - CMatrix::identity(k, k) * lambda;
        let mut power = shifted.clone();
        for _ in 1..m {
            power = &power * &shifted;
        }
        let (w, residual) = null_space(&power, m);
        let power_scale = shifted.norm().max(1.0).powi(m as i32);
        if residual > 1e-6 * power_scale {
            return Err(EigenError::Extraction { operator: level, lambda });
        }
        let restricted: Vec<CMatrix> = ops.iter().map(|b| w.adjoint() * b * &w).collect();
        let mut next = values.clone();
        next.push(lambda);
        split(&restricted, &basis * &w, level + 1, tol, next, out)?;
    }
    Ok(())
}

/// Simultaneous generalized eigenspaces with clustering tolerance `tol`
/// (relative to each operator's norm).
pub fn decompose(f: &OperatorFamily, tol: f64) -> Result<EigenDecomposition, EigenError> {
    f.check_shapes()?;
    f.check_commuting()?;
    let mut raw = Vec::new();
    if f.dim > 0 {
        split(&f.operators, CMatrix::identity(f.dim, f.dim), 0, tol, Vec::new(), &mut raw)?;
    }
    let mut blocks: Vec<EigenBlock> = raw
        .into_iter()
        .map(|b| {
            let (eigenvalues, snap_distance) = if f.geometric {
                let snapped: Vec<Complex64> =
                    b.values.iter().map(|&z| Gaussian::snap_even(z).to_complex()).collect();
                let d = b
                    .values
                    .iter()
                    .zip(&snapped)
                    .map(|(a, s)| (a - s).norm())
                    .fold(0.0, f64::max);
                (snapped, d)
            } else {
                (b.values, 0.0)
            };
            EigenBlock { eigenvalues, dimension: b.basis.ncols(), basis: b.basis, snap_distance }
        })
        .collect();
    blocks.sort_by(|x, y| {
        x.eigenvalues
            .iter()
            .zip(&y.eigenvalues)
            .map(|(a, b)| cmp_complex(a, b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let all = CMatrix::from_columns(
        &blocks.iter().flat_map(|b| b.basis.column_iter().map(|c| c.into_owned())).collect::<Vec<_>>(),
    );
    if f.dim > 0 {
        let sv = all.singular_values();
        if sv.min() < 1e-10 * sv.max().max(1.0) {
            return Err(EigenError::DependentBlocks);
        }
    }
    let max_snap_distance = blocks.iter().map(|b| b.snap_distance).fold(0.0, f64::max);
    Ok(EigenDecomposition { dim: f.dim, blocks, max_snap_distance })
}

impl EigenDecomposition {
    /// `P_i = B E_i B⁻¹` for the block basis matrix `B`.
    pub fn spectral_projectors(&self) -> Result<Vec<CMatrix>, EigenError> {
        let cols: Vec<_> = self
            .blocks
            .iter()
            .flat_map(|b| b.basis.column_iter().map(|c| c.into_owned()))
            .collect();
        if cols.is_empty() {
            return Ok(Vec::new());
        }
        let b = CMatrix::from_columns(&cols);
        let inv = b.clone().try_inverse().ok_or(EigenError::DependentBlocks)?;
        let mut offset = 0;
        Ok(self
            .blocks
            .iter()
            .map(|blk| {
                let p = b.columns(offset, blk.dimension) * inv.rows(offset, blk.dimension);
                offset += blk.dimension;
                p
            })
            .collect())
    }

    /// The block whose first two eigenvalues are within `tol` of `pair`.
    pub fn find(&self, pair: (Complex64, Complex64), tol: f64) -> Option<&EigenBlock> {
        self.blocks.iter().find(|b| {
            b.eigenvalues.len() >= 2
                && (b.eigenvalues[0] - pair.0).norm() <= tol
                && (b.eigenvalues[1] - pair.1).norm() <= tol
        })
    }
}

/// `{(i^r · 2k, (-1)^r · 2) : 0 ≤ k ≤ g-1, 0 ≤ r ≤ 3}`.
pub fn munoz_spectrum(g: u32) -> Result<BTreeSet<SpectrumPair>, EigenError> {
    if g == 0 {
        return Err(EigenError::BadGenus);
    }
    let mut out = BTreeSet::new();
    for k in 0..g as i64 {
        let mut z = Gaussian::new(2 * k, 0);
        for r in 0..4 {
            let y = Gaussian::new(if r % 2 == 0 { 2 } else { -2 }, 0);
            out.insert((z, y));
            z = z.times_i();
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopEigenspace {
    pub dimension: usize,
    #[serde(skip)]
    pub basis: CMatrix,
}

const PAIR_TOL: f64 = 1e-6;

fn require_pair_family(f: &OperatorFamily, g: u32) -> Result<(), EigenError> {
    if g == 0 {
        return Err(EigenError::BadGenus);
    }
    if f.operators.len() < 2 {
        return Err(EigenError::TooFewOperators(f.operators.len()));
    }
    Ok(())
}

/// The `(2g - 2, 2)` block, checked against the plain joint kernel.
pub fn top_eigenspace(f: &OperatorFamily, g: u32, tol: f64) -> Result<TopEigenspace, EigenError> {
    require_pair_family(f, g)?;
    let dec = decompose(f, tol)?;
    let top = (Complex64::new(2.0 * g as f64 - 2.0, 0.0), Complex64::new(2.0, 0.0));
    let scale = f.operators.iter().map(|a| a.norm()).fold(1.0, f64::max);
    let Some(block) = dec.find(top, PAIR_TOL * scale) else {
        return Ok(TopEigenspace { dimension: 0, basis: CMatrix::zeros(f.dim, 0) });
    };
    let n = f.dim;
    let mut stacked = CMatrix::zeros(2 * n, n);
    stacked
        .rows_mut(0, n)
        .copy_from(&(&f.operators[0] - CMatrix::identity(n, n) * top.0));
    stacked
        .rows_mut(n, n)
        .copy_from(&(&f.operators[1] - CMatrix::identity(n, n) * top.1));
    let sv = stacked.singular_values();
    let plain = sv.iter().filter(|&&s| s <= 1e-7 * scale).count();
    if plain != block.dimension {
        return Err(EigenError::TopNotSimple { generalized: block.dimension, plain });
    }
    Ok(TopEigenspace { dimension: block.dimension, basis: block.basis.clone() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub ok: bool,
    pub violations: Vec<(Complex64, Complex64)>,
}

/// Whether every joint eigenvalue of `(μ(R), μ(y))` lies in the genus-`g`
/// product spectrum.
pub fn spectrum_subset_check(
    f: &OperatorFamily,
    g: u32,
    tol: f64,
) -> Result<SubsetReport, EigenError> {
    require_pair_family(f, g)?;
    let allowed = munoz_spectrum(g)?;
    let dec = decompose(f, tol)?;
    let scale = f.operators.iter().map(|a| a.norm()).fold(1.0, f64::max);
    let violations: Vec<_> = dec
        .blocks
        .iter()
        .map(|b| (b.eigenvalues[0], b.eigenvalues[1]))
        .filter(|&(r, y)| {
            let pair = (Gaussian::snap_even(r), Gaussian::snap_even(y));
            let on_lattice = (pair.0.to_complex() - r).norm() <= PAIR_TOL * scale
                && (pair.1.to_complex() - y).norm() <= PAIR_TOL * scale;
            !(on_lattice && allowed.contains(&pair))
        })
        .collect();
    Ok(SubsetReport { ok: violations.is_empty(), violations })
}

/// Options for [`build_model`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ModelOptions {
    /// Replace the `μ(R)` eigenvalue at this pair by a 2×2 Jordan block.
    pub jordan_at: Option<SpectrumPair>,
    pub rng_seed: u64,
}

fn random_unitary(n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
    });
    m.qr().q()
}

/// Commuting `(μ(R), μ(y))` realizing exactly `munoz_spectrum(g)`, with the
/// `(2g - 2, 2)` eigenspace of dimension `top_dim`, in a random unitary
/// basis.
pub fn build_model(g: u32, top_dim: usize, opts: ModelOptions) -> Result<OperatorFamily, EigenError> {
    let spectrum = munoz_spectrum(g)?;
    let top = (Gaussian::new(2 * g as i64 - 2, 0), Gaussian::new(2, 0));
    if let Some(p) = opts.jordan_at {
        if p == top || !spectrum.contains(&p) {
            return Err(EigenError::BadJordanPosition);
        }
    }
    let sizes: Vec<(SpectrumPair, usize)> = spectrum
        .iter()
        .map(|&p| {
            let size = if p == top {
                top_dim
            } else if Some(p) == opts.jordan_at {
                2
            } else {
                1
            };
            (p, size)
        })
        .collect();
    let n: usize = sizes.iter().map(|s| s.1).sum();
    let mut r = CMatrix::zeros(n, n);
    let mut y = CMatrix::zeros(n, n);
    let mut at = 0;
    for ((pr, py), size) in sizes {
        for k in 0..size {
            r[(at + k, at + k)] = pr.to_complex();
            y[(at + k, at + k)] = py.to_complex();
        }
        if Some((pr, py)) == opts.jordan_at {
            r[(at, at + 1)] = Complex64::new(1.0, 0.0);
        }
        at += size;
    }
    let q = random_unitary(n, opts.rng_seed);
    let conj = |d: &CMatrix| &q * d * q.adjoint();
    Ok(OperatorFamily {
        dim: n,
        operators: vec![conj(&r), conj(&y)],
        genus_tags: BTreeMap::from([(0, g)]),
        geometric: true,
    })
}
