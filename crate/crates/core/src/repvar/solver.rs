use nalgebra::{DMatrix, DVector, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    reducible_point, EnumerationStatus, RepClass, RepPoint, RepVariety, RepvarError,
};
use crate::diagram::GroupPresentation;
use crate::quaternion::UnitQuaternion;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Multistart count; `None` picks [`default_seed_count`].
    pub seeds: Option<usize>,
    pub tol: f64,
    pub cluster_radius: f64,
    pub max_iters: usize,
    pub rng_seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seeds: None,
            tol: 1e-10,
            cluster_radius: 1e-6,
            max_iters: 200,
            rng_seed: 0,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<(), RepvarError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(RepvarError::Config(format!("tolerance must be positive, got {}", self.tol)));
        }
        if !(self.cluster_radius > 0.0 && self.cluster_radius.is_finite()) {
            return Err(RepvarError::Config(format!(
                "cluster radius must be positive, got {}",
                self.cluster_radius
            )));
        }
        if self.max_iters == 0 {
            return Err(RepvarError::Config("max iterations must be at least 1".into()));
        }
        Ok(())
    }
}

/// `4^(n-1)` multistarts for `n` free generators, clamped to `[4096, 65536]`.
pub fn default_seed_count(free_generators: usize) -> usize {
    if free_generators == 0 {
        return 0;
    }
    let exp = (free_generators - 1).min(16) as u32;
    4usize.pow(exp).clamp(4096, 65536)
}

/// Images are only unknown off the meridian.
struct Layout {
    /// Column block of each generator, `None` for the meridian.
    slot: Vec<Option<usize>>,
    free: usize,
}

impl Layout {
    fn new(p: &GroupPresentation) -> Self {
        let mut free = 0;
        let slot = (0..p.n_generators())
            .map(|g| {
                if g == p.meridian() {
                    None
                } else {
                    free += 1;
                    Some(free - 1)
                }
            })
            .collect();
        Self { slot, free }
    }
}

type Pts = Vec<Vector3<f64>>;

fn half_turn(o: &Vector3<f64>, v: &Vector3<f64>) -> Vector3<f64> {
    2.0 * o.dot(v) * o - v
}

fn residual_vec(p: &GroupPresentation, x: &Pts) -> DVector<f64> {
    let mut f = DVector::zeros(3 * p.relations().len());
    for (r, rel) in p.relations().iter().enumerate() {
        let d = x[rel.out] - half_turn(&x[rel.over], &x[rel.inn]);
        f.fixed_rows_mut::<3>(3 * r).copy_from(&d);
    }
    f
}

fn tangent_basis(v: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let axis = (0..3)
        .min_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()))
        .expect("three axes");
    let mut e = Vector3::zeros();
    e[axis] = 1.0;
    let t1 = (e - e.dot(v) * v).normalize();
    let t2 = v.cross(&t1);
    (t1, t2)
}

/// Jacobian of the residual in tangent coordinates at `x`.
fn jacobian(p: &GroupPresentation, layout: &Layout, x: &Pts) -> DMatrix<f64> {
    let bases: Vec<_> = x.iter().map(tangent_basis).collect();
    let mut j = DMatrix::zeros(3 * p.relations().len(), 2 * layout.free);
    let eye = nalgebra::Matrix3::<f64>::identity();
    for (r, rel) in p.relations().iter().enumerate() {
        let o = &x[rel.over];
        let v = &x[rel.inn];
        let blocks = [
            (rel.out, eye),
            (rel.inn, -(2.0 * o * o.transpose() - eye)),
            (rel.over, -(2.0 * o.dot(v) * eye + 2.0 * o * v.transpose())),
        ];
        for (g, m) in blocks {
            let Some(s) = layout.slot[g] else { continue };
            let (t1, t2) = bases[g];
            let c1 = m * t1;
            let c2 = m * t2;
            for k in 0..3 {
                j[(3 * r + k, 2 * s)] += c1[k];
                j[(3 * r + k, 2 * s + 1)] += c2[k];
            }
        }
    }
    j
}

fn retract(layout: &Layout, x: &Pts, delta: &DVector<f64>) -> Pts {
    x.iter()
        .enumerate()
        .map(|(g, v)| match layout.slot[g] {
            None => *v,
            Some(s) => {
                let (t1, t2) = tangent_basis(v);
                (v + delta[2 * s] * t1 + delta[2 * s + 1] * t2).normalize()
            }
        })
        .collect()
}

/// Levenberg–Marquardt from `x`. Returns the final point and residual norm.
fn levenberg_marquardt(
    p: &GroupPresentation,
    layout: &Layout,
    mut x: Pts,
    tol: f64,
    max_iters: usize,
) -> (Pts, f64) {
    let mut f = residual_vec(p, &x);
    let mut cost = f.norm_squared();
    let mut lambda = 1e-3;
    for _ in 0..max_iters {
        if cost.sqrt() <= tol {
            break;
        }
        let j = jacobian(p, layout, &x);
        let a = j.transpose() * &j;
        let g = j.transpose() * &f;
        let mut accepted = false;
        while lambda < 1e10 {
            let mut damped = a.clone();
            for i in 0..damped.nrows() {
                damped[(i, i)] += lambda;
            }
            let Some(chol) = damped.cholesky() else {
                lambda *= 10.0;
                continue;
            };
            let delta = -chol.solve(&g);
            let x_new = retract(layout, &x, &delta);
            let f_new = residual_vec(p, &x_new);
            let cost_new = f_new.norm_squared();
            if cost_new < cost {
                x = x_new;
                f = f_new;
                cost = cost_new;
                lambda = (lambda / 3.0).max(1e-12);
                accepted = true;
                break;
            }
            lambda *= 5.0;
        }
        if !accepted {
            break;
        }
    }
    (x, cost.sqrt())
}

fn sample_sphere(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        );
        let n: f64 = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

const COLLINEAR_TOL: f64 = 1e-6;

fn is_reducible(x: &Pts) -> bool {
    x.iter().all(|v| (v - Vector3::x()).norm() <= COLLINEAR_TOL)
}

/// Rotates about the i-axis so the first image off the axis lies in the
/// half-plane `y = 0, z > 0`.
fn canonicalize(x: &Pts) -> Pts {
    let Some(v) = x.iter().find(|v| v.y.hypot(v.z) > COLLINEAR_TOL) else {
        return x.clone();
    };
    let alpha = v.y.atan2(v.z);
    let (s, c) = alpha.sin_cos();
    x.iter()
        .map(|v| Vector3::new(v.x, v.y * c - v.z * s, v.y * s + v.z * c))
        .collect()
}

fn to_point(x: &Pts, meridian: usize) -> RepPoint {
    RepPoint {
        images: x
            .iter()
            .enumerate()
            .map(|(g, v)| {
                if g == meridian {
                    UnitQuaternion::I
                } else {
                    UnitQuaternion::pure([v.x, v.y, v.z])
                }
            })
            .collect(),
    }
}

fn from_point(r: &RepPoint) -> Pts {
    r.images
        .iter()
        .map(|q| {
            let [a, b, c] = q.imaginary();
            Vector3::new(a, b, c)
        })
        .collect()
}

/// `(rank, kernel dimension)` of the tangent-space Jacobian at `r`.
pub(super) fn jacobian_rank_at(p: &GroupPresentation, r: &RepPoint) -> (usize, usize) {
    let layout = Layout::new(p);
    if layout.free == 0 || p.relations().is_empty() {
        return (0, 2 * layout.free);
    }
    let j = jacobian(p, &layout, &from_point(r));
    let sv = j.singular_values();
    let top = sv.max().max(1.0);
    let rank = sv.iter().filter(|&&s| s > 1e-7 * top).count();
    (rank, 2 * layout.free - rank)
}

struct Cluster {
    key: Pts,
    best: Pts,
    best_residual: f64,
    members: usize,
}

fn max_abs_distance(a: &Pts, b: &Pts) -> f64 {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).amax())
        .fold(0.0, f64::max)
}

/// Multistart enumeration of `Rep(K, i)` up to conjugation.
///
/// Seeds run in parallel, each from its own RNG stream, and are merged
/// in seed order, so the output depends only on the configuration.
pub fn solve_repvar(
    p: &GroupPresentation,
    cfg: &SolverConfig,
) -> Result<RepVariety, RepvarError> {
    cfg.validate()?;
    let layout = Layout::new(p);
    let reducible = reducible_point(p);
    if layout.free == 0 {
        return Ok(RepVariety {
            classes: vec![reducible],
            status: EnumerationStatus::Certified,
            certificate: Some("no free generators".into()),
            seeds_run: 0,
            seeds_converged: 0,
            warnings: Vec::new(),
        });
    }
    let seeds = cfg.seeds.unwrap_or_else(|| default_seed_count(layout.free));
    let meridian = p.meridian();
    let runs: Vec<Option<(Pts, f64)>> = (0..seeds)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            rng.set_stream(index as u64);
            let x0: Pts = (0..p.n_generators())
                .map(|g| if g == meridian { Vector3::x() } else { sample_sphere(&mut rng) })
                .collect();
            let (x, res) = levenberg_marquardt(p, &layout, x0, cfg.tol, cfg.max_iters);
            (res <= cfg.tol).then_some((x, res))
        })
        .collect();

    let mut clusters: Vec<Cluster> = Vec::new();
    let mut converged = 0;
    let mut reducible_hits = 0;
    for (x, res) in runs.into_iter().flatten() {
        converged += 1;
        if is_reducible(&x) {
            reducible_hits += 1;
            continue;
        }
        let key = canonicalize(&x);
        match clusters
            .iter_mut()
            .find(|c| max_abs_distance(&c.key, &key) <= cfg.cluster_radius)
        {
            Some(c) => {
                c.members += 1;
                if res < c.best_residual {
                    c.best = key;
                    c.best_residual = res;
                }
            }
            None => clusters.push(Cluster {
                best: key.clone(),
                key,
                best_residual: res,
                members: 1,
            }),
        }
    }

    let mut classes = vec![RepClass { basin: reducible_hits, ..reducible }];
    let mut irreducible: Vec<RepClass> = clusters
        .into_iter()
        .map(|c| {
            let representative = to_point(&c.best, meridian);
            let residual_norm =
                super::residual_norm(&representative, p).expect("generator count matches");
            let (jacobian_rank, kernel_dimension) = jacobian_rank_at(p, &representative);
            RepClass {
                representative,
                residual_norm,
                irreducible: true,
                nondegenerate: kernel_dimension == 1,
                jacobian_rank,
                kernel_dimension,
                orbit_dimension: 1,
                basin: c.members,
            }
        })
        .collect();
    irreducible.sort_by(|a, b| {
        let ka: Vec<[f64; 4]> = a.representative.images.iter().map(|q| q.components()).collect();
        let kb: Vec<[f64; 4]> = b.representative.images.iter().map(|q| q.components()).collect();
        ka.partial_cmp(&kb).expect("finite components")
    });
    classes.extend(irreducible);

    let mut warnings = Vec::new();
    let failed = seeds - converged;
    if converged == 0 {
        warnings.push(format!("incomplete enumeration: none of {seeds} seeds converged"));
    } else if 2 * failed > seeds {
        warnings.push(format!(
            "incomplete enumeration: {failed} of {seeds} seeds did not converge within {} iterations",
            cfg.max_iters
        ));
    }
    Ok(RepVariety {
        classes,
        status: EnumerationStatus::Heuristic,
        certificate: None,
        seeds_run: seeds,
        seeds_converged: converged,
        warnings,
    })
}
