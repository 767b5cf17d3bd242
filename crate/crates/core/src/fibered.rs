//! Per-knot reports: Alexander polynomial, representation count, and the
//! nontriviality and fiberedness verdicts they support.
//!
//! Fibered "yes" needs a certified enumeration with exactly one
//! nondegenerate irreducible class, a certified genus `g ≥ 1`, and a
//! monic Alexander polynomial of degree `g`. Fibered "no" uses only the
//! classical obstruction that a fibered knot's Alexander polynomial is
//! monic of degree `g`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alexander::{alexander_fox, is_monic_of_degree, AlexanderError};
use crate::diagram::{seifert_genus_upper, DiagramError, GroupPresentation, KnotDiagram};
use crate::laurent::LaurentPolynomial;
use crate::repvar::two_bridge::{irreducible_count, OracleError};
use crate::repvar::{
    critical_point_model, solve_repvar, EnumerationStatus, RepvarError, SolverConfig,
};
use crate::table::TableRow;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Repvar(#[from] RepvarError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Metadata that does not come from the diagram.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct KnotMeta {
    pub id: String,
    pub certified_genus: Option<u32>,
    pub two_bridge: Option<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nontrivial {
    Yes,
    Unknown,
    UnknotConsistent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fibered {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub nontrivial: Nontrivial,
    pub fibered: Fibered,
    /// The unknot, fibered by convention outside the `g ≥ 1` pipeline.
    pub trivially_fibered_by_convention: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckOutcome {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyCheck {
    pub name: String,
    pub outcome: CheckOutcome,
    pub detail: String,
}

impl ConsistencyCheck {
    fn new(name: &str, ok: bool, detail: String) -> Self {
        let outcome = if ok { CheckOutcome::Passed } else { CheckOutcome::Failed };
        Self { name: name.into(), outcome, detail }
    }

    fn skipped(name: &str, detail: &str) -> Self {
        Self { name: name.into(), outcome: CheckOutcome::Skipped, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotReport {
    pub knot_id: String,
    pub crossings: usize,
    pub genus: u32,
    pub genus_certified: bool,
    pub genus_upper: u32,
    pub alexander: LaurentPolynomial,
    pub alexander_text: String,
    pub coefficient_mass: i64,
    pub monic_deg_g: bool,
    pub n_irreducible: usize,
    pub oracle_count: Option<usize>,
    pub enumeration_status: EnumerationStatus,
    pub certificate: Option<String>,
    pub all_nondegenerate: bool,
    pub khi_dim_upper: usize,
    pub verdicts: Verdicts,
    pub consistency: Vec<ConsistencyCheck>,
    pub warnings: Vec<String>,
}

impl KnotReport {
    pub fn consistency_failures(&self) -> usize {
        self.consistency
            .iter()
            .filter(|c| c.outcome == CheckOutcome::Failed)
            .count()
    }

    /// Re-derives a fibered "yes" from the serialized fields alone.
    pub fn fibered_yes_hypotheses_hold(&self) -> bool {
        self.enumeration_status == EnumerationStatus::Certified
            && self.n_irreducible == 1
            && self.all_nondegenerate
            && self.genus_certified
            && self.genus >= 1
            && is_monic_of_degree(&self.alexander, self.genus as i32)
    }
}

/// Runs the full pipeline on one diagram.
pub fn classify(
    d: &KnotDiagram,
    meta: &KnotMeta,
    cfg: &SolverConfig,
) -> Result<KnotReport, ClassifyError> {
    let p = GroupPresentation::wirtinger(d);
    let alexander = alexander_fox(&p)?;
    let estimate = seifert_genus_upper(d);
    let genus_certified = meta.certified_genus.is_some();
    let genus = meta.certified_genus.unwrap_or(estimate.genus_upper);

    let mut variety = solve_repvar(&p, cfg)?;
    let oracle_count = match meta.two_bridge {
        Some((a, b)) => Some(irreducible_count(a, b)?),
        None => None,
    };
    let mut consistency = Vec::new();
    if let (Some(count), Some((a, b))) = (oracle_count, meta.two_bridge) {
        let ok = variety.certify_with(count, &format!("two-bridge oracle b({a},{b})"));
        consistency.push(ConsistencyCheck::new(
            "oracle_agreement",
            ok,
            format!("solver {} vs oracle {count}", variety.n_irreducible()),
        ));
    } else {
        consistency.push(ConsistencyCheck::skipped("oracle_agreement", "no 2-bridge parameters"));
    }

    let model = critical_point_model(&variety);
    let n = model.n_irreducible_classes;
    let mass = alexander.coefficient_mass();
    let certified = variety.status == EnumerationStatus::Certified;
    let monic_deg_g = is_monic_of_degree(&alexander, genus as i32);
    let degree = alexander.max_exp().unwrap_or(0);

    if certified {
        consistency.push(ConsistencyCheck::new(
            "mass_bound",
            mass <= model.khi_dim_upper as i64,
            format!("coefficient mass {mass} vs 2n+1 = {}", model.khi_dim_upper),
        ));
    } else {
        consistency.push(ConsistencyCheck::skipped("mass_bound", "enumeration not certified"));
    }
    consistency.push(ConsistencyCheck::new(
        "irreducible_exists",
        !(n == 0 && alexander != LaurentPolynomial::one()),
        if n == 0 && alexander != LaurentPolynomial::one() {
            "solver incompleteness or inconsistency: no irreducible class but Δ ≠ 1".into()
        } else {
            format!("n = {n}")
        },
    ));
    consistency.push(ConsistencyCheck::new(
        "degree_le_genus_upper",
        degree <= estimate.genus_upper as i32,
        format!("deg Δ = {degree}, Seifert bound {}", estimate.genus_upper),
    ));
    if let Some(g) = meta.certified_genus {
        consistency.push(ConsistencyCheck::new(
            "certified_genus_le_upper",
            g <= estimate.genus_upper,
            format!("certified {g}, Seifert bound {}", estimate.genus_upper),
        ));
        consistency.push(ConsistencyCheck::new(
            "degree_le_genus",
            degree <= g as i32,
            format!("deg Δ = {degree}, genus {g}"),
        ));
    }
    let tol_ok = variety.classes.iter().all(|c| c.residual_norm <= cfg.tol);
    consistency.push(ConsistencyCheck::new(
        "residuals_within_tolerance",
        tol_ok,
        format!("tolerance {:e}", cfg.tol),
    ));

    let nontrivial = if n >= 1 {
        Nontrivial::Yes
    } else if alexander == LaurentPolynomial::one() && genus == 0 {
        Nontrivial::UnknotConsistent
    } else {
        Nontrivial::Unknown
    };
    let all_nondegenerate = variety.all_nondegenerate();
    let fibered = if certified
        && n == 1
        && all_nondegenerate
        && genus_certified
        && genus >= 1
        && monic_deg_g
    {
        Fibered::Yes
    } else if genus_certified && !monic_deg_g {
        Fibered::No
    } else {
        Fibered::Unknown
    };
    let trivially_fibered_by_convention =
        genus_certified && genus == 0 && alexander == LaurentPolynomial::one();

    Ok(KnotReport {
        knot_id: meta.id.clone(),
        crossings: d.crossing_count(),
        genus,
        genus_certified,
        genus_upper: estimate.genus_upper,
        alexander_text: alexander.to_string(),
        alexander,
        coefficient_mass: mass,
        monic_deg_g,
        n_irreducible: n,
        oracle_count,
        enumeration_status: variety.status,
        certificate: variety.certificate.clone(),
        all_nondegenerate,
        khi_dim_upper: model.khi_dim_upper,
        verdicts: Verdicts { nontrivial, fibered, trivially_fibered_by_convention },
        consistency,
        warnings: variety.warnings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowError {
    pub id: String,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    pub knots: usize,
    pub reports: usize,
    pub errors: usize,
    pub consistency_failures: usize,
    pub certified: usize,
    pub fibered_yes: usize,
    pub fibered_no: usize,
    pub fibered_unknown: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub reports: Vec<KnotReport>,
    pub errors: Vec<RowError>,
    pub summary: SweepSummary,
}

/// Classifies every row in parallel. Row failures become [`RowError`]s;
/// output is sorted by id.
pub fn table_sweep(rows: &[TableRow], cfg: &SolverConfig) -> Sweep {
    let results: Vec<Result<KnotReport, RowError>> = rows
        .par_iter()
        .map(|row| {
            let meta = KnotMeta {
                id: row.id.clone(),
                certified_genus: row.genus,
                two_bridge: row.two_bridge,
            };
            row.diagram()
                .map_err(ClassifyError::from)
                .and_then(|d| classify(&d, &meta, cfg))
                .map_err(|e| RowError { id: row.id.clone(), message: e.to_string() })
        })
        .collect();
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => errors.push(e),
        }
    }
    reports.sort_by(|a, b| a.knot_id.cmp(&b.knot_id));
    errors.sort_by(|a, b| a.id.cmp(&b.id));
    let count = |f: Fibered| reports.iter().filter(|r| r.verdicts.fibered == f).count();
    let summary = SweepSummary {
        knots: rows.len(),
        reports: reports.len(),
        errors: errors.len(),
        consistency_failures: reports.iter().map(KnotReport::consistency_failures).sum(),
        certified: reports
            .iter()
            .filter(|r| r.enumeration_status == EnumerationStatus::Certified)
            .count(),
        fibered_yes: count(Fibered::Yes),
        fibered_no: count(Fibered::No),
        fibered_unknown: count(Fibered::Unknown),
    };
    Sweep { reports, errors, summary }
}
