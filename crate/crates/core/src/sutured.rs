//! Balanced sutured manifolds as boundary data, and closure arithmetic.
//!
//! A record keeps only what the closure and decomposition bookkeeping
//! needs: boundary genera, suture counts and `χ(R±)`. Homological
//! hypotheses are caller-asserted flags recorded in `labels`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuturedError {
    #[error("a product needs at least one boundary circle")]
    NoBoundaryCircles,
    #[error("seifert cut needs genus at least 1")]
    GenusZero,
    #[error("record is not balanced: {}", .0.join("; "))]
    Unbalanced(Vec<String>),
    #[error("horizontal surface has χ = {got}, expected χ(R+) = {expected}")]
    ChiMismatch { expected: i64, got: i64 },
    #[error("closure surface has odd Euler characteristic {0}")]
    OddClosureEuler(i64),
    #[error("precondition flag `{0}` not asserted")]
    PreconditionNotAsserted(String),
    #[error("invalid decomposition input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub genus: u32,
    pub sutures: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuturedRecord {
    pub boundary_components: Vec<BoundaryComponent>,
    #[serde(rename = "chi_R_plus")]
    pub chi_r_plus: i64,
    #[serde(rename = "chi_R_minus")]
    pub chi_r_minus: i64,
    pub n_sutures: u32,
    #[serde(default)]
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub reasons: Vec<String>,
}

impl SuturedRecord {
    pub fn check_balanced(&self) -> BalanceReport {
        check_balanced(self)
    }

    fn require_balanced(&self) -> Result<(), SuturedError> {
        let report = check_balanced(self);
        if report.balanced {
            Ok(())
        } else {
            Err(SuturedError::Unbalanced(report.reasons))
        }
    }
}

/// Every violated clause of the balance condition, plus internal
/// consistency of the boundary data.
pub fn check_balanced(s: &SuturedRecord) -> BalanceReport {
    let mut reasons = Vec::new();
    if s.boundary_components.is_empty() {
        reasons.push("no boundary components".to_string());
    }
    if s.chi_r_plus != s.chi_r_minus {
        reasons.push(format!(
            "χ(R+) = {} differs from χ(R-) = {}",
            s.chi_r_plus, s.chi_r_minus
        ));
    }
    for (k, c) in s.boundary_components.iter().enumerate() {
        if c.sutures == 0 {
            reasons.push(format!("boundary component {k} without suture"));
            reasons.push(format!("closed R-region on boundary component {k}"));
        }
    }
    let total: u32 = s.boundary_components.iter().map(|c| c.sutures).sum();
    if total != s.n_sutures {
        reasons.push(format!("n_sutures = {} but components carry {total}", s.n_sutures));
    }
    let chi_boundary: i64 = s
        .boundary_components
        .iter()
        .map(|c| 2 - 2 * c.genus as i64)
        .sum();
    if chi_boundary != s.chi_r_plus + s.chi_r_minus {
        reasons.push(format!(
            "χ(∂M) = {chi_boundary} but χ(R+) + χ(R-) = {}",
            s.chi_r_plus + s.chi_r_minus
        ));
    }
    BalanceReport { balanced: reasons.is_empty(), reasons }
}

/// `[-1, 1] × T` for `T` of genus `genus` with `boundary_circles` boundary
/// circles. The boundary is the double of `T`.
pub fn product_sutured(genus: u32, boundary_circles: u32) -> Result<SuturedRecord, SuturedError> {
    if boundary_circles == 0 {
        return Err(SuturedError::NoBoundaryCircles);
    }
    let chi = 2 - 2 * genus as i64 - boundary_circles as i64;
    Ok(SuturedRecord {
        boundary_components: vec![BoundaryComponent {
            genus: 2 * genus + boundary_circles - 1,
            sutures: boundary_circles,
        }],
        chi_r_plus: chi,
        chi_r_minus: chi,
        n_sutures: boundary_circles,
        labels: vec![format!("product over genus {genus} surface with {boundary_circles} boundary circles")],
    })
}

/// Knot complement with two oppositely oriented meridional sutures.
pub fn knot_complement_sutured() -> SuturedRecord {
    SuturedRecord {
        boundary_components: vec![BoundaryComponent { genus: 1, sutures: 2 }],
        chi_r_plus: 0,
        chi_r_minus: 0,
        n_sutures: 2,
        labels: vec!["knot complement, two meridional sutures".into()],
    }
}

/// Knot complement cut open along a genus-`g` Seifert surface: `R± = Σ`,
/// one suture.
pub fn seifert_cut(g: u32) -> Result<SuturedRecord, SuturedError> {
    if g == 0 {
        return Err(SuturedError::GenusZero);
    }
    let chi = 1 - 2 * g as i64;
    Ok(SuturedRecord {
        boundary_components: vec![BoundaryComponent { genus: 2 * g, sutures: 1 }],
        chi_r_plus: chi,
        chi_r_minus: chi,
        n_sutures: 1,
        labels: vec![format!("knot complement cut along genus {g} Seifert surface")],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureRecord {
    pub aux_genus: u32,
    pub aux_boundary: u32,
    #[serde(rename = "chi_R_bar")]
    pub chi_r_bar: i64,
    #[serde(rename = "genus_R_bar")]
    pub genus_r_bar: i64,
    pub c1_ok: bool,
    pub c2_ok: bool,
    pub notes: Vec<String>,
}

/// Closure with a connected auxiliary surface of genus `aux_genus`.
pub fn closure(s: &SuturedRecord, aux_genus: u32) -> Result<ClosureRecord, SuturedError> {
    closure_with(s, aux_genus, false)
}

/// As [`closure`], with the caller asserting that the gluing admits a
/// non-separating curve meeting `T` in an arc, for the `aux_genus = 0` case.
pub fn closure_with(
    s: &SuturedRecord,
    aux_genus: u32,
    nonseparating_curve: bool,
) -> Result<ClosureRecord, SuturedError> {
    s.require_balanced()?;
    let aux_boundary = s.n_sutures;
    let chi_t = 2 - 2 * aux_genus as i64 - aux_boundary as i64;
    let chi_r_bar = s.chi_r_plus + chi_t;
    if chi_r_bar % 2 != 0 {
        return Err(SuturedError::OddClosureEuler(chi_r_bar));
    }
    let genus_r_bar = 1 - chi_r_bar / 2;
    let c1_ok = genus_r_bar >= 2;
    let c2_ok = aux_genus >= 1 || (genus_r_bar >= 1 && nonseparating_curve);
    let mut notes = Vec::new();
    if aux_genus >= 2 && s.chi_r_plus <= 0 {
        notes.push("auxiliary genus at least 2 forces condition C1".into());
    }
    if genus_r_bar == 1 {
        notes.push("genus-1 closure: admissible only for local-coefficient variants".into());
    }
    if aux_genus == 0 {
        notes.push(if nonseparating_curve {
            "C2 rests on a caller-asserted non-separating curve".into()
        } else {
            "C2 unverified for annular or planar auxiliary surface".into()
        });
    }
    Ok(ClosureRecord {
        aux_genus,
        aux_boundary,
        chi_r_bar,
        genus_r_bar,
        c1_ok,
        c2_ok,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionKind {
    /// Cut along a surface parallel to `R+` with the given Euler
    /// characteristic.
    Horizontal { chi_s: i64 },
    /// Cut along a product annulus with ends on boundary component
    /// `component`. Requires flags `d_plus_nonzero` and `d_minus_nonzero`.
    ProductAnnulus { component: usize },
    /// Replace a knot-complement record by its cut along a genus-`genus`
    /// Seifert surface. Requires flag `surface_is_seifert`.
    SeifertCut { genus: u32 },
    /// Cut along a product disk on boundary component `component`, which
    /// changes the suture count by `sutures_delta` (±1). Requires flag
    /// `boundary_stays_connected`.
    ProductHandle { component: usize, sutures_delta: i8 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionStep {
    #[serde(flatten)]
    pub kind: DecompositionKind,
    pub input: SuturedRecord,
    #[serde(default)]
    pub precondition_flags: BTreeMap<String, bool>,
}

impl DecompositionStep {
    fn require(&self, flag: &str) -> Result<(), SuturedError> {
        if self.precondition_flags.get(flag).copied().unwrap_or(false) {
            Ok(())
        } else {
            Err(SuturedError::PreconditionNotAsserted(flag.to_string()))
        }
    }

    fn provenance(&self) -> Vec<String> {
        let mut labels = self.input.labels.clone();
        labels.extend(
            self.precondition_flags
                .iter()
                .filter(|(_, &v)| v)
                .map(|(k, _)| format!("asserted: {k}")),
        );
        labels
    }
}

fn component(s: &SuturedRecord, k: usize) -> Result<BoundaryComponent, SuturedError> {
    s.boundary_components.get(k).copied().ok_or_else(|| {
        SuturedError::InvalidInput(format!(
            "boundary component {k} out of range (record has {})",
            s.boundary_components.len()
        ))
    })
}

/// Output records of one decomposition step, each checked for balance.
pub fn decompose(step: &DecompositionStep) -> Result<Vec<SuturedRecord>, SuturedError> {
    let input = &step.input;
    input.require_balanced()?;
    let labels = step.provenance();
    let outputs = match step.kind {
        DecompositionKind::Horizontal { chi_s } => {
            if chi_s != input.chi_r_plus {
                return Err(SuturedError::ChiMismatch { expected: input.chi_r_plus, got: chi_s });
            }
            let piece = |side: &str| {
                let mut labels = labels.clone();
                labels.push(format!("horizontal cut, {side} piece"));
                SuturedRecord {
                    boundary_components: input.boundary_components.clone(),
                    chi_r_plus: input.chi_r_plus,
                    chi_r_minus: chi_s,
                    n_sutures: input.n_sutures,
                    labels,
                }
            };
            let top = piece("top");
            let mut bottom = piece("bottom");
            bottom.chi_r_plus = chi_s;
            bottom.chi_r_minus = input.chi_r_minus;
            vec![top, bottom]
        }
        DecompositionKind::ProductAnnulus { component: k } => {
            step.require("d_plus_nonzero")?;
            step.require("d_minus_nonzero")?;
            let c = component(input, k)?;
            let mut out = input.clone();
            out.boundary_components[k] = BoundaryComponent { genus: c.genus, sutures: c.sutures + 2 };
            out.n_sutures += 2;
            out.labels = labels;
            out.labels.push("product annulus cut".into());
            vec![out]
        }
        DecompositionKind::SeifertCut { genus } => {
            step.require("surface_is_seifert")?;
            if input.boundary_components != knot_complement_sutured().boundary_components
                || input.chi_r_plus != 0
            {
                return Err(SuturedError::InvalidInput(
                    "seifert cut applies to the knot-complement record".into(),
                ));
            }
            let mut out = seifert_cut(genus)?;
            out.labels = labels.into_iter().chain(out.labels).collect();
            vec![out]
        }
        DecompositionKind::ProductHandle { component: k, sutures_delta } => {
            step.require("boundary_stays_connected")?;
            if sutures_delta != 1 && sutures_delta != -1 {
                return Err(SuturedError::InvalidInput("sutures_delta must be ±1".into()));
            }
            let c = component(input, k)?;
            let sutures = c.sutures as i64 + sutures_delta as i64;
            if c.genus == 0 || sutures < 1 {
                return Err(SuturedError::InvalidInput(format!(
                    "product disk on component {k} (genus {}, {} sutures) leaves no valid boundary",
                    c.genus, c.sutures
                )));
            }
            let mut out = input.clone();
            out.boundary_components[k] = BoundaryComponent { genus: c.genus - 1, sutures: sutures as u32 };
            out.n_sutures = (out.n_sutures as i64 + sutures_delta as i64) as u32;
            out.chi_r_plus += 1;
            out.chi_r_minus += 1;
            out.labels = labels;
            out.labels.push("product disk cut".into());
            vec![out]
        }
    };
    for out in &outputs {
        let report = check_balanced(out);
        if !report.balanced {
            return Err(SuturedError::Unbalanced(report.reasons));
        }
    }
    Ok(outputs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(names: &[&str]) -> BTreeMap<String, bool> {
        names.iter().map(|n| (n.to_string(), true)).collect()
    }

    #[test]
    fn constructors_are_balanced() {
        for s in [
            knot_complement_sutured(),
            product_sutured(0, 1).unwrap(),
            product_sutured(1, 1).unwrap(),
            product_sutured(0, 3).unwrap(),
            seifert_cut(1).unwrap(),
            seifert_cut(2).unwrap(),
        ] {
            assert!(check_balanced(&s).balanced, "{s:?}");
        }
        assert_eq!(product_sutured(0, 1).unwrap().chi_r_plus, 1);
        assert_eq!(product_sutured(1, 1).unwrap().chi_r_plus, -1);
        assert_eq!(product_sutured(0, 3).unwrap().chi_r_plus, -1);
        assert_eq!(seifert_cut(2).unwrap().chi_r_plus, -3);
        assert_eq!(seifert_cut(1).unwrap().boundary_components[0].genus, 2);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(product_sutured(1, 0), Err(SuturedError::NoBoundaryCircles));
        assert_eq!(seifert_cut(0), Err(SuturedError::GenusZero));
    }

    #[test]
    fn torus_without_sutures_is_unbalanced() {
        let s = SuturedRecord {
            boundary_components: vec![BoundaryComponent { genus: 1, sutures: 0 }],
            chi_r_plus: 0,
            chi_r_minus: 0,
            n_sutures: 0,
            labels: vec![],
        };
        let r = check_balanced(&s);
        assert!(!r.balanced);
        assert!(r.reasons.contains(&"boundary component 0 without suture".to_string()));
        assert!(closure(&s, 1).is_err());
    }

    #[test]
    fn closure_genera() {
        let kc = knot_complement_sutured();
        let c0 = closure(&kc, 0).unwrap();
        assert_eq!((c0.genus_r_bar, c0.c1_ok), (1, false));
        let c1 = closure(&kc, 1).unwrap();
        assert_eq!((c1.genus_r_bar, c1.c1_ok, c1.c2_ok), (2, true, true));
        let p = closure(&product_sutured(1, 1).unwrap(), 2).unwrap();
        assert_eq!((p.chi_r_bar, p.genus_r_bar, p.c1_ok), (-4, 3, true));
        for g in 1..6 {
            assert_eq!(closure(&seifert_cut(g).unwrap(), 1).unwrap().genus_r_bar, g as i64 + 1);
        }
    }

    #[test]
    fn c2_rule() {
        let kc = knot_complement_sutured();
        assert!(!closure(&kc, 0).unwrap().c2_ok);
        assert!(closure_with(&kc, 0, true).unwrap().c2_ok);
        let disk = product_sutured(0, 1).unwrap();
        assert!(!closure_with(&disk, 0, true).unwrap().c2_ok);
    }

    #[test]
    fn horizontal_cut() {
        let step = DecompositionStep {
            kind: DecompositionKind::Horizontal { chi_s: 0 },
            input: knot_complement_sutured(),
            precondition_flags: BTreeMap::new(),
        };
        let out = decompose(&step).unwrap();
        assert_eq!(out.len(), 2);
        for r in &out {
            assert_eq!(r.boundary_components, vec![BoundaryComponent { genus: 1, sutures: 2 }]);
        }
        let bad = DecompositionStep { kind: DecompositionKind::Horizontal { chi_s: -1 }, ..step };
        assert_eq!(decompose(&bad), Err(SuturedError::ChiMismatch { expected: 0, got: -1 }));
    }

    #[test]
    fn product_annulus_cut() {
        let step = DecompositionStep {
            kind: DecompositionKind::ProductAnnulus { component: 0 },
            input: product_sutured(1, 1).unwrap(),
            precondition_flags: flags(&["d_plus_nonzero", "d_minus_nonzero"]),
        };
        let out = decompose(&step).unwrap();
        let pants = product_sutured(0, 3).unwrap();
        assert_eq!(out[0].boundary_components, pants.boundary_components);
        assert_eq!(out[0].chi_r_plus, pants.chi_r_plus);
        let missing = DecompositionStep { precondition_flags: flags(&["d_plus_nonzero"]), ..step };
        assert_eq!(
            decompose(&missing),
            Err(SuturedError::PreconditionNotAsserted("d_minus_nonzero".into()))
        );
    }

    #[test]
    fn product_disk_matches_products() {
        // An arc joining two boundary circles of T: (g, b) -> (g, b - 1).
        let step = DecompositionStep {
            kind: DecompositionKind::ProductHandle { component: 0, sutures_delta: -1 },
            input: product_sutured(1, 2).unwrap(),
            precondition_flags: flags(&["boundary_stays_connected"]),
        };
        let out = decompose(&step).unwrap();
        let expected = product_sutured(1, 1).unwrap();
        assert_eq!(out[0].boundary_components, expected.boundary_components);
        assert_eq!(out[0].chi_r_plus, expected.chi_r_plus);
        // A non-separating arc from one circle to itself: (g, b) -> (g - 1, b + 1).
        let step = DecompositionStep {
            kind: DecompositionKind::ProductHandle { component: 0, sutures_delta: 1 },
            input: product_sutured(1, 1).unwrap(),
            precondition_flags: flags(&["boundary_stays_connected"]),
        };
        let out = decompose(&step).unwrap();
        let expected = product_sutured(0, 2).unwrap();
        assert_eq!(out[0].boundary_components, expected.boundary_components);
        assert_eq!(out[0].chi_r_plus, expected.chi_r_plus);
    }

    #[test]
    fn seifert_cut_step() {
        let step = DecompositionStep {
            kind: DecompositionKind::SeifertCut { genus: 2 },
            input: knot_complement_sutured(),
            precondition_flags: flags(&["surface_is_seifert"]),
        };
        let out = decompose(&step).unwrap();
        assert_eq!(out[0].chi_r_plus, -3);
        assert!(out[0].labels.iter().any(|l| l == "asserted: surface_is_seifert"));
    }

    #[test]
    fn json_field_names() {
        let v = serde_json::to_value(closure(&knot_complement_sutured(), 1).unwrap()).unwrap();
        assert_eq!(v["genus_R_bar"], 2);
        let v = serde_json::to_value(knot_complement_sutured()).unwrap();
        assert_eq!(v["chi_R_plus"], 0);
        let step: DecompositionStep = serde_json::from_str(
            r#"{"kind":"horizontal","chi_s":0,"input":{"boundary_components":[{"genus":1,"sutures":2}],
                "chi_R_plus":0,"chi_R_minus":0,"n_sutures":2}}"#,
        )
        .unwrap();
        assert_eq!(step.kind, DecompositionKind::Horizontal { chi_s: 0 });
    }
}
