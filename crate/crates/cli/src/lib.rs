//! `suturekit` command-line front end.
//!
//! Every JSON object written carries `"schema": "suturekit/1"`. Exit codes:
//! 0 on success, 1 when a report fails a consistency check, 2 on usage or
//! input errors.

pub mod ingest;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use suturekit::diagram::{parse_braid, parse_pd, seifert_genus_upper, GroupPresentation, KnotDiagram};
use suturekit::eigen::{
    build_model, decompose as eigen_decompose, spectrum_subset_check, top_eigenspace, Gaussian,
    ModelOptions, OperatorFamily,
};
use suturekit::fibered::{classify, table_sweep, KnotMeta};
use suturekit::repvar::{critical_point_model, solve_repvar, two_bridge, SolverConfig};
use suturekit::sutured::{
    closure_with, decompose as sutured_decompose, knot_complement_sutured, product_sutured,
    seifert_cut, DecompositionStep, SuturedRecord,
};
use suturekit::{alexander, table};

pub const SCHEMA: &str = "suturekit/1";
pub const SEEDS_ENV: &str = "SUTUREKIT_SEEDS";

#[derive(Debug, Parser)]
#[command(name = "suturekit", version, about = "Knot invariants, SU(2) representations and sutured closure arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Human-readable output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a diagram and print its canonical form and Wirtinger data.
    Parse(KnotInput),
    /// Symmetrized Alexander polynomial.
    Alexander(KnotInput),
    /// Enumerate SU(2) representations with the meridian pinned to i.
    Repvar {
        #[command(flatten)]
        input: KnotInput,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Full per-knot report with nontriviality and fiberedness verdicts.
    Fibered {
        #[command(flatten)]
        input: KnotInput,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Closure arithmetic for a balanced sutured manifold.
    Closure(ClosureArgs),
    /// Apply one decomposition step read from a JSON file.
    Decompose {
        #[arg(long)]
        step: PathBuf,
    },
    /// Simultaneous eigenspaces of a commuting operator family.
    Eigen(EigenArgs),
    /// Classify every knot of a table.
    Sweep {
        /// Table file (JSON or CSV); the built-in table when absent.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct KnotInput {
    /// PD code, e.g. "X[1,5,2,4];X[3,1,4,6];X[5,3,6,2]".
    #[arg(long)]
    pub pd: Option<String>,
    /// Braid word, e.g. "s1 s1 s1".
    #[arg(long)]
    pub braid: Option<String>,
    /// Built-in table id, e.g. 3_1.
    #[arg(long)]
    pub knot: Option<String>,
    /// File holding a PD code.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Multistart count (default scales with the generator count).
    #[arg(long)]
    pub seeds: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub cluster_radius: f64,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// Named record: knot-complement, product:G:B or seifert-cut:G.
    #[arg(long, required_unless_present = "record", conflicts_with = "record")]
    pub sutured: Option<String>,
    /// JSON file holding a sutured record.
    #[arg(long)]
    pub record: Option<PathBuf>,
    #[arg(long)]
    pub aux_genus: u32,
    /// Assert a non-separating curve for condition C2 when the auxiliary
    /// surface is planar.
    #[arg(long)]
    pub nonseparating_curve: bool,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    /// JSON operator family.
    #[arg(long, required_unless_present = "model", conflicts_with = "model")]
    pub family: Option<PathBuf>,
    /// Build the synthetic product model of this genus.
    #[arg(long)]
    pub model: Option<u32>,
    #[arg(long, default_value_t = 1, requires = "model")]
    pub top_dim: usize,
    /// Insert a Jordan block at a pair, written "re,im:re,im".
    #[arg(long, requires = "model")]
    pub jordan_at: Option<String>,
    /// Genus for the top-eigenspace and subset checks.
    #[arg(long)]
    pub genus: Option<u32>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Snap eigenvalues to even Gaussian integers.
    #[arg(long)]
    pub geometric_model: bool,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
}

/// Result of one invocation: the consistency-failure count decides the
/// exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub consistency_failures: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        let seeds = match self.seeds {
            Some(s) => Some(s),
            None => match std::env::var(SEEDS_ENV) {
                Ok(v) => Some(v.trim().parse().with_context(|| format!("{SEEDS_ENV}={v:?} is not a count"))?),
                Err(_) => None,
            },
        };
        Ok(SolverConfig {
            seeds,
            tol: self.tol,
            cluster_radius: self.cluster_radius,
            max_iters: self.max_iters,
            rng_seed: self.rng_seed,
        })
    }
}

struct LoadedKnot {
    diagram: KnotDiagram,
    meta: KnotMeta,
}

fn unknown_knot(id: &str) -> anyhow::Error {
    anyhow!("unknown knot id {id:?}; known ids: {}", table::known_ids().join(", "))
}

fn load_knot(input: &KnotInput) -> Result<LoadedKnot> {
    if let Some(id) = &input.knot {
        let row = table::lookup(id).ok_or_else(|| unknown_knot(id))?;
        return Ok(LoadedKnot {
            diagram: row.diagram()?,
            meta: KnotMeta {
                id: row.id.clone(),
                certified_genus: row.genus,
                two_bridge: row.two_bridge,
            },
        });
    }
    let (diagram, id) = if let Some(pd) = &input.pd {
        (parse_pd(pd)?, pd.clone())
    } else if let Some(braid) = &input.braid {
        (parse_braid(braid)?, braid.clone())
    } else if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        (parse_pd(text.trim())?, path.display().to_string())
    } else {
        bail!("one of --pd, --braid, --knot, --file is required");
    };
    Ok(LoadedKnot { diagram, meta: KnotMeta { id, ..KnotMeta::default() } })
}

fn with_schema(value: impl Serialize) -> Result<Value> {
    let mut v = serde_json::to_value(value)?;
    match v.as_object_mut() {
        Some(obj) => {
            obj.insert("schema".into(), Value::String(SCHEMA.into()));
            Ok(v)
        }
        None => Ok(json!({ "schema": SCHEMA, "value": v })),
    }
}

fn parse_named_record(name: &str) -> Result<SuturedRecord> {
    let parts: Vec<&str> = name.split(':').collect();
    let num = |s: &str| -> Result<u32> { s.parse().with_context(|| format!("bad number {s:?} in {name:?}")) };
    Ok(match parts.as_slice() {
        ["knot-complement"] => knot_complement_sutured(),
        ["product", g, b] => product_sutured(num(g)?, num(b)?)?,
        ["seifert-cut", g] => seifert_cut(num(g)?)?,
        _ => bail!("unknown sutured record {name:?}; use knot-complement, product:G:B or seifert-cut:G"),
    })
}

fn parse_gaussian(s: &str) -> Result<Gaussian> {
    let (re, im) = s.split_once(',').context("expected re,im")?;
    Ok(Gaussian::new(re.trim().parse()?, im.trim().parse()?))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

struct Printer<'a> {
    out: &'a mut dyn Write,
    pretty: bool,
}

impl Printer<'_> {
    fn json(&mut self, v: &Value) -> Result<()> {
        if self.pretty {
            writeln!(self.out, "{}", serde_json::to_string_pretty(v)?)?;
        } else {
            writeln!(self.out, "{}", serde_json::to_string(v)?)?;
        }
        Ok(())
    }

    fn text(&mut self, s: &str) -> Result<()> {
        writeln!(self.out, "{s}")?;
        Ok(())
    }
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(o) if o.consistency_failures > 0 => {
            let _ = writeln!(err, "{} consistency check(s) failed", o.consistency_failures);
            1
        }
        Ok(_) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome> {
    let mut p = Printer { out, pretty: cli.pretty };
    let mut outcome = Outcome::default();
    match &cli.command {
        Command::Parse(input) => {
            let k = load_knot(input)?;
            let pres = GroupPresentation::wirtinger(&k.diagram);
            let genus = seifert_genus_upper(&k.diagram);
            if p.pretty {
                p.text(&format!(
                    "crossings: {}\nwrithe: {}\nseifert circles: {}\ngenus upper bound: {}\ngenerators: {}",
                    k.diagram.crossing_count(),
                    k.diagram.writhe(),
                    genus.seifert_circles,
                    genus.genus_upper,
                    pres.n_generators()
                ))?;
            } else {
                p.json(&with_schema(json!({
                    "command": "parse",
                    "knot": k.meta.id,
                    "diagram": k.diagram,
                    "crossings": k.diagram.crossing_count(),
                    "writhe": k.diagram.writhe(),
                    "genus_estimate": genus,
                    "presentation": pres,
                    "abelianization": pres.abelianization(),
                }))?)?;
            }
        }
        Command::Alexander(input) => {
            let k = load_knot(input)?;
            let pres = GroupPresentation::wirtinger(&k.diagram);
            let poly = alexander::alexander_fox(&pres)?;
            if p.pretty {
                p.text(&poly.to_string())?;
            } else {
                let monic = k
                    .meta
                    .certified_genus
                    .map(|g| alexander::is_monic_of_degree(&poly, g as i32));
                p.json(&with_schema(json!({
                    "command": "alexander",
                    "knot": k.meta.id,
                    "alexander": poly,
                    "text": poly.to_string(),
                    "coefficient_mass": poly.coefficient_mass(),
                    "degree": poly.max_exp(),
                    "monic_deg_g": monic,
                }))?)?;
            }
        }
        Command::Repvar { input, solver } => {
            let k = load_knot(input)?;
            let cfg = solver.config()?;
            let pres = GroupPresentation::wirtinger(&k.diagram);
            let mut variety = solve_repvar(&pres, &cfg)?;
            let mut oracle = None;
            if let Some((a, b)) = k.meta.two_bridge {
                let count = two_bridge::irreducible_count(a, b)?;
                if !variety.certify_with(count, &format!("two-bridge oracle b({a},{b})")) {
                    outcome.consistency_failures += 1;
                }
                oracle = Some(count);
            }
            for w in &variety.warnings {
                writeln!(err, "warning: {w}")?;
            }
            let model = critical_point_model(&variety);
            if p.pretty {
                p.text(&format!(
                    "irreducible classes: {} ({:?})\nkhi_dim_upper: {}\nall nondegenerate: {}",
                    model.n_irreducible_classes,
                    variety.status,
                    model.khi_dim_upper,
                    variety.all_nondegenerate()
                ))?;
                for (i, c) in variety.classes.iter().enumerate() {
                    let imgs: Vec<String> = c
                        .representative
                        .images
                        .iter()
                        .map(|q| format!("({:.6}, {:.6}, {:.6})", q.x(), q.y(), q.z()))
                        .collect();
                    p.text(&format!(
                        "class {i}: {} residual {:.1e} kernel {} images {}",
                        if c.irreducible { "irreducible" } else { "reducible" },
                        c.residual_norm,
                        c.kernel_dimension,
                        imgs.join(" ")
                    ))?;
                }
            } else {
                p.json(&with_schema(json!({
                    "command": "repvar",
                    "knot": k.meta.id,
                    "n_irreducible": model.n_irreducible_classes,
                    "khi_dim_upper": model.khi_dim_upper,
                    "oracle_count": oracle,
                    "model": model,
                    "variety": variety,
                }))?)?;
            }
        }
        Command::Fibered { input, solver } => {
            let k = load_knot(input)?;
            let report = classify(&k.diagram, &k.meta, &solver.config()?)?;
            outcome.consistency_failures += report.consistency_failures();
            if p.pretty {
                p.text(&format!(
                    "{}: Δ = {}, n = {} ({:?}), nontrivial {:?}, fibered {:?}",
                    report.knot_id,
                    report.alexander_text,
                    report.n_irreducible,
                    report.enumeration_status,
                    report.verdicts.nontrivial,
                    report.verdicts.fibered
                ))?;
            } else {
                p.json(&with_schema(&report)?)?;
            }
        }
        Command::Closure(args) => {
            let record = match (&args.sutured, &args.record) {
                (Some(name), _) => parse_named_record(name)?,
                (None, Some(path)) => read_json(path)?,
                (None, None) => bail!("one of --sutured or --record is required"),
            };
            let balance = record.check_balanced();
            let c = closure_with(&record, args.aux_genus, args.nonseparating_curve)?;
            if p.pretty {
                p.text(&format!(
                    "chi_R_bar: {}\ngenus_R_bar: {}\nC1: {}\nC2: {}",
                    c.chi_r_bar, c.genus_r_bar, c.c1_ok, c.c2_ok
                ))?;
                for n in &c.notes {
                    p.text(&format!("note: {n}"))?;
                }
            } else {
                let mut v = with_schema(&c)?;
                v["command"] = json!("closure");
                v["input"] = serde_json::to_value(&record)?;
                v["balance"] = serde_json::to_value(&balance)?;
                p.json(&v)?;
            }
        }
        Command::Decompose { step } => {
            let step: DecompositionStep = read_json(step)?;
            let outputs = sutured_decompose(&step)?;
            p.json(&with_schema(json!({ "command": "decompose", "outputs": outputs }))?)?;
        }
        Command::Eigen(args) => {
            let mut family: OperatorFamily = match (&args.family, args.model) {
                (Some(path), _) => read_json(path)?,
                (None, Some(g)) => {
                    let jordan_at = match &args.jordan_at {
                        None => None,
                        Some(s) => {
                            let (a, b) = s.split_once(':').context("expected re,im:re,im")?;
                            Some((parse_gaussian(a)?, parse_gaussian(b)?))
                        }
                    };
                    build_model(g, args.top_dim, ModelOptions { jordan_at, rng_seed: args.rng_seed })?
                }
                (None, None) => bail!("one of --family or --model is required"),
            };
            if args.geometric_model {
                family.geometric = true;
            }
            let genus = args.genus.or(args.model).or_else(|| family.genus_tags.get(&0).copied());
            let dec = eigen_decompose(&family, args.tol)?;
            let mut v = with_schema(json!({
                "command": "eigen",
                "dim": dec.dim,
                "blocks": dec.blocks,
                "max_snap_distance": dec.max_snap_distance,
            }))?;
            if let Some(g) = genus {
                let top = top_eigenspace(&family, g, args.tol)?;
                let subset = spectrum_subset_check(&family, g, args.tol)?;
                v["genus"] = json!(g);
                v["top_dimension"] = json!(top.dimension);
                v["spectrum_subset"] = serde_json::to_value(&subset)?;
            }
            p.json(&v)?;
        }
        Command::Sweep { file, solver } => {
            let cfg = solver.config()?;
            let (rows, issues) = match file {
                None => (table::builtin().to_vec(), Vec::new()),
                Some(path) => {
                    let ing = ingest::ingest_table_lenient(path)?;
                    (ing.rows, ing.issues)
                }
            };
            let start = Instant::now();
            let sweep = table_sweep(&rows, &cfg);
            writeln!(err, "sweep: {} knots in {:.2?}", rows.len(), start.elapsed())?;
            for r in &sweep.reports {
                writeln!(p.out, "{}", serde_json::to_string(&with_schema(r)?)?)?;
            }
            for e in &sweep.errors {
                let v = with_schema(json!({ "error": e.message, "id": e.id }))?;
                writeln!(p.out, "{}", serde_json::to_string(&v)?)?;
            }
            for i in &issues {
                let v = with_schema(json!({ "error": i.message, "id": i.id, "line": i.line }))?;
                writeln!(p.out, "{}", serde_json::to_string(&v)?)?;
            }
            let mut summary = with_schema(sweep.summary)?;
            summary["ingest_errors"] = json!(issues.len());
            writeln!(p.out, "{}", serde_json::to_string(&summary)?)?;
            outcome.consistency_failures += sweep.summary.consistency_failures;
        }
    }
    Ok(outcome)
}
