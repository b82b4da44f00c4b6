//! Command dispatch and report rendering for the `geon` binary.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use geon_core::decider::{Budget, Verdict, WordDecider};
use geon_core::homs::{enumerate_homomorphisms_with_limit, DEFAULT_HOM_DEGREE_LIMIT};
use geon_core::manifold::{
    extension_type, fundamental_group, fundamental_group_sum, in_hendriks_list, is_spinorial,
    is_spinorial_sum, kernel_rank, lens_homeomorphic, lens_homotopy_equivalent, lens_mcg,
    ConnectedSum, ExtensionVerdict, Prime,
};
use geon_core::mcg::{
    decompose_semidirect, enumerate_generators, induced_automorphism, mcg_presentation,
    mcg_presentation_three_generator,
};
use geon_core::reps::{
    burnside_spot_check, central_element_scalar, classify_uirs_z2star_z2, commutant_dimension,
    decompose_commuting, exchange_slide_trace, rho_tau_matrices, sector_analysis, verify_relations,
    z2_star_z2, CMatrix, CentralScalar, MatrixRep, UirFamily, DEFAULT_TOLERANCE,
};
use geon_core::{abelianization, Error, Presentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "geon",
    version,
    about = "Mapping-class groups of connected sums of prime 3-manifolds"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Tolerance for floating-point matrix comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Seed for randomized sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Lens-space homeomorphism, homotopy type and mapping class group.
    ClassifyLens {
        p: u64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        q2: Option<i64>,
    },
    /// Fundamental group, spinoriality and related facts for a manifold spec.
    AnalyzeManifold { path: PathBuf },
    /// Mapping-class generators and, when cataloged, a presentation.
    BuildMcg {
        path: PathBuf,
        /// Include each generator's action on π₁.
        #[arg(long)]
        emit_automorphisms: bool,
        /// Include π₁ and alternative presentations.
        #[arg(long)]
        emit_presentation: bool,
    },
    /// Word problem for a presentation or the π₁ of a manifold spec.
    DecideWord {
        /// Presentation JSON, or a manifold spec standing for its π₁.
        #[arg(long = "presentation", value_name = "FILE")]
        path: PathBuf,
        /// Whitespace-separated tokens such as "a b^-1".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = Budget::default().max_t1_depth)]
        depth: usize,
        #[arg(long, default_value_t = Budget::default().max_t2_degree)]
        degree: usize,
        #[arg(long, default_value_t = Budget::default().max_steps)]
        max_steps: u64,
    },
    /// Homomorphisms into a symmetric group.
    EnumerateHoms {
        path: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Largest degree accepted.
        #[arg(long, default_value_t = DEFAULT_HOM_DEGREE_LIMIT)]
        limit: usize,
        /// Print at most this many homomorphisms.
        #[arg(long, default_value_t = 50)]
        show: usize,
    },
    /// Unitary irreducible representations.
    ClassifyReps {
        #[arg(long, default_value = "rp3-sum")]
        group: String,
        #[arg(long, default_value_t = 8)]
        sample_tau: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub tolerance: f64,
    pub seed: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Value,
    pub result: Value,
    pub warnings: Vec<String>,
    pub status: i32,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "result": self.result,
            "warnings": self.warnings,
            "status": self.status,
        })
    }

    /// Indented `key: value` rendering of the result.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&self.result, 0, &mut out);
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::UnsupportedPresentation(_) => "unsupported_presentation",
        Error::DegreeTooLarge { .. } => "degree_too_large",
        Error::UnknownGenerator(_) => "unknown_generator",
        Error::NotCataloged(_) => "not_cataloged",
        Error::BadParameters(_) => "bad_parameters",
        Error::AssumptionViolated(_) => "assumption_violated",
        Error::IncompatiblePresentation(_) => "incompatible_presentation",
        Error::MismatchedStructure(_) => "mismatched_structure",
        Error::UnsupportedSum(_) => "unsupported_sum",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::WrongPresentation(_) => "wrong_presentation",
        Error::NotInvolution => "not_involution",
        Error::Parse { .. } => "parse_error",
        Error::Validation(_) => "validation_error",
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))
}

/// Parses and validates a manifold spec such as
/// `{"primes": [{"kind": "lens", "p": 2, "q": 1}, {"kind": "handle"}]}`.
pub fn parse_manifold_spec(text: &str) -> Result<ConnectedSum, Error> {
    ConnectedSum::from_json(text)
}

/// A presentation file, or a manifold spec standing for its π₁.
fn load_group(path: &Path) -> Result<Presentation, Error> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text)?;
    if value.get("primes").is_some() {
        fundamental_group_sum(&parse_manifold_spec(&text)?)
    } else {
        Presentation::from_json(&text)
    }
}

fn presentation_json(p: &Presentation) -> Value {
    json!({ "text": p.to_string(), "raw": p.to_json_value() })
}

fn echo(cmd: &Command) -> Value {
    match cmd {
        Command::ClassifyLens { p, q, q2 } => {
            json!({ "name": "classify-lens", "p": p, "q": q, "q2": q2 })
        }
        Command::AnalyzeManifold { path } => json!({ "name": "analyze-manifold", "path": path }),
        Command::BuildMcg {
            path,
            emit_automorphisms,
            emit_presentation,
        } => json!({
            "name": "build-mcg",
            "path": path,
            "emit_automorphisms": emit_automorphisms,
            "emit_presentation": emit_presentation,
        }),
        Command::DecideWord {
            path,
            word,
            depth,
            degree,
            max_steps,
        } => json!({
            "name": "decide-word", "path": path, "word": word,
            "depth": depth, "degree": degree, "max_steps": max_steps,
        }),
        Command::EnumerateHoms {
            path,
            degree,
            limit,
            show,
        } => {
            json!({ "name": "enumerate-homs", "path": path, "degree": degree, "limit": limit, "show": show })
        }
        Command::ClassifyReps { group, sample_tau } => {
            json!({ "name": "classify-reps", "group": group, "sample_tau": sample_tau })
        }
    }
}

/// Runs one command. Errors become a report with status 2; exhausted word
/// problems get status 3.
pub fn run(cmd: &Command, opts: &Options) -> Report {
    let mut warnings = Vec::new();
    let outcome = dispatch(cmd, opts, &mut warnings);
    let (result, status) = match outcome {
        Ok((v, status)) => (v, status),
        Err(e) => (
            json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }),
            EXIT_INVALID,
        ),
    };
    Report {
        command: echo(cmd),
        result,
        warnings,
        status,
    }
}

fn dispatch(
    cmd: &Command,
    opts: &Options,
    warnings: &mut Vec<String>,
) -> Result<(Value, i32), Error> {
    if opts.tolerance.is_nan() || opts.tolerance < 0.0 {
        return Err(Error::BadParameters(format!(
            "tolerance {} must be non-negative",
            opts.tolerance
        )));
    }
    Ok(match cmd {
        Command::ClassifyLens { p, q, q2 } => (classify_lens(*p, *q, *q2)?, EXIT_OK),
        Command::AnalyzeManifold { path } => (
            analyze_manifold(&parse_manifold_spec(&read(path)?)?, warnings)?,
            EXIT_OK,
        ),
        Command::BuildMcg {
            path,
            emit_automorphisms,
            emit_presentation,
        } => (
            build_mcg(
                &parse_manifold_spec(&read(path)?)?,
                *emit_automorphisms,
                *emit_presentation,
                warnings,
            )?,
            EXIT_OK,
        ),
        Command::DecideWord {
            path,
            word,
            depth,
            degree,
            max_steps,
        } => {
            let p = load_group(path)?;
            let budget = Budget {
                max_t1_depth: *depth,
                max_t2_degree: *degree,
                max_steps: *max_steps,
            };
            decide_word(&p, word, budget)?
        }
        Command::EnumerateHoms {
            path,
            degree,
            limit,
            show,
        } => (
            enumerate_homs(&load_group(path)?, *degree, *limit, *show)?,
            EXIT_OK,
        ),
        Command::ClassifyReps { group, sample_tau } => {
            (classify_reps(group, *sample_tau, opts)?, EXIT_OK)
        }
    })
}

fn classify_lens(p: u64, q: i64, q2: Option<i64>) -> Result<Value, Error> {
    let mut mcg = vec![lens_mcg(p, q)?.name()];
    let mut out = serde_json::Map::new();
    if let Some(q2) = q2 {
        out.insert("homeomorphic".into(), lens_homeomorphic(p, q, q2)?.into());
        out.insert(
            "homotopy_equivalent".into(),
            lens_homotopy_equivalent(p, q, q2)?.into(),
        );
        mcg.push(lens_mcg(p, q2)?.name());
    }
    out.insert("mcg".into(), json!(mcg));
    Ok(Value::Object(out))
}

fn analyze_manifold(s: &ConnectedSum, warnings: &mut Vec<String>) -> Result<Value, Error> {
    let pi1 = fundamental_group_sum(s)?;
    let primes = s
        .primes()
        .iter()
        .enumerate()
        .map(|(i, pr)| {
            let hendriks = match in_hendriks_list(pr) {
                Ok(b) => Value::Bool(b),
                Err(e) => {
                    warnings.push(format!("prime {}: {e}", i + 1));
                    Value::Null
                }
            };
            let mut entry = json!({
                "name": pr.to_string(),
                "pi1": fundamental_group(pr)?.to_string(),
                "spinorial": is_spinorial(pr),
                "hendriks": hendriks,
            });
            if let Prime::Lens { p, q } = pr {
                entry["mcg"] = lens_mcg(*p, *q)?.name().into();
            }
            Ok(entry)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let kernel = match kernel_rank(s) {
        Ok(k) => json!(k),
        Err(e) => {
            warnings.push(e.to_string());
            Value::Null
        }
    };
    Ok(json!({
        "sum": s.to_string(),
        "counts": s.counts_json(),
        "pi1": presentation_json(&pi1),
        "abelianization": abelianization(&pi1).to_json_value(),
        "primes": primes,
        "spinorial": is_spinorial_sum(s),
        "extension": extension_name(extension_type(s)),
        "kernel_rank": kernel,
    }))
}

fn extension_name(v: ExtensionVerdict) -> &'static str {
    match v {
        ExtensionVerdict::Isomorphic => "isomorphic",
        ExtensionVerdict::CentralZ2Extension => "central_z2_extension",
    }
}

fn build_mcg(
    s: &ConnectedSum,
    automorphisms: bool,
    presentations: bool,
    warnings: &mut Vec<String>,
) -> Result<Value, Error> {
    let set = enumerate_generators(s)?;
    let pi1 = fundamental_group_sum(s)?;
    let generators = set
        .generators
        .iter()
        .map(|g| {
            let mut v = g.to_json_value();
            if automorphisms {
                v["action"] = match induced_automorphism(s, g, &pi1) {
                    Ok(a) => a.to_json_value(&pi1),
                    Err(e) => {
                        warnings.push(format!("{g}: {e}"));
                        Value::Null
                    }
                };
            }
            v
        })
        .collect::<Vec<_>>();
    let presentation = match mcg_presentation(s) {
        Ok(p) => presentation_json(&p),
        Err(e @ Error::UnsupportedSum(_)) => {
            warnings.push(e.to_string());
            Value::Null
        }
        Err(e) => return Err(e),
    };
    let kernel = match kernel_rank(s) {
        Ok(k) => json!(k),
        Err(e) => {
            warnings.push(e.to_string());
            Value::Null
        }
    };
    let d = decompose_semidirect(s)?;
    let names =
        |gs: &[geon_core::McgGenerator]| gs.iter().map(ToString::to_string).collect::<Vec<_>>();
    let mut out = json!({
        "sum": s.to_string(),
        "generators": generators,
        "counts": set.counts,
        "kernel_rank": kernel,
        "extension": extension_name(extension_type(s)),
        "presentation": presentation,
        "semidirect": {
            "splits": d.splits,
            "slide_generators": names(&d.slide_generators),
            "particle_generators": names(&d.particle_generators),
            "particle_group_order": d.particle_group_order,
        },
    });
    if presentations {
        out["pi1"] = presentation_json(&pi1);
        if let Ok(p) = mcg_presentation_three_generator(s) {
            out["presentation_three_generator"] = presentation_json(&p);
        }
    }
    Ok(out)
}

fn decide_word(p: &Presentation, word: &str, budget: Budget) -> Result<(Value, i32), Error> {
    let w = p.parse_word(word)?;
    if budget.max_t2_degree > DEFAULT_HOM_DEGREE_LIMIT {
        return Err(Error::DegreeTooLarge {
            degree: budget.max_t2_degree,
            limit: DEFAULT_HOM_DEGREE_LIMIT,
        });
    }
    let verdict = WordDecider::new(p).decide(&w, budget);
    let status = if matches!(verdict, Verdict::Exhausted { .. }) {
        EXIT_EXHAUSTED
    } else {
        EXIT_OK
    };
    let mut out = verdict.to_json_value(p);
    out["word"] = p.format_word(&w.free_reduce()).into();
    out["presentation"] = p.to_string().into();
    out["certificate_checked"] = match verdict {
        Verdict::Exhausted { .. } => Value::Null,
        _ => verdict.verify(p, &w).into(),
    };
    Ok((out, status))
}

fn enumerate_homs(
    p: &Presentation,
    degree: usize,
    limit: usize,
    show: usize,
) -> Result<Value, Error> {
    let homs = enumerate_homomorphisms_with_limit(p, degree, limit)?;
    Ok(json!({
        "presentation": p.to_string(),
        "target": format!("S{degree}"),
        "count": homs.len(),
        "homomorphisms": homs.iter().take(show).map(|h| h.to_json_value(p)).collect::<Vec<_>>(),
        "truncated": homs.len() > show,
    }))
}

fn complex_json(z: num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect()))
            .collect(),
    )
}

fn rep_json(name: &str, tau: Option<f64>, r: &MatrixRep) -> Result<Value, Error> {
    let p = z2_star_z2();
    let central = match central_element_scalar(r, &p)? {
        CentralScalar::Scalar(z) => complex_json(z),
        CentralScalar::NotScalar => "not_scalar".into(),
    };
    Ok(json!({
        "name": name,
        "tau": tau,
        "dimension": r.dimension(),
        "matrices": { "omega": matrix_json(&r.matrices()[0]), "mu": matrix_json(&r.matrices()[1]) },
        "relations_hold": verify_relations(r, &p)?,
        "commutant_dimension": commutant_dimension(r),
        "sector": sector_analysis(r, 0)?.to_string(),
        "central_scalar": central,
        "trace_omega_mu": complex_json(exchange_slide_trace(r)),
    }))
}

fn classify_reps(group: &str, samples: usize, opts: &Options) -> Result<Value, Error> {
    if group != "rp3-sum" {
        return Err(Error::NotCataloged(format!(
            "representations of {group:?}; only rp3-sum is cataloged"
        )));
    }
    let tol = opts.tolerance;
    let taus: Vec<f64> = match opts.seed {
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut t: Vec<f64> = (0..samples)
                .map(|_| rng.gen_range(f64::EPSILON..PI))
                .collect();
            t.sort_by(f64::total_cmp);
            t
        }
        None => (1..=samples)
            .map(|k| PI * k as f64 / (samples + 1) as f64)
            .collect(),
    };
    let mut entries = Vec::new();
    for e in classify_uirs_z2star_z2() {
        match e.family {
            UirFamily::OneDimensional { .. } => {
                entries.push(rep_json(&e.name, None, &e.build(None, tol)?)?)
            }
            UirFamily::Tau => {
                for &tau in &taus {
                    entries.push(rep_json(&e.name, Some(tau), &e.build(Some(tau), tol)?)?);
                }
            }
        }
    }
    let boundary = [0.0, PI]
        .iter()
        .map(|&tau| {
            let r = MatrixRep::new(2, rho_tau_matrices(tau).to_vec(), tol)?;
            Ok(json!({
                "tau": tau,
                "commutant_dimension": commutant_dimension(&r),
                "decomposition": decompose_commuting(&r)?,
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(0));
    let burnside = burnside_spot_check(32, &mut rng, tol)?;
    Ok(json!({
        "group": "<omega, mu | omega omega, mu mu>",
        "entries": entries,
        "boundary": boundary,
        "three_dimensional_probe": burnside,
    }))
}
