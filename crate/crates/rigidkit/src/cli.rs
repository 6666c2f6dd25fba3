//! Command-line interface.
//!
//! Exit codes: 0 when every requested check passed, 1 when the analysis
//! found a failing verdict or a check errored, 2 for usage and parse
//! errors. The `RIGIDKIT_MAX_DIM` environment variable overrides the
//! default dimension cap of 12 for the family commands (the graphs grow
//! exponentially with the dimension).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::constructions::{contraction_map, family_framework, family_instance, ConfigLabel};
use crate::document::FrameworkDocument;
use crate::enumeration::{
    congruence_class_count, decide_global_rigidity, detect_pendant_structure,
    enumerate_realizations, RigidityVerdict,
};
use crate::geometry::{Framework, VertexId};
use crate::numeric::{
    generic_global_rigidity, is_infinitesimally_rigid, numeric_rank, real_coords, rigidity_matrix,
};
use crate::render::render_svg;
use crate::report::{family_verification_report, AnalysisReport, CheckReport, InputSummary};

const DEFAULT_MAX_DIM: usize = 12;

#[derive(Parser)]
#[command(
    name = "rigidkit",
    version,
    about = "Exact and numeric global-rigidity analysis for bar-and-joint frameworks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rebuild the built-in counterexample family in dimension D and verify
    /// every claimed property exactly
    PaperVerify {
        /// Dimension of the family instance (2 ≤ D ≤ dimension cap)
        #[arg(long)]
        dim: usize,
        /// Emit the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Write one of the built-in configurations as a framework document
    Generate {
        /// Dimension of the family instance (2 ≤ D ≤ dimension cap)
        #[arg(long)]
        dim: usize,
        /// Configuration label: p, q, r, s or t
        #[arg(long)]
        config: String,
        /// Apply the second-axis contraction first (labels p and q only;
        /// r, s and t are already expressed in the contracted frame)
        #[arg(long)]
        affine: bool,
        /// Output path for the JSON document
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run selected checks on a framework document
    Analyze {
        /// Framework document (JSON)
        file: PathBuf,
        /// Second framework document for equivalence-vs / congruence-vs
        #[arg(long)]
        versus: Option<PathBuf>,
        /// Base vertex ids, comma separated (defaults to the document's
        /// base field)
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<VertexId>>,
        /// Comma-separated checks: equivalence-vs, congruence-vs,
        /// infinitesimal, generic-global, enumerate, decide
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<String>,
        /// Trials for the generic-global check
        #[arg(long, default_value_t = 32)]
        trials: usize,
        /// Seed for the generic-global check
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Emit the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Render a framework document to SVG
    Render {
        /// Framework document (JSON)
        file: PathBuf,
        /// Output path for the SVG
        #[arg(short, long)]
        out: PathBuf,
        /// Two 1-based coordinate axes to project onto
        #[arg(long, value_delimiter = ',', num_args = 1..=2, default_values_t = vec![1, 2])]
        axes: Vec<usize>,
    },
}

/// An error that already knows its process exit code.
#[derive(Debug)]
struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

fn max_dim() -> usize {
    std::env::var("RIGIDKIT_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

fn check_family_dim(dim: usize) -> Result<(), CliError> {
    let cap = max_dim();
    if dim < 2 || dim > cap {
        return Err(CliError::usage(format!(
            "dimension must be between 2 and {cap} (set RIGIDKIT_MAX_DIM to raise the cap); got {dim}"
        )));
    }
    Ok(())
}

fn read_document(path: &Path) -> Result<(FrameworkDocument, Framework), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let document = FrameworkDocument::from_json_str(&text)
        .map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))?;
    let framework = document
        .to_framework()
        .map_err(|e| CliError::usage(format!("invalid framework in {}: {e}", path.display())))?;
    Ok((document, framework))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AnalyzeCheck {
    EquivalenceVs,
    CongruenceVs,
    Infinitesimal,
    GenericGlobal,
    Enumerate,
    Decide,
}

impl AnalyzeCheck {
    fn parse(token: &str) -> Result<Self, CliError> {
        match token {
            "equivalence-vs" => Ok(AnalyzeCheck::EquivalenceVs),
            "congruence-vs" => Ok(AnalyzeCheck::CongruenceVs),
            "infinitesimal" => Ok(AnalyzeCheck::Infinitesimal),
            "generic-global" => Ok(AnalyzeCheck::GenericGlobal),
            "enumerate" => Ok(AnalyzeCheck::Enumerate),
            "decide" => Ok(AnalyzeCheck::Decide),
            other => Err(CliError::usage(format!("unknown check `{other}`"))),
        }
    }

    fn needs_versus(&self) -> bool {
        matches!(self, AnalyzeCheck::EquivalenceVs | AnalyzeCheck::CongruenceVs)
    }

    fn needs_base(&self) -> bool {
        matches!(self, AnalyzeCheck::Enumerate | AnalyzeCheck::Decide)
    }
}

/// Parses the process arguments, runs the command and returns the exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let _ = error.print();
            return if error.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            error.code
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::PaperVerify { dim, json } => {
            check_family_dim(dim)?;
            let report = family_verification_report(dim);
            print!("{}", if json { report.to_json() } else { report.to_text() });
            Ok(report.exit_code())
        }
        Command::Generate {
            dim,
            config,
            affine,
            out,
        } => {
            check_family_dim(dim)?;
            let label = ConfigLabel::from_str(&config).map_err(CliError::usage)?;
            if affine && label.in_affine_frame() {
                return Err(CliError::usage(format!(
                    "label `{}` is already expressed in the contracted frame; --affine only applies to p and q",
                    label.as_str()
                )));
            }
            let mut framework =
                family_framework(dim, label, false).expect("dimension validated above");
            if affine {
                let map = contraction_map(dim).expect("dimension validated above");
                let mapped = map
                    .apply(framework.config())
                    .expect("dimensions agree by construction");
                framework = framework.with_config(mapped).expect("same graph");
            }
            let base = family_instance(dim)
                .expect("dimension validated above")
                .base_vertices()
                .clone();
            let document = FrameworkDocument::from_framework(&framework, Some(&base));
            write_file(&out, &document.to_json_string())?;
            Ok(0)
        }
        Command::Analyze {
            file,
            versus,
            base,
            checks,
            trials,
            seed,
            json,
        } => {
            let parsed: Vec<AnalyzeCheck> = checks
                .iter()
                .map(|token| AnalyzeCheck::parse(token))
                .collect::<Result<_, _>>()?;
            let (document, framework) = read_document(&file)?;

            let versus_framework = if parsed.iter().any(AnalyzeCheck::needs_versus) {
                let path = versus.as_ref().ok_or_else(|| {
                    CliError::usage("equivalence-vs and congruence-vs require --versus FILE")
                })?;
                Some(read_document(path)?.1)
            } else {
                None
            };
            let base_set: Option<BTreeSet<VertexId>> = base
                .map(|ids| ids.into_iter().collect())
                .or_else(|| document.base_set());
            if parsed.iter().any(AnalyzeCheck::needs_base) && base_set.is_none() {
                return Err(CliError::usage(
                    "enumerate and decide require --base or a `base` field in the document",
                ));
            }

            let mut reports = Vec::new();
            for check in &parsed {
                reports.push(run_analyze_check(
                    *check,
                    &framework,
                    versus_framework.as_ref(),
                    base_set.as_ref(),
                    trials,
                    seed,
                    &file,
                )?);
            }
            let input = InputSummary {
                source: file.display().to_string(),
                dim: framework.dim(),
                vertices: framework.graph().vertex_count(),
                edges: framework.graph().edge_count(),
            };
            let report = AnalysisReport::new(input, reports);
            print!("{}", if json { report.to_json() } else { report.to_text() });
            Ok(report.exit_code())
        }
        Command::Render { file, out, axes } => {
            let (_, framework) = read_document(&file)?;
            if axes.len() != 2 {
                return Err(CliError::usage("--axes takes exactly two indices"));
            }
            let svg = render_svg(&framework, (axes[0], axes[1]))
                .map_err(|e| CliError::usage(e.to_string()))?;
            write_file(&out, &svg)?;
            Ok(0)
        }
    }
}

fn run_analyze_check(
    check: AnalyzeCheck,
    framework: &Framework,
    versus: Option<&Framework>,
    base: Option<&BTreeSet<VertexId>>,
    trials: usize,
    seed: u64,
    input_path: &Path,
) -> Result<CheckReport, CliError> {
    let report = match check {
        AnalyzeCheck::EquivalenceVs => {
            let other = versus.expect("presence checked by the caller");
            match framework.is_equivalent(other) {
                Ok(result) => CheckReport::new("equivalence-vs", result.to_string())
                    .expect_verdict("true"),
                Err(error) => CheckReport::failed("equivalence-vs", error),
            }
        }
        AnalyzeCheck::CongruenceVs => {
            let other = versus.expect("presence checked by the caller");
            match framework.is_congruent(other) {
                Ok(result) => CheckReport::new("congruence-vs", result.to_string())
                    .expect_verdict("true"),
                Err(error) => CheckReport::failed("congruence-vs", error),
            }
        }
        AnalyzeCheck::Infinitesimal => {
            let coords = real_coords(framework.config());
            match is_infinitesimally_rigid(framework.graph(), &coords) {
                Ok(result) => {
                    let rank = rigidity_matrix(framework.graph(), &coords)
                        .map(|rm| numeric_rank(&rm.matrix))
                        .expect("coordinates already validated");
                    let d = framework.dim();
                    let n = framework.graph().vertex_count();
                    CheckReport::new("infinitesimal", result.to_string())
                        .expect_verdict("true")
                        .with_value("rank", rank.to_string())
                        .with_value("max-rank", (d * n - d * (d + 1) / 2).to_string())
                }
                Err(error) => CheckReport::failed("infinitesimal", error),
            }
        }
        AnalyzeCheck::GenericGlobal => {
            match generic_global_rigidity(framework.graph(), framework.dim(), trials, seed) {
                Ok(result) => CheckReport::new("generic-global", result.certified().to_string())
                    .expect_verdict("true")
                    .with_value("caveat", result.caveat())
                    .with_value("trials", trials.to_string())
                    .with_value("seed", seed.to_string()),
                Err(error) => CheckReport::failed("generic-global", error),
            }
        }
        AnalyzeCheck::Enumerate => {
            let base = base.expect("presence checked by the caller");
            match detect_pendant_structure(framework, base).and_then(|ps| {
                let classes = enumerate_realizations(&ps)?;
                Ok(classes)
            }) {
                Ok(classes) => CheckReport::new("enumerate", classes.len().to_string())
                    .with_value(
                        "congruence-classes",
                        congruence_class_count(&classes).to_string(),
                    )
                    .with_value(
                        "masks",
                        classes
                            .iter()
                            .map(|c| {
                                c.reflection_mask
                                    .iter()
                                    .map(|&b| if b { '1' } else { '0' })
                                    .collect::<String>()
                            })
                            .collect::<Vec<_>>()
                            .join(","),
                    ),
                Err(error) => CheckReport::failed("enumerate", error),
            }
        }
        AnalyzeCheck::Decide => {
            let base = base.expect("presence checked by the caller");
            match detect_pendant_structure(framework, base).and_then(|ps| decide_global_rigidity(&ps))
            {
                Ok(verdict) => {
                    let mut report = CheckReport::new("decide", verdict.status_str());
                    if let RigidityVerdict::NotGloballyRigid { witness } = verdict {
                        let witness_framework = framework
                            .with_config(witness)
                            .expect("witness covers the graph");
                        let document =
                            FrameworkDocument::from_framework(&witness_framework, Some(base));
                        let witness_path = input_path.with_extension("witness.json");
                        write_file(&witness_path, &document.to_json_string())?;
                        report = report
                            .with_value("witness-file", witness_path.display().to_string())
                            .with_witness(document);
                    }
                    report
                }
                Err(error) => CheckReport::failed("decide", error),
            }
        }
    };
    Ok(report)
}
