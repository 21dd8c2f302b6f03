//! The `gcq` command-line tool: reads JSON structure files, runs the
//! verifiers and prints a deterministic report.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure,
//! 2 on an input or usage error.

pub mod error;
pub mod format;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use gcq_core::constructions::{
    build_and_verify_iso, check_iso_conditions, dualize, group_algebra_hcq, loop_algebra_hq, loop_function_hcq,
    mirror_construction, taft_example, LoopTable,
};
use gcq_core::exactlin::Field;
use gcq_core::grading::GroupTable;
use gcq_core::hcq::{Coassociativity, GCHopfCoquasigroup};
use gcq_core::ore::{build_extension, check_ore_conditions, normalize_generators, OreDatum, OreExtension};
use gcq_core::report::{Check, Verdict, VerificationReport, Witness};
use serde_json::{json, Value};

pub use error::CliError;
pub use report::ReportDocument;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleKind {
    GroupAlgebra,
    LoopFunction,
    Mirror,
    Taft,
    Dualize,
}

#[derive(Debug, Parser)]
#[command(name = "gcq", version, about = "Verifier for group-cograded Hopf coquasigroups and their Ore extensions")]
pub struct Cli {
    /// Output form of the report.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub report: ReportFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure, coquasigroup and coassociativity checks on a structure file.
    Verify { h: PathBuf },
    /// Checks an Ore datum against its base.
    OreCheck { h: PathBuf, ore: PathBuf },
    /// Builds the Ore extension and verifies it on monomials up to `--degree`.
    OreVerify {
        h: PathBuf,
        ore: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        /// Build even when the datum fails its conditions.
        #[arg(long)]
        force: bool,
    },
    /// Checks an isomorphism datum between two Ore extensions.
    Iso {
        h: PathBuf,
        h2: PathBuf,
        ore: PathBuf,
        ore2: PathBuf,
        iso: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long)]
        force: bool,
    },
    /// Writes a built-in instance as a structure file.
    Example {
        #[arg(long, value_enum)]
        kind: ExampleKind,
        /// Group: `cN`, `s3`, `trivial` or a group JSON file.
        #[arg(long)]
        group: Option<String>,
        /// Loop: `moufang12`, a group name or a loop JSON file.
        #[arg(long = "loop")]
        loop_: Option<String>,
        /// Grading group of a mirror.
        #[arg(long)]
        grading: Option<String>,
        #[arg(long, default_value = "q")]
        field: String,
        /// Order of the cyclic group of a Taft datum.
        #[arg(long)]
        n: Option<usize>,
        /// Character value `χ(g)` of a Taft datum.
        #[arg(long)]
        q: Option<String>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
        /// Where a Taft datum goes; defaults to `<out stem>.ore.json`.
        #[arg(long)]
        ore_out: Option<PathBuf>,
    },
    /// Normalizes a generator pair `r1, r2` into the family `r1·r2⁻¹`.
    Normalize { h: PathBuf, gen: PathBuf },
}

/// Exit code plus the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(doc) => Outcome {
            code: if doc.passed() { EXIT_PASS } else { EXIT_FAIL },
            stdout: match cli.report {
                ReportFormat::Text => doc.to_text(),
                ReportFormat::Json => doc.to_json(),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs a parsed command and returns its report.
pub fn execute(command: &Command) -> Result<ReportDocument, CliError> {
    let mut inputs = Inputs::default();
    match command {
        Command::Verify { h } => {
            let h = inputs.hcq(h)?;
            let mut report = h.verify_structure();
            report.extend(h.verify_coquasigroup());
            report.checks.push(coassociativity_check(&h));
            Ok(inputs.document("verify", report))
        }
        Command::OreCheck { h, ore } => {
            let h = inputs.hcq(h)?;
            let datum = inputs.ore(ore, &h)?;
            let report = check_ore_conditions(&h, &datum)?;
            Ok(inputs.document("ore-check", report))
        }
        Command::OreVerify { h, ore, degree, force } => {
            let h = inputs.hcq(h)?;
            let datum = inputs.ore(ore, &h)?;
            let (ext, mut report) = build_checked(&h, &datum, *force, None)?;
            if let Some(ext) = ext {
                report.extend(ext.verify_extension(*degree));
                report.extend(skew_primitive(&ext));
            }
            Ok(inputs.document("ore-verify", report))
        }
        Command::Iso { h, h2, ore, ore2, iso, degree, force } => {
            let h = inputs.hcq(h)?;
            let h2 = inputs.hcq(h2)?;
            let datum = inputs.ore(ore, &h)?;
            let datum2 = inputs.ore(ore2, &h2)?;
            let iso = inputs.iso(iso, &h, &h2)?;
            let (src, mut report) = build_checked(&h, &datum, *force, Some("src"))?;
            let (dst, dst_report) = build_checked(&h2, &datum2, *force, Some("dst"))?;
            report.extend(dst_report);
            match (src, dst) {
                (Some(src), Some(dst)) => match build_and_verify_iso(&src, &dst, &iso, *degree, *force) {
                    Ok(r) => report.extend(r),
                    Err(gcq_core::Error::ConditionFailure { .. }) => {
                        report.extend(check_iso_conditions(&h, &h2, &datum, &datum2, &iso)?);
                        report.info("iso.build", &[], "extended map not checked; rerun with --force");
                    }
                    Err(e) => return Err(e.into()),
                },
                _ => report.info("iso.build", &[], "extensions not built; rerun with --force"),
            }
            Ok(inputs.document("iso", report))
        }
        Command::Normalize { h, gen } => {
            let h = inputs.hcq(h)?;
            let gens = inputs.generators(gen, &h)?;
            match normalize_generators(&h, &gens) {
                Ok((r, report)) => Ok(inputs.document("normalize", report).with_output(json!({ "r": format::family_to_json(&r) }))),
                Err(e @ gcq_core::Error::GrouplikeViolation(_)) => {
                    let mut report = VerificationReport::new();
                    report.fail("normalize.precondition", &[], Vec::new(), e.to_string(), "group-like families");
                    Ok(inputs.document("normalize", report))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Example {
            kind,
            group,
            loop_,
            grading,
            field,
            n,
            q,
            out,
            ore_out,
        } => example(*kind, group, loop_, grading, field, *n, q, out, ore_out),
    }
}

#[derive(Default)]
struct Inputs {
    digests: Vec<report::InputDigest>,
}

impl Inputs {
    fn load(&mut self, path: &Path) -> Result<(String, Value), CliError> {
        let (bytes, value) = format::read_json(path)?;
        let name = path.display().to_string();
        self.digests.push(report::InputDigest::of(&name, &bytes));
        Ok((name, value))
    }

    fn hcq(&mut self, path: &Path) -> Result<GCHopfCoquasigroup, CliError> {
        let (name, v) = self.load(path)?;
        format::parse_hcq(&name, &v).map_err(|e| e.in_file(&name))
    }

    fn ore(&mut self, path: &Path, h: &GCHopfCoquasigroup) -> Result<OreDatum, CliError> {
        let (name, v) = self.load(path)?;
        let datum = format::parse_ore(&name, &v, h).map_err(|e| e.in_file(&name))?;
        datum.check_shapes(h).map_err(|e| CliError::from(e).in_file(&name))?;
        Ok(datum)
    }

    fn iso(
        &mut self,
        path: &Path,
        h: &GCHopfCoquasigroup,
        h2: &GCHopfCoquasigroup,
    ) -> Result<gcq_core::constructions::IsoDatum, CliError> {
        let (name, v) = self.load(path)?;
        format::parse_iso(&name, &v, h, h2).map_err(|e| e.in_file(&name))
    }

    fn generators(
        &mut self,
        path: &Path,
        h: &GCHopfCoquasigroup,
    ) -> Result<gcq_core::ore::UnnormalizedGenerators, CliError> {
        let (name, v) = self.load(path)?;
        format::parse_generators(&name, &v, h).map_err(|e| e.in_file(&name))
    }

    fn document(self, command: &str, report: VerificationReport) -> ReportDocument {
        ReportDocument::new(command, self.digests, report)
    }
}

fn coassociativity_check(h: &GCHopfCoquasigroup) -> Check {
    let (witness, note, grades, basis) = match h.coassociativity_witness() {
        Coassociativity::Coassociative => (None, "coassociative".to_string(), Vec::new(), Vec::new()),
        Coassociativity::Witness(w) => (
            Some(Witness {
                left: w.left,
                right: w.right,
            }),
            "not coassociative".to_string(),
            w.grades.to_vec(),
            vec![w.basis],
        ),
    };
    Check {
        id: "coassociativity".into(),
        grades,
        basis,
        verdict: Verdict::Info,
        witness,
        note: Some(note),
    }
}

/// Condition and base reports; the extension is built when they pass or
/// when forced.
fn build_checked(
    h: &GCHopfCoquasigroup,
    datum: &OreDatum,
    force: bool,
    prefix: Option<&str>,
) -> Result<(Option<OreExtension>, VerificationReport), CliError> {
    let mut report = check_ore_conditions(h, datum)?;
    let mut base = h.verify_structure();
    base.extend(h.verify_coquasigroup());
    report.extend(base.prefixed("base"));
    let ext = if report.all_passed() || force {
        Some(build_extension(h, datum, force)?)
    } else {
        report.info("build", &[], "extension not built; rerun with --force");
        None
    };
    if let Some(p) = prefix {
        report = report.prefixed(p);
    }
    Ok((ext, report))
}

fn skew_primitive(ext: &OreExtension) -> VerificationReport {
    match ext.check_skew_primitive() {
        Ok(r) => r,
        Err(e) => {
            let mut r = VerificationReport::new();
            r.fail("skew_primitive", &[], vec!["r".into()], e.to_string(), "invertible r");
            r
        }
    }
}

/// `cN`, `s3`, `trivial`, or a path to a group JSON file.
fn group_by_name(name: &str) -> Result<GroupTable, CliError> {
    let lower = name.to_ascii_lowercase();
    if lower == "s3" {
        return Ok(GroupTable::s3());
    }
    if lower == "trivial" {
        return Ok(GroupTable::trivial());
    }
    if let Some(n) = lower.strip_prefix('c').and_then(|n| n.parse::<usize>().ok()) {
        if n == 0 {
            return Err(CliError::Usage("cyclic order must be positive".into()));
        }
        return Ok(GroupTable::cyclic(n));
    }
    if name.ends_with(".json") {
        let (_, v) = format::read_json(Path::new(name))?;
        return format::parse_group_doc(name, &v).map_err(|e| e.in_file(name));
    }
    Err(CliError::Usage(format!("unknown group {name:?}; expected cN, s3, trivial or a .json file")))
}

/// `moufang12`, a group name, or a path to a loop JSON file.
fn loop_by_name(name: &str) -> Result<LoopTable, CliError> {
    if name.eq_ignore_ascii_case("moufang12") {
        return Ok(LoopTable::moufang12());
    }
    if name.ends_with(".json") {
        let (_, v) = format::read_json(Path::new(name))?;
        return format::parse_loop(name, &v).map_err(|e| e.in_file(name));
    }
    group_by_name(name).map(|g| LoopTable::from_group(&g))
}

fn required<'a>(value: &'a Option<String>, flag: &str, kind: &str) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("--kind {kind} needs --{flag}")))
}

/// The base named by `--group` (group algebra) or `--loop` (function algebra).
fn base_instance(group: &Option<String>, loop_: &Option<String>, field: Field) -> Result<GCHopfCoquasigroup, CliError> {
    match (group, loop_) {
        (Some(g), None) => Ok(group_algebra_hcq(&group_by_name(g)?, field)),
        (None, Some(l)) => Ok(loop_function_hcq(&loop_by_name(l)?, field)?),
        _ => Err(CliError::Usage("give exactly one of --group and --loop".into())),
    }
}

fn write_file(path: &Path, v: &Value) -> Result<(), CliError> {
    std::fs::write(path, format::to_pretty(v)).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

#[allow(clippy::too_many_arguments)]
fn example(
    kind: ExampleKind,
    group: &Option<String>,
    loop_: &Option<String>,
    grading: &Option<String>,
    field: &str,
    n: Option<usize>,
    q: &Option<String>,
    out: &Path,
    ore_out: &Option<PathBuf>,
) -> Result<ReportDocument, CliError> {
    let field: Field = field.parse()?;
    let mut written = vec![out.display().to_string()];
    let h = match kind {
        ExampleKind::GroupAlgebra => group_algebra_hcq(&group_by_name(required(group, "group", "group-algebra")?)?, field),
        ExampleKind::LoopFunction => loop_function_hcq(&loop_by_name(required(loop_, "loop", "loop-function")?)?, field)?,
        ExampleKind::Mirror => {
            let base = base_instance(group, loop_, field)?;
            mirror_construction(&base, &group_by_name(required(grading, "grading", "mirror")?)?)?
        }
        ExampleKind::Dualize => {
            let l = match (group, loop_) {
                (Some(g), None) => LoopTable::from_group(&group_by_name(g)?),
                (None, Some(l)) => loop_by_name(l)?,
                _ => return Err(CliError::Usage("give exactly one of --group and --loop".into())),
            };
            dualize(&loop_algebra_hq(&l, field))?
        }
        ExampleKind::Taft => {
            let n = n.ok_or_else(|| CliError::Usage("--kind taft needs --n".into()))?;
            if n == 0 {
                return Err(CliError::Usage("--n must be positive".into()));
            }
            let q = field.parse_scalar(required(q, "q", "taft")?)?;
            let (h, datum) = taft_example(n, q);
            let ore_path = ore_out.clone().unwrap_or_else(|| default_ore_path(out));
            write_file(&ore_path, &format::ore_json(&datum))?;
            written.push(ore_path.display().to_string());
            h
        }
    };
    write_file(out, &format::hcq_json(&h))?;
    Ok(ReportDocument::new("example", Vec::new(), VerificationReport::new()).with_output(json!({ "written": written })))
}

fn default_ore_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "example".into());
    out.with_file_name(format!("{stem}.ore.json"))
}
