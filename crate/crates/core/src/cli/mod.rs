//! The `modreg` command line: `check` for property reports, `verify` for
//! theorem checks and catalog sweeps.
//!
//! Exit codes: 0 success, 1 a theorem verdict failed, 2 bad input, 3 a
//! resource cap was exceeded.

pub mod description;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::Error;
use crate::limits::Limits;
use crate::module::build_module_with;
use crate::props::{evaluate_ring_property, ModProp, ModuleAnalysis, RingProp};
use crate::ring::{build_ring_with, RingDescription};
use crate::theorems::{
    generate_catalog, sweep, theorem, theorem_ids, verify_theorem, CatalogRing, CatalogSpec, Instance,
    InstanceCatalog, Outcome, Reproduction, SweepReport, TheoremVerdict,
};
use description::{load_any, load_module, load_ring, DescriptionError, ModuleSource, RingSource, Source};
use report::{InputInfo, PropertyLine};

pub const EXIT_OK: i32 = 0;
pub const EXIT_THEOREM_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "modreg", version, about = "Decide properties of finite rings and modules and check theorems about them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate named properties of a ring or a module.
    Check {
        #[command(subcommand)]
        target: CheckTarget,
    },
    /// Check theorems on one instance or sweep a catalog.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum CheckTarget {
    /// Properties of a ring description file.
    Ring {
        file: PathBuf,
        #[command(flatten)]
        opts: CheckOpts,
    },
    /// Properties of a module description file.
    Module {
        /// Ring file; overrides the ring named inside the module file.
        #[arg(long)]
        ring: Option<PathBuf>,
        file: PathBuf,
        #[command(flatten)]
        opts: CheckOpts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct LimitOpts {
    /// Largest ring or module that may be enumerated.
    #[arg(long, value_name = "N")]
    limit_elements: Option<usize>,
    /// Largest submodule lattice that may be enumerated.
    #[arg(long, value_name = "N")]
    limit_submodules: Option<usize>,
}

impl LimitOpts {
    fn resolve(&self) -> Result<Limits, Failure> {
        let mut l = Limits::from_env().map_err(|e| Failure::Input(format!("MODREG_LIMITS: {e}")))?;
        if let Some(n) = self.limit_elements {
            l.max_elements = n;
        }
        if let Some(n) = self.limit_submodules {
            l.max_submodules = n;
        }
        Ok(l)
    }
}

#[derive(Debug, Args)]
struct CheckOpts {
    /// Comma-separated property names.
    #[arg(long, value_name = "CSV", conflicts_with = "all")]
    properties: Option<String>,
    /// Every property (the default).
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    limits: LimitOpts,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct VerifyArgs {
    #[command(subcommand)]
    sweep: Option<VerifyCommand>,
    /// Theorem id, or `all`.
    #[arg(long, value_name = "ID")]
    theorem: Option<String>,
    #[arg(long, value_name = "FILE")]
    ring: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    module: Option<PathBuf>,
    /// Replay a reproduction file written by a failing sweep.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["theorem", "ring", "module"])]
    repro: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    limits: LimitOpts,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Run theorems over every instance of a catalog.
    Sweep {
        /// `default`, or a directory of `.ring` and `.module` files.
        #[arg(long, default_value = "default")]
        catalog: String,
        /// Worker threads; the report does not depend on this.
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        /// Where to write the JSON report; reproduction files go beside it.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Comma-separated theorem ids (default: all).
        #[arg(long, value_name = "CSV")]
        theorems: Option<String>,
        /// Leave timing fields out of the written report.
        #[arg(long)]
        omit_timing: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        limits: LimitOpts,
    },
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Why a command stopped early.
#[derive(Debug)]
enum Failure {
    Input(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Limit(_) => EXIT_RESOURCE_LIMIT,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(m) => Failure::Limit(format!("resource limit exceeded: {m}")),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<DescriptionError> for Failure {
    fn from(e: DescriptionError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Check { target } => cmd_check(target, out),
        Command::Verify(args) => cmd_verify(args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) | Failure::Limit(m) => m,
            };
            let _ = writeln!(err, "error: {msg}");
            f.code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn ring_input(src: &RingSource) -> InputInfo {
    InputInfo {
        role: "ring",
        path: src.path.display().to_string(),
        name: src.name.clone(),
        sha256: src.sha256.clone(),
    }
}

fn module_input(src: &ModuleSource) -> InputInfo {
    InputInfo {
        role: "module",
        path: src.path.display().to_string(),
        name: src.name.clone(),
        sha256: src.sha256.clone(),
    }
}

fn parse_csv<P>(csv: &str, parse: impl Fn(&str) -> Result<P, Error>) -> Result<Vec<P>, Failure> {
    csv.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(s).map_err(Failure::from))
        .collect()
}

/// Picks the ring for a module: an explicit file first, then the module's own.
fn resolve_ring(explicit: Option<&Path>, module: &ModuleSource) -> Result<RingSource, Failure> {
    match (explicit, &module.ring) {
        (Some(p), _) => Ok(load_ring(p)?),
        (None, Some(r)) => Ok(r.clone()),
        (None, None) => Err(Failure::Input(format!(
            "{}: no ring given; pass --ring or add a `ring` key",
            module.path.display()
        ))),
    }
}

fn cmd_check(target: CheckTarget, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let (opts, ring_src, module_src) = match target {
        CheckTarget::Ring { file, opts } => (opts, load_ring(&file)?, None),
        CheckTarget::Module { ring, file, opts } => {
            let m = load_module(&file)?;
            let r = resolve_ring(ring.as_deref(), &m)?;
            (opts, r, Some(m))
        }
    };
    let limits = opts.limits.resolve()?;
    let ring = Arc::new(build_ring_with(&ring_src.description, &limits)?);
    let mut inputs = vec![ring_input(&ring_src)];

    let mut lines = Vec::new();
    let module = match &module_src {
        None => {
            let props = match &opts.properties {
                Some(csv) => parse_csv(csv, str::parse::<RingProp>)?,
                None => RingProp::ALL.to_vec(),
            };
            for p in props {
                lines.push(decide_line(p.name(), evaluate_ring_property(&ring, p, &limits))?);
            }
            None
        }
        Some(msrc) => {
            inputs.push(module_input(msrc));
            let props = match &opts.properties {
                Some(csv) => parse_csv(csv, str::parse::<ModProp>)?,
                None => ModProp::ALL.to_vec(),
            };
            let m = build_module_with(&ring, &msrc.description, &limits)?;
            let analysis = ModuleAnalysis::new(m, limits);
            for p in props {
                if p.requires_commutative() && !ring.is_commutative() {
                    lines.push(PropertyLine::NotApplicable {
                        property: p.name(),
                        reason: "defined over commutative rings only".into(),
                    });
                    continue;
                }
                lines.push(decide_line(p.name(), analysis.evaluate(p))?);
            }
            Some((analysis, msrc.name.as_str()))
        }
    };
    let module_ref = module.as_ref().map(|(a, l)| (a.module(), *l));
    let text = match opts.format {
        Format::Text => {
            let mut s = format!("ring {} (order {})\n", ring_src.name, ring.order());
            if let Some((m, l)) = module_ref {
                s.push_str(&format!("module {l} (order {})\n", m.order()));
            }
            s + &report::property_text(&lines, &ring, module_ref.map(|(m, _)| m))
        }
        Format::Json => report::canonical(&report::check_report(
            &inputs,
            &ring,
            &ring_src.name,
            module_ref,
            &lines,
            start.elapsed().as_micros() as u64,
        )),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn decide_line(name: &'static str, r: crate::error::Result<crate::props::Verdict>) -> Result<PropertyLine, Failure> {
    match r {
        Ok(v) => Ok(PropertyLine::Decided(v)),
        Err(Error::NotCommutative) => Ok(PropertyLine::NotApplicable {
            property: name,
            reason: "defined over commutative rings only".into(),
        }),
        Err(e) => Err(e.into()),
    }
}

fn checked(id: &'static str, inst: &Instance) -> TheoremVerdict {
    verify_theorem(id, inst).unwrap_or_else(|e| TheoremVerdict {
        theorem: id,
        instance: inst.label(),
        clauses: Vec::new(),
        outcome: Outcome::Fail,
        counterexample: Some(format!("evaluation error: {e}")),
        note: None,
        elapsed: Default::default(),
    })
}

fn select_theorems(spec: &str) -> Result<Vec<&'static str>, Failure> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(theorem_ids());
    }
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|id| {
            theorem(id).map(|t| t.id).ok_or_else(|| {
                Failure::Input(format!("unknown theorem '{id}'; valid ids: {}", theorem_ids().join(", ")))
            })
        })
        .collect()
}

fn verdict_exit(verdicts: &[&TheoremVerdict]) -> i32 {
    if verdicts.iter().any(|v| v.outcome == Outcome::Fail) {
        EXIT_THEOREM_FAILED
    } else if verdicts.iter().any(|v| matches!(v.outcome, Outcome::ResourceLimit(_))) {
        EXIT_RESOURCE_LIMIT
    } else {
        EXIT_OK
    }
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(VerifyCommand::Sweep {
        catalog,
        jobs,
        out: out_path,
        theorems,
        omit_timing,
        format,
        limits,
    }) = args.sweep
    {
        let opts = SweepOpts {
            catalog,
            jobs,
            out_path,
            theorems,
            omit_timing,
            format,
        };
        return cmd_sweep(opts, &limits.resolve()?, out, err);
    }
    let start = Instant::now();
    let limits = args.limits.resolve()?;

    let (inputs, ids, inst) = if let Some(path) = &args.repro {
        let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
        let rep = Reproduction::from_toml(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let ids = select_theorems(&rep.theorem)?;
        let inst = match &rep.module {
            Some(m) => Instance::with_module(&rep.ring, m, &limits)?,
            None => Instance::ring(&rep.ring, &limits)?,
        };
        let input = InputInfo {
            role: "reproduction",
            path: path.display().to_string(),
            name: rep.theorem.clone(),
            sha256: description::sha256_hex(text.as_bytes()),
        };
        (vec![input], ids, inst)
    } else {
        let spec = args
            .theorem
            .as_deref()
            .ok_or_else(|| Failure::Input("--theorem is required (an id or `all`)".into()))?;
        let ids = select_theorems(spec)?;
        let module_src = args.module.as_deref().map(load_module).transpose()?;
        let ring_src = match (&args.ring, &module_src) {
            (None, None) => return Err(Failure::Input("--ring is required".into())),
            (r, Some(m)) => resolve_ring(r.as_deref(), m)?,
            (Some(r), None) => load_ring(r)?,
        };
        let mut inputs = vec![ring_input(&ring_src)];
        let inst = match &module_src {
            Some(m) => {
                inputs.push(module_input(m));
                Instance::with_module(&ring_src.description, &m.description, &limits)?
            }
            None => Instance::ring(&ring_src.description, &limits)?,
        };
        (inputs, ids, inst)
    };

    let verdicts: Vec<TheoremVerdict> = ids.iter().map(|id| checked(id, &inst)).collect();
    let text = match args.format {
        Format::Text => verdicts.iter().map(report::theorem_text).collect::<String>(),
        Format::Json => report::canonical(&report::verify_report(
            &inputs,
            &verdicts,
            start.elapsed().as_micros() as u64,
        )),
    };
    emit(out, &text)?;
    Ok(verdict_exit(&verdicts.iter().collect::<Vec<_>>()))
}

struct SweepOpts {
    catalog: String,
    jobs: usize,
    out_path: Option<PathBuf>,
    theorems: Option<String>,
    omit_timing: bool,
    format: Format,
}

/// Reads a catalog directory: rings in filename order, each followed by the
/// modules whose ring matches it (also in filename order).
fn load_catalog_dir(dir: &Path, limits: &Limits) -> Result<(InstanceCatalog, Vec<InputInfo>), Failure> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| io_failure(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|x| x.to_str()), Some("ring" | "module")))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::Input(format!("{}: no .ring or .module files", dir.display())));
    }
    let mut inputs = Vec::new();
    let mut rings: Vec<RingSource> = Vec::new();
    let mut modules: Vec<ModuleSource> = Vec::new();
    for f in &files {
        match load_any(f)? {
            Source::Ring(r) => {
                inputs.push(ring_input(&r));
                rings.push(r);
            }
            Source::Module(m) => {
                inputs.push(module_input(&m));
                modules.push(m);
            }
        }
    }
    let mut order: Vec<RingDescription> = Vec::new();
    let mut grouped: BTreeMap<usize, Vec<&ModuleSource>> = BTreeMap::new();
    for r in &rings {
        if !order.contains(&r.description) {
            order.push(r.description.clone());
        }
    }
    for m in &modules {
        let r = m.ring.as_ref().ok_or_else(|| {
            Failure::Input(format!("{}: catalog modules must name their ring", m.path.display()))
        })?;
        let idx = match order.iter().position(|d| *d == r.description) {
            Some(i) => i,
            None => {
                order.push(r.description.clone());
                order.len() - 1
            }
        };
        grouped.entry(idx).or_default().push(m);
    }
    let mut catalog = InstanceCatalog::default();
    for (i, desc) in order.into_iter().enumerate() {
        let ring = Arc::new(build_ring_with(&desc, limits)?);
        let mut mods = Vec::new();
        for m in grouped.remove(&i).unwrap_or_default() {
            let built = build_module_with(&ring, &m.description, limits)
                .map_err(|e| Failure::from(e).with_path(&m.path))?;
            mods.push((m.description.clone(), built));
        }
        catalog.rings.push(CatalogRing {
            description: desc,
            ring,
            modules: mods,
        });
    }
    Ok((catalog, inputs))
}

impl Failure {
    fn with_path(self, path: &Path) -> Self {
        match self {
            Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
            other => other,
        }
    }
}

/// Writes one `<stem>.fail-N.toml` per failing verdict next to `out`.
fn write_reproductions(out: &Path, report: &SweepReport) -> Result<Vec<PathBuf>, Failure> {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    let dir = out.parent().unwrap_or_else(|| Path::new(""));
    let mut written = Vec::new();
    for (n, f) in report.failures().enumerate() {
        let p = dir.join(format!("{stem}.fail-{}.toml", n + 1));
        std::fs::write(&p, f.reproduction.to_toml()).map_err(|e| io_failure(&p, e))?;
        written.push(p);
    }
    Ok(written)
}

fn cmd_sweep(opts: SweepOpts, limits: &Limits, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let ids = match &opts.theorems {
        Some(csv) => select_theorems(csv)?,
        None => Vec::new(),
    };
    let (catalog, inputs) = if opts.catalog == "default" {
        (generate_catalog(&CatalogSpec::default_catalog(), limits)?, Vec::new())
    } else {
        load_catalog_dir(Path::new(&opts.catalog), limits)?
    };
    let report = sweep(&catalog, &ids, opts.jobs, limits)?;
    let mut json: Value = report::sweep_report(&opts.catalog, &inputs, &report, start.elapsed().as_micros() as u64);

    if let Some(path) = &opts.out_path {
        let mut written = json.clone();
        if opts.omit_timing {
            report::strip_timing(&mut written);
        }
        std::fs::write(path, report::canonical(&written)).map_err(|e| io_failure(path, e))?;
        for p in write_reproductions(path, &report)? {
            let _ = writeln!(err, "reproduction written to {}", p.display());
        }
    } else if report.failures().next().is_some() {
        let _ = writeln!(err, "note: pass --out to write reproduction files for failures");
    }

    let text = match opts.format {
        Format::Text => report::sweep_text(&opts.catalog, &report),
        Format::Json => {
            if opts.omit_timing {
                report::strip_timing(&mut json);
            }
            report::canonical(&json)
        }
    };
    emit(out, &text)?;
    Ok(verdict_exit(&report.entries.iter().map(|e| &e.verdict).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("modreg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run_args(&["--help"]).0, 0);
        assert_eq!(run_args(&["--version"]).0, 0);
        assert_eq!(run_args(&["check", "--bogus"]).0, 2);
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, _, err) = run_args(&["check", "ring", "/nonexistent/missing.ring"]);
        assert_eq!(code, 2);
        assert!(err.contains("missing.ring"));
    }

    fn fake_verdict(outcome: Outcome) -> TheoremVerdict {
        TheoremVerdict {
            theorem: "THM-WE",
            instance: "zmod(4) :: R".into(),
            clauses: Vec::new(),
            outcome,
            counterexample: Some("forced".into()),
            note: None,
            elapsed: Default::default(),
        }
    }

    #[test]
    fn exit_code_precedence() {
        let pass = fake_verdict(Outcome::Pass);
        let fail = fake_verdict(Outcome::Fail);
        let limit = fake_verdict(Outcome::ResourceLimit("cap".into()));
        assert_eq!(verdict_exit(&[&pass]), EXIT_OK);
        assert_eq!(verdict_exit(&[&pass, &limit]), EXIT_RESOURCE_LIMIT);
        assert_eq!(verdict_exit(&[&limit, &fail]), EXIT_THEOREM_FAILED);
    }

    #[test]
    fn failures_get_reproduction_files() {
        use crate::theorems::SweepEntry;
        let dir = std::env::temp_dir().join(format!("modreg-repro-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let rep = Reproduction {
            theorem: "THM-WE".into(),
            ring: RingDescription::zmod(4),
            module: Some(crate::module::ModuleDescription::Regular),
        };
        let report = SweepReport {
            entries: vec![
                SweepEntry { verdict: fake_verdict(Outcome::Pass), reproduction: rep.clone() },
                SweepEntry { verdict: fake_verdict(Outcome::Fail), reproduction: rep.clone() },
            ],
        };
        let files = write_reproductions(&dir.join("report.json"), &report).unwrap();
        assert_eq!(files, vec![dir.join("report.fail-1.toml")]);
        let back = Reproduction::from_toml(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
        assert_eq!(back, rep);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn unknown_theorem_lists_ids() {
        let (code, _, err) = run_args(&["verify", "--theorem", "NOPE", "--ring", "x.ring"]);
        assert_eq!(code, 2);
        assert!(err.contains("THM-WE"));
    }
}
