mod commands;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use commands::*;
use input::{from_value, parse_value, CliError, CliResult};

#[derive(Parser)]
#[command(name = "fitdiv", version, about = "Exact divisor intersection algebra with brute-force verification")]
struct Cli {
    /// Worker threads for per-degree parallelism
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Intersections of two divisors
    #[command(subcommand)]
    Divisor(DivisorCmd),
    /// The universal rings Int_r and Sub_r
    #[command(subcommand)]
    Universal(UniversalCmd),
    /// Relators, bases and invariants of P_k D
    #[command(subcommand)]
    Pkd(PkdCmd),
    /// Exterior powers and the map φ
    #[command(subcommand)]
    Exterior(ExteriorCmd),
    /// Fitting ideals of a presentation
    #[command(subcommand)]
    Fitting(FittingCmd),
    /// Run a job file (TOML or JSON)
    Run {
        #[arg(long)]
        job: PathBuf,
    },
}

#[derive(Subcommand)]
enum DivisorCmd {
    Intersect(PairArgs),
    Resultant(PairArgs),
    Porteous(PorteousArgs),
    Presentations(PairArgs),
}

#[derive(Subcommand)]
enum UniversalCmd {
    VerifyBasis(BasisArgs),
    PiStar(UniversalArgs),
    PsIdentity(UniversalArgs),
    SchurLeading(SchurArgs),
}

#[derive(Subcommand)]
enum PkdCmd {
    Relators(PkdArgs),
    Basis(PkdArgs),
    Invariants(PkdArgs),
    Kernel(PkdArgs),
}

#[derive(Subcommand)]
enum ExteriorCmd {
    CheckCross(CrossArgs),
    Phi(PhiArgs),
    VerifyIso(IsoArgs),
}

#[derive(Subcommand)]
enum FittingCmd {
    Rank(FittingArgs),
    Ideals(FittingArgs),
}

fn empty_object() -> Value {
    json!({})
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JobSpec {
    /// For example `"divisor intersect"`.
    command: String,
    #[serde(default)]
    threads: Option<usize>,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default = "empty_object")]
    args: Value,
}

fn job_group(command: &str, args: Value, origin: &str) -> CliResult<Group> {
    fn parse<T: serde::de::DeserializeOwned>(args: Value, origin: &str) -> CliResult<T> {
        from_value(args, origin, "args")
    }
    Ok(match command {
        "divisor intersect" => Group::Divisor(DivisorCmd::Intersect(parse(args, origin)?)),
        "divisor resultant" => Group::Divisor(DivisorCmd::Resultant(parse(args, origin)?)),
        "divisor porteous" => Group::Divisor(DivisorCmd::Porteous(parse(args, origin)?)),
        "divisor presentations" => Group::Divisor(DivisorCmd::Presentations(parse(args, origin)?)),
        "universal verify-basis" => Group::Universal(UniversalCmd::VerifyBasis(parse(args, origin)?)),
        "universal pi-star" => Group::Universal(UniversalCmd::PiStar(parse(args, origin)?)),
        "universal ps-identity" => Group::Universal(UniversalCmd::PsIdentity(parse(args, origin)?)),
        "universal schur-leading" => Group::Universal(UniversalCmd::SchurLeading(parse(args, origin)?)),
        "pkd relators" => Group::Pkd(PkdCmd::Relators(parse(args, origin)?)),
        "pkd basis" => Group::Pkd(PkdCmd::Basis(parse(args, origin)?)),
        "pkd invariants" => Group::Pkd(PkdCmd::Invariants(parse(args, origin)?)),
        "pkd kernel" => Group::Pkd(PkdCmd::Kernel(parse(args, origin)?)),
        "exterior check-cross" => Group::Exterior(ExteriorCmd::CheckCross(parse(args, origin)?)),
        "exterior phi" => Group::Exterior(ExteriorCmd::Phi(parse(args, origin)?)),
        "exterior verify-iso" => Group::Exterior(ExteriorCmd::VerifyIso(parse(args, origin)?)),
        "fitting rank" => Group::Fitting(FittingCmd::Rank(parse(args, origin)?)),
        "fitting ideals" => Group::Fitting(FittingCmd::Ideals(parse(args, origin)?)),
        other => return Err(CliError::Input(format!("{origin}: at `command`: unknown command `{other}`"))),
    })
}

fn command_name(g: &Group) -> &'static str {
    match g {
        Group::Divisor(DivisorCmd::Intersect(_)) => "divisor intersect",
        Group::Divisor(DivisorCmd::Resultant(_)) => "divisor resultant",
        Group::Divisor(DivisorCmd::Porteous(_)) => "divisor porteous",
        Group::Divisor(DivisorCmd::Presentations(_)) => "divisor presentations",
        Group::Universal(UniversalCmd::VerifyBasis(_)) => "universal verify-basis",
        Group::Universal(UniversalCmd::PiStar(_)) => "universal pi-star",
        Group::Universal(UniversalCmd::PsIdentity(_)) => "universal ps-identity",
        Group::Universal(UniversalCmd::SchurLeading(_)) => "universal schur-leading",
        Group::Pkd(PkdCmd::Relators(_)) => "pkd relators",
        Group::Pkd(PkdCmd::Basis(_)) => "pkd basis",
        Group::Pkd(PkdCmd::Invariants(_)) => "pkd invariants",
        Group::Pkd(PkdCmd::Kernel(_)) => "pkd kernel",
        Group::Exterior(ExteriorCmd::CheckCross(_)) => "exterior check-cross",
        Group::Exterior(ExteriorCmd::Phi(_)) => "exterior phi",
        Group::Exterior(ExteriorCmd::VerifyIso(_)) => "exterior verify-iso",
        Group::Fitting(FittingCmd::Rank(_)) => "fitting rank",
        Group::Fitting(FittingCmd::Ideals(_)) => "fitting ideals",
        Group::Run { .. } => "run",
    }
}

fn execute(ctx: &Ctx, g: &Group) -> CliResult<Outcome> {
    match g {
        Group::Divisor(c) => match c {
            DivisorCmd::Intersect(a) => divisor_intersect(ctx, a),
            DivisorCmd::Resultant(a) => divisor_resultant(ctx, a),
            DivisorCmd::Porteous(a) => divisor_porteous(ctx, a),
            DivisorCmd::Presentations(a) => divisor_presentations(ctx, a),
        },
        Group::Universal(c) => match c {
            UniversalCmd::VerifyBasis(a) => universal_verify_basis(a),
            UniversalCmd::PiStar(a) => universal_pi_star(a),
            UniversalCmd::PsIdentity(a) => universal_ps_identity(a),
            UniversalCmd::SchurLeading(a) => universal_schur_leading(a),
        },
        Group::Pkd(c) => match c {
            PkdCmd::Relators(a) => pkd_relators(ctx, a),
            PkdCmd::Basis(a) => pkd_basis_cmd(ctx, a),
            PkdCmd::Invariants(a) => pkd_invariants(ctx, a),
            PkdCmd::Kernel(a) => pkd_kernel(ctx, a),
        },
        Group::Exterior(c) => match c {
            ExteriorCmd::CheckCross(a) => exterior_check_cross(a),
            ExteriorCmd::Phi(a) => exterior_phi(ctx, a),
            ExteriorCmd::VerifyIso(a) => exterior_verify_iso(ctx, a),
        },
        Group::Fitting(c) => match c {
            FittingCmd::Rank(a) => fitting_rank_cmd(ctx, a),
            FittingCmd::Ideals(a) => fitting_ideals(ctx, a),
        },
        Group::Run { .. } => Err(CliError::Input("jobs cannot run other jobs".into())),
    }
}

struct Plan {
    group: Group,
    ctx: Ctx,
    threads: usize,
    output: Option<PathBuf>,
}

fn plan(cli: Cli) -> CliResult<Plan> {
    match cli.command {
        Group::Run { job } => {
            let origin = job.display().to_string();
            let text = std::fs::read_to_string(&job).map_err(|e| CliError::Input(format!("{origin}: {e}")))?;
            let toml_syntax = job.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"));
            let spec: JobSpec = from_value(parse_value(&text, toml_syntax, &origin)?, &origin, "")?;
            let base = job.parent().map(Path::to_path_buf).unwrap_or_default();
            let group = job_group(&spec.command, spec.args, &origin)?;
            let output = cli.output.or_else(|| spec.output.map(|o| base.join(o)));
            Ok(Plan { group, ctx: Ctx { base }, threads: spec.threads.unwrap_or(cli.threads), output })
        }
        group => Ok(Plan { group, ctx: Ctx { base: PathBuf::new() }, threads: cli.threads, output: cli.output }),
    }
}

fn report(plan: &Plan) -> CliResult<(Value, Option<bool>)> {
    if plan.threads == 0 {
        return Err(CliError::Input("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(plan.threads)
        .build_global()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let start = Instant::now();
    let outcome = execute(&plan.ctx, &plan.group)?;
    let meta = json!({
        "command": command_name(&plan.group),
        "version": env!("CARGO_PKG_VERSION"),
        "threads": plan.threads,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    });
    Ok((json!({"body": outcome.body, "meta": meta}), outcome.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = plan(cli).and_then(|plan| {
        let (doc, passed) = report(&plan)?;
        let text = serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n";
        match &plan.output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        Ok(passed)
    });
    match result {
        Ok(Some(false)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
