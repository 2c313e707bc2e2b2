use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use chern::chern::{
    chern_report, verify_closure_dim2, verify_fundamental_lemma, verify_huneke_dim1,
    verify_lipman, verify_modified_koszul, verify_rees, verify_sally, ChernContext, TheoremReport,
    Verdict,
};
use chern::error::Error;
use chern::filtration::FiltrationKind;
use chern::parse::{parse_job, JobSpec};
use chern::reduction::find_minimal_reduction;
use chern::report;

#[derive(Parser)]
#[command(name = "chern", version, about = "Hilbert coefficients and Chern numbers of ideal filtrations", long_about = None)]
struct Cli {
    /// Emit the JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the job's random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the job's table depth.
    #[arg(long, global = true)]
    max_n: Option<i64>,
    /// Override the job's field characteristic.
    #[arg(long = "char", global = true)]
    characteristic: Option<u64>,
    /// Write the report as `<job>.expected.json`, replacing the sidecar.
    #[arg(long, global = true)]
    bless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert table, finite differences, and fitted coefficients.
    Hilbert { job: PathBuf },
    /// e1 by every applicable route, cross-checked against the fit.
    Chern { job: PathBuf },
    /// Run one theorem verifier against a job.
    Verify {
        /// rees | lipman | huneke-dim1 | sally | fundamental-lemma |
        /// modified-koszul | closure-dim2
        id: String,
        job: PathBuf,
    },
    /// Generators of the integral-closure filtration terms.
    Closure { job: PathBuf },
    /// Search for a minimal reduction of the filtration.
    Reduction { job: PathBuf },
    /// Random m-primary monomial ideals; assert all routes agree.
    Fuzz {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_deg: u16,
    },
}

fn load_job(path: &PathBuf, cli: &Cli) -> Result<JobSpec, Error> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut spec = parse_job(&bytes)?;
    if let Some(p) = cli.characteristic {
        spec.doc.field = Some(chern::parse::FieldSection { characteristic: p });
        spec = chern::parse::validate_job(spec.doc)?;
    }
    if let Some(seed) = cli.seed {
        spec.seed = seed;
    }
    if let Some(max_n) = cli.max_n {
        if max_n < 1 {
            return Err(Error::InvalidField("max_n must be positive".into()));
        }
        spec.max_n = max_n;
    }
    Ok(spec)
}

/// 0: success or hypothesis-not-met; 1: mathematical inconsistency (an
/// engine bug) or no stabilization; 2: usage or input error.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NoStabilization => 1,
        _ => 2,
    }
}

fn emit(
    cli: &Cli,
    job_path: Option<&PathBuf>,
    json: serde_json::Value,
    text: String,
    started: Instant,
) -> Result<(), Error> {
    if cli.bless {
        if let Some(path) = job_path {
            let sidecar = path.with_extension("expected.json");
            let pretty = serde_json::to_string_pretty(&json)
                .map_err(|e| Error::Io(e.to_string()))?;
            std::fs::write(&sidecar, pretty + "\n")
                .map_err(|e| Error::Io(format!("{}: {e}", sidecar.display())))?;
            eprintln!("blessed {}", sidecar.display());
        }
    }
    if cli.json {
        let stamped = report::with_timings(json, started.elapsed().as_millis());
        println!("{}", serde_json::to_string_pretty(&stamped).map_err(|e| Error::Io(e.to_string()))?);
    } else {
        print!("{text}");
    }
    Ok(())
}

fn pick_verifier_input(
    job: &JobSpec,
    ctx: &ChernContext,
) -> Result<Vec<chern::poly::Polynomial>, Error> {
    if let Some(red) = &job.reduction {
        if red.is_empty() {
            return Err(Error::InvalidField("reduction must be nonempty".into()));
        }
        return Ok(red.clone());
    }
    let found = find_minimal_reduction(&ctx.filtration, job.seed, job.max_n)?;
    Ok(found.gens)
}

fn run_verify(id: &str, job: &JobSpec, ctx: &ChernContext) -> Result<TheoremReport, Error> {
    match id {
        "closure-dim2" => verify_closure_dim2(ctx),
        _ => {
            let gens = pick_verifier_input(job, ctx)?;
            match id {
                "rees" => verify_rees(ctx, &gens),
                "lipman" => verify_lipman(ctx, &gens[0]),
                "huneke-dim1" => verify_huneke_dim1(ctx, &gens[0]),
                "sally" => verify_sally(ctx, &gens[0]),
                "fundamental-lemma" => verify_fundamental_lemma(ctx, &gens),
                "modified-koszul" => verify_modified_koszul(ctx, &gens),
                other => Err(Error::InvalidField(format!("unknown theorem id `{other}`"))),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let started = Instant::now();
    match &cli.command {
        Command::Hilbert { job: path } => {
            let job = load_job(path, cli)?;
            let ctx = ChernContext::new(job.filtration()?, job.max_n)?;
            let json = report::hilbert_json(&job, &ctx.table, &ctx.coeffs);
            let text = report::hilbert_text(&ctx.table, &ctx.coeffs);
            emit(cli, Some(path), json, text, started)?;
            Ok(0)
        }
        Command::Chern { job: path } => {
            let job = load_job(path, cli)?;
            let ctx = ChernContext::new(job.filtration()?, job.max_n)?;
            let rep = chern_report(&ctx, job.reduction.clone(), job.seed)?;
            let json = report::chern_json(&job, &ctx, &rep);
            let text = report::chern_text(&job, &ctx, &rep);
            emit(cli, Some(path), json, text, started)?;
            Ok(if rep.consistent { 0 } else { 1 })
        }
        Command::Verify { id, job: path } => {
            let job = load_job(path, cli)?;
            let ctx = ChernContext::new(job.filtration()?, job.max_n)?;
            let rep = run_verify(id, &job, &ctx)?;
            let json = report::verify_json(&job, &rep);
            let text = report::verify_text(&rep);
            emit(cli, Some(path), json, text, started)?;
            Ok(if rep.verdict == Verdict::Violation { 1 } else { 0 })
        }
        Command::Closure { job: path } => {
            let job = load_job(path, cli)?;
            if job.kind != FiltrationKind::NewtonClosure {
                return Err(Error::ClosureUnsupported(
                    "job must declare filtration \"newton-closure\"".into(),
                ));
            }
            let f = job.filtration()?;
            let mut body = serde_json::Map::new();
            let mut text = String::new();
            let mut terms = Vec::new();
            for n in 1..=job.max_n.min(10) {
                let gens: Vec<String> = f
                    .term(n)?
                    .lift()
                    .interreduced()?
                    .gens()
                    .iter()
                    .map(|g| g.render(&job.vars))
                    .collect();
                text.push_str(&format!("I_{n} = ({})\n", gens.join(", ")));
                terms.push(serde_json::json!({ "n": n.to_string(), "gens": gens }));
            }
            body.insert("terms".into(), serde_json::Value::Array(terms));
            let json = {
                let mut m = serde_json::Map::new();
                m.insert("schema".into(), serde_json::Value::String(report::SCHEMA_VERSION.into()));
                m.insert("command".into(), serde_json::Value::String("closure".into()));
                m.insert("job".into(), serde_json::to_value(&job.doc).expect("job echo"));
                m.extend(body);
                serde_json::Value::Object(m)
            };
            emit(cli, Some(path), json, text, started)?;
            Ok(0)
        }
        Command::Reduction { job: path } => {
            let job = load_job(path, cli)?;
            let f = job.filtration()?;
            let red = find_minimal_reduction(&f, job.seed, job.max_n)?;
            let gens: Vec<String> = red.gens.iter().map(|g| g.render(&job.vars)).collect();
            let json = serde_json::json!({
                "schema": report::SCHEMA_VERSION,
                "command": "reduction",
                "job": serde_json::to_value(&job.doc).expect("job echo"),
                "seed": job.seed.to_string(),
                "gens": gens,
                "verified_at": red.verified_at.to_string(),
                "window": red.window.to_string(),
            });
            let text = format!(
                "J = ({}), J·I_n = I_(n+1) verified for n in [{}, {}]\n",
                gens.join(", "),
                red.verified_at,
                red.verified_at + red.window
            );
            emit(cli, Some(path), json, text, started)?;
            Ok(0)
        }
        Command::Fuzz { dim, count, max_deg } => {
            let seed = cli.seed.unwrap_or(0);
            let campaign = report::fuzz_campaign(*dim, *count, seed, *max_deg)?;
            let json = report::fuzz_json(&campaign);
            let text = report::fuzz_text(&campaign);
            emit(cli, None, json, text, started)?;
            Ok(if campaign.violations() == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
