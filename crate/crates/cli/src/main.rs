use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use mahler_cli::{catalog, parse_system_file, run_command, CliError, Command, Options, Status};

/// Workbench for linear Mahler systems: classification of transforms,
/// admissibility, gauge transforms, rigorous evaluation, relations among
/// values and multi-system probes.
///
/// Exit status: 0 affirmative or complete, 1 negative with a witness,
/// 2 unknown at the given bounds, 3 input error.
#[derive(Parser, Debug)]
#[command(name = "mahler", version)]
struct Args {
    /// Command, optionally preceded by `check`.
    command: String,
    /// System file, or `catalog:NAME` for a bundled file. After `check`,
    /// the command name.
    file: String,
    /// System file when the command is preceded by `check`.
    #[arg(hide = true)]
    extra: Option<String>,
    /// System name; a comma-separated list for theta and iterate-vectors.
    #[arg(long)]
    system: Option<String>,
    #[arg(long)]
    point: Option<String>,
    /// `[values]` section for relation search.
    #[arg(long)]
    values: Option<String>,
    /// `[relation]` section for lift.
    #[arg(long)]
    relation: Option<String>,
    /// `[purity]` section.
    #[arg(long)]
    purity: Option<String>,
    /// `[probe]` section.
    #[arg(long)]
    probe: Option<String>,
    /// Decimal digits of the requested accuracy.
    #[arg(long)]
    digits: Option<u32>,
    /// Truncation order of series.
    #[arg(long)]
    order: Option<u32>,
    /// Orbit length bound.
    #[arg(long = "k-max")]
    k_max: Option<u64>,
    /// Coefficient bound for relation search.
    #[arg(long)]
    bound: Option<u64>,
    /// Relation degree, lift z-degree bound, purity degree bound or
    /// Kronecker exponent, depending on the command.
    #[arg(long)]
    degree: Option<u32>,
    /// Largest index l for iteration vectors.
    #[arg(long = "l-max")]
    l_max: Option<u64>,
    /// Also write the machine-readable report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn read_file(name: &str) -> Result<String, CliError> {
    if let Some(n) = name.strip_prefix("catalog:") {
        return catalog::get(n).map(str::to_string).ok_or_else(|| CliError::Io(format!("no bundled file `{n}`")));
    }
    std::fs::read_to_string(name).map_err(|e| CliError::Io(format!("{name}: {e}")))
}

fn run(args: Args) -> Result<Status, CliError> {
    let (words, path) = match args.extra {
        Some(p) => (vec![args.command, args.file], p),
        None => (vec![args.command], args.file),
    };
    let cmd = Command::parse(&words)?;
    let file = parse_system_file(&read_file(&path)?)?;
    let opts = Options {
        system: args.system,
        point: args.point,
        values: args.values,
        relation: args.relation,
        purity: args.purity,
        probe: args.probe,
        digits: args.digits,
        order: args.order,
        k_max: args.k_max,
        bound: args.bound,
        degree: args.degree,
        l_max: args.l_max,
    };
    let start = Instant::now();
    let report = run_command(cmd, &file, &opts)?;
    let elapsed = start.elapsed();
    print!("{}", report.to_text());
    println!("  time: {:.3} s", elapsed.as_secs_f64());
    if let Some(p) = args.json {
        std::fs::write(&p, report.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Status::InputError.code() as u8) } else { ExitCode::SUCCESS };
        }
    };
    match run(args) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status().code() as u8)
        }
    }
}
