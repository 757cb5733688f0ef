use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng as _;
use serde_json::json;

use walshdj_core::boolfn::tt;
use walshdj_core::djsim::{self, DEFAULT_SIM_CAP};
use walshdj_core::fngen::{self, NoisyLinearSpec};
use walshdj_core::lab::{self, ExperimentConfig};
use walshdj_core::spectral::{self, mask_to_binary};
use walshdj_core::{BooleanFunction, Error, DEFAULT_N_MAX};

use crate::{Command, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Invariant(m) => f.write_str(m),
        }
    }
}

/// Errors from flag values are usage errors; parse failures and broken
/// invariants keep their own codes.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => CliError::Invariant(e.to_string()),
            Error::Parse { .. } => CliError::Input(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn unsupported(format: Format, command: &str) -> CliError {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
    };
    CliError::Usage(format!("{command} has no {name} output"))
}

/// Everything that goes wrong while reading an input file is an input
/// error, including a variable count over the cap.
fn load(path: &Path, cap: Option<usize>) -> Result<BooleanFunction> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    tt::parse_with_cap(&text, cap.unwrap_or(DEFAULT_N_MAX))
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

/// The given seed, or a fresh one that is reported on stderr so the run
/// can be repeated.
fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let seed = rand::rng().random();
        eprintln!("walshdj: seed {seed}");
        seed
    })
}

pub fn run(command: Command) -> Result<()> {
    let out = match command {
        Command::Analyze { input, format, cap } => analyze(&load(&input, cap)?, format)?,
        Command::Walsh { input, format, cap } => walsh(&load(&input, cap)?, format),
        Command::Anf { input, format, cap } => anf(&load(&input, cap)?, format)?,
        Command::Dj { input, format, cap } => dj(&load(&input, None)?, format, cap)?,
        Command::Sample {
            input,
            count,
            seed,
            format,
            cap,
        } => sample(&load(&input, None)?, count, seed, format, cap)?,
        Command::Generate {
            kind,
            n,
            seed,
            omega,
            constant,
            force_worst_case,
            out,
        } => {
            let f = generate(&kind, n, seed, omega, constant, force_worst_case)?;
            let text = tt::render(&f);
            match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    String::new()
                }
                None => text,
            }
        }
        Command::Experiment {
            problem,
            n,
            trials,
            seed,
            force_worst_case,
            out,
            format,
        } => {
            let config = ExperimentConfig {
                problem,
                n,
                trials: trials.unwrap_or(problem.default_trials()),
                seed: resolve_seed(seed),
                worst_case: force_worst_case,
            };
            experiment(&config, out.as_deref(), format)?
        }
        Command::Count { n, format } => count(n, format)?,
    };
    print!("{out}");
    Ok(())
}

fn analyze(f: &BooleanFunction, format: Format) -> Result<String> {
    let report = spectral::analyze(f);
    match format {
        Format::Json => Ok(pretty(&report)),
        Format::Text => Ok(report.to_text()),
        Format::Csv => Err(unsupported(format, "analyze")),
    }
}

fn walsh(f: &BooleanFunction, format: Format) -> String {
    let s = spectral::walsh_spectrum(f);
    match format {
        Format::Text => s.to_dump(),
        Format::Json => pretty(&json!({ "n": s.n(), "w": s.values() })),
        Format::Csv => {
            let mut out = String::from("omega,w\n");
            for (z, v) in s.values().iter().enumerate() {
                out.push_str(&format!("{},{v}\n", mask_to_binary(z as u64, s.n())));
            }
            out
        }
    }
}

fn anf(f: &BooleanFunction, format: Format) -> Result<String> {
    let p = f.to_anf();
    match format {
        Format::Text => Ok(format!("{p}\ndegree: {}\n", p.degree())),
        Format::Json => {
            let monomials: Vec<String> = p
                .monomials()
                .iter()
                .map(|&m| mask_to_binary(m, f.n()))
                .collect();
            Ok(pretty(&json!({
                "n": f.n(),
                "degree": p.degree(),
                "anf": p.to_string(),
                "monomials": monomials,
            })))
        }
        Format::Csv => Err(unsupported(format, "anf")),
    }
}

fn dj(f: &BooleanFunction, format: Format, cap: Option<usize>) -> Result<String> {
    let d = djsim::dj_distribution_with_cap(f, cap.unwrap_or(DEFAULT_SIM_CAP))?;
    Ok(match format {
        Format::Text => d.to_dump(),
        Format::Json => pretty(&json!({
            "n": d.n(),
            "denominator": d.denominator(),
            "weights": d.weights(),
        })),
        Format::Csv => {
            let mut out = String::from("z,weight,probability\n");
            for z in 0..d.weights().len() as u64 {
                out.push_str(&format!(
                    "{},{},{}\n",
                    mask_to_binary(z, d.n()),
                    d.weight(z),
                    d.probability(z)
                ));
            }
            out
        }
    })
}

fn sample(
    f: &BooleanFunction,
    count: usize,
    seed: Option<u64>,
    format: Format,
    cap: Option<usize>,
) -> Result<String> {
    let d = djsim::dj_distribution_with_cap(f, cap.unwrap_or(DEFAULT_SIM_CAP))?;
    let seed = resolve_seed(seed);
    let samples = djsim::dj_sample(&d, seed, count);
    Ok(match format {
        Format::Text => samples
            .iter()
            .map(|&z| mask_to_binary(z, f.n()) + "\n")
            .collect(),
        Format::Json => pretty(&json!({ "n": f.n(), "seed": seed, "samples": samples })),
        Format::Csv => {
            let mut out = String::from("sample,z\n");
            for (i, &z) in samples.iter().enumerate() {
                out.push_str(&format!("{i},{}\n", mask_to_binary(z, f.n())));
            }
            out
        }
    })
}

pub const GENERATORS: [&str; 7] = [
    "linear",
    "affine",
    "random",
    "bent-mm",
    "plateaued",
    "noisy-linear:Ln",
    "noisy-linear:LnEps",
];

fn generate(
    kind: &str,
    n: usize,
    seed: Option<u64>,
    omega: Option<u64>,
    constant: bool,
    worst_case: bool,
) -> Result<BooleanFunction> {
    if !GENERATORS.contains(&kind) {
        return Err(CliError::Usage(format!(
            "unknown generator '{kind}', expected one of {}",
            GENERATORS.join(", ")
        )));
    }
    if n == 0 || n > DEFAULT_N_MAX {
        return Err(Error::Capacity {
            n,
            cap: DEFAULT_N_MAX,
        }
        .into());
    }
    let deterministic = matches!(kind, "linear" | "affine") && omega.is_some();
    let mut rng = walshdj_core::rng::seeded(if deterministic { 0 } else { resolve_seed(seed) });
    let mask =
        |rng: &mut walshdj_core::rng::Rng| omega.unwrap_or_else(|| rng.random_range(0..1u64 << n));
    let f = match kind {
        "linear" => fngen::linear(n, mask(&mut rng))?,
        "affine" => fngen::affine(n, mask(&mut rng), constant)?,
        "random" => fngen::random_function_with(n, &mut rng)?,
        "bent-mm" => fngen::random_bent_mm(n, &mut rng)?,
        "plateaued" => fngen::random_plateaued(n, &mut rng)?,
        _ => {
            let base = mask(&mut rng);
            let spec = if kind == "noisy-linear:Ln" {
                NoisyLinearSpec::ln(n, base)?
            } else {
                NoisyLinearSpec::ln_eps(n, base)?
            };
            fngen::noisy_linear_with(&spec, &mut rng, worst_case)?.function
        }
    };
    Ok(f)
}

fn experiment(config: &ExperimentConfig, out: Option<&Path>, format: Format) -> Result<String> {
    let exp = lab::run(config)?;
    let Some(path) = out else {
        return Ok(match format {
            Format::Json => exp.to_json(),
            Format::Csv => exp.to_csv(),
            Format::Text => summary(&exp.report),
        });
    };
    let csv_path: PathBuf = path.with_extension("csv");
    if csv_path == path {
        return Err(CliError::Usage(format!(
            "--out {} would collide with the per-trial CSV; use a .json path",
            path.display()
        )));
    }
    write_file(path, &exp.to_json())?;
    write_file(&csv_path, &exp.to_csv())?;
    Ok(if format == Format::Text {
        summary(&exp.report)
    } else {
        String::new()
    })
}

fn summary(r: &walshdj_core::ExperimentReport) -> String {
    let bound = r
        .paper_bound
        .map_or_else(|| "none".to_string(), |b| b.to_string());
    format!(
        "problem: {}\nn: {}\ntrials: {}\nsuccesses: {}\nempirical_rate: {}\nexact_rate_min: {}\nbound: {bound}\n\
         seed: {}\nqueries_classical: {}\nqueries_quantum: {}\n",
        r.problem,
        r.n,
        r.trials,
        r.successes,
        r.empirical_rate,
        r.exact_rate_min,
        r.seed,
        r.queries_classical,
        r.queries_quantum,
    )
}

fn count(n: usize, format: Format) -> Result<String> {
    let bounds = fngen::class_size_bounds(n)?;
    let exact = fngen::class_size_ln(n)?.to_string();
    Ok(match format {
        Format::Text => format!(
            "n: {n}\nclass_size: {exact}\nlog2_lower: {}\nlog2_ball: {}\nlog2_exact: {}\nlog2_upper: {}\nentropy_one_eighth: {:.12}\n",
            bounds.log2_lower, bounds.log2_ball, bounds.log2_exact, bounds.log2_upper, bounds.entropy_one_eighth
        ),
        Format::Json => {
            let mut value = serde_json::to_value(&bounds).expect("serialisable");
            value["class_size"] = json!(exact);
            pretty(&value)
        }
        Format::Csv => return Err(unsupported(format, "count")),
    })
}
