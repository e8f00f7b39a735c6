//! Command-line workbench: generate planted instances, apply reductions,
//! run exact oracles, execute pipelines, estimate success rates, and
//! reformat reports. Exit codes: 0 ok, 2 validation error, 3 budget
//! exceeded, 4 infeasible at strict scale.

use clap::{Args, Parser, Subcommand};
use gaplab::oracles::DEFAULT_BUDGET;
use gaplab::pipeline::{
    apply_stage, certify_instance, derive_seed, emit_report, estimate_success, run_pipeline,
    PipelineSpec, ReportFormat, RunReport, StageSpec,
};
use gaplab::problems::{gen_planted, GapInstance, PlantSpec};
use gaplab::{Error, Result};
use std::fs;
use std::io::Read;

const BUDGET_ENV: &str = "GAPLAB_BUDGET";

#[derive(Parser)]
#[command(name = "gaplab", about = "parameterized hardness reduction workbench")]
struct Cli {
    /// JSON config file mirroring the flags (budget, seed, format); explicit
    /// flags win
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(serde::Deserialize, Default)]
struct Config {
    budget: Option<u64>,
    seed: Option<u64>,
    format: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a planted instance
    Gen {
        /// instance kind: bsmd | lds | mld | mdp | nvp | svp
        #[arg(long)]
        kind: String,
        #[arg(long)]
        seed: Option<u64>,
        /// kind-specific parameters as a JSON object (see PlantSpec fields)
        #[arg(long, default_value = "{}")]
        params: String,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Apply one reduction to an instance
    Reduce {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        seed: Option<u64>,
        /// stage parameters as a JSON object (e.g. {"gamma_num":3} or
        /// {"eta":2,"relaxed":{"h":15,"n_g":1000000}})
        #[arg(long, default_value = "{}")]
        params: String,
        /// write the reduction trace here (JSON)
        #[arg(long)]
        trace: Option<String>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run the exact oracle for an instance
    Solve {
        /// oracle name; defaults to the instance's own kind
        #[arg(long)]
        oracle: Option<String>,
        /// objective bound; defaults to the instance parameter k
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Execute a pipeline spec end to end
    Pipeline {
        /// pipeline spec file (JSON)
        #[arg(long)]
        spec: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        format: Option<String>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Estimate the success rate of one pipeline stage
    Estimate {
        #[arg(long)]
        spec: String,
        /// zero-based stage index
        #[arg(long)]
        stage: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Re-emit a JSON run report in another format
    Report {
        #[arg(long)]
        format: Option<String>,
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Args)]
struct IoArgs {
    /// input file ("-" or absent = stdin where input is required)
    #[arg(long, short = 'i')]
    input: Option<String>,
    /// output file (absent = stdout)
    #[arg(long, short = 'o')]
    output: Option<String>,
}

impl IoArgs {
    fn read(&self) -> Result<String> {
        match self.input.as_deref() {
            Some("-") | None => {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf)?;
                Ok(buf)
            }
            Some(path) => Ok(fs::read_to_string(path)?),
        }
    }

    fn write(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => fs::write(path, text)?,
            None => println!("{}", text.trim_end()),
        }
        Ok(())
    }
}

fn load_config(path: &Option<String>) -> Result<Config> {
    match path {
        Some(p) => Ok(serde_json::from_str(&fs::read_to_string(p)?)?),
        None => Ok(Config::default()),
    }
}

fn resolve_budget(flag: Option<u64>, cfg: &Config) -> u64 {
    flag.or(cfg.budget)
        .or_else(|| {
            std::env::var(BUDGET_ENV)
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_BUDGET)
}

fn resolve_seed(flag: Option<u64>, cfg: &Config) -> u64 {
    flag.or(cfg.seed).unwrap_or(0)
}

fn resolve_format(flag: Option<String>, cfg: &Config) -> Result<ReportFormat> {
    flag.or_else(|| cfg.format.clone())
        .unwrap_or_else(|| "json".into())
        .parse()
}

/// Build a PlantSpec from a kind name plus a JSON parameter object.
fn plant_spec(kind: &str, params: &str) -> Result<PlantSpec> {
    let mut obj: serde_json::Map<String, serde_json::Value> = serde_json::from_str(params)?;
    obj.insert("kind".into(), serde_json::Value::String(kind.into()));
    Ok(serde_json::from_value(serde_json::Value::Object(obj))?)
}

/// Build a StageSpec from the (from, to) pair plus a JSON parameter object.
fn stage_spec(from: &str, to: &str, params: &str) -> Result<StageSpec> {
    let op = match (from, to) {
        ("bsmd", "lds") => "bsmd_to_lds",
        ("lds", "colored_lds") => "lds_color",
        ("colored_lds", "mld") => "lds_to_mld",
        ("colored_lds", "mld_simple") => "lds_to_mld_simple",
        ("mld", "snc") => "mld_to_snc",
        ("mld", "odd_set") => "mld_to_oddset",
        ("snc", "mdp") => "snc_to_mdp",
        ("mdp", "mdp") => "mdp_tensor",
        ("mld", "nvp") => "mld_to_nvp",
        ("nvp", "svp") => "nvp_to_svp",
        _ => {
            return Err(Error::validation(format!(
                "no reduction from {from} to {to}"
            )))
        }
    };
    let mut obj: serde_json::Map<String, serde_json::Value> = serde_json::from_str(params)?;
    obj.insert("op".into(), serde_json::Value::String(op.into()));
    Ok(serde_json::from_value(serde_json::Value::Object(obj))?)
}

fn run(cli: Cli) -> Result<()> {
    let cfg = load_config(&cli.config)?;
    match cli.cmd {
        Cmd::Gen { kind, seed, params, io } => {
            let spec = plant_spec(&kind, &params)?;
            let (inst, _) = gen_planted(&spec, resolve_seed(seed, &cfg))?;
            io.write(&gaplab::problems::serialize(&inst)?)
        }
        Cmd::Reduce { from, to, seed, params, trace, io } => {
            let stage = stage_spec(&from, &to, &params)?;
            let inst = gaplab::problems::deserialize(&io.read()?)?;
            if inst.kind() != from {
                return Err(Error::validation(format!(
                    "input is a {} instance, not {from}",
                    inst.kind()
                )));
            }
            let seed = derive_seed(resolve_seed(seed, &cfg), 1);
            let (out, tr) = apply_stage(&stage, &inst, seed)?;
            if let Some(path) = trace {
                fs::write(path, serde_json::to_string(&tr)?)?;
            }
            io.write(&gaplab::problems::serialize(&out)?)
        }
        Cmd::Solve { oracle, bound, budget, io } => {
            let mut inst = gaplab::problems::deserialize(&io.read()?)?;
            if let Some(name) = oracle {
                if inst.kind() != name {
                    return Err(Error::validation(format!(
                        "input is a {} instance, not {name}",
                        inst.kind()
                    )));
                }
            }
            if let Some(b) = bound {
                set_bound(&mut inst, b)?;
            }
            let verdict = certify_instance(&inst, resolve_budget(budget, &cfg))?;
            io.write(&serde_json::to_string(&verdict)?)
        }
        Cmd::Pipeline { spec, seed, format, io } => {
            let spec: PipelineSpec = serde_json::from_str(&fs::read_to_string(spec)?)?;
            let report = run_pipeline(&spec, resolve_seed(seed, &cfg))?;
            io.write(&emit_report(&report, resolve_format(format, &cfg)?)?)
        }
        Cmd::Estimate { spec, stage, trials, seed, io } => {
            let spec: PipelineSpec = serde_json::from_str(&fs::read_to_string(spec)?)?;
            let est = estimate_success(&spec, stage, trials, resolve_seed(seed, &cfg))?;
            io.write(&serde_json::to_string(&est)?)
        }
        Cmd::Report { format, io } => {
            let report: RunReport = serde_json::from_str(&io.read()?)?;
            io.write(&emit_report(&report, resolve_format(format, &cfg)?)?)
        }
    }
}

/// Override the objective bound of an instance for a `solve` query.
fn set_bound(inst: &mut GapInstance, b: u64) -> Result<()> {
    match inst {
        GapInstance::Bsmd(_) => {
            return Err(Error::validation(
                "bsmd bound is fixed by (s, h); omit --bound",
            ))
        }
        GapInstance::Lds(i) => i.k = b,
        GapInstance::ColoredLds(i) => i.k = b,
        GapInstance::Mld(i) => i.k = b,
        GapInstance::Snc(i) => i.k = b,
        GapInstance::Mdp(i) => i.k = b,
        GapInstance::OddSet(i) => i.k = b,
        GapInstance::Nvp(i) => i.k = b,
        GapInstance::Svp(i) => {
            i.k = num_rational::BigRational::from_integer(num_bigint::BigInt::from(b))
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
