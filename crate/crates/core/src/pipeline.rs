//! Seeded experiment orchestration: declarative pipeline specs, per-stage
//! seed derivation, oracle certification at stage boundaries, success-rate
//! estimation, and deterministic report emission.

use crate::error::{Error, Result};
use crate::lattices::{mld_to_nvp, nvp_to_svp, RelaxedScale};
use crate::oracles::{
    bsmd_oracle, lds_oracle, mdp_oracle, mld_oracle, nvp_verdict, snc_oracle, svp_verdict,
    MdpMode, OracleVerdict, DEFAULT_BUDGET,
};
use crate::problems::{gen_planted, GapInstance, MldInstance, PlantSpec};
use crate::reductions::{
    digest_json, lds_color, lds_to_mld, lds_to_mld_simple, mdp_tensor, mld_to_oddset,
    mld_to_snc, ReductionTrace, SncToMdp,
};
use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Stage seeds are derived from the master seed with a splitmix64 step, so
/// stages are decorrelated but fully reproducible.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Where the pipeline's initial instance comes from.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InputSource {
    /// Planted generator, seeded from the master seed (index 0).
    Plant { plant: PlantSpec },
    /// A literal instance.
    Inline { instance: GapInstance },
}

/// Desk-scale overrides for the NVP → SVP stage, JSON-friendly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelaxedScaleSpec {
    pub h: u64,
    pub n_g: u64,
    #[serde(default)]
    pub hit_budget: Option<u64>,
}

/// One pipeline stage: the reduction to apply plus its parameters.
/// Randomized stages (snc_to_mdp, nvp_to_svp) draw their seed from the
/// master seed by stage index.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum StageSpec {
    BsmdToLds { q: u64 },
    LdsColor {
        #[serde(default)]
        budget: Option<u64>,
    },
    LdsToMldSimple,
    LdsToMld {
        #[serde(default)]
        budget: Option<u64>,
    },
    MldToSnc {
        gamma_num: u64,
        #[serde(default = "one")]
        gamma_den: u64,
    },
    MldToOddset {
        gamma_num: u64,
        #[serde(default = "one")]
        gamma_den: u64,
        gamma_prime_num: u64,
        #[serde(default = "one")]
        gamma_prime_den: u64,
    },
    SncToMdp {
        #[serde(default)]
        toy_h: Option<u64>,
    },
    MdpTensor {
        #[serde(default)]
        budget: Option<u64>,
    },
    MldToNvp { eta: u64, p: u32 },
    NvpToSvp {
        eta: u64,
        #[serde(default)]
        relaxed: Option<RelaxedScaleSpec>,
    },
}

fn one() -> u64 {
    1
}

impl StageSpec {
    pub fn is_randomized(&self) -> bool {
        matches!(self, StageSpec::SncToMdp { .. } | StageSpec::NvpToSvp { .. })
    }
}

/// Declarative pipeline: input source, ordered stages, certification policy.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineSpec {
    pub input: InputSource,
    pub stages: Vec<StageSpec>,
    /// run the matching oracle at every stage boundary (default true)
    #[serde(default = "default_certify")]
    pub certify: bool,
    #[serde(default)]
    pub oracle_budget: Option<u64>,
}

fn default_certify() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageReport {
    pub trace: ReductionTrace,
    /// verdict of the certification oracle on the stage output, at bound k
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<OracleVerdict>,
    /// wall time, excluded from serialized reports so that reruns are
    /// byte-identical
    #[serde(skip)]
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub master_seed: u64,
    pub input_kind: String,
    pub input_digest: String,
    pub stages: Vec<StageReport>,
    pub final_kind: String,
    pub final_instance: GapInstance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_verdict: Option<OracleVerdict>,
}

/// Apply one stage to an instance. Stage/kind mismatches are validation
/// errors; `seed` is only consumed by randomized stages.
pub fn apply_stage(
    stage: &StageSpec,
    inst: &GapInstance,
    seed: u64,
) -> Result<(GapInstance, ReductionTrace)> {
    let mismatch = || {
        Error::validation(format!(
            "stage {stage:?} cannot consume a {} instance",
            inst.kind()
        ))
    };
    match (stage, inst) {
        (StageSpec::BsmdToLds { q }, GapInstance::Bsmd(b)) => {
            let (out, tr) = crate::reductions::bsmd_to_lds(b, *q)?;
            Ok((GapInstance::Lds(out), tr))
        }
        (StageSpec::LdsColor { budget }, GapInstance::Lds(l)) => {
            let (out, tr) = lds_color(l, budget.unwrap_or(DEFAULT_BUDGET))?;
            Ok((GapInstance::ColoredLds(out), tr))
        }
        (StageSpec::LdsToMldSimple, GapInstance::ColoredLds(c)) => {
            let (out, tr) = lds_to_mld_simple(c)?;
            Ok((GapInstance::Mld(out), tr))
        }
        (StageSpec::LdsToMld { budget }, GapInstance::ColoredLds(c)) => {
            let (out, tr) = lds_to_mld(c, budget.unwrap_or(DEFAULT_BUDGET))?;
            Ok((GapInstance::Mld(out), tr))
        }
        (StageSpec::MldToSnc { gamma_num, gamma_den }, GapInstance::Mld(m)) => {
            let (out, tr) = mld_to_snc(m, Ratio::new(*gamma_num, *gamma_den))?;
            Ok((GapInstance::Snc(out), tr))
        }
        (
            StageSpec::MldToOddset {
                gamma_num,
                gamma_den,
                gamma_prime_num,
                gamma_prime_den,
            },
            GapInstance::Mld(m),
        ) => {
            let (out, tr) = mld_to_oddset(
                m,
                Ratio::new(*gamma_num, *gamma_den),
                Ratio::new(*gamma_prime_num, *gamma_prime_den),
            )?;
            Ok((GapInstance::OddSet(out), tr))
        }
        (StageSpec::SncToMdp { toy_h }, GapInstance::Snc(s)) => {
            let (out, tr) = SncToMdp::new(s, *toy_h)?.run_traced(seed);
            Ok((GapInstance::Mdp(out), tr))
        }
        (StageSpec::MdpTensor { budget }, GapInstance::Mdp(m)) => {
            let (out, tr) = mdp_tensor(m, budget.unwrap_or(DEFAULT_BUDGET))?;
            Ok((GapInstance::Mdp(out), tr))
        }
        (StageSpec::MldToNvp { eta, p }, GapInstance::Mld(m)) => {
            let (out, tr) = mld_to_nvp(m, *eta, *p)?;
            Ok((GapInstance::Nvp(out), tr))
        }
        (StageSpec::NvpToSvp { eta, relaxed }, GapInstance::Nvp(n)) => {
            let rx = relaxed.as_ref().map(|r| RelaxedScale {
                h: r.h,
                n_g: BigInt::from(r.n_g),
                hit_budget: r.hit_budget.unwrap_or(DEFAULT_BUDGET),
            });
            let (out, tr) = nvp_to_svp(n, *eta, seed, rx.as_ref())?;
            Ok((GapInstance::Svp(out), tr))
        }
        _ => Err(mismatch()),
    }
}

/// Run the instance's exact oracle at bound k.
pub fn certify_instance(inst: &GapInstance, budget: u64) -> Result<OracleVerdict> {
    match inst {
        GapInstance::Bsmd(b) => bsmd_oracle(b, b.k(), budget),
        GapInstance::Lds(l) => lds_oracle(l, l.k, budget),
        GapInstance::ColoredLds(c) => {
            // certification ignores colors (the colored YES condition is
            // checked by witness inspection where needed)
            let flat = crate::problems::LdsInstance {
                field: c.field.clone(),
                w: c.w.clone(),
                k: c.k,
                witness: c.witness.clone(),
            };
            lds_oracle(&flat, c.k, budget)
        }
        GapInstance::Mld(m) => mld_oracle(m, m.k, m.a.spec.size() == 2, budget),
        GapInstance::Snc(s) => snc_oracle(s, s.k, budget),
        GapInstance::Mdp(m) => mdp_oracle(m, m.k, MdpMode::Primal, budget),
        GapInstance::OddSet(o) => {
            // OddSet at bound k is MLD against the all-ones target
            let flat = MldInstance {
                a: o.a.clone(),
                y: vec![1; o.a.rows],
                k: o.k,
                witness: o.witness.clone(),
            };
            mld_oracle(&flat, o.k, true, budget)
        }
        GapInstance::Nvp(n) => nvp_verdict(n, false, budget),
        GapInstance::Svp(s) => svp_verdict(s, budget),
    }
}

/// Execute a pipeline: derive the input (seed index 0), apply stages in
/// order (stage i uses seed index i+1), certify at each boundary when the
/// policy asks for it.
pub fn run_pipeline(spec: &PipelineSpec, master_seed: u64) -> Result<RunReport> {
    let budget = spec.oracle_budget.unwrap_or(DEFAULT_BUDGET);
    let mut current = match &spec.input {
        InputSource::Plant { plant } => gen_planted(plant, derive_seed(master_seed, 0))?.0,
        InputSource::Inline { instance } => instance.clone(),
    };
    let errors = crate::problems::validate(&current);
    if !errors.is_empty() {
        return Err(Error::validation(format!("input instance invalid: {errors:?}")));
    }
    let input_kind = current.kind().to_string();
    let input_digest = digest_json(&current);
    let input_verdict = if spec.certify {
        Some(certify_instance(&current, budget)?)
    } else {
        None
    };
    let mut stages = Vec::with_capacity(spec.stages.len());
    for (i, stage) in spec.stages.iter().enumerate() {
        let t0 = std::time::Instant::now();
        let seed = derive_seed(master_seed, i as u64 + 1);
        let (next, trace) = apply_stage(stage, &current, seed)?;
        let verdict = if spec.certify {
            Some(certify_instance(&next, budget)?)
        } else {
            None
        };
        stages.push(StageReport {
            trace,
            verdict,
            wall_ms: t0.elapsed().as_secs_f64() * 1e3,
        });
        current = next;
    }
    Ok(RunReport {
        master_seed,
        input_kind,
        input_digest,
        stages,
        final_kind: current.kind().to_string(),
        final_instance: current,
        input_verdict,
    })
}

/// Empirical success estimate with a Wilson score interval.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuccessEstimate {
    pub successes: u64,
    pub trials: u64,
    pub rate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let radius = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - radius).max(0.0), (center + radius).min(1.0))
}

/// Rerun stage `stage_idx` of the pipeline `trials` times with fresh seeds
/// and report how often it forwards the planted witness. Deterministic
/// stages report 1.0 exactly; randomized stages report their hit frequency.
pub fn estimate_success(
    spec: &PipelineSpec,
    stage_idx: usize,
    trials: u64,
    master_seed: u64,
) -> Result<SuccessEstimate> {
    if trials < 30 {
        return Err(Error::validation("estimate_success: need at least 30 trials"));
    }
    if stage_idx >= spec.stages.len() {
        return Err(Error::validation("estimate_success: stage index out of range"));
    }
    // deterministic prefix
    let mut current = match &spec.input {
        InputSource::Plant { plant } => gen_planted(plant, derive_seed(master_seed, 0))?.0,
        InputSource::Inline { instance } => instance.clone(),
    };
    for (i, stage) in spec.stages[..stage_idx].iter().enumerate() {
        let seed = derive_seed(master_seed, i as u64 + 1);
        current = apply_stage(stage, &current, seed)?.0;
    }
    if current.witness().is_none() {
        return Err(Error::validation(
            "estimate_success: stage input carries no planted witness",
        ));
    }
    let stage = &spec.stages[stage_idx];
    let trial_base = derive_seed(master_seed, stage_idx as u64 + 1);
    let mut successes = 0;
    for j in 0..trials {
        let seed = derive_seed(trial_base, j);
        let (_, tr) = apply_stage(stage, &current, seed)?;
        if tr.witness_forwarded {
            successes += 1;
        }
    }
    let rate = successes as f64 / trials as f64;
    let (lo, hi) = wilson_interval(successes, trials, 1.96);
    Ok(SuccessEstimate {
        successes,
        trials,
        rate,
        wilson_low: lo,
        wilson_high: hi,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(Error::validation(format!("unknown report format: {other}"))),
        }
    }
}

/// Render a report. JSON is canonical (compact, key order fixed by struct
/// layout) and lossless; csv/markdown are tabular summaries.
pub fn emit_report(report: &RunReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string(report)?),
        ReportFormat::Csv => {
            let mut out = String::from("stage,seed,k_in,k_out,witness_forwarded,optimum\n");
            for s in &report.stages {
                let seed = s.trace.seed.map_or(String::new(), |v| v.to_string());
                let opt = s
                    .verdict
                    .as_ref()
                    .and_then(|v| v.optimum)
                    .map_or(String::new(), |v| v.to_string());
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    s.trace.stage, seed, s.trace.k_in, s.trace.k_out,
                    s.trace.witness_forwarded, opt
                ));
            }
            Ok(out)
        }
        ReportFormat::Markdown => {
            let mut out = format!(
                "# Run report (seed {})\n\ninput: {} `{}`\n\n| stage | k | k' | seed | forwarded | optimum |\n|---|---|---|---|---|---|\n",
                report.master_seed, report.input_kind, &report.input_digest[..12]
            );
            for s in &report.stages {
                let seed = s.trace.seed.map_or("-".into(), |v| v.to_string());
                let opt = s
                    .verdict
                    .as_ref()
                    .map_or("-".into(), |v| {
                        v.optimum.map_or("above bound".into(), |o| o.to_string())
                    });
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} |\n",
                    s.trace.stage, s.trace.k_in, s.trace.k_out, seed,
                    s.trace.witness_forwarded, opt
                ));
            }
            out.push_str(&format!("\nfinal: {}\n", report.final_kind));
            Ok(out)
        }
    }
}
