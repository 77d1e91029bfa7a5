//! Monte Carlo logical-error-rate estimation with the published trial
//! policy and deterministic parallelism.
//!
//! Trial t always draws from stream index t of the seed, so the sampled
//! errors, and therefore every SimRecord, are independent of the worker
//! count and scheduling.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::channel::{component_prior, sample, RngStream, RNG_ALGORITHM};
use crate::code::CssCode;
use crate::decoder::{decode_css, DecoderConfig, FailureChecker};
use crate::error::{Error, Result};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The published trial policy: 10^4 patterns per point, continuing until
/// 100 logical errors; the hard cap is a desk-scale addition.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TrialPolicy {
    pub min_trials: usize,
    pub target_failures: usize,
    pub max_trials: usize,
}

impl Default for TrialPolicy {
    fn default() -> Self {
        TrialPolicy {
            min_trials: 10_000,
            target_failures: 100,
            max_trials: 1_000_000,
        }
    }
}

impl TrialPolicy {
    fn validate(&self) -> Result<()> {
        if self.min_trials < 1 || self.target_failures < 1 || self.max_trials < self.min_trials {
            return Err(Error::Validation(format!(
                "invalid trial policy: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Continuation batch size once min_trials failed to reach the failure
/// target; bounds the overshoot past the final failure.
const CONTINUATION_BATCH: usize = 1_000;

/// One Monte Carlo result point.
#[derive(Clone, Debug, Serialize)]
pub struct SimRecord {
    pub code_id: String,
    pub p_phys: f64,
    pub trials: usize,
    pub failures: usize,
    pub ler: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Trials where at least one component needed OSD (BP alone missed
    /// the syndrome).
    pub bp_only_failures: usize,
    /// Mean BP iterations per component decode.
    pub mean_iterations: f64,
    pub seed: u64,
    pub config_digest: String,
    /// Max-trials cap hit before reaching the failure target.
    pub truncated: bool,
}

/// Wilson 95% score interval; well-behaved at small failure counts.
pub fn wilson_interval(failures: usize, trials: usize) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054; // 97.5% normal quantile
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // Clamp to [0, 1] and absorb rounding residue at the endpoints so the
    // interval always contains failures/trials exactly.
    (
        (center - half).max(0.0).min(phat),
        (center + half).min(1.0).max(phat),
    )
}

/// Short content digest of the decoder configuration and trial policy,
/// echoed in every record for provenance.
pub fn config_digest(cfg: &DecoderConfig, policy: &TrialPolicy) -> String {
    let blob = serde_json::to_vec(&(cfg, policy)).expect("serializable");
    let hash = Sha256::digest(&blob);
    hex_prefix(&hash, 12)
}

pub(crate) fn hex_prefix(bytes: &[u8], chars: usize) -> String {
    let mut s = String::with_capacity(chars);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
        if s.len() >= chars {
            break;
        }
    }
    s.truncate(chars);
    s
}

struct TrialResult {
    failure: bool,
    osd_invoked: bool,
    iterations: usize,
}

fn run_trial(
    code: &CssCode,
    checker: &FailureChecker,
    p_phys: f64,
    cfg: &DecoderConfig,
    seed: u64,
    trial: u64,
) -> Result<TrialResult> {
    let mut rng = RngStream::new(seed, trial).rng();
    let err = sample(code.n, p_phys, &mut rng)?;
    let sx = code.hx.mat_vec(&err.ez)?;
    let sz = code.hz.mat_vec(&err.ex)?;
    let out = decode_css(code, &sx, &sz, p_phys, cfg)?;
    let mut rez = out.est_ez;
    rez.xor_assign(&err.ez);
    let mut rex = out.est_ex;
    rex.xor_assign(&err.ex);
    let failure = checker.is_logical_failure(code, &rex, &rez)?;
    Ok(TrialResult {
        failure,
        osd_invoked: out.z_meta.osd_invoked || out.x_meta.osd_invoked,
        iterations: out.z_meta.iterations_used + out.x_meta.iterations_used,
    })
}

/// Estimate the logical error rate at one physical error rate.
///
/// Runs `min_trials` trials, then continues in batches until the failure
/// target is reached or the cap is hit. The per-trial stream derivation
/// makes the record identical for any worker count.
pub fn run_point(
    code: &CssCode,
    code_id: &str,
    p_phys: f64,
    policy: &TrialPolicy,
    cfg: &DecoderConfig,
    seed: u64,
    workers: usize,
) -> Result<SimRecord> {
    policy.validate()?;
    if !(0.0..=1.0).contains(&p_phys) {
        return Err(Error::Validation(format!(
            "physical error rate {p_phys} outside [0, 1]"
        )));
    }
    // Degenerate-prior corner: with p = 0 the syndrome is always zero and
    // the decoder never runs; skip straight to the record.
    if p_phys == 0.0 {
        let (lo, hi) = wilson_interval(0, policy.min_trials);
        return Ok(SimRecord {
            code_id: code_id.to_string(),
            p_phys,
            trials: policy.min_trials,
            failures: 0,
            ler: 0.0,
            ci_low: lo,
            ci_high: hi,
            bp_only_failures: 0,
            mean_iterations: 0.0,
            seed,
            config_digest: config_digest(cfg, policy),
            truncated: false,
        });
    }
    if component_prior(p_phys) >= 0.5 {
        return Err(Error::Validation(format!(
            "p_phys {p_phys} gives component prior >= 0.5"
        )));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Validation(format!("worker pool: {e}")))?;
    let checker = FailureChecker::new(code);

    let mut trials = 0usize;
    let mut failures = 0usize;
    let mut osd_trials = 0usize;
    let mut iteration_sum = 0usize;
    let mut truncated = false;

    loop {
        let batch = if trials == 0 {
            policy.min_trials
        } else {
            CONTINUATION_BATCH.min(policy.max_trials - trials)
        };
        let start = trials as u64;
        let results: Result<Vec<TrialResult>> = pool.install(|| {
            (0..batch as u64)
                .into_par_iter()
                .map(|i| run_trial(code, &checker, p_phys, cfg, seed, start + i))
                .collect()
        });
        for r in results? {
            failures += usize::from(r.failure);
            osd_trials += usize::from(r.osd_invoked);
            iteration_sum += r.iterations;
        }
        trials += batch;
        if failures >= policy.target_failures {
            break;
        }
        if trials >= policy.max_trials {
            truncated = true;
            break;
        }
    }

    let (ci_low, ci_high) = wilson_interval(failures, trials);
    Ok(SimRecord {
        code_id: code_id.to_string(),
        p_phys,
        trials,
        failures,
        ler: failures as f64 / trials as f64,
        ci_low,
        ci_high,
        bp_only_failures: osd_trials,
        mean_iterations: iteration_sum as f64 / (2 * trials) as f64,
        seed,
        config_digest: config_digest(cfg, policy),
        truncated,
    })
}

pub const CSV_HEADER: &str =
    "code_id,p_phys,trials,failures,ler,ci_low,ci_high,bp_only_failures,mean_iterations,seed,config_digest";

pub fn csv_row(r: &SimRecord) -> String {
    format!(
        "{},{},{},{},{:.6e},{:.6e},{:.6e},{},{:.3},{},{}",
        r.code_id,
        r.p_phys,
        r.trials,
        r.failures,
        r.ler,
        r.ci_low,
        r.ci_high,
        r.bp_only_failures,
        r.mean_iterations,
        r.seed,
        r.config_digest
    )
}

/// Provenance comment block placed above the CSV header.
pub fn csv_preamble(
    cfg: &DecoderConfig,
    policy: &TrialPolicy,
    code_digest: &str,
    seed: u64,
) -> String {
    format!(
        "# rng_algorithm={RNG_ALGORITHM}\n# seed={seed}\n# decoder_config={}\n# trial_policy={}\n# code_descriptor_digest={code_digest}\n# toolkit_version={TOOLKIT_VERSION}\n",
        serde_json::to_string(cfg).expect("serializable"),
        serde_json::to_string(policy).expect("serializable"),
    )
}

/// Sweep ascending physical error rates, one `run_point` per value.
///
/// Rows are written (and flushed) as each point completes, so partial
/// sweeps survive interruption. Point i derives its seed from `seed` and
/// i, keeping points statistically independent.
#[allow(clippy::too_many_arguments)]
pub fn run_sweep(
    code: &CssCode,
    code_id: &str,
    p_list: &[f64],
    policy: &TrialPolicy,
    cfg: &DecoderConfig,
    seed: u64,
    workers: usize,
    mut out: Option<&mut dyn Write>,
) -> Result<Vec<SimRecord>> {
    if p_list.is_empty() {
        return Err(Error::Validation("empty physical error rate list".into()));
    }
    if p_list.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Validation(
            "physical error rates must be ascending".into(),
        ));
    }
    if let Some(w) = out.as_deref_mut() {
        writeln!(w, "{CSV_HEADER}")?;
        w.flush()?;
    }
    let mut records = Vec::with_capacity(p_list.len());
    for (i, &p) in p_list.iter().enumerate() {
        let point_seed = seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let record = run_point(code, code_id, p, policy, cfg, point_seed, workers)?;
        if let Some(w) = out.as_deref_mut() {
            writeln!(w, "{}", csv_row(&record))?;
            if record.truncated {
                writeln!(w, "# truncated: p_phys={p} hit max_trials before target_failures")?;
            }
            w.flush()?;
        }
        records.push(record);
    }
    Ok(records)
}
