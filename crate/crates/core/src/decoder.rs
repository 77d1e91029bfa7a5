//! Syndrome decoding per CSS component: belief propagation producing soft
//! reliabilities, ordered-statistics post-processing with exhaustive
//! search, and the logical-failure verdict.
//!
//! Both components run through one parameterized routine: the Z-component
//! estimate comes from (hx, syndrome_x), the X-component estimate from
//! (hz, syndrome_z).

use serde::{Deserialize, Serialize};

use crate::channel::component_prior;
use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, PermutedRref, RowSpace};
use crate::tanner::TannerGraph;

/// Log-ratio clamp; large enough to never change a decision at these
/// blocklengths, small enough to keep tanh/atanh well-conditioned.
const LLR_CLAMP: f64 = 30.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum BpVariant {
    SumProduct,
    NormalizedMinSum { factor: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schedule {
    Flooding,
    Serial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OsdWeighting {
    /// Minimize the summed posterior log-ratio over the support.
    Soft,
    /// Minimize the support size.
    Hamming,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    pub bp_variant: BpVariant,
    pub schedule: Schedule,
    /// OSD exhaustive-search order lambda; 2^lambda candidates.
    pub osd_order: u32,
    pub osd_weighting: OsdWeighting,
}

impl DecoderConfig {
    /// The published protocol: iteration cap equal to the blocklength,
    /// OSD with exhaustive search of order 10.
    pub fn protocol_default(n: usize) -> Self {
        DecoderConfig {
            max_iterations: n,
            bp_variant: BpVariant::SumProduct,
            schedule: Schedule::Flooding,
            osd_order: 10,
            osd_weighting: OsdWeighting::Soft,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_iterations < 1 {
            return Err(Error::Validation("max_iterations must be >= 1".into()));
        }
        if self.osd_order > 20 {
            return Err(Error::Validation(format!(
                "osd_order {} above the candidate-count cap of 20",
                self.osd_order
            )));
        }
        if let BpVariant::NormalizedMinSum { factor } = self.bp_variant {
            if !(factor > 0.0 && factor <= 1.0) {
                return Err(Error::Validation(format!(
                    "min-sum normalization factor {factor} outside (0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Result of the BP stage (pre-OSD).
#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    pub estimate: BitVec,
    pub bp_converged: bool,
    pub iterations_used: usize,
    /// Posterior log-ratio log(P(bit clear) / P(bit set)) per bit.
    pub soft: Vec<f64>,
    pub osd_invoked: bool,
}

fn clamp(x: f64) -> f64 {
    x.clamp(-LLR_CLAMP, LLR_CLAMP)
}

fn hard_decision(soft: &[f64]) -> BitVec {
    let mut e = BitVec::zeros(soft.len());
    for (i, &s) in soft.iter().enumerate() {
        if s < 0.0 {
            e.set(i, true);
        }
    }
    e
}

fn syndrome_matches(h: &BitMatrix, estimate: &BitVec, syndrome: &BitVec) -> bool {
    h.mat_vec(estimate).map(|s| s == *syndrome).unwrap_or(false)
}

/// Syndrome-adjusted belief propagation on the Tanner graph of `h`.
///
/// Runs in the log-ratio domain; exits early once the running hard
/// decision reproduces the syndrome. Non-convergence is reported through
/// the flag, never as an error.
pub fn bp_decode(
    h: &BitMatrix,
    syndrome: &BitVec,
    prior: f64,
    cfg: &DecoderConfig,
) -> Result<DecodeOutcome> {
    cfg.validate()?;
    if syndrome.len() != h.rows() {
        return Err(Error::ShapeMismatch(format!(
            "syndrome length {} vs {} checks",
            syndrome.len(),
            h.rows()
        )));
    }
    if !(prior > 0.0 && prior < 0.5) {
        return Err(Error::Validation(format!(
            "component prior {prior} outside (0, 0.5)"
        )));
    }

    let graph = TannerGraph::from_matrix(h);
    let n = graph.variable_count;
    let prior_llr = ((1.0 - prior) / prior).ln();

    // Edge layout: one slot per (check, position-in-check-row).
    let mut edge_of: Vec<Vec<usize>> = Vec::with_capacity(graph.check_count);
    let mut edge_var: Vec<usize> = Vec::new();
    for row in &graph.check_adj {
        let mut ids = Vec::with_capacity(row.len());
        for &v in row {
            ids.push(edge_var.len());
            edge_var.push(v);
        }
        edge_of.push(ids);
    }
    // Edges incident to each variable.
    let mut var_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &v) in edge_var.iter().enumerate() {
        var_edges[v].push(e);
    }

    let ne = edge_var.len();
    let mut msg_vc = vec![prior_llr; ne];
    let mut msg_cv = vec![0.0f64; ne];
    let mut soft = vec![prior_llr; n];

    // The all-zero hard decision from the bare prior; catches s = 0 before
    // any message passing.
    let mut estimate = hard_decision(&soft);
    if syndrome_matches(h, &estimate, syndrome) {
        return Ok(DecodeOutcome {
            estimate,
            bp_converged: true,
            iterations_used: 0,
            soft,
            osd_invoked: false,
        });
    }

    let check_update = |edges: &[usize], s_bit: bool, msg_vc: &[f64], msg_cv: &mut [f64]| {
        match cfg.bp_variant {
            BpVariant::SumProduct => {
                let sign = if s_bit { -1.0 } else { 1.0 };
                // Leave-one-out tanh products via prefix/suffix scans; no
                // division, so zero-magnitude messages are harmless.
                let d = edges.len();
                let mut prefix = vec![1.0f64; d + 1];
                for (i, &e) in edges.iter().enumerate() {
                    prefix[i + 1] = prefix[i] * (msg_vc[e] / 2.0).tanh();
                }
                let mut suffix = 1.0f64;
                for i in (0..d).rev() {
                    let e = edges[i];
                    let excl = prefix[i] * suffix;
                    msg_cv[e] = clamp(sign * 2.0 * excl.clamp(-0.999_999_999_999, 0.999_999_999_999).atanh());
                    suffix *= (msg_vc[e] / 2.0).tanh();
                }
            }
            BpVariant::NormalizedMinSum { factor } => {
                let mut total_sign = if s_bit { -1.0 } else { 1.0 };
                let (mut min1, mut min2) = (f64::INFINITY, f64::INFINITY);
                let mut argmin = usize::MAX;
                for (i, &e) in edges.iter().enumerate() {
                    let m = msg_vc[e];
                    if m < 0.0 {
                        total_sign = -total_sign;
                    }
                    let a = m.abs();
                    if a < min1 {
                        min2 = min1;
                        min1 = a;
                        argmin = i;
                    } else if a < min2 {
                        min2 = a;
                    }
                }
                for (i, &e) in edges.iter().enumerate() {
                    let m = msg_vc[e];
                    let excl_sign = if m < 0.0 { -total_sign } else { total_sign };
                    // min2 = infinity on degree-1 checks; clamp absorbs it.
                    let mag = if i == argmin { min2 } else { min1 };
                    msg_cv[e] = clamp(factor * excl_sign * mag);
                }
            }
        }
    };

    let mut iterations_used = 0;
    let mut converged = false;
    for iter in 1..=cfg.max_iterations {
        iterations_used = iter;
        match cfg.schedule {
            Schedule::Flooding => {
                for (c, edges) in edge_of.iter().enumerate() {
                    check_update(edges, syndrome.get(c), &msg_vc, &mut msg_cv);
                }
                for v in 0..n {
                    let total: f64 = prior_llr + var_edges[v].iter().map(|&e| msg_cv[e]).sum::<f64>();
                    soft[v] = clamp(total);
                    for &e in &var_edges[v] {
                        msg_vc[e] = clamp(total - msg_cv[e]);
                    }
                }
            }
            Schedule::Serial => {
                // Check-serial sweep over a running posterior.
                for (c, edges) in edge_of.iter().enumerate() {
                    for &e in edges {
                        msg_vc[e] = clamp(soft[edge_var[e]] - msg_cv[e]);
                    }
                    let old: Vec<f64> = edges.iter().map(|&e| msg_cv[e]).collect();
                    check_update(edges, syndrome.get(c), &msg_vc, &mut msg_cv);
                    for (i, &e) in edges.iter().enumerate() {
                        soft[edge_var[e]] = clamp(soft[edge_var[e]] - old[i] + msg_cv[e]);
                    }
                }
            }
        }
        estimate = hard_decision(&soft);
        if syndrome_matches(h, &estimate, syndrome) {
            converged = true;
            break;
        }
    }

    Ok(DecodeOutcome {
        estimate,
        bp_converged: converged,
        iterations_used,
        soft,
        osd_invoked: false,
    })
}

/// Ordered-statistics post-processing with exhaustive search of order
/// `lambda`.
///
/// Columns are ranked most-probable-error first (ascending posterior
/// log-ratio); elimination in that order puts the probable error support
/// on the pivots. The order-0 solution zeroes the non-pivot bits; the
/// exhaustive search re-solves the pivots for all 2^lambda assignments of
/// the lambda highest-ranked non-pivot positions and keeps the candidate
/// of least weight. The result always satisfies H * e = s.
pub fn osd_postprocess(
    h: &BitMatrix,
    syndrome: &BitVec,
    soft: &[f64],
    lambda: u32,
    weighting: OsdWeighting,
) -> Result<BitVec> {
    if soft.len() != h.cols() {
        return Err(Error::ShapeMismatch(format!(
            "soft vector length {} vs {} columns",
            soft.len(),
            h.cols()
        )));
    }
    if syndrome.len() != h.rows() {
        return Err(Error::ShapeMismatch(format!(
            "syndrome length {} vs {} rows",
            syndrome.len(),
            h.rows()
        )));
    }

    let n = h.cols();
    let mut perm: Vec<usize> = (0..n).collect();
    // Most probable error first; index tie-break for determinism.
    perm.sort_by(|&a, &b| soft[a].total_cmp(&soft[b]).then(a.cmp(&b)));

    let pr = PermutedRref::new(h, &perm);
    let ts = pr.apply_transform(syndrome);
    if !pr.consistent(&ts) {
        return Err(Error::InconsistentSyndrome);
    }
    let rank = pr.rank();

    let cost = |orig_col: usize| -> f64 {
        match weighting {
            OsdWeighting::Soft => soft[orig_col],
            OsdWeighting::Hamming => 1.0,
        }
    };

    // The lambda highest-ranked non-pivot columns (in permuted order), or
    // all of them when fewer exist.
    let chosen: Vec<usize> = (0..n)
        .filter(|c| !pr.pivots.contains(c))
        .take(lambda as usize)
        .collect();

    // Column effect of each chosen non-pivot bit on the pivot solution.
    let cols: Vec<BitVec> = chosen
        .iter()
        .map(|&c| {
            let mut v = BitVec::zeros(rank);
            for i in 0..rank {
                if pr.reduced.get(i, c) {
                    v.set(i, true);
                }
            }
            v
        })
        .collect();

    let base: BitVec = {
        let mut v = BitVec::zeros(rank);
        for i in 0..rank {
            if ts.get(i) {
                v.set(i, true);
            }
        }
        v
    };

    let eval = |pivot_bits: &BitVec, mask: u32| -> f64 {
        let mut w = 0.0;
        for i in pivot_bits.iter_ones() {
            w += cost(perm[pr.pivots[i]]);
        }
        for (j, &c) in chosen.iter().enumerate() {
            if mask >> j & 1 == 1 {
                w += cost(perm[c]);
            }
        }
        w
    };

    // Gray-code walk over the 2^|chosen| assignments.
    let mut cur = base.clone();
    let mut best_mask = 0u32;
    let mut best_pivots = cur.clone();
    let mut best_weight = eval(&cur, 0);
    let count: u32 = 1 << chosen.len();
    let mut gray_prev = 0u32;
    for t in 1..count {
        let gray = t ^ (t >> 1);
        let flipped = (gray ^ gray_prev).trailing_zeros() as usize;
        gray_prev = gray;
        cur.xor_assign(&cols[flipped]);
        let w = eval(&cur, gray);
        // Strict improvement only: earlier enumeration order wins ties.
        if w < best_weight {
            best_weight = w;
            best_mask = gray;
            best_pivots = cur.clone();
        }
    }

    let mut estimate = BitVec::zeros(n);
    for i in best_pivots.iter_ones() {
        estimate.set(perm[pr.pivots[i]], true);
    }
    for (j, &c) in chosen.iter().enumerate() {
        if best_mask >> j & 1 == 1 {
            estimate.set(perm[c], true);
        }
    }
    debug_assert!(syndrome_matches(h, &estimate, syndrome));
    Ok(estimate)
}

/// BP followed by OSD whenever the BP hard decision misses the syndrome.
pub fn decode_component(
    h: &BitMatrix,
    syndrome: &BitVec,
    prior: f64,
    cfg: &DecoderConfig,
) -> Result<DecodeOutcome> {
    let mut outcome = bp_decode(h, syndrome, prior, cfg)?;
    if !outcome.bp_converged {
        outcome.estimate = osd_postprocess(h, syndrome, &outcome.soft, cfg.osd_order, cfg.osd_weighting)?;
        outcome.osd_invoked = true;
    }
    Ok(outcome)
}

/// Joint outcome of the two independent component decodes.
pub struct CssDecodeOutcome {
    /// Z-component estimate (decoded from hx and the X-check syndrome).
    pub est_ez: BitVec,
    /// X-component estimate (decoded from hz and the Z-check syndrome).
    pub est_ex: BitVec,
    pub z_meta: ComponentMeta,
    pub x_meta: ComponentMeta,
}

#[derive(Clone, Copy, Debug)]
pub struct ComponentMeta {
    pub bp_converged: bool,
    pub iterations_used: usize,
    pub osd_invoked: bool,
}

fn meta_of(o: &DecodeOutcome) -> ComponentMeta {
    ComponentMeta {
        bp_converged: o.bp_converged,
        iterations_used: o.iterations_used,
        osd_invoked: o.osd_invoked,
    }
}

/// Decode both CSS components independently with prior 2p/3.
pub fn decode_css(
    code: &CssCode,
    syndrome_x: &BitVec,
    syndrome_z: &BitVec,
    p_phys: f64,
    cfg: &DecoderConfig,
) -> Result<CssDecodeOutcome> {
    let prior = component_prior(p_phys);
    let z = decode_component(&code.hx, syndrome_x, prior, cfg)?;
    let x = decode_component(&code.hz, syndrome_z, prior, cfg)?;
    Ok(CssDecodeOutcome {
        z_meta: meta_of(&z),
        x_meta: meta_of(&x),
        est_ez: z.estimate,
        est_ex: x.estimate,
    })
}

/// Precomputed stabilizer row spaces for fast repeated verdicts.
pub struct FailureChecker {
    rowspace_x: RowSpace,
    rowspace_z: RowSpace,
}

impl FailureChecker {
    pub fn new(code: &CssCode) -> Self {
        FailureChecker {
            rowspace_x: RowSpace::new(&code.hx),
            rowspace_z: RowSpace::new(&code.hz),
        }
    }

    /// Failure iff a syndrome-free residual falls outside the stabilizer
    /// row space of its own type.
    pub fn is_logical_failure(
        &self,
        code: &CssCode,
        residual_ex: &BitVec,
        residual_ez: &BitVec,
    ) -> Result<bool> {
        if !code.hx.mat_vec(residual_ez)?.is_zero() || !code.hz.mat_vec(residual_ex)?.is_zero() {
            return Err(Error::CssCheck(
                "residual has nonzero syndrome; OSD guarantee violated".into(),
            ));
        }
        Ok(!self.rowspace_z.contains(residual_ez) || !self.rowspace_x.contains(residual_ex))
    }
}

/// One-shot form of the verdict; builds the row-space testers on the fly.
pub fn is_logical_failure(
    code: &CssCode,
    residual_ex: &BitVec,
    residual_ez: &BitVec,
) -> Result<bool> {
    FailureChecker::new(code).is_logical_failure(code, residual_ex, residual_ez)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::assemble_code;
    use crate::margulis::{build_generating_sets, EtaChoice, PairSelection};
    use crate::sl2::enumerate_group;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p5_code() -> CssCode {
        let index = enumerate_group(5).unwrap();
        let spec = build_generating_sets(
            5,
            2,
            3,
            EtaChoice::Auto,
            &PairSelection::Seeded(0),
            false,
        )
        .unwrap();
        assemble_code(&index, &spec).unwrap()
    }

    fn cfg(n: usize) -> DecoderConfig {
        DecoderConfig::protocol_default(n)
    }

    #[test]
    fn zero_syndrome_returns_zero_at_iteration_zero() {
        let code = p5_code();
        let s = BitVec::zeros(code.hx.rows());
        let out = bp_decode(&code.hx, &s, 0.05, &cfg(code.n)).unwrap();
        assert!(out.estimate.is_zero());
        assert!(out.bp_converged);
        assert_eq!(out.iterations_used, 0);
    }

    #[test]
    fn invalid_prior_rejected() {
        let code = p5_code();
        let s = BitVec::zeros(code.hx.rows());
        assert!(bp_decode(&code.hx, &s, 0.6, &cfg(code.n)).is_err());
        assert!(bp_decode(&code.hx, &s, 0.0, &cfg(code.n)).is_err());
    }

    #[test]
    fn single_bit_errors_recovered_by_bp() {
        let code = p5_code();
        let c = cfg(code.n);
        for bit in (0..code.n).step_by(17) {
            let truth = BitVec::from_indices(code.n, &[bit]);
            let s = code.hx.mat_vec(&truth).unwrap();
            let out = bp_decode(&code.hx, &s, 0.05, &c).unwrap();
            assert!(out.bp_converged, "bit {bit}");
            assert!(out.iterations_used <= 5, "bit {bit}: {}", out.iterations_used);
            assert_eq!(out.estimate, truth, "bit {bit}");
        }
    }

    #[test]
    fn osd_zero_matches_converged_bp_on_single_errors() {
        let code = p5_code();
        let c = cfg(code.n);
        for bit in (0..code.n).step_by(23) {
            let truth = BitVec::from_indices(code.n, &[bit]);
            let s = code.hx.mat_vec(&truth).unwrap();
            let out = bp_decode(&code.hx, &s, 0.05, &c).unwrap();
            let osd = osd_postprocess(&code.hx, &s, &out.soft, 0, OsdWeighting::Soft).unwrap();
            assert_eq!(osd, out.estimate, "bit {bit}");
        }
    }

    #[test]
    fn osd_small_tie_break() {
        let h = BitMatrix::from_rows(2, &[vec![0, 1]]);
        let s = BitVec::from_indices(1, &[0]);
        let est = osd_postprocess(&h, &s, &[1.0, 1.0], 2, OsdWeighting::Soft).unwrap();
        assert_eq!(est.weight(), 1);
        assert!(syndrome_matches(&h, &est, &s));
    }

    #[test]
    fn osd_syndrome_guarantee_random_trials() {
        let code = p5_code();
        let c = cfg(code.n);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..300 {
            let mut truth = BitVec::zeros(code.n);
            for i in 0..code.n {
                if rng.gen_bool(0.06) {
                    truth.set(i, true);
                }
            }
            let s = code.hx.mat_vec(&truth).unwrap();
            let out = decode_component(&code.hx, &s, 0.04, &c).unwrap();
            assert!(syndrome_matches(&code.hx, &out.estimate, &s));
        }
    }

    #[test]
    fn osd_rejects_inconsistent_syndrome() {
        // Two identical checks cannot produce syndrome (1, 0).
        let h = BitMatrix::from_rows(2, &[vec![0, 1], vec![0, 1]]);
        let s = BitVec::from_indices(2, &[0]);
        let err = osd_postprocess(&h, &s, &[1.0, 1.0], 0, OsdWeighting::Soft).unwrap_err();
        assert!(matches!(err, Error::InconsistentSyndrome));
    }

    #[test]
    fn css_decode_single_paulis() {
        let code = p5_code();
        let c = cfg(code.n);
        // X error on one qubit: est_ex recovers it, est_ez stays zero;
        // Y error: both components recover.
        for qubit in (0..code.n).step_by(41) {
            let ex = BitVec::from_indices(code.n, &[qubit]);
            let ez = BitVec::zeros(code.n);
            let sx = code.hx.mat_vec(&ez).unwrap();
            let sz = code.hz.mat_vec(&ex).unwrap();
            let out = decode_css(&code, &sx, &sz, 0.05, &c).unwrap();
            assert_eq!(out.est_ex, ex);
            assert!(out.est_ez.is_zero());

            let sy_x = code.hx.mat_vec(&ex).unwrap();
            let sy_z = code.hz.mat_vec(&ex).unwrap();
            let out = decode_css(&code, &sy_x, &sy_z, 0.05, &c).unwrap();
            assert_eq!(out.est_ex, ex);
            assert_eq!(out.est_ez, ex);
        }
    }

    #[test]
    fn logical_failure_verdicts() {
        let code = p5_code();
        let checker = FailureChecker::new(&code);
        let zero = BitVec::zeros(code.n);
        assert!(!checker.is_logical_failure(&code, &zero, &zero).unwrap());
        // A stabilizer row is not a failure.
        let row = code.hz.row(3);
        assert!(!checker.is_logical_failure(&code, &zero, &row).unwrap());
        // A kernel element outside the row space is a failure (exists
        // whenever k > 0).
        assert!(code.k > 0);
        let ns = code.hx.nullspace();
        let logical = (0..ns.rows())
            .map(|r| ns.row(r))
            .find(|v| !code.hz.in_rowspace(v).unwrap())
            .expect("k > 0 guarantees a logical representative");
        assert!(checker.is_logical_failure(&code, &zero, &logical).unwrap());
        // Nonzero syndrome residual is an internal consistency error.
        let bad = BitVec::from_indices(code.n, &[0]);
        assert!(code.hx.mat_vec(&bad).unwrap().is_zero() == false);
        assert!(checker.is_logical_failure(&code, &zero, &bad).is_err());
    }

    #[test]
    fn schedules_and_variants_decode_single_errors() {
        let code = p5_code();
        for (variant, schedule) in [
            (BpVariant::SumProduct, Schedule::Serial),
            (BpVariant::NormalizedMinSum { factor: 0.8 }, Schedule::Flooding),
        ] {
            let c = DecoderConfig {
                bp_variant: variant,
                schedule,
                ..cfg(code.n)
            };
            for bit in (0..code.n).step_by(59) {
                let truth = BitVec::from_indices(code.n, &[bit]);
                let s = code.hx.mat_vec(&truth).unwrap();
                let out = decode_component(&code.hx, &s, 0.05, &c).unwrap();
                assert!(syndrome_matches(&code.hx, &out.estimate, &s));
            }
        }
    }

    #[test]
    fn osd_order_monotone_benefit() {
        // Over a fixed batch at fixed seed, order-10 OSD never fails more
        // often than order-0.
        let code = p5_code();
        let checker = FailureChecker::new(&code);
        let mut failures = [0usize; 2];
        for (which, order) in [(0usize, 0u32), (1, 10)] {
            let c = DecoderConfig {
                osd_order: order,
                max_iterations: 60,
                ..cfg(code.n)
            };
            for trial in 0..400u64 {
                let mut rng = crate::channel::RngStream::new(5150, trial).rng();
                let e = crate::channel::sample(code.n, 0.06, &mut rng).unwrap();
                let sx = code.hx.mat_vec(&e.ez).unwrap();
                let sz = code.hz.mat_vec(&e.ex).unwrap();
                let out = decode_css(&code, &sx, &sz, 0.06, &c).unwrap();
                let mut rez = out.est_ez.clone();
                rez.xor_assign(&e.ez);
                let mut rex = out.est_ex.clone();
                rex.xor_assign(&e.ex);
                if checker.is_logical_failure(&code, &rex, &rez).unwrap() {
                    failures[which] += 1;
                }
            }
        }
        assert!(
            failures[1] <= failures[0],
            "order 10 failures {} > order 0 failures {}",
            failures[1],
            failures[0]
        );
    }
}
