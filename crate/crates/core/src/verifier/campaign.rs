//! Seeded randomized trial campaigns.
//!
//! Every trial draws from its own generator, seeded from the campaign seed and
//! the trial index, so trials can run in any order (and in parallel) while the
//! assembled report stays a pure function of the configuration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gen::{check_gen_inequality, check_gen_inequality_with, GenResult};
use super::sandwich::{check_sandwich_with, SandwichOptions, SandwichResult, Verdict};
use super::{Result, VerifyError};
use crate::catalog::CatalogFunction;
use crate::divdiff::NodeSet;
use crate::extended::ExtendedReal;
use crate::jet::DEFAULT_MAX_ORDER;

const MAX_REJECTIONS: usize = 10_000;
/// Interior lower endpoints are drawn log-uniformly from `[m * 1e-6, m]`.
const INTERIOR_A_DECADES: f64 = 6.0;
/// Interior upper endpoints are drawn log-uniformly from `[M, 10 M]`.
const INTERIOR_B_FACTOR: f64 = 10.0;

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub functions: Vec<CatalogFunction>,
    pub n_min: usize,
    pub n_max: usize,
    pub node_min: f64,
    pub node_max: f64,
    pub separation_floor: f64,
    /// Trials per function.
    pub trials: usize,
    pub seed: u64,
    pub max_order: usize,
    /// Fault injection for exercising the violation path; see
    /// [`SandwichOptions::upper_shift`].
    #[serde(default, skip_serializing_if = "is_zero")]
    pub upper_shift: f64,
}

impl CampaignConfig {
    pub fn new(functions: Vec<CatalogFunction>, trials: usize, seed: u64) -> Self {
        Self {
            functions,
            n_min: 2,
            n_max: 6,
            node_min: 0.1,
            node_max: 50.0,
            separation_floor: 1e-2,
            trials,
            seed,
            max_order: DEFAULT_MAX_ORDER,
            upper_shift: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.functions.is_empty() {
            return Err(VerifyError::EmptySelection);
        }
        validate_common(
            self.trials,
            self.n_min,
            self.n_max,
            self.node_min,
            self.node_max,
            self.separation_floor,
        )?;
        if self.n_max - 1 > self.max_order {
            return Err(VerifyError::OrderOutOfRange {
                order: self.n_max - 1,
                cap: self.max_order,
            });
        }
        Ok(())
    }
}

fn validate_common(
    trials: usize,
    n_min: usize,
    n_max: usize,
    lo: f64,
    hi: f64,
    floor: f64,
) -> Result<()> {
    if trials == 0 {
        return Err(VerifyError::BadConfig("trials must be at least 1".into()));
    }
    if n_min == 0 || n_min > n_max {
        return Err(VerifyError::BadConfig(format!(
            "bad node-count range [{n_min}, {n_max}]"
        )));
    }
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(VerifyError::BadConfig(format!(
            "bad node range [{lo}, {hi}]"
        )));
    }
    if !(floor > 0.0 && floor.is_finite()) {
        return Err(VerifyError::BadConfig(format!(
            "bad separation floor {floor}"
        )));
    }
    if (n_max - 1) as f64 * floor > hi - lo {
        return Err(VerifyError::InfeasibleSeparation {
            n: n_max,
            lo,
            hi,
            floor,
        });
    }
    Ok(())
}

/// Sandwich check at one endpoint pair, as recorded in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointCheck {
    pub a: f64,
    pub b: ExtendedReal,
    pub lower: ExtendedReal,
    pub upper: ExtendedReal,
    pub margin_lower: ExtendedReal,
    pub margin_upper: ExtendedReal,
    pub verdict: Verdict,
}

impl From<&SandwichResult> for EndpointCheck {
    fn from(r: &SandwichResult) -> Self {
        Self {
            a: r.a,
            b: r.b,
            lower: r.lower,
            upper: r.upper,
            margin_lower: r.margin_lower,
            margin_upper: r.margin_upper,
            verdict: r.verdict,
        }
    }
}

/// One trial. The top-level bound fields describe the check with `a = 0`,
/// `b = ∞`; `interior` holds the check at randomized finite endpoints, and
/// `verdict` is the worst verdict across all checks of the trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub function: CatalogFunction,
    pub n: usize,
    pub nodes: Vec<f64>,
    pub s_value: f64,
    pub lower: ExtendedReal,
    pub upper: ExtendedReal,
    pub margin_lower: ExtendedReal,
    pub margin_upper: ExtendedReal,
    pub verdict: Verdict,
    pub strict_expected: bool,
    pub interior: EndpointCheck,
    pub gen_margin: f64,
}

impl TrialRecord {
    pub fn min_margin(&self) -> ExtendedReal {
        [
            self.margin_lower,
            self.margin_upper,
            self.interior.margin_lower,
            self.interior.margin_upper,
        ]
        .into_iter()
        .min()
        .expect("non-empty")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub pass: usize,
    pub pass_nonstrict: usize,
    pub violation: usize,
    /// Trials of strict functions whose margins were not clearly positive.
    pub strict_shortfall: usize,
    pub worst_margin: ExtendedReal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: CampaignConfig,
    pub trials: Vec<TrialRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn has_violation(&self) -> bool {
        self.summary.violation > 0
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` within a campaign seeded with `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo >= hi {
        return lo;
    }
    rng.random_range(lo.ln()..hi.ln()).exp()
}

/// Draws `n` log-uniform nodes from `[lo, hi]`, rejecting draws whose
/// closest pair is nearer than `floor`.
pub fn sample_nodes<R: Rng>(
    rng: &mut R,
    n: usize,
    lo: f64,
    hi: f64,
    floor: f64,
) -> Result<NodeSet> {
    if n == 0 || (n - 1) as f64 * floor > hi - lo {
        return Err(VerifyError::InfeasibleSeparation { n, lo, hi, floor });
    }
    for _ in 0..MAX_REJECTIONS {
        let nodes: Vec<f64> = (0..n).map(|_| log_uniform(rng, lo, hi)).collect();
        let mut sorted = nodes.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).all(|w| w[1] - w[0] >= floor) {
            return Ok(NodeSet::with_floor(nodes, floor)?);
        }
    }
    Err(VerifyError::InfeasibleSeparation { n, lo, hi, floor })
}

struct TrialDraw {
    nodes: NodeSet,
    a: f64,
    b: f64,
}

fn draw_trial(config: &CampaignConfig, trial: usize) -> Result<TrialDraw> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, trial as u64));
    let n = rng.random_range(config.n_min..=config.n_max);
    let nodes = sample_nodes(
        &mut rng,
        n,
        config.node_min,
        config.node_max,
        config.separation_floor,
    )?;
    let m = nodes.min();
    let a = log_uniform(&mut rng, m * 10f64.powf(-INTERIOR_A_DECADES), m).min(m);
    let big_m = nodes.max();
    let b = log_uniform(&mut rng, big_m, INTERIOR_B_FACTOR * big_m).max(big_m);
    Ok(TrialDraw { nodes, a, b })
}

fn run_one(
    f: &CatalogFunction,
    trial: usize,
    draw: &TrialDraw,
    opts: SandwichOptions,
) -> Result<TrialRecord> {
    let at_limits = check_sandwich_with(f, &draw.nodes, 0.0, ExtendedReal::PosInfinity, opts)?;
    let interior = check_sandwich_with(f, &draw.nodes, draw.a, ExtendedReal::Finite(draw.b), opts)?;
    let gen = check_gen_inequality(&draw.nodes)?;
    let verdict = at_limits.verdict.worst(interior.verdict).worst(gen.verdict);
    Ok(TrialRecord {
        trial,
        function: *f,
        n: at_limits.n,
        nodes: draw.nodes.as_slice().to_vec(),
        s_value: at_limits.s_value,
        lower: at_limits.lower,
        upper: at_limits.upper,
        margin_lower: at_limits.margin_lower,
        margin_upper: at_limits.margin_upper,
        verdict,
        strict_expected: at_limits.strict_expected,
        interior: EndpointCheck::from(&interior),
        gen_margin: gen.margin,
    })
}

/// Runs the sandwich campaign: for each selected function and each trial, the
/// bound check with `(a, b) = (0, ∞)`, the check at randomized interior
/// endpoints, and the product inequality on the same nodes.
pub fn run_trials(config: &CampaignConfig) -> Result<VerificationReport> {
    config.validate()?;
    let opts = SandwichOptions {
        upper_shift: config.upper_shift,
    };
    let draws: Vec<TrialDraw> = (0..config.trials)
        .into_par_iter()
        .map(|t| draw_trial(config, t))
        .collect::<Result<_>>()?;

    let jobs: Vec<(usize, usize)> = (0..config.functions.len())
        .flat_map(|fi| (0..config.trials).map(move |t| (fi, t)))
        .collect();
    let trials: Vec<TrialRecord> = jobs
        .into_par_iter()
        .map(|(fi, t)| run_one(&config.functions[fi], t, &draws[t], opts))
        .collect::<Result<_>>()?;

    let summary = summarize(&trials);
    Ok(VerificationReport {
        config: config.clone(),
        trials,
        summary,
    })
}

fn summarize(trials: &[TrialRecord]) -> Summary {
    let count = |v: Verdict| trials.iter().filter(|t| t.verdict == v).count();
    Summary {
        trials: trials.len(),
        pass: count(Verdict::Pass),
        pass_nonstrict: count(Verdict::PassNonstrict),
        violation: count(Verdict::Violation),
        strict_shortfall: trials
            .iter()
            .filter(|t| t.strict_expected && t.verdict == Verdict::PassNonstrict)
            .count(),
        worst_margin: trials
            .iter()
            .map(TrialRecord::min_margin)
            .min()
            .unwrap_or(ExtendedReal::PosInfinity),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenCampaignConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub node_min: f64,
    pub node_max: f64,
    pub separation_floor: f64,
    pub trials: usize,
    pub seed: u64,
    /// Probability that a trial replaces one node with zero.
    pub zero_fraction: f64,
    /// Fault injection: lowers the right-hand side by this amount.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub rhs_shift: f64,
}

impl GenCampaignConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            n_min: 2,
            n_max: 6,
            node_min: 0.1,
            node_max: 50.0,
            separation_floor: 1e-2,
            trials,
            seed,
            zero_fraction: 0.25,
            rhs_shift: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenTrial {
    pub trial: usize,
    #[serde(flatten)]
    pub result: GenResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSummary {
    pub trials: usize,
    pub pass: usize,
    pub pass_nonstrict: usize,
    pub violation: usize,
    pub equality_cases: usize,
    pub worst_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<GenCampaignConfig>,
    pub trials: Vec<GenTrial>,
    pub summary: GenSummary,
}

impl GenReport {
    pub fn from_results(config: Option<GenCampaignConfig>, results: Vec<GenResult>) -> Self {
        let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
        let summary = GenSummary {
            trials: results.len(),
            pass: count(Verdict::Pass),
            pass_nonstrict: count(Verdict::PassNonstrict),
            violation: count(Verdict::Violation),
            equality_cases: results.iter().filter(|r| r.equality_expected).count(),
            worst_margin: results
                .iter()
                .map(|r| r.margin)
                .fold(f64::INFINITY, f64::min),
        };
        let trials = results
            .into_iter()
            .enumerate()
            .map(|(trial, result)| GenTrial { trial, result })
            .collect();
        Self {
            config,
            trials,
            summary,
        }
    }

    pub fn has_violation(&self) -> bool {
        self.summary.violation > 0
    }
}

/// Product-inequality campaign over non-negative node sets, a share of which
/// contain a zero node.
pub fn run_gen_trials(config: &GenCampaignConfig) -> Result<GenReport> {
    validate_common(
        config.trials,
        config.n_min,
        config.n_max,
        config.node_min,
        config.node_max,
        config.separation_floor,
    )?;
    if !(0.0..=1.0).contains(&config.zero_fraction) {
        return Err(VerifyError::BadConfig(format!(
            "zero fraction {} outside [0, 1]",
            config.zero_fraction
        )));
    }
    let results: Vec<GenResult> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, t as u64));
            let n = rng.random_range(config.n_min..=config.n_max);
            let nodes = sample_nodes(
                &mut rng,
                n,
                config.node_min,
                config.node_max,
                config.separation_floor,
            )?;
            let nodes = if rng.random_bool(config.zero_fraction) {
                let mut v = nodes.as_slice().to_vec();
                let i = rng.random_range(0..v.len());
                v[i] = 0.0;
                NodeSet::with_floor(v, config.separation_floor.min(config.node_min))?
            } else {
                nodes
            };
            check_gen_inequality_with(&nodes, config.rhs_shift)
        })
        .collect::<Result<_>>()?;
    Ok(GenReport::from_results(Some(config.clone()), results))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Params;

    #[test]
    fn derived_seeds_differ() {
        let a: Vec<u64> = (0..100).map(|i| derive_seed(42, i)).collect();
        let mut b = a.clone();
        b.sort();
        b.dedup();
        assert_eq!(b.len(), 100);
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
    }

    #[test]
    fn sampled_nodes_respect_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..8 {
            let nodes = sample_nodes(&mut rng, n, 0.1, 50.0, 1e-3).unwrap();
            assert_eq!(nodes.len(), n);
            assert!(nodes.min() >= 0.1 && nodes.max() <= 50.0);
            assert!(nodes.min_separation() >= 1e-3);
        }
        assert!(matches!(
            sample_nodes(&mut rng, 5, 1.0, 1.01, 0.1),
            Err(VerifyError::InfeasibleSeparation { .. })
        ));
    }

    #[test]
    fn exp_decay_campaign_has_no_violations() {
        let f = CatalogFunction::exp_decay(1.0).unwrap();
        let mut cfg = CampaignConfig::new(vec![f], 1000, 42);
        cfg.n_max = 5;
        let r = run_trials(&cfg).unwrap();
        assert_eq!(r.summary.trials, 1000);
        assert_eq!(r.trials.len(), r.summary.trials);
        assert_eq!(r.summary.violation, 0);
        assert_eq!(r.summary.pass, 1000);
    }

    #[test]
    fn single_trial_is_reproducible() {
        let cfg = CampaignConfig::new(CatalogFunction::all(Params::default()).unwrap(), 1, 7);
        assert_eq!(run_trials(&cfg).unwrap(), run_trials(&cfg).unwrap());
    }

    #[test]
    fn records_are_ordered_by_function_then_trial() {
        let fs = vec![
            CatalogFunction::log1p_over_x(),
            CatalogFunction::exp_decay(2.0).unwrap(),
        ];
        let r = run_trials(&CampaignConfig::new(fs.clone(), 3, 5)).unwrap();
        let keys: Vec<_> = r.trials.iter().map(|t| (t.function, t.trial)).collect();
        let want: Vec<_> = fs
            .iter()
            .flat_map(|f| (0..3).map(move |t| (*f, t)))
            .collect();
        assert_eq!(keys, want);
        // nodes are shared across functions for the same trial index
        assert_eq!(r.trials[1].nodes, r.trials[4].nodes);
    }

    #[test]
    fn config_validation() {
        let f = CatalogFunction::log1p_over_x();
        assert_eq!(
            run_trials(&CampaignConfig::new(vec![], 3, 1)),
            Err(VerifyError::EmptySelection)
        );
        let mut c = CampaignConfig::new(vec![f], 0, 1);
        assert!(matches!(run_trials(&c), Err(VerifyError::BadConfig(_))));
        c.trials = 1;
        c.n_max = 20;
        c.max_order = 16;
        assert!(matches!(
            run_trials(&c),
            Err(VerifyError::OrderOutOfRange { .. })
        ));
        c.n_max = 6;
        c.node_max = 0.101;
        assert!(matches!(
            run_trials(&c),
            Err(VerifyError::InfeasibleSeparation { .. })
        ));
    }

    #[test]
    fn gen_campaign_mixes_zero_nodes() {
        let r = run_gen_trials(&GenCampaignConfig::new(200, 3)).unwrap();
        assert_eq!(r.summary.trials, 200);
        assert!(r.summary.equality_cases > 20 && r.summary.equality_cases < 100);
        assert_eq!(r.summary.violation, 0);
    }
}
