//! Exact errors under finite distributions, seeded sampling and Monte-Carlo
//! sample-complexity estimation.
//!
//! All randomness flows from a `u64` seed through ChaCha8 streams: trial `t`
//! at sample size `m` uses stream `(m << 32) | t`, so results do not depend
//! on how trials are scheduled across threads.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypothesis::{Budget, Hypothesis, HypothesisClass, Instance, Label};
use crate::learners::Erm;
use crate::parallel::map_indexed;

/// Two-sided 95% standard normal quantile.
pub const Z95: f64 = 1.959963984540054;

const SUM_TOLERANCE: f64 = 1e-12;

/// A probability table over `0..d x 0..k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDistribution", into = "RawDistribution")]
pub struct DiscreteDistribution {
    d: usize,
    k: usize,
    /// Positive-mass pairs in canonical `(x, y)` order.
    entries: Vec<(Instance, Label, f64)>,
    cumulative: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RawDistribution {
    d: usize,
    k: usize,
    entries: Vec<(Instance, Label, f64)>,
}

impl TryFrom<RawDistribution> for DiscreteDistribution {
    type Error = Error;

    fn try_from(raw: RawDistribution) -> Result<Self> {
        DiscreteDistribution::new(raw.d, raw.k, raw.entries)
    }
}

impl From<DiscreteDistribution> for RawDistribution {
    fn from(dist: DiscreteDistribution) -> Self {
        RawDistribution {
            d: dist.d,
            k: dist.k,
            entries: dist.entries,
        }
    }
}

impl DiscreteDistribution {
    /// Repeated pairs are merged; zero-mass pairs are dropped.
    pub fn new(d: usize, k: usize, entries: impl IntoIterator<Item = (Instance, Label, f64)>) -> Result<Self> {
        let mut table: BTreeMap<(Instance, Label), f64> = BTreeMap::new();
        for (x, y, p) in entries {
            if x >= d || y as usize >= k {
                return Err(Error::arg(format!("pair ({x}, {y}) outside domain {d} x labels {k}")));
            }
            if !(p >= 0.0 && p.is_finite()) {
                return Err(Error::arg(format!("probability {p} of pair ({x}, {y}) is not a non-negative number")));
            }
            *table.entry((x, y)).or_insert(0.0) += p;
        }
        let entries: Vec<(Instance, Label, f64)> = table
            .into_iter()
            .filter(|&(_, p)| p > 0.0)
            .map(|((x, y), p)| (x, y, p))
            .collect();
        let total: f64 = entries.iter().map(|e| e.2).sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::arg(format!("probabilities sum to {total}, not 1")));
        }
        let cumulative = entries
            .iter()
            .scan(0.0, |acc, e| {
                *acc += e.2;
                Some(*acc)
            })
            .collect();
        Ok(DiscreteDistribution {
            d,
            k,
            entries,
            cumulative,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("distribution serializes")
    }

    /// Labels every instance of `marginal` by `f`.
    pub fn labeled_by(f: &Hypothesis, k: usize, marginal: &[f64]) -> Result<Self> {
        if marginal.len() != f.table().len() {
            return Err(Error::arg("marginal and hypothesis have different domain sizes"));
        }
        Self::new(
            marginal.len(),
            k,
            marginal.iter().enumerate().map(|(x, &p)| (x, f.label(x), p)),
        )
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[(Instance, Label, f64)] {
        &self.entries
    }

    pub fn label_marginal(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.k];
        for &(_, y, p) in &self.entries {
            out[y as usize] += p;
        }
        out
    }

    /// Whether every instance in the support carries a single label.
    pub fn is_deterministic(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].0 != w[1].0)
    }

    fn draw(&self, rng: &mut impl Rng) -> (Instance, Label) {
        let u: f64 = rng.gen::<f64>() * self.cumulative.last().copied().unwrap_or(1.0);
        let i = self.cumulative.partition_point(|&c| c <= u).min(self.entries.len() - 1);
        (self.entries[i].0, self.entries[i].1)
    }

    fn check_shape(&self, class: &HypothesisClass) -> Result<()> {
        if class.d() != self.d || class.k() != self.k {
            return Err(Error::arg(format!(
                "distribution is over {} x {} but the class over {} x {}",
                self.d,
                self.k,
                class.d(),
                class.k()
            )));
        }
        Ok(())
    }
}

/// `P(h(x) != y)`.
pub fn true_error(h: &Hypothesis, dist: &DiscreteDistribution) -> Result<f64> {
    if h.table().len() != dist.d {
        return Err(Error::arg(format!(
            "hypothesis over {} instances, distribution over {}",
            h.table().len(),
            dist.d
        )));
    }
    Ok(error_unchecked(h, dist))
}

fn error_unchecked(h: &Hypothesis, dist: &DiscreteDistribution) -> f64 {
    dist.entries.iter().filter(|&&(x, y, _)| h.label(x) != y).map(|e| e.2).sum()
}

/// `min_{h in H} P(h(x) != y)`.
pub fn approximation_error(class: &HypothesisClass, dist: &DiscreteDistribution) -> Result<f64> {
    dist.check_shape(class)?;
    Ok(class
        .hypotheses()
        .iter()
        .map(|h| error_unchecked(h, dist))
        .fold(f64::INFINITY, f64::min))
}

/// `m` i.i.d. draws by inverse CDF over the canonical pair order.
pub fn draw_sample(dist: &DiscreteDistribution, m: usize, rng: &mut impl Rng) -> Vec<(Instance, Label)> {
    (0..m).map(|_| dist.draw(rng)).collect()
}

pub fn draw_sample_seeded(dist: &DiscreteDistribution, m: usize, seed: u64) -> Vec<(Instance, Label)> {
    draw_sample(dist, m, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// The generator for trial `trial` of an experiment at sample size `m`.
pub fn trial_rng(seed: u64, m: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((m << 32) | (trial & 0xffff_ffff));
    rng
}

/// Instance marginal of the lower-bound distribution: `1 - 2 eps` on the
/// first witness instance and `2 eps / (d - 1)` on each of the others.
pub fn badlb_marginal(d: usize, epsilon: f64) -> Result<Vec<f64>> {
    if d < 2 {
        return Err(Error::arg(format!("witness size must be >= 2, got {d}")));
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::arg(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    let rest = 2.0 * epsilon / (d - 1) as f64;
    Ok(std::iter::once(1.0 - 2.0 * epsilon)
        .chain(std::iter::repeat_n(rest, d - 1))
        .collect())
}

/// The lower-bound distribution placed on the witness set `set` of a class
/// over `d_total x k`, labeled by `f0`.
pub fn badlb_distribution(
    set: &[Instance],
    f0: &[Label],
    d_total: usize,
    k: usize,
    epsilon: f64,
) -> Result<DiscreteDistribution> {
    if set.len() != f0.len() {
        return Err(Error::arg("witness set and labels differ in length"));
    }
    let marginal = badlb_marginal(set.len(), epsilon)?;
    DiscreteDistribution::new(
        d_total,
        k,
        set.iter().zip(f0).zip(marginal).map(|((&x, &y), p)| (x, y, p)),
    )
}

/// A failure-rate estimate with its Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub m: u64,
    pub failures: u64,
    pub trials: u64,
    pub rate: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Wilson score interval for `successes` out of `n` at normal quantile `z`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n_f = n as f64;
    let p = successes as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let center = (p + z2 / (2.0 * n_f)) / denom;
    let half = z * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt() / denom;
    let lower = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let upper = if successes == n { 1.0 } else { (center + half).min(1.0) };
    (lower, upper)
}

impl RateEstimate {
    pub fn new(m: u64, failures: u64, trials: u64) -> Self {
        let (lower, upper) = wilson_interval(failures, trials, Z95);
        RateEstimate {
            m,
            failures,
            trials,
            rate: if trials == 0 { 0.0 } else { failures as f64 / trials as f64 },
            lower,
            upper,
        }
    }
}

fn excess_exceeds(erm: &Erm<'_>, dist: &DiscreteDistribution, sample: &[(Instance, Label)], floor: f64, epsilon: f64) -> bool {
    let h = erm.class().get(erm.fit(sample).index);
    error_unchecked(h, dist) - floor > epsilon + SUM_TOLERANCE
}

/// Fraction of `trials` size-`m` samples on which the learner's excess
/// error exceeds `epsilon`.
pub fn failure_rate(
    erm: &Erm<'_>,
    dist: &DiscreteDistribution,
    m: u64,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<RateEstimate> {
    dist.check_shape(erm.class())?;
    let floor = approximation_error(erm.class(), dist)?;
    let fails = map_indexed(trials, |t| {
        let sample = draw_sample(dist, m as usize, &mut trial_rng(seed, m, t));
        excess_exceeds(erm, dist, &sample, floor, epsilon)
    });
    Ok(RateEstimate::new(m, fails.iter().filter(|&&f| f).count() as u64, trials))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleComplexityEstimate {
    pub epsilon: f64,
    pub delta: f64,
    /// Smallest tested `m` whose interval upper bound is at most `delta`;
    /// `None` when even `m_max` failed.
    pub m_hat: Option<u64>,
    pub exceeded_m_max: bool,
    pub m_max: u64,
    /// The estimate at `m_hat`, or at `m_max` when the search gave up.
    pub failure_rate_at_m: RateEstimate,
    /// Every tested sample size, ascending.
    pub tested: Vec<RateEstimate>,
    pub trials: u64,
    pub seed: u64,
    pub interval: String,
}

/// Doubling search for a passing sample size, then bisection down to the
/// smallest passing one.
pub fn estimate_sample_complexity(
    erm: &Erm<'_>,
    dist: &DiscreteDistribution,
    epsilon: f64,
    delta: f64,
    trials: u64,
    seed: u64,
    m_max: u64,
) -> Result<SampleComplexityEstimate> {
    if trials < 100 {
        return Err(Error::arg(format!("at least 100 trials are needed, got {trials}")));
    }
    if !(delta > 0.0 && delta < 1.0) || !(0.0..1.0).contains(&epsilon) {
        return Err(Error::arg(format!("need epsilon in [0,1) and delta in (0,1), got {epsilon}, {delta}")));
    }
    if m_max == 0 {
        return Err(Error::arg("m_max must be >= 1"));
    }
    let mut tested: BTreeMap<u64, RateEstimate> = BTreeMap::new();
    let passes = |m: u64, tested: &mut BTreeMap<u64, RateEstimate>| -> Result<bool> {
        let est = failure_rate(erm, dist, m, epsilon, trials, seed)?;
        tested.insert(m, est);
        Ok(est.upper <= delta)
    };
    let (mut lo, mut hi) = (0u64, None);
    let mut m = 1u64;
    loop {
        if passes(m, &mut tested)? {
            hi = Some(m);
            break;
        }
        lo = m;
        if m == m_max {
            break;
        }
        m = (m * 2).min(m_max);
    }
    if let Some(mut h) = hi {
        while h - lo > 1 {
            let mid = lo + (h - lo) / 2;
            if passes(mid, &mut tested)? {
                h = mid;
            } else {
                lo = mid;
            }
        }
        hi = Some(h);
    }
    let at = hi.unwrap_or(m_max);
    Ok(SampleComplexityEstimate {
        epsilon,
        delta,
        m_hat: hi,
        exceeded_m_max: hi.is_none(),
        m_max,
        failure_rate_at_m: tested[&at],
        tested: tested.into_values().collect(),
        trials,
        seed,
        interval: "wilson_95".into(),
    })
}

/// Exact probability that the learner's excess error exceeds `epsilon` on a
/// size-`m` sample, for a distribution realized by the class.
///
/// On a realizable sample every policy's output depends only on which
/// support pairs were drawn, so the probability splits over support subsets
/// `T` with `P(drawn set = T) = sum_{U ⊆ T} (-1)^{|T|-|U|} P(U)^m`.
pub fn exact_failure_probability(
    erm: &Erm<'_>,
    dist: &DiscreteDistribution,
    m: u64,
    epsilon: f64,
    budget: &Budget,
) -> Result<f64> {
    dist.check_shape(erm.class())?;
    let support: Vec<(Instance, Label)> = dist.entries.iter().map(|&(x, y, _)| (x, y)).collect();
    if !erm.class().is_realizable(&support) {
        return Err(Error::arg("exact failure probability needs a distribution realized by the class"));
    }
    let n = support.len();
    Budget::check(budget.enumeration, 1u128 << n.min(127), "support subsets")?;
    let masses: Vec<f64> = dist.entries.iter().map(|e| e.2).collect();
    // g[U] = P(U)^m, then Möbius inversion over the subset lattice
    let mut g: Vec<f64> = (0..1usize << n)
        .map(|u| {
            let mass: f64 = (0..n).filter(|i| u >> i & 1 == 1).map(|i| masses[i]).sum();
            mass.powf(m as f64)
        })
        .collect();
    for i in 0..n {
        for u in 0..1usize << n {
            if u >> i & 1 == 1 {
                g[u] -= g[u ^ (1 << i)];
            }
        }
    }
    let floor = approximation_error(erm.class(), dist)?;
    let mut total = 0.0;
    for (t, &p) in g.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let sample: Vec<(Instance, Label)> = (0..n).filter(|i| t >> i & 1 == 1).map(|i| support[i]).collect();
        if excess_exceeds(erm, dist, &sample, floor, epsilon) {
            total += p;
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// The Chernoff-style bound with `gamma = alpha^2 / sum_l phat_l^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChernBound {
    pub gamma: f64,
    /// `ln` of the unclamped bound `(8 k e / gamma^2)^(gamma / 2)`.
    pub ln_raw: f64,
    /// The unclamped bound; may overflow to infinity or underflow to zero.
    pub raw: f64,
    /// The bound clamped to `[0, 1]`.
    pub value: f64,
}

pub fn chern_substitute_bound(alpha: f64, phat: &[f64], k: usize) -> Result<ChernBound> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::arg(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if k == 0 || phat.iter().any(|&p| p.is_nan() || p < 0.0) {
        return Err(Error::arg("label frequencies must be non-negative and k >= 1"));
    }
    let total: f64 = phat.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::arg(format!("label frequencies sum to {total}, not 1")));
    }
    let gamma = alpha * alpha / phat.iter().map(|p| p * p).sum::<f64>();
    let ln_raw = gamma / 2.0 * ((8.0 * k as f64).ln() + 1.0 - 2.0 * gamma.ln());
    let raw = ln_raw.exp();
    Ok(ChernBound {
        gamma,
        ln_raw,
        raw,
        value: raw.clamp(0.0, 1.0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BijectionExperimentReport {
    pub trials: u64,
    pub alpha: f64,
    /// Number of bijections whose relabeled class has approximation error `>= 1 - alpha`.
    pub count: u64,
    /// `count / trials`; absent when no trials were run.
    pub fraction: Option<f64>,
    pub chern: ChernBound,
    pub seed: u64,
}

/// Approximation error of `{phi ∘ h : h in H}` under `dist`.
pub fn relabeled_approximation_error(class: &HypothesisClass, phi: &[Label], dist: &DiscreteDistribution) -> f64 {
    class
        .hypotheses()
        .iter()
        .map(|h| {
            dist.entries
                .iter()
                .filter(|&&(x, y, _)| phi[h.label(x) as usize] != y)
                .map(|e| e.2)
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Draws uniform label bijections and measures how often the relabeled class
/// fits the balanced distribution badly.
pub fn random_bijection_experiment(
    class: &HypothesisClass,
    dist: &DiscreteDistribution,
    alpha: f64,
    trials: u64,
    seed: u64,
) -> Result<BijectionExperimentReport> {
    dist.check_shape(class)?;
    let k = class.k();
    let marginal = dist.label_marginal();
    let cap = 10.0 / k as f64;
    if let Some((l, &p)) = marginal.iter().enumerate().find(|(_, &p)| p > cap + SUM_TOLERANCE) {
        return Err(Error::arg(format!("distribution is not balanced: label {l} has mass {p} > 10/k = {cap}")));
    }
    let chern = chern_substitute_bound(alpha, &marginal, k)?;
    let hits = map_indexed(trials, |t| {
        let mut phi: Vec<Label> = (0..k as Label).collect();
        phi.shuffle(&mut trial_rng(seed, 0, t));
        relabeled_approximation_error(class, &phi, dist) >= 1.0 - alpha - SUM_TOLERANCE
    });
    let count = hits.iter().filter(|&&h| h).count() as u64;
    Ok(BijectionExperimentReport {
        trials,
        alpha,
        count,
        fraction: (trials > 0).then(|| count as f64 / trials as f64),
        chern,
        seed,
    })
}

/// Number of distinct instances drawn, for reporting.
pub fn distinct_instances(sample: &[(Instance, Label)]) -> usize {
    sample.iter().map(|&(x, _)| x).collect::<BTreeSet<_>>().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::ErmPolicy;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn true_error_examples() {
        let h = Hypothesis::new(vec![1, 0]);
        let point = DiscreteDistribution::new(2, 3, [(0, 1, 1.0)]).unwrap();
        assert_eq!(true_error(&h, &point).unwrap(), 0.0);
        let off = DiscreteDistribution::new(2, 3, [(0, 0, 0.25), (0, 2, 0.25), (1, 1, 0.25), (1, 2, 0.25)]).unwrap();
        assert_eq!(true_error(&h, &off).unwrap(), 1.0);
        let c = Hypothesis::new(vec![0]);
        let mix = DiscreteDistribution::new(1, 2, [(0, 0, 0.7), (0, 1, 0.3)]).unwrap();
        assert!((true_error(&c, &mix).unwrap() - 0.3).abs() < 1e-15);
        assert!(true_error(&Hypothesis::new(vec![0, 0, 0]), &mix).is_err());
    }

    #[test]
    fn approximation_error_examples() {
        let full = HypothesisClass::full(2, 2, &b()).unwrap();
        let det = DiscreteDistribution::new(2, 2, [(0, 1, 0.5), (1, 0, 0.5)]).unwrap();
        assert_eq!(approximation_error(&full, &det).unwrap(), 0.0);
        let c2 = HypothesisClass::cantor(2).unwrap();
        let d = DiscreteDistribution::new(2, 5, [(0, 1, 0.5), (1, 4, 0.5)]).unwrap();
        assert_eq!(approximation_error(&c2, &d).unwrap(), 0.0);
        let single = HypothesisClass::new(1, 2, [vec![0]]).unwrap();
        let mix = DiscreteDistribution::new(1, 2, [(0, 0, 0.7), (0, 1, 0.3)]).unwrap();
        assert!((approximation_error(&single, &mix).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn distribution_validation_and_json() {
        assert!(DiscreteDistribution::new(1, 2, [(0, 0, 0.5)]).is_err());
        assert!(DiscreteDistribution::new(1, 2, [(1, 0, 1.0)]).is_err());
        assert!(DiscreteDistribution::new(1, 2, [(0, 0, 1.5), (0, 1, -0.5)]).is_err());
        let d = DiscreteDistribution::from_json(r#"{"d":2,"k":2,"entries":[[1,0,0.25],[0,1,0.75]]}"#).unwrap();
        assert_eq!(d.entries(), &[(0, 1, 0.75), (1, 0, 0.25)]);
        assert_eq!(DiscreteDistribution::from_json(&d.to_json()).unwrap(), d);
        assert!(DiscreteDistribution::from_json(r#"{"d":1,"k":1,"entries":[[0,0,0.5]]}"#).is_err());
    }

    #[test]
    fn sampling_examples() {
        let point = DiscreteDistribution::new(2, 2, [(0, 1, 1.0)]).unwrap();
        assert_eq!(draw_sample_seeded(&point, 3, 9), vec![(0, 1); 3]);
        assert!(draw_sample_seeded(&point, 0, 9).is_empty());
        let d = DiscreteDistribution::new(2, 2, [(0, 0, 0.3), (1, 1, 0.7)]).unwrap();
        assert_eq!(draw_sample_seeded(&d, 50, 4), draw_sample_seeded(&d, 50, 4));
    }

    #[test]
    fn badlb_examples() {
        let m = badlb_marginal(4, 0.1).unwrap();
        assert!((m[0] - 0.8).abs() < 1e-15);
        assert!(m[1..].iter().all(|p| (p - 0.2 / 3.0).abs() < 1e-15));
        let m = badlb_marginal(2, 0.05).unwrap();
        assert!((m[0] - 0.9).abs() < 1e-15 && (m[1] - 0.1).abs() < 1e-15);
        assert!(badlb_marginal(1, 0.1).is_err());
        assert!(badlb_marginal(3, 0.5).is_err());
        assert!(badlb_marginal(3, 0.0).is_err());
    }

    #[test]
    fn wilson_reference_values() {
        let (lo, hi) = wilson_interval(0, 100, Z95);
        assert_eq!(lo, 0.0);
        assert_eq!(wilson_interval(100, 100, Z95).1, 1.0);
        assert!((hi - 0.036995).abs() < 1e-5);
        let (lo, hi) = wilson_interval(50, 100, Z95);
        assert!((lo - 0.403832).abs() < 1e-5 && (hi - 0.596168).abs() < 1e-5);
    }

    #[test]
    fn singleton_class_needs_one_example() {
        let single = HypothesisClass::new(2, 2, [vec![0, 1]]).unwrap();
        let d = DiscreteDistribution::new(2, 2, [(0, 0, 0.5), (1, 1, 0.5)]).unwrap();
        let erm = Erm::new(&ErmPolicy::Generic, &single, &b()).unwrap();
        let est = estimate_sample_complexity(&erm, &d, 0.1, 0.1, 200, 1, 64).unwrap();
        assert_eq!(est.m_hat, Some(1));
        assert!(!est.exceeded_m_max);
    }

    #[test]
    fn search_reports_ceiling() {
        let c = HypothesisClass::cantor(4).unwrap();
        let erm = Erm::new(&ErmPolicy::Bad { witness: None }, &c, &b()).unwrap();
        let d = badlb_distribution(&[0, 1, 2, 3], &[16; 4], 4, 17, 0.2).unwrap();
        let est = estimate_sample_complexity(&erm, &d, 0.01, 0.01, 100, 3, 2).unwrap();
        assert!(est.exceeded_m_max);
        assert_eq!(est.m_hat, None);
        assert_eq!(est.failure_rate_at_m.m, 2);
        assert!(estimate_sample_complexity(&erm, &d, 0.2, 0.1, 99, 3, 8).is_err());
    }

    #[test]
    fn chern_examples() {
        let u = vec![1.0 / 1024.0; 1024];
        let c = chern_substitute_bound(0.5, &u, 1024).unwrap();
        assert!((c.gamma - 256.0).abs() < 1e-9);
        let base: f64 = 8.0 * 1024.0 * std::f64::consts::E / 65536.0;
        assert!((c.ln_raw - 128.0 * base.ln()).abs() < 1e-9);
        assert!(c.value < 1e-50);
        let c = chern_substitute_bound(0.5, &[1.0 / 16.0; 16], 16).unwrap();
        assert!((c.gamma - 4.0).abs() < 1e-12);
        assert!((c.raw - (8.0 * std::f64::consts::E).powi(2)).abs() < 1e-9);
        assert_eq!(c.value, 1.0);
        let mut point = vec![0.0; 5];
        point[2] = 1.0;
        let c = chern_substitute_bound(1.0, &point, 5).unwrap();
        assert_eq!(c.gamma, 1.0);
        assert!((c.raw - (40.0 * std::f64::consts::E).sqrt()).abs() < 1e-9);
        assert_eq!(c.value, 1.0);
        assert!(chern_substitute_bound(0.0, &point, 5).is_err());
    }

    #[test]
    fn bijection_examples() {
        let single = HypothesisClass::new(1, 8, [vec![3]]).unwrap();
        let uniform = DiscreteDistribution::new(1, 8, (0..8).map(|y| (0, y, 0.125))).unwrap();
        let r = random_bijection_experiment(&single, &uniform, 0.5, 50, 2).unwrap();
        assert_eq!(r.fraction, Some(1.0));
        let r = random_bijection_experiment(&single, &uniform, 0.5, 0, 2).unwrap();
        assert_eq!((r.fraction, r.count), (None, 0));

        let full = HypothesisClass::full(2, 3, &b()).unwrap();
        let d = DiscreteDistribution::new(2, 3, [(0, 0, 0.5), (1, 2, 0.5)]).unwrap();
        let r = random_bijection_experiment(&full, &d, 0.5, 30, 5).unwrap();
        assert_eq!(r.fraction, Some(0.0));
    }

    #[test]
    fn bijection_rejects_unbalanced() {
        let c = HypothesisClass::constants(1, 20).unwrap();
        let d = DiscreteDistribution::new(1, 20, [(0, 7, 1.0)]).unwrap();
        let err = random_bijection_experiment(&c, &d, 0.5, 10, 0).unwrap_err();
        assert!(err.to_string().contains("label 7"));
    }
}
