//! ERM learners and the algorithm-dependent quantities used to bound their
//! sample complexity.
//!
//! Every learner here returns an empirical-error minimizer; they differ only
//! in which minimizer they pick. Ties are broken by canonical class order.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dimensions::{graph_dim, natarajan_dim, GShatterWitness};
use crate::error::{Error, Result};
use crate::hypothesis::{cantor_star, Budget, HypothesisClass, Instance, Label};
use crate::parallel::max_over;

/// Which minimizer an ERM learner returns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErmPolicy {
    /// Canonically first minimizer.
    Generic,
    /// Agrees with the witness function on sampled witness instances and
    /// disagrees with it on every unsampled one. Without an explicit witness
    /// the class's own maximal G-shattering witness is used.
    Bad {
        #[serde(default)]
        witness: Option<GShatterWitness>,
    },
    /// Only outputs labels seen in the sample or listed in `defaults`.
    /// Without explicit defaults, the Cantor class uses `{*}` and any other
    /// class the empty set.
    GoodObservedLabels {
        #[serde(default)]
        defaults: Option<Vec<Label>>,
    },
    /// For label-symmetric classes: a consistent hypothesis whose unobserved
    /// labels all lie in `z`.
    #[serde(rename = "symmetric_Z")]
    SymmetricZ { z: Vec<Label> },
}

impl ErmPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            ErmPolicy::Generic => "generic",
            ErmPolicy::Bad { .. } => "bad",
            ErmPolicy::GoodObservedLabels { .. } => "good_observed_labels",
            ErmPolicy::SymmetricZ { .. } => "symmetric_Z",
        }
    }
}

/// Index of the chosen hypothesis, and whether the policy had to fall back
/// to generic ERM.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErmResult {
    pub index: usize,
    pub fallback: bool,
}

#[derive(Clone, Debug)]
enum Rule {
    Generic,
    Bad { set: Vec<Instance>, f0: Vec<Label> },
    Good { defaults: BTreeSet<Label> },
    Symmetric { z: BTreeSet<Label> },
}

/// An ERM policy bound to a class, with its parameters validated once.
#[derive(Clone, Debug)]
pub struct Erm<'a> {
    class: &'a HypothesisClass,
    rule: Rule,
}

impl<'a> Erm<'a> {
    pub fn new(policy: &ErmPolicy, class: &'a HypothesisClass, budget: &Budget) -> Result<Self> {
        let rule = match policy {
            ErmPolicy::Generic => Rule::Generic,
            ErmPolicy::Bad { witness } => {
                let w = match witness {
                    Some(w) => {
                        if !w.verify(class) {
                            return Err(Error::arg("G-shatter witness is not valid for this class"));
                        }
                        w.clone()
                    }
                    None => graph_dim(class, budget)?.1,
                };
                Rule::Bad { set: w.set, f0: w.f }
            }
            ErmPolicy::GoodObservedLabels { defaults } => {
                let defaults = match defaults {
                    Some(ds) => {
                        check_labels(ds, class.k())?;
                        ds.iter().copied().collect()
                    }
                    None => default_labels(class),
                };
                Rule::Good { defaults }
            }
            ErmPolicy::SymmetricZ { z } => {
                if !class.is_symmetric() {
                    return Err(Error::arg("symmetric_Z needs a label-symmetric class"));
                }
                check_labels(z, class.k())?;
                let z: BTreeSet<Label> = z.iter().copied().collect();
                let dn = natarajan_dim(class, budget)?.0;
                if z.is_empty() || z.len() > 2 * dn + 1 {
                    return Err(Error::arg(format!(
                        "|Z| = {} must lie in 1..={} (2 d_N + 1)",
                        z.len(),
                        2 * dn + 1
                    )));
                }
                Rule::Symmetric { z }
            }
        };
        Ok(Erm { class, rule })
    }

    pub fn class(&self) -> &'a HypothesisClass {
        self.class
    }

    /// Runs the learner. The sample must lie within the class bounds.
    pub fn fit(&self, sample: &[(Instance, Label)]) -> ErmResult {
        let errors: Vec<usize> = self.class.hypotheses().iter().map(|h| h.mistakes(sample)).collect();
        let min = errors.iter().copied().min().unwrap_or(0);
        let errors = &errors;
        let minimizers = || (0..errors.len()).filter(move |&i| errors[i] == min);
        let generic = ErmResult {
            index: minimizers().next().unwrap_or(0),
            fallback: false,
        };
        let fallback = ErmResult {
            fallback: true,
            ..generic
        };
        match &self.rule {
            Rule::Generic => generic,
            Rule::Bad { set, f0 } => {
                let sampled: HashSet<Instance> = sample.iter().map(|&(x, _)| x).collect();
                let agrees_on_witness = sample.iter().all(|&(x, y)| match set.iter().position(|&w| w == x) {
                    Some(p) => f0[p] == y,
                    None => true,
                });
                if !agrees_on_witness {
                    return fallback;
                }
                minimizers()
                    .find(|&i| {
                        let h = self.class.get(i);
                        set.iter()
                            .zip(f0)
                            .all(|(&x, &y)| (h.label(x) == y) == sampled.contains(&x))
                    })
                    .map_or(fallback, |index| ErmResult { index, fallback: false })
            }
            Rule::Good { defaults } => {
                let allowed: BTreeSet<Label> = sample.iter().map(|&(_, y)| y).chain(defaults.iter().copied()).collect();
                minimizers()
                    .find(|&i| self.class.get(i).table().iter().all(|y| allowed.contains(y)))
                    .map_or(fallback, |index| ErmResult { index, fallback: false })
            }
            Rule::Symmetric { z } => {
                if min > 0 {
                    return fallback;
                }
                let observed: BTreeSet<Label> = sample.iter().map(|&(_, y)| y).collect();
                self.relabel_into(generic.index, &observed, z)
                    .or_else(|| {
                        minimizers().find(|&i| {
                            self.class
                                .get(i)
                                .table()
                                .iter()
                                .all(|y| observed.contains(y) || z.contains(y))
                        })
                    })
                    .map_or(fallback, |index| ErmResult { index, fallback: false })
            }
        }
    }

    /// Moves the unobserved labels of hypothesis `index` into `z` with a
    /// label permutation fixing every observed label.
    fn relabel_into(&self, index: usize, observed: &BTreeSet<Label>, z: &BTreeSet<Label>) -> Option<usize> {
        let h = self.class.get(index);
        let unobserved: Vec<Label> = h.range().into_iter().filter(|y| !observed.contains(y)).collect();
        let targets: Vec<Label> = z.iter().copied().filter(|y| !observed.contains(y)).collect();
        if unobserved.len() > targets.len() {
            return None;
        }
        let targets = &targets[..unobserved.len()];
        let k = self.class.k() as Label;
        let mut perm: Vec<Label> = vec![Label::MAX; k as usize];
        for &y in observed {
            perm[y as usize] = y;
        }
        for (&u, &t) in unobserved.iter().zip(targets) {
            perm[u as usize] = t;
        }
        let used: HashSet<Label> = perm.iter().copied().filter(|&y| y != Label::MAX).collect();
        let mut free = (0..k).filter(|y| !used.contains(y));
        for slot in perm.iter_mut().filter(|s| **s == Label::MAX) {
            *slot = free.next()?;
        }
        self.class.position(h.relabel(&perm).table())
    }
}

fn check_labels(labels: &[Label], k: usize) -> Result<()> {
    match labels.iter().find(|&&y| y as usize >= k) {
        Some(y) => Err(Error::arg(format!("label {y} outside 0..{k}"))),
        None => Ok(()),
    }
}

fn default_labels(class: &HypothesisClass) -> BTreeSet<Label> {
    let d = class.d();
    let looks_cantor = d <= 16 && class.k() == (1 << d) + 1 && class.len() == 1 << d;
    if looks_cantor && HypothesisClass::cantor(d).is_ok_and(|c| &c == class) {
        BTreeSet::from([cantor_star(d)])
    } else {
        BTreeSet::new()
    }
}

pub fn erm_generic(class: &HypothesisClass, sample: &[(Instance, Label)]) -> usize {
    Erm {
        class,
        rule: Rule::Generic,
    }
    .fit(sample)
    .index
}

/// Whether the growth quantities range over samples labeled by one class
/// member or over arbitrary samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Realizable,
    Agnostic,
}

/// How the supremum over double samples is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "search")]
pub enum Search {
    /// Every multiset of `2m` pairs; the exact value.
    Exhaustive,
    /// Random double samples; a lower bound on the exact value.
    MonteCarlo { trials: u64, seed: u64 },
}

fn binomial(n: u128, r: u128) -> u128 {
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Calls `f` on every non-decreasing sequence of length `len` over `0..n`.
fn for_each_multiset(n: usize, len: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, len, v, cur, f);
            cur.pop();
        }
    }
    rec(n, len, 0, &mut Vec::with_capacity(len), f);
}

/// All `m`-subsets of positions `0..2m`, as bitmasks.
fn half_masks(m: usize) -> Vec<u64> {
    (0..1u64 << (2 * m)).filter(|s| s.count_ones() as usize == m).collect()
}

/// Distinct double samples (as sorted pair lists) the supremum ranges over.
fn double_samples(class: &HypothesisClass, m: usize, mode: Mode, budget: &Budget) -> Result<Vec<Vec<(Instance, Label)>>> {
    let (d, k) = (class.d(), class.k());
    let len = 2 * m;
    let subsets = binomial(len as u128, m as u128);
    let mut out = Vec::new();
    match mode {
        Mode::Agnostic => {
            let count = binomial((d * k + len - 1) as u128, len as u128);
            Budget::check(budget.enumeration, count.saturating_mul(subsets), "agnostic double samples x sub-samples")?;
            for_each_multiset(d * k, len, &mut |pairs| {
                out.push(pairs.iter().map(|&p| (p / k, (p % k) as Label)).collect());
            });
        }
        Mode::Realizable => {
            let count = binomial((d + len - 1) as u128, len as u128).saturating_mul(class.len() as u128);
            Budget::check(budget.enumeration, count.saturating_mul(subsets), "realizable double samples x sub-samples")?;
            let mut seen = HashSet::new();
            for_each_multiset(d, len, &mut |xs| {
                for h in class.hypotheses() {
                    let s: Vec<(Instance, Label)> = xs.iter().map(|&x| (x, h.label(x))).collect();
                    if seen.insert(s.clone()) {
                        out.push(s);
                    }
                }
            });
        }
    }
    Ok(out)
}

fn random_double_sample(class: &HypothesisClass, m: usize, mode: Mode, rng: &mut ChaCha8Rng) -> Vec<(Instance, Label)> {
    let (d, k) = (class.d(), class.k());
    match mode {
        Mode::Agnostic => (0..2 * m)
            .map(|_| (rng.gen_range(0..d), rng.gen_range(0..k) as Label))
            .collect(),
        Mode::Realizable => {
            let h = class.get(rng.gen_range(0..class.len()));
            (0..2 * m)
                .map(|_| {
                    let x = rng.gen_range(0..d);
                    (x, h.label(x))
                })
                .collect()
        }
    }
}

fn sup_over_double_samples(
    erm: &Erm<'_>,
    m: usize,
    mode: Mode,
    search: Search,
    budget: &Budget,
    value: impl Fn(&Erm<'_>, &[(Instance, Label)], &[u64]) -> usize + Sync + Send,
) -> Result<usize> {
    if m == 0 || m > 31 {
        return Err(Error::arg(format!("sub-sample size m = {m} must be in 1..=31")));
    }
    let masks = half_masks(m);
    let samples = match search {
        Search::Exhaustive => double_samples(erm.class(), m, mode, budget)?,
        Search::MonteCarlo { trials, seed } => {
            Budget::check(budget.enumeration, trials as u128, "Monte-Carlo double samples")?;
            (0..trials)
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(t);
                    random_double_sample(erm.class(), m, mode, &mut rng)
                })
                .collect()
        }
    };
    Ok(max_over(&samples, |s| value(erm, s, &masks)))
}

fn sub_sample(sample: &[(Instance, Label)], mask: u64) -> Vec<(Instance, Label)> {
    sample
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &p)| p)
        .collect()
}

/// The algorithm-dependent growth function: the largest number of distinct
/// behaviours on `X_S` the learner shows across the size-`m` halves of a
/// size-`2m` sample `S`.
pub fn growth_function(erm: &Erm<'_>, m: usize, mode: Mode, search: Search, budget: &Budget) -> Result<usize> {
    sup_over_double_samples(erm, m, mode, search, budget, |erm, s, masks| {
        let xs: BTreeSet<Instance> = s.iter().map(|&(x, _)| x).collect();
        let outputs: HashSet<Vec<Label>> = masks
            .iter()
            .map(|&mask| {
                let h = erm.class().get(erm.fit(&sub_sample(s, mask)).index);
                xs.iter().map(|&x| h.label(x)).collect()
            })
            .collect();
        outputs.len()
    })
}

/// The essential range: the largest number of labels the learner's outputs
/// use, in total, across the size-`m` halves of a size-`2m` sample.
pub fn essential_range(erm: &Erm<'_>, m: usize, mode: Mode, search: Search, budget: &Budget) -> Result<usize> {
    sup_over_double_samples(erm, m, mode, search, budget, |erm, s, masks| {
        let labels: BTreeSet<Label> = masks
            .iter()
            .flat_map(|&mask| erm.class().get(erm.fit(&sub_sample(s, mask)).index).range())
            .collect();
        labels.len()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub m: u64,
    pub pi: f64,
    pub delta: f64,
    pub realizable_bound: f64,
    pub agnostic_bound: f64,
}

impl BoundReport {
    pub fn bound(&self, mode: Mode) -> f64 {
        match mode {
            Mode::Realizable => self.realizable_bound,
            Mode::Agnostic => self.agnostic_bound,
        }
    }
}

/// The double-sampling bounds `12 ln(2 pi / delta) / m` and
/// `sqrt(32 ln((4 pi + 4) / delta) / m)`.
pub fn double_sampling_bound(m: u64, pi: f64, delta: f64) -> Result<BoundReport> {
    if !(pi >= 1.0 && pi.is_finite()) {
        return Err(Error::arg(format!("growth value must be finite and >= 1, got {pi}")));
    }
    let mut report = double_sampling_bound_ln(m, pi.ln(), delta)?;
    report.pi = pi;
    Ok(report)
}

/// Same as [`double_sampling_bound`] with the growth value given as `ln pi`,
/// for values that overflow a float. The `pi` field is `exp(ln_pi)` and may be infinite.
pub fn double_sampling_bound_ln(m: u64, ln_pi: f64, delta: f64) -> Result<BoundReport> {
    if m == 0 {
        return Err(Error::arg("sample size m must be >= 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::arg(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !(ln_pi >= 0.0 && ln_pi.is_finite()) {
        return Err(Error::arg(format!("ln pi must be finite and >= 0, got {ln_pi}")));
    }
    let m_f = m as f64;
    let realizable = 12.0 * (std::f64::consts::LN_2 + ln_pi - delta.ln()) / m_f;
    // ln(pi + 1) = ln pi + ln(1 + 1/pi)
    let ln_pi_plus_one = ln_pi + (-ln_pi).exp().ln_1p();
    let agnostic = (32.0 * (4f64.ln() + ln_pi_plus_one - delta.ln()) / m_f).sqrt();
    Ok(BoundReport {
        m,
        pi: ln_pi.exp(),
        delta,
        realizable_bound: realizable,
        agnostic_bound: agnostic,
    })
}

/// Plugs `pi = (2m)^dN * r^(2 dN)` into the double-sampling bound.
pub fn restricted_range_bound(dn: u32, m: u64, r: u64, delta: f64, mode: Mode) -> Result<f64> {
    if r == 0 {
        return Err(Error::arg("range size r must be >= 1"));
    }
    if m == 0 {
        return Err(Error::arg("sample size m must be >= 1"));
    }
    let ln_pi = dn as f64 * ((2 * m) as f64).ln() + 2.0 * dn as f64 * (r as f64).ln();
    Ok(double_sampling_bound_ln(m, ln_pi, delta)?.bound(mode))
}
