//! Full-information online learning: SOA, reference learners, the tree
//! adversary, and exponential weights over SOA-imitating experts.

use std::sync::{Arc, Mutex};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::dimensions::{DimMemo, ShatteredTree, TreeKind, TreeNode};
use crate::error::{Error, Result};
use crate::hypothesis::{Budget, HypothesisClass, Instance, Label};

/// A dimension memo shared by every learner on the same class.
pub type SharedMemo = Arc<Mutex<DimMemo>>;

pub fn shared_memo(kind: TreeKind, class: &HypothesisClass, budget: &Budget) -> SharedMemo {
    Arc::new(Mutex::new(DimMemo::new(kind, class, budget)))
}

pub(crate) fn memo_value(memo: &SharedMemo, v: &BitSet) -> Result<i32> {
    memo.lock().expect("memo lock poisoned").value(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub t: usize,
    pub instance: Instance,
    pub prediction: Label,
    pub label: Label,
    pub mistake: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnlineTranscript {
    pub learner: String,
    pub rounds: Vec<Round>,
    pub mistakes: usize,
    pub seed: Option<u64>,
}

impl OnlineTranscript {
    fn new(learner: String, seed: Option<u64>) -> Self {
        OnlineTranscript {
            learner,
            rounds: Vec::new(),
            mistakes: 0,
            seed,
        }
    }

    fn push(&mut self, instance: Instance, prediction: Label, label: Label) {
        let mistake = prediction != label;
        self.mistakes += usize::from(mistake);
        self.rounds.push(Round {
            t: self.rounds.len(),
            instance,
            prediction,
            label,
            mistake,
        });
    }

    /// One JSON object per round.
    pub fn to_jsonl(&self) -> String {
        self.rounds
            .iter()
            .map(|r| serde_json::to_string(r).expect("round serializes") + "\n")
            .collect()
    }

    /// The `(instance, label)` sequence of a JSON-lines transcript.
    pub fn sequence_from_jsonl(text: &str) -> Result<Vec<(Instance, Label)>> {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                let r: Round = serde_json::from_str(l).map_err(|e| Error::Parse {
                    line: i + 1,
                    message: e.to_string(),
                })?;
                if r.mistake != (r.prediction != r.label) {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "mistake flag disagrees with prediction and label".into(),
                    });
                }
                Ok((r.instance, r.label))
            })
            .collect()
    }

    pub fn sequence(&self) -> Vec<(Instance, Label)> {
        self.rounds.iter().map(|r| (r.instance, r.label)).collect()
    }
}

/// A deterministic full-information online learner.
pub trait OnlineLearner {
    fn name(&self) -> String;
    fn predict(&mut self, x: Instance) -> Result<Label>;
    /// Reveals the true label of the current round.
    fn observe(&mut self, x: Instance, y: Label) -> Result<()>;
}

/// The version space `V` with its per-round update `V <- V^(y)`.
#[derive(Clone, Debug)]
struct VersionSpace<'a> {
    class: &'a HypothesisClass,
    members: BitSet,
    round: usize,
}

impl<'a> VersionSpace<'a> {
    fn new(class: &'a HypothesisClass) -> Self {
        VersionSpace {
            class,
            members: class.all(),
            round: 0,
        }
    }

    fn with_label(&self, x: Instance, y: Label) -> BitSet {
        self.members.filter(|i| self.class.get(i).label(x) == y)
    }

    fn nonempty(&self) -> Result<()> {
        if self.members.is_empty() {
            Err(Error::protocol(self.round, "version space is empty; the feed is not realizable"))
        } else {
            Ok(())
        }
    }

    fn update(&mut self, x: Instance, y: Label) -> Result<()> {
        self.members = self.with_label(x, y);
        self.nonempty()?;
        self.round += 1;
        Ok(())
    }
}

/// Lowest label attaining `max_y L-Dim(V^(y))` and that maximum.
pub fn soa_step(class: &HypothesisClass, memo: &SharedMemo, v: &BitSet, x: Instance) -> Result<(Label, i32)> {
    if v.is_empty() {
        return Err(Error::arg("SOA step on an empty version space"));
    }
    let mut groups: Vec<(Label, BitSet)> = Vec::new();
    for i in v.iter() {
        let y = class.get(i).label(x);
        match groups.iter_mut().find(|(l, _)| *l == y) {
            Some((_, g)) => g.insert(i),
            None => {
                let mut g = BitSet::empty(v.universe());
                g.insert(i);
                groups.push((y, g));
            }
        }
    }
    groups.sort_by_key(|(y, _)| *y);
    let scores = groups
        .iter()
        .map(|(y, g)| Ok((*y, memo_value(memo, g)?)))
        .collect::<Result<Vec<(Label, i32)>>>()?;
    let best = scores.iter().map(|s| s.1).max().expect("non-empty version space");
    let whole = memo_value(memo, v)?;
    if scores.iter().filter(|s| s.1 == whole).count() > 1 {
        return Err(Error::Invariant(format!(
            "two labels keep the full Littlestone dimension {whole} at instance {x}"
        )));
    }
    let label = scores.iter().find(|s| s.1 == best).expect("maximum exists").0;
    Ok((label, best))
}

/// The Standard Optimal Algorithm.
pub struct Soa<'a> {
    space: VersionSpace<'a>,
    memo: SharedMemo,
}

impl<'a> Soa<'a> {
    pub fn new(class: &'a HypothesisClass, memo: SharedMemo) -> Result<Self> {
        if memo.lock().expect("memo lock poisoned").kind() != TreeKind::Littlestone {
            return Err(Error::arg("SOA needs a Littlestone memo"));
        }
        Ok(Soa {
            space: VersionSpace::new(class),
            memo,
        })
    }

    pub fn version_space(&self) -> &BitSet {
        &self.space.members
    }
}

impl OnlineLearner for Soa<'_> {
    fn name(&self) -> String {
        "soa".into()
    }

    fn predict(&mut self, x: Instance) -> Result<Label> {
        self.space.nonempty()?;
        Ok(soa_step(self.space.class, &self.memo, &self.space.members, x)?.0)
    }

    fn observe(&mut self, x: Instance, y: Label) -> Result<()> {
        self.space.update(x, y)
    }
}

/// Always predicts the same label.
pub struct ConstantLearner {
    pub label: Label,
}

impl OnlineLearner for ConstantLearner {
    fn name(&self) -> String {
        format!("constant_{}", self.label)
    }

    fn predict(&mut self, _: Instance) -> Result<Label> {
        Ok(self.label)
    }

    fn observe(&mut self, _: Instance, _: Label) -> Result<()> {
        Ok(())
    }
}

/// Predicts the label most members of the version space assign (lowest on ties).
pub struct MajorityLearner<'a> {
    space: VersionSpace<'a>,
}

impl<'a> MajorityLearner<'a> {
    pub fn new(class: &'a HypothesisClass) -> Self {
        MajorityLearner {
            space: VersionSpace::new(class),
        }
    }
}

pub(crate) fn majority_label(class: &HypothesisClass, v: &BitSet, x: Instance) -> Label {
    let mut counts = vec![0usize; class.k()];
    for i in v.iter() {
        counts[class.get(i).label(x) as usize] += 1;
    }
    let best = counts.iter().copied().max().unwrap_or(0);
    counts.iter().position(|&c| c == best).unwrap_or(0) as Label
}

impl OnlineLearner for MajorityLearner<'_> {
    fn name(&self) -> String {
        "majority".into()
    }

    fn predict(&mut self, x: Instance) -> Result<Label> {
        self.space.nonempty()?;
        Ok(majority_label(self.space.class, &self.space.members, x))
    }

    fn observe(&mut self, x: Instance, y: Label) -> Result<()> {
        self.space.update(x, y)
    }
}

/// Predicts with the canonically first consistent hypothesis.
pub struct FirstConsistentLearner<'a> {
    space: VersionSpace<'a>,
}

impl<'a> FirstConsistentLearner<'a> {
    pub fn new(class: &'a HypothesisClass) -> Self {
        FirstConsistentLearner {
            space: VersionSpace::new(class),
        }
    }
}

impl OnlineLearner for FirstConsistentLearner<'_> {
    fn name(&self) -> String {
        "first_consistent".into()
    }

    fn predict(&mut self, x: Instance) -> Result<Label> {
        let first = self.space.members.first().ok_or_else(|| {
            Error::protocol(self.space.round, "version space is empty; the feed is not realizable")
        })?;
        Ok(self.space.class.get(first).label(x))
    }

    fn observe(&mut self, x: Instance, y: Label) -> Result<()> {
        self.space.update(x, y)
    }
}

/// Index of the first round at which no hypothesis fits the prefix.
pub fn first_inconsistent_round(class: &HypothesisClass, sequence: &[(Instance, Label)]) -> Option<usize> {
    let mut v = class.all();
    for (t, &(x, y)) in sequence.iter().enumerate() {
        v = v.filter(|i| class.get(i).label(x) == y);
        if v.is_empty() {
            return Some(t);
        }
    }
    None
}

fn check_sequence(class: &HypothesisClass, sequence: &[(Instance, Label)]) -> Result<()> {
    for (t, &(x, y)) in sequence.iter().enumerate() {
        if x >= class.d() || y as usize >= class.k() {
            return Err(Error::protocol(t, format!("pair ({x}, {y}) outside the class bounds")));
        }
    }
    Ok(())
}

/// Runs a learner over a realizable sequence.
pub fn run_online(
    class: &HypothesisClass,
    learner: &mut dyn OnlineLearner,
    sequence: &[(Instance, Label)],
) -> Result<OnlineTranscript> {
    check_sequence(class, sequence)?;
    if let Some(t) = first_inconsistent_round(class, sequence) {
        return Err(Error::protocol(t, "no hypothesis in the class is consistent with rounds 0..=t"));
    }
    let mut transcript = OnlineTranscript::new(learner.name(), None);
    for &(x, y) in sequence {
        let p = learner.predict(x)?;
        transcript.push(x, p, y);
        learner.observe(x, y)?;
    }
    Ok(transcript)
}

pub fn soa_run(class: &HypothesisClass, sequence: &[(Instance, Label)], budget: &Budget) -> Result<OnlineTranscript> {
    let mut soa = Soa::new(class, shared_memo(TreeKind::Littlestone, class, budget))?;
    run_online(class, &mut soa, sequence)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryOutcome {
    pub transcript: OnlineTranscript,
    /// A class member consistent with every answer the adversary gave.
    pub hypothesis: usize,
}

/// Walks a shattered tree, always answering with a branch label that differs
/// from the prediction.
pub fn realizable_adversary(
    class: &HypothesisClass,
    tree: &ShatteredTree,
    learner: &mut dyn OnlineLearner,
) -> Result<AdversaryOutcome> {
    if tree.kind != TreeKind::Littlestone || !tree.verify(class) {
        return Err(Error::arg("the adversary needs a verified Littlestone tree for this class"));
    }
    let mut transcript = OnlineTranscript::new(learner.name(), None);
    let mut node = &tree.root;
    while let TreeNode::Node { instance, branches } = node {
        let t = transcript.rounds.len();
        let p = learner.predict(*instance)?;
        if p as usize >= class.k() {
            return Err(Error::protocol(t, format!("prediction {p} outside 0..{}", class.k())));
        }
        let (y, child) = branches
            .iter()
            .filter(|(y, _)| *y != p)
            .min_by_key(|(y, _)| *y)
            .expect("binary node has a branch differing from any prediction");
        transcript.push(*instance, p, *y);
        learner.observe(*instance, *y)?;
        node = child;
    }
    let hypothesis = class
        .hypotheses()
        .iter()
        .position(|h| h.mistakes(&transcript.sequence()) == 0)
        .ok_or_else(|| Error::Invariant("no hypothesis fits a path of a verified tree".into()))?;
    Ok(AdversaryOutcome { transcript, hypothesis })
}

/// An SOA imitator: runs SOA on its own predictions, overriding SOA with
/// `phi(t)` at the rounds in `mistake_rounds`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expert {
    pub mistake_rounds: Vec<usize>,
    pub phi: Vec<Label>,
    /// The expert's advice at every round of the instance sequence it was built for.
    pub predictions: Vec<Label>,
}

/// `sum_{j <= ldim} C(t, j) k^j`, saturating.
pub fn expert_count(ldim: usize, t: usize, k: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for j in 0..=ldim.min(t) {
        if j > 0 {
            binom = binom.saturating_mul((t - j + 1) as u128) / j as u128;
        }
        total = total.saturating_add(binom.saturating_mul((k as u128).saturating_pow(j as u32)));
    }
    total
}

/// Every imitator `E_{A, phi}` with `|A| <= L-Dim(H)` over the instance
/// sequence `instances`. Experts only read past instances, so precomputing
/// their advice for the whole sequence keeps them causal.
pub fn build_agnostic_experts(
    class: &HypothesisClass,
    instances: &[Instance],
    memo: &SharedMemo,
    budget: &Budget,
) -> Result<Vec<Expert>> {
    if let Some(&x) = instances.iter().find(|&&x| x >= class.d()) {
        return Err(Error::arg(format!("instance {x} outside domain {}", class.d())));
    }
    let ldim = memo_value(memo, &class.all())?.max(0) as usize;
    Budget::check(
        budget.enumeration,
        expert_count(ldim, instances.len(), class.k()),
        "agnostic SOA-imitator experts",
    )?;
    let mut out = Vec::new();
    let mut state = Expert {
        mistake_rounds: vec![],
        phi: vec![],
        predictions: vec![],
    };
    imitators(class, instances, memo, ldim, &class.all(), &mut state, &mut out)?;
    Ok(out)
}

fn imitators(
    class: &HypothesisClass,
    instances: &[Instance],
    memo: &SharedMemo,
    ldim: usize,
    v: &BitSet,
    state: &mut Expert,
    out: &mut Vec<Expert>,
) -> Result<()> {
    let t = state.predictions.len();
    if t == instances.len() {
        out.push(state.clone());
        return Ok(());
    }
    let x = instances[t];
    let follow = if v.is_empty() { 0 } else { soa_step(class, memo, v, x)?.0 };
    let shrink = |y: Label| v.filter(|i| class.get(i).label(x) == y);

    state.predictions.push(follow);
    imitators(class, instances, memo, ldim, &shrink(follow), state, out)?;
    state.predictions.pop();

    if state.mistake_rounds.len() < ldim {
        for y in 0..class.k() as Label {
            state.mistake_rounds.push(t);
            state.phi.push(y);
            state.predictions.push(y);
            imitators(class, instances, memo, ldim, &shrink(y), state, out)?;
            state.predictions.pop();
            state.phi.pop();
            state.mistake_rounds.pop();
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeaOutcome {
    pub transcript: OnlineTranscript,
    pub eta: f64,
    pub realized_loss: usize,
    /// Exact expected loss under the weight distributions of the run.
    pub expected_loss: f64,
    pub best_expert_loss: usize,
    /// `sqrt(0.5 ln(N) T)`.
    pub regret_bound: f64,
}

/// Exponential weights with `eta = sqrt(8 ln N / T)`; `advice[i][t]` is
/// expert `i`'s prediction at round `t`.
pub fn lea_run(
    advice: &[Vec<Label>],
    sequence: &[(Instance, Label)],
    seed: u64,
) -> Result<LeaOutcome> {
    let n = advice.len();
    let horizon = sequence.len();
    if n == 0 {
        return Err(Error::arg("LEA needs at least one expert"));
    }
    if horizon == 0 {
        return Err(Error::arg("LEA needs a horizon T >= 1"));
    }
    if let Some(i) = advice.iter().position(|a| a.len() < horizon) {
        return Err(Error::arg(format!("expert {i} gives advice for fewer than {horizon} rounds")));
    }
    let eta = (8.0 * (n as f64).ln() / horizon as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut losses = vec![0usize; n];
    let mut transcript = OnlineTranscript::new("lea".into(), Some(seed));
    let mut expected = 0.0;
    let mut weights = vec![0.0f64; n];
    for (t, &(x, y)) in sequence.iter().enumerate() {
        let floor = *losses.iter().min().expect("n >= 1");
        for (w, &l) in weights.iter_mut().zip(&losses) {
            *w = (-eta * (l - floor) as f64).exp();
        }
        let total: f64 = weights.iter().sum();
        expected += (0..n).filter(|&i| advice[i][t] != y).map(|i| weights[i]).sum::<f64>() / total;
        let mut u = rng.gen::<f64>() * total;
        let mut pick = n - 1;
        for (i, &w) in weights.iter().enumerate() {
            if u < w {
                pick = i;
                break;
            }
            u -= w;
        }
        transcript.push(x, advice[pick][t], y);
        for i in 0..n {
            losses[i] += usize::from(advice[i][t] != y);
        }
    }
    Ok(LeaOutcome {
        eta,
        realized_loss: transcript.mistakes,
        transcript,
        expected_loss: expected,
        best_expert_loss: losses.into_iter().min().expect("n >= 1"),
        regret_bound: (0.5 * (n as f64).ln() * horizon as f64).sqrt(),
    })
}

/// Weight distribution of exponential weights for the given cumulative losses.
pub fn lea_weights(losses: &[f64], eta: f64) -> Vec<f64> {
    let floor = losses.iter().copied().fold(f64::INFINITY, f64::min);
    let raw: Vec<f64> = losses.iter().map(|&l| (-eta * (l - floor)).exp()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgnosticReport {
    pub lea: LeaOutcome,
    pub ldim: usize,
    pub experts: usize,
    /// `min_{f in H} L_{f,T}`, by enumeration.
    pub best_hypothesis_loss: usize,
    /// `min_f L_{f,T} + sqrt(0.5 L-Dim T ln(T k))`.
    pub bound: f64,
}

/// LEA over the SOA imitators on an arbitrary (possibly noisy) sequence.
pub fn agnostic_online_run(
    class: &HypothesisClass,
    sequence: &[(Instance, Label)],
    seed: u64,
    budget: &Budget,
) -> Result<AgnosticReport> {
    check_sequence(class, sequence)?;
    let memo = shared_memo(TreeKind::Littlestone, class, budget);
    let instances: Vec<Instance> = sequence.iter().map(|&(x, _)| x).collect();
    let experts = build_agnostic_experts(class, &instances, &memo, budget)?;
    let advice: Vec<Vec<Label>> = experts.iter().map(|e| e.predictions.clone()).collect();
    let lea = lea_run(&advice, sequence, seed)?;
    let ldim = memo_value(&memo, &class.all())?.max(0) as usize;
    let best = class.hypotheses().iter().map(|h| h.mistakes(sequence)).min().unwrap_or(0);
    let t = sequence.len() as f64;
    let bound = best as f64 + (0.5 * ldim as f64 * t * (t * class.k() as f64).ln()).sqrt();
    Ok(AgnosticReport {
        lea,
        ldim,
        experts: experts.len(),
        best_hypothesis_loss: best,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimensions::littlestone_dim;

    fn b() -> Budget {
        Budget::default()
    }

    fn memo(class: &HypothesisClass) -> SharedMemo {
        shared_memo(TreeKind::Littlestone, class, &b())
    }

    #[test]
    fn soa_step_examples() {
        let single = HypothesisClass::new(2, 3, [vec![2, 1]]).unwrap();
        assert_eq!(soa_step(&single, &memo(&single), &single.all(), 1).unwrap().0, 1);
        let full = HypothesisClass::full(1, 2, &b()).unwrap();
        assert_eq!(soa_step(&full, &memo(&full), &full.all(), 0).unwrap(), (0, 0));
        let mut soa = Soa::new(&full, memo(&full)).unwrap();
        soa.observe(0, 1).unwrap();
        assert_eq!(soa.version_space().iter().collect::<Vec<_>>(), vec![1]);
        assert!(soa_step(&full, &memo(&full), &BitSet::empty(4), 0).is_err());
    }

    #[test]
    fn soa_run_examples() {
        let single = HypothesisClass::new(2, 2, [vec![0, 1]]).unwrap();
        assert_eq!(soa_run(&single, &[(0, 0), (1, 1), (0, 0)], &b()).unwrap().mistakes, 0);
        let consts = HypothesisClass::constants(3, 4).unwrap();
        let t = soa_run(&consts, &[(2, 3), (0, 3), (1, 3)], &b()).unwrap();
        assert!(t.mistakes <= 1);
        let err = soa_run(&consts, &[(2, 3), (0, 3), (1, 2)], &b()).unwrap_err();
        assert_eq!(err, Error::Protocol { round: 2, message: "no hypothesis in the class is consistent with rounds 0..=t".into() });
    }

    #[test]
    fn adversary_examples() {
        let full2 = HypothesisClass::full(2, 2, &b()).unwrap();
        let (_, tree) = littlestone_dim(&full2, &b()).unwrap();
        let out = realizable_adversary(&full2, &tree, &mut Soa::new(&full2, memo(&full2)).unwrap()).unwrap();
        assert_eq!(out.transcript.mistakes, 2);
        let out = realizable_adversary(&full2, &tree, &mut ConstantLearner { label: 0 }).unwrap();
        assert_eq!(out.transcript.mistakes, 2);
        assert_eq!(full2.get(out.hypothesis).mistakes(&out.transcript.sequence()), 0);

        let full3 = HypothesisClass::full(3, 2, &b()).unwrap();
        let (_, tree) = littlestone_dim(&full3, &b()).unwrap();
        let out = realizable_adversary(&full3, &tree, &mut Soa::new(&full3, memo(&full3)).unwrap()).unwrap();
        assert_eq!(out.transcript.mistakes, 3);

        let single = HypothesisClass::new(1, 2, [vec![1]]).unwrap();
        let (_, tree) = littlestone_dim(&single, &b()).unwrap();
        let out = realizable_adversary(&single, &tree, &mut MajorityLearner::new(&single)).unwrap();
        assert!(out.transcript.rounds.is_empty());

        let err = realizable_adversary(&full2, &littlestone_dim(&full2, &b()).unwrap().1, &mut ConstantLearner { label: 5 });
        assert!(matches!(err, Err(Error::Protocol { round: 0, .. })));
    }

    #[test]
    fn jsonl_roundtrip() {
        let full = HypothesisClass::full(2, 3, &b()).unwrap();
        let seq = vec![(0, 2), (1, 0), (0, 2)];
        let t = soa_run(&full, &seq, &b()).unwrap();
        let text = t.to_jsonl();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().next().unwrap().starts_with(r#"{"t":0,"instance":0,"#));
        assert_eq!(OnlineTranscript::sequence_from_jsonl(&text).unwrap(), seq);
        assert!(OnlineTranscript::sequence_from_jsonl("{\"t\":0}\n").is_err());
    }

    #[test]
    fn expert_counts() {
        assert_eq!(expert_count(2, 3, 2), 19);
        assert_eq!(expert_count(0, 5, 7), 1);
        assert_eq!(expert_count(1, 3, 2), 7);
        let full = HypothesisClass::full(2, 2, &b()).unwrap();
        let experts = build_agnostic_experts(&full, &[0, 1, 0], &memo(&full), &b()).unwrap();
        assert_eq!(experts.len(), 19);
        let single = HypothesisClass::new(2, 2, [vec![1, 1]]).unwrap();
        let experts = build_agnostic_experts(&single, &[0, 1], &memo(&single), &b()).unwrap();
        assert_eq!(experts.len(), 1);
        assert_eq!(experts[0].predictions, vec![1, 1]);
    }

    #[test]
    fn expert_budget() {
        let full = HypothesisClass::full(2, 2, &b()).unwrap();
        let tight = Budget { enumeration: 10, ..b() };
        assert!(matches!(
            build_agnostic_experts(&full, &[0, 1, 0], &memo(&full), &tight),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn lea_examples() {
        let seq = [(0, 1), (0, 0), (0, 1), (0, 1)];
        let one = lea_run(&[vec![1, 1, 1, 1]], &seq, 3).unwrap();
        assert_eq!(one.eta, 0.0);
        assert_eq!(one.realized_loss, 1);
        assert_eq!(one.expected_loss, 1.0);
        let two = lea_run(&[vec![0, 0, 0, 0], vec![1, 0, 1, 1]], &seq, 3).unwrap();
        assert_eq!(two.best_expert_loss, 0);
        assert!(two.expected_loss <= (0.5 * 2f64.ln() * 4.0).sqrt());
        let w1 = lea_weights(&[1.0, 2.0, 5.0], 0.7);
        let w2 = lea_weights(&[11.0, 12.0, 15.0], 0.7);
        assert!(w1.iter().zip(&w2).all(|(a, b)| (a - b).abs() < 1e-15));
        assert!(lea_run(&[], &seq, 0).is_err());
    }

    #[test]
    fn agnostic_run_single_round() {
        let full = HypothesisClass::full(2, 2, &b()).unwrap();
        let r = agnostic_online_run(&full, &[(1, 0)], 5, &b()).unwrap();
        assert!(r.lea.realized_loss <= 1);
        assert_eq!(r.best_hypothesis_loss, 0);
        assert_eq!(r.ldim, 2);
    }
}
