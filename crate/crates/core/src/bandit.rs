//! Bandit feedback: the learner only hears whether its guess was right.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::dimensions::{ShatteredTree, TreeKind, TreeNode};
use crate::error::{Error, Result};
use crate::hypothesis::{Budget, HypothesisClass, Instance, Label};
use crate::learners::Erm;
use crate::online::{majority_label, memo_value, shared_memo, SharedMemo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BanditRound {
    pub t: usize,
    pub instance: Instance,
    pub guess: Label,
    pub correct: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BanditTranscript {
    pub learner: String,
    pub rounds: Vec<BanditRound>,
    pub mistakes: usize,
    pub seed: Option<u64>,
}

impl BanditTranscript {
    fn new(learner: String) -> Self {
        BanditTranscript {
            learner,
            rounds: Vec::new(),
            mistakes: 0,
            seed: None,
        }
    }

    fn push(&mut self, instance: Instance, guess: Label, correct: bool) {
        self.mistakes += usize::from(!correct);
        self.rounds.push(BanditRound {
            t: self.rounds.len(),
            instance,
            guess,
            correct,
        });
    }

    pub fn to_jsonl(&self) -> String {
        self.rounds
            .iter()
            .map(|r| serde_json::to_string(r).expect("round serializes") + "\n")
            .collect()
    }

    pub fn from_jsonl(learner: &str, text: &str) -> Result<Self> {
        let mut out = BanditTranscript::new(learner.into());
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let r: BanditRound = serde_json::from_str(line).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            out.push(r.instance, r.guess, r.correct);
        }
        Ok(out)
    }
}

/// Answers "was `guess` the label of round `t`?".
pub trait BanditOracle {
    fn query(&mut self, t: usize, x: Instance, guess: Label) -> bool;
}

/// Labels every round by a fixed hidden function.
pub struct HiddenLabeling<'a> {
    pub table: &'a [Label],
}

impl BanditOracle for HiddenLabeling<'_> {
    fn query(&mut self, _: usize, x: Instance, guess: Label) -> bool {
        self.table[x] == guess
    }
}

/// Replays the feedback of a recorded transcript, checking that the learner
/// repeats the recorded guesses.
pub struct ReplayOracle {
    rounds: Vec<BanditRound>,
}

impl ReplayOracle {
    pub fn new(transcript: &BanditTranscript) -> Self {
        ReplayOracle {
            rounds: transcript.rounds.clone(),
        }
    }

    pub fn instances(&self) -> Vec<Instance> {
        self.rounds.iter().map(|r| r.instance).collect()
    }
}

impl BanditOracle for ReplayOracle {
    /// Unrecorded rounds and guesses that diverge from the recording are answered "wrong".
    fn query(&mut self, t: usize, x: Instance, guess: Label) -> bool {
        self.rounds
            .get(t)
            .is_some_and(|r| r.instance == x && r.guess == guess && r.correct)
    }
}

/// A deterministic bandit learner.
pub trait BanditLearner {
    fn name(&self) -> String;
    fn guess(&mut self, x: Instance) -> Result<Label>;
    fn feedback(&mut self, x: Instance, guess: Label, correct: bool) -> Result<()>;
}

/// Version space under bandit feedback.
#[derive(Clone, Debug)]
struct BanditSpace<'a> {
    class: &'a HypothesisClass,
    members: BitSet,
    round: usize,
    filter_on_correct: bool,
}

impl<'a> BanditSpace<'a> {
    fn new(class: &'a HypothesisClass, filter_on_correct: bool) -> Self {
        BanditSpace {
            class,
            members: class.all(),
            round: 0,
            filter_on_correct,
        }
    }

    fn update(&mut self, x: Instance, guess: Label, correct: bool) -> Result<()> {
        if correct {
            if self.filter_on_correct {
                self.members = self.members.filter(|i| self.class.get(i).label(x) == guess);
            }
        } else {
            self.members = self.members.filter(|i| self.class.get(i).label(x) != guess);
        }
        if self.members.is_empty() {
            return Err(Error::protocol(self.round, "version space is empty; the oracle is inconsistent with the class"));
        }
        self.round += 1;
        Ok(())
    }
}

/// The bandit Standard Optimal Algorithm: guess the label whose rejection
/// leaves the smallest bandit-Littlestone dimension.
pub struct Bsoa<'a> {
    space: BanditSpace<'a>,
    memo: SharedMemo,
}

impl<'a> Bsoa<'a> {
    /// `filter_on_correct` also narrows the version space to the confirmed
    /// label after a correct guess.
    pub fn new(class: &'a HypothesisClass, memo: SharedMemo, filter_on_correct: bool) -> Result<Self> {
        if memo.lock().expect("memo lock poisoned").kind() != TreeKind::Bandit {
            return Err(Error::arg("BSOA needs a bandit-Littlestone memo"));
        }
        Ok(Bsoa {
            space: BanditSpace::new(class, filter_on_correct),
            memo,
        })
    }
}

/// Lowest label minimizing `BL-Dim({f in V : f(x) != y})`, and that minimum.
pub fn bsoa_step(class: &HypothesisClass, memo: &SharedMemo, v: &BitSet, x: Instance) -> Result<(Label, i32)> {
    if v.is_empty() {
        return Err(Error::arg("BSOA step on an empty version space"));
    }
    let whole = memo_value(memo, v)?;
    let mut best = (0, i32::MAX);
    let mut used = vec![false; class.k()];
    for i in v.iter() {
        used[class.get(i).label(x) as usize] = true;
    }
    for y in 0..class.k() as Label {
        // removing an unused label leaves V unchanged
        let score = if used[y as usize] {
            memo_value(memo, &v.filter(|i| class.get(i).label(x) != y))?
        } else {
            whole
        };
        if score < best.1 {
            best = (y, score);
        }
    }
    if best.1 >= whole {
        return Err(Error::Invariant(format!(
            "no guess at instance {x} lowers the bandit dimension {whole}"
        )));
    }
    Ok(best)
}

impl BanditLearner for Bsoa<'_> {
    fn name(&self) -> String {
        if self.space.filter_on_correct { "bsoa" } else { "bsoa_unfiltered" }.into()
    }

    fn guess(&mut self, x: Instance) -> Result<Label> {
        Ok(bsoa_step(self.space.class, &self.memo, &self.space.members, x)?.0)
    }

    fn feedback(&mut self, x: Instance, guess: Label, correct: bool) -> Result<()> {
        self.space.update(x, guess, correct)
    }
}

/// Always guesses the same label.
pub struct ConstantGuesser {
    pub label: Label,
}

impl BanditLearner for ConstantGuesser {
    fn name(&self) -> String {
        format!("constant_{}", self.label)
    }

    fn guess(&mut self, _: Instance) -> Result<Label> {
        Ok(self.label)
    }

    fn feedback(&mut self, _: Instance, _: Label, _: bool) -> Result<()> {
        Ok(())
    }
}

/// Guesses the majority label of its bandit version space.
pub struct MajorityGuesser<'a> {
    space: BanditSpace<'a>,
}

impl<'a> MajorityGuesser<'a> {
    pub fn new(class: &'a HypothesisClass) -> Self {
        MajorityGuesser {
            space: BanditSpace::new(class, true),
        }
    }
}

impl BanditLearner for MajorityGuesser<'_> {
    fn name(&self) -> String {
        "majority".into()
    }

    fn guess(&mut self, x: Instance) -> Result<Label> {
        Ok(majority_label(self.space.class, &self.space.members, x))
    }

    fn feedback(&mut self, x: Instance, guess: Label, correct: bool) -> Result<()> {
        self.space.update(x, guess, correct)
    }
}

/// Guesses with the canonically first hypothesis of its bandit version space.
pub struct FirstConsistentGuesser<'a> {
    space: BanditSpace<'a>,
}

impl<'a> FirstConsistentGuesser<'a> {
    pub fn new(class: &'a HypothesisClass) -> Self {
        FirstConsistentGuesser {
            space: BanditSpace::new(class, true),
        }
    }
}

impl BanditLearner for FirstConsistentGuesser<'_> {
    fn name(&self) -> String {
        "first_consistent".into()
    }

    fn guess(&mut self, x: Instance) -> Result<Label> {
        let first = self.space.members.first().ok_or_else(|| Error::protocol(self.space.round, "empty version space"))?;
        Ok(self.space.class.get(first).label(x))
    }

    fn feedback(&mut self, x: Instance, guess: Label, correct: bool) -> Result<()> {
        self.space.update(x, guess, correct)
    }
}

/// Runs a bandit learner over `instances` against an oracle.
pub fn run_bandit(
    class: &HypothesisClass,
    learner: &mut dyn BanditLearner,
    instances: &[Instance],
    oracle: &mut dyn BanditOracle,
) -> Result<BanditTranscript> {
    let mut transcript = BanditTranscript::new(learner.name());
    for (t, &x) in instances.iter().enumerate() {
        if x >= class.d() {
            return Err(Error::protocol(t, format!("instance {x} outside domain {}", class.d())));
        }
        let g = learner.guess(x)?;
        if g as usize >= class.k() {
            return Err(Error::protocol(t, format!("guess {g} outside 0..{}", class.k())));
        }
        let correct = oracle.query(t, x, g);
        transcript.push(x, g, correct);
        learner.feedback(x, g, correct)?;
    }
    Ok(transcript)
}

/// BSOA (filtering on correct guesses) against a hidden labeling.
pub fn bsoa_run(class: &HypothesisClass, instances: &[Instance], hidden: &[Label], budget: &Budget) -> Result<BanditTranscript> {
    if hidden.len() != class.d() || class.position(hidden).is_none() {
        return Err(Error::arg("the hidden labeling must be a member of the class"));
    }
    let mut bsoa = Bsoa::new(class, shared_memo(TreeKind::Bandit, class, budget), true)?;
    run_bandit(class, &mut bsoa, instances, &mut HiddenLabeling { table: hidden })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BanditAdversaryOutcome {
    pub transcript: BanditTranscript,
    /// A class member differing from every guess at its round.
    pub hypothesis: usize,
}

/// Walks a BL-shattered tree, answering "wrong" to every guess and following
/// the edge labeled by it.
pub fn bandit_adversary(
    class: &HypothesisClass,
    tree: &ShatteredTree,
    learner: &mut dyn BanditLearner,
) -> Result<BanditAdversaryOutcome> {
    if tree.kind != TreeKind::Bandit || !tree.verify(class) {
        return Err(Error::arg("the bandit adversary needs a verified bandit-Littlestone tree"));
    }
    let mut transcript = BanditTranscript::new(learner.name());
    let mut node = &tree.root;
    while let TreeNode::Node { instance, .. } = node {
        let t = transcript.rounds.len();
        let g = learner.guess(*instance)?;
        if g as usize >= class.k() {
            return Err(Error::protocol(t, format!("guess {g} outside 0..{}", class.k())));
        }
        transcript.push(*instance, g, false);
        learner.feedback(*instance, g, false)?;
        node = node.branch(g).expect("a k-ary node has a branch for every label");
    }
    let hypothesis = class
        .hypotheses()
        .iter()
        .position(|h| transcript.rounds.iter().all(|r| h.label(r.instance) != r.guess))
        .ok_or_else(|| Error::Invariant("no hypothesis avoids a path of a verified tree".into()))?;
    Ok(BanditAdversaryOutcome { transcript, hypothesis })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchOutcome {
    pub hypothesis: usize,
    pub fallback: bool,
    pub guesses: Vec<Label>,
    /// The confirmed pairs handed to the full-information learner.
    pub filtered: Vec<(Instance, Label)>,
}

/// Guesses a uniform label for every instance, keeps the confirmed pairs and
/// runs full-information ERM on them.
pub fn bandit_batch_learner(
    erm: &Erm<'_>,
    instances: &[Instance],
    oracle: &mut dyn BanditOracle,
    seed: u64,
) -> BatchOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    bandit_batch_with(erm, instances, oracle, &mut rng)
}

pub fn bandit_batch_with(
    erm: &Erm<'_>,
    instances: &[Instance],
    oracle: &mut dyn BanditOracle,
    rng: &mut impl Rng,
) -> BatchOutcome {
    let k = erm.class().k() as Label;
    let mut guesses = Vec::with_capacity(instances.len());
    let mut filtered = Vec::new();
    for (t, &x) in instances.iter().enumerate() {
        let g = rng.gen_range(0..k);
        guesses.push(g);
        if oracle.query(t, x, g) {
            filtered.push((x, g));
        }
    }
    let r = erm.fit(&filtered);
    BatchOutcome {
        hypothesis: r.index,
        fallback: r.fallback,
        guesses,
        filtered,
    }
}

/// `3 k m_f + ceil(1.5 ln(2 / delta))`: enough bandit draws that, with
/// probability `1 - delta/2`, at least `m_f` guesses are confirmed.
pub fn bandit_batch_size(k: usize, m_f: u64, delta: f64) -> Result<u64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::arg(format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(3 * k as u64 * m_f + (1.5 * (2.0 / delta).ln()).ceil() as u64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PbiReport {
    pub ldim: usize,
    pub bldim: usize,
    /// `BL-Dim / L-Dim`; absent when `L-Dim = 0`.
    pub ratio: Option<f64>,
    /// `4 k log2 k`.
    pub reference_bound: f64,
    pub within_bound: Option<bool>,
}

pub fn online_pbi(class: &HypothesisClass, budget: &Budget) -> Result<PbiReport> {
    let ldim = memo_value(&shared_memo(TreeKind::Littlestone, class, budget), &class.all())?.max(0) as usize;
    let bldim = memo_value(&shared_memo(TreeKind::Bandit, class, budget), &class.all())?.max(0) as usize;
    let k = class.k() as f64;
    let reference_bound = 4.0 * k * k.log2();
    let ratio = (ldim > 0).then(|| bldim as f64 / ldim as f64);
    Ok(PbiReport {
        ldim,
        bldim,
        ratio,
        reference_bound,
        within_bound: ratio.map(|r| r <= reference_bound + 1e-9),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimensions::bandit_littlestone_dim;
    use crate::learners::ErmPolicy;

    fn b() -> Budget {
        Budget::default()
    }

    fn memo(class: &HypothesisClass) -> SharedMemo {
        shared_memo(TreeKind::Bandit, class, &b())
    }

    #[test]
    fn bsoa_examples() {
        let single = HypothesisClass::new(2, 3, [vec![2, 0]]).unwrap();
        assert_eq!(bsoa_run(&single, &[0, 1, 0], &[2, 0], &b()).unwrap().mistakes, 0);
        let c3 = HypothesisClass::constants(1, 3).unwrap();
        for y in 0..3 {
            let t = bsoa_run(&c3, &[0, 0, 0, 0], &[y], &b()).unwrap();
            assert!(t.mistakes <= 2, "hidden {y}: {t:?}");
        }
        assert!(bsoa_run(&c3, &[0], &[1, 1], &b()).is_err());
    }

    #[test]
    fn adversary_examples() {
        let c3 = HypothesisClass::constants(1, 3).unwrap();
        let (_, tree) = bandit_littlestone_dim(&c3, &b()).unwrap();
        let mut bsoa = Bsoa::new(&c3, memo(&c3), true).unwrap();
        let out = bandit_adversary(&c3, &tree, &mut bsoa).unwrap();
        assert_eq!(out.transcript.mistakes, 2);
        let h = c3.get(out.hypothesis);
        assert!(out.transcript.rounds.iter().all(|r| h.label(r.instance) != r.guess));

        let c2 = HypothesisClass::constants(1, 2).unwrap();
        let (_, tree) = bandit_littlestone_dim(&c2, &b()).unwrap();
        let out = bandit_adversary(&c2, &tree, &mut ConstantGuesser { label: 0 }).unwrap();
        assert_eq!(out.transcript.mistakes, 1);

        let single = HypothesisClass::new(1, 2, [vec![0]]).unwrap();
        let (_, tree) = bandit_littlestone_dim(&single, &b()).unwrap();
        let out = bandit_adversary(&single, &tree, &mut MajorityGuesser::new(&single)).unwrap();
        assert!(out.transcript.rounds.is_empty());
    }

    #[test]
    fn unfiltered_variant_runs() {
        let c4 = HypothesisClass::constants(2, 4).unwrap();
        let mut learner = Bsoa::new(&c4, memo(&c4), false).unwrap();
        let t = run_bandit(&c4, &mut learner, &[0, 1, 0, 1, 0], &mut HiddenLabeling { table: &[2, 2] }).unwrap();
        assert!(t.mistakes <= 3);
        assert_eq!(t.learner, "bsoa_unfiltered");
    }

    #[test]
    fn replay_reproduces_transcript() {
        let c4 = HypothesisClass::constants(1, 4).unwrap();
        let t = bsoa_run(&c4, &[0, 0, 0, 0], &[3], &b()).unwrap();
        let text = t.to_jsonl();
        let loaded = BanditTranscript::from_jsonl("bsoa", &text).unwrap();
        let mut oracle = ReplayOracle::new(&loaded);
        let mut bsoa = Bsoa::new(&c4, memo(&c4), true).unwrap();
        let again = run_bandit(&c4, &mut bsoa, &oracle.instances(), &mut oracle).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn batch_with_one_label_is_full_information() {
        let h = HypothesisClass::new(3, 1, [vec![0, 0, 0]]).unwrap();
        let erm = Erm::new(&ErmPolicy::Generic, &h, &b()).unwrap();
        let out = bandit_batch_learner(&erm, &[0, 2, 1, 2], &mut HiddenLabeling { table: &[0, 0, 0] }, 1);
        assert_eq!(out.filtered.len(), 4);
        assert_eq!(out.hypothesis, 0);
    }

    #[test]
    fn batch_size_formula() {
        assert_eq!(bandit_batch_size(17, 10, 0.2).unwrap(), 510 + 4);
        assert!(bandit_batch_size(2, 1, 0.0).is_err());
    }

    #[test]
    fn pbi_examples() {
        let r = online_pbi(&HypothesisClass::constants(1, 2).unwrap(), &b()).unwrap();
        assert_eq!((r.bldim, r.ldim, r.ratio), (1, 1, Some(1.0)));
        for k in 2..=6 {
            let r = online_pbi(&HypothesisClass::constants(1, k).unwrap(), &b()).unwrap();
            assert_eq!((r.bldim, r.ldim), (k - 1, 1));
            assert_eq!(r.within_bound, Some(true));
        }
        let r = online_pbi(&HypothesisClass::new(2, 2, [vec![0, 1]]).unwrap(), &b()).unwrap();
        assert_eq!(r.ratio, None);
    }
}
