use mclearn::bandit::{
    bandit_adversary, run_bandit, BanditLearner, BanditTranscript, Bsoa, ConstantGuesser, FirstConsistentGuesser,
    HiddenLabeling, MajorityGuesser, ReplayOracle,
};
use mclearn::dimensions::{
    bandit_littlestone_dim, graph_dim, graph_natarajan_chain_holds, graph_natarajan_factor, littlestone_dim,
    natarajan_cardinality_bound, natarajan_dim, TreeKind,
};
use mclearn::learners::{Erm, ErmPolicy};
use mclearn::online::{
    agnostic_online_run, realizable_adversary, run_online, shared_memo, ConstantLearner, FirstConsistentLearner,
    MajorityLearner, OnlineLearner, OnlineTranscript, Soa,
};
use mclearn::pac_sim::{
    badlb_distribution, estimate_sample_complexity, exact_failure_probability, failure_rate,
    random_bijection_experiment, DiscreteDistribution,
};
use mclearn::{Budget, HypothesisClass, Label};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::config::{
    read, AdversaryKind, BanditAdversaryKind, BanditLearnerKind, CommandConfig, Config, OnlineLearnerKind,
};
use crate::CliError;

/// The result of one command: the JSON payload, a flat table for CSV
/// output, and an optional JSONL transcript to write alongside.
pub struct Outcome {
    pub result: Value,
    pub table: Table,
    pub transcript: Option<String>,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn execute(config: &Config) -> Result<Outcome, CliError> {
    let b = &config.budget;
    match &config.command {
        CommandConfig::Dims { class } => dims(&class.load(b)?, b),
        CommandConfig::Gap {
            d,
            epsilon,
            delta,
            trials,
            m_max,
            ..
        } => gap(*d, *epsilon, *delta, *trials, *m_max, config.seed, b),
        CommandConfig::Online {
            class,
            learner,
            adversary,
            replay,
            ..
        } => {
            let class = class.load(b)?;
            let sequence = match replay {
                Some(path) => Some(OnlineTranscript::sequence_from_jsonl(&read(path)?)?),
                None => None,
            };
            online(&class, *learner, *adversary, sequence, config.seed, b)
        }
        CommandConfig::Bandit {
            class,
            learner,
            adversary,
            hidden,
            instances,
            replay,
            ..
        } => {
            let class = class.load(b)?;
            let recorded = match replay {
                Some(path) => Some(BanditTranscript::from_jsonl("replay", &read(path)?)?),
                None => None,
            };
            bandit(&class, *learner, *adversary, *hidden, instances.as_deref(), recorded, b)
        }
        CommandConfig::Bijection {
            class,
            alpha,
            trials,
            dist,
        } => {
            let class = class.load(b)?;
            let dist = match dist {
                Some(path) => DiscreteDistribution::from_json(&read(path)?)?,
                None => uniform(&class)?,
            };
            bijection(&class, &dist, *alpha, *trials, config.seed)
        }
    }
}

fn dims(class: &HypothesisClass, b: &Budget) -> Result<Outcome, CliError> {
    let (dn, wn) = natarajan_dim(class, b)?;
    let (dg, wg) = graph_dim(class, b)?;
    let (ld, tl) = littlestone_dim(class, b)?;
    let (bl, tb) = bandit_littlestone_dim(class, b)?;
    let k = class.k();
    let bound = natarajan_cardinality_bound(class.d() as u64, k as u64, dn as u32);
    let result = json!({
        "d": class.d(),
        "k": k,
        "size": class.len(),
        "natarajan": { "value": dn, "witness": wn },
        "graph": { "value": dg, "witness": wg },
        "littlestone": { "value": ld, "tree": tl },
        "bandit_littlestone": { "value": bl, "tree": tb },
        "graph_natarajan_chain": {
            "factor": graph_natarajan_factor(k),
            "holds": graph_natarajan_chain_holds(dn, dg, k),
        },
        "cardinality_bound": {
            "bound": bound.to_string(),
            "holds": BigUint::from(class.len()) <= bound,
        },
    });
    let table = Table {
        header: vec!["dimension", "value"],
        rows: [("natarajan", dn), ("graph", dg), ("littlestone", ld), ("bandit_littlestone", bl)]
            .iter()
            .map(|(n, v)| vec![n.to_string(), v.to_string()])
            .collect(),
    };
    Ok(Outcome {
        result,
        table,
        transcript: None,
    })
}

fn gap(d: usize, eps: f64, delta: f64, trials: u64, m_max: u64, seed: u64, b: &Budget) -> Result<Outcome, CliError> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(CliError::Usage(format!("--delta must lie in (0, 1), got {delta}")));
    }
    let class = HypothesisClass::cantor(d)?;
    let witness = graph_dim(&class, b)?.1;
    let dist = badlb_distribution(&witness.set, &witness.f, class.d(), class.k(), eps)?;
    let good = Erm::new(&ErmPolicy::GoodObservedLabels { defaults: None }, &class, b)?;
    let bad = Erm::new(&ErmPolicy::Bad { witness: None }, &class, b)?;
    let claim_m = ((1.0 / eps) * (1.0 / delta).ln()).ceil().max(1.0) as u64;

    let mut rows = Vec::new();
    let mut learners = Vec::new();
    let mut at_claim = Vec::new();
    for (name, erm) in [("good_observed_labels", &good), ("bad", &bad)] {
        let est = estimate_sample_complexity(erm, &dist, eps, delta, trials, seed, m_max)?;
        let at_m = est.m_hat.unwrap_or(est.m_max);
        let exact = exact_failure_probability(erm, &dist, at_m, eps, b)?;
        for r in &est.tested {
            rows.push(vec![
                name.to_string(),
                r.m.to_string(),
                r.failures.to_string(),
                r.trials.to_string(),
                r.rate.to_string(),
                r.lower.to_string(),
                r.upper.to_string(),
            ]);
        }
        let claim = failure_rate(erm, &dist, claim_m, eps, trials, seed)?;
        at_claim.push(claim);
        learners.push(json!({
            "policy": name,
            "estimate": est,
            "exact_failure_probability_at_estimate": exact,
            "at_claimed_m": {
                "rate": claim,
                "exact_failure_probability": exact_failure_probability(erm, &dist, claim_m, eps, b)?,
            },
        }));
    }
    let good_m = learners[0]["estimate"]["m_hat"].as_u64();
    let bad_m = learners[1]["estimate"]["m_hat"].as_u64();
    let ratio = match (good_m, bad_m) {
        (Some(g), Some(bm)) => Some(bm as f64 / g as f64),
        (Some(g), None) => Some(m_max as f64 / g as f64),
        _ => None,
    };
    let disjoint = at_claim[0].upper < at_claim[1].lower || at_claim[1].upper < at_claim[0].lower;
    let result = json!({
        "d": d,
        "k": class.k(),
        "epsilon": eps,
        "delta": delta,
        "distribution": dist,
        "claimed_m": claim_m,
        "learners": learners,
        "ratio": ratio,
        "ratio_is_lower_bound": bad_m.is_none(),
        "intervals_disjoint_at_claimed_m": disjoint,
    });
    Ok(Outcome {
        result,
        table: Table {
            header: vec!["policy", "m", "failures", "trials", "rate", "lower", "upper"],
            rows,
        },
        transcript: None,
    })
}

fn online_rows(t: &OnlineTranscript) -> Table {
    Table {
        header: vec!["t", "instance", "prediction", "label", "mistake"],
        rows: t
            .rounds
            .iter()
            .map(|r| {
                vec![
                    r.t.to_string(),
                    r.instance.to_string(),
                    r.prediction.to_string(),
                    r.label.to_string(),
                    r.mistake.to_string(),
                ]
            })
            .collect(),
    }
}

fn online(
    class: &HypothesisClass,
    kind: OnlineLearnerKind,
    adversary: AdversaryKind,
    sequence: Option<Vec<(usize, Label)>>,
    seed: u64,
    b: &Budget,
) -> Result<Outcome, CliError> {
    let (ld, tree) = littlestone_dim(class, b)?;
    if kind == OnlineLearnerKind::Lea {
        let seq = match (adversary, sequence) {
            (AdversaryKind::Replay, Some(seq)) => seq,
            _ => return Err(CliError::Usage("--learner lea needs --adversary replay --replay FILE".into())),
        };
        let report = agnostic_online_run(class, &seq, seed, b)?;
        let transcript = report.lea.transcript.clone();
        let within = (report.lea.expected_loss <= report.bound + 1e-9, report.lea.realized_loss as f64 <= report.bound);
        return Ok(Outcome {
            table: online_rows(&transcript),
            result: json!({
                "ldim": ld,
                "mistakes": transcript.mistakes,
                "agnostic": report,
                "expected_loss_within_bound": within.0,
                "realized_loss_within_bound": within.1,
            }),
            transcript: Some(transcript.to_jsonl()),
        });
    }
    let mut learner: Box<dyn OnlineLearner + '_> = match kind {
        OnlineLearnerKind::Soa => Box::new(Soa::new(class, shared_memo(TreeKind::Littlestone, class, b))?),
        OnlineLearnerKind::Constant => Box::new(ConstantLearner { label: 0 }),
        OnlineLearnerKind::Majority => Box::new(MajorityLearner::new(class)),
        OnlineLearnerKind::FirstConsistent => Box::new(FirstConsistentLearner::new(class)),
        OnlineLearnerKind::Lea => unreachable!("handled above"),
    };
    let (transcript, hypothesis) = match (adversary, sequence) {
        (AdversaryKind::Tree, None) => {
            let out = realizable_adversary(class, &tree, learner.as_mut())?;
            (out.transcript, Some(out.hypothesis))
        }
        (AdversaryKind::Replay, Some(seq)) => (run_online(class, learner.as_mut(), &seq)?, None),
        (AdversaryKind::Tree, Some(_)) => return Err(CliError::Usage("--replay needs --adversary replay".into())),
        (AdversaryKind::Replay, None) => return Err(CliError::Usage("--adversary replay needs --replay FILE".into())),
    };
    let mistakes = transcript.mistakes;
    let result = json!({
        "ldim": ld,
        "learner": transcript.learner,
        "mistakes": mistakes,
        "bound_ok": kind != OnlineLearnerKind::Soa || mistakes <= ld,
        "forced_ok": hypothesis.is_none() || mistakes >= ld,
        "hypothesis": hypothesis.map(|i| class.get(i).table().to_vec()),
        "transcript": transcript,
    });
    Ok(Outcome {
        table: online_rows(&transcript),
        transcript: Some(transcript.to_jsonl()),
        result,
    })
}

fn bandit(
    class: &HypothesisClass,
    kind: BanditLearnerKind,
    adversary: BanditAdversaryKind,
    hidden: Option<usize>,
    instances: Option<&[usize]>,
    recorded: Option<BanditTranscript>,
    b: &Budget,
) -> Result<Outcome, CliError> {
    let (bl, tree) = bandit_littlestone_dim(class, b)?;
    let mut learner: Box<dyn BanditLearner + '_> = match kind {
        BanditLearnerKind::Bsoa => Box::new(Bsoa::new(class, shared_memo(TreeKind::Bandit, class, b), true)?),
        BanditLearnerKind::BsoaUnfiltered => Box::new(Bsoa::new(class, shared_memo(TreeKind::Bandit, class, b), false)?),
        BanditLearnerKind::Constant => Box::new(ConstantGuesser { label: 0 }),
        BanditLearnerKind::Majority => Box::new(MajorityGuesser::new(class)),
        BanditLearnerKind::FirstConsistent => Box::new(FirstConsistentGuesser::new(class)),
    };
    let (transcript, hypothesis) = match adversary {
        BanditAdversaryKind::Tree => {
            let out = bandit_adversary(class, &tree, learner.as_mut())?;
            (out.transcript, Some(out.hypothesis))
        }
        BanditAdversaryKind::Hidden => {
            let index = hidden.ok_or_else(|| CliError::Usage("--adversary hidden needs --hidden INDEX".into()))?;
            if index >= class.len() {
                return Err(CliError::Usage(format!("--hidden {index} but the class has {} members", class.len())));
            }
            let xs = instances.ok_or_else(|| CliError::Usage("--adversary hidden needs --instances".into()))?;
            let table = class.get(index).table();
            (run_bandit(class, learner.as_mut(), xs, &mut HiddenLabeling { table })?, Some(index))
        }
        BanditAdversaryKind::Replay => {
            let recorded = recorded.ok_or_else(|| CliError::Usage("--adversary replay needs --replay FILE".into()))?;
            let mut oracle = ReplayOracle::new(&recorded);
            (run_bandit(class, learner.as_mut(), &oracle.instances(), &mut oracle)?, None)
        }
    };
    let mistakes = transcript.mistakes;
    let is_bsoa = matches!(kind, BanditLearnerKind::Bsoa | BanditLearnerKind::BsoaUnfiltered);
    let result = json!({
        "bldim": bl,
        "learner": transcript.learner,
        "mistakes": mistakes,
        "bound_ok": !is_bsoa || adversary == BanditAdversaryKind::Replay || mistakes <= bl,
        "forced_ok": adversary != BanditAdversaryKind::Tree || mistakes >= bl,
        "hypothesis": hypothesis.map(|i| class.get(i).table().to_vec()),
        "transcript": transcript,
    });
    Ok(Outcome {
        table: Table {
            header: vec!["t", "instance", "guess", "correct"],
            rows: transcript
                .rounds
                .iter()
                .map(|r| vec![r.t.to_string(), r.instance.to_string(), r.guess.to_string(), r.correct.to_string()])
                .collect(),
        },
        transcript: Some(transcript.to_jsonl()),
        result,
    })
}

fn uniform(class: &HypothesisClass) -> Result<DiscreteDistribution, CliError> {
    let (d, k) = (class.d(), class.k());
    let p = 1.0 / (d * k) as f64;
    Ok(DiscreteDistribution::new(
        d,
        k,
        (0..d).flat_map(|x| (0..k as Label).map(move |y| (x, y, p))),
    )?)
}

fn bijection(class: &HypothesisClass, dist: &DiscreteDistribution, alpha: f64, trials: u64, seed: u64) -> Result<Outcome, CliError> {
    let report = random_bijection_experiment(class, dist, alpha, trials, seed)?;
    let row = vec![
        report.trials.to_string(),
        report.alpha.to_string(),
        report.count.to_string(),
        report.fraction.map_or(String::new(), |f| f.to_string()),
        report.chern.gamma.to_string(),
        report.chern.value.to_string(),
    ];
    Ok(Outcome {
        result: json!({ "experiment": report, "asserted": false }),
        table: Table {
            header: vec!["trials", "alpha", "count", "fraction", "gamma", "chern_bound"],
            rows: vec![row],
        },
        transcript: None,
    })
}
