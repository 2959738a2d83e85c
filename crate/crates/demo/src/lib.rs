//! Browser bindings: class dimensions, the exact ERM gap curve, and an
//! online game where the user plays adversary against SOA.

use mclearn::bitset::BitSet;
use mclearn::dimensions::{
    bandit_littlestone_value, graph_dim, littlestone_value, natarajan_dim, DimMemo, TreeKind,
};
use mclearn::learners::{Erm, ErmPolicy};
use mclearn::online::{shared_memo, soa_step, SharedMemo};
use mclearn::pac_sim::{badlb_distribution, exact_failure_probability};
use mclearn::{Budget, HypothesisClass, Instance, Label};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err(e: mclearn::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Builds `full`, `cantor` or `constants`; `k` is ignored for `cantor`.
pub fn generate(generator: &str, d: usize, k: usize, budget: &Budget) -> Result<HypothesisClass, mclearn::Error> {
    match generator {
        "full" => HypothesisClass::full(d, k, budget),
        "cantor" => HypothesisClass::cantor(d),
        "constants" => HypothesisClass::constants(d, k),
        other => Err(mclearn::Error::Argument(format!("unknown generator {other:?}"))),
    }
}

/// The four dimensions of a generated class as JSON.
#[wasm_bindgen]
pub fn dimensions(generator: &str, d: usize, k: usize) -> Result<String, JsError> {
    let budget = Budget::default();
    let class = generate(generator, d, k, &budget).map_err(err)?;
    let dn = natarajan_dim(&class, &budget).map_err(err)?.0;
    let dg = graph_dim(&class, &budget).map_err(err)?.0;
    let ld = littlestone_value(&class, &budget).map_err(err)?;
    let bl = bandit_littlestone_value(&class, &budget).map_err(err)?;
    Ok(json!({
        "d": class.d(), "k": class.k(), "size": class.len(),
        "natarajan": dn, "graph": dg, "littlestone": ld, "bandit_littlestone": bl,
    })
    .to_string())
}

/// Exact failure probabilities of good and bad ERM on the Cantor class of
/// dimension `d`, under the lower-bound distribution, for `m = 1..=m_max`.
#[wasm_bindgen]
pub fn gap_curve(d: usize, epsilon: f64, m_max: u32) -> Result<String, JsError> {
    let budget = Budget::default();
    let class = HypothesisClass::cantor(d).map_err(err)?;
    let witness = graph_dim(&class, &budget).map_err(err)?.1;
    let dist = badlb_distribution(&witness.set, &witness.f, class.d(), class.k(), epsilon).map_err(err)?;
    let good = Erm::new(&ErmPolicy::GoodObservedLabels { defaults: None }, &class, &budget).map_err(err)?;
    let bad = Erm::new(&ErmPolicy::Bad { witness: None }, &class, &budget).map_err(err)?;
    let mut rows = Vec::new();
    for m in 1..=m_max as u64 {
        rows.push(json!({
            "m": m,
            "good": exact_failure_probability(&good, &dist, m, epsilon, &budget).map_err(err)?,
            "bad": exact_failure_probability(&bad, &dist, m, epsilon, &budget).map_err(err)?,
        }));
    }
    Ok(json!({ "d": d, "k": class.k(), "epsilon": epsilon, "curve": rows }).to_string())
}

/// The user picks instances and labels; SOA predicts before each reveal.
#[wasm_bindgen]
pub struct OnlineGame {
    class: HypothesisClass,
    soa_memo: SharedMemo,
    ldim_memo: DimMemo,
    members: BitSet,
    ldim: i32,
    rounds: usize,
    mistakes: usize,
}

#[wasm_bindgen]
impl OnlineGame {
    #[wasm_bindgen(constructor)]
    pub fn new(generator: &str, d: usize, k: usize) -> Result<OnlineGame, JsError> {
        let budget = Budget::default();
        let class = generate(generator, d, k, &budget).map_err(err)?;
        let mut ldim_memo = DimMemo::new(TreeKind::Littlestone, &class, &budget);
        let members = class.all();
        let ldim = ldim_memo.value(&members).map_err(err)?;
        Ok(OnlineGame {
            soa_memo: shared_memo(TreeKind::Littlestone, &class, &budget),
            ldim_memo,
            members,
            ldim,
            rounds: 0,
            mistakes: 0,
            class,
        })
    }

    /// Current state: rounds, mistakes, version space size and the
    /// Littlestone dimension of what remains.
    pub fn state(&mut self) -> Result<String, JsError> {
        let remaining = self.ldim_memo.value(&self.members).map_err(err)?;
        Ok(json!({
            "d": self.class.d(), "k": self.class.k(),
            "ldim": self.ldim, "rounds": self.rounds, "mistakes": self.mistakes,
            "version_space": self.members.count(), "remaining_ldim": remaining,
        })
        .to_string())
    }

    /// SOA's prediction at `x` and the labels that keep the game realizable.
    pub fn offer(&mut self, x: Instance) -> Result<String, JsError> {
        self.check(x)?;
        let (prediction, _) = soa_step(&self.class, &self.soa_memo, &self.members, x).map_err(err)?;
        let mut labels = Vec::new();
        for y in 0..self.class.k() as Label {
            let v = self.restrict(x, y);
            if !v.is_empty() {
                labels.push(json!({ "label": y, "ldim": self.ldim_memo.value(&v).map_err(err)? }));
            }
        }
        Ok(json!({ "instance": x, "prediction": prediction, "labels": labels }).to_string())
    }

    /// Reveals label `y` at `x`; returns whether SOA erred.
    pub fn reveal(&mut self, x: Instance, y: Label) -> Result<bool, JsError> {
        self.check(x)?;
        let (prediction, _) = soa_step(&self.class, &self.soa_memo, &self.members, x).map_err(err)?;
        let v = self.restrict(x, y);
        if v.is_empty() {
            return Err(JsError::new(&format!("no hypothesis labels {x} as {y}")));
        }
        self.members = v;
        self.rounds += 1;
        let mistake = prediction != y;
        self.mistakes += mistake as usize;
        Ok(mistake)
    }
}

impl OnlineGame {
    fn check(&self, x: Instance) -> Result<(), JsError> {
        if x >= self.class.d() {
            return Err(JsError::new(&format!("instance {x} outside 0..{}", self.class.d())));
        }
        Ok(())
    }

    fn restrict(&self, x: Instance, y: Label) -> BitSet {
        self.members.filter(|i| self.class.get(i).label(x) == y)
    }
}
