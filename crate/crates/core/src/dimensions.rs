//! Exact combinatorial dimensions of finite classes.
//!
//! The Natarajan and graph dimensions are found by subset search in order of
//! increasing size. Shattering is closed under taking subsets, so the search
//! stops at the first size for which no set is shattered.
//!
//! The Littlestone and bandit-Littlestone dimensions are computed by their
//! game-tree recursions, memoized on the membership bitset of the sub-class.
//! Both recursions give the empty class dimension `-1`, which makes a
//! singleton come out at `0` without special cases.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::hypothesis::{Budget, HypothesisClass, Instance, Label};

/// A set N-shattered through the pointwise-disagreeing pair `f1`, `f2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NShatterWitness {
    pub set: Vec<Instance>,
    pub f1: Vec<Label>,
    pub f2: Vec<Label>,
}

impl NShatterWitness {
    /// Re-checks the definition directly: for every `T ⊆ set` some member of
    /// the class equals `f1` on `T` and `f2` on the rest.
    pub fn verify(&self, class: &HypothesisClass) -> bool {
        let s = self.set.len();
        if self.f1.len() != s || self.f2.len() != s || s >= 64 {
            return false;
        }
        if self.f1.iter().zip(&self.f2).any(|(a, b)| a == b) {
            return false;
        }
        (0..1u64 << s).all(|t| {
            class.hypotheses().iter().any(|g| {
                self.set.iter().enumerate().all(|(i, &x)| {
                    let want = if t >> i & 1 == 1 { self.f1[i] } else { self.f2[i] };
                    g.label(x) == want
                })
            })
        })
    }
}

/// A set G-shattered through `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GShatterWitness {
    pub set: Vec<Instance>,
    pub f: Vec<Label>,
}

impl GShatterWitness {
    pub fn verify(&self, class: &HypothesisClass) -> bool {
        let s = self.set.len();
        if self.f.len() != s || s >= 64 || self.set.iter().any(|&x| x >= class.d()) {
            return false;
        }
        (0..1u64 << s).all(|t| {
            class.hypotheses().iter().any(|g| {
                self.set
                    .iter()
                    .enumerate()
                    .all(|(i, &x)| (g.label(x) == self.f[i]) == (t >> i & 1 == 1))
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeKind {
    /// Binary tree; each path must be realized exactly by some hypothesis.
    Littlestone,
    /// `k`-ary tree; each path must be avoided label-by-label by some hypothesis.
    Bandit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    Leaf,
    Node {
        instance: Instance,
        /// `(edge label, child)`, labels pairwise distinct.
        branches: Vec<(Label, TreeNode)>,
    },
}

impl TreeNode {
    pub fn branch(&self, label: Label) -> Option<&TreeNode> {
        match self {
            TreeNode::Leaf => None,
            TreeNode::Node { branches, .. } => {
                branches.iter().find(|(y, _)| *y == label).map(|(_, c)| c)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatteredTree {
    pub kind: TreeKind,
    pub arity: usize,
    pub depth: usize,
    pub root: TreeNode,
}

impl ShatteredTree {
    /// Checks completeness, arity, distinct sibling labels and the shattering
    /// condition of every root-to-leaf path against the raw class.
    pub fn verify(&self, class: &HypothesisClass) -> bool {
        let expected_arity = match self.kind {
            TreeKind::Littlestone => 2,
            TreeKind::Bandit => class.k(),
        };
        if self.arity != expected_arity {
            return false;
        }
        let mut path = Vec::new();
        self.verify_node(&self.root, self.depth, class, &mut path)
    }

    fn verify_node(
        &self,
        node: &TreeNode,
        remaining: usize,
        class: &HypothesisClass,
        path: &mut Vec<(Instance, Label)>,
    ) -> bool {
        match node {
            TreeNode::Leaf => {
                remaining == 0
                    && class.hypotheses().iter().any(|f| match self.kind {
                        TreeKind::Littlestone => path.iter().all(|&(x, y)| f.label(x) == y),
                        TreeKind::Bandit => path.iter().all(|&(x, y)| f.label(x) != y),
                    })
            }
            TreeNode::Node { instance, branches } => {
                if remaining == 0 || *instance >= class.d() || branches.len() != self.arity {
                    return false;
                }
                let mut seen = vec![false; class.k()];
                for (y, _) in branches {
                    match seen.get_mut(*y as usize) {
                        Some(s) if !*s => *s = true,
                        _ => return false,
                    }
                }
                branches.iter().all(|(y, child)| {
                    path.push((*instance, *y));
                    let ok = self.verify_node(child, remaining - 1, class, path);
                    path.pop();
                    ok
                })
            }
        }
    }

    /// Root-to-leaf paths as `(instance, edge label)` sequences.
    pub fn paths(&self) -> Vec<Vec<(Instance, Label)>> {
        fn walk(node: &TreeNode, path: &mut Vec<(Instance, Label)>, out: &mut Vec<Vec<(Instance, Label)>>) {
            match node {
                TreeNode::Leaf => out.push(path.clone()),
                TreeNode::Node { instance, branches } => {
                    for (y, child) in branches {
                        path.push((*instance, *y));
                        walk(child, path, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut Vec::new(), &mut out);
        out
    }
}

/// Calls `f` on every `s`-subset of `0..n` in lexicographic order until it returns `true`.
fn find_subset(n: usize, s: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if s > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = s;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - s + i {
                idx[i] += 1;
                for j in i + 1..s {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Distinct restrictions `H|_S` in sorted order, plus a lookup set.
fn restrictions(class: &HypothesisClass, set: &[Instance]) -> (Vec<Vec<Label>>, HashSet<Vec<Label>>) {
    let lookup: HashSet<Vec<Label>> = class
        .hypotheses()
        .iter()
        .map(|h| set.iter().map(|&x| h.label(x)).collect())
        .collect();
    let mut sorted: Vec<Vec<Label>> = lookup.iter().cloned().collect();
    sorted.sort_unstable();
    (sorted, lookup)
}

fn check_domain(class: &HypothesisClass, budget: &Budget) -> Result<()> {
    Budget::check(
        budget.max_domain as u128,
        class.d() as u128,
        "subset search domain size",
    )
}

fn n_shattering_pair(rows: &[Vec<Label>], lookup: &HashSet<Vec<Label>>, s: usize) -> Option<(usize, usize)> {
    if (rows.len() as u128) < 1u128 << s {
        return None;
    }
    let mut mix = vec![0 as Label; s];
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (f1, f2) = (&rows[i], &rows[j]);
            if f1.iter().zip(f2).any(|(a, b)| a == b) {
                continue;
            }
            let all = (1..(1u64 << s) - 1).all(|t| {
                for p in 0..s {
                    mix[p] = if t >> p & 1 == 1 { f1[p] } else { f2[p] };
                }
                lookup.contains(&mix)
            });
            if all {
                return Some((i, j));
            }
        }
    }
    None
}

fn g_shattering_function(rows: &[Vec<Label>], s: usize) -> Option<usize> {
    let patterns = 1usize << s;
    if rows.len() < patterns {
        return None;
    }
    let mut seen = vec![false; patterns];
    for (fi, f) in rows.iter().enumerate() {
        seen.iter_mut().for_each(|b| *b = false);
        let mut count = 0;
        for g in rows {
            let mask = (0..s).fold(0usize, |m, p| m | (usize::from(g[p] == f[p]) << p));
            if !seen[mask] {
                seen[mask] = true;
                count += 1;
                if count == patterns {
                    return Some(fi);
                }
            }
        }
    }
    None
}

/// Exact Natarajan dimension with a verified witness.
pub fn natarajan_dim(class: &HypothesisClass, budget: &Budget) -> Result<(usize, NShatterWitness)> {
    check_domain(class, budget)?;
    let mut best = NShatterWitness {
        set: vec![],
        f1: vec![],
        f2: vec![],
    };
    for s in 1..=class.d().min(63) {
        let mut found = None;
        find_subset(class.d(), s, |set| {
            let (rows, lookup) = restrictions(class, set);
            if let Some((i, j)) = n_shattering_pair(&rows, &lookup, s) {
                found = Some(NShatterWitness {
                    set: set.to_vec(),
                    f1: rows[i].clone(),
                    f2: rows[j].clone(),
                });
                true
            } else {
                false
            }
        });
        match found {
            Some(w) => best = w,
            None => break,
        }
    }
    if !best.verify(class) {
        return Err(Error::Invariant("Natarajan witness failed re-verification".into()));
    }
    Ok((best.set.len(), best))
}

/// Exact graph dimension with a verified witness. Candidate witness functions
/// are drawn from `H|_S`: for `T = S` the shattering function itself must be
/// realized on `S`.
pub fn graph_dim(class: &HypothesisClass, budget: &Budget) -> Result<(usize, GShatterWitness)> {
    check_domain(class, budget)?;
    let mut best = GShatterWitness { set: vec![], f: vec![] };
    for s in 1..=class.d().min(63) {
        let mut found = None;
        find_subset(class.d(), s, |set| {
            let (rows, _) = restrictions(class, set);
            if let Some(fi) = g_shattering_function(&rows, s) {
                found = Some(GShatterWitness {
                    set: set.to_vec(),
                    f: rows[fi].clone(),
                });
                true
            } else {
                false
            }
        });
        match found {
            Some(w) => best = w,
            None => break,
        }
    }
    if !best.verify(class) {
        return Err(Error::Invariant("graph-dimension witness failed re-verification".into()));
    }
    Ok((best.set.len(), best))
}

/// VC dimension of a binary class; both multiclass dimensions coincide with it.
pub fn vc_dim(class: &HypothesisClass, budget: &Budget) -> Result<usize> {
    if class.k() != 2 {
        return Err(Error::arg(format!("VC dimension needs k = 2, got k = {}", class.k())));
    }
    Ok(natarajan_dim(class, budget)?.0)
}

/// Sub-class representation used inside the recursions: a plain word for
/// classes of at most 64 hypotheses, a bitset otherwise.
trait Members: Clone + Eq + Hash {
    fn size(&self) -> usize;
    fn and(&self, other: &Self) -> Self;
    fn and_not(&self, other: &Self) -> Self;
}

impl Members for u64 {
    fn size(&self) -> usize {
        self.count_ones() as usize
    }

    fn and(&self, other: &Self) -> Self {
        self & other
    }

    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }
}

impl Members for BitSet {
    fn size(&self) -> usize {
        self.count()
    }

    fn and(&self, other: &Self) -> Self {
        BitSet::and(self, other)
    }

    fn and_not(&self, other: &Self) -> Self {
        BitSet::and_not(self, other)
    }
}

#[derive(Clone, Debug)]
struct Engine<S> {
    kind: TreeKind,
    /// `masks[x]`: for each label used at `x`, the hypotheses giving it.
    masks: Vec<Vec<S>>,
    cache: HashMap<S, i32>,
    capacity: usize,
    steps: u128,
    step_limit: u128,
}

impl<S: Members> Engine<S> {
    fn new(kind: TreeKind, class: &HypothesisClass, budget: &Budget, lift: impl Fn(BitSet) -> S) -> Self {
        let masks = (0..class.d())
            .map(|x| partition(class, &class.all(), x).into_values().map(&lift).collect())
            .collect();
        Engine {
            kind,
            masks,
            cache: HashMap::new(),
            capacity: budget.memo_entries.max(1),
            steps: 0,
            step_limit: budget.search_steps,
        }
    }

    fn exhausted(&self) -> bool {
        self.steps > self.step_limit
    }

    /// Counts an uncached evaluation; once over the limit every answer is
    /// meaningless and the caller reports a budget error.
    fn step(&mut self) -> bool {
        self.steps += 1;
        self.exhausted()
    }

    fn value(&mut self, v: &S) -> Result<i32> {
        let value = match self.kind {
            TreeKind::Littlestone => self.ldim(v),
            TreeKind::Bandit => self.bldim(v),
        };
        if self.exhausted() {
            return Err(Error::Budget {
                what: "tree-dimension search steps",
                needed: self.steps,
                limit: self.step_limit,
            });
        }
        Ok(value)
    }

    fn remember(&mut self, key: S, value: i32) {
        if self.cache.len() >= self.capacity {
            self.cache.clear();
        }
        self.cache.insert(key, value);
    }

    /// Non-empty label groups of `v` at `x`, largest first.
    fn groups(&self, v: &S, x: Instance) -> Vec<(usize, S)> {
        let mut groups: Vec<(usize, S)> = self.masks[x]
            .iter()
            .map(|m| v.and(m))
            .map(|g| (g.size(), g))
            .filter(|(n, _)| *n > 0)
            .collect();
        groups.sort_by_key(|(n, _)| std::cmp::Reverse(*n));
        groups
    }

    fn ldim(&mut self, v: &S) -> i32 {
        let n = v.size();
        if n <= 1 {
            return n as i32 - 1;
        }
        if let Some(&cached) = self.cache.get(v) {
            return cached;
        }
        if self.step() {
            return 0;
        }
        let upper = n.ilog2() as i32;
        let mut best = 0;
        for x in 0..self.masks.len() {
            let groups = self.groups(v, x);
            if groups.len() < 2 || (groups[1].0.ilog2() as i32) < best {
                continue;
            }
            // the split is worth 1 + the second-largest child dimension
            let (mut top, mut second) = (-1, -1);
            for (size, g) in &groups {
                if (size.ilog2() as i32) <= second {
                    break;
                }
                let val = self.ldim(g);
                if val > top {
                    second = top;
                    top = val;
                } else if val > second {
                    second = val;
                }
            }
            best = best.max(1 + second);
            if best == upper {
                break;
            }
        }
        self.remember(v.clone(), best);
        best
    }

    fn bldim(&mut self, v: &S) -> i32 {
        let n = v.size();
        if n <= 1 {
            return n as i32 - 1;
        }
        if let Some(&cached) = self.cache.get(v) {
            return cached;
        }
        if self.step() {
            return 0;
        }
        let upper = n as i32 - 1;
        let mut best = 0;
        for x in 0..self.masks.len() {
            let groups = self.groups(v, x);
            // with one used label every guess but that one leaves V whole,
            // and that one empties it: the instance is worth nothing
            if groups.len() < 2 || (n - groups[0].0) as i32 <= best {
                continue;
            }
            // Labels unused at x leave `v` unchanged; they never lower the min.
            let mut worst = i32::MAX;
            for (_, g) in &groups {
                let val = self.bldim(&v.and_not(g));
                worst = worst.min(val);
                if worst < best {
                    break;
                }
            }
            best = best.max(1 + worst);
            if best == upper {
                break;
            }
        }
        self.remember(v.clone(), best);
        best
    }
}

#[derive(Clone, Debug)]
enum EngineRepr {
    Word(Engine<u64>),
    Wide(Engine<BitSet>),
}

/// Memo table for one of the two tree recursions over the sub-classes of a
/// fixed class. Flushed wholesale when it outgrows its capacity.
#[derive(Clone, Debug)]
pub struct DimMemo {
    kind: TreeKind,
    universe: usize,
    engine: EngineRepr,
}

impl DimMemo {
    pub fn new(kind: TreeKind, class: &HypothesisClass, budget: &Budget) -> Self {
        let engine = if class.len() <= 64 {
            EngineRepr::Word(Engine::new(kind, class, budget, |b| b.as_word().expect("small class")))
        } else {
            EngineRepr::Wide(Engine::new(kind, class, budget, |b| b))
        };
        DimMemo {
            kind,
            universe: class.len(),
            engine,
        }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    /// Dimension of the sub-class `members` (`-1` when empty).
    pub fn value(&mut self, members: &BitSet) -> Result<i32> {
        assert_eq!(members.universe(), self.universe, "sub-class of a different class");
        match &mut self.engine {
            EngineRepr::Word(e) => e.value(&members.as_word().expect("small class")),
            EngineRepr::Wide(e) => e.value(members),
        }
    }
}

/// Splits `v` by the label each member assigns to `x`.
fn partition(class: &HypothesisClass, v: &BitSet, x: Instance) -> BTreeMap<Label, BitSet> {
    let mut groups: BTreeMap<Label, BitSet> = BTreeMap::new();
    for i in v.iter() {
        groups
            .entry(class.get(i).label(x))
            .or_insert_with(|| BitSet::empty(v.universe()))
            .insert(i);
    }
    groups
}

fn tree_size(arity: usize, depth: usize) -> u128 {
    (0..=depth as u32).fold(0u128, |acc, i| {
        acc.saturating_add((arity as u128).saturating_pow(i))
    })
}

/// Littlestone dimension and a verified shattered tree of that depth.
pub fn littlestone_dim(class: &HypothesisClass, budget: &Budget) -> Result<(usize, ShatteredTree)> {
    let mut memo = DimMemo::new(TreeKind::Littlestone, class, budget);
    let depth = memo.value(&class.all())? as usize;
    Budget::check(budget.tree_nodes, tree_size(2, depth), "Littlestone witness tree")?;
    let root = build_ld_tree(class, &mut memo, &class.all(), depth)?;
    let tree = ShatteredTree {
        kind: TreeKind::Littlestone,
        arity: 2,
        depth,
        root,
    };
    if !tree.verify(class) {
        return Err(Error::Invariant("Littlestone tree failed re-verification".into()));
    }
    Ok((depth, tree))
}

fn build_ld_tree(class: &HypothesisClass, memo: &mut DimMemo, v: &BitSet, depth: usize) -> Result<TreeNode> {
    if depth == 0 {
        return Ok(TreeNode::Leaf);
    }
    for x in 0..class.d() {
        let mut good: Vec<(Label, BitSet)> = Vec::with_capacity(2);
        for (y, g) in partition(class, v, x) {
            if good.len() < 2 && memo.value(&g)? >= depth as i32 - 1 {
                good.push((y, g));
            }
        }
        if good.len() == 2 {
            let mut branches = Vec::with_capacity(2);
            for (y, g) in good {
                branches.push((y, build_ld_tree(class, memo, &g, depth - 1)?));
            }
            return Ok(TreeNode::Node { instance: x, branches });
        }
    }
    Err(Error::Invariant(format!("no split realizes Littlestone depth {depth}")))
}

/// Bandit-Littlestone dimension and a verified BL-shattered `k`-ary tree.
pub fn bandit_littlestone_dim(class: &HypothesisClass, budget: &Budget) -> Result<(usize, ShatteredTree)> {
    let mut memo = DimMemo::new(TreeKind::Bandit, class, budget);
    let depth = memo.value(&class.all())? as usize;
    Budget::check(budget.tree_nodes, tree_size(class.k(), depth), "bandit-Littlestone witness tree")?;
    let root = build_bl_tree(class, &mut memo, &class.all(), depth)?;
    let tree = ShatteredTree {
        kind: TreeKind::Bandit,
        arity: class.k(),
        depth,
        root,
    };
    if !tree.verify(class) {
        return Err(Error::Invariant("bandit-Littlestone tree failed re-verification".into()));
    }
    Ok((depth, tree))
}

fn build_bl_tree(class: &HypothesisClass, memo: &mut DimMemo, v: &BitSet, depth: usize) -> Result<TreeNode> {
    if depth == 0 {
        return Ok(TreeNode::Leaf);
    }
    let need = depth as i32 - 1;
    for x in 0..class.d() {
        // a label nobody in `v` uses at `x` leaves `v` whole, which already has depth `depth`
        let removed: Vec<(Label, BitSet)> = partition(class, v, x)
            .into_iter()
            .map(|(y, g)| (y, v.and_not(&g)))
            .collect();
        let mut all_deep = true;
        for (_, c) in &removed {
            if memo.value(c)? < need {
                all_deep = false;
                break;
            }
        }
        if all_deep {
            let mut branches = Vec::with_capacity(class.k());
            for y in 0..class.k() as Label {
                let child = removed.iter().find(|(l, _)| *l == y).map_or(v, |(_, c)| c);
                branches.push((y, build_bl_tree(class, memo, child, depth - 1)?));
            }
            return Ok(TreeNode::Node { instance: x, branches });
        }
    }
    Err(Error::Invariant(format!("no instance realizes bandit depth {depth}")))
}

/// Littlestone dimension value only, without building the witness tree.
pub fn littlestone_value(class: &HypothesisClass, budget: &Budget) -> Result<usize> {
    Ok(DimMemo::new(TreeKind::Littlestone, class, budget).value(&class.all())? as usize)
}

pub fn bandit_littlestone_value(class: &HypothesisClass, budget: &Budget) -> Result<usize> {
    Ok(DimMemo::new(TreeKind::Bandit, class, budget).value(&class.all())? as usize)
}

/// `d^dN * k^(2 dN)`, the cardinality bound of a class with Natarajan dimension `dN`.
pub fn natarajan_cardinality_bound(d: u64, k: u64, dn: u32) -> BigUint {
    BigUint::from(d).pow(dn) * BigUint::from(k).pow(2 * dn)
}

/// The constant in `d_G <= 4.67 log2(k) d_N`, rounded up after multiplying by `log2 k`.
pub fn graph_natarajan_factor(k: usize) -> u64 {
    (4.67 * (k as f64).log2()).ceil() as u64
}

/// `d_N <= d_G <= ceil(4.67 log2 k) d_N` (only the left inequality for `k < 2`).
pub fn graph_natarajan_chain_holds(dn: usize, dg: usize, k: usize) -> bool {
    dn <= dg && (k < 2 || dg as u64 <= graph_natarajan_factor(k) * dn as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn natarajan_examples() {
        let c3 = HypothesisClass::cantor(3).unwrap();
        assert_eq!(natarajan_dim(&c3, &b()).unwrap().0, 1);
        let single = HypothesisClass::new(3, 4, [vec![1, 2, 3]]).unwrap();
        assert_eq!(natarajan_dim(&single, &b()).unwrap().0, 0);
        let full = HypothesisClass::full(3, 2, &b()).unwrap();
        let (dn, w) = natarajan_dim(&full, &b()).unwrap();
        assert_eq!(dn, 3);
        assert_eq!(w.set, vec![0, 1, 2]);
    }

    #[test]
    fn graph_examples() {
        let c3 = HypothesisClass::cantor(3).unwrap();
        let (dg, w) = graph_dim(&c3, &b()).unwrap();
        assert_eq!(dg, 3);
        // only f_∅ (all *) G-shatters the whole domain
        assert_eq!(w.f, vec![8, 8, 8]);
        assert_eq!(graph_dim(&HypothesisClass::full(2, 3, &b()).unwrap(), &b()).unwrap().0, 2);
        let single = HypothesisClass::new(2, 2, [vec![0, 1]]).unwrap();
        assert_eq!(graph_dim(&single, &b()).unwrap().0, 0);
    }

    #[test]
    fn vc_examples() {
        assert_eq!(vc_dim(&HypothesisClass::full(4, 2, &b()).unwrap(), &b()).unwrap(), 4);
        assert_eq!(vc_dim(&HypothesisClass::constants(3, 2).unwrap(), &b()).unwrap(), 1);
        let single = HypothesisClass::new(2, 2, [vec![0, 0]]).unwrap();
        assert_eq!(vc_dim(&single, &b()).unwrap(), 0);
        assert!(matches!(
            vc_dim(&HypothesisClass::constants(1, 3).unwrap(), &b()),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn domain_budget() {
        let tight = Budget {
            max_domain: 2,
            ..b()
        };
        let full = HypothesisClass::full(3, 2, &b()).unwrap();
        assert!(matches!(natarajan_dim(&full, &tight), Err(Error::Budget { .. })));
        assert!(matches!(graph_dim(&full, &tight), Err(Error::Budget { .. })));
    }

    #[test]
    fn littlestone_examples() {
        let single = HypothesisClass::new(2, 3, [vec![2, 1]]).unwrap();
        let (ld, tree) = littlestone_dim(&single, &b()).unwrap();
        assert_eq!(ld, 0);
        assert_eq!(tree.root, TreeNode::Leaf);
        assert_eq!(littlestone_dim(&HypothesisClass::full(3, 2, &b()).unwrap(), &b()).unwrap().0, 3);
        for k in 2..6 {
            for d in 1..3 {
                let c = HypothesisClass::constants(d, k).unwrap();
                assert_eq!(littlestone_dim(&c, &b()).unwrap().0, 1, "k={k} d={d}");
            }
        }
        assert_eq!(littlestone_value(&HypothesisClass::cantor(6).unwrap(), &b()).unwrap(), 1);
    }

    #[test]
    fn bandit_littlestone_examples() {
        let single = HypothesisClass::new(1, 3, [vec![1]]).unwrap();
        assert_eq!(bandit_littlestone_dim(&single, &b()).unwrap().0, 0);
        let (bl, tree) = bandit_littlestone_dim(&HypothesisClass::constants(1, 3).unwrap(), &b()).unwrap();
        assert_eq!(bl, 2);
        assert_eq!(tree.paths().len(), 9);
        assert_eq!(
            bandit_littlestone_dim(&HypothesisClass::constants(1, 2).unwrap(), &b()).unwrap().0,
            1
        );
    }

    #[test]
    fn bandit_tree_budget() {
        let tight = Budget {
            tree_nodes: 5,
            ..b()
        };
        let c = HypothesisClass::constants(1, 4).unwrap();
        assert!(matches!(bandit_littlestone_dim(&c, &tight), Err(Error::Budget { .. })));
        assert_eq!(bandit_littlestone_value(&c, &tight).unwrap(), 3);
    }

    #[test]
    fn tampered_witnesses_are_rejected() {
        let full = HypothesisClass::full(2, 2, &b()).unwrap();
        let (_, mut tree) = littlestone_dim(&full, &b()).unwrap();
        assert!(tree.verify(&full));
        tree.depth += 1;
        assert!(!tree.verify(&full));

        let c = HypothesisClass::cantor(2).unwrap();
        let bad = NShatterWitness {
            set: vec![0, 1],
            f1: vec![1, 2],
            f2: vec![4, 4],
        };
        assert!(!bad.verify(&c));
        let g = GShatterWitness {
            set: vec![0, 1],
            f: vec![1, 1],
        };
        assert!(!g.verify(&c));
    }

    #[test]
    fn cardinality_bound_examples() {
        assert_eq!(natarajan_cardinality_bound(3, 9, 1), BigUint::from(243u32));
        assert_eq!(natarajan_cardinality_bound(17, 4, 0), BigUint::from(1u32));
        assert_eq!(natarajan_cardinality_bound(5, 2, 2), BigUint::from(400u32));
    }

    #[test]
    fn chain_factor() {
        assert_eq!(graph_natarajan_factor(2), 5);
        assert_eq!(graph_natarajan_factor(3), 8);
        assert!(graph_natarajan_chain_holds(1, 3, 9));
        assert!(!graph_natarajan_chain_holds(2, 1, 3));
    }
}
