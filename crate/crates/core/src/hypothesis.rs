//! Finite multiclass hypothesis classes.
//!
//! Instances are the integers `0..d` and labels the integers `0..k`. A class
//! is kept in canonical form: duplicate-free and sorted by lexicographic table
//! order, so two classes are equal exactly when they contain the same
//! functions, and a hypothesis can be addressed by its position.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub type Instance = usize;
pub type Label = u32;

/// Enumeration limits. Exceeding any of them is a hard error; nothing is
/// ever silently truncated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of hypotheses a generator or symmetrization may produce.
    pub hypotheses: u128,
    /// Maximum domain size for the subset searches of the Natarajan and graph dimensions.
    pub max_domain: usize,
    /// Maximum number of memoized sub-classes held by a dimension cache before it is flushed.
    pub memo_entries: usize,
    /// Maximum number of nodes in a reconstructed shattered tree.
    pub tree_nodes: u128,
    /// Maximum number of candidate samples / experts in exhaustive enumerations.
    pub enumeration: u128,
    /// Maximum number of uncached sub-class evaluations in one tree-dimension cache.
    pub search_steps: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            hypotheses: 1 << 20,
            max_domain: 20,
            memo_entries: 1 << 22,
            tree_nodes: 1 << 20,
            enumeration: 1 << 20,
            search_steps: 1 << 22,
        }
    }
}

impl Budget {
    /// Default budget, with `MCLEARN_BUDGET=<n>` overriding every count-type limit.
    pub fn from_env() -> Result<Self> {
        let mut budget = Budget::default();
        if let Ok(raw) = std::env::var("MCLEARN_BUDGET") {
            let n: u128 = raw
                .trim()
                .parse()
                .map_err(|_| Error::arg(format!("MCLEARN_BUDGET must be an integer, got {raw:?}")))?;
            budget.hypotheses = n;
            budget.tree_nodes = n;
            budget.enumeration = n;
            budget.search_steps = n;
        }
        Ok(budget)
    }

    pub(crate) fn check(limit: u128, needed: u128, what: &'static str) -> Result<()> {
        if needed > limit {
            Err(Error::Budget {
                what,
                needed,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

/// A total function from `0..d` to `0..k`, stored as its value table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hypothesis {
    table: Vec<Label>,
}

impl Hypothesis {
    pub fn new(table: Vec<Label>) -> Self {
        Hypothesis { table }
    }

    #[inline]
    pub fn label(&self, x: Instance) -> Label {
        self.table[x]
    }

    pub fn table(&self) -> &[Label] {
        &self.table
    }

    pub fn range(&self) -> BTreeSet<Label> {
        self.table.iter().copied().collect()
    }

    /// Number of sample pairs this hypothesis gets wrong.
    pub fn mistakes(&self, sample: &[(Instance, Label)]) -> usize {
        sample.iter().filter(|&&(x, y)| self.table[x] != y).count()
    }

    pub fn relabel(&self, perm: &[Label]) -> Hypothesis {
        Hypothesis::new(self.table.iter().map(|&y| perm[y as usize]).collect())
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, y) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{y}")?;
        }
        write!(f, ")")
    }
}

/// A finite sequence of labeled instances. Order and repeats are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabeledSample {
    pub pairs: Vec<(Instance, Label)>,
}

impl LabeledSample {
    pub fn new(pairs: Vec<(Instance, Label)>) -> Self {
        LabeledSample { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.pairs.iter().map(|&(_, y)| y).collect()
    }

    pub fn instances(&self) -> BTreeSet<Instance> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }

    pub fn check_bounds(&self, d: usize, k: usize) -> Result<()> {
        for (i, &(x, y)) in self.pairs.iter().enumerate() {
            if x >= d || y as usize >= k {
                return Err(Error::arg(format!(
                    "sample pair {i} = ({x}, {y}) outside domain {d} x labels {k}"
                )));
            }
        }
        Ok(())
    }
}

impl From<Vec<(Instance, Label)>> for LabeledSample {
    fn from(pairs: Vec<(Instance, Label)>) -> Self {
        LabeledSample::new(pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisClass {
    d: usize,
    k: usize,
    hypotheses: Vec<Hypothesis>,
}

impl HypothesisClass {
    /// Builds a class from arbitrary tables, validating shapes and bringing
    /// the result into canonical form.
    pub fn new(d: usize, k: usize, tables: impl IntoIterator<Item = Vec<Label>>) -> Result<Self> {
        if d == 0 || k == 0 {
            return Err(Error::arg(format!("domain size and label count must be >= 1 (d={d}, k={k})")));
        }
        if k > Label::MAX as usize {
            return Err(Error::arg(format!("label count {k} does not fit a label id")));
        }
        let mut hypotheses = Vec::new();
        for (i, table) in tables.into_iter().enumerate() {
            if table.len() != d {
                return Err(Error::arg(format!(
                    "hypothesis {i} has {} entries, expected {d}",
                    table.len()
                )));
            }
            if let Some(&y) = table.iter().find(|&&y| y as usize >= k) {
                return Err(Error::arg(format!("hypothesis {i} uses label {y} >= k={k}")));
            }
            hypotheses.push(Hypothesis::new(table));
        }
        Self::from_sorted_or_not(d, k, hypotheses)
    }

    fn from_sorted_or_not(d: usize, k: usize, mut hypotheses: Vec<Hypothesis>) -> Result<Self> {
        hypotheses.sort_unstable();
        hypotheses.dedup();
        if hypotheses.is_empty() {
            return Err(Error::arg("a hypothesis class needs at least one hypothesis"));
        }
        Ok(HypothesisClass { d, k, hypotheses })
    }

    /// All `k^d` functions from `0..d` to `0..k`.
    pub fn full(d: usize, k: usize, budget: &Budget) -> Result<Self> {
        if d == 0 || k == 0 {
            return Err(Error::arg(format!("domain size and label count must be >= 1 (d={d}, k={k})")));
        }
        let count = (k as u128)
            .checked_pow(d as u32)
            .unwrap_or(u128::MAX);
        Budget::check(budget.hypotheses, count, "full class enumeration")?;
        let mut hypotheses = Vec::with_capacity(count as usize);
        let mut table = vec![0 as Label; d];
        // odometer in lexicographic order, so the output is already canonical
        loop {
            hypotheses.push(Hypothesis::new(table.clone()));
            let mut pos = d;
            loop {
                if pos == 0 {
                    return Ok(HypothesisClass { d, k, hypotheses });
                }
                pos -= 1;
                table[pos] += 1;
                if (table[pos] as usize) < k {
                    break;
                }
                table[pos] = 0;
            }
        }
    }

    /// The class `{f_A : A ⊆ [d]}` with `f_A(x) = A` for `x ∈ A` and `*`
    /// otherwise. Subset labels are bitmasks; `*` is label `2^d`.
    pub fn cantor(d: usize) -> Result<Self> {
        if d == 0 || d > 16 {
            return Err(Error::Budget {
                what: "cantor class domain size (1..=16)",
                needed: d as u128,
                limit: 16,
            });
        }
        let star = cantor_star(d);
        let tables = (0..1u32 << d).map(|mask| {
            (0..d)
                .map(|x| if mask >> x & 1 == 1 { mask } else { star })
                .collect::<Vec<_>>()
        });
        Self::new(d, star as usize + 1, tables)
    }

    /// The `k` constant functions over `0..d`.
    pub fn constants(d: usize, k: usize) -> Result<Self> {
        Self::new(d, k, (0..k as Label).map(|y| vec![y; d]))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn get(&self, index: usize) -> &Hypothesis {
        &self.hypotheses[index]
    }

    pub fn position(&self, table: &[Label]) -> Option<usize> {
        self.hypotheses
            .binary_search_by(|h| h.table().cmp(table))
            .ok()
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.len())
    }

    /// Members of the class consistent with every pair of `sample`.
    pub fn consistent(&self, sample: &[(Instance, Label)]) -> BitSet {
        BitSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| self.hypotheses[i].mistakes(sample) == 0),
        )
    }

    pub fn is_realizable(&self, sample: &[(Instance, Label)]) -> bool {
        self.hypotheses.iter().any(|h| h.mistakes(sample) == 0)
    }

    /// `H|_S`, re-indexed to `0..|S|` in ascending original order.
    pub fn restrict(&self, instances: &[Instance]) -> Result<Self> {
        let set: BTreeSet<Instance> = instances.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::arg("restriction to an empty instance set"));
        }
        if let Some(&x) = set.iter().find(|&&x| x >= self.d) {
            return Err(Error::arg(format!("instance {x} outside domain of size {}", self.d)));
        }
        let tables = self
            .hypotheses
            .iter()
            .map(|h| set.iter().map(|&x| h.label(x)).collect::<Vec<_>>());
        Self::new(set.len(), self.k, tables)
    }

    /// Closure of the class under every permutation of the label set.
    pub fn symmetrize(&self, budget: &Budget) -> Result<Self> {
        let perms = factorial(self.k).saturating_mul(self.len() as u128);
        Budget::check(budget.hypotheses, perms, "symmetrization (k! * |H|)")?;
        let mut out = Vec::new();
        for_each_permutation(self.k, |perm| {
            out.extend(self.hypotheses.iter().map(|h| h.relabel(perm)));
        });
        Self::from_sorted_or_not(self.d, self.k, out)
    }

    /// Closed under all label permutations. Adjacent transpositions generate
    /// the symmetric group, so only those `k - 1` swaps are checked.
    pub fn is_symmetric(&self) -> bool {
        let mut perm: Vec<Label> = (0..self.k as Label).collect();
        for i in 0..self.k.saturating_sub(1) {
            perm.swap(i, i + 1);
            let closed = self
                .hypotheses
                .iter()
                .all(|h| self.position(h.relabel(&perm).table()).is_some());
            perm.swap(i, i + 1);
            if !closed {
                return false;
            }
        }
        true
    }

    /// Parses the `HCLASS v1` text format: a header line `d k n`, then `n`
    /// lines of `d` whitespace-separated labels.
    pub fn from_hclass(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header `d k n`".into(),
        })?;
        let nums = parse_ints(header, hline + 1)?;
        if nums.len() != 3 {
            return Err(Error::Parse {
                line: hline + 1,
                message: format!("header must be `d k n`, found {} fields", nums.len()),
            });
        }
        let (d, k, n) = (nums[0] as usize, nums[1] as usize, nums[2] as usize);
        let mut tables = Vec::with_capacity(n);
        for (lno, line) in lines {
            let row = parse_ints(line, lno + 1)?;
            if row.len() != d {
                return Err(Error::Parse {
                    line: lno + 1,
                    message: format!("expected {d} labels, found {}", row.len()),
                });
            }
            if let Some(&y) = row.iter().find(|&&y| y as usize >= k) {
                return Err(Error::Parse {
                    line: lno + 1,
                    message: format!("label {y} out of range for k={k}"),
                });
            }
            tables.push(row.into_iter().map(|y| y as Label).collect::<Vec<_>>());
        }
        if tables.len() != n {
            return Err(Error::Parse {
                line: hline + 1,
                message: format!("header announces {n} hypotheses, found {}", tables.len()),
            });
        }
        Self::new(d, k, tables).map_err(|e| Error::Parse {
            line: hline + 1,
            message: e.to_string(),
        })
    }

    pub fn to_hclass(&self) -> String {
        let mut out = format!("{} {} {}\n", self.d, self.k, self.len());
        for h in &self.hypotheses {
            let row: Vec<String> = h.table().iter().map(|y| y.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The `*` label of [`HypothesisClass::cantor`].
pub fn cantor_star(d: usize) -> Label {
    1 << d
}

fn parse_ints(line: &str, lno: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lno,
                message: format!("not a non-negative integer: {tok:?}"),
            })
        })
        .collect()
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i)).unwrap_or(u128::MAX)
}

/// Calls `f` with every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[Label])) {
    let mut perm: Vec<Label> = (0..n as Label).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
