//! Brute-force reference implementations shared by the integration tests.
//!
//! Everything here works straight from the definitions, on raw tables and
//! bitmasks, and deliberately shares no code paths with the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use mclearn::learners::{Erm, Mode};
use mclearn::{Budget, HypothesisClass, Label};
use rand::seq::SliceRandom;
use rand::Rng;

/// All `k^d` tables in lexicographic order.
pub fn all_tables(d: usize, k: usize) -> Vec<Vec<Label>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Label>| {
                (0..k as Label).map(move |y| {
                    let mut t = t.clone();
                    t.push(y);
                    t
                })
            })
            .collect();
    }
    out
}

/// Calls `f` on every non-empty subclass of `[k]^[d]` with at most `max_size` members.
pub fn for_each_subclass(d: usize, k: usize, max_size: usize, mut f: impl FnMut(&HypothesisClass)) {
    let tables = all_tables(d, k);
    let n = tables.len();
    for size in 1..=max_size.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        'outer: loop {
            let c = HypothesisClass::new(d, k, idx.iter().map(|&i| tables[i].clone())).unwrap();
            f(&c);
            let mut i = size;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if idx[i] < n - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

pub fn random_class(d: usize, k: usize, size: usize, rng: &mut impl Rng) -> HypothesisClass {
    let mut tables = all_tables(d, k);
    tables.shuffle(rng);
    tables.truncate(size);
    HypothesisClass::new(d, k, tables).unwrap()
}

fn tables_of(c: &HypothesisClass) -> Vec<Vec<Label>> {
    c.hypotheses().iter().map(|h| h.table().to_vec()).collect()
}

fn subsets_of_size(d: usize, s: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << d)
        .filter(move |m| m.count_ones() as usize == s)
        .map(move |m| (0..d).filter(|&x| m >> x & 1 == 1).collect())
}

/// Largest `S` with some pair `f1, f2` of class members that differ on all
/// of `S` and every mix of the two on `S` realized by a member.
pub fn brute_natarajan(c: &HypothesisClass) -> usize {
    let t = tables_of(c);
    for s in (1..=c.d()).rev() {
        for set in subsets_of_size(c.d(), s) {
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    if set.iter().any(|&x| t[i][x] == t[j][x]) {
                        continue;
                    }
                    let shattered = (0u32..1 << s).all(|mix| {
                        t.iter().any(|g| {
                            set.iter()
                                .enumerate()
                                .all(|(p, &x)| g[x] == if mix >> p & 1 == 1 { t[i][x] } else { t[j][x] })
                        })
                    });
                    if shattered {
                        return s;
                    }
                }
            }
        }
    }
    0
}

/// Largest `S` with some `f` such that every agreement pattern with `f` on
/// `S` is realized by a member.
pub fn brute_graph(c: &HypothesisClass) -> usize {
    let t = tables_of(c);
    for s in (1..=c.d()).rev() {
        for set in subsets_of_size(c.d(), s) {
            for f in &t {
                let patterns: HashSet<u32> = t
                    .iter()
                    .map(|g| {
                        set.iter()
                            .enumerate()
                            .fold(0u32, |m, (p, &x)| m | (u32::from(g[x] == f[x]) << p))
                    })
                    .collect();
                if patterns.len() == 1 << s {
                    return s;
                }
            }
        }
    }
    0
}

/// `masks[x][y]`: the members labeling `x` with `y`, as a bitmask.
fn label_masks(c: &HypothesisClass) -> Vec<Vec<u64>> {
    assert!(c.len() <= 64);
    (0..c.d())
        .map(|x| {
            (0..c.k() as Label)
                .map(|y| {
                    c.hypotheses()
                        .iter()
                        .enumerate()
                        .filter(|(_, h)| h.label(x) == y)
                        .fold(0u64, |m, (i, _)| m | 1 << i)
                })
                .collect()
        })
        .collect()
}

/// Memo over (sub-class, depth); a dense table for small classes.
enum TreeMemo {
    Dense(Vec<u8>, usize),
    Sparse(HashMap<(u64, usize), bool>),
}

impl TreeMemo {
    const UNKNOWN: u8 = 2;

    fn new(n: usize) -> Self {
        if n <= 12 {
            TreeMemo::Dense(vec![Self::UNKNOWN; (n + 1) << n], n)
        } else {
            TreeMemo::Sparse(HashMap::new())
        }
    }

    fn get(&self, v: u64, depth: usize) -> Option<bool> {
        match self {
            TreeMemo::Dense(t, n) => match t[(depth << n) | v as usize] {
                Self::UNKNOWN => None,
                r => Some(r == 1),
            },
            TreeMemo::Sparse(m) => m.get(&(v, depth)).copied(),
        }
    }

    fn put(&mut self, v: u64, depth: usize, r: bool) {
        match self {
            TreeMemo::Dense(t, n) => t[(depth << *n) | v as usize] = u8::from(r),
            TreeMemo::Sparse(m) => {
                m.insert((v, depth), r);
            }
        }
    }
}

fn everyone(c: &HypothesisClass) -> u64 {
    if c.len() == 64 { u64::MAX } else { (1u64 << c.len()) - 1 }
}

/// Exhaustive search for complete binary mistake trees.
pub fn brute_ldim(c: &HypothesisClass) -> usize {
    let masks = label_masks(c);
    let mut memo = TreeMemo::new(c.len());
    let mut depth = 0;
    while depth < c.len() && ld_tree_exists(&masks, everyone(c), depth + 1, &mut memo) {
        depth += 1;
    }
    depth
}

fn ld_tree_exists(masks: &[Vec<u64>], v: u64, depth: usize, memo: &mut TreeMemo) -> bool {
    if depth == 0 {
        return v != 0;
    }
    if let Some(r) = memo.get(v, depth) {
        return r;
    }
    let found = masks.iter().any(|by_label| {
        (0..by_label.len()).any(|y1| {
            (y1 + 1..by_label.len()).any(|y2| {
                ld_tree_exists(masks, v & by_label[y1], depth - 1, memo)
                    && ld_tree_exists(masks, v & by_label[y2], depth - 1, memo)
            })
        })
    });
    memo.put(v, depth, found);
    found
}

/// Exhaustive search for complete `k`-ary trees whose every path is avoided
/// edge by edge by some member.
pub fn brute_bldim(c: &HypothesisClass) -> usize {
    let masks = label_masks(c);
    let mut memo = TreeMemo::new(c.len());
    let mut depth = 0;
    while depth < c.len() && bl_tree_exists(&masks, everyone(c), depth + 1, &mut memo) {
        depth += 1;
    }
    depth
}

fn bl_tree_exists(masks: &[Vec<u64>], v: u64, depth: usize, memo: &mut TreeMemo) -> bool {
    if depth == 0 {
        return v != 0;
    }
    if let Some(r) = memo.get(v, depth) {
        return r;
    }
    let found = masks
        .iter()
        .any(|by_label| by_label.iter().all(|&m| bl_tree_exists(masks, v & !m, depth - 1, memo)));
    memo.put(v, depth, found);
    found
}

/// Every ordered sample of length `len`, realizable ones labeled by a member.
fn ordered_samples(c: &HypothesisClass, len: usize, mode: Mode) -> Vec<Vec<(usize, Label)>> {
    let pairs: Vec<(usize, Label)> = match mode {
        Mode::Agnostic => (0..c.d()).flat_map(|x| (0..c.k() as Label).map(move |y| (x, y))).collect(),
        Mode::Realizable => (0..c.d()).map(|x| (x, 0)).collect(),
    };
    let mut seqs: Vec<Vec<(usize, Label)>> = vec![vec![]];
    for _ in 0..len {
        seqs = seqs
            .into_iter()
            .flat_map(|s| {
                pairs.iter().map(move |&p| {
                    let mut s = s.clone();
                    s.push(p);
                    s
                })
            })
            .collect();
    }
    match mode {
        Mode::Agnostic => seqs,
        Mode::Realizable => {
            let mut out = BTreeSet::new();
            for s in seqs {
                for h in c.hypotheses() {
                    out.insert(s.iter().map(|&(x, _)| (x, h.label(x))).collect::<Vec<_>>());
                }
            }
            out.into_iter().collect()
        }
    }
}

/// All `m`-element index sets of `0..2m`, by recursion.
fn index_subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    if n < m {
        return vec![];
    }
    let mut out = index_subsets(n - 1, m);
    for mut s in index_subsets(n - 1, m - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Growth function over ordered double samples.
pub fn brute_growth(erm: &Erm<'_>, m: usize, mode: Mode) -> usize {
    let c = erm.class();
    let mut best = 0;
    for s in ordered_samples(c, 2 * m, mode) {
        let xs: BTreeSet<usize> = s.iter().map(|p| p.0).collect();
        let mut seen = HashSet::new();
        for idx in index_subsets(2 * m, m) {
            let sub: Vec<(usize, Label)> = idx.iter().map(|&i| s[i]).collect();
            let h = c.get(erm.fit(&sub).index);
            seen.insert(xs.iter().map(|&x| h.label(x)).collect::<Vec<_>>());
        }
        best = best.max(seen.len());
    }
    best
}

/// Essential range over ordered double samples.
pub fn brute_essential_range(erm: &Erm<'_>, m: usize, mode: Mode) -> usize {
    let c = erm.class();
    let mut best = 0;
    for s in ordered_samples(c, 2 * m, mode) {
        let mut labels = BTreeSet::new();
        for idx in index_subsets(2 * m, m) {
            let sub: Vec<(usize, Label)> = idx.iter().map(|&i| s[i]).collect();
            labels.extend(c.get(erm.fit(&sub).index).table().iter().copied());
        }
        best = best.max(labels.len());
    }
    best
}

pub fn budget() -> Budget {
    Budget::default()
}
