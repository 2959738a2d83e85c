//! Fixed-width membership sets over the hypotheses of a class.
//!
//! Sub-classes (version spaces, recursion nodes of the tree dimensions) are
//! stored as bitsets over the canonical hypothesis ordering, which makes them
//! cheap to intersect and usable directly as memoization keys.

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Box<[u64]>,
}

impl BitSet {
    pub fn empty(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut set = Self::empty(len);
        for i in 0..len {
            set.insert(i);
        }
        set
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Universe size, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn and_not(&self, other: &BitSet) -> BitSet {
        self.zip_words(other, |a, b| a & !b)
    }

    fn zip_words(&self, other: &BitSet, op: impl Fn(u64, u64) -> u64) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        BitSet {
            len: self.len,
            words: self.words.iter().zip(other.words.iter()).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    /// The members as a single word, for universes of at most 64 elements.
    pub(crate) fn as_word(&self) -> Option<u64> {
        match *self.words {
            [] => Some(0),
            [w] => Some(w),
            _ => None,
        }
    }

    /// Members of `self` for which `keep` holds.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> BitSet {
        let mut out = BitSet::empty(self.len);
        for i in self.iter() {
            if keep(i) {
                out.insert(i);
            }
        }
        out
    }
}
