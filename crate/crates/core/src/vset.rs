//! Small sets of at most 128 elements packed into a `u128`.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VSet(pub u128);

pub const MAX_ELEMS: usize = 128;

impl VSet {
    pub const EMPTY: VSet = VSet(0);

    #[inline]
    pub fn single(i: usize) -> Self {
        VSet(1u128 << i)
    }

    /// All elements in `lo..=hi` (empty when `lo > hi`).
    #[inline]
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return VSet(0);
        }
        let upper = if hi >= 127 { u128::MAX } else { (1u128 << (hi + 1)) - 1 };
        VSet(upper & !((1u128 << lo) - 1))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMS && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        VSet(self.0 | 1u128 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        VSet(self.0 & !(1u128 << i))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, o: VSet) -> VSet {
        VSet(self.0 | o.0)
    }

    #[inline]
    pub fn inter(self, o: VSet) -> VSet {
        VSet(self.0 & o.0)
    }

    #[inline]
    pub fn minus(self, o: VSet) -> VSet {
        VSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: VSet) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn intersects(self, o: VSet) -> bool {
        self.0 & o.0 != 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(b)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VSet {
    fn from_iter<T: IntoIterator<Item = usize>>(it: T) -> Self {
        it.into_iter().fold(VSet(0), |s, i| s.with(i))
    }
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Calls `f` on every subset of `items` with at most `max` elements, smallest first
/// in lexicographic order of index lists.
pub fn for_each_small_subset(items: &[usize], max: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], start: usize, left: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        f(cur);
        if left == 0 {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i + 1, left - 1, cur, f);
            cur.pop();
        }
    }
    rec(items, 0, max, &mut Vec::new(), f);
}
