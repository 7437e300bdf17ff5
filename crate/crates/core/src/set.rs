//! Bitmask subsets of a small ground set.

use core::fmt;

/// Largest supported ground set; subsets fit in one `u32`.
pub const MAX_GROUND: usize = 30;

/// A subset of `{0, .., n-1}` for some ground size `n <= 30`, bit `i` set
/// iff `i` is a member.
///
/// In the algebra module the same value is read as an element of the
/// enveloping Boolean algebra `2^V`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    #[inline]
    pub const fn singleton(i: usize) -> Self {
        VertexSet(1 << i)
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    #[inline]
    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_proper_subset(self, other: VertexSet) -> bool {
        self.is_subset(other) && self.0 != other.0
    }

    #[inline]
    pub const fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to `{0, .., n-1}`.
    #[inline]
    pub const fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & low_mask(n))
    }

    /// Smallest member, if any.
    #[inline]
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    /// Shifts every member up by `offset`.
    #[inline]
    pub const fn shifted(self, offset: usize) -> Self {
        VertexSet(self.0 << offset)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Bits;

    fn into_iter(self) -> Bits {
        self.iter()
    }
}

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Debug)]
pub struct Bits(u32);

impl Bits {
    pub fn of(mask: u32) -> Self {
        Bits(mask)
    }
}

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Bits {}

/// Mask with the low `n` bits set.
#[inline]
pub const fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Nonempty submasks of `mask`, in decreasing numeric order.
pub fn nonempty_submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask).filter(|&m| m != 0);
    core::iter::from_fn(move || {
        let cur = next?;
        let sub = (cur - 1) & mask;
        next = (sub != 0).then_some(sub);
        Some(cur)
    })
}

/// Spreads the low bits of `compact` onto the positions listed in `slots`:
/// bit `j` of `compact` becomes bit `slots[j]` of the result.
pub fn expand_mask(compact: u32, slots: &[usize]) -> u32 {
    Bits(compact).fold(0, |acc, j| acc | 1 << slots[j])
}

/// Inverse of [`expand_mask`] on masks contained in the slot positions.
pub fn compress_mask(mask: u32, slots: &[usize]) -> u32 {
    slots
        .iter()
        .enumerate()
        .filter(|&(_, &s)| mask >> s & 1 == 1)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}
