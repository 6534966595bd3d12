//! Fixed-capacity word-packed bit set used for frontiers and match masks.

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSet {
    words: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    /// Empty set over positions `0..capacity`.
    pub fn new(capacity: usize) -> Self {
        BitSet { words: vec![0; capacity.div_ceil(WORD)], capacity }
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(capacity: usize, positions: I) -> Self {
        let mut s = Self::new(capacity);
        for p in positions {
            s.insert(p);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, p: usize) {
        assert!(p < self.capacity, "position {p} outside capacity {}", self.capacity);
        self.words[p / WORD] |= 1 << (p % WORD);
    }

    pub fn remove(&mut self, p: usize) {
        if p < self.capacity {
            self.words[p / WORD] &= !(1 << (p % WORD));
        }
    }

    pub fn contains(&self, p: usize) -> bool {
        p < self.capacity && self.words[p / WORD] >> (p % WORD) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Clears any bit at or above `capacity` left over from word-level writes.
    pub(crate) fn truncate_to_capacity(&mut self) {
        let tail = self.capacity % WORD;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// Same members (those below the new capacity) over `0..capacity`.
    pub fn resized(mut self, capacity: usize) -> BitSet {
        self.words.resize(capacity.div_ceil(WORD), 0);
        self.capacity = capacity;
        self.truncate_to_capacity();
        self
    }

    pub fn complement(&self) -> BitSet {
        let mut out = BitSet { words: self.words.iter().map(|w| !w).collect(), capacity: self.capacity };
        out.truncate_to_capacity();
        out
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// Sets every bit in `lo..=hi` (clamped to capacity).
    pub fn fill_range(&mut self, lo: usize, hi: usize) {
        if self.capacity == 0 || lo >= self.capacity {
            return;
        }
        let hi = hi.min(self.capacity - 1);
        if lo > hi {
            return;
        }
        let (lw, hw) = (lo / WORD, hi / WORD);
        let lo_mask = !0u64 << (lo % WORD);
        let hi_mask = !0u64 >> (WORD - 1 - hi % WORD);
        if lw == hw {
            self.words[lw] |= lo_mask & hi_mask;
        } else {
            self.words[lw] |= lo_mask;
            for w in &mut self.words[lw + 1..hw] {
                *w = !0;
            }
            self.words[hw] |= hi_mask;
        }
    }

    /// `{ i : exists p in self with 1 <= i - p <= width }`, clamped to capacity.
    ///
    /// Runs over the set bits once and fills the merged covering ranges word by
    /// word, so the cost is linear in the capacity independent of `width`.
    pub fn forward_window(&self, width: usize) -> BitSet {
        let mut out = BitSet::new(self.capacity);
        if width == 0 {
            return out;
        }
        let mut run: Option<(usize, usize)> = None;
        for p in self.iter() {
            let (lo, hi) = (p + 1, p.saturating_add(width));
            run = match run {
                Some((rlo, rhi)) if lo <= rhi.saturating_add(1) => Some((rlo, rhi.max(hi))),
                Some((rlo, rhi)) => {
                    out.fill_range(rlo, rhi);
                    Some((lo, hi))
                }
                None => Some((lo, hi)),
            };
        }
        if let Some((rlo, rhi)) = run {
            out.fill_range(rlo, rhi);
        }
        out
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
