//! Fixed-width bitsets backing 012-rows, term masks and vertex sets.

/// A fixed-capacity set of bit positions `0..nbits`, packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    nbits: usize,
    words: Box<[u64]>,
}

impl Bits {
    pub fn new(nbits: usize) -> Self {
        Bits {
            nbits,
            words: vec![0u64; nbits.div_ceil(64)].into_boxed_slice(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.nbits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.nbits);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    /// Positions set in `self` but not in `other`.
    pub fn difference(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.nbits, other.nbits);
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & !b)
            .collect::<Vec<_>>()
            .into_boxed_slice();
        Bits {
            nbits: self.nbits,
            words,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            BitIter { word: w }.map(move |b| wi * 64 + b)
        })
    }

    pub fn from_positions(nbits: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::new(nbits);
        for p in positions {
            b.set(p);
        }
        b
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(b)
    }
}
