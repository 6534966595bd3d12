//! Bit-packed 0/1 sequences with 1-based indexing.

use std::fmt;
use std::str::FromStr;

use rand::RngCore;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite prefix of one of the processes `X` or `Y`.
///
/// Symbols are addressed `1..=len`. Bit 0 of the backing set is never used so
/// that bit positions coincide with grid coordinates (the origin is `0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    bits: BitSet,
    len: usize,
}

impl BinarySequence {
    pub fn from_bits<I: IntoIterator<Item = bool>>(symbols: I) -> Self {
        let symbols: Vec<bool> = symbols.into_iter().collect();
        let len = symbols.len();
        let mut bits = BitSet::new(len + 1);
        for (k, s) in symbols.into_iter().enumerate() {
            if s {
                bits.insert(k + 1);
            }
        }
        BinarySequence { bits, len }
    }

    pub fn zeros(len: usize) -> Self {
        BinarySequence { bits: BitSet::new(len + 1), len }
    }

    /// Fair-coin sequence; consumes `ceil((len + 1) / 64)` words from `rng`.
    pub fn random<R: RngCore + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut bits = BitSet::new(len + 1);
        for w in bits.words_mut() {
            *w = rng.next_u64();
        }
        bits.remove(0);
        bits.truncate_to_capacity();
        BinarySequence { bits, len }
    }

    /// Strict loader for the `0`/`1` text format. A single trailing `\n`
    /// (optionally preceded by `\r`) is accepted; any other byte is rejected
    /// with its offset.
    pub fn parse_bytes(data: &[u8]) -> Result<Self> {
        let body = data.strip_suffix(b"\n").unwrap_or(data);
        let body = body.strip_suffix(b"\r").unwrap_or(body);
        let mut symbols = Vec::with_capacity(body.len());
        for (offset, &byte) in body.iter().enumerate() {
            match byte {
                b'0' => symbols.push(false),
                b'1' => symbols.push(true),
                _ => return Err(Error::MalformedSequence { offset, byte }),
            }
        }
        Ok(Self::from_bits(symbols))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at 1-based index `i`. Panics outside `1..=len`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len, "index {i} outside 1..={}", self.len);
        self.bits.contains(i)
    }

    /// Like [`get`](Self::get) but `None` for index 0 or past the end.
    pub fn try_get(&self, i: i64) -> Option<bool> {
        if i >= 1 && (i as usize) <= self.len {
            Some(self.bits.contains(i as usize))
        } else {
            None
        }
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i >= 1 && i <= self.len);
        if value {
            self.bits.insert(i);
        } else {
            self.bits.remove(i);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |i| self.bits.contains(i))
    }

    /// Positions `i` in `1..=len` with `X(i) == symbol`.
    pub fn positions_equal(&self, symbol: bool) -> BitSet {
        if symbol {
            self.bits.clone()
        } else {
            let mut c = self.bits.complement();
            c.remove(0);
            c
        }
    }

    pub fn to_text(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_bytes(s.as_bytes())
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({})", self.to_text())
    }
}
