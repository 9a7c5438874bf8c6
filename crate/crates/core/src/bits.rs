//! Fixed-length bit vectors packed into `u64` words.
//!
//! Bit `k` lives in word `k / 64` at position `k % 64`. Padding bits past
//! `len` are kept at zero so that word-level equality, hashing and popcount
//! never see garbage.

use std::fmt;

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

impl BitSet {
    pub fn zeros(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = BitSet {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        b.clear_padding();
        b
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Self::zeros(len);
        for i in indices {
            b.set(i, true);
        }
        b
    }

    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(
            words.len(),
            words_for(len),
            "word count does not match length"
        );
        let mut b = BitSet { len, words };
        b.clear_padding();
        b
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        xor_words(&mut self.words, &other.words);
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        BitSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        popcount(&self.words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + t)
                }
            })
        })
    }

    /// Little-endian byte image: bit `k` is bit `k % 8` of byte `k / 8`.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        let nbytes = self.len.div_ceil(8);
        self.words
            .iter()
            .flat_map(|w| w.to_le_bytes())
            .take(nbytes)
            .collect()
    }

    pub fn from_le_bytes(len: usize, bytes: &[u8]) -> Option<Self> {
        if bytes.len() != len.div_ceil(8) {
            return None;
        }
        let mut words = vec![0u64; words_for(len)];
        for (i, &byte) in bytes.iter().enumerate() {
            words[i / 8] |= (byte as u64) << (8 * (i % 8));
        }
        let b = BitSet { len, words };
        // reject set padding bits rather than silently dropping them
        let mut clean = b.clone();
        clean.clear_padding();
        (clean == b).then_some(b)
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.to_le_bytes())
    }

    pub fn from_hex(len: usize, s: &str) -> Option<Self> {
        let bytes = hex::decode(s).ok()?;
        Self::from_le_bytes(len, &bytes)
    }

    /// Row of `0`/`1` characters in index order.
    pub fn to_binary_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSet[{}]{{", self.len)?;
        for (n, i) in self.iter_ones().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[inline]
pub(crate) fn xor_words(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_clears_padding() {
        let b = BitSet::ones(70);
        assert_eq!(b.count_ones(), 70);
        assert_eq!(b.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn hex_is_little_endian_in_index_order() {
        let b = BitSet::from_indices(15, [0, 3, 9, 14]);
        // byte 0 = bits 0..7 -> 0b0000_1001, byte 1 = bits 8..15 -> 0b0100_0010
        assert_eq!(b.to_hex(), "0942");
        assert_eq!(BitSet::from_hex(15, "0942"), Some(b));
    }

    #[test]
    fn hex_rejects_padding_and_bad_length() {
        assert_eq!(BitSet::from_hex(15, "09c2"), None);
        assert_eq!(BitSet::from_hex(15, "09"), None);
        assert_eq!(BitSet::from_hex(15, "zz42"), None);
    }

    #[test]
    fn iter_ones_and_first_one() {
        let b = BitSet::from_indices(200, [5, 64, 130, 199]);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![5, 64, 130, 199]);
        assert_eq!(b.first_one(), Some(5));
        assert_eq!(BitSet::zeros(10).first_one(), None);
    }

    #[test]
    fn xor_is_addition_mod_two() {
        let a = BitSet::from_indices(10, [1, 2, 3]);
        let b = BitSet::from_indices(10, [3, 4]);
        let mut c = a.clone();
        c.xor_assign(&b);
        assert_eq!(c, BitSet::from_indices(10, [1, 2, 4]));
        c.xor_assign(&c.clone());
        assert!(c.is_zero());
    }
}
