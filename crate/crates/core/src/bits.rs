//! Bit-packed vectors over F_2, used by the code and oracle fast paths where
//! exhaustive enumeration has to touch millions of codewords.

/// A fixed-length F_2 vector packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVec {
    pub len: usize,
    pub words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn xor_in(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming distance to `other`.
    pub fn distance(&self, other: &BitVec) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

/// A column-major bit matrix: each column is a [`BitVec`] of length `rows`.
/// Column-major because every fast path here combines columns (codeword =
/// generator times message, syndrome = parity check times vector).
#[derive(Clone, Debug)]
pub struct BitCols {
    pub rows: usize,
    pub cols: Vec<BitVec>,
}

impl BitCols {
    pub fn new(rows: usize, ncols: usize) -> Self {
        BitCols {
            rows,
            cols: vec![BitVec::zeros(rows); ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// `self * message` where `message` is given by its support bits.
    pub fn combine(&self, message: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            if message.get(j) {
                out.xor_in(col);
            }
        }
        out
    }
}

/// Iterate all `2^n - 1` nonzero accumulator states by Gray code: yields the
/// index of the column to toggle at each step. After step `t` the accumulator
/// equals the combination for the Gray code of `t+1`.
pub fn gray_toggles(n: usize) -> impl Iterator<Item = usize> {
    (1u64..(1 << n)).map(|t| t.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_visits_all_states() {
        let mut acc = 0u64;
        let mut seen = std::collections::HashSet::new();
        for t in gray_toggles(5) {
            acc ^= 1 << t;
            assert!(seen.insert(acc));
        }
        assert_eq!(seen.len(), 31);
        assert!(!seen.contains(&0));
    }

    #[test]
    fn weight_and_distance() {
        let a = BitVec::from_bits(&[1, 0, 1, 1, 0]);
        let b = BitVec::from_bits(&[1, 1, 0, 1, 0]);
        assert_eq!(a.weight(), 3);
        assert_eq!(a.distance(&b), 2);
        let mut c = a.clone();
        c.xor_in(&b);
        assert_eq!(c.weight(), 2);
    }
}
