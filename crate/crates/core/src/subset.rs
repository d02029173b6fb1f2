use std::fmt;

/// Characteristic vector of a subset of the outcomes `0..n`.
///
/// Bits are indexed by outcome index. The transfer algorithm works with words
/// read along a linear order of the outcomes; [`SubsetWord::to_positions`] and
/// [`SubsetWord::from_positions`] convert between the two readings.
///
/// When a word labels a derived win-lose game, a set bit means the outcome is a
/// win for player 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetWord {
    bits: Vec<bool>,
}

impl SubsetWord {
    pub fn empty(n: usize) -> Self {
        SubsetWord { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        SubsetWord { bits: vec![true; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        SubsetWord { bits }
    }

    /// Builds the subset of `0..n` holding the given outcomes.
    ///
    /// # Panics
    ///
    /// Panics if an index is not below `n`.
    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut word = SubsetWord::empty(n);
        for i in indices {
            assert!(i < n, "outcome {i} out of range for {n} outcomes");
            word.bits[i] = true;
        }
        word
    }

    /// Bit `i` of `mask` is outcome `i`. Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64, "mask words hold at most 64 outcomes");
        SubsetWord {
            bits: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn to_mask(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(
            self.bits
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .fold(0u64, |m, (i, _)| m | 1 << i),
        )
    }

    /// Every subset of `0..n`, in increasing mask order. Requires `n < 64`.
    pub fn all(n: usize) -> impl Iterator<Item = SubsetWord> {
        assert!(n < 64, "cannot enumerate subsets of {n} outcomes");
        (0..1u64 << n).map(move |m| SubsetWord::from_mask(n, m))
    }

    /// Number of outcomes in the underlying outcome set.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn contains(&self, outcome: usize) -> bool {
        self.bits[outcome]
    }

    pub fn set(&mut self, outcome: usize, member: bool) {
        self.bits[outcome] = member;
    }

    /// Number of outcomes in the subset.
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn complement(&self) -> SubsetWord {
        SubsetWord {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &SubsetWord) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Reads the subset along `linear` (smallest outcome first).
    pub fn to_positions(&self, linear: &[usize]) -> Vec<bool> {
        linear.iter().map(|&o| self.bits[o]).collect()
    }

    /// Inverse of [`SubsetWord::to_positions`].
    pub fn from_positions(linear: &[usize], word: &[bool]) -> SubsetWord {
        assert_eq!(linear.len(), word.len());
        let mut subset = SubsetWord::empty(linear.len());
        for (&o, &b) in linear.iter().zip(word) {
            subset.bits[o] = b;
        }
        subset
    }
}

impl fmt::Display for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_round_trip() {
        let linear = [2, 0, 1];
        let w = SubsetWord::from_indices(3, [2, 1]);
        let pos = w.to_positions(&linear);
        assert_eq!(pos, vec![true, false, true]);
        assert_eq!(SubsetWord::from_positions(&linear, &pos), w);
    }

    #[test]
    fn mask_and_complement() {
        let w = SubsetWord::from_mask(4, 0b0101);
        assert_eq!(w.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(w.complement().to_mask(), Some(0b1010));
        assert_eq!(w.to_string(), "1010");
        assert!(SubsetWord::from_mask(4, 0b0001).is_subset_of(&w));
        assert_eq!(SubsetWord::all(3).count(), 8);
    }
}
