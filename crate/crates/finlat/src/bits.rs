//! Fixed-width bitset rows used for order relations and element sets.

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1u64 << (i % 64);
}

pub(crate) fn get(row: &[u64], i: usize) -> bool {
    row[i / 64] & (1u64 << (i % 64)) != 0
}

pub(crate) fn or_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

pub(crate) fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// true iff a is a subset of b.
pub(crate) fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

pub(crate) fn count(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn first_set(a: &[u64]) -> Option<usize> {
    for (w, word) in a.iter().enumerate() {
        if *word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

pub(crate) fn last_set(a: &[u64]) -> Option<usize> {
    for (w, word) in a.iter().enumerate().rev() {
        if *word != 0 {
            return Some(w * 64 + 63 - word.leading_zeros() as usize);
        }
    }
    None
}

/// Indices of all set bits, ascending.
pub(crate) fn ones(a: &[u64]) -> OnesIter<'_> {
    OnesIter { words: a, word_idx: 0, current: a.first().copied().unwrap_or(0) }
}

pub(crate) struct OnesIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for OnesIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * 64 + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_iterate() {
        let mut row = vec![0u64; words_for(130)];
        for i in [0, 63, 64, 100, 129] {
            set(&mut row, i);
        }
        assert!(get(&row, 100));
        assert!(!get(&row, 99));
        assert_eq!(ones(&row).collect::<Vec<_>>(), vec![0, 63, 64, 100, 129]);
        assert_eq!(first_set(&row), Some(0));
        assert_eq!(last_set(&row), Some(129));
        assert_eq!(count(&row), 5);
    }

    #[test]
    fn subset_checks() {
        let mut a = vec![0u64; 2];
        let mut b = vec![0u64; 2];
        set(&mut a, 3);
        set(&mut b, 3);
        set(&mut b, 70);
        assert!(subset(&a, &b));
        assert!(!subset(&b, &a));
    }
}
