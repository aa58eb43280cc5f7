//! Multiset permutations: words of length `k * ell` over the alphabet
//! `0..k` in which every symbol occurs exactly `ell` times.
//!
//! These are the vertices of the star transposition graphs. A vertex is
//! identified by its 0-based lexicographic rank, computed by multinomial
//! prefix counting, so large graphs can be traversed without storing words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, WordError};

/// Largest alphabet representable with one byte per symbol.
pub const MAX_ALPHABET: usize = 256;

/// A validated word. Position 0 is the leftmost printed character.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultisetPerm {
    word: Vec<u8>,
    k: usize,
    ell: usize,
}

/// Lexicographic rank of a [`MultisetPerm`] among all words with the same
/// `(k, ell)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct PermIndex(pub u64);

impl PermIndex {
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PermIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn check_params(k: usize, ell: usize) -> Result<()> {
    if k == 0 || k > MAX_ALPHABET {
        return Err(Error::ParamOutOfRange {
            name: "k",
            value: k,
            reason: "alphabet size must be in 1..=256",
        });
    }
    if ell == 0 {
        return Err(Error::ParamOutOfRange {
            name: "ell",
            value: ell,
            reason: "multiplicity must be at least 1",
        });
    }
    Ok(())
}

fn binomial(n: u128, r: u128) -> Option<u128> {
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for t in 1..=r {
        // acc * (n - r + t) / t stays integral at every step.
        acc = acc.checked_mul(n - r + t)? / t;
    }
    Some(acc)
}

/// Number of vertices `(k*ell)! / (ell!)^k` of `ST^ell_k`, computed exactly.
///
/// The multinomial is accumulated as a product of binomials
/// `C(ell, ell) * C(2 ell, ell) * ... * C(k ell, ell)`; overflow of `u64`
/// is reported as [`Error::Overflow`].
pub fn count_vertices(k: usize, ell: usize) -> Result<u64> {
    check_params(k, ell)?;
    let overflow = || Error::Overflow { k, ell };
    let mut acc: u128 = 1;
    for j in 1..=k as u128 {
        let b = binomial(j * ell as u128, ell as u128).ok_or_else(overflow)?;
        acc = acc.checked_mul(b).ok_or_else(overflow)?;
        if acc > u64::MAX as u128 {
            return Err(overflow());
        }
    }
    Ok(acc as u64)
}

/// Regular degree `(k - 1) * ell` of `ST^ell_k`.
pub fn degree(k: usize, ell: usize) -> usize {
    (k - 1) * ell
}

impl MultisetPerm {
    /// Checks `word` against the alphabet and multiplicity invariants.
    ///
    /// Symbols are range-checked first, then multiplicities in ascending
    /// symbol order. A wrong length always shows up as a wrong multiplicity.
    pub fn new(word: Vec<u8>, k: usize, ell: usize) -> Result<Self> {
        check_params(k, ell)?;
        let mut counts = vec![0usize; k];
        for (position, &s) in word.iter().enumerate() {
            let symbol = s as usize;
            if symbol >= k {
                return Err(WordError::SymbolOutOfRange {
                    position,
                    symbol,
                    k,
                }
                .into());
            }
            counts[symbol] += 1;
        }
        if let Some((symbol, &found)) = counts.iter().enumerate().find(|(_, &c)| c != ell) {
            return Err(WordError::WrongMultiplicity {
                symbol,
                found,
                expected: ell,
            }
            .into());
        }
        Ok(Self { word, k, ell })
    }

    /// `0^ell 1^ell ... (k-1)^ell`, the lexicographically first word.
    pub fn first(k: usize, ell: usize) -> Result<Self> {
        check_params(k, ell)?;
        let word = (0..k).flat_map(|s| std::iter::repeat_n(s as u8, ell)).collect();
        Ok(Self { word, k, ell })
    }

    /// `(k-1)^ell ... 1^ell 0^ell`, the lexicographically last word.
    pub fn last(k: usize, ell: usize) -> Result<Self> {
        let mut p = Self::first(k, ell)?;
        p.word.reverse();
        Ok(p)
    }

    /// Parses the text form: single digits when `k <= 10`, otherwise
    /// comma-separated decimal symbols. Commas are accepted for any `k`.
    pub fn parse(text: &str, k: usize, ell: usize) -> Result<Self> {
        Self::new(parse_symbols(text)?, k, ell)
    }

    /// Parses a word and infers `k` (largest symbol + 1) and `ell`.
    pub fn parse_infer(text: &str) -> Result<Self> {
        let word = parse_symbols(text)?;
        let k = word.iter().map(|&s| s as usize + 1).max().unwrap_or(1);
        let ell = (word.len() / k).max(1);
        Self::new(word, k, ell)
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u8> {
        self.word
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The word with positions 0 and `j` exchanged.
    pub fn swapped(&self, j: usize) -> Self {
        let mut word = self.word.clone();
        word.swap(0, j);
        Self {
            word,
            k: self.k,
            ell: self.ell,
        }
    }

    pub fn rank(&self) -> PermIndex {
        PermIndex(rank_word(&self.word, self.k, self.ell))
    }

    pub fn unrank(index: PermIndex, k: usize, ell: usize) -> Result<Self> {
        let count = count_vertices(k, ell)?;
        if index.0 >= count {
            return Err(Error::IndexOutOfRange {
                index: index.0,
                count,
            });
        }
        let mut word = vec![0u8; k * ell];
        unrank_into(index.0, count, k, ell, &mut word);
        Ok(Self { word, k, ell })
    }
}

fn parse_symbols(text: &str) -> Result<Vec<u8>> {
    let text = text.trim();
    let bad = |position: usize, ch: char| Error::from(WordError::BadCharacter { position, ch });
    if text.contains(',') {
        let mut word = Vec::new();
        let mut position = 0;
        for field in text.split(',') {
            let field = field.trim();
            let value: usize = field
                .parse()
                .map_err(|_| bad(position, field.chars().next().unwrap_or(',')))?;
            if value >= MAX_ALPHABET {
                return Err(WordError::SymbolOutOfRange {
                    position: word.len(),
                    symbol: value,
                    k: MAX_ALPHABET,
                }
                .into());
            }
            word.push(value as u8);
            position += field.len() + 1;
        }
        Ok(word)
    } else {
        text.chars()
            .enumerate()
            .map(|(position, ch)| {
                ch.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| bad(position, ch))
            })
            .collect()
    }
}

/// Renders a word: concatenated digits for `k <= 10`, comma-separated
/// otherwise.
pub fn format_word(word: &[u8], k: usize) -> String {
    if k <= 10 {
        word.iter().map(|&s| char::from(b'0' + s)).collect()
    } else {
        let parts: Vec<String> = word.iter().map(|s| s.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for MultisetPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(&self.word, self.k))
    }
}

/// Rank of a word already known to be valid for `(k, ell)`.
pub(crate) fn rank_word(word: &[u8], k: usize, ell: usize) -> u64 {
    let mut counts = vec![ell as u128; k];
    let mut remaining = word.len() as u128;
    // Arrangements of the still-unplaced suffix multiset.
    let mut arrangements = count_vertices(k, ell).expect("rank of an overflowing instance") as u128;
    let mut rank: u128 = 0;
    for &s in word {
        let s = s as usize;
        let smaller: u128 = counts[..s].iter().sum();
        rank += arrangements * smaller / remaining;
        arrangements = arrangements * counts[s] / remaining;
        counts[s] -= 1;
        remaining -= 1;
    }
    rank as u64
}

/// Writes the word of rank `index` into `out`; `count` is the vertex count.
pub(crate) fn unrank_into(index: u64, count: u64, k: usize, ell: usize, out: &mut [u8]) {
    let mut counts = vec![ell as u128; k];
    let mut remaining = out.len() as u128;
    let mut arrangements = count as u128;
    let mut index = index as u128;
    for slot in out.iter_mut() {
        for (s, c) in counts.iter_mut().enumerate() {
            if *c == 0 {
                continue;
            }
            let block = arrangements * *c / remaining;
            if index < block {
                *slot = s as u8;
                arrangements = block;
                *c -= 1;
                remaining -= 1;
                break;
            }
            index -= block;
        }
    }
}

/// Advances `word` to its lexicographic successor among rearrangements of
/// the same multiset. Returns `false` (leaving `word` untouched) at the end.
pub fn next_word(word: &mut [u8]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Iterator over all words of `ST^ell_k` in increasing lexicographic
/// (equivalently, rank) order.
#[derive(Debug, Clone)]
pub struct Enumerate {
    next: Option<Vec<u8>>,
    k: usize,
    ell: usize,
}

impl Iterator for Enumerate {
    type Item = MultisetPerm;

    fn next(&mut self) -> Option<MultisetPerm> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_word(&mut succ) {
            self.next = Some(succ);
        }
        Some(MultisetPerm {
            word: current,
            k: self.k,
            ell: self.ell,
        })
    }
}

pub fn enumerate(k: usize, ell: usize) -> Result<Enumerate> {
    count_vertices(k, ell)?;
    Ok(Enumerate {
        next: Some(MultisetPerm::first(k, ell)?.word),
        k,
        ell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_words(k: usize, ell: usize) -> Vec<Vec<u8>> {
        // All k^(k ell) strings, filtered, in lexicographic order.
        let len = k * ell;
        let total = k.pow(len as u32);
        (0..total)
            .map(|mut x| {
                let mut w = vec![0u8; len];
                for slot in w.iter_mut().rev() {
                    *slot = (x % k) as u8;
                    x /= k;
                }
                w
            })
            .filter(|w| (0..k).all(|s| w.iter().filter(|&&c| c as usize == s).count() == ell))
            .collect()
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(count_vertices(3, 2).unwrap(), 90);
        assert_eq!(count_vertices(3, 3).unwrap(), 1680);
        assert_eq!(count_vertices(1, 5).unwrap(), 1);
        assert_eq!(count_vertices(2, 1).unwrap(), 2);
        assert_eq!(count_vertices(6, 2).unwrap(), 7_484_400);
        assert_eq!(count_vertices(4, 2).unwrap(), 2520);
    }

    #[test]
    fn vertex_count_overflow_is_reported() {
        assert!(matches!(count_vertices(30, 3), Err(Error::Overflow { .. })));
        assert!(matches!(count_vertices(21, 1), Err(Error::Overflow { .. })));
        assert_eq!(count_vertices(20, 1).unwrap(), 2_432_902_008_176_640_000);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(
            count_vertices(0, 2),
            Err(Error::ParamOutOfRange { name: "k", .. })
        ));
        assert!(matches!(
            count_vertices(2, 0),
            Err(Error::ParamOutOfRange { name: "ell", .. })
        ));
    }

    #[test]
    fn validation_errors_name_the_violation() {
        assert!(MultisetPerm::parse("001122", 3, 2).is_ok());
        match MultisetPerm::parse("0011", 2, 1) {
            Err(Error::InvalidWord(WordError::WrongMultiplicity {
                symbol: 0,
                found: 2,
                expected: 1,
            })) => {}
            other => panic!("unexpected {other:?}"),
        }
        match MultisetPerm::parse("012001200", 3, 3) {
            Err(Error::InvalidWord(WordError::WrongMultiplicity {
                symbol: 0,
                found: 5,
                ..
            })) => {}
            other => panic!("unexpected {other:?}"),
        }
        match MultisetPerm::parse("0130", 2, 2) {
            Err(Error::InvalidWord(WordError::SymbolOutOfRange {
                position: 2,
                symbol: 3,
                ..
            })) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            MultisetPerm::parse("01x0", 2, 2),
            Err(Error::InvalidWord(WordError::BadCharacter { position: 2, ch: 'x' }))
        ));
    }

    #[test]
    fn wide_alphabets_use_commas() {
        let p = MultisetPerm::first(11, 1).unwrap();
        assert_eq!(p.to_string(), "0,1,2,3,4,5,6,7,8,9,10");
        assert_eq!(MultisetPerm::parse(&p.to_string(), 11, 1).unwrap(), p);
        assert_eq!(MultisetPerm::first(3, 2).unwrap().to_string(), "001122");
    }

    #[test]
    fn rank_extremes() {
        for (k, ell) in [(2, 2), (3, 2), (3, 3), (4, 2), (1, 4)] {
            let n = count_vertices(k, ell).unwrap();
            assert_eq!(MultisetPerm::first(k, ell).unwrap().rank(), PermIndex(0));
            assert_eq!(MultisetPerm::last(k, ell).unwrap().rank(), PermIndex(n - 1));
        }
        assert_eq!(
            MultisetPerm::unrank(PermIndex(0), 3, 2).unwrap().to_string(),
            "001122"
        );
        assert_eq!(
            MultisetPerm::unrank(PermIndex(89), 3, 2).unwrap().to_string(),
            "221100"
        );
        let p = MultisetPerm::parse("120120", 3, 2).unwrap();
        assert_eq!(MultisetPerm::unrank(p.rank(), 3, 2).unwrap(), p);
        assert!(matches!(
            MultisetPerm::unrank(PermIndex(90), 3, 2),
            Err(Error::IndexOutOfRange { index: 90, count: 90 })
        ));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (k, ell) in [(2, 2), (3, 2), (2, 3), (1, 3), (3, 1), (4, 1), (2, 4)] {
            let expected = brute_force_words(k, ell);
            let got: Vec<Vec<u8>> = enumerate(k, ell).unwrap().map(|p| p.into_word()).collect();
            assert_eq!(got, expected, "k={k} ell={ell}");
            assert_eq!(got.len() as u64, count_vertices(k, ell).unwrap());
            for (i, w) in expected.iter().enumerate() {
                assert_eq!(rank_word(w, k, ell), i as u64);
            }
        }
        let small: Vec<String> = enumerate(2, 2).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(small, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        let single: Vec<String> = enumerate(1, 3).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(single, ["000"]);
    }

    #[test]
    fn st23_rank_is_a_bijection() {
        let words: Vec<MultisetPerm> = enumerate(3, 2).unwrap().collect();
        assert_eq!(words.len(), 90);
        for (i, p) in words.iter().enumerate() {
            assert_eq!(p.rank(), PermIndex(i as u64));
            assert_eq!(&MultisetPerm::unrank(PermIndex(i as u64), 3, 2).unwrap(), p);
        }
    }

    #[test]
    fn parse_infer_recovers_parameters() {
        let p = MultisetPerm::parse_infer("120120120").unwrap();
        assert_eq!((p.k(), p.ell()), (3, 3));
        let p = MultisetPerm::parse_infer("100122").unwrap();
        assert_eq!((p.k(), p.ell()), (3, 2));
    }
}
