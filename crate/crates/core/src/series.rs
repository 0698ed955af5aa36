//! Truncated noncommutative Hilbert series and their inversion.
//!
//! The series of a monomial algebra has coefficient 1 on every nonzero
//! word. Its inverse is computed by the splitting recursion
//! `S(w) = -sum over w = u v, u nonempty, of s(u) S(v)`; the coefficient
//! of a word equals the alternating sum of its bar dimensions, which is
//! what [`euler_crosscheck`] exposes.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bar::bar_subcomplex_bounded;
use crate::error::{Error, Result};
use crate::word::{Alphabet, RelationSet, Word};
use crate::DEFAULT_WORK_LIMIT;

/// A truncated series with integer coefficients indexed by words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCSeries {
    alphabet: Alphabet,
    trunc: usize,
    coeffs: BTreeMap<Word, BigInt>,
}

impl NCSeries {
    pub fn new(alphabet: Alphabet, trunc: usize, coeffs: BTreeMap<Word, BigInt>) -> Result<Self> {
        for (w, v) in &coeffs {
            if w.len() > trunc {
                return Err(Error::Precondition(format!(
                    "word of length {} beyond truncation {trunc}",
                    w.len()
                )));
            }
            if v.is_zero() {
                return Err(Error::Precondition("stored zero coefficient".into()));
            }
        }
        Ok(NCSeries { alphabet, trunc, coeffs })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.coeffs.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Terms in graded lexicographic order.
    pub fn terms_graded(&self) -> Vec<(&Word, &BigInt)> {
        let mut terms: Vec<(&Word, &BigInt)> = self.coeffs.iter().collect();
        terms.sort_by_key(|(w, _)| w.graded_key());
        terms
    }
}

/// Truncated Hilbert series of the monomial algebra: coefficient 1 on the
/// empty word and on every nonzero word of length at most `n`.
///
/// Words are enumerated depth-first and pruned as soon as a relation
/// completes, so only nonzero words are materialized.
pub fn hilbert_truncated(a: &Alphabet, relations: &RelationSet, n: usize) -> Result<NCSeries> {
    hilbert_truncated_bounded(a, relations, n, DEFAULT_WORK_LIMIT)
}

pub fn hilbert_truncated_bounded(
    a: &Alphabet,
    relations: &RelationSet,
    n: usize,
    limit: usize,
) -> Result<NCSeries> {
    let scanner = relations.scanner();
    let mut coeffs = BTreeMap::new();
    coeffs.insert(Word::empty(), BigInt::one());
    let mut stack: Vec<(Vec<u8>, u32)> = vec![(Vec::new(), scanner.root())];
    while let Some((prefix, state)) = stack.pop() {
        if prefix.len() == n {
            continue;
        }
        for letter in (0..a.len() as u8).rev() {
            let next = scanner.step(state, letter);
            if scanner.has_match(next) {
                continue; // the word is zero, and so is every extension
            }
            let mut w = prefix.clone();
            w.push(letter);
            if coeffs.len() >= limit {
                return Err(Error::Capacity { needed: coeffs.len() + 1, limit });
            }
            coeffs.insert(Word::new(w.clone()), BigInt::one());
            stack.push((w, next));
        }
    }
    NCSeries::new(a.clone(), n, coeffs)
}

/// Invert a series with unit constant term, up to its truncation degree.
pub fn invert_series(s: &NCSeries) -> Result<NCSeries> {
    invert_series_bounded(s, DEFAULT_WORK_LIMIT)
}

pub fn invert_series_bounded(s: &NCSeries, limit: usize) -> Result<NCSeries> {
    if s.coeff(&Word::empty()) != BigInt::one() {
        return Err(Error::Inversion);
    }
    let k = s.alphabet.len();
    let mut words_total = 1usize;
    for len in 1..=s.trunc {
        let count = k.checked_pow(len as u32).ok_or(Error::Capacity {
            needed: usize::MAX,
            limit,
        })?;
        words_total = words_total.saturating_add(count);
        if words_total > limit {
            return Err(Error::Capacity { needed: words_total, limit });
        }
    }

    // memo over every word up to the truncation; suffixes of a word are
    // shorter, so lengths are processed in increasing order
    let mut memo: HashMap<Word, BigInt> = HashMap::new();
    memo.insert(Word::empty(), BigInt::one());
    let mut current: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 1..=s.trunc {
        let mut next_words = Vec::with_capacity(current.len() * k);
        for w in &current {
            for letter in 0..k as u8 {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(letter);
                v.extend_from_slice(w);
                next_words.push(v);
            }
        }
        for w in &next_words {
            // S(w) = -sum over nonempty prefixes u of s(u) * S(suffix)
            let mut acc = BigInt::zero();
            for j in 1..=w.len() {
                let su = s.coeff(&Word::from(&w[..j]));
                if su.is_zero() {
                    continue;
                }
                let sv = memo.get(&Word::from(&w[j..])).expect("shorter suffix computed");
                if !sv.is_zero() {
                    acc += su * sv;
                }
            }
            memo.insert(Word::new(w.clone()), -acc);
        }
        current = next_words;
    }

    let coeffs: BTreeMap<Word, BigInt> =
        memo.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    NCSeries::new(s.alphabet.clone(), s.trunc, coeffs)
}

/// Inverse coefficient of `w` and the alternating bar-dimension sum
/// `sum_k (-1)^k dim B_k(w)`. The two are equal, and their absolute value
/// is the total bar homology of `w`.
pub fn euler_crosscheck(w: &Word, relations: &RelationSet) -> Result<(i64, i64)> {
    let n = w.len();
    if n == 0 {
        return Err(Error::Precondition("word must be nonempty".into()));
    }
    // S on the suffixes of w only: the splitting recursion never leaves
    // the suffix lattice of a fixed word
    let scanner = relations.scanner();
    let zero = {
        // zero(i, j): is the factor at letters i..j zero
        let occs = scanner.occurrences(w);
        let min_end = crate::word::min_end_from(&occs, n);
        move |i: usize, j: usize| min_end[i] <= j
    };
    let mut suffix_s = vec![0i64; n + 1]; // S of the suffix starting at i
    suffix_s[n] = 1;
    for i in (0..n).rev() {
        let mut acc = 0i64;
        for j in i + 1..=n {
            // u = letters i..j must be nonzero
            if !zero(i, j) {
                acc += suffix_s[j];
            }
        }
        suffix_s[i] = -acc;
    }
    let coeff = suffix_s[0];

    let complex = bar_subcomplex_bounded(w, relations, None, DEFAULT_WORK_LIMIT)?;
    let mut alt = 0i64;
    for (g, d) in complex.dims().iter().enumerate() {
        let bar_index = n - g;
        let sign = if bar_index % 2 == 0 { 1 } else { -1 };
        alt += sign * *d as i64;
    }
    Ok((coeff, alt))
}

/// Stream `(word, inverse coefficient, alternating bar sum)` for every
/// nonempty word of length at most `n` over `a`.
///
/// One depth-first pass: prefix values of the inverse live on the stack
/// (using the mirror recursion `S(w) = -sum S(prefix) s(suffix)`), and the
/// alternating sum is carried as a signed count over recent gap states.
pub fn scan_inverse<F: FnMut(&[u8], i64, i64)>(
    a: &Alphabet,
    relations: &RelationSet,
    n: usize,
    limit: usize,
    mut visit: F,
) -> Result<()> {
    let k = a.len();
    let mut words_total = 0usize;
    for len in 1..=n {
        words_total = words_total.saturating_add(k.saturating_pow(len as u32));
    }
    if words_total > limit {
        return Err(Error::Capacity { needed: words_total, limit });
    }
    let max_len = relations.relations().iter().map(Word::len).max().unwrap_or(2);
    let window = max_len - 1; // gap bits that can still matter
    let states = 1usize << window;
    let scanner = relations.scanner();

    struct Frame {
        state: u32,
        cover: usize,   // suffixes starting before this are zero
        dp: Vec<i64>,   // signed count per recent-gap state
        s_value: i64,   // inverse coefficient of the current prefix
    }
    let mut word: Vec<u8> = Vec::new();
    let mut frames: Vec<Frame> = vec![Frame {
        state: scanner.root(),
        cover: 0,
        dp: {
            let mut dp = vec![0i64; states];
            dp[0] = 1;
            dp
        },
        s_value: 1,
    }];
    // explicit DFS: (depth, letter) pending pairs
    let mut pending: Vec<(usize, u8)> = (0..k as u8).rev().map(|l| (0usize, l)).collect();
    while let Some((depth, letter)) = pending.pop() {
        word.truncate(depth);
        frames.truncate(depth + 1);
        word.push(letter);
        let len = word.len();
        let parent = &frames[depth];
        let state = scanner.step(parent.state, letter);

        // suffix-zero frontier: an occurrence ending here zeroes every
        // suffix starting at or before its start
        let mut cover = parent.cover;
        for &l in scanner.matches_at(state) {
            cover = cover.max(len - l as usize + 1);
        }

        // gap dp: decide the new gap (none for the first letter), then
        // kill states where an occurrence's gap interval is fully merged
        let mut dp = vec![0i64; states];
        if len == 1 {
            dp[0] = 1;
        } else {
            let mask = states - 1;
            for (st, &v) in parent.dp.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let split = (st << 1) & mask;
                dp[split] += v;
                let merged = ((st << 1) | 1) & mask;
                dp[merged] -= v;
            }
        }
        for &l in scanner.matches_at(state) {
            let span = l as usize - 1; // gaps inside the occurrence
            if span == 0 {
                continue;
            }
            let need = (1usize << span) - 1;
            for st in 0..states {
                if st & need == need {
                    dp[st] = 0;
                }
            }
        }

        // mirror recursion over splits w = u . v with v nonzero
        let mut acc = 0i64;
        for j in cover..len {
            acc += frames[j].s_value;
        }
        let s_value = -acc;

        let alt: i64 = dp.iter().sum::<i64>() * if len % 2 == 0 { 1 } else { -1 };
        visit(&word, s_value, alt);

        frames.push(Frame { state, cover, dp, s_value });
        if len < n {
            for l in (0..k as u8).rev() {
                pending.push((len, l));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(n: usize) -> Alphabet {
        Alphabet::of_size(n).unwrap()
    }

    fn word(a: &Alphabet, s: &str) -> Word {
        let t: Vec<String> = s.chars().map(|c| c.to_string()).collect();
        let r: Vec<&str> = t.iter().map(String::as_str).collect();
        a.parse_word(&r).unwrap()
    }

    fn rels(a: &Alphabet, ws: &[&str]) -> RelationSet {
        RelationSet::new(ws.iter().map(|s| word(a, s)).collect()).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        let a = alpha(1);
        let s = hilbert_truncated(&a, &RelationSet::empty(), 3).unwrap();
        assert_eq!(s.support_len(), 4); // empty, a, aa, aaa

        let s = hilbert_truncated(&a, &rels(&a, &["aa"]), 3).unwrap();
        assert_eq!(s.support_len(), 2); // empty, a

        let a2 = alpha(2);
        let s = hilbert_truncated(&a2, &rels(&a2, &["ab"]), 2).unwrap();
        assert_eq!(s.support_len(), 6); // empty, a, b, aa, ba, bb
        assert!(s.coeff(&word(&a2, "ab")).is_zero());
        assert_eq!(s.coeff(&word(&a2, "ba")), BigInt::one());
    }

    #[test]
    fn inversion_examples() {
        // one letter with aa = 0: geometric alternation
        let a = alpha(1);
        let s = hilbert_truncated(&a, &rels(&a, &["aa"]), 5).unwrap();
        let inv = invert_series(&s).unwrap();
        for len in 0..=5 {
            let w = Word::new(vec![0; len]);
            let expect = if len % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(&w), BigInt::from(expect), "length {len}");
        }

        // free algebra on one letter: inverse is 1 - a
        let s = hilbert_truncated(&a, &RelationSet::empty(), 4).unwrap();
        let inv = invert_series(&s).unwrap();
        assert_eq!(inv.support_len(), 2);
        assert_eq!(inv.coeff(&Word::new(vec![0])), BigInt::from(-1));

        // free algebra on two letters: inverse is 1 - a - b
        let a2 = alpha(2);
        let s = hilbert_truncated(&a2, &RelationSet::empty(), 3).unwrap();
        let inv = invert_series(&s).unwrap();
        assert_eq!(inv.support_len(), 3);
        assert_eq!(inv.coeff(&word(&a2, "a")), BigInt::from(-1));
        assert_eq!(inv.coeff(&word(&a2, "b")), BigInt::from(-1));
    }

    #[test]
    fn inversion_requires_unit() {
        let a = alpha(1);
        let s = NCSeries::new(a, 2, BTreeMap::new()).unwrap();
        assert!(matches!(invert_series(&s), Err(Error::Inversion)));
    }

    #[test]
    fn crosscheck_examples() {
        let a = alpha(2);
        let r = rels(&a, &["ab"]);
        let (coeff, alt) = euler_crosscheck(&word(&a, "ab"), &r).unwrap();
        assert_eq!((coeff, alt), (1, 1));

        let (coeff, alt) = euler_crosscheck(&word(&a, "ab"), &RelationSet::empty()).unwrap();
        assert_eq!((coeff, alt), (0, 0));

        let a1 = alpha(1);
        let r = rels(&a1, &["aaa"]);
        let (coeff, alt) = euler_crosscheck(&word(&a1, "aaaa"), &r).unwrap();
        assert_eq!(coeff, alt);
        assert_eq!(coeff.abs(), 1);
    }

    #[test]
    fn scan_matches_invert_series() {
        let a = alpha(2);
        for rel_words in [vec!["aa"], vec!["ab", "ba"], vec!["aba"], vec![]] {
            let r = rels(&a, &rel_words);
            let n = 6;
            let s = hilbert_truncated(&a, &r, n).unwrap();
            let inv = invert_series(&s).unwrap();
            scan_inverse(&a, &r, n, 1 << 20, |w, coeff, alt| {
                let expect = inv.coeff(&Word::from(w));
                assert_eq!(BigInt::from(coeff), expect, "coeff of {w:?} with {rel_words:?}");
                assert_eq!(coeff, alt, "alternating sum of {w:?} with {rel_words:?}");
            })
            .unwrap();
        }
    }

    #[test]
    fn scan_alt_matches_bar_dims() {
        let a = alpha(2);
        let r = rels(&a, &["aa", "bab"]);
        scan_inverse(&a, &r, 6, 1 << 20, |w, _, alt| {
            let word = Word::from(w);
            let (_, direct) = euler_crosscheck(&word, &r).unwrap();
            assert_eq!(alt, direct, "word {w:?}");
        })
        .unwrap();
    }
}
