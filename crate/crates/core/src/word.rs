//! Words over a finite alphabet and antichains of forbidden factors.

use crate::error::{Error, Result};

/// An ordered alphabet of distinct symbol tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(letters: Vec<S>) -> Result<Self> {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::Precondition("alphabet must be nonempty".into()));
        }
        if letters.len() > 255 {
            return Err(Error::Precondition("alphabet larger than 255 letters".into()));
        }
        for (i, a) in letters.iter().enumerate() {
            if letters[..i].contains(a) {
                return Err(Error::Precondition(format!("duplicate letter {a:?}")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Single-character letters `a`, `b`, `c`, ... for quick construction.
    pub fn of_size(n: usize) -> Result<Self> {
        let letters = (0..n)
            .map(|i| ((b'a' + (i % 26) as u8) as char).to_string())
            .map(|mut s| {
                if n > 26 {
                    s = format!("{s}{}", n / 26);
                }
                s
            })
            .collect();
        Alphabet::new::<String>(letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn index_of(&self, token: &str) -> Option<u8> {
        self.letters.iter().position(|l| l == token).map(|i| i as u8)
    }

    pub fn token(&self, index: u8) -> &str {
        &self.letters[index as usize]
    }

    /// Parse whitespace-separated tokens into a word.
    pub fn parse_word(&self, tokens: &[&str]) -> Result<Word> {
        let mut letters = Vec::with_capacity(tokens.len());
        for t in tokens {
            let Some(i) = self.index_of(t) else {
                return Err(Error::Precondition(format!("unknown letter {t:?}")));
            };
            letters.push(i);
        }
        Ok(Word::new(letters))
    }

    pub fn render(&self, w: &Word) -> String {
        w.letters().iter().map(|&i| self.token(i)).collect()
    }
}

/// A word as a sequence of alphabet indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// True iff `self` occurs in `other` as a contiguous factor.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        if self.0.is_empty() {
            return true;
        }
        other.0.windows(self.0.len()).any(|w| w == self.0.as_slice())
    }

    /// Graded lexicographic key: length first, then letters.
    pub fn graded_key(&self) -> (usize, Vec<u8>) {
        (self.0.len(), self.0.clone())
    }
}

impl From<&[u8]> for Word {
    fn from(s: &[u8]) -> Self {
        Word(s.to_vec())
    }
}

/// An antichain of forbidden factor words, each of length at least two.
///
/// Construction normalizes: factors of other relations are redundant and
/// removed, duplicates collapse, and the result is sorted by graded
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    relations: Vec<Word>,
}

impl RelationSet {
    pub fn new(words: Vec<Word>) -> Result<Self> {
        reduce_antichain(words)
    }

    pub fn empty() -> Self {
        RelationSet { relations: Vec::new() }
    }

    pub fn relations(&self) -> &[Word] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn scanner(&self) -> OccurrenceScanner {
        OccurrenceScanner::new(self)
    }
}

/// Minimal antichain generating the same set of zero words.
pub fn reduce_antichain(words: Vec<Word>) -> Result<RelationSet> {
    for w in &words {
        if w.len() <= 1 {
            return Err(Error::InvalidRelation(format!(
                "relation of length {} (must be at least 2)",
                w.len()
            )));
        }
    }
    let mut kept: Vec<Word> = Vec::new();
    let mut sorted = words;
    sorted.sort_by(|a, b| a.graded_key().cmp(&b.graded_key()));
    sorted.dedup();
    for w in sorted {
        // shorter words come first, so any factor already kept wins
        if !kept.iter().any(|k| k.is_factor_of(&w)) {
            kept.push(w);
        }
    }
    Ok(RelationSet { relations: kept })
}

/// An occurrence of a relation inside a word: letter positions
/// `start..end` (0-indexed, end exclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Occurrence {
    pub start: usize,
    pub end: usize,
}

/// Simultaneous multi-pattern matcher for a relation set.
///
/// A prefix-trie automaton with failure links; `step` advances by one
/// letter and match data is propagated through the failure chain so every
/// state knows which pattern lengths end at the current position.
#[derive(Debug, Clone)]
pub struct OccurrenceScanner {
    /// goto[state] maps a letter to the next state; letters beyond the
    /// alphabet observed in the patterns fall back to the root.
    goto: Vec<std::collections::HashMap<u8, u32>>,
    fail: Vec<u32>,
    /// pattern lengths ending at this state (with failure closure), sorted.
    match_lens: Vec<Vec<u32>>,
}

impl OccurrenceScanner {
    pub fn new(relations: &RelationSet) -> Self {
        let mut goto: Vec<std::collections::HashMap<u8, u32>> = vec![Default::default()];
        let mut match_lens: Vec<Vec<u32>> = vec![Vec::new()];
        for rel in relations.relations() {
            let mut state = 0u32;
            for &letter in rel.letters() {
                let next = goto[state as usize].get(&letter).copied();
                state = match next {
                    Some(s) => s,
                    None => {
                        let s = goto.len() as u32;
                        goto.push(Default::default());
                        match_lens.push(Vec::new());
                        goto[state as usize].insert(letter, s);
                        s
                    }
                };
            }
            match_lens[state as usize].push(rel.len() as u32);
        }
        // breadth-first failure links
        let mut fail = vec![0u32; goto.len()];
        let mut queue: std::collections::VecDeque<u32> = Default::default();
        for &s in goto[0].clone().values() {
            fail[s as usize] = 0;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            for (&letter, &v) in goto[u as usize].clone().iter() {
                let mut f = fail[u as usize];
                loop {
                    if let Some(&t) = goto[f as usize].get(&letter) {
                        if t != v {
                            fail[v as usize] = t;
                        }
                        break;
                    }
                    if f == 0 {
                        fail[v as usize] = 0;
                        break;
                    }
                    f = fail[f as usize];
                }
                let inherited = match_lens[fail[v as usize] as usize].clone();
                match_lens[v as usize].extend(inherited);
                match_lens[v as usize].sort_unstable();
                match_lens[v as usize].dedup();
                queue.push_back(v);
            }
        }
        OccurrenceScanner { goto, fail, match_lens }
    }

    pub fn root(&self) -> u32 {
        0
    }

    pub fn step(&self, mut state: u32, letter: u8) -> u32 {
        loop {
            if let Some(&next) = self.goto[state as usize].get(&letter) {
                return next;
            }
            if state == 0 {
                return 0;
            }
            state = self.fail[state as usize];
        }
    }

    /// Pattern lengths that end at the position just consumed.
    pub fn matches_at(&self, state: u32) -> &[u32] {
        &self.match_lens[state as usize]
    }

    pub fn has_match(&self, state: u32) -> bool {
        !self.match_lens[state as usize].is_empty()
    }

    /// All occurrences in `w`, sorted by `(start, end)`.
    pub fn occurrences(&self, w: &Word) -> Vec<Occurrence> {
        let mut out = Vec::new();
        let mut state = self.root();
        for (i, &letter) in w.letters().iter().enumerate() {
            state = self.step(state, letter);
            for &len in self.matches_at(state) {
                out.push(Occurrence { start: i + 1 - len as usize, end: i + 1 });
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_zero(&self, w: &Word) -> bool {
        let mut state = self.root();
        for &letter in w.letters() {
            state = self.step(state, letter);
            if self.has_match(state) {
                return true;
            }
        }
        false
    }
}

/// True iff some relation occurs in `w` as a contiguous factor.
pub fn is_zero_word(w: &Word, relations: &RelationSet) -> bool {
    relations.scanner().is_zero(w)
}

/// For each start position `s`, the least `end` of an occurrence with
/// `start >= s`, or `usize::MAX` when none exists. Index `n` is a sentinel.
pub fn min_end_from(occurrences: &[Occurrence], n: usize) -> Vec<usize> {
    let mut f = vec![usize::MAX; n + 1];
    for occ in occurrences {
        if occ.end < f[occ.start] {
            f[occ.start] = occ.end;
        }
    }
    for s in (0..n).rev() {
        f[s] = f[s].min(f[s + 1]);
    }
    f
}
