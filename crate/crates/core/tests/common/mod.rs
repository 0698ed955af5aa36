//! Shared corpus builders, a seeded generator, and naive oracles kept
//! independent of the library's own code paths.

use barhom::complex::HomologyProfile;
use barhom::graph::RelationGraph;
use barhom::word::{RelationSet, Word};

/// SplitMix64: deterministic across platforms and builds.
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// All words of length `1..=max_len` over `k` letters.
pub fn exhaustive_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let count = k.pow(len as u32);
        for mut code in 0..count {
            let mut letters = Vec::with_capacity(len);
            for _ in 0..len {
                letters.push((code % k) as u8);
                code /= k;
            }
            out.push(Word::new(letters));
        }
    }
    out
}

/// Every antichain set of at most two relation words of length `2..=4`
/// over a two-letter alphabet, including the empty set.
pub fn two_letter_relation_sets() -> Vec<RelationSet> {
    let mut candidates = Vec::new();
    for len in 2..=4usize {
        for code in 0..(1usize << len) {
            let letters: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
            candidates.push(Word::new(letters));
        }
    }
    let mut out = vec![RelationSet::empty()];
    for i in 0..candidates.len() {
        out.push(RelationSet::new(vec![candidates[i].clone()]).unwrap());
        for j in i + 1..candidates.len() {
            if !candidates[i].is_factor_of(&candidates[j])
                && !candidates[j].is_factor_of(&candidates[i])
            {
                out.push(
                    RelationSet::new(vec![candidates[i].clone(), candidates[j].clone()]).unwrap(),
                );
            }
        }
    }
    out
}

pub fn random_word(rng: &mut Rng, k: usize, max_len: usize) -> Word {
    let n = 1 + rng.below(max_len);
    Word::new((0..n).map(|_| rng.below(k) as u8).collect())
}

pub fn random_relations(rng: &mut Rng, k: usize, max_rels: usize, max_len: usize) -> RelationSet {
    let m = rng.below(max_rels + 1);
    let words = (0..m)
        .map(|_| {
            let len = 2 + rng.below(max_len.saturating_sub(1));
            Word::new((0..len).map(|_| rng.below(k) as u8).collect())
        })
        .collect();
    RelationSet::new(words).unwrap()
}

pub fn random_graph(rng: &mut Rng, max_n: usize) -> RelationGraph {
    let n = 1 + rng.below(max_n);
    let max_edges = n * (n - 1) / 2;
    let m = rng.below(max_edges + 1);
    let mut edges = Vec::new();
    for _ in 0..m {
        let u = rng.below(n);
        let v = rng.below(n);
        if u != v {
            edges.push((u as u32, v as u32));
        }
    }
    RelationGraph::new(n, edges).unwrap()
}

/// Bar dimensions by merged-gap count, enumerated with nothing shared
/// with the library: direct window comparisons decide whether a block is
/// zero.
pub fn naive_bar_dims(w: &Word, relations: &RelationSet) -> Vec<usize> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let letters = w.letters();
    let block_zero = |s: usize, e: usize| {
        relations.relations().iter().any(|rel| {
            let rl = rel.len();
            if e - s < rl {
                return false;
            }
            (s..=e - rl).any(|i| &letters[i..i + rl] == rel.letters())
        })
    };
    let gaps = n - 1;
    let mut dims = vec![0usize; n];
    for mask in 0..(1usize << gaps) {
        let mut ok = true;
        let mut start = 0usize;
        for gap in 1..=gaps {
            if mask & (1 << (gap - 1)) == 0 {
                if block_zero(start, gap) {
                    ok = false;
                    break;
                }
                start = gap;
            }
        }
        if ok && !block_zero(start, n) {
            dims[mask.count_ones() as usize] += 1;
        }
    }
    while dims.last() == Some(&0) && dims.len() > 1 {
        dims.pop();
    }
    dims
}

/// Profile equality up to trailing zeros.
pub fn same_profile(a: &HomologyProfile, b: &HomologyProfile) -> bool {
    a.normalized_dims() == b.normalized_dims()
}
