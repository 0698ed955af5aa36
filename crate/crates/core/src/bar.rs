//! Bar subcomplexes of words in a monomial non-unital algebra, the
//! generalized Dyck path of a word, and the closed-form homology
//! predictor.
//!
//! Degree `g` of the bar subcomplex consists of the tensor decompositions
//! of the word with `g` merged gaps and every block nonzero in the
//! algebra; the tensor (bar) index is `n - g`. The differential merges one
//! more gap, summing over adjacent block pairs with alternating signs.

use crate::complex::{homology_dims_bounded, GradedComplex, HomologyProfile};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::IntMatrix;
use crate::word::{min_end_from, Alphabet, RelationSet, Word};
use crate::DEFAULT_WORK_LIMIT;

/// The generalized Dyck path of a word with respect to a relation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyckResult {
    /// Ends of minimal zero prefixes, 1-indexed, in the order produced.
    pub d_sequence: Vec<usize>,
    /// Number of distinct values in `d_sequence`.
    pub r: usize,
    pub exact: bool,
    pub reason: DyckReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DyckReason {
    /// Some letter or gap of the word lies in no relation occurrence.
    UnusedLetter,
    /// The sequence repeated a value instead of increasing.
    NonIncreasing,
    /// A chain ran out of occurrences before reaching the end of the word.
    LastNotN,
    /// The path completed: the complex is not exact.
    Nonexact,
}

impl DyckReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            DyckReason::UnusedLetter => "unused_letter",
            DyckReason::NonIncreasing => "non_increasing",
            DyckReason::LastNotN => "last_not_n",
            DyckReason::Nonexact => "nonexact",
        }
    }
}

/// Where the one-dimensional homology sits, when it exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Exact,
    OneDim {
        /// Tensor index `r + 1` carrying the homology.
        bar_degree: usize,
        /// The same position counted from the top term: `n - r`.
        paper_place: usize,
    },
}

/// Compute the generalized Dyck path.
///
/// Starts are visited in the interleaved order `1, 2, d1+1, d2+1, ...`;
/// from each start the next value is the end of the minimal zero prefix.
/// The process ends as soon as a value reaches `n`. It declares the
/// complex exact when some gap of the word is covered by no occurrence,
/// when a start yields no zero prefix before the end is reached, or when a
/// value repeats.
pub fn dyck_path(w: &Word, relations: &RelationSet) -> DyckResult {
    let n = w.len();
    assert!(n >= 1, "dyck_path needs a nonempty word");
    let occs = relations.scanner().occurrences(w);

    if occs.is_empty() {
        return DyckResult {
            d_sequence: Vec::new(),
            r: 0,
            exact: true,
            reason: DyckReason::UnusedLetter,
        };
    }

    // gap coverage: gap g (between letters g and g+1, 1-indexed) must lie
    // inside some occurrence, else the complex splits and is exact
    let mut covered = vec![false; n + 1];
    for occ in &occs {
        for gap in occ.start + 1..occ.end {
            covered[gap] = true;
        }
    }
    let gap_uncovered = (1..n).any(|g| !covered[g]);

    // min_end[s] = least end over occurrences starting at letter >= s (0-indexed)
    let min_end = min_end_from(&occs, n);

    let mut d_sequence: Vec<usize> = Vec::new();
    let mut exact = false;
    let mut reason = DyckReason::Nonexact;
    // index (1-based) at which a chain first reached n; the other chain
    // then takes exactly one more step, which either repeats n (exact) or
    // runs out of occurrences (the path is complete)
    let mut finished_at: Option<usize> = None;
    loop {
        let k = d_sequence.len() + 1;
        if let Some(f) = finished_at {
            if k > f + 1 {
                break;
            }
        }
        let start = match k {
            1 => 1usize,
            2 => 2usize,
            _ => d_sequence[k - 3] + 1,
        };
        if start > n {
            break;
        }
        let end = min_end[start - 1];
        if end == usize::MAX {
            if finished_at.is_none() {
                exact = true;
                reason = DyckReason::LastNotN;
            }
            break;
        }
        if d_sequence.last() == Some(&end) {
            d_sequence.push(end);
            exact = true;
            reason = DyckReason::NonIncreasing;
            break;
        }
        d_sequence.push(end);
        if end == n && finished_at.is_none() {
            finished_at = Some(k);
        }
    }
    if !exact && finished_at.is_none() {
        // cannot happen for words with occurrences, but stay safe
        exact = true;
        reason = DyckReason::LastNotN;
    }

    if gap_uncovered {
        exact = true;
        reason = DyckReason::UnusedLetter;
    }

    let mut distinct = d_sequence.clone();
    distinct.dedup();
    DyckResult { d_sequence, r: distinct.len(), exact, reason }
}

/// Predict the homology of the bar subcomplex without linear algebra.
pub fn predict_homology(w: &Word, relations: &RelationSet) -> Prediction {
    let n = w.len();
    assert!(n >= 1, "predict_homology needs a nonempty word");
    if n == 1 {
        // a single letter is never zero, the complex is 0 -> k -> 0
        return Prediction::OneDim { bar_degree: 1, paper_place: 1 };
    }
    let dyck = dyck_path(w, relations);
    if dyck.exact {
        Prediction::Exact
    } else {
        Prediction::OneDim { bar_degree: dyck.r + 1, paper_place: n - dyck.r }
    }
}

/// Build the bar subcomplex of `w`.
///
/// Basis elements are encoded as gap bitmasks but constructed and labeled
/// through their block decompositions; a decomposition is admissible iff
/// every block avoids all relation occurrences.
pub fn bar_subcomplex(w: &Word, relations: &RelationSet) -> Result<GradedComplex> {
    bar_subcomplex_bounded(w, relations, None, DEFAULT_WORK_LIMIT)
}

pub fn bar_subcomplex_bounded(
    w: &Word,
    relations: &RelationSet,
    alphabet: Option<&Alphabet>,
    limit: usize,
) -> Result<GradedComplex> {
    let n = w.len();
    if n == 0 {
        return Ok(GradedComplex::empty());
    }
    if n > 40 {
        return Err(Error::Capacity { needed: usize::MAX, limit });
    }
    let occs = relations.scanner().occurrences(w);
    let min_end = min_end_from(&occs, n);
    // block letters s..e (0-indexed, e exclusive) is zero iff it contains
    // an occurrence, i.e. the least end from s fits inside
    let block_is_zero = |s: usize, e: usize| min_end[s] <= e;

    let gaps = n - 1;
    let mask_count = 1usize << gaps;
    if mask_count > limit {
        return Err(Error::Capacity { needed: mask_count, limit });
    }

    // admissibility by scanning the block runs of each mask
    let mut admissible = vec![false; mask_count];
    let mut total = 0usize;
    for mask in 0..mask_count {
        let mut ok = true;
        let mut block_start = 0usize;
        for gap in 1..=gaps {
            if mask & (1 << (gap - 1)) == 0 {
                if block_is_zero(block_start, gap) {
                    ok = false;
                    break;
                }
                block_start = gap;
            }
        }
        if ok && block_is_zero(block_start, n) {
            ok = false;
        }
        admissible[mask] = ok;
        if ok {
            total += 1;
            if total > limit {
                return Err(Error::Capacity { needed: total, limit });
            }
        }
    }

    // strata by number of merged gaps
    let gmax = (0..mask_count)
        .filter(|&m| admissible[m])
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut strata: Vec<Vec<usize>> = vec![Vec::new(); gmax + 1];
    for mask in 0..mask_count {
        if admissible[mask] {
            strata[mask.count_ones() as usize].push(mask);
        }
    }
    let index: Vec<std::collections::HashMap<usize, usize>> = strata
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();

    let labels: Vec<Vec<String>> = strata
        .iter()
        .map(|s| s.iter().map(|&m| block_label(w, m, alphabet)).collect())
        .collect();

    let mut differentials = Vec::with_capacity(gmax);
    for g in 0..gmax {
        let mut entries = Vec::new();
        for (col, &mask) in strata[g].iter().enumerate() {
            // merge the i-th and (i+1)-st blocks: close the i-th open gap
            let mut seen_open = 0usize;
            for gap in 1..=gaps {
                let bit = 1usize << (gap - 1);
                if mask & bit != 0 {
                    continue;
                }
                seen_open += 1;
                let target = mask | bit;
                if admissible[target] {
                    let row = index[g + 1][&target];
                    // bar sign (-1)^(i-1) for merging at tensor position i
                    let sign = if seen_open % 2 == 1 { 1 } else { -1 };
                    entries.push((row as u32, col as u32, sign));
                }
            }
        }
        differentials.push(IntMatrix::new(strata[g + 1].len(), strata[g].len(), entries)?);
    }
    GradedComplex::new(labels, differentials)
}

fn block_label(w: &Word, mask: usize, alphabet: Option<&Alphabet>) -> String {
    let n = w.len();
    let mut out = String::new();
    for (i, &letter) in w.letters().iter().enumerate() {
        match alphabet {
            Some(a) => out.push_str(a.token(letter)),
            None => out.push_str(&letter.to_string()),
        }
        if i + 1 < n && mask & (1 << i) == 0 {
            out.push('|');
        }
    }
    out
}

/// Homology of the bar subcomplex: the oracle the predictor is checked
/// against.
pub fn word_homology(w: &Word, relations: &RelationSet, field: FieldSpec) -> Result<HomologyProfile> {
    word_homology_bounded(w, relations, field, DEFAULT_WORK_LIMIT)
}

pub fn word_homology_bounded(
    w: &Word,
    relations: &RelationSet,
    field: FieldSpec,
    limit: usize,
) -> Result<HomologyProfile> {
    let c = bar_subcomplex_bounded(w, relations, None, limit)?;
    homology_dims_bounded(&c, field, limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{euler_characteristic, validate_complex};

    fn alpha() -> Alphabet {
        Alphabet::new(vec!["x", "y", "z"]).unwrap()
    }

    fn word(s: &str) -> Word {
        let a = alpha();
        let t: Vec<String> = s.chars().map(|c| c.to_string()).collect();
        let r: Vec<&str> = t.iter().map(String::as_str).collect();
        a.parse_word(&r).unwrap()
    }

    fn rels(ws: &[&str]) -> RelationSet {
        RelationSet::new(ws.iter().map(|s| word(s)).collect()).unwrap()
    }

    #[test]
    fn dyck_pinned_examples() {
        let d = dyck_path(&word("xyzz"), &rels(&["xyz", "zz"]));
        assert_eq!(d.d_sequence, vec![3, 4]);
        assert_eq!(d.r, 2);
        assert!(!d.exact);

        let d = dyck_path(&word("xxxx"), &rels(&["xxx"]));
        assert_eq!(d.d_sequence, vec![3, 4]);
        assert_eq!(d.r, 2);
        assert!(!d.exact);
    }

    #[test]
    fn dyck_unused_letter() {
        let d = dyck_path(&word("xyz"), &rels(&["xy"]));
        assert!(d.exact);
        assert_eq!(d.reason, DyckReason::UnusedLetter);

        // all letters covered but a gap is not
        let d = dyck_path(&word("xyzx"), &rels(&["xy", "zx"]));
        assert!(d.exact);
        assert_eq!(d.reason, DyckReason::UnusedLetter);
    }

    #[test]
    fn dyck_stuck_chain() {
        // xxxxx with relation xxx: the first chain cannot reach the end
        let d = dyck_path(&word("xxxxx"), &rels(&["xxx"]));
        assert!(d.exact);
        assert_eq!(d.reason, DyckReason::LastNotN);
        assert_eq!(d.d_sequence, vec![3, 4]);
    }

    #[test]
    fn predictions() {
        assert_eq!(
            predict_homology(&word("x"), &rels(&["xxx"])),
            Prediction::OneDim { bar_degree: 1, paper_place: 1 }
        );
        assert_eq!(
            predict_homology(&word("xxxx"), &rels(&["xxx"])),
            Prediction::OneDim { bar_degree: 3, paper_place: 2 }
        );
        assert_eq!(predict_homology(&word("xy"), &RelationSet::empty()), Prediction::Exact);
    }

    #[test]
    fn bar_complex_shapes() {
        // xy with xy = 0: only the split tensor
        let c = bar_subcomplex(&word("xy"), &rels(&["xy"])).unwrap();
        assert_eq!(c.dims(), vec![1]);

        // xy nonzero: exact two-term complex
        let c = bar_subcomplex(&word("xy"), &RelationSet::empty()).unwrap();
        assert_eq!(c.dims(), vec![1, 1]);

        let c = bar_subcomplex(&word("xxxx"), &rels(&["xxx"])).unwrap();
        assert_eq!(c.dims(), vec![1, 3, 1]);
        assert!(validate_complex(&c).unwrap());
        assert_eq!(euler_characteristic(&c), -1);
    }

    #[test]
    fn bar_labels_show_blocks() {
        let a = alpha();
        let c = bar_subcomplex_bounded(&word("xxxx"), &rels(&["xxx"]), Some(&a), 1 << 20).unwrap();
        assert_eq!(c.labels(0), &["x|x|x|x".to_string()]);
        assert_eq!(
            c.labels(1),
            &["xx|x|x".to_string(), "x|xx|x".to_string(), "x|x|xx".to_string()]
        );
        assert_eq!(c.labels(2), &["xx|xx".to_string()]);
    }

    #[test]
    fn word_homology_examples() {
        let p = FieldSpec::default_prime();
        let h = word_homology(&word("xy"), &rels(&["xy"]), p).unwrap();
        assert_eq!(h.total, 1);

        let h = word_homology(&word("xxxx"), &rels(&["xxx"]), p).unwrap();
        assert_eq!(h.total, 1);
        assert_eq!(h.dims, vec![0, 1, 0]); // degree 1 = bar index 3

        let h = word_homology(&word("xyz"), &RelationSet::empty(), p).unwrap();
        assert_eq!(h.total, 0);
    }

    #[test]
    fn corrupted_sign_breaks_square_zero() {
        let c = bar_subcomplex(&word("xxxx"), &rels(&["xxx"])).unwrap();
        assert!(validate_complex(&c).unwrap());
        let d0 = c.differential(0).unwrap();
        let flipped: Vec<(u32, u32, i64)> = d0
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &(r, col, v))| if i == 0 { (r, col, -v) } else { (r, col, v) })
            .collect();
        let bad0 = IntMatrix::new(d0.rows(), d0.cols(), flipped).unwrap();
        let labels: Vec<Vec<String>> =
            (0..c.degrees()).map(|g| c.labels(g).to_vec()).collect();
        let bad = GradedComplex::new(
            labels,
            vec![bad0, c.differential(1).unwrap().clone()],
        )
        .unwrap();
        assert!(!validate_complex(&bad).unwrap());
    }

    #[test]
    fn position_independence() {
        // same occurrence intervals, different presentations
        let c1 = bar_subcomplex(&word("xyzz"), &rels(&["xyz", "zz"])).unwrap();
        let a4 = Alphabet::new(vec!["a", "b", "c", "d"]).unwrap();
        let w2 = a4.parse_word(&["a", "b", "c", "d"]).unwrap();
        let r2 = RelationSet::new(vec![
            a4.parse_word(&["a", "b", "c"]).unwrap(),
            a4.parse_word(&["c", "d"]).unwrap(),
        ])
        .unwrap();
        let c2 = bar_subcomplex(&w2, &r2).unwrap();
        assert_eq!(c1.dims(), c2.dims());
        assert_eq!(c1.differentials(), c2.differentials());
    }
}
