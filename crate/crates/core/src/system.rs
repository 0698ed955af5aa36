//! Set systems: monomial quotients of a Grassmann algebra.
//!
//! A system is a ground set `{1..n}` with an antichain of relation
//! subsets. Its complex has one basis element for every subset containing
//! no relation, and the differential is right multiplication by the sum of
//! all variables, with the sign of moving a variable past larger indices.

use std::collections::HashMap;

use crate::complex::{homology_dims_bounded, GradedComplex, HomologyProfile};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::IntMatrix;
use crate::word::{RelationSet, Word};
use crate::DEFAULT_WORK_LIMIT;

/// Ground set `{1..n}` (n <= 64) plus an inclusion antichain of nonempty
/// relation subsets, stored as bitmasks with point `i` at bit `i - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground: usize,
    relations: Vec<u64>,
}

impl SetSystem {
    pub fn new(ground: usize, relations: Vec<u64>) -> Result<Self> {
        if ground > 64 {
            return Err(Error::Capacity { needed: ground, limit: 64 });
        }
        let full: u64 = if ground == 64 { u64::MAX } else { (1u64 << ground) - 1 };
        for &r in &relations {
            if r == 0 {
                return Err(Error::InvalidRelation("empty relation subset".into()));
            }
            if r & !full != 0 {
                return Err(Error::InvalidRelation(format!(
                    "relation {} uses points outside 1..{}",
                    render_mask(r),
                    ground
                )));
            }
        }
        Ok(SetSystem { ground, relations: antichain_masks(relations) })
    }

    pub fn from_point_sets(ground: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut m = 0u64;
            for &p in s {
                if p == 0 || p > ground {
                    return Err(Error::InvalidRelation(format!("point {p} outside 1..{ground}")));
                }
                m |= 1 << (p - 1);
            }
            masks.push(m);
        }
        SetSystem::new(ground, masks)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// Relation masks, minimal under inclusion, sorted.
    pub fn relations(&self) -> &[u64] {
        &self.relations
    }

    pub fn relation_points(&self) -> Vec<Vec<usize>> {
        self.relations.iter().map(|&m| mask_points(m)).collect()
    }

    /// Points covered by no relation.
    pub fn uncovered_points(&self) -> Vec<usize> {
        let covered: u64 = self.relations.iter().fold(0, |a, &m| a | m);
        (1..=self.ground).filter(|&p| covered & (1 << (p - 1)) == 0).collect()
    }
}

/// Keep only inclusion-minimal masks, deduplicated and sorted.
fn antichain_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| k & m == k) {
            kept.push(m);
        }
    }
    kept
}

pub(crate) fn mask_points(m: u64) -> Vec<usize> {
    (0..64).filter(|&b| m & (1 << b) != 0).map(|b| b + 1).collect()
}

pub(crate) fn render_mask(m: u64) -> String {
    let pts: Vec<String> = mask_points(m).iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", pts.join(","))
}

/// Gap system of a word: ground set = gaps `1..n-1`, one relation per
/// occurrence of a relation word, spanning the gaps inside the occurrence.
pub fn word_to_system(w: &Word, relations: &RelationSet) -> Result<SetSystem> {
    let n = w.len();
    if n == 0 {
        return Err(Error::Precondition("word must be nonempty".into()));
    }
    let occs = relations.scanner().occurrences(w);
    let mut masks = Vec::with_capacity(occs.len());
    for occ in occs {
        // occurrence at letters start..end covers gaps start+1 ..= end-1
        // (1-indexed gaps; gap g sits between letters g and g+1)
        let mut m = 0u64;
        for gap in occ.start + 1..occ.end {
            m |= 1 << (gap - 1);
        }
        masks.push(m);
    }
    SetSystem::new(n - 1, masks)
}

/// The Grassmann complex of a system, optionally restricted to the
/// variables of `w_mask`.
pub fn grassmann_complex(s: &SetSystem, w_mask: Option<u64>) -> Result<GradedComplex> {
    grassmann_complex_bounded(s, w_mask, DEFAULT_WORK_LIMIT)
}

pub fn grassmann_complex_bounded(
    s: &SetSystem,
    w_mask: Option<u64>,
    limit: usize,
) -> Result<GradedComplex> {
    let full: u64 = if s.ground == 64 { u64::MAX } else { (1u64 << s.ground) - 1 };
    let universe = w_mask.map_or(full, |m| m & full);
    let relations: Vec<u64> =
        s.relations.iter().copied().filter(|&r| r & universe == r).collect();
    let admissible = |m: u64| relations.iter().all(|&r| r & m != r);

    // breadth-first by cardinality; admissible sets are closed under subsets
    let mut strata: Vec<Vec<u64>> = vec![vec![0u64]];
    let mut total = 1usize;
    loop {
        let prev = strata.last().unwrap();
        let mut next: Vec<u64> = Vec::new();
        for &m in prev {
            let mut free = universe & !m;
            while free != 0 {
                let bit = free & free.wrapping_neg();
                free ^= bit;
                // extend only upward to enumerate each set once
                if bit > m && admissible(m | bit) {
                    next.push(m | bit);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.is_empty() {
            break;
        }
        total += next.len();
        if total > limit {
            return Err(Error::Capacity { needed: total, limit });
        }
        strata.push(next);
    }

    let mut labels = Vec::with_capacity(strata.len());
    let mut index: Vec<HashMap<u64, usize>> = Vec::with_capacity(strata.len());
    for stratum in &strata {
        labels.push(stratum.iter().map(|&m| render_mask(m)).collect::<Vec<_>>());
        index.push(stratum.iter().enumerate().map(|(i, &m)| (m, i)).collect());
    }

    let mut differentials = Vec::with_capacity(strata.len().saturating_sub(1));
    for g in 0..strata.len().saturating_sub(1) {
        let mut entries = Vec::new();
        for (col, &m) in strata[g].iter().enumerate() {
            let mut free = universe & !m;
            while free != 0 {
                let bit = free & free.wrapping_neg();
                free ^= bit;
                let target = m | bit;
                if let Some(&row) = index[g + 1].get(&target) {
                    // sign of moving the new variable past larger indices
                    let above = (m & !(bit | (bit - 1))).count_ones();
                    let sign = if above % 2 == 0 { 1 } else { -1 };
                    entries.push((row as u32, col as u32, sign));
                }
            }
        }
        differentials.push(IntMatrix::new(strata[g + 1].len(), strata[g].len(), entries)?);
    }
    GradedComplex::new(labels, differentials)
}

/// Homology of the Grassmann complex: the rank-based oracle used to check
/// every combinatorial shortcut in the crate.
pub fn system_homology(s: &SetSystem, field: FieldSpec) -> Result<HomologyProfile> {
    system_homology_bounded(s, field, DEFAULT_WORK_LIMIT)
}

pub fn system_homology_bounded(
    s: &SetSystem,
    field: FieldSpec,
    limit: usize,
) -> Result<HomologyProfile> {
    let c = grassmann_complex_bounded(s, None, limit)?;
    homology_dims_bounded(&c, field, limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::validate_complex;
    use crate::word::Alphabet;

    pub(crate) fn example_71() -> SetSystem {
        SetSystem::from_point_sets(4, &[vec![1, 2, 3], vec![1, 4], vec![2, 4], vec![3, 4]]).unwrap()
    }

    pub(crate) fn example_72() -> SetSystem {
        SetSystem::from_point_sets(
            6,
            &[
                vec![1, 3],
                vec![1, 4],
                vec![1, 2],
                vec![2, 5],
                vec![2, 6],
                vec![3, 4],
                vec![5, 6],
            ],
        )
        .unwrap()
    }

    #[test]
    fn antichain_normalization() {
        let s = SetSystem::from_point_sets(3, &[vec![1, 2], vec![1, 2, 3], vec![2]]).unwrap();
        assert_eq!(s.relations(), &[0b010]);
        assert!(SetSystem::from_point_sets(2, &[vec![]]).is_err());
    }

    #[test]
    fn word_gap_systems() {
        let a = Alphabet::new(vec!["x", "y", "z"]).unwrap();
        let word = |s: &str| {
            let t: Vec<String> = s.chars().map(|c| c.to_string()).collect();
            let r: Vec<&str> = t.iter().map(String::as_str).collect();
            a.parse_word(&r).unwrap()
        };
        let rels = |ws: &[&str]| RelationSet::new(ws.iter().map(|s| word(s)).collect()).unwrap();

        let s = word_to_system(&word("xxxx"), &rels(&["xxx"])).unwrap();
        assert_eq!(s.ground(), 3);
        assert_eq!(s.relation_points(), vec![vec![1, 2], vec![2, 3]]);

        let s = word_to_system(&word("xy"), &rels(&["xy"])).unwrap();
        assert_eq!(s.ground(), 1);
        assert_eq!(s.relation_points(), vec![vec![1]]);

        let s = word_to_system(&word("xyzz"), &rels(&["xyz", "zz"])).unwrap();
        assert_eq!(s.ground(), 3);
        assert_eq!(s.relation_points(), vec![vec![3], vec![1, 2]]);
    }

    #[test]
    fn full_exterior_algebra() {
        let s = SetSystem::new(2, vec![]).unwrap();
        let c = grassmann_complex(&s, None).unwrap();
        assert_eq!(c.dims(), vec![1, 2, 1]);
        assert!(validate_complex(&c).unwrap());
        let h = system_homology(&s, FieldSpec::default_prime()).unwrap();
        assert_eq!(h.total, 0);
    }

    #[test]
    fn example_71_profile() {
        let c = grassmann_complex(&example_71(), None).unwrap();
        assert_eq!(c.dims(), vec![1, 4, 3]);
        assert!(validate_complex(&c).unwrap());
        for field in [FieldSpec::default_prime(), FieldSpec::Rational] {
            let h = system_homology(&example_71(), field).unwrap();
            assert_eq!(h.dims, vec![0, 1, 1]);
            assert_eq!(h.total, 2);
        }
    }

    #[test]
    fn example_72_profile() {
        let c = grassmann_complex(&example_72(), None).unwrap();
        assert_eq!(c.dims(), vec![1, 6, 8]);
        assert!(validate_complex(&c).unwrap());
        for field in [FieldSpec::default_prime(), FieldSpec::Rational] {
            let h = system_homology(&example_72(), field).unwrap();
            assert_eq!(h.dims, vec![0, 0, 3]);
            assert_eq!(h.total, 3);
        }
    }

    #[test]
    fn example_72_degree_one_rank() {
        let c = grassmann_complex(&example_72(), None).unwrap();
        let d1 = c.differential(1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (8, 6));
        assert_eq!(crate::matrix::rank(d1, FieldSpec::Rational).unwrap(), 5);
    }

    #[test]
    fn unused_variable_kills_homology() {
        let s = SetSystem::from_point_sets(2, &[vec![1]]).unwrap();
        let h = system_homology(&s, FieldSpec::default_prime()).unwrap();
        assert_eq!(h.total, 0);
    }

    #[test]
    fn triangle_and_edge() {
        let triangle =
            SetSystem::from_point_sets(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let c = grassmann_complex(&triangle, None).unwrap();
        assert_eq!(c.dims(), vec![1, 3]);
        let h = system_homology(&triangle, FieldSpec::default_prime()).unwrap();
        assert_eq!(h.dims, vec![0, 2]);
        assert_eq!(h.total, 2);

        let edge = SetSystem::from_point_sets(2, &[vec![1, 2]]).unwrap();
        let h = system_homology(&edge, FieldSpec::default_prime()).unwrap();
        assert_eq!(h.dims, vec![0, 1]);
        assert_eq!(h.total, 1);
    }

    #[test]
    fn empty_ground_is_a_point() {
        let s = SetSystem::new(0, vec![]).unwrap();
        let h = system_homology(&s, FieldSpec::default_prime()).unwrap();
        assert_eq!(h.dims, vec![1]);
        assert_eq!(h.total, 1);
    }

    #[test]
    fn mask_restriction() {
        // restricting to {2} of a two-point system with relation {1}
        let s = SetSystem::from_point_sets(2, &[vec![1]]).unwrap();
        let c = grassmann_complex(&s, Some(0b10)).unwrap();
        assert_eq!(c.dims(), vec![1, 1]);
    }
}
