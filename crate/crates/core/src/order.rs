//! Basic systems, contraction transformations, and contraction orders.
//!
//! A point is basic when it lies in exactly one relation. Contracting
//! through a basic point collapses that relation to a fresh point, which
//! every intersecting relation inherits. A relation that meets nothing
//! else is a unit tensor factor of the complex: contracting it removes it
//! (together with its points) unless it is the last relation, in which
//! case the result is the one-point terminal system. A system is an order
//! when some sequence of contractions through basic points reaches the
//! terminal system.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::system::{mask_points, render_mask, SetSystem};
use crate::DEFAULT_WORK_LIMIT;

/// One contraction step: the chosen basic point and its unique relation,
/// both in the labels of the system the step is applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertStep {
    pub point: usize,
    pub relation: Vec<usize>,
}

/// A replayable witness that a system is an order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderCertificate {
    pub steps: Vec<CertStep>,
}

impl OrderCertificate {
    /// Re-run the contractions from `start`, checking every step, and
    /// confirm the terminal system is reached.
    pub fn replay(&self, start: &SetSystem) -> Result<()> {
        let mut s = start.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let basics = find_basic_points(&s);
            let mask = step.relation.iter().fold(0u64, |m, &p| m | 1 << (p - 1));
            if !basics.iter().any(|&(p, r)| p == step.point && r == mask) {
                return Err(Error::Precondition(format!(
                    "step {i}: point {} with relation {} is not basic",
                    step.point,
                    render_mask(mask)
                )));
            }
            s = contract(&s, step.point)?;
        }
        if is_terminal(&s) {
            Ok(())
        } else {
            Err(Error::Precondition("replay did not reach the one-point system".into()))
        }
    }
}

/// The one-point system ({x}, {x}).
pub fn is_terminal(s: &SetSystem) -> bool {
    s.ground() == 1 && s.relations() == [1u64]
}

/// All points lying in exactly one relation, with that relation.
pub fn find_basic_points(s: &SetSystem) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for p in 1..=s.ground() {
        let bit = 1u64 << (p - 1);
        let mut containing = s.relations().iter().filter(|&&r| r & bit != 0);
        if let Some(&r) = containing.next() {
            if containing.next().is_none() {
                out.push((p, r));
            }
        }
    }
    out
}

/// True iff every relation owns a point covered only by it.
pub fn private_point_everywhere(s: &SetSystem) -> bool {
    let basics = find_basic_points(s);
    s.relations().iter().all(|&r| basics.iter().any(|&(_, br)| br == r))
}

/// Contract through the basic point `x` with unique relation `R1`.
///
/// The complex retracts onto the monomials divisible by the product over
/// `R1 - x`; on that retract every other relation acts through its part
/// outside `R1`, and the contracted relation survives as the zero
/// variable `x̄`. So: `R1`'s points are dropped, a fresh point `x̄`
/// carrying the singleton relation `{x̄}` replaces them, and every other
/// relation loses its `R1`-points. Contracting a singleton relation
/// deletes its (zero) variable outright.
///
/// Homology totals are preserved, which is what makes the order search
/// meaningful. Points are relabeled compactly afterwards: survivors keep
/// their relative order and `x̄` takes the slot of the smallest removed
/// point, so replaying a certificate is deterministic.
pub fn contract(s: &SetSystem, x: usize) -> Result<SetSystem> {
    if x == 0 || x > s.ground() {
        return Err(Error::Precondition(format!("point {x} outside ground set")));
    }
    let bit = 1u64 << (x - 1);
    let containing: Vec<u64> = s.relations().iter().copied().filter(|&r| r & bit != 0).collect();
    let [r1] = containing.as_slice() else {
        return Err(Error::Precondition(format!(
            "point {x} lies in {} relations, need exactly one",
            containing.len()
        )));
    };
    let r1 = *r1;
    let others: Vec<u64> = s.relations().iter().copied().filter(|&r| r != r1).collect();
    let survivors: Vec<usize> = (1..=s.ground()).filter(|&p| r1 & (1 << (p - 1)) == 0).collect();

    if r1.count_ones() == 1 {
        // a singleton relation names a zero variable: delete it
        let relabel: HashMap<usize, usize> =
            survivors.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
        let rels: Vec<Vec<usize>> = others
            .iter()
            .map(|&r| mask_points(r).iter().map(|p| relabel[p]).collect())
            .collect();
        return SetSystem::from_point_sets(survivors.len(), &rels);
    }

    // fresh point in the slot of the smallest removed point
    let fresh_old_label = mask_points(r1)[0];
    let mut all_points: Vec<usize> = survivors.clone();
    all_points.push(fresh_old_label);
    all_points.sort_unstable();
    let relabel: HashMap<usize, usize> =
        all_points.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
    let fresh = relabel[&fresh_old_label];
    let mut rels: Vec<Vec<usize>> = vec![vec![fresh]];
    for &r in &others {
        rels.push(mask_points(r & !r1).iter().map(|p| relabel[p]).collect());
    }
    SetSystem::from_point_sets(all_points.len(), &rels)
}

/// Search for a contraction sequence ending at the one-point system.
///
/// Depth-first over basic-point choices, memoizing failed canonical forms
/// so isomorphic dead ends are pruned.
pub fn is_order(s: &SetSystem) -> Result<Option<OrderCertificate>> {
    is_order_bounded(s, DEFAULT_WORK_LIMIT)
}

pub fn is_order_bounded(s: &SetSystem, limit: usize) -> Result<Option<OrderCertificate>> {
    if s.ground() == 0 {
        return Err(Error::Precondition("order search needs a nonempty ground set".into()));
    }
    let mut dead: HashSet<Vec<u64>> = HashSet::new();
    let mut on_stack: HashSet<Vec<u64>> = HashSet::new();
    let mut steps = Vec::new();
    if dfs(s, &mut dead, &mut on_stack, &mut steps, limit)? {
        Ok(Some(OrderCertificate { steps }))
    } else {
        Ok(None)
    }
}

fn dfs(
    s: &SetSystem,
    dead: &mut HashSet<Vec<u64>>,
    on_stack: &mut HashSet<Vec<u64>>,
    steps: &mut Vec<CertStep>,
    limit: usize,
) -> Result<bool> {
    if is_terminal(s) {
        return Ok(true);
    }
    let key = canonical_key(s);
    if dead.contains(&key) || on_stack.contains(&key) {
        return Ok(false);
    }
    if dead.len() + on_stack.len() >= limit {
        return Err(Error::Capacity { needed: dead.len() + on_stack.len() + 1, limit });
    }
    on_stack.insert(key.clone());
    for (p, r) in find_basic_points(s) {
        let next = contract(s, p)?;
        steps.push(CertStep { point: p, relation: mask_points(r) });
        if dfs(&next, dead, on_stack, steps, limit)? {
            on_stack.remove(&key);
            return Ok(true);
        }
        steps.pop();
    }
    on_stack.remove(&key);
    dead.insert(key);
    Ok(false)
}

/// A relabel-invariant key: points are renamed by an iterated incidence
/// signature, then the relation masks are sorted. Identical keys imply
/// isomorphic systems, which is all the memo table needs.
fn canonical_key(s: &SetSystem) -> Vec<u64> {
    let n = s.ground();
    let mut colors: Vec<u64> = (1..=n)
        .map(|p| {
            let mut sizes: Vec<u64> = s
                .relations()
                .iter()
                .filter(|&&r| r & (1 << (p - 1)) != 0)
                .map(|&r| r.count_ones() as u64)
                .collect();
            sizes.sort_unstable();
            fnv(&sizes)
        })
        .collect();
    for _ in 0..2 {
        let mut next = Vec::with_capacity(n);
        for p in 1..=n {
            let mut rel_sigs: Vec<u64> = s
                .relations()
                .iter()
                .filter(|&&r| r & (1 << (p - 1)) != 0)
                .map(|&r| {
                    let mut member_colors: Vec<u64> =
                        mask_points(r).iter().map(|&q| colors[q - 1]).collect();
                    member_colors.sort_unstable();
                    fnv(&member_colors)
                })
                .collect();
            rel_sigs.sort_unstable();
            rel_sigs.insert(0, colors[p - 1]);
            next.push(fnv(&rel_sigs));
        }
        colors = next;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (colors[i], i));
    let mut new_index = vec![0usize; n];
    for (rank, &old) in order.iter().enumerate() {
        new_index[old] = rank;
    }
    let mut masks: Vec<u64> = s
        .relations()
        .iter()
        .map(|&r| {
            let mut m = 0u64;
            for p in mask_points(r) {
                m |= 1 << new_index[p - 1];
            }
            m
        })
        .collect();
    masks.sort_unstable();
    masks.insert(0, n as u64);
    masks
}

fn fnv(data: &[u64]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &d in data {
        for b in d.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}
