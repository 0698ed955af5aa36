//! Sparse integer matrices and exact rank computation.
//!
//! Rank is computed by sparse Gaussian elimination with a Markowitz-style
//! minimum-fill pivot rule. Over a prime field the arithmetic is modular;
//! over the rationals the elimination is fraction-free: rows stay integral
//! (`BigInt`), each update is `piv * row - a * pivrow` followed by removal
//! of the content gcd, and pivots of absolute value one are preferred so
//! that entries barely grow in practice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{fp, FieldSpec};
use crate::DEFAULT_WORK_LIMIT;

/// A sparse matrix with integer entries.
///
/// Entries are kept sorted by `(row, col)` with no duplicates and no
/// explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, i64)>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(u32, u32, i64)>) -> Result<Self> {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::Structural(format!(
                    "duplicate entry at ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        for &(r, c, v) in &entries {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::Structural(format!("entry ({r}, {c}) out of range")));
            }
            if v == 0 {
                return Err(Error::Structural(format!("stored zero at ({r}, {c})")));
            }
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n as u32).map(|i| (i, i, 1)).collect();
        IntMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(u32, u32, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when every entry lies in {-1, 1}.
    pub fn entries_are_units(&self) -> bool {
        self.entries.iter().all(|&(_, _, v)| v == 1 || v == -1)
    }

    /// `self * other` over the integers.
    pub fn compose(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Structural(format!(
                "compose shape mismatch: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // rows of `other` indexed by row for the accumulation
        let mut other_rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            other_rows[r as usize].push((c, v));
        }
        let mut acc: std::collections::BTreeMap<(u32, u32), i64> = std::collections::BTreeMap::new();
        for &(r, k, v) in &self.entries {
            for &(c, w) in &other_rows[k as usize] {
                *acc.entry((r, c)).or_insert(0) += v * w;
            }
        }
        let entries = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        IntMatrix::new(self.rows, other.cols, entries)
    }
}

/// Rank over `field` with the default work limit.
pub fn rank(m: &IntMatrix, field: FieldSpec) -> Result<usize> {
    rank_bounded(m, field, DEFAULT_WORK_LIMIT)
}

/// Rank over `field`, refusing matrices with `rows * cols` above `limit`.
pub fn rank_bounded(m: &IntMatrix, field: FieldSpec, limit: usize) -> Result<usize> {
    let size = m.rows.saturating_mul(m.cols);
    if size > limit {
        return Err(Error::Capacity { needed: size, limit });
    }
    if m.entries.is_empty() {
        return Ok(0);
    }
    match field {
        FieldSpec::Prime(p) => Ok(rank_mod_p(m, p)),
        FieldSpec::Rational => Ok(rank_rational(m)),
    }
}

/// Row-list representation used by both elimination routines.
fn row_lists<T, F: Fn(i64) -> T>(m: &IntMatrix, conv: F) -> Vec<Vec<(u32, T)>> {
    let mut rows: Vec<Vec<(u32, T)>> = (0..m.rows).map(|_| Vec::new()).collect();
    for &(r, c, v) in &m.entries {
        rows[r as usize].push((c, conv(v)));
    }
    rows
}

/// Pick a pivot among active rows: Markowitz cost, preferring unit values.
fn pick_pivot<T, IsUnit: Fn(&T) -> bool>(
    rows: &[Vec<(u32, T)>],
    active: &[bool],
    col_count: &[u32],
    is_unit: IsUnit,
) -> Option<(usize, u32)> {
    let mut best: Option<(u64, usize, u32)> = None;
    for (r, row) in rows.iter().enumerate() {
        if !active[r] || row.is_empty() {
            continue;
        }
        let rlen = row.len() as u64 - 1;
        for (c, v) in row {
            let cost = rlen * (col_count[*c as usize] as u64 - 1);
            // non-unit pivots are strongly penalized to keep integer growth down
            let key = if is_unit(v) { cost } else { cost + (1 << 40) };
            match best {
                Some((k, _, _)) if k <= key => {}
                _ => best = Some((key, r, *c)),
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let mut rows = row_lists(m, |v| fp::from_i64(v, p));
    for row in &mut rows {
        row.retain(|&(_, v)| v != 0);
    }
    let mut active = vec![true; rows.len()];
    let mut col_count = vec![0u32; m.cols];
    for (r, row) in rows.iter().enumerate() {
        if active[r] {
            for &(c, _) in row {
                col_count[c as usize] += 1;
            }
        }
    }
    let mut rank = 0usize;
    loop {
        let Some((pr, pc)) = pick_pivot(&rows, &active, &col_count, |_| true) else {
            break;
        };
        rank += 1;
        active[pr] = false;
        for &(c, _) in &rows[pr] {
            col_count[c as usize] -= 1;
        }
        let pivot_row = std::mem::take(&mut rows[pr]);
        let pv = pivot_row.iter().find(|&&(c, _)| c == pc).unwrap().1;
        let pv_inv = fp::inv(pv, p);
        for r in 0..rows.len() {
            if !active[r] {
                continue;
            }
            let Some(&(_, a)) = rows[r].iter().find(|&&(c, _)| c == pc) else {
                continue;
            };
            let factor = fp::mul(a, pv_inv, p);
            for &(c, _) in &rows[r] {
                col_count[c as usize] -= 1;
            }
            rows[r] = sub_scaled_mod_p(&rows[r], &pivot_row, factor, p);
            for &(c, _) in &rows[r] {
                col_count[c as usize] += 1;
            }
        }
    }
    rank
}

/// `row - factor * pivot` over GF(p), merging sorted column lists.
fn sub_scaled_mod_p(row: &[(u32, u64)], pivot: &[(u32, u64)], factor: u64, p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        if j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            out.push(row[i]);
            i += 1;
        } else if i >= row.len() || pivot[j].0 < row[i].0 {
            let v = fp::sub(0, fp::mul(factor, pivot[j].1, p), p);
            if v != 0 {
                out.push((pivot[j].0, v));
            }
            j += 1;
        } else {
            let v = fp::sub(row[i].1, fp::mul(factor, pivot[j].1, p), p);
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn rank_rational(m: &IntMatrix) -> usize {
    let mut rows = row_lists(m, BigInt::from);
    let mut active = vec![true; rows.len()];
    let mut col_count = vec![0u32; m.cols];
    for row in rows.iter() {
        for &(c, _) in row {
            col_count[c as usize] += 1;
        }
    }
    let one = BigInt::from(1);
    let mut rank = 0usize;
    loop {
        let Some((pr, pc)) = pick_pivot(&rows, &active, &col_count, |v: &BigInt| v.abs() == one) else {
            break;
        };
        rank += 1;
        active[pr] = false;
        for &(c, _) in &rows[pr] {
            col_count[c as usize] -= 1;
        }
        let pivot_row = std::mem::take(&mut rows[pr]);
        let pv = pivot_row.iter().find(|&&(c, _)| c == pc).unwrap().1.clone();
        for r in 0..rows.len() {
            if !active[r] {
                continue;
            }
            let Some((_, a)) = rows[r].iter().find(|&&(c, _)| c == pc) else {
                continue;
            };
            let a = a.clone();
            for &(c, _) in &rows[r] {
                col_count[c as usize] -= 1;
            }
            rows[r] = sub_scaled_int(&rows[r], &pivot_row, &pv, &a);
            strip_content(&mut rows[r]);
            for &(c, _) in &rows[r] {
                col_count[c as usize] += 1;
            }
        }
    }
    rank
}

/// `pv * row - a * pivot` over the integers.
fn sub_scaled_int(
    row: &[(u32, BigInt)],
    pivot: &[(u32, BigInt)],
    pv: &BigInt,
    a: &BigInt,
) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        if j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            out.push((row[i].0, pv * &row[i].1));
            i += 1;
        } else if i >= row.len() || pivot[j].0 < row[i].0 {
            let v: BigInt = -(a * &pivot[j].1);
            if !v.is_zero() {
                out.push((pivot[j].0, v));
            }
            j += 1;
        } else {
            let v: BigInt = pv * &row[i].1 - a * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn strip_content(row: &mut [(u32, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            return;
        }
    }
    if g > BigInt::from(1) {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}
