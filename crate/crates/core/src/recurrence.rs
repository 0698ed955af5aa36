//! The pair-rewriting operator on words over {x, y, z}, the six
//! coefficient recurrence it induces on squares, and the homology
//! dimension formula for the truncated binary tree family.
//!
//! The rewriting table sends consecutive pairs to
//! `xx -> y + z`, `yy -> 0`, `zz -> x` and the mixed pairs
//! `xy, yx, yz, zy -> z`. The table leaves `xz` and `zx` open; the engine
//! takes their image from a configurable rule set (default `z`) and
//! reports whether those entries were ever consulted.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Letters of the three-variable rewriting alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
            Letter::Z => 'z',
        }
    }
}

pub type LetterWord = Vec<Letter>;

/// A nonnegative integer combination of words of one common length.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LetterCombo {
    terms: BTreeMap<LetterWord, BigUint>,
}

impl LetterCombo {
    pub fn new() -> Self {
        LetterCombo { terms: BTreeMap::new() }
    }

    pub fn single(word: LetterWord) -> Self {
        let mut c = LetterCombo::new();
        c.terms.insert(word, BigUint::one());
        c
    }

    /// The monomial `x^k`.
    pub fn x_power(k: usize) -> Self {
        LetterCombo::single(vec![Letter::X; k])
    }

    pub fn add_term(&mut self, word: LetterWord, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(BigUint::zero);
        *entry += coeff;
    }

    pub fn terms(&self) -> &BTreeMap<LetterWord, BigUint> {
        &self.terms
    }

    pub fn coeff(&self, word: &[Letter]) -> BigUint {
        self.terms.get(word).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn word_len(&self) -> Option<usize> {
        self.terms.keys().next().map(Vec::len)
    }
}

/// Images of the two pairs the table leaves open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRules {
    pub xz_image: Vec<Letter>,
    pub zx_image: Vec<Letter>,
}

impl Default for RewriteRules {
    fn default() -> Self {
        // grouped with the other mixed pairs
        RewriteRules { xz_image: vec![Letter::Z], zx_image: vec![Letter::Z] }
    }
}

/// Result of one rewriting pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub combo: LetterCombo,
    /// Whether an `xz` or `zx` pair was consulted.
    pub ambiguous_consulted: bool,
}

fn pair_image<'a>(a: Letter, b: Letter, rules: &'a RewriteRules) -> (&'a [Letter], bool) {
    use Letter::*;
    const YZ: &[Letter] = &[Letter::Y, Letter::Z];
    const ZO: &[Letter] = &[Letter::Z];
    const XO: &[Letter] = &[Letter::X];
    const NONE: &[Letter] = &[];
    match (a, b) {
        (X, X) => (YZ, false),
        (Y, Y) => (NONE, false),
        (Z, Z) => (XO, false),
        (X, Y) | (Y, X) | (Y, Z) | (Z, Y) => (ZO, false),
        (X, Z) => (&rules.xz_image, true),
        (Z, X) => (&rules.zx_image, true),
    }
}

/// One rewriting pass with the default rules.
pub fn rewrite_step(c: &LetterCombo) -> Result<LetterCombo> {
    Ok(rewrite_step_with(c, &RewriteRules::default())?.combo)
}

/// Replace each word `w1 w2 ... w2m` by the expanded product
/// `r(w1 w2) r(w3 w4) ... r(w2m-1 w2m)`, extended linearly.
pub fn rewrite_step_with(c: &LetterCombo, rules: &RewriteRules) -> Result<RewriteStep> {
    let mut out = LetterCombo::new();
    let mut consulted = false;
    for (word, coeff) in c.terms() {
        if word.len() < 2 || word.len() % 2 != 0 {
            return Err(Error::Precondition(format!(
                "rewriting needs even word length >= 2, got {}",
                word.len()
            )));
        }
        // expand the product of pair images
        let mut partial: Vec<LetterWord> = vec![Vec::with_capacity(word.len() / 2)];
        let mut dead = false;
        for pair in word.chunks(2) {
            let (image, ambiguous) = pair_image(pair[0], pair[1], rules);
            consulted |= ambiguous;
            if image.is_empty() {
                dead = true;
                break;
            }
            let mut next = Vec::with_capacity(partial.len() * image.len());
            for p in &partial {
                for &l in image {
                    let mut q = p.clone();
                    q.push(l);
                    next.push(q);
                }
            }
            partial = next;
        }
        if dead {
            continue;
        }
        for p in partial {
            out.add_term(p, coeff.clone());
        }
    }
    Ok(RewriteStep { combo: out, ambiguous_consulted: consulted })
}

/// The six coefficients (a, b, c, p, q, r) of a length-two combination:
/// the coefficients of `xx`, `yy`, `zz`, `xy`, `xz`, `yz`, after checking
/// each mirror pair carries equal coefficients.
pub fn coeff_vector(c: &LetterCombo) -> Result<[BigUint; 6]> {
    use Letter::*;
    if let Some(len) = c.word_len() {
        if len != 2 {
            return Err(Error::Precondition(format!("expected words of length 2, got {len}")));
        }
    }
    for (a, b) in [(X, Y), (X, Z), (Y, Z)] {
        let fwd = c.coeff(&[a, b]);
        let bwd = c.coeff(&[b, a]);
        if fwd != bwd {
            return Err(Error::SymmetryViolation(format!(
                "{}{} carries {fwd} but {}{} carries {bwd}",
                a.as_char(),
                b.as_char(),
                b.as_char(),
                a.as_char()
            )));
        }
    }
    Ok([
        c.coeff(&[X, X]),
        c.coeff(&[Y, Y]),
        c.coeff(&[Z, Z]),
        c.coeff(&[X, Y]),
        c.coeff(&[X, Z]),
        c.coeff(&[Y, Z]),
    ])
}

/// State of the six-coefficient recurrence at index `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceState {
    pub n: usize,
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
    pub p: BigUint,
    pub q: BigUint,
    pub r: BigUint,
}

impl RecurrenceState {
    /// Initial state: a1 = p1 = q1 = 0, b1 = c1 = r1 = 1.
    pub fn initial() -> Self {
        RecurrenceState {
            n: 1,
            a: BigUint::zero(),
            b: BigUint::one(),
            c: BigUint::one(),
            p: BigUint::zero(),
            q: BigUint::zero(),
            r: BigUint::one(),
        }
    }

    pub fn as_array(&self) -> [BigUint; 6] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.p.clone(),
            self.q.clone(),
            self.r.clone(),
        ]
    }

    /// The homology dimension `a + c + 2p + 2r` at this index.
    pub fn dimension(&self) -> BigUint {
        let two = BigUint::from(2u32);
        &self.a + &self.c + &two * &self.p + &two * &self.r
    }
}

/// One application of the update formulas.
pub fn recurrence_step(s: &RecurrenceState) -> RecurrenceState {
    let two = BigUint::from(2u32);
    let a2q = &s.a + &two * &s.q; // a + 2q
    let apr = &s.a + &two * &s.p + &two * &s.r; // a + 2p + 2r
    RecurrenceState {
        n: s.n + 1,
        a: &s.c * &s.c,
        b: &a2q * &a2q,
        c: &apr * &apr,
        p: &s.c * (&s.a + &s.q),
        q: &s.c * &apr,
        r: &a2q * &apr,
    }
}

/// State at index `n`, iterated from the initial conditions.
pub fn recurrence_state_at(n: usize) -> RecurrenceState {
    assert!(n >= 1, "index starts at 1");
    let mut s = RecurrenceState::initial();
    while s.n < n {
        s = recurrence_step(&s);
    }
    s
}

/// The homology dimension at index `n`.
pub fn recurrence_dims(n: usize) -> BigUint {
    recurrence_state_at(n).dimension()
}

/// Apply `n` rewriting passes to `x^(2^(n+1))` and read off the six
/// coefficients, reporting whether the open table entries were consulted.
pub fn rewrite_state_at(n: usize, rules: &RewriteRules) -> Result<([BigUint; 6], bool)> {
    assert!(n >= 1, "index starts at 1");
    let mut combo = LetterCombo::x_power(1 << (n + 1));
    let mut consulted = false;
    for _ in 0..n {
        let step = rewrite_step_with(&combo, rules)?;
        consulted |= step.ambiguous_consulted;
        combo = step.combo;
    }
    Ok((coeff_vector(&combo)?, consulted))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(v: [u64; 6]) -> [BigUint; 6] {
        v.map(BigUint::from)
    }

    #[test]
    fn rewrite_examples() {
        use Letter::*;
        let x4 = LetterCombo::x_power(4);
        let out = rewrite_step(&x4).unwrap();
        assert_eq!(out.coeff(&[Y, Y]), BigUint::one());
        assert_eq!(out.coeff(&[Y, Z]), BigUint::one());
        assert_eq!(out.coeff(&[Z, Y]), BigUint::one());
        assert_eq!(out.coeff(&[Z, Z]), BigUint::one());
        assert_eq!(out.terms().len(), 4);

        let y4 = LetterCombo::single(vec![Y, Y, Y, Y]);
        assert!(rewrite_step(&y4).unwrap().is_empty());

        let z4 = LetterCombo::single(vec![Z, Z, Z, Z]);
        let out = rewrite_step(&z4).unwrap();
        assert_eq!(out.coeff(&[X, X]), BigUint::one());
        assert_eq!(out.terms().len(), 1);

        let odd = LetterCombo::single(vec![X, X, X]);
        assert!(rewrite_step(&odd).is_err());
    }

    #[test]
    fn coeff_vector_examples() {
        let out = rewrite_step(&LetterCombo::x_power(4)).unwrap();
        assert_eq!(coeff_vector(&out).unwrap(), nums([0, 1, 1, 0, 0, 1]));

        let xx = LetterCombo::x_power(2);
        assert_eq!(coeff_vector(&xx).unwrap(), nums([1, 0, 0, 0, 0, 0]));

        // two passes over x^8
        let mut c = LetterCombo::x_power(8);
        c = rewrite_step(&c).unwrap();
        c = rewrite_step(&c).unwrap();
        assert_eq!(coeff_vector(&c).unwrap(), nums([1, 0, 4, 0, 2, 0]));
    }

    #[test]
    fn symmetry_violation_detected() {
        use Letter::*;
        let mut c = LetterCombo::new();
        c.add_term(vec![X, Y], BigUint::from(2u32));
        c.add_term(vec![Y, X], BigUint::from(1u32));
        assert!(matches!(coeff_vector(&c), Err(Error::SymmetryViolation(_))));
    }

    #[test]
    fn recurrence_chain() {
        let s1 = RecurrenceState::initial();
        assert_eq!(s1.as_array(), nums([0, 1, 1, 0, 0, 1]));
        let s2 = recurrence_step(&s1);
        assert_eq!(s2.as_array(), nums([1, 0, 4, 0, 2, 0]));
        let s3 = recurrence_step(&s2);
        assert_eq!(s3.as_array(), nums([16, 25, 1, 12, 4, 5]));

        // homogeneous: the zero state is fixed
        let zero = RecurrenceState {
            n: 1,
            a: BigUint::zero(),
            b: BigUint::zero(),
            c: BigUint::zero(),
            p: BigUint::zero(),
            q: BigUint::zero(),
            r: BigUint::zero(),
        };
        let z2 = recurrence_step(&zero);
        assert_eq!(z2.as_array(), nums([0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn dimension_values() {
        assert_eq!(recurrence_dims(1), BigUint::from(3u32));
        assert_eq!(recurrence_dims(2), BigUint::from(5u32));
        assert_eq!(recurrence_dims(3), BigUint::from(51u32));
    }

    #[test]
    fn dims_nondecreasing() {
        let mut prev = recurrence_dims(2);
        for n in 3..=12 {
            let d = recurrence_dims(n);
            assert!(d >= prev, "dimension dropped at n = {n}");
            prev = d;
        }
    }

    #[test]
    fn rewrite_recurrence_crosscheck_small() {
        // the open table entries are untouched for the first two indices,
        // where the rewrite and the recurrence agree exactly
        for n in 1..=2 {
            let (vec, consulted) = rewrite_state_at(n, &RewriteRules::default()).unwrap();
            assert!(!consulted, "n = {n} consulted the open entries");
            assert_eq!(vec, recurrence_state_at(n).as_array(), "n = {n}");
        }
    }

    #[test]
    fn rewrite_consults_open_entries_from_three() {
        // from the third index on, mixed xz / zx pairs appear with nonzero
        // coefficients and the two routes diverge under every fixed image
        let (vec_z, consulted) = rewrite_state_at(3, &RewriteRules::default()).unwrap();
        assert!(consulted);
        assert_eq!(vec_z, nums([16, 1, 25, 4, 20, 5]));
        assert_ne!(vec_z, recurrence_state_at(3).as_array());

        let y_rules = RewriteRules { xz_image: vec![Letter::Y], zx_image: vec![Letter::Y] };
        let (vec_y, consulted) = rewrite_state_at(3, &y_rules).unwrap();
        assert!(consulted);
        // with xz, zx -> y five of the six components match the recurrence
        assert_eq!(vec_y, nums([16, 25, 1, 20, 4, 5]));
        assert_ne!(vec_y, recurrence_state_at(3).as_array());
    }
}
