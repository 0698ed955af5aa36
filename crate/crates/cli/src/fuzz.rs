//! Randomized invariant checking with greedy counterexample minimization.
//!
//! Every violation is shrunk by deleting letters, relations, or edges
//! while it persists, then written out as an ordinary problem file that
//! replays through the matching command.

use std::fmt::Write as _;

use barhom::bar::{predict_homology, Prediction};
use barhom::error::Error;
use barhom::field::FieldSpec;
use barhom::graph::{eliminate, find_clique_vertex, RelationGraph};
use barhom::series::scan_inverse;
use barhom::system::SetSystem;
use barhom::word::{Alphabet, RelationSet, Word};

/// SplitMix64; deterministic for a fixed seed across builds.
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
        (self.next() % n.max(1) as u64) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    AlgebraDichotomy,
    DyckPosition,
    SeriesPm1,
    OrderDichotomy,
    GraphRules,
}

impl Scenario {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "algebra-dichotomy" => Some(Scenario::AlgebraDichotomy),
            "dyck-position" => Some(Scenario::DyckPosition),
            "series-pm1" => Some(Scenario::SeriesPm1),
            "order-dichotomy" => Some(Scenario::OrderDichotomy),
            "graph-rules" => Some(Scenario::GraphRules),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Scenario::AlgebraDichotomy => "algebra-dichotomy",
            Scenario::DyckPosition => "dyck-position",
            Scenario::SeriesPm1 => "series-pm1",
            Scenario::OrderDichotomy => "order-dichotomy",
            Scenario::GraphRules => "graph-rules",
        }
    }
}

pub struct Finding {
    pub description: String,
    pub problem_file: String,
}

pub struct Report {
    pub trials: usize,
    pub skipped: usize,
    pub findings: Vec<Finding>,
}

pub fn run(scenario: Scenario, seed: u64, trials: usize, field: FieldSpec, limit: usize) -> Report {
    let mut report = Report { trials, skipped: 0, findings: Vec::new() };
    for trial in 0..trials {
        let mut rng = Rng(seed ^ (trial as u64).wrapping_mul(0x2545f4914f6cdd1d));
        let outcome = match scenario {
            Scenario::AlgebraDichotomy | Scenario::DyckPosition => {
                word_trial(scenario, &mut rng, field, limit)
            }
            Scenario::SeriesPm1 => series_trial(&mut rng, limit),
            Scenario::OrderDichotomy => order_trial(&mut rng, field, limit),
            Scenario::GraphRules => graph_trial(&mut rng, field, limit),
        };
        match outcome {
            Ok(None) => {}
            Ok(Some(finding)) => report.findings.push(finding),
            Err(Error::Capacity { .. }) => report.skipped += 1,
            Err(e) => report.findings.push(Finding {
                description: format!("trial {trial}: unexpected error {e}"),
                problem_file: String::new(),
            }),
        }
    }
    report.findings.sort_by(|a, b| a.description.cmp(&b.description));
    report
}

fn random_word(rng: &mut Rng, k: usize, max_len: usize) -> Word {
    let n = 1 + rng.below(max_len);
    Word::new((0..n).map(|_| rng.below(k) as u8).collect())
}

fn random_relation_words(rng: &mut Rng, k: usize, max_rels: usize, max_len: usize) -> Vec<Word> {
    let m = rng.below(max_rels + 1);
    (0..m)
        .map(|_| {
            let len = 2 + rng.below(max_len - 1);
            Word::new((0..len).map(|_| rng.below(k) as u8).collect())
        })
        .collect()
}

/// What a word-scenario violation looks like, if any.
fn word_violation(
    scenario: Scenario,
    w: &Word,
    rel_words: &[Word],
    field: FieldSpec,
    limit: usize,
) -> Result<Option<String>, Error> {
    let rels = RelationSet::new(rel_words.to_vec())?;
    let c = barhom::bar::bar_subcomplex_bounded(w, &rels, None, limit)?;
    let h = barhom::complex::homology_dims_bounded(&c, field, limit)?;
    match scenario {
        Scenario::AlgebraDichotomy => {
            if h.total > 1 {
                return Ok(Some(format!("total homology {}", h.total)));
            }
            if (h.total == 0) != (c.total_dim() % 2 == 0) {
                return Ok(Some(format!(
                    "parity: total {} with basis dimension {}",
                    h.total,
                    c.total_dim()
                )));
            }
        }
        Scenario::DyckPosition => match predict_homology(w, &rels) {
            Prediction::Exact => {
                if h.total != 0 {
                    return Ok(Some(format!("predicted exact, homology {:?}", h.dims)));
                }
            }
            Prediction::OneDim { bar_degree, .. } => {
                if h.total != 1 {
                    return Ok(Some(format!("predicted one-dimensional, homology {:?}", h.dims)));
                }
                let g = h.dims.iter().position(|&d| d > 0).unwrap();
                if w.len() - g != bar_degree {
                    return Ok(Some(format!(
                        "predicted tensor index {bar_degree}, homology at {}",
                        w.len() - g
                    )));
                }
            }
        },
        _ => unreachable!(),
    }
    Ok(None)
}

fn word_trial(
    scenario: Scenario,
    rng: &mut Rng,
    field: FieldSpec,
    limit: usize,
) -> Result<Option<Finding>, Error> {
    let k = 1 + rng.below(3);
    let mut w = random_word(rng, k, 12);
    let mut rel_words = random_relation_words(rng, k, 3, 4);
    let Some(mut why) = word_violation(scenario, &w, &rel_words, field, limit)? else {
        return Ok(None);
    };
    // greedy shrink: drop relations, then letters, until stable
    loop {
        let mut changed = false;
        for i in (0..rel_words.len()).rev() {
            let mut cand = rel_words.clone();
            cand.remove(i);
            if let Some(v) = word_violation(scenario, &w, &cand, field, limit)? {
                rel_words = cand;
                why = v;
                changed = true;
            }
        }
        for i in (0..w.len()).rev() {
            if w.len() <= 1 {
                break;
            }
            let mut letters = w.letters().to_vec();
            letters.remove(i);
            let cand = Word::new(letters);
            if let Some(v) = word_violation(scenario, &cand, &rel_words, field, limit)? {
                w = cand;
                why = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let alphabet = Alphabet::of_size(k).unwrap();
    let mut file = String::new();
    let _ = writeln!(file, "# {}: {}", scenario.as_str(), why);
    let tokens: Vec<String> = (0..k).map(|i| alphabet.token(i as u8).to_string()).collect();
    let _ = writeln!(file, "alphabet {}", tokens.join(" "));
    for r in &rel_words {
        let toks: Vec<&str> = r.letters().iter().map(|&l| alphabet.token(l)).collect();
        let _ = writeln!(file, "relation {}", toks.join(" "));
    }
    let toks: Vec<&str> = w.letters().iter().map(|&l| alphabet.token(l)).collect();
    let _ = writeln!(file, "word {}", toks.join(" "));
    Ok(Some(Finding { description: why, problem_file: file }))
}

fn series_trial(rng: &mut Rng, limit: usize) -> Result<Option<Finding>, Error> {
    let k = 1 + rng.below(3);
    let rel_words = random_relation_words(rng, k, 3, 4);
    let rels = RelationSet::new(rel_words.clone())?;
    let a = Alphabet::of_size(k).unwrap();
    let n = 12usize;
    let mut bad: Option<String> = None;
    scan_inverse(&a, &rels, n, limit, |w, coeff, alt| {
        if bad.is_none() {
            if coeff.abs() > 1 {
                bad = Some(format!("coefficient {coeff} at {w:?}"));
            } else if coeff != alt {
                bad = Some(format!("coefficient {coeff} against bar sum {alt} at {w:?}"));
            }
        }
    })?;
    let Some(why) = bad else { return Ok(None) };
    let mut file = String::new();
    let _ = writeln!(file, "# series-pm1: {}", why);
    let tokens: Vec<String> = (0..k).map(|i| a.token(i as u8).to_string()).collect();
    let _ = writeln!(file, "alphabet {}", tokens.join(" "));
    for r in &rel_words {
        let toks: Vec<&str> = r.letters().iter().map(|&l| a.token(l)).collect();
        let _ = writeln!(file, "relation {}", toks.join(" "));
    }
    Ok(Some(Finding { description: why, problem_file: file }))
}

fn order_violation(s: &SetSystem, field: FieldSpec, limit: usize) -> Result<Option<String>, Error> {
    if let Some(cert) = barhom::order::is_order_bounded(s, limit)? {
        cert.replay(s)?;
        let h = barhom::system::system_homology_bounded(s, field, limit)?;
        if h.total > 1 {
            return Ok(Some(format!("order with homology {}", h.total)));
        }
    }
    Ok(None)
}

fn order_trial(rng: &mut Rng, field: FieldSpec, limit: usize) -> Result<Option<Finding>, Error> {
    let ground = 1 + rng.below(6);
    let m = 1 + rng.below(4);
    let mut rels: Vec<u64> = (0..m).map(|_| 1 + rng.below((1 << ground) - 1) as u64).collect();
    let mut sys = SetSystem::new(ground, rels.clone())?;
    let Some(mut why) = order_violation(&sys, field, limit)? else {
        return Ok(None);
    };
    loop {
        let mut changed = false;
        for i in (0..rels.len()).rev() {
            let mut cand = rels.clone();
            cand.remove(i);
            let cand_sys = SetSystem::new(ground, cand.clone())?;
            if let Some(v) = order_violation(&cand_sys, field, limit)? {
                rels = cand;
                sys = cand_sys;
                why = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Some(Finding { description: why.clone(), problem_file: render_system(&sys, &why) }))
}

fn graph_violation(g: &RelationGraph, field: FieldSpec, limit: usize) -> Result<Option<String>, Error> {
    let (h, _) = barhom::graph::reduce_homology_bounded(g, field, limit)?;
    let oracle = barhom::system::system_homology_bounded(&g.to_system()?, field, limit)?;
    if h.normalized_dims() != oracle.normalized_dims() {
        return Ok(Some(format!(
            "reduction {:?} against oracle {:?}",
            h.dims, oracle.dims
        )));
    }
    if let Some((x, _)) = find_clique_vertex(g) {
        let parts = eliminate(g, x)?;
        let mut shifted = barhom::complex::HomologyProfile::zero();
        for part in &parts {
            let hp = barhom::system::system_homology_bounded(&part.to_system()?, field, limit)?;
            shifted = shifted.add(&hp.shifted());
        }
        if shifted.normalized_dims() != oracle.normalized_dims() {
            return Ok(Some(format!(
                "elimination at {} gives {:?} against {:?}",
                x + 1,
                shifted.dims,
                oracle.dims
            )));
        }
    }
    Ok(None)
}

fn graph_trial(rng: &mut Rng, field: FieldSpec, limit: usize) -> Result<Option<Finding>, Error> {
    let n = 1 + rng.below(12);
    let max_edges = n * (n - 1) / 2;
    let m = rng.below(max_edges + 1);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for _ in 0..m {
        let u = rng.below(n);
        let v = rng.below(n);
        if u != v {
            edges.push((u as u32, v as u32));
        }
    }
    let mut g = RelationGraph::new(n, edges.clone())?;
    let Some(mut why) = graph_violation(&g, field, limit)? else {
        return Ok(None);
    };
    loop {
        let mut changed = false;
        let current = g.edges().to_vec();
        for i in (0..current.len()).rev() {
            let mut cand = current.clone();
            cand.remove(i);
            let cand_g = RelationGraph::new(n, cand)?;
            if let Some(v) = graph_violation(&cand_g, field, limit)? {
                g = cand_g;
                why = v;
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
    }
    let sys = g.to_system()?;
    Ok(Some(Finding { description: why.clone(), problem_file: render_system(&sys, &why) }))
}

fn render_system(s: &SetSystem, why: &str) -> String {
    let mut file = String::new();
    let _ = writeln!(file, "# {}", why);
    let _ = writeln!(file, "ground {}", s.ground());
    for pts in s.relation_points() {
        let toks: Vec<String> = pts.iter().map(usize::to_string).collect();
        let _ = writeln!(file, "rel {}", toks.join(" "));
    }
    file
}
