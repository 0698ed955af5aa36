//! Relation graphs of quadratic set systems and homology-preserving
//! reductions.
//!
//! An isolated vertex kills the homology; connected components multiply by
//! the Künneth rule; a vertex whose neighborhood is a clique splits the
//! homology into a degree-shifted sum over neighborhood deletions. When no
//! rule applies the exact rank oracle takes over.

use crate::complex::HomologyProfile;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::system::{render_mask, system_homology_bounded, SetSystem};
use crate::DEFAULT_WORK_LIMIT;

/// A simple undirected graph on vertices `0..n` (n <= 64).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<u64>,
}

impl RelationGraph {
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n > 64 {
            return Err(Error::Capacity { needed: n, limit: 64 });
        }
        let mut norm: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Precondition(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![0u64; n];
        for &(u, v) in &norm {
            adj[u as usize] |= 1 << v;
            adj[v as usize] |= 1 << u;
        }
        Ok(RelationGraph { n, edges: norm, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adj[v] & (1 << u) != 0).collect()
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.adj[v] == 0)
    }

    /// Vertex sets of connected components, each sorted, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = vec![start];
            seen[start] = true;
            while let Some(v) = queue.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `keep` (sorted vertex list), relabeled compactly.
    pub fn induced(&self, keep: &[usize]) -> RelationGraph {
        let index: std::collections::HashMap<usize, u32> =
            keep.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| {
                match (index.get(&(u as usize)), index.get(&(v as usize))) {
                    (Some(&a), Some(&b)) => Some((a, b)),
                    _ => None,
                }
            })
            .collect();
        RelationGraph::new(keep.len(), edges).expect("induced subgraph is valid")
    }

    /// The set system whose relations are the edges.
    pub fn to_system(&self) -> Result<SetSystem> {
        let rels: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|&(u, v)| vec![u as usize + 1, v as usize + 1])
            .collect();
        SetSystem::from_point_sets(self.n, &rels)
    }
}

/// Build the relation graph of a quadratic system.
///
/// Singleton relations name zero variables: they vanish from every basis
/// element and every differential, so the variable is deleted first. Any
/// remaining relation must have exactly two points.
pub fn graph_from_system(s: &SetSystem) -> Result<RelationGraph> {
    let zero_vars: u64 = s
        .relations()
        .iter()
        .filter(|&&r| r.count_ones() == 1)
        .fold(0, |a, &r| a | r);
    let keep: Vec<usize> = (1..=s.ground())
        .filter(|&p| zero_vars & (1 << (p - 1)) == 0)
        .collect();
    let index: std::collections::HashMap<usize, u32> =
        keep.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let mut edges = Vec::new();
    for &r in s.relations() {
        match r.count_ones() {
            1 => {}
            2 => {
                let pts = crate::system::mask_points(r);
                edges.push((index[&pts[0]], index[&pts[1]]));
            }
            _ => return Err(Error::NotQuadratic(render_mask(r))),
        }
    }
    RelationGraph::new(keep.len(), edges)
}

/// How a graph's homology was computed.
#[derive(Debug, Clone)]
pub enum ReductionTrace {
    /// No vertices: the scalar complex.
    Empty { profile: HomologyProfile },
    /// An isolated vertex makes the homology vanish.
    Isolated { vertex: usize, profile: HomologyProfile },
    /// Künneth over connected components.
    Components { parts: Vec<(RelationGraph, ReductionTrace)>, profile: HomologyProfile },
    /// Clique-neighborhood elimination at `vertex`: a degree-shifted sum
    /// over the deletion subgraphs, one per neighbor.
    Eliminate {
        vertex: usize,
        neighbors: Vec<usize>,
        parts: Vec<(RelationGraph, ReductionTrace)>,
        profile: HomologyProfile,
    },
    /// Exact rank computation on the edge system.
    Oracle { profile: HomologyProfile },
}

impl ReductionTrace {
    pub fn profile(&self) -> &HomologyProfile {
        match self {
            ReductionTrace::Empty { profile }
            | ReductionTrace::Isolated { profile, .. }
            | ReductionTrace::Components { profile, .. }
            | ReductionTrace::Eliminate { profile, .. }
            | ReductionTrace::Oracle { profile } => profile,
        }
    }

    /// Indented human-readable rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        match self {
            ReductionTrace::Empty { profile } => {
                out.push_str(&format!("{pad}empty total={}\n", profile.total));
            }
            ReductionTrace::Isolated { vertex, .. } => {
                out.push_str(&format!("{pad}isolated vertex={} total=0\n", vertex + 1));
            }
            ReductionTrace::Components { parts, profile } => {
                out.push_str(&format!(
                    "{pad}components n={} total={}\n",
                    parts.len(),
                    profile.total
                ));
                for (_, t) in parts {
                    t.render_into(out, depth + 1);
                }
            }
            ReductionTrace::Eliminate { vertex, neighbors, parts, profile } => {
                let ns: Vec<String> = neighbors.iter().map(|v| (v + 1).to_string()).collect();
                out.push_str(&format!(
                    "{pad}eliminate vertex={} neighbors={{{}}} total={}\n",
                    vertex + 1,
                    ns.join(","),
                    profile.total
                ));
                for (_, t) in parts {
                    t.render_into(out, depth + 1);
                }
            }
            ReductionTrace::Oracle { profile } => {
                out.push_str(&format!("{pad}oracle total={}\n", profile.total));
            }
        }
    }
}

/// Some vertex of degree >= 1 whose neighborhood induces a clique,
/// smallest degree first, then smallest index.
pub fn find_clique_vertex(g: &RelationGraph) -> Option<(usize, Vec<usize>)> {
    let mut best: Option<(usize, usize)> = None;
    for v in 0..g.vertex_count() {
        let deg = g.degree(v);
        if deg == 0 {
            continue;
        }
        let nbrs = g.adj[v];
        let mut is_clique = true;
        let mut rest = nbrs;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if nbrs & !g.adj[a] & !(1 << a) != 0 {
                is_clique = false;
                break;
            }
        }
        if is_clique {
            match best {
                Some((d, _)) if d <= deg => {}
                _ => best = Some((deg, v)),
            }
        }
    }
    best.map(|(_, v)| (v, g.neighbors(v)))
}

/// Delete `a_i` together with its whole neighborhood, once per neighbor
/// `a_i` of `x`. The homology of `g` is the degree-shifted sum of the
/// homologies of the returned graphs.
pub fn eliminate(g: &RelationGraph, x: usize) -> Result<Vec<RelationGraph>> {
    if x >= g.vertex_count() || g.degree(x) == 0 {
        return Err(Error::Precondition(format!("vertex {x} has no neighbors")));
    }
    let nbrs = g.adj[x];
    let mut rest = nbrs;
    while rest != 0 {
        let a = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if nbrs & !g.adj[a] & !(1 << a) != 0 {
            return Err(Error::Precondition(format!(
                "neighborhood of {x} is not a clique (vertex {a})"
            )));
        }
    }
    let mut parts = Vec::new();
    for a in g.neighbors(x) {
        let drop = g.adj[a] | (1 << a);
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| drop & (1 << v) == 0).collect();
        parts.push(g.induced(&keep));
    }
    Ok(parts)
}

/// Reduce a graph to its homology profile, recording the rules used.
pub fn reduce_homology(g: &RelationGraph, field: FieldSpec) -> Result<(HomologyProfile, ReductionTrace)> {
    reduce_homology_bounded(g, field, DEFAULT_WORK_LIMIT)
}

pub fn reduce_homology_bounded(
    g: &RelationGraph,
    field: FieldSpec,
    limit: usize,
) -> Result<(HomologyProfile, ReductionTrace)> {
    if g.vertex_count() == 0 {
        let profile = HomologyProfile::from_dims(vec![1]);
        return Ok((profile.clone(), ReductionTrace::Empty { profile }));
    }
    if let Some(v) = g.isolated_vertex() {
        let profile = HomologyProfile::zero();
        return Ok((profile.clone(), ReductionTrace::Isolated { vertex: v, profile }));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut parts = Vec::with_capacity(comps.len());
        let mut profile = HomologyProfile::from_dims(vec![1]);
        for comp in comps {
            let sub = g.induced(&comp);
            let (p, t) = reduce_homology_bounded(&sub, field, limit)?;
            profile = profile.convolve(&p);
            parts.push((sub, t));
        }
        return Ok((profile.clone(), ReductionTrace::Components { parts, profile }));
    }
    if let Some((x, nbrs)) = find_clique_vertex(g) {
        let subs = eliminate(g, x)?;
        let mut parts = Vec::with_capacity(subs.len());
        let mut profile = HomologyProfile::zero();
        for sub in subs {
            let (p, t) = reduce_homology_bounded(&sub, field, limit)?;
            profile = profile.add(&p.shifted());
            parts.push((sub, t));
        }
        return Ok((
            profile.clone(),
            ReductionTrace::Eliminate { vertex: x, neighbors: nbrs, parts, profile },
        ));
    }
    let profile = system_homology_bounded(&g.to_system()?, field, limit)?;
    Ok((profile.clone(), ReductionTrace::Oracle { profile }))
}

/// Künneth over connected components, each reduced recursively.
pub fn components_homology(g: &RelationGraph, field: FieldSpec) -> Result<HomologyProfile> {
    if g.vertex_count() == 0 {
        return Ok(HomologyProfile::from_dims(vec![1]));
    }
    let mut profile = HomologyProfile::from_dims(vec![1]);
    for comp in g.components() {
        let sub = g.induced(&comp);
        let (p, _) = reduce_homology(&sub, field)?;
        profile = profile.convolve(&p);
    }
    Ok(profile)
}

/// Truncation conventions for the binary-tree relation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeFamily {
    /// All adjacent pairs of internal edges.
    LineGraph,
    /// Sibling-edge pairs only.
    CherriesOnly,
    /// Adjacent pairs plus singletons at the deepest edges.
    DeepSingletons,
}

impl TreeFamily {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "line" => Some(TreeFamily::LineGraph),
            "cherries" => Some(TreeFamily::CherriesOnly),
            "singletons" => Some(TreeFamily::DeepSingletons),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TreeFamily::LineGraph => "line",
            TreeFamily::CherriesOnly => "cherries",
            TreeFamily::DeepSingletons => "singletons",
        }
    }
}

/// Set system of the full binary tree with internal vertices at depths
/// `0..n`, on its internal edges.
///
/// Internal vertices are heap-indexed (`1` is the root, children of `v`
/// are `2v` and `2v+1`); the internal edge ending at vertex `v >= 2` is
/// ground point `v - 1`.
pub fn binary_tree_family(n: usize, family: TreeFamily) -> Result<SetSystem> {
    if n == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    if n > 6 {
        return Err(Error::Capacity { needed: (1 << n) - 2, limit: 64 });
    }
    let vertices = (1usize << n) - 1; // internal vertices 1..=vertices
    let edge_point = |child: usize| child - 1; // ground point of edge (child -> parent)
    let mut rels: Vec<Vec<usize>> = Vec::new();

    let adjacent_pairs = |rels: &mut Vec<Vec<usize>>| {
        for v in 1..=vertices {
            // internal edges incident to v: the edge above (v >= 2) and
            // the edges to internal children
            let mut inc = Vec::new();
            if v >= 2 {
                inc.push(edge_point(v));
            }
            for c in [2 * v, 2 * v + 1] {
                if c <= vertices {
                    inc.push(edge_point(c));
                }
            }
            for i in 0..inc.len() {
                for j in i + 1..inc.len() {
                    rels.push(vec![inc[i], inc[j]]);
                }
            }
        }
    };

    match family {
        TreeFamily::LineGraph => adjacent_pairs(&mut rels),
        TreeFamily::CherriesOnly => {
            for v in 1..=vertices {
                if 2 * v + 1 <= vertices {
                    rels.push(vec![edge_point(2 * v), edge_point(2 * v + 1)]);
                }
            }
        }
        TreeFamily::DeepSingletons => {
            adjacent_pairs(&mut rels);
            // deepest edges end at vertices of depth n - 1
            let first_deep = 1usize << (n - 1);
            for v in first_deep..=vertices {
                if v >= 2 {
                    rels.push(vec![edge_point(v)]);
                }
            }
        }
    }
    SetSystem::from_point_sets(vertices - 1, &rels)
}
