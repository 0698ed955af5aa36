//! Rooted trees of operations and their conversion to set systems.
//!
//! A tree-monomial is given by its internal vertices only: each carries an
//! arity and a parent link, and unlisted children are leaves. The bar data
//! of such a tree lives on its internal edges (edges joining two internal
//! vertices); a relation is a connected subtree of internal vertices and
//! maps to its internal-edge set.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::system::SetSystem;

/// A rooted tree of operations, listed by internal vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    ids: Vec<u32>,
    arity: HashMap<u32, usize>,
    parent: HashMap<u32, Option<u32>>,
}

impl RootedTree {
    /// `nodes` lists `(id, arity, parent)`; exactly one node has no parent.
    pub fn new(nodes: Vec<(u32, usize, Option<u32>)>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Precondition("tree needs at least one vertex".into()));
        }
        let mut ids = Vec::with_capacity(nodes.len());
        let mut arity = HashMap::new();
        let mut parent = HashMap::new();
        for (id, k, p) in &nodes {
            if arity.insert(*id, *k).is_some() {
                return Err(Error::Precondition(format!("duplicate vertex {id}")));
            }
            parent.insert(*id, *p);
            ids.push(*id);
        }
        let roots: Vec<u32> = ids.iter().copied().filter(|i| parent[i].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::Precondition(format!("expected one root, found {}", roots.len())));
        }
        let mut child_count: HashMap<u32, usize> = HashMap::new();
        for id in &ids {
            if let Some(p) = parent[id] {
                if !arity.contains_key(&p) {
                    return Err(Error::Precondition(format!("vertex {id} has unknown parent {p}")));
                }
                *child_count.entry(p).or_insert(0) += 1;
            }
        }
        for id in &ids {
            let c = child_count.get(id).copied().unwrap_or(0);
            if c > arity[id] {
                return Err(Error::Precondition(format!(
                    "vertex {id} has {c} internal children but arity {}",
                    arity[id]
                )));
            }
        }
        let tree = RootedTree { ids, arity, parent };
        if tree.has_cycle() {
            return Err(Error::Precondition("parent links form a cycle".into()));
        }
        Ok(tree)
    }

    fn has_cycle(&self) -> bool {
        for &start in &self.ids {
            let mut seen = 0usize;
            let mut cur = start;
            while let Some(p) = self.parent[&cur] {
                cur = p;
                seen += 1;
                if seen > self.ids.len() {
                    return true;
                }
            }
        }
        false
    }

    pub fn vertices(&self) -> &[u32] {
        &self.ids
    }

    pub fn arity_of(&self, id: u32) -> Option<usize> {
        self.arity.get(&id).copied()
    }

    pub fn parent_of(&self, id: u32) -> Option<u32> {
        self.parent.get(&id).copied().flatten()
    }

    /// Internal edges `(child, parent)`, sorted by child id. The edge index
    /// in this list (plus one) is the ground point it becomes.
    pub fn internal_edges(&self) -> Vec<(u32, u32)> {
        let mut edges: Vec<(u32, u32)> = self
            .ids
            .iter()
            .filter_map(|&v| self.parent[&v].map(|p| (v, p)))
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// Convert a tree with relation subtrees into a set system on its internal
/// edges. Each relation is the set of internal vertices of a connected
/// subtree with at least two of them.
pub fn tree_to_system(tree: &RootedTree, relations: &[Vec<u32>]) -> Result<SetSystem> {
    let edges = tree.internal_edges();
    let edge_index: HashMap<(u32, u32), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut masks = Vec::with_capacity(relations.len());
    for rel in relations {
        let mut verts = rel.clone();
        verts.sort_unstable();
        verts.dedup();
        for v in &verts {
            if tree.arity_of(*v).is_none() {
                return Err(Error::InvalidRelation(format!("unknown vertex {v}")));
            }
        }
        if verts.len() < 2 {
            return Err(Error::InvalidRelation(
                "relation subtree needs at least two internal vertices".into(),
            ));
        }
        let mut mask = 0u64;
        let mut edge_count = 0usize;
        for &v in &verts {
            if let Some(p) = tree.parent_of(v) {
                if verts.binary_search(&p).is_ok() {
                    let idx = edge_index[&(v, p)];
                    mask |= 1 << idx;
                    edge_count += 1;
                }
            }
        }
        // a connected subtree on k vertices has exactly k - 1 induced edges
        if edge_count != verts.len() - 1 {
            return Err(Error::InvalidRelation(format!(
                "relation {verts:?} does not induce a connected subtree"
            )));
        }
        masks.push(mask);
    }
    SetSystem::new(edges.len(), masks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::system::system_homology;

    /// Ternary root with three binary children.
    fn ternary_example() -> (RootedTree, Vec<Vec<u32>>) {
        let tree = RootedTree::new(vec![
            (0, 3, None),
            (1, 2, Some(0)),
            (2, 2, Some(0)),
            (3, 2, Some(0)),
        ])
        .unwrap();
        let rels = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]];
        (tree, rels)
    }

    #[test]
    fn ternary_root_gives_triangle() {
        let (tree, rels) = ternary_example();
        let s = tree_to_system(&tree, &rels).unwrap();
        assert_eq!(s.ground(), 3);
        assert_eq!(s.relation_points(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        let h = system_homology(&s, FieldSpec::default_prime()).unwrap();
        assert_eq!(h.total, 2);
        assert_eq!(h.dims, vec![0, 2]);
    }

    #[test]
    fn corolla_has_unit_homology() {
        let tree = RootedTree::new(vec![(7, 5, None)]).unwrap();
        let s = tree_to_system(&tree, &[]).unwrap();
        assert_eq!(s.ground(), 0);
        let h = system_homology(&s, FieldSpec::default_prime()).unwrap();
        assert_eq!(h.total, 1);
    }

    #[test]
    fn cherry_relation() {
        let tree = RootedTree::new(vec![(0, 2, None), (1, 2, Some(0)), (2, 2, Some(0))]).unwrap();
        let s = tree_to_system(&tree, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(s.ground(), 2);
        assert_eq!(s.relation_points(), vec![vec![1, 2]]);
    }

    #[test]
    fn disconnected_relation_rejected() {
        let tree = RootedTree::new(vec![
            (0, 2, None),
            (1, 2, Some(0)),
            (2, 2, Some(0)),
            (3, 2, Some(1)),
        ])
        .unwrap();
        let err = tree_to_system(&tree, &[vec![2, 3]]);
        assert!(matches!(err, Err(Error::InvalidRelation(_))));
        let err = tree_to_system(&tree, &[vec![1]]);
        assert!(matches!(err, Err(Error::InvalidRelation(_))));
    }

    #[test]
    fn malformed_trees_rejected() {
        assert!(RootedTree::new(vec![]).is_err());
        assert!(RootedTree::new(vec![(0, 2, None), (1, 2, None)]).is_err());
        assert!(RootedTree::new(vec![(0, 1, None), (1, 2, Some(0)), (2, 2, Some(0))]).is_err());
        assert!(RootedTree::new(vec![(0, 2, Some(1)), (1, 2, Some(0))]).is_err());
    }
}
