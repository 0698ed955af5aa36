//! The line-oriented problem file format.
//!
//! Tokens are whitespace separated, `#` starts a comment. Exactly one
//! problem kind per file:
//!
//! * algebra: `alphabet`, `relation` (repeatable), optional `word`
//! * set system: `ground <n>`, `rel <i> <i> ...` (repeatable)
//! * tree: `node <id> arity <k> parent <id|root>`, `treerel <id> ...`

use barhom::system::SetSystem;
use barhom::tree::RootedTree;
use barhom::word::{Alphabet, RelationSet, Word};

#[derive(Debug)]
pub enum Problem {
    Algebra { alphabet: Alphabet, relations: RelationSet, word: Option<Word> },
    System(SetSystem),
    Tree { tree: RootedTree, relations: Vec<Vec<u32>> },
}

pub fn parse(text: &str) -> Result<Problem, String> {
    let mut alphabet: Option<Alphabet> = None;
    let mut relation_tokens: Vec<Vec<String>> = Vec::new();
    let mut word_tokens: Option<Vec<String>> = None;
    let mut ground: Option<usize> = None;
    let mut rels: Vec<Vec<usize>> = Vec::new();
    let mut nodes: Vec<(u32, usize, Option<u32>)> = Vec::new();
    let mut treerels: Vec<Vec<u32>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = line.split_whitespace();
        let Some(head) = toks.next() else { continue };
        let rest: Vec<&str> = toks.collect();
        let at = |msg: &str| format!("line {}: {}", lineno + 1, msg);
        match head {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(at("duplicate alphabet line"));
                }
                alphabet = Some(
                    Alphabet::new(rest.iter().map(|s| s.to_string()).collect())
                        .map_err(|e| at(&e.to_string()))?,
                );
            }
            "relation" => relation_tokens.push(rest.iter().map(|s| s.to_string()).collect()),
            "word" => {
                if word_tokens.is_some() {
                    return Err(at("duplicate word line"));
                }
                word_tokens = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "ground" => {
                if ground.is_some() {
                    return Err(at("duplicate ground line"));
                }
                let [n] = rest.as_slice() else {
                    return Err(at("expected: ground <n>"));
                };
                ground = Some(n.parse().map_err(|_| at("ground size is not a number"))?);
            }
            "rel" => {
                let mut pts = Vec::new();
                for t in &rest {
                    pts.push(t.parse::<usize>().map_err(|_| at("rel points must be numbers"))?);
                }
                if pts.is_empty() {
                    return Err(at("rel needs at least one point"));
                }
                rels.push(pts);
            }
            "node" => {
                let [id, kw_arity, arity, kw_parent, parent] = rest.as_slice() else {
                    return Err(at("expected: node <id> arity <k> parent <id|root>"));
                };
                if *kw_arity != "arity" || *kw_parent != "parent" {
                    return Err(at("expected: node <id> arity <k> parent <id|root>"));
                }
                let id: u32 = id.parse().map_err(|_| at("node id must be a number"))?;
                let arity: usize = arity.parse().map_err(|_| at("arity must be a number"))?;
                let parent = if *parent == "root" {
                    None
                } else {
                    Some(parent.parse::<u32>().map_err(|_| at("parent must be an id or root"))?)
                };
                nodes.push((id, arity, parent));
            }
            "treerel" => {
                let mut ids = Vec::new();
                for t in &rest {
                    ids.push(t.parse::<u32>().map_err(|_| at("treerel ids must be numbers"))?);
                }
                if ids.is_empty() {
                    return Err(at("treerel needs at least one vertex"));
                }
                treerels.push(ids);
            }
            other => return Err(at(&format!("unknown directive {other:?}"))),
        }
    }

    let has_algebra = alphabet.is_some() || word_tokens.is_some() || !relation_tokens.is_empty();
    let has_system = ground.is_some() || !rels.is_empty();
    let has_tree = !nodes.is_empty() || !treerels.is_empty();
    match (has_algebra, has_system, has_tree) {
        (true, false, false) => {
            let alphabet = alphabet.ok_or("algebra problem needs an alphabet line")?;
            let mut rel_words = Vec::new();
            for toks in &relation_tokens {
                let refs: Vec<&str> = toks.iter().map(String::as_str).collect();
                rel_words.push(alphabet.parse_word(&refs).map_err(|e| e.to_string())?);
            }
            let relations = RelationSet::new(rel_words).map_err(|e| e.to_string())?;
            let word = match &word_tokens {
                Some(toks) => {
                    let refs: Vec<&str> = toks.iter().map(String::as_str).collect();
                    Some(alphabet.parse_word(&refs).map_err(|e| e.to_string())?)
                }
                None => None,
            };
            Ok(Problem::Algebra { alphabet, relations, word })
        }
        (false, true, false) => {
            let ground = ground.ok_or("set system needs a ground line")?;
            let system = SetSystem::from_point_sets(ground, &rels).map_err(|e| e.to_string())?;
            Ok(Problem::System(system))
        }
        (false, false, true) => {
            let tree = RootedTree::new(nodes).map_err(|e| e.to_string())?;
            Ok(Problem::Tree { tree, relations: treerels })
        }
        (false, false, false) => Err("empty problem file".into()),
        _ => Err("mixed problem kinds in one file".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_algebra() {
        let p = parse("# comment\nalphabet x y\nrelation x x x\nword x x y\n").unwrap();
        match p {
            Problem::Algebra { alphabet, relations, word } => {
                assert_eq!(alphabet.len(), 2);
                assert_eq!(relations.len(), 1);
                assert_eq!(word.unwrap().len(), 3);
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn parses_system() {
        let p = parse("ground 3\nrel 1 2\nrel 2 3\n").unwrap();
        match p {
            Problem::System(s) => {
                assert_eq!(s.ground(), 3);
                assert_eq!(s.relations().len(), 2);
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn parses_tree() {
        let text = "node 0 arity 3 parent root\nnode 1 arity 2 parent 0\n\
                    node 2 arity 2 parent 0\nnode 3 arity 2 parent 0\n\
                    treerel 0 1 2\ntreerel 0 1 3\ntreerel 0 2 3\n";
        match parse(text).unwrap() {
            Problem::Tree { tree, relations } => {
                assert_eq!(tree.vertices().len(), 4);
                assert_eq!(relations.len(), 3);
            }
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("").is_err());
        assert!(parse("alphabet x\nground 2\n").is_err());
        assert!(parse("word x y\n").is_err());
        assert!(parse("alphabet x\nword x q\n").is_err());
        assert!(parse("frobnicate 1\n").is_err());
        assert!(parse("ground 2\nrel 3\n").is_err());
    }
}
