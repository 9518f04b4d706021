//! Module detection, the constructive module search for weakly
//! quasi-transitive digraphs, and substitution-tree decomposition with
//! exact recomposition.

use crate::classes::{self, ClassLabel};
use crate::digraph::{Digraph, PairRelation, VertexSet};
use crate::error::{Error, Result};
use std::fmt;

/// Smallest external vertex whose pair relation is not constant over
/// `s`, or `None` when `s` is a module.
pub fn splitter(d: &Digraph, s: &VertexSet) -> Option<usize> {
    assert!(!s.is_empty(), "module candidates must be nonempty");
    let mut members = s.iter();
    let first = members.next().unwrap();
    for x in 0..d.n() {
        if s.contains(x) {
            continue;
        }
        let base = d.pair_relation(x, first);
        if s.iter().any(|m| m != first && d.pair_relation(x, m) != base) {
            return Some(x);
        }
    }
    None
}

/// True iff every external vertex sees all of `s` through the same pair
/// relation (possibly `NonAdjacent`).
pub fn is_module(d: &Digraph, s: &VertexSet) -> bool {
    splitter(d, s).is_none()
}

/// Closure of `seed` under adding splitters; the unique
/// inclusion-minimal module containing the seed, since any module
/// containing a set must contain each of its splitters.
pub fn smallest_module_containing(d: &Digraph, seed: &VertexSet) -> VertexSet {
    assert!(!seed.is_empty());
    let mut m = seed.clone();
    while let Some(x) = splitter(d, &m) {
        m.insert(x);
    }
    m
}

/// First non-trivial module found by closing vertex pairs, scanning
/// pairs lexicographically; `None` means `d` is prime.
pub fn find_nontrivial_module(d: &Digraph) -> Option<VertexSet> {
    let n = d.n();
    assert!(n >= 2, "modules of digraphs on < 2 vertices are all trivial");
    for i in 0..n {
        for j in i + 1..n {
            let m = smallest_module_containing(d, &VertexSet::with_members(n, [i, j]));
            if m.len() < n {
                return Some(m);
            }
        }
    }
    None
}

/// Constructive non-trivial module for a weakly quasi-transitive digraph
/// that is neither quasi-transitive nor symmetric.
///
/// Follows the inductive argument for the substitution construction:
/// pick `v` with two non-adjacent vertices in N⁺(v) ∩ N⁻(v); try the
/// co-connectivity component M1 of that intersection; otherwise return
/// the oriented-path component M2 of `v`, the mixed closure M3 of `u`,
/// or the oriented-path component M4 of a non-symmetric arc tail,
/// depending on how the one-sided neighbourhood relates to M1. The
/// returned set is validated with `is_module` even in production.
pub fn find_module_wqt(d: &Digraph) -> Result<VertexSet> {
    if let Some(witness) = classes::weakly_quasi_transitive_violation(d) {
        return Err(Error::NotInClass {
            class: ClassLabel::WeaklyQuasiTransitive,
            witness,
        });
    }
    if classes::is_quasi_transitive(d) {
        return Err(Error::Precondition(
            "digraph is quasi-transitive; the construction needs a quasi-transitivity violation"
                .into(),
        ));
    }
    if classes::is_symmetric(d) {
        return Err(Error::Precondition(
            "digraph is symmetric; the construction needs a non-symmetric arc".into(),
        ));
    }

    let n = d.n();
    // A quasi-transitivity violation in a weakly quasi-transitive
    // digraph forces both endpoints into N⁺(v) ∩ N⁻(v).
    let mut picked = None;
    'outer: for v in 0..n {
        let inout = d.in_nbrs(v).intersection(&d.out_nbrs(v));
        let members: Vec<usize> = inout.iter().collect();
        for (i, &u) in members.iter().enumerate() {
            for &w in &members[i + 1..] {
                if !d.is_adjacent(u, w) {
                    picked = Some((v, u, inout));
                    break 'outer;
                }
            }
        }
    }
    let (v, u, inout) = picked.ok_or_else(|| {
        Error::InvariantViolation(
            "no vertex has two non-adjacent digon neighbours despite a quasi-transitivity \
             violation"
            .into(),
        )
    })?;

    // M1: component of u in the complement of the underlying graph of
    // the subdigraph induced by N⁺(v) ∩ N⁻(v).
    let m1 = co_component(d, u, &inout);
    let module = if let Some(x) = splitter(d, &m1) {
        // A splitter of M1 must sit outside both closed neighbourhoods
        // of v and be partially adjacent to M1.
        debug_assert!(
            x != v && !d.is_adjacent(x, v),
            "splitter {x} of M1 must avoid the closed neighbourhoods of {v}"
        );
        let one_sided = d
            .in_nbrs(v)
            .union(&d.out_nbrs(v))
            .iter()
            .filter(|&x| !inout.contains(x))
            .collect::<Vec<_>>();
        let one_sided = VertexSet::with_members(n, one_sided);
        if !one_sided.is_empty() {
            debug_assert!(
                one_sided
                    .iter()
                    .all(|p| m1.iter().all(|m| d.is_adjacent(p, m))),
                "one-sided neighbours of {v} must be completely adjacent to M1"
            );
            let all_symmetric = one_sided.iter().all(|p| {
                m1.iter()
                    .all(|m| d.pair_relation(p, m) == PairRelation::Symmetric)
            });
            if all_symmetric {
                oriented_component(d, v)
            } else {
                mixed_closure(d, u, &inout)
            }
        } else {
            let (f, _g) = d
                .arcs()
                .find(|&(a, b)| !d.has_arc(b, a))
                .expect("a non-symmetric digraph has a non-symmetric arc");
            oriented_component(d, f)
        }
    } else {
        m1
    };

    if module.len() < 2 || module.len() >= n {
        return Err(Error::InvariantViolation(format!(
            "constructed module {module} is trivial"
        )));
    }
    if let Some(x) = splitter(d, &module) {
        return Err(Error::InvariantViolation(format!(
            "constructed set {module} is split by vertex {x}"
        )));
    }
    Ok(module)
}

/// Component of `start` in the non-adjacency graph on `within`.
fn co_component(d: &Digraph, start: usize, within: &VertexSet) -> VertexSet {
    let mut comp = VertexSet::singleton(d.n(), start);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in within.iter() {
            if y != x && !comp.contains(y) && !d.is_adjacent(x, y) {
                comp.insert(y);
                stack.push(y);
            }
        }
    }
    comp
}

/// Vertices connected to `start` by oriented paths: consecutive
/// vertices joined by a non-symmetric arc, in either direction.
fn oriented_component(d: &Digraph, start: usize) -> VertexSet {
    let mut comp = VertexSet::singleton(d.n(), start);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in 0..d.n() {
            if y == x || comp.contains(y) {
                continue;
            }
            let nonsym = matches!(
                d.pair_relation(x, y),
                PairRelation::Forward | PairRelation::Backward
            );
            if nonsym {
                comp.insert(y);
                stack.push(y);
            }
        }
    }
    comp
}

/// Fixpoint closure from `{u}`: adds digon neighbours of `v` (members of
/// `inout`) that miss an adjacency into the set, and other vertices
/// joined to the set by symmetric arcs.
fn mixed_closure(d: &Digraph, u: usize, inout: &VertexSet) -> VertexSet {
    let mut m = VertexSet::singleton(d.n(), u);
    loop {
        let mut grew = false;
        for h in 0..d.n() {
            if m.contains(h) {
                continue;
            }
            let joins = if inout.contains(h) {
                m.iter().any(|x| x != h && !d.is_adjacent(h, x))
            } else {
                m.iter()
                    .any(|x| x != h && d.pair_relation(h, x) == PairRelation::Symmetric)
            };
            if joins {
                m.insert(h);
                grew = true;
            }
        }
        if !grew {
            return m;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafKind {
    TransitiveOriented,
    Semicomplete,
    Symmetric,
}

impl LeafKind {
    pub fn token(self) -> &'static str {
        match self {
            LeafKind::TransitiveOriented => "transitive-oriented",
            LeafKind::Semicomplete => "semicomplete",
            LeafKind::Symmetric => "symmetric",
        }
    }

    pub fn holds(self, d: &Digraph) -> bool {
        match self {
            LeafKind::TransitiveOriented => classes::is_transitive_oriented(d),
            LeafKind::Semicomplete => classes::is_semicomplete(d),
            LeafKind::Symmetric => classes::is_symmetric(d),
        }
    }
}

impl fmt::Display for LeafKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Substitution tree. Leaves carry a base-class digraph over explicit
/// original vertex labels; internal nodes carry the quotient digraph
/// whose vertex `i` is expanded by child `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompTree {
    Leaf {
        kind: LeafKind,
        digraph: Digraph,
        vertices: Vec<usize>,
    },
    Node {
        quotient: Digraph,
        children: Vec<DecompTree>,
    },
}

impl DecompTree {
    /// Original labels covered by this subtree, in leaf order.
    pub fn labels(&self) -> Vec<usize> {
        match self {
            DecompTree::Leaf { vertices, .. } => vertices.clone(),
            DecompTree::Node { children, .. } => {
                children.iter().flat_map(|c| c.labels()).collect()
            }
        }
    }

    /// The vertex blocks of a node, one per child; a leaf is its own
    /// single block.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        match self {
            DecompTree::Leaf { vertices, .. } => vec![vertices.clone()],
            DecompTree::Node { children, .. } => children.iter().map(|c| c.labels()).collect(),
        }
    }

}

fn leaf_kind(d: &Digraph) -> Option<LeafKind> {
    // Order resolves overlaps deterministically; e.g. a single vertex
    // satisfies all three and becomes transitive-oriented.
    if classes::is_transitive_oriented(d) {
        Some(LeafKind::TransitiveOriented)
    } else if classes::is_semicomplete(d) {
        Some(LeafKind::Semicomplete)
    } else if classes::is_symmetric(d) {
        Some(LeafKind::Symmetric)
    } else {
        None
    }
}

/// Decomposes a weakly quasi-transitive digraph into a substitution tree
/// whose leaves are transitive oriented, semicomplete or symmetric.
///
/// Leaf predicates are checked before any module search; otherwise a
/// non-trivial module is contracted to its smallest vertex and both the
/// quotient and the module are decomposed recursively, the module's tree
/// replacing the contracted vertex.
pub fn decompose_wqt(d: &Digraph) -> Result<DecompTree> {
    if let Some(witness) = classes::weakly_quasi_transitive_violation(d) {
        return Err(Error::NotInClass {
            class: ClassLabel::WeaklyQuasiTransitive,
            witness,
        });
    }
    let labels: Vec<usize> = d.vertices().collect();
    decompose_rec(d, &labels)
}

fn decompose_rec(d: &Digraph, labels: &[usize]) -> Result<DecompTree> {
    debug_assert_eq!(d.n(), labels.len());
    if let Some(kind) = leaf_kind(d) {
        return Ok(DecompTree::Leaf {
            kind,
            digraph: d.clone(),
            vertices: labels.to_vec(),
        });
    }
    // Not a base digraph, so n >= 2 and a non-trivial module must exist.
    let module = if classes::is_quasi_transitive(d) || classes::is_symmetric(d) {
        find_nontrivial_module(d).ok_or_else(|| {
            Error::InvariantViolation("prime digraph outside the three base classes".into())
        })?
    } else {
        find_module_wqt(d)?
    };

    let m0 = module.min().expect("modules are nonempty");
    // Contracting a module to one of its vertices is plain vertex
    // deletion: the representative already carries the uniform external
    // relations.
    let mut keep = module.complement();
    keep.insert(m0);
    let (quotient, qmap) = d.induced(&keep);
    let qlabels: Vec<usize> = qmap.iter().map(|&i| labels[i]).collect();
    let quotient_tree = decompose_rec(&quotient, &qlabels)?;

    let (inner, mmap) = d.induced(&module);
    let mlabels: Vec<usize> = mmap.iter().map(|&i| labels[i]).collect();
    let module_tree = decompose_rec(&inner, &mlabels)?;

    graft(quotient_tree, labels[m0], module_tree)
}

/// Replaces the position of `target` inside `tree` by `replacement`.
/// A singleton leaf is substituted directly; a larger leaf becomes a
/// node over its own digraph with the replacement at the target slot.
fn graft(tree: DecompTree, target: usize, replacement: DecompTree) -> Result<DecompTree> {
    match tree {
        DecompTree::Leaf {
            kind: _,
            digraph,
            vertices,
        } => {
            if !vertices.contains(&target) {
                return Err(Error::InvariantViolation(format!(
                    "graft target {target} missing from leaf"
                )));
            }
            if vertices.len() == 1 {
                return Ok(replacement);
            }
            // The leaf digraph becomes the quotient; its other vertices
            // stay behind as singleton leaves.
            let children = vertices
                .iter()
                .map(|&label| {
                    if label == target {
                        replacement.clone()
                    } else {
                        DecompTree::Leaf {
                            kind: LeafKind::TransitiveOriented,
                            digraph: Digraph::empty(1),
                            vertices: vec![label],
                        }
                    }
                })
                .collect();
            Ok(DecompTree::Node {
                quotient: digraph,
                children,
            })
        }
        DecompTree::Node { quotient, children } => {
            let mut new_children = Vec::with_capacity(children.len());
            let mut done = false;
            for child in children {
                if !done && child.labels().contains(&target) {
                    new_children.push(graft(child, target, replacement.clone())?);
                    done = true;
                } else {
                    new_children.push(child);
                }
            }
            if !done {
                return Err(Error::InvariantViolation(format!(
                    "graft target {target} missing from node"
                )));
            }
            Ok(DecompTree::Node {
                quotient,
                children: new_children,
            })
        }
    }
}

/// Folds a tree back into a digraph through substitution. The leaf label
/// sets must partition `0..n` for the total vertex count `n`; the result
/// then reproduces the decomposed digraph exactly.
pub fn recompose(tree: &DecompTree) -> Result<Digraph> {
    let (labels, arcs) = recompose_parts(tree)?;
    let n = labels.len();
    let mut seen = vec![false; n];
    for &l in &labels {
        if l >= n || seen[l] {
            return Err(Error::MalformedTree(format!(
                "leaf labels do not partition 0..{n}"
            )));
        }
        seen[l] = true;
    }
    Digraph::from_arcs(n, arcs).map_err(|e| Error::MalformedTree(e.to_string()))
}

type LabeledArcs = (Vec<usize>, Vec<(usize, usize)>);

fn recompose_parts(tree: &DecompTree) -> Result<LabeledArcs> {
    match tree {
        DecompTree::Leaf {
            digraph, vertices, ..
        } => {
            if digraph.n() != vertices.len() {
                return Err(Error::MalformedTree(
                    "leaf digraph order does not match its label list".into(),
                ));
            }
            let arcs = digraph
                .arcs()
                .map(|(u, v)| (vertices[u], vertices[v]))
                .collect();
            Ok((vertices.clone(), arcs))
        }
        DecompTree::Node { quotient, children } => {
            if children.len() != quotient.n() {
                return Err(Error::MalformedTree(format!(
                    "node has {} children for a quotient on {} vertices",
                    children.len(),
                    quotient.n()
                )));
            }
            if children.len() < 2 {
                return Err(Error::MalformedTree("node must have >= 2 children".into()));
            }
            let mut labels = Vec::new();
            let mut arcs = Vec::new();
            let mut blocks = Vec::with_capacity(children.len());
            for child in children {
                let (child_labels, child_arcs) = recompose_parts(child)?;
                arcs.extend(child_arcs);
                blocks.push(child_labels.clone());
                labels.extend(child_labels);
            }
            for (i, j) in quotient.arcs() {
                for &x in &blocks[i] {
                    for &y in &blocks[j] {
                        arcs.push((x, y));
                    }
                }
            }
            Ok((labels, arcs))
        }
    }
}

/// Full structural validation of a decomposition of `original`: exact
/// recomposition, leaf kinds, node arities, and every child block a
/// module of the subdigraph its node describes.
pub fn validate_tree(tree: &DecompTree, original: &Digraph) -> Result<()> {
    let recomposed = recompose(tree)?;
    if &recomposed != original {
        return Err(Error::InvariantViolation(
            "recomposition does not reproduce the input".into(),
        ));
    }
    validate_rec(tree, original)
}

fn validate_rec(tree: &DecompTree, original: &Digraph) -> Result<()> {
    match tree {
        DecompTree::Leaf { kind, digraph, .. } => {
            if !kind.holds(digraph) {
                return Err(Error::InvariantViolation(format!(
                    "leaf digraph does not satisfy its kind {kind}"
                )));
            }
            Ok(())
        }
        DecompTree::Node { children, .. } => {
            let scope = VertexSet::with_members(original.n(), tree.labels());
            for child in children {
                let block = child.labels();
                // Uniform relations from every scope vertex outside the
                // block make it a module of the node's subdigraph.
                for x in scope.iter() {
                    if block.contains(&x) {
                        continue;
                    }
                    let base = original.pair_relation(x, block[0]);
                    for &m in &block[1..] {
                        if original.pair_relation(x, m) != base {
                            return Err(Error::InvariantViolation(format!(
                                "child block is split by vertex {x}"
                            )));
                        }
                    }
                }
                validate_rec(child, original)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn blown_digon() -> Digraph {
        fixtures::digon()
            .substitution(&[Digraph::empty(2), Digraph::empty(1)])
            .unwrap()
    }

    #[test]
    fn module_examples() {
        let c4 = fixtures::directed_cycle(4);
        assert!(is_module(&c4, &VertexSet::singleton(4, 2)));
        assert!(is_module(&c4, &VertexSet::full(4)));
        assert_eq!(splitter(&c4, &VertexSet::with_members(4, [0, 1])), Some(2));

        let blown = blown_digon();
        assert!(is_module(&blown, &VertexSet::with_members(3, [0, 1])));
    }

    #[test]
    fn smallest_module_examples() {
        let c4 = fixtures::directed_cycle(4);
        assert_eq!(
            smallest_module_containing(&c4, &VertexSet::singleton(4, 1)),
            VertexSet::singleton(4, 1)
        );
        assert_eq!(
            smallest_module_containing(&c4, &VertexSet::with_members(4, [0, 1])),
            VertexSet::full(4)
        );
        let blown = blown_digon();
        assert_eq!(
            smallest_module_containing(&blown, &VertexSet::with_members(3, [0, 1])),
            VertexSet::with_members(3, [0, 1])
        );
    }

    #[test]
    fn find_nontrivial_module_examples() {
        assert_eq!(find_nontrivial_module(&fixtures::directed_cycle(3)), None);
        assert_eq!(find_nontrivial_module(&fixtures::directed_cycle(4)), None);
        assert_eq!(
            find_nontrivial_module(&blown_digon()),
            Some(VertexSet::with_members(3, [0, 1]))
        );
    }

    #[test]
    fn find_module_wqt_rejects_wrong_inputs() {
        assert!(matches!(
            find_module_wqt(&fixtures::symmetric_cycle(3)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            find_module_wqt(&fixtures::transitive_tournament(3)),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            find_module_wqt(&fixtures::directed_cycle(4)),
            Err(Error::NotInClass { .. })
        ));
    }

    #[test]
    fn find_module_wqt_on_blown_up_host() {
        // Host: digon path 0 - 1 - 2 (0, 2 non-adjacent violates
        // quasi-transitivity) plus a dominating source 3. Weakly
        // quasi-transitive and not symmetric.
        let host = Digraph::from_arcs(
            4,
            [(0, 1), (1, 0), (1, 2), (2, 1), (3, 0), (3, 1), (3, 2)],
        )
        .unwrap();
        assert!(classes::is_weakly_quasi_transitive(&host));
        assert!(!classes::is_quasi_transitive(&host));
        assert!(!classes::is_symmetric(&host));

        let m = find_module_wqt(&host).unwrap();
        assert!(is_module(&host, &m));
        assert!(m.len() >= 2 && m.len() < host.n());

        // Blowing up a digon endpoint by an independent pair keeps all
        // the preconditions and must still yield a non-trivial module.
        let parts = vec![
            Digraph::empty(2),
            Digraph::empty(1),
            Digraph::empty(1),
            Digraph::empty(1),
        ];
        let d = host.substitution(&parts).unwrap();
        assert!(classes::is_weakly_quasi_transitive(&d));
        assert!(!classes::is_quasi_transitive(&d));
        assert!(!classes::is_symmetric(&d));

        let m = find_module_wqt(&d).unwrap();
        assert!(is_module(&d, &m));
        assert!(m.len() >= 2 && m.len() < d.n());
    }

    #[test]
    fn decompose_leaf_examples() {
        match decompose_wqt(&fixtures::transitive_tournament(3)).unwrap() {
            DecompTree::Leaf { kind, .. } => assert_eq!(kind, LeafKind::TransitiveOriented),
            other => panic!("expected leaf, got {other:?}"),
        }
        match decompose_wqt(&fixtures::symmetric_cycle(4)).unwrap() {
            DecompTree::Leaf { kind, .. } => assert_eq!(kind, LeafKind::Symmetric),
            other => panic!("expected leaf, got {other:?}"),
        }
        // The blown-up digon is itself symmetric, so it stays a leaf.
        match decompose_wqt(&blown_digon()).unwrap() {
            DecompTree::Leaf { kind, .. } => assert_eq!(kind, LeafKind::Symmetric),
            other => panic!("expected leaf, got {other:?}"),
        }
    }

    #[test]
    fn decompose_node_example() {
        // Arc 0 -> 1 with the tail blown up by an independent pair and
        // the head by a digon: not transitive oriented (digon), not
        // semicomplete (independent pair), not symmetric (cross arcs).
        let tt2 = fixtures::transitive_tournament(2);
        let d = tt2
            .substitution(&[Digraph::empty(2), fixtures::digon()])
            .unwrap();
        let tree = decompose_wqt(&d).unwrap();
        validate_tree(&tree, &d).unwrap();
        match &tree {
            DecompTree::Node { quotient, children } => {
                assert!(children.len() >= 2);
                assert!(leaf_kind(quotient).is_some());
            }
            DecompTree::Leaf { .. } => panic!("expected a node"),
        }
        assert_eq!(recompose(&tree).unwrap(), d);
    }

    #[test]
    fn decompose_rejects_non_wqt() {
        assert!(matches!(
            decompose_wqt(&fixtures::directed_cycle(4)),
            Err(Error::NotInClass { .. })
        ));
    }

    #[test]
    fn recompose_examples() {
        let leaf = DecompTree::Leaf {
            kind: LeafKind::TransitiveOriented,
            digraph: fixtures::transitive_tournament(3),
            vertices: vec![0, 1, 2],
        };
        assert_eq!(recompose(&leaf).unwrap(), fixtures::transitive_tournament(3));

        // Hand-built node: digon quotient with an independent pair and a
        // singleton reproduces the blown-up digon.
        let node = DecompTree::Node {
            quotient: fixtures::digon(),
            children: vec![
                DecompTree::Leaf {
                    kind: LeafKind::Symmetric,
                    digraph: Digraph::empty(2),
                    vertices: vec![0, 1],
                },
                DecompTree::Leaf {
                    kind: LeafKind::TransitiveOriented,
                    digraph: Digraph::empty(1),
                    vertices: vec![2],
                },
            ],
        };
        assert_eq!(recompose(&node).unwrap(), blown_digon());
    }

    #[test]
    fn recompose_rejects_malformed_trees() {
        let bad_arity = DecompTree::Node {
            quotient: fixtures::digon(),
            children: vec![DecompTree::Leaf {
                kind: LeafKind::TransitiveOriented,
                digraph: Digraph::empty(1),
                vertices: vec![0],
            }],
        };
        assert!(matches!(recompose(&bad_arity), Err(Error::MalformedTree(_))));

        let bad_labels = DecompTree::Leaf {
            kind: LeafKind::TransitiveOriented,
            digraph: Digraph::empty(2),
            vertices: vec![0, 2],
        };
        assert!(matches!(recompose(&bad_labels), Err(Error::MalformedTree(_))));
    }
}
