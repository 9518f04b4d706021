//! Membership predicates for the digraph classes in the containment
//! hierarchy, each with a witness for failures.
//!
//! All predicates are deliberate definition-literal scans: at the sizes
//! this crate targets they are fast enough, and the straightforward code
//! doubles as the testing oracle.

use crate::chordality;
use crate::digraph::{Digraph, PairRelation};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Symmetric,
    Oriented,
    TransitiveOriented,
    Semicomplete,
    LocallySemicomplete,
    QuasiTransitive,
    WeaklyQuasiTransitive,
    ExtendedSemicomplete,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 8] = [
        ClassLabel::Symmetric,
        ClassLabel::Oriented,
        ClassLabel::TransitiveOriented,
        ClassLabel::Semicomplete,
        ClassLabel::LocallySemicomplete,
        ClassLabel::QuasiTransitive,
        ClassLabel::WeaklyQuasiTransitive,
        ClassLabel::ExtendedSemicomplete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::Symmetric => "Symmetric",
            ClassLabel::Oriented => "Oriented",
            ClassLabel::TransitiveOriented => "TransitiveOriented",
            ClassLabel::Semicomplete => "Semicomplete",
            ClassLabel::LocallySemicomplete => "LocallySemicomplete",
            ClassLabel::QuasiTransitive => "QuasiTransitive",
            ClassLabel::WeaklyQuasiTransitive => "WeaklyQuasiTransitive",
            ClassLabel::ExtendedSemicomplete => "ExtendedSemicomplete",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Up to three vertex labels demonstrating why a defining condition
/// fails; re-checking the condition on them reproduces the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassWitness {
    pub class: ClassLabel,
    pub vertices: Vec<usize>,
}

impl ClassWitness {
    fn new(class: ClassLabel, vertices: impl Into<Vec<usize>>) -> Self {
        ClassWitness {
            class,
            vertices: vertices.into(),
        }
    }
}

impl fmt::Display for ClassWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// First non-adjacent pair, if any.
pub fn semicomplete_violation(d: &Digraph) -> Option<ClassWitness> {
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            if !d.is_adjacent(u, v) {
                return Some(ClassWitness::new(ClassLabel::Semicomplete, [u, v]));
            }
        }
    }
    None
}

pub fn is_semicomplete(d: &Digraph) -> bool {
    semicomplete_violation(d).is_none()
}

/// First pair joined by a non-symmetric arc, if any.
pub fn symmetric_violation(d: &Digraph) -> Option<ClassWitness> {
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            match d.pair_relation(u, v) {
                PairRelation::Forward | PairRelation::Backward => {
                    return Some(ClassWitness::new(ClassLabel::Symmetric, [u, v]));
                }
                _ => {}
            }
        }
    }
    None
}

pub fn is_symmetric(d: &Digraph) -> bool {
    symmetric_violation(d).is_none()
}

/// First pair joined by a symmetric arc, if any.
pub fn oriented_violation(d: &Digraph) -> Option<ClassWitness> {
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            if d.pair_relation(u, v) == PairRelation::Symmetric {
                return Some(ClassWitness::new(ClassLabel::Oriented, [u, v]));
            }
        }
    }
    None
}

pub fn is_oriented(d: &Digraph) -> bool {
    oriented_violation(d).is_none()
}

/// Oriented and closed under arc composition: `u -> v` and `v -> w`
/// imply `u -> w`.
pub fn transitive_oriented_violation(d: &Digraph) -> Option<ClassWitness> {
    if let Some(w) = oriented_violation(d) {
        return Some(ClassWitness::new(ClassLabel::TransitiveOriented, w.vertices));
    }
    for u in 0..d.n() {
        for v in 0..d.n() {
            if u == v || !d.has_arc(u, v) {
                continue;
            }
            for w in 0..d.n() {
                if w != u && w != v && d.has_arc(v, w) && !d.has_arc(u, w) {
                    return Some(ClassWitness::new(ClassLabel::TransitiveOriented, [u, v, w]));
                }
            }
        }
    }
    None
}

pub fn is_transitive_oriented(d: &Digraph) -> bool {
    transitive_oriented_violation(d).is_none()
}

/// Alternative route to the same class: an oriented graph is transitive
/// iff every vertex is di-simplicial. Cross-checked against the
/// composition-closure scan in the test suites.
pub fn is_transitive_oriented_via_di_simplicial(d: &Digraph) -> bool {
    is_oriented(d) && d.vertices().all(|v| chordality::is_di_simplicial(d, v))
}

/// For every vertex, both N⁻(v) and N⁺(v) must induce semicomplete
/// subdigraphs. The witness is `(v, u, w)` with `u`, `w` non-adjacent
/// and both in-neighbours or both out-neighbours of `v`.
pub fn locally_semicomplete_violation(d: &Digraph) -> Option<ClassWitness> {
    for v in 0..d.n() {
        for side in [d.in_nbrs(v), d.out_nbrs(v)] {
            let members: Vec<usize> = side.iter().collect();
            for (i, &u) in members.iter().enumerate() {
                for &w in &members[i + 1..] {
                    if !d.is_adjacent(u, w) {
                        return Some(ClassWitness::new(
                            ClassLabel::LocallySemicomplete,
                            [v, u, w],
                        ));
                    }
                }
            }
        }
    }
    None
}

pub fn is_locally_semicomplete(d: &Digraph) -> bool {
    locally_semicomplete_violation(d).is_none()
}

/// Arcs `u -> v -> w` with `u != w` force `u` and `w` adjacent.
pub fn quasi_transitive_violation(d: &Digraph) -> Option<ClassWitness> {
    for u in 0..d.n() {
        for v in 0..d.n() {
            if u == v || !d.has_arc(u, v) {
                continue;
            }
            for w in 0..d.n() {
                if w != u && w != v && d.has_arc(v, w) && !d.is_adjacent(u, w) {
                    return Some(ClassWitness::new(ClassLabel::QuasiTransitive, [u, v, w]));
                }
            }
        }
    }
    None
}

pub fn is_quasi_transitive(d: &Digraph) -> bool {
    quasi_transitive_violation(d).is_none()
}

/// Any two asynchronous neighbours of any vertex must be adjacent. The
/// witness is `(v, u, w)`.
pub fn weakly_quasi_transitive_violation(d: &Digraph) -> Option<ClassWitness> {
    for v in 0..d.n() {
        let members: Vec<usize> = (0..d.n())
            .filter(|&u| u != v && d.is_adjacent(u, v))
            .collect();
        for (i, &u) in members.iter().enumerate() {
            for &w in &members[i + 1..] {
                if !d.synchronous(v, u, w) && !d.is_adjacent(u, w) {
                    return Some(ClassWitness::new(
                        ClassLabel::WeaklyQuasiTransitive,
                        [v, u, w],
                    ));
                }
            }
        }
    }
    None
}

pub fn is_weakly_quasi_transitive(d: &Digraph) -> bool {
    weakly_quasi_transitive_violation(d).is_none()
}

/// Local criterion for the substitution-defined class: every pair of
/// non-adjacent vertices must have identical in-neighbourhoods and
/// identical out-neighbourhoods. Contracting the non-adjacency classes
/// then yields a semicomplete quotient, so this is equivalent to being
/// obtainable from a semicomplete digraph by substituting independent
/// sets; the equivalence is cross-validated against an exhaustive
/// partition search in the test suites.
pub fn extended_semicomplete_violation(d: &Digraph) -> Option<ClassWitness> {
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            if d.is_adjacent(u, v) {
                continue;
            }
            for x in 0..d.n() {
                if x == u || x == v {
                    continue;
                }
                if d.has_arc(x, u) != d.has_arc(x, v) || d.has_arc(u, x) != d.has_arc(v, x) {
                    return Some(ClassWitness::new(ClassLabel::ExtendedSemicomplete, [u, v, x]));
                }
            }
        }
    }
    None
}

pub fn is_extended_semicomplete(d: &Digraph) -> bool {
    extended_semicomplete_violation(d).is_none()
}

/// Strong connectivity over all arcs, symmetric ones included.
pub fn is_strong(d: &Digraph) -> bool {
    let n = d.n();
    if n <= 1 {
        return true;
    }
    let reaches_all = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for (v, visited) in seen.iter_mut().enumerate() {
                let arc = if forward { d.has_arc(u, v) } else { d.has_arc(v, u) };
                if arc && !*visited {
                    *visited = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    };
    reaches_all(true) && reaches_all(false)
}

fn violation_for(d: &Digraph, label: ClassLabel) -> Option<ClassWitness> {
    match label {
        ClassLabel::Symmetric => symmetric_violation(d),
        ClassLabel::Oriented => oriented_violation(d),
        ClassLabel::TransitiveOriented => transitive_oriented_violation(d),
        ClassLabel::Semicomplete => semicomplete_violation(d),
        ClassLabel::LocallySemicomplete => locally_semicomplete_violation(d),
        ClassLabel::QuasiTransitive => quasi_transitive_violation(d),
        ClassLabel::WeaklyQuasiTransitive => weakly_quasi_transitive_violation(d),
        ClassLabel::ExtendedSemicomplete => extended_semicomplete_violation(d),
    }
}

/// All class labels whose predicate holds, in `ClassLabel::ALL` order.
pub fn classify(d: &Digraph) -> Vec<ClassLabel> {
    ClassLabel::ALL
        .into_iter()
        .filter(|&label| violation_for(d, label).is_none())
        .collect()
}

/// Labels together with the first witness for each failing class.
pub fn classify_with_witnesses(d: &Digraph) -> (Vec<ClassLabel>, Vec<ClassWitness>) {
    let mut held = Vec::new();
    let mut failed = Vec::new();
    for label in ClassLabel::ALL {
        match violation_for(d, label) {
            None => held.push(label),
            Some(w) => failed.push(w),
        }
    }
    (held, failed)
}
