//! Di-simplicial vertices, violating triples, the greedy
//! perfect-elimination chordality decision with certificates, and the
//! constructive canonicalization of violating triples.

use crate::classes;
use crate::digraph::{Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::patterns;
use std::fmt;

/// Certificate that `v` is not di-simplicial: `u ∈ N⁻(v)`, `w ∈ N⁺(v)`,
/// `u != w` and the arc `u -> w` is missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ViolatingTriple {
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl fmt::Display for ViolatingTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.u, self.v, self.w)
    }
}

impl ViolatingTriple {
    /// Re-checks the defining condition against `d`.
    pub fn holds_in(&self, d: &Digraph) -> bool {
        self.u != self.w
            && d.has_arc(self.u, self.v)
            && d.has_arc(self.v, self.w)
            && !d.has_arc(self.u, self.w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexType {
    /// Every violating triple `(u, v, w)` has both `uv` and `vw`
    /// non-symmetric.
    Type1,
    /// Some violating triple has `uv` or `vw` symmetric.
    Type2,
    NoViolation,
}

/// Outcome of greedy elimination: either a perfect elimination ordering
/// or the residual vertex set on which it got stuck, with one violating
/// triple per residual vertex (ascending by vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChordalityCertificate {
    Peo(Vec<usize>),
    Stuck {
        residual: VertexSet,
        triples: Vec<ViolatingTriple>,
    },
}

/// First violating triple (lexicographic by `(u, w)`) for `v` inside the
/// induced subdigraph on `alive`, or `None` if `v` is di-simplicial
/// there.
fn violation_within(d: &Digraph, v: usize, alive: &VertexSet) -> Option<ViolatingTriple> {
    for u in 0..d.n() {
        if u == v || !alive.contains(u) || !d.has_arc(u, v) {
            continue;
        }
        for w in 0..d.n() {
            if w == v || w == u || !alive.contains(w) || !d.has_arc(v, w) {
                continue;
            }
            if !d.has_arc(u, w) {
                return Some(ViolatingTriple { u, v, w });
            }
        }
    }
    None
}

/// First violating triple for `v` in all of `d`, or `None`.
pub fn di_simplicial_violation(d: &Digraph, v: usize) -> Option<ViolatingTriple> {
    assert!(v < d.n(), "vertex {v} out of range 0..{}", d.n());
    violation_within(d, v, &VertexSet::full(d.n()))
}

pub fn is_di_simplicial(d: &Digraph, v: usize) -> bool {
    di_simplicial_violation(d, v).is_none()
}

/// Complete enumeration of the violating triples for `v`, lexicographic
/// by `(u, w)`.
pub fn violating_triples(d: &Digraph, v: usize) -> Vec<ViolatingTriple> {
    assert!(v < d.n(), "vertex {v} out of range 0..{}", d.n());
    let mut out = Vec::new();
    for u in 0..d.n() {
        if u == v || !d.has_arc(u, v) {
            continue;
        }
        for w in 0..d.n() {
            if w != v && w != u && d.has_arc(v, w) && !d.has_arc(u, w) {
                out.push(ViolatingTriple { u, v, w });
            }
        }
    }
    out
}

pub fn vertex_type(d: &Digraph, v: usize) -> VertexType {
    let triples = violating_triples(d, v);
    if triples.is_empty() {
        return VertexType::NoViolation;
    }
    let all_nonsymmetric = triples.iter().all(|t| {
        !d.has_arc(t.v, t.u) && !d.has_arc(t.w, t.v)
    });
    if all_nonsymmetric {
        VertexType::Type1
    } else {
        VertexType::Type2
    }
}

/// Greedy perfect elimination: repeatedly removes the smallest-labeled
/// vertex that is di-simplicial in the residual induced subdigraph.
///
/// If all vertices get eliminated the order is a perfect elimination
/// ordering and `d` is chordal; if no residual vertex is di-simplicial
/// the residual set certifies non-chordality. Both directions hold
/// because chordality is hereditary (every residual subdigraph of a
/// chordal digraph again has a di-simplicial vertex) and because in a
/// completed ordering the earliest vertex of any induced subdigraph is
/// di-simplicial in it.
pub fn greedy_eliminate(d: &Digraph) -> ChordalityCertificate {
    let n = d.n();
    let mut alive = VertexSet::full(n);
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = alive
            .iter()
            .find(|&v| violation_within(d, v, &alive).is_none());
        match next {
            Some(v) => {
                alive.remove(v);
                order.push(v);
            }
            None => {
                let triples = alive
                    .iter()
                    .map(|v| violation_within(d, v, &alive).expect("residual vertex must have a violating triple"))
                    .collect();
                return ChordalityCertificate::Stuck {
                    residual: alive,
                    triples,
                };
            }
        }
    }
    ChordalityCertificate::Peo(order)
}

pub fn is_chordal(d: &Digraph) -> bool {
    matches!(greedy_eliminate(d), ChordalityCertificate::Peo(_))
}

/// Checks the perfect-elimination invariant position by position.
/// Returns `Ok(None)` for a valid ordering, `Ok(Some(i))` with the first
/// failing index otherwise, and an error if `order` is not a permutation
/// of the vertex set.
pub fn verify_peo(d: &Digraph, order: &[usize]) -> Result<Option<usize>> {
    let n = d.n();
    if order.len() != n {
        return Err(Error::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::NotAPermutation);
        }
        seen[v] = true;
    }
    let mut alive = VertexSet::full(n);
    for (i, &v) in order.iter().enumerate() {
        if violation_within(d, v, &alive).is_some() {
            return Ok(Some(i));
        }
        alive.remove(v);
    }
    Ok(None)
}

/// How much precondition and postcondition checking
/// [`canonicalize_violating_triple`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Trust the caller; only the walk invariants are checked.
    Trusting,
    /// Enforce the full hypotheses (locally semicomplete, chordal
    /// symmetric part, no forbidden structures, eligible triple) and
    /// re-check canonicality of the result. Exhaustive, so gated.
    Verifying,
}

/// Rewrites a violating triple `(u, v, w)` into one whose non-symmetric
/// endpoints are di-simplicial vertices of S(D), keeping `v` fixed.
///
/// The u-side works on S(D) minus the digon-closed neighbourhood of `w`:
/// inside the component containing `u` it picks a di-simplicial vertex
/// `u'` and walks a path from `u` to `u'`, checking at every step that
/// the triple stays violating with a non-symmetric first arc. The w-side
/// runs the same routine on the arc-reversed digraph.
pub fn canonicalize_violating_triple(
    d: &Digraph,
    triple: &ViolatingTriple,
    mode: Mode,
) -> Result<ViolatingTriple> {
    if !triple.holds_in(d) {
        return Err(Error::Precondition(format!(
            "{triple} is not a violating triple"
        )));
    }
    let s = d.symmetric_part();
    if mode == Mode::Verifying {
        if let Some(w) = classes::locally_semicomplete_violation(d) {
            return Err(Error::Precondition(format!(
                "digraph is not locally semicomplete: witness {w}"
            )));
        }
        if let Some(hole) = patterns::sd_hole(d) {
            return Err(Error::Precondition(format!(
                "symmetric part is not chordal: {hole}"
            )));
        }
        if let Some(pat) = patterns::first_obstruction(d) {
            return Err(Error::Precondition(format!(
                "digraph contains a forbidden pattern: {pat}"
            )));
        }
        if let Some(cyc) = patterns::find_induced_nonsymmetric_cycle(d, 3) {
            return Err(Error::Precondition(format!(
                "digraph contains an induced non-symmetric cycle: {cyc}"
            )));
        }
        if !is_di_simplicial(&s, triple.v) {
            return Err(Error::Precondition(format!(
                "vertex {} is not di-simplicial in the symmetric part",
                triple.v
            )));
        }
    }

    let ViolatingTriple { mut u, v, mut w } = *triple;
    if d.has_arc(u, v) && !d.has_arc(v, u) {
        u = walk_to_di_simplicial(d, &s, u, v, w)?;
    }
    if d.has_arc(v, w) && !d.has_arc(w, v) {
        let rev = d.reverse();
        // S(D) is invariant under reversal, and (w, v, u) is a violating
        // triple of the reversed digraph with a non-symmetric first arc.
        w = walk_to_di_simplicial(&rev, &s, w, v, u)?;
    }
    let out = ViolatingTriple { u, v, w };

    if mode == Mode::Verifying {
        if !out.holds_in(d) {
            return Err(Error::InvariantViolation(format!(
                "canonicalized triple {out} is not violating"
            )));
        }
        if !d.has_arc(out.v, out.u) && !is_di_simplicial(&s, out.u) {
            return Err(Error::InvariantViolation(format!(
                "endpoint {} of {out} is not di-simplicial in the symmetric part",
                out.u
            )));
        }
        if !d.has_arc(out.w, out.v) && !is_di_simplicial(&s, out.w) {
            return Err(Error::InvariantViolation(format!(
                "endpoint {} of {out} is not di-simplicial in the symmetric part",
                out.w
            )));
        }
    }
    Ok(out)
}

/// The u-side walk shared by both directions. Expects `u -> v` to be a
/// non-symmetric arc and `(u, v, w)` to be violating in `d`; `s` must be
/// the symmetric part of `d`.
///
/// The endpoint must be di-simplicial in all of S(D), not merely in its
/// component of the vertex-deleted subdigraph: a component can contain
/// vertices simplicial only locally, and those do not canonicalize the
/// triple.
fn walk_to_di_simplicial(
    d: &Digraph,
    s: &Digraph,
    u: usize,
    v: usize,
    w: usize,
) -> Result<usize> {
    if is_di_simplicial(s, u) {
        return Ok(u); // canonical triples are fixed points
    }
    let excluded = d.in_nbrs_closed(w).intersection(&d.out_nbrs_closed(w));
    debug_assert!(!excluded.contains(u), "u -> w is absent, so u survives");
    let alive = excluded.complement();

    // Component of u in S(D) restricted to the surviving vertices.
    let component = symmetric_component(s, u, &alive);
    let target = component
        .iter()
        .find(|&c| is_di_simplicial(s, c))
        .ok_or_else(|| {
            Error::InvariantViolation(
                "no vertex of the component is di-simplicial in the symmetric part".into(),
            )
        })?;

    let path = shortest_symmetric_path(s, &component, u, target);
    for &step in &path[1..] {
        let ok = d.has_arc(step, v)
            && !d.has_arc(v, step)
            && !d.has_arc(step, w)
            && step != w;
        if !ok {
            return Err(Error::InvariantViolation(format!(
                "walk step {step} does not re-establish the violating triple at v={v}, w={w}"
            )));
        }
    }
    Ok(target)
}

fn symmetric_component(s: &Digraph, start: usize, alive: &VertexSet) -> VertexSet {
    let mut comp = VertexSet::singleton(s.n(), start);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in 0..s.n() {
            if alive.contains(y) && !comp.contains(y) && s.has_arc(x, y) {
                comp.insert(y);
                stack.push(y);
            }
        }
    }
    comp
}

/// BFS shortest path from `from` to `to` inside `within`, ascending
/// neighbour tie-break. Both endpoints must share a component.
fn shortest_symmetric_path(s: &Digraph, within: &VertexSet, from: usize, to: usize) -> Vec<usize> {
    let n = s.n();
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([from]);
    parent[from] = from;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for (y, p) in parent.iter_mut().enumerate() {
            if within.contains(y) && *p == usize::MAX && s.has_arc(x, y) {
                *p = x;
                queue.push_back(y);
            }
        }
    }
    assert!(parent[to] != usize::MAX, "endpoints must share a component");
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle;

    #[test]
    fn di_simplicial_examples() {
        let c3 = fixtures::directed_cycle(3);
        for v in 0..3 {
            assert!(!is_di_simplicial(&c3, v));
        }
        assert_eq!(
            di_simplicial_violation(&c3, 1),
            Some(ViolatingTriple { u: 0, v: 1, w: 2 })
        );

        let tt3 = fixtures::transitive_tournament(3);
        for v in 0..3 {
            assert!(is_di_simplicial(&tt3, v));
        }

        let path = fixtures::symmetric_path(3);
        assert_eq!(
            di_simplicial_violation(&path, 1),
            Some(ViolatingTriple { u: 0, v: 1, w: 2 })
        );
    }

    #[test]
    fn violating_triples_examples() {
        assert!(violating_triples(&fixtures::transitive_tournament(3), 1).is_empty());
        assert_eq!(
            violating_triples(&fixtures::directed_cycle(3), 1),
            vec![ViolatingTriple { u: 0, v: 1, w: 2 }]
        );
        assert_eq!(
            violating_triples(&fixtures::symmetric_cycle(4), 0),
            vec![
                ViolatingTriple { u: 1, v: 0, w: 3 },
                ViolatingTriple { u: 3, v: 0, w: 1 }
            ]
        );
    }

    #[test]
    fn vertex_type_examples() {
        assert_eq!(vertex_type(&fixtures::directed_cycle(3), 1), VertexType::Type1);
        assert_eq!(
            vertex_type(&fixtures::transitive_tournament(3), 0),
            VertexType::NoViolation
        );
        assert_eq!(vertex_type(&fixtures::symmetric_path(3), 1), VertexType::Type2);
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(
            greedy_eliminate(&fixtures::transitive_tournament(3)),
            ChordalityCertificate::Peo(vec![0, 1, 2])
        );

        match greedy_eliminate(&fixtures::directed_cycle(3)) {
            ChordalityCertificate::Stuck { residual, triples } => {
                assert_eq!(residual, VertexSet::full(3));
                assert_eq!(triples.len(), 3);
                for t in &triples {
                    assert!(t.holds_in(&fixtures::directed_cycle(3)));
                }
            }
            other => panic!("expected stuck certificate, got {other:?}"),
        }

        match greedy_eliminate(&fixtures::symmetric_cycle(4)) {
            ChordalityCertificate::Stuck { residual, .. } => {
                assert_eq!(residual, VertexSet::full(4));
            }
            other => panic!("expected stuck certificate, got {other:?}"),
        }
    }

    #[test]
    fn chordality_examples() {
        assert!(is_chordal(&Digraph::empty(1)));
        assert!(!is_chordal(&fixtures::obstruction_a()));
        assert!(!is_chordal(&fixtures::obstruction_b()));
        assert!(!is_chordal(&fixtures::obstruction_c()));
        assert!(!is_chordal(&fixtures::obstruction_d()));
    }

    #[test]
    fn exactly_two_semicomplete_triples_on_three_vertices_are_non_chordal() {
        // All 27 semicomplete digraphs on {0,1,2}: only the two cyclic
        // tournament labelings lack a di-simplicial vertex.
        let mut non_chordal = Vec::new();
        let relations = [
            crate::digraph::PairRelation::Forward,
            crate::digraph::PairRelation::Backward,
            crate::digraph::PairRelation::Symmetric,
        ];
        for a in relations {
            for b in relations {
                for c in relations {
                    let mut arcs = Vec::new();
                    for ((u, v), rel) in [((0, 1), a), ((0, 2), b), ((1, 2), c)] {
                        match rel {
                            crate::digraph::PairRelation::Forward => arcs.push((u, v)),
                            crate::digraph::PairRelation::Backward => arcs.push((v, u)),
                            crate::digraph::PairRelation::Symmetric => {
                                arcs.push((u, v));
                                arcs.push((v, u));
                            }
                            crate::digraph::PairRelation::NonAdjacent => {}
                        }
                    }
                    let d = Digraph::from_arcs(3, arcs).unwrap();
                    assert_eq!(is_chordal(&d), oracle::chordal(&d));
                    if !is_chordal(&d) {
                        non_chordal.push(d);
                    }
                }
            }
        }
        assert_eq!(non_chordal.len(), 2);
        for d in &non_chordal {
            assert_eq!(d.symmetric_part(), Digraph::empty(3));
            assert_eq!(d.arc_count(), 3);
        }
    }

    #[test]
    fn verify_peo_examples() {
        let tt3 = fixtures::transitive_tournament(3);
        assert_eq!(verify_peo(&tt3, &[0, 1, 2]), Ok(None));
        // Reversed order is also valid: vertex 2 has no out-neighbours,
        // so it is vacuously di-simplicial.
        assert_eq!(verify_peo(&tt3, &[2, 1, 0]), Ok(None));

        let c3 = fixtures::directed_cycle(3);
        assert_eq!(verify_peo(&c3, &[0, 1, 2]), Ok(Some(0)));
        assert_eq!(verify_peo(&c3, &[2, 0, 1]), Ok(Some(0)));

        assert!(matches!(
            verify_peo(&tt3, &[0, 0, 1]),
            Err(Error::NotAPermutation)
        ));
        assert!(matches!(verify_peo(&tt3, &[0, 1]), Err(Error::NotAPermutation)));
    }

    #[test]
    fn greedy_order_passes_verify_peo() {
        for d in [
            fixtures::transitive_tournament(5),
            fixtures::digon(),
            fixtures::symmetric_path(4),
            fixtures::obstruction_b().symmetric_part(),
        ] {
            if let ChordalityCertificate::Peo(order) = greedy_eliminate(&d) {
                assert_eq!(verify_peo(&d, &order), Ok(None));
            } else {
                panic!("expected chordal digraph");
            }
        }
    }

    #[test]
    fn canonicalize_fixed_point() {
        // Oriented path 0 -> 1 -> 2: the only violating triple is
        // already canonical because S(D) is edgeless.
        let d = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        let t = ViolatingTriple { u: 0, v: 1, w: 2 };
        let out = canonicalize_violating_triple(&d, &t, Mode::Verifying).unwrap();
        assert_eq!(out, t);
    }

    #[test]
    fn canonicalize_rejects_non_triples() {
        let tt3 = fixtures::transitive_tournament(3);
        let bogus = ViolatingTriple { u: 0, v: 1, w: 2 };
        assert!(matches!(
            canonicalize_violating_triple(&tt3, &bogus, Mode::Trusting),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn canonicalize_rejects_out_of_scope_digraphs() {
        // The symmetric 4-cycle has violating triples but is not locally
        // semicomplete and its symmetric part is a hole; verification
        // mode must refuse.
        let c4s = fixtures::symmetric_cycle(4);
        let t = ViolatingTriple { u: 1, v: 0, w: 3 };
        assert!(matches!(
            canonicalize_violating_triple(&c4s, &t, Mode::Verifying),
            Err(Error::Precondition(_))
        ));
    }
}
