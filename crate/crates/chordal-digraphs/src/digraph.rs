//! Dense digraph representation and the primitive operations everything
//! else builds on: pair relations, neighbourhoods, the symmetric part,
//! induced subdigraphs, substitution and the synchronous-neighbour
//! partition.

use crate::error::{Error, Result};
use std::fmt;

/// State of a vertex pair `{u, v}`, read from the viewpoint of the first
/// vertex: `Forward` means only the arc `u -> v` is present, `Backward`
/// means only `v -> u`, `Symmetric` means both (a digon).
///
/// The derived order (`NonAdjacent < Forward < Backward < Symmetric`) is
/// the one used when enumerating digraphs lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairRelation {
    NonAdjacent,
    Forward,
    Backward,
    Symmetric,
}

impl PairRelation {
    /// The same pair seen from the other endpoint.
    pub fn mirror(self) -> Self {
        match self {
            PairRelation::Forward => PairRelation::Backward,
            PairRelation::Backward => PairRelation::Forward,
            other => other,
        }
    }

    pub fn is_adjacent(self) -> bool {
        self != PairRelation::NonAdjacent
    }

    pub const ALL: [PairRelation; 4] = [
        PairRelation::NonAdjacent,
        PairRelation::Forward,
        PairRelation::Backward,
        PairRelation::Symmetric,
    ];
}

/// Which cell of the partition `{N⁻(v)∖N⁺(v), N⁺(v)∖N⁻(v), N⁻(v)∩N⁺(v)}`
/// a neighbour of `v` falls into. Two neighbours are synchronous exactly
/// when they share a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyncClass {
    InOnly,
    OutOnly,
    InOut,
}

/// A subset of the vertices `0..n-1` of a host digraph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn singleton(n: usize, v: usize) -> Self {
        let mut s = VertexSet::empty(n);
        s.insert(v);
        s
    }

    pub fn with_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::empty(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    /// Size of the host vertex range, not the cardinality of the set.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    pub fn complement(&self) -> VertexSet {
        VertexSet::with_members(self.n, (0..self.n).filter(|&v| !self.contains(v)))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let mut s = self.clone();
        for (w, o) in s.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.n, other.n);
        let mut s = self.clone();
        for (w, o) in s.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
        s
    }

}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A loop-free digraph on vertices `0..n-1`. Digons (both arcs between a
/// pair) are allowed; multiple arcs and loops are not. Arc membership is
/// stored as a dense bit matrix, so pair queries are O(1) and the whole
/// structure is cheap to copy at the sizes this crate targets.
///
/// Values are immutable after construction and safe to share across
/// threads; every operation is a pure function.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Digraph {
    /// The digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64);
        Digraph {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    /// Builds a digraph from an arc list. Rejects loops and out-of-range
    /// endpoints; duplicate arcs are harmless (set semantics).
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidArc { u, v, n });
            }
            d.add_arc(u, v);
        }
        Ok(d)
    }

    fn add_arc(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.stride + v / 64] |= 1 << (v % 64);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// True iff the arc `u -> v` is present. `has_arc(v, v)` is always
    /// false since loops cannot exist.
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex out of range 0..{}", self.n);
        self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// All arcs in ascending `(u, v)` order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| self.has_arc(u, v).then_some((u, v)))
        })
    }

    pub fn arc_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Relation of the pair `{u, v}` seen from `u`.
    ///
    /// Panics if `u == v` or either vertex is out of range; mirror
    /// symmetry holds: `pair_relation(v, u) == pair_relation(u, v).mirror()`.
    pub fn pair_relation(&self, u: usize, v: usize) -> PairRelation {
        assert!(u != v, "pair_relation requires two distinct vertices");
        match (self.has_arc(u, v), self.has_arc(v, u)) {
            (false, false) => PairRelation::NonAdjacent,
            (true, false) => PairRelation::Forward,
            (false, true) => PairRelation::Backward,
            (true, true) => PairRelation::Symmetric,
        }
    }

    /// In-neighbourhood N⁻(v): all `u` with `u -> v`.
    pub fn in_nbrs(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        VertexSet::with_members(self.n, (0..self.n).filter(|&u| self.has_arc(u, v)))
    }

    /// Out-neighbourhood N⁺(v): all `w` with `v -> w`.
    pub fn out_nbrs(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        VertexSet::with_members(self.n, (0..self.n).filter(|&w| self.has_arc(v, w)))
    }

    /// Closed in-neighbourhood N⁻[v] = N⁻(v) ∪ {v}.
    pub fn in_nbrs_closed(&self, v: usize) -> VertexSet {
        let mut s = self.in_nbrs(v);
        s.insert(v);
        s
    }

    /// Closed out-neighbourhood N⁺[v] = N⁺(v) ∪ {v}.
    pub fn out_nbrs_closed(&self, v: usize) -> VertexSet {
        let mut s = self.out_nbrs(v);
        s.insert(v);
        s
    }

    /// The spanning subdigraph S(D) keeping exactly the symmetric arcs.
    pub fn symmetric_part(&self) -> Digraph {
        let mut s = Digraph::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.has_arc(u, v) && self.has_arc(v, u) {
                    s.add_arc(u, v);
                }
            }
        }
        s
    }

    /// The symmetric digraph carrying a digon on `{u, v}` iff `u` and `v`
    /// are adjacent in `self` (at least one arc either way).
    pub fn underlying_graph(&self) -> Digraph {
        let mut g = Digraph::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.has_arc(u, v) {
                    g.add_arc(u, v);
                    g.add_arc(v, u);
                }
            }
        }
        g
    }

    /// The digraph with every arc reversed. Leaves S(D) unchanged.
    pub fn reverse(&self) -> Digraph {
        let mut r = Digraph::empty(self.n);
        for (u, v) in self.arcs() {
            r.add_arc(v, u);
        }
        r
    }

    /// The subdigraph induced by `s`, together with the index mapping:
    /// vertex `i` of the result is vertex `mapping[i]` of `self`
    /// (ascending order). Certificates on the result translate back to
    /// original labels through the mapping.
    ///
    /// Panics if `s` does not live in this digraph's vertex range.
    pub fn induced(&self, s: &VertexSet) -> (Digraph, Vec<usize>) {
        assert!(
            s.universe() == self.n,
            "vertex set universe {} does not match digraph order {}",
            s.universe(),
            self.n
        );
        let mapping: Vec<usize> = s.iter().collect();
        let mut d = Digraph::empty(mapping.len());
        for (i, &u) in mapping.iter().enumerate() {
            for (j, &v) in mapping.iter().enumerate() {
                if i != j && self.has_arc(u, v) {
                    d.add_arc(i, j);
                }
            }
        }
        (d, mapping)
    }

    /// The substitution D[H₁,…,Hₙ]: the disjoint union of the parts plus,
    /// for every arc `i -> j` of `self`, all arcs from part `i` to part
    /// `j`. Part `i` occupies the contiguous label block starting at the
    /// sum of the preceding part sizes.
    pub fn substitution(&self, parts: &[Digraph]) -> Result<Digraph> {
        if parts.len() != self.n {
            return Err(Error::SubstitutionArity {
                expected: self.n,
                got: parts.len(),
            });
        }
        if let Some(index) = parts.iter().position(|h| h.n() == 0) {
            return Err(Error::EmptySubstitutionPart { index });
        }
        let mut offsets = Vec::with_capacity(self.n + 1);
        let mut total = 0;
        for h in parts {
            offsets.push(total);
            total += h.n();
        }
        offsets.push(total);

        let mut d = Digraph::empty(total);
        for (i, h) in parts.iter().enumerate() {
            for (u, v) in h.arcs() {
                d.add_arc(offsets[i] + u, offsets[i] + v);
            }
        }
        for (i, j) in self.arcs() {
            for x in offsets[i]..offsets[i + 1] {
                for y in offsets[j]..offsets[j + 1] {
                    d.add_arc(x, y);
                }
            }
        }
        Ok(d)
    }

    /// Which neighbourhood cell of `v` the vertex `u` occupies, or `None`
    /// if `u` is not a neighbour of `v`.
    pub fn sync_class(&self, v: usize, u: usize) -> Option<SyncClass> {
        if u == v {
            return None;
        }
        match (self.has_arc(u, v), self.has_arc(v, u)) {
            (true, true) => Some(SyncClass::InOut),
            (true, false) => Some(SyncClass::InOnly),
            (false, true) => Some(SyncClass::OutOnly),
            (false, false) => None,
        }
    }

    /// True iff `u` and `w` are synchronous neighbours of `v`: both in
    /// N⁻(v)∖N⁺(v), both in N⁺(v)∖N⁻(v), or both in N⁻(v)∩N⁺(v).
    ///
    /// Panics unless `u` and `w` are distinct neighbours of `v`.
    pub fn synchronous(&self, v: usize, u: usize, w: usize) -> bool {
        assert!(u != w, "synchronous requires two distinct neighbours");
        let cu = self
            .sync_class(v, u)
            .unwrap_or_else(|| panic!("vertex {u} is not a neighbour of {v}"));
        let cw = self
            .sync_class(v, w)
            .unwrap_or_else(|| panic!("vertex {w} is not a neighbour of {v}"));
        cu == cw
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=[", self.n)?;
        for (i, (u, v)) in self.arcs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}->{v}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pair_relation_on_fixtures() {
        let digon = fixtures::digon();
        assert_eq!(digon.pair_relation(0, 1), PairRelation::Symmetric);

        let c3 = fixtures::directed_cycle(3);
        assert_eq!(c3.pair_relation(0, 1), PairRelation::Forward);
        assert_eq!(c3.pair_relation(1, 0), PairRelation::Backward);

        let e2 = Digraph::empty(2);
        assert_eq!(e2.pair_relation(0, 1), PairRelation::NonAdjacent);
    }

    #[test]
    #[should_panic(expected = "distinct")]
    fn pair_relation_rejects_equal_vertices() {
        fixtures::digon().pair_relation(1, 1);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn pair_relation_rejects_out_of_range() {
        fixtures::digon().pair_relation(0, 2);
    }

    #[test]
    fn neighbourhoods() {
        let c3 = fixtures::directed_cycle(3);
        assert_eq!(c3.in_nbrs(1), VertexSet::with_members(3, [0]));
        assert_eq!(c3.out_nbrs(1), VertexSet::with_members(3, [2]));

        let digon = fixtures::digon();
        assert_eq!(digon.in_nbrs(0), VertexSet::with_members(2, [1]));
        assert_eq!(digon.out_nbrs(0), VertexSet::with_members(2, [1]));

        let mut lonely = Digraph::empty(3);
        lonely.add_arc(0, 1);
        assert!(lonely.in_nbrs(2).is_empty());
        assert!(lonely.out_nbrs(2).is_empty());
    }

    #[test]
    fn symmetric_part_of_fixtures() {
        let c3 = fixtures::directed_cycle(3);
        assert_eq!(c3.symmetric_part(), Digraph::empty(3));

        // Digons of obstruction A sit on the pairs {0,2}, {1,3}, {2,3}.
        let s = fixtures::obstruction_a().symmetric_part();
        let expected = Digraph::from_arcs(4, [(0, 2), (2, 0), (1, 3), (3, 1), (2, 3), (3, 2)]).unwrap();
        assert_eq!(s, expected);

        let c4s = fixtures::symmetric_cycle(4);
        assert_eq!(c4s.symmetric_part(), c4s);
    }

    #[test]
    fn underlying_graph_examples() {
        let c3 = fixtures::directed_cycle(3);
        assert_eq!(c3.underlying_graph(), fixtures::symmetric_cycle(3));

        assert_eq!(Digraph::empty(4).underlying_graph(), Digraph::empty(4));

        // Every pair of obstruction C is adjacent, so U is the complete
        // symmetric digraph on four vertices.
        let u = fixtures::obstruction_c().underlying_graph();
        for v in 0..4 {
            for w in 0..4 {
                assert_eq!(u.has_arc(v, w), v != w);
            }
        }
    }

    #[test]
    fn induced_subdigraph_examples() {
        let fa = fixtures::obstruction_a();
        let (whole, mapping) = fa.induced(&VertexSet::full(4));
        assert_eq!(whole, fa);
        assert_eq!(mapping, vec![0, 1, 2, 3]);

        // Restricting obstruction A to {0,1,2} keeps the path 0->1->2 and
        // the digon {0,2}.
        let (sub, mapping) = fa.induced(&VertexSet::with_members(4, [0, 1, 2]));
        assert_eq!(mapping, vec![0, 1, 2]);
        assert_eq!(sub, Digraph::from_arcs(3, [(0, 1), (1, 2), (0, 2), (2, 0)]).unwrap());

        let (single, _) = fa.induced(&VertexSet::singleton(4, 3));
        assert_eq!(single, Digraph::empty(1));
    }

    #[test]
    fn substitution_examples() {
        let fa = fixtures::obstruction_a();
        let singletons = vec![Digraph::empty(1); 4];
        assert_eq!(fa.substitution(&singletons).unwrap(), fa);

        let c3 = fixtures::directed_cycle(3);
        assert_eq!(
            Digraph::empty(1).substitution(std::slice::from_ref(&c3)).unwrap(),
            c3
        );

        let blown = fixtures::digon()
            .substitution(&[Digraph::empty(2), Digraph::empty(1)])
            .unwrap();
        let expected = Digraph::from_arcs(3, [(0, 2), (2, 0), (1, 2), (2, 1)]).unwrap();
        assert_eq!(blown, expected);
    }

    #[test]
    #[should_panic(expected = "universe")]
    fn induced_rejects_foreign_vertex_sets() {
        fixtures::obstruction_a().induced(&VertexSet::with_members(5, [0, 1]));
    }

    #[test]
    fn substitution_errors() {
        let digon = fixtures::digon();
        assert!(matches!(
            digon.substitution(&[Digraph::empty(1)]),
            Err(Error::SubstitutionArity { expected: 2, got: 1 })
        ));
        assert!(matches!(
            digon.substitution(&[Digraph::empty(1), Digraph::empty(0)]),
            Err(Error::EmptySubstitutionPart { index: 1 })
        ));
    }

    #[test]
    fn synchronous_examples() {
        let c3 = fixtures::directed_cycle(3);
        assert!(!c3.synchronous(1, 0, 2));

        let triangle = fixtures::symmetric_cycle(3);
        assert!(triangle.synchronous(0, 1, 2));
        assert!(triangle.synchronous(1, 0, 2));
        assert!(triangle.synchronous(2, 0, 1));

        // Obstruction B at v=0: 2 is a digon neighbour, 1 an out-only one.
        let fb = fixtures::obstruction_b();
        assert!(!fb.synchronous(0, 2, 1));
    }

    #[test]
    #[should_panic(expected = "not a neighbour")]
    fn synchronous_rejects_non_neighbours() {
        // 0 and 2 are not adjacent in the directed 4-cycle.
        fixtures::directed_cycle(4).synchronous(0, 2, 1);
    }

    #[test]
    fn from_arcs_rejects_loops_and_range() {
        assert!(matches!(
            Digraph::from_arcs(3, [(1, 1)]),
            Err(Error::InvalidArc { u: 1, v: 1, n: 3 })
        ));
        assert!(matches!(
            Digraph::from_arcs(3, [(0, 3)]),
            Err(Error::InvalidArc { .. })
        ));
    }

    #[test]
    fn reverse_preserves_symmetric_part() {
        let fb = fixtures::obstruction_b();
        assert_eq!(fb.reverse().symmetric_part(), fb.symmetric_part());
        assert_eq!(fb.reverse().reverse(), fb);
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::empty(70);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(69);
        assert_eq!(s.len(), 2);
        assert!(s.contains(69));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 69]);
        s.remove(0);
        assert_eq!(s.min(), Some(69));
        assert_eq!(format!("{}", VertexSet::with_members(5, [0, 2, 3])), "{0, 2, 3}");
    }
}
