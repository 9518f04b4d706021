//! Detection of the four minimal non-chordal semicomplete obstructions,
//! induced non-symmetric directed cycles and symmetric holes, plus the
//! characterization predicates built from them.

use crate::chordality::{self, ChordalityCertificate};
use crate::classes::{self, ClassLabel};
use crate::digraph::{Digraph, PairRelation};
use crate::error::{Error, Result};
use crate::fixtures;
use std::fmt;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ForbiddenKind {
    ObstructionA,
    ObstructionB,
    ObstructionC,
    ObstructionD,
    NonSymmetricInducedCycle,
    SymmetricInducedHole,
}

impl ForbiddenKind {
    pub fn token(self) -> &'static str {
        match self {
            ForbiddenKind::ObstructionA => "obstruction-a",
            ForbiddenKind::ObstructionB => "obstruction-b",
            ForbiddenKind::ObstructionC => "obstruction-c",
            ForbiddenKind::ObstructionD => "obstruction-d",
            ForbiddenKind::NonSymmetricInducedCycle => "nonsymmetric-cycle",
            ForbiddenKind::SymmetricInducedHole => "symmetric-hole",
        }
    }
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A forbidden structure embedded in a digraph. For obstruction kinds
/// the vertex list realizes the pattern in template order; for cycle
/// kinds it lists the cycle in traversal order starting at its smallest
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenWitness {
    pub kind: ForbiddenKind,
    pub vertices: Vec<usize>,
}

impl fmt::Display for ForbiddenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.kind)?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

struct PatternTemplate {
    kind: ForbiddenKind,
    digraph: Digraph,
    automorphisms: Vec<Vec<usize>>,
}

fn templates() -> &'static [PatternTemplate; 4] {
    static TEMPLATES: OnceLock<[PatternTemplate; 4]> = OnceLock::new();
    TEMPLATES.get_or_init(|| {
        [
            PatternTemplate::new(ForbiddenKind::ObstructionA, fixtures::obstruction_a()),
            PatternTemplate::new(ForbiddenKind::ObstructionB, fixtures::obstruction_b()),
            PatternTemplate::new(ForbiddenKind::ObstructionC, fixtures::obstruction_c()),
            PatternTemplate::new(ForbiddenKind::ObstructionD, fixtures::obstruction_d()),
        ]
    })
}

impl PatternTemplate {
    fn new(kind: ForbiddenKind, digraph: Digraph) -> Self {
        let automorphisms = automorphisms_of(&digraph);
        PatternTemplate {
            kind,
            digraph,
            automorphisms,
        }
    }
}

fn automorphisms_of(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    permute_all(&mut perm, 0, &mut |p| {
        let preserves = (0..n).all(|i| {
            (0..n).all(|j| i == j || d.has_arc(i, j) == d.has_arc(p[i], p[j]))
        });
        if preserves {
            out.push(p.to_vec());
        }
    });
    out
}

fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Runs `visit` on every induced occurrence of the four obstructions, at
/// most once per automorphism orbit, in kind order then lexicographic
/// tuple order. Stops early when `visit` returns `true`.
fn scan_with(d: &Digraph, visit: &mut impl FnMut(ForbiddenWitness) -> bool) {
    for template in templates() {
        let k = template.digraph.n();
        if d.n() < k {
            continue;
        }
        let mut tuple = Vec::with_capacity(k);
        if scan_rec(d, template, &mut tuple, visit) {
            return;
        }
    }
}

fn scan_rec(
    d: &Digraph,
    template: &PatternTemplate,
    tuple: &mut Vec<usize>,
    visit: &mut impl FnMut(ForbiddenWitness) -> bool,
) -> bool {
    let k = template.digraph.n();
    if tuple.len() == k {
        if is_canonical(tuple, &template.automorphisms) {
            return visit(ForbiddenWitness {
                kind: template.kind,
                vertices: tuple.clone(),
            });
        }
        return false;
    }
    let i = tuple.len();
    'candidates: for v in 0..d.n() {
        if tuple.contains(&v) {
            continue;
        }
        for (j, &u) in tuple.iter().enumerate() {
            if d.has_arc(u, v) != template.digraph.has_arc(j, i)
                || d.has_arc(v, u) != template.digraph.has_arc(i, j)
            {
                continue 'candidates;
            }
        }
        tuple.push(v);
        if scan_rec(d, template, tuple, visit) {
            return true;
        }
        tuple.pop();
    }
    false
}

/// A tuple represents its automorphism orbit iff it is the
/// lexicographically smallest relabeling within the orbit.
fn is_canonical(tuple: &[usize], automorphisms: &[Vec<usize>]) -> bool {
    let mut image = vec![0usize; tuple.len()];
    for sigma in automorphisms {
        for (i, &s) in sigma.iter().enumerate() {
            image[i] = tuple[s];
        }
        if image.as_slice() < tuple {
            return false;
        }
    }
    true
}

/// Every induced occurrence of the four obstruction patterns, one
/// witness per automorphism orbit, in deterministic order.
pub fn scan_obstructions(d: &Digraph) -> Vec<ForbiddenWitness> {
    let mut out = Vec::new();
    scan_with(d, &mut |w| {
        out.push(w);
        false
    });
    out
}

/// First obstruction witness in scan order, if any.
pub fn first_obstruction(d: &Digraph) -> Option<ForbiddenWitness> {
    let mut found = None;
    scan_with(d, &mut |w| {
        found = Some(w);
        true
    });
    found
}

/// Depth-first search for a shortest induced directed cycle of length at
/// least `min_len` whose arcs are all non-symmetric, with no arcs of `d`
/// between non-consecutive cycle vertices. Every partial path is kept
/// induced, which prunes the exponential search hard in practice.
///
/// The witness lists the lexicographically least rotation: the cycle is
/// reported starting at its smallest vertex.
pub fn find_induced_nonsymmetric_cycle(d: &Digraph, min_len: usize) -> Option<ForbiddenWitness> {
    assert!(min_len >= 3, "directed cycles of non-symmetric arcs have length >= 3");
    let step = |d: &Digraph, from: usize, to: usize| d.has_arc(from, to) && !d.has_arc(to, from);
    let separate = |d: &Digraph, a: usize, b: usize| !d.is_adjacent(a, b);
    find_induced_cycle_with(d, min_len, step, separate).map(|vertices| ForbiddenWitness {
        kind: ForbiddenKind::NonSymmetricInducedCycle,
        vertices,
    })
}

/// Chordless cycle of length >= `min_len` in a symmetric digraph.
pub fn find_induced_hole(g: &Digraph, min_len: usize) -> Option<Vec<usize>> {
    let step = |g: &Digraph, from: usize, to: usize| g.has_arc(from, to);
    let separate = |g: &Digraph, a: usize, b: usize| !g.is_adjacent(a, b);
    find_induced_cycle_with(g, min_len, step, separate)
}

/// Iterative-deepening backtracking core shared by the two cycle
/// searches. `step` decides whether two vertices may be consecutive on
/// the cycle, `separate` whether two vertices may be non-consecutive.
fn find_induced_cycle_with(
    d: &Digraph,
    min_len: usize,
    step: impl Fn(&Digraph, usize, usize) -> bool + Copy,
    separate: impl Fn(&Digraph, usize, usize) -> bool + Copy,
) -> Option<Vec<usize>> {
    let n = d.n();
    for target in min_len..=n {
        for start in 0..n {
            let mut path = vec![start];
            if extend_cycle(d, &mut path, target, step, separate) {
                return Some(path);
            }
        }
    }
    None
}

fn extend_cycle(
    d: &Digraph,
    path: &mut Vec<usize>,
    target: usize,
    step: impl Fn(&Digraph, usize, usize) -> bool + Copy,
    separate: impl Fn(&Digraph, usize, usize) -> bool + Copy,
) -> bool {
    let start = path[0];
    let last = *path.last().unwrap();
    if path.len() == target {
        return step(d, last, start);
    }
    'candidates: for v in start + 1..d.n() {
        if path.contains(&v) || !step(d, last, v) {
            continue;
        }
        // Induced-ness against everything except the predecessor; the
        // start vertex only becomes a neighbour for the closing vertex.
        if path.len() >= 2 {
            for &p in &path[1..path.len() - 1] {
                if !separate(d, v, p) {
                    continue 'candidates;
                }
            }
        }
        // Vertices at positions 3..target-1 must avoid the start; the
        // second vertex and the closing vertex are consecutive to it.
        if path.len() >= 2 && path.len() + 1 < target && !separate(d, v, start) {
            continue;
        }
        path.push(v);
        if extend_cycle(d, path, target, step, separate) {
            return true;
        }
        path.pop();
    }
    false
}

/// Chordality of the symmetric part: `None` when S(D) is chordal,
/// otherwise a hole of S(D) as a witness. Decided by greedy elimination
/// on S(D); the hole is then extracted by direct search.
pub fn sd_hole(d: &Digraph) -> Option<ForbiddenWitness> {
    let s = d.symmetric_part();
    match chordality::greedy_eliminate(&s) {
        ChordalityCertificate::Peo(_) => None,
        ChordalityCertificate::Stuck { .. } => {
            let vertices = find_induced_hole(&s, 4)
                .expect("a non-chordal symmetric digraph must contain a hole");
            Some(ForbiddenWitness {
                kind: ForbiddenKind::SymmetricInducedHole,
                vertices,
            })
        }
    }
}

pub fn is_sd_chordal(d: &Digraph) -> bool {
    sd_hole(d).is_none()
}

/// Verdict of a characterization predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Characterization {
    Chordal,
    NotChordal(ForbiddenWitness),
}

impl Characterization {
    pub fn holds(&self) -> bool {
        matches!(self, Characterization::Chordal)
    }
}

/// A semicomplete digraph is chordal iff its symmetric part is chordal
/// and it embeds none of the four obstructions.
pub fn semicomplete_chordal_characterization(d: &Digraph) -> Result<Characterization> {
    if let Some(witness) = classes::semicomplete_violation(d) {
        return Err(Error::NotInClass {
            class: ClassLabel::Semicomplete,
            witness,
        });
    }
    Ok(characterize_core(d, false))
}

/// A locally semicomplete digraph is chordal iff its symmetric part is
/// chordal and it embeds neither an obstruction nor an induced directed
/// cycle of non-symmetric arcs. Induced 3-cycles coincide with
/// obstruction D, so the cycle search only ever reports length >= 4.
pub fn lsd_chordal_characterization(d: &Digraph) -> Result<Characterization> {
    if let Some(witness) = classes::locally_semicomplete_violation(d) {
        return Err(Error::NotInClass {
            class: ClassLabel::LocallySemicomplete,
            witness,
        });
    }
    Ok(characterize_core(d, true))
}

/// A weakly quasi-transitive digraph is chordal iff its symmetric part
/// is chordal and it embeds none of the four obstructions.
pub fn wqt_chordal_characterization(d: &Digraph) -> Result<Characterization> {
    if let Some(witness) = classes::weakly_quasi_transitive_violation(d) {
        return Err(Error::NotInClass {
            class: ClassLabel::WeaklyQuasiTransitive,
            witness,
        });
    }
    Ok(characterize_core(d, false))
}

fn characterize_core(d: &Digraph, check_cycles: bool) -> Characterization {
    if let Some(hole) = sd_hole(d) {
        return Characterization::NotChordal(hole);
    }
    if let Some(pattern) = first_obstruction(d) {
        return Characterization::NotChordal(pattern);
    }
    if check_cycles {
        if let Some(cycle) = find_induced_nonsymmetric_cycle(d, 3) {
            return Characterization::NotChordal(cycle);
        }
    }
    Characterization::Chordal
}

/// Re-checks a witness by direct inspection of the induced structure.
pub fn verify_witness(d: &Digraph, witness: &ForbiddenWitness) -> bool {
    let vs = &witness.vertices;
    if vs.iter().any(|&v| v >= d.n()) {
        return false;
    }
    let mut distinct = vs.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != vs.len() {
        return false;
    }
    match witness.kind {
        ForbiddenKind::ObstructionA
        | ForbiddenKind::ObstructionB
        | ForbiddenKind::ObstructionC
        | ForbiddenKind::ObstructionD => {
            let template = &templates()
                .iter()
                .find(|t| t.kind == witness.kind)
                .unwrap()
                .digraph;
            if vs.len() != template.n() {
                return false;
            }
            (0..vs.len()).all(|i| {
                (0..vs.len()).all(|j| i == j || d.has_arc(vs[i], vs[j]) == template.has_arc(i, j))
            })
        }
        ForbiddenKind::NonSymmetricInducedCycle => {
            verify_cycle(vs, |a, b| d.pair_relation(a, b) == PairRelation::Forward, |a, b| {
                !d.is_adjacent(a, b)
            }) && vs.len() >= 3
        }
        ForbiddenKind::SymmetricInducedHole => {
            let s = d.symmetric_part();
            verify_cycle(
                vs,
                |a, b| s.pair_relation(a, b) == PairRelation::Symmetric,
                |a, b| !s.is_adjacent(a, b),
            ) && vs.len() >= 4
        }
    }
}

fn verify_cycle(
    vs: &[usize],
    consecutive: impl Fn(usize, usize) -> bool,
    nonconsecutive: impl Fn(usize, usize) -> bool,
) -> bool {
    let k = vs.len();
    for i in 0..k {
        for j in i + 1..k {
            let adjacent_on_cycle = j == i + 1 || (i == 0 && j == k - 1);
            if adjacent_on_cycle {
                let (a, b) = if j == i + 1 { (vs[i], vs[j]) } else { (vs[j], vs[i]) };
                if !consecutive(a, b) {
                    return false;
                }
            } else if !nonconsecutive(vs[i], vs[j]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle;

    #[test]
    fn template_automorphism_sanity() {
        let counts: Vec<usize> = templates().iter().map(|t| t.automorphisms.len()).collect();
        // The directed triangle has its three rotations; the identity is
        // always present.
        assert_eq!(counts[3], 3);
        for c in &counts {
            assert!(*c >= 1);
        }
    }

    #[test]
    fn scan_finds_each_fixture_once() {
        let witnesses = scan_obstructions(&fixtures::obstruction_a());
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].kind, ForbiddenKind::ObstructionA);
        assert!(verify_witness(&fixtures::obstruction_a(), &witnesses[0]));

        let witnesses = scan_obstructions(&fixtures::obstruction_b());
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].kind, ForbiddenKind::ObstructionB);

        let witnesses = scan_obstructions(&fixtures::obstruction_c());
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].kind, ForbiddenKind::ObstructionC);

        let witnesses = scan_obstructions(&fixtures::obstruction_d());
        assert_eq!(witnesses, vec![ForbiddenWitness {
            kind: ForbiddenKind::ObstructionD,
            vertices: vec![0, 1, 2],
        }]);

        assert!(scan_obstructions(&fixtures::transitive_tournament(3)).is_empty());
        assert!(scan_obstructions(&fixtures::transitive_tournament(6)).is_empty());
    }

    #[test]
    fn nonsymmetric_cycle_examples() {
        let c4 = fixtures::directed_cycle(4);
        let w = find_induced_nonsymmetric_cycle(&c4, 3).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);
        assert!(verify_witness(&c4, &w));

        assert!(find_induced_nonsymmetric_cycle(&fixtures::directed_cycle(3), 4).is_none());

        // Every 3-subset of obstruction A contains a symmetric arc or no
        // cycle; the subset oracle agrees.
        let fa = fixtures::obstruction_a();
        assert!(find_induced_nonsymmetric_cycle(&fa, 3).is_none());
        assert!(!oracle::has_induced_nonsymmetric_cycle(&fa, 3));
    }

    #[test]
    #[should_panic(expected = "length >= 3")]
    fn cycle_search_rejects_short_targets() {
        find_induced_nonsymmetric_cycle(&fixtures::directed_cycle(4), 2);
    }

    #[test]
    fn cycle_search_reports_smallest_rotation() {
        // 5-cycle relabeled so the cycle order is not the label order.
        let d = Digraph::from_arcs(5, [(2, 0), (0, 3), (3, 1), (1, 4), (4, 2)]).unwrap();
        let w = find_induced_nonsymmetric_cycle(&d, 3).unwrap();
        assert_eq!(w.vertices[0], 0);
        assert!(verify_witness(&d, &w));
    }

    #[test]
    fn sd_chordality_examples() {
        let hole = sd_hole(&fixtures::symmetric_cycle(4)).unwrap();
        assert_eq!(hole.kind, ForbiddenKind::SymmetricInducedHole);
        assert_eq!(hole.vertices, vec![0, 1, 2, 3]);

        assert!(is_sd_chordal(&fixtures::directed_cycle(5)));
        assert!(is_sd_chordal(&fixtures::obstruction_b()));
    }

    #[test]
    fn semicomplete_characterization_examples() {
        let verdict = semicomplete_chordal_characterization(&fixtures::obstruction_c()).unwrap();
        match verdict {
            Characterization::NotChordal(w) => assert_eq!(w.kind, ForbiddenKind::ObstructionC),
            Characterization::Chordal => panic!("obstruction C is not chordal"),
        }

        assert!(semicomplete_chordal_characterization(&fixtures::transitive_tournament(3))
            .unwrap()
            .holds());

        let err = semicomplete_chordal_characterization(&fixtures::directed_cycle(4)).unwrap_err();
        assert!(matches!(err, Error::NotInClass { class: ClassLabel::Semicomplete, .. }));
    }

    #[test]
    fn lsd_characterization_examples() {
        let verdict = lsd_chordal_characterization(&fixtures::directed_cycle(4)).unwrap();
        match verdict {
            Characterization::NotChordal(w) => {
                assert_eq!(w.kind, ForbiddenKind::NonSymmetricInducedCycle);
                assert_eq!(w.vertices, vec![0, 1, 2, 3]);
            }
            Characterization::Chordal => panic!("oriented 4-cycle is not chordal"),
        }
        assert!(lsd_chordal_characterization(&fixtures::transitive_tournament(3))
            .unwrap()
            .holds());
        assert!(lsd_chordal_characterization(&fixtures::symmetric_cycle(4)).is_err());
    }

    #[test]
    fn wqt_characterization_examples() {
        let verdict = wqt_chordal_characterization(&fixtures::symmetric_cycle(4)).unwrap();
        match verdict {
            Characterization::NotChordal(w) => {
                assert_eq!(w.kind, ForbiddenKind::SymmetricInducedHole)
            }
            Characterization::Chordal => panic!("symmetric 4-cycle is not chordal"),
        }

        let verdict = wqt_chordal_characterization(&fixtures::obstruction_d()).unwrap();
        match verdict {
            Characterization::NotChordal(w) => assert_eq!(w.kind, ForbiddenKind::ObstructionD),
            Characterization::Chordal => panic!("directed triangle is not chordal"),
        }

        assert!(wqt_chordal_characterization(&fixtures::directed_cycle(4)).is_err());
    }
}
