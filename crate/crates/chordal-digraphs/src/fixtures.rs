//! Named construction helpers for the small digraphs used throughout the
//! tests and as forbidden-pattern templates.

use crate::digraph::Digraph;

/// Two vertices joined by a digon.
pub fn digon() -> Digraph {
    Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap()
}

/// The directed cycle 0 -> 1 -> … -> n-1 -> 0 of non-symmetric arcs.
/// Requires `n >= 3`; a 2-cycle would be a digon, not an oriented cycle.
pub fn directed_cycle(n: usize) -> Digraph {
    assert!(n >= 3, "a directed cycle needs at least 3 vertices");
    Digraph::from_arcs(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
}

/// The cycle 0 - 1 - … - n-1 - 0 with a digon on every edge.
pub fn symmetric_cycle(n: usize) -> Digraph {
    assert!(n >= 3);
    Digraph::from_arcs(
        n,
        (0..n).flat_map(|v| [(v, (v + 1) % n), ((v + 1) % n, v)]),
    )
    .unwrap()
}

/// The path 0 - 1 - … - n-1 with a digon on every edge.
pub fn symmetric_path(n: usize) -> Digraph {
    Digraph::from_arcs(n, (1..n).flat_map(|v| [(v - 1, v), (v, v - 1)])).unwrap()
}

/// The transitive tournament: `u -> v` for all `u < v`.
pub fn transitive_tournament(n: usize) -> Digraph {
    Digraph::from_arcs(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// First minimal non-chordal semicomplete obstruction: the oriented
/// 4-cycle 0 -> 1 -> 2, 3 -> 0 with digons on {2,3}, {0,2} and {1,3}.
pub fn obstruction_a() -> Digraph {
    Digraph::from_arcs(
        4,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 2),
            (3, 0),
            (0, 2),
            (2, 0),
            (1, 3),
            (3, 1),
        ],
    )
    .unwrap()
}

/// Second obstruction: the oriented 4-cycle 0 -> 1 -> 2 -> 3 -> 0 with
/// digons on both diagonals.
pub fn obstruction_b() -> Digraph {
    Digraph::from_arcs(
        4,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (0, 2),
            (2, 0),
            (1, 3),
            (3, 1),
        ],
    )
    .unwrap()
}

/// Third obstruction: arcs 0 -> 1 -> 2, 3 -> 2, 3 -> 0 with digons on
/// both diagonals.
pub fn obstruction_c() -> Digraph {
    Digraph::from_arcs(
        4,
        [
            (0, 1),
            (1, 2),
            (3, 2),
            (3, 0),
            (0, 2),
            (2, 0),
            (1, 3),
            (3, 1),
        ],
    )
    .unwrap()
}

/// Fourth obstruction: the directed triangle of non-symmetric arcs.
pub fn obstruction_d() -> Digraph {
    directed_cycle(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn obstruction_arc_counts() {
        assert_eq!(obstruction_a().arc_count(), 9);
        assert_eq!(obstruction_b().arc_count(), 8);
        assert_eq!(obstruction_c().arc_count(), 8);
        assert_eq!(obstruction_d().arc_count(), 3);
    }

    #[test]
    fn small_fixtures() {
        assert_eq!(digon().arc_count(), 2);
        assert_eq!(transitive_tournament(3).arc_count(), 3);
        assert_eq!(symmetric_cycle(4).arc_count(), 8);
        assert_eq!(symmetric_path(3).arc_count(), 4);
        assert_eq!(directed_cycle(4).arc_count(), 4);
    }
}
