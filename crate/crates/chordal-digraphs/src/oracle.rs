//! Brute-force reference implementations used to cross-check the
//! production algorithms. Everything here works straight from the
//! definitions via `Digraph::has_arc` and deliberately shares no code
//! with the modules it verifies; keep it that way.

use crate::digraph::Digraph;

/// Definition-literal di-simplicial test restricted to the vertices of
/// `members` (a bitmask over 0..n).
fn di_simplicial_in_mask(d: &Digraph, v: usize, members: u64) -> bool {
    for u in 0..d.n() {
        if members >> u & 1 == 0 || u == v || !d.has_arc(u, v) {
            continue;
        }
        for w in 0..d.n() {
            if members >> w & 1 == 0 || w == v || w == u || !d.has_arc(v, w) {
                continue;
            }
            if !d.has_arc(u, w) {
                return false;
            }
        }
    }
    true
}

/// True iff `v` is di-simplicial in `d`, by the raw definition.
pub fn di_simplicial(d: &Digraph, v: usize) -> bool {
    assert!(d.n() <= 64, "oracle supports at most 64 vertices");
    let all = if d.n() == 64 { !0 } else { (1u64 << d.n()) - 1 };
    di_simplicial_in_mask(d, v, all)
}

/// Chordality by exhaustive definition: every nonempty induced
/// subdigraph (all 2^n vertex subsets) contains a di-simplicial vertex.
pub fn chordal(d: &Digraph) -> bool {
    let n = d.n();
    assert!(n <= 24, "subset oracle is exponential; keep n small");
    for mask in 1u64..1 << n {
        let mut found = false;
        for v in 0..n {
            if mask >> v & 1 == 1 && di_simplicial_in_mask(d, v, mask) {
                found = true;
                break;
            }
        }
        if !found {
            return false;
        }
    }
    true
}

/// Classical simplicial-vertex elimination on an undirected graph given
/// as a symmetric digraph: repeatedly delete a vertex whose remaining
/// neighbourhood is a clique.
pub fn graph_chordal_by_elimination(g: &Digraph) -> bool {
    let n = g.n();
    let mut alive: Vec<bool> = vec![true; n];
    for _ in 0..n {
        let mut eliminated = false;
        'candidates: for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nbrs: Vec<usize> = (0..n)
                .filter(|&u| alive[u] && u != v && (g.has_arc(u, v) || g.has_arc(v, u)))
                .collect();
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if !(g.has_arc(a, b) || g.has_arc(b, a)) {
                        continue 'candidates;
                    }
                }
            }
            alive[v] = false;
            eliminated = true;
            break;
        }
        if !eliminated {
            return false;
        }
    }
    true
}

/// True iff some vertex subset of size >= `min_len` induces a directed
/// cycle all of whose arcs are non-symmetric. Checking the induced
/// subdigraph directly makes induced-ness automatic: the subset must
/// induce exactly the cycle arcs and nothing else.
pub fn has_induced_nonsymmetric_cycle(d: &Digraph, min_len: usize) -> bool {
    let n = d.n();
    assert!(n <= 24);
    'subsets: for mask in 1u64..1 << n {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let k = members.len();
        if k < min_len {
            continue;
        }
        // Every member needs in- and out-degree exactly one inside the
        // subset, with no symmetric arcs.
        let mut succ = vec![usize::MAX; n];
        for &u in &members {
            let mut out = 0;
            let mut inn = 0;
            for &v in &members {
                if u == v {
                    continue;
                }
                if d.has_arc(u, v) {
                    if d.has_arc(v, u) {
                        continue 'subsets;
                    }
                    out += 1;
                    succ[u] = v;
                }
                if d.has_arc(v, u) {
                    inn += 1;
                }
            }
            if out != 1 || inn != 1 {
                continue 'subsets;
            }
        }
        // Out-degrees of one everywhere form a union of cycles; a single
        // cycle must come back to the start after exactly k steps.
        let start = members[0];
        let mut cur = start;
        for _ in 0..k {
            cur = succ[cur];
        }
        if cur == start {
            let mut seen = 1;
            let mut walk = succ[start];
            while walk != start {
                seen += 1;
                walk = succ[walk];
            }
            if seen == k {
                return true;
            }
        }
    }
    false
}

/// True iff some vertex subset of size >= 4 of the symmetric digraph `g`
/// induces a chordless cycle (every member has exactly two neighbours in
/// the subset and the subset is connected).
pub fn has_induced_long_hole(g: &Digraph) -> bool {
    let n = g.n();
    assert!(n <= 24);
    'subsets: for mask in 1u64..1 << n {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let k = members.len();
        if k < 4 {
            continue;
        }
        for &u in &members {
            let deg = members
                .iter()
                .filter(|&&v| v != u && (g.has_arc(u, v) || g.has_arc(v, u)))
                .count();
            if deg != 2 {
                continue 'subsets;
            }
        }
        // Degree-2 everywhere means disjoint cycles; connectivity makes
        // it a single one.
        let mut stack = vec![members[0]];
        let mut seen = vec![false; n];
        seen[members[0]] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &members {
                if !seen[v] && v != u && (g.has_arc(u, v) || g.has_arc(v, u)) {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        if count == k {
            return true;
        }
    }
    false
}

/// Exhaustive extended-semicomplete test: does some partition of the
/// vertices into independent blocks with block-uniform relations have a
/// semicomplete quotient? Partitions are enumerated through restricted
/// growth strings, so keep n small.
pub fn extended_semicomplete(d: &Digraph) -> bool {
    let n = d.n();
    assert!(n <= 8, "partition oracle is exponential; keep n small");
    if n == 0 {
        return true;
    }
    let mut rgs = vec![0usize; n];
    loop {
        if partition_witnesses_esc(d, &rgs) {
            return true;
        }
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return false;
            }
            let max_prev = *rgs[..i].iter().max().unwrap();
            if rgs[i] <= max_prev {
                rgs[i] += 1;
                for r in rgs[i + 1..].iter_mut() {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

fn partition_witnesses_esc(d: &Digraph, rgs: &[usize]) -> bool {
    let n = d.n();
    let blocks = rgs.iter().max().map_or(0, |m| m + 1);
    // blocks independent
    for u in 0..n {
        for v in u + 1..n {
            let same = rgs[u] == rgs[v];
            let adjacent = d.has_arc(u, v) || d.has_arc(v, u);
            if same && adjacent {
                return false;
            }
        }
    }
    // inter-block relations uniform and at least one arc between blocks
    for a in 0..blocks {
        for b in 0..blocks {
            if a == b {
                continue;
            }
            let mut rel: Option<(bool, bool)> = None;
            for (u, &block_u) in rgs.iter().enumerate() {
                if block_u != a {
                    continue;
                }
                for (v, &block_v) in rgs.iter().enumerate() {
                    if block_v != b {
                        continue;
                    }
                    let cur = (d.has_arc(u, v), d.has_arc(v, u));
                    match rel {
                        None => rel = Some(cur),
                        Some(r) if r != cur => return false,
                        _ => {}
                    }
                }
            }
            if a < b {
                if let Some((f, g)) = rel {
                    if !f && !g {
                        return false; // quotient not semicomplete
                    }
                }
            }
        }
    }
    true
}
