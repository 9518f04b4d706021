//! Seeded random and exhaustive digraph generation for the property
//! campaigns. Identical configs always produce identical digraphs; each
//! generator draws from its own ChaCha stream derived from the seed.

use crate::digraph::{Digraph, PairRelation};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Strategy for [`gen_locally_semicomplete`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsdStrategy {
    /// Circular vertex order with consecutive out-intervals; sound for
    /// any size.
    Round,
    /// Uniform sampling filtered by the class predicate; n <= 6 only.
    Rejection,
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub n: usize,
    pub seed: u64,
    /// Density for the generators that take one; defaults to 0.5.
    pub p: f64,
    /// Depth budget for the recursive substitution generators.
    pub depth: usize,
    pub lsd_strategy: LsdStrategy,
}

impl GenConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        GenConfig {
            n,
            seed,
            p: 0.5,
            depth: 3,
            lsd_strategy: LsdStrategy::Round,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_lsd_strategy(mut self, strategy: LsdStrategy) -> Self {
        self.lsd_strategy = strategy;
        self
    }
}

const STREAM_SEMICOMPLETE: u64 = 1;
const STREAM_SYMMETRIC: u64 = 2;
const STREAM_TRANSITIVE_ORIENTED: u64 = 3;
const STREAM_WQT: u64 = 4;
const STREAM_QT: u64 = 5;
const STREAM_LSD: u64 = 6;
const STREAM_UNIFORM: u64 = 7;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Number of labeled loop-free digraphs on `n` vertices: one of four
/// states per unordered pair.
pub fn enumeration_count(n: usize) -> u64 {
    4u64.pow((n * (n - 1) / 2) as u32)
}

/// Decodes the digraph at `index` in the lexicographic enumeration:
/// pairs ordered (0,1), (0,2), …, the first pair varying slowest, pair
/// states ordered as in [`PairRelation`].
pub fn digraph_from_index(n: usize, index: u64) -> Digraph {
    let pair_count = n * (n - 1) / 2;
    let mut arcs = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            let digit = (index >> (2 * (pair_count - 1 - k))) & 3;
            match PairRelation::ALL[digit as usize] {
                PairRelation::NonAdjacent => {}
                PairRelation::Forward => arcs.push((u, v)),
                PairRelation::Backward => arcs.push((v, u)),
                PairRelation::Symmetric => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
            k += 1;
        }
    }
    Digraph::from_arcs(n, arcs).expect("enumeration produces valid arcs")
}

/// Every labeled loop-free digraph on `n` vertices exactly once,
/// supported for 1 <= n <= 5.
pub fn enumerate_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>> {
    if !(1..=5).contains(&n) {
        return Err(Error::UnsupportedPopulation(format!(
            "exhaustive enumeration supports 1 <= n <= 5, got {n}"
        )));
    }
    Ok((0..enumeration_count(n)).map(move |i| digraph_from_index(n, i)))
}

pub(crate) fn semicomplete_with(n: usize, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match rng.gen_range(0..3u8) {
                0 => arcs.push((u, v)),
                1 => arcs.push((v, u)),
                _ => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

pub(crate) fn tournament_with(n: usize, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<bool>() {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

pub(crate) fn symmetric_with(n: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                arcs.push((u, v));
                arcs.push((v, u));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

/// Random strict partial order: orient a sample of forward pairs along a
/// random permutation, then close transitively.
pub(crate) fn transitive_oriented_with(n: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let words = n.div_ceil(64).max(1);
    let mut reach = vec![0u64; n * words]; // position-indexed reachability
    let mut direct = vec![false; n * n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                direct[i * n + j] = true;
            }
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            if direct[i * n + j] {
                reach[i * words + j / 64] |= 1 << (j % 64);
                for w in 0..words {
                    let bits = reach[j * words + w];
                    reach[i * words + w] |= bits;
                }
            }
        }
    }
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if reach[i * words + j / 64] >> (j % 64) & 1 == 1 {
                arcs.push((perm[i], perm[j]));
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

pub(crate) fn uniform_with(n: usize, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match rng.gen_range(0..4u8) {
                0 => {}
                1 => arcs.push((u, v)),
                2 => arcs.push((v, u)),
                _ => {
                    arcs.push((u, v));
                    arcs.push((v, u));
                }
            }
        }
    }
    Digraph::from_arcs(n, arcs).unwrap()
}

/// Geometric-ish block sizes summing to `n`, at least two blocks when
/// `n >= 2`.
fn split_sizes(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let cap = if sizes.is_empty() && n >= 2 {
            remaining - 1
        } else {
            remaining
        };
        let mut b = 1;
        while b < cap && rng.gen::<bool>() {
            b += 1;
        }
        sizes.push(b);
        remaining -= b;
    }
    sizes
}

fn base_any_with(n: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    match rng.gen_range(0..3u8) {
        0 => symmetric_with(n, p, rng),
        1 => transitive_oriented_with(n, p, rng),
        _ => semicomplete_with(n, rng),
    }
}

pub(crate) fn wqt_with(n: usize, depth: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    if n <= 1 {
        return Digraph::empty(n);
    }
    if depth == 0 {
        return base_any_with(n, p, rng);
    }
    let sizes = split_sizes(n, rng);
    if sizes.len() < 2 {
        return base_any_with(n, p, rng);
    }
    let quotient = base_any_with(sizes.len(), p, rng);
    let parts: Vec<Digraph> = sizes
        .iter()
        .map(|&b| wqt_with(b, depth - 1, p, rng))
        .collect();
    quotient.substitution(&parts).expect("sizes are positive")
}

fn base_qt_with(n: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    if rng.gen::<bool>() {
        transitive_oriented_with(n, p, rng)
    } else {
        semicomplete_with(n, rng)
    }
}

pub(crate) fn qt_with(n: usize, depth: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    if n <= 1 {
        return Digraph::empty(n);
    }
    if depth == 0 {
        return base_qt_with(n, p, rng);
    }
    let sizes = split_sizes(n, rng);
    let k = sizes.len();
    if k < 2 || k == n {
        return base_qt_with(n, p, rng);
    }
    let quotient = base_qt_with(k, p, rng);
    // Vertices incident with a symmetric arc must receive singletons;
    // fall back to a tournament quotient when the digons leave no room.
    let free: Vec<usize> = (0..k)
        .filter(|&i| (0..k).all(|j| j == i || !(quotient.has_arc(i, j) && quotient.has_arc(j, i))))
        .collect();
    let big: Vec<usize> = sizes.iter().copied().filter(|&b| b > 1).collect();
    let (quotient, free) = if big.len() > free.len() {
        let q = tournament_with(k, rng);
        (q, (0..k).collect::<Vec<usize>>())
    } else {
        (quotient, free)
    };
    let mut assigned = vec![1usize; k];
    for (slot, &b) in free.iter().zip(big.iter()) {
        assigned[*slot] = b;
    }
    let parts: Vec<Digraph> = assigned
        .iter()
        .map(|&b| qt_with(b, depth - 1, p, rng))
        .collect();
    quotient.substitution(&parts).expect("sizes are positive")
}

/// Round construction: vertex `i` beats the next `len[i]` vertices in
/// the circular order. The repaired lengths never shrink by more than
/// one along the cycle, which keeps both neighbourhoods semicomplete.
pub(crate) fn lsd_round_with(n: usize, rng: &mut impl Rng) -> Digraph {
    if n <= 1 {
        return Digraph::empty(n);
    }
    let max_len = n - 1;
    let mut lens = vec![0usize; n];
    lens[0] = rng.gen_range(1..=max_len);
    for i in 1..n {
        let lo = lens[i - 1].saturating_sub(1).max(1);
        lens[i] = rng.gen_range(lo..=max_len);
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            let next = lens[(i + 1) % n];
            if lens[i] > next + 1 {
                lens[i] = next + 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let arcs = (0..n).flat_map(|i| (1..=lens[i]).map(move |k| (i, (i + k) % n)));
    let d = Digraph::from_arcs(n, arcs).unwrap();
    debug_assert!(crate::classes::is_locally_semicomplete(&d));
    d
}

pub fn gen_semicomplete(cfg: &GenConfig) -> Digraph {
    semicomplete_with(cfg.n, &mut stream_rng(cfg.seed, STREAM_SEMICOMPLETE))
}

pub fn gen_symmetric(cfg: &GenConfig) -> Digraph {
    symmetric_with(cfg.n, cfg.p, &mut stream_rng(cfg.seed, STREAM_SYMMETRIC))
}

pub fn gen_transitive_oriented(cfg: &GenConfig) -> Digraph {
    transitive_oriented_with(
        cfg.n,
        cfg.p,
        &mut stream_rng(cfg.seed, STREAM_TRANSITIVE_ORIENTED),
    )
}

/// Recomposes a random substitution tree over the three base classes;
/// sound for weak quasi-transitivity by the closure of the class under
/// substitution.
pub fn gen_wqt(cfg: &GenConfig) -> Digraph {
    wqt_with(cfg.n, cfg.depth, cfg.p, &mut stream_rng(cfg.seed, STREAM_WQT))
}

/// Random quasi-transitive digraph: transitive oriented or semicomplete
/// quotients with non-trivial parts only at digon-free vertices.
pub fn gen_qt(cfg: &GenConfig) -> Digraph {
    qt_with(cfg.n, cfg.depth, cfg.p, &mut stream_rng(cfg.seed, STREAM_QT))
}

pub fn gen_uniform(cfg: &GenConfig) -> Digraph {
    uniform_with(cfg.n, &mut stream_rng(cfg.seed, STREAM_UNIFORM))
}

const REJECTION_BUDGET: u32 = 100_000;

pub fn gen_locally_semicomplete(cfg: &GenConfig) -> Result<Digraph> {
    let mut rng = stream_rng(cfg.seed, STREAM_LSD);
    match cfg.lsd_strategy {
        LsdStrategy::Round => Ok(lsd_round_with(cfg.n, &mut rng)),
        LsdStrategy::Rejection => {
            if cfg.n > 6 {
                return Err(Error::GenerationFailure(format!(
                    "rejection sampling supports n <= 6, got {}; use the round strategy",
                    cfg.n
                )));
            }
            for _ in 0..REJECTION_BUDGET {
                let d = uniform_with(cfg.n, &mut rng);
                if crate::classes::is_locally_semicomplete(&d) {
                    return Ok(d);
                }
            }
            Err(Error::GenerationFailure(format!(
                "rejection budget of {REJECTION_BUDGET} exhausted; retry with another seed or \
                 use the round strategy"
            )))
        }
    }
}
