//! Verification campaigns: each one checks an equivalence or closure
//! property over an exhaustive or sampled digraph population and records
//! every disagreement verbatim.

use crate::chordality;
use crate::classes;
use crate::decomposition;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::generators::{self, stream_rng};
use crate::io;
use crate::patterns::{self, Characterization};
use rand::Rng;
use rayon::prelude::*;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

/// Worker-count override for campaign parallelism.
pub const WORKERS_ENV: &str = "CHORDAL_DIGRAPHS_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Campaign {
    /// Greedy chordality vs the forbidden-structure characterization
    /// over semicomplete digraphs.
    SemicompleteEquivalence,
    /// Same over locally semicomplete digraphs, with the induced
    /// non-symmetric cycle condition added.
    LocallySemicompleteEquivalence,
    /// Same over weakly quasi-transitive digraphs.
    WqtEquivalence,
    /// The weakly quasi-transitive equivalence restricted to
    /// quasi-transitive instances.
    QtRestriction,
    /// The weakly quasi-transitive equivalence restricted to extended
    /// semicomplete instances.
    EscRestriction,
    /// Di-simplicial in D implies di-simplicial in S(D), per vertex.
    SymmetricPartImplication,
    /// decompose + recompose reproduces every weakly quasi-transitive
    /// input exactly, with valid leaves.
    DecompositionRoundTrip,
    /// Substitution of weakly quasi-transitive parts into a weakly
    /// quasi-transitive digraph stays weakly quasi-transitive.
    SubstitutionClosure,
}

impl Campaign {
    /// Stable identifier used by the CLI and reports.
    pub fn token(self) -> &'static str {
        match self {
            Campaign::SemicompleteEquivalence => "t11",
            Campaign::LocallySemicompleteEquivalence => "t24",
            Campaign::WqtEquivalence => "t33",
            Campaign::QtRestriction => "t33-qt",
            Campaign::EscRestriction => "t33-esc",
            Campaign::SymmetricPartImplication => "lemma22",
            Campaign::DecompositionRoundTrip => "roundtrip",
            Campaign::SubstitutionClosure => "closure",
        }
    }

    /// Default size cap for sampled populations.
    pub fn default_sample_max_n(self) -> usize {
        match self {
            Campaign::SemicompleteEquivalence => 8,
            Campaign::LocallySemicompleteEquivalence => 10,
            Campaign::WqtEquivalence => 12,
            Campaign::QtRestriction | Campaign::EscRestriction => 12,
            Campaign::SymmetricPartImplication => 7,
            Campaign::DecompositionRoundTrip => 30,
            Campaign::SubstitutionClosure => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Population {
    /// All labeled digraphs on 1..=max_n vertices (max_n <= 5).
    Exhaustive { max_n: usize },
    /// Seeded generator samples, one per index; sizes drawn up to max_n.
    Sampled {
        samples: u64,
        seed: u64,
        max_n: usize,
    },
}

impl Population {
    fn describe(&self) -> String {
        match self {
            Population::Exhaustive { max_n } => format!("exhaustive max-n={max_n}"),
            Population::Sampled {
                samples,
                seed,
                max_n,
            } => format!("sampled samples={samples} seed={seed} max-n={max_n}"),
        }
    }
}

/// An instance on which the two sides of a campaign disagreed, kept in
/// text form so reports stay self-contained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub digraph: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub campaign: Campaign,
    pub population: String,
    /// In-class instances actually checked.
    pub instances: u64,
    pub discrepancies: Vec<Discrepancy>,
    pub wall: Duration,
}

impl CampaignReport {
    pub fn holds(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "campaign: {}", self.campaign.token());
        let _ = writeln!(out, "population: {}", self.population);
        let _ = writeln!(out, "instances: {}", self.instances);
        let _ = writeln!(out, "discrepancies: {}", self.discrepancies.len());
        for (i, disc) in self.discrepancies.iter().enumerate() {
            let _ = writeln!(out, "discrepancy {}:", i + 1);
            let _ = writeln!(out, "  lhs: {}", disc.lhs);
            let _ = writeln!(out, "  rhs: {}", disc.rhs);
            let _ = writeln!(out, "  digraph:");
            for line in disc.digraph.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
        let _ = writeln!(out, "wall-ms: {}", self.wall.as_millis());
        out
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    discrepancies: Vec<Discrepancy>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.discrepancies.extend(other.discrepancies);
        self
    }
}

/// Runs one campaign over one population. Parallelism fans out over
/// instances; results merge in enumeration order, so reports are stable
/// across worker counts.
pub fn run_campaign(campaign: Campaign, population: &Population) -> Result<CampaignReport> {
    let start = Instant::now();
    let tally = with_pool(|| match *population {
        Population::Exhaustive { max_n } => {
            if campaign == Campaign::SubstitutionClosure {
                return Err(Error::UnsupportedPopulation(
                    "the closure campaign needs a sampled population".into(),
                ));
            }
            if !(1..=5).contains(&max_n) {
                return Err(Error::UnsupportedPopulation(format!(
                    "exhaustive campaigns support 1 <= max-n <= 5, got {max_n}"
                )));
            }
            let mut tally = Tally::default();
            for n in 1..=max_n {
                let per_n = (0..generators::enumeration_count(n))
                    .into_par_iter()
                    .fold(Tally::default, |mut acc, index| {
                        let d = generators::digraph_from_index(n, index);
                        check_instance(campaign, &d, &mut acc);
                        acc
                    })
                    .reduce(Tally::default, Tally::merge);
                tally = tally.merge(per_n);
            }
            Ok(tally)
        }
        Population::Sampled {
            samples,
            seed,
            max_n,
        } => {
            if max_n == 0 {
                return Err(Error::UnsupportedPopulation("max-n must be positive".into()));
            }
            Ok((0..samples)
                .into_par_iter()
                .fold(Tally::default, |mut acc, index| {
                    sample_instance(campaign, seed, index, max_n, &mut acc);
                    acc
                })
                .reduce(Tally::default, Tally::merge))
        }
    })?;
    Ok(CampaignReport {
        campaign,
        population: population.describe(),
        instances: tally.instances,
        discrepancies: tally.discrepancies,
        wall: start.elapsed(),
    })
}

fn with_pool<T: Send>(body: impl FnOnce() -> T + Send) -> T {
    match std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(workers) if workers > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("worker pool")
            .install(body),
        _ => body(),
    }
}

/// Draws the campaign-appropriate instance for one sample index. Every
/// index owns its own ChaCha stream, so samples are independent of the
/// worker schedule.
fn sample_instance(campaign: Campaign, seed: u64, index: u64, max_n: usize, acc: &mut Tally) {
    let mut rng = stream_rng(seed, index.wrapping_add(0x5eed_0001));
    let n = rng.gen_range(1..=max_n);
    match campaign {
        Campaign::SemicompleteEquivalence => {
            let d = generators::semicomplete_with(n, &mut rng);
            check_instance(campaign, &d, acc);
        }
        Campaign::LocallySemicompleteEquivalence => {
            let d = generators::lsd_round_with(n, &mut rng);
            check_instance(campaign, &d, acc);
        }
        Campaign::WqtEquivalence
        | Campaign::QtRestriction
        | Campaign::EscRestriction
        | Campaign::DecompositionRoundTrip => {
            let d = generators::wqt_with(n, 3, 0.5, &mut rng);
            check_instance(campaign, &d, acc);
        }
        Campaign::SymmetricPartImplication => {
            let d = generators::uniform_with(n, &mut rng);
            check_instance(campaign, &d, acc);
        }
        Campaign::SubstitutionClosure => {
            let outer = rng.gen_range(2..=max_n.max(2));
            let host = generators::wqt_with(outer, 2, 0.5, &mut rng);
            let parts: Vec<Digraph> = (0..host.n())
                .map(|_| generators::wqt_with(rng.gen_range(1..=4), 2, 0.5, &mut rng))
                .collect();
            let composed = host.substitution(&parts).expect("parts are nonempty");
            acc.instances += 1;
            if !classes::is_weakly_quasi_transitive(&composed) {
                acc.discrepancies.push(Discrepancy {
                    digraph: io::write_digraph(&composed),
                    lhs: "substitution of weakly quasi-transitive parts".into(),
                    rhs: "composite is not weakly quasi-transitive".into(),
                });
            }
        }
    }
}

fn check_instance(campaign: Campaign, d: &Digraph, acc: &mut Tally) {
    match campaign {
        Campaign::SemicompleteEquivalence => {
            if !classes::is_semicomplete(d) {
                return;
            }
            acc.instances += 1;
            let lhs = chordality::is_chordal(d);
            let rhs = patterns::semicomplete_chordal_characterization(d)
                .expect("instance is semicomplete");
            record_equivalence(d, lhs, &rhs, acc);
        }
        Campaign::LocallySemicompleteEquivalence => {
            if !classes::is_locally_semicomplete(d) {
                return;
            }
            acc.instances += 1;
            let lhs = chordality::is_chordal(d);
            let rhs = patterns::lsd_chordal_characterization(d)
                .expect("instance is locally semicomplete");
            record_equivalence(d, lhs, &rhs, acc);
        }
        Campaign::WqtEquivalence => {
            if !classes::is_weakly_quasi_transitive(d) {
                return;
            }
            acc.instances += 1;
            let lhs = chordality::is_chordal(d);
            let rhs =
                patterns::wqt_chordal_characterization(d).expect("instance is weakly qt");
            record_equivalence(d, lhs, &rhs, acc);
        }
        Campaign::QtRestriction => {
            if !classes::is_quasi_transitive(d) {
                return;
            }
            acc.instances += 1;
            let lhs = chordality::is_chordal(d);
            let rhs =
                patterns::wqt_chordal_characterization(d).expect("quasi-transitive is weakly qt");
            record_equivalence(d, lhs, &rhs, acc);
        }
        Campaign::EscRestriction => {
            if !classes::is_extended_semicomplete(d) {
                return;
            }
            acc.instances += 1;
            let lhs = chordality::is_chordal(d);
            let rhs = patterns::wqt_chordal_characterization(d)
                .expect("extended semicomplete is weakly qt");
            record_equivalence(d, lhs, &rhs, acc);
        }
        Campaign::SymmetricPartImplication => {
            acc.instances += 1;
            let s = d.symmetric_part();
            for v in d.vertices() {
                if chordality::is_di_simplicial(d, v) && !chordality::is_di_simplicial(&s, v) {
                    acc.discrepancies.push(Discrepancy {
                        digraph: io::write_digraph(d),
                        lhs: format!("vertex {v} di-simplicial in D"),
                        rhs: format!("vertex {v} not di-simplicial in S(D)"),
                    });
                }
            }
        }
        Campaign::DecompositionRoundTrip => {
            if !classes::is_weakly_quasi_transitive(d) {
                return;
            }
            acc.instances += 1;
            match decomposition::decompose_wqt(d) {
                Ok(tree) => {
                    if let Err(e) = decomposition::validate_tree(&tree, d) {
                        acc.discrepancies.push(Discrepancy {
                            digraph: io::write_digraph(d),
                            lhs: "decompose succeeded".into(),
                            rhs: format!("tree validation failed: {e}"),
                        });
                    }
                }
                Err(e) => acc.discrepancies.push(Discrepancy {
                    digraph: io::write_digraph(d),
                    lhs: "weakly quasi-transitive input".into(),
                    rhs: format!("decompose failed: {e}"),
                }),
            }
        }
        Campaign::SubstitutionClosure => {
            unreachable!("closure instances are built by the sampler")
        }
    }
}

fn record_equivalence(d: &Digraph, lhs: bool, rhs: &Characterization, acc: &mut Tally) {
    if lhs != rhs.holds() {
        let lhs_text = if lhs {
            "greedy elimination: chordal"
        } else {
            "greedy elimination: not chordal"
        };
        let rhs_text = match rhs {
            Characterization::Chordal => "characterization: chordal".to_string(),
            Characterization::NotChordal(w) => format!("characterization: not chordal ({w})"),
        };
        acc.discrepancies.push(Discrepancy {
            digraph: io::write_digraph(d),
            lhs: lhs_text.into(),
            rhs: rhs_text,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_t11_small() {
        let report = run_campaign(
            Campaign::SemicompleteEquivalence,
            &Population::Exhaustive { max_n: 3 },
        )
        .unwrap();
        // 1 + 3 + 27 semicomplete digraphs on up to three vertices.
        assert_eq!(report.instances, 31);
        assert!(report.holds());
    }

    #[test]
    fn exhaustive_rejects_large_populations() {
        let err = run_campaign(
            Campaign::SemicompleteEquivalence,
            &Population::Exhaustive { max_n: 6 },
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnsupportedPopulation(_)));
    }

    #[test]
    fn closure_needs_samples() {
        assert!(run_campaign(
            Campaign::SubstitutionClosure,
            &Population::Exhaustive { max_n: 3 }
        )
        .is_err());
        let report = run_campaign(
            Campaign::SubstitutionClosure,
            &Population::Sampled {
                samples: 50,
                seed: 5,
                max_n: 5,
            },
        )
        .unwrap();
        assert_eq!(report.instances, 50);
        assert!(report.holds());
    }

    #[test]
    fn reports_are_reproducible() {
        let population = Population::Sampled {
            samples: 64,
            seed: 11,
            max_n: 7,
        };
        let a = run_campaign(Campaign::WqtEquivalence, &population).unwrap();
        let b = run_campaign(Campaign::WqtEquivalence, &population).unwrap();
        assert_eq!(a.instances, b.instances);
        assert_eq!(a.discrepancies, b.discrepancies);
        assert_eq!(a.population, b.population);
    }
}
