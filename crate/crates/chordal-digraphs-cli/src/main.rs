//! Command-line surface over the chordal-digraphs library.
//!
//! Exit codes: 0 when the command succeeds and the checked property
//! holds, 1 when a property fails or the input lies outside the required
//! class (a witness is printed), 2 for usage and I/O errors.

use chordal_digraphs::campaign::{run_campaign, Campaign, CampaignReport, Population};
use chordal_digraphs::chordality::{self, ChordalityCertificate};
use chordal_digraphs::classes::{self, ClassWitness};
use chordal_digraphs::decomposition::{self, DecompTree};
use chordal_digraphs::digraph::Digraph;
use chordal_digraphs::error::Error;
use chordal_digraphs::generators::{self, GenConfig};
use chordal_digraphs::io;
use chordal_digraphs::patterns::{self, Characterization, ForbiddenWitness};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Read as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "chordal-digraphs", version, about = "Chordality toolkit for digraphs with digons")]
struct Cli {
    /// Input digraph path; '-' reads standard input.
    #[arg(long, global = true, default_value = "-")]
    input: String,

    /// Output format; 'dot' is only available for digraph output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Print the class labels of the input, with a witness per failed class.
    Classify,
    /// Decide chordality: perfect elimination ordering or stuck certificate.
    Chordal,
    /// Chordality characterization restricted to a digraph class.
    Characterize {
        #[arg(long, value_enum)]
        class: ClassArg,
    },
    /// Substitution-tree decomposition of a weakly quasi-transitive digraph.
    Decompose,
    /// Generate a digraph from a seeded class generator.
    Generate {
        #[arg(long, value_enum)]
        class: GenClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Density parameter where the generator takes one.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Run a verification campaign over an exhaustive or sampled population.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        max_n: Option<usize>,
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
    },
    /// Enumerate every labeled digraph on n vertices (n <= 5).
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Semicomplete,
    Lsd,
    Wqt,
}

impl ClassArg {
    fn token(self) -> &'static str {
        match self {
            ClassArg::Semicomplete => "semicomplete",
            ClassArg::Lsd => "lsd",
            ClassArg::Wqt => "wqt",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenClassArg {
    Semicomplete,
    Symmetric,
    TransitiveOriented,
    Wqt,
    Qt,
    Lsd,
}

impl GenClassArg {
    fn token(self) -> &'static str {
        match self {
            GenClassArg::Semicomplete => "semicomplete",
            GenClassArg::Symmetric => "symmetric",
            GenClassArg::TransitiveOriented => "transitive-oriented",
            GenClassArg::Wqt => "wqt",
            GenClassArg::Qt => "qt",
            GenClassArg::Lsd => "lsd",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TheoremArg {
    T11,
    T24,
    T33,
    Lemma22,
    Roundtrip,
    Closure,
}

impl TheoremArg {
    fn campaign(self) -> Campaign {
        match self {
            TheoremArg::T11 => Campaign::SemicompleteEquivalence,
            TheoremArg::T24 => Campaign::LocallySemicompleteEquivalence,
            TheoremArg::T33 => Campaign::WqtEquivalence,
            TheoremArg::Lemma22 => Campaign::SymmetricPartImplication,
            TheoremArg::Roundtrip => Campaign::DecompositionRoundTrip,
            TheoremArg::Closure => Campaign::SubstitutionClosure,
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes early.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Classify => {
            let d = read_digraph(&cli.input)?;
            let (held, failed) = classes::classify_with_witnesses(&d);
            match require_certificate_format(cli.format)? {
                Format::Text => {
                    let labels: Vec<&str> = held.iter().map(|l| l.name()).collect();
                    println!("classes: {}", labels.join(" "));
                    for w in &failed {
                        println!("not {}: witness {}", w.class, w);
                    }
                }
                _ => {
                    let value = json!({
                        "verdict": "classified",
                        "class": held.iter().map(|l| l.name()).collect::<Vec<_>>(),
                        "certificate": {
                            "violations": failed.iter().map(witness_json).collect::<Vec<_>>(),
                        },
                    });
                    println!("{value}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Chordal => {
            let d = read_digraph(&cli.input)?;
            let certificate = chordality::greedy_eliminate(&d);
            let chordal = matches!(certificate, ChordalityCertificate::Peo(_));
            match require_certificate_format(cli.format)? {
                Format::Text => print!("{}", render_chordal_text(&certificate)),
                _ => println!("{}", render_chordal_json(&certificate)),
            }
            Ok(exit_for(chordal))
        }
        Command::Characterize { class } => {
            let d = read_digraph(&cli.input)?;
            let outcome = match class {
                ClassArg::Semicomplete => patterns::semicomplete_chordal_characterization(&d),
                ClassArg::Lsd => patterns::lsd_chordal_characterization(&d),
                ClassArg::Wqt => patterns::wqt_chordal_characterization(&d),
            };
            render_characterization(class, outcome, cli.format)
        }
        Command::Decompose => {
            let d = read_digraph(&cli.input)?;
            match decomposition::decompose_wqt(&d) {
                Ok(tree) => {
                    match require_certificate_format(cli.format)? {
                        Format::Text => {
                            println!("verdict: decomposed");
                            println!("tree:");
                            let mut out = String::new();
                            render_tree_text(&tree, 0, &mut out);
                            print!("{out}");
                        }
                        _ => {
                            let value = json!({
                                "verdict": "decomposed",
                                "class": "wqt",
                                "certificate": tree_json(&tree),
                            });
                            println!("{value}");
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::NotInClass { witness, .. }) => {
                    print_not_in_class("wqt", &witness, cli.format)?;
                    Ok(ExitCode::from(1))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Generate { class, n, seed, p } => {
            let cfg = GenConfig::new(n, seed).with_p(p);
            let d = match class {
                GenClassArg::Semicomplete => generators::gen_semicomplete(&cfg),
                GenClassArg::Symmetric => generators::gen_symmetric(&cfg),
                GenClassArg::TransitiveOriented => generators::gen_transitive_oriented(&cfg),
                GenClassArg::Wqt => generators::gen_wqt(&cfg),
                GenClassArg::Qt => generators::gen_qt(&cfg),
                GenClassArg::Lsd => {
                    generators::gen_locally_semicomplete(&cfg).map_err(|e| e.to_string())?
                }
            };
            match cli.format {
                Format::Text => print!("{}", io::write_digraph(&d)),
                Format::Dot => print!("{}", io::write_dot(&d, "g")),
                Format::Json => {
                    let value = json!({
                        "verdict": "generated",
                        "class": class.token(),
                        "certificate": digraph_json(&d),
                    });
                    println!("{value}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            theorem,
            max_n,
            samples,
            seed,
        } => {
            let campaign = theorem.campaign();
            let population = match (max_n, samples, seed) {
                (Some(max_n), None, None) => Population::Exhaustive { max_n },
                (None, Some(samples), Some(seed)) => Population::Sampled {
                    samples,
                    seed,
                    max_n: campaign.default_sample_max_n(),
                },
                _ => {
                    return Err(
                        "choose a population: --max-n K or --samples M --seed S".into()
                    )
                }
            };
            let report = run_campaign(campaign, &population).map_err(|e| e.to_string())?;
            match require_certificate_format(cli.format)? {
                Format::Text => {
                    print!("{}", report.render_text());
                    println!("verdict: {}", if report.holds() { "holds" } else { "fails" });
                }
                _ => println!("{}", report_json(&report)),
            }
            Ok(exit_for(report.holds()))
        }
        Command::Enumerate { n } => {
            let digraphs = generators::enumerate_digraphs(n).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Text => {
                    let mut first = true;
                    for d in digraphs {
                        if !first {
                            println!("--");
                        }
                        first = false;
                        print!("{}", io::write_digraph(&d));
                    }
                }
                Format::Dot => {
                    for (i, d) in digraphs.enumerate() {
                        print!("{}", io::write_dot(&d, &format!("g{i}")));
                    }
                }
                Format::Json => {
                    for d in digraphs {
                        println!("{}", digraph_json(&d));
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Certificate-producing commands support text and json only.
fn require_certificate_format(format: Format) -> Result<Format, String> {
    if format == Format::Dot {
        Err("dot output is only available for digraph-producing commands".into())
    } else {
        Ok(format)
    }
}

fn read_digraph(input: &str) -> Result<Digraph, String> {
    let text = if input == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        buffer
    } else {
        std::fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))?
    };
    io::parse_digraph(&text).map_err(|e| e.to_string())
}

fn render_characterization(
    class: ClassArg,
    outcome: chordal_digraphs::Result<Characterization>,
    format: Format,
) -> Result<ExitCode, String> {
    let format = require_certificate_format(format)?;
    match outcome {
        Ok(Characterization::Chordal) => {
            match format {
                Format::Text => {
                    println!("class: {}", class.token());
                    println!("verdict: chordal");
                }
                _ => println!(
                    "{}",
                    json!({
                        "verdict": "chordal",
                        "class": class.token(),
                        "certificate": Value::Null,
                    })
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Ok(Characterization::NotChordal(witness)) => {
            match format {
                Format::Text => {
                    println!("class: {}", class.token());
                    println!("verdict: not chordal");
                    println!("witness: {witness}");
                }
                _ => println!(
                    "{}",
                    json!({
                        "verdict": "not-chordal",
                        "class": class.token(),
                        "certificate": forbidden_json(&witness),
                    })
                ),
            }
            Ok(ExitCode::from(1))
        }
        Err(Error::NotInClass { witness, .. }) => {
            print_not_in_class(class.token(), &witness, format)?;
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn print_not_in_class(class: &str, witness: &ClassWitness, format: Format) -> Result<(), String> {
    match require_certificate_format(format)? {
        Format::Text => {
            println!("class: {class}");
            println!("verdict: not in class");
            println!("witness: {witness}");
        }
        _ => println!(
            "{}",
            json!({
                "verdict": "not-in-class",
                "class": class,
                "certificate": witness_json(witness),
            })
        ),
    }
    Ok(())
}

fn render_chordal_text(certificate: &ChordalityCertificate) -> String {
    let mut out = String::new();
    match certificate {
        ChordalityCertificate::Peo(order) => {
            let _ = writeln!(out, "verdict: chordal");
            let order: Vec<String> = order.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "peo: {}", order.join(" "));
        }
        ChordalityCertificate::Stuck { residual, triples } => {
            let _ = writeln!(out, "verdict: not chordal");
            let _ = writeln!(out, "residual: {residual}");
            for t in triples {
                let _ = writeln!(out, "violating triple for {}: {}", t.v, t);
            }
        }
    }
    out
}

fn render_chordal_json(certificate: &ChordalityCertificate) -> Value {
    match certificate {
        ChordalityCertificate::Peo(order) => json!({
            "verdict": "chordal",
            "class": Value::Null,
            "certificate": { "kind": "peo", "order": order },
        }),
        ChordalityCertificate::Stuck { residual, triples } => json!({
            "verdict": "not-chordal",
            "class": Value::Null,
            "certificate": {
                "kind": "stuck",
                "residual": residual.iter().collect::<Vec<_>>(),
                "violating_triples": triples.iter().map(|t| json!([t.u, t.v, t.w])).collect::<Vec<_>>(),
            },
        }),
    }
}

fn witness_json(w: &ClassWitness) -> Value {
    json!({ "class": w.class.name(), "vertices": w.vertices })
}

fn forbidden_json(w: &ForbiddenWitness) -> Value {
    json!({ "kind": w.kind.token(), "vertices": w.vertices })
}

fn digraph_json(d: &Digraph) -> Value {
    json!({ "n": d.n(), "arcs": d.arcs().map(|(u, v)| json!([u, v])).collect::<Vec<_>>() })
}

fn render_tree_text(tree: &DecompTree, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match tree {
        DecompTree::Leaf {
            kind,
            digraph,
            vertices,
        } => {
            let arcs: Vec<String> = digraph
                .arcs()
                .map(|(u, v)| format!("({}, {})", vertices[u], vertices[v]))
                .collect();
            let verts: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                out,
                "{pad}leaf {kind} vertices=[{}] arcs=[{}]",
                verts.join(", "),
                arcs.join(", ")
            );
        }
        DecompTree::Node { quotient, children } => {
            let arcs: Vec<String> = quotient
                .arcs()
                .map(|(u, v)| format!("({u}, {v})"))
                .collect();
            let blocks: Vec<String> = children
                .iter()
                .map(|c| {
                    let labels: Vec<String> = c.labels().iter().map(|v| v.to_string()).collect();
                    format!("[{}]", labels.join(", "))
                })
                .collect();
            let _ = writeln!(
                out,
                "{pad}node quotient-arcs=[{}] blocks=[{}]",
                arcs.join(", "),
                blocks.join(", ")
            );
            for child in children {
                render_tree_text(child, depth + 1, out);
            }
        }
    }
}

fn tree_json(tree: &DecompTree) -> Value {
    match tree {
        DecompTree::Leaf {
            kind,
            digraph,
            vertices,
        } => json!({
            "kind": "leaf",
            "leaf_kind": kind.token(),
            "vertices": vertices,
            "arcs": digraph
                .arcs()
                .map(|(u, v)| json!([vertices[u], vertices[v]]))
                .collect::<Vec<_>>(),
        }),
        DecompTree::Node { quotient, children } => json!({
            "kind": "node",
            "quotient_arcs": quotient.arcs().map(|(u, v)| json!([u, v])).collect::<Vec<_>>(),
            "blocks": children.iter().map(|c| c.labels()).collect::<Vec<_>>(),
            "children": children.iter().map(tree_json).collect::<Vec<_>>(),
        }),
    }
}

fn report_json(report: &CampaignReport) -> Value {
    json!({
        "verdict": if report.holds() { "holds" } else { "fails" },
        "class": Value::Null,
        "certificate": {
            "campaign": report.campaign.token(),
            "population": report.population,
            "instances": report.instances,
            "discrepancies": report
                .discrepancies
                .iter()
                .map(|d| json!({ "digraph": d.digraph, "lhs": d.lhs, "rhs": d.rhs }))
                .collect::<Vec<_>>(),
            "wall_ms": report.wall.as_millis() as u64,
        },
    })
}
