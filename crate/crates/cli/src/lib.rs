//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the library and returns the exit
//! status together with everything that would be printed, so the binary is a
//! thin wrapper and tests can call the same entry point.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use transcol::bipartite::BipartiteInstance;
use transcol::canon::canonical_labelling;
use transcol::condensation::condense_with_components;
use transcol::format::{
    parse_bipartite, parse_digraph, parse_matrix, write_digraph, write_matrix,
};
use transcol::obstructions::{check_kl_bound, find_obstructions, BoundVerdict, Problem};
use transcol::poly::{
    dichromatic, fig2_target, hom_asymmetric_target, hom_fig2, hom_semicomplete_transitive,
    hom_symmetric_target, kl_colour, mpartition_ones_diag,
};
use transcol::reductions::{
    build_csp_matrix, build_here_target, build_loops_matrix, transform_csp_instance,
    transform_here_instance,
};
use transcol::search::{find_hom, find_mpartition, verify, Certificate, CertificateKind, Constraint};
use transcol::{Digraph, Entry, PartitionMatrix};

/// Exit status for a positive answer or a completed task.
pub const YES: i32 = 0;
/// Exit status for a negative answer.
pub const NO: i32 = 1;
/// Exit status for usage, input and precondition errors.
pub const ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "transcol",
    version,
    about = "Colourings, homomorphisms and matrix partitions of transitive digraphs",
    after_help = "Exit status: 0 yes, 1 no, 2 error."
)]
struct Cli {
    /// Print a JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test whether a digraph is transitive.
    CheckTransitive { digraph: PathBuf },
    /// Print the transitive closure of a digraph.
    Closure { digraph: PathBuf },
    /// Print the strong components and skeleton of a transitive digraph.
    Condense { digraph: PathBuf },
    /// Decide whether a digraph maps homomorphically to a target.
    Hom {
        digraph: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = HomAlgorithm::Auto)]
        algorithm: HomAlgorithm,
    },
    /// Decide whether a digraph has an M-partition.
    Mpartition {
        digraph: PathBuf,
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = PartitionAlgorithm::Auto)]
        algorithm: PartitionAlgorithm,
    },
    /// Partition a transitive digraph into k independent sets and l strong cliques.
    Klcolour {
        digraph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Dichromatic number of a transitive digraph.
    Dichromatic { digraph: PathBuf },
    /// Minimal obstructions among transitive digraphs up to a given order.
    Obstructions {
        /// hom:digon, hom:tt<m>, hom:clique<m>, hom:fig2, hom:<file>,
        /// kl:<k>,<l>, dichromatic:<k> or mpartition:<file>.
        #[arg(long)]
        problem: String,
        #[arg(long)]
        nmax: usize,
    },
    /// Compare minimal (k,l)-obstruction sizes with the bound (k+1)(l+1).
    Conjecture {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Gadget constructions from bipartite retraction problems.
    Reduce {
        #[arg(value_enum)]
        construction: Construction,
        #[command(flatten)]
        mode: ReduceMode,
    },
    /// Check a JSON certificate against a digraph and a target or matrix.
    Verify {
        digraph: PathBuf,
        /// Digraph file for homomorphisms, matrix file for partitions.
        template: PathBuf,
        certificate: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HomAlgorithm {
    Auto,
    Brute,
    Symmetric,
    Asymmetric,
    Semicomplete,
    Fig2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartitionAlgorithm {
    Auto,
    Brute,
    OnesDiag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Here,
    Csp,
    Loops,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ReduceMode {
    /// Build the target from a bipartite graph file.
    #[arg(long, value_name = "H")]
    build_target: Option<PathBuf>,
    /// Transform an instance containing a marked copy of H.
    #[arg(long, num_args = 2, value_names = ["G", "H"])]
    transform: Option<Vec<PathBuf>>,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    status: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(status: i32, text: impl Into<String>, json: Value) -> Self {
        Report {
            status,
            text: text.into(),
            json,
        }
    }
}

/// Runs one command line (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { ERROR } else { YES };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { status, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("JSON values serialize")
            } else {
                report.text
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { status: report.status, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            status: ERROR,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_digraph(path: &Path) -> Result<Digraph> {
    parse_digraph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<PartitionMatrix> {
    parse_matrix(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_bipartite(path: &Path) -> Result<BipartiteInstance> {
    parse_bipartite(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::CheckTransitive { digraph } => check_transitive(&load_digraph(digraph)?),
        Command::Closure { digraph } => {
            let c = load_digraph(digraph)?.transitive_closure();
            Ok(Report::new(YES, write_digraph(&c), json!(c)))
        }
        Command::Condense { digraph } => condense_cmd(&load_digraph(digraph)?),
        Command::Hom { digraph, target, algorithm } => {
            hom_cmd(&load_digraph(digraph)?, &load_digraph(target)?, *algorithm)
        }
        Command::Mpartition { digraph, matrix, algorithm } => {
            mpartition_cmd(&load_digraph(digraph)?, &load_matrix(matrix)?, *algorithm)
        }
        Command::Klcolour { digraph, k, l } => klcolour_cmd(&load_digraph(digraph)?, *k, *l),
        Command::Dichromatic { digraph } => {
            let g = load_digraph(digraph)?;
            let (k, cert) = dichromatic(&g)?;
            let text = format!("dichromatic number {k}\n{}", describe_parts(&cert, k));
            Ok(Report::new(YES, text, json!({ "dichromatic": k, "certificate": cert })))
        }
        Command::Obstructions { problem, nmax } => {
            let catalogue = find_obstructions(&parse_problem(problem)?, *nmax)?;
            let text = serde_json::to_string_pretty(&catalogue)?;
            Ok(Report::new(YES, text, json!(catalogue)))
        }
        Command::Conjecture { k, l, nmax } => {
            let report = check_kl_bound(*k, *l, *nmax)?;
            let status = match report.verdict {
                BoundVerdict::Consistent => YES,
                BoundVerdict::CounterexampleFound => NO,
            };
            let mut text = format!(
                "({k},{l})-colouring, orders up to {nmax}: {} minimal obstructions, largest {}, bound {}\n",
                report.obstruction_count, report.max_obstruction_size, report.bound
            );
            for (n, count) in &report.sizes {
                writeln!(text, "  {count} on {n} vertices")?;
            }
            text.push_str(match report.verdict {
                BoundVerdict::Consistent if report.scan_exceeds_bound => {
                    "no counterexample to the bound"
                }
                BoundVerdict::Consistent => {
                    "no counterexample to the bound (scan did not reach past the bound)"
                }
                BoundVerdict::CounterexampleFound => "counterexample found",
            });
            Ok(Report::new(status, text, json!(report)))
        }
        Command::Reduce { construction, mode } => reduce_cmd(*construction, mode),
        Command::Verify { digraph, template, certificate } => {
            verify_cmd(&load_digraph(digraph)?, template, certificate)
        }
    }
}

fn check_transitive(g: &Digraph) -> Result<Report> {
    let witness = (0..g.n())
        .flat_map(|u| g.out_neighbours(u).map(move |v| (u, v)))
        .flat_map(|(u, v)| g.out_neighbours(v).map(move |w| (u, v, w)))
        .find(|&(u, _, w)| u != w && !g.has_arc(u, w));
    Ok(match witness {
        None => Report::new(YES, "transitive", json!({ "transitive": true })),
        Some((u, v, w)) => Report::new(
            NO,
            format!("not transitive: {u} -> {v} -> {w} but no arc {u} -> {w}"),
            json!({ "transitive": false, "witness": [u, v, w] }),
        ),
    })
}

fn condense_cmd(g: &Digraph) -> Result<Report> {
    let (cond, comps) = condense_with_components(g)?;
    let mut text = String::new();
    for (i, comp) in comps.iter().enumerate() {
        writeln!(text, "# component {i}: {comp:?}")?;
    }
    writeln!(text, "# multiplicities: {:?}", cond.multiplicity())?;
    text.push_str(&write_digraph(cond.skeleton()));
    let json = json!({
        "skeleton": cond.skeleton(),
        "multiplicity": cond.multiplicity(),
        "components": comps,
    });
    Ok(Report::new(YES, text, json))
}

/// Vertex `i` of the four-vertex 2-SAT target corresponds to vertex
/// `map[i]` of `h`, when `h` is isomorphic to it.
fn fig2_relabelling(h: &Digraph) -> Result<Option<Vec<usize>>> {
    let f = fig2_target();
    if h.n() != f.n() || h.arc_count() != f.arc_count() {
        return Ok(None);
    }
    let (kh, oh) = canonical_labelling(h)?;
    let (kf, of) = canonical_labelling(&f)?;
    if kh != kf {
        return Ok(None);
    }
    let mut map = vec![0; f.n()];
    for (i, &x) in of.iter().enumerate() {
        map[x] = oh[i];
    }
    Ok(Some(map))
}

fn auto_hom_algorithm(g: &Digraph, h: &Digraph) -> Result<HomAlgorithm> {
    if !g.is_transitive() {
        return Ok(HomAlgorithm::Brute);
    }
    let class = h.classify();
    Ok(if class.symmetric {
        HomAlgorithm::Symmetric
    } else if class.asymmetric {
        HomAlgorithm::Asymmetric
    } else if class.semicomplete && class.transitive {
        HomAlgorithm::Semicomplete
    } else if fig2_relabelling(h)?.is_some() {
        HomAlgorithm::Fig2
    } else {
        HomAlgorithm::Brute
    })
}

fn algorithm_name(a: HomAlgorithm) -> &'static str {
    match a {
        HomAlgorithm::Auto => "auto",
        HomAlgorithm::Brute => "brute",
        HomAlgorithm::Symmetric => "symmetric",
        HomAlgorithm::Asymmetric => "asymmetric",
        HomAlgorithm::Semicomplete => "semicomplete",
        HomAlgorithm::Fig2 => "fig2",
    }
}

fn hom_cmd(g: &Digraph, h: &Digraph, algorithm: HomAlgorithm) -> Result<Report> {
    let chosen = match algorithm {
        HomAlgorithm::Auto => auto_hom_algorithm(g, h)?,
        other => other,
    };
    let cert = match chosen {
        HomAlgorithm::Brute | HomAlgorithm::Auto => find_hom(g, h, None)?,
        HomAlgorithm::Symmetric => hom_symmetric_target(g, h)?,
        HomAlgorithm::Asymmetric => hom_asymmetric_target(g, h)?,
        HomAlgorithm::Semicomplete => hom_semicomplete_transitive(g, h)?,
        HomAlgorithm::Fig2 => {
            let map = fig2_relabelling(h)?
                .ok_or_else(|| anyhow!("target is not the four-vertex 2-SAT target"))?;
            hom_fig2(g)?.map(|c| {
                Certificate::homomorphism(c.assignment.iter().map(|&x| map[x]).collect())
            })
        }
    };
    if let Some(c) = &cert {
        if !verify(g, Constraint::Hom(h), c) {
            bail!("internal error: the {} algorithm produced an invalid certificate", algorithm_name(chosen));
        }
    }
    Ok(verdict_report(algorithm_name(chosen), cert, |c| describe_map(c)))
}

fn verdict_report(
    algorithm: &str,
    cert: Option<Certificate>,
    describe: impl Fn(&Certificate) -> String,
) -> Report {
    let mut text = format!("algorithm: {algorithm}\n");
    match &cert {
        Some(c) => {
            text.push_str("yes\n");
            text.push_str(&describe(c));
        }
        None => text.push_str("no\n"),
    }
    let status = if cert.is_some() { YES } else { NO };
    let json = json!({ "verdict": cert.is_some(), "algorithm": algorithm, "certificate": cert });
    Report::new(status, text, json)
}

fn describe_map(c: &Certificate) -> String {
    c.assignment
        .iter()
        .enumerate()
        .map(|(v, t)| format!("{v} -> {t}\n"))
        .collect()
}

fn describe_parts(c: &Certificate, parts: usize) -> String {
    c.parts(parts)
        .iter()
        .enumerate()
        .map(|(p, vs)| format!("part {p}: {vs:?}\n"))
        .collect()
}

/// `(k, l)` and the matrix index of each colouring part, when every
/// off-diagonal entry is `*`.
fn kl_shape(m: &PartitionMatrix) -> Option<(usize, usize, Vec<usize>)> {
    let off_star = (0..m.m())
        .all(|a| (0..m.m()).all(|b| a == b || m.get(a, b) == Entry::Star));
    let diag_star = (0..m.m()).any(|a| m.get(a, a) == Entry::Star);
    if !off_star || diag_star {
        return None;
    }
    let zeros: Vec<usize> = (0..m.m()).filter(|&a| m.get(a, a) == Entry::Zero).collect();
    let ones: Vec<usize> = (0..m.m()).filter(|&a| m.get(a, a) == Entry::One).collect();
    let (k, l) = (zeros.len(), ones.len());
    Some((k, l, zeros.into_iter().chain(ones).collect()))
}

fn mpartition_cmd(
    g: &Digraph,
    m: &PartitionMatrix,
    algorithm: PartitionAlgorithm,
) -> Result<Report> {
    let parts = m.m();
    let (name, cert) = match algorithm {
        PartitionAlgorithm::Brute => ("brute", find_mpartition(g, m, None)?),
        PartitionAlgorithm::OnesDiag => ("ones-diag", ones_diag(g, m)?),
        PartitionAlgorithm::Auto if g.is_transitive() => {
            if let Some((k, l, index)) = kl_shape(m) {
                let cert = kl_colour(g, k, l)?.map(|c| {
                    Certificate::partition(c.assignment.iter().map(|&p| index[p]).collect())
                });
                ("klcolour", cert)
            } else if m.diagonal_all(Entry::One) {
                ("ones-diag", ones_diag(g, m)?)
            } else {
                ("brute", find_mpartition(g, m, None)?)
            }
        }
        PartitionAlgorithm::Auto => ("brute", find_mpartition(g, m, None)?),
    };
    if let Some(c) = &cert {
        if !verify(g, Constraint::Partition(m), c) {
            bail!("internal error: the {name} algorithm produced an invalid certificate");
        }
    }
    Ok(verdict_report(name, cert, |c| describe_parts(c, parts)))
}

/// The subset test decides; a certificate for a yes answer comes from the
/// exhaustive search.
fn ones_diag(g: &Digraph, m: &PartitionMatrix) -> Result<Option<Certificate>> {
    if !mpartition_ones_diag(g, m)? {
        return Ok(None);
    }
    let cert = find_mpartition(g, m, None)?;
    if cert.is_none() {
        bail!("internal error: subset test and exhaustive search disagree");
    }
    Ok(cert)
}

fn klcolour_cmd(g: &Digraph, k: usize, l: usize) -> Result<Report> {
    let cert = kl_colour(g, k, l)?;
    Ok(verdict_report("klcolour", cert, |c| {
        c.parts(k + l)
            .iter()
            .enumerate()
            .map(|(p, vs)| {
                let kind = if p < k { "independent" } else { "clique" };
                format!("part {p} ({kind}): {vs:?}\n")
            })
            .collect()
    }))
}

fn parse_problem(spec: &str) -> Result<Problem> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("problem {spec:?} is not of the form kind:argument"))?;
    let number = |s: &str| -> Result<usize> {
        s.trim().parse().map_err(|_| anyhow!("{s:?} is not a number in problem {spec:?}"))
    };
    let problem = match kind {
        "hom" => {
            let target = match arg {
                "digon" => Digraph::digon(),
                "fig2" => fig2_target(),
                _ if arg.starts_with("tt") && arg[2..].parse::<usize>().is_ok() => {
                    Digraph::transitive_tournament(number(&arg[2..])?)
                }
                _ if arg.starts_with("clique") && arg[6..].parse::<usize>().is_ok() => {
                    Digraph::strong_clique(number(&arg[6..])?)
                }
                path => load_digraph(Path::new(path))?,
            };
            Problem::hom(target)?
        }
        "kl" => {
            let (k, l) = arg
                .split_once(',')
                .ok_or_else(|| anyhow!("expected kl:<k>,<l>, found {spec:?}"))?;
            Problem::kl(number(k)?, number(l)?)?
        }
        "dichromatic" => Problem::dichromatic(number(arg)?)?,
        "mpartition" => Problem::mpartition(load_matrix(Path::new(arg))?)?,
        _ => bail!("unknown problem kind {kind:?}"),
    };
    Ok(problem)
}

fn reduce_cmd(construction: Construction, mode: &ReduceMode) -> Result<Report> {
    if let Some(h) = &mode.build_target {
        let h = load_bipartite(h)?;
        return Ok(match construction {
            Construction::Here => {
                let t = build_here_target(&h)?;
                let mut text = format!("# levels: {:?}\n", t.level);
                text.push_str(&write_digraph(&t.digraph));
                Report::new(YES, text, json!(t))
            }
            Construction::Csp | Construction::Loops => {
                let (m, labels) = if construction == Construction::Csp {
                    build_csp_matrix(&h)?
                } else {
                    build_loops_matrix(&h)?
                };
                let names: Vec<String> = labels.iter().map(ToString::to_string).collect();
                let text = format!("# parts: {}\n{}", names.join(" "), write_matrix(&m));
                Report::new(YES, text, json!({ "matrix": m, "parts": names }))
            }
        });
    }
    let files = mode.transform.as_ref().expect("clap requires one mode");
    let (g, h) = (load_bipartite(&files[0])?, load_bipartite(&files[1])?);
    Ok(match construction {
        Construction::Here => {
            let t = transform_here_instance(&g, &h)?;
            let mut text = format!("# levels: {:?}\n", t.level);
            text.push_str(&write_digraph(&t.digraph));
            Report::new(YES, text, json!(t))
        }
        Construction::Csp | Construction::Loops => {
            let d = transform_csp_instance(&g, &h)?;
            Report::new(YES, write_digraph(&d), json!(d))
        }
    })
}

fn verify_cmd(g: &Digraph, template: &Path, certificate: &Path) -> Result<Report> {
    let value: Value = serde_json::from_str(&read(certificate)?)
        .with_context(|| format!("{} is not JSON", certificate.display()))?;
    // either a bare certificate or the output of hom/mpartition --json
    let value = match value.get("certificate") {
        Some(inner) if !inner.is_null() => inner.clone(),
        Some(_) => bail!("the JSON output carries no certificate"),
        None => value,
    };
    let cert: Certificate = serde_json::from_value(value)
        .with_context(|| format!("{} is not a certificate", certificate.display()))?;
    let ok = match cert.kind {
        CertificateKind::Homomorphism => verify(g, Constraint::Hom(&load_digraph(template)?), &cert),
        CertificateKind::Partition => {
            verify(g, Constraint::Partition(&load_matrix(template)?), &cert)
        }
    };
    Ok(if ok {
        Report::new(YES, "valid", json!({ "valid": true }))
    } else {
        Report::new(NO, "invalid", json!({ "valid": false }))
    })
}
