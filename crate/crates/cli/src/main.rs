use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use ncgar_core::monoid::DEFAULT_BUDGET;
use ncgar_core::nc_lattice::conjugation_isomorphism;
use ncgar_core::verify::{self, Suite, VerifyOptions};
use ncgar_core::{
    build_k, build_nc, build_x_plus, CoxeterSystem, DualMonoid, Error, NCLattice, SystemDescriptor,
};

#[derive(Parser)]
#[command(name = "ncgar", version, about = "Non-crossing partition lattices, dual braid monoids and their complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, generators, reflections, Coxeter element and length histogram.
    Group { system: SystemDescriptor },
    /// Builds and checks the lattice NC(W, gamma).
    Nc {
        system: SystemDescriptor,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normal forms, equality and positive lifts in the dual braid monoid.
    Monoid {
        #[command(flatten)]
        target: MonoidTarget,
        #[command(subcommand)]
        action: MonoidAction,
    },
    /// Truncated positive complexes and the quotient complex K.
    Complex {
        #[command(subcommand)]
        kind: ComplexKind,
    },
    /// Runs the invariant suites; exits with 1 on any violation.
    Verify {
        system: SystemDescriptor,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Args)]
struct MonoidTarget {
    #[arg(long, global = true, default_value = "A2")]
    system: SystemDescriptor,
    #[arg(long, global = true)]
    gamma: Option<String>,
}

#[derive(Subcommand)]
enum MonoidAction {
    /// Left-weighted normal form of a positive word.
    Nf {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Whether two positive words are equal in the monoid.
    Eq { left: String, right: String },
    /// Rewrites a word with inverses as g^-k * P.
    Lift {
        word: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ComplexOutput {
    #[arg(long)]
    homology: bool,
    #[arg(long, conflicts_with = "dot")]
    json: bool,
    #[arg(long)]
    dot: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ComplexKind {
    /// The truncation X_m^+ of the positive complex.
    Xplus {
        system: SystemDescriptor,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: ComplexOutput,
    },
    /// The one-vertex quotient complex K.
    K {
        system: SystemDescriptor,
        #[arg(long)]
        homology: bool,
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn budget() -> Result<usize, Failure> {
    match std::env::var("NCGAR_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("NCGAR_BUDGET must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn system(desc: SystemDescriptor) -> Result<Arc<CoxeterSystem>, Failure> {
    Ok(Arc::new(CoxeterSystem::new(desc)?))
}

fn lattice(sys: &Arc<CoxeterSystem>, gamma: Option<&str>) -> Result<NCLattice, Failure> {
    Ok(match gamma {
        Some(text) => build_nc(sys.clone(), &sys.parse_element(text)?)?,
        None => NCLattice::standard(sys.clone())?,
    })
}

/// Writes `artifact` to `path` when given; otherwise returns it for stdout.
fn emit(artifact: String, path: Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => {
            std::fs::write(&p, artifact).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(artifact),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn tuple(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

fn run(command: Command) -> Result<String, Failure> {
    let mut out = String::new();
    match command {
        Command::Group { system: desc } => {
            let sys = system(desc)?;
            let gens: Vec<String> = sys.generator_indices().iter().map(|&g| sys.format_idx(g)).collect();
            let _ = writeln!(out, "system {}", sys.name());
            let _ = writeln!(out, "order {}", sys.order());
            let _ = writeln!(out, "generators {}", gens.join(" "));
            let _ = writeln!(out, "reflections {}", sys.reflection_indices().len());
            let _ = writeln!(out, "gamma {}", sys.format_idx(sys.coxeter_index()));
            let _ = writeln!(out, "length histogram {}", tuple(&sys.length_histogram()));
        }
        Command::Nc {
            system: desc,
            gamma,
            json,
            dot,
            output,
        } => {
            let sys = system(desc)?;
            let lat = lattice(&sys, gamma.as_deref())?;
            if json {
                return emit(pretty(&lat.to_json()), output);
            }
            if dot {
                return emit(lat.to_dot(), output);
            }
            let report = lat.verify_lattice();
            let _ = writeln!(out, "NC({}) with gamma {}", sys.name(), lat.gamma());
            if gamma.is_some() {
                let iso = conjugation_isomorphism(&sys, &sys.coxeter_element(), lat.gamma())?;
                let _ = writeln!(
                    out,
                    "isomorphic to the standard lattice by conjugation with {}",
                    sys.format_element(&iso.conjugator)
                );
            }
            if !report.passed() {
                let _ = writeln!(out, "{} members, lattice FAILED\n{report}", lat.len());
                return Err(Failure::Verification(out));
            }
            let _ = writeln!(out, "{} members, lattice OK", lat.len());
        }
        Command::Monoid { target, action } => {
            let sys = system(target.system)?;
            let monoid = DualMonoid::new(Arc::new(lattice(&sys, target.gamma.as_deref())?));
            match action {
                MonoidAction::Nf { word, json } => {
                    let w = monoid.parse_word(&word)?;
                    let nf = monoid.left_normal_form(w.factors());
                    if json {
                        let g = ncgar_core::GroupForm {
                            gamma_power: 0,
                            positive: nf,
                        };
                        out = pretty(&monoid.group_json(&g));
                    } else {
                        let _ = writeln!(out, "{}", monoid.format_word(nf.factors()));
                    }
                }
                MonoidAction::Eq { left, right } => {
                    let a = monoid.positive_lift(&monoid.parse_letters(&left)?);
                    let b = monoid.positive_lift(&monoid.parse_letters(&right)?);
                    let _ = writeln!(out, "{}", monoid.group_equal(&a, &b));
                }
                MonoidAction::Lift { word, json } => {
                    let g = monoid.positive_lift(&monoid.parse_letters(&word)?);
                    if json {
                        out = pretty(&monoid.group_json(&g));
                    } else {
                        let _ = writeln!(out, "{}", monoid.format_group(&g));
                    }
                }
            }
        }
        Command::Complex { kind } => match kind {
            ComplexKind::Xplus { system: desc, m, out: o } => {
                let sys = system(desc)?;
                let monoid = DualMonoid::new(Arc::new(NCLattice::standard(sys)?));
                let x = build_x_plus(&monoid, m, budget()?)?;
                let c = x.complex();
                if o.json {
                    let mut v = c.to_json();
                    if o.homology {
                        v["homology"] = c.homology().to_json();
                    }
                    return emit(pretty(&v), o.output);
                }
                if o.dot {
                    return emit(c.to_dot(), o.output);
                }
                let _ = write!(out, "vertices {}; f-vector {}", x.vertex_count(), tuple(&c.f_vector()));
                if o.homology {
                    let _ = write!(out, "; {}", c.homology());
                }
                out.push('\n');
            }
            ComplexKind::K {
                system: desc,
                homology,
                json,
                output,
            } => {
                let sys = system(desc)?;
                let k = build_k(&Arc::new(NCLattice::standard(sys)?));
                if json {
                    let mut v = k.to_json();
                    if homology {
                        v["homology"] = k.homology()?.to_json();
                    }
                    return emit(pretty(&v), output);
                }
                let _ = write!(out, "cells {}", tuple(&k.cell_counts()));
                if homology {
                    let _ = write!(out, "; {}", k.homology()?);
                }
                out.push('\n');
            }
        },
        Command::Verify {
            system: desc,
            suite,
            seed,
            samples,
        } => {
            let sys = system(desc)?;
            let opts = VerifyOptions {
                seed,
                samples,
                budget: budget()?,
                ..Default::default()
            };
            let reports = verify::run(&sys, suite, &opts)?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            for r in &reports {
                let _ = writeln!(out, "{r}");
            }
            if failed > 0 {
                let _ = writeln!(out, "FAIL: {failed} of {} reports failed", reports.len());
                return Err(Failure::Verification(out));
            }
            let _ = writeln!(out, "PASS: {} reports on {} (suite {suite})", reports.len(), sys.name());
        }
    }
    Ok(out)
}
