//! The `ecgw` command-line tool: randomized axiom audits over finite sets,
//! finite action sets, and chain complexes; chain-complex operations on
//! document files; staircase construction; and the K0-level checks.
//!
//! Exit codes: 0 on success or all-pass, 1 on a property failure
//! (audit failures, false predicates, validation errors), 2 on usage or
//! parse errors.

use ecgw_cli::{document, dot};

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use document::{AnyChainMap, DocError, Document};
use ecgw::cgw::{appendix_checks, audit, axiom_checks, ext_checks, Check, ExtCgw, StarCgw};
use ecgw::chain::{coker_chain, ker_chain, ChainCgw, Levels, MapKind, Window};
use ecgw::exactqi::{
    acyclicity_checks, exactness, homology, is_quasi_iso_e, is_quasi_iso_m,
};
use ecgw::extcat::{FinSetInstance, MSetInstance, Monoid};
use ecgw::k0::{degree_vector, euler_char, relation_audit_chain, relation_audit_finset};
use ecgw::sdot::{degeneracy, face, identities_audit, staircase_build};

#[derive(Parser)]
#[command(name = "ecgw", version, about = "Double categories of complemented inclusions: audits, chain complexes, staircases, and K0 checks", max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SeedArgs {
    /// Trial count for randomized checks.
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Base seed; defaults to the ECGW_SEED environment variable, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for trial evaluation (output is identical for any
    /// value; defaults to the available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
}

impl SeedArgs {
    fn seed(&self) -> u64 {
        self.seed
            .or_else(|| {
                std::env::var("ECGW_SEED")
                    .ok()
                    .and_then(|s| s.parse().ok())
            })
            .unwrap_or(0)
    }

    fn jobs(&self) -> usize {
        self.jobs.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized axiom audit over an instance.
    Audit {
        /// `finset`, `mset:<table.json>`, or `chain`.
        #[arg(long, default_value = "finset")]
        instance: String,
        /// `axioms`, `star-pushouts`, `acyclicity`, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Carrier size bound for generated objects.
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Degree window for the chain instance.
        #[arg(long, num_args = 2, allow_negative_numbers = true, default_values_t = [-2, 2])]
        window: Vec<i32>,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Operations on chain complexes stored in a document.
    Chain {
        #[command(subcommand)]
        op: ChainOp,
    },
    /// Staircase construction and the simplicial identities.
    Sdot {
        #[command(subcommand)]
        op: SdotOp,
    },
    /// Euler characteristics and K0 relation checks.
    K0 {
        #[command(subcommand)]
        op: K0Op,
    },
}

#[derive(Subcommand)]
enum ChainOp {
    /// Validate a named complex.
    Validate {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        complex: String,
    },
    /// Print the cokernel of a named m-kind chain map.
    Coker {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Print the kernel of a named e-kind chain map.
    Ker {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Decide whether a named chain map is a quasi-isomorphism.
    Qiso {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Print the homology sets of a named complex.
    Homology {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        complex: String,
        /// Restrict to a single degree.
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i32>,
    },
    /// Decide whether a named complex is exact.
    Exact {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        complex: String,
    },
}

#[derive(Subcommand)]
enum SdotOp {
    /// Build the staircase of a composable row of maps.
    Build {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated map names forming the row.
        #[arg(long, value_delimiter = ',')]
        row: Vec<String>,
        /// Emit the staircase as DOT graph text.
        #[arg(long)]
        dot: bool,
    },
    /// Apply a face map to a named staircase.
    Face {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        staircase: String,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Apply a degeneracy map to a named staircase.
    Degeneracy {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        staircase: String,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Randomized audit of the simplicial identities.
    Identities {
        #[arg(long, default_value_t = 4)]
        max_level: usize,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[command(flatten)]
        seed: SeedArgs,
    },
}

#[derive(Subcommand)]
enum K0Op {
    /// Print the Euler characteristic of a named complex.
    Euler {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        complex: String,
    },
    /// Euler-characteristic table over a window, with a relation audit
    /// summary.
    Gw {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, num_args = 2, allow_negative_numbers = true)]
        window: Vec<i32>,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Randomized K0 relation audit.
    Relations {
        /// `finset` or `chain`.
        #[arg(long, default_value = "finset")]
        instance: String,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[command(flatten)]
        seed: SeedArgs,
    },
}

fn fail(msg: impl std::fmt::Display, code: u8) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn doc_fail(e: DocError) -> ExitCode {
    match e {
        DocError::Parse(_) => fail(e, 2),
        DocError::Validation(_) => fail(e, 1),
    }
}

fn load_monoid(path: &str) -> Result<Arc<Monoid>, String> {
    #[derive(serde::Deserialize)]
    struct MonoidJson {
        elements: Vec<String>,
        identity: String,
        table: BTreeMap<String, BTreeMap<String, String>>,
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let raw: MonoidJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let index_of = |name: &str| -> Result<usize, String> {
        raw.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| format!("unknown monoid element `{name}`"))
    };
    let identity = index_of(&raw.identity)?;
    let n = raw.elements.len();
    let mut mul = vec![vec![0usize; n]; n];
    for (i, a) in raw.elements.iter().enumerate() {
        for (j, b) in raw.elements.iter().enumerate() {
            let product = if i == identity {
                b.clone()
            } else if j == identity {
                a.clone()
            } else {
                raw.table
                    .get(a)
                    .and_then(|row| row.get(b))
                    .cloned()
                    .ok_or_else(|| format!("missing product `{a}`·`{b}`"))?
            };
            mul[i][j] = index_of(&product)?;
        }
    }
    Monoid::new(raw.elements, identity, mul)
        .map(Arc::new)
        .map_err(|e| e.to_string())
}

fn run_audit_suite<C: StarCgw + 'static>(
    c: &C,
    suite: &str,
    extra: Vec<Check<C>>,
    seed_args: &SeedArgs,
) -> Result<ExitCode, String> {
    let mut checks: Vec<Check<C>> = Vec::new();
    match suite {
        "axioms" => {
            checks.extend(axiom_checks());
            checks.extend(extra);
        }
        "star-pushouts" => checks.extend(appendix_checks()),
        "all" => {
            checks.extend(axiom_checks());
            checks.extend(extra);
            checks.extend(appendix_checks());
        }
        other => return Err(format!("unknown suite `{other}`")),
    }
    let report = audit(c, &checks, seed_args.trials, seed_args.seed(), seed_args.jobs());
    print!("{}", report.render());
    Ok(if report.total_failures() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_audit(
    instance: &str,
    suite: &str,
    max_size: usize,
    window: &[i32],
    seed_args: &SeedArgs,
) -> ExitCode {
    if instance == "finset" {
        let c = ExtCgw::new(FinSetInstance, max_size);
        match run_audit_suite(&c, suite, ext_checks(), seed_args) {
            Ok(code) => code,
            Err(e) => fail(e, 2),
        }
    } else if let Some(path) = instance.strip_prefix("mset:") {
        let monoid = match load_monoid(path) {
            Ok(m) => m,
            Err(e) => return fail(e, 2),
        };
        let c = ExtCgw::new(MSetInstance::new(monoid), max_size);
        match run_audit_suite(&c, suite, ext_checks(), seed_args) {
            Ok(code) => code,
            Err(e) => fail(e, 2),
        }
    } else if instance == "chain" {
        let w = match Window::new(window[0], window[1]) {
            Ok(w) => w,
            Err(e) => return fail(e, 2),
        };
        let c = ChainCgw::new(FinSetInstance, w, max_size.min(4));
        if suite == "acyclicity" {
            let report = audit(
                &c,
                &acyclicity_checks(),
                seed_args.trials,
                seed_args.seed(),
                seed_args.jobs(),
            );
            print!("{}", report.render());
            return if report.total_failures() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
        match run_audit_suite(&c, suite, Vec::new(), seed_args) {
            Ok(code) => code,
            Err(e) => fail(e, 2),
        }
    } else {
        fail(format!("unknown instance `{instance}`"), 2)
    }
}

fn cmd_chain(op: &ChainOp) -> ExitCode {
    let inst = FinSetInstance;
    match op {
        ChainOp::Validate { file, complex } => match Document::load(file) {
            // Loading already validates every entity; a named lookup makes
            // the per-complex contract explicit.
            Ok(doc) => match doc.complexes.get(complex) {
                Some(_) => {
                    println!("valid");
                    ExitCode::SUCCESS
                }
                None => fail(format!("unknown complex `{complex}`"), 1),
            },
            Err(e) => doc_fail(e),
        },
        ChainOp::Coker { file, map } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            match doc.chain_maps.get(map) {
                Some(AnyChainMap::M(f)) => match coker_chain(&inst, f) {
                    Ok((z, g)) => {
                        let levels: Levels =
                            g.window().iter().map(|i| (i, g.level(i))).collect();
                        let bars: Levels =
                            g.window().iter().map(|i| (i, g.level_bar(i))).collect();
                        print!(
                            "{}",
                            document::render_result_document(
                                "coker", &z, "coker.map", MapKind::E, &levels, &bars, "target",
                                f.dst(),
                            )
                        );
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(e, 1),
                },
                Some(AnyChainMap::E(_)) => fail("cokernels apply to m-kind maps", 1),
                None => fail(format!("unknown chain map `{map}`"), 1),
            }
        }
        ChainOp::Ker { file, map } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            match doc.chain_maps.get(map) {
                Some(AnyChainMap::E(g)) => match ker_chain(&inst, g) {
                    Ok((k, f)) => {
                        let levels: Levels =
                            f.window().iter().map(|i| (i, f.level(i))).collect();
                        let bars: Levels =
                            f.window().iter().map(|i| (i, f.level_bar(i))).collect();
                        print!(
                            "{}",
                            document::render_result_document(
                                "ker", &k, "ker.map", MapKind::M, &levels, &bars, "target",
                                g.dst(),
                            )
                        );
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(e, 1),
                },
                Some(AnyChainMap::M(_)) => fail("kernels apply to e-kind maps", 1),
                None => fail(format!("unknown chain map `{map}`"), 1),
            }
        }
        ChainOp::Qiso { file, map } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            let verdict = match doc.chain_maps.get(map) {
                Some(AnyChainMap::M(f)) => is_quasi_iso_m(&inst, f),
                Some(AnyChainMap::E(g)) => is_quasi_iso_e(&inst, g),
                None => return fail(format!("unknown chain map `{map}`"), 1),
            };
            match verdict {
                Ok(true) => {
                    println!("true");
                    ExitCode::SUCCESS
                }
                Ok(false) => {
                    println!("false");
                    ExitCode::from(1)
                }
                Err(e) => fail(e, 1),
            }
        }
        ChainOp::Homology {
            file,
            complex,
            degree,
        } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            let Some(x) = doc.complexes.get(complex) else {
                return fail(format!("unknown complex `{complex}`"), 1);
            };
            let degrees: Vec<i32> = match degree {
                Some(i) => vec![*i],
                None => x.window().iter().collect(),
            };
            for i in degrees {
                match homology(&inst, x, i) {
                    Ok(h) => println!("H_{i} = {h:?}"),
                    Err(e) => return fail(e, 1),
                }
            }
            ExitCode::SUCCESS
        }
        ChainOp::Exact { file, complex } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            let Some(x) = doc.complexes.get(complex) else {
                return fail(format!("unknown complex `{complex}`"), 1);
            };
            match exactness(&inst, x) {
                Ok(_) => {
                    println!("true");
                    ExitCode::SUCCESS
                }
                Err(ecgw::Error::NotExact(i)) => {
                    println!("false (not exact at degree {i})");
                    ExitCode::from(1)
                }
                Err(e) => fail(e, 1),
            }
        }
    }
}

fn cmd_sdot(op: &SdotOp) -> ExitCode {
    let cgw = ExtCgw::new(FinSetInstance, usize::MAX);
    match op {
        SdotOp::Build { file, row, dot } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            let mut arrows = Vec::with_capacity(row.len());
            for name in row {
                let Some(fun) = doc.maps.get(name) else {
                    return fail(format!("unknown map `{name}`"), 1);
                };
                let inj = match ecgw::extcat::Injection::new(fun.clone()) {
                    Ok(i) => i,
                    Err(e) => return fail(format!("map `{name}`: {e}"), 1),
                };
                match cgw.mor(inj.dom().clone(), inj.cod().clone(), inj) {
                    Ok(m) => arrows.push(m),
                    Err(e) => return fail(format!("map `{name}`: {e}"), 1),
                }
            }
            match staircase_build(&cgw, &arrows) {
                Ok(s) => {
                    if *dot {
                        print!("{}", dot::render(&cgw, &s));
                    } else {
                        print!("{}", dot::describe(&cgw, &s));
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e, 1),
            }
        }
        SdotOp::Face {
            file,
            staircase,
            index,
            dot,
        }
        | SdotOp::Degeneracy {
            file,
            staircase,
            index,
            dot,
        } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            let Some((_, s)) = doc.staircases.get(staircase) else {
                return fail(format!("unknown staircase `{staircase}`"), 1);
            };
            let result = match op {
                SdotOp::Face { .. } => face(&cgw, s, *index),
                _ => degeneracy(&cgw, s, *index),
            };
            match result {
                Ok(s2) => {
                    if *dot {
                        print!("{}", dot::render(&cgw, &s2));
                    } else {
                        print!("{}", dot::describe(&cgw, &s2));
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e, 1),
            }
        }
        SdotOp::Identities {
            max_level,
            max_size,
            seed,
        } => {
            let c = ExtCgw::new(FinSetInstance, *max_size);
            let report = identities_audit(&c, *max_level, seed.trials, seed.seed(), seed.jobs());
            print!("{}", report.render());
            if report.total_failures() == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn cmd_k0(op: &K0Op) -> ExitCode {
    match op {
        K0Op::Euler { file, complex } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            match doc.complexes.get(complex) {
                Some(x) => {
                    println!("{}", euler_char(x));
                    ExitCode::SUCCESS
                }
                None => fail(format!("unknown complex `{complex}`"), 1),
            }
        }
        K0Op::Gw { file, window, seed } => {
            let doc = match Document::load(file) {
                Ok(d) => d,
                Err(e) => return doc_fail(e),
            };
            let (a, b) = (window[0], window[1]);
            let inst = FinSetInstance;
            println!("complex\tchi\tchi(drop_top)\tchi(keep_top)\tadditive\tdegrees");
            let mut all_ok = true;
            for (name, x) in &doc.complexes {
                let chi = euler_char(x);
                let dropped = ecgw::chain::truncate(&inst, x, ecgw::chain::Truncate::DropTop);
                let kept = ecgw::chain::truncate(&inst, x, ecgw::chain::Truncate::KeepTop);
                let additive = chi == euler_char(&dropped) + euler_char(&kept);
                all_ok &= additive;
                let degrees = match degree_vector(x, a, b) {
                    Ok(v) => v
                        .iter()
                        .map(|o| o.len().to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    Err(e) => format!("({e})"),
                };
                println!("{name}\t{chi}\t{}\t{}\t{additive}\t{degrees}", euler_char(&dropped), euler_char(&kept));
            }
            let w = match Window::new(a, b) {
                Ok(w) => w,
                Err(e) => return fail(e, 2),
            };
            let report = relation_audit_chain(w, 4, seed.trials, seed.seed());
            print!("{}", report.render());
            if report.violations == 0 && all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        K0Op::Relations {
            instance,
            max_size,
            seed,
        } => {
            let report = match instance.as_str() {
                "finset" => relation_audit_finset(*max_size, seed.trials, seed.seed()),
                "chain" => relation_audit_chain(
                    Window::new(-2, 2).expect("static window"),
                    (*max_size).min(4),
                    seed.trials,
                    seed.seed(),
                ),
                other => return fail(format!("unknown instance `{other}`"), 2),
            };
            print!("{}", report.render());
            if report.violations == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Audit {
            instance,
            suite,
            max_size,
            window,
            seed,
        } => cmd_audit(instance, suite, *max_size, window, seed),
        Command::Chain { op } => cmd_chain(op),
        Command::Sdot { op } => cmd_sdot(op),
        Command::K0 { op } => cmd_k0(op),
    }
}
