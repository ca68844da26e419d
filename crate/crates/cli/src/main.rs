//! Command-line front end for the `ribbonheap` library.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ribbonheap::cochain::{check_cocycle_conditions, mutual_distributivity_witness};
use ribbonheap::coloring::{count_colorings, enumerate_colorings};
use ribbonheap::diagram::{realize_group, write_srd};
use ribbonheap::invariant::{cocycle_invariant, Decoration, InvariantValue};
use ribbonheap::moves::{fuzz, FuzzConfig};
use ribbonheap::presentation::{abelianization, fundamental_presentation, tietze_simplify, DEFAULT_BUDGET_FACTOR};
use ribbonheap::{checks, corpus, spec};
use ribbonheap::{Error, GroupPresentation, Result, RibbonDiagram};

#[derive(Parser)]
#[command(
    name = "ribbonheap",
    version,
    about = "Heaps, colorings and cocycle invariants of surface ribbons"
)]
struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Output::Human, global = true)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Json,
}

#[derive(Args)]
struct DiagramArg {
    /// An `.srd` file or a builder spec such as `torus:2`.
    #[arg(long, short)]
    diagram: String,
}

#[derive(Args)]
struct CocycleArgs {
    #[arg(long)]
    heap: String,
    /// Coefficient group; inferred from the first cocycle when omitted.
    #[arg(long)]
    coeff: Option<String>,
    /// One cocycle spec per surface component, comma separated.
    #[arg(long)]
    cocycles: String,
}

#[derive(Subcommand)]
enum Command {
    /// Topology of each surface component.
    Validate(DiagramArg),
    /// Boundary cycles, arcs and under-passages.
    Boundary(DiagramArg),
    /// The fundamental heap as a group presentation.
    Presentation {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        abelianize: bool,
    },
    /// Heap colorings.
    Colorings {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long)]
        heap: String,
        #[arg(long, conflicts_with = "count")]
        list: bool,
        #[arg(long)]
        count: bool,
    },
    /// The cocycle invariant.
    Invariant {
        #[command(flatten)]
        d: DiagramArg,
        #[command(flatten)]
        c: CocycleArgs,
    },
    /// Cocycle, nondegeneracy, reversibility, additivity and separability.
    CocycleCheck {
        #[arg(long)]
        heap: String,
        #[arg(long)]
        coeff: Option<String>,
        #[arg(long)]
        cocycle: String,
    },
    /// Mutual distributivity of two cocycles.
    MutdistCheck {
        #[command(flatten)]
        c: CocycleArgs,
    },
    /// Random isotopy moves, checking an invariant before and after.
    Fuzz {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FuzzCheck::Colorings)]
        check: FuzzCheck,
        #[arg(long, default_value = "cyclic:3")]
        heap: String,
        #[arg(long)]
        coeff: Option<String>,
        #[arg(long)]
        cocycles: Option<String>,
        /// Print the move trace.
        #[arg(long)]
        trace: bool,
    },
    /// A surface whose fundamental heap is a free product with the given group.
    Realize {
        #[arg(long)]
        presentation: PathBuf,
    },
    /// The fixture corpus.
    Corpus {
        /// Recompute every acceptance row.
        #[arg(long)]
        run_all: bool,
        /// Recompute a single acceptance row.
        #[arg(long, conflicts_with = "run_all")]
        criterion: Option<usize>,
        /// Write each fixture as an `.srd` file into this directory.
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuzzCheck {
    Colorings,
    Invariant,
}

fn base() -> &'static Path {
    Path::new(".")
}

fn load(d: &DiagramArg) -> Result<RibbonDiagram> {
    spec::load_diagram(&d.diagram, base())
}

fn decoration(c: &CocycleArgs) -> Result<Decoration> {
    let heap = spec::parse_heap(&c.heap, base())?;
    let first = c.cocycles.split(',').next().unwrap_or("");
    let coeffs = match &c.coeff {
        Some(s) => spec::parse_coeffs(s)?,
        None => spec::default_coeffs(first, &heap)?,
    };
    Decoration::new(spec::parse_cocycles(&c.cocycles, &heap, &coeffs, base())?)
}

fn line(v: Value) {
    println!("{v}");
}

fn print_invariant(v: &InvariantValue, out: Output) {
    for (term, mult) in v.terms() {
        match out {
            Output::Human => {
                let parts: Vec<String> = term
                    .iter()
                    .enumerate()
                    .map(|(c, f)| format!("[{}: ({})]", c + 1, v.factor_names(f).join(", ")))
                    .collect();
                println!("{mult} × {}", parts.join(" "));
            }
            Output::Json => {
                let comps: Vec<Vec<String>> = term.iter().map(|f| v.factor_names(f)).collect();
                line(json!({"term": {"components": comps}, "mult": mult}));
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let out = cli.output;
    match cli.command {
        Command::Validate(d) => {
            let s = load(&d)?.validate()?;
            for (i, c) in s.components.iter().enumerate() {
                match out {
                    Output::Human => println!(
                        "component {}: euler {}, genus {}, boundaries {}",
                        i + 1,
                        c.euler,
                        c.genus,
                        c.boundaries
                    ),
                    Output::Json => line(json!({
                        "component": i + 1, "euler": c.euler, "genus": c.genus, "boundaries": c.boundaries
                    })),
                }
            }
            if out == Output::Human {
                println!(
                    "total: {} components, genus {}, {} boundaries",
                    s.nu(),
                    s.total_genus(),
                    s.total_boundaries()
                );
            }
        }
        Command::Boundary(d) => {
            let bs = load(&d)?.boundary()?;
            for (i, c) in bs.cycles.iter().enumerate() {
                let events: Vec<[usize; 4]> = c
                    .events
                    .iter()
                    .map(|e| [e.before, e.first, e.second, e.after])
                    .collect();
                match out {
                    Output::Human => {
                        println!("boundary {} (component {}): arcs {:?}", i + 1, c.component + 1, c.arcs);
                        for e in &c.events {
                            println!(
                                "  crossing {}: {} = T({}, {}, {})",
                                e.crossing, e.after, e.before, e.first, e.second
                            );
                        }
                    }
                    Output::Json => line(json!({
                        "boundary": i + 1, "component": c.component + 1, "arcs": c.arcs, "events": events
                    })),
                }
            }
        }
        Command::Presentation {
            d,
            simplify,
            abelianize,
        } => {
            let mut p = fundamental_presentation(&load(&d)?)?;
            if simplify {
                p = tietze_simplify(&p, p.generator_count() * DEFAULT_BUDGET_FACTOR);
            }
            let ab = abelianize.then(|| abelianization(&p).to_string());
            match out {
                Output::Human => {
                    print!("{p}");
                    if let Some(ab) = ab {
                        println!("abelianization: {ab}");
                    }
                }
                Output::Json => {
                    let rels: Vec<String> = p.relators.iter().map(|r| p.word_to_string(r)).collect();
                    line(json!({"generators": p.generators, "relators": rels, "abelianization": ab}));
                }
            }
        }
        Command::Colorings { d, heap, list, .. } => {
            let d = load(&d)?;
            let x = spec::parse_heap(&heap, base())?;
            if list {
                for c in enumerate_colorings(&d, &x)? {
                    let names: Vec<String> = c.colors.iter().map(|&a| x.element_name(a)).collect();
                    match out {
                        Output::Human => println!("{}", names.join(" ")),
                        Output::Json => line(json!({ "colors": names })),
                    }
                }
            } else {
                let n = count_colorings(&d, &x)?;
                match out {
                    Output::Human => println!("{n}"),
                    Output::Json => line(json!({ "count": n })),
                }
            }
        }
        Command::Invariant { d, c } => {
            let v = cocycle_invariant(&load(&d)?, &decoration(&c)?)?;
            print_invariant(&v, out);
        }
        Command::CocycleCheck { heap, coeff, cocycle } => {
            let x = spec::parse_heap(&heap, base())?;
            let a = match coeff {
                Some(s) => spec::parse_coeffs(&s)?,
                None => spec::default_coeffs(&cocycle, &x)?,
            };
            let r = check_cocycle_conditions(&spec::parse_cocycle(&cocycle, &x, &a, base())?);
            let rows = [
                ("cocycle", r.is_cocycle, &r.cocycle_witness),
                ("nondegenerate", r.is_nondegenerate, &r.nondegenerate_witness),
                ("reversible", r.is_reversible, &r.reversible_witness),
                ("additive", r.is_additive, &r.additive_witness),
                ("separable", r.is_separable, &r.separable_witness),
            ];
            match out {
                Output::Human => {
                    for (name, ok, w) in rows {
                        match w {
                            Some(w) if !ok => println!("{name}={ok} at {w:?}"),
                            _ => println!("{name}={ok}"),
                        }
                    }
                }
                Output::Json => {
                    let mut m = serde_json::Map::new();
                    for (name, ok, w) in rows {
                        m.insert(name.into(), json!({"holds": ok, "witness": w}));
                    }
                    line(Value::Object(m));
                }
            }
        }
        Command::MutdistCheck { c } => {
            let heap = spec::parse_heap(&c.heap, base())?;
            let first = c.cocycles.split(',').next().unwrap_or("");
            let coeffs = match &c.coeff {
                Some(s) => spec::parse_coeffs(s)?,
                None => spec::default_coeffs(first, &heap)?,
            };
            let list = spec::parse_cocycles(&c.cocycles, &heap, &coeffs, base())?;
            let [p, q] = <[_; 2]>::try_from(list).map_err(|l| Error::LengthMismatch {
                expected: 2,
                got: l.len(),
            })?;
            let (w1, w2) = mutual_distributivity_witness(&p, &q)?;
            let holds = w1.is_none() && w2.is_none();
            match out {
                Output::Human => {
                    println!("mutually distributive={holds}");
                    if let Some(w) = &w1 {
                        println!("first identity fails at {w:?}");
                    }
                    if let Some(w) = &w2 {
                        println!("second identity fails at {w:?}");
                    }
                }
                Output::Json => line(json!({"holds": holds, "first_witness": w1, "second_witness": w2})),
            }
        }
        Command::Fuzz {
            d,
            steps,
            seed,
            check,
            heap,
            coeff,
            cocycles,
            trace,
        } => {
            let d = load(&d)?;
            let x = spec::parse_heap(&heap, base())?;
            let (after, moves) = fuzz(&d, &FuzzConfig::new(seed, steps))?;
            let same_summary = after.validate()? == d.validate()?;
            if trace {
                for (i, m) in moves.iter().enumerate() {
                    match out {
                        Output::Human => println!("{:>4} {:?} → {} crossings", i + 1, m.site, m.crossings_after),
                        Output::Json => line(json!({
                            "step": i + 1, "site": format!("{:?}", m.site), "crossings": m.crossings_after
                        })),
                    }
                }
            }
            let same = match check {
                FuzzCheck::Colorings => {
                    let (a, b) = (count_colorings(&d, &x)?, count_colorings(&after, &x)?);
                    match out {
                        Output::Human => println!("colorings before {a}, after {b}"),
                        Output::Json => line(json!({"before": a, "after": b})),
                    }
                    a == b
                }
                FuzzCheck::Invariant => {
                    let c = CocycleArgs {
                        heap,
                        coeff,
                        cocycles: cocycles.unwrap_or_else(|| "zero".into()),
                    };
                    let dec = decoration(&c)?;
                    let (a, b) = (cocycle_invariant(&d, &dec)?, cocycle_invariant(&after, &dec)?);
                    if out == Output::Human {
                        print!("before:\n{a}after:\n{b}");
                    }
                    a == b
                }
            };
            let ok = same && same_summary;
            match out {
                Output::Human => println!(
                    "{} moves, {}",
                    moves.len(),
                    if ok { "invariant unchanged" } else { "MISMATCH" }
                ),
                Output::Json => line(json!({"steps": moves.len(), "unchanged": ok})),
            }
            return Ok(ok);
        }
        Command::Realize { presentation } => {
            let text = std::fs::read_to_string(&presentation).map_err(|e| Error::Io {
                path: presentation.display().to_string(),
                message: e.to_string(),
            })?;
            let r = realize_group(&GroupPresentation::parse(&text)?)?;
            match out {
                Output::Human => {
                    println!("# free factors: {}", r.free_factors);
                    print!("{}", write_srd(&r.diagram));
                }
                Output::Json => line(json!({"free_factors": r.free_factors, "srd": write_srd(&r.diagram)})),
            }
        }
        Command::Corpus {
            run_all,
            criterion,
            write,
        } => {
            if let Some(dir) = write {
                std::fs::create_dir_all(&dir).map_err(|e| Error::Io {
                    path: dir.display().to_string(),
                    message: e.to_string(),
                })?;
                for (name, d) in corpus::diagrams()? {
                    let path = dir.join(format!("{}.srd", corpus::file_stem(name)));
                    std::fs::write(&path, write_srd(&d)).map_err(|e| Error::Io {
                        path: path.display().to_string(),
                        message: e.to_string(),
                    })?;
                }
            }
            let ids: Vec<usize> = match criterion {
                Some(id) if (1..=checks::row_count()).contains(&id) => vec![id],
                Some(id) => {
                    return Err(Error::IndexOutOfRange {
                        index: id,
                        max: checks::row_count(),
                    })
                }
                None if run_all => (1..=checks::row_count()).collect(),
                None => Vec::new(),
            };
            if ids.is_empty() {
                for &name in corpus::SPECS {
                    let s = spec::parse_builder(name)?.validate()?;
                    match out {
                        Output::Human => println!(
                            "{name:<12} ν={} g={} b={}",
                            s.nu(),
                            s.total_genus(),
                            s.total_boundaries()
                        ),
                        Output::Json => line(json!({
                            "spec": name, "nu": s.nu(), "genus": s.total_genus(), "boundaries": s.total_boundaries()
                        })),
                    }
                }
                return Ok(true);
            }
            let mut all = true;
            for id in ids {
                let r = checks::run(id);
                all &= r.passed;
                match out {
                    Output::Human => println!(
                        "{:>2}  {:<24} {}  {}",
                        r.id,
                        r.title,
                        if r.passed { "PASS" } else { "FAIL" },
                        r.detail
                    ),
                    Output::Json => line(json!({
                        "criterion": r.id, "title": r.title, "passed": r.passed, "detail": r.detail
                    })),
                }
            }
            return Ok(all);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() { 2 } else { 1 })
        }
    }
}
