use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aloop_core::catalog::{
    classify_p3, enumerate, read_table, table_to_json, EnumerateOptions, Enumeration, P3Report,
};
use aloop_core::cocycle::CocycleVector;
use aloop_core::construct::{
    build_central_extension, build_gf, build_qn, build_ter_ring, build_terg, build_trilinear_extension,
    newforms_form, symmetrize_13, ExtensionSpec, GfSpec, TergParams, TrilinearForm,
};
use aloop_core::iso::{find_isomorphism, find_isotopism};
use aloop_core::structure::{analyze, Analysis};
use aloop_core::verify::{run_suite, suite_passed, CheckResult, Suite};
use aloop_core::{Error, LoopTable, Permutation};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "aloop", version, about = "Commutative automorphic loops: construction, analysis and enumeration")]
struct Cli {
    /// Output style for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Gf,
    Qn,
    Trilinear,
    Terg,
    TerRing,
    Extension,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Aloop,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Center {
    Any,
    Nontrivial,
}

#[derive(Subcommand)]
enum Command {
    /// Build a loop from one of the construction families.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Modulus (terg), dimension (qn, trilinear).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Cyclic factors of the group (gf) or ring (ter-ring), e.g. `4,2`.
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<usize>,
        /// Images of the bijection `f` (gf).
        #[arg(long, value_delimiter = ',')]
        f: Vec<usize>,
        /// Automorphism images (gf, with --t).
        #[arg(long, value_delimiter = ',')]
        g: Vec<usize>,
        #[arg(long)]
        t: Option<usize>,
        /// Basis values of a trilinear form as a 0/1 string of length n³.
        #[arg(long)]
        values: Option<String>,
        /// Base loop file (extension).
        #[arg(long)]
        base: Option<PathBuf>,
        /// Cocycle JSON file (extension).
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Where to write the table; `.json` selects JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report structural invariants of a table file.
    Analyze { file: PathBuf },
    /// Find an isomorphism between two loops.
    Iso { first: PathBuf, second: PathBuf },
    /// Find an isotopism between two loops.
    Isotopic { first: PathBuf, second: PathBuf },
    /// Enumerate commutative A-loops of a supported order.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Center::Any)]
        center: Center,
        #[arg(long)]
        exponent: Option<usize>,
        /// Catalog output (JSON lines).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Isomorphism classes of the `Z_p³` family.
    ClassifyP3 {
        #[arg(long)]
        p: usize,
    },
    /// Run a reproduction suite: quick, table1, p3 or full.
    VerifyPaper {
        #[arg(long, default_value = "quick")]
        suite: Suite,
    },
    /// Convert between ALOOP text and JSON.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
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

type CmdResult = Result<(), Failure>;

fn load(path: &Path) -> Result<LoopTable, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    read_table(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Input(format!("missing --{flag}")))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn print_analysis(a: &Analysis, format: Format) {
    if format == Format::Json {
        println!("{}", json(a));
        return;
    }
    println!("order            {}", a.order);
    println!("commutative      {}", a.commutative);
    println!("associative      {}", a.associative);
    println!("A-loop           {}", a.a_loop);
    println!("nuclei (l/m/r)   {} / {} / {}", a.left_nucleus, a.middle_nucleus, a.right_nucleus);
    println!("center           {}", a.center);
    println!("exponent         {}", a.exponent.map_or("-".into(), |e| e.to_string()));
    println!("|Inn|            {}", a.inn_order);
    println!("|Mlt|            {}", a.mlt_order);
    let hist: Vec<String> = a.element_orders.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    println!("element orders   {}", hist.join(" "));
}

fn table_text(l: &LoopTable, path: Option<&Path>, to: Option<TableFormat>) -> String {
    let as_json = match to {
        Some(f) => f == TableFormat::Json,
        None => path.is_some_and(|p| p.extension().is_some_and(|e| e == "json")),
    };
    if as_json {
        table_to_json(l)
    } else {
        l.to_aloop_string()
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    family: Family,
    n: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    moduli: Vec<usize>,
    f: Vec<usize>,
    g: Vec<usize>,
    t: Option<usize>,
    values: Option<String>,
    base: Option<PathBuf>,
    cocycle: Option<PathBuf>,
) -> Result<LoopTable, Failure> {
    Ok(match family {
        Family::Terg => build_terg(TergParams::new(need(n, "n")?, a.unwrap_or(0), b.unwrap_or(0))?)?,
        Family::Qn => build_qn(need(n, "n")?)?,
        Family::TerRing => build_ter_ring(&moduli)?,
        Family::Gf => {
            if moduli.is_empty() {
                return Err(Failure::Input("missing --moduli".into()));
            }
            let group = LoopTable::abelian(&moduli);
            let spec = if !f.is_empty() {
                GfSpec::new(group, Permutation::new(f)?)?
            } else {
                GfSpec::from_automorphism(group, Permutation::new(g)?, need(t, "t")?)?
            };
            build_gf(&spec)?
        }
        Family::Trilinear => {
            let dim = need(n, "n")?;
            let form = match values {
                Some(bits) => {
                    let v: Vec<u8> = bits
                        .chars()
                        .map(|c| c.to_digit(2).map(|d| d as u8).ok_or_else(|| Failure::Input(format!("bad bit `{c}`"))))
                        .collect::<Result<_, _>>()?;
                    TrilinearForm::from_values(dim, v)?
                }
                None => symmetrize_13(&newforms_form(dim)?),
            };
            build_trilinear_extension(&form)?
        }
        Family::Extension => {
            let k = load(&need(base, "base")?)?;
            let path = need(cocycle, "cocycle")?;
            let text = fs::read_to_string(&path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let theta: CocycleVector =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let m = theta.modulus();
            build_central_extension(&ExtensionSpec::new(k, m, theta)?)?
        }
    })
}

fn print_enumeration(e: &Enumeration, format: Format) {
    if format == Format::Json {
        let doc = serde_json::json!({
            "summary": e.summary,
            "extension_stats": e.extension_stats,
            "records": e.catalog.records.iter().map(|r| serde_json::json!({
                "id": r.id, "provenance": r.provenance, "flags": r.flags,
            })).collect::<Vec<_>>(),
        });
        println!("{}", json(&doc));
        return;
    }
    let s = &e.summary;
    let show = |c: Option<aloop_core::catalog::Count>| c.map_or("-".into(), |c| format!("{} ({})", c.isomorphism, c.isotopy));
    println!("order {}: {} catalog records", s.order, e.catalog.len());
    println!("  commutative groups                       {}", s.groups);
    println!("  nonassociative                           {}", show(s.nonassociative));
    println!("  with nontrivial center                   {}", show(s.with_center));
    println!("  prime exponent                           {}", show(s.prime_exponent));
    println!("  prime exponent, nontrivial center        {}", show(s.prime_exponent_with_center));
    if !e.extension_stats.is_empty() {
        println!("  extensions before isomorphism filtering  {} ({} orbits)", s.extensions_before_isomorphism, s.orbits_total);
        for x in &e.extension_stats {
            println!(
                "    base {:<10} p={} dim C={} B={} D={} orbits={} extensions={} new={}",
                x.base, x.modulus, x.dim_c, x.dim_b, x.dim_d, x.orbits, x.extensions, x.new_classes
            );
        }
    }
}

fn print_p3(r: &P3Report, format: Format) {
    if format == Format::Json {
        println!("{}", json(r));
        return;
    }
    println!("p = {}: {} isomorphism classes", r.p, r.classes.len());
    for (i, c) in r.classes.iter().enumerate() {
        let members: Vec<String> = c.members.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let hist: Vec<String> = c.order_histogram.iter().map(|(o, n)| format!("{o}:{n}")).collect();
        println!("  class {}: {}", i + 1, members.join(" "));
        println!("    |Mlt| = {}, element orders {}", c.mlt_order, hist.join(" "));
    }
    println!("residue partition {}", if r.matches_residue_pattern { "matches" } else { "differs" });
}

fn print_checks(results: &[CheckResult], format: Format) {
    if format == Format::Json {
        println!("{}", json(&results));
        return;
    }
    for r in results {
        let verdict = match (r.pass, r.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        println!("{verdict}  {:<58} expected {:<10} computed {}", r.name, r.expected, r.computed);
    }
}

fn run(cli: Cli) -> CmdResult {
    let format = cli.format;
    match cli.command {
        Command::Construct { family, n, a, b, moduli, f, g, t, values, base, cocycle, out } => {
            let l = construct(family, n, a, b, moduli, f, g, t, values, base, cocycle)?;
            match &out {
                Some(path) => write(path, &table_text(&l, Some(path), None))?,
                None if format == Format::Text => print!("{}", l.to_aloop_string()),
                None => {}
            }
            if out.is_some() || format == Format::Json {
                print_analysis(&analyze(&l), format);
            }
        }
        Command::Analyze { file } => print_analysis(&analyze(&load(&file)?), format),
        Command::Iso { first, second } => {
            let (a, b) = (load(&first)?, load(&second)?);
            match find_isomorphism(&a, &b) {
                Some(m) if format == Format::Json => println!("{}", json(&serde_json::json!({"isomorphic": true, "map": m.images()}))),
                Some(m) => println!("isomorphic: {:?}", m.images()),
                None => {
                    if format == Format::Json {
                        println!("{}", json(&serde_json::json!({"isomorphic": false})));
                    }
                    return Err(Failure::Verification("not isomorphic".into()));
                }
            }
        }
        Command::Isotopic { first, second } => {
            let (a, b) = (load(&first)?, load(&second)?);
            match find_isotopism(&a, &b) {
                Some(t) if format == Format::Json => println!("{}", json(&serde_json::json!({"isotopic": true, "triple": t}))),
                Some(t) => println!("isotopic:\n  alpha {:?}\n  beta  {:?}\n  gamma {:?}", t.alpha, t.beta, t.gamma),
                None => {
                    if format == Format::Json {
                        println!("{}", json(&serde_json::json!({"isotopic": false})));
                    }
                    return Err(Failure::Verification("not isotopic".into()));
                }
            }
        }
        Command::Enumerate { order, center, exponent, out } => {
            let opts = EnumerateOptions { center_nontrivial: center == Center::Nontrivial, exponent };
            let e = enumerate(order, opts)?;
            if let Some(path) = out {
                write(&path, &e.catalog.to_jsonl())?;
            }
            print_enumeration(&e, format);
        }
        Command::ClassifyP3 { p } => print_p3(&classify_p3(p)?, format),
        Command::VerifyPaper { suite } => {
            let results = run_suite(suite)?;
            print_checks(&results, format);
            if !suite_passed(&results) {
                return Err(Failure::Verification("some checks failed".into()));
            }
        }
        Command::Convert { input, to, out } => {
            let l = load(&input)?;
            let text = table_text(&l, None, Some(to));
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
