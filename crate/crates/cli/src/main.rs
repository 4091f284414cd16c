use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use weylchar::characters::{check_dominant, integer_json};
use weylchar::verify::{f4_checks, generic_checks, Check};
use weylchar::{tensor_decompose, CartanDatum, Engine, Error, LaurentPolynomial, Specialization};

#[derive(Parser)]
#[command(name = "weylchar", version, about = "Exact characters of simple Lie algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for cached tuple systems and characters.
    #[arg(long, env = "WEYLCHAR_CACHE", default_value = ".weylchar-cache", global = true)]
    cache_dir: PathBuf,
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Character of the irreducible module with the given highest weight.
    Character {
        /// Built-in name (A1..A8, B2..B8, C2..C8, D4..D8, E6, F4, G2) or a Cartan JSON file.
        algebra: String,
        /// Dynkin labels, space- or comma-separated.
        #[arg(required = true, allow_negative_numbers = true)]
        labels: Vec<String>,
        /// Merge the variables, e.g. `x,x,y,y` sends u1,u2 to x and u3,u4 to y.
        #[arg(long)]
        spec: Option<String>,
    },
    /// Dimension, by the character and by the product formula.
    Dimension {
        algebra: String,
        #[arg(required = true, allow_negative_numbers = true)]
        labels: Vec<String>,
    },
    /// Decompose V(w1) ⊗ V(w2); weights are comma-separated labels.
    Tensor {
        algebra: String,
        #[arg(allow_negative_numbers = true)]
        w1: String,
        #[arg(allow_negative_numbers = true)]
        w2: String,
    },
    /// Special-root tables, tuples and signatures in canonical order.
    Tables {
        algebra: String,
        /// Row order of the F4 reference tables; identical to the canonical order.
        #[arg(long, value_name = "ALGEBRA")]
        match_paper: Option<String>,
    },
    /// Golden and oracle checks.
    Verify { algebra: String },
}

/// Failure with its exit status: 1 for engine or verification failures, 2
/// for bad input.
struct Failure(u8, String);

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        let _ = writeln!($out, $($arg)*);
    };
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let usage = matches!(
            e,
            Error::UnknownAlgebra(_)
                | Error::NotDominant(_)
                | Error::DimensionMismatch { .. }
                | Error::Parse(_)
                | Error::InvalidCartan(_)
                | Error::Io(_)
                | Error::Json(_)
        );
        Failure(if usage { 2 } else { 1 }, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

fn parse_labels(args: &[String], rank: usize) -> Result<Vec<i64>, Failure> {
    let labels = args
        .iter()
        .flat_map(|a| a.split(','))
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("bad Dynkin label {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if labels.len() != rank {
        return Err(usage(format!("expected {rank} Dynkin labels, got {}", labels.len())));
    }
    if labels.iter().any(|&s| s < 0) {
        return Err(usage(format!("weight {labels:?} is not dominant: labels must be nonnegative")));
    }
    Ok(labels)
}

fn fmt_labels(w: &[i64]) -> String {
    let s: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", s.join(","))
}

fn u_names(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("u{i}")).collect()
}

fn engine(cli: &Cli, datum: CartanDatum) -> Result<Engine, Failure> {
    Ok(if cli.no_cache {
        Engine::new(datum)?
    } else {
        Engine::with_cache_dir(datum, &cli.cache_dir)?
    })
}

fn print_json(out: &mut String, v: &impl serde::Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure(1, e.to_string()))?;
    say!(out, "{s}");
    Ok(())
}

fn character(out: &mut String, cli: &Cli, algebra: &str, labels: &[String], spec: Option<&str>) -> Result<(), Failure> {
    let datum = CartanDatum::resolve(algebra)?;
    let hw = parse_labels(labels, datum.rank())?;
    let merge = spec
        .map(|s| Specialization::merge(s, datum.rank()).map_err(|e| usage(format!("--spec: {e}"))))
        .transpose()?;
    let engine = engine(cli, datum)?;
    let ch = engine.character(&hw)?;
    let datum = engine.datum();
    // Laurent form in e^{αᵢ} when it exists, otherwise the lowest-weight-shifted one
    let (poly, shifted): (LaurentPolynomial, bool) = match ch.laurent_form(datum) {
        Some(p) => (p, false),
        None => (ch.polynomial.clone(), true),
    };
    let (shown, names) = match &merge {
        Some((s, names)) => (poly.specialize(s).map_err(|e| Failure(1, e.to_string()))?, names.clone()),
        None => (poly, u_names(datum.rank())),
    };
    if cli.format == Format::Json {
        let mut v = serde_json::to_value(ch.to_json()).map_err(|e| Failure(1, e.to_string()))?;
        if merge.is_some() {
            v["specialized"] = json!({
                "vars": names,
                "poly": shown.to_json(),
                "lowest_at_origin": shifted,
            });
        }
        return print_json(out, &v);
    }
    say!(out, "V{} of {}, dimension {}", fmt_labels(&hw), datum.name(), ch.dimension);
    if shifted {
        say!(out, "# weights outside the root lattice: exponents are relative to the lowest weight");
    }
    say!(out, "{}", shown.display_with(&names));
    say!(out, "dominant weights (multiplicity):");
    for (w, m) in &ch.multiplicities {
        say!(out, "  {} {m}", fmt_labels(w));
    }
    Ok(())
}

fn dimension(out: &mut String, cli: &Cli, algebra: &str, labels: &[String]) -> Result<(), Failure> {
    let datum = CartanDatum::resolve(algebra)?;
    let hw = parse_labels(labels, datum.rank())?;
    check_dominant(&datum, &hw)?;
    let dim = engine(cli, datum)?.dimension(&hw)?;
    match cli.format {
        Format::Json => print_json(out, &json!({ "hw": hw, "dim": integer_json(&dim) })),
        Format::Text => {
            say!(out, "{dim}");
            Ok(())
        }
    }
}

fn tensor(out: &mut String, cli: &Cli, algebra: &str, w1: &str, w2: &str) -> Result<(), Failure> {
    let datum = CartanDatum::resolve(algebra)?;
    let l1 = parse_labels(&[w1.to_string()], datum.rank())?;
    let l2 = parse_labels(&[w2.to_string()], datum.rank())?;
    let engine = engine(cli, datum)?;
    let d = tensor_decompose(&engine, &l1, &l2)?;
    if cli.format == Format::Json {
        return print_json(out, &d.to_json());
    }
    say!(out, "V{} ⊗ V{} =", fmt_labels(&l1), fmt_labels(&l2));
    for (w, m) in &d.constituents {
        say!(out, "  {m} × V{}  dim {}", fmt_labels(w), engine.dimension(w)?);
    }
    let (c1, c2) = (engine.dimension(&l1)?, engine.dimension(&l2)?);
    say!(out, "{} constituents; dimension check {c1} × {c2} = {}", d.constituents.len(), d.dimension);
    Ok(())
}

fn tables(out: &mut String, cli: &Cli, algebra: &str, match_paper: Option<&str>) -> Result<(), Failure> {
    let datum = CartanDatum::resolve(algebra)?;
    if let Some(m) = match_paper {
        if !m.eq_ignore_ascii_case("f4") || datum.name() != "F4" {
            return Err(usage("--match-paper is only defined for F4"));
        }
    }
    let engine = engine(cli, datum)?;
    let (datum, sys) = (engine.datum(), engine.system());
    if cli.format == Format::Json {
        return print_json(out, &sys.to_json(datum));
    }
    let sizes: Vec<String> = sys.tables.sizes().iter().map(ToString::to_string).collect();
    say!(out, "# {}: {} special-root tables of sizes {}", datum.name(), sizes.len(), sizes.join("/"));
    say!(out, "# order: ascending lexicographic on simple-root coordinates; for F4 this is the reference row numbering");
    say!(out, "# index\trow\tsimple-root coordinates");
    for (i, t) in sys.tables.tables.iter().enumerate() {
        for (k, g) in t.iter().enumerate() {
            let c: Vec<String> = g.0.iter().map(ToString::to_string).collect();
            say!(out, "{}\t{}\t{}", i + 1, k + 1, c.join(" "));
        }
    }
    say!(out, "# {} tuples, signature sum {}", sys.len(), sys.signatures.iter().map(|&s| s as i64).sum::<i64>());
    say!(out, "# tuple\trow indices into the special-root tables\tsignature");
    for (a, (t, s)) in sys.tuples.iter().zip(&sys.signatures).enumerate() {
        let idx: Vec<String> = t.iter().map(|k| (k + 1).to_string()).collect();
        say!(out, "{}\t{}\t{}", a + 1, idx.join(" "), if *s > 0 { "+1" } else { "-1" });
    }
    Ok(())
}

fn verify(out: &mut String, cli: &Cli, algebra: &str) -> Result<(), Failure> {
    let datum = CartanDatum::resolve(algebra)?;
    let is_f4 = datum.name() == "F4";
    let engine = engine(cli, datum)?;
    let checks: Vec<Check> = if is_f4 { f4_checks(&engine) } else { generic_checks(&engine) };
    if cli.format == Format::Json {
        let v: Vec<_> = checks
            .iter()
            .map(|c| json!({ "id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect();
        print_json(out, &v)?;
    } else {
        for c in &checks {
            say!(out, "{c}");
        }
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure(1, format!("failed: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match &cli.command {
        Command::Character { algebra, labels, spec } => character(&mut out, &cli, algebra, labels, spec.as_deref()),
        Command::Dimension { algebra, labels } => dimension(&mut out, &cli, algebra, labels),
        Command::Tensor { algebra, w1, w2 } => tensor(&mut out, &cli, algebra, w1, w2),
        Command::Tables { algebra, match_paper } => tables(&mut out, &cli, algebra, match_paper.as_deref()),
        Command::Verify { algebra } => verify(&mut out, &cli, algebra),
    };
    // a closed pipe (`| head`) is not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("weylchar: {msg}");
            ExitCode::from(code)
        }
    }
}
