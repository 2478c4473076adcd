mod report;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use frobenius::catalog::{self, Params, DEFAULT_MAX_N};
use frobenius::jordan::{jordanize, JordanMatrices};
use frobenius::lie::LieAlgebra;
use frobenius::masa::{is_masa, kravchuk_signature, nilpotency_class, Ambient, MatrixSet};
use frobenius::matrix::normalizer_of_span;
use frobenius::nonderog::{cartan_test, classify_g_phi, eigen_signature};
use frobenius::{frobenius_decide, semidirect_sum, FrobeniusVerdict, MatrixQ};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use report::VerifyReport;

#[derive(Parser)]
#[command(name = "frobenius", version, about = "Exact computations with 2-solvable Frobenius Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify G_phi = R[phi] x R^n for a nonderogatory phi.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact Jordan form; writes J.json and P.json into --out.
    Jordanize {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether an algebra is Frobenius.
    Frobenius {
        #[command(flatten)]
        input: AlgebraInput,
        #[arg(long)]
        json: bool,
    },
    /// MASA test, Kravchuk signature and nilpotency class of a matrix set.
    Masa {
        #[arg(long)]
        generators: PathBuf,
        #[arg(long, value_enum, default_value = "gl")]
        ambient: AmbientArg,
        #[arg(long)]
        json: bool,
    },
    /// Derivation algebra, and the normalizer of span(B) for a matrix set.
    Derivations {
        #[command(flatten)]
        input: AlgebraInput,
        #[arg(long)]
        json: bool,
    },
    /// Browse the catalog of named algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the verification suites.
    VerifyPaper {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct AlgebraInput {
    /// Structure constants: {"dim":…,"brackets":[{"i":…,"j":…,"terms":[{"k":…,"c":"…"}]}]}.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// A commuting matrix set {"n":…,"generators":[…]}; the algebra is span(B) x R^n.
    #[arg(long)]
    generators: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Show {
        name: String,
        /// key=value, repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, i64)>,
        /// Recompute the stated facts.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AmbientArg {
    Gl,
    Sl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn parse_param(s: &str) -> std::result::Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("value of {k} is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

/// Input problems exit with 2, math preconditions with 3.
enum Failure {
    Input(anyhow::Error),
    Math(anyhow::Error),
    Checks,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        if e.chain().any(|c| c.is::<frobenius::Error>()) {
            Failure::Math(e)
        } else {
            Failure::Input(e)
        }
    }
}

impl From<frobenius::Error> for Failure {
    fn from(e: frobenius::Error) -> Self {
        Failure::Math(e.into())
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    // serde errors carry line and column
    serde_json::from_str(&text).map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))
}

fn max_n() -> Result<usize, Failure> {
    match std::env::var("FROBENIUS_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(anyhow!("FROBENIUS_MAX_N = {v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn fmt_matrix(m: &MatrixQ) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn load_algebra(input: &AlgebraInput) -> Result<(LieAlgebra, Option<MatrixSet>), Failure> {
    if let Some(path) = &input.algebra {
        return Ok((read_json(path)?, None));
    }
    let path = input.generators.as_ref().expect("clap enforces one input");
    let set: MatrixSet = read_json(path)?;
    let g = semidirect_sum(set.generators(), set.n())?;
    Ok((g, Some(set)))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { matrix, json } => {
            let m: MatrixQ = read_json(&matrix)?;
            let label = classify_g_phi(&m)?;
            if json {
                let sig = eigen_signature(&m)?;
                let cartan = cartan_test(&m)?;
                print_json(&json!({"label": label, "signature": sig, "cartan": cartan.is_cartan}));
            } else {
                println!("{label}");
            }
        }
        Command::Jordanize { matrix, out, json } => {
            let m: MatrixQ = read_json(&matrix)?;
            let label = classify_g_phi(&m)?;
            let res = jordanize(&m)?;
            let (j, p) = match &res.matrices {
                JordanMatrices::Rational { j, p } => (json!(j), json!(p)),
                JordanMatrices::Quadratic { j, p, .. } => (json!(j), json!(p)),
            };
            fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;
            for (name, v) in [("J.json", &j), ("P.json", &p)] {
                let path = out.join(name);
                fs::write(&path, serde_json::to_string_pretty(v).expect("json value"))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            if json {
                print_json(&json!({
                    "label": label,
                    "convention": res.convention,
                    "blocks": res.blocks,
                    "J": j,
                    "P": p,
                    "detP": res.det_p,
                }));
            } else {
                println!("label: {label}");
                println!("convention: {}", res.convention);
                println!("cases: {:?}", res.case_tags());
                if let JordanMatrices::Quadratic { d, .. } = &res.matrices {
                    println!("field: Q(s), s^2 = {d}");
                }
                println!("det(P) = {}", res.det_p);
                println!("wrote {} and {}", out.join("J.json").display(), out.join("P.json").display());
            }
        }
        Command::Frobenius { input, json } => {
            let (g, _) = load_algebra(&input)?;
            let verdict = frobenius_decide(&g);
            if json {
                print_json(&json!({"dim": g.dim(), "result": verdict}));
            } else {
                match &verdict {
                    FrobeniusVerdict::Frobenius { certificate, pfaffian_value } => {
                        let coeffs: Vec<String> = certificate.coeffs.iter().map(|c| c.to_string()).collect();
                        println!("Frobenius");
                        println!("certificate: alpha = [{}]", coeffs.join(", "));
                        println!("Pf(d alpha) = {pfaffian_value}");
                    }
                    FrobeniusVerdict::NotFrobenius if g.dim() % 2 == 1 => {
                        println!("NotFrobenius: odd dimension {}", g.dim());
                    }
                    FrobeniusVerdict::NotFrobenius => println!("NotFrobenius: Pfaffian identically zero"),
                }
            }
        }
        Command::Masa { generators, ambient, json } => {
            let set: MatrixSet = read_json(&generators)?;
            let ambient = match ambient {
                AmbientArg::Gl => Ambient::Gl,
                AmbientArg::Sl => Ambient::Sl,
            };
            let masa = is_masa(set.generators(), ambient)?;
            let (class, kravchuk) = match nilpotency_class(set.generators()) {
                Ok(c) => (Some(c), Some(kravchuk_signature(set.generators())?)),
                Err(frobenius::Error::NotNilpotent(_)) => (None, None),
                Err(e) => return Err(e.into()),
            };
            if json {
                print_json(&json!({"n": set.n(), "ambient": ambient, "is_masa": masa, "kravchuk": kravchuk, "class": class}));
            } else {
                println!("is_masa ({}): {masa}", if matches!(ambient, Ambient::Gl) { "gl" } else { "sl" });
                match (class, kravchuk) {
                    (Some(c), Some(k)) => {
                        println!("nilpotency class: {c}");
                        println!("kravchuk (nu, m, mu) = ({}, {}, {})", k.nu, k.m, k.mu);
                    }
                    _ => println!("not nilpotent"),
                }
            }
        }
        Command::Derivations { input, json } => {
            let (g, set) = load_algebra(&input)?;
            let der = g.derivation_algebra();
            let der_basis = der.basis_matrices()?;
            let normalizer = match &set {
                Some(s) => Some(normalizer_of_span(s.generators())?.basis_matrices()?),
                None => None,
            };
            if json {
                print_json(&json!({
                    "dim": g.dim(),
                    "derivation_dim": der.dim(),
                    "derivations": der_basis,
                    "normalizer_dim": normalizer.as_ref().map(Vec::len),
                    "normalizer": normalizer,
                }));
            } else {
                println!("dim Der = {}", der.dim());
                if let Some(nb) = &normalizer {
                    println!("dim N(span B) = {}", nb.len());
                    for (k, m) in nb.iter().enumerate() {
                        println!("N{}: {}", k + 1, fmt_matrix(m));
                    }
                }
            }
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { json } => {
                let fams = catalog::list();
                if json {
                    print_json(&json!(fams));
                } else {
                    for f in fams {
                        println!("{:<8} {:<44} {}", f.name, f.params, f.description);
                    }
                }
            }
            CatalogAction::Show { name, params, check } => {
                let params: Params = params.into_iter().collect();
                let entry = catalog::build_with_max(&name, &params, max_n()?)?;
                let mut v = json!(entry);
                if check {
                    v["facts"] = json!(entry.check_facts()?);
                }
                print_json(&v);
            }
        },
        Command::VerifyPaper { suite, format } => {
            let checks = suites::checks(&suite, max_n()?).map_err(Failure::Input)?;
            let report = VerifyReport::run(&suite, checks);
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
