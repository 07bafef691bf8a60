use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use trirep::classify::{classification_report, default_a_values};
use trirep::exact::Rational;
use trirep::family::{build_family_module, enumerate_params, verify_module, EwMode, FamilyModule, ModuleParams};
use trirep::graded::GradedMap;
use trirep::json::{parse_algebra, parse_representation, to_canonical, AlgebraJson, FamilyTag, RepresentationJson};
use trirep::liealg::{
    adjoint_grading, adjoint_representation, build_sl2, build_sl2_lambda, check_axioms, verify_levi_data, AxiomReport,
    LeviData, LeviReport, LieAlgebra,
};
use trirep::rep::{verify, VerificationReport};

/// Exact construction and verification of triangular representations.
#[derive(Parser)]
#[command(name = "trirep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write algebra or representation JSON.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        #[arg(short, long, default_value = "-", global = true)]
        output: String,
    },
    /// Check the Lie axioms and the declared Levi data of an algebra.
    Check {
        input: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Run every representation check and write a report.
    Verify {
        input: String,
        /// Rebuild a family module with the printed e.w coefficient k(n-k+1).
        #[arg(long)]
        paper_literal: bool,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// List parameter tuples (m, n, s, N) of the module family.
    Enumerate {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        max_m: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// Classify two-component modules and compare with the family.
    Classify {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_m: usize,
        #[arg(long, conflicts_with = "table")]
        json: bool,
        #[arg(long)]
        table: bool,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Split a triangular map into homogeneous degree components.
    Decompose {
        input: String,
        #[arg(short, long, default_value = "-")]
        output: String,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// sl2 on (f, h, e).
    Sl2,
    /// sl2 extended by the (lambda+1)-dimensional irreducible.
    Sl2l {
        #[arg(long)]
        lambda: i64,
    },
    /// Adjoint representation of sl2 (no lambda) or of sl2^lambda.
    Adjoint {
        #[arg(long)]
        lambda: Option<i64>,
    },
    /// A module of the two-component family.
    Family(FamilyArgs),
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    lambda: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
    #[arg(long = "bigN")]
    big_n: usize,
    /// Comma-separated a_1..a_(n-s), e.g. 1/2,-1,0.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    a: String,
    /// Use the printed e.w coefficient k(n-k+1).
    #[arg(long)]
    paper_literal: bool,
}

/// Input or argument problem; exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

fn read_input(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, text: &str) -> Result<(), InputError> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).map_err(|e| InputError(format!("{path}: {e}")))?;
    }
    Ok(())
}

fn parse_a(text: &str) -> Result<Vec<Rational>, InputError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(|e| InputError(format!("scalar {t:?}: {e}"))))
        .collect()
}

fn mode(paper_literal: bool) -> EwMode {
    if paper_literal {
        EwMode::PaperLiteral
    } else {
        EwMode::Corrected
    }
}

fn adjoint_json(l: &LieAlgebra, d: &LeviData) -> Result<String, InputError> {
    let g = adjoint_grading(l, d)?;
    let rho = adjoint_representation(l, d, &g)?;
    Ok(to_canonical(&RepresentationJson::from_representation(&rho, None)))
}

fn gen(what: GenCommand, output: &str) -> Outcome {
    let text = match what {
        GenCommand::Sl2 => {
            let (l, d) = build_sl2();
            to_canonical(&AlgebraJson::from_algebra(&l, &d))
        }
        GenCommand::Sl2l { lambda } => {
            let (l, d) = build_sl2_lambda(lambda)?;
            to_canonical(&AlgebraJson::from_algebra(&l, &d))
        }
        GenCommand::Adjoint { lambda } => {
            let (l, d) = match lambda {
                Some(lambda) => build_sl2_lambda(lambda)?,
                None => build_sl2(),
            };
            adjoint_json(&l, &d)?
        }
        GenCommand::Family(args) => {
            let p = ModuleParams::new(args.lambda, args.m, args.n, args.s, args.big_n, parse_a(&args.a)?);
            let mode = mode(args.paper_literal);
            let fm = build_family_module(&p, mode)?;
            let tag = FamilyTag { params: p, mode };
            to_canonical(&RepresentationJson::from_representation(&fm.representation, Some(tag)))
        }
    };
    write_output(output, &text)?;
    Ok(true)
}

#[derive(Serialize)]
struct CheckReport {
    all_pass: bool,
    axioms: AxiomReport,
    levi: LeviReport,
}

fn check(input: &str, output: &str) -> Outcome {
    let (l, d) = parse_algebra(&read_input(input)?)?;
    let axioms = check_axioms(&l);
    let levi = verify_levi_data(&l, &d);
    let report = CheckReport { all_pass: axioms.all_pass() && levi.all_pass(), axioms, levi };
    write_output(output, &to_canonical(&report))?;
    Ok(report.all_pass)
}

#[derive(Serialize)]
struct PlainVerifyReport {
    all_pass: bool,
    report: VerificationReport,
}

fn verify_cmd(input: &str, paper_literal: bool, output: &str) -> Outcome {
    let (rho, tag) = parse_representation(&read_input(input)?)?;
    let Some(tag) = tag else {
        if paper_literal {
            return Err(InputError("--paper-literal needs a representation generated from family parameters".into()));
        }
        let report = verify(&rho);
        let all_pass = report.is_triangular_representation();
        write_output(output, &to_canonical(&PlainVerifyReport { all_pass, report }))?;
        return Ok(all_pass);
    };
    let module = if paper_literal {
        build_family_module(&tag.params, EwMode::PaperLiteral)?
    } else {
        let built = build_family_module(&tag.params, tag.mode)?;
        if built.representation.space() != rho.space() || built.representation.algebra() != rho.algebra() {
            return Err(InputError("family parameters do not match the algebra or dimensions in the file".into()));
        }
        FamilyModule { representation: rho, ..built }
    };
    let report = verify_module(&module);
    write_output(output, &to_canonical(&report))?;
    Ok(report.all_pass())
}

fn enumerate(lambda: usize, max_m: usize, max_n: usize) -> Outcome {
    if lambda == 0 {
        return Err(InputError("lambda must be positive".into()));
    }
    let mut text = String::new();
    for (m, n, s, big_n) in enumerate_params(lambda, max_m, max_n) {
        text.push_str(&format!("m={m} n={n} s={s} N={big_n}\n"));
    }
    write_output("-", &text)?;
    Ok(true)
}

fn classify(lambda: usize, max_n: usize, max_m: usize, json: bool, output: &str) -> Outcome {
    let report = classification_report(lambda, max_n, max_m, &default_a_values())?;
    let text = if json { to_canonical(&report) } else { report.to_table() };
    write_output(output, &text)?;
    Ok(report.cells.iter().all(|c| c.dim == c.cg && c.assembled_pass))
}

#[derive(Serialize)]
struct Component {
    degree: usize,
    map: GradedMap,
}

#[derive(Serialize)]
struct DecomposeReport {
    triangular: bool,
    violation: Option<(usize, usize)>,
    components: Vec<Component>,
}

fn decompose(input: &str, output: &str) -> Outcome {
    let f: GradedMap = serde_json::from_str(&read_input(input)?)?;
    let report = match f.degree_components() {
        Ok(parts) => DecomposeReport {
            triangular: true,
            violation: None,
            components: parts.into_iter().enumerate().map(|(degree, map)| Component { degree, map }).collect(),
        },
        Err(_) => DecomposeReport { triangular: false, violation: f.triangularity_violation(), components: vec![] },
    };
    write_output(output, &to_canonical(&report))?;
    Ok(report.triangular)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { what, output } => gen(what, &output),
        Command::Check { input, output } => check(&input, &output),
        Command::Verify { input, paper_literal, output } => verify_cmd(&input, paper_literal, &output),
        Command::Enumerate { lambda, max_m, max_n } => enumerate(lambda, max_m, max_n),
        Command::Classify { lambda, max_n, max_m, json, table: _, output } => {
            classify(lambda, max_n, max_m, json, &output)
        }
        Command::Decompose { input, output } => decompose(&input, &output),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
