use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use higher_hochschild::hochschild::{build_complex, pair_constraints, ComplexSpec, Variant};
use higher_hochschild::ordering::{
    check_nncmo, check_nncmo_full, classify_actions, classify_nncmo, cyclic_ordering, search_nncmo, NncmoResult,
};
use higher_hochschild::parse::{resolve_algebra, resolve_module, resolve_sset};
use higher_hochschild::report::{
    ActionsReport, AlgebraInfo, CyclicReport, HomologyReport, ModuleInfo, NncmoReport, PairReport, Report,
    ValidateReport,
};
use higher_hochschild::scalar::Field;
use higher_hochschild::{Error, Result};

/// Higher order Hochschild (co)homology of finite pointed simplicial sets.
///
/// Simplicial sets are given as `.sset` files or by bundled name (point,
/// interval, circle, wedge-<k>, sphere2, sphere2-with-circle). Algebras are
/// files or inline builders such as "upper-tri 2", "trunc-poly 3",
/// "matrix 2", "group C3", "group S3".
#[derive(Parser)]
#[command(name = "hhs", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a simplicial set (and optionally an algebra and module).
    Validate {
        sset: String,
        #[arg(long, default_value_t = 3)]
        cutoff: usize,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value = "Q")]
        field: Field,
    },
    /// Decide whether a consistent choice of fiber orderings exists.
    Nncmo {
        sset: String,
        #[arg(long)]
        cutoff: usize,
        #[arg(long, value_enum, default_value_t = Method::Classify)]
        method: Method,
        /// Re-check an ordering against every factorization of every composite.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the per-level orders of a one-dimensional simplicial set.
    Cyclic {
        sset: String,
        #[arg(long)]
        cutoff: usize,
    },
    /// Identification classes of basepoint sites and their left/right types.
    Actions {
        sset: String,
        #[arg(long)]
        cutoff: usize,
    },
    Homology(ComplexArgs),
    Cohomology(ComplexArgs),
    /// What a pair X inside Y allows for the coefficient algebras.
    PairConstraints { x: String, y: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Classify,
    Search,
}

#[derive(Args)]
struct ComplexArgs {
    sset: String,
    #[arg(long)]
    algebra: Option<String>,
    /// `regular`, `symmetric`, `tensor-regular <k>` or a module file.
    #[arg(long, default_value = "regular")]
    module: String,
    #[arg(long)]
    max_degree: usize,
    #[arg(long, default_value = "Q")]
    field: Field,
    /// Drop degenerate tensors.
    #[arg(long)]
    normalized: bool,
}

fn input_error(message: impl Into<String>) -> Error {
    Error::Parse { file: "<command line>".into(), line: 0, message: message.into() }
}

fn run(command: Command) -> Result<Report> {
    Ok(match command {
        Command::Validate { sset, cutoff, algebra, module, field } => {
            let x = resolve_sset(&sset)?;
            if let Err(v) = x.validate() {
                return Err(Error::InvalidSimplicialSet(v.to_string()));
            }
            let mut r = ValidateReport::new(&sset, &x, cutoff);
            let alg = algebra.map(|a| resolve_algebra(&a, field)).transpose()?;
            if let Some(m) = module {
                let m = resolve_module(&m, alg.as_ref(), field)?;
                r.module = Some(ModuleInfo::of(&m));
                r.algebra = Some(AlgebraInfo::of(m.algebra()));
            } else {
                r.algebra = alg.as_ref().map(AlgebraInfo::of);
            }
            Report::Validate(r)
        }
        Command::Nncmo { sset, cutoff, method, oracle } => {
            if cutoff < 2 {
                return Err(input_error("--cutoff must be at least 2"));
            }
            let x = resolve_sset(&sset)?;
            let (name, result) = match method {
                Method::Classify => ("classify", classify_nncmo(&x, cutoff)?),
                Method::Search => ("search", search_nncmo(&x, cutoff)?),
            };
            let mut name = name.to_string();
            match &result {
                NncmoResult::Admits(a) => {
                    let check = if oracle { check_nncmo_full(&x, a, cutoff)? } else { check_nncmo(&x, a, cutoff)? };
                    if let Some(w) = check {
                        return Err(Error::InvalidAssignment(format!("produced ordering fails its check: {}", w.explanation)));
                    }
                }
                NncmoResult::Fails(w) => {
                    if !w.verify(&x) {
                        return Err(Error::InvalidAssignment("produced witness does not verify".into()));
                    }
                }
            }
            if oracle {
                name.push_str("+oracle");
            }
            Report::Nncmo(NncmoReport::new(&sset, &x, cutoff, &name, &result))
        }
        Command::Cyclic { sset, cutoff } => {
            let x = resolve_sset(&sset)?;
            match cyclic_ordering(&x, cutoff) {
                Ok(levels) => Report::Cyclic(CyclicReport::new(&sset, &x, cutoff, &levels)),
                Err(Error::NotOneDimensional(_)) => match classify_nncmo(&x, cutoff.max(4))? {
                    NncmoResult::Fails(w) => Report::Cyclic(CyclicReport::failed(&sset, cutoff, w)),
                    NncmoResult::Admits(_) => unreachable!("sets of dimension two fail"),
                },
                Err(e) => return Err(e),
            }
        }
        Command::Actions { sset, cutoff } => {
            let x = resolve_sset(&sset)?;
            Report::Actions(ActionsReport { input: sset, classes: classify_actions(&x, cutoff)? })
        }
        Command::Homology(args) => Report::Homology(complex_report(args, Variant::Chain)?),
        Command::Cohomology(args) => Report::Cohomology(complex_report(args, Variant::Cochain)?),
        Command::PairConstraints { x: xn, y: yn } => {
            let (x, y) = (resolve_sset(&xn)?, resolve_sset(&yn)?);
            let constraint = pair_constraints(&x, &y)?;
            let explanation = if y.dimension() <= 1 {
                "Y admits fiber orderings, so both complexes exist for any algebras".to_string()
            } else if x.dimension() <= 1 {
                "X admits fiber orderings but Y does not".to_string()
            } else {
                "neither X nor Y admits fiber orderings".to_string()
            };
            Report::PairConstraints(PairReport {
                x: xn,
                y: yn,
                x_dimension: x.dimension(),
                y_dimension: y.dimension(),
                constraint,
                explanation,
            })
        }
    })
}

fn complex_report(args: ComplexArgs, variant: Variant) -> Result<HomologyReport> {
    if args.max_degree < 1 {
        return Err(input_error("--max-degree must be at least 1"));
    }
    let x = resolve_sset(&args.sset)?;
    let alg = args.algebra.as_deref().map(|a| resolve_algebra(a, args.field)).transpose()?;
    let module = resolve_module(&args.module, alg.as_ref(), args.field)?;
    let mut spec = ComplexSpec::auto(&x, &module, variant, args.max_degree)?;
    spec.normalized = args.normalized;
    match build_complex(&spec) {
        Ok(c) => Ok(HomologyReport::computed(&args.sset, &spec, &c)),
        Err(Error::Refused { reason, witness }) => Ok(HomologyReport::refused(&args.sset, &spec, reason, witness.map(|w| *w))),
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let text = if cli.json { format!("{}\n", report.to_json()) } else { report.to_string() };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
