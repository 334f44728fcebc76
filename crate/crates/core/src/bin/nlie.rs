use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Parser, Subcommand};

use nary_lie::{
    check_filippov, check_invariance, check_jacobi_explicit, check_lie_n, check_type,
    check_type_poisson, commutator_defect, exhaustive_type_search, exterior_from_structure,
    find_nontrivial_ideal, gen_random, gen_top_form_identity, is_simple, operator_space, parse,
    check_bracket_compat, serialize, structure_from_exterior, AlgebraDocument, AltForm, Degree, Error,
    ExteriorElement, Field, Guards, Method, Result, Scalar, Violation,
};

#[derive(Parser)]
#[command(
    name = "nlie",
    version,
    about = "Exact kernel for skew-symmetric n-ary algebra structures"
)]
struct Cli {
    /// Lift the built-in resource guards on enumeration and search sizes
    #[arg(long, global = true)]
    override_guards: bool,

    /// Seed for randomized heuristics and generators
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for parallel search (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the bracket type condition (r, l) for a structure
    CheckType {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
        /// Allow (r, l) outside 0 <= l <= r < arity
        #[arg(long)]
        any_range: bool,
        file: PathBuf,
    },
    /// Check the full derivation identity
    CheckFilippov { file: PathBuf },
    /// Check the alternating-sum identity on (2n-1) arguments
    CheckLieN { file: PathBuf },
    /// Check the truncated derivation identity with n-l right-hand terms
    CheckJacobi {
        #[arg(long)]
        l: usize,
        file: PathBuf,
    },
    /// Nijenhuis-Richardson bracket of the structures in two files
    Nr { left: PathBuf, right: PathBuf },
    /// Evaluate the structure on vectors, one --arg per slot
    Eval {
        file: PathBuf,
        /// Comma-separated coordinates, e.g. --arg 1,0,-2/3
        #[arg(long = "arg", alias = "args")]
        args: Vec<String>,
    },
    /// Check that the file's form pairs the structure into an alternating function
    Invariance { file: PathBuf },
    /// Recover the structure encoded by the file's exterior element
    FromExterior {
        file: PathBuf,
        /// Arity of the encoded structure (inferred from the degree if homogeneous)
        #[arg(long)]
        arity: Option<usize>,
    },
    /// Encode the file's structure as an exterior element
    ToExterior { file: PathBuf },
    /// Check bracket compatibility between two encoded structures
    BracketCompat { left: PathBuf, right: PathBuf },
    /// Check the type condition inside the exterior algebra
    TypePoisson {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
        file: PathBuf,
    },
    /// Look for a proper nonzero ideal
    Ideals { file: PathBuf },
    /// Simplicity verdict
    Simple { file: PathBuf },
    /// Span of the partial-evaluation operators and its commutator defect
    OperatorSpace { file: PathBuf },
    /// Enumerate all structure tables of a shape over a prime field
    Search {
        /// Q is not searchable; pass a prime
        #[arg(long)]
        field: String,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
    },
    /// Emit a structure document
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Run the built-in verification batteries
    VerifyAll,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Structure contracted from the top monomial with the identity form
    TopForm {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Seeded random structure table (uses the global --seed)
    Random {
        #[arg(long, alias = "n")]
        arity: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

fn main() {
    // Die quietly when the read end of a pipe closes, like any other
    // line-oriented tool; the default Rust handler panics on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    let guards = if cli.override_guards {
        Guards::off()
    } else {
        Guards::default()
    };
    match run(cli, &guards) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {}", e);
            exit(match e {
                Error::ResourceGuard(_) => 3,
                _ => 2,
            });
        }
    }
}

fn load(path: &Path) -> Result<AlgebraDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadArgument(format!("cannot read {}: {}", path.display(), e)))?;
    parse(&text)
}

fn parse_field(token: &str) -> Result<Field> {
    if token.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p = token
        .parse::<u64>()
        .map_err(|_| Error::BadArgument(format!("field must be Q or a prime, got `{}`", token)))?;
    Field::prime(p)
}

fn require_form(doc: &AlgebraDocument, path: &Path) -> Result<nary_lie::BilinearForm> {
    doc.form.clone().ok_or_else(|| {
        Error::BadArgument(format!(
            "{} declares no bilinear form (`form identity` or `form row` lines)",
            path.display()
        ))
    })
}

fn require_exterior(doc: &AlgebraDocument, path: &Path) -> Result<ExteriorElement> {
    doc.exterior.clone().ok_or_else(|| {
        Error::BadArgument(format!(
            "{} declares no exterior element (`ext` lines)",
            path.display()
        ))
    })
}

/// Prints the verdict of an identity check; violations exit with code 1.
fn report(what: &str, outcome: Option<Violation>) -> i32 {
    match outcome {
        None => {
            println!("{}: holds", what);
            0
        }
        Some(v) => {
            println!("{}: fails", what);
            println!("  {}", v);
            1
        }
    }
}

fn run(cli: Cli, guards: &Guards) -> Result<i32> {
    match cli.command {
        Command::CheckType { r, l, any_range, file } => {
            let doc = load(&file)?;
            let outcome = check_type(&doc.structure, r, l, any_range)?;
            Ok(report(&format!("type ({}, {})", r, l), outcome))
        }
        Command::CheckFilippov { file } => {
            let doc = load(&file)?;
            Ok(report("derivation identity", check_filippov(&doc.structure)?))
        }
        Command::CheckLieN { file } => {
            let doc = load(&file)?;
            Ok(report("alternating-sum identity", check_lie_n(&doc.structure)?))
        }
        Command::CheckJacobi { l, file } => {
            let doc = load(&file)?;
            Ok(report(
                &format!("truncated identity (l = {})", l),
                check_jacobi_explicit(&doc.structure, l)?,
            ))
        }
        Command::Nr { left, right } => {
            let a = load(&left)?;
            let b = load(&right)?;
            let bracket = a.structure.nr_bracket(&b.structure)?;
            print!(
                "{}",
                serialize(&AlgebraDocument {
                    structure: bracket,
                    form: None,
                    exterior: None,
                })
            );
            Ok(0)
        }
        Command::Eval { file, args } => {
            let doc = load(&file)?;
            let mu = &doc.structure;
            let field = mu.field();
            let vectors: Vec<Vec<Scalar>> = args
                .iter()
                .map(|coords| {
                    coords.split(',')
                        .map(|tok| Scalar::parse(field, tok.trim()))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let value = mu.eval(&vectors)?;
            println!("{}", nary_lie::fmt_vec(&value));
            Ok(0)
        }
        Command::Invariance { file } => {
            let doc = load(&file)?;
            let form = require_form(&doc, &file)?;
            Ok(report("invariance", check_invariance(&doc.structure, &form)?))
        }
        Command::FromExterior { file, arity } => {
            let doc = load(&file)?;
            let form = require_form(&doc, &file)?;
            let ext = require_exterior(&doc, &file)?;
            let arity = match (arity, ext.degree()) {
                (Some(n), _) => n,
                (None, Degree::Pure(d)) if d >= 1 => d - 1,
                (None, _) => {
                    return Err(Error::BadArgument(
                        "cannot infer the arity; pass --arity".into(),
                    ))
                }
            };
            let mu = structure_from_exterior(&ext, &form, arity)?;
            print!(
                "{}",
                serialize(&AlgebraDocument {
                    structure: mu,
                    form: Some(form),
                    exterior: Some(ext),
                })
            );
            Ok(0)
        }
        Command::ToExterior { file } => {
            let doc = load(&file)?;
            let form = require_form(&doc, &file)?;
            let ext = exterior_from_structure(&doc.structure, &form)?;
            print!(
                "{}",
                serialize(&AlgebraDocument {
                    structure: doc.structure,
                    form: Some(form),
                    exterior: Some(ext),
                })
            );
            Ok(0)
        }
        Command::BracketCompat { left, right } => {
            let a = load(&left)?;
            let b = load(&right)?;
            let form = match (&a.form, &b.form) {
                (Some(f), _) | (None, Some(f)) => f.clone(),
                (None, None) => {
                    return Err(Error::BadArgument(
                        "neither file declares a bilinear form".into(),
                    ))
                }
            };
            let l_tilde = require_exterior(&a, &left)?;
            let k_tilde = require_exterior(&b, &right)?;
            Ok(report(
                "bracket compatibility",
                check_bracket_compat(&l_tilde, &k_tilde, &form)?,
            ))
        }
        Command::TypePoisson { r, l, file } => {
            let doc = load(&file)?;
            let form = require_form(&doc, &file)?;
            let ext = require_exterior(&doc, &file)?;
            let arity = match ext.degree() {
                Degree::Pure(d) if d >= 1 => d - 1,
                _ => {
                    return Err(Error::BadArgument(
                        "the exterior element must be homogeneous of degree >= 1".into(),
                    ))
                }
            };
            Ok(report(
                &format!("exterior type ({}, {})", r, l),
                check_type_poisson(&ext, &form, arity, r, l)?,
            ))
        }
        Command::Ideals { file } => {
            let doc = load(&file)?;
            let (found, method) = find_nontrivial_ideal(&doc.structure, guards, cli.seed)?;
            let method = match method {
                Method::Exhaustive => "exhaustive",
                Method::ClosureHeuristic => "closure heuristic",
            };
            match found {
                Some(w) => println!("ideal: {} ({})", w.describe(), method),
                None => println!("no proper nonzero ideal found ({})", method),
            }
            Ok(0)
        }
        Command::Simple { file } => {
            let doc = load(&file)?;
            let verdict = is_simple(&doc.structure, guards, cli.seed)?;
            println!("{}", verdict);
            Ok(0)
        }
        Command::OperatorSpace { file } => {
            let doc = load(&file)?;
            let space = operator_space(&doc.structure)?;
            let dim = doc.structure.dim();
            println!("operator span dimension: {}", space.dim());
            for (idx, flat) in space.basis().row_vecs().iter().enumerate() {
                println!("operator {}:", idx + 1);
                for r in 0..dim {
                    let row: Vec<String> =
                        (0..dim).map(|c| flat[r * dim + c].to_string()).collect();
                    println!("  [{}]", row.join(" "));
                }
            }
            let defect = commutator_defect(&doc.structure)?;
            println!(
                "commutator defect: all_zero={} max_rank={}",
                defect.all_zero, defect.max_rank
            );
            Ok(0)
        }
        Command::Search {
            field,
            dim,
            arity,
            r,
            l,
        } => {
            let field = parse_field(&field)?;
            let report = exhaustive_type_search(field, dim, arity, r, l, guards)?;
            println!("candidates: {}", report.total_candidates);
            println!("survivors: {}", report.survivors.len());
            for (mu, verdict) in &report.survivors {
                println!();
                print!(
                    "{}",
                    serialize(&AlgebraDocument {
                        structure: mu.clone(),
                        form: None,
                        exterior: None,
                    })
                );
                println!("verdict: {}", verdict);
            }
            Ok(0)
        }
        Command::Gen { what } => {
            let mu: AltForm = match what {
                GenCommand::TopForm { n, field } => {
                    gen_top_form_identity(n, parse_field(&field)?)?
                }
                GenCommand::Random { arity, dim, field } => {
                    gen_random(arity, dim, parse_field(&field)?, cli.seed)?
                }
            };
            print!(
                "{}",
                serialize(&AlgebraDocument {
                    structure: mu,
                    form: None,
                    exterior: None,
                })
            );
            Ok(0)
        }
        Command::VerifyAll => {
            let outcomes = nary_lie::verify::run_all();
            let mut all_passed = true;
            for o in &outcomes {
                let status = if o.passed { "PASS" } else { "FAIL" };
                println!("criterion {:>2}: {} - {}", o.id, status, o.label);
                println!("              {}", o.details);
                all_passed &= o.passed;
            }
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}
