//! Command-line front end: validate inputs, compute homology and derived
//! (co)limits, build pushouts, run the covering checkers and the
//! Mayer-Vietoris verifier, and reproduce the bundled counter-example.
//!
//! Exit codes: 0 for completed runs (including negative verdicts), 1 for
//! input or usage errors, 2 for bound exhaustion (pushout bounds or the
//! DCOLIM_MAX_MATRIX_DIM safety valve).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dcolim::abelian::AbelianError;
use dcolim::dmod::{derived_colim, derived_lim, nerve_homology, DmodError, Variance};
use dcolim::fincat::{pushout, under_category, Functor};
use dcolim::io;
use dcolim::mv::{
    counterexample_repro, covering_check, local_covering_check, mv_predict, mv_verify,
    mv_verify_lim, theorem1_hypotheses, MvError,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "dcolim", version, about = "Derived (co)limits over finite categories and Mayer-Vietoris verification")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a category, functor, diagram or square file.
    Validate { path: PathBuf },
    /// Homology of the nerve of a category.
    Homology {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Derived colimits of a left diagram.
    Dcolim {
        category: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Derived limits of a right diagram.
    Dlim {
        category: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Under category c/F of an object of the codomain of a functor
    /// (pass a category file for the identity functor).
    Under { path: PathBuf, object: String },
    /// Pushout of two functors with a shared domain.
    Pushout {
        f1: PathBuf,
        f2: PathBuf,
        #[arg(long, default_value_t = 8)]
        word_bound: usize,
        #[arg(long, default_value_t = 10000)]
        size_bound: usize,
    },
    /// Local-covering and covering checks for a functor.
    LocalCover {
        functor: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Verify the Mayer-Vietoris sequence of a square against a diagram
    /// over its pushout corner (left diagrams use the colimit sequence,
    /// right diagrams the limit sequence). Also reports the hypothesis
    /// checklist.
    MvVerify {
        square: PathBuf,
        module: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Predict the derived colimits of the pushout from the legs alone.
    MvPredict {
        f1: PathBuf,
        f2: PathBuf,
        m1: PathBuf,
        m2: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Reproduce the bundled counter-example end to end.
    Counterexample,
}

/// Distinguishes input errors (exit 1) from exhausted bounds (exit 2).
enum CmdError {
    Input(String),
    Bound(String),
}

impl From<io::IoError> for CmdError {
    fn from(e: io::IoError) -> Self {
        CmdError::Input(e.to_string())
    }
}

fn classify_abelian(e: &AbelianError) -> Option<CmdError> {
    if let AbelianError::ResourceLimit { .. } = e {
        Some(CmdError::Bound(e.to_string()))
    } else {
        None
    }
}

impl From<AbelianError> for CmdError {
    fn from(e: AbelianError) -> Self {
        classify_abelian(&e).unwrap_or_else(|| CmdError::Input(e.to_string()))
    }
}

impl From<DmodError> for CmdError {
    fn from(e: DmodError) -> Self {
        if let DmodError::Abelian(a) = &e {
            if let Some(c) = classify_abelian(a) {
                return c;
            }
        }
        CmdError::Input(e.to_string())
    }
}

impl From<MvError> for CmdError {
    fn from(e: MvError) -> Self {
        match &e {
            MvError::Abelian(a) => classify_abelian(a).unwrap_or_else(|| CmdError::Input(e.to_string())),
            MvError::Dmod(DmodError::Abelian(a)) => {
                classify_abelian(a).unwrap_or_else(|| CmdError::Input(e.to_string()))
            }
            _ => CmdError::Input(e.to_string()),
        }
    }
}

impl From<dcolim::fincat::CategoryError> for CmdError {
    fn from(e: dcolim::fincat::CategoryError) -> Self {
        CmdError::Input(e.to_string())
    }
}

fn run(cli: &Cli) -> Result<Value, CmdError> {
    match &cli.command {
        Command::Validate { path } => {
            let v: Value = serde_json::from_str(
                &std::fs::read_to_string(path)
                    .map_err(|e| CmdError::Input(format!("{}: {}", path.display(), e)))?,
            )
            .map_err(|e| CmdError::Input(format!("{}: {}", path.display(), e)))?;
            let (kind, objects, morphisms) = if v.get("objects").is_some() {
                let c = io::load_category(path)?;
                ("category", c.num_objects(), c.num_morphisms())
            } else if v.get("f1").is_some() {
                let sq = io::load_square(path)?;
                ("square", sq.apex().num_objects(), sq.apex().num_morphisms())
            } else if v.get("base").is_some() {
                let d = io::load_diagram(path)?;
                ("diagram", d.base.num_objects(), d.base.num_morphisms())
            } else if v.get("domain").is_some() {
                let f = io::load_functor(path)?;
                ("functor", f.codomain().num_objects(), f.codomain().num_morphisms())
            } else {
                return Err(CmdError::Input(format!(
                    "{}: not a category, functor, diagram or square file",
                    path.display()
                )));
            };
            Ok(io::wrap_report(
                "validate",
                json!({"path": path.display().to_string()}),
                json!({"kind": kind, "objects": objects, "morphisms": morphisms}),
            ))
        }
        Command::Homology { path, max_degree } => {
            let cat = io::load_category(path)?;
            let h = nerve_homology(&cat, *max_degree)?;
            Ok(io::wrap_report(
                "homology",
                json!({"max_degree": max_degree}),
                json!({"values": io::graded_to_json(&h), "pretty": h.to_string()}),
            ))
        }
        Command::Dcolim {
            category,
            module,
            max_degree,
        } => {
            let cat = io::load_category(category)?;
            let m = io::load_diagram_over(module, &cat)?;
            if m.variance != Variance::Left {
                return Err(CmdError::Input("dcolim needs a left diagram".into()));
            }
            let h = derived_colim(&m, *max_degree)?;
            Ok(io::wrap_report(
                "dcolim",
                json!({"max_degree": max_degree}),
                json!({"values": io::graded_to_json(&h), "pretty": h.to_string()}),
            ))
        }
        Command::Dlim {
            category,
            module,
            max_degree,
        } => {
            let cat = io::load_category(category)?;
            let l = io::load_diagram_over(module, &cat)?;
            if l.variance != Variance::Right {
                return Err(CmdError::Input("dlim needs a right diagram".into()));
            }
            let h = derived_lim(&l, *max_degree)?;
            Ok(io::wrap_report(
                "dlim",
                json!({"max_degree": max_degree}),
                json!({"values": io::graded_to_json(&h), "pretty": h.to_string()}),
            ))
        }
        Command::Under { path, object } => {
            let v: Value = serde_json::from_str(
                &std::fs::read_to_string(path)
                    .map_err(|e| CmdError::Input(format!("{}: {}", path.display(), e)))?,
            )
            .map_err(|e| CmdError::Input(format!("{}: {}", path.display(), e)))?;
            let f = if v.get("domain").is_some() {
                io::load_functor(path)?
            } else {
                Functor::identity(&io::load_category(path)?)
            };
            let c = f
                .codomain()
                .object_index(object)
                .ok_or_else(|| CmdError::Input(format!("unknown object \"{}\"", object)))?;
            let under = under_category(c, &f)?;
            Ok(io::wrap_report(
                "under",
                json!({"object": object}),
                json!({
                    "objects": under.category.num_objects(),
                    "morphisms": under.category.num_morphisms(),
                    "category": io::category_to_json(&under.category),
                }),
            ))
        }
        Command::Pushout {
            f1,
            f2,
            word_bound,
            size_bound,
        } => {
            let f1 = io::load_functor(f1)?;
            let f2 = io::load_functor(f2)?;
            let result = pushout(&f1, &f2, *word_bound, *size_bound)?;
            let success = result.map_err(|b| CmdError::Bound(b.to_string()))?;
            Ok(io::wrap_report(
                "pushout",
                json!({"word_bound": word_bound, "size_bound": size_bound}),
                json!({
                    "objects": success.category.num_objects(),
                    "morphisms": success.category.num_morphisms(),
                    "category": io::category_to_json(&success.category),
                }),
            ))
        }
        Command::LocalCover {
            functor,
            max_degree,
        } => {
            let f = io::load_functor(functor)?;
            let local = local_covering_check(&f, *max_degree)?;
            let covering = covering_check(&f, *max_degree)?;
            Ok(io::wrap_report(
                "local-cover",
                json!({"max_degree": max_degree}),
                json!({
                    "local_covering": io::local_covering_to_json(&local),
                    "covering": io::covering_to_json(&covering),
                }),
            ))
        }
        Command::MvVerify {
            square,
            module,
            max_degree,
        } => {
            let sq = io::load_square(square)?;
            let m = io::load_diagram_over(module, sq.apex())?;
            let checklist = theorem1_hypotheses(&sq, *max_degree)?;
            let (report, limit_side) = match m.variance {
                Variance::Left => (mv_verify(&sq, &m, *max_degree)?, false),
                Variance::Right => (mv_verify_lim(&sq, &m, *max_degree)?, true),
            };
            let mut body = io::mv_report_to_json(&report, limit_side);
            body["hypotheses"] = io::checklist_to_json(&checklist);
            Ok(io::wrap_report(
                "mv-verify",
                json!({"max_degree": max_degree, "side": if limit_side {"limit"} else {"colimit"}}),
                body,
            ))
        }
        Command::MvPredict {
            f1,
            f2,
            m1,
            m2,
            max_degree,
        } => {
            let f1 = io::load_functor(f1)?;
            let f2 = io::load_functor(f2)?;
            let m1 = io::load_diagram_over(m1, f1.codomain())?;
            let m2 = io::load_diagram_over(m2, f2.codomain())?;
            let h = mv_predict(&f1, &f2, &m1, &m2, *max_degree)?;
            Ok(io::wrap_report(
                "mv-predict",
                json!({"max_degree": max_degree}),
                json!({"values": io::graded_to_json(&h), "pretty": h.to_string()}),
            ))
        }
        Command::Counterexample => {
            let report = counterexample_repro().map_err(CmdError::from)?;
            Ok(io::wrap_report(
                "counterexample",
                json!({"max_degree": 3}),
                io::counterexample_to_json(&report),
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => print!("{}", io::render_report(&report)),
            }
            ExitCode::from(0)
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(CmdError::Bound(msg)) => {
            eprintln!("bound exceeded: {}", msg);
            ExitCode::from(2)
        }
    }
}
