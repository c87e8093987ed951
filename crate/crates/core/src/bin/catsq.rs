use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use catsq_core::dsl::run::{
    error_outcome, run_files, BaseChangeKind, Command, KanDir, Property, RunOptions,
    EXIT_INVALID,
};
use catsq_core::dsl::{DslError, DslErrorKind, Pos};
use catsq_core::fincat::Localizer;
use catsq_core::gen::Budget;
use catsq_core::limits::MAX_ARROWS_ENV;
use catsq_core::Limits;

#[derive(Parser)]
#[command(name = "catsq", version, about = "Exactness checks for squares of finite categories")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    #[arg(long, global = true, value_enum, default_value_t = Loc::W0)]
    localizer: Loc,

    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Report every failing location, not only the first of each group.
    #[arg(long, global = true)]
    all_witnesses: bool,

    /// Seed for `gen`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Object cap: generation budget for `gen`, size guard otherwise.
    #[arg(long, global = true)]
    max_objects: Option<usize>,

    /// Arrow cap: generation budget for `gen`, size guard otherwise.
    #[arg(long, global = true, env = MAX_ARROWS_ENV)]
    max_arrows: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Loc {
    W0,
    Wgr,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    Exact,
    WeakExact,
    BcLeft,
    BcRight,
    Aspheric,
    Coaspheric,
    Proper,
    Smooth,
    LocalEquiv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Right,
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Coh,
    Hom,
}

#[derive(Args)]
struct Inputs {
    /// `.catsq` files, read in order into one workspace.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a property of a square or a functor.
    Check {
        #[arg(value_enum)]
        property: Prop,
        #[arg(long)]
        square: Option<String>,
        #[arg(long)]
        functor: Option<String>,
        /// `w` for `local-equiv`: checks `u` over `w` with `v = w.u`.
        #[arg(long)]
        over: Option<String>,
        /// Colocal instead of local equivalence.
        #[arg(long)]
        colocal: bool,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Per-object sizes of a Kan extension of a presheaf.
    Kan {
        #[arg(long, value_enum)]
        dir: Dir,
        #[arg(long)]
        functor: Option<String>,
        #[arg(long)]
        presheaf: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Whether a base change morphism is invertible on a presheaf.
    BaseChange {
        #[arg(long, value_enum, default_value_t = Kind::Coh)]
        kind: Kind,
        #[arg(long)]
        square: Option<String>,
        #[arg(long)]
        presheaf: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Exactness decided through base change on representable presheaves.
    Oracle {
        #[arg(long)]
        square: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// The localizer realized by presheaves on a category.
    Classify {
        #[arg(long)]
        category: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Print a random workspace.
    Gen,
}

impl Cmd {
    fn split(self, budget: Budget, seed: u64) -> (Command, Vec<PathBuf>) {
        match self {
            Cmd::Check {
                property,
                square,
                functor,
                over,
                colocal,
                inputs,
            } => {
                let property = match property {
                    Prop::Exact => Property::Exact,
                    Prop::WeakExact => Property::WeakExact,
                    Prop::BcLeft => Property::BcLeft,
                    Prop::BcRight => Property::BcRight,
                    Prop::Aspheric => Property::Aspheric,
                    Prop::Coaspheric => Property::Coaspheric,
                    Prop::Proper => Property::Proper,
                    Prop::Smooth => Property::Smooth,
                    Prop::LocalEquiv => Property::LocalEquiv,
                };
                let cmd = Command::Check {
                    property,
                    square,
                    functor,
                    over,
                    colocal,
                };
                (cmd, inputs.files)
            }
            Cmd::Kan {
                dir,
                functor,
                presheaf,
                inputs,
            } => {
                let dir = match dir {
                    Dir::Right => KanDir::Right,
                    Dir::Left => KanDir::Left,
                };
                let cmd = Command::Kan {
                    dir,
                    functor,
                    presheaf,
                };
                (cmd, inputs.files)
            }
            Cmd::BaseChange {
                kind,
                square,
                presheaf,
                inputs,
            } => {
                let kind = match kind {
                    Kind::Coh => BaseChangeKind::Coh,
                    Kind::Hom => BaseChangeKind::Hom,
                };
                let cmd = Command::BaseChange {
                    kind,
                    square,
                    presheaf,
                };
                (cmd, inputs.files)
            }
            Cmd::Oracle { square, inputs } => (Command::Oracle { square }, inputs.files),
            Cmd::Classify { category, inputs } => (Command::Classify { category }, inputs.files),
            Cmd::Gen => (Command::Gen { seed, budget }, Vec::new()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    let mut budget = Budget::default();
    if let Some(n) = cli.max_objects {
        limits.max_objects = n;
        budget.max_objects = n;
    }
    if let Some(n) = cli.max_arrows {
        limits.max_arrows = n;
        budget.max_arrows = n;
    }
    let opts = RunOptions {
        localizer: match cli.localizer {
            Loc::W0 => Localizer::W0,
            Loc::Wgr => Localizer::Wgr,
        },
        all_witnesses: cli.all_witnesses,
        parallel: true,
        limits,
    };
    let (cmd, paths) = cli.command.split(budget, cli.seed);

    let mut files = Vec::new();
    for path in &paths {
        let name = path.display().to_string();
        match std::fs::read_to_string(path) {
            Ok(text) => files.push((name, text)),
            Err(e) => {
                let err = DslError {
                    kind: DslErrorKind::SyntaxError,
                    pos: Pos::default(),
                    message: format!("cannot read file: {e}"),
                    file: Some(name),
                    cause: None,
                };
                let out = error_outcome(cmd.name(), &err);
                emit(&out.report, cli.json);
                return ExitCode::from(EXIT_INVALID as u8);
            }
        }
    }
    let out = run_files(&files, &cmd, &opts);
    emit(&out.report, cli.json);
    ExitCode::from(out.exit_code as u8)
}

fn emit(report: &catsq_core::dsl::run::Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else if report.error.is_some() {
        eprint!("{}", report.to_human());
    } else {
        print!("{}", report.to_human());
    }
}
