use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use khss::complex::DEFAULT_CUBE_LIMIT;
use khss::Error;

#[derive(Parser, Debug)]
#[command(name = "khss", version, about = "Khovanov homology, Lee homology and partial-resolution spectral sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest number of crossings the cube engine accepts.
    #[arg(long, global = true, env = "KHSS_CUBE_LIMIT", default_value_t = DEFAULT_CUBE_LIMIT)]
    pub cube_limit: usize,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum CommandArgs {
    /// Rational Khovanov homology.
    Kh(InputArgs),
    /// Rational Lee homology.
    Lee(InputArgs),
    /// Jones polynomial.
    Jones(InputArgs),
    /// Spectral sequence of a crossing selection.
    Specseq(SpecSeqArgs),
    /// Kh(T(3,q)) from the recursion tables.
    Torus(TorusArgs),
    /// Consistency checks on a diagram, or on the T(3,q) family.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Diagram file (`X a b c d`, `O e` or `B w l1 l2 ...` lines).
    #[arg(long)]
    pub pd: Option<PathBuf>,

    /// Braid closure, as `width l1 l2 ...` (e.g. "3 -1 -2 -1 -2").
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,

    /// The negative torus link T(3,q).
    #[arg(long)]
    pub torus: Option<i64>,
}

#[derive(Args, Debug)]
pub struct SpecSeqArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// `top2` or comma-separated crossing indices.
    #[arg(long)]
    pub select: String,

    /// Quantum degrees (default: all).
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub j: Vec<i32>,

    /// Compute pages up to at least this one.
    #[arg(long, default_value_t = 0)]
    pub r_max: usize,

    /// Print every page, not only the summary.
    #[arg(long)]
    pub pages: bool,
}

#[derive(Args, Debug)]
pub struct TorusArgs {
    #[arg(required_unless_present = "torus", conflicts_with = "torus")]
    pub q: Option<usize>,

    /// Same as the positional `Q`.
    #[arg(long)]
    pub torus: Option<usize>,

    /// Positive T(3,q), by mirroring.
    #[arg(long)]
    pub positive: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["family", "pd", "braid", "torus"])))]
pub struct VerifyArgs {
    /// Compare the recursion tables with the cube engine for q ≤ this.
    #[arg(long)]
    pub family: Option<usize>,

    /// Upper end of the cheap family checks.
    #[arg(long, default_value_t = khss::torus::LARGE_BOUND, requires = "family")]
    pub large: usize,

    #[arg(long)]
    pub pd: Option<PathBuf>,

    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,

    #[arg(long)]
    pub torus: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Pd(PathBuf),
    Braid(String),
    Torus(i64),
}

impl std::fmt::Display for Input {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Input::Pd(p) => write!(f, "pd {}", p.display()),
            Input::Braid(b) => write!(f, "braid {b}"),
            Input::Torus(q) => write!(f, "torus {q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    Top2,
    List(Vec<usize>),
}

impl Selection {
    pub fn parse(s: &str) -> Result<Self, Error> {
        if s == "top2" {
            return Ok(Selection::Top2);
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Selection(format!("bad crossing index '{t}'"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Selection::List)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Kh,
    Lee,
    Jones,
    SpecSeq { select: Selection, j: Vec<i32>, r_max: usize, pages: bool },
    Torus { q: usize, positive: bool },
    Family { q_max: usize, q_large: usize },
    Verify,
}

/// A parsed command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<Input>,
    pub format: Format,
    pub cube_limit: usize,
    pub threads: Option<usize>,
}

fn input(pd: Option<PathBuf>, braid: Option<String>, torus: Option<i64>) -> Option<Input> {
    pd.map(Input::Pd).or(braid.map(Input::Braid)).or(torus.map(Input::Torus))
}

impl TryFrom<Cli> for RunConfig {
    type Error = Error;

    fn try_from(cli: Cli) -> Result<Self, Error> {
        let (command, input) = match cli.command {
            CommandArgs::Kh(a) => (Command::Kh, input(a.pd, a.braid, a.torus)),
            CommandArgs::Lee(a) => (Command::Lee, input(a.pd, a.braid, a.torus)),
            CommandArgs::Jones(a) => (Command::Jones, input(a.pd, a.braid, a.torus)),
            CommandArgs::Specseq(a) => {
                let select = Selection::parse(&a.select)?;
                let inp = input(a.input.pd, a.input.braid, a.input.torus);
                if select == Selection::Top2 && matches!(inp, Some(Input::Pd(_))) {
                    return Err(Error::Selection("top2 needs a braid or torus input".into()));
                }
                (Command::SpecSeq { select, j: a.j, r_max: a.r_max, pages: a.pages }, inp)
            }
            CommandArgs::Torus(a) => (Command::Torus { q: a.q.or(a.torus).unwrap_or(0), positive: a.positive }, None),
            CommandArgs::Verify(a) => match a.family {
                Some(q_max) => (Command::Family { q_max, q_large: a.large }, None),
                None => (Command::Verify, input(a.pd, a.braid, a.torus)),
            },
        };
        Ok(RunConfig { command, input, format: cli.format, cube_limit: cli.cube_limit, threads: cli.threads })
    }
}
