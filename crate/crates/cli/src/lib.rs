//! The `khss` command line: argument parsing, dispatch and report output.

mod args;
mod report;

use std::fmt;
use std::path::PathBuf;

use khss::complex::{
    braid_jones, expected_lee_degrees, graded_euler, kauffman_jones_with, khovanov_homology_with, lee_homology_with,
    ChainComplex, Config, FrobeniusAlgebra, KhTable, LeeTable,
};
use khss::link::{parse_pd, torus_braid, BraidWord, LinkDiagram};
use khss::specseq::SpectralSequence;
use khss::torus::{diagonal_count, expected_kh_3q, lee_pairing, lee_survivors, verify_family_with, TorusFamilyIndex};
use khss::{CheckReport, Error};

pub use args::{Cli, Command, Format, Input, RunConfig, Selection};
pub use report::{LeeEntry, Report, SpecSeqColumn, TorusSummary, SCHEMA};

#[derive(Debug)]
pub enum RunError {
    Io(PathBuf, std::io::Error),
    Core(Error),
}

impl RunError {
    /// 2 for failed checks, 1 for anything wrong with the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Core(Error::Check(_)) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            RunError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

type Result<T> = std::result::Result<T, RunError>;

/// Parses `"3 -1 -2 -1 -2"`; colons and commas also separate.
pub fn parse_braid(s: &str) -> std::result::Result<BraidWord, Error> {
    let mut tok = s.split(|c: char| c.is_whitespace() || c == ':' || c == ',').filter(|t| !t.is_empty());
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let width = tok
        .next()
        .ok_or_else(|| bad("empty braid".into()))?
        .parse::<usize>()
        .map_err(|_| bad("bad braid width".into()))?;
    let letters = tok
        .map(|t| t.parse::<i32>().map_err(|_| bad(format!("bad braid letter '{t}'"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    BraidWord::new(width, letters)
}

fn load(input: &Input) -> Result<(LinkDiagram, Option<BraidWord>)> {
    Ok(match input {
        Input::Pd(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| RunError::Io(p.clone(), e))?;
            (parse_pd(&text)?, None)
        }
        Input::Braid(s) => {
            let b = parse_braid(s)?;
            (LinkDiagram::from_braid(&b), Some(b))
        }
        Input::Torus(q) => {
            let b = torus_braid(*q)?;
            (LinkDiagram::from_braid(&b), Some(b))
        }
    })
}

fn lee_entries(t: &LeeTable) -> Vec<LeeEntry> {
    t.dims.iter().map(|(&i, &dim)| LeeEntry { i, dim }).collect()
}

fn euler_check(d: &LinkDiagram, b: Option<&BraidWord>, kh: &KhTable, config: &Config) -> Result<CheckReport> {
    let jones = match b {
        Some(b) => braid_jones(b),
        None => kauffman_jones_with(d, config)?,
    };
    let mut c = CheckReport::new("Euler characteristic equals Jones polynomial");
    let chi = graded_euler(kh);
    c.expect(chi == jones, || format!("{chi} != {jones}"));
    Ok(c)
}

fn lee_check(d: &LinkDiagram, lee: &LeeTable) -> CheckReport {
    let want = LeeTable::from_degrees(&expected_lee_degrees(d));
    let mut c = CheckReport::new("Lee degrees from linking numbers");
    c.expect(*lee == want, || format!("{lee} != {want}"));
    c
}

pub fn init_threads(n: Option<usize>) {
    if let Some(n) = n {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool: {e}");
        }
    }
}

/// Runs one command. Failed checks are reported in the result rather than
/// as an error; see [`Report::passed`].
pub fn run(rc: &RunConfig) -> Result<Report> {
    let config = Config { cube_limit: rc.cube_limit };
    let input_name = rc.input.as_ref().map(|i| i.to_string()).unwrap_or_default();
    let need_input = || rc.input.as_ref().ok_or(RunError::Core(Error::Empty));

    let report = match &rc.command {
        Command::Kh => {
            let (d, b) = load(need_input()?)?;
            let kh = khovanov_homology_with(&d, &config)?;
            let mut r = Report::new("kh", input_name);
            r.checks.push(euler_check(&d, b.as_ref(), &kh, &config)?);
            r.table = kh.entries();
            r
        }
        Command::Lee => {
            let (d, _) = load(need_input()?)?;
            let lee = lee_homology_with(&d, &config)?;
            let mut r = Report::new("lee", input_name);
            r.checks.push(lee_check(&d, &lee));
            r.lee = Some(lee_entries(&lee));
            r
        }
        Command::Jones => {
            let (d, b) = load(need_input()?)?;
            let v = match &b {
                Some(b) => braid_jones(b),
                None => kauffman_jones_with(&d, &config)?,
            };
            let mut r = Report::new("jones", input_name);
            r.jones = v.to_terms();
            r
        }
        Command::SpecSeq { select, j, r_max, pages: _ } => {
            let (d, _) = load(need_input()?)?;
            let selected = match select {
                Selection::Top2 => vec![0, 1],
                Selection::List(v) => v.clone(),
            };
            let ss = SpectralSequence::new(&d, &selected, &config)?;
            let js = if j.is_empty() { ss.quantum_degrees() } else { j.clone() };
            let mut r = Report::new("specseq", input_name);
            for &j in &js {
                let rep = ss.report(j, *r_max)?;
                r.pages.push(SpecSeqColumn { verdict: rep.verdict(), report: rep });
            }
            r.table = ss.khovanov().entries();
            r
        }
        Command::Torus { q, positive } => {
            let idx = TorusFamilyIndex::new(*q)?;
            let mut t = expected_kh_3q(*q)?;
            let mut survivors = lee_survivors(&idx);
            if *positive {
                t = t.mirror();
                survivors = LeeTable::from_degrees(&survivors.degrees().iter().map(|i| -i).collect::<Vec<_>>());
            }
            let diagonals = diagonal_count(&t)?;
            let mut c = CheckReport::new("structure");
            c.expect(diagonals == idx.expected_diagonals(), || {
                format!("{diagonals} diagonals, expected {}", idx.expected_diagonals())
            });
            c.expect(lee_pairing(&t, &survivors), || format!("no Lee pairing with survivors {survivors}"));
            let mut r = Report::new("torus", format!("torus {q}"));
            r.torus = Some(TorusSummary {
                index: idx,
                positive: *positive,
                diagonals,
                expected_diagonals: idx.expected_diagonals(),
            });
            r.table = t.entries();
            r.checks.push(c);
            r
        }
        Command::Family { q_max, q_large } => {
            let rep = verify_family_with(*q_max, *q_large, &config)?;
            let mut r = Report::new("family", format!("family {q_max}"));
            r.family = rep.rows;
            r.checks.push(rep.checks);
            r
        }
        Command::Verify => {
            let (d, b) = load(need_input()?)?;
            let mut r = Report::new("verify", input_name);
            let mut sq = CheckReport::new("d² = 0");
            for (name, alg) in [("Khovanov", FrobeniusAlgebra::khovanov()), ("Lee", FrobeniusAlgebra::lee_idempotent())]
            {
                let cx = ChainComplex::build(&d, &alg, &config)?;
                sq.expect(cx.d_squared_is_zero(), || format!("{name} differential squares to nonzero"));
            }
            let kh = khovanov_homology_with(&d, &config)?;
            let mirror = khovanov_homology_with(&d.mirror(), &config)?;
            let mut mc = CheckReport::new("mirror negates bidegrees");
            mc.expect(mirror == kh.mirror(), || "Kh(mirror) differs".into());
            let lee = lee_homology_with(&d, &config)?;
            let mut bound = CheckReport::new("Lee bounded by Kh");
            for (&i, &dim) in &lee.dims {
                bound.expect(dim <= kh.column(i), || format!("degree {i}: {dim} > {}", kh.column(i)));
            }
            r.checks = vec![sq, euler_check(&d, b.as_ref(), &kh, &config)?, lee_check(&d, &lee), bound, mc];
            r.lee = Some(lee_entries(&lee));
            r.table = kh.entries();
            r
        }
    };
    Ok(report)
}

/// Output in the configured format.
pub fn render(rc: &RunConfig, r: &Report) -> String {
    match rc.format {
        Format::Json => r.to_json(),
        Format::Text => {
            let all_pages = matches!(rc.command, Command::SpecSeq { pages: true, .. });
            r.to_text(all_pages)
        }
    }
}
