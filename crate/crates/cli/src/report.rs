use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use khss::complex::{KhEntry, KhTable};
use khss::linalg::{LaurentPoly, Term};
use khss::specseq::SSReport;
use khss::torus::{FamilyRow, TorusFamilyIndex};
use khss::CheckReport;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeeEntry {
    pub i: i32,
    pub dim: usize,
}

/// Spectral sequence at one quantum degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecSeqColumn {
    pub verdict: String,
    pub report: SSReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusSummary {
    pub index: TorusFamilyIndex,
    pub positive: bool,
    pub diagonals: usize,
    pub expected_diagonals: usize,
}

/// Everything a command prints. The JSON form is this struct verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub kind: String,
    pub input: String,
    #[serde(default)]
    pub table: Vec<KhEntry>,
    #[serde(default)]
    pub pages: Vec<SpecSeqColumn>,
    #[serde(default)]
    pub checks: Vec<CheckReport>,
    #[serde(default)]
    pub jones: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lee: Option<Vec<LeeEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub family: Vec<FamilyRow>,
}

impl Report {
    pub fn new(kind: &str, input: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA,
            kind: kind.into(),
            input: input.into(),
            table: Vec::new(),
            pages: Vec::new(),
            checks: Vec::new(),
            jones: Vec::new(),
            lee: None,
            torus: None,
            family: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.pages.iter().all(|p| p.report.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Human-readable form. Without `all_pages` only `E_1` and the last
    /// page of each spectral sequence are shown.
    pub fn to_text(&self, all_pages: bool) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "{} [{}]", self.kind, self.input).unwrap();
        if let Some(t) = &self.torus {
            let n = t.index.n;
            let class = match t.index.class {
                khss::torus::TorusClass::Multiple => "3N",
                khss::torus::TorusClass::Plus => "3N+1",
                khss::torus::TorusClass::Minus => "3N-1",
            };
            let sign = if t.positive { "positive" } else { "negative" };
            writeln!(w, "{sign} T(3,{}), q = {class} with N = {n}", t.index.q).unwrap();
            writeln!(w, "diagonals: {} (expected {})", t.diagonals, t.expected_diagonals).unwrap();
        }
        if !self.table.is_empty() {
            let t: KhTable = self.table.clone().into();
            write!(w, "{t}").unwrap();
        }
        if let Some(lee) = &self.lee {
            let parts: Vec<String> = lee.iter().map(|e| format!("{}: {}", e.i, e.dim)).collect();
            writeln!(w, "Lee: {{{}}}", parts.join(", ")).unwrap();
        }
        if !self.jones.is_empty() {
            writeln!(w, "V = {}", LaurentPoly::from_term_list(&self.jones)).unwrap();
        }
        for col in &self.pages {
            let r = &col.report;
            writeln!(w, "j = {}: {}", r.j, col.verdict).unwrap();
            let n = r.pages.len();
            for (k, p) in r.pages.iter().enumerate() {
                if !all_pages && k != 0 && k + 1 != n {
                    continue;
                }
                let cells: Vec<String> = p.dims.iter().map(|((s, t), d)| format!("({s},{t}):{d}")).collect();
                writeln!(w, "  E{}  {}", p.r, if cells.is_empty() { "0".into() } else { cells.join(" ") }).unwrap();
            }
            let kh: Vec<String> = r.kh_column.iter().map(|(i, d)| format!("{i}: {d}")).collect();
            writeln!(w, "  Kh  {{{}}}", kh.join(", ")).unwrap();
        }
        if !self.family.is_empty() {
            let mark = |b: bool| if b { "ok" } else { "FAILED" };
            for r in self.family.iter().filter(|r| r.brute.is_some()) {
                let status = if r.brute == Some(true) { "equal" } else { "DIFFERS" };
                writeln!(
                    w,
                    "q={:<3} {status}  diagonals {}/{}  lee {}  euler {}",
                    r.q,
                    r.diagonals,
                    r.index.expected_diagonals(),
                    mark(r.lee),
                    mark(r.euler)
                )
                .unwrap();
            }
            let rest: Vec<&FamilyRow> = self.family.iter().filter(|r| r.brute.is_none()).collect();
            if let (Some(a), Some(b)) = (rest.first(), rest.last()) {
                let bad: Vec<usize> = rest.iter().filter(|r| !r.passed()).map(|r| r.q).collect();
                let status = if bad.is_empty() { "ok".to_string() } else { format!("FAILED at q = {bad:?}") };
                writeln!(w, "q={}..{} (recursion only): diagonals, lee, euler {status}", a.q, b.q).unwrap();
            }
        }
        for c in &self.checks {
            writeln!(w, "check {}: {}", c.name, if c.passed { "ok" } else { "FAILED" }).unwrap();
            for f in &c.failures {
                writeln!(w, "  {f}").unwrap();
            }
        }
        out
    }
}
