//! Acceptance suite: one PASS/FAIL line per criterion on stderr, then a
//! single assertion over all of them.
//!
//! Every comparison is exact (integer dimensions and polynomial
//! coefficients); the only tolerances are the wall-clock budgets below.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use khss::complex::*;
use khss::link::*;
use khss::specseq::*;
use khss::torus::*;

const TREFOIL_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(5 * 60);
const CONVERGENCE_BUDGET: Duration = Duration::from_secs(10 * 60);
const RECURSION_BUDGET: Duration = Duration::from_secs(10 * 60);
const DIAGONAL_BUDGET: Duration = Duration::from_secs(10);
const DIAGONAL_Q_MAX: usize = 200;
const REORIENTATIONS: usize = 50;
/// Set to skip the T(3,8) leg of criterion 8 (about 5 minutes on one core).
const SKIP_Q8_ENV: &str = "KHSS_ACCEPTANCE_SKIP_Q8";

struct Item {
    name: String,
    diagram: LinkDiagram,
    selections: Vec<Vec<usize>>,
    torus: Option<usize>,
}

struct Corpus {
    items: Vec<Item>,
    kh: Vec<KhTable>,
}

fn pd(text: &str) -> LinkDiagram {
    parse_pd(text).unwrap()
}

fn torus(q: usize) -> LinkDiagram {
    LinkDiagram::from_braid(&torus_braid(q as i64).unwrap())
}

fn selections(n: usize, rng: &mut StdRng) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n >= 1 {
        out.push(vec![n - 1]);
    }
    if n >= 2 {
        out.push(vec![0, 1]);
    }
    if n >= 3 {
        let mut s: Vec<usize> = Vec::new();
        while s.len() < 3 {
            let c = rng.gen_range(0..n);
            if !s.contains(&c) {
                s.push(c);
            }
        }
        out.push(s);
    }
    out
}

fn corpus() -> Corpus {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut items = Vec::new();
    for q in 1..=7 {
        let d = torus(q);
        let sel = selections(d.crossing_count(), &mut rng);
        items.push(Item { name: format!("T(3,{q})"), diagram: d, selections: sel, torus: Some(q) });
    }
    let fixed = [
        ("trefoil (PD)", "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\n"),
        ("figure-eight (PD)", "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8\n"),
        ("Hopf link (PD)", "X 1 4 2 3\nX 3 2 4 1\n"),
        ("unknot", "O 1\n"),
        ("two-component unlink", "O 1\nO 2\n"),
    ];
    for (name, text) in fixed {
        let d = pd(text);
        let sel = selections(d.crossing_count(), &mut rng);
        items.push(Item { name: name.into(), diagram: d, selections: sel, torus: None });
    }
    for k in 0..12 {
        let width = rng.gen_range(2..=4usize);
        let len = rng.gen_range(3..=10);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..width as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let b = BraidWord::new(width, letters).unwrap();
        let d = LinkDiagram::from_braid(&b);
        let sel = selections(d.crossing_count(), &mut rng);
        items.push(Item {
            name: format!("random braid #{k} {:?}", b.letters()),
            diagram: d,
            selections: sel,
            torus: None,
        });
    }
    Corpus { items, kh: Vec::new() }
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, detail: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            if self.passed {
                self.detail = what();
            }
            self.passed = false;
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        if self.passed {
            self.detail = s.into();
        }
        self
    }
}

fn line(id: usize, title: &str, mut out: Outcome, elapsed: Duration, budget: Option<Duration>) -> bool {
    if let Some(b) = budget {
        out.check(elapsed < b, || format!("took {elapsed:.2?}, budget {b:?}"));
    }
    let budget = budget.map(|b| format!(" < {b:?}")).unwrap_or_default();
    let status = if out.passed { "PASS" } else { "FAIL" };
    // straight to the stderr handle so the harness does not capture it
    let _ = writeln!(
        std::io::stderr(),
        "acceptance {id:>2} {status}  {title} [{:.2} s{budget}] {}",
        elapsed.as_secs_f64(),
        out.detail
    );
    out.passed
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn trefoil_table() -> Outcome {
    let mut o = Outcome::new();
    let d = torus(2);
    o.check(d.crossing_count() == 4 && d.crossing_signs() == (0, 4), || "not a 4-crossing negative diagram".into());
    let kh = khovanov_homology(&d).unwrap();
    let want = KhTable::from_entries([((0, -1), 1), ((0, -3), 1), ((-2, -5), 1), ((-3, -9), 1)]);
    o.check(kh == want, || format!("got {:?}", kh.entries()));
    o.check(graded_euler(&kh) == kauffman_jones(&d).unwrap(), || "Euler characteristic differs from Jones".into());
    o
}

fn oracle_equality(c: &mut Corpus) -> Outcome {
    let mut o = Outcome::new();
    c.kh = c.items.iter().map(|it| khovanov_homology(&it.diagram).unwrap()).collect();
    for (it, kh) in c.items.iter().zip(&c.kh) {
        let chi = graded_euler(kh);
        let v = kauffman_jones(&it.diagram).unwrap();
        o.check(chi == v, || format!("{}: {chi} != {v}", it.name));
    }
    o.note(format!("{} diagrams", c.items.len()))
}

fn lee_facts(c: &Corpus) -> Outcome {
    let mut o = Outcome::new();
    for it in &c.items {
        let lee = lee_homology(&it.diagram).unwrap();
        let expected = LeeTable::from_degrees(&expected_lee_degrees(&it.diagram));
        o.check(lee == expected, || format!("{}: {lee} != {expected}", it.name));
        if it.diagram.component_count() == 1 {
            o.check(lee == LeeTable::from_degrees(&[0, 0]), || format!("{}: knot with Lee {lee}", it.name));
        }
        if let Some(q @ (3 | 6)) = it.torus {
            let n = -4 * (q / 3) as i32;
            let want = LeeTable::from_degrees(&[0, 0, n, n, n, n, n, n]);
            o.check(lee == want, || format!("{}: {lee} != {want}", it.name));
        }
    }
    o
}

fn constants(c: &Corpus) -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=2 {
        let parts = partial_diagrams(&torus(3 * n), &[0, 1]).unwrap();
        let k = ss_constants(&parts).unwrap();
        let n = n as i32;
        o.check(k.a_tilde == vec![4 * n, 4 * n], || format!("N={n}: ã = {:?}", k.a_tilde));
        o.check(k.b_tilde == vec![12 * n - 1, 12 * n - 1], || format!("N={n}: b̃ = {:?}", k.b_tilde));
    }
    let mut count = 0;
    for it in &c.items {
        for sel in &it.selections {
            let parts = partial_diagrams(&it.diagram, sel).unwrap();
            let k = ss_constants(&parts);
            o.check(k.is_ok(), || format!("{} {sel:?}: {:?}", it.name, k.as_ref().err()));
            if let Ok(k) = k {
                let rep = shift_identities(&parts, &k);
                o.check(rep.passed, || format!("{} {sel:?}: {:?}", it.name, rep.failures));
                count += 1;
            }
        }
    }
    o.note(format!("{count} selections"))
}

fn ses_identity(c: &Corpus) -> Outcome {
    let mut o = Outcome::new();
    let mut count = 0;
    for it in &c.items {
        for sel in &it.selections {
            for k in 1..=sel.len() {
                let rep = verify_ses(&it.diagram, sel, k).unwrap();
                o.check(rep.passed, || format!("{} {sel:?} k={k}: {:?}", it.name, rep.failures));
                count += 1;
            }
        }
    }
    o.note(format!("{count} (diagram, selection, k) triples"))
}

fn convergence(c: &Corpus) -> Outcome {
    let mut o = Outcome::new();
    let mut degrees = 0;
    for q in 3..=6 {
        let ss = SpectralSequence::new(&torus(q), &[0, 1], &Config::default()).unwrap();
        let kh = ss.khovanov().clone();
        for j in kh.quantum_degrees() {
            let rep = ss.report(j, 1).unwrap();
            let stable = rep.stable();
            for i in kh.iter().filter(|((_, jj), _)| *jj == j).map(|((i, _), _)| i) {
                o.check(stable.diagonal(i) == kh.get(i, j), || format!("T(3,{q}) ({i},{j})"));
            }
            o.check(rep.passed(), || format!("T(3,{q}) j={j}: {:?}", rep.checks));
            degrees += 1;
        }
    }
    let mut singles = 0;
    for it in c.items.iter().filter(|it| it.diagram.crossing_count() <= 10) {
        for sel in it.selections.iter().filter(|s| s.len() == 1) {
            let ss = SpectralSequence::new(&it.diagram, sel, &Config::default()).unwrap();
            for j in ss.quantum_degrees() {
                let rep = ss.report(j, 1).unwrap();
                o.check(rep.collapse_page <= 2 && rep.passed(), || {
                    format!("{} {sel:?} j={j}: {}", it.name, rep.verdict())
                });
            }
            singles += 1;
        }
    }
    o.note(format!("{degrees} torus columns, {singles} single-crossing runs"))
}

fn e1_localization() -> Outcome {
    let mut o = Outcome::new();
    for n in 1..=2usize {
        let q = 3 * n;
        let ph = PartialHomology::new(partial_diagrams(&torus(q), &[0, 1]).unwrap(), &Config::default()).unwrap();
        let n = n as i32;
        let low = -12 * n - 1;
        let e1 = ph.e1(low);
        let want: Vec<((i32, i32), usize)> = vec![((0, -4 * n), 1), ((1, -4 * n - 1), 1)];
        let got: Vec<((i32, i32), usize)> = e1.dims.iter().map(|(&k, &v)| (k, v)).collect();
        o.check(got == want, || format!("N={n}, j={low}: {got:?}"));
        let (mut s0, mut s1) = (BTreeSet::new(), BTreeSet::new());
        for j in (-12 * n - 9..=3 * q as i32 + 9).step_by(2) {
            let page = ph.e1(j);
            for &(s, t) in page.dims.keys() {
                match s {
                    0 => {
                        o.check(t == -4 * n, || format!("N={n}: E1^(0,{t}) at j={j}"));
                        s0.insert(j);
                    }
                    1 => {
                        o.check(t == -4 * n - 1, || format!("N={n}: E1^(1,{t}) at j={j}"));
                        s1.insert(j);
                    }
                    _ => o.check((-12 * n + 1..=-6 * n + 3).contains(&j), || {
                        format!("N={n}: column s=2 nonzero at j={j}")
                    }),
                }
            }
            if j > -12 * n + 3 {
                o.check(page.dims.keys().all(|&(s, _)| s == 2), || format!("N={n}: j={j} not in column s=2"));
            }
        }
        o.check(s0 == BTreeSet::from([-12 * n - 1, -12 * n + 1, -12 * n + 3]), || format!("N={n}: s=0 at {s0:?}"));
        o.check(s1 == BTreeSet::from([-12 * n - 1, -12 * n + 1]), || format!("N={n}: s=1 at {s1:?}"));
    }
    o
}

fn recursion(c: &Corpus, q8: bool) -> Outcome {
    let mut o = Outcome::new();
    let mut brute: Vec<KhTable> = Vec::new();
    for q in 2..=7 {
        let i = c.items.iter().position(|it| it.torus == Some(q)).unwrap();
        brute.push(c.kh[i].clone());
        let e = expected_kh_3q(q).unwrap();
        o.check(e == c.kh[i], || format!("q={q}: recursion {:?} vs cube {:?}", e.entries(), c.kh[i].entries()));
    }
    let mut done = "q = 2..7".to_string();
    if q8 {
        let t8 = khovanov_homology(&torus(8)).unwrap();
        let e = expected_kh_3q(8).unwrap();
        o.check(e == t8, || format!("q=8: recursion {:?} vs cube {:?}", e.entries(), t8.entries()));
        // the step-3 corrections at N = 2 need this table
        let fit = RecursionDelta::fit(Step::Three, &brute[5], &t8, 2);
        o.check(RecursionDelta::of(Step::Three).same_corrections(&fit), || format!("step 3 at N=2: {fit:?}"));
        done.push_str(", 8");
    }
    // corrections fitted at N = 1 hold again at N = 2
    for (c, q) in [(Step::One, 6), (Step::Two, 7)] {
        let fit = RecursionDelta::fit(c, &brute[q - 3], &brute[q - 2], 2);
        o.check(RecursionDelta::of(c).same_corrections(&fit), || format!("{c} at N=2: {fit:?}"));
    }
    o.note(done)
}

fn diagonals() -> Outcome {
    let mut o = Outcome::new();
    let tables = expected_tables(DIAGONAL_Q_MAX).unwrap();
    for (k, t) in tables.iter().enumerate() {
        let q = k + 2;
        let n = q / 3;
        let d = diagonal_count(t).unwrap();
        o.check(d == n + 2, || format!("q={q}: {d} diagonals, N+2 = {}", n + 2));
    }
    o.note(format!("q = 2..{DIAGONAL_Q_MAX}"))
}

fn mirror(c: &Corpus) -> Outcome {
    let mut o = Outcome::new();
    for (it, kh) in c.items.iter().zip(&c.kh) {
        let m = khovanov_homology(&it.diagram.mirror()).unwrap();
        o.check(m == kh.mirror(), || it.name.clone());
    }
    o
}

fn orientation_independence(c: &Corpus) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = StdRng::seed_from_u64(11);
    let mut total_flips = 0;
    let cases: Vec<(&Item, &Vec<usize>)> = c
        .items
        .iter()
        .filter(|it| it.diagram.crossing_count() <= 10)
        .flat_map(|it| it.selections.iter().filter(|s| s.len() >= 2).map(move |s| (it, s)))
        .collect();
    for trial in 0..REORIENTATIONS {
        let (it, sel) = cases[trial % cases.len()];
        let n = it.diagram.crossing_count() as i32;
        let base = PartialHomology::new(partial_diagrams(&it.diagram, sel).unwrap(), &Config::default()).unwrap();
        let mut flips = 0;
        let parts = partial_diagrams_with(&it.diagram, sel, |_, _, comps| {
            (0..comps)
                .map(|_| {
                    let f = rng.gen_bool(0.5);
                    flips += f as usize;
                    f
                })
                .collect()
        })
        .unwrap();
        total_flips += flips;
        let other = PartialHomology::new(parts, &Config::default()).unwrap();
        for j in -3 * n - 6..=3 * n + 6 {
            let (a, b) = (base.e1(j), other.e1(j));
            o.check(a == b, || format!("{} {sel:?} trial {trial} ({flips} flips) j={j}", it.name));
        }
    }
    o.check(total_flips > 0, || "no component was ever reversed".into());
    o.note(format!("{REORIENTATIONS} trials over {} selections, {total_flips} components reversed", cases.len()))
}

#[test]
fn acceptance() {
    let mut all = true;
    let mut c = corpus();
    let q8 = std::env::var_os(SKIP_Q8_ENV).is_none();

    let (o, t) = timed(trefoil_table);
    all &= line(1, "trefoil table", o, t, Some(TREFOIL_BUDGET));
    let (o, t) = timed(|| oracle_equality(&mut c));
    all &= line(2, "graded Euler characteristic equals Jones polynomial", o, t, Some(ORACLE_BUDGET));
    let (o, t) = timed(|| lee_facts(&c));
    all &= line(3, "Lee homology degrees", o, t, None);
    let (o, t) = timed(|| constants(&c));
    all &= line(4, "shift constants and identities", o, t, None);
    let (o, t) = timed(|| ses_identity(&c));
    all &= line(5, "short exact sequence dimensions", o, t, None);
    let (o, t) = timed(|| convergence(&c));
    all &= line(6, "spectral sequence convergence", o, t, Some(CONVERGENCE_BUDGET));
    let (o, t) = timed(e1_localization);
    all &= line(7, "E1 localization for T(3,3N)", o, t, None);
    let (o, t) = timed(|| recursion(&c, q8));
    all &= line(8, "recursion tables equal the cube engine", o, t, Some(RECURSION_BUDGET));
    let (o, t) = timed(diagonals);
    all &= line(9, "N+2 diagonals", o, t, Some(DIAGONAL_BUDGET));
    let (o, t) = timed(|| mirror(&c));
    all &= line(10, "mirror negates bidegrees", o, t, None);
    let (o, t) = timed(|| orientation_independence(&c));
    all &= line(11, "E1 independent of re-orientation choices", o, t, None);

    assert!(all, "acceptance criteria failed, see the lines above");
}
