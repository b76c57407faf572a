//! Desk-scale replay of the theorem-level claims about kernels, the theta
//! hierarchy and successor structures.
//!
//! Each suite returns a [`Report`]: named checks with pass and fail counts,
//! and for failures the offending structure in edge-list form so it can be
//! replayed with the CLI. A correct build produces no failures.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{enumerate_up_to, random_digraph_with, witness_chain, Digraph};
use crate::kernel::{brute_force_kernels, is_kernel, kernel_for_odd_cycle_free, solve};
use crate::logic::{
    axiom, parse, russell_validity_check, theta, theta_set, yablo_instance, Axiom, CompiledFormula,
    Formula,
};
use crate::successor::SuccessorStructure;

pub const MAX_THETA_LEVEL: usize = 5;
pub const MAX_THETA_EXHAUSTIVE_NODES: usize = 4;
pub const MAX_LEMMA_TOTAL: usize = 12;
pub const MAX_COMPACTNESS_N: usize = 100;
pub const MAX_Y1_EXHAUSTIVE_NODES: usize = 3;
/// Largest odd cycle handed to the search solver in the compactness suite.
pub const COMPACTNESS_SOLVER_NODES: usize = 31;
/// Largest N for which fragments are also checked by the evaluator.
pub const COMPACTNESS_EVAL_N: usize = 5;

const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{param} = {value} exceeds the cap of {cap}")]
    Cap {
        param: &'static str,
        value: usize,
        cap: usize,
    },
}

fn cap(param: &'static str, value: usize, cap: usize) -> Result<(), VerifyError> {
    if value > cap {
        Err(VerifyError::Cap { param, value, cap })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub pass: u64,
    pub fail: u64,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub notes: Vec<String>,
    checks: Vec<(String, CheckOutcome)>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_owned(),
            notes: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn entry(&mut self, check: &str) -> &mut CheckOutcome {
        let pos = match self.checks.iter().position(|(name, _)| name == check) {
            Some(pos) => pos,
            None => {
                self.checks
                    .push((check.to_owned(), CheckOutcome::default()));
                self.checks.len() - 1
            }
        };
        &mut self.checks[pos].1
    }

    /// Records one instance of `check`. `witness` is only rendered on failure.
    pub fn record(&mut self, check: &str, ok: bool, witness: impl FnOnce() -> String) {
        let e = self.entry(check);
        if ok {
            e.pass += 1;
        } else {
            e.fail += 1;
            if e.witnesses.len() < MAX_WITNESSES {
                e.witnesses.push(witness());
            }
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn checks(&self) -> impl Iterator<Item = (&str, &CheckOutcome)> {
        self.checks.iter().map(|(n, c)| (n.as_str(), c))
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn failures(&self) -> u64 {
        self.checks.iter().map(|(_, c)| c.fail).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct OrderedChecks<'a>(&'a [(String, CheckOutcome)]);

impl Serialize for OrderedChecks<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (name, outcome) in self.0 {
            map.serialize_entry(name, outcome)?;
        }
        map.end()
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Report", 4)?;
        st.serialize_field("suite", &self.suite)?;
        st.serialize_field("passed", &self.passed())?;
        st.serialize_field("notes", &self.notes)?;
        st.serialize_field("checks", &OrderedChecks(&self.checks))?;
        st.end()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.suite)?;
        for note in &self.notes {
            writeln!(f, "# {note}")?;
        }
        for (name, c) in &self.checks {
            let status = if c.fail == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {name}: {} passed, {} failed", c.pass, c.fail)?;
            for w in &c.witnesses {
                for line in w.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        Ok(())
    }
}

fn witness(label: impl fmt::Display, g: &Digraph) -> String {
    format!("# {label}\n{g}")
}

fn holds(c: &CompiledFormula, g: &Digraph) -> bool {
    c.eval(g, &[]).expect("closed R-formula")
}

/// The three small digraphs used to separate the sufficient conditions.
pub fn section_two_graphs() -> [(&'static str, Digraph); 3] {
    [
        (
            "graph1",
            Digraph::build(3, [(0, 1), (0, 2), (2, 2)]).expect("fixture"),
        ),
        (
            "graph2",
            Digraph::build(3, [(0, 1), (1, 2), (2, 2)]).expect("fixture"),
        ),
        (
            "graph3",
            Digraph::build(4, [(0, 1), (1, 2), (0, 3), (1, 3), (2, 3), (3, 3)]).expect("fixture"),
        ),
    ]
}

/// Truth values of the Yablo sentence (no kernel) and the named conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FixtureValues {
    pub y: bool,
    pub a1: bool,
    pub a2: bool,
    pub a: bool,
}

pub fn fixture_values(g: &Digraph) -> FixtureValues {
    let ev = |a| holds(&CompiledFormula::new(&axiom(a)), g);
    FixtureValues {
        y: !solve(g).has_kernel(),
        a1: ev(Axiom::A1),
        a2: ev(Axiom::A2),
        a: ev(Axiom::A),
    }
}

// (condition, expected truth value) pairs for one fixture
type Expected = &'static [(&'static str, bool)];

/// The separating examples for A1, A2 and A, and the converse
/// non-implication from "no kernel" to the theta conditions.
pub fn check_fixtures() -> Report {
    let mut r = Report::new("fixtures");
    let [(n1, g1), (n2, g2), (n3, g3)] = section_two_graphs();
    let expectations: [(&str, &Digraph, Expected); 3] = [
        (n1, &g1, &[("Y", true), ("A2", true), ("A1", false)]),
        (n2, &g2, &[("Y", true), ("A1", true), ("A2", false)]),
        (n3, &g3, &[("A", true), ("A2", false)]),
    ];
    for (name, g, expected) in expectations {
        let v = fixture_values(g);
        for &(cond, want) in expected {
            let got = match cond {
                "Y" => v.y,
                "A1" => v.a1,
                "A2" => v.a2,
                _ => v.a,
            };
            let check = format!("{name}: {cond} is {want}");
            r.record(&check, got == want, || {
                witness(format!("{cond} evaluated to {got}"), g)
            });
        }
        if expected.iter().any(|&(c, _)| c == "Y") {
            let brute = brute_force_kernels(g).expect("small fixture").is_empty();
            r.record(
                &format!("{name}: Y agrees with brute force"),
                brute == v.y,
                || witness("solver and brute force disagree", g),
            );
        }
    }
    let ut0 = CompiledFormula::new(&Formula::forall("x", theta(0)));
    let converse = !solve(&g1).has_kernel() && !holds(&ut0, &g1);
    r.record(
        "graph1: Y holds but forall x theta0 fails",
        converse,
        || witness("expected Y without forall x theta0", &g1),
    );
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaParams {
    pub max_n: usize,
    pub exhaustive_nodes: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ThetaParams {
    fn default() -> Self {
        ThetaParams {
            max_n: 4,
            exhaustive_nodes: 4,
            samples: 200,
            seed: 42,
        }
    }
}

const SOUND: &str = "(1) forall x theta_n implies no kernel";
const MONOTONE: &str = "(2) forall x theta_n implies forall x theta_n+1";
const STRICT: &str = "(3) witness_chain(n+1) satisfies theta_n+1 but not theta_n";

/// Checks, for `n <= max_n`, that universal theta_n rules out kernels and
/// implies universal theta_(n+1) on every small digraph and on seeded random
/// ones with 5 to 10 nodes; and for `n < max_n` that the witness chain
/// separates consecutive levels.
pub fn check_theorem_thetas(p: ThetaParams) -> Result<Report, VerifyError> {
    cap("max_n", p.max_n, MAX_THETA_LEVEL)?;
    cap(
        "exhaustive_nodes",
        p.exhaustive_nodes,
        MAX_THETA_EXHAUSTIVE_NODES,
    )?;
    let mut r = Report::new("thetas");
    let mut antecedent = 0u64;

    let mut sweep = |r: &mut Report, g: &Digraph, origin: &str| {
        let has_kernel = solve(g).has_kernel();
        let mut universal: Vec<bool> = (0..=p.max_n + 1)
            .map(|n| theta_set(g, n).is_full())
            .collect();
        // theta_set is the fast path; re-derive the bottom level from the formula
        universal[0] = holds(&CompiledFormula::new(&Formula::forall("x", theta(0))), g);
        for n in 0..=p.max_n {
            if universal[n] {
                antecedent += 1;
            }
            r.record(SOUND, !universal[n] || !has_kernel, || {
                witness(
                    format!("{origin}: theta_{n} universal but a kernel exists"),
                    g,
                )
            });
            r.record(MONOTONE, !universal[n] || universal[n + 1], || {
                witness(
                    format!("{origin}: theta_{n} universal, theta_{} not", n + 1),
                    g,
                )
            });
        }
    };

    for g in enumerate_up_to(p.exhaustive_nodes).expect("within cap") {
        sweep(&mut r, &g, "exhaustive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for i in 0..p.samples {
        let n = rng.gen_range(5..=10);
        let prob = rng.gen_range(0.2..0.9);
        let g = random_digraph_with(&mut rng, n, prob);
        sweep(&mut r, &g, &format!("sample {i}"));
    }

    for n in 0..p.max_n {
        let g = witness_chain(n + 1);
        let upper = theta_set(&g, n + 1).is_full();
        let lower = theta_set(&g, n);
        let ok = upper && !lower.is_full() && !lower.contains(0);
        r.record(STRICT, ok, || witness(format!("n = {n}"), &g));
    }

    r.note(format!(
        "levels 0..={}, all digraphs on <= {} nodes plus {} random digraphs on 5..=10 nodes (seed {})",
        p.max_n, p.exhaustive_nodes, p.samples, p.seed
    ));
    r.note(format!(
        "antecedent held in {antecedent} (graph, level) pairs"
    ));
    Ok(r)
}

/// Over every finite successor model with at most `max_total` elements,
/// kernel existence (by search and brute force) coincides with all cycles
/// being even, and the alternating construction yields a kernel.
pub fn check_lemma(max_total: usize) -> Result<Report, VerifyError> {
    cap("max_total", max_total, MAX_LEMMA_TOTAL)?;
    let mut r = Report::new("lemma");
    let s_axiom = CompiledFormula::new(&axiom(Axiom::S));
    let a1 = CompiledFormula::new(&axiom(Axiom::A1));
    let structures = SuccessorStructure::all_finite_up_to(max_total);
    for s in &structures {
        let g = s.realize().expect("finite");
        let symbolic = s.kernel_exists();
        let label = || s.to_string();

        let solved = solve(&g);
        r.record(
            "solver verdict = all cycles even",
            solved.has_kernel() == symbolic,
            || witness(label(), &g),
        );
        let brute = !brute_force_kernels(&g).expect("<= 12 nodes").is_empty();
        r.record(
            "brute force verdict = all cycles even",
            brute == symbolic,
            || witness(label(), &g),
        );
        r.record(
            "odd closed walk detector = some cycle odd",
            crate::graph::has_odd_closed_walk(&g) == !symbolic,
            || witness(label(), &g),
        );
        if let Some(k) = solved.kernel() {
            r.record(
                "solver kernel passes is_kernel",
                is_kernel(&g, k) == Ok(true),
                || witness(label(), &g),
            );
        }
        match s.even_index_kernel() {
            Some(k) => r.record(
                "even-index construction is a kernel",
                is_kernel(&g, &k) == Ok(true),
                || witness(label(), &g),
            ),
            None => r.record(
                "even-index construction refused only for odd cycles",
                !symbolic,
                || witness(label(), &g),
            ),
        }
        let built = kernel_for_odd_cycle_free(&g);
        let ok = match &built {
            Ok(k) => symbolic && is_kernel(&g, k) == Ok(true),
            Err(_) => !symbolic,
        };
        r.record("constructive kernel agrees", ok, || witness(label(), &g));
        r.record(
            "realized graph satisfies S and A1",
            holds(&s_axiom, &g) && holds(&a1, &g),
            || witness(label(), &g),
        );
        r.record(
            "classify inverts realize",
            SuccessorStructure::classify(&g).as_ref() == Ok(s),
            || witness(label(), &g),
        );
    }
    r.note(format!(
        "{} cycle multisets with total size <= {max_total}",
        structures.len()
    ));
    Ok(r)
}

/// Exhibits the odd cycle of length `2N + 3`: it satisfies injectivity and
/// every odd-cycle exclusion up to `2N + 1`, yet has no kernel.
pub fn compactness_demo(n: usize) -> Result<Report, VerifyError> {
    cap("N", n, MAX_COMPACTNESS_N)?;
    let len = 2 * n + 3;
    let mut r = Report::new(&format!("compactness N={n}"));
    r.note(format!(
        "C{len} satisfies S and no_odd_cycle(k) for k <= {n} but has no kernel; \
         every finite fragment of S plus all no_odd_cycle axioms has such a model \
         outside the class of kernel-having successor models, so that class is not \
         finitely axiomatizable and no first-order sentence defines the Yablo sentence"
    ));
    let s = SuccessorStructure::finite(vec![len]).expect("positive length");
    let g = s.realize().expect("finite");
    let label = || format!("C{len}");

    r.record(
        "fragment k <= N holds (arithmetic)",
        s.satisfies_fragment(n),
        || witness(label(), &g),
    );
    r.record(
        "fragment k <= N+1 fails (arithmetic)",
        !s.satisfies_fragment(n + 1),
        || witness(label(), &g),
    );
    r.record("no kernel (symbolic)", !s.kernel_exists(), || {
        witness(label(), &g)
    });
    if len <= COMPACTNESS_SOLVER_NODES {
        r.record("no kernel (solver)", !solve(&g).has_kernel(), || {
            witness(label(), &g)
        });
    }
    if n <= COMPACTNESS_EVAL_N {
        let ok_s = holds(&CompiledFormula::new(&axiom(Axiom::S)), &g);
        r.record("S holds (evaluator)", ok_s, || witness(label(), &g));
        let fragment_ok =
            (0..=n).all(|k| holds(&CompiledFormula::new(&axiom(Axiom::NoOddCycle(k))), &g));
        r.record("fragment k <= N holds (evaluator)", fragment_ok, || {
            witness(label(), &g)
        });
        let next = holds(&CompiledFormula::new(&axiom(Axiom::NoOddCycle(n + 1))), &g);
        r.record("fragment k = N+1 fails (evaluator)", !next, || {
            witness(label(), &g)
        });
    }
    Ok(r)
}

/// The formulas substituted into the first-order Yablo scheme.
pub fn scheme_instances() -> Vec<(&'static str, Formula)> {
    vec![
        ("theta0", theta(0)),
        ("theta1", theta(1)),
        ("R(x,x)", parse("R(x,x)").expect("valid")),
        (
            "exists y. R(x,y)",
            parse("exists y. R(x,y)").expect("valid"),
        ),
    ]
}

/// On every digraph with at most `exhaustive_nodes` nodes, A1 and A2 (and
/// separately A) imply each listed instance of the first-order Yablo scheme.
/// Also replays the Russell sentence as a validity.
pub fn check_scheme_y1(exhaustive_nodes: usize) -> Result<Report, VerifyError> {
    cap(
        "exhaustive_nodes",
        exhaustive_nodes,
        MAX_Y1_EXHAUSTIVE_NODES,
    )?;
    let mut r = Report::new("y1");
    let a1 = CompiledFormula::new(&axiom(Axiom::A1));
    let a2 = CompiledFormula::new(&axiom(Axiom::A2));
    let a = CompiledFormula::new(&axiom(Axiom::A));
    let instances: Vec<_> = scheme_instances()
        .into_iter()
        .map(|(name, phi)| {
            let y1 = CompiledFormula::new(&yablo_instance(&phi).expect("one free variable"));
            (name, CompiledFormula::new(&phi), y1)
        })
        .collect();
    let mut graphs = 0;
    for g in enumerate_up_to(exhaustive_nodes).expect("within cap") {
        graphs += 1;
        let a1a2 = holds(&a1, &g) && holds(&a2, &g);
        let a_holds = holds(&a, &g);
        for (name, phi, y1) in &instances {
            let y1_holds = holds(y1, &g);
            r.record(&format!("A1 & A2 -> Y1[{name}]"), !a1a2 || y1_holds, || {
                witness(format!("phi = {name}"), &g)
            });
            r.record(&format!("A -> Y1[{name}]"), !a_holds || y1_holds, || {
                witness(format!("phi = {name}"), &g)
            });
            let set = phi.satisfying_set(&g).expect("one free variable");
            let not_kernel = is_kernel(&g, &set) == Ok(false);
            r.record(
                &format!("Y1[{name}] = defined set is not a kernel"),
                y1_holds == not_kernel,
                || witness(format!("phi = {name}"), &g),
            );
        }
    }
    let russell_nodes = exhaustive_nodes.max(1);
    r.record(
        "Russell sentence valid",
        russell_validity_check(russell_nodes) == Ok(true),
        || format!("# invalid on some digraph with <= {russell_nodes} nodes"),
    );
    r.note(format!("{graphs} digraphs on <= {exhaustive_nodes} nodes"));
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteParams {
    pub thetas: ThetaParams,
    pub max_total: usize,
    pub compactness_n: usize,
    pub y1_nodes: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            thetas: ThetaParams::default(),
            max_total: MAX_LEMMA_TOTAL,
            compactness_n: 10,
            y1_nodes: MAX_Y1_EXHAUSTIVE_NODES,
        }
    }
}

pub fn run_all(p: &SuiteParams) -> Result<Vec<Report>, VerifyError> {
    Ok(vec![
        check_fixtures(),
        check_theorem_thetas(p.thetas)?,
        check_lemma(p.max_total)?,
        compactness_demo(p.compactness_n)?,
        check_scheme_y1(p.y1_nodes)?,
    ])
}
