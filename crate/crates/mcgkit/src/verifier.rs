//! Relator verification in the fundamental-group and homology
//! representations.
//!
//! A relator `lhs = rhs` is checked by expanding both sides to chain
//! generators, evaluating `lhs rhs^-1` in the chosen representation, and
//! comparing against the identity. Failing checks carry a witness: the
//! first basis element (or matrix cell) where the two sides disagree,
//! with both values.
//!
//! Suites bundle relators with their expected outcomes. Most relations are
//! expected to hold in both representations; the closed-surface relators
//! are expected to fail in the fundamental group of the bounded surface
//! while holding in homology, and those expectations are part of the suite
//! definition, not of the checker.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

use crate::autfree::{AutError, Budget, Endo, TwistTable};
use crate::catalog::{
    disk_holes_suite, Catalog, CatalogError, Expectation, Relator,
};
use crate::symplectic::{sp_of_word, SympMatrix};
use crate::word::Word;

/// The representation a check runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rep {
    Pi1,
    Sp,
}

impl Rep {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rep::Pi1 => "pi1",
            Rep::Sp => "sp",
        }
    }
}

/// Which representations to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepChoice {
    Pi1,
    Sp,
    Both,
}

/// Outcome of a single check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    Skipped(String),
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Skipped(_) => "skipped",
        }
    }
}

/// First point of disagreement between the two sides of a relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Basis letter (`pi1`) or matrix cell (`sp`) where the sides differ.
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

/// Result of checking one relator in one representation.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: String,
    pub tag: String,
    pub rep: Rep,
    pub status: Status,
    pub elapsed: Duration,
    /// Present exactly when the status is `Fails`.
    pub witness: Option<Witness>,
    /// What the suite definition expects of this check.
    pub expected: Expectation,
}

impl CheckResult {
    /// Whether the observed status matches the suite's expectation.
    pub fn as_expected(&self) -> bool {
        match (&self.status, self.expected) {
            (Status::Holds, Expectation::Holds) => true,
            (Status::Fails, Expectation::Fails) => true,
            (Status::Skipped(_), Expectation::Skip) => true,
            _ => false,
        }
    }
}

/// Aggregate counts over a report.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub holds: usize,
    pub fails: usize,
    pub skipped: usize,
    pub unexpected: usize,
}

/// A full verification run over one suite.
#[derive(Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub genus: usize,
    pub results: Vec<CheckResult>,
    pub counts: Counts,
}

impl Report {
    pub fn from_results(suite: &str, genus: usize, results: Vec<CheckResult>) -> Report {
        let mut counts = Counts::default();
        for r in &results {
            match r.status {
                Status::Holds => counts.holds += 1,
                Status::Fails => counts.fails += 1,
                Status::Skipped(_) => counts.skipped += 1,
            }
            if !r.as_expected() {
                counts.unexpected += 1;
            }
        }
        Report {
            suite: suite.into(),
            genus,
            results,
            counts,
        }
    }

    /// True when every result matched its expectation.
    pub fn all_expected(&self) -> bool {
        self.counts.unexpected == 0
    }

    /// A check that holds in pi1 but fails in homology would contradict the
    /// factoring of the homology action through the fundamental-group
    /// action; returns the offending id if the report contains one.
    pub fn representation_bug(&self) -> Option<&str> {
        let mut sp_fails: Vec<&str> = Vec::new();
        for r in &self.results {
            if r.rep == Rep::Sp && r.status == Status::Fails {
                sp_fails.push(&r.id);
            }
        }
        self.results.iter().find_map(|r| {
            (r.rep == Rep::Pi1
                && r.status == Status::Holds
                && sp_fails.contains(&r.id.as_str()))
            .then_some(r.id.as_str())
        })
    }
}

/// A relator plus the outcome each representation is expected to produce.
#[derive(Debug, Clone)]
pub struct SuiteItem {
    pub relator: Relator,
    pub min_genus: usize,
    pub expect_pi1: Expectation,
    pub expect_sp: Expectation,
}

impl SuiteItem {
    fn exact(relator: Relator, min_genus: usize) -> SuiteItem {
        SuiteItem {
            relator,
            min_genus,
            expect_pi1: Expectation::Holds,
            expect_sp: Expectation::Holds,
        }
    }
}

/// All suite names, in the order used by `all`.
pub fn suite_names() -> &'static [&'static str] {
    &[
        "thm1", "thm1p", "thm2", "thm3", "thm3p", "H_stab", "G_full",
        "disk_holes", "sec4", "sec5", "sec6", "lemma4", "lantern", "negative",
    ]
}

/// Whether a suite is defined at a genus.
pub fn suite_available(name: &str, genus: usize) -> bool {
    match name {
        "thm1" => genus >= 3,
        "thm2" => genus == 2,
        "lemma4" => genus >= 2,
        "lantern" => genus >= 3,
        "sec4" => genus >= 2,
        _ => genus >= 2,
    }
}

/// The items of a named suite at the catalog's genus.
pub fn suite_items(name: &str, cat: &Catalog) -> Result<Vec<SuiteItem>, CatalogError> {
    let genus = cat.genus();
    match name {
        "thm1" | "thm1p" | "thm2" | "thm3" | "thm3p" | "H_stab" | "G_full" => {
            let p = cat.presentation(name)?;
            Ok(p.relators
                .into_iter()
                .map(|r| {
                    // The closed-surface relators hold only in homology.
                    let closed = r.tag == "M4" || r.tag == "D";
                    SuiteItem {
                        min_genus: genus,
                        expect_pi1: if closed {
                            Expectation::Fails
                        } else {
                            Expectation::Holds
                        },
                        expect_sp: Expectation::Holds,
                        relator: r,
                    }
                })
                .collect())
        }
        "disk_holes" => Ok(disk_holes_suite(cat)?
            .into_iter()
            .map(|r| SuiteItem::exact(r, genus))
            .collect()),
        "sec4" | "sec5" | "sec6" | "lemma4" | "lantern" => Ok(cat
            .fixture_relations(name)?
            .into_iter()
            .map(|f| SuiteItem {
                relator: f.relator,
                min_genus: f.min_genus,
                expect_pi1: f.pi1,
                expect_sp: f.sp,
            })
            .collect()),
        "negative" => negative_control_items(cat),
        "all" => {
            let mut out = Vec::new();
            for n in suite_names() {
                if !suite_available(n, genus) {
                    continue;
                }
                for mut item in suite_items(n, cat)? {
                    item.relator.id = format!("{n}/{}", item.relator.id);
                    out.push(item);
                }
            }
            Ok(out)
        }
        other => Err(CatalogError::UnknownSuite { name: other.into() }),
    }
}

/// The relator-shaped negative controls. The conjugation control, which is
/// not a plain relator, is added by [`run_negative_controls`].
fn negative_control_items(cat: &Catalog) -> Result<Vec<SuiteItem>, CatalogError> {
    let genus = cat.genus();
    if genus < 2 {
        return Err(CatalogError::UnsupportedGenus {
            what: "negative".into(),
            genus,
        });
    }
    let m4 = cat.m4_relator()?;
    let mut items = vec![SuiteItem {
        relator: m4,
        min_genus: 2,
        expect_pi1: Expectation::Fails,
        expect_sp: Expectation::Holds,
    }];
    let sec5 = cat.fixture_relations("sec5")?;
    for f in sec5 {
        if f.relator.id == "sec5.deltaexpr" {
            items.push(SuiteItem {
                relator: Relator {
                    id: "neg.deltaexpr".into(),
                    ..f.relator
                },
                min_genus: 2,
                expect_pi1: Expectation::Skip,
                expect_sp: Expectation::Holds,
            });
        }
    }
    // The full twist is nontrivial in pi1 (it is boundary conjugation).
    let delta = cat
        .parse_word(&format!("(w0 dg)^{}", 2 * genus + 2))
        .map_err(CatalogError::from)?;
    items.push(SuiteItem {
        relator: Relator {
            id: "neg.delta".into(),
            lhs: delta,
            rhs: Word::identity(cat.alphabet()),
            tag: "S5".into(),
        },
        min_genus: 2,
        expect_pi1: Expectation::Fails,
        expect_sp: Expectation::Skip,
    });
    Ok(items)
}

fn skipped(reason: &str) -> Status {
    Status::Skipped(reason.into())
}

fn aut_status(e: &AutError) -> Status {
    match e {
        AutError::Timeout => skipped("timeout"),
        other => skipped(&other.to_string()),
    }
}

/// Checks one relator in one representation. The budget applies to each
/// evaluation pass.
pub fn check_relator(
    table: &TwistTable,
    cat: &Catalog,
    rel: &Relator,
    rep: Rep,
    expected: Expectation,
    budget: Budget,
) -> CheckResult {
    let start = Instant::now();
    let done = |status: Status, witness: Option<Witness>| CheckResult {
        id: rel.id.clone(),
        tag: rel.tag.clone(),
        rep,
        status,
        elapsed: start.elapsed(),
        witness,
        expected,
    };
    if expected == Expectation::Skip {
        return done(skipped("not asserted in this representation"), None);
    }
    let (lhs, rhs) = match (cat.expand_word(&rel.lhs), cat.expand_word(&rel.rhs)) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => return done(skipped(&e.to_string()), None),
    };
    match rep {
        Rep::Pi1 => {
            let diff = match lhs.concat(&rhs.invert()) {
                Ok(d) => d,
                Err(e) => return done(skipped(&e.to_string()), None),
            };
            match table.evaluate_budget(&diff, budget) {
                Ok(endo) if endo.is_identity() => done(Status::Holds, None),
                Ok(_) => {
                    let witness = pi1_witness(table, &lhs, &rhs, budget);
                    done(Status::Fails, witness)
                }
                Err(e) => done(aut_status(&e), None),
            }
        }
        Rep::Sp => {
            let le = sp_of_word(table, &lhs);
            let re = sp_of_word(table, &rhs);
            match (le, re) {
                (Ok(lm), Ok(rm)) => {
                    if lm == rm {
                        done(Status::Holds, None)
                    } else {
                        done(Status::Fails, sp_witness(&lm, &rm))
                    }
                }
                (Err(e), _) | (_, Err(e)) => done(aut_status(&e), None),
            }
        }
    }
}

/// First basis letter where the two sides act differently.
fn pi1_witness(table: &TwistTable, lhs: &Word, rhs: &Word, budget: Budget) -> Option<Witness> {
    let le = table.evaluate_budget(lhs, budget).ok()?;
    let re = table.evaluate_budget(rhs, budget).ok()?;
    first_disagreement(&le, &re, table)
}

fn first_disagreement(le: &Endo, re: &Endo, table: &TwistTable) -> Option<Witness> {
    for i in 0..table.pi1_alphabet().rank() {
        if le.image(i) != re.image(i) {
            return Some(Witness {
                location: table.pi1_alphabet().name(i).to_string(),
                lhs: le.image(i).render(),
                rhs: re.image(i).render(),
            });
        }
    }
    None
}

/// First matrix cell where the two sides differ.
fn sp_witness(lm: &SympMatrix, rm: &SympMatrix) -> Option<Witness> {
    let n = lm.size();
    for p in 0..n {
        for q in 0..n {
            if lm.at(p, q) != rm.at(p, q) {
                return Some(Witness {
                    location: format!("({p},{q})"),
                    lhs: lm.at(p, q).to_string(),
                    rhs: rm.at(p, q).to_string(),
                });
            }
        }
    }
    None
}

/// Options for a suite run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub rep: RepChoice,
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    /// Cooperative per-relator deadline.
    pub timeout: Duration,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            rep: RepChoice::Both,
            jobs: 0,
            timeout: Duration::from_secs(60),
        }
    }
}

/// Runs the checks for one item. With both representations requested, the
/// homology check runs first; it is the cheap prefilter.
fn check_item(
    table: &TwistTable,
    cat: &Catalog,
    item: &SuiteItem,
    opts: &VerifyOptions,
) -> Vec<CheckResult> {
    let mut out = Vec::with_capacity(2);
    if matches!(opts.rep, RepChoice::Sp | RepChoice::Both) {
        out.push(check_relator(
            table,
            cat,
            &item.relator,
            Rep::Sp,
            item.expect_sp,
            Budget::until(Instant::now() + opts.timeout),
        ));
    }
    if matches!(opts.rep, RepChoice::Pi1 | RepChoice::Both) {
        out.push(check_relator(
            table,
            cat,
            &item.relator,
            Rep::Pi1,
            item.expect_pi1,
            Budget::until(Instant::now() + opts.timeout),
        ));
    }
    out
}

/// Verifies a whole suite. Results come back sorted by relator id with the
/// homology result (if any) before the fundamental-group result, regardless
/// of the number of worker threads.
pub fn check_suite(
    suite: &str,
    cat: &Catalog,
    table: &TwistTable,
    opts: &VerifyOptions,
) -> Result<Report, CatalogError> {
    let mut items = suite_items(suite, cat)?;
    items.sort_by(|a, b| a.relator.id.cmp(&b.relator.id));
    let run = || -> Vec<CheckResult> {
        items
            .par_iter()
            .flat_map_iter(|item| check_item(table, cat, item, opts))
            .collect()
    };
    let mut results = if opts.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool")
            .install(run)
    };
    results.sort_by(|a, b| {
        a.id.cmp(&b.id).then_with(|| rep_order(a.rep).cmp(&rep_order(b.rep)))
    });
    let mut report = Report::from_results(suite, cat.genus(), results);
    if suite == "negative" {
        let extra = delta_conjugation_control(cat, table, opts);
        for r in extra {
            match r.status {
                Status::Holds => report.counts.holds += 1,
                Status::Fails => report.counts.fails += 1,
                Status::Skipped(_) => report.counts.skipped += 1,
            }
            if !r.as_expected() {
                report.counts.unexpected += 1;
            }
            report.results.push(r);
        }
    }
    Ok(report)
}

fn rep_order(rep: Rep) -> u8 {
    match rep {
        Rep::Sp => 0,
        Rep::Pi1 => 1,
    }
}

/// The conjugation control: the full twist `(w0 dg)^(2g+2)` is not the
/// identity on the fundamental group, but it is exactly conjugation by the
/// boundary word.
fn delta_conjugation_control(
    cat: &Catalog,
    table: &TwistTable,
    opts: &VerifyOptions,
) -> Vec<CheckResult> {
    if matches!(opts.rep, RepChoice::Sp) {
        return Vec::new();
    }
    let start = Instant::now();
    let genus = cat.genus();
    let mk = |status: Status, witness: Option<Witness>, elapsed| CheckResult {
        id: "neg.delta.boundary".into(),
        tag: "S5".into(),
        rep: Rep::Pi1,
        status,
        elapsed,
        witness,
        expected: Expectation::Holds,
    };
    let delta = match cat
        .parse_word(&format!("(w0 dg)^{}", 2 * genus + 2))
        .map_err(CatalogError::from)
        .and_then(|w| cat.expand_word(&w))
    {
        Ok(w) => w,
        Err(e) => return vec![mk(skipped(&e.to_string()), None, start.elapsed())],
    };
    let budget = Budget::until(Instant::now() + opts.timeout);
    let endo = match table.evaluate_budget(&delta, budget) {
        Ok(e) => e,
        Err(e) => return vec![mk(aut_status(&e), None, start.elapsed())],
    };
    let conj = match Endo::conjugation_by(table.boundary()) {
        Ok(c) => c,
        Err(e) => return vec![mk(aut_status(&e), None, start.elapsed())],
    };
    if endo == conj && !endo.is_identity() {
        vec![mk(Status::Holds, None, start.elapsed())]
    } else {
        let witness = first_disagreement(&endo, &conj, table);
        vec![mk(Status::Fails, witness, start.elapsed())]
    }
}

/// Runs the negative controls at a genus with fresh catalog and table.
pub fn run_negative_controls(genus: usize, opts: &VerifyOptions) -> Result<Report, CatalogError> {
    let cat = Catalog::new(genus);
    let table = TwistTable::standard(genus);
    check_suite("negative", &cat, &table, opts)
}

/// One JSON object for a result.
pub fn result_json(r: &CheckResult) -> serde_json::Value {
    let mut obj = json!({
        "id": r.id,
        "tag": r.tag,
        "rep": r.rep.as_str(),
        "status": r.status.as_str(),
        "elapsed": r.elapsed.as_secs_f64(),
        "expected": match r.expected {
            Expectation::Holds => "holds",
            Expectation::Fails => "fails",
            Expectation::Skip => "skipped",
        },
    });
    if let Status::Skipped(reason) = &r.status {
        obj["reason"] = json!(reason);
    }
    if let Some(w) = &r.witness {
        obj["witness"] = json!({
            "location": w.location,
            "lhs": w.lhs,
            "rhs": w.rhs,
        });
    }
    obj
}

/// JSON-lines rendering: one object per result, a summary object last.
pub fn report_json_lines(report: &Report) -> String {
    let mut out = String::new();
    for r in &report.results {
        out.push_str(&result_json(r).to_string());
        out.push('\n');
    }
    let summary = json!({
        "summary": true,
        "suite": report.suite,
        "genus": report.genus,
        "holds": report.counts.holds,
        "fails": report.counts.fails,
        "skipped": report.counts.skipped,
        "unexpected": report.counts.unexpected,
    });
    out.push_str(&summary.to_string());
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    #[test]
    fn thm2_holds_in_both_representations() {
        let cat = Catalog::new(2);
        let table = TwistTable::standard(2);
        let report = check_suite("thm2", &cat, &table, &opts()).unwrap();
        assert!(report.all_expected(), "{:?}", report.counts);
        assert_eq!(report.counts.fails, 0);
        assert_eq!(report.results.len(), 2 * 11);
        // Deterministic ordering: ids ascend, sp before pi1.
        let ids: Vec<_> = report.results.iter().map(|r| (&r.id, r.rep)).collect();
        let mut sorted = ids.clone();
        sorted.sort_by(|a, b| a.0.cmp(b.0).then_with(|| rep_order(a.1).cmp(&rep_order(b.1))));
        assert_eq!(ids, sorted);
    }

    #[test]
    fn thm3_closed_relator_fails_pi1_holds_sp() {
        let cat = Catalog::new(2);
        let table = TwistTable::standard(2);
        let report = check_suite("thm3", &cat, &table, &opts()).unwrap();
        assert!(report.all_expected(), "{:?}", report.counts);
        let m4_pi1 = report
            .results
            .iter()
            .find(|r| r.id == "m4" && r.rep == Rep::Pi1)
            .unwrap();
        assert_eq!(m4_pi1.status, Status::Fails);
        let w = m4_pi1.witness.as_ref().expect("failing checks carry a witness");
        assert!(!w.location.is_empty());
        assert_ne!(w.lhs, w.rhs);
        let m4_sp = report
            .results
            .iter()
            .find(|r| r.id == "m4" && r.rep == Rep::Sp)
            .unwrap();
        assert_eq!(m4_sp.status, Status::Holds);
    }

    #[test]
    fn negative_controls_match_expectations() {
        for genus in [2usize, 3] {
            let report = run_negative_controls(genus, &opts()).unwrap();
            assert!(report.all_expected(), "genus {genus}: {:?}", report.counts);
            assert!(report
                .results
                .iter()
                .any(|r| r.id == "neg.delta.boundary" && r.status == Status::Holds));
        }
    }

    #[test]
    fn check_results_report_monotonicity() {
        // Anything that holds in pi1 must hold in homology; scan a mixed
        // corpus for violations.
        let cat = Catalog::new(2);
        let table = TwistTable::standard(2);
        for suite in ["thm3", "sec5", "lemma4"] {
            let report = check_suite(suite, &cat, &table, &opts()).unwrap();
            assert!(report.representation_bug().is_none(), "suite {suite}");
        }
    }

    #[test]
    fn parallel_runs_are_deterministic() {
        let cat = Catalog::new(2);
        let table = TwistTable::standard(2);
        let mut o1 = opts();
        o1.jobs = 1;
        let mut o4 = opts();
        o4.jobs = 4;
        let r1 = check_suite("H_stab", &cat, &table, &o1).unwrap();
        let r4 = check_suite("H_stab", &cat, &table, &o4).unwrap();
        let key = |r: &Report| {
            r.results
                .iter()
                .map(|c| (c.id.clone(), c.rep, c.status.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(key(&r1), key(&r4));
        assert!(r1.all_expected());
    }

    #[test]
    fn timeout_reports_skipped() {
        let cat = Catalog::new(2);
        let table = TwistTable::standard(2);
        let items = suite_items("thm2", &cat).unwrap();
        let result = check_relator(
            &table,
            &cat,
            &items[0].relator,
            Rep::Pi1,
            Expectation::Holds,
            Budget::until(Instant::now() - Duration::from_secs(1)),
        );
        assert_eq!(result.status, Status::Skipped("timeout".into()));
        assert!(!result.as_expected());
    }

    #[test]
    fn json_lines_shape() {
        let cat = Catalog::new(2);
        let table = TwistTable::standard(2);
        let report = check_suite("lantern", &cat, &table, &opts()).err();
        assert!(report.is_some(), "lantern needs genus 3");
        let cat3 = Catalog::new(3);
        let table3 = TwistTable::standard(3);
        let report = check_suite("lantern", &cat3, &table3, &opts()).unwrap();
        let text = report_json_lines(&report);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), report.results.len() + 1);
        for line in &lines {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.is_object());
        }
        let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
        assert_eq!(last["summary"], json!(true));
        assert_eq!(last["unexpected"], json!(0));
    }

    #[test]
    fn all_suite_prefixes_ids() {
        let cat = Catalog::new(2);
        let items = suite_items("all", &cat).unwrap();
        assert!(items.iter().any(|i| i.relator.id.starts_with("thm2/")));
        assert!(items.iter().all(|i| i.relator.id.contains('/')));
        // No thm1 or lantern at genus 2.
        assert!(!items.iter().any(|i| i.relator.id.starts_with("thm1/")));
        assert!(!items.iter().any(|i| i.relator.id.starts_with("lantern/")));
    }
}
