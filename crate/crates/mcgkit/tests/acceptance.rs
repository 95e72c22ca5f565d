//! Acceptance gate: one test per shipped guarantee, each asserting both
//! the mathematical content and its wall-clock budget. The tests take a
//! global lock so each budget is measured without interference from the
//! others; run with `--nocapture` to see the per-criterion timing lines.

use std::path::PathBuf;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mcgkit::autfree::{Budget, Endo, TwistTable};
use mcgkit::catalog::{Catalog, Expectation};
use mcgkit::farey::{random_closed_path, reduce_closed_path_traced, validate_certificate};
use mcgkit::rewrite::{parse_script, replay_states, search, RuleSet, SearchConfig};
use mcgkit::symplectic::sp_of_word;
use mcgkit::verifier::{
    check_relator, check_suite, run_negative_controls, Rep, RepChoice, Report,
    Status, VerifyOptions,
};
use mcgkit::word::{Alphabet, Word};

static GATE: Mutex<()> = Mutex::new(());

struct Criterion {
    name: &'static str,
    bound: Duration,
    start: Instant,
    _guard: std::sync::MutexGuard<'static, ()>,
}

impl Criterion {
    fn begin(name: &'static str, bound_secs: u64) -> Criterion {
        let guard = GATE.lock().unwrap_or_else(|e| e.into_inner());
        Criterion {
            name,
            bound: Duration::from_secs(bound_secs),
            start: Instant::now(),
            _guard: guard,
        }
    }

    fn finish(self) {
        let elapsed = self.start.elapsed();
        eprintln!(
            "{}: PASS in {:.2}s (bound {}s)",
            self.name,
            elapsed.as_secs_f64(),
            self.bound.as_secs()
        );
        assert!(
            elapsed < self.bound,
            "{} exceeded its time budget: {:.2}s >= {}s",
            self.name,
            elapsed.as_secs_f64(),
            self.bound.as_secs()
        );
    }
}

fn opts(rep: RepChoice) -> VerifyOptions {
    VerifyOptions {
        rep,
        jobs: 0,
        timeout: Duration::from_secs(120),
    }
}

/// Every result holds and matches its expectation.
fn assert_all_hold(report: &Report) {
    for r in &report.results {
        assert_eq!(
            r.status,
            Status::Holds,
            "{} [{}] in {}: {:?}",
            r.id,
            r.rep.as_str(),
            report.suite,
            r.witness
        );
    }
    assert!(report.all_expected());
    assert!(report.representation_bug().is_none());
}

fn budget() -> Budget {
    Budget::until(Instant::now() + Duration::from_secs(120))
}

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/scripts")
        .join(name)
}

#[test]
fn criterion_01_twist_tables_validate_through_genus_four() {
    let c = Criterion::begin("criterion 01 (twist tables g=1..4)", 1);
    for g in 1..=4 {
        TwistTable::standard(g)
            .validate()
            .unwrap_or_else(|e| panic!("genus {g}: {e}"));
    }
    c.finish();
}

#[test]
fn criterion_02_thm2_and_thm1_hold_exactly_in_both_representations() {
    let c = Criterion::begin("criterion 02 (thm2 g=2, thm1 g=3, pi1+sp)", 10);
    let cat2 = Catalog::new(2);
    let table2 = TwistTable::standard(2);
    let report = check_suite("thm2", &cat2, &table2, &opts(RepChoice::Both)).unwrap();
    assert_all_hold(&report);
    let cat3 = Catalog::new(3);
    let table3 = TwistTable::standard(3);
    let report = check_suite("thm1", &cat3, &table3, &opts(RepChoice::Both)).unwrap();
    assert_all_hold(&report);
    c.finish();
}

#[test]
fn criterion_03_full_stabilizer_presentation_holds_at_genus_three() {
    let c = Criterion::begin("criterion 03 (P1-P11 g=3, pi1)", 120);
    let cat = Catalog::new(3);
    let table = TwistTable::standard(3);
    let report = check_suite("G_full", &cat, &table, &opts(RepChoice::Pi1)).unwrap();
    assert_all_hold(&report);
    // Every relation family of the presentation is instantiated. Family
    // ids continue with a non-digit, so `p1` does not match `p10`.
    for n in 1..=11 {
        let prefix = format!("p{n}");
        assert!(
            report.results.iter().any(|r| {
                r.id.strip_prefix(&prefix).is_some_and(|rest| {
                    rest.chars().next().is_none_or(|c| !c.is_ascii_digit())
                })
            }),
            "no relator instance for family {prefix}"
        );
    }
    c.finish();
}

#[test]
fn criterion_04_pure_braid_relators_hold_over_all_index_pairs() {
    let c = Criterion::begin("criterion 04 (Q2 over 15 pairs g=3, pi1)", 30);
    let cat = Catalog::new(3);
    let table = TwistTable::standard(3);
    let report = check_suite("disk_holes", &cat, &table, &opts(RepChoice::Pi1)).unwrap();
    assert_all_hold(&report);
    assert!(report.results.iter().any(|r| r.id.starts_with("q2")));
    // All 15 index pairs participate in the pure-braid relations.
    let q2_text: String = mcgkit::verifier::suite_items("disk_holes", &cat)
        .unwrap()
        .iter()
        .filter(|it| it.relator.id.starts_with("q2"))
        .map(|it| format!("{} {} ", it.relator.lhs.render(), it.relator.rhs.render()))
        .collect();
    let indices = [-3i32, -2, -1, 1, 2, 3];
    let mut pairs = 0;
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            let label = format!("d({},{})", indices[a], indices[b]);
            assert!(
                q2_text.contains(&label),
                "pure-braid relators never mention {label}"
            );
            pairs += 1;
        }
    }
    assert_eq!(pairs, 15);
    c.finish();
}

#[test]
fn criterion_05_numbered_fixture_relations_hold_at_min_genus_and_genus_four() {
    let c = Criterion::begin("criterion 05 (numbered fixtures, pi1)", 300);
    // At the minimum genus of each fixture.
    for genus in 2..=4 {
        let cat = Catalog::new(genus);
        let table = TwistTable::standard(genus);
        for f in cat.fixture_relations("sec4").unwrap() {
            if f.min_genus != genus {
                continue;
            }
            assert_eq!(f.pi1, Expectation::Holds, "{}", f.relator.id);
            let r = check_relator(&table, &cat, &f.relator, Rep::Pi1, f.pi1, budget());
            assert_eq!(r.status, Status::Holds, "{} at genus {genus}: {:?}", r.id, r.witness);
        }
    }
    // The whole suite at genus four.
    let cat = Catalog::new(4);
    let table = TwistTable::standard(4);
    let report = check_suite("sec4", &cat, &table, &opts(RepChoice::Pi1)).unwrap();
    assert_all_hold(&report);
    // Coverage: every numbered relation from (4) to (30) appears.
    for n in 4..=30 {
        let prefix = format!("sec4.{n:02}");
        assert!(
            report.results.iter().any(|r| r.id.starts_with(&prefix)),
            "no fixture for numbered relation ({n})"
        );
    }
    for id in ["sec4.30.chain_a", "sec4.30.chain_b"] {
        assert!(report.results.iter().any(|r| r.id == id), "missing {id}");
    }
    c.finish();
}

#[test]
fn criterion_06_chain_identities_and_the_even_chain_conjugation() {
    let c = Criterion::begin("criterion 06 (chain identities g=2,3)", 30);
    // d_g (ws * d_g) equals the odd-chain power at both genera.
    for genus in 2..=3 {
        let cat = Catalog::new(genus);
        let table = TwistTable::standard(genus);
        let f = cat
            .fixture_relations("sec5")
            .unwrap()
            .into_iter()
            .find(|f| f.relator.id == "sec5.wsdg")
            .expect("chain identity fixture");
        let r = check_relator(&table, &cat, &f.relator, Rep::Pi1, f.pi1, budget());
        assert_eq!(r.status, Status::Holds, "genus {genus}: {:?}", r.witness);
    }
    // At genus two the sixth power of the even chain acts as conjugation
    // by the boundary, with one sign working for the whole identity.
    let cat = Catalog::new(2);
    let table = TwistTable::standard(2);
    let expr = cat
        .expand_word(&cat.parse_word("(a2 e1 a1 b1 d(1,2))^6").unwrap())
        .unwrap();
    let endo = table.evaluate_word(&expr).unwrap();
    let fwd = Endo::conjugation_by(table.boundary()).unwrap();
    let rev = Endo::conjugation_by(&table.boundary().invert()).unwrap();
    let matches = [endo == fwd, endo == rev];
    assert_eq!(
        matches.iter().filter(|m| **m).count(),
        1,
        "exactly one boundary orientation must match"
    );
    c.finish();
}

#[test]
fn criterion_07_negative_controls_separate_the_representations() {
    let c = Criterion::begin("criterion 07 (negative controls g=2,3)", 70);
    for genus in 2..=3 {
        let report = run_negative_controls(genus, &opts(RepChoice::Both)).unwrap();
        assert!(report.all_expected(), "genus {genus}: {:?}", report.counts);
        let m4_pi1 = report
            .results
            .iter()
            .find(|r| r.tag == "M4" && r.rep == Rep::Pi1)
            .expect("closed-surface control present");
        assert_eq!(m4_pi1.status, Status::Fails, "genus {genus}");
        let m4_sp = report
            .results
            .iter()
            .find(|r| r.tag == "M4" && r.rep == Rep::Sp)
            .expect("closed-surface control present");
        assert_eq!(m4_sp.status, Status::Holds, "genus {genus}");
        for r in &report.results {
            assert!(
                r.elapsed < Duration::from_secs(30),
                "{} took {:.2}s",
                r.id,
                r.elapsed.as_secs_f64()
            );
        }
    }
    // The boundary-twist expression abelianizes to the identity.
    let cat = Catalog::new(2);
    let table = TwistTable::standard(2);
    let f = cat
        .fixture_relations("sec5")
        .unwrap()
        .into_iter()
        .find(|f| f.relator.id == "sec5.deltaexpr")
        .expect("boundary expression fixture");
    let r = check_relator(&table, &cat, &f.relator, Rep::Sp, f.sp, budget());
    assert_eq!(r.status, Status::Holds, "{:?}", r.witness);
    assert!(r.elapsed < Duration::from_secs(30));
    c.finish();
}

#[test]
fn criterion_08_generating_set_change_and_alternative_presentations() {
    let c = Criterion::begin("criterion 08 (renaming + alternative presentations g=3)", 60);
    let cat = Catalog::new(3);
    let table = TwistTable::standard(3);
    let sec6 = check_suite("sec6", &cat, &table, &opts(RepChoice::Pi1)).unwrap();
    assert!(sec6.all_expected(), "{:?}", sec6.counts);
    for id in ["sec6.w(t1)", "sec6.w(t2)", "sec6.w(d12)"] {
        let r = sec6
            .results
            .iter()
            .find(|r| r.id == id)
            .unwrap_or_else(|| panic!("missing {id}"));
        assert_eq!(r.status, Status::Holds, "{id}: {:?}", r.witness);
    }
    let thm1p = check_suite("thm1p", &cat, &table, &opts(RepChoice::Pi1)).unwrap();
    assert_all_hold(&thm1p);
    for tag in ["A", "B", "C"] {
        assert!(thm1p.results.iter().any(|r| r.tag == tag), "no {tag} relator");
    }
    let thm3p = check_suite("thm3p", &cat, &table, &opts(RepChoice::Both)).unwrap();
    assert!(thm3p.all_expected(), "{:?}", thm3p.counts);
    let d_sp = thm3p
        .results
        .iter()
        .find(|r| r.tag == "D" && r.rep == Rep::Sp)
        .expect("closing commutator present");
    assert_eq!(d_sp.status, Status::Holds);
    let d_pi1 = thm3p
        .results
        .iter()
        .find(|r| r.tag == "D" && r.rep == Rep::Pi1)
        .expect("closing commutator present");
    assert_eq!(d_pi1.status, Status::Fails);
    c.finish();
}

#[test]
fn criterion_09_random_closed_paths_reduce_with_decreasing_measure() {
    let c = Criterion::begin("criterion 09 (1000 random Farey paths)", 30);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d63_676b);
    for round in 0..1000 {
        let walk = 2 + (round % 27);
        let path = random_closed_path(&mut rng, walk, 50);
        assert!(path.len() <= 40, "round {round}: length {}", path.len());
        assert!(path.is_closed());
        let (cert, trace) = reduce_closed_path_traced(&path)
            .unwrap_or_else(|e| panic!("round {round}: {path}: {e}"));
        assert!(
            validate_certificate(&path, &cert),
            "round {round}: certificate rejected for {path}"
        );
        assert!(
            trace.windows(2).all(|w| w[1] < w[0]),
            "round {round}: measure did not strictly decrease: {trace:?}"
        );
    }
    c.finish();
}

#[test]
fn criterion_10_shipped_scripts_replay_soundly_and_search_finds_the_short_ones() {
    let c = Criterion::begin("criterion 10 (derivation scripts)", 60);
    let cat = Catalog::new(3);
    let table = TwistTable::standard(3);
    let rules = RuleSet::from_m1(3);
    let abc = cat.alphabet();
    for name in ["l4iv.txt", "a6.txt", "j1.txt", "j2.txt", "thirty_a.txt", "thirty_b.txt"] {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let script = parse_script(abc, &text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let states = replay_states(&rules, &script).unwrap_or_else(|e| panic!("{name}: {e}"));
        // Soundness: every intermediate word acts identically.
        let reference = table
            .evaluate_word(&Word::from_codes(abc, states[0].clone()).unwrap())
            .unwrap();
        for (i, raw) in states.iter().enumerate().skip(1) {
            let w = Word::from_codes(abc, raw.clone()).unwrap();
            let endo = table.evaluate_word(&w).unwrap();
            assert_eq!(endo, reference, "{name}: step {i} changed the action");
        }
    }
    // The two short conjugation examples are refound within twenty steps.
    let cfg = SearchConfig::default();
    assert_eq!(cfg.max_steps, 20);
    for (lhs, rhs) in [
        ("(a1 b1) * a1", "b1"),
        ("a1 e1 a1 a2 e1 e2 a2", "e1 a1 a2 e1 e2 a2 e2"),
    ] {
        let lhs = cat.expand_word(&cat.parse_word(lhs).unwrap()).unwrap();
        let rhs = cat.expand_word(&cat.parse_word(rhs).unwrap()).unwrap();
        let script = search(&rules, &lhs, &rhs, &cfg)
            .unwrap_or_else(|| panic!("no derivation from {} to {}", lhs.render(), rhs.render()));
        assert!(script.steps.len() <= 20);
    }
    c.finish();
}

#[test]
fn criterion_11_property_suites_over_words_automorphisms_and_homology() {
    let c = Criterion::begin("criterion 11 (property suites)", 60);
    // Word engine: group laws and reduction idempotence.
    let abc = Alphabet::new((1..=4).flat_map(|i| [format!("g{i}"), format!("h{i}")]));
    let rank = abc.rank() as i32;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random_word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..=10);
        let codes: Vec<i32> = (0..len)
            .map(|_| {
                let c = rng.gen_range(1..=rank);
                if rng.gen_bool(0.5) {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Word::from_codes(&abc, codes).unwrap()
    };
    for case in 0..100_000 {
        let (u, v, w) = (
            random_word(&mut rng),
            random_word(&mut rng),
            random_word(&mut rng),
        );
        // No adjacent inverse pair survives construction.
        assert!(
            u.codes().windows(2).all(|p| p[0] != -p[1]),
            "case {case}: unreduced word"
        );
        assert_eq!(Word::from_codes(&abc, u.codes().to_vec()).unwrap(), u);
        let left = u.concat(&v).unwrap().concat(&w).unwrap();
        let right = u.concat(&v.concat(&w).unwrap()).unwrap();
        assert_eq!(left, right, "case {case}: associativity");
        assert!(u.concat(&u.invert()).unwrap().is_empty(), "case {case}");
        assert_eq!(u.invert().invert(), u, "case {case}");
        if case % 64 == 0 {
            assert_eq!(Word::parse(&abc, &u.render()).unwrap(), u);
        }
    }
    // Automorphism round-trips.
    let table = TwistTable::standard(2);
    let labels = table.labels().to_vec();
    let twist_abc = Alphabet::new(labels.iter().cloned());
    for case in 0..1000 {
        let len = rng.gen_range(1..=8);
        let codes: Vec<i32> = (0..len)
            .map(|_| {
                let c = rng.gen_range(1..=labels.len() as i32);
                if rng.gen_bool(0.5) {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let w = Word::from_codes(&twist_abc, codes).unwrap();
        let e = table.evaluate_word(&w).unwrap();
        let ei = table.evaluate_word(&w.invert()).unwrap();
        assert!(
            e.compose(&ei).unwrap().is_identity(),
            "case {case}: {} does not invert",
            w.render()
        );
        assert!(ei.compose(&e).unwrap().is_identity(), "case {case}");
    }
    // Homology compatibility over the whole relator corpus.
    let mut sides = 0usize;
    for genus in 2..=3 {
        let cat = Catalog::new(genus);
        let table = TwistTable::standard(genus);
        let items = mcgkit::verifier::suite_items("all", &cat).unwrap();
        for item in items {
            for side in [&item.relator.lhs, &item.relator.rhs] {
                let w = cat.expand_word(side).unwrap();
                let via_pi1 = table.evaluate_word(&w).unwrap().abelianize().unwrap();
                let direct = sp_of_word(&table, &w).unwrap();
                assert_eq!(via_pi1, direct, "{} (genus {genus})", item.relator.id);
                sides += 1;
            }
        }
    }
    assert!(sides > 400, "corpus unexpectedly small: {sides} sides");
    c.finish();
}
