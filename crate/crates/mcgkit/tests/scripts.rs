//! The shipped derivation scripts replay, end where they claim, stay
//! sound step by step, and match the relator corpus they document.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use mcgkit::autfree::TwistTable;
use mcgkit::catalog::{m_generators, Catalog};
use mcgkit::rewrite::{parse_script, replay_states, search, RuleSet, SearchConfig};
use mcgkit::word::{Alphabet, Word};

fn script_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/scripts")
}

fn chain_abc() -> Arc<Alphabet> {
    Alphabet::new(m_generators(3))
}

/// Maps each script to the catalog relator it documents.
const SHIPPED: &[(&str, &str)] = &[
    ("j1", "lemma4.j1"),
    ("j2", "lemma4.j2a"),
    ("a6", "sec4.10a"),
    ("l4iv", "lemma4.iv"),
    ("thirty_a", "sec4.30.chain_a"),
    ("thirty_b", "sec4.30.chain_b"),
];

fn corpus_sides(cat: &Catalog, id: &str) -> (Word, Word) {
    let mut fixtures = cat.fixture_relations("sec4").unwrap();
    fixtures.extend(cat.fixture_relations("lemma4").unwrap());
    let f = fixtures
        .into_iter()
        .find(|f| f.relator.id == id)
        .unwrap_or_else(|| panic!("no fixture `{id}`"));
    (
        cat.expand_word(&f.relator.lhs).unwrap(),
        cat.expand_word(&f.relator.rhs).unwrap(),
    )
}

#[test]
fn shipped_scripts_replay_and_stay_sound() {
    let abc = chain_abc();
    let cat = Catalog::new(3);
    let rules = RuleSet::from_m1(3);
    let table = TwistTable::standard(3);
    for (name, relator_id) in SHIPPED {
        let text = fs::read_to_string(script_dir().join(format!("{name}.txt")))
            .unwrap_or_else(|e| panic!("missing script `{name}`: {e}"));
        let script = parse_script(&abc, &text).unwrap();
        let states =
            replay_states(&rules, &script).unwrap_or_else(|e| panic!("{name}: {e}"));

        // The script documents exactly the expanded relator sides.
        let (lhs, rhs) = corpus_sides(&cat, relator_id);
        assert_eq!(script.start.render(), lhs.render(), "{name} start");
        assert_eq!(script.end.render(), rhs.render(), "{name} end");

        // Every intermediate state acts as the same mapping class.
        let reference = table.evaluate_word(&script.start).unwrap();
        for (i, raw) in states.iter().enumerate() {
            let w = Word::from_codes(&abc, raw.clone()).unwrap();
            let img = table.evaluate_word(&w).unwrap();
            assert!(img == reference, "{name}: state {i} changed the element");
        }
    }
}

#[test]
fn search_rediscovers_the_short_examples() {
    let abc = chain_abc();
    let rules = RuleSet::from_m1(3);
    for name in ["j1", "j2"] {
        let text = fs::read_to_string(script_dir().join(format!("{name}.txt"))).unwrap();
        let script = parse_script(&abc, &text).unwrap();
        let found = search(&rules, &script.start, &script.end, &SearchConfig::default())
            .unwrap_or_else(|| panic!("{name}: no derivation found"));
        assert!(found.steps.len() <= 20, "{name}: too many steps");
    }
}

#[test]
fn replay_is_deterministic() {
    let abc = chain_abc();
    let rules = RuleSet::from_m1(3);
    let text = fs::read_to_string(script_dir().join("l4iv.txt")).unwrap();
    let script = parse_script(&abc, &text).unwrap();
    let a = replay_states(&rules, &script).unwrap();
    let b = replay_states(&rules, &script).unwrap();
    assert_eq!(a, b);
}
