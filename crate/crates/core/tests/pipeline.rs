use std::path::Path;

use hyperdist::distance::{distance_k, distance_matrix, Objective};
use hyperdist::embedding::{mds_embed, EmbedOptions};
use hyperdist::fixtures;
use hyperdist::ingest::{
    build_proximity_network, parse_publications, publications_to_jsonl, synth_corpus, CorpusFilter, CorpusProfile,
    EpsilonMode,
};
use hyperdist::io::{load_network, network_to_json, save_network, LabeledMatrix};
use hyperdist::validate::validate;
use hyperdist::{Network, Solver};
use proptest::prelude::*;

fn corpus_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/coauthor_corpus.jsonl")
}

#[test]
fn corpus_file_matches_builtin_records() {
    let parsed = parse_publications(corpus_path()).unwrap();
    assert_eq!(parsed.records, fixtures::coauthor_corpus());
    assert!(parsed.warnings.is_empty());
}

#[test]
fn built_network_survives_a_file_roundtrip() {
    let records = parse_publications(corpus_path()).unwrap().records;
    let built = build_proximity_network::<f64>(&records, &CorpusFilter::new(2), EpsilonMode::Ignore).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("net.json");
    save_network(&built.network, &path).unwrap();
    let back = load_network(&path).unwrap();
    assert_eq!(back, built.network);
    assert!(back.relaxed());
    assert!(validate(&back).unwrap().ok);
    assert_eq!(distance_k(&back, &built.network, 2, Solver::BranchAndBound).unwrap().value(), 0.0);
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let profile = CorpusProfile::mv_like();
    let a = synth_corpus(&profile, 5).unwrap();
    let b = synth_corpus(&profile, 5).unwrap();
    assert_eq!(publications_to_jsonl(&a), publications_to_jsonl(&b));
    let filter = CorpusFilter::new(2).years(2006, 2011);
    let na = build_proximity_network::<f64>(&a, &filter, EpsilonMode::Auto).unwrap().network;
    let nb = build_proximity_network::<f64>(&b, &filter, EpsilonMode::Auto).unwrap().network;
    assert_eq!(network_to_json(&na), network_to_json(&nb));
}

#[test]
fn center_author_has_unit_proximity() {
    for (profile, seed) in [(CorpusProfile::gg_like(), 1), (CorpusProfile::mv_like(), 2)] {
        let records = synth_corpus(&profile, seed).unwrap();
        let filter = CorpusFilter::new(2).center(profile.center.clone());
        let net = build_proximity_network::<f64>(&records, &filter, EpsilonMode::Ignore).unwrap().network;
        assert_eq!(net.value_by_labels(&[profile.center.as_str()]).unwrap(), 1.0);
    }
}

#[test]
fn end_to_end_on_two_windows() {
    let records = synth_corpus(&CorpusProfile::gg_like(), 9).unwrap();
    let windows = [(2004, 2008), (2009, 2013)];
    let nets: Vec<Network> = windows
        .iter()
        .map(|&(a, b)| {
            build_proximity_network(&records, &CorpusFilter::new(2).years(a, b), EpsilonMode::Ignore).unwrap().network
        })
        .collect();
    let matrix = distance_matrix(&nets, Objective::Order(1), Solver::BranchAndBound).unwrap();
    let m = LabeledMatrix { labels: vec!["early".into(), "late".into()], matrix };
    m.check().unwrap();
    let e = mds_embed(&m, &EmbedOptions::default()).unwrap();
    let gap = e.coords[0].iter().zip(&e.coords[1]).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    assert!((gap - m.matrix[0][1]).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn built_networks_are_valid_and_count_exactly(seed in any::<u32>(), mv in any::<bool>(), order in 0usize..=3) {
        let profile = if mv { CorpusProfile::mv_like() } else { CorpusProfile::gg_like() };
        let profile = CorpusProfile { papers: 40, ..profile };
        let records = synth_corpus(&profile, u64::from(seed)).unwrap();
        for mode in [EpsilonMode::Ignore, EpsilonMode::Auto] {
            let net = build_proximity_network::<f64>(&records, &CorpusFilter::new(order), mode).unwrap().network;
            prop_assert!(validate(&net).unwrap().ok);
            let eps = net.epsilon().unwrap();
            for key in net.keys() {
                let group = net.key_labels(&key);
                let count = records.iter().filter(|r| group.iter().all(|a| r.authors.contains(a))).count();
                let expected = count as f64 / records.len() as f64 - eps * key.len() as f64;
                prop_assert!((net.value(&key).unwrap() - expected).abs() < 1e-15);
            }
        }
    }
}
