//! Small hand-built networks used throughout the tests and the CLI examples.
//!
//! Node and edge values follow the worked coauthorship examples: four
//! authors `A`..`D`, order 2. Relations between `C` and `D` (who never
//! write together) carry the boundary terms that keep the networks in
//! their class for small `epsilon`.

use crate::network::{HighOrderNetwork, NetworkClass, TupleKey};
use crate::scalar::Scalar;

const AUTHORS: [&str; 4] = ["A", "B", "C", "D"];

/// Three nodes, order 1, every relationship equal to 1.
pub fn uniform_triangle<T: Scalar>() -> HighOrderNetwork<T> {
    HighOrderNetwork::from_fn(["x1", "x2", "x3"], 1, NetworkClass::General, |_| T::one()).expect("valid fixture")
}

/// Two nodes, order 1, every relationship equal to 1.
pub fn uniform_edge<T: Scalar>() -> HighOrderNetwork<T> {
    HighOrderNetwork::from_fn(["y1", "y2"], 1, NetworkClass::General, |_| T::one()).expect("valid fixture")
}

fn key_name(key: &TupleKey) -> String {
    key.indices().iter().map(|&i| AUTHORS[i]).collect()
}

/// Dissimilarity term (in ninths of the observation window) of the
/// community formation example: first joint paper of each group.
fn formation_term<T: Scalar>(key: &TupleKey, eps: T) -> T {
    let ninths = |n: i64| T::ratio(n, 9);
    let never = T::one() - T::from_count(3) * eps;
    match key_name(key).as_str() {
        "A" => ninths(0),
        "B" => ninths(1),
        "C" => ninths(5),
        "D" => ninths(3),
        "AB" => ninths(2),
        "AC" => ninths(5),
        "AD" | "BD" | "ABD" => ninths(4),
        "BC" => ninths(7),
        "ABC" => ninths(8),
        "CD" | "ACD" | "BCD" => never,
        other => unreachable!("no key {other}"),
    }
}

/// Proximity term (fraction of 19 papers) of the coauthorship example.
fn collaboration_term<T: Scalar>(key: &TupleKey, eps: T) -> T {
    let papers = |n: i64| T::ratio(n, 19);
    match key_name(key).as_str() {
        "A" => papers(11),
        "B" => papers(9),
        "C" => papers(2),
        "D" => papers(5),
        "AB" => papers(4),
        "AC" | "AD" | "BD" | "ABD" => papers(2),
        "BC" | "ABC" => papers(1),
        "CD" | "ACD" | "BCD" => T::from_count(3) * eps,
        other => unreachable!("no key {other}"),
    }
}

/// Order-2 dissimilarity network of a research community's formation:
/// value = normalized time of the group's first joint paper + `eps * rank`.
pub fn community_formation<T: Scalar>(eps: T) -> HighOrderNetwork<T> {
    HighOrderNetwork::from_fn(AUTHORS, 2, NetworkClass::Dissimilarity { epsilon: eps }, |key| {
        formation_term(key, eps) + eps * T::from_count(key.len())
    })
    .expect("valid fixture")
}

/// Order-2 proximity network of 19 papers by authors `A`..`D`:
/// value = fraction of papers coauthored by the group - `eps * rank`.
pub fn coauthor_proximity<T: Scalar>(eps: T) -> HighOrderNetwork<T> {
    HighOrderNetwork::from_fn(AUTHORS, 2, NetworkClass::Proximity { epsilon: eps }, |key| {
        collaboration_term(key, eps) - eps * T::from_count(key.len())
    })
    .expect("valid fixture")
}

/// Publication records whose coauthorship counts reproduce
/// [`coauthor_proximity`] with `eps = 0`.
pub fn coauthor_corpus() -> Vec<crate::ingest::PublicationRecord> {
    let mut groups: Vec<(&[&str], usize)> = vec![
        (&["A", "B", "D"], 2),
        (&["A", "B", "C"], 1),
        (&["A", "B"], 1),
        (&["A", "C"], 1),
        (&["A"], 6),
        (&["B"], 5),
        (&["D"], 3),
    ];
    let mut out = Vec::new();
    let mut year = 2000;
    for (authors, count) in groups.drain(..) {
        for _ in 0..count {
            out.push(crate::ingest::PublicationRecord {
                authors: authors.iter().map(|a| a.to_string()).collect(),
                year,
                id: Some(format!("p{}", out.len() + 1)),
            });
            year += 1;
        }
    }
    out
}
