//! Coauthorship proximity networks from publication records.
//!
//! Nodes are authors. The proximity term of a group of authors is the share
//! of papers that the whole group coauthored:
//! `p(S) = #{records whose author set contains S} / #records`.
//! Papers with more than `K + 1` authors still count for all their subgroups
//! of size at most `K + 1`.

mod synth;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{HighOrderNetwork, NetworkClass};
use crate::scalar::Scalar;
use crate::validate::validate;

pub use synth::{synth_corpus, CorpusProfile};

/// Largest `epsilon` chosen in [`EpsilonMode::Auto`].
pub const AUTO_EPSILON_CAP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicationRecord {
    pub authors: Vec<String>,
    pub year: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

impl PublicationRecord {
    pub fn new<S: Into<String>>(authors: impl IntoIterator<Item = S>, year: i32) -> Self {
        PublicationRecord { authors: authors.into_iter().map(Into::into).collect(), year, id: None }
    }
}

/// Which records enter a network, and its order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusFilter {
    /// Inclusive year window; `None` leaves that side open.
    pub from_year: Option<i32>,
    pub to_year: Option<i32>,
    /// Keep only records listing this author.
    pub center: Option<String>,
    pub order: usize,
}

impl CorpusFilter {
    pub fn new(order: usize) -> Self {
        CorpusFilter { order, ..Default::default() }
    }

    pub fn years(mut self, from: i32, to: i32) -> Self {
        self.from_year = Some(from);
        self.to_year = Some(to);
        self
    }

    pub fn center(mut self, author: impl Into<String>) -> Self {
        self.center = Some(author.into());
        self
    }

    pub fn check(&self) -> Result<()> {
        match (self.from_year, self.to_year) {
            (Some(a), Some(b)) if a > b => Err(Error::InvalidYearRange(a, b)),
            _ => Ok(()),
        }
    }

    pub fn accepts(&self, record: &PublicationRecord) -> bool {
        self.from_year.is_none_or(|y| record.year >= y)
            && self.to_year.is_none_or(|y| record.year <= y)
            && self.center.as_ref().is_none_or(|c| record.authors.contains(c))
    }
}

/// How `epsilon` is chosen for a built network.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum EpsilonMode {
    /// `epsilon = 0`; the network is marked relaxed.
    #[default]
    Ignore,
    /// The largest admissible `epsilon`, capped at [`AUTO_EPSILON_CAP`].
    Auto,
    Value(f64),
}

impl fmt::Display for EpsilonMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsilonMode::Ignore => f.write_str("ignore"),
            EpsilonMode::Auto => f.write_str("auto"),
            EpsilonMode::Value(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for EpsilonMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ignore" => Ok(EpsilonMode::Ignore),
            "auto" => Ok(EpsilonMode::Auto),
            other => match other.parse::<f64>() {
                Ok(v) if v.is_finite() && v >= 0.0 => Ok(EpsilonMode::Value(v)),
                _ => Err(format!("expected ignore, auto or a nonnegative number, got {other:?}")),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuiltNetwork<T> {
    pub network: HighOrderNetwork<T>,
    pub records: usize,
    pub warnings: Vec<String>,
}

/// Number of records containing each author group of size `1..=max_size`,
/// keyed by node bitmask.
fn group_counts(records: &[&PublicationRecord], lookup: &HashMap<&str, usize>, max_size: usize) -> HashMap<u64, usize> {
    let mut counts = HashMap::new();
    for r in records {
        let members: Vec<usize> = r.authors.iter().map(|a| lookup[a.as_str()]).collect();
        let mut stack: Vec<(usize, u64, usize)> = vec![(0, 0, 0)];
        while let Some((start, mask, size)) = stack.pop() {
            if size > 0 {
                *counts.entry(mask).or_insert(0) += 1;
            }
            if size == max_size {
                continue;
            }
            for (i, &m) in members.iter().enumerate().skip(start) {
                if mask & (1 << m) == 0 {
                    stack.push((i + 1, mask | 1 << m, size + 1));
                }
            }
        }
    }
    counts
}

pub fn build_proximity_network<T: Scalar>(
    records: &[PublicationRecord],
    filter: &CorpusFilter,
    mode: EpsilonMode,
) -> Result<BuiltNetwork<T>> {
    filter.check()?;
    let kept: Vec<&PublicationRecord> = records.iter().filter(|r| filter.accepts(r)).collect();
    if kept.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let authors: BTreeSet<&str> = kept.iter().flat_map(|r| r.authors.iter().map(String::as_str)).collect();
    let lookup: HashMap<&str, usize> = authors.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let labels: Vec<&str> = authors.into_iter().collect();
    let max_size = (filter.order + 1).min(labels.len());
    let counts = group_counts(&kept, &lookup, max_size);
    let total = kept.len() as i64;
    let share = |mask: u64| T::ratio(counts.get(&mask).copied().unwrap_or(0) as i64, total);

    let mut warnings = Vec::new();
    let mut relaxed = false;
    let epsilon = match mode {
        EpsilonMode::Ignore => {
            relaxed = true;
            T::zero()
        }
        EpsilonMode::Value(v) => {
            relaxed = v == 0.0;
            T::from_f64(v).ok_or(Error::NonPositiveEpsilon(v))?
        }
        EpsilonMode::Auto => {
            let n = labels.len();
            let min_count = (1..=max_size)
                .flat_map(|s| crate::network::combinations(n, s))
                .map(|m| counts.get(&m).copied().unwrap_or(0))
                .min()
                .unwrap_or(0);
            if min_count == 0 {
                warnings.push(
                    "some author group never publishes together, so no positive epsilon is admissible; using epsilon = 0 (relaxed)"
                        .to_string(),
                );
                relaxed = true;
                T::zero()
            } else {
                let min_share = T::ratio(min_count as i64, total);
                let bound = min_share / T::from_count(filter.order.max(1));
                let nonnegative = min_share / T::from_count(max_size);
                let cap = T::from_f64(AUTO_EPSILON_CAP).expect("cap representable");
                bound.min_of(nonnegative).min_of(cap)
            }
        }
    };

    let network = HighOrderNetwork::from_fn(labels, filter.order, NetworkClass::Proximity { epsilon }, |key| {
        share(key.mask()) - epsilon * T::from_count(key.len())
    })?
    .with_relaxed(relaxed);

    let report = validate(&network)?;
    if !report.ok {
        let v = &report.violations[0];
        return Err(Error::InvalidNetwork(format!("{} at {:?}: {}", v.axiom, v.keys, v.expected)));
    }
    Ok(BuiltNetwork { network, records: kept.len(), warnings })
}

/// Records plus non-fatal notes gathered while reading a corpus.
#[derive(Clone, Debug, Default)]
pub struct ParsedCorpus {
    pub records: Vec<PublicationRecord>,
    pub warnings: Vec<String>,
}

/// Parses JSON-lines records; blank lines are skipped. Every malformed line
/// is reported, with its 1-based line number, in a single error.
pub fn parse_publications_str(text: &str, source: &Path) -> Result<ParsedCorpus> {
    let mut out = ParsedCorpus::default();
    let mut bad = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut record: PublicationRecord = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(e) => {
                bad.push((n, e.to_string()));
                continue;
            }
        };
        if record.authors.is_empty() {
            bad.push((n, "empty author list".into()));
            continue;
        }
        if record.authors.iter().any(|a| a.trim().is_empty()) {
            bad.push((n, "empty author name".into()));
            continue;
        }
        let mut seen = BTreeSet::new();
        let before = record.authors.len();
        record.authors.retain(|a| seen.insert(a.clone()));
        if record.authors.len() != before {
            out.warnings.push(format!("line {n}: duplicate author removed"));
        }
        out.records.push(record);
    }
    if bad.is_empty() {
        Ok(out)
    } else {
        Err(Error::MalformedRecords { path: source.to_path_buf(), lines: bad })
    }
}

pub fn parse_publications(path: impl AsRef<Path>) -> Result<ParsedCorpus> {
    let path = path.as_ref();
    parse_publications_str(&crate::io::read_file(path)?, path)
}

/// One JSON object per line.
pub fn publications_to_jsonl(records: &[PublicationRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

/// Shares of papers per author, for profile checks.
pub fn author_shares(records: &[PublicationRecord]) -> Vec<(String, f64)> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for r in records {
        for a in &r.authors {
            *counts.entry(a).or_default() += 1;
        }
    }
    let total = records.len().max(1) as f64;
    let mut out: Vec<(String, f64)> = counts.into_iter().map(|(a, c)| (a.to_string(), c as f64 / total)).collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    #[test]
    fn coauthor_corpus_reproduces_terms() {
        let built = build_proximity_network::<Rational>(
            &fixtures::coauthor_corpus(),
            &CorpusFilter::new(2),
            EpsilonMode::Ignore,
        )
        .unwrap();
        let expected = fixtures::coauthor_proximity(Rational::from_integer(0));
        assert_eq!(built.network.labels(), expected.labels());
        for key in expected.keys() {
            assert_eq!(built.network.value(&key), expected.value(&key), "{key}");
        }
        assert!(built.network.relaxed());
        assert!(validate(&built.network).unwrap().ok);
    }

    #[test]
    fn single_author_single_record() {
        let records = vec![PublicationRecord::new(["solo"], 2001)];
        let built = build_proximity_network::<f64>(&records, &CorpusFilter::new(2), EpsilonMode::Ignore).unwrap();
        assert_eq!(built.network.node_count(), 1);
        assert_eq!(built.network.value_by_labels(&["solo"]).unwrap(), 1.0);
    }

    #[test]
    fn counts_match_naive_recount() {
        let records = synth_corpus(&CorpusProfile::gg_like(), 4).unwrap();
        let built = build_proximity_network::<f64>(&records, &CorpusFilter::new(3), EpsilonMode::Ignore).unwrap();
        let net = &built.network;
        for key in net.keys() {
            let group = net.key_labels(&key);
            let naive = records.iter().filter(|r| group.iter().all(|a| r.authors.contains(a))).count();
            assert_eq!(net.value(&key).unwrap(), naive as f64 / records.len() as f64);
        }
    }

    #[test]
    fn center_filter_gives_unit_center() {
        let mut records = fixtures::coauthor_corpus();
        records.push(PublicationRecord::new(["E", "F"], 2003));
        let filter = CorpusFilter::new(1).center("B");
        let built = build_proximity_network::<f64>(&records, &filter, EpsilonMode::Ignore).unwrap();
        assert_eq!(built.records, 9);
        assert_eq!(built.network.value_by_labels(&["B"]).unwrap(), 1.0);
        assert!(built.network.index_of("E").is_none());
    }

    #[test]
    fn year_window_and_empty_corpus() {
        let records = fixtures::coauthor_corpus();
        let built =
            build_proximity_network::<f64>(&records, &CorpusFilter::new(1).years(2000, 2004), EpsilonMode::Ignore)
                .unwrap();
        assert_eq!(built.records, 5);
        let empty =
            build_proximity_network::<f64>(&records, &CorpusFilter::new(1).years(1990, 1995), EpsilonMode::Ignore);
        assert!(matches!(empty, Err(Error::EmptyCorpus)));
        let reversed =
            build_proximity_network::<f64>(&records, &CorpusFilter::new(1).years(2005, 2000), EpsilonMode::Ignore);
        assert!(matches!(reversed, Err(Error::InvalidYearRange(..))));
    }

    #[test]
    fn auto_epsilon() {
        // C and D never coauthor: no positive epsilon is admissible
        let built =
            build_proximity_network::<f64>(&fixtures::coauthor_corpus(), &CorpusFilter::new(2), EpsilonMode::Auto)
                .unwrap();
        assert_eq!(built.network.epsilon(), Some(0.0));
        assert!(built.network.relaxed());
        assert_eq!(built.warnings.len(), 1);

        let records = vec![PublicationRecord::new(["a", "b"], 2000), PublicationRecord::new(["a"], 2001)];
        let built = build_proximity_network::<f64>(&records, &CorpusFilter::new(1), EpsilonMode::Auto).unwrap();
        assert_eq!(built.network.epsilon(), Some(AUTO_EPSILON_CAP));
        assert!(!built.network.relaxed());
        assert!(validate(&built.network).unwrap().ok);
    }

    #[test]
    fn explicit_epsilon_out_of_bound_is_rejected() {
        let records = vec![PublicationRecord::new(["a", "b"], 2000), PublicationRecord::new(["a"], 2001)];
        let ok = build_proximity_network::<f64>(&records, &CorpusFilter::new(1), EpsilonMode::Value(0.1)).unwrap();
        assert_eq!(ok.network.value_by_labels(&["a", "b"]).unwrap(), 0.5 - 0.2);
        let bad = build_proximity_network::<f64>(&records, &CorpusFilter::new(1), EpsilonMode::Value(0.4));
        assert!(matches!(bad, Err(Error::InvalidNetwork(_))));
    }

    #[test]
    fn parsing() {
        let text = "{\"authors\":[\"A\",\"B\"],\"year\":2005}\n\n{\"authors\":[\"A\",\"A\",\"C\"],\"year\":2006,\"id\":\"x\"}\n";
        let parsed = parse_publications_str(text, Path::new("t.jsonl")).unwrap();
        assert_eq!(parsed.records.len(), 2);
        assert_eq!(parsed.records[1].authors, vec!["A", "C"]);
        assert_eq!(parsed.warnings.len(), 1);

        let bad = "{\"authors\":[],\"year\":1}\nnot json\n{\"authors\":[\"A\"],\"year\":2}\n";
        match parse_publications_str(bad, Path::new("b.jsonl")) {
            Err(Error::MalformedRecords { lines, .. }) => {
                assert_eq!(lines.iter().map(|l| l.0).collect::<Vec<_>>(), vec![1, 2]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jsonl_roundtrip() {
        let records = fixtures::coauthor_corpus();
        let text = publications_to_jsonl(&records);
        assert_eq!(text.lines().count(), 19);
        assert_eq!(parse_publications_str(&text, Path::new("c")).unwrap().records, records);
    }

    #[test]
    fn epsilon_mode_parsing() {
        assert_eq!("auto".parse::<EpsilonMode>().unwrap(), EpsilonMode::Auto);
        assert_eq!("0.01".parse::<EpsilonMode>().unwrap(), EpsilonMode::Value(0.01));
        assert!("-1".parse::<EpsilonMode>().is_err());
    }
}
