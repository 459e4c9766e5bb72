//! Synthetic single-author corpora.
//!
//! A profile describes one central author and a small pool of coauthors.
//! Each paper is solo with probability `solo_rate`; otherwise its first
//! coauthor is the predominant one with probability `concentration` and
//! uniform over the pool otherwise. Further coauthors come from the first
//! coauthor's community with probability `community_strength`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PublicationRecord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusProfile {
    pub center: String,
    pub papers: usize,
    pub coauthors: usize,
    /// Probability that the first coauthor is the predominant one.
    pub concentration: f64,
    /// Coauthors are split round-robin into this many communities.
    pub communities: usize,
    pub community_strength: f64,
    pub solo_rate: f64,
    /// Probability of a paper with three coauthors.
    pub large_rate: f64,
    /// Probability of a second coauthor on a non-large paper.
    pub pair_rate: f64,
    pub first_year: i32,
    pub last_year: i32,
}

impl CorpusProfile {
    /// Several coauthors of similar weight, two communities.
    pub fn gg_like() -> Self {
        CorpusProfile {
            center: "GG".into(),
            papers: 240,
            coauthors: 5,
            concentration: 0.0,
            communities: 2,
            community_strength: 0.8,
            solo_rate: 0.25,
            large_rate: 0.05,
            pair_rate: 0.3,
            first_year: 2004,
            last_year: 2013,
        }
    }

    /// One predominant coauthor.
    pub fn mv_like() -> Self {
        CorpusProfile {
            center: "MV".into(),
            papers: 240,
            coauthors: 5,
            concentration: 0.65,
            communities: 1,
            community_strength: 0.5,
            solo_rate: 0.15,
            large_rate: 0.03,
            pair_rate: 0.2,
            first_year: 2004,
            last_year: 2013,
        }
    }

    pub fn check(&self) -> Result<()> {
        let prob = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidProfile(format!("{name} = {v} is not a probability")))
            }
        };
        if self.papers == 0 {
            return Err(Error::InvalidProfile("zero papers requested".into()));
        }
        if self.coauthors == 0 || self.coauthors > 63 {
            return Err(Error::InvalidProfile(format!("coauthors = {} (expected 1..=63)", self.coauthors)));
        }
        if self.communities == 0 || self.communities > self.coauthors {
            return Err(Error::InvalidProfile(format!("communities = {} (expected 1..=coauthors)", self.communities)));
        }
        if self.first_year > self.last_year {
            return Err(Error::InvalidYearRange(self.first_year, self.last_year));
        }
        prob("concentration", self.concentration)?;
        prob("community_strength", self.community_strength)?;
        prob("solo_rate", self.solo_rate)?;
        prob("large_rate", self.large_rate)?;
        prob("pair_rate", self.pair_rate)
    }

    fn coauthor_name(&self, i: usize) -> String {
        format!("{}-c{}", self.center, i + 1)
    }
}

pub fn synth_corpus(profile: &CorpusProfile, seed: u64) -> Result<Vec<PublicationRecord>> {
    profile.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = profile.coauthors;
    let community = |i: usize| i % profile.communities;
    let mut out = Vec::with_capacity(profile.papers);
    for n in 0..profile.papers {
        let year = rng.random_range(profile.first_year..=profile.last_year);
        let mut members: Vec<usize> = Vec::new();
        if !rng.random_bool(profile.solo_rate) {
            let first = if rng.random_bool(profile.concentration) { 0 } else { rng.random_range(0..pool) };
            members.push(first);
            let extra =
                if rng.random_bool(profile.large_rate) { 2 } else { usize::from(rng.random_bool(profile.pair_rate)) };
            for _ in 0..extra.min(pool - 1) {
                let same: Vec<usize> =
                    (0..pool).filter(|&c| community(c) == community(first) && !members.contains(&c)).collect();
                let pick = if !same.is_empty() && rng.random_bool(profile.community_strength) {
                    same[rng.random_range(0..same.len())]
                } else {
                    let rest: Vec<usize> = (0..pool).filter(|c| !members.contains(c)).collect();
                    rest[rng.random_range(0..rest.len())]
                };
                members.push(pick);
            }
        }
        let mut authors = vec![profile.center.clone()];
        authors.extend(members.iter().map(|&c| profile.coauthor_name(c)));
        out.push(PublicationRecord { authors, year, id: Some(format!("{}-{}", profile.center, n + 1)) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::author_shares;

    fn coauthor_shares(profile: &CorpusProfile, seed: u64) -> Vec<f64> {
        let records = synth_corpus(profile, seed).unwrap();
        author_shares(&records).into_iter().filter(|(a, _)| *a != profile.center).map(|(_, s)| s).collect()
    }

    #[test]
    fn gg_like_contract() {
        for seed in 0..20 {
            let shares = coauthor_shares(&CorpusProfile::gg_like(), seed);
            assert!(shares.iter().filter(|&&s| s >= 0.1).count() >= 3, "seed {seed}: {shares:?}");
            assert!(shares.iter().all(|&s| s < 0.3), "seed {seed}: {shares:?}");
        }
    }

    #[test]
    fn mv_like_contract() {
        for seed in 0..20 {
            let shares = coauthor_shares(&CorpusProfile::mv_like(), seed);
            assert!(shares[0] >= 0.4, "seed {seed}: {shares:?}");
        }
    }

    #[test]
    fn deterministic_and_well_formed() {
        let p = CorpusProfile::gg_like();
        let a = synth_corpus(&p, 7).unwrap();
        assert_eq!(a, synth_corpus(&p, 7).unwrap());
        assert_ne!(a, synth_corpus(&p, 8).unwrap());
        assert_eq!(a.len(), p.papers);
        for r in &a {
            assert_eq!(r.authors[0], "GG");
            assert!(r.authors.len() <= 4);
            let mut sorted = r.authors.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), r.authors.len());
            assert!((2004..=2013).contains(&r.year));
        }
        let four = a.iter().filter(|r| r.authors.len() == 4).count();
        assert!(four * 5 < a.len());
    }

    #[test]
    fn invalid_profiles() {
        let zero = CorpusProfile { papers: 0, ..CorpusProfile::gg_like() };
        assert!(matches!(synth_corpus(&zero, 0), Err(Error::InvalidProfile(_))));
        let bad = CorpusProfile { solo_rate: 1.5, ..CorpusProfile::mv_like() };
        assert!(bad.check().is_err());
    }
}
