//! Seeded random networks for tests and benchmarks.
//!
//! Values are built on an integer grid and converted with [`Scalar::ratio`],
//! so the same seed yields the same network, exactly, for every scalar type.
//! Classed networks satisfy their validator by construction.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::network::{combinations, HighOrderNetwork, NetworkClass};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    General,
    Dissimilarity,
    Proximity,
}

/// Integer table over all subsets of size `1..=max_size`, built size by size
/// from the facets already drawn.
fn grid(
    n: usize,
    max_size: usize,
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng, Option<(i64, i64)>) -> i64,
) -> HashMap<u64, i64> {
    let mut table = HashMap::new();
    for size in 1..=max_size {
        for mask in combinations(n, size) {
            let facets = (size > 1).then(|| {
                let vals = crate::network::bits(mask).map(|i| table[&(mask & !(1u64 << i))]);
                vals.fold((i64::MAX, i64::MIN), |(lo, hi), v: i64| (lo.min(v), hi.max(v)))
            });
            let v = draw(rng, facets);
            table.insert(mask, v);
        }
    }
    table
}

/// Random complete network on `n` nodes labelled `n0`, `n1`, ...
pub fn random_network<T: Scalar>(n: usize, order: usize, kind: ClassKind, seed: u64) -> HighOrderNetwork<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let max_size = (order + 1).min(n);
    let build = |class: NetworkClass<T>, f: &dyn Fn(u64, usize) -> T| {
        HighOrderNetwork::from_fn(labels.clone(), order, class, |key| f(key.mask(), key.len()))
            .expect("generated network has valid shape")
    };
    match kind {
        ClassKind::General => {
            let table = grid(n, max_size, &mut rng, |rng, _| rng.random_range(0..=100));
            build(NetworkClass::General, &|m, _| T::ratio(table[&m], 100))
        }
        ClassKind::Dissimilarity => {
            let table = grid(n, max_size, &mut rng, |rng, facets| match facets {
                None => rng.random_range(0..=6),
                Some((_, hi)) => hi + rng.random_range(0..=3),
            });
            let top = table.values().copied().max().unwrap_or(0);
            let den = 2 * top + 2;
            let j = rng.random_range(1..=10);
            let eps = T::ratio(j, 20 * (order as i64 + 1));
            build(NetworkClass::Dissimilarity { epsilon: eps }, &|m, len| {
                T::ratio(table[&m], den) + eps * T::from_count(len)
            })
        }
        ClassKind::Proximity => {
            let table = grid(n, max_size, &mut rng, |rng, facets| match facets {
                None => rng.random_range(1..=12),
                Some((lo, _)) => (lo - rng.random_range(0..=4)).max(1),
            });
            let top = table.values().copied().max().unwrap_or(1);
            let low = table.values().copied().min().unwrap_or(1);
            let den = top + rng.random_range(0..=2);
            let j = rng.random_range(1..=10);
            let eps = T::ratio(low * j, 10 * den * (order as i64 + 1));
            build(NetworkClass::Proximity { epsilon: eps }, &|m, len| {
                T::ratio(table[&m], den) - eps * T::from_count(len)
            })
        }
    }
}
