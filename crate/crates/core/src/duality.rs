//! The duality map `v -> 1 - v` between proximity and dissimilarity networks.
//!
//! For a proximity network with `r(S) = p(S) - eps * |S|`, the dual value is
//! `1 - r(S) = (1 - p(S)) + eps * |S|`: a dissimilarity network with term
//! `d(S) = 1 - p(S)` and the same `eps`. Since `p` is non-increasing under
//! adding nodes, `d` is non-decreasing, and the map is its own inverse.
//! Differences `|r_X - r_Y|` are unchanged, so every distance is preserved.

use crate::distance::{distance_k, distance_pnorm, PNorm, Solver};
use crate::error::{Error, Result};
use crate::network::{HighOrderNetwork, NetworkClass};
use crate::scalar::Scalar;

pub fn dualize<T: Scalar>(net: &HighOrderNetwork<T>) -> Result<HighOrderNetwork<T>> {
    let class = match net.class() {
        NetworkClass::General => return Err(Error::DualityUndefined),
        NetworkClass::Dissimilarity { epsilon } => NetworkClass::Proximity { epsilon },
        NetworkClass::Proximity { epsilon } => NetworkClass::Dissimilarity { epsilon },
    };
    Ok(net.map_values(class, |v| T::one() - v))
}

/// One distance computed on both sides of the duality.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPair {
    /// `"k=<k>"` or `"p=<p>"`.
    pub label: String,
    pub original: f64,
    pub dual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport {
    pub entries: Vec<DualPair>,
    pub max_discrepancy: f64,
}

/// Computes `d^k` for every `k` and the 1-, 2- and infinity-norm distances
/// between `x` and `y`, and again between their duals.
pub fn check_duality_preservation<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    solver: Solver,
) -> Result<DualityReport> {
    let (dx, dy) = (dualize(x)?, dualize(y)?);
    let mut entries = Vec::new();
    for k in 0..=x.order().min(y.order()) {
        entries.push(DualPair {
            label: format!("k={k}"),
            original: distance_k(x, y, k, solver)?.value().as_f64(),
            dual: distance_k(&dx, &dy, k, solver)?.value().as_f64(),
        });
    }
    if x.order() == y.order() {
        for p in [PNorm::Finite(1.0), PNorm::Finite(2.0), PNorm::Infinity] {
            entries.push(DualPair {
                label: format!("p={p}"),
                original: distance_pnorm(x, y, p, solver)?.value().as_f64(),
                dual: distance_pnorm(&dx, &dy, p, solver)?.value().as_f64(),
            });
        }
    }
    let max_discrepancy = entries.iter().map(|e| (e.original - e.dual).abs()).fold(0.0, f64::max);
    Ok(DualityReport { entries, max_discrepancy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate::{random_network, ClassKind};
    use crate::validate::validate;
    use crate::Rational;

    #[test]
    fn coauthor_dual_values() {
        let eps = Rational::new(1, 100);
        let dual = dualize(&fixtures::coauthor_proximity(eps)).unwrap();
        assert_eq!(dual.class(), NetworkClass::Dissimilarity { epsilon: eps });
        let n = |a: i64| Rational::new(a, 19);
        let e = |c: i64| eps * Rational::from_integer(c);
        assert_eq!(dual.value_by_labels(&["A"]).unwrap(), n(8) + e(1));
        assert_eq!(dual.value_by_labels(&["A", "B"]).unwrap(), n(15) + e(2));
        assert_eq!(dual.value_by_labels(&["C", "D"]).unwrap(), Rational::from_integer(1) - e(1));
        assert!(validate(&dual).unwrap().ok);
    }

    #[test]
    fn involution() {
        let net = fixtures::coauthor_proximity(Rational::new(1, 100));
        assert_eq!(dualize(&dualize(&net).unwrap()).unwrap(), net);
        let float = fixtures::community_formation(0.01f64);
        let back = dualize(&dualize(&float).unwrap()).unwrap();
        for key in float.keys() {
            assert!((back.value(&key).unwrap() - float.value(&key).unwrap()).abs() <= 1e-15);
        }
    }

    #[test]
    fn random_proximity_dual_is_dissimilarity() {
        let net = random_network::<f64>(4, 2, ClassKind::Proximity, 3);
        let dual = dualize(&net).unwrap();
        assert!(matches!(dual.class(), NetworkClass::Dissimilarity { .. }));
        assert!(validate(&dual).unwrap().ok);
    }

    #[test]
    fn general_has_no_dual() {
        assert!(matches!(dualize(&fixtures::uniform_edge::<f64>()), Err(Error::DualityUndefined)));
    }

    #[test]
    fn preservation_on_random_pairs() {
        for seed in 0..50 {
            let x = random_network::<f64>(1 + seed as usize % 3, 2, ClassKind::Proximity, seed);
            let y = random_network::<f64>(1 + (seed as usize / 3) % 3, 2, ClassKind::Proximity, seed + 500);
            let report = check_duality_preservation(&x, &y, Solver::Exhaustive).unwrap();
            assert_eq!(report.entries.len(), 6);
            assert!(report.max_discrepancy <= 1e-9, "seed {seed}: {report:?}");
        }
        let x = fixtures::coauthor_proximity(0.01);
        let report = check_duality_preservation(&x, &x, Solver::BranchAndBound).unwrap();
        assert!(report.entries.iter().all(|e| e.original == 0.0 && e.dual == 0.0));
    }
}
