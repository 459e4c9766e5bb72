//! Class validators.
//!
//! Symmetry and identity cannot fail: values are keyed by node sets. What
//! can fail is completeness of the table, the `[0, 1]` range, and for the
//! restricted classes the decomposition `value = term +/- epsilon * rank`:
//!
//! * dissimilarity: terms are `>= 0`, non-decreasing when a node is added,
//!   and `epsilon <= 1 - max term / K`;
//! * proximity: terms are `<= 1`, non-increasing when a node is added, and
//!   `epsilon <= min term / K`.
//!
//! For `K = 0` the bounds divide by 1 instead of `K`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::{HighOrderNetwork, NetworkClass, TupleKey};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    IncompleteTable,
    OutOfRange,
    NegativeDissimilarity,
    ProximityAboveOne,
    OrderIncreasing,
    OrderDecreasing,
    EpsilonBound,
    NonFinite,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::IncompleteTable => "incomplete table",
            Axiom::OutOfRange => "out of range",
            Axiom::NegativeDissimilarity => "negative dissimilarity",
            Axiom::ProximityAboveOne => "proximity above one",
            Axiom::OrderIncreasing => "order increasing",
            Axiom::OrderDecreasing => "order decreasing",
            Axiom::EpsilonBound => "epsilon bound",
            Axiom::NonFinite => "non-finite value",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub keys: Vec<Vec<String>>,
    pub observed: Vec<f64>,
    pub expected: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub class: String,
    pub violations: Vec<Violation>,
    /// Properties that hold by representation and are not checked value by value.
    pub structural: Vec<String>,
}

impl ValidationReport {
    fn new(class: &str) -> Self {
        ValidationReport {
            ok: true,
            class: class.to_string(),
            violations: Vec::new(),
            structural: vec!["symmetry".into(), "identity".into()],
        }
    }

    fn push(&mut self, v: Violation) {
        self.ok = false;
        self.violations.push(v);
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

/// Whether `epsilon = 0` is accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strictness {
    #[default]
    Strict,
    Relaxed,
}

fn check_epsilon<T: Scalar>(eps: T, strictness: Strictness) -> Result<()> {
    let ok = match strictness {
        Strictness::Strict => eps > T::zero(),
        Strictness::Relaxed => eps >= T::zero(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NonPositiveEpsilon(eps.as_f64()))
    }
}

/// Completeness and finiteness; with `range`, also the `[0, 1]` range.
fn table_checks<T: Scalar>(net: &HighOrderNetwork<T>, class: &str, range: bool) -> ValidationReport {
    let mut report = ValidationReport::new(class);
    let tol = T::tolerance();
    for (key, value) in net.entries() {
        match value {
            None => report.push(Violation {
                axiom: Axiom::IncompleteTable,
                keys: vec![net.key_labels(&key)],
                observed: vec![],
                expected: "a stored value".into(),
            }),
            Some(v) if !v.is_finite_value() => report.push(Violation {
                axiom: Axiom::NonFinite,
                keys: vec![net.key_labels(&key)],
                observed: vec![v.as_f64()],
                expected: "finite".into(),
            }),
            Some(v) if range && (v < -tol || v > T::one() + tol) => report.push(Violation {
                axiom: Axiom::OutOfRange,
                keys: vec![net.key_labels(&key)],
                observed: vec![v.as_f64()],
                expected: "0 <= value <= 1".into(),
            }),
            Some(_) => {}
        }
    }
    report
}

/// Completeness and `[0, 1]` range.
pub fn validate_general<T: Scalar>(net: &HighOrderNetwork<T>) -> ValidationReport {
    table_checks(net, "general", true)
}

#[derive(Clone, Copy, PartialEq)]
enum Direction {
    Increasing,
    Decreasing,
}

/// Recovers `term(key) = value -/+ epsilon * |key|` and checks the order relation.
fn validate_terms<T: Scalar>(net: &HighOrderNetwork<T>, eps: T, dir: Direction, range: bool) -> ValidationReport {
    let class = match dir {
        Direction::Increasing => "dissimilarity",
        Direction::Decreasing => "proximity",
    };
    let mut report = table_checks(net, class, range);
    let tol = T::tolerance();
    let term = |key: &TupleKey| {
        net.value(key).map(|v| match dir {
            Direction::Increasing => v - eps * T::from_count(key.len()),
            Direction::Decreasing => v + eps * T::from_count(key.len()),
        })
    };

    let mut extreme: Option<(T, TupleKey)> = None;
    for key in net.keys() {
        let Some(t) = term(&key) else { continue };
        match dir {
            Direction::Increasing if t < -tol => report.push(Violation {
                axiom: Axiom::NegativeDissimilarity,
                keys: vec![net.key_labels(&key)],
                observed: vec![t.as_f64()],
                expected: "dissimilarity term >= 0".into(),
            }),
            Direction::Decreasing if t > T::one() + tol => report.push(Violation {
                axiom: Axiom::ProximityAboveOne,
                keys: vec![net.key_labels(&key)],
                observed: vec![t.as_f64()],
                expected: "proximity term <= 1".into(),
            }),
            _ => {}
        }
        let better = match (&extreme, dir) {
            (None, _) => true,
            (Some((e, _)), Direction::Increasing) => t > *e,
            (Some((e, _)), Direction::Decreasing) => t < *e,
        };
        if better {
            extreme = Some((t, key.clone()));
        }
        if key.len() < 2 {
            continue;
        }
        // every single-node removal, not only the last position
        for facet in key.facets() {
            let Some(f) = term(&facet) else { continue };
            let broken = match dir {
                Direction::Increasing => t < f - tol,
                Direction::Decreasing => t > f + tol,
            };
            if broken {
                let (axiom, rel) = match dir {
                    Direction::Increasing => (Axiom::OrderIncreasing, ">="),
                    Direction::Decreasing => (Axiom::OrderDecreasing, "<="),
                };
                report.push(Violation {
                    axiom,
                    keys: vec![net.key_labels(&key), net.key_labels(&facet)],
                    observed: vec![t.as_f64(), f.as_f64()],
                    expected: format!("term(first) {rel} term(second)"),
                });
            }
        }
    }

    if let Some((t, key)) = extreme {
        let k = T::from_count(net.order().max(1));
        let bound = match dir {
            Direction::Increasing => T::one() - t / k,
            Direction::Decreasing => t / k,
        };
        if eps > bound + tol {
            let what = match dir {
                Direction::Increasing => "epsilon <= 1 - max term / K",
                Direction::Decreasing => "epsilon <= min term / K",
            };
            report.push(Violation {
                axiom: Axiom::EpsilonBound,
                keys: vec![net.key_labels(&key)],
                observed: vec![eps.as_f64(), bound.as_f64()],
                expected: what.into(),
            });
        }
    }
    report
}

/// Dissimilarity axioms: nonnegative terms, order increasing terms and the
/// `epsilon` bound. The `[0, 1]` range is checked by [`validate_general`].
pub fn validate_dissimilarity<T: Scalar>(
    net: &HighOrderNetwork<T>,
    epsilon: T,
    strictness: Strictness,
) -> Result<ValidationReport> {
    check_epsilon(epsilon, strictness)?;
    Ok(validate_terms(net, epsilon, Direction::Increasing, false))
}

/// Proximity axioms: terms at most 1, order decreasing terms and the
/// `epsilon` bound. The `[0, 1]` range is checked by [`validate_general`].
pub fn validate_proximity<T: Scalar>(
    net: &HighOrderNetwork<T>,
    epsilon: T,
    strictness: Strictness,
) -> Result<ValidationReport> {
    check_epsilon(epsilon, strictness)?;
    Ok(validate_terms(net, epsilon, Direction::Decreasing, false))
}

/// Full check of a network against its own class: the `[0, 1]` range plus
/// the class axioms, honoring the relaxed flag.
pub fn validate<T: Scalar>(net: &HighOrderNetwork<T>) -> Result<ValidationReport> {
    let strictness = if net.relaxed() { Strictness::Relaxed } else { Strictness::Strict };
    let (eps, dir) = match net.class() {
        NetworkClass::General => return Ok(validate_general(net)),
        NetworkClass::Dissimilarity { epsilon } => (epsilon, Direction::Increasing),
        NetworkClass::Proximity { epsilon } => (epsilon, Direction::Decreasing),
    };
    check_epsilon(eps, strictness)?;
    Ok(validate_terms(net, eps, dir, true))
}

/// Like [`validate`] but folds epsilon errors into the report.
pub fn validate_report<T: Scalar>(net: &HighOrderNetwork<T>) -> ValidationReport {
    match validate(net) {
        Ok(r) => r,
        Err(e) => {
            let mut report = validate_general(net);
            report.class = net.class().name().into();
            report.push(Violation {
                axiom: Axiom::EpsilonBound,
                keys: vec![],
                observed: net.epsilon().map(|e| vec![e.as_f64()]).unwrap_or_default(),
                expected: e.to_string(),
            });
            report
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    #[test]
    fn community_formation_is_valid() {
        assert!(validate_general(&fixtures::community_formation(0.01)).ok);
        let net = fixtures::community_formation(1.0 / 18.0);
        let r = validate_dissimilarity(&net, 1.0 / 18.0, Strictness::Strict).unwrap();
        assert!(r.ok, "{:?}", r.violations);
        // the triplet ABC leaves [0, 1] above epsilon = 1/27
        assert!(validate(&net).unwrap().has(Axiom::OutOfRange));
        assert!(validate(&fixtures::community_formation(1.0 / 27.0)).unwrap().ok);
    }

    #[test]
    fn community_formation_epsilon_too_large() {
        let net = fixtures::community_formation(0.6);
        let r = validate_dissimilarity(&net, 0.6, Strictness::Strict).unwrap();
        assert!(r.has(Axiom::EpsilonBound));
        let bound = r.violations.iter().find(|v| v.axiom == Axiom::EpsilonBound).unwrap().observed[1];
        assert!((bound - 5.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn exact_bound_with_rationals() {
        let eps = Rational::new(1, 18);
        let net = fixtures::community_formation(eps);
        assert!(validate_dissimilarity(&net, eps, Strictness::Strict).unwrap().ok);
        // the bound itself is admissible, anything above is not
        let eps = Rational::new(5, 9);
        let net = fixtures::community_formation(eps);
        let r = validate_dissimilarity(&net, eps, Strictness::Strict).unwrap();
        assert!(!r.has(Axiom::EpsilonBound));
    }

    #[test]
    fn order_increasing_defect() {
        let mut net = fixtures::community_formation(0.01);
        // pair (A, C) below node C
        net.set_labels(&["A", "C"], 0.3).unwrap();
        let r = validate_dissimilarity(&net, 0.01, Strictness::Strict).unwrap();
        assert!(r.has(Axiom::OrderIncreasing));
    }

    #[test]
    fn coauthor_proximity_is_valid() {
        let net = fixtures::coauthor_proximity(0.01);
        let r = validate_proximity(&net, 0.01, Strictness::Strict).unwrap();
        assert!(r.ok, "{:?}", r.violations);
    }

    #[test]
    fn coauthor_proximity_epsilon_too_large() {
        let net = fixtures::coauthor_proximity(0.1);
        let r = validate_proximity(&net, 0.1, Strictness::Strict).unwrap();
        let v = r.violations.iter().find(|v| v.axiom == Axiom::EpsilonBound).unwrap();
        assert!((v.observed[1] - 1.0 / 38.0).abs() < 1e-12);
    }

    #[test]
    fn order_decreasing_defect() {
        let mut net = fixtures::coauthor_proximity(0.01);
        net.set_labels(&["A", "B", "D"], 0.5).unwrap();
        let r = validate_proximity(&net, 0.01, Strictness::Strict).unwrap();
        assert!(r.has(Axiom::OrderDecreasing));
    }

    #[test]
    fn incomplete_and_out_of_range() {
        let mut net = fixtures::uniform_triangle::<f64>();
        net.clear(&TupleKey::new(&[0, 1]).unwrap());
        let r = validate_general(&net);
        assert!(!r.ok && r.has(Axiom::IncompleteTable));

        let mut net = fixtures::uniform_triangle::<f64>();
        net.set_labels(&["x2"], 1.2).unwrap();
        assert!(validate_general(&net).has(Axiom::OutOfRange));
    }

    #[test]
    fn epsilon_strictness() {
        let net = fixtures::coauthor_proximity(0.0);
        assert!(matches!(validate_proximity(&net, 0.0, Strictness::Strict), Err(Error::NonPositiveEpsilon(_))));
        assert!(validate_proximity(&net, 0.0, Strictness::Relaxed).unwrap().ok);
        assert!(validate_dissimilarity(&net, -1.0, Strictness::Relaxed).is_err());
    }

    #[test]
    fn strict_order_follows_from_validation() {
        for (net, increasing) in
            [(fixtures::community_formation(1.0 / 30.0), true), (fixtures::coauthor_proximity(0.01), false)]
        {
            assert!(validate(&net).unwrap().ok);
            for key in net.keys().filter(|k| k.len() >= 2) {
                let v = net.value(&key).unwrap();
                for f in key.facets() {
                    let w = net.value(&f).unwrap();
                    assert!(if increasing { v > w } else { v < w }, "{key} vs {f}");
                }
            }
        }
    }
}
