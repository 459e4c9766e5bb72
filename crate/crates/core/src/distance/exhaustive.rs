use crate::correspondence::{enumerate_correspondences, Correspondence};
use crate::error::Result;
use crate::network::HighOrderNetwork;
use crate::scalar::Scalar;

use super::gamma::best_by_size;
use super::{Objective, Solution};

/// Minimum of the objective over every correspondence, in enumeration order.
/// The first minimizer wins; `ties` counts all minimizers.
pub(crate) fn solve<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    objective: Objective,
) -> Result<Solution<T>> {
    let max_size = objective.max_size(x.order());
    let mut best: Option<(T, Correspondence)> = None;
    let mut ties = 0usize;
    for c in enumerate_correspondences(x.node_count(), y.node_count(), false)? {
        let by_size = best_by_size(x, y, c.pairs(), max_size);
        let v = objective.evaluate(&by_size, T::zero());
        match &best {
            Some((b, _)) if v > *b => {}
            Some((b, _)) if v == *b => ties += 1,
            _ => {
                best = Some((v, c));
                ties = 1;
            }
        }
    }
    let (value, correspondence) = best.expect("at least the full product is a correspondence");
    Ok(Solution { value, correspondence, ties: Some(ties) })
}
