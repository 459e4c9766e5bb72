//! Network differences `Γ^k(C)` for a fixed correspondence.
//!
//! `Γ^k(C)` is the largest `|r_X^k(x_0..x_k) - r_Y^k(y_0..y_k)|` over all
//! `(k+1)`-tuples of correspondent pairs `(x_i, y_i) ∈ C`, repetitions allowed.
//! Since values depend only on the sets `{x_i}` and `{y_i}`, a tuple of pairs
//! can be replaced by the set of distinct pairs it uses. Any set of at most
//! `k + 1` pairs is reachable by padding with repeats, so
//! `Γ^k(C) = max over pair sets P ⊆ C, 1 <= |P| <= k+1, of the gap at P`.

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::network::HighOrderNetwork;
use crate::scalar::Scalar;

/// `(Γ^0(C), ..., Γ^K(C))`. Entries are nonnegative and non-decreasing in `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaVector<T>(pub Vec<T>);

impl<T: Scalar> GammaVector<T> {
    pub fn order(&self, k: usize) -> T {
        self.0[k]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Gap between the two networks on the node sets hit by a set of pairs.
#[inline]
pub(crate) fn gap<T: Scalar>(x: &HighOrderNetwork<T>, y: &HighOrderNetwork<T>, xm: u64, ym: u64) -> T {
    (x.stored(xm) - y.stored(ym)).abs()
}

/// Calls `f(size, x_mask, y_mask, chosen)` for every set of at most
/// `max_size` distinct pairs, where `chosen` lists the pair positions.
pub(crate) fn for_each_pair_set(
    pairs: &[(usize, usize)],
    max_size: usize,
    f: &mut impl FnMut(usize, u64, u64, &[usize]),
) {
    fn rec(
        pairs: &[(usize, usize)],
        start: usize,
        max_size: usize,
        xm: u64,
        ym: u64,
        chosen: &mut Vec<usize>,
        f: &mut impl FnMut(usize, u64, u64, &[usize]),
    ) {
        if chosen.len() == max_size {
            return;
        }
        for i in start..pairs.len() {
            let (px, py) = pairs[i];
            let (nxm, nym) = (xm | 1 << px, ym | 1 << py);
            chosen.push(i);
            f(chosen.len(), nxm, nym, chosen);
            rec(pairs, i + 1, max_size, nxm, nym, chosen, f);
            chosen.pop();
        }
    }
    let mut chosen = Vec::with_capacity(max_size);
    rec(pairs, 0, max_size, 0, 0, &mut chosen, f);
}

/// Largest gap among pair sets of each exact size `1..=max_size`
/// (index 0 unused, always zero).
pub(crate) fn best_by_size<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    pairs: &[(usize, usize)],
    max_size: usize,
) -> Vec<T> {
    let mut best = vec![T::zero(); max_size + 1];
    for_each_pair_set(pairs, max_size, &mut |s, xm, ym, _| {
        let g = gap(x, y, xm, ym);
        if g > best[s] {
            best[s] = g;
        }
    });
    best
}

/// `Γ^j` for `j = 0..max_size-1` from per-size maxima (prefix maximum).
pub(crate) fn prefix_max<T: Scalar>(by_size: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(by_size.len().saturating_sub(1));
    let mut m = T::zero();
    for &v in &by_size[1..] {
        m = m.max_of(v);
        out.push(m);
    }
    out
}

pub(crate) fn check_shape<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    c: &Correspondence,
) -> Result<()> {
    let expected = (x.node_count(), y.node_count());
    if c.sizes() != expected {
        return Err(Error::CorrespondenceShape { got: c.sizes(), expected });
    }
    Ok(())
}

pub(crate) fn check_complete<T: Scalar>(net: &HighOrderNetwork<T>) -> Result<()> {
    match net.missing_keys().first() {
        Some(key) => Err(Error::MissingValue(net.key_labels(key))),
        None => Ok(()),
    }
}

/// `k`-order network difference `Γ^k(C)`.
pub fn gamma_k<T: Scalar>(x: &HighOrderNetwork<T>, y: &HighOrderNetwork<T>, c: &Correspondence, k: usize) -> Result<T> {
    let order = x.order().min(y.order());
    if k > order {
        return Err(Error::OrderOutOfRange { k, order });
    }
    check_shape(x, y, c)?;
    check_complete(x)?;
    check_complete(y)?;
    let by_size = best_by_size(x, y, c.pairs(), k + 1);
    Ok(prefix_max(&by_size)[k])
}

/// `(Γ^0(C), ..., Γ^K(C))` for two networks of equal order `K`.
pub fn gamma_vector<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    c: &Correspondence,
) -> Result<GammaVector<T>> {
    if x.order() != y.order() {
        return Err(Error::OrderMismatch(x.order(), y.order()));
    }
    check_shape(x, y, c)?;
    check_complete(x)?;
    check_complete(y)?;
    let by_size = best_by_size(x, y, c.pairs(), x.order() + 1);
    Ok(GammaVector(prefix_max(&by_size)))
}
