//! High order networks and tuple evaluation.
//!
//! Relationship values are keyed by the *set* of distinct nodes in a tuple.
//! Reordering a tuple or repeating one of its members never changes the
//! key, so the symmetry and identity axioms hold by construction and a
//! network of order `K` over `n` nodes stores `sum_{s=1}^{K+1} C(n, s)`
//! values.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_NODES: usize = 64;

/// Number of distinct elements in a tuple.
pub fn rank<N: Ord>(tuple: &[N]) -> Result<usize> {
    if tuple.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let mut refs: Vec<&N> = tuple.iter().collect();
    refs.sort();
    refs.dedup();
    Ok(refs.len())
}

/// Canonical form of a tuple: strictly increasing node indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleKey(Vec<usize>);

impl TupleKey {
    /// Sorts and deduplicates `tuple`. Node ranges are not checked here.
    pub fn new(tuple: &[usize]) -> Result<Self> {
        if tuple.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let mut v = tuple.to_vec();
        v.sort_unstable();
        v.dedup();
        Ok(TupleKey(v))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &i| m | (1u64 << i))
    }

    pub fn from_mask(mask: u64) -> Self {
        TupleKey(bits(mask).collect())
    }

    /// Keys obtained by removing exactly one node.
    pub fn facets(&self) -> impl Iterator<Item = TupleKey> + '_ {
        (0..self.0.len())
            .map(move |skip| TupleKey(self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()))
    }
}

impl fmt::Display for TupleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NetworkClass<T> {
    General,
    Dissimilarity { epsilon: T },
    Proximity { epsilon: T },
}

impl<T: Copy> NetworkClass<T> {
    pub fn name(&self) -> &'static str {
        match self {
            NetworkClass::General => "general",
            NetworkClass::Dissimilarity { .. } => "dissimilarity",
            NetworkClass::Proximity { .. } => "proximity",
        }
    }

    pub fn epsilon(&self) -> Option<T> {
        match *self {
            NetworkClass::General => None,
            NetworkClass::Dissimilarity { epsilon } | NetworkClass::Proximity { epsilon } => Some(epsilon),
        }
    }

    pub fn is_general(&self) -> bool {
        matches!(self, NetworkClass::General)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> NetworkClass<U> {
        match self {
            NetworkClass::General => NetworkClass::General,
            NetworkClass::Dissimilarity { epsilon } => NetworkClass::Dissimilarity { epsilon: f(epsilon) },
            NetworkClass::Proximity { epsilon } => NetworkClass::Proximity { epsilon: f(epsilon) },
        }
    }
}

/// Dense index of all node subsets with `1 <= size <= max_size`.
///
/// Subsets of equal size are ranked in colexicographic order, which is also
/// increasing order of their bitmasks.
#[derive(Clone, Debug)]
struct SubsetIndex {
    n: usize,
    max_size: usize,
    binom: Vec<Vec<usize>>,
    offsets: Vec<usize>,
}

impl SubsetIndex {
    fn new(n: usize, max_size: usize) -> Self {
        let mut binom = vec![vec![0usize; max_size + 2]; n + 1];
        for row in binom.iter_mut() {
            row[0] = 1;
        }
        for i in 1..=n {
            for j in 1..=max_size + 1 {
                binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
            }
        }
        let mut offsets = vec![0usize; max_size + 2];
        for s in 1..=max_size {
            offsets[s + 1] = offsets[s] + binom[n][s];
        }
        SubsetIndex { n, max_size, binom, offsets }
    }

    fn len(&self) -> usize {
        self.offsets[self.max_size + 1]
    }

    fn position(&self, mask: u64) -> Option<usize> {
        let size = mask.count_ones() as usize;
        if size == 0 || size > self.max_size || (self.n < 64 && mask >> self.n != 0) {
            return None;
        }
        let colex: usize = bits(mask).enumerate().map(|(i, e)| self.binom[e][i + 1]).sum();
        Some(self.offsets[size] + colex)
    }

    fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.max_size).flat_map(move |s| combinations(self.n, s))
    }
}

/// All `s`-subsets of `0..n` as bitmasks, in increasing numeric order.
pub(crate) fn combinations(n: usize, s: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut next: u128 = if s == 0 || s > n { limit } else { (1u128 << s) - 1 };
    std::iter::from_fn(move || {
        if next >= limit {
            return None;
        }
        let current = next;
        // Gosper's hack
        let c = current & current.wrapping_neg();
        let r = current + c;
        next = (((r ^ current) >> 2) / c) | r;
        Some(current as u64)
    })
}

/// Weighted complete hypergraph with relationship values on every node
/// subset of size at most `order + 1`.
#[derive(Clone, Debug)]
pub struct HighOrderNetwork<T> {
    order: usize,
    labels: Vec<String>,
    lookup: HashMap<String, usize>,
    index: SubsetIndex,
    values: Vec<Option<T>>,
    class: NetworkClass<T>,
    relaxed: bool,
}

impl<T: Scalar> HighOrderNetwork<T> {
    /// Network with no stored values. Use [`set`](Self::set) to fill the table.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        order: usize,
        class: NetworkClass<T>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_NODES {
            return Err(Error::TooManyNodes(labels.len()));
        }
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let index = SubsetIndex::new(labels.len(), (order + 1).min(labels.len()));
        let values = vec![None; index.len()];
        Ok(HighOrderNetwork { order, labels, lookup, index, values, class, relaxed: false })
    }

    /// Complete network with `value(key)` stored for every key.
    pub fn from_fn<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        order: usize,
        class: NetworkClass<T>,
        mut value: impl FnMut(&TupleKey) -> T,
    ) -> Result<Self> {
        let mut net = Self::new(labels, order, class)?;
        let masks: Vec<u64> = net.index.masks().collect();
        for mask in masks {
            let v = value(&TupleKey::from_mask(mask));
            net.set_mask(mask, v);
        }
        Ok(net)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    pub fn class(&self) -> NetworkClass<T> {
        self.class
    }

    pub fn epsilon(&self) -> Option<T> {
        self.class.epsilon()
    }

    /// Whether `epsilon = 0` is accepted for this network's class.
    pub fn relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn with_relaxed(mut self, relaxed: bool) -> Self {
        self.relaxed = relaxed;
        self
    }

    pub fn with_class(mut self, class: NetworkClass<T>) -> Self {
        self.class = class;
        self
    }

    /// Largest key size stored: `min(order + 1, node_count)`.
    pub fn max_key_size(&self) -> usize {
        self.index.max_size
    }

    pub fn key_count(&self) -> usize {
        self.values.len()
    }

    /// Canonical key of a tuple of node indices.
    pub fn canonical_key(&self, tuple: &[usize]) -> Result<TupleKey> {
        if let Some(&bad) = tuple.iter().find(|&&i| i >= self.labels.len()) {
            return Err(Error::UnknownNode(bad.to_string()));
        }
        TupleKey::new(tuple)
    }

    pub fn key_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<TupleKey> {
        let idx = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()).ok_or_else(|| Error::UnknownNode(l.as_ref().to_string())))
            .collect::<Result<Vec<_>>>()?;
        TupleKey::new(&idx)
    }

    pub fn key_labels(&self, key: &TupleKey) -> Vec<String> {
        key.indices().iter().map(|&i| self.labels[i].clone()).collect()
    }

    /// Stores `value` for `key`. Panics if the key is not part of the table.
    pub fn set(&mut self, key: &TupleKey, value: T) {
        self.set_mask(key.mask(), value)
    }

    pub fn set_labels<S: AsRef<str>>(&mut self, labels: &[S], value: T) -> Result<()> {
        let key = self.key_from_labels(labels)?;
        if key.len() > self.max_key_size() {
            return Err(Error::KeyTooLarge(self.key_labels(&key)));
        }
        self.set(&key, value);
        Ok(())
    }

    pub fn clear(&mut self, key: &TupleKey) {
        if let Some(pos) = self.index.position(key.mask()) {
            self.values[pos] = None;
        }
    }

    fn set_mask(&mut self, mask: u64, value: T) {
        let pos = self.index.position(mask).expect("key within table");
        self.values[pos] = Some(value);
    }

    pub fn value(&self, key: &TupleKey) -> Option<T> {
        self.value_mask(key.mask())
    }

    pub(crate) fn value_mask(&self, mask: u64) -> Option<T> {
        self.index.position(mask).and_then(|p| self.values[p])
    }

    /// Value for a key that is known to be stored. Only for complete networks.
    #[inline]
    pub(crate) fn stored(&self, mask: u64) -> T {
        match self.value_mask(mask) {
            Some(v) => v,
            None => panic!("incomplete network: no value for key {}", TupleKey::from_mask(mask)),
        }
    }

    pub fn value_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<T> {
        let key = self.key_from_labels(labels)?;
        self.value(&key).ok_or_else(|| Error::MissingValue(self.key_labels(&key)))
    }

    /// `r^k(tuple)` for a tuple of `k + 1` node indices.
    pub fn eval(&self, tuple: &[usize], k: usize) -> Result<T> {
        if k > self.order {
            return Err(Error::OrderOutOfRange { k, order: self.order });
        }
        if tuple.len() != k + 1 {
            return Err(Error::TupleLength { len: tuple.len(), k });
        }
        let key = self.canonical_key(tuple)?;
        self.value(&key).ok_or_else(|| Error::MissingValue(self.key_labels(&key)))
    }

    pub fn eval_labels<S: AsRef<str>>(&self, tuple: &[S], k: usize) -> Result<T> {
        let idx = tuple
            .iter()
            .map(|l| self.index_of(l.as_ref()).ok_or_else(|| Error::UnknownNode(l.as_ref().to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.eval(&idx, k)
    }

    /// All keys of the table, by size then colexicographic order.
    pub fn keys(&self) -> impl Iterator<Item = TupleKey> + '_ {
        self.index.masks().map(TupleKey::from_mask)
    }

    pub fn entries(&self) -> impl Iterator<Item = (TupleKey, Option<T>)> + '_ {
        self.index.masks().zip(self.values.iter()).map(|(m, v)| (TupleKey::from_mask(m), *v))
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn missing_keys(&self) -> Vec<TupleKey> {
        self.entries().filter(|(_, v)| v.is_none()).map(|(k, _)| k).collect()
    }

    /// Relabeled copy: node `i` of the result is node `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidNetwork(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let labels: Vec<String> = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let mut out = Self::new(labels, self.order, self.class)?;
        out.relaxed = self.relaxed;
        let masks: Vec<u64> = out.index.masks().collect();
        for mask in masks {
            let src = bits(mask).fold(0u64, |m, i| m | (1u64 << perm[i]));
            if let Some(v) = self.value_mask(src) {
                out.set_mask(mask, v);
            }
        }
        Ok(out)
    }

    /// Applies `f` to every stored value.
    pub fn map_values<U: Scalar>(&self, class: NetworkClass<U>, mut f: impl FnMut(T) -> U) -> HighOrderNetwork<U> {
        HighOrderNetwork {
            order: self.order,
            labels: self.labels.clone(),
            lookup: self.lookup.clone(),
            index: self.index.clone(),
            values: self.values.iter().map(|v| v.map(&mut f)).collect(),
            class,
            relaxed: self.relaxed,
        }
    }

    /// Converts the scalar type through `f64`.
    pub fn to_f64(&self) -> HighOrderNetwork<f64> {
        self.map_values(self.class.map(Scalar::as_f64), Scalar::as_f64)
    }
}

impl<T: Scalar> PartialEq for HighOrderNetwork<T> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.labels == other.labels
            && self.values == other.values
            && self.class == other.class
            && self.relaxed == other.relaxed
    }
}
