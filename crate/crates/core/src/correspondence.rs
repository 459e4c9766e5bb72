//! Correspondences: relations `C ⊆ X × Y` in which every node of either set
//! has at least one partner.

use crate::error::{Error, Result};

/// Largest `|X| * |Y|` accepted by exhaustive enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Correspondence {
    nx: usize,
    ny: usize,
    /// Sorted, without duplicates.
    pairs: Vec<(usize, usize)>,
}

fn check_range(pairs: &[(usize, usize)], nx: usize, ny: usize) -> Result<()> {
    match pairs.iter().find(|&&(x, y)| x >= nx || y >= ny) {
        Some(&(x, y)) => Err(Error::PairOutOfRange { x, y, nx, ny }),
        None => Ok(()),
    }
}

fn covers(pairs: &[(usize, usize)], nx: usize, ny: usize) -> bool {
    let mut xs = vec![false; nx];
    let mut ys = vec![false; ny];
    for &(x, y) in pairs {
        xs[x] = true;
        ys[y] = true;
    }
    xs.into_iter().all(|b| b) && ys.into_iter().all(|b| b)
}

/// True iff `pairs` covers every index of both sides.
pub fn is_correspondence(pairs: &[(usize, usize)], nx: usize, ny: usize) -> Result<bool> {
    check_range(pairs, nx, ny)?;
    Ok(covers(pairs, nx, ny))
}

impl Correspondence {
    pub fn new(nx: usize, ny: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        check_range(&pairs, nx, ny)?;
        pairs.sort_unstable();
        pairs.dedup();
        if !covers(&pairs, nx, ny) {
            return Err(Error::NotACorrespondence);
        }
        Ok(Correspondence { nx, ny, pairs })
    }

    pub fn identity(n: usize) -> Self {
        Correspondence { nx: n, ny: n, pairs: (0..n).map(|i| (i, i)).collect() }
    }

    pub fn full(nx: usize, ny: usize) -> Self {
        let pairs = (0..nx).flat_map(|x| (0..ny).map(move |y| (x, y))).collect();
        Correspondence { nx, ny, pairs }
    }

    /// Decodes a bitmask over the product grid, bit `x * ny + y`.
    pub fn from_mask(nx: usize, ny: usize, mask: u64) -> Self {
        let pairs = crate::network::bits(mask).map(|b| (b / ny, b % ny)).collect();
        Correspondence { nx, ny, pairs }
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }

    pub fn is_subset(&self, other: &Correspondence) -> bool {
        self.pairs.iter().all(|&(x, y)| other.contains(x, y))
    }

    /// The inverse relation `{(y, x)}`.
    pub fn transpose(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        Correspondence { nx: self.ny, ny: self.nx, pairs }
    }

    /// The bijection `x -> y` if every node has exactly one partner.
    pub fn as_bijection(&self) -> Option<Vec<usize>> {
        if self.nx != self.ny || self.pairs.len() != self.nx {
            return None;
        }
        let mut image = vec![usize::MAX; self.nx];
        let mut hit = vec![false; self.ny];
        for &(x, y) in &self.pairs {
            if image[x] != usize::MAX || hit[y] {
                return None;
            }
            image[x] = y;
            hit[y] = true;
        }
        Some(image)
    }

    /// No pair can be dropped without uncovering a node.
    pub fn is_minimal(&self) -> bool {
        let mut dx = vec![0usize; self.nx];
        let mut dy = vec![0usize; self.ny];
        for &(x, y) in &self.pairs {
            dx[x] += 1;
            dy[y] += 1;
        }
        self.pairs.iter().all(|&(x, y)| dx[x] == 1 || dy[y] == 1)
    }
}

/// `{(x, y) : exists z, (x, z) in c1 and (z, y) in c2}`.
pub fn compose(c1: &Correspondence, c2: &Correspondence) -> Result<Correspondence> {
    let (nx, nz) = c1.sizes();
    let (nz2, ny) = c2.sizes();
    if nz != nz2 {
        return Err(Error::CorrespondenceShape { got: (nz2, ny), expected: (nz, ny) });
    }
    let pairs =
        c1.pairs.iter().flat_map(|&(x, z)| c2.pairs.iter().filter(move |&&(z2, _)| z2 == z).map(move |&(_, y)| (x, y)));
    let out = Correspondence::new(nx, ny, pairs);
    debug_assert!(out.is_ok(), "composition of correspondences covers both sides");
    out
}

/// Iterator over correspondences in increasing bitmask order.
#[derive(Clone, Debug)]
pub struct Correspondences {
    nx: usize,
    ny: usize,
    minimal_only: bool,
    next: u64,
    end: u64,
    rows: Vec<u64>,
    cols: Vec<u64>,
}

impl Iterator for Correspondences {
    type Item = Correspondence;

    fn next(&mut self) -> Option<Correspondence> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if self.rows.iter().any(|&r| mask & r == 0) || self.cols.iter().any(|&c| mask & c == 0) {
                continue;
            }
            if self.minimal_only && !self.mask_is_minimal(mask) {
                continue;
            }
            return Some(Correspondence::from_mask(self.nx, self.ny, mask));
        }
        None
    }
}

impl Correspondences {
    fn mask_is_minimal(&self, mask: u64) -> bool {
        crate::network::bits(mask).all(|b| {
            let (x, y) = (b / self.ny, b % self.ny);
            (mask & self.rows[x]).count_ones() == 1 || (mask & self.cols[y]).count_ones() == 1
        })
    }
}

/// Every correspondence between `0..nx` and `0..ny`, or only the
/// inclusion-minimal ones. Requires `nx * ny <= EXHAUSTIVE_LIMIT`.
pub fn enumerate_correspondences(nx: usize, ny: usize, minimal_only: bool) -> Result<Correspondences> {
    if nx == 0 || ny == 0 {
        return Err(Error::NotACorrespondence);
    }
    let product = nx * ny;
    if product > EXHAUSTIVE_LIMIT {
        return Err(Error::SizeGuard { product, limit: EXHAUSTIVE_LIMIT });
    }
    let rows = (0..nx).map(|x| ((1u64 << ny) - 1) << (x * ny)).collect();
    let cols = (0..ny).map(|y| (0..nx).fold(0u64, |m, x| m | 1u64 << (x * ny + y))).collect();
    Ok(Correspondences { nx, ny, minimal_only, next: 1, end: 1u64 << product, rows, cols })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Inclusion-exclusion count of covering relations.
    fn covering_count(nx: usize, ny: usize) -> i64 {
        let binom = |n: usize, k: usize| -> i64 { (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64) };
        let mut total = 0i64;
        for i in 0..=nx {
            for j in 0..=ny {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                total += sign * binom(nx, i) * binom(ny, j) * (1i64 << ((nx - i) * (ny - j)));
            }
        }
        total
    }

    /// Brute-force subset scan, independent of the enumerator's row/column masks.
    fn brute_count(nx: usize, ny: usize) -> usize {
        let grid: Vec<(usize, usize)> = (0..nx).flat_map(|x| (0..ny).map(move |y| (x, y))).collect();
        (0u64..1 << grid.len())
            .filter(|m| {
                let pairs: Vec<_> = (0..grid.len()).filter(|b| m >> b & 1 == 1).map(|b| grid[b]).collect();
                is_correspondence(&pairs, nx, ny).unwrap()
            })
            .count()
    }

    #[test]
    fn membership() {
        assert!(is_correspondence(&[(0, 0), (1, 1), (2, 1)], 3, 2).unwrap());
        assert!(!is_correspondence(&[(0, 0)], 2, 1).unwrap());
        let full: Vec<_> = Correspondence::full(3, 4).pairs().to_vec();
        assert!(is_correspondence(&full, 3, 4).unwrap());
        assert!(matches!(is_correspondence(&[(0, 5)], 2, 2), Err(Error::PairOutOfRange { .. })));
    }

    #[test]
    fn small_counts() {
        let one: Vec<_> = enumerate_correspondences(1, 1, false).unwrap().collect();
        assert_eq!(one, vec![Correspondence::identity(1)]);
        let two: Vec<_> = enumerate_correspondences(2, 1, false).unwrap().collect();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].pairs(), &[(0, 0), (1, 0)]);
        assert_eq!(covering_count(2, 2), 7);
        assert_eq!(brute_count(2, 2), 7);
        assert_eq!(enumerate_correspondences(2, 2, false).unwrap().count(), 7);
    }

    #[test]
    fn counts_match_inclusion_exclusion() {
        for nx in 1..=4 {
            for ny in 1..=4 {
                let n = enumerate_correspondences(nx, ny, false).unwrap().count();
                assert_eq!(n as i64, covering_count(nx, ny), "{nx}x{ny}");
                if nx * ny <= 12 {
                    assert_eq!(n, brute_count(nx, ny));
                }
            }
        }
    }

    #[test]
    fn enumeration_order_is_increasing_mask() {
        let masks: Vec<u64> = enumerate_correspondences(2, 3, false)
            .unwrap()
            .map(|c| c.pairs().iter().fold(0u64, |m, &(x, y)| m | 1 << (x * 3 + y)))
            .collect();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn minimal_enumeration_is_lower_set_of_full() {
        for nx in 1..=3 {
            for ny in 1..=3 {
                let full: Vec<_> = enumerate_correspondences(nx, ny, false).unwrap().collect();
                let minimal: Vec<_> = enumerate_correspondences(nx, ny, true).unwrap().collect();
                for m in &minimal {
                    assert!(full.contains(m));
                    assert!(m.is_minimal());
                    // dropping any pair breaks coverage
                    for skip in 0..m.len() {
                        let rest: Vec<_> =
                            m.pairs().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, p)| *p).collect();
                        assert!(!is_correspondence(&rest, nx, ny).unwrap());
                    }
                }
                for c in &full {
                    assert!(minimal.iter().any(|m| m.is_subset(c)), "{c:?} contains no minimal element");
                }
            }
        }
    }

    #[test]
    fn size_guard() {
        assert!(enumerate_correspondences(5, 5, false).is_ok());
        assert!(matches!(enumerate_correspondences(5, 6, false), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn compose_examples() {
        let id = Correspondence::identity(3);
        assert_eq!(compose(&id, &id).unwrap(), id);
        let c1 = Correspondence::new(2, 1, [(0, 0), (1, 0)]).unwrap();
        let c2 = Correspondence::new(1, 2, [(0, 0), (0, 1)]).unwrap();
        assert_eq!(compose(&c1, &c2).unwrap(), Correspondence::full(2, 2));
    }

    #[test]
    fn compose_is_associative() {
        let all: Vec<_> = enumerate_correspondences(2, 2, false).unwrap().collect();
        for a in &all {
            for b in &all {
                for c in &all {
                    let left = compose(&compose(a, b).unwrap(), c).unwrap();
                    let right = compose(a, &compose(b, c).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn random_compositions_are_correspondences() {
        use rand::{Rng, SeedableRng};
        for seed in 0..1000u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let (nx, nz, ny) = (rng.random_range(1..5), rng.random_range(1..5), rng.random_range(1..5));
            let mut random = |a: usize, b: usize| loop {
                let pairs: Vec<_> =
                    (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).filter(|_| rng.random_bool(0.4)).collect();
                if let Ok(c) = Correspondence::new(a, b, pairs) {
                    break c;
                }
            };
            let c1 = random(nx, nz);
            let c2 = random(nz, ny);
            let c = compose(&c1, &c2).unwrap();
            assert!(is_correspondence(c.pairs(), nx, ny).unwrap());
        }
    }

    #[test]
    fn bijection_detection() {
        assert_eq!(Correspondence::new(2, 2, [(0, 1), (1, 0)]).unwrap().as_bijection(), Some(vec![1, 0]));
        assert_eq!(Correspondence::full(2, 2).as_bijection(), None);
        assert_eq!(Correspondence::new(3, 2, [(0, 0), (1, 1), (2, 1)]).unwrap().as_bijection(), None);
    }
}
