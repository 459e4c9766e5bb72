//! Exact branch-and-bound search over correspondences.
//!
//! Every objective here is a monotone function of `Γ(C)`, and `Γ(C)` only
//! grows when pairs are added to `C`. The optimum is therefore attained on
//! an inclusion-minimal correspondence, and minimal correspondences are
//! star forests: each pair has an endpoint of degree one. The search builds
//! them in two phases:
//!
//! 1. every `x` (in index order) picks one partner `y`;
//! 2. every `y` still uncovered picks one partner `x`.
//!
//! All minimal correspondences are reachable this way and every leaf is a
//! valid correspondence. The differences forced by the pairs committed so
//! far bound the final objective from below, so a branch is cut as soon as
//! that bound reaches the incumbent. Runtime is exponential in the node
//! counts; instances beyond a dozen nodes per side are impractical.

use std::cmp::Ordering;

use crate::correspondence::Correspondence;
use crate::error::Result;
use crate::network::HighOrderNetwork;
use crate::scalar::Scalar;

use super::gamma::{for_each_pair_set, gap};
use super::{Objective, Solution};

struct Search<'a, T> {
    x: &'a HighOrderNetwork<T>,
    y: &'a HighOrderNetwork<T>,
    objective: Objective,
    max_size: usize,
    /// Every `x` and `y` needs a partner, so no singleton gap below this is avoidable.
    floor: T,
    pairs: Vec<(usize, usize)>,
    by_size: Vec<T>,
    y_degree: Vec<usize>,
    best: Option<(T, Vec<(usize, usize)>)>,
}

impl<T: Scalar> Search<'_, T> {
    fn push(&mut self, (px, py): (usize, usize)) -> Vec<T> {
        let saved = self.by_size.clone();
        let (bx, by) = (1u64 << px, 1u64 << py);
        let g = gap(self.x, self.y, bx, by);
        if g > self.by_size[1] {
            self.by_size[1] = g;
        }
        let (x, y, by_size) = (self.x, self.y, &mut self.by_size);
        for_each_pair_set(&self.pairs, self.max_size - 1, &mut |s, xm, ym, _| {
            let g = gap(x, y, xm | bx, ym | by);
            if g > by_size[s + 1] {
                by_size[s + 1] = g;
            }
        });
        self.pairs.push((px, py));
        self.y_degree[py] += 1;
        saved
    }

    fn pop(&mut self, saved: Vec<T>) {
        let (_, py) = self.pairs.pop().expect("pop after push");
        self.y_degree[py] -= 1;
        self.by_size = saved;
    }

    fn bound(&self) -> T {
        self.objective.evaluate(&self.by_size, self.floor)
    }

    fn improves(&self, bound: T) -> bool {
        match &self.best {
            None => true,
            Some((incumbent, _)) => bound < *incumbent,
        }
    }

    /// Candidate pairs ordered by the bound they lead to, best first.
    fn ranked(&mut self, candidates: impl Iterator<Item = (usize, usize)>) -> Vec<(T, (usize, usize))> {
        let mut out: Vec<(T, (usize, usize))> = candidates
            .map(|p| {
                let saved = self.push(p);
                let b = self.bound();
                self.pop(saved);
                (b, p)
            })
            .collect();
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        out
    }

    fn assign_x(&mut self, xi: usize) {
        if xi == self.x.node_count() {
            return self.cover_y();
        }
        let ny = self.y.node_count();
        for (b, p) in self.ranked((0..ny).map(|y| (xi, y))) {
            if !self.improves(b) {
                break;
            }
            let saved = self.push(p);
            self.assign_x(xi + 1);
            self.pop(saved);
        }
    }

    fn cover_y(&mut self) {
        let Some(yi) = self.y_degree.iter().position(|&d| d == 0) else {
            let value = self.objective.evaluate(&self.by_size, T::zero());
            if self.improves(value) {
                self.best = Some((value, self.pairs.clone()));
            }
            return;
        };
        let nx = self.x.node_count();
        for (b, p) in self.ranked((0..nx).map(|x| (x, yi))) {
            if !self.improves(b) {
                break;
            }
            let saved = self.push(p);
            self.cover_y();
            self.pop(saved);
        }
    }
}

pub(crate) fn solve<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    objective: Objective,
) -> Result<Solution<T>> {
    let (nx, ny) = (x.node_count(), y.node_count());
    let single = |a: usize, b: usize| gap(x, y, 1 << a, 1 << b);
    let mut floor = T::zero();
    for a in 0..nx {
        let m = (0..ny).map(|b| single(a, b)).reduce(T::min_of).expect("nonempty");
        floor = floor.max_of(m);
    }
    for b in 0..ny {
        let m = (0..nx).map(|a| single(a, b)).reduce(T::min_of).expect("nonempty");
        floor = floor.max_of(m);
    }
    let max_size = objective.max_size(x.order());
    let mut search = Search {
        x,
        y,
        objective,
        max_size,
        floor,
        pairs: Vec::with_capacity(nx + ny),
        by_size: vec![T::zero(); max_size + 1],
        y_degree: vec![0; ny],
        best: None,
    };
    search.assign_x(0);
    let (value, pairs) = search.best.expect("search reaches at least one leaf");
    let correspondence = Correspondence::new(nx, ny, pairs)?;
    Ok(Solution { value, correspondence, ties: None })
}
