//! Correspondence-based distances between high order networks.
//!
//! * `d^k(X, Y) = min_C Γ^k(C)`: the `k`-order distance;
//! * the distance vector `(d^0, ..., d^K)`, each entry with its own minimizer;
//! * `d_p(X, Y) = min_C ‖(Γ^0(C), ..., Γ^K(C))‖_p`: one correspondence for all orders.
//!
//! General, dissimilarity and proximity networks share this engine; the
//! class only changes which metric guarantees hold. Results for general
//! networks, for `k = 0`, and for `p`-norms of order-0 networks carry a
//! pseudometric caveat.

mod branch_bound;
mod exhaustive;
pub mod gamma;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::network::{HighOrderNetwork, NetworkClass};
use crate::scalar::Scalar;

pub use gamma::{gamma_k, gamma_vector, GammaVector};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PNorm {
    Finite(f64),
    Infinity,
}

impl PNorm {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(PNorm::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(PNorm::Finite(p))
        } else {
            Err(Error::InvalidNorm(p.to_string()))
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            PNorm::Finite(p) => p,
            PNorm::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for PNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" | "max" => Ok(PNorm::Infinity),
            other => other.parse::<f64>().map_err(|_| Error::InvalidNorm(s.to_string())).and_then(PNorm::new),
        }
    }
}

/// Exact solver used to minimize over correspondences.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Solver {
    /// Enumerates every correspondence; limited to `|X| * |Y| <= 25`.
    Exhaustive,
    #[default]
    BranchAndBound,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Exhaustive => "exhaustive",
            Solver::BranchAndBound => "branch-and-bound",
        }
    }
}

impl FromStr for Solver {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exhaustive" => Ok(Solver::Exhaustive),
            "bnb" | "branch-and-bound" => Ok(Solver::BranchAndBound),
            other => Err(format!("unknown solver {other:?} (expected exhaustive or bnb)")),
        }
    }
}

/// Scalar quantity minimized over correspondences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Objective {
    /// `Γ^k(C)`
    Order(usize),
    /// `‖Γ(C)‖_p`
    Norm(PNorm),
}

impl Objective {
    /// Largest pair-set size that influences the objective.
    pub(crate) fn max_size(self, order: usize) -> usize {
        match self {
            Objective::Order(k) => k + 1,
            Objective::Norm(_) => order + 1,
        }
    }

    /// Objective value from per-size maximal gaps, each `Γ^j` raised to at least `floor`.
    pub(crate) fn evaluate<T: Scalar>(self, by_size: &[T], floor: T) -> T {
        let gammas: Vec<T> = gamma::prefix_max(by_size).into_iter().map(|g| g.max_of(floor)).collect();
        match self {
            Objective::Order(k) => gammas[k],
            Objective::Norm(p) => T::norm(&gammas, p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DistanceMode {
    Order(usize),
    Vector,
    Norm(PNorm),
}

impl DistanceMode {
    pub fn name(self) -> &'static str {
        match self {
            DistanceMode::Order(_) => "order",
            DistanceMode::Vector => "vector",
            DistanceMode::Norm(_) => "p-norm",
        }
    }
}

impl From<Objective> for DistanceMode {
    fn from(o: Objective) -> Self {
        match o {
            Objective::Order(k) => DistanceMode::Order(k),
            Objective::Norm(p) => DistanceMode::Norm(p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Caveat {
    /// `d^0` ignores node counts: networks of different sizes can be at distance 0.
    OrderZero,
    /// At least one input is a general network; only pseudometric properties hold.
    GeneralClass,
    /// `p`-norm distance between order-0 networks.
    NormOrderZero,
}

impl Caveat {
    pub fn message(self) -> &'static str {
        match self {
            Caveat::OrderZero => {
                "k = 0 distance is a pseudometric: networks with different node counts can be at distance 0"
            }
            Caveat::GeneralClass => "general networks: the distance is a pseudometric, zero does not imply isomorphism",
            Caveat::NormOrderZero => "p-norm distance of order-0 networks is a pseudometric",
        }
    }
}

/// A correspondent tuple pair attaining the largest gap at the optimum.
///
/// `x` and `y` are `(order + 1)`-tuples of node indices; `(x[i], y[i])` are
/// correspondent pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Bottleneck<T> {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub order: usize,
    pub gap: T,
}

/// Optimum for one scalar objective.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderResult<T> {
    pub value: T,
    pub correspondence: Correspondence,
    /// All tuple pairs realizing the reported difference; empty when the value is zero.
    pub bottlenecks: Vec<Bottleneck<T>>,
    /// Number of optimal correspondences (exhaustive solver only).
    pub ties: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceReport<T> {
    pub mode: DistanceMode,
    pub solver: Solver,
    /// One entry for `Order` and `Norm`, `K + 1` for `Vector`.
    pub results: Vec<OrderResult<T>>,
    pub caveats: Vec<Caveat>,
}

impl<T: Scalar> DistanceReport<T> {
    /// The distance for single-valued modes, `d^0` for vectors.
    pub fn value(&self) -> T {
        self.results[0].value
    }

    pub fn values(&self) -> Vec<T> {
        self.results.iter().map(|r| r.value).collect()
    }

    pub fn correspondence(&self) -> &Correspondence {
        &self.results[0].correspondence
    }
}

pub(crate) struct Solution<T> {
    pub value: T,
    pub correspondence: Correspondence,
    pub ties: Option<usize>,
}

fn check_classes<T: Scalar>(x: &HighOrderNetwork<T>, y: &HighOrderNetwork<T>) -> Result<()> {
    match (x.class(), y.class()) {
        (NetworkClass::Dissimilarity { .. }, NetworkClass::Proximity { .. })
        | (NetworkClass::Proximity { .. }, NetworkClass::Dissimilarity { .. }) => {
            Err(Error::ClassMismatch(x.class().name(), y.class().name()))
        }
        _ => Ok(()),
    }
}

fn check_inputs<T: Scalar>(x: &HighOrderNetwork<T>, y: &HighOrderNetwork<T>, mode: DistanceMode) -> Result<()> {
    check_classes(x, y)?;
    match mode {
        DistanceMode::Order(k) => {
            let order = x.order().min(y.order());
            if k > order {
                return Err(Error::OrderOutOfRange { k, order });
            }
        }
        DistanceMode::Vector | DistanceMode::Norm(_) => {
            if x.order() != y.order() {
                return Err(Error::OrderMismatch(x.order(), y.order()));
            }
        }
    }
    gamma::check_complete(x)?;
    gamma::check_complete(y)
}

fn caveats<T: Scalar>(x: &HighOrderNetwork<T>, y: &HighOrderNetwork<T>, mode: DistanceMode) -> Vec<Caveat> {
    let mut out = Vec::new();
    match mode {
        DistanceMode::Order(0) => out.push(Caveat::OrderZero),
        DistanceMode::Vector => out.push(Caveat::OrderZero),
        DistanceMode::Norm(_) if x.order() == 0 => out.push(Caveat::NormOrderZero),
        _ => {}
    }
    if x.class().is_general() || y.class().is_general() {
        out.push(Caveat::GeneralClass);
    }
    out
}

/// Minimizes `objective` over correspondences and returns the optimal value
/// and correspondence.
pub fn solve<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    objective: Objective,
    solver: Solver,
) -> Result<(T, Correspondence)> {
    check_inputs(x, y, objective.into())?;
    let s = run(x, y, objective, solver)?;
    Ok((s.value, s.correspondence))
}

/// Exact optimum by branch and bound; accepts any size.
pub fn solve_branch_and_bound<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    objective: Objective,
) -> Result<(T, Correspondence)> {
    solve(x, y, objective, Solver::BranchAndBound)
}

fn run<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    objective: Objective,
    solver: Solver,
) -> Result<Solution<T>> {
    match solver {
        Solver::Exhaustive => exhaustive::solve(x, y, objective),
        Solver::BranchAndBound => branch_bound::solve(x, y, objective),
    }
}

/// Every tuple pair of order `k` whose gap equals `target` under `c`.
pub fn bottlenecks<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    c: &Correspondence,
    k: usize,
    target: T,
) -> Vec<Bottleneck<T>> {
    let pairs = c.pairs();
    let mut out = Vec::new();
    gamma::for_each_pair_set(pairs, k + 1, &mut |_, xm, ym, chosen| {
        let g = gamma::gap(x, y, xm, ym);
        if g == target {
            // pad to a (k+1)-tuple by repeating the last pair
            let mut xs: Vec<usize> = chosen.iter().map(|&i| pairs[i].0).collect();
            let mut ys: Vec<usize> = chosen.iter().map(|&i| pairs[i].1).collect();
            let (lx, ly) = (*xs.last().expect("nonempty"), *ys.last().expect("nonempty"));
            xs.resize(k + 1, lx);
            ys.resize(k + 1, ly);
            out.push(Bottleneck { x: xs, y: ys, order: k, gap: g });
        }
    });
    out
}

fn order_result<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    s: Solution<T>,
    bottleneck_order: usize,
    bottleneck_gap: T,
) -> OrderResult<T> {
    let bottlenecks = if bottleneck_gap > T::zero() {
        bottlenecks(x, y, &s.correspondence, bottleneck_order, bottleneck_gap)
    } else {
        Vec::new()
    };
    OrderResult { value: s.value, correspondence: s.correspondence, bottlenecks, ties: s.ties }
}

/// `d^k(X, Y)`, the `k`-order distance.
pub fn distance_k<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    k: usize,
    solver: Solver,
) -> Result<DistanceReport<T>> {
    let mode = DistanceMode::Order(k);
    check_inputs(x, y, mode)?;
    let s = run(x, y, Objective::Order(k), solver)?;
    let value = s.value;
    Ok(DistanceReport { mode, solver, results: vec![order_result(x, y, s, k, value)], caveats: caveats(x, y, mode) })
}

/// `(d^0, ..., d^K)`, each component with its own optimal correspondence.
pub fn distance_vector<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    solver: Solver,
) -> Result<DistanceReport<T>> {
    let mode = DistanceMode::Vector;
    check_inputs(x, y, mode)?;
    let results = (0..=x.order())
        .map(|k| {
            let s = run(x, y, Objective::Order(k), solver)?;
            let value = s.value;
            Ok(order_result(x, y, s, k, value))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistanceReport { mode, solver, results, caveats: caveats(x, y, mode) })
}

/// `min_C ‖Γ(C)‖_p` with a single correspondence for all orders.
pub fn distance_pnorm<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    p: PNorm,
    solver: Solver,
) -> Result<DistanceReport<T>> {
    let mode = DistanceMode::Norm(p);
    check_inputs(x, y, mode)?;
    let s = run(x, y, Objective::Norm(p), solver)?;
    let order = x.order();
    let top = gamma_vector(x, y, &s.correspondence)?.order(order);
    Ok(DistanceReport { mode, solver, results: vec![order_result(x, y, s, order, top)], caveats: caveats(x, y, mode) })
}

pub fn distance<T: Scalar>(
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
    mode: DistanceMode,
    solver: Solver,
) -> Result<DistanceReport<T>> {
    match mode {
        DistanceMode::Order(k) => distance_k(x, y, k, solver),
        DistanceMode::Vector => distance_vector(x, y, solver),
        DistanceMode::Norm(p) => distance_pnorm(x, y, p, solver),
    }
}

/// Symmetric matrix of pairwise distances with zero diagonal, rows in input
/// order. Off-diagonal entries are computed in parallel on the current
/// rayon pool.
pub fn distance_matrix<T: Scalar>(
    nets: &[HighOrderNetwork<T>],
    objective: Objective,
    solver: Solver,
) -> Result<Vec<Vec<T>>> {
    let first = nets.first().ok_or(Error::NoNetworks)?;
    for net in nets {
        if net.order() != first.order() {
            return Err(Error::OrderMismatch(first.order(), net.order()));
        }
        if std::mem::discriminant(&net.class()) != std::mem::discriminant(&first.class()) {
            return Err(Error::ClassMismatch(first.class().name(), net.class().name()));
        }
        check_inputs(first, net, objective.into())?;
    }
    let n = nets.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values = cells
        .par_iter()
        .map(|&(i, j)| run(&nets[i], &nets[j], objective, solver).map(|s| s.value))
        .collect::<Result<Vec<T>>>()?;
    let mut m = vec![vec![T::zero(); n]; n];
    for (&(i, j), v) in cells.iter().zip(values) {
        m[i][j] = v;
        m[j][i] = v;
    }
    Ok(m)
}
