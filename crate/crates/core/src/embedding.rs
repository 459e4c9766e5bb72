//! Euclidean embeddings of distance matrices by stress majorization.
//!
//! The objective is the raw stress `sum_{i<j} (D_ij - |z_i - z_j|)^2`.
//! Classical scaling gives the starting configuration and SMACOF (Guttman
//! transform) iterations decrease the stress monotonically.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io::{csv_field, LabeledMatrix};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbedOptions {
    pub dims: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Stop once the relative stress decrease of one iteration is below this.
    pub tol: f64,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions { dims: 2, seed: 0, max_iter: 1000, tol: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Embedding {
    pub labels: Vec<String>,
    pub coords: Vec<Vec<f64>>,
    pub stress: f64,
    pub seed: u64,
    pub iterations: usize,
    /// Stress of the initial configuration followed by one entry per iteration.
    #[serde(skip)]
    pub history: Vec<f64>,
}

impl Embedding {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("embedding serializes");
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let dims = self.coords.first().map_or(0, Vec::len);
        let mut out = String::from("label");
        for d in 0..dims {
            out.push_str(&format!(",x{}", d + 1));
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.coords) {
            out.push_str(&csv_field(l));
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Raw stress of `coords` against the target distances `d`.
pub fn stress(d: &[Vec<f64>], coords: &[Vec<f64>]) -> f64 {
    let n = d.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let e = d[i][j] - dist(&coords[i], &coords[j]);
            s += e * e;
        }
    }
    s
}

/// Classical (Torgerson) scaling: top eigenvectors of the double-centered
/// squared distance matrix, scaled by the root of their eigenvalues.
/// Negative eigenvalues contribute zero columns.
pub fn classical_scaling(d: &[Vec<f64>], dims: usize) -> Vec<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Vec::new();
    }
    let sq = DMatrix::from_fn(n, n, |i, j| d[i][j] * d[i][j]);
    let row_means: Vec<f64> = (0..n).map(|i| sq.row(i).sum() / n as f64).collect();
    let mean = row_means.iter().sum::<f64>() / n as f64;
    let b = DMatrix::from_fn(n, n, |i, j| -0.5 * (sq[(i, j)] - row_means[i] - row_means[j] + mean));
    let eig = SymmetricEigen::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let mut coords = vec![vec![0.0; dims]; n];
    for (c, &idx) in order.iter().take(dims).enumerate() {
        let lambda = eig.eigenvalues[idx];
        if lambda <= 0.0 {
            continue;
        }
        let v = eig.eigenvectors.column(idx);
        // fix the sign so the output does not depend on the solver's choice
        let pivot = (0..n).max_by(|&a, &b| v[a].abs().total_cmp(&v[b].abs()).then(b.cmp(&a))).unwrap_or(0);
        let sign = if v[pivot] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            coords[i][c] = sign * v[i] * lambda.sqrt();
        }
    }
    coords
}

/// One Guttman transform: `X <- B(X) X / n`.
fn guttman(d: &[Vec<f64>], x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = d.len();
    let dims = x[0].len();
    let mut out = vec![vec![0.0; dims]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let e = dist(&x[i], &x[j]);
            if e <= 0.0 {
                continue;
            }
            let w = d[i][j] / e;
            for c in 0..dims {
                out[i][c] += w * (x[i][c] - x[j][c]);
            }
        }
        for v in &mut out[i] {
            *v /= n as f64;
        }
    }
    out
}

fn center(x: &mut [Vec<f64>]) {
    let n = x.len() as f64;
    let dims = x.first().map_or(0, Vec::len);
    for c in 0..dims {
        let m = x.iter().map(|r| r[c]).sum::<f64>() / n;
        for r in x.iter_mut() {
            r[c] -= m;
        }
    }
}

/// Whether two points that should be apart sit on top of each other.
fn degenerate(d: &[Vec<f64>], x: &[Vec<f64>]) -> bool {
    let n = d.len();
    (0..n).any(|i| (i + 1..n).any(|j| d[i][j] > 0.0 && dist(&x[i], &x[j]) < 1e-12 * d[i][j].max(1.0)))
}

pub fn mds_embed(matrix: &LabeledMatrix, options: &EmbedOptions) -> Result<Embedding> {
    matrix.check()?;
    if options.dims == 0 {
        return Err(Error::InvalidMatrix("embedding dimension must be positive".into()));
    }
    let d = &matrix.matrix;
    let n = d.len();
    let mut x = classical_scaling(d, options.dims);
    if n > 0 && degenerate(d, &x) {
        let scale = 1e-3 * d.iter().flatten().copied().fold(0.0, f64::max);
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for row in x.iter_mut() {
            for v in row.iter_mut() {
                *v += scale * rng.random_range(-1.0..=1.0);
            }
        }
    }
    center(&mut x);

    let mut current = stress(d, &x);
    let mut history = vec![current];
    let mut iterations = 0;
    while iterations < options.max_iter && current > 0.0 {
        let next = guttman(d, &x);
        let s = stress(d, &next);
        iterations += 1;
        if s > current {
            // rounding noise at a fixed point; keep the better configuration
            history.push(current);
            break;
        }
        let decrease = (current - s) / current;
        x = next;
        current = s;
        history.push(s);
        if decrease < options.tol {
            break;
        }
    }
    center(&mut x);
    let stress = stress(d, &x);
    Ok(Embedding { labels: matrix.labels.clone(), coords: x, stress, seed: options.seed, iterations, history })
}
