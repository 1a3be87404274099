#![allow(clippy::needless_range_loop)]

//! Dense real symmetric eigensolver: Householder reduction to tridiagonal
//! form followed by the implicit QL iteration with Wilkinson-style shifts.

use crate::error::{domain, integrity, Result};

/// Relative asymmetry tolerated on input.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Row-major square matrix that is expected to be symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..dim * dim).map(|idx| f(idx / dim, idx % dim)).collect();
        Self { dim, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(domain("matrix rows must all have length equal to the row count"));
        }
        Ok(Self { dim, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn check_symmetric(&self) -> Result<()> {
        let tol = SYMMETRY_TOL * self.max_abs();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let gap = (self.get(i, j) - self.get(j, i)).abs();
                if gap > tol || gap.is_nan() {
                    return Err(integrity(format!("matrix is not symmetric at ({i},{j}): gap {gap:e}")));
                }
            }
        }
        Ok(())
    }
}

/// Eigenvalues in ascending order; column `j` of `vectors` (row-major) is the
/// eigenvector for `values[j]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: SymMatrix,
}

impl SymmetricEigen {
    /// `Q diag(values) Q^T`.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.values.len();
        let q = &self.vectors;
        SymMatrix::from_fn(n, |i, j| (0..n).map(|k| q.get(i, k) * self.values[k] * q.get(j, k)).sum())
    }
}

pub fn symmetric_eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    m.check_symmetric()?;
    Ok(decompose(m, false).0)
}

pub fn symmetric_eigen(m: &SymMatrix) -> Result<SymmetricEigen> {
    m.check_symmetric()?;
    let (values, vectors) = decompose(m, true);
    Ok(SymmetricEigen { values, vectors })
}

fn decompose(m: &SymMatrix, want_vectors: bool) -> (Vec<f64>, SymMatrix) {
    let n = m.dim;
    if n == 0 {
        return (Vec::new(), SymMatrix::zeros(0));
    }
    // Only the lower triangle is read; mirror it so the reduction sees an
    // exactly symmetric matrix.
    let mut v = SymMatrix::from_fn(n, |i, j| if i >= j { m.get(i, j) } else { m.get(j, i) });
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e, want_vectors);
    ql_implicit(&mut v, &mut d, &mut e, want_vectors);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = if want_vectors {
        SymMatrix::from_fn(n, |i, j| v.get(i, order[j]))
    } else {
        SymMatrix::zeros(0)
    };
    (values, vectors)
}

/// Householder reduction. On return `d` holds the diagonal, `e[1..]` the
/// subdiagonal, and `v` the accumulated orthogonal transform when requested.
fn tridiagonalize(v: &mut SymMatrix, d: &mut [f64], e: &mut [f64], want_vectors: bool) {
    let n = v.dim;
    for j in 0..n {
        d[j] = v.get(n - 1, j);
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v.get(i - 1, j);
                v.set(i, j, 0.0);
                v.set(j, i, 0.0);
            }
        } else {
            for x in d[..i].iter_mut() {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let g = if f > 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].iter_mut().for_each(|x| *x = 0.0);

            for j in 0..i {
                let f = d[j];
                v.set(j, i, f);
                let mut g = e[j] + v.get(j, j) * f;
                for k in j + 1..i {
                    let vkj = v.get(k, j);
                    g += vkj * d[k];
                    e[k] += vkj * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    let updated = v.get(k, j) - (f * e[k] + g * d[k]);
                    v.set(k, j, updated);
                }
                d[j] = v.get(i - 1, j);
                v.set(i, j, 0.0);
            }
        }
        d[i] = h;
    }

    if !want_vectors {
        // The transformed diagonal sits on the diagonal of the work matrix.
        for j in 0..n {
            d[j] = v.get(j, j);
        }
        e[0] = 0.0;
        return;
    }

    for i in 0..n - 1 {
        let vii = v.get(i, i);
        v.set(n - 1, i, vii);
        v.set(i, i, 1.0);
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v.get(k, i + 1) / h;
            }
            for j in 0..=i {
                let g: f64 = (0..=i).map(|k| v.get(k, i + 1) * v.get(k, j)).sum();
                for k in 0..=i {
                    let updated = v.get(k, j) - g * d[k];
                    v.set(k, j, updated);
                }
            }
        }
        for k in 0..=i {
            v.set(k, i + 1, 0.0);
        }
    }
    for j in 0..n {
        d[j] = v.get(n - 1, j);
        v.set(n - 1, j, 0.0);
    }
    v.set(n - 1, n - 1, 1.0);
    e[0] = 0.0;
}

/// Implicit QL on the tridiagonal `(d, e)`.
fn ql_implicit(v: &mut SymMatrix, d: &mut [f64], e: &mut [f64], want_vectors: bool) {
    let n = v.dim.max(d.len());
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in d[l + 2..n].iter_mut() {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if want_vectors {
                        for k in 0..n {
                            let h = v.get(k, i + 1);
                            let vki = v.get(k, i);
                            v.set(k, i + 1, s * vki + c * h);
                            v.set(k, i, c * vki - s * h);
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}
