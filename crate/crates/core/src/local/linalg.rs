//! Linear algebra over a truncated discrete valuation ring.

use super::dvr::Dvr;
use crate::arith::linalg::Matrix;

/// Solution of `A x = b` over `O / π^N` with full minimal-valuation pivoting.
pub struct DvrSolution<E> {
    pub x: Vec<E>,
    /// Sum of pivot valuations, i.e. `v(det A)`; the solution is reliable
    /// modulo `π^(N - loss)`.
    pub loss: usize,
}

/// Solve a square system. Returns `None` when `A` is singular at the working
/// precision or the solution is not integral.
pub fn solve<D: Dvr>(d: &D, a: &Matrix<D::Elem>, b: &[D::Elem]) -> Option<DvrSolution<D::Elem>> {
    let n = a.len();
    let mut m: Matrix<D::Elem> = a.iter().map(|r| r.iter().map(|x| d.reduce(x)).collect()).collect();
    let mut rhs: Vec<D::Elem> = b.iter().map(|x| d.reduce(x)).collect();
    let mut colperm: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if let Some(v) = d.val(&m[i][j]) {
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, pi, pj) = best?;
        m.swap(k, pi);
        rhs.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        colperm.swap(k, pj);
        let unit_inv = d.unit_inv(&d.div_pi(&m[k][k], v))?;
        for i in k + 1..n {
            if d.is_zero(&m[i][k]) {
                continue;
            }
            let factor = d.mul(&d.div_pi(&m[i][k], v), &unit_inv);
            for j in k..n {
                let t = d.mul(&factor, &m[k][j]);
                m[i][j] = d.sub(&m[i][j], &t);
            }
            let t = d.mul(&factor, &rhs[k]);
            rhs[i] = d.sub(&rhs[i], &t);
        }
        pivots.push((v, unit_inv));
    }
    let loss: usize = pivots.iter().map(|(v, _)| *v).sum();
    let mut y = vec![d.zero(); n];
    for k in (0..n).rev() {
        let mut s = rhs[k].clone();
        for j in k + 1..n {
            s = d.sub(&s, &d.mul(&m[k][j], &y[j]));
        }
        let (v, ref u) = pivots[k];
        if let Some(vs) = d.val(&s) {
            // Digits below the accumulated loss are unreliable; only a
            // clearly lower valuation proves non-integrality.
            if vs < v && vs + loss < d.prec() {
                return None;
            }
        }
        y[k] = d.mul(&d.div_pi(&s, v), u);
    }
    let mut x = vec![d.zero(); n];
    for (k, &c) in colperm.iter().enumerate() {
        x[c] = y[k].clone();
    }
    Some(DvrSolution { x, loss })
}
