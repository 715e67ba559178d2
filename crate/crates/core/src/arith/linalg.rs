//! Dense linear algebra: row reduction over fields and a division-free
//! characteristic polynomial over arbitrary commutative rings.

use super::ring::{Field, Ring};

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(r, k);
        let inv = f.inv(&m[r][c]).unwrap();
        for j in c..cols {
            m[r][j] = f.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&factor, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&a[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Basis of the left kernel `{x : x M = 0}`.
pub fn left_kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let t: Matrix<F::Elem> = (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect();
    kernel(f, &t, rows)
}

/// Solve `x M = b` for a row vector `x`, if solvable.
pub fn solve_left<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let rows = m.len();
    let cols = b.len();
    // Columns of the transposed system, augmented with b.
    let mut a: Matrix<F::Elem> = (0..cols)
        .map(|j| {
            let mut row: Vec<F::Elem> = (0..rows).map(|i| m[i][j].clone()).collect();
            row.push(b[j].clone());
            row
        })
        .collect();
    let pivots = rref(f, &mut a);
    if pivots.contains(&rows) {
        return None;
    }
    let mut x = vec![f.zero(); rows];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][rows].clone();
    }
    Some(x)
}

/// Characteristic polynomial `det(T I - M)` by Berkowitz' algorithm, using
/// only ring operations. Coefficients low degree first.
pub fn charpoly<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let n = m.len();
    // v holds the coefficients (high degree first) of the current charpoly.
    let mut v = vec![r.one(), r.neg(&m[0].first().cloned().unwrap_or_else(|| r.zero()))];
    if n == 0 {
        return vec![r.one()];
    }
    for k in 1..n {
        // Partition the leading (k+1)x(k+1) block.
        let row: Vec<R::Elem> = (0..k).map(|j| m[k][j].clone()).collect();
        let col: Vec<R::Elem> = (0..k).map(|i| m[i][k].clone()).collect();
        let akk = m[k][k].clone();
        // Toeplitz column: 1, -a_kk, -R C, -R A C, ..., -R A^{k-1} C.
        let mut t = Vec::with_capacity(k + 2);
        t.push(r.one());
        t.push(r.neg(&akk));
        let mut cur = col.clone();
        for _ in 0..k {
            let dot = row.iter().zip(&cur).fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)));
            t.push(r.neg(&dot));
            cur = (0..k)
                .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&m[i][j], &cur[j]))))
                .collect();
        }
        // New v = T * v where T is lower-triangular Toeplitz of size (k+2)x(k+1).
        let mut nv = vec![r.zero(); k + 2];
        for (i, slot) in nv.iter_mut().enumerate() {
            for j in 0..=k.min(i) {
                if i - j < t.len() {
                    *slot = r.add(slot, &r.mul(&t[i - j], &v[j]));
                }
            }
        }
        v = nv;
    }
    v.reverse();
    v
}

/// Determinant through the characteristic polynomial.
pub fn det<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.len();
    let c = charpoly(r, m);
    if n % 2 == 0 {
        c[0].clone()
    } else {
        r.neg(&c[0])
    }
}

/// Minimal polynomial of `a` in an algebra, given the multiplication map on
/// coordinate vectors and the identity vector. Coefficients low first, monic.
pub fn minpoly_in_algebra<F: Field>(
    f: &F,
    one: &[F::Elem],
    a: &[F::Elem],
    mul: impl Fn(&[F::Elem], &[F::Elem]) -> Vec<F::Elem>,
) -> Vec<F::Elem> {
    let mut powers: Vec<Vec<F::Elem>> = vec![one.to_vec()];
    loop {
        let next = mul(powers.last().unwrap(), a);
        if let Some(x) = solve_left(f, &powers, &next) {
            let mut c: Vec<F::Elem> = x.iter().map(|e| f.neg(e)).collect();
            c.push(f.one());
            return c;
        }
        powers.push(next);
    }
}
