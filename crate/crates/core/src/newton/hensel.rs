//! Hensel lifting of factorizations over a truncated valuation ring.

use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ring::Ring;
use crate::local::dvr::Dvr;
use crate::local::linalg;
use crate::{Error, Result};

type Res<D> = <<D as Dvr>::Residue as Ring>::Elem;

/// Lowest valuation among the coefficients; `None` for a polynomial that
/// vanishes at the working precision.
pub fn poly_val<D: Dvr>(d: &D, f: &Poly<D::Elem>) -> Option<usize> {
    f.c.iter().filter_map(|a| d.val(a)).min()
}

pub fn reduce_poly<D: Dvr>(d: &D, f: &Poly<D::Elem>) -> Poly<D::Elem> {
    PolyRing::new(d.clone()).from_coeffs(f.c.iter().map(|a| d.reduce(a)).collect())
}

pub fn residue_poly<D: Dvr>(d: &D, f: &Poly<D::Elem>) -> Poly<Res<D>> {
    PolyRing::new(d.residue_field().clone()).from_coeffs(f.c.iter().map(|a| d.residue(a)).collect())
}

pub fn lift_poly<D: Dvr>(d: &D, f: &Poly<Res<D>>) -> Poly<D::Elem> {
    PolyRing::new(d.clone()).from_coeffs(f.c.iter().map(|a| d.lift(a)).collect())
}

/// Quadratic lifting of `f ≡ g h (mod π)` with `g`, `h` monic and coprime
/// modulo `π`, to the precision of `d`.
fn lift_coprime_pair<D: Dvr>(
    d: &D,
    f: &Poly<D::Elem>,
    g0: &Poly<Res<D>>,
    h0: &Poly<Res<D>>,
) -> Result<(Poly<D::Elem>, Poly<D::Elem>)> {
    let kr = PolyRing::new(d.residue_field().clone());
    let (one, s0, t0) = kr.xgcd(g0, h0);
    if one.deg() != Some(0) {
        return Err(Error::NotCoprime);
    }
    let target = d.prec();
    let mut g = lift_poly(d, g0);
    let mut h = lift_poly(d, h0);
    let mut s = lift_poly(d, &s0);
    let mut t = lift_poly(d, &t0);
    let mut k = 1;
    while k < target {
        k = (2 * k).min(target);
        let dk = d.with_prec(k);
        let r = PolyRing::new(dk.clone());
        let fk = reduce_poly(&dk, f);
        let e = r.sub(&fk, &r.mul(&g, &h));
        let (q, rem) = r.divrem_monic(&r.mul(&s, &e), &h);
        let g1 = r.add(&r.add(&g, &r.mul(&t, &e)), &r.mul(&q, &g));
        let h1 = r.add(&h, &rem);
        let b = r.sub(&r.add(&r.mul(&s, &g1), &r.mul(&t, &h1)), &r.one());
        let (c, dd) = r.divrem_monic(&r.mul(&s, &b), &h1);
        s = r.sub(&s, &dd);
        t = r.sub(&r.sub(&t, &r.mul(&t, &b)), &r.mul(&c, &g1));
        g = g1;
        h = h1;
    }
    let r = PolyRing::new(d.clone());
    let g = r.truncate(&g, g0.c.len());
    let h = r.truncate(&h, h0.c.len());
    Ok((g, h))
}

/// Lift a factorization of `f mod π` into pairwise coprime monic factors to
/// the precision of `d`. `f` must be monic.
pub fn multilift<D: Dvr>(d: &D, f: &Poly<D::Elem>, factors: &[Poly<Res<D>>]) -> Result<Vec<Poly<D::Elem>>> {
    match factors.len() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![reduce_poly(d, f)]),
        n => {
            let kr = PolyRing::new(d.residue_field().clone());
            let (left, right) = factors.split_at(n / 2);
            let g0 = left.iter().fold(kr.one(), |acc, p| kr.mul(&acc, p));
            let h0 = right.iter().fold(kr.one(), |acc, p| kr.mul(&acc, p));
            let (g, h) = lift_coprime_pair(d, f, &g0, &h0)?;
            let mut out = multilift(d, &g, left)?;
            out.extend(multilift(d, &h, right)?);
            Ok(out)
        }
    }
}

/// Solve `S h + T g = e` with `deg S < deg g`, `deg T < deg h`.
fn sylvester_solve<D: Dvr>(
    d: &D,
    g: &Poly<D::Elem>,
    h: &Poly<D::Elem>,
    e: &Poly<D::Elem>,
) -> Option<(Poly<D::Elem>, Poly<D::Elem>, usize)> {
    let k = g.deg()?;
    let m = h.deg()?;
    let n = k + m;
    let r = PolyRing::new(d.clone());
    let mut a = vec![vec![d.zero(); n]; n];
    for i in 0..k {
        for (j, c) in h.c.iter().enumerate() {
            a[i + j][i] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.c.iter().enumerate() {
            a[i + j][k + i] = c.clone();
        }
    }
    let b: Vec<D::Elem> = (0..n).map(|i| r.coeff_or_zero(e, i)).collect();
    let sol = linalg::solve(d, &a, &b)?;
    let s = r.from_coeffs(sol.x[..k].to_vec());
    let t = r.from_coeffs(sol.x[k..].to_vec());
    Some((s, t, sol.loss))
}

/// Newton iteration `f = g h` from an approximation that need not be
/// coprime modulo `π`, only close enough relative to the resultant (in the
/// plain or a Newton-polygon weighted sense). Returns the lifted pair and
/// the precision to which `f ≡ g h` holds.
pub fn lift_newton<D: Dvr>(
    d: &D,
    f: &Poly<D::Elem>,
    g0: &Poly<D::Elem>,
    h0: &Poly<D::Elem>,
) -> Result<(Poly<D::Elem>, Poly<D::Elem>, usize)> {
    let r = PolyRing::new(d.clone());
    let (mut g, mut h) = (reduce_poly(d, g0), reduce_poly(d, h0));
    let mut best = 0usize;
    let mut stalls = 0;
    for _ in 0..(4 * d.prec() + 8) {
        let e = r.sub(f, &r.mul(&g, &h));
        let ve = match poly_val(d, &e) {
            None => return Ok((g, h, d.prec())),
            Some(v) => v,
        };
        if ve <= best {
            stalls += 1;
            if stalls > 2 {
                return Ok((g, h, best));
            }
        } else {
            stalls = 0;
            best = ve;
        }
        let (s, t, _) = sylvester_solve(d, &g, &h, &e).ok_or(Error::NotCoprime)?;
        g = r.add(&g, &s);
        h = r.add(&h, &t);
    }
    Ok((g, h, best))
}

/// Lift `F ≡ g₀ h₀` to `F ≡ g h (mod π^target)`.
///
/// Requires `v(res(g₀, h₀))` strictly below half of `v(F - g₀ h₀)`; `g₀`
/// and `h₀` monic. The ring `d` must carry at least `target` digits of `F`.
pub fn hensel_lift<D: Dvr>(
    d: &D,
    f: &Poly<D::Elem>,
    g0: &Poly<D::Elem>,
    h0: &Poly<D::Elem>,
    target: usize,
) -> Result<(Poly<D::Elem>, Poly<D::Elem>)> {
    let r = PolyRing::new(d.clone());
    let e0 = r.sub(f, &r.mul(g0, h0));
    let agree = poly_val(d, &e0).unwrap_or(d.prec());
    let res = crate::arith::linalg::det(d, &sylvester_matrix(d, g0, h0));
    let vres = d.val(&res).ok_or(Error::NotCoprime)?;
    if 2 * vres >= agree {
        return Err(Error::NotCoprime);
    }
    let work = d.with_prec(target.max(d.prec()) + vres);
    let (g, h, got) = lift_newton(&work, f, g0, h0)?;
    if got < target {
        return Err(Error::IndeterminateValuation);
    }
    let dt = d.with_prec(target);
    Ok((reduce_poly(&dt, &g), reduce_poly(&dt, &h)))
}

/// Sylvester matrix whose determinant is `res(g, h)` up to sign convention
/// `res(g, h) = lc(g)^{deg h} ∏ h(α)`.
pub fn sylvester_matrix<R: Ring>(r: &R, g: &Poly<R::Elem>, h: &Poly<R::Elem>) -> Vec<Vec<R::Elem>> {
    let m = g.deg().unwrap_or(0);
    let n = h.deg().unwrap_or(0);
    let size = m + n;
    let mut a = vec![vec![r.zero(); size]; size];
    for i in 0..n {
        for (j, c) in g.c.iter().rev().enumerate() {
            a[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in h.c.iter().rev().enumerate() {
            a[n + i][i + j] = c.clone();
        }
    }
    a
}
