//! Factorization over a complete discretely valued field by Newton polygons,
//! residual polynomials and Hensel lifting.
//!
//! The input is a monic polynomial with integral coefficients known modulo
//! `π^N`. Distinct slopes and distinct residual factors are separated by
//! Newton lifting; a cluster whose residual is a power of a linear factor at
//! an integral slope is recentered by `x -> x + c π^h` and refined. Any other
//! repeated residual factor is reported as [`Error::NotRegular`].

use super::hensel::{lift_newton, poly_val, sylvester_matrix};
use super::polygon::{newton_polygon, Segment};
use crate::arith::factor::Factorable;
use crate::arith::linalg;
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::rational::Rational;
use crate::arith::ring::Ring;
use crate::local::dvr::Dvr;
use crate::{Error, Result};
use num_bigint::BigInt;

type Res<D> = <<D as Dvr>::Residue as Ring>::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactorMethod {
    /// Certified by a one-sided Newton polygon with an irreducible residual.
    NewtonPolygon,
    /// Certified by a maximal order of the component.
    MaximalOrder,
}

/// One irreducible factor over the completion.
#[derive(Clone, Debug)]
pub struct LocalFactor<D: Dvr> {
    /// Monic, integral, known modulo `π^prec`.
    pub poly: Poly<D::Elem>,
    pub e: usize,
    pub f: usize,
    pub degree: usize,
    /// Valuation of every root of `poly`.
    pub slope: Rational,
    /// `poly(x + center)` has a one-sided Newton polygon of slope
    /// `center_slope` whose denominator is `e` (Newton factors only).
    pub center: D::Elem,
    pub center_slope: Rational,
    /// Irreducible residual polynomial of the recentered factor.
    pub residual: Option<Poly<Res<D>>>,
    pub prec: usize,
    pub method: FactorMethod,
}

/// Residual polynomial of `f` along a segment, in `y = x^e / π^h`.
pub fn residual_polynomial<D: Dvr>(d: &D, f: &Poly<D::Elem>, s: &Segment) -> Poly<Res<D>> {
    let kr = PolyRing::new(d.residue_field().clone());
    let k = d.residue_field();
    let len = s.length() / s.e;
    let coeffs = (0..=len)
        .map(|j| {
            let i = s.start.0 + j * s.e;
            let line = s.start.1 - j as i64 * s.h;
            let a = &f.c[i];
            match d.val(a) {
                Some(v) if v as i64 == line => d.residue(&d.div_pi(a, v)),
                _ => k.zero(),
            }
        })
        .collect();
    kr.from_coeffs(coeffs)
}

/// `π^(h·deg ψ) ψ(x^e / π^h)` for a monic `ψ`: a monic integral polynomial
/// with one slope `h/e` and residual `ψ`.
pub fn residual_lift<D: Dvr>(d: &D, psi: &Poly<Res<D>>, h: i64, e: usize) -> Poly<D::Elem> {
    let r = PolyRing::new(d.clone());
    let m = psi.deg().unwrap();
    let mut c = vec![d.zero(); m * e + 1];
    for (j, a) in psi.c.iter().enumerate() {
        let shift = h * (m - j) as i64;
        c[j * e] = if shift as usize >= d.prec() { d.zero() } else { d.mul_pi(&d.lift(a), shift as usize) };
    }
    r.from_coeffs(c)
}

/// Valuation of the resultant of two monic polynomials.
pub fn resultant_valuation<D: Dvr>(d: &D, g: &Poly<D::Elem>, h: &Poly<D::Elem>) -> Option<usize> {
    d.val(&linalg::det(d, &sylvester_matrix(d, g, h)))
}

/// Lift `f ≈ g0 h0` and return the factors with the precision to which each
/// is reliable.
fn lift_pair<D: Dvr>(d: &D, f: &Poly<D::Elem>, g0: &Poly<D::Elem>, h0: &Poly<D::Elem>) -> Result<(Poly<D::Elem>, Poly<D::Elem>, usize)> {
    let (g, h, got) = lift_newton(d, f, g0, h0)?;
    let vres = resultant_valuation(d, &g, &h).ok_or(Error::IndeterminateValuation)?;
    match got.checked_sub(vres) {
        Some(p) if p >= 1 => Ok((g, h, p)),
        _ => Err(Error::IndeterminateValuation),
    }
}

fn root_valuation<D: Dvr>(d: &D, g: &Poly<D::Elem>) -> Result<Rational> {
    let v = d.val(&g.c[0]).ok_or(Error::IndeterminateValuation)?;
    Ok(Rational::new(BigInt::from(v), BigInt::from(g.deg().unwrap())))
}

/// Factor a monic integral squarefree polynomial over the completion.
pub fn local_factor<D>(d: &D, f: &Poly<D::Elem>) -> Result<Vec<LocalFactor<D>>>
where
    D: Dvr,
    D::Residue: Factorable,
{
    let n = f.deg().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if !d.is_one(f.lc().unwrap()) {
        return Err(Error::InvalidInput("local_factor needs a monic polynomial".into()));
    }
    if poly_val(d, &PolyRing::new(d.clone()).truncate(f, n)).is_none() && n > 0 {
        return Err(Error::IndeterminateValuation);
    }
    let mut out = Vec::new();
    let budget = n * (d.prec() + 2);
    split(d, f, &d.zero(), budget, &mut out)?;
    out.sort_by(|a, b| {
        (&a.slope, &a.residual, &a.poly).cmp(&(&b.slope, &b.residual, &b.poly))
    });
    Ok(out)
}

fn split<D>(d: &D, f: &Poly<D::Elem>, center: &D::Elem, budget: usize, out: &mut Vec<LocalFactor<D>>) -> Result<()>
where
    D: Dvr,
    D::Residue: Factorable,
{
    let r = PolyRing::new(d.clone());
    if f.deg() == Some(1) {
        let back = r.taylor_shift(f, &d.neg(center));
        let local = d.val(&f.c[0]).unwrap_or(d.prec());
        out.push(LocalFactor {
            slope: root_valuation(d, &back)?,
            poly: back,
            e: 1,
            f: 1,
            degree: 1,
            center: center.clone(),
            center_slope: Rational::from_integer(BigInt::from(local)),
            residual: None,
            prec: d.prec(),
            method: FactorMethod::NewtonPolygon,
        });
        return Ok(());
    }
    if d.val(&f.c[0]).is_none() {
        // A root within π^N of the center: split off the linear factor.
        let v1 = d.val(&f.c[1]).ok_or(Error::IndeterminateValuation)?;
        if 2 * v1 + 1 >= d.prec() {
            return Err(Error::IndeterminateValuation);
        }
        let h0 = r.from_coeffs(f.c[1..].to_vec());
        let (g, h, p) = lift_pair(d, f, &r.x(), &h0)?;
        let dp = d.with_prec(p);
        split(&dp, &g, center, budget, out)?;
        return split(&dp, &h, center, budget, out);
    }
    let np = newton_polygon(d, f)?;
    if np.segments.len() > 1 {
        let k = np.vertices[1].0;
        let ak = &f.c[k];
        let g0 = r.from_coeffs((0..=k).map(|i| d.div_exact(&f.c[i], ak).ok_or(Error::IndeterminateValuation)).collect::<Result<_>>()?);
        let h0 = r.from_coeffs(f.c[k..].to_vec());
        let (g, h, p) = lift_pair(d, f, &g0, &h0)?;
        let dp = d.with_prec(p);
        split(&dp, &g, center, budget, out)?;
        return split(&dp, &h, center, budget, out);
    }
    let seg = &np.segments[0];
    let kr = PolyRing::new(d.residue_field().clone());
    let res = residual_polynomial(d, f, seg);
    let facs = d.residue_field().factor(&res)?;
    if facs.len() > 1 {
        // Peel off one residual factor at a time.
        let (psi, k) = &facs[0];
        let g0 = residual_lift(d, &kr.pow(psi, *k as u64), seg.h, seg.e);
        let rest = facs[1..].iter().fold(kr.one(), |acc, (q, m)| kr.mul(&acc, &kr.pow(q, *m as u64)));
        let h0 = residual_lift(d, &rest, seg.h, seg.e);
        let (g, h, p) = lift_pair(d, f, &g0, &h0)?;
        let dp = d.with_prec(p);
        split(&dp, &g, center, budget, out)?;
        return split(&dp, &h, center, budget, out);
    }
    let (psi, k) = &facs[0];
    if *k == 1 {
        let n = f.deg().unwrap();
        let back = r.taylor_shift(f, &d.neg(center));
        out.push(LocalFactor {
            slope: root_valuation(d, &back)?,
            poly: back,
            e: seg.e,
            f: psi.deg().unwrap(),
            degree: n,
            center: center.clone(),
            center_slope: seg.root_valuation.clone(),
            residual: Some(psi.clone()),
            prec: d.prec(),
            method: FactorMethod::NewtonPolygon,
        });
        return Ok(());
    }
    if seg.e == 1 && psi.deg() == Some(1) && budget > 0 {
        // Every root is c π^h + (higher order): recenter there.
        let c = d.residue_field().neg(&psi.c[0]);
        let h = seg.h as usize;
        if h >= d.prec() {
            return Err(Error::IndeterminateValuation);
        }
        let tau = d.mul_pi(&d.lift(&c), h);
        let shifted = r.taylor_shift(f, &tau);
        return split(d, &shifted, &d.add(center, &tau), budget - 1, out);
    }
    Err(Error::NotRegular)
}
