//! Finite field extensions of a base completion and their valuation rings.
//!
//! `K̂[y]/(h)` for an irreducible monic integral `h` is modelled through the
//! maximal order of that algebra: elements are coordinate vectors in an
//! integral basis, and the ring is a [`Dvr`] in its own uniformizer `Π` with
//! residue field `κ[z]/(ψ)`. Valuations of the base are recovered by
//! `v_K = v_Π / e`.

use super::dvr::Dvr;
use crate::arith::algext::AlgExt;
use crate::arith::factor::Factorable;
use crate::arith::linalg::{self, Matrix};
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::rational::Rational;
use crate::arith::ring::{Field, Ring};
use crate::order::Order;
use crate::{Error, Result};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

type Res<D> = <<D as Dvr>::Residue as Ring>::Elem;

struct ExtData<D: Dvr> {
    order: Order<D>,
    n: usize,
    e: usize,
    f: usize,
    residue: AlgExt<D::Residue>,
    pi: Vec<D::Elem>,
    /// `π / Π`.
    rho: Vec<D::Elem>,
    /// `Π^e / π` and its inverse.
    eps: Vec<D::Elem>,
    eps_inv: Vec<D::Elem>,
    /// `γ^j` for `j < f`, where the residue of `γ` generates the residue field.
    gamma_pows: Vec<Vec<D::Elem>>,
    /// Inverse of the change of basis `[γ^j | basis of ΠO/πO]` modulo `π`.
    res_map: Matrix<Res<D>>,
    /// Largest base precision at which the tables are reliable.
    capacity: usize,
}

/// The valuation ring of a finite extension, truncated modulo `Π^N`.
pub struct ExtDvr<D: Dvr> {
    data: Arc<ExtData<D>>,
    base: D,
    prec: usize,
}

impl<D: Dvr> Clone for ExtDvr<D> {
    fn clone(&self) -> Self {
        ExtDvr { data: self.data.clone(), base: self.base.clone(), prec: self.prec }
    }
}

impl<D: Dvr> fmt::Debug for ExtDvr<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtDvr(n = {}, e = {}, f = {}, prec = {})", self.data.n, self.data.e, self.data.f, self.prec)
    }
}

fn mat_vec<R: Ring>(r: &R, m: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    m.iter().map(|row| row.iter().zip(v).fold(r.zero(), |acc, (a, b)| r.add(&acc, &r.mul(a, b)))).collect()
}

impl<D: Dvr> ExtDvr<D>
where
    D::Residue: Factorable,
{
    /// Valuation ring of `K̂[y]/(h)`; `h` must be irreducible over `K̂`.
    pub fn new(d: &D, h: &Poly<D::Elem>, seed: u64) -> Result<Self> {
        let order = Order::maximal(d, h)?;
        let n = order.degree();
        let k = d.residue_field().clone();
        let rad = order.residue_radical();
        let f = n - rad.len();
        if f == 0 || n % f != 0 {
            return Err(Error::Internal("residue algebra of a field is not local".into()));
        }
        let e = n / f;
        let capacity = d.prec().saturating_sub(2 * order.delta() + 1);
        if capacity < 2 {
            return Err(Error::IndeterminateValuation);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let one = order.one();
        let mut data = ExtData {
            order,
            n,
            e,
            f,
            residue: AlgExt::new(k.clone(), PolyRing::new(k.clone()).x(), "z"),
            pi: Vec::new(),
            rho: Vec::new(),
            eps: one.clone(),
            eps_inv: one.clone(),
            gamma_pows: vec![one.clone()],
            res_map: Vec::new(),
            capacity,
        };
        let rt = data.order.residue_table();
        let res_mul = |a: &[Res<D>], b: &[Res<D>]| -> Vec<Res<D>> {
            let mut out = vec![k.zero(); n];
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    let c = k.mul(ai, bj);
                    for l in 0..n {
                        out[l] = k.add(&out[l], &k.mul(&c, &rt[i][j][l]));
                    }
                }
            }
            out
        };
        // Residue field generator.
        let one_bar: Vec<Res<D>> = one.iter().map(|x| d.residue(x)).collect();
        if f > 1 {
            let kr = PolyRing::new(k.clone());
            let mut found = None;
            for _ in 0..400 {
                let a: Vec<Res<D>> = (0..n).map(|_| k.random(&mut rng)).collect();
                let mu = kr.from_coeffs(linalg::minpoly_in_algebra(&k, &one_bar, &a, |x, y| res_mul(x, y)));
                let facs = k.factor(&mu)?;
                if facs.len() == 1 && facs[0].0.deg() == Some(f) {
                    found = Some((a, facs[0].0.clone()));
                    break;
                }
            }
            let (a, psi) = found.ok_or_else(|| Error::Internal("no residue field generator found".into()))?;
            let g: Vec<D::Elem> = a.iter().map(|x| d.lift(x)).collect();
            let mut pows = vec![one.clone()];
            for _ in 1..f {
                pows.push(data.order.mul(pows.last().unwrap(), &g));
            }
            data.gamma_pows = pows;
            data.residue = AlgExt::new(k.clone(), psi, "z");
        } else {
            data.residue = AlgExt::new(k.clone(), PolyRing::new(k.clone()).x(), "z");
        }
        let mut cols: Vec<Vec<Res<D>>> = data.gamma_pows.iter().map(|g| g.iter().map(|x| d.residue(x)).collect()).collect();
        cols.extend(rad.iter().cloned());
        let bmat: Matrix<Res<D>> = (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect();
        data.res_map = invert(&k, &bmat).ok_or_else(|| Error::Internal("residue basis is singular".into()))?;
        // Uniformizer.
        let pi_base: Vec<D::Elem> = one.iter().map(|x| d.mul_pi(x, 1)).collect();
        if e == 1 {
            data.rho = one.clone();
            data.pi = pi_base;
        } else {
            let mut found = None;
            let lifts: Vec<Vec<D::Elem>> = rad.iter().map(|v| v.iter().map(|x| d.lift(x)).collect()).collect();
            for attempt in 0..400 {
                let cand: Vec<D::Elem> = if attempt < lifts.len() {
                    lifts[attempt].clone()
                } else {
                    let mut acc = vec![d.zero(); n];
                    for l in &lifts {
                        let c = d.lift(&k.random(&mut rng));
                        for (a, b) in acc.iter_mut().zip(l) {
                            *a = d.add(a, &d.mul(&c, b));
                        }
                    }
                    acc
                };
                let nm = linalg::det(d, &mul_matrix(&data.order, &cand));
                if d.val(&nm) == Some(f) {
                    found = Some(cand);
                    break;
                }
            }
            let pi = found.ok_or_else(|| Error::Internal("no uniformizer found".into()))?;
            // Π^e = π ε with ε a unit; ρ = Π^(e-1) ε^(-1).
            let mut pe = one.clone();
            for _ in 0..e {
                pe = data.order.mul(&pe, &pi);
            }
            let eps: Vec<D::Elem> = pe.iter().map(|x| d.div_pi(x, 1)).collect();
            let sol = crate::local::linalg::solve(d, &mul_matrix(&data.order, &eps), &one).ok_or(Error::IndeterminateValuation)?;
            data.eps = eps;
            data.eps_inv = sol.x.clone();
            let mut rho = sol.x;
            for _ in 0..e - 1 {
                rho = data.order.mul(&rho, &pi);
            }
            data.pi = pi;
            data.rho = rho;
        }
        let prec = e * capacity;
        Ok(ExtDvr { base: d.with_prec(capacity), data: Arc::new(data), prec })
    }
}

/// Matrix of multiplication by `a` in order coordinates (columns are images).
fn mul_matrix<D: Dvr>(o: &Order<D>, a: &[D::Elem]) -> Matrix<D::Elem>
where
    D::Residue: Factorable,
{
    let n = o.degree();
    let cols: Vec<Vec<D::Elem>> = (0..n)
        .map(|i| o.mul(a, &(0..n).map(|j| if i == j { o.ring().one() } else { o.ring().zero() }).collect::<Vec<_>>()))
        .collect();
    (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
}

fn invert<F: Field>(k: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            r
        })
        .collect();
    let piv = linalg::rref(k, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl<D: Dvr> ExtDvr<D>
where
    D::Residue: Factorable,
{
    pub fn ramification(&self) -> usize {
        self.data.e
    }

    pub fn residue_degree(&self) -> usize {
        self.data.f
    }

    pub fn degree(&self) -> usize {
        self.data.n
    }

    pub fn base(&self) -> &D {
        &self.base
    }

    pub fn order(&self) -> &Order<D> {
        &self.data.order
    }

    /// Image of a base ring element.
    pub fn embed(&self, a: &D::Elem) -> Vec<D::Elem> {
        self.data.order.one().iter().map(|x| self.base.mul(x, a)).collect()
    }

    /// Image of `num(y)` for a polynomial over the base ring.
    pub fn from_power(&self, num: &[D::Elem]) -> Result<Vec<D::Elem>> {
        let c = self.data.order.coords(num, 0).ok_or(Error::IndeterminateValuation)?;
        Ok(self.reduce_coords(&c))
    }

    fn reduce_coords(&self, a: &[D::Elem]) -> Vec<D::Elem> {
        a.iter().map(|x| self.base.reduce(x)).collect()
    }

    fn residue_coords(&self, a: &[D::Elem]) -> Vec<Res<D>> {
        let k = self.base.residue_field();
        let bar: Vec<Res<D>> = a.iter().map(|x| self.base.residue(x)).collect();
        mat_vec(k, &self.data.res_map, &bar)[..self.data.f].to_vec()
    }

    fn in_max_ideal(&self, a: &[D::Elem]) -> bool {
        let k = self.base.residue_field();
        self.residue_coords(a).iter().all(|x| k.is_zero(x))
    }

    /// `a · ρ / π`, i.e. `a / Π` for `a ∈ ΠO`.
    fn div_uniformizer(&self, a: &[D::Elem]) -> Vec<D::Elem> {
        if self.data.e == 1 {
            return a.iter().map(|x| self.base.div_pi(x, 1)).collect();
        }
        let m = self.data.order.mul(a, &self.data.rho);
        m.iter().map(|x| self.base.div_pi(&self.base.reduce(x), 1)).collect()
    }

    /// Exact valuation in units of `Π`, ignoring the ring precision.
    fn raw_val(&self, a: &[D::Elem]) -> Option<usize> {
        let b = &self.base;
        let k = a.iter().filter_map(|x| b.val(x)).min()?;
        let mut cur: Vec<D::Elem> = a.iter().map(|x| b.div_pi(x, k)).collect();
        let mut v = self.data.e * k;
        for _ in 0..self.data.e {
            if !self.in_max_ideal(&cur) {
                return Some(v);
            }
            cur = self.div_uniformizer(&cur);
            v += 1;
        }
        None
    }
}

impl<D: Dvr> Ring for ExtDvr<D>
where
    D::Residue: Factorable,
{
    type Elem = Vec<D::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.data.n]
    }
    fn one(&self) -> Self::Elem {
        self.reduce_coords(&self.data.order.one())
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base.from_i64(n))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce_coords(&self.data.order.mul(a, b))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.val(a).is_none()
    }
}

impl<D: Dvr> Dvr for ExtDvr<D>
where
    D::Residue: Factorable,
{
    type Residue = AlgExt<D::Residue>;

    fn prec(&self) -> usize {
        self.prec
    }
    fn with_prec(&self, n: usize) -> Self {
        let e = self.data.e;
        let base_prec = n.div_ceil(e).min(self.data.capacity).max(1);
        ExtDvr { data: self.data.clone(), base: self.base.with_prec(base_prec), prec: n.min(e * self.data.capacity) }
    }
    fn residue_field(&self) -> &AlgExt<D::Residue> {
        &self.data.residue
    }
    fn val(&self, a: &Self::Elem) -> Option<usize> {
        self.raw_val(a).filter(|&v| v < self.prec)
    }
    fn pi_pow(&self, k: usize) -> Self::Elem {
        self.mul_pi(&self.one(), k)
    }
    fn div_pi(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        let e = self.data.e;
        let (q, r) = (k / e, k % e);
        let mut cur: Vec<D::Elem> = a.iter().map(|x| self.base.div_pi(x, q)).collect();
        if q > 0 && e > 1 {
            cur = self.mul(&cur, &self.pow(&self.data.eps_inv, q as u64));
        }
        for _ in 0..r {
            cur = self.div_uniformizer(&cur);
        }
        cur
    }
    fn mul_pi(&self, a: &Self::Elem, k: usize) -> Self::Elem {
        // Π^k = π^q ε^q Π^r
        let e = self.data.e;
        let (q, r) = (k / e, k % e);
        let mut cur: Vec<D::Elem> = a.iter().map(|x| self.base.mul_pi(x, q)).collect();
        if q > 0 && e > 1 {
            cur = self.mul(&cur, &self.pow(&self.data.eps, q as u64));
        }
        for _ in 0..r {
            cur = self.mul(&cur, &self.data.pi);
        }
        cur
    }
    fn unit_inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.in_max_ideal(a) {
            return None;
        }
        let sol = crate::local::linalg::solve(&self.base, &mul_matrix(&self.data.order, a), &self.one())?;
        Some(self.reduce_coords(&sol.x))
    }
    fn residue(&self, a: &Self::Elem) -> Poly<Res<D>> {
        let k = self.base.residue_field();
        PolyRing::new(k.clone()).from_coeffs(self.residue_coords(a))
    }
    fn lift(&self, r: &Poly<Res<D>>) -> Self::Elem {
        let mut out = self.zero();
        for (j, c) in r.c.iter().enumerate() {
            let l = self.base.lift(c);
            for (o, g) in out.iter_mut().zip(&self.data.gamma_pows[j]) {
                *o = self.base.add(o, &self.base.mul(&l, g));
            }
        }
        out
    }
    fn digits(&self, a: &Self::Elem) -> Vec<Poly<Res<D>>> {
        let mut cur = a.clone();
        let mut out = Vec::with_capacity(self.prec);
        for _ in 0..self.prec {
            let r = self.residue(&cur);
            cur = self.sub(&cur, &self.lift(&r));
            cur = self.div_uniformizer(&cur);
            out.push(r);
        }
        out
    }
    fn from_digits(&self, digits: &[Poly<Res<D>>]) -> Self::Elem {
        let mut acc = self.zero();
        for r in digits.iter().rev() {
            acc = self.add(&self.mul(&acc, &self.data.pi), &self.lift(r));
        }
        acc
    }
    fn uniformizer_name(&self) -> String {
        "Pi".into()
    }
    fn reduce(&self, a: &Self::Elem) -> Self::Elem {
        self.reduce_coords(a)
    }
}

/// `K̂[y]/(h)` with its ramification data.
#[derive(Clone, Debug)]
pub struct LocalExtension<D: Dvr> {
    pub poly: Poly<D::Elem>,
    pub e: usize,
    pub f: usize,
    pub ring: ExtDvr<D>,
}

impl<D: Dvr> LocalExtension<D>
where
    D::Residue: Factorable,
{
    pub fn new(d: &D, h: &Poly<D::Elem>, seed: u64) -> Result<Self> {
        let ring = ExtDvr::new(d, h, seed)?;
        Ok(LocalExtension { poly: h.clone(), e: ring.ramification(), f: ring.residue_degree(), ring })
    }

    pub fn degree(&self) -> usize {
        self.poly.deg().unwrap()
    }

    /// Valuation of `α = a(y)` normalized by `v(π) = 1`, through the norm
    /// `res(h, a)`.
    pub fn element_valuation(&self, d: &D, a: &Poly<D::Elem>) -> Result<Rational> {
        let n = self.degree();
        let v = norm_valuation(d, &self.poly, a)?;
        Ok(Rational::new(BigInt::from(v), BigInt::from(n)))
    }

    /// Residue class of a valuation-zero element `a(y)`.
    pub fn residue(&self, a: &Poly<D::Elem>) -> Result<Poly<Res<D>>> {
        let x = self.ring.from_power(&a.c)?;
        match self.ring.val(&x) {
            Some(0) => Ok(self.ring.residue(&x)),
            Some(_) => Err(Error::NotAUnit),
            None => Err(Error::IndeterminateValuation),
        }
    }
}

/// `v(res(h, a))` for monic `h`, computed as the determinant of
/// multiplication by `a` on `D[y]/(h)`.
pub fn norm_valuation<D: Dvr>(d: &D, h: &Poly<D::Elem>, a: &Poly<D::Elem>) -> Result<usize> {
    let r = PolyRing::new(d.clone());
    let n = h.deg().ok_or_else(|| Error::InvalidInput("zero modulus".into()))?;
    let mut rows = Vec::with_capacity(n);
    let mut cur = r.rem_monic(a, h);
    for _ in 0..n {
        rows.push((0..n).map(|j| r.coeff_or_zero(&cur, j)).collect::<Vec<_>>());
        cur = r.rem_monic(&r.mul_xk(&cur, 1), h);
    }
    d.val(&linalg::det(d, &rows)).map(|v| v).ok_or(Error::IndeterminateValuation)
}
