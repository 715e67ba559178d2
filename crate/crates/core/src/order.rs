//! Maximal orders of `K̂[x]/(F)` by the Round 2 method, and the splitting of
//! the algebra into its field components.
//!
//! An order is stored by a triangular basis in power coordinates: the i-th
//! basis element is `B_i(x) / π^δ` with `deg B_i = i` and leading
//! coefficient `π^(a_i)`. Everything is computed modulo `π^N`; the caller
//! picks `N` well above `2δ` and checks the final reconstruction.

use crate::arith::factor::Factorable;
use crate::arith::linalg::{self, Matrix};
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::rational::Rational;
use crate::arith::ring::{Field, Ring};
use crate::local::dvr::Dvr;
use crate::newton::factor::{FactorMethod, LocalFactor};
use crate::newton::hensel::poly_val;
use crate::{Error, Result};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Res<D> = <<D as Dvr>::Residue as Ring>::Elem;

/// An order of `K̂[x]/(F)` containing `D[x]/(F)`.
#[derive(Clone, Debug)]
pub struct Order<D: Dvr> {
    d: D,
    f: Poly<D::Elem>,
    n: usize,
    basis: Vec<Vec<D::Elem>>,
    shifts: Vec<usize>,
    delta: usize,
    table: Vec<Vec<Vec<D::Elem>>>,
}

/// Lower triangular basis of the `D`-module spanned by `rows` in `D^n`:
/// row `j` is zero beyond column `j` and has `π^(a_j)` at column `j`.
/// `None` when the rows do not have full rank at the working precision.
pub fn hnf<D: Dvr>(d: &D, rows: &[Vec<D::Elem>], n: usize) -> Option<(Vec<Vec<D::Elem>>, Vec<usize>)> {
    let mut pool: Vec<Vec<D::Elem>> = rows.iter().map(|r| r.iter().map(|x| d.reduce(x)).collect()).collect();
    let mut out: Vec<Option<Vec<D::Elem>>> = vec![None; n];
    let mut shifts = vec![0; n];
    for j in (0..n).rev() {
        let (idx, v) = pool
            .iter()
            .enumerate()
            .filter_map(|(i, r)| d.val(&r[j]).map(|v| (i, v)))
            .min_by_key(|&(i, v)| (v, i))?;
        let mut piv = pool.swap_remove(idx);
        let u = d.unit_inv(&d.div_pi(&piv[j], v))?;
        for x in piv.iter_mut() {
            *x = d.mul(x, &u);
        }
        piv[j] = d.pi_pow(v);
        for r in pool.iter_mut() {
            if d.val(&r[j]).is_none() {
                r[j] = d.zero();
                continue;
            }
            let c = d.div_pi(&r[j], v);
            for k in 0..=j {
                let t = d.mul(&c, &piv[k]);
                r[k] = d.sub(&r[k], &t);
            }
            r[j] = d.zero();
        }
        shifts[j] = v;
        out[j] = Some(piv);
    }
    Some((out.into_iter().map(Option::unwrap).collect(), shifts))
}

/// Coordinates of `target` in a triangular basis from [`hnf`]; `None` when
/// `target` is not in the module.
/// The target is taken over an extra `π^extra`.
fn triangular_coords<D: Dvr>(
    d: &D,
    basis: &[Vec<D::Elem>],
    shifts: &[usize],
    extra: usize,
    target: &[D::Elem],
) -> Option<Vec<D::Elem>> {
    let n = basis.len();
    let mut t: Vec<D::Elem> = target.to_vec();
    let mut c = vec![d.zero(); n];
    for k in (0..n).rev() {
        match d.val(&t[k]) {
            None => continue,
            Some(v) if v < shifts[k] + extra => return None,
            Some(_) => {}
        }
        let ck = d.div_pi(&t[k], shifts[k] + extra);
        for j in 0..=k {
            let m = d.mul_pi(&d.mul(&ck, &basis[k][j]), extra);
            t[j] = d.sub(&t[j], &m);
        }
        c[k] = ck;
    }
    Some(c)
}

impl<D: Dvr> Order<D>
where
    D::Residue: Factorable,
{
    /// The equation order `D[x]/(F)` of a monic `F`.
    pub fn equation_order(d: &D, f: &Poly<D::Elem>) -> Result<Self> {
        let n = f.deg().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d.one() } else { d.zero() }).collect())
            .collect();
        let mut o = Order { d: d.clone(), f: f.clone(), n, basis, shifts: vec![0; n], delta: 0, table: Vec::new() };
        o.table = o.build_table()?;
        Ok(o)
    }

    /// Round 2: enlarge the equation order until it is maximal.
    pub fn maximal(d: &D, f: &Poly<D::Elem>) -> Result<Self> {
        let mut o = Self::equation_order(d, f)?;
        for _ in 0..(d.prec() + 2) {
            match o.enlarge()? {
                Some(next) => o = next,
                None => return Ok(o),
            }
        }
        Err(Error::IndeterminateValuation)
    }

    pub fn ring(&self) -> &D {
        &self.d
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly<D::Elem> {
        &self.f
    }

    /// `δ`, so the index `[O : D[x]]` has valuation `nδ - Σ a_i`.
    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn index_valuation(&self) -> usize {
        self.n * self.delta - self.shifts.iter().sum::<usize>()
    }

    /// Numerator of the `i`-th basis element (over `π^δ`).
    pub fn basis_numerator(&self, i: usize) -> &[D::Elem] {
        &self.basis[i]
    }

    pub fn table(&self) -> &Vec<Vec<Vec<D::Elem>>> {
        &self.table
    }

    fn polys(&self) -> PolyRing<D> {
        PolyRing::new(self.d.clone())
    }

    fn mulmod(&self, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
        let r = self.polys();
        let p = r.rem_monic(&r.mul(&r.from_coeffs(a.to_vec()), &r.from_coeffs(b.to_vec())), &self.f);
        (0..self.n).map(|i| r.coeff_or_zero(&p, i)).collect()
    }

    /// Coordinates of `num(x) / π^den`; `None` if it is not in the order.
    pub fn coords(&self, num: &[D::Elem], den: usize) -> Option<Vec<D::Elem>> {
        let d = &self.d;
        let mut t: Vec<D::Elem> = (0..self.n).map(|i| num.get(i).cloned().unwrap_or_else(|| d.zero())).collect();
        let mut den = den;
        if den < self.delta {
            t = t.iter().map(|x| d.mul_pi(x, self.delta - den)).collect();
            den = self.delta;
        }
        triangular_coords(d, &self.basis, &self.shifts, den - self.delta, &t)
    }

    /// Numerator (over `π^δ`) of the element with the given coordinates.
    pub fn numerator(&self, c: &[D::Elem]) -> Vec<D::Elem> {
        let d = &self.d;
        let mut out = vec![d.zero(); self.n];
        for (k, ck) in c.iter().enumerate() {
            for j in 0..=k {
                out[j] = d.add(&out[j], &d.mul(ck, &self.basis[k][j]));
            }
        }
        out
    }

    fn build_table(&self) -> Result<Vec<Vec<Vec<D::Elem>>>> {
        let n = self.n;
        let mut t = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let p = self.mulmod(&self.basis[i], &self.basis[j]);
                let c = self.coords(&p, 2 * self.delta).ok_or(Error::IndeterminateValuation)?;
                t[i][j] = c.clone();
                t[j][i] = c;
            }
        }
        Ok(t)
    }

    /// Product in coordinates.
    pub fn mul(&self, a: &[D::Elem], b: &[D::Elem]) -> Vec<D::Elem> {
        let d = &self.d;
        let mut out = vec![d.zero(); self.n];
        for (i, ai) in a.iter().enumerate() {
            if d.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if d.is_zero(bj) {
                    continue;
                }
                let c = d.mul(ai, bj);
                for (k, s) in self.table[i][j].iter().enumerate() {
                    out[k] = d.add(&out[k], &d.mul(&c, s));
                }
            }
        }
        out
    }

    pub fn one(&self) -> Vec<D::Elem> {
        self.coords(&[self.d.one()], 0).expect("1 lies in every order")
    }

    /// Coordinates of the class of `x`.
    pub fn generator(&self) -> Vec<D::Elem> {
        if self.n == 1 {
            return self.coords(&[self.d.neg(&self.f.c[0])], 0).unwrap();
        }
        self.coords(&[self.d.zero(), self.d.one()], 0).expect("x lies in every order")
    }

    /// Multiplication table of `O / πO` over the residue field.
    pub fn residue_table(&self) -> Vec<Vec<Vec<Res<D>>>> {
        self.table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|x| self.d.residue(x)).collect()).collect())
            .collect()
    }

    /// Basis of the nilradical of `O / πO`.
    pub fn residue_radical(&self) -> Vec<Vec<Res<D>>> {
        let k = self.d.residue_field();
        let rt = self.residue_table();
        residue_radical(k, &rt, self.n)
    }

    /// One Round 2 step: the multiplier ring of the `π`-radical, or `None`
    /// when the order is already maximal.
    fn enlarge(&self) -> Result<Option<Self>> {
        let d = &self.d;
        let k = d.residue_field();
        let n = self.n;
        let rad = self.residue_radical();
        if rad.is_empty() {
            return Ok(None);
        }
        let unit = |i: usize, c: D::Elem| -> Vec<D::Elem> { (0..n).map(|j| if j == i { c.clone() } else { d.zero() }).collect() };
        let mut gens: Vec<Vec<D::Elem>> = rad.iter().map(|v| v.iter().map(|x| d.lift(x)).collect()).collect();
        gens.extend((0..n).map(|i| unit(i, d.pi_pow(1))));
        let (jb, js) = hnf(d, &gens, n).ok_or(Error::IndeterminateValuation)?;
        // Φ_i: multiplication by b_i on I / πI.
        let mut rows: Matrix<Res<D>> = vec![vec![k.zero(); n]; n * n];
        for i in 0..n {
            for (kk, jrow) in jb.iter().enumerate() {
                let prod = self.mul(&unit(i, d.one()), jrow);
                let y = triangular_coords(d, &jb, &js, 0, &prod).ok_or(Error::IndeterminateValuation)?;
                for (j, yj) in y.iter().enumerate() {
                    rows[kk * n + j][i] = d.residue(yj);
                }
            }
        }
        let ker = linalg::kernel(k, &rows, n);
        if ker.is_empty() {
            return Ok(None);
        }
        let mut ugens: Vec<Vec<D::Elem>> = ker
            .iter()
            .map(|v| self.numerator(&v.iter().map(|x| d.lift(x)).collect::<Vec<_>>()))
            .collect();
        ugens.extend((0..n).map(|i| self.basis[i].iter().map(|x| d.mul_pi(x, 1)).collect()));
        let (mut basis, mut shifts) = hnf(d, &ugens, n).ok_or(Error::IndeterminateValuation)?;
        let mut delta = self.delta + 1;
        // Cancel common powers of π.
        let common = basis
            .iter()
            .flat_map(|r| r.iter().filter_map(|x| d.val(x)))
            .min()
            .unwrap_or(0)
            .min(delta);
        if common > 0 {
            basis = basis.iter().map(|r| r.iter().map(|x| d.div_pi(x, common)).collect()).collect();
            shifts = shifts.iter().map(|a| a - common).collect();
            delta -= common;
        }
        let mut o = Order { d: d.clone(), f: self.f.clone(), n, basis, shifts, delta, table: Vec::new() };
        o.table = o.build_table()?;
        Ok(Some(o))
    }
}

fn res_mul<K: Field>(k: &K, rt: &[Vec<Vec<K::Elem>>], a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    let n = a.len();
    let mut out = vec![k.zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if k.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if k.is_zero(bj) {
                continue;
            }
            let c = k.mul(ai, bj);
            for (l, s) in rt[i][j].iter().enumerate() {
                if !k.is_zero(s) {
                    out[l] = k.add(&out[l], &k.mul(&c, s));
                }
            }
        }
    }
    out
}

/// Nilradical of a commutative algebra over `k` given by structure constants.
pub fn residue_radical<K: Field>(k: &K, rt: &[Vec<Vec<K::Elem>>], n: usize) -> Vec<Vec<K::Elem>> {
    let p = k.characteristic();
    if p == 0 || p > n as u64 {
        // The trace form is nondegenerate exactly on the semisimple part.
        let tr: Vec<K::Elem> = (0..n).map(|i| (0..n).fold(k.zero(), |acc, l| k.add(&acc, &rt[i][l][l]))).collect();
        let gram: Matrix<K::Elem> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| rt[i][j].iter().zip(&tr).fold(k.zero(), |acc, (s, t)| k.add(&acc, &k.mul(s, t))))
                    .collect()
            })
            .collect();
        return linalg::kernel(k, &gram, n);
    }
    // Kernel of the Frobenius power a -> a^q with q >= n, which is semilinear.
    let mut q = p;
    let mut steps = 1;
    while q < n as u64 {
        q *= p;
        steps += 1;
    }
    let images: Vec<Vec<K::Elem>> = (0..n)
        .map(|i| {
            let mut b: Vec<K::Elem> = (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect();
            for _ in 0..steps {
                let mut acc = b.clone();
                for _ in 1..p {
                    acc = res_mul(k, rt, &acc, &b);
                }
                b = acc;
            }
            b
        })
        .collect();
    let m: Matrix<K::Elem> = (0..n).map(|r| (0..n).map(|i| images[i][r].clone()).collect()).collect();
    linalg::kernel(k, &m, n)
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|mut x| {
                    for _ in 0..steps {
                        x = k.pth_root(&x).expect("residue field must be perfect");
                    }
                    x
                })
                .collect()
        })
        .collect()
}

/// One field component of `K̂[x]/(F)`.
#[derive(Clone, Debug)]
pub struct Component<D: Dvr> {
    /// Idempotent in order coordinates.
    pub idempotent: Vec<D::Elem>,
    /// Characteristic polynomial of `x` on the component.
    pub poly: Poly<D::Elem>,
    pub e: usize,
    pub f: usize,
}

impl<D: Dvr> Order<D>
where
    D::Residue: Factorable,
{
    /// Split a maximal order into its local components.
    pub fn components(&self, seed: u64) -> Result<Vec<Component<D>>> {
        let d = &self.d;
        let k = d.residue_field();
        let n = self.n;
        let rt = self.residue_table();
        let rad = residue_radical(k, &rt, n);
        let one_bar: Vec<Res<D>> = self.one().iter().map(|x| d.residue(x)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pending = vec![one_bar];
        let mut done: Vec<(Vec<Res<D>>, usize)> = Vec::new();
        let kr = PolyRing::new(k.clone());
        while let Some(e) = pending.pop() {
            let span: Matrix<Res<D>> = (0..n)
                .map(|i| res_mul(k, &rt, &e, &(0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect::<Vec<_>>()))
                .collect();
            let dim = linalg::rank(k, &span);
            let rad_dim = linalg::rank(k, &rad.iter().map(|r| res_mul(k, &rt, &e, r)).collect::<Vec<_>>());
            let r = dim - rad_dim;
            let mut split = false;
            for _ in 0..200 {
                let raw: Vec<Res<D>> = (0..n).map(|_| k.random(&mut rng)).collect();
                let a = res_mul(k, &rt, &e, &raw);
                let mu = linalg::minpoly_in_algebra(k, &e, &a, |x, y| res_mul(k, &rt, x, y));
                let mu = kr.from_coeffs(mu);
                let facs = k.factor(&mu)?;
                if facs.len() == 1 {
                    if facs[0].0.deg() == Some(r) {
                        done.push((e.clone(), r));
                        split = true;
                        break;
                    }
                    continue;
                }
                for (psi, m) in &facs {
                    let pm = kr.pow(psi, *m as u64);
                    let q = kr.div_exact(&mu, &pm).ok_or_else(|| Error::Internal("minimal polynomial split".into()))?;
                    let qi = kr.inv_mod(&q, &pm).ok_or_else(|| Error::Internal("CRT inverse".into()))?;
                    let poly = kr.rem(&kr.mul(&q, &qi), &mu);
                    // Evaluate at a with identity e.
                    let mut acc = vec![k.zero(); n];
                    for c in poly.c.iter().rev() {
                        acc = res_mul(k, &rt, &acc, &a);
                        acc = acc.iter().zip(&e).map(|(x, y)| k.add(x, &k.mul(c, y))).collect();
                    }
                    pending.push(acc);
                }
                split = true;
                break;
            }
            if !split {
                return Err(Error::Internal("residue algebra did not split".into()));
            }
        }
        let x = self.generator();
        let xmat: Matrix<D::Elem> = {
            let cols: Vec<Vec<D::Elem>> = (0..n).map(|i| self.mul(&x, &self.unit(i))).collect();
            (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
        };
        let mut out = Vec::new();
        for (ebar, f) in done {
            let eps = self.lift_idempotent(&ebar)?;
            let cols: Vec<Vec<D::Elem>> = (0..n).map(|i| self.mul(&eps, &self.unit(i))).collect();
            let emat_bar: Matrix<Res<D>> = (0..n).map(|r| (0..n).map(|c| d.residue(&cols[c][r])).collect()).collect();
            let mut tmp = emat_bar.clone();
            let pcols = linalg::rref(k, &mut tmp);
            let m = pcols.len();
            let w: Vec<Vec<D::Elem>> = pcols.iter().map(|&c| cols[c].clone()).collect();
            // Rows where the chosen columns are independent modulo π.
            let mut wt: Matrix<Res<D>> = (0..n).map(|r| w.iter().map(|col| d.residue(&col[r])).collect()).collect();
            let wt_t: Matrix<Res<D>> = (0..m).map(|c| (0..n).map(|r| wt[r][c].clone()).collect()).collect();
            wt = wt_t;
            let prows = linalg::rref(k, &mut wt);
            if prows.len() != m {
                return Err(Error::IndeterminateValuation);
            }
            let wr: Matrix<D::Elem> = prows.iter().map(|&r| w.iter().map(|col| col[r].clone()).collect()).collect();
            // C = W_R^{-1} (X W)_R.
            let xw: Vec<Vec<D::Elem>> = w
                .iter()
                .map(|col| (0..n).map(|r| (0..n).fold(d.zero(), |acc, c| d.add(&acc, &d.mul(&xmat[r][c], &col[c])))).collect())
                .collect();
            let mut cmat = vec![vec![d.zero(); m]; m];
            for (j, col) in xw.iter().enumerate() {
                let rhs: Vec<D::Elem> = prows.iter().map(|&r| col[r].clone()).collect();
                let sol = crate::local::linalg::solve(d, &wr, &rhs).ok_or(Error::IndeterminateValuation)?;
                for i in 0..m {
                    cmat[i][j] = sol.x[i].clone();
                }
            }
            let g = PolyRing::new(d.clone()).from_coeffs(linalg::charpoly(d, &cmat));
            if m % f != 0 {
                return Err(Error::Internal(format!("component rank {m} not divisible by residue degree {f}")));
            }
            out.push(Component { idempotent: eps, poly: g, e: m / f, f });
        }
        Ok(out)
    }

    fn unit(&self, i: usize) -> Vec<D::Elem> {
        (0..self.n).map(|j| if i == j { self.d.one() } else { self.d.zero() }).collect()
    }

    fn lift_idempotent(&self, ebar: &[Res<D>]) -> Result<Vec<D::Elem>> {
        let d = &self.d;
        let mut e: Vec<D::Elem> = ebar.iter().map(|x| d.lift(x)).collect();
        for _ in 0..(2 * usize::BITS as usize) {
            let e2 = self.mul(&e, &e);
            if e2.iter().zip(&e).all(|(a, b)| d.val(&d.sub(a, b)).is_none()) {
                return Ok(e);
            }
            let e3 = self.mul(&e2, &e);
            e = e2
                .iter()
                .zip(&e3)
                .map(|(a, b)| d.sub(&d.mul(&d.from_i64(3), a), &d.mul(&d.from_i64(2), b)))
                .collect();
        }
        Err(Error::IndeterminateValuation)
    }
}

/// Factor a monic squarefree polynomial through the maximal order of
/// `K̂[x]/(F)`. Slower than Newton refinement but total.
pub fn order_factor<D>(d: &D, f: &Poly<D::Elem>, seed: u64) -> Result<Vec<LocalFactor<D>>>
where
    D: Dvr,
    D::Residue: Factorable,
{
    let o = Order::maximal(d, f)?;
    let comps = o.components(seed)?;
    let r = PolyRing::new(d.clone());
    let prod = comps.iter().fold(r.one(), |acc, c| r.mul(&acc, &c.poly));
    let agree = poly_val(d, &r.sub(f, &prod)).unwrap_or(d.prec());
    let prec = agree.min(d.prec().saturating_sub(2 * o.delta()));
    if prec < 1 {
        return Err(Error::IndeterminateValuation);
    }
    let dp = d.with_prec(prec);
    let mut out = Vec::new();
    for c in comps {
        let g = crate::newton::hensel::reduce_poly(&dp, &c.poly);
        let deg = g.deg().unwrap();
        let v = dp.val(&g.c[0]).ok_or(Error::IndeterminateValuation)?;
        let slope = Rational::new(BigInt::from(v), BigInt::from(deg));
        out.push(LocalFactor {
            poly: g,
            e: c.e,
            f: c.f,
            degree: deg,
            slope: slope.clone(),
            center: dp.zero(),
            center_slope: slope,
            residual: None,
            prec,
            method: FactorMethod::MaximalOrder,
        });
    }
    out.sort_by(|a, b| (&a.slope, &a.poly).cmp(&(&b.slope, &b.poly)));
    Ok(out)
}
