//! Factorization of univariate polynomials over the supported exact fields.
//!
//! * `F_q`: squarefree decomposition, distinct-degree and equal-degree
//!   splitting with a seeded generator.
//! * `Q`: modular factorization, Hensel lifting, subset recombination.
//! * `k(t)`: the same pattern with evaluation at a point of `k` and lifting
//!   in `k[[t - a]]`.
//! * `F[y]/(h)`: Trager's norm method over any of the above.

use super::algext::AlgExt;
use super::finite::{FiniteFieldElement, Fq};
use super::linalg;
use super::poly::{Poly, PolyRing};
use super::ratfunc::{Frac, RatFunc};
use super::rational::{Rational, Q};
use super::ring::{Field, Ring};
use crate::local::dvr::{PowerSeries, Zp};
use crate::newton::hensel::multilift;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Degree cap for factorization over `Q`.
pub const RATIONAL_DEGREE_LIMIT: usize = 12;

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_0001;

pub trait Factorable: Field {
    /// Monic irreducible factors of a squarefree polynomial.
    fn factor_squarefree(&self, f: &Poly<Self::Elem>) -> Result<Vec<Poly<Self::Elem>>>;

    /// A few distinct elements, used as evaluation points.
    fn sample_points(&self, n: usize) -> Vec<Self::Elem>;

    /// `gcd(f, f') = 1`.
    fn is_squarefree_poly(&self, f: &Poly<Self::Elem>) -> bool {
        PolyRing::new(self.clone()).is_squarefree(f)
    }

    /// Monic irreducible factors with multiplicities, sorted.
    fn factor(&self, f: &Poly<Self::Elem>) -> Result<Vec<(Poly<Self::Elem>, usize)>> {
        let mut out = Vec::new();
        for (g, m) in squarefree_decomposition(self, f)? {
            for h in self.factor_squarefree(&g)? {
                out.push((h, m));
            }
        }
        out.sort();
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Finite fields

/// Squarefree decomposition `(g_i, i)` with `f = lc · ∏ g_i^i`, the `g_i`
/// monic, squarefree and pairwise coprime. In characteristic `p` this needs
/// `p`-th roots of coefficients.
pub fn squarefree_decomposition<F: Field>(field: &F, f: &Poly<F::Elem>) -> Result<Vec<(Poly<F::Elem>, usize)>> {
    let r = PolyRing::new(field.clone());
    let f = r.monic(f);
    let mut out = Vec::new();
    if f.deg().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let p = field.characteristic() as usize;
    let d = r.derivative(&f);
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(field, &pth_root_poly(field, &f)?)? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = r.gcd(&f, &d);
    let mut w = r.div_exact(&f, &c).unwrap();
    let mut i = 1;
    while w.deg().unwrap_or(0) > 0 {
        let y = r.gcd(&w, &c);
        let fac = r.div_exact(&w, &y).unwrap();
        if fac.deg().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = r.div_exact(&c, &w).unwrap();
    }
    if c.deg().unwrap_or(0) > 0 {
        for (g, m) in squarefree_decomposition(field, &pth_root_poly(field, &c)?)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

pub fn squarefree_decomposition_ff(fq: &Fq, f: &Poly<FiniteFieldElement>) -> Vec<(Poly<FiniteFieldElement>, usize)> {
    squarefree_decomposition(fq, f).expect("finite fields are perfect")
}

fn pth_root_poly<F: Field>(field: &F, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
    let p = field.characteristic() as usize;
    let r = PolyRing::new(field.clone());
    let c = f.c.iter().step_by(p).map(|a| field.pth_root(a).ok_or(Error::Inseparable)).collect::<Result<Vec<_>>>()?;
    Ok(r.from_coeffs(c))
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(fq: &Fq, f: &Poly<FiniteFieldElement>) -> Vec<(Poly<FiniteFieldElement>, usize)> {
    distinct_degree_in(fq, f)
}

fn field_size<F: Field>(k: &F) -> u128 {
    k.order().expect("finite field") as u128
}

/// Distinct-degree factorization over any finite field.
pub fn distinct_degree_in<F: Field>(k: &F, f: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
    let r = PolyRing::new(k.clone());
    let q = field_size(k);
    let mut out = Vec::new();
    let mut g = r.monic(f);
    let x = r.x();
    let mut h = r.rem_monic(&x, &g);
    let mut d = 0;
    while g.deg().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = r.pow_mod_monic(&h, q, &g);
        let fac = r.gcd(&g, &r.sub(&h, &x));
        if fac.deg().unwrap_or(0) > 0 {
            g = r.div_exact(&g, &fac).unwrap();
            h = r.rem_monic(&h, &g);
            out.push((fac, d));
        }
    }
    if g.deg().unwrap_or(0) > 0 {
        let dg = g.deg().unwrap();
        out.push((g, dg));
    }
    out
}

fn equal_degree<F: Field>(k: &F, f: &Poly<F::Elem>, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly<F::Elem>>) {
    let r = PolyRing::new(k.clone());
    let n = f.deg().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let q = field_size(k);
    let p = k.characteristic();
    loop {
        let a = r.from_coeffs((0..n).map(|_| k.random(rng)).collect());
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace to F_2: sum of a^(2^i), i < d * log2(q).
            let kk = d * q.trailing_zeros() as usize;
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..kk {
                cur = r.rem_monic(&r.mul(&cur, &cur), f);
                acc = r.add(&acc, &cur);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2).
            let mut norm = r.rem_monic(&a, f);
            let mut frob = norm.clone();
            for _ in 1..d {
                frob = r.pow_mod_monic(&frob, q, f);
                norm = r.rem_monic(&r.mul(&norm, &frob), f);
            }
            let half = r.pow_mod_monic(&norm, (q - 1) / 2, f);
            r.sub(&half, &r.one())
        };
        let g = r.gcd(f, &b);
        let dg = g.deg().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = r.div_exact(f, &g).unwrap();
            equal_degree(k, &g, d, rng, out);
            equal_degree(k, &r.monic(&h), d, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial over any finite
/// field, in the order produced by the splitting.
pub fn factor_squarefree_finite<F: Field>(k: &F, f: &Poly<F::Elem>, seed: u64) -> Vec<Poly<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, d) in distinct_degree_in(k, f) {
        equal_degree(k, &part, d, &mut rng, &mut out);
    }
    out
}

/// Irreducible factors with multiplicities over a finite field, monic,
/// sorted by degree and then coefficients.
pub fn factor_finite_field(fq: &Fq, f: &Poly<FiniteFieldElement>) -> Vec<(Poly<FiniteFieldElement>, usize)> {
    factor_finite_field_seeded(fq, f, DEFAULT_SEED)
}

pub fn factor_finite_field_seeded(
    fq: &Fq,
    f: &Poly<FiniteFieldElement>,
    seed: u64,
) -> Vec<(Poly<FiniteFieldElement>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition_ff(fq, f) {
        for (part, d) in distinct_degree(fq, &g) {
            let mut facs = Vec::new();
            equal_degree(fq, &part, d, &mut rng, &mut facs);
            out.extend(facs.into_iter().map(|h| (h, m)));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.c, a.1).cmp(&(b.0.deg(), &b.0.c, b.1)));
    out
}

pub fn is_irreducible_ff(fq: &Fq, f: &Poly<FiniteFieldElement>) -> bool {
    let r = PolyRing::new(fq.clone());
    let n = match f.deg() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let f = r.monic(f);
    if !r.is_squarefree(&f) {
        return false;
    }
    let dd = distinct_degree(fq, &f);
    dd.len() == 1 && dd[0].1 == n
}

impl Factorable for Fq {
    fn factor_squarefree(&self, f: &Poly<FiniteFieldElement>) -> Result<Vec<Poly<FiniteFieldElement>>> {
        Ok(factor_finite_field(self, f).into_iter().map(|(g, _)| g).collect())
    }

    fn sample_points(&self, n: usize) -> Vec<FiniteFieldElement> {
        self.elements().take(n).collect()
    }
}

// ---------------------------------------------------------------------------
// Rationals

fn primitive_integer_poly(f: &Poly<Rational>) -> Vec<BigInt> {
    let den = f.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let c: Vec<BigInt> = f.c.iter().map(|a| (a * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = c.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    let sign = if c.last().map_or(false, |l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    c.into_iter().map(|a| a / &g * &sign).collect()
}

fn int_poly_to_q(c: &[BigInt]) -> Poly<Rational> {
    PolyRing::new(Q).from_coeffs(c.iter().map(|a| Rational::from_integer(a.clone())).collect())
}

const SMALL_PRIMES: [u64; 24] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

/// Monic irreducible factors over `Q` of a squarefree polynomial of degree
/// at most [`RATIONAL_DEGREE_LIMIT`].
pub fn factor_rationals(f: &Poly<Rational>) -> Result<Vec<Poly<Rational>>> {
    let qr = PolyRing::new(Q);
    let n = match f.deg() {
        None => return Err(Error::InvalidInput("cannot factor the zero polynomial".into())),
        Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![qr.monic(f)]),
        Some(n) => n,
    };
    if n > RATIONAL_DEGREE_LIMIT {
        return Err(Error::DegreeLimit(n, RATIONAL_DEGREE_LIMIT));
    }
    let c = primitive_integer_poly(f);
    let lc = c[n].clone();
    // Monic model G(x) = lc^(n-1) F(x / lc).
    let g: Vec<BigInt> = (0..=n).map(|i| &c[i] * num_traits::pow(lc.clone(), n - 1 - i.min(n - 1)) ).collect();
    let mut g = g;
    g[n] = BigInt::one();
    let factors = factor_monic_integer(&g)?;
    let mut out = Vec::new();
    for h in factors {
        // h(lc x) then primitive part.
        let scaled: Vec<BigInt> = h.iter().enumerate().map(|(i, a)| a * num_traits::pow(lc.clone(), i)).collect();
        let p = int_poly_to_q(&scaled);
        out.push(qr.monic(&p));
    }
    Ok(out)
}

fn factor_monic_integer(g: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = g.len() - 1;
    let qr = PolyRing::new(Q);
    let gq = int_poly_to_q(g);
    if !qr.is_squarefree(&gq) {
        return Err(Error::InvalidInput("factor_rationals expects a squarefree polynomial".into()));
    }
    // Pick the good prime with the fewest modular factors among the first few.
    let mut best: Option<(u64, Vec<Poly<FiniteFieldElement>>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        let fp = Fq::prime(p)?;
        let pr = PolyRing::new(fp.clone());
        let gp = pr.from_coeffs(g.iter().map(|a| fp.from_u64(a.mod_floor(&BigInt::from(p)).to_u64().unwrap())).collect());
        if !pr.is_squarefree(&gp) {
            continue;
        }
        let facs = fp.factor_squarefree(&gp)?;
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modfacs) = best.ok_or_else(|| Error::Internal("no good prime found".into()))?;
    if modfacs.len() == 1 {
        return Ok(vec![g.to_vec()]);
    }
    // Coefficient bound for monic factors: 2^n (1 + max |g_i|)^n.
    let height = g.iter().map(|a| a.abs()).max().unwrap() + BigInt::one();
    let bound = num_traits::pow(BigInt::from(2), n) * num_traits::pow(height, n);
    let mut k = 1;
    let mut pk = BigInt::from(p);
    while pk <= &bound * 2 {
        pk *= p;
        k += 1;
    }
    let zp = Zp::new(p, k)?;
    let zr = PolyRing::new(zp.clone());
    let glift = zr.from_coeffs(g.iter().map(|a| zp.from_bigint(a)).collect());
    let lifted = multilift(&zp, &glift, &modfacs)?;
    let mut remaining: Vec<Poly<BigInt>> = lifted;
    let mut current = g.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            let prod = subset.iter().fold(zr.one(), |acc, &i| zr.mul(&acc, &remaining[i]));
            let cand: Vec<BigInt> = prod.c.iter().map(|a| zp.symmetric(a)).collect();
            let c0 = &cand[0];
            if !current[0].is_zero() && (c0.is_zero() || !(&current[0] % c0).is_zero()) {
                continue;
            }
            if let Some(quot) = divide_monic_integer(&current, &cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                found.push(cand);
                current = quot;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, f)| f).collect();
            }
            None => size += 1,
        }
    }
    if current.len() > 1 {
        found.push(current);
    }
    let _ = qr;
    Ok(found)
}

fn divide_monic_integer(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = a.len() - 1;
    let m = b.len() - 1;
    if m > n {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); n - m + 1];
    for i in (m..=n).rev() {
        let c = r[i].clone();
        q[i - m] = c.clone();
        if c.is_zero() {
            continue;
        }
        for j in 0..=m {
            r[i - m + j] -= &c * &b[j];
        }
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl Factorable for Q {
    fn factor_squarefree(&self, f: &Poly<Rational>) -> Result<Vec<Poly<Rational>>> {
        factor_rationals(f)
    }

    fn sample_points(&self, n: usize) -> Vec<Rational> {
        (0..n as i64).map(|i| Rational::from_integer(BigInt::from(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 }))).collect()
    }
}

// ---------------------------------------------------------------------------
// Rational function fields

impl<K: Factorable> Factorable for RatFunc<K> {
    fn factor_squarefree(&self, f: &Poly<Frac<K::Elem>>) -> Result<Vec<Poly<Frac<K::Elem>>>> {
        factor_bivariate(self, f)
    }

    fn sample_points(&self, n: usize) -> Vec<Frac<K::Elem>> {
        self.constants().sample_points(n).into_iter().map(|a| self.from_const(a)).collect()
    }

    /// A specialization at `t = a` that keeps the degree and is separable
    /// has nonzero discriminant, and so does `f`. Euclid over `k(t)` is the
    /// fallback.
    fn is_squarefree_poly(&self, f: &Poly<Frac<K::Elem>>) -> bool {
        let Some(n) = f.deg() else { return false };
        let k = self.constants();
        let kp = self.polys();
        let kr = PolyRing::new(k.clone());
        let den = f.c.iter().fold(kp.one(), |acc, a| kp.lcm(&acc, &a.den));
        let a: Vec<Poly<K::Elem>> = f.c.iter().map(|c| kp.mul(&c.num, &kp.div_exact(&den, &c.den).unwrap())).collect();
        for pt in k.sample_points(16) {
            if k.is_zero(&kp.eval(&a[n], &pt)) {
                continue;
            }
            if kr.is_squarefree(&kr.from_coeffs(a.iter().map(|c| kp.eval(c, &pt)).collect())) {
                return true;
            }
        }
        PolyRing::new(self.clone()).is_squarefree(f)
    }
}

fn factor_bivariate<K: Factorable>(kt: &RatFunc<K>, f: &Poly<Frac<K::Elem>>) -> Result<Vec<Poly<Frac<K::Elem>>>> {
    let fr = PolyRing::new(kt.clone());
    let k = kt.constants();
    let kp = kt.polys();
    let n = match f.deg() {
        None => return Err(Error::InvalidInput("cannot factor the zero polynomial".into())),
        Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![fr.monic(f)]),
        Some(n) => n,
    };
    // Clear denominators, then pass to the monic model G(x) = A^(n-1) F(x / A).
    let den = f.c.iter().fold(kp.one(), |acc, a| kp.lcm(&acc, &a.den));
    let a: Vec<Poly<K::Elem>> = f
        .c
        .iter()
        .map(|c| kp.mul(&c.num, &kp.div_exact(&den, &c.den).unwrap()))
        .collect();
    let lead = a[n].clone();
    let mut g: Vec<Poly<K::Elem>> = (0..n).map(|i| kp.mul(&a[i], &kp.pow(&lead, (n - 1 - i) as u64))).collect();
    g.push(kp.one());
    let bdeg = g.iter().map(|c| c.deg().unwrap_or(0)).max().unwrap_or(0);
    let prec = n * bdeg + 1;

    // Evaluation point with the fewest univariate factors.
    let kr = PolyRing::new(k.clone());
    let mut best: Option<(K::Elem, Vec<Poly<K::Elem>>)> = None;
    let mut good = 0;
    for pt in k.sample_points(64) {
        let gp = kr.from_coeffs(g.iter().map(|c| kp.eval(c, &pt)).collect());
        if !kr.is_squarefree(&gp) {
            continue;
        }
        let facs = k.factor_squarefree(&gp)?;
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((pt, facs));
        }
        good += 1;
        if good == 6 || best.as_ref().map_or(false, |(_, b)| b.len() == 1) {
            break;
        }
    }
    let (pt, modfacs) = best.ok_or_else(|| {
        Error::Unsupported("no evaluation point of the constant field keeps the polynomial squarefree".into())
    })?;
    let gf = fr.from_coeffs(g.iter().map(|c| kt.from_poly(c.clone())).collect());
    if modfacs.len() == 1 {
        return Ok(vec![fr.monic(f)]);
    }
    let ps = PowerSeries::new(k.clone(), prec);
    let pr = PolyRing::new(ps.clone());
    let to_series = |c: &Poly<K::Elem>| ps.from_coeffs(kp.taylor_shift(c, &pt).c);
    let gser = pr.from_coeffs(g.iter().map(to_series).collect());
    let lifted = multilift(&ps, &gser, &modfacs)?;
    let neg_pt = k.neg(&pt);
    let from_series = |s: &Vec<K::Elem>| kp.taylor_shift(&kp.from_coeffs(s.clone()), &neg_pt);

    let mut remaining = lifted;
    let mut current = gf;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            let prod = subset.iter().fold(pr.one(), |acc, &i| pr.mul(&acc, &remaining[i]));
            let cand = fr.from_coeffs(prod.c.iter().map(|s| kt.from_poly(from_series(s))).collect());
            let (q, r) = fr.divrem_monic(&current, &cand);
            if r.is_zero() {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                current = q;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, f)| f).collect();
            }
            None => size += 1,
        }
    }
    if current.deg().unwrap_or(0) > 0 {
        found.push(current);
    }
    // Undo the monic model: h(x) -> h(A x), made monic.
    let lead_f = kt.from_poly(lead);
    Ok(found
        .into_iter()
        .map(|h| {
            let scaled = fr.from_coeffs(h.c.iter().enumerate().map(|(i, c)| kt.mul(c, &kt.pow(&lead_f, i as u64))).collect());
            fr.monic(&scaled)
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Algebraic extensions

impl<F: Factorable> Factorable for AlgExt<F> {
    fn factor_squarefree(&self, f: &Poly<Poly<F::Elem>>) -> Result<Vec<Poly<Poly<F::Elem>>>> {
        if self.order().is_some() && f.deg().unwrap_or(0) > 1 {
            // Norms over small finite fields are often never squarefree.
            let mut facs = factor_squarefree_finite(self, f, DEFAULT_SEED);
            facs.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
            return Ok(facs);
        }
        trager(self, f).map(|(facs, _)| facs)
    }

    fn sample_points(&self, n: usize) -> Vec<Poly<F::Elem>> {
        self.base().sample_points(n).into_iter().map(|a| self.embed(&a)).collect()
    }
}

/// Norm `N_{M/F}(g) = res_y(h(y), g(x, y))` of `g ∈ M[x]` as a polynomial in `F[x]`.
pub fn norm_poly<F: Field>(m: &AlgExt<F>, g: &Poly<Poly<F::Elem>>) -> Poly<F::Elem> {
    let fx = PolyRing::new(m.base().clone());
    let deg = m.degree();
    // g as a polynomial in y with coefficients in F[x].
    let by_y = |p: &Poly<Poly<F::Elem>>| -> Vec<Poly<F::Elem>> {
        (0..deg)
            .map(|j| fx.from_coeffs(p.c.iter().map(|c| fx.coeff_or_zero(c, j)).collect()))
            .collect()
    };
    let mr = PolyRing::new(m.clone());
    let y = mr.constant(m.generator());
    let mut rows = Vec::with_capacity(deg);
    let mut cur = g.clone();
    for _ in 0..deg {
        rows.push(by_y(&cur));
        cur = mr.mul(&cur, &y);
    }
    linalg::det(&fx, &rows)
}

/// Trager factorization; also returns the shift `c` used, so that the
/// factors correspond to the factors of `N(f(x - c y))`.
pub fn trager<F: Factorable>(m: &AlgExt<F>, f: &Poly<Poly<F::Elem>>) -> Result<(Vec<Poly<Poly<F::Elem>>>, i64)> {
    let mr = PolyRing::new(m.clone());
    let base = m.base();
    let fx = PolyRing::new(base.clone());
    match f.deg() {
        None => return Err(Error::InvalidInput("cannot factor the zero polynomial".into())),
        Some(0) => return Ok((Vec::new(), 0)),
        Some(1) => return Ok((vec![mr.monic(f)], 0)),
        _ => {}
    }
    if m.degree() == 1 {
        // M = F: factor directly.
        let down = fx.from_coeffs(f.c.iter().map(|c| fx.coeff_or_zero(c, 0)).collect());
        let facs = base.factor_squarefree(&down)?;
        return Ok((facs.iter().map(|g| mr.from_coeffs(g.c.iter().map(|a| m.embed(a)).collect())).collect(), 0));
    }
    let y = m.generator();
    for c in trager_shifts() {
        let cy = m.mul(&m.from_i64(c), &y);
        let shifted = mr.taylor_shift(f, &m.neg(&cy));
        let norm = norm_poly(m, &shifted);
        if !base.is_squarefree_poly(&norm) {
            continue;
        }
        let mut out = Vec::new();
        for nf in base.factor_squarefree(&norm)? {
            let lifted = mr.from_coeffs(nf.c.iter().map(|a| m.embed(a)).collect());
            let back = mr.taylor_shift(&lifted, &cy);
            let g = mr.gcd(f, &back);
            if g.deg().unwrap_or(0) > 0 {
                out.push(g);
            }
        }
        return Ok((out, c));
    }
    Err(Error::Internal("no Trager shift gave a squarefree norm".into()))
}

/// Shift sequence 0, 1, -1, 2, -2, ...
pub fn trager_shifts() -> impl Iterator<Item = i64> {
    (0..64i64).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })
}

/// Factor a polynomial with base-field coefficients over an extension.
pub fn factor_over_extension<F: Factorable>(f: &Poly<F::Elem>, m: &AlgExt<F>) -> Result<Vec<Poly<Poly<F::Elem>>>> {
    let mr = PolyRing::new(m.clone());
    let lifted = mr.from_coeffs(f.c.iter().map(|a| m.embed(a)).collect());
    m.factor_squarefree(&lifted)
}
