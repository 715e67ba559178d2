//! Base completions `Q_p` and `k((t - a))`, `k((1/t))` with the embedding of
//! global elements.

use super::dvr::{Dvr, PowerSeries, Zp};
use super::element::LocalElement;
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfunc::{Frac, RatFunc};
use crate::arith::rational::{rat_valuation, Rational, Q};
use crate::arith::ring::{Field, Ring};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt::Debug;

/// A complete discretely valued field with its global field of definition.
pub trait Completion: Clone + Debug + Send + Sync {
    type Global: Field;
    type D: Dvr;

    fn global(&self) -> &Self::Global;
    fn dvr(&self, prec: usize) -> Self::D;
    /// Exact valuation of a global element; `None` for zero.
    fn valuation(&self, x: &<Self::Global as Ring>::Elem) -> Option<i64>;
    /// `x = π^v · u`: returns `v` and `u` to `prec` digits.
    fn expand(&self, x: &<Self::Global as Ring>::Elem, prec: usize) -> Option<(i64, <Self::D as Ring>::Elem)>;
    /// The uniformizer as a global element.
    fn uniformizer(&self) -> <Self::Global as Ring>::Elem;
    fn describe(&self) -> String;
}

/// Embed a global element with `n` significant digits.
pub fn embed<C: Completion>(c: &C, x: &<C::Global as Ring>::Elem, n: usize) -> Result<LocalElement<C::D>> {
    if n < 1 {
        return Err(Error::PrecisionUnderflow(n as i64));
    }
    let d = c.dvr(n);
    match c.expand(x, n) {
        None => Ok(LocalElement::zero_exact(&d)),
        Some((v, u)) => Ok(LocalElement::from_scaled(&d, &u, v)),
    }
}

/// `π^(s·deg) f(y / π^s)` for a monic `f`, with the least `s ≥ 0` making it
/// integral. Roots of the model are the roots of `f` times `π^s`.
#[derive(Clone, Debug)]
pub struct IntegralModel<E> {
    pub poly: Poly<E>,
    pub scale: i64,
}

pub fn integral_scale<C: Completion>(c: &C, f: &Poly<<C::Global as Ring>::Elem>) -> i64 {
    let n = f.deg().unwrap_or(0);
    let mut s = 0i64;
    for (i, a) in f.c.iter().enumerate().take(n) {
        if let Some(v) = c.valuation(a) {
            if v < 0 {
                let k = (n - i) as i64;
                s = s.max(Integer::div_floor(&(-v + k - 1), &k));
            }
        }
    }
    s
}

pub fn integral_model<C: Completion>(
    c: &C,
    f: &Poly<<C::Global as Ring>::Elem>,
    prec: usize,
) -> Result<IntegralModel<<C::D as Ring>::Elem>> {
    let g = c.global();
    let n = f.deg().ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    if !g.is_one(f.lc().unwrap()) {
        return Err(Error::InvalidInput("defining polynomial must be monic".into()));
    }
    let s = integral_scale(c, f);
    let d = c.dvr(prec);
    let coeffs = f
        .c
        .iter()
        .enumerate()
        .map(|(i, a)| match c.expand(a, prec) {
            None => d.zero(),
            Some((v, u)) => {
                let k = v + s * (n - i) as i64;
                debug_assert!(k >= 0);
                if k as usize >= prec {
                    d.zero()
                } else {
                    d.mul_pi(&u, k as usize)
                }
            }
        })
        .collect();
    Ok(IntegralModel { poly: PolyRing::new(d).from_coeffs(coeffs), scale: s })
}

/// `Q_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Padic {
    p: u64,
}

impl Padic {
    pub fn new(p: u64) -> Result<Padic> {
        if !crate::arith::rational::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Padic { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl Completion for Padic {
    type Global = Q;
    type D = Zp;

    fn global(&self) -> &Q {
        &Q
    }
    fn dvr(&self, prec: usize) -> Zp {
        Zp::new(self.p, prec).unwrap()
    }
    fn valuation(&self, x: &Rational) -> Option<i64> {
        rat_valuation(x, self.p)
    }
    fn expand(&self, x: &Rational, prec: usize) -> Option<(i64, BigInt)> {
        let v = self.valuation(x)?;
        let p = BigInt::from(self.p);
        let strip = |mut n: BigInt| {
            while (&n % &p).is_zero() {
                n /= &p;
            }
            n
        };
        let num = strip(x.numer().clone());
        let den = strip(x.denom().abs());
        let d = self.dvr(prec);
        let inv = d.unit_inv(&d.from_bigint(&den)).unwrap();
        Some((v, d.mul(&d.from_bigint(&num), &inv)))
    }
    fn uniformizer(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.p))
    }
    fn describe(&self) -> String {
        format!("p = {}", self.p)
    }
}

/// A point of the projective line over `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Center<E> {
    Finite(E),
    Infinity,
}

/// `k((t - a))` or `k((1/t))` as a completion of `k(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<K: Field> {
    kt: RatFunc<K>,
    center: Center<K::Elem>,
}

impl<K: Field> Laurent<K> {
    pub fn new(k: K, center: Center<K::Elem>) -> Self {
        Laurent { kt: RatFunc::new(k), center }
    }

    pub fn center(&self) -> &Center<K::Elem> {
        &self.center
    }

    pub fn constants(&self) -> &K {
        self.kt.constants()
    }

    /// The local parameter `u` expressed as a polynomial map: `t = a + u` or
    /// `t = 1/u`. Returns `(u-adic order, unit)` for a polynomial in `t`.
    fn expand_poly(&self, p: &Poly<K::Elem>, prec: usize) -> Option<(i64, Vec<K::Elem>)> {
        let kp = self.kt.polys();
        let n = p.deg()?;
        let shifted = match &self.center {
            Center::Finite(a) => kp.taylor_shift(p, a),
            Center::Infinity => kp.reverse(p),
        };
        let ord = shifted.c.iter().position(|c| !self.kt.constants().is_zero(c)).unwrap();
        let unit: Vec<K::Elem> = shifted.c[ord..].iter().take(prec).cloned().collect();
        let v = match &self.center {
            Center::Finite(_) => ord as i64,
            Center::Infinity => ord as i64 - n as i64,
        };
        Some((v, unit))
    }
}

impl<K: Field> Completion for Laurent<K> {
    type Global = RatFunc<K>;
    type D = PowerSeries<K>;

    fn global(&self) -> &RatFunc<K> {
        &self.kt
    }
    fn dvr(&self, prec: usize) -> PowerSeries<K> {
        let name = match self.center {
            Center::Finite(_) => "u",
            Center::Infinity => "w",
        };
        PowerSeries::named(self.kt.constants().clone(), prec, name)
    }
    fn valuation(&self, x: &Frac<K::Elem>) -> Option<i64> {
        let (vn, _) = self.expand_poly(&x.num, 1)?;
        let (vd, _) = self.expand_poly(&x.den, 1).unwrap();
        Some(vn - vd)
    }
    fn expand(&self, x: &Frac<K::Elem>, prec: usize) -> Option<(i64, Vec<K::Elem>)> {
        let (vn, un) = self.expand_poly(&x.num, prec)?;
        let (vd, ud) = self.expand_poly(&x.den, prec).unwrap();
        let d = self.dvr(prec);
        let inv = d.unit_inv(&d.from_coeffs(ud)).unwrap();
        Some((vn - vd, d.mul(&d.from_coeffs(un), &inv)))
    }
    fn uniformizer(&self) -> Frac<K::Elem> {
        let kt = &self.kt;
        match &self.center {
            Center::Finite(a) => kt.sub(&kt.t(), &kt.from_const(a.clone())),
            Center::Infinity => kt.inv(&kt.t()).unwrap(),
        }
    }
    fn describe(&self) -> String {
        match &self.center {
            Center::Finite(a) => format!("t = {}", self.kt.constants().render(a)),
            Center::Infinity => "t = oo".into(),
        }
    }
}
