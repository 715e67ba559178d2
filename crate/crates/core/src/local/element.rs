//! Elements of a base completion with relative precision tracking.
//!
//! A nonzero element is `π^v · u` with `u` a unit known to `prec` digits, so
//! its absolute precision is `v + prec`. An element with no significant digit
//! left is "zero at precision": its valuation is only bounded below.

use super::dvr::Dvr;
use crate::arith::ring::{Field, Ring};
use crate::{Error, Result};

type Res<D> = <<D as Dvr>::Residue as Ring>::Elem;

#[derive(Clone, Debug)]
pub struct LocalElement<D: Dvr> {
    val: i64,
    unit: D::Elem,
    prec: usize,
    exact_zero: bool,
}

impl<D: Dvr> LocalElement<D> {
    /// `π^shift · a` where `a` is known modulo `π^(d.prec())`.
    pub fn from_scaled(d: &D, a: &D::Elem, shift: i64) -> Self {
        match d.val(a) {
            None => LocalElement { val: shift + d.prec() as i64, unit: d.zero(), prec: 0, exact_zero: false },
            Some(k) => {
                let unit = d.div_pi(a, k);
                LocalElement { val: shift + k as i64, unit, prec: d.prec() - k, exact_zero: false }
            }
        }
    }

    /// An element known exactly to be zero.
    pub fn zero_exact(d: &D) -> Self {
        LocalElement { val: 0, unit: d.zero(), prec: 0, exact_zero: true }
    }

    pub fn one(d: &D) -> Self {
        LocalElement { val: 0, unit: d.one(), prec: d.prec(), exact_zero: false }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// Valuation; `Ok(None)` for an exact zero.
    pub fn valuation(&self) -> Result<Option<i64>> {
        if self.exact_zero {
            Ok(None)
        } else if self.prec == 0 {
            Err(Error::IndeterminateValuation)
        } else {
            Ok(Some(self.val))
        }
    }

    /// Number of significant digits of the unit part.
    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Absolute precision `v + prec`; `None` for an exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        (!self.exact_zero).then_some(self.val + self.prec as i64)
    }

    pub fn unit(&self) -> &D::Elem {
        &self.unit
    }

    /// Digits of the unit part, `prec` of them.
    pub fn digits(&self, d: &D) -> Vec<Res<D>> {
        d.with_prec(self.prec).digits(&self.unit)
    }

    /// The element as `(a, shift)` with `π^shift · a`, `a` reduced in `d`.
    pub fn to_scaled(&self, d: &D) -> (D::Elem, i64) {
        if self.exact_zero || self.prec == 0 {
            return (d.zero(), 0);
        }
        (d.reduce(&self.unit), self.val)
    }

    pub fn add(&self, d: &D, other: &Self) -> Self {
        if self.exact_zero {
            return other.clone();
        }
        if other.exact_zero {
            return self.clone();
        }
        let abs = (self.val + self.prec as i64).min(other.val + other.prec as i64);
        let low = self.val.min(other.val);
        let width = abs - low;
        if width <= 0 {
            return LocalElement { val: abs, unit: d.zero(), prec: 0, exact_zero: false };
        }
        let dw = d.with_prec(width as usize);
        let term = |x: &Self| {
            if x.prec == 0 {
                dw.zero()
            } else {
                dw.mul_pi(&dw.reduce(&x.unit), (x.val - low) as usize)
            }
        };
        let s = dw.add(&term(self), &term(other));
        let out = LocalElement::from_scaled(&dw, &s, low);
        LocalElement { unit: d.reduce(&out.unit), ..out }
    }

    pub fn neg(&self, d: &D) -> Self {
        LocalElement { unit: d.neg(&self.unit), ..self.clone() }
    }

    pub fn sub(&self, d: &D, other: &Self) -> Self {
        self.add(d, &other.neg(d))
    }

    pub fn mul(&self, d: &D, other: &Self) -> Self {
        if self.exact_zero || other.exact_zero {
            return LocalElement::zero_exact(d);
        }
        let prec = self.prec.min(other.prec);
        let val = self.val + other.val;
        if prec == 0 {
            // Only a lower bound on the valuation survives.
            let bound = (self.val + self.prec as i64 + other.val).min(other.val + other.prec as i64 + self.val);
            return LocalElement { val: bound, unit: d.zero(), prec: 0, exact_zero: false };
        }
        let dp = d.with_prec(prec);
        let u = dp.mul(&dp.reduce(&self.unit), &dp.reduce(&other.unit));
        LocalElement { val, unit: d.reduce(&u), prec, exact_zero: false }
    }

    pub fn inv(&self, d: &D) -> Result<Self> {
        if self.exact_zero {
            return Err(Error::DivisionByExactZero);
        }
        if self.prec == 0 {
            return Err(Error::IndeterminateValuation);
        }
        let dp = d.with_prec(self.prec);
        let u = dp.unit_inv(&dp.reduce(&self.unit)).ok_or_else(|| Error::Internal("unit part is not a unit".into()))?;
        Ok(LocalElement { val: -self.val, unit: d.reduce(&u), prec: self.prec, exact_zero: false })
    }

    pub fn div(&self, d: &D, other: &Self) -> Result<Self> {
        Ok(self.mul(d, &other.inv(d)?))
    }

    /// Residue class of a valuation-zero element.
    pub fn residue(&self, d: &D) -> Result<Res<D>> {
        match self.valuation()? {
            Some(0) => Ok(d.residue(&self.unit)),
            _ => Err(Error::NotAUnit),
        }
    }

    pub fn render(&self, d: &D) -> String {
        if self.exact_zero {
            return "0".into();
        }
        let u = d.uniformizer_name();
        if self.prec == 0 {
            return format!("O({u}^{})", self.val);
        }
        let rf = d.residue_field();
        let mut terms = Vec::new();
        for (i, c) in self.digits(d).iter().enumerate() {
            if rf.is_zero(c) {
                continue;
            }
            let k = self.val + i as i64;
            let c = rf.render(c);
            terms.push(match k {
                0 => c,
                1 => format!("{c}*{u}"),
                _ => format!("{c}*{u}^{k}"),
            });
        }
        format!("{} + O({u}^{})", terms.join(" + "), self.val + self.prec as i64)
    }
}

/// Equality of known digits; exact zeros equal only exact zeros.
impl<D: Dvr> PartialEq for LocalElement<D>
where
    D::Elem: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        if self.exact_zero || other.exact_zero {
            return self.exact_zero == other.exact_zero;
        }
        self.val == other.val && self.prec == other.prec && self.unit == other.unit
    }
}
