//! Newton polygons of polynomials over a truncated valuation ring.

use crate::arith::poly::Poly;
use crate::arith::rational::Rational;
use crate::local::dvr::Dvr;
use crate::{Error, Result};
use num_bigint::BigInt;

/// One edge of the lower convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    /// Left end `(i, v(a_i))`.
    pub start: (usize, i64),
    /// Right end.
    pub end: (usize, i64),
    /// Common valuation `h/e` of the roots attached to this edge, i.e. minus
    /// the geometric slope.
    pub root_valuation: Rational,
    pub h: i64,
    pub e: usize,
}

impl Segment {
    pub fn length(&self) -> usize {
        self.end.0 - self.start.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, i64)>,
    /// Left to right, so root valuations decrease and geometric slopes
    /// increase.
    pub segments: Vec<Segment>,
    /// Number of leading coefficients that are exactly zero.
    pub zero_order: usize,
}

impl NewtonPolygon {
    /// Hull of `(i, vals[i])`; `None` entries are exact zeros.
    pub fn from_valuations(vals: &[Option<i64>]) -> NewtonPolygon {
        let zero_order = vals.iter().take_while(|v| v.is_none()).count();
        let pts: Vec<(usize, i64)> = vals.iter().enumerate().filter_map(|(i, v)| v.map(|v| (i, v))).collect();
        let mut hull: Vec<(usize, i64)> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // Drop b when it lies on or above the chord a..p.
                let lhs = (b.1 - a.1) as i128 * (p.0 - a.0) as i128;
                let rhs = (p.1 - a.1) as i128 * (b.0 - a.0) as i128;
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0], w[1]);
                let rv = Rational::new(BigInt::from(a.1 - b.1), BigInt::from((b.0 - a.0) as i64));
                let h: i64 = rv.numer().try_into().unwrap();
                let e: i64 = rv.denom().try_into().unwrap();
                Segment { start: a, end: b, root_valuation: rv, h, e: e as usize }
            })
            .collect();
        NewtonPolygon { vertices: hull, segments, zero_order }
    }

    /// Lower hull value at abscissa `i`.
    pub fn hull_at(&self, i: usize) -> Option<Rational> {
        let s = self.segments.iter().find(|s| s.start.0 <= i && i <= s.end.0)?;
        let di = (i - s.start.0) as i64;
        Some(Rational::from_integer(BigInt::from(s.start.1)) - &s.root_valuation * BigInt::from(di))
    }

    pub fn degree(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.0)
    }
}

/// Newton polygon over `d`. A coefficient that vanishes at the working
/// precision is treated as absent when the hull passes strictly below `N`
/// there, and makes the polygon indeterminate otherwise.
pub fn newton_polygon<D: Dvr>(d: &D, f: &Poly<D::Elem>) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::InvalidInput("Newton polygon of the zero polynomial".into()));
    }
    let n = d.prec() as i64;
    let vals: Vec<Option<i64>> = f.c.iter().map(|a| d.val(a).map(|v| v as i64)).collect();
    if vals[0].is_none() {
        return Err(Error::IndeterminateValuation);
    }
    let np = NewtonPolygon::from_valuations(&vals);
    for (i, v) in vals.iter().enumerate() {
        if v.is_none() {
            let bound = np.hull_at(i).ok_or(Error::IndeterminateValuation)?;
            if bound >= Rational::from_integer(BigInt::from(n)) {
                return Err(Error::IndeterminateValuation);
            }
        }
    }
    Ok(np)
}

