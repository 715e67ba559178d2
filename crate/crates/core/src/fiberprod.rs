//! Covers of the projective line and points of their fibered product.
//!
//! A cover `C → P¹` is a finite extension `k(C)` of `k(t)`. For places `P₁`,
//! `P₂` of two covers over a point `S`, the points of the normalized fibered
//! product over `(P₁, P₂)` are the absolute values extending both, computed
//! by [`two_place_classify`]. [`branch_count_oracle`] counts the same points
//! from local Puiseux expansions instead.

use crate::abhyankar::Verdict;
use crate::arith::factor::Factorable;
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RatFunc;
use crate::arith::ring::{Field, Ring};
use crate::local::completion::{Completion, Laurent};
use crate::local::dvr::{Dvr, PowerSeries};
use crate::places::{is_tame, place_extensions, GlobalField, PlaceExtension, PlaceOptions};
use crate::tensor::{places_for_pair, tensor_decompose, two_place_classify, two_place_precision, TensorDecomposition};
use crate::{Error, Result};
use num_integer::Integer;

#[derive(Clone, Debug)]
pub struct Cover<K: Factorable> {
    pub field: GlobalField<RatFunc<K>>,
    pub separable: bool,
}

impl<K: Factorable> Cover<K> {
    /// `k(C) = k(t)[x]/(f)`; `f` must be irreducible and separable.
    pub fn new(k: &K, f: Poly<<RatFunc<K> as Ring>::Elem>, name: &str) -> Result<Self> {
        let field = GlobalField::new(RatFunc::new(k.clone()), f, name)?;
        Ok(Cover { field, separable: true })
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

#[derive(Clone, Debug)]
pub struct CoverPlaces<K: Factorable> {
    pub places: Vec<PlaceExtension<Laurent<K>>>,
    /// Indices of places with residue degree above 1.
    pub audit: Vec<usize>,
}

pub fn cover_places_over<K: Factorable>(c: &Cover<K>, s: &Laurent<K>, opts: &PlaceOptions) -> Result<CoverPlaces<K>> {
    let places = place_extensions(&c.field, s, opts)?;
    let audit = places.iter().filter(|p| p.f > 1).map(|p| p.index).collect();
    Ok(CoverPlaces { places, audit })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRow {
    pub component: usize,
    pub j: usize,
    /// `e(Q/S)`.
    pub e: usize,
    pub f: usize,
}

#[derive(Clone, Debug)]
pub struct FiberCountReport {
    pub point: String,
    pub p1: usize,
    pub p2: usize,
    pub e1: usize,
    pub e2: usize,
    pub tame1: bool,
    pub tame2: bool,
    /// Number of points over `(P₁, P₂)` on each component.
    pub per_component: Vec<usize>,
    pub rows: Vec<FiberRow>,
    /// Every residue degree met: those of `P₁`, `P₂` and of each row.
    pub residue_degrees: Vec<usize>,
}

impl FiberCountReport {
    pub fn total(&self) -> usize {
        self.per_component.iter().sum()
    }

    pub fn sum_e(&self) -> usize {
        self.rows.iter().map(|r| r.e).sum()
    }

    pub fn product(&self) -> usize {
        self.e1 * self.e2
    }

    pub fn gcd(&self) -> usize {
        self.e1.gcd(&self.e2)
    }
}

fn audit(report: &FiberCountReport) -> Result<()> {
    let found = report.residue_degrees.iter().copied().max().unwrap_or(1);
    if found > 1 {
        let needed = report.residue_degrees.iter().fold(1usize, |a, &b| a.lcm(&b));
        return Err(Error::ResidueDegreeObstruction { found: found as u32, needed: needed as u32 });
    }
    Ok(())
}

/// Points of the fibered product over `(P₁, P₂)`, component by component.
pub fn fiber_count<K: Factorable>(
    t: &TensorDecomposition<RatFunc<K>>,
    p1: &PlaceExtension<Laurent<K>>,
    p2: &PlaceExtension<Laurent<K>>,
    opts: &PlaceOptions,
) -> Result<FiberCountReport> {
    let r = two_place_classify(t, p1, p2, opts)?;
    let mut rows = Vec::new();
    let mut residue_degrees = vec![p1.f, p2.f];
    for (i, vals) in r.values.iter().enumerate() {
        for v in vals {
            rows.push(FiberRow { component: i, j: v.j, e: v.e_abs, f: v.f_abs });
            residue_degrees.push(v.f_abs);
        }
    }
    let report = FiberCountReport {
        point: p1.place.describe(),
        p1: p1.index,
        p2: p2.index,
        e1: p1.e,
        e2: p2.e,
        tame1: is_tame(p1),
        tame2: is_tame(p2),
        per_component: r.values.iter().map(Vec::len).collect(),
        rows,
        residue_degrees,
    };
    audit(&report)?;
    Ok(report)
}

/// [`fiber_count`] for places given by index, with the precision raised
/// when the classification is indeterminate.
pub fn fiber_count_indexed<K: Factorable>(
    c1: &Cover<K>,
    c2: &Cover<K>,
    s: &Laurent<K>,
    i1: usize,
    i2: usize,
    opts: &PlaceOptions,
) -> Result<(FiberCountReport, PlaceExtension<Laurent<K>>, PlaceExtension<Laurent<K>>)> {
    let t = tensor_decompose(&c1.field, &c2.field)?;
    let mut prec = opts.precision.map_or_else(|| two_place_precision(&t, s), Ok)?;
    for _ in 0..4 {
        let (ps1, ps2) = places_for_pair(&t, s, prec, opts)?;
        let p1 = ps1.get(i1).ok_or_else(|| Error::InvalidInput(format!("C1 has {} places over {}", ps1.len(), s.describe())))?;
        let p2 = ps2.get(i2).ok_or_else(|| Error::InvalidInput(format!("C2 has {} places over {}", ps2.len(), s.describe())))?;
        match fiber_count(&t, p1, p2, opts) {
            Err(Error::IndeterminateValuation) => prec *= 2,
            other => return other.map(|r| (r, p1.clone(), p2.clone())),
        }
    }
    Err(Error::IndeterminateValuation)
}

/// `Σ e(Q/S) = e(P₁/S)·e(P₂/S)`.
pub fn verify_sum_e(report: &FiberCountReport) -> Verdict {
    Verdict::from_bool(report.sum_e() == report.product())
}

/// Total count `= gcd(e(P₁/S), e(P₂/S))`; needs one tame place.
pub fn verify_gcd_count(report: &FiberCountReport) -> Result<Verdict> {
    if !report.tame1 && !report.tame2 {
        return Err(Error::HypothesisViolated("both places are wildly ramified".into()));
    }
    Ok(Verdict::from_bool(report.total() == report.gcd()))
}

// ---------------------------------------------------------------------------
// Branch counting by rational Newton–Puiseux expansion.

/// `Σ a_{j,i} X^i Y^j` with every `a_{j,i}`, `i < prec`, known.
#[derive(Clone, Debug)]
struct Bivariate<K: Field> {
    rows: Vec<Vec<K::Elem>>,
    prec: usize,
}

impl<K: Field> Bivariate<K> {
    fn ord(&self, k: &K, j: usize) -> Option<usize> {
        self.rows.get(j)?.iter().position(|a| !k.is_zero(a))
    }
}

struct Oracle<'a, K: Field> {
    k: &'a K,
    depth: u32,
    bound: u32,
}

struct Edge {
    j0: usize,
    i0: usize,
    q: usize,
    m: usize,
    /// Lattice length.
    g: usize,
}

/// `(u, v)` with `u q - v m = 1`.
fn bezout(q: usize, m: usize) -> (i64, i64) {
    let e = (q as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(e.gcd, 1);
    (e.x, -e.y)
}

impl<'a, K: Factorable> Oracle<'a, K> {
    fn step(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > self.bound {
            return Err(Error::OracleInconclusive(self.bound));
        }
        Ok(())
    }

    /// Edges of the lower hull from `(0, ord a_0)` to `(last, 0)`.
    fn edges(&self, f: &Bivariate<K>, last: usize) -> Result<Vec<Edge>> {
        let v0 = f.ord(self.k, 0).ok_or(Error::OracleInconclusive(self.bound))?;
        if f.prec < v0 {
            return Err(Error::OracleInconclusive(self.bound));
        }
        let pts: Vec<(usize, usize)> = (0..=last).filter_map(|j| f.ord(self.k, j).map(|i| (j, i))).collect();
        let mut hull: Vec<(usize, usize)> = Vec::new();
        for &p in &pts {
            while hull.len() >= 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                let cross = (b.0 as i64 - a.0 as i64) * (p.1 as i64 - a.1 as i64) - (b.1 as i64 - a.1 as i64) * (p.0 as i64 - a.0 as i64);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Ok(hull
            .windows(2)
            .map(|w| {
                let (dj, di) = (w[1].0 - w[0].0, w[0].1 - w[1].1);
                let g = dj.gcd(&di);
                Edge { j0: w[0].0, i0: w[0].1, q: dj / g, m: di / g, g }
            })
            .collect())
    }

    /// Roots `ξ` of the edge polynomial with multiplicities.
    fn edge_roots(&self, f: &Bivariate<K>, e: &Edge) -> Result<Vec<(K::Elem, usize)>> {
        let k = self.k;
        let coeffs = (0..=e.g)
            .map(|s| {
                let (j, i) = (e.j0 + s * e.q, e.i0 - s * e.m);
                f.rows.get(j).and_then(|r| r.get(i)).cloned().unwrap_or_else(|| k.zero())
            })
            .collect();
        let phi = crate::arith::poly::PolyRing::new(k.clone()).from_coeffs(coeffs);
        let facs = k.factor(&phi)?;
        let mut out = Vec::new();
        for (psi, mult) in facs {
            let d = psi.deg().unwrap();
            if d > 1 {
                return Err(Error::ResidueDegreeObstruction { found: d as u32, needed: d as u32 });
            }
            out.push((k.neg(&psi.c[0]), mult));
        }
        Ok(out)
    }

    /// `F(ξ^v X^q, X^m (Y + ξ^u)) / X^l`.
    fn transform(&self, f: &Bivariate<K>, e: &Edge, xi: &K::Elem) -> Result<Bivariate<K>> {
        let k = self.k;
        let p = k.characteristic();
        if p != 0 && e.q as u64 % p == 0 {
            return Err(Error::OracleInconclusive(self.bound));
        }
        let (u, v) = bezout(e.q, e.m);
        let xi_pow = |n: i64| -> K::Elem {
            let a = k.pow(xi, n.unsigned_abs());
            if n < 0 {
                k.inv(&a).unwrap()
            } else {
                a
            }
        };
        let l = e.q * e.i0 + e.m * e.j0;
        let prec = (e.q * f.prec).saturating_sub(l);
        let dy = f.rows.len();
        let mut rows = vec![vec![k.zero(); prec]; dy];
        let xu = xi_pow(u);
        for (j, row) in f.rows.iter().enumerate() {
            // (Y + ξ^u)^j
            let mut binom = vec![k.one()];
            for _ in 0..j {
                let mut next = vec![k.zero(); binom.len() + 1];
                for (s, b) in binom.iter().enumerate() {
                    next[s + 1] = k.add(&next[s + 1], b);
                    next[s] = k.add(&next[s], &k.mul(b, &xu));
                }
                binom = next;
            }
            for (i, a) in row.iter().enumerate() {
                if k.is_zero(a) {
                    continue;
                }
                let exp = e.q * i + e.m * j;
                if exp < l {
                    return Err(Error::Internal("term below the Newton polygon".into()));
                }
                let exp = exp - l;
                if exp >= prec {
                    continue;
                }
                let c = k.mul(a, &xi_pow(v * i as i64));
                for (s, b) in binom.iter().enumerate() {
                    rows[s][exp] = k.add(&rows[s][exp], &k.mul(&c, b));
                }
            }
        }
        Ok(Bivariate { rows, prec })
    }

    /// Number of branches of `F = 0` through `Y = 0` (or all roots when
    /// `top`), each counted once.
    fn count(&mut self, f: &Bivariate<K>, top: bool) -> Result<usize> {
        self.step()?;
        let k = self.k;
        let last = if top {
            f.rows.len() - 1
        } else {
            (0..f.rows.len()).find(|&j| f.rows[j].first().is_some_and(|a| !k.is_zero(a))).ok_or(Error::OracleInconclusive(self.bound))?
        };
        if last == 1 {
            return Ok(1);
        }
        let mut total = 0;
        for e in self.edges(f, last)? {
            if !top && e.m == 0 {
                continue;
            }
            for (xi, mult) in self.edge_roots(f, &e)? {
                if mult == 1 {
                    total += 1;
                } else {
                    let g = self.transform(f, &e, &xi)?;
                    total += self.count(&g, false)?;
                }
            }
        }
        Ok(total)
    }

    /// For an irreducible `F` with a single branch of residue degree 1:
    /// `(Γ, e)` with `X = Γ T^e` along the branch.
    fn parametrize(&mut self, f: &Bivariate<K>) -> Result<(K::Elem, usize)> {
        let k = self.k;
        let mut gamma = k.one();
        let mut big_e = 1usize;
        let mut cur = f.clone();
        let mut top = true;
        loop {
            self.step()?;
            let last = if top {
                cur.rows.len() - 1
            } else {
                (0..cur.rows.len()).find(|&j| cur.rows[j].first().is_some_and(|a| !k.is_zero(a))).ok_or(Error::OracleInconclusive(self.bound))?
            };
            if last == 1 {
                return Ok((gamma, big_e));
            }
            let edges: Vec<Edge> = self.edges(&cur, last)?.into_iter().filter(|e| top || e.m > 0).collect();
            if edges.len() != 1 {
                return Err(Error::Internal("local factor has more than one branch".into()));
            }
            let e = &edges[0];
            let roots = self.edge_roots(&cur, e)?;
            if roots.len() != 1 {
                return Err(Error::Internal("local factor has more than one branch".into()));
            }
            let (xi, mult) = &roots[0];
            let (_, v) = bezout(e.q, e.m);
            let xv = k.pow(xi, (v.unsigned_abs() as u64) * big_e as u64);
            gamma = k.mul(&gamma, &if v < 0 { k.inv(&xv).unwrap() } else { xv });
            big_e *= e.q;
            if *mult == 1 {
                return Ok((gamma, big_e));
            }
            cur = self.transform(&cur, e, xi)?;
            top = false;
        }
    }
}

fn to_bivariate<K: Field>(d: &PowerSeries<K>, g: &Poly<Vec<K::Elem>>, prec: usize) -> Bivariate<K> {
    Bivariate { rows: g.c.iter().map(|a| (0..prec).map(|i| d.coeff(a, i)).collect()).collect(), prec }
}

/// Count the points over `(P₁, P₂)` from Puiseux expansions: parametrize the
/// branch of `P₁` as `t = Γ τ^e₁` and count the branches of `P₂`'s local
/// equation over `k((τ))`. `depth` defaults to `3·e₁·e₂` refinement rounds.
pub fn branch_count_oracle<K: Factorable>(
    p1: &PlaceExtension<Laurent<K>>,
    p2: &PlaceExtension<Laurent<K>>,
    depth: Option<u32>,
) -> Result<usize> {
    if p1.place.describe() != p2.place.describe() {
        return Err(Error::MismatchedBasePlace);
    }
    let bound = depth.unwrap_or(3 * (p1.e * p2.e) as u32).max(1);
    let d1 = p1.dvr();
    let k = d1.residue_field().clone();
    let mut oracle = Oracle { k: &k, depth: 0, bound };
    let g1 = to_bivariate(&d1, &p1.factor.poly, p1.factor.prec);
    let (gamma, e1) = oracle.parametrize(&g1)?;
    if e1 != p1.e {
        return Err(Error::Internal(format!("branch ramification {e1} differs from e = {}", p1.e)));
    }
    let d2 = p2.dvr();
    let prec2 = p2.factor.prec;
    let prec = prec2 * e1;
    let rows = p2
        .factor
        .poly
        .c
        .iter()
        .map(|a| {
            let mut row = vec![k.zero(); prec];
            let mut gp = k.one();
            for i in 0..prec2 {
                row[i * e1] = k.mul(&d2.coeff(a, i), &gp);
                gp = k.mul(&gp, &gamma);
            }
            row
        })
        .collect();
    oracle.depth = 0;
    oracle.count(&Bivariate { rows, prec }, true)
}
