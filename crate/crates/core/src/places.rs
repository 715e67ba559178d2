//! Global fields and the extensions of a base place.
//!
//! A finite extension `L = K[x]/(f)` of `Q` or `k(t)` has one extension of a
//! base place per irreducible factor of `f` over the completion. The factors
//! are computed on an integral model of a shifted presentation `f(x + c)`;
//! the shift that succeeded is recorded so that places have stable indices.

use crate::arith::factor::Factorable;
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::rational::Rational;
use crate::arith::ring::{Field, Ring};
use crate::local::completion::{integral_model, Completion, Laurent, Padic};
use crate::local::dvr::Dvr;
use crate::local::element::LocalElement;
use crate::local::extension::LocalExtension;
use crate::newton::factor::{local_factor, LocalFactor};
use crate::newton::polygon::newton_polygon;
use crate::order::order_factor;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A base place: a completion of `Q` or `k(t)` whose residue field can be
/// factored over.
pub trait BasePlace: Completion<Global = Self::G, D = Self::Ring> {
    type G: Factorable;
    type Ring: Dvr<Residue = Self::Res>;
    type Res: Factorable;
}

impl BasePlace for Padic {
    type G = crate::arith::rational::Q;
    type Ring = crate::local::Zp;
    type Res = crate::arith::finite::Fq;
}

impl<K: Factorable> BasePlace for Laurent<K> {
    type G = crate::arith::ratfunc::RatFunc<K>;
    type Ring = crate::local::PowerSeries<K>;
    type Res = K;
}

/// `K[x]/(f)` for a monic separable `f`.
#[derive(Clone, Debug)]
pub struct GlobalField<K: Field> {
    pub base: K,
    pub poly: Poly<K::Elem>,
    pub name: String,
}

impl<K: Factorable> GlobalField<K> {
    /// A field: `f` must be monic and irreducible.
    pub fn new(base: K, poly: Poly<K::Elem>, name: &str) -> Result<Self> {
        let g = GlobalField::etale(base, poly, name)?;
        let facs = g.base.factor(&g.poly)?;
        if facs.len() != 1 || facs[0].1 != 1 {
            return Err(Error::InvalidInput(format!("defining polynomial of {name} is reducible")));
        }
        Ok(g)
    }

    /// A product of fields given by a monic squarefree `f`; its places are
    /// the places of all the factors.
    pub fn etale(base: K, poly: Poly<K::Elem>, name: &str) -> Result<Self> {
        let r = PolyRing::new(base.clone());
        match poly.lc() {
            Some(c) if base.is_one(c) && poly.deg() != Some(0) => {}
            _ => return Err(Error::InvalidInput(format!("defining polynomial of {name} must be monic of positive degree"))),
        }
        let d = r.derivative(&poly);
        if d.is_zero() || r.gcd(&poly, &d).deg() != Some(0) {
            return Err(Error::Inseparable);
        }
        Ok(GlobalField { base, poly, name: name.to_string() })
    }

    /// The base field itself, presented as `K[x]/(x)`.
    pub fn base_field(base: K) -> Self {
        let poly = PolyRing::new(base.clone()).x();
        GlobalField { base, poly, name: "K".into() }
    }

    pub fn degree(&self) -> usize {
        self.poly.deg().unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct PlaceOptions {
    /// Working precision in digits; derived from the discriminant when absent.
    pub precision: Option<usize>,
    pub shift_budget: u32,
    pub seed: u64,
    /// Use the maximal-order factorization when no shift is regular.
    pub fallback: bool,
}

impl Default for PlaceOptions {
    fn default() -> Self {
        PlaceOptions { precision: None, shift_budget: 20, seed: 0, fallback: true }
    }
}

/// One extension of a base place to `L`.
#[derive(Clone, Debug)]
pub struct PlaceExtension<C: BasePlace> {
    pub place: C,
    /// Position among the extensions of `place`, from 0.
    pub index: usize,
    /// The shifted integral model that was factored: `π^(s·n) f(y/π^s + c)`.
    pub model: Poly<<C::D as Ring>::Elem>,
    pub shift: i64,
    pub scale: i64,
    pub factor: LocalFactor<C::D>,
    pub e: usize,
    pub f: usize,
}

impl<C: BasePlace> PlaceExtension<C> {
    pub fn local_degree(&self) -> usize {
        self.e * self.f
    }

    pub fn residue_char(&self) -> u64 {
        self.place.dvr(1).residue_char()
    }

    pub fn dvr(&self) -> C::D {
        self.place.dvr(self.factor.prec)
    }

    pub fn describe(&self) -> String {
        format!("place #{} over {}", self.index, self.place.describe())
    }
}

pub fn ramification_index<C: BasePlace>(pe: &PlaceExtension<C>) -> usize {
    pe.e
}

pub fn residue_degree<C: BasePlace>(pe: &PlaceExtension<C>) -> usize {
    pe.f
}

pub fn is_tame<C: BasePlace>(pe: &PlaceExtension<C>) -> bool {
    let p = pe.residue_char();
    p == 0 || pe.e as u64 % p != 0
}

/// Valuation of the discriminant of the integral model of `f`.
fn model_disc_valuation<C: BasePlace>(c: &C, f: &Poly<<C::G as Ring>::Elem>) -> Result<usize> {
    let g = c.global();
    let r = PolyRing::new(g.clone());
    let n = f.deg().unwrap() as i64;
    let disc = r.discriminant(f);
    let v = c.valuation(&disc).ok_or(Error::Inseparable)?;
    let s = crate::local::completion::integral_scale(c, f);
    Ok((v + s * n * (n - 1)).max(0) as usize)
}

/// Default working precision for `f` at `c`.
pub fn default_precision<C: BasePlace>(c: &C, f: &Poly<<C::G as Ring>::Elem>) -> Result<usize> {
    Ok(2 * model_disc_valuation(c, f)? + 12)
}

const ESCALATIONS: usize = 2;

/// All extensions of the base place `c` to `l`.
pub fn place_extensions<C: BasePlace>(l: &GlobalField<C::G>, c: &C, opts: &PlaceOptions) -> Result<Vec<PlaceExtension<C>>> {
    let mut prec = match opts.precision {
        Some(p) if p < 1 => return Err(Error::PrecisionUnderflow(p as i64)),
        Some(p) => p,
        None => default_precision(c, &l.poly)?,
    };
    let mut last = Error::IndeterminateValuation;
    for _ in 0..=ESCALATIONS {
        match attempt(l, c, prec, opts) {
            Err(Error::IndeterminateValuation) => last = Error::IndeterminateValuation,
            other => return other,
        }
        prec *= 2;
    }
    Err(last)
}

fn shift_candidates<K: Field>(k: &K, budget: u32) -> Vec<i64> {
    let p = k.characteristic();
    (0..=budget as i64).filter(|&c| p == 0 || (c as u64) < p).collect()
}

fn attempt<C: BasePlace>(l: &GlobalField<C::G>, c: &C, prec: usize, opts: &PlaceOptions) -> Result<Vec<PlaceExtension<C>>> {
    let g = c.global();
    let r = PolyRing::new(g.clone());
    let d = c.dvr(prec);
    for shift in shift_candidates(g, opts.shift_budget) {
        let fc = r.taylor_shift(&l.poly, &g.from_i64(shift));
        if g.is_zero(&fc.c[0]) {
            // A root at the center has no finite valuation.
            continue;
        }
        let model = integral_model(c, &fc, prec)?;
        match local_factor(&d, &model.poly) {
            Ok(fs) => return Ok(build(c, fs, model.poly, shift, model.scale)),
            Err(Error::NotRegular) => continue,
            Err(e) => return Err(e),
        }
    }
    if !opts.fallback {
        return Err(Error::NotRegularAfterShifts(opts.shift_budget));
    }
    let shift = (0..).find(|&s| !g.is_zero(&r.eval(&l.poly, &g.from_i64(s)))).unwrap();
    let model = integral_model(c, &r.taylor_shift(&l.poly, &g.from_i64(shift)), prec)?;
    let fs = order_factor(&d, &model.poly, opts.seed)?;
    Ok(build(c, fs, model.poly, shift, model.scale))
}

fn build<C: BasePlace>(
    c: &C,
    fs: Vec<LocalFactor<C::D>>,
    model: Poly<<C::D as Ring>::Elem>,
    shift: i64,
    scale: i64,
) -> Vec<PlaceExtension<C>> {
    fs.into_iter()
        .enumerate()
        .map(|(index, factor)| PlaceExtension {
            place: c.clone(),
            index,
            model: model.clone(),
            shift,
            scale,
            e: factor.e,
            f: factor.f,
            factor,
        })
        .collect()
}

/// `Σ e_i f_i` over a list of extensions.
pub fn fundamental_sum<C: BasePlace>(exts: &[PlaceExtension<C>]) -> usize {
    exts.iter().map(|p| p.e * p.f).sum()
}

/// `∏ g_j ≡ model` coefficient-wise modulo `π^N`, `N` the least factor
/// precision. All extensions must come from one call to [`place_extensions`].
pub fn reconstruction_holds<C: BasePlace>(exts: &[PlaceExtension<C>]) -> bool {
    let Some(first) = exts.first() else { return false };
    let n = exts.iter().map(|p| p.factor.prec).min().unwrap();
    let d = first.place.dvr(n);
    let r = PolyRing::new(d.clone());
    let prod = exts.iter().fold(r.one(), |acc, p| r.mul(&acc, &r.from_coeffs(p.factor.poly.c.iter().map(|a| d.reduce(a)).collect())));
    let model = r.from_coeffs(first.model.c.iter().map(|a| d.reduce(a)).collect());
    r.is_zero(&r.sub(&prod, &model))
}

/// The irreducible factor of `f` over `K̂` belonging to a place, in the
/// original variable `x`: the model factor is `g(y)` with
/// `y = π^scale (x - shift)`.
#[derive(Clone, Debug)]
pub struct LocalMinPoly<C: BasePlace> {
    pub model_factor: Poly<<C::D as Ring>::Elem>,
    pub shift: i64,
    pub scale: i64,
    pub prec: usize,
    pub place: C,
}

impl<C: BasePlace> LocalMinPoly<C> {
    pub fn degree(&self) -> usize {
        self.model_factor.deg().unwrap()
    }

    /// Coefficients of the monic polynomial in `x`, low degree first.
    pub fn coefficients(&self) -> Vec<LocalElement<C::D>> {
        let d = self.place.dvr(self.prec);
        let m = self.degree();
        // Factor of f(x + c): π^(-s m) G(π^s x).
        let gc: Vec<LocalElement<C::D>> = self
            .model_factor
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| LocalElement::from_scaled(&d, a, -self.scale * (m - i) as i64))
            .collect();
        if self.shift == 0 {
            return gc;
        }
        let c = LocalElement::from_scaled(&d, &d.from_i64(self.shift), 0);
        let mut acc: Vec<LocalElement<C::D>> = vec![gc[m].clone()];
        for a in gc[..m].iter().rev() {
            // acc · (x - c) + a
            let mut next = vec![LocalElement::zero_exact(&d); acc.len() + 1];
            for (j, b) in acc.iter().enumerate() {
                next[j + 1] = next[j + 1].add(&d, b);
                next[j] = next[j].sub(&d, &b.mul(&d, &c));
            }
            next[0] = next[0].add(&d, a);
            acc = next;
        }
        acc
    }
}

pub fn local_min_poly<C: BasePlace>(pe: &PlaceExtension<C>) -> LocalMinPoly<C> {
    LocalMinPoly {
        model_factor: pe.factor.poly.clone(),
        shift: pe.shift,
        scale: pe.scale,
        prec: pe.factor.prec,
        place: pe.place.clone(),
    }
}

/// Valuation of the adjoined root of the factor, through its norm.
pub fn root_valuation_by_norm<C: BasePlace>(pe: &PlaceExtension<C>) -> Result<Rational> {
    let d = pe.dvr();
    let le = LocalExtension::new(&d, &pe.factor.poly, 0)?;
    let x = PolyRing::new(d.clone()).x();
    le.element_valuation(&d, &x)
}

/// Root valuation read off the Newton polygon of the factor.
pub fn root_valuation_by_polygon<C: BasePlace>(pe: &PlaceExtension<C>) -> Result<Rational> {
    let d = pe.dvr();
    let np = newton_polygon(&d, &pe.factor.poly)?;
    match np.segments.as_slice() {
        [s] => Ok(s.root_valuation.clone()),
        _ => Err(Error::Internal("irreducible factor with a broken Newton polygon".into())),
    }
}

/// Lower bound for `e` from the value group generated by `v(π) = 1` and the
/// valuations of `samples` random integral elements of the local field.
pub fn sampled_ramification<C: BasePlace>(pe: &PlaceExtension<C>, samples: usize, seed: u64) -> Result<usize> {
    let d = pe.dvr();
    let le = LocalExtension::new(&d, &pe.factor.poly, seed)?;
    let dr = PolyRing::new(d.clone());
    let n = pe.factor.degree;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rf = d.residue_field();
    let mut den = BigInt::from(1);
    let x = dr.x();
    let mut consider = |a: &Poly<<C::D as Ring>::Elem>| -> Result<()> {
        match le.element_valuation(&d, a) {
            Ok(v) => {
                den = den.lcm(v.denom());
                Ok(())
            }
            Err(Error::IndeterminateValuation) => Ok(()),
            Err(e) => Err(e),
        }
    };
    consider(&x)?;
    for _ in 0..samples {
        let c = (0..n)
            .map(|i| {
                let a = d.lift(&rf.random(&mut rng));
                d.mul_pi(&a, rng.gen_range(0..=(i % 2)))
            })
            .collect();
        consider(&dr.from_coeffs(c))?;
    }
    Ok(den.try_into().unwrap_or(usize::MAX))
}
