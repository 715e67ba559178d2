//! `L ⊗_K M` as a product of fields, and the absolute values on each factor
//! extending a chosen place of `L` and of `M`.
//!
//! With `L = K[x]/(f)`, the components are `F_i = M[x]/(f_i)` for the
//! irreducible factors `f_i` of `f` over `M`. For places `P` of `L` and `R`
//! of `M` over the same base place, the local factor `g` of `f` at `P` is
//! factored over `M̂_R`; each factor `g_j` is one absolute value on exactly
//! one `F_i`, namely the one whose `f_i` it divides.

use crate::arith::algext::AlgExt;
use crate::arith::factor::{factor_over_extension, norm_poly, trager_shifts, Factorable};
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ring::Ring;
use crate::local::completion::Completion;
use crate::local::dvr::Dvr;
use crate::local::extension::ExtDvr;
use crate::newton::factor::{local_factor, LocalFactor};
use crate::order::order_factor;
use crate::places::{is_tame, place_extensions, BasePlace, GlobalField, PlaceExtension, PlaceOptions};
use crate::{Error, Result};
use num_integer::Integer;

type GElem<C> = <<C as BasePlace>::G as Ring>::Elem;
type DElem<C> = <<C as Completion>::D as Ring>::Elem;

/// One field `F_i = M[x]/(f_i)` of the decomposition.
#[derive(Clone, Debug)]
pub struct TensorComponent<K: Factorable> {
    /// `f_i` over `M`; the image of `L`'s generator is the class of `x`.
    pub factor: Poly<Poly<K::Elem>>,
    pub over_m: GlobalField<AlgExt<K>>,
}

impl<K: Factorable> TensorComponent<K> {
    /// `[F_i : M]`.
    pub fn degree(&self) -> usize {
        self.factor.deg().unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct TensorDecomposition<K: Factorable> {
    pub l: GlobalField<K>,
    pub m: GlobalField<K>,
    pub m_field: AlgExt<K>,
    pub components: Vec<TensorComponent<K>>,
}

impl<K: Factorable> TensorDecomposition<K> {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `F_i` over `K`, generated by `x + c·y` where `y` generates `M`;
    /// returns the field and `c`.
    pub fn absolute_field(&self, i: usize) -> Result<(GlobalField<K>, i64)> {
        absolute_field(&self.m_field, &self.components[i].factor, &format!("F{}", i + 1))
    }
}

/// Decompose `L ⊗_K M` for fields `L` and `M`.
pub fn tensor_decompose<K: Factorable>(l: &GlobalField<K>, m: &GlobalField<K>) -> Result<TensorDecomposition<K>> {
    let k = &l.base;
    let kr = PolyRing::new(k.clone());
    let lp = kr.derivative(&l.poly);
    if lp.is_zero() || kr.gcd(&l.poly, &lp).deg() != Some(0) {
        return Err(Error::Inseparable);
    }
    let mf = AlgExt::new(k.clone(), m.poly.clone(), "y");
    let mr = PolyRing::new(mf.clone());
    // Coprime degrees force [F:K] = [L:K]·[M:K]: f stays irreducible over M.
    let mut factors = if l.degree().gcd(&m.degree()) == 1 {
        vec![mr.from_coeffs(l.poly.c.iter().map(|a| mf.embed(a)).collect())]
    } else {
        factor_over_extension(&l.poly, &mf)?
    };
    factors = factors.into_iter().map(|g| mr.monic(&g)).collect();
    factors.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
    let components = factors
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            let over_m = GlobalField { base: mf.clone(), poly: g.clone(), name: format!("F{}/M", i + 1) };
            TensorComponent { factor: g, over_m }
        })
        .collect();
    Ok(TensorDecomposition { l: l.clone(), m: m.clone(), m_field: mf, components })
}

/// Minimal polynomial over `K` of `x + k·y` in `M[x]/(g)`, for the first
/// `k` making it squarefree.
fn absolute_field<K: Factorable>(mf: &AlgExt<K>, g: &Poly<Poly<K::Elem>>, name: &str) -> Result<(GlobalField<K>, i64)> {
    let mr = PolyRing::new(mf.clone());
    let kr = PolyRing::new(mf.base().clone());
    for c in trager_shifts() {
        let cy = mf.mul(&mf.from_i64(c), &mf.generator());
        let shifted = mr.taylor_shift(g, &mf.neg(&cy));
        let norm = kr.monic(&norm_poly(mf, &shifted));
        if mf.base().is_squarefree_poly(&norm) {
            return Ok((GlobalField::etale(mf.base().clone(), norm, name)?, c));
        }
    }
    Err(Error::Internal("no primitive element found for a tensor component".into()))
}

/// One absolute value on a component: a factor `g_j` of `g` over `M̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRecord {
    pub j: usize,
    /// `[F̂_ν : M̂] = deg g_j`.
    pub local_degree: usize,
    /// Ramification and residue degree of `g_j` over `M̂`.
    pub e_rel: usize,
    pub f_rel: usize,
    /// The same over `K̂`.
    pub e_abs: usize,
    pub f_abs: usize,
}

#[derive(Clone, Debug)]
pub struct TwoPlaceResult<C: BasePlace> {
    pub place: C,
    pub place_l: usize,
    pub place_m: usize,
    pub e_l: usize,
    pub f_l: usize,
    pub e_m: usize,
    pub f_m: usize,
    pub tame_l: bool,
    pub tame_m: bool,
    /// `deg g = [L̂:K̂]`.
    pub deg_g: usize,
    /// Factors of `g` over `M̂`, in the model variable of `L`'s place.
    pub local_factors: Vec<LocalFactor<ExtDvr<C::D>>>,
    /// Component index of each local factor.
    pub sigma: Vec<usize>,
    pub values: Vec<Vec<ExtensionRecord>>,
    pub prec: usize,
}

impl<C: BasePlace> TwoPlaceResult<C> {
    /// `Σ_i Σ_ν [F̂_ν : M̂]`.
    pub fn local_degree_sum(&self) -> usize {
        self.values.iter().flatten().map(|r| r.local_degree).sum()
    }

    pub fn degree_identity_holds(&self) -> bool {
        self.local_degree_sum() == self.deg_g
    }

    pub fn count(&self) -> usize {
        self.values.iter().map(Vec::len).sum()
    }
}

pub fn absolute_values_on_component<C: BasePlace>(r: &TwoPlaceResult<C>, i: usize) -> &[ExtensionRecord] {
    &r.values[i]
}

/// `π^(s·deg) p(X/π^s + c)` for `p` over a ring containing `K`.
fn rescale<R: Ring>(r: &R, p: &Poly<R::Elem>, pi: &R::Elem, shift: i64, scale: i64) -> Poly<R::Elem> {
    let pr = PolyRing::new(r.clone());
    let shifted = pr.taylor_shift(p, &r.from_i64(shift));
    let n = shifted.deg().unwrap();
    let c = shifted
        .c
        .iter()
        .enumerate()
        .map(|(k, a)| r.mul(a, &r.pow(pi, (scale * (n - k) as i64) as u64)))
        .collect();
    pr.from_coeffs(c)
}

/// `M ⊂ M̂` through the class `Y` of `M`'s place: an element `b(y)` is
/// returned as `(w, β)` with `b = β / π^w` and `β` integral.
struct MEmbedding<'a, C: BasePlace> {
    c: &'a C,
    ext: &'a ExtDvr<C::D>,
    ypows: Vec<Vec<DElem<C>>>,
    shift: i64,
    scale: i64,
    prec: usize,
}

impl<'a, C: BasePlace> MEmbedding<'a, C> {
    fn new(c: &'a C, ext: &'a ExtDvr<C::D>, pm: &PlaceExtension<C>, deg_m: usize, prec: usize) -> Result<Self> {
        let d = ext.base().clone();
        let dr = PolyRing::new(d.clone());
        let h = dr.from_coeffs(pm.factor.poly.c.iter().map(|a| d.reduce(a)).collect());
        let mut ypows = Vec::with_capacity(deg_m);
        for k in 0..deg_m {
            let yk = dr.rem_monic(&dr.monomial(d.one(), k), &h);
            ypows.push(ext.from_power(&yk.c)?);
        }
        Ok(MEmbedding { c, ext, ypows, shift: pm.shift, scale: pm.scale, prec })
    }

    /// Terms `(v_k, u_k)` of `b(Y/π^s + c) = Σ π^(v_k) u_k Y^k`.
    fn terms(&self, g: &C::G, b: &Poly<GElem<C>>) -> Vec<Option<(i64, DElem<C>)>> {
        let gr = PolyRing::new(g.clone());
        let shifted = gr.taylor_shift(b, &g.from_i64(self.shift));
        shifted
            .c
            .iter()
            .enumerate()
            .map(|(k, a)| self.c.expand(a, self.prec).map(|(v, u)| (v - self.scale * k as i64, u)))
            .collect()
    }

    fn value(&self, terms: &[Option<(i64, DElem<C>)>], w: i64) -> Vec<DElem<C>> {
        let e = self.ext;
        let mut acc = e.zero();
        for (k, t) in terms.iter().enumerate() {
            if let Some((v, u)) = t {
                let sh = v + w;
                debug_assert!(sh >= 0);
                let term = e.mul(&e.embed(&e.base().reduce(u)), &self.ypows[k]);
                let scaled: Vec<DElem<C>> = term.iter().map(|x| e.base().mul_pi(x, sh as usize)).collect();
                acc = e.add(&acc, &scaled);
            }
        }
        acc
    }
}

/// Factor `g` over `M̂`, shifting `X -> X + k` when Newton refinement stalls.
fn factor_over_ext<D: Dvr>(e: &ExtDvr<D>, g: &Poly<Vec<D::Elem>>, opts: &PlaceOptions) -> Result<Vec<LocalFactor<ExtDvr<D>>>>
where
    D::Residue: Factorable,
{
    let er = PolyRing::new(e.clone());
    let p = e.residue_char();
    for k in 0..=opts.shift_budget as i64 {
        if p != 0 && k as u64 >= p {
            break;
        }
        let gk = er.taylor_shift(g, &e.from_i64(k));
        match local_factor(e, &gk) {
            Ok(fs) => {
                if k == 0 {
                    return Ok(fs);
                }
                let back = e.from_i64(-k);
                return Ok(fs
                    .into_iter()
                    .map(|mut lf| {
                        lf.poly = er.taylor_shift(&lf.poly, &back);
                        lf
                    })
                    .collect());
            }
            Err(Error::NotRegular) => continue,
            Err(err) => return Err(err),
        }
    }
    if !opts.fallback {
        return Err(Error::NotRegularAfterShifts(opts.shift_budget));
    }
    order_factor(e, g, opts.seed)
}

/// Classify the absolute values on the components of `L ⊗ M` that extend
/// `pl` and `pm`.
pub fn two_place_classify<C: BasePlace>(
    t: &TensorDecomposition<C::G>,
    pl: &PlaceExtension<C>,
    pm: &PlaceExtension<C>,
    opts: &PlaceOptions,
) -> Result<TwoPlaceResult<C>> {
    if pl.place.describe() != pm.place.describe() {
        return Err(Error::MismatchedBasePlace);
    }
    let c = &pl.place;
    let g_field = c.global();
    let prec = pl.factor.prec.min(pm.factor.prec);
    let d = c.dvr(prec);
    let dr = PolyRing::new(d.clone());
    let hm = dr.from_coeffs(pm.factor.poly.c.iter().map(|a| d.reduce(a)).collect());
    let ext = ExtDvr::new(&d, &hm, opts.seed)?;
    let er = PolyRing::new(ext.clone());
    let gl = er.from_coeffs(pl.factor.poly.c.iter().map(|a| ext.embed(&d.reduce(a))).collect());
    let locals = factor_over_ext(&ext, &gl, opts)?;
    let deg_g = pl.factor.degree;
    if locals.iter().map(|f| f.degree).sum::<usize>() != deg_g {
        return Err(Error::Internal("local factors do not account for deg g".into()));
    }

    // Components in the model variable of L's place, with coefficients in M̂.
    let emb = MEmbedding::new(c, &ext, pm, t.m.degree(), prec)?;
    let pi = c.uniformizer();
    let embedded: Vec<(Vec<Vec<Option<(i64, DElem<C>)>>>, i64)> = t
        .components
        .iter()
        .map(|comp| {
            let pi_m = t.m_field.embed(&pi);
            let gi = rescale(&t.m_field, &comp.factor, &pi_m, pl.shift, pl.scale);
            let terms: Vec<_> = gi.c.iter().map(|b| emb.terms(g_field, b)).collect();
            let w = terms.iter().flatten().flatten().map(|(v, _)| -v).max().unwrap_or(0).max(0);
            (terms, w)
        })
        .collect();

    let mut sigma = Vec::with_capacity(locals.len());
    for lf in &locals {
        let ep = ext.with_prec(lf.prec);
        let epr = PolyRing::new(ep.clone());
        let gj = epr.from_coeffs(lf.poly.c.iter().map(|a| ep.reduce(a)).collect());
        let mut hits = Vec::new();
        for (i, (terms, w)) in embedded.iter().enumerate() {
            if (*w as usize) * ext.ramification() >= lf.prec {
                return Err(Error::IndeterminateValuation);
            }
            let gi = epr.from_coeffs(terms.iter().map(|tm| ep.reduce(&emb.value(tm, *w))).collect());
            let rem = epr.rem_monic(&gi, &gj);
            if rem.c.iter().all(|a| ep.val(a).is_none()) {
                hits.push(i);
            }
        }
        match hits.as_slice() {
            [i] => sigma.push(*i),
            _ => return Err(Error::IndeterminateValuation),
        }
    }

    let mut values = vec![Vec::new(); t.len()];
    for (j, (lf, &i)) in locals.iter().zip(&sigma).enumerate() {
        values[i].push(ExtensionRecord {
            j,
            local_degree: lf.degree,
            e_rel: lf.e,
            f_rel: lf.f,
            e_abs: lf.e * pm.e,
            f_abs: lf.f * pm.f,
        });
    }
    Ok(TwoPlaceResult {
        place: c.clone(),
        place_l: pl.index,
        place_m: pm.index,
        e_l: pl.e,
        f_l: pl.f,
        e_m: pm.e,
        f_m: pm.f,
        tame_l: is_tame(pl),
        tame_m: is_tame(pm),
        deg_g,
        local_factors: locals,
        sigma,
        values,
        prec,
    })
}

/// Working precision for classifying places of `L` against places of `M`.
pub fn two_place_precision<C: BasePlace>(t: &TensorDecomposition<C::G>, c: &C) -> Result<usize> {
    let pl = crate::places::default_precision(c, &t.l.poly)?;
    let pm = crate::places::default_precision(c, &t.m.poly)?;
    Ok(pl + pm + 8)
}

/// Places of `L` and `M` at a common precision.
pub fn places_for_pair<C: BasePlace>(
    t: &TensorDecomposition<C::G>,
    c: &C,
    prec: usize,
    opts: &PlaceOptions,
) -> Result<(Vec<PlaceExtension<C>>, Vec<PlaceExtension<C>>)> {
    let o = PlaceOptions { precision: Some(prec), ..opts.clone() };
    Ok((place_extensions(&t.l, c, &o)?, place_extensions(&t.m, c, &o)?))
}

/// Classify one pair of places given by index, raising the precision when
/// the result is indeterminate.
pub fn classify_indexed<C: BasePlace>(
    t: &TensorDecomposition<C::G>,
    c: &C,
    il: usize,
    im: usize,
    opts: &PlaceOptions,
) -> Result<TwoPlaceResult<C>> {
    let mut prec = match opts.precision {
        Some(p) => p,
        None => two_place_precision(t, c)?,
    };
    for _ in 0..4 {
        let (pls, pms) = places_for_pair(t, c, prec, opts)?;
        let pl = pls.get(il).ok_or_else(|| Error::InvalidInput(format!("L has {} places, index {il} out of range", pls.len())))?;
        let pm = pms.get(im).ok_or_else(|| Error::InvalidInput(format!("M has {} places, index {im} out of range", pms.len())))?;
        match two_place_classify(t, pl, pm, opts) {
            Err(Error::IndeterminateValuation) => prec *= 2,
            other => return other,
        }
    }
    Err(Error::IndeterminateValuation)
}

/// Classify every pair of places of `L` and `M` over `c`.
pub fn classify_all<C: BasePlace>(t: &TensorDecomposition<C::G>, c: &C, opts: &PlaceOptions) -> Result<Vec<TwoPlaceResult<C>>> {
    let mut prec = match opts.precision {
        Some(p) => p,
        None => two_place_precision(t, c)?,
    };
    'outer: for _ in 0..4 {
        let (pls, pms) = places_for_pair(t, c, prec, opts)?;
        let mut out = Vec::new();
        for pl in &pls {
            for pm in &pms {
                match two_place_classify(t, pl, pm, opts) {
                    Ok(r) => out.push(r),
                    Err(Error::IndeterminateValuation) => {
                        prec *= 2;
                        continue 'outer;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        return Ok(out);
    }
    Err(Error::IndeterminateValuation)
}

/// Multiset of `(e, f)` over `K̂` of the absolute values on component `i`,
/// collected over all pairs of places.
pub fn component_profile<C: BasePlace>(results: &[TwoPlaceResult<C>], i: usize) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = results.iter().flat_map(|r| r.values[i].iter().map(|x| (x.e_abs, x.f_abs))).collect();
    v.sort();
    v
}

/// `lcm` helper shared by the verification layers.
pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}
