//! Ramification of composita: `e(F/K) = lcm(e(L/K), e(M/K))` when one side
//! is tame, and `e(N/F) = gcd(e(N/L), e(N/M))` on Kummer towers.

use crate::arith::factor::Factorable;
use crate::arith::poly::PolyRing;
use crate::arith::ratfunc::RatFunc;
use crate::arith::ring::{Field, Ring};
use crate::local::completion::{Center, Laurent};
use crate::local::dvr::Dvr;
use crate::places::{place_extensions, BasePlace, GlobalField, PlaceExtension, PlaceOptions};
use crate::tensor::{two_place_classify, TensorDecomposition, TwoPlaceResult};
use crate::{Error, Result};
use num_integer::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// The hypotheses of the identity do not hold; nothing is asserted.
    NotCovered,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotCovered => "not covered",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcmRow {
    pub component: usize,
    pub j: usize,
    /// `e(F̂_ν / K̂)`.
    pub e: usize,
    pub lcm: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct AbhyankarReport {
    pub place: String,
    pub place_l: usize,
    pub place_m: usize,
    pub e_l: usize,
    pub e_m: usize,
    pub tame_l: bool,
    pub tame_m: bool,
    pub residue_perfect: bool,
    pub rows: Vec<LcmRow>,
}

impl AbhyankarReport {
    pub fn covered(&self) -> bool {
        (self.tame_l || self.tame_m) && self.residue_perfect
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == Verdict::Pass)
    }

    /// The report, or `HypothesisViolated` when neither place is tame.
    pub fn into_result(self) -> Result<AbhyankarReport> {
        if !self.covered() {
            return Err(Error::HypothesisViolated(format!(
                "neither place is tame over {} (e = {} and e = {})",
                self.place, self.e_l, self.e_m
            )));
        }
        Ok(self)
    }
}

fn residue_is_perfect<C: BasePlace>(c: &C) -> bool {
    let d = c.dvr(1);
    let k = d.residue_field();
    k.characteristic() == 0 || k.order().is_some()
}

/// Compare `e(F̂_ν/K̂)` with `lcm(e(L/K), e(M/K))` on every absolute value
/// extending `pl` and `pm`. Rows are marked not covered when neither place is
/// tame; use [`AbhyankarReport::into_result`] to turn that into an error.
pub fn check_lcm<C: BasePlace>(
    t: &TensorDecomposition<C::G>,
    pl: &PlaceExtension<C>,
    pm: &PlaceExtension<C>,
    opts: &PlaceOptions,
) -> Result<AbhyankarReport> {
    Ok(lcm_report(&two_place_classify(t, pl, pm, opts)?))
}

/// [`check_lcm`] on an existing classification.
pub fn lcm_report<C: BasePlace>(r: &TwoPlaceResult<C>) -> AbhyankarReport {
    let lcm = r.e_l.lcm(&r.e_m);
    let mut report = AbhyankarReport {
        place: r.place.describe(),
        place_l: r.place_l,
        place_m: r.place_m,
        e_l: r.e_l,
        e_m: r.e_m,
        tame_l: r.tame_l,
        tame_m: r.tame_m,
        residue_perfect: residue_is_perfect(&r.place),
        rows: Vec::new(),
    };
    let covered = report.covered();
    for (i, vals) in r.values.iter().enumerate() {
        for v in vals {
            let verdict = if covered { Verdict::from_bool(v.e_abs == lcm) } else { Verdict::NotCovered };
            report.rows.push(LcmRow { component: i, j: v.j, e: v.e_abs, lcm, verdict });
        }
    }
    report
}

/// `N = k(t^(1/n))` with subfields `L = k(t^(1/l))`, `M = k(t^(1/m))` and
/// `F = L·M = k(t^(1/f))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KummerTower {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub f: usize,
}

impl KummerTower {
    pub fn validate(&self) -> Result<()> {
        let KummerTower { n, l, m, f } = *self;
        if [n, l, m, f].contains(&0) || n % l != 0 || n % m != 0 || n % f != 0 {
            return Err(Error::InvalidInput(format!("{self:?} is not a tower of subfields of k(t^(1/{n}))")));
        }
        if f != l.lcm(&m) {
            return Err(Error::InvalidInput(format!("F must be the compositum k(t^(1/{}))", l.lcm(&m))));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct GcdReport {
    pub tower: KummerTower,
    pub e_n_l: usize,
    pub e_n_m: usize,
    pub e_n_f: usize,
    pub e_n_k: usize,
    pub e_f_k: usize,
    pub gcd: usize,
    pub verdict: Verdict,
    /// `e(N/F)·e(F/K) = e(N/K)`.
    pub duality: Verdict,
    /// `e(F/K) = lcm(e(L/K), e(M/K))`.
    pub lcm: Verdict,
}

/// `e(N/X)` for `X = k(s)`, `s = t^(1/a)`, `N = X[z]/(z^(n/a) - s)` at
/// `s = 0`, checking that all places above look alike.
fn kummer_e<K: Factorable>(k: &K, n: usize, a: usize, opts: &PlaceOptions) -> Result<usize> {
    let ks = RatFunc::new(k.clone());
    let r = PolyRing::new(ks.clone());
    let deg = n / a;
    let poly = r.from_coeffs((0..=deg).map(|i| if i == 0 { ks.neg(&ks.t()) } else if i == deg { ks.one() } else { ks.zero() }).collect());
    let field = GlobalField::etale(ks, poly, "N")?;
    let place = Laurent::new(k.clone(), Center::Finite(k.zero()));
    let exts = place_extensions(&field, &place, opts)?;
    let (e, f) = (exts[0].e, exts[0].f);
    if exts.iter().any(|p| (p.e, p.f) != (e, f)) || exts.len() * e * f != deg {
        return Err(Error::NotGalois(format!("places of k(t^(1/{n})) over k(t^(1/{a})) differ")));
    }
    Ok(e)
}

/// Check `e(N/F) = gcd(e(N/L), e(N/M))` at `t = 0` over the constants `k`.
pub fn check_gcd_galois<K: Factorable>(k: &K, tower: &KummerTower, opts: &PlaceOptions) -> Result<GcdReport> {
    tower.validate()?;
    let KummerTower { n, l, m, f } = *tower;
    let e_n_l = kummer_e(k, n, l, opts)?;
    let e_n_m = kummer_e(k, n, m, opts)?;
    let e_n_f = kummer_e(k, n, f, opts)?;
    let e_n_k = kummer_e(k, n, 1, opts)?;
    let e_f_k = kummer_e(k, f, 1, opts)?;
    let e_l_k = kummer_e(k, l, 1, opts)?;
    let e_m_k = kummer_e(k, m, 1, opts)?;
    let gcd = e_n_l.gcd(&e_n_m);
    Ok(GcdReport {
        tower: *tower,
        e_n_l,
        e_n_m,
        e_n_f,
        e_n_k,
        e_f_k,
        gcd,
        verdict: Verdict::from_bool(e_n_f == gcd),
        duality: Verdict::from_bool(e_n_f * e_f_k == e_n_k),
        lcm: Verdict::from_bool(e_f_k == e_l_k.lcm(&e_m_k)),
    })
}
