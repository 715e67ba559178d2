//! Executing a parsed job.

use crate::job::{Base, Center as CenterSpec, Coefficient, FieldSpec, JobSpec, Pair, PlaceSpec, SchemaError};
use crate::report::{Check, ErrorInfo, Report, Status, Verdict};
use absval::abhyankar::{check_gcd_galois, lcm_report, KummerTower};
use absval::arith::factor::Factorable;
use absval::arith::finite::Fq;
use absval::arith::poly::PolyRing;
use absval::arith::ratfunc::RatFunc;
use absval::arith::rational::{Rational, Q};
use absval::arith::ring::{Field, Ring};
use absval::fiberprod::{branch_count_oracle, cover_places_over, fiber_count_indexed, verify_gcd_count, verify_sum_e, Cover};
use absval::local::completion::{Center, Completion, Laurent, Padic};
use absval::local::dvr::Dvr;
use absval::places::{
    fundamental_sum, is_tame, place_extensions, reconstruction_holds, root_valuation_by_norm, root_valuation_by_polygon,
    BasePlace, GlobalField, PlaceOptions,
};
use absval::tensor::{classify_all, classify_indexed, tensor_decompose, TwoPlaceResult};
use absval::Error;
use serde_json::{json, Value};

/// Options after flags, job document and environment are merged.
#[derive(Clone, Debug)]
pub struct Settings {
    pub places: PlaceOptions,
    pub oracle: bool,
}

enum Failure {
    Schema(SchemaError),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type Out<T> = std::result::Result<T, Failure>;

#[derive(Default)]
struct Outcome {
    checks: Vec<Check>,
    summary: Vec<String>,
    result: Value,
}

impl Outcome {
    fn check(&mut self, name: String, verdict: Verdict, detail: String) {
        self.checks.push(Check::new(name, verdict, detail));
    }
}

pub fn run(job: &JobSpec, settings: &Settings) -> Report {
    let outcome = match &job.base {
        Base::Rationals => generic::<Padic>(job, &Q, settings),
        Base::FunctionField { characteristic: 0 } => function_field(job, &Q, settings),
        Base::FunctionField { characteristic: p } => match Fq::prime(*p) {
            Ok(k) => function_field(job, &k, settings),
            Err(e) => Err(Failure::Math(e)),
        },
    };
    let command = Some(job.command.as_str().to_string());
    match outcome {
        Ok(o) => {
            let failed = o.checks.iter().any(|c| c.verdict == Verdict::Fail);
            Report {
                schema: crate::job::SCHEMA_VERSION,
                command,
                status: if failed { Status::Fail } else { Status::Pass },
                error: None,
                checks: o.checks,
                summary: o.summary,
                result: o.result,
                timestamp: None,
            }
        }
        Err(Failure::Schema(e)) => Report::invalid(command, &e.pointer, &e.message),
        Err(Failure::Math(e)) => Report {
            schema: crate::job::SCHEMA_VERSION,
            command,
            status: if e.is_internal() { Status::Internal } else { Status::Precondition },
            error: Some(ErrorInfo { name: e.name().into(), message: e.to_string(), pointer: None }),
            checks: Vec::new(),
            summary: Vec::new(),
            result: Value::Null,
            timestamp: None,
        },
    }
}

/// Constant fields the command line can name.
trait Constants: Factorable {
    fn rational(&self, p: &Pair) -> absval::Result<Self::Elem>;
}

impl Constants for Q {
    fn rational(&self, p: &Pair) -> absval::Result<Rational> {
        Ok(Rational::new(p[0].into(), p[1].into()))
    }
}

impl Constants for Fq {
    fn rational(&self, p: &Pair) -> absval::Result<Self::Elem> {
        let q = self.p() as i64;
        let d = self.from_u64(p[1].rem_euclid(q) as u64);
        if self.is_zero(&d) {
            return Err(Error::DivisionByExactZero);
        }
        Ok(self.div(&self.from_u64(p[0].rem_euclid(q) as u64), &d))
    }
}

type GElem<C> = <<C as BasePlace>::G as Ring>::Elem;

/// Base places the command line can name.
trait CliPlace: BasePlace {
    fn coefficient(g: &Self::G, c: &Coefficient) -> absval::Result<GElem<Self>>;
    fn place(g: &Self::G, p: &PlaceSpec) -> absval::Result<Self>;
}

impl CliPlace for Padic {
    fn coefficient(g: &Q, c: &Coefficient) -> absval::Result<Rational> {
        match c {
            Coefficient::Rational(p) => g.rational(p),
            Coefficient::Series(_) => Err(Error::InvalidInput("polynomial coefficient over Q".into())),
        }
    }

    fn place(_: &Q, p: &PlaceSpec) -> absval::Result<Padic> {
        match p {
            PlaceSpec::Prime { prime } => Padic::new(*prime),
            PlaceSpec::Center { .. } => Err(Error::InvalidInput("a center is not a prime".into())),
        }
    }
}

impl<K: Constants> CliPlace for Laurent<K> {
    fn coefficient(g: &RatFunc<K>, c: &Coefficient) -> absval::Result<GElem<Self>> {
        let k = g.constants();
        match c {
            Coefficient::Rational(p) => Ok(g.from_const(k.rational(p)?)),
            Coefficient::Series(ps) => {
                let cs = ps.iter().map(|p| k.rational(p)).collect::<absval::Result<Vec<_>>>()?;
                Ok(g.from_poly(g.polys().from_coeffs(cs)))
            }
        }
    }

    fn place(g: &RatFunc<K>, p: &PlaceSpec) -> absval::Result<Self> {
        let k = g.constants().clone();
        match p {
            PlaceSpec::Center { center: CenterSpec::Finite(a) } => {
                let a = k.rational(a)?;
                Ok(Laurent::new(k, Center::Finite(a)))
            }
            PlaceSpec::Center { center: CenterSpec::Named(_) } => Ok(Laurent::new(k, Center::Infinity)),
            PlaceSpec::Prime { .. } => Err(Error::InvalidInput("a prime is not a center".into())),
        }
    }
}

fn global_field<C: CliPlace>(g: &C::G, spec: &FieldSpec, default_name: &str) -> absval::Result<GlobalField<C::G>> {
    let r = PolyRing::new(g.clone());
    let cs = spec.poly.iter().map(|c| C::coefficient(g, c)).collect::<absval::Result<Vec<_>>>()?;
    let f = r.monic(&r.from_coeffs(cs));
    GlobalField::new(g.clone(), f, spec.name.as_deref().unwrap_or(default_name))
}

fn fields<C: CliPlace>(g: &C::G, job: &JobSpec) -> absval::Result<Vec<GlobalField<C::G>>> {
    job.fields.iter().zip(["L", "M"]).map(|(s, n)| global_field::<C>(g, s, n)).collect()
}

fn place<C: CliPlace>(g: &C::G, job: &JobSpec) -> absval::Result<C> {
    C::place(g, job.place.as_ref().expect("validated"))
}

/// Errors from indexed lookups are bad indices, not bad mathematics.
fn indexed<T>(r: absval::Result<T>) -> Out<T> {
    r.map_err(|e| match e {
        Error::InvalidInput(m) => {
            let second = m.starts_with("M ") || m.starts_with("C2 ");
            Failure::Schema(SchemaError::new(if second { "/indices/1" } else { "/indices/0" }, m))
        }
        e => Failure::Math(e),
    })
}

fn identity(lhs: &str, a: usize, rhs: &str, b: usize) -> String {
    if a == b {
        format!("{lhs} = {a} = {rhs}")
    } else {
        format!("{lhs} = {a} ≠ {b} = {rhs}")
    }
}

fn push_summary(o: &mut Outcome) {
    let lines: Vec<String> = o.checks.iter().map(|c| format!("{}: {}", c.detail, c.verdict.word())).collect();
    o.summary.extend(lines);
}

fn generic<C: CliPlace>(job: &JobSpec, g: &C::G, s: &Settings) -> Out<Outcome> {
    use crate::job::Command::*;
    let mut o = match job.command {
        ExtendPlace => extend_place::<C>(job, g, s)?,
        TensorSplit => tensor_split::<C>(job, g)?,
        TwoPlace => two_place::<C>(job, g, s)?,
        AbhyankarCheck => abhyankar::<C>(job, g, s)?,
        FiberCount => unreachable!("rejected during validation"),
    };
    push_summary(&mut o);
    Ok(o)
}

fn function_field<K: Constants>(job: &JobSpec, k: &K, s: &Settings) -> Out<Outcome> {
    use crate::job::Command::*;
    let g = RatFunc::new(k.clone());
    match (job.command, &job.kummer) {
        (FiberCount, _) => fiber::<K>(job, &g, s),
        (AbhyankarCheck, Some(t)) => {
            let mut o = kummer(k, &KummerTower { n: t.n, l: t.l, m: t.m, f: t.f }, s)?;
            push_summary(&mut o);
            Ok(o)
        }
        _ => generic::<Laurent<K>>(job, &g, s),
    }
}

fn extend_place<C: CliPlace>(job: &JobSpec, g: &C::G, s: &Settings) -> Out<Outcome> {
    let l = fields::<C>(g, job)?.remove(0);
    let c = place::<C>(g, job)?;
    let exts = place_extensions(&l, &c, &s.places)?;
    let mut o = Outcome::default();
    let mut places = Vec::new();
    for pe in &exts {
        let polygon = root_valuation_by_polygon(pe)?;
        let (norm, verdict) = match root_valuation_by_norm(pe) {
            Ok(v) => (Some(v.to_string()), Verdict::from_bool(v == polygon)),
            Err(Error::IndeterminateValuation) => (None, Verdict::Inconclusive),
            Err(e) => return Err(e.into()),
        };
        o.check(
            format!("root valuation #{}", pe.index),
            verdict,
            format!("place #{}: v(root) = {} by norm, {} by polygon", pe.index, norm.as_deref().unwrap_or("?"), polygon),
        );
        places.push(json!({
            "index": pe.index,
            "e": pe.e,
            "f": pe.f,
            "local_degree": pe.local_degree(),
            "tame": is_tame(pe),
            "shift": pe.shift,
            "scale": pe.scale,
            "method": format!("{:?}", pe.factor.method),
            "root_valuation": polygon.to_string(),
            "precision": pe.factor.prec,
        }));
    }
    let sum = fundamental_sum(&exts);
    o.checks.insert(0, Check::new("fundamental identity", Verdict::from_bool(sum == l.degree()), identity("Σ e·f", sum, "deg", l.degree())));
    let n = exts.iter().map(|p| p.factor.prec).min().unwrap_or(0);
    o.checks.insert(
        1,
        Check::new(
            "local reconstruction",
            Verdict::from_bool(reconstruction_holds(&exts)),
            format!("∏ g_j ≡ model mod {}^{n}", c.dvr(1).uniformizer_name()),
        ),
    );
    o.result = json!({
        "field": l.name,
        "degree": l.degree(),
        "place": c.describe(),
        "places": places,
    });
    Ok(o)
}

fn tensor_split<C: CliPlace>(job: &JobSpec, g: &C::G) -> Out<Outcome> {
    let fs = fields::<C>(g, job)?;
    let t = tensor_decompose(&fs[0], &fs[1])?;
    let mr = PolyRing::new(t.m_field.clone());
    let kr = PolyRing::new(g.clone());
    let mut components = Vec::new();
    for (i, c) in t.components.iter().enumerate() {
        let (absolute, shift) = t.absolute_field(i)?;
        components.push(json!({
            "index": i,
            "degree": c.degree(),
            "factor": mr.render(&c.factor, "x"),
            "absolute": kr.render(&absolute.poly, "z"),
            "primitive_shift": shift,
        }));
    }
    let total: usize = t.components.iter().map(|c| c.degree()).sum();
    let mut o = Outcome::default();
    o.check("component degrees".into(), Verdict::from_bool(total == t.l.degree()), identity("Σ [F_i:M]", total, "[L:K]", t.l.degree()));
    o.result = json!({ "components": components, "count": t.len() });
    Ok(o)
}

fn classify<C: CliPlace>(job: &JobSpec, g: &C::G, s: &Settings) -> Out<Vec<TwoPlaceResult<C>>> {
    let fs = fields::<C>(g, job)?;
    let c = place::<C>(g, job)?;
    let t = tensor_decompose(&fs[0], &fs[1])?;
    match job.indices {
        Some([i, j]) => Ok(vec![indexed(classify_indexed(&t, &c, i, j, &s.places))?]),
        None => Ok(classify_all(&t, &c, &s.places)?),
    }
}

fn two_place_json<C: BasePlace>(r: &TwoPlaceResult<C>) -> Value {
    let comps: Vec<Value> = r
        .values
        .iter()
        .enumerate()
        .map(|(i, vs)| {
            let vals: Vec<Value> = vs
                .iter()
                .map(|v| {
                    json!({"j": v.j, "local_degree": v.local_degree, "e_rel": v.e_rel, "f_rel": v.f_rel, "e": v.e_abs, "f": v.f_abs})
                })
                .collect();
            json!({"component": i, "values": vals})
        })
        .collect();
    json!({
        "place_l": r.place_l,
        "place_m": r.place_m,
        "e_l": r.e_l, "f_l": r.f_l, "e_m": r.e_m, "f_m": r.f_m,
        "local_degree_l": r.deg_g,
        "sigma": r.sigma,
        "components": comps,
        "precision": r.prec,
    })
}

fn two_place<C: CliPlace>(job: &JobSpec, g: &C::G, s: &Settings) -> Out<Outcome> {
    let rs = classify::<C>(job, g, s)?;
    let mut o = Outcome::default();
    for r in &rs {
        let tag = format!("(#{},#{})", r.place_l, r.place_m);
        let counts: Vec<String> = r.values.iter().enumerate().map(|(i, v)| format!("|V_{}| = {}", i + 1, v.len())).collect();
        o.summary.push(format!("{tag}: n = {} component(s), {}", r.values.len(), counts.join(", ")));
        o.check(
            format!("degree identity {tag}"),
            Verdict::from_bool(r.degree_identity_holds()),
            format!("{tag} {}", identity("Σ local degrees", r.local_degree_sum(), "[L̂:K̂]", r.deg_g)),
        );
        let assigned = r.sigma.len() == r.local_factors.len() && r.sigma.iter().all(|&i| i < r.values.len());
        o.check(format!("sigma {tag}"), Verdict::from_bool(assigned), format!("{tag} every g_j lies in exactly one F_i"));
    }
    o.result = json!({ "pairs": rs.iter().map(two_place_json).collect::<Vec<_>>() });
    Ok(o)
}

fn abhyankar<C: CliPlace>(job: &JobSpec, g: &C::G, s: &Settings) -> Out<Outcome> {
    let rs = classify::<C>(job, g, s)?;
    let reports: Vec<_> = rs.iter().map(lcm_report).collect();
    if let Some(first) = reports.first() {
        if !reports.iter().any(|r| r.covered()) {
            first.clone().into_result()?;
        }
    }
    let mut o = Outcome::default();
    let mut rows = Vec::new();
    for r in &reports {
        let tag = format!("(#{},#{})", r.place_l, r.place_m);
        for row in &r.rows {
            o.check(
                format!("lcm {tag} F_{} v_{}", row.component + 1, row.j),
                row.verdict.into(),
                format!("{tag} F_{} v_{}: e = {} vs lcm({}, {}) = {}", row.component + 1, row.j, row.e, r.e_l, r.e_m, row.lcm),
            );
            rows.push(json!({"place_l": r.place_l, "place_m": r.place_m, "component": row.component, "j": row.j, "e": row.e, "lcm": row.lcm, "verdict": row.verdict.as_str()}));
        }
    }
    o.result = json!({ "place": reports.first().map(|r| r.place.clone()), "rows": rows });
    Ok(o)
}

fn kummer<K: Constants>(k: &K, tower: &KummerTower, s: &Settings) -> Out<Outcome> {
    let r = check_gcd_galois(k, tower, &s.places)?;
    let mut o = Outcome::default();
    o.check("gcd".into(), r.verdict.into(), format!("e(N/F) = {} vs gcd({}, {}) = {}", r.e_n_f, r.e_n_l, r.e_n_m, r.gcd));
    o.check("tower".into(), r.duality.into(), format!("e(N/F)·e(F/K) = {}·{} vs e(N/K) = {}", r.e_n_f, r.e_f_k, r.e_n_k));
    o.check("lcm".into(), r.lcm.into(), format!("e(F/K) = {} = lcm(e(L/K), e(M/K))", r.e_f_k));
    o.result = json!({
        "tower": {"n": tower.n, "l": tower.l, "m": tower.m, "f": tower.f},
        "e_n_l": r.e_n_l, "e_n_m": r.e_n_m, "e_n_f": r.e_n_f, "e_n_k": r.e_n_k, "e_f_k": r.e_f_k,
    });
    Ok(o)
}

fn cover<K: Constants>(g: &RatFunc<K>, spec: &FieldSpec, name: &str) -> absval::Result<Cover<K>> {
    let f = global_field::<Laurent<K>>(g, spec, name)?;
    Cover::new(g.constants(), f.poly, &f.name)
}

fn fiber<K: Constants>(job: &JobSpec, g: &RatFunc<K>, s: &Settings) -> Out<Outcome> {
    let c1 = cover(g, &job.fields[0], "C1")?;
    let c2 = cover(g, &job.fields[1], "C2")?;
    let point = place::<Laurent<K>>(g, job)?;
    let pairs: Vec<(usize, usize)> = match job.indices {
        Some([i, j]) => vec![(i, j)],
        None => {
            let n1 = cover_places_over(&c1, &point, &s.places)?.places.len();
            let n2 = cover_places_over(&c2, &point, &s.places)?.places.len();
            (0..n1).flat_map(|i| (0..n2).map(move |j| (i, j))).collect()
        }
    };
    let mut o = Outcome::default();
    let mut out = Vec::new();
    for (i, j) in pairs {
        let (r, p1, p2) = indexed(fiber_count_indexed(&c1, &c2, &point, i, j, &s.places))?;
        let tag = format!("(#{i},#{j})");
        let mut line = Vec::new();
        let gcd = match verify_gcd_count(&r) {
            Ok(v) => v.into(),
            Err(Error::HypothesisViolated(_)) => Verdict::NotCovered,
            Err(e) => return Err(e.into()),
        };
        let detail = format!("total {} = gcd({},{})", r.total(), r.e1, r.e2);
        line.push(format!("{detail}: {}", gcd.word()));
        o.check(format!("gcd count {tag}"), gcd, format!("{tag} {detail}"));
        let sum = verify_sum_e(&r).into();
        let detail = format!("Σe {} = {}·{}", r.sum_e(), r.e1, r.e2);
        line.push(format!("{detail}: {}", Verdict::word(&sum)));
        o.check(format!("sum e {tag}"), sum, format!("{tag} {detail}"));
        let mut oracle = Value::Null;
        if s.oracle {
            let (verdict, detail) = match branch_count_oracle(&p1, &p2, None) {
                Ok(n) if n == r.total() => (Verdict::Pass, format!("oracle {n}: agree")),
                Ok(n) => (Verdict::Fail, format!("oracle {n}: disagree")),
                Err(e @ (Error::OracleInconclusive(_) | Error::ResidueDegreeObstruction { .. })) => {
                    (Verdict::Inconclusive, format!("oracle: {}", e.name()))
                }
                Err(e) => return Err(e.into()),
            };
            oracle = json!(detail);
            line.push(detail.clone());
            o.check(format!("oracle {tag}"), verdict, format!("{tag} {detail}"));
        }
        o.summary.push(line.join("; "));
        out.push(json!({
            "p1": i, "p2": j, "e1": r.e1, "e2": r.e2, "tame1": r.tame1, "tame2": r.tame2,
            "per_component": r.per_component,
            "total": r.total(),
            "rows": r.rows.iter().map(|x| json!({"component": x.component, "j": x.j, "e": x.e, "f": x.f})).collect::<Vec<_>>(),
            "oracle": oracle,
        }));
    }
    o.result = json!({ "point": point.describe(), "pairs": out });
    Ok(o)
}
