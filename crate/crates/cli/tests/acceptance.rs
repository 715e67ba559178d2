//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

use absval::abhyankar::{check_gcd_galois, lcm_report, KummerTower, Verdict};
use absval::arith::factor::Factorable;
use absval::arith::finite::Fq;
use absval::arith::poly::{Poly, PolyRing};
use absval::arith::ratfunc::RatFunc;
use absval::arith::rational::{Rational, Q};
use absval::arith::ring::Ring;
use absval::fiberprod::{branch_count_oracle, cover_places_over, fiber_count_indexed, verify_gcd_count, verify_sum_e, Cover};
use absval::local::completion::{Center, Laurent, Padic};
use absval::newton::factor::FactorMethod;
use absval::places::{
    fundamental_sum, place_extensions, reconstruction_holds, root_valuation_by_norm, root_valuation_by_polygon, BasePlace,
    GlobalField, PlaceOptions,
};
use absval::tensor::{classify_all, tensor_decompose};
use absval::Error;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use std::time::Instant;

type FElem<K> = <RatFunc<K> as Ring>::Elem;

fn qpoly(c: &[i64]) -> Poly<Rational> {
    PolyRing::new(Q).from_ints(c)
}

/// `Σ_j rows[j](t) x^j` over `k(t)`, each row a list of integer coefficients in `t`.
fn tpoly<K: Factorable>(k: &K, rows: &[&[i64]]) -> Poly<FElem<K>> {
    let kt = RatFunc::new(k.clone());
    let kp = PolyRing::new(k.clone());
    PolyRing::new(kt.clone()).from_coeffs(rows.iter().map(|r| kt.from_poly(kp.from_ints(r))).collect())
}

fn qfield(c: &[i64], name: &str) -> GlobalField<Q> {
    GlobalField::new(Q, qpoly(c), name).unwrap()
}

fn tfield<K: Factorable>(k: &K, rows: &[&[i64]], name: &str) -> GlobalField<RatFunc<K>> {
    GlobalField::new(RatFunc::new(k.clone()), tpoly(k, rows), name).unwrap()
}

fn origin<K: Factorable>(k: &K) -> Laurent<K> {
    Laurent::new(k.clone(), Center::Finite(k.zero()))
}

struct Line {
    pass: bool,
    detail: String,
}

fn report(n: usize, name: &str, start: Instant, line: Line) -> bool {
    println!(
        "criterion {n:>2} [{name}]: {} ({}; {:.1}s)",
        if line.pass { "PASS" } else { "FAIL" },
        line.detail,
        start.elapsed().as_secs_f64()
    );
    line.pass
}

// ---------------------------------------------------------------------------
// 1, 2, 9

struct Sweep {
    polys: usize,
    runs: usize,
    failures: Vec<String>,
    fallback: usize,
    factors: usize,
    reconstruct_bad: usize,
    slope_checked: usize,
    slope_bad: Vec<String>,
}

fn random_squarefree(rng: &mut ChaCha8Rng) -> Vec<i64> {
    let r = PolyRing::new(Q);
    loop {
        let deg = rng.gen_range(2..=5);
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-20..=20)).collect();
        c.push(1);
        if r.is_squarefree(&r.from_ints(&c)) {
            return c;
        }
    }
}

fn sweep() -> Sweep {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let primes = [2u64, 3, 5, 7, 13];
    let opts = PlaceOptions::default();
    let mut s = Sweep {
        polys: 200,
        runs: 0,
        failures: Vec::new(),
        fallback: 0,
        factors: 0,
        reconstruct_bad: 0,
        slope_checked: 0,
        slope_bad: Vec::new(),
    };
    for _ in 0..s.polys {
        let c = random_squarefree(&mut rng);
        let l = GlobalField::etale(Q, qpoly(&c), "L").unwrap();
        for &p in &primes {
            s.runs += 1;
            let exts = match place_extensions(&l, &Padic::new(p).unwrap(), &opts) {
                Ok(e) => e,
                Err(e) => {
                    s.failures.push(format!("{c:?} at {p}: {e}"));
                    continue;
                }
            };
            if fundamental_sum(&exts) != l.degree() {
                s.failures.push(format!("{c:?} at {p}: Σ e·f = {}", fundamental_sum(&exts)));
            }
            if exts.iter().any(|e| e.factor.method == FactorMethod::MaximalOrder) {
                s.fallback += 1;
            }
            s.factors += exts.len();
            if !reconstruction_holds(&exts) {
                s.reconstruct_bad += 1;
            }
            for pe in &exts {
                s.slope_checked += 1;
                match (root_valuation_by_norm(pe), root_valuation_by_polygon(pe)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => s.slope_bad.push(format!("{c:?} at {p} #{}: {a:?} vs {b:?}", pe.index)),
                }
            }
        }
    }
    s
}

// ---------------------------------------------------------------------------
// 3, 4

type Profile = Vec<(usize, usize, usize, usize)>;

struct TwoPlaceOutcome {
    pairs: usize,
    identity: bool,
    sigma: bool,
    profile: Profile,
}

fn two_place<C: BasePlace>(l: &GlobalField<C::G>, m: &GlobalField<C::G>, c: &C) -> Result<TwoPlaceOutcome, Error> {
    let t = tensor_decompose(l, m)?;
    let rs = classify_all(&t, c, &PlaceOptions::default())?;
    let mut out = TwoPlaceOutcome { pairs: rs.len(), identity: true, sigma: true, profile: Vec::new() };
    for r in &rs {
        out.identity &= r.degree_identity_holds();
        out.sigma &= r.sigma.len() == r.local_factors.len() && r.values.iter().map(Vec::len).sum::<usize>() == r.local_factors.len();
        for (i, vs) in r.values.iter().enumerate() {
            for v in vs {
                out.profile.push((t.components[i].degree(), v.local_degree, v.e_abs, v.f_abs));
            }
        }
    }
    out.profile.sort();
    Ok(out)
}

/// `f(x - c)`, whose root is `s + c`.
fn shifted<K: Factorable>(l: &GlobalField<K>, c: i64) -> GlobalField<K> {
    let r = PolyRing::new(l.base.clone());
    GlobalField::new(l.base.clone(), r.taylor_shift(&l.poly, &l.base.from_i64(-c)), &l.name).unwrap()
}

struct Curated {
    name: String,
    result: Result<TwoPlaceOutcome, Error>,
    shift_stable: Result<bool, Error>,
}

fn curated<C: BasePlace>(name: &str, l: GlobalField<C::G>, m: GlobalField<C::G>, c: C) -> Curated {
    let result = two_place(&l, &m, &c);
    let shift_stable = match &result {
        Ok(base) => (1..=3)
            .map(|k| two_place(&shifted(&l, k), &m, &c).map(|o| o.profile == base.profile))
            .collect::<Result<Vec<bool>, Error>>()
            .map(|v| v.into_iter().all(|b| b)),
        Err(e) => Err(e.clone()),
    };
    Curated { name: name.into(), result, shift_stable }
}

fn curated_suite() -> Vec<Curated> {
    let p = |n| Padic::new(n).unwrap();
    let f7 = Fq::prime(7).unwrap();
    let f13 = Fq::prime(13).unwrap();
    vec![
        curated("Q(√2)⊗Q(√3) at 5", qfield(&[-2, 0, 1], "L"), qfield(&[-3, 0, 1], "M"), p(5)),
        curated("Q(i)⊗Q(i) at 5", qfield(&[1, 0, 1], "L"), qfield(&[1, 0, 1], "M"), p(5)),
        curated("Q(i)⊗Q(i) at 3", qfield(&[1, 0, 1], "L"), qfield(&[1, 0, 1], "M"), p(3)),
        curated("Q(√5)⊗Q(∛5) at 5", qfield(&[-5, 0, 1], "L"), qfield(&[-5, 0, 0, 1], "M"), p(5)),
        curated("Q(√5)⊗Q(√10) at 5", qfield(&[-5, 0, 1], "L"), qfield(&[-10, 0, 1], "M"), p(5)),
        curated("Q(∜5)⊗Q(√5) at 5", qfield(&[-5, 0, 0, 0, 1], "L"), qfield(&[-5, 0, 1], "M"), p(5)),
        curated("Q(∛2)⊗Q(∛2) at 5", qfield(&[-2, 0, 0, 1], "L"), qfield(&[-2, 0, 0, 1], "M"), p(5)),
        curated("Q(∛2)⊗Q(i) at 5", qfield(&[-2, 0, 0, 1], "L"), qfield(&[1, 0, 1], "M"), p(5)),
        curated("Q(∛5)⊗Q(∛10) at 5", qfield(&[-5, 0, 0, 1], "L"), qfield(&[-10, 0, 0, 1], "M"), p(5)),
        curated("Q(√2)⊗Q(√2) at 7", qfield(&[-2, 0, 1], "L"), qfield(&[-2, 0, 1], "M"), p(7)),
        curated("Q(√3)⊗Q(√2) at 3", qfield(&[-3, 0, 1], "L"), qfield(&[-2, 0, 1], "M"), p(3)),
        curated("Q(√2)⊗Q(√2) at 2", qfield(&[-2, 0, 1], "L"), qfield(&[-2, 0, 1], "M"), p(2)),
        curated("Q(ζ3)⊗Q(∛2) at 5", qfield(&[1, 1, 1], "L"), qfield(&[-2, 0, 0, 1], "M"), p(5)),
        curated("Q(t): √t⊗∛t at 0", tfield(&Q, &[&[0, -1], &[], &[1]], "L"), tfield(&Q, &[&[0, -1], &[], &[], &[1]], "M"), origin(&Q)),
        curated("Q(t): √t⊗∜t at 0", tfield(&Q, &[&[0, -1], &[], &[1]], "L"), tfield(&Q, &[&[0, -1], &[], &[], &[], &[1]], "M"), origin(&Q)),
        curated("Q(t): √t⊗√t at 0", tfield(&Q, &[&[0, -1], &[], &[1]], "L"), tfield(&Q, &[&[0, -1], &[], &[1]], "M"), origin(&Q)),
        curated(
            "Q(t): √(t+t²)⊗√t at 0",
            tfield(&Q, &[&[0, -1, -1], &[], &[1]], "L"),
            tfield(&Q, &[&[0, -1], &[], &[1]], "M"),
            origin(&Q),
        ),
        curated(
            "Q(t): √t⊗∛t at ∞",
            tfield(&Q, &[&[0, -1], &[], &[1]], "L"),
            tfield(&Q, &[&[0, -1], &[], &[], &[1]], "M"),
            Laurent::new(Q, Center::Infinity),
        ),
        curated(
            "Q(t): √(t+1)⊗√t at 0",
            tfield(&Q, &[&[-1, -1], &[], &[1]], "L"),
            tfield(&Q, &[&[0, -1], &[], &[1]], "M"),
            origin(&Q),
        ),
        curated("F7(t): √t⊗∛t at 0", tfield(&f7, &[&[0, -1], &[], &[1]], "L"), tfield(&f7, &[&[0, -1], &[], &[], &[1]], "M"), origin(&f7)),
        curated("F7(t): √t⊗√(3t) at 0", tfield(&f7, &[&[0, -1], &[], &[1]], "L"), tfield(&f7, &[&[0, -3], &[], &[1]], "M"), origin(&f7)),
        curated("F13(t): ∛t⊗∜t at 0", tfield(&f13, &[&[0, -1], &[], &[], &[1]], "L"), tfield(&f13, &[&[0, -1], &[], &[], &[], &[1]], "M"), origin(&f13)),
        curated("F13(t): ∛t⊗∛(2t) at 0", tfield(&f13, &[&[0, -1], &[], &[], &[1]], "L"), tfield(&f13, &[&[0, -2], &[], &[], &[1]], "M"), origin(&f13)),
    ]
}

// ---------------------------------------------------------------------------
// 5

fn lcm_instance<C: BasePlace>(l: GlobalField<C::G>, m: GlobalField<C::G>, c: C) -> Result<(usize, bool), Error> {
    let t = tensor_decompose(&l, &m)?;
    let rs = classify_all(&t, &c, &PlaceOptions::default())?;
    let mut rows = 0;
    let mut ok = true;
    for r in &rs {
        let rep = lcm_report(r).into_result()?;
        rows += rep.rows.len();
        ok &= rep.all_pass();
    }
    Ok((rows, ok))
}

fn lcm_suite() -> Vec<(&'static str, Result<(usize, bool), Error>)> {
    let p5 = Padic::new(5).unwrap();
    let f7 = Fq::prime(7).unwrap();
    let f13 = Fq::prime(13).unwrap();
    vec![
        ("√5, ∛5 at 5", lcm_instance(qfield(&[-5, 0, 1], "L"), qfield(&[-5, 0, 0, 1], "M"), p5.clone())),
        ("√5, √10 at 5", lcm_instance(qfield(&[-5, 0, 1], "L"), qfield(&[-10, 0, 1], "M"), p5.clone())),
        ("∜5, √5 at 5", lcm_instance(qfield(&[-5, 0, 0, 0, 1], "L"), qfield(&[-5, 0, 1], "M"), p5.clone())),
        ("∛10, √5 at 5", lcm_instance(qfield(&[-10, 0, 0, 1], "L"), qfield(&[-5, 0, 1], "M"), p5.clone())),
        ("√2, √5 at 5", lcm_instance(qfield(&[-2, 0, 1], "L"), qfield(&[-5, 0, 1], "M"), p5.clone())),
        ("∛2, √5 at 5", lcm_instance(qfield(&[-2, 0, 0, 1], "L"), qfield(&[-5, 0, 1], "M"), p5.clone())),
        ("∜5, ∛10 at 5", lcm_instance(qfield(&[-5, 0, 0, 0, 1], "L"), qfield(&[-10, 0, 0, 1], "M"), p5)),
        ("Q(t): √t, ∛t", lcm_instance(tfield(&Q, &[&[0, -1], &[], &[1]], "L"), tfield(&Q, &[&[0, -1], &[], &[], &[1]], "M"), origin(&Q))),
        ("Q(t): √t, ∜t", lcm_instance(tfield(&Q, &[&[0, -1], &[], &[1]], "L"), tfield(&Q, &[&[0, -1], &[], &[], &[], &[1]], "M"), origin(&Q))),
        ("F7(t): √t, ∛(t+t²)", lcm_instance(tfield(&f7, &[&[0, -1], &[], &[1]], "L"), tfield(&f7, &[&[0, -1, -1], &[], &[], &[1]], "M"), origin(&f7))),
        ("F13(t): ∛t, ∜t", lcm_instance(tfield(&f13, &[&[0, -1], &[], &[], &[1]], "L"), tfield(&f13, &[&[0, -1], &[], &[], &[], &[1]], "M"), origin(&f13))),
        ("F13(t): √t, ⁶√t", lcm_instance(tfield(&f13, &[&[0, -1], &[], &[1]], "L"), tfield(&f13, &[&[0, -1], &[], &[], &[], &[], &[], &[1]], "M"), origin(&f13))),
    ]
}

fn wild_instance() -> Result<(usize, bool), Error> {
    lcm_instance(qfield(&[-2, 0, 1], "L"), qfield(&[-2, 0, 1], "M"), Padic::new(2).unwrap())
}

// ---------------------------------------------------------------------------
// 7, 8

#[derive(Default)]
struct FiberTally {
    pairs: usize,
    verified: usize,
    obstructed: usize,
    errors: Vec<String>,
    sum_e_bad: Vec<String>,
    gcd_checked: usize,
    gcd_bad: Vec<String>,
    oracle_run: usize,
    oracle_done: usize,
    oracle_bad: Vec<String>,
    fields: std::collections::BTreeSet<String>,
}

fn fiber_pair<K: Factorable>(tally: &mut FiberTally, label: &str, c1: &Cover<K>, c2: &Cover<K>, s: &Laurent<K>) {
    let opts = PlaceOptions::default();
    let counts = |c: &Cover<K>| cover_places_over(c, s, &opts).map(|p| p.places.len());
    let (n1, n2) = match (counts(c1), counts(c2)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            tally.errors.push(format!("{label}: {e}"));
            return;
        }
    };
    tally.pairs += 1;
    let mut all_ok = true;
    for i in 0..n1 {
        for j in 0..n2 {
            let (r, p1, p2) = match fiber_count_indexed(c1, c2, s, i, j, &opts) {
                Ok(x) => x,
                Err(Error::ResidueDegreeObstruction { .. }) => {
                    tally.obstructed += 1;
                    return;
                }
                Err(e) => {
                    tally.errors.push(format!("{label} ({i},{j}): {e}"));
                    return;
                }
            };
            if verify_sum_e(&r) != Verdict::Pass {
                all_ok = false;
                tally.sum_e_bad.push(format!("{label} ({i},{j}): Σe {} vs {}", r.sum_e(), r.product()));
            }
            match verify_gcd_count(&r) {
                Ok(v) => {
                    tally.gcd_checked += 1;
                    if v != Verdict::Pass {
                        all_ok = false;
                        tally.gcd_bad.push(format!("{label} ({i},{j}): total {} vs gcd {}", r.total(), r.gcd()));
                    }
                }
                Err(Error::HypothesisViolated(_)) => {}
                Err(e) => tally.errors.push(format!("{label}: {e}")),
            }
            tally.oracle_run += 1;
            match branch_count_oracle(&p1, &p2, None) {
                Ok(n) => {
                    tally.oracle_done += 1;
                    if n != r.total() {
                        tally.oracle_bad.push(format!("{label} ({i},{j}): oracle {n} vs {}", r.total()));
                    }
                }
                Err(Error::OracleInconclusive(_)) | Err(Error::ResidueDegreeObstruction { .. }) => {}
                Err(e) => tally.oracle_bad.push(format!("{label} ({i},{j}): {e}")),
            }
        }
    }
    if all_ok {
        tally.verified += 1;
        tally.fields.insert(s.constants_name());
    }
}

trait ConstantsName {
    fn constants_name(&self) -> String;
}

impl<K: Factorable> ConstantsName for Laurent<K> {
    fn constants_name(&self) -> String {
        match self.constants().characteristic() {
            0 => "Q".into(),
            p => format!("F{p}"),
        }
    }
}

/// `x^a = t^b·u(t)` with `gcd(a, b) = 1` and `u(0) = 1`.
fn monomial_cover<K: Factorable>(k: &K, a: usize, rng: &mut ChaCha8Rng) -> (String, Cover<K>) {
    let b: usize = loop {
        let b = rng.gen_range(1..=3);
        if a.gcd(&b) == 1 {
            break b;
        }
    };
    let u: Vec<i64> = vec![1, rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
    let mut rhs = vec![0i64; b];
    rhs.extend(&u);
    let c0: Vec<i64> = rhs.iter().map(|x| -x).collect();
    let mut rows: Vec<&[i64]> = vec![&c0];
    rows.extend(std::iter::repeat(&[][..]).take(a - 1));
    rows.push(&[1]);
    let name = format!("x^{a} = t^{b}(1{:+}t{:+}t²)", u[1], u[2]);
    let cover = Cover::new(k, tpoly(k, &rows), &name).unwrap();
    (name, cover)
}

fn random_fibers<K: Factorable>(tally: &mut FiberTally, k: &K, count: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = origin(k);
    for _ in 0..count {
        // Tensor products of degree above 12 with a common factor are out of
        // reach of the global factorization over k(t).
        let (a1, a2) = loop {
            let (a1, a2): (usize, usize) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
            if a1.gcd(&a2) == 1 || a1 * a2 <= 12 {
                break (a1, a2);
            }
        };
        let (n1, c1) = monomial_cover(k, a1, &mut rng);
        let (n2, c2) = monomial_cover(k, a2, &mut rng);
        fiber_pair(tally, &format!("{} | {n1} | {n2}", s.constants_name()), &c1, &c2, &s);
    }
}

fn cover<K: Factorable>(k: &K, rows: &[&[i64]], name: &str) -> Cover<K> {
    Cover::new(k, tpoly(k, rows), name).unwrap()
}

fn fiber_corpus() -> FiberTally {
    let mut t = FiberTally::default();
    let f7 = Fq::prime(7).unwrap();
    let f13 = Fq::prime(13).unwrap();
    let x2 = cover(&Q, &[&[0, -1], &[], &[1]], "x²=t");
    let y3 = cover(&Q, &[&[0, -1], &[], &[], &[1]], "y³=t");
    let y4 = cover(&Q, &[&[0, -1], &[], &[], &[], &[1]], "y⁴=t");
    let node = cover(&Q, &[&[0, 0, -1, -1], &[], &[1]], "x²=t²(1+t)");
    fiber_pair(&mut t, "cusp", &x2, &y3, &origin(&Q));
    fiber_pair(&mut t, "x²/y⁴", &x2, &y4, &origin(&Q));
    fiber_pair(&mut t, "étale at 1", &x2, &x2, &Laurent::new(Q, Center::Finite(Rational::from_integer(1.into()))));
    fiber_pair(&mut t, "étale ∛ at 2", &y3, &x2, &Laurent::new(Q, Center::Finite(Rational::from_integer(8.into()))));
    fiber_pair(&mut t, "node/x²", &node, &x2, &origin(&Q));
    fiber_pair(&mut t, "node/node", &node, &node, &origin(&Q));
    fiber_pair(&mut t, "cusp at ∞", &x2, &y3, &Laurent::new(Q, Center::Infinity));
    let x2f = cover(&f7, &[&[0, -1], &[], &[1]], "x²=t");
    let y3f = cover(&f7, &[&[0, -1], &[], &[], &[1]], "y³=t");
    fiber_pair(&mut t, "F7 cusp", &x2f, &y3f, &origin(&f7));
    let x3 = cover(&f13, &[&[0, -1], &[], &[], &[1]], "x³=t");
    let y4 = cover(&f13, &[&[0, -1], &[], &[], &[], &[1]], "y⁴=t");
    fiber_pair(&mut t, "F13 x³/y⁴", &x3, &y4, &origin(&f13));
    random_fibers(&mut t, &Q, 10, 71);
    random_fibers(&mut t, &f7, 10, 72);
    random_fibers(&mut t, &f13, 10, 73);
    t
}

// ---------------------------------------------------------------------------
// 10

fn cli_determinism() -> Line {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/jobs");
    let mut same = 0;
    let mut bad = Vec::new();
    let jobs = ["two_place_sqrt2_sqrt3_at_5.json", "fiber_cusp.json", "abhyankar_radicals_5.json", "kummer_12_f13.json"];
    for j in jobs {
        let run = || Command::new(env!("CARGO_BIN_EXE_absval")).args(["--no-timestamp", "--seed", "7"]).arg(dir.join(j)).output().unwrap();
        let (a, b) = (run(), run());
        if a.stdout == b.stdout && !a.stdout.is_empty() {
            same += 1;
        } else {
            bad.push(j);
        }
    }
    Line { pass: bad.is_empty(), detail: format!("{same}/{} job documents byte-identical across two runs{}", jobs.len(), listing(&bad)) }
}

fn listing<T: std::fmt::Display>(v: &[T]) -> String {
    if v.is_empty() {
        return String::new();
    }
    let shown: Vec<String> = v.iter().take(3).map(|x| x.to_string()).collect();
    format!("; e.g. {}", shown.join(" / "))
}

fn main() {
    let mut ok = true;

    let start = Instant::now();
    let s = sweep();
    ok &= report(
        1,
        "fundamental identity sweep",
        start,
        Line {
            pass: s.failures.is_empty(),
            detail: format!(
                "{} polynomials × 5 primes, {}/{} with Σ e·f = deg, {} via maximal-order fallback{}",
                s.polys,
                s.runs - s.failures.len(),
                s.runs,
                s.fallback,
                listing(&s.failures)
            ),
        },
    );
    let t = Instant::now();
    ok &= report(
        2,
        "local reconstruction",
        t,
        Line {
            pass: s.reconstruct_bad == 0 && s.failures.is_empty(),
            detail: format!("{} factorizations, {} with ∏ g_j ≢ model", s.runs - s.failures.len(), s.reconstruct_bad),
        },
    );

    let start = Instant::now();
    let suite = curated_suite();
    let mut bad3 = Vec::new();
    let mut bad4 = Vec::new();
    let mut pairs = 0;
    for c in &suite {
        match &c.result {
            Ok(o) => {
                pairs += o.pairs;
                if !o.identity || !o.sigma {
                    bad3.push(c.name.clone());
                }
            }
            Err(e) => bad3.push(format!("{}: {e}", c.name)),
        }
        match &c.shift_stable {
            Ok(true) => {}
            Ok(false) => bad4.push(c.name.clone()),
            Err(e) => bad4.push(format!("{}: {e}", c.name)),
        }
    }
    ok &= report(
        3,
        "degree identity and σ-map",
        start,
        Line {
            pass: bad3.is_empty() && suite.len() >= 20,
            detail: format!("{} instances, {pairs} place pairs, {} failing{}", suite.len(), bad3.len(), listing(&bad3)),
        },
    );
    let t = Instant::now();
    ok &= report(
        4,
        "generator independence",
        t,
        Line { pass: bad4.is_empty(), detail: format!("{} instances × shifts 1, 2, 3, {} unstable{}", suite.len(), bad4.len(), listing(&bad4)) },
    );

    let start = Instant::now();
    let lcm = lcm_suite();
    let mut bad5: Vec<String> = lcm
        .iter()
        .filter_map(|(n, r)| match r {
            Ok((rows, true)) if *rows > 0 => None,
            Ok((rows, _)) => Some(format!("{n}: {rows} rows, some failing")),
            Err(e) => Some(format!("{n}: {e}")),
        })
        .collect();
    let rows: usize = lcm.iter().filter_map(|(_, r)| r.as_ref().ok().map(|x| x.0)).sum();
    let wild = wild_instance();
    let wild_ok = matches!(wild, Err(Error::HypothesisViolated(_)));
    if !wild_ok {
        bad5.push(format!("p = 2 wild instance gave {wild:?}"));
    }
    ok &= report(
        5,
        "lcm on tame composita",
        start,
        Line {
            pass: bad5.is_empty() && lcm.len() >= 10,
            detail: format!(
                "{} composita, {rows} rows; wild p = 2: {}{}",
                lcm.len(),
                if wild_ok { "HypothesisViolated" } else { "unexpected" },
                listing(&bad5)
            ),
        },
    );

    let start = Instant::now();
    let towers = [KummerTower { n: 6, l: 2, m: 3, f: 6 }, KummerTower { n: 4, l: 2, m: 4, f: 4 }, KummerTower { n: 12, l: 4, m: 6, f: 12 }];
    let opts = PlaceOptions::default();
    let f13 = Fq::prime(13).unwrap();
    let mut bad6 = Vec::new();
    for tw in &towers {
        let q = check_gcd_galois(&Q, tw, &opts).map(|r| r.verdict == Verdict::Pass && r.duality == Verdict::Pass);
        let f = check_gcd_galois(&f13, tw, &opts).map(|r| r.verdict == Verdict::Pass && r.duality == Verdict::Pass);
        if !matches!((&q, &f), (Ok(true), Ok(true))) {
            bad6.push(format!("{tw:?}: {q:?} / {f:?}"));
        }
    }
    ok &= report(
        6,
        "gcd on Kummer towers",
        start,
        Line { pass: bad6.is_empty(), detail: format!("3 towers over Q and F13{}", listing(&bad6)) },
    );

    let start = Instant::now();
    let t = fiber_corpus();
    let pass7 = t.verified >= 30 && t.errors.is_empty() && t.sum_e_bad.is_empty() && t.gcd_bad.is_empty() && t.fields.len() == 3;
    let mut problems: Vec<String> = t.errors.clone();
    problems.extend(t.sum_e_bad.iter().cloned());
    problems.extend(t.gcd_bad.iter().cloned());
    ok &= report(
        7,
        "Σe and gcd on fibered products",
        start,
        Line {
            pass: pass7,
            detail: format!(
                "{} cover pairs, {} verified over {:?}, {} skipped for residue degree > 1, {} gcd checks{}",
                t.pairs,
                t.verified,
                t.fields,
                t.obstructed,
                t.gcd_checked,
                listing(&problems)
            ),
        },
    );
    let t8 = Instant::now();
    let rate = if t.oracle_run == 0 { 0.0 } else { t.oracle_done as f64 / t.oracle_run as f64 };
    ok &= report(
        8,
        "branch-count oracle",
        t8,
        Line {
            pass: t.oracle_bad.is_empty() && rate >= 0.95,
            detail: format!(
                "terminated on {}/{} ({:.1}%), {} disagreements{}",
                t.oracle_done,
                t.oracle_run,
                100.0 * rate,
                t.oracle_bad.len(),
                listing(&t.oracle_bad)
            ),
        },
    );

    let t9 = Instant::now();
    ok &= report(
        9,
        "root valuation by norm vs slope",
        t9,
        Line {
            pass: s.slope_bad.is_empty() && s.slope_checked == s.factors && s.factors > 0,
            detail: format!("{} local factors, {} mismatches{}", s.slope_checked, s.slope_bad.len(), listing(&s.slope_bad)),
        },
    );

    let start = Instant::now();
    ok &= report(10, "CLI determinism", start, cli_determinism());

    if !ok {
        std::process::exit(1);
    }
}
