//! Verification suites run by `qappell verify`.
//!
//! Each suite maps a grid point to a list of reports. Reports under
//! `findings` exhibit displayed identities that do not hold verbatim; they
//! are informational and do not affect `pass`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::grid::GridPoint;
use crate::appell::{
    a_sequence, addition_convolve, characterization_check, homog_r, named_family, reproduce_via_a_sequence,
    AppellFamily, BivarRoute, FamilyKind,
};
use crate::error::Result;
use crate::operators::{self, MehlerReading};
use crate::polyring::{leibniz_rhs, Monomial, MultiPoly, Var};
use crate::qcore::{direct, Ctx, QContext, Rational};
use crate::report::VerificationReport;
use crate::series::TruncSeries;
use crate::setalgebra::{self, AppellSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Qcore,
    Leibniz,
    Derivatives,
    Structure,
    Asequence,
    Addition,
    Characterization,
    Operators,
    Genfun,
    Mehler,
    Rogers,
    Setalgebra,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Qcore,
        Suite::Leibniz,
        Suite::Derivatives,
        Suite::Structure,
        Suite::Asequence,
        Suite::Addition,
        Suite::Characterization,
        Suite::Operators,
        Suite::Genfun,
        Suite::Mehler,
        Suite::Rogers,
        Suite::Setalgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qcore => "qcore",
            Suite::Leibniz => "leibniz",
            Suite::Derivatives => "derivatives",
            Suite::Structure => "structure",
            Suite::Asequence => "asequence",
            Suite::Addition => "addition",
            Suite::Characterization => "characterization",
            Suite::Operators => "operators",
            Suite::Genfun => "genfun",
            Suite::Mehler => "mehler",
            Suite::Rogers => "rogers",
            Suite::Setalgebra => "setalgebra",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// The identities each suite exercises, as formula strings.
    pub fn anchors(self) -> &'static [&'static str] {
        match self {
            Suite::Qcore => &[
                "[n k]_q = [n n-k]_q",
                "[n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q",
                "(a;q)_(m+n) = (a;q)_m (aq^m;q)_n",
                "[n]_q = (1-q^n)/(1-q)",
            ],
            Suite::Leibniz => &["D_q^n{fg} = sum_k q^(k(k-n)) [n k]_q D_q^k{f} D_q^(n-k){g(q^k x)}"],
            Suite::Derivatives => &[
                "D_(q,x) P_n(x,y;u) = [n]_q P_(n-1)(x,y;u)",
                "D_(q,y) P_n(x,y;u) = [n]_q P_(n-1)(x,uy;u)",
                "D_(q,y)^k P_n(x,y;u) = [n]_q!/[n-k]_q! u^C(k,2) P_(n-k)(x,u^k y;u)",
                "D_q P_n(x;u) = [n]_q P_(n-1)(ux;u)",
                "u = 1: A(t) e_q(xt) and D_q P_n = [n]_q P_(n-1)(x)",
                "u = q: A(t) E_q(xt) and D_q P_n = [n]_q P_(n-1)(qx)",
            ],
            Suite::Structure => &[
                "P_n(x,y;u) = sum_k [n k]_q u^C(n-k,2) P_k(x) y^(n-k)",
                "P_n(x,y;u) = sum_k [n k]_q P_k(y;u) x^(n-k)",
                "P_n(x,y;u) = sum_k [n k]_q a_k R_(n-k)(x,y;u|q)",
                "T(yD_q|u){x^n} = R_n(x,y;u|q)",
                "P_n(x,y;u) = T(yD_q|u){P_n(x)}",
                "T(yD_q|u){A(t) e_q(tx)} = A(t) e_q(tx) e_q(ty,u)",
            ],
            Suite::Asequence => &[
                "sum_k [n k]_q u^(k(k-n)) a^k A_(n-k)(a;u) = 1",
                "e_q(yt,u)/e_q(ayt,u) = sum_n u^C(n,2) A_n(a;u) (yt)^n/[n]_q!",
                "A_n(a;1) = (a;q)_n, A_n(a;q) = (a;q^-1)_n",
                "P_n(x,y;u) = sum_k [n k]_q u^C(k,2) A_k(a;u) y^k P_(n-k)(x,ay;u)",
            ],
            Suite::Addition => &[
                "P^(alpha+beta)_n(x,y;u) = sum_k [n k]_q P^(alpha)_k(x) P^(beta)_(n-k)(y;u)",
                "R_n(x,y;u|q) = sum_k [n k]_q P^(alpha)_k(x) P^(-alpha)_(n-k)(y;u)",
            ],
            Suite::Characterization => &[
                "D_q P_n(x;u) = [n]_q P_(n-1)(ux;u)",
                "P_n(x;u) = sum_k [n k]_q u^C(n-k,2) a_k x^(n-k)",
                "A(t)^alpha e_q(xt,u) = sum_n P_n(x;u) t^n/[n]_q!",
                "P_n(x;u) = (sum_k u^C(n-k,2) a_k D_q^k/[k]_q!) x^n",
            ],
            Suite::Operators => &[
                "Q_n(x,y,z;u) = A_alpha(x,y,D_q|u){z^n}",
                "Q_n(x,y;u) = A_alpha(yD_q|u){x^n}",
                "D_(q,x) Q_n(x,y;u) = [n]_q Q_(n-1)(x,y;u)",
                "D_(q,x) Q_n(x,y,z;u) = [n]_q y Q_(n-1)(ux,y,z;u)",
                "D_(q,z) Q_n(x,y,z;u) = [n]_q Q_(n-1)(x,y,z;u)",
                "P_n(x;u) = u^C(n,2) Q_n(x,u^(1-n);u)",
                "P_n(x,y;u) = Q_n(y,1,x;u)",
            ],
            Suite::Genfun => &[
                "sum_n Q_n(x,y,z;u) t^n/[n]_q! = e_q(zt) A(yt)^alpha e_q(xyt,u)",
                "sum_n q^C(n,2) Q_n t^n/[n]_q! = E_q(zt) sum_k q^C(k,2) P_k(x;u) (ty)^k/((-(1-q)zt;q)_k [k]_q!)",
                "E_q(q^k z) = E_q(z)/(-(1-q)z;q)_k, e_q(q^k z) = e_q(z) ((1-q)z;q)_k",
            ],
            Suite::Mehler => &[
                "sum_n Q_n(x,y,z;u) P^(beta)_n(w) t^n/[n]_q! = e_q(wzt) sum_i sum_k (Mehler right side)",
                "sum_n (ywt)^n P_(n+k)(x;u)/[n]_q! = sum_i [k i]_q u^C(k-i,2) x^(k-i) A_i(ywt) e_q(q^i u^(k-i) ywxt,u)",
            ],
            Suite::Rogers => &[
                "sum_(n,m) Q_(n+m)(x,y,z;u) t^n s^m/([n]_q! [m]_q!) = e_q(zt) e_q(zs) sum_n P_n(x;u) y^n/[n]_q! sum_k [n k]_q t^k s^(n-k) ((1-q)zs;q)_k",
            ],
            Suite::Setalgebra => &[
                "f*g = g*f, f*(g*h) = (f*g)*h, f*I = f, f*f^-1 = I",
                "(cf)*g = f*(cg) = c(f*g), f+g = g+f",
                "f*g belongs to A(t)B(t) and is again deformed q-Appell",
            ],
        }
    }

    /// Reason a grid point is skipped by this suite, if any.
    pub fn exclusion(self, p: &GridPoint) -> Option<&'static str> {
        let q_one = p.q.is_one();
        let u_zero = p.u.is_zero();
        match self {
            Suite::Qcore | Suite::Derivatives => None,
            Suite::Leibniz if p.q.is_zero() => Some("q = 0: negative powers of q"),
            Suite::Asequence | Suite::Mehler | Suite::Setalgebra if u_zero && !q_one => {
                Some("u = 0: negative powers of u or components below full degree")
            }
            _ if q_one => Some("q = 1 enters only the derivative and qcore suites"),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub max_n: usize,
    pub order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Excluded {
    pub q: String,
    pub u: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub anchors: Vec<String>,
    pub excluded: Vec<Excluded>,
    pub reports: Vec<VerificationReport>,
    pub findings: Vec<VerificationReport>,
    pub pass: bool,
}

#[derive(Default)]
struct PointOutput {
    reports: Vec<VerificationReport>,
    findings: Vec<VerificationReport>,
}

pub fn run_suite(suite: Suite, points: &[GridPoint], settings: Settings) -> SuiteResult {
    let mut excluded = Vec::new();
    let mut active = Vec::new();
    for (i, p) in points.iter().enumerate() {
        match suite.exclusion(p) {
            Some(reason) => excluded.push(Excluded { q: p.q.to_string(), u: p.u.to_string(), reason: reason.into() }),
            None => active.push((i, p)),
        }
    }
    let outputs: Vec<PointOutput> = active
        .par_iter()
        .map(|(i, p)| {
            let out = QContext::new(p.q.clone(), p.u.clone()).and_then(|ctx| run_point(suite, &ctx, *i, settings));
            out.unwrap_or_else(|e| {
                let mut r = VerificationReport::new(suite.name(), settings.order)
                    .with_param("q", &p.q)
                    .with_param("u", &p.u);
                r.fail_with_note(format!("error: {e}"));
                PointOutput { reports: vec![r], findings: Vec::new() }
            })
        })
        .collect();
    let mut reports = Vec::new();
    let mut findings = Vec::new();
    for o in outputs {
        reports.extend(o.reports);
        findings.extend(o.findings);
    }
    let pass = reports.iter().all(|r| r.pass);
    SuiteResult {
        suite: suite.name().into(),
        anchors: suite.anchors().iter().map(|s| s.to_string()).collect(),
        excluded,
        reports,
        findings,
        pass,
    }
}

fn run_point(suite: Suite, ctx: &Ctx, index: usize, s: Settings) -> Result<PointOutput> {
    match suite {
        Suite::Qcore => qcore_point(ctx),
        Suite::Leibniz => leibniz_point(ctx, index),
        Suite::Derivatives => derivatives_point(ctx, s),
        Suite::Structure => structure_point(ctx, s),
        Suite::Asequence => asequence_point(ctx, s),
        Suite::Addition => addition_point(ctx, s),
        Suite::Characterization => characterization_point(ctx, s),
        Suite::Operators => operators_point(ctx, s),
        Suite::Genfun => genfun_point(ctx, s),
        Suite::Mehler => mehler_point(ctx, s),
        Suite::Rogers => rogers_point(ctx, s),
        Suite::Setalgebra => setalgebra_point(ctx, s),
    }
}

fn family(kind: FamilyKind, alpha: i64, order: usize, ctx: &Ctx) -> Result<AppellFamily> {
    named_family(kind, alpha, order, ctx.clone())
}

fn konst(c: Rational) -> MultiPoly {
    MultiPoly::constant(c)
}

const QCORE_N: usize = 16;

fn qcore_point(ctx: &Ctx) -> Result<PointOutput> {
    let q = ctx.q().clone();
    let mut r = VerificationReport::new("q-number kernel", QCORE_N).with_ctx(ctx);
    for n in 0..=QCORE_N {
        let row = ctx.q_binomial_row(n);
        for k in 0..=n {
            r.check(format!("symmetry n={n} k={k}"), &konst(row[k].clone()), &konst(row[n - k].clone()));
            r.check(
                format!("memoized vs direct n={n} k={k}"),
                &konst(row[k].clone()),
                &konst(direct::q_binomial(n, k as i64, &q)),
            );
            if n > 0 {
                let ki = k as i64;
                let pascal = ctx.q_binomial(n - 1, ki - 1) + q.pow(k as u32) * ctx.q_binomial(n - 1, ki);
                r.check(format!("Pascal n={n} k={k}"), &konst(row[k].clone()), &konst(pascal));
                let pascal2 = q.pow((n - k) as u32) * ctx.q_binomial(n - 1, ki - 1) + ctx.q_binomial(n - 1, ki);
                r.check(format!("Pascal (dual) n={n} k={k}"), &konst(row[k].clone()), &konst(pascal2));
            }
        }
        if !q.is_one() {
            let quotient = (Rational::one() - q.pow(n as u32)).checked_div(&(Rational::one() - &q))?;
            r.check(format!("[n] sum vs quotient n={n}"), &konst(ctx.q_number(n)), &konst(quotient));
        } else {
            r.check(format!("[n] at q = 1, n={n}"), &konst(ctx.q_number(n)), &konst(Rational::from_int(n as i64)));
        }
        let fact: Rational = (1..=n).map(|k| direct::q_number(k, &q)).product();
        r.check(format!("[n]! n={n}"), &konst(ctx.q_factorial(n)), &konst(fact));
        for a in [Rational::new(1, 3), Rational::from_int(-2), q.clone()] {
            for m in 0..=n {
                let lhs = ctx.q_pochhammer(&a, n);
                let rhs = ctx.q_pochhammer(&a, m) * ctx.q_pochhammer(&(&a * &q.pow(m as u32)), n - m);
                r.check(format!("Pochhammer a={a} m={m} n={}", n - m), &konst(lhs), &konst(rhs));
            }
        }
    }
    Ok(PointOutput { reports: vec![r], findings: vec![] })
}

pub const LEIBNIZ_PAIRS: usize = 50;
const LEIBNIZ_SEED: u64 = 0x5eed_0fa9_9e11;

fn random_poly(rng: &mut ChaCha8Rng) -> MultiPoly {
    let terms = rng.gen_range(1..=4);
    MultiPoly::from_terms((0..terms).map(|_| {
        let c = Rational::new(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let m = Monomial([rng.gen_range(0..=5), rng.gen_range(0..=1), 0, 0, 0]);
        (m, c)
    }))
}

fn leibniz_point(ctx: &Ctx, index: usize) -> Result<PointOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(LEIBNIZ_SEED.wrapping_add(index as u64));
    let mut r = VerificationReport::new("q-Leibniz rule", 4).with_ctx(ctx).with_param("pairs", LEIBNIZ_PAIRS);
    r.note("D_q^(n-k) applied to the composed function g(q^k x)");
    for pair in 0..LEIBNIZ_PAIRS {
        let (f, g) = (random_poly(&mut rng), random_poly(&mut rng));
        let fg = &f * &g;
        for n in 0..=4 {
            let lhs = fg.q_derive_k(Var::X, n, ctx);
            r.check(format!("pair {pair} n={n}"), &lhs, &leibniz_rhs(&f, &g, Var::X, n, ctx)?);
        }
    }
    Ok(PointOutput { reports: vec![r], findings: vec![] })
}

fn derivative_families(ctx: &Ctx, order: usize) -> Result<Vec<AppellFamily>> {
    let mut out = Vec::new();
    for kind in [FamilyKind::Bernoulli, FamilyKind::Euler, FamilyKind::Genocchi] {
        for alpha in [1, 2] {
            out.push(family(kind, alpha, order, ctx)?);
        }
    }
    out.push(AppellFamily::unit(ctx.clone(), order));
    Ok(out)
}

fn derivatives_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let n_max = s.max_n;
    let u = ctx.u().clone();
    let mut reports = Vec::new();
    for f in derivative_families(ctx, n_max)? {
        let mut r = VerificationReport::new("bivariate q-derivatives", n_max).with_ctx(ctx).with_param("family", f.label());
        let biv: Vec<MultiPoly> = (0..=n_max).map(|n| f.bivar_default(n)).collect::<Result<_>>()?;
        let uni: Vec<MultiPoly> = (0..=n_max).map(|n| f.poly(n)).collect::<Result<_>>()?;
        for n in 0..=n_max {
            for k in 0..=n {
                let w = ctx.q_factorial(n).checked_div(&ctx.q_factorial(n - k))?;
                r.check(format!("n={n} D_x^{k}"), &biv[n].q_derive_k(Var::X, k, ctx), &biv[n - k].scale(&w));
                let rhs = biv[n - k].subst_scale(Var::Y, &u.pow(k as u32)).scale(&(&w * &ctx.u_binom2(k)));
                r.check(format!("n={n} D_y^{k}"), &biv[n].q_derive_k(Var::Y, k, ctx), &rhs);
            }
            let rhs = if n == 0 { MultiPoly::zero() } else { uni[n - 1].subst_scale(Var::X, &u).scale(&ctx.q_number(n)) };
            r.check(format!("n={n} D_q P_n(x;u)"), &uni[n].q_derive(Var::X, ctx), &rhs);
        }
        // classical specializations: type I at u = 1, type II at u = q
        let specials = [(Rational::one(), "u=1 e_q"), (ctx.q().clone(), "u=q E_q")];
        for (u0, label) in specials {
            if u != u0 {
                continue;
            }
            r.note(format!("{label} specialization checked"));
            let exp = TruncSeries::deformed_exp(ctx.clone(), &MultiPoly::var(Var::X), &u0, n_max);
            let gf = f.determining().truncate(n_max).mul(&exp)?;
            for n in 0..=n_max {
                r.check(format!("n={n} {label} generating function"), gf.coeff(n), &uni[n]);
                if n > 0 {
                    let rhs = uni[n - 1].subst_scale(Var::X, &u0).scale(&ctx.q_number(n));
                    r.check(format!("n={n} {label} recursion"), &uni[n].q_derive(Var::X, ctx), &rhs);
                }
            }
        }
        reports.push(r);
    }
    Ok(PointOutput { reports, findings: vec![] })
}

fn structure_families(ctx: &Ctx, order: usize) -> Result<Vec<AppellFamily>> {
    Ok(vec![
        family(FamilyKind::Bernoulli, 1, order, ctx)?,
        family(FamilyKind::Bernoulli, 2, order, ctx)?,
        family(FamilyKind::Euler, 1, order, ctx)?,
        family(FamilyKind::Genocchi, 1, order, ctx)?,
        AppellFamily::unit(ctx.clone(), order),
    ])
}

fn structure_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let order = s.max_n.max(s.order);
    let mut reports = Vec::new();
    for f in structure_families(ctx, order)? {
        let mut r = VerificationReport::new("bivariate routes", s.max_n).with_ctx(ctx).with_param("family", f.label());
        for n in 0..=s.max_n {
            let a = f.bivar(n, BivarRoute::Iden21)?;
            r.check(format!("n={n} iden21 vs iden22"), &a, &f.bivar(n, BivarRoute::Iden22)?);
            r.check(format!("n={n} iden21 vs R-convolution"), &a, &f.bivar(n, BivarRoute::RConv)?);
            let at0 = a.specialize(Var::X, &Rational::zero());
            r.check(format!("n={n} P_n(0,y;u) = P_n(y;u)"), &at0, &f.poly(n)?.rename(Var::X, Var::Y));
        }
        reports.push(r);
        reports.push(operators::operator_route_check(&f, s.max_n));
        reports.push(operators::t_series_check(&f, s.order));
    }
    let b0 = family(FamilyKind::Bernoulli, 0, s.max_n, ctx)?;
    let mut r = VerificationReport::new("order zero gives R_n", s.max_n).with_ctx(ctx);
    for n in 0..=s.max_n {
        r.check(n, &b0.bivar_default(n)?, &homog_r(n, ctx));
    }
    reports.push(r);
    Ok(PointOutput { reports, findings: vec![] })
}

fn pochhammer_poly(q: &Rational, n: usize) -> MultiPoly {
    let a = MultiPoly::var(Var::A);
    (0..n).fold(MultiPoly::one(), |acc, j| &acc * &(&MultiPoly::one() - &a.scale(&q.pow(j as u32))))
}

/// `A_3(a;u)` as displayed: `1 - [3] u^-2 a - q [3] u^-2 a^2 (1-a) - [3] u^-2 a^3`.
pub fn a3_displayed(ctx: &QContext) -> Result<MultiPoly> {
    let a = MultiPoly::var(Var::A);
    let w = ctx.q_number(3) * ctx.u_pow(-2)?;
    let one = MultiPoly::one();
    let t1 = a.scale(&w);
    let t2 = (&a.pow(2) * &(&one - &a)).scale(&(&w * ctx.q()));
    let t3 = a.pow(3).scale(&w);
    Ok(&(&(&one - &t1) - &t2) - &t3)
}

fn asequence_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let n_max = s.max_n.max(3);
    let seq = a_sequence(n_max, ctx)?;
    let a = MultiPoly::var(Var::A);
    let one = MultiPoly::one();
    let mut r = VerificationReport::new("A-sequence", n_max).with_ctx(ctx);

    r.check("A_0 displayed", &seq[0], &one);
    r.check("A_1 displayed", &seq[1], &(&one - &a));
    let w2 = ctx.q_number(2) * ctx.u_pow(-1)?;
    let a2 = &(&one - &(&(&one - &a) * &a).scale(&w2)) - &a.pow(2);
    r.check("A_2 displayed", &seq[2], &a2);

    // quotient of deformed exponentials as an independent oracle
    let y = MultiPoly::var(Var::Y);
    let num = TruncSeries::deformed_exp(ctx.clone(), &y, ctx.u(), n_max);
    let den = TruncSeries::deformed_exp(ctx.clone(), &(&a * &y), ctx.u(), n_max);
    let ratio = num.mul(&den.inv()?)?;
    for n in 0..=n_max {
        let rhs = &seq[n] * &MultiPoly::var_pow(ctx.u_binom2(n), Var::Y, n as u32);
        r.check(format!("n={n} exponential quotient"), ratio.coeff(n), &rhs);
        if n > 0 {
            r.check(format!("n={n} A_n(1) = 0"), &seq[n].specialize(Var::A, &Rational::one()), &MultiPoly::zero());
        }
    }
    let q = ctx.q().clone();
    if ctx.u().is_one() {
        r.note("u = 1 closed form (a;q)_n checked");
        for n in 0..=n_max {
            r.check(format!("n={n} (a;q)_n"), &seq[n], &pochhammer_poly(&q, n));
        }
    }
    if *ctx.u() == q {
        r.note("u = q closed form (a;q^-1)_n checked");
        let qi = q.recip()?;
        for n in 0..=n_max {
            r.check(format!("n={n} (a;q^-1)_n"), &seq[n], &pochhammer_poly(&qi, n));
        }
    }
    let mut reports = vec![r];

    let a0s = [Rational::zero(), Rational::one(), Rational::new(1, 2), Rational::from_int(-2)];
    let mut findings = Vec::new();
    let mut a3 = VerificationReport::new("A_3 as displayed", 3).with_ctx(ctx);
    a3.check(3, &seq[3], &a3_displayed(ctx)?);
    findings.push(a3);
    for f in [family(FamilyKind::Bernoulli, 1, s.max_n, ctx)?, family(FamilyKind::Euler, 1, s.max_n, ctx)?] {
        let mut r = VerificationReport::new("A-sequence expansion", s.max_n).with_ctx(ctx).with_param("family", f.label());
        r.note("trailing polynomial evaluated at (x, a y)");
        let mut shown = VerificationReport::new("A-sequence expansion as displayed", s.max_n)
            .with_ctx(ctx)
            .with_param("family", f.label())
            .with_param("a", "1/2");
        let row_seq = a_sequence(s.max_n, ctx)?;
        for n in 0..=s.max_n {
            let target = f.bivar_default(n)?;
            for a0 in &a0s {
                r.check(format!("n={n} a={a0}"), &reproduce_via_a_sequence(&f, n, a0)?, &target);
            }
            let a0 = Rational::new(1, 2);
            let row = ctx.q_binomial_row(n);
            let mut lit = MultiPoly::zero();
            for k in 0..=n {
                let ak = row_seq[k].specialize(Var::A, &a0).as_scalar().expect("scalar");
                let w = &row[k] * &ctx.u_binom2(k) * &ak;
                lit = lit + &(&f.bivar_default(n - k)? * &MultiPoly::var_pow(w, Var::Y, k as u32));
            }
            shown.check(n, &lit, &target);
        }
        reports.push(r);
        findings.push(shown);
    }
    Ok(PointOutput { reports, findings })
}

fn addition_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let mut reports = Vec::new();
    let pairs: [(i64, i64); 5] = [(1, 1), (2, 2), (1, -1), (2, -1), (1, 0)];
    for kind in [FamilyKind::Bernoulli, FamilyKind::Euler] {
        for (alpha, beta) in pairs {
            let fa = family(kind, alpha, s.max_n, ctx)?;
            let fb = family(kind, beta, s.max_n, ctx)?;
            let fab = family(kind, alpha + beta, s.max_n, ctx)?;
            let mut r = VerificationReport::new("addition theorem", s.max_n)
                .with_ctx(ctx)
                .with_param("family", kind.name())
                .with_param("alpha", alpha)
                .with_param("beta", beta);
            for n in 0..=s.max_n {
                let lhs = fab.bivar_default(n)?;
                r.check(n, &lhs, &addition_convolve(&fa, &fb, n)?);
                if alpha + beta == 0 {
                    r.check(format!("n={n} R_n"), &lhs, &homog_r(n, ctx));
                }
            }
            reports.push(r);
        }
    }
    Ok(PointOutput { reports, findings: vec![] })
}

fn characterization_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let order = s.max_n;
    let fams = vec![
        family(FamilyKind::Bernoulli, 1, order, ctx)?,
        family(FamilyKind::Bernoulli, 2, order, ctx)?,
        family(FamilyKind::Euler, 1, order, ctx)?,
        family(FamilyKind::Euler, 2, order, ctx)?,
        AppellFamily::unit(ctx.clone(), order),
    ];
    let mut reports = Vec::new();
    let mut findings = Vec::new();
    for f in &fams {
        reports.push(characterization_check(f, s.max_n));
        // generating function with the undeformed e_q(tx)
        let mut shown = VerificationReport::new("characterization with e_q(tx)", s.max_n)
            .with_ctx(ctx)
            .with_param("family", f.label());
        let gf = f.determining().mul(&TruncSeries::exp_q(ctx.clone(), &MultiPoly::var(Var::X), order))?;
        for n in 0..=s.max_n {
            shown.check(n, gf.coeff(n), &f.poly(n)?);
        }
        findings.push(shown);
    }
    Ok(PointOutput { reports, findings })
}

fn operator_families(ctx: &Ctx, order: usize) -> Result<Vec<AppellFamily>> {
    Ok(vec![
        family(FamilyKind::Bernoulli, 1, order, ctx)?,
        family(FamilyKind::Euler, 1, order, ctx)?,
        family(FamilyKind::Genocchi, 1, order, ctx)?,
        AppellFamily::unit(ctx.clone(), order),
    ])
}

fn operators_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let mut out = PointOutput::default();
    for f in operator_families(ctx, s.max_n)? {
        out.reports.push(operators::operator_route_check(&f, s.max_n));
        out.reports.push(operators::quasi_derivative_check(&f, s.max_n));
        out.reports.push(operators::relating_check(&f, s.max_n));
        out.findings.extend(operators::printed_forms_check(&f, s.max_n));
    }
    Ok(out)
}

fn genfun_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let mut out = PointOutput::default();
    for f in operator_families(ctx, s.order)? {
        out.reports.push(operators::quasi_genfun_check(&f, s.order));
        out.reports.push(operators::quasi_weighted_genfun_check(&f, s.order)?);
    }
    out.reports.push(operators::shift_law_check(ctx, 6, s.order)?);
    Ok(out)
}

fn mehler_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let b = family(FamilyKind::Bernoulli, 1, s.order + 3, ctx)?;
    let e = family(FamilyKind::Euler, 1, s.order + 3, ctx)?;
    let unit = AppellFamily::unit(ctx.clone(), s.order);
    let mut out = PointOutput::default();
    for f in [&b, &e] {
        for k in 0..=3 {
            out.reports.push(operators::mehler_inner_check(f, k, s.order));
        }
    }
    out.reports.push(operators::mehler_verify(&b, &e, s.order)?);
    out.reports.push(operators::mehler_verify(&unit, &unit, s.order)?);
    out.findings.push(operators::mehler_verify_with(&b, &e, s.order, MehlerReading::Displayed)?);
    Ok(out)
}

fn rogers_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let mut out = PointOutput::default();
    for kind in [FamilyKind::Bernoulli, FamilyKind::Genocchi] {
        out.reports.push(operators::rogers_verify(&family(kind, 1, s.order, ctx)?, s.order)?);
    }
    out.reports.push(operators::rogers_verify(&AppellFamily::unit(ctx.clone(), s.order), s.order)?);
    Ok(out)
}

fn setalgebra_point(ctx: &Ctx, s: Settings) -> Result<PointOutput> {
    let b = AppellSet::new(family(FamilyKind::Bernoulli, 1, s.max_n, ctx)?)?;
    let e = AppellSet::new(family(FamilyKind::Euler, 1, s.max_n, ctx)?)?;
    let bi = setalgebra::set_inverse(&b)?;
    let sets = [b, e, bi];
    Ok(PointOutput {
        reports: vec![setalgebra::group_laws_check(&sets, s.max_n)?],
        findings: vec![setalgebra::route_agreement_check(&sets, s.max_n)?],
    })
}
