//! Deformed q-Appell families.
//!
//! A family is fixed by a determining series `A(t)` with rational
//! coefficients and an integer order `alpha`. Its numbers `a_n` are the
//! divided-power coefficients of `A(t)^alpha`, and its polynomials are read
//! off the generating function `A(t)^alpha e_q(xt, u)`:
//!
//! ```text
//! P_n(x; u) = sum_k [n k]_q u^C(n-k,2) a_k x^(n-k)
//! ```
//!
//! The bivariate polynomials come from `A(t)^alpha e_q(xt) e_q(yt, u)` and
//! can be built along three independent routes (see [`BivarRoute`]).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{MultiPoly, Var};
use crate::qcore::{Ctx, QContext, Rational};
use crate::report::VerificationReport;
use crate::series::TruncSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Bernoulli,
    Euler,
    Genocchi,
    Custom,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Bernoulli => "bernoulli",
            FamilyKind::Euler => "euler",
            FamilyKind::Genocchi => "genocchi",
            FamilyKind::Custom => "custom",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bernoulli" => Ok(FamilyKind::Bernoulli),
            "euler" => Ok(FamilyKind::Euler),
            "genocchi" => Ok(FamilyKind::Genocchi),
            "custom" => Ok(FamilyKind::Custom),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AppellFamily {
    kind: FamilyKind,
    base: TruncSeries,
    alpha: i64,
    det: TruncSeries,
    a: Vec<Rational>,
    vanish: usize,
}

impl PartialEq for AppellFamily {
    fn eq(&self, other: &Self) -> bool {
        self.det == other.det
    }
}

/// Route used to build `P_n(x, y; u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BivarRoute {
    /// `sum_k [n k] u^C(n-k,2) P_k(x) y^(n-k)` with the classical `P_k(x)`.
    Iden21,
    /// `sum_k [n k] P_k(y; u) x^(n-k)`.
    Iden22,
    /// `sum_k [n k] a_k R_(n-k)(x, y; u|q)`.
    RConv,
}

impl AppellFamily {
    /// Builds the family of order `alpha` over `base`.
    pub fn from_series(base: TruncSeries, alpha: i64) -> Result<Self> {
        AppellFamily::with_kind(FamilyKind::Custom, base, alpha)
    }

    fn with_kind(kind: FamilyKind, base: TruncSeries, alpha: i64) -> Result<Self> {
        let scalars = base.scalar_coeffs().ok_or(Error::NonScalarCoefficients)?;
        let vanish = scalars.iter().position(|c| !c.is_zero()).unwrap_or(scalars.len());
        if vanish > 0 && alpha < 0 {
            return Err(Error::ZeroConstantTerm);
        }
        // for vanish > 0 and alpha > 0 this is repeated multiplication only
        let det = base.ipow(alpha)?;
        let a = det.scalar_coeffs().expect("powers of a scalar series are scalar");
        Ok(AppellFamily { kind, base, alpha, det, a, vanish })
    }

    /// The family with determining series `1`: `P_n = u^C(n,2) x^n`.
    pub fn unit(ctx: Ctx, order: usize) -> Self {
        AppellFamily::from_series(TruncSeries::one(ctx, order), 1).expect("unit series")
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn order(&self) -> usize {
        self.det.order()
    }

    pub fn ctx(&self) -> &Ctx {
        self.det.ctx()
    }

    /// The determining series before raising to `alpha`.
    pub fn base(&self) -> &TruncSeries {
        &self.base
    }

    /// `A(t)^alpha`, whose coefficients are the family numbers.
    pub fn determining(&self) -> &TruncSeries {
        &self.det
    }

    pub fn numbers(&self) -> &[Rational] {
        &self.a
    }

    pub fn number(&self, n: usize) -> &Rational {
        &self.a[n]
    }

    /// Order of vanishing of the base series at `t = 0`.
    pub fn vanish(&self) -> usize {
        self.vanish
    }

    pub fn is_degenerate(&self) -> bool {
        self.a[0].is_zero()
    }

    pub fn label(&self) -> String {
        format!("{}({})", self.kind.name(), self.alpha)
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n > self.order() {
            Err(Error::IndexOutOfRange { index: n, order: self.order() })
        } else {
            Ok(())
        }
    }

    /// `sum_k [n k] u0^C(n-k,2) a_k v^(n-k)`.
    pub fn poly_in(&self, n: usize, v: Var, u0: &Rational) -> Result<MultiPoly> {
        self.check_index(n)?;
        let ctx = self.ctx();
        let row = ctx.q_binomial_row(n);
        let terms = (0..=n).map(|k| {
            let c = &row[k] * &u0.pow(crate::qcore::binom2((n - k) as i64) as u32) * &self.a[k];
            (crate::polyring::Monomial::var(v, (n - k) as u32), c)
        });
        Ok(MultiPoly::from_terms(terms))
    }

    /// `P_n(x; u)`.
    pub fn poly(&self, n: usize) -> Result<MultiPoly> {
        let u = self.ctx().u().clone();
        self.poly_in(n, Var::X, &u)
    }

    /// `P_n(x)`, the undeformed (`u = 1`) polynomial.
    pub fn classical(&self, n: usize) -> Result<MultiPoly> {
        self.poly_in(n, Var::X, &Rational::one())
    }

    /// `P_n(x, y; u)` along the requested route.
    pub fn bivar(&self, n: usize, route: BivarRoute) -> Result<MultiPoly> {
        self.check_index(n)?;
        let ctx = self.ctx();
        let row = ctx.q_binomial_row(n);
        let mut out = MultiPoly::zero();
        for k in 0..=n {
            let term = match route {
                BivarRoute::Iden21 => {
                    let w = &row[k] * &ctx.u_binom2(n - k);
                    let y = MultiPoly::var_pow(w, Var::Y, (n - k) as u32);
                    &self.classical(k)? * &y
                }
                BivarRoute::Iden22 => {
                    let py = self.poly_in(k, Var::Y, ctx.u())?;
                    &py * &MultiPoly::var_pow(row[k].clone(), Var::X, (n - k) as u32)
                }
                BivarRoute::RConv => homog_r(n - k, ctx).scale(&(&row[k] * &self.a[k])),
            };
            out = out + &term;
        }
        Ok(out)
    }

    /// Default route (convolution with `R_n`).
    pub fn bivar_default(&self, n: usize) -> Result<MultiPoly> {
        self.bivar(n, BivarRoute::RConv)
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor {
            kind: self.kind,
            alpha: self.alpha,
            order: self.order(),
            q: self.ctx().q().clone(),
            u: self.ctx().u().clone(),
            a: Some(self.a.clone()),
            base: (self.kind == FamilyKind::Custom)
                .then(|| self.base.scalar_coeffs().expect("scalar base")),
        }
    }
}

/// JSON descriptor of a family. Custom families supply `base`; `a` is
/// informational on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub alpha: i64,
    pub order: usize,
    pub q: Rational,
    pub u: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<Rational>>,
}

impl FamilyDescriptor {
    pub fn build(&self) -> Result<AppellFamily> {
        let ctx = QContext::new(self.q.clone(), self.u.clone())?;
        match self.kind {
            FamilyKind::Custom => {
                let base = self
                    .base
                    .as_ref()
                    .ok_or_else(|| Error::Parse("custom family needs a `base` coefficient list".into()))?;
                let mut coeffs = base.clone();
                coeffs.resize(self.order + 1, Rational::zero());
                AppellFamily::from_series(TruncSeries::from_scalars(ctx, &coeffs), self.alpha)
            }
            kind => named_family(kind, self.alpha, self.order, ctx),
        }
    }
}

pub fn family_from_series(base: TruncSeries, alpha: i64) -> Result<AppellFamily> {
    AppellFamily::from_series(base, alpha)
}

/// `(e_q(t) - 1) / t` in cancelled form: coefficient `1/[m+1]_q`.
pub fn bernoulli_denominator(ctx: Ctx, order: usize) -> Result<TruncSeries> {
    let coeffs = (0..=order)
        .map(|m| ctx.q_number(m + 1).recip())
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncSeries::from_scalars(ctx, &coeffs))
}

/// `e_q(t) + 1`.
fn exp_plus_one(ctx: Ctx, order: usize) -> TruncSeries {
    let e = TruncSeries::exp_q(ctx.clone(), &MultiPoly::one(), order);
    e.add(&TruncSeries::one(ctx, order)).expect("same context")
}

/// Bernoulli `t/(e_q(t)-1)`, Euler `2/(e_q(t)+1)` or Genocchi `2t/(e_q(t)+1)`
/// determining series, raised to `alpha`.
pub fn named_family(kind: FamilyKind, alpha: i64, order: usize, ctx: Ctx) -> Result<AppellFamily> {
    let base = match kind {
        FamilyKind::Bernoulli => bernoulli_denominator(ctx, order)?.inv()?,
        FamilyKind::Euler => exp_plus_one(ctx, order).scale(&Rational::new(1, 2)).inv()?,
        FamilyKind::Genocchi => {
            let two_t = TruncSeries::divided_monomial(ctx.clone(), 1, MultiPoly::constant(Rational::from_int(2)), order);
            two_t.mul(&exp_plus_one(ctx, order).inv()?)?
        }
        FamilyKind::Custom => return Err(Error::Parse("custom families need an explicit base series".into())),
    };
    AppellFamily::with_kind(kind, base, alpha)
}

/// `R_n(x, y; u|q) = sum_k [n k]_q u^C(n-k,2) x^k y^(n-k)`.
pub fn homog_r(n: usize, ctx: &QContext) -> MultiPoly {
    let row = ctx.q_binomial_row(n);
    MultiPoly::from_terms((0..=n).map(|k| {
        let mut e = [0; crate::polyring::NVARS];
        e[Var::X.index()] = k as u32;
        e[Var::Y.index()] = (n - k) as u32;
        (crate::polyring::Monomial(e), &row[k] * &ctx.u_binom2(n - k))
    }))
}

/// `A_0 .. A_n` as polynomials in the variable `a`, solved from
/// `sum_k [n k]_q u^(k(k-n)) a^k A_(n-k) = 1` with `A_0 = 1`.
pub fn a_sequence(n: usize, ctx: &QContext) -> Result<Vec<MultiPoly>> {
    ctx.require_u_nonzero("A-sequence recursion")?;
    let mut seq = vec![MultiPoly::one()];
    for m in 1..=n {
        let row = ctx.q_binomial_row(m);
        let mut rest = MultiPoly::zero();
        for k in 1..=m {
            let ki = k as i64;
            let w = &row[k] * &ctx.u_pow(ki * (ki - m as i64))?;
            rest = rest + &(&seq[m - k] * &MultiPoly::var_pow(w, Var::A, k as u32));
        }
        seq.push(&MultiPoly::one() - &rest);
    }
    Ok(seq)
}

/// Right-hand side of the `A`-sequence expansion at `a = a0`:
///
/// ```text
/// sum_k [n k]_q u^C(k,2) A_k(a0; u) y^k P_(n-k)(x, a0 y; u)
/// ```
///
/// This equals `P_n(x, y; u)` for every `a0`. The trailing polynomial is
/// evaluated at `a0 y`, as forced by `e_q(yt,u) = [e_q(yt,u)/e_q(a yt,u)] e_q(a yt,u)`.
pub fn reproduce_via_a_sequence(f: &AppellFamily, n: usize, a0: &Rational) -> Result<MultiPoly> {
    f.check_index(n)?;
    let ctx = f.ctx();
    let seq = a_sequence(n, ctx)?;
    let row = ctx.q_binomial_row(n);
    let mut out = MultiPoly::zero();
    for k in 0..=n {
        let ak = seq[k].specialize(Var::A, a0).as_scalar().expect("A_k is a polynomial in a only");
        let w = &row[k] * &ctx.u_binom2(k) * &ak;
        let rest = f.bivar_default(n - k)?.subst_scale(Var::Y, a0);
        out = out + &(&rest * &MultiPoly::var_pow(w, Var::Y, k as u32));
    }
    Ok(out)
}

/// `sum_k [n k]_q P^F_k(x) P^G_(n-k)(y; u)`, the classical `F` polynomial in
/// `x` against the deformed `G` polynomial in `y`.
pub fn addition_convolve(f: &AppellFamily, g: &AppellFamily, n: usize) -> Result<MultiPoly> {
    if !f.ctx().same_params(g.ctx()) {
        return Err(Error::ContextMismatch);
    }
    let row = f.ctx().q_binomial_row(n);
    let mut out = MultiPoly::zero();
    for k in 0..=n {
        let gy = g.poly(n - k)?.rename(Var::X, Var::Y);
        out = out + &(&f.classical(k)? * &gy).scale(&row[k]);
    }
    Ok(out)
}

/// Four-way check of the characterization of deformed q-Appell sequences:
/// (i) `D_q P_n(x;u) = [n]_q P_(n-1)(ux;u)`, (ii) the explicit sum,
/// (iii) extraction from `A(t)^alpha e_q(xt,u)`, and (iv) the operator
/// `sum_k u^C(n-k,2) a_k D_q^k/[k]_q!` applied to `x^n`.
pub fn characterization_check(f: &AppellFamily, n_max: usize) -> VerificationReport {
    let ctx = f.ctx();
    let mut report = VerificationReport::new("characterization", n_max)
        .with_ctx(ctx)
        .with_param("family", f.label());
    report.note("generating function read with the deformed exponential e_q(xt,u)");
    if f.is_degenerate() {
        report.fail_with_note("family is degenerate (a_0 = 0); characterization requires a_0 != 0");
        return report;
    }
    let n_max = n_max.min(f.order());
    let gf = f
        .determining()
        .mul(&TruncSeries::deformed_exp(ctx.clone(), &MultiPoly::var(Var::X), ctx.u(), f.order()))
        .expect("same context");
    let mut explicit = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        explicit.push(f.poly(n).expect("index checked"));
    }
    for n in 0..=n_max {
        let p = &explicit[n];
        let lhs = p.q_derive(Var::X, ctx);
        let rhs = if n == 0 {
            MultiPoly::zero()
        } else {
            explicit[n - 1].subst_scale(Var::X, ctx.u()).scale(&ctx.q_number(n))
        };
        report.check(format!("n={n} (i) recursion"), &lhs, &rhs);
        report.check(format!("n={n} (iii) generating function"), gf.coeff(n), p);
        let xn = MultiPoly::var_pow(Rational::one(), Var::X, n as u32);
        let mut op = MultiPoly::zero();
        for k in 0..=n {
            let w = (&ctx.u_binom2(n - k) * f.number(k))
                .checked_div(&ctx.q_factorial(k))
                .expect("q-factorials are nonzero");
            op = op + &xn.q_derive_k(Var::X, k, ctx).scale(&w);
        }
        report.check(format!("n={n} (iv) operator form"), &op, p);
    }
    report
}
