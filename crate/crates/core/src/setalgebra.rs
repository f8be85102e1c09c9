//! The group of deformed q-Appell sets under `*`.
//!
//! A set keeps the family it claims to belong to together with its stored
//! components. Sets built from a family hold that family's polynomials; the
//! matrix route of `*` stores the coefficient-substitution sum instead, so a
//! disagreement between the two routes shows up as an inconsistent set.

use crate::appell::AppellFamily;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, MultiPoly, Var};
use crate::qcore::{Ctx, Rational};
use crate::report::VerificationReport;
use crate::series::TruncSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarRoute {
    /// `(f*g)_n = sum_k f(n,k) g_k(x)`.
    Matrix,
    /// Family of the product of determining series.
    Detfun,
}

#[derive(Debug, Clone)]
pub struct AppellSet {
    family: AppellFamily,
    components: Vec<MultiPoly>,
}

impl PartialEq for AppellSet {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl AppellSet {
    /// Caches `P_0 .. P_N` of the family. Requires `a_0 != 0` and `u != 0`
    /// so that every component has exact degree `n`.
    pub fn new(family: AppellFamily) -> Result<Self> {
        family.ctx().require_u_nonzero("Appell set")?;
        if family.is_degenerate() {
            return Err(Error::DegenerateFamily("Appell sets need a_0 != 0"));
        }
        let components = (0..=family.order()).map(|n| family.poly(n)).collect::<Result<_>>()?;
        Ok(AppellSet { family, components })
    }

    pub fn family(&self) -> &AppellFamily {
        &self.family
    }

    pub fn ctx(&self) -> &Ctx {
        self.family.ctx()
    }

    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn component(&self, n: usize) -> &MultiPoly {
        &self.components[n]
    }

    /// `f(n, k)`, the coefficient of `x^k` in the `n`-th component.
    pub fn matrix_entry(&self, n: usize, k: usize) -> Rational {
        self.components[n].coeff(&Monomial::var(Var::X, k as u32))
    }

    /// Whether the stored components are the polynomials of the family.
    pub fn is_consistent(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(n, p)| self.family.poly(n).map(|f| f == *p).unwrap_or(false))
    }
}

fn check_pair(f: &AppellSet, g: &AppellSet) -> Result<usize> {
    if !f.ctx().same_params(g.ctx()) {
        return Err(Error::ContextMismatch);
    }
    Ok(f.order().min(g.order()))
}

fn from_det(det: TruncSeries) -> Result<AppellSet> {
    AppellSet::new(AppellFamily::from_series(det, 1)?)
}

/// Componentwise sum; the determining series add.
pub fn set_add(f: &AppellSet, g: &AppellSet) -> Result<AppellSet> {
    let order = check_pair(f, g)?;
    let a = f.family.determining().truncate(order);
    let b = g.family.determining().truncate(order);
    if (f.family.number(0) + g.family.number(0)).is_zero() {
        return Err(Error::Degeneracy);
    }
    let family = AppellFamily::from_series(a.add(&b)?, 1)?;
    let components = (0..=order).map(|n| f.component(n) + g.component(n)).collect();
    Ok(AppellSet { family, components })
}

/// `c f`; `c = 0` collapses every degree.
pub fn set_scale(f: &AppellSet, c: &Rational) -> Result<AppellSet> {
    if c.is_zero() {
        return Err(Error::Degeneracy);
    }
    let family = AppellFamily::from_series(f.family.determining().scale(c), 1)?;
    let components = f.components.iter().map(|p| p.scale(c)).collect();
    Ok(AppellSet { family, components })
}

pub fn set_star(f: &AppellSet, g: &AppellSet, route: StarRoute) -> Result<AppellSet> {
    let order = check_pair(f, g)?;
    let det = f.family.determining().truncate(order).mul(&g.family.determining().truncate(order))?;
    match route {
        StarRoute::Detfun => from_det(det),
        StarRoute::Matrix => {
            let family = AppellFamily::from_series(det, 1)?;
            let components = (0..=order)
                .map(|n| {
                    (0..=n).fold(MultiPoly::zero(), |acc, k| acc + &g.component(k).scale(&f.matrix_entry(n, k)))
                })
                .collect();
            Ok(AppellSet { family, components })
        }
    }
}

pub fn set_inverse(f: &AppellSet) -> Result<AppellSet> {
    from_det(f.family.determining().inv()?)
}

/// The set with determining series `1`; its components are `u^C(n,2) x^n`.
pub fn identity_set(ctx: Ctx, order: usize) -> Result<AppellSet> {
    AppellSet::new(AppellFamily::unit(ctx, order))
}

/// `D_q P_n(x;u) = [n]_q P_(n-1)(ux;u)` on the stored components.
fn check_recursion(report: &mut VerificationReport, label: &str, s: &AppellSet, n_max: usize) {
    let ctx = s.ctx();
    for n in 1..=n_max.min(s.order()) {
        let lhs = s.component(n).q_derive(Var::X, ctx);
        let rhs = s.component(n - 1).subst_scale(Var::X, ctx.u()).scale(&ctx.q_number(n));
        report.check(format!("{label} n={n}"), &lhs, &rhs);
    }
}

fn check_sets(report: &mut VerificationReport, label: &str, a: &AppellSet, b: &AppellSet, n_max: usize) {
    for n in 0..=n_max.min(a.order()).min(b.order()) {
        report.check(format!("{label} n={n}"), a.component(n), b.component(n));
    }
}

/// Group laws of `*` (detfun route) plus the two scalar laws and `+`
/// commutativity, componentwise to `n_max`.
pub fn group_laws_check(sets: &[AppellSet], n_max: usize) -> Result<VerificationReport> {
    let Some(first) = sets.first() else {
        return Ok(VerificationReport::new("Appell set group laws", n_max));
    };
    let ctx = first.ctx().clone();
    for s in sets {
        check_pair(first, s)?;
    }
    let mut report = VerificationReport::new("Appell set group laws", n_max).with_ctx(&ctx);
    report.note("star computed from the product of determining series");
    let star = |a: &AppellSet, b: &AppellSet| set_star(a, b, StarRoute::Detfun);
    let order = sets.iter().map(AppellSet::order).min().expect("nonempty");
    let id = identity_set(ctx.clone(), order)?;
    let c = Rational::new(3, 2);
    for (i, f) in sets.iter().enumerate() {
        check_sets(&mut report, &format!("f{i}*I = f{i}"), &star(f, &id)?, f, n_max);
        check_sets(&mut report, &format!("f{i}*f{i}^-1 = I"), &star(f, &set_inverse(f)?)?, &id, n_max);
        for (j, g) in sets.iter().enumerate() {
            let fg = star(f, g)?;
            check_sets(&mut report, &format!("f{i}*f{j} = f{j}*f{i}"), &fg, &star(g, f)?, n_max);
            check_recursion(&mut report, &format!("f{i}*f{j} Appell recursion"), &fg, n_max);
            let series = f.family.determining().truncate(fg.order()).mul(&g.family.determining().truncate(fg.order()))?;
            for n in 0..=fg.order() {
                report.check(
                    format!("f{i}*f{j} determining coefficient {n}"),
                    fg.family.determining().coeff(n),
                    series.coeff(n),
                );
            }
            let scaled = set_scale(&fg, &c)?;
            check_sets(&mut report, &format!("(cf{i})*f{j} = c(f{i}*f{j})"), &star(&set_scale(f, &c)?, g)?, &scaled, n_max);
            check_sets(&mut report, &format!("f{i}*(cf{j}) = c(f{i}*f{j})"), &star(f, &set_scale(g, &c)?)?, &scaled, n_max);
            if !(f.family.number(0) + g.family.number(0)).is_zero() {
                check_sets(&mut report, &format!("f{i}+f{j} = f{j}+f{i}"), &set_add(f, g)?, &set_add(g, f)?, n_max);
            }
            // closing remark: f = (f*g)*g^-1 is again Appell
            let back = star(&fg, &set_inverse(g)?)?;
            check_sets(&mut report, &format!("(f{i}*f{j})*f{j}^-1 = f{i}"), &back, f, n_max);
            check_recursion(&mut report, &format!("(f{i}*f{j})*f{j}^-1 Appell recursion"), &back, n_max);
            for (k, h) in sets.iter().enumerate() {
                let left = star(f, &star(g, h)?)?;
                let right = star(&fg, h)?;
                check_sets(&mut report, &format!("f{i}*(f{j}*f{k}) = (f{i}*f{j})*f{k}"), &left, &right, n_max);
            }
        }
    }
    Ok(report)
}

/// Matrix route against the determining-series route, including `f * I = f`
/// in the matrix route. For `u` outside `{0, 1}` the routes are expected to
/// disagree; the report records the first counterexample.
pub fn route_agreement_check(sets: &[AppellSet], n_max: usize) -> Result<VerificationReport> {
    let Some(first) = sets.first() else {
        return Ok(VerificationReport::new("star route agreement", n_max));
    };
    let ctx = first.ctx().clone();
    let mut report = VerificationReport::new("star route agreement", n_max).with_ctx(&ctx);
    let order = sets.iter().map(AppellSet::order).min().expect("nonempty");
    let id = identity_set(ctx, order)?;
    for (i, f) in sets.iter().enumerate() {
        check_pair(first, f)?;
        check_sets(&mut report, &format!("matrix f{i}*I = f{i}"), &set_star(f, &id, StarRoute::Matrix)?, f, n_max);
        for (j, g) in sets.iter().enumerate() {
            let m = set_star(f, g, StarRoute::Matrix)?;
            let d = set_star(f, g, StarRoute::Detfun)?;
            check_sets(&mut report, &format!("f{i}*f{j} matrix vs detfun"), &m, &d, n_max);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appell::{named_family, FamilyKind};
    use crate::qcore::QContext;

    fn ctx(q: &str, u: &str) -> Ctx {
        QContext::new(q.parse().unwrap(), u.parse().unwrap()).unwrap()
    }

    fn set(kind: FamilyKind, c: &Ctx) -> AppellSet {
        AppellSet::new(named_family(kind, 1, 8, c.clone()).unwrap()).unwrap()
    }

    #[test]
    fn add_and_scale() {
        let c = ctx("1/2", "1/3");
        let (b, e) = (set(FamilyKind::Bernoulli, &c), set(FamilyKind::Euler, &c));
        let s = set_add(&b, &e).unwrap();
        assert!(s.is_consistent());
        for n in 0..=6 {
            assert_eq!(*s.component(n), b.component(n) + e.component(n));
        }
        let ff = set_add(&b, &b).unwrap();
        assert_eq!(ff.family().determining(), &b.family().determining().scale(&Rational::from_int(2)));
        let neg = set_scale(&b, &Rational::from_int(-1)).unwrap();
        assert_eq!(set_add(&b, &neg).unwrap_err(), Error::Degeneracy);
    }

    #[test]
    fn star_inverse_identity() {
        let c = ctx("1/2", "1/3");
        let (b, e) = (set(FamilyKind::Bernoulli, &c), set(FamilyKind::Euler, &c));
        let be = set_star(&b, &e, StarRoute::Detfun).unwrap();
        let prod = b.family().determining().mul(e.family().determining()).unwrap();
        assert_eq!(be.family().determining(), &prod);
        let id = identity_set(c.clone(), 8).unwrap();
        assert_eq!(set_star(&b, &set_inverse(&b).unwrap(), StarRoute::Detfun).unwrap(), id);
        assert_eq!(set_inverse(&id).unwrap(), id);
        let denom = crate::appell::bernoulli_denominator(c.clone(), 8).unwrap();
        assert_eq!(set_inverse(&b).unwrap().family().determining(), &denom);
        let g = named_family(FamilyKind::Genocchi, 1, 8, c.clone()).unwrap();
        assert_eq!(AppellSet::new(g).unwrap_err(), Error::DegenerateFamily("Appell sets need a_0 != 0"));
        let u0 = named_family(FamilyKind::Euler, 1, 4, ctx("1/2", "0")).unwrap();
        assert!(matches!(AppellSet::new(u0), Err(Error::DeformationZero(_))));
    }

    #[test]
    fn identity_at_u_one_is_monomials() {
        let id = identity_set(ctx("2/3", "1"), 5).unwrap();
        for n in 0..=5u32 {
            assert_eq!(*id.component(n as usize), MultiPoly::var(Var::X).pow(n));
        }
    }

    #[test]
    fn laws() {
        let c = ctx("1/2", "1/3");
        let b = set(FamilyKind::Bernoulli, &c);
        let e = set(FamilyKind::Euler, &c);
        let bi = set_inverse(&b).unwrap();
        let rep = group_laws_check(&[b.clone(), e.clone(), bi.clone()], 6).unwrap();
        assert!(rep.pass, "{:?}", rep.first_failure);
        assert!(group_laws_check(&[identity_set(c.clone(), 6).unwrap()], 6).unwrap().pass);
    }

    #[test]
    fn routes_agree_only_at_u_one() {
        let c1 = ctx("1/2", "1");
        let sets = [set(FamilyKind::Bernoulli, &c1), set(FamilyKind::Euler, &c1)];
        assert!(route_agreement_check(&sets, 8).unwrap().pass);
        let c = ctx("1/2", "1/3");
        let sets = [set(FamilyKind::Bernoulli, &c), set(FamilyKind::Euler, &c)];
        let rep = route_agreement_check(&sets, 8).unwrap();
        assert!(!rep.pass);
        let m = set_star(&sets[0], &sets[1], StarRoute::Matrix).unwrap();
        assert!(!m.is_consistent());
    }
}
