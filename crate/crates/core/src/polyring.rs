//! Sparse multivariate polynomials over [`Rational`] in the fixed variables
//! `x, y, z, w, a`, and the Jackson q-derivative acting on them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{QContext, Rational};

pub const NVARS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    W = 3,
    A = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::W, Var::A];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::W => "w",
            Var::A => "a",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense exponent vector over `(x, y, z, w, a)`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `a`, `w`, `z`, `y`, `x` in turn, so that `x < y < z < w < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, power: u32) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = power;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn with_exp(&self, v: Var, power: u32) -> Monomial {
        let mut e = self.0;
        e[v.index()] = power;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with no stored zero coefficients; zero is the empty map.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: [u32; NVARS],
    c: Rational,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(m, c)| TermJson { e: m.0, c: c.clone() }))
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        Ok(MultiPoly::from_terms(terms.into_iter().map(|t| (Monomial(t.e), t.c))))
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MultiPoly::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// `c * v^power`.
    pub fn var_pow(c: Rational, v: Var, power: u32) -> Self {
        MultiPoly::term(c, Monomial::var(v, power))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    /// The value if the polynomial is free of every variable.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn max_var_degree(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.0).max().unwrap_or(0)
    }

    pub fn is_free_of(&self, v: Var) -> bool {
        self.terms.keys().all(|m| m.exp(v) == 0)
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, c: &Rational, mono: &Monomial) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `v` by `factor * v`.
    pub fn subst_scale(&self, v: Var, factor: &Rational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, c * factor.pow(m.exp(v)))))
    }

    /// Replaces `v` by the constant `value`.
    pub fn specialize(&self, v: Var, value: &Rational) -> MultiPoly {
        MultiPoly::from_terms(
            self.terms.iter().map(|(m, c)| (m.with_exp(v, 0), c * value.pow(m.exp(v)))),
        )
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn compose(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = MultiPoly::term(c.clone(), m.with_exp(v, 0));
            out = out + &(&rest * &powers[e]);
        }
        out
    }

    /// Renames variable `from` to `to`; `to` must not already occur.
    pub fn rename(&self, from: Var, to: Var) -> MultiPoly {
        debug_assert!(from == to || self.is_free_of(to));
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(from);
            (m.with_exp(from, 0).with_exp(to, e), c.clone())
        }))
    }

    /// Jackson q-derivative in `v`: `v^k m -> [k]_q v^(k-1) m`.
    pub fn q_derive(&self, v: Var, ctx: &QContext) -> MultiPoly {
        self.q_derive_k(v, 1, ctx)
    }

    /// `k`-fold Jackson derivative: `v^n m -> [n]_q!/[n-k]_q! v^(n-k) m`.
    pub fn q_derive_k(&self, v: Var, k: usize, ctx: &QContext) -> MultiPoly {
        if k == 0 {
            return self.clone();
        }
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(v) as usize;
            (e >= k).then(|| (m.with_exp(v, (e - k) as u32), c * ctx.q_falling(e, k)))
        }))
    }

    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    let value = point.get(&v).ok_or(Error::MissingAssignment(v))?;
                    t *= &value.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest term first reads more naturally
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = Var::ALL
                .iter()
                .filter(|v| m.exp(**v) > 0)
                .map(|v| match m.exp(*v) {
                    1 => v.name().to_string(),
                    e => format!("{}^{}", v.name(), e),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Add<&MultiPoly> for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: &MultiPoly) -> MultiPoly {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
        self
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self + &rhs
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

pub fn poly_add(p: &MultiPoly, r: &MultiPoly) -> MultiPoly {
    p + r
}

pub fn poly_sub(p: &MultiPoly, r: &MultiPoly) -> MultiPoly {
    p - r
}

pub fn poly_mul(p: &MultiPoly, r: &MultiPoly) -> MultiPoly {
    p * r
}

pub fn poly_scale(p: &MultiPoly, c: &Rational) -> MultiPoly {
    p.scale(c)
}

pub fn q_derive(p: &MultiPoly, v: Var, ctx: &QContext) -> MultiPoly {
    p.q_derive(v, ctx)
}

pub fn q_derive_k(p: &MultiPoly, v: Var, k: usize, ctx: &QContext) -> MultiPoly {
    p.q_derive_k(v, k, ctx)
}

pub fn subst_scale(p: &MultiPoly, v: Var, factor: &Rational) -> MultiPoly {
    p.subst_scale(v, factor)
}

pub fn poly_eval(p: &MultiPoly, point: &BTreeMap<Var, Rational>) -> Result<Rational> {
    p.eval(point)
}

/// Quotient-form Jackson derivative `(f(v) - f(qv)) / ((1-q) v)`, computed
/// by exact division of the numerator by `v`. Test oracle; needs `q != 1`.
pub fn q_derive_quotient(p: &MultiPoly, v: Var, ctx: &QContext) -> Result<MultiPoly> {
    ctx.require_q_not_one("quotient-form q-derivative")?;
    let numerator = p - &p.subst_scale(v, ctx.q());
    let scale = (Rational::one() - ctx.q()).recip()?;
    let mut out = MultiPoly::zero();
    for (m, c) in numerator.terms() {
        let e = m.exp(v);
        // the v^0 part cancels in the numerator
        assert!(e > 0, "numerator not divisible by {v}");
        out.add_term(m.with_exp(v, e - 1), &(c * &scale));
    }
    Ok(out)
}

/// One term of the q-Leibniz expansion, with `D^(n-k)` applied to the
/// composed function `g(q^k v)`:
/// `q^(k(k-n)) [n k]_q D^k f * D^(n-k) { g(q^k v) }`.
pub fn leibniz_rhs(f: &MultiPoly, g: &MultiPoly, v: Var, n: usize, ctx: &QContext) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero();
    for k in 0..=n {
        let ki = k as i64;
        let weight = ctx.q_pow(ki * (ki - n as i64))? * ctx.q_binomial(n, ki);
        let g_shift = g.subst_scale(v, &ctx.q().pow(k as u32));
        let term = &f.q_derive_k(v, k, ctx) * &g_shift.q_derive_k(v, n - k, ctx);
        out = out + &term.scale(&weight);
    }
    Ok(out)
}
