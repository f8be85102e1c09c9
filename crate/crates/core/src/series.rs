//! Truncated formal power series in `t` (and in the pair `t, s`) with
//! [`MultiPoly`] coefficients.
//!
//! Coefficients are stored in divided-power form: `coeffs[n]` multiplies
//! `t^n / [n]_q!`. Multiplication therefore carries q-binomial weights,
//!
//! ```text
//! (A * B)_n = sum_k [n k]_q A_k B_{n-k},
//! ```
//!
//! and reading off the n-th polynomial of a generating function is a plain
//! index lookup. Binary operations truncate to the smaller operand order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::MultiPoly;
use crate::qcore::{Ctx, Rational};

#[derive(Clone, Debug)]
pub struct TruncSeries {
    coeffs: Vec<MultiPoly>,
    ctx: Ctx,
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_params(&other.ctx) && self.coeffs == other.coeffs
    }
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    order: usize,
    coeffs: &'a [MultiPoly],
}

impl Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { order: self.order(), coeffs: &self.coeffs }.serialize(s)
    }
}

fn check_ctx(a: &Ctx, b: &Ctx) -> Result<()> {
    if a.same_params(b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

impl TruncSeries {
    /// Series with the given divided-power coefficients; order is `len - 1`.
    pub fn new(ctx: Ctx, coeffs: Vec<MultiPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        TruncSeries { coeffs, ctx }
    }

    pub fn zero(ctx: Ctx, order: usize) -> Self {
        TruncSeries::new(ctx, vec![MultiPoly::zero(); order + 1])
    }

    pub fn one(ctx: Ctx, order: usize) -> Self {
        TruncSeries::constant(ctx, MultiPoly::one(), order)
    }

    pub fn constant(ctx: Ctx, c: MultiPoly, order: usize) -> Self {
        let mut s = TruncSeries::zero(ctx, order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_scalars(ctx: Ctx, coeffs: &[Rational]) -> Self {
        TruncSeries::new(ctx, coeffs.iter().cloned().map(MultiPoly::constant).collect())
    }

    /// From ordinary coefficients (`c_n` multiplies `t^n`), padded with zeros
    /// or truncated to `order`.
    pub fn from_ordinary(ctx: Ctx, ordinary: &[MultiPoly], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|n| match ordinary.get(n) {
                Some(c) => c.scale(&ctx.q_factorial(n)),
                None => MultiPoly::zero(),
            })
            .collect();
        TruncSeries::new(ctx, coeffs)
    }

    /// `c * t^i / [i]_q!`.
    pub fn divided_monomial(ctx: Ctx, i: usize, c: MultiPoly, order: usize) -> Self {
        let mut s = TruncSeries::zero(ctx, order);
        if i <= order {
            s.coeffs[i] = c;
        }
        s
    }

    /// `(c t; q)_k = prod_{j<k} (1 - q^j c t)`.
    pub fn pochhammer(ctx: Ctx, c: &MultiPoly, k: usize, order: usize) -> Self {
        let mut ordinary = vec![MultiPoly::one()];
        let mut qj = Rational::one();
        for _ in 0..k {
            let factor = c.scale(&-&qj);
            let mut next = vec![MultiPoly::zero(); ordinary.len() + 1];
            for (d, p) in ordinary.iter().enumerate() {
                next[d] = &next[d] + p;
                next[d + 1] = &next[d + 1] + &(p * &factor);
            }
            ordinary = next;
            qj *= ctx.q();
        }
        TruncSeries::from_ordinary(ctx, &ordinary, order)
    }

    /// `sum_n u0^C(n,2) c^n t^n/[n]_q!`; at `u0 = 0` this is `1 + c t`.
    pub fn deformed_exp(ctx: Ctx, c: &MultiPoly, u0: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut power = MultiPoly::one();
        for n in 0..=order {
            let weight = u0.pow(crate::qcore::binom2(n as i64) as u32);
            coeffs.push(power.scale(&weight));
            if n < order {
                power = &power * c;
            }
        }
        TruncSeries::new(ctx, coeffs)
    }

    /// `e_q(c t)`.
    pub fn exp_q(ctx: Ctx, c: &MultiPoly, order: usize) -> Self {
        TruncSeries::deformed_exp(ctx, c, &Rational::one(), order)
    }

    /// `E_q(c t)`.
    pub fn big_exp_q(ctx: Ctx, c: &MultiPoly, order: usize) -> Self {
        let q = ctx.q().clone();
        TruncSeries::deformed_exp(ctx, c, &q, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Coefficients as rationals when every coefficient is variable-free.
    pub fn scalar_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(MultiPoly::as_scalar).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncSeries::new(self.ctx.clone(), self.coeffs[..=order].to_vec())
    }

    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        TruncSeries::new(self.ctx.clone(), self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_ctx(&self.ctx, &other.ctx)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect();
        Ok(TruncSeries::new(self.ctx.clone(), coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        self.map_coeffs(|c| c * p)
    }

    /// Cauchy product with q-binomial weights.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_ctx(&self.ctx, &other.ctx)?;
        let order = self.order().min(other.order());
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let row = self.ctx.q_binomial_row(n);
            let mut acc = MultiPoly::zero();
            for (k, weight) in row.iter().enumerate() {
                let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc + &(a * b).scale(weight);
            }
            coeffs.push(acc);
        }
        Ok(TruncSeries::new(self.ctx.clone(), coeffs))
    }

    /// Multiplicative inverse by triangular recursion.
    pub fn inv(&self) -> Result<Self> {
        let a0 = self.coeffs[0].as_scalar().ok_or(Error::NonScalarCoefficients)?;
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_a0 = a0.recip()?;
        let mut out: Vec<MultiPoly> = vec![MultiPoly::constant(inv_a0.clone())];
        for n in 1..=self.order() {
            let row = self.ctx.q_binomial_row(n);
            let mut acc = MultiPoly::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if a.is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = acc + &(a * &out[n - k]).scale(&row[k]);
            }
            out.push(acc.scale(&-&inv_a0));
        }
        Ok(TruncSeries::new(self.ctx.clone(), out))
    }

    /// Integer power; negative exponents go through [`TruncSeries::inv`].
    pub fn ipow(&self, alpha: i64) -> Result<Self> {
        if alpha < 0 {
            return self.inv()?.ipow(-alpha);
        }
        let mut acc = TruncSeries::one(self.ctx.clone(), self.order());
        for _ in 0..alpha {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `n`-th coefficient is `A_{n+k}`; the order drops to `N - k`.
    pub fn shifted(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::IndexOutOfRange { index: k, order: self.order() });
        }
        Ok(TruncSeries::new(self.ctx.clone(), self.coeffs[k..].to_vec()))
    }

    /// Substitutes `t -> m t`: coefficient `n` is multiplied by `m^n`.
    pub fn subst_t(&self, m: &MultiPoly) -> Self {
        let mut power = MultiPoly::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                power = &power * m;
            }
            coeffs.push(c * &power);
        }
        TruncSeries::new(self.ctx.clone(), coeffs)
    }

    /// Multiplies by `c t^i / [i]_q!`. The result is known to order `N + i`
    /// (capped at `cap`), since every term gained a factor `t^i`.
    pub fn raise(&self, i: usize, c: &MultiPoly, cap: usize) -> Self {
        let order = (self.order() + i).min(cap);
        let coeffs = (0..=order)
            .map(|m| {
                if m < i {
                    MultiPoly::zero()
                } else {
                    (&self.coeffs[m - i] * c).scale(&self.ctx.q_binomial(m, i as i64))
                }
            })
            .collect();
        TruncSeries::new(self.ctx.clone(), coeffs)
    }

    /// Index of the first coefficient (up to the common order) where the
    /// two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&n| self.coeffs[n] != other.coeffs[n])
    }
}

pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    a.mul(b)
}

pub fn series_inv(a: &TruncSeries) -> Result<TruncSeries> {
    a.inv()
}

pub fn series_ipow(a: &TruncSeries, alpha: i64) -> Result<TruncSeries> {
    a.ipow(alpha)
}

pub fn deformed_exp(c: &MultiPoly, u0: &Rational, order: usize, ctx: Ctx) -> TruncSeries {
    TruncSeries::deformed_exp(ctx, c, u0, order)
}

pub fn shifted_determining(a: &TruncSeries, k: usize) -> Result<TruncSeries> {
    a.shifted(k)
}

/// Double series on the triangle `n + m <= N`; entry `(n, m)` multiplies
/// `t^n s^m / ([n]_q! [m]_q!)`.
#[derive(Clone, Debug)]
pub struct BiTruncSeries {
    order: usize,
    // rows[n][m] for m <= order - n
    rows: Vec<Vec<MultiPoly>>,
    ctx: Ctx,
}

impl PartialEq for BiTruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_params(&other.ctx) && self.order == other.order && self.rows == other.rows
    }
}

impl BiTruncSeries {
    pub fn zero(ctx: Ctx, order: usize) -> Self {
        let rows = (0..=order).map(|n| vec![MultiPoly::zero(); order - n + 1]).collect();
        BiTruncSeries { order, rows, ctx }
    }

    pub fn one(ctx: Ctx, order: usize) -> Self {
        BiTruncSeries::unit(ctx, 0, 0, MultiPoly::one(), order)
    }

    /// `c t^n s^m / ([n]_q! [m]_q!)`.
    pub fn unit(ctx: Ctx, n: usize, m: usize, c: MultiPoly, order: usize) -> Self {
        let mut s = BiTruncSeries::zero(ctx, order);
        if n + m <= order {
            s.rows[n][m] = c;
        }
        s
    }

    pub fn from_fn(ctx: Ctx, order: usize, f: impl Fn(usize, usize) -> MultiPoly) -> Self {
        let rows = (0..=order).map(|n| (0..=order - n).map(|m| f(n, m)).collect()).collect();
        BiTruncSeries { order, rows, ctx }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeff(&self, n: usize, m: usize) -> &MultiPoly {
        &self.rows[n][m]
    }

    /// Places `A_n B_m` at `(n, m)`; `A` is read in `t`, `B` in `s`.
    pub fn outer(a: &TruncSeries, b: &TruncSeries) -> Result<Self> {
        check_ctx(a.ctx(), b.ctx())?;
        let order = a.order().min(b.order());
        Ok(BiTruncSeries::from_fn(a.ctx().clone(), order, |n, m| a.coeff(n) * b.coeff(m)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_ctx(&self.ctx, &other.ctx)?;
        let order = self.order.min(other.order);
        Ok(BiTruncSeries::from_fn(self.ctx.clone(), order, |n, m| &self.rows[n][m] + &other.rows[n][m]))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        BiTruncSeries::from_fn(self.ctx.clone(), self.order, |n, m| &self.rows[n][m] * p)
    }

    /// Convolution with `[n k]_q [m j]_q` weights on the triangle.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_ctx(&self.ctx, &other.ctx)?;
        let order = self.order.min(other.order);
        let rows_b: Vec<Vec<Rational>> = (0..=order).map(|n| self.ctx.q_binomial_row(n)).collect();
        Ok(BiTruncSeries::from_fn(self.ctx.clone(), order, |n, m| {
            let mut acc = MultiPoly::zero();
            for k in 0..=n {
                for j in 0..=m {
                    let (a, b) = (&self.rows[k][j], &other.rows[n - k][m - j]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let weight = &rows_b[n][k] * &rows_b[m][j];
                    acc = acc + &(a * b).scale(&weight);
                }
            }
            acc
        }))
    }

    pub fn first_mismatch(&self, other: &Self) -> Option<(usize, usize)> {
        let order = self.order.min(other.order);
        (0..=order)
            .flat_map(|n| (0..=order - n).map(move |m| (n, m)))
            .find(|&(n, m)| self.rows[n][m] != other.rows[n][m])
    }
}

pub fn bi_outer(a: &TruncSeries, b: &TruncSeries) -> Result<BiTruncSeries> {
    BiTruncSeries::outer(a, b)
}

pub fn bi_mul(p: &BiTruncSeries, q: &BiTruncSeries) -> Result<BiTruncSeries> {
    p.mul(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Var;
    use crate::qcore::QContext;
    use proptest::prelude::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ctx(q: &str, u: &str) -> Ctx {
        QContext::new(r(q), r(u)).unwrap()
    }

    fn e_q(c: &Ctx, n: usize) -> TruncSeries {
        TruncSeries::exp_q(c.clone(), &MultiPoly::one(), n)
    }

    #[test]
    fn mul_identity_and_order_rule() {
        let c = ctx("1/2", "1/3");
        let b = e_q(&c, 6);
        assert_eq!(TruncSeries::one(c.clone(), 6).mul(&b).unwrap(), b);
        let a = TruncSeries::one(c.clone(), 4);
        assert_eq!(a.mul(&b).unwrap().order(), 4);
    }

    #[test]
    fn mul_of_exponentials_matches_direct_convolution() {
        let c = ctx("2/3", "1");
        let e = e_q(&c, 7);
        let sq = e.mul(&e).unwrap();
        // oracle: coefficient of t^n/[n]! in the ordinary-coefficient product,
        // computed with explicit q-factorial divisions
        for n in 0..=7 {
            let mut ordinary = Rational::zero();
            for k in 0..=n {
                ordinary += &(c.q_factorial(k) * c.q_factorial(n - k)).recip().unwrap();
            }
            let expected = ordinary * c.q_factorial(n);
            let sum_binom: Rational = (0..=n).map(|k| c.q_binomial(n, k as i64)).sum();
            assert_eq!(expected, sum_binom);
            assert_eq!(sq.coeff(n).as_scalar().unwrap(), expected);
        }
    }

    #[test]
    fn context_mismatch() {
        let a = TruncSeries::one(ctx("1/2", "1"), 3);
        let b = TruncSeries::one(ctx("1/3", "1"), 3);
        assert_eq!(a.mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn inverse_examples() {
        let c = ctx("1/2", "1/3");
        let one = TruncSeries::one(c.clone(), 5);
        assert_eq!(one.inv().unwrap(), one);
        let e = e_q(&c, 8);
        assert_eq!(e.inv().unwrap().mul(&e).unwrap(), TruncSeries::one(c.clone(), 8));
        // 2t / (e_q(t) + 1)
        let ep1 = e.add(&TruncSeries::one(c.clone(), 8)).unwrap();
        let two_t = TruncSeries::divided_monomial(c.clone(), 1, MultiPoly::constant(r("2")), 8);
        let genocchi = two_t.mul(&ep1.inv().unwrap()).unwrap();
        assert_eq!(genocchi.inv(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn ipow_examples() {
        let c = ctx("2", "1/2");
        let e = e_q(&c, 6);
        assert_eq!(e.ipow(0).unwrap(), TruncSeries::one(c.clone(), 6));
        assert_eq!(e.ipow(1).unwrap(), e);
        assert_eq!(e.ipow(2).unwrap(), e.mul(&e).unwrap());
    }

    #[test]
    fn deformed_exp_examples() {
        let c = ctx("2/3", "1/2");
        let z = MultiPoly::var(Var::Z);
        let at_zero = TruncSeries::deformed_exp(c.clone(), &z, &Rational::zero(), 5);
        assert_eq!(*at_zero.coeff(0), MultiPoly::one());
        assert_eq!(*at_zero.coeff(1), z);
        assert!((2..=5).all(|n| at_zero.coeff(n).is_zero()));
        let classical = TruncSeries::exp_q(c.clone(), &z, 6);
        let big = TruncSeries::big_exp_q(c.clone(), &z, 6);
        for n in 0..=6u32 {
            assert_eq!(*classical.coeff(n as usize), z.pow(n));
            let w = c.q().pow(crate::qcore::binom2(n as i64) as u32);
            assert_eq!(*big.coeff(n as usize), z.pow(n).scale(&w));
        }
    }

    #[test]
    fn rogers_ramanujan_specialization() {
        // e_q(qz, q^2): the t^n/[n]! coefficient is q^{n^2} z^n since 2 C(n,2) + n = n^2
        let c = ctx("2/3", "1");
        let q = c.q().clone();
        let qz = MultiPoly::var(Var::Z).scale(&q);
        let s = TruncSeries::deformed_exp(c.clone(), &qz, &q.pow(2), 10);
        for n in 0..=10u32 {
            assert_eq!(*s.coeff(n as usize), MultiPoly::var(Var::Z).pow(n).scale(&q.pow(n * n)));
        }
    }

    #[test]
    fn exton_specialization_at_rational_root() {
        // q = 1/4, u = sqrt(q) = 1/2: coefficient q^{C(n,2)/2} z^n
        let c = ctx("1/4", "1/2");
        let z = MultiPoly::var(Var::Z);
        let s = TruncSeries::deformed_exp(c.clone(), &z, c.u(), 8);
        for n in 0..=8u32 {
            let half = crate::qcore::binom2(n as i64) as u32;
            // q^{C(n,2)/2} = (1/2)^{C(n,2)}
            assert_eq!(*s.coeff(n as usize), z.pow(n).scale(&r("1/2").pow(half)));
        }
    }

    #[test]
    fn shifted_examples() {
        let c = ctx("1/2", "1");
        let e = e_q(&c, 6);
        assert_eq!(e.shifted(0).unwrap(), e);
        for k in 0..=6 {
            assert_eq!(e.shifted(k).unwrap(), e_q(&c, 6 - k));
        }
        let one = TruncSeries::one(c.clone(), 6);
        let s = one.shifted(2).unwrap();
        assert!(s.coeffs().iter().all(MultiPoly::is_zero));
        assert!(matches!(one.shifted(7), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn bi_outer_and_mul() {
        let c = ctx("1/2", "1/3");
        let one = TruncSeries::one(c.clone(), 4);
        assert_eq!(BiTruncSeries::outer(&one, &one).unwrap(), BiTruncSeries::one(c.clone(), 4));
        let z = MultiPoly::var(Var::Z);
        let ez = TruncSeries::exp_q(c.clone(), &z, 5);
        let p = BiTruncSeries::outer(&ez, &ez).unwrap();
        for n in 0..=5 {
            for m in 0..=5 - n {
                assert_eq!(*p.coeff(n, m), z.pow((n + m) as u32));
            }
        }
        assert_eq!(p.mul(&BiTruncSeries::one(c.clone(), 5)).unwrap(), p);
        // outer is multiplicative: (A(t)B(s)) (C(t)D(s)) = (AC)(t)(BD)(s)
        let e = e_q(&c, 5);
        let lhs = p.mul(&BiTruncSeries::outer(&e, &e).unwrap()).unwrap();
        let ez_e = ez.mul(&e).unwrap();
        assert_eq!(lhs, BiTruncSeries::outer(&ez_e, &ez_e).unwrap());
    }

    #[test]
    fn pochhammer_series_matches_product() {
        let c = ctx("2", "1");
        let a = r("1/3");
        // at t = 1 (ordinary coefficients summed) we recover (a;q)_k
        for k in 0..5 {
            let s = TruncSeries::pochhammer(c.clone(), &MultiPoly::constant(a.clone()), k, 8);
            let total: Rational = (0..=8)
                .map(|n| s.coeff(n).as_scalar().unwrap() / c.q_factorial(n))
                .sum();
            assert_eq!(total, c.q_pochhammer(&a, k));
        }
    }

    #[test]
    fn raise_extends_order() {
        let c = ctx("1/2", "1");
        let e = e_q(&c, 6);
        let shifted = e.shifted(2).unwrap();
        let raised = shifted.raise(2, &MultiPoly::one(), 6);
        assert_eq!(raised.order(), 6);
        let t2 = TruncSeries::divided_monomial(c.clone(), 2, MultiPoly::one(), 6);
        assert_eq!(raised.truncate(4), shifted.mul(&t2).unwrap());
    }

    fn arb_series(order: usize) -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d)), order + 1)
    }

    fn arb_ctx() -> impl Strategy<Value = Ctx> {
        prop_oneof![Just("1/2"), Just("2/3"), Just("1"), Just("3"), Just("0")]
            .prop_map(|q| QContext::new(q.parse().unwrap(), Rational::one()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mul_commutative_associative(a in arb_series(8), b in arb_series(8), d in arb_series(8), c in arb_ctx()) {
            let (a, b, d) = (
                TruncSeries::from_scalars(c.clone(), &a),
                TruncSeries::from_scalars(c.clone(), &b),
                TruncSeries::from_scalars(c.clone(), &d),
            );
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&d).unwrap(), a.mul(&b.mul(&d).unwrap()).unwrap());
        }

        #[test]
        fn inv_is_involution(mut a in arb_series(8), c in arb_ctx()) {
            if a[0].is_zero() { a[0] = Rational::one(); }
            let s = TruncSeries::from_scalars(c.clone(), &a);
            let inv = s.inv().unwrap();
            prop_assert_eq!(inv.inv().unwrap(), s.clone());
            prop_assert_eq!(s.mul(&inv).unwrap(), TruncSeries::one(c, 8));
        }

        #[test]
        fn ipow_adds_exponents(mut a in arb_series(6), al in -2i64..=3, be in -2i64..=3, c in arb_ctx()) {
            if a[0].is_zero() { a[0] = Rational::new(3, 2); }
            let s = TruncSeries::from_scalars(c, &a);
            let lhs = s.ipow(al + be).unwrap();
            let rhs = s.ipow(al).unwrap().mul(&s.ipow(be).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
