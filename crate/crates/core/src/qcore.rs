//! Exact rational scalars and the q-arithmetic primitives.
//!
//! [`Rational`] is the only scalar type in the crate. [`QContext`] fixes a
//! pair `(q, u)` and memoizes q-numbers, q-factorials and q-binomials for it.
//! Every q-number is computed as the power sum `1 + q + ... + q^(n-1)`, so
//! `q = 1` is a legal parameter for everything that does not divide by
//! `1 - q`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(value: BigRational) -> Self {
        Rational(value)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &other.0))
    }

    /// Nonnegative power with `0^0 = 1`.
    pub fn pow(&self, exp: u32) -> Self {
        if exp == 0 {
            return Rational::one();
        }
        Rational(num_traits::pow::pow(self.0.clone(), exp as usize))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(u32::try_from(exp).expect("exponent overflow")))
        } else {
            let exp = u32::try_from(-exp).expect("exponent overflow");
            Ok(self.recip()?.pow(exp))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional sign; decimals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not a rational of the form p or p/q"));
        let parse_int = |t: &str| -> Result<BigInt> {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("`{s}` has a zero denominator")));
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on division by zero, like the underlying type; use `checked_div` when
// the divisor is data-dependent.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// `n choose 2` for any integer `n`.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

#[derive(Default)]
struct Memo {
    numbers: Vec<Rational>,
    factorials: Vec<Rational>,
    // binomials[n][k] for 0 <= k <= n
    binomials: Vec<Vec<Rational>>,
}

/// The parameters `(q, u)` with memo tables for q-numbers, q-factorials and
/// q-binomials. Tables grow on demand behind a lock; readers always see
/// values identical to a fresh recomputation.
pub struct QContext {
    q: Rational,
    u: Rational,
    memo: RwLock<Memo>,
}

pub type Ctx = Arc<QContext>;

impl fmt::Debug for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QContext").field("q", &self.q).field("u", &self.u).finish()
    }
}

impl QContext {
    /// Builds a context. `q = -1` is rejected: `[2]_q` would vanish and the
    /// divided-power normalization `t^n/[n]_q!` breaks down.
    pub fn new(q: Rational, u: Rational) -> Result<Ctx> {
        if q == Rational::from_int(-1) {
            return Err(Error::DegenerateQ(q.to_string()));
        }
        Ok(Arc::new(QContext { q, u, memo: RwLock::new(Memo::default()) }))
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    /// Same `q`, different deformation parameter.
    pub fn with_u(&self, u: Rational) -> Ctx {
        Arc::new(QContext { q: self.q.clone(), u, memo: RwLock::new(Memo::default()) })
    }

    pub fn same_params(&self, other: &QContext) -> bool {
        std::ptr::eq(self, other) || (self.q == other.q && self.u == other.u)
    }

    pub fn require_q_not_one(&self, op: &'static str) -> Result<()> {
        if self.q.is_one() {
            Err(Error::QIsOne(op))
        } else {
            Ok(())
        }
    }

    pub fn require_u_nonzero(&self, op: &'static str) -> Result<()> {
        if self.u.is_zero() {
            Err(Error::DeformationZero(op))
        } else {
            Ok(())
        }
    }

    fn ensure(&self, n: usize) {
        if self.memo.read().expect("memo lock").numbers.len() > n {
            return;
        }
        let mut memo = self.memo.write().expect("memo lock");
        while memo.numbers.len() <= n {
            let m = memo.numbers.len();
            let number = if m == 0 {
                Rational::zero()
            } else {
                // [m] = 1 + q [m-1]
                Rational::one() + &self.q * &memo.numbers[m - 1]
            };
            let factorial = if m == 0 { Rational::one() } else { &memo.factorials[m - 1] * &number };
            let row = if m == 0 {
                vec![Rational::one()]
            } else {
                let prev = &memo.binomials[m - 1];
                let mut row = Vec::with_capacity(m + 1);
                row.push(Rational::one());
                let mut qk = Rational::one();
                for k in 1..m {
                    qk *= &self.q;
                    row.push(&prev[k - 1] + &qk * &prev[k]);
                }
                row.push(Rational::one());
                row
            };
            memo.numbers.push(number);
            memo.factorials.push(factorial);
            memo.binomials.push(row);
        }
    }

    pub fn q_number(&self, n: usize) -> Rational {
        self.ensure(n);
        self.memo.read().expect("memo lock").numbers[n].clone()
    }

    pub fn q_factorial(&self, n: usize) -> Rational {
        self.ensure(n);
        self.memo.read().expect("memo lock").factorials[n].clone()
    }

    /// Gaussian binomial; zero outside `0 <= k <= n`.
    pub fn q_binomial(&self, n: usize, k: i64) -> Rational {
        if k < 0 || k as usize > n {
            return Rational::zero();
        }
        self.ensure(n);
        self.memo.read().expect("memo lock").binomials[n][k as usize].clone()
    }

    /// Row `[n 0]_q .. [n n]_q`, cloned once for use in convolutions.
    pub fn q_binomial_row(&self, n: usize) -> Vec<Rational> {
        self.ensure(n);
        self.memo.read().expect("memo lock").binomials[n].clone()
    }

    /// `[n]_q! / [n-k]_q!`, i.e. `[n][n-1]...[n-k+1]`; zero when `k > n`.
    pub fn q_falling(&self, n: usize, k: usize) -> Rational {
        if k > n {
            return Rational::zero();
        }
        self.ensure(n);
        let memo = self.memo.read().expect("memo lock");
        memo.numbers[n - k + 1..=n].iter().cloned().product()
    }

    pub fn q_pow(&self, e: i64) -> Result<Rational> {
        self.q.powi(e)
    }

    pub fn u_pow(&self, e: i64) -> Result<Rational> {
        if e < 0 && self.u.is_zero() {
            return Err(Error::DeformationZero("negative power of u"));
        }
        self.u.powi(e)
    }

    /// `u^C(n,2)` for `n >= 0`; always defined (the exponent is nonnegative).
    pub fn u_binom2(&self, n: usize) -> Rational {
        self.u.pow(binom2(n as i64) as u32)
    }

    /// `(a0; q)_n = prod_{k<n} (1 - q^k a0)`.
    pub fn q_pochhammer(&self, a0: &Rational, n: usize) -> Rational {
        let mut acc = Rational::one();
        let mut qk = Rational::one();
        for _ in 0..n {
            acc *= &(Rational::one() - &qk * a0);
            qk *= &self.q;
        }
        acc
    }
}

pub fn q_number(n: usize, ctx: &QContext) -> Rational {
    ctx.q_number(n)
}

pub fn q_factorial(n: usize, ctx: &QContext) -> Rational {
    ctx.q_factorial(n)
}

pub fn q_binomial(n: usize, k: i64, ctx: &QContext) -> Rational {
    ctx.q_binomial(n, k)
}

pub fn q_pochhammer(a0: &Rational, n: usize, ctx: &QContext) -> Rational {
    ctx.q_pochhammer(a0, n)
}

/// Unmemoized reference implementations. They share no code with the
/// context tables.
pub mod direct {
    use super::Rational;

    pub fn q_number(n: usize, q: &Rational) -> Rational {
        (0..n).map(|i| q.pow(i as u32)).sum()
    }

    pub fn q_factorial(n: usize, q: &Rational) -> Rational {
        (1..=n).map(|k| q_number(k, q)).product()
    }

    /// Ratio of q-factorials; requires the denominators to be nonzero.
    pub fn q_binomial(n: usize, k: i64, q: &Rational) -> Rational {
        if k < 0 || k as usize > n {
            return Rational::zero();
        }
        let k = k as usize;
        q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: &str) -> Ctx {
        QContext::new(q.parse().unwrap(), Rational::one()).unwrap()
    }

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn q_number_examples() {
        assert_eq!(ctx("5").q_number(0), Rational::zero());
        // 1 + 2 + 4
        assert_eq!(ctx("2").q_number(3), r("7"));
        assert_eq!(ctx("1").q_number(5), r("5"));
        assert_eq!(ctx("0").q_number(1), r("1"));
        assert_eq!(ctx("0").q_number(4), r("1"));
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(ctx("3").q_factorial(0), r("1"));
        // 1 * 3 * 7
        assert_eq!(ctx("2").q_factorial(3), r("21"));
        assert_eq!(ctx("1").q_factorial(4), r("24"));
    }

    #[test]
    fn q_binomial_examples() {
        let c = ctx("2");
        assert_eq!(c.q_binomial(7, 0), r("1"));
        // (q;q)_4 / ((q;q)_2 (q;q)_2) at q = 2: (-1)(-3)(-7)(-15) / ((-1)(-3))^2
        let oracle = c.q_pochhammer(&r("2"), 4)
            / (c.q_pochhammer(&r("2"), 2) * c.q_pochhammer(&r("2"), 2));
        assert_eq!(oracle, r("35"));
        assert_eq!(c.q_binomial(4, 2), r("35"));
        assert_eq!(c.q_binomial(5, 7), r("0"));
        assert_eq!(c.q_binomial(5, -1), r("0"));
    }

    #[test]
    fn q_pochhammer_examples() {
        let c = ctx("3");
        assert_eq!(c.q_pochhammer(&r("7/5"), 0), r("1"));
        assert_eq!(c.q_pochhammer(&r("1"), 3), r("0"));
        assert_eq!(c.q_pochhammer(&r("1/2"), 2), r("-1/4"));
    }

    #[test]
    fn binom2_identities() {
        assert_eq!(binom2(0), 0);
        assert_eq!(binom2(1), 0);
        assert_eq!(binom2(5), 10);
        assert_eq!(binom2(7), binom2(4) + binom2(3) + 12);
        assert_eq!(binom2(7), 21);
        for n in -6i64..10 {
            for k in -6i64..10 {
                assert_eq!(binom2(n + k), binom2(n) + binom2(k) + n * k);
                assert_eq!(binom2(n - k), binom2(n) + binom2(k) + k * (1 - n));
            }
        }
    }

    #[test]
    fn rational_format_and_parse() {
        assert_eq!(r("6/-4").to_string(), "-3/2");
        assert_eq!(r("-0/7").to_string(), "0");
        assert_eq!(r(" 3 ").to_string(), "3");
        assert!("1.5".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        let json = serde_json::to_string(&r("-1/4")).unwrap();
        assert_eq!(json, "\"-1/4\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r("-1/4"));
    }

    #[test]
    fn powers_and_zero() {
        assert_eq!(Rational::zero().pow(0), Rational::one());
        assert_eq!(r("2/3").powi(-2).unwrap(), r("9/4"));
        assert!(Rational::zero().powi(-1).is_err());
        let c = QContext::new(r("2"), Rational::zero()).unwrap();
        assert!(c.u_pow(-1).is_err());
        assert_eq!(c.u_binom2(1), Rational::one());
        assert_eq!(c.u_binom2(2), Rational::zero());
    }

    #[test]
    fn rejects_q_minus_one() {
        assert!(matches!(QContext::new(r("-1"), r("1")), Err(Error::DegenerateQ(_))));
    }

    #[test]
    fn falling_product() {
        let c = ctx("2");
        // [4][3] = 15 * 7
        assert_eq!(c.q_falling(4, 2), r("105"));
        assert_eq!(c.q_falling(2, 3), r("0"));
        assert_eq!(c.q_falling(5, 0), r("1"));
    }

    #[test]
    fn concurrent_readers_agree() {
        let c = ctx("2/3");
        let results: Vec<Rational> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..8)
                .map(|i| {
                    let c = &c;
                    s.spawn(move || c.q_binomial(12 + i % 3, 5))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (i, v) in results.iter().enumerate() {
            assert_eq!(*v, direct::q_binomial(12 + i % 3, 5, c.q()));
        }
    }
}
