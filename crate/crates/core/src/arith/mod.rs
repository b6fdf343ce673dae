//! Exact scalar, polynomial and truncated-series arithmetic.
//!
//! Everything in the crate is computed over [`Rational`]. Polynomial-like
//! types implement [`Coefficient`] so that factorials, binomials and
//! truncated series can be written once and reused over every ring.

mod hypergeometric;
mod linalg;
mod series;
mod unipoly;
mod xpoly;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use hypergeometric::gauss_2f1_truncated;
pub use linalg::solve_linear;
pub use series::TruncatedSeries;
pub use unipoly::UniPoly;
pub use xpoly::XPolynomial;

use crate::error::{Error, Result};

/// Arbitrary precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num/den` as a [`Rational`]. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(Error::Parse(s.to_string()));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(t.parse().map_err(|_| Error::Parse(s.to_string()))?),
    };
    Ok(parsed)
}

/// Parses a comma separated list of rationals, e.g. `"1,2,1/2"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Lossy conversion used only for reporting.
pub fn to_f64(r: &Rational) -> f64 {
    // Scale down huge operands so the division stays finite.
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    if shift > 0 {
        n >>= shift;
        d >>= shift;
        if d.is_zero() {
            return if n.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
    }
    let to = |b: &BigInt| b.to_string().parse::<f64>().unwrap_or(f64::NAN);
    to(&n) / to(&d)
}

/// Serializes a [`Rational`] as `"p/q"` (or `"p"`).
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// `r^e` for a possibly negative exponent. Panics on `0^negative`.
pub fn rat_pow(r: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// A commutative ring with rational scalars.
///
/// `Rational`, [`UniPoly`] and [`XPolynomial`] implement it; it is the
/// coefficient ring of [`TruncatedSeries`].
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Multiplicative inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn add_rational(&self, r: &Rational) -> Self {
        self.add(&Self::from_rational(r))
    }

    fn is_ring_one(&self) -> bool {
        *self == Self::ring_one()
    }
}

impl Coefficient for Rational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `x (x+1) ... (x+n-1)`; the empty product for `n = 0`.
pub fn raising_factorial<C: Coefficient>(x: &C, n: usize) -> C {
    (0..n).fold(C::ring_one(), |acc, i| acc.mul(&x.add_rational(&int(i as i64))))
}

/// `x (x-1) ... (x-n+1)`; the empty product for `n = 0`.
pub fn lowering_factorial<C: Coefficient>(x: &C, n: usize) -> C {
    (0..n).fold(C::ring_one(), |acc, i| acc.mul(&x.add_rational(&int(-(i as i64)))))
}

/// The polynomial binomial `[x]_n / n!`, valid for any `x` in the ring.
pub fn binomial<C: Coefficient>(x: &C, n: usize) -> C {
    lowering_factorial(x, n).scale(&Rational::from_integer(factorial(n)).recip())
}

/// Polynomial binomial at a rational point with an integer lower index;
/// a negative lower index gives 0.
pub fn binomial_rat(x: &Rational, n: i64) -> Rational {
    if n < 0 {
        Rational::zero()
    } else {
        binomial(x, n as usize)
    }
}

/// Polynomial binomial `C(top, n)` for integer `top` of either sign.
pub fn binomial_int(top: i64, n: i64) -> Rational {
    binomial_rat(&int(top), n)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Ordinary binomial coefficient for nonnegative arguments; 0 when `k > n`.
pub fn choose(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Binomial with signed integer arguments where a negative `k` or `k > n >= 0` is 0.
/// Negative `n` is not expected by callers and returns 0.
pub fn choose_signed(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        BigInt::zero()
    } else {
        choose(n as u64, k as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_examples() {
        assert_eq!(raising_factorial(&int(7), 0), int(1));
        assert_eq!(raising_factorial(&int(2), 3), int(24));
        assert_eq!(lowering_factorial(&int(5), 2), int(20));
        assert_eq!(lowering_factorial(&rat(1, 2), 2), rat(-1, 4));
        let x = UniPoly::x();
        assert_eq!(raising_factorial(&x, 2), UniPoly::from_ints(&[0, 1, 1]));
        assert_eq!(lowering_factorial(&x, 0), UniPoly::ring_one());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(&int(9), 0), int(1));
        assert_eq!(binomial(&int(4), 2), int(6));
        assert_eq!(binomial(&int(-1), 3), int(-1));
        assert_eq!(binomial_int(-1, 0), int(1));
        assert_eq!(binomial_int(3, -1), int(0));
        assert_eq!(choose(5, 7), BigInt::zero());
        assert_eq!(choose(10, 3), BigInt::from(120));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("2/-4").unwrap().to_string(), "-1/2");
        assert_eq!(int(3).to_string(), "3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(parse_rational_list("1,2,1/2").unwrap().len(), 3);
    }

    #[test]
    fn pascal_rule_as_polynomials() {
        let x = UniPoly::x();
        let xm1 = x.add_rational(&int(-1));
        for n in 1..=8 {
            let lhs = binomial(&x, n);
            let rhs = binomial(&xm1, n).add(&binomial(&xm1, n - 1));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn to_f64_is_close() {
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(to_f64(&int(-2)), -2.0);
    }
}
