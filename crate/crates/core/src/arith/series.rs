//! Multivariate formal power series truncated by total degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::{int, Coefficient, Rational};
use crate::error::{Error, Result};

/// Power series in an ordered set of variables with every term of total
/// degree above `order` discarded. Absent exponent vectors are zero.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<C: Coefficient = Rational> {
    variables: Vec<String>,
    order: u32,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(variables: &[&str], order: u32) -> Self {
        TruncatedSeries {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variables: &[&str], order: u32, c: C) -> Self {
        let mut s = Self::zero(variables, order);
        let n = s.variables.len();
        s.set(vec![0; n], c);
        s
    }

    pub fn one(variables: &[&str], order: u32) -> Self {
        Self::constant(variables, order, C::ring_one())
    }

    /// The `index`-th variable as a series.
    pub fn variable(variables: &[&str], order: u32, index: usize) -> Self {
        let mut e = vec![0; variables.len()];
        e[index] = 1;
        Self::monomial(variables, order, e, C::ring_one())
    }

    pub fn monomial(variables: &[&str], order: u32, exponents: Vec<u32>, c: C) -> Self {
        let mut s = Self::zero(variables, order);
        assert_eq!(exponents.len(), s.variables.len(), "exponent arity");
        s.set(exponents, c);
        s
    }

    /// Same shape (variables and order) as `self`, with no terms.
    pub fn zero_like(&self) -> Self {
        TruncatedSeries {
            variables: self.variables.clone(),
            order: self.order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one_like(&self) -> Self {
        let mut s = self.zero_like();
        s.set(vec![0; self.variables.len()], C::ring_one());
        s
    }

    pub fn constant_like(&self, c: C) -> Self {
        let mut s = self.zero_like();
        s.set(vec![0; self.variables.len()], c);
        s
    }

    pub fn monomial_like(&self, exponents: Vec<u32>, c: C) -> Self {
        let mut s = self.zero_like();
        s.set(exponents, c);
        s
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn coefficient(&self, exponents: &[u32]) -> C {
        self.terms.get(exponents).cloned().unwrap_or_else(C::ring_zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&vec![0; self.variables.len()])
    }

    /// Stores `c` at `exponents`; silently dropped above the order.
    pub fn set(&mut self, exponents: Vec<u32>, c: C) {
        if exponents.iter().sum::<u32>() > self.order {
            return;
        }
        if c.is_ring_zero() {
            self.terms.remove(&exponents);
        } else {
            self.terms.insert(exponents, c);
        }
    }

    fn accumulate(&mut self, exponents: Vec<u32>, c: C) {
        if c.is_ring_zero() || exponents.iter().sum::<u32>() > self.order {
            return;
        }
        match self.terms.get_mut(&exponents) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_ring_zero() {
                    self.terms.remove(&exponents);
                }
            }
            None => {
                self.terms.insert(exponents, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.variables, other.variables, "series variable sets differ");
        assert_eq!(self.order, other.order, "series orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            variables: self.variables.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<u32>() > self.order {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.accumulate(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.scale_by(&C::from_rational(r))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        let mut out = self.zero_like();
        for (e, v) in &self.terms {
            out.accumulate(e.clone(), v.mul(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Evaluates `sum_j coeffs[j] * self^j` with Horner's rule.
    /// `self` should have zero constant term for the truncation to be exact.
    pub fn compose_into(&self, coeffs: &[C]) -> Self {
        let mut acc = self.zero_like();
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&self.constant_like(c.clone()));
        }
        acc
    }

    fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&vec![0; self.variables.len()]);
        out
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_ring_zero() {
            return Err(Error::NonZeroConstant);
        }
        let coeffs: Vec<C> = (0..=self.order)
            .scan(Rational::one(), |fact, j| {
                if j > 0 {
                    *fact *= int(j as i64);
                }
                Some(C::from_rational(&fact.recip()))
            })
            .collect();
        Ok(self.compose_into(&coeffs))
    }

    /// `log(self)`; the constant term must be exactly 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_ring_zero() {
            return Err(Error::NonUnitSeries);
        }
        if !c0.is_ring_one() {
            return Err(Error::LogConstantNotOne);
        }
        let tail = self.without_constant();
        let coeffs: Vec<C> = (0..=self.order)
            .map(|j| match j {
                0 => C::ring_zero(),
                _ => {
                    let sign = if j % 2 == 1 { 1 } else { -1 };
                    C::from_rational(&super::rat(sign, j as i64))
                }
            })
            .collect();
        Ok(tail.compose_into(&coeffs))
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.constant_term().unit_inverse().ok_or(Error::NonUnitSeries)?;
        // 1/(c0 (1 + t)) = c0^{-1} sum (-t)^j with t = tail / c0
        let t = self.without_constant().scale_by(&inv0);
        let coeffs: Vec<C> = (0..=self.order)
            .map(|j| if j % 2 == 0 { C::ring_one() } else { C::ring_one().neg() })
            .collect();
        Ok(t.compose_into(&coeffs).scale_by(&inv0))
    }

    /// Maps every coefficient through `f`, keeping the shape.
    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        let mut out = TruncatedSeries {
            variables: self.variables.clone(),
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.set(e.clone(), f(c));
        }
        out
    }

    /// Coefficient of each power of a univariate series, `0..=order`.
    pub fn univariate_coefficients(&self) -> Vec<C> {
        assert_eq!(self.variables.len(), 1, "not univariate");
        (0..=self.order).map(|i| self.coefficient(&[i])).collect()
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, k) in self.variables.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    type S = TruncatedSeries<Rational>;

    #[test]
    fn exp_of_zero_is_one() {
        let z = S::zero(&["a"], 5);
        assert_eq!(z.exp().unwrap(), S::one(&["a"], 5));
    }

    #[test]
    fn geometric_inverse() {
        let a = S::variable(&["a"], 3, 0);
        let one_minus_a = a.one_like().sub(&a);
        let inv = one_minus_a.inverse().unwrap();
        assert_eq!(inv.univariate_coefficients(), vec![int(1); 4]);
    }

    #[test]
    fn log_one_minus_a() {
        let a = S::variable(&["a"], 3, 0);
        let l = a.one_like().sub(&a).log().unwrap();
        assert_eq!(
            l.univariate_coefficients(),
            vec![int(0), int(-1), rat(-1, 2), rat(-1, 3)]
        );
    }

    #[test]
    fn non_unit_errors() {
        let a = S::variable(&["a"], 3, 0);
        assert!(matches!(a.inverse(), Err(Error::NonUnitSeries)));
        assert!(matches!(a.log(), Err(Error::NonUnitSeries)));
        assert!(matches!(a.one_like().exp(), Err(Error::NonZeroConstant)));
        let two = a.constant_like(int(2));
        assert!(matches!(two.log(), Err(Error::LogConstantNotOne)));
        assert_eq!(two.inverse().unwrap(), a.constant_like(rat(1, 2)));
    }

    #[test]
    fn multiplication_truncates_by_total_degree() {
        let vars = ["u", "v"];
        let u = S::variable(&vars, 2, 0);
        let v = S::variable(&vars, 2, 1);
        let p = u.add(&v).pow(3);
        assert!(p.terms().is_empty());
        let q = u.add(&v).pow(2);
        assert_eq!(q.coefficient(&[1, 1]), int(2));
    }
}
