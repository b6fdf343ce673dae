use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Coefficient, Rational};
use crate::partitions::Partition;

/// Polynomial in `X_0, X_1, X_2, ...` with rational coefficients.
///
/// A monomial `X_0^e * X_{mu_1} X_{mu_2} ...` is keyed by `(e, mu)` where
/// `mu` is a partition listing the indices `>= 1` with repetition.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct XPolynomial {
    terms: BTreeMap<(u32, Partition), Rational>,
}

impl XPolynomial {
    /// The indeterminate `X_i` (`i = 0` is `X_0`).
    pub fn var(i: u32) -> Self {
        let key = if i == 0 {
            (1, Partition::empty())
        } else {
            (0, Partition::new_unchecked(vec![i]))
        };
        Self::from_term(key, Rational::one())
    }

    pub fn from_term(key: (u32, Partition), c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        XPolynomial { terms }
    }

    /// `sum_mu c_mu X_mu` with no `X_0` factor.
    pub fn from_partition_terms<'a>(items: impl IntoIterator<Item = (&'a Partition, &'a Rational)>) -> Self {
        let mut out = Self::default();
        for (mu, c) in items {
            out.add_term((0, mu.clone()), c.clone());
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(u32, Partition), Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (u32, Partition), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Substitutes `X_0 -> x0` and `X_i -> xs(i)` in an arbitrary ring.
    pub fn evaluate<C: Coefficient>(&self, x0: &C, xs: &dyn Fn(u32) -> C) -> C {
        let mut acc = C::ring_zero();
        for ((e0, mu), c) in &self.terms {
            let mut m = C::from_rational(c);
            for _ in 0..*e0 {
                m = m.mul(x0);
            }
            for &i in mu.parts() {
                m = m.mul(&xs(i));
            }
            acc = acc.add(&m);
        }
        acc
    }

    /// Replaces every `X_i` (including `X_0`) by `-X_i`.
    pub fn negate_variables(&self) -> Self {
        let mut out = Self::default();
        for ((e0, mu), c) in &self.terms {
            let deg = *e0 as usize + mu.len();
            let c = if deg % 2 == 1 { -c } else { c.clone() };
            out.add_term((*e0, mu.clone()), c);
        }
        out
    }
}

impl Coefficient for XPolynomial {
    fn ring_zero() -> Self {
        Self::default()
    }

    fn ring_one() -> Self {
        Self::from_term((0, Partition::empty()), Rational::one())
    }

    fn is_ring_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_rational(r: &Rational) -> Self {
        Self::from_term((0, Partition::empty()), r.clone())
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        XPolynomial {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for ((e1, m1), c1) in &self.terms {
            for ((e2, m2), c2) in &other.terms {
                out.add_term((e1 + e2, m1.union(m2)), c1 * c2);
            }
        }
        out
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::default();
        }
        XPolynomial {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * r)).collect(),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        match self.terms.iter().next() {
            Some(((0, mu), c)) if self.terms.len() == 1 && mu.is_empty() => Some(Self::from_rational(&c.recip())),
            _ => None,
        }
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((e0, mu), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if *e0 > 0 {
                write!(f, "*X0^{e0}")?;
            }
            for i in mu.parts() {
                write!(f, "*X{i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn products_merge_partitions() {
        let x0 = XPolynomial::var(0);
        let x2 = XPolynomial::var(2);
        let x1 = XPolynomial::var(1);
        let p = x0.add(&x2).mul(&x1.add(&x2));
        assert_eq!(p.len(), 4);
        let key = (0, Partition::new_unchecked(vec![2, 2]));
        assert_eq!(p.terms()[&key], int(1));
        let val = p.evaluate(&int(3), &|i| int(i as i64 * 10));
        assert_eq!(val, int((3 + 20) * (10 + 20)));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x3 = XPolynomial::var(3);
        assert!(x3.sub(&x3).is_ring_zero());
        assert!(x3.scale(&rat(0, 1)).is_ring_zero());
    }

    #[test]
    fn negation_flips_odd_degrees() {
        let p = XPolynomial::var(0).mul(&XPolynomial::var(1)).add(&XPolynomial::var(4));
        let q = p.negate_variables();
        let v = |i: u32| int(i as i64 + 2);
        assert_eq!(q.evaluate(&int(5), &v), p.evaluate(&int(-5), &|i| -v(i)));
    }
}
