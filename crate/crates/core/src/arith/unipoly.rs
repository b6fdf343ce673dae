use std::fmt;

use num_traits::Zero;

use super::{int, Coefficient, Rational};

/// Dense univariate polynomial over [`Rational`]; `coeffs[i]` is the
/// coefficient of `x^i`. The highest stored coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }
}

impl Coefficient for UniPoly {
    fn ring_zero() -> Self {
        UniPoly::default()
    }

    fn ring_one() -> Self {
        Self::from_ints(&[1])
    }

    fn is_ring_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn from_rational(r: &Rational) -> Self {
        Self::constant(r.clone())
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_ring_zero() || other.is_ring_zero() {
            return Self::ring_zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    fn unit_inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => Some(Self::constant(c.recip())),
            _ => None,
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn normalizes_trailing_zeros() {
        let p = UniPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(UniPoly::from_ints(&[0, 0]).degree(), None);
        let q = p.add(&p.neg());
        assert!(q.is_ring_zero());
    }

    #[test]
    fn mul_and_eval() {
        let p = UniPoly::from_ints(&[1, 1]);
        let sq = p.mul(&p);
        assert_eq!(sq, UniPoly::from_ints(&[1, 2, 1]));
        assert_eq!(sq.eval(&rat(1, 2)), rat(9, 4));
        assert_eq!(sq.to_string(), "(1)*x^2 + (2)*x + 1");
    }

    #[test]
    fn only_constants_are_units() {
        assert!(UniPoly::x().unit_inverse().is_none());
        assert_eq!(
            UniPoly::constant(rat(2, 3)).unit_inverse(),
            Some(UniPoly::constant(rat(3, 2)))
        );
    }
}
