use super::{int, raising_factorial, Rational, TruncatedSeries};
use crate::arith::factorial;

/// `2F1[a, b; c; z]` truncated after `z^order`, as a series in `z`.
///
/// Only `c >= 1` is accepted so that no `(c)_i` vanishes.
pub fn gauss_2f1_truncated(a: i64, b: i64, c: i64, order: u32) -> TruncatedSeries<Rational> {
    assert!(c >= 1, "2F1 lower parameter must be >= 1");
    let mut s = TruncatedSeries::zero(&["z"], order);
    for i in 0..=order as usize {
        let num = raising_factorial(&int(a), i) * raising_factorial(&int(b), i);
        let den = raising_factorial(&int(c), i) * Rational::from_integer(factorial(i));
        s.set(vec![i as u32], num / den);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn one_one_two() {
        let s = gauss_2f1_truncated(1, 1, 2, 2);
        assert_eq!(s.univariate_coefficients(), vec![int(1), rat(1, 2), rat(1, 3)]);
        for i in 0..=8u32 {
            let s = gauss_2f1_truncated(1, 1, 2, 8);
            assert_eq!(s.coefficient(&[i]), rat(1, i as i64 + 1));
        }
    }

    #[test]
    fn order_zero_is_one() {
        assert_eq!(gauss_2f1_truncated(3, 5, 2, 0).univariate_coefficients(), vec![int(1)]);
    }
}
