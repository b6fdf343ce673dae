//! Integer partitions, their statistics and the alpha-content alphabet.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{int, Rational};
use crate::error::{Error, Result};

/// A weakly decreasing finite sequence of positive integers.
///
/// Ordered as plain part lists so that it can key ordered maps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub(crate) fn new_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(Partition::new(parts.clone()).is_ok());
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// The one-column partition `1^n`.
    pub fn column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `lambda_i` with 1-based `i`; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        i.checked_sub(1).and_then(|j| self.parts.get(j)).copied().unwrap_or(0)
    }

    /// `m_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let take_self = j >= other.parts.len() || (i < self.parts.len() && self.parts[i] >= other.parts[j]);
            if take_self {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Partition { parts }
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// 1-based rows `i` in `1..=len+1` where a cell can be added.
    pub fn addable_corners(&self) -> Vec<usize> {
        (1..=self.len() + 1)
            .filter(|&i| i == 1 || self.part(i - 1) > self.part(i))
            .collect()
    }

    /// 1-based rows `i` in `1..=len` where the last cell can be removed.
    pub fn removable_corners(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.part(i) > self.part(i + 1)).collect()
    }

    /// `lambda^(i)`: one cell added in row `i`, if that is a partition.
    pub fn add_cell(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.len() + 1 || (row > 1 && self.part(row - 1) == self.part(row)) {
            return None;
        }
        let mut parts = self.parts.clone();
        if row == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Some(Partition { parts })
    }

    /// `lambda_(i)`: one cell removed from row `i`, if that is a partition.
    pub fn remove_cell(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.len() || self.part(row) == self.part(row + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[row - 1] -= 1;
        if parts[row - 1] == 0 {
            parts.pop();
        }
        Some(Partition { parts })
    }

    /// Cells `(i, j)`, 1-based, in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i as u32 + 1, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"3,2,2,1"`; the empty partition is `""` or `"0"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|_| Error::InvalidPartition(s.to_string()))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            cur.push(first);
            rec(rest - first, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight `0..=n_max`, by weight then reverse lex.
pub fn partitions_up_to(n_max: u32) -> Vec<Partition> {
    (0..=n_max).flat_map(enumerate_partitions).collect()
}

/// `z_mu = prod_i i^{m_i} m_i!`.
pub fn z_of(mu: &Partition) -> Rational {
    let mut acc = BigInt::one();
    for (i, m) in mu.multiplicities() {
        acc *= BigInt::from(i).pow(m as u32) * crate::arith::factorial(m);
    }
    Rational::from_integer(acc)
}

/// The multiset of alpha-contents `j - 1 - (i - 1)/alpha` of a diagram,
/// one per cell in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct ContentAlphabet {
    pub alpha: Rational,
    pub contents: Vec<Rational>,
}

pub fn content_alphabet(la: &Partition, alpha: &Rational) -> Result<ContentAlphabet> {
    check_alpha(alpha)?;
    let inv = alpha.recip();
    let contents = la
        .cells()
        .map(|(i, j)| int(j as i64 - 1) - int(i as i64 - 1) * &inv)
        .collect();
    Ok(ContentAlphabet {
        alpha: alpha.clone(),
        contents,
    })
}

pub(crate) fn check_alpha(alpha: &Rational) -> Result<()> {
    if *alpha <= Rational::zero() {
        Err(Error::NonPositiveAlpha)
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
        v.sort();
        v
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(8).len(), 22);
        assert_eq!(enumerate_partitions(4)[0], p("4"));
        assert_eq!(enumerate_partitions(4)[4], p("1,1,1,1"));
    }

    #[test]
    fn counts_match_euler_recurrence() {
        // p(n) = sum_k (-1)^{k+1} [p(n - k(3k-1)/2) + p(n - k(3k+1)/2)]
        let mut pn = vec![1i64];
        for n in 1..=30i64 {
            let mut s = 0;
            for k in 1..=n {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 <= n {
                    s += sign * pn[(n - g1) as usize];
                }
                if g2 <= n {
                    s += sign * pn[(n - g2) as usize];
                }
            }
            pn.push(s);
            assert_eq!(enumerate_partitions(n as u32).len() as i64, s, "p({n})");
        }
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_of(&p("2,1")), int(2));
        assert_eq!(z_of(&p("1,1,1")), int(6));
        assert_eq!(z_of(&Partition::empty()), int(1));
        assert_eq!(z_of(&p("2,2,1")), int(8));
    }

    #[test]
    fn multiplicity_identities() {
        for n in 0..=10 {
            for mu in enumerate_partitions(n) {
                let m = mu.multiplicities();
                assert_eq!(m.iter().map(|(_, k)| k).sum::<usize>(), mu.len());
                assert_eq!(m.iter().map(|(i, k)| *i as usize * k).sum::<usize>(), n as usize);
            }
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 0..=8 {
            for la in enumerate_partitions(n) {
                assert_eq!(la.conjugate().conjugate(), la);
            }
        }
    }

    #[test]
    fn corners() {
        assert_eq!(Partition::empty().addable_corners(), vec![1]);
        assert!(Partition::empty().removable_corners().is_empty());
        assert_eq!(p("2,2").addable_corners(), vec![1, 3]);
        assert_eq!(p("2,2").removable_corners(), vec![2]);
        assert_eq!(p("3,1").addable_corners(), vec![1, 2, 3]);
        assert_eq!(p("3,1").removable_corners(), vec![1, 2]);
        assert_eq!(p("3,1").add_cell(2), Some(p("3,2")));
        assert_eq!(p("2,2").add_cell(2), None);
        assert_eq!(p("2,1").remove_cell(2), Some(p("2")));
        assert_eq!(p("2,2").remove_cell(1), None);
    }

    #[test]
    fn parsing() {
        assert_eq!(p("0"), Partition::empty());
        assert_eq!(p(""), Partition::empty());
        assert_eq!(p(" 3, 2,2,1 ").to_string(), "3,2,2,1");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn content_examples() {
        let a = content_alphabet(&p("2,2"), &int(1)).unwrap();
        assert_eq!(sorted(a.contents), sorted(vec![int(0), int(1), int(-1), int(0)]));
        let a = content_alphabet(&p("2,2"), &int(2)).unwrap();
        assert_eq!(sorted(a.contents), sorted(vec![int(0), int(1), rat(-1, 2), rat(1, 2)]));
        assert_eq!(content_alphabet(&p("1"), &rat(3, 7)).unwrap().contents, vec![int(0)]);
        assert_eq!(content_alphabet(&p("1"), &int(0)), Err(Error::NonPositiveAlpha));
    }

    #[test]
    fn content_duality() {
        for alpha in [int(1), int(2), rat(1, 2), rat(3, 5)] {
            for n in 0..=8 {
                for la in enumerate_partitions(n) {
                    let a = content_alphabet(&la, &alpha).unwrap().contents;
                    assert_eq!(a.len(), n as usize);
                    let b = content_alphabet(&la.conjugate(), &alpha.recip()).unwrap().contents;
                    let scaled: Vec<Rational> = a.iter().map(|c| -&alpha * c).collect();
                    assert_eq!(sorted(b), sorted(scaled));
                }
            }
        }
    }
}
