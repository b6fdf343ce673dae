//! The integer families `<n,p>_k`, `<lambda>_k`, `<lambda,p>_k`, Stirling
//! numbers, and the generating series `G_n(y, z)`.
//!
//! `<n,p>_k` is computed from its defining sum. The partition versions are
//! built by convolving the one-row tables row by row in `(p, k)`, and are
//! cached per partition behind a read-write lock.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{choose, choose_signed, gauss_2f1_truncated, int, Rational, TruncatedSeries};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// `<n,p>_k = (n/k) sum_r C(p,r) C(n-p,r) C(n-r-1,k-r-1)` for
/// `1 <= k`, `0 <= p <= n`. Zero when `k > n`.
pub fn nbi(n: u32, p: i64, k: i64) -> Result<BigInt> {
    if p < 0 || p > n as i64 {
        return Err(Error::POutOfRange { p, n: n as i64 });
    }
    if k < 1 {
        return Err(Error::KOutOfRange(k));
    }
    Ok(nbi_unchecked(n as i64, p, k))
}

fn nbi_unchecked(n: i64, p: i64, k: i64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for r in 0..=p.min(n - p) {
        sum += choose_signed(p, r) * choose_signed(n - p, r) * choose_signed(n - r - 1, k - r - 1);
    }
    let num = sum * n;
    debug_assert!((&num % k).is_zero(), "<{n},{p}>_{k} is not an integer");
    num / k
}

/// Table of `<n,p>_k` for one `n`, indexed `[p][k]` with `k` from 0 (always 0).
#[derive(Clone, Debug, PartialEq)]
pub struct NbiTable {
    pub n: u32,
    entries: Vec<Vec<BigInt>>,
}

impl NbiTable {
    pub fn new(n: u32) -> Self {
        let entries = (0..=n as i64)
            .map(|p| {
                (0..=n as i64)
                    .map(|k| {
                        if k == 0 {
                            BigInt::zero()
                        } else {
                            nbi_unchecked(n as i64, p, k)
                        }
                    })
                    .collect()
            })
            .collect();
        NbiTable { n, entries }
    }

    pub fn get(&self, p: u32, k: u32) -> BigInt {
        self.entries
            .get(p as usize)
            .and_then(|row| row.get(k as usize))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Table of `<lambda,p>_k` for one partition, indexed `[p][k]`,
/// `0 <= p, k <= |lambda|`. The `k = 0` column is 1 only for the empty
/// partition at `p = 0`, which carries the `P_000 = 1` convention.
#[derive(Clone, Debug, PartialEq)]
pub struct NpbiTable {
    pub partition: Partition,
    entries: Vec<Vec<BigInt>>,
}

impl NpbiTable {
    fn build(la: &Partition) -> Self {
        let w = la.weight() as usize;
        let mut acc = vec![vec![BigInt::zero(); w + 1]; w + 1];
        acc[0][0] = BigInt::one();
        let (mut pmax, mut kmax) = (0usize, 0usize);
        for &part in la.parts() {
            let row = NbiTable::new(part);
            let part = part as usize;
            let mut next = vec![vec![BigInt::zero(); w + 1]; w + 1];
            for p in 0..=pmax {
                for k in 0..=kmax {
                    let a = &acc[p][k];
                    if a.is_zero() {
                        continue;
                    }
                    for pi in 0..=part {
                        for ki in 1..=part {
                            let b = row.get(pi as u32, ki as u32);
                            if !b.is_zero() {
                                next[p + pi][k + ki] += a * b;
                            }
                        }
                    }
                }
            }
            pmax += part;
            kmax += part;
            acc = next;
        }
        NpbiTable {
            partition: la.clone(),
            entries: acc,
        }
    }

    /// `<lambda,p>_k`; `p` outside `0..=|lambda|` is an error.
    pub fn get(&self, p: i64, k: i64) -> Result<BigInt> {
        let w = self.partition.weight() as i64;
        if p < 0 || p > w {
            return Err(Error::POutOfRange { p, n: w });
        }
        if k < 0 {
            return Err(Error::KOutOfRange(k));
        }
        Ok(self
            .entries
            .get(p as usize)
            .and_then(|row| row.get(k as usize))
            .cloned()
            .unwrap_or_else(BigInt::zero))
    }
}

fn npbi_cache() -> &'static RwLock<HashMap<Partition, Arc<NpbiTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<Partition, Arc<NpbiTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared immutable snapshot of the `<lambda,p>_k` table.
pub fn npbi_table(la: &Partition) -> Arc<NpbiTable> {
    if let Some(t) = npbi_cache().read().expect("npbi cache poisoned").get(la) {
        return Arc::clone(t);
    }
    let t = Arc::new(NpbiTable::build(la));
    npbi_cache()
        .write()
        .expect("npbi cache poisoned")
        .entry(la.clone())
        .or_insert(t)
        .clone()
}

/// `<lambda,p>_k` for `k >= 1`, `0 <= p <= |lambda|`.
pub fn npbi(la: &Partition, p: i64, k: i64) -> Result<BigInt> {
    if k < 1 {
        return Err(Error::KOutOfRange(k));
    }
    npbi_table(la).get(p, k)
}

/// `<lambda,p>_k` extended to `k = 0` (1 only for the empty partition at p = 0).
pub(crate) fn npbi_ext(la: &Partition, p: i64, k: i64) -> Result<BigInt> {
    npbi_table(la).get(p, k)
}

/// `<lambda>_k`: the number of `k`-subsets of cells meeting every row.
pub fn pbi(la: &Partition, k: i64) -> Result<BigInt> {
    if k < 1 {
        return Err(Error::KOutOfRange(k));
    }
    // coefficients of prod_i ((1+x)^{lambda_i} - 1)
    let mut acc = vec![BigInt::one()];
    for &part in la.parts() {
        let mut next = vec![BigInt::zero(); acc.len() + part as usize];
        for (i, a) in acc.iter().enumerate() {
            for j in 1..=part as u64 {
                next[i + j as usize] += a * choose(part as u64, j);
            }
        }
        acc = next;
    }
    Ok(acc.get(k as usize).cloned().unwrap_or_else(BigInt::zero))
}

/// Signed Stirling numbers of the first kind `s(n,k)`.
pub fn stirling_first(n: u32, k: u32) -> BigInt {
    let t = stirling_table(n, |n, k, prev| prev[k - 1].clone() - BigInt::from(n - 1) * &prev[k]);
    t[k.min(n + 1) as usize].clone()
}

/// `|s(n,k)|`, the coefficients of `(x)_n = sum_k |s(n,k)| x^k`.
pub fn stirling_first_unsigned(n: u32, k: u32) -> BigInt {
    let t = stirling_table(n, |n, k, prev| prev[k - 1].clone() + BigInt::from(n - 1) * &prev[k]);
    t[k.min(n + 1) as usize].clone()
}

/// Stirling numbers of the second kind `S(n,k)`.
pub fn stirling_second(n: u32, k: u32) -> BigInt {
    let t = stirling_table(n, |_, k, prev| prev[k - 1].clone() + BigInt::from(k) * &prev[k]);
    t[k.min(n + 1) as usize].clone()
}

/// `t(k,m)` with `x^k = sum_m t(k,m) [x]_m`: the inverse of the signed
/// first-kind matrix, i.e. Stirling numbers of the second kind.
pub fn stirling_inverse_t(k: u32, m: u32) -> BigInt {
    stirling_second(k, m)
}

/// Row `n` of a Stirling triangle with `len n+2` (last entry always 0).
fn stirling_table(n: u32, step: impl Fn(usize, usize, &[BigInt]) -> BigInt) -> Vec<BigInt> {
    let width = n as usize + 2;
    let mut row = vec![BigInt::zero(); width];
    row[0] = BigInt::one();
    for i in 1..=n as usize {
        let mut next = vec![BigInt::zero(); width];
        for (k, slot) in next.iter_mut().enumerate().take(i + 1).skip(1) {
            *slot = step(i, k, &row);
        }
        row = next;
    }
    row
}

/// `G_n(y, z)` written in `x = z/(1-z)`: `sum_{p,k} <n,p>_k y^p x^k`,
/// computed from `n z sum_p y^p 2F1[p+1, n-p+1; 2; z]` with `z = x/(1+x)`.
/// Variables are `["y", "x"]`, truncated at total degree `order`.
pub fn gn_series(n: u32, order: u32) -> TruncatedSeries<Rational> {
    let mut out = TruncatedSeries::zero(&["y", "x"], order);
    for p in 0..=n.min(order) {
        let xo = order - p;
        // z = x - x^2 + x^3 - ...
        let mut z = TruncatedSeries::zero(&["x"], xo);
        for i in 1..=xo {
            z.set(vec![i], int(if i % 2 == 1 { 1 } else { -1 }));
        }
        let f = gauss_2f1_truncated(p as i64 + 1, (n - p) as i64 + 1, 2, xo);
        let g = z
            .compose_into(&f.univariate_coefficients())
            .mul(&z)
            .scale(&int(n as i64));
        for (e, c) in g.terms() {
            out.set(vec![p, e[0]], c.clone());
        }
    }
    out
}

/// Closed form of `G_n` as a polynomial in `(y, x)`: `A^n + B^n - 1 - y^n`
/// where `A + B = (1+x)(1+y)` and `AB = y(1+x)`, via the power-sum
/// recurrence `P_j = (A+B) P_{j-1} - AB P_{j-2}`, `P_0 = 2`.
pub fn gn_closed_form(n: u32) -> TruncatedSeries<Rational> {
    let order = 2 * n.max(1);
    let vars = ["y", "x"];
    let one = TruncatedSeries::<Rational>::one(&vars, order);
    let y = TruncatedSeries::variable(&vars, order, 0);
    let x = TruncatedSeries::variable(&vars, order, 1);
    let sum = one.add(&x).mul(&one.add(&y));
    let prod = y.mul(&one.add(&x));
    let mut prev = one.scale(&int(2));
    let mut cur = sum.clone();
    if n == 0 {
        cur = prev.clone();
    }
    for _ in 1..n {
        let next = sum.mul(&cur).sub(&prod.mul(&prev));
        prev = cur;
        cur = next;
    }
    cur.sub(&one).sub(&y.pow(n))
}

/// `sum_{p,k} <n,p>_k y^p x^k` read directly off the defining sum.
pub fn gn_double_sum(n: u32) -> TruncatedSeries<Rational> {
    let order = 2 * n.max(1);
    let mut out = TruncatedSeries::zero(&["y", "x"], order);
    let t = NbiTable::new(n);
    for p in 0..=n {
        for k in 1..=n {
            out.set(vec![p, k], Rational::from_integer(t.get(p, k)));
        }
    }
    out
}

/// Which integer family a [`table_rows`] call lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Nbi,
    Pbi,
    Npbi,
}

/// One entry of a coefficient table. `p` is absent for `<lambda>_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub index: String,
    pub p: Option<u32>,
    pub k: u32,
    pub value: String,
}

/// Every entry of a family with `n` (or `|lambda|`) from 1 to `max`.
pub fn table_rows(family: Family, max: u32) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for n in 1..=max {
        match family {
            Family::Nbi => {
                let t = NbiTable::new(n);
                for p in 0..=n {
                    for k in 1..=n {
                        rows.push(TableRow {
                            index: n.to_string(),
                            p: Some(p),
                            k,
                            value: t.get(p, k).to_string(),
                        });
                    }
                }
            }
            Family::Pbi | Family::Npbi => {
                for la in enumerate_partitions(n) {
                    let t = npbi_table(&la);
                    let ps: Vec<u32> = if family == Family::Pbi {
                        vec![0]
                    } else {
                        (0..=n).collect()
                    };
                    for p in ps {
                        for k in la.len() as u32..=n {
                            let v = t.get(p as i64, k as i64).expect("p in range");
                            rows.push(TableRow {
                                index: la.to_string(),
                                p: (family == Family::Npbi).then_some(p),
                                k,
                                value: v.to_string(),
                            });
                        }
                    }
                }
            }
        }
    }
    rows
}
