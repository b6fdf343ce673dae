//! Symmetric functions of finite rational alphabets and the partition
//! indexed polynomials `P_npk(X)`.
//!
//! `P_npk` is stored once as an [`XPolynomial`] and then specialized. The
//! monomial expansions are fitted by evaluating on generic alphabets and
//! solving exactly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    binomial_int, int, serialize_rational, solve_linear, Rational, TruncatedSeries, UniPoly, XPolynomial,
};
use crate::coefficients::{npbi_ext, pbi};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, z_of, Partition};

/// A finite multiset of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet(Vec<Rational>);

impl Alphabet {
    pub fn new(elements: Vec<Rational>) -> Self {
        Alphabet(elements)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Alphabet(v.iter().map(|&a| int(a)).collect())
    }

    pub fn elements(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `p_k`; `p_0` is the cardinality.
    pub fn power_sum(&self, k: u32) -> Rational {
        self.0.iter().map(|a| crate::arith::rat_pow(a, k as i64)).sum()
    }

    /// `e_0 .. e_kmax`.
    pub fn elementary_all(&self, kmax: usize) -> Vec<Rational> {
        let mut e = vec![Rational::zero(); kmax + 1];
        e[0] = Rational::one();
        for a in &self.0 {
            for j in (1..=kmax).rev() {
                let d = a * &e[j - 1];
                e[j] += d;
            }
        }
        e
    }

    /// `h_0 .. h_kmax`.
    pub fn complete_all(&self, kmax: usize) -> Vec<Rational> {
        let mut h = vec![Rational::zero(); kmax + 1];
        h[0] = Rational::one();
        for a in &self.0 {
            for j in 1..=kmax {
                let d = a * &h[j - 1];
                h[j] += d;
            }
        }
        h
    }

    pub fn elementary(&self, k: usize) -> Rational {
        self.elementary_all(k)[k].clone()
    }

    pub fn complete(&self, k: usize) -> Rational {
        self.complete_all(k)[k].clone()
    }

    /// `p_mu = prod p_{mu_i}`.
    pub fn power_product(&self, mu: &Partition) -> Rational {
        mu.parts().iter().map(|&i| self.power_sum(i)).product()
    }

    /// `m_mu`: the sum of the distinct monomials whose exponents permute `mu`.
    pub fn monomial(&self, mu: &Partition) -> Rational {
        fn rec(elems: &[Rational], left: &mut Vec<(u32, usize)>, remaining: usize) -> Rational {
            if remaining == 0 {
                return Rational::one();
            }
            if elems.len() < remaining {
                return Rational::zero();
            }
            let (a, rest) = elems.split_first().expect("nonempty");
            // a gets exponent 0
            let mut total = rec(rest, left, remaining);
            for idx in 0..left.len() {
                if left[idx].1 == 0 {
                    continue;
                }
                left[idx].1 -= 1;
                let e = left[idx].0;
                total += crate::arith::rat_pow(a, e as i64) * rec(rest, left, remaining - 1);
                left[idx].1 += 1;
            }
            total
        }
        let mut left = mu.multiplicities();
        rec(&self.0, &mut left, mu.len())
    }
}

/// Both sides of the Cauchy formulas for `e_k` and `h_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyCheck {
    pub k: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub elementary: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub elementary_from_power_sums: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub complete: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub complete_from_power_sums: Rational,
}

impl CauchyCheck {
    pub fn holds(&self) -> bool {
        self.elementary == self.elementary_from_power_sums && self.complete == self.complete_from_power_sums
    }
}

/// `e_k = sum (-1)^{k-l(mu)} p_mu / z_mu` and `h_k = sum p_mu / z_mu`.
pub fn newton_convert(a: &Alphabet, k: u32) -> CauchyCheck {
    let mut e = Rational::zero();
    let mut h = Rational::zero();
    for mu in enumerate_partitions(k) {
        let term = a.power_product(&mu) / z_of(&mu);
        if (k as usize - mu.len()).is_multiple_of(2) {
            e += &term;
        } else {
            e -= &term;
        }
        h += term;
    }
    CauchyCheck {
        k,
        elementary: a.elementary(k as usize),
        elementary_from_power_sums: e,
        complete: a.complete(k as usize),
        complete_from_power_sums: h,
    }
}

/// `h_0 .. h_order` of the difference `A - B`, read off
/// `prod_b (1 - z b) / prod_a (1 - z a)`.
pub fn complete_of_difference(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); order + 1];
    c[0] = Rational::one();
    for x in b {
        for j in (1..=order).rev() {
            let d = x * &c[j - 1];
            c[j] -= d;
        }
    }
    for x in a {
        for j in 1..=order {
            let d = x * &c[j - 1];
            c[j] += d;
        }
    }
    c
}

/// `sum_{a in A} a^r prod_b (a - b) / prod_{c != a} (a - c)`.
/// Elements of `A` must be distinct.
pub fn lagrange_sum(a: &[Rational], b: &[Rational], r: u32) -> Result<Rational> {
    let mut total = Rational::zero();
    for (i, x) in a.iter().enumerate() {
        let mut num = crate::arith::rat_pow(x, r as i64);
        for y in b {
            num *= x - y;
        }
        let mut den = Rational::one();
        for (j, c) in a.iter().enumerate() {
            if j != i {
                den *= x - c;
            }
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero("repeated element in the first alphabet".into()));
        }
        total += num / den;
    }
    Ok(total)
}

/// The right-hand side `h_{|B|-|A|+r+1}(A - B)` of the interpolation sum.
pub fn lagrange_rhs(a: &[Rational], b: &[Rational], r: u32) -> Rational {
    let idx = b.len() as i64 - a.len() as i64 + r as i64 + 1;
    if idx < 0 {
        return Rational::zero();
    }
    complete_of_difference(a, b, idx as usize)[idx as usize].clone()
}

/// Values for `X_0, X_1, X_2, ...`.
#[derive(Clone)]
pub struct Specialization {
    pub x0: Rational,
    xs: Arc<dyn Fn(u32) -> Rational + Send + Sync>,
}

impl Specialization {
    pub fn new(x0: Rational, xs: impl Fn(u32) -> Rational + Send + Sync + 'static) -> Self {
        Specialization { x0, xs: Arc::new(xs) }
    }

    /// `X_i = values[i-1]`; indices past the end panic.
    pub fn from_values(x0: Rational, values: Vec<Rational>) -> Self {
        Self::new(x0, move |i| {
            values
                .get(i as usize - 1)
                .cloned()
                .unwrap_or_else(|| panic!("specialization has no value for X_{i}"))
        })
    }

    /// `X_0 = |A|`, `X_i = p_i(A)`.
    pub fn power_sums(a: &Alphabet) -> Self {
        let a = a.clone();
        Self::new(int(a.len() as i64), move |i| a.power_sum(i))
    }

    pub fn x(&self, i: u32) -> Rational {
        if i == 0 {
            self.x0.clone()
        } else {
            (self.xs)(i)
        }
    }

    /// `X_i -> -X_i` for every `i`.
    pub fn negated(&self) -> Self {
        let xs = Arc::clone(&self.xs);
        Specialization {
            x0: -&self.x0,
            xs: Arc::new(move |i| -xs(i)),
        }
    }

    pub fn evaluate(&self, poly: &XPolynomial) -> Rational {
        poly.evaluate(&self.x0, &|i| self.x(i))
    }
}

impl fmt::Debug for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Specialization")
            .field("x0", &self.x0)
            .finish_non_exhaustive()
    }
}

type PolyCache = RwLock<HashMap<(u32, u32, u32), Arc<XPolynomial>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `P_npk(X) = sum_{|mu|=n} <mu,p>_k / z_mu X_mu`, with `P_np0 = 0`
/// except `P_000 = 1`.
pub fn p_npk_xpoly(n: u32, p: i64, k: i64) -> Result<Arc<XPolynomial>> {
    if p < 0 || p > n as i64 {
        return Err(Error::POutOfRange { p, n: n as i64 });
    }
    if k < 0 {
        return Err(Error::KOutOfRange(k));
    }
    let key = (n, p as u32, k as u32);
    if let Some(poly) = poly_cache().read().expect("poly cache poisoned").get(&key) {
        return Ok(Arc::clone(poly));
    }
    let mut terms = Vec::new();
    for mu in enumerate_partitions(n) {
        let c = npbi_ext(&mu, p, k)?;
        if !c.is_zero() {
            terms.push((mu.clone(), Rational::from_integer(c) / z_of(&mu)));
        }
    }
    let poly = Arc::new(XPolynomial::from_partition_terms(terms.iter().map(|(m, c)| (m, c))));
    Ok(poly_cache()
        .write()
        .expect("poly cache poisoned")
        .entry(key)
        .or_insert(poly)
        .clone())
}

/// `P_nk = P_n0k`.
pub fn p_nk_xpoly(n: u32, k: i64) -> Result<Arc<XPolynomial>> {
    p_npk_xpoly(n, 0, k)
}

pub fn p_npk(n: u32, p: i64, k: i64, spec: &Specialization) -> Result<Rational> {
    Ok(spec.evaluate(p_npk_xpoly(n, p, k)?.as_ref()))
}

pub fn p_nk(n: u32, k: i64, spec: &Specialization) -> Result<Rational> {
    p_npk(n, 0, k, spec)
}

/// `P_npk` at `X_i = x` for all `i >= 1`, as a polynomial in `x`.
pub fn p_npk_all_equal(n: u32, p: i64, k: i64) -> Result<UniPoly> {
    let x = UniPoly::x();
    Ok(p_npk_xpoly(n, p, k)?.evaluate(&x, &|_| x.clone()))
}

const GENERIC_PRIMES: [i64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

fn generic_alphabet(rng: &mut ChaCha8Rng, size: usize) -> Alphabet {
    let picks: Vec<i64> = GENERIC_PRIMES.choose_multiple(rng, size).copied().collect();
    Alphabet(
        picks
            .into_iter()
            .map(|q| int(if rng.gen::<bool>() { q } else { -q }))
            .collect(),
    )
}

/// Expands a homogeneous `poly` of weight `n` in `X_1, X_2, ...`, read at
/// `X_i = p_i(A)`, in the monomial basis `{m_mu : |mu| = n}`.
///
/// The coefficients are fitted on `p(n)` generic alphabets of `size`
/// elements; a singular system is retried with fresh alphabets.
pub fn fit_monomial_expansion(
    poly: &XPolynomial,
    n: u32,
    size: usize,
    seed: u64,
) -> Result<BTreeMap<Partition, Rational>> {
    if size < n as usize {
        return Err(Error::AlphabetTooSmall(n as usize));
    }
    let basis = enumerate_partitions(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..16 {
        let alphabets: Vec<Alphabet> = (0..basis.len()).map(|_| generic_alphabet(&mut rng, size)).collect();
        let m: Vec<Vec<Rational>> = alphabets
            .iter()
            .map(|a| basis.iter().map(|mu| a.monomial(mu)).collect())
            .collect();
        let rhs: Vec<Rational> = alphabets
            .iter()
            .map(|a| Specialization::power_sums(a).evaluate(poly))
            .collect();
        if let Some(sol) = solve_linear(m, rhs) {
            return Ok(basis.into_iter().zip(sol).filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    Err(Error::SingularEvaluation)
}

/// The monomial expansion of `P_nk(-X)` and the expected
/// `(-1)^k sum_{|mu|=n, l(mu)=k} m_mu`, plus both sides on `A` itself.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialExpansion {
    pub n: u32,
    pub k: u32,
    pub fitted: BTreeMap<Partition, Rational>,
    pub expected: BTreeMap<Partition, Rational>,
    pub value_on_alphabet: Rational,
    pub expected_on_alphabet: Rational,
}

impl MonomialExpansion {
    pub fn holds(&self) -> bool {
        self.fitted == self.expected && self.value_on_alphabet == self.expected_on_alphabet
    }
}

/// Generic alphabets of the same size as `a` are used for the fit, so
/// `a` needs at least `n` elements.
pub fn p_nk_monomial_expansion(n: u32, k: u32, a: &Alphabet, seed: u64) -> Result<MonomialExpansion> {
    let poly = p_nk_xpoly(n, k as i64)?.negate_variables();
    let fitted = fit_monomial_expansion(&poly, n, a.len(), seed)?;
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let expected: BTreeMap<Partition, Rational> = enumerate_partitions(n)
        .into_iter()
        .filter(|mu| mu.len() == k as usize)
        .map(|mu| (mu, sign.clone()))
        .collect();
    let value_on_alphabet = Specialization::power_sums(a).evaluate(&poly);
    let expected_on_alphabet = expected.iter().map(|(mu, c)| c * a.monomial(mu)).sum();
    Ok(MonomialExpansion {
        n,
        k,
        fitted,
        expected,
        value_on_alphabet,
        expected_on_alphabet,
    })
}

/// Coefficient of `m_lambda` in `p_mu`: the number of ways to distribute the
/// parts of `mu` among the rows of `lambda` so that row sums match.
pub fn power_to_monomial(mu: &Partition, la: &Partition) -> Rational {
    fn rec(parts: &[u32], room: &mut [u32]) -> u64 {
        match parts.split_first() {
            None => room.iter().all(|&r| r == 0) as u64,
            Some((&first, rest)) => {
                let mut total = 0;
                for i in 0..room.len() {
                    if room[i] >= first {
                        room[i] -= first;
                        total += rec(rest, room);
                        room[i] += first;
                    }
                }
                total
            }
        }
    }
    if mu.weight() != la.weight() {
        return Rational::zero();
    }
    let mut room = la.parts().to_vec();
    int(rec(mu.parts(), &mut room) as i64)
}

fn invert(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n).map(|i| if i == j { int(1) } else { int(0) }).collect();
        cols.push(solve_linear(m.to_vec(), e).expect("power-to-monomial matrix is invertible"));
    }
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}

/// Checks `P_nk(X) = (-1)^{n-k} sum_{|mu|=n, l(mu)=k} f_mu` exactly in the
/// power-sum basis, with `f_mu = omega(m_mu)`.
pub fn forgotten_check(n: u32, k: u32) -> Result<bool> {
    let basis = enumerate_partitions(n);
    // p_nu = sum_la L[nu][la] m_la, so m = L^{-1} p
    let l: Vec<Vec<Rational>> = basis
        .iter()
        .map(|nu| basis.iter().map(|la| power_to_monomial(nu, la)).collect())
        .collect();
    let m_in_p = invert(&l);
    let sign = |e: usize| if e.is_multiple_of(2) { int(1) } else { int(-1) };
    let outer = sign((n - k) as usize);
    let mut rhs = vec![Rational::zero(); basis.len()];
    for (a, mu) in basis.iter().enumerate() {
        if mu.len() != k as usize {
            continue;
        }
        for (b, nu) in basis.iter().enumerate() {
            let omega = sign(nu.weight() as usize - nu.len());
            rhs[b] += &outer * &m_in_p[a][b] * omega;
        }
    }
    for (b, nu) in basis.iter().enumerate() {
        let lhs = if k == 0 {
            Rational::zero()
        } else {
            Rational::from_integer(pbi(nu, k as i64)?) / z_of(nu)
        };
        if lhs != rhs[b] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One fitted coefficient of the `chi` experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiEntry {
    pub n: u32,
    pub p: u32,
    pub k: u32,
    pub mu: Partition,
    #[serde(serialize_with = "serialize_rational")]
    pub chi_fitted: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub chi_conjectured: Rational,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// The conjectured `chi_mu = C(k+p-1,p) - C(k+p-3,p-2) m_1 - C(k+p-4,p-3) m_2`.
pub fn chi_conjectured(p: u32, k: u32, mu: &Partition) -> Rational {
    let (p, k) = (p as i64, k as i64);
    binomial_int(k + p - 1, p)
        - binomial_int(k + p - 3, p - 2) * int(mu.multiplicity(1) as i64)
        - binomial_int(k + p - 4, p - 3) * int(mu.multiplicity(2) as i64)
}

/// Fits `P_npk(-X) = (-1)^k sum chi_mu m_mu` for `n <= n_max`,
/// `p <= min(p_max, n)`, `1 <= k <= n`. Every `mu` of length `k` is listed;
/// any other `mu` with a nonzero coefficient is listed with conjectured 0.
pub fn chi_experiment(n_max: u32, p_max: u32, seed: u64) -> Result<Vec<ChiEntry>> {
    let jobs: Vec<(u32, u32, u32)> = (1..=n_max)
        .flat_map(|n| (0..=p_max.min(n)).flat_map(move |p| (1..=n).map(move |k| (n, p, k))))
        .collect();
    let blocks: Vec<Result<Vec<ChiEntry>>> = jobs
        .par_iter()
        .map(|&(n, p, k)| {
            let poly = p_npk_xpoly(n, p as i64, k as i64)?.negate_variables();
            let fitted = fit_monomial_expansion(
                &poly,
                n,
                n as usize,
                seed ^ ((n as u64) << 32 | (p as u64) << 16 | k as u64),
            )?;
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let mut out = Vec::new();
            for mu in enumerate_partitions(n) {
                let chi = fitted.get(&mu).map(|c| c * &sign).unwrap_or_else(Rational::zero);
                let conj = if mu.len() == k as usize {
                    chi_conjectured(p, k, &mu)
                } else {
                    Rational::zero()
                };
                if mu.len() == k as usize || !chi.is_zero() {
                    out.push(ChiEntry {
                        n,
                        p,
                        k,
                        matches: chi == conj,
                        mu,
                        chi_fitted: chi,
                        chi_conjectured: conj,
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for b in blocks {
        out.extend(b?);
    }
    Ok(out)
}

/// One graded comparison of the `B_0` identities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct B0Line {
    pub function: &'static str,
    pub k: u32,
    pub degree: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs: Rational,
}

/// Checks, degree by degree in a marker `t` attached to each element
/// (`a -> a t`), the identities for `p_k`, `h_k`, `e_k` of
/// `B_0 = {a/(1-a)}` against sums of `p_n(A)` and `P_nk(+-X)`.
pub fn b0_alphabet_checks(a: &Alphabet, order: u32) -> Result<Vec<B0Line>> {
    if a.elements().iter().any(|x| x.is_one()) {
        return Err(Error::PoleInB0);
    }
    let vars = ["t"];
    let t = TruncatedSeries::<Rational>::variable(&vars, order, 0);
    let one = TruncatedSeries::<Rational>::one(&vars, order);
    let mut bs = Vec::new();
    for x in a.elements() {
        let at = t.scale(x);
        bs.push(at.mul(&one.sub(&at).inverse()?));
    }
    let kmax = order as usize;
    let zero = TruncatedSeries::<Rational>::zero(&vars, order);
    let mut e = vec![zero.clone(); kmax + 1];
    let mut h = vec![zero.clone(); kmax + 1];
    e[0] = one.clone();
    h[0] = one.clone();
    for b in &bs {
        for j in (1..=kmax).rev() {
            e[j] = e[j].add(&b.mul(&e[j - 1]));
        }
        for j in 1..=kmax {
            h[j] = h[j].add(&b.mul(&h[j - 1]));
        }
    }
    let spec = Specialization::power_sums(a);
    let neg = spec.negated();
    let mut lines = Vec::new();
    for k in 1..=order {
        let pk = bs.iter().fold(zero.clone(), |acc, b| acc.add(&b.pow(k)));
        for n in 0..=order {
            let rhs_p = binomial_int(n as i64 - 1, k as i64 - 1) * a.power_sum(n);
            let rhs_p = if n >= k { rhs_p } else { Rational::zero() };
            let rhs_h = p_nk(n, k as i64, &spec)?;
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let rhs_e = sign * p_nk(n, k as i64, &neg)?;
            for (function, series, rhs) in [
                ("p", &pk, rhs_p),
                ("h", &h[k as usize], rhs_h),
                ("e", &e[k as usize], rhs_e),
            ] {
                lines.push(B0Line {
                    function,
                    k,
                    degree: n,
                    lhs: series.coefficient(&[n]),
                    rhs,
                });
            }
        }
    }
    Ok(lines)
}

/// Whether every value is a nonnegative integer.
pub fn all_nonnegative_integers<'a>(vals: impl IntoIterator<Item = &'a Rational>) -> bool {
    vals.into_iter().all(|v| v.is_integer() && !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Coefficient};
    use crate::coefficients::{nbi, npbi};
    use crate::partitions::content_alphabet;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Sums prod a_i^{e_i} over all exponent vectors that permute `mu`
    /// padded with zeros, deduplicated as vectors.
    fn monomial_brute(a: &[Rational], mu: &Partition) -> Rational {
        let n = a.len();
        if mu.len() > n {
            return Rational::zero();
        }
        let mut exps: Vec<u32> = mu.parts().to_vec();
        exps.resize(n, 0);
        exps.sort();
        let mut seen = std::collections::BTreeSet::new();
        let mut total = Rational::zero();
        // iterate permutations via Heap's algorithm on indices
        fn perms(v: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
            if k == 1 {
                out.push(v.clone());
                return;
            }
            for i in 0..k {
                perms(v, k - 1, out);
                if k.is_multiple_of(2) {
                    v.swap(i, k - 1);
                } else {
                    v.swap(0, k - 1);
                }
            }
        }
        let mut all = Vec::new();
        perms(&mut exps, n.max(1), &mut all);
        for e in all {
            if seen.insert(e.clone()) {
                total += a
                    .iter()
                    .zip(&e)
                    .map(|(x, &k)| crate::arith::rat_pow(x, k as i64))
                    .product::<Rational>();
            }
        }
        total
    }

    #[test]
    fn basic_values() {
        let a = Alphabet::from_ints(&[1, -1]);
        assert_eq!(a.power_sum(2), int(2));
        assert_eq!(a.elementary(3), int(0));
        assert_eq!(Alphabet::from_ints(&[2, 3]).monomial(&p("1,1")), int(6));
        assert_eq!(Alphabet::from_ints(&[2, 3]).monomial(&p("2,1")), int(4 * 3 + 9 * 2));
        assert_eq!(a.complete(0), int(1));
    }

    #[test]
    fn monomial_matches_permutation_sum() {
        let a: Vec<Rational> = vec![int(2), rat(-1, 3), int(5), int(2)];
        for n in 0..=5 {
            for mu in enumerate_partitions(n) {
                assert_eq!(Alphabet::new(a.clone()).monomial(&mu), monomial_brute(&a, &mu), "{mu}");
            }
        }
    }

    #[test]
    fn cauchy_formulas() {
        assert!(newton_convert(&Alphabet::from_ints(&[3]), 0).holds());
        let a = Alphabet::new(vec![int(1), rat(2, 3), int(-4), int(0), rat(5, 7), int(1)]);
        for k in 0..=6 {
            assert!(newton_convert(&a, k).holds(), "k = {k}");
        }
        let c = content_alphabet(&p("2,2"), &int(1)).unwrap();
        let check = newton_convert(&Alphabet::new(c.contents), 2);
        assert!(check.holds());
        assert_eq!(check.elementary, int(-1));
    }

    #[test]
    fn lagrange_interpolation_sum() {
        let a = vec![int(1), int(3), rat(-2, 5)];
        let b = vec![int(2), rat(1, 2)];
        for r in 0..6 {
            assert_eq!(lagrange_sum(&a, &b, r).unwrap(), lagrange_rhs(&a, &b, r));
        }
        let b: Vec<Rational> = vec![];
        // Euler's case: sum a^r / prod (a - c) = h_{r-n+1}(A)
        assert_eq!(lagrange_sum(&a, &b, 0).unwrap(), int(0));
        assert_eq!(lagrange_sum(&a, &b, 2).unwrap(), int(1));
        assert!(lagrange_sum(&[int(1), int(1)], &b, 1).is_err());
    }

    #[test]
    fn p_npk_conventions() {
        assert_eq!(p_npk_xpoly(0, 0, 0).unwrap().as_ref(), &XPolynomial::ring_one());
        assert!(p_npk_xpoly(3, 0, 0).unwrap().is_empty());
        assert!(p_npk_xpoly(3, 4, 1).is_err());
        for n in 1..=6u32 {
            for pp in 0..=n as i64 {
                assert_eq!(p_npk_xpoly(n, pp, 1).unwrap().as_ref(), &XPolynomial::var(n));
                assert!(p_npk_xpoly(n, pp, n as i64 + 1).unwrap().is_empty());
                let top = p_npk_xpoly(n, pp, n as i64).unwrap();
                let nn = p_nk_xpoly(n, n as i64).unwrap();
                let c = Rational::from_integer(crate::arith::choose(n as u64, pp as u64));
                assert_eq!(top.as_ref(), &nn.scale(&c));
                for k in 1..=n as i64 {
                    assert_eq!(
                        p_npk_xpoly(n, pp, k).unwrap(),
                        p_npk_xpoly(n, n as i64 - pp, k).unwrap()
                    );
                    if pp == 1 {
                        assert_eq!(
                            p_npk_xpoly(n, 1, k).unwrap().as_ref(),
                            &p_nk_xpoly(n, k).unwrap().scale(&int(k))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn specialization_evaluates() {
        let spec = Specialization::from_values(int(2), vec![int(1), int(3), int(5)]);
        // P_21 = X_2, P_22 = (X_2 + X_1^2) / 2
        assert_eq!(p_nk(2, 1, &spec).unwrap(), int(3));
        assert_eq!(p_nk(2, 2, &spec).unwrap(), int(2));
        assert_eq!(spec.negated().x(3), int(-5));
        assert_eq!(spec.negated().x(0), int(-2));
    }

    #[test]
    fn all_equal_specialization() {
        // sum <mu,p>_k x^{l(mu)} / z_mu = (k/n) <n,p>_k C(x+k-1, k)
        let x = UniPoly::x();
        for n in 1..=7u32 {
            for pp in 0..=n as i64 {
                for k in 1..=n as i64 {
                    let lhs = p_npk_all_equal(n, pp, k).unwrap();
                    let c = Rational::from_integer(nbi(n, pp, k).unwrap()) * int(k) / int(n as i64);
                    let rhs = crate::arith::binomial(&x.add_rational(&int(k - 1)), k as usize).scale(&c);
                    assert_eq!(lhs, rhs, "n={n} p={pp} k={k}");
                }
            }
        }
    }

    #[test]
    fn monomial_expansion_small_cases() {
        let a = Alphabet::from_ints(&[2, -3, 5, 7]);
        let e = p_nk_monomial_expansion(2, 1, &a, 1).unwrap();
        assert!(e.holds());
        assert_eq!(e.fitted.get(&p("2")), Some(&int(-1)));
        for n in 1..=4 {
            for k in 1..=n {
                assert!(p_nk_monomial_expansion(n, k, &a, 7).unwrap().holds(), "n={n} k={k}");
            }
        }
        let e = p_nk_monomial_expansion(4, 4, &a, 3).unwrap();
        assert_eq!(e.fitted.get(&p("1,1,1,1")), Some(&int(1)));
        assert_eq!(p_nk_monomial_expansion(5, 2, &a, 3), Err(Error::AlphabetTooSmall(5)));
    }

    /// Expansion of `P_npk(-X)` in monomials through the combinatorial
    /// `p -> m` matrix, independent of the generic-alphabet fit.
    fn monomial_coefficients_exact(n: u32, pp: i64, k: i64) -> BTreeMap<Partition, Rational> {
        let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
        for nu in enumerate_partitions(n) {
            let sign = if nu.len() % 2 == 0 { int(1) } else { int(-1) };
            let c = Rational::from_integer(npbi(&nu, pp, k).unwrap()) / z_of(&nu) * sign;
            for la in enumerate_partitions(n) {
                *out.entry(la.clone()).or_insert_with(Rational::zero) += &c * power_to_monomial(&nu, &la);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    #[test]
    fn fit_agrees_with_exact_change_of_basis() {
        for n in 1..=5u32 {
            for pp in 0..=n.min(3) as i64 {
                for k in 1..=n as i64 {
                    let poly = p_npk_xpoly(n, pp, k).unwrap().negate_variables();
                    let fit = fit_monomial_expansion(&poly, n, n as usize, 11).unwrap();
                    assert_eq!(fit, monomial_coefficients_exact(n, pp, k), "n={n} p={pp} k={k}");
                }
            }
        }
    }

    #[test]
    fn forgotten_basis_restatement() {
        for n in 1..=6 {
            for k in 1..=n {
                assert!(forgotten_check(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn chi_low_p_cases() {
        let entries = chi_experiment(5, 1, 5).unwrap();
        for e in &entries {
            assert!(e.matches, "{e:?}");
            let expect = if e.p == 0 { int(1) } else { int(e.k as i64) };
            assert_eq!(e.chi_fitted, expect);
        }
        let json = serde_json::to_string(&entries[0]).unwrap();
        assert!(json.contains("\"match\":true"));
        assert!(json.contains("\"mu\":\"1\""));
    }

    #[test]
    fn b0_identities() {
        let a = Alphabet::new(vec![rat(1, 2), int(-3), rat(2, 7)]);
        for line in b0_alphabet_checks(&a, 6).unwrap() {
            assert_eq!(line.lhs, line.rhs, "{line:?}");
        }
        let single = Alphabet::new(vec![rat(1, 3)]);
        let lines = b0_alphabet_checks(&single, 4).unwrap();
        let p1: Vec<_> = lines.iter().filter(|l| l.function == "p" && l.k == 1).collect();
        for l in p1 {
            let expect = if l.degree == 0 {
                int(0)
            } else {
                crate::arith::rat_pow(&rat(1, 3), l.degree as i64)
            };
            assert_eq!(l.lhs, expect);
        }
        assert_eq!(b0_alphabet_checks(&Alphabet::from_ints(&[1]), 3), Err(Error::PoleInB0));
    }
}
