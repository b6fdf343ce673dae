//! Power sums of alpha-contents, their specializations `F_npk`, shifted
//! power sums and generalized factorials of a partition.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::arith::{binomial_rat, int, lowering_factorial, rat_pow, Coefficient, Rational};
use crate::coefficients::stirling_inverse_t;
use crate::error::Result;
use crate::partitions::{check_alpha, content_alphabet, Partition};
use crate::symfun::{p_npk_xpoly, Alphabet, Specialization};

/// `d_k(lambda) = sum_cells c^k`; `d_0 = |lambda|`.
pub fn d_k(la: &Partition, alpha: &Rational, k: u32) -> Result<Rational> {
    Ok(content_powers(la, alpha, k)?.get(k))
}

/// `d_0 .. d_kmax` for one `(lambda, alpha)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContentPowers {
    pub partition: Partition,
    pub alpha: Rational,
    values: Vec<Rational>,
}

impl ContentPowers {
    fn build(la: &Partition, alpha: &Rational, kmax: u32) -> Result<Self> {
        let contents = content_alphabet(la, alpha)?.contents;
        let mut values = vec![Rational::zero(); kmax as usize + 1];
        for c in &contents {
            let mut pw = Rational::one();
            for v in values.iter_mut() {
                *v += &pw;
                pw *= c;
            }
        }
        Ok(ContentPowers {
            partition: la.clone(),
            alpha: alpha.clone(),
            values,
        })
    }

    pub fn kmax(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    /// `d_k`; panics past `kmax`.
    pub fn get(&self, k: u32) -> Rational {
        self.values[k as usize].clone()
    }

    /// `X_0 = |lambda|`, `X_k = d_k`.
    pub fn specialization(&self) -> Specialization {
        let values = self.values.clone();
        Specialization::new(self.values[0].clone(), move |i| {
            values
                .get(i as usize)
                .cloned()
                .unwrap_or_else(|| panic!("d_{i} was not computed"))
        })
    }
}

type PowerCache = RwLock<HashMap<(Partition, Rational), Arc<ContentPowers>>>;

fn power_cache() -> &'static PowerCache {
    static CACHE: OnceLock<PowerCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Cached `d_0 .. d_k` for at least `k = kmax`.
pub fn content_powers(la: &Partition, alpha: &Rational, kmax: u32) -> Result<Arc<ContentPowers>> {
    check_alpha(alpha)?;
    let key = (la.clone(), alpha.clone());
    if let Some(p) = power_cache().read().expect("power cache poisoned").get(&key) {
        if p.kmax() >= kmax {
            return Ok(Arc::clone(p));
        }
    }
    let built = Arc::new(ContentPowers::build(la, alpha, kmax.max(12))?);
    let mut w = power_cache().write().expect("power cache poisoned");
    let slot = w.entry(key).or_insert_with(|| Arc::clone(&built));
    if slot.kmax() < built.kmax() {
        *slot = Arc::clone(&built);
    }
    Ok(Arc::clone(slot))
}

type FCache = RwLock<HashMap<(Partition, Rational, u32, u32, u32), Rational>>;

fn f_cache() -> &'static FCache {
    static CACHE: OnceLock<FCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `F_npk(lambda) = P_npk(d_1, d_2, ...)`; `F_nk = F_n0k`. Values are cached.
pub fn f_npk(la: &Partition, alpha: &Rational, n: u32, p: i64, k: i64) -> Result<Rational> {
    let poly = p_npk_xpoly(n, p, k)?;
    let key = (la.clone(), alpha.clone(), n, p as u32, k as u32);
    if let Some(v) = f_cache().read().expect("F cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let d = content_powers(la, alpha, n)?;
    let v = poly.evaluate(&d.values[0], &|i| d.values[i as usize].clone());
    f_cache().write().expect("F cache poisoned").insert(key, v.clone());
    Ok(v)
}

pub fn f_nk(la: &Partition, alpha: &Rational, n: u32, k: i64) -> Result<Rational> {
    f_npk(la, alpha, n, 0, k)
}

/// `p*_k = sum_i ([lambda_i - (i-1)/alpha]_k - [-(i-1)/alpha]_k)`.
pub fn shifted_power_sum(la: &Partition, alpha: &Rational, k: u32) -> Result<Rational> {
    check_alpha(alpha)?;
    let mut total = Rational::zero();
    for (i, &part) in la.parts().iter().enumerate() {
        let shift = int(i as i64) / alpha;
        total += lowering_factorial(&(int(part as i64) - &shift), k as usize);
        total -= lowering_factorial(&(-&shift), k as usize);
    }
    Ok(total)
}

/// `sum_m t(k,m) p*_{m+1} / (m+1)`, which equals `d_k`.
pub fn dk_from_shifted(la: &Partition, alpha: &Rational, k: u32) -> Result<Rational> {
    let mut total = Rational::zero();
    for m in 0..=k {
        let t = stirling_inverse_t(k, m);
        if t.is_zero() {
            continue;
        }
        total += Rational::from_integer(t) * shifted_power_sum(la, alpha, m + 1)? / int(m as i64 + 1);
    }
    Ok(total)
}

/// `(x)_lambda = prod_cells (x + c)`.
pub fn raising_factorial_partition<C: Coefficient>(x: &C, la: &Partition, alpha: &Rational) -> Result<C> {
    let contents = content_alphabet(la, alpha)?.contents;
    Ok(contents
        .iter()
        .fold(C::ring_one(), |acc, c| acc.mul(&x.add_rational(c))))
}

/// `[x]_lambda = prod_cells (x - c)`.
pub fn lowering_factorial_partition<C: Coefficient>(x: &C, la: &Partition, alpha: &Rational) -> Result<C> {
    let contents = content_alphabet(la, alpha)?.contents;
    Ok(contents
        .iter()
        .fold(C::ring_one(), |acc, c| acc.mul(&x.add_rational(&-c))))
}

/// `c_k(lambda) = e_k(A_lambda)`, the coefficient of `x^{|lambda|-k}` in `(x)_lambda`.
pub fn c_k_generalized(la: &Partition, alpha: &Rational, k: u32) -> Result<Rational> {
    Ok(Alphabet::new(content_alphabet(la, alpha)?.contents).elementary(k as usize))
}

/// `C_k(lambda) = h_k(A_lambda)`, the coefficient of `x^{-|lambda|-k}` in `1/[x]_lambda`.
#[allow(non_snake_case)]
pub fn C_k_generalized(la: &Partition, alpha: &Rational, k: u32) -> Result<Rational> {
    Ok(Alphabet::new(content_alphabet(la, alpha)?.contents).complete(k as usize))
}

/// The coefficient `c_r` of `(-1/x)^r` in
/// `(x+y+1)_lambda (x)_lambda / ((x+y)_lambda (x+1)_lambda)`:
///
/// `sum_{2n+p+q <= r} (-y)^n (y+1)^p C(n+p+q-1, p)
///   sum_k C(|lambda|+n-1, n-k) F_{r-2n-p, q, k}`.
pub fn moment_coefficient(la: &Partition, alpha: &Rational, y: &Rational, r: u32) -> Result<Rational> {
    let w = la.weight() as i64;
    let mut total = Rational::zero();
    let r = r as i64;
    for n in 0..=r / 2 {
        let yn = rat_pow(&-y, n);
        for p in 0..=r - 2 * n {
            let m = r - 2 * n - p;
            let yp = &yn * rat_pow(&(y + int(1)), p);
            if yp.is_zero() {
                continue;
            }
            for q in 0..=m {
                let b = binomial_rat(&int(n + p + q - 1), p);
                if b.is_zero() {
                    continue;
                }
                let mut inner = Rational::zero();
                for k in 0..=n.min(m) {
                    let c = binomial_rat(&int(w + n - 1), n - k);
                    if c.is_zero() {
                        continue;
                    }
                    inner += c * f_npk(la, alpha, m as u32, q, k)?;
                }
                total += &yp * b * inner;
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, TruncatedSeries, UniPoly};
    use crate::coefficients::{stirling_first_unsigned, stirling_second};
    use crate::partitions::partitions_up_to;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn alphas() -> Vec<Rational> {
        vec![int(1), int(2), rat(1, 2), rat(3, 5)]
    }

    #[test]
    fn d_k_examples() {
        let a = rat(3, 7);
        assert_eq!(d_k(&p("3,1"), &a, 0).unwrap(), int(4));
        assert_eq!(d_k(&p("2,2"), &a, 1).unwrap(), int(2) - int(2) / &a);
        assert_eq!(d_k(&Partition::empty(), &a, 1).unwrap(), int(0));
        assert!(d_k(&p("1"), &int(0), 1).is_err());
        assert_eq!(d_k(&p("2,1"), &int(1), 30).unwrap(), int(2));
    }

    #[test]
    fn f_conventions() {
        let la = p("3,2");
        let a = rat(1, 2);
        assert_eq!(f_npk(&la, &a, 0, 0, 0).unwrap(), int(1));
        for q in 0..=1 {
            assert_eq!(f_npk(&la, &a, 1, q, 0).unwrap(), int(0));
        }
        for n in 1..=6 {
            for pp in 0..=n as i64 {
                assert_eq!(f_npk(&la, &a, n, pp, 1).unwrap(), d_k(&la, &a, n).unwrap());
            }
        }
    }

    #[test]
    fn shifted_power_sum_examples() {
        let a = rat(2, 3);
        assert_eq!(shifted_power_sum(&p("3,2,2"), &a, 1).unwrap(), int(7));
        assert_eq!(shifted_power_sum(&p("2,2"), &a, 2).unwrap(), int(4) - int(4) / &a);
        assert_eq!(shifted_power_sum(&Partition::empty(), &a, 3).unwrap(), int(0));
    }

    #[test]
    fn low_order_decompositions() {
        for la in partitions_up_to(5) {
            for a in alphas() {
                let ps = |k| shifted_power_sum(&la, &a, k).unwrap();
                let d = |k| d_k(&la, &a, k).unwrap();
                assert_eq!(d(1), ps(2) / int(2));
                assert_eq!(d(2), ps(3) / int(3) + ps(2) / int(2));
                assert_eq!(d(3), ps(4) / int(4) + ps(3) + ps(2) / int(2));
            }
        }
    }

    #[test]
    fn shifted_decomposition_matches() {
        for la in partitions_up_to(8) {
            for a in alphas() {
                for k in 0..=6 {
                    assert_eq!(
                        dk_from_shifted(&la, &a, k).unwrap(),
                        d_k(&la, &a, k).unwrap(),
                        "{la} {a} {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn partition_factorials() {
        let a = rat(5, 3);
        let x = UniPoly::x();
        assert_eq!(
            raising_factorial_partition(&x, &Partition::empty(), &a).unwrap(),
            UniPoly::ring_one()
        );
        for n in 0..6 {
            let got = raising_factorial_partition(&x, &Partition::row(n), &a).unwrap();
            assert_eq!(got, crate::arith::raising_factorial(&x, n as usize));
        }
        for la in partitions_up_to(5) {
            let v = rat(2, 9);
            let low = lowering_factorial_partition(&v, &la, &a).unwrap();
            let high = raising_factorial_partition(&-&v, &la, &a).unwrap();
            let sign = if la.weight() % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(low, sign * high);
        }
    }

    #[test]
    fn generalized_stirling() {
        let x = UniPoly::x();
        for la in partitions_up_to(8) {
            for a in alphas() {
                let w = la.weight();
                let poly = raising_factorial_partition(&x, &la, &a).unwrap();
                assert_eq!(c_k_generalized(&la, &a, 0).unwrap(), int(1));
                for k in 0..=w {
                    assert_eq!(poly.coeff((w - k) as usize), c_k_generalized(&la, &a, k).unwrap());
                }
            }
        }
        // 1/[x]_lambda in t = 1/x is t^{|lambda|} prod 1/(1 - c t)
        for la in partitions_up_to(5) {
            let a = rat(1, 2);
            let contents = content_alphabet(&la, &a).unwrap().contents;
            let vars = ["t"];
            let order = 8 + la.weight();
            let one = TruncatedSeries::<Rational>::one(&vars, order);
            let t = TruncatedSeries::<Rational>::variable(&vars, order, 0);
            let mut s = one.clone();
            for c in &contents {
                s = s.mul(&one.sub(&t.scale(c)).inverse().unwrap());
            }
            for k in 0..=8 {
                assert_eq!(s.coefficient(&[k]), C_k_generalized(&la, &a, k).unwrap());
            }
        }
    }

    #[test]
    fn row_partition_stirling_indexing() {
        for n in 1..=7u32 {
            let la = Partition::row(n);
            for k in 0..=n {
                assert_eq!(
                    c_k_generalized(&la, &int(1), k).unwrap(),
                    Rational::from_integer(stirling_first_unsigned(n, n - k))
                );
            }
            for k in 0..=6 {
                assert_eq!(
                    C_k_generalized(&la, &int(1), k).unwrap(),
                    Rational::from_integer(stirling_second(n + k - 1, n - 1))
                );
            }
        }
    }

    #[test]
    fn cauchy_in_content_powers() {
        use crate::partitions::{enumerate_partitions, z_of};
        for la in partitions_up_to(5) {
            let a = rat(3, 5);
            for k in 0..=5u32 {
                let sum: Rational = enumerate_partitions(k)
                    .iter()
                    .map(|mu| {
                        mu.parts()
                            .iter()
                            .map(|&i| d_k(&la, &a, i).unwrap())
                            .product::<Rational>()
                            / z_of(mu)
                    })
                    .sum();
                assert_eq!(sum, C_k_generalized(&la, &a, k).unwrap());
            }
        }
    }

    #[test]
    fn duality_of_contents() {
        for la in partitions_up_to(8) {
            for a in alphas() {
                let inv = a.recip();
                for k in 0..=5u32 {
                    let lhs = d_k(&la.conjugate(), &inv, k).unwrap();
                    assert_eq!(lhs, rat_pow(&-&a, k as i64) * d_k(&la, &a, k).unwrap());
                }
                if la.weight() <= 6 {
                    for j in 0..=la.weight() {
                        for k in 0..=j as i64 {
                            let lhs = f_nk(&la.conjugate(), &inv, j, k).unwrap();
                            assert_eq!(lhs, rat_pow(&-&a, j as i64) * f_nk(&la, &a, j, k).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn moment_coefficient_low_indices() {
        for la in partitions_up_to(5) {
            for y in [int(1), rat(-1, 3)] {
                assert_eq!(moment_coefficient(&la, &int(2), &y, 0).unwrap(), int(1));
                assert_eq!(moment_coefficient(&la, &int(2), &y, 1).unwrap(), int(0));
            }
        }
    }
}
