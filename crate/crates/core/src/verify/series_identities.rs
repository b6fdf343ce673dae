use super::{echo, list, tally_over, Tally, VerificationReport};
use crate::arith::{binomial_int, int, rat_pow, Rational, TruncatedSeries};
use crate::error::Result;
use crate::jack::{moment_generating_series, stirling_inverse_sides};
use crate::partitions::{content_alphabet, partitions_up_to, Partition};
use crate::shifted::{f_nk, f_npk, moment_coefficient};
use num_traits::Zero;

fn jobs(weight_max: u32, alphas: &[Rational]) -> Vec<(Partition, Rational)> {
    partitions_up_to(weight_max)
        .into_iter()
        .flat_map(|la| alphas.iter().map(move |a| (la.clone(), a.clone())))
        .collect()
}

/// `(x+y)_lambda / (y)_lambda` against `sum (-1)^j x^i / y^{i+j} sum_k C(|lambda|-j, i-k) F_jk`,
/// as a series in `(x, w = 1/y)` where `x^i w^{i+j}` has degree `2i+j`.
pub(super) fn verify_reciprocal_relation(
    weight_max: u32,
    order: u32,
    alphas: &[Rational],
) -> Result<VerificationReport> {
    let cases = jobs(weight_max, alphas);
    let tally = tally_over(&cases, |(la, alpha)| {
        let vars = ["x", "w"];
        let one = TruncatedSeries::<Rational>::one(&vars, order);
        let x = TruncatedSeries::<Rational>::variable(&vars, order, 0);
        let w = TruncatedSeries::<Rational>::variable(&vars, order, 1);
        let mut num = one.clone();
        let mut den = one.clone();
        for c in content_alphabet(la, alpha)?.contents {
            num = num.mul(&one.add(&x.add(&one.scale(&c)).mul(&w)));
            den = den.mul(&one.add(&w.scale(&c)));
        }
        let lhs = num.mul(&den.inverse()?);
        let weight = la.weight() as i64;
        let mut rhs = one.zero_like();
        for i in 0..=order / 2 {
            for j in 0..=order - 2 * i {
                let mut c = Rational::zero();
                for k in 0..=i.min(j) {
                    let b = binomial_int(weight - j as i64, (i - k) as i64);
                    if b != Rational::zero() {
                        c += b * f_nk(la, alpha, j, k as i64)?;
                    }
                }
                if j % 2 == 1 {
                    c = -c;
                }
                rhs.set(vec![i, i + j], c);
            }
        }
        let mut t = Tally::default();
        t.case();
        t.series(&format!("lambda = {la}, alpha = {alpha}"), &lhs, &rhs);
        Ok(t)
    })?;
    Ok(tally.into_report(
        "rel5.1",
        echo(&[
            ("weight_max", weight_max.to_string()),
            ("order", order.to_string()),
            ("alphas", list(alphas)),
        ]),
    ))
}

/// The right-hand side of the two-parameter generating function as a series in `t = 1/x`.
/// Terms are grouped as `coef * t^shift * (1 + (y+1)t)^(-power)` before expanding.
fn two_parameter_rhs(la: &Partition, alpha: &Rational, y: &Rational, order: u32) -> Result<TruncatedSeries> {
    let vars = ["t"];
    let one = TruncatedSeries::<Rational>::one(&vars, order);
    let t = TruncatedSeries::<Rational>::variable(&vars, order, 0);
    let a_inv = one.add(&t.scale(&(y + int(1)))).inverse()?;
    let weight = la.weight() as i64;
    let size = order as usize + 1;
    let mut grouped = vec![vec![Rational::zero(); size]; size];
    for n in 0..=order / 2 {
        let yn = rat_pow(&-y, n as i64);
        for m in 0..=order - 2 * n {
            let shift = (2 * n + m) as usize;
            for p in 0..=m {
                let q = m - p;
                let mut c = Rational::zero();
                for k in 0..=n.min(m) {
                    let b = binomial_int(weight + n as i64 - 1, (n - k) as i64);
                    if !b.is_zero() {
                        c += b * f_npk(la, alpha, m, p as i64, k as i64)?;
                    }
                }
                if m % 2 == 1 {
                    c = -c;
                }
                let power = (n + q) as usize;
                grouped[shift][power] += &yn * c;
            }
        }
    }
    let mut inv_powers = vec![one.clone()];
    for j in 1..size {
        inv_powers.push(inv_powers[j - 1].mul(&a_inv));
    }
    let mut rhs = one.zero_like();
    let mut t_shift = one.clone();
    for row in &grouped {
        for (power, c) in row.iter().enumerate() {
            if !c.is_zero() {
                rhs = rhs.add(&t_shift.mul(&inv_powers[power]).scale(c));
            }
        }
        t_shift = t_shift.mul(&t);
    }
    Ok(rhs)
}

fn three_jobs(weight_max: u32, alphas: &[Rational], ys: &[Rational]) -> Vec<(Partition, Rational, Rational)> {
    jobs(weight_max, alphas)
        .into_iter()
        .flat_map(|(la, a)| ys.iter().map(move |y| (la.clone(), a.clone(), y.clone())))
        .collect()
}

fn series_echo(
    weight_max: u32,
    order: u32,
    alphas: &[Rational],
    ys: &[Rational],
) -> std::collections::BTreeMap<String, String> {
    echo(&[
        ("weight_max", weight_max.to_string()),
        ("order", order.to_string()),
        ("alphas", list(alphas)),
        ("ys", list(ys)),
    ])
}

pub(super) fn verify_two_parameter_series(
    weight_max: u32,
    order: u32,
    alphas: &[Rational],
    ys: &[Rational],
) -> Result<VerificationReport> {
    let cases = three_jobs(weight_max, alphas, ys);
    let tally = tally_over(&cases, |(la, alpha, y)| {
        let lhs = moment_generating_series(la, alpha, y, order)?;
        let rhs = two_parameter_rhs(la, alpha, y, order)?;
        let mut t = Tally::default();
        t.case();
        t.series(&format!("lambda = {la}, alpha = {alpha}, y = {y}"), &lhs, &rhs);
        Ok(t)
    })?;
    Ok(tally.into_report("thm5.1", series_echo(weight_max, order, alphas, ys)))
}

/// `sum_r c_r (-1/x)^r` against the product, plus `c_0 = 1` and `c_1 = 0`.
pub(super) fn verify_moment_coefficients(
    weight_max: u32,
    order: u32,
    alphas: &[Rational],
    ys: &[Rational],
) -> Result<VerificationReport> {
    let cases = three_jobs(weight_max, alphas, ys);
    let tally = tally_over(&cases, |(la, alpha, y)| {
        let lhs = moment_generating_series(la, alpha, y, order)?;
        let mut rhs = lhs.zero_like();
        let mut cs = Vec::new();
        for r in 0..=order {
            let c = moment_coefficient(la, alpha, y, r)?;
            rhs.set(vec![r], if r % 2 == 1 { -c.clone() } else { c.clone() });
            cs.push(c);
        }
        let label = format!("lambda = {la}, alpha = {alpha}, y = {y}");
        let mut t = Tally::default();
        t.case();
        t.series(&label, &lhs, &rhs);
        t.check(|| format!("{label}, c_0"), &cs[0], &int(1));
        if order >= 1 {
            t.check(|| format!("{label}, c_1"), &cs[1], &int(0));
        }
        Ok(t)
    })?;
    Ok(tally.into_report("cor5.2", series_echo(weight_max, order, alphas, ys)))
}

/// `1/x^k = sum_{n >= k} s(n-1, k-1) / [x]_n` for `k <= order`, to `x^{-order}`.
pub(super) fn verify_stirling_inverse(order: u32) -> Result<VerificationReport> {
    let ks: Vec<u32> = (1..=order).collect();
    let tally = tally_over(&ks, |&k| {
        let (lhs, rhs) = stirling_inverse_sides(k, order)?;
        let mut t = Tally::default();
        t.case();
        t.series(&format!("k = {k}"), &lhs, &rhs);
        Ok(t)
    })?;
    Ok(tally.into_report("lem11.1", echo(&[("order", order.to_string())])))
}
