//! Pieri coefficients, co-transition corner binomials and their moments
//! `s_r`, `sigma_r`, each computed by three routes: the direct weighted
//! sum, interpolation through `h_r(A - B)`, and the closed form in `F_npk`.
//! Also the row and column binomials `binom(lambda, (p))`,
//! `binom(lambda, 1^p)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{
    binomial_rat, int, lowering_factorial, raising_factorial, rat_pow, serialize_rational, Rational, TruncatedSeries,
};
use crate::coefficients::{npbi_ext, stirling_first};
use crate::error::{Error, Result};
use crate::partitions::{check_alpha, content_alphabet, enumerate_partitions, z_of, Partition};
use crate::shifted::{content_powers, f_nk, moment_coefficient, raising_factorial_partition};
use crate::symfun::complete_of_difference;

/// Coefficient of `J_{lambda^(row)}` in `e_1 J_lambda`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PieriRow {
    pub row: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub coefficient: Rational,
}

/// `binom(lambda, lambda_(row))` for a removable corner.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CornerBinomial {
    pub row: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
}

fn ratio(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero(what.to_string()));
    }
    Ok(num / den)
}

/// `c_i(lambda) = 1/(alpha lambda_i + l - i + 2)
///   prod_{j != i, j <= l+1} (alpha(lambda_i - lambda_j) + j - i + 1) / (alpha(lambda_i - lambda_j) + j - i)`.
///
/// Every row `1..=l+1` is evaluated. Rows where no cell can be added must
/// come out as exactly 0 and are then dropped.
pub fn pieri_coefficients(la: &Partition, alpha: &Rational) -> Result<Vec<PieriRow>> {
    check_alpha(alpha)?;
    let l = la.len();
    let addable = la.addable_corners();
    let part = |i: usize| int(la.part(i) as i64);
    let mut out = Vec::new();
    for i in 1..=l + 1 {
        let mut c = ratio(
            Rational::one(),
            alpha * part(i) + int(l as i64 - i as i64 + 2),
            "Pieri prefactor",
        )?;
        for j in (1..=l + 1).filter(|&j| j != i) {
            let d = alpha * (part(i) - part(j));
            let shift = j as i64 - i as i64;
            c *= ratio(&d + int(shift + 1), &d + int(shift), "Pieri factor")?;
        }
        if addable.contains(&i) {
            out.push(PieriRow { row: i, coefficient: c });
        } else if !c.is_zero() {
            return Err(Error::NonVanishingRow {
                row: i,
                value: c.to_string(),
            });
        }
    }
    Ok(out)
}

/// `lambda_i - (i-1)/alpha`, the content of the cell added in row `i`.
pub fn added_content(la: &Partition, alpha: &Rational, row: usize) -> Rational {
    int(la.part(row) as i64) - int(row as i64 - 1) / alpha
}

/// `s_r = sum_i (lambda_i - (i-1)/alpha)^r c_i(lambda)`.
pub fn s_r_direct(la: &Partition, alpha: &Rational, r: u32) -> Result<Rational> {
    Ok(pieri_coefficients(la, alpha)?
        .iter()
        .map(|p| rat_pow(&added_content(la, alpha, p.row), r as i64) * &p.coefficient)
        .sum())
}

fn scaled_rows(la: &Partition, alpha: &Rational, rows: usize, shift: i64) -> Vec<Rational> {
    (1..=rows)
        .map(|i| alpha * int(la.part(i) as i64) - int(i as i64) + int(shift))
        .collect()
}

/// `h_r(A - B) / alpha^r` with `A = {alpha lambda_i - i + 1 : i <= l+1}`,
/// `B = {alpha lambda_i - i : i <= l}`.
pub fn s_r_lagrange(la: &Partition, alpha: &Rational, r: u32) -> Result<Rational> {
    check_alpha(alpha)?;
    let l = la.len();
    let a = scaled_rows(la, alpha, l + 1, 1);
    let b = scaled_rows(la, alpha, l, 0);
    let h = complete_of_difference(&a, &b, r as usize);
    Ok(&h[r as usize] / rat_pow(alpha, r as i64))
}

/// The closed form: `c_r` of the moment series at `y = -1/alpha`.
pub fn s_r_closed(la: &Partition, alpha: &Rational, r: u32) -> Result<Rational> {
    check_alpha(alpha)?;
    moment_coefficient(la, alpha, &-alpha.recip(), r)
}

/// `u_ijk^rho(r) = sum_{s=0}^{j} <rho,s>_k C(r+s-i-j-1, r-2i-j)` with `j = |rho|`.
pub fn u_ijk_coefficients(r: u32, i: u32, j: u32, k: u32, rho: &Partition) -> Result<Rational> {
    if rho.weight() != j {
        return Err(Error::InvalidParameter(format!("|{rho}| != {j}")));
    }
    let (r, i, j) = (r as i64, i as i64, j as i64);
    let mut total = Rational::zero();
    for s in 0..=j {
        let v = npbi_ext(rho, s, k as i64)?;
        if v.is_zero() {
            continue;
        }
        total += Rational::from_integer(v) * binomial_rat(&int(r + s - i - j - 1), r - 2 * i - j);
    }
    Ok(total)
}

/// `s_r` regrouped over `u_ijk^rho(r)`:
/// `sum_{i,j,k} alpha^{-i} (1 - 1/alpha)^{r-2i-j} C(|lambda|+i-1, i-k)
///   sum_{|rho|=j} u_ijk^rho(r) d_rho / z_rho`.
pub fn s_r_via_u(la: &Partition, alpha: &Rational, r: u32) -> Result<Rational> {
    let d = content_powers(la, alpha, r)?;
    let w = la.weight() as i64;
    let inv = alpha.recip();
    let mut total = Rational::zero();
    for i in 0..=r / 2 {
        for j in 0..=r - 2 * i {
            let pre = rat_pow(&inv, i as i64) * rat_pow(&(int(1) - &inv), (r - 2 * i - j) as i64);
            for k in 0..=i.min(j) {
                let b = binomial_rat(&int(w + i as i64 - 1), (i - k) as i64);
                if b.is_zero() {
                    continue;
                }
                let mut inner = Rational::zero();
                for rho in enumerate_partitions(j) {
                    let u = u_ijk_coefficients(r, i, j, k, &rho)?;
                    if u.is_zero() {
                        continue;
                    }
                    let d_rho: Rational = rho.parts().iter().map(|&m| d.get(m)).product();
                    inner += u * d_rho / z_of(&rho);
                }
                total += &pre * b * inner;
            }
        }
    }
    Ok(total)
}

/// `(lambda_i + (l-i)/alpha) prod_{j != i, j <= l}
///   (alpha(lambda_i - lambda_j) + j - i - 1) / (alpha(lambda_i - lambda_j) + j - i)`
/// over removable corners; other rows must vanish.
pub fn corner_binomials(la: &Partition, alpha: &Rational) -> Result<Vec<CornerBinomial>> {
    check_alpha(alpha)?;
    let l = la.len();
    let removable = la.removable_corners();
    let part = |i: usize| int(la.part(i) as i64);
    let mut out = Vec::new();
    for i in 1..=l {
        let mut v = part(i) + int(l as i64 - i as i64) / alpha;
        for j in (1..=l).filter(|&j| j != i) {
            let d = alpha * (part(i) - part(j));
            let shift = j as i64 - i as i64;
            v *= ratio(&d + int(shift - 1), &d + int(shift), "corner factor")?;
        }
        if removable.contains(&i) {
            out.push(CornerBinomial { row: i, value: v });
        } else if !v.is_zero() {
            return Err(Error::NonVanishingRow {
                row: i,
                value: v.to_string(),
            });
        }
    }
    Ok(out)
}

/// `sigma_r = sum_i (lambda_i - (i-1)/alpha)^r binom(lambda, lambda_(i))`.
pub fn sigma_r_direct(la: &Partition, alpha: &Rational, r: u32) -> Result<Rational> {
    Ok(corner_binomials(la, alpha)?
        .iter()
        .map(|c| rat_pow(&added_content(la, alpha, c.row), r as i64) * &c.value)
        .sum())
}

/// `c_{r+1} - alpha c_{r+2}` at `y = 1/alpha`.
pub fn sigma_r_closed(la: &Partition, alpha: &Rational, r: u32) -> Result<Rational> {
    check_alpha(alpha)?;
    let y = alpha.recip();
    Ok(moment_coefficient(la, alpha, &y, r + 1)? - alpha * moment_coefficient(la, alpha, &y, r + 2)?)
}

fn sigma_alphabets(la: &Partition, alpha: &Rational) -> (Vec<Rational>, Vec<Rational>) {
    let l = la.len();
    (scaled_rows(la, alpha, l, 1), scaled_rows(la, alpha, l + 1, 2))
}

/// `-h_{r+2}(A - B) / alpha^{r+1}` with `A = {alpha lambda_i - i + 1 : i <= l}`,
/// `B = {alpha lambda_i - i + 2 : i <= l+1}`.
pub fn sigma_r_lagrange(la: &Partition, alpha: &Rational, r: u32) -> Result<Rational> {
    check_alpha(alpha)?;
    let (a, b) = sigma_alphabets(la, alpha);
    let h = complete_of_difference(&a, &b, r as usize + 2);
    Ok(-&h[r as usize + 2] / rat_pow(alpha, r as i64 + 1))
}

/// `h_1(A - B)` for the co-transition alphabets; always `-1`.
pub fn sigma_h1(la: &Partition, alpha: &Rational) -> Result<Rational> {
    check_alpha(alpha)?;
    let (a, b) = sigma_alphabets(la, alpha);
    Ok(complete_of_difference(&a, &b, 1)[1].clone())
}

/// `prod_cells (1 + (c+y+1) t)(1 + c t) / ((1 + (c+y) t)(1 + (c+1) t))`, the
/// series in `t = 1/x` of `(x+y+1)_l (x)_l / ((x+y)_l (x+1)_l)`.
pub fn moment_generating_series(la: &Partition, alpha: &Rational, y: &Rational, order: u32) -> Result<TruncatedSeries> {
    let vars = ["t"];
    let one = TruncatedSeries::<Rational>::one(&vars, order);
    let t = TruncatedSeries::<Rational>::variable(&vars, order, 0);
    let lin = |c: &Rational| one.add(&t.scale(c));
    let mut num = one.clone();
    let mut den = one.clone();
    for c in content_alphabet(la, alpha)?.contents {
        num = num.mul(&lin(&(&c + y + int(1)))).mul(&lin(&c));
        den = den.mul(&lin(&(&c + y))).mul(&lin(&(&c + int(1))));
    }
    Ok(num.mul(&den.inverse()?))
}

/// `sum_r s_r (-t)^r` and `sum_r sigma_r (-t)^r` predicted by the generating
/// functions, up to `t^order`.
pub fn s_generating_coefficients(la: &Partition, alpha: &Rational, order: u32) -> Result<Vec<Rational>> {
    let g = moment_generating_series(la, alpha, &-alpha.recip(), order)?;
    Ok((0..=order)
        .map(|r| {
            let c = g.coefficient(&[r]);
            if r % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect())
}

/// `sigma_m` from `-(alpha t^-2 + t^-1)(G - 1)` at `y = 1/alpha`.
pub fn sigma_generating_coefficients(la: &Partition, alpha: &Rational, order: u32) -> Result<Vec<Rational>> {
    let g = moment_generating_series(la, alpha, &alpha.recip(), order + 2)?;
    Ok((0..=order)
        .map(|m| {
            let v = -(alpha * g.coefficient(&[m + 2]) + g.coefficient(&[m + 1]));
            if m % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect())
}

fn row_column_inner(la: &Partition, alpha: &Rational, i: i64, j: i64) -> Result<Rational> {
    let w = la.weight() as i64;
    let mut s = Rational::zero();
    for k in 0..=i.min(j) {
        let b = binomial_rat(&int(w - j), i - k);
        if b.is_zero() {
            continue;
        }
        s += b * f_nk(la, alpha, j as u32, k)?;
    }
    Ok(s)
}

/// `(binom(lambda, (p)), binom(lambda, 1^p))` from the double sums over
/// `0 < i+j <= p` weighted by `s(p-1, i+j-1)`; `p = 0` gives `(1, 1)`.
pub fn row_column_binomials(la: &Partition, alpha: &Rational, p: u32) -> Result<(Rational, Rational)> {
    check_alpha(alpha)?;
    if p == 0 {
        return Ok((int(1), int(1)));
    }
    let inv = alpha.recip();
    let mut row = Rational::zero();
    let mut col = Rational::zero();
    for total in 1..=p as i64 {
        let s = Rational::from_integer(stirling_first(p - 1, total as u32 - 1));
        if s.is_zero() {
            continue;
        }
        for i in 0..=total {
            let j = total - i;
            let inner = row_column_inner(la, alpha, i, j)?;
            if inner.is_zero() {
                continue;
            }
            row += rat_pow(&inv, i) * &s * &inner;
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            col += sign * rat_pow(alpha, total) * &s * inner;
        }
    }
    let row = row / raising_factorial(&inv, p as usize);
    let col = col / raising_factorial(alpha, p as usize);
    Ok((row, col))
}

/// Both sides of `1/x^k = sum_{n >= k} s(n-1, k-1) / [x]_n` as series in
/// `t = 1/x` up to `t^order`.
pub fn stirling_inverse_sides(k: u32, order: u32) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let vars = ["t"];
    let one = TruncatedSeries::<Rational>::one(&vars, order);
    let t = TruncatedSeries::<Rational>::variable(&vars, order, 0);
    let lhs = t.pow(k);
    let mut rhs = one.zero_like();
    // 1/[x]_n = t^n prod_{i<n} 1/(1 - i t)
    let mut falling = one.clone();
    for n in 1..=order {
        falling = falling.mul(&t).mul(&one.sub(&t.scale(&int(n as i64 - 1))).inverse()?);
        if n < k {
            continue;
        }
        let s = Rational::from_integer(stirling_first(n - 1, k - 1));
        rhs = rhs.add(&falling.scale(&s));
    }
    Ok((lhs, rhs))
}

/// Both sides of `(y+1)_lambda / (y)_lambda = sum_p binom(lambda, 1^p) (alpha)_p / [alpha y]_p`,
/// the sum taken over `p <= |lambda|`.
pub fn chu_vandermonde(la: &Partition, alpha: &Rational, y: &Rational) -> Result<(Rational, Rational)> {
    let num: Rational = raising_factorial_partition(&(y + int(1)), la, alpha)?;
    let den: Rational = raising_factorial_partition(y, la, alpha)?;
    let lhs = ratio(num, den, "(y)_lambda")?;
    let ay = alpha * y;
    let mut rhs = Rational::zero();
    for p in 0..=la.weight() {
        let (_, col) = row_column_binomials(la, alpha, p)?;
        if col.is_zero() {
            continue;
        }
        rhs += col
            * ratio(
                raising_factorial(alpha, p as usize),
                lowering_factorial(&ay, p as usize),
                "[alpha y]_p",
            )?;
    }
    Ok((lhs, rhs))
}
