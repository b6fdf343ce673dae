use num_traits::{Signed, Zero};

use super::{echo, list, tally_over, Tally, VerificationReport};
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::growth::{
    cotransition_kernel, exact_cotransition_moment, exact_transition_moment, plancherel_check, transition_kernel,
    DimensionTable, GrowthKernel,
};
use crate::jack::{
    chu_vandermonde, row_column_binomials, s_generating_coefficients, s_r_closed, s_r_direct, s_r_lagrange, s_r_via_u,
    sigma_generating_coefficients, sigma_r_closed, sigma_r_direct, sigma_r_lagrange,
};
use crate::partitions::{partitions_up_to, Partition};
use crate::shifted::{d_k, dk_from_shifted};

fn jobs(weight_max: u32, alphas: &[Rational]) -> Vec<(Partition, Rational)> {
    partitions_up_to(weight_max)
        .into_iter()
        .flat_map(|la| alphas.iter().map(move |a| (la.clone(), a.clone())))
        .collect()
}

fn range_echo(
    weight_max: u32,
    order_name: &str,
    order: u32,
    alphas: &[Rational],
) -> std::collections::BTreeMap<String, String> {
    echo(&[
        ("weight_max", weight_max.to_string()),
        (order_name, order.to_string()),
        ("alphas", list(alphas)),
    ])
}

/// `d_k` from its definition against the shifted power sum decomposition.
pub(super) fn verify_dk_decomposition(weight_max: u32, k_max: u32, alphas: &[Rational]) -> Result<VerificationReport> {
    let cases = jobs(weight_max, alphas);
    let tally = tally_over(&cases, |(la, alpha)| {
        let mut t = Tally::default();
        t.case();
        for k in 0..=k_max {
            t.check(
                || format!("lambda = {la}, alpha = {alpha}, k = {k}"),
                &d_k(la, alpha, k)?,
                &dk_from_shifted(la, alpha, k)?,
            );
        }
        Ok(t)
    })?;
    Ok(tally.into_report("prop7.1", range_echo(weight_max, "k_max", k_max, alphas)))
}

/// `s_r` by the Pieri sum, the Lagrange route, the closed form, the
/// regrouped integer coefficients and the generating function.
pub(super) fn verify_s_moments(weight_max: u32, r_max: u32, alphas: &[Rational]) -> Result<VerificationReport> {
    let cases = jobs(weight_max, alphas);
    let tally = tally_over(&cases, |(la, alpha)| {
        let mut t = Tally::default();
        t.case();
        let gf = s_generating_coefficients(la, alpha, r_max)?;
        for r in 0..=r_max {
            let label = || format!("lambda = {la}, alpha = {alpha}, r = {r}");
            let direct = s_r_direct(la, alpha, r)?;
            t.check(
                || format!("{}, Lagrange", label()),
                &direct,
                &s_r_lagrange(la, alpha, r)?,
            );
            t.check(
                || format!("{}, closed form", label()),
                &direct,
                &s_r_closed(la, alpha, r)?,
            );
            t.check(
                || format!("{}, integer regrouping", label()),
                &direct,
                &s_r_via_u(la, alpha, r)?,
            );
            t.check(|| format!("{}, generating function", label()), &direct, &gf[r as usize]);
        }
        Ok(t)
    })?;
    Ok(tally.into_report("thm8.1", range_echo(weight_max, "r_max", r_max, alphas)))
}

/// `sigma_r` by the corner sum, the closed form, the Lagrange route and the generating function.
pub(super) fn verify_sigma_moments(weight_max: u32, r_max: u32, alphas: &[Rational]) -> Result<VerificationReport> {
    let cases = jobs(weight_max, alphas);
    let tally = tally_over(&cases, |(la, alpha)| {
        let mut t = Tally::default();
        t.case();
        let gf = sigma_generating_coefficients(la, alpha, r_max)?;
        for r in 0..=r_max {
            let label = || format!("lambda = {la}, alpha = {alpha}, r = {r}");
            let direct = sigma_r_direct(la, alpha, r)?;
            t.check(
                || format!("{}, Lagrange", label()),
                &direct,
                &sigma_r_lagrange(la, alpha, r)?,
            );
            t.check(
                || format!("{}, closed form", label()),
                &direct,
                &sigma_r_closed(la, alpha, r)?,
            );
            t.check(|| format!("{}, generating function", label()), &direct, &gf[r as usize]);
        }
        Ok(t)
    })?;
    Ok(tally.into_report("thm9.1", range_echo(weight_max, "r_max", r_max, alphas)))
}

/// Row/column binomials: duality under conjugation with `alpha -> 1/alpha`,
/// `p = 1` gives `|lambda|`, the column one vanishes past `l(lambda)`.
pub(super) fn verify_row_column_duality(
    weight_max: u32,
    p_max: u32,
    alphas: &[Rational],
) -> Result<VerificationReport> {
    let cases = jobs(weight_max, alphas);
    let tally = tally_over(&cases, |(la, alpha)| {
        let mut t = Tally::default();
        t.case();
        let conj = la.conjugate();
        let inv = alpha.recip();
        for p in 0..=p_max {
            let label = || format!("lambda = {la}, alpha = {alpha}, p = {p}");
            let (row, col) = row_column_binomials(la, alpha, p)?;
            let (row_c, col_c) = row_column_binomials(&conj, &inv, p)?;
            t.check(|| format!("{}, row against conjugate column", label()), &row, &col_c);
            t.check(|| format!("{}, column against conjugate row", label()), &col, &row_c);
            if p == 1 {
                let w = int(la.weight() as i64);
                t.check(|| format!("{}, row", label()), &row, &w);
                t.check(|| format!("{}, column", label()), &col, &w);
            }
            if p as usize > la.len() {
                t.check(|| format!("{}, column past length", label()), &col, &Rational::zero());
            }
        }
        Ok(t)
    })?;
    Ok(tally.into_report("thm11.2", range_echo(weight_max, "p_max", p_max, alphas)))
}

pub(super) fn verify_chu_vandermonde(
    weight_max: u32,
    alphas: &[Rational],
    ys: &[Rational],
) -> Result<VerificationReport> {
    let cases: Vec<(Partition, Rational, Rational)> = jobs(weight_max, alphas)
        .into_iter()
        .flat_map(|(la, a)| ys.iter().map(move |y| (la.clone(), a.clone(), y.clone())))
        .collect();
    let tally = tally_over(&cases, |(la, alpha, y)| {
        let mut t = Tally::default();
        t.case();
        let (lhs, rhs) = chu_vandermonde(la, alpha, y)?;
        t.check(|| format!("lambda = {la}, alpha = {alpha}, y = {y}"), &lhs, &rhs);
        Ok(t)
    })?;
    Ok(tally.into_report(
        "chu-vandermonde",
        echo(&[
            ("weight_max", weight_max.to_string()),
            ("alphas", list(alphas)),
            ("ys", list(ys)),
        ]),
    ))
}

/// A negative atom is a failed case, not an error.
fn kernel_case(t: &mut Tally, label: String, kernel: Result<GrowthKernel>) -> Result<Option<GrowthKernel>> {
    match kernel {
        Ok(k) => {
            let total = k.total();
            t.check(|| format!("{label}, total"), &total, &int(1));
            let nonneg = k.atoms.iter().all(|a| !a.p.is_negative());
            t.holds(|| format!("{label}, nonnegative"), nonneg);
            Ok(Some(k))
        }
        Err(Error::NegativeProbability { row, value }) => {
            t.holds(|| format!("{label}, row {row} has probability {value}"), false);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Kernels sum to 1 with nonnegative atoms; the dimension recurrence gives the same co-transition.
pub(super) fn verify_growth_normalization(weight_max: u32, alphas: &[Rational]) -> Result<VerificationReport> {
    let mut tally = Tally::default();
    for alpha in alphas {
        let table = DimensionTable::build(alpha, weight_max)?;
        let las = partitions_up_to(weight_max);
        let part = tally_over(&las, |la| {
            let mut t = Tally::default();
            t.case();
            kernel_case(
                &mut t,
                format!("transition from {la}, alpha = {alpha}"),
                transition_kernel(la, alpha),
            )?;
            if !la.is_empty() {
                let label = format!("co-transition from {la}, alpha = {alpha}");
                if let Some(k) = kernel_case(&mut t, label.clone(), cotransition_kernel(la, alpha))? {
                    let from_dim = table.cotransition(la)?;
                    let same = from_dim == k;
                    t.holds(|| format!("{label}, dimension recurrence"), same);
                }
            }
            Ok(t)
        })?;
        tally = tally.merge(part);
    }
    Ok(tally.into_report(
        "growth-normalization",
        echo(&[("weight_max", weight_max.to_string()), ("alphas", list(alphas))]),
    ))
}

/// Kernel moments against `s_r`, and the co-transition moments against
/// the binomial transform of `sigma_k`.
pub(super) fn verify_moments_bridge(weight_max: u32, r_max: u32, alphas: &[Rational]) -> Result<VerificationReport> {
    let cases = jobs(weight_max, alphas);
    let tally = tally_over(&cases, |(la, alpha)| {
        let mut t = Tally::default();
        t.case();
        for r in 0..=r_max {
            let label = || format!("lambda = {la}, alpha = {alpha}, r = {r}");
            t.check(
                || format!("{}, transition", label()),
                &exact_transition_moment(la, alpha, r)?,
                &s_r_closed(la, alpha, r)?,
            );
            if !la.is_empty() {
                let (direct, via) = exact_cotransition_moment(la, alpha, r)?;
                t.check(|| format!("{}, co-transition", label()), &direct, &via);
            }
        }
        Ok(t)
    })?;
    Ok(tally.into_report("moments-bridge", range_echo(weight_max, "r_max", r_max, alphas)))
}

pub(super) fn verify_plancherel(n_max: u32) -> Result<VerificationReport> {
    let rep = plancherel_check(n_max)?;
    let mut t = Tally::default();
    for _ in 0..rep.kernels_checked {
        t.case();
    }
    t.coefficients = rep.kernels_checked as u64;
    if let Some(m) = rep.mismatches.first() {
        t.holds(|| m.clone(), false);
    }
    Ok(t.into_report("plancherel", echo(&[("n_max", n_max.to_string())])))
}
