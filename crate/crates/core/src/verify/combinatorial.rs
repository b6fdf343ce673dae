use std::collections::HashMap;
use std::fmt::Display;

use num_traits::Zero;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{echo, tally_over, Mode, Status, Tally, VerificationReport, VerifyParams};
use crate::arith::{
    binomial, binomial_int, factorial, int, rat, Coefficient, Rational, TruncatedSeries, UniPoly, XPolynomial,
};
use crate::coefficients::{gn_closed_form, gn_double_sum, gn_series, nbi, npbi, pbi, stirling_first_unsigned};
use crate::error::Result;
use crate::partitions::{enumerate_partitions, partitions_up_to, z_of, Partition};
use crate::symfun::{
    b0_alphabet_checks, chi_experiment, forgotten_check, newton_convert, p_nk_monomial_expansion, p_npk_all_equal,
    p_npk_xpoly, Alphabet,
};

pub(super) fn main_identity_ranges(params: &VerifyParams) -> (u32, u32) {
    match params.mode {
        Mode::Symbolic => (params.n_max_or(5), params.order_or(5)),
        Mode::Random => (params.n_max_or(8), params.order_or(5)),
    }
}

pub(super) fn ll_v0_ranges(params: &VerifyParams) -> (u32, u32) {
    match params.mode {
        Mode::Symbolic => (params.n_max_or(6), params.order_or(5)),
        Mode::Random => (params.n_max_or(8), params.order_or(6)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Plain,
    Alternating,
    SingleVariable,
}

impl Variant {
    fn id(self) -> &'static str {
        match self {
            Variant::Plain => "thm3.1",
            Variant::Alternating => "thm3.1-alt",
            Variant::SingleVariable => "ll-v0",
        }
    }
}

/// `X_0, ..., X_order` as free indeterminates.
fn symbolic_values(order: u32) -> Vec<XPolynomial> {
    (0..=order).map(XPolynomial::var).collect()
}

/// `X_0, ..., X_order` as small rationals drawn from `(seed, trial)`.
fn random_values(order: u32, seed: u64, trial: u32) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    (0..=order)
        .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)))
        .collect()
}

/// `sum_{|mu|=n} sign(mu) / z_mu prod_k S_k^{m_k(mu)}`.
fn power_sum_side<C: Coefficient>(
    n: u32,
    alternating: bool,
    factor: impl Fn(u32) -> TruncatedSeries<C>,
) -> TruncatedSeries<C> {
    let factors: Vec<TruncatedSeries<C>> = (1..=n).map(&factor).collect();
    let mut powers: HashMap<(u32, usize), TruncatedSeries<C>> = HashMap::new();
    let mut acc = factors[0].zero_like();
    for mu in enumerate_partitions(n) {
        let mut term = factors[0].one_like();
        for (part, m) in mu.multiplicities() {
            let pw = powers
                .entry((part, m))
                .or_insert_with(|| factors[part as usize - 1].pow(m as u32));
            term = term.mul(pw);
        }
        let mut c = z_of(&mu).recip();
        if alternating && (n as usize - mu.len()) % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&term.scale(&c));
    }
    acc
}

/// `S_k = sum_{r,s} u^r v^s (k)_r/r! (k)_s/s! X_{r+s}`.
fn two_variable_factor<C: Coefficient>(k: u32, order: u32, x: &[C]) -> TruncatedSeries<C> {
    let mut s = TruncatedSeries::zero(&["u", "v"], order);
    let k = k as i64;
    for r in 0..=order {
        for q in 0..=order - r {
            let c = binomial_int(k + r as i64 - 1, r as i64) * binomial_int(k + q as i64 - 1, q as i64);
            s.set(vec![r, q], x[(r + q) as usize].scale(&c));
        }
    }
    s
}

/// `S_k = sum_r u^r (k)_r/r! X_r`.
fn one_variable_factor<C: Coefficient>(k: u32, order: u32, x: &[C]) -> TruncatedSeries<C> {
    let mut s = TruncatedSeries::zero(&["u"], order);
    for r in 0..=order {
        s.set(
            vec![r],
            x[r as usize].scale(&binomial_int(k as i64 + r as i64 - 1, r as i64)),
        );
    }
    s
}

/// `P_{m,p,k}` evaluated at `X` (or `-X`) for every `m <= order`, `p <= m`, `k <= m`.
fn p_values<C: Coefficient>(order: u32, x: &[C], negate: bool) -> Result<HashMap<(u32, u32, u32), C>> {
    let xs = |i: u32| {
        if negate {
            x[i as usize].neg()
        } else {
            x[i as usize].clone()
        }
    };
    let mut out = HashMap::new();
    for m in 0..=order {
        for p in 0..=m {
            for k in 0..=m {
                let poly = p_npk_xpoly(m, p as i64, k as i64)?;
                out.insert((m, p, k), poly.evaluate(&x[0], &xs));
            }
        }
    }
    Ok(out)
}

/// Both sides of one `n` of the main identity or one of its two variants.
fn main_identity_sides<C: Coefficient>(
    variant: Variant,
    n: u32,
    order: u32,
    x: &[C],
    pv: &HashMap<(u32, u32, u32), C>,
) -> (TruncatedSeries<C>, TruncatedSeries<C>) {
    let x0 = &x[0];
    let shifted_binomial = |shift: i64, k: u32| binomial(&x0.add_rational(&int(shift)), (n - k) as usize);
    match variant {
        Variant::Plain | Variant::Alternating => {
            let alternating = variant == Variant::Alternating;
            let lhs = power_sum_side(n, alternating, |k| two_variable_factor(k, order, x));
            let weights: Vec<C> = (0..=n)
                .map(|k| {
                    if alternating {
                        let b = shifted_binomial(-(k as i64), k);
                        if k % 2 == 1 {
                            b.neg()
                        } else {
                            b
                        }
                    } else {
                        shifted_binomial(n as i64 - 1, k)
                    }
                })
                .collect();
            let mut rhs = lhs.zero_like();
            for p in 0..=order {
                for q in 0..=order - p {
                    let m = p + q;
                    let mut c = C::ring_zero();
                    for k in 0..=n.min(m) {
                        c = c.add(&weights[k as usize].mul(&pv[&(m, p, k)]));
                    }
                    rhs.set(vec![p, q], c);
                }
            }
            (lhs, rhs)
        }
        Variant::SingleVariable => {
            let lhs = power_sum_side(n, true, |k| one_variable_factor(k, order, x));
            let mut rhs = lhs.zero_like();
            for p in 0..=order {
                let mut c = C::ring_zero();
                for k in 0..=n.min(p) {
                    c = c.add(&shifted_binomial(-(p as i64), k).mul(&pv[&(p, 0, k)]));
                }
                rhs.set(vec![p], c);
            }
            (lhs, rhs)
        }
    }
}

/// The `v = 0` slice of the alternating right-hand side, as a series in `u`.
fn alternating_v0_slice<C: Coefficient>(
    n: u32,
    order: u32,
    x: &[C],
    pv_neg: &HashMap<(u32, u32, u32), C>,
) -> TruncatedSeries<C> {
    let mut out = TruncatedSeries::zero(&["u"], order);
    for p in 0..=order {
        let mut c = C::ring_zero();
        for k in 0..=n.min(p) {
            let b = binomial(&x[0].add_rational(&int(-(k as i64))), (n - k) as usize);
            let b = if k % 2 == 1 { b.neg() } else { b };
            c = c.add(&b.mul(&pv_neg[&(p, p, k)]));
        }
        out.set(vec![p], c);
    }
    out
}

fn check_values<C: Coefficient + Display + Sync>(
    variant: Variant,
    n_max: u32,
    order: u32,
    x: &[C],
    label: &str,
) -> Result<Tally> {
    let negate = variant == Variant::Alternating;
    let pv = p_values(order, x, negate)?;
    let pv_neg = if variant == Variant::SingleVariable {
        Some(p_values(order, x, true)?)
    } else {
        None
    };
    let ns: Vec<u32> = (1..=n_max).collect();
    tally_over(&ns, |&n| {
        let mut t = Tally::default();
        let (lhs, rhs) = main_identity_sides(variant, n, order, x, &pv);
        t.case();
        t.series(&format!("{label}n = {n}"), &lhs, &rhs);
        if let Some(pv_neg) = &pv_neg {
            let slice = alternating_v0_slice(n, order, x, pv_neg);
            t.series(&format!("{label}n = {n}, alternating v = 0 slice"), &slice, &rhs);
        }
        Ok(t)
    })
}

fn run_main_identity(
    variant: Variant,
    n_max: u32,
    order: u32,
    mode: Mode,
    seed: u64,
    trials: u32,
) -> Result<VerificationReport> {
    let mut params = vec![("n_max", n_max.to_string()), ("order", order.to_string())];
    let tally = match mode {
        Mode::Symbolic => {
            params.push(("mode", "symbolic".into()));
            check_values(variant, n_max, order, &symbolic_values(order), "")?
        }
        Mode::Random => {
            params.push(("mode", "random".into()));
            params.push(("seed", seed.to_string()));
            params.push(("trials", trials.to_string()));
            let mut t = Tally::default();
            for trial in 0..trials {
                let x = random_values(order, seed, trial);
                t = t.merge(check_values(variant, n_max, order, &x, &format!("trial {trial}, "))?);
            }
            t
        }
    };
    Ok(tally.into_report(variant.id(), echo(&params)))
}

pub fn verify_main_identity(n_max: u32, order: u32, mode: Mode, seed: u64, trials: u32) -> Result<VerificationReport> {
    run_main_identity(Variant::Plain, n_max, order, mode, seed, trials)
}

pub fn verify_alternating_identity(
    n_max: u32,
    order: u32,
    mode: Mode,
    seed: u64,
    trials: u32,
) -> Result<VerificationReport> {
    run_main_identity(Variant::Alternating, n_max, order, mode, seed, trials)
}

/// Also checks that the alternating identity at `v = 0` gives the same right-hand side.
pub fn verify_ll_v0(n_max: u32, order: u32, mode: Mode, seed: u64, trials: u32) -> Result<VerificationReport> {
    run_main_identity(Variant::SingleVariable, n_max, order, mode, seed, trials)
}

/// `sum_k C(X0-|mu|, n-k) <mu>_k = sum_k (-1)^{k-l(mu)} C(X0-k, n-k) <mu>_k` in `X0`.
pub(super) fn verify_jz(n_max: u32, weight_max: u32) -> Result<VerificationReport> {
    let mus: Vec<Partition> = partitions_up_to(weight_max)
        .into_iter()
        .filter(|m| !m.is_empty())
        .collect();
    let x0 = UniPoly::x();
    let tally = tally_over(&mus, |mu| {
        let mut t = Tally::default();
        let w = mu.weight();
        let l = mu.len() as u32;
        for n in 1..=n_max {
            let mut lhs = UniPoly::ring_zero();
            let mut rhs = UniPoly::ring_zero();
            for k in l..=n.min(w) {
                let c = Rational::from_integer(pbi(mu, k as i64)?);
                let n_k = (n - k) as usize;
                lhs = lhs.add(&binomial(&x0.add_rational(&int(-(w as i64))), n_k).scale(&c));
                let b = binomial(&x0.add_rational(&int(-(k as i64))), n_k).scale(&c);
                rhs = if (k - l) % 2 == 1 { rhs.sub(&b) } else { rhs.add(&b) };
            }
            t.case();
            t.check(|| format!("mu = {mu}, n = {n}"), &lhs, &rhs);
        }
        Ok(t)
    })?;
    Ok(tally.into_report(
        "jz",
        echo(&[("n_max", n_max.to_string()), ("weight_max", weight_max.to_string())]),
    ))
}

/// `sum_{|mu|=n} <mu,p>_k x^{l(mu)} / z_mu = (k/n) <n,p>_k C(x+k-1, k)` and its
/// coefficientwise form with `|s(k,r)|`.
pub(super) fn verify_all_equal(n_max: u32) -> Result<VerificationReport> {
    let jobs: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (0..=n).map(move |p| (n, p))).collect();
    let tally = tally_over(&jobs, |&(n, p)| {
        let mut t = Tally::default();
        let parts = enumerate_partitions(n);
        for k in 1..=n {
            let ratio = Rational::from_integer(nbi(n, p as i64, k as i64)?) * int(k as i64) / int(n as i64);
            let lhs = p_npk_all_equal(n, p as i64, k as i64)?;
            let rhs = binomial(&UniPoly::x().add_rational(&int(k as i64 - 1)), k as usize).scale(&ratio);
            t.case();
            t.check(|| format!("n = {n}, p = {p}, k = {k}"), &lhs, &rhs);
            for r in 1..=n {
                let left = &ratio * Rational::from_integer(stirling_first_unsigned(k, r));
                let mut right = Rational::zero();
                for mu in parts.iter().filter(|mu| mu.len() == r as usize) {
                    right += Rational::from_integer(npbi(mu, p as i64, k as i64)?) / z_of(mu);
                }
                right *= Rational::from_integer(factorial(k as usize));
                t.check(
                    || format!("Stirling form, n = {n}, p = {p}, k = {k}, r = {r}"),
                    &left,
                    &right,
                );
            }
        }
        Ok(t)
    })?;
    Ok(tally.into_report("thm4.1", echo(&[("n_max", n_max.to_string())])))
}

/// The hypergeometric generating function of `<n,p>_k` (per `p` and summed
/// over `p`) up to `x^order`, and the product formula for `<lambda,p>_k`.
pub(super) fn verify_generating_functions(n_max: u32, order: u32, weight_max: u32) -> Result<VerificationReport> {
    let ns: Vec<u32> = (1..=n_max).collect();
    let first = tally_over(&ns, |&n| {
        let mut t = Tally::default();
        let g = gn_series(n, n + order);
        for p in 0..=n {
            t.case();
            for k in 0..=order {
                let expect = if k == 0 || k > n {
                    Rational::zero()
                } else {
                    Rational::from_integer(nbi(n, p as i64, k as i64)?)
                };
                t.check(
                    || format!("n = {n}, p = {p}, k = {k}"),
                    &g.coefficient(&[p, k]),
                    &expect,
                );
            }
        }
        Ok(t)
    })?;
    let las: Vec<Partition> = partitions_up_to(weight_max)
        .into_iter()
        .filter(|l| !l.is_empty())
        .collect();
    let second = tally_over(&las, |la| {
        let mut t = Tally::default();
        let w = la.weight();
        let ord = 2 * w;
        let mut lhs = TruncatedSeries::<Rational>::zero(&["y", "x"], ord);
        for p in 0..=w {
            for k in 1..=w {
                lhs.set(vec![p, k], Rational::from_integer(npbi(la, p as i64, k as i64)?));
            }
        }
        let rhs = la
            .parts()
            .iter()
            .fold(lhs.one_like(), |acc, &part| acc.mul(&gn_series(part, ord)));
        t.case();
        t.series(&format!("lambda = {la}"), &lhs, &rhs);
        Ok(t)
    })?;
    Ok(first.merge(second).into_report(
        "gf2.3",
        echo(&[
            ("n_max", n_max.to_string()),
            ("order", order.to_string()),
            ("weight_max", weight_max.to_string()),
        ]),
    ))
}

/// Closed form of the bivariate generating function against the double sum.
pub(super) fn verify_gn_closed(n_max: u32) -> Result<VerificationReport> {
    let ns: Vec<u32> = (1..=n_max).collect();
    let tally = tally_over(&ns, |&n| {
        let mut t = Tally::default();
        t.case();
        t.series(&format!("n = {n}"), &gn_closed_form(n), &gn_double_sum(n));
        Ok(t)
    })?;
    Ok(tally.into_report("gn-closed", echo(&[("n_max", n_max.to_string())])))
}

fn sample_alphabets() -> Vec<Alphabet> {
    vec![
        Alphabet::new(vec![
            int(2),
            int(-3),
            rat(1, 2),
            rat(5, 3),
            rat(-7, 4),
            int(4),
            rat(1, 5),
            int(-1),
        ]),
        Alphabet::new(vec![
            rat(3, 2),
            rat(-2, 7),
            int(5),
            rat(4, 9),
            int(-6),
            rat(11, 3),
            rat(-1, 8),
            int(7),
        ]),
    ]
}

/// Newton/Cauchy conversions, `P_nk(-X)` in the monomial basis and
/// `P_nk(X)` in the forgotten basis.
pub(super) fn verify_cauchy(n_max: u32, seed: u64) -> Result<VerificationReport> {
    let alphabets = sample_alphabets();
    let mut t = Tally::default();
    for (ai, a) in alphabets.iter().enumerate() {
        for k in 1..=n_max.max(8) {
            t.case();
            let c = newton_convert(a, k);
            t.check(
                || format!("alphabet {ai}, e_{k}"),
                &c.elementary,
                &c.elementary_from_power_sums,
            );
            t.check(
                || format!("alphabet {ai}, h_{k}"),
                &c.complete,
                &c.complete_from_power_sums,
            );
        }
    }
    let jobs: Vec<(u32, u32)> = (1..=n_max).flat_map(|n| (1..=n).map(move |k| (n, k))).collect();
    let rest = tally_over(&jobs, |&(n, k)| {
        let mut t = Tally::default();
        t.case();
        let m = p_nk_monomial_expansion(n, k, &alphabets[0], seed)?;
        t.holds(|| format!("monomial expansion, n = {n}, k = {k}"), m.holds());
        t.holds(
            || format!("forgotten expansion, n = {n}, k = {k}"),
            forgotten_check(n, k)?,
        );
        Ok(t)
    })?;
    Ok(t.merge(rest).into_report(
        "cauchy",
        echo(&[("n_max", n_max.to_string()), ("seed", seed.to_string())]),
    ))
}

/// The `B_0 = {a/(1-a)}` expansions of `p_k`, `h_k` and `e_k`.
pub(super) fn verify_b0(order: u32) -> Result<VerificationReport> {
    let alphabets = [
        Alphabet::new(vec![rat(1, 2), rat(-1, 3), rat(2, 5)]),
        Alphabet::new(vec![int(2), int(-3), rat(3, 4), rat(-5, 2)]),
    ];
    let mut t = Tally::default();
    for (ai, a) in alphabets.iter().enumerate() {
        t.case();
        for line in b0_alphabet_checks(a, order)? {
            t.check(
                || format!("alphabet {ai}, {}_{}, degree {}", line.function, line.k, line.degree),
                &line.lhs,
                &line.rhs,
            );
        }
    }
    Ok(t.into_report("b0", echo(&[("order", order.to_string())])))
}

/// The conjectured `chi_mu`; always `reported`, mismatches are listed.
pub(super) fn report_chi(n_max: u32, p_max: u32, seed: u64) -> Result<VerificationReport> {
    let entries = chi_experiment(n_max, p_max, seed)?;
    let mismatches: Vec<_> = entries.iter().filter(|e| !e.matches).collect();
    let details = serde_json::json!({
        "entries": entries.len(),
        "mismatches": mismatches,
    });
    Ok(VerificationReport {
        id: "chi".into(),
        params: echo(&[
            ("n_max", n_max.to_string()),
            ("p_max", p_max.to_string()),
            ("seed", seed.to_string()),
        ]),
        status: Status::Reported,
        cases: entries.len() as u64,
        coefficients: entries.len() as u64,
        counterexample: None,
        details: Some(details),
    })
}
