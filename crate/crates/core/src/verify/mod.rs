//! Every identity as a named, parameterized check producing a
//! [`VerificationReport`].

mod combinatorial;
mod moments;
mod series_identities;

use std::collections::BTreeMap;
use std::fmt::Display;

use num_traits::Zero;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{rat, Coefficient, Rational, TruncatedSeries};
use crate::error::{Error, Result};

pub use combinatorial::{verify_alternating_identity, verify_ll_v0, verify_main_identity};

/// Every id accepted by [`verify_identity`], in report order.
pub const IDENTITIES: &[&str] = &[
    "thm3.1",
    "thm3.1-alt",
    "ll-v0",
    "jz",
    "thm4.1",
    "gf2.3",
    "gn-closed",
    "rel5.1",
    "thm5.1",
    "cor5.2",
    "cauchy",
    "b0",
    "chi",
    "prop7.1",
    "thm8.1",
    "thm9.1",
    "lem11.1",
    "thm11.2",
    "chu-vandermonde",
    "growth-normalization",
    "moments-bridge",
    "plancherel",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Symbolic,
    Random,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "random" => Ok(Mode::Random),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// Job parameters. Unset ranges fall back to per-identity defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyParams {
    pub n_max: Option<u32>,
    pub order: Option<u32>,
    pub lambda_max: Option<u32>,
    pub alphas: Vec<Rational>,
    pub ys: Option<Vec<Rational>>,
    pub mode: Mode,
    pub seed: u64,
    pub trials: u32,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            n_max: None,
            order: None,
            lambda_max: None,
            alphas: default_alphas(),
            ys: None,
            mode: Mode::Symbolic,
            seed: 0,
            trials: 3,
        }
    }
}

pub fn default_alphas() -> Vec<Rational> {
    vec![rat(1, 1), rat(2, 1), rat(1, 2), rat(3, 5)]
}

pub fn default_ys() -> Vec<Rational> {
    vec![rat(1, 1), rat(2, 1), rat(-1, 3), rat(5, 7)]
}

/// `(y)_lambda` and `[alpha y]_p` stay nonzero at these for every alpha in the default set.
pub fn chu_vandermonde_ys() -> Vec<Rational> {
    vec![rat(5, 7), rat(-3, 11), rat(13, 17), rat(19, 23)]
}

impl VerifyParams {
    fn n_max_or(&self, d: u32) -> u32 {
        self.n_max.unwrap_or(d)
    }

    fn order_or(&self, d: u32) -> u32 {
        self.order.unwrap_or(d)
    }

    fn lambda_max_or(&self, d: u32) -> u32 {
        self.lambda_max.unwrap_or(d)
    }

    fn ys_or(&self, d: Vec<Rational>) -> Vec<Rational> {
        self.ys.clone().unwrap_or(d)
    }

    fn validate(&self) -> Result<()> {
        if self.n_max == Some(0) {
            return Err(Error::InvalidParameter("n-max must be >= 1".into()));
        }
        if self.alphas.iter().any(|a| *a <= Rational::zero()) {
            return Err(Error::NonPositiveAlpha);
        }
        if self.mode == Mode::Random && self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
    Reported,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub cases: u64,
    pub coefficients: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// Per-entry findings of a `reported` job.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Failed
    }
}

/// Running count of compared values, keeping the first mismatch.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    cases: u64,
    coefficients: u64,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn case(&mut self) {
        self.cases += 1;
    }

    fn check<T: PartialEq + Display>(&mut self, case: impl FnOnce() -> String, lhs: &T, rhs: &T) -> bool {
        self.coefficients += 1;
        let ok = lhs == rhs;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(Counterexample {
                case: case(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        ok
    }

    fn holds(&mut self, case: impl FnOnce() -> String, ok: bool) {
        self.check(case, &ok, &true);
    }

    /// Compares two series coefficient by coefficient, lowest total degree first.
    fn series<C: Coefficient + Display>(&mut self, case: &str, lhs: &TruncatedSeries<C>, rhs: &TruncatedSeries<C>) {
        for e in exponents(lhs.variables().len(), lhs.order().min(rhs.order())) {
            let mono = lhs
                .variables()
                .iter()
                .zip(&e)
                .map(|(v, k)| format!("{v}^{k}"))
                .collect::<Vec<_>>()
                .join(" ");
            self.check(
                || format!("{case}, coefficient of {mono}"),
                &lhs.coefficient(&e),
                &rhs.coefficient(&e),
            );
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.coefficients += other.coefficients;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    fn into_report(self, id: &str, params: BTreeMap<String, String>) -> VerificationReport {
        VerificationReport {
            id: id.to_string(),
            params,
            status: if self.counterexample.is_some() {
                Status::Failed
            } else {
                Status::Verified
            },
            cases: self.cases,
            coefficients: self.coefficients,
            counterexample: self.counterexample,
            details: None,
        }
    }
}

/// Every exponent vector in `vars` variables of total degree `<= order`,
/// by total degree then lexicographically.
fn exponents(vars: usize, order: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=order {
        let mut level = vec![vec![]];
        for i in 0..vars {
            let mut next = Vec::new();
            for e in &level {
                let used: u32 = e.iter().sum();
                if i + 1 == vars {
                    let mut e = e.clone();
                    e.push(d - used);
                    next.push(e);
                } else {
                    for x in 0..=d - used {
                        let mut e = e.clone();
                        e.push(x);
                        next.push(e);
                    }
                }
            }
            level = next;
        }
        out.extend(level);
    }
    out
}

/// Runs `f` on every item in parallel and merges the tallies in item order.
fn tally_over<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Tally> + Sync) -> Result<Tally> {
    let parts: Vec<Result<Tally>> = items.par_iter().map(&f).collect();
    let mut out = Tally::default();
    for p in parts {
        out = out.merge(p?);
    }
    Ok(out)
}

/// Builds the params echo of a report.
fn echo(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn list(v: &[Rational]) -> String {
    v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

pub fn verify_identity(id: &str, params: &VerifyParams) -> Result<VerificationReport> {
    params.validate()?;
    match id {
        "thm3.1" => {
            let (n, o) = combinatorial::main_identity_ranges(params);
            verify_main_identity(n, o, params.mode, params.seed, params.trials)
        }
        "thm3.1-alt" => {
            let (n, o) = combinatorial::main_identity_ranges(params);
            verify_alternating_identity(n, o, params.mode, params.seed, params.trials)
        }
        "ll-v0" => {
            let (n, o) = combinatorial::ll_v0_ranges(params);
            verify_ll_v0(n, o, params.mode, params.seed, params.trials)
        }
        "jz" => combinatorial::verify_jz(params.n_max_or(8), params.lambda_max_or(6)),
        "thm4.1" => combinatorial::verify_all_equal(params.n_max_or(8)),
        "gf2.3" => combinatorial::verify_generating_functions(
            params.n_max_or(10),
            params.order_or(10),
            params.lambda_max_or(8),
        ),
        "gn-closed" => combinatorial::verify_gn_closed(params.n_max_or(12)),
        "cauchy" => combinatorial::verify_cauchy(params.n_max_or(6), params.seed),
        "b0" => combinatorial::verify_b0(params.order_or(8)),
        "chi" => combinatorial::report_chi(params.n_max_or(6), params.order_or(3), params.seed),
        "rel5.1" => {
            series_identities::verify_reciprocal_relation(params.lambda_max_or(6), params.order_or(10), &params.alphas)
        }
        "thm5.1" => series_identities::verify_two_parameter_series(
            params.lambda_max_or(6),
            params.order_or(10),
            &params.alphas,
            &params.ys_or(default_ys()),
        ),
        "cor5.2" => series_identities::verify_moment_coefficients(
            params.lambda_max_or(6),
            params.order_or(10),
            &params.alphas,
            &params.ys_or(default_ys()),
        ),
        "prop7.1" => moments::verify_dk_decomposition(params.lambda_max_or(8), params.order_or(6), &params.alphas),
        "thm8.1" => moments::verify_s_moments(params.lambda_max_or(8), params.order_or(9), &params.alphas),
        "thm9.1" => moments::verify_sigma_moments(params.lambda_max_or(8), params.order_or(8), &params.alphas),
        "lem11.1" => series_identities::verify_stirling_inverse(params.order_or(8)),
        "thm11.2" => moments::verify_row_column_duality(params.lambda_max_or(6), params.order_or(6), &params.alphas),
        "chu-vandermonde" => moments::verify_chu_vandermonde(
            params.lambda_max_or(6),
            &params.alphas,
            &params.ys_or(chu_vandermonde_ys()),
        ),
        "growth-normalization" => moments::verify_growth_normalization(params.lambda_max_or(8), &params.alphas),
        "moments-bridge" => moments::verify_moments_bridge(params.lambda_max_or(8), params.order_or(9), &params.alphas),
        "plancherel" => moments::verify_plancherel(params.n_max_or(8)),
        other => Err(Error::UnknownIdentity(other.to_string())),
    }
}

/// Runs every identity with default ranges (plus the given alpha/y sets,
/// mode and seed), in parallel, reports in [`IDENTITIES`] order.
pub fn verify_all(params: &VerifyParams) -> Result<Vec<VerificationReport>> {
    params.validate()?;
    let base = VerifyParams {
        n_max: None,
        order: None,
        lambda_max: None,
        ..params.clone()
    };
    IDENTITIES.par_iter().map(|id| verify_identity(id, &base)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyParams {
        VerifyParams {
            n_max: Some(3),
            order: Some(3),
            lambda_max: Some(3),
            alphas: vec![rat(1, 1), rat(3, 5)],
            ..Default::default()
        }
    }

    #[test]
    fn every_identity_holds_on_small_ranges() {
        for id in IDENTITIES {
            let rep = verify_identity(id, &small()).unwrap();
            assert!(rep.passed(), "{id}: {:?}", rep.counterexample);
            assert!(rep.cases > 0 && rep.coefficients > 0, "{id}");
            let expected = if *id == "chi" {
                Status::Reported
            } else {
                Status::Verified
            };
            assert_eq!(rep.status, expected, "{id}");
        }
    }

    #[test]
    fn random_mode_main_identity() {
        let p = VerifyParams {
            mode: Mode::Random,
            n_max: Some(6),
            order: Some(4),
            seed: 11,
            ..Default::default()
        };
        for id in ["thm3.1", "thm3.1-alt", "ll-v0"] {
            let rep = verify_identity(id, &p).unwrap();
            assert_eq!(rep.status, Status::Verified, "{id}: {:?}", rep.counterexample);
            assert_eq!(rep.params["mode"], "random");
        }
    }

    #[test]
    fn smallest_slice_of_main_identity() {
        let rep = verify_main_identity(1, 0, Mode::Symbolic, 0, 1).unwrap();
        assert_eq!(rep.status, Status::Verified);
        assert_eq!(rep.coefficients, 1);
    }

    #[test]
    fn first_mismatch_is_kept() {
        let mut t = Tally::default();
        t.check(|| "a".into(), &1, &1);
        t.check(|| "b".into(), &1, &2);
        t.check(|| "c".into(), &3, &4);
        let rep = t.into_report("x", BTreeMap::new());
        assert_eq!(rep.status, Status::Failed);
        let c = rep.counterexample.unwrap();
        assert_eq!((c.case.as_str(), c.lhs.as_str(), c.rhs.as_str()), ("b", "1", "2"));

        assert_eq!(exponents(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(exponents(2, 4).len(), 15);
        let mut a = TruncatedSeries::<Rational>::zero(&["u"], 3);
        let b = a.clone();
        a.set(vec![2], rat(1, 2));
        let mut t = Tally::default();
        t.series("n = 1", &a, &b);
        assert_eq!(t.counterexample.unwrap().case, "n = 1, coefficient of u^2");
    }

    #[test]
    fn bad_requests() {
        assert_eq!(
            verify_identity("thm99", &VerifyParams::default()),
            Err(Error::UnknownIdentity("thm99".into()))
        );
        let p = VerifyParams {
            alphas: vec![rat(-1, 2)],
            ..Default::default()
        };
        assert_eq!(verify_identity("thm8.1", &p), Err(Error::NonPositiveAlpha));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&verify_identity("cor5.2", &small()).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_identity("cor5.2", &small()).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
