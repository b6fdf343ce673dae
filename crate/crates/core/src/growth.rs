//! Transition and co-transition measures on the Young lattice, the
//! dimension recurrence, exact moments of the added cell's content and a
//! seeded Monte Carlo sampler.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial_int, int, rat_pow, serialize_rational, to_f64, Rational};
use crate::error::{Error, Result};
use crate::jack::{added_content, corner_binomials, pieri_coefficients, sigma_r_direct};
use crate::partitions::{check_alpha, enumerate_partitions, partitions_up_to, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Atom {
    pub row: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub p: Rational,
}

/// Exact probabilities of adding (`Up`) or removing (`Down`) a cell in each row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthKernel {
    pub base: Partition,
    #[serde(serialize_with = "serialize_rational")]
    pub alpha: Rational,
    #[serde(skip)]
    pub direction: Direction,
    pub atoms: Vec<Atom>,
}

impl GrowthKernel {
    pub fn total(&self) -> Rational {
        self.atoms.iter().map(|a| &a.p).sum()
    }

    /// Content of the cell added or removed in `row`.
    pub fn content(&self, row: usize) -> Rational {
        match self.direction {
            Direction::Up => added_content(&self.base, &self.alpha, row),
            Direction::Down => added_content(&self.base, &self.alpha, row) - int(1),
        }
    }

    /// `sum_atoms content^r p`.
    pub fn moment(&self, r: u32) -> Rational {
        self.atoms
            .iter()
            .map(|a| rat_pow(&self.content(a.row), r as i64) * &a.p)
            .sum()
    }

    fn check_nonnegative(self) -> Result<Self> {
        if let Some(a) = self.atoms.iter().find(|a| a.p.is_negative()) {
            return Err(Error::NegativeProbability {
                row: a.row,
                value: a.p.to_string(),
            });
        }
        Ok(self)
    }
}

/// `p_lambda(lambda^(i)) = c_i(lambda)`.
pub fn transition_kernel(la: &Partition, alpha: &Rational) -> Result<GrowthKernel> {
    let atoms = pieri_coefficients(la, alpha)?
        .into_iter()
        .map(|r| Atom {
            row: r.row,
            p: r.coefficient,
        })
        .collect();
    GrowthKernel {
        base: la.clone(),
        alpha: alpha.clone(),
        direction: Direction::Up,
        atoms,
    }
    .check_nonnegative()
}

/// `q_Lambda(Lambda_(i)) = binom(Lambda, Lambda_(i)) / |Lambda|`.
pub fn cotransition_kernel(big: &Partition, alpha: &Rational) -> Result<GrowthKernel> {
    if big.is_empty() {
        return Err(Error::EmptyCotransition);
    }
    let w = int(big.weight() as i64);
    let atoms = corner_binomials(big, alpha)?
        .into_iter()
        .map(|c| Atom {
            row: c.row,
            p: c.value / &w,
        })
        .collect();
    GrowthKernel {
        base: big.clone(),
        alpha: alpha.clone(),
        direction: Direction::Down,
        atoms,
    }
    .check_nonnegative()
}

/// `dim` for every partition of weight `<= n_max`, from
/// `dim Lambda = sum_{lambda -> Lambda} c(lambda, Lambda) dim lambda`, `dim 0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionTable {
    pub alpha: Rational,
    values: HashMap<Partition, Rational>,
}

impl DimensionTable {
    pub fn build(alpha: &Rational, n_max: u32) -> Result<Self> {
        check_alpha(alpha)?;
        let mut values = HashMap::new();
        values.insert(Partition::empty(), Rational::one());
        for n in 1..=n_max {
            for big in enumerate_partitions(n) {
                let mut d = Rational::zero();
                for row in big.removable_corners() {
                    let small = big.remove_cell(row).expect("removable corner");
                    d += edge_weight(&small, alpha, row)? * &values[&small];
                }
                values.insert(big, d);
            }
        }
        Ok(DimensionTable {
            alpha: alpha.clone(),
            values,
        })
    }

    pub fn get(&self, la: &Partition) -> Option<&Rational> {
        self.values.get(la)
    }

    /// `q_Lambda(lambda) = c(lambda, Lambda) dim lambda / dim Lambda`.
    pub fn cotransition(&self, big: &Partition) -> Result<GrowthKernel> {
        if big.is_empty() {
            return Err(Error::EmptyCotransition);
        }
        let dim_big = self
            .get(big)
            .ok_or_else(|| Error::InvalidParameter(format!("{big} is beyond the table")))?;
        let mut atoms = Vec::new();
        for row in big.removable_corners() {
            let small = big.remove_cell(row).expect("removable corner");
            let p = edge_weight(&small, &self.alpha, row)? * &self.values[&small] / dim_big;
            atoms.push(Atom { row, p });
        }
        Ok(GrowthKernel {
            base: big.clone(),
            alpha: self.alpha.clone(),
            direction: Direction::Down,
            atoms,
        })
    }
}

/// `c_row(lambda)`, the Pieri coefficient of the edge adding a cell in `row`.
fn edge_weight(la: &Partition, alpha: &Rational, row: usize) -> Result<Rational> {
    pieri_coefficients(la, alpha)?
        .into_iter()
        .find(|r| r.row == row)
        .map(|r| r.coefficient)
        .ok_or_else(|| Error::InvalidParameter(format!("row {row} is not addable to {la}")))
}

pub fn dimension(la: &Partition, table: &DimensionTable) -> Option<Rational> {
    table.get(la).cloned()
}

/// `M_r = sum_atoms content^r p_lambda`.
pub fn exact_transition_moment(la: &Partition, alpha: &Rational, r: u32) -> Result<Rational> {
    Ok(transition_kernel(la, alpha)?.moment(r))
}

/// The co-transition moment computed directly and as
/// `(1/|Lambda|) sum_k (-1)^{r-k} C(r,k) sigma_k(Lambda)`.
pub fn exact_cotransition_moment(big: &Partition, alpha: &Rational, r: u32) -> Result<(Rational, Rational)> {
    let direct = cotransition_kernel(big, alpha)?.moment(r);
    let mut via = Rational::zero();
    for k in 0..=r {
        let term = binomial_int(r as i64, k as i64) * sigma_r_direct(big, alpha, k)?;
        if (r - k).is_multiple_of(2) {
            via += term;
        } else {
            via -= term;
        }
    }
    Ok((direct, via / int(big.weight() as i64)))
}

/// Number of standard tableaux of every shape of weight `<= n_max`, by
/// `f_Lambda = sum_{lambda -> Lambda} f_lambda`.
pub fn tableau_counts(n_max: u32) -> HashMap<Partition, BigInt> {
    let mut f = HashMap::new();
    f.insert(Partition::empty(), BigInt::one());
    for n in 1..=n_max {
        for big in enumerate_partitions(n) {
            let v: BigInt = big
                .removable_corners()
                .into_iter()
                .map(|row| f[&big.remove_cell(row).expect("removable corner")].clone())
                .sum();
            f.insert(big, v);
        }
    }
    f
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlancherelReport {
    pub n_max: u32,
    pub kernels_checked: usize,
    pub mismatches: Vec<String>,
}

/// At `alpha = 1`, compares `p_lambda(Lambda) = f_Lambda / (|Lambda| f_lambda)`
/// and `q_Lambda(lambda) = f_lambda / f_Lambda` with the kernels.
pub fn plancherel_check(n_max: u32) -> Result<PlancherelReport> {
    let f = tableau_counts(n_max + 1);
    let one = int(1);
    let fr = |la: &Partition| Rational::from_integer(f[la].clone());
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for la in partitions_up_to(n_max) {
        for atom in transition_kernel(&la, &one)?.atoms {
            let big = la.add_cell(atom.row).expect("addable");
            let expect = fr(&big) / (fr(&la) * int(big.weight() as i64));
            if atom.p != expect {
                mismatches.push(format!("p_{la}({big}) = {} != {expect}", atom.p));
            }
        }
        checked += 1;
        if !la.is_empty() {
            for atom in cotransition_kernel(&la, &one)?.atoms {
                let small = la.remove_cell(atom.row).expect("removable");
                let expect = fr(&small) / fr(&la);
                if atom.p != expect {
                    mismatches.push(format!("q_{la}({small}) = {} != {expect}", atom.p));
                }
            }
            checked += 1;
        }
    }
    Ok(PlancherelReport {
        n_max,
        kernels_checked: checked,
        mismatches,
    })
}

/// A kernel prepared for sampling: row `i` is chosen when a uniform 64-bit
/// draw `u` satisfies `u < ceil(cum_i * 2^64)`, which compares `u / 2^64`
/// with the exact cumulative probability.
#[derive(Clone, Debug)]
struct Sampler {
    rows: Vec<usize>,
    thresholds: Vec<u128>,
}

impl Sampler {
    fn new(kernel: &GrowthKernel) -> Self {
        let scale = Rational::from_integer(BigInt::one() << 64);
        let mut cum = Rational::zero();
        let mut rows = Vec::new();
        let mut thresholds = Vec::new();
        for a in &kernel.atoms {
            cum += &a.p;
            let t = (&cum * &scale).ceil().to_integer();
            rows.push(a.row);
            thresholds.push(t.to_u128().expect("threshold fits in 65 bits"));
        }
        Sampler { rows, thresholds }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        let u = rng.next_u64() as u128;
        let idx = self
            .thresholds
            .iter()
            .position(|&t| u < t)
            .unwrap_or(self.rows.len() - 1);
        self.rows[idx]
    }
}

struct SamplerCache {
    alpha: Rational,
    map: RwLock<HashMap<Partition, Arc<Sampler>>>,
}

impl SamplerCache {
    fn new(alpha: &Rational) -> Self {
        SamplerCache {
            alpha: alpha.clone(),
            map: RwLock::new(HashMap::new()),
        }
    }

    fn get(&self, la: &Partition) -> Result<Arc<Sampler>> {
        if let Some(s) = self.map.read().expect("sampler cache poisoned").get(la) {
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(Sampler::new(&transition_kernel(la, &self.alpha)?));
        Ok(Arc::clone(
            self.map
                .write()
                .expect("sampler cache poisoned")
                .entry(la.clone())
                .or_insert(s),
        ))
    }
}

fn path_rng(seed: u64, path: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng
}

/// Empirical against exact value of one raw moment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub r: u32,
    pub empirical: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub exact: Rational,
    pub standard_error: f64,
    pub within_4se: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleStats {
    pub samples: u64,
    pub seed: u64,
    pub moments: Vec<MomentEstimate>,
}

impl SampleStats {
    pub fn all_within_4se(&self) -> bool {
        self.moments.iter().all(|m| m.within_4se)
    }

    fn from_contents(contents: &[Rational], exact: Vec<Rational>, seed: u64) -> Self {
        let n = contents.len() as u64;
        let moments = exact
            .into_iter()
            .enumerate()
            .map(|(r, exact)| {
                let mut sum = Rational::zero();
                let mut sum_sq = Rational::zero();
                for c in contents {
                    let x = rat_pow(c, r as i64);
                    sum_sq += &x * &x;
                    sum += x;
                }
                let nn = int(n as i64);
                let mean = &sum / &nn;
                let var = if n > 1 {
                    (sum_sq - &sum * &sum / &nn) / int(n as i64 - 1)
                } else {
                    Rational::zero()
                };
                let se = (to_f64(&var) / n as f64).sqrt();
                let within = if var.is_zero() {
                    mean == exact
                } else {
                    to_f64(&(&mean - &exact)).abs() <= 4.0 * se
                };
                MomentEstimate {
                    r: r as u32,
                    empirical: to_f64(&mean),
                    exact,
                    standard_error: se,
                    within_4se: within,
                }
            })
            .collect();
        SampleStats {
            samples: n,
            seed,
            moments,
        }
    }
}

/// Draws the next cell from `la` once per path and compares the raw moments
/// `r <= r_max` of its content with `s_r(la)`.
pub fn sample_next_cell(la: &Partition, alpha: &Rational, paths: u64, seed: u64, r_max: u32) -> Result<SampleStats> {
    let kernel = transition_kernel(la, alpha)?;
    let sampler = Sampler::new(&kernel);
    let contents: Vec<Rational> = (0..paths)
        .into_par_iter()
        .map(|i| kernel.content(sampler.draw(&mut path_rng(seed, i))))
        .collect();
    let exact = (0..=r_max).map(|r| kernel.moment(r)).collect();
    Ok(SampleStats::from_contents(&contents, exact, seed))
}

/// What `sample_growth` reports besides the moment statistics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GrowthOutput {
    pub occupancy: bool,
    pub paths: bool,
    pub path_cap: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Occupancy {
    pub partition: Partition,
    pub count: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub exact_probability: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthSample {
    pub steps: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub alpha: Rational,
    pub stats: SampleStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub occupancy: Option<Vec<Occupancy>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<String>>,
}

/// Exact law of the shape after `steps` transitions from the empty partition.
pub fn exact_distribution(alpha: &Rational, steps: u32) -> Result<BTreeMap<Partition, Rational>> {
    let mut dist = BTreeMap::new();
    dist.insert(Partition::empty(), Rational::one());
    for _ in 0..steps {
        let mut next = BTreeMap::new();
        for (la, p) in &dist {
            for atom in transition_kernel(la, alpha)?.atoms {
                let big = la.add_cell(atom.row).expect("addable");
                *next.entry(big).or_insert_with(Rational::zero) += p * &atom.p;
            }
        }
        dist = next;
    }
    Ok(dist)
}

/// Simulates `paths` growth chains of `steps` transitions from the empty
/// partition. Moments are those of the content added at the last step,
/// against `E[s_r(lambda^{steps-1})]` under the exact law.
pub fn sample_growth(
    steps: u32,
    alpha: &Rational,
    paths: u64,
    seed: u64,
    r_max: u32,
    output: GrowthOutput,
) -> Result<GrowthSample> {
    if steps == 0 || paths == 0 {
        return Err(Error::InvalidParameter("steps and paths must be positive".into()));
    }
    check_alpha(alpha)?;
    let cache = SamplerCache::new(alpha);
    let runs: Vec<Result<(Vec<Partition>, Rational)>> = (0..paths)
        .into_par_iter()
        .map(|i| {
            let mut rng = path_rng(seed, i);
            let mut la = Partition::empty();
            let mut trail = vec![la.clone()];
            let mut last = Rational::zero();
            for _ in 0..steps {
                let row = cache.get(&la)?.draw(&mut rng);
                last = added_content(&la, alpha, row);
                la = la.add_cell(row).expect("addable");
                if output.paths && i < output.path_cap {
                    trail.push(la.clone());
                }
            }
            if !(output.paths && i < output.path_cap) {
                trail = vec![la];
            }
            Ok((trail, last))
        })
        .collect();
    let mut finals = Vec::with_capacity(paths as usize);
    let mut contents = Vec::with_capacity(paths as usize);
    let mut lines = Vec::new();
    for (i, run) in runs.into_iter().enumerate() {
        let (trail, c) = run?;
        if output.paths && (i as u64) < output.path_cap {
            lines.push(trail.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("|"));
        }
        finals.push(trail.last().expect("nonempty trail").clone());
        contents.push(c);
    }
    let before = exact_distribution(alpha, steps - 1)?;
    let mut exact = Vec::new();
    for r in 0..=r_max {
        let mut e = Rational::zero();
        for (la, p) in &before {
            e += p * exact_transition_moment(la, alpha, r)?;
        }
        exact.push(e);
    }
    let stats = SampleStats::from_contents(&contents, exact, seed);
    let occupancy = if output.occupancy {
        let law = exact_distribution(alpha, steps)?;
        let mut counts: BTreeMap<Partition, u64> = law.keys().map(|k| (k.clone(), 0)).collect();
        for f in finals {
            *counts.entry(f).or_insert(0) += 1;
        }
        Some(
            counts
                .into_iter()
                .map(|(partition, count)| Occupancy {
                    exact_probability: law.get(&partition).cloned().unwrap_or_else(Rational::zero),
                    partition,
                    count,
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(GrowthSample {
        steps,
        alpha: alpha.clone(),
        stats,
        occupancy,
        paths: output.paths.then_some(lines),
    })
}
