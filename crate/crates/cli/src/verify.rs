//! Invariant suites behind `qtemp verify`.

use std::fmt;
use std::str::FromStr;

use qtemp_core::models::{
    build_two_qubit_xy, reference_grid, sample_full_rank, sample_gibbs, sample_gue, sample_inverted_pair,
    sample_orthogonal, sample_passive_pair,
};
use qtemp_core::{
    generalized_gibbs_decomposition, hamiltonian_unit, heat_and_work, helmholtz_sum, inverse_temperature,
    rotate_tail, verify_universal_relation, von_neumann_entropy, Clip, DensityMatrix, HermitianOperator,
    OperatorBasis,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Gibbs,
    Passivity,
    BasisInvariance,
    Extension,
    Relation,
    Heat,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Gibbs, Suite::Passivity, Suite::BasisInvariance, Suite::Extension, Suite::Relation, Suite::Heat];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gibbs => "gibbs",
            Suite::Passivity => "passivity",
            Suite::BasisInvariance => "basis-invariance",
            Suite::Extension => "extension",
            Suite::Relation => "relation",
            Suite::Heat => "heat",
        }
    }

    pub fn run(self, seed: u64, count: usize) -> Result<Outcome, CliError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            Suite::Gibbs => gibbs(&mut rng, count),
            Suite::Passivity => passivity(&mut rng, count),
            Suite::BasisInvariance => basis_invariance(&mut rng, count),
            Suite::Extension => extension(&mut rng, count),
            Suite::Relation => relation(),
            Suite::Heat => heat(&mut rng, count),
        }
    }
}

/// Parses a suite name; `all` expands to every suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>, CliError> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    name.parse().map(|s| vec![s])
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| CliError::Input(format!("unknown suite {s:?}")))
    }
}

/// Pass/fail counts and the worst value of the suite's metric.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub suite: Suite,
    pub checked: usize,
    pub failed: usize,
    pub metric: &'static str,
    pub worst: f64,
    pub tolerance: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}/{} passed, {} = {:.3e} ({})",
            self.suite.name(),
            self.checked - self.failed,
            self.checked,
            self.metric,
            self.worst,
            self.tolerance
        )
    }
}

struct Tally {
    checked: usize,
    failed: usize,
    worst: f64,
}

impl Tally {
    fn max() -> Self {
        Tally { checked: 0, failed: 0, worst: 0.0 }
    }

    fn min() -> Self {
        Tally { checked: 0, failed: 0, worst: f64::INFINITY }
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    fn outcome(self, suite: Suite, metric: &'static str, tolerance: String) -> Outcome {
        Outcome { suite, checked: self.checked, failed: self.failed, metric, worst: self.worst, tolerance }
    }
}

fn beta(rho: &DensityMatrix, h: &HermitianOperator, clip: Clip) -> Result<f64, CliError> {
    Ok(inverse_temperature(rho, h, clip)?.beta.to_f64())
}

fn gibbs(rng: &mut ChaCha8Rng, count: usize) -> Result<Outcome, CliError> {
    let mut t = Tally::max();
    for k in 0..count {
        let d = 2 + k % 5;
        let mut b: f64 = 0.0;
        while b.abs() < 1e-3 {
            b = rng.random_range(-3.0..3.0);
        }
        let (h, rho) = sample_gibbs(d, b, rng)?;
        let err = (beta(&rho, &h, Clip::default())? - b).abs();
        t.worst = t.worst.max(err);
        t.record(err <= 1e-9);
    }
    Ok(t.outcome(Suite::Gibbs, "max |beta - beta_hat|", "tol 1e-9".into()))
}

fn passivity(rng: &mut ChaCha8Rng, count: usize) -> Result<Outcome, CliError> {
    let mut t = Tally::min();
    for k in 0..count {
        let (h, rho) = sample_passive_pair(2 + k % 5, rng)?;
        let b = beta(&rho, &h, Clip::default())?;
        t.worst = t.worst.min(b);
        t.record(b >= -1e-12);
    }
    let mut negative = false;
    for k in 0..count {
        let (h, rho) = sample_inverted_pair(2 + k % 5, rng)?;
        negative |= beta(&rho, &h, Clip::default())? < 0.0;
    }
    t.record(negative);
    Ok(t.outcome(
        Suite::Passivity,
        "min beta_hat",
        format!("floor -1e-12; inverted pairs with beta_hat < 0: {}", if negative { "found" } else { "none" }),
    ))
}

fn basis_invariance(rng: &mut ChaCha8Rng, count: usize) -> Result<Outcome, CliError> {
    let mut t = Tally::max();
    for k in 0..count {
        let d = 2 + k % 4;
        let h = sample_gue(d, rng);
        let rho = sample_full_rank(d, rng)?;
        let basis = OperatorBasis::for_hamiltonian(&h)?;
        let rotated = rotate_tail(&basis, &sample_orthogonal(d * d - 2, rng))?;
        let db = (generalized_gibbs_decomposition(&rho, &h, &basis)?.beta
            - generalized_gibbs_decomposition(&rho, &h, &rotated)?.beta)
            .abs();
        let ds = (helmholtz_sum(&rho, &basis)? - helmholtz_sum(&rho, &rotated)?).abs();
        let err = db.max(ds);
        t.worst = t.worst.max(err);
        t.record(err <= 1e-10);
    }
    Ok(t.outcome(Suite::BasisInvariance, "max change of beta / Helmholtz sum", "tol 1e-10".into()))
}

fn extension(rng: &mut ChaCha8Rng, count: usize) -> Result<Outcome, CliError> {
    let mut t = Tally::max();
    for k in 0..count {
        let d = 2 + k % 4;
        let h = sample_gue(d, rng);
        let rho = sample_full_rank(d, rng)?;
        let b0 = beta(&rho, &h, Clip::default())?;
        let mut err: f64 = 0.0;
        for dp in [2, 3] {
            let rho_ext = rho.kron(&DensityMatrix::maximally_mixed(dp))?;
            let h_ext = h.kron(&HermitianOperator::identity(dp))?;
            err = err.max((beta(&rho_ext, &h_ext, Clip::default())? - b0).abs());
        }
        t.worst = t.worst.max(err);
        t.record(err <= 1e-10);
    }
    Ok(t.outcome(Suite::Extension, "max |beta_ext - beta|", "tol 1e-10".into()))
}

/// Floor for the grid: the coldest points have populations near 1e-12 and
/// every grid state is full rank.
pub const GRID_CLIP: f64 = 1e-300;

fn relation() -> Result<Outcome, CliError> {
    let clip = Clip::new(GRID_CLIP)?;
    let mut t = Tally::max();
    for p in reference_grid() {
        let r = verify_universal_relation(&build_two_qubit_xy(&p)?, clip)?;
        let c = &r.coefficients;
        let scale = (c.k_sb * p.beta).abs().max(1.0);
        let residual = r.residual.to_f64().abs() / scale;
        let temps = [r.beta_sb.to_f64(), r.beta_tilde_s.to_f64(), r.beta_tilde_b.to_f64(), -r.beta_chi.to_f64()];
        let temp_err = temps.iter().map(|b| (b - p.beta).abs()).fold(0.0, f64::max);
        let identity = (c.k_sb - c.b_s - c.b_b - c.k_chi).abs();
        t.worst = t.worst.max(residual);
        t.record(residual <= 1e-8 && temp_err <= 1e-9 && identity <= 1e-12);
    }
    Ok(t.outcome(
        Suite::Relation,
        "max residual / max(|K_SB beta|, 1)",
        "tol 1e-8; temperatures within 1e-9 of beta; K_SB = b_S + b_B + K_chi within 1e-12".into(),
    ))
}

/// `|Delta S / dQ_entropic - beta_hat|` for a step `t` along `-O_1` from a
/// state that commutes with `H`.
fn heat_route_error(rho: &DensityMatrix, h: &HermitianOperator, b: f64, t: f64) -> Result<f64, CliError> {
    let dir = hamiltonian_unit(h)?.op.scale(-1.0);
    let next = DensityMatrix::from_operator(&rho.operator().axpy(t, &dir)?)?;
    let hw = heat_and_work(rho, &dir.scale(t), h, &HermitianOperator::zeros(h.dim()))?;
    let ds = von_neumann_entropy(&next) - von_neumann_entropy(rho);
    Ok((ds / hw.dq_entropic - b).abs())
}

fn heat(rng: &mut ChaCha8Rng, count: usize) -> Result<Outcome, CliError> {
    let mut t = Tally { checked: 0, failed: 0, worst: f64::NAN };
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..count {
        let d = 2 + k % 4;
        let (h, passive) = sample_passive_pair(d, rng)?;
        // keep the path away from the boundary of the state space
        let mixed = passive.operator().scale(0.95).add(&HermitianOperator::identity(d).scale(0.05 / d as f64))?;
        let rho = DensityMatrix::from_operator(&mixed)?;
        let b = beta(&rho, &h, Clip::default())?;
        let ratio = heat_route_error(&rho, &h, b, 1e-3)? / heat_route_error(&rho, &h, b, 1e-4)?;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        t.record((5.0..=20.0).contains(&ratio));
    }
    t.worst = if (lo - 10.0).abs() > (hi - 10.0).abs() { lo } else { hi };
    Ok(t.outcome(Suite::Heat, "error ratio between steps 1e-3 and 1e-4 farthest from 10", "range [5, 20]".into()))
}

/// Runs the suites in order and renders the summary.
pub fn run_suites(suites: &[Suite], seed: u64, count: usize) -> Result<(String, bool), CliError> {
    let mut out = String::new();
    let mut all = true;
    for s in suites {
        let o = s.run(seed, count)?;
        all &= o.passed();
        out.push_str(&o.to_string());
        out.push('\n');
    }
    out.push_str(if all { "all checks passed\n" } else { "some checks FAILED\n" });
    Ok((out, all))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(parse_suites("all").unwrap().len(), 6);
        assert!(parse_suites("everything").is_err());
    }

    #[test]
    fn small_runs_pass() {
        for s in Suite::ALL {
            let o = s.run(3, 10).unwrap();
            assert!(o.passed(), "{o}");
        }
    }
}
