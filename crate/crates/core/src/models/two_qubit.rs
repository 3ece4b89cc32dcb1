//! Two qubits with an XY exchange coupling in a global Gibbs state.
//!
//! `H_S = (omega_S/2) sigma_z`, `H_B = (omega_B/2) sigma_z`,
//! `H_I = lambda (sigma+ ⊗ sigma- + sigma- ⊗ sigma+)` with
//! `sigma± = (sigma_x ± i sigma_y)/2`. Under this convention
//! `eta = sqrt(Delta_-^2 + lambda^2)`.

use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteSystem;
use crate::error::{Error, Result};
use crate::hermitian::{pauli, tensor_product, HermitianOperator};

/// Tag attached to every number derived under the raising/lowering convention above.
pub const CONVENTION: &str = "sigma_pm = (sigma_x +- i sigma_y)/2";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitXYParams {
    #[serde(rename = "omega_S")]
    pub omega_s: f64,
    #[serde(rename = "omega_B")]
    pub omega_b: f64,
    pub lambda: f64,
    pub beta: f64,
}

impl TwoQubitXYParams {
    pub fn new(omega_s: f64, omega_b: f64, lambda: f64, beta: f64) -> Result<Self> {
        let p = TwoQubitXYParams { omega_s, omega_b, lambda, beta };
        p.validate()?;
        Ok(p)
    }

    /// Requires `omega_S >= omega_B >= 0`, `lambda > 0` and finite `beta`.
    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega_s, self.omega_b, self.lambda, self.beta].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::Validation("model parameters must be finite".into()));
        }
        if !(self.omega_s >= self.omega_b && self.omega_b >= 0.0) {
            return Err(Error::Validation(format!(
                "need omega_S >= omega_B >= 0, got omega_S = {}, omega_B = {}",
                self.omega_s, self.omega_b
            )));
        }
        if self.lambda <= 0.0 {
            return Err(Error::Validation(format!("need lambda > 0, got {}", self.lambda)));
        }
        Ok(())
    }

    pub fn delta_plus(&self) -> f64 {
        (self.omega_s + self.omega_b) / 2.0
    }

    pub fn delta_minus(&self) -> f64 {
        (self.omega_s - self.omega_b) / 2.0
    }

    pub fn eta(&self) -> f64 {
        self.delta_minus().hypot(self.lambda)
    }
}

/// `(H_S, H_B, H_I)` of the model.
pub fn two_qubit_xy_hamiltonians(
    p: &TwoQubitXYParams,
) -> Result<(HermitianOperator, HermitianOperator, HermitianOperator)> {
    p.validate()?;
    let h_s = HermitianOperator::new(pauli::z().scale(p.omega_s / 2.0))?;
    let h_b = HermitianOperator::new(pauli::z().scale(p.omega_b / 2.0))?;
    let hop = tensor_product(&pauli::raise(), &pauli::lower())? + tensor_product(&pauli::lower(), &pauli::raise())?;
    let h_i = HermitianOperator::new(hop.scale(p.lambda))?;
    Ok((h_s, h_b, h_i))
}

pub fn build_two_qubit_xy(p: &TwoQubitXYParams) -> Result<BipartiteSystem> {
    let (h_s, h_b, h_i) = two_qubit_xy_hamiltonians(p)?;
    BipartiteSystem::thermal(h_s, h_b, h_i, p.beta)
}

/// Analytic spectrum, marginal populations and local temperatures.
///
/// `mu1_plus` is the population of the lower level of S, `mu2_minus` that
/// of the lower level of B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoQubitClosedForm {
    pub z: f64,
    /// `(Delta_+, eta, -eta, -Delta_+)`.
    pub energies: [f64; 4],
    pub zeta_plus: f64,
    pub zeta_minus: f64,
    pub mu1_plus: f64,
    pub mu1_minus: f64,
    pub mu2_plus: f64,
    pub mu2_minus: f64,
    /// `None` when `omega_S = 0`.
    pub beta_s: Option<f64>,
    /// `None` when `omega_B = 0`.
    pub beta_b: Option<f64>,
    pub h_s: f64,
    pub h_b: f64,
    pub h_i: f64,
    pub h_sb: f64,
    pub h_chi: f64,
}

pub fn closed_form(p: &TwoQubitXYParams) -> Result<TwoQubitClosedForm> {
    p.validate()?;
    let (dp, dm, eta, b) = (p.delta_plus(), p.delta_minus(), p.eta(), p.beta);
    let z = 2.0 * ((b * dp).cosh() + (b * eta).cosh());
    let (ch, sh) = ((b * eta).cosh(), (b * eta).sinh());
    let r = dm / eta;
    let mu1_plus = ((b * dp).exp() + ch + r * sh) / z;
    let mu1_minus = ((-b * dp).exp() + ch - r * sh) / z;
    let mu2_plus = ((-b * dp).exp() + ch + r * sh) / z;
    let mu2_minus = ((b * dp).exp() + ch - r * sh) / z;
    let beta_s = (p.omega_s > 0.0).then(|| (mu1_plus / mu1_minus).ln() / p.omega_s);
    let beta_b = (p.omega_b > 0.0).then(|| (mu2_minus / mu2_plus).ln() / p.omega_b);
    let sqrt2 = std::f64::consts::SQRT_2;
    Ok(TwoQubitClosedForm {
        z,
        energies: [dp, eta, -eta, -dp],
        zeta_plus: ((1.0 + r) / 2.0).sqrt(),
        zeta_minus: ((1.0 - r) / 2.0).sqrt(),
        mu1_plus,
        mu1_minus,
        mu2_plus,
        mu2_minus,
        beta_s,
        beta_b,
        h_s: p.omega_s / sqrt2,
        h_b: p.omega_b / sqrt2,
        h_i: sqrt2 * p.lambda,
        h_sb: (p.omega_s * p.omega_s + p.omega_b * p.omega_b + 2.0 * p.lambda * p.lambda).sqrt(),
        h_chi: 1.0,
    })
}

/// The 27-point grid `beta x lambda x (omega_S, omega_B)`.
pub fn reference_grid() -> Vec<TwoQubitXYParams> {
    let mut out = Vec::with_capacity(27);
    for &beta in &[0.2, 1.0, 5.0] {
        for &lambda in &[0.05, 0.2, 1.0] {
            for &(omega_s, omega_b) in &[(2.0, 1.0), (1.0, 1.0), (5.0, 0.5)] {
                out.push(TwoQubitXYParams { omega_s, omega_b, lambda, beta });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{eig_hermitian, max_abs, DensityMatrix};
    use approx::assert_abs_diff_eq;

    #[test]
    fn parameter_validation() {
        assert!(TwoQubitXYParams::new(1.0, 2.0, 0.1, 1.0).is_err());
        assert!(TwoQubitXYParams::new(1.0, -0.1, 0.1, 1.0).is_err());
        assert!(TwoQubitXYParams::new(1.0, 0.5, 0.0, 1.0).is_err());
        assert!(TwoQubitXYParams::new(1.0, 0.5, 0.1, f64::NAN).is_err());
        assert!(TwoQubitXYParams::new(1.0, 0.0, 0.1, 1.0).is_ok());
    }

    #[test]
    fn gibbs_state_commutes() {
        let p = TwoQubitXYParams::new(2.0, 1.0, 0.1, 1.0).unwrap();
        let sys = build_two_qubit_xy(&p).unwrap();
        let rho = sys.rho_sb().matrix();
        let h = sys.h_sb().unwrap();
        assert_abs_diff_eq!(sys.rho_sb().operator().trace(), 1.0, epsilon = 1e-14);
        assert!(max_abs(&(rho * h.matrix() - h.matrix() * rho)) < 1e-12);
    }

    #[test]
    fn spectrum_matches_diagonalization() {
        let p = TwoQubitXYParams::new(2.0, 1.0, 0.3, 1.0).unwrap();
        let h = build_two_qubit_xy(&p).unwrap().h_sb().unwrap();
        let numeric = eig_hermitian(&h).unwrap().eigenvalues;
        let mut analytic = closed_form(&p).unwrap().energies.to_vec();
        analytic.sort_by(f64::total_cmp);
        for (a, b) in numeric.iter().zip(&analytic) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn decouples_at_tiny_lambda() {
        // the exchange coherence is first order in lambda, bounded by beta * lambda
        for lambda in [1e-8, 1e-11] {
            let p = TwoQubitXYParams::new(2.0, 1.0, lambda, 1.3).unwrap();
            let sys = build_two_qubit_xy(&p).unwrap();
            let (h_s, h_b, _) = two_qubit_xy_hamiltonians(&p).unwrap();
            let product = DensityMatrix::gibbs(&h_s, 1.3).unwrap().kron(&DensityMatrix::gibbs(&h_b, 1.3).unwrap()).unwrap();
            let dev = max_abs(&(sys.rho_sb().matrix() - product.matrix()));
            assert!(dev <= (1.3 * lambda).max(1e-14), "lambda {lambda}: deviation {dev:e}");
        }
        let p = TwoQubitXYParams::new(2.0, 1.0, 1e-8, 1.3).unwrap();
        let c = closed_form(&p).unwrap();
        assert_abs_diff_eq!(c.beta_s.unwrap(), 1.3, epsilon = 1e-10);
        assert_abs_diff_eq!(c.beta_b.unwrap(), 1.3, epsilon = 1e-10);
    }

    #[test]
    fn equal_spacings_give_equal_temperatures() {
        let c = closed_form(&TwoQubitXYParams::new(1.0, 1.0, 0.4, 2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(c.mu1_plus / c.mu1_minus, c.mu2_minus / c.mu2_plus, epsilon = 1e-12);
        assert_abs_diff_eq!(c.beta_s.unwrap(), c.beta_b.unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn normalizations() {
        for p in reference_grid() {
            let c = closed_form(&p).unwrap();
            assert_abs_diff_eq!(c.mu1_plus + c.mu1_minus, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(c.mu2_plus + c.mu2_minus, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(c.zeta_plus.powi(2) + c.zeta_minus.powi(2), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn missing_bath_splitting_leaves_beta_b_undefined() {
        let c = closed_form(&TwoQubitXYParams::new(1.0, 0.0, 0.4, 2.0).unwrap()).unwrap();
        assert!(c.beta_b.is_none());
        assert!(c.beta_s.is_some());
    }
}
