//! Leading-order asymptotics of weighted path counts and tensor-power
//! multiplicities, evaluated in log space.
//!
//! Every estimate is `log_value = N * exponent_per_step + linear_term + log_prefactor`
//! with the three parts kept separately. The common lattice prefactor is
//! `-(m/2) log(2 pi N) + log |Pi| - (1/2) log det A`, where `A` is the Hessian of
//! `log k` in the same lattice coordinates as the steps.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::dual::{eval_character, invert_interior, log_total_weight, SolverOptions};
use crate::error::{Error, Result};
use crate::lattice::{Location, WeightedStepSet};
use crate::numeric::{dot, int, ln_biguint, norm, rational_to_f64};
use crate::roots::WeightDiagram;

/// Below this the Weyl denominator counts as zero and the leading term vanishes.
pub const DEGENERATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "CL")]
    CL,
    #[serde(rename = "MD")]
    MD,
    #[serde(rename = "SD")]
    SD,
    #[serde(rename = "IRRED_SD")]
    IrredSD,
    #[serde(rename = "IRRED_CL")]
    IrredCL,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::CL => "CL",
            Regime::MD => "MD",
            Regime::SD => "SD",
            Regime::IrredSD => "IRRED_SD",
            Regime::IrredCL => "IRRED_CL",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticEstimate {
    pub n: u64,
    pub log_value: f64,
    pub exponent_per_step: f64,
    pub linear_term: f64,
    pub log_prefactor: f64,
    pub regime: Regime,
    pub error_order: String,
    /// Set when the leading coefficient vanishes (Weyl denominator zero).
    pub degenerate_leading_term: bool,
    /// Dual point used by the estimate, in lattice coordinates.
    pub tau: Vec<f64>,
}

impl AsymptoticEstimate {
    fn assemble(
        n: u64,
        exponent_per_step: f64,
        linear_term: f64,
        log_prefactor: f64,
        regime: Regime,
        error_order: String,
        tau: Vec<f64>,
    ) -> Self {
        AsymptoticEstimate {
            n,
            log_value: n as f64 * exponent_per_step + linear_term + log_prefactor,
            exponent_per_step,
            linear_term,
            log_prefactor,
            regime,
            error_order,
            degenerate_leading_term: false,
            tau,
        }
    }

    /// `exact / estimate`, given the natural log of the exact value.
    pub fn ratio(&self, log_exact: f64) -> f64 {
        (log_exact - self.log_value).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    /// CL when `|d| <= cl_cut * sqrt(N)`.
    pub cl_cut: f64,
    /// MD when `|d| <= md_cut * N^md_smax` and `gamma/N` is interior.
    pub md_cut: f64,
    pub md_smax: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds {
            cl_cut: 3.0,
            md_cut: 1.0,
            md_smax: 0.75,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeDecision {
    pub gamma: Vec<i64>,
    pub n: u64,
    /// `|gamma - N m*|` in lattice coordinates.
    pub distance: f64,
    /// `log(distance) / log N`; `None` when the distance is zero or `N = 1`.
    pub s_exponent: Option<f64>,
    pub interior: bool,
    pub regime: Regime,
}

/// Solver settings and regime cutoffs shared by all estimators.
#[derive(Debug, Clone, Copy, Default)]
pub struct Estimator {
    pub solver: SolverOptions,
    pub thresholds: RegimeThresholds,
}

fn lattice_prefactor(m: usize, n: u64, pi_order: u64, det: f64) -> f64 {
    -(m as f64 / 2.0) * (2.0 * PI * n as f64).ln() + (pi_order as f64).ln() - 0.5 * det.ln()
}

fn check_dim(s: &WeightedStepSet, v: &[i64]) -> Result<()> {
    if v.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: v.len(),
        });
    }
    Ok(())
}

fn deviation(s: &WeightedStepSet, gamma: &[i64], n: u64) -> Vec<f64> {
    s.center_of_mass_exact()
        .iter()
        .zip(gamma)
        .map(|(c, g)| *g as f64 - n as f64 * rational_to_f64(c))
        .collect()
}

fn s_exponent(distance: f64, n: u64) -> Option<f64> {
    (distance > 0.0 && n > 1).then(|| distance.ln() / (n as f64).ln())
}

fn clt_order(s: Option<f64>) -> String {
    let s = s.unwrap_or(0.0).max(0.0);
    if s <= 0.5 {
        format!("1+O(N^-(1-s)), s={s:.3}")
    } else if s <= 2.0 / 3.0 {
        format!("1+o(N^(3s-2)), s={s:.3}")
    } else {
        format!("outside the local CLT range, s={s:.3}")
    }
}

fn scaled_point(gamma: &[i64], n: u64) -> Vec<BigRational> {
    gamma.iter().map(|&g| int(g) / int(n as i64)).collect()
}

fn quad_inverse(a: &DMatrix<f64>, u: &[f64], v: &[f64]) -> f64 {
    let sol = match a.clone().cholesky() {
        Some(ch) => ch.solve(&DVector::from_column_slice(v)),
        None => a
            .clone()
            .lu()
            .solve(&DVector::from_column_slice(v))
            .expect("nonsingular Hessian"),
    };
    dot(u, sol.as_slice())
}

impl Estimator {
    /// Strong deviation along the ray `N alpha + f`, `alpha` an interior step.
    pub fn strong_deviation(
        &self,
        s: &WeightedStepSet,
        alpha: &[i64],
        f: &[i64],
        n: u64,
    ) -> Result<AsymptoticEstimate> {
        check_dim(s, alpha)?;
        check_dim(s, f)?;
        if s.step_index(alpha).is_none() {
            return Err(Error::NotInStepSet(alpha.to_vec()));
        }
        if s.classify_lattice_point(alpha)?.location != Location::Interior {
            return Err(Error::NotInterior);
        }
        if !s.difference_lattice().contains(f) {
            return Err(Error::FNotInDifferenceLattice(f.to_vec()));
        }
        let x: Vec<f64> = alpha.iter().map(|&a| a as f64).collect();
        let dp = invert_interior(s, &x, self.solver)?;
        let linear = -f.iter().zip(&dp.tau).map(|(a, t)| *a as f64 * t).sum::<f64>();
        Ok(AsymptoticEstimate::assemble(
            n,
            dp.delta,
            linear,
            lattice_prefactor(s.dim(), n, s.pi_order(), dp.hessian_det),
            Regime::SD,
            "1+O(N^-1)".into(),
            dp.tau,
        ))
    }

    /// Strong deviation at an arbitrary `gamma` with `gamma / N` interior.
    ///
    /// Uses the uniform form `e^{N delta(gamma/N)}` with the Hessian at `gamma / N`;
    /// on a ray `gamma = N alpha` it coincides with [`Estimator::strong_deviation`].
    pub fn strong_deviation_auto(&self, s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<AsymptoticEstimate> {
        let mut est = self.at_scaled_point(s, gamma, n)?;
        est.regime = Regime::SD;
        est.error_order = "1+O(N^-1)".into();
        Ok(est)
    }

    fn at_scaled_point(&self, s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<AsymptoticEstimate> {
        check_dim(s, gamma)?;
        if !s.support_test(n, gamma) {
            return Err(Error::SupportViolation);
        }
        if s.classify_point(&scaled_point(gamma, n))?.location != Location::Interior {
            return Err(Error::NotInterior);
        }
        let x: Vec<f64> = gamma.iter().map(|&g| g as f64 / n as f64).collect();
        let dp = invert_interior(s, &x, self.solver)?;
        Ok(AsymptoticEstimate::assemble(
            n,
            dp.delta,
            0.0,
            lattice_prefactor(s.dim(), n, s.pi_order(), dp.hessian_det),
            Regime::MD,
            String::new(),
            dp.tau,
        ))
    }

    /// Moderate deviation: the exponent and Hessian taken at `gamma / N` itself.
    pub fn moderate_deviation(&self, s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<AsymptoticEstimate> {
        let mut est = self.at_scaled_point(s, gamma, n)?;
        let dist = norm(&deviation(s, gamma, n));
        let s_exp = s_exponent(dist, n).unwrap_or(0.0).max(0.0);
        est.error_order = format!("1+O(N^-(1-s)), s={s_exp:.3}");
        Ok(est)
    }

    /// Local central limit with the fixed Hessian at the center of mass.
    pub fn central_limit(&self, s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<AsymptoticEstimate> {
        check_dim(s, gamma)?;
        if !s.support_test(n, gamma) {
            return Err(Error::SupportViolation);
        }
        let ev = eval_character(s, &vec![0.0; s.dim()])?;
        let d = deviation(s, gamma, n);
        let quad = quad_inverse(&ev.hessian_log_k, &d, &d);
        let det = ev.hessian_log_k.determinant();
        Ok(AsymptoticEstimate::assemble(
            n,
            log_total_weight(s),
            -quad / (2.0 * n as f64),
            lattice_prefactor(s.dim(), n, s.pi_order(), det),
            Regime::CL,
            clt_order(s_exponent(norm(&d), n)),
            vec![0.0; s.dim()],
        ))
    }

    pub fn classify(&self, s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<RegimeDecision> {
        check_dim(s, gamma)?;
        let distance = norm(&deviation(s, gamma, n));
        let interior = s.classify_point(&scaled_point(gamma, n))?.location == Location::Interior;
        let nf = n as f64;
        let t = &self.thresholds;
        let regime = if distance <= t.cl_cut * nf.sqrt() {
            Regime::CL
        } else if distance <= t.md_cut * nf.powf(t.md_smax) && interior {
            Regime::MD
        } else {
            Regime::SD
        };
        Ok(RegimeDecision {
            gamma: gamma.to_vec(),
            n,
            distance,
            s_exponent: s_exponent(distance, n),
            interior,
            regime,
        })
    }

    /// Runs the lattice-path estimator selected by [`Estimator::classify`].
    pub fn auto(&self, s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<AsymptoticEstimate> {
        match self.classify(s, gamma, n)?.regime {
            Regime::CL => self.central_limit(s, gamma, n),
            Regime::MD => self.moderate_deviation(s, gamma, n),
            _ => self.strong_deviation_auto(s, gamma, n),
        }
    }

    /// Shifted lattice point `nu - N lambda` of a weight of the tensor power.
    fn shifted(d: &WeightDiagram, nu: &[i64], n: u64) -> Result<Vec<i64>> {
        d.root.check_weight(nu)?;
        d.shifted(nu, n)
            .ok_or_else(|| Error::CoordinateMismatch(format!("{nu:?} - N*lambda is not in the root subspace")))
    }

    /// Weight multiplicity `m_N(lambda; nu)` via the step set of `M_lambda - lambda`.
    pub fn weight_multiplicity(&self, d: &WeightDiagram, nu: &[i64], n: u64) -> Result<AsymptoticEstimate> {
        let gamma = Self::shifted(d, nu, n)?;
        self.auto(&d.step_set, &gamma, n)
    }

    /// Irreducible multiplicity `a_N(lambda; N nu)` for a dominant weight `nu` of
    /// `V_lambda` in the interior of its weight polytope.
    pub fn irreducible_sd(&self, d: &WeightDiagram, nu: &[i64], n: u64) -> Result<AsymptoticEstimate> {
        let r = &d.root;
        r.check_weight(nu)?;
        if !r.is_dominant(nu) {
            return Err(Error::NotDominant(nu.to_vec()));
        }
        if d.multiplicity(nu) == 0 {
            return Err(Error::NotAWeight(nu.to_vec()));
        }
        let x = d.shifted(nu, 1).expect("weights differ from lambda by roots");
        let s = &d.step_set;
        if s.classify_lattice_point(&x)?.location != Location::Interior {
            return Err(Error::NotInterior);
        }
        let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
        let dp = invert_interior(s, &xf, self.solver)?;
        let delta_w = r.weyl_denominator_lstar(&dp.tau);
        let rho: Vec<f64> = r.rho_lstar().iter().map(rational_to_f64).collect();
        let rho_tau = dot(&rho, &dp.tau);
        let m = s.dim() as f64;
        let degenerate = delta_w <= DEGENERATE_TOL;
        let prefactor = if degenerate {
            f64::NEG_INFINITY
        } else {
            -(m / 2.0) * (2.0 * PI * n as f64).ln() + (r.pi_group_order() as f64).ln() + delta_w.ln()
                - rho_tau
                - 0.5 * dp.hessian_det.ln()
        };
        let order = if degenerate {
            "leading term vanishes; remainder O(N^-1) relative to the exponential".to_string()
        } else {
            "1+O(N^-1)".to_string()
        };
        let mut est = AsymptoticEstimate::assemble(n, dp.delta, 0.0, prefactor, Regime::IrredSD, order, dp.tau);
        est.degenerate_leading_term = degenerate;
        Ok(est)
    }

    /// Central-limit asymptotics of `a_N(lambda; mu)` for semisimple groups.
    pub fn irreducible_cl(&self, d: &WeightDiagram, mu: &[i64], n: u64) -> Result<AsymptoticEstimate> {
        let r = &d.root;
        if !r.is_semisimple() {
            return Err(Error::NotSemisimple);
        }
        r.check_weight(mu)?;
        if !r.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_vec()));
        }
        let gamma = Self::shifted(d, mu, n)?;
        let s = &d.step_set;
        if !s.support_test(n, &gamma) {
            return Err(Error::SupportViolation);
        }
        let ev = eval_character(s, &vec![0.0; s.dim()])?;
        let a = &ev.hessian_log_k;
        let rho: Vec<f64> = r.rho_lstar().iter().map(rational_to_f64).collect();
        let mu_l = r.to_lstar(mu).expect("semisimple: every weight is in L*");
        let shifted: Vec<f64> = mu_l.iter().zip(&rho).map(|(x, p)| *x as f64 + p).collect();
        let quad = quad_inverse(a, &shifted, &shifted);
        let log_roots: f64 = r
            .positive_roots_lstar()
            .iter()
            .map(|alpha| {
                let af: Vec<f64> = alpha.iter().map(|&v| v as f64).collect();
                quad_inverse(a, &af, &rho).ln()
            })
            .sum();
        let m = s.dim() as f64;
        let prefactor = (r.pi_group_order() as f64).ln() + ln_biguint(&r.dim_weyl(mu)?) + log_roots
            - 0.5 * a.determinant().ln()
            - (m / 2.0) * (2.0 * PI).ln()
            - (r.dim_group() as f64 / 2.0) * (n as f64).ln();
        Ok(AsymptoticEstimate::assemble(
            n,
            (d.dimension as f64).ln(),
            -quad / (2.0 * n as f64),
            prefactor,
            Regime::IrredCL,
            "1+O(N^-1/2)".into(),
            vec![0.0; s.dim()],
        ))
    }
}

pub fn estimate_strong_deviation(s: &WeightedStepSet, alpha: &[i64], f: &[i64], n: u64) -> Result<AsymptoticEstimate> {
    Estimator::default().strong_deviation(s, alpha, f, n)
}

pub fn estimate_strong_deviation_auto(s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<AsymptoticEstimate> {
    Estimator::default().strong_deviation_auto(s, gamma, n)
}

pub fn estimate_moderate_deviation(s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<AsymptoticEstimate> {
    Estimator::default().moderate_deviation(s, gamma, n)
}

pub fn estimate_central_limit(s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<AsymptoticEstimate> {
    Estimator::default().central_limit(s, gamma, n)
}

pub fn estimate_weight_multiplicity(d: &WeightDiagram, nu: &[i64], n: u64) -> Result<AsymptoticEstimate> {
    Estimator::default().weight_multiplicity(d, nu, n)
}

pub fn estimate_irreducible_sd(d: &WeightDiagram, nu: &[i64], n: u64) -> Result<AsymptoticEstimate> {
    Estimator::default().irreducible_sd(d, nu, n)
}

pub fn estimate_irreducible_cl(d: &WeightDiagram, mu: &[i64], n: u64) -> Result<AsymptoticEstimate> {
    Estimator::default().irreducible_cl(d, mu, n)
}

pub fn classify_regime(s: &WeightedStepSet, gamma: &[i64], n: u64) -> Result<RegimeDecision> {
    Estimator::default().classify(s, gamma, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{count_paths, TensorPowerTable};
    use crate::roots::{build_root_system, freudenthal_diagram, GroupName};
    use num_traits::Zero;

    fn binomial2() -> WeightedStepSet {
        WeightedStepSet::one_dim(&[0, 1, 2], &[1, 2, 1]).unwrap()
    }

    fn walk() -> WeightedStepSet {
        WeightedStepSet::one_dim(&[-1, 1], &[1, 1]).unwrap()
    }

    fn ln_choose(n: u64, k: u64) -> f64 {
        let t = count_paths(&binomial_p1(), n).unwrap();
        t.log_value(&[k as i64])
    }

    fn binomial_p1() -> WeightedStepSet {
        WeightedStepSet::one_dim(&[0, 1], &[1, 1]).unwrap()
    }

    #[test]
    fn sd_binomial_is_stirling() {
        let s = binomial2();
        for n in [10u64, 40, 160] {
            let e = estimate_strong_deviation(&s, &[1], &[0], n).unwrap();
            let stirling = n as f64 * 4f64.ln() - 0.5 * (PI * n as f64).ln();
            assert!((e.log_value - stirling).abs() < 1e-12);
            assert!((e.exponent_per_step - 4f64.ln()).abs() < 1e-14);
            let exact = ln_choose(2 * n, n);
            assert!((e.ratio(exact) - 1.0).abs() < 1.0 / n as f64);
        }
    }

    #[test]
    fn sd_preconditions() {
        let s = binomial2();
        assert!(matches!(
            estimate_strong_deviation(&s, &[3], &[0], 4),
            Err(Error::NotInStepSet(_))
        ));
        assert!(matches!(
            estimate_strong_deviation(&s, &[2], &[0], 4),
            Err(Error::NotInterior)
        ));
        let adj = WeightedStepSet::one_dim(&[-2, 0, 2], &[1, 1, 1]).unwrap();
        assert!(matches!(
            estimate_strong_deviation(&adj, &[0], &[1], 4),
            Err(Error::FNotInDifferenceLattice(_))
        ));
    }

    #[test]
    fn clt_walk_peak() {
        let e = estimate_central_limit(&walk(), &[0], 100).unwrap();
        let expected = (2.0f64).ln() + 100.0 * 2f64.ln() - 0.5 * (2.0 * PI * 100.0).ln();
        assert!((e.log_value - expected).abs() < 1e-12);
        assert!(matches!(
            estimate_central_limit(&walk(), &[1], 100),
            Err(Error::SupportViolation)
        ));
    }

    #[test]
    fn clt_binomial_gaussian() {
        let n = 400u64;
        let k = 5i64;
        let e = estimate_central_limit(&binomial2(), &[n as i64 + k], n).unwrap();
        let expected = n as f64 * 4f64.ln() - 0.5 * (PI * n as f64).ln() - (k * k) as f64 / n as f64;
        assert!((e.log_value - expected).abs() < 1e-12);
    }

    #[test]
    fn md_reduces_to_peak_at_center() {
        let s = binomial2();
        let cl = estimate_central_limit(&s, &[50], 50).unwrap();
        let md = estimate_moderate_deviation(&s, &[50], 50).unwrap();
        assert!((cl.log_value - md.log_value).abs() < 1e-9);
        assert!((cl.log_prefactor - md.log_prefactor).abs() < 1e-9);
    }

    #[test]
    fn regime_classification() {
        let s = binomial2();
        let d = classify_regime(&s, &[100], 100).unwrap();
        assert_eq!((d.regime, d.distance), (Regime::CL, 0.0));
        assert_eq!(classify_regime(&s, &[120], 100).unwrap().regime, Regime::CL);
        assert_eq!(classify_regime(&s, &[130], 100).unwrap().regime, Regime::CL);
        assert_eq!(classify_regime(&s, &[131], 100).unwrap().regime, Regime::MD);
        let far = classify_regime(&s, &[100 + 63], 100).unwrap();
        assert_eq!(far.regime, Regime::SD);
        assert!((far.s_exponent.unwrap() - 0.9).abs() < 0.01);
    }

    #[test]
    fn weight_multiplicity_reduction_is_exact() {
        let a1 = build_root_system(GroupName::A1);
        let d = freudenthal_diagram(&a1, &[1]).unwrap();
        for nu in [0i64, 4, 10, 30] {
            let via_rep = estimate_weight_multiplicity(&d, &[nu], 40).unwrap();
            let via_path = Estimator::default().auto(&d.step_set, &[nu - 40], 40).unwrap();
            assert_eq!(via_rep.log_value.to_bits(), via_path.log_value.to_bits());
        }
        assert!(matches!(
            estimate_weight_multiplicity(&d, &[40], 40),
            Err(Error::NotInterior)
        ));
    }

    #[test]
    fn biane_su2_prefactor() {
        let a1 = build_root_system(GroupName::A1);
        let d = freudenthal_diagram(&a1, &[1]).unwrap();
        let n = 100u64;
        let e = estimate_irreducible_cl(&d, &[0], n).unwrap();
        let nf = n as f64;
        let expected = (4.0f64).ln() + nf * 2f64.ln() - 0.5 * (2.0 * PI).ln() - 1.5 * nf.ln() - 1.0 / (2.0 * nf);
        assert!((e.log_value - expected).abs() < 1e-12);
        assert!(matches!(
            estimate_irreducible_cl(&d, &[1], n),
            Err(Error::SupportViolation)
        ));
        let u2 = build_root_system(GroupName::U2);
        let du = freudenthal_diagram(&u2, &[3, 0]).unwrap();
        assert!(matches!(
            estimate_irreducible_cl(&du, &[30, 30], 20),
            Err(Error::NotSemisimple)
        ));
    }

    #[test]
    fn biane_su3_is_finite_and_close() {
        let a2 = build_root_system(GroupName::A2);
        let d = freudenthal_diagram(&a2, &[1, 1]).unwrap();
        let n = 12;
        let e = estimate_irreducible_cl(&d, &[0, 0], n).unwrap();
        assert!(e.log_value.is_finite());
        let exact = TensorPowerTable::new(&d, n)
            .unwrap()
            .irreducible_multiplicity(&[0, 0])
            .unwrap();
        assert!(!exact.is_zero());
        let ratio = e.ratio(ln_biguint(&exact));
        assert!((ratio - 1.0).abs() < 0.5, "ratio {ratio}");
    }

    #[test]
    fn irreducible_sd_u2() {
        let u2 = build_root_system(GroupName::U2);
        let d = freudenthal_diagram(&u2, &[3, 0]).unwrap();
        let e = estimate_irreducible_sd(&d, &[2, 1], 10).unwrap();
        assert!(!e.degenerate_leading_term && e.log_value.is_finite());
        let d2 = freudenthal_diagram(&u2, &[2, 0]).unwrap();
        let e = estimate_irreducible_sd(&d2, &[1, 1], 10).unwrap();
        assert!(e.degenerate_leading_term);
        assert_eq!(e.log_value, f64::NEG_INFINITY);
        assert!(matches!(
            estimate_irreducible_sd(&d, &[1, 2], 10),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            estimate_irreducible_sd(&d, &[3, 0], 10),
            Err(Error::NotInterior)
        ));
        let a1 = build_root_system(GroupName::A1);
        let adj = freudenthal_diagram(&a1, &[2]).unwrap();
        assert!(matches!(
            estimate_irreducible_sd(&adj, &[1], 10),
            Err(Error::NotAWeight(_))
        ));
    }
}
