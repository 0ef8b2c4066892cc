//! The deterministic two-station model and its correlation oracles.
//!
//! Each particle carries a hidden phase σ; each measurement apparatus
//! carries a hidden variable λ and a setting. The interaction rescales λ
//! by a setting-dependent weight (the dynamics responds to the local
//! apparatus — nothing here ever sees the remote setting). The weights
//! deliberately do not integrate to one in λ: that non-normalization is
//! what lets coincidence-conditioned statistics reach the singlet
//! correlation −cos(a−b), and the oracles in this module pin that value
//! both in closed form and by quadrature.

use std::f64::consts::TAU;

use crate::angle::Angle;

/// √(2π), the constant station-2 weight.
pub const SQRT_TAU: f64 = 2.506_628_274_631_000_2;

/// Default pointer constant; every correlation is independent of it.
pub const DEFAULT_POINTER: f64 = 1.0;

/// |cos| below this is the floating-point image of the ideal tie set
/// cos(σ − a) = 0 (the representable neighbours of π/2 + kπ evaluate to
/// a few 1e-17), where the λ-rescaling is singular.
pub const SINGULAR_COS_EPS: f64 = f64::EPSILON;

/// Which measurement station an operation acts at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Station {
    One,
    Two,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DynamicsError {
    /// The λ-rescaling divides by the station-1 weight, which vanishes
    /// on the measure-zero set cos(σ − a) = 0.
    #[error("dynamics map is singular: cos(sigma - setting) = 0")]
    SingularDynamics,
}

/// Hidden state of one particle/apparatus pair: the source phase σ and
/// the apparatus variable λ ∈ [0, 2π].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticlePhase {
    sigma: Angle,
    lambda: f64,
}

impl ParticlePhase {
    pub fn new(sigma: Angle, lambda: f64) -> Self {
        assert!(
            (0.0..=TAU).contains(&lambda),
            "lambda must lie in [0, 2pi], got {lambda}"
        );
        ParticlePhase { sigma, lambda }
    }

    pub fn sigma(self) -> Angle {
        self.sigma
    }

    pub fn lambda(self) -> f64 {
        self.lambda
    }
}

/// A station's polarizer setting together with its pointer constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApparatusConfig {
    setting: Angle,
    pointer_value: f64,
}

impl ApparatusConfig {
    pub fn new(setting: Angle, pointer_value: f64) -> Self {
        assert!(
            pointer_value.is_finite() && pointer_value > 0.0,
            "pointer value must be a positive constant, got {pointer_value}"
        );
        ApparatusConfig {
            setting,
            pointer_value,
        }
    }

    pub fn with_default_pointer(setting: Angle) -> Self {
        ApparatusConfig::new(setting, DEFAULT_POINTER)
    }

    pub fn setting(self) -> Angle {
        self.setting
    }

    pub fn pointer_value(self) -> f64 {
        self.pointer_value
    }
}

/// The two station weights evaluated at one phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightPair {
    /// Station-1 weight, in [0, √(2π)/4].
    pub t1: f64,
    /// Station-2 weight, always √(2π).
    pub t2: f64,
}

/// Sign with the fixed tie convention sgn(0) = +1, so replays are
/// deterministic on the measure-zero tie set.
pub(crate) fn sign_pm(x: f64) -> i8 {
    if x >= 0.0 {
        1
    } else {
        -1
    }
}

/// Station-1 weight (√(2π)/4)·|cos(σ − a)|.
pub fn weight_t1(sigma: Angle, a: Angle) -> f64 {
    SQRT_TAU / 4.0 * (sigma.radians() - a.radians()).cos().abs()
}

/// Station-2 weight, constant √(2π).
pub fn weight_t2() -> f64 {
    SQRT_TAU
}

pub fn weight_pair(sigma: Angle, a: Angle) -> WeightPair {
    WeightPair {
        t1: weight_t1(sigma, a),
        t2: weight_t2(),
    }
}

/// One interaction step: σ is left fixed and λ is rescaled by the
/// station weight, giving the pointer reading m = λ / T′.
pub fn apply_dynamics(
    p: ParticlePhase,
    app: &ApparatusConfig,
    station: Station,
) -> Result<(Angle, f64), DynamicsError> {
    let weight = match station {
        Station::One => {
            let c = (p.sigma.radians() - app.setting.radians()).cos();
            if c.abs() < SINGULAR_COS_EPS {
                return Err(DynamicsError::SingularDynamics);
            }
            SQRT_TAU / 4.0 * c.abs()
        }
        Station::Two => SQRT_TAU,
    };
    Ok((p.sigma, p.lambda / weight))
}

/// Jacobian of the λ ↦ m change of variables at the pointer reading.
///
/// For this model the factor is the station weight itself, constant in
/// the pointer value — `app.pointer_value` provably never enters.
pub fn reduced_weight(sigma: Angle, app: &ApparatusConfig, station: Station) -> f64 {
    match station {
        Station::One => weight_t1(sigma, app.setting),
        Station::Two => SQRT_TAU,
    }
}

/// λ-mass of the local apparatus measure. Deliberately ≠ 1: these local
/// factors are not conditional probabilities.
pub fn local_marginal_mass(setting: Angle, sigma: Angle, station: Station) -> f64 {
    match station {
        Station::One => weight_t1(sigma, setting),
        Station::Two => SQRT_TAU,
    }
}

/// The ±1 reply of a station: station 1 answers sgn(cos(σ − a)),
/// station 2 answers the negation at its own setting.
pub fn observable(sigma: Angle, setting: Angle, station: Station) -> i8 {
    let s = sign_pm((sigma.radians() - setting.radians()).cos());
    match station {
        Station::One => s,
        Station::Two => -s,
    }
}

/// Closed-form pair correlation −cos(a − b).
pub fn exact_correlation(a: Angle, b: Angle) -> f64 {
    -(a.radians() - b.radians()).cos()
}

/// Midpoint-rule evaluation of the reduced correlation integral
/// (1/2π) ∫ S₁(σ) S₂(σ) T′₁(σ) T′₂(σ) dσ on a uniform `grid_n`-cell grid.
///
/// The grid is anchored at the station-2 setting: the integrand's only
/// jumps sit at b ± π/2, which then fall on cell boundaries whenever
/// 4 | grid_n, leaving just the O(1/n²) smooth-part error.
pub fn quadrature_correlation(a: Angle, b: Angle, grid_n: usize) -> f64 {
    quadrature_correlation_between(
        &ApparatusConfig::with_default_pointer(a),
        &ApparatusConfig::with_default_pointer(b),
        grid_n,
    )
}

/// [`quadrature_correlation`] with explicit apparatus configurations,
/// so pointer independence can be checked bit for bit.
pub fn quadrature_correlation_between(
    app1: &ApparatusConfig,
    app2: &ApparatusConfig,
    grid_n: usize,
) -> f64 {
    assert!(grid_n >= 8, "grid_n must be at least 8, got {grid_n}");
    let h = TAU / grid_n as f64;
    let anchor = app2.setting.radians();
    let mut sum = 0.0;
    for k in 0..grid_n {
        let sigma = Angle::new(anchor + (k as f64 + 0.5) * h);
        let s1 = observable(sigma, app1.setting, Station::One) as f64;
        let s2 = observable(sigma, app2.setting, Station::Two) as f64;
        let w = reduced_weight(sigma, app1, Station::One)
            * reduced_weight(sigma, app2, Station::Two);
        sum += s1 * s2 * w;
    }
    sum * h / TAU
}

/// Midpoint-rule total mass of the joint measure after analytic
/// λ-integration: (1/2π) ∫ T′₁(σ) T′₂(σ) dσ, which converges to 1.
pub fn quadrature_total_mass(a: Angle, b: Angle, grid_n: usize) -> f64 {
    quadrature_total_mass_between(
        &ApparatusConfig::with_default_pointer(a),
        &ApparatusConfig::with_default_pointer(b),
        grid_n,
    )
}

pub fn quadrature_total_mass_between(
    app1: &ApparatusConfig,
    app2: &ApparatusConfig,
    grid_n: usize,
) -> f64 {
    assert!(grid_n >= 8, "grid_n must be at least 8, got {grid_n}");
    let h = TAU / grid_n as f64;
    // Anchored at the station-1 setting, where |cos| has its corners.
    let anchor = app1.setting.radians();
    let mut sum = 0.0;
    for k in 0..grid_n {
        let sigma = Angle::new(anchor + (k as f64 + 0.5) * h);
        sum += reduced_weight(sigma, app1, Station::One)
            * reduced_weight(sigma, app2, Station::Two);
    }
    sum * h / TAU
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn angle(r: f64) -> Angle {
        Angle::new(r)
    }

    #[test]
    fn sqrt_tau_matches_runtime_value() {
        assert_eq!(SQRT_TAU, TAU.sqrt());
    }

    #[test]
    fn weight_t1_frozen_values() {
        let a = angle(0.9);
        assert!((weight_t1(a, a) - 0.626_657_068_657_750_1).abs() < 1e-12);
        assert!(weight_t1(angle(0.9 + FRAC_PI_2), a).abs() < 1e-12);
        let third = weight_t1(angle(0.9 + FRAC_PI_3), a);
        assert!((third - 0.313_328_534_328_875_05).abs() < 1e-12);
    }

    #[test]
    fn weight_pair_ranges() {
        for i in 0..100 {
            let sigma = angle(TAU * i as f64 / 100.0);
            let pair = weight_pair(sigma, angle(1.3));
            assert!(pair.t1 >= 0.0 && pair.t1 <= SQRT_TAU / 4.0 + 1e-15);
            assert_eq!(pair.t2, SQRT_TAU);
        }
    }

    #[test]
    fn dynamics_station_two_rescales_by_constant() {
        let p = ParticlePhase::new(angle(1.0), SQRT_TAU);
        let app = ApparatusConfig::with_default_pointer(angle(2.0));
        let (sigma_out, m_out) = apply_dynamics(p, &app, Station::Two).unwrap();
        assert_eq!(sigma_out, angle(1.0));
        assert!((m_out - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dynamics_station_one_at_aligned_setting() {
        let a = angle(0.4);
        let p = ParticlePhase::new(a, SQRT_TAU / 4.0);
        let app = ApparatusConfig::with_default_pointer(a);
        let (sigma_out, m_out) = apply_dynamics(p, &app, Station::One).unwrap();
        assert_eq!(sigma_out, a);
        assert!((m_out - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dynamics_singular_at_right_angle() {
        let p = ParticlePhase::new(angle(FRAC_PI_2), 1.0);
        let app = ApparatusConfig::with_default_pointer(angle(0.0));
        assert_eq!(
            apply_dynamics(p, &app, Station::One),
            Err(DynamicsError::SingularDynamics)
        );
    }

    #[test]
    fn lambda_map_is_reversible() {
        for i in 0..200 {
            let sigma = angle(0.03 + TAU * i as f64 / 200.0);
            let a = angle(1.1);
            let lambda = 0.37 * TAU;
            let p = ParticlePhase::new(sigma, lambda);
            for station in [Station::One, Station::Two] {
                let app = ApparatusConfig::with_default_pointer(a);
                let t = reduced_weight(sigma, &app, station);
                if t < SINGULAR_COS_EPS {
                    continue;
                }
                let (_, m) = apply_dynamics(p, &app, station).unwrap();
                assert!((m * t - lambda).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn observable_frozen_values() {
        let a = angle(0.8);
        assert_eq!(observable(a, a, Station::One), 1);
        assert_eq!(observable(a, a, Station::Two), -1);
        assert_eq!(observable(angle(0.8 + 3.0 * PI / 4.0), a, Station::One), -1);
    }

    #[test]
    fn singlet_condition_off_tie_set() {
        for i in 0..500 {
            let sigma = angle(0.001 + TAU * i as f64 / 500.0);
            let x = angle(2.2);
            assert_eq!(
                observable(sigma, x, Station::One),
                -observable(sigma, x, Station::Two)
            );
        }
    }

    #[test]
    fn exact_correlation_frozen_values() {
        let a = angle(1.9);
        assert_eq!(exact_correlation(a, a), -1.0);
        assert!(exact_correlation(a, angle(1.9 + FRAC_PI_2)).abs() < 1e-15);
        assert!((exact_correlation(angle(0.0), angle(FRAC_PI_3)) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn quadrature_matches_exact_on_fine_grid() {
        assert!((quadrature_correlation(angle(0.0), angle(0.0), 1_000_000) + 1.0).abs() < 1e-6);
        assert!(quadrature_correlation(angle(0.0), angle(FRAC_PI_2), 1_000_000).abs() < 1e-6);
    }

    #[test]
    fn quadrature_coarse_grid_sanity() {
        let q = quadrature_correlation(angle(0.0), angle(FRAC_PI_3), 8);
        assert!((q + 0.5).abs() < 0.2, "coarse quadrature {q}");
    }

    #[test]
    fn total_mass_converges_to_one() {
        assert!((quadrature_total_mass(angle(0.0), angle(0.0), 1_000_000) - 1.0).abs() < 1e-6);
        assert!((quadrature_total_mass(angle(0.0), angle(2.5), 1_000_000) - 1.0).abs() < 1e-6);
        assert!((quadrature_total_mass(angle(PI), angle(1.0), 8) - 1.0).abs() < 0.1);
    }

    #[test]
    fn marginal_mass_frozen_values() {
        let a = angle(0.3);
        assert!((local_marginal_mass(a, angle(1.7), Station::Two) - 2.506_628_274_631_000_2).abs() < 1e-12);
        assert!((local_marginal_mass(a, a, Station::One) - SQRT_TAU / 4.0).abs() < 1e-12);
        assert!(local_marginal_mass(a, angle(0.3 + FRAC_PI_2), Station::One).abs() < 1e-12);
    }

    #[test]
    fn pointer_value_never_enters() {
        let sigma = angle(0.77);
        let a = angle(0.2);
        let small = ApparatusConfig::new(a, 1.0);
        let large = ApparatusConfig::new(a, 7.0);
        for station in [Station::One, Station::Two] {
            assert_eq!(
                reduced_weight(sigma, &small, station).to_bits(),
                reduced_weight(sigma, &large, station).to_bits()
            );
        }
    }
}
