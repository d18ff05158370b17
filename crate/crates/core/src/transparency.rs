//! Consistency суite tying the quantized orbits to the mode pairs: two-wave
//! phase/group decomposition on the orbit circle, guidance and de Broglie
//! residuals, holonomic (internal-clock) synchronization, and the central
//! Landau-level match between particle energies and pair frequencies under
//! the mass-matching condition ω₀ = m_eff.
//!
//! The guidance check runs twice on purpose: once as the exact algebraic
//! identity `(P_p - eA_φ)/E_n = v_n`, which holds to rounding for every
//! closed-form orbit, and once as the field-side estimate that replaces
//! particle data with the measured wave numbers - only the second one carries
//! physical approximation error, decaying as the field weakens.

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{landau_frequency, nonrel_energy, orbit_from_n, MediumParams, Orbit};
use crate::error::{Error, Result};
use crate::modes::{
    canonical_pair, pair_frequency, superpose_pair, weak_field_frequency, ModePair,
    SpacetimePoint,
};

/// The particle's internal harmonic degree of freedom `z(τ) = z₀ e^{-iΩ_p τ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InternalClock {
    pub z0: Complex64,
    pub omega_p: f64,
}

impl InternalClock {
    pub fn sample(&self, tau: f64) -> Complex64 {
        self.z0 * Complex64::from_polar(1.0, -self.omega_p * tau)
    }
}

/// Two-wave data of a pair restricted to the circle ρ = ρ_n, with the derived
/// phase/group quantities.
///
/// With the signed on-circle wavenumbers `k± = m±/ρ_n`:
///
/// - `k = (k₊-k₋)/2 = n/ρ_n` carries the de Broglie momentum (it equals
///   `P_p` exactly through the action quantization) and sets the envelope
///   periodicity around the circle;
/// - `omega = (ω₊+ω₋)/2` is the carrier frequency, the de Broglie energy;
/// - `k_env = (k₊+k₋)/2` rides the carrier exponent and `omega_env =
///   (ω₊-ω₋)/2` the envelope clock.
///
/// `epsilon` is the particle-energy excess over the carrier frequency
/// (exactly zero at perfect frequency matching) and `eta` the offset between
/// `k` and the kinetic momentum `γ m_eff v`, which lands on `eA_φ(ρ_n)`
/// whenever the pair index agrees with the orbit's action constant.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhaseGroupForm {
    pub k: f64,
    pub omega: f64,
    pub k_env: f64,
    pub omega_env: f64,
    pub epsilon: f64,
    pub eta: f64,
    pub k_plus: f64,
    pub k_minus: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub u0: f64,
    pub orbit_radius: f64,
}

impl PhaseGroupForm {
    /// The two-wave sum `(u₀/2)(e^{i(m₊φ-ω₊t)} + e^{i(m₋φ-ω₋t)})` on the circle.
    pub fn two_wave(&self, t: f64, phi: f64) -> Complex64 {
        let s = self.orbit_radius * phi;
        0.5 * self.u0
            * (Complex64::from_polar(1.0, self.k_plus * s - self.omega_plus * t)
                + Complex64::from_polar(1.0, self.k_minus * s - self.omega_minus * t))
    }

    /// The phase x envelope product equal to the two-wave sum pointwise:
    /// `u₀ e^{i(k_env s - ω t)} cos(k s - ω_env t)`, s = ρ_n φ.
    pub fn product_form(&self, t: f64, phi: f64) -> Complex64 {
        let s = self.orbit_radius * phi;
        self.u0
            * Complex64::from_polar(1.0, self.k_env * s - self.omega * t)
            * (self.k * s - self.omega_env * t).cos()
    }
}

const RECONSTRUCTION_SAMPLES: usize = 32;
const RECONSTRUCTION_TOL: f64 = 1e-13;

/// Restrict a pair to the orbit circle and split it into phase and group
/// waves. Requires the equal split c₊ = c₋ and a non-degenerate orbit; the
/// product reconstruction is verified internally at 32 sampled (t, φ) points.
pub fn phase_group_decompose(pair: &ModePair, orbit: &Orbit) -> Result<PhaseGroupForm> {
    let scale = pair.c_plus.abs().max(pair.c_minus.abs());
    if (pair.c_plus - pair.c_minus).abs() > 1e-12 * scale {
        return Err(Error::AmplitudeMismatch {
            c_plus: pair.c_plus,
            c_minus: pair.c_minus,
        });
    }
    if !(orbit.rho > 0.0) {
        return Err(Error::InvalidParams(
            "phase/group decomposition needs an orbit with ρ > 0".into(),
        ));
    }

    let k_plus = pair.plus.index.m as f64 / orbit.rho;
    let k_minus = pair.minus.index.m as f64 / orbit.rho;
    let (omega_plus, omega_minus) = (pair.plus.omega, pair.minus.omega);
    let k = 0.5 * (k_plus - k_minus);
    let omega = 0.5 * (omega_plus + omega_minus);
    let m_eff = orbit.energy / orbit.gamma;
    let form = PhaseGroupForm {
        k,
        omega,
        k_env: 0.5 * (k_plus + k_minus),
        omega_env: 0.5 * (omega_plus - omega_minus),
        epsilon: orbit.energy - omega,
        eta: k - orbit.gamma * m_eff * orbit.v,
        k_plus,
        k_minus,
        omega_plus,
        omega_minus,
        u0: pair.u0(),
        orbit_radius: orbit.rho,
    };

    // product-to-sum identity must hold to rounding
    let t_span = 4.0 * std::f64::consts::PI / omega;
    let mut max_dev = 0.0f64;
    for i in 0..RECONSTRUCTION_SAMPLES {
        let t = ((i as f64 * 0.618_033_988_749_895).fract()) * t_span;
        let phi = ((i as f64 * 0.381_966_011_250_105).fract()) * 2.0 * std::f64::consts::PI;
        let dev = (form.two_wave(t, phi) - form.product_form(t, phi)).norm();
        max_dev = max_dev.max(dev);
    }
    if max_dev > RECONSTRUCTION_TOL * form.u0.abs() {
        return Err(Error::Reconstruction { max_dev });
    }
    Ok(form)
}

/// Exact route: `|(P_p - eA_φ(ρ_n))/E_n - v_n|`, an algebraic identity of the
/// closed-form orbits (rounding-level for every n).
pub fn guidance_identity_residual(orbit: &Orbit, params: &MediumParams) -> f64 {
    if orbit.rho == 0.0 {
        return 0.0;
    }
    let kinetic = orbit.p_canonical - params.charge * params.a_phi(orbit.rho);
    (kinetic / orbit.energy - orbit.v).abs()
}

/// Field-side route: the phase wavenumber from the decomposition stands in
/// for the canonical momentum and the carrier frequency for the energy,
/// `|(k - eA_φ(ρ_n))/ω - v_n|`. Decays with the field strength for a matched
/// pair; stays O(v) for a mismatched one.
pub fn guidance_field_residual(orbit: &Orbit, form: &PhaseGroupForm, params: &MediumParams) -> f64 {
    let v_g = (form.k - params.charge * params.a_phi(orbit.rho)) / form.omega;
    (v_g - orbit.v).abs()
}

/// `(|ω_field - E_n|/E_n, |k ρ_n - n|/n)`: frequency matching against the
/// orbit energy and wavenumber matching against the action constant.
pub fn debroglie_residuals(orbit: &Orbit, pair: &ModePair) -> Result<(f64, f64)> {
    if !(orbit.rho > 0.0) || !(orbit.n > 0.0) {
        return Err(Error::InvalidParams(
            "de Broglie residuals need an orbit with n > 0".into(),
        ));
    }
    let omega_field = pair_frequency(pair);
    let k = pair.n as f64 / orbit.rho;
    Ok((
        (omega_field - orbit.energy).abs() / orbit.energy,
        (k * orbit.rho - orbit.n).abs() / orbit.n,
    ))
}

/// Max over `t_grid` of `|z₀ e^{-iΩ_p τ(t)} - u(t, x_p(t))| / |z₀|` with
/// τ = t/γ on the circular orbit. The clock is taken as given; its amplitude
/// is expected to be gauged to the field value at t = 0 on the particle.
pub fn holonomic_residual(
    orbit: &Orbit,
    pair: &ModePair,
    clock: &InternalClock,
    t_grid: &[f64],
    params: &MediumParams,
) -> Result<f64> {
    if clock.z0.norm() == 0.0 {
        return Err(Error::InvalidParams(
            "clock amplitude must be non-zero (gauge it to the field at t = 0)".into(),
        ));
    }
    let mut worst = 0.0f64;
    for &t in t_grid {
        let p = particle_point(orbit, t, params);
        let u = superpose_pair(pair, &p);
        let z = clock.sample(t / orbit.gamma);
        worst = worst.max((z - u).norm());
    }
    Ok(worst / clock.z0.norm())
}

fn particle_point(orbit: &Orbit, t: f64, params: &MediumParams) -> SpacetimePoint {
    SpacetimePoint {
        t,
        rho: orbit.rho,
        phi: orbit.phase(t, params),
        z: 0.0,
    }
}

/// Clock synchronized by frequency matching: Ω_p = (ω₊+ω₋)/2, amplitude
/// gauged to the field on the particle at t = 0.
pub fn synchronized_clock(
    orbit: &Orbit,
    pair: &ModePair,
    params: &MediumParams,
) -> Result<InternalClock> {
    let z0 = superpose_pair(pair, &particle_point(orbit, 0.0, params));
    if z0.norm() == 0.0 {
        return Err(Error::InvalidParams(
            "field vanishes at the initial particle position".into(),
        ));
    }
    Ok(InternalClock {
        z0,
        omega_p: pair_frequency(pair),
    })
}

/// Holonomic residuals under the two candidate synchronization laws.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HolonomicLaws {
    /// Ω_p = ω (frequency matching read literally).
    pub literal: f64,
    /// Ω_p = γ(ω - k v_n), the Doppler-corrected proper frequency.
    pub gamma_corrected: f64,
}

/// Evaluate both synchronization laws over the grid; amplitudes gauged to the
/// field at t = 0 in both cases.
pub fn holonomic_laws(
    orbit: &Orbit,
    pair: &ModePair,
    t_grid: &[f64],
    params: &MediumParams,
) -> Result<HolonomicLaws> {
    let base = synchronized_clock(orbit, pair, params)?;
    let literal = holonomic_residual(orbit, pair, &base, t_grid, params)?;
    let k_v = if orbit.rho > 0.0 {
        pair.n as f64 / orbit.rho * orbit.v
    } else {
        0.0
    };
    let corrected = InternalClock {
        z0: base.z0,
        omega_p: orbit.gamma * (base.omega_p - k_v),
    };
    let gamma_corrected = holonomic_residual(orbit, pair, &corrected, t_grid, params)?;
    Ok(HolonomicLaws {
        literal,
        gamma_corrected,
    })
}

/// Named tolerances for the consistency gates. `None` entries fall back to
/// the weak-field scale formulas pinned below.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Absolute, exact algebraic identity.
    pub guidance: f64,
    /// Relative.
    pub debroglie_k: f64,
    /// Relative; default `(10 n² (B/ω₀²)² ω₀ + 2 (n ω_L)²/m_eff) / m_eff`.
    pub debroglie_omega: Option<f64>,
    /// Absolute; default `10 n² (B/ω₀²)² ω₀`.
    pub landau: Option<f64>,
    /// The holonomic residual is diagnostic: its gate only rejects blowups
    /// beyond the 2x amplitude bound of normalized waves.
    pub holonomic: f64,
    /// Relative to m_eff.
    pub mass_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            guidance: 1e-14,
            debroglie_k: 1e-12,
            debroglie_omega: None,
            landau: None,
            holonomic: 2.5,
            mass_match: 1e-12,
        }
    }
}

impl Tolerances {
    /// Second-order weak-field bound on |pair frequency - (ω₀ + n ω_L)|.
    pub fn landau_tolerance(&self, n: u32, params: &MediumParams) -> f64 {
        self.landau.unwrap_or_else(|| {
            let ratio = params.field_b / params.omega0.powi(2);
            10.0 * (n as f64).powi(2) * ratio * ratio * params.omega0
        })
    }

    /// Combined second-order bound on the relative |ω_field - E_n|/E_n gap.
    pub fn debroglie_omega_tolerance(&self, n: u32, params: &MediumParams) -> f64 {
        self.debroglie_omega.unwrap_or_else(|| {
            let m = params.m_eff();
            let nf = n as f64;
            let ratio = params.field_b / params.omega0.powi(2);
            (10.0 * nf * nf * ratio * ratio * params.omega0
                + 2.0 * (nf * landau_frequency(params)).powi(2) / m)
                / m
        })
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("guidance", Some(self.guidance)),
            ("debroglie_k", Some(self.debroglie_k)),
            ("debroglie_omega", self.debroglie_omega),
            ("landau", self.landau),
            ("holonomic", Some(self.holonomic)),
            ("mass_match", Some(self.mass_match)),
        ];
        for (name, v) in all {
            if let Some(v) = v {
                if !(v > 0.0) {
                    return Err(Error::ValidationError {
                        key: format!("tolerances.{name}"),
                        msg: format!("must be > 0, got {v}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// One named residual with its applied tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct GateResult {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn gate(name: &str, value: f64, tolerance: f64) -> GateResult {
    GateResult {
        name: name.to_string(),
        value,
        tolerance,
        pass: value.is_finite() && value <= tolerance,
    }
}

/// Full consistency record for one quantum number.
#[derive(Debug, Clone, Serialize)]
pub struct TransparencyReport {
    pub n: u32,
    pub particle_energy: f64,
    pub pair_frequency: f64,
    pub weak_field_frequency: f64,
    /// |pair frequency - (ω₀ + n ω_L at m_eff = ω₀)|: a pure field-side gap.
    pub landau_gap: f64,
    /// |E_n - (m_eff + n ω_L)|: the particle-side Taylor remainder.
    pub nonrel_gap: f64,
    pub guidance_residual: f64,
    pub guidance_field_residual: f64,
    pub debroglie_omega_residual: f64,
    pub debroglie_k_residual: f64,
    pub holonomic_residual: f64,
    pub holonomic_gamma_residual: f64,
    /// |ω₀ - m_eff|.
    pub mass_match_gap: f64,
    pub gates: Vec<GateResult>,
    pub pass: bool,
}

/// Number of lab-frame cyclotron periods the holonomic residual is sampled
/// over, and the grid size.
const HOLONOMIC_PERIODS: f64 = 10.0;
const HOLONOMIC_SAMPLES: usize = 256;

/// Build the consistency record for quantum number n using the canonical
/// (nodeless) pair. Requires B > 0.
pub fn transparency_report(
    n: u32,
    params: &MediumParams,
    tolerances: &Tolerances,
) -> Result<TransparencyReport> {
    tolerances.validate()?;
    if n < 1 {
        return Err(Error::EmptySet { n: n as i64 });
    }
    let orbit = orbit_from_n(n as f64, params)?;
    let pair = canonical_pair(n, params)?;
    let form = phase_group_decompose(&pair, &orbit)?;

    let omega_field = pair_frequency(&pair);
    let weak = weak_field_frequency(n, params).value;
    let (db_omega, db_k) = debroglie_residuals(&orbit, &pair)?;

    let t_end = HOLONOMIC_PERIODS * orbit.lab_period(params);
    let t_grid: Vec<f64> = (0..=HOLONOMIC_SAMPLES)
        .map(|i| t_end * i as f64 / HOLONOMIC_SAMPLES as f64)
        .collect();
    let holo = holonomic_laws(&orbit, &pair, &t_grid, params)?;

    let m_eff = params.m_eff();
    let mass_gap = (params.omega0 - m_eff).abs();
    let guidance = guidance_identity_residual(&orbit, params);
    let landau_gap = (omega_field - weak).abs();

    let gates = vec![
        gate("guidance", guidance, tolerances.guidance),
        gate("debroglie_k", db_k, tolerances.debroglie_k),
        gate(
            "debroglie_omega",
            db_omega,
            tolerances.debroglie_omega_tolerance(n, params),
        ),
        gate("landau", landau_gap, tolerances.landau_tolerance(n, params)),
        gate("holonomic", holo.literal, tolerances.holonomic),
        gate("mass_match", mass_gap / m_eff, tolerances.mass_match),
    ];
    let pass = gates.iter().all(|g| g.pass);

    Ok(TransparencyReport {
        n,
        particle_energy: orbit.energy,
        pair_frequency: omega_field,
        weak_field_frequency: weak,
        landau_gap,
        nonrel_gap: (orbit.energy - nonrel_energy(n as f64, params)).abs(),
        guidance_residual: guidance,
        guidance_field_residual: guidance_field_residual(&orbit, &form, params),
        debroglie_omega_residual: db_omega,
        debroglie_k_residual: db_k,
        holonomic_residual: holo.literal,
        holonomic_gamma_residual: holo.gamma_corrected,
        mass_match_gap: mass_gap,
        gates,
        pass,
    })
}

/// The central deliverable: particle energies, exact pair frequencies, the
/// first-order ladder and all gaps, tabulated for n = 1..n_max.
pub fn landau_match_report(
    n_max: u32,
    params: &MediumParams,
    tolerances: &Tolerances,
) -> Result<Vec<TransparencyReport>> {
    (1..=n_max)
        .map(|n| transparency_report(n, params, tolerances))
        .collect()
}
