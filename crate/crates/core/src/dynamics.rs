//! Quantized relativistic circular orbits of a negative charge in a uniform
//! axial magnetic field, natural units (ħ = c = 1).
//!
//! Closed forms for the orbit labelled by the angular-momentum constant `n`
//! (Bohr–Sommerfeld: `ρ(γ m v + ½ e B ρ) = n`):
//!
//! ```text
//! v_n = [1 + m_eff/(2 n ω_L)]^{-1/2}
//! ρ_n = sqrt(2n / (m_eff ω_L))
//! E_n = m_eff sqrt(1 + 2 n ω_L / m_eff)
//! ω_L = -e B / m_eff          (positive, since e < 0)
//! ```
//!
//! plus a proper-time Lorentz-force integrator that serves as an independent
//! oracle for the closed forms. `n` is any non-negative real here; integrality
//! only enters through the field side.

use crate::error::{Error, Result};
use crate::numerics::rk4_step;

/// Physical constants of a scenario.
///
/// The internal-clock data (`sigma`, `omega_p_clock`, `z0_abs`) enter only
/// through the effective mass `m_eff = m_p (1 + σ Ω_p² |z₀|²)`; scenarios that
/// know `m_eff` directly can use [`MediumParams::with_effective_mass`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    /// Charge, e < 0 in natural units.
    pub charge: f64,
    /// Uniform field strength B >= 0 (B = 0 is the degenerate free-field limit;
    /// orbit construction requires B > 0).
    pub field_b: f64,
    /// Bare mass m_p > 0.
    pub mass_p: f64,
    /// Dimensionless internal coupling, >= 0.
    pub sigma: f64,
    /// Proper internal-clock frequency, > 0.
    pub omega_p_clock: f64,
    /// Internal-oscillation amplitude |z₀| >= 0.
    pub z0_abs: f64,
    /// Field mass ω₀ > 0.
    pub omega0: f64,
}

impl MediumParams {
    pub fn new(
        charge: f64,
        field_b: f64,
        mass_p: f64,
        sigma: f64,
        omega_p_clock: f64,
        z0_abs: f64,
        omega0: f64,
    ) -> Result<Self> {
        let p = MediumParams {
            charge,
            field_b,
            mass_p,
            sigma,
            omega_p_clock,
            z0_abs,
            omega0,
        };
        p.validate()?;
        Ok(p)
    }

    /// Scenario defined by its effective mass directly (coupling switched off).
    pub fn with_effective_mass(charge: f64, field_b: f64, m_eff: f64, omega0: f64) -> Result<Self> {
        MediumParams::new(charge, field_b, m_eff, 0.0, 1.0, 0.0, omega0)
    }

    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.charge < 0.0) {
            return fail(format!("charge must be negative, got {}", self.charge));
        }
        if !(self.field_b >= 0.0) {
            return fail(format!("field_b must be >= 0, got {}", self.field_b));
        }
        if !(self.mass_p > 0.0) {
            return fail(format!("mass_p must be > 0, got {}", self.mass_p));
        }
        if !(self.sigma >= 0.0) {
            return fail(format!("sigma must be >= 0, got {}", self.sigma));
        }
        if !(self.omega_p_clock > 0.0) {
            return fail(format!(
                "omega_p_clock must be > 0, got {}",
                self.omega_p_clock
            ));
        }
        if !(self.z0_abs >= 0.0) {
            return fail(format!("z0_abs must be >= 0, got {}", self.z0_abs));
        }
        if !(self.omega0 > 0.0) {
            return fail(format!("omega0 must be > 0, got {}", self.omega0));
        }
        Ok(())
    }

    /// Effective mass `m_p (1 + σ Ω_p² |z₀|²)`.
    pub fn m_eff(&self) -> f64 {
        effective_mass(self)
    }

    /// Landau frequency `-e B / m_eff`.
    pub fn omega_l(&self) -> f64 {
        landau_frequency(self)
    }

    /// Azimuthal vector potential component `A_φ(ρ) = ½ B ρ` (symmetric gauge,
    /// physical component).
    pub fn a_phi(&self, rho: f64) -> f64 {
        0.5 * self.field_b * rho
    }
}

/// `m_eff = m_p (1 + σ Ω_p² |z₀|²)`.
pub fn effective_mass(params: &MediumParams) -> f64 {
    params.mass_p * (1.0 + params.sigma * params.omega_p_clock.powi(2) * params.z0_abs.powi(2))
}

/// `ω_L = -e B / m_eff`, strictly positive for B > 0.
pub fn landau_frequency(params: &MediumParams) -> f64 {
    -params.charge * params.field_b / effective_mass(params)
}

/// One quantized circular orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orbit {
    /// Bohr–Sommerfeld constant (integer in quantized scenarios).
    pub n: f64,
    /// Radius ρ_n.
    pub rho: f64,
    /// Speed v_n in [0, 1).
    pub v: f64,
    /// Lorentz factor.
    pub gamma: f64,
    /// Energy E_n = γ m_eff.
    pub energy: f64,
    /// Azimuthal canonical momentum P_p = γ m_eff v + e A_φ(ρ).
    pub p_canonical: f64,
}

impl Orbit {
    /// Lab-frame angular velocity v/ρ = ω_L/γ (limit value at the rest orbit).
    pub fn lab_angular_velocity(&self, params: &MediumParams) -> f64 {
        if self.rho > 0.0 {
            self.v / self.rho
        } else {
            landau_frequency(params) / self.gamma
        }
    }

    /// Lab-frame cyclotron period 2πγ/ω_L.
    pub fn lab_period(&self, params: &MediumParams) -> f64 {
        2.0 * std::f64::consts::PI / self.lab_angular_velocity(params)
    }

    /// Position at lab time t, starting on the +x axis and turning
    /// counterclockwise.
    pub fn position(&self, t: f64, params: &MediumParams) -> (f64, f64) {
        let phi = self.lab_angular_velocity(params) * t;
        (self.rho * phi.cos(), self.rho * phi.sin())
    }

    /// Azimuth at lab time t.
    pub fn phase(&self, t: f64, params: &MediumParams) -> f64 {
        self.lab_angular_velocity(params) * t
    }
}

/// Closed-form orbit for a given Bohr–Sommerfeld constant n >= 0.
///
/// n = 0 returns the degenerate rest orbit (ρ = 0, v = 0, E = m_eff) by
/// continuity.
pub fn orbit_from_n(n: f64, params: &MediumParams) -> Result<Orbit> {
    if !(n >= 0.0) {
        return Err(Error::InvalidParams(format!("n must be >= 0, got {n}")));
    }
    let m = effective_mass(params);
    if n == 0.0 {
        return Ok(Orbit {
            n,
            rho: 0.0,
            v: 0.0,
            gamma: 1.0,
            energy: m,
            p_canonical: 0.0,
        });
    }
    if params.field_b == 0.0 {
        return Err(Error::InvalidParams(
            "no finite orbit exists for n > 0 at B = 0".into(),
        ));
    }
    let wl = landau_frequency(params);
    let v = 1.0 / (1.0 + m / (2.0 * n * wl)).sqrt();
    let rho = (2.0 * n / (m * wl)).sqrt();
    let gamma = (1.0 + 2.0 * n * wl / m).sqrt();
    let energy = m * gamma;
    let p_canonical = gamma * m * v + params.charge * params.a_phi(rho);
    Ok(Orbit {
        n,
        rho,
        v,
        gamma,
        energy,
        p_canonical,
    })
}

/// The action integral `(1/2π) ∮ P_p dl = ρ (γ m_eff v + ½ e B ρ)` of an
/// orbit, which recovers n for consistent orbits.
pub fn bohr_sommerfeld(orbit: &Orbit, params: &MediumParams) -> f64 {
    orbit.rho
        * (orbit.gamma * effective_mass(params) * orbit.v
            + 0.5 * params.charge * params.field_b * orbit.rho)
}

/// Non-relativistic energy `m_eff + n ω_L`.
pub fn nonrel_energy(n: f64, params: &MediumParams) -> f64 {
    effective_mass(params) + n * landau_frequency(params)
}

/// One proper-time sample of the particle worldline (planar motion).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorldlineSample {
    pub tau: f64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub ut: f64,
    pub ux: f64,
    pub uy: f64,
}

impl WorldlineSample {
    /// |u·u - 1| with u the four-velocity; zero for an exactly normalized state.
    pub fn normalization_defect(&self) -> f64 {
        (self.ut * self.ut - self.ux * self.ux - self.uy * self.uy - 1.0).abs()
    }

    pub fn radius(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

/// Initial condition sitting on a closed-form orbit at φ = 0, moving
/// counterclockwise.
pub fn worldline_start(orbit: &Orbit) -> WorldlineSample {
    WorldlineSample {
        tau: 0.0,
        t: 0.0,
        x: orbit.rho,
        y: 0.0,
        ut: orbit.gamma,
        ux: 0.0,
        uy: orbit.gamma * orbit.v,
    }
}

const DRIFT_LIMIT: f64 = 1e-6;

/// Integrate `m_eff d²x^μ/dτ² = e F^μ_ν dx^ν/dτ` for the uniform axial field
/// (symmetric gauge) with fixed-step RK4 in proper time.
///
/// The four-velocity normalization is monitored, not projected: exceeding a
/// 1e-6 drift aborts with [`Error::StepTooLarge`]. The returned sequence
/// includes the initial sample.
pub fn integrate_worldline(
    initial: WorldlineSample,
    params: &MediumParams,
    proper_duration: f64,
    step: f64,
) -> Result<Vec<WorldlineSample>> {
    if !(step > 0.0) {
        return Err(Error::InvalidParams(format!(
            "step must be > 0, got {step}"
        )));
    }
    if !(proper_duration >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "proper_duration must be >= 0, got {proper_duration}"
        )));
    }
    if initial.normalization_defect() > 1e-12 {
        return Err(Error::InvalidParams(format!(
            "initial four-velocity normalization defect {:.3e} exceeds 1e-12",
            initial.normalization_defect()
        )));
    }

    let wl = landau_frequency(params);
    // d u^x/dτ = (eB/m) u^y = -ω_L u^y ; d u^y/dτ = +ω_L u^x ; d u^t/dτ = 0.
    let rhs = move |_tau: f64, s: &[f64], out: &mut [f64]| {
        out[0] = s[3]; // dt/dτ = u^t
        out[1] = s[4]; // dx/dτ = u^x
        out[2] = s[5]; // dy/dτ = u^y
        out[3] = 0.0;
        out[4] = -wl * s[5];
        out[5] = wl * s[4];
    };

    let n_steps = (proper_duration / step).round() as usize;
    let mut state = [
        initial.t, initial.x, initial.y, initial.ut, initial.ux, initial.uy,
    ];
    let mut tau = initial.tau;
    let mut samples = Vec::with_capacity(n_steps + 1);
    samples.push(initial);
    for _ in 0..n_steps {
        let next = rk4_step(tau, &state, step, &rhs);
        state.copy_from_slice(&next);
        tau += step;
        let sample = WorldlineSample {
            tau,
            t: state[0],
            x: state[1],
            y: state[2],
            ut: state[3],
            ux: state[4],
            uy: state[5],
        };
        let drift = sample.normalization_defect();
        if drift > DRIFT_LIMIT {
            return Err(Error::StepTooLarge { drift });
        }
        samples.push(sample);
    }
    Ok(samples)
}

/// Linear lab-time resampling of an integrated worldline, for aligning field
/// evaluations with the particle position. `t` must lie inside the sampled range.
pub fn resample_lab_time(samples: &[WorldlineSample], t: f64) -> Option<WorldlineSample> {
    if samples.is_empty() || t < samples[0].t || t > samples[samples.len() - 1].t {
        return None;
    }
    let idx = samples.partition_point(|s| s.t < t);
    if idx == 0 {
        return Some(samples[0]);
    }
    let (a, b) = (&samples[idx - 1], &samples[idx]);
    let w = if b.t > a.t { (t - a.t) / (b.t - a.t) } else { 0.0 };
    let lerp = |p: f64, q: f64| p + w * (q - p);
    Some(WorldlineSample {
        tau: lerp(a.tau, b.tau),
        t,
        x: lerp(a.x, b.x),
        y: lerp(a.y, b.y),
        ut: lerp(a.ut, b.ut),
        ux: lerp(a.ux, b.ux),
        uy: lerp(a.uy, b.uy),
    })
}
