//! Separable solutions of the gauged Klein-Gordon equation in a uniform axial
//! magnetic field (symmetric gauge), cylindrical coordinates:
//!
//! ```text
//! u(t,ρ,φ,z) = R(ρ) e^{i(k_z z + mφ - ωt)}
//! R(ξ) = C e^{-ξ/2} ξ^{|m|/2} 1F1(-n_ρ, |m|+1, ξ),   ξ = -½ e B ρ²  (>= 0)
//! ω² = ω₀² - 2eB(n_ρ + (|m|+m+1)/2) + k_z²
//! ```
//!
//! Finiteness of the radial profile quantizes n_ρ ∈ ℕ. Counterpropagating
//! pairs (m₊ >= 0, m₋ <= -1) carry the quantum number n = (m₊ - m₋)/2; the
//! admissible index tuples are tied together by the selection rule
//! `-m₋ = n_ρ₊ + n_ρ₋ + 1`, and their mean frequency reproduces the Landau
//! ladder ω₀ + n ω_L in the weak-field limit.

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::MediumParams;
use crate::error::{Error, Result};
use crate::specfun::{confluent_1f1, SeriesPolicy};

/// Indices of one separated solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModeIndex {
    /// Azimuthal number.
    pub m: i64,
    /// Radial number.
    pub n_rho: u32,
    /// Axial wavenumber (0 in all paired scenarios).
    pub k_z: f64,
}

impl ModeIndex {
    pub fn planar(m: i64, n_rho: u32) -> Self {
        ModeIndex { m, n_rho, k_z: 0.0 }
    }
}

/// Frequency of a single mode, the positive root of the dispersion relation.
///
/// The azimuthal combination `2 n_ρ + |m| + m + 1` is formed in integer
/// arithmetic, so modes with m <= -1 at fixed n_ρ are exactly degenerate.
pub fn mode_frequency(index: &ModeIndex, params: &MediumParams) -> f64 {
    let s2 = (2 * index.n_rho as i64 + index.m.abs() + index.m + 1) as f64;
    (params.omega0.powi(2) - params.charge * params.field_b * s2 + index.k_z.powi(2)).sqrt()
}

/// One separated Klein-Gordon solution with a fixed amplitude convention:
/// the normalization constant is chosen so that `max_ρ |R(ρ)| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldMode {
    pub index: ModeIndex,
    /// Frequency, by construction on the dispersion shell.
    pub omega: f64,
    /// Normalization constant C.
    pub amplitude: f64,
    /// Location ξ of the profile maximum (exact 0 for m = 0, n_ρ = 0).
    pub xi_peak: f64,
    params: MediumParams,
}

/// Range of ξ that covers every node and the decaying tail of a profile.
pub fn xi_support(index: &ModeIndex) -> f64 {
    4.0 * (index.n_rho as f64 + index.m.unsigned_abs() as f64 + 2.0)
}

impl FieldMode {
    /// Build a mode on the dispersion shell and fix its peak normalization.
    pub fn new(index: ModeIndex, params: &MediumParams) -> Result<FieldMode> {
        let omega = mode_frequency(&index, params);
        let (xi_peak, peak) = profile_peak(&index)?;
        Ok(FieldMode {
            index,
            omega,
            amplitude: 1.0 / peak,
            xi_peak,
            params: *params,
        })
    }

    pub fn params(&self) -> &MediumParams {
        &self.params
    }

    /// ξ(ρ) = -½ e B ρ², non-negative under the sign conventions e < 0, B >= 0.
    pub fn xi(&self, rho: f64) -> f64 {
        xi_of_rho(rho, &self.params)
    }

    /// Radius of the profile maximum (B > 0).
    pub fn radial_peak(&self) -> Result<f64> {
        rho_of_xi(self.xi_peak, &self.params)
    }

    /// Radius beyond which |R| stays below `eps`, from the closed-form bound
    /// `|R(ξ)| <= C e^{-ξ/2} ξ^{|m|/2 + n_ρ} Σ|c_k|` valid for ξ >= 1.
    pub fn decay_radius(&self, eps: f64) -> Result<f64> {
        let d = 0.5 * self.index.m.unsigned_abs() as f64 + self.index.n_rho as f64;
        let coeff_sum: f64 = terminating_coefficient_magnitudes(&self.index).iter().sum();
        let bound = |xi: f64| self.amplitude.abs() * coeff_sum * (-0.5 * xi).exp() * xi.powf(d);
        let mut xi = xi_support(&self.index).max(1.0);
        while bound(xi) > eps {
            xi *= 2.0;
            if xi > 1e6 {
                return Err(Error::InvalidParams("decay_radius: eps too small".into()));
            }
        }
        rho_of_xi(xi, &self.params)
    }
}

fn xi_of_rho(rho: f64, params: &MediumParams) -> f64 {
    let xi = -0.5 * params.charge * params.field_b * rho * rho;
    debug_assert!(xi >= 0.0, "xi must be >= 0 under e < 0, B >= 0");
    xi
}

fn rho_of_xi(xi: f64, params: &MediumParams) -> Result<f64> {
    if params.field_b == 0.0 {
        return Err(Error::InvalidParams(
            "radius of a given xi is undefined at B = 0".into(),
        ));
    }
    Ok((xi / (-0.5 * params.charge * params.field_b)).sqrt())
}

/// Unnormalized radial profile as a function of ξ.
fn raw_profile(index: &ModeIndex, xi: f64) -> f64 {
    let half_abs_m = 0.5 * index.m.unsigned_abs() as f64;
    // ξ^{|m|/2} with the ξ = 0 limit taken exactly.
    let power = if xi == 0.0 {
        if index.m == 0 {
            1.0
        } else {
            0.0
        }
    } else {
        xi.powf(half_abs_m)
    };
    let poly = confluent_1f1(
        -(index.n_rho as f64),
        index.m.unsigned_abs() as f64 + 1.0,
        xi,
        &SeriesPolicy::default(),
    )
    .expect("terminating series cannot fail");
    (-0.5 * xi).exp() * power * poly
}

/// Magnitudes of the terminating-series coefficients of `1F1(-n_ρ, |m|+1, ξ)`.
fn terminating_coefficient_magnitudes(index: &ModeIndex) -> Vec<f64> {
    let n = index.n_rho;
    let b = index.m.unsigned_abs() as f64 + 1.0;
    let a = -(n as f64);
    let mut coeffs = vec![1.0];
    let mut c = 1.0;
    for k in 0..n {
        let kf = k as f64;
        c *= (a + kf) / ((b + kf) * (kf + 1.0));
        coeffs.push(c.abs());
    }
    coeffs
}

/// Locate max_ξ |R| by a dense scan over the support plus parabolic refinement.
fn profile_peak(index: &ModeIndex) -> Result<(f64, f64)> {
    const SCAN_POINTS: usize = 4001;
    let xi_max = xi_support(index);
    let h = xi_max / (SCAN_POINTS - 1) as f64;
    let mut best_i = 0;
    let mut best = 0.0f64;
    for i in 0..SCAN_POINTS {
        let v = raw_profile(index, i as f64 * h).abs();
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut xi = best_i as f64 * h;
    // two parabolic refinements on |R|
    let mut step = h;
    for _ in 0..2 {
        let (f0, f1, f2) = (
            raw_profile(index, (xi - step).max(0.0)).abs(),
            raw_profile(index, xi).abs(),
            raw_profile(index, xi + step).abs(),
        );
        let denom = f0 - 2.0 * f1 + f2;
        if denom.abs() > 0.0 && xi - step >= 0.0 {
            let shift = 0.5 * (f0 - f2) / denom;
            if shift.abs() <= 1.0 {
                xi += shift * step;
            }
        }
        step *= 0.25;
    }
    let peak = raw_profile(index, xi).abs().max(best);
    if !(peak > 0.0) {
        return Err(Error::InvalidParams(format!(
            "radial profile vanished identically for {index:?}"
        )));
    }
    Ok((xi.max(0.0), peak))
}

/// Radial value `R(ρ)` of a mode, peak-normalized.
pub fn radial_profile(mode: &FieldMode, rho: f64) -> f64 {
    debug_assert!(rho >= 0.0);
    mode.amplitude * raw_profile(&mode.index, mode.xi(rho))
}

/// Spacetime point in cylindrical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub t: f64,
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
}

impl SpacetimePoint {
    pub fn new(t: f64, rho: f64, phi: f64, z: f64) -> Self {
        debug_assert!(rho >= 0.0);
        SpacetimePoint { t, rho, phi, z }
    }
}

/// Complex field value `R(ρ) e^{i(k_z z + mφ - ωt)}` of a single mode.
pub fn evaluate_mode(mode: &FieldMode, p: &SpacetimePoint) -> Complex64 {
    let phase = mode.index.k_z * p.z + mode.index.m as f64 * p.phi - mode.omega * p.t;
    radial_profile(mode, p.rho) * Complex64::from_polar(1.0, phase)
}

/// Enumeration policy for counterpropagating pairs: `Strict` requires
/// m₊ >= 1; `Permissive` also admits m₊ = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PairPolicy {
    Strict,
    Permissive,
}

impl std::str::FromStr for PairPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(PairPolicy::Strict),
            "permissive" => Ok(PairPolicy::Permissive),
            other => Err(Error::InvalidParams(format!(
                "policy must be `strict` or `permissive`, got `{other}`"
            ))),
        }
    }
}

/// Two counterpropagating modes with their superposition weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePair {
    pub plus: FieldMode,
    pub minus: FieldMode,
    pub c_plus: f64,
    pub c_minus: f64,
    /// Quantum number n = (m₊ - m₋)/2.
    pub n: u32,
}

impl ModePair {
    /// Pair two planar modes (k_z = 0 enforced) with the default equal split
    /// c₊ = c₋ = u₀/2, u₀ = 1.
    pub fn new(plus: FieldMode, minus: FieldMode) -> Result<ModePair> {
        ModePair::with_amplitudes(plus, minus, 0.5, 0.5)
    }

    pub fn with_amplitudes(
        plus: FieldMode,
        minus: FieldMode,
        c_plus: f64,
        c_minus: f64,
    ) -> Result<ModePair> {
        if plus.index.k_z != 0.0 || minus.index.k_z != 0.0 {
            return Err(Error::InvalidParams(
                "paired modes must have k_z = 0".into(),
            ));
        }
        if plus.index.m < 0 {
            return Err(Error::InvalidParams(format!(
                "plus member must have m >= 0, got {}",
                plus.index.m
            )));
        }
        if minus.index.m > -1 {
            return Err(Error::InvalidParams(format!(
                "minus member must have m <= -1, got {}",
                minus.index.m
            )));
        }
        let diff = plus.index.m - minus.index.m;
        if diff % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "m₊ - m₋ = {diff} must be even to define n"
            )));
        }
        Ok(ModePair {
            plus,
            minus,
            c_plus,
            c_minus,
            n: (diff / 2) as u32,
        })
    }

    /// Whether the indices satisfy the selection rule `-m₋ = n_ρ₊ + n_ρ₋ + 1`.
    pub fn is_matched(&self) -> bool {
        -self.minus.index.m == self.plus.index.n_rho as i64 + self.minus.index.n_rho as i64 + 1
    }

    /// Total weight u₀ = c₊ + c₋.
    pub fn u0(&self) -> f64 {
        self.c_plus + self.c_minus
    }

    /// Rescale the weights so that both members contribute the amplitude u₀/2
    /// on the circle ρ = rho (where the two-wave picture lives). Fails when a
    /// radial node sits on the circle.
    pub fn balanced_on_circle(&self, rho: f64) -> Result<ModePair> {
        let u0 = self.u0();
        let rp = radial_profile(&self.plus, rho);
        let rm = radial_profile(&self.minus, rho);
        if rp.abs() < 1e-12 || rm.abs() < 1e-12 {
            return Err(Error::InvalidParams(format!(
                "cannot balance amplitudes: radial profile ~0 on the circle (R+ = {rp:.3e}, R- = {rm:.3e})"
            )));
        }
        Ok(ModePair {
            c_plus: 0.5 * u0 / rp,
            c_minus: 0.5 * u0 / rm,
            ..*self
        })
    }
}

/// Weighted superposition `c₊ u₊(p) + c₋ u₋(p)`.
pub fn superpose_pair(pair: &ModePair, p: &SpacetimePoint) -> Complex64 {
    pair.c_plus * evaluate_mode(&pair.plus, p) + pair.c_minus * evaluate_mode(&pair.minus, p)
}

/// Mean frequency (ω₊ + ω₋)/2 of a pair.
pub fn pair_frequency(pair: &ModePair) -> f64 {
    0.5 * (pair.plus.omega + pair.minus.omega)
}

/// All planar index tuples with the quantum number n satisfying the selection
/// rule, in deterministic order (by -m₋ ascending, then n_ρ₊ ascending). The
/// first entry is the nodeless canonical pair (m₊ = 2n-1, m₋ = -1).
pub fn enumerate_mode_pairs(
    n: u32,
    params: &MediumParams,
    policy: PairPolicy,
) -> Result<Vec<ModePair>> {
    if n < 1 {
        return Err(Error::EmptySet { n: n as i64 });
    }
    let j_max = match policy {
        PairPolicy::Strict => 2 * n - 1,
        PairPolicy::Permissive => 2 * n,
    };
    let mut pairs = Vec::new();
    for j in 1..=j_max {
        let m_minus = -(j as i64);
        let m_plus = 2 * n as i64 + m_minus;
        for n_rho_plus in 0..j {
            let n_rho_minus = j - 1 - n_rho_plus;
            let plus = FieldMode::new(ModeIndex::planar(m_plus, n_rho_plus), params)?;
            let minus = FieldMode::new(ModeIndex::planar(m_minus, n_rho_minus), params)?;
            pairs.push(ModePair::new(plus, minus)?);
        }
    }
    Ok(pairs)
}

/// The nodeless representative pair for a given n: m₊ = 2n-1, m₋ = -1,
/// n_ρ₊ = n_ρ₋ = 0.
pub fn canonical_pair(n: u32, params: &MediumParams) -> Result<ModePair> {
    if n < 1 {
        return Err(Error::EmptySet { n: n as i64 });
    }
    let plus = FieldMode::new(ModeIndex::planar(2 * n as i64 - 1, 0), params)?;
    let minus = FieldMode::new(ModeIndex::planar(-1, 0), params)?;
    ModePair::new(plus, minus)
}

/// Weak-field regime guard threshold on -eB/ω₀².
pub const WEAK_FIELD_THRESHOLD: f64 = 0.1;

/// First-order (Landau-ladder) frequency `ω₀ + n ω_L|_{m_eff = ω₀}`, with a
/// flag warning when the field is too strong for the expansion to be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakFieldEstimate {
    pub value: f64,
    /// -eB/ω₀², the expansion parameter.
    pub field_ratio: f64,
    /// false = WeakFieldViolation warning.
    pub within_threshold: bool,
}

/// `ω₀ + n·(-eB/ω₀)`: the Landau ladder built from the field's own mass.
pub fn weak_field_frequency(n: u32, params: &MediumParams) -> WeakFieldEstimate {
    let ratio = -params.charge * params.field_b / params.omega0.powi(2);
    WeakFieldEstimate {
        value: params.omega0 + n as f64 * (-params.charge * params.field_b / params.omega0),
        field_ratio: ratio,
        within_threshold: ratio <= WEAK_FIELD_THRESHOLD,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::collections::BTreeSet;

    fn params(b: f64) -> MediumParams {
        MediumParams::with_effective_mass(-1.0, b, 1.0, 1.0).unwrap()
    }

    #[test]
    fn mode_frequency_values() {
        let p = params(0.0);
        assert_eq!(mode_frequency(&ModeIndex::planar(0, 0), &p), 1.0);
        let p = params(0.01);
        assert_relative_eq!(
            mode_frequency(&ModeIndex::planar(0, 0), &p),
            1.01f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            mode_frequency(&ModeIndex::planar(-3, 2), &p),
            1.05f64.sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn negative_m_levels_exactly_degenerate() {
        let p = params(0.037);
        let base = mode_frequency(&ModeIndex::planar(-1, 3), &p);
        for m in -5..=-1 {
            assert_eq!(mode_frequency(&ModeIndex::planar(m, 3), &p), base);
        }
    }

    #[test]
    fn dispersion_identity() {
        let p = params(1e-3);
        for m in -4..=4i64 {
            for n_rho in 0..4u32 {
                for &k_z in &[0.0, 0.3] {
                    let idx = ModeIndex { m, n_rho, k_z };
                    let mode = FieldMode::new(idx, &p).unwrap();
                    let s2 = (2 * n_rho as i64 + m.abs() + m + 1) as f64;
                    let rhs = p.omega0.powi(2) - p.charge * p.field_b * s2 + k_z * k_z;
                    assert!((mode.omega.powi(2) - rhs).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn ground_profile_is_one_at_axis() {
        let p = params(0.01);
        let mode = FieldMode::new(ModeIndex::planar(0, 0), &p).unwrap();
        assert_eq!(radial_profile(&mode, 0.0), 1.0);
        // m != 0 vanishes on the axis
        let mode = FieldMode::new(ModeIndex::planar(2, 0), &p).unwrap();
        assert_eq!(radial_profile(&mode, 0.0), 0.0);
    }

    #[test]
    fn m1_profile_peaks_at_xi_one() {
        let p = params(0.01);
        let mode = FieldMode::new(ModeIndex::planar(1, 0), &p).unwrap();
        assert_relative_eq!(mode.xi_peak, 1.0, max_relative = 1e-6);
        // peak-normalized: |R| at the peak radius is 1
        let rho_pk = mode.radial_peak().unwrap();
        assert_relative_eq!(radial_profile(&mode, rho_pk).abs(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn node_counts_match_radial_number() {
        let p = params(0.01);
        for m in [0i64, 1, -2, 3] {
            for n_rho in 0..4u32 {
                let idx = ModeIndex::planar(m, n_rho);
                let mode = FieldMode::new(idx, &p).unwrap();
                let rho_max = rho_of_xi(xi_support(&idx), &p).unwrap();
                let n_scan = 6000;
                let mut changes = 0;
                let mut prev = radial_profile(&mode, rho_max / n_scan as f64 * 0.5);
                for i in 1..=n_scan {
                    let v = radial_profile(&mode, rho_max * i as f64 / n_scan as f64);
                    if prev != 0.0 && v != 0.0 && prev.signum() != v.signum() {
                        changes += 1;
                    }
                    if v != 0.0 {
                        prev = v;
                    }
                }
                assert_eq!(changes, n_rho, "m={m} n_rho={n_rho}");
            }
        }
    }

    #[test]
    fn profile_decays() {
        let p = params(0.01);
        let mode = FieldMode::new(ModeIndex::planar(2, 1), &p).unwrap();
        let r = mode.decay_radius(1e-8).unwrap();
        assert!(radial_profile(&mode, r).abs() <= 1e-8);
        assert!(radial_profile(&mode, 1.5 * r).abs() <= 1e-8);
    }

    #[test]
    fn mode_evaluation_phases() {
        let p = params(0.01);
        let mode = FieldMode::new(ModeIndex::planar(1, 0), &p).unwrap();
        let rho = mode.radial_peak().unwrap();
        let at = |t: f64, phi: f64| evaluate_mode(&mode, &SpacetimePoint::new(t, rho, phi, 0.0));
        // zero phase: purely real
        let v0 = at(0.0, 0.0);
        assert_eq!(v0.im, 0.0);
        assert_relative_eq!(v0.re, radial_profile(&mode, rho));
        // half turn flips sign for m = 1
        let vpi = at(0.0, std::f64::consts::PI);
        assert_relative_eq!(vpi.re, -v0.re, max_relative = 1e-12);
        // one full period in t returns the same value
        let vt = at(2.0 * std::f64::consts::PI / mode.omega, 0.0);
        assert_relative_eq!(vt.re, v0.re, max_relative = 1e-9);
        assert!(vt.im.abs() < 1e-12);
    }

    #[test]
    fn enumeration_small_n() {
        let p = params(1e-3);
        let strict = enumerate_mode_pairs(1, &p, PairPolicy::Strict).unwrap();
        assert_eq!(strict.len(), 1);
        let pr = &strict[0];
        assert_eq!(
            (
                pr.plus.index.m,
                pr.minus.index.m,
                pr.plus.index.n_rho,
                pr.minus.index.n_rho
            ),
            (1, -1, 0, 0)
        );
        assert!(pr.is_matched());

        let perm = enumerate_mode_pairs(1, &p, PairPolicy::Permissive).unwrap();
        assert_eq!(perm.len(), 3);
        let extra: BTreeSet<_> = perm[1..]
            .iter()
            .map(|q| {
                (
                    q.plus.index.m,
                    q.minus.index.m,
                    q.plus.index.n_rho,
                    q.minus.index.n_rho,
                )
            })
            .collect();
        assert!(extra.contains(&(0, -2, 1, 0)));
        assert!(extra.contains(&(0, -2, 0, 1)));

        assert_eq!(
            enumerate_mode_pairs(2, &p, PairPolicy::Strict).unwrap().len(),
            6
        );
        assert!(matches!(
            enumerate_mode_pairs(0, &p, PairPolicy::Strict),
            Err(Error::EmptySet { .. })
        ));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let p = params(1e-3);
        for n in 1..=4u32 {
            for policy in [PairPolicy::Strict, PairPolicy::Permissive] {
                let fast: BTreeSet<_> = enumerate_mode_pairs(n, &p, policy)
                    .unwrap()
                    .iter()
                    .map(|q| {
                        (
                            q.plus.index.m,
                            q.minus.index.m,
                            q.plus.index.n_rho,
                            q.minus.index.n_rho,
                        )
                    })
                    .collect();
                let mut slow = BTreeSet::new();
                let lim = 4 * n as i64;
                let m_plus_min = if policy == PairPolicy::Strict { 1 } else { 0 };
                for m_plus in m_plus_min..=lim {
                    for m_minus in -lim..=-1 {
                        for n_rho_plus in 0..=lim {
                            for n_rho_minus in 0..=lim {
                                let sel = n_rho_plus + n_rho_minus + m_plus + 1;
                                if m_plus - m_minus == 2 * n as i64 && sel == 2 * n as i64 {
                                    slow.insert((
                                        m_plus,
                                        m_minus,
                                        n_rho_plus as u32,
                                        n_rho_minus as u32,
                                    ));
                                }
                            }
                        }
                    }
                }
                assert_eq!(fast, slow, "n={n} policy={policy:?}");
            }
        }
    }

    #[test]
    fn pair_frequency_values() {
        let p = params(0.0);
        let pair = canonical_pair(1, &p).unwrap();
        assert_eq!(pair_frequency(&pair), 1.0);

        let p = params(1e-3);
        let pair = canonical_pair(1, &p).unwrap();
        let expect = 0.5 * (1.003f64.sqrt() + 1.001f64.sqrt());
        assert_relative_eq!(pair_frequency(&pair), expect, max_relative = 1e-15);
        // sits below the first-order ladder by O((B/ω₀²)²)
        let ladder = weak_field_frequency(1, &p).value;
        let gap = pair_frequency(&pair) - ladder;
        assert!(gap < 0.0 && gap.abs() < 10.0 * (p.field_b / p.omega0.powi(2)).powi(2));
    }

    #[test]
    fn weak_field_values_and_warning() {
        let p = params(1e-3);
        assert_relative_eq!(
            weak_field_frequency(1, &p).value,
            1.001,
            max_relative = 1e-15
        );
        assert!(weak_field_frequency(1, &p).within_threshold);
        let p0 = params(0.0);
        assert_eq!(weak_field_frequency(5, &p0).value, 1.0);

        let p = MediumParams::with_effective_mass(-1.0, 1e-3, 1.0, 2.0).unwrap();
        assert_relative_eq!(
            weak_field_frequency(3, &p).value,
            2.0015,
            max_relative = 1e-15
        );

        let strong = params(0.5);
        assert!(!weak_field_frequency(1, &strong).within_threshold);
    }

    #[test]
    fn superposition_reduces_and_balances() {
        let p = params(1e-3);
        let pair = canonical_pair(1, &p).unwrap();
        // c₋ = 0 reduces to a single weighted mode
        let single = ModePair {
            c_minus: 0.0,
            ..pair
        };
        let pt = SpacetimePoint::new(0.3, 20.0, 1.1, 0.0);
        let lhs = superpose_pair(&single, &pt);
        let rhs = pair.c_plus * evaluate_mode(&pair.plus, &pt);
        assert_relative_eq!(lhs.re, rhs.re);
        assert_relative_eq!(lhs.im, rhs.im);

        // zero phases: real sum of the two radial parts
        let v = superpose_pair(&pair, &SpacetimePoint::new(0.0, 20.0, 0.0, 0.0));
        assert_eq!(v.im, 0.0);
        assert_relative_eq!(
            v.re,
            0.5 * radial_profile(&pair.plus, 20.0) + 0.5 * radial_profile(&pair.minus, 20.0)
        );

        // balancing equalizes the on-circle contributions
        let rho = 35.0;
        let bal = pair.balanced_on_circle(rho).unwrap();
        assert_relative_eq!(
            bal.c_plus * radial_profile(&bal.plus, rho),
            bal.c_minus * radial_profile(&bal.minus, rho),
            max_relative = 1e-12
        );
        assert_relative_eq!(bal.u0(), 1.0);
    }

    #[test]
    fn pair_validation() {
        let p = params(1e-3);
        let a = FieldMode::new(ModeIndex::planar(1, 0), &p).unwrap();
        let b = FieldMode::new(ModeIndex::planar(-1, 0), &p).unwrap();
        // swapped roles rejected
        assert!(ModePair::new(b, a).is_err());
        // odd difference rejected
        let c = FieldMode::new(ModeIndex::planar(2, 0), &p).unwrap();
        assert!(ModePair::new(c, b).is_err());
        // k_z != 0 rejected
        let kz = FieldMode::new(ModeIndex { m: 1, n_rho: 0, k_z: 0.2 }, &p).unwrap();
        assert!(ModePair::new(kz, b).is_err());
    }
}
