//! Batch commands behind the CLI: orbit/spectrum/pairs tables, the
//! consistency-check document, and the field-equation residual study.
//!
//! Tables are CSV with LF line endings and a fixed 17-significant-digit
//! float rendering, so a fixed scenario produces byte-identical output.

use serde::Serialize;

use crate::dynamics::{bohr_sommerfeld, nonrel_energy, orbit_from_n};
use crate::error::{Error, Result};
use crate::modes::{
    enumerate_mode_pairs, evaluate_mode, pair_frequency, weak_field_frequency, FieldMode,
    SpacetimePoint,
};
use crate::numerics::{kg_convergence, Grid2D};
use crate::scenario::Scenario;
use crate::transparency::{landau_match_report, TransparencyReport};

/// 17 significant digits, deterministic.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv(header: &str, rows: Vec<String>) -> String {
    let mut out = String::with_capacity(rows.len() * 64 + header.len() + 2);
    out.push_str(header);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

fn require_positive_n(scenario: &Scenario) -> Result<()> {
    if scenario.n_list.iter().any(|&n| n < 1) {
        return Err(Error::ValidationError {
            key: "n_list".into(),
            msg: "this command requires every n >= 1".into(),
        });
    }
    Ok(())
}

/// Orbit table: one row per n in the scenario list.
pub fn run_orbit(scenario: &Scenario) -> Result<String> {
    let p = &scenario.params;
    let mut rows = Vec::new();
    for &n in &scenario.n_list {
        let orbit = orbit_from_n(n as f64, p)?;
        rows.push(
            [
                n.to_string(),
                fmt_float(orbit.rho),
                fmt_float(orbit.v),
                fmt_float(orbit.gamma),
                fmt_float(orbit.energy),
                fmt_float(nonrel_energy(n as f64, p)),
                fmt_float(bohr_sommerfeld(&orbit, p)),
            ]
            .join(","),
        );
    }
    Ok(csv(
        "n,rho,v,gamma,energy,energy_nonrel,bohr_sommerfeld_roundtrip",
        rows,
    ))
}

fn pairs_table(scenario: &Scenario) -> Result<String> {
    let mut rows = Vec::new();
    for &n in &scenario.n_list {
        for pair in enumerate_mode_pairs(n, &scenario.params, scenario.policy)? {
            rows.push(
                [
                    n.to_string(),
                    pair.plus.index.m.to_string(),
                    pair.minus.index.m.to_string(),
                    pair.plus.index.n_rho.to_string(),
                    pair.minus.index.n_rho.to_string(),
                    fmt_float(pair.plus.omega),
                    fmt_float(pair.minus.omega),
                    fmt_float(pair_frequency(&pair)),
                ]
                .join(","),
            );
        }
    }
    Ok(csv(
        "n,m_plus,m_minus,n_rho_plus,n_rho_minus,omega_plus,omega_minus,pair_frequency",
        rows,
    ))
}

/// Spectrum table (one row per n) followed by the enumerated-pairs sub-table.
pub fn run_spectrum(scenario: &Scenario) -> Result<String> {
    require_positive_n(scenario)?;
    let p = &scenario.params;
    let mut rows = Vec::new();
    for &n in &scenario.n_list {
        let pair = crate::modes::canonical_pair(n, p)?;
        let exact = pair_frequency(&pair);
        let weak = weak_field_frequency(n, p).value;
        let energy = orbit_energy_or_free(n, p)?;
        rows.push(
            [
                n.to_string(),
                fmt_float(exact),
                fmt_float(weak),
                fmt_float(energy),
                fmt_float((exact - weak).abs()),
                fmt_float((exact - energy).abs()),
            ]
            .join(","),
        );
    }
    let head = csv(
        "n,pair_frequency,weak_field_frequency,particle_energy,gap_pair_weak,gap_pair_particle",
        rows,
    );
    Ok(format!("{head}\n{}", pairs_table(scenario)?))
}

/// E_n is finite at B = 0 (free limit) even though the orbit radius is not.
fn orbit_energy_or_free(n: u32, p: &crate::dynamics::MediumParams) -> Result<f64> {
    if p.field_b == 0.0 {
        Ok(p.m_eff())
    } else {
        Ok(orbit_from_n(n as f64, p)?.energy)
    }
}

/// Pairs table alone.
pub fn run_pairs(scenario: &Scenario) -> Result<String> {
    require_positive_n(scenario)?;
    pairs_table(scenario)
}

/// Structured result of the consistency suite.
#[derive(Debug, Clone, Serialize)]
pub struct CheckDocument {
    pub charge: f64,
    pub field_b: f64,
    pub m_eff: f64,
    pub omega0: f64,
    pub rows: Vec<TransparencyReport>,
    /// Failing gates as `n=<n>:<gate>`.
    pub failed_gates: Vec<String>,
    pub pass: bool,
}

impl CheckDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// Run every named residual for each n in the list.
pub fn run_check(scenario: &Scenario) -> Result<CheckDocument> {
    require_positive_n(scenario)?;
    let p = &scenario.params;
    let mut rows = Vec::new();
    for &n in &scenario.n_list {
        rows.push(crate::transparency::transparency_report(
            n,
            p,
            &scenario.tolerances,
        )?);
    }
    let failed_gates: Vec<String> = rows
        .iter()
        .flat_map(|r| {
            r.gates
                .iter()
                .filter(|g| !g.pass)
                .map(move |g| format!("n={}:{}", r.n, g.name))
        })
        .collect();
    Ok(CheckDocument {
        charge: p.charge,
        field_b: p.field_b,
        m_eff: p.m_eff(),
        omega0: p.omega0,
        rows,
        pass: failed_gates.is_empty(),
        failed_gates,
    })
}

/// The central table without the full residual suite (used by examples).
pub fn landau_rows(scenario: &Scenario) -> Result<Vec<TransparencyReport>> {
    require_positive_n(scenario)?;
    let n_max = *scenario.n_list.iter().max().unwrap();
    landau_match_report(n_max, &scenario.params, &scenario.tolerances)
}

const RESIDUAL_LEVELS: u32 = 3;

/// Deterministic residual grid for one mode: an annulus in ξ covering the
/// profile peak and most of its decay.
pub fn residual_grid(mode: &FieldMode) -> Result<(Grid2D, f64)> {
    let params = mode.params();
    if params.field_b == 0.0 {
        return Err(Error::InvalidParams(
            "residual study needs B > 0 (profiles degenerate at B = 0)".into(),
        ));
    }
    let xi_lo = 0.3f64.max(0.2 * mode.xi_peak);
    let xi_hi = crate::modes::xi_support(&mode.index).max(xi_lo * 4.0);
    let rho_of = |xi: f64| (xi / (-0.5 * params.charge * params.field_b)).sqrt();
    let grid = Grid2D::new(rho_of(xi_lo), rho_of(xi_hi), 72, 8)?;
    let time_step = 0.25 / mode.omega;
    Ok((grid, time_step))
}

/// Field-equation residual study over every distinct mode appearing in the
/// scenario's pairs: norms on three refinement levels plus observed orders.
pub fn run_residual(scenario: &Scenario) -> Result<String> {
    require_positive_n(scenario)?;
    let p = &scenario.params;
    let mut seen = std::collections::BTreeSet::new();
    let mut modes = Vec::new();
    for &n in &scenario.n_list {
        for pair in enumerate_mode_pairs(n, p, scenario.policy)? {
            for mode in [pair.plus, pair.minus] {
                if seen.insert((mode.index.m, mode.index.n_rho)) {
                    modes.push(mode);
                }
            }
        }
    }

    let mut rows = Vec::new();
    for mode in modes {
        let (grid, h_t) = residual_grid(&mode)?;
        let field = move |pt: &SpacetimePoint| evaluate_mode(&mode, pt);
        let study = kg_convergence(&field, p, &grid, h_t, 0.4, RESIDUAL_LEVELS)?;
        let mut cells = vec![
            mode.index.m.to_string(),
            mode.index.n_rho.to_string(),
            fmt_float(mode.omega),
        ];
        for level in &study.levels {
            cells.push(fmt_float(level.max_residual));
            cells.push(fmt_float(level.l2_residual));
        }
        for s in &study.slopes {
            cells.push(fmt_float(*s));
        }
        rows.push(cells.join(","));
    }
    Ok(csv(
        "m,n_rho,omega,max_res_0,l2_res_0,max_res_1,l2_res_1,max_res_2,l2_res_2,slope_01,slope_12",
        rows,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    fn scenario(extra: &str) -> Scenario {
        parse_scenario(&format!(
            "charge = -1\nfield_b = 1e-2\nm_eff = 1\nomega0 = 1\nn_list = 0, 1, 2\n{extra}"
        ))
        .unwrap()
    }

    #[test]
    fn orbit_table_values() {
        let s = scenario("");
        let table = run_orbit(&s).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("n,rho,v"));
        // rest orbit row
        let rest: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(rest[0], "0");
        assert_eq!(rest[1], fmt_float(0.0));
        assert_eq!(rest[4], fmt_float(1.0));
        // n=1 row against the closed forms (ω_L = 0.01)
        let r1: Vec<&str> = lines[2].split(',').collect();
        assert_eq!(r1[1], fmt_float(200f64.sqrt()));
        assert_eq!(r1[2], fmt_float(1.0 / 51f64.sqrt()));
        assert_eq!(r1[4], fmt_float(1.02f64.sqrt()));
        // roundtrip column returns n
        let bs: f64 = r1[6].parse::<f64>().unwrap();
        assert!((bs - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn spectrum_requires_positive_n() {
        let s = scenario("");
        assert!(matches!(
            run_spectrum(&s),
            Err(Error::ValidationError { .. })
        ));
    }

    #[test]
    fn spectrum_and_pairs_tables() {
        let mut s = scenario("");
        s.n_list = vec![1, 2];
        let text = run_spectrum(&s).unwrap();
        let parts: Vec<&str> = text.split("\n\n").collect();
        assert_eq!(parts.len(), 2);
        // strict pairs: 1 for n=1, 6 for n=2, plus header
        assert_eq!(parts[1].lines().count(), 1 + 1 + 6);
        let pairs_only = run_pairs(&s).unwrap();
        assert_eq!(parts[1], pairs_only.trim_end_matches('\n'));
        // weak-field column: 1 + n * 1e-2
        let row1: Vec<&str> = parts[0].lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row1[2], fmt_float(1.01));
    }

    #[test]
    fn spectrum_at_zero_field_collapses_to_omega0() {
        let s = parse_scenario("charge = -1\nfield_b = 0\nm_eff = 1\nomega0 = 1\nn_list = 1, 3\n")
            .unwrap();
        let text = run_spectrum(&s).unwrap();
        for line in text.split("\n\n").next().unwrap().lines().skip(1) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells[1], fmt_float(1.0));
            assert_eq!(cells[2], fmt_float(1.0));
            assert_eq!(cells[3], fmt_float(1.0));
        }
    }

    #[test]
    fn check_document_passes_and_fails() {
        let mut s = scenario("");
        s.n_list = vec![1, 2];
        s.params = crate::dynamics::MediumParams::with_effective_mass(-1.0, 1e-3, 1.0, 1.0)
            .unwrap();
        let doc = run_check(&s).unwrap();
        assert!(doc.pass, "failed gates: {:?}", doc.failed_gates);
        let json = doc.to_json();
        assert!(json.contains("\"pass\": true"));

        s.params =
            crate::dynamics::MediumParams::with_effective_mass(-1.0, 1e-4, 1.0, 2.0).unwrap();
        let doc = run_check(&s).unwrap();
        assert!(!doc.pass);
        assert!(doc.failed_gates.iter().any(|g| g == "n=1:mass_match"));
        assert!(doc.failed_gates.iter().any(|g| g == "n=1:debroglie_omega"));
        assert!(!doc.failed_gates.iter().any(|g| g.contains("guidance")));
        assert!(!doc.failed_gates.iter().any(|g| g.contains("landau")));
    }

    #[test]
    fn spectrum_is_byte_deterministic() {
        let mut s = scenario("");
        s.n_list = vec![1, 2, 3];
        let a = run_spectrum(&s).unwrap();
        let b = run_spectrum(&s).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains('\r'));
    }

    #[test]
    fn residual_study_table() {
        let mut s = scenario("");
        s.n_list = vec![1];
        s.params = crate::dynamics::MediumParams::with_effective_mass(-1.0, 1e-3, 1.0, 1.0)
            .unwrap();
        let table = run_residual(&s).unwrap();
        let lines: Vec<&str> = table.lines().collect();
        // n=1 strict: modes (1,0) and (-1,0)
        assert_eq!(lines.len(), 3);
        for line in &lines[1..] {
            let cells: Vec<&str> = line.split(',').collect();
            let slope01: f64 = cells[9].parse().unwrap();
            let slope12: f64 = cells[10].parse().unwrap();
            assert!(slope01 >= 1.9 && slope12 >= 1.9, "slopes {slope01} {slope12}");
        }
    }
}
