//! Flat `key = value` scenario configuration.
//!
//! UTF-8 text, one assignment per line, `#` starts a comment, lists are
//! comma-separated. Unknown and duplicated keys are errors. The mass can be
//! given either directly (`m_eff`) or through the internal-clock data
//! (`mass_p`, `sigma`, `omega_p_clock`, `z0_abs`); giving both is an error
//! unless they agree to 1e-12.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::dynamics::MediumParams;
use crate::error::{Error, Result};
use crate::modes::PairPolicy;
use crate::transparency::Tolerances;

#[derive(Debug, Clone)]
pub struct Scenario {
    pub params: MediumParams,
    pub n_list: Vec<u32>,
    pub policy: PairPolicy,
    pub tolerances: Tolerances,
    pub output_path: Option<PathBuf>,
}

const KNOWN_KEYS: &[&str] = &[
    "charge",
    "field_b",
    "mass_p",
    "sigma",
    "omega_p_clock",
    "z0_abs",
    "omega0",
    "m_eff",
    "n_list",
    "policy",
    "output.path",
    "tolerances.guidance",
    "tolerances.debroglie_k",
    "tolerances.debroglie_omega",
    "tolerances.landau",
    "tolerances.holonomic",
    "tolerances.mass_match",
];

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(Error::ParseError {
            line: line_no,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::ParseError {
                line: line_no,
                msg: format!("unknown key `{key}`"),
            });
        }
        if entries.insert(key.clone(), (line_no, value)).is_some() {
            return Err(Error::ParseError {
                line: line_no,
                msg: format!("duplicate key `{key}`"),
            });
        }
    }

    let number = |key: &str| -> Result<Option<f64>> {
        match entries.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse::<f64>().map(Some).map_err(|_| Error::ParseError {
                line: *line,
                msg: format!("`{key}` must be a number, got `{v}`"),
            }),
        }
    };
    let require = |key: &str, v: Option<f64>| -> Result<f64> {
        v.ok_or_else(|| Error::ValidationError {
            key: key.into(),
            msg: "required key missing".into(),
        })
    };

    let charge = require("charge", number("charge")?)?;
    let field_b = require("field_b", number("field_b")?)?;
    let omega0 = require("omega0", number("omega0")?)?;
    if charge >= 0.0 {
        return Err(Error::ValidationError {
            key: "charge".into(),
            msg: format!("charge must be negative, got {charge}"),
        });
    }

    let m_eff = number("m_eff")?;
    let mass_p = number("mass_p")?;
    let sigma = number("sigma")?;
    let omega_p_clock = number("omega_p_clock")?;
    let z0_abs = number("z0_abs")?;
    let triple_given = mass_p.is_some() || sigma.is_some() || omega_p_clock.is_some() || z0_abs.is_some();

    let params = match (m_eff, triple_given) {
        (None, false) => {
            return Err(Error::ValidationError {
                key: "m_eff".into(),
                msg: "either m_eff or the (mass_p, sigma, omega_p_clock, z0_abs) data is required"
                    .into(),
            })
        }
        (Some(m), false) => MediumParams::with_effective_mass(charge, field_b, m, omega0)?,
        (maybe_m, true) => {
            let p = MediumParams::new(
                charge,
                field_b,
                require("mass_p", mass_p)?,
                sigma.unwrap_or(0.0),
                omega_p_clock.unwrap_or(1.0),
                z0_abs.unwrap_or(0.0),
                omega0,
            )?;
            if let Some(m) = maybe_m {
                if (p.m_eff() - m).abs() > 1e-12 * m.abs() {
                    return Err(Error::ValidationError {
                        key: "m_eff".into(),
                        msg: format!(
                            "m_eff = {m} inconsistent with the clock data (which give {})",
                            p.m_eff()
                        ),
                    });
                }
            }
            p
        }
    };

    let n_list: Vec<u32> = match entries.get("n_list") {
        None => {
            return Err(Error::ValidationError {
                key: "n_list".into(),
                msg: "required key missing".into(),
            })
        }
        Some((line, v)) => v
            .split(',')
            .map(|tok| {
                tok.trim().parse::<u32>().map_err(|_| Error::ParseError {
                    line: *line,
                    msg: format!("n_list entries must be non-negative integers, got `{}`", tok.trim()),
                })
            })
            .collect::<Result<_>>()?,
    };
    if n_list.is_empty() {
        return Err(Error::ValidationError {
            key: "n_list".into(),
            msg: "must not be empty".into(),
        });
    }

    let policy = match entries.get("policy") {
        None => PairPolicy::Strict,
        Some((_, v)) => v.parse::<PairPolicy>()?,
    };

    let tolerances = Tolerances {
        guidance: number("tolerances.guidance")?.unwrap_or(Tolerances::default().guidance),
        debroglie_k: number("tolerances.debroglie_k")?
            .unwrap_or(Tolerances::default().debroglie_k),
        debroglie_omega: number("tolerances.debroglie_omega")?,
        landau: number("tolerances.landau")?,
        holonomic: number("tolerances.holonomic")?.unwrap_or(Tolerances::default().holonomic),
        mass_match: number("tolerances.mass_match")?.unwrap_or(Tolerances::default().mass_match),
    };
    tolerances.validate()?;

    let output_path = entries
        .get("output.path")
        .map(|(_, v)| PathBuf::from(v.clone()));

    Ok(Scenario {
        params,
        n_list,
        policy,
        tolerances,
        output_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
# minimal scenario
charge = -1
field_b = 1e-3
m_eff = 1.0
omega0 = 1.0
n_list = 1
";

    #[test]
    fn minimal_scenario_parses() {
        let s = parse_scenario(MINIMAL).unwrap();
        assert_eq!(s.params.m_eff(), 1.0);
        assert_eq!(s.n_list, vec![1]);
        assert_eq!(s.policy, PairPolicy::Strict);
        assert!(s.output_path.is_none());
    }

    #[test]
    fn positive_charge_rejected() {
        let text = MINIMAL.replace("charge = -1", "charge = 1");
        match parse_scenario(&text) {
            Err(Error::ValidationError { key, .. }) => assert_eq!(key, "charge"),
            other => panic!("expected charge validation error, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_masses_rejected() {
        let text = format!("{MINIMAL}mass_p = 1.0\nsigma = 1.0\nomega_p_clock = 1.0\nz0_abs = 1.0\n");
        // clock data give m_eff = 2 while m_eff = 1 was claimed
        match parse_scenario(&text) {
            Err(Error::ValidationError { key, .. }) => assert_eq!(key, "m_eff"),
            other => panic!("expected inconsistency error, got {other:?}"),
        }
    }

    #[test]
    fn consistent_clock_data_accepted() {
        let text = "charge = -1\nfield_b = 1e-3\nomega0 = 1\nn_list = 1,2\n\
                    mass_p = 0.5\nsigma = 2\nomega_p_clock = 3\nz0_abs = 0.1\nm_eff = 0.59\n";
        let s = parse_scenario(text).unwrap();
        assert!((s.params.m_eff() - 0.59).abs() < 1e-15);
    }

    #[test]
    fn unknown_and_duplicate_keys_rejected() {
        assert!(matches!(
            parse_scenario(&format!("{MINIMAL}charrge = -1\n")),
            Err(Error::ParseError { .. })
        ));
        assert!(matches!(
            parse_scenario(&format!("{MINIMAL}omega0 = 2\n")),
            Err(Error::ParseError { .. })
        ));
    }

    #[test]
    fn lists_policies_tolerances() {
        let text = format!(
            "{MINIMAL}policy = permissive\ntolerances.holonomic = 5.0\noutput.path = out.csv\n"
        )
        .replace("n_list = 1", "n_list = 1, 2, 5");
        let s = parse_scenario(&text).unwrap();
        assert_eq!(s.n_list, vec![1, 2, 5]);
        assert_eq!(s.policy, PairPolicy::Permissive);
        assert_eq!(s.tolerances.holonomic, 5.0);
        assert_eq!(s.output_path.unwrap(), PathBuf::from("out.csv"));
    }

    #[test]
    fn empty_n_list_rejected() {
        let text = MINIMAL.replace("n_list = 1", "n_list = ");
        assert!(parse_scenario(&text).is_err());
    }

    #[test]
    fn negative_tolerance_rejected() {
        let text = format!("{MINIMAL}tolerances.guidance = -1e-3\n");
        assert!(matches!(
            parse_scenario(&text),
            Err(Error::ValidationError { .. })
        ));
    }

    #[test]
    fn missing_assignment_is_parse_error() {
        assert!(matches!(
            parse_scenario("charge -1\n"),
            Err(Error::ParseError { line: 1, .. })
        ));
    }
}
