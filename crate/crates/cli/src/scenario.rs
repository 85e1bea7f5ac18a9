//! Scenario documents: initial probabilities plus a decay law.
//!
//! ```json
//! {
//!   "probabilities": [0.8, 0.9, 0.7, 0.7],
//!   "decay": { "type": "additive", "rate": 0.1, "interval": 1.0 },
//!   "objective": "expected"
//! }
//! ```
//!
//! `decay` may instead be `{ "type": "multiplicative", "factor": 0.9 }`.
//! `interval` defaults to 1 and `objective` (`expected` or `all`) to
//! `expected`.

use clap::ValueEnum;
use rescue_core::{DecaySpec, Objective, ProbabilityVector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveName {
    Expected,
    All,
}

impl From<ObjectiveName> for Objective {
    fn from(name: ObjectiveName) -> Self {
        match name {
            ObjectiveName::Expected => Objective::ExpectedSuccesses,
            ObjectiveName::All => Objective::ProbAllSuccess,
        }
    }
}

impl From<Objective> for ObjectiveName {
    fn from(objective: Objective) -> Self {
        match objective {
            Objective::ExpectedSuccesses => ObjectiveName::Expected,
            Objective::ProbAllSuccess => ObjectiveName::All,
        }
    }
}

/// Decay law as written in the document; additive decay is linear in the
/// stage number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum DecayConfig {
    Additive {
        rate: f64,
        #[serde(default = "default_interval")]
        interval: f64,
    },
    Multiplicative {
        factor: f64,
    },
}

fn default_interval() -> f64 {
    1.0
}

impl DecayConfig {
    /// Concrete law for `n` items.
    pub fn to_spec(&self, n: usize) -> Result<DecaySpec, CliError> {
        match *self {
            DecayConfig::Additive { rate, interval } => {
                let spec = DecaySpec::linear(rate, n)
                    .map_err(|e| CliError::validation("decay.rate", e))?;
                match spec {
                    DecaySpec::Additive { decay, .. } => Ok(DecaySpec::Additive { decay, interval }),
                    DecaySpec::Multiplicative { .. } => unreachable!(),
                }
            }
            DecayConfig::Multiplicative { factor } => DecaySpec::multiplicative(factor)
                .map_err(|e| CliError::validation("decay.factor", e)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub probabilities: ProbabilityVector,
    pub decay: DecayConfig,
    pub objective: Objective,
}

impl ScenarioConfig {
    pub fn decay_spec(&self) -> Result<DecaySpec, CliError> {
        self.decay.to_spec(self.probabilities.len())
    }

    pub fn to_json(&self) -> String {
        let doc = ScenarioDocument {
            probabilities: self.probabilities.to_vec(),
            decay: self.decay,
            objective: Some(self.objective.into()),
        };
        serde_json::to_string_pretty(&doc).expect("scenario serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDocument {
    probabilities: Vec<f64>,
    decay: DecayConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    objective: Option<ObjectiveName>,
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, CliError> {
    let doc: ScenarioDocument = serde_json::from_str(text).map_err(|e| {
        CliError::validation(
            format!("scenario (line {}, column {})", e.line(), e.column()),
            e,
        )
    })?;

    if doc.probabilities.is_empty() {
        return Err(CliError::validation("probabilities", "list must not be empty"));
    }
    if let Some((i, p)) =
        doc.probabilities.iter().enumerate().find(|(_, p)| !(0.0..=1.0).contains(*p))
    {
        return Err(CliError::validation(
            format!("probabilities[{i}]"),
            format!("{p} is outside [0, 1]"),
        ));
    }
    match doc.decay {
        DecayConfig::Additive { rate, interval } => {
            if !(rate >= 0.0 && rate.is_finite()) {
                return Err(CliError::validation("decay.rate", format!("{rate} must be >= 0")));
            }
            if !(interval > 0.0 && interval.is_finite()) {
                return Err(CliError::validation(
                    "decay.interval",
                    format!("{interval} must be > 0"),
                ));
            }
        }
        DecayConfig::Multiplicative { factor } => {
            if !(factor > 0.0 && factor < 1.0) {
                return Err(CliError::validation(
                    "decay.factor",
                    format!("{factor} is outside the open interval (0, 1)"),
                ));
            }
        }
    }
    let probabilities = ProbabilityVector::new(doc.probabilities)
        .map_err(|e| CliError::validation("probabilities", e))?;
    Ok(ScenarioConfig {
        probabilities,
        decay: doc.decay,
        objective: doc.objective.map_or(Objective::ExpectedSuccesses, Into::into),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field_of(err: CliError) -> String {
        match err {
            CliError::Validation { field, .. } => field,
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn parses_first_worked_example() {
        let cfg = parse_scenario(
            r#"{"probabilities": [0.8, 0.9, 0.7, 0.7], "decay": {"type": "additive", "rate": 0.1}}"#,
        )
        .unwrap();
        assert_eq!(cfg.probabilities.as_slice(), &[0.8, 0.9, 0.7, 0.7]);
        assert_eq!(cfg.decay, DecayConfig::Additive { rate: 0.1, interval: 1.0 });
        assert_eq!(cfg.objective, Objective::ExpectedSuccesses);
        assert_eq!(cfg.decay_spec().unwrap(), DecaySpec::linear(0.1, 4).unwrap());
    }

    #[test]
    fn parses_multiplicative_and_objective() {
        let cfg = parse_scenario(
            r#"{"probabilities": [0.5], "decay": {"type": "multiplicative", "factor": 0.9},
                "objective": "all"}"#,
        )
        .unwrap();
        assert_eq!(cfg.decay, DecayConfig::Multiplicative { factor: 0.9 });
        assert_eq!(cfg.objective, Objective::ProbAllSuccess);
    }

    #[test]
    fn rejects_empty_probabilities() {
        let err = parse_scenario(r#"{"probabilities": [], "decay": {"type": "additive", "rate": 0.1}}"#)
            .unwrap_err();
        assert_eq!(field_of(err), "probabilities");
    }

    #[test]
    fn rejects_closed_factor() {
        let err = parse_scenario(
            r#"{"probabilities": [0.5], "decay": {"type": "multiplicative", "factor": 1.0}}"#,
        )
        .unwrap_err();
        assert_eq!(field_of(err), "decay.factor");
    }

    #[test]
    fn rejects_out_of_range_probability_with_position() {
        let err = parse_scenario(
            r#"{"probabilities": [0.5, 0.2, 1.3], "decay": {"type": "additive", "rate": 0.1}}"#,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "probabilities[2]: 1.3 is outside [0, 1]");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn rejects_negative_rate_and_bad_interval() {
        let err = parse_scenario(
            r#"{"probabilities": [0.5], "decay": {"type": "additive", "rate": -0.1}}"#,
        )
        .unwrap_err();
        assert_eq!(field_of(err), "decay.rate");
        let err = parse_scenario(
            r#"{"probabilities": [0.5], "decay": {"type": "additive", "rate": 0.1, "interval": 0}}"#,
        )
        .unwrap_err();
        assert_eq!(field_of(err), "decay.interval");
    }

    #[test]
    fn malformed_document_reports_position() {
        let err = parse_scenario("{\n  \"probabilities\": [0.5,\n}").unwrap_err();
        assert!(field_of(err).starts_with("scenario (line 3"));
        let err = parse_scenario(r#"{"probabilities": [0.5], "decay": {"type": "linear"}}"#)
            .unwrap_err();
        assert!(field_of(err).starts_with("scenario"));
    }
}
