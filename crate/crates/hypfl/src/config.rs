//! Resolved run configuration and tolerance profiles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use hypfl_core::hyperbolic::RootTolerances;
use hypfl_core::phases::PhaseTolerances;
use hypfl_core::probe::TrendRule;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceProfile {
    Strict,
    #[default]
    Default,
}

impl FromStr for ToleranceProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(Self::Strict),
            "default" => Ok(Self::Default),
            other => Err(format!("unknown tolerance profile `{other}` (strict|default)")),
        }
    }
}

impl fmt::Display for ToleranceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strict => "strict",
            Self::Default => "default",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseTolerancesJson {
    pub budget: usize,
    pub imag_floor: f64,
    pub homogeneity: f64,
    pub delta: f64,
    pub periodicity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootTolerancesJson {
    pub gap: f64,
    pub imag: f64,
}

/// Every tolerance a command may consult.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub phase: PhaseTolerancesJson,
    pub roots: RootTolerancesJson,
    pub trend: TrendRule,
}

impl Tolerances {
    pub fn for_profile(profile: ToleranceProfile) -> Self {
        match profile {
            ToleranceProfile::Default => {
                let p = PhaseTolerances::default();
                let r = RootTolerances::default();
                Self {
                    phase: PhaseTolerancesJson {
                        budget: hypfl_core::fio::DEFAULT_PHASE_BUDGET,
                        imag_floor: p.imag_floor,
                        homogeneity: p.homogeneity,
                        delta: p.delta,
                        periodicity: p.periodicity,
                    },
                    roots: RootTolerancesJson { gap: r.gap, imag: r.imag },
                    trend: TrendRule::default(),
                }
            }
            ToleranceProfile::Strict => Self {
                phase: PhaseTolerancesJson {
                    budget: 512,
                    imag_floor: -1e-14,
                    homogeneity: 1e-11,
                    delta: 1e-5,
                    periodicity: 1e-11,
                },
                roots: RootTolerancesJson { gap: 1e-2, imag: 1e-12 },
                trend: TrendRule {
                    max_residual: 0.05,
                    ..TrendRule::default()
                },
            },
        }
    }

    pub fn phase_tolerances(&self) -> PhaseTolerances {
        PhaseTolerances {
            imag_floor: self.phase.imag_floor,
            homogeneity: self.phase.homogeneity,
            delta: self.phase.delta,
            periodicity: self.phase.periodicity,
        }
    }

    pub fn root_tolerances(&self) -> RootTolerances {
        RootTolerances {
            gap: self.roots.gap,
            imag: self.roots.imag,
        }
    }
}

/// The fully resolved invocation, embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub seed: Option<u64>,
    pub tolerance_profile: ToleranceProfile,
    pub tolerances: Tolerances,
}

impl RunConfig {
    pub fn new(command: &str, profile: ToleranceProfile) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            seed: None,
            tolerance_profile: profile,
            tolerances: Tolerances::for_profile(profile),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params
            .insert(key.to_string(), serde_json::to_value(value).expect("plain data serializes"));
        self
    }

    pub fn input(mut self, path: impl fmt::Display) -> Self {
        self.inputs.push(path.to_string());
        self
    }

    pub fn output(mut self, path: impl fmt::Display) -> Self {
        self.outputs.push(path.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_config_round_trips() {
        let c = RunConfig::new("norm", ToleranceProfile::Strict)
            .param("p", "2")
            .param("s", 0.5)
            .input("f.gfn")
            .seed(7);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
    }

    #[test]
    fn unknown_keys_rejected() {
        let c = RunConfig::new("norm", ToleranceProfile::Default);
        let mut v = serde_json::to_value(&c).unwrap();
        v["extra"] = Value::Bool(true);
        assert!(serde_json::from_value::<RunConfig>(v).is_err());
    }

    #[test]
    fn strict_is_tighter() {
        let d = Tolerances::for_profile(ToleranceProfile::Default);
        let s = Tolerances::for_profile(ToleranceProfile::Strict);
        assert!(s.phase.homogeneity < d.phase.homogeneity);
        assert!(s.phase.budget > d.phase.budget);
        assert!(s.roots.gap > d.roots.gap);
        assert!(s.trend.max_residual < d.trend.max_residual);
    }
}
