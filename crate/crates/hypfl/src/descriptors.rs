//! JSON descriptors for catalogue phases, symbols and trigonometric coefficients.

use std::sync::Arc;

use hypfl_core::phases::{CataloguePhase, Phase};
use hypfl_core::symbols::{BesselSymbol, ModulatedSymbol, Symbol};
use hypfl_core::trigpoly::TrigPoly;
use hypfl_core::{Complex64, Error};
use serde::{Deserialize, Serialize};

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexJson {
    Real(f64),
    Pair([f64; 2]),
}

impl Default for ComplexJson {
    fn default() -> Self {
        ComplexJson::Real(0.0)
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(c: ComplexJson) -> Self {
        match c {
            ComplexJson::Real(r) => Complex64::new(r, 0.0),
            ComplexJson::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTermJson {
    /// One entry per axis; missing trailing entries are zero.
    pub k: Vec<i32>,
    #[serde(default)]
    pub cos: ComplexJson,
    #[serde(default)]
    pub sin: ComplexJson,
}

/// `constant + Σ (cos·cos 2πk·x + sin·sin 2πk·x)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigPolyJson {
    #[serde(default)]
    pub constant: ComplexJson,
    #[serde(default)]
    pub terms: Vec<TrigTermJson>,
}

impl TrigPolyJson {
    pub fn to_trig_poly(&self, dim: usize) -> Result<TrigPoly, Error> {
        let mut p = TrigPoly::constant(self.constant.into());
        for t in &self.terms {
            if t.k.is_empty() || t.k.len() > dim {
                return Err(Error::InvalidArgument(format!(
                    "trigonometric term k = {:?} does not fit dimension {dim}",
                    t.k
                )));
            }
            let mut k = [0i32; 2];
            k[..t.k.len()].copy_from_slice(&t.k);
            p = p.with_term(k, t.cos.into(), t.sin.into());
        }
        Ok(p)
    }
}

/// Parameters of a catalogue phase (and optionally a symbol amplitude).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseParams {
    pub d: Option<usize>,
    pub eps: Option<f64>,
    pub t: Option<f64>,
    pub c: Option<f64>,
    pub gamma: Option<TrigPolyJson>,
    pub tau: Option<f64>,
    /// `a(x)` in `σ = a(x)⟨k⟩^m`; absent means `a = 1`.
    pub amplitude: Option<TrigPolyJson>,
}

fn need(v: Option<f64>, name: &str, id: &str) -> Result<f64, Error> {
    v.ok_or_else(|| Error::InvalidArgument(format!("phase `{id}` needs parameter `{name}`")))
}

fn reject(present: bool, name: &str, id: &str) -> Result<(), Error> {
    if present {
        Err(Error::InvalidArgument(format!("phase `{id}` takes no parameter `{name}`")))
    } else {
        Ok(())
    }
}

impl PhaseParams {
    pub fn dim(&self) -> usize {
        self.d.unwrap_or(1)
    }

    pub fn build_phase(&self, id: &str) -> Result<CataloguePhase, Error> {
        let d = self.dim();
        match id {
            "identity" => {
                for (p, n) in [(self.eps.is_some(), "eps"), (self.t.is_some(), "t"), (self.c.is_some(), "c")] {
                    reject(p, n, id)?;
                }
                reject(self.gamma.is_some(), "gamma", id)?;
                reject(self.tau.is_some(), "tau", id)?;
                CataloguePhase::identity(d)
            }
            "torus-diffeo" => {
                if d != 1 {
                    return Err(Error::UnsupportedDimension(d));
                }
                for (p, n) in [(self.t.is_some(), "t"), (self.c.is_some(), "c")] {
                    reject(p, n, id)?;
                }
                reject(self.gamma.is_some(), "gamma", id)?;
                reject(self.tau.is_some(), "tau", id)?;
                CataloguePhase::torus_diffeo(need(self.eps, "eps", id)?)
            }
            "half-wave" => {
                for (p, n) in [(self.eps.is_some(), "eps"), (self.c.is_some(), "c")] {
                    reject(p, n, id)?;
                }
                reject(self.gamma.is_some(), "gamma", id)?;
                reject(self.tau.is_some(), "tau", id)?;
                CataloguePhase::half_wave(d, need(self.t, "t", id)?)
            }
            "dissipative" => {
                reject(self.eps.is_some(), "eps", id)?;
                let gamma = self
                    .gamma
                    .as_ref()
                    .ok_or_else(|| Error::InvalidArgument("phase `dissipative` needs parameter `gamma`".into()))?
                    .to_trig_poly(d)?;
                CataloguePhase::dissipative(
                    d,
                    need(self.t, "t", id)?,
                    need(self.c, "c", id)?,
                    gamma,
                    self.tau.unwrap_or(0.0),
                )
            }
            other => Err(Error::InvalidArgument(format!(
                "unknown phase `{other}` (identity|torus-diffeo|half-wave|dissipative)"
            ))),
        }
    }

    pub fn build_symbol(&self, order: f64) -> Result<Arc<dyn Symbol>, Error> {
        Ok(match &self.amplitude {
            None => Arc::new(BesselSymbol { order }),
            Some(a) => Arc::new(ModulatedSymbol {
                amplitude: a.to_trig_poly(self.dim())?,
                order,
            }),
        })
    }

    pub fn build(&self, id: &str, order: f64) -> Result<(Arc<dyn Phase>, Arc<dyn Symbol>), Error> {
        Ok((Arc::new(self.build_phase(id)?), self.build_symbol(order)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c: ComplexJson = serde_json::from_str("2.5").unwrap();
        assert_eq!(Complex64::from(c), Complex64::new(2.5, 0.0));
        let c: ComplexJson = serde_json::from_str("[1, -2]").unwrap();
        assert_eq!(Complex64::from(c), Complex64::new(1.0, -2.0));
    }

    #[test]
    fn trig_poly_from_json() {
        let j: TrigPolyJson = serde_json::from_str(r#"{"constant": 1, "terms": [{"k": [1], "cos": 0.2}]}"#).unwrap();
        let p = j.to_trig_poly(1).unwrap();
        assert!((p.eval(&[0.0]) - Complex64::new(1.2, 0.0)).norm() < 1e-15);
        assert!(j.to_trig_poly(1).is_ok());
        let bad: TrigPolyJson = serde_json::from_str(r#"{"terms": [{"k": [1, 1]}]}"#).unwrap();
        assert!(bad.to_trig_poly(1).is_err());
    }

    #[test]
    fn phases_from_params() {
        let p: PhaseParams = serde_json::from_str(r#"{"eps": 0.1}"#).unwrap();
        assert_eq!(p.build_phase("torus-diffeo").unwrap().id(), "torus-diffeo");
        assert!(p.build_phase("half-wave").is_err());
        let p: PhaseParams = serde_json::from_str(r#"{"d": 2, "t": 0.3, "c": 1, "gamma": {"constant": 0.2}}"#).unwrap();
        assert_eq!(p.build_phase("dissipative").unwrap().id(), "dissipative");
        assert!(serde_json::from_str::<PhaseParams>(r#"{"epsilon": 0.1}"#).is_err());
        assert!(PhaseParams::default().build_phase("nope").is_err());
    }
}
