//! JSON description of a δ-chain and the Green's function it lives in.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chain::DeltaChain;
use crate::greens::{
    CylindricalGreens, FreeGreens, Geometry, OscillatorGreens, RectangularGreens, SphericalGreens, UnitSystem,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    pub geometry: Geometry,
    /// Azimuthal `m` (cylindrical) or angular `l` (spherical).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<u32>,
    pub positions: Vec<f64>,
    pub couplings: CouplingsConfig,
    #[serde(default)]
    pub units: UnitSystem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oscillator: Option<OscillatorConfig>,
}

/// Raw wall strengths `μ_i`, or the string `"infinite"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CouplingsConfig {
    Strengths(Vec<f64>),
    Infinite(InfiniteMarker),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfiniteMarker {
    #[serde(rename = "infinite")]
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscillatorConfig {
    pub box_length: f64,
    /// Defaults to `box_length / 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<f64>,
}

/// A validated configuration: the chain and its free Green's function.
pub struct Resolved {
    pub chain: DeltaChain,
    pub g0: Box<dyn FreeGreens>,
}

impl ChainConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    /// Builds the chain and `g0`; every failure is a configuration error.
    pub fn resolve(&self) -> Result<Resolved> {
        self.resolve_inner().map_err(|e| match e {
            Error::Config(_) => e,
            other => Error::Config(other.to_string()),
        })
    }

    fn resolve_inner(&self) -> Result<Resolved> {
        self.units.validate()?;
        let g0: Box<dyn FreeGreens> = match self.geometry {
            Geometry::Rectangular => {
                self.no_mode()?;
                Box::new(RectangularGreens)
            }
            Geometry::Cylindrical => Box::new(CylindricalGreens { mode: self.mode.unwrap_or(0) }),
            Geometry::Spherical => Box::new(SphericalGreens { mode: self.mode.unwrap_or(0) }),
            Geometry::Oscillator => {
                self.no_mode()?;
                let osc = self
                    .oscillator
                    .ok_or_else(|| Error::Config("oscillator geometry needs an `oscillator` section".into()))?;
                if !(osc.box_length > 0.0) || !osc.box_length.is_finite() {
                    return Err(Error::Config(format!("box_length must be positive, got {}", osc.box_length)));
                }
                let center = osc.center.unwrap_or(0.5 * osc.box_length);
                if !center.is_finite() {
                    return Err(Error::Config("oscillator center must be finite".into()));
                }
                Box::new(OscillatorGreens::new(self.units, center))
            }
            Geometry::Custom => {
                return Err(Error::Config("custom geometries cannot be described in a config file".into()))
            }
        };
        if self.oscillator.is_some() && self.geometry != Geometry::Oscillator {
            return Err(Error::Config("`oscillator` section given for a non-oscillator geometry".into()));
        }
        let chain = match &self.couplings {
            CouplingsConfig::Strengths(mu) => {
                DeltaChain::new(self.geometry, self.positions.clone(), mu.clone(), self.units)?
            }
            CouplingsConfig::Infinite(_) => DeltaChain::impenetrable(self.geometry, self.positions.clone(), self.units)?,
        };
        Ok(Resolved { chain, g0 })
    }

    fn no_mode(&self) -> Result<()> {
        match self.mode {
            Some(_) => Err(Error::Config(format!("`mode` does not apply to {} geometry", self.geometry.name()))),
            None => Ok(()),
        }
    }
}
