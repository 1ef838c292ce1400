//! Run configuration: a flat key-value document, canonicalized and hashed so
//! identical configurations are guaranteed to reproduce identical outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::zerodim::ClosureRule;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RunMode {
    ZeroDim,
    FourDim,
}

/// Configuration shared by the CLI subcommands. Defaults are desk-scale.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub mode: RunMode,
    pub lambda: f64,
    pub n_max: i64,
    pub nu_max: usize,
    pub tol: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub radial_cutoff: f64,
    pub radial_points: usize,
    pub scale_points: usize,
    pub scale_max: f64,
    pub d0: Option<f64>,
    pub closure: ClosureRule,
    pub out_dir: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: RunMode::ZeroDim,
            lambda: 0.02,
            n_max: 7,
            nu_max: 40,
            tol: 1e-8,
            rel_tol: 1e-6,
            abs_tol: 1e-12,
            radial_cutoff: 1e6,
            radial_points: 64,
            scale_points: 8,
            scale_max: 3.0,
            d0: None,
            closure: ClosureRule::TreeExtrapolation,
            out_dir: "out".into(),
        }
    }
}

impl RunConfig {
    /// Effective `d₀`: explicit value or the default `3Λ·10⁻²`.
    pub fn d0_value(&self) -> f64 {
        self.d0.unwrap_or_else(|| crate::splitting::default_d0(self.lambda))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max < 5 || self.n_max % 2 == 0 {
            return Err(Error::InvalidParameter {
                name: "n_max",
                reason: format!("must be odd and ≥ 5, got {}", self.n_max),
            });
        }
        if !(self.lambda >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("must be ≥ 0, got {}", self.lambda),
            });
        }
        for (name, v) in [("tol", self.tol), ("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)]
        {
            if !(v > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    reason: format!("must be > 0, got {v}"),
                });
            }
        }
        if let Some(d0) = self.d0 {
            if !(d0 > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "d0",
                    reason: format!("must be > 0, got {d0}"),
                });
            }
        }
        Ok(())
    }

    /// Canonical flat key-value rendering; the hash is taken over this.
    pub fn canonical(&self) -> String {
        let mut kv = BTreeMap::new();
        kv.insert("mode", format!("{:?}", self.mode));
        kv.insert("lambda", format!("{:.17e}", self.lambda));
        kv.insert("n_max", self.n_max.to_string());
        kv.insert("nu_max", self.nu_max.to_string());
        kv.insert("tol", format!("{:.17e}", self.tol));
        kv.insert("rel_tol", format!("{:.17e}", self.rel_tol));
        kv.insert("abs_tol", format!("{:.17e}", self.abs_tol));
        kv.insert("radial_cutoff", format!("{:.17e}", self.radial_cutoff));
        kv.insert("radial_points", self.radial_points.to_string());
        kv.insert("scale_points", self.scale_points.to_string());
        kv.insert("scale_max", format!("{:.17e}", self.scale_max));
        kv.insert("d0", format!("{:.17e}", self.d0_value()));
        kv.insert("closure", format!("{:?}", self.closure));
        let mut s = String::new();
        for (k, v) in kv {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    /// Hex digest identifying this configuration.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.canonical().as_bytes());
        let digest = h.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Apply one `key=value` assignment (config-file line or CLI override).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |reason: String| Error::InvalidParameter { name: "config", reason };
        match key {
            "mode" => {
                self.mode = match value {
                    "0d" | "zero_dim" => RunMode::ZeroDim,
                    "4d" | "four_dim" => RunMode::FourDim,
                    other => return Err(bad(format!("unknown mode `{other}`"))),
                }
            }
            "lambda" => self.lambda = value.parse().map_err(|e| bad(format!("lambda: {e}")))?,
            "n_max" => self.n_max = value.parse().map_err(|e| bad(format!("n_max: {e}")))?,
            "nu_max" => self.nu_max = value.parse().map_err(|e| bad(format!("nu_max: {e}")))?,
            "tol" => self.tol = value.parse().map_err(|e| bad(format!("tol: {e}")))?,
            "rel_tol" => self.rel_tol = value.parse().map_err(|e| bad(format!("rel_tol: {e}")))?,
            "abs_tol" => self.abs_tol = value.parse().map_err(|e| bad(format!("abs_tol: {e}")))?,
            "radial_cutoff" => {
                self.radial_cutoff = value.parse().map_err(|e| bad(format!("radial_cutoff: {e}")))?
            }
            "radial_points" => {
                self.radial_points = value.parse().map_err(|e| bad(format!("radial_points: {e}")))?
            }
            "scale_points" => {
                self.scale_points = value.parse().map_err(|e| bad(format!("scale_points: {e}")))?
            }
            "scale_max" => {
                self.scale_max = value.parse().map_err(|e| bad(format!("scale_max: {e}")))?
            }
            "d0" => self.d0 = Some(value.parse().map_err(|e| bad(format!("d0: {e}")))?),
            "closure" => {
                self.closure = match value {
                    "tree" => ClosureRule::TreeExtrapolation,
                    "asymptotic" => ClosureRule::AsymptoticRatio,
                    other => return Err(bad(format!("unknown closure `{other}`"))),
                }
            }
            "out_dir" => self.out_dir = value.to_string(),
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Parse a flat key-value document (`key=value` per line, `#` comments).
    pub fn from_document(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::InvalidParameter {
                name: "config",
                reason: format!("line {}: expected key=value, got `{line}`", lineno + 1),
            })?;
            cfg.set(k.trim(), v.trim())?;
        }
        Ok(cfg)
    }
}
