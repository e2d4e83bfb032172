//! Versioned JSON schemas for study and gap-table configurations.
//! Unknown keys are rejected so config typos cannot silently corrupt a
//! study.

use crate::{CliError, CliResult};
use rankspectra_core::gap::GapSetting;
use rankspectra_core::rmt::MpModel;
use rankspectra_core::simgen::{
    GammaScheme, HKind, NoiseLaw, ScenarioConfig, Sigma2Policy, SpikeScheme,
};
use rankspectra_core::{hspec, Method};
use serde::Deserialize;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

fn check_version(v: u32) -> CliResult<()> {
    if v != SCHEMA_VERSION {
        return Err(CliError::validation(format!(
            "unsupported schema_version {v}, expected {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

pub fn parse_methods(names: &[String]) -> CliResult<Vec<Method>> {
    if names.len() == 1 && names[0] == "all" {
        return Ok(Method::ALL.to_vec());
    }
    names
        .iter()
        .map(|s| s.parse::<Method>().map_err(CliError::from))
        .collect()
}

/// A study configuration file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyFile {
    pub schema_version: u32,
    pub name: String,
    pub methods: Vec<String>,
    pub master_seed: u64,
    /// Default replication count, overridable per setting and by flag.
    pub t: usize,
    pub settings: Vec<SettingEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingEntry {
    pub id: u64,
    pub n: usize,
    pub p: usize,
    pub h: String,
    pub r0: usize,
    pub lambda_r0: f64,
    #[serde(default)]
    pub spike: SpikeSpec,
    #[serde(default)]
    pub gamma: GammaSpec,
    #[serde(default)]
    pub noise: NoiseSpec,
    #[serde(default)]
    pub q: Option<usize>,
    #[serde(default)]
    pub sigma2: Sigma2Spec,
    #[serde(default)]
    pub t: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpikeSpec {
    #[default]
    UniformShift,
    ExplicitLambda1 {
        lambda1: f64,
    },
    Geometric {
        ratio: f64,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GammaSpec {
    #[default]
    Haar,
    Block {
        k: usize,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseSpec {
    #[default]
    Gaussian,
    T5,
    Pareto,
    Lognormal,
}

#[derive(Debug, Default, Deserialize)]
#[serde(untagged)]
pub enum Sigma2Spec {
    #[default]
    Unset,
    Named(String),
    Value(f64),
}

impl StudyFile {
    pub fn load(path: &Path) -> CliResult<StudyFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        let file: StudyFile = serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        check_version(file.schema_version)?;
        if file.settings.is_empty() {
            return Err(CliError::validation("study file has no settings"));
        }
        Ok(file)
    }

    pub fn methods(&self) -> CliResult<Vec<Method>> {
        parse_methods(&self.methods)
    }

    /// Materialize the scenario configs, applying optional overrides.
    pub fn scenarios(
        &self,
        t_override: Option<usize>,
        seed_override: Option<u64>,
    ) -> CliResult<Vec<ScenarioConfig>> {
        self.settings
            .iter()
            .map(|s| s.to_scenario(self, t_override, seed_override))
            .collect()
    }
}

impl SettingEntry {
    fn to_scenario(
        &self,
        file: &StudyFile,
        t_override: Option<usize>,
        seed_override: Option<u64>,
    ) -> CliResult<ScenarioConfig> {
        let h = HKind::parse(&self.h)?;
        let mut cfg = ScenarioConfig::new(self.n, self.p, h, self.r0, self.lambda_r0);
        cfg.setting_id = self.id;
        cfg.master_seed = seed_override.unwrap_or(file.master_seed);
        cfg.t = t_override.or(self.t).unwrap_or(file.t);
        cfg.q = self.q;
        cfg.spike_scheme = match self.spike {
            SpikeSpec::UniformShift => SpikeScheme::UniformShift,
            SpikeSpec::ExplicitLambda1 { lambda1 } => SpikeScheme::ExplicitLambda1(lambda1),
            SpikeSpec::Geometric { ratio } => SpikeScheme::Geometric(ratio),
        };
        cfg.gamma_scheme = match self.gamma {
            GammaSpec::Haar => GammaScheme::Haar,
            GammaSpec::Block { k } => GammaScheme::Block(k),
        };
        cfg.noise_law = match self.noise {
            NoiseSpec::Gaussian => NoiseLaw::Gaussian,
            NoiseSpec::T5 => NoiseLaw::StudentT5,
            NoiseSpec::Pareto => NoiseLaw::Pareto51,
            NoiseSpec::Lognormal => NoiseLaw::LogNormal01,
        };
        cfg.sigma2 = match &self.sigma2 {
            Sigma2Spec::Unset => Sigma2Policy::MuH,
            Sigma2Spec::Named(name) => match name.as_str() {
                "mu_h" => Sigma2Policy::MuH,
                "estimate" => Sigma2Policy::TailEstimate,
                other => {
                    return Err(CliError::validation(format!(
                        "sigma2 must be \"mu_h\", \"estimate\" or a number, got {other:?}"
                    )))
                }
            },
            Sigma2Spec::Value(v) => Sigma2Policy::Fixed(*v),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A gap-table settings file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapFile {
    pub schema_version: u32,
    pub name: String,
    #[serde(default = "default_gap_methods")]
    pub methods: Vec<String>,
    pub settings: Vec<GapEntry>,
}

fn default_gap_methods() -> Vec<String> {
    rankspectra_core::Method::CRITERIA
        .iter()
        .map(|m| m.name().to_string())
        .collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapEntry {
    pub id: u32,
    pub n: usize,
    pub p: usize,
    pub lambda_r0: f64,
    /// Distribution description in the shared text format.
    pub h: String,
    /// Spike count, used by the finite-sample table mode.
    #[serde(default = "default_r0")]
    pub r0: usize,
}

fn default_r0() -> usize {
    5
}

impl GapFile {
    pub fn load(path: &Path) -> CliResult<GapFile> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        let file: GapFile = serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        check_version(file.schema_version)?;
        Ok(file)
    }

    pub fn methods(&self) -> CliResult<Vec<Method>> {
        parse_methods(&self.methods)
    }

    pub fn gap_settings(&self) -> CliResult<Vec<GapSetting>> {
        self.settings
            .iter()
            .map(|e| {
                let h = hspec::parse(&e.h)?;
                let model = MpModel::new(e.p as f64 / e.n as f64, h)?;
                Ok(GapSetting {
                    id: e.id,
                    n: e.n,
                    p: e.p,
                    lambda_r0: e.lambda_r0,
                    model,
                })
            })
            .collect()
    }
}
