//! Strict JSON sweep configuration and its validated execution plan.
//!
//! Parsing is strict: unknown fields are rejected so a typo in an
//! experiment definition fails loudly instead of silently running with a
//! default. All semantic checks happen in [`SweepConfig::plan`], before any
//! computation starts.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer};
use triality_core::channels::{
    amplitude_damping_qubit, cascade_ad_qutrit, paper_kraus_ad_qutrit, phase_damping_qubit,
    phase_damping_qutrit, KrausChannel,
};
use triality_core::{DensityMatrix, PureState};

use crate::CliError;

/// Which damping channel the sweep drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    AdQubit,
    AdQutritCascade,
    AdQutritPaper,
    PdQubit,
    PdQutrit,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 5] = [
        ChannelKind::AdQubit,
        ChannelKind::PdQubit,
        ChannelKind::AdQutritCascade,
        ChannelKind::AdQutritPaper,
        ChannelKind::PdQutrit,
    ];

    pub fn dim(self) -> usize {
        match self {
            Self::AdQubit | Self::PdQubit => 2,
            _ => 3,
        }
    }

    /// Channels parameterized by the two cascade rates instead of a single
    /// damping probability.
    pub fn is_two_rate(self) -> bool {
        matches!(self, Self::AdQutritCascade | Self::AdQutritPaper)
    }

    /// Channels with a trusted closed-form predictor for the triple.
    pub fn has_closed_form(self) -> bool {
        matches!(self, Self::AdQubit | Self::PdQubit | Self::PdQutrit)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::AdQubit => "ad_qubit",
            Self::AdQutritCascade => "ad_qutrit_cascade",
            Self::AdQutritPaper => "ad_qutrit_paper",
            Self::PdQubit => "pd_qubit",
            Self::PdQutrit => "pd_qutrit",
        }
    }

    /// Builds the channel at the given rates. Single-rate channels use
    /// `rate1` and ignore `rate2`; the two-rate cascades take them as
    /// (gamma1, gamma2).
    pub fn build(self, rate1: f64, rate2: f64) -> triality_core::Result<KrausChannel> {
        match self {
            Self::AdQubit => amplitude_damping_qubit(rate1),
            Self::PdQubit => phase_damping_qubit(rate1),
            Self::PdQutrit => phase_damping_qutrit(rate1),
            Self::AdQutritCascade => cascade_ad_qutrit(rate1, rate2),
            Self::AdQutritPaper => paper_kraus_ad_qutrit(rate1, rate2),
        }
    }
}

/// Channel selection plus optional fixed parameters. Single-rate channels
/// take no parameters (the grid supplies the rate); the two-rate cascades
/// may pin one of `gamma1` / `gamma2` while the grid sweeps the other.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

/// Initial state: a named preset or an explicit density matrix written as
/// nested `[re, im]` pairs.
#[derive(Debug)]
pub enum InitialStateSpec {
    Preset(String),
    Explicit(DensityMatrix),
}

impl<'de> Deserialize<'de> for InitialStateSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::String(name) => Ok(Self::Preset(name)),
            other => DensityMatrix::deserialize(other)
                .map(Self::Explicit)
                .map_err(D::Error::custom),
        }
    }
}

impl InitialStateSpec {
    fn realize(&self, dim: usize) -> Result<DensityMatrix, CliError> {
        match self {
            Self::Explicit(rho) => {
                if rho.dim() != dim {
                    return Err(CliError::Config(format!(
                        "initial_state has dimension {}, but the channel needs {dim}",
                        rho.dim()
                    )));
                }
                Ok(rho.clone())
            }
            Self::Preset(name) => preset_state(name, dim),
        }
    }
}

fn preset_state(name: &str, dim: usize) -> Result<DensityMatrix, CliError> {
    if let Some(rest) = name.strip_prefix("basis_") {
        let k: usize = rest.parse().map_err(|_| unknown_preset(name))?;
        if k >= dim {
            return Err(CliError::Config(format!(
                "preset `{name}` addresses path {k}, but the channel has {dim} paths"
            )));
        }
        let psi = PureState::basis(dim, k).expect("index checked above");
        return Ok(DensityMatrix::from_pure(&psi));
    }
    let preset_dim = match name {
        "max_coherent_qubit" => 2,
        "max_coherent_qutrit" => 3,
        _ => return Err(unknown_preset(name)),
    };
    if preset_dim != dim {
        return Err(CliError::Config(format!(
            "preset `{name}` is {preset_dim}-dimensional, but the channel needs {dim}"
        )));
    }
    let psi = PureState::max_coherent(dim).expect("dim is 2 or 3");
    Ok(DensityMatrix::from_pure(&psi))
}

fn unknown_preset(name: &str) -> CliError {
    CliError::Config(format!(
        "unknown state preset `{name}`; expected max_coherent_qubit, max_coherent_qutrit, \
         or basis_<k>"
    ))
}

/// Inclusive uniform grid over the swept damping rate.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Default for GammaGrid {
    fn default() -> Self {
        Self {
            start: 0.0,
            stop: 1.0,
            steps: 101,
        }
    }
}

impl GammaGrid {
    pub fn points(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        (0..self.steps)
            .map(|k| {
                // Land on the endpoint exactly instead of on start + span.
                if k + 1 == self.steps {
                    self.stop
                } else {
                    self.start + span * k as f64 / (self.steps - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Csv,
    Json,
    Svg,
}

/// Top-level sweep configuration document.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub channel: ChannelSpec,
    pub initial_state: InitialStateSpec,
    #[serde(default)]
    pub gamma_grid: GammaGrid,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default = "default_compare")]
    pub compare_closed_form: bool,
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::Csv, OutputKind::Json, OutputKind::Svg]
}

fn default_compare() -> bool {
    true
}

/// One cascade rate pinned by the config while the grid sweeps the other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedRate {
    Gamma1(f64),
    Gamma2(f64),
}

/// A fully validated sweep, ready to evaluate.
#[derive(Debug)]
pub struct SweepPlan {
    pub kind: ChannelKind,
    pub fixed_rate: Option<FixedRate>,
    pub initial: DensityMatrix,
    pub grid: Vec<f64>,
    pub outputs: Vec<OutputKind>,
    pub compare_closed_form: bool,
}

impl SweepConfig {
    /// Validates every semantic constraint and resolves presets. Errors
    /// here are configuration errors: nothing has been computed yet.
    pub fn plan(&self) -> Result<SweepPlan, CliError> {
        let kind = self.channel.kind;
        let fixed_rate = validate_params(kind, &self.channel.params)?;
        let grid = self.gamma_grid;
        if !grid.start.is_finite()
            || !grid.stop.is_finite()
            || !(0.0 <= grid.start && grid.start <= grid.stop && grid.stop <= 1.0)
        {
            return Err(CliError::Config(format!(
                "gamma_grid must satisfy 0 <= start <= stop <= 1; got start = {}, stop = {}",
                grid.start, grid.stop
            )));
        }
        if grid.steps < 2 {
            return Err(CliError::Config(format!(
                "gamma_grid.steps must be at least 2; got {}",
                grid.steps
            )));
        }
        let initial = self.initial_state.realize(kind.dim())?;
        Ok(SweepPlan {
            kind,
            fixed_rate,
            initial,
            grid: grid.points(),
            outputs: self.outputs.clone(),
            compare_closed_form: self.compare_closed_form,
        })
    }
}

fn validate_params(
    kind: ChannelKind,
    params: &BTreeMap<String, f64>,
) -> Result<Option<FixedRate>, CliError> {
    if !kind.is_two_rate() {
        if let Some(name) = params.keys().next() {
            return Err(CliError::Config(format!(
                "channel `{}` takes no fixed parameters (gamma_grid supplies its rate); \
                 got `{name}`",
                kind.as_str()
            )));
        }
        return Ok(None);
    }
    for (name, &value) in params {
        if name != "gamma1" && name != "gamma2" {
            return Err(CliError::Config(format!(
                "unknown parameter `{name}` for `{}`; expected gamma1 or gamma2",
                kind.as_str()
            )));
        }
        if !(0.0..=1.0).contains(&value) {
            return Err(CliError::Config(format!(
                "parameter {name} = {value} lies outside [0, 1]"
            )));
        }
    }
    match (params.get("gamma1"), params.get("gamma2")) {
        (Some(_), Some(_)) => Err(CliError::Config(
            "fix at most one of gamma1/gamma2; gamma_grid sweeps the other \
             (omit both for an equal-rate sweep)"
                .into(),
        )),
        (Some(&v), None) => Ok(Some(FixedRate::Gamma1(v))),
        (None, Some(&v)) => Ok(Some(FixedRate::Gamma2(v))),
        (None, None) => Ok(None),
    }
}

/// Parses a configuration document, reporting the JSON path of whatever
/// field failed.
pub fn parse_config(text: &str) -> Result<SweepConfig, CliError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let config: SweepConfig = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| CliError::Config(format!("config field `{}`: {}", e.path(), e.inner())))?;
    de.end()
        .map_err(|e| CliError::Config(format!("trailing content after config document: {e}")))?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<SweepConfig, CliError> {
        parse_config(text)
    }

    #[test]
    fn minimal_config_fills_defaults() {
        let config =
            parse(r#"{"channel": {"kind": "ad_qubit"}, "initial_state": "max_coherent_qubit"}"#)
                .unwrap();
        let plan = config.plan().unwrap();
        assert_eq!(plan.kind, ChannelKind::AdQubit);
        assert_eq!(plan.grid.len(), 101);
        assert_eq!(plan.grid.first(), Some(&0.0));
        assert_eq!(plan.grid.last(), Some(&1.0));
        assert_eq!(
            plan.outputs,
            vec![OutputKind::Csv, OutputKind::Json, OutputKind::Svg]
        );
        assert!(plan.compare_closed_form);
        assert!(plan.fixed_rate.is_none());
    }

    #[test]
    fn unknown_fields_are_rejected_with_their_path() {
        let err =
            parse(r#"{"channel": {"kind": "ad_qubit", "typo": 1}, "initial_state": "basis_0"}"#)
                .unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
        assert!(err.to_string().contains("channel.typo"), "{err}");
    }

    #[test]
    fn trailing_content_is_rejected() {
        let err =
            parse(r#"{"channel": {"kind": "ad_qubit"}, "initial_state": "basis_0"} {"more": 1}"#)
                .unwrap_err();
        assert!(err.to_string().contains("trailing content"), "{err}");
    }

    #[test]
    fn single_rate_channels_take_no_fixed_parameters() {
        let err = parse(
            r#"{"channel": {"kind": "pd_qubit", "params": {"gamma1": 0.5}},
                "initial_state": "max_coherent_qubit"}"#,
        )
        .unwrap()
        .plan()
        .unwrap_err();
        assert!(
            err.to_string().contains("takes no fixed parameters"),
            "{err}"
        );
    }

    #[test]
    fn cascades_accept_at_most_one_pinned_rate() {
        let base = |params: &str| {
            parse(&format!(
                r#"{{"channel": {{"kind": "ad_qutrit_cascade", "params": {params}}},
                     "initial_state": "max_coherent_qutrit"}}"#
            ))
            .unwrap()
            .plan()
        };
        assert_eq!(
            base(r#"{"gamma1": 0.25}"#).unwrap().fixed_rate,
            Some(FixedRate::Gamma1(0.25))
        );
        assert_eq!(
            base(r#"{"gamma2": 1.0}"#).unwrap().fixed_rate,
            Some(FixedRate::Gamma2(1.0))
        );
        let err = base(r#"{"gamma1": 0.2, "gamma2": 0.3}"#).unwrap_err();
        assert!(err.to_string().contains("fix at most one"), "{err}");
        let err = base(r#"{"gamma3": 0.2}"#).unwrap_err();
        assert!(err.to_string().contains("unknown parameter"), "{err}");
        let err = base(r#"{"gamma1": 1.5}"#).unwrap_err();
        assert!(err.to_string().contains("outside [0, 1]"), "{err}");
    }

    #[test]
    fn grid_bounds_and_step_count_are_validated() {
        let with_grid = |grid: &str| {
            parse(&format!(
                r#"{{"channel": {{"kind": "ad_qubit"}}, "initial_state": "basis_0",
                     "gamma_grid": {grid}}}"#
            ))
            .unwrap()
            .plan()
        };
        let err = with_grid(r#"{"start": 0.5, "stop": 0.2, "steps": 5}"#).unwrap_err();
        assert!(err.to_string().contains("0 <= start <= stop <= 1"), "{err}");
        let err = with_grid(r#"{"start": 0.0, "stop": 1.2, "steps": 5}"#).unwrap_err();
        assert!(err.to_string().contains("0 <= start <= stop <= 1"), "{err}");
        let err = with_grid(r#"{"start": 0.0, "stop": 1.0, "steps": 1}"#).unwrap_err();
        assert!(err.to_string().contains("at least 2"), "{err}");

        let plan = with_grid(r#"{"start": 0.25, "stop": 0.75, "steps": 3}"#).unwrap();
        assert_eq!(plan.grid, vec![0.25, 0.5, 0.75]);
    }

    #[test]
    fn grid_endpoints_are_reproduced_exactly() {
        let points = GammaGrid {
            start: 0.1,
            stop: 0.9,
            steps: 7,
        }
        .points();
        assert_eq!(points.len(), 7);
        assert_eq!(points[0], 0.1);
        assert_eq!(points[6], 0.9);
    }

    #[test]
    fn presets_resolve_against_the_channel_dimension() {
        let plan = parse(r#"{"channel": {"kind": "pd_qutrit"}, "initial_state": "basis_2"}"#)
            .unwrap()
            .plan()
            .unwrap();
        assert_eq!(plan.initial.dim(), 3);
        assert_eq!(plan.initial.entry(2, 2).re, 1.0);

        let err = parse(r#"{"channel": {"kind": "ad_qubit"}, "initial_state": "basis_2"}"#)
            .unwrap()
            .plan()
            .unwrap_err();
        assert!(err.to_string().contains("basis_2"), "{err}");

        let err =
            parse(r#"{"channel": {"kind": "ad_qubit"}, "initial_state": "max_coherent_qutrit"}"#)
                .unwrap()
                .plan()
                .unwrap_err();
        assert!(matches!(err, CliError::Config(_)));

        let err = parse(r#"{"channel": {"kind": "ad_qubit"}, "initial_state": "mystery"}"#)
            .unwrap()
            .plan()
            .unwrap_err();
        assert!(err.to_string().contains("unknown state preset"), "{err}");
    }

    #[test]
    fn explicit_density_matrices_are_validated_on_parse() {
        let config = parse(
            r#"{"channel": {"kind": "ad_qubit"},
                "initial_state": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}"#,
        )
        .unwrap();
        let plan = config.plan().unwrap();
        assert_eq!(plan.initial.dim(), 2);

        let err = parse(
            r#"{"channel": {"kind": "ad_qubit"},
                "initial_state": [[[0.9, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Config(_)));
    }

    #[test]
    fn every_channel_kind_builds_over_the_unit_interval() {
        for kind in ChannelKind::ALL {
            for rate in [0.0, 0.3, 1.0] {
                let channel = kind.build(rate, rate).unwrap();
                assert_eq!(channel.dim(), kind.dim());
            }
            assert!(kind.build(-0.1, 0.0).is_err());
        }
    }
}
