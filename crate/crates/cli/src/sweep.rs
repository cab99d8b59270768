//! Sweep evaluation: one complementarity record per grid point.

use serde::Serialize;
use triality_core::channels::{predict_ad_qubit, predict_pd_qubit, predict_pd_qutrit};
use triality_core::measures::{entanglement2_residual, predictability2, visibility2};

use crate::config::{ChannelKind, FixedRate, SweepPlan};
use crate::CliError;

/// One grid point of a sweep.
///
/// `gamma` is the common swept rate; it is empty when the config pins one
/// cascade rate and the grid only moves the other. `gamma1`/`gamma2` carry
/// the cascade rates and are empty for single-rate channels. Closed-form
/// columns are present when the channel has a trusted closed form and the
/// comparison was requested; the published uniform-damping visibility claim
/// is carried in its own clearly-labeled column for equal-rate qutrit decay
/// sweeps because no trusted closed form exists there.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub gamma: Option<f64>,
    pub gamma1: Option<f64>,
    pub gamma2: Option<f64>,
    pub v2: f64,
    pub p2: f64,
    pub e2: f64,
    pub sum: f64,
    pub v2_cf: Option<f64>,
    pub p2_cf: Option<f64>,
    pub e2_cf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v2_paper_claim_unverified: Option<f64>,
}

/// Rounding dust from `1 - V^2 - P^2` pipelines: reported values in
/// [-1e-12, 0) print as 0. Internal math never clamps.
fn clamp_dust(value: f64) -> f64 {
    if (-1e-12..0.0).contains(&value) {
        0.0
    } else {
        value
    }
}

fn internal(err: triality_core::Error) -> CliError {
    CliError::Config(format!("sweep evaluation failed: {err}"))
}

pub fn run_sweep(plan: &SweepPlan) -> Result<Vec<SweepRecord>, CliError> {
    let initial_v2 = visibility2(&plan.initial).map_err(internal)?;
    plan.grid
        .iter()
        .map(|&point| evaluate(plan, point, initial_v2))
        .collect()
}

fn evaluate(plan: &SweepPlan, point: f64, initial_v2: f64) -> Result<SweepRecord, CliError> {
    let (gamma, gamma1, gamma2, rates) = match (plan.kind.is_two_rate(), plan.fixed_rate) {
        (false, _) => (Some(point), None, None, (point, point)),
        (true, None) => (Some(point), Some(point), Some(point), (point, point)),
        (true, Some(FixedRate::Gamma1(v))) => (None, Some(v), Some(point), (v, point)),
        (true, Some(FixedRate::Gamma2(v))) => (None, Some(point), Some(v), (point, v)),
    };
    let channel = plan.kind.build(rates.0, rates.1).map_err(internal)?;
    let out = channel.apply(&plan.initial).map_err(internal)?;
    let v2 = clamp_dust(visibility2(&out).map_err(internal)?);
    let p2 = clamp_dust(predictability2(&out).map_err(internal)?);
    let e2 = clamp_dust(entanglement2_residual(&out).map_err(internal)?);
    let sum = v2 + p2 + e2;
    if (sum - 1.0).abs() > 1e-10 {
        return Err(CliError::Invariant(format!(
            "record at rates ({}, {}) has v2 + p2 + e2 = {sum}, off 1 by more than 1e-10; \
             refusing to emit it",
            rates.0, rates.1
        )));
    }

    let closed = if plan.compare_closed_form && plan.kind.has_closed_form() {
        let triple = match plan.kind {
            ChannelKind::AdQubit => predict_ad_qubit(&plan.initial, point),
            ChannelKind::PdQubit => predict_pd_qubit(&plan.initial, point),
            ChannelKind::PdQutrit => predict_pd_qutrit(&plan.initial, point),
            _ => unreachable!("has_closed_form covers exactly these kinds"),
        }
        .map_err(internal)?;
        Some(triple)
    } else {
        None
    };
    let claim = (plan.compare_closed_form && plan.kind.is_two_rate() && plan.fixed_rate.is_none())
        .then_some((1.0 - point) * (1.0 - point) * initial_v2);

    Ok(SweepRecord {
        gamma,
        gamma1,
        gamma2,
        v2,
        p2,
        e2,
        sum,
        v2_cf: closed.map(|t| clamp_dust(t.v2)),
        p2_cf: closed.map(|t| clamp_dust(t.p2)),
        e2_cf: closed.map(|t| clamp_dust(t.e2)),
        v2_paper_claim_unverified: claim,
    })
}

/// Label for the swept axis, naming any pinned cascade rate.
pub fn swept_axis_label(plan: &SweepPlan) -> String {
    match plan.fixed_rate {
        None => "gamma".to_string(),
        Some(FixedRate::Gamma1(v)) => {
            format!("gamma2 (gamma1 = {})", crate::output::format_value(v))
        }
        Some(FixedRate::Gamma2(v)) => {
            format!("gamma1 (gamma2 = {})", crate::output::format_value(v))
        }
    }
}

/// The swept rate of one record, whichever column carries it.
pub fn swept_value(record: &SweepRecord, plan: &SweepPlan) -> f64 {
    match plan.fixed_rate {
        None => record.gamma.unwrap_or_default(),
        Some(FixedRate::Gamma1(_)) => record.gamma2.unwrap_or_default(),
        Some(FixedRate::Gamma2(_)) => record.gamma1.unwrap_or_default(),
    }
}
