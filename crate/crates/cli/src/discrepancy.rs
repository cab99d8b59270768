//! Rendering for the published-formula audit subcommand.

use serde::Serialize;
use triality_core::channels::{audit_states, compare_paper_vs_oracle, DiscrepancyReport, Verdict};

use crate::output::format_value;
use crate::CliError;

/// One audit state's report, labeled for output.
#[derive(Debug, Serialize)]
pub struct StateAudit {
    pub state: &'static str,
    pub report: DiscrepancyReport,
}

/// Runs the audit on the three canonical states at the given cascade rates.
pub fn run_discrepancy(gamma1: f64, gamma2: f64) -> Result<Vec<StateAudit>, CliError> {
    for (name, value) in [("gamma1", gamma1), ("gamma2", gamma2)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(CliError::Config(format!(
                "{name} = {value} lies outside [0, 1]"
            )));
        }
    }
    audit_states()
        .into_iter()
        .map(|(state, rho)| {
            compare_paper_vs_oracle(&rho, gamma1, gamma2)
                .map(|report| StateAudit { state, report })
                .map_err(|e| CliError::Config(format!("audit failed on {state}: {e}")))
        })
        .collect()
}

/// Human-readable side-by-side table, one block per audit state.
pub fn render_table(audits: &[StateAudit]) -> String {
    let mut out = String::new();
    if let Some(first) = audits.first() {
        out.push_str(&format!(
            "formula audit at gamma1 = {}, gamma2 = {}\n",
            format_value(first.report.gamma1),
            format_value(first.report.gamma2)
        ));
    }
    let mut total_disagreements = 0;
    for audit in audits {
        out.push('\n');
        out.push_str(&format!("state {}\n", audit.state));
        out.push_str(&format!(
            "  {:<34}{:<19}{:<19}{:<13}{}\n",
            "quantity", "published", "oracle", "|deviation|", "verdict"
        ));
        for c in &audit.report.comparisons {
            out.push_str(&format!(
                "  {:<34}{:<19}{:<19}{:<13}{}\n",
                c.quantity,
                format_value(c.paper_value),
                format_value(c.oracle_value),
                format!("{:.3e}", c.deviation),
                match c.verdict {
                    Verdict::Agree => "agree",
                    Verdict::Disagree => "DISAGREE",
                }
            ));
        }
        let disagreements = audit.report.disagreements().count();
        total_disagreements += disagreements;
        out.push_str(&format!(
            "  {} disagreement{} (worst deviation {:.3e})\n",
            disagreements,
            if disagreements == 1 { "" } else { "s" },
            audit.report.max_abs_deviation
        ));
    }
    out.push_str(&format!(
        "\ntotal: {total_disagreements} disagreement{} across {} states\n",
        if total_disagreements == 1 { "" } else { "s" },
        audits.len()
    ));
    out
}

pub fn json_text(audits: &[StateAudit]) -> String {
    let mut text = serde_json::to_string_pretty(audits).expect("audits always serialize");
    text.push('\n');
    text
}
