//! Report serialization: JSON estimate reports, gap-table and curve CSV,
//! and accuracy CSV. Number formatting is fixed so identical runs are
//! byte-identical.

use rankspectra_core::criteria::RankEstimate;
use rankspectra_core::gap::{CurveBundle, GapTableRow};
use rankspectra_core::simgen::AccuracyTable;
use rankspectra_core::Method;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct EstimateReport {
    pub input: String,
    pub n: usize,
    pub p: usize,
    pub source: String,
    pub methods: Vec<MethodReport>,
}

#[derive(Debug, Serialize)]
pub struct MethodReport {
    pub method: String,
    pub r_hat: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_sq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    pub curve: Vec<(usize, f64)>,
}

impl MethodReport {
    pub fn from_estimate(est: &RankEstimate) -> MethodReport {
        MethodReport {
            method: est.method.name().to_string(),
            r_hat: Some(est.r_hat),
            error: None,
            sigma_sq: est.meta.sigma_sq,
            converged: (!est.meta.converged).then_some(false),
            curve: est.curve.clone(),
        }
    }

    pub fn from_error(method: Method, err: &rankspectra_core::Error) -> MethodReport {
        MethodReport {
            method: method.name().to_string(),
            r_hat: None,
            error: Some(err.to_string()),
            sigma_sq: None,
            converged: None,
            curve: Vec::new(),
        }
    }
}

pub fn estimate_json(report: &EstimateReport) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(report).expect("report serialization");
    out.push(b'\n');
    out
}

pub fn estimate_csv(report: &EstimateReport) -> Vec<u8> {
    let mut out = String::from("method,r_hat,r,criterion\n");
    for m in &report.methods {
        if m.curve.is_empty() {
            out.push_str(&format!(
                "{},{},,\n",
                m.method,
                m.r_hat.map(|r| r.to_string()).unwrap_or_default()
            ));
        }
        for (r, v) in &m.curve {
            out.push_str(&format!(
                "{},{},{r},{v:.9}\n",
                m.method,
                m.r_hat.map(|r| r.to_string()).unwrap_or_default()
            ));
        }
    }
    out.into_bytes()
}

/// Gap table rows as CSV, mirroring the reference table layout.
pub fn gap_table_csv(rows: &[GapTableRow], methods: &[Method]) -> Vec<u8> {
    let mut out = String::from(
        "setting,n,p,c,lambda_r0,psi_r0,b,mu_h,g_psi,g_b,beta_aic,beta_bic,two_kappa_psi,two_kappa_b,beta_pc1ic1,beta_pc2ic2,beta_pc3ic3",
    );
    for m in methods {
        out.push_str(&format!(",{}", m.name()));
    }
    out.push('\n');
    for row in rows {
        let v = &row.values;
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            row.id,
            row.n,
            row.p,
            row.c,
            row.lambda_r0,
            v.psi_r0,
            v.b,
            v.mu_h,
            v.g_psi,
            v.g_b,
            v.beta_aic,
            v.beta_bic,
            v.two_kappa_psi,
            v.two_kappa_b,
            v.beta_pc1,
            v.beta_pc2,
            v.beta_pc3,
        ));
        for m in methods {
            let flag = row
                .flags
                .iter()
                .find(|(mm, _)| mm == m)
                .map(|(_, ok)| if *ok { "T" } else { "F" })
                .unwrap_or("");
            out.push_str(&format!(",{flag}"));
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Long-format curve CSV: `group,series,lambda,y`.
pub fn curves_csv(groups: &[(String, CurveBundle)]) -> Vec<u8> {
    let mut out = String::from("group,series,lambda,y\n");
    for (group, bundle) in groups {
        for series in &bundle.series {
            for (lam, y) in &series.points {
                out.push_str(&format!("{group},{},{lam:.6},{y:.6}\n", series.name));
            }
        }
        for lam in &bundle.skipped {
            out.push_str(&format!("{group},skipped,{lam:.6},\n"));
        }
    }
    out.into_bytes()
}

/// Accuracy CSV: one row per setting and method.
pub fn accuracy_csv(tables: &[AccuracyTable]) -> Vec<u8> {
    let mut out = String::from(
        "setting_id,n,p,c,h,r0,lambda_r0,t,method,hits,failures,hit_rate,mean_r_hat,first_gap,second_gap,gap_ok\n",
    );
    for t in tables {
        for row in &t.rows {
            let (first, second, ok) = match &row.gap {
                Some(g) => (
                    if g.first_ok { "T" } else { "F" }.to_string(),
                    if g.second_ok { "T" } else { "F" }.to_string(),
                    if g.satisfied() { "T" } else { "F" }.to_string(),
                ),
                None => (String::new(), String::new(), String::new()),
            };
            out.push_str(&format!(
                "{},{},{},{:.4},{},{},{:.4},{},{},{},{},{:.4},{},{first},{second},{ok}\n",
                t.setting_id,
                t.n,
                t.p,
                t.p as f64 / t.n as f64,
                t.h.name(),
                t.r0,
                t.lambda_r0,
                t.t,
                row.method.name(),
                row.hits,
                row.failures,
                row.hit_rate(),
                row.mean_r_hat
                    .map(|m| format!("{m:.4}"))
                    .unwrap_or_default(),
            ));
        }
    }
    out.into_bytes()
}
