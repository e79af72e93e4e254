//! Per-q summary records assembled from the other modules.

use serde::Serialize;

use crate::chi::{chromatic_number, Budget, ChiStatus};
use crate::coloring::verify_coloring;
use crate::construction::{
    build_coloring_md, construction_color_count, count_aq, verify_cross_lines, verify_line_lemma,
    ColoringPlan,
};
use crate::error::Result;
use crate::field::{prime_power, FieldCtx};
use crate::graph::{
    planar_degree_formula, triangle_free_predicted, TrianglePrediction, UnitQuadranceGraph,
};
use crate::spectral::{
    cayley_spectrum, eigen_bound_report, hoffman_bound, hoffman_lower, EigenDiagnostics,
};

/// Node-only budget used by reports so that repeated runs agree exactly.
pub const REPORT_NODE_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChiSummary {
    pub status: ChiStatus,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Checklist {
    /// Measured degree equals `q - (-1)^{(q-1)/2}` (planar only).
    pub degree_formula: Option<bool>,
    /// Brute-force count equals the closed form for every nonsquare `t`.
    pub aq_identity: bool,
    /// Construction is proper and uses exactly the predicted number of colours.
    pub color_count: Option<bool>,
    /// A triangle-free prediction is matched by a zero triangle count.
    pub triangle_prediction: Option<bool>,
    /// `⌈1 - λ₁/λ_min⌉ ≤ χ`, when χ is exact.
    pub hoffman_below_chi: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportRecord {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub m: usize,
    pub degree: Option<u64>,
    pub circle_size: usize,
    pub slope: Option<u32>,
    pub shift: Option<u32>,
    pub construction_colors: Option<usize>,
    pub construction_formula: u64,
    pub chi: Option<ChiSummary>,
    pub hoffman: Option<f64>,
    pub hoffman_lower: Option<usize>,
    pub eigen: Option<EigenDiagnostics>,
    pub triangles: u64,
    pub triangle_free_predicted: TrianglePrediction,
    pub aq_min: Option<u64>,
    pub line_lemma: Option<bool>,
    pub cross_lines: Option<bool>,
    pub checks: Checklist,
    pub errors: Vec<String>,
}

/// Runs every module for one `q` and collects the results. Failures of
/// individual steps are recorded in `errors`; only an invalid `q` or an
/// unbuildable graph aborts.
pub fn build_report(q: u64, m: usize, budget: Budget) -> Result<ReportRecord> {
    let (p, n) = prime_power(q)?;
    let ctx = FieldCtx::new(p, n)?;
    let graph = UnitQuadranceGraph::build(&ctx, m)?;
    let mut errors = Vec::new();

    let degree = graph.regular_degree().map(|d| d as u64);
    let degree_formula = (m == 2).then(|| degree == Some(planar_degree_formula(q)));

    let aq: Vec<_> = ctx
        .elements()
        .filter(|&t| ctx.is_nonsquare(t))
        .filter_map(|t| count_aq(&ctx, t).ok())
        .collect();
    let aq_identity = !aq.is_empty() && aq.iter().all(|r| r.brute as i64 == r.formula);
    let aq_min = aq.iter().map(|r| r.brute).min();

    let plan = ColoringPlan::canonical(&ctx)
        .map_err(|e| errors.push(format!("construction: {e}")))
        .ok();
    let construction_formula = construction_color_count(&ctx, m);
    let construction = plan.as_ref().and_then(|plan| {
        build_coloring_md(&ctx, m, plan)
            .map_err(|e| errors.push(format!("coloring: {e}")))
            .ok()
    });
    let construction_proper = construction
        .as_ref()
        .and_then(|c| verify_coloring(&graph, c).ok())
        .map(|v| v.is_proper());
    let color_count = construction.as_ref().map(|c| {
        construction_proper == Some(true) && c.num_colors() as u64 == construction_formula
    });
    let line_lemma = plan
        .as_ref()
        .map(|plan| verify_line_lemma(&ctx, plan.slope()));
    let cross_lines = plan
        .as_ref()
        .map(|plan| verify_cross_lines(&ctx, plan.slope(), plan.shift()));

    let chi = chromatic_number(&graph, budget);

    let spectrum = cayley_spectrum(&ctx, m)
        .map_err(|e| errors.push(format!("spectrum: {e}")))
        .ok();
    let hoffman = spectrum.as_ref().and_then(|s| {
        hoffman_bound(s)
            .map_err(|e| errors.push(format!("hoffman: {e}")))
            .ok()
    });
    let hoffman_lower = spectrum.as_ref().and_then(|s| hoffman_lower(s).ok());
    let eigen = spectrum
        .as_ref()
        .filter(|_| m == 2)
        .map(|s| eigen_bound_report(s, q));

    let triangles = graph.triangle_count();
    let prediction = if m == 2 {
        triangle_free_predicted(q)
    } else {
        TrianglePrediction::Unknown
    };
    let triangle_prediction = (prediction == TrianglePrediction::True).then_some(triangles == 0);

    let hoffman_below_chi = match (chi.status, hoffman_lower) {
        (ChiStatus::Exact, Some(h)) => Some(h <= chi.upper),
        _ => None,
    };

    Ok(ReportRecord {
        q,
        p,
        n,
        m,
        degree,
        circle_size: graph.connection_set().len(),
        slope: plan.as_ref().map(|p| p.slope().code()),
        shift: plan.as_ref().map(|p| p.shift().code()),
        construction_colors: construction.as_ref().map(|c| c.num_colors()),
        construction_formula,
        chi: Some(ChiSummary {
            status: chi.status,
            lower: chi.lower,
            upper: chi.upper,
        }),
        hoffman,
        hoffman_lower,
        eigen,
        triangles,
        triangle_free_predicted: prediction,
        aq_min,
        line_lemma,
        cross_lines,
        checks: Checklist {
            degree_formula,
            aq_identity,
            color_count,
            triangle_prediction,
            hoffman_below_chi,
        },
        errors,
    })
}

/// Reports for every odd prime power in `lo..=hi`, ascending. Values in the
/// range that are not odd prime powers are returned separately.
pub fn report_range(
    lo: u64,
    hi: u64,
    m: usize,
    budget: Budget,
) -> (Vec<ReportRecord>, Vec<String>) {
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for q in lo..=hi {
        if prime_power(q).is_err() {
            if q % 2 == 1 && q > 1 {
                skipped.push(format!("skipping {q}: not an odd prime power"));
            }
            continue;
        }
        match build_report(q, m, budget) {
            Ok(r) => records.push(r),
            Err(e) => skipped.push(format!("skipping {q}: {e}")),
        }
    }
    (records, skipped)
}

impl ReportRecord {
    pub fn to_text(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let flag = |v: Option<bool>| match v {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "n/a",
        };
        let mut out = String::new();
        out += &format!("q={} (p={}, n={}), m={}\n", self.q, self.p, self.n, self.m);
        out += &format!(
            "  degree            {}  circle size {}\n",
            opt(self.degree.map(|d| d.to_string())),
            self.circle_size
        );
        out += &format!(
            "  construction      a={} t={} colors={} (formula {})\n",
            opt(self.slope.map(|v| v.to_string())),
            opt(self.shift.map(|v| v.to_string())),
            opt(self.construction_colors.map(|v| v.to_string())),
            self.construction_formula
        );
        if let Some(chi) = &self.chi {
            let status = match chi.status {
                ChiStatus::Exact => format!("exact {}", chi.upper),
                ChiStatus::Bounded => format!("bounded [{}, {}]", chi.lower, chi.upper),
            };
            out += &format!("  chromatic number  {status}\n");
        }
        out += &format!(
            "  hoffman           {} (ceil {})\n",
            opt(self.hoffman.map(|h| format!("{h:.6}"))),
            opt(self.hoffman_lower.map(|h| h.to_string()))
        );
        if let Some(e) = &self.eigen {
            out += &format!(
                "  max |λ| (c != 0)  {:.6}  <= sqrt(q): {}  <= 2 sqrt(q): {}\n",
                e.max_nonprincipal_abs, e.within_sqrt_q, e.within_two_sqrt_q
            );
        }
        out += &format!(
            "  triangles         {} (triangle-free predicted: {:?})\n",
            self.triangles, self.triangle_free_predicted
        );
        out += &format!(
            "  checks            degree {} | A_q {} | colors {} | triangles {} | hoffman<=chi {} | line {} | cross-line {}\n",
            flag(self.checks.degree_formula),
            flag(Some(self.checks.aq_identity)),
            flag(self.checks.color_count),
            flag(self.checks.triangle_prediction),
            flag(self.checks.hoffman_below_chi),
            flag(self.line_lemma),
            flag(self.cross_lines),
        );
        for e in &self.errors {
            out += &format!("  error: {e}\n");
        }
        out
    }
}
