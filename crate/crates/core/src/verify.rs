//! Empirical checks of the stability bounds for `f^alpha_b`.
//!
//! * scale continuity: `|f^a - f^b| <= |a - b| / (1 - r) * (|f^a| + |b|)`
//!   with `r = max(|a|, |b|)`;
//! * base Lipschitz: `|f_b - f_c| <= |a| / (1 - |a|) * |b - c|`;
//! * interpolation: `f^alpha = f` on `V_1`.
//!
//! Sup norms are maxima over lattice vertices, so every report is a
//! necessary-condition check and carries `norm_mode = "sampled-norm"`.

use serde::Serialize;

use crate::expr::ScalarField;
use crate::fractal::{sup_distance, FractalError, ProblemSpec, ScaleVector, NORM_DEPTH};
use crate::gasket::shared_lattice;

/// Slack granted to `lhs <= rhs`.
pub const REPORT_SLACK: f64 = 1e-12;
pub const SAMPLED_NORM: &str = "sampled-norm";

/// `f` and `b` plus the corner tolerance used to validate them.
#[derive(Debug, Clone)]
pub struct FieldPair {
    pub f: ScalarField,
    pub b: ScalarField,
    pub compat_tol: f64,
}

impl FieldPair {
    pub fn new(f: ScalarField, b: ScalarField, compat_tol: f64) -> Self {
        FieldPair { f, b, compat_tol }
    }

    pub fn figure(figure: u32) -> Result<Self, crate::expr::UnknownFigure> {
        let (f, b) = crate::expr::builtin_figure_fields(figure)?;
        Ok(FieldPair::new(f, b, crate::fractal::FIGURE_COMPAT_TOL))
    }

    pub fn spec(&self, alpha: ScaleVector) -> Result<ProblemSpec, FractalError> {
        ProblemSpec::validate(&self.f, &self.b, alpha, self.compat_tol)
    }
}

/// Parameters echoed into a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportParams {
    pub alpha: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<[f64; 3]>,
    pub f: String,
    pub b: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
    pub compat_tol: f64,
    /// Largest corner mismatch removed from the base(s).
    pub base_adjustment: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    pub depth_m: usize,
    pub norm_mode: String,
    pub params: ReportParams,
}

impl BoundReport {
    fn new(name: &str, lhs: f64, rhs: f64, depth_m: usize, params: ReportParams) -> Self {
        BoundReport {
            name: name.to_string(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs <= rhs + REPORT_SLACK,
            depth_m,
            norm_mode: SAMPLED_NORM.to_string(),
            params,
        }
    }
}

fn params(spec: &ProblemSpec, beta: Option<ScaleVector>, c: Option<&ProblemSpec>) -> ReportParams {
    ReportParams {
        alpha: spec.alpha().components(),
        beta: beta.map(|b| b.components()),
        f: spec.f().name().to_string(),
        b: spec.raw_base().name().to_string(),
        c: c.map(|c| c.raw_base().name().to_string()),
        compat_tol: spec.compat_tol(),
        base_adjustment: c
            .map_or(0.0, |c| c.base_adjustment())
            .max(spec.base_adjustment()),
    }
}

/// Sampled `|g|` on `V_max(m, 8)`.
fn field_norm(g: &ScalarField, m: usize) -> Result<f64, FractalError> {
    let lattice = shared_lattice(m.max(NORM_DEPTH))?;
    let mut best = 0.0f64;
    for p in lattice.points() {
        best = best.max(g.eval(p)?.abs());
    }
    Ok(best)
}

pub fn check_interpolation(
    spec: &ProblemSpec,
    m_probe: usize,
    tol: f64,
) -> Result<BoundReport, FractalError> {
    let depth = m_probe.max(1);
    let lhs = spec.vm_table(depth)?.interpolation_error()?;
    Ok(BoundReport::new(
        "interpolation",
        lhs,
        tol,
        depth,
        params(spec, None, None),
    ))
}

/// Scale-continuity bound between `alpha` and `beta` with
/// `r = max(|alpha|, |beta|)`.
pub fn check_alpha_continuity(
    pair: &FieldPair,
    alpha: ScaleVector,
    beta: ScaleVector,
    m: usize,
) -> Result<BoundReport, FractalError> {
    let spec_a = pair.spec(alpha)?;
    let spec_b = spec_a.with_alpha(beta)?;
    let table_a = spec_a.vm_table(m)?;
    let table_b = spec_b.vm_table(m)?;

    let lhs = sup_distance(table_a.values(), table_b.values());
    let r = alpha.sup_norm().max(beta.sup_norm());
    let norms = table_a.sup_norm() + field_norm(spec_a.base(), m)?;
    let rhs = alpha.distance(&beta) / (1.0 - r) * norms;
    Ok(BoundReport::new(
        "alpha-continuity",
        lhs,
        rhs,
        m,
        params(&spec_a, Some(beta), None),
    ))
}

/// Base Lipschitz bound `|f_b - f_c| <= |alpha| / (1 - |alpha|) * |b - c|`.
pub fn check_base_lipschitz(
    f: &ScalarField,
    b: &ScalarField,
    c: &ScalarField,
    alpha: ScaleVector,
    m: usize,
    compat_tol: f64,
) -> Result<BoundReport, FractalError> {
    let spec_b = ProblemSpec::validate(f, b, alpha, compat_tol)?;
    let spec_c = ProblemSpec::validate(f, c, alpha, compat_tol)?;
    let table_b = spec_b.vm_table(m)?;
    let table_c = spec_c.vm_table(m)?;

    let lhs = sup_distance(table_b.values(), table_c.values());
    let lattice = shared_lattice(m.max(NORM_DEPTH))?;
    let mut base_gap = 0.0f64;
    for p in lattice.points() {
        base_gap = base_gap.max((spec_b.base().eval(p)? - spec_c.base().eval(p)?).abs());
    }
    let r = alpha.sup_norm();
    let rhs = r / (1.0 - r) * base_gap;
    Ok(BoundReport::new(
        "base-lipschitz",
        lhs,
        rhs,
        m,
        params(&spec_b, None, Some(&spec_c)),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepProbe {
    pub beta: [f64; 3],
    pub radius: f64,
    pub distance: f64,
    /// `K * |alpha - beta|`
    pub envelope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub center: [f64; 3],
    /// `K = (|f^alpha| + |b|) / (1 - r_max)`
    pub constant: f64,
    pub probes: Vec<SweepProbe>,
    pub monotone_envelope_ok: bool,
    pub depth_m: usize,
    pub norm_mode: String,
}

/// Distances `|f^alpha - f^beta|` on `V_m` for `beta = alpha + radius *
/// direction`, checked against the linear envelope `K |alpha - beta|`.
pub fn modulus_sweep(
    pair: &FieldPair,
    alpha: ScaleVector,
    directions: &[[f64; 3]],
    radii: &[f64],
    m: usize,
) -> Result<SweepReport, FractalError> {
    let betas: Vec<(f64, ScaleVector)> = directions
        .iter()
        .flat_map(|&d| radii.iter().map(move |&r| (r, alpha.offset(d, r))))
        .collect();
    let mut r_max = alpha.sup_norm();
    for (_, beta) in &betas {
        let sup = beta.sup_norm();
        if sup.is_nan() || sup >= 1.0 {
            return Err(FractalError::ScaleOutOfRange { alpha: *beta, sup });
        }
        r_max = r_max.max(sup);
    }

    let spec = pair.spec(alpha)?;
    let center = spec.vm_table(m)?;
    let constant = (center.sup_norm() + field_norm(spec.base(), m)?) / (1.0 - r_max);

    let mut probes = Vec::with_capacity(betas.len());
    for (radius, beta) in betas {
        let table = spec.with_alpha(beta)?.vm_table(m)?;
        let distance = sup_distance(center.values(), table.values());
        probes.push(SweepProbe {
            beta: beta.components(),
            radius,
            distance,
            envelope: constant * alpha.distance(&beta),
        });
    }
    let ok = probes
        .iter()
        .all(|p| p.distance <= p.envelope + REPORT_SLACK);
    Ok(SweepReport {
        center: alpha.components(),
        constant,
        probes,
        monotone_envelope_ok: ok,
        depth_m: m,
        norm_mode: SAMPLED_NORM.to_string(),
    })
}
