//! Measured verdicts for the qualitative structure of integrated profiles:
//! sign dichotomy of `r'`, the unique inflection point `y₁`, the asymptotic
//! slope bracket for `a₁ = lim r'`, and the a-priori structural bounds.
//!
//! Every check yields a signed margin: positive means the inequality holds
//! with that much slack. Sign checks are evaluated on samples plus dense
//! output at 4x sample density so a sign change between samples cannot be
//! missed.

use serde::Serialize;

use crate::error::AnalysisError;
use crate::integrator::{dense_eval, integrate_profile, EventSpec, Profile, Termination, Tolerances};
use crate::ode;
use crate::params::{Params, Regime};
use crate::real::{lit, Real};

/// Relative tolerance on the initial-curvature identity check.
pub const INITIAL_CURVATURE_REL_TOL: f64 = 1e-10;
/// Bound on the geometric soliton residual over accepted profiles.
pub const SOLITON_RESIDUAL_TOL: f64 = 1e-7;
/// Relative agreement required between the two expressions for `w'`.
pub const W_PRIME_REL_TOL: f64 = 1e-10;
/// Growth-proxy margin: the radius must exceed `μ + GROWTH_MARGIN_MU · μ`.
pub const GROWTH_MARGIN_MU: f64 = 5.0;
/// Minimum slope defining the inverse-graph inversion window.
pub const YFORM_MIN_SLOPE: f64 = 0.1;

/// One named verdict with its signed margin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check<F> {
    pub name: String,
    pub applicable: bool,
    pub passed: bool,
    pub margin: F,
    pub detail: String,
}

impl<F: Real> Check<F> {
    fn holds(name: &str, margin: F, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            applicable: true,
            passed: margin >= F::zero(),
            margin,
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            applicable: false,
            passed: true,
            margin: F::zero(),
            detail: detail.into(),
        }
    }

    fn failed(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            applicable: true,
            passed: false,
            margin: -F::one(),
            detail: detail.into(),
        }
    }
}

/// Aggregated pass/fail record for one parameter triple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport<F> {
    pub params: Params<F>,
    pub regime: Regime,
    pub tolerances: Tolerances<F>,
    pub termination: Termination,
    pub y_max: F,
    pub checks: Vec<Check<F>>,
    pub y1: Option<F>,
    pub a1_estimate: Option<F>,
    pub a1_ci: Option<(F, F)>,
    pub delta1_observed: Option<F>,
}

impl<F: Real> InvariantReport<F> {
    /// True when every applicable check passed.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.passed)
    }
}

fn h_min_of<F: Real>(prof: &Profile<F>) -> F {
    lit::<F>(1e-12) * F::one().max(prof.y_end())
}

/// `(y, r'')` scan points at 4x sample density over the forward span.
fn dense_rpp_scan<F: Real>(prof: &Profile<F>) -> Vec<(F, F)> {
    let mut pts = Vec::new();
    let samples: Vec<_> = prof.forward_samples().collect();
    for w in samples.windows(2) {
        pts.push((w[0].y, w[0].rpp));
        for j in 1..4 {
            let y = w[0].y + (w[1].y - w[0].y) * lit::<F>(j as f64 / 4.0);
            if let Ok((_, rpp)) = dense_eval(prof, y) {
                pts.push((y, rpp));
            }
        }
    }
    if let Some(last) = samples.last() {
        pts.push((last.y, last.rpp));
    }
    pts
}

pub(crate) fn locate_single_sign_change<F: Real>(
    pts: &[(F, F)],
    exclude_below: F,
) -> Result<(F, F), AnalysisError> {
    let mut brackets = Vec::new();
    for w in pts.windows(2) {
        if w[0].0 <= exclude_below {
            continue;
        }
        if w[0].1 > F::zero() && w[1].1 < F::zero() || w[0].1 < F::zero() && w[1].1 > F::zero() {
            brackets.push((w[0].0, w[1].0));
        }
    }
    match brackets.len() {
        0 => Err(AnalysisError::NoInflection),
        1 => Ok(brackets[0]),
        n => Err(AnalysisError::MultipleInflections { count: n }),
    }
}

/// Locates the unique zero `y₁` of `r''` on an expander profile by scan
/// plus bisection on the dense output, and verifies `r''' < 0` there.
pub fn find_inflection<F: Real>(prof: &Profile<F>) -> Result<F, AnalysisError> {
    if prof.params.regime() != Regime::Expander {
        return Err(AnalysisError::Precondition(format!(
            "inflection analysis applies to the Expander regime, got {:?}",
            prof.params.regime()
        )));
    }
    if prof.termination != Termination::ReachedYMax {
        return Err(AnalysisError::Precondition(format!(
            "profile terminated early: {:?}",
            prof.termination
        )));
    }
    let h_min = h_min_of(prof);
    let pts = dense_rpp_scan(prof);
    let (mut lo, mut hi) = locate_single_sign_change(&pts, lit::<F>(10.0) * h_min)?;

    let rpp_at = |y: F| -> F {
        dense_eval(prof, y).map(|(_, rpp)| rpp).unwrap_or(F::nan())
    };
    let sign_lo = rpp_at(lo) > F::zero();
    while hi - lo > h_min {
        let mid = (lo + hi) * lit::<F>(0.5);
        if (rpp_at(mid) > F::zero()) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let y1 = (lo + hi) * lit::<F>(0.5);

    // strict signs away from the root, and concavity onset at the root
    let window = lit::<F>(10.0) * h_min;
    for &(y, rpp) in &pts {
        if y <= window || (y - y1).abs() <= window {
            continue;
        }
        let ok = if y < y1 { rpp > F::zero() } else { rpp < F::zero() };
        if !ok {
            return Err(AnalysisError::MultipleInflections { count: 2 });
        }
    }
    let (state, _) = dense_eval(prof, y1)
        .map_err(|e| AnalysisError::Precondition(e.to_string()))?;
    let rppp = ode::third_derivative(&prof.params, &state)
        .map_err(|e| AnalysisError::Precondition(e.to_string()))?;
    if !(rppp < F::zero()) {
        return Err(AnalysisError::Precondition(format!(
            "r''' at the located inflection is {rppp}, expected < 0"
        )));
    }
    Ok(y1)
}

/// Point estimate and enclosure for the asymptotic slope `a₁`.
///
/// The tail slope is monotone decreasing past `y₁`, so `r'(y_end)` bounds
/// the limit from above. For the lower endpoint, the drops over the last
/// two doubling windows, `d₁ = r'(y_end/4) - r'(y_end/2)` and
/// `d₂ = r'(y_end/2) - r'(y_end)`, give the observed per-doubling
/// contraction `q = d₂/d₁`; if the contraction keeps up, the remaining
/// descent is at most the geometric sum `d₂·q/(1-q)`, which is subtracted
/// as extrapolation allowance. Power-law tails (`r' ~ c·y^{-α}`, the
/// observed behavior) make the allowance cancel `r'(y_end)` exactly, so
/// the lower endpoint reads 0 there; a tail flattening toward a positive
/// limit shrinks the allowance and lifts it. Residue below a relative
/// noise floor is clamped to 0, as is any case where the drops fail to
/// contract (`q ≥ 1`), since the slope is positive in any event.
pub fn estimate_slope<F: Real>(
    prof: &Profile<F>,
    y1: Option<F>,
) -> Result<(F, (F, F)), AnalysisError> {
    let y1 = y1.ok_or_else(|| {
        AnalysisError::Precondition("slope estimation requires a located inflection".into())
    })?;
    let y_end = prof.y_end();
    if y_end <= y1 {
        return Err(AnalysisError::Precondition(
            "profile ends before the inflection".into(),
        ));
    }
    let rp_end = prof.samples.last().expect("profile is nonempty").rp;
    let eval_rp = |y: F| {
        dense_eval(prof, y)
            .map(|(s, _)| s.rp)
            .map_err(|e| AnalysisError::Precondition(e.to_string()))
    };
    let rp_half = eval_rp(y_end * lit::<F>(0.5))?;
    let rp_quarter = eval_rp(y_end * lit::<F>(0.25))?;
    let d1 = rp_quarter - rp_half;
    let d2 = rp_half - rp_end;
    let lo = if d2 > F::zero() && d1 > d2 {
        let allowance = d2 * d2 / (d1 - d2);
        let lo = rp_end - allowance;
        if lo > lit::<F>(1e-6) * rp_end {
            lo
        } else {
            F::zero()
        }
    } else {
        F::zero()
    };
    Ok((rp_end, (lo, rp_end)))
}

/// Finite-horizon growth proxy: strict monotone growth of `r` plus the
/// margin `r(y_end) > (1 + GROWTH_MARGIN_MU) μ`. Unboundedness itself is
/// not falsifiable from finite data; the detail records that caveat.
pub fn check_growth<F: Real>(prof: &Profile<F>) -> Check<F> {
    let name = "growth_proxy";
    let mut monotone_margin = F::infinity();
    let samples: Vec<_> = prof.forward_samples().collect();
    for w in samples.windows(2) {
        monotone_margin = monotone_margin.min(w[1].r - w[0].r);
    }
    let r_end = samples.last().expect("profile is nonempty").r;
    let y_end = prof.y_end();
    let target = (F::one() + lit::<F>(GROWTH_MARGIN_MU)) * prof.params.mu;
    Check {
        name: name.into(),
        applicable: true,
        passed: monotone_margin > F::zero() && r_end > target,
        margin: monotone_margin.min(r_end - target),
        detail: format!(
            "finite-horizon proxy only: r({y_end}) = {r_end}, threshold {target}; \
             unbounded growth is not falsifiable from finite data. Near-critical \
             expanders can miss the margin at short horizons without contradicting \
             the limit claim"
        ),
    }
}

/// Sign of `r'` must match the regime at every sample with `y` past the
/// startup window.
pub fn check_sign_dichotomy<F: Real>(prof: &Profile<F>) -> Check<F> {
    let name = "slope_sign_dichotomy";
    let regime = prof.params.regime();
    let window = lit::<F>(10.0) * h_min_of(prof);
    let mut margin = F::infinity();
    match regime {
        Regime::Expander | Regime::Contracting => {
            for s in prof.forward_samples() {
                if s.y <= window {
                    continue;
                }
                let signed = if regime == Regime::Expander { s.rp } else { -s.rp };
                margin = margin.min(signed);
            }
            Check::holds(name, margin, format!("regime {regime:?}"))
        }
        _ => Check::skipped(name, format!("not applicable in regime {regime:?}")),
    }
}

/// Structural bounds along the profile: positivity of `w` (reporting its
/// minimum), the pointwise `tan` slope bound, and agreement of the two
/// expressions for `w' = -y r''`.
pub fn check_structural_bounds<F: Real>(prof: &Profile<F>) -> (Vec<Check<F>>, F) {
    let p = &prof.params;
    let mut delta1 = F::infinity();
    let mut tan_margin = F::infinity();
    let mut wp_rel = F::zero();
    let half_pi = lit::<F>(std::f64::consts::FRAC_PI_2);
    for s in prof.forward_samples() {
        delta1 = delta1.min(s.w());
        let arg = p.nm1() * s.y / p.mu;
        if arg < half_pi {
            tan_margin = tan_margin.min(arg.tan() - s.rp);
        }
        // w' two ways: -y r'' and y (1+r'^2)((1+r'^2)/(λw) - (n-1)/r)
        let sp2 = F::one() + s.rp * s.rp;
        let direct = -s.y * s.rpp;
        let expanded = s.y * sp2 * (sp2 / (p.lambda * s.w()) - p.nm1() / s.r);
        let scale = direct.abs().max(expanded.abs()).max(F::one());
        wp_rel = wp_rel.max((direct - expanded).abs() / scale);
    }
    let checks = vec![
        Check::holds(
            "structural_w_lower_bound",
            delta1,
            format!("min w over samples = {delta1}"),
        ),
        Check::holds(
            "tan_slope_bound",
            tan_margin,
            "r'(y) <= tan((n-1) y / mu) wherever the argument is below pi/2".to_string(),
        ),
        Check::holds(
            "w_prime_identity",
            lit::<F>(W_PRIME_REL_TOL) - wp_rel,
            format!("max relative disagreement {wp_rel}"),
        ),
    ];
    (checks, delta1)
}

/// Wherever the slope exceeds `sqrt(2(n-1)λ)` the profile must be concave;
/// vacuously passes when the threshold is never reached.
pub fn check_case1_exclusion<F: Real>(prof: &Profile<F>) -> Check<F> {
    let name = "high_slope_concavity";
    let p = &prof.params;
    let threshold = (lit::<F>(2.0) * p.nm1() * p.lambda).sqrt();
    let mut margin = F::infinity();
    let mut hit = false;
    for s in prof.forward_samples() {
        if s.rp > threshold {
            hit = true;
            margin = margin.min(-s.rpp);
        }
    }
    if hit {
        Check::holds(name, margin, format!("threshold sqrt(2(n-1)λ) = {threshold}"))
    } else {
        Check {
            name: name.into(),
            applicable: true,
            passed: true,
            margin: F::zero(),
            detail: format!("vacuous: slope never exceeded {threshold}"),
        }
    }
}

fn check_initial_curvature<F: Real>(prof: &Profile<F>) -> Check<F> {
    let expected = prof.params.rpp_at_origin();
    let got = prof.samples.iter().find(|s| s.y == F::zero()).map(|s| s.rpp);
    match got {
        Some(got) => {
            let rel = (got - expected).abs() / expected.abs().max(lit::<F>(f64::MIN_POSITIVE));
            Check::holds(
                "initial_curvature",
                lit::<F>(INITIAL_CURVATURE_REL_TOL) - rel,
                format!("r''(0) = {got}, closed form {expected}"),
            )
        }
        None => Check::failed("initial_curvature", "no sample at y = 0"),
    }
}

fn check_soliton_identity<F: Real>(prof: &Profile<F>) -> Check<F> {
    let mut worst = F::zero();
    for s in &prof.samples {
        match ode::soliton_residual(&prof.params, &s.state()) {
            Ok(res) => worst = worst.max(res.abs()),
            Err(e) => return Check::failed("soliton_identity_residual", e.to_string()),
        }
    }
    Check::holds(
        "soliton_identity_residual",
        lit::<F>(SOLITON_RESIDUAL_TOL) - worst,
        format!("max |residual| = {worst}"),
    )
}

fn check_yform<F: Real>(prof: &Profile<F>) -> Check<F> {
    let name = "inverse_graph_residual";
    let min_slope = lit::<F>(YFORM_MIN_SLOPE);
    let mut worst = F::zero();
    let mut used = 0usize;
    for s in prof.forward_samples() {
        if s.rp.abs() < min_slope {
            continue;
        }
        // exact inversion of the graph: y_r = 1/r', y_rr = -r''/r'^3
        let y_r = s.rp.recip();
        let y_rr = -s.rpp / (s.rp * s.rp * s.rp);
        match ode::yform_residual(&prof.params, s.r, s.y, y_r, y_rr) {
            Ok(res) => {
                worst = worst.max(res.abs());
                used += 1;
            }
            Err(e) => return Check::failed(name, e.to_string()),
        }
    }
    if used == 0 {
        return Check::skipped(name, format!("no window with |r'| >= {YFORM_MIN_SLOPE}"));
    }
    Check::holds(
        name,
        lit::<F>(SOLITON_RESIDUAL_TOL) - worst,
        format!("max |residual| = {worst} over {used} samples"),
    )
}

fn check_positivity<F: Real>(prof: &Profile<F>) -> Check<F> {
    let mut margin = F::infinity();
    for s in &prof.samples {
        margin = margin.min(s.r).min(s.w());
    }
    Check::holds(
        "radius_and_w_positive",
        margin,
        "r > 0 and r - y r' > 0 at every sample",
    )
}

fn check_equilibrium<F: Real>(prof: &Profile<F>) -> Check<F> {
    let mut dev = F::zero();
    for s in &prof.samples {
        dev = dev.max((s.r - prof.params.mu).abs());
    }
    Check::holds(
        "equilibrium_preservation",
        lit::<F>(1e-9) - dev,
        format!("max |r - mu| = {dev}"),
    )
}

/// Integrates one parameter triple and runs every applicable check.
///
/// Integration events (early termination, step underflow) become report
/// entries rather than errors; only invalid configuration is an `Err`.
pub fn full_report<F: Real>(
    p: &Params<F>,
    y_max: F,
    tol: Tolerances<F>,
) -> Result<InvariantReport<F>, crate::error::IntegrateError> {
    let ev = EventSpec::defaults(p, y_max);
    let prof = integrate_profile(p, y_max, tol, ev)?;
    Ok(report_for(&prof))
}

/// Builds the invariant report for an already-integrated profile.
pub fn report_for<F: Real>(prof: &Profile<F>) -> InvariantReport<F> {
    let p = prof.params;
    let regime = p.regime();
    let mut checks = Vec::new();
    let mut y1 = None;
    let mut a1_estimate = None;
    let mut a1_ci = None;
    let mut delta1_observed = None;

    checks.push(check_initial_curvature(prof));
    checks.push(check_soliton_identity(prof));
    checks.push(check_sign_dichotomy(prof));

    match regime {
        Regime::Expander => {
            checks.push(check_positivity(prof));
            if prof.termination == Termination::ReachedYMax {
                match find_inflection(prof) {
                    Ok(found) => {
                        y1 = Some(found);
                        checks.push(Check::holds(
                            "unique_inflection",
                            found,
                            format!("y1 = {found}, r'' changes sign exactly once, r'''(y1) < 0"),
                        ));
                        match estimate_slope(prof, y1) {
                            Ok((est, ci)) => {
                                a1_estimate = Some(est);
                                a1_ci = Some(ci);
                                checks.push(Check::holds(
                                    "slope_bracket",
                                    ci.0.min(est).min(ci.1 - ci.0),
                                    format!("a1 in [{}, {}]", ci.0, ci.1),
                                ));
                            }
                            Err(e) => checks.push(Check::failed("slope_bracket", e.to_string())),
                        }
                    }
                    Err(e) => checks.push(Check::failed("unique_inflection", e.to_string())),
                }
            } else {
                checks.push(Check::failed(
                    "unique_inflection",
                    format!("integration terminated early: {:?}", prof.termination),
                ));
            }
            let (structural, d1) = check_structural_bounds(prof);
            checks.extend(structural);
            delta1_observed = Some(d1);
            checks.push(check_case1_exclusion(prof));
            checks.push(check_growth(prof));
        }
        Regime::CriticalCylinder => {
            checks.push(check_equilibrium(prof));
            checks.push(Check::skipped(
                "unique_inflection",
                "r'' vanishes identically on the cylinder",
            ));
            checks.push(Check::skipped("growth_proxy", "radius is bounded in this regime"));
        }
        Regime::Contracting | Regime::NegativeLambda => {
            checks.push(Check::skipped(
                "unique_inflection",
                format!("not applicable in regime {regime:?}"),
            ));
            checks.push(Check::skipped(
                "growth_proxy",
                format!("not applicable in regime {regime:?}"),
            ));
        }
    }
    checks.push(check_yform(prof));

    InvariantReport {
        params: p,
        regime,
        tolerances: prof.tolerances,
        termination: prof.termination,
        y_max: prof.y_end(),
        checks,
        y1,
        a1_estimate,
        a1_ci,
        delta1_observed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrator::{integrate_profile, EventSpec, Tolerances};

    fn p(n: u32, lambda: f64, mu: f64) -> Params<f64> {
        Params::new(n, lambda, mu).unwrap()
    }

    fn run(params: &Params<f64>, y_max: f64) -> Profile<f64> {
        integrate_profile(
            params,
            y_max,
            Tolerances::default(),
            EventSpec::defaults(params, y_max),
        )
        .unwrap()
    }

    #[test]
    fn inflection_found_and_refinement_stable() {
        let params = p(2, 2.0, 1.0);
        let prof = run(&params, 50.0);
        let y1 = find_inflection(&prof).unwrap();
        assert!(y1 > 0.0);

        let tight = Tolerances { rel: 1e-11, abs: 1e-13 };
        let prof2 =
            integrate_profile(&params, 50.0, tight, EventSpec::defaults(&params, 50.0)).unwrap();
        let y1b = find_inflection(&prof2).unwrap();
        assert!((y1 - y1b).abs() / y1 < 1e-6, "y1 {y1} vs refined {y1b}");
    }

    #[test]
    fn inflection_rejects_cylinder() {
        let params = p(3, 0.5, 2.0);
        let prof = run(&params, 10.0);
        assert!(matches!(
            find_inflection(&prof),
            Err(AnalysisError::Precondition(_))
        ));
    }

    #[test]
    fn injected_second_sign_change_detected() {
        let pts: Vec<(f64, f64)> = vec![
            (0.1, 1.0),
            (1.0, 0.5),
            (2.0, -0.5),
            (3.0, -1.0),
            (4.0, 0.3),
        ];
        assert!(matches!(
            locate_single_sign_change(&pts, 0.0),
            Err(AnalysisError::MultipleInflections { count: 2 })
        ));
        let flat: Vec<(f64, f64)> = vec![(0.1, 1.0), (1.0, 0.5), (2.0, 0.2)];
        assert!(matches!(
            locate_single_sign_change(&flat, 0.0),
            Err(AnalysisError::NoInflection)
        ));
    }

    #[test]
    fn slope_bracket_sane_and_below_peak() {
        let params = p(2, 2.0, 1.0);
        let prof = run(&params, 100.0);
        let y1 = find_inflection(&prof).unwrap();
        let (est, (lo, hi)) = estimate_slope(&prof, Some(y1)).unwrap();
        assert!(est >= 0.0 && est.is_finite());
        assert!(lo >= 0.0 && lo <= est && est <= hi);
        let (peak, _) = dense_eval(&prof, y1).unwrap();
        assert!(est <= peak.rp);
        assert!(matches!(
            estimate_slope(&prof, None),
            Err(AnalysisError::Precondition(_))
        ));
    }

    #[test]
    fn slope_bracket_shrinks_with_horizon() {
        let params = p(2, 2.0, 1.0);
        let widths: Vec<f64> = [100.0, 200.0, 400.0]
            .iter()
            .map(|&ym| {
                let prof = run(&params, ym);
                let y1 = find_inflection(&prof).unwrap();
                let (_, (lo, hi)) = estimate_slope(&prof, Some(y1)).unwrap();
                hi - lo
            })
            .collect();
        assert!(widths[1] < widths[0]);
        assert!(widths[2] < widths[1]);
    }

    #[test]
    fn growth_proxy_expander_vs_cylinder() {
        let exp = check_growth(&run(&p(2, 2.0, 1.0), 200.0));
        assert!(exp.passed, "{}", exp.detail);
        assert!(exp.margin > 0.0);
        let cyl = check_growth(&run(&p(3, 0.5, 2.0), 50.0));
        assert!(!cyl.passed);
    }

    #[test]
    fn dichotomy_both_regimes() {
        let exp = check_sign_dichotomy(&run(&p(3, 1.0, 1.0), 50.0));
        assert!(exp.passed && exp.margin > 0.0);
        let con = check_sign_dichotomy(&run(&p(2, 0.25, 1.0), 50.0));
        assert!(con.passed, "{}", con.detail);
        let cyl = check_sign_dichotomy(&run(&p(3, 0.5, 2.0), 10.0));
        assert!(!cyl.applicable);
    }

    #[test]
    fn structural_bounds_hold_on_expander() {
        let prof = run(&p(2, 2.0, 1.0), 100.0);
        let (checks, delta1) = check_structural_bounds(&prof);
        assert!(delta1 > 0.0);
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn case1_exclusion_vacuous_on_cylinder() {
        let c = check_case1_exclusion(&run(&p(3, 0.5, 2.0), 10.0));
        assert!(c.passed && c.detail.starts_with("vacuous"));
    }

    #[test]
    fn full_report_expander_passes() {
        let report = full_report(&p(2, 2.0, 1.0), 200.0, Tolerances::default()).unwrap();
        assert!(report.all_passed(), "{:#?}", report.checks);
        assert!(report.y1.is_some());
        assert!(report.a1_estimate.is_some());
        assert!(report.delta1_observed.unwrap() > 0.0);
    }

    #[test]
    fn full_report_second_expander_passes() {
        let report = full_report(&p(5, 5.0, 0.5), 200.0, Tolerances::default()).unwrap();
        assert!(report.all_passed(), "{:#?}", report.checks);
    }

    #[test]
    fn full_report_contracting_marks_expander_checks_na() {
        let report = full_report(&p(2, 0.25, 1.0), 200.0, Tolerances::default()).unwrap();
        assert!(report.all_passed(), "{:#?}", report.checks);
        let infl = report.checks.iter().find(|c| c.name == "unique_inflection").unwrap();
        assert!(!infl.applicable);
        assert!(report.y1.is_none());
    }

    #[test]
    fn full_report_scale_coherent_in_mu() {
        for mu in [1.0, 2.0] {
            let report = full_report(&p(2, 2.0, mu), 100.0, Tolerances::default()).unwrap();
            assert!(report.all_passed(), "mu = {mu}: {:#?}", report.checks);
        }
    }
}
