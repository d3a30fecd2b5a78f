//! Pointwise formulas of the profile equation.
//!
//! The profile `r(y)` of a radially symmetric homothetic soliton of the
//! inverse mean curvature flow satisfies
//!
//! ```text
//! r'' = (1 + r'^2) [ (n-1)/r - (1 + r'^2) / (λ w) ],   w = r - y r'
//! ```
//!
//! Everything here is a pure function of `(Params, State)`. Two independent
//! residuals are provided: the geometric soliton identity
//! `-<Hν, X> = 1/λ` and the equivalent equation for the inverse graph
//! `y(r)`. Both vanish algebraically on solutions of the profile equation,
//! which makes them cross-checks on each other.

use crate::error::DomainError;
use crate::params::Params;
use crate::real::{lit, Real};
use crate::state::{DerivedState, State};

/// Hard floor scale for the denominator `λ w`; values below
/// `HARD_FLOOR_SCALE · (1 + |λ|(|r| + |y r'|))` are rejected.
pub const HARD_FLOOR_SCALE: f64 = 1e-300;

fn check_domain<F: Real>(p: &Params<F>, s: &State<F>) -> Result<F, DomainError> {
    if !(s.r > F::zero()) {
        return Err(DomainError::NonPositiveRadius {
            r: s.r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let w = s.w();
    let scaled = (p.lambda * w).abs();
    let floor = lit::<F>(HARD_FLOOR_SCALE) * (F::one() + p.lambda.abs() * (s.r.abs() + (s.y * s.rp).abs()));
    if scaled < floor {
        return Err(DomainError::DenominatorFloor {
            scaled: scaled.to_f64().unwrap_or(f64::NAN),
            floor: floor.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(w)
}

/// Right-hand side of the profile equation: `r''` as a function of the
/// phase point.
pub fn rhs<F: Real>(p: &Params<F>, s: &State<F>) -> Result<F, DomainError> {
    let w = check_domain(p, s)?;
    let sp2 = F::one() + s.rp * s.rp;
    Ok(sp2 * (p.nm1() / s.r - sp2 / (p.lambda * w)))
}

/// `w(y) = r(y) - y r'(y)`.
#[inline]
pub fn structural_w<F: Real>(s: &State<F>) -> F {
    s.w()
}

/// Third derivative `r'''` along the flow, the exact `y`-derivative of
/// [`rhs`] using `w' = -y r''`.
///
/// At a point with `r'' = 0` this reduces to `-(1+r'^2)(n-1) r'/r^2`,
/// which is what forces the inflection point to be unique.
pub fn third_derivative<F: Real>(p: &Params<F>, s: &State<F>) -> Result<F, DomainError> {
    let w = check_domain(p, s)?;
    let rp = s.rp;
    let sp2 = F::one() + rp * rp;
    let rpp = rhs(p, s)?;
    let two = lit::<F>(2.0);
    let lam_w = p.lambda * w;
    let bracket = two * rp * rpp * rpp / (sp2 * sp2)
        - p.nm1() * rp / (s.r * s.r)
        - two * rp * rpp / lam_w
        - s.y * sp2 * rpp / (lam_w * w);
    Ok(sp2 * bracket)
}

/// Mean curvature of the revolution hypersurface `(r(y)·ω, y)` at the
/// phase point, with `r''` supplied by [`rhs`].
pub fn mean_curvature<F: Real>(p: &Params<F>, s: &State<F>) -> Result<F, DomainError> {
    let rpp = rhs(p, s)?;
    let sp2 = F::one() + s.rp * s.rp;
    Ok(p.nm1() / (s.r * sp2.sqrt()) - rpp / (sp2 * sp2.sqrt()))
}

/// Residual of the geometric soliton identity `-<Hν, X> = 1/λ`:
/// returns `λ H (r - y r') / sqrt(1 + r'^2) - 1`.
///
/// Vanishes identically (up to roundoff) on any phase point whose `r''`
/// comes from [`rhs`]; a systematic nonzero value flags an inconsistency
/// between the geometric setup and the scalar ODE.
pub fn soliton_residual<F: Real>(p: &Params<F>, s: &State<F>) -> Result<F, DomainError> {
    let h = mean_curvature(p, s)?;
    let sp2 = F::one() + s.rp * s.rp;
    Ok(p.lambda * h * s.w() / sp2.sqrt() - F::one())
}

/// All derived quantities at a phase point.
pub fn derived<F: Real>(p: &Params<F>, s: &State<F>) -> Result<DerivedState<F>, DomainError> {
    Ok(DerivedState {
        rpp: rhs(p, s)?,
        rppp: third_derivative(p, s)?,
        w: s.w(),
        mean_curvature: mean_curvature(p, s)?,
    })
}

/// Residual of the inverse-graph form of the profile equation, evaluated
/// on caller-supplied `(r, y, y_r, y_rr)` data:
///
/// ```text
/// y_rr + (n-1)/r (1 + y_r^2) y_r - (1 + y_r^2)^2 / (λ (r y_r - y))
/// ```
pub fn yform_residual<F: Real>(
    p: &Params<F>,
    r: F,
    y: F,
    y_r: F,
    y_rr: F,
) -> Result<F, DomainError> {
    if !(r > F::zero()) {
        return Err(DomainError::NonPositiveRadius {
            r: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    let denom = p.lambda * (r * y_r - y);
    let floor = lit::<F>(HARD_FLOOR_SCALE) * (F::one() + p.lambda.abs() * (r * y_r).abs().max(y.abs()));
    if denom.abs() < floor {
        return Err(DomainError::DenominatorFloor {
            scaled: denom.abs().to_f64().unwrap_or(f64::NAN),
            floor: floor.to_f64().unwrap_or(f64::NAN),
        });
    }
    let sp2 = F::one() + y_r * y_r;
    Ok(y_rr + p.nm1() / r * sp2 * y_r - sp2 * sp2 / denom)
}
