//! Problem parameters and regime classification.

use serde::Serialize;

use crate::real::{lit, Real};

/// Parameters of the profile problem: dimension `n`, soliton constant
/// `lambda` and initial radius `mu = r(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params<F> {
    pub n: u32,
    pub lambda: F,
    pub mu: F,
}

/// Qualitative regime determined by `(n, λ)` alone.
///
/// Expanders (`λ > 1/(n-1)`) are the regime of the existence theorem;
/// the critical value `λ = 1/(n-1)` makes the cylinder `r ≡ μ` an exact
/// equilibrium; for `0 < λ < 1/(n-1)` the radius decreases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    Expander,
    CriticalCylinder,
    Contracting,
    NegativeLambda,
}

/// Relative tolerance for the critical-cylinder classification.
///
/// `1/(n-1)` is not exactly representable in binary floating point for
/// most `n`, so the comparison is `|λ(n-1) - 1| ≤ tol`.
pub const CRITICAL_REL_TOL: f64 = 1e-12;

impl<F: Real> Params<F> {
    pub fn new(n: u32, lambda: F, mu: F) -> Result<Self, String> {
        if n < 2 {
            return Err(format!("n must be >= 2, got {n}"));
        }
        if !(mu > F::zero()) {
            return Err(format!("mu must be > 0, got {mu}"));
        }
        if lambda == F::zero() || !lambda.is_finite() {
            return Err(format!("lambda must be finite and nonzero, got {lambda}"));
        }
        Ok(Self { n, lambda, mu })
    }

    /// `n - 1` as a scalar.
    #[inline]
    pub fn nm1(&self) -> F {
        lit::<F>(f64::from(self.n - 1))
    }

    /// Classifies `(n, λ)` into its regime; total on valid parameters.
    pub fn regime(&self) -> Regime {
        let crit = self.lambda * self.nm1() - F::one();
        if self.lambda < F::zero() {
            Regime::NegativeLambda
        } else if crit.abs() <= lit(CRITICAL_REL_TOL) {
            Regime::CriticalCylinder
        } else if crit > F::zero() {
            Regime::Expander
        } else {
            Regime::Contracting
        }
    }

    /// `r''(0) = (n - 1 - 1/λ)/μ`, the curvature of the profile at the axis.
    pub fn rpp_at_origin(&self) -> F {
        (self.nm1() - self.lambda.recip()) / self.mu
    }
}

/// Free-function form of [`Params::regime`].
pub fn classify_regime<F: Real>(p: &Params<F>) -> Regime {
    p.regime()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, lambda: f64, mu: f64) -> Params<f64> {
        Params::new(n, lambda, mu).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(p(2, 2.0, 1.0).regime(), Regime::Expander);
        assert_eq!(p(3, 0.5, 1.0).regime(), Regime::CriticalCylinder);
        assert_eq!(p(2, 0.25, 1.0).regime(), Regime::Contracting);
        assert_eq!(p(4, -1.0, 1.0).regime(), Regime::NegativeLambda);
    }

    #[test]
    fn critical_tolerance_band() {
        // 1/(n-1) for n = 8 is inexact in binary; the nearest double must
        // still classify as critical.
        let lam = 1.0 / 7.0;
        assert_eq!(p(8, lam, 1.0).regime(), Regime::CriticalCylinder);
        assert_eq!(p(8, lam * (1.0 + 1e-6), 1.0).regime(), Regime::Expander);
        assert_eq!(p(8, lam * (1.0 - 1e-6), 1.0).regime(), Regime::Contracting);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(Params::<f64>::new(1, 2.0, 1.0).is_err());
        assert!(Params::<f64>::new(2, 0.0, 1.0).is_err());
        assert!(Params::<f64>::new(2, 2.0, 0.0).is_err());
        assert!(Params::<f64>::new(2, 2.0, -1.0).is_err());
    }

    #[test]
    fn rpp_at_origin_matches_closed_form() {
        assert_eq!(p(2, 2.0, 1.0).rpp_at_origin(), 0.5);
        assert_eq!(p(3, 0.5, 2.0).rpp_at_origin(), 0.0);
    }
}
