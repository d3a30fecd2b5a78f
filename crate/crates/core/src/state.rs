//! Phase points of the profile ODE.

use serde::Serialize;

use crate::real::Real;

/// One phase point `(y, r, r')` of the profile equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct State<F> {
    pub y: F,
    pub r: F,
    pub rp: F,
}

impl<F: Real> State<F> {
    pub fn new(y: F, r: F, rp: F) -> Self {
        Self { y, r, rp }
    }

    /// The structural quantity `w = r - y r'` whose positivity defines the
    /// admissible regime.
    #[inline]
    pub fn w(&self) -> F {
        self.r - self.y * self.rp
    }
}

/// Derived quantities at a phase point: `r''` and `r'''` along the flow,
/// `w`, and the mean curvature of the revolution hypersurface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedState<F> {
    pub rpp: F,
    pub rppp: F,
    pub w: F,
    pub mean_curvature: F,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structural_w_arithmetic() {
        assert_eq!(State::new(0.0, 1.5, 0.0).w(), 1.5);
        assert_eq!(State::new(3.0, 5.0, 1.0).w(), 2.0);
    }
}
