//! Certified Picard fixed-point local solver.
//!
//! The local solution on `[0, ε]` is constructed as the fixed point of the
//! integral operator
//!
//! ```text
//! Φ₁(g,h)(y) = μ + ∫₀^y h(s) ds
//! Φ₂(g,h)(y) = ∫₀^y (1+h²) [ (n-1)/g - (1+h²)/(λ(g - s h)) ] ds
//! ```
//!
//! on the ball `D_{ε,η} = { (g,h) : ‖(g,h) - (μ,0)‖ ≤ η }` in the sup-pair
//! norm `‖(g,h)‖ = max(‖g‖∞, ‖h‖∞)`. For `ε ≤ ε₁` the ball is invariant
//! under Φ, and for `ε ≤ ε₂` the map contracts distances by at least 1/2;
//! both step bounds come from explicit constants computed here.
//!
//! Integrals are evaluated by composite trapezoid on a uniform grid, which
//! keeps Φ affine-friendly and makes the empirical contraction check cheap.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{DomainError, PicardError};
use crate::params::Params;
use crate::real::{lit, Real};

/// Number of trapezoid intervals on `[0, ε]`.
pub const DEFAULT_GRID_INTERVALS: usize = 256;

/// Quadrature-induced slack allowed on top of the 1/2 contraction bound in
/// the empirical check, at the default grid resolution.
pub const CONTRACTION_SLACK: f64 = 1e-3;

/// Certified step data: ball radius η, the invariance step ε₁, the
/// Lipschitz constants c₂, c₃ and the contraction step ε₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionConstants<F> {
    pub eta: F,
    pub eps1: F,
    pub c2: F,
    pub c3: F,
    pub eps2: F,
}

/// Computes the certified constants from their closed-form expressions.
pub fn contraction_constants<F: Real>(
    p: &Params<F>,
    eta: F,
) -> Result<ContractionConstants<F>, PicardError> {
    let four = lit::<F>(4.0);
    let quarter = lit::<F>(0.25);
    if !(eta > F::zero() && eta <= p.mu * quarter) {
        return Err(PicardError::Param(format!(
            "eta must satisfy 0 < eta <= mu/4, got {eta}"
        )));
    }
    let nm1 = p.nm1();
    let mu = p.mu;
    let abs_lam = p.lambda.abs();
    let one = F::one();
    let two = lit::<F>(2.0);
    let eta2p1 = one + eta * eta;

    // shared bound on the Φ₂ integrand over the ball
    let integrand_bound = four * nm1 / (lit::<F>(3.0) * mu) + two * eta2p1 / (abs_lam * mu);

    let eps1 = (lit::<F>(0.5)).min(eta / (eta2p1 * integrand_bound));
    let c2 = two * eta * integrand_bound + lit::<F>(16.0) * nm1 * eta2p1 / (lit::<F>(9.0) * mu * mu);
    let c3 = two * (eta * (lit::<F>(1.25) * mu + eta) + eta2p1);
    let eps2 = eps1.min(lit::<F>(0.5) / (c2 + four * eta2p1 * c3 / (abs_lam * mu * mu)));

    Ok(ContractionConstants { eta, eps1, c2, c3, eps2 })
}

/// A function pair `(g, h)` sampled on a uniform grid over `[0, ε]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPair<F> {
    pub grid: Vec<F>,
    pub g: Vec<F>,
    pub h: Vec<F>,
}

impl<F: Real> GridPair<F> {
    /// Uniform grid with `intervals + 1` points on `[0, eps]`, initialized
    /// at the ball center `(g ≡ μ, h ≡ 0)`.
    pub fn center(p: &Params<F>, eps: F, intervals: usize) -> Self {
        let n = intervals + 1;
        let grid = (0..n)
            .map(|i| eps * lit::<F>(i as f64) / lit::<F>(intervals as f64))
            .collect();
        Self {
            grid,
            g: vec![p.mu; n],
            h: vec![F::zero(); n],
        }
    }

    pub fn eps(&self) -> F {
        *self.grid.last().expect("grid is nonempty")
    }

    /// Sup-pair distance `max(‖g₁-g₂‖∞, ‖h₁-h₂‖∞)`.
    pub fn distance(&self, other: &Self) -> F {
        let dg = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(a, b)| (*a - *b).abs())
            .fold(F::zero(), F::max);
        let dh = self
            .h
            .iter()
            .zip(&other.h)
            .map(|(a, b)| (*a - *b).abs())
            .fold(F::zero(), F::max);
        dg.max(dh)
    }

    /// Distance to the ball center `(μ, 0)`.
    pub fn radius(&self, p: &Params<F>) -> F {
        let dg = self
            .g
            .iter()
            .map(|a| (*a - p.mu).abs())
            .fold(F::zero(), F::max);
        let dh = self.h.iter().map(|a| a.abs()).fold(F::zero(), F::max);
        dg.max(dh)
    }

    pub fn in_ball(&self, p: &Params<F>, eta: F) -> bool {
        self.radius(p) <= eta
    }
}

/// One application of the integral operator Φ, by cumulative composite
/// trapezoid on the pair's own grid.
pub fn phi_map<F: Real>(p: &Params<F>, pair: &GridPair<F>) -> Result<GridPair<F>, PicardError> {
    let half_mu = p.mu * lit::<F>(0.5);
    let integrand: Vec<F> = pair
        .grid
        .iter()
        .zip(pair.g.iter().zip(&pair.h))
        .map(|(&s, (&g, &h))| {
            let denom = g - s * h;
            if denom < half_mu {
                return Err(PicardError::Domain(DomainError::DenominatorFloor {
                    scaled: denom.to_f64().unwrap_or(f64::NAN),
                    floor: half_mu.to_f64().unwrap_or(f64::NAN),
                }));
            }
            let h2p1 = F::one() + h * h;
            Ok(h2p1 * (p.nm1() / g - h2p1 / (p.lambda * denom)))
        })
        .collect::<Result<_, _>>()?;

    let n = pair.grid.len();
    let mut g_out = Vec::with_capacity(n);
    let mut h_out = Vec::with_capacity(n);
    let mut acc_g = F::zero();
    let mut acc_h = F::zero();
    g_out.push(p.mu);
    h_out.push(F::zero());
    let half = lit::<F>(0.5);
    for i in 1..n {
        let ds = pair.grid[i] - pair.grid[i - 1];
        acc_g = acc_g + half * ds * (pair.h[i - 1] + pair.h[i]);
        acc_h = acc_h + half * ds * (integrand[i - 1] + integrand[i]);
        g_out.push(p.mu + acc_g);
        h_out.push(acc_h);
    }
    Ok(GridPair {
        grid: pair.grid.clone(),
        g: g_out,
        h: h_out,
    })
}

/// Fixed-point iteration of Φ from the ball center on `[0, ε₂]`.
///
/// Stops when successive iterates differ by at most `tol` in the sup-pair
/// norm; the result satisfies `g' = h` and `h' = Φ₂-integrand` to
/// quadrature accuracy.
pub fn picard_solve<F: Real>(
    p: &Params<F>,
    eta: F,
    tol: F,
    max_iter: usize,
) -> Result<GridPair<F>, PicardError> {
    if !(tol > F::zero()) {
        return Err(PicardError::Param(format!("tol must be > 0, got {tol}")));
    }
    let cc = contraction_constants(p, eta)?;
    let mut pair = GridPair::center(p, cc.eps2, DEFAULT_GRID_INTERVALS);
    let mut last_delta = F::infinity();
    for _ in 0..max_iter {
        let next = phi_map(p, &pair)?;
        last_delta = next.distance(&pair);
        pair = next;
        if last_delta <= tol {
            return Ok(pair);
        }
    }
    Err(PicardError::NoConvergence {
        max_iter,
        last_delta: last_delta.to_f64().unwrap_or(f64::NAN),
    })
}

fn sample_pair<F: Real>(
    p: &Params<F>,
    eta: F,
    eps: F,
    intervals: usize,
    rng: &mut impl Rng,
) -> GridPair<F> {
    // piecewise-linear with uniformly spaced knots, values uniform in the
    // ball's coordinate ranges
    const KNOTS: usize = 9;
    let gk: Vec<f64> = (0..KNOTS)
        .map(|_| rng.gen_range(-1.0f64..=1.0))
        .collect();
    let hk: Vec<f64> = (0..KNOTS)
        .map(|_| rng.gen_range(-1.0f64..=1.0))
        .collect();
    let mut pair = GridPair::center(p, eps, intervals);
    let n = pair.grid.len();
    for i in 0..n {
        let t = i as f64 / (n - 1) as f64 * (KNOTS - 1) as f64;
        let k = (t.floor() as usize).min(KNOTS - 2);
        let frac = t - k as f64;
        let gv = gk[k] * (1.0 - frac) + gk[k + 1] * frac;
        let hv = hk[k] * (1.0 - frac) + hk[k + 1] * frac;
        pair.g[i] = p.mu + eta * lit::<F>(gv.clamp(-1.0, 1.0));
        pair.h[i] = eta * lit::<F>(hv.clamp(-1.0, 1.0));
    }
    pair
}

/// Maximum observed ratio `‖Φ(a) - Φ(b)‖ / ‖a - b‖` over seeded random
/// pairs in the ball, sampled on `[0, ε₂]`.
///
/// Contract: at most `1/2 + CONTRACTION_SLACK`. Degenerate draws with
/// `a = b` contribute 0 by convention.
pub fn empirical_contraction_ratio<F: Real>(
    p: &Params<F>,
    cc: &ContractionConstants<F>,
    trials: usize,
    seed: u64,
) -> Result<F, PicardError> {
    empirical_contraction_ratio_on(p, cc.eta, cc.eps2, trials, seed)
}

/// Same as [`empirical_contraction_ratio`] but on a caller-chosen interval
/// length; used to probe loss of the certified bound past ε₂.
pub fn empirical_contraction_ratio_on<F: Real>(
    p: &Params<F>,
    eta: F,
    eps: F,
    trials: usize,
    seed: u64,
) -> Result<F, PicardError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_ratio = F::zero();
    for _ in 0..trials {
        let a = sample_pair(p, eta, eps, DEFAULT_GRID_INTERVALS, &mut rng);
        let b = sample_pair(p, eta, eps, DEFAULT_GRID_INTERVALS, &mut rng);
        let dist = a.distance(&b);
        if dist == F::zero() {
            continue;
        }
        let fa = phi_map(p, &a)?;
        let fb = phi_map(p, &b)?;
        let ratio = fa.distance(&fb) / dist;
        max_ratio = max_ratio.max(ratio);
    }
    Ok(max_ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, lambda: f64, mu: f64) -> Params<f64> {
        Params::new(n, lambda, mu).unwrap()
    }

    #[test]
    fn constants_frozen_oracle() {
        // Values frozen from a 50-digit evaluation of the closed forms for
        // (n=2, λ=2, μ=1, η=0.25).
        let cc = contraction_constants(&p(2, 2.0, 1.0), 0.25).unwrap();
        assert!((cc.eps1 - 0.098209718670076726).abs() < 1e-15, "{}", cc.eps1);
        assert!((cc.c2 - 3.0868055555555556).abs() < 1e-14, "{}", cc.c2);
        assert_eq!(cc.c3, 2.875);
        assert!((cc.eps2 - 0.054370398338682273).abs() < 1e-15, "{}", cc.eps2);
    }

    #[test]
    fn eps2_never_exceeds_eps1() {
        for (n, lam, mu, eta) in [
            (2u32, 2.0, 1.0, 0.25),
            (3, 1.0, 0.5, 0.125),
            (5, 5.0, 2.0, 0.5),
            (2, -1.5, 1.0, 0.1),
        ] {
            let cc = contraction_constants(&p(n, lam, mu), eta).unwrap();
            assert!(cc.eps2 <= cc.eps1);
            assert!(cc.eps1 <= 0.5);
            assert!(cc.eps2 > 0.0);
        }
    }

    #[test]
    fn eta_range_enforced() {
        assert!(matches!(
            contraction_constants(&p(2, 2.0, 1.0), 0.26),
            Err(PicardError::Param(_))
        ));
        assert!(matches!(
            contraction_constants(&p(2, 2.0, 1.0), 0.0),
            Err(PicardError::Param(_))
        ));
    }

    #[test]
    fn phi_of_center_is_linear_ramp() {
        // constant pair (g≡μ, h≡0): Φ₁ ≡ μ, Φ₂(y) = r''(0)·y
        let params = p(2, 2.0, 1.0);
        let cc = contraction_constants(&params, 0.25).unwrap();
        let center = GridPair::center(&params, cc.eps2, 64);
        let out = phi_map(&params, &center).unwrap();
        for (i, (&y, &h)) in out.grid.iter().zip(&out.h).enumerate() {
            assert!((out.g[i] - 1.0).abs() < 1e-15);
            assert!((h - 0.5 * y).abs() < 1e-15);
        }
    }

    #[test]
    fn critical_cylinder_center_is_fixed_point() {
        let params = p(3, 0.5, 2.0);
        let cc = contraction_constants(&params, 0.5).unwrap();
        let center = GridPair::center(&params, cc.eps2, 64);
        let out = phi_map(&params, &center).unwrap();
        assert_eq!(out.distance(&center), 0.0);
        let solved = picard_solve(&params, 0.5, 1e-14, 5).unwrap();
        assert_eq!(solved.distance(&GridPair::center(&params, cc.eps2, DEFAULT_GRID_INTERVALS)), 0.0);
    }

    #[test]
    fn ball_invariance_under_phi() {
        let params = p(2, 2.0, 1.0);
        let eta = 0.25;
        let cc = contraction_constants(&params, eta).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let pair = sample_pair(&params, eta, cc.eps1, 128, &mut rng);
            assert!(pair.in_ball(&params, eta));
            let out = phi_map(&params, &pair).unwrap();
            assert!(
                out.radius(&params) <= eta + 1e-12,
                "radius {}",
                out.radius(&params)
            );
        }
    }

    #[test]
    fn picard_iterates_contract_geometrically() {
        let params = p(2, 2.0, 1.0);
        let cc = contraction_constants(&params, 0.25).unwrap();
        let mut pair = GridPair::center(&params, cc.eps2, DEFAULT_GRID_INTERVALS);
        let mut deltas = Vec::new();
        for _ in 0..12 {
            let next = phi_map(&params, &pair).unwrap();
            deltas.push(next.distance(&pair));
            pair = next;
        }
        for win in deltas.windows(2) {
            if win[0] > 1e-14 {
                assert!(win[1] <= 0.5 * win[0] + 1e-15, "ratio {}", win[1] / win[0]);
            }
        }
    }

    #[test]
    fn fixed_point_slope_recovers_initial_curvature() {
        // h(ε₂)/ε₂ → r''(0) = 0.5 for (2, 2, 1); with ε₂ ≈ 0.054 the
        // secant is within O(ε₂) of the curvature.
        let params = p(2, 2.0, 1.0);
        let pair = picard_solve(&params, 0.25, 1e-14, 100).unwrap();
        let eps = pair.eps();
        let secant = *pair.h.last().unwrap() / eps;
        assert!((secant - 0.5).abs() < 0.05, "secant {secant}");

        // leading-order check against quadratic local expansion r ≈ μ + y²/4
        let mid = pair.grid.len() / 2;
        let y = pair.grid[mid];
        assert!((pair.g[mid] - (1.0 + 0.25 * y * y)).abs() < 1e-3);
    }

    #[test]
    fn contraction_ratio_within_certified_bound() {
        let params = p(2, 2.0, 1.0);
        let cc = contraction_constants(&params, 0.25).unwrap();
        let ratio = empirical_contraction_ratio(&params, &cc, 50, 42).unwrap();
        assert!(ratio <= 0.5 + CONTRACTION_SLACK, "ratio {ratio}");
        assert!(ratio > 0.0);
    }

    #[test]
    fn contraction_ratio_deterministic_under_seed() {
        let params = p(2, 2.0, 1.0);
        let cc = contraction_constants(&params, 0.25).unwrap();
        let a = empirical_contraction_ratio(&params, &cc, 20, 13).unwrap();
        let b = empirical_contraction_ratio(&params, &cc, 20, 13).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn contraction_bound_lost_past_certified_step() {
        // At 10·ε₂ pairs in the ball exceed the 1/2 bound: a constant
        // slope offset h ≡ η against the center gives ‖Φ(a)-Φ(b)‖/‖a-b‖
        // ≥ ε through the Φ₁ component alone. Random piecewise-linear
        // search only reaches ~0.33 there, so the witness is directed.
        let params = p(2, 2.0, 1.0);
        let cc = contraction_constants(&params, 0.25).unwrap();
        let eps = 10.0 * cc.eps2;
        let a = GridPair::center(&params, eps, DEFAULT_GRID_INTERVALS);
        let mut b = a.clone();
        for h in b.h.iter_mut() {
            *h = cc.eta;
        }
        let dist = a.distance(&b);
        let ratio = phi_map(&params, &a)
            .unwrap()
            .distance(&phi_map(&params, &b).unwrap())
            / dist;
        assert!(ratio > 0.5, "ratio {ratio}");

        // and the same directed pair stays within the bound at ε₂
        let a2 = GridPair::center(&params, cc.eps2, DEFAULT_GRID_INTERVALS);
        let mut b2 = a2.clone();
        for h in b2.h.iter_mut() {
            *h = cc.eta;
        }
        let ratio2 = phi_map(&params, &a2)
            .unwrap()
            .distance(&phi_map(&params, &b2).unwrap())
            / a2.distance(&b2);
        assert!(ratio2 <= 0.5 + CONTRACTION_SLACK, "ratio {ratio2}");
    }

    #[test]
    fn no_convergence_reported_when_starved() {
        let params = p(2, 2.0, 1.0);
        assert!(matches!(
            picard_solve(&params, 0.25, 1e-14, 2),
            Err(PicardError::NoConvergence { .. })
        ));
    }
}
