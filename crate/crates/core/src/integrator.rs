//! Global extension of the local solution by adaptive embedded Runge-Kutta
//! integration with dense output and event detection.
//!
//! The first-order system `(r, r')' = (r', rhs)` is integrated from
//! `(μ, 0)` at `y = 0` with the Dormand-Prince 5(4) pair. Step acceptance
//! uses the embedded fourth-order error estimate; each accepted step stores
//! the fifth-order method's free fourth-order continuous extension, which
//! backs [`dense_eval`] and the event locator.
//!
//! Events encode exits from the regime where the continuation argument
//! applies: `r` or `w = r - y r'` approaching zero. Event boundaries are
//! located by bisection on the dense output and the profile is truncated
//! strictly before the crossing.

use serde::Serialize;

use crate::error::{DomainError, IntegrateError, PicardError};
use crate::ode;
use crate::params::Params;
use crate::picard;
use crate::real::{lit, Real};
use crate::state::State;

/// Default relative tolerance.
pub const DEFAULT_RTOL: f64 = 1e-10;
/// Default absolute tolerance.
pub const DEFAULT_ATOL: f64 = 1e-12;
/// Default integration horizon.
pub const DEFAULT_Y_MAX: f64 = 200.0;

/// Local error tolerances of the step controller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances<F> {
    pub rel: F,
    pub abs: F,
}

impl<F: Real> Default for Tolerances<F> {
    fn default() -> Self {
        Self {
            rel: lit(DEFAULT_RTOL),
            abs: lit(DEFAULT_ATOL),
        }
    }
}

/// Event thresholds: soft floors on `w` and `r`, and the bisection
/// resolution `h_min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventSpec<F> {
    pub w_floor: F,
    pub r_floor: F,
    pub h_min: F,
}

impl<F: Real> EventSpec<F> {
    /// Defaults scaled to the problem: `w_floor = 1e-10 μ`,
    /// `r_floor = 1e-12 μ`, `h_min = 1e-12 max(1, y_max)`.
    pub fn defaults(p: &Params<F>, y_max: F) -> Self {
        Self {
            w_floor: lit::<F>(1e-10) * p.mu,
            r_floor: lit::<F>(1e-12) * p.mu,
            h_min: lit::<F>(1e-12) * F::one().max(y_max),
        }
    }
}

/// Why the integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    ReachedYMax,
    EventRZero,
    EventWZero,
    StepUnderflow,
}

/// One stored sample `(y, r, r', r'')`; `r''` is derived from the
/// right-hand side, not integrated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample<F> {
    pub y: F,
    pub r: F,
    pub rp: F,
    pub rpp: F,
}

impl<F: Real> Sample<F> {
    pub fn state(&self) -> State<F> {
        State::new(self.y, self.r, self.rp)
    }

    pub fn w(&self) -> F {
        self.state().w()
    }
}

/// Coefficients of the continuous extension on one step, per component.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DenseSeg<F> {
    y0: F,
    h: F,
    r: [F; 5],
    rp: [F; 5],
}

impl<F: Real> DenseSeg<F> {
    fn eval(&self, theta: F) -> (F, F) {
        let omt = F::one() - theta;
        let c = |k: &[F; 5]| k[0] + theta * (k[1] + omt * (k[2] + theta * (k[3] + omt * k[4])));
        (c(&self.r), c(&self.rp))
    }
}

/// Dense, monotone-in-`y` sampled solution with event annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile<F> {
    pub params: Params<F>,
    pub samples: Vec<Sample<F>>,
    pub termination: Termination,
    pub tolerances: Tolerances<F>,
    segs: Vec<DenseSeg<F>>,
    reflected: bool,
}

impl<F: Real> Profile<F> {
    /// Largest `y` covered by the profile.
    pub fn y_end(&self) -> F {
        self.samples.last().expect("profile is nonempty").y
    }

    /// Smallest `y` covered (negative once reflected).
    pub fn y_start(&self) -> F {
        self.samples.first().expect("profile is nonempty").y
    }

    pub fn is_reflected(&self) -> bool {
        self.reflected
    }

    /// Nonnegative-`y` samples, in ascending order.
    pub fn forward_samples(&self) -> impl Iterator<Item = &Sample<F>> {
        self.samples.iter().filter(|s| s.y >= F::zero())
    }
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B_HAT: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];
// dense-output weights of the fourth-order interpolant
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

// Far above any nonstiff run (expanders take a few thousand steps); only
// stiff near-critical contracting runs exhaust it.
const MAX_STEPS: usize = 500_000;

type Rhs<F> = dyn Fn(&Params<F>, &State<F>) -> Result<F, DomainError>;

/// Integrates the profile equation from `(μ, 0)` at `y = 0` up to `y_max`
/// or the first event.
pub fn integrate_profile<F: Real>(
    p: &Params<F>,
    y_max: F,
    tol: Tolerances<F>,
    ev: EventSpec<F>,
) -> Result<Profile<F>, IntegrateError> {
    integrate_profile_with(p, y_max, tol, ev, &ode::rhs)
}

/// [`integrate_profile`] with a caller-supplied right-hand side; used for
/// cross-checks and fault injection.
pub fn integrate_profile_with<F: Real>(
    p: &Params<F>,
    y_max: F,
    tol: Tolerances<F>,
    ev: EventSpec<F>,
    rhs: &Rhs<F>,
) -> Result<Profile<F>, IntegrateError> {
    if !(y_max > F::zero()) {
        return Err(IntegrateError::Param(format!("y_max must be > 0, got {y_max}")));
    }
    if !(tol.rel > F::zero() && tol.abs > F::zero()) {
        return Err(IntegrateError::Param("tolerances must be > 0".into()));
    }

    let mut y = F::zero();
    let mut v = [p.mu, F::zero()];
    let mut samples = Vec::new();
    let mut segs = Vec::new();

    let rpp0 = rhs(p, &State::new(y, v[0], v[1]))?;
    samples.push(Sample { y, r: v[0], rp: v[1], rpp: rpp0 });

    let mut h = (lit::<F>(1e-4) * F::one().max(y_max)).min(y_max);
    let mut k1 = [v[1], rpp0];
    let mut termination = Termination::ReachedYMax;

    let eval = |yy: F, vv: &[F; 2]| -> Result<[F; 2], DomainError> {
        let rpp = rhs(p, &State::new(yy, vv[0], vv[1]))?;
        Ok([vv[1], rpp])
    };

    let mut steps = 0usize;
    let mut just_rejected = false;
    'outer: while y < y_max {
        steps += 1;
        if steps > MAX_STEPS {
            // practical stiffness: the controller keeps meeting tol but
            // with steps too small to ever finish
            termination = Termination::StepUnderflow;
            break;
        }
        if h < ev.h_min {
            termination = Termination::StepUnderflow;
            break;
        }
        if y + h > y_max {
            h = y_max - y;
        }

        // stages; a domain error inside the step means the step reached
        // past the singular set, so shrink and retry
        let mut k = [[F::zero(); 2]; 7];
        k[0] = k1;
        let mut stage_fail = false;
        for i in 1..7 {
            let mut vi = v;
            for (j, kj) in k.iter().enumerate().take(i) {
                let a = lit::<F>(A[i - 1][j]);
                vi[0] = vi[0] + h * a * kj[0];
                vi[1] = vi[1] + h * a * kj[1];
            }
            match eval(y + lit::<F>(C[i]) * h, &vi) {
                Ok(ki) => k[i] = ki,
                Err(_) => {
                    stage_fail = true;
                    break;
                }
            }
        }
        if stage_fail {
            h = h * lit::<F>(0.5);
            just_rejected = true;
            continue;
        }

        // fifth-order solution (k7 is already f at the step end: FSAL)
        let mut v1 = v;
        for (j, kj) in k.iter().enumerate() {
            let b = lit::<F>(B[j]);
            v1[0] = v1[0] + h * b * kj[0];
            v1[1] = v1[1] + h * b * kj[1];
        }

        // embedded error estimate
        let mut err = F::zero();
        for c in 0..2 {
            let mut e = F::zero();
            for (j, kj) in k.iter().enumerate() {
                e = e + lit::<F>(B[j] - B_HAT[j]) * kj[c];
            }
            e = e * h;
            let sc = tol.abs + tol.rel * v[c].abs().max(v1[c].abs());
            err = err + (e / sc) * (e / sc);
        }
        err = (err * lit::<F>(0.5)).sqrt();

        if err > F::one() {
            let fac = lit::<F>(0.9) * err.powf(lit::<F>(-0.2));
            h = h * fac.max(lit::<F>(0.2));
            just_rejected = true;
            continue;
        }

        // accepted: build the continuous extension for both components
        let mut seg = DenseSeg { y0: y, h, r: [F::zero(); 5], rp: [F::zero(); 5] };
        for c in 0..2 {
            let dv = v1[c] - v[c];
            let mut d5 = F::zero();
            for (j, kj) in k.iter().enumerate() {
                d5 = d5 + lit::<F>(D[j]) * kj[c];
            }
            d5 = d5 * h;
            let rc = [
                v[c],
                dv,
                h * k[0][c] - dv,
                dv - h * k[6][c] - (h * k[0][c] - dv),
                d5,
            ];
            if c == 0 {
                seg.r = rc;
            } else {
                seg.rp = rc;
            }
        }

        // event scan on the dense output
        let event_val = |theta: F| -> (F, F) {
            let (r, rp) = seg.eval(theta);
            let yy = y + theta * h;
            (r - ev.r_floor, (r - yy * rp) - ev.w_floor)
        };
        let mut crossing: Option<(F, F)> = None; // (last good theta, first bad theta)
        let scan = 16;
        let mut prev_theta = F::zero();
        for j in 1..=scan {
            let theta = lit::<F>(j as f64 / scan as f64);
            let (gr, gw) = event_val(theta);
            if gr <= F::zero() || gw <= F::zero() {
                crossing = Some((prev_theta, theta));
                break;
            }
            prev_theta = theta;
        }

        if let Some((mut lo, mut hi)) = crossing {
            while h * (hi - lo) > ev.h_min {
                let mid = (lo + hi) * lit::<F>(0.5);
                let (gr, gw) = event_val(mid);
                if gr <= F::zero() || gw <= F::zero() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let (gr, _gw) = event_val(hi);
            termination = if gr <= F::zero() {
                Termination::EventRZero
            } else {
                Termination::EventWZero
            };
            if lo > F::zero() {
                let (r_end, rp_end) = seg.eval(lo);
                let y_end = y + lo * h;
                let rpp_end = rhs(p, &State::new(y_end, r_end, rp_end))?;
                segs.push(seg);
                samples.push(Sample { y: y_end, r: r_end, rp: rp_end, rpp: rpp_end });
            }
            break 'outer;
        }

        segs.push(seg);
        y = y + h;
        v = v1;
        let rpp = rhs(p, &State::new(y, v[0], v[1]))?;
        samples.push(Sample { y, r: v[0], rp: v[1], rpp });
        k1 = k[6];

        // no growth right after a rejection, to stop accept/reject cycling
        let fac_max = if just_rejected { F::one() } else { lit::<F>(5.0) };
        just_rejected = false;
        let fac = if err == F::zero() {
            fac_max
        } else {
            (lit::<F>(0.9) * err.powf(lit::<F>(-0.2))).min(fac_max).max(lit::<F>(0.2))
        };
        h = h * fac;
    }

    Ok(Profile {
        params: *p,
        samples,
        termination,
        tolerances: tol,
        segs,
        reflected: false,
    })
}

/// Sup-norm tolerance for the Picard/RK cross-check.
pub const CROSS_CHECK_TOL: f64 = 1e-6;

/// Produces the initial segment on `[0, ε₂]` by the RK integrator and
/// verifies it against the Picard fixed point, which is an independent
/// construction of the same local solution.
///
/// The RK start is authoritative; disagreement beyond [`CROSS_CHECK_TOL`]
/// is an implementation fault, not a math condition.
pub fn hybrid_start<F: Real>(
    p: &Params<F>,
    tol: Tolerances<F>,
) -> Result<Profile<F>, IntegrateError> {
    hybrid_start_with(p, tol, &ode::rhs)
}

/// [`hybrid_start`] with a caller-supplied right-hand side for the RK leg.
pub fn hybrid_start_with<F: Real>(
    p: &Params<F>,
    tol: Tolerances<F>,
    rhs: &Rhs<F>,
) -> Result<Profile<F>, IntegrateError> {
    let eta = p.mu * lit::<F>(0.25);
    let pair = picard::picard_solve(p, eta, lit::<F>(1e-13), 200).or_else(|e| match e {
        // tol below quadrature resolution would be a config problem; retry
        // once with a looser tol before giving up
        PicardError::NoConvergence { .. } => picard::picard_solve(p, eta, lit::<F>(1e-11), 400),
        other => Err(other),
    })?;
    let eps = pair.eps();
    let prof = integrate_profile_with(p, eps, tol, EventSpec::defaults(p, eps), rhs)?;

    let mut sup = F::zero();
    for (i, &yy) in pair.grid.iter().enumerate() {
        let s = dense_eval(&prof, yy.min(prof.y_end()))?;
        sup = sup.max((s.0.r - pair.g[i]).abs()).max((s.0.rp - pair.h[i]).abs());
    }
    if sup > lit(CROSS_CHECK_TOL) {
        return Err(IntegrateError::CrossCheckFailure {
            sup_diff: sup.to_f64().unwrap_or(f64::NAN),
            tol: CROSS_CHECK_TOL,
        });
    }
    Ok(prof)
}

/// Even reflection onto `[-y_end, y_end]` via `(y, r, r', r'') ↦
/// (-y, r, -r', r'')`; idempotent on already-reflected profiles.
pub fn reflect_even<F: Real>(prof: &Profile<F>) -> Result<Profile<F>, IntegrateError> {
    if prof.reflected {
        return Ok(prof.clone());
    }
    let first = prof.samples.first().expect("profile is nonempty");
    if first.y != F::zero() {
        return Err(IntegrateError::Precondition(format!(
            "profile must start at y = 0, starts at {}",
            first.y
        )));
    }
    if first.rp.abs() > lit::<F>(1e-14) * F::one().max(first.r.abs()) {
        return Err(IntegrateError::Precondition(format!(
            "r'(0) = {} is not zero beyond roundoff",
            first.rp
        )));
    }
    let mut samples: Vec<Sample<F>> = prof
        .samples
        .iter()
        .skip(1)
        .rev()
        .map(|s| Sample { y: -s.y, r: s.r, rp: -s.rp, rpp: s.rpp })
        .collect();
    samples.extend(prof.samples.iter().copied());
    Ok(Profile {
        params: prof.params,
        samples,
        termination: prof.termination,
        tolerances: prof.tolerances,
        segs: prof.segs.clone(),
        reflected: true,
    })
}

/// Interpolated state (plus `r''`) at any `y` in the profile's span, from
/// the stored continuous extension. Negative `y` on reflected profiles is
/// served by evenness.
pub fn dense_eval<F: Real>(prof: &Profile<F>, y: F) -> Result<(State<F>, F), IntegrateError> {
    let lo = prof.y_start();
    let hi = prof.y_end();
    if y < lo || y > hi {
        return Err(IntegrateError::Range {
            y: y.to_f64().unwrap_or(f64::NAN),
            lo: lo.to_f64().unwrap_or(f64::NAN),
            hi: hi.to_f64().unwrap_or(f64::NAN),
        });
    }
    let (ya, flip) = if y < F::zero() { (-y, true) } else { (y, false) };

    let (r, rp) = if prof.segs.is_empty() {
        let s = prof.samples.last().expect("profile is nonempty");
        (s.r, s.rp)
    } else {
        // binary search for the segment containing ya
        let mut a = 0usize;
        let mut b = prof.segs.len();
        while b - a > 1 {
            let m = (a + b) / 2;
            if prof.segs[m].y0 <= ya {
                a = m;
            } else {
                b = m;
            }
        }
        let seg = &prof.segs[a];
        let theta = if seg.h == F::zero() {
            F::zero()
        } else {
            ((ya - seg.y0) / seg.h).min(F::one()).max(F::zero())
        };
        seg.eval(theta)
    };
    let rp = if flip { -rp } else { rp };
    let state = State::new(y, r, rp);
    let rpp = ode::rhs(&prof.params, &state)?;
    Ok((state, rpp))
}
