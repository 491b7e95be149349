//! Pole-aware numerical evaluation of the Painleve transcendents P1..P5 and
//! the Weierstrass elliptic function.
//!
//! Trajectories are produced by an adaptive Taylor-series method: at each
//! accepted point the solution jet is rebuilt from the defining ODE's
//! recurrence in `taylor::Taylor` arithmetic, the step size is chosen from
//! the decay of the top coefficients, and the local error estimate is the
//! magnitude of the discarded tail. Higher derivatives (`jet_extend`) come
//! from the same recurrence, never from differencing samples.
//!
//! Movable poles are detected by blow-up monitoring. For P1, P2 and the
//! Weierstrass function the default policy steps around a pole by fitting
//! the truncated Laurent expansion (pole position plus the free resonance
//! coefficient) to the last accepted sample and restarting on the far side.

use crate::error::{Error, Result};
use crate::exotic::func_w;
use crate::jets::{DiffPoly, Func, JetMonomial, JetVar};
use crate::mpoly::MPoly;
use crate::sym::{sym_hbar, Sym};
use crate::taylor::{Taylor, N};
use serde::Serialize;

/// Which transcendent a binding evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    P1,
    P2,
    P3,
    P4,
    P5,
    WeierstrassP,
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind> {
        Ok(match s {
            "P1" | "p1" => Kind::P1,
            "P2" | "p2" => Kind::P2,
            "P3" | "p3" => Kind::P3,
            "P4" | "p4" => Kind::P4,
            "P5" | "p5" => Kind::P5,
            "weierstrass" | "wp" | "P" => Kind::WeierstrassP,
            other => {
                return Err(Error::Inconsistent(format!(
                    "unknown transcendent kind {other}"
                )))
            }
        })
    }
}

/// Equation parameters: `(alpha, beta, gamma, delta)` for the Painleve
/// equations, `(e2, e3)` for the Weierstrass function.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Params {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub e2: f64,
    pub e3: f64,
}

/// Map from the physical variable `y` to the transcendent's own argument.
#[derive(Clone, Copy, Debug, Serialize)]
pub enum ArgMap {
    /// `Y = a y + b`.
    Affine { a: f64, b: f64 },
    /// `Y = y^2` (used by the P5 solution formulas).
    Square,
}

impl ArgMap {
    pub fn eval(&self, y: f64) -> f64 {
        match self {
            ArgMap::Affine { a, b } => a * y + b,
            ArgMap::Square => y * y,
        }
    }

    pub fn taylor(&self, y: f64) -> Taylor {
        let t = Taylor::var(y);
        match self {
            ArgMap::Affine { a, b } => t.scale(*a) + Taylor::constant(*b),
            ArgMap::Square => t * t,
        }
    }

    /// Image of an interval, as an ordered interval.
    pub fn window(&self, lo: f64, hi: f64) -> (f64, f64) {
        let (a, b) = (self.eval(lo), self.eval(hi));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// Initial data for a trajectory, in the transcendent's own argument.
#[derive(Clone, Copy, Debug, Serialize)]
pub enum InitialData {
    /// Value and slope at an ordinary point.
    Anchor { at: f64, value: f64, slope: f64 },
    /// Start from the truncated Laurent expansion at a movable pole,
    /// offset to the given side. `free` is the resonance coefficient
    /// (ignored for the Weierstrass function, whose expansion is rigid).
    PoleAnchored { pole: f64, offset: f64, free: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct TranscendentBinding {
    pub kind: Kind,
    pub params: Params,
    pub arg_map: ArgMap,
    pub initial: InitialData,
}

/// How to react when the integrator runs into a movable pole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PolePolicy {
    Stop,
    StepAround,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolveConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    pub pole_policy: PolePolicy,
    /// Sampling window in the transcendent's own argument.
    pub window: (f64, f64),
}

impl SolveConfig {
    pub fn for_window(lo: f64, hi: f64) -> SolveConfig {
        SolveConfig {
            rel_tol: 1e-13,
            abs_tol: 1e-14,
            max_step: 0.05,
            pole_policy: PolePolicy::StepAround,
            window: (lo, hi),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Sample {
    pub y: f64,
    pub p: f64,
    pub dp: f64,
    pub err: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PoleAnnotation {
    pub y: f64,
    pub order: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub kind: Kind,
    pub params: Params,
    pub samples: Vec<Sample>,
    pub poles: Vec<PoleAnnotation>,
}

/// Right-hand side `W'' = F(Y, W, W')` of the defining ODE, in Taylor
/// arithmetic. `w` carries the currently known solution coefficients.
fn rhs(kind: Kind, pr: &Params, yv: Taylor, w: Taylor) -> Taylor {
    let dw = w.deriv();
    let c = Taylor::constant;
    match kind {
        Kind::P1 => w * w * c(6.0) + yv,
        Kind::P2 => w * w * w * c(2.0) + yv * w + c(pr.alpha),
        Kind::P3 => {
            dw * dw / w - dw / yv
                + (w * w * c(pr.alpha) + c(pr.beta)) / yv
                + w * w * w * c(pr.gamma)
                + c(pr.delta) / w
        }
        Kind::P4 => {
            dw * dw / (w * c(2.0))
                + w * w * w * c(1.5)
                + yv * w * w * c(4.0)
                + (yv * yv - c(pr.alpha)) * w * c(2.0)
                + c(pr.beta) / w
        }
        Kind::P5 => {
            let wm1 = w - c(1.0);
            (c(0.5) / w + wm1.recip()) * dw * dw - dw / yv
                + wm1 * wm1 * (w * c(pr.alpha) + c(pr.beta) / w) / (yv * yv)
                + w * c(pr.gamma) / yv
                + c(pr.delta) * w * (w + c(1.0)) / wm1
        }
        Kind::WeierstrassP => w * w * c(6.0) - c(pr.e2 / 2.0),
    }
}

/// Solution jet at `(y, w, dw)` from the ODE recurrence: coefficients
/// `c_{m+2} = F_m / ((m+1)(m+2))` with `F` re-expanded at each order.
pub fn ode_jet(kind: Kind, pr: &Params, y: f64, w: f64, dw: f64) -> Taylor {
    let yv = Taylor::var(y);
    let mut cfs = Taylor::zero();
    cfs.0[0] = w;
    cfs.0[1] = dw;
    for m in 0..N - 2 {
        let f = rhs(kind, pr, yv, cfs);
        cfs.0[m + 2] = f.0[m] / (((m + 1) * (m + 2)) as f64);
    }
    cfs
}

/// Residual of the defining ODE at a point, given `(w, dw)`, evaluated
/// through the same jet recurrence (the order-2 coefficient is `W''/2`).
pub fn defining_residual(kind: Kind, pr: &Params, y: f64, w: f64, dw: f64, ddw: f64) -> f64 {
    let yv = Taylor::var(y);
    let mut cfs = Taylor::zero();
    cfs.0[0] = w;
    cfs.0[1] = dw;
    let f = rhs(kind, pr, yv, cfs);
    ddw - f.0[0]
}

fn choose_step(cfs: &Taylor, tol: f64) -> f64 {
    let mut h = f64::INFINITY;
    for k in [N - 2, N - 1] {
        let c = cfs.0[k].abs();
        if c > 0.0 {
            h = h.min((tol / c).powf(1.0 / k as f64));
        }
    }
    if h.is_finite() {
        0.8 * h
    } else {
        f64::INFINITY
    }
}

const BLOWUP: f64 = 1e7;
const MIN_STEP: f64 = 1e-11;

/// Laurent data at a movable pole: `(exponents, coefficients)` of
/// `W = sum a_j t^(j + p)` with `p` the pole order, plus the index of the
/// free (resonance) coefficient.
struct LaurentFit {
    /// Coefficient `a_j` multiplies `t^(j + lead)`.
    lead: i32,
    a: Vec<f64>,
}

impl LaurentFit {
    fn eval(&self, t: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for (j, aj) in self.a.iter().enumerate() {
            let e = self.lead + j as i32;
            p += aj * t.powi(e);
            dp += aj * e as f64 * t.powi(e - 1);
        }
        (p, dp)
    }

    /// Rough convergence check: the last retained term must be small
    /// relative to the leading one.
    fn converged_at(&self, t: f64) -> bool {
        let last = self.a.last().copied().unwrap_or(0.0)
            * t.powi(self.lead + self.a.len() as i32 - 1);
        let leadv = self.a[0] * t.powi(self.lead);
        last.abs() < 1e-6 * leadv.abs().max(1.0)
    }
}

const LAURENT_TERMS: usize = 14;

/// Truncated Laurent expansion of P1 at a movable pole: `W = t^-2 + ...`,
/// with the resonance coefficient at `t^4` free.
fn laurent_p1(y0: f64, h: f64) -> LaurentFit {
    let mut a = vec![0.0; LAURENT_TERMS];
    a[0] = 1.0;
    for j in 1..LAURENT_TERMS {
        if j == 6 {
            a[6] = h;
            continue;
        }
        let mut s = 0.0;
        for m in 1..j {
            s += a[m] * a[j - m];
        }
        let mut rhs = 6.0 * s;
        if j == 4 {
            rhs += y0;
        }
        if j == 5 {
            rhs += 1.0;
        }
        let den = ((j as i32 - 2) * (j as i32 - 3) - 12) as f64;
        a[j] = rhs / den;
    }
    LaurentFit { lead: -2, a }
}

/// Truncated Laurent expansion of P2 at a movable pole: `W = eps/t + ...`,
/// `eps = +-1`, resonance coefficient at `t^3` free.
fn laurent_p2(y0: f64, alpha: f64, eps: f64, h: f64) -> LaurentFit {
    let mut a = vec![0.0; LAURENT_TERMS];
    a[0] = eps;
    for j in 1..LAURENT_TERMS {
        if j == 4 {
            a[4] = h;
            continue;
        }
        let mut s = 0.0;
        for m in 0..=j {
            for n in 0..=(j - m) {
                let k = j - m - n;
                if (m == j && n == 0) || (n == j && m == 0) || (k == j && m == 0 && n == 0) {
                    continue;
                }
                s += a[m] * a[n] * a[k];
            }
        }
        // drop the a_j-proportional part of the cube (handled by the
        // denominator): terms with one index equal to j were excluded above
        let mut rhs = 2.0 * s;
        if j >= 2 {
            rhs += y0 * a[j - 2];
        }
        if j >= 3 {
            rhs += a[j - 3];
        }
        if j == 3 {
            rhs += alpha;
        }
        let den = ((j as i32 - 1) * (j as i32 - 2)) as f64 - 6.0;
        a[j] = rhs / den;
    }
    LaurentFit { lead: -1, a }
}

/// Laurent expansion of the Weierstrass function at a pole: even series
/// `t^-2 + c2 t^2 + c3 t^4 + ...`, entirely rigid.
fn laurent_wp(e2: f64, e3: f64) -> LaurentFit {
    let terms = 10usize;
    let mut c = vec![0.0; terms + 1];
    c[2] = e2 / 20.0;
    c[3] = e3 / 28.0;
    for k in 4..=terms {
        let mut s = 0.0;
        for m in 2..=(k - 2) {
            s += c[m] * c[k - m];
        }
        c[k] = 3.0 / (((2 * k + 1) * (k - 3)) as f64) * s;
    }
    // repack into consecutive powers t^-2, t^-1, t^0, ...: the coefficient
    // of t^(2k-2) sits at index (2k-2) + 2 = 2k
    let mut a = vec![0.0; 2 * terms + 1];
    a[0] = 1.0;
    for k in 2..=terms {
        a[2 * k] = c[k];
    }
    LaurentFit { lead: -2, a }
}

fn laurent_for(kind: Kind, pr: &Params, y0: f64, branch: f64, free: f64) -> LaurentFit {
    match kind {
        Kind::P1 => laurent_p1(y0, free),
        Kind::P2 => laurent_p2(y0, pr.alpha, branch, free),
        Kind::WeierstrassP => laurent_wp(pr.e2, pr.e3),
        _ => unreachable!("no Laurent restart for this kind"),
    }
}

/// Fit `(y0, free)` of the pole expansion to the last accepted sample by
/// Newton iteration, and return the fitted expansion with the pole location.
fn fit_pole(
    kind: Kind,
    pr: &Params,
    s: &Sample,
    direction: f64,
) -> Option<(f64, f64, LaurentFit)> {
    // branch sign for P2 from the sign of the blowing-up solution
    let branch = if s.p >= 0.0 { 1.0 } else { -1.0 };
    // initial guess for the pole from the leading behavior
    let lead = match kind {
        Kind::P2 => -1,
        _ => -2,
    };
    let t_guess = match lead {
        -1 => branch / s.p,
        _ => (1.0 / s.p.abs()).sqrt() * (-direction).signum(),
    };
    // approach side: the pole lies ahead of the sample in `direction`
    let t0 = -t_guess.abs() * direction;
    let mut y0 = s.y - t0;
    let mut free = 0.0;
    for _ in 0..60 {
        let fit = laurent_for(kind, pr, y0, branch, free);
        let t = s.y - y0;
        let (p, dp) = fit.eval(t);
        let r = [p - s.p, dp - s.dp];
        if r[0].abs() < 1e-9 * s.p.abs().max(1.0) && r[1].abs() < 1e-7 * s.dp.abs().max(1.0) {
            // the pole must lie ahead of the fitting sample
            if (y0 - s.y) * direction <= 0.0 {
                return None;
            }
            let fit = laurent_for(kind, pr, y0, branch, free);
            return Some((y0, branch, fit));
        }
        // numeric Jacobian
        let d1 = 1e-7 * t.abs().max(1e-7);
        let f_y = laurent_for(kind, pr, y0 + d1, branch, free);
        let (py, dpy) = f_y.eval(s.y - (y0 + d1));
        let j00 = (py - p) / d1;
        let j10 = (dpy - dp) / d1;
        let (j01, j11) = if matches!(kind, Kind::WeierstrassP) {
            (0.0, 0.0)
        } else {
            let d2 = 1e-6 * free.abs().max(1.0);
            let f_h = laurent_for(kind, pr, y0, branch, free + d2);
            let (ph, dph) = f_h.eval(t);
            ((ph - p) / d2, (dph - dp) / d2)
        };
        let (dy0, dfree) = if matches!(kind, Kind::WeierstrassP) {
            // 1D Newton on the value equation
            if j00 == 0.0 {
                return None;
            }
            (-r[0] / j00, 0.0)
        } else {
            let det = j00 * j11 - j01 * j10;
            if det == 0.0 {
                return None;
            }
            ((-r[0] * j11 + r[1] * j01) / det, (-r[1] * j00 + r[0] * j10) / det)
        };
        y0 += dy0.clamp(-0.1, 0.1);
        free += dfree;
        if !(y0.is_finite() && free.is_finite()) {
            return None;
        }
    }
    None
}

/// Integrate from `(y, w, dw)` towards `target`, appending samples.
/// Returns `Ok(true)` if the target was reached, `Ok(false)` on a pole stop.
fn march(
    kind: Kind,
    pr: &Params,
    cfg: &SolveConfig,
    mut y: f64,
    mut w: f64,
    mut dw: f64,
    target: f64,
    out: &mut Vec<Sample>,
    poles: &mut Vec<PoleAnnotation>,
) -> Result<bool> {
    let dir = (target - y).signum();
    if dir == 0.0 {
        return Ok(true);
    }
    let mut err_last = 0.0;
    loop {
        out.push(Sample {
            y,
            p: w,
            dp: dw,
            err: err_last,
        });
        if (target - y) * dir <= 0.0 {
            return Ok(true);
        }
        let cfs = ode_jet(kind, pr, y, w, dw);
        if !cfs.is_finite() || w.abs() > BLOWUP {
            return pole_or_stop(kind, pr, cfg, out, poles, dir, target);
        }
        let tol = cfg.abs_tol + cfg.rel_tol * w.abs();
        let mut h = choose_step(&cfs, tol).min(cfg.max_step).min((target - y) * dir);
        if h < MIN_STEP {
            return pole_or_stop(kind, pr, cfg, out, poles, dir, target);
        }
        h *= dir;
        let tail = cfs.0[N - 2].abs() * h.abs().powi((N - 2) as i32)
            + cfs.0[N - 1].abs() * h.abs().powi((N - 1) as i32);
        let shifted = cfs.shift(h);
        y += h;
        w = shifted.0[0];
        dw = shifted.0[1];
        err_last = tail;
        if !w.is_finite() || !dw.is_finite() {
            return pole_or_stop(kind, pr, cfg, out, poles, dir, target);
        }
    }
}

fn pole_or_stop(
    kind: Kind,
    pr: &Params,
    cfg: &SolveConfig,
    out: &mut Vec<Sample>,
    poles: &mut Vec<PoleAnnotation>,
    dir: f64,
    target: f64,
) -> Result<bool> {
    // samples taken extremely close to the pole may have stepped across it
    // and are unreliable; trim them and fit from a moderate-magnitude one
    while out
        .last()
        .map(|s| !s.p.is_finite() || s.p.abs() > 1e5)
        .unwrap_or(false)
    {
        out.pop();
    }
    let last = *out.last().ok_or_else(|| {
        Error::Inconsistent("pole detected before any accepted sample".into())
    })?;
    let can_restart = matches!(kind, Kind::P1 | Kind::P2 | Kind::WeierstrassP)
        && cfg.pole_policy == PolePolicy::StepAround;
    if !can_restart {
        poles.push(PoleAnnotation {
            y: last.y,
            order: if matches!(kind, Kind::P2) { -1 } else { -2 },
        });
        return Ok(false);
    }
    let Some((y0, _branch, fit)) = fit_pole(kind, pr, &last, dir) else {
        poles.push(PoleAnnotation {
            y: last.y,
            order: if matches!(kind, Kind::P2) { -1 } else { -2 },
        });
        return Ok(false);
    };
    poles.push(PoleAnnotation {
        y: y0,
        order: fit.lead,
    });
    // restart on the far side at the mirrored offset
    let t_far = -(last.y - y0);
    if !fit.converged_at(t_far) {
        return Ok(false);
    }
    let (p, dp) = fit.eval(t_far);
    let y_restart = y0 + t_far;
    if (target - y_restart) * dir <= 0.0 {
        return Ok(true);
    }
    // drop samples too close to the pole on the near side? keep them; the
    // exclusion radius is applied by consumers via the annotation.
    march(kind, pr, cfg, y_restart, p, dp, target, out, poles)
}

/// Integrate the defining ODE over the configured window.
pub fn sample_transcendent(b: &TranscendentBinding, cfg: &SolveConfig) -> Result<Trajectory> {
    let (lo, hi) = cfg.window;
    if !(lo < hi) {
        return Err(Error::Inconsistent("empty sampling window".into()));
    }
    let mut samples = Vec::new();
    let mut poles = Vec::new();
    let (at, value, slope) = match b.initial {
        InitialData::Anchor { at, value, slope } => (at, value, slope),
        InitialData::PoleAnchored { pole, offset, free } => {
            let branch = 1.0;
            let fit = laurent_for(b.kind, &b.params, pole, branch, free);
            poles.push(PoleAnnotation {
                y: pole,
                order: fit.lead,
            });
            let (p, dp) = fit.eval(offset);
            (pole + offset, p, dp)
        }
    };
    // march down then up from the anchor
    let mut down = Vec::new();
    if at > lo {
        march(
            b.kind, &b.params, cfg, at, value, slope, lo, &mut down, &mut poles,
        )?;
    }
    down.reverse();
    samples.extend(down);
    let mut up = Vec::new();
    if at < hi {
        march(
            b.kind, &b.params, cfg, at, value, slope, hi, &mut up, &mut poles,
        )?;
        if at > lo {
            up.remove(0); // anchor already present from the down sweep
        }
    } else if samples.is_empty() {
        samples.push(Sample {
            y: at,
            p: value,
            dp: slope,
            err: 0.0,
        });
    }
    samples.extend(up);
    samples.dedup_by(|a, b| a.y == b.y);
    Ok(Trajectory {
        kind: b.kind,
        params: b.params,
        samples,
        poles,
    })
}

impl Trajectory {
    /// Whether `[lo, hi]` is covered by samples with no annotated pole
    /// closer than `radius`.
    pub fn covers(&self, lo: f64, hi: f64, radius: f64) -> bool {
        let first = self.samples.first().map(|s| s.y).unwrap_or(f64::INFINITY);
        let last = self.samples.last().map(|s| s.y).unwrap_or(f64::NEG_INFINITY);
        if first > lo + 1e-9 || last < hi - 1e-9 {
            return false;
        }
        // a gap between consecutive samples larger than the local step scale
        // indicates a skipped pole region
        self.poles
            .iter()
            .all(|p| p.y < lo - radius || p.y > hi + radius)
    }

    /// Nearest sample not separated from `y` by an annotated pole.
    fn nearest(&self, y: f64) -> Result<Sample> {
        self.samples
            .iter()
            .filter(|s| {
                !self.poles.iter().any(|p| {
                    (s.y - p.y) * (y - p.y) < 0.0 || (s.y - p.y).abs() < 0.02
                })
            })
            .min_by(|a, b| {
                (a.y - y)
                    .abs()
                    .partial_cmp(&(b.y - y).abs())
                    .unwrap()
            })
            .copied()
            .ok_or_else(|| Error::Inconsistent("no usable sample on this side of a pole".into()))
    }
}

/// Solution jet in the transcendent's own argument at `y_arg`, by Taylor
/// re-stepping from the nearest accepted sample.
pub fn taylor_at(b: &TranscendentBinding, traj: &Trajectory, y_arg: f64) -> Result<Taylor> {
    for p in &traj.poles {
        if (y_arg - p.y).abs() < 0.05 {
            return Err(Error::Inconsistent(format!(
                "jet requested at {} within the safety radius of the pole at {}",
                y_arg, p.y
            )));
        }
    }
    let s = traj.nearest(y_arg)?;
    let mut y = s.y;
    let mut w = s.p;
    let mut dw = s.dp;
    // re-step towards the target with the same error control
    let mut guard = 0;
    loop {
        let cfs = ode_jet(b.kind, &b.params, y, w, dw);
        let remaining = y_arg - y;
        let tol = 1e-14 + 1e-13 * w.abs();
        let h_acc = choose_step(&cfs, tol).min(0.05);
        if remaining.abs() <= h_acc {
            // advance value and slope to the target, then rebuild the jet
            // from the ODE recurrence there: shifting the truncated series
            // is accurate for low orders only, while the recurrence gives
            // every coefficient to the accuracy of (value, slope)
            let at_target = cfs.shift(remaining);
            return Ok(ode_jet(b.kind, &b.params, y_arg, at_target.0[0], at_target.0[1]));
        }
        let h = h_acc * remaining.signum();
        let shifted = cfs.shift(h);
        y += h;
        w = shifted.0[0];
        dw = shifted.0[1];
        guard += 1;
        if guard > 100_000 || !w.is_finite() {
            return Err(Error::Inconsistent(format!(
                "jet extension failed to reach {y_arg}"
            )));
        }
    }
}

/// Taylor jet of the transcendent as a function of the *physical* variable
/// `y`, i.e. with the argument map's Jacobian applied.
pub fn taylor_in_physical(
    b: &TranscendentBinding,
    traj: &Trajectory,
    y: f64,
) -> Result<Taylor> {
    let arg = b.arg_map.taylor(y);
    let y0 = arg.0[0];
    let nat = taylor_at(b, traj, y0)?;
    let mut inner = arg;
    inner.0[0] = 0.0;
    Ok(nat.compose(&inner))
}

/// Derivatives `P, P', ..., P^(m)` with respect to the physical variable.
pub fn jet_extend(
    b: &TranscendentBinding,
    traj: &Trajectory,
    y: f64,
    m: usize,
) -> Result<Vec<f64>> {
    if m > 6 {
        return Err(Error::Inconsistent(format!(
            "jet order {m} exceeds the supported maximum of 6"
        )));
    }
    let t = taylor_in_physical(b, traj, y)?;
    Ok((0..=m).map(|k| t.derivative(k)).collect())
}

/// Symbolic Cole-Hopf linearization of a first-order Riccati equation
/// `a(y) W' + b(y) W^2 + c(y) W + d(y) = 0` with `a = -hbar^2 b`:
/// substituting `W = -hbar^2 U'/U` and clearing `U` yields
/// `a hbar^2 U'' + c hbar^2 U' - d U = 0`.
pub fn cole_hopf_linearize(riccati: &DiffPoly) -> Result<(DiffPoly, [MPoly; 4])> {
    let w = func_w();
    let jw = JetVar {
        func: w.clone(),
        dx: 0,
        dy: 0,
    };
    let jw1 = JetVar {
        func: w.clone(),
        dx: 0,
        dy: 1,
    };
    let mut a = MPoly::zero();
    let mut b = MPoly::zero();
    let mut c = MPoly::zero();
    let mut d = MPoly::zero();
    for (jm, coeff) in &riccati.terms {
        if *jm == JetMonomial::one() {
            d = d + coeff.clone();
        } else if *jm == JetMonomial::single(jw1.clone()) {
            a = a + coeff.clone();
        } else if *jm == JetMonomial::single(jw.clone()) {
            c = c + coeff.clone();
        } else if *jm == JetMonomial::power(jw.clone(), 2) {
            b = b + coeff.clone();
        } else {
            return Err(Error::Inconsistent(
                "equation is not first-order quadratic in W".into(),
            ));
        }
    }
    let h2 = MPoly::var_pow(sym_hbar(), 2);
    if !(a.clone() + b.clone() * h2.clone()).is_zero() {
        return Err(Error::Inconsistent(
            "Riccati is not of Cole-Hopf shape: requires a = -hbar^2 b".into(),
        ));
    }
    let u = Func::of_y("U");
    let linear = DiffPoly::jet1(&u, 2).scale(&(a.clone() * h2.clone()))
        + DiffPoly::jet1(&u, 1).scale(&(c.clone() * h2))
        + DiffPoly::func(&u).scale(&-d.clone());
    Ok((linear, [a, b, c, d]))
}

/// Numeric trajectory of `W` solving a Riccati equation through its
/// Cole-Hopf linearization: integrate the linear ODE for `U` and map back
/// through `W = -hbar^2 U'/U`.
///
/// `vars` supplies every parameter value (including `hbar`); `w0` anchors
/// `W` at `window.0`. Returns samples `(y, W)` and the sup residual of the
/// original Riccati along them.
pub fn riccati_cole_hopf_numeric(
    riccati: &DiffPoly,
    vars: &dyn Fn(&Sym) -> f64,
    w0: f64,
    window: (f64, f64),
    n_samples: usize,
) -> Result<(DiffPoly, Vec<(f64, f64)>, f64)> {
    let (linear, [a, _b, c, d]) = cole_hopf_linearize(riccati)?;
    let hbar = vars(&sym_hbar());
    let h2 = hbar * hbar;
    let (lo, hi) = window;
    // U'' = -(c hbar^2 U' - d U) / (a hbar^2), with y-dependent a, c, d.
    // March with the Taylor recurrence; coefficients of a, c, d around the
    // current point come from MPoly evaluation in Taylor arithmetic.
    let coeff_taylor = |p: &MPoly, y: f64| -> Taylor {
        // evaluate p(y + t) by differentiating symbolically
        let ysym = Sym::new("y");
        let mut out = Taylor::zero();
        let mut cur = p.clone();
        let mut fact = 1.0;
        for k in 0..N {
            if k > 0 {
                fact *= k as f64;
            }
            let at = |s: &Sym| if *s == ysym { y } else { vars(s) };
            out.0[k] = cur.eval_f64(&at) / fact;
            cur = cur.diff(&ysym);
        }
        out
    };
    let mut y = lo;
    let mut u = 1.0f64;
    let mut du = -w0 / h2;
    let mut out = Vec::new();
    let mut sup = 0.0f64;
    let wsym = func_w();
    let n = n_samples.max(2);
    let step_out = (hi - lo) / (n - 1) as f64;
    let mut next_out = lo;
    loop {
        if y >= next_out - 1e-12 {
            let wv = -h2 * du / u;
            let dwv = {
                // W' = -hbar^2 (U''/U - (U'/U)^2); U'' from the linear ODE
                let av = a.eval_f64(&|s: &Sym| if s.name() == "y" { y } else { vars(s) });
                let cv = c.eval_f64(&|s: &Sym| if s.name() == "y" { y } else { vars(s) });
                let dv = d.eval_f64(&|s: &Sym| if s.name() == "y" { y } else { vars(s) });
                let ddu = -(cv * h2 * du - dv * u) / (av * h2);
                -h2 * (ddu / u - (du / u) * (du / u))
            };
            let jets = |j: &JetVar| -> f64 {
                if j.func == wsym {
                    match j.dy {
                        0 => wv,
                        1 => dwv,
                        _ => f64::NAN,
                    }
                } else {
                    f64::NAN
                }
            };
            let at = |s: &Sym| if s.name() == "y" { y } else { vars(s) };
            let (res, scale) = riccati.eval_f64_terms(&at, &jets);
            sup = sup.max(res.abs() / scale.max(1.0));
            out.push((y, wv));
            next_out += step_out;
            if out.len() >= n {
                break;
            }
        }
        // Taylor step for the linear system
        let at_ = coeff_taylor(&a, y);
        let ct_ = coeff_taylor(&c, y);
        let dt_ = coeff_taylor(&d, y);
        let mut ucf = Taylor::zero();
        ucf.0[0] = u;
        ucf.0[1] = du;
        for m in 0..N - 2 {
            let f = (dt_ * ucf - ct_ * ucf.deriv().scale(h2)) / at_.scale(h2);
            ucf.0[m + 2] = f.0[m] / (((m + 1) * (m + 2)) as f64);
        }
        let tol = 1e-14 + 1e-13 * u.abs();
        let h = choose_step(&ucf, tol)
            .min(0.02)
            .min((next_out - y).max(1e-9));
        let shifted = ucf.shift(h);
        y += h;
        u = shifted.0[0];
        du = shifted.0[1];
        if !u.is_finite() || u.abs() < 1e-12 {
            return Err(Error::Inconsistent(format!(
                "U vanishes near y = {y}: domain split required"
            )));
        }
    }
    Ok((linear, out, sup))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anchor(kind: Kind, params: Params, at: f64, value: f64, slope: f64) -> TranscendentBinding {
        TranscendentBinding {
            kind,
            params,
            arg_map: ArgMap::Affine { a: 1.0, b: 0.0 },
            initial: InitialData::Anchor { at, value, slope },
        }
    }

    #[test]
    fn p2_zero_solution_stays_zero() {
        let b = anchor(Kind::P2, Params::default(), 0.0, 0.0, 0.0);
        let cfg = SolveConfig::for_window(-1.0, 1.0);
        let t = sample_transcendent(&b, &cfg).unwrap();
        for s in &t.samples {
            assert!(s.p.abs() < 1e-12, "{s:?}");
        }
    }

    #[test]
    fn p1_defining_residual_small_off_grid() {
        let b = anchor(Kind::P1, Params::default(), 0.0, 0.5, 0.0);
        let cfg = SolveConfig::for_window(-0.8, 0.8);
        let t = sample_transcendent(&b, &cfg).unwrap();
        for y in [-0.63, -0.11, 0.27, 0.55] {
            let j = jet_extend(&b, &t, y, 2).unwrap();
            let r = j[2] - 6.0 * j[0] * j[0] - y;
            assert!(r.abs() < 1e-10, "y={y}: {r}");
        }
    }

    #[test]
    fn wp_laurent_recursion_near_pole() {
        let pr = Params {
            e2: 4.0,
            e3: 0.0,
            ..Params::default()
        };
        let b = TranscendentBinding {
            kind: Kind::WeierstrassP,
            params: pr,
            arg_map: ArgMap::Affine { a: 1.0, b: 0.0 },
            initial: InitialData::PoleAnchored {
                pole: 0.0,
                offset: 0.2,
                free: 0.0,
            },
        };
        let cfg = SolveConfig::for_window(0.2, 1.5);
        let t = sample_transcendent(&b, &cfg).unwrap();
        // leading behavior wp ~ t^-2 + (e2/20) t^2 + O(t^4)
        let j = jet_extend(&b, &t, 0.25, 0).unwrap();
        let tloc: f64 = 0.25;
        let expect = tloc.powi(-2) + pr.e2 / 20.0 * tloc * tloc + pr.e3 / 28.0 * tloc.powi(4);
        assert!((j[0] - expect).abs() < 2e-4 * expect.abs(), "{} vs {expect}", j[0]);
    }

    #[test]
    fn p2_jets_match_local_series() {
        let pr = Params {
            alpha: 0.3,
            ..Params::default()
        };
        let b = anchor(Kind::P2, pr, 0.0, 0.4, -0.2);
        let cfg = SolveConfig::for_window(-0.5, 0.5);
        let t = sample_transcendent(&b, &cfg).unwrap();
        let j = jet_extend(&b, &t, 0.31, 4).unwrap();
        // independent local Taylor oracle from the ODE at the same point
        let oracle = ode_jet(Kind::P2, &pr, 0.31, j[0], j[1]);
        for k in 2..=4 {
            assert!(
                (j[k] - oracle.derivative(k)).abs() < 1e-9 * oracle.derivative(k).abs().max(1.0),
                "k={k}"
            );
        }
    }

    #[test]
    fn wp_third_jet_matches_differentiated_identity() {
        // 2 wp'' = 12 wp^2 - e2, so wp''' = 12 wp wp'
        let pr = Params {
            e2: 3.0,
            e3: 0.5,
            ..Params::default()
        };
        let b = TranscendentBinding {
            kind: Kind::WeierstrassP,
            params: pr,
            arg_map: ArgMap::Affine { a: 1.0, b: 0.0 },
            initial: InitialData::PoleAnchored {
                pole: 0.0,
                offset: 0.3,
                free: 0.0,
            },
        };
        let cfg = SolveConfig::for_window(0.3, 1.2);
        let t = sample_transcendent(&b, &cfg).unwrap();
        let j = jet_extend(&b, &t, 0.8, 3).unwrap();
        assert!((j[3] - 12.0 * j[0] * j[1]).abs() < 1e-8 * (12.0 * j[0] * j[1]).abs().max(1.0));
    }

    #[test]
    fn square_arg_map_applies_jacobian() {
        // P(y^2) with dP/dy = 2 y P'(Y)
        let b = TranscendentBinding {
            kind: Kind::P1,
            params: Params::default(),
            arg_map: ArgMap::Square,
            initial: InitialData::Anchor {
                at: 1.0,
                value: 0.5,
                slope: 0.0,
            },
        };
        let cfg = SolveConfig::for_window(0.2, 2.3);
        let t = sample_transcendent(&b, &cfg).unwrap();
        let y = 1.2;
        let phys = jet_extend(&b, &t, y, 1).unwrap();
        let nat = taylor_at(&b, &t, y * y).unwrap();
        assert!((phys[0] - nat.derivative(0)).abs() < 1e-11);
        assert!((phys[1] - 2.0 * y * nat.derivative(1)).abs() < 1e-10);
    }

    #[test]
    fn p1_steps_around_its_pole() {
        // a P1 solution blows up moving right; the trajectory must continue
        // past the pole with the Laurent restart and annotate it
        let b = anchor(Kind::P1, Params::default(), 0.0, 1.0, 2.0);
        let cfg = SolveConfig::for_window(0.0, 3.0);
        let t = sample_transcendent(&b, &cfg).unwrap();
        assert!(!t.poles.is_empty(), "expected a movable pole");
        let last = t.samples.last().unwrap();
        assert!(last.y > t.poles[0].y, "did not continue past the pole");
        // the continued branch still satisfies the ODE
        let y = t.poles[0].y + 0.4;
        if y < 2.9 {
            let j = jet_extend(&b, &t, y, 2).unwrap();
            let r = j[2] - 6.0 * j[0] * j[0] - y;
            assert!(r.abs() < 1e-6 * (j[2].abs().max(1.0)), "{r}");
        }
    }

    #[test]
    fn constant_coefficient_riccati_linearizes() {
        // hbar^2 W' - W^2 + hbar^2 c = 0 with hbar = 1, c = 1:
        // W = tanh-type; check residual along the Cole-Hopf solve
        use crate::exotic::func_w;
        let r = DiffPoly::jet1(&func_w(), 1).scale(&MPoly::var_pow("hbar", 2))
            + DiffPoly::func(&func_w()).pow(2).scale(&MPoly::int(-1))
            + DiffPoly::from_mpoly(MPoly::var_pow("hbar", 2) * MPoly::var("cc"));
        let vars = |s: &Sym| match s.name() {
            "hbar" => 1.0,
            "cc" => 1.0,
            _ => f64::NAN,
        };
        let (linear, samples, sup) =
            riccati_cole_hopf_numeric(&r, &vars, 0.3, (0.0, 1.0), 21).unwrap();
        assert!(sup < 1e-9, "sup residual {sup}");
        assert_eq!(samples.len(), 21);
        assert!(linear.contains_func(&Func::of_y("U")));
    }

    #[test]
    fn riccati_zero_rhs_keeps_w_zero() {
        use crate::exotic::func_w;
        let r = DiffPoly::jet1(&func_w(), 1).scale(&MPoly::var_pow("hbar", 2))
            + DiffPoly::func(&func_w()).pow(2).scale(&MPoly::int(-1));
        let vars = |s: &Sym| match s.name() {
            "hbar" => 1.0,
            _ => f64::NAN,
        };
        let (_, samples, sup) = riccati_cole_hopf_numeric(&r, &vars, 0.0, (0.0, 1.0), 5).unwrap();
        assert!(sup < 1e-12);
        for (_, w) in samples {
            assert!(w.abs() < 1e-12);
        }
    }

    #[test]
    fn halving_tolerance_is_consistent() {
        let b = anchor(Kind::P4, Params { alpha: 1.0, beta: -0.5, ..Params::default() }, 1.0, 0.7, 0.1);
        let mut cfg = SolveConfig::for_window(0.5, 1.5);
        cfg.rel_tol = 1e-10;
        cfg.abs_tol = 1e-11;
        let coarse = sample_transcendent(&b, &cfg).unwrap();
        cfg.rel_tol = 5e-11;
        cfg.abs_tol = 5e-12;
        let fine = sample_transcendent(&b, &cfg).unwrap();
        let jc = jet_extend(&b, &coarse, 1.23, 0).unwrap()[0];
        let jf = jet_extend(&b, &fine, 1.23, 0).unwrap()[0];
        assert!((jc - jf).abs() < 1e-9, "{jc} vs {jf}");
    }
}
