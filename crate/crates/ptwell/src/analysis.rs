//! Regime analysis, limiting levels and spectrum bookkeeping.
//!
//! Every energy sits inside the rigid corridor
//!
//! ```text
//! (N + 1/2)²/4  ≤  E_N  ≤  (N + 1)²/4
//! ```
//!
//! whose upper end is the infinitely deep Hermitian square well of the same
//! width (approached as `T → ∞`) and whose lower end is approached in the
//! shallow-well limit `T → 0`. Limits are demonstrated by trend tables over
//! finite `T` grids; the solvers themselves never evaluate at `T = 0` or
//! `T = ∞`.

use crate::model::{Branch, Level, LevelIndex, WellSpec};
use crate::secular::solve_level;
use crate::wavefunc::g_value;
use crate::{Real, Result};

/// One solved level with all derived quantities, ready for serialization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow<F> {
    pub n: u32,
    pub omega: F,
    pub k: F,
    pub energy: F,
    pub p: F,
    pub q: F,
    pub alpha: F,
    pub r: F,
    pub g: F,
    pub branch: Branch,
}

impl<F: Real> SpectrumRow<F> {
    pub fn from_level(level: &Level<F>) -> Self {
        let parts = level.sigma_parts();
        Self {
            n: level.index().0,
            omega: level.omega(),
            k: level.k(),
            energy: level.energy(),
            p: parts.p(),
            q: parts.q(),
            alpha: parts.alpha(),
            r: parts.r(),
            g: level.g(),
            branch: level.branch(),
        }
    }
}

/// Energy trajectories over a `T` grid against both reference levels.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport<F> {
    pub t_values: Vec<F>,
    pub rows: Vec<LimitRow<F>>,
}

/// One `(T, N)` entry of a [`LimitReport`]; deviations are signed,
/// `E_N(T) - reference`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow<F> {
    pub t: F,
    pub n: u32,
    pub energy: F,
    pub hermitian_ref: F,
    pub hermitian_dev: F,
    pub weak_ref: F,
    pub weak_dev: F,
}

/// Whether the level's energy obeys the corridor `(N+1/2)²/4 ≤ E ≤ (N+1)²/4`
/// (closed bounds; interior roots satisfy them strictly).
pub fn bounds_check<F: Real>(level: &Level<F>) -> bool {
    let e = level.energy();
    weak_limit_level::<F>(level.index()) <= e && e <= hermitian_limit_level::<F>(level.index())
}

/// `(N+1)²/4`: level `N` of the infinitely deep Hermitian square well on
/// `(-π, π)`, the deep-well limit of the spectrum.
pub fn hermitian_limit_level<F: Real>(index: LevelIndex) -> F {
    let np1 = F::of_usize(index.0 as usize + 1);
    np1 * np1 / F::lit(4.0)
}

/// `(N+1/2)²/4`: the lower corridor end, approached as `T → 0`.
pub fn weak_limit_level<F: Real>(index: LevelIndex) -> F {
    let nph = F::of_usize(index.0 as usize) + F::lit(0.5);
    nph * nph / F::lit(4.0)
}

/// Coupling regime of a solved level, by its `R = k²/T²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `R ≥ 10`: shallow well / high excitation; tails resemble free waves.
    Weak,
    /// `R ≤ 0.01`: deep well; the spectrum hugs the Hermitian levels.
    Strong,
    Intermediate,
}

/// Diagnostic record of the asymptotic estimates for one solved level.
///
/// In the weak regime `p ≈ q/(2R)` and `q ≈ k`; in the strong regime the
/// slope parameter becomes strongly branch-dependent, `|G⁺| ≪ |G⁻|`. The
/// regime checks are reported as flags (`None` outside their regime), not
/// enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticReport<F> {
    pub n: u32,
    pub r: F,
    pub regime: Regime,
    pub p: F,
    pub q: F,
    pub k: F,
    /// Weak-coupling estimate of `p`.
    pub q_over_2r: F,
    pub q_minus_k_abs: F,
    pub g_plus: F,
    pub g_minus: F,
    /// Weak regime: `|p - q/(2R)|/p ≤ 0.1` and `|q - k|/k ≤ 0.1`.
    pub weak_estimates_ok: Option<bool>,
    /// Strong regime: `|G⁺| < 0.05·|G⁻|`.
    pub strong_split_ok: Option<bool>,
}

pub fn asymptotic_orders<F: Real>(
    spec: &WellSpec<F>,
    index: LevelIndex,
    tol: F,
) -> Result<AsymptoticReport<F>> {
    let level = solve_level(spec, index, tol)?;
    let parts = level.sigma_parts();
    let r = parts.r();
    let (p, q, k) = (parts.p(), parts.q(), parts.k());
    let q_over_2r = q / (F::lit(2.0) * r);
    let g_plus = g_value(parts, Branch::Plus);
    let g_minus = g_value(parts, Branch::Minus);
    let regime = if r >= F::lit(10.0) {
        Regime::Weak
    } else if r <= F::lit(0.01) {
        Regime::Strong
    } else {
        Regime::Intermediate
    };
    let weak_estimates_ok = (regime == Regime::Weak).then(|| {
        (p - q_over_2r).abs() / p <= F::lit(0.1) && (q - k).abs() / k <= F::lit(0.1)
    });
    let strong_split_ok =
        (regime == Regime::Strong).then(|| g_plus.abs() < F::lit(0.05) * g_minus.abs());
    Ok(AsymptoticReport {
        n: index.0,
        r,
        regime,
        p,
        q,
        k,
        q_over_2r,
        q_minus_k_abs: (q - k).abs(),
        g_plus,
        g_minus,
        weak_estimates_ok,
        strong_split_ok,
    })
}

/// Solves levels `N = 0..count-1` and assembles their rows. Any solver
/// failure aborts with the failing level's error.
pub fn spectrum_table<F: Real>(
    spec: &WellSpec<F>,
    count: usize,
    tol: F,
) -> Result<Vec<SpectrumRow<F>>> {
    (0..count)
        .map(|n| Ok(SpectrumRow::from_level(&solve_level(spec, LevelIndex(n as u32), tol)?)))
        .collect()
}

/// Energy trajectories `E_N(T)` over a `T` grid with both reference levels
/// and signed deviations.
pub fn limit_report<F: Real>(
    t_values: &[F],
    levels: usize,
    tol: F,
) -> Result<LimitReport<F>> {
    let mut rows = Vec::with_capacity(t_values.len() * levels);
    for &t in t_values {
        let spec = WellSpec::new(t)?;
        for n in 0..levels {
            let index = LevelIndex(n as u32);
            let level = solve_level(&spec, index, tol)?;
            let hermitian_ref = hermitian_limit_level::<F>(index);
            let weak_ref = weak_limit_level::<F>(index);
            rows.push(LimitRow {
                t,
                n: n as u32,
                energy: level.energy(),
                hermitian_ref,
                hermitian_dev: level.energy() - hermitian_ref,
                weak_ref,
                weak_dev: level.energy() - weak_ref,
            });
        }
    }
    Ok(LimitReport {
        t_values: t_values.to_vec(),
        rows,
    })
}
