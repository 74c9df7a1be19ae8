//! Domain types and the exact algebraic parametrization of the well.
//!
//! A single positive parameter `T` fixes the potential step `±iT²`. For a
//! bound state with momentum `k` (energy `E = k²`) the outer tails decay
//! like `exp(-σ|x|)` with `σ² = iT² - k²`. Splitting `σ = p + iq` gives the
//! two rules
//!
//! ```text
//! p² + k² = q²,        2 p q = T²,
//! ```
//!
//! which are resolved by a single angle `α ∈ (0, π/2)`:
//!
//! ```text
//! p = q cos α,   k = q sin α,   q = T / sqrt(2 cos α).
//! ```
//!
//! The root variable used everywhere else is `ω = 2α/π ∈ (0, 1)`; the
//! quantization conditions collapse to `k = (2N + 2 - ω)/4` for level `N`.

use crate::{Complex, Error, Real, Result};

/// The single physical parameter of the well.
///
/// `T > 0` has units of energy^(1/2); the imaginary potential magnitude is
/// `T²` (units `ħ = 2m = 1`, well half-width `π`). `T = 0` is rejected —
/// the Hermitian free limit is only ever used as an analytic limit in
/// [`crate::analysis`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec<F> {
    t: F,
}

impl<F: Real> WellSpec<F> {
    pub fn new(t: F) -> Result<Self> {
        if !(t > F::zero()) || !t.is_finite() {
            return Err(Error::Domain {
                what: "T",
                value: t.to_f64().unwrap_or(f64::NAN),
                requirement: "T > 0 and finite",
            });
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> F {
        self.t
    }

    /// Magnitude `T²` of the imaginary potential step.
    pub fn t_squared(&self) -> F {
        self.t * self.t
    }
}

/// Quantization branch: the two root families of the quadratic in `tan kπ`,
/// merged into even/odd level indices. The branch traces the slightly
/// broken spatial parity of the state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Even levels `N = 2n`; spatially even-dominated states.
    Plus,
    /// Odd levels `N = 2m + 1`; spatially odd-dominated states.
    Minus,
}

impl Branch {
    pub fn symbol(self) -> char {
        match self {
            Branch::Plus => '+',
            Branch::Minus => '-',
        }
    }
}

/// Level index `N = 0, 1, 2, ...` with its derived branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct LevelIndex(pub u32);

impl LevelIndex {
    pub fn branch(self) -> Branch {
        if self.0.is_multiple_of(2) {
            Branch::Plus
        } else {
            Branch::Minus
        }
    }

    /// Sub-family index: `n` with `N = 2n` on the even branch, `m` with
    /// `N = 2m + 1` on the odd branch.
    pub fn family_index(self) -> u32 {
        self.0 / 2
    }
}

/// The `(α, p, q, k, σ, R)` bundle tying the decay constant to the momentum.
///
/// `R = k²/T²` is the dimensionless combination controlling the coupling
/// regime (`R ≪ 1` deep well, `R ≫ 1` shallow well / high excitation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaParts<F> {
    alpha: F,
    p: F,
    q: F,
    k: F,
    sigma: Complex<F>,
    r: F,
}

impl<F: Real> SigmaParts<F> {
    pub fn alpha(&self) -> F {
        self.alpha
    }

    /// `Re σ`: decay rate of the outer tails.
    pub fn p(&self) -> F {
        self.p
    }

    /// `Im σ`: outgoing-wave phase of the outer tails.
    pub fn q(&self) -> F {
        self.q
    }

    /// Momentum `q sin α` implied by the parametrization.
    pub fn k(&self) -> F {
        self.k
    }

    pub fn sigma(&self) -> Complex<F> {
        self.sigma
    }

    /// `R = k²/T²`.
    pub fn r(&self) -> F {
        self.r
    }
}

/// Decay-constant parametrization at angle `α ∈ (0, π/2)`.
///
/// The singular endpoint `α = π/2` (where `q → ∞`) is excluded by an open
/// domain check rather than clamping; roots always satisfy `ω < 1` strictly
/// so callers never legitimately reach it.
pub fn sigma_from_alpha<F: Real>(spec: &WellSpec<F>, alpha: F) -> Result<SigmaParts<F>> {
    if !(alpha > F::zero() && alpha < F::FRAC_PI_2()) {
        return Err(Error::Domain {
            what: "alpha",
            value: alpha.to_f64().unwrap_or(f64::NAN),
            requirement: "0 < alpha < pi/2",
        });
    }
    let (sin_a, cos_a) = alpha.sin_cos();
    let q = spec.t() / (F::lit(2.0) * cos_a).sqrt();
    let p = q * cos_a;
    let k = q * sin_a;
    Ok(SigmaParts {
        alpha,
        p,
        q,
        k,
        sigma: Complex::new(p, q),
        r: (k / spec.t()).powi(2),
    })
}

/// Momentum from the root variable: `k = (2N + 2 - ω)/4`.
///
/// Closed endpoints `ω ∈ [0, 1]` are allowed for limit evaluation. On the
/// even branch this is `n + 1/2 - ω/4`, on the odd branch `m + 1 - ω/4`.
pub fn k_from_omega<F: Real>(index: LevelIndex, omega: F) -> Result<F> {
    if !(omega >= F::zero() && omega <= F::one()) {
        return Err(Error::Domain {
            what: "omega",
            value: omega.to_f64().unwrap_or(f64::NAN),
            requirement: "0 <= omega <= 1",
        });
    }
    let two_n_plus_2 = F::of_usize(2 * index.0 as usize + 2);
    Ok((two_n_plus_2 - omega) / F::lit(4.0))
}

/// `α = πω/2`, the angle corresponding to a root variable `ω ∈ (0, 1)`.
pub fn alpha_from_omega<F: Real>(omega: F) -> Result<F> {
    if !(omega > F::zero() && omega < F::one()) {
        return Err(Error::Domain {
            what: "omega",
            value: omega.to_f64().unwrap_or(f64::NAN),
            requirement: "0 < omega < 1",
        });
    }
    Ok(F::FRAC_PI_2() * omega)
}

/// Inverse of [`alpha_from_omega`]: `ω = 2α/π`.
pub fn omega_from_alpha<F: Real>(alpha: F) -> F {
    alpha / F::FRAC_PI_2()
}

/// A solved bound state.
///
/// `k = (2N + 2 - ω)/4` and `E = k²` hold exactly by construction; with the
/// root strictly interior to `(0, 1)` the energy obeys the strict bounds
/// `(N + 1/2)²/4 < E < (N + 1)²/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level<F> {
    index: LevelIndex,
    omega: F,
    k: F,
    energy: F,
    parts: SigmaParts<F>,
    g: F,
}

impl<F: Real> Level<F> {
    /// Assembles a level from a secular root. Does not itself certify
    /// convergence; [`Level::secular_defect`] exposes the residual scale so
    /// consumers can.
    pub(crate) fn from_root(spec: &WellSpec<F>, index: LevelIndex, omega: F) -> Result<Self> {
        let k = k_from_omega(index, omega)?;
        let alpha = alpha_from_omega(omega)?;
        let parts = sigma_from_alpha(spec, alpha)?;
        let g = crate::wavefunc::g_value(&parts, index.branch());
        Ok(Self {
            index,
            omega,
            k,
            energy: k * k,
            parts,
            g,
        })
    }

    pub fn index(&self) -> LevelIndex {
        self.index
    }

    pub fn branch(&self) -> Branch {
        self.index.branch()
    }

    pub fn omega(&self) -> F {
        self.omega
    }

    /// Quantization momentum `(2N + 2 - ω)/4`.
    pub fn k(&self) -> F {
        self.k
    }

    pub fn energy(&self) -> F {
        self.energy
    }

    pub fn sigma_parts(&self) -> &SigmaParts<F> {
        &self.parts
    }

    /// Wave-function slope parameter `G` of this level's branch (negative).
    pub fn g(&self) -> F {
        self.g
    }

    /// Mismatch `|k_σ - k| / q` between the parametrized momentum `q sin α`
    /// and the quantization momentum. This equals `|F_N(ω)|`, the secular
    /// residual, so it vanishes exactly at a root.
    pub fn secular_defect(&self) -> F {
        ((self.parts.k() - self.k) / self.parts.q()).abs()
    }
}
