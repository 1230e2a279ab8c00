//! Existence window, volume, singular length and the two-bridge covering
//! identity for spherical torus-link cone-manifolds `T(p,q)(alpha)`.
//!
//! Everything is expressed through the excess angle
//!
//! ```text
//! X = alpha/2 - pi*(1 - 1/p - 1/q)
//! ```
//!
//! with `Vol = (pq/2) X^2`, `dVol/dalpha = (pq/2) X` and per-component
//! length `lcm(p,q) X`. The formulas are generic over the coefficient field;
//! with [`crate::Rational`] they are exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Grade, PiScalar};
use crate::scalar::Coefficient;
use crate::torus_link::{TorusLinkParams, MAX_PARAM};
use crate::{ExactScalar, Rational};

/// Whether a formula may be evaluated outside the asserted window.
///
/// `Forced` is analytic continuation of polynomials in alpha. It is used for
/// identity checks and boundary limits and never carries geometric meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluation {
    Strict,
    Forced,
}

/// Open interval of cone angles, both endpoints grade 1.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleInterval<T> {
    lower: PiScalar<T>,
    upper: PiScalar<T>,
}

impl<T: Coefficient> AngleInterval<T> {
    pub fn lower(&self) -> &PiScalar<T> {
        &self.lower
    }

    pub fn upper(&self) -> &PiScalar<T> {
        &self.upper
    }

    pub fn width(&self) -> PiScalar<T> {
        self.upper
            .try_sub(&self.lower)
            .expect("both endpoints are grade 1")
    }

    /// True when the raw lower bound is not positive, so the positivity
    /// clamp on cone angles shrinks the usable window.
    pub fn positivity_clamped(&self) -> bool {
        !self.lower.coeff().is_positive()
    }

    /// `max(lower, 0)`: the left end of the window of admissible cone angles.
    pub fn effective_lower(&self) -> PiScalar<T> {
        if self.positivity_clamped() {
            PiScalar::zero(Grade::One)
        } else {
            self.lower.clone()
        }
    }

    /// Strict membership in the raw interval.
    pub fn contains(&self, alpha: &PiScalar<T>) -> Result<bool> {
        alpha.expect_grade(Grade::One)?;
        Ok(self.lower.try_lt(alpha)? && alpha.try_lt(&self.upper)?)
    }
}

impl<T: Coefficient> fmt::Display for AngleInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

fn uint<T: Coefficient>(n: u64) -> T {
    T::from_u64(n).expect("u64 fits every coefficient type")
}

/// `1 - 1/p - 1/q`.
fn deficit<T: Coefficient>(p: u64, q: u64) -> T {
    T::one() - T::from_ratio(1, p) - T::from_ratio(1, q)
}

/// The spherical window `2pi(1 - 1/p - 1/q) < alpha < 2pi(1 - 1/p + 1/q)`.
pub fn existence_interval<T: Coefficient>(params: &TorusLinkParams) -> AngleInterval<T> {
    let (p, q) = (params.p(), params.q());
    let two = T::from_int(2);
    let inv_p = T::from_ratio(1, p);
    let inv_q = T::from_ratio(1, q);
    let lower = two.clone() * (T::one() - inv_p.clone() - inv_q.clone());
    let upper = two * (T::one() - inv_p + inv_q);
    AngleInterval {
        lower: PiScalar::angle(lower),
        upper: PiScalar::angle(upper),
    }
}

/// Whether the cone-manifold is asserted spherical at `alpha`: strictly
/// inside the window and `alpha > 0`.
///
/// Outside the window nothing is claimed either way.
pub fn admits_spherical<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
) -> Result<bool> {
    let window = existence_interval::<T>(params);
    Ok(window.contains(alpha)? && alpha.coeff().is_positive())
}

/// Excess angle `X = alpha/2 - pi(1 - 1/p - 1/q)` for unnormalized `(p, q)`.
pub fn excess_raw<T: Coefficient>(p: u64, q: u64, alpha: &PiScalar<T>) -> Result<PiScalar<T>> {
    alpha.expect_grade(Grade::One)?;
    let half = alpha.scale(&T::from_ratio(1, 2));
    half.try_sub(&PiScalar::angle(deficit(p, q)))
}

pub fn excess<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
) -> Result<PiScalar<T>> {
    excess_raw(params.p(), params.q(), alpha)
}

/// `(pq/2) X^2` for unnormalized `(p, q)`, with no window check.
pub fn volume_formula<T: Coefficient>(p: u64, q: u64, alpha: &PiScalar<T>) -> Result<PiScalar<T>> {
    let x = excess_raw(p, q, alpha)?;
    Ok(x.square()?
        .scale(&(uint::<T>(p) * uint::<T>(q) / T::from_int(2))))
}

fn require_window<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
    eval: Evaluation,
) -> Result<()> {
    alpha.expect_grade(Grade::One)?;
    if eval == Evaluation::Forced || admits_spherical(params, alpha)? {
        return Ok(());
    }
    let window = existence_interval::<T>(params);
    Err(Error::NotAsserted {
        alpha: alpha.to_string(),
        window: format!("({}, {})", window.effective_lower(), window.upper()),
    })
}

/// Volume of `T(p,q)(alpha)`, grade 2.
pub fn volume<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
    eval: Evaluation,
) -> Result<PiScalar<T>> {
    require_window(params, alpha, eval)?;
    volume_formula(params.p(), params.q(), alpha)
}

/// Exact `d Vol / d alpha = (pq/2) X`, grade 1.
pub fn volume_derivative<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
    eval: Evaluation,
) -> Result<PiScalar<T>> {
    require_window(params, alpha, eval)?;
    let x = excess(params, alpha)?;
    Ok(x.scale(&(uint::<T>(params.p()) * uint::<T>(params.q()) / T::from_int(2))))
}

/// Length of one singular component, `lcm(p,q) X`. All `gcd(p,q)`
/// components have this length.
pub fn strand_length<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
    eval: Evaluation,
) -> Result<PiScalar<T>> {
    require_window(params, alpha, eval)?;
    Ok(excess(params, alpha)?.scale(&uint(params.lcm())))
}

/// Total singular length, `components * strand_length`.
pub fn total_length<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
    eval: Evaluation,
) -> Result<PiScalar<T>> {
    Ok(strand_length(params, alpha, eval)?.scale(&uint(params.components())))
}

/// Volume of the two-bridge link cone-manifold `T(2,2p)(alpha, beta)`:
/// `(1/2p) ((alpha + beta)/2 * p - pi(p - 1))^2`.
pub fn two_bridge_volume<T: Coefficient>(
    p: i64,
    alpha: &PiScalar<T>,
    beta: &PiScalar<T>,
) -> Result<PiScalar<T>> {
    if p < 1 {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
        });
    }
    if p as u64 > MAX_PARAM {
        return Err(Error::ParameterTooLarge {
            name: "p",
            value: p,
            max: MAX_PARAM,
        });
    }
    alpha.expect_grade(Grade::One)?;
    beta.expect_grade(Grade::One)?;
    let p_t = T::from_int(p);
    let mean = alpha.try_add(beta)?.scale(&T::from_ratio(1, 2));
    let inner = mean
        .scale(&p_t)
        .try_sub(&PiScalar::angle(T::from_int(p - 1)))?;
    Ok(inner.square()?.scale(&T::from_ratio(1, 2 * p as u64)))
}

/// `Vol T(p,q)(alpha) - q * Vol T(2,2p)(alpha, 2pi/q)`.
///
/// `T(p,q)(alpha)` is a q-fold cyclic cover of `T(2,2p)(alpha, 2pi/q)`
/// branched over the central component, so this is identically zero. Both
/// sides are evaluated by continuation, so it is defined for every alpha.
pub fn covering_residual<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
) -> Result<PiScalar<T>> {
    let q = params.q();
    let cover = volume(params, alpha, Evaluation::Forced)?;
    let beta = PiScalar::angle(T::from_ratio(2, q));
    let base = two_bridge_volume(params.p() as i64, alpha, &beta)?;
    cover.try_sub(&base.scale(&uint(q)))
}

/// `dVol/dalpha - (components/2) * length`; zero under the spherical
/// Schlafli formula `dV = 1/2 sum l_i d(theta_i)`.
pub fn schlafli_residual<T: Coefficient>(
    params: &TorusLinkParams,
    alpha: &PiScalar<T>,
) -> Result<PiScalar<T>> {
    let dv = volume_derivative(params, alpha, Evaluation::Forced)?;
    let len = strand_length(params, alpha, Evaluation::Forced)?;
    dv.try_sub(&len.scale(&T::from_ratio(params.components() as i64, 2)))
}

/// Floating mirrors of every exact field of an [`InvariantReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct FloatMirror {
    pub alpha: f64,
    pub lower: f64,
    pub upper: f64,
    pub volume: Option<f64>,
    pub volume_derivative: Option<f64>,
    pub length_per_component: Option<f64>,
    pub length_total: Option<f64>,
    pub covering_residual: f64,
}

/// All invariants of one `(p, q, alpha)` query, exact with float mirrors.
///
/// Volume and lengths are present when alpha is in the asserted window, or
/// when the caller forced evaluation, in which case `forced` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub params: TorusLinkParams,
    pub alpha: ExactScalar,
    pub interval: AngleInterval<Rational>,
    pub asserted_spherical: bool,
    pub forced: bool,
    pub positivity_clamp: bool,
    pub volume: Option<ExactScalar>,
    pub volume_derivative: Option<ExactScalar>,
    pub length_per_component: Option<ExactScalar>,
    pub length_total: Option<ExactScalar>,
    pub covering_residual: ExactScalar,
    pub floats: FloatMirror,
}

impl InvariantReport {
    pub fn evaluate(params: &TorusLinkParams, alpha: &ExactScalar, force: bool) -> Result<Self> {
        alpha.expect_grade(Grade::One)?;
        let interval = existence_interval::<Rational>(params);
        let asserted = admits_spherical(params, alpha)?;
        let present = asserted || force;

        let (volume, derivative, length, total) = if present {
            let eval = Evaluation::Forced;
            (
                Some(volume(params, alpha, eval)?),
                Some(volume_derivative(params, alpha, eval)?),
                Some(strand_length(params, alpha, eval)?),
                Some(total_length(params, alpha, eval)?),
            )
        } else {
            (None, None, None, None)
        };
        let residual = covering_residual(params, alpha)?;

        let opt = |x: &Option<ExactScalar>| x.as_ref().map(|v| v.to_float()).transpose();
        let floats = FloatMirror {
            alpha: alpha.to_float()?,
            lower: interval.lower().to_float()?,
            upper: interval.upper().to_float()?,
            volume: opt(&volume)?,
            volume_derivative: opt(&derivative)?,
            length_per_component: opt(&length)?,
            length_total: opt(&total)?,
            covering_residual: residual.to_float()?,
        };

        Ok(InvariantReport {
            params: *params,
            alpha: alpha.clone(),
            positivity_clamp: interval.positivity_clamped(),
            interval,
            asserted_spherical: asserted,
            forced: present && !asserted,
            volume,
            volume_derivative: derivative,
            length_per_component: length,
            length_total: total,
            covering_residual: residual,
            floats,
        })
    }
}
