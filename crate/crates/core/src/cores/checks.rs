//! Checks of the identities the core satisfies.

use std::sync::Arc;

use super::{core_colon, core_polyhedral, core_sandwich, CoreOptions, CoreResult, SamplingMode};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::newton::{is_integrally_closed, monomial_core, MonomialIdeal};
use crate::poly::{MonomialOrder, Ring};

/// Both sides of `core(I^n) = I^{(n-1)h}·core(I)`.
#[derive(Debug, Clone)]
pub struct PowerCoreCheck {
    pub lhs: Ideal,
    pub rhs: Ideal,
    pub holds: bool,
}

/// Compares `core(I^n)` with `I^{(n-1)h}·core(I)`, both by the polyhedral
/// route, for a normal cofinite monomial `I` and `n >= 2`.
pub fn verify_core_power(i: &Ideal, h: Option<usize>, n: u32) -> Result<PowerCoreCheck> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("the power must be at least 2, got {n}")));
    }
    let mono = MonomialIdeal::from_ideal(i)?;
    let h = h.map_or(mono.dim() as u32, |h| h as u32);
    let lhs = monomial_core(&mono.power(n), Some(h), false)?.core;
    let core = monomial_core(&mono, Some(h), false)?.core;
    let rhs = mono.power((n - 1) * h).product(&core)?;
    let holds = lhs == rhs;
    Ok(PowerCoreCheck {
        lhs: lhs.to_ideal(i.order()).canonical(),
        rhs: rhs.to_ideal(i.order()).canonical(),
        holds,
    })
}

/// The core found by the colon and polyhedral routes, which agree, and
/// whether it is integrally closed.
#[derive(Debug, Clone)]
pub struct IcCoreCheck {
    pub core: Ideal,
    pub integrally_closed: bool,
}

/// Computes the core of an integrally closed normal cofinite monomial ideal
/// by both routes, requires them to agree on a monomial ideal, and checks
/// that it is integrally closed.
pub fn verify_core_integrally_closed(i: &Ideal, h: Option<usize>, opts: &CoreOptions) -> Result<IcCoreCheck> {
    let mono = MonomialIdeal::from_ideal(i)?;
    if !is_integrally_closed(&mono)? {
        return Err(Error::NotIntegrallyClosed);
    }
    let polyhedral = core_polyhedral(i, h, false)?;
    let colon = core_colon(i, None, h, opts)?;
    if !colon.ideal.equals(&polyhedral.ideal)? {
        return Err(Error::RouteDisagreement(format!(
            "colon core ({}) differs from polyhedral core ({})",
            colon.ideal, polyhedral.ideal
        )));
    }
    if !colon.ideal.is_monomial() {
        return Err(Error::RouteDisagreement(format!(
            "colon core ({}) is not a monomial ideal",
            colon.ideal
        )));
    }
    let core = MonomialIdeal::from_ideal(&colon.ideal)?;
    Ok(IcCoreCheck {
        integrally_closed: is_integrally_closed(&core)?,
        core: colon.ideal,
    })
}

/// Predicted and computed cores of a power of the maximal ideal.
#[derive(Debug, Clone)]
pub struct GradedCoreReport {
    /// `m^{(n-1)d+1}`.
    pub predicted: Ideal,
    /// The colon core of `m^n`.
    pub computed: CoreResult,
    pub matches: bool,
    /// Intersection of reductions sampled from forms of degree `n`.
    pub graded_upper: CoreResult,
    pub graded_matches: bool,
}

/// `core(m^n) = m^{(n-1)d+1}` in `k[x_1, ..., x_d]` for `2 <= d <= 4`: the
/// colon core is compared with the prediction, and the intersection of
/// homogeneous reductions is compared as an upper bound.
pub fn graded_core_maximal(ring: &Arc<Ring>, n: u32, opts: &CoreOptions) -> Result<GradedCoreReport> {
    let d = ring.dim();
    if !(2..=4).contains(&d) {
        return Err(Error::OutOfRange(format!("need 2 to 4 variables, ring has {d}")));
    }
    if n == 0 {
        return Err(Error::OutOfRange("the power must be positive".into()));
    }
    let ord = MonomialOrder::Grevlex;
    let m = Ideal::maximal(ring, ord);
    let i = m.power(n)?;
    let predicted = m.power((n - 1) * d as u32 + 1)?.canonical();
    let computed = core_colon(&i, None, None, opts)?;
    let matches = computed.ideal.equals(&predicted)?;
    let graded_opts = CoreOptions {
        mode: SamplingMode::Graded,
        ..opts.clone()
    };
    let graded_upper = core_sandwich(&i, None, &graded_opts)?;
    let graded_matches = graded_upper.ideal.equals(&predicted)?;
    Ok(GradedCoreReport {
        predicted,
        computed,
        matches,
        graded_upper,
        graded_matches,
    })
}
