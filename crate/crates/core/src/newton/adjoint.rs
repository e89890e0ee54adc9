use super::polyhedron::{newton_polyhedron, NewtonPolyhedron};
use super::{minimalize, MonomialIdeal};
use crate::error::{Error, Result};

/// Minimal lattice points of the upward-closed set `inside` within the box
/// `[0, bounds]`. Every minimal point must lie in the box.
fn minimal_points(bounds: &[u32], inside: impl Fn(&[i64]) -> bool) -> Vec<Vec<u32>> {
    let d = bounds.len();
    let mut out = Vec::new();
    let mut b = vec![0u32; d];
    loop {
        let p: Vec<i64> = b.iter().map(|&x| x as i64).collect();
        if inside(&p) {
            let minimal = (0..d).all(|i| {
                p[i] == 0 || {
                    let mut q = p.clone();
                    q[i] -= 1;
                    !inside(&q)
                }
            });
            if minimal {
                out.push(b.clone());
            }
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            if b[i] < bounds[i] {
                b[i] += 1;
                break;
            }
            b[i] = 0;
            i += 1;
        }
    }
}

/// `{x^B : B ∈ NP(I)}`.
///
/// Minimal generators satisfy `B_i <= max_i`, the largest `i`-th exponent
/// of a generator: if `B ∈ NP(I)` with `B_i > max_i`, write `B >= q` for a
/// point `q` of the hull; then `q_i <= max_i < B_i`, so `B - e_i >= q` too.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let np = newton_polyhedron(ideal)?;
    let exps = minimal_points(&ideal.max_exponents(), |p| inside(&np, p, 1, false));
    Ok(MonomialIdeal {
        ring: ideal.ring.clone(),
        exponents: minimalize(exps),
    })
}

fn inside(np: &NewtonPolyhedron, p: &[i64], scale: u64, strict: bool) -> bool {
    np.facets().iter().all(|f| f.holds(p, scale, strict))
}

pub fn is_integrally_closed(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(integral_closure(ideal)? == *ideal)
}

/// Outcome of the bounded normality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normality {
    pub normal: bool,
    /// Smallest `k` with `I^k` not integrally closed.
    pub failing_power: Option<u32>,
    pub k_max: u32,
}

/// Checks that `I^k` is integrally closed for `k = 1..=k_max`; the default
/// bound is `max(d - 1, 2)`. In two variables integrally closed implies
/// normal; beyond that the bound is a heuristic.
pub fn is_normal(ideal: &MonomialIdeal, k_max: Option<u32>) -> Result<Normality> {
    let k_max = k_max.unwrap_or_else(|| (ideal.dim() as u32).saturating_sub(1).max(2));
    if k_max == 0 {
        return Err(Error::OutOfRange("normality bound must be positive".into()));
    }
    let mut power = ideal.clone();
    for k in 1..=k_max {
        if k > 1 {
            power = power.product(ideal)?;
        }
        if !is_integrally_closed(&power)? {
            return Ok(Normality {
                normal: false,
                failing_power: Some(k),
                k_max,
            });
        }
    }
    Ok(Normality {
        normal: true,
        failing_power: None,
        k_max,
    })
}

/// `adj(I^c) = {x^B : B + (1, ..., 1) in the interior of c·NP(I)}` for a
/// cofinite `I`.
///
/// Minimal generators satisfy `B_i <= c·a_i` where `x_i^{a_i} ∈ I`: past
/// that, lowering `B_i` keeps every facet with a nonzero `i`-th normal
/// entry strict and leaves the others unchanged.
pub fn multiplier_ideal(ideal: &MonomialIdeal, c: u32) -> Result<MonomialIdeal> {
    if c == 0 {
        return Err(Error::OutOfRange("the power must be positive".into()));
    }
    if !ideal.is_cofinite() {
        return Err(Error::NotCofinite);
    }
    let np = newton_polyhedron(ideal)?;
    let bounds: Vec<u32> = ideal.max_exponents().iter().map(|&m| m * c).collect();
    let exps = minimal_points(&bounds, |p| {
        let shifted: Vec<i64> = p.iter().map(|x| x + 1).collect();
        inside(&np, &shifted, c as u64, true)
    });
    Ok(MonomialIdeal {
        ring: ideal.ring.clone(),
        exponents: minimalize(exps),
    })
}

/// The polyhedral core of a cofinite monomial ideal together with the
/// Briançon–Skoda cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCore {
    /// `adj(I^h)`.
    pub core: MonomialIdeal,
    /// `I·adj(I^{h-1})`, with `adj(I^0) = (1)`.
    pub briancon_skoda: MonomialIdeal,
    pub h: u32,
    /// False when the normality check failed and the computation was forced.
    pub hypothesis_verified: bool,
    pub normality: Normality,
}

/// `core(I) = adj(I^h) = I·adj(I^{h-1})` for a normal cofinite monomial
/// ideal, `h` defaulting to the number of variables. Cofinite ideals have
/// analytic spread `d`, so other values of `h` give `adj(I^h)` only and the
/// equality check may fail for `h < d`.
pub fn monomial_core(ideal: &MonomialIdeal, h: Option<u32>, force: bool) -> Result<MonomialCore> {
    let h = h.unwrap_or(ideal.dim() as u32);
    if h == 0 {
        return Err(Error::OutOfRange("h must be positive".into()));
    }
    if !ideal.is_cofinite() {
        return Err(Error::NotCofinite);
    }
    let normality = is_normal(ideal, None)?;
    if let Some(k) = normality.failing_power {
        if !force {
            return Err(Error::NotNormal { failing_power: k });
        }
    }
    let core = multiplier_ideal(ideal, h)?;
    let lower = if h == 1 {
        MonomialIdeal::unit(&ideal.ring)
    } else {
        multiplier_ideal(ideal, h - 1)?
    };
    let briancon_skoda = ideal.product(&lower)?;
    if core != briancon_skoda {
        return Err(Error::VerificationFailed(format!(
            "adj(I^{h}) = ({core}) but I·adj(I^{}) = ({briancon_skoda})",
            h - 1
        )));
    }
    Ok(MonomialCore {
        core,
        briancon_skoda,
        h,
        hypothesis_verified: normality.normal,
        normality,
    })
}
