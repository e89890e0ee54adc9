use super::sampling::{default_h, graded_pair, streams};
use super::{
    child_seed, random_reduction, CoreOptions, ReductionCertificate, WARN_CALLER_HYPOTHESES, WARN_HEURISTIC,
    WARN_UNVERIFIED,
};
use crate::error::{Error, Result};
use crate::groebner::{intersect_all, Ideal};
use crate::newton::{monomial_core, MonomialIdeal, MAX_NEWTON_DIM};
use crate::poly::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Colon,
    Polyhedral,
    Sandwich,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Colon => "colon",
            Route::Polyhedral => "polyhedral",
            Route::Sandwich => "sandwich",
        }
    }
}

/// A core together with how it was obtained.
///
/// `exact` means the ideal is the core under the route's hypotheses: the
/// colon route is exact unless flagged heuristic, the polyhedral route when
/// normality was verified, and the sandwich route when its bounds agree.
#[derive(Debug, Clone)]
pub struct CoreResult {
    pub ideal: Ideal,
    pub route: Route,
    pub certificate: Option<ReductionCertificate>,
    pub lower_bound: Option<Ideal>,
    pub upper_bound: Option<Ideal>,
    pub exact: bool,
    /// Reductions intersected by the sandwich route.
    pub trials: Option<u32>,
    pub warnings: Vec<String>,
}

impl CoreResult {
    pub fn reduction_number(&self) -> Option<u32> {
        self.certificate.as_ref().map(|c| c.reduction_number)
    }
}

/// `J^{r+1} : I^r`, with `J^{r+1}` contracted from the local ring when `J`
/// is not generated by forms.
fn colon_core(cert: &ReductionCertificate) -> Result<Ideal> {
    let (i, j, r) = (&cert.base_ideal, &cert.reduction, cert.reduction_number);
    let mut num = j.power(r + 1)?;
    if !graded_pair(i, j) && i.is_cofinite() {
        // locally J^{r+1} ⊇ J^{r+1} I^r = I^{2r+1}, which is a unit elsewhere
        num = num.sum(&i.power(2 * r + 1)?)?;
    }
    Ok(num.colon(&i.power(r)?)?.canonical())
}

fn hypothesis_warnings(i: &Ideal, certs: &[&ReductionCertificate]) -> Vec<String> {
    let mut out = Vec::new();
    let r = certs.iter().map(|c| c.reduction_number).max().unwrap_or(0);
    if matches!(i.ring().field(), Field::Prime(_)) && r >= 2 {
        out.push(WARN_HEURISTIC.to_string());
    }
    if !i.is_cofinite() {
        out.push(WARN_CALLER_HYPOTHESES.to_string());
    }
    out
}

/// `core(I) = J^{r+1} : I^r`, computed for `cert` (or a sampled reduction)
/// and for a second independently sampled reduction; the two must agree.
pub fn core_colon(
    i: &Ideal,
    cert: Option<ReductionCertificate>,
    h: Option<usize>,
    opts: &CoreOptions,
) -> Result<CoreResult> {
    let first = match cert {
        Some(c) => {
            if !c.base_ideal.equals(i)? {
                return Err(Error::OutOfRange("certificate belongs to a different ideal".into()));
            }
            c
        }
        None => random_reduction(i, h, child_seed(opts.seed, streams::COLON, 0), opts)?,
    };
    // a supplied certificate fixes the number of generators
    let h = default_h(i, h).unwrap_or(first.reduction.generators().len());
    let second = random_reduction(i, Some(h), child_seed(opts.seed, streams::COLON, 1), opts)?;
    let a = colon_core(&first)?;
    let b = colon_core(&second)?;
    if !a.equals(&b)? {
        return Err(Error::IndependenceViolation(format!(
            "J = ({}) gives ({a}) but J = ({}) gives ({b})",
            first.reduction, second.reduction
        )));
    }
    let warnings = hypothesis_warnings(i, &[&first, &second]);
    Ok(CoreResult {
        ideal: a,
        route: Route::Colon,
        certificate: Some(first),
        lower_bound: None,
        upper_bound: None,
        exact: !warnings.iter().any(|w| w == WARN_HEURISTIC),
        trials: None,
        warnings,
    })
}

/// `core(I) = adj(I^h)` for a normal cofinite monomial ideal.
pub fn core_polyhedral(i: &Ideal, h: Option<usize>, force: bool) -> Result<CoreResult> {
    let mono = MonomialIdeal::from_ideal(i)?;
    let found = monomial_core(&mono, h.map(|h| h as u32), force)?;
    let mut warnings = Vec::new();
    if !found.hypothesis_verified {
        warnings.push(WARN_UNVERIFIED.to_string());
    }
    Ok(CoreResult {
        ideal: found.core.to_ideal(i.order()).canonical(),
        route: Route::Polyhedral,
        certificate: None,
        lower_bound: None,
        upper_bound: None,
        exact: found.hypothesis_verified,
        trials: None,
        warnings,
    })
}

/// Intersection of `opts.trials` sampled reductions, contracted from the
/// local ring, an upper bound for the core, against a lower bound: the polyhedral core for normal cofinite
/// monomial ideals, the colon core otherwise.
pub fn core_sandwich(i: &Ideal, h: Option<usize>, opts: &CoreOptions) -> Result<CoreResult> {
    if opts.trials == 0 {
        return Err(Error::OutOfRange("at least one trial is needed".into()));
    }
    let h = default_h(i, h)?;
    let certs = (0..opts.trials)
        .map(|t| random_reduction(i, Some(h), child_seed(opts.seed, streams::SANDWICH, t as u64), opts))
        .collect::<Result<Vec<_>>>()?;
    let local = certs.iter().map(|c| c.local_reduction()).collect::<Result<Vec<_>>>()?;
    let upper = intersect_all(local)?.canonical();

    let mut warnings = hypothesis_warnings(i, &certs.iter().collect::<Vec<_>>());
    let polyhedral = i.is_monomial() && i.is_cofinite() && i.ring().dim() <= MAX_NEWTON_DIM;
    let lower = if polyhedral {
        match core_polyhedral(i, Some(h), false) {
            Ok(res) => Some(res.ideal),
            Err(Error::NotNormal { .. }) => {
                warnings.push("no lower bound: the ideal is not normal".to_string());
                None
            }
            Err(e) => return Err(e),
        }
    } else {
        let res = core_colon(i, None, Some(h), opts)?;
        warnings.push("lower bound from the colon route".to_string());
        for w in res.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        Some(res.ideal)
    };
    if let Some(lo) = &lower {
        if !upper.contains(lo)? {
            return Err(Error::RouteDisagreement(format!(
                "lower bound ({lo}) is not contained in the intersection of reductions ({upper})"
            )));
        }
    }
    let exact = match &lower {
        Some(lo) => lo.equals(&upper)?,
        None => false,
    };
    Ok(CoreResult {
        ideal: upper.clone(),
        route: Route::Sandwich,
        certificate: certs.into_iter().next(),
        lower_bound: lower,
        upper_bound: Some(upper),
        exact,
        trials: Some(opts.trials),
        warnings,
    })
}

/// The coefficient ideal `a = core(I) : I` and the core it came from.
#[derive(Debug, Clone)]
pub struct CoefficientIdeal {
    pub ideal: Ideal,
    pub core: CoreResult,
}

/// `a = core(I) : I`, checked against `I·a = core(I)` and `I·a = J·a` for
/// the certificate's reduction `J`.
pub fn coefficient_ideal(
    i: &Ideal,
    cert: Option<ReductionCertificate>,
    h: Option<usize>,
    opts: &CoreOptions,
) -> Result<CoefficientIdeal> {
    let core = core_colon(i, cert, h, opts)?;
    let a = core.ideal.colon(i)?.canonical();
    let ia = i.product(&a)?;
    if !ia.equals(&core.ideal)? {
        return Err(Error::DefiningPropertyViolation(format!(
            "I·a = ({ia}) differs from core(I) = ({})",
            core.ideal
        )));
    }
    let j = &core
        .certificate
        .as_ref()
        .expect("colon route keeps its certificate")
        .reduction;
    let mut ja = j.product(&a)?;
    if !graded_pair(i, j) {
        // equality at the origin
        ja = ja.sum(&Ideal::maximal(i.ring(), i.order()).product(&ia)?)?;
    }
    if !ja.contains(&ia)? {
        return Err(Error::DefiningPropertyViolation(format!(
            "I·a = ({ia}) is not J·a for J = ({j})"
        )));
    }
    Ok(CoefficientIdeal { ideal: a, core })
}
