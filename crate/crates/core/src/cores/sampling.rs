//! Seeded random reductions and reduction numbers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CoreOptions, SamplingMode};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Field, Polynomial};

/// Samples drawn per reduction before giving up.
pub const MAX_RESAMPLES: u32 = 10;

/// One step of the split-mix 64-bit generator.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the `index`-th task of `stream` under the parent `seed`. Tasks
/// with distinct `(stream, index)` get unrelated seeds.
pub fn child_seed(seed: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(stream)).wrapping_add(index))
}

pub(crate) mod streams {
    pub const COLON: u64 = 1;
    pub const SANDWICH: u64 = 2;
    pub const ATTEMPT: u64 = 3;
}

/// A verified reduction `J ⊆ I` with its reduction number.
#[derive(Debug, Clone)]
pub struct ReductionCertificate {
    pub base_ideal: Ideal,
    pub reduction: Ideal,
    /// Least `r` with `I^{r+1} = J·I^r` (locally at the origin).
    pub reduction_number: u32,
    pub seed: u64,
    pub coeff_bound: u64,
    /// Samples drawn, counting the successful one.
    pub attempts: u32,
    pub mode: SamplingMode,
}

impl ReductionCertificate {
    /// The contraction of `J` from the local ring at the origin.
    ///
    /// For forms this is `J`. Otherwise, for cofinite `I`, it is
    /// `J + I^{r+1}`: locally `J ⊇ J·I^r = I^{r+1}`, and two ideals primary
    /// to the maximal ideal that agree locally are equal.
    pub fn local_reduction(&self) -> Result<Ideal> {
        let (i, j) = (&self.base_ideal, &self.reduction);
        if graded_pair(i, j) || !i.is_cofinite() {
            return Ok(j.clone());
        }
        j.sum(&i.power(self.reduction_number + 1)?)
    }
}

/// Uniform in `[-bound, bound] \ {0}`.
fn coefficient(rng: &mut ChaCha8Rng, bound: u64) -> i64 {
    let k = rng.gen_range(1..=bound) as i64;
    if rng.gen_bool(0.5) {
        -k
    } else {
        k
    }
}

/// The pool each reduction generator combines: the generators of `I`. In
/// graded mode these must be forms of a single degree, so that every
/// sampled reduction is generated by forms.
fn pool(ideal: &Ideal, mode: SamplingMode) -> Result<Vec<Polynomial>> {
    let gens = ideal.generators().to_vec();
    if mode == SamplingMode::Graded {
        let mut degrees = gens.iter().map(|g| g.is_homogeneous().then(|| g.degree()).flatten());
        let first = degrees.next().flatten();
        if first.is_none() || degrees.any(|d| d != first) {
            return Err(Error::OutOfRange(
                "graded sampling needs generators that are forms of one degree".into(),
            ));
        }
    }
    Ok(gens)
}

/// Default number of reduction generators: `d` for cofinite ideals; other
/// ideals need the caller to supply the analytic spread.
pub(crate) fn default_h(ideal: &Ideal, h: Option<usize>) -> Result<usize> {
    match h {
        Some(0) => Err(Error::OutOfRange("h must be positive".into())),
        Some(h) => Ok(h),
        None if ideal.is_cofinite() => Ok(ideal.ring().dim()),
        None => Err(Error::OutOfRange(
            "h must be given for ideals that are not cofinite".into(),
        )),
    }
}

/// `h` random combinations of the generators of `I`, resampled until they
/// generate a reduction.
pub fn random_reduction(
    ideal: &Ideal,
    h: Option<usize>,
    seed: u64,
    opts: &CoreOptions,
) -> Result<ReductionCertificate> {
    let h = default_h(ideal, h)?;
    let bound = opts.coeff_bound;
    if bound == 0 {
        return Err(Error::OutOfRange("coefficient bound must be positive".into()));
    }
    if let Field::Prime(p) = ideal.ring().field() {
        if p <= bound {
            return Err(Error::FieldTooSmall {
                characteristic: p,
                bound,
            });
        }
    }
    if ideal.is_zero() {
        return Err(Error::EmptyIdeal);
    }
    let ring = ideal.ring();
    let field = ring.field();
    let pool = pool(ideal, opts.mode)?;
    for attempt in 0..MAX_RESAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(child_seed(seed, streams::ATTEMPT, attempt as u64));
        let gens: Vec<Polynomial> = (0..h)
            .map(|_| {
                pool.iter().fold(Polynomial::zero(ring, ideal.order()), |acc, g| {
                    &acc + &g.scale(&field.from_i64(coefficient(&mut rng, bound)))
                })
            })
            .collect();
        if gens.iter().all(|g| g.is_zero()) {
            continue;
        }
        let j = Ideal::new(ring, gens)?;
        if let Some(r) = is_reduction(ideal, &j, opts.r_max)? {
            return Ok(ReductionCertificate {
                base_ideal: ideal.clone(),
                reduction: j,
                reduction_number: r,
                seed,
                coeff_bound: bound,
                attempts: attempt + 1,
                mode: opts.mode,
            });
        }
    }
    Err(Error::ReductionNotFound {
        attempts: MAX_RESAMPLES,
    })
}

/// Both ideals are generated by forms, so equalities of ideals hold
/// globally iff they hold at the origin.
pub(crate) fn graded_pair(i: &Ideal, j: &Ideal) -> bool {
    i.is_homogeneous() && j.is_homogeneous()
}

/// Least `r <= r_max` with `I^{r+1} = J·I^r` in the local ring at the
/// origin, or `None`.
///
/// For forms this is the global equation. Otherwise it is tested as
/// `I^{r+1} ⊆ J·I^r + m·I^{r+1}`, equivalent by Nakayama's lemma.
pub fn is_reduction(i: &Ideal, j: &Ideal, r_max: u32) -> Result<Option<u32>> {
    if !i.contains(j)? {
        return Err(Error::NotContained);
    }
    let graded = graded_pair(i, j);
    let m = Ideal::maximal(i.ring(), i.order());
    let mut power = Ideal::unit(i.ring(), i.order());
    for r in 0..=r_max {
        let next = power.product(i)?;
        let mut target = j.product(&power)?;
        if !graded {
            target = target.sum(&m.product(&next)?)?;
        }
        if target.contains_graded(&next)? {
            return Ok(Some(r));
        }
        power = next;
    }
    Ok(None)
}
