use std::sync::Arc;

use super::{MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};

/// Checks the polarization identity
///
/// `t! X_1...X_t = sum_{k=1..t} sum_{i_1<...<i_k} (-1)^(t-k) (X_{i_1}+...+X_{i_k})^t`
///
/// by expanding both sides in the first `t` variables of `ring`. This is
/// the identity that makes t-th powers of elements of an ideal generate its
/// t-th power in characteristic zero.
pub fn verify_power_identity(ring: &Arc<Ring>, t: usize) -> Result<bool> {
    if t == 0 {
        return Err(Error::OutOfRange("t must be at least 1".into()));
    }
    if ring.dim() < t {
        return Err(Error::TooFewVariables {
            needed: t,
            available: ring.dim(),
        });
    }
    let ord = MonomialOrder::Grevlex;
    let field = ring.field();
    let vars: Vec<Polynomial> = (0..t).map(|i| Polynomial::variable(ring, ord, i)).collect();

    let factorial: i64 = (1..=t as i64).product();
    let lhs = vars
        .iter()
        .fold(Polynomial::one(ring, ord), |acc, v| &acc * v)
        .scale(&field.from_i64(factorial));

    let mut rhs = Polynomial::zero(ring, ord);
    for subset in 1u32..(1 << t) {
        let k = subset.count_ones() as usize;
        let sum = (0..t)
            .filter(|i| subset & (1 << i) != 0)
            .fold(Polynomial::zero(ring, ord), |acc, i| &acc + &vars[i]);
        let term = sum.power(t as u32);
        rhs = if (t - k).is_multiple_of(2) {
            &rhs + &term
        } else {
            &rhs - &term
        };
    }
    Ok(lhs == rhs)
}
