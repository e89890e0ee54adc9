//! Exact sparse multivariate polynomials over the rationals and prime fields.

mod coeff;
mod identity;
mod monomial;
pub mod parse;
mod polynomial;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use coeff::{is_prime, Coeff, Field, MAX_PRIME};
pub use identity::verify_power_identity;
pub use monomial::{compare, Monomial, MonomialOrder, MAX_VARS};
pub use polynomial::{Polynomial, Term};

use crate::error::{Error, Result};

/// Largest number of variables a user ring may have.
pub const MAX_USER_VARS: usize = 8;

/// A polynomial ring `field[vars]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: Field,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], field: Field) -> Result<Arc<Ring>> {
        if vars.len() > MAX_USER_VARS {
            return Err(Error::DimensionBound {
                max: MAX_USER_VARS,
                found: vars.len(),
            });
        }
        Self::build(vars.iter().map(|v| v.as_ref().to_string()).collect(), field)
    }

    fn build(vars: Vec<String>, field: Field) -> Result<Arc<Ring>> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("ring needs at least one variable".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::DimensionBound {
                max: MAX_VARS,
                found: vars.len(),
            });
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    /// `QQ[x_1, ..., x_d]` with default variable names (`x, y, z, w` up to
    /// four variables, `x1..xd` beyond).
    pub fn standard(d: usize, field: Field) -> Result<Arc<Ring>> {
        let names: Vec<String> = if d <= 4 {
            ["x", "y", "z", "w"][..d].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=d).map(|i| format!("x{i}")).collect()
        };
        Ring::new(&names, field)
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with one extra leading tag variable, used for intersections.
    pub(crate) fn with_tag(&self) -> Arc<Ring> {
        let mut tag = String::from("_t");
        while self.vars.contains(&tag) {
            tag.push('_');
        }
        let mut vars = vec![tag];
        vars.extend(self.vars.iter().cloned());
        Ring::build(vars, self.field).expect("tagged ring within bounds")
    }

    /// The ring with the first `k` variables removed.
    pub(crate) fn without_first(&self, k: usize) -> Arc<Ring> {
        Ring::build(self.vars[k..].to_vec(), self.field).expect("subring is valid")
    }

    pub(crate) fn same(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }

    pub(crate) fn check_same(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
        if Ring::same(a, b) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}
