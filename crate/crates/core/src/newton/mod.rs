//! Newton polyhedra of monomial ideals and the lattice-point descriptions
//! of integral closure and adjoint (multiplier) ideals they give.
//!
//! For a monomial ideal `I` generated by `x^{A_1}, ..., x^{A_r}`, the Newton
//! polyhedron is `NP(I) = conv{A_i} + R^d_{>=0}`. A monomial `x^B` lies in
//! the integral closure of `I` iff `B ∈ NP(I)`, and in the adjoint of `I^c`
//! iff `B + (1, ..., 1)` lies in the interior of `c·NP(I)`. Scaling by `c`
//! is done on facet offsets, so `NP(I^c)` is never built.

mod adjoint;
mod polyhedron;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Ring};
use crate::Ideal;

pub use adjoint::{
    integral_closure, is_integrally_closed, is_normal, monomial_core, multiplier_ideal, MonomialCore, Normality,
};
pub use polyhedron::{newton_polyhedron, np_contains, Facet, NewtonPolyhedron, MAX_NEWTON_DIM};

/// A nonzero monomial ideal, stored by its minimal generators.
///
/// Exponent vectors are pairwise incomparable under divisibility and kept
/// in descending lexicographic order, so equal ideals compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    exponents: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Ideal generated by `x^e` for each `e` in `exponents`; non-minimal
    /// generators are discarded.
    pub fn new(ring: &Arc<Ring>, exponents: Vec<Vec<u32>>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for e in &exponents {
            if e.len() != ring.dim() {
                return Err(Error::DimensionMismatch {
                    expected: ring.dim(),
                    found: e.len(),
                });
            }
        }
        Ok(MonomialIdeal {
            ring: ring.clone(),
            exponents: minimalize(exponents),
        })
    }

    /// The monomial ideal equal to `ideal`, which must be generated by
    /// monomials.
    pub fn from_ideal(ideal: &Ideal) -> Result<Self> {
        let gens = ideal.monomial_generators()?;
        Self::new(ideal.ring(), gens.iter().map(|m| m.exponents().to_vec()).collect())
    }

    pub fn to_ideal(&self, order: MonomialOrder) -> Ideal {
        let monos: Vec<Monomial> = self.exponents.iter().map(|e| Monomial::from_slice(e)).collect();
        Ideal::from_monomials(&self.ring, order, &monos).expect("nonempty and dimension-checked")
    }

    /// `(x_1, ..., x_d)`.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        let d = ring.dim();
        let exps = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                e
            })
            .collect();
        MonomialIdeal {
            ring: ring.clone(),
            exponents: minimalize(exps),
        }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            exponents: vec![vec![0; ring.dim()]],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.len() == 1 && self.exponents[0].iter().all(|&e| e == 0)
    }

    /// Contains a pure power of every variable.
    pub fn is_cofinite(&self) -> bool {
        (0..self.dim()).all(|i| {
            self.exponents
                .iter()
                .any(|e| e.iter().enumerate().all(|(j, &x)| j == i || x == 0))
        })
    }

    /// Component-wise maximum of the generator exponents.
    pub fn max_exponents(&self) -> Vec<u32> {
        (0..self.dim())
            .map(|i| self.exponents.iter().map(|e| e[i]).max().unwrap_or(0))
            .collect()
    }

    /// `x^point ∈ I`.
    pub fn contains_point(&self, point: &[u32]) -> bool {
        self.exponents.iter().any(|e| e.iter().zip(point).all(|(a, b)| a <= b))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.exponents.iter().all(|e| self.contains_point(e))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        Ring::check_same(&self.ring, &other.ring)?;
        let mut out = Vec::with_capacity(self.exponents.len() * other.exponents.len());
        for a in &self.exponents {
            for b in &other.exponents {
                out.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Ok(MonomialIdeal {
            ring: self.ring.clone(),
            exponents: minimalize(out),
        })
    }

    pub fn power(&self, k: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.var_names();
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|e| Monomial::from_slice(e).display_with(names).to_string())
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Minimal elements under the component-wise order, in descending
/// lexicographic order.
fn minimalize(mut exps: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    // a divisor has strictly smaller degree than anything it properly divides
    exps.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    exps.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for e in exps {
        if !kept.iter().any(|k| k.iter().zip(&e).all(|(a, b)| a <= b)) {
            kept.push(e);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}
