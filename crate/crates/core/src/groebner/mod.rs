//! Gröbner bases and the ideal algebra built on them.

mod buchberger;
mod graded;
mod modular;
mod ops;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, Term};

pub(crate) use buchberger::Reducer;
#[cfg(test)]
use graded::monomials_of_degree;
pub use ops::intersect_all;

/// A reduced Gröbner basis for a fixed monomial order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Computes the reduced Gröbner basis of the ideal generated by `gens`.
    pub fn compute(ring: &Arc<Ring>, gens: &[Polynomial], order: MonomialOrder) -> Result<Self> {
        for g in gens {
            Ring::check_same(ring, g.ring())?;
        }
        Ok(GroebnerBasis {
            ring: ring.clone(),
            order,
            elements: buchberger::groebner(gens, order),
        })
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Elements sorted by ascending leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| *g.leading_monomial().expect("basis elements are nonzero"))
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ring::check_same(&self.ring, f.ring())?;
        Ok(Reducer::new(&self.elements).normal_form(&f.with_order(self.order)))
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Buchberger certificate: every S-polynomial reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let red = Reducer::new(&self.elements);
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                let s = buchberger::s_polynomial(&self.elements[i], &self.elements[j]);
                if !red.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Leading coefficients are one and no term of any element is divisible
    /// by another element's leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.elements.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(|c| c.is_one())
                && g.terms()
                    .iter()
                    .all(|t| lms.iter().enumerate().all(|(j, l)| j == i || !l.divides(&t.monomial)))
        })
    }
}

/// An ideal of a polynomial ring, given by generators.
///
/// Ideals are immutable; Gröbner bases are cached per monomial order behind
/// a mutex so shared references can be used from several threads.
pub struct Ideal {
    ring: Arc<Ring>,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    gb_cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            order: self.order,
            generators: self.generators.clone(),
            gb_cache: Mutex::new(self.gb_cache.lock().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Ideal {
    /// Ideal generated by `gens`. Zero generators are dropped; at least one
    /// nonzero generator is required.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            Ring::check_same(ring, g.ring())?;
        }
        let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let order = gens[0].order();
        Ok(Self::from_parts(ring, order, gens))
    }

    fn from_parts(ring: &Arc<Ring>, order: MonomialOrder, gens: Vec<Polynomial>) -> Self {
        let mut seen: HashSet<Vec<Term>> = HashSet::new();
        let generators = gens
            .into_iter()
            .map(|g| g.with_order(order))
            .filter(|g| seen.insert(g.terms().to_vec()))
            .collect();
        Ideal {
            ring: ring.clone(),
            order,
            generators,
            gb_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Builds an ideal from computed generators, which may all be zero.
    pub(crate) fn from_computed(ring: &Arc<Ring>, order: MonomialOrder, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Self::from_parts(ring, order, gens)
    }

    /// Ideal generated by a known reduced Gröbner basis under `order`,
    /// sorted by ascending leading monomial.
    pub(crate) fn from_basis(ring: &Arc<Ring>, order: MonomialOrder, elements: Vec<Polynomial>) -> Self {
        let out = Self::from_parts(ring, order, elements.clone());
        let gb = GroebnerBasis {
            ring: ring.clone(),
            order,
            elements,
        };
        out.gb_cache.lock().expect("cache lock").insert(order, Arc::new(gb));
        out
    }

    pub(crate) fn zero(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        Self::from_parts(ring, order, Vec::new())
    }

    pub fn unit(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        Self::from_parts(ring, order, vec![Polynomial::one(ring, order)])
    }

    /// Ideal generated by monomials.
    pub fn from_monomials(ring: &Arc<Ring>, order: MonomialOrder, monos: &[Monomial]) -> Result<Self> {
        let gens = monos
            .iter()
            .map(|m| {
                if m.nvars() != ring.dim() {
                    Err(Error::DimensionMismatch {
                        expected: ring.dim(),
                        found: m.nvars(),
                    })
                } else {
                    Ok(Polynomial::monomial(ring, order, *m))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        Ok(Self::from_parts(ring, order, gens))
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        let gens = (0..ring.dim()).map(|i| Polynomial::variable(ring, order, i)).collect();
        Self::from_parts(ring, order, gens)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        let out = Self::from_parts(&self.ring, order, self.generators.clone());
        *out.gb_cache.lock().expect("cache lock") = self.gb_cache.lock().expect("cache lock").clone();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner_basis(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.gb_cache.lock().expect("cache lock").get(&order) {
            return gb.clone();
        }
        // computed outside the lock; a concurrent duplicate computation is harmless
        let gb = Arc::new(GroebnerBasis {
            ring: self.ring.clone(),
            order,
            elements: buchberger::groebner(&self.generators, order),
        });
        self.gb_cache
            .lock()
            .expect("cache lock")
            .entry(order)
            .or_insert(gb)
            .clone()
    }

    /// The basis under the ideal's own order, if already computed.
    pub(crate) fn cached_gb(&self) -> Option<Arc<GroebnerBasis>> {
        self.gb_cache.lock().expect("cache lock").get(&self.order).cloned()
    }

    /// Gröbner basis under the ideal's own order.
    pub fn gb(&self) -> Arc<GroebnerBasis> {
        self.groebner_basis(self.order)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.gb().normal_form(f)
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        Ring::check_same(&self.ring, &other.ring)?;
        let gb = self.gb();
        for g in &other.generators {
            if !gb.reduces_to_zero(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `other ⊆ self`, by linear algebra in each degree when both are
    /// generated by forms and no Gröbner basis of `self` is cached yet.
    pub fn contains_graded(&self, other: &Ideal) -> Result<bool> {
        Ring::check_same(&self.ring, &other.ring)?;
        if self.cached_gb().is_none() {
            if let Some(ans) = graded::span_contains(&self.ring, &self.generators, &other.generators) {
                return Ok(ans);
            }
        }
        self.contains(other)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// Canonical generators: the reduced Gröbner basis under the ideal's
    /// order, listed by descending leading monomial.
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        let mut v = self.gb().elements().to_vec();
        v.reverse();
        v
    }

    /// Same ideal generated by its reduced Gröbner basis.
    pub fn canonical(&self) -> Ideal {
        let gb = self.gb();
        let out = Self::from_parts(&self.ring, self.order, self.canonical_generators());
        out.gb_cache.lock().expect("cache lock").insert(self.order, gb);
        out
    }

    /// True when the reduced Gröbner basis consists of monomials.
    pub fn is_monomial(&self) -> bool {
        self.gb().elements().iter().all(|g| g.is_monomial())
    }

    /// Leading monomials of the reduced basis when the ideal is monomial.
    pub fn monomial_generators(&self) -> Result<Vec<Monomial>> {
        if !self.is_monomial() {
            return Err(Error::NotMonomial);
        }
        Ok(self.gb().leading_monomials())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }
}

impl PartialEq for Ideal {
    /// Ideal equality (mutual containment). Ideals of different rings are unequal.
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}
