use std::collections::HashSet;

use super::{buchberger, graded, Ideal};
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, Term};

/// Monic, de-duplicated generators; monomials divisible by another monomial
/// generator are dropped.
fn tidy(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen: HashSet<Vec<Term>> = HashSet::new();
    let gens: Vec<Polynomial> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .filter(|g| seen.insert(g.terms().to_vec()))
        .collect();
    let monos: Vec<(usize, Monomial)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| g.is_monomial())
        .map(|(i, g)| (i, *g.leading_monomial().unwrap()))
        .collect();
    gens.iter()
        .enumerate()
        .filter(|(i, g)| {
            !g.is_monomial() || {
                let m = g.leading_monomial().unwrap();
                !monos.iter().any(|(j, n)| j != i && n.divides(m) && n != m)
            }
        })
        .map(|(_, g)| g.clone())
        .collect()
}

impl Ideal {
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        Ring::check_same(&self.ring, &other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Ideal::from_computed(&self.ring, self.order, gens))
    }

    /// Ideal generated by all pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        Ring::check_same(&self.ring, &other.ring)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f * g);
            }
        }
        Ok(Ideal::from_computed(&self.ring, self.order, tidy(gens)))
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        if k == 0 {
            return Ok(Ideal::unit(&self.ring, self.order));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `self ∩ other`. Homogeneous ideals with finite-dimensional quotients
    /// are intersected degree by degree; everything else goes through the
    /// tag variable.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        Ring::check_same(&self.ring, &other.ring)?;
        if self.is_homogeneous() && other.is_homogeneous() && !self.is_zero() && !other.is_zero() {
            let one = Polynomial::one(&self.ring, self.order);
            if let Some(out) = graded::solve(&self.ring, self.order, &[(self, &one), (other, &one)]) {
                return Ok(out);
            }
        }
        self.intersection_by_tag(other)
    }

    /// `self ∩ other` by eliminating a tag variable `t` from
    /// `t * self + (1 - t) * other`.
    pub(crate) fn intersection_by_tag(&self, other: &Ideal) -> Result<Ideal> {
        Ring::check_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring, self.order));
        }
        let tagged = self.ring.with_tag();
        let ord = MonomialOrder::Block(1);
        let t = Polynomial::variable(&tagged, ord, 0);
        let one_minus_t = &Polynomial::one(&tagged, ord) - &t;
        // reduced bases make the pairs inside each block reduce to zero quickly
        let (gb_a, gb_b) = (self.gb(), other.gb());
        let mut gens = Vec::new();
        for f in gb_a.elements() {
            gens.push(&t * &f.embed(&tagged, 1, ord));
        }
        for g in gb_b.elements() {
            gens.push(&one_minus_t * &g.embed(&tagged, 1, ord));
        }
        let basis = buchberger::groebner(&gens, ord);
        let out: Vec<Polynomial> = basis
            .iter()
            .filter(|g| g.free_of_first(1))
            .map(|g| g.project(&self.ring, 1, self.order))
            .collect();
        Ok(Ideal::from_computed(&self.ring, self.order, out))
    }

    /// `self : (g)`.
    pub fn colon_element(&self, g: &Polynomial) -> Result<Ideal> {
        Ring::check_same(&self.ring, g.ring())?;
        if g.is_zero() {
            return Ok(Ideal::unit(&self.ring, self.order));
        }
        // the graded route needs no membership test, which would cost a basis
        if let Some(out) = self.graded_colon(std::slice::from_ref(g)) {
            return Ok(out);
        }
        if self.member(g)? {
            return Ok(Ideal::unit(&self.ring, self.order));
        }
        self.colon_element_by_tag(g)
    }

    /// `self : (g)`, as `(self ∩ (g)) / g`.
    pub(crate) fn colon_element_by_tag(&self, g: &Polynomial) -> Result<Ideal> {
        let principal = Ideal::from_parts(&self.ring, self.order, vec![g.clone()]);
        let meet = self.intersection_by_tag(&principal)?;
        let mut gens = Vec::with_capacity(meet.generators.len());
        for h in &meet.generators {
            match h.exact_div(g) {
                Some(q) => gens.push(q),
                None => {
                    return Err(Error::Internal(format!(
                        "intersection generator {h} is not divisible by {g}"
                    )))
                }
            }
        }
        Ok(Ideal::from_computed(&self.ring, self.order, gens))
    }

    /// Degree-by-degree colon for a homogeneous cofinite `self`.
    fn graded_colon(&self, gens: &[Polynomial]) -> Option<Ideal> {
        if !self.is_homogeneous() || self.is_zero() {
            return None;
        }
        let conditions: Vec<(&Ideal, &Polynomial)> = gens.iter().map(|g| (self, g)).collect();
        graded::solve(&self.ring, self.order, &conditions)
    }

    /// `self : other`. For homogeneous cofinite `self` and homogeneous
    /// `other` it is solved degree by degree; otherwise as `∩_g (self : g)`
    /// over the generators `g` of `other`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        Ring::check_same(&self.ring, &other.ring)?;
        if other.is_zero() {
            return Ok(Ideal::unit(&self.ring, self.order));
        }
        if let Some(out) = self.graded_colon(&other.generators) {
            return Ok(out);
        }
        let mut pending = Vec::new();
        for g in &other.generators {
            if !self.member(g)? {
                pending.push(g.clone());
            }
        }
        if pending.is_empty() {
            return Ok(Ideal::unit(&self.ring, self.order));
        }
        self.colon_by_tag_parts(&pending)
    }

    /// `∩_g (self : g)` with every part through the tag variable.
    #[cfg(test)]
    pub(crate) fn colon_by_tag(&self, other: &Ideal) -> Result<Ideal> {
        let mut pending = Vec::new();
        for g in &other.generators {
            if !self.member(g)? {
                pending.push(g.clone());
            }
        }
        if pending.is_empty() {
            return Ok(Ideal::unit(&self.ring, self.order));
        }
        self.colon_by_tag_parts(&pending)
    }

    fn colon_by_tag_parts(&self, gens: &[Polynomial]) -> Result<Ideal> {
        let mut parts = Vec::new();
        for g in gens {
            parts.push(self.colon_element_by_tag(g)?);
        }
        if parts.is_empty() {
            return Ok(Ideal::unit(&self.ring, self.order));
        }
        intersect_all(parts)
    }

    /// `self ∩ k[x_{k+1}, ..., x_d]`, as an ideal of the smaller ring.
    pub fn eliminate(&self, k: usize) -> Result<Ideal> {
        let d = self.ring.dim();
        if k == 0 || k >= d {
            return Err(Error::OutOfRange(format!(
                "can eliminate between 1 and {} variables, got {k}",
                d - 1
            )));
        }
        let sub = self.ring.without_first(k);
        let gb = self.groebner_basis(MonomialOrder::Block(k));
        let gens: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|g| g.free_of_first(k))
            .map(|g| g.project(&sub, k, self.order))
            .collect();
        Ok(Ideal::from_computed(&sub, self.order, gens))
    }

    /// Krull dimension of the quotient ring, from the initial ideal: the
    /// largest set of variables containing the support of no leading
    /// monomial. The unit ideal has dimension -1.
    pub fn krull_dimension(&self) -> i32 {
        let gb = self.gb();
        if gb.is_unit() {
            return -1;
        }
        let supports: Vec<u32> = gb.leading_monomials().iter().map(|m| m.support()).collect();
        let d = self.ring.dim();
        (0u32..(1 << d))
            .filter(|set| supports.iter().all(|s| s & !set != 0))
            .map(|set| set.count_ones() as i32)
            .max()
            .unwrap_or(0)
    }

    /// The quotient ring is finite-dimensional: the initial ideal contains
    /// a pure power of every variable.
    pub fn is_cofinite(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    /// For each variable, the smallest `e` with `x_i^e` a leading monomial.
    fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let gb = self.gb();
        let d = self.ring.dim();
        if gb.is_unit() {
            return Some(vec![0; d]);
        }
        let lms = gb.leading_monomials();
        (0..d)
            .map(|i| {
                lms.iter()
                    .filter(|m| m.support() == 1 << i)
                    .map(|m| m.exponent(i))
                    .min()
            })
            .collect()
    }

    /// Standard monomials (a vector-space basis of the quotient ring), in
    /// ascending order.
    pub fn quotient_basis(&self) -> Result<Vec<Monomial>> {
        let bounds = self.pure_power_bounds().ok_or(Error::NotCofinite)?;
        let lms = self.gb().leading_monomials();
        let d = self.ring.dim();
        let mut out = Vec::new();
        let mut exps = vec![0u32; d];
        fn walk(i: usize, exps: &mut Vec<u32>, bounds: &[u32], lms: &[Monomial], out: &mut Vec<Monomial>) {
            if i == exps.len() {
                let m = Monomial::from_slice(exps);
                if !lms.iter().any(|l| l.divides(&m)) {
                    out.push(m);
                }
                return;
            }
            for e in 0..bounds[i] {
                exps[i] = e;
                walk(i + 1, exps, bounds, lms, out);
            }
            exps[i] = 0;
        }
        walk(0, &mut exps, &bounds, &lms, &mut out);
        let ord = self.order;
        out.sort_by(|a, b| ord.cmp(a, b));
        Ok(out)
    }
}

/// Intersection of several ideals, combined pairwise as a balanced tree.
pub fn intersect_all(mut ideals: Vec<Ideal>) -> Result<Ideal> {
    if ideals.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let first = &ideals[0];
    if ideals.len() > 1 && ideals.iter().all(|q| q.is_homogeneous() && !q.is_zero()) {
        for q in &ideals[1..] {
            Ring::check_same(&first.ring, &q.ring)?;
        }
        // one pass over all conditions avoids the coefficient growth of
        // intermediate intersections
        let one = Polynomial::one(&first.ring, first.order);
        let conditions: Vec<(&Ideal, &Polynomial)> = ideals.iter().map(|q| (q, &one)).collect();
        if let Some(out) = graded::solve(&first.ring, first.order, &conditions) {
            return Ok(out);
        }
    }
    while ideals.len() > 1 {
        let mut next = Vec::with_capacity(ideals.len().div_ceil(2));
        let mut it = ideals.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.intersection(&b)?),
                None => next.push(a),
            }
        }
        ideals = next;
    }
    Ok(ideals.pop().expect("one ideal left"))
}
