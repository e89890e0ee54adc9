use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Coeff, Field, Monomial, MonomialOrder, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub monomial: Monomial,
}

/// A polynomial in canonical form: terms strictly descending under `order`,
/// no zero coefficients, no repeated monomials.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    order: MonomialOrder,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        Polynomial {
            ring: ring.clone(),
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, order: MonomialOrder, c: Coeff) -> Self {
        Self::term(ring, order, c, Monomial::one(ring.dim()))
    }

    pub fn one(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        Self::constant(ring, order, ring.field().one())
    }

    pub fn variable(ring: &Arc<Ring>, order: MonomialOrder, index: usize) -> Self {
        Self::term(ring, order, ring.field().one(), Monomial::variable(ring.dim(), index))
    }

    pub fn term(ring: &Arc<Ring>, order: MonomialOrder, coeff: Coeff, monomial: Monomial) -> Self {
        debug_assert_eq!(monomial.nvars(), ring.dim());
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff, monomial }]
        };
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn monomial(ring: &Arc<Ring>, order: MonomialOrder, monomial: Monomial) -> Self {
        Self::term(ring, order, ring.field().one(), monomial)
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges repeated
    /// monomials and drops zeros.
    pub fn from_terms(
        ring: &Arc<Ring>,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Coeff, Monomial)>,
    ) -> Result<Self> {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (c, m) in terms {
            if m.nvars() != ring.dim() {
                return Err(Error::DimensionMismatch {
                    expected: ring.dim(),
                    found: m.nvars(),
                });
            }
            if !field.contains(&c) {
                return Err(Error::RingMismatch);
            }
            match acc.get_mut(&m) {
                Some(existing) => *existing = field.add(existing, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(Self::from_map(ring, order, acc))
    }

    fn from_map(ring: &Arc<Ring>, order: MonomialOrder, acc: HashMap<Monomial, Coeff>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        terms.sort_unstable_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| order.cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).max()
    }

    /// A single term (any nonzero coefficient).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.monomial.degree();
                self.terms.iter().all(|s| s.monomial.degree() == d)
            }
        }
    }

    /// Same polynomial with terms re-sorted under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_unstable_by(|a, b| order.cmp(&b.monomial, &a.monomial));
        Polynomial {
            ring: self.ring.clone(),
            order,
            terms,
        }
    }

    fn aligned<'a>(&self, other: &'a Polynomial) -> std::borrow::Cow<'a, Polynomial> {
        assert!(
            Ring::same(&self.ring, &other.ring),
            "polynomials belong to different rings"
        );
        if other.order == self.order {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.with_order(self.order))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        Ring::check_same(&self.ring, &other.ring)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        Ring::check_same(&self.ring, &other.ring)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        Ring::check_same(&self.ring, &other.ring)?;
        Ok(self * other)
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let other = self.aligned(other);
        let field = self.field();
        let ord = self.order;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let take_b = |t: &Term| Term {
            coeff: if negate_other {
                field.neg(&t.coeff)
            } else {
                t.coeff.clone()
            },
            monomial: t.monomial,
        };
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].monomial, &b[j].monomial) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(take_b(&b[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            monomial: a[i].monomial,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(take_b));
        Polynomial::from_sorted_terms(&self.ring, ord, out)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring, self.order);
        }
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.mul(&t.coeff, c),
                monomial: t.monomial,
            })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, self.order, terms)
    }

    /// `c * m * self`; term order is preserved since orders are multiplicative.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring, self.order);
        }
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.mul(&t.coeff, c),
                monomial: t.monomial.mul(m),
            })
            .collect();
        Polynomial::from_sorted_terms(&self.ring, self.order, terms)
    }

    pub fn power(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring, self.order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&self.field().inv(lc)),
            _ => self.clone(),
        }
    }

    /// `self / divisor` when the division is exact.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let divisor = self.aligned(divisor);
        let (dlm, dlc) = {
            let t = divisor.leading_term()?;
            (t.monomial, t.coeff.clone())
        };
        let field = self.field();
        let inv = field.inv(&dlc);
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(lt) = rem.leading_term() {
            let m = lt.monomial.div(&dlm)?;
            let c = field.mul(&lt.coeff, &inv);
            rem = &rem - &divisor.mul_term(&c, &m);
            quotient.push((c, m));
        }
        Some(Polynomial::from_terms(&self.ring, self.order, quotient).expect("quotient terms belong to the ring"))
    }

    /// Evaluates at a point given as field elements.
    pub fn evaluate(&self, point: &[Coeff]) -> Coeff {
        let field = self.field();
        let mut acc = field.zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.monomial.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = field.mul(&v, &point[i]);
                }
            }
            acc = field.add(&acc, &v);
        }
        acc
    }

    /// Moves the polynomial into `ring`, whose variables are this ring's
    /// variables preceded by `count` new ones.
    pub(crate) fn embed(&self, ring: &Arc<Ring>, count: usize, order: MonomialOrder) -> Polynomial {
        let terms = self.terms.iter().map(|t| (t.coeff.clone(), t.monomial.embed(count)));
        Polynomial::from_terms(ring, order, terms).expect("embedding preserves validity")
    }

    /// Inverse of [`embed`]: drops the first `count` variables, which must not occur.
    pub(crate) fn project(&self, ring: &Arc<Ring>, count: usize, order: MonomialOrder) -> Polynomial {
        let terms = self.terms.iter().map(|t| (t.coeff.clone(), t.monomial.project(count)));
        Polynomial::from_terms(ring, order, terms).expect("projection preserves validity")
    }

    /// True when none of the first `k` variables occurs.
    pub(crate) fn free_of_first(&self, k: usize) -> bool {
        self.terms
            .iter()
            .all(|t| t.monomial.exponents()[..k].iter().all(|&e| e == 0))
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !Ring::same(&self.ring, &other.ring) {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.with_order(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

impl<'a> Add<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.field().from_i64(-1))
    }
}

impl<'a> Mul<&'a Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let rhs = self.aligned(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring, self.order);
        }
        if self.len() == 1 {
            let t = &self.terms[0];
            return rhs.mul_term(&t.coeff, &t.monomial);
        }
        if rhs.len() == 1 {
            let t = &rhs.terms[0];
            return self.mul_term(&t.coeff, &t.monomial);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.len() * rhs.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let m = a.monomial.mul(&b.monomial);
                let c = field.mul(&a.coeff, &b.coeff);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ring, self.order, acc)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form, e.g. `x^2*y - 3/2*y^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (i, t) in self.terms.iter().enumerate() {
            let (neg, num, den) = t.coeff.signed_parts(self.field());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = num == 1.into() && den == 1.into();
            if t.monomial.is_one() {
                write!(f, "{num}")?;
                if den != 1.into() {
                    write!(f, "/{den}")?;
                }
            } else {
                if !unit {
                    write!(f, "{num}")?;
                    if den != 1.into() {
                        write!(f, "/{den}")?;
                    }
                    write!(f, "*")?;
                }
                write!(f, "{}", t.monomial.display_with(names))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;
    use proptest::prelude::*;

    fn qq2() -> Arc<Ring> {
        Ring::new(&["x", "y"], Field::Rationals).unwrap()
    }

    fn p(ring: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(s, ring, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn add_examples() {
        let r = qq2();
        assert_eq!(&p(&r, "x+y") + &p(&r, "x-y"), p(&r, "2*x"));
        let f = p(&r, "x^2 - 3*y");
        assert_eq!(&f + &Polynomial::zero(&r, MonomialOrder::Grevlex), f);
        assert_eq!(&p(&r, "x^2+x*y") + &p(&r, "-x*y"), p(&r, "x^2"));
    }

    #[test]
    fn mul_and_power_examples() {
        let r = qq2();
        assert_eq!(&p(&r, "x+y") * &p(&r, "x-y"), p(&r, "x^2-y^2"));
        let f = p(&r, "3/2*x*y - 7");
        assert_eq!(&f * &Polynomial::one(&r, MonomialOrder::Grevlex), f);
        assert_eq!(&p(&r, "x+y") * &p(&r, "x+y"), p(&r, "x^2+2*x*y+y^2"));
        assert_eq!(p(&r, "x+y").power(0), p(&r, "1"));
        assert_eq!(p(&r, "x").power(3), p(&r, "x^3"));
        assert_eq!(p(&r, "x+y").power(3), p(&r, "x^3+3*x^2*y+3*x*y^2+y^3"));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = qq2();
        let b = Ring::new(&["x", "y"], Field::Prime(7)).unwrap();
        assert_eq!(p(&a, "x").try_add(&p(&b, "x")), Err(Error::RingMismatch));
        assert_eq!(p(&a, "x").try_mul(&p(&b, "x")), Err(Error::RingMismatch));
    }

    #[test]
    fn canonical_text() {
        let r = qq2();
        assert_eq!(p(&r, "-3/2*y^3 + y*x^2").to_string(), "x^2*y - 3/2*y^3");
        assert_eq!(p(&r, "0").to_string(), "0");
        assert_eq!(p(&r, "-1 - x").to_string(), "-x - 1");
        let f7 = Ring::new(&["x", "y"], Field::Prime(7)).unwrap();
        assert_eq!(p(&f7, "x - 1/2").to_string(), "x + 3");
    }

    #[test]
    fn exact_division() {
        let r = qq2();
        let f = p(&r, "x^3 - y^3");
        assert_eq!(f.exact_div(&p(&r, "x - y")), Some(p(&r, "x^2 + x*y + y^2")));
        assert_eq!(f.exact_div(&p(&r, "x + y")), None);
        assert_eq!(p(&r, "x*y^2").exact_div(&p(&r, "y")), Some(p(&r, "x*y")));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-5i64..=5, 0u32..4, 0u32..4, 0u32..3), 0..5).prop_map(|ts| {
            let r = Ring::new(&["x", "y", "z"], Field::Rationals).unwrap();
            let field = r.field();
            Polynomial::from_terms(
                &r,
                MonomialOrder::Grevlex,
                ts.into_iter()
                    .map(|(c, a, b, e)| (field.from_i64(c), Monomial::new(&[a, b, e]).unwrap())),
            )
            .unwrap()
        })
    }

    fn same_ring(f: &Polynomial, g: &Polynomial) -> Polynomial {
        // proptest builds a fresh ring per value; rebase `g` onto `f`'s ring
        Polynomial::from_terms(
            f.ring(),
            f.order(),
            g.terms().iter().map(|t| (t.coeff.clone(), t.monomial)),
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_axioms(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let g = same_ring(&f, &g);
            let h = same_ring(&f, &h);
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f - &f).is_zero());
        }

        #[test]
        fn text_round_trip(f in arb_poly()) {
            let text = f.to_string();
            let back = parse_polynomial(&text, f.ring(), f.order()).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
