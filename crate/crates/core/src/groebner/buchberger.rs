//! Buchberger's algorithm with the Gebauer–Möller pair update (product and
//! chain criteria) and the normal selection strategy.
//!
//! The engine runs on an internal term representation that is generic over
//! the coefficient domain: residues mod p with monic basis elements, or
//! primitive integer polynomials with fraction-free reduction for the
//! rationals. Results are converted back to monic [`Polynomial`]s.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Coeff, Field, Monomial, MonomialOrder, Polynomial, Ring, Term};

/// Steps between content removals during a fraction-free reduction.
const CONTENT_INTERVAL: usize = 8;

// ---------------------------------------------------------------------------
// Field-based reducer for public normal forms.

/// `p - c * m * g`, where the leading terms are known to cancel.
fn sub_scaled_tail(p: &[Term], c: &Coeff, m: &Monomial, g: &[Term], field: Field, ord: MonomialOrder) -> Vec<Term> {
    let p = &p[1..];
    let g = &g[1..];
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() && j < g.len() {
        let gm = g[j].monomial.mul(m);
        match ord.cmp(&p[i].monomial, &gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: field.neg(&field.mul(c, &g[j].coeff)),
                    monomial: gm,
                });
                j += 1;
            }
            Ordering::Equal => {
                let v = field.sub(&p[i].coeff, &field.mul(c, &g[j].coeff));
                if !v.is_zero() {
                    out.push(Term { coeff: v, monomial: gm });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    for t in &g[j..] {
        out.push(Term {
            coeff: field.neg(&field.mul(c, &t.coeff)),
            monomial: t.monomial.mul(m),
        });
    }
    out
}

/// Reducer over a fixed list of monic divisors, with exact field arithmetic.
pub(crate) struct Reducer<'a> {
    divisors: Vec<&'a Polynomial>,
    lms: Vec<Monomial>,
    masks: Vec<u32>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(divisors: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let divisors: Vec<&Polynomial> = divisors.into_iter().filter(|g| !g.is_zero()).collect();
        debug_assert!(divisors.iter().all(|g| g.leading_coeff().unwrap().is_one()));
        let lms: Vec<Monomial> = divisors.iter().map(|g| *g.leading_monomial().unwrap()).collect();
        let masks = lms.iter().map(|m| m.support()).collect();
        Reducer { divisors, lms, masks }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support();
        (0..self.lms.len()).find(|&k| self.masks[k] & !mask == 0 && self.lms[k].divides(m))
    }

    /// Full normal form of `f` (every term reduced).
    pub(crate) fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ring: Arc<Ring> = f.ring().clone();
        let ord = f.order();
        let field = f.field();
        let mut p: Vec<Term> = f.terms().to_vec();
        let mut rem: Vec<Term> = Vec::new();
        let mut head = 0;
        while head < p.len() {
            let lt = &p[head];
            match self.find(&lt.monomial) {
                Some(k) => {
                    let g = self.divisors[k];
                    let m = lt.monomial.div(&self.lms[k]).expect("divisible");
                    let c = lt.coeff.clone();
                    p = sub_scaled_tail(&p[head..], &c, &m, g.terms(), field, ord);
                    head = 0;
                }
                None => {
                    rem.push(p[head].clone());
                    head += 1;
                }
            }
        }
        Polynomial::from_sorted_terms(&ring, ord, rem)
    }
}

/// S-polynomial of two monic polynomials.
pub(crate) fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().expect("nonzero");
    let lg = g.leading_monomial().expect("nonzero");
    let lcm = lf.lcm(lg);
    let one = f.field().one();
    let a = f.mul_term(&one, &lcm.div(lf).expect("lcm divisible"));
    let b = g.mul_term(&one, &lcm.div(lg).expect("lcm divisible"));
    &a - &b
}

// ---------------------------------------------------------------------------
// Coefficient domains for the engine.

type Terms<C> = Vec<(C, Monomial)>;

trait Domain {
    type C: Clone + PartialEq + Debug;

    fn import(&self, f: &Polynomial) -> Terms<Self::C>;
    /// Monic polynomial with the same leading monomial.
    fn export(&self, v: &[(Self::C, Monomial)], ring: &Arc<Ring>, ord: MonomialOrder) -> Polynomial;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn is_one(&self, a: &Self::C) -> bool;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    /// `a * x - b * y`
    fn combine(&self, a: &Self::C, x: &Self::C, b: &Self::C, y: &Self::C) -> Self::C;
    fn neg_mul(&self, b: &Self::C, y: &Self::C) -> Self::C;
    /// `(alpha, beta)` with `alpha * lc_p = beta * lc_g` and `alpha` a unit
    /// or as small as possible.
    fn factors(&self, lc_p: &Self::C, lc_g: &Self::C) -> (Self::C, Self::C);
    /// Canonical associate: monic, or primitive with positive leading coefficient.
    fn normalize(&self, v: &mut Terms<Self::C>);
    /// Divides both parts by their common content (no-op over a field).
    fn shrink(&self, _a: &mut Terms<Self::C>, _b: &mut Terms<Self::C>) {}
}

struct Residues {
    p: u64,
}

impl Domain for Residues {
    type C = u64;

    fn import(&self, f: &Polynomial) -> Terms<u64> {
        f.terms()
            .iter()
            .map(|t| match t.coeff {
                Coeff::Residue(v) => (v, t.monomial),
                Coeff::Rational(_) => unreachable!("residue field"),
            })
            .collect()
    }

    fn export(&self, v: &[(u64, Monomial)], ring: &Arc<Ring>, ord: MonomialOrder) -> Polynomial {
        let inv = inv_mod(v[0].0, self.p);
        let terms = v
            .iter()
            .map(|(c, m)| Term {
                coeff: Coeff::Residue(c * inv % self.p),
                monomial: *m,
            })
            .collect();
        Polynomial::from_sorted_terms(ring, ord, terms)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn combine(&self, a: &u64, x: &u64, b: &u64, y: &u64) -> u64 {
        let p = self.p;
        (a * x % p + p - b * y % p) % p
    }

    fn neg_mul(&self, b: &u64, y: &u64) -> u64 {
        (self.p - b * y % self.p) % self.p
    }

    fn factors(&self, lc_p: &u64, lc_g: &u64) -> (u64, u64) {
        (1, lc_p * inv_mod(*lc_g, self.p) % self.p)
    }

    fn normalize(&self, v: &mut Terms<u64>) {
        if let Some(&(lc, _)) = v.first() {
            if lc != 1 {
                let inv = inv_mod(lc, self.p);
                for t in v.iter_mut() {
                    t.0 = t.0 * inv % self.p;
                }
            }
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Fraction-free arithmetic over the integers standing in for the rationals.
struct Integers;

fn content(v: &[(BigInt, Monomial)]) -> BigInt {
    let mut g = BigInt::zero();
    for (c, _) in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

impl Domain for Integers {
    type C = BigInt;

    fn import(&self, f: &Polynomial) -> Terms<BigInt> {
        let mut den = BigInt::one();
        for t in f.terms() {
            if let Coeff::Rational(q) = &t.coeff {
                den = den.lcm(q.denom());
            }
        }
        let mut v: Terms<BigInt> = f
            .terms()
            .iter()
            .map(|t| match &t.coeff {
                Coeff::Rational(q) => (q.numer() * (&den / q.denom()), t.monomial),
                Coeff::Residue(_) => unreachable!("rational field"),
            })
            .collect();
        self.normalize(&mut v);
        v
    }

    fn export(&self, v: &[(BigInt, Monomial)], ring: &Arc<Ring>, ord: MonomialOrder) -> Polynomial {
        let lc = v[0].0.clone();
        let terms = v
            .iter()
            .map(|(c, m)| Term {
                coeff: Coeff::Rational(BigRational::new(c.clone(), lc.clone())),
                monomial: *m,
            })
            .collect();
        Polynomial::from_sorted_terms(ring, ord, terms)
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn combine(&self, a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> BigInt {
        if a.is_one() {
            x - b * y
        } else {
            a * x - b * y
        }
    }

    fn neg_mul(&self, b: &BigInt, y: &BigInt) -> BigInt {
        -(b * y)
    }

    fn factors(&self, lc_p: &BigInt, lc_g: &BigInt) -> (BigInt, BigInt) {
        let g = lc_p.gcd(lc_g);
        let (mut alpha, mut beta) = (lc_g / &g, lc_p / &g);
        if alpha.is_negative() {
            alpha = -alpha;
            beta = -beta;
        }
        (alpha, beta)
    }

    fn normalize(&self, v: &mut Terms<BigInt>) {
        if v.is_empty() {
            return;
        }
        let mut g = content(v);
        if v[0].0.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in v.iter_mut() {
                t.0 = &t.0 / &g;
            }
        }
    }

    fn shrink(&self, a: &mut Terms<BigInt>, b: &mut Terms<BigInt>) {
        let g = content(a).gcd(&content(b));
        if !g.is_one() && !g.is_zero() {
            for t in a.iter_mut().chain(b.iter_mut()) {
                t.0 = &t.0 / &g;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Engine.

struct Basis<C> {
    polys: Vec<Terms<C>>,
    lms: Vec<Monomial>,
    masks: Vec<u32>,
    active: Vec<bool>,
}

impl<C> Basis<C> {
    fn find(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mask = m.support();
        (0..self.lms.len())
            .find(|&k| self.active[k] && Some(k) != skip && self.masks[k] & !mask == 0 && self.lms[k].divides(m))
    }
}

/// `alpha * p[1..] - beta * m * g[1..]`
fn combine_tails<D: Domain>(
    dom: &D,
    ord: MonomialOrder,
    alpha: &D::C,
    p: &[(D::C, Monomial)],
    beta: &D::C,
    m: &Monomial,
    g: &[(D::C, Monomial)],
) -> Terms<D::C> {
    let p = &p[1..];
    let g = &g[1..];
    let unit = dom.is_one(alpha);
    let scale = |c: &D::C| if unit { c.clone() } else { dom.mul(alpha, c) };
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() && j < g.len() {
        let gm = g[j].1.mul(m);
        match ord.cmp(&p[i].1, &gm) {
            Ordering::Greater => {
                out.push((scale(&p[i].0), p[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((dom.neg_mul(beta, &g[j].0), gm));
                j += 1;
            }
            Ordering::Equal => {
                let v = dom.combine(alpha, &p[i].0, beta, &g[j].0);
                if !dom.is_zero(&v) {
                    out.push((v, gm));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(p[i..].iter().map(|t| (scale(&t.0), t.1)));
    out.extend(g[j..].iter().map(|t| (dom.neg_mul(beta, &t.0), t.1.mul(m))));
    out
}

/// Fully reduces `f` by the active basis elements (except `skip`); the
/// result is normalized and is an associate of the normal form.
fn reduce<D: Domain>(
    dom: &D,
    ord: MonomialOrder,
    basis: &Basis<D::C>,
    f: Terms<D::C>,
    skip: Option<usize>,
) -> Terms<D::C> {
    let mut p = f;
    let mut head = 0;
    let mut rem: Terms<D::C> = Vec::new();
    let mut steps = 0usize;
    while head < p.len() {
        match basis.find(&p[head].1, skip) {
            Some(k) => {
                let g = &basis.polys[k];
                let m = p[head].1.div(&basis.lms[k]).expect("divisible");
                let (alpha, beta) = dom.factors(&p[head].0, &g[0].0);
                if !dom.is_one(&alpha) {
                    for t in rem.iter_mut() {
                        t.0 = dom.mul(&alpha, &t.0);
                    }
                }
                p = combine_tails(dom, ord, &alpha, &p[head..], &beta, &m, g);
                head = 0;
                steps += 1;
                if steps.is_multiple_of(CONTENT_INTERVAL) {
                    dom.shrink(&mut p, &mut rem);
                }
            }
            None => {
                rem.push(p[head].clone());
                head += 1;
            }
        }
    }
    dom.normalize(&mut rem);
    rem
}

fn s_pair<D: Domain>(dom: &D, ord: MonomialOrder, f: &[(D::C, Monomial)], g: &[(D::C, Monomial)]) -> Terms<D::C> {
    let lcm = f[0].1.lcm(&g[0].1);
    let mf = lcm.div(&f[0].1).expect("lcm divisible");
    let mg = lcm.div(&g[0].1).expect("lcm divisible");
    let (alpha, beta) = dom.factors(&f[0].0, &g[0].0);
    let shifted: Terms<D::C> = f.iter().map(|(c, m)| (c.clone(), m.mul(&mf))).collect();
    let mut out = combine_tails(dom, ord, &alpha, &shifted, &beta, &mg, g);
    dom.normalize(&mut out);
    out
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'d, D: Domain> {
    dom: &'d D,
    ord: MonomialOrder,
    basis: Basis<D::C>,
    pairs: Vec<Pair>,
}

impl<D: Domain> Engine<'_, D> {
    /// Gebauer–Möller update after adding the normalized, reduced `h`.
    fn insert(&mut self, h: Terms<D::C>) {
        let lh = h[0].1;
        let hi = self.basis.polys.len();
        let b = &self.basis;

        let candidates: Vec<Pair> = (0..hi)
            .filter(|&g| b.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: lh.lcm(&b.lms[g]),
            })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = lh.is_coprime(&b.lms[p.i]);
            let dominated =
                candidates[k + 1..].iter().any(|q| q.lcm.divides(&p.lcm)) || kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(*p);
            }
        }
        // product criterion
        kept.retain(|p| !lh.is_coprime(&b.lms[p.i]));

        // chain criterion against old pairs
        let lms = &b.lms;
        self.pairs
            .retain(|p| !(lh.divides(&p.lcm) && lh.lcm(&lms[p.i]) != p.lcm && lh.lcm(&lms[p.j]) != p.lcm));
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.basis.active[g] && lh.divides(&self.basis.lms[g]) {
                self.basis.active[g] = false;
            }
        }
        self.basis.polys.push(h);
        self.basis.lms.push(lh);
        self.basis.masks.push(lh.support());
        self.basis.active.push(true);
    }

    /// Normal selection: smallest lcm first, ties broken by age. Block
    /// orders compare the total degree of the lcm first, which is the
    /// normal strategy of the degree-refined order that agrees with the
    /// block order on homogeneous input.
    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let by_degree = matches!(ord, MonomialOrder::Block(_));
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let deg = if by_degree {
                a.lcm.degree().cmp(&b.lcm.degree())
            } else {
                Ordering::Equal
            };
            let c = deg
                .then_with(|| ord.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    /// Adds a new element; returns false when it is a nonzero constant.
    fn add(&mut self, f: Terms<D::C>) -> bool {
        let h = reduce(self.dom, self.ord, &self.basis, f, None);
        if h.is_empty() {
            return true;
        }
        if h[0].1.is_one() {
            return false;
        }
        self.insert(h);
        true
    }

    fn run(mut self, gens: Vec<Terms<D::C>>) -> Option<Vec<Terms<D::C>>> {
        for f in gens {
            if !self.add(f) {
                return None;
            }
        }
        while let Some(pair) = self.next_pair() {
            let s = s_pair(self.dom, self.ord, &self.basis.polys[pair.i], &self.basis.polys[pair.j]);
            if !s.is_empty() && !self.add(s) {
                return None;
            }
        }
        // interreduce the minimal basis
        let active: Vec<usize> = (0..self.basis.polys.len()).filter(|&k| self.basis.active[k]).collect();
        let mut out = Vec::with_capacity(active.len());
        for &k in &active {
            let g = self.basis.polys[k].clone();
            out.push(reduce(self.dom, self.ord, &self.basis, g, Some(k)));
        }
        Some(out)
    }
}

fn run_domain<D: Domain>(dom: &D, ring: &Arc<Ring>, input: &[Polynomial], ord: MonomialOrder) -> Vec<Polynomial> {
    let mut gens: Vec<Terms<D::C>> = input
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| dom.import(&f.with_order(ord)))
        .collect();
    gens.sort_by(|a, b| ord.cmp(&a[0].1, &b[0].1).then_with(|| a.len().cmp(&b.len())));
    let engine = Engine {
        dom,
        ord,
        basis: Basis {
            polys: Vec::new(),
            lms: Vec::new(),
            masks: Vec::new(),
            active: Vec::new(),
        },
        pairs: Vec::new(),
    };
    match engine.run(gens) {
        None => vec![Polynomial::one(ring, ord)],
        Some(basis) => {
            let mut out: Vec<Polynomial> = basis.iter().map(|g| dom.export(g, ring, ord)).collect();
            out.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
            out
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `input` under `ord`.
///
/// Elements are monic and sorted by ascending leading monomial. An empty
/// result means the zero ideal.
pub(crate) fn groebner(input: &[Polynomial], ord: MonomialOrder) -> Vec<Polynomial> {
    let Some(first) = input.iter().find(|f| !f.is_zero()) else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    match ring.field() {
        Field::Rationals => run_domain(&Integers, &ring, input, ord),
        Field::Prime(p) => run_domain(&Residues { p }, &ring, input, ord),
    }
}
