//! Degree-by-degree linear algebra for homogeneous ideals with a
//! finite-dimensional quotient.
//!
//! A homogeneous ideal `R` is described by linear conditions of the form
//! `f * g ∈ Q` for finitely many pairs `(Q, g)` with `Q` homogeneous and
//! cofinite. Every such `Q` contains all monomials of degree at least
//! `top(Q)`, so `R_e` is everything once `e + deg g >= top(Q)` for every
//! pair, and the lower degrees are finite kernels. The echelon bases of
//! the pieces `R_e` together form a Gröbner basis of `R`, so no Buchberger
//! run is needed for the result.
//!
//! Over the rationals, normal forms are kept as integer vectors over a
//! common denominator and ranks are found by fraction-free elimination.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{modular, GroebnerBasis, Ideal, Reducer};
use crate::poly::{Coeff, Field, Monomial, MonomialOrder, Polynomial, Ring};

/// Largest number of monomials in a single degree handled by the graded
/// route; beyond it the tag-variable route is used.
const MAX_DEGREE_WIDTH: usize = 4096;

/// Widest degree spanned directly when looking for the top degree of a
/// quotient; past it a Gröbner basis is computed instead.
const MAX_SPAN_WIDTH: usize = 512;

/// Largest number of products `u * g` spanning one degree in
/// [`span_contains`].
const MAX_SPAN_ROWS: u64 = 20_000;

/// A field element as `num / den` with `den > 0`; residues have `den = 1`.
fn parts(c: &Coeff) -> (BigInt, BigInt) {
    match c {
        Coeff::Rational(x) => (x.numer().clone(), x.denom().clone()),
        Coeff::Residue(x) => (BigInt::from(*x), BigInt::one()),
    }
}

/// A vector over the standard monomials of one degree, equal to
/// `num / den`. Over a prime field `den = 1` and entries are reduced.
#[derive(Clone, Debug)]
struct Scaled {
    num: Vec<BigInt>,
    den: BigInt,
}

/// Exact arithmetic on [`Scaled`] vectors for one coefficient field.
#[derive(Clone, Debug)]
enum Arith {
    Rationals,
    Residues(BigInt),
}

impl Arith {
    fn new(field: Field) -> Self {
        match field {
            Field::Rationals => Arith::Rationals,
            Field::Prime(p) => Arith::Residues(BigInt::from(p)),
        }
    }

    /// The field characteristic, or the largest lifting prime over the
    /// rationals.
    fn prime(&self) -> u64 {
        match self {
            Arith::Residues(p) => p.to_u64().expect("word-sized characteristic"),
            Arith::Rationals => modular::primes()[0],
        }
    }

    fn unit(&self, len: usize, at: usize) -> Scaled {
        let mut num = vec![BigInt::zero(); len];
        num[at] = BigInt::one();
        Scaled {
            num,
            den: BigInt::one(),
        }
    }

    /// `sum_i (p_i / q_i) * v_i` for vectors of length `len`.
    fn combine(&self, len: usize, items: &[(BigInt, BigInt, &Scaled)]) -> Scaled {
        match self {
            Arith::Residues(p) => {
                let mut num = vec![BigInt::zero(); len];
                for (c, _, v) in items {
                    for (acc, x) in num.iter_mut().zip(&v.num) {
                        if !x.is_zero() {
                            *acc += c * x;
                        }
                    }
                }
                for x in num.iter_mut() {
                    *x = x.mod_floor(p);
                }
                Scaled {
                    num,
                    den: BigInt::one(),
                }
            }
            Arith::Rationals => {
                let den = items.iter().fold(BigInt::one(), |l, (_, q, v)| l.lcm(&(q * &v.den)));
                let mut num = vec![BigInt::zero(); len];
                for (c, q, v) in items {
                    let scale = c * (&den / (q * &v.den));
                    for (acc, x) in num.iter_mut().zip(&v.num) {
                        if !x.is_zero() {
                            *acc += &scale * x;
                        }
                    }
                }
                let g = num.iter().fold(den.clone(), |g, x| g.gcd(x));
                if g.is_one() {
                    return Scaled { num, den };
                }
                Scaled {
                    num: num.into_iter().map(|x| x / &g).collect(),
                    den: den / g,
                }
            }
        }
    }
}

/// Row eliminations between content removals; the gcds cost more than
/// the growth they prevent when taken after every step.
const CONTENT_INTERVAL: usize = 8;

/// `row := a * row - b * pivot` with `a * row[c] = b * pivot[c]`, clearing
/// column `c`.
fn eliminate(row: &mut [BigInt], pivot: &[BigInt], c: usize) {
    let g = row[c].gcd(&pivot[c]);
    let a = &pivot[c] / &g;
    let b = &row[c] / &g;
    let unit = a.is_one();
    for (x, y) in row.iter_mut().zip(pivot) {
        if !unit && !x.is_zero() {
            *x *= &a;
        }
        if !y.is_zero() {
            *x -= &b * y;
        }
    }
}

/// Divides `row` by the gcd of its entries.
fn make_primitive(row: &mut [BigInt]) {
    let mut content = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            content = content.gcd(x);
            if content.is_one() {
                return;
            }
        }
    }
    if !content.is_zero() {
        for x in row.iter_mut() {
            *x /= &content;
        }
    }
}

/// Row echelon form over integers (fraction-free, primitive rows) or
/// residues (monic pivots), used to decide rank.
struct IntEchelon {
    arith: Arith,
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    pivot_row: Vec<Option<usize>>,
}

impl IntEchelon {
    fn new(arith: Arith, ncols: usize) -> Self {
        IntEchelon {
            arith,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    fn full_rank(&self) -> bool {
        self.rows.len() == self.ncols
    }

    fn insert(&mut self, row: Vec<BigInt>) {
        let (mut row, lead) = self.reduce(row);
        if let Some(c) = lead {
            self.normalize(&mut row, c);
            self.pivot_row[c] = Some(self.rows.len());
            self.rows.push(row);
        }
    }

    /// Eliminates pivot columns from `row`; returns the remainder and its
    /// first nonzero column, which is not a pivot column.
    fn reduce(&self, mut row: Vec<BigInt>) -> (Vec<BigInt>, Option<usize>) {
        let mut steps = 0;
        for c in 0..self.ncols {
            if row[c].is_zero() {
                continue;
            }
            let Some(r) = self.pivot_row[c] else {
                return (row, Some(c));
            };
            let pivot = &self.rows[r];
            match &self.arith {
                Arith::Residues(p) => {
                    let k = row[c].clone();
                    for j in c..self.ncols {
                        if !pivot[j].is_zero() {
                            row[j] = (&row[j] - &k * &pivot[j]).mod_floor(p);
                        }
                    }
                }
                Arith::Rationals => {
                    eliminate(&mut row, pivot, c);
                    steps += 1;
                    if steps % CONTENT_INTERVAL == 0 {
                        make_primitive(&mut row);
                    }
                }
            }
        }
        (row, None)
    }

    fn normalize(&self, row: &mut [BigInt], lead: usize) {
        match &self.arith {
            Arith::Residues(p) => {
                let inv = row[lead].modpow(&(p - 2u32), p);
                for x in row.iter_mut() {
                    *x = (&*x * &inv).mod_floor(p);
                }
            }
            Arith::Rationals => {
                make_primitive(row);
                if row[lead].is_negative() {
                    for x in row.iter_mut() {
                        *x = -&*x;
                    }
                }
            }
        }
    }

    /// Reduced echelon form: every pivot column is zero outside its row.
    /// Returns the rows and the pivot row of each column.
    fn reduced(mut self) -> (Vec<Vec<BigInt>>, Vec<Option<usize>>) {
        let pivots: Vec<(usize, usize)> = (0..self.ncols)
            .filter_map(|c| self.pivot_row[c].map(|r| (c, r)))
            .collect();
        for &(c, r) in &pivots {
            let pivot = std::mem::take(&mut self.rows[r]);
            for (r2, row) in self.rows.iter_mut().enumerate() {
                if r2 == r || row[c].is_zero() {
                    continue;
                }
                match &self.arith {
                    Arith::Residues(p) => {
                        let k = row[c].clone();
                        for j in 0..self.ncols {
                            if !pivot[j].is_zero() {
                                row[j] = (&row[j] - &k * &pivot[j]).mod_floor(p);
                            }
                        }
                    }
                    Arith::Rationals => {
                        eliminate(row, &pivot, c);
                        make_primitive(row);
                    }
                }
            }
            self.rows[r] = pivot;
        }
        (self.rows, self.pivot_row)
    }

    /// Basis of the null space over the field, one vector per free column.
    fn null_space(self, field: Field) -> Vec<Vec<Coeff>> {
        let mut rows: Vec<Vec<Coeff>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| field.from_bigint(x)).collect())
            .collect();
        let pivots: Vec<(usize, usize)> = (0..self.ncols)
            .filter_map(|c| self.pivot_row[c].map(|r| (c, r)))
            .collect();
        for &(c, r) in &pivots {
            let inv = field.inv(&rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = field.mul(x, &inv);
            }
        }
        // clear entries above each pivot
        for &(c, r) in pivots.iter().rev() {
            for &(c2, r2) in &pivots {
                if c2 >= c {
                    break;
                }
                let k = rows[r2][c].clone();
                if k.is_zero() {
                    continue;
                }
                let src = rows[r][c..].to_vec();
                for (dst, v) in rows[r2][c..].iter_mut().zip(&src) {
                    *dst = field.sub(dst, &field.mul(&k, v));
                }
            }
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()) {
            let mut v = vec![field.zero(); self.ncols];
            v[free] = field.one();
            for &(c, r) in &pivots {
                v[c] = field.neg(&rows[r][free]);
            }
            out.push(v);
        }
        out
    }
}

/// Normal forms of all monomials of one degree, as vectors over the
/// standard monomials of that degree.
struct Layer {
    width: usize,
    forms: HashMap<Monomial, Scaled>,
}

/// Where a quotient's normal forms come from.
enum Source {
    /// A reduced Gröbner basis; forms are tabulated from its tails.
    Basis(Arc<GroebnerBasis>),
    /// Generating forms; each degree is the span of the products `u * g`.
    Span(Vec<Polynomial>),
}

/// A cofinite homogeneous ideal with monomial normal forms tabulated one
/// degree at a time.
struct Quotient {
    source: Source,
    order: MonomialOrder,
    top: u32,
    dim: usize,
    arith: Arith,
    layers: Vec<Option<Layer>>,
}

impl Quotient {
    /// Uses a cached Gröbner basis when there is one. Otherwise the degrees
    /// are spanned directly, which needs no basis at all: an ideal
    /// generated by forms of degree at most `δ` is cofinite iff it contains
    /// every form of degree `d(δ - 1) + 1`, since its degree-`δ` part
    /// generates an ideal with the same radical that contains a regular
    /// sequence of `d` forms of degree `δ` over an infinite field. Over a
    /// finite field the scan may miss and the basis is used instead.
    fn new(ideal: &Ideal) -> Option<Self> {
        if !ideal.is_homogeneous() {
            return None;
        }
        let order = ideal.order();
        let dim = ideal.ring().dim();
        let arith = Arith::new(ideal.ring().field());
        if let Some(gb) = ideal.cached_gb() {
            return Self::from_basis(ideal, gb);
        }
        // monomial bases are free, and wide spans are slower than a basis
        if ideal.generators().iter().all(|g| g.is_monomial()) {
            return Self::from_basis(ideal, ideal.gb());
        }
        let gens = ideal.generators().to_vec();
        let delta = gens.iter().filter_map(|g| g.degree()).max()?;
        let bound = dim as u32 * delta.saturating_sub(1) + 1;
        let mut q = Quotient {
            source: Source::Span(gens),
            order,
            top: 0,
            dim,
            arith,
            layers: Vec::new(),
        };
        for k in 0..=bound {
            if binomial(k as u64 + dim as u64 - 1, dim as u64 - 1) as usize > MAX_SPAN_WIDTH {
                break;
            }
            // zero modulo a prime proves zero; a larger bound only delays top
            if q.span_width_bound(k) == 0 {
                q.top = k;
                q.layers = (0..k).map(|_| None).collect();
                return Some(q);
            }
        }
        Self::from_basis(ideal, ideal.gb())
    }

    fn from_basis(ideal: &Ideal, gb: Arc<GroebnerBasis>) -> Option<Self> {
        if !ideal.is_cofinite() {
            return None;
        }
        let basis = ideal.quotient_basis().ok()?;
        let top = basis.iter().map(|m| m.degree() + 1).max().unwrap_or(0);
        Some(Quotient {
            order: gb.order(),
            source: Source::Basis(gb),
            top,
            dim: ideal.ring().dim(),
            arith: Arith::new(ideal.ring().field()),
            layers: (0..top).map(|_| None).collect(),
        })
    }

    fn layer(&self, k: u32) -> Layer {
        match &self.source {
            Source::Basis(gb) => self.tabulate(gb, k),
            Source::Span(_) => self.span_layer(k),
        }
    }

    /// The products `u * g` of degree `k` as integer rows over `column`.
    fn span_rows<'a>(&'a self, k: u32, column: &'a HashMap<Monomial, usize>) -> impl Iterator<Item = Vec<BigInt>> + 'a {
        let Source::Span(gens) = &self.source else {
            unreachable!("span rows need generators")
        };
        gens.iter()
            .filter_map(move |g| g.degree().filter(|&e| e <= k).map(|e| (g, e)))
            .flat_map(move |(g, e)| {
                monomials_of_degree(self.dim, k - e)
                    .into_iter()
                    .map(move |u| integer_row(&self.arith, column, g, &u))
            })
    }

    fn span_columns(&self, k: u32) -> (Vec<Monomial>, HashMap<Monomial, usize>) {
        let mut monos = monomials_of_degree(self.dim, k);
        monos.sort_by(|a, b| self.order.cmp(a, b));
        let column = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        (monos, column)
    }

    /// Codimension of the span in degree `k` modulo a prime: exact over a
    /// prime field, an upper bound over the rationals.
    fn span_width_bound(&self, k: u32) -> usize {
        let (monos, column) = self.span_columns(k);
        let p = self.arith.prime();
        let mut ech = modular::ModEchelon::new(p, monos.len());
        for row in self.span_rows(k, &column) {
            if ech.full_rank() {
                break;
            }
            ech.insert(row.iter().map(|x| modular::residue(x, p)).collect());
        }
        monos.len() - ech.rank()
    }

    /// Normal forms modulo the span of the products `u * g` of degree `k`,
    /// read off a reduced echelon form: free columns are unit vectors and a
    /// pivot column is minus the free part of its row.
    fn span_layer(&self, k: u32) -> Layer {
        let (monos, column) = self.span_columns(k);
        let rows: Vec<Vec<BigInt>> = self.span_rows(k, &column).collect();
        let ncols = monos.len();
        // pivot columns and the form of each
        let (pivots, pivot_forms): (Vec<usize>, Vec<Scaled>) = match &self.arith {
            Arith::Residues(_) => {
                let p = self.arith.prime();
                let mut ech = modular::ModEchelon::new(p, ncols);
                for row in &rows {
                    if ech.full_rank() {
                        break;
                    }
                    ech.insert(row.iter().map(|x| modular::residue(x, p)).collect());
                }
                let (pivots, entries) = ech.reduced();
                let forms = entries
                    .into_iter()
                    .map(|e| Scaled {
                        num: e.into_iter().map(|x| BigInt::from((p - x) % p)).collect(),
                        den: BigInt::one(),
                    })
                    .collect();
                (pivots, forms)
            }
            Arith::Rationals => match modular::rref(&rows, ncols) {
                Some(r) => {
                    let forms = r
                        .nums
                        .into_iter()
                        .zip(r.dens)
                        .map(|(num, den)| Scaled {
                            num: num.into_iter().map(|x| -x).collect(),
                            den,
                        })
                        .collect();
                    (r.pivots, forms)
                }
                None => exact_rref(&rows, ncols),
            },
        };
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        let width = free.len();
        let mut forms = HashMap::with_capacity(ncols);
        for (i, c) in pivots.iter().enumerate() {
            forms.insert(monos[*c], pivot_forms[i].clone());
        }
        for (j, c) in free.iter().enumerate() {
            forms.insert(monos[*c], self.arith.unit(width, j));
        }
        Layer { width, forms }
    }

    /// Normal forms of every monomial of degree `k`, in ascending order so
    /// that `NF(u * lm(g)) = -NF(u * tail(g))` only needs smaller monomials
    /// of the same degree. The basis is reduced and homogeneous, so tails
    /// consist of standard monomials of the same degree.
    fn tabulate(&self, gb: &GroebnerBasis, k: u32) -> Layer {
        let ord = gb.order();
        let mut monos = monomials_of_degree(self.dim, k);
        monos.sort_by(|a, b| ord.cmp(a, b));
        let lms = gb.leading_monomials();
        let divisor: Vec<Option<usize>> = monos.iter().map(|m| lms.iter().position(|l| l.divides(m))).collect();
        let width = divisor.iter().filter(|d| d.is_none()).count();
        let mut forms: HashMap<Monomial, Scaled> = HashMap::new();
        let mut next_standard = 0;
        for (m, div) in monos.iter().zip(&divisor) {
            let nf = match div {
                None => {
                    next_standard += 1;
                    self.arith.unit(width, next_standard - 1)
                }
                Some(i) => {
                    let u = m.div(&lms[*i]).expect("divisible");
                    let items: Vec<(BigInt, BigInt, &Scaled)> = gb.elements()[*i].terms()[1..]
                        .iter()
                        .map(|t| {
                            let (p, q) = parts(&t.coeff);
                            (-p, q, &forms[&t.monomial.mul(&u)])
                        })
                        .collect();
                    self.arith.combine(width, &items)
                }
            };
            forms.insert(*m, nf);
        }
        Layer { width, forms }
    }

    /// Normal form of `x^b * g` for homogeneous `g`, as a vector over the
    /// standard monomials of its degree, or `None` when that degree lies
    /// entirely in the ideal.
    fn image(&mut self, b: &Monomial, g: &Polynomial) -> Option<(usize, Scaled)> {
        let k = b.degree() + g.degree()?;
        if k >= self.top {
            return None;
        }
        if self.layers[k as usize].is_none() {
            let layer = self.layer(k);
            self.layers[k as usize] = Some(layer);
        }
        let layer = self.layers[k as usize].as_ref().unwrap();
        let items: Vec<(BigInt, BigInt, &Scaled)> = g
            .terms()
            .iter()
            .map(|t| {
                let (p, q) = parts(&t.coeff);
                (p, q, &layer.forms[&b.mul(&t.monomial)])
            })
            .collect();
        Some((layer.width, self.arith.combine(layer.width, &items)))
    }
}

/// Reduced echelon form over the rationals by fraction-free elimination:
/// pivot columns and, for each, minus the free part of its row.
fn exact_rref(rows: &[Vec<BigInt>], ncols: usize) -> (Vec<usize>, Vec<Scaled>) {
    let mut ech = IntEchelon::new(Arith::Rationals, ncols);
    for row in rows {
        if ech.full_rank() {
            break;
        }
        ech.insert(row.clone());
    }
    let (rows, pivot_row) = ech.reduced();
    let free: Vec<usize> = (0..ncols).filter(|&c| pivot_row[c].is_none()).collect();
    let mut pivots = Vec::new();
    let mut forms = Vec::new();
    for (c, r) in pivot_row.iter().enumerate() {
        let Some(r) = r else { continue };
        let row = &rows[*r];
        let sign = if row[c].is_negative() {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        pivots.push(c);
        forms.push(Scaled {
            num: free.iter().map(|&f| &row[f] * &sign).collect(),
            den: -&row[c] * &sign,
        });
    }
    (pivots, forms)
}

/// All monomials of total degree `e` in `d` variables.
pub(crate) fn monomials_of_degree(d: usize, e: u32) -> Vec<Monomial> {
    fn walk(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_slice(exps));
            return;
        }
        for k in (0..=left).rev() {
            exps[i] = k;
            walk(i + 1, left - k, exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    walk(0, e, &mut vec![0; d], &mut out);
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Reduced echelon basis of a space of homogeneous polynomials of one degree.
fn echelon(vs: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut rows: Vec<Polynomial> = Vec::new();
    for mut v in vs {
        for r in &rows {
            let lm = r.leading_monomial().expect("nonzero row");
            if let Some(t) = v.terms().iter().find(|t| t.monomial == *lm) {
                let c = t.coeff.clone();
                v = &v - &r.scale(&c);
            }
        }
        if v.is_zero() {
            continue;
        }
        let v = v.monic();
        let lm = *v.leading_monomial().unwrap();
        for r in rows.iter_mut() {
            if let Some(t) = r.terms().iter().find(|t| t.monomial == lm) {
                let c = t.coeff.clone();
                *r = &*r - &v.scale(&c);
            }
        }
        rows.push(v);
    }
    rows
}

/// Degree-`e` part of the solution space: elimination over all conditions,
/// stopping as soon as the only solution is zero.
fn solve_degree(
    ring: &Arc<Ring>,
    order: MonomialOrder,
    e: u32,
    quotients: &mut [Quotient],
    conditions: &[(usize, Polynomial)],
) -> Vec<Polynomial> {
    let field = ring.field();
    let arith = Arith::new(field);
    let monos = monomials_of_degree(ring.dim(), e);
    // per condition, the image of each monomial; conditions vacuous in
    // degree e are dropped
    let mut blocks: Vec<Vec<Scaled>> = Vec::new();
    for (k, g) in conditions {
        let q = &mut quotients[*k];
        let mut columns = Vec::with_capacity(monos.len());
        for b in &monos {
            match q.image(b, g) {
                Some((_, col)) => columns.push(col),
                None => break,
            }
        }
        if columns.len() == monos.len() && columns.iter().any(|c| !c.num.is_empty()) {
            blocks.push(columns);
        }
    }
    if full_rank_mod_p(&arith, monos.len(), &blocks) {
        return Vec::new();
    }
    let mut ech = IntEchelon::new(arith, monos.len());
    for columns in &blocks {
        if ech.full_rank() {
            break;
        }
        // rows of the condition, cleared of column denominators
        let lcm = columns.iter().fold(BigInt::one(), |l, c| l.lcm(&c.den));
        let scales: Vec<BigInt> = columns.iter().map(|c| &lcm / &c.den).collect();
        for r in 0..columns[0].num.len() {
            let row: Vec<BigInt> = columns.iter().zip(&scales).map(|(c, s)| &c.num[r] * s).collect();
            ech.insert(row);
            if ech.full_rank() {
                break;
            }
        }
    }
    ech.null_space(field)
        .into_iter()
        .map(|v| {
            let terms = v.into_iter().zip(&monos).map(|(c, m)| (c, *m));
            Polynomial::from_terms(ring, order, terms).expect("terms of the same ring")
        })
        .collect()
}

/// Full column rank of the stacked condition rows modulo a prime, which
/// implies full rank over the field. `false` is inconclusive over the
/// rationals.
fn full_rank_mod_p(arith: &Arith, ncols: usize, blocks: &[Vec<Scaled>]) -> bool {
    let p = arith.prime();
    let mut ech = modular::ModEchelon::new(p, ncols);
    for columns in blocks {
        let mut inverses = Vec::with_capacity(ncols);
        for c in columns {
            match modular::ratio_residue(&BigInt::one(), &c.den, p) {
                Some(x) => inverses.push(x),
                None => return false,
            }
        }
        for r in 0..columns[0].num.len() {
            let row = columns
                .iter()
                .zip(&inverses)
                .map(|(c, inv)| modular::residue(&c.num[r], p) * inv % p)
                .collect();
            ech.insert(row);
            if ech.full_rank() {
                return true;
            }
        }
    }
    ech.full_rank()
}

/// The ideal `{f : f * g ∈ Q for every condition (Q, g)}`, or `None` when
/// some `Q` is not homogeneous and cofinite, some `g` is not homogeneous,
/// or the degrees involved are too wide.
pub(super) fn solve(ring: &Arc<Ring>, order: MonomialOrder, conditions: &[(&Ideal, &Polynomial)]) -> Option<Ideal> {
    if conditions.iter().any(|(_, g)| !g.is_homogeneous()) {
        return None;
    }
    let mut quotients: Vec<Quotient> = Vec::new();
    let mut sources: Vec<&Ideal> = Vec::new();
    let mut indexed: Vec<(usize, Polynomial)> = Vec::new();
    for &(q, g) in conditions {
        if g.is_zero() {
            continue;
        }
        let k = match sources.iter().position(|x| std::ptr::eq(*x, q)) {
            Some(k) => k,
            None => {
                quotients.push(Quotient::new(q)?);
                sources.push(q);
                quotients.len() - 1
            }
        };
        indexed.push((k, g.with_order(order)));
    }
    let d = ring.dim();
    // f of degree >= stop satisfies every condition
    let stop = indexed
        .iter()
        .map(|(k, g)| quotients[*k].top.saturating_sub(g.degree().unwrap()))
        .max()
        .unwrap_or(0);
    if binomial(stop as u64 + d as u64 - 1, d as u64 - 1) as usize > MAX_DEGREE_WIDTH {
        return None;
    }

    let mut basis: Vec<Polynomial> = Vec::new();
    // a nonzero piece in degree e gives one in every higher degree, so the
    // first zero piece met from the top ends the search
    for e in (0..stop).rev() {
        let span = solve_degree(ring, order, e, &mut quotients, &indexed);
        if span.is_empty() {
            break;
        }
        basis.extend(echelon(span));
    }
    basis.extend(
        monomials_of_degree(d, stop)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, order, m)),
    );
    Some(Ideal::from_basis(ring, order, reduce_basis(basis)))
}

/// Coefficients of `u * f` over the columns of one degree, scaled to
/// integers (or reduced residues).
fn integer_row(arith: &Arith, column: &HashMap<Monomial, usize>, f: &Polynomial, u: &Monomial) -> Vec<BigInt> {
    let mut row = vec![BigInt::zero(); column.len()];
    let ps: Vec<(BigInt, BigInt)> = f.terms().iter().map(|t| parts(&t.coeff)).collect();
    let lcm = ps.iter().fold(BigInt::one(), |l, (_, q)| l.lcm(q));
    for (t, (p, q)) in f.terms().iter().zip(ps) {
        let x = p * (&lcm / q);
        row[column[&t.monomial.mul(u)]] = match arith {
            Arith::Residues(m) => x.mod_floor(m),
            Arith::Rationals => x,
        };
    }
    row
}

/// `targets ⊆ (gens)` for homogeneous `gens` and `targets`. A homogeneous
/// `f` of degree `D` lies in the ideal iff it is a linear combination of
/// the products `u * g` of degree `D`, so each target degree is one rank
/// computation. `None` when some degree is too wide for this route.
pub(super) fn span_contains(ring: &Arc<Ring>, gens: &[Polynomial], targets: &[Polynomial]) -> Option<bool> {
    if gens.iter().chain(targets).any(|g| !g.is_homogeneous()) {
        return None;
    }
    let d = ring.dim();
    let arith = Arith::new(ring.field());
    let mut degrees: Vec<u32> = targets.iter().filter_map(|t| t.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    for deg in degrees {
        let monos = monomials_of_degree(d, deg);
        if monos.len() > MAX_DEGREE_WIDTH {
            return None;
        }
        let products: u64 = gens
            .iter()
            .filter_map(|g| g.degree().filter(|&e| e <= deg))
            .map(|e| binomial((deg - e) as u64 + d as u64 - 1, d as u64 - 1))
            .sum();
        if products > MAX_SPAN_ROWS {
            return None;
        }
        let column: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut ech = IntEchelon::new(arith.clone(), monos.len());
        'fill: for g in gens {
            let Some(e) = g.degree().filter(|&e| e <= deg) else {
                continue;
            };
            for u in monomials_of_degree(d, deg - e) {
                if ech.full_rank() {
                    break 'fill;
                }
                ech.insert(integer_row(&arith, &column, g, &u));
            }
        }
        let one = Monomial::one(d);
        for t in targets.iter().filter(|t| t.degree() == Some(deg)) {
            if ech.reduce(integer_row(&arith, &column, t, &one)).1.is_some() {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Reduced Gröbner basis from a homogeneous basis whose leading monomials
/// span the initial ideal, sorted by ascending leading monomial.
fn reduce_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let lms: Vec<Monomial> = basis.iter().map(|g| *g.leading_monomial().unwrap()).collect();
    let minimal: Vec<Polynomial> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !lms.iter()
                .enumerate()
                .any(|(j, l)| j != *i && l.divides(&lms[*i]) && *l != lms[*i])
        })
        .map(|(_, g)| g.clone())
        .collect();
    let reducer = Reducer::new(minimal.iter());
    let mut out: Vec<Polynomial> = minimal
        .iter()
        .map(|g| {
            let ring = g.ring();
            let lt = g.leading_term().unwrap().clone();
            let tail = Polynomial::from_sorted_terms(ring, g.order(), g.terms()[1..].to_vec());
            let head = Polynomial::from_sorted_terms(ring, g.order(), vec![lt]);
            &head + &reducer.normal_form(&tail)
        })
        .collect();
    if let Some(first) = out.first() {
        let ord = first.order();
        out.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
        assert_eq!(binomial(6, 2), 15);
    }

    #[test]
    fn integer_null_space() {
        let f = Field::Rationals;
        let mut ech = IntEchelon::new(Arith::Rationals, 3);
        for row in [[2, 4, 6], [1, 2, 3], [0, 3, 3]] {
            ech.insert(row.iter().map(|&x| BigInt::from(x)).collect());
        }
        assert_eq!(ech.rows.len(), 2);
        let null = ech.null_space(f);
        assert_eq!(null.len(), 1);
        // spanned by (1, 1, -1)
        let v = &null[0];
        assert!(f.div(&v[0], &v[1]).is_one());
        assert_eq!(f.add(&v[1], &v[2]), f.zero());
    }

    #[test]
    fn residue_null_space() {
        let f = Field::Prime(7);
        let mut ech = IntEchelon::new(Arith::new(f), 2);
        ech.insert(vec![BigInt::from(3), BigInt::from(6)]);
        ech.insert(vec![BigInt::from(1), BigInt::from(2)]);
        let null = ech.null_space(f);
        assert_eq!(null.len(), 1);
        // x + 2y = 0 mod 7
        let v = &null[0];
        assert!(f.add(&v[0], &f.mul(&f.from_i64(2), &v[1])).is_zero());
    }
}
