use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of variables, including one internal tag variable.
pub const MAX_VARS: usize = 9;

/// A monomial stored as a dense exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    nvars: u8,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: &[u32]) -> Result<Self> {
        if exponents.len() > MAX_VARS {
            return Err(Error::DimensionBound {
                max: MAX_VARS,
                found: exponents.len(),
            });
        }
        let mut exps = [0; MAX_VARS];
        exps[..exponents.len()].copy_from_slice(exponents);
        Ok(Monomial {
            exps,
            nvars: exponents.len() as u8,
            degree: exponents.iter().sum(),
        })
    }

    pub(crate) fn from_slice(exponents: &[u32]) -> Self {
        Self::new(exponents).expect("monomial within variable bound")
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_slice(&vec![0; nvars])
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub(crate) fn check_dim(&self, other: &Monomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(())
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] += other.exps[i];
        }
        out.degree += other.degree;
        out
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e *= k;
        }
        out.degree *= k;
        out
    }

    /// True when `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self.exps[..self.nvars()]
                .iter()
                .zip(&other.exps[..self.nvars()])
                .all(|(a, b)| a <= b)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] -= other.exps[i];
        }
        out.degree -= other.degree;
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut degree = 0;
        for i in 0..self.nvars() {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            degree += out.exps[i];
        }
        out.degree = degree;
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Support of the monomial as a bit mask over variables.
    pub fn support(&self) -> u32 {
        (0..self.nvars())
            .filter(|&i| self.exps[i] > 0)
            .fold(0, |m, i| m | (1 << i))
    }

    /// Same monomial with the variable list re-indexed: `range` is kept,
    /// everything else must have exponent zero.
    pub(crate) fn project(&self, start: usize) -> Monomial {
        debug_assert!(self.exps[..start].iter().all(|&e| e == 0));
        Monomial::from_slice(&self.exps[start..self.nvars()])
    }

    /// Prepends `count` zero exponents.
    pub(crate) fn embed(&self, count: usize) -> Monomial {
        let mut v = vec![0; count];
        v.extend_from_slice(self.exponents());
        Monomial::from_slice(&v)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, names }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Admissible monomial orders.
///
/// `Block(k)` compares the first `k` variables by graded reverse
/// lexicographic order and breaks ties with grevlex on the remaining ones; it
/// eliminates the first block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Block(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a.exponents(), b.exponents(), a.degree, b.degree),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Block(k) => {
                let n = a.nvars();
                let k = k.min(n);
                let (a1, a2) = a.exponents().split_at(k);
                let (b1, b2) = b.exponents().split_at(k);
                let da: u32 = a1.iter().sum();
                let db: u32 = b1.iter().sum();
                grevlex(a1, b1, da, db).then_with(|| grevlex(a2, b2, a.degree - da, b.degree - db))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
        }
    }
}

#[inline]
fn grevlex(a: &[u32], b: &[u32], da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                // smaller exponent in the last differing variable is larger
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Compares two monomials of the same ring under `ord`.
pub fn compare(a: &Monomial, b: &Monomial, ord: MonomialOrder) -> Result<Ordering> {
    a.check_dim(b)?;
    Ok(ord.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let ord = MonomialOrder::Grevlex;
        assert_eq!(compare(&m(&[2, 1]), &m(&[1, 2]), ord).unwrap(), Ordering::Greater);
        assert_eq!(compare(&m(&[3, 4]), &m(&[3, 4]), ord).unwrap(), Ordering::Equal);
        assert_eq!(compare(&m(&[1, 0]), &m(&[0, 3]), ord).unwrap(), Ordering::Less);
        // x*z < y^2 in grevlex on three variables
        assert_eq!(ord.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_and_block() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        // block(1): any power of the first variable beats the rest
        let b = MonomialOrder::Block(1);
        assert_eq!(b.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(b.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(compare(&m(&[1]), &m(&[1, 0]), MonomialOrder::Grevlex).is_err());
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            (0usize..=3).prop_map(MonomialOrder::Block),
        ]
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, 3).prop_map(|v| Monomial::new(&v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn order_is_total_and_multiplicative(a in mono3(), b in mono3(), c in mono3(), ord in orders()) {
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            if a.divides(&b) && a != b {
                prop_assert_eq!(ab, Ordering::Less);
            }
            // transitivity on the triple
            if ab != Ordering::Greater && ord.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(ord.cmp(&a, &c), Ordering::Greater);
            }
        }
    }
}
