//! Linear algebra over the rationals through residues modulo word-sized
//! primes.
//!
//! Ranks are certified one-sidedly: the rank modulo any prime is at most
//! the rank over the rationals, so full rank modulo one prime proves full
//! rank. Reduced echelon forms are lifted by Chinese remaindering and
//! rational reconstruction, then verified exactly against every input row
//! before use.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes used for lifting, largest first, all below `2^31`.
const PRIME_COUNT: usize = 512;

/// Primes tried between reconstruction attempts, doubling each time.
const FIRST_BATCH: usize = 4;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            out = mul_mod(out, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    out
}

/// Deterministic Miller-Rabin; the bases 2, 3, 5, 7 suffice below
/// 3 215 031 751.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    [2u64, 3, 5, 7].iter().all(|&a| {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

pub(super) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 31) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

pub(super) fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

/// `num / den mod p`, or `None` when `p` divides `den`.
pub(super) fn ratio_residue(num: &BigInt, den: &BigInt, p: u64) -> Option<u64> {
    let d = residue(den, p);
    (d != 0).then(|| mul_mod(residue(num, p), pow_mod(d, p - 2, p), p))
}

/// Row echelon form modulo a prime with monic pivots.
pub(super) struct ModEchelon {
    p: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl ModEchelon {
    pub(super) fn new(p: u64, ncols: usize) -> Self {
        ModEchelon {
            p,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub(super) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(super) fn full_rank(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Adds a row; true when it raised the rank.
    pub(super) fn insert(&mut self, mut row: Vec<u64>) -> bool {
        let p = self.p;
        for c in 0..self.ncols {
            if row[c] == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let k = p - row[c];
                    for (x, &y) in row[c..].iter_mut().zip(&self.rows[r][c..]) {
                        if y != 0 {
                            *x = (*x + mul_mod(k, y, p)) % p;
                        }
                    }
                }
                None => {
                    let inv = pow_mod(row[c], p - 2, p);
                    for x in row[c..].iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
        false
    }

    /// Pivot columns in increasing order, and for each the free-column
    /// entries of its row in the reduced echelon form.
    pub(super) fn reduced(mut self) -> (Vec<usize>, Vec<Vec<u64>>) {
        let p = self.p;
        let pivots: Vec<(usize, usize)> = (0..self.ncols)
            .filter_map(|c| self.pivot_row[c].map(|r| (c, r)))
            .collect();
        for &(c, r) in pivots.iter().rev() {
            let pivot = std::mem::take(&mut self.rows[r]);
            for &(c2, r2) in &pivots {
                if c2 >= c {
                    break;
                }
                let row = &mut self.rows[r2];
                let k = row[c];
                if k == 0 {
                    continue;
                }
                let k = p - k;
                for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    if y != 0 {
                        *x = (*x + mul_mod(k, y, p)) % p;
                    }
                }
            }
            self.rows[r] = pivot;
        }
        let free: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect();
        let entries = pivots
            .iter()
            .map(|&(_, r)| free.iter().map(|&f| self.rows[r][f]).collect())
            .collect();
        (pivots.into_iter().map(|(c, _)| c).collect(), entries)
    }
}

/// `n / d ≡ a (mod m)` with `|n|, d <= sqrt(m / 2)`, if one exists.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(if s1.is_negative() { (-r1, -s1) } else { (r1, s1) })
}

/// Reduced row echelon form of a rational row space.
pub(super) struct Rref {
    /// Pivot columns, increasing.
    pub pivots: Vec<usize>,
    /// Free columns, increasing.
    pub free: Vec<usize>,
    /// Row `i` is `x_{pivots[i]} + sum_j (nums[i][j] / dens[i]) x_{free[j]}`.
    pub nums: Vec<Vec<BigInt>>,
    pub dens: Vec<BigInt>,
}

/// Residue profile of one prime: pivot columns and free entries.
struct Image {
    pivots: Vec<usize>,
    entries: Vec<Vec<u64>>,
}

/// The residue profile of `rows` and the rows that raised the rank.
fn image<'a>(rows: impl Iterator<Item = &'a Vec<BigInt>>, ncols: usize, p: u64) -> (Image, Vec<&'a Vec<BigInt>>) {
    let mut ech = ModEchelon::new(p, ncols);
    let mut independent = Vec::new();
    for row in rows {
        if ech.full_rank() {
            break;
        }
        if ech.insert(row.iter().map(|x| residue(x, p)).collect()) {
            independent.push(row);
        }
    }
    let (pivots, entries) = ech.reduced();
    (Image { pivots, entries }, independent)
}

/// A prime is unlucky when its rank is lower, or its pivots come later,
/// than over the rationals; the best profile seen wins.
fn better(a: &[usize], b: &[usize]) -> bool {
    a.len() > b.len() || (a.len() == b.len() && a < b)
}

/// The reduced echelon form of the span of integer `rows`, or `None` when
/// the available primes do not suffice.
///
/// Later primes only eliminate the rows found independent by the first;
/// the final check against every row covers an unlucky choice.
pub(super) fn rref(rows: &[Vec<BigInt>], ncols: usize) -> Option<Rref> {
    let (_, basis) = image(rows.iter(), ncols, primes()[0]);
    let basis: Vec<Vec<BigInt>> = basis.into_iter().cloned().collect();
    let mut best: Option<Vec<usize>> = None;
    let mut lifted: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0;
    let mut next_try = FIRST_BATCH;
    for &p in primes() {
        let (img, _) = image(basis.iter(), ncols, p);
        match &best {
            Some(b) if better(b, &img.pivots) => continue,
            Some(b) if *b == img.pivots => {}
            _ => {
                // first prime, or an earlier prime was unlucky
                best = Some(img.pivots.clone());
                lifted = vec![Vec::new(); img.pivots.len()];
                modulus = BigInt::one();
                used = 0;
                next_try = FIRST_BATCH;
            }
        }
        // Garner step: x := x + m * ((v - x) / m mod p)
        let inv = pow_mod(residue(&modulus, p), p - 2, p);
        for (acc, new) in lifted.iter_mut().zip(&img.entries) {
            if acc.is_empty() {
                acc.resize(new.len(), BigInt::zero());
            }
            for (x, &v) in acc.iter_mut().zip(new) {
                let t = mul_mod((v + p - residue(x, p)) % p, inv, p);
                if t != 0 {
                    *x += &modulus * t;
                }
            }
        }
        modulus *= p;
        used += 1;
        if used < next_try {
            continue;
        }
        next_try *= 2;
        let pivots = best.clone().expect("profile set");
        if let Some(out) = reconstruct(&lifted, &modulus, pivots, ncols) {
            if verify(&out, &basis) {
                // correct for the chosen rows; a miss elsewhere means the
                // first prime chose too few
                return verify(&out, rows).then_some(out);
            }
        }
    }
    None
}

fn reconstruct(lifted: &[Vec<BigInt>], modulus: &BigInt, pivots: Vec<usize>, ncols: usize) -> Option<Rref> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut nums = Vec::with_capacity(lifted.len());
    let mut dens = Vec::with_capacity(lifted.len());
    for row in lifted {
        // entries of one row share most of their denominator; carrying it
        // keeps later reconstructions short
        let mut den = BigInt::one();
        let mut fracs = Vec::with_capacity(row.len());
        for x in row {
            let scaled = (x * &den).mod_floor(modulus);
            let (n, d) = rational_reconstruction(&scaled, modulus)?;
            den *= &d;
            fracs.push((n, den.clone()));
        }
        let row_nums = fracs.into_iter().map(|(n, d)| n * (&den / d)).collect();
        nums.push(row_nums);
        dens.push(den);
    }
    Some(Rref {
        pivots,
        free,
        nums,
        dens,
    })
}

/// Every input row is the combination of reconstructed rows given by its
/// pivot entries. Since the reconstructed rows are at least as many as the
/// rank modulo a prime, which bounds the rational rank from below, the
/// spans then coincide.
fn verify(out: &Rref, rows: &[Vec<BigInt>]) -> bool {
    let common = out.dens.iter().fold(BigInt::one(), |l, d| l.lcm(d));
    let scaled: Vec<Vec<BigInt>> = out
        .nums
        .iter()
        .zip(&out.dens)
        .map(|(row, d)| {
            let k = &common / d;
            row.iter().map(|x| x * &k).collect()
        })
        .collect();
    rows.iter().all(|row| {
        out.free.iter().enumerate().all(|(j, &f)| {
            let mut acc = BigInt::zero();
            for (i, &c) in out.pivots.iter().enumerate() {
                if !row[c].is_zero() {
                    acc += &row[c] * &scaled[i][j];
                }
            }
            acc == &row[f] * &common
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes();
        assert_eq!(ps[0], 2_147_483_647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        for &p in &ps[..8] {
            assert!(crate::poly::is_prime(p));
        }
    }

    #[test]
    fn reconstructs_rationals() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        let d = BigInt::from(77);
        // -5/77 mod m
        let x = (BigInt::from(-5) * d.modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(
            rational_reconstruction(&x, &m),
            Some((BigInt::from(-5), BigInt::from(77)))
        );
    }

    #[test]
    fn rref_of_small_matrix() {
        // rows span {x0 + x2/2, x1 - x2/3}
        let rows = big(&[&[2, 0, 1], &[0, 3, -1], &[2, 3, 0]]);
        let out = rref(&rows, 3).unwrap();
        assert_eq!(out.pivots, vec![0, 1]);
        assert_eq!(out.free, vec![2]);
        assert_eq!(out.nums[0][0].clone() * BigInt::from(2), out.dens[0].clone());
        assert_eq!(out.nums[1][0].clone() * BigInt::from(-3), out.dens[1].clone());
    }

    #[test]
    fn rref_with_huge_entries() {
        let a: BigInt = BigInt::from(10u32).pow(60u32) + 7u32;
        let b: BigInt = BigInt::from(10u32).pow(55u32) - 3u32;
        let rows = vec![
            vec![a.clone(), b.clone(), BigInt::from(1)],
            vec![b.clone(), a.clone(), BigInt::from(0)],
        ];
        let out = rref(&rows, 3).unwrap();
        assert!(verify(&out, &rows));
        assert_eq!(out.pivots, vec![0, 1]);
    }
}
