//! q-integers, Gaussian binomials, q-Pochhammer symbols, classical Delannoy
//! numbers, and the classical and q-analogue Lucas congruences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclotomic::CyclotomicTable;
use crate::error::{Error, Result};
use crate::polyring::{IntPoly, ZERO};

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: usize) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::one(); n])
}

/// `(-q; q)_j = (1 + q)(1 + q^2)...(1 + q^j)`.
pub fn neg_q_pochhammer(j: usize) -> IntPoly {
    (1..=j).fold(IntPoly::one(), |acc, i| {
        let mut f = IntPoly::monomial(i);
        f += &IntPoly::one();
        acc * f
    })
}

/// Row-wise memo of Gaussian binomials built by the Pascal recurrence
/// `[h, k] = q^k [h-1, k] + [h-1, k-1]`.
#[derive(Clone, Debug)]
pub struct QBinomialTable {
    rows: Vec<Vec<IntPoly>>,
}

impl Default for QBinomialTable {
    fn default() -> Self {
        QBinomialTable {
            rows: vec![vec![IntPoly::one()]],
        }
    }
}

impl QBinomialTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn up_to(max_h: usize) -> Self {
        let mut t = Self::new();
        t.extend_to(max_h);
        t
    }

    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn extend_to(&mut self, max_h: usize) {
        while self.rows.len() <= max_h {
            let h = self.rows.len();
            let prev = &self.rows[h - 1];
            let mut row = Vec::with_capacity(h + 1);
            row.push(IntPoly::one());
            for k in 1..h {
                let mut e = prev[k].shift(k);
                e += &prev[k - 1];
                row.push(e);
            }
            row.push(IntPoly::one());
            self.rows.push(row);
        }
    }

    /// `[h choose k]_q`; zero for `k < 0` or `k > h`.
    pub fn get(&mut self, h: usize, k: i64) -> &IntPoly {
        self.extend_to(h);
        self.get_cached(h, k).expect("row was just built")
    }

    /// Read-only lookup; `None` only when row `h` has not been built.
    pub fn get_cached(&self, h: usize, k: i64) -> Option<&IntPoly> {
        let row = self.rows.get(h)?;
        if k < 0 || k as usize > h {
            return Some(&ZERO);
        }
        Some(&row[k as usize])
    }
}

pub fn q_binomial(h: usize, k: i64) -> IntPoly {
    if k < 0 || k as usize > h {
        return IntPoly::zero();
    }
    QBinomialTable::up_to(h).get(h, k).clone()
}

/// Exact integer binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Memo of classical Delannoy numbers, filled by the three-term recurrence.
#[derive(Clone, Debug, Default)]
pub struct DelannoyTable {
    rows: Vec<Vec<BigInt>>,
    width: usize,
}

impl DelannoyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn up_to(max_h: usize, max_k: usize) -> Self {
        let mut t = Self::new();
        t.extend_to(max_h, max_k);
        t
    }

    pub fn extend_to(&mut self, max_h: usize, max_k: usize) {
        if self.rows.len() > max_h && self.width > max_k {
            return;
        }
        let hs = (max_h + 1).max(self.rows.len());
        let ks = (max_k + 1).max(self.width);
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(hs);
        for h in 0..hs {
            let mut row = Vec::with_capacity(ks);
            for k in 0..ks {
                let v = if h == 0 || k == 0 {
                    BigInt::one()
                } else {
                    &rows[h - 1][k] + &row[k - 1] + &rows[h - 1][k - 1]
                };
                row.push(v);
            }
            rows.push(row);
        }
        self.rows = rows;
        self.width = ks;
    }

    /// `D(h, k)`; zero when either argument is negative.
    pub fn get(&mut self, h: i64, k: i64) -> BigInt {
        if h < 0 || k < 0 {
            return BigInt::zero();
        }
        self.extend_to(h as usize, k as usize);
        self.rows[h as usize][k as usize].clone()
    }

    pub fn get_cached(&self, h: i64, k: i64) -> Option<BigInt> {
        if h < 0 || k < 0 {
            return Some(BigInt::zero());
        }
        self.rows.get(h as usize)?.get(k as usize).cloned()
    }
}

pub fn delannoy(h: i64, k: i64) -> BigInt {
    DelannoyTable::new().get(h, k)
}

/// `Σ_j C(k, j) C(h + k - j, k)`.
pub fn delannoy_closed_form_binomial(h: i64, k: i64) -> BigInt {
    if h < 0 || k < 0 {
        return BigInt::zero();
    }
    (0..=h)
        .map(|j| binomial(k, j) * binomial(h + k - j, k))
        .sum()
}

/// `Σ_j 2^j C(k, j) C(h, j)`.
pub fn delannoy_closed_form_power(h: i64, k: i64) -> BigInt {
    if h < 0 || k < 0 {
        return BigInt::zero();
    }
    (0..=h)
        .map(|j| (BigInt::one() << j as usize) * binomial(k, j) * binomial(h, j))
        .sum()
}

/// Coefficients `c[h][k]`, `0 <= h, k <= n`, of the power series
/// `1 / (1 - x - y - xy)`.
pub fn delannoy_series_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut c = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for h in 0..=n {
        for k in 0..=n {
            c[h][k] = if h == 0 && k == 0 {
                BigInt::one()
            } else {
                let mut v = BigInt::zero();
                if h > 0 {
                    v += &c[h - 1][k];
                }
                if k > 0 {
                    v += &c[h][k - 1];
                }
                if h > 0 && k > 0 {
                    v += &c[h - 1][k - 1];
                }
                v
            };
        }
    }
    c
}

/// Trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_digits(modulus: u64, b: i64, d: i64) -> Result<()> {
    let top = modulus as i64 - 1;
    if !(0..=top).contains(&b) || !(0..=top).contains(&d) {
        return Err(Error::Domain(format!(
            "low digits must satisfy 0 <= b, d <= {top}, got b={b}, d={d}"
        )));
    }
    Ok(())
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok(())
}

/// Both sides of `C(ap+b, cp+d) ≡ C(a, c) C(b, d) (mod p)` as exact integers.
pub fn lucas_sides(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<(BigInt, BigInt)> {
    check_prime(p)?;
    check_digits(p, b, d)?;
    let p = p as i64;
    Ok((
        binomial(a * p + b, c * p + d),
        binomial(a, c) * binomial(b, d),
    ))
}

pub fn lucas_check(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<bool> {
    let (lhs, rhs) = lucas_sides(p, a, b, c, d)?;
    Ok((lhs - rhs).mod_floor(&BigInt::from(p)).is_zero())
}

/// Both sides of `D(ap+b, cp+d) ≡ D(a, c) D(b, d) (mod p)`.
pub fn delannoy_lucas_sides(
    table: &mut DelannoyTable,
    p: u64,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
) -> Result<(BigInt, BigInt)> {
    check_prime(p)?;
    check_digits(p, b, d)?;
    let p = p as i64;
    Ok((
        table.get(a * p + b, c * p + d),
        table.get(a, c) * table.get(b, d),
    ))
}

pub fn delannoy_lucas_check(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<bool> {
    let (lhs, rhs) = delannoy_lucas_sides(&mut DelannoyTable::new(), p, a, b, c, d)?;
    Ok((lhs - rhs).mod_floor(&BigInt::from(p)).is_zero())
}

/// Both sides of `[an+b, cn+d]_q ≡ C(a, c) [b, d]_q (mod Φ_n)`.
pub fn q_lucas_sides(
    table: &mut QBinomialTable,
    n: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
) -> Result<(IntPoly, IntPoly)> {
    if n == 0 {
        return Err(Error::Domain("modulus index must be positive".into()));
    }
    check_digits(n, b as i64, d as i64)?;
    let lhs = table.get((a * n + b) as usize, (c * n + d) as i64).clone();
    let rhs = table
        .get(b as usize, d as i64)
        .scale(&binomial(a as i64, c as i64));
    Ok((lhs, rhs))
}

pub fn q_lucas_check(n: u64, a: u64, b: u64, c: u64, d: u64) -> Result<bool> {
    let (lhs, rhs) = q_lucas_sides(&mut QBinomialTable::new(), n, a, b, c, d)?;
    CyclotomicTable::new().congruent(&lhs, &rhs, n)
}

/// `(-q; q)_j == Σ_i q^{i(i+1)/2} [j, i]_q`, checked exactly.
pub fn q_binomial_theorem_check(j: usize) -> bool {
    let mut table = QBinomialTable::up_to(j);
    let rhs: IntPoly = (0..=j)
        .map(|i| table.get(j, i as i64).shift(i * (i + 1) / 2))
        .sum();
    neg_q_pochhammer(j) == rhs
}
