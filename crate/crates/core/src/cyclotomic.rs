//! Cyclotomic polynomials and congruence modulo `Φ_n(q)`.
//!
//! `Φ_n` is obtained as the exact quotient of `q^n - 1` by the product of
//! `Φ_d` over the proper divisors `d` of `n`. Results are memoized in a
//! [`CyclotomicTable`], which callers own and pass around explicitly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polyring::IntPoly;

/// Memo of `n -> Φ_n`.
///
/// Populate with [`CyclotomicTable::up_to`] (or the `&mut self` methods)
/// before sharing; the `*_cached` methods only read.
#[derive(Clone, Debug, Default)]
pub struct CyclotomicTable {
    memo: BTreeMap<u64, IntPoly>,
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn check_index(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("cyclotomic index must be positive".into()));
    }
    Ok(())
}

impl CyclotomicTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table holding `Φ_1 ..= Φ_max_n`.
    pub fn up_to(max_n: u64) -> Self {
        let mut t = Self::new();
        for n in 1..=max_n {
            t.phi(n).expect("positive index");
        }
        t
    }

    /// `Φ_n`, computing and memoizing it (and its divisors) if needed.
    pub fn phi(&mut self, n: u64) -> Result<&IntPoly> {
        check_index(n)?;
        if !self.memo.contains_key(&n) {
            let mut denom = IntPoly::one();
            for d in divisors(n) {
                if d != n {
                    let f = self.phi(d)?.clone();
                    denom = denom * f;
                }
            }
            let qn_minus_1 = IntPoly::monomial(n as usize) - IntPoly::one();
            let (quot, rem) = qn_minus_1.divrem_monic(&denom)?;
            debug_assert!(rem.is_zero(), "Φ_{n} division left a remainder");
            self.memo.insert(n, quot);
        }
        Ok(&self.memo[&n])
    }

    pub fn get(&self, n: u64) -> Option<&IntPoly> {
        self.memo.get(&n)
    }

    pub fn max_index(&self) -> u64 {
        self.memo.keys().next_back().copied().unwrap_or(0)
    }

    fn cached(&self, n: u64) -> Result<&IntPoly> {
        check_index(n)?;
        self.memo
            .get(&n)
            .ok_or_else(|| Error::Domain(format!("Φ_{n} has not been computed in this table")))
    }

    /// Remainder of `p` modulo `Φ_n`.
    pub fn reduce_mod(&mut self, p: &IntPoly, n: u64) -> Result<IntPoly> {
        let m = self.phi(n)?.clone();
        p.rem_monic(&m)
    }

    pub fn reduce_cached(&self, p: &IntPoly, n: u64) -> Result<IntPoly> {
        p.rem_monic(self.cached(n)?)
    }

    pub fn congruent(&mut self, a: &IntPoly, b: &IntPoly, n: u64) -> Result<bool> {
        Ok(self.reduce_mod(&(a - b), n)?.is_zero())
    }

    pub fn congruent_cached(&self, a: &IntPoly, b: &IntPoly, n: u64) -> Result<bool> {
        Ok(self.reduce_cached(&(a - b), n)?.is_zero())
    }

    /// `q^e mod Φ_n`, using `q^n ≡ 1`.
    pub fn exponent_residue_factor(&mut self, n: u64, e: u64) -> Result<IntPoly> {
        check_index(n)?;
        self.reduce_mod(&IntPoly::monomial((e % n) as usize), n)
    }
}

/// `Φ_n` computed in a fresh table.
pub fn cyclotomic(n: u64) -> Result<IntPoly> {
    CyclotomicTable::new().phi(n).cloned()
}

pub fn reduce_mod(p: &IntPoly, n: u64) -> Result<IntPoly> {
    CyclotomicTable::new().reduce_mod(p, n)
}

pub fn congruent(a: &IntPoly, b: &IntPoly, n: u64) -> Result<bool> {
    CyclotomicTable::new().congruent(a, b, n)
}

pub fn exponent_residue_factor(n: u64, e: u64) -> Result<IntPoly> {
    CyclotomicTable::new().exponent_residue_factor(n, e)
}
