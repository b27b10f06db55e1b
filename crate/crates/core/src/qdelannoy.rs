//! The q-Delannoy numbers `D_q(h, k)`.
//!
//! Three independent routes are provided: the defining binomial sum
//! ([`q_delannoy_def`]), the symmetric Pochhammer form
//! ([`q_delannoy_alt`]) and the memoized three-term recurrence
//! ([`QDelannoyTable`], [`q_delannoy_rec`]). All return zero when either
//! argument is negative.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::polyring::{IntPoly, ZERO};
use crate::qcore::{neg_q_pochhammer, QBinomialTable};

/// `Σ_{j=0}^{h} q^{j(j+1)/2} [k, j]_q [h+k-j, k]_q`.
pub fn q_delannoy_def(h: i64, k: i64) -> IntPoly {
    if h < 0 || k < 0 {
        return IntPoly::zero();
    }
    let mut qb = QBinomialTable::up_to((h + k) as usize);
    let mut acc = IntPoly::zero();
    for j in 0..=h.min(k) {
        let ju = j as usize;
        let term = qb.get(k as usize, j).clone() * qb.get((h + k - j) as usize, k);
        acc += &term.shift(ju * (ju + 1) / 2);
    }
    acc
}

/// `Σ_{j=0}^{min(h,k)} q^{(h-j)(k-j)} (-q;q)_j [k, j]_q [h, j]_q`.
pub fn q_delannoy_alt(h: i64, k: i64) -> IntPoly {
    if h < 0 || k < 0 {
        return IntPoly::zero();
    }
    let mut qb = QBinomialTable::up_to(h.max(k) as usize);
    let mut acc = IntPoly::zero();
    for j in 0..=h.min(k) {
        let term = neg_q_pochhammer(j as usize) * qb.get(k as usize, j) * qb.get(h as usize, j);
        acc += &term.shift(((h - j) * (k - j)) as usize);
    }
    acc
}

pub fn q_delannoy_rec(h: i64, k: i64) -> IntPoly {
    QDelannoyTable::new().get(h, k).clone()
}

/// `D_q(h, k)` at `q = 1`.
pub fn specialize_q1(h: i64, k: i64) -> BigInt {
    q_delannoy_rec(h, k).eval(&BigInt::one())
}

/// Memo of `D_q(h, k)` filled by
/// `D_q(h, k) = D_q(h, k-1) + q^k D_q(h-1, k) + q^k D_q(h-1, k-1)`.
#[derive(Clone, Debug, Default)]
pub struct QDelannoyTable {
    rows: Vec<Vec<IntPoly>>,
}

impl QDelannoyTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn up_to(max_h: usize, max_k: usize) -> Self {
        let mut t = Self::new();
        t.extend_to(max_h, max_k);
        t
    }

    pub fn extent(&self) -> Option<(usize, usize)> {
        let w = self.rows.first()?.len();
        Some((self.rows.len() - 1, w - 1))
    }

    pub fn extend_to(&mut self, max_h: usize, max_k: usize) {
        let hs = (max_h + 1).max(self.rows.len());
        let ks = (max_k + 1).max(self.rows.first().map_or(0, Vec::len));
        for h in 0..hs {
            if h == self.rows.len() {
                self.rows.push(Vec::with_capacity(ks));
            }
            while self.rows[h].len() < ks {
                let k = self.rows[h].len();
                let v = if h == 0 || k == 0 {
                    IntPoly::one()
                } else {
                    let below = &self.rows[h - 1];
                    let mut up = below[k].add_ref(&below[k - 1]).shift(k);
                    up += &self.rows[h][k - 1];
                    up
                };
                self.rows[h].push(v);
            }
        }
    }

    pub fn get(&mut self, h: i64, k: i64) -> &IntPoly {
        if h < 0 || k < 0 {
            return &ZERO;
        }
        self.extend_to(h as usize, k as usize);
        &self.rows[h as usize][k as usize]
    }

    /// Read-only lookup; `None` when `(h, k)` lies outside the built extent.
    pub fn get_cached(&self, h: i64, k: i64) -> Option<&IntPoly> {
        if h < 0 || k < 0 {
            return Some(&ZERO);
        }
        self.rows.get(h as usize)?.get(k as usize)
    }
}

/// Which construction of `D_q` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    Def,
    Alt,
    #[default]
    Rec,
}

impl Route {
    pub fn compute(self, h: i64, k: i64) -> IntPoly {
        match self {
            Route::Def => q_delannoy_def(h, k),
            Route::Alt => q_delannoy_alt(h, k),
            Route::Rec => q_delannoy_rec(h, k),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Def => "def",
            Route::Alt => "alt",
            Route::Rec => "rec",
        })
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "def" => Ok(Route::Def),
            "alt" => Ok(Route::Alt),
            "rec" => Ok(Route::Rec),
            other => Err(Error::Domain(format!("unknown route {other:?}"))),
        }
    }
}
