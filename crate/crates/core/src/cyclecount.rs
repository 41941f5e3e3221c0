//! Counts of cycles (orbits under the cyclic shift) by order, with and without
//! a fixed digit sum.
//!
//! A cycle of order `n` in `S(A, N, M)` consists of `N / n` repetitions of a
//! length-`n` word lying on a proper cycle with sum `M n / N`, so only orders
//! in [`order_set`] can occur. The proper-cycle count itself is an
//! inclusion–exclusion over divisors weighted by [`q_coefficient`]; the
//! recursive route subtracts the shorter orders from the fixed-sum total
//! instead and never touches the coefficient.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};

use crate::arith::{divisors, power, q_coefficient, Natural, SignedNatural};
use crate::error::{require_positive, Error, Result};
use crate::sumcount::{max_sum, strings_with_sum, SumCountQuery};

/// Admissible cycle orders `D(A, N, M)`: divisors `n` of `N` with `N | M n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSet(pub Vec<u64>);

impl OrderSet {
    pub fn orders(&self) -> &[u64] {
        &self.0
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.binary_search(&n).is_ok()
    }
}

pub fn order_set(length: u64, sum: u64) -> Result<OrderSet> {
    require_positive(length, "length")?;
    let orders = divisors(length)?
        .into_iter()
        .filter(|&n| (u128::from(sum) * u128::from(n)) % u128::from(length) == 0)
        .collect();
    Ok(OrderSet(orders))
}

/// One row of a [`CountTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub cycles: Natural,
    pub strings: Natural,
}

/// Cycle and string counts keyed by cycle order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub alphabet: u64,
    pub length: u64,
    pub sum: Option<u64>,
    pub rows: BTreeMap<u64, CountRow>,
}

impl CountTable {
    pub fn total_strings(&self) -> Natural {
        self.rows.values().map(|r| &r.strings).sum()
    }

    pub fn total_cycles(&self) -> Natural {
        self.rows.values().map(|r| &r.cycles).sum()
    }

    /// Number of strings the rows must add up to: `A^N`, or `|S(A, N, M)|`.
    pub fn expected_total(&self) -> Result<Natural> {
        match self.sum {
            None => Ok(power(self.alphabet, self.length)),
            Some(m) => strings_with_sum(SumCountQuery::new(self.alphabet, self.length, m)),
        }
    }
}

/// Signature of the divisor-chain coefficient used by the closed forms.
pub type CoefficientFn = fn(u64) -> Result<i8>;

/// Evaluates the closed-form counts with a given divisor-chain coefficient.
///
/// [`CycleCounter::default`] uses [`q_coefficient`]. Plugging in another
/// coefficient is how the verification harness proves it can detect a wrong one.
#[derive(Debug, Clone, Copy)]
pub struct CycleCounter {
    coefficient: CoefficientFn,
}

impl Default for CycleCounter {
    fn default() -> Self {
        CycleCounter { coefficient: q_coefficient }
    }
}

impl CycleCounter {
    pub fn with_coefficient(coefficient: CoefficientFn) -> Self {
        CycleCounter { coefficient }
    }

    pub fn coefficient(&self, nu: u64) -> Result<i8> {
        (self.coefficient)(nu)
    }

    /// `M(A, N, M, N)`: strings of sum `M` whose cycle has the full order `N`.
    pub fn strings_of_order_full(&self, alphabet: u64, length: u64, sum: u64) -> Result<Natural> {
        require_positive(alphabet, "alphabet")?;
        require_positive(length, "length")?;
        let mut acc = SignedNatural::zero();
        for n in order_set(length, sum)?.0 {
            let q = self.coefficient(length / n)?;
            if q == 0 {
                continue;
            }
            let shrunk = shrink(length, sum, n);
            let s = SignedNatural::from(strings_with_sum(SumCountQuery::new(alphabet, n, shrunk))?);
            acc += s * q;
        }
        into_natural(acc, "proper-cycle string count")
    }

    /// `M(A, N, M, n)`; zero unless `n` is an admissible order.
    pub fn strings_of_order(&self, alphabet: u64, length: u64, sum: u64, order: u64) -> Result<Natural> {
        require_positive(alphabet, "alphabet")?;
        require_positive(length, "length")?;
        if !is_admissible(length, sum, order) {
            return Ok(Natural::zero());
        }
        self.strings_of_order_full(alphabet, order, shrink(length, sum, order))
    }

    /// `M(A, n)`: strings of order exactly `n`, whatever their sum.
    pub fn strings_of_order_total(&self, alphabet: u64, order: u64) -> Result<Natural> {
        require_positive(alphabet, "alphabet")?;
        require_positive(order, "order")?;
        let mut acc = SignedNatural::zero();
        for k in divisors(order)? {
            let q = self.coefficient(order / k)?;
            if q != 0 {
                acc += SignedNatural::from(power(alphabet, k)) * q;
            }
        }
        into_natural(acc, "order-n string count")
    }

    /// One row per admissible order: all divisors of `N` without a sum, the
    /// set `D(A, N, M)` with one. Rows that count zero are kept.
    pub fn cycle_table(&self, alphabet: u64, length: u64, sum: Option<u64>) -> Result<CountTable> {
        require_positive(alphabet, "alphabet")?;
        require_positive(length, "length")?;
        let orders = match sum {
            None => divisors(length)?,
            Some(m) => order_set(length, m)?.0,
        };
        let mut rows = BTreeMap::new();
        for n in orders {
            let strings = match sum {
                None => self.strings_of_order_total(alphabet, n)?,
                Some(m) => self.strings_of_order(alphabet, length, m, n)?,
            };
            let cycles = &strings / n;
            rows.insert(n, CountRow { cycles, strings });
        }
        Ok(CountTable { alphabet, length, sum, rows })
    }

    /// Builds the table and cross-checks it before returning.
    ///
    /// With a sum, every row is recomputed along the recursive route; in all
    /// cases each row must satisfy `strings = n * cycles` and the rows must
    /// add up to the expected total.
    pub fn checked_cycle_table(&self, alphabet: u64, length: u64, sum: Option<u64>) -> Result<CountTable, TableCheckError> {
        let table = self.cycle_table(alphabet, length, sum)?;
        for (&n, row) in &table.rows {
            if &row.cycles * n != row.strings {
                return Err(TableCheckError::NotDivisible { order: n });
            }
            if let Some(m) = sum {
                let other = strings_of_order_recursive(alphabet, n, shrink(length, m, n))?;
                if other != row.strings {
                    return Err(TableCheckError::RouteMismatch {
                        order: n,
                        closed_form: row.strings.clone(),
                        recursive: other,
                    });
                }
            }
        }
        let expected = table.expected_total()?;
        let found = table.total_strings();
        if expected != found {
            return Err(TableCheckError::TotalMismatch { expected, found });
        }
        Ok(table)
    }
}

/// Failure of [`CycleCounter::checked_cycle_table`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableCheckError {
    #[error(transparent)]
    Count(#[from] Error),
    #[error("order {order}: closed form gives {closed_form}, recursion gives {recursive}")]
    RouteMismatch { order: u64, closed_form: Natural, recursive: Natural },
    #[error("order {order}: string count is not a multiple of the order")]
    NotDivisible { order: u64 },
    #[error("rows add up to {found} strings, expected {expected}")]
    TotalMismatch { expected: Natural, found: Natural },
}

fn is_admissible(length: u64, sum: u64, order: u64) -> bool {
    order != 0 && length % order == 0 && (u128::from(sum) * u128::from(order)) % u128::from(length) == 0
}

/// `M n / N` for an admissible order `n`.
fn shrink(length: u64, sum: u64, order: u64) -> u64 {
    (u128::from(sum) * u128::from(order) / u128::from(length)) as u64
}

fn into_natural(value: SignedNatural, what: &'static str) -> Result<Natural> {
    if value.is_negative() {
        return Err(Error::NegativeCount { what, value });
    }
    Ok(value.into_parts().1)
}

pub fn strings_of_order_full(alphabet: u64, length: u64, sum: u64) -> Result<Natural> {
    CycleCounter::default().strings_of_order_full(alphabet, length, sum)
}

pub fn strings_of_order(alphabet: u64, length: u64, sum: u64, order: u64) -> Result<Natural> {
    CycleCounter::default().strings_of_order(alphabet, length, sum, order)
}

pub fn strings_of_order_total(alphabet: u64, order: u64) -> Result<Natural> {
    CycleCounter::default().strings_of_order_total(alphabet, order)
}

pub fn cycle_table(alphabet: u64, length: u64, sum: Option<u64>) -> Result<CountTable> {
    CycleCounter::default().cycle_table(alphabet, length, sum)
}

/// `M(A, N, M, N)` by subtracting the strings on shorter cycles from
/// `|S(A, N, M)|`, each of those obtained recursively on its shrunken instance.
pub fn strings_of_order_recursive(alphabet: u64, length: u64, sum: u64) -> Result<Natural> {
    require_positive(alphabet, "alphabet")?;
    require_positive(length, "length")?;
    let mut memo = HashMap::new();
    recursive_rec(alphabet, length, sum, &mut memo)
}

fn recursive_rec(
    alphabet: u64,
    length: u64,
    sum: u64,
    memo: &mut HashMap<(u64, u64), Natural>,
) -> Result<Natural> {
    if u128::from(sum) > max_sum(alphabet, length) {
        return Ok(Natural::zero());
    }
    if let Some(hit) = memo.get(&(length, sum)) {
        return Ok(hit.clone());
    }
    let total = strings_with_sum(SumCountQuery::new(alphabet, length, sum))?;
    let mut shorter = Natural::zero();
    for n in order_set(length, sum)?.0 {
        if n < length {
            shorter += recursive_rec(alphabet, n, shrink(length, sum, n), memo)?;
        }
    }
    if shorter > total {
        return Err(Error::NegativeCount {
            what: "recursive proper-cycle count",
            value: SignedNatural::from(total) - SignedNatural::from(shorter),
        });
    }
    let value = total - shorter;
    memo.insert((length, sum), value.clone());
    Ok(value)
}
