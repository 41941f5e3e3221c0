//! Number of strings over `{0, .., A-1}` of length `N` whose symbols add up to `M`.
//!
//! Two independent routes: de Moivre's alternating binomial sum, and the
//! coefficients of `(1 + z + ... + z^(A-1))^N` expanded by repeated convolution.

use num_traits::{Signed, Zero};

use crate::arith::{binomial, Natural, SignedNatural};
use crate::error::{require_positive, Error, Result};

/// Parameters of a fixed-sum count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SumCountQuery {
    pub alphabet: u64,
    pub length: u64,
    pub sum: u64,
}

impl SumCountQuery {
    pub fn new(alphabet: u64, length: u64, sum: u64) -> Self {
        SumCountQuery { alphabet, length, sum }
    }

    /// Largest attainable digit sum, `N(A-1)`.
    pub fn max_sum(&self) -> u128 {
        max_sum(self.alphabet, self.length)
    }

    pub fn in_range(&self) -> bool {
        u128::from(self.sum) <= self.max_sum()
    }
}

pub(crate) fn max_sum(alphabet: u64, length: u64) -> u128 {
    u128::from(length) * u128::from(alphabet.saturating_sub(1))
}

/// Counts indexed by digit sum `m = 0 ..= N(A-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumDistribution {
    pub counts: Vec<Natural>,
}

impl SumDistribution {
    pub fn total(&self) -> Natural {
        self.counts.iter().sum()
    }
}

/// `|S(A, N, M)|` by de Moivre's formula. Zero when `M > N(A-1)`.
pub fn strings_with_sum(query: SumCountQuery) -> Result<Natural> {
    let SumCountQuery { alphabet, length, sum } = query;
    require_positive(alphabet, "alphabet")?;
    require_positive(length, "length")?;
    if !query.in_range() {
        return Ok(Natural::zero());
    }
    let mut acc = SignedNatural::zero();
    for n in 0..=sum / alphabet {
        let term = SignedNatural::from(
            binomial(length, n) * binomial(length - 1 + sum - n * alphabet, length - 1),
        );
        if n % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    if acc.is_negative() {
        return Err(Error::NegativeCount { what: "de Moivre sum", value: acc });
    }
    Ok(acc.into_parts().1)
}

/// Expands `(1 + z + ... + z^(A-1))^N` and returns its coefficient list.
pub fn sum_distribution_gf(alphabet: u64, length: u64) -> Result<SumDistribution> {
    require_positive(alphabet, "alphabet")?;
    require_positive(length, "length")?;
    let width = alphabet as usize;
    let mut counts = vec![Natural::from(1u32)];
    for _ in 0..length {
        // Multiplying by the all-ones polynomial of degree A-1 is a sliding
        // window sum over the previous coefficients.
        let mut next = Vec::with_capacity(counts.len() + width - 1);
        let mut window = Natural::zero();
        for m in 0..counts.len() + width - 1 {
            if m < counts.len() {
                window += &counts[m];
            }
            if m >= width {
                window -= &counts[m - width];
            }
            next.push(window.clone());
        }
        counts = next;
    }
    Ok(SumDistribution { counts })
}

/// `|S(A, N, m)|` for every attainable `m`, evaluated with de Moivre's formula.
pub fn sum_distribution(alphabet: u64, length: u64) -> Result<SumDistribution> {
    require_positive(alphabet, "alphabet")?;
    require_positive(length, "length")?;
    let top = u64::try_from(max_sum(alphabet, length)).expect("digit sum range fits in u64");
    let counts = (0..=top)
        .map(|m| strings_with_sum(SumCountQuery::new(alphabet, length, m)))
        .collect::<Result<_>>()?;
    Ok(SumDistribution { counts })
}
